//! Command-line surface. [`run`] parses arguments, dispatches, writes the
//! report and returns the process exit code.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 a verification
//! sub-check failed, 3 a field extension is required but not allowed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::classify3::{
    canonical_algebra, classify, iso_witness, CanonicalLabel, ClassifyError, ClassifyOptions, IsoOutcome,
};
use crate::fields::Field;
use crate::groebner::{quotient_dimension, read_ideal_file, write_ideal_file, write_polynomials, Ideal, Polynomial};
use crate::linalg::{j_block_form, skew_congruence_reduce, SkewForm};
use crate::omega::{read_algebra, read_algebra_unchecked, recover_omega, validate, write_algebra, OmegaAlgebra};
use crate::report::ReportTable;
use crate::suite::{default_fields, run_section, Section};
use crate::variety::defining_ideal;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_EXTENSION_REQUIRED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "omegalie", version, about = "Exact computations with omega-Lie algebras")]
pub struct Cli {
    /// `human` adds headings and the case trace; `machine` prints `key value` records.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra file and cross-check ω against the one the brackets force.
    Check { alg: PathBuf },
    /// Classify a 3-dimensional non-Lie ω-Lie algebra with a witness.
    Classify {
        alg: PathBuf,
        #[arg(long)]
        allow_extension: bool,
        /// Report α as computed instead of the representative of {α, −(α+1)}.
        #[arg(long)]
        strict_c_labels: bool,
    },
    /// Decide isomorphism of two 3-dimensional algebras and print a witness.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        allow_extension: bool,
    },
    /// Print the algebra file of a canonical form: A, B, C or D.
    Canonical {
        label: String,
        /// α for label C; `C:<α>` is also accepted as the label.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Reduce ω of an algebra file to `J_m` by congruence.
    OmegaReduce { alg: PathBuf },
    /// The defining ideal of ω-Lie structures with canonical ω, its reduced basis and dimension.
    Variety {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Rank of the canonical ω; defaults to 2.
        #[arg(long, default_value_t = 2)]
        omega_rank: usize,
        /// Also write the generators as an ideal file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduced Gröbner basis of an ideal file.
    Gb { ideal: PathBuf },
    /// Run the built-in verification suites.
    VerifyPaper {
        /// 3: defining ideal, 4: classification, 5: fixed-D components.
        #[arg(long, default_value = "all", value_parser = ["3", "4", "5", "all"])]
        section: String,
        /// Restrict to one field; by default Q and Fp:101.
        #[arg(long)]
        field: Option<String>,
    },
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

fn check_failed(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_CHECK_FAILED,
        message: message.to_string(),
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Failure {
        let code = match e {
            ClassifyError::ExtensionRequired(_) => EXIT_EXTENSION_REQUIRED,
            ClassifyError::Internal(_) => EXIT_CHECK_FAILED,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut text = String::new();
    let result = dispatch(&cli, &mut text);
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<OmegaAlgebra, Failure> {
    read_algebra(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn parse_field(text: &str) -> Result<Field, Failure> {
    text.parse().map_err(|e| input_error(format!("field {text:?}: {e}")))
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<i32, Failure> {
    let machine = cli.format == Format::Machine;
    match &cli.command {
        Command::Check { alg } => check(alg, machine, out),
        Command::Classify {
            alg,
            allow_extension,
            strict_c_labels,
        } => {
            let a = load_algebra(alg)?;
            let opts = ClassifyOptions {
                allow_extension: *allow_extension,
                strict_c_labels: *strict_c_labels,
            };
            let r = classify(&a, opts)?;
            if machine {
                out.push_str(&r.to_text());
            } else {
                writeln!(out, "label: {}", r.label).unwrap();
                writeln!(out, "field: {}", r.field()).unwrap();
                if let Some(m) = &r.extension {
                    writeln!(out, "extension: adjoined a root of {m}").unwrap();
                }
                let identity = if r.witness.is_identity() { " (identity)" } else { "" };
                writeln!(out, "witness: {}{identity}", r.witness.matrix().encode()).unwrap();
                if !r.trace.is_empty() {
                    writeln!(out, "trace:").unwrap();
                }
                for step in &r.trace {
                    writeln!(out, "  {}: {}", step.tag, step.element.matrix().encode()).unwrap();
                }
            }
            Ok(EXIT_OK)
        }
        Command::Iso {
            first,
            second,
            allow_extension,
        } => {
            let (a, b) = (load_algebra(first)?, load_algebra(second)?);
            match iso_witness(&a, &b, *allow_extension)? {
                IsoOutcome::Isomorphic { witness, via_c_pair } => {
                    if machine {
                        writeln!(out, "isomorphic true").unwrap();
                        writeln!(out, "via-c-pair {via_c_pair}").unwrap();
                        writeln!(out, "field {}", witness.matrix().field()).unwrap();
                        writeln!(out, "witness {}", witness.matrix().encode()).unwrap();
                    } else {
                        writeln!(out, "isomorphic: yes").unwrap();
                        writeln!(out, "witness: {}", witness.matrix().encode()).unwrap();
                        if via_c_pair {
                            writeln!(
                                out,
                                "note: the witness passes through x -> y, y -> -x, z -> z between C(a) and C(-(a+1))"
                            )
                            .unwrap();
                        }
                    }
                }
                IsoOutcome::NonIsomorphic { reason } => {
                    if machine {
                        writeln!(out, "isomorphic false").unwrap();
                        writeln!(out, "reason {reason}").unwrap();
                    } else {
                        writeln!(out, "isomorphic: no ({reason})").unwrap();
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Canonical { label, alpha, field } => {
            let k = parse_field(field)?;
            let text = match (label.trim(), alpha) {
                ("C", Some(a)) => format!("C:{a}"),
                ("C", None) => return Err(input_error("label C needs --alpha")),
                (l, Some(_)) => return Err(input_error(format!("--alpha applies to label C, not {l}"))),
                (l, None) => l.to_string(),
            };
            let label = CanonicalLabel::parse(&text, &k)?;
            out.push_str(&write_algebra(&canonical_algebra(&label, &k)?));
            Ok(EXIT_OK)
        }
        Command::OmegaReduce { alg } => {
            let text = read(alg)?;
            let a = read_algebra_unchecked(&text).map_err(|e| input_error(format!("{}: {e}", alg.display())))?;
            let r = skew_congruence_reduce(a.omega()).map_err(input_error)?;
            let reduced = a.omega().congruent(&r.q).map_err(input_error)?;
            let exact = *reduced.matrix() == j_block_form(a.field(), a.dim(), r.rank);
            if machine {
                writeln!(out, "rank {}", r.rank).unwrap();
                writeln!(out, "q {}", r.q.encode()).unwrap();
                writeln!(out, "verified {exact}").unwrap();
            } else {
                writeln!(out, "rank: {}", r.rank).unwrap();
                writeln!(out, "Q: {}", r.q.encode()).unwrap();
                writeln!(out, "Q^T omega Q = J_{}: {}", r.rank, if exact { "yes" } else { "NO" }).unwrap();
            }
            if exact {
                Ok(EXIT_OK)
            } else {
                Err(check_failed("the congruence does not reach the block form"))
            }
        }
        Command::Variety {
            dim,
            field,
            omega_rank,
            output,
        } => {
            let k = parse_field(field)?;
            let v = defining_ideal(*dim, &SkewForm::canonical(&k, *dim, *omega_rank)).map_err(input_error)?;
            let ideal = v.ideal();
            let dimension = quotient_dimension(&ideal).map_err(check_failed)?;
            if let Some(path) = output {
                std::fs::write(path, write_ideal_file(&ideal))
                    .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            }
            emit_ideal(out, machine, &ideal, Some(v.generators()), dimension);
            Ok(EXIT_OK)
        }
        Command::Gb { ideal } => {
            let i = read_ideal_file(&read(ideal)?).map_err(|e| input_error(format!("{}: {e}", ideal.display())))?;
            let dimension = quotient_dimension(&i).map_err(check_failed)?;
            emit_ideal(out, machine, &i, None, dimension);
            Ok(EXIT_OK)
        }
        Command::VerifyPaper { section, field } => {
            let fields = match field {
                Some(f) => vec![parse_field(f)?],
                None => default_fields(),
            };
            let sections: Vec<Section> = match section.as_str() {
                "3" => vec![Section::Variety],
                "4" => vec![Section::Classification],
                "5" => vec![Section::Components],
                _ => Section::ALL.to_vec(),
            };
            let mut table = ReportTable::new();
            for s in sections {
                table.extend(run_section(s, &fields));
            }
            out.push_str(&table.to_string());
            if !machine {
                let failed = table.rows.iter().filter(|r| !r.passed).count();
                writeln!(out, "{} checks, {failed} failed", table.rows.len()).unwrap();
            }
            Ok(if table.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn check(path: &Path, machine: bool, out: &mut String) -> Result<i32, Failure> {
    let text = read(path)?;
    let a = read_algebra_unchecked(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let report = validate(&a);
    if !report.is_valid() {
        if machine {
            writeln!(out, "valid false").unwrap();
        }
        return Err(input_error(format!(
            "{}: not an omega-Lie algebra: {report}",
            path.display()
        )));
    }
    let recovered = recover_omega(a.structure());
    let matches = recovered.as_ref().is_ok_and(|w| w == a.omega());
    if machine {
        writeln!(out, "valid true").unwrap();
        writeln!(out, "field {}", a.field()).unwrap();
        writeln!(out, "dim {}", a.dim()).unwrap();
        match &recovered {
            Ok(w) => writeln!(out, "recovered-omega {}", w.matrix().encode()).unwrap(),
            Err(e) => writeln!(out, "recovered-omega error {e}").unwrap(),
        }
        writeln!(out, "omega-matches {matches}").unwrap();
    } else {
        writeln!(
            out,
            "{}: valid omega-Lie algebra of dimension {} over {}",
            path.display(),
            a.dim(),
            a.field()
        )
        .unwrap();
        match &recovered {
            Ok(w) if matches => writeln!(out, "omega agrees with the form forced by the brackets").unwrap(),
            Ok(w) => writeln!(out, "omega differs from the forced form {}", w.matrix().encode()).unwrap(),
            Err(e) => writeln!(out, "omega could not be recovered: {e}").unwrap(),
        }
    }
    if matches {
        Ok(EXIT_OK)
    } else {
        Err(check_failed(
            "omega does not match the form recovered from the brackets",
        ))
    }
}

fn emit_ideal(out: &mut String, machine: bool, ideal: &Ideal, generators: Option<&[Polynomial]>, dimension: usize) {
    let ring = ideal.ring();
    let gens = generators.unwrap_or(ideal.generators());
    if machine {
        writeln!(out, "field {}", ring.field()).unwrap();
        writeln!(out, "vars {}", ring.vars().join(", ")).unwrap();
        for g in gens {
            writeln!(out, "generator {}", ring.format(g)).unwrap();
        }
        for b in ideal.groebner_basis() {
            writeln!(out, "basis {}", ring.format(b)).unwrap();
        }
        writeln!(out, "dimension {dimension}").unwrap();
    } else {
        writeln!(out, "# generators").unwrap();
        out.push_str(&write_polynomials(ring, gens));
        writeln!(out, "# reduced Groebner basis").unwrap();
        out.push_str(&write_polynomials(ring, ideal.groebner_basis()));
        writeln!(out, "# Krull dimension {dimension}").unwrap();
    }
}
