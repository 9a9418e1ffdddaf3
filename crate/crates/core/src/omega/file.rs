//! Algebra files: a JSON object with `field`, `dim`, `omega` (full matrix of
//! element strings) and `brackets` (keys `"i,j"`, 1-based, `i < j`; missing
//! pairs are zero).

use std::fmt::Write as _;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};

use super::{validate, OmegaAlgebra, OmegaError, StructureConstants};
use crate::fields::Field;
use crate::linalg::{Matrix, SkewForm};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    field: String,
    dim: usize,
    omega: Vec<Vec<String>>,
    brackets: Entries,
}

/// Map entries in file order, duplicates kept so they can be reported.
struct Entries(Vec<(String, Vec<String>)>);

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Entries;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map from \"i,j\" to coefficient arrays")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Entries, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry::<String, Vec<String>>()? {
                    out.push(entry);
                }
                Ok(Entries(out))
            }
        }
        d.deserialize_map(V)
    }
}

/// 1-based line of the first occurrence of `"needle"` at or after line `from`.
fn line_of(text: &str, needle: &str, from: usize) -> usize {
    nth_line_of(text, needle, from, 0)
}

fn nth_line_of(text: &str, needle: &str, from: usize, nth: usize) -> usize {
    let quoted = format!("\"{needle}\"");
    text.lines()
        .enumerate()
        .skip(from.saturating_sub(1))
        .filter(|(_, l)| l.contains(&quoted))
        .nth(nth)
        .map_or(from.max(1), |(i, _)| i + 1)
}

fn err(line: usize, message: impl Into<String>) -> OmegaError {
    OmegaError::File {
        line,
        message: message.into(),
    }
}

/// Parses and checks the structural invariants (shapes, field, skew ω, key
/// syntax); the ω-Jacobi identity is left to [`validate`].
pub fn read_algebra_unchecked(text: &str) -> Result<OmegaAlgebra, OmegaError> {
    let raw: RawAlgebra = serde_json::from_str(text).map_err(|e| err(e.line().max(1), e.to_string()))?;
    let field_line = line_of(text, "field", 1);
    let field: Field = raw
        .field
        .parse()
        .map_err(|e: crate::fields::FieldError| err(field_line, e.to_string()))?;
    let n = raw.dim;
    if n == 0 {
        return Err(err(line_of(text, "dim", 1), "dim must be positive"));
    }
    let omega_line = line_of(text, "omega", 1);
    if raw.omega.len() != n || raw.omega.iter().any(|r| r.len() != n) {
        return Err(err(omega_line, format!("omega must be a {n}x{n} matrix")));
    }
    let w = Matrix::parse_rows(&field, &raw.omega).map_err(|e| err(omega_line, e.to_string()))?;
    let omega = SkewForm::new(w).map_err(|e| err(omega_line, e.to_string()))?;

    let brackets_line = line_of(text, "brackets", 1);
    let mut sc = StructureConstants::zero(&field, n);
    let mut seen = Vec::new();
    let mut keys_seen: Vec<String> = Vec::new();
    for (key, values) in raw.brackets.0 {
        let repeat = keys_seen.iter().filter(|k| **k == key).count();
        keys_seen.push(key.clone());
        let line = nth_line_of(text, &key, brackets_line, repeat);
        let parsed = key
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)));
        let Some((i, j)) = parsed else {
            return Err(err(line, format!("bracket key {key:?} is not of the form \"i,j\"")));
        };
        if i == 0 || j == 0 || i > n || j > n {
            return Err(err(line, format!("bracket key {key:?} out of range 1..={n}")));
        }
        if i >= j {
            return Err(err(line, format!("bracket key {key:?} must have i < j")));
        }
        if seen.contains(&(i, j)) {
            return Err(err(line, format!("duplicate bracket key {key:?}")));
        }
        seen.push((i, j));
        if values.len() != n {
            return Err(err(
                line,
                format!("bracket {key:?} needs {n} coefficients, got {}", values.len()),
            ));
        }
        let v = values
            .iter()
            .map(|s| field.parse_element(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(line, e.to_string()))?;
        sc.set_bracket(i - 1, j - 1, v).map_err(|e| err(line, e.to_string()))?;
    }
    OmegaAlgebra::new(sc, omega)
}

/// [`read_algebra_unchecked`] followed by [`validate`].
pub fn read_algebra(text: &str) -> Result<OmegaAlgebra, OmegaError> {
    let alg = read_algebra_unchecked(text)?;
    let report = validate(&alg);
    if !report.is_valid() {
        return Err(err(
            line_of(text, "brackets", 1),
            format!("not an omega-Lie algebra: {report}"),
        ));
    }
    Ok(alg)
}

/// Canonical text; every pair `i < j` is written, zero brackets included.
pub fn write_algebra(alg: &OmegaAlgebra) -> String {
    let n = alg.dim();
    let quote = |v: Vec<String>| v.iter().map(|s| format!("\"{s}\"")).collect::<Vec<_>>().join(", ");
    let mut out = String::new();
    out.push_str("{\n");
    writeln!(out, "  \"field\": \"{}\",", alg.field()).unwrap();
    writeln!(out, "  \"dim\": {n},").unwrap();
    out.push_str("  \"omega\": [\n");
    let w = alg.omega().matrix();
    for i in 0..n {
        let row = quote(w.row(i).iter().map(ToString::to_string).collect());
        let sep = if i + 1 < n { "," } else { "" };
        writeln!(out, "    [{row}]{sep}").unwrap();
    }
    out.push_str("  ],\n");
    let pairs: Vec<_> = alg.structure().pairs().collect();
    if pairs.is_empty() {
        out.push_str("  \"brackets\": {}\n");
    } else {
        out.push_str("  \"brackets\": {\n");
        for (idx, (i, j)) in pairs.iter().enumerate() {
            let v = quote(
                alg.structure()
                    .bracket(*i, *j)
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            );
            let sep = if idx + 1 < pairs.len() { "," } else { "" };
            writeln!(out, "    \"{},{}\": [{v}]{sep}", i + 1, j + 1).unwrap();
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
