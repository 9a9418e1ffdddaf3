//! Classification of 3-dimensional non-Lie ω-Lie algebras into `A`, `B`,
//! `C(α)`, `D` with explicit witnesses, and isomorphism testing.

mod label;
mod pipeline;

use std::fmt::Write as _;

use thiserror::Error;

use crate::fields::{Field, FieldDescriptor, FieldError, QuadraticMinpoly};
use crate::linalg::{LinalgError, Matrix};
use crate::omega::{derived_dimension, push_forward, GroupElement, OmegaAlgebra, OmegaError};

pub use label::{c_pair_map, c_pair_representative, canonical_algebra, CanonicalLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not an omega-Lie algebra: {0}")]
    NotOmegaLie(String),
    #[error("omega is zero: the algebra is a Lie algebra")]
    IsLie,
    #[error("classification needs dimension 3, got {0}")]
    WrongDimension(usize),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("alpha must be nonzero")]
    InvalidAlpha,
    #[error("unknown label {0:?}; expected A, B, D or C:<alpha>")]
    InvalidLabel(String),
    #[error("a quadratic extension by {0} is required")]
    ExtensionRequired(QuadraticMinpoly),
    #[error("the two algebras need different field extensions ({0} and {1})")]
    ExtensionMismatch(String, String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Continue over a quadratic extension instead of failing.
    pub allow_extension: bool,
    /// Report `α` as computed instead of the pair representative.
    pub strict_c_labels: bool,
}

/// One move of the case analysis, as the group element applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub tag: String,
    pub element: GroupElement,
}

/// `push_forward(witness, input)` equals `canonical_algebra(label)` over the
/// witness's field, and the trace elements compose to the witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub label: CanonicalLabel,
    pub witness: GroupElement,
    pub extension: Option<QuadraticMinpoly>,
    pub trace: Vec<TraceStep>,
}

pub fn classify(alg: &OmegaAlgebra, opts: ClassifyOptions) -> Result<ClassificationResult, ClassifyError> {
    pipeline::classify(alg, opts)
}

impl ClassificationResult {
    /// The field of the witness: the input field or its extension.
    pub fn field(&self) -> &Field {
        self.witness.matrix().field()
    }

    /// Re-applies the trace to `input` and compares with the canonical
    /// algebra; also checks that the trace composes to the witness.
    pub fn replay(&self, input: &OmegaAlgebra) -> Result<bool, ClassifyError> {
        let k = self.field().clone();
        let mut cur = input.embed(&k)?;
        let mut composed = GroupElement::identity(&k, 3);
        for step in &self.trace {
            cur = push_forward(&step.element, &cur)?;
            composed = step.element.compose(&composed)?;
        }
        Ok(composed == self.witness && cur == canonical_algebra(&self.label, &k)?)
    }

    /// Line records: `label`, `field`, `extension`, `witness`, then one
    /// `step <tag> <matrix>` per move.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "label {}", self.label).unwrap();
        writeln!(out, "field {}", self.field()).unwrap();
        match &self.extension {
            Some(m) => writeln!(out, "extension {m}").unwrap(),
            None => writeln!(out, "extension none").unwrap(),
        }
        writeln!(out, "witness {}", self.witness.matrix().encode()).unwrap();
        for step in &self.trace {
            writeln!(out, "step {} {}", step.tag, step.element.matrix().encode()).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<ClassificationResult, ClassifyError> {
        let err = |line: usize, message: String| ClassifyError::Parse { line, message };
        let mut label_text = None;
        let mut field: Option<Field> = None;
        let mut extension_text = None;
        let mut witness = None;
        let mut trace = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let n = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once(' ')
                .ok_or_else(|| err(n, "expected `<key> <value>`".into()))?;
            let need_field = || {
                field
                    .clone()
                    .ok_or_else(|| err(n, "`field` must come before matrices".into()))
            };
            match key {
                "label" => label_text = Some((n, rest.to_string())),
                "field" => field = Some(rest.parse().map_err(|e: FieldError| err(n, e.to_string()))?),
                "extension" => extension_text = Some((n, rest.to_string())),
                "witness" => {
                    let m = Matrix::decode(&need_field()?, rest).map_err(|e| err(n, e.to_string()))?;
                    witness = Some(GroupElement::new(m).map_err(|e| err(n, e.to_string()))?);
                }
                "step" => {
                    let (tag, matrix) = rest
                        .split_once(' ')
                        .ok_or_else(|| err(n, "step needs a tag and a matrix".into()))?;
                    let m = Matrix::decode(&need_field()?, matrix).map_err(|e| err(n, e.to_string()))?;
                    trace.push(TraceStep {
                        tag: tag.to_string(),
                        element: GroupElement::new(m).map_err(|e| err(n, e.to_string()))?,
                    });
                }
                other => return Err(err(n, format!("unknown record {other:?}"))),
            }
        }
        let field = field.ok_or_else(|| err(0, "missing `field` record".into()))?;
        let (ln, label_text) = label_text.ok_or_else(|| err(0, "missing `label` record".into()))?;
        let label = CanonicalLabel::parse(&label_text, &field).map_err(|e| err(ln, e.to_string()))?;
        let witness = witness.ok_or_else(|| err(0, "missing `witness` record".into()))?;
        let extension = extension_of(&field);
        let (ln, ext_text) = extension_text.ok_or_else(|| err(0, "missing `extension` record".into()))?;
        let expected = extension
            .as_ref()
            .map_or_else(|| "none".to_string(), ToString::to_string);
        if ext_text != expected {
            return Err(err(ln, format!("extension {ext_text:?} does not match field {field}")));
        }
        Ok(ClassificationResult {
            label,
            witness,
            extension,
            trace,
        })
    }
}

/// The minimal polynomial of a quadratic extension field.
fn extension_of(field: &Field) -> Option<QuadraticMinpoly> {
    match field.descriptor() {
        FieldDescriptor::QuadExt { base, c0, c1 } => {
            let base_field = field.base();
            let lift = |v| base_field.parse_element(&base.encode(v)).expect("base encoding parses");
            Some(QuadraticMinpoly {
                c0: lift(c0),
                c1: lift(c1),
            })
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `push_forward(witness, first) == second`. `via_c_pair` marks a
    /// witness through the map between `C(α)` and `C(−(α+1))`.
    Isomorphic {
        witness: GroupElement,
        via_c_pair: bool,
    },
    NonIsomorphic {
        reason: String,
    },
}

/// Classifies both algebras with raw C-labels and composes
/// `witness₂⁻¹ ∘ bridge ∘ witness₁`.
pub fn iso_witness(
    first: &OmegaAlgebra,
    second: &OmegaAlgebra,
    allow_extension: bool,
) -> Result<IsoOutcome, ClassifyError> {
    if first.field() != second.field() {
        return Err(FieldError::DescriptorMismatch {
            left: first.field().to_string(),
            right: second.field().to_string(),
        }
        .into());
    }
    let (d1, d2) = (
        derived_dimension(first.structure()),
        derived_dimension(second.structure()),
    );
    if d1 != d2 {
        return Ok(IsoOutcome::NonIsomorphic {
            reason: format!("derived algebras have dimensions {d1} and {d2}"),
        });
    }
    let opts = ClassifyOptions {
        allow_extension,
        strict_c_labels: true,
    };
    let r1 = classify(first, opts)?;
    let r2 = classify(second, opts)?;
    if r1.field() != r2.field() {
        let show = |r: &ClassificationResult| r.extension.as_ref().map_or("none".to_string(), ToString::to_string);
        return Err(ClassifyError::ExtensionMismatch(show(&r1), show(&r2)));
    }
    let k = r1.field().clone();
    let (bridge, via_c_pair) = match (&r1.label, &r2.label) {
        (a, b) if a == b => (GroupElement::identity(&k, 3), false),
        (CanonicalLabel::C(a), CanonicalLabel::C(b)) if (a + &k.one()) == -b => (c_pair_map(&k), true),
        (a, b) => {
            return Ok(IsoOutcome::NonIsomorphic {
                reason: format!("labels {} and {} differ", a.normalized(), b.normalized()),
            })
        }
    };
    let witness = r2.witness.inverse().compose(&bridge.compose(&r1.witness)?)?;
    if push_forward(&witness, &first.embed(&k)?)? != second.embed(&k)? {
        return Err(ClassifyError::Internal("composed witness is not an isomorphism".into()));
    }
    Ok(IsoOutcome::Isomorphic { witness, via_c_pair })
}

/// Whether `c_pair_map` carries `C(α)` onto `C(−(α+1))` exactly.
pub fn c_pair_map_is_isomorphism(alpha: &crate::fields::FieldElement) -> Result<bool, ClassifyError> {
    let k = alpha.field();
    let partner = -(alpha + &k.one());
    if partner.is_zero() {
        return Err(ClassifyError::InvalidAlpha);
    }
    let image = push_forward(
        &c_pair_map(k),
        &canonical_algebra(&CanonicalLabel::C(alpha.clone()), k)?,
    )?;
    Ok(image == canonical_algebra(&CanonicalLabel::C(partner), k)?)
}
