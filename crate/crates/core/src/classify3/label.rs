use std::fmt;

use super::ClassifyError;
use crate::fields::{Field, FieldElement};
use crate::linalg::{Matrix, SkewForm};
use crate::omega::{GroupElement, OmegaAlgebra, StructureConstants};

/// The four families of 3-dimensional non-Lie ω-Lie algebras.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CanonicalLabel {
    /// `[x,y] = x+y`, `[x,z] = y`, `[y,z] = z`.
    A,
    /// `[x,y] = z`, `[x,z] = −x/2`, `[y,z] = x − y/2`.
    B,
    /// `[x,y] = z`, `[x,z] = αx`, `[y,z] = −(α+1)y`, `α ≠ 0`.
    C(FieldElement),
    /// `[x,y] = y`, `[x,z] = 0`, `[y,z] = z`.
    D,
}

impl CanonicalLabel {
    /// `A`, `B`, `D` or `C:<alpha>` with alpha in `field`.
    pub fn parse(text: &str, field: &Field) -> Result<CanonicalLabel, ClassifyError> {
        match text.trim() {
            "A" => Ok(CanonicalLabel::A),
            "B" => Ok(CanonicalLabel::B),
            "D" => Ok(CanonicalLabel::D),
            other => {
                let alpha = other
                    .strip_prefix("C:")
                    .ok_or_else(|| ClassifyError::InvalidLabel(other.to_string()))?;
                let alpha = field.parse_element(alpha.trim())?;
                if alpha.is_zero() {
                    return Err(ClassifyError::InvalidAlpha);
                }
                Ok(CanonicalLabel::C(alpha))
            }
        }
    }

    /// Labels of isomorphic algebras agree after this normalization.
    pub fn normalized(&self) -> CanonicalLabel {
        match self {
            CanonicalLabel::C(a) => CanonicalLabel::C(c_pair_representative(a)),
            other => other.clone(),
        }
    }

    pub fn alpha(&self) -> Option<&FieldElement> {
        match self {
            CanonicalLabel::C(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalLabel::A => f.write_str("A"),
            CanonicalLabel::B => f.write_str("B"),
            CanonicalLabel::C(a) => write!(f, "C:{a}"),
            CanonicalLabel::D => f.write_str("D"),
        }
    }
}

/// The element of `{α, −(α+1)}` with the lexicographically smaller text.
/// `{0, −1}` maps to `−1`, since `C(0)` is not a label.
pub fn c_pair_representative(alpha: &FieldElement) -> FieldElement {
    let k = alpha.field();
    let partner = -(alpha + &k.one());
    if alpha.is_zero() || partner.is_zero() {
        return -k.one();
    }
    if partner.to_string() < alpha.to_string() {
        partner
    } else {
        alpha.clone()
    }
}

/// `x ↦ y`, `y ↦ −x`, `z ↦ z`: carries `C(α)` onto `C(−(α+1))`.
pub fn c_pair_map(field: &Field) -> GroupElement {
    GroupElement::new(Matrix::from_ints(field, &[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]])).expect("determinant one")
}

pub fn canonical_algebra(label: &CanonicalLabel, field: &Field) -> Result<OmegaAlgebra, ClassifyError> {
    if field.characteristic() == 2 {
        return Err(ClassifyError::CharacteristicTwo);
    }
    let k = field;
    let half = k.from_ratio(1, 2)?;
    let v = |a: &FieldElement, b: &FieldElement, c: &FieldElement| vec![a.clone(), b.clone(), c.clone()];
    let (zero, one) = (k.zero(), k.one());
    let [xy, xz, yz] = match label {
        CanonicalLabel::A => [v(&one, &one, &zero), v(&zero, &one, &zero), v(&zero, &zero, &one)],
        CanonicalLabel::B => [v(&zero, &zero, &one), v(&-&half, &zero, &zero), v(&one, &-&half, &zero)],
        CanonicalLabel::C(alpha) => {
            let alpha = k.embed(alpha)?;
            if alpha.is_zero() {
                return Err(ClassifyError::InvalidAlpha);
            }
            let partner = -(&alpha + &one);
            [
                v(&zero, &zero, &one),
                v(&alpha, &zero, &zero),
                v(&zero, &partner, &zero),
            ]
        }
        CanonicalLabel::D => [v(&zero, &one, &zero), v(&zero, &zero, &zero), v(&zero, &zero, &one)],
    };
    let mut sc = StructureConstants::zero(k, 3);
    sc.set_bracket(0, 1, xy)?;
    sc.set_bracket(0, 2, xz)?;
    sc.set_bracket(1, 2, yz)?;
    Ok(OmegaAlgebra::new(sc, SkewForm::canonical(k, 3, 2))?)
}
