//! The action `[x, y]_g = g[g⁻¹x, g⁻¹y]` of invertible matrices on brackets.

use super::{OmegaAlgebra, OmegaError, StructureConstants};
use crate::fields::FieldElement;
use crate::linalg::{j_block_form, LinalgError, Matrix, SkewForm};

/// An invertible matrix with its inverse; column `j` is the image of `e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    g: Matrix,
    inv: Matrix,
}

impl GroupElement {
    pub fn new(g: Matrix) -> Result<GroupElement, OmegaError> {
        let inv = g.inverse()?;
        Ok(GroupElement { g, inv })
    }

    /// The element whose inverse is `h`.
    pub fn from_inverse(h: Matrix) -> Result<GroupElement, OmegaError> {
        Ok(GroupElement::new(h)?.inverse())
    }

    pub fn identity(field: &crate::fields::Field, n: usize) -> GroupElement {
        let id = Matrix::identity(field, n);
        GroupElement { g: id.clone(), inv: id }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inv
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            g: self.inv.clone(),
            inv: self.g.clone(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, OmegaError> {
        Ok(GroupElement {
            g: self.g.try_mul(&other.g)?,
            inv: other.inv.try_mul(&self.inv)?,
        })
    }

    pub fn embed(&self, target: &crate::fields::Field) -> Result<GroupElement, OmegaError> {
        Ok(GroupElement {
            g: self.g.embed(target)?,
            inv: self.inv.embed(target)?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.g == Matrix::identity(self.g.field(), self.g.rows())
    }
}

fn transform_brackets(g: &GroupElement, sc: &StructureConstants) -> Result<StructureConstants, OmegaError> {
    let n = sc.dim();
    if g.dim() != n {
        return Err(OmegaError::DimensionMismatch(format!(
            "group element of size {} acting in dimension {n}",
            g.dim()
        )));
    }
    if g.g.field() != sc.field() {
        return Err(LinalgError::from(crate::fields::FieldError::DescriptorMismatch {
            left: g.g.field().to_string(),
            right: sc.field().to_string(),
        })
        .into());
    }
    let preimages: Vec<Vec<FieldElement>> = (0..n).map(|a| g.inv.column(a)).collect();
    let mut out = StructureConstants::zero(sc.field(), n);
    for (a, b) in sc.pairs() {
        let w = sc.bracket_vectors(&preimages[a], &preimages[b]);
        out.set_bracket(a, b, g.g.mul_vec(&w))?;
    }
    Ok(out)
}

/// `[x, y]_g = g[g⁻¹x, g⁻¹y]` with ω kept as is. The result is again an
/// ω-Lie algebra whenever `g` preserves ω.
pub fn transform(g: &GroupElement, alg: &OmegaAlgebra) -> Result<OmegaAlgebra, OmegaError> {
    OmegaAlgebra::new(transform_brackets(g, alg.structure())?, alg.omega().clone())
}

/// Transport of structure along `g`: brackets as in [`transform`] and
/// `ω'(x, y) = ω(g⁻¹x, g⁻¹y)`, so that `g` is an isomorphism onto the result.
/// Agrees with [`transform`] on the stabilizer of ω.
pub fn push_forward(g: &GroupElement, alg: &OmegaAlgebra) -> Result<OmegaAlgebra, OmegaError> {
    let omega = alg.omega().congruent(&g.inv)?;
    OmegaAlgebra::new(transform_brackets(g, alg.structure())?, omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stabilizer {
    /// `gᵗ·Ω·g = Ω`.
    GOmega,
    /// `dia{S, 1}` with `det S = 1`: the stabilizer of `[x,y] = z`.
    HOmega,
    /// `[[1,0,0],[s,1,0],[t,s,1]]`: the stabilizer of `[y,z] = z`, `[x,z] = y`.
    NOmega,
}

pub fn in_stabilizer(g: &GroupElement, which: Stabilizer, omega: &SkewForm) -> Result<bool, OmegaError> {
    let m = &g.g;
    if m.rows() != omega.dim() {
        return Err(OmegaError::DimensionMismatch("group element and omega".into()));
    }
    let preserves = omega.congruent(m)? == *omega;
    if which == Stabilizer::GOmega {
        return Ok(preserves);
    }
    if omega.dim() != 3 {
        return Err(OmegaError::WrongDimension(omega.dim()));
    }
    let k = m.field();
    if omega.matrix() != &j_block_form(k, 3, 2) {
        return Err(OmegaError::NotCanonicalForm);
    }
    let zero = |i, j| m.get(i, j).is_zero();
    let one = |i, j| m.get(i, j).is_one();
    Ok(preserves
        && match which {
            Stabilizer::HOmega => zero(0, 2) && zero(1, 2) && zero(2, 0) && zero(2, 1) && one(2, 2),
            Stabilizer::NOmega => {
                one(0, 0)
                    && zero(0, 1)
                    && zero(0, 2)
                    && one(1, 1)
                    && zero(1, 2)
                    && one(2, 2)
                    && m.get(1, 0) == m.get(2, 1)
            }
            Stabilizer::GOmega => unreachable!(),
        })
}
