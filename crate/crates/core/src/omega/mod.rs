//! Structure constants, skew forms and the ω-Jacobi identity.

mod action;
mod file;

use std::fmt;

use thiserror::Error;

use crate::fields::{Field, FieldElement, FieldError};
use crate::linalg::{LinalgError, Matrix, SkewForm};

pub use action::{in_stabilizer, push_forward, transform, GroupElement, Stabilizer};
pub use file::{read_algebra, read_algebra_unchecked, write_algebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("dimension {0} is too small: every omega-Lie algebra of dimension < 3 is Lie")]
    DimensionTooSmall(usize),
    #[error("the omega-Jacobi equations have no solution")]
    NoSolution,
    #[error("the omega-Jacobi equations do not determine omega uniquely")]
    NotUnique,
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation needs dimension 3, got {0}")]
    WrongDimension(usize),
    #[error("omega is not in the canonical form dia{{J, 0}}")]
    NotCanonicalForm,
    #[error("not an omega-Lie algebra: {0}")]
    Invalid(String),
    #[error("line {line}: {message}")]
    File { line: usize, message: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `[e_i, e_j] = Σ_k c[i][j][k]·e_k`. Only pairs `i < j` are stored, so
/// antisymmetry holds by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    field: Field,
    dim: usize,
    upper: Vec<Vec<FieldElement>>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl StructureConstants {
    /// The abelian bracket.
    pub fn zero(field: &Field, dim: usize) -> StructureConstants {
        StructureConstants {
            field: field.clone(),
            dim,
            upper: vec![vec![field.zero(); dim]; dim * dim.saturating_sub(1) / 2],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_index(&self, index: usize) -> Result<(), OmegaError> {
        if index >= self.dim {
            return Err(OmegaError::IndexOutOfRange { index, dim: self.dim });
        }
        Ok(())
    }

    /// Sets `[e_i, e_j] = v`, and thereby `[e_j, e_i] = −v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<FieldElement>) -> Result<(), OmegaError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if v.len() != self.dim {
            return Err(OmegaError::DimensionMismatch(format!(
                "bracket vector of length {} in dimension {}",
                v.len(),
                self.dim
            )));
        }
        if let Some(bad) = v.iter().find(|x| x.field() != &self.field) {
            return Err(FieldError::DescriptorMismatch {
                left: bad.field().to_string(),
                right: self.field.to_string(),
            }
            .into());
        }
        if i == j {
            if v.iter().all(FieldElement::is_zero) {
                return Ok(());
            }
            return Err(OmegaError::Invalid(format!("[e{0}, e{0}] must vanish", i + 1)));
        }
        let (a, b, v) = if i < j {
            (i, j, v)
        } else {
            (j, i, v.iter().map(|x| -x).collect())
        };
        self.upper[pair_index(self.dim, a, b)] = v;
        Ok(())
    }

    /// Integer convenience for fixtures: `[e_i, e_j] = v`.
    pub fn with_bracket(mut self, i: usize, j: usize, v: &[i64]) -> StructureConstants {
        let v = v.iter().map(|&x| self.field.from_i64(x)).collect();
        self.set_bracket(i, j, v).expect("valid fixture bracket");
        self
    }

    pub fn bracket(&self, i: usize, j: usize) -> Vec<FieldElement> {
        assert!(i < self.dim && j < self.dim, "basis index out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(self.dim, i, j)].clone(),
            std::cmp::Ordering::Greater => self.upper[pair_index(self.dim, j, i)].iter().map(|x| -x).collect(),
            std::cmp::Ordering::Equal => vec![self.field.zero(); self.dim],
        }
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> FieldElement {
        self.bracket(i, j)[k].clone()
    }

    /// Bilinear extension: `[u, v]` for coordinate vectors.
    pub fn bracket_vectors(&self, u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.dim;
        let mut out = vec![self.field.zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                let b = self.bracket(i, j);
                for k in 0..n {
                    if !b[k].is_zero() {
                        out[k] = &out[k] + &(&c * &b[k]);
                    }
                }
            }
        }
        out
    }

    pub fn embed(&self, target: &Field) -> Result<StructureConstants, OmegaError> {
        let upper = self
            .upper
            .iter()
            .map(|v| v.iter().map(|x| target.embed(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StructureConstants {
            field: target.clone(),
            dim: self.dim,
            upper,
        })
    }

    /// Pairs `(i, j)` with `i < j` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.dim;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }
}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, j) in self.pairs() {
            let v: Vec<String> = self.bracket(i, j).iter().map(ToString::to_string).collect();
            m.entry(&format!("{},{}", i + 1, j + 1), &v);
        }
        m.finish()
    }
}

/// A bracket together with a skew form of the same dimension. Whether the
/// ω-Jacobi identity holds is checked by [`validate`], not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaAlgebra {
    sc: StructureConstants,
    omega: SkewForm,
}

impl OmegaAlgebra {
    pub fn new(sc: StructureConstants, omega: SkewForm) -> Result<OmegaAlgebra, OmegaError> {
        if omega.dim() != sc.dim() {
            return Err(OmegaError::DimensionMismatch(format!(
                "bracket of dimension {}, omega of dimension {}",
                sc.dim(),
                omega.dim()
            )));
        }
        if omega.field() != sc.field() {
            return Err(FieldError::DescriptorMismatch {
                left: sc.field().to_string(),
                right: omega.field().to_string(),
            }
            .into());
        }
        Ok(OmegaAlgebra { sc, omega })
    }

    pub fn field(&self) -> &Field {
        self.sc.field()
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn omega(&self) -> &SkewForm {
        &self.omega
    }

    pub fn embed(&self, target: &Field) -> Result<OmegaAlgebra, OmegaError> {
        OmegaAlgebra::new(self.sc.embed(target)?, self.omega.embed(target)?)
    }
}

/// Coordinates of `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
/// − ω(e_i,e_j)e_k − ω(e_j,e_k)e_i − ω(e_k,e_i)e_j`.
pub fn jacobi_residual(
    sc: &StructureConstants,
    omega: &SkewForm,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Vec<FieldElement>, OmegaError> {
    for index in [i, j, k] {
        sc.check_index(index)?;
    }
    if omega.dim() != sc.dim() {
        return Err(OmegaError::DimensionMismatch("omega and bracket".into()));
    }
    let n = sc.dim();
    let basis = |a: usize| -> Vec<FieldElement> {
        (0..n)
            .map(|b| if a == b { sc.field.one() } else { sc.field.zero() })
            .collect()
    };
    let w = omega.matrix();
    let mut out = vec![sc.field.zero(); n];
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        let inner = sc.bracket(a, b);
        let outer = sc.bracket_vectors(&inner, &basis(c));
        for l in 0..n {
            out[l] = &out[l] + &outer[l];
        }
        out[c] = &out[c] - w.get(a, b);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleFailure {
    pub triple: (usize, usize, usize),
    pub residual: Vec<FieldElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// `(i, j, k)` with `c[i][j][k] ≠ −c[j][i][k]`, read through the public accessor.
    pub antisymmetry: Vec<(usize, usize, usize)>,
    /// `(i, j)` with `ω(e_i, e_j) ≠ −ω(e_j, e_i)` or a nonzero diagonal entry.
    pub omega_skew: Vec<(usize, usize)>,
    /// Ordered triples, repeated indices included, with nonzero residual.
    pub failures: Vec<TripleFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.omega_skew.is_empty() && self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let mut parts = Vec::new();
        for (i, j, k) in &self.antisymmetry {
            parts.push(format!(
                "bracket not antisymmetric at ({}, {}, {})",
                i + 1,
                j + 1,
                k + 1
            ));
        }
        for (i, j) in &self.omega_skew {
            parts.push(format!("omega not skew at ({}, {})", i + 1, j + 1));
        }
        for fail in &self.failures {
            let (i, j, k) = fail.triple;
            let r: Vec<String> = fail.residual.iter().map(ToString::to_string).collect();
            parts.push(format!(
                "triple ({}, {}, {}) residual [{}]",
                i + 1,
                j + 1,
                k + 1,
                r.join(", ")
            ));
        }
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate(alg: &OmegaAlgebra) -> ValidationReport {
    let n = alg.dim();
    let sc = &alg.sc;
    let mut report = ValidationReport::default();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (sc.bracket(i, j), sc.bracket(j, i));
            for k in 0..n {
                if !(&a[k] + &b[k]).is_zero() {
                    report.antisymmetry.push((i, j, k));
                }
            }
        }
    }
    let w = alg.omega.matrix();
    for i in 0..n {
        for j in i..n {
            if !(w.get(i, j) + w.get(j, i)).is_zero() || (i == j && !w.get(i, i).is_zero()) {
                report.omega_skew.push((i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let residual = jacobi_residual(sc, &alg.omega, i, j, k).expect("indices in range");
                if residual.iter().any(|x| !x.is_zero()) {
                    report.failures.push(TripleFailure {
                        triple: (i, j, k),
                        residual,
                    });
                }
            }
        }
    }
    report
}

/// The unique ω making `sc` an ω-Lie algebra. All `n²` entries are unknowns,
/// so skewness is a consequence of the equations rather than an input.
pub fn recover_omega(sc: &StructureConstants) -> Result<SkewForm, OmegaError> {
    let n = sc.dim();
    if n < 3 {
        return Err(OmegaError::DimensionTooSmall(n));
    }
    let k = sc.field();
    let zero = SkewForm::zero(k, n);
    let var = |a: usize, b: usize| a * n + b;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // the residual with ω = 0 is the plain Jacobi sum
                let sum = jacobi_residual(sc, &zero, i, j, l)?;
                for (coord, value) in sum.into_iter().enumerate() {
                    let mut row = vec![k.zero(); n * n];
                    for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
                        if c == coord {
                            row[var(a, b)] = &row[var(a, b)] + &k.one();
                        }
                    }
                    rows.push(row);
                    rhs.push(value);
                }
            }
        }
    }
    let system = Matrix::from_rows(k, rows)?;
    let solution = match system.solve(&rhs) {
        Ok(s) => s,
        Err(LinalgError::InconsistentSystem) => return Err(OmegaError::NoSolution),
        Err(e) => return Err(e.into()),
    };
    if !solution.is_unique() {
        return Err(OmegaError::NotUnique);
    }
    let m = Matrix::new(k, n, n, solution.particular)?;
    Ok(SkewForm::new(m)?)
}

/// Dimension of the derived algebra `[L, L]`.
pub fn derived_dimension(sc: &StructureConstants) -> usize {
    let rows: Vec<Vec<FieldElement>> = sc.pairs().map(|(i, j)| sc.bracket(i, j)).collect();
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(sc.field(), rows).expect("rectangular").rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::j_block_form;

    fn d_algebra(k: &Field) -> StructureConstants {
        StructureConstants::zero(k, 3)
            .with_bracket(0, 1, &[0, 1, 0])
            .with_bracket(1, 2, &[0, 0, 1])
    }

    fn j2(k: &Field) -> SkewForm {
        SkewForm::new(j_block_form(k, 3, 2)).unwrap()
    }

    #[test]
    fn pair_indexing_is_dense() {
        for n in 1..6 {
            let idx: Vec<usize> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| pair_index(n, i, j)))
                .collect();
            assert_eq!(idx, (0..n * (n - 1) / 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn bracket_antisymmetry() {
        let k = Field::rationals();
        let sc = d_algebra(&k);
        assert_eq!(sc.bracket(1, 0), vec![k.zero(), -k.one(), k.zero()]);
        assert!(sc.bracket(2, 2).iter().all(FieldElement::is_zero));
        let mut sc = sc;
        sc.set_bracket(2, 0, vec![k.one(), k.zero(), k.zero()]).unwrap();
        assert_eq!(sc.coefficient(0, 2, 0), -k.one());
    }

    #[test]
    fn residuals() {
        let k = Field::rationals();
        let alg = OmegaAlgebra::new(d_algebra(&k), j2(&k)).unwrap();
        assert!(validate(&alg).is_valid());
        let abelian = OmegaAlgebra::new(StructureConstants::zero(&k, 3), SkewForm::zero(&k, 3)).unwrap();
        assert!(validate(&abelian).is_valid());
        assert!(matches!(
            jacobi_residual(alg.structure(), alg.omega(), 0, 1, 3),
            Err(OmegaError::IndexOutOfRange { index: 3, dim: 3 })
        ));
    }

    #[test]
    fn wrong_omega_fails_on_the_full_triple() {
        let k = Field::rationals();
        let w = Matrix::from_ints(&k, &[&[0, 2, 0], &[-2, 0, 0], &[0, 0, 0]]);
        let alg = OmegaAlgebra::new(d_algebra(&k), SkewForm::new(w).unwrap()).unwrap();
        let report = validate(&alg);
        assert!(!report.is_valid());
        let first = report.failures.iter().find(|f| {
            let (i, j, l) = f.triple;
            i < j && j < l
        });
        let first = first.unwrap();
        assert_eq!(first.triple, (0, 1, 2));
        assert_eq!(first.residual, vec![k.zero(), k.zero(), -k.one()]);
    }

    #[test]
    fn recover_omega_examples() {
        let k = Field::rationals();
        assert_eq!(recover_omega(&d_algebra(&k)).unwrap(), j2(&k));
        let heisenberg = StructureConstants::zero(&k, 3).with_bracket(0, 1, &[0, 0, 1]);
        assert!(recover_omega(&heisenberg).unwrap().is_zero());
        assert!(recover_omega(&StructureConstants::zero(&k, 3)).unwrap().is_zero());
        assert_eq!(
            recover_omega(&StructureConstants::zero(&k, 2)),
            Err(OmegaError::DimensionTooSmall(2))
        );
    }

    #[test]
    fn derived_dimensions() {
        let k = Field::rationals();
        assert_eq!(derived_dimension(&d_algebra(&k)), 2);
        assert_eq!(derived_dimension(&StructureConstants::zero(&k, 3)), 0);
        let a = StructureConstants::zero(&k, 3)
            .with_bracket(0, 1, &[1, 1, 0])
            .with_bracket(0, 2, &[0, 1, 0])
            .with_bracket(1, 2, &[0, 0, 1]);
        assert_eq!(derived_dimension(&a), 3);
    }
}
