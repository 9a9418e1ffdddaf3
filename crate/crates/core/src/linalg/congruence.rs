//! Congruence reduction of skew-symmetric forms to `J_m = dia{J, …, J, 0, …, 0}`.

use super::{LinalgError, Matrix};
use crate::fields::Field;

/// A square matrix with `Aᵗ = −A` and zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewForm {
    matrix: Matrix,
}

impl SkewForm {
    pub fn new(matrix: Matrix) -> Result<SkewForm, LinalgError> {
        if !matrix.is_square() {
            return Err(LinalgError::ShapeMismatch("skew form must be square".into()));
        }
        let n = matrix.rows();
        for i in 0..n {
            for j in i..n {
                let sum = matrix.get(i, j) + matrix.get(j, i);
                // zero diagonal is tested separately so that char 2 slips cannot hide it
                if !sum.is_zero() || (i == j && !matrix.get(i, i).is_zero()) {
                    return Err(LinalgError::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(SkewForm { matrix })
    }

    pub fn zero(field: &Field, n: usize) -> SkewForm {
        SkewForm {
            matrix: Matrix::zeros(field, n, n),
        }
    }

    /// `J_m` padded to size `n`.
    pub fn canonical(field: &Field, n: usize, rank: usize) -> SkewForm {
        SkewForm {
            matrix: j_block_form(field, n, rank),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `gᵗ·A·g`, again skew.
    pub fn congruent(&self, g: &Matrix) -> Result<SkewForm, LinalgError> {
        let m = g.transpose().try_mul(&self.matrix)?.try_mul(g)?;
        Ok(SkewForm { matrix: m })
    }

    pub fn embed(&self, target: &Field) -> Result<SkewForm, LinalgError> {
        Ok(SkewForm {
            matrix: self.matrix.embed(target)?,
        })
    }
}

/// `dia{J, …, J, 0, …, 0}` of size `n` with `rank/2` blocks.
pub fn j_block_form(field: &Field, n: usize, rank: usize) -> Matrix {
    assert!(rank % 2 == 0 && rank <= n, "rank {rank} in size {n}");
    let mut m = Matrix::zeros(field, n, n);
    for k in (0..rank).step_by(2) {
        m.set(k, k + 1, field.one());
        m.set(k + 1, k, -field.one());
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceResult {
    pub q: Matrix,
    pub rank: usize,
}

/// `Q` with `Qᵗ·A·Q = J_m`. Each step takes the first nonzero entry in
/// row-major order of the trailing block as pivot, swaps it into position,
/// clears the off-diagonal blocks with `[[I, a⁻¹·J·B], [0, I]]` and scales by
/// `dia{1, a⁻¹}`.
pub fn skew_congruence_reduce(form: &SkewForm) -> Result<CongruenceResult, LinalgError> {
    let field = form.field().clone();
    // re-check: the constructor guarantees skewness, but forms can be rebuilt from raw parts
    let form = SkewForm::new(form.matrix.clone())?;
    let n = form.dim();
    let mut a = form.matrix.clone();
    let mut q = Matrix::identity(&field, n);
    let mut k = 0;
    while k + 1 < n {
        let pivot = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a.get(i, j).is_zero());
        let Some((i, j)) = pivot else { break };
        debug_assert!(i < j);
        for (from, to) in [(i, k), (j, k + 1)] {
            if from != to {
                let mut p = Matrix::identity(&field, n);
                p.set(from, from, field.zero());
                p.set(to, to, field.zero());
                p.set(from, to, field.one());
                p.set(to, from, field.one());
                apply(&mut a, &mut q, &p)?;
            }
        }
        let pivot_value = a.get(k, k + 1).clone();
        let inv = pivot_value.inv()?;
        // a⁻¹·J·B with B the rows k, k+1 right of the block
        let mut clear = Matrix::identity(&field, n);
        for c in k + 2..n {
            let b0 = a.get(k, c);
            let b1 = a.get(k + 1, c);
            clear.set(k, c, b1 * &inv);
            clear.set(k + 1, c, -(b0 * &inv));
        }
        apply(&mut a, &mut q, &clear)?;
        let mut scale = Matrix::identity(&field, n);
        scale.set(k + 1, k + 1, inv);
        apply(&mut a, &mut q, &scale)?;
        k += 2;
    }
    debug_assert_eq!(a, j_block_form(&field, n, k));
    Ok(CongruenceResult { q, rank: k })
}

fn apply(a: &mut Matrix, q: &mut Matrix, step: &Matrix) -> Result<(), LinalgError> {
    *a = step.transpose().try_mul(a)?.try_mul(step)?;
    *q = q.try_mul(step)?;
    Ok(())
}
