//! Canonical forms of trace −1 matrices under `SL₂` conjugation.

use super::{LinalgError, Matrix};
use crate::fields::{quadratic_roots, sqrt_or_extend, Field, FieldElement, QuadraticMinpoly, RootReport, SqrtReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sl2Kind {
    /// `dia{b, −(b+1)}` with `b ≠ −1/2`.
    DistinctDiag(FieldElement),
    /// `−I/2`.
    ScalarHalf,
    /// `[[−1/2, 1], [0, −1/2]]`.
    JordanHalf,
}

/// `P ∈ SL₂` with `P⁻¹·M·P` canonical. When `extension` is set, `P` and the
/// eigenvalue live over that quadratic extension of the input field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Canonical {
    pub kind: Sl2Kind,
    pub p: Matrix,
    pub extension: Option<QuadraticMinpoly>,
}

impl Sl2Canonical {
    pub fn target(&self) -> Matrix {
        let k = self.p.field();
        let half = -k.from_ratio(1, 2).expect("char is not 2");
        match &self.kind {
            Sl2Kind::DistinctDiag(b) => Matrix::diagonal(k, &[b.clone(), -(b + &k.one())]),
            Sl2Kind::ScalarHalf => Matrix::diagonal(k, &[half.clone(), half]),
            Sl2Kind::JordanHalf => {
                let mut m = Matrix::diagonal(k, &[half.clone(), half]);
                m.set(0, 1, k.one());
                m
            }
        }
    }

    /// Exchanges the two eigenvalues of a `DistinctDiag` result via `P·J`.
    pub fn swapped(&self) -> Sl2Canonical {
        let Sl2Kind::DistinctDiag(b) = &self.kind else {
            return self.clone();
        };
        let k = self.p.field();
        let j = Matrix::from_ints(k, &[&[0, 1], &[-1, 0]]);
        Sl2Canonical {
            kind: Sl2Kind::DistinctDiag(-(b + &k.one())),
            p: &self.p * &j,
            extension: self.extension.clone(),
        }
    }
}

/// Canonicalizes a trace −1 matrix. Without `allow_extension`, a missing
/// eigenvalue or square root is reported as [`LinalgError::ExtensionRequired`].
pub fn sl2_trace_minus_one_canonical(m: &Matrix, allow_extension: bool) -> Result<Sl2Canonical, LinalgError> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(LinalgError::ShapeMismatch("expected a 2x2 matrix".into()));
    }
    let k = m.field().clone();
    let trace = m.trace();
    if !(&trace + &k.one()).is_zero() {
        return Err(LinalgError::NotTraceMinusOne(trace.to_string()));
    }
    let delta = m.det()?;
    match quadratic_roots(&delta)? {
        RootReport::TwoRoots(r1, r2) => Ok(distinct(m, r1, r2, None)),
        RootReport::NeedsExtension(minpoly) => {
            if !allow_extension {
                return Err(LinalgError::ExtensionRequired(minpoly));
            }
            let (ext, r1, r2) = minpoly.roots_in_extension()?;
            Ok(distinct(&m.embed(&ext)?, r1, r2, Some(minpoly)))
        }
        RootReport::DoubleRoot(half) => {
            let n = m.try_add(&Matrix::identity(&k, 2).scale(&-&half))?;
            if n.is_zero() {
                return Ok(Sl2Canonical {
                    kind: Sl2Kind::ScalarHalf,
                    p: Matrix::identity(&k, 2),
                    extension: None,
                });
            }
            jordan(&n, allow_extension)
        }
    }
}

fn distinct(m: &Matrix, r1: FieldElement, r2: FieldElement, extension: Option<QuadraticMinpoly>) -> Sl2Canonical {
    let k = m.field();
    // keep an already diagonal matrix fixed
    let (b, c) = if m.get(0, 1).is_zero() && m.get(1, 0).is_zero() && m.get(0, 0) != &r1 {
        (r2, r1)
    } else {
        (r1, r2)
    };
    let vb = eigenvector(m, &b);
    let vc = eigenvector(m, &c);
    let det = &vb[0] * &vc[1] - &vb[1] * &vc[0];
    let inv = det.inv().expect("eigenvectors of distinct eigenvalues are independent");
    let vc: Vec<_> = vc.iter().map(|x| x * &inv).collect();
    let p = Matrix::from_columns(k, &[vb, vc]).expect("two columns of length 2");
    Sl2Canonical {
        kind: Sl2Kind::DistinctDiag(b),
        p,
        extension,
    }
}

/// Kernel vector of `M − λI`, normalized so that its first nonzero entry is 1.
fn eigenvector(m: &Matrix, lambda: &FieldElement) -> Vec<FieldElement> {
    let k = m.field();
    let shifted = m.try_sub(&Matrix::identity(k, 2).scale(lambda)).expect("same shape");
    let mut kernel = shifted.kernel();
    assert_eq!(kernel.len(), 1, "simple eigenvalue has a one-dimensional eigenspace");
    let v = kernel.pop().unwrap();
    let lead = v.iter().find(|x| !x.is_zero()).unwrap().inv().unwrap();
    v.iter().map(|x| x * &lead).collect()
}

/// `N = M + I/2` is nonzero with `N² = 0`. With `w` a basis vector outside
/// `ker N` and `v = N·w`, the matrix `[v w]/√det[v w]` conjugates `M` to the
/// Jordan block.
fn jordan(n: &Matrix, allow_extension: bool) -> Result<Sl2Canonical, LinalgError> {
    let k = n.field().clone();
    let w_index = if n.column(0).iter().any(|x| !x.is_zero()) { 0 } else { 1 };
    let mut w = vec![k.zero(), k.zero()];
    w[w_index] = k.one();
    let v = n.mul_vec(&w);
    let det = &v[0] * &w[1] - &v[1] * &w[0];
    let (field, root, extension) = match sqrt_or_extend(&det)? {
        SqrtReport::Root(r) => (k.clone(), r, None),
        SqrtReport::NeedsExtension(minpoly) => {
            if !allow_extension {
                return Err(LinalgError::ExtensionRequired(minpoly));
            }
            let ext: Field = minpoly.extension_field()?;
            let theta = ext.theta().expect("extension generator");
            (ext, theta, Some(minpoly))
        }
    };
    let inv = root.inv()?;
    let cols = [v, w].map(|c| {
        c.iter()
            .map(|x| Ok(&field.embed(x)? * &inv))
            .collect::<Result<Vec<_>, LinalgError>>()
    });
    let [v, w] = cols;
    let p = Matrix::from_columns(&field, &[v?, w?])?;
    Ok(Sl2Canonical {
        kind: Sl2Kind::JordanHalf,
        p,
        extension,
    })
}
