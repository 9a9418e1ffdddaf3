//! Random scalars, matrices and group elements for property checks.

use rand::Rng;

use crate::fields::{Field, FieldDescriptor, FieldElement};
use crate::linalg::{Matrix, SkewForm};
use crate::omega::GroupElement;

/// Uniform over 𝔽_p; over ℚ a small fraction `n/d` with `|n| ≤ 9`, `1 ≤ d ≤ 4`.
pub fn element<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> FieldElement {
    match field.descriptor() {
        FieldDescriptor::PrimeField(p) => field.from_i64(rng.random_range(0..*p as i64)),
        FieldDescriptor::Rationals => field
            .from_ratio(rng.random_range(-9..=9), rng.random_range(1..=4))
            .expect("nonzero denominator"),
        FieldDescriptor::QuadExt { .. } => {
            let base = field.base();
            let a = element(&base, rng);
            let b = element(&base, rng);
            let theta = field.theta().expect("extension generator");
            &field.embed(&a).expect("base embeds") + &(&field.embed(&b).expect("base embeds") * &theta)
        }
    }
}

pub fn nonzero_element<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> FieldElement {
    loop {
        let x = element(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// `[[S, 0], [T, d]]` with `det S = 1`, `d ≠ 0`: an element of the stabilizer
/// of `dia{J, 0}` in dimension 3.
pub fn stabilizer_element<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> GroupElement {
    let (s11, s21) = loop {
        let a = element(field, rng);
        let c = element(field, rng);
        if !(a.is_zero() && c.is_zero()) {
            break (a, c);
        }
    };
    // complete (s11, s21) to a determinant-one block
    let (s12, s22) = if s11.is_zero() {
        (-s21.inv().unwrap(), element(field, rng))
    } else {
        let s12 = element(field, rng);
        let s22 = &(&field.one() + &(&s12 * &s21)) * &s11.inv().unwrap();
        (s12, s22)
    };
    let zero = field.zero();
    let rows = vec![
        vec![s11, s12, zero.clone()],
        vec![s21, s22, zero],
        vec![element(field, rng), element(field, rng), nonzero_element(field, rng)],
    ];
    GroupElement::new(Matrix::from_rows(field, rows).expect("3x3")).expect("invertible by construction")
}

pub fn invertible_matrix<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let data = (0..n * n).map(|_| element(field, rng)).collect();
        let m = Matrix::new(field, n, n, data).expect("n x n");
        if m.rank() == n {
            return m;
        }
    }
}

/// `Pᵗ·J_m·P` for a random invertible `P`: a skew form of rank exactly `m`.
pub fn skew_form_of_rank<R: Rng + ?Sized>(field: &Field, n: usize, rank: usize, rng: &mut R) -> SkewForm {
    let p = invertible_matrix(field, n, rng);
    SkewForm::canonical(field, n, rank).congruent(&p).expect("same size")
}
