use std::time::Instant;

use omegalie::fields::{Field, FieldElement};
use omegalie::groebner::{intersect, quotient_dimension};
use omegalie::linalg::{Matrix, SkewForm};
use omegalie::omega::{validate, OmegaAlgebra, StructureConstants};
use omegalie::variety::{
    defining_ideal, fixed_d_components, verify_fixed_d_components, verify_fixed_d_components_with,
    verify_three_dim_ideal, verify_three_dim_ideal_with, VarietyError, F1, F3,
};
use proptest::prelude::*;

fn j2(k: &Field) -> SkewForm {
    SkewForm::canonical(k, 3, 2)
}

#[test]
fn three_dim_suite_passes_over_both_fields() {
    for k in [Field::rationals(), Field::prime(101).unwrap()] {
        let start = Instant::now();
        let table = verify_three_dim_ideal(&k).unwrap();
        assert!(table.all_passed(), "over {k}:\n{table}");
        assert_eq!(table.rows.len(), 9);
        eprintln!("three-dimensional suite over {k}: {:?}", start.elapsed());
    }
}

#[test]
fn dropping_the_constant_term_breaks_the_basis_check() {
    let k = Field::rationals();
    let mutated = "x3*y1 - x1*y3 + x3*z2 - x2*z3";
    let table = verify_three_dim_ideal_with(&k, [F1, mutated, F3]).unwrap();
    let row = table.row("ideal.reduced-basis").unwrap();
    assert!(!row.passed);
    assert!(row.counterexample.is_some());
    assert!(!table.row("ideal.regenerate").unwrap().passed);
}

#[test]
fn fixed_d_components_match() {
    let start = Instant::now();
    let table = verify_fixed_d_components(&Field::rationals()).unwrap();
    assert!(table.all_passed(), "{table}");
    assert_eq!(table.notes.len(), 1);
    assert!(start.elapsed().as_secs() < 10);
}

#[test]
fn omega_on_the_last_vector_breaks_the_equality() {
    let k = Field::rationals();
    let mut w = Matrix::zeros(&k, 4, 4);
    w.set(0, 1, k.one());
    w.set(1, 0, -k.one());
    w.set(2, 3, k.one());
    w.set(3, 2, -k.one());
    let table = verify_fixed_d_components_with(&SkewForm::new(w).unwrap()).unwrap();
    assert!(!table.row("components.ideal-equals-intersection").unwrap().passed);
}

#[test]
fn fixed_d_ideal_through_the_dimension_four_entry_point() {
    let k = Field::rationals();
    let v = defining_ideal(4, &SkewForm::canonical(&k, 4, 2)).unwrap();
    assert_eq!(v.ring().nvars(), 12);
    let (p1, p2) = fixed_d_components(v.ring()).unwrap();
    assert_eq!(quotient_dimension(&p1).unwrap(), 4);
    assert_eq!(quotient_dimension(&p2).unwrap(), 3);
    assert_eq!(quotient_dimension(&v.ideal()).unwrap(), 4);
    let both = intersect(&p1, &p2).unwrap();
    assert_eq!(both.groebner_basis(), v.ideal().groebner_basis());
}

#[test]
fn d_is_a_point_of_the_variety() {
    let k = Field::rationals();
    let v = defining_ideal(3, &j2(&k)).unwrap();
    let d = StructureConstants::zero(&k, 3)
        .with_bracket(0, 1, &[0, 1, 0])
        .with_bracket(1, 2, &[0, 0, 1]);
    assert!(v.evaluate(&v.point_of(&d)).unwrap().iter().all(FieldElement::is_zero));
}

#[test]
fn lie_case_gives_classical_jacobi() {
    let k = Field::rationals();
    let v = defining_ideal(3, &SkewForm::zero(&k, 3)).unwrap();
    let heisenberg = StructureConstants::zero(&k, 3).with_bracket(0, 1, &[0, 0, 1]);
    assert!(v
        .evaluate(&v.point_of(&heisenberg))
        .unwrap()
        .iter()
        .all(FieldElement::is_zero));
    // every generator is homogeneous of degree 2
    assert!(v
        .generators()
        .iter()
        .all(|g| g.terms().iter().all(|(m, _)| m.degree() == 2)));
    let with_omega = StructureConstants::zero(&k, 3)
        .with_bracket(0, 1, &[0, 1, 0])
        .with_bracket(1, 2, &[0, 0, 1]);
    assert!(!v
        .evaluate(&v.point_of(&with_omega))
        .unwrap()
        .iter()
        .all(FieldElement::is_zero));
}

#[test]
fn unsupported_dimension() {
    let k = Field::rationals();
    assert!(matches!(
        defining_ideal(5, &SkewForm::canonical(&k, 5, 4)),
        Err(VarietyError::UnsupportedDimension(5))
    ));
}

fn fp(v: i64) -> FieldElement {
    Field::prime(101).unwrap().from_i64(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Points where f1 = f2 = f3 = 0 are solved for z1, z2, z3 from the
    /// six free coordinates; each one is an ω-Lie algebra.
    #[test]
    fn completeness_over_f101(free in proptest::collection::vec(0i64..101, 6), z in proptest::collection::vec(0i64..101, 3)) {
        let k = Field::prime(101).unwrap();
        let v = defining_ideal(3, &j2(&k)).unwrap();
        // f1, f2, f3 are affine in (z1, z2, z3) once x, y are fixed
        let x: Vec<FieldElement> = free[..3].iter().map(|&a| fp(a)).collect();
        let y: Vec<FieldElement> = free[3..].iter().map(|&a| fp(a)).collect();
        let zero = k.zero();
        let mut point: Vec<FieldElement> = x.iter().chain(&y).cloned().collect();
        point.extend([zero.clone(), zero.clone(), zero.clone()]);
        let base = v.evaluate(&point).unwrap();
        let mut columns = Vec::new();
        for c in 0..3 {
            let mut p = point.clone();
            p[6 + c] = k.one();
            let val = v.evaluate(&p).unwrap();
            columns.push(val.iter().zip(&base).map(|(a, b)| a - b).collect::<Vec<_>>());
        }
        let a = Matrix::from_columns(&k, &columns).unwrap();
        let rhs: Vec<FieldElement> = base.iter().map(|b| -b).collect();
        if let Ok(sol) = a.solve(&rhs) {
            let mut zs = sol.particular.clone();
            for (kv, coef) in sol.kernel.iter().zip(&z) {
                for (zi, ki) in zs.iter_mut().zip(kv) {
                    *zi = &*zi + &(ki * &fp(*coef));
                }
            }
            point.truncate(6);
            point.extend(zs);
            prop_assert!(v.evaluate(&point).unwrap().iter().all(FieldElement::is_zero));
            let alg = OmegaAlgebra::new(v.structure_at(&point).unwrap(), j2(&k)).unwrap();
            prop_assert!(validate(&alg).is_valid());
        }
    }
}
