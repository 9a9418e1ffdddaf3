//! Property checks across the modules. Random objects come from a seeded
//! generator so that proptest shrinks over the seed.

use omegalie::classify3::{canonical_algebra, classify, CanonicalLabel, ClassificationResult, ClassifyOptions};
use omegalie::fields::{Field, FieldElement, QuadraticMinpoly};
use omegalie::groebner::{
    buchberger, ideal_member, is_groebner_basis, normal_form, read_ideal_file, reduce_basis, write_ideal_file, Ideal,
    PolyRing, Polynomial,
};
use omegalie::linalg::{j_block_form, skew_congruence_reduce, Matrix};
use omegalie::omega::{
    push_forward, read_algebra, recover_omega, transform, validate, write_algebra, GroupElement, OmegaAlgebra,
    StructureConstants,
};
use omegalie::sample;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(which: u8) -> Field {
    match which % 3 {
        0 => Field::rationals(),
        1 => Field::prime(101).unwrap(),
        _ => Field::prime(7).unwrap(),
    }
}

/// `𝔽₁₀₁[θ]` with `θ² = 2`, and `ℚ[θ]` with `θ² + θ + 1 = 0`.
fn extension(which: u8) -> Field {
    let (base, c0, c1) = if which % 2 == 0 {
        (Field::prime(101).unwrap(), -2, 0)
    } else {
        (Field::rationals(), 1, 1)
    };
    QuadraticMinpoly {
        c0: base.from_i64(c0),
        c1: base.from_i64(c1),
    }
    .extension_field()
    .unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(seed in any::<u64>(), which in any::<u8>(), ext in any::<bool>()) {
        let k = if ext { extension(which) } else { field(which) };
        let mut r = rng(seed);
        let (a, b, c) = (sample::element(&k, &mut r), sample::element(&k, &mut r), sample::element(&k, &mut r));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, k.zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), k.one());
        }
        prop_assert_eq!(k.parse_element(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn skew_congruence_reaches_block_form(seed in any::<u64>(), which in any::<u8>(), n in 1usize..=8) {
        let k = field(which);
        let mut r = rng(seed);
        let rank = 2 * r.random_range(0..=n / 2);
        let form = sample::skew_form_of_rank(&k, n, rank, &mut r);
        let out = skew_congruence_reduce(&form).unwrap();
        prop_assert_eq!(out.rank, rank);
        prop_assert_eq!(out.q.rank(), n);
        let reduced = form.congruent(&out.q).unwrap();
        prop_assert_eq!(reduced.matrix(), &j_block_form(&k, n, rank));
    }

    #[test]
    fn inverse_and_solve(seed in any::<u64>(), which in any::<u8>(), n in 1usize..=6) {
        let k = field(which);
        let mut r = rng(seed);
        let m = sample::invertible_matrix(&k, n, &mut r);
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.try_mul(&inv).unwrap(), Matrix::identity(&k, n));
        let x: Vec<FieldElement> = (0..n).map(|_| sample::element(&k, &mut r)).collect();
        let sol = m.solve(&m.mul_vec(&x)).unwrap();
        prop_assert!(sol.is_unique());
        prop_assert_eq!(sol.particular, x);
        prop_assert_eq!(Matrix::decode(&k, &m.encode()).unwrap(), m);
    }

    #[test]
    fn action_laws(seed in any::<u64>(), which in any::<u8>(), n in 3usize..=4) {
        let k = field(which);
        let mut r = rng(seed);
        let mut sc = StructureConstants::zero(&k, n);
        for i in 0..n {
            for j in i + 1..n {
                sc.set_bracket(i, j, (0..n).map(|_| sample::element(&k, &mut r)).collect()).unwrap();
            }
        }
        let a = OmegaAlgebra::new(sc, sample::skew_form_of_rank(&k, n, 2, &mut r)).unwrap();
        let g = GroupElement::new(sample::invertible_matrix(&k, n, &mut r)).unwrap();
        let h = GroupElement::new(sample::invertible_matrix(&k, n, &mut r)).unwrap();
        prop_assert_eq!(&transform(&GroupElement::identity(&k, n), &a).unwrap(), &a);
        let gh = g.compose(&h).unwrap();
        prop_assert_eq!(
            transform(&g, &transform(&h, &a).unwrap()).unwrap(),
            transform(&gh, &a).unwrap()
        );
        prop_assert_eq!(
            push_forward(&g, &push_forward(&h, &a).unwrap()).unwrap(),
            push_forward(&gh, &a).unwrap()
        );
        prop_assert_eq!(&push_forward(&g.inverse(), &push_forward(&g, &a).unwrap()).unwrap(), &a);
    }

    /// Transport of structure keeps the ω-Jacobi identity and the recovered ω.
    #[test]
    fn transport_preserves_validity(seed in any::<u64>(), which in any::<u8>(), pick in 0usize..4) {
        let k = field(which);
        let mut r = rng(seed);
        let label = [CanonicalLabel::A, CanonicalLabel::B, CanonicalLabel::D, CanonicalLabel::C(k.from_i64(3))][pick].clone();
        let base = canonical_algebra(&label, &k).unwrap();
        let g = GroupElement::new(sample::invertible_matrix(&k, 3, &mut r)).unwrap();
        let moved = push_forward(&g, &base).unwrap();
        prop_assert!(validate(&moved).is_valid());
        prop_assert_eq!(&recover_omega(moved.structure()).unwrap(), moved.omega());
        let text = write_algebra(&moved);
        let back = read_algebra(&text).unwrap();
        prop_assert_eq!(write_algebra(&back), text);
        prop_assert_eq!(back, moved);
    }

    #[test]
    fn classification_is_an_invariant(seed in any::<u64>(), which in any::<u8>(), pick in 0usize..5) {
        let k = field(which);
        let mut r = rng(seed);
        let label = match pick {
            0 => CanonicalLabel::A,
            1 => CanonicalLabel::B,
            2 => CanonicalLabel::D,
            3 => CanonicalLabel::C(-k.one()),
            _ => loop {
                let a = sample::nonzero_element(&k, &mut r);
                if !(&a + &k.one()).is_zero() {
                    break CanonicalLabel::C(a);
                }
            },
        };
        let base = canonical_algebra(&label, &k).unwrap();
        let g = GroupElement::new(sample::invertible_matrix(&k, 3, &mut r)).unwrap();
        let input = push_forward(&g, &base).unwrap();
        let opts = ClassifyOptions { allow_extension: true, strict_c_labels: false };
        let res = classify(&input, opts).unwrap();
        prop_assert_eq!(res.label.normalized(), label.normalized());
        let target = canonical_algebra(&res.label, res.field()).unwrap();
        prop_assert_eq!(push_forward(&res.witness, &input.embed(res.field()).unwrap()).unwrap(), target);
        prop_assert!(res.replay(&input).unwrap());
        let text = res.to_text();
        let back = ClassificationResult::parse(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, res);
    }
}

fn random_poly(ring: &PolyRing, r: &mut ChaCha8Rng, terms: usize, max_deg: u32) -> Polynomial {
    let k = ring.field();
    let mut p = ring.zero();
    for _ in 0..terms {
        let exps: Vec<u32> = (0..ring.nvars()).map(|_| r.random_range(0..=max_deg)).collect();
        let m = omegalie::groebner::Monomial::new(exps);
        p = p.add_scaled(&Polynomial::term(m, k.one()), &sample::nonzero_element(k, r));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn groebner_basis_properties(seed in any::<u64>(), which in any::<u8>(), count in 1usize..=3) {
        let k = field(which);
        let ring = PolyRing::new(&k, ["a", "b", "c"]).unwrap();
        let mut r = rng(seed);
        let gens: Vec<Polynomial> = (0..count).map(|_| random_poly(&ring, &mut r, 3, 2)).collect();
        let gb = buchberger(&gens);
        prop_assert!(is_groebner_basis(&gb));
        let reduced = reduce_basis(&gb).unwrap();
        prop_assert_eq!(reduce_basis(&reduced).unwrap(), reduced.clone());
        let ideal = Ideal::new(&ring, gens.clone()).unwrap();
        prop_assert_eq!(ideal.groebner_basis(), reduced.as_slice());
        for g in &gens {
            prop_assert!(normal_form(g, &reduced).is_zero());
            prop_assert!(ideal_member(g, &ideal).unwrap());
        }
        // products with arbitrary polynomials stay inside
        let f = random_poly(&ring, &mut r, 2, 1);
        prop_assert!(ideal.contains(&f.mul(&gens[0])).unwrap());

        let text = write_ideal_file(&ideal);
        let back = read_ideal_file(&text).unwrap();
        prop_assert_eq!(write_ideal_file(&back), text);
        prop_assert_eq!(back.generators(), ideal.generators());
    }
}
