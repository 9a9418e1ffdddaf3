//! The ten acceptance criteria, each with its runtime budget. Prints one
//! `criterion N PASS|FAIL` line per criterion.
//!
//! Criterion 8 asks for quotient dimension 4 on both fixed-D components; the
//! second component has dimension 3, so that criterion is listed in
//! `UNATTAINABLE` and reported as FAIL without failing the run. Any other
//! FAIL, or a PASS of a listed criterion, makes the run fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use omegalie::classify3::{
    c_pair_map, c_pair_map_is_isomorphism, canonical_algebra, classify, iso_witness, CanonicalLabel, ClassifyOptions,
    IsoOutcome,
};
use omegalie::cli;
use omegalie::fields::Field;
use omegalie::groebner::{intersect, quotient_dimension, reduce_basis, s_polynomial, Ideal};
use omegalie::linalg::{j_block_form, skew_congruence_reduce, SkewForm};
use omegalie::omega::{
    derived_dimension, in_stabilizer, push_forward, recover_omega, transform, validate, GroupElement, OmegaAlgebra,
    Stabilizer, StructureConstants,
};
use omegalie::sample;
use omegalie::suite::classification_checks;
use omegalie::variety::{defining_ideal, fixed_d_components, fixed_d_ideal, verify_three_dim_ideal, F1, F2, F3, G, H};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const UNATTAINABLE: &[u32] = &[8];

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn q() -> Field {
    Field::rationals()
}

fn f101() -> Field {
    Field::prime(101).unwrap()
}

fn criterion_1() -> Check {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        ["omegalie", "--format", "machine", "variety", "--dim", "3"],
        &mut out,
        &mut err,
    );
    ensure(code == cli::EXIT_OK, || String::from_utf8_lossy(&err).into_owned())?;
    let text = String::from_utf8(out).map_err(e)?;
    let gens: Vec<&str> = text.lines().filter_map(|l| l.strip_prefix("generator ")).collect();
    ensure(gens == [F1, F2, F3], || format!("generators {gens:?}"))
}

fn criterion_2() -> Check {
    let v = defining_ideal(3, &SkewForm::canonical(&q(), 3, 2)).map_err(e)?;
    let ring = v.ring();
    let f: Vec<_> = [F1, F2, F3]
        .iter()
        .map(|s| ring.parse(s))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    let (g, h) = (ring.parse(G).map_err(e)?, ring.parse(H).map_err(e)?);
    let ideal = Ideal::new(ring, f.clone()).map_err(e)?;
    let mut b = f.clone();
    b.extend([g.clone(), h.clone()]);
    let reduced = reduce_basis(&b).map_err(e)?;
    ensure(ideal.groebner_basis() == reduced.as_slice(), || {
        "reduced basis differs from the reduction of B".into()
    })?;
    let s13 = s_polynomial(&f[0], &f[2]).map_err(e)?;
    let s23 = s_polynomial(&f[1], &f[2]).map_err(e)?;
    ensure(s13 == g, || format!("spol(f1, f3) = {}", ring.format(&s13)))?;
    ensure(s23 == h, || format!("spol(f2, f3) = {}", ring.format(&s23)))
}

fn criterion_3() -> Check {
    let t = verify_three_dim_ideal(&q()).map_err(e)?;
    for id in ["ideal.colon-delta", "ideal.colon-det-m"] {
        let row = t.row(id).ok_or_else(|| format!("missing {id}"))?;
        ensure(row.passed, || {
            format!("{id}: {}", row.counterexample.clone().unwrap_or_default())
        })?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let v = defining_ideal(3, &SkewForm::canonical(&q(), 3, 2)).map_err(e)?;
    let d = quotient_dimension(&v.ideal()).map_err(e)?;
    ensure(d == 6, || format!("dimension {d}"))
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..1000 {
        let k = if i % 2 == 0 { q() } else { f101() };
        let n = rng.random_range(1..=8);
        let m = 2 * rng.random_range(0..=n / 2);
        let a = sample::skew_form_of_rank(&k, n, m, &mut rng);
        let r = skew_congruence_reduce(&a).map_err(e)?;
        ensure(r.rank == m, || {
            format!("planted rank {m}, got {} for {}", r.rank, a.matrix().encode())
        })?;
        let reduced = a.congruent(&r.q).map_err(e)?;
        ensure(*reduced.matrix() == j_block_form(&k, n, m), || {
            format!("Q^T A Q != J_{m} for {}", a.matrix().encode())
        })?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let opts = ClassifyOptions {
        allow_extension: true,
        strict_c_labels: false,
    };
    for k in [q(), f101()] {
        // (a) fixed points with identity witness
        let mut fixed = vec![
            CanonicalLabel::A,
            CanonicalLabel::B,
            CanonicalLabel::D,
            CanonicalLabel::C(-k.one()),
        ];
        fixed.push(CanonicalLabel::C(-k.from_ratio(1, 2).map_err(e)?));
        for a in [1, 2, -3, 5] {
            let label = CanonicalLabel::C(k.from_i64(a)).normalized();
            fixed.push(label);
        }
        for label in &fixed {
            let alg = canonical_algebra(label, &k).map_err(e)?;
            let r = classify(&alg, opts).map_err(e)?;
            ensure(r.label == *label && r.witness.is_identity(), || {
                format!("{label} classified as {} with {}", r.label, r.witness.matrix().encode())
            })?;
        }
    }
    // (b) orbit round trips
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (k, count) in [(f101(), 500), (q(), 100)] {
        for _ in 0..count {
            let label = match rng.random_range(0..4) {
                0 => CanonicalLabel::A,
                1 => CanonicalLabel::B,
                2 => CanonicalLabel::D,
                _ => loop {
                    let a = sample::nonzero_element(&k, &mut rng);
                    if !(&a + &k.one()).is_zero() || rng.random_bool(0.5) {
                        break CanonicalLabel::C(a);
                    }
                },
            };
            let base = canonical_algebra(&label, &k).map_err(e)?;
            let g = sample::stabilizer_element(&k, &mut rng);
            let input = transform(&g, &base).map_err(e)?;
            let r = classify(&input, opts).map_err(|err| format!("{label}: {err}"))?;
            ensure(r.label.normalized() == label.normalized(), || {
                format!("{label} classified as {}", r.label)
            })?;
            let kk = r.field();
            let target = canonical_algebra(&r.label, kk).map_err(e)?;
            let image = transform(&r.witness, &input.embed(kk).map_err(e)?).map_err(e)?;
            ensure(image == target, || {
                format!("witness fails for {label} moved by {}", g.matrix().encode())
            })?;
        }
    }
    // (c) separation, except the C pair
    for k in [q(), f101()] {
        let mut labels = vec![CanonicalLabel::A, CanonicalLabel::B, CanonicalLabel::D];
        for a in [-1, 1, 2, -2, -3, 4] {
            labels.push(CanonicalLabel::C(k.from_i64(a)));
        }
        for (i, a) in labels.iter().enumerate() {
            for b in &labels[i + 1..] {
                let left = canonical_algebra(a, &k).map_err(e)?;
                let right = transform(
                    &sample::stabilizer_element(&k, &mut rng),
                    &canonical_algebra(b, &k).map_err(e)?,
                )
                .map_err(e)?;
                let pair = a.normalized() == b.normalized();
                match iso_witness(&left, &right, true).map_err(e)? {
                    IsoOutcome::NonIsomorphic { .. } if !pair => {}
                    IsoOutcome::Isomorphic { witness, .. } if pair => {
                        ensure(push_forward(&witness, &left).map_err(e)? == right, || {
                            format!("{a} ~ {b}: witness fails")
                        })?;
                    }
                    other => return Err(format!("{a} vs {b}: {other:?}")),
                }
            }
        }
    }
    // (d) derived dimensions
    for k in [q(), f101()] {
        let dd = |l: CanonicalLabel| canonical_algebra(&l, &k).map(|a| derived_dimension(a.structure()));
        let cases = [
            (CanonicalLabel::D, 2),
            (CanonicalLabel::C(-k.one()), 2),
            (CanonicalLabel::A, 3),
            (CanonicalLabel::B, 3),
            (CanonicalLabel::C(k.from_i64(2)), 3),
            (CanonicalLabel::C(-k.from_ratio(1, 2).map_err(e)?), 3),
        ];
        for (l, expected) in cases {
            let shown = l.to_string();
            let d = dd(l).map_err(e)?;
            ensure(d == expected, || format!("{shown}: derived dimension {d}"))?;
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in [q(), f101()] {
        let map = c_pair_map(&k);
        ensure(
            in_stabilizer(&map, Stabilizer::GOmega, &SkewForm::canonical(&k, 3, 2)).map_err(e)?,
            || "the pair map does not preserve omega".into(),
        )?;
        let mut done = 0;
        while done < 50 {
            let alpha = sample::nonzero_element(&k, &mut rng);
            if (&alpha + &k.one()).is_zero() {
                continue;
            }
            ensure(c_pair_map_is_isomorphism(&alpha).map_err(e)?, || {
                format!("fails at alpha = {alpha}")
            })?;
            done += 1;
        }
        let table = classification_checks(&k, 0);
        ensure(table.notes.iter().any(|n| n.contains("one isomorphism class")), || {
            "tension not flagged".into()
        })?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    let omega = SkewForm::canonical(&q(), 4, 2);
    let v = fixed_d_ideal(&omega).map_err(e)?;
    let (p1, p2) = fixed_d_components(v.ring()).map_err(e)?;
    let both = intersect(&p1, &p2).map_err(e)?;
    ensure(v.ideal().groebner_basis() == both.groebner_basis(), || {
        "ideal differs from the intersection".into()
    })?;
    let d1 = quotient_dimension(&p1).map_err(e)?;
    let d2 = quotient_dimension(&p2).map_err(e)?;
    ensure(d1 == 4 && d2 == 4, || {
        format!("ideal equals the intersection, but the component dimensions are {d1} and {d2}, not 4 and 4")
    })
}

/// A canonical 3-dimensional algebra or a point of the first fixed-D
/// component, moved by a random invertible matrix.
fn random_omega_lie(rng: &mut ChaCha8Rng, k: &Field) -> Result<OmegaAlgebra, String> {
    if rng.random_bool(0.5) {
        let labels = [
            CanonicalLabel::A,
            CanonicalLabel::B,
            CanonicalLabel::D,
            CanonicalLabel::C(k.from_i64(3)),
        ];
        let base = canonical_algebra(&labels[rng.random_range(0..labels.len())], k).map_err(e)?;
        let g = GroupElement::new(sample::invertible_matrix(k, 3, rng)).map_err(e)?;
        return push_forward(&g, &base).map_err(e);
    }
    // a point of the first fixed-D component: x1 = z1 = z2 = z4 = 0, x2 = −z3,
    // x4 = −1, y2 = z3, y4 = 1 with x3, y1, y3, z3 free
    let omega = SkewForm::canonical(k, 4, 2);
    let v = fixed_d_ideal(&omega).map_err(e)?;
    let names: Vec<String> = v.ring().vars().to_vec();
    let (x3, y1, y3, z3) = (
        sample::element(k, rng),
        sample::element(k, rng),
        sample::element(k, rng),
        sample::element(k, rng),
    );
    let point: Vec<_> = names
        .iter()
        .map(|n| match n.as_str() {
            "x2" => -&z3,
            "x3" => x3.clone(),
            "x4" => -k.one(),
            "y1" => y1.clone(),
            "y2" => z3.clone(),
            "y3" => y3.clone(),
            "y4" => k.one(),
            "z3" => z3.clone(),
            _ => k.zero(),
        })
        .collect();
    let sc = v.structure_at(&point).map_err(e)?;
    let base = OmegaAlgebra::new(sc, omega).map_err(e)?;
    let g = GroupElement::new(sample::invertible_matrix(k, 4, rng)).map_err(e)?;
    push_forward(&g, &base).map_err(e)
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200 {
        let k = if i % 2 == 0 { q() } else { f101() };
        let a = random_omega_lie(&mut rng, &k)?;
        let report = validate(&a);
        ensure(report.is_valid(), || format!("sample {i} invalid: {report}"))?;
        let w = a.omega().matrix();
        ensure(*w == w.transpose().scale(&-k.one()), || {
            format!("sample {i}: omega not skew")
        })?;
        let recovered = recover_omega(a.structure()).map_err(|err| format!("sample {i}: {err}"))?;
        ensure(recovered == *a.omega(), || {
            format!("sample {i}: recovered {}", recovered.matrix().encode())
        })?;
    }
    for k in [q(), f101()] {
        let heisenberg = StructureConstants::zero(&k, 3).with_bracket(0, 1, &[0, 0, 1]);
        let w = recover_omega(&heisenberg).map_err(e)?;
        ensure(w.is_zero(), || format!("Heisenberg gives {}", w.matrix().encode()))?;
    }
    Ok(())
}

fn random_brackets(rng: &mut ChaCha8Rng, k: &Field, n: usize) -> Result<OmegaAlgebra, String> {
    let mut sc = StructureConstants::zero(k, n);
    for i in 0..n {
        for j in i + 1..n {
            sc.set_bracket(i, j, (0..n).map(|_| sample::element(k, rng)).collect())
                .map_err(e)?;
        }
    }
    OmegaAlgebra::new(sc, sample::skew_form_of_rank(k, n, 2, rng)).map_err(e)
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..1000 {
        let k = if i % 2 == 0 { q() } else { f101() };
        let n = if i % 3 == 0 { 4 } else { 3 };
        let a = random_brackets(&mut rng, &k, n)?;
        let g = GroupElement::new(sample::invertible_matrix(&k, n, &mut rng)).map_err(e)?;
        let h = GroupElement::new(sample::invertible_matrix(&k, n, &mut rng)).map_err(e)?;
        ensure(transform(&GroupElement::identity(&k, n), &a).map_err(e)? == a, || {
            format!("triple {i}: identity law")
        })?;
        let stepwise = transform(&g, &transform(&h, &a).map_err(e)?).map_err(e)?;
        let at_once = transform(&g.compose(&h).map_err(e)?, &a).map_err(e)?;
        ensure(stepwise == at_once, || format!("triple {i}: compatibility law"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(u32, Duration, fn() -> Check); 10] = [
        (1, Duration::from_secs(1), criterion_1),
        (2, Duration::from_secs(1), criterion_2),
        (3, Duration::from_secs(5), criterion_3),
        (4, Duration::from_secs(1), criterion_4),
        (5, Duration::from_secs(10), criterion_5),
        (6, Duration::from_secs(30), criterion_6),
        (7, Duration::from_secs(2), criterion_7),
        (8, Duration::from_secs(10), criterion_8),
        (9, Duration::from_secs(5), criterion_9),
        (10, Duration::from_secs(5), criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (n, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= budget, || {
                format!("took {:.3}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs())
            })
        });
        let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
        let known = UNATTAINABLE.contains(&n);
        match &outcome {
            Ok(()) => println!("criterion {n} {verdict} {:.3}s", elapsed.as_secs_f64()),
            Err(why) => println!("criterion {n} {verdict} {:.3}s: {why}", elapsed.as_secs_f64()),
        }
        if outcome.is_ok() == known {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected verdicts for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
