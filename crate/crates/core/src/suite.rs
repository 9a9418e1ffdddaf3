//! One-shot verification suites over the variety, the classification and the
//! fixed-`D` components, each reported as a [`ReportTable`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify3::{
    c_pair_map_is_isomorphism, canonical_algebra, classify, iso_witness, CanonicalLabel, ClassificationResult,
    ClassifyOptions, IsoOutcome,
};
use crate::fields::Field;
use crate::linalg::SkewForm;
use crate::omega::{derived_dimension, push_forward, transform, OmegaAlgebra, StructureConstants};
use crate::report::ReportTable;
use crate::sample;
use crate::variety::{verify_fixed_d_components, verify_three_dim_ideal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    /// The defining ideal of 3-dimensional ω-Lie algebras with `ω = J₂`.
    Variety,
    /// Canonical forms, orbit round trips, separation and the C-pair map.
    Classification,
    /// The two components of the fixed-`D` configuration in dimension 4.
    Components,
}

impl Section {
    pub const ALL: [Section; 3] = [Section::Variety, Section::Classification, Section::Components];
}

/// `ℚ` and `𝔽₁₀₁`.
pub fn default_fields() -> Vec<Field> {
    vec![Field::rationals(), Field::prime(101).expect("101 is prime")]
}

/// Runs `section` over every field; ids are prefixed with `<field>/`.
pub fn run_section(section: Section, fields: &[Field]) -> ReportTable {
    let mut table = ReportTable::new();
    for k in fields {
        let sub = match section {
            Section::Variety => verify_three_dim_ideal(k).unwrap_or_else(|e| failed("ideal.setup", e)),
            Section::Classification => classification_checks(k, 40),
            Section::Components => verify_fixed_d_components(k).unwrap_or_else(|e| failed("components.setup", e)),
        };
        table.extend(sub.prefixed(&format!("{k}/")));
    }
    table
}

fn failed(id: &str, e: impl std::fmt::Display) -> ReportTable {
    let mut t = ReportTable::new();
    t.run(id, || Err(e.to_string()));
    t
}

fn sample_labels(k: &Field) -> Vec<CanonicalLabel> {
    let mut out = vec![
        CanonicalLabel::A,
        CanonicalLabel::B,
        CanonicalLabel::D,
        CanonicalLabel::C(-k.one()),
    ];
    for a in [1, 2, -3] {
        out.push(CanonicalLabel::C(k.from_i64(a)));
    }
    out.push(CanonicalLabel::C(-k.from_ratio(1, 2).expect("characteristic is not 2")));
    out
}

/// Fixed points, `orbit_samples` seeded round trips, separation, derived
/// dimensions and the C-pair audit over `k`.
pub fn classification_checks(k: &Field, orbit_samples: usize) -> ReportTable {
    let mut t = ReportTable::new();
    let labels = sample_labels(k);
    let opts = ClassifyOptions {
        allow_extension: true,
        strict_c_labels: false,
    };

    t.run("classify.fixed-points", || {
        for label in &labels {
            let a = canonical_algebra(label, k).map_err(|e| e.to_string())?;
            let r = classify(&a, opts).map_err(|e| format!("{label}: {e}"))?;
            if r.label != label.normalized() {
                return Err(format!("{label} classified as {}", r.label));
            }
            if r.label == *label && !r.witness.is_identity() {
                return Err(format!("{label} has witness {}", r.witness.matrix().encode()));
            }
        }
        Ok(())
    });

    t.run("classify.c-zero-is-c-minus-one", || {
        let c0 = OmegaAlgebra::new(
            StructureConstants::zero(k, 3)
                .with_bracket(0, 1, &[0, 0, 1])
                .with_bracket(1, 2, &[0, -1, 0]),
            SkewForm::canonical(k, 3, 2),
        )
        .map_err(|e| e.to_string())?;
        let r = classify(&c0, opts).map_err(|e| e.to_string())?;
        if r.label != CanonicalLabel::C(-k.one()) {
            return Err(format!("classified as {}", r.label));
        }
        verify_witness(&c0, &r)
    });

    t.run("classify.orbit-round-trip", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6f6c);
        for i in 0..orbit_samples {
            let label = if i < labels.len() {
                labels[i].clone()
            } else {
                CanonicalLabel::C(sample::nonzero_element(k, &mut rng))
            };
            let g = sample::stabilizer_element(k, &mut rng);
            let input =
                transform(&g, &canonical_algebra(&label, k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let r = classify(&input, opts).map_err(|e| format!("{label}: {e}"))?;
            if r.label.normalized() != label.normalized() {
                return Err(format!(
                    "{label} moved by {} classified as {}",
                    g.matrix().encode(),
                    r.label
                ));
            }
            verify_witness(&input, &r)?;
        }
        Ok(())
    });

    t.run("classify.separation", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7365);
        for (i, a) in labels.iter().enumerate() {
            for b in &labels[i..] {
                let left = canonical_algebra(a, k).map_err(|e| e.to_string())?;
                let right = canonical_algebra(b, k).map_err(|e| e.to_string())?;
                let right = transform(&sample::stabilizer_element(k, &mut rng), &right).map_err(|e| e.to_string())?;
                let expected = a.normalized() == b.normalized();
                let outcome = iso_witness(&left, &right, true).map_err(|e| format!("{a} vs {b}: {e}"))?;
                match outcome {
                    IsoOutcome::Isomorphic { witness, .. } if expected => {
                        let image = push_forward(&witness, &left).map_err(|e| e.to_string())?;
                        if image != right {
                            return Err(format!("{a} vs {b}: witness fails"));
                        }
                    }
                    IsoOutcome::NonIsomorphic { .. } if !expected => {}
                    other => return Err(format!("{a} vs {b}: unexpected {other:?}")),
                }
            }
        }
        Ok(())
    });

    t.run("classify.derived-dimension", || {
        for label in &labels {
            let d = derived_dimension(canonical_algebra(label, k).map_err(|e| e.to_string())?.structure());
            let expected = match label {
                CanonicalLabel::D => 2,
                CanonicalLabel::C(a) if *a == -k.one() => 2,
                _ => 3,
            };
            if d != expected {
                return Err(format!("{label}: derived dimension {d}, expected {expected}"));
            }
        }
        Ok(())
    });

    t.run("classify.c-pair-map", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6370);
        let mut checked = 0;
        while checked < 50 {
            let alpha = sample::nonzero_element(k, &mut rng);
            if (&alpha + &k.one()).is_zero() {
                continue;
            }
            if !c_pair_map_is_isomorphism(&alpha).map_err(|e| e.to_string())? {
                return Err(format!("not an isomorphism at alpha = {alpha}"));
            }
            checked += 1;
        }
        Ok(())
    });
    if t.row("classify.c-pair-map").is_some_and(|r| r.passed) {
        t.note(format!(
            "over {k}, x -> y, y -> -x, z -> z is an omega-preserving isomorphism C(a) -> C(-(a+1)); \
             so C(a) and C(-(a+1)) are one isomorphism class, not two"
        ));
    }
    t
}

fn verify_witness(input: &OmegaAlgebra, r: &ClassificationResult) -> Result<(), String> {
    let kk = r.field();
    let target = canonical_algebra(&r.label, kk).map_err(|e| e.to_string())?;
    let embedded = input.embed(kk).map_err(|e| e.to_string())?;
    if transform(&r.witness, &embedded).map_err(|e| e.to_string())? != target {
        return Err(format!(
            "witness {} does not reach {}",
            r.witness.matrix().encode(),
            r.label
        ));
    }
    if !r.replay(input).map_err(|e| e.to_string())? {
        return Err("trace replay disagrees with the witness".into());
    }
    Ok(())
}
