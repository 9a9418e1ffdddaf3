use super::{defining_ideal, fixed_d_ideal, VarietyError};
use crate::fields::Field;
use crate::groebner::{
    colon, intersect, is_groebner_basis, normal_form, quotient_dimension, reduce_basis, s_polynomial, Ideal, PolyRing,
    Polynomial,
};
use crate::linalg::SkewForm;
use crate::report::ReportTable;

/// Generators of the 3-dimensional ω-Jacobi ideal for `ω = J₂`.
pub const F1: &str = "x2*z1 + y3*z1 - x1*z2 - y1*z3";
pub const F2: &str = "x3*y1 - x1*y3 + x3*z2 - x2*z3 + 1";
pub const F3: &str = "x2*y1 - x1*y2 - y3*z2 + y2*z3";
/// `spol(f1, f3)` and `spol(f2, f3)`.
pub const G: &str = "x1*y2*z1 + y1*y3*z1 - x1*y1*z2 + y3*z1*z2 - y1^2*z3 - y2*z1*z3";
pub const H: &str = "x1*x3*y2 - x1*x2*y3 + x2*x3*z2 + x3*y3*z2 - x2^2*z3 - x3*y2*z3 + x2";
pub const DELTA: &str = "x1*x2 + x3*y1";
pub const DET_M: &str = "(x2 + y3)*(x3*y2 - x2*y3)";
/// Members of `t·⟨f1, f2⟩ + (1 − t)·⟨Δ⟩` with `t` a new largest variable.
pub const H1: &str = "t*x1*x2 + t*x1*y3 - t*x3*z2 + t*x2*z3 - x1*x2 - x3*y1 - t";
pub const H2: &str = "t*x1^2*z2 - t*x3*z1*z2 + t*x1*y1*z3 - t*y3*z1*z3 + t*x1*z2*z3 + t*y1*z3^2 \
                      - x1*x2*z1 - x3*y1*z1 - t*z1";

const P1: [&str; 8] = ["x1", "x2 + z3", "x4 + 1", "y2 - z3", "y4 - 1", "z1", "z2", "z4"];
const P2: [&str; 9] = ["x4*z3 - x2", "x1", "y1", "y2 - z3", "y3", "y4 - 1", "z1", "z2", "z4"];

type Check = Result<(), String>;

fn require(ok: bool, counterexample: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(counterexample())
    }
}

/// A reduced-basis element of one ideal that the other does not contain.
fn distinguishing(ring: &PolyRing, a: &Ideal, b: &Ideal) -> Option<String> {
    let outside = |x: &Ideal, y: &Ideal| {
        y.groebner_basis()
            .iter()
            .find(|p| !normal_form(p, x.groebner_basis()).is_zero())
            .map(|p| ring.format(p))
    };
    outside(a, b).or_else(|| outside(b, a))
}

fn same_ideal(ring: &PolyRing, a: &Ideal, b: &Ideal) -> Check {
    if a.groebner_basis() == b.groebner_basis() {
        return Ok(());
    }
    Err(distinguishing(ring, a, b).unwrap_or_else(|| "reduced bases differ".into()))
}

fn error_text(e: impl std::fmt::Display) -> String {
    format!("error: {e}")
}

/// The 3-dimensional checks with the known generators.
pub fn verify_three_dim_ideal(field: &Field) -> Result<ReportTable, VarietyError> {
    verify_three_dim_ideal_with(field, [F1, F2, F3])
}

/// The 3-dimensional checks with `gens` in place of `f1, f2, f3`; `g`, `h`,
/// `h1`, `h2` and the multipliers stay fixed.
pub fn verify_three_dim_ideal_with(field: &Field, gens: [&str; 3]) -> Result<ReportTable, VarietyError> {
    let v = defining_ideal(3, &SkewForm::canonical(field, 3, 2))?;
    let ring = v.ring().clone();
    let parse = |s: &str| ring.parse(s);
    let f = gens.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
    let g = parse(G)?;
    let h = parse(H)?;
    let delta = parse(DELTA)?;
    let det = parse(DET_M)?;
    let prime = Ideal::new(&ring, f.clone())?;
    let pair = Ideal::new(&ring, f[..2].to_vec())?;
    let mut b = f.clone();
    b.extend([g.clone(), h.clone()]);
    let fmt = |p: &Polynomial| ring.format(p);

    let mut t = ReportTable::new();
    t.run("ideal.regenerate", || {
        let ok = v.generators() == f.as_slice();
        require(ok, || {
            v.generators()
                .iter()
                .find(|p| !f.contains(p))
                .map(fmt)
                .unwrap_or_else(|| "generator lists differ".into())
        })
    });
    t.run("ideal.reduced-basis", || match reduce_basis(&b) {
        Ok(reduced) => {
            let basis = prime.groebner_basis();
            require(basis == reduced.as_slice(), || {
                basis
                    .iter()
                    .chain(&reduced)
                    .find(|p| !(basis.contains(p) && reduced.contains(p)))
                    .map(fmt)
                    .unwrap_or_default()
            })
        }
        Err(e) => Err(error_text(e)),
    });
    t.run("ideal.s-polynomials", || {
        let s13 = s_polynomial(&f[0], &f[2]).map_err(error_text)?;
        let s23 = s_polynomial(&f[1], &f[2]).map_err(error_text)?;
        require(s13 == g, || fmt(&s13))?;
        require(s23 == h, || fmt(&s23))
    });
    t.run("ideal.two-generator-basis", || {
        require(is_groebner_basis(&f[..2]), || {
            fmt(&normal_form(
                &s_polynomial(&f[0], &f[1]).unwrap_or_else(|_| ring.zero()),
                &f[..2],
            ))
        })
    });
    t.run("ideal.colon-delta", || {
        let principal = Ideal::new(&ring, vec![delta.clone()]).map_err(error_text)?;
        let both = intersect(&pair, &principal).map_err(error_text)?;
        let expected = Ideal::new(&ring, f[..2].iter().map(|p| delta.mul(p)).collect()).map_err(error_text)?;
        same_ideal(&ring, &both, &expected)?;
        same_ideal(&ring, &colon(&pair, &delta).map_err(error_text)?, &pair)
    });
    t.run("ideal.colon-det-m", || {
        let principal = Ideal::new(&ring, vec![det.clone()]).map_err(error_text)?;
        let both = intersect(&prime, &principal).map_err(error_text)?;
        let expected = Ideal::new(&ring, b.iter().map(|p| det.mul(p)).collect()).map_err(error_text)?;
        same_ideal(&ring, &both, &expected)?;
        same_ideal(&ring, &colon(&prime, &det).map_err(error_text)?, &prime)
    });
    t.run("ideal.dimension", || match quotient_dimension(&prime) {
        Ok(6) => Ok(()),
        Ok(d) => Err(format!("dimension {d}")),
        Err(e) => Err(error_text(e)),
    });
    t.run("ideal.regular-sequence", || {
        // each generator is nonzero modulo the previous ones and not a zero divisor there
        for k in 0..3 {
            let before = Ideal::new(&ring, f[..k].to_vec()).map_err(error_text)?;
            let nf = before.reduce(&f[k]);
            require(!nf.is_zero(), || fmt(&f[k]))?;
            if k > 0 {
                same_ideal(&ring, &colon(&before, &f[k]).map_err(error_text)?, &before)?;
            }
        }
        Ok(())
    });
    t.run("ideal.elimination-members", || {
        let ext = ring.with_leading_var("t").map_err(error_text)?;
        let tt = ext.var("t").map_err(error_text)?;
        let one_minus_t = ext.one().add_scaled(&tt, &-field.one());
        let lift = |p: &Polynomial| ext.parse(&ring.format(p));
        let mut gens = Vec::new();
        for p in &f[..2] {
            gens.push(tt.mul(&lift(p).map_err(error_text)?));
        }
        gens.push(one_minus_t.mul(&lift(&delta).map_err(error_text)?));
        let aux = Ideal::new(&ext, gens).map_err(error_text)?;
        for text in [H1, H2] {
            let p = ext.parse(text).map_err(error_text)?;
            require(aux.contains(&p).map_err(error_text)?, || text.to_string())?;
        }
        Ok(())
    });
    Ok(t)
}

/// The two ideals whose intersection is the ideal of the fixed-D
/// configuration, in its 12-variable ring.
pub fn fixed_d_components(ring: &PolyRing) -> Result<(Ideal, Ideal), VarietyError> {
    Ok((Ideal::parse(ring, &P1)?, Ideal::parse(ring, &P2)?))
}

/// The fixed-D configuration with ω zero on the last basis vector.
pub fn verify_fixed_d_components(field: &Field) -> Result<ReportTable, VarietyError> {
    verify_fixed_d_components_with(&SkewForm::canonical(field, 4, 2))
}

pub fn verify_fixed_d_components_with(omega: &SkewForm) -> Result<ReportTable, VarietyError> {
    let v = fixed_d_ideal(omega)?;
    let ring = v.ring().clone();
    let jac = v.ideal();
    let (p1, p2) = fixed_d_components(&ring)?;
    let mut t = ReportTable::new();
    t.note("primality of the two components is assumed, not checked");
    t.run("components.ideal-equals-intersection", || {
        let both = intersect(&p1, &p2).map_err(error_text)?;
        same_ideal(&ring, &jac, &both)
    });
    for (id, p) in [("components.contained-in-p1", &p1), ("components.contained-in-p2", &p2)] {
        t.run(id, || {
            let outside = p.first_outside(&jac).map_err(error_text)?;
            require(outside.is_none(), || ring.format(outside.as_ref().unwrap()))
        });
    }
    // the union has the dimension of its larger component
    for (id, p, expected) in [
        ("components.dimension-p1", &p1, 4),
        ("components.dimension-p2", &p2, 3),
        ("components.dimension-union", &jac, 4),
    ] {
        t.run(id, || match quotient_dimension(p) {
            Ok(d) if d == expected => Ok(()),
            Ok(d) => Err(format!("dimension {d}")),
            Err(e) => Err(error_text(e)),
        });
    }
    Ok(t)
}
