use std::fmt::Write as _;
use std::sync::OnceLock;

use super::buchberger::{buchberger, normal_form, reduce_unchecked};
use super::{GroebnerError, PolyRing, Polynomial};
use crate::fields::Field;

/// Generators in a fixed ring with a lazily computed reduced Gröbner basis.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<Polynomial>,
    reduced: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    pub fn new(ring: &PolyRing, gens: Vec<Polynomial>) -> Result<Ideal, GroebnerError> {
        if let Some(bad) = gens.iter().find(|g| g.nvars() != ring.nvars()) {
            return Err(GroebnerError::RingMismatch(format!(
                "generator in {} variables, ring has {}",
                bad.nvars(),
                ring.nvars()
            )));
        }
        for g in &gens {
            for (_, c) in g.terms() {
                if c.field() != ring.field() {
                    return Err(GroebnerError::RingMismatch(format!(
                        "coefficient over {}, ring over {}",
                        c.field(),
                        ring.field()
                    )));
                }
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            reduced: OnceLock::new(),
        })
    }

    /// Generators given as polynomial text.
    pub fn parse(ring: &PolyRing, gens: &[&str]) -> Result<Ideal, GroebnerError> {
        let gens = gens.iter().map(|g| ring.parse(g)).collect::<Result<_, _>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The reduced Gröbner basis, computed on first use.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.reduced.get_or_init(|| reduce_unchecked(buchberger(&self.gens)))
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().iter().any(Polynomial::is_constant)
    }

    fn check_ring(&self, other: &PolyRing) -> Result<(), GroebnerError> {
        if &self.ring != other {
            return Err(GroebnerError::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.vars(),
                other.vars()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        if f.nvars() != self.ring.nvars() {
            return Err(GroebnerError::RingMismatch("membership test".into()));
        }
        Ok(normal_form(f, self.groebner_basis()).is_zero())
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self.groebner_basis())
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        self.check_ring(&other.ring)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A generator of `other` outside `self`, if any.
    pub fn first_outside(&self, other: &Ideal) -> Result<Option<Polynomial>, GroebnerError> {
        self.check_ring(&other.ring)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }
}

/// Equality of reduced Gröbner bases.
pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool, GroebnerError> {
    i.check_ring(&j.ring)?;
    Ok(i.groebner_basis() == j.groebner_basis())
}

pub fn ideal_member(f: &Polynomial, i: &Ideal) -> Result<bool, GroebnerError> {
    i.contains(f)
}

/// `I ∩ J` by eliminating a new largest variable `t` from `t·I + (1 − t)·J`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal, GroebnerError> {
    i.check_ring(&j.ring)?;
    let ring = &i.ring;
    let ext = ring.with_leading_var(&ring.fresh_name("t"))?;
    let t = Polynomial::term(super::Monomial::var(ext.nvars(), 0), ring.field().one());
    let one_minus_t = ext.one().add_scaled(&t, &-ring.field().one());
    let mut gens: Vec<Polynomial> = i.gens.iter().map(|f| t.mul(&f.shifted(1))).collect();
    gens.extend(j.gens.iter().map(|g| one_minus_t.mul(&g.shifted(1))));
    let elim = Ideal::new(&ext, gens)?;
    let kept: Vec<Polynomial> = elim
        .groebner_basis()
        .iter()
        .filter(|p| p.uses_only(|v| v != 0))
        .map(|p| p.unshifted(1))
        .collect();
    let out = Ideal::new(ring, kept.clone())?;
    // the t-free part of a reduced basis is the reduced basis of the elimination ideal
    let _ = out.reduced.set(kept);
    Ok(out)
}

/// `I : f`, from the generators of `I ∩ ⟨f⟩` divided exactly by `f`.
pub fn colon(i: &Ideal, f: &Polynomial) -> Result<Ideal, GroebnerError> {
    if f.is_zero() {
        return Err(GroebnerError::ZeroPolynomial);
    }
    let principal = Ideal::new(&i.ring, vec![f.clone()])?;
    let both = intersect(i, &principal)?;
    let quotients = both
        .groebner_basis()
        .iter()
        .map(|g| g.exact_div(f))
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(&i.ring, quotients)
}

/// Krull dimension of `R/I`: the size of a largest set of variables that
/// contains the support of no leading monomial of the reduced basis.
pub fn quotient_dimension(i: &Ideal) -> Result<usize, GroebnerError> {
    let basis = i.groebner_basis();
    if basis.iter().any(Polynomial::is_constant) {
        return Err(GroebnerError::UnitIdeal);
    }
    let n = i.ring.nvars();
    assert!(n < 64, "dimension search uses 64-bit variable masks");
    let supports: Vec<u64> = basis
        .iter()
        .map(|p| {
            p.leading_monomial()
                .expect("nonzero")
                .support()
                .fold(0u64, |acc, v| acc | (1 << v))
        })
        .collect();
    Ok(largest_free_set(n, &supports, 0, 0))
}

/// Branch over variables in order; a set is admissible when it contains no
/// full support.
fn largest_free_set(n: usize, supports: &[u64], next: usize, chosen: u64) -> usize {
    if next == n {
        return chosen.count_ones() as usize;
    }
    let with = chosen | (1 << next);
    let mut best = 0;
    if supports.iter().all(|s| s & with != *s) {
        best = largest_free_set(n, supports, next + 1, with);
    }
    if chosen.count_ones() as usize + (n - next - 1) > best {
        best = best.max(largest_free_set(n, supports, next + 1, chosen));
    }
    best
}

/// Ideal file: `field:` and `vars:` header lines, then one polynomial per
/// line. Blank lines and `#` comments are ignored on input.
pub fn write_ideal_file(ideal: &Ideal) -> String {
    write_polynomials(ideal.ring(), ideal.generators())
}

pub fn write_polynomials(ring: &PolyRing, polys: &[Polynomial]) -> String {
    let mut out = String::new();
    writeln!(out, "field: {}", ring.field()).unwrap();
    writeln!(out, "vars: {}", ring.vars().join(", ")).unwrap();
    for p in polys {
        writeln!(out, "{}", ring.format(p)).unwrap();
    }
    out
}

pub fn read_ideal_file(text: &str) -> Result<Ideal, GroebnerError> {
    let mut field: Option<Field> = None;
    let mut ring: Option<PolyRing> = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let at = |e: GroebnerError| GroebnerError::Line {
            line: line_no,
            message: e.to_string(),
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("field:") {
            if field.is_some() {
                return Err(at(GroebnerError::Parse("duplicate field header".into())));
            }
            field = Some(
                rest.trim()
                    .parse()
                    .map_err(|e: crate::fields::FieldError| at(e.into()))?,
            );
        } else if let Some(rest) = line.strip_prefix("vars:") {
            let f = field
                .as_ref()
                .ok_or_else(|| at(GroebnerError::Parse("vars header before field header".into())))?;
            if ring.is_some() {
                return Err(at(GroebnerError::Parse("duplicate vars header".into())));
            }
            let names: Vec<&str> = rest.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            ring = Some(PolyRing::new(f, names).map_err(at)?);
        } else {
            let r = ring
                .as_ref()
                .ok_or_else(|| at(GroebnerError::Parse("polynomial before the vars header".into())))?;
            gens.push(r.parse(line).map_err(at)?);
        }
    }
    let ring = ring.ok_or_else(|| GroebnerError::Parse("missing vars header".into()))?;
    Ideal::new(&ring, gens)
}
