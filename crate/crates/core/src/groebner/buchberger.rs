use std::collections::BTreeSet;

use super::{GroebnerError, Monomial, Polynomial};

/// `(LC(g)·t/LM(f))·f − (LC(f)·t/LM(g))·g` with `t = lcm(LM(f), LM(g))`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GroebnerError> {
    let (Some((mf, cf)), Some((mg, cg))) = (f.terms().first(), g.terms().first()) else {
        return Err(GroebnerError::ZeroPolynomial);
    };
    let t = mf.lcm(mg);
    let left = f.mul_term(&mf.quotient_of(&t), cg);
    let right = g.mul_term(&mg.quotient_of(&t), cf);
    Ok(left.add_scaled(&right, &-cf.field().one()))
}

/// Full remainder of multivariate division: no term of the result is
/// divisible by a leading monomial of `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let leads: Vec<_> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.terms().first().expect("basis elements are nonzero");
            (m, c.inv().expect("nonzero leading coefficient"))
        })
        .collect();
    let mut rest = f.clone();
    let mut remainder = Vec::new();
    while let Some((m, c)) = rest.terms().first() {
        match leads.iter().position(|(lm, _)| lm.divides(m)) {
            Some(k) => {
                let (lm, lc_inv) = &leads[k];
                let factor = -(c * lc_inv);
                let q = lm.quotient_of(m);
                rest = rest.add_scaled(&basis[k].mul_term(&q, &factor), &c.field().one());
            }
            None => {
                remainder.push((m.clone(), c.clone()));
                rest = Polynomial::from_sorted_tail(&rest, 1);
            }
        }
    }
    Polynomial::from_sorted(f.nvars(), remainder)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuchbergerOptions {
    /// Skip pairs via the chain criterion in addition to the product criterion.
    pub chain_criterion: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuchbergerStats {
    pub pairs_considered: usize,
    pub product_criterion: usize,
    pub chain_criterion: usize,
    pub zero_reductions: usize,
}

/// A Gröbner basis of the ideal generated by `gens` (not yet reduced).
pub fn buchberger(gens: &[Polynomial]) -> Vec<Polynomial> {
    buchberger_with(gens, BuchbergerOptions { chain_criterion: true }).0
}

/// Buchberger's algorithm with the normal selection strategy: the pair with
/// the smallest lcm (grevlex) goes first, ties by insertion order.
pub fn buchberger_with(gens: &[Polynomial], options: BuchbergerOptions) -> (Vec<Polynomial>, BuchbergerStats) {
    let mut stats = BuchbergerStats::default();
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        basis.push(g.monic());
    }
    if basis.iter().any(Polynomial::is_constant) {
        let one = basis.iter().find(|g| g.is_constant()).unwrap().clone();
        return (vec![one], stats);
    }
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((lcm(&basis, i, j), i, j));
        }
    }
    while let Some((t, i, j)) = pairs.pop_first() {
        stats.pairs_considered += 1;
        let (li, lj) = (lead(&basis[i]), lead(&basis[j]));
        if li.is_coprime(lj) {
            stats.product_criterion += 1;
            continue;
        }
        if options.chain_criterion
            && (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && lead(&basis[k]).divides(&t)
                    && !pairs.contains(&pair_key(&basis, i, k))
                    && !pairs.contains(&pair_key(&basis, j, k))
            })
        {
            stats.chain_criterion += 1;
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]).expect("basis elements are nonzero");
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        let r = r.monic();
        if r.is_constant() {
            return (vec![r], stats);
        }
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pairs.insert(pair_key(&basis, k, n));
        }
    }
    if cfg!(debug_assertions) {
        debug_assert!(is_groebner_basis(&basis), "Buchberger postcondition");
    }
    (basis, stats)
}

fn lead(p: &Polynomial) -> &Monomial {
    p.leading_monomial().expect("nonzero")
}

fn lcm(basis: &[Polynomial], i: usize, j: usize) -> Monomial {
    lead(&basis[i]).lcm(lead(&basis[j]))
}

fn pair_key(basis: &[Polynomial], a: usize, b: usize) -> (Monomial, usize, usize) {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    (lcm(basis, i, j), i, j)
}

/// Every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    first_failing_pair(basis).is_none()
}

fn first_failing_pair(basis: &[Polynomial]) -> Option<Polynomial> {
    for j in 0..basis.len() {
        for i in 0..j {
            if lead(&basis[i]).is_coprime(lead(&basis[j])) {
                continue;
            }
            let s = s_polynomial(&basis[i], &basis[j]).expect("nonzero");
            let r = normal_form(&s, basis);
            if !r.is_zero() {
                return Some(r);
            }
        }
    }
    None
}

/// The unique reduced Gröbner basis: monic, inter-reduced, sorted ascending
/// by leading monomial.
pub fn reduce_basis(basis: &[Polynomial]) -> Result<Vec<Polynomial>, GroebnerError> {
    let basis: Vec<Polynomial> = basis.iter().filter(|p| !p.is_zero()).map(Polynomial::monic).collect();
    if let Some(witness) = first_failing_pair(&basis) {
        return Err(GroebnerError::NotAGroebnerBasis(Box::new(witness)));
    }
    Ok(reduce_unchecked(basis))
}

pub(crate) fn reduce_unchecked(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // minimal basis: drop elements whose leading monomial is a multiple of another's
    basis.sort_by(|a, b| lead(a).cmp(lead(b)));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in basis {
        if !minimal.iter().any(|q| lead(q).divides(lead(&p))) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p.clone())
            .collect();
        let (head, tail) = minimal[k].split_lead();
        let tail = normal_form(&tail, &others);
        reduced.push(
            head.add_scaled(&tail, &head.leading_coefficient().unwrap().field().one())
                .monic(),
        );
    }
    reduced.sort_by(|a, b| lead(a).cmp(lead(b)));
    reduced
}
