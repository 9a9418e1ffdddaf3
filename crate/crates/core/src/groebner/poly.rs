use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{GroebnerError, Monomial};
use crate::fields::{Field, FieldElement};

/// Variables in decreasing order together with the coefficient field. The
/// monomial order is always grevlex on this variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Arc<[String]>,
    field: Field,
}

impl PolyRing {
    pub fn new<S: Into<String>>(field: &Field, vars: impl IntoIterator<Item = S>) -> Result<PolyRing, GroebnerError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(GroebnerError::InvalidVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(GroebnerError::DuplicateVariable(v.clone()));
            }
        }
        Ok(PolyRing {
            vars: vars.into(),
            field: field.clone(),
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, name: &str) -> Result<Polynomial, GroebnerError> {
        let i = self
            .var_index(name)
            .ok_or_else(|| GroebnerError::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::term(Monomial::var(self.nvars(), i), self.field.one()))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: FieldElement) -> Polynomial {
        Polynomial::term(Monomial::one(self.nvars()), c)
    }

    pub fn evaluate(&self, p: &Polynomial, point: &[FieldElement]) -> Result<FieldElement, GroebnerError> {
        if point.len() != self.nvars() || p.nvars() != self.nvars() {
            return Err(GroebnerError::LengthMismatch(self.nvars(), point.len()));
        }
        let mut acc = self.field.zero();
        for (m, c) in p.terms() {
            let mut v = self.field.embed(c)?;
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v = v.try_mul(&x.pow(u64::from(e)))?;
                }
            }
            acc = acc.try_add(&v)?;
        }
        Ok(acc)
    }

    /// The ring with `name` prepended as the new largest variable.
    pub fn with_leading_var(&self, name: &str) -> Result<PolyRing, GroebnerError> {
        PolyRing::new(
            &self.field,
            std::iter::once(name.to_string()).chain(self.vars.iter().cloned()),
        )
    }

    /// A variable name not used by this ring, starting from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.var_index(&name).is_some() {
            name.push('_');
        }
        name
    }
}

/// Sparse polynomial: terms sorted strictly descending in grevlex, no zero
/// coefficients. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, FieldElement)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn term(m: Monomial, c: FieldElement) -> Polynomial {
        let nvars = m.nvars();
        if c.is_zero() {
            return Polynomial::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Collects like terms and sorts; zero coefficients are dropped.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, FieldElement)>) -> Polynomial {
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial from another ring");
            match acc.get_mut(&m) {
                Some(existing) => *existing = &*existing + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c·m·self`; the order of terms is preserved by monomial multiplication.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// `self + c·other` by a sorted merge.
    pub fn add_scaled(&self, other: &Polynomial, c: &FieldElement) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let v = cb * c;
                    if !v.is_zero() {
                        out.push((mb.clone(), v));
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = ca + &(cb * c);
                    if !v.is_zero() {
                        out.push((ma.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, b)| (m.clone(), b * c))
                .filter(|(_, v)| !v.is_zero()),
        );
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(self.nvars, terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let one = match self.terms.first() {
            Some((_, c)) => Polynomial::term(Monomial::one(self.nvars), c.field().one()),
            None if e == 0 => panic!("0^0 of a polynomial without a known field"),
            None => return self.clone(),
        };
        (0..e).fold(one, |acc, _| acc.mul(self))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Whether no variable outside `allowed` occurs.
    pub fn uses_only(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.terms.iter().all(|(m, _)| m.support().all(&allowed))
    }

    pub(crate) fn shifted(&self, extra: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, c)| (m.shifted(extra), c.clone())).collect(),
        }
    }

    pub(crate) fn unshifted(&self, count: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars - count,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.unshifted(count), c.clone()))
                .collect(),
        }
    }

    /// Re-encodes coefficients into `target`, which must contain their field.
    pub fn embed(&self, target: &Field) -> Result<Polynomial, GroebnerError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), target.embed(c)?)))
            .collect::<Result<_, GroebnerError>>()?;
        Ok(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// Exact quotient `self / divisor`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, GroebnerError> {
        let (lm, lc) = match divisor.terms.first() {
            Some((m, c)) => (m, c.inv()?),
            None => return Err(GroebnerError::ZeroPolynomial),
        };
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            if !lm.divides(&m) {
                return Err(GroebnerError::InexactDivision);
            }
            let qm = lm.quotient_of(&m);
            let qc = &c * &lc;
            rest = rest.add_scaled(&divisor.mul_term(&qm, &qc), &-qc.field().one());
            quotient.push((qm, qc));
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms: quotient,
        })
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Polynomial {
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Monomial, FieldElement)>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Polynomial { nvars, terms }
    }

    pub(crate) fn from_sorted_tail(p: &Polynomial, skip: usize) -> Polynomial {
        Polynomial::from_sorted(p.nvars(), p.terms()[skip..].to_vec())
    }

    /// Leading term and the remaining terms.
    pub(crate) fn split_lead(&self) -> (Polynomial, Polynomial) {
        let head = Polynomial::from_sorted(self.nvars(), self.terms()[..1].to_vec());
        (head, Polynomial::from_sorted_tail(self, 1))
    }
}
