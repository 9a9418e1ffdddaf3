use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FieldError;

/// A depth-0 field: ℚ or 𝔽_p with p an odd prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

/// Payload of a depth-0 element. Fractions are kept in lowest terms with a
/// positive denominator; residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseValue {
    Rat(BigRational),
    Mod(u64),
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Tonelli–Shanks; `a` must be a nonzero quadratic residue.
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

impl BaseField {
    pub fn prime(p: u64) -> Result<BaseField, FieldError> {
        if p == 2 {
            return Err(FieldError::InvalidDescriptor(
                "characteristic 2 is not supported".into(),
            ));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::InvalidDescriptor(format!("{p} is not prime")));
        }
        Ok(BaseField::Prime(p))
    }

    pub fn parse(text: &str) -> Result<BaseField, FieldError> {
        match text.trim() {
            "Q" => Ok(BaseField::Rationals),
            t => {
                let p = t
                    .strip_prefix("Fp:")
                    .and_then(|p| p.trim().parse::<u64>().ok())
                    .ok_or_else(|| FieldError::InvalidDescriptor(t.to_string()))?;
                BaseField::prime(p)
            }
        }
    }

    pub fn zero(&self) -> BaseValue {
        self.from_i64(0)
    }

    pub fn one(&self) -> BaseValue {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> BaseValue {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> BaseValue {
        match self {
            BaseField::Rationals => BaseValue::Rat(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                BaseValue::Mod(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<BaseValue, FieldError> {
        match self {
            BaseField::Rationals => {
                if r.denom().is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(BaseValue::Rat(BigRational::new(r.numer().clone(), r.denom().clone())))
            }
            BaseField::Prime(_) => {
                let n = self.from_bigint(r.numer());
                let d = self.from_bigint(r.denom());
                let dinv = self.inv(&d).ok_or(FieldError::DivisionByZero)?;
                Ok(self.mul(&n, &dinv))
            }
        }
    }

    pub fn is_zero(&self, a: &BaseValue) -> bool {
        match a {
            BaseValue::Rat(r) => r.is_zero(),
            BaseValue::Mod(m) => *m == 0,
        }
    }

    pub fn add(&self, a: &BaseValue, b: &BaseValue) -> BaseValue {
        match (self, a, b) {
            (BaseField::Rationals, BaseValue::Rat(x), BaseValue::Rat(y)) => BaseValue::Rat(x + y),
            (BaseField::Prime(p), BaseValue::Mod(x), BaseValue::Mod(y)) => {
                BaseValue::Mod(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => unreachable!("payload does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &BaseValue) -> BaseValue {
        match (self, a) {
            (BaseField::Rationals, BaseValue::Rat(x)) => BaseValue::Rat(-x),
            (BaseField::Prime(p), BaseValue::Mod(x)) => BaseValue::Mod(if *x == 0 { 0 } else { p - x }),
            _ => unreachable!("payload does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &BaseValue, b: &BaseValue) -> BaseValue {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &BaseValue, b: &BaseValue) -> BaseValue {
        match (self, a, b) {
            (BaseField::Rationals, BaseValue::Rat(x), BaseValue::Rat(y)) => BaseValue::Rat(x * y),
            (BaseField::Prime(p), BaseValue::Mod(x), BaseValue::Mod(y)) => BaseValue::Mod(mul_mod(*x, *y, *p)),
            _ => unreachable!("payload does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &BaseValue) -> Option<BaseValue> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (BaseField::Rationals, BaseValue::Rat(x)) => BaseValue::Rat(x.recip()),
            (BaseField::Prime(p), BaseValue::Mod(x)) => BaseValue::Mod(pow_mod(*x, p - 2, *p)),
            _ => unreachable!("payload does not belong to {self}"),
        })
    }

    /// A square root when one exists. Tie-break: the non-negative root over ℚ,
    /// the residue in `[0, p/2]` over 𝔽_p.
    pub fn sqrt(&self, a: &BaseValue) -> Option<BaseValue> {
        match (self, a) {
            (BaseField::Rationals, BaseValue::Rat(x)) => {
                if x.is_negative() {
                    return None;
                }
                let n = x.numer().sqrt();
                let d = x.denom().sqrt();
                if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
                    Some(BaseValue::Rat(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            (BaseField::Prime(p), BaseValue::Mod(x)) => {
                let p = *p;
                if *x == 0 {
                    return Some(BaseValue::Mod(0));
                }
                if pow_mod(*x, (p - 1) / 2, p) != 1 {
                    return None;
                }
                let r = tonelli_shanks(*x, p);
                Some(BaseValue::Mod(r.min(p - r)))
            }
            _ => unreachable!("payload does not belong to {self}"),
        }
    }

    pub fn encode(&self, a: &BaseValue) -> String {
        match a {
            BaseValue::Rat(r) if r.denom().is_one() => r.numer().to_string(),
            BaseValue::Rat(r) => format!("{}/{}", r.numer(), r.denom()),
            BaseValue::Mod(m) => m.to_string(),
        }
    }

    /// Integers and `a/b` fractions; over 𝔽_p a fraction means `a·b⁻¹`.
    pub fn decode(&self, text: &str) -> Result<BaseValue, FieldError> {
        let bad = |reason: &str| FieldError::Parse {
            text: text.to_string(),
            field: self.to_string(),
            reason: reason.to_string(),
        };
        let int = |s: &str| -> Result<BigInt, FieldError> {
            let s = s.trim();
            let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("expected an integer or a fraction a/b"));
            }
            s.parse::<BigInt>().map_err(|_| bad("malformed integer"))
        };
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (int(n)?, int(d)?),
            None => (int(text)?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        self.from_rational(&BigRational::new_raw(n, d))
            .map_err(|_| bad("denominator vanishes in this field"))
    }
}
