//! Square roots and the roots of `t² + t + δ`, with one-step quadratic
//! extension when the base field has no root.

use std::fmt;

use super::{BaseValue, Field, FieldElement, FieldError, Value};

/// Monic `t² + c1·t + c0` over a depth-0 field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticMinpoly {
    pub c0: FieldElement,
    pub c1: FieldElement,
}

impl QuadraticMinpoly {
    pub fn discriminant(&self) -> FieldElement {
        let four = self.c0.field().from_i64(4);
        &(&self.c1 * &self.c1) - &(&four * &self.c0)
    }

    pub fn has_root(&self) -> bool {
        self.discriminant().sqrt().is_some()
    }

    /// The field obtained by adjoining a root θ; fails if the base is
    /// already an extension.
    pub fn extension_field(&self) -> Result<Field, FieldError> {
        let base = self.c0.field();
        if base.is_extension() {
            return Err(FieldError::ExtensionDepthExceeded {
                minpoly: self.to_string(),
            });
        }
        Field::quadratic_extension(
            base.base_field(),
            self.c0.base_value().cloned().expect("depth-0 element"),
            self.c1.base_value().cloned().expect("depth-0 element"),
        )
    }

    /// `(K(θ), θ, −c1 − θ)`.
    pub fn roots_in_extension(&self) -> Result<(Field, FieldElement, FieldElement), FieldError> {
        let ext = self.extension_field()?;
        let theta = ext.theta().expect("extension has a generator");
        let other = &(-&ext.embed(&self.c1)?) - &theta;
        Ok((ext, theta, other))
    }
}

impl fmt::Display for QuadraticMinpoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^2")?;
        if !self.c1.is_zero() {
            if self.c1.is_one() {
                write!(f, " + t")?;
            } else {
                write!(f, " + ({})*t", self.c1)?;
            }
        }
        if !self.c0.is_zero() {
            write!(f, " + ({})", self.c0)?;
        }
        Ok(())
    }
}

/// Outcome of solving `t² + t + δ = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootReport {
    /// Distinct roots `b ≠ c` with `b + c = −1`, `b·c = δ`.
    TwoRoots(FieldElement, FieldElement),
    /// `δ = 1/4`, root `−1/2`.
    DoubleRoot(FieldElement),
    NeedsExtension(QuadraticMinpoly),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SqrtReport {
    Root(FieldElement),
    /// `t² − s`
    NeedsExtension(QuadraticMinpoly),
}

/// Roots of `t² + t + δ`. The first root is `(−1 + √(1 − 4δ))/2` for the
/// deterministic square root of [`FieldElement::sqrt`].
pub fn quadratic_roots(delta: &FieldElement) -> Result<RootReport, FieldError> {
    let k = delta.field();
    let disc = &k.one() - &(&k.from_i64(4) * delta);
    let half = k.from_i64(2).inv()?;
    if disc.is_zero() {
        return Ok(RootReport::DoubleRoot(-&half));
    }
    match disc.sqrt() {
        Some(s) => {
            let b = &(&s - &k.one()) * &half;
            let c = &(-&s - &k.one()) * &half;
            Ok(RootReport::TwoRoots(b, c))
        }
        None => {
            let minpoly = QuadraticMinpoly {
                c0: delta.clone(),
                c1: k.one(),
            };
            if k.is_extension() {
                return Err(FieldError::ExtensionDepthExceeded {
                    minpoly: minpoly.to_string(),
                });
            }
            Ok(RootReport::NeedsExtension(minpoly))
        }
    }
}

/// `c` with `c² = s`, or the polynomial `t² − s` to adjoin.
pub fn sqrt_or_extend(s: &FieldElement) -> Result<SqrtReport, FieldError> {
    if s.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    if let Some(c) = s.sqrt() {
        return Ok(SqrtReport::Root(c));
    }
    let k = s.field();
    let minpoly = QuadraticMinpoly { c0: -s, c1: k.zero() };
    if k.is_extension() {
        return Err(FieldError::ExtensionDepthExceeded {
            minpoly: minpoly.to_string(),
        });
    }
    Ok(SqrtReport::NeedsExtension(minpoly))
}

impl FieldElement {
    /// A square root in the element's own field, if one exists.
    pub fn sqrt(&self) -> Option<FieldElement> {
        let field = self.field.clone();
        match &self.value {
            Value::Base(v) => field.base_field().sqrt(v).map(|r| field.wrap(Value::Base(r))),
            Value::Quad(a, b) => {
                // Work in the basis 1, √D with D = c1² − 4c0 and θ = (√D − c1)/2.
                let (k, c0, c1) = field.quad_params();
                let k = k.clone();
                let two = k.from_i64(2);
                let half = k.inv(&two)?;
                let d = k.sub(&k.mul(c1, c1), &k.mul(&k.from_i64(4), c0));
                let u = k.sub(a, &k.mul(&k.mul(b, c1), &half));
                let v = k.mul(b, &half);
                // x0 + y0·√D  ↦  (x0 + y0·c1) + 2·y0·θ
                let back = |x0: BaseValue, y0: BaseValue| {
                    let re = k.add(&x0, &k.mul(&y0, c1));
                    let im = k.mul(&two, &y0);
                    field.wrap(Value::Quad(re, im))
                };
                if k.is_zero(&v) {
                    if let Some(r) = k.sqrt(&u) {
                        return Some(back(r, k.zero()));
                    }
                    let r = k.sqrt(&k.mul(&u, &k.inv(&d)?))?;
                    return Some(back(k.zero(), r));
                }
                let norm = k.sub(&k.mul(&u, &u), &k.mul(&d, &k.mul(&v, &v)));
                let n = k.sqrt(&norm)?;
                for cand in [k.add(&u, &n), k.sub(&u, &n)] {
                    let x2 = k.mul(&cand, &half);
                    if k.is_zero(&x2) {
                        continue;
                    }
                    if let Some(x0) = k.sqrt(&x2) {
                        let y0 = k.mul(&v, &k.inv(&k.mul(&two, &x0))?);
                        return Some(back(x0, y0));
                    }
                }
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> FieldElement {
        Field::rationals().parse_element(s).unwrap()
    }

    #[test]
    fn roots_split() {
        assert_eq!(
            quadratic_roots(&q("-2")).unwrap(),
            RootReport::TwoRoots(q("1"), q("-2"))
        );
        assert_eq!(quadratic_roots(&q("1/4")).unwrap(), RootReport::DoubleRoot(q("-1/2")));
    }

    #[test]
    fn roots_need_extension() {
        let RootReport::NeedsExtension(m) = quadratic_roots(&q("1")).unwrap() else {
            panic!("expected extension");
        };
        assert_eq!(m.to_string(), "t^2 + t + (1)");
        // −3 is negative, hence not a rational square
        assert_eq!(m.discriminant(), q("-3"));
        assert!(!m.has_root());
        let (ext, r1, r2) = m.roots_in_extension().unwrap();
        for r in [r1, r2] {
            assert!((&(&r * &r) + &(&r + &ext.one())).is_zero());
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_or_extend(&q("9/4")).unwrap(), SqrtReport::Root(q("3/2")));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(
            sqrt_or_extend(&f7.from_i64(2)).unwrap(),
            SqrtReport::Root(f7.from_i64(3))
        );
        let SqrtReport::NeedsExtension(m) = sqrt_or_extend(&q("2")).unwrap() else {
            panic!()
        };
        assert_eq!(m.c0, q("-2"));
        assert_eq!(sqrt_or_extend(&q("0")), Err(FieldError::ZeroInput));
    }

    #[test]
    fn extension_square_roots() {
        let k: Field = "QuadExt:Q:-2,0".parse().unwrap(); // θ = √2
        let t = k.theta().unwrap();
        for x in ["[3, 0]", "[2, 0]", "[0, 1]", "[3, 2]", "[1, 5]", "[-7, 4]"] {
            let x = k.parse_element(x).unwrap();
            let sq = &x * &x;
            let r = sq.sqrt().expect("square has a root");
            assert_eq!(&r * &r, sq);
        }
        assert!(t.sqrt().is_none()); // √2 is not a square in ℚ(√2)
        let f: Field = "QuadExt:Fp:7:1,0".parse().unwrap();
        // every element of 𝔽_7 is a square in 𝔽_49
        for n in 1..7 {
            let r = f.from_i64(n).sqrt().unwrap();
            assert_eq!(&r * &r, f.from_i64(n));
        }
    }
}
