//! Exact scalars: the rationals, prime fields of odd characteristic and a
//! single quadratic extension of either.
//!
//! Every [`FieldElement`] carries a handle to its [`Field`]. Mixing elements
//! of two different fields is a checked error on the `try_*` methods and a
//! panic on the operator impls.

mod base;
mod roots;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use base::{BaseField, BaseValue};
pub use roots::{quadratic_roots, sqrt_or_extend, QuadraticMinpoly, RootReport, SqrtReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("cannot parse field element {text:?} over {field}: {reason}")]
    Parse {
        text: String,
        field: String,
        reason: String,
    },
    #[error("square root of zero requested")]
    ZeroInput,
    #[error("a second quadratic extension would be needed (minimal polynomial {minpoly})")]
    ExtensionDepthExceeded { minpoly: String },
    #[error("element {0} does not lie in the base field")]
    NotInBase(String),
}

/// Descriptor of a coefficient field. Towers have depth at most one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField(u64),
    /// `base(θ)` with `θ² + c1·θ + c0 = 0`.
    QuadExt {
        base: BaseField,
        c0: BaseValue,
        c1: BaseValue,
    },
}

/// Shared handle on a validated [`FieldDescriptor`].
#[derive(Clone)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "Fp:{p}"),
            FieldDescriptor::QuadExt { base, c0, c1 } => {
                write!(f, "QuadExt:{}:{},{}", base, base.encode(c0), base.encode(c1))
            }
        }
    }
}

impl std::str::FromStr for Field {
    type Err = FieldError;

    /// Accepts `Q`, `Fp:<p>` and `QuadExt:<base>:<c0>,<c1>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("QuadExt:") {
            let (base_text, coeffs) = rest
                .rsplit_once(':')
                .ok_or_else(|| FieldError::InvalidDescriptor(s.to_string()))?;
            let base = BaseField::parse(base_text)?;
            let (c0, c1) = coeffs
                .split_once(',')
                .ok_or_else(|| FieldError::InvalidDescriptor(s.to_string()))?;
            let c0 = base.decode(c0.trim())?;
            let c1 = base.decode(c1.trim())?;
            return Field::quadratic_extension(base, c0, c1);
        }
        match BaseField::parse(s)? {
            BaseField::Rationals => Ok(Field::rationals()),
            BaseField::Prime(p) => Field::prime(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Base(BaseValue),
    /// `a + b·θ`
    Quad(BaseValue, BaseValue),
}

/// An exact scalar tagged with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldDescriptor::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        BaseField::prime(p)?;
        Ok(Field(Arc::new(FieldDescriptor::PrimeField(p))))
    }

    /// `base(θ)` with `θ² + c1·θ + c0 = 0`; the polynomial must be irreducible.
    pub fn quadratic_extension(base: BaseField, c0: BaseValue, c1: BaseValue) -> Result<Field, FieldError> {
        let disc = base.sub(&base.mul(&c1, &c1), &base.mul(&base.from_i64(4), &c0));
        if base.sqrt(&disc).is_some() {
            return Err(FieldError::InvalidDescriptor(format!(
                "t^2 + {}*t + {} is reducible over {}",
                base.encode(&c1),
                base.encode(&c0),
                base
            )));
        }
        Ok(Field(Arc::new(FieldDescriptor::QuadExt { base, c0, c1 })))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    /// The depth-0 field underneath (itself for depth 0).
    pub fn base_field(&self) -> BaseField {
        match &*self.0 {
            FieldDescriptor::Rationals => BaseField::Rationals,
            FieldDescriptor::PrimeField(p) => BaseField::Prime(*p),
            FieldDescriptor::QuadExt { base, .. } => base.clone(),
        }
    }

    pub fn base(&self) -> Field {
        match &*self.0 {
            FieldDescriptor::QuadExt { base, .. } => Field::from_base(base.clone()),
            _ => self.clone(),
        }
    }

    pub(crate) fn from_base(base: BaseField) -> Field {
        match base {
            BaseField::Rationals => Field::rationals(),
            BaseField::Prime(p) => Field(Arc::new(FieldDescriptor::PrimeField(p))),
        }
    }

    pub fn is_extension(&self) -> bool {
        matches!(&*self.0, FieldDescriptor::QuadExt { .. })
    }

    /// 0 for ℚ, p for 𝔽_p and extensions of it.
    pub fn characteristic(&self) -> u64 {
        match self.base_field() {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => p,
        }
    }

    fn wrap(&self, value: Value) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    pub(crate) fn from_base_value(&self, v: BaseValue) -> FieldElement {
        match &*self.0 {
            FieldDescriptor::QuadExt { base, .. } => self.wrap(Value::Quad(v, base.zero())),
            _ => self.wrap(Value::Base(v)),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_base_value(self.base_field().zero())
    }

    pub fn one(&self) -> FieldElement {
        self.from_base_value(self.base_field().one())
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_base_value(self.base_field().from_i64(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        self.from_base_value(self.base_field().from_bigint(n))
    }

    /// `num / den`; fails if `den` vanishes in the field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement, FieldError> {
        let r = BigRational::new_raw(BigInt::from(num), BigInt::from(den));
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.from_base_value(self.base_field().from_rational(&r)?))
    }

    /// The generator θ of a quadratic extension.
    pub fn theta(&self) -> Option<FieldElement> {
        match &*self.0 {
            FieldDescriptor::QuadExt { base, .. } => Some(self.wrap(Value::Quad(base.zero(), base.one()))),
            _ => None,
        }
    }

    /// `a + b·θ` in an extension field.
    pub fn pair(&self, a: BaseValue, b: BaseValue) -> Result<FieldElement, FieldError> {
        match &*self.0 {
            FieldDescriptor::QuadExt { .. } => Ok(self.wrap(Value::Quad(a, b))),
            _ => Err(FieldError::InvalidDescriptor(format!(
                "{self} is not a quadratic extension"
            ))),
        }
    }

    /// Parses the canonical element encoding: an integer, `a/b`, or `[a, b]`
    /// for `a + b·θ` in an extension.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement, FieldError> {
        let t = text.trim();
        let err = |reason: &str| FieldError::Parse {
            text: text.to_string(),
            field: self.to_string(),
            reason: reason.to_string(),
        };
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| err("missing ']'"))?;
            let FieldDescriptor::QuadExt { base, .. } = &*self.0 else {
                return Err(err("pair encoding requires a quadratic extension"));
            };
            let (a, b) = inner.split_once(',').ok_or_else(|| err("expected two components"))?;
            let a = base.decode(a.trim()).map_err(|e| err(&e.to_string()))?;
            let b = base.decode(b.trim()).map_err(|e| err(&e.to_string()))?;
            return Ok(self.wrap(Value::Quad(a, b)));
        }
        let v = self.base_field().decode(t).map_err(|e| err(&e.to_string()))?;
        Ok(self.from_base_value(v))
    }

    /// Maps an element of this field's base into this field.
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if &x.field == self {
            return Ok(x.clone());
        }
        match (&x.value, self.is_extension()) {
            (Value::Base(v), true) if x.field == self.base() => Ok(self.from_base_value(v.clone())),
            _ => Err(FieldError::DescriptorMismatch {
                left: x.field.to_string(),
                right: self.to_string(),
            }),
        }
    }

    /// Inverse of [`Field::embed`]: succeeds when `x` lies in the base.
    pub fn restrict_to_base(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        let base = self.base();
        match &x.value {
            Value::Base(v) => Ok(base.from_base_value(v.clone())),
            Value::Quad(a, b) if self.base_field().is_zero(b) => Ok(base.from_base_value(a.clone())),
            Value::Quad(..) => Err(FieldError::NotInBase(x.to_string())),
        }
    }

    fn quad_params(&self) -> (&BaseField, &BaseValue, &BaseValue) {
        match &*self.0 {
            FieldDescriptor::QuadExt { base, c0, c1 } => (base, c0, c1),
            _ => unreachable!("quad payload outside an extension"),
        }
    }

    fn add_values(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Base(x), Value::Base(y)) => Value::Base(self.base_field().add(x, y)),
            (Value::Quad(a0, a1), Value::Quad(b0, b1)) => {
                let (k, ..) = self.quad_params();
                Value::Quad(k.add(a0, b0), k.add(a1, b1))
            }
            _ => unreachable!("mixed payloads"),
        }
    }

    fn neg_value(&self, a: &Value) -> Value {
        match a {
            Value::Base(x) => Value::Base(self.base_field().neg(x)),
            Value::Quad(a0, a1) => {
                let (k, ..) = self.quad_params();
                Value::Quad(k.neg(a0), k.neg(a1))
            }
        }
    }

    fn mul_values(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Base(x), Value::Base(y)) => Value::Base(self.base_field().mul(x, y)),
            (Value::Quad(a0, a1), Value::Quad(b0, b1)) => {
                // θ² = −c1·θ − c0
                let (k, c0, c1) = self.quad_params();
                let bd = k.mul(a1, b1);
                let re = k.sub(&k.mul(a0, b0), &k.mul(&bd, c0));
                let im = k.sub(&k.add(&k.mul(a0, b1), &k.mul(a1, b0)), &k.mul(&bd, c1));
                Value::Quad(re, im)
            }
            _ => unreachable!("mixed payloads"),
        }
    }

    fn inv_value(&self, a: &Value) -> Option<Value> {
        match a {
            Value::Base(x) => self.base_field().inv(x).map(Value::Base),
            Value::Quad(a0, a1) => {
                // (a + bθ)(a − b·c1 − bθ) = a² − a·b·c1 + b²·c0
                let (k, c0, c1) = self.quad_params();
                let norm = k.add(
                    &k.sub(&k.mul(a0, a0), &k.mul(&k.mul(a0, a1), c1)),
                    &k.mul(&k.mul(a1, a1), c0),
                );
                let ninv = k.inv(&norm)?;
                let re = k.mul(&k.sub(a0, &k.mul(a1, c1)), &ninv);
                let im = k.neg(&k.mul(a1, &ninv));
                Some(Value::Quad(re, im))
            }
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        let k = self.field.base_field();
        match &self.value {
            Value::Base(v) => k.is_zero(v),
            Value::Quad(a, b) => k.is_zero(a) && k.is_zero(b),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.add_values(&self.value, &other.value)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let neg = self.field.neg_value(&other.value);
        Ok(self.field.wrap(self.field.add_values(&self.value, &neg)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.mul_values(&self.value, &other.value)))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(self.field.wrap(self.field.mul_values(&self.value, &inv.value)))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        self.field
            .inv_value(&self.value)
            .map(|v| self.field.wrap(v))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The base-field payload when the element lies in the depth-0 field.
    pub fn base_value(&self) -> Option<&BaseValue> {
        match &self.value {
            Value::Base(v) => Some(v),
            Value::Quad(a, b) if self.field.base_field().is_zero(b) => Some(a),
            Value::Quad(..) => None,
        }
    }

    /// Components `(a, b)` of `a + b·θ`; `None` outside an extension.
    pub fn components(&self) -> Option<(&BaseValue, &BaseValue)> {
        match &self.value {
            Value::Quad(a, b) => Some((a, b)),
            Value::Base(_) => None,
        }
    }

    /// Exact rational value, for elements of ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Base(BaseValue::Rat(r)) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.field.base_field();
        match &self.value {
            Value::Base(v) => f.write_str(&k.encode(v)),
            Value::Quad(a, b) => write!(f, "[{}, {}]", k.encode(a), k.encode(b)),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.wrap(self.field.neg_value(&self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
