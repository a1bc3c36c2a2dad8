//! Exact scalar arithmetic.
//!
//! Three kinds of scalars are supported: the rationals, prime fields `F_p`
//! with `p` odd, and the truncated power series ring `Q[[h]]/(h^N)`. A
//! [`ScalarField`] describes which ring a [`Scalar`] lives in; mixing
//! scalars from different rings (including two series rings of different
//! precision) is an error.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

/// Arbitrary precision rational number.
pub type Q = BigRational;

/// Shorthand for building a rational from two machine integers.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("operands live in different scalar fields ({0} vs {1})")]
    FieldMismatch(ScalarField, ScalarField),
    #[error("division by a non-invertible element")]
    NotInvertible,
    #[error("{0} is not an odd prime")]
    BadModulus(u64),
    #[error("series precision must be at least 1")]
    ZeroPrecision,
    #[error("exponential is only defined for series with zero constant term")]
    NonzeroConstantTerm,
    #[error("numerator valuation {num} is below denominator valuation {den}")]
    ValuationMismatch { num: usize, den: usize },
    #[error("division by the zero series")]
    ZeroDivisor,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// The ring a scalar belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarField {
    Rationals,
    PrimeField(u64),
    /// `Q[[h]]/(h^N)`; the payload is `N`.
    TruncSeries(usize),
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rationals => write!(f, "q"),
            ScalarField::PrimeField(p) => write!(f, "fp:{p}"),
            ScalarField::TruncSeries(n) => write!(f, "series:{n}"),
        }
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl ScalarField {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_odd_prime(p) {
            Ok(ScalarField::PrimeField(p))
        } else {
            Err(ScalarError::BadModulus(p))
        }
    }

    pub fn series(precision: usize) -> Result<Self, ScalarError> {
        if precision == 0 {
            Err(ScalarError::ZeroPrecision)
        } else {
            Ok(ScalarField::TruncSeries(precision))
        }
    }

    /// Parses `q`, `fp:P` or `series:N`.
    pub fn parse(s: &str) -> Result<Self, ScalarError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(ScalarField::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
            return ScalarField::prime(p);
        }
        if let Some(n) = s.strip_prefix("series:") {
            let n: usize = n.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
            return ScalarField::series(n);
        }
        Err(ScalarError::Parse(s.to_string()))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            ScalarField::Rationals => Scalar::Q(Q::from_integer(BigInt::from(v))),
            ScalarField::PrimeField(p) => Scalar::Fp(Fp::new(v.rem_euclid(p as i64) as u64, p)),
            ScalarField::TruncSeries(n) => {
                Scalar::Series(TruncSeries::constant(Q::from_integer(BigInt::from(v)), n))
            }
        }
    }

    /// Image of a rational number; fails in `F_p` when `p` divides the denominator.
    pub fn from_q(&self, v: &Q) -> Result<Scalar, ScalarError> {
        match *self {
            ScalarField::Rationals => Ok(Scalar::Q(v.clone())),
            ScalarField::PrimeField(p) => Ok(Scalar::Fp(Fp::from_q(v, p)?)),
            ScalarField::TruncSeries(n) => Ok(Scalar::Series(TruncSeries::constant(v.clone(), n))),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }

    /// Parses a scalar written as text: `p/q` for rationals, an integer (or
    /// a rational, reduced mod `p`) for prime fields, and a polynomial in
    /// `h` such as `1+2h-1/3h^2` for series.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, ScalarError> {
        match *self {
            ScalarField::TruncSeries(n) => Ok(Scalar::Series(TruncSeries::parse(s, n)?)),
            _ => self.from_q(&parse_rational(s)?),
        }
    }

    /// JSON encoding: rationals as `"p/q"` strings, prime-field elements as
    /// integers in `[0,p)`, series as arrays of rational strings.
    pub fn scalar_to_json(&self, s: &Scalar) -> Value {
        match s {
            Scalar::Q(v) => Value::String(v.to_string()),
            Scalar::Fp(v) => Value::from(v.value),
            Scalar::Series(t) => {
                Value::Array(t.coeffs.iter().map(|c| Value::String(c.to_string())).collect())
            }
        }
    }

    pub fn scalar_from_json(&self, v: &Value) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::Parse(v.to_string());
        match (*self, v) {
            (ScalarField::TruncSeries(n), Value::Array(items)) => {
                if items.len() != n {
                    return Err(bad());
                }
                let coeffs = items
                    .iter()
                    .map(|c| match c {
                        Value::String(s) => parse_rational(s),
                        Value::Number(x) => parse_rational(&x.to_string()),
                        _ => Err(bad()),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Scalar::Series(TruncSeries::new(coeffs)?))
            }
            (ScalarField::PrimeField(p), Value::Number(x)) => {
                let x = x.as_u64().ok_or_else(bad)?;
                if x >= p {
                    return Err(bad());
                }
                Ok(Scalar::Fp(Fp::new(x, p)))
            }
            (ScalarField::TruncSeries(_), Value::String(s)) => self.parse_scalar(s),
            (_, Value::String(s)) => self.parse_scalar(s),
            (_, Value::Number(x)) => self.parse_scalar(&x.to_string()),
            _ => Err(bad()),
        }
    }
}

/// Parses `a`, `-a` or `a/b` with integer `a`, `b`.
pub fn parse_rational(s: &str) -> Result<Q, ScalarError> {
    let s = s.trim();
    let err = || ScalarError::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Q::new(num, den))
}

/// Element of `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp { value: value % modulus, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn from_q(v: &Q, p: u64) -> Result<Self, ScalarError> {
        let pb = BigInt::from(p);
        let reduce = |x: &BigInt| x.mod_floor(&pb).to_u64().expect("residue fits in u64");
        let num = Fp::new(reduce(v.numer()), p);
        let den = Fp::new(reduce(v.denom()), p);
        Ok(num.mul(den.inv()?))
    }

    fn add(self, o: Fp) -> Fp {
        Fp::new(((self.value as u128 + o.value as u128) % self.modulus as u128) as u64, self.modulus)
    }

    fn neg(self) -> Fp {
        Fp::new((self.modulus - self.value) % self.modulus, self.modulus)
    }

    fn mul(self, o: Fp) -> Fp {
        Fp::new(((self.value as u128 * o.value as u128) % self.modulus as u128) as u64, self.modulus)
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<Fp, ScalarError> {
        if self.value == 0 {
            Err(ScalarError::NotInvertible)
        } else {
            Ok(self.pow(self.modulus - 2))
        }
    }
}

/// Element of `Q[[h]]/(h^N)`, stored as the coefficients of `h^0 .. h^{N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Q>,
}

impl TruncSeries {
    pub fn new(coeffs: Vec<Q>) -> Result<Self, ScalarError> {
        if coeffs.is_empty() {
            return Err(ScalarError::ZeroPrecision);
        }
        Ok(TruncSeries { coeffs })
    }

    pub fn zero(precision: usize) -> Self {
        TruncSeries { coeffs: vec![Q::zero(); precision.max(1)] }
    }

    pub fn one(precision: usize) -> Self {
        Self::constant(Q::one(), precision)
    }

    pub fn constant(c: Q, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        s.coeffs[0] = c;
        s
    }

    /// `c h^k`, which is zero when `k >= precision`.
    pub fn monomial(c: Q, k: usize, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        if k < s.coeffs.len() {
            s.coeffs[k] = c;
        }
        s
    }

    /// The formal variable `h` itself.
    pub fn h(precision: usize) -> Self {
        Self::monomial(Q::one(), 1, precision)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Q {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// h-adic valuation; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    fn same_precision(&self, o: &Self) -> Result<(), ScalarError> {
        if self.precision() == o.precision() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(
                ScalarField::TruncSeries(self.precision()),
                ScalarField::TruncSeries(o.precision()),
            ))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ScalarError> {
        self.same_precision(o)?;
        Ok(TruncSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ScalarError> {
        self.same_precision(o)?;
        Ok(TruncSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ScalarError> {
        self.same_precision(o)?;
        let n = self.precision();
        let mut out = vec![Q::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by `h` (the top coefficient falls off).
    pub fn mul_h(&self) -> Self {
        let n = self.precision();
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(Q::zero());
        coeffs.extend(self.coeffs[..n - 1].iter().cloned());
        TruncSeries { coeffs }
    }

    /// Keeps the first `precision` coefficients.
    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision >= 1 && precision <= self.precision(), "truncation must lower precision");
        TruncSeries { coeffs: self.coeffs[..precision].to_vec() }
    }

    /// Raises the precision by appending zero coefficients. Only meaningful
    /// when the caller knows the higher coefficients vanish (e.g. for exact
    /// polynomial data).
    pub fn pad_to(&self, precision: usize) -> Self {
        assert!(precision >= self.precision(), "padding must raise precision");
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(precision, Q::zero());
        TruncSeries { coeffs }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if !self.is_unit() {
            return Err(ScalarError::NotInvertible);
        }
        let n = self.precision();
        let c0_inv = self.coeffs[0].recip();
        let mut out = vec![Q::zero(); n];
        out[0] = c0_inv.clone();
        for k in 1..n {
            let mut acc = Q::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(acc * &c0_inv);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `sum_{k<N} x^k / k!` for `x` with zero constant term.
    pub fn exp(&self) -> Result<Self, ScalarError> {
        if !self.coeffs[0].is_zero() {
            return Err(ScalarError::NonzeroConstantTerm);
        }
        let n = self.precision();
        let mut sum = Self::one(n);
        let mut term = Self::one(n);
        for k in 1..n {
            term = term.checked_mul(self)?.scale(&q(1, k as i64));
            if term.is_zero() {
                break;
            }
            sum = sum.checked_add(&term)?;
        }
        Ok(sum)
    }

    /// Exact quotient `self / den` when `val(self) >= val(den)`. The result
    /// has precision `N - val(den)`: the dropped coefficients are not
    /// determined by the inputs.
    pub fn div_exact(&self, den: &Self) -> Result<Self, ScalarError> {
        self.same_precision(den)?;
        let v = den.valuation().ok_or(ScalarError::ZeroDivisor)?;
        if let Some(vn) = self.valuation() {
            if vn < v {
                return Err(ScalarError::ValuationMismatch { num: vn, den: v });
            }
        }
        let num = TruncSeries { coeffs: self.coeffs[v..].to_vec() };
        let den = TruncSeries { coeffs: den.coeffs[v..].to_vec() };
        num.checked_mul(&den.inv()?)
    }

    /// Parses a polynomial in `h` with rational coefficients, e.g.
    /// `1+2h`, `-h^2/3`, `1/2 - 3/4h^3`. Terms of degree `>= precision` are
    /// dropped.
    pub fn parse(s: &str, precision: usize) -> Result<Self, ScalarError> {
        if precision == 0 {
            return Err(ScalarError::ZeroPrecision);
        }
        let err = || ScalarError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut out = Self::zero(precision);
        // split into signed terms
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coef, degree) = match body.find('h') {
                None => (parse_rational(body).map_err(|_| err())?, 0usize),
                Some(pos) => {
                    let (c, rest) = body.split_at(pos);
                    let rest = &rest[1..];
                    // allow `h^2/3` style trailing divisor
                    let (deg_part, divisor) = match rest.split_once('/') {
                        Some((d, div)) => (d, Some(div)),
                        None => (rest, None),
                    };
                    let degree = if deg_part.is_empty() {
                        1
                    } else {
                        deg_part.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                    };
                    let c = c.trim_end_matches('*');
                    let mut coef = if c.is_empty() { Q::one() } else { parse_rational(c).map_err(|_| err())? };
                    if let Some(div) = divisor {
                        let d = parse_rational(div).map_err(|_| err())?;
                        if d.is_zero() {
                            return Err(err());
                        }
                        coef /= d;
                    }
                    (coef, degree)
                }
            };
            if degree < precision {
                out.coeffs[degree] += coef * Q::from_integer(BigInt::from(sign));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "h")?;
                    } else {
                        write!(f, "h^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A scalar from one of the supported rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Q),
    Fp(Fp),
    Series(TruncSeries),
}

impl Scalar {
    pub fn field(&self) -> ScalarField {
        match self {
            Scalar::Q(_) => ScalarField::Rationals,
            Scalar::Fp(x) => ScalarField::PrimeField(x.modulus),
            Scalar::Series(s) => ScalarField::TruncSeries(s.precision()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_zero(),
            Scalar::Fp(x) => x.value == 0,
            Scalar::Series(s) => s.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_one(),
            Scalar::Fp(x) => x.value == 1,
            Scalar::Series(s) => s.coeffs[0].is_one() && s.coeffs[1..].iter().all(Zero::is_zero),
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Series(s) => s.is_unit(),
            other => !other.is_zero(),
        }
    }

    fn mismatch(&self, o: &Scalar) -> ScalarError {
        ScalarError::FieldMismatch(self.field(), o.field())
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a + b)),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.modulus == b.modulus => Ok(Scalar::Fp(a.add(*b))),
            (Scalar::Series(a), Scalar::Series(b)) => Ok(Scalar::Series(a.checked_add(b)?)),
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn checked_sub(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a * b)),
            (Scalar::Fp(a), Scalar::Fp(b)) if a.modulus == b.modulus => Ok(Scalar::Fp(a.mul(*b))),
            (Scalar::Series(a), Scalar::Series(b)) => Ok(Scalar::Series(a.checked_mul(b)?)),
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        if self.field() != o.field() {
            return Err(self.mismatch(o));
        }
        self.checked_mul(&o.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp(a) => Scalar::Fp(a.neg()),
            Scalar::Series(a) => Scalar::Series(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Q(a) if a.is_zero() => Err(ScalarError::NotInvertible),
            Scalar::Q(a) => Ok(Scalar::Q(a.recip())),
            Scalar::Fp(a) => Ok(Scalar::Fp(a.inv()?)),
            Scalar::Series(a) => Ok(Scalar::Series(a.inv()?)),
        }
    }

    pub fn as_series(&self) -> Option<&TruncSeries> {
        match self {
            Scalar::Series(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(a) => write!(f, "{a}"),
            Scalar::Fp(a) => write!(f, "{}", a.value),
            Scalar::Series(s) => write!(f, "{s}"),
        }
    }
}

// Operator forms panic on mismatched fields, like shape mismatches in
// array libraries. Use the `checked_*` methods on untrusted input.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.checked_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.checked_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.checked_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}
