//! Fundamental discriminants and primitive ideals of real quadratic orders.
//!
//! A primitive ideal of norm `a` is stored as the pair `(a, b)` with
//! `0 <= b < 2a` and `4a | b^2 - d`. Its basis is `[a, (b - sqrt d)/2]`;
//! the alternative generator `(-b + sqrt d)/2` is the negative of the same
//! element, so both spellings describe one Z-module and only `(a, b)` is kept.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::{mul, show, square, sub, Int};
use crate::qform::{compose_detailed, BinaryQuadraticForm};

/// Trial-division square-freeness test for `n >= 1`.
pub fn is_square_free<T: Int>(n: &T) -> bool {
    let mut p = T::lit(2);
    loop {
        let Some(p2) = p.checked_mul(&p) else {
            return true;
        };
        if &p2 > n {
            return true;
        }
        if n.is_multiple_of(&p2) {
            return false;
        }
        p = p + T::one();
    }
}

/// Whether `d > 1` is the discriminant of a real quadratic field.
pub fn is_fundamental_discriminant<T: Int>(d: &T) -> bool {
    if d <= &T::one() {
        return false;
    }
    let four = T::lit(4);
    let r = d.mod_floor(&four);
    if r.is_one() {
        return is_square_free(d);
    }
    if r.is_zero() {
        let d1 = d.clone() / four.clone();
        let r1 = d1.mod_floor(&four);
        return (r1 == T::lit(2) || r1 == T::lit(3)) && is_square_free(&d1);
    }
    false
}

/// All fundamental discriminants in `[lo, hi]`, ascending.
pub fn fundamental_discriminants_in<T: Int>(lo: &T, hi: &T) -> Vec<FundamentalDiscriminant<T>> {
    let mut out = Vec::new();
    let mut d = lo.clone();
    while &d <= hi {
        if let Ok(fd) = FundamentalDiscriminant::new(d.clone()) {
            out.push(fd);
        }
        d = d + T::one();
    }
    out
}

/// Generator `w` of the ring of integers over `Z`, so that the ring is `Z[w]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingGenerator {
    /// `(1 + sqrt d)/2`, for `d = 1 mod 4`.
    HalfOnePlusRoot,
    /// `sqrt(d/4)`, for `d = 0 mod 4`.
    RootOfQuarter,
}

impl fmt::Display for RingGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingGenerator::HalfOnePlusRoot => f.write_str("(1+sqrt(d))/2"),
            RingGenerator::RootOfQuarter => f.write_str("sqrt(d/4)"),
        }
    }
}

/// A validated field discriminant `d > 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FundamentalDiscriminant<T>(T);

impl<T: Int> FundamentalDiscriminant<T> {
    pub fn new(d: T) -> Result<Self> {
        if is_fundamental_discriminant(&d) {
            Ok(FundamentalDiscriminant(d))
        } else {
            Err(Error::NotFundamental(show(&d)))
        }
    }

    pub fn get(&self) -> &T {
        &self.0
    }

    pub fn is_even(&self) -> bool {
        self.0.is_even()
    }

    /// `d/4` for even discriminants.
    pub fn quarter(&self) -> Option<T> {
        self.is_even().then(|| self.0.clone() / T::lit(4))
    }

    pub fn ring_generator(&self) -> RingGenerator {
        if self.is_even() {
            RingGenerator::RootOfQuarter
        } else {
            RingGenerator::HalfOnePlusRoot
        }
    }
}

impl<T: fmt::Display> fmt::Display for FundamentalDiscriminant<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `aZ + ((b - sqrt d)/2)Z` with `a > 0`, `0 <= b < 2a`, `4a | b^2 - d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimitiveIdeal<T> {
    d: FundamentalDiscriminant<T>,
    a: T,
    b: T,
}

impl<T: Int> PrimitiveIdeal<T> {
    /// Validates `(a, b)` over `d`, reducing `b` into `[0, 2a)`.
    pub fn new(d: FundamentalDiscriminant<T>, a: T, b: T) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::NonPositiveNorm(show(&a)));
        }
        let two_a = mul(&T::lit(2), &a)?;
        let b = b.mod_floor(&two_a);
        let four_a = mul(&two_a, &T::lit(2))?;
        if !sub(&square(&b)?, d.get())?.is_multiple_of(&four_a) {
            return Err(Error::NotAnIdeal {
                d: show(d.get()),
                a: show(&a),
                b: show(&b),
            });
        }
        let ideal = PrimitiveIdeal { d, a, b };
        let c = ideal.c()?;
        if !ideal.a.gcd(&ideal.b).gcd(&c).is_one() {
            return Err(Error::Invariant(format!(
                "gcd(a, b, c) != 1 for ideal {ideal}"
            )));
        }
        Ok(ideal)
    }

    pub fn discriminant(&self) -> &FundamentalDiscriminant<T> {
        &self.d
    }

    /// The ideal norm.
    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn norm(&self) -> &T {
        &self.a
    }

    /// `(b^2 - d) / 4a`
    pub fn c(&self) -> Result<T> {
        let four_a = mul(&T::lit(4), &self.a)?;
        Ok(sub(&square(&self.b)?, self.d.get())? / four_a)
    }

    /// The associated indefinite form `(a, b, c)` of discriminant `d`.
    pub fn form(&self) -> Result<BinaryQuadraticForm<T>> {
        Ok(BinaryQuadraticForm::new(
            self.a.clone(),
            self.b.clone(),
            self.c()?,
        ))
    }

    /// The product ideal, through composition of the associated forms.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DiscriminantMismatch(
                show(self.d.get()),
                show(other.d.get()),
            ));
        }
        let product = compose_detailed(&self.form()?, &other.form()?)?;
        Self::new(self.d.clone(), product.form.a, product.form.b)
    }
}

impl<T: fmt::Display> fmt::Display for PrimitiveIdeal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.d, self.a, self.b)
    }
}

impl<T: Int + FromStr> FromStr for PrimitiveIdeal<T> {
    type Err = Error;

    /// Parses `"d:a:b"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [d, a, b] = parts.as_slice() else {
            return Err(Error::MalformedForm(s.to_string()));
        };
        let parse = |p: &str| {
            p.parse::<T>()
                .map_err(|_| Error::MalformedForm(s.to_string()))
        };
        Self::new(
            FundamentalDiscriminant::new(parse(d)?)?,
            parse(a)?,
            parse(b)?,
        )
    }
}

/// A possibly non-primitive ideal `gamma * J` with `J` primitive and `gamma >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScaledIdeal<T> {
    pub gamma: T,
    pub primitive: PrimitiveIdeal<T>,
}

impl<T: Int> ScaledIdeal<T> {
    pub fn new(gamma: T, primitive: PrimitiveIdeal<T>) -> Result<Self> {
        if !gamma.is_positive() {
            return Err(Error::NonPositiveNorm(show(&gamma)));
        }
        Ok(ScaledIdeal { gamma, primitive })
    }

    /// `N(gamma J) = gamma^2 N(J)`.
    pub fn norm(&self) -> Result<T> {
        mul(&square(&self.gamma)?, self.primitive.norm())
    }
}

/// Every primitive ideal of norm at most `a_max`, sorted by `(a, b)`.
pub fn enumerate_primitive_ideals<T: Int>(
    d: &FundamentalDiscriminant<T>,
    a_max: &T,
) -> Result<Vec<PrimitiveIdeal<T>>> {
    let two = T::lit(2);
    let start = d.get().mod_floor(&two);
    let mut out = Vec::new();
    let mut a = T::one();
    while &a <= a_max {
        let two_a = mul(&two, &a)?;
        let four_a = mul(&two, &two_a)?;
        // b^2 = d (mod 4) forces b = d (mod 2)
        let mut b = start.clone();
        while b < two_a {
            if sub(&square(&b)?, d.get())?.is_multiple_of(&four_a) {
                out.push(PrimitiveIdeal::new(d.clone(), a.clone(), b.clone())?);
            }
            b = b + two.clone();
        }
        a = a + T::one();
    }
    Ok(out)
}
