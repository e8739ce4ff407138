//! Integral binary quadratic forms `ax^2 + bxy + cy^2`.
//!
//! Reduction and equivalence are only defined here for positive definite
//! forms. Composition works for any discriminant, which is what the ideal
//! layer needs for real quadratic fields.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::{add, bezout, div_round_half_to_zero, mul, show, square, sub, Int};

/// The form `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BinaryQuadraticForm<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

/// A 2x2 integer matrix `[[alpha, beta], [gamma, delta]]` acting on forms by
/// `f(x, y) -> f(alpha x + beta y, gamma x + delta y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transform<T>(pub [[T; 2]; 2]);

impl<T: Int> Transform<T> {
    pub fn identity() -> Self {
        Transform([[T::one(), T::zero()], [T::zero(), T::one()]])
    }

    /// `[[1, delta], [0, 1]]`
    pub fn translation(delta: T) -> Self {
        Transform([[T::one(), delta], [T::zero(), T::one()]])
    }

    /// `[[0, -1], [1, 0]]`
    pub fn flip() -> Self {
        Transform([[T::zero(), -T::one()], [T::one(), T::zero()]])
    }

    pub fn det(&self) -> Result<T> {
        let [[p, q], [r, s]] = &self.0;
        sub(&mul(p, s)?, &mul(q, r)?)
    }

    /// Matrix product `self * rhs`.
    pub fn then(&self, rhs: &Self) -> Result<Self> {
        let (l, r) = (&self.0, &rhs.0);
        let entry = |i: usize, j: usize| -> Result<T> {
            add(&mul(&l[i][0], &r[0][j])?, &mul(&l[i][1], &r[1][j])?)
        };
        Ok(Transform([
            [entry(0, 0)?, entry(0, 1)?],
            [entry(1, 0)?, entry(1, 1)?],
        ]))
    }
}

impl<T: Int> BinaryQuadraticForm<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        BinaryQuadraticForm { a, b, c }
    }

    /// `b^2 - 4ac`, recomputed on every call.
    pub fn discriminant(&self) -> Result<T> {
        let four_ac = mul(&T::lit(4), &mul(&self.a, &self.c)?)?;
        sub(&square(&self.b)?, &four_ac)
    }

    /// `gcd(|a|, |b|, |c|)`; zero only for the zero form.
    pub fn content(&self) -> T {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn is_positive_definite(&self) -> Result<bool> {
        Ok(self.a.is_positive() && self.discriminant()?.is_negative())
    }

    pub fn is_symmetric(&self) -> bool {
        self.a == self.c
    }

    pub fn eval(&self, x: &T, y: &T) -> Result<T> {
        let ax2 = mul(&self.a, &square(x)?)?;
        let bxy = mul(&self.b, &mul(x, y)?)?;
        let cy2 = mul(&self.c, &square(y)?)?;
        add(&add(&ax2, &bxy)?, &cy2)
    }

    pub fn scaled(&self, k: &T) -> Result<Self> {
        Ok(Self::new(
            mul(&self.a, k)?,
            mul(&self.b, k)?,
            mul(&self.c, k)?,
        ))
    }

    /// The form divided by its content.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        Self::new(
            self.a.clone() / g.clone(),
            self.b.clone() / g.clone(),
            self.c.clone() / g,
        )
    }

    /// `(a, -b, c)`, the inverse class under composition.
    pub fn inverse(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.c.clone())
    }

    /// `(a, b + 2a delta, a delta^2 + b delta + c)`
    pub fn translate(&self, delta: &T) -> Result<Self> {
        let two_a_delta = mul(&mul(&T::lit(2), &self.a)?, delta)?;
        let b = add(&self.b, &two_a_delta)?;
        let c = self.eval(delta, &T::one())?;
        Ok(Self::new(self.a.clone(), b, c))
    }

    /// `(c, -b, a)`
    pub fn flip(&self) -> Self {
        Self::new(self.c.clone(), -self.b.clone(), self.a.clone())
    }

    /// Substitutes `(x, y) -> (alpha x + beta y, gamma x + delta y)`.
    pub fn transform(&self, t: &Transform<T>) -> Result<Self> {
        let [[p, q], [r, s]] = &t.0;
        let a = self.eval(p, r)?;
        let c = self.eval(q, s)?;
        let two = T::lit(2);
        let b = add(
            &add(
                &mul(&mul(&two, &self.a)?, &mul(p, q)?)?,
                &mul(&self.b, &add(&mul(p, s)?, &mul(q, r)?)?)?,
            )?,
            &mul(&mul(&two, &self.c)?, &mul(r, s)?)?,
        )?;
        Ok(Self::new(a, b, c))
    }

    /// `|b| <= a <= c` with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> Result<bool> {
        if !self.is_positive_definite()? {
            return Ok(false);
        }
        let abs_b = self.b.abs();
        if abs_b > self.a || self.a > self.c {
            return Ok(false);
        }
        if (abs_b == self.a || self.a == self.c) && self.b.is_negative() {
            return Ok(false);
        }
        Ok(true)
    }

    fn require_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite()? {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite(self.to_string()))
        }
    }

    /// The unique reduced form properly equivalent to `self`.
    pub fn reduce(&self) -> Result<ReducedForm<T>> {
        self.reduce_with_transform().map(|(r, _)| r)
    }

    /// Like [`reduce`](Self::reduce), also returning the `SL_2(Z)` matrix `M`
    /// with `self.transform(M) == reduced`.
    pub fn reduce_with_transform(&self) -> Result<(ReducedForm<T>, Transform<T>)> {
        self.require_positive_definite()?;
        let mut f = self.clone();
        let mut m = Transform::identity();
        loop {
            if f.b.abs() > f.a {
                let two_a = mul(&T::lit(2), &f.a)?;
                let delta = div_round_half_to_zero(&-f.b.clone(), &two_a)?;
                f = f.translate(&delta)?;
                m = m.then(&Transform::translation(delta))?;
            }
            if f.a > f.c {
                f = f.flip();
                m = m.then(&Transform::flip())?;
                continue;
            }
            break;
        }
        if f.b.is_negative() {
            if f.b.abs() == f.a {
                f = f.translate(&T::one())?;
                m = m.then(&Transform::translation(T::one()))?;
            } else if f.a == f.c {
                f = f.flip();
                m = m.then(&Transform::flip())?;
            }
        }
        debug_assert!(f.is_reduced().unwrap_or(false), "{f} not reduced");
        Ok((ReducedForm(f), m))
    }

    /// Proper equivalence of positive definite forms.
    pub fn is_equivalent(&self, other: &Self) -> Result<bool> {
        self.require_positive_definite()?;
        other.require_positive_definite()?;
        if self.discriminant()? != other.discriminant()? {
            return Ok(false);
        }
        Ok(self.reduce()? == other.reduce()?)
    }

    /// Composition of primitive forms of equal discriminant.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        compose_detailed(self, other).map(|c| c.form)
    }

    /// The least nonzero value `m(f)`, read off the reduced form.
    pub fn minimum(&self) -> Result<T> {
        Ok(self.reduce()?.0.a)
    }

    /// Whether the class of `self` squares to the principal class.
    pub fn has_order_dividing_two(&self) -> Result<bool> {
        self.require_positive_definite()?;
        if !self.is_primitive() {
            return Err(Error::NotPrimitive(self.to_string()));
        }
        let square = self.compose(self)?.reduce()?;
        let e = identity_form(&self.discriminant()?)?.reduce()?;
        Ok(square == e)
    }
}

/// `(1, 0, -d/4)` for even `d`, `(1, 1, (1-d)/4)` for odd `d`.
pub fn identity_form<T: Int>(d: &T) -> Result<BinaryQuadraticForm<T>> {
    let four = T::lit(4);
    let r = d.mod_floor(&four);
    if r.is_zero() {
        Ok(BinaryQuadraticForm::new(
            T::one(),
            T::zero(),
            -(d.clone() / four),
        ))
    } else if r.is_one() {
        let c = sub(&T::one(), d)? / four;
        Ok(BinaryQuadraticForm::new(T::one(), T::one(), c))
    } else {
        Err(Error::BadDiscriminant(show(d)))
    }
}

/// A composed form together with the gcd and Bezout data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition<T> {
    pub form: BinaryQuadraticForm<T>,
    /// `gcd(a1, a2, (b1 + b2)/2)`
    pub g: T,
    /// `(v1, v2, w)` with `v1 a1 + v2 a2 + w (b1 + b2)/2 = g`.
    pub bezout: (T, T, T),
}

/// Dirichlet composition of two primitive forms with positive leading
/// coefficients, output normalized to `0 <= b3 < 2 a3`.
pub fn compose_detailed<T: Int>(
    f1: &BinaryQuadraticForm<T>,
    f2: &BinaryQuadraticForm<T>,
) -> Result<Composition<T>> {
    for f in [f1, f2] {
        if !f.is_primitive() {
            return Err(Error::NotPrimitive(f.to_string()));
        }
        if !f.a.is_positive() {
            return Err(Error::NonPositiveLeading(f.to_string()));
        }
    }
    let disc = f1.discriminant()?;
    let disc2 = f2.discriminant()?;
    if disc != disc2 {
        return Err(Error::DiscriminantMismatch(show(&disc), show(&disc2)));
    }
    let two = T::lit(2);
    let sum = add(&f1.b, &f2.b)?;
    if sum.is_odd() {
        return Err(Error::OddMiddleSum(show(&sum)));
    }
    let s = sum / two.clone();
    let h = sub(&f1.b, &f2.b)? / two.clone();

    let (g1, x, y) = bezout(&f1.a, &f2.a);
    let (g, u, w) = bezout(&g1, &s);
    let v1 = mul(&u, &x)?;
    let v2 = mul(&u, &y)?;

    let a3 = mul(&f1.a, &f2.a)? / square(&g)?;
    let a2_over_g = f2.a.clone() / g.clone();
    let inner = sub(&mul(&h, &v2)?, &mul(&f2.c, &w)?)?;
    let shift = mul(&mul(&two, &a2_over_g)?, &inner)?;
    let two_a3 = mul(&two, &a3)?;
    let b3 = add(&f2.b, &shift)?.mod_floor(&two_a3);
    let num = sub(&square(&b3)?, &disc)?;
    let four_a3 = mul(&two, &two_a3)?;
    let (c3, rem) = num.div_rem(&four_a3);
    if !rem.is_zero() {
        return Err(Error::Invariant(format!(
            "composition of {f1} and {f2} gave b3 = {b3} with 4a3 not dividing b3^2 - d"
        )));
    }
    Ok(Composition {
        form: BinaryQuadraticForm::new(a3, b3, c3),
        g,
        bezout: (v1, v2, w),
    })
}

/// A positive definite form known to satisfy the reduced convention.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ReducedForm<T>(BinaryQuadraticForm<T>);

impl<T: Int> ReducedForm<T> {
    pub fn form(&self) -> &BinaryQuadraticForm<T> {
        &self.0
    }

    pub fn into_inner(self) -> BinaryQuadraticForm<T> {
        self.0
    }
}

impl<T> Deref for ReducedForm<T> {
    type Target = BinaryQuadraticForm<T>;

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl<T: fmt::Display> fmt::Display for BinaryQuadraticForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl<T: fmt::Display> fmt::Display for ReducedForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<T: Int + FromStr> FromStr for BinaryQuadraticForm<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedForm(s.to_string());
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(bad());
        };
        let parse = |p: &str| p.parse::<T>().map_err(|_| bad());
        Ok(Self::new(parse(a)?, parse(b)?, parse(c)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = BinaryQuadraticForm<i64>;

    fn f(a: i64, b: i64, c: i64) -> F {
        F::new(a, b, c)
    }

    /// Every reduced form of discriminant `d < 0`, by direct enumeration.
    fn all_reduced(d: i64) -> Vec<F> {
        let mut out = Vec::new();
        let mut a = 1;
        while 3 * a * a <= -d {
            for b in -a..=a {
                let num = b * b - d;
                if num % (4 * a) != 0 {
                    continue;
                }
                let g = f(a, b, num / (4 * a));
                if g.is_reduced().unwrap() {
                    out.push(g);
                }
            }
            a += 1;
        }
        out
    }

    /// Search unimodular matrices with small entries carrying `src` to `dst`.
    fn linked_by_small_matrix(src: &F, dst: &F, bound: i64) -> bool {
        let r = -bound..=bound;
        for p in r.clone() {
            for q in r.clone() {
                for u in r.clone() {
                    for v in r.clone() {
                        let t = Transform([[p, q], [u, v]]);
                        if t.det().unwrap() == 1 && &src.transform(&t).unwrap() == dst {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(f(1, 1, -5).discriminant().unwrap(), 21);
        assert_eq!(f(2, 2, 3).discriminant().unwrap(), -20);
        assert_eq!(f(1, 0, 1).discriminant().unwrap(), -4);
    }

    #[test]
    fn identity_form_examples() {
        assert_eq!(identity_form(&-4i64).unwrap(), f(1, 0, 1));
        assert_eq!(identity_form(&-3i64).unwrap(), f(1, 1, 1));
        assert_eq!(identity_form(&21i64).unwrap(), f(1, 1, -5));
        for d in [-5i64, -6, 2, 7] {
            assert!(matches!(identity_form(&d), Err(Error::BadDiscriminant(_))));
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(f(5, 4, 5).inverse(), f(5, -4, 5));
        assert_eq!(f(1, 0, 1).inverse(), f(1, 0, 1));
        assert_eq!(f(3, -2, 4).inverse(), f(3, 2, 4));
    }

    #[test]
    fn reduce_matches_brute_force_class_search() {
        let src = f(15, 14, 4);
        let d = src.discriminant().unwrap();
        assert_eq!(d, -44);
        let candidates = all_reduced(d);
        let hits: Vec<&F> = candidates
            .iter()
            .filter(|g| g.is_primitive() && linked_by_small_matrix(&src, g, 4))
            .collect();
        assert_eq!(hits, vec![&f(3, -2, 4)]);
        assert_eq!(src.reduce().unwrap().form(), &f(3, -2, 4));
    }

    #[test]
    fn reduce_fixed_points_and_sign_convention() {
        assert_eq!(f(2, 2, 3).reduce().unwrap().form(), &f(2, 2, 3));
        assert_eq!(f(5, -4, 5).reduce().unwrap().form(), &f(5, 4, 5));
        assert_eq!(f(3, -3, 7).reduce().unwrap().form(), &f(3, 3, 7));
    }

    #[test]
    fn reduce_transform_is_unimodular_and_exact() {
        for g in [
            f(15, 14, 4),
            f(101, 199, 99),
            f(7, -30, 33),
            f(1, 1000, 250001),
        ] {
            let (r, t) = g.reduce_with_transform().unwrap();
            assert_eq!(t.det().unwrap(), 1);
            assert_eq!(&g.transform(&t).unwrap(), r.form());
        }
    }

    #[test]
    fn reduce_rejects_non_definite() {
        for g in [f(1, 1, -5), f(-1, 0, -1), f(1, 2, 1)] {
            assert!(matches!(g.reduce(), Err(Error::NotPositiveDefinite(_))));
        }
    }

    #[test]
    fn equivalence_examples() {
        assert!(f(15, 14, 4).is_equivalent(&f(3, -2, 4)).unwrap());
        assert!(!f(1, 0, 1).is_equivalent(&f(1, 1, 1)).unwrap());
        assert!(f(5, 4, 5).is_equivalent(&f(5, -4, 5)).unwrap());
        assert!(f(5, 4, 5).flip() == f(5, -4, 5));
        assert!(f(1, 1, -5).is_equivalent(&f(1, 1, -5)).is_err());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(f(1, 0, 5).compose(&f(1, 0, 5)).unwrap(), f(1, 0, 5));

        let sq = compose_detailed(&f(2, 2, 3), &f(2, 2, 3)).unwrap();
        assert_eq!(sq.g, 2);
        assert_eq!(sq.form, f(1, 0, 5));

        let sq = compose_detailed(&f(3, 3, -1), &f(3, 3, -1)).unwrap();
        assert_eq!(sq.g, 3);
        assert_eq!(sq.form.a, 1);
        assert_eq!(sq.form.discriminant().unwrap(), 21);
    }

    #[test]
    fn compose_bezout_identity() {
        let pairs = [
            (f(2, 2, 3), f(3, 2, 7)),
            (f(3, 2, 5), f(3, -2, 5)),
            (f(3, 3, -1), f(7, 7, 1)),
            (f(5, 1, -1), f(1, 1, -5)),
        ];
        for (p, q) in pairs {
            if p.discriminant().unwrap() != q.discriminant().unwrap() {
                continue;
            }
            let c = compose_detailed(&p, &q).unwrap();
            let (v1, v2, w) = c.bezout;
            assert_eq!(v1 * p.a + v2 * q.a + w * (p.b + q.b) / 2, c.g);
            assert!(c.form.b >= 0 && c.form.b < 2 * c.form.a);
            assert_eq!(c.form.discriminant().unwrap(), p.discriminant().unwrap());
        }
    }

    #[test]
    fn compose_errors() {
        assert!(matches!(
            f(1, 0, 5).compose(&f(1, 1, 1)),
            Err(Error::DiscriminantMismatch(..))
        ));
        assert!(matches!(
            f(2, 0, 10).compose(&f(1, 0, 5)),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn minimum_examples() {
        assert_eq!(f(1, 0, 1).minimum().unwrap(), 1);
        assert_eq!(f(1, 1, 1).minimum().unwrap(), 1);
        let g = f(15, 14, 4);
        let brute = (-10i64..=10)
            .flat_map(|x| (-10i64..=10).map(move |y| (x, y)))
            .filter(|&p| p != (0, 0))
            .map(|(x, y)| g.eval(&x, &y).unwrap())
            .min()
            .unwrap();
        assert_eq!(brute, 3);
        assert_eq!(g.minimum().unwrap(), 3);
    }

    #[test]
    fn order_two_examples() {
        assert!(f(2, 2, 3).has_order_dividing_two().unwrap());
        assert!(identity_form(&-20i64)
            .unwrap()
            .has_order_dividing_two()
            .unwrap());
        assert!(!f(3, 2, 5).has_order_dividing_two().unwrap());
        assert!(matches!(
            f(2, 2, 6).has_order_dividing_two(),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn parse_and_display() {
        let g: F = "3,-2, 4".parse().unwrap();
        assert_eq!(g, f(3, -2, 4));
        assert_eq!(g.to_string(), "3,-2,4");
        assert!("3,4".parse::<F>().is_err());
        assert!("x,1,2".parse::<F>().is_err());
    }

    #[test]
    fn overflow_is_reported_not_wrapped() {
        let g = f(i64::MAX / 2, 1, i64::MAX / 2);
        assert_eq!(g.discriminant(), Err(Error::Overflow));
    }
}
