//! Ideal lattices and their exact norm forms.
//!
//! The ideal `[a, (b - sqrt d)/2]` embeds into `R^2` through its two real
//! embeddings, giving the basis matrix with rows `(a, (b - sqrt d)/2)` and
//! `(a, (b + sqrt d)/2)`. Its Gram matrix has integer entries, so squared
//! lengths are the values of the integer form `(2a^2, 2ab, (b^2 + d)/2)` and
//! nothing here ever touches floating point.
//!
//! [`minimal_vectors`] is a brute-force shortest vector search that does not
//! use form reduction. It serves as ground truth for everything in
//! [`crate::qform`] and [`crate::classify`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{PrimitiveIdeal, ScaledIdeal};
use crate::int::{add, mul, show, square, sub, Int};
use crate::qform::BinaryQuadraticForm;

/// The norm form `Q_I(m, n) = |m a + n (b - sqrt d)/2|^2` summed over both embeddings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GramForm<T>(BinaryQuadraticForm<T>);

impl<T: Int> GramForm<T> {
    /// `(2a^2, 2ab, (b^2 + d)/2)`
    pub fn of(ideal: &PrimitiveIdeal<T>) -> Result<Self> {
        let two = T::lit(2);
        let (a, b, d) = (ideal.a(), ideal.b(), ideal.discriminant().get());
        let big_a = mul(&two, &square(a)?)?;
        let big_b = mul(&two, &mul(a, b)?)?;
        let (big_c, rem) = add(&square(b)?, d)?.div_rem(&two);
        if !rem.is_zero() {
            return Err(Error::Invariant(format!("b^2 + d odd for {ideal}")));
        }
        Ok(GramForm(BinaryQuadraticForm::new(big_a, big_b, big_c)))
    }

    /// `gamma^2` times the Gram form of the primitive part.
    pub fn of_scaled(ideal: &ScaledIdeal<T>) -> Result<Self> {
        let base = Self::of(&ideal.primitive)?;
        Ok(GramForm(base.0.scaled(&square(&ideal.gamma)?)?))
    }

    pub fn form(&self) -> &BinaryQuadraticForm<T> {
        &self.0
    }

    /// `g = gcd(2a^2, 2ab, (b^2 + d)/2)`
    pub fn content(&self) -> T {
        self.0.content()
    }

    /// `Q_I / g`, a primitive positive definite form of discriminant `-4 a^2 d / g^2`.
    pub fn primitive_part(&self) -> BinaryQuadraticForm<T> {
        self.0.primitive_part()
    }
}

/// First minimum and the vectors attaining it, one per `+-` pair.
///
/// Representatives have their first nonzero coordinate positive and are
/// sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimaResult<T> {
    pub lambda1: T,
    pub vectors: Vec<(T, T)>,
}

impl<T: Int> MinimaResult<T> {
    /// Whether the minimal vectors span the lattice. Two independent minimal
    /// vectors of a rank-2 lattice always form a basis; that is checked here
    /// for every pair and reported as an invariant failure if it ever breaks.
    pub fn is_well_rounded(&self) -> Result<bool> {
        for (i, u) in self.vectors.iter().enumerate() {
            for v in &self.vectors[i + 1..] {
                let det = sub(&mul(&u.0, &v.1)?, &mul(&u.1, &v.0)?)?;
                if !det.abs().is_one() {
                    return Err(Error::Invariant(format!(
                        "minimal vectors ({}, {}) and ({}, {}) have determinant {det}",
                        u.0, u.1, v.0, v.1
                    )));
                }
            }
        }
        Ok(self.vectors.len() >= 2)
    }
}

fn require_definite<T: Int>(form: &BinaryQuadraticForm<T>) -> Result<T> {
    let disc = form.discriminant()?;
    if !(form.a.is_positive() && disc.is_negative()) {
        return Err(Error::NotPositiveDefinite(form.to_string()));
    }
    Ok(-disc)
}

/// Coordinate box `(|m| <= m_max, |n| <= n_max)` containing every vector
/// with `Q(m, n) <= bound`, from completing the square in each variable.
pub fn search_box<T: Int>(form: &BinaryQuadraticForm<T>, bound: &T) -> Result<(T, T)> {
    let det4 = require_definite(form)?;
    let four = T::lit(4);
    let m_max = (mul(&mul(&four, &form.c)?, bound)? / det4.clone()).sqrt();
    let n_max = (mul(&mul(&four, &form.a)?, bound)? / det4).sqrt();
    Ok((m_max, n_max))
}

/// Every `(m, n, Q(m, n))` with `0 < Q(m, n) <= bound`, one representative per
/// sign pair, sorted by `(m, n)`.
///
/// Rows `n` are scanned across the certified box; within a row the exact range
/// of `m` comes from `(2Am + Bn)^2 <= 4A bound - (4AC - B^2) n^2`.
pub fn short_vectors<T: Int>(form: &BinaryQuadraticForm<T>, bound: &T) -> Result<Vec<(T, T, T)>> {
    let det4 = require_definite(form)?;
    let (m_max, n_max) = search_box(form, bound)?;
    let two_a = mul(&T::lit(2), &form.a)?;
    let four_a_bound = mul(&two_a, &mul(&T::lit(2), bound)?)?;
    let mut out = Vec::new();
    let mut n = -n_max.clone();
    while n <= n_max {
        let room = sub(&four_a_bound, &mul(&det4, &square(&n)?)?)?;
        if !room.is_negative() {
            let s = room.sqrt();
            let bn = mul(&form.b, &n)?;
            let lo = ceil_div(&sub(&-s.clone(), &bn)?, &two_a).max(-m_max.clone());
            let hi = sub(&s, &bn)?.div_floor(&two_a).min(m_max.clone());
            let mut m = lo;
            while m <= hi {
                let canonical = m.is_positive() || (m.is_zero() && n.is_positive());
                if canonical {
                    let q = form.eval(&m, &n)?;
                    if q.is_positive() && &q <= bound {
                        out.push((m.clone(), n.clone(), q));
                    }
                }
                m = m + T::one();
            }
        }
        n = n + T::one();
    }
    out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    Ok(out)
}

fn ceil_div<T: Int>(n: &T, m: &T) -> T {
    let (q, r) = n.div_mod_floor(m);
    if r.is_zero() {
        q
    } else {
        q + T::one()
    }
}

/// Exhaustive first-minimum search. `min(A, C, A + C - |B|)` is attained at
/// `(1, 0)`, `(0, 1)` or `(1, -+1)`, so it bounds the minimum without
/// reducing the form first.
pub fn minimal_vectors<T: Int>(form: &BinaryQuadraticForm<T>) -> Result<MinimaResult<T>> {
    require_definite(form)?;
    let diag = sub(&add(&form.a, &form.c)?, &form.b.abs())?;
    let bound = form.a.clone().min(form.c.clone()).min(diag);
    let found = short_vectors(form, &bound)?;
    let lambda1 = found
        .iter()
        .map(|v| v.2.clone())
        .min()
        .ok_or_else(|| Error::Invariant(format!("no vector found below {bound} for {form}")))?;
    let vectors = found
        .into_iter()
        .filter(|v| v.2 == lambda1)
        .map(|(m, n, _)| (m, n))
        .collect();
    Ok(MinimaResult { lambda1, vectors })
}

/// Well-roundedness of an arbitrary positive definite form, by brute force.
pub fn is_well_rounded_form<T: Int>(form: &BinaryQuadraticForm<T>) -> Result<bool> {
    minimal_vectors(form)?.is_well_rounded()
}

/// Ground-truth WR test for the lattice of `ideal`.
pub fn is_well_rounded_oracle<T: Int>(ideal: &PrimitiveIdeal<T>) -> Result<bool> {
    is_well_rounded_form(GramForm::of(ideal)?.form())
}

/// WR test through reduction: the primitive part of the Gram form must reduce
/// to a symmetric form `(a, b, a)`.
pub fn wr_criterion_reduced_symmetric<T: Int>(ideal: &PrimitiveIdeal<T>) -> Result<bool> {
    let q = GramForm::of(ideal)?.primitive_part();
    Ok(q.reduce()?.is_symmetric())
}

/// Content bound on the Gram form: `g` always divides `2a gcd(a, b)`, and for
/// odd `d` it even divides `gcd(a, b)`. Returns `g` when both hold.
pub fn check_content_bound<T: Int>(ideal: &PrimitiveIdeal<T>) -> Result<T> {
    let g = GramForm::of(ideal)?.content();
    let gab = ideal.a().gcd(ideal.b());
    let outer = mul(&mul(&T::lit(2), ideal.a())?, &gab)?;
    if !outer.is_multiple_of(&g) {
        return Err(Error::Invariant(format!(
            "content {g} of Gram form of {ideal} does not divide 2a gcd(a, b) = {outer}"
        )));
    }
    if !ideal.discriminant().is_even() && !gab.is_multiple_of(&g) {
        return Err(Error::Invariant(format!(
            "content {g} of Gram form of {ideal} exceeds gcd(a, b) = {}",
            show(&gab)
        )));
    }
    Ok(g)
}
