//! Deciding well-roundedness from the norm and middle coefficient alone, and
//! checking that decision against the brute-force lattice oracle.
//!
//! A primitive ideal `(a, b)` over `d` is predicted WR exactly when `b = a`
//! and `d/3 < a^2 < 3d`. The window is evaluated as the integer inequalities
//! `d < 3a^2` and `a^2 < 3d`. Equality cases are flagged as `boundary` and left
//! undecided by the prediction; the oracle is the ground truth.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{
    enumerate_primitive_ideals, fundamental_discriminants_in, FundamentalDiscriminant,
    PrimitiveIdeal,
};
use crate::int::{add, ceil_sqrt, mul, show, square, Int};
use crate::lattice::{check_content_bound, minimal_vectors, GramForm, MinimaResult};

/// Scan margin beyond `ceil(sqrt(3d))` used when none is given.
pub const DEFAULT_MARGIN: u32 = 2;

/// The closed-form prediction for one ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TheoremVerdict {
    /// `a_equals_b && window.0 && window.1`
    pub decision: bool,
    /// `3a^2 = d` or `a^2 = 3d`
    pub boundary: bool,
    pub a_equals_b: bool,
    /// `(d < 3a^2, a^2 < 3d)`
    pub window: (bool, bool),
}

pub fn theorem_decision<T: Int>(ideal: &PrimitiveIdeal<T>) -> Result<TheoremVerdict> {
    let d = ideal.discriminant().get();
    let a2 = square(ideal.a())?;
    let three = T::lit(3);
    let three_a2 = mul(&three, &a2)?;
    let three_d = mul(&three, d)?;
    let window = (d < &three_a2, a2 < three_d);
    let boundary = &three_a2 == d || a2 == three_d;
    let a_equals_b = ideal.a() == ideal.b();
    Ok(TheoremVerdict {
        decision: a_equals_b && window.0 && window.1,
        boundary,
        a_equals_b,
        window,
    })
}

/// `ceil(sqrt(3d))`, the largest norm a WR ideal can have.
pub fn window_limit<T: Int>(d: &FundamentalDiscriminant<T>) -> Result<T> {
    Ok(ceil_sqrt(&mul(&T::lit(3), d.get())?))
}

/// Ideals predicted WR, sorted by norm. Every accepted norm divides `d`.
pub fn enumerate_wr_ideals<T: Int>(
    d: &FundamentalDiscriminant<T>,
) -> Result<Vec<PrimitiveIdeal<T>>> {
    let mut out = Vec::new();
    for ideal in enumerate_primitive_ideals(d, &window_limit(d)?)? {
        if theorem_decision(&ideal)?.decision {
            if !d.get().is_multiple_of(ideal.a()) {
                return Err(Error::Invariant(format!(
                    "predicted WR ideal {ideal} has norm not dividing d"
                )));
            }
            out.push(ideal);
        }
    }
    Ok(out)
}

/// Everything recorded about one ideal during verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRow<T> {
    pub a: T,
    pub b: T,
    pub theorem: TheoremVerdict,
    /// Brute-force verdict.
    pub oracle: bool,
    pub minima: MinimaResult<T>,
    /// Reduced-symmetric criterion on the primitive Gram form.
    pub criterion: bool,
    /// Whether the primitive Gram form has order dividing two.
    pub order_two: bool,
    /// Content of the Gram form.
    pub gram_content: T,
}

impl<T: Int> VerificationRow<T> {
    pub fn is_mismatch(&self) -> bool {
        self.theorem.decision != self.oracle
    }

    pub fn a_divides_b(&self) -> bool {
        self.b.is_multiple_of(&self.a)
    }
}

/// All rows for one discriminant. Every violation list is derived from `rows`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport<T> {
    pub d: FundamentalDiscriminant<T>,
    pub margin: u32,
    pub rows: Vec<VerificationRow<T>>,
}

impl<T: Int> VerificationReport<T> {
    pub fn mismatches(&self) -> impl Iterator<Item = &VerificationRow<T>> {
        self.rows.iter().filter(|r| r.is_mismatch())
    }

    /// Mismatches not explained by a boundary equality.
    pub fn hard_mismatches(&self) -> impl Iterator<Item = &VerificationRow<T>> {
        self.mismatches().filter(|r| !r.theorem.boundary)
    }

    pub fn boundary_rows(&self) -> impl Iterator<Item = &VerificationRow<T>> {
        self.rows.iter().filter(|r| r.theorem.boundary)
    }

    /// Rows where order two of the primitive Gram form disagrees with `a | b`.
    pub fn claim1_violations(&self) -> impl Iterator<Item = &VerificationRow<T>> {
        self.rows.iter().filter(|r| r.order_two != r.a_divides_b())
    }

    /// `b = 0` ideals are never WR.
    pub fn b_zero_violations(&self) -> impl Iterator<Item = &VerificationRow<T>> {
        self.rows.iter().filter(|r| r.b.is_zero() && r.oracle)
    }

    pub fn criterion_mismatches(&self) -> impl Iterator<Item = &VerificationRow<T>> {
        self.rows.iter().filter(|r| r.criterion != r.oracle)
    }

    /// WR ideals must have `a = b` and `a | d`.
    pub fn divisor_violations(&self) -> impl Iterator<Item = &VerificationRow<T>> + '_ {
        self.rows
            .iter()
            .filter(move |r| r.oracle && !(r.a == r.b && self.d.get().is_multiple_of(&r.a)))
    }

    /// Even `d` admits WR ideals only when `d/4 = 3 (mod 4)`.
    pub fn parity_violations(&self) -> impl Iterator<Item = &VerificationRow<T>> + '_ {
        let excluded = self
            .d
            .quarter()
            .is_some_and(|q| q.mod_floor(&T::lit(4)) != T::lit(3));
        self.rows.iter().filter(move |r| excluded && r.oracle)
    }

    /// WR away from the boundary needs the strict window, and `a = b` ideals
    /// outside the closed window are never WR.
    pub fn sharpness_violations(&self) -> impl Iterator<Item = &VerificationRow<T>> {
        self.rows.iter().filter(|r| {
            let t = &r.theorem;
            let strict = t.window.0 && t.window.1;
            let wr_off_window = r.oracle && !t.boundary && !strict;
            let outside_closed = t.a_equals_b && !strict && !t.boundary;
            wr_off_window || (outside_closed && r.oracle)
        })
    }

    /// Norms of oracle-WR ideals.
    pub fn wr_norms(&self) -> Vec<T> {
        self.rows
            .iter()
            .filter(|r| r.oracle)
            .map(|r| r.a.clone())
            .collect()
    }
}

/// Runs every check on a single ideal.
pub fn verify_ideal<T: Int>(ideal: &PrimitiveIdeal<T>) -> Result<VerificationRow<T>> {
    let theorem = theorem_decision(ideal)?;
    let gram = GramForm::of(ideal)?;
    let minima = minimal_vectors(gram.form())?;
    let oracle = minima.is_well_rounded()?;
    let primitive = gram.primitive_part();
    let criterion = primitive.reduce()?.is_symmetric();
    let order_two = primitive.has_order_dividing_two()?;
    let gram_content = check_content_bound(ideal)?;
    Ok(VerificationRow {
        a: ideal.a().clone(),
        b: ideal.b().clone(),
        theorem,
        oracle,
        minima,
        criterion,
        order_two,
        gram_content,
    })
}

/// Checks every primitive ideal of norm up to `ceil(sqrt(3d)) + margin`.
pub fn verify_discriminant<T: Int>(
    d: &FundamentalDiscriminant<T>,
    margin: u32,
) -> Result<VerificationReport<T>> {
    let a_max = add(
        &window_limit(d)?,
        &T::from_u32(margin).ok_or(Error::Overflow)?,
    )?;
    let rows = enumerate_primitive_ideals(d, &a_max)?
        .iter()
        .map(verify_ideal)
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        d: d.clone(),
        margin,
        rows,
    })
}

/// Verifies every fundamental discriminant in `[lo, hi]` on `jobs` worker
/// threads. Output order is ascending `d` for any worker count.
pub fn scan_range<T: Int>(
    lo: &T,
    hi: &T,
    margin: u32,
    jobs: usize,
) -> Result<Vec<VerificationReport<T>>> {
    if lo > hi || lo < &T::lit(2) {
        return Err(Error::InvalidRange {
            lo: show(lo),
            hi: show(hi),
        });
    }
    let ds = fundamental_discriminants_in(lo, hi);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Invariant(format!("worker pool: {e}")))?;
    pool.install(|| {
        ds.par_iter()
            .map(|d| verify_discriminant(d, margin))
            .collect::<Result<Vec<_>>>()
    })
}

/// A row located by discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowRef<T> {
    pub d: T,
    pub a: T,
    pub b: T,
}

/// Cross-report tally of every checked property.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanSummary<T> {
    pub discriminants: usize,
    pub ideals: usize,
    pub wr_ideals: Vec<RowRef<T>>,
    pub boundary_rows: Vec<RowRef<T>>,
    pub hard_mismatches: Vec<RowRef<T>>,
    pub boundary_mismatches: Vec<RowRef<T>>,
    pub claim1_violations: Vec<RowRef<T>>,
    pub b_zero_violations: Vec<RowRef<T>>,
    pub criterion_mismatches: Vec<RowRef<T>>,
    pub divisor_violations: Vec<RowRef<T>>,
    pub parity_violations: Vec<RowRef<T>>,
    pub sharpness_violations: Vec<RowRef<T>>,
}

impl<T: Int> ScanSummary<T> {
    pub fn of(reports: &[VerificationReport<T>]) -> Self {
        let mut s = ScanSummary {
            discriminants: reports.len(),
            ideals: 0,
            wr_ideals: Vec::new(),
            boundary_rows: Vec::new(),
            hard_mismatches: Vec::new(),
            boundary_mismatches: Vec::new(),
            claim1_violations: Vec::new(),
            b_zero_violations: Vec::new(),
            criterion_mismatches: Vec::new(),
            divisor_violations: Vec::new(),
            parity_violations: Vec::new(),
            sharpness_violations: Vec::new(),
        };
        for r in reports {
            let at = |row: &VerificationRow<T>| RowRef {
                d: r.d.get().clone(),
                a: row.a.clone(),
                b: row.b.clone(),
            };
            s.ideals += r.rows.len();
            s.wr_ideals
                .extend(r.rows.iter().filter(|x| x.oracle).map(at));
            s.boundary_rows.extend(r.boundary_rows().map(at));
            s.hard_mismatches.extend(r.hard_mismatches().map(at));
            s.boundary_mismatches
                .extend(r.mismatches().filter(|x| x.theorem.boundary).map(at));
            s.claim1_violations.extend(r.claim1_violations().map(at));
            s.b_zero_violations.extend(r.b_zero_violations().map(at));
            s.criterion_mismatches
                .extend(r.criterion_mismatches().map(at));
            s.divisor_violations.extend(r.divisor_violations().map(at));
            s.parity_violations.extend(r.parity_violations().map(at));
            s.sharpness_violations
                .extend(r.sharpness_violations().map(at));
        }
        s
    }

    /// No failures other than boundary mismatches.
    pub fn is_clean(&self) -> bool {
        self.hard_mismatches.is_empty()
            && self.claim1_violations.is_empty()
            && self.b_zero_violations.is_empty()
            && self.criterion_mismatches.is_empty()
            && self.divisor_violations.is_empty()
            && self.parity_violations.is_empty()
            && self.sharpness_violations.is_empty()
    }
}
