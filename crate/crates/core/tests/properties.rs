//! Property tests for forms, ideals and lattices.

use num_integer::{Integer, Roots};
use proptest::prelude::*;

use wrlat::ideal::{
    enumerate_primitive_ideals, FundamentalDiscriminant, PrimitiveIdeal, ScaledIdeal,
};
use wrlat::lattice::{self, minimal_vectors, GramForm};
use wrlat::qform::{compose_detailed, identity_form, BinaryQuadraticForm};

type F = BinaryQuadraticForm<i128>;

fn definite_form(max: i128) -> impl Strategy<Value = F> {
    (1..=max, -max..=max, 1..=max)
        .prop_filter("positive definite", |(a, b, c)| b * b < 4 * a * c)
        .prop_map(|(a, b, c)| F::new(a, b, c))
}

fn primitive_definite_form(max: i128) -> impl Strategy<Value = F> {
    definite_form(max).prop_filter("primitive", |f| f.is_primitive())
}

fn brute_min(f: &F, r: i128) -> i128 {
    let mut best = i128::MAX;
    for x in -r..=r {
        for y in -r..=r {
            if (x, y) != (0, 0) {
                best = best.min(f.eval(&x, &y).unwrap());
            }
        }
    }
    best
}

/// Reduced primitive forms of a negative discriminant.
fn class_reps(d: i128) -> Vec<F> {
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let f = F::new(a, b, num / (4 * a));
                if f.is_primitive() && f.is_reduced().unwrap() {
                    out.push(f);
                }
            }
        }
        a += 1;
    }
    out
}

fn negative_discriminant() -> impl Strategy<Value = i128> {
    (3i128..=3000)
        .prop_filter("0 or 1 mod 4", |n| (-n).rem_euclid(4) <= 1)
        .prop_map(|n| -n)
}

fn fundamental() -> impl Strategy<Value = FundamentalDiscriminant<i128>> {
    (5i128..=3000).prop_filter_map("fundamental", |d| FundamentalDiscriminant::new(d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_is_sound(f in definite_form(50)) {
        let r = f.reduce().unwrap();
        prop_assert!(r.is_reduced().unwrap());
        prop_assert_eq!(r.discriminant().unwrap(), f.discriminant().unwrap());
        prop_assert_eq!(r.content(), f.content());
        prop_assert_eq!(r.minimum().unwrap(), brute_min(&f, 20));
    }

    #[test]
    fn reduction_is_canonical(f in definite_form(200)) {
        let r = f.reduce().unwrap();
        prop_assert_eq!(r.reduce().unwrap(), r.clone());
        prop_assert!(f.is_equivalent(&f).unwrap());
        prop_assert!(f.is_equivalent(r.form()).unwrap());
        prop_assert!(r.form().is_equivalent(&f).unwrap());
    }

    #[test]
    fn equivalence_is_transitive(d in negative_discriminant(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let reps = class_reps(d);
        let [x, y, z] = [0, 1, 2].map(|i| picks[i].get(&reps).clone());
        if x.is_equivalent(&y).unwrap() && y.is_equivalent(&z).unwrap() {
            prop_assert!(x.is_equivalent(&z).unwrap());
        }
        prop_assert_eq!(x.is_equivalent(&y).unwrap(), y.is_equivalent(&x).unwrap());
    }

    #[test]
    fn group_laws(d in negative_discriminant(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let reps = class_reps(d);
        let [f, g, h] = [0, 1, 2].map(|i| picks[i].get(&reps).clone());
        let e = identity_form(&d).unwrap();
        prop_assert!(f.compose(&e).unwrap().is_equivalent(&f).unwrap());
        prop_assert!(f.compose(&f.inverse()).unwrap().is_equivalent(&e).unwrap());
        prop_assert!(f.compose(&g).unwrap().is_equivalent(&g.compose(&f).unwrap()).unwrap());
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(left.is_equivalent(&right).unwrap());
    }

    #[test]
    fn composition_bezout_and_norms(d in negative_discriminant(), picks in prop::collection::vec(any::<prop::sample::Index>(), 2)) {
        let reps = class_reps(d);
        let (f, g) = (picks[0].get(&reps), picks[1].get(&reps));
        let c = compose_detailed(f, g).unwrap();
        let (v1, v2, w) = c.bezout;
        prop_assert_eq!(v1 * f.a + v2 * g.a + w * (f.b + g.b) / 2, c.g);
        prop_assert_eq!(c.form.a * c.g * c.g, f.a * g.a);
        prop_assert!(0 <= c.form.b && c.form.b < 2 * c.form.a);
    }

    #[test]
    fn minimum_one_means_principal(f in primitive_definite_form(300)) {
        if f.minimum().unwrap() == 1 {
            let e = identity_form(&f.discriminant().unwrap()).unwrap();
            prop_assert!(f.is_equivalent(&e).unwrap());
        }
    }

    #[test]
    fn minimum_scales(f in definite_form(300), k in 1i128..=20) {
        let m = f.minimum().unwrap();
        prop_assert_eq!(f.scaled(&k).unwrap().minimum().unwrap(), k * m);
        prop_assert_eq!(f.inverse().minimum().unwrap(), m);
    }

    #[test]
    fn order_two_dichotomy(f in primitive_definite_form(300)) {
        if f.has_order_dividing_two().unwrap() {
            let d = f.discriminant().unwrap();
            let g = f.a.gcd(&f.b);
            let q = f.a / g;
            prop_assert!(f.b % f.a == 0 || 4 * q * q >= -d);
        }
    }

    #[test]
    fn oracle_minimum_matches_reduction(f in definite_form(2000)) {
        prop_assert_eq!(minimal_vectors(&f).unwrap().lambda1, f.minimum().unwrap());
    }

    #[test]
    fn ideal_forms_are_primitive(d in fundamental(), a_max in 1i128..=40) {
        for i in enumerate_primitive_ideals(&d, &a_max).unwrap() {
            let f = i.form().unwrap();
            prop_assert!(f.is_primitive());
            prop_assert_eq!(f.discriminant().unwrap(), *d.get());
        }
    }

    #[test]
    fn ideal_product_matches_composition(d in fundamental(), picks in prop::collection::vec(any::<prop::sample::Index>(), 2)) {
        let ideals = enumerate_primitive_ideals(&d, &30).unwrap();
        let (i, j) = (picks[0].get(&ideals), picks[1].get(&ideals));
        let product = i.multiply(j).unwrap();
        let c = compose_detailed(&i.form().unwrap(), &j.form().unwrap()).unwrap();
        prop_assert_eq!(product.form().unwrap(), c.form);
        prop_assert_eq!(product.a() * c.g * c.g, i.a() * j.a());
        if i.a() == i.b() {
            prop_assert_eq!(*i.multiply(i).unwrap().a(), 1);
        }
    }

    #[test]
    fn scaling_keeps_wr_verdict(d in fundamental(), pick in any::<prop::sample::Index>(), gamma in 1i128..=12) {
        let ideals = enumerate_primitive_ideals(&d, &40).unwrap();
        let j = pick.get(&ideals).clone();
        let scaled = GramForm::of_scaled(&ScaledIdeal::new(gamma, j.clone()).unwrap()).unwrap();
        prop_assert_eq!(
            lattice::is_well_rounded_form(scaled.form()).unwrap(),
            lattice::is_well_rounded_oracle(&j).unwrap()
        );
    }
}

/// `x + y sqrt(d)` with half-integer coordinates kept doubled.
#[derive(Clone, Copy)]
struct Surd {
    rational: i128,
    root: i128,
}

impl Surd {
    fn mul(self, o: Surd, d: i128) -> Surd {
        Surd {
            rational: self.rational * o.rational + self.root * o.root * d,
            root: self.rational * o.root + self.root * o.rational,
        }
    }

    fn add(self, o: Surd) -> Surd {
        Surd {
            rational: self.rational + o.rational,
            root: self.root + o.root,
        }
    }
}

#[test]
fn gram_matches_symbolic_embedding_product() {
    // Entries of the basis matrix times 2: rows (2a, b - s) and (2a, b + s), s^2 = d.
    for d in [5i128, 8, 12, 13, 21, 40, 105, 1009, 4012] {
        let fd = FundamentalDiscriminant::new(d).unwrap();
        for ideal in enumerate_primitive_ideals(&fd, &25).unwrap() {
            let (a, b) = (*ideal.a(), *ideal.b());
            let rows = [
                [
                    Surd {
                        rational: 2 * a,
                        root: 0,
                    },
                    Surd {
                        rational: b,
                        root: -1,
                    },
                ],
                [
                    Surd {
                        rational: 2 * a,
                        root: 0,
                    },
                    Surd {
                        rational: b,
                        root: 1,
                    },
                ],
            ];
            let entry = |i: usize, j: usize| {
                rows[0][i]
                    .mul(rows[0][j], d)
                    .add(rows[1][i].mul(rows[1][j], d))
            };
            // Doubling every coordinate scales the Gram matrix by 4.
            let (g00, g01, g11) = (entry(0, 0), entry(0, 1), entry(1, 1));
            for g in [g00, g01, g11] {
                assert_eq!(g.root, 0, "irrational part survives for {ideal}");
                assert_eq!(g.rational % 4, 0);
            }
            let gram = GramForm::of(&ideal).unwrap();
            let f = gram.form();
            assert_eq!(f.a, g00.rational / 4);
            assert_eq!(f.b, 2 * g01.rational / 4);
            assert_eq!(f.c, g11.rational / 4);
        }
    }
}

#[test]
fn criterion_agrees_with_oracle_to_1000() {
    for d in wrlat::ideal::fundamental_discriminants_in(&2i128, &1000) {
        let a_max = wrlat::classify::window_limit(&d).unwrap() + 2;
        for ideal in enumerate_primitive_ideals(&d, &a_max).unwrap() {
            assert_eq!(
                lattice::wr_criterion_reduced_symmetric(&ideal).unwrap(),
                lattice::is_well_rounded_oracle(&ideal).unwrap(),
                "{ideal}"
            );
        }
    }
}

#[test]
fn boundary_forces_d_twelve() {
    // 3a^2 = d or a^2 = 3d with a | d: search well past any plausible solution.
    let mut hits = Vec::new();
    for d in wrlat::ideal::fundamental_discriminants_in(&2i128, &200_000) {
        let d = *d.get();
        for a in [(d / 3).sqrt(), (3 * d).sqrt()] {
            for a in a - 1..=a + 1 {
                if a > 0 && d % a == 0 && (3 * a * a == d || a * a == 3 * d) {
                    hits.push((d, a));
                }
            }
        }
    }
    hits.sort();
    hits.dedup();
    assert_eq!(hits, vec![(12, 2), (12, 6)]);
}

#[test]
fn primitive_ideal_rejects_bad_input() {
    let d = FundamentalDiscriminant::new(21i128).unwrap();
    assert!(PrimitiveIdeal::new(d.clone(), -3, 3).is_err());
    assert!(PrimitiveIdeal::new(d, 2, 1).is_err());
}
