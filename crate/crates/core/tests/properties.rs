mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use walg_core::arith::{DenominatorLedger, Rational};
use walg_core::onedim::{solve_system, Classification, Coordinate, OneDimSystem};
use walg_core::poly::{GbLimits, Poly, UPoly};
use walg_core::rootsystem::{jacobi_holds, simple_lie_algebra, LieType};
use walg_core::uea::{Element, Mono, PbwModule};
use walg_core::{run, Mode, RunConfig, RunResult};

use common::{oracle_product, q, reduce_chi};

fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn g2_short() -> &'static RunResult {
    static R: OnceLock<RunResult> = OnceLock::new();
    R.get_or_init(|| run(&RunConfig::for_orbit(LieType::G, 2, "~A1").unwrap().with_mode(Mode::GeneratorsOnly)).unwrap())
}

fn f4_minimal() -> &'static RunResult {
    static R: OnceLock<RunResult> = OnceLock::new();
    R.get_or_init(|| run(&RunConfig::for_orbit(LieType::F, 4, "A1").unwrap().with_mode(Mode::GeneratorsOnly)).unwrap())
}

fn ordered(letters: Vec<u16>) -> Mono {
    let mut m = letters;
    m.sort_unstable();
    m
}

fn mono(letters: Vec<u16>, c: i64) -> BTreeMap<Mono, Rational> {
    [(ordered(letters), q(c, 1))].into()
}

proptest! {
    #![proptest_config(config(150, 11))]

    #[test]
    fn pbw_products_match_straightening_g2(
        a in prop::collection::vec(0u16..14, 0..=2),
        b in prop::collection::vec(0u16..14, 0..=2),
        c in prop::collection::vec(0u16..14, 0..=2),
    ) {
        let gb = &g2_short().basis;
        let u = PbwModule::universal(gb);
        let (a, b, c) = (mono(a, 1), mono(b, 2), mono(c, -1));
        let ab = u.multiply(&Element { terms: a.clone() }, &Element { terms: b.clone() });
        prop_assert_eq!(&ab.terms, &oracle_product(gb, &a, &b));
        let left = u.multiply(&ab, &Element { terms: c.clone() });
        let bc = u.multiply(&Element { terms: b }, &Element { terms: c });
        let right = u.multiply(&Element { terms: a }, &bc);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn gelfand_graev_action_matches_quotient(
        word in prop::collection::vec(0u16..14, 0..=3),
        target in prop::collection::vec(0u16..10, 0..=2),
    ) {
        let gb = &g2_short().basis;
        let qm = PbwModule::gelfand_graev(gb);
        let u = mono(word, 1);
        let v = mono(target, 1);
        let got = qm.apply(&Element { terms: u.clone() }, &Element { terms: v.clone() });
        prop_assert_eq!(got.terms, reduce_chi(gb, &oracle_product(gb, &u, &v)));
    }
}

proptest! {
    #![proptest_config(config(60, 12))]

    #[test]
    fn pbw_products_match_straightening_f4(
        a in prop::collection::vec(0u16..52, 1..=2),
        b in prop::collection::vec(0u16..52, 1..=2),
    ) {
        let gb = &f4_minimal().basis;
        let u = PbwModule::universal(gb);
        let (a, b) = (mono(a, 1), mono(b, 1));
        let ab = u.multiply(&Element { terms: a.clone() }, &Element { terms: b.clone() });
        prop_assert_eq!(ab.terms, oracle_product(gb, &a, &b));
    }

    #[test]
    fn root_sign_changes_preserve_jacobi(
        signs in prop::collection::vec(prop::bool::ANY, 24),
        triples in prop::collection::vec((0usize..52, 0usize..52, 0usize..52), 40),
    ) {
        let g = simple_lie_algebra(LieType::F, 4).unwrap();
        let s: Vec<i8> = signs.iter().map(|&b| if b { -1 } else { 1 }).collect();
        let h = g.with_root_signs(&s).unwrap();
        for (i, j, k) in triples {
            prop_assert!(jacobi_holds(&h, i, j, k));
        }
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(config(100, 13))]

    #[test]
    fn rational_roots_are_recovered(roots in prop::collection::btree_set(rational(), 1..=5)) {
        let mut p = UPoly::new(vec![q(1, 1)]);
        for r in &roots {
            p = p.mul(&UPoly::new(vec![-r.clone(), q(1, 1)]));
        }
        let found: BTreeSet<Rational> = p.rational_roots().into_iter().collect();
        prop_assert_eq!(&found, &roots);
        prop_assert_eq!(p.mul(&p).squarefree().degree(), roots.len() as i64);
    }

    /// Points with distinct x-coordinates cut out by prod(x - a_i) and y - L(x).
    #[test]
    fn solver_counts_interpolated_points(
        pts in prop::collection::btree_map(rational(), rational(), 1..=4),
    ) {
        let xs: Vec<Rational> = pts.keys().cloned().collect();
        let mut vanish = UPoly::new(vec![q(1, 1)]);
        for a in &xs {
            vanish = vanish.mul(&UPoly::new(vec![-a.clone(), q(1, 1)]));
        }
        // Lagrange interpolant L with L(a_i) = b_i.
        let mut interp = UPoly::new(vec![Rational::zero()]);
        for (a, b) in &pts {
            let mut basis = UPoly::new(vec![b.clone()]);
            for other in xs.iter().filter(|x| *x != a) {
                let inv = (a - other).recip();
                basis = basis.mul(&UPoly::new(vec![-other * &inv, inv]));
            }
            interp = add(&interp, &basis);
        }
        // Variable 0 is y (eliminated first), variable 1 is x.
        let mut f = Poly::zero(2);
        for (k, c) in vanish.coeffs.iter().enumerate() {
            f.add_term(vec![0, k as u32], c.clone());
        }
        let mut g = Poly::zero(2);
        g.add_term(vec![1, 0], q(1, 1));
        for (k, c) in interp.coeffs.iter().enumerate() {
            g.add_term(vec![0, k as u32], -c.clone());
        }
        let sys = OneDimSystem { variables: vec![0, 1], pairs: vec![], equations: vec![((0, 0), f), ((0, 1), g)] };
        let sol = solve_system(&sys, &GbLimits::default()).unwrap();
        prop_assert_eq!(sol.classification, Classification::Finite);
        prop_assert_eq!(sol.count, Some(pts.len()));
        let found: BTreeMap<Rational, Rational> = sol
            .solutions
            .iter()
            .map(|s| match (&s.values[&1], &s.values[&0]) {
                (Coordinate::Rational(x), Coordinate::Rational(y)) => (x.clone(), y.clone()),
                _ => panic!("irrational point"),
            })
            .collect();
        prop_assert_eq!(found, pts);
    }

    #[test]
    fn ledger_covers_exactly_its_primes(a in 0u32..6, b in 0u32..6, n in -50i64..50, extra in prop::bool::ANY) {
        let mut ledger = DenominatorLedger::new();
        ledger.add_prime(2, "test");
        ledger.add_prime(3, "test");
        let den = 2i64.pow(a) * 3i64.pow(b) * if extra { 5 } else { 1 };
        let value = q(n * 7 + 1, den);
        let five_left = extra && (n * 7 + 1) % 5 != 0;
        prop_assert_eq!(ledger.covers(&value), !five_left);
    }
}

fn add(a: &UPoly, b: &UPoly) -> UPoly {
    let (ca, cb) = (&a.coeffs, &b.coeffs);
    let n = ca.len().max(cb.len());
    UPoly::new(
        (0..n)
            .map(|i| ca.get(i).cloned().unwrap_or_default() + cb.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}
