mod common;

use std::collections::BTreeSet;

use common::{r, Planted, Q};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trigsturm::exactnum::SurdExpr;
use trigsturm::expr::parse_trig;
use trigsturm::paramsolve::{
    interior_points, is_nonnegative_at, nonnegative_set, AlgebraicEndpoint, ParamFamily, ParamInterval,
};
use trigsturm::poly::{Poly, SurdPoly};
use trigsturm::prover::{decide_poly_nonneg, lower_bound, pfloor, verify_certificate, Status};
use trigsturm::sturm::SturmChain;
use trigsturm::trig::{TrigPoly, YInterval};

const RADICANDS: [u64; 6] = [1, 2, 3, 5, 6, 7];

fn rational() -> impl Strategy<Value = Q> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| r(n, d))
}

fn surd() -> impl Strategy<Value = SurdExpr> {
    prop::collection::vec((rational(), 0..RADICANDS.len()), 0..4).prop_map(|ts| {
        ts.into_iter()
            .fold(SurdExpr::zero(), |acc, (c, i)| &acc + &SurdExpr::term(c, RADICANDS[i]))
    })
}

fn rpoly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(Poly::new)
}

fn trig(max_deg: usize) -> impl Strategy<Value = TrigPoly> {
    (surd(), prop::collection::vec(surd(), 0..=max_deg), prop::collection::vec(surd(), 0..=max_deg))
        .prop_map(|(a0, c, s)| TrigPoly::new(a0, c, s))
}

/// Float value of a surd from its terms, independent of the library's evaluation.
fn surd_f64(e: &SurdExpr) -> f64 {
    e.terms().map(|(n, c)| common::to_f64(c) * (n as f64).sqrt()).sum()
}

fn planted() -> impl Strategy<Value = Planted> {
    any::<u64>().prop_map(|seed| Planted::random(&mut ChaCha8Rng::seed_from_u64(seed), 8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn surd_ring_laws(a in surd(), b in surd(), c in surd()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &SurdExpr::one(), a.clone());
    }

    #[test]
    fn surd_sign_matches_float(a in surd(), b in surd()) {
        let d = &a - &b;
        let f = surd_f64(&a) - surd_f64(&b);
        if f.abs() > 1e-9 {
            prop_assert_eq!(d.sign() as f64, f.signum());
        }
        prop_assert_eq!(d.is_zero(), d.sign() == 0);
        prop_assert_eq!((&d * &d).sign() >= 0, true);
    }

    #[test]
    fn divrem_round_trip(a in rpoly(9), b in rpoly(5)) {
        prop_assume!(!b.is_zero());
        let (q, rem) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn sturm_counts_planted_roots(p in planted(), lo in -12i64..=0, hi in 0i64..=12) {
        let (lo, hi) = (r(lo, 4), r(hi, 4));
        prop_assume!(lo < hi);
        let distinct: BTreeSet<Q> = p.roots.iter().map(|(x, _)| x.clone()).filter(|x| &lo < x && x <= &hi).collect();
        let chain = SturmChain::new(&Poly::new(p.coeffs())).unwrap();
        prop_assert_eq!(chain.count(&lo, &hi), distinct.len());
    }

    #[test]
    fn decisions_match_factored_form(p in planted()) {
        let (lo, hi) = (r(-1, 1), r(1, 1));
        let (v, cert) = decide_poly_nonneg(&Poly::new(p.coeffs()), &YInterval::full());
        prop_assert_eq!(v.status == Status::Nonnegative, p.nonneg_on(&lo, &hi));
        prop_assert!(verify_certificate(&cert, &v).is_ok());
        if let Some(w) = &v.witness {
            prop_assert!(p.sign_at(w) < 0);
        }
    }

    #[test]
    fn decisions_match_taylor_oracle(c in prop::collection::vec(-9i64..=9, 1..=7)) {
        let c: Vec<Q> = c.into_iter().map(|k| r(k, 1)).collect();
        let (lo, hi) = (r(-1, 1), r(1, 1));
        let truth = match common::grid_negative(&c, &lo, &hi, 200) {
            Some(_) => Some(false),
            None => common::taylor_nonneg(&c, &lo, &hi, 30),
        };
        let (v, cert) = decide_poly_nonneg(&Poly::new(c), &YInterval::full());
        prop_assert!(verify_certificate(&cert, &v).is_ok());
        if let Some(t) = truth {
            prop_assert_eq!(v.status == Status::Nonnegative, t);
        }
    }

    #[test]
    fn render_then_parse(t in trig(6)) {
        prop_assert_eq!(parse_trig(&t.render()).unwrap(), t);
    }

    #[test]
    fn expansion_matches_direct_evaluation(t in trig(12), x in 0.0f64..std::f64::consts::PI) {
        let e = t.expand();
        let cos: Vec<f64> = (1..=t.degree()).map(|k| surd_f64(&t.cos_coeff(k))).collect();
        let sin: Vec<f64> = (1..=t.degree()).map(|k| surd_f64(&t.sin_coeff(k))).collect();
        let direct = common::trig_direct(surd_f64(t.a0()), &cos, &sin, x);
        let scale = 1.0 + cos.iter().chain(&sin).map(|v| v.abs()).sum::<f64>() + surd_f64(t.a0()).abs();
        prop_assert!((e.eval_f64(x) - direct).abs() <= 1e-9 * scale);
    }

    #[test]
    fn pfloor_is_dominated(c in prop::collection::vec(surd(), 1..=8), m in 1u32..=9, z in 0i64..=200) {
        let p = SurdPoly::new(c);
        let z = r(z, 100);
        let zs = SurdExpr::from_rational(z.clone());
        for q in [pfloor(&p, m), lower_bound(&p, m).0] {
            for k in 0..p.coeffs().len() {
                prop_assert!((&p.coeff(k) - &SurdExpr::from_rational(q.coeff(k))).sign() >= 0);
            }
            prop_assert!((&p.eval(&zs) - &SurdExpr::from_rational(q.eval(&z))).sign() >= 0);
        }
        let (lb, exempt) = lower_bound(&p, m);
        for k in exempt {
            prop_assert_eq!(SurdExpr::from_rational(lb.coeff(k)), p.coeff(k));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// For a cosine base and constant direction the nonnegative set is `[-min base, +inf)`.
    #[test]
    fn param_shift_interval(c in prop::collection::vec(-6i64..=6, 1..=4)) {
        let base = TrigPoly::new(
            SurdExpr::zero(),
            c.iter().map(|&k| SurdExpr::from_rational(r(k, 1))).collect(),
            Vec::new(),
        );
        prop_assume!(base.degree() > 0);
        let fam = ParamFamily::new(base.clone(), TrigPoly::constant(SurdExpr::one()));
        let iv = YInterval::full();
        let set = nonnegative_set(&fam, &iv).unwrap().expect("large shifts are nonnegative");
        prop_assert!(set.hi.is_none());
        let lo = set.lo.as_ref().expect("bounded below").to_f64();
        let n = 20000;
        let min = (0..=n)
            .map(|i| base.eval_f64(2.0 * std::f64::consts::PI * i as f64 / n as f64))
            .fold(f64::INFINITY, f64::min);
        prop_assert!((lo + min).abs() < 1e-3, "lo {} vs -min {}", lo, -min);
        let cap = AlgebraicEndpoint::Exact { value: r(lo.ceil() as i64 + 3, 1) };
        let finite = ParamInterval { hi: Some(cap), ..set.clone() };
        for a in interior_points(&finite, 5) {
            prop_assert_eq!(set.contains(&a), Some(true));
            prop_assert!(is_nonnegative_at(&fam, &iv, &a).unwrap());
        }
        let below = set.lo.as_ref().unwrap().bounds().0 - r(1, 100);
        prop_assert_eq!(set.contains(&below), Some(false));
        prop_assert!(!is_nonnegative_at(&fam, &iv, &below).unwrap());
    }

    /// Every interior point of a found set passes, and points just outside fail.
    #[test]
    fn param_sets_are_intervals(b in prop::collection::vec(-4i64..=4, 1..=3), d in prop::collection::vec(-4i64..=4, 1..=4)) {
        let sine = |c: &[i64]| TrigPoly::new(
            SurdExpr::zero(),
            Vec::new(),
            c.iter().map(|&k| SurdExpr::from_rational(r(k, 1))).collect(),
        );
        let fam = ParamFamily::new(sine(&b), sine(&d));
        prop_assume!(fam.affine().is_ok());
        let iv = YInterval::full();
        let Ok(set) = nonnegative_set(&fam, &iv) else {
            return Ok(());
        };
        let Some(set) = set else {
            return Ok(());
        };
        let clip = |e: &Option<AlgebraicEndpoint>, v: i64| {
            e.clone().or(Some(AlgebraicEndpoint::Exact { value: r(v, 1) }))
        };
        let bounded = ParamInterval { lo: clip(&set.lo, -50), hi: clip(&set.hi, 50), ..set.clone() };
        for a in interior_points(&bounded, 6) {
            prop_assert!(is_nonnegative_at(&fam, &iv, &a).unwrap(), "{} fails inside {}", a, set);
        }
        if let Some(lo) = &set.lo {
            let out = lo.bounds().0 - r(1, 1000);
            prop_assert!(!is_nonnegative_at(&fam, &iv, &out).unwrap(), "{} passes below {}", out, set);
        }
        if let Some(hi) = &set.hi {
            let out = hi.bounds().1 + r(1, 1000);
            prop_assert!(!is_nonnegative_at(&fam, &iv, &out).unwrap(), "{} passes above {}", out, set);
        }
    }
}

#[test]
fn negative_witnesses_are_negative() {
    let p = Poly::new(vec![r(-1, 100), Q::zero(), r(1, 1)]);
    let (v, _) = decide_poly_nonneg(&p, &YInterval::full());
    assert_eq!(v.status, Status::Negative);
    assert!(common::eval(p.coeffs(), v.witness.as_ref().unwrap()).is_negative());
}
