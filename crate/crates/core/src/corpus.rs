//! Named reproduction cases with their expected outcomes.

use std::cmp::Ordering;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactnum::rational::{self, int, rat, Rational};
use crate::exactnum::SurdExpr;
use crate::paramsolve::{maximal_interval, AlgebraicEndpoint, EndpointKind, ParamFamily, ParamInterval};
use crate::prover::{decide_trig, verify_proof, Proof, ProveOptions, Status};
use crate::trig::{cosine_poly, q, sine_poly, TrigPoly, XInterval, YInterval};

/// One way of posing a case; the first variant meeting the expectation wins.
#[derive(Clone, Debug)]
pub struct Variant {
    pub label: String,
    pub poly: TrigPoly,
    pub interval: XInterval,
    pub options: ProveOptions,
}

#[derive(Clone, Debug)]
pub enum EndpointSpec {
    Unbounded,
    Exact(Rational),
    /// Box must contain this surd.
    Surd(SurdExpr),
    Approx { value: f64, tol: f64 },
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum CaseInput {
    Prove {
        variants: Vec<Variant>,
        expect: Status,
        /// Rational coefficients must be kept exactly by the lower bound.
        expect_exemption: bool,
        /// Each root box must lie inside the matching range.
        expect_boxes: Option<Vec<(Rational, Rational)>>,
        /// An inconclusive result passes with a warning.
        soft: bool,
    },
    Param {
        family: ParamFamily,
        y_interval: YInterval,
        seed: Rational,
        lo: EndpointSpec,
        hi: EndpointSpec,
        hi_kind: Option<EndpointKind>,
        /// Breakpoints near these values must lie strictly inside.
        absorbed: Vec<f64>,
    },
}

#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    pub description: String,
    pub input: CaseInput,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub observed: String,
    /// Label of the variant that decided the outcome.
    pub variant: Option<String>,
    pub warning: Option<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

fn inv_sqrt(k: u64) -> SurdExpr {
    SurdExpr::sqrt(k).inverse_monomial().expect("nonzero")
}

fn sin_term(k: usize, c: SurdExpr) -> TrigPoly {
    TrigPoly::sin_term(k, c)
}

fn sum(ts: impl IntoIterator<Item = TrigPoly>) -> TrigPoly {
    ts.into_iter().fold(TrigPoly::zero(), |a, b| &a + &b)
}

pub fn c1() -> TrigPoly {
    cosine_poly(q(5, 1), &[q(4, 1), q(3, 1), q(4, 1)])
}

pub fn c2() -> TrigPoly {
    cosine_poly(q(7, 1), &[q(6, 1), q(5, 1), q(4, 1), q(3, 1), q(5, 1)])
}

/// `4 sin x + 3 sin 2x + 2 sin 3x + 0.8 sin 4x`, the sign that matches the
/// printed expansion.
pub fn s1() -> TrigPoly {
    sine_poly(&[q(4, 1), q(3, 1), q(2, 1), q(4, 5)])
}

/// `4 sin x + 3 sin 2x + 2 sin 3x - 0.8 sin 4x` as printed.
pub fn s1_printed() -> TrigPoly {
    sine_poly(&[q(4, 1), q(3, 1), q(2, 1), q(-4, 5)])
}

pub fn s2() -> TrigPoly {
    sine_poly(&[q(8, 1), q(7, 1), q(6, 1), q(5, 1), q(4, 1)])
}

/// Printed form plus `2 sin 3x`, which the printed expansion requires.
pub fn t1() -> TrigPoly {
    &t1_printed() + &sin_term(3, q(2, 1))
}

pub fn t1_printed() -> TrigPoly {
    TrigPoly::new(
        q(6, 1),
        vec![q(6, 1), q(0, 1), q(-2, 1), q(-1, 1)],
        vec![q(6, 1), q(6, 1)],
    )
}

pub fn t2() -> TrigPoly {
    &cosine_poly(q(7, 5), &[q(1, 1)]) + &sine_poly(&[q(1, 1), q(2, 1), q(1, 1)])
}

pub fn s3() -> TrigPoly {
    v1(2)
}

pub fn s4() -> TrigPoly {
    v1(3)
}

/// `Σ_{k=1}^{n} sin(kx)/(k+1)`.
pub fn harmonic_sine(n: usize) -> TrigPoly {
    sum((1..=n).map(|k| sin_term(k, q(1, k as i64 + 1))))
}

/// `Σ_{k=1}^{n} sin(kx)/(k+1) - 44/1000 sin(freq·x)`.
pub fn s5(n: usize, freq: usize) -> TrigPoly {
    &harmonic_sine(n) + &sin_term(freq, q(-44, 1000))
}

/// `Σ_{k=1}^{n} (sin kx + cos kx)/(k+1) + 1/2`.
pub fn mixed_sum(n: usize) -> TrigPoly {
    let cos: Vec<SurdExpr> = (1..=n).map(|k| q(1, k as i64 + 1)).collect();
    &harmonic_sine(n) + &cosine_poly(q(1, 2), &cos)
}

/// `sin((2k-1)x) ± (2k-1)/(2k) sin(2kx)`.
pub fn psi(k: usize, plus: bool) -> TrigPoly {
    let c = q(2 * k as i64 - 1, 2 * k as i64);
    let c = if plus { c } else { -c };
    &sin_term(2 * k - 1, SurdExpr::one()) + &sin_term(2 * k, c)
}

/// `Σ_{k=1}^{m} psi(k)/√k`.
pub fn v1(m: usize) -> TrigPoly {
    sum((1..=m).map(|k| psi(k, true).scale(&inv_sqrt(k as u64))))
}

/// `v1(n/2)` for even `n`, else `v1((n-1)/2) + sin(nx)/√((n+1)/2)`.
pub fn v2(n: usize) -> TrigPoly {
    if n.is_multiple_of(2) {
        v1(n / 2)
    } else {
        &v1((n - 1) / 2) + &sin_term(n, inv_sqrt((n as u64).div_ceil(2)))
    }
}

/// `Σ_{j=1}^{count} (1/√j - c) psi_j`.
pub fn theta(count: usize, c: &SurdExpr, plus: bool) -> TrigPoly {
    sum((1..=count).map(|j| psi(j, plus).scale(&(&inv_sqrt(j as u64) - c))))
}

fn full_variant(label: &str, t: TrigPoly) -> Variant {
    Variant {
        label: label.into(),
        poly: t,
        interval: XInterval::full(),
        options: ProveOptions::default(),
    }
}

fn prove(name: &str, description: &str, variants: Vec<Variant>) -> Case {
    Case {
        name: name.into(),
        description: description.into(),
        input: CaseInput::Prove {
            variants,
            expect: Status::Nonnegative,
            expect_exemption: false,
            expect_boxes: None,
            soft: false,
        },
    }
}

fn cos_sine_param(base: &[i64], dir: &[i64]) -> ParamFamily {
    let f = |c: &[i64]| sine_poly(&c.iter().map(|&k| q(k, 1)).collect::<Vec<_>>());
    ParamFamily::new(f(base), f(dir))
}

/// Every case, in name order.
pub fn cases() -> Vec<Case> {
    let mut out = vec![
        prove("C1", "5 + 4 cos x + 3 cos 2x + 4 cos 3x", vec![full_variant("as printed", c1())]),
        prove("C2", "7 + 6 cos x + 5 cos 2x + 4 cos 3x + 3 cos 4x + 5 cos 5x", vec![full_variant("as printed", c2())]),
        prove("S1", "4 sin x + 3 sin 2x + 2 sin 3x + 0.8 sin 4x", vec![full_variant("+0.8", s1())]),
        prove("S1-printed", "4 sin x + 3 sin 2x + 2 sin 3x - 0.8 sin 4x", vec![full_variant("-0.8", s1_printed())]),
        prove("S2", "8 sin x + 7 sin 2x + 6 sin 3x + 5 sin 4x + 4 sin 5x", vec![full_variant("as printed", s2())]),
        prove("T1", "6 + 6 cos x + 6 sin x - 2 cos 3x + 6 sin 2x - cos 4x + 2 sin 3x", vec![full_variant("with 2 sin 3x", t1())]),
        prove("S3", "v1(2)", vec![full_variant("as printed", s3())]),
        prove("S4", "v1(3)", vec![full_variant("as printed", s4())]),
    ];
    // the printed form without 2 sin 3x dips below zero
    let mut t1p = prove(
        "T1-printed",
        "6 + 6 cos x + 6 sin x - 2 cos 3x + 6 sin 2x - cos 4x",
        vec![full_variant("as printed", t1_printed())],
    );
    if let CaseInput::Prove { expect, .. } = &mut t1p.input {
        *expect = Status::Negative;
    }
    out.push(t1p);
    out.push(Case {
        name: "T2".into(),
        description: "7/5 + cos x + sin x + 2 sin 2x + sin 3x".into(),
        input: CaseInput::Prove {
            variants: vec![full_variant("as printed", t2())],
            expect: Status::Nonnegative,
            expect_exemption: false,
            expect_boxes: Some(vec![(rat(345, 1000), rat(346, 1000)), (rat(948, 1000), rat(949, 1000))]),
            soft: false,
        },
    });
    out.push(prove(
        "S5-n4",
        "sum_{k<=4} sin(kx)/(k+1) - 0.044 sin 6x",
        vec![full_variant("sin 6x", s5(4, 6))],
    ));
    for n in [6, 8, 10] {
        out.push(prove(
            &format!("S5-n{n}"),
            &format!("sum_{{k<={n}}} sin(kx)/(k+1) - 0.044 sin(freq x)"),
            vec![
                full_variant(&format!("freq 2n+2 = {}", 2 * n + 2), s5(n, 2 * n + 2)),
                full_variant(&format!("freq n+2 = {}", n + 2), s5(n, n + 2)),
            ],
        ));
    }
    for n in (2..=18).step_by(2) {
        out.push(prove(
            &format!("mixed-n{n}"),
            &format!("sum_{{k<={n}}} (sin kx + cos kx)/(k+1) + 1/2"),
            vec![full_variant("as printed", mixed_sum(n))],
        ));
    }
    for n in 3..=30 {
        let mut v = full_variant("m = 9", v2(n));
        v.options.m = Some(9);
        out.push(Case {
            name: format!("vietoris-n{n}"),
            description: format!("v2({n}) with m = 9"),
            input: CaseInput::Prove {
                variants: vec![v],
                expect: Status::Nonnegative,
                expect_exemption: n == 7,
                expect_boxes: None,
                soft: false,
            },
        });
    }
    let theta_case = |name: &str, count: usize, c: SurdExpr, lo: Rational, hi: Rational| {
        let iv = XInterval::new(lo, hi).expect("valid interval");
        let opts = ProveOptions {
            cover_width: rat(1, 10_000),
            ..ProveOptions::default()
        };
        let variants = [("psi with minus", false), ("psi with plus", true)]
            .into_iter()
            .map(|(label, plus)| Variant {
                label: label.into(),
                poly: theta(count, &c, plus).derivative(),
                interval: iv.clone(),
                options: opts.clone(),
            })
            .collect();
        Case {
            name: name.into(),
            description: format!("derivative of theta_{count} on {iv}"),
            input: CaseInput::Prove {
                variants,
                expect: Status::Nonnegative,
                expect_exemption: false,
                expect_boxes: None,
                soft: true,
            },
        }
    };
    out.push(theta_case("theta4-I3", 4, inv_sqrt(5), rat(9, 64), rat(1, 2)));
    out.push(theta_case("theta15-I4", 15, q(1, 4), rat(1, 2), rat(3, 4)));

    let one_plus_half_root3 = &SurdExpr::one() + &SurdExpr::term(rat(1, 2), 3);
    let param = |name: &str, desc: &str, family, y_interval, seed, lo, hi, hi_kind, absorbed| Case {
        name: String::from(name),
        description: String::from(desc),
        input: CaseInput::Param {
            family,
            y_interval,
            seed,
            lo,
            hi,
            hi_kind,
            absorbed,
        },
    };
    out.push(param(
        "S8",
        "2 sin x + sin 2x + a sin 3x",
        cos_sine_param(&[2, 1], &[0, 0, 1]),
        YInterval::full(),
        int(1),
        EndpointSpec::Exact(int(0)),
        EndpointSpec::Surd(one_plus_half_root3),
        Some(EndpointKind::Discriminant),
        vec![],
    ));
    out.push(param(
        "S9",
        "2 sin x + sin 2x + a sin 3x + sin 4x",
        cos_sine_param(&[2, 1, 0, 1], &[0, 0, 1]),
        YInterval::full(),
        rat(3, 2),
        EndpointSpec::Exact(rat(4, 3)),
        EndpointSpec::Approx { value: 1.881648914, tol: 1e-9 },
        Some(EndpointKind::Discriminant),
        vec![],
    ));
    out.push(param(
        "S10",
        "36 sin x + 18 sin 2x + 28 sin 3x + 21 sin 4x + a sin 5x",
        cos_sine_param(&[36, 18, 28, 21], &[0, 0, 0, 0, 1]),
        YInterval::full(),
        int(24),
        EndpointSpec::Exact(int(0)),
        EndpointSpec::Approx { value: 31.513, tol: 1e-3 },
        Some(EndpointKind::Discriminant),
        vec![4.282],
    ));
    let s11 = cos_sine_param(&[4, 3, 2, 1], &[1, 1, 1, 1, 1]);
    out.push(param(
        "S11-half-I",
        "sum_{k<=5} (a+5-k) sin kx on [0, pi/2]",
        s11.clone(),
        YInterval::new(int(0), int(1)).expect("valid"),
        int(0),
        EndpointSpec::Exact(rat(-4, 3)),
        EndpointSpec::Approx { value: 28.98537710, tol: 1e-8 },
        None,
        vec![],
    ));
    out.push(param(
        "S11-full-I",
        "sum_{k<=5} (a+5-k) sin kx on [0, pi]",
        s11,
        YInterval::full(),
        int(1),
        EndpointSpec::Exact(int(0)),
        EndpointSpec::Approx { value: 4.1864302648, tol: 1e-8 },
        None,
        vec![],
    ));
    out.sort_by(|a, b| natural_cmp(&a.name, &b.name));
    out
}

pub fn case(name: &str) -> Option<Case> {
    cases().into_iter().find(|c| c.name.eq_ignore_ascii_case(name))
}

/// Orders embedded digit runs numerically, so `n9` precedes `n10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, String)> {
        let mut out: Vec<(bool, String)> = Vec::new();
        for c in s.chars() {
            let d = c.is_ascii_digit();
            match out.last_mut() {
                Some((kind, run)) if *kind == d => run.push(c),
                _ => out.push((d, c.to_string())),
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let o = match (x.0, y.0) {
            (true, true) => {
                let (p, q) = (x.1.trim_start_matches('0'), y.1.trim_start_matches('0'));
                p.len().cmp(&q.len()).then_with(|| p.cmp(q))
            }
            _ => x.1.cmp(&y.1),
        };
        if o != Ordering::Equal {
            return o;
        }
    }
    ca.len().cmp(&cb.len())
}

fn run_variant(v: &Variant) -> Result<Proof, String> {
    let proof = decide_trig(&v.poly, &v.interval, &v.options).map_err(|e| e.to_string())?;
    verify_proof(&proof, &v.poly).map_err(|e| format!("certificate re-check: {e}"))?;
    Ok(proof)
}

fn describe(p: &Proof) -> String {
    let c = &p.certificate;
    let mut s = format!("{}", p.verdict.status);
    if let Some(d) = &c.pfloor {
        s.push_str(&format!(" (m = {})", d.m));
    }
    if !c.root_boxes.is_empty() {
        s.push_str(&format!(", {} root box(es)", c.root_boxes.len()));
    }
    s
}

fn run_prove(
    variants: &[Variant],
    expect: Status,
    expect_exemption: bool,
    expect_boxes: &Option<Vec<(Rational, Rational)>>,
    soft: bool,
) -> (bool, String, Option<String>, Option<String>, Vec<String>) {
    let mut notes = Vec::new();
    let mut last = None;
    for v in variants {
        match run_variant(v) {
            Err(e) => {
                notes.push(format!("{}: error: {e}", v.label));
                last = Some((v.label.clone(), format!("error: {e}")));
            }
            Ok(p) => {
                let mut ok = p.verdict.status == expect;
                let exempt = p.certificate.pfloor.as_ref().is_some_and(|d| !d.exempt.is_empty());
                if expect_exemption && !exempt {
                    ok = false;
                    notes.push(format!("{}: rational-coefficient exemption not used", v.label));
                }
                if exempt {
                    notes.push(format!("{}: rational coefficients kept exactly", v.label));
                }
                if let Some(want) = expect_boxes {
                    let got = &p.certificate.root_boxes;
                    let inside = got.len() == want.len()
                        && got.iter().zip(want).all(|(b, (l, h))| b.within(l, h));
                    if !inside {
                        ok = false;
                        notes.push(format!("{}: root boxes do not match", v.label));
                    }
                }
                notes.push(format!("{}: {}", v.label, describe(&p)));
                if ok {
                    return (true, describe(&p), Some(v.label.clone()), None, notes);
                }
                last = Some((v.label.clone(), describe(&p)));
            }
        }
    }
    let (label, observed) = last.unwrap_or_default();
    if soft {
        let w = format!("no variant reached {expect}; reported as inconclusive");
        return (true, format!("inconclusive ({observed})"), Some(label), Some(w), notes);
    }
    (false, observed, Some(label), None, notes)
}

fn endpoint_ok(spec: &EndpointSpec, got: &Option<AlgebraicEndpoint>) -> bool {
    match (spec, got) {
        (EndpointSpec::Unbounded, None) => true,
        (EndpointSpec::Exact(r), Some(e)) => e.as_rational() == Some(r),
        (EndpointSpec::Surd(s), Some(e)) => {
            let (l, h) = e.bounds();
            let below = (s - &SurdExpr::from_rational(l.clone())).sign() >= 0;
            let above = (&SurdExpr::from_rational(h.clone()) - s).sign() >= 0;
            below && above
        }
        (EndpointSpec::Approx { value, tol }, Some(e)) => {
            let (l, h) = e.bounds();
            (rational::to_f64(l) - value).abs() <= *tol && (rational::to_f64(h) - value).abs() <= *tol
        }
        _ => false,
    }
}

fn spec_text(s: &EndpointSpec) -> String {
    match s {
        EndpointSpec::Unbounded => "inf".into(),
        EndpointSpec::Exact(r) => r.to_string(),
        EndpointSpec::Surd(s) => s.to_string(),
        EndpointSpec::Approx { value, tol } => format!("{value} +- {tol:e}"),
    }
}

fn absorbed_ok(iv: &ParamInterval, near: f64) -> bool {
    iv.breakpoints.iter().any(|b| {
        let v = b.value.to_f64();
        let inside = iv.contains(b.value.bounds().0) == Some(true)
            && iv.contains(b.value.bounds().1) == Some(true);
        (v - near).abs() < 1e-3 && inside
    })
}

/// Runs one case and checks it against its expectation.
pub fn run_case(c: &Case) -> Outcome {
    let start = Instant::now();
    let (passed, expected, observed, variant, warning, notes) = match &c.input {
        CaseInput::Prove {
            variants,
            expect,
            expect_exemption,
            expect_boxes,
            soft,
        } => {
            let (ok, obs, var, warn, notes) =
                run_prove(variants, *expect, *expect_exemption, expect_boxes, *soft);
            let mut exp = expect.to_string();
            if *expect_exemption {
                exp.push_str(" with exemption");
            }
            if let Some(b) = expect_boxes {
                exp.push_str(&format!(", {} root box(es)", b.len()));
            }
            (ok, exp, obs, var, warn, notes)
        }
        CaseInput::Param {
            family,
            y_interval,
            seed,
            lo,
            hi,
            hi_kind,
            absorbed,
        } => {
            let exp = format!("[{}, {}]", spec_text(lo), spec_text(hi));
            match maximal_interval(family, y_interval, seed) {
                Err(e) => (false, exp, format!("error: {e}"), None, None, Vec::new()),
                Ok(iv) => {
                    let mut notes = vec![format!(
                        "{} breakpoints, {} cells tested",
                        iv.breakpoints.len(),
                        iv.cells.len()
                    )];
                    let mut ok = endpoint_ok(lo, &iv.lo) && endpoint_ok(hi, &iv.hi);
                    if let Some(k) = hi_kind {
                        if iv.hi_kind != *k {
                            ok = false;
                            notes.push(format!("upper end is {:?}, expected {k:?}", iv.hi_kind));
                        }
                    }
                    for &a in absorbed {
                        if absorbed_ok(&iv, a) {
                            notes.push(format!("breakpoint near {a} lies inside the interval"));
                        } else {
                            ok = false;
                            notes.push(format!("no interior breakpoint near {a}"));
                        }
                    }
                    if let Some(h) = &iv.hi {
                        notes.push(format!("upper end {h}"));
                    }
                    (ok, exp, iv.to_string(), None, None, notes)
                }
            }
        }
    };
    Outcome {
        name: c.name.clone(),
        passed,
        expected,
        observed,
        variant,
        warning,
        notes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs the given cases in parallel; results come back in name order.
pub fn run_cases(cs: &[Case]) -> Vec<Outcome> {
    let mut out: Vec<Outcome> = cs.par_iter().map(run_case).collect();
    out.sort_by(|a, b| natural_cmp(&a.name, &b.name));
    out
}

pub fn run_corpus() -> Vec<Outcome> {
    run_cases(&cases())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_match_parsed_text() {
        let p = |s: &str| crate::expr::parse_trig(s).unwrap();
        assert_eq!(c1(), p("5 + 4*cos(x) + 3*cos(2x) + 4*cos(3x)"));
        assert_eq!(s3(), p("sin(x) + sin(2x)/2 + (sin(3x) + 3*sin(4x)/4)/sqrt(2)"));
        assert_eq!(s4(), &s3() + &p("(sin(5x) + 5/6*sin(6x))/sqrt(3)"));
        assert_eq!(v2(4), s3());
        assert_eq!(v2(3), p("sin(x) + sin(2x)/2 + sin(3x)/sqrt(2)"));
        assert_eq!(s5(4, 6), p("sin(x)/2 + sin(2x)/3 + sin(3x)/4 + sin(4x)/5 - 0.044 sin(6x)"));
        assert_eq!(mixed_sum(2), p("1/2 + (sin(x) + cos(x))/2 + (sin(2x) + cos(2x))/3"));
    }

    #[test]
    fn natural_order() {
        let mut v = vec!["vietoris-n10", "vietoris-n9", "S11-full-I", "S8", "C1"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, ["C1", "S8", "S11-full-I", "vietoris-n9", "vietoris-n10"]);
    }

    #[test]
    fn names_are_unique() {
        let cs = cases();
        let mut names: Vec<_> = cs.iter().map(|c| c.name.clone()).collect();
        names.dedup();
        assert_eq!(names.len(), cs.len());
        assert!(case("vietoris-n7").is_some());
    }

    #[test]
    fn small_cases_pass() {
        for name in ["C1", "C2", "S1", "S2", "T1", "T2", "S3", "S4", "S8"] {
            let o = run_case(&case(name).unwrap());
            assert!(o.passed, "{o:?}");
        }
    }
}
