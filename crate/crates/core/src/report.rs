//! Proof reports: the input, the normalized polynomial, the verdict and its
//! certificate, in human text or versioned JSON.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{ProverError, VerifyError};
use crate::exactnum::rational;
use crate::expr::parse_trig;
use crate::prover::{decide_trig, verify_proof, CertKind, Proof, ProveOptions, Status};
use crate::trig::{TrigPoly, XInterval};

pub const SCHEMA: &str = "trigsturm.report/v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofReport {
    pub schema: String,
    pub tool_version: String,
    pub input: String,
    pub normalized: String,
    pub polynomial: TrigPoly,
    pub proof: Proof,
    pub elapsed_us: u64,
}

impl ProofReport {
    pub fn status(&self) -> Status {
        self.proof.verdict.status
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, VerifyError> {
        let r: Self = serde_json::from_str(s).map_err(|e| VerifyError(format!("bad report: {e}")))?;
        if r.schema != SCHEMA {
            return Err(VerifyError(format!("unknown schema `{}`", r.schema)));
        }
        Ok(r)
    }

    /// Re-checks the report from its serialized data alone.
    pub fn recheck(&self) -> Result<(), VerifyError> {
        if let Ok(t) = parse_trig(&self.input) {
            if t != self.polynomial {
                return Err(VerifyError("input does not parse to the stored polynomial".into()));
            }
        }
        let t = parse_trig(&self.normalized).map_err(|e| VerifyError(e.to_string()))?;
        if t != self.polynomial {
            return Err(VerifyError("normalized text differs from the stored polynomial".into()));
        }
        verify_proof(&self.proof, &self.polynomial)
    }

    pub fn to_text(&self) -> String {
        let p = &self.proof;
        let c = &p.certificate;
        let mut s = String::new();
        let _ = writeln!(s, "input:       {}", self.input);
        let _ = writeln!(s, "normalized:  {}", self.normalized);
        let _ = writeln!(s, "interval:    x in {}", p.interval);
        let exactness = if p.covering.exact { "exact" } else { "outer covering" };
        let _ = writeln!(s, "y-range:     {} ({exactness})", p.covering.outer);
        let path = match c.kind {
            CertKind::Poly => "polynomial".to_string(),
            CertKind::Cp => "cosine part B(y)".to_string(),
            CertKind::Sp => "sine cofactor A(y)".to_string(),
            CertKind::Mixed => "squared resolvent A^2(1-y^2) - B^2".to_string(),
            CertKind::Pfloor => {
                let m = c.pfloor.as_ref().map(|d| d.m).unwrap_or(0);
                format!("rational lower bound in z = y + 1, m = {m} (tried {:?})", p.attempts)
            }
        };
        let _ = writeln!(s, "path:        {path}");
        if let Some(t) = &c.target {
            let var = if c.kind == CertKind::Pfloor { "z" } else { "y" };
            let _ = writeln!(s, "decided:     {}", t.fmt_var(var));
        }
        if let Some(m) = &c.mixed {
            let _ = writeln!(s, "B(y):        {}", m.b.fmt_var("y"));
            let _ = writeln!(s, "A(y):        {}", m.a.fmt_var("y"));
        }
        let (v0, v1) = c.endpoint_variations();
        let _ = writeln!(
            s,
            "sturm chain: {} polynomials, variations {v0} at {} and {v1} at {}",
            c.chain.len(),
            c.lo,
            c.hi
        );
        let _ = writeln!(s, "root boxes:  {}", c.root_boxes.len());
        for b in &c.root_boxes {
            let (l, h) = b.to_f64();
            let _ = writeln!(s, "  ({}, {}]  ~ ({l:.9}, {h:.9}]", b.lo, b.hi);
        }
        let signs: Vec<String> = c
            .samples
            .iter()
            .map(|x| format!("{}:{}", rational::to_decimal(&x.point, 6), sign_char(x.sign)))
            .collect();
        let _ = writeln!(s, "samples:     {}", signs.join(" "));
        for n in &c.notes {
            let _ = writeln!(s, "note:        {n}");
        }
        let _ = write!(s, "verdict:     {}", p.verdict.status);
        if let Some(w) = &p.verdict.witness {
            let _ = write!(s, " (negative at y = {w} ~ {:.9})", rational::to_f64(w));
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "time:        {:.1} ms", self.elapsed_us as f64 / 1e3);
        s
    }
}

fn sign_char(s: i8) -> char {
    match s {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

/// Decides `t` on `iv` and wraps the proof in a report.
pub fn prove_report(
    input: &str,
    t: &TrigPoly,
    iv: &XInterval,
    opts: &ProveOptions,
) -> Result<ProofReport, ProverError> {
    let start = Instant::now();
    let proof = decide_trig(t, iv, opts)?;
    Ok(ProofReport {
        schema: SCHEMA.into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        input: input.into(),
        normalized: t.render(),
        polynomial: t.clone(),
        proof,
        elapsed_us: start.elapsed().as_micros() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(src: &str) -> ProofReport {
        let t = parse_trig(src).unwrap();
        prove_report(src, &t, &XInterval::full(), &ProveOptions::default()).unwrap()
    }

    #[test]
    fn json_round_trip_and_recheck() {
        let r = report("7/5 + cos(x) + sin(x) + 2*sin(2x) + sin(3x)");
        assert_eq!(r.status(), Status::Nonnegative);
        let back = ProofReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        back.recheck().unwrap();
        let text = r.to_text();
        assert!(text.contains("root boxes:  2"));
        assert!(text.contains("verdict:     nonnegative"));
    }

    #[test]
    fn tampering_is_caught() {
        let r = report("sin(x) + sin(2x)/2 + (sin(3x) + 3*sin(4x)/4)/sqrt(2)");
        let mut bad = r.clone();
        bad.normalized = "sin(x)".into();
        bad.input = "sin(x)".into();
        assert!(bad.recheck().is_err());
        let json = r.to_json().replace(SCHEMA, "other/v0");
        assert!(ProofReport::from_json(&json).is_err());
    }

    #[test]
    fn numbers_are_exact_text() {
        let r = report("1/3 + cos(x)");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let lo = &v["proof"]["certificate"]["lo"];
        assert_eq!(lo, "-1");
        assert_eq!(r.status(), Status::Negative);
    }
}
