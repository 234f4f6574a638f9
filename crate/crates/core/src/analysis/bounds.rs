//! Guarantee calculators.
//!
//! Each calculator chains the analysis inequalities into a lower bound on
//! `E[f(ALG)] / OPT` and reports the intermediate constants. Arithmetic is
//! done in double-double precision since some margins are below 1%.

use std::fmt;

use serde::Serialize;
use twofloat::{consts::E, TwoFloat};

use crate::error::{check_probability, Error, Result};

/// Inputs, intermediate constants and resulting guarantee of one calculator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub case: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    /// Lower bound on `E[f(ALG)] / OPT`; zero when the chain breaks down.
    pub guarantee: f64,
    /// The competitive ratio the chain is meant to certify.
    pub claimed_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl BoundReport {
    fn new(case: &'static str, claimed_ratio: f64) -> Self {
        BoundReport {
            case,
            p: None,
            t: None,
            k: None,
            c: None,
            beta: None,
            theta: None,
            gamma: None,
            alpha: None,
            a: None,
            guarantee: 0.0,
            claimed_ratio,
            diagnostic: None,
        }
    }

    /// `guarantee - 1/claimed_ratio`.
    pub fn margin(&self) -> f64 {
        self.guarantee - 1.0 / self.claimed_ratio
    }

    pub fn certifies_claim(&self) -> bool {
        self.margin() > 0.0
    }

    fn finish(mut self, value: TwoFloat, what: &str) -> Self {
        if value > 0.0 {
            self.guarantee = value.hi();
        } else {
            self.guarantee = 0.0;
            self.diagnostic = Some(format!("{what} is not positive ({:.6e})", value.hi()));
        }
        self
    }

    fn fail(mut self, message: String) -> Self {
        self.guarantee = 0.0;
        self.diagnostic = Some(message);
        self
    }

    /// Key/value pairs in display order, skipping absent fields.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("case", self.case.to_string())];
        let floats = [
            ("p", self.p),
            ("t", self.t),
            ("c", self.c),
            ("beta", self.beta),
            ("theta", self.theta),
            ("gamma", self.gamma),
            ("alpha", self.alpha),
            ("a", self.a),
        ];
        if let Some(k) = self.k {
            out.push(("k", k.to_string()));
        }
        out.extend(
            floats
                .into_iter()
                .filter_map(|(key, v)| v.map(|v| (key, v.to_string()))),
        );
        out.push(("guarantee", self.guarantee.to_string()));
        out.push(("claimed_ratio", self.claimed_ratio.to_string()));
        out.push(("margin", self.margin().to_string()));
        if let Some(d) = &self.diagnostic {
            out.push(("diagnostic", d.clone()));
        }
        out
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries = self.entries();
        let width = entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (key, value) in entries {
            writeln!(f, "{key:<width$}  {value}")?;
        }
        Ok(())
    }
}

fn tf(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} = {x} must be positive"
        )))
    }
}

/// Submodular laminar matroids.
///
/// With `β = 2e(1-p)` and `θ = 1 + (1-p)t/p`:
/// `[1/θ - (1-β)³ / (t((1-β)³ - 2β))] · [1 - 2β/(1-β)³] · (1-p)/2`.
pub fn laminar_bound(p: f64, t: f64) -> Result<BoundReport> {
    check_probability(p)?;
    check_positive("t", t)?;
    let mut report = BoundReport::new("laminar", 211.0);
    report.p = Some(p);
    report.t = Some(t);
    let q = 1.0 - tf(p);
    let beta = tf(2.0) * E * q;
    let theta = 1.0 + q * t / tf(p);
    report.beta = Some(beta.hi());
    report.theta = Some(theta.hi());
    let cube = (1.0 - beta).powi(3);
    if beta >= 1.0 || cube <= 2.0 * beta {
        return Ok(report.fail(format!(
            "β = {:.6} leaves (1-β)³ <= 2β; p is too small",
            beta.hi()
        )));
    }
    let weight_term = theta.recip() - cube / (tf(t) * (cube - 2.0 * beta));
    let loss_term = 1.0 - 2.0 * beta / cube;
    if weight_term <= 0.0 {
        return Ok(report.fail(format!(
            "first bracket is not positive ({:.6e}); t is too small",
            weight_term.hi()
        )));
    }
    Ok(report.finish(weight_term * loss_term * q / 2.0, "guarantee"))
}

/// Submodular bipartite vertex-at-a-time matching.
///
/// With `α = p/(1-p)` and `θ = (t+α)/α`: `(1/θ - 1/(t p²)) · p² (1-p) / 3`.
pub fn transversal_bound(p: f64, t: f64) -> Result<BoundReport> {
    check_probability(p)?;
    check_positive("t", t)?;
    let mut report = BoundReport::new("transversal", 95.0);
    report.p = Some(p);
    report.t = Some(t);
    let pp = tf(p);
    let q = 1.0 - pp;
    let alpha = pp / q;
    let theta = (tf(t) + alpha) / alpha;
    report.alpha = Some(alpha.hi());
    report.theta = Some(theta.hi());
    let p2 = pp * pp;
    let bracket = theta.recip() - (tf(t) * p2).recip();
    if bracket <= 0.0 {
        return Ok(report.fail(format!(
            "bracket 1/θ - 1/(t p²) is not positive ({:.6e})",
            bracket.hi()
        )));
    }
    Ok(report.finish(bracket * p2 * q / 3.0, "guarantee"))
}

/// Linear valuations on laminar matroids: a lower bound on the probability
/// that an optimal element survives pruning,
/// `(1-p)(1 - (1-p)/(1 - (1-p)(1+p)²))`.
pub fn linear_laminar_bound(p: f64) -> Result<BoundReport> {
    check_probability(p)?;
    let mut report = BoundReport::new("linear-laminar", 9.6);
    report.p = Some(p);
    let pp = tf(p);
    let q = 1.0 - pp;
    let growth = q * (1.0 + pp) * (1.0 + pp);
    if growth >= 1.0 {
        return Ok(report.fail(format!(
            "(1-p)(1+p)² = {:.6} >= 1; the series diverges",
            growth.hi()
        )));
    }
    Ok(report.finish(q * (1.0 - q / (1.0 - growth)), "guarantee"))
}

/// Submodular intersections of `k` laminar matroids at `p = 1 - c/k`.
///
/// With `β = 2ec/k`, `γ = 1 - 2kβ/(1-β)³` and `a = (1-p)/p`, the best
/// threshold is `t = 1/(√a(√γ - √a))` and the guarantee is
/// `(√γ - √a)² (1-p)/(k+1)`.
pub fn intersection_bound(k: usize, c: f64) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if !(c > 0.0 && c < 0.04) {
        return Err(Error::InvalidParameter(format!(
            "c = {c} must lie in (0, 0.04)"
        )));
    }
    let kf = k as f64;
    let mut report = BoundReport::new("intersection", 1000.0 * kf * (kf + 1.0) / 9.0);
    report.k = Some(k);
    report.c = Some(c);
    let q = tf(c) / kf;
    let p = 1.0 - q;
    let beta = tf(2.0) * E * q;
    let gamma = 1.0 - 2.0 * kf * beta / (1.0 - beta).powi(3);
    let a = q / p;
    report.p = Some(p.hi());
    report.beta = Some(beta.hi());
    report.gamma = Some(gamma.hi());
    report.a = Some(a.hi());
    if gamma <= a {
        return Ok(report.fail(format!(
            "γ = {:.6} does not exceed a = {:.6}",
            gamma.hi(),
            a.hi()
        )));
    }
    let gap = gamma.sqrt() - a.sqrt();
    report.t = Some((a.sqrt() * gap).recip().hi());
    Ok(report.finish(gap * gap * q / (kf + 1.0), "guarantee"))
}
