//! Deterministic summaries of engine runs, rendered as text or JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::graded_rep::{BettiBreakdown, DegreeBreakdown};
use crate::mapping_torus::{lower_bound_violations, Recursion};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Recurse,
    Koszul,
    Crosscheck,
}

impl Engine {
    pub fn tag(self) -> &'static str {
        match self {
            Engine::Recurse => "recurse",
            Engine::Koszul => "koszul",
            Engine::Crosscheck => "crosscheck",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Agree,
    Disagree,
}

/// One degree of one mapping-torus step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageDegree {
    pub degree: usize,
    /// Invariants of the monodromy in this degree of the previous stage.
    pub invariants: usize,
    /// Coinvariants of the monodromy in the degree below.
    pub coinvariants: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReport {
    /// 1-based step number; the step splits off operator `step` of the input.
    pub step: usize,
    pub degrees: Vec<StageDegree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub engine: Engine,
    pub input: String,
    pub n_ops: usize,
    /// `betti[k] = dim H^k` of the Borel construction, up to the top degree.
    pub betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recurse_betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub koszul_betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stages: Option<Vec<StageReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<BTreeMap<usize, DegreeBreakdown>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    /// Degrees where `betti[k] < binom(n, k)`; only checked for inputs whose
    /// degree-0 piece is one-dimensional and trivial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound_violations: Option<Vec<usize>>,
    pub warnings: Vec<String>,
    /// Restricts the rendered output to one total degree.
    #[serde(skip)]
    pub degree_filter: Option<usize>,
}

/// Dense list of dimensions `0..=max key`.
pub fn dense(map: &BTreeMap<usize, usize>) -> Vec<usize> {
    match map.keys().next_back() {
        Some(&top) => (0..=top)
            .map(|k| map.get(&k).copied().unwrap_or(0))
            .collect(),
        None => Vec::new(),
    }
}

pub fn stage_reports<F: Scalar>(rec: &Recursion<F>) -> Vec<StageReport> {
    rec.steps
        .iter()
        .enumerate()
        .map(|(i, step)| StageReport {
            step: i + 1,
            degrees: step
                .pieces
                .iter()
                .map(|(&degree, p)| StageDegree {
                    degree,
                    invariants: p.inv_part.dim(),
                    coinvariants: p.coinv_part.dim(),
                    dim: p.inv_part.dim() + p.coinv_part.dim(),
                })
                .collect(),
        })
        .collect()
}

impl Report {
    pub fn new(engine: Engine, input: &str, n_ops: usize, betti: &BTreeMap<usize, usize>) -> Self {
        Self {
            engine,
            input: input.to_string(),
            n_ops,
            betti: dense(betti),
            recurse_betti: None,
            koszul_betti: None,
            stages: None,
            breakdown: None,
            verdict: None,
            lower_bound_violations: None,
            warnings: Vec::new(),
            degree_filter: None,
        }
    }

    pub fn with_lower_bound(mut self, connected: bool, betti: &BTreeMap<usize, usize>) -> Self {
        if connected {
            self.lower_bound_violations = Some(lower_bound_violations(self.n_ops, betti));
        }
        self
    }

    pub fn with_breakdown(mut self, b: &BettiBreakdown) -> Self {
        self.breakdown = Some(b.degrees.clone());
        self
    }

    fn shows(&self, k: usize) -> bool {
        self.degree_filter.is_none_or(|d| d == k)
    }

    fn filtered(&self) -> Self {
        let Some(k) = self.degree_filter else {
            return self.clone();
        };
        let pick = |v: &Vec<usize>| vec![v.get(k).copied().unwrap_or(0)];
        let mut out = self.clone();
        out.betti = pick(&self.betti);
        out.recurse_betti = self.recurse_betti.as_ref().map(pick);
        out.koszul_betti = self.koszul_betti.as_ref().map(pick);
        out.breakdown = self.breakdown.as_ref().map(|b| {
            b.iter()
                .filter(|(&d, _)| d == k)
                .map(|(&d, v)| (d, v.clone()))
                .collect()
        });
        out.stages = self.stages.as_ref().map(|stages| {
            stages
                .iter()
                .map(|s| StageReport {
                    step: s.step,
                    degrees: s
                        .degrees
                        .iter()
                        .filter(|d| d.degree == k)
                        .cloned()
                        .collect(),
                })
                .collect()
        });
        out
    }

    pub fn to_json(&self) -> String {
        let filtered = self.filtered();
        let mut value = serde_json::to_value(&filtered).expect("report serializes");
        if let Some(k) = self.degree_filter {
            value["degree"] = k.into();
        }
        let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "engine: {}", self.engine.tag());
        let _ = writeln!(out, "input: {}", self.input);
        let _ = writeln!(out, "operators: {}", self.n_ops);
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if let Some(stages) = &self.stages {
            for s in stages {
                let _ = writeln!(out, "step {}:", s.step);
                for d in s.degrees.iter().filter(|d| self.shows(d.degree)) {
                    let _ = writeln!(
                        out,
                        "  H^{}: invariants {} + coinvariants {} = {}",
                        d.degree, d.invariants, d.coinvariants, d.dim
                    );
                }
            }
        }
        if let Some(b) = &self.breakdown {
            let _ = writeln!(out, "breakdown (p,q):");
            for (&k, d) in b.iter().filter(|(&k, _)| self.shows(k)) {
                let parts: Vec<String> = d
                    .summands
                    .iter()
                    .map(|s| format!("({},{})={}", s.p, s.q, s.dim))
                    .collect();
                let _ = writeln!(out, "  k={k}: {} total={}", parts.join(" "), d.total);
            }
        }
        let line = |label: &str, v: &[usize], out: &mut String| {
            let parts: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(k, _)| self.shows(*k))
                .map(|(k, d)| format!("k={k}:{d}"))
                .collect();
            let _ = writeln!(out, "{label}: {}", parts.join(" "));
        };
        if let Some(r) = &self.recurse_betti {
            line("recurse betti", r, &mut out);
        }
        if let Some(k) = &self.koszul_betti {
            line("koszul betti", k, &mut out);
        }
        line("betti", &self.betti, &mut out);
        if let Some(v) = &self.lower_bound_violations {
            if v.is_empty() {
                let _ = writeln!(out, "lower bound binom(n,k): ok");
            } else {
                let ks: Vec<String> = v.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    out,
                    "lower bound binom(n,k): violated at k={}",
                    ks.join(",")
                );
            }
        }
        if let Some(v) = self.verdict {
            let _ = writeln!(
                out,
                "verdict: {}",
                match v {
                    Verdict::Agree => "agree",
                    Verdict::Disagree => "disagree",
                }
            );
        }
        out
    }
}
