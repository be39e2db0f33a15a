//! Serializable reports and their plain-text rendering.

use std::fmt::Write as _;

use depthfn_core::assess::Assessment;
use depthfn_core::betti::DepthReport;
use depthfn_core::families::{ClassCResult, Trace};
use depthfn_core::forest::ForestVerdict;
use depthfn_core::graph::{ComponentWitness, EdgeVerdict};
use depthfn_core::matroid::MatroidalVerdict;
use depthfn_core::{Certificate, MonomialIdeal, PolyContext, SpreadResult, Verdict};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    NotApplicable,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotApplicable => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub status: Status,
    #[serde(flatten)]
    pub body: Body,
    /// Series evidence for inputs outside a classifier's hypotheses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback: Option<AssessmentJson>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Body {
    Depth(DepthJson),
    Assessment(AssessmentJson),
    Spread(SpreadOut),
    Edge(EdgeJson),
    Matroidal(MatroidalJson),
    Forest(ForestJson),
    CheckA(AJson),
    CheckC(ClassCJson),
    Build(BuildJson),
    Combine(CombineJson),
    Corpus(crate::corpus::Summary),
}

/// An ideal as its variables and canonical generator list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub gens: Vec<String>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(i: &MonomialIdeal) -> Self {
        let ctx = i.ctx();
        IdealJson { vars: ctx.names().to_vec(), gens: i.gens().iter().map(|g| g.render(ctx)).collect() }
    }
}

impl IdealJson {
    pub fn text(&self) -> String {
        if self.gens.is_empty() {
            "0".into()
        } else {
            self.gens.join(", ")
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GuardHitJson {
    pub power: u32,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DepthJson {
    pub ideal: IdealJson,
    pub depth: usize,
    pub proj_dim: usize,
    pub series: Vec<usize>,
    pub constant_up_to: usize,
    pub increases: Vec<usize>,
    pub field: String,
    pub guards_hit: Vec<GuardHitJson>,
    pub limit: Option<usize>,
}

impl From<&DepthReport> for DepthJson {
    fn from(r: &DepthReport) -> Self {
        DepthJson {
            ideal: (&r.ideal).into(),
            depth: r.depth,
            proj_dim: r.proj_dim,
            series: r.series.clone(),
            constant_up_to: r.constant_up_to(),
            increases: r.increases(),
            field: r.field.to_string(),
            guards_hit: r.guards_hit.iter().map(|h| GuardHitJson { power: h.power, message: h.message.clone() }).collect(),
            limit: r.limit_claim.map(|c| c.limit),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpreadJson {
    pub value: usize,
    pub method: String,
    pub confidence: String,
}

impl From<&SpreadResult> for SpreadJson {
    fn from(s: &SpreadResult) -> Self {
        SpreadJson { value: s.value, method: s.method.to_string(), confidence: s.confidence.to_string() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub verdict: String,
    pub method: String,
    pub cm_basis: String,
    pub n_minus_ell: usize,
    pub depth1: usize,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            verdict: c.verdict.to_string(),
            method: c.method.to_string(),
            cm_basis: c.cm_basis.to_string(),
            n_minus_ell: c.n_minus_ell,
            depth1: c.depth1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AssessmentJson {
    #[serde(flatten)]
    pub depth: DepthJson,
    pub cm_status: String,
    pub spread: Option<SpreadJson>,
    pub certificate: Option<CertificateJson>,
    pub verdict: String,
    pub notes: Vec<String>,
}

impl From<&Assessment> for AssessmentJson {
    fn from(a: &Assessment) -> Self {
        AssessmentJson {
            depth: (&a.report).into(),
            cm_status: a.cm.to_string(),
            spread: a.spread.as_ref().map(Into::into),
            certificate: a.certificate.as_ref().map(Into::into),
            verdict: a.verdict.to_string(),
            notes: a.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpreadOut {
    pub ideal: IdealJson,
    #[serde(flatten)]
    pub spread: SpreadJson,
    pub burch_bound: Option<usize>,
    pub fiber_hilbert: Vec<usize>,
    pub cm_status: String,
}

fn verdict_constant(v: Verdict) -> Option<bool> {
    v.as_bool()
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeComponentJson {
    pub vertices: Vec<usize>,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeJson {
    pub ideal: IdealJson,
    pub verdict: String,
    pub constant: Option<bool>,
    pub stripped: Vec<usize>,
    pub components: Vec<EdgeComponentJson>,
    /// The first component that fails, when the verdict is not constant.
    pub witness: Option<String>,
    pub factorization: Option<Vec<[Vec<usize>; 2]>>,
    pub spread: Option<SpreadJson>,
}

impl EdgeJson {
    pub fn new(ideal: &MonomialIdeal, v: &EdgeVerdict, spread: Option<&SpreadResult>) -> Self {
        let components: Vec<EdgeComponentJson> =
            v.components.iter().map(|c| EdgeComponentJson { vertices: c.vertices.clone(), witness: c.witness.to_string() }).collect();
        let witness = v
            .components
            .iter()
            .find(|c| !matches!(c.witness, ComponentWitness::CompleteBipartite { .. }))
            .map(|c| c.witness.to_string());
        EdgeJson {
            ideal: ideal.into(),
            verdict: v.verdict.to_string(),
            constant: verdict_constant(v.verdict),
            stripped: v.stripped.clone(),
            components,
            witness,
            factorization: v.factorization.as_ref().map(|f| f.iter().map(|(a, b)| [a.clone(), b.clone()]).collect()),
            spread: spread.map(Into::into),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizedJson {
    pub gcd: String,
    pub dropped: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExchangeJson {
    pub u: String,
    pub v: String,
    pub var: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatroidalJson {
    pub ideal: IdealJson,
    pub matroidal: bool,
    pub verdict: String,
    pub constant: Option<bool>,
    pub exchange_witness: Option<ExchangeJson>,
    pub normalized_by: Option<NormalizedJson>,
    pub d: usize,
    pub r: usize,
    pub s: usize,
    pub factors: Option<Vec<Vec<String>>>,
}

impl MatroidalJson {
    pub fn new(ideal: &MonomialIdeal, v: &MatroidalVerdict) -> Self {
        let ctx: &PolyContext = ideal.ctx();
        let names = |vs: &[usize]| vs.iter().map(|&i| ctx.name(i).to_string()).collect::<Vec<_>>();
        MatroidalJson {
            ideal: ideal.into(),
            matroidal: v.matroidal,
            verdict: v.verdict.to_string(),
            constant: verdict_constant(v.verdict),
            exchange_witness: v.witness.as_ref().map(|w| ExchangeJson {
                u: w.u.render(ctx),
                v: w.v.render(ctx),
                var: ctx.name(w.var).to_string(),
            }),
            normalized_by: v
                .normalization
                .as_ref()
                .map(|n| NormalizedJson { gcd: n.gcd.render(ctx), dropped: names(&n.dropped) }),
            d: v.d,
            r: v.r,
            s: v.s,
            factors: v.factors.as_ref().map(|fs| fs.iter().map(|f| names(f)).collect()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ForestComponentJson {
    pub facets: Vec<Vec<usize>>,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ForestJson {
    pub complex: String,
    pub ideal: IdealJson,
    pub verdict: String,
    pub constant: Option<bool>,
    pub applicable: bool,
    pub failed_hypotheses: Vec<String>,
    pub components: Vec<ForestComponentJson>,
    pub witness: Option<String>,
    pub factorization: Option<Vec<Vec<Vec<usize>>>>,
    pub spread: Option<SpreadJson>,
}

impl ForestJson {
    pub fn new(complex: String, ideal: &MonomialIdeal, v: &ForestVerdict, spread: Option<&SpreadResult>) -> Self {
        ForestJson {
            complex,
            ideal: ideal.into(),
            verdict: v.verdict.to_string(),
            constant: verdict_constant(v.verdict),
            applicable: v.applicable,
            failed_hypotheses: v.failed_hypotheses.iter().map(ToString::to_string).collect(),
            components: v
                .components
                .iter()
                .map(|c| ForestComponentJson { facets: c.facets.clone(), witness: c.witness() })
                .collect(),
            witness: v.components.iter().find(|c| !c.passes).map(|c| c.witness()),
            factorization: v.presentation.clone(),
            spread: spread.map(Into::into),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AJson {
    pub collection: String,
    pub accepted: bool,
    pub labels: Vec<usize>,
    pub presentation: Option<String>,
    pub dropped_empty_members: bool,
    pub trace: Vec<String>,
}

impl AJson {
    pub fn new(collection: String, trace: Option<&Trace>) -> Self {
        AJson {
            collection,
            accepted: trace.is_some(),
            labels: trace.map(Trace::labels).unwrap_or_default(),
            presentation: trace.map(Trace::presentation),
            dropped_empty_members: trace.is_some_and(Trace::dropped_any),
            trace: trace.map(Trace::lines).unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassCJson {
    pub ideal: IdealJson,
    pub accepted: bool,
    pub blocks: Vec<Vec<Vec<String>>>,
    pub presentation: Option<String>,
    pub failure: Option<String>,
}

impl ClassCJson {
    pub fn new(ideal: &MonomialIdeal, r: &ClassCResult) -> Self {
        let ctx = ideal.ctx();
        let blocks: Vec<Vec<Vec<String>>> = r
            .blocks
            .iter()
            .map(|b| b.iter().map(|p| p.iter().map(|&v| ctx.name(v).to_string()).collect()).collect())
            .collect();
        let presentation = r.accepted.then(|| {
            blocks
                .iter()
                .map(|b| b.iter().map(|p| format!("({})", p.join(", "))).collect::<String>())
                .collect::<Vec<_>>()
                .join(" + ")
        });
        ClassCJson { ideal: ideal.into(), accepted: r.accepted, blocks, presentation, failure: r.failure.clone() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BuildJson {
    pub ideal: IdealJson,
    pub membership: AJson,
    pub assessment: Option<AssessmentJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CombinedJson {
    pub ideal: IdealJson,
    pub cm_status: String,
    pub constant: bool,
    pub spread: SpreadJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct CombineJson {
    pub op: String,
    pub left: AssessmentJson,
    pub right: AssessmentJson,
    pub combined: CombinedJson,
    pub check: AssessmentJson,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "field: {}", self.field);
        match &self.body {
            Body::Depth(d) => depth_text(&mut out, d),
            Body::Assessment(a) => assessment_text(&mut out, a),
            Body::Spread(s) => {
                let _ = writeln!(out, "ideal: {}", s.ideal.text());
                let _ = writeln!(out, "analytic spread: {} ({}, {})", s.spread.value, s.spread.method, s.spread.confidence);
                let _ = writeln!(out, "fiber hilbert function: {:?}", s.fiber_hilbert);
                if let Some(b) = s.burch_bound {
                    let _ = writeln!(out, "n - l: {b}");
                }
                let _ = writeln!(out, "rees ring: {}", s.cm_status);
            }
            Body::Edge(e) => {
                let _ = writeln!(out, "ideal: {}", e.ideal.text());
                if !e.stripped.is_empty() {
                    let _ = writeln!(out, "isolated vertices removed: {:?}", e.stripped);
                }
                for c in &e.components {
                    let _ = writeln!(out, "component {:?}: {}", c.vertices, c.witness);
                }
                if let Some(s) = &e.spread {
                    let _ = writeln!(out, "analytic spread: {} ({})", s.value, s.method);
                }
                let _ = writeln!(out, "verdict: {}", e.verdict);
            }
            Body::Matroidal(m) => {
                let _ = writeln!(out, "ideal: {}", m.ideal.text());
                let _ = writeln!(out, "matroidal: {}", m.matroidal);
                if let Some(w) = &m.exchange_witness {
                    let _ = writeln!(out, "exchange fails for u = {}, v = {}, variable {}", w.u, w.v, w.var);
                }
                if let Some(n) = &m.normalized_by {
                    let _ = writeln!(out, "normalized by gcd {} dropping {:?}", n.gcd, n.dropped);
                    let _ = writeln!(out, "d = {}, r = {}, s = {}", m.d, m.r, m.s);
                }
                if let Some(f) = &m.factors {
                    let primes: Vec<String> = f.iter().map(|p| format!("({})", p.join(", "))).collect();
                    let _ = writeln!(out, "factors: {}", primes.join(""));
                }
                let _ = writeln!(out, "verdict: {}", m.verdict);
            }
            Body::Forest(f) => {
                let _ = writeln!(out, "complex: {}", f.complex);
                let _ = writeln!(out, "ideal: {}", f.ideal.text());
                if !f.applicable {
                    let _ = writeln!(out, "failed hypotheses: {}", f.failed_hypotheses.join(", "));
                }
                for c in &f.components {
                    let _ = writeln!(out, "component {:?}: {}", c.facets, c.witness);
                }
                if let Some(s) = &f.spread {
                    let _ = writeln!(out, "analytic spread: {} ({})", s.value, s.method);
                }
                let _ = writeln!(out, "verdict: {}", f.verdict);
            }
            Body::CheckA(a) => a_text(&mut out, a),
            Body::CheckC(c) => {
                let _ = writeln!(out, "ideal: {}", c.ideal.text());
                let _ = writeln!(out, "in class C: {}", c.accepted);
                if let Some(p) = &c.presentation {
                    let _ = writeln!(out, "presentation: {p}");
                }
                if let Some(f) = &c.failure {
                    let _ = writeln!(out, "reason: {f}");
                }
            }
            Body::Build(b) => {
                let _ = writeln!(out, "ideal: {}", b.ideal.text());
                a_text(&mut out, &b.membership);
                if let Some(a) = &b.assessment {
                    assessment_text(&mut out, a);
                }
            }
            Body::Combine(c) => {
                let _ = writeln!(out, "operation: {}", c.op);
                let _ = writeln!(out, "left: {} -> {}", c.left.depth.ideal.text(), c.left.verdict);
                let _ = writeln!(out, "right: {} -> {}", c.right.depth.ideal.text(), c.right.verdict);
                let _ = writeln!(out, "combined: {}", c.combined.ideal.text());
                let _ = writeln!(out, "predicted constant: {}", c.combined.constant);
                let _ = writeln!(out, "predicted spread: {}", c.combined.spread.value);
                let _ = writeln!(out, "rees ring: {}", c.combined.cm_status);
                let _ = writeln!(out, "check:");
                assessment_text(&mut out, &c.check);
            }
            Body::Corpus(s) => out.push_str(&s.to_text()),
        }
        if let Some(a) = &self.fallback {
            let _ = writeln!(out, "fallback:");
            assessment_text(&mut out, a);
        }
        let _ = writeln!(out, "status: {}", serde_json::to_value(self.status).expect("status").as_str().unwrap_or(""));
        out
    }
}

fn depth_text(out: &mut String, d: &DepthJson) {
    let _ = writeln!(out, "ideal: {}", d.ideal.text());
    let _ = writeln!(out, "depth: {}", d.depth);
    let _ = writeln!(out, "projective dimension: {}", d.proj_dim);
    if d.series.len() > 1 {
        let _ = writeln!(out, "series: {:?}", d.series);
        let _ = writeln!(out, "constant up to k = {}", d.constant_up_to);
    }
    if !d.increases.is_empty() {
        let _ = writeln!(out, "depth increases after powers {:?}", d.increases);
    }
    for h in &d.guards_hit {
        let _ = writeln!(out, "stopped at power {}: {}", h.power, h.message);
    }
}

fn assessment_text(out: &mut String, a: &AssessmentJson) {
    depth_text(out, &a.depth);
    let _ = writeln!(out, "rees ring: {}", a.cm_status);
    if let Some(s) = &a.spread {
        let _ = writeln!(out, "analytic spread: {} ({}, {})", s.value, s.method, s.confidence);
    }
    if let Some(c) = &a.certificate {
        let _ = writeln!(out, "certificate: {} (depth {} vs n - l = {})", c.verdict, c.depth1, c.n_minus_ell);
    }
    for n in &a.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "verdict: {}", a.verdict);
}

fn a_text(out: &mut String, a: &AJson) {
    let _ = writeln!(out, "collection: {}", a.collection);
    let _ = writeln!(out, "in A: {}", a.accepted);
    if let Some(p) = &a.presentation {
        let _ = writeln!(out, "presentation: {p}");
    }
    for line in &a.trace {
        let _ = writeln!(out, "  {line}");
    }
}
