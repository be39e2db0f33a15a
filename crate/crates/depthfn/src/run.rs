//! Requests, dispatch and report emission.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context as _};
use depthfn_core::assess::{assess_with, AssessOptions, Assessment};
use depthfn_core::betti::depth_series_partial;
use depthfn_core::families::{build_ideal, combine_product, combine_sum, in_a, in_class_c, FamilyReport, PrimeAssignment, SubsetCollection};
use depthfn_core::forest::{classify_forest, spread_forest, SimplicialComplex};
use depthfn_core::graph::{classify_edge_ideal, edge_ideal, spread_edge, Graph};
use depthfn_core::matroid::classify_matroidal;
use depthfn_core::spread::{best_spread, burch_bound, fiber_hilbert_function, rees_cm_status};
use depthfn_core::{CertificateVerdict, Error, FieldSpec, Guards, MonomialIdeal, Verdict};

use crate::corpus::{CorpusSpec, Sweep};
use crate::engine::Engine;
use crate::parse::Document;
use crate::report::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Depth,
    Series,
    Spread,
    ClassifyEdge,
    ClassifyMatroidal,
    ClassifyForest,
    CheckA,
    CheckC,
    Build,
    Combine,
    Corpus,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::Depth,
        Command::Series,
        Command::Spread,
        Command::ClassifyEdge,
        Command::ClassifyMatroidal,
        Command::ClassifyForest,
        Command::CheckA,
        Command::CheckC,
        Command::Build,
        Command::Combine,
        Command::Corpus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Depth => "depth",
            Command::Series => "series",
            Command::Spread => "spread",
            Command::ClassifyEdge => "classify-edge",
            Command::ClassifyMatroidal => "classify-matroidal",
            Command::ClassifyForest => "classify-forest",
            Command::CheckA => "check-A",
            Command::CheckC => "check-C",
            Command::Build => "build",
            Command::Combine => "combine",
            Command::Corpus => "corpus",
        }
    }
}

impl FromStr for Command {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| anyhow!("unknown command {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => bail!("format must be text or json, not {s:?}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CombineOp {
    #[default]
    Sum,
    Product,
}

impl FromStr for CombineOp {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "sum" => Ok(CombineOp::Sum),
            "product" => Ok(CombineOp::Product),
            _ => bail!("operation must be sum or product, not {s:?}"),
        }
    }
}

/// Parses `q` or `fp:P`.
pub fn parse_field(s: &str) -> anyhow::Result<FieldSpec> {
    match s {
        "q" | "Q" => Ok(FieldSpec::Rationals),
        _ => {
            let p = s.strip_prefix("fp:").ok_or_else(|| anyhow!("field must be q or fp:P, not {s:?}"))?;
            let p: u64 = p.parse().with_context(|| format!("bad characteristic in {s:?}"))?;
            Ok(FieldSpec::prime(p)?)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub k_max: u32,
    pub mu_k_max: u32,
    pub field: FieldSpec,
    pub jobs: usize,
    pub format: Format,
    pub guards: Guards,
    pub seed: u64,
    pub assert_cm: bool,
    pub op: CombineOp,
    pub out: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            k_max: 3,
            mu_k_max: 8,
            field: FieldSpec::Rationals,
            jobs: 1,
            format: Format::Text,
            guards: Guards::default(),
            seed: 0,
            assert_cm: false,
            op: CombineOp::Sum,
            out: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Request {
    pub command: Command,
    pub input: String,
    pub options: Options,
}

impl Request {
    pub fn new(command: Command, input: impl Into<String>) -> Self {
        Request { command, input: input.into(), options: Options::default() }
    }

    pub fn with(mut self, f: impl FnOnce(&mut Options)) -> Self {
        f(&mut self.options);
        self
    }
}

struct Runner {
    engine: Engine,
    opts: Options,
}

impl Runner {
    fn assess_opts(&self) -> AssessOptions {
        AssessOptions {
            k_max: self.opts.k_max,
            mu_k_max: self.opts.mu_k_max,
            assert_cm: self.opts.assert_cm,
            guards: self.opts.guards,
        }
    }

    fn assess(&self, ideal: &MonomialIdeal) -> anyhow::Result<Assessment> {
        Ok(assess_with(ideal, &self.assess_opts(), |j| self.engine.proj_dim(j))?)
    }

    /// The input ideal: an explicit ideal, else the edge ideal of a graph,
    /// else the facet ideal of a complex.
    fn ideal(&self, doc: &Document) -> anyhow::Result<MonomialIdeal> {
        if !doc.ideals.is_empty() {
            let ctx = doc.context(self.opts.field)?;
            return Ok(doc.ideal(&ctx, 0)?);
        }
        if !doc.graph.is_empty() {
            return Ok(edge_ideal(&doc.graph()?)?.over_field(self.opts.field)?);
        }
        if !doc.complex.is_empty() {
            return Ok(doc.complex()?.facet_ideal()?.over_field(self.opts.field)?);
        }
        bail!("input holds no ideal, graph or complex")
    }

    fn run(&self, command: Command, input: &str) -> anyhow::Result<(Status, Body, Option<AssessmentJson>)> {
        if command == Command::Corpus {
            let spec: CorpusSpec = if input.trim().is_empty() {
                CorpusSpec::default()
            } else {
                serde_json::from_str(input).context("corpus spec")?
            };
            let sweep =
                Sweep { engine: &self.engine, field: self.opts.field, mu_k_max: self.opts.mu_k_max, out: self.opts.out.clone() };
            let summary = sweep.run(&spec, self.opts.seed, self.opts.k_max)?;
            return Ok((Status::Ok, Body::Corpus(summary), None));
        }
        let doc = Document::parse(input)?;
        let ok = |b| Ok((Status::Ok, b, None));
        match command {
            Command::Depth => {
                let ideal = self.ideal(&doc)?;
                let r = depth_series_partial(&ideal, 1, |j| self.engine.proj_dim(j))?;
                ok(Body::Depth((&r).into()))
            }
            Command::Series => {
                let ideal = self.ideal(&doc)?;
                ok(Body::Assessment((&self.assess(&ideal)?).into()))
            }
            Command::Spread => {
                let ideal = self.ideal(&doc)?;
                let s = best_spread(&ideal, &self.opts.guards, self.opts.mu_k_max)?;
                let fiber = fiber_hilbert_function(&ideal, self.opts.k_max, &self.opts.guards)?;
                ok(Body::Spread(SpreadOut {
                    ideal: (&ideal).into(),
                    spread: (&s).into(),
                    burch_bound: if s.is_exact() { Some(burch_bound(&ideal, &s)?) } else { None },
                    fiber_hilbert: fiber,
                    cm_status: rees_cm_status(&ideal, &self.opts.guards).to_string(),
                }))
            }
            Command::ClassifyEdge => {
                let g = if doc.graph.is_empty() { Graph::from_edge_ideal(&self.ideal(&doc)?)? } else { doc.graph()? };
                let v = classify_edge_ideal(&g)?;
                let stripped = g.strip_isolated();
                let ideal = edge_ideal(&stripped)?.over_field(self.opts.field)?;
                let spread = spread_edge(&stripped)?;
                ok(Body::Edge(EdgeJson::new(&ideal, &v, Some(&spread))))
            }
            Command::ClassifyMatroidal => {
                let ideal = self.ideal(&doc)?;
                let v = match classify_matroidal(&ideal) {
                    Ok(v) => v,
                    Err(Error::NotSquarefree | Error::NotEquigenerated) => {
                        let a = self.assess(&ideal)?;
                        let body = MatroidalJson {
                            ideal: (&ideal).into(),
                            matroidal: false,
                            verdict: Verdict::NotApplicable.to_string(),
                            constant: None,
                            exchange_witness: None,
                            normalized_by: None,
                            d: 0,
                            r: 0,
                            s: 0,
                            factors: None,
                        };
                        return Ok((Status::NotApplicable, Body::Matroidal(body), Some((&a).into())));
                    }
                    Err(e) => return Err(e.into()),
                };
                let body = Body::Matroidal(MatroidalJson::new(&ideal, &v));
                if v.verdict == Verdict::NotApplicable {
                    let a = self.assess(&ideal)?;
                    return Ok((Status::NotApplicable, body, Some((&a).into())));
                }
                ok(body)
            }
            Command::ClassifyForest => {
                let delta = if doc.complex.is_empty() {
                    SimplicialComplex::from_ideal(&self.ideal(&doc)?)?
                } else {
                    doc.complex()?
                };
                let ideal = delta.facet_ideal()?.over_field(self.opts.field)?;
                let v = classify_forest(&delta, &self.opts.guards)?;
                let spread = spread_forest(&delta, &self.opts.guards).ok();
                let body = Body::Forest(ForestJson::new(delta.to_string(), &ideal, &v, spread.as_ref()));
                if v.verdict == Verdict::NotApplicable {
                    let a = self.assess(&ideal)?;
                    return Ok((Status::NotApplicable, body, Some((&a).into())));
                }
                ok(body)
            }
            Command::CheckA => {
                let c = SubsetCollection::new(doc.collection()?)?;
                ok(Body::CheckA(AJson::new(c.to_string(), in_a(&c).as_ref())))
            }
            Command::CheckC => {
                let ideal = self.ideal(&doc)?;
                ok(Body::CheckC(ClassCJson::new(&ideal, &in_class_c(&ideal)?)))
            }
            Command::Build => {
                let c = SubsetCollection::new(doc.collection()?)?;
                let ctx = doc.context(self.opts.field)?;
                let primes = PrimeAssignment::new(ctx.clone(), doc.primes(&ctx)?)?;
                let ideal = build_ideal(&c, &primes)?;
                let trace = in_a(&c);
                let assessment = if ideal.ensure_proper_nonzero().is_ok() { Some(self.assess(&ideal)?) } else { None };
                ok(Body::Build(BuildJson {
                    ideal: (&ideal).into(),
                    membership: AJson::new(c.to_string(), trace.as_ref()),
                    assessment: assessment.as_ref().map(Into::into),
                }))
            }
            Command::Combine => {
                let ctx = doc.context(self.opts.field)?;
                if doc.ideals.len() != 2 {
                    bail!("combine needs exactly two ideals, found {}", doc.ideals.len());
                }
                let left = doc.ideal(&ctx, 0)?;
                let right = doc.ideal(&ctx, 1)?;
                let la = self.assess(&left)?;
                let ra = self.assess(&right)?;
                let family = |i: &MonomialIdeal, a: &Assessment| -> anyhow::Result<FamilyReport> {
                    let constant = match a.verdict {
                        CertificateVerdict::ConstantForAllPowers => true,
                        CertificateVerdict::NotConstant => false,
                        CertificateVerdict::EvidenceOnly => {
                            bail!("constancy of {} is not established; pass --assert-cm if its Rees ring is Cohen-Macaulay", i.render())
                        }
                    };
                    let spread = a.spread.ok_or_else(|| anyhow!("no spread for {}", i.render()))?;
                    Ok(FamilyReport { ideal: i.clone(), cm: a.cm, constant, spread })
                };
                let (lf, rf) = (family(&left, &la)?, family(&right, &ra)?);
                let combined = match self.opts.op {
                    CombineOp::Sum => combine_sum(&lf, &rf)?,
                    CombineOp::Product => combine_product(&lf, &rf)?,
                };
                let check = self.assess(&combined.ideal)?;
                let observed = match check.verdict {
                    CertificateVerdict::ConstantForAllPowers => Some(true),
                    CertificateVerdict::NotConstant => Some(false),
                    CertificateVerdict::EvidenceOnly => None,
                };
                if observed.is_some_and(|o| o != combined.constant) {
                    bail!(Error::InternalInconsistency(format!(
                        "combination rule predicts constant = {} but the computed verdict is {}",
                        combined.constant, check.verdict
                    )));
                }
                ok(Body::Combine(CombineJson {
                    op: match self.opts.op {
                        CombineOp::Sum => "sum".into(),
                        CombineOp::Product => "product".into(),
                    },
                    left: (&la).into(),
                    right: (&ra).into(),
                    combined: CombinedJson {
                        ideal: (&combined.ideal).into(),
                        cm_status: combined.cm.to_string(),
                        constant: combined.constant,
                        spread: (&combined.spread).into(),
                    },
                    check: (&check).into(),
                }))
            }
            Command::Corpus => unreachable!(),
        }
    }
}

/// Runs a request. Errors carry the input position or the guard that tripped.
pub fn run(req: &Request) -> anyhow::Result<Report> {
    if req.options.k_max < 1 {
        bail!("--kmax must be at least 1");
    }
    let runner = Runner { engine: Engine::new(req.options.jobs, req.options.guards)?, opts: req.options.clone() };
    let (status, body, fallback) = runner.run(req.command, &req.input)?;
    Ok(Report {
        command: req.command.name().to_string(),
        field: req.options.field.to_string(),
        status,
        body,
        fallback,
    })
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    }
}
