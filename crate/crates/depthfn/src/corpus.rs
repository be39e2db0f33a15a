//! Seeded random sweeps that compare classifiers with computed depth series
//! and collect monotonicity findings.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use depthfn_core::assess::{assess_with, AssessOptions};
use depthfn_core::graph::{classify_edge_ideal, edge_ideal, Graph};
use depthfn_core::{CertificateVerdict, FieldSpec, Monomial, MonomialIdeal, PolyContext, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::Engine;

/// A sweep description, normally read from JSON. Every field is optional;
/// `{}` describes a sweep with no families.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub k_max: Option<u32>,
    #[serde(default)]
    pub families: Vec<Family>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    /// Erdős–Rényi graphs on `vertices` vertices.
    Graphs {
        count: usize,
        vertices: usize,
        #[serde(default = "half")]
        edge_probability: f64,
    },
    /// Squarefree ideals on `vars` variables with up to `max_gens` random
    /// nonempty supports.
    Squarefree {
        count: usize,
        vars: usize,
        #[serde(default = "five")]
        max_gens: usize,
    },
}

fn half() -> f64 {
    0.5
}

fn five() -> usize {
    5
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub kind: String,
    pub samples: usize,
    /// Samples skipped because a guard tripped or the instance was empty.
    pub skipped: usize,
    pub agreements: usize,
    pub disagreements: usize,
    /// The classifier says not constant but no power up to `k_max` shows it.
    pub unresolved: usize,
    /// `depth S/√J < depth S/J` for some tested power `J`.
    pub radical_violations: usize,
    /// Depth series that go up somewhere.
    pub increases: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub seed: u64,
    pub k_max: u32,
    pub families: Vec<FamilySummary>,
    pub reproducers: Vec<String>,
}

impl Summary {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "k_max: {}", self.k_max);
        if self.families.is_empty() {
            let _ = writeln!(out, "no families");
        }
        for f in &self.families {
            let _ = writeln!(
                out,
                "{}: samples {}, skipped {}, agreements {}, disagreements {}, unresolved {}, radical violations {}, increases {}",
                f.kind, f.samples, f.skipped, f.agreements, f.disagreements, f.unresolved, f.radical_violations, f.increases
            );
        }
        for r in &self.reproducers {
            let _ = writeln!(out, "reproducer: {r}");
        }
        out
    }
}

pub struct Sweep<'a> {
    pub engine: &'a Engine,
    pub field: FieldSpec,
    pub mu_k_max: u32,
    /// Directory for reproducer files; created on the first finding.
    pub out: Option<PathBuf>,
}

impl Sweep<'_> {
    pub fn run(&self, spec: &CorpusSpec, seed: u64, k_max: u32) -> anyhow::Result<Summary> {
        let seed = spec.seed.unwrap_or(seed);
        let k_max = spec.k_max.unwrap_or(k_max);
        let mut summary = Summary { seed, k_max, ..Summary::default() };
        for (index, family) in spec.families.iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
            let fs = match family {
                Family::Graphs { count, vertices, edge_probability } => {
                    anyhow::ensure!((0.0..=1.0).contains(edge_probability), "edge_probability must lie in [0, 1]");
                    self.graphs(index, *count, *vertices, *edge_probability, k_max, &mut rng, &mut summary.reproducers)?
                }
                Family::Squarefree { count, vars, max_gens } => {
                    anyhow::ensure!(*vars >= 1 && *max_gens >= 1, "vars and max_gens must be positive");
                    self.squarefree(index, *count, *vars, *max_gens, k_max, &mut rng, &mut summary.reproducers)?
                }
            };
            summary.families.push(fs);
        }
        Ok(summary)
    }

    fn opts(&self, k_max: u32) -> AssessOptions {
        AssessOptions { k_max, mu_k_max: self.mu_k_max, assert_cm: false, guards: self.engine.guards }
    }

    #[allow(clippy::too_many_arguments)]
    fn graphs(
        &self,
        index: usize,
        count: usize,
        vertices: usize,
        p: f64,
        k_max: u32,
        rng: &mut ChaCha8Rng,
        reproducers: &mut Vec<String>,
    ) -> anyhow::Result<FamilySummary> {
        let mut fs = FamilySummary { kind: "graphs".into(), samples: count, ..FamilySummary::default() };
        for sample in 0..count {
            let mut edges = Vec::new();
            for a in 1..=vertices {
                for b in a + 1..=vertices {
                    if rng.gen_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
            let g = Graph::new(1..=vertices, edges)?.strip_isolated();
            if g.num_edges() == 0 {
                fs.skipped += 1;
                continue;
            }
            let classified = classify_edge_ideal(&g)?;
            let ideal = edge_ideal(&g)?.over_field(self.field)?;
            let evidence = match assess_with(&ideal, &self.opts(k_max), |j| self.engine.proj_dim(j)) {
                Ok(a) => a,
                Err(e) if e.is_guard() => {
                    fs.skipped += 1;
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            match (classified.verdict, evidence.verdict) {
                (Verdict::Constant, CertificateVerdict::NotConstant)
                | (Verdict::NotConstant, CertificateVerdict::ConstantForAllPowers) => {
                    fs.disagreements += 1;
                    let note = format!(
                        "classifier {} but series {:?} gives {}",
                        classified.verdict, evidence.report.series, evidence.verdict
                    );
                    reproducers.push(self.dump(index, sample, "disagreement", &note, &graph_text(&g))?);
                }
                (Verdict::NotConstant, CertificateVerdict::EvidenceOnly) => fs.unresolved += 1,
                _ => fs.agreements += 1,
            }
            if !evidence.report.increases().is_empty() {
                fs.increases += 1;
                let note = format!("depth series {:?} increases", evidence.report.series);
                reproducers.push(self.dump(index, sample, "increase", &note, &graph_text(&g))?);
            }
        }
        Ok(fs)
    }

    #[allow(clippy::too_many_arguments)]
    fn squarefree(
        &self,
        index: usize,
        count: usize,
        vars: usize,
        max_gens: usize,
        k_max: u32,
        rng: &mut ChaCha8Rng,
        reproducers: &mut Vec<String>,
    ) -> anyhow::Result<FamilySummary> {
        let ctx = std::sync::Arc::new(PolyContext::new((1..=vars).map(|i| format!("x{i}")), self.field)?);
        let mut fs = FamilySummary { kind: "squarefree".into(), samples: count, ..FamilySummary::default() };
        for sample in 0..count {
            let m = rng.gen_range(1..=max_gens);
            let gens: Vec<Monomial> = (0..m)
                .map(|_| loop {
                    let support: Vec<usize> = (0..vars).filter(|_| rng.gen_bool(0.5)).collect();
                    if !support.is_empty() {
                        break Monomial::squarefree(vars, support);
                    }
                })
                .collect();
            let ideal = MonomialIdeal::new(ctx.clone(), gens)?;
            let series = match depthfn_core::betti::depth_series_partial(&ideal, k_max.max(2), |j| self.engine.proj_dim(j)) {
                Ok(r) => r,
                Err(e) if e.is_guard() => {
                    fs.skipped += 1;
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let text = format!("vars: {}\nideal: {}", ctx.names().join(" "), ideal.render());
            let mut violated = false;
            for k in 1..=2u32.min(series.series.len() as u32) {
                let power = ideal.power(k)?;
                let radical = power.radical();
                let dr = self.engine.proj_dim(&radical).map(|pd| vars - pd);
                let dr = match dr {
                    Ok(d) => d,
                    Err(e) if e.is_guard() => continue,
                    Err(e) => return Err(e.into()),
                };
                let dj = series.series[k as usize - 1];
                if dr < dj {
                    violated = true;
                    let note = format!("depth of radical {dr} < depth {dj} at power {k}");
                    reproducers.push(self.dump(index, sample, "radical", &note, &text)?);
                }
            }
            if violated {
                fs.radical_violations += 1;
            } else {
                fs.agreements += 1;
            }
            if !series.increases().is_empty() {
                fs.increases += 1;
                let note = format!("depth series {:?} increases", series.series);
                reproducers.push(self.dump(index, sample, "increase", &note, &text)?);
            }
        }
        Ok(fs)
    }

    /// Writes a file the CLI reads back directly and returns its name.
    fn dump(&self, family: usize, sample: usize, what: &str, note: &str, body: &str) -> anyhow::Result<String> {
        let name = format!("family{family}-sample{sample}-{what}.txt");
        if let Some(dir) = &self.out {
            std::fs::create_dir_all(dir)?;
            std::fs::write(Path::new(dir).join(&name), format!("# {note}\n{body}\n"))?;
        }
        Ok(name)
    }
}

fn graph_text(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(a, b)| format!("{a}-{b}")).collect();
    format!("graph: {}", edges.join(", "))
}
