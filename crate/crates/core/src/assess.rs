//! The full constancy assessment of one ideal: depth series, Rees ring
//! status, analytic spread, certificate and final verdict.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::betti::{depth_series_partial, proj_dim, DepthReport, Guards};
use crate::error::Result;
use crate::ideal::MonomialIdeal;
use crate::spread::{
    best_spread, certify_constant, final_verdict, rees_cm_status, Certificate, CertificateVerdict, ReesCmStatus,
    SpreadResult,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assessment {
    pub report: DepthReport,
    pub cm: ReesCmStatus,
    /// `None` when no spread method succeeded; see `notes`.
    pub spread: Option<SpreadResult>,
    pub certificate: Option<Certificate>,
    pub verdict: CertificateVerdict,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssessOptions {
    pub k_max: u32,
    /// Highest power used by generator-growth spread estimates.
    pub mu_k_max: u32,
    /// Treat the Rees ring as Cohen–Macaulay when no class guarantees it.
    pub assert_cm: bool,
    pub guards: Guards,
}

impl Default for AssessOptions {
    fn default() -> Self {
        AssessOptions { k_max: 3, mu_k_max: 8, assert_cm: false, guards: Guards::default() }
    }
}

pub fn assess(ideal: &MonomialIdeal, opts: &AssessOptions) -> Result<Assessment> {
    let guards = opts.guards;
    assess_with(ideal, opts, |j| proj_dim(j, &guards))
}

/// [`assess`] with a caller-supplied projective dimension routine.
pub fn assess_with<F>(ideal: &MonomialIdeal, opts: &AssessOptions, pd: F) -> Result<Assessment>
where
    F: FnMut(&MonomialIdeal) -> Result<usize>,
{
    let mut report = depth_series_partial(ideal, opts.k_max, pd)?;
    let mut notes = Vec::new();
    let mut cm = rees_cm_status(ideal, &opts.guards);
    if cm == ReesCmStatus::Unknown && opts.assert_cm {
        cm = ReesCmStatus::AssertedByUser;
    }
    let spread = match best_spread(ideal, &opts.guards, opts.mu_k_max) {
        Ok(s) => Some(s),
        Err(e) => {
            notes.push(format!("analytic spread unavailable: {e}"));
            None
        }
    };
    let certificate = match spread {
        Some(s) if s.is_exact() => Some(certify_constant(ideal, cm, report.depth, &s)?),
        Some(s) => {
            notes.push(format!("analytic spread {} is only a lower bound; no certificate", s.value));
            None
        }
        None => None,
    };
    report.limit_claim = certificate.as_ref().and_then(Certificate::limit_claim);
    let verdict = final_verdict(certificate.as_ref(), &report);
    Ok(Assessment { report, cm, spread, certificate, verdict, notes })
}
