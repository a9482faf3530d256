//! Lower and upper bounds on the algebraic unknotting number of one knot.

use serde::Serialize;

use crate::certificate::{
    assemble_block_certificate, search_rank_one_certificate, verify_certificate_with, Certificate, CheckedBound,
    DEFAULT_RADIUS,
};
use crate::error::Result;
use crate::orders::{nakanishi_lower_bound, DEFAULT_PRIMES};
use crate::seifert::SeifertMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsOptions {
    pub primes: Vec<u64>,
    pub degree_bound: u32,
    pub height_bound: u32,
    pub radius: u32,
    /// Search for a certificate when none of the supplied ones closes the gap.
    pub search: bool,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions {
            primes: DEFAULT_PRIMES.to_vec(),
            degree_bound: 2,
            height_bound: 2,
            radius: DEFAULT_RADIUS,
            search: true,
        }
    }
}

/// A certificate together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourcedCertificate {
    pub source: String,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    Interval,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Exact => "exact",
            Status::Interval => "interval",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub name: String,
    pub delta: String,
    pub sigma_minus1: i64,
    pub nakanishi_lb: usize,
    pub lower: usize,
    pub upper: usize,
    pub upper_certified: bool,
    pub n_plus: Option<usize>,
    pub n_minus: Option<usize>,
    pub status: Status,
    /// Which of `nakanishi`, `signature`, `alexander` attain `lower`.
    pub lower_sources: Vec<&'static str>,
    /// `span(Δ) + 1`, a theoretical bound that carries no certificate.
    pub generic_upper: usize,
    /// Origin of the certificate realizing a certified upper bound, or "none".
    pub certificate_source: String,
    pub certificate: Option<String>,
    pub failures: Vec<String>,
    pub known_ua: Option<usize>,
    pub error: Option<String>,
}

impl BoundsReport {
    /// A report for a knot whose invariants could not be computed.
    pub fn failed(name: &str, known_ua: Option<usize>, error: String) -> Self {
        BoundsReport {
            name: name.to_string(),
            delta: String::new(),
            sigma_minus1: 0,
            nakanishi_lb: 0,
            lower: 0,
            upper: 0,
            upper_certified: false,
            n_plus: None,
            n_minus: None,
            status: Status::Interval,
            lower_sources: Vec::new(),
            generic_upper: 0,
            certificate_source: "none".into(),
            certificate: None,
            failures: Vec::new(),
            known_ua,
            error: Some(error),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }
}

/// Combines the Nakanishi, signature and `Δ ≠ 1` lower bounds with the
/// smallest verified certificate. Supplied certificates are verified first;
/// if none of them meets the lower bound and `options.search` is set, a
/// block-sum or rank-one certificate is searched for.
pub fn bounds_report(
    name: &str,
    v: &SeifertMatrix,
    certs: &[SourcedCertificate],
    options: &BoundsOptions,
) -> Result<BoundsReport> {
    let delta = v.alexander_polynomial()?;
    let sigma = v.signature_at_minus_one();
    let nakanishi = nakanishi_lower_bound(&v.alexander_presentation(), &options.primes)?;
    let signature_lb = sigma.unsigned_abs().div_ceil(2) as usize;
    let alexander_lb = usize::from(!delta.is_one());
    let lower = nakanishi.max(signature_lb).max(alexander_lb);
    let lower_sources = [("nakanishi", nakanishi), ("signature", signature_lb), ("alexander", alexander_lb)]
        .into_iter()
        .filter(|&(_, x)| lower > 0 && x == lower)
        .map(|(s, _)| s)
        .collect();

    let mut failures = Vec::new();
    let mut best: Option<(CheckedBound, &SourcedCertificate)> = None;
    for c in certs {
        match verify_certificate_with(v, &c.certificate, options.radius) {
            Ok(b) => {
                if best.as_ref().is_none_or(|(old, _)| b.n < old.n) {
                    best = Some((b, c));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", c.source)),
        }
    }
    let searched;
    if options.search && best.as_ref().is_none_or(|(b, _)| b.n > lower) {
        searched = search(v, options);
        if let Some(c) = &searched {
            match verify_certificate_with(v, &c.certificate, options.radius) {
                Ok(b) if best.as_ref().is_none_or(|(old, _)| b.n < old.n) => best = Some((b, c)),
                Ok(_) => {}
                Err(e) => failures.push(format!("{}: {e}", c.source)),
            }
        }
    }

    let generic_upper = delta.span() as usize + 1;
    let (upper, upper_certified) = match &best {
        Some((b, _)) if b.n <= generic_upper => (b.n, true),
        _ => (generic_upper, false),
    };
    let status = if upper_certified && upper == lower { Status::Exact } else { Status::Interval };
    Ok(BoundsReport {
        name: name.to_string(),
        delta: delta.to_string(),
        sigma_minus1: sigma,
        nakanishi_lb: nakanishi,
        lower,
        upper,
        upper_certified,
        n_plus: best.as_ref().map(|(b, _)| b.n_plus),
        n_minus: best.as_ref().map(|(b, _)| b.n_minus),
        status,
        lower_sources,
        generic_upper,
        certificate_source: best.as_ref().map_or_else(|| "none".to_string(), |(_, c)| c.source.clone()),
        certificate: best.as_ref().map(|(_, c)| c.certificate.to_string()),
        failures,
        known_ua: None,
        error: None,
    })
}

fn search(v: &SeifertMatrix, options: &BoundsOptions) -> Option<SourcedCertificate> {
    let (d, h) = (options.degree_bound, options.height_bound);
    if let Some(c) = assemble_block_certificate(v, d, h) {
        return Some(SourcedCertificate { source: "search:block-sum".into(), certificate: c });
    }
    search_rank_one_certificate(v, d, h).map(|c| {
        let source = if c.size() == 0 { "trivial" } else { "search:rank-one" };
        SourcedCertificate { source: source.into(), certificate: c }
    })
}
