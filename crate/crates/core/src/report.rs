//! Knot tables and batch reports.
//!
//! Table rows read `name;genus;entries;known_ua`, where `entries` lists the
//! Seifert matrix row by row, separated by commas, and `known_ua` may be
//! empty. Blank lines and lines starting with `#` are skipped.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bounds_report, BoundsOptions, BoundsReport, SourcedCertificate};
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::seifert::SeifertMatrix;

pub const CONVENTION: &str = "Bl(x, y) = conj(x)^T (t - 1) (tV - V^T)^-1 y mod Z[t,1/t]; M = tV - V^T";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub genus: usize,
    pub seifert: SeifertMatrix,
    pub known_ua: Option<usize>,
}

pub fn parse_table(path: &Path) -> Result<Vec<KnotRecord>> {
    parse_table_str(&std::fs::read_to_string(path)?)
}

pub fn parse_table_str(text: &str) -> Result<Vec<KnotRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_row(line, i + 1)?);
    }
    Ok(out)
}

fn parse_row(line: &str, lineno: usize) -> Result<KnotRecord> {
    let bad = |message: String| Error::TableParse { line: lineno, message };
    let fields: Vec<&str> = line.split(';').map(str::trim).collect();
    if fields.len() != 4 {
        return Err(bad(format!("expected 4 fields separated by ';', found {}", fields.len())));
    }
    let name = fields[0];
    if name.is_empty() {
        return Err(bad("empty name".into()));
    }
    let genus: usize = fields[1].parse().map_err(|_| bad(format!("bad genus {:?}", fields[1])))?;
    let entries = if fields[2].is_empty() {
        Vec::new()
    } else {
        fields[2]
            .split(',')
            .map(|e| e.trim().parse().map_err(|_| bad(format!("bad entry {:?}", e.trim()))))
            .collect::<Result<Vec<_>>>()?
    };
    let n = 2 * genus;
    if entries.len() != n * n {
        return Err(bad(format!("genus {genus} needs {} entries, found {}", n * n, entries.len())));
    }
    let known_ua = match fields[3] {
        "" => None,
        s => Some(s.parse().map_err(|_| bad(format!("bad known_ua {s:?}")))?),
    };
    let v = IntMatrix::square_from_entries(n, entries)?;
    let seifert = SeifertMatrix::new(v).map_err(|e| Error::TableNotSeifert { line: lineno, message: e.to_string() })?;
    Ok(KnotRecord { name: name.to_string(), genus, seifert, known_ua })
}

pub fn render_record(r: &KnotRecord) -> String {
    let entries: Vec<String> = r.seifert.matrix().entries().iter().map(|x| x.to_string()).collect();
    let ua = r.known_ua.map(|x| x.to_string()).unwrap_or_default();
    format!("{};{};{};{}", r.name, r.genus, entries.join(","), ua)
}

pub fn render_table(records: &[KnotRecord]) -> String {
    records.iter().map(|r| render_record(r) + "\n").collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub convention: String,
    pub reports: Vec<BoundsReport>,
}

impl ReportDocument {
    pub fn new(reports: Vec<BoundsReport>) -> Self {
        ReportDocument {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            convention: CONVENTION.to_string(),
            reports,
        }
    }

    pub fn has_errors(&self) -> bool {
        self.reports.iter().any(|r| r.error.is_some())
    }

    /// Pretty-printed JSON with fields in declaration order and a trailing
    /// newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub bounds: BoundsOptions,
    /// Directory searched for `<name>.cert` files.
    pub certs_dir: Option<PathBuf>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

/// Computes a report for every record, in input order. Per-knot failures
/// land in the report's `error` field and never stop the batch.
pub fn run_report(records: &[KnotRecord], options: &ReportOptions) -> Result<ReportDocument> {
    let work = || records.par_iter().map(|r| one_report(r, options)).collect::<Vec<_>>();
    let reports = match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(work),
        None => work(),
    };
    Ok(ReportDocument::new(reports))
}

fn one_report(r: &KnotRecord, options: &ReportOptions) -> BoundsReport {
    let certs = match load_certificates(&r.name, options.certs_dir.as_deref()) {
        Ok(c) => c,
        Err(e) => return BoundsReport::failed(&r.name, r.known_ua, e.to_string()),
    };
    match bounds_report(&r.name, &r.seifert, &certs, &options.bounds) {
        Ok(mut rep) => {
            rep.known_ua = r.known_ua;
            rep
        }
        Err(e) => BoundsReport::failed(&r.name, r.known_ua, e.to_string()),
    }
}

fn load_certificates(name: &str, dir: Option<&Path>) -> Result<Vec<SourcedCertificate>> {
    let Some(dir) = dir else {
        return Ok(Vec::new());
    };
    let file = format!("{name}.cert");
    let path = dir.join(&file);
    if !path.exists() {
        return Ok(Vec::new());
    }
    let certificate = Certificate::read(&path).map_err(|e| Error::Parse(format!("{file}: {e}")))?;
    Ok(vec![SourcedCertificate { source: format!("file:{file}"), certificate }])
}

pub fn emit_json(doc: &ReportDocument, path: &Path) -> Result<()> {
    std::fs::write(path, doc.to_json())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: &str = include_str!("../fixtures/knots.csv");

    #[test]
    fn parse_rows() {
        let recs = parse_table_str("3_1;1;-1,1,0,-1;\n0_1;0;;\n").unwrap();
        assert_eq!(recs[0].seifert.matrix(), &IntMatrix::from_rows(&[[-1, 1], [0, -1]]));
        assert_eq!(recs[0].known_ua, None);
        assert_eq!(recs[1].seifert, SeifertMatrix::unknot());
        let err = parse_table_str("# header\n\nbad;1;1,0,0,1;\n").unwrap_err();
        assert!(matches!(err, Error::TableNotSeifert { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn parse_errors_carry_lines() {
        for (text, line) in [("a;1;1,2;", 1), ("x;0;;\na;1;1,2,3", 2), ("a;z;;", 1), ("a;1;1,x,0,1;", 1), (";0;;", 1)] {
            match parse_table_str(text) {
                Err(Error::TableParse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn bundled_table_round_trips() {
        let recs = parse_table_str(TABLE).unwrap();
        assert_eq!(recs.len(), 7);
        assert_eq!(parse_table_str(&render_table(&recs)).unwrap(), recs);
    }

    #[test]
    fn empty_report() {
        let doc = run_report(&[], &ReportOptions::default()).unwrap();
        let json = doc.to_json();
        assert!(json.contains("\"reports\": []"));
        assert!(json.starts_with("{\n  \"tool\": \"knotbound\""));
    }

    #[test]
    fn json_field_order() {
        let recs = parse_table_str("3_1;1;-1,1,0,-1;1").unwrap();
        let doc = run_report(&recs, &ReportOptions::default()).unwrap();
        let json = doc.to_json();
        assert!(json.contains("\"delta\": \"t - 1 + t^-1\""));
        let keys = ["\"name\"", "\"delta\"", "\"sigma_minus1\"", "\"nakanishi_lb\"", "\"lower\"", "\"upper\"", "\"upper_certified\"", "\"n_plus\"", "\"n_minus\"", "\"status\""];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn unreadable_certificate_is_a_per_knot_error() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("3_1.cert"), "A: t +\nS: 1; 0\n").unwrap();
        let recs = parse_table_str("3_1;1;-1,1,0,-1;\n4_1;1;1,1,0,-1;").unwrap();
        let opts = ReportOptions { certs_dir: Some(dir.path().to_path_buf()), ..ReportOptions::default() };
        let doc = run_report(&recs, &opts).unwrap();
        assert!(doc.reports[0].error.as_deref().unwrap().contains("3_1.cert"));
        assert!(doc.reports[1].error.is_none());
        assert!(doc.has_errors());
    }
}
