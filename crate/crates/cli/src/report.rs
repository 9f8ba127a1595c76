use std::collections::BTreeMap;

use serde::Serialize;

use classop::coupling::{ReducedMatrixElement, ScanRow};
use classop::export::{CharacterTableDoc, IrrepsDoc};
use classop::su2::ConvergenceRow;
use classop::verify::{CheckRecord, WignerEckartRecord, WignerEckartReport};

use crate::CliError;

pub const REPORT_SCHEMA: &str = "classop-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub group: String,
    pub class: String,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub pass: bool,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Body {
    FiniteVerify {
        checks: Vec<CheckRecord>,
    },
    Su2Verify {
        tolerance: f64,
        final_order: (usize, usize),
        rows: Vec<ConvergenceRow>,
    },
    WignerEckart {
        sections: Vec<WignerEckartSection>,
    },
    Scan {
        tolerance: f64,
        rows: Vec<ScanEntry>,
    },
    ExportTables {
        characters: CharacterTableDoc,
        irreps: IrrepsDoc,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct WignerEckartSection {
    pub class: String,
    pub pass: bool,
    pub off_pattern_max: f64,
    pub off_pattern_tolerance: f64,
    pub records: Vec<WignerEckartRecord>,
    pub reduced: Vec<ReducedMatrixElement>,
    pub notes: Vec<String>,
}

impl WignerEckartSection {
    pub fn new(class: String, report: WignerEckartReport, off_pattern_tolerance: f64) -> Self {
        WignerEckartSection {
            class,
            pass: report.pass(off_pattern_tolerance),
            off_pattern_max: report.off_pattern_max,
            off_pattern_tolerance,
            records: report.records,
            reduced: report.reduced,
            notes: report.notes,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub class: String,
    #[serde(flatten)]
    pub row: ScanRow,
}

impl ScanEntry {
    pub fn new(class: &str, row: ScanRow) -> Self {
        ScanEntry { class: class.to_string(), row }
    }
}

fn sci(x: f64) -> String {
    // no signed zeros in reports
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

type Sheet = csv::Writer<Vec<u8>>;

fn sheet() -> Sheet {
    csv::WriterBuilder::new().from_writer(Vec::new())
}

fn finish(w: Sheet) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub(crate) fn to_csv(report: &Report) -> Result<String, CliError> {
    let mut w = sheet();
    // extra sections, each preceded by a blank line and a `# title` line
    let mut extra: Vec<(&str, Sheet)> = Vec::new();
    match &report.body {
        Body::FiniteVerify { checks } => {
            w.write_record(["check", "group", "class", "max_deviation", "tolerance", "pass"])?;
            for c in checks {
                w.write_record([&c.check, &c.group, &c.class, &sci(c.max_deviation), &sci(c.tolerance), &c.pass.to_string()])?;
            }
        }
        Body::Su2Verify { rows, .. } => {
            w.write_record(["j2", "psi", "n_theta", "n_phi", "max_abs_error", "closed_form_value"])?;
            for r in rows {
                w.write_record([
                    r.j2.to_string(),
                    sci(r.psi),
                    r.n_theta.to_string(),
                    r.n_phi.to_string(),
                    sci(r.max_abs_error),
                    sci(r.closed_form_value),
                ])?;
            }
        }
        Body::WignerEckart { sections } => {
            w.write_record(["group", "sigma", "alpha", "k", "l", "g0", "max_dev", "pass"])?;
            for r in sections.iter().flat_map(|s| &s.records) {
                w.write_record([
                    r.group.clone(),
                    r.sigma.to_string(),
                    r.alpha.to_string(),
                    r.k.to_string(),
                    r.l.to_string(),
                    r.g0.clone(),
                    sci(r.max_dev),
                    r.pass.to_string(),
                ])?;
            }
            let mut reduced = sheet();
            reduced.write_record(["sigma", "alpha", "l", "m", "g0", "re", "im"])?;
            for r in sections.iter().flat_map(|s| &s.reduced) {
                reduced.write_record([
                    r.sigma.to_string(),
                    r.alpha.to_string(),
                    r.l.to_string(),
                    r.m.to_string(),
                    r.g0.clone(),
                    sci(r.value.re),
                    sci(r.value.im),
                ])?;
            }
            let mut pattern = sheet();
            pattern.write_record(["class", "off_pattern_max", "off_pattern_tolerance", "pass"])?;
            for s in sections {
                pattern.write_record([s.class.clone(), sci(s.off_pattern_max), sci(s.off_pattern_tolerance), s.pass.to_string()])?;
            }
            let mut notes = sheet();
            notes.write_record(["class", "note"])?;
            for s in sections {
                for note in &s.notes {
                    notes.write_record([&s.class, note])?;
                }
            }
            extra = vec![("reduced matrix elements", reduced), ("sparsity pattern", pattern), ("notes", notes)];
        }
        Body::Scan { rows, .. } => {
            w.write_record(["class", "alpha", "column", "max_norm", "vanishes"])?;
            for r in rows {
                w.write_record([
                    r.class.clone(),
                    r.row.alpha.to_string(),
                    r.row.column.map(|c| c.to_string()).unwrap_or_default(),
                    sci(r.row.max_norm),
                    r.row.vanishes.to_string(),
                ])?;
            }
        }
        Body::ExportTables { characters, .. } => {
            w.write_record(["alpha", "dim", "class", "class_size", "centralizer_order", "re", "im"])?;
            for (alpha, row) in characters.rows.iter().enumerate() {
                for (class, chi) in characters.classes.iter().zip(row) {
                    w.write_record([
                        alpha.to_string(),
                        characters.dims[alpha].to_string(),
                        class.base.clone(),
                        class.size.to_string(),
                        class.centralizer_order.to_string(),
                        sci(chi.re),
                        sci(chi.im),
                    ])?;
                }
            }
        }
    }
    let mut out = finish(w)?;
    for (title, section) in extra {
        out.push_str(&format!("\n# {title}\n"));
        out.push_str(&finish(section)?);
    }
    Ok(out)
}
