//! Machine-readable reports (JSON schema version 1) and their text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::alexander::AlexanderResult;
use crate::spectral::{InjectivityReport, SpectralCell, WitnessForm};
use crate::syzygy::{Classification, DegreeCount};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub poly: String,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    /// `free`, `nearly-free`, `other` or `inconclusive`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<u32>,
    /// Minimal generator degrees found up to `jmax`.
    pub degrees: Vec<u32>,
    pub jmax: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClassificationReport {
    pub fn from_classification(c: &Classification, degrees: Vec<u32>, jmax: u32) -> Self {
        let (d1, d2) = c.exponents().unzip();
        ClassificationReport { kind: c.kind().to_string(), d1, d2, degrees, jmax, note: None }
    }

    pub fn label(&self) -> String {
        match (self.kind.as_str(), self.d1, self.d2) {
            ("free", Some(a), Some(b)) => format!("Free({a},{b})"),
            ("nearly-free", Some(a), Some(b)) => format!("NearlyFree({a},{b})"),
            (kind, _, _) => {
                let list: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
                let name = if kind == "other" { "Other" } else { "Inconclusive" };
                format!("{name}({})", list.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub k: u32,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicFactor {
    pub e: u32,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderReport {
    pub certified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unity_multiplicity: Option<u32>,
    pub bounds: Vec<BoundRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclotomic: Option<Vec<CyclotomicFactor>>,
    /// Factored form with `^[lo,hi]` exponents where the multiplicity is open.
    pub intervals: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta2: Option<String>,
}

impl AlexanderReport {
    pub fn new(result: &AlexanderResult) -> Self {
        let bounds = result.bounds.iter().map(|b| BoundRow { k: b.k, lower: b.lower, upper: b.upper, exact: b.exact }).collect();
        let cyclotomic =
            result.cyclotomic_factorization().ok().map(|f| f.into_iter().map(|(e, mult)| CyclotomicFactor { e, mult }).collect());
        AlexanderReport {
            certified: result.certified,
            unity_multiplicity: result.unity_multiplicity,
            bounds,
            delta1: result.delta1_string().ok(),
            cyclotomic,
            intervals: result.interval_string(),
            delta0: None,
            delta2: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFormReport {
    /// `a dy∧dz - b dx∧dz + c dx∧dy`.
    pub a: String,
    pub b: String,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneFormReport {
    pub dx: String,
    pub dy: String,
    pub dz: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub q: u32,
    pub closed: bool,
    pub two_form: TwoFormReport,
    pub one_form: OneFormReport,
}

impl From<&WitnessForm> for WitnessReport {
    fn from(w: &WitnessForm) -> Self {
        WitnessReport {
            q: w.q,
            closed: w.closed,
            two_form: TwoFormReport { a: w.two_form.a.to_string(), b: w.two_form.b.to_string(), c: w.two_form.c.to_string() },
            one_form: OneFormReport { dx: w.one_form.p.to_string(), dy: w.one_form.q.to_string(), dz: w.one_form.r.to_string() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub arithmetic_mode: String,
    pub probabilistic: bool,
    pub elapsed_ms: u64,
}

/// Full or focused analysis; commands fill only the sections they compute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: InputEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tjurina: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_profile: Option<Vec<DegreeCount>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e2: Option<Vec<SpectralCell>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub injectivity: Option<InjectivityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<AlexanderReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessReport>>,
    pub meta: Meta,
}

pub const E2_CSV_HEADER: &str = "q,t,k,dim_syz,dim_kr,kappa,epsilon";

pub fn e2_csv(cells: &[SpectralCell]) -> String {
    let mut out = format!("{E2_CSV_HEADER}\n");
    for c in cells {
        writeln!(out, "{},{},{},{},{},{},{}", c.q, c.t, c.k, c.dim_syz, c.dim_kr, c.kappa, c.epsilon).unwrap();
    }
    out
}

pub fn profile_csv(profile: &[DegreeCount]) -> String {
    let mut out = "j,dim_ar,new_gens\n".to_string();
    for p in profile {
        writeln!(out, "{},{},{}", p.j, p.dim_ar, p.new_gens).unwrap();
    }
    out
}

pub fn bounds_csv(bounds: &[BoundRow]) -> String {
    let mut out = "k,lower,upper,exact\n".to_string();
    for b in bounds {
        writeln!(out, "{},{},{},{}", b.k, b.lower, b.upper, b.exact).unwrap();
    }
    out
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn e2_table_text(cells: &[SpectralCell]) -> String {
    let rows: Vec<Vec<String>> = cells
        .iter()
        .map(|c| {
            [c.q, c.t, c.k]
                .iter()
                .map(u32::to_string)
                .chain([c.dim_syz, c.dim_kr, c.kappa, c.epsilon].iter().map(usize::to_string))
                .collect()
        })
        .collect();
    aligned(&E2_CSV_HEADER.split(',').collect::<Vec<_>>(), &rows)
}

/// Human-readable rendering of whatever sections are present.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    writeln!(out, "curve: {}", r.input.poly).unwrap();
    if let Some(c) = &r.input.catalog {
        writeln!(out, "catalog: {c}").unwrap();
    }
    write!(out, "degree: {}", r.input.degree).unwrap();
    if let Some(comp) = r.input.components {
        write!(out, "  components: {comp}").unwrap();
    }
    out.push('\n');
    if let Some(t) = r.tjurina {
        writeln!(out, "tjurina: {t}").unwrap();
    }
    if let Some(c) = &r.classification {
        writeln!(out, "classification: {}", c.label()).unwrap();
        if let Some(note) = &c.note {
            writeln!(out, "  note: {note}").unwrap();
        }
    }
    if let Some(p) = &r.generator_profile {
        out.push_str("\ngenerator profile\n");
        let rows: Vec<Vec<String>> = p.iter().map(|d| vec![d.j.to_string(), d.dim_ar.to_string(), d.new_gens.to_string()]).collect();
        out += &aligned(&["j", "dim_ar", "new_gens"], &rows);
    }
    if let Some(cells) = &r.e2 {
        out.push_str("\nE2 table\n");
        out += &e2_table_text(cells);
    }
    if let Some(inj) = &r.injectivity {
        writeln!(out, "\ninjectivity on [{}, {}): {}", inj.d1, inj.d2, if inj.passed { "passed" } else { "FAILED" }).unwrap();
    }
    if let Some(a) = &r.alexander {
        out.push_str("\nAlexander polynomial\n");
        let rows: Vec<Vec<String>> =
            a.bounds.iter().map(|b| vec![b.k.to_string(), b.lower.to_string(), b.upper.to_string(), b.exact.to_string()]).collect();
        out += &aligned(&["k", "lower", "upper", "exact"], &rows);
        writeln!(out, "certified: {}", a.certified).unwrap();
        match &a.delta1 {
            Some(d) => writeln!(out, "delta1: {d}").unwrap(),
            None => writeln!(out, "delta1 in: {}", a.intervals).unwrap(),
        }
        if let Some(d) = &a.delta2 {
            writeln!(out, "delta0: {}", a.delta0.as_deref().unwrap_or("t-1")).unwrap();
            writeln!(out, "delta2: {d}").unwrap();
        }
    }
    if let Some(ws) = &r.witnesses {
        writeln!(out, "\nwitnesses ({})", ws.len()).unwrap();
        for w in ws {
            writeln!(out, "q = {} {}", w.q, if w.closed { "closed" } else { "not closed" }).unwrap();
            writeln!(out, "  2-form: ({})*dy^dz - ({})*dx^dz + ({})*dx^dy", w.two_form.a, w.two_form.b, w.two_form.c).unwrap();
            writeln!(out, "  1-form: ({})*dx + ({})*dy + ({})*dz", w.one_form.dx, w.one_form.dy, w.one_form.dz).unwrap();
        }
    }
    writeln!(
        out,
        "\nmode: {}{}  elapsed: {} ms",
        r.meta.arithmetic_mode,
        if r.meta.probabilistic { " (probabilistic)" } else { "" },
        r.meta.elapsed_ms
    )
    .unwrap();
    out
}
