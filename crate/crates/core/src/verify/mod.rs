//! Bound checks over `(n, p)` grids and report output.

mod exhaustive;

use std::io::Write;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolfn::{make_class, FunctionClass, TruthTable};
use crate::channel::joint_yz;
use crate::error::{Error, Result};
use crate::exact::{p_grid, ExactProb};
use crate::karamata::{build_karamata_sequences, sub_inequality_ledger, MajorizationCertificate};
use crate::mi::{mutual_information, MIResult};

pub use exhaustive::{
    exhaustive_check, orbit_count, packed_mutual_information, ExhaustiveSummary, ARGMAX_SAMPLE,
    ARGMAX_TOL, MAX_EXHAUSTIVE_N, MAX_FULL_SCAN_N,
};

/// A report passes when `margin_bits >= -MARGIN_TOL`.
pub const MARGIN_TOL: f64 = 1e-9;

/// Largest denominator accepted by [`sweep`].
pub const MAX_SWEEP_DEN: u64 = 4096;

/// Version tag of the JSON report schema.
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one `(function, n, p)` cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub class_spec: String,
    pub n: u32,
    pub p: ExactProb,
    pub mi_bits: f64,
    pub bound_bits: f64,
    pub margin_bits: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub karamata_certificate: Option<MajorizationCertificate>,
    pub status: Status,
}

impl VerifyReport {
    fn new(class_spec: String, n: u32, p: &ExactProb, mi: MIResult, cert: Option<MajorizationCertificate>) -> Self {
        let cert_ok = cert.as_ref().is_none_or(|c| c.holds);
        let status = if mi.margin_bits >= -MARGIN_TOL && cert_ok {
            Status::Pass
        } else {
            Status::Fail
        };
        VerifyReport {
            class_spec,
            n,
            p: p.clone(),
            mi_bits: mi.mi_bits,
            bound_bits: mi.bound_bits,
            margin_bits: mi.margin_bits,
            karamata_certificate: cert,
            status,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Reports plus the `(n, reason)` cells that could not be evaluated.
#[derive(Clone, Debug, Default)]
pub struct ClassVerification {
    pub reports: Vec<VerifyReport>,
    pub skipped: Vec<String>,
}

impl ClassVerification {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(VerifyReport::passed)
    }
}

/// Evaluates one function at one `p`. Single-point functions (classes 1
/// and 2) also carry the exact majorization certificate when `n >= 2`.
pub fn verify_cell(class: &FunctionClass, n: u32, p: &ExactProb) -> Result<VerifyReport> {
    let f = make_class(n, class)?;
    let mi = mutual_information(&joint_yz(&f, p)?);
    let cert = match class {
        FunctionClass::Class1 { .. } | FunctionClass::Class2 { .. } if n >= 2 => {
            Some(sub_inequality_ledger(&build_karamata_sequences(n, p)?)?)
        }
        _ => None,
    };
    Ok(VerifyReport::new(class.to_string(), n, p, mi, cert))
}

/// Evaluates an arbitrary table at one `p`.
pub fn verify_table(f: &TruthTable, label: &str, p: &ExactProb) -> Result<VerifyReport> {
    let mi = mutual_information(&joint_yz(f, p)?);
    Ok(VerifyReport::new(label.to_string(), f.n(), p, mi, None))
}

/// Runs `class` over every `n` in `n_range` and every grid point. Cells
/// whose parameters are invalid for that `n` are skipped with a diagnostic.
pub fn verify_class(class: &FunctionClass, n_range: RangeInclusive<u32>, p_grid: &[ExactProb]) -> ClassVerification {
    let mut out = ClassVerification::default();
    let mut cells = Vec::new();
    for n in n_range {
        match class.validate(n) {
            Ok(()) => cells.extend(p_grid.iter().map(|p| (n, p))),
            Err(e) => out.skipped.push(format!("{class} at n={n}: {e}")),
        }
    }
    let results: Vec<_> = cells
        .par_iter()
        .map(|&(n, p)| (n, p, verify_cell(class, n, p)))
        .collect();
    for (n, p, r) in results {
        match r {
            Ok(rep) => out.reports.push(rep),
            Err(e) => out.skipped.push(format!("{class} at n={n}, p={p}: {e}")),
        }
    }
    out
}

/// The four families covered by the bound proof on `n` variables: the
/// single-point class and its complement, and the subcube class and its
/// complement for every depth `r = 1..n-1`.
pub fn theorem_classes(n: u32) -> Vec<FunctionClass> {
    let mut v = vec![
        FunctionClass::Class1 { witness_index: 0 },
        FunctionClass::Class2 { witness_index: 0 },
    ];
    for r in 1..n {
        v.push(FunctionClass::Class3 { r, fixed_prefix: 0 });
        v.push(FunctionClass::Class4 { r, fixed_prefix: 0 });
    }
    v
}

/// `(MI of the depth-r subcube on n variables, MI of a single point on r
/// variables)`; the two agree because the subcube indicator only sees the
/// first `r` outputs of the channel.
pub fn class3_reduction_check(n: u32, r: u32, p: &ExactProb) -> Result<(f64, f64)> {
    let full = make_class(n, &FunctionClass::Class3 { r, fixed_prefix: 0 })?;
    let reduced = make_class(r, &FunctionClass::Class1 { witness_index: 0 })?;
    let mi_full = mutual_information(&joint_yz(&full, p)?).mi_bits;
    let mi_reduced = mutual_information(&joint_yz(&reduced, p)?).mi_bits;
    Ok((mi_full, mi_reduced))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: ExactProb,
    pub mi_bits: f64,
    pub bound_bits: f64,
    pub margin_bits: f64,
}

/// MI of one function at `p = k / p_den`, `k = 0..=p_den/2`.
pub fn sweep(class: &FunctionClass, n: u32, p_den: u64) -> Result<Vec<SweepRow>> {
    if p_den == 0 || p_den > MAX_SWEEP_DEN {
        return Err(Error::Range(format!("p denominator {p_den} outside 1..={MAX_SWEEP_DEN}")));
    }
    let f = make_class(n, class)?;
    sweep_table(&f, p_den)
}

pub fn sweep_table(f: &TruthTable, p_den: u64) -> Result<Vec<SweepRow>> {
    p_grid(p_den)
        .par_iter()
        .map(|p| {
            let mi = mutual_information(&joint_yz(f, p)?);
            Ok(SweepRow {
                p: p.clone(),
                mi_bits: mi.mi_bits,
                bound_bits: mi.bound_bits,
                margin_bits: mi.margin_bits,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> Result<()> {
    writeln!(out, "p,mi_bits,bound_bits,margin_bits")?;
    for r in rows {
        writeln!(out, "{},{:e},{:e},{:e}", r.p, r.mi_bits, r.bound_bits, r.margin_bits)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ReportFile<'a> {
    version: u32,
    reports: &'a [VerifyReport],
}

/// `{"version": 1, "reports": [...]}`.
pub fn write_reports_json<W: Write>(mut out: W, reports: &[VerifyReport]) -> Result<()> {
    serde_json::to_writer_pretty(
        &mut out,
        &ReportFile {
            version: REPORT_VERSION,
            reports,
        },
    )?;
    writeln!(out)?;
    Ok(())
}

pub fn write_reports_csv<W: Write>(mut out: W, reports: &[VerifyReport]) -> Result<()> {
    writeln!(out, "class_spec,n,p,mi_bits,bound_bits,margin_bits,certificate,status")?;
    for r in reports {
        let cert = match &r.karamata_certificate {
            Some(c) if c.holds => "holds",
            Some(_) => "violated",
            None => "",
        };
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        };
        writeln!(
            out,
            "{},{},{},{:e},{:e},{:e},{},{}",
            r.class_spec, r.n, r.p, r.mi_bits, r.bound_bits, r.margin_bits, cert, status
        )?;
    }
    Ok(())
}
