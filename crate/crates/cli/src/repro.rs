//! `sumdex repro <target>`: regenerates the verification reports and prints
//! one pass/fail line per check. Any failed check makes the command exit
//! nonzero with the failures itemized.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sumdex_core::bounds::known_formula;
use sumdex_core::extremal::{build_table, lbeg_count, max_edges_closed_form, turan_bound, ubeg_bound};
use sumdex_core::family::FamilySpec;
use sumdex_core::group::{min_restricted_sumset_complete, zp2_construction, AbelianGroup, SubsetScanOutcome};
use sumdex_core::solver::{sum_index_exact, SolverConfig};

use crate::Failure;

struct Report {
    lines: Vec<(bool, String)>,
}

impl Report {
    fn new() -> Self {
        Report { lines: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        println!("{} {}", if ok { "PASS" } else { "FAIL" }, what);
        self.lines.push((ok, what));
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for (ok, what) in &self.lines {
            let _ = writeln!(out, "{} {}", if *ok { "PASS" } else { "FAIL" }, what);
        }
        let failed = self.lines.iter().filter(|(ok, _)| !ok).count();
        let _ = writeln!(out, "{} checks, {} failed", self.lines.len(), failed);
        out
    }

    fn finish(self, out_path: &Path) -> Result<(), Failure> {
        fs::write(out_path, self.render()).map_err(|e| Failure::Input(e.to_string()))?;
        let failures: Vec<&String> = self.lines.iter().filter(|(ok, _)| !ok).map(|(_, w)| w).collect();
        if failures.is_empty() {
            println!("all {} checks passed", self.lines.len());
            Ok(())
        } else {
            Err(Failure::Validation(format!("{} checks failed", failures.len())))
        }
    }
}

/// The closed-form catalog instances the solver is compared against.
pub(crate) fn catalog_specs() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for n in 3..=5 {
        specs.push(FamilySpec::complete(n).expect("valid"));
    }
    for m in 1..=5usize {
        for n in m..=5usize {
            if m + n <= 6 {
                specs.push(FamilySpec::complete_bipartite(m, n).expect("valid"));
            }
        }
    }
    for len in 3..=8 {
        specs.push(FamilySpec::cycle(len).expect("valid"));
    }
    specs.push(FamilySpec::hypercube(2).expect("valid"));
    specs.push(FamilySpec::hypercube(3).expect("valid"));
    for copies in 1..=3 {
        specs.push(FamilySpec::cluster(copies, 3).expect("valid"));
    }
    specs.push(FamilySpec::cluster(2, 4).expect("valid"));
    specs.push(FamilySpec::complete_multipartite(vec![2, 1, 1]).expect("valid"));
    specs.push(FamilySpec::complete_multipartite(vec![2, 2, 1]).expect("valid"));
    specs
}

fn repro_catalog(out_dir: &Path, cfg: &SolverConfig) -> Result<(), Failure> {
    let mut report = Report::new();
    let mut csv = String::from("family,closed_form,solver,match\n");
    for spec in catalog_specs() {
        let g = spec.generate();
        let expected = known_formula(&spec).expect("catalog family");
        let cert = sum_index_exact(&g, cfg).map_err(|e| Failure::Budget(e.to_string()))?;
        let got = cert.sum_index;
        let ok = got == Some(expected as usize);
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            spec.tag(),
            expected,
            got.map_or_else(|| "unknown".into(), |v| v.to_string()),
            ok
        );
        report.check(ok, format!("{}: closed form {} vs solver {:?}", spec.tag(), expected, got));
    }
    fs::write(out_dir.join("catalog.csv"), csv).map_err(|e| Failure::Input(e.to_string()))?;
    report.finish(&out_dir.join("catalog_report.txt"))
}

fn repro_extremal(out_dir: &Path, cfg: &SolverConfig, threads: usize) -> Result<(), Failure> {
    let table = build_table(6, cfg, threads).map_err(|e| Failure::Budget(e.to_string()))?;
    fs::write(out_dir.join("extremal_table.csv"), table.to_csv()).map_err(|e| Failure::Input(e.to_string()))?;
    fs::write(out_dir.join("extremal_table.json"), table.to_json_string())
        .map_err(|e| Failure::Input(e.to_string()))?;
    let mut report = Report::new();
    report.check(table.unresolved.is_empty(), "every isomorphism class solved exactly");
    for e in &table.entries {
        let sandwiched = e.lbeg <= e.max_edges as u64 && (e.max_edges as u64) <= e.ubeg.min(e.turan);
        report.check(
            sandwiched,
            format!(
                "(n={}, N={}): lbeg {} <= exact {} <= min(ubeg {}, turan {})",
                e.n, e.sum_index, e.lbeg, e.max_edges, e.ubeg, e.turan
            ),
        );
        if let Some(closed) = max_edges_closed_form(e.n, e.sum_index) {
            report.check(
                e.max_edges as u64 == closed,
                format!("(n={}, N={}): exact {} matches closed form {}", e.n, e.sum_index, e.max_edges, closed),
            );
        }
    }
    report.finish(&out_dir.join("extremal_report.txt"))
}

fn repro_zp2(out_dir: &Path) -> Result<(), Failure> {
    let mut report = Report::new();
    let a = AbelianGroup::new(vec![5, 5]).expect("valid moduli");
    match min_restricted_sumset_complete(&a, 11, 10_000_000).map_err(|e| Failure::Budget(e.to_string()))? {
        SubsetScanOutcome::Exact { value, nodes, .. } => {
            report.check(
                value == 20,
                format!("exhaustive minimum over all C(25,11) subsets of Z_5^2 is {value} (20 expected; {nodes} nodes)"),
            );
        }
        SubsetScanOutcome::Unknown { .. } => report.check(false, "Z_5^2 subset scan did not finish"),
    }
    for p in [5u64, 7, 11, 13] {
        let c = zp2_construction(p).map_err(|e| Failure::Input(e.to_string()))?;
        report.check(
            c.achieved as u64 == 4 * p,
            format!("Z_{p}^2 construction: |X^+X| = {} (4p = {})", c.achieved, 4 * p),
        );
    }
    report.finish(&out_dir.join("zp2_report.txt"))
}

fn repro_conjecture(out_dir: &Path, cfg: &SolverConfig, threads: usize) -> Result<(), Failure> {
    let table = build_table(6, cfg, threads).map_err(|e| Failure::Budget(e.to_string()))?;
    let mut csv = String::from("n,N,max_edges,lbeg,ubeg,turan,tight\n");
    let mut tight = 0usize;
    for e in &table.entries {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            e.n, e.sum_index, e.max_edges, e.lbeg, e.ubeg, e.turan, e.tight
        );
        tight += e.tight as usize;
    }
    fs::write(out_dir.join("conjecture.csv"), &csv).map_err(|e| Failure::Input(e.to_string()))?;
    let mut report = Report::new();
    report.check(table.unresolved.is_empty(), "every isomorphism class solved exactly");
    // the probe records where the layered construction is optimal; it proves
    // nothing beyond this scale
    report.check(
        true,
        format!("layered construction tight on {tight} of {} entries (n <= 6)", table.entries.len()),
    );
    for (n, sum_index) in [(4usize, 3usize), (6, 3)] {
        let entry = table.entry(n, sum_index);
        let ok = entry.is_some_and(|e| e.max_edges as u64 == lbeg_count(n, sum_index).unwrap_or(0));
        report.check(ok, format!("(n={n}, N={sum_index}) attained by the layered construction"));
    }
    // spot check the bound formulas stay consistent on one sample
    report.check(ubeg_bound(6, 3).map_err(|e| Failure::Input(e.to_string()))? == 8, "ubeg(6,3) = 8");
    report.check(turan_bound(6, 3) == 12, "turan(6,3) = 12");
    report.finish(&out_dir.join("conjecture_report.txt"))
}

pub(crate) fn run(target: &str, out_dir: &Path, cfg: &SolverConfig, threads: usize) -> Result<(), Failure> {
    fs::create_dir_all(out_dir).map_err(|e| Failure::Input(e.to_string()))?;
    match target {
        "catalog" => repro_catalog(out_dir, cfg),
        "extremal-table" | "extremal_table" => repro_extremal(out_dir, cfg, threads),
        "zp2" => repro_zp2(out_dir),
        "conjecture" => repro_conjecture(out_dir, cfg, threads),
        other => Err(Failure::Input(format!(
            "unknown repro target {other:?}; expected catalog, extremal-table, zp2, or conjecture"
        ))),
    }
}
