//! `weakcross`: verify weak Hopf algebras and weak crossed products stored as
//! instance files.
//!
//! Exit codes: 0 all requested checks confirmed, 1 a requested property
//! failed, 2 malformed input or usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use weakcross::crossed::{
    build_ag, build_bb, check_ag_cocycle, check_aux_lemmas, check_bb_cocycle, check_equiv_10_12, check_measuring,
    comparison_iso, descend, induce, invert_ag, invert_bb, CocycleTable, InverseOptions, Measuring, Variant,
};
use weakcross::format::{self, Instance};
use weakcross::wha::{verify_antipode, verify_weak_bialgebra, WeakHopfAlgebra};
use weakcross::{fixtures, par, ConditionEntry, ConditionReport, CrossedError, Field, Verdict, WhaError};

/// Environment variable capping the worker pool.
const THREADS_ENV: &str = "WEAKCROSS_THREADS";

#[derive(Parser)]
#[command(name = "weakcross", version, about = "Exact checks for weak Hopf algebras and weak crossed products")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Set {
    Bb,
    Ag,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Bb,
    Ag,
}

#[derive(Subcommand)]
enum Command {
    /// Check the weak bialgebra and antipode axioms.
    Validate { file: PathBuf },
    /// Check the measuring and cocycle conditions.
    Conditions {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        set: Set,
    },
    /// Build a crossed product and write it as a product block.
    Build {
        file: PathBuf,
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the two constructions.
    Compare { file: PathBuf },
    /// Write a built-in instance: paper8, smash-c2, groupoid-<n> (n = 2..4).
    Fixture {
        name: String,
        #[arg(long)]
        out: PathBuf,
        /// Work over F_p instead of Q.
        #[arg(long)]
        prime: Option<u64>,
    },
}

/// A failure that ends the command early.
enum Abort {
    /// Malformed input (exit 2).
    Input(String),
    /// A requested property failed before a report could be completed
    /// (exit 1); the partial report is printed.
    Failed(ConditionReport, String),
}

impl From<std::io::Error> for Abort {
    fn from(e: std::io::Error) -> Self {
        Abort::Input(e.to_string())
    }
}

/// Everything a command prints, assembled before output.
struct Document {
    digest: Option<String>,
    report: ConditionReport,
    notes: Vec<String>,
    /// Extra blocks printed after the report (e.g. a matrix).
    blocks: Vec<(String, Vec<String>)>,
}

impl Document {
    fn new(digest: Option<String>) -> Self {
        Document {
            digest,
            report: ConditionReport::new(),
            notes: Vec::new(),
            blocks: Vec::new(),
        }
    }

    fn summary(&self) -> (usize, usize, usize) {
        let e = self.report.entries();
        let count = |v: Verdict| e.iter().filter(|x| x.verdict == v).count();
        (count(Verdict::Pass), self.report.failed_ids().len(), count(Verdict::NotChecked))
    }

    fn render(&self, format: Format, ok: bool) -> String {
        let mut out = String::new();
        let (p, f, s) = self.summary();
        let verdict = if ok { "PASS" } else { "FAIL" };
        match format {
            Format::Text => {
                let _ = writeln!(out, "weakcross {}", env!("CARGO_PKG_VERSION"));
                if let Some(d) = &self.digest {
                    let _ = writeln!(out, "instance sha256:{d}");
                }
                out.push_str(&self.report.render_text());
                for (title, lines) in &self.blocks {
                    let _ = writeln!(out, "{title}:");
                    for l in lines {
                        let _ = writeln!(out, "  {l}");
                    }
                }
                for n in &self.notes {
                    let _ = writeln!(out, "note: {n}");
                }
                let failed = self.report.failed_ids();
                let _ = write!(out, "summary: {verdict}");
                if !self.report.entries().is_empty() {
                    let _ = write!(out, " ({p} passed, {f} failed, {s} not checked)");
                }
                if !failed.is_empty() {
                    let _ = write!(out, "; failing: {}", failed.join(", "));
                }
                out.push('\n');
            }
            Format::Machine => {
                let _ = writeln!(out, "VERSION {}", env!("CARGO_PKG_VERSION"));
                if let Some(d) = &self.digest {
                    let _ = writeln!(out, "DIGEST sha256:{d}");
                }
                out.push_str(&self.report.render_machine());
                for (title, lines) in &self.blocks {
                    for l in lines {
                        let _ = writeln!(out, "{} {l}", title.to_uppercase().replace(' ', "-"));
                    }
                }
                for n in &self.notes {
                    let _ = writeln!(out, "NOTE {n}");
                }
                let _ = writeln!(out, "SUMMARY {verdict} pass={p} fail={f} skip={s}");
            }
        }
        out
    }
}

fn load(path: &Path) -> Result<Instance, Abort> {
    let text = std::fs::read_to_string(path).map_err(|e| Abort::Input(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Abort::Input(format!("{}: {e}", path.display())))
}

fn hopf(inst: &Instance) -> Result<WeakHopfAlgebra, Abort> {
    inst.weak_hopf().map_err(|e| match e {
        WhaError::AxiomsFailed(r) => Abort::Failed(*r, "H is not a weak Hopf algebra; run `validate`".into()),
        WhaError::Shape(_) | WhaError::Linalg(_) => Abort::Input(e.to_string()),
        other => Abort::Failed(ConditionReport::new(), other.to_string()),
    })
}

fn measuring(inst: &Instance) -> Result<Measuring, Abort> {
    let h = hopf(inst)?;
    match inst.measuring(h) {
        None => Err(Abort::Input("instance has no algebra/action blocks".into())),
        Some(r) => r.map_err(|e| Abort::Input(e.to_string())),
    }
}

/// The cocycle in the requested variant, converting if needed. Descending
/// an unbalanced table fails with the balance witness.
fn cocycle(inst: &Instance, m: &Measuring, want: Variant) -> Result<Option<CocycleTable>, Abort> {
    let Some(r) = inst.cocycle_table(m) else {
        return Ok(None);
    };
    let c = r.map_err(|e| Abort::Input(e.to_string()))?;
    match (c.variant(), want) {
        (a, b) if a == b => Ok(Some(c)),
        (Variant::Bb, Variant::Ag) => Ok(Some(induce(&c))),
        _ => descend(m, &c).map(Some).map_err(|w| {
            let mut r = ConditionReport::new();
            r.push(ConditionEntry::fail("balance-R", 1, *w));
            Abort::Failed(r, "the ag cocycle does not factor through H ⊗_{H^R} H".into())
        }),
    }
}

fn cmd_validate(inst: &Instance) -> Result<(Document, bool), Abort> {
    let mut doc = Document::new(Some(inst.digest()));
    let wb = inst.weak_bialgebra().map_err(|e| Abort::Input(e.to_string()))?;
    doc.report.extend(verify_weak_bialgebra(&wb));
    doc.report.extend(verify_antipode(&wb, &inst.antipode, inst.antipode_inv.as_ref()));
    let mut ok = doc.report.ok();
    if ok {
        if let Err(e) = inst.weak_hopf() {
            doc.notes.push(e.to_string());
            ok = false;
        }
    }
    Ok((doc, ok))
}

const BB_IDS: &[&str] = &["balance-R", "5", "6", "7", "8", "9", "pese", "10", "11", "12", "equiv-10-12"];
const AG_IDS: &[&str] = &["11", "17", "18", "19", "20", "21", "22", "normality", "pepe-prime"];

fn cmd_conditions(inst: &Instance, set: Set) -> Result<(Document, bool), Abort> {
    let mut doc = Document::new(Some(inst.digest()));
    let m = measuring(inst)?;
    doc.report.extend(check_measuring(&m));
    if set != Set::Ag {
        match cocycle(inst, &m, Variant::Bb)? {
            None => {
                for id in BB_IDS {
                    doc.report.push(ConditionEntry::not_checked(*id, "no cocycle block"));
                }
            }
            Some(c) => {
                doc.report.extend(check_bb_cocycle(&m, &c));
                match check_equiv_10_12(&m, &c) {
                    Ok(r) => doc.report.extend(r),
                    Err(CrossedError::Precondition { stage, .. }) => {
                        for id in ["10", "11", "12", "equiv-10-12"] {
                            doc.report.push(ConditionEntry::not_checked(id, format!("needs {stage}")));
                        }
                    }
                    Err(e) => return Err(Abort::Input(e.to_string())),
                }
                match invert_bb(&m, &c, InverseOptions::default()) {
                    Some(inv) => {
                        doc.report.push(ConditionEntry::flag("bb-inverse", inv.report().ok(), "σ̄ solved"));
                        doc.report.extend(inv.report().clone());
                        doc.notes.push(format!("σ̄ solution space after normalization has dimension {}", inv.nullity()));
                    }
                    None => doc.report.push(ConditionEntry::flag("bb-inverse", false, "(13)-(16) have no solution")),
                }
            }
        }
    }
    if set != Set::Bb {
        let c = match inst.cocycle.as_ref().map(|c| c.0) {
            // an ag table that fails to descend is still checked as ς
            Some(Variant::Ag) => inst.cocycle_table(&m).map(|r| r.map_err(|e| Abort::Input(e.to_string()))).transpose()?,
            _ => cocycle(inst, &m, Variant::Ag)?,
        };
        match c {
            None => {
                for id in AG_IDS {
                    doc.report.push(ConditionEntry::not_checked(*id, "no cocycle block"));
                }
            }
            Some(c) => {
                doc.report.extend(check_ag_cocycle(&m, &c));
                for e in check_aux_lemmas(&m, &c).entries() {
                    doc.report.push(e.clone().observational());
                }
                match invert_ag(&m, &c, InverseOptions::default()) {
                    Some(inv) => {
                        doc.report.push(ConditionEntry::flag("ag-inverse", inv.report().ok(), "ς̄ solved"));
                        doc.report.extend(inv.report().clone());
                    }
                    None => doc.report.push(ConditionEntry::flag("ag-inverse", false, "(23)-(24) have no solution")),
                }
            }
        }
    }
    let ok = doc.report.ok();
    Ok((doc, ok))
}

fn cmd_build(inst: &Instance, construction: Construction, out: &Path) -> Result<(Document, bool), Abort> {
    let mut inst = inst.clone();
    let mut doc = Document::new(Some(inst.digest()));
    let m = measuring(&inst)?;
    let want = match construction {
        Construction::Bb => Variant::Bb,
        Construction::Ag => Variant::Ag,
    };
    let c = cocycle(&inst, &m, want)?.ok_or_else(|| Abort::Input("instance has no cocycle block".into()))?;
    let built = match want {
        Variant::Bb => build_bb(&m, &c),
        Variant::Ag => build_ag(&m, &c),
    };
    let p = match built {
        Ok(p) => p,
        Err(CrossedError::Precondition { stage, report }) => {
            return Err(Abort::Failed(*report, format!("precondition failed: {stage}")));
        }
        Err(CrossedError::NotWellDefined(w)) => {
            let mut r = ConditionReport::new();
            r.push(ConditionEntry::fail("well-defined", 1, *w));
            return Err(Abort::Failed(r, "product is not well defined".into()));
        }
        Err(e) => return Err(Abort::Input(e.to_string())),
    };
    doc.report.extend(p.report().clone());
    inst.products.push(p.table().clone());
    std::fs::write(out, format::serialize(&inst))?;
    doc.notes.push(format!("wrote {} ({}-dimensional {} product)", out.display(), p.dim(), want.as_str()));
    let ok = p.is_verified();
    Ok((doc, ok))
}

fn cmd_compare(inst: &Instance) -> Result<(Document, bool), Abort> {
    let mut doc = Document::new(Some(inst.digest()));
    let m = measuring(inst)?;
    let c = cocycle(inst, &m, Variant::Bb)?.ok_or_else(|| Abort::Input("instance has no cocycle block".into()))?;
    match comparison_iso(&m, &c) {
        Ok(cmp) => {
            doc.report.extend(cmp.report.clone());
            let sp = cmp.bb.space();
            let src = cmp.ag.space();
            let mat = cmp.psi.matrix();
            let mut rows = vec![format!("columns: {}", src.labels().join(" | "))];
            for r in 0..mat.rows() {
                let row: Vec<String> = (0..mat.cols()).map(|j| mat.get(r, j).to_string()).collect();
                rows.push(format!("{} : {}", row.join(" "), sp.label(r)));
            }
            doc.blocks.push(("psi matrix".into(), rows));
            let ok = cmp.report.ok();
            doc.notes.push(if ok {
                "(10) holds and ψ is a right H-colinear algebra isomorphism".into()
            } else {
                "(10) holds but the comparison map failed verification".into()
            });
            Ok((doc, ok))
        }
        Err(CrossedError::Precondition { report, .. }) if report.verdict("10") == Some(Verdict::Fail) => {
            doc.report.extend(*report);
            // the ag side of the iff: its hypotheses must fail too
            let ag = check_ag_cocycle(&m, &induce(&c));
            let ag_hyp = ["2", "4", "11", "17", "18", "19", "20", "21", "22"];
            let ag_holds = ag.all_pass(&ag_hyp);
            doc.report.push(ConditionEntry::flag(
                "ag-hypotheses",
                ag_holds,
                "(2), (4), (11), (17)-(22) for ς = σ∘p",
            ));
            let agree = doc.report.passed("equiv-10-12");
            let confirmed = agree && !ag_holds;
            doc.notes.push(if confirmed {
                format!(
                    "(10) fails: the × construction does not exist for ς = σ∘p (failing: {})",
                    ag_hyp.iter().filter(|id| !ag.passed(id)).copied().collect::<Vec<_>>().join(", ")
                )
            } else {
                "(10) fails but the ag hypotheses hold: the equivalence is contradicted".into()
            });
            if let Ok(p) = build_ag(&m, &induce(&c)) {
                doc.notes.push(format!(
                    "the product on the image of ∇ (dim {}) is {} on this instance",
                    p.dim(),
                    if p.is_verified() { "still associative and unital" } else { "not associative and unital" }
                ));
            }
            Ok((doc, confirmed))
        }
        Err(CrossedError::Precondition { stage, report }) => {
            Err(Abort::Failed(*report, format!("pipeline stopped at {stage}")))
        }
        Err(e) => Err(Abort::Input(e.to_string())),
    }
}

fn cmd_fixture(name: &str, out: &Path, prime: Option<u64>) -> Result<(Document, bool), Abort> {
    let field = match prime {
        None => Field::Rational,
        Some(p) => Field::prime(p).map_err(|e| Abort::Input(e.to_string()))?,
    };
    let b = fixtures::by_name(name, field)
        .ok_or_else(|| Abort::Input(format!("unknown fixture `{name}` (paper8, smash-c2, groupoid-<n>)")))?
        .map_err(|e| Abort::Input(e.to_string()))?;
    let inst = Instance::from_fixture(&b);
    std::fs::write(out, format::serialize(&inst))?;
    let mut doc = Document::new(Some(inst.digest()));
    doc.notes.push(format!("wrote {} ({}, dim H = {})", out.display(), b.name, b.hopf().dim()));
    Ok((doc, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                par::configure_threads(n);
            }
            _ => {
                eprintln!("error: {THREADS_ENV} must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    let input = match &cli.command {
        Command::Validate { file } | Command::Conditions { file, .. } | Command::Build { file, .. } | Command::Compare { file } => {
            match load(file) {
                Ok(inst) => Some(inst),
                Err(Abort::Input(msg)) | Err(Abort::Failed(_, msg)) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
            }
        }
        Command::Fixture { .. } => None,
    };
    let inst = input.as_ref();
    let result = match &cli.command {
        Command::Validate { .. } => cmd_validate(inst.expect("loaded")),
        Command::Conditions { set, .. } => cmd_conditions(inst.expect("loaded"), *set),
        Command::Build { construction, out, .. } => cmd_build(inst.expect("loaded"), *construction, out),
        Command::Compare { .. } => cmd_compare(inst.expect("loaded")),
        Command::Fixture { name, out, prime } => cmd_fixture(name, out, *prime),
    };
    match result {
        Ok((doc, ok)) => {
            print!("{}", doc.render(cli.format, ok));
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Abort::Failed(report, why)) => {
            let mut doc = Document::new(inst.map(Instance::digest));
            doc.report = report;
            doc.notes.push(why);
            print!("{}", doc.render(cli.format, false));
            ExitCode::from(1)
        }
        Err(Abort::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
