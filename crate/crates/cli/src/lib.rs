//! Command-line front end for `hyperind`.
//!
//! [`run`] executes a parsed [`Cli`] and returns the rendered report with its exit
//! status, so the binary and the tests share one code path.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use hyperind::dress::{dress_certificate_with, marks_matrix_with, verify_certificate, CertificateDocument};
use hyperind::families::family_report_with;
use hyperind::gamma::{audit_sweep, classify_all, Case};
use hyperind::generation::{
    dedupe, elementary_cover, exponent_report_with_slack, generation_data_with,
    vanishing_report_for_order, ExponentReport, VanishingReport,
};
use hyperind::group::{make_group_with_cap, FiniteGroup, Subgroup, SubgroupClass, SubgroupLattice};
use hyperind::selfcheck::{run_all, CheckResult};
use hyperind::Error;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Parser, Debug, Clone)]
#[command(name = "hyperind", version, about = "Hyperelementary induction computations for finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest group order that may be constructed.
    #[arg(long, default_value_t = hyperind::group::DEFAULT_ORDER_CAP, global = true)]
    pub cap: usize,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct GroupPrime {
    /// Group spec, e.g. `sym:3` or `semidirect(c:7,p:cyclic:3,action:[2])`.
    pub group: String,
    #[arg(long)]
    pub prime: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// p-subgroup, p-elementary and p-hyperelementary classes.
    Families(GroupPrime),
    /// Pairs (P, g) with E = <g> x P.
    Generation {
        #[command(flatten)]
        target: GroupPrime,
        /// Keep one datum per (P class, E class, |g|).
        #[arg(long)]
        dedupe: bool,
    },
    /// Classes of the p-elementary subgroups E reached by the generation data.
    Cover(GroupPrime),
    /// Classify the p-hyperelementary subgroups of G x Z/N.
    Classify {
        #[command(flatten)]
        target: GroupPrime,
        #[arg(long = "M", id = "M")]
        big_m: u64,
        /// Half-width of the integer window for re-checking alpha; defaults to 3N.
        #[arg(long)]
        window: Option<i64>,
    },
    /// Induction certificate over the p-hyperelementary family.
    Dress(GroupPrime),
    /// Exponent bounds c(n), d(n) and the refined bound.
    Exponents {
        n: u64,
        /// Raise every exponent l this far above the minimum.
        #[arg(long, default_value_t = 0)]
        slack: u32,
    },
    /// Primes at which NK_n(ZG) vanishes for n <= 1. Accepts a group spec or an order.
    Vanishing { group: String },
    /// Run the full property suite.
    Verify,
}

/// A subgroup class with the element names of its representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassView {
    pub order: usize,
    pub class_size: usize,
    pub members: Vec<usize>,
    pub names: Vec<String>,
}

impl ClassView {
    fn new(g: &FiniteGroup, c: &SubgroupClass) -> Self {
        ClassView {
            order: c.order(),
            class_size: c.class_size,
            members: c.representative.members().to_vec(),
            names: names(g, &c.representative),
        }
    }
}

fn names(g: &FiniteGroup, s: &Subgroup) -> Vec<String> {
    s.members().iter().map(|&x| g.name(x).to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamiliesReport {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub p_subgroups: Vec<ClassView>,
    pub p_elementary: Vec<ClassView>,
    pub p_hyperelementary: Vec<ClassView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DatumView {
    pub p_subgroup: ClassView,
    pub element: usize,
    pub element_name: String,
    pub element_order: usize,
    pub allowed_primes: Vec<u64>,
    pub target: Vec<usize>,
    pub target_class: ClassView,
    pub plain_induction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenerationReport {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub deduplicated: bool,
    pub basis: String,
    pub data: Vec<DatumView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverReport {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub basis: String,
    pub classes: Vec<ClassView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RecordView {
    pub order: usize,
    pub first_projection: Vec<usize>,
    pub kernel_side: Vec<usize>,
    pub d1: u64,
    pub d2: u64,
    pub ell: u64,
    pub unit: u64,
    pub m: u64,
    pub elementary: bool,
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witnesses: Option<WitnessView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessView {
    pub p_subgroup: Vec<usize>,
    pub ell: u64,
    pub u: u64,
    pub g0: usize,
    pub g0_name: String,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifyReport {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    #[serde(rename = "N")]
    pub modulus: u64,
    pub window: i64,
    pub deep: usize,
    pub elementary: usize,
    pub audit_failures: Vec<usize>,
    pub records: Vec<RecordView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DressReport {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub marks_rows: Vec<ClassView>,
    pub marks_columns: Vec<ClassView>,
    pub marks: Vec<Vec<u64>>,
    pub certificate: CertificateDocument,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExponentsView {
    pub basis: String,
    pub report: ExponentReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VanishingView {
    pub group: String,
    pub basis: String,
    pub report: VanishingReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Report {
    Families(FamiliesReport),
    Generation(GenerationReport),
    Cover(CoverReport),
    Classify(ClassifyReport),
    Dress(DressReport),
    Exponents(ExponentsView),
    Vanishing(VanishingView),
    Verify(VerifyReport),
}

impl Report {
    pub fn command(&self) -> &'static str {
        match self {
            Report::Families(_) => "families",
            Report::Generation(_) => "generation",
            Report::Cover(_) => "cover",
            Report::Classify(_) => "classify",
            Report::Dress(_) => "dress",
            Report::Exponents(_) => "exponents",
            Report::Vanishing(_) => "vanishing",
            Report::Verify(_) => "verify",
        }
    }
}

/// The JSON document: `{schemaVersion, command, result: {<command>: ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    #[serde(rename = "schemaVersion")]
    pub schema_version: String,
    pub command: String,
    pub result: Report,
}

impl Document {
    pub fn new(report: Report) -> Self {
        Document {
            schema_version: SCHEMA_VERSION.to_string(),
            command: report.command().to_string(),
            result: report,
        }
    }
}

const GENERATION_BASIS: &str = "maps NK_n(RP) -> NK_n(R[<g> x P]) -> NK_n(RG) composed with V_k, k in I(g), \
    over p-subgroups P and p'-elements g centralizing P, generate NK_n(RG) after localizing at p";
const COVER_BASIS: &str = "induction from the p-elementary subgroups listed is surjective on NK_n(RG) after localizing at p";
const EXPONENT_BASIS: &str = "c_q(n) = q^l with l minimal such that q^l >= k*n where n_q = q^k; \
    d(n) multiplies c over the prime-power parts of n; the refined NK_0 bound is derived by \
    combining a uniform exponent over the p-subgroups with vanishing at primes dividing n once";
const VANISHING_BASIS: &str = "NK_n(ZG)_(p) = 0 for n <= 1 whenever p^2 does not divide |G|";

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::Internal(_) | Error::NoSolution { .. } => 4,
        _ => 2,
    }
}

/// Rendered output and exit status of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

fn group_and_lattice(spec: &str, cap: usize) -> hyperind::Result<(FiniteGroup, SubgroupLattice)> {
    let g = make_group_with_cap(spec, cap)?;
    let lattice = SubgroupLattice::new(&g);
    Ok((g, lattice))
}

/// Computes the report for a command. The exit status is nonzero when an audit
/// or the property suite found a failure.
pub fn compute(cli: &Cli) -> hyperind::Result<(Report, i32)> {
    let cap = cli.cap;
    let views = |g: &FiniteGroup, cs: &[SubgroupClass]| -> Vec<ClassView> {
        cs.iter().map(|c| ClassView::new(g, c)).collect()
    };
    let report = match &cli.command {
        Command::Families(GroupPrime { group, prime }) => {
            let (g, lattice) = group_and_lattice(group, cap)?;
            let r = family_report_with(&g, &lattice, *prime)?;
            Report::Families(FamiliesReport {
                group: g.label().to_string(),
                order: g.order(),
                prime: *prime,
                p_subgroups: views(&g, &r.p_subgroup_classes),
                p_elementary: views(&g, &r.p_elementary_classes),
                p_hyperelementary: views(&g, &r.p_hyperelementary_classes),
            })
        }
        Command::Generation { target, dedupe: collapse } => {
            let (g, lattice) = group_and_lattice(&target.group, cap)?;
            let mut data = generation_data_with(&g, &lattice, target.prime)?;
            if *collapse {
                data = dedupe(&data);
            }
            Report::Generation(GenerationReport {
                group: g.label().to_string(),
                order: g.order(),
                prime: target.prime,
                deduplicated: *collapse,
                basis: GENERATION_BASIS.to_string(),
                data: data
                    .iter()
                    .map(|d| DatumView {
                        p_subgroup: ClassView::new(&g, &d.p_class),
                        element: d.element,
                        element_name: d.element_name.clone(),
                        element_order: d.element_order,
                        allowed_primes: d.allowed_primes.clone(),
                        target: d.target.members().to_vec(),
                        target_class: ClassView::new(&g, &d.target_class),
                        plain_induction: d.plain_induction,
                    })
                    .collect(),
            })
        }
        Command::Cover(GroupPrime { group, prime }) => {
            let g = make_group_with_cap(group, cap)?;
            let classes = elementary_cover(&g, *prime)?;
            Report::Cover(CoverReport {
                group: g.label().to_string(),
                order: g.order(),
                prime: *prime,
                basis: COVER_BASIS.to_string(),
                classes: views(&g, &classes),
            })
        }
        Command::Classify {
            target,
            big_m,
            window,
        } => {
            if *big_m == 0 {
                return Err(Error::InvalidArgument("M must be positive".into()));
            }
            let g = make_group_with_cap(&target.group, cap)?;
            let sweep = classify_all(&g, target.prime, *big_m)?;
            let window = window.unwrap_or(3 * sweep.modulus as i64);
            let audit_failures = audit_sweep(&sweep, &g, window);
            let records: Vec<RecordView> = sweep
                .records
                .iter()
                .map(|r| {
                    let rec = &r.subgroup.record;
                    let (case, witnesses) = match &r.case {
                        Case::Deep { .. } => ("deep", None),
                        Case::Elementary(d) => (
                            "elementary",
                            Some(WitnessView {
                                p_subgroup: d.p_subgroup.members().to_vec(),
                                ell: d.ell,
                                u: d.u,
                                g0: d.g0,
                                g0_name: g.name(d.g0).to_string(),
                                k: d.k,
                            }),
                        ),
                    };
                    RecordView {
                        order: r.order,
                        first_projection: rec.a.members().to_vec(),
                        kernel_side: rec.b.members().to_vec(),
                        d1: rec.d1,
                        d2: rec.d2,
                        ell: rec.ell(),
                        unit: rec.iso.unit,
                        m: r.m,
                        elementary: r.elementary,
                        case: case.to_string(),
                        witnesses,
                    }
                })
                .collect();
            let deep = records.iter().filter(|r| r.case == "deep").count();
            Report::Classify(ClassifyReport {
                group: g.label().to_string(),
                order: g.order(),
                prime: target.prime,
                big_m: *big_m,
                modulus: sweep.modulus,
                window,
                deep,
                elementary: records.len() - deep,
                audit_failures,
                records,
            })
        }
        Command::Dress(GroupPrime { group, prime }) => {
            let (g, lattice) = group_and_lattice(group, cap)?;
            let marks = marks_matrix_with(&g, &lattice, *prime)?;
            let cert = dress_certificate_with(&g, &lattice, *prime)?;
            let verified = verify_certificate(&g, &cert);
            Report::Dress(DressReport {
                group: g.label().to_string(),
                order: g.order(),
                prime: *prime,
                marks_rows: views(&g, &marks.rows),
                marks_columns: views(&g, &marks.columns),
                marks: marks.entries,
                certificate: cert.to_document()?,
                verified,
            })
        }
        Command::Exponents { n, slack } => Report::Exponents(ExponentsView {
            basis: EXPONENT_BASIS.to_string(),
            report: exponent_report_with_slack(*n, *slack)?,
        }),
        Command::Vanishing { group } => {
            let (label, order) = match group.trim().parse::<u64>() {
                Ok(0) => return Err(Error::InvalidArgument("order must be positive".into())),
                Ok(n) => (format!("order {n}"), n),
                Err(_) => {
                    let g = make_group_with_cap(group, cap)?;
                    (g.label().to_string(), g.order() as u64)
                }
            };
            Report::Vanishing(VanishingView {
                group: label,
                basis: VANISHING_BASIS.to_string(),
                report: vanishing_report_for_order(order),
            })
        }
        Command::Verify => {
            let checks = run_all()?;
            Report::Verify(VerifyReport {
                passed: checks.iter().all(|c| c.passed),
                checks,
            })
        }
    };
    let code = match &report {
        Report::Classify(r) if !r.audit_failures.is_empty() => 4,
        Report::Dress(r) if !r.verified => 4,
        Report::Verify(r) if !r.passed => 1,
        _ => 0,
    };
    Ok((report, code))
}

fn class_line(c: &ClassView) -> String {
    format!(
        "order {:>3}  x{:<3} {{{}}}",
        c.order,
        c.class_size,
        c.names.join(", ")
    )
}

fn class_block(out: &mut String, title: &str, classes: &[ClassView]) {
    let _ = writeln!(out, "{title} ({} classes)", classes.len());
    for c in classes {
        let _ = writeln!(out, "  {}", class_line(c));
    }
}

/// Human-readable rendering.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Families(r) => {
            let _ = writeln!(out, "group {} (order {}), p = {}", r.group, r.order, r.prime);
            class_block(&mut out, "p-subgroups", &r.p_subgroups);
            class_block(&mut out, "p-elementary", &r.p_elementary);
            class_block(&mut out, "p-hyperelementary", &r.p_hyperelementary);
        }
        Report::Generation(r) => {
            let _ = writeln!(out, "group {} (order {}), p = {}", r.group, r.order, r.prime);
            let _ = writeln!(out, "{}", r.basis);
            let _ = writeln!(out, "{} data{}", r.data.len(), if r.deduplicated { " (deduplicated)" } else { "" });
            for d in &r.data {
                let primes: Vec<String> = d.allowed_primes.iter().map(u64::to_string).collect();
                let _ = writeln!(
                    out,
                    "  |P| = {:<3} g = {:<14} |g| = {:<3} I(g) primes {{{}}}  |E| = {}{}",
                    d.p_subgroup.order,
                    d.element_name,
                    d.element_order,
                    primes.join(", "),
                    d.target_class.order,
                    if d.plain_induction { "  plain induction" } else { "" }
                );
            }
        }
        Report::Cover(r) => {
            let _ = writeln!(out, "group {} (order {}), p = {}", r.group, r.order, r.prime);
            let _ = writeln!(out, "{}", r.basis);
            class_block(&mut out, "p-elementary cover", &r.classes);
        }
        Report::Classify(r) => {
            let _ = writeln!(
                out,
                "group {} (order {}), p = {}, M = {}, N = {}",
                r.group, r.order, r.prime, r.big_m, r.modulus
            );
            let _ = writeln!(
                out,
                "{} p-hyperelementary subgroups of G x Z/{}: {} deep, {} elementary",
                r.records.len(),
                r.modulus,
                r.deep,
                r.elementary
            );
            let _ = writeln!(out, "  {:>4} {:>5} {:>4} {:>4} {:>5} {:>5} {:>4} {:>5}  case", "#", "|H|", "|A|", "|B|", "d1", "d2", "ell", "m");
            for (i, rec) in r.records.iter().enumerate() {
                let extra = match &rec.witnesses {
                    Some(w) => format!("  |P| = {}, u = {}, g0 = {}, k = {}", w.p_subgroup.len(), w.u, w.g0_name, w.k),
                    None => String::new(),
                };
                let _ = writeln!(
                    out,
                    "  {:>4} {:>5} {:>4} {:>4} {:>5} {:>5} {:>4} {:>5}  {}{}",
                    i,
                    rec.order,
                    rec.first_projection.len(),
                    rec.kernel_side.len(),
                    rec.d1,
                    rec.d2,
                    rec.ell,
                    rec.m,
                    rec.case,
                    extra
                );
            }
            if r.audit_failures.is_empty() {
                let _ = writeln!(out, "audit (window {}): all records pass", r.window);
            } else {
                let _ = writeln!(out, "audit (window {}): failing records {:?}", r.window, r.audit_failures);
            }
        }
        Report::Dress(r) => {
            let _ = writeln!(out, "group {} (order {}), p = {}", r.group, r.order, r.prime);
            let cols: Vec<String> = r.marks_columns.iter().map(|c| c.order.to_string()).collect();
            let _ = writeln!(out, "marks on cyclic classes of orders [{}]", cols.join(", "));
            for (row, class) in r.marks.iter().zip(&r.marks_rows) {
                let entries: Vec<String> = row.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "  G/H, |H| = {:<4} [{}]", class.order, entries.join(", "));
            }
            let _ = writeln!(out, "certificate ({} terms):", r.certificate.entries.len());
            for e in &r.certificate.entries {
                let coefficient = if e.denominator == 1 {
                    e.numerator.to_string()
                } else {
                    format!("{}/{}", e.numerator, e.denominator)
                };
                let _ = writeln!(out, "  a = {:<8} |H| = {:<4} {:?}", coefficient, e.subgroup.len(), e.subgroup);
            }
            let _ = writeln!(out, "verified: {}", r.verified);
        }
        Report::Exponents(v) => {
            let r = &v.report;
            let _ = writeln!(out, "n = {}", r.n);
            for b in &r.per_prime {
                let _ = writeln!(out, "  c_{}({}) = {}^{} = {}", b.prime, r.n, b.prime, b.l, b.bound);
            }
            let _ = writeln!(out, "c = {}", r.c);
            let _ = writeln!(out, "d = {}", r.d);
            let _ = writeln!(out, "refined NK_0 bound = {} (derived)", r.refined_nk0);
            let primes: Vec<String> = r.vanishing_primes.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "vanishing primes = {{{}}}", primes.join(", "));
            if r.slack > 0 {
                let _ = writeln!(out, "slack = {}", r.slack);
            }
        }
        Report::Vanishing(v) => {
            let r = &v.report;
            let primes: Vec<String> = r.zero_localizations.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "{} (|G| = {})", v.group, r.order);
            let _ = writeln!(out, "square-free: {}", r.squarefree);
            let _ = writeln!(out, "zero localizations: {{{}}}", primes.join(", "));
            let _ = writeln!(out, "{}", r.statement);
        }
        Report::Verify(r) => {
            for c in &r.checks {
                let _ = writeln!(out, "{}", c.summary());
                for f in c.failures.iter().take(20) {
                    let _ = writeln!(out, "    {f}");
                }
            }
            let _ = writeln!(out, "{}", if r.passed { "all checks passed" } else { "some checks failed" });
        }
    }
    out
}

pub fn render(report: Report, format: Format) -> String {
    match format {
        Format::Text => render_text(&report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Document::new(report)).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// Runs a command and renders its output. Errors become a message and exit status.
pub fn run(cli: &Cli) -> Outcome {
    match compute(cli) {
        Ok((report, code)) => Outcome {
            code,
            output: render(report, cli.format),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            output: format!("error: {e}\n"),
        },
    }
}
