//! Subcommand dispatch and verification reports.
//!
//! Every subcommand prints one record per identity checked. Text mode is
//! human-readable; `--format records` emits `check-name PASS|FAIL
//! [witness]` lines for machine consumption. Exit status: 0 when all
//! requested checks pass, 1 on a verification failure, 2 on usage or
//! configuration errors.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};

use crate::check::{CheckResult, Counterexample};
use crate::cohomology::{
    check_chain_map, check_class_equals_operator_cocycle, check_invariance, hh2_component,
    BarChain, CohomologyClass, KoszulChain,
};
use crate::config::{parse_config, Engine};
use crate::crossed::{parse_element, Monomial};
use crate::deform::{check_associativity, hecke_relations, StarProduct};
use crate::findim::{
    check_hminus1_module_algebra, center_dimension, findim_star, radical_dimension, taft_fixture,
};
use crate::group::{cocycle_check, is_symmetric};
use crate::hopf::{hopf_axiom_check, hopf_ideal_check, udf_check, HopfAlgebra};
use crate::qcalc::QContext;
use crate::scalar::ScalarField;

#[derive(Debug, Parser)]
#[command(
    name = "qdeform",
    about = "Exact verification engine for star-product deformations of group crossed products",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Path to the engine configuration.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    /// Sweep bound on total monomial degree; falls back to [sweep]
    /// max_degree, then 3.
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Two-cocycle identity and normalization sweep, plus symmetry report.
    CheckCocycle,
    /// Generator relations, skew-derivation rules, and module-algebra law
    /// for every configured factor.
    CheckModuleAlgebra,
    /// Universal-deformation-formula identities for the Hopf algebra ata
    /// given root order (or generic q).
    CheckUdf {
        /// Root-of-unity order (an integer >= 1) or `generic`.
        #[arg(long)]
        ell: String,
        /// t-adic truncation order for generic q (and q = 1).
        #[arg(long, default_value_t = 6)]
        trunc: u32,
    },
    /// Star-product associativity over all group parts.
    CheckAssoc,
    /// Star product of two elements in the literal grammar.
    Star {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Graded Hecke-type relations extracted from the configured factors.
    Hecke,
    /// Degree-two cohomology component per group element.
    Hh2,
    /// Differentials square to zero and the chain-map squares commute.
    ChainmapTest,
    /// The four-dimensional quiver-algebra deformation demo.
    TaftDemo {
        /// Deformation parameter value.
        #[arg(long, default_value = "1")]
        t0: String,
    },
}

struct Report {
    format: Format,
    records: Vec<(String, CheckResult)>,
    notes: Vec<String>,
}

impl Report {
    fn new(format: Format) -> Self {
        Report {
            format,
            records: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn record(&mut self, name: impl Into<String>, result: CheckResult) {
        self.records.push((name.into(), result));
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn passed(&self) -> bool {
        self.records.iter().all(|(_, r)| r.is_ok())
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for (name, result) in &self.records {
            match (self.format, result) {
                (Format::Text, Ok(())) => {
                    let _ = writeln!(out, "PASS {name}");
                }
                (Format::Text, Err(ce)) => {
                    let _ = writeln!(out, "FAIL {name}");
                    let _ = writeln!(out, "     at {}", ce.location);
                    let _ = writeln!(out, "     lhs = {}", ce.lhs);
                    let _ = writeln!(out, "     rhs = {}", ce.rhs);
                }
                (Format::Records, Ok(())) => {
                    let _ = writeln!(out, "{} PASS", record_name(name));
                }
                (Format::Records, Err(ce)) => {
                    let _ = writeln!(out, "{} FAIL {}", record_name(name), compact(ce));
                }
            }
        }
        if self.format == Format::Text {
            for n in &self.notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        out
    }
}

fn record_name(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_whitespace() { '-' } else { c })
        .collect()
}

fn compact(ce: &Counterexample) -> String {
    let s = format!("{} | lhs = {} | rhs = {}", ce.location, ce.lhs, ce.rhs);
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Runs a parsed command line; returns the process exit status.
pub fn run(cli: &Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn load_engine(cli: &Cli) -> Result<Engine, String> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| "this subcommand needs --config <path>".to_string())?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let cfg = parse_config(&text).map_err(|e| e.to_string())?;
    cfg.build().map_err(|e| e.to_string())
}

fn sweep_degree(cli: &Cli, engine: Option<&Engine>) -> u32 {
    cli.max_degree
        .or(engine.map(|e| e.max_degree))
        .unwrap_or(3)
}

fn dispatch(cli: &Cli) -> Result<i32, String> {
    let mut report = Report::new(cli.format);
    match &cli.command {
        Command::CheckCocycle => {
            let engine = load_engine(cli)?;
            let group = engine.algebra.group();
            let alpha = engine.algebra.cocycle();
            report.record("cocycle-condition", cocycle_check(alpha, group));
            match is_symmetric(alpha, group) {
                Ok(()) => report.note("cocycle is symmetric (a coboundary for abelian groups)"),
                Err(ce) => report.note(format!(
                    "cocycle is not symmetric, hence not a coboundary (witness: {})",
                    compact(&ce)
                )),
            }
        }
        Command::CheckModuleAlgebra => {
            let engine = load_engine(cli)?;
            let d = sweep_degree(cli, Some(&engine));
            if engine.factors.is_empty() {
                return Err("no [deformation] factors configured".into());
            }
            for (i, f) in engine.factors.iter().enumerate() {
                report.record(
                    format!("module-algebra-factor-{}", i + 1),
                    crate::action::check_module_algebra(f, d),
                );
                report.record(
                    format!("skew-derivations-factor-{}", i + 1),
                    crate::action::check_skew_derivations(f, d),
                );
            }
        }
        Command::CheckUdf { ell, trunc } => {
            let (alg, label) = if ell == "generic" {
                let ctx = QContext::new(ScalarField::generic().q_power(1).unwrap());
                (HopfAlgebra::standard(ctx), "generic".to_string())
            } else {
                let n: u64 = ell
                    .parse()
                    .map_err(|_| format!("--ell must be an integer >= 1 or `generic`, got {ell}"))?;
                if n == 0 {
                    return Err("--ell must be an integer >= 1 or `generic`".into());
                }
                let field = ScalarField::cyclotomic(n);
                let q = if n == 1 {
                    field.one()
                } else {
                    field.zeta().unwrap()
                };
                (HopfAlgebra::standard(QContext::new(q)), format!("ell-{n}"))
            };
            report.record(format!("hopf-axioms-{label}"), hopf_axiom_check(&alg));
            if alg.ctx().root_of_unity_order().is_some() {
                report.record(
                    format!("hopf-ideal-{label}"),
                    hopf_ideal_check(alg.ctx()),
                );
                report.record(format!("udf-identity-{label}"), udf_check(&alg, None));
            } else {
                report.record(
                    format!("udf-identity-{label}-t{trunc}"),
                    udf_check(&alg, Some(*trunc)),
                );
            }
        }
        Command::CheckAssoc => {
            let engine = load_engine(cli)?;
            let d = sweep_degree(cli, Some(&engine));
            if engine.factors.is_empty() {
                return Err("no [deformation] factors configured".into());
            }
            match StarProduct::new(engine.factors.clone(), d) {
                Ok(star) => {
                    report.record("factor-compatibility", Ok(()));
                    report.record("star-associativity", check_associativity(&star, d));
                }
                Err(e) => {
                    report.record(
                        "factor-compatibility",
                        Err(Counterexample::new(e.to_string(), "-", "-")),
                    );
                }
            }
        }
        Command::Star { a, b } => {
            let engine = load_engine(cli)?;
            let d = sweep_degree(cli, Some(&engine));
            let a = parse_element(&engine.algebra, a).map_err(|e| e.to_string())?;
            let b = parse_element(&engine.algebra, b).map_err(|e| e.to_string())?;
            let star =
                StarProduct::new(engine.factors.clone(), d).map_err(|e| e.to_string())?;
            println!("{}", star.star(&a, &b));
            return Ok(0);
        }
        Command::Hecke => {
            let engine = load_engine(cli)?;
            let d = sweep_degree(cli, Some(&engine));
            let star =
                StarProduct::new(engine.factors.clone(), d).map_err(|e| e.to_string())?;
            for rel in hecke_relations(&star) {
                println!("{rel}");
            }
            return Ok(0);
        }
        Command::Hh2 => {
            let engine = load_engine(cli)?;
            let d = sweep_degree(cli, Some(&engine));
            let group = engine.algebra.group();
            let alpha = engine.algebra.cocycle();
            for g in group.elements() {
                let comp = hh2_component(group, alpha, &g, d);
                match comp.exclusion {
                    Some(reason) => println!("{g}: dimension 0 (reason: {reason})"),
                    None => {
                        let basis: Vec<String> =
                            comp.basis.iter().map(|b| b.to_string()).collect();
                        println!(
                            "{g}: dimension {} {{ {} }}",
                            comp.dimension,
                            basis.join(", ")
                        );
                    }
                }
            }
            // consistency certificates for the configured factors
            for (i, f) in engine.factors.iter().enumerate() {
                match CohomologyClass::from_factor(f) {
                    Ok(class) => {
                        report.record(
                            format!("class-invariance-factor-{}", i + 1),
                            check_invariance(&class),
                        );
                        report.record(
                            format!("class-equals-operator-cocycle-factor-{}", i + 1),
                            check_class_equals_operator_cocycle(&class, f, d),
                        );
                    }
                    Err(e) => report.record(
                        format!("class-invariance-factor-{}", i + 1),
                        Err(Counterexample::new(e.to_string(), "-", "-")),
                    ),
                }
            }
        }
        Command::ChainmapTest => {
            let engine = load_engine(cli)?;
            let d = sweep_degree(cli, Some(&engine));
            let field = engine.algebra.field().clone();
            let n = engine.algebra.dim();
            report.record("bar-differential-squares-to-zero", bar_square_sample(&field, n, d));
            report.record(
                "koszul-differential-squares-to-zero",
                koszul_square_sample(&field, n, d),
            );
            report.record("chain-map-squares", check_chain_map(&field, n, d));
        }
        Command::TaftDemo { t0 } => {
            let field = ScalarField::cyclotomic(1);
            let t0 = field.parse(t0).map_err(|e| e.to_string())?;
            let (algebra, sigma, d1, d2) = taft_fixture(&field);
            report.record(
                "taft-module-algebra",
                check_hminus1_module_algebra(&algebra, &sigma, &d1, &d2),
            );
            println!("deformed presentation (t the deformation parameter):");
            println!("  s0 + s1 = 1, s_i s_i = s_i, s_i s_(i+1) = 0");
            println!("  s_(i+1) gamma_i = gamma_i, gamma_i s_i = gamma_i, others 0");
            for (i, j, name) in [(2usize, 3usize, "gamma0 * gamma1"), (3, 2, "gamma1 * gamma0")] {
                let defect = algebra.mul(
                    &d1.apply(&algebra.basis_vector(i)),
                    &d2.apply(&algebra.basis_vector(j)),
                );
                println!("  {name} = t * ({})", algebra.show(&defect));
            }
            match findim_star(&algebra, &d1, &d2, &t0) {
                Ok(deformed) => {
                    report.record("taft-star-associative", Ok(()));
                    println!("specialized at t0 = {t0}:");
                    println!("  radical dimension = {}", radical_dimension(&deformed));
                    println!("  center dimension  = {}", center_dimension(&deformed));
                    println!(
                        "  undeformed radical dimension = {}",
                        radical_dimension(&algebra)
                    );
                }
                Err(e) => {
                    report.record(
                        "taft-star-associative",
                        Err(Counterexample::new(e.to_string(), "-", "-")),
                    );
                }
            }
        }
    }
    print!("{}", report.render());
    Ok(if report.passed() { 0 } else { 1 })
}

/// The bar differential squares to zero on all generator tensors with two
/// inner slots of total degree <= d, and on a fuller sample with outer
/// coefficients.
fn bar_square_sample(field: &ScalarField, n: usize, d: u32) -> CheckResult {
    let monos = Monomial::all_up_to_degree(n, d);
    for m1 in &monos {
        for m2 in &monos {
            if m1.degree() + m2.degree() > d {
                continue;
            }
            let c = BarChain::generator(field, n, vec![m1.clone(), m2.clone()]);
            let dd = crate::cohomology::bar_differential(&crate::cohomology::bar_differential(&c));
            if !dd.is_zero() {
                return Err(Counterexample::new(
                    format!("bar d^2 at ({m1}, {m2})"),
                    dd,
                    "0",
                ));
            }
        }
    }
    Ok(())
}

fn koszul_square_sample(field: &ScalarField, n: usize, d: u32) -> CheckResult {
    let monos = Monomial::all_up_to_degree(n, d.min(2));
    for u in 0..n {
        for v in (u + 1)..n {
            for m in &monos {
                let mut c = KoszulChain::zero(field, n, 2);
                c.add_term(vec![u, v], m.clone(), Monomial::one(n), field.one());
                let dd = crate::cohomology::koszul_differential(
                    &crate::cohomology::koszul_differential(&c),
                );
                if !dd.is_zero() {
                    return Err(Counterexample::new(
                        format!("koszul d^2 at e{}^e{} with {m}", u + 1, v + 1),
                        dd,
                        "0",
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Star products consume these too; re-exported for the binary.
pub fn parse_args_and_run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            // clap handles --help/--version with its own exit semantics
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
