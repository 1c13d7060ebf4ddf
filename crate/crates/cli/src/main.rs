//! `npc` — exact calculus of finitely supported monomial ideals.
//!
//! Subcommands mirror the library layers: `basis`, `prox-matrix`, and
//! `principalize` expose the combinatorial data of a blowup tree;
//! `adjoint` computes the adjoint ideal by any of three routes; `cohom`
//! runs weight-graded cohomology over a certified window; `check` and
//! `sweep` drive the identity suites.
//!
//! Exit codes for `check`/`sweep`: 0 all passed, 1 failure (with a
//! witness), 2 only skips or inconclusive windows, 3 usage error.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use npc_core::constellation::{Constellation, Divisor};
use npc_core::harness::{self, CheckReport, SuiteEntry, SweepParams};
use npc_core::monomial::{
    adjoint_ideal, integral_closure, principalize, MonomialIdeal, Principalization,
    PrincipalizationTree,
};
use npc_core::toric::{
    adjoint_via_sections, cech_dims, ideal_of_basis, injectivity_check, ray_coefficients,
    CohomOptions,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "npc", version, about = "calculus of finitely supported monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct IdealArg {
    /// Ideal as `x^2, y^3` or as a path to `{"d":2,"gens":[[2,0],[0,3]]}`.
    #[arg(long)]
    ideal: String,
    /// Minimum number of variables (inferred from the generators if larger).
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AdjointMethod {
    /// Interior lattice points of the Newton polyhedron.
    Newton,
    /// Global sections of the canonical twist on the blowup.
    Sections,
    /// Point-basis formula `max(r + 1 - d, 0)` realized by sections.
    Basis,
    /// All three, with agreement required.
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Point basis and constellation of an ideal.
    Basis(IdealArg),
    /// Proximity matrix and inverse of a constellation (or an ideal's tree).
    ProxMatrix {
        /// Path to a constellation JSON document.
        #[arg(long)]
        constellation: Option<PathBuf>,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Blow up base points until every tracked ideal is principal.
    Principalize {
        #[command(flatten)]
        ideal: IdealArg,
        /// Additional ideals tracked on the same tree.
        #[arg(long = "with")]
        with: Vec<String>,
        /// Write the tree to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Adjoint ideal (multiplier ideal at exponent one).
    Adjoint {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, value_enum, default_value = "all")]
        method: AdjointMethod,
    },
    /// Integral closure via the Newton polyhedron.
    Closure(IdealArg),
    /// Weight-graded cohomology of `O(D)` over a certified window.
    Cohom {
        /// Path to a tree produced by `principalize --out`.
        #[arg(long)]
        tree: Option<PathBuf>,
        /// Or build the tree from this ideal.
        #[arg(long)]
        ideal: Option<String>,
        /// Divisor: `E`-coefficients like `[2,3,6]`, or `D_I`, `K_f`,
        /// `D_I+K_f`, `0`.
        #[arg(long, default_value = "D_I")]
        divisor: String,
        #[arg(long, default_value_t = 2)]
        max_i: usize,
        #[arg(long, default_value_t = 16)]
        window: i64,
        /// Also test injectivity into `O(D + nE)` for `n = 1..=this`.
        #[arg(long)]
        inject: Option<i64>,
    },
    /// Run one named check, or `all`.
    Check {
        /// Check name (`adjoint`, `transform-commutes`, `pullout`,
        /// `product-factor`, `subadditivity`, `product-inclusion`,
        /// `colon-duality`, `vanishing`, `injectivity`,
        /// `duality-colength`, `adjoint-sweep-d2`, `adjoint-sweep-d3`)
        /// or `all`.
        name: String,
        /// JSON parameters, e.g. `{"i": "x,y", "j": "x^2,y^2"}`.
        #[arg(long)]
        params: Option<String>,
        /// Suite file: JSON list of {check, params}.
        #[arg(long)]
        suite: Option<PathBuf>,
        /// Shorthand for `--params {"ideal": ...}`.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Parameter-family sweep written as CSV.
    Sweep {
        /// `adjoint-d2`, `adjoint-d3`, or `colon-duality`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        count: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_exp: Option<i64>,
        /// Output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_ideal(spec: &str, dim: Option<usize>) -> Result<MonomialIdeal> {
    let trimmed = spec.trim();
    if trimmed.ends_with(".json") || std::path::Path::new(trimmed).is_file() {
        let text = std::fs::read_to_string(trimmed)
            .with_context(|| format!("reading ideal file {trimmed}"))?;
        let ideal: MonomialIdeal = serde_json::from_str(&text)?;
        return Ok(ideal);
    }
    MonomialIdeal::parse_with_min_dim(trimmed, dim.unwrap_or(1)).map_err(|e| anyhow!(e))
}

fn tree_of(ideals: &[MonomialIdeal]) -> Result<Principalization> {
    principalize(ideals).map_err(|e| anyhow!(e))
}

fn require_tree(p: Principalization) -> Result<PrincipalizationTree> {
    match p {
        Principalization::Tree(t) => Ok(t),
        Principalization::NotFinitelySupported(w) => bail!(
            "ideal is not finitely supported: transform {} vanishes on a {}-dimensional subspace (coordinates {:?}) in chart {:?}",
            w.transform,
            w.subspace_dim(),
            w.vanishing,
            w.chart_path
        ),
    }
}

fn print_matrix(name: &str, m: &[Vec<i64>]) {
    println!("{name}:");
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
        println!("  [{}]", cells.join(" "));
    }
}

fn divisor_coeffs(tree: &PrincipalizationTree, spec: &str) -> Result<Vec<i64>> {
    let vals = tree
        .constellation
        .divisor_of_basis(&tree.bases[0])
        .map_err(|e| anyhow!(e))?;
    let canonical = tree
        .constellation
        .canonical_divisor()
        .map_err(|e| anyhow!(e))?;
    match spec.trim() {
        "D_I" => Ok(vals.coeffs),
        "K_f" => Ok(canonical.coeffs),
        "D_I+K_f" | "D_I + K_f" => Ok(vals
            .coeffs
            .iter()
            .zip(&canonical.coeffs)
            .map(|(a, b)| a + b)
            .collect()),
        "0" => Ok(vec![0; tree.constellation.len()]),
        other => {
            let coeffs: Vec<i64> = serde_json::from_str(other).with_context(|| {
                format!("divisor must be E-coefficients like [2,3,6], or D_I, K_f, D_I+K_f, 0; got {other}")
            })?;
            Ok(coeffs)
        }
    }
}

fn emit_reports(reports: &[CheckReport], json: bool) -> i32 {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(reports).expect("serializable")
        );
    } else {
        for rep in reports {
            println!("{}", rep.one_line());
            for d in &rep.details {
                if d.starts_with("FAILED")
                    || d.starts_with("skipped")
                    || d.starts_with("inconclusive")
                {
                    println!("    {d}");
                }
            }
        }
        let (p, f, s, i) = reports.iter().fold((0, 0, 0, 0), |acc, r| {
            use npc_core::harness::Verdict::*;
            match r.verdict {
                Pass => (acc.0 + 1, acc.1, acc.2, acc.3),
                Fail => (acc.0, acc.1 + 1, acc.2, acc.3),
                Skipped => (acc.0, acc.1, acc.2 + 1, acc.3),
                Inconclusive => (acc.0, acc.1, acc.2, acc.3 + 1),
            }
        });
        println!("summary: {p} passed, {f} failed, {s} skipped, {i} inconclusive");
    }
    harness::exit_code(reports)
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    let json = cli.json;
    match cli.command {
        Command::Basis(arg) => {
            let ideal = parse_ideal(&arg.ideal, arg.dim)?;
            let tree = require_tree(tree_of(std::slice::from_ref(&ideal))?)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "constellation": tree.constellation,
                        "basis": tree.bases[0],
                    })
                );
            } else {
                println!(
                    "constellation: {}",
                    serde_json::to_string(&tree.constellation)?
                );
                println!("point basis:   {:?}", tree.bases[0].entries());
            }
            Ok(0)
        }
        Command::ProxMatrix {
            constellation,
            ideal,
        } => {
            let c: Constellation = match (constellation, ideal) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str(&text)?
                }
                (None, Some(spec)) => {
                    let ideal = parse_ideal(&spec, None)?;
                    require_tree(tree_of(&[ideal])?)?.constellation
                }
                (None, None) => bail!("provide --constellation or --ideal"),
            };
            let pm = c.proximity_matrix().map_err(|e| anyhow!(e))?;
            if json {
                println!("{}", serde_json::json!({"p": pm.p, "p_inverse": pm.inv}));
            } else {
                print_matrix("p", &pm.p);
                print_matrix("p^-1", &pm.inv);
            }
            Ok(0)
        }
        Command::Principalize { ideal, with, out } => {
            let mut ideals = vec![parse_ideal(&ideal.ideal, ideal.dim)?];
            for spec in &with {
                let d = ideals[0].dim();
                ideals.push(parse_ideal(spec, Some(d))?);
            }
            match tree_of(&ideals)? {
                Principalization::Tree(tree) => {
                    if let Some(path) = &out {
                        std::fs::write(path, serde_json::to_string_pretty(&tree)?)
                            .with_context(|| format!("writing {}", path.display()))?;
                        if !json {
                            println!("tree written to {}", path.display());
                        }
                    }
                    if json {
                        println!("{}", serde_json::json!({"status": "tree", "tree": tree}));
                    } else {
                        println!("base points: {}", tree.constellation.len());
                        for (k, b) in tree.bases.iter().enumerate() {
                            println!("basis[{k}]: {:?}", b.entries());
                        }
                        for i in 0..tree.constellation.len() {
                            let ray = &tree.fan.rays[tree.fan.exceptional_ray(i)];
                            println!(
                                "E{}: ray {:?}, chart {:?}",
                                i + 1,
                                ray.coords,
                                tree.charts[i].path
                            );
                        }
                    }
                    Ok(0)
                }
                Principalization::NotFinitelySupported(w) => {
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({"status": "not_finitely_supported", "witness": w})
                        );
                    } else {
                        println!("not finitely supported");
                        println!(
                            "  chart path {:?}: transform {} vanishes on the {}-dimensional subspace cut out by coordinates {:?}",
                            w.chart_path,
                            w.transform,
                            w.subspace_dim(),
                            w.vanishing
                        );
                    }
                    Ok(0)
                }
            }
        }
        Command::Adjoint { ideal, method } => {
            let ideal = parse_ideal(&ideal.ideal, ideal.dim)?;
            let newton = || adjoint_ideal(&ideal).map_err(|e| anyhow!(e));
            let with_tree = |f: &dyn Fn(&PrincipalizationTree) -> Result<MonomialIdeal>| {
                let tree = require_tree(tree_of(std::slice::from_ref(&ideal))?)?;
                f(&tree)
            };
            let sections_route =
                |t: &PrincipalizationTree| adjoint_via_sections(t, 0).map_err(|e| anyhow!(e));
            let basis_route = |t: &PrincipalizationTree| {
                ideal_of_basis(t, &t.bases[0].adjoint(t.constellation.dim()))
                    .map_err(|e| anyhow!(e))
            };
            let result = match method {
                AdjointMethod::Newton => newton()?,
                AdjointMethod::Sections => with_tree(&sections_route)?,
                AdjointMethod::Basis => with_tree(&basis_route)?,
                AdjointMethod::All => {
                    let a = newton()?;
                    let b = with_tree(&sections_route)?;
                    let c = with_tree(&basis_route)?;
                    if a != b || b != c {
                        bail!("adjoint routes disagree: newton {a}, sections {b}, basis {c}");
                    }
                    a
                }
            };
            if json {
                println!("{}", serde_json::to_string(&result)?);
            } else {
                println!("{result}");
            }
            Ok(0)
        }
        Command::Closure(arg) => {
            let ideal = parse_ideal(&arg.ideal, arg.dim)?;
            let closure = integral_closure(&ideal);
            if json {
                println!("{}", serde_json::to_string(&closure)?);
            } else {
                println!("{closure}");
            }
            Ok(0)
        }
        Command::Cohom {
            tree,
            ideal,
            divisor,
            max_i,
            window,
            inject,
        } => {
            let tree: PrincipalizationTree = match (tree, ideal) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str(&text)?
                }
                (None, Some(spec)) => require_tree(tree_of(&[parse_ideal(&spec, None)?])?)?,
                (None, None) => bail!("provide --tree or --ideal"),
            };
            tree.verify().map_err(|e| anyhow!("invalid tree: {e}"))?;
            let coeffs = divisor_coeffs(&tree, &divisor)?;
            let full = tree
                .constellation
                .is_full(&Divisor::new(coeffs.clone()))
                .map_err(|e| anyhow!(e))?;
            let a = ray_coefficients(&tree.fan, &coeffs).map_err(|e| anyhow!(e))?;
            let mut opts = CohomOptions::new(max_i).with_window(window, window.max(64));
            if let Ok(v) = std::env::var("NPC_WINDOW_CAP") {
                if let Ok(cap) = v.trim().parse::<i64>() {
                    opts.window_cap = cap.max(opts.initial_window);
                }
            }
            let report = cech_dims(&tree.fan, &a, &opts).map_err(|e| anyhow!(e))?;
            let inj = match inject {
                Some(max_n) if max_n >= 1 => {
                    let fiber = tree
                        .constellation
                        .fiber_divisor()
                        .map_err(|e| anyhow!(e))?;
                    let e = ray_coefficients(&tree.fan, &fiber.coeffs).map_err(|e| anyhow!(e))?;
                    let ns: Vec<i64> = (1..=max_n).collect();
                    Some(injectivity_check(&tree.fan, &a, &e, &ns, &opts).map_err(|e| anyhow!(e))?)
                }
                _ => None,
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "divisor_e_coeffs": coeffs,
                        "full": full,
                        "cohomology": report,
                        "injectivity": inj,
                    })
                );
            } else {
                println!("divisor (E-coefficients): {coeffs:?}, full: {full}");
                println!(
                    "window N = {} ({})",
                    report.window,
                    if report.certified {
                        "certified: boundary shell contributes 0"
                    } else {
                        "INCONCLUSIVE: cap reached without certificate"
                    }
                );
                for d in &report.dims {
                    println!("dim H^{}: {}", d.i, d.dim);
                }
                if let Some(inj) = &inj {
                    println!(
                        "injectivity into O(D + nE) for n in {:?}: {}",
                        inj.n_values,
                        if inj.injective { "injective" } else { "FAILS" }
                    );
                }
            }
            let ok = report.certified
                && inj
                    .as_ref()
                    .map(|i| i.certified && i.injective)
                    .unwrap_or(true);
            Ok(if ok { 0 } else { 2 })
        }
        Command::Check {
            name,
            params,
            suite,
            ideal,
        } => {
            let mut params: serde_json::Value = match params {
                Some(p) => serde_json::from_str(&p).context("parsing --params JSON")?,
                None => serde_json::json!({}),
            };
            if let Some(spec) = ideal {
                params["ideal"] = serde_json::Value::String(spec);
            }
            let reports = if name == "all" {
                let entries: Vec<SuiteEntry> = match suite {
                    Some(path) => {
                        let text = std::fs::read_to_string(&path)
                            .with_context(|| format!("reading {}", path.display()))?;
                        let entries: Vec<SuiteEntry> =
                            serde_json::from_str(&text).context("parsing suite file")?;
                        if entries.is_empty() {
                            bail!("suite file {} contains no checks", path.display());
                        }
                        entries
                    }
                    None => harness::default_suite(),
                };
                harness::run_suite(&entries)
            } else {
                vec![harness::run_check(&name, &params)]
            };
            Ok(emit_reports(&reports, json))
        }
        Command::Sweep {
            family,
            count,
            seed,
            max_exp,
            out,
        } => {
            let csv = harness::sweep_csv(&SweepParams {
                family,
                count,
                seed,
                max_exp,
            })
            .map_err(|e| anyhow!(e))?;
            let failed = csv.lines().skip(1).any(|l| l.contains(",fail,"));
            match out {
                Some(path) => {
                    std::fs::write(&path, &csv)
                        .with_context(|| format!("writing {}", path.display()))?;
                    if !json {
                        println!("sweep written to {}", path.display());
                    }
                }
                None => print!("{csv}"),
            }
            Ok(if failed { 1 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code.clamp(0, 255) as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}
