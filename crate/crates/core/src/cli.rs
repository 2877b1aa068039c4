//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when at least one check fails,
//! 2 on input or usage errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::duality::{dual_edge_pairing, is_reflexive, picard_rho, polar_dual_lattice, rk_l0};
use crate::error::{Error, Result};
use crate::format::{parse_points, write_points};
use crate::geom::{convex_hull, LatticePolytope};
use crate::iso::find_iso;
use crate::scenario::{load_scenario, run_checks, search_inputs};
use crate::search::{search, SearchConfig};

#[derive(Debug, Parser)]
#[command(
    name = "polydual",
    version,
    about = "Exact checks on reflexive lattice 3-polytopes"
)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every check on one or more pair scenarios.
    Verify {
        #[arg(required = true)]
        scenarios: Vec<PathBuf>,
    },
    /// Convex hull: vertices, f-vector and facets.
    Hull { file: PathBuf },
    /// Polar dual of a polytope containing the origin in its interior.
    Dual { file: PathBuf },
    /// Picard number of a reflexive polytope.
    Rho { file: PathBuf },
    /// rk L0 of a reflexive polytope.
    L0 { file: PathBuf },
    /// Search for a unimodular map carrying the first polytope onto the second.
    Iso { a: PathBuf, b: PathBuf },
    /// Sandwich search for reflexive polytopes between a scenario's Newton data.
    Search {
        scenario: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long)]
        require_l0_zero: bool,
        #[arg(long)]
        dedupe: bool,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn read_polytope(path: &Path) -> Result<LatticePolytope> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    convex_hull(&parse_points(&text)?)
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json value serializes")
    );
}

fn dispatch(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Verify { scenarios } => {
            let loaded = scenarios
                .iter()
                .map(load_scenario)
                .collect::<Result<Vec<_>>>()?;
            let reports: Vec<_> = loaded.iter().map(run_checks).collect();
            if cli.json {
                print_json(&serde_json::to_value(&reports).expect("report serializes"));
            } else {
                for r in &reports {
                    println!("{r}\n");
                }
                let failed = reports.iter().filter(|r| !r.passed).count();
                println!("{} scenario(s), {failed} failed", reports.len());
            }
            Ok(reports.iter().all(|r| r.passed))
        }
        Command::Hull { file } => {
            let p = read_polytope(file)?;
            if cli.json {
                print_json(&json!({ "f_vector": p.f_vector(), "polytope": p }));
            } else {
                print!("{}", write_points(p.vertices()));
                let (v, e, f) = p.f_vector();
                println!("\nf-vector: {v} {e} {f}");
                for facet in p.facets() {
                    println!(
                        "facet {} >= -{} : {:?}",
                        facet.normal, facet.level, facet.vertex_ids
                    );
                }
            }
            Ok(true)
        }
        Command::Dual { file } => {
            let p = read_polytope(file)?;
            let dual = polar_dual_lattice(&p)?;
            let vertices: Vec<[String; 3]> = dual
                .vertices()
                .iter()
                .map(|v| v.0.map(|c| c.to_string()))
                .collect();
            if cli.json {
                print_json(&json!({
                    "vertices": vertices,
                    "integral": dual.is_integral(),
                    "reflexive": is_reflexive(&p),
                }));
            } else {
                for v in &vertices {
                    println!("{}", v.join(" "));
                }
                println!("\nintegral: {}", dual.is_integral());
            }
            Ok(true)
        }
        Command::Rho { file } => {
            let p = read_polytope(file)?;
            if !is_reflexive(&p) {
                println!("not reflexive");
                return Ok(false);
            }
            let r = picard_rho(&p)?;
            if cli.json {
                print_json(&serde_json::to_value(&r).expect("report serializes"));
            } else {
                println!("rho: {}", r.rho);
                println!(
                    "  = {} lattice points of the dual - 4 - {} facet-interior points + rk L0 {}",
                    r.dual_lattice_points, r.dual_facet_interior_points, r.rk_l0
                );
                println!(
                    "literal edge sum l(dual edges) - 3: {}",
                    r.printed_formula_sum
                );
            }
            Ok(true)
        }
        Command::L0 { file } => {
            let p = read_polytope(file)?;
            if !is_reflexive(&p) {
                println!("not reflexive");
                return Ok(false);
            }
            let pairs = dual_edge_pairing(&p)?;
            let total = rk_l0(&p)?;
            if cli.json {
                print_json(&json!({ "rk_l0": total, "pairs": pairs }));
            } else {
                for pr in &pairs {
                    println!(
                        "edge {} <-> dual edge {}: l = {}, l* = {}",
                        pr.edge_id, pr.dual_edge_id, pr.l, pr.l_dual
                    );
                }
                println!("rk L0: {total}");
            }
            Ok(true)
        }
        Command::Iso { a, b } => {
            let p = read_polytope(a)?;
            let q = read_polytope(b)?;
            let witness = find_iso(&p, &q);
            if cli.json {
                print_json(&json!({ "witness": witness }));
            } else {
                match &witness {
                    Some(w) => println!("{}\nconvention: {}", w.matrix, w.convention),
                    None => println!("no unimodular equivalence"),
                }
            }
            Ok(witness.is_some())
        }
        Command::Search {
            scenario,
            budget,
            require_l0_zero,
            dedupe,
        } => {
            let s = load_scenario(scenario)?;
            let (f, fprime) = search_inputs(&s)?;
            let cfg = SearchConfig {
                max_candidates: *budget,
                require_l0_zero: *require_l0_zero,
                dedupe: *dedupe,
            };
            let result = search(&f, &fprime, &cfg)?;
            if cli.json {
                print_json(&json!({
                    "exhausted": result.exhausted,
                    "found": result.polytopes.len(),
                    "examined": result.examined,
                    "polytopes": result.polytopes,
                }));
            } else {
                println!("# {}: Newton data fixed; exhaustion says nothing about other compactifications", s.title());
                for sol in &result.polytopes {
                    println!("# rk L0 = {}, rho = {}", sol.rk_l0, sol.rho.rho);
                    println!("{}", write_points(sol.polytope.vertices()));
                }
                println!(
                    "exhausted: {}  found: {}",
                    result.exhausted,
                    result.polytopes.len()
                );
            }
            Ok(!result.polytopes.is_empty())
        }
    }
}
