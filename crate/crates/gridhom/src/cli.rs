//! Command-line front end: subcommand dispatch, file loading, JSON output.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::aux_complexes::{planar_domains, planar_homology, PartitionComplex, PlanarGrid};
use crate::braid::{braid_closure_grid, diagonal_family_grid, BraidWord};
use crate::diagonal::{
    essential_pair_count, extract_tangle, is_integer_tangle, top_report, DiagonalSquare,
};
use crate::error::{GridError, Result};
use crate::gradings::{alexander, maslov};
use crate::grid::GridDiagram;
use crate::homology::{
    alexander_poly, hat_from_tilde, stratum_homology, tilde_homology, top_strata_tilde, Limits,
};
use crate::unknot::unknotting_sequence;

#[derive(Parser)]
#[command(name = "gridhom", version, about = "grid homology of knots over GF(2)")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunFlags,
}

/// Global run configuration.
#[derive(Args, Debug, Clone)]
pub struct RunFlags {
    /// Cap on grid size for full state enumeration
    #[arg(long, default_value_t = 10, global = true)]
    max_full_enum: usize,
    /// Memory budget for boundary matrices, in MiB
    #[arg(long, default_value_t = 8192, global = true)]
    budget_mb: usize,
    /// Worker thread cap (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized property tooling
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a grid file
    Validate { path: PathBuf },
    /// Basic facts about a grid: size, components, diagonality, gradings
    Info { path: PathBuf },
    /// Bigraded homology dims, full or per stratum
    Homology {
        path: PathBuf,
        /// Strata to compute, e.g. "g,g-1,g-2" or explicit integers
        #[arg(long)]
        strata: Option<String>,
        #[arg(long, default_value = "hat")]
        flavor: String,
    },
    /// The symmetrized Alexander polynomial
    Alexander { path: PathBuf },
    /// Diagonal-knot report: genus, top strata, the m-count with witnesses
    DiagonalReport {
        path: PathBuf,
        /// Assert that the diagram is size-minimal among diagonal diagrams
        #[arg(long)]
        assert_minimal: bool,
    },
    /// Build a grid from a braid word or the [m]-block family
    Braid2grid {
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 3)]
        strands: usize,
        /// Comma-separated block exponents m1,m2,...
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 0)]
        twists: usize,
    },
    /// Connected sum of two diagonal knot grids
    ConnectSum { left: PathBuf, right: PathBuf },
    /// Crossing-exchange unknotting sequence of a diagonal knot
    Unknot { path: PathBuf },
    /// Auxiliary combinatorial chain complexes
    Aux {
        #[command(subcommand)]
        which: AuxCommand,
    },
}

#[derive(Subcommand)]
enum AuxCommand {
    /// The ordered-partition complex C(N)
    Partition { n: usize },
    /// The planar-grid domain complex C(E) from an E-file
    Planar { path: PathBuf },
}

fn load_grid(path: &PathBuf) -> Result<GridDiagram> {
    let text = fs::read_to_string(path)
        .map_err(|e| GridError::Parse(format!("{}: {e}", path.display())))?;
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        GridDiagram::from_json(trimmed)
    } else {
        GridDiagram::from_compact(trimmed)
    }
}

fn dims_json(dims: &std::collections::BTreeMap<i32, usize>) -> Value {
    Value::Array(
        dims.iter()
            .map(|(&m, &d)| json!([m, d]))
            .collect(),
    )
}

fn parse_strata(spec: &str, genus: i64) -> Result<Vec<i64>> {
    spec.split(',')
        .map(|tok| {
            let t = tok.trim();
            if let Some(rest) = t.strip_prefix("g-") {
                let k: i64 = rest
                    .parse()
                    .map_err(|_| GridError::Parse(format!("bad stratum {t:?}")))?;
                Ok(genus - k)
            } else if t == "g" {
                Ok(genus)
            } else {
                t.parse()
                    .map_err(|_| GridError::Parse(format!("bad stratum {t:?}")))
            }
        })
        .collect()
}

fn poly_json(p: &crate::poly::LaurentPoly) -> Value {
    json!({
        "offset": p.min_exp().unwrap_or(0),
        "coeffs": p.coeffs(),
    })
}

fn execute(cmd: &Command, limits: &Limits) -> Result<Value> {
    match cmd {
        Command::Validate { path } => {
            let g = load_grid(path)?;
            Ok(json!({
                "valid": true,
                "size": g.size(),
                "components": g.component_count(),
                "diagonal": g.is_diagonal(),
            }))
        }
        Command::Info { path } => {
            let g = load_grid(path)?;
            let mut out = json!({
                "size": g.size(),
                "components": g.component_count(),
                "diagonal": g.is_diagonal(),
            });
            if g.is_knot() {
                let d = g.to_planar_diagram()?;
                out["crossings"] = json!(d.crossing_count());
                let x0 = crate::diagonal::canonical_state(&g);
                out["x0"] = json!({
                    "rows": x0.rows(),
                    "maslov": maslov(&g, &x0),
                    "alexander": alexander(&g, &x0)?,
                });
            }
            Ok(out)
        }
        Command::Homology {
            path,
            strata,
            flavor,
        } => {
            let g = load_grid(path)?;
            g.require_knot()?;
            let hat = match flavor.as_str() {
                "hat" => true,
                "tilde" => false,
                other => return Err(GridError::Parse(format!("unknown flavor {other:?}"))),
            };
            let mut tables = Vec::new();
            match strata {
                None => {
                    let tilde = tilde_homology(&g, limits)?;
                    let table = if hat {
                        hat_from_tilde(&tilde, g.size())?
                    } else {
                        tilde
                    };
                    let mut strata_list: Vec<i32> =
                        table.0.keys().map(|&(_, a)| a).collect();
                    strata_list.sort();
                    strata_list.dedup();
                    for s in strata_list {
                        tables.push(json!({
                            "stratum": s,
                            "dims": dims_json(&table.stratum(s)),
                            "flavor": if hat { "hat" } else { "tilde" },
                        }));
                    }
                }
                Some(spec) => {
                    g.require_diagonal()?;
                    let x0 = crate::diagonal::canonical_state(&g);
                    let genus = alexander(&g, &x0)?;
                    let wanted = parse_strata(spec, genus)?;
                    let back = wanted
                        .iter()
                        .map(|&s| genus - s)
                        .max()
                        .unwrap_or(0)
                        .max(0);
                    if hat {
                        let tilde = top_strata_tilde(&g, back, limits)?;
                        let table = crate::diagonal::hat_top_fragment(&tilde, g.size());
                        for &s in &wanted {
                            tables.push(json!({
                                "stratum": s,
                                "dims": dims_json(&table.stratum(s as i32)),
                                "flavor": "hat",
                            }));
                        }
                    } else {
                        for &s in &wanted {
                            let t = stratum_homology(&g, s, limits)?;
                            tables.push(json!({
                                "stratum": s,
                                "dims": dims_json(&t.stratum(s as i32)),
                                "flavor": "tilde",
                            }));
                        }
                    }
                }
            }
            Ok(Value::Array(tables))
        }
        Command::Alexander { path } => {
            let g = load_grid(path)?;
            let p = alexander_poly(&g, limits)?;
            Ok(poly_json(&p))
        }
        Command::DiagonalReport {
            path,
            assert_minimal,
        } => {
            let g = load_grid(path)?;
            let rep = top_report(&g, limits)?;
            let pairs = essential_pair_count(&g)?;
            let mut tangles = Vec::new();
            for w in &pairs.witnesses {
                for interval in [w.interval1, w.interval2] {
                    let d = DiagonalSquare::new(&g, interval.0, interval.1)?;
                    let t = extract_tangle(&g, &d)?;
                    tangles.push(json!({
                        "interval": [interval.0, interval.1],
                        "crossings": t.crossing_count(),
                        "integer": is_integer_tangle(&g, &d)?,
                    }));
                }
            }
            Ok(json!({
                "genus": rep.genus,
                "top": dims_json(&rep.top),
                "next": dims_json(&rep.next),
                "m": pairs.m,
                "witnesses": pairs
                    .witnesses
                    .iter()
                    .map(|w| json!({"interval1": [w.interval1.0, w.interval1.1],
                                     "interval2": [w.interval2.0, w.interval2.1]}))
                    .collect::<Vec<_>>(),
                "tangle_classification": tangles,
                "torus_2q_warning": pairs.torus_2q_warning,
                "minimality_asserted": assert_minimal,
            }))
        }
        Command::Braid2grid {
            word,
            strands,
            family,
            twists,
        } => {
            let g = match (word, family) {
                (Some(w), None) => {
                    let bw = BraidWord::parse(*strands, w)?;
                    braid_closure_grid(&bw)?
                }
                (None, Some(f)) => {
                    let ms: Vec<usize> = f
                        .split(',')
                        .map(|t| {
                            t.trim()
                                .parse()
                                .map_err(|_| GridError::Parse(format!("bad block {t:?}")))
                        })
                        .collect::<Result<_>>()?;
                    diagonal_family_grid(&ms, *twists)?
                }
                _ => {
                    return Err(GridError::Parse(
                        "exactly one of --word or --family is required".into(),
                    ))
                }
            };
            Ok(serde_json::from_str(&g.to_json()).unwrap())
        }
        Command::ConnectSum { left, right } => {
            let g1 = load_grid(left)?;
            let g2 = load_grid(right)?;
            let sum = g1.connected_sum(&g2)?;
            Ok(serde_json::from_str(&sum.to_json()).unwrap())
        }
        Command::Unknot { path } => {
            let g = load_grid(path)?;
            let rep = unknotting_sequence(&g)?;
            Ok(serde_json::to_value(&rep).unwrap())
        }
        Command::Aux { which } => match which {
            AuxCommand::Partition { n } => {
                let pc = PartitionComplex::new(*n);
                let dims: Vec<Value> = pc
                    .basis
                    .iter()
                    .map(|(&m, v)| json!([m, v.len()]))
                    .collect();
                let hom: Vec<Value> = pc
                    .homology()
                    .iter()
                    .map(|(&m, &d)| json!([m, d]))
                    .collect();
                Ok(json!({"n": n, "dims": dims, "homology": hom}))
            }
            AuxCommand::Planar { path } => {
                let text = fs::read_to_string(path)
                    .map_err(|e| GridError::Parse(format!("{}: {e}", path.display())))?;
                let e = PlanarGrid::from_json(text.trim())?;
                let domains = planar_domains(&e);
                let hom: Vec<Value> = planar_homology(&e)
                    .iter()
                    .map(|(&gr, &d)| json!([gr, d]))
                    .collect();
                Ok(json!({
                    "size": e.size,
                    "domains": domains.len(),
                    "homology": hom,
                    "symmetric_x_pair": e.has_symmetric_x_pair(),
                }))
            }
        },
    }
}

fn render_table(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, val)| match val {
                Value::Object(_) | Value::Array(_) => {
                    format!("{pad}{k}:\n{}", render_table(val, indent + 1))
                }
                _ => format!("{pad}{k}: {val}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Value::Array(items) => items
            .iter()
            .map(|it| match it {
                Value::Object(_) | Value::Array(_) => render_table(it, indent),
                _ => format!("{pad}{it}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => format!("{pad}{v}"),
    }
}

/// Run with the given arguments; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    if let Some(t) = cli.run.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    let limits = Limits {
        full_enum_cap: cli.run.max_full_enum,
        budget_mb: cli.run.budget_mb,
    };
    match execute(&cli.command, &limits) {
        Ok(v) => {
            match cli.run.format {
                Format::Json => println!("{}", serde_json::to_string(&v).unwrap()),
                Format::Table => println!("{}", render_table(&v, 0)),
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            let payload = json!({"error": e.to_string()});
            println!("{}", serde_json::to_string(&payload).unwrap());
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strata_spec_parsing() {
        assert_eq!(parse_strata("g,g-1,g-2", 4).unwrap(), vec![4, 3, 2]);
        assert_eq!(parse_strata("0, 1", 4).unwrap(), vec![0, 1]);
        assert!(parse_strata("g-x", 4).is_err());
    }
}
