use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use qlip_cli::fmt::sig12;
use qlip_cli::instance::{instance_file, parse_instance};
use qlip_cli::render::{render_svg, renderable};
use qlip_core::{
    g_distance, lower_bound_search, nearest_point_extension, solve_one_point, verify_counterexample,
    AnchoredMap, ExtensionResult, Point, SearchParams, SolveOptions,
};

/// Configuration-space metrics, Lipschitz constants, and one-point
/// Lipschitz extensions of multi-valued maps.
#[derive(Parser)]
#[command(name = "qlip", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between the first configurations of two instance files.
    Dist { file_a: PathBuf, file_b: PathBuf },
    /// Lipschitz constant of the map in an instance file.
    Lip { file: PathBuf },
    /// Best one-point extension at a point (optimal unless --heuristic).
    Extend {
        file: PathBuf,
        /// Extension point as whitespace-separated coordinates, e.g. "0 0";
        /// defaults to the instance file's "point" field.
        #[arg(long)]
        point: Option<String>,
        /// Allow the profile local-search fallback above the enumeration cap.
        #[arg(long)]
        heuristic: bool,
        /// Use the nearest-anchor value instead of optimizing.
        #[arg(long)]
        nearest: bool,
    },
    /// Verify every numerical claim of the regular-hexagon instance.
    VerifyHexagon {
        /// Tolerance on the extension bounds (at most 1e-3).
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        /// Grid step of the certified lower bound.
        #[arg(long, default_value_t = 0.02)]
        grid: f64,
    },
    /// Randomized search for instances with large stretch-to-Lip ratio.
    Search {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a planar instance (m = n = 2) to a standalone SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(4)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Dist { file_a, file_b } => {
            let a = first_value(&file_a)?;
            let b = first_value(&file_b)?;
            let d = g_distance(&a, &b)?;
            println!("{}", sig12(d));
            Ok(0)
        }
        Command::Lip { file } => {
            let (map, _) = load(&file)?;
            println!("{}", sig12(map.lip_constant()));
            Ok(0)
        }
        Command::Extend {
            file,
            point,
            heuristic,
            nearest,
        } => {
            let (map, file_point) = load(&file)?;
            let p = match point {
                Some(text) => parse_point_arg(&text, map.domain_dim())?,
                None => file_point.context(
                    "no extension point: pass --point or add a \"point\" field to the file",
                )?,
            };
            let result = if nearest {
                nearest_point_extension(&map, &p)?
            } else {
                let opts = SolveOptions {
                    heuristic,
                    ..SolveOptions::default()
                };
                solve_one_point(&map, &p, &opts)?
            };
            print_extension(&result);
            Ok(0)
        }
        Command::VerifyHexagon { tol, grid } => {
            let report = verify_counterexample(tol, grid)?;
            let labels = ["ab", "ac", "bc"];
            for (label, d) in labels.iter().zip(report.domain_distances) {
                println!("domain_distance_{label} {}", sig12(d));
            }
            for (label, d) in labels.iter().zip(report.value_distances) {
                println!("value_distance_{label} {}", sig12(d));
            }
            println!("lip_f {}", sig12(report.lip_f));
            println!("min_stretch_lb {}", sig12(report.min_stretch_lb));
            println!("min_stretch_found {}", sig12(report.min_stretch_found));
            println!("constant_ratio {}", sig12(report.constant_ratio));
            for claim in &report.claims {
                println!(
                    "claim {} {}",
                    claim.name,
                    if claim.pass { "pass" } else { "fail" }
                );
            }
            println!(
                "verdict {}",
                if report.verdict { "pass" } else { "fail" }
            );
            Ok(if report.verdict { 0 } else { 3 })
        }
        Command::Search {
            m,
            n,
            q,
            k,
            budget,
            seed,
        } => {
            let params = SearchParams {
                domain_dim: m,
                ambient_dim: n,
                q,
                anchors: k,
                budget,
                seed,
                initial: None,
            };
            let report = lower_bound_search(&params)?;
            println!("params m={m} n={n} q={q} k={k} budget={budget} seed={seed}");
            for imp in &report.history {
                println!(
                    "improve iteration={} ratio={}",
                    imp.iteration,
                    sig12(imp.ratio)
                );
            }
            println!("best_ratio {}", sig12(report.best_ratio));
            println!("best_stretch {}", sig12(report.best_stretch));
            println!("best_lip {}", sig12(report.best_lip));
            println!("degenerate {}", report.degenerate);
            let best = instance_file(&report.best_map, Some(&report.best_point));
            println!(
                "instance {}",
                serde_json::to_string(&best).expect("schema types always serialize")
            );
            Ok(0)
        }
        Command::Render { file, out } => {
            let (map, point) = load(&file)?;
            if !renderable(&map) {
                println!(
                    "not renderable: requires m = 2 and n = 2, got m = {} and n = {}",
                    map.domain_dim(),
                    map.ambient_dim()
                );
                return Ok(0);
            }
            let candidate = match &point {
                Some(p) => {
                    let opts = SolveOptions {
                        heuristic: true,
                        ..SolveOptions::default()
                    };
                    Some(solve_one_point(&map, p, &opts)?.value)
                }
                None => None,
            };
            let svg = render_svg(&map, point.as_ref(), candidate.as_ref());
            fs::write(&out, svg).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {}", out.display());
            Ok(0)
        }
    }
}

fn load(path: &PathBuf) -> Result<(AnchoredMap, Option<Point>)> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn first_value(path: &PathBuf) -> Result<qlip_core::QConfig> {
    let (map, _) = load(path)?;
    match map.anchors().first() {
        Some(anchor) => Ok(anchor.value.clone()),
        None => bail!("{}: instance has no anchors", path.display()),
    }
}

fn parse_point_arg(text: &str, dim: usize) -> Result<Point> {
    let coords = text
        .split([' ', ','])
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .with_context(|| format!("invalid coordinate {s:?} in --point"))
        })
        .collect::<Result<Vec<f64>>>()?;
    if coords.len() != dim {
        bail!(
            "--point has {} coordinates, the instance's domain dimension is {dim}",
            coords.len()
        );
    }
    Ok(Point::new(coords)?)
}

fn print_extension(result: &ExtensionResult) {
    println!("stretch {}", sig12(result.stretch));
    println!("lower_bound {}", sig12(result.lower_bound));
    println!("status {}", result.status);
    println!(
        "active_anchors {}",
        result
            .active_anchors
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    for atom in result.value.atoms() {
        println!(
            "atom {}",
            atom.coords()
                .iter()
                .map(|c| sig12(*c))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
}
