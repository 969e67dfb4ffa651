use clap::{Parser, Subcommand};
use flagwalk::patch::{cotree_generators, spanning_tree, Patch};
use flagwalk::render::{render_svg, RenderSpec};
use flagwalk::stabilizer::{
    catalog, cell_rep_point, infinite_witness, peel, verify_catalog, StabilizerError,
};
use flagwalk::tiling::{FlagSystem, TilingId};
use flagwalk::word::parse_word;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "flagwalk",
    version,
    about = "Flag systems and flag-stabilizer generators for the vertex-transitive plane tilings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

fn parse_tiling(s: &str) -> Result<TilingId, String> {
    TilingId::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = TilingId::ALL.iter().map(|t| t.name()).collect();
        format!("unknown tiling '{s}'; valid names: {}", names.join(", "))
    })
}

#[derive(Subcommand)]
enum Cmd {
    /// List the eleven vertex-transitive tilings
    List,
    /// Show cover, class count and catalog size of a tiling
    Info {
        #[arg(value_parser = parse_tiling)]
        tiling: TilingId,
    },
    /// Verify the generator catalog of a uniform tiling (or `all`)
    Verify {
        /// Tiling name or `all`
        tiling: String,
        #[arg(long, default_value_t = 3)]
        range: i64,
        #[arg(long)]
        json: bool,
    },
    /// Emit the cotree generators of a patch spanning tree
    #[command(name = "spanning-tree")]
    SpanningTree {
        #[arg(value_parser = parse_tiling)]
        tiling: TilingId,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        /// Write the generators as JSON to this path
        #[arg(long)]
        emit_generators: Option<PathBuf>,
    },
    /// Peel a stabilizer word into cell-boundary factors
    Decompose {
        #[arg(value_parser = parse_tiling)]
        tiling: TilingId,
        #[arg(long)]
        word: String,
    },
    /// Construct a far-support stabilizer witness
    Witness {
        #[arg(value_parser = parse_tiling)]
        tiling: TilingId,
        #[arg(long, default_value_t = 10)]
        distance: u32,
    },
    /// Render a patch (optionally with walks) as SVG
    Render {
        #[arg(value_parser = parse_tiling)]
        tiling: TilingId,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        /// Word expression to draw as a walk from the base flag (repeatable)
        #[arg(long = "walk")]
        walks: Vec<String>,
        /// Highlight the tiling's catalog walks (α_i, β, γ)
        #[arg(long)]
        catalog: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the static tables from geometry
    Export {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare against the embedded tables instead of emitting
        #[arg(long)]
        check: bool,
    },
}

fn usage_exit(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::List => {
            for id in TilingId::ALL {
                println!("{}", id.name());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Info { tiling } => {
            let sys = FlagSystem::build(tiling);
            let (p, q) = sys.cover();
            println!("tiling {}", tiling.name());
            println!("kind {}", if tiling.is_regular() { "regular" } else { "uniform" });
            println!("cover {{{p},{q}}}");
            println!("classes {}", sys.class_count());
            println!("base {}", sys.base_flag());
            println!("vertex-degree {}", sys.vertex_degree());
            if tiling.is_uniform() {
                let cat = catalog(&sys).map_err(|e| e.to_string())?;
                println!("alphas {}", cat.alphas.len());
                println!("beta {}", cat.beta);
                println!("gamma {}", cat.gamma);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { tiling, range, json } => {
            let targets: Vec<TilingId> = if tiling == "all" {
                TilingId::UNIFORM.to_vec()
            } else {
                vec![parse_tiling(&tiling).unwrap_or_else(|e| usage_exit(&e))]
            };
            let mut all_pass = true;
            let mut reports = Vec::new();
            for id in targets {
                let sys = FlagSystem::build(id);
                let cat = catalog(&sys).map_err(|e| e.to_string())?;
                let report = verify_catalog(&sys, &cat, range);
                all_pass &= report.all_pass();
                if json {
                    reports.push(report);
                } else {
                    for c in &report.checks {
                        println!(
                            "{} {} {} ({})",
                            report.tiling,
                            c.name,
                            if c.pass { "pass" } else { "FAIL" },
                            c.detail
                        );
                    }
                }
            }
            if json {
                let text = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0])
                } else {
                    serde_json::to_string_pretty(&reports)
                };
                println!("{}", text.map_err(|e| e.to_string())?);
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::SpanningTree {
            tiling,
            radius,
            emit_generators,
        } => {
            let sys = FlagSystem::build(tiling);
            let patch = Patch::new(&sys, radius);
            let tree = spanning_tree(&patch).map_err(|e| e.to_string())?;
            let gens = cotree_generators(&patch, &tree);
            println!(
                "{}: {} flags, {} edges, {} tree edges, {} cotree generators",
                tiling.name(),
                patch.flag_count(),
                patch.edge_count(),
                tree.edge_count(),
                gens.len()
            );
            if let Some(path) = emit_generators {
                let text = serde_json::to_string_pretty(&gens).map_err(|e| e.to_string())?;
                std::fs::write(&path, text).map_err(|e| e.to_string())?;
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Decompose { tiling, word } => {
            let w = parse_word(&word).unwrap_or_else(|e| usage_exit(&e.to_string()));
            let sys = FlagSystem::build(tiling);
            match peel(&sys, &w) {
                Ok(factors) => {
                    println!("{} factors", factors.len());
                    for (cell, fw) in factors {
                        let rep = cell_rep_point(&sys, &cell).to_f64();
                        println!(
                            "{:?} at ({:.3},{:.3}) size {}: {}",
                            cell.kind, rep.0, rep.1, cell.size, fw
                        );
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(StabilizerError::NotStabilizer) => {
                    eprintln!("word does not stabilize the base flag");
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Cmd::Witness { tiling, distance } => {
            let sys = FlagSystem::build(tiling);
            let report = infinite_witness(&sys, distance).map_err(|e| e.to_string())?;
            println!("sigma {}", report.sigma);
            println!("length {}", report.sigma.len());
            println!("max-walk-distance {}", report.max_distance);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Render {
            tiling,
            radius,
            walks,
            catalog: with_catalog,
            out,
        } => {
            let sys = FlagSystem::build(tiling);
            let mut spec = RenderSpec::new(tiling);
            spec.radius = radius;
            for w in &walks {
                let parsed = parse_word(w).unwrap_or_else(|e| usage_exit(&e.to_string()));
                spec.highlight_walks.push(parsed);
            }
            if with_catalog {
                let cat = catalog(&sys).map_err(|e| e.to_string())?;
                for a in &cat.alphas {
                    spec.highlight_walks.push(a.realized.clone());
                }
                spec.highlight_walks.push(cat.beta.clone());
                spec.highlight_walks.push(cat.gamma.clone());
            }
            let svg = render_svg(&sys, &spec);
            match out {
                Some(path) => {
                    std::fs::write(&path, svg).map_err(|e| e.to_string())?;
                    println!("wrote {}", path.display());
                }
                None => print!("{svg}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Export { out, check } => {
            let text = flagwalk::oracle::regenerate_tables();
            if check {
                let embedded = include_str!("../data/tables.txt");
                if embedded == text {
                    println!("tables match the geometric construction");
                    Ok(ExitCode::SUCCESS)
                } else {
                    eprintln!("tables differ from the geometric construction");
                    Ok(ExitCode::from(1))
                }
            } else {
                match out {
                    Some(path) => {
                        std::fs::write(&path, text).map_err(|e| e.to_string())?;
                        println!("wrote {}", path.display());
                    }
                    None => print!("{text}"),
                }
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}
