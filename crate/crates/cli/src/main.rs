use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use orthosurf::construct::{path_product, prism, pyramid, simplex_surface, stack};
use orthosurf::io::{
    emit, export_poset_dot, parse, render3d_svg, BallDocument, SurfaceDocument, TriangulationDocument,
};
use orthosurf::poset::{Ball, CpOrder};
use orthosurf::realizer::{nonrealizability_check, search_realization, SearchOutcome, Verdict};
use orthosurf::schnyder::{compute_wood, dual_surface, embed, extract_wood, Arc, PlaneTriangulation};
use orthosurf::surface::validate_antichain;
use orthosurf::{
    build_cporder, characteristic_points, detect_degeneracy, is_rigid, is_syzygy, CharPoint, ColorSet,
    OrthoSurface, Point,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "orthosurf", version, about = "Orthogonal surfaces and their characteristic points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test properties of a surface; without flags print all of them.
    Check {
        surface: PathBuf,
        #[arg(long)]
        generic: bool,
        #[arg(long)]
        suspended: bool,
        #[arg(long)]
        antichain: bool,
        #[arg(long)]
        degenerate: bool,
        #[arg(long)]
        rigid: bool,
        #[arg(long)]
        strong_degeneracy: bool,
    },
    /// List characteristic points.
    Cpoints {
        surface: PathBuf,
        /// Also write the points as JSON.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        /// Report which points are syzygy points; fails if some is not.
        #[arg(long)]
        syzygies: bool,
    },
    /// Summarize the cp-order and test lattice and diamond properties.
    Cporder {
        surface: PathBuf,
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
        #[arg(long)]
        lattice: bool,
        #[arg(long)]
        diamond: bool,
    },
    /// Schnyder woods of 3-dimensional surfaces.
    #[command(subcommand)]
    Schnyder(SchnyderCommand),
    /// Realizability of simplicial 3-balls by 4-dimensional surfaces.
    #[command(subcommand)]
    Realize(RealizeCommand),
    /// Build surfaces.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Draw a 3-dimensional surface.
    Render3d {
        surface: PathBuf,
        #[arg(long, value_name = "OUT")]
        svg: PathBuf,
    },
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(short, long, value_name = "OUT")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SchnyderCommand {
    /// Read the triangulation and wood off a rigid suspended surface.
    Extract {
        surface: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Embed a triangulation by the region vectors of its canonical wood.
    Embed {
        triangulation: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// The suspended dual surface.
    Dual {
        surface: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum RealizeCommand {
    /// Screen a ball with the nonrealizability criteria.
    Check { ball: PathBuf },
    /// Search for a generic surface realizing a ball.
    Search {
        ball: PathBuf,
        /// Give up after this many candidates.
        #[arg(long)]
        budget: Option<usize>,
        /// Worker threads; the result does not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// The suspended simplex surface of dimension d.
    Simplex {
        d: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Stack a new vertex onto a maximum.
    Stack {
        surface: PathBuf,
        /// 1-based index into the maxima as listed by `cpoints`, or coordinates `a,b,c`.
        #[arg(long = "max")]
        max: String,
        #[command(flatten)]
        output: Output,
    },
    /// Prism over the surface, closed off at a maximum.
    Prism {
        surface: PathBuf,
        #[arg(long = "max")]
        max: String,
        #[command(flatten)]
        output: Output,
    },
    /// Product with a path on k vertices.
    Product {
        surface: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Pyramid over the surface, one dimension up.
    Pyramid {
        surface: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Library errors count vertices from 0; the command line counts from 1.
fn one_based(e: orthosurf::Error) -> anyhow::Error {
    use orthosurf::Error::*;
    match e {
        NotAntichain(a, b) => anyhow::anyhow!("vertices {} and {} are comparable", a + 1, b + 1),
        NegativeCoordinate(v) => anyhow::anyhow!("vertex {} has a negative coordinate", v + 1),
        NonPositiveCoordinate(v) => anyhow::anyhow!("vertex {} has a zero coordinate; suspension needs positive input", v + 1),
        NotDominated(v) => anyhow::anyhow!("vertex {} is not dominated by the point", v + 1),
        e => e.into(),
    }
}

fn load_surface(path: &Path) -> Result<OrthoSurface> {
    let doc: SurfaceDocument = parse(&read(path)?).with_context(|| path.display().to_string())?;
    doc.to_surface().map_err(one_based).with_context(|| path.display().to_string())
}

fn load_ball(path: &Path) -> Result<Ball> {
    let doc: BallDocument = parse(&read(path)?).with_context(|| path.display().to_string())?;
    doc.to_ball().with_context(|| path.display().to_string())
}

fn load_triangulation(path: &Path) -> Result<PlaneTriangulation> {
    let doc: TriangulationDocument = parse(&read(path)?).with_context(|| path.display().to_string())?;
    doc.to_triangulation().with_context(|| path.display().to_string())
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_output(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_surface(output: &Output, s: &OrthoSurface) -> Result<()> {
    write_output(output, &emit(&SurfaceDocument::from_surface(s)))
}

fn ids(set: &[usize]) -> String {
    let v: Vec<String> = set.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn colors(c: ColorSet) -> String {
    ids(&c.iter().collect::<Vec<_>>())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Check {
            surface,
            generic,
            suspended,
            antichain,
            degenerate,
            rigid,
            strong_degeneracy,
        } => {
            if antichain {
                // checked on the raw vertex list, since loading requires an antichain
                let doc: SurfaceDocument = parse(&read(&surface)?)?;
                let pts: Vec<Point> = doc.vertices.into_iter().map(Point::new).collect();
                return Ok(match validate_antichain(&pts) {
                    Ok(()) => {
                        println!("antichain: yes");
                        true
                    }
                    Err(e) => {
                        println!("antichain: no ({})", one_based(e));
                        false
                    }
                });
            }
            let s = load_surface(&surface)?;
            let all = !(generic || suspended || degenerate || rigid || strong_degeneracy);
            let mut ok = true;
            if all || generic {
                println!("generic: {}", yes(s.is_generic()));
                ok &= s.is_generic();
            }
            if all || suspended {
                println!("suspended: {}", yes(s.is_suspended()));
                ok &= s.is_suspended();
            }
            if all || degenerate {
                match detect_degeneracy(&s) {
                    Some(w) => println!(
                        "degenerate: yes, at {}: vertex {} tight in {} and {}, vertex {} only in {}, vertex {} only in {}",
                        w.point,
                        w.x + 1,
                        w.i + 1,
                        w.j + 1,
                        w.u + 1,
                        w.j + 1,
                        w.v + 1,
                        w.i + 1
                    ),
                    None => {
                        println!("degenerate: no");
                        ok &= all;
                    }
                }
            }
            if all || rigid {
                match is_rigid(&s) {
                    Ok(None) => println!("rigid: yes"),
                    Ok(Some((a, b))) => {
                        println!("rigid: no, {a} < {b} have equal rank");
                        ok &= all;
                    }
                    Err(e) => {
                        println!("rigid: undefined ({e})");
                        ok &= all;
                    }
                }
            }
            if all || strong_degeneracy {
                match s.strong_degeneracy() {
                    Some(w) => println!(
                        "strongly degenerate: yes, flats {} and {} of color {} at value {} meet in {}",
                        ids(&w.first.members),
                        ids(&w.second.members),
                        w.color + 1,
                        w.first.value,
                        w.point
                    ),
                    None => {
                        println!("strongly degenerate: no");
                        ok &= all;
                    }
                }
            }
            Ok(ok || all)
        }
        Command::Cpoints { surface, json, syzygies } => {
            let s = load_surface(&surface)?;
            let cps = characteristic_points(&s);
            let mut ok = true;
            let mut records = Vec::new();
            for c in &cps {
                let syz = if syzygies { Some(is_syzygy(&s, &c.point)?) } else { None };
                ok &= syz != Some(false);
                println!("{}", describe(c, syz));
                let mut rec = json!({
                    "point": c.point.coords(),
                    "rank": c.rank,
                    "downset": c.downset.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "tight": c.tight.iter().map(|t| t.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "generating_sets": c.generating_sets.iter()
                        .map(|g| g.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                });
                if c.rank_ambiguous {
                    rec["rank_ambiguous"] = json!(true);
                }
                if let Some(b) = syz {
                    rec["syzygy"] = json!(b);
                }
                records.push(rec);
            }
            if let Some(path) = json {
                write(&path, &emit(&records))?;
            }
            Ok(ok)
        }
        Command::Cporder {
            surface,
            dot,
            lattice,
            diamond,
        } => {
            let s = load_surface(&surface)?;
            let order = build_cporder(&s);
            summarize(&order);
            if let Some(path) = dot {
                write(&path, &export_poset_dot(&order))?;
            }
            let mut ok = true;
            if lattice {
                match order.is_lattice() {
                    None => println!("lattice: yes"),
                    Some(v) => {
                        let kind = if v.meet { "maximal lower" } else { "minimal upper" };
                        let bounds: Vec<String> = v.bounds.iter().map(|&e| element(&order, e)).collect();
                        println!(
                            "lattice: no, {} and {} have {kind} bounds {}",
                            element(&order, v.a),
                            element(&order, v.b),
                            bounds.join(" ")
                        );
                        ok = false;
                    }
                }
            }
            if diamond {
                match order.diamond_check() {
                    Ok(None) => println!("diamond: yes"),
                    Ok(Some(v)) => {
                        let middle: Vec<String> = v.middle.iter().map(|&e| element(&order, e)).collect();
                        println!(
                            "diamond: no, [{}, {}] has middle {}",
                            element(&order, v.lower),
                            element(&order, v.upper),
                            if middle.is_empty() { "(none)".into() } else { middle.join(" ") }
                        );
                        ok = false;
                    }
                    Err(e) => {
                        println!("diamond: undefined ({e})");
                        ok = false;
                    }
                }
            }
            Ok(ok)
        }
        Command::Schnyder(cmd) => schnyder(cmd),
        Command::Realize(cmd) => realize(cmd),
        Command::Construct(cmd) => construct(cmd),
        Command::Render3d { surface, svg } => {
            let s = load_surface(&surface)?;
            write(&svg, &render3d_svg(&s)?)?;
            Ok(true)
        }
    }
}

fn describe(c: &CharPoint, syzygy: Option<bool>) -> String {
    let tight: Vec<String> = c.tight.iter().map(|&t| colors(t)).collect();
    let mut line = format!("{} rank {} D={} T=[{}]", c.point, c.rank, ids(&c.downset), tight.join(" "));
    if c.rank_ambiguous {
        line.push_str(" (rank ambiguous)");
    }
    match syzygy {
        Some(true) => line.push_str(" syzygy"),
        Some(false) => line.push_str(" not-syzygy"),
        None => {}
    }
    line
}

fn element(order: &CpOrder, e: usize) -> String {
    match order.point(e) {
        Some(c) => c.point.to_string(),
        None if e == order.bottom() => "bottom".into(),
        None => "top".into(),
    }
}

fn summarize(order: &CpOrder) {
    let max_rank = order.points.iter().map(|c| c.rank).max();
    let counts: Vec<String> = (0..=max_rank.unwrap_or(0))
        .map(|r| order.points.iter().filter(|c| c.rank == r).count().to_string())
        .collect();
    println!("characteristic points: {}", order.points.len());
    if max_rank.is_some() {
        println!("by rank: {}", counts.join(" "));
    }
    println!("graded: {}", yes(order.is_graded()));
}

fn schnyder(cmd: SchnyderCommand) -> Result<bool> {
    match cmd {
        SchnyderCommand::Extract { surface, output } => {
            let s = load_surface(&surface)?;
            let (g, w) = extract_wood(&s)?;
            let arcs: Vec<&Arc> = w.arcs.iter().collect();
            let doc = json!({
                "graph": { "n": g.n(), "faces": g.faces(), "outer": g.outer() },
                "arcs": arcs,
            });
            write_output(&output, &emit(&doc))?;
        }
        SchnyderCommand::Embed { triangulation, output } => {
            let g = load_triangulation(&triangulation)?;
            let w = compute_wood(&g)?;
            emit_surface(&output, &embed(&g, &w)?)?;
        }
        SchnyderCommand::Dual { surface, output } => {
            let s = load_surface(&surface)?;
            emit_surface(&output, &dual_surface(&s)?)?;
        }
    }
    Ok(true)
}

fn realize(cmd: RealizeCommand) -> Result<bool> {
    match cmd {
        RealizeCommand::Check { ball } => {
            let b = load_ball(&ball)?;
            match nonrealizability_check(&b)? {
                Verdict::Open => {
                    println!("open: no criterion applies");
                    Ok(true)
                }
                Verdict::Refuted { criterion, detail, .. } => {
                    let name = serde_json::to_value(criterion)?;
                    println!("refuted by {} criterion: {detail}", name.as_str().unwrap_or_default());
                    Ok(false)
                }
            }
        }
        RealizeCommand::Search {
            ball,
            budget,
            jobs,
            output,
        } => {
            let b = load_ball(&ball)?;
            match search_realization(&b, budget, jobs)? {
                SearchOutcome::Found { surface, candidate } => {
                    eprintln!("found at candidate {candidate}");
                    emit_surface(&output, &surface)?;
                    Ok(true)
                }
                SearchOutcome::Exhausted { candidates } => {
                    println!("not realizable: all {candidates} candidates fail");
                    Ok(false)
                }
                SearchOutcome::BudgetExhausted { examined } => {
                    println!("inconclusive: budget exhausted after {examined} candidates");
                    Ok(false)
                }
            }
        }
    }
}

/// A maximum given by 1-based index or by coordinates.
fn pick_max(s: &OrthoSurface, spec: &str) -> Result<Point> {
    if spec.contains(',') {
        let coords = spec
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .with_context(|| format!("bad coordinates {spec:?}"))?;
        return Ok(Point::new(coords));
    }
    let k: usize = spec.parse().with_context(|| format!("bad maximum {spec:?}"))?;
    let maxima: Vec<Point> = characteristic_points(s)
        .into_iter()
        .filter(|c| c.rank + 1 == s.dim())
        .map(|c| c.point)
        .collect();
    if k == 0 || k > maxima.len() {
        bail!("maximum index {k} out of range 1..={}", maxima.len());
    }
    Ok(maxima[k - 1].clone())
}

fn construct(cmd: ConstructCommand) -> Result<bool> {
    let (s, output) = match cmd {
        ConstructCommand::Simplex { d, output } => (simplex_surface(d)?, output),
        ConstructCommand::Stack { surface, max, output } => {
            let s = load_surface(&surface)?;
            let m = pick_max(&s, &max)?;
            (stack(&s, &m)?, output)
        }
        ConstructCommand::Prism { surface, max, output } => {
            let s = load_surface(&surface)?;
            let m = pick_max(&s, &max)?;
            (prism(&s, &m)?, output)
        }
        ConstructCommand::Product { surface, k, output } => (path_product(&load_surface(&surface)?, k)?, output),
        ConstructCommand::Pyramid { surface, output } => (pyramid(&load_surface(&surface)?)?, output),
    };
    emit_surface(&output, &s)?;
    Ok(true)
}
