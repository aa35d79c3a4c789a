mod args;
mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use serde_json::json;

use args::{Cli, Command, Experiment};
use tdquad::experiments::{self as ex, ExperimentReport};
use tdquad::gluing::{cut, glue, TreeDecoratedQuad};
use tdquad::map::{read_hemap, write_hemap};
use tdquad::peeling::{host_from_quad, peel_to_tip};
use tdquad::quad::core::RejectionConfig;
use tdquad::quad::{sample_simple_boundary_quad, Enumerator, SimpleBoundaryQuad};
use tdquad::rng::seeded;
use tdquad::tree::{sample_uniform_tree, PlaneTree};
use tdquad::Error;

/// Failure with its exit status: 2 for bad input, 3 for runtime failures.
#[derive(Debug)]
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn invalid(err: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, err: err.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeMismatch { .. }
            | Error::InadmissibleParameters(_)
            | Error::Parse(_)
            | Error::MalformedTable(_)
            | Error::InvalidDyckPath(_)
            | Error::WindowTooShort { .. }
            | Error::ArcTooLarge(_)
            | Error::TooLarge(_)
            | Error::DecorationNotATree(_)
            | Error::BrokenInvolution(_)
            | Error::BrokenRotation(_)
            | Error::Disconnected
            | Error::NonPlanar(_) => 2,
            _ => 3,
        };
        Failure { code, err: e.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        Failure { code: 3, err }
    }
}

type Out = Result<Vec<String>, Failure>;

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(dir: &Path, name: &str, contents: &str) -> anyhow::Result<String> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let tmp = dir.join(format!(".{name}.tmp"));
    let dst = dir.join(name);
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, &dst).with_context(|| format!("renaming to {}", dst.display()))?;
    Ok(name.to_string())
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| invalid(anyhow::anyhow!("cannot read {}: {e}", path.display())))
}

fn read_quad(path: &PathBuf) -> Result<SimpleBoundaryQuad, Failure> {
    let file = read_hemap(&read_input(path)?)?;
    SimpleBoundaryQuad::from_map(file.map).ok_or_else(|| invalid(anyhow::anyhow!("{}: boundary is not simple", path.display())))
}

fn write_report(out: &Path, rep: &ExperimentReport) -> Out {
    let mut files = vec![write_atomic(out, "report.json", &rep.to_json())?];
    for t in &rep.tables {
        files.push(write_atomic(out, &format!("{}.csv", t.name), &t.to_csv())?);
    }
    for c in &rep.checks {
        println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Ok(files)
}

fn run_experiment(e: &Experiment, out: &Path) -> Out {
    match e {
        Experiment::Overshoot(a) => {
            let l = a.perimeter.unwrap_or_else(|| (3.0 * (a.faces as f64).sqrt()).floor() as usize);
            let (_, rep) = ex::overshoot_experiment(a.faces, l, a.replicates, a.positions, a.window, a.seed.unwrap())?;
            write_report(out, &rep)
        }
        Experiment::Diameter(a) => {
            if a.f.windows(2).any(|w| w[1] <= w[0]) {
                return Err(invalid(anyhow::anyhow!("--f must be strictly increasing")));
            }
            if a.sigma <= 0.0 || a.alpha <= 1.0 {
                return Err(invalid(anyhow::anyhow!("need sigma > 0 and alpha > 1")));
            }
            let (_, rep) = ex::diameter_experiment(&a.f, a.sigma, a.alpha, a.replicates, a.window, a.seed.unwrap())?;
            write_report(out, &rep)
        }
        Experiment::Subadditive(a) => {
            if a.n.windows(2).any(|w| w[1] <= w[0]) {
                return Err(invalid(anyhow::anyhow!("--n must be strictly increasing")));
            }
            let (_, rep) =
                ex::subadditive_experiment(&a.n, a.faces, a.sigma, a.replicates, a.window, a.seed.unwrap())?;
            write_report(out, &rep)
        }
        Experiment::Rn(a) => {
            if !(0.0..=1.0).contains(&a.gamma) || !(0.0..1.0).contains(&a.alpha) || a.alpha == 0.0 {
                return Err(invalid(anyhow::anyhow!("need gamma in [0, 1] and alpha in (0, 1)")));
            }
            write_report(out, &ex::rn_report(&a.k, a.gamma, a.sigma, a.alpha))
        }
        Experiment::Donsker(a) => {
            if a.k_large < 4 * a.k_small {
                return Err(invalid(anyhow::anyhow!("need k-large >= 4 k-small")));
            }
            write_report(out, &ex::donsker_experiment(a.k_small, a.k_large, a.samples, a.seed.unwrap()))
        }
        Experiment::PeelTail(a) => {
            if a.cauchy_l.iter().any(|&l| l < 10) {
                return Err(invalid(anyhow::anyhow!("cauchy-l values must be at least 10")));
            }
            let (_, rep) = ex::peel_tail_experiment(
                a.faces,
                a.sigma,
                a.min_spine,
                a.hosts,
                a.max_a,
                &a.cauchy_l,
                a.cauchy_samples,
                a.window,
                a.seed.unwrap(),
            )?;
            write_report(out, &rep)
        }
        Experiment::Claim(a) => {
            if a.max_a == 0 {
                return Err(invalid(anyhow::anyhow!("max-a must be at least 1")));
            }
            let (_, rep) = ex::claim_experiment(a.max_a, a.samples, a.exponent, a.seed.unwrap());
            write_report(out, &rep)
        }
    }
}

fn run(cli: &Cli) -> Out {
    let out = cli.out.as_path();
    match &cli.command {
        Command::SampleTree { size, seed } => {
            let t = sample_uniform_tree(*size, &mut seeded(seed.unwrap()));
            Ok(vec![write_atomic(out, "tree.paren", &(t.to_paren() + "\n"))?])
        }
        Command::SampleQuad { faces, perimeter, window, max_attempts, seed } => {
            let cfg = RejectionConfig { window: *window, max_attempts: *max_attempts, start: None };
            let s = sample_simple_boundary_quad(*faces, *perimeter, cfg, &mut seeded(seed.unwrap()))?;
            println!("realized faces {} half-perimeter {} after {} attempts", s.realized.0, s.realized.1, s.attempts);
            Ok(vec![write_atomic(out, "quad.hemap", &write_hemap(&s.quad.map, None, Some(&s.quad.boundary)))?])
        }
        Command::Glue { quad, tree } => {
            let q = read_quad(quad)?;
            let t = PlaneTree::from_paren(&read_input(tree)?)?;
            let (d, _) = glue(&q, &t)?;
            Ok(vec![write_atomic(out, "decorated.hemap", &write_hemap(&d.map, Some(&d.tree_half_edges), None))?])
        }
        Command::Cut { decorated } => {
            let file = read_hemap(&read_input(decorated)?)?;
            let marked = file.marked.ok_or_else(|| invalid(anyhow::anyhow!("no marked tree half-edges")))?;
            let d = TreeDecoratedQuad { map: file.map, tree_half_edges: marked, contour_curve: Vec::new() };
            let (q, t) = cut(&d)?;
            Ok(vec![
                write_atomic(out, "quad.hemap", &write_hemap(&q.map, None, Some(&q.boundary)))?,
                write_atomic(out, "tree.paren", &(t.to_paren() + "\n"))?,
            ])
        }
        Command::Peel { faces, sigma, radius, min_spine, window, seed } => {
            let mut rng = seeded(seed.unwrap());
            let l = ((sigma * (*faces as f64).sqrt()).floor() as usize).max(1);
            let cfg = RejectionConfig { window: *window, ..Default::default() };
            let s = sample_simple_boundary_quad(*faces, l, cfg, &mut rng)?;
            let host = host_from_quad(s.quad, (*min_spine).max(radius + 1), &mut rng)?;
            let (series, _) = peel_to_tip(&host, *radius)?;
            let mut csv = String::from("layer,increment\n");
            for (i, x) in series.increments.iter().enumerate() {
                csv.push_str(&format!("{},{}\n", i + 1, x));
            }
            println!("spine length {}, {} layers", host.spine.len() - 1, series.layers);
            Ok(vec![write_atomic(out, "increments.csv", &csv)?])
        }
        Command::Enumerate { faces, perimeter, general } => {
            let mut e = Enumerator::new();
            let count = if *general { e.general_count(*faces, *perimeter)? } else { e.simple(*faces, *perimeter)?.len() };
            println!("{}", json!({"faces": faces, "perimeter": perimeter, "general": general, "count": count}));
            Ok(Vec::new())
        }
        Command::Experiment(e) => run_experiment(e, out),
    }
}

fn main() -> ExitCode {
    let argv = match config::merge(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(files) => {
            if !files.is_empty() {
                let manifest = json!({
                    "version": env!("CARGO_PKG_VERSION"),
                    "argv": argv[1..],
                    "threads": cli.threads,
                    "artifacts": files,
                });
                if let Err(e) = write_atomic(&cli.out, "manifest.json", &serde_json::to_string_pretty(&manifest).unwrap()) {
                    eprintln!("error: {e:#}");
                    return ExitCode::from(3);
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
