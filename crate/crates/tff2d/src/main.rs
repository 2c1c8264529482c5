use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use tff2d::config::{EvalSpec, RunConfig};
use tff2d::driver::{self, Evaluator};
use tff2d::io;
use tff2d::selftest::{self, Status};
use tff2d::Error;

/// Logarithmic-kernel convolutions over piecewise-smooth plane domains:
/// windowed polar quadrature near the singularity, filtered periodic
/// convolution for the rest.
#[derive(Parser)]
#[command(name = "tff2d", version, about, long_about = None)]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write intermediate data (mode residues, timings) as JSON.
    #[arg(long, global = true)]
    debug_dump: bool,

    /// Publication-scale convergence protocol: reference resolution 4096
    /// instead of 1024. Expect a long run.
    #[arg(long, global = true)]
    paper_scale: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the convolution per a run configuration (TOML or JSON).
    Eval {
        /// Configuration file.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Self-convergence study: errors against a high-resolution reference.
    Convergence {
        /// Configuration file; its eval section is ignored.
        #[arg(long)]
        config: PathBuf,
        /// Semicolon-separated evaluation points, e.g. "1.5,0;0.4,-0.2".
        /// Defaults to three probe points spanning interior, boundary
        /// window, and corner window of the teardrop.
        #[arg(long)]
        points: Option<String>,
        /// Comma-separated resolutions, e.g. "16,32,64,128".
        #[arg(long)]
        resolutions: Option<String>,
        /// Output directory (created if missing).
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run the built-in diagnostic battery.
    Selftest {
        /// Treat warnings (loose-tolerance passes) as failures.
        #[arg(long)]
        strict: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .is_err()
        {
            eprintln!("error: could not size the thread pool to {t}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) | Error::Io(_) => 2,
                Error::Geometry(_) | Error::Numerics(_) => 1,
            })
        }
    }
}

fn run(cli: Cli) -> tff2d::Result<ExitCode> {
    match cli.cmd {
        Cmd::Eval { config, out } => cmd_eval(&config, &out, cli.debug_dump),
        Cmd::Convergence {
            config,
            points,
            resolutions,
            out,
        } => cmd_convergence(
            &config,
            points.as_deref(),
            resolutions.as_deref(),
            &out,
            cli.paper_scale,
        ),
        Cmd::Selftest { strict } => Ok(cmd_selftest(strict)),
    }
}

fn cmd_eval(config: &Path, out: &Path, debug_dump: bool) -> tff2d::Result<ExitCode> {
    let cfg = RunConfig::from_path(config)?;
    std::fs::create_dir_all(out)?;
    let cache = out.join("cache");
    let t0 = Instant::now();
    let ev = Evaluator::with_cache(&cfg, Some(&cache))?;
    let build_ms = t0.elapsed().as_millis();

    let t1 = Instant::now();
    let written: Vec<String> = match &cfg.eval {
        EvalSpec::Points { points } => {
            let rows = ev.eval_points(points)?;
            let path = out.join("points.csv");
            io::write_points_csv(
                std::io::BufWriter::new(std::fs::File::create(&path)?),
                &rows,
            )?;
            println!("wrote {} ({} points)", path.display(), rows.len());
            vec![path.display().to_string()]
        }
        EvalSpec::Grid { .. } => {
            let n = cfg.grid_side();
            let field = ev.eval_grid(n)?;
            let csv = out.join("grid.csv");
            io::write_grid_csv(
                std::io::BufWriter::new(std::fs::File::create(&csv)?),
                field.square,
                field.n,
                &field.values,
                &field.inside,
            )?;
            let bin = out.join("grid.bin");
            io::write_grid_binary(
                std::io::BufWriter::new(std::fs::File::create(&bin)?),
                field.n,
                field.n,
                &field.values,
            )?;
            let gp = out.join("plot.gp");
            std::fs::write(&gp, io::gnuplot_script("grid.csv", "grid.png"))?;
            println!("wrote {} ({}x{} grid)", csv.display(), n, n);
            println!("wrote {} and {}", bin.display(), gp.display());
            vec![
                csv.display().to_string(),
                bin.display().to_string(),
                gp.display().to_string(),
            ]
        }
    };
    let eval_ms = t1.elapsed().as_millis();

    if debug_dump {
        let far = ev.far_field();
        let dump = serde_json::json!({
            "config": &cfg,
            "far_order": far.order(),
            "modes_per_axis": 2 * far.order() + 1,
            "f_modes_hermitian_residue": far.f_modes().hermitian_residue(),
            "g_modes_hermitian_residue": far.g_modes().hermitian_residue(),
            "build_ms": build_ms,
            "eval_ms": eval_ms,
            "outputs": written,
        });
        let path = out.join("debug.json");
        std::fs::write(&path, serde_json::to_string_pretty(&dump).unwrap())?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_points(text: &str) -> tff2d::Result<Vec<[f64; 2]>> {
    text.split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(Error::config(format!("bad point {pair:?}")));
            }
            let x = parts[0]
                .parse()
                .map_err(|_| Error::config(format!("bad coordinate {:?}", parts[0])))?;
            let y = parts[1]
                .parse()
                .map_err(|_| Error::config(format!("bad coordinate {:?}", parts[1])))?;
            Ok([x, y])
        })
        .collect()
}

fn parse_resolutions(text: &str) -> tff2d::Result<Vec<usize>> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::config(format!("bad resolution {tok:?}")))
        })
        .collect()
}

fn cmd_convergence(
    config: &Path,
    points: Option<&str>,
    resolutions: Option<&str>,
    out: &Path,
    paper_scale: bool,
) -> tff2d::Result<ExitCode> {
    let cfg = RunConfig::from_path(config)?;
    let pts = match points {
        Some(text) => parse_points(text)?,
        None => vec![[1.5, 0.0], [2.5, 0.5], [0.4, -0.2]],
    };
    let res = match resolutions {
        Some(text) => parse_resolutions(text)?,
        None if paper_scale => vec![16, 32, 64, 128, 256, 512, 1024],
        None => vec![16, 32, 64, 128, 256],
    };
    let reference = if paper_scale { 4096 } else { 1024 };
    std::fs::create_dir_all(out)?;
    let cache = out.join("cache");

    let study = driver::convergence_study(&cfg, &pts, &res, reference, Some(&cache))?;

    let path = out.join("convergence.csv");
    let mut w = std::io::BufWriter::new(std::fs::File::create(&path)?);
    use std::io::Write;
    writeln!(w, "point,x1,x2,resolution,error,uncorrected_error")?;
    for (i, row) in study.rows.iter().enumerate() {
        for (j, &r) in study.resolutions.iter().enumerate() {
            let unc = row
                .uncorrected_errors
                .as_ref()
                .map(|u| u[j].to_string())
                .unwrap_or_default();
            writeln!(
                w,
                "{},{},{},{},{},{}",
                i, row.x[0], row.x[1], r, row.errors[j], unc
            )?;
        }
    }
    drop(w);
    println!("wrote {}", path.display());

    for row in &study.rows {
        let order = driver::fit_order(&study.resolutions, &row.errors);
        let monotone = driver::monotone_decay(&row.errors);
        println!(
            "point ({}, {}): reference {:.12e} at resolution {}",
            row.x[0], row.x[1], row.reference, study.reference_resolution
        );
        println!(
            "  corrected route:   order {order:.2}, errors {} ({})",
            format_errors(&row.errors),
            if monotone { "monotone" } else { "not monotone" },
        );
        if let Some(unc) = &row.uncorrected_errors {
            let unc_order = driver::fit_order(&study.resolutions, unc);
            println!(
                "  uncorrected route: order {unc_order:.2}, errors {}",
                format_errors(unc)
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn format_errors(errors: &[f64]) -> String {
    errors
        .iter()
        .map(|e| format!("{e:.2e}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_selftest(strict: bool) -> ExitCode {
    let outcomes = selftest::run_battery();
    let mut failed = false;
    for o in &outcomes {
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        };
        println!("{tag}  {}  [{}]", o.name, o.detail);
        failed |= o.status == Status::Fail || (strict && o.status == Status::Warn);
    }
    if failed {
        println!("selftest: FAIL");
        ExitCode::from(1)
    } else {
        println!("selftest: PASS");
        ExitCode::SUCCESS
    }
}
