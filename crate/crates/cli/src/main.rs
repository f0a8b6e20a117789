use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use cimlink::channel::sample_realization;
use cimlink::codebook::{build_codebook, quantize_weights, FpsBank, Hardware};
use cimlink::geometry::{element_positions, GeometryKind, GeometrySpec};
use cimlink::harness::{aggregate_and_emit, run_sweep, BerResult, SimConfig};
use cimlink::pattern::{
    compute_pattern, format_summary_table, matched_weights, summarize, PatternSummary, DEFAULT_RESOLUTION_DEG,
};
use cimlink::seed::derive_seed;
use cimlink::verify;

#[derive(Parser)]
#[command(name = "cimlink", version, about = "CIM link simulator for mmWave array geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo BER sweep and write ber.csv plus manifest.json.
    Ber(BerArgs),
    /// Radiation pattern CSVs and a directivity/HPBW/ASLD summary table.
    Pattern(PatternArgs),
    /// Codebook diagnostics for one seeded channel realization.
    Codebook(CodebookArgs),
    /// Run the built-in oracle checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` config file; command-line flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated geometries (ULA, URA, UCA, CCA).
    #[arg(long, value_delimiter = ',')]
    geometry: Vec<GeometryKind>,
    /// Comma-separated hardware: OP, HE(n), or bare HE combined with --nf.
    #[arg(long, value_delimiter = ',')]
    hardware: Vec<String>,
    /// Comma-separated FPS bank sizes for HE hardware.
    #[arg(long, value_delimiter = ',')]
    nf: Vec<usize>,
}

#[derive(Args)]
struct BerArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads (0 = all cores). Results do not depend on this.
    #[arg(long)]
    workers: Option<usize>,
    /// Transmit powers in dBm as `start:stop:step`, or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    power_range: Option<String>,
}

#[derive(Args)]
struct PatternArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Steering azimuths in degrees (boresight frame); defaults to 0 and 15.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    az: Vec<f64>,
    /// Steering elevations in degrees, paired with --az; defaults to 0 and 30.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    el: Vec<f64>,
    /// Grid step in degrees.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION_DEG)]
    resolution: f64,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct CodebookArgs {
    #[command(flatten)]
    common: Common,
    /// CIM order B.
    #[arg(long, default_value_t = 2)]
    order: usize,
    /// Realization index under the master seed.
    #[arg(long, default_value_t = 0)]
    realization: u64,
    /// Also write the codebook as JSON into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Ber(args) => ber(args),
        Command::Pattern(args) => pattern(args),
        Command::Codebook(args) => codebook(args),
        Command::Verify(args) => verify_cmd(args),
    }
}

fn load_config(common: &Common) -> Result<SimConfig> {
    let mut cfg = match &common.config {
        Some(path) => SimConfig::load(path)?,
        None => SimConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if !common.geometry.is_empty() {
        cfg.geometries = common.geometry.clone();
    }
    if let Some(hw) = resolve_hardware(&common.hardware, &common.nf)? {
        cfg.hardware = hw;
    }
    Ok(cfg)
}

/// Expand `--hardware` and `--nf` into a hardware list; `None` leaves the
/// config value untouched.
fn resolve_hardware(names: &[String], nf: &[usize]) -> Result<Option<Vec<Hardware>>> {
    let he = |n: &usize| -> Result<Hardware> {
        FpsBank::new(*n)?;
        Ok(Hardware::Fps { shifters: *n })
    };
    if names.is_empty() {
        if nf.is_empty() {
            return Ok(None);
        }
        return nf.iter().map(he).collect::<Result<_>>().map(Some);
    }
    let mut out = Vec::new();
    for name in names {
        if name.trim().eq_ignore_ascii_case("HE") {
            if nf.is_empty() {
                bail!("bare `HE` needs --nf");
            }
            for n in nf {
                out.push(he(n)?);
            }
        } else {
            out.push(name.parse()?);
        }
    }
    Ok(Some(out))
}

fn parse_power_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step): (f64, f64, f64) =
                (start.trim().parse()?, stop.trim().parse()?, step.trim().parse()?);
            if step.is_nan() || step <= 0.0 || stop < start {
                bail!("power range `{text}` needs start <= stop and a positive step");
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            Ok((0..=n).map(|k| start + step * k as f64).collect())
        }
        [_] => text
            .split(',')
            .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad power `{p}`")))
            .collect(),
        _ => bail!("power range must be `start:stop:step` or a comma list"),
    }
}

fn ber(args: BerArgs) -> Result<ExitCode> {
    let mut cfg = load_config(&args.common)?;
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    if let Some(range) = &args.power_range {
        cfg.power_dbm = parse_power_range(range)?;
    }
    let results = run_sweep(&cfg)?;
    let files = aggregate_and_emit(&results, &cfg, &args.out)?;
    print!("{}", ber_table(&results));
    println!("wrote {} and {}", files.csv.display(), files.manifest.display());
    Ok(ExitCode::SUCCESS)
}

fn ber_table(results: &[BerResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<6}{:>3}{:>4}{:>8}{:>8}{:>12}{:>11}{:>13}",
        "geom", "B", "M", "hw", "P_dBm", "bits", "errors", "ber"
    );
    for r in results {
        let _ = writeln!(
            out,
            "{:<6}{:>3}{:>4}{:>8}{:>8}{:>12}{:>11}{:>13.4e}",
            r.geometry.as_str(),
            r.cim_order,
            r.psk_order,
            r.hardware.to_string(),
            r.power_dbm,
            r.bits_total,
            r.bit_errors,
            r.ber
        );
    }
    out
}

fn pattern(args: PatternArgs) -> Result<ExitCode> {
    let cfg = load_config(&args.common)?;
    let (az, el) = match (args.az.is_empty(), args.el.is_empty()) {
        (true, true) => (vec![0.0, 15.0], vec![0.0, 30.0]),
        (false, false) if args.az.len() == args.el.len() => (args.az.clone(), args.el.clone()),
        _ => bail!("--az and --el must list the same number of angles"),
    };
    let hardware = match cfg.hardware.as_slice() {
        [one] => *one,
        _ if args.common.hardware.is_empty() && args.common.nf.is_empty() => Hardware::Optimal,
        _ => bail!("pattern takes a single hardware model"),
    };
    let bank = hardware.shifters().map(FpsBank::new).transpose()?;
    let pool = rayon_pool(args.workers)?;

    std::fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let lambda = cfg.channel().wavelength();
    let mut rows: Vec<(GeometryKind, Vec<PatternSummary>)> = Vec::new();
    for &kind in &cfg.geometries {
        let geom = element_positions(&GeometrySpec::reference(kind, lambda))?;
        let mut summaries = Vec::new();
        for (&a, &e) in az.iter().zip(&el) {
            let (a_rad, e_rad) = (a.to_radians(), e.to_radians());
            let mut w = matched_weights(&geom, a_rad, e_rad)?;
            if let Some(bank) = &bank {
                w = quantize_weights(&w, bank);
            }
            let mut p = pool.install(|| compute_pattern(&geom, &w, args.resolution, args.resolution))?;
            p.target = (a_rad, e_rad);
            let file = args.out.join(format!("pattern_{}_az{}_el{}.csv", kind.as_str(), a, e));
            p.write_csv(&file)?;
            summaries.push(summarize(&p));
        }
        rows.push((kind, summaries));
    }
    let table = format_summary_table(&rows);
    print!("{table}");
    write_file(&args.out.join("summary.txt"), &table)?;
    Ok(ExitCode::SUCCESS)
}

fn codebook(args: CodebookArgs) -> Result<ExitCode> {
    let cfg = load_config(&args.common)?;
    let channel = cfg.channel();
    let lambda = channel.wavelength();
    let seed = derive_seed(cfg.seed, &[args.realization]);
    let mut report = String::new();
    for &kind in &cfg.geometries {
        let geom = element_positions(&GeometrySpec::reference(kind, lambda))?;
        let real = sample_realization(&channel, &geom, &geom, seed)?;
        let _ = writeln!(
            report,
            "{kind}: N = {}, shadowing = {:.2} dB, path gain variance = {:.3e}",
            geom.len(),
            real.shadowing_db,
            real.gain_variance
        );
        for &hw in &cfg.hardware {
            let cb = build_codebook(&real, args.order, hw)?;
            let _ = writeln!(report, "  {hw}, B = {}", cb.order);
            let _ = writeln!(
                report,
                "    {:>3}{:>9}{:>6}{:>14}{:>12}{:>12}",
                "x0", "cluster", "path", "gain_dB", "tx_err_deg", "rx_err_deg"
            );
            for k in 0..cb.order {
                let c = cb.clusters[k];
                let _ = writeln!(
                    report,
                    "    {:>3}{:>9}{:>6}{:>14.3}{:>12.4}{:>12.4}",
                    k,
                    c,
                    cb.best_paths[c],
                    10.0 * cb.gains[k].log10(),
                    max_phase_error_deg(&cb.designed_beamformers[k], &cb.beamformers[k]),
                    max_phase_error_deg(&cb.designed_combiners[k], &cb.combiners[k]),
                );
            }
            if let Some(dir) = &args.out {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                let json = serde_json::json!({
                    "geometry": kind,
                    "hardware": hw,
                    "seed": cfg.seed,
                    "realization": args.realization,
                    "order": cb.order,
                    "clusters": cb.clusters,
                    "best_paths": cb.best_paths,
                    "gains": cb.gains,
                });
                let name = format!(
                    "codebook_{}_{}.json",
                    kind.as_str(),
                    hw.to_string().replace(['(', ')'], "")
                );
                write_file(&dir.join(name), &serde_json::to_string_pretty(&json)?)?;
            }
        }
    }
    print!("{report}");
    Ok(ExitCode::SUCCESS)
}

fn max_phase_error_deg(
    a: &ndarray::Array1<num_complex::Complex64>,
    b: &ndarray::Array1<num_complex::Complex64>,
) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.conj() * y).arg().abs().to_degrees())
        .fold(0.0, f64::max)
}

fn verify_cmd(args: VerifyArgs) -> Result<ExitCode> {
    let pool = rayon_pool(args.workers)?;
    let outcomes = pool.install(|| verify::run_all(args.seed))?;
    let mut failed = 0;
    for o in &outcomes {
        println!("{o}");
        if !o.passed {
            failed += 1;
        }
    }
    println!("{} checks, {} failed", outcomes.len(), failed);
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn rayon_pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()?)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
