//! Monte Carlo BER sweeps over geometry, signaling, hardware and transmit
//! power.
//!
//! Work is split into groups (geometry x signaling x hardware). Within a
//! group every transmit power reuses the same channel realizations, bits and
//! noise draws, so curves are compared on common random numbers. All draws
//! for realization `r` are keyed by `(seed, r)` only, which makes results
//! independent of the worker count and of scheduling order.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{sample_realization, ChannelConfig, PathLossModel};
use crate::codebook::{build_codebook, Hardware};
use crate::error::{Error, Result};
use crate::geometry::{element_positions, ElementPositions, GeometryKind, GeometrySpec};
use crate::link::{draw_noise, DetectorReference, GrayPsk, LinkConfig, LinkKernel, TxSymbols};
use crate::seed::{derive_seed, stream_rng, Stream};

/// Resolved simulation configuration. Field names double as the keys of
/// the flat `key = value` config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub seed: u64,
    pub geometries: Vec<GeometryKind>,
    /// `(B, M)` pairs.
    pub signalings: Vec<[usize; 2]>,
    pub hardware: Vec<Hardware>,
    pub power_dbm: Vec<f64>,
    pub realizations: usize,
    pub symbols_per_realization: usize,
    /// Receive RF chains; 0 means "equal to B" for every signaling.
    pub rf_chains: usize,
    /// Stop a power point once it has this many bit errors; 0 disables.
    pub max_bit_errors: u64,
    /// Realizations evaluated between early-exit checks.
    pub batch_realizations: usize,
    /// Worker threads; 0 uses every available core. Does not affect results.
    pub workers: usize,
    pub noise_dbm: f64,
    pub detector_reference: DetectorReference,
    pub clusters: usize,
    pub paths_per_cluster: usize,
    pub angular_spread_deg: f64,
    pub path_loss_intercept_db: f64,
    pub path_loss_exponent: f64,
    pub shadowing_std_db: f64,
    pub tx_position: [f64; 3],
    pub rx_position: [f64; 3],
    pub carrier_hz: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        let ch = ChannelConfig::default();
        Self {
            seed: 1,
            geometries: GeometryKind::ALL.to_vec(),
            signalings: vec![[2, 4]],
            hardware: vec![Hardware::Optimal],
            power_dbm: (-2..=8).map(|k| 5.0 * k as f64).collect(),
            realizations: 200,
            symbols_per_realization: 100,
            rf_chains: 0,
            max_bit_errors: 500,
            batch_realizations: 8,
            workers: 0,
            noise_dbm: -90.0,
            detector_reference: DetectorReference::Designed,
            clusters: ch.clusters,
            paths_per_cluster: ch.paths_per_cluster,
            angular_spread_deg: ch.angular_spread.to_degrees(),
            path_loss_intercept_db: ch.path_loss.intercept_db,
            path_loss_exponent: ch.path_loss.exponent,
            shadowing_std_db: ch.path_loss.shadowing_std_db,
            tx_position: ch.tx_position,
            rx_position: ch.rx_position,
            carrier_hz: ch.carrier_hz,
        }
    }
}

impl SimConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    pub fn channel(&self) -> ChannelConfig {
        ChannelConfig {
            clusters: self.clusters,
            paths_per_cluster: self.paths_per_cluster,
            angular_spread: self.angular_spread_deg.to_radians(),
            path_loss: PathLossModel {
                intercept_db: self.path_loss_intercept_db,
                exponent: self.path_loss_exponent,
                shadowing_std_db: self.shadowing_std_db,
            },
            tx_position: self.tx_position,
            rx_position: self.rx_position,
            carrier_hz: self.carrier_hz,
        }
    }

    pub fn trials(&self) -> usize {
        self.realizations * self.symbols_per_realization
    }

    fn rf_chains_for(&self, order: usize) -> usize {
        if self.rf_chains == 0 {
            order
        } else {
            self.rf_chains
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidConfig(m));
        self.channel().validate()?;
        if self.trials() == 0 {
            return fail("need at least one trial (realizations x symbols)".into());
        }
        if self.batch_realizations == 0 {
            return fail("batch_realizations must be at least 1".into());
        }
        for (name, empty) in [
            ("geometries", self.geometries.is_empty()),
            ("signalings", self.signalings.is_empty()),
            ("hardware", self.hardware.is_empty()),
            ("power_dbm", self.power_dbm.is_empty()),
        ] {
            if empty {
                return fail(format!("`{name}` must not be empty"));
            }
        }
        if self.power_dbm.iter().any(|p| !p.is_finite()) {
            return fail("transmit powers must be finite".into());
        }
        // -inf dBm is allowed and means a noiseless receiver
        if self.noise_dbm.is_nan() || self.noise_dbm == f64::INFINITY {
            return fail("noise power must be finite or -inf".into());
        }
        for &[b, m] in &self.signalings {
            if b == 0 || !b.is_power_of_two() || m < 2 || !m.is_power_of_two() {
                return fail(format!("signaling ({b}, {m}) needs powers of two with M >= 2"));
            }
            if b > self.clusters {
                return fail(format!("B = {b} exceeds cluster count {}", self.clusters));
            }
            if b > self.rf_chains_for(b) {
                return fail(format!("B = {b} exceeds RF chains {}", self.rf_chains));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BerResult {
    pub geometry: GeometryKind,
    pub cim_order: usize,
    pub psk_order: usize,
    pub hardware: Hardware,
    pub power_dbm: f64,
    /// Realizations actually simulated (fewer than configured after early exit).
    pub realizations: usize,
    pub trials: u64,
    pub bits_total: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub seed: u64,
    /// Wall-clock time of the whole group this point belongs to.
    pub elapsed_ms: u64,
}

impl BerResult {
    /// Binomial standard error of the BER estimate.
    pub fn std_error(&self) -> f64 {
        if self.bits_total == 0 {
            return 0.0;
        }
        (self.ber * (1.0 - self.ber) / self.bits_total as f64).sqrt()
    }

    pub fn key(&self) -> String {
        format!(
            "{} B={} M={} {} P={} dBm",
            self.geometry, self.cim_order, self.psk_order, self.hardware, self.power_dbm
        )
    }
}

#[derive(Debug, Clone, Copy)]
struct Group {
    geometry: GeometryKind,
    cim_order: usize,
    psk_order: usize,
    hardware: Hardware,
}

impl Group {
    fn label(&self) -> String {
        format!(
            "{} B={} M={} {}",
            self.geometry, self.cim_order, self.psk_order, self.hardware
        )
    }
}

/// Run every grid point. Results are ordered by geometry, signaling,
/// hardware and power, following the config lists.
pub fn run_sweep(cfg: &SimConfig) -> Result<Vec<BerResult>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;

    let mut groups = Vec::new();
    for &geometry in &cfg.geometries {
        for &[cim_order, psk_order] in &cfg.signalings {
            for &hardware in &cfg.hardware {
                groups.push(Group {
                    geometry,
                    cim_order,
                    psk_order,
                    hardware,
                });
            }
        }
    }

    pool.install(|| {
        let per_group: Vec<Result<Vec<BerResult>>> = groups
            .par_iter()
            .map(|g| {
                run_group(cfg, g).map_err(|e| Error::GridPoint {
                    point: g.label(),
                    source: Box::new(e),
                })
            })
            .collect();
        per_group
            .into_iter()
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().flatten().collect())
    })
}

struct GroupContext<'a> {
    cfg: &'a SimConfig,
    channel: ChannelConfig,
    positions: ElementPositions,
    group: Group,
    psk: GrayPsk,
    amplitudes: Vec<f64>,
    noise_var: f64,
    reference: DetectorReference,
}

fn run_group(cfg: &SimConfig, group: &Group) -> Result<Vec<BerResult>> {
    let start = Instant::now();
    let channel = cfg.channel();
    let positions = element_positions(&GeometrySpec::reference(group.geometry, channel.wavelength()))?;
    let n = positions.len();
    let links: Vec<LinkConfig> = cfg
        .power_dbm
        .iter()
        .map(|&p| {
            let mut link = LinkConfig::reference(group.cim_order, group.psk_order, p, cfg.noise_dbm, n, n);
            link.rf_chains = cfg.rf_chains_for(group.cim_order);
            link.reference = cfg.detector_reference;
            link.validate().map(|_| link)
        })
        .collect::<Result<_>>()?;
    let ctx = GroupContext {
        cfg,
        channel,
        positions,
        group: *group,
        psk: GrayPsk::new(group.psk_order)?,
        amplitudes: links.iter().map(LinkConfig::amplitude).collect(),
        noise_var: links[0].noise_var,
        reference: cfg.detector_reference,
    };
    let bits_per_use = links[0].bits_per_use() as u64;

    let n_powers = cfg.power_dbm.len();
    let mut active = vec![true; n_powers];
    let mut errors = vec![0u64; n_powers];
    let mut used = vec![0usize; n_powers];

    let mut next = 0;
    while next < cfg.realizations && active.iter().any(|&a| a) {
        let end = (next + cfg.batch_realizations).min(cfg.realizations);
        let batch: Vec<Vec<u64>> = (next..end)
            .into_par_iter()
            .map(|r| simulate_realization(&ctx, r as u64, &active))
            .collect::<Result<_>>()?;
        for counts in &batch {
            for p in 0..n_powers {
                if active[p] {
                    errors[p] += counts[p];
                }
            }
        }
        for p in 0..n_powers {
            if active[p] {
                used[p] += end - next;
                if cfg.max_bit_errors > 0 && errors[p] >= cfg.max_bit_errors {
                    active[p] = false;
                }
            }
        }
        next = end;
    }

    let elapsed_ms = start.elapsed().as_millis() as u64;
    Ok((0..n_powers)
        .map(|p| {
            let trials = (used[p] * cfg.symbols_per_realization) as u64;
            let bits_total = trials * bits_per_use;
            BerResult {
                geometry: group.geometry,
                cim_order: group.cim_order,
                psk_order: group.psk_order,
                hardware: group.hardware,
                power_dbm: cfg.power_dbm[p],
                realizations: used[p],
                trials,
                bits_total,
                bit_errors: errors[p],
                ber: if bits_total == 0 {
                    0.0
                } else {
                    errors[p] as f64 / bits_total as f64
                },
                seed: cfg.seed,
                elapsed_ms,
            }
        })
        .collect())
}

/// Bit errors per power for one channel realization.
fn simulate_realization(ctx: &GroupContext<'_>, r: u64, active: &[bool]) -> Result<Vec<u64>> {
    let seed = derive_seed(ctx.cfg.seed, &[r]);
    let realization = sample_realization(&ctx.channel, &ctx.positions, &ctx.positions, seed)?;
    let codebook = build_codebook(&realization, ctx.group.cim_order, ctx.group.hardware)?;
    let kernel = LinkKernel::new(&codebook, &realization.h, ctx.reference)?;

    let mut bits_rng = stream_rng(seed, Stream::Bits);
    let mut noise_rng = stream_rng(seed, Stream::Noise);
    let mut counts = vec![0u64; active.len()];
    let mut z = vec![Complex64::new(0.0, 0.0); kernel.order()];
    for _ in 0..ctx.cfg.symbols_per_realization {
        let tx = TxSymbols::random(&mut bits_rng, ctx.group.cim_order, &ctx.psk);
        let noise = draw_noise(&mut noise_rng, kernel.rx_antennas(), ctx.noise_var);
        let combined = kernel.combine_noise(&noise);
        for (p, &amp) in ctx.amplitudes.iter().enumerate() {
            if !active[p] {
                continue;
            }
            kernel.receive_into(&tx, amp, &combined, &mut z);
            counts[p] += kernel.detect(&z, amp, &ctx.psk).score(&tx).total() as u64;
        }
    }
    Ok(counts)
}

pub const CSV_HEADER: &str = "geometry,B,M,hardware,N_F,P_dBm,bits_total,bit_errors,ber,seed";

pub fn results_csv(results: &[BerResult]) -> String {
    let mut out = String::with_capacity(64 * (results.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in results {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.6e},{}",
            r.geometry,
            r.cim_order,
            r.psk_order,
            r.hardware.label(),
            r.hardware.shifters().map(|n| n.to_string()).unwrap_or_default(),
            r.power_dbm,
            r.bits_total,
            r.bit_errors,
            r.ber,
            r.seed
        );
    }
    out
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    software: &'static str,
    version: &'static str,
    config: &'a SimConfig,
    trials_per_point: usize,
    early_exit_bit_errors: u64,
    points: Vec<ManifestPoint>,
}

#[derive(Debug, Serialize)]
struct ManifestPoint {
    key: String,
    realizations: usize,
    trials: u64,
    elapsed_ms: u64,
}

/// Files written by [`aggregate_and_emit`].
#[derive(Debug, Clone)]
pub struct EmittedFiles {
    pub csv: PathBuf,
    pub manifest: PathBuf,
}

/// Write `ber.csv` and `manifest.json` into `out_dir`.
pub fn aggregate_and_emit(results: &[BerResult], cfg: &SimConfig, out_dir: &Path) -> Result<EmittedFiles> {
    if results.is_empty() {
        return Err(Error::EmptyResults);
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let csv = out_dir.join("ber.csv");
    let manifest_path = out_dir.join("manifest.json");

    let manifest = Manifest {
        software: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
        trials_per_point: cfg.trials(),
        early_exit_bit_errors: cfg.max_bit_errors,
        points: results
            .iter()
            .map(|r| ManifestPoint {
                key: r.key(),
                realizations: r.realizations,
                trials: r.trials,
                elapsed_ms: r.elapsed_ms,
            })
            .collect(),
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Parse(e.to_string()))?;

    std::fs::write(&csv, results_csv(results)).map_err(|e| Error::io(&csv, e))?;
    std::fs::write(&manifest_path, json).map_err(|e| Error::io(&manifest_path, e))?;
    Ok(EmittedFiles {
        csv,
        manifest: manifest_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> SimConfig {
        SimConfig {
            realizations: 4,
            symbols_per_realization: 20,
            power_dbm: vec![0.0, 20.0],
            geometries: vec![GeometryKind::Ura, GeometryKind::Ula],
            hardware: vec![Hardware::Optimal, Hardware::Fps { shifters: 4 }],
            workers: 2,
            ..Default::default()
        }
    }

    #[test]
    fn noiseless_sweep_has_zero_ber() {
        let cfg = SimConfig {
            noise_dbm: f64::NEG_INFINITY,
            realizations: 1,
            symbols_per_realization: 1,
            hardware: vec![Hardware::Optimal],
            ..tiny()
        };
        let results = run_sweep(&cfg).unwrap();
        assert!(!results.is_empty());
        for r in results {
            assert_eq!(r.bit_errors, 0, "{}", r.key());
            assert_eq!(r.ber, 0.0);
        }
    }

    #[test]
    fn grid_cardinality_and_bit_accounting() {
        let cfg = tiny();
        let results = run_sweep(&cfg).unwrap();
        // geometries x signalings x hardware x powers
        assert_eq!(results.len(), 2 * 2 * 2);
        for r in &results {
            assert!(r.ber >= 0.0 && r.ber <= 1.0);
            if r.realizations == cfg.realizations {
                assert_eq!(r.bits_total, (cfg.trials() * 3) as u64);
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let one = SimConfig { workers: 1, ..tiny() };
        let many = SimConfig { workers: 4, ..tiny() };
        let a = results_csv(&run_sweep(&one).unwrap());
        let b = results_csv(&run_sweep(&many).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn early_exit_is_deterministic() {
        let cfg = SimConfig {
            max_bit_errors: 5,
            batch_realizations: 1,
            realizations: 10,
            power_dbm: vec![-25.0],
            geometries: vec![GeometryKind::Ula],
            hardware: vec![Hardware::Optimal],
            ..tiny()
        };
        let a = run_sweep(&cfg).unwrap();
        let b = run_sweep(&SimConfig {
            workers: 1,
            ..cfg.clone()
        })
        .unwrap();
        assert_eq!(results_csv(&a), results_csv(&b));
        assert!(a[0].bit_errors >= 5);
        assert!(a[0].realizations < 10);
    }

    #[test]
    fn config_round_trip_and_unknown_keys() {
        let cfg = tiny();
        let text = cfg.to_toml_string();
        assert_eq!(SimConfig::from_toml_str(&text).unwrap(), cfg);
        let parsed = SimConfig::from_toml_str("seed = 9\nhardware = [\"OP\", \"HE(6)\"]\n").unwrap();
        assert_eq!(parsed.seed, 9);
        assert_eq!(parsed.hardware[1], Hardware::Fps { shifters: 6 });
        assert!(SimConfig::from_toml_str("sed = 9\n").is_err());
    }

    #[test]
    fn invalid_configs_rejected() {
        let bad = [
            SimConfig {
                realizations: 0,
                ..tiny()
            },
            SimConfig {
                signalings: vec![[16, 4]],
                ..tiny()
            },
            SimConfig {
                signalings: vec![[3, 4]],
                ..tiny()
            },
            SimConfig {
                signalings: vec![[4, 4]],
                rf_chains: 2,
                ..tiny()
            },
            SimConfig {
                power_dbm: vec![],
                ..tiny()
            },
            SimConfig {
                noise_dbm: f64::NAN,
                ..tiny()
            },
        ];
        for cfg in bad {
            assert!(run_sweep(&cfg).is_err());
        }
    }

    #[test]
    fn emit_writes_csv_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = SimConfig {
            geometries: vec![GeometryKind::Uca],
            hardware: vec![Hardware::Optimal],
            ..tiny()
        };
        let results = run_sweep(&cfg).unwrap();
        let files = aggregate_and_emit(&results, &cfg, dir.path()).unwrap();
        let csv = std::fs::read_to_string(&files.csv).unwrap();
        assert_eq!(csv.lines().count(), 1 + results.len());
        assert!(csv.starts_with(CSV_HEADER));
        let manifest: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&files.manifest).unwrap()).unwrap();
        assert_eq!(manifest["config"]["seed"], 1);

        let empty_dir = dir.path().join("empty");
        assert!(matches!(
            aggregate_and_emit(&[], &cfg, &empty_dir),
            Err(Error::EmptyResults)
        ));
        assert!(!empty_dir.exists());
    }
}
