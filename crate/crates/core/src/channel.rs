//! Clustered Saleh-Valenzuela channel sampling.
//!
//! Each realization draws `C` cluster mean directions at both ends, spreads
//! `L` paths around each mean with Laplacian offsets whose standard
//! deviation is the configured angular spread, and assigns every path an
//! i.i.d. circular Gaussian gain whose variance comes from the log-distance
//! path-loss model with one log-normal shadowing draw per realization.

use std::f64::consts::{PI, SQRT_2, TAU};

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{steering_vector, ElementPositions, SteeringVector};
use crate::seed::{stream_rng, Stream};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathLossModel {
    /// Intercept `a`, dB.
    pub intercept_db: f64,
    /// Exponent `b`.
    pub exponent: f64,
    /// Shadowing standard deviation, dB.
    pub shadowing_std_db: f64,
}

impl Default for PathLossModel {
    fn default() -> Self {
        Self {
            intercept_db: 72.0,
            exponent: 2.92,
            shadowing_std_db: 8.7,
        }
    }
}

impl PathLossModel {
    /// Mean path loss at `distance` (no shadowing), dB.
    pub fn mean_db(&self, distance: f64) -> Result<f64> {
        path_loss(distance, self.intercept_db, self.exponent, 0.0)
    }
}

/// `a + 10 b log10(d) + xi`, in dB.
pub fn path_loss(distance: f64, intercept_db: f64, exponent: f64, shadowing_db: f64) -> Result<f64> {
    if !(distance > 0.0) || !distance.is_finite() {
        return Err(Error::InvalidDistance(distance));
    }
    Ok(intercept_db + 10.0 * exponent * distance.log10() + shadowing_db)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    pub clusters: usize,
    pub paths_per_cluster: usize,
    /// Standard deviation of the per-path angular offsets, radians. Shared by
    /// azimuth and elevation at both ends.
    pub angular_spread: f64,
    pub path_loss: PathLossModel,
    /// Meters.
    pub tx_position: [f64; 3],
    /// Meters.
    pub rx_position: [f64; 3],
    pub carrier_hz: f64,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            clusters: 8,
            paths_per_cluster: 10,
            angular_spread: 7.5f64.to_radians(),
            path_loss: PathLossModel::default(),
            tx_position: [25.0, 25.0, 9.0],
            rx_position: [25.0, 175.0, 9.0],
            carrier_hz: 28e9,
        }
    }
}

impl ChannelConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidChannel(msg));
        if self.clusters < 1 {
            return fail("cluster count must be at least 1".into());
        }
        if self.paths_per_cluster < 1 {
            return fail("paths per cluster must be at least 1".into());
        }
        if !(self.angular_spread > 0.0) || !self.angular_spread.is_finite() {
            return fail(format!("angular spread must be positive, got {}", self.angular_spread));
        }
        if !(self.path_loss.shadowing_std_db >= 0.0) {
            return fail(format!(
                "shadowing std must be non-negative, got {}",
                self.path_loss.shadowing_std_db
            ));
        }
        if !(self.carrier_hz > 0.0) || !self.carrier_hz.is_finite() {
            return fail(format!("carrier must be positive, got {}", self.carrier_hz));
        }
        if self.distance() == 0.0 {
            return fail("Tx and Rx positions coincide".into());
        }
        Ok(())
    }

    pub fn distance(&self) -> f64 {
        self.tx_position
            .iter()
            .zip(&self.rx_position)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn wavelength(&self) -> f64 {
        crate::geometry::SPEED_OF_LIGHT / self.carrier_hz
    }

    /// Gain variance without shadowing: `10^(-PL(d)/10)`.
    pub fn mean_gain_variance(&self) -> Result<f64> {
        Ok(db_to_linear(-self.path_loss.mean_db(self.distance())?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub az: f64,
    pub el: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathRecord {
    pub cluster: usize,
    pub path: usize,
    pub gain: Complex64,
    pub departure: Direction,
    pub arrival: Direction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterMeans {
    pub departure: Direction,
    pub arrival: Direction,
}

#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub clusters: usize,
    pub paths_per_cluster: usize,
    /// Cluster-major: entry `c * L + l`.
    pub paths: Vec<PathRecord>,
    pub cluster_means: Vec<ClusterMeans>,
    pub shadowing_db: f64,
    pub gain_variance: f64,
    /// `N_r x N_t`.
    pub h: Array2<Complex64>,
    /// Transmit response at each path's departure direction.
    pub tx_responses: Vec<SteeringVector>,
    /// Receive response at each path's arrival direction.
    pub rx_responses: Vec<SteeringVector>,
}

impl ChannelRealization {
    pub fn path_index(&self, cluster: usize, path: usize) -> usize {
        cluster * self.paths_per_cluster + path
    }

    pub fn cluster_paths(&self, cluster: usize) -> std::ops::Range<usize> {
        let start = cluster * self.paths_per_cluster;
        start..start + self.paths_per_cluster
    }

    pub fn n_tx(&self) -> usize {
        self.h.ncols()
    }

    pub fn n_rx(&self) -> usize {
        self.h.nrows()
    }
}

pub(crate) fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Laplacian draw with zero mean and the given standard deviation
/// (scale `std / sqrt(2)`).
pub fn laplacian_offset<R: Rng + ?Sized>(rng: &mut R, std: f64) -> f64 {
    let magnitude: f64 = Exp1.sample(rng);
    let scale = std / SQRT_2;
    if rng.random::<bool>() {
        scale * magnitude
    } else {
        -scale * magnitude
    }
}

/// Fold a polar angle into `[0, pi]`, rotating azimuth by `pi` whenever the
/// direction crosses a pole, then wrap azimuth into `[0, 2pi)`.
pub fn fold_direction(az: f64, el: f64) -> Direction {
    let mut el = el.rem_euclid(TAU);
    let mut az = az;
    if el > PI {
        el = TAU - el;
        az += PI;
    }
    let mut az = az.rem_euclid(TAU);
    if az >= TAU {
        az = 0.0;
    }
    Direction { az, el }
}

fn uniform_direction<R: Rng + ?Sized>(rng: &mut R) -> Direction {
    Direction {
        az: rng.random::<f64>() * TAU,
        el: rng.random::<f64>() * PI,
    }
}

fn spread<R: Rng + ?Sized>(rng: &mut R, mean: Direction, std: f64) -> Direction {
    let daz = laplacian_offset(rng, std);
    let del = laplacian_offset(rng, std);
    fold_direction(mean.az + daz, mean.el + del)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(s * re, s * im)
}

pub fn sample_realization(
    cfg: &ChannelConfig,
    tx: &ElementPositions,
    rx: &ElementPositions,
    seed: u64,
) -> Result<ChannelRealization> {
    cfg.validate()?;
    if tx.is_empty() || rx.is_empty() {
        return Err(Error::InvalidGeometry("array has no elements".into()));
    }

    let mut angle_rng = stream_rng(seed, Stream::Angles);
    let mut gain_rng = stream_rng(seed, Stream::Gains);
    let mut shadow_rng = stream_rng(seed, Stream::Shadowing);

    let xi: f64 = StandardNormal.sample(&mut shadow_rng);
    let shadowing_db = cfg.path_loss.shadowing_std_db * xi;
    let pl = path_loss(
        cfg.distance(),
        cfg.path_loss.intercept_db,
        cfg.path_loss.exponent,
        shadowing_db,
    )?;
    let gain_variance = db_to_linear(-pl);

    let cluster_means: Vec<ClusterMeans> = (0..cfg.clusters)
        .map(|_| ClusterMeans {
            departure: uniform_direction(&mut angle_rng),
            arrival: uniform_direction(&mut angle_rng),
        })
        .collect();

    let mut paths = Vec::with_capacity(cfg.clusters * cfg.paths_per_cluster);
    for (c, means) in cluster_means.iter().enumerate() {
        for l in 0..cfg.paths_per_cluster {
            let departure = spread(&mut angle_rng, means.departure, cfg.angular_spread);
            let arrival = spread(&mut angle_rng, means.arrival, cfg.angular_spread);
            paths.push(PathRecord {
                cluster: c,
                path: l,
                gain: complex_gaussian(&mut gain_rng, gain_variance),
                departure,
                arrival,
            });
        }
    }

    let (h, tx_responses, rx_responses) = assemble_channel(&paths, tx, rx)?;
    Ok(ChannelRealization {
        clusters: cfg.clusters,
        paths_per_cluster: cfg.paths_per_cluster,
        paths,
        cluster_means,
        shadowing_db,
        gain_variance,
        h,
        tx_responses,
        rx_responses,
    })
}

type Assembled = (Array2<Complex64>, Vec<SteeringVector>, Vec<SteeringVector>);

/// `sqrt(Nt Nr / P) * sum_p alpha_p a_r(AoA_p) a_t(AoD_p)^H` over the `P`
/// given paths.
pub fn assemble_channel(paths: &[PathRecord], tx: &ElementPositions, rx: &ElementPositions) -> Result<Assembled> {
    if paths.is_empty() {
        return Err(Error::InvalidChannel("no paths to assemble".into()));
    }
    let (nt, nr) = (tx.len(), rx.len());
    let scale = ((nt * nr) as f64 / paths.len() as f64).sqrt();
    let mut h = Array2::<Complex64>::zeros((nr, nt));
    let mut tx_responses = Vec::with_capacity(paths.len());
    let mut rx_responses = Vec::with_capacity(paths.len());
    let mut at_conj = vec![Complex64::new(0.0, 0.0); nt];
    for p in paths {
        let at = steering_vector(tx, p.departure.az, p.departure.el)?;
        let ar = steering_vector(rx, p.arrival.az, p.arrival.el)?;
        for (dst, a) in at_conj.iter_mut().zip(at.as_array()) {
            *dst = a.conj();
        }
        for (mut row, r) in h.rows_mut().into_iter().zip(ar.as_array()) {
            let coef = p.gain * r * scale;
            for (hij, a) in row.iter_mut().zip(&at_conj) {
                *hij += coef * a;
            }
        }
        tx_responses.push(at);
        rx_responses.push(ar);
    }
    Ok((h, tx_responses, rx_responses))
}
