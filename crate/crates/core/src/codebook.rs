//! CIM codebook and combiner construction, plus the fixed-phase-shifter
//! (FPS) realization of analog weights.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};

/// Analog network model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Hardware {
    /// One continuous phase shifter per RF-chain/antenna pair.
    Optimal,
    /// Bank of `shifters` fixed phase shifters combined through switches.
    Fps { shifters: usize },
}

impl Hardware {
    pub fn label(&self) -> &'static str {
        match self {
            Hardware::Optimal => "OP",
            Hardware::Fps { .. } => "HE",
        }
    }

    pub fn shifters(&self) -> Option<usize> {
        match self {
            Hardware::Optimal => None,
            Hardware::Fps { shifters } => Some(*shifters),
        }
    }
}

impl fmt::Display for Hardware {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hardware::Optimal => f.write_str("OP"),
            Hardware::Fps { shifters } => write!(f, "HE({shifters})"),
        }
    }
}

impl TryFrom<String> for Hardware {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Hardware> for String {
    fn from(h: Hardware) -> String {
        h.to_string()
    }
}

impl FromStr for Hardware {
    type Err = Error;

    /// Accepts `OP`, `HE(8)`, `HE8` or `HE:8`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        if t == "OP" {
            return Ok(Hardware::Optimal);
        }
        let rest = t
            .strip_prefix("HE")
            .ok_or_else(|| Error::Parse(format!("unknown hardware `{s}`")))?;
        let digits = rest.trim_matches(|c| c == '(' || c == ')' || c == ':');
        let shifters: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("hardware `{s}` needs a shifter count, e.g. HE(8)")))?;
        FpsBank::new(shifters)?;
        Ok(Hardware::Fps { shifters })
    }
}

/// Fixed phase shifter values `2pi/2^(N_F-1) * [0, 1, 2, 4, ..., 2^(N_F-2)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FpsBank {
    phases: Vec<f64>,
}

impl FpsBank {
    pub fn new(shifters: usize) -> Result<Self> {
        if !(2..=53).contains(&shifters) {
            return Err(Error::InvalidCodebook(format!(
                "FPS bank needs between 2 and 53 shifters, got {shifters}"
            )));
        }
        let step = Self::step_for(shifters);
        let mut phases = Vec::with_capacity(shifters);
        phases.push(0.0);
        // Power-of-two multiples of `step` are exact in binary floating point.
        phases.extend((0..shifters - 1).map(|k| step * (1u64 << k) as f64));
        Ok(Self { phases })
    }

    fn step_for(shifters: usize) -> f64 {
        TAU / (1u64 << (shifters - 1)) as f64
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Quantization step, `2pi / 2^(N_F-1)`.
    pub fn step(&self) -> f64 {
        Self::step_for(self.phases.len())
    }

    /// Resolution in bits (`N_F - 1`).
    pub fn bits(&self) -> usize {
        self.phases.len() - 1
    }
}

/// Switch states for one RF-chain/antenna pair; `closed[i]` routes the
/// signal through shifter `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchVector {
    pub closed: Vec<bool>,
}

impl SwitchVector {
    /// `sum_i l_i v_i`, accumulated from the largest shifter down.
    pub fn realized_phase(&self, bank: &FpsBank) -> f64 {
        self.closed
            .iter()
            .zip(bank.phases())
            .rev()
            .filter(|(&on, _)| on)
            .fold(0.0, |acc, (_, &v)| acc + v)
    }
}

/// Wrap into `[0, 2pi)`.
pub fn wrap_phase(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    // rem_euclid can round tiny negative inputs up to exactly 2pi
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Greedy switch composition: scan shifters from the largest phase down and
/// close each one that still fits under the remaining target.
pub fn compose_switch_vector(theta: f64, bank: &FpsBank) -> SwitchVector {
    let target = wrap_phase(theta);
    let mut closed = vec![false; bank.len()];
    let mut acc = 0.0;
    for i in (0..bank.len()).rev() {
        let v = bank.phases[i];
        // same test as `v <= target - acc`, kept in accumulated form so the
        // realized phase is exactly the value compared against the target
        if acc + v <= target {
            closed[i] = true;
            acc += v;
        }
    }
    SwitchVector { closed }
}

/// Replace every phase with its FPS realization; magnitudes are kept.
pub fn quantize_weights(weights: &Array1<Complex64>, bank: &FpsBank) -> Array1<Complex64> {
    weights.mapv(|z| {
        let omega = compose_switch_vector(z.arg(), bank).realized_phase(bank);
        Complex64::from_polar(z.norm(), omega)
    })
}

/// `|w^H H f|^2`.
pub fn effective_gain(h: &Array2<Complex64>, w: &Array1<Complex64>, f: &Array1<Complex64>) -> f64 {
    bilinear(h, w, f).norm_sqr()
}

/// `w^H H f`.
pub fn bilinear(h: &Array2<Complex64>, w: &Array1<Complex64>, f: &Array1<Complex64>) -> Complex64 {
    let hf = h.dot(f);
    w.iter().zip(hf.iter()).map(|(a, b)| a.conj() * b).sum()
}

fn argmax_first(values: impl IntoIterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// Index (within the cluster) of the path whose steered beamformer and
/// combiner give the largest effective gain. Ties go to the lowest index.
pub fn best_effective_path(realization: &ChannelRealization, cluster: usize) -> Result<usize> {
    if cluster >= realization.clusters {
        return Err(Error::InvalidCodebook(format!(
            "cluster {cluster} out of range (C = {})",
            realization.clusters
        )));
    }
    let range = realization.cluster_paths(cluster);
    if range.is_empty() {
        return Err(Error::EmptyCluster(cluster));
    }
    let gains = range.map(|p| {
        effective_gain(
            &realization.h,
            realization.rx_responses[p].as_array(),
            realization.tx_responses[p].as_array(),
        )
    });
    argmax_first(gains).ok_or(Error::EmptyCluster(cluster))
}

#[derive(Debug, Clone)]
pub struct CimCodebook {
    pub order: usize,
    pub hardware: Hardware,
    /// Indexed clusters in selection order; entry `k` carries CIM symbol `k`.
    pub clusters: Vec<usize>,
    /// Best path (within-cluster index) for every cluster.
    pub best_paths: Vec<usize>,
    /// Effective gain of each indexed cluster with the continuous weights.
    pub gains: Vec<f64>,
    /// Beamformers as realized by the analog network.
    pub beamformers: Vec<Array1<Complex64>>,
    /// Combiners as realized by the analog network.
    pub combiners: Vec<Array1<Complex64>>,
    /// Continuous-phase steering vectors the network is asked to realize.
    pub designed_beamformers: Vec<Array1<Complex64>>,
    pub designed_combiners: Vec<Array1<Complex64>>,
}

impl CimCodebook {
    pub fn bits(&self) -> u32 {
        self.order.trailing_zeros()
    }
}

pub fn build_codebook(realization: &ChannelRealization, order: usize, hardware: Hardware) -> Result<CimCodebook> {
    if order == 0 || !order.is_power_of_two() {
        return Err(Error::InvalidCodebook(format!(
            "codebook order must be a power of two, got {order}"
        )));
    }
    if order > realization.clusters {
        return Err(Error::InvalidCodebook(format!(
            "codebook order {order} exceeds cluster count {}",
            realization.clusters
        )));
    }
    let bank = match hardware {
        Hardware::Optimal => None,
        Hardware::Fps { shifters } => Some(FpsBank::new(shifters)?),
    };

    let best_paths = (0..realization.clusters)
        .map(|c| best_effective_path(realization, c))
        .collect::<Result<Vec<_>>>()?;
    let cluster_gain: Vec<f64> = best_paths
        .iter()
        .enumerate()
        .map(|(c, &l)| {
            let p = realization.path_index(c, l);
            effective_gain(
                &realization.h,
                realization.rx_responses[p].as_array(),
                realization.tx_responses[p].as_array(),
            )
        })
        .collect();

    let mut candidates: Vec<usize> = (0..realization.clusters).collect();
    let mut cb = CimCodebook {
        order,
        hardware,
        clusters: Vec::with_capacity(order),
        best_paths: best_paths.clone(),
        gains: Vec::with_capacity(order),
        beamformers: Vec::with_capacity(order),
        combiners: Vec::with_capacity(order),
        designed_beamformers: Vec::with_capacity(order),
        designed_combiners: Vec::with_capacity(order),
    };
    for _ in 0..order {
        let pick = argmax_first(candidates.iter().map(|&c| cluster_gain[c]))
            .expect("candidate set outlives the loop because order <= C");
        let cluster = candidates.remove(pick);
        let p = realization.path_index(cluster, best_paths[cluster]);
        let f = realization.tx_responses[p].as_array().clone();
        let w = realization.rx_responses[p].as_array().clone();
        let (f_hw, w_hw) = match &bank {
            None => (f.clone(), w.clone()),
            Some(bank) => (quantize_weights(&f, bank), quantize_weights(&w, bank)),
        };
        cb.clusters.push(cluster);
        cb.gains.push(cluster_gain[cluster]);
        cb.beamformers.push(f_hw);
        cb.combiners.push(w_hw);
        cb.designed_beamformers.push(f);
        cb.designed_combiners.push(w);
    }
    Ok(cb)
}
