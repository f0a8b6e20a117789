//! One CIM channel use: bit mapping, received signal after the analog
//! combiners, and joint ML detection of the cluster index and PSK symbol.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::codebook::{bilinear, CimCodebook};
use crate::error::{Error, Result};

pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

/// Array gain `4 + 10 log10(sqrt(N))` in dB.
pub fn array_gain_db(elements: usize) -> f64 {
    4.0 + 10.0 * (elements as f64).sqrt().log10()
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Which analog weights the detector uses to form its hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectorReference {
    /// The continuous-phase steering vectors the network was asked to form.
    /// Any gap between these and what the FPS hardware realizes is left
    /// unmodeled at the receiver.
    #[default]
    Designed,
    /// The weights the analog network actually applies.
    Realized,
}

impl fmt::Display for DetectorReference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetectorReference::Designed => "designed",
            DetectorReference::Realized => "realized",
        })
    }
}

impl FromStr for DetectorReference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "designed" => Ok(DetectorReference::Designed),
            "realized" => Ok(DetectorReference::Realized),
            other => Err(Error::Parse(format!("unknown detector reference `{other}`"))),
        }
    }
}

/// Gray-labelled M-PSK with unit energy.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayPsk {
    order: usize,
    /// Constellation point carrying each label.
    points: Vec<Complex64>,
}

impl GrayPsk {
    pub fn new(order: usize) -> Result<Self> {
        if order < 2 || !order.is_power_of_two() {
            return Err(Error::InvalidLink(format!(
                "PSK order must be a power of two >= 2, got {order}"
            )));
        }
        let offset = if order == 2 { 0.0 } else { PI / order as f64 };
        let mut points = vec![Complex64::new(0.0, 0.0); order];
        for position in 0..order {
            let label = position ^ (position >> 1);
            points[label] = Complex64::from_polar(1.0, offset + TAU * position as f64 / order as f64);
        }
        Ok(Self { order, points })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits(&self) -> u32 {
        self.order.trailing_zeros()
    }

    pub fn point(&self, label: usize) -> Complex64 {
        self.points[label]
    }

    /// Points indexed by label.
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkConfig {
    /// CIM order `B`.
    pub cim_order: usize,
    /// PSK order `M`.
    pub psk_order: usize,
    /// Transmit power, mW.
    pub power_mw: f64,
    /// Linear Tx array gain (amplitude multiplier).
    pub gain_tx: f64,
    /// Linear Rx array gain (amplitude multiplier).
    pub gain_rx: f64,
    /// Noise variance per receive antenna, mW.
    pub noise_var: f64,
    pub rf_chains: usize,
    pub reference: DetectorReference,
}

impl LinkConfig {
    /// Reference link: gains from the element counts, powers in dBm.
    pub fn reference(
        cim_order: usize,
        psk_order: usize,
        power_dbm: f64,
        noise_dbm: f64,
        n_tx: usize,
        n_rx: usize,
    ) -> Self {
        Self {
            cim_order,
            psk_order,
            power_mw: dbm_to_mw(power_dbm),
            gain_tx: db_to_linear(array_gain_db(n_tx)),
            gain_rx: db_to_linear(array_gain_db(n_rx)),
            noise_var: dbm_to_mw(noise_dbm),
            rf_chains: cim_order,
            reference: DetectorReference::Designed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidLink(m));
        if self.cim_order == 0 || !self.cim_order.is_power_of_two() {
            return fail(format!("CIM order must be a power of two, got {}", self.cim_order));
        }
        if self.psk_order < 2 || !self.psk_order.is_power_of_two() {
            return fail(format!("PSK order must be a power of two >= 2, got {}", self.psk_order));
        }
        if self.cim_order > self.rf_chains {
            return fail(format!(
                "CIM order {} needs at least that many RF chains, have {}",
                self.cim_order, self.rf_chains
            ));
        }
        if !(self.power_mw >= 0.0) || !(self.gain_tx > 0.0) || !(self.gain_rx > 0.0) {
            return fail("power must be non-negative and gains positive".into());
        }
        if !(self.noise_var >= 0.0) {
            return fail("noise variance must be non-negative".into());
        }
        Ok(())
    }

    /// `sqrt(P) G_t G_r`.
    pub fn amplitude(&self) -> f64 {
        self.power_mw.sqrt() * self.gain_tx * self.gain_rx
    }

    pub fn bits_per_use(&self) -> u32 {
        self.cim_order.trailing_zeros() + self.psk_order.trailing_zeros()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TxSymbols {
    /// CIM symbol: index into the codebook.
    pub cim: usize,
    /// PSK label.
    pub label: usize,
    pub point: Complex64,
}

impl TxSymbols {
    pub fn new(cim: usize, label: usize, psk: &GrayPsk) -> Self {
        Self {
            cim,
            label,
            point: psk.point(label),
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, cim_order: usize, psk: &GrayPsk) -> Self {
        let cim = rng.random_range(0..cim_order);
        let label = rng.random_range(0..psk.order());
        Self::new(cim, label, psk)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detection {
    pub cim: usize,
    pub label: usize,
    pub point: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectionResult {
    pub cim: usize,
    pub label: usize,
    /// Errors on the natural-binary CIM index.
    pub spatial_bit_errors: u32,
    /// Errors on the Gray label.
    pub symbol_bit_errors: u32,
}

impl DetectionResult {
    pub fn total(&self) -> u32 {
        self.spatial_bit_errors + self.symbol_bit_errors
    }
}

impl Detection {
    pub fn score(&self, tx: &TxSymbols) -> DetectionResult {
        DetectionResult {
            cim: self.cim,
            label: self.label,
            spatial_bit_errors: (self.cim ^ tx.cim).count_ones(),
            symbol_bit_errors: (self.label ^ tx.label).count_ones(),
        }
    }
}

fn check_dims(cb: &CimCodebook, h: &Array2<Complex64>) -> Result<()> {
    let (nr, nt) = h.dim();
    for f in cb.beamformers.iter().chain(&cb.designed_beamformers) {
        if f.len() != nt {
            return Err(Error::DimensionMismatch(format!(
                "beamformer has {} entries, channel has {nt} Tx antennas",
                f.len()
            )));
        }
    }
    for w in cb.combiners.iter().chain(&cb.designed_combiners) {
        if w.len() != nr {
            return Err(Error::DimensionMismatch(format!(
                "combiner has {} entries, channel has {nr} Rx antennas",
                w.len()
            )));
        }
    }
    if cb.beamformers.len() != cb.order || cb.combiners.len() != cb.order {
        return Err(Error::DimensionMismatch("codebook size differs from its order".into()));
    }
    Ok(())
}

/// Draw `n ~ CN(0, variance I)`.
pub fn draw_noise<R: Rng + ?Sized>(rng: &mut R, len: usize, variance: f64) -> Array1<Complex64> {
    let s = (variance / 2.0).sqrt();
    (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(s * re, s * im)
        })
        .collect()
}

/// `z = W^H (sqrt(P) G_t G_r H f s + n)` with `f` the codeword for `tx.cim`.
pub fn transmit_and_receive<R: Rng + ?Sized>(
    cb: &CimCodebook,
    h: &Array2<Complex64>,
    tx: &TxSymbols,
    cfg: &LinkConfig,
    rng: &mut R,
) -> Result<Array1<Complex64>> {
    check_dims(cb, h)?;
    if tx.cim >= cb.order {
        return Err(Error::InvalidLink(format!("CIM symbol {} outside codebook", tx.cim)));
    }
    let f = &cb.beamformers[tx.cim];
    let noise = draw_noise(rng, h.nrows(), cfg.noise_var);
    let y = h.dot(f) * (tx.point * cfg.amplitude()) + &noise;
    Ok(cb
        .combiners
        .iter()
        .map(|w| w.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum())
        .collect())
}

/// Joint ML detection over every (cluster, symbol) pair, minimizing
/// `|z(c) - sqrt(P) G_t G_r w_c^H H f_c s|^2`. Ties go to the lowest
/// cluster index, then the lowest label.
pub fn ml_detect(
    z: &Array1<Complex64>,
    cb: &CimCodebook,
    h: &Array2<Complex64>,
    cfg: &LinkConfig,
) -> Result<Detection> {
    check_dims(cb, h)?;
    if z.len() != cb.order {
        return Err(Error::DimensionMismatch(format!(
            "received vector has {} branches, codebook has {}",
            z.len(),
            cb.order
        )));
    }
    let psk = GrayPsk::new(cfg.psk_order)?;
    let refs = reference_gains(cb, h, cfg.reference);
    Ok(detect_with(
        z.as_slice().expect("contiguous"),
        &refs,
        cfg.amplitude(),
        &psk,
    ))
}

fn reference_gains(cb: &CimCodebook, h: &Array2<Complex64>, which: DetectorReference) -> Vec<Complex64> {
    let (ws, fs) = match which {
        DetectorReference::Designed => (&cb.designed_combiners, &cb.designed_beamformers),
        DetectorReference::Realized => (&cb.combiners, &cb.beamformers),
    };
    ws.iter().zip(fs).map(|(w, f)| bilinear(h, w, f)).collect()
}

fn detect_with(z: &[Complex64], refs: &[Complex64], amplitude: f64, psk: &GrayPsk) -> Detection {
    let mut best = (0usize, 0usize, f64::INFINITY);
    for (c, (zc, g)) in z.iter().zip(refs).enumerate() {
        let expected = g * amplitude;
        for (label, s) in psk.points().iter().enumerate() {
            let metric = (zc - expected * s).norm_sqr();
            if metric < best.2 {
                best = (c, label, metric);
            }
        }
    }
    Detection {
        cim: best.0,
        label: best.1,
        point: psk.point(best.1),
    }
}

/// Per-realization precomputation for Monte Carlo runs: the realized
/// branch responses `w_c^H H f_k`, the detector's reference gains and the
/// combiner matrix applied to noise.
#[derive(Debug, Clone)]
pub struct LinkKernel {
    order: usize,
    /// `cross[c * B + k] = w_c^H H f_k` with realized weights.
    cross: Vec<Complex64>,
    refs: Vec<Complex64>,
    /// Conjugated combiners, one row per branch.
    combiners_conj: Array2<Complex64>,
}

impl LinkKernel {
    pub fn new(cb: &CimCodebook, h: &Array2<Complex64>, reference: DetectorReference) -> Result<Self> {
        check_dims(cb, h)?;
        let b = cb.order;
        let hf: Vec<Array1<Complex64>> = cb.beamformers.iter().map(|f| h.dot(f)).collect();
        let mut cross = Vec::with_capacity(b * b);
        for w in &cb.combiners {
            for col in &hf {
                cross.push(w.iter().zip(col.iter()).map(|(a, x)| a.conj() * x).sum());
            }
        }
        let nr = h.nrows();
        let mut combiners_conj = Array2::zeros((b, nr));
        for (mut row, w) in combiners_conj.rows_mut().into_iter().zip(&cb.combiners) {
            row.assign(&w.mapv(|x| x.conj()));
        }
        Ok(Self {
            order: b,
            cross,
            refs: reference_gains(cb, h, reference),
            combiners_conj,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rx_antennas(&self) -> usize {
        self.combiners_conj.ncols()
    }

    /// `W^H n`.
    pub fn combine_noise(&self, noise: &Array1<Complex64>) -> Vec<Complex64> {
        self.combiners_conj.dot(noise).to_vec()
    }

    /// Received branch vector given pre-combined noise.
    pub fn receive_into(&self, tx: &TxSymbols, amplitude: f64, combined_noise: &[Complex64], out: &mut [Complex64]) {
        let a = tx.point * amplitude;
        for (c, (slot, n)) in out.iter_mut().zip(combined_noise).enumerate() {
            *slot = self.cross[c * self.order + tx.cim] * a + n;
        }
    }

    pub fn detect(&self, z: &[Complex64], amplitude: f64, psk: &GrayPsk) -> Detection {
        detect_with(z, &self.refs, amplitude, psk)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{sample_realization, ChannelConfig};
    use crate::codebook::{build_codebook, Hardware};
    use crate::geometry::{element_positions, ArrayLayout, GeometryKind, GeometrySpec};
    use crate::seed::{stream_rng, Stream};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(kind: GeometryKind, order: usize, hw: Hardware, seed: u64) -> (CimCodebook, Array2<Complex64>, usize) {
        let cfg = ChannelConfig::default();
        let geom = element_positions(&GeometrySpec::reference(kind, cfg.wavelength())).unwrap();
        let r = sample_realization(&cfg, &geom, &geom, seed).unwrap();
        let cb = build_codebook(&r, order, hw).unwrap();
        (cb, r.h, geom.len())
    }

    #[test]
    fn gray_qpsk_neighbours_differ_by_one_bit() {
        let psk = GrayPsk::new(4).unwrap();
        for (label, p) in psk.points().iter().enumerate() {
            assert_abs_diff_eq!(p.norm(), 1.0, epsilon = 1e-15);
            for (other, q) in psk.points().iter().enumerate() {
                if label != other && (p - q).norm() < 1.5 {
                    assert_eq!((label ^ other).count_ones(), 1);
                }
            }
        }
        assert!(GrayPsk::new(3).is_err());
    }

    #[test]
    fn reference_gains_for_82_elements() {
        // 4 + 5 log10(82) = 13.569...
        let g = array_gain_db(82);
        assert_abs_diff_eq!(g, 4.0 + 5.0 * 82f64.log10(), epsilon = 1e-12);
        assert_abs_diff_eq!(g, 13.57, epsilon = 0.005);
        let cfg = LinkConfig::reference(2, 4, 0.0, -90.0, 82, 82);
        assert_abs_diff_eq!(cfg.gain_tx, 10f64.powf(g / 10.0), epsilon = 1e-12);
        assert_eq!(cfg.bits_per_use(), 3);
    }

    #[test]
    fn noiseless_single_branch() {
        let (cb, h, n) = setup(GeometryKind::Ura, 1, Hardware::Optimal, 3);
        let mut cfg = LinkConfig::reference(1, 4, 20.0, -90.0, n, n);
        cfg.noise_var = 0.0;
        let psk = GrayPsk::new(4).unwrap();
        let tx = TxSymbols::new(0, 2, &psk);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let z = transmit_and_receive(&cb, &h, &tx, &cfg, &mut rng).unwrap();
        let expect = bilinear(&h, &cb.combiners[0], &cb.beamformers[0]) * tx.point * cfg.amplitude();
        assert!((z[0] - expect).norm() <= 1e-12 * expect.norm());
    }

    #[test]
    fn noise_only_branch_power() {
        let (cb, h, n) = setup(GeometryKind::Uca, 2, Hardware::Optimal, 9);
        let mut cfg = LinkConfig::reference(2, 4, 0.0, -90.0, n, n);
        cfg.power_mw = 0.0;
        let psk = GrayPsk::new(4).unwrap();
        let tx = TxSymbols::new(1, 0, &psk);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let trials = 100_000;
        let mut acc = [0.0; 2];
        for _ in 0..trials {
            let z = transmit_and_receive(&cb, &h, &tx, &cfg, &mut rng).unwrap();
            for c in 0..2 {
                acc[c] += z[c].norm_sqr();
            }
        }
        for (c, total) in acc.iter().enumerate() {
            let wn: f64 = cb.combiners[c].iter().map(|x| x.norm_sqr()).sum();
            let ratio = total / trials as f64 / (cfg.noise_var * wn);
            assert!((ratio - 1.0).abs() < 0.02, "branch {c}: {ratio}");
        }
    }

    #[test]
    fn noiseless_detection_is_exact_for_all_symbols() {
        for kind in GeometryKind::ALL {
            for order in [2usize, 4] {
                let (cb, h, n) = setup(kind, order, Hardware::Optimal, 77);
                let mut cfg = LinkConfig::reference(order, 4, 10.0, -90.0, n, n);
                cfg.noise_var = 0.0;
                let psk = GrayPsk::new(4).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(0);
                for cim in 0..order {
                    for label in 0..4 {
                        let tx = TxSymbols::new(cim, label, &psk);
                        let z = transmit_and_receive(&cb, &h, &tx, &cfg, &mut rng).unwrap();
                        let det = ml_detect(&z, &cb, &h, &cfg).unwrap().score(&tx);
                        assert_eq!(det.total(), 0, "{kind} B={order} x0={cim} x1={label}");
                    }
                }
            }
        }
    }

    #[test]
    fn swapped_codebook_at_detector_flips_spatial_bit() {
        let (cb, h, n) = setup(GeometryKind::Ura, 2, Hardware::Optimal, 5);
        let mut cfg = LinkConfig::reference(2, 4, 10.0, -90.0, n, n);
        cfg.noise_var = 0.0;
        let psk = GrayPsk::new(4).unwrap();
        let tx = TxSymbols::new(0, 1, &psk);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let z = transmit_and_receive(&cb, &h, &tx, &cfg, &mut rng).unwrap();
        // detector believes branches are in the opposite order
        let mut swapped = cb.clone();
        swapped.combiners.swap(0, 1);
        swapped.beamformers.swap(0, 1);
        swapped.designed_combiners.swap(0, 1);
        swapped.designed_beamformers.swap(0, 1);
        let z_swapped = Array1::from(vec![z[1], z[0]]);
        let det = ml_detect(&z_swapped, &swapped, &h, &cfg).unwrap();
        // z_swapped[1] is the strong branch, matched by swapped hypothesis 1
        let res = det.score(&tx);
        assert_eq!(res.cim, 1);
        assert_eq!(res.spatial_bit_errors, 1);
    }

    #[test]
    fn detector_is_scale_invariant() {
        let (cb, h, n) = setup(GeometryKind::Cca, 4, Hardware::Optimal, 8);
        let cfg = LinkConfig::reference(4, 4, -5.0, -90.0, n, n);
        let psk = GrayPsk::new(4).unwrap();
        let kernel = LinkKernel::new(&cb, &h, cfg.reference).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let tx = TxSymbols::random(&mut rng, 4, &psk);
            let z = transmit_and_receive(&cb, &h, &tx, &cfg, &mut rng).unwrap();
            let a = kernel.detect(z.as_slice().unwrap(), cfg.amplitude(), &psk);
            let scaled: Vec<Complex64> = z.iter().map(|x| x * 7.5).collect();
            let b = kernel.detect(&scaled, cfg.amplitude() * 7.5, &psk);
            assert_eq!((a.cim, a.label), (b.cim, b.label));
        }
    }

    #[test]
    fn kernel_matches_direct_chain() {
        let (cb, h, n) = setup(GeometryKind::Ula, 4, Hardware::Fps { shifters: 5 }, 12);
        let cfg = LinkConfig::reference(4, 4, 5.0, -90.0, n, n);
        let psk = GrayPsk::new(4).unwrap();
        let kernel = LinkKernel::new(&cb, &h, cfg.reference).unwrap();
        let mut bits = stream_rng(1, Stream::Bits);
        for i in 0..50u64 {
            let tx = TxSymbols::random(&mut bits, 4, &psk);
            let z = transmit_and_receive(&cb, &h, &tx, &cfg, &mut stream_rng(i, Stream::Noise)).unwrap();
            let noise = draw_noise(&mut stream_rng(i, Stream::Noise), n, cfg.noise_var);
            let mut fast = vec![Complex64::new(0.0, 0.0); 4];
            kernel.receive_into(&tx, cfg.amplitude(), &kernel.combine_noise(&noise), &mut fast);
            for (a, b) in z.iter().zip(&fast) {
                assert!((a - b).norm() <= 1e-9 * a.norm().max(1e-20));
            }
            let d1 = ml_detect(&z, &cb, &h, &cfg).unwrap();
            let d2 = kernel.detect(&fast, cfg.amplitude(), &psk);
            assert_eq!((d1.cim, d1.label), (d2.cim, d2.label));
        }
    }

    #[test]
    fn high_snr_small_array_waterfall() {
        let cfg_ch = ChannelConfig {
            path_loss: crate::channel::PathLossModel {
                shadowing_std_db: 0.0,
                ..Default::default()
            },
            ..Default::default()
        };
        let geom = element_positions(&GeometrySpec::new(
            ArrayLayout::Ula { count: 8, spacing: 0.5 },
            cfg_ch.wavelength(),
        ))
        .unwrap();
        let psk = GrayPsk::new(4).unwrap();
        let mut errors = 0u64;
        let mut bits = 0u64;
        let realizations = 1000u64;
        for r in 0..realizations {
            let real = sample_realization(&cfg_ch, &geom, &geom, r).unwrap();
            let cb = build_codebook(&real, 2, Hardware::Optimal).unwrap();
            let cfg = LinkConfig::reference(2, 4, 60.0, -90.0, 8, 8);
            let kernel = LinkKernel::new(&cb, &real.h, cfg.reference).unwrap();
            let mut rng = stream_rng(r, Stream::Bits);
            let mut z = vec![Complex64::new(0.0, 0.0); 2];
            for _ in 0..100 {
                let tx = TxSymbols::random(&mut rng, 2, &psk);
                let noise = draw_noise(&mut rng, 8, cfg.noise_var);
                kernel.receive_into(&tx, cfg.amplitude(), &kernel.combine_noise(&noise), &mut z);
                errors += kernel.detect(&z, cfg.amplitude(), &psk).score(&tx).total() as u64;
                bits += 3;
            }
        }
        let ber = errors as f64 / bits as f64;
        assert!(ber < 1e-3, "ber {ber}");
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let (cb, _, n) = setup(GeometryKind::Ura, 2, Hardware::Optimal, 1);
        let (_, h_other, _) = setup(GeometryKind::Ula, 2, Hardware::Optimal, 1);
        let cfg = LinkConfig::reference(2, 4, 0.0, -90.0, n, n);
        let psk = GrayPsk::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let tx = TxSymbols::new(0, 0, &psk);
        assert!(matches!(
            transmit_and_receive(&cb, &h_other, &tx, &cfg, &mut rng),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn link_config_validation() {
        let mut cfg = LinkConfig::reference(4, 4, 0.0, -90.0, 82, 82);
        assert!(cfg.validate().is_ok());
        cfg.rf_chains = 2;
        assert!(cfg.validate().is_err());
        cfg.rf_chains = 4;
        cfg.psk_order = 3;
        assert!(cfg.validate().is_err());
    }
}
