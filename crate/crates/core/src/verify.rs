//! Built-in oracle suites, run by `cimlink verify`. Each check compares the
//! production code path against a brute-force or closed-form reference.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::channel::{laplacian_offset, sample_realization, ChannelConfig, PathLossModel};
use crate::codebook::{build_codebook, compose_switch_vector, wrap_phase, FpsBank, Hardware};
use crate::error::Result;
use crate::geometry::{element_positions, steering_vector, GeometryKind, GeometrySpec};
use crate::link::{DetectorReference, GrayPsk, LinkConfig, LinkKernel, TxSymbols};
use crate::seed::{derive_seed, stream_rng, Stream};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

fn outcome(name: &str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Largest subset sum of `bank` not exceeding `target`, by enumeration.
/// Subsets always include the zero-phase shifter and are summed largest
/// first, matching the order the hardware model accumulates phases in.
pub fn exhaustive_subset_floor(bank: &FpsBank, target: f64) -> f64 {
    let phases = bank.phases();
    let n = phases.len();
    let mut best = 0.0f64;
    for mask in 0u64..(1u64 << n) {
        let mut sum = 0.0;
        for i in (0..n).rev() {
            if mask >> i & 1 == 1 {
                sum += phases[i];
            }
        }
        if sum <= target && sum > best {
            best = sum;
        }
    }
    best
}

/// Greedy switch composition against [`exhaustive_subset_floor`] and the
/// quantization bound `0 <= wrap(theta) - omega < step`.
pub fn fps_suite(shifters: std::ops::RangeInclusive<usize>, grid_points: usize) -> Result<Vec<CheckOutcome>> {
    let mut mismatches = 0usize;
    let mut bound_violations = 0usize;
    let mut cases = 0usize;
    for nf in shifters.clone() {
        let bank = FpsBank::new(nf)?;
        for i in 0..grid_points {
            // span slightly more than one turn, including negative phases
            let theta = -0.5 + (TAU + 1.0) * i as f64 / grid_points as f64;
            let target = wrap_phase(theta);
            let omega = compose_switch_vector(theta, &bank).realized_phase(&bank);
            if omega != exhaustive_subset_floor(&bank, target) {
                mismatches += 1;
            }
            let gap = target - omega;
            if !(gap >= 0.0 && gap < bank.step()) {
                bound_violations += 1;
            }
            cases += 1;
        }
    }
    let span = format!("N_F {}..={}", shifters.start(), shifters.end());
    Ok(vec![
        outcome(
            "fps-exhaustive",
            mismatches == 0,
            format!("{mismatches} mismatches over {cases} cases ({span})"),
        ),
        outcome(
            "fps-bound",
            bound_violations == 0,
            format!("{bound_violations} violations over {cases} cases ({span})"),
        ),
    ])
}

/// Unit norm of steering vectors for every reference geometry over an
/// angle grid.
pub fn steering_suite() -> Result<Vec<CheckOutcome>> {
    let lambda = ChannelConfig::default().wavelength();
    let mut worst = 0.0f64;
    for kind in GeometryKind::ALL {
        let pos = element_positions(&GeometrySpec::reference(kind, lambda))?;
        for i in 0..36 {
            for j in 0..19 {
                let az = TAU * i as f64 / 36.0;
                let el = std::f64::consts::PI * j as f64 / 18.0;
                let a = steering_vector(&pos, az, el)?;
                worst = worst.max((a.norm() - 1.0).abs());
            }
        }
    }
    Ok(vec![outcome(
        "steering-unit-norm",
        worst <= 1e-12,
        format!("max |norm - 1| = {worst:.2e}"),
    )])
}

/// Every `(cluster, symbol)` pair through the link without noise must be
/// detected exactly.
pub fn noiseless_suite(realizations: u64, seed: u64) -> Result<Vec<CheckOutcome>> {
    let cfg = ChannelConfig::default();
    let psk = GrayPsk::new(4)?;
    let mut out = Vec::new();
    for kind in GeometryKind::ALL {
        let pos = element_positions(&GeometrySpec::reference(kind, cfg.wavelength()))?;
        let mut errors = 0u64;
        let mut cases = 0u64;
        for order in [2usize, 4] {
            let link = LinkConfig::reference(order, 4, 30.0, f64::NEG_INFINITY, pos.len(), pos.len());
            let amp = link.amplitude();
            for r in 0..realizations {
                let real = sample_realization(&cfg, &pos, &pos, derive_seed(seed, &[r]))?;
                let cb = build_codebook(&real, order, Hardware::Optimal)?;
                let kernel = LinkKernel::new(&cb, &real.h, DetectorReference::Designed)?;
                let zero = vec![Complex64::new(0.0, 0.0); order];
                let mut z = vec![Complex64::new(0.0, 0.0); order];
                for cim in 0..order {
                    for label in 0..psk.order() {
                        let tx = TxSymbols::new(cim, label, &psk);
                        kernel.receive_into(&tx, amp, &zero, &mut z);
                        errors += kernel.detect(&z, amp, &psk).score(&tx).total() as u64;
                        cases += 1;
                    }
                }
            }
        }
        out.push(outcome(
            &format!("noiseless-{kind}"),
            errors == 0,
            format!("{errors} bit errors over {cases} (x0, x1) pairs, B in {{2, 4}}, M = 4"),
        ));
    }
    Ok(out)
}

/// Path-gain power and angular spread against the configured model.
/// Shadowing is disabled so the gain variance is the deterministic
/// path-loss value.
pub fn channel_suite(realizations: u64, seed: u64) -> Result<Vec<CheckOutcome>> {
    let base = ChannelConfig::default();
    let cfg = ChannelConfig {
        path_loss: PathLossModel {
            shadowing_std_db: 0.0,
            ..base.path_loss
        },
        ..base
    };
    let expected = cfg.mean_gain_variance()?;
    // two elements keep the channel assembly cheap; gains do not depend on N
    let spec = GeometrySpec::new(
        crate::geometry::ArrayLayout::Ula {
            count: 2,
            spacing: cfg.wavelength() / 2.0,
        },
        cfg.wavelength(),
    );
    let pos = element_positions(&spec)?;
    let mut power = 0.0;
    let mut count = 0usize;
    for r in 0..realizations {
        let real = sample_realization(&cfg, &pos, &pos, derive_seed(seed, &[r]))?;
        for p in &real.paths {
            power += p.gain.norm_sqr();
            count += 1;
        }
    }
    let mean = power / count as f64;
    let rel = (mean / expected - 1.0).abs();

    let mut rng = stream_rng(derive_seed(seed, &[u64::MAX]), Stream::Angles);
    let n = 200_000;
    let target = cfg.angular_spread;
    let (mut s, mut s2) = (0.0, 0.0);
    for _ in 0..n {
        let x = laplacian_offset(&mut rng, target);
        s += x;
        s2 += x * x;
    }
    let m = s / n as f64;
    let std = (s2 / n as f64 - m * m).sqrt();
    let rel_std = (std / target - 1.0).abs();

    Ok(vec![
        outcome(
            "channel-gain-power",
            rel <= 0.03,
            format!(
                "E|alpha|^2 = {mean:.4e}, expected {expected:.4e} ({:.2}% off, {realizations} realizations)",
                100.0 * rel
            ),
        ),
        outcome(
            "channel-laplacian-std",
            rel_std <= 0.03,
            format!(
                "std = {:.4} deg, expected {:.4} deg ({:.2}% off)",
                std.to_degrees(),
                target.to_degrees(),
                100.0 * rel_std
            ),
        ),
    ])
}

/// All suites at their default sizes.
pub fn run_all(seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut out = fps_suite(2..=6, 10_000)?;
    out.extend(steering_suite()?);
    out.extend(noiseless_suite(5, seed)?);
    out.extend(channel_suite(10_000, seed)?);
    Ok(out)
}
