//! Far-field power patterns, directivity, half-power beamwidth and side-lobe
//! statistics.
//!
//! Patterns are sampled in a boresight frame attached to each array:
//! `(az, el) = (0, 0)` is the array's broadside direction, `el` is measured
//! from the horizontal plane of that frame and `az` within it. For the
//! planar arrays (URA, UCA, CCA in the `z = 0` plane) boresight is the `+z`
//! normal with `+x` as the horizontal reference and `+y` as the vertical;
//! for the ULA along `z` boresight is `+x` with `+z` vertical, so an
//! azimuth cut at zero elevation runs around the array axis.
//!
//! A direction `(az, el)` maps to the unit vector
//! `cos(el)cos(az) * bore + cos(el)sin(az) * horizontal + sin(el) * vertical`
//! in array coordinates.

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{steering_from_wave_vector, ElementPositions, GeometryKind};

/// Relative level (dB below the peak) bounding the main-lobe region that is
/// excluded from the side-lobe search.
pub const MAIN_LOBE_FLOOR_DB: f64 = 20.0;

/// Default angular grid step, degrees.
pub const DEFAULT_RESOLUTION_DEG: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoresightFrame {
    pub bore: [f64; 3],
    pub horizontal: [f64; 3],
    pub vertical: [f64; 3],
}

impl BoresightFrame {
    pub fn for_kind(kind: GeometryKind) -> Self {
        const X: [f64; 3] = [1.0, 0.0, 0.0];
        const Y: [f64; 3] = [0.0, 1.0, 0.0];
        const Z: [f64; 3] = [0.0, 0.0, 1.0];
        match kind {
            GeometryKind::Ula => Self {
                bore: X,
                horizontal: Y,
                vertical: Z,
            },
            GeometryKind::Ura | GeometryKind::Uca | GeometryKind::Cca => Self {
                bore: Z,
                horizontal: X,
                vertical: Y,
            },
        }
    }

    /// Unit vector for `(az, el)` in radians.
    pub fn direction(&self, az: f64, el: f64) -> [f64; 3] {
        let (se, ce) = el.sin_cos();
        let (sa, ca) = az.sin_cos();
        let (a, b, c) = (ce * ca, ce * sa, se);
        [
            a * self.bore[0] + b * self.horizontal[0] + c * self.vertical[0],
            a * self.bore[1] + b * self.horizontal[1] + c * self.vertical[1],
            a * self.bore[2] + b * self.horizontal[2] + c * self.vertical[2],
        ]
    }

    /// Polar-convention angles `(az, el)` of the same direction, as accepted
    /// by [`crate::geometry::steering_vector`].
    pub fn to_polar(&self, az: f64, el: f64) -> (f64, f64) {
        let d = self.direction(az, el);
        let polar = d[2].clamp(-1.0, 1.0).acos();
        let azimuth = d[1].atan2(d[0]).rem_euclid(TAU);
        (azimuth, polar)
    }
}

/// Array-factor evaluator in the boresight frame: precomputes each
/// element's projection on the frame axes.
struct FieldEvaluator {
    proj: Vec<[f64; 3]>,
    weights_conj: Vec<Complex64>,
}

impl FieldEvaluator {
    fn new(geom: &ElementPositions, weights: &Array1<Complex64>) -> Self {
        let frame = BoresightFrame::for_kind(geom.kind);
        let k = TAU / geom.wavelength;
        let dot = |a: &[f64; 3], p: &[f64; 3]| a[0] * p[0] + a[1] * p[1] + a[2] * p[2];
        let proj = geom
            .positions
            .iter()
            .map(|p| {
                [
                    k * dot(&frame.bore, p),
                    k * dot(&frame.horizontal, p),
                    k * dot(&frame.vertical, p),
                ]
            })
            .collect();
        Self {
            proj,
            weights_conj: weights.iter().map(|w| w.conj()).collect(),
        }
    }

    /// `|w^H a(az, el) sqrt(N)|^2`.
    fn power(&self, az: f64, el: f64) -> f64 {
        let (se, ce) = el.sin_cos();
        let (sa, ca) = az.sin_cos();
        let (a, b) = (ce * ca, ce * sa);
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, w) in self.proj.iter().zip(&self.weights_conj) {
            let phase = a * p[0] + b * p[1] + se * p[2];
            let (s, c) = phase.sin_cos();
            acc += w * Complex64::new(c, s);
        }
        acc.norm_sqr()
    }
}

/// Matched (conjugate-steering) weights toward a boresight-frame direction.
pub fn matched_weights(geom: &ElementPositions, az: f64, el: f64) -> Result<Array1<Complex64>> {
    let frame = BoresightFrame::for_kind(geom.kind);
    let d = frame.direction(az, el);
    let k = TAU / geom.wavelength;
    Ok(steering_from_wave_vector(geom, [k * d[0], k * d[1], k * d[2]])?.into_inner())
}

#[derive(Debug, Clone)]
pub struct RadiationPattern {
    pub kind: GeometryKind,
    /// Azimuth sample centers, radians, ascending over `[-pi, pi)`.
    pub az: Vec<f64>,
    /// Elevation sample centers, radians, ascending over `[-pi/2, pi/2]`.
    pub el: Vec<f64>,
    pub step_az: f64,
    pub step_el: f64,
    /// Linear directivity, `[el_index, az_index]`.
    pub directivity: Array2<f64>,
    /// Steering target `(az, el)`, radians.
    pub target: (f64, f64),
    /// `integral |AF|^2 dOmega`, used to normalize off-grid evaluations.
    pub total_power: f64,
    geom: ElementPositions,
    weights: Array1<Complex64>,
}

impl RadiationPattern {
    pub fn gain_db(&self, el_index: usize, az_index: usize) -> f64 {
        to_db(self.directivity[[el_index, az_index]])
    }

    /// Directivity (linear) at an arbitrary direction.
    pub fn directivity_at(&self, az: f64, el: f64) -> f64 {
        let eval = FieldEvaluator::new(&self.geom, &self.weights);
        4.0 * PI * eval.power(az, el) / self.total_power
    }

    /// `(1/4pi) * integral D dOmega` on the sampling grid.
    pub fn normalization(&self) -> f64 {
        let mut acc = 0.0;
        for (i, el) in self.el.iter().enumerate() {
            let row: f64 = self.directivity.row(i).sum();
            acc += row * el.cos();
        }
        acc * self.step_az * self.step_el / (4.0 * PI)
    }

    /// Grid index closest to a direction.
    pub fn nearest_index(&self, az: f64, el: f64) -> (usize, usize) {
        let n_az = self.az.len() as isize;
        let ia = ((wrap_pi(az) + PI) / self.step_az).floor() as isize;
        let ie = ((el + PI / 2.0) / self.step_el).floor() as isize;
        (
            ie.clamp(0, self.el.len() as isize - 1) as usize,
            ia.rem_euclid(n_az) as usize,
        )
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = std::io::BufWriter::new(file);
        let io = |e| Error::io(path, e);
        writeln!(out, "az_deg,el_deg,directivity_dbi").map_err(io)?;
        for (i, el) in self.el.iter().enumerate() {
            for (j, az) in self.az.iter().enumerate() {
                writeln!(
                    out,
                    "{:.4},{:.4},{:.4}",
                    az.to_degrees(),
                    el.to_degrees(),
                    self.gain_db(i, j)
                )
                .map_err(io)?;
            }
        }
        out.flush().map_err(io)
    }
}

fn wrap_pi(x: f64) -> f64 {
    (x + PI).rem_euclid(TAU) - PI
}

fn to_db(x: f64) -> f64 {
    10.0 * x.max(1e-300).log10()
}

fn grid_count(span_deg: f64, step_deg: f64) -> Result<usize> {
    if !(step_deg > 0.0) || !step_deg.is_finite() {
        return Err(Error::InvalidPattern(format!(
            "resolution must be positive, got {step_deg}"
        )));
    }
    if step_deg > 1.0 {
        return Err(Error::InvalidPattern(format!(
            "resolution must be at most 1 degree, got {step_deg}"
        )));
    }
    let n = (span_deg / step_deg).round() as usize;
    if n == 0 {
        return Err(Error::InvalidPattern("empty grid".into()));
    }
    Ok(n)
}

/// Sample `|w^H a(az, el) sqrt(N)|^2` on a uniform midpoint grid and
/// normalize to directivity with cos(el)-weighted midpoint quadrature.
/// Resolutions are in degrees; the steering target is taken as the grid
/// maximum. Planar arrays have a mirror beam behind the array plane, and
/// the first of the two grid maxima wins.
pub fn compute_pattern(
    geom: &ElementPositions,
    weights: &Array1<Complex64>,
    step_az_deg: f64,
    step_el_deg: f64,
) -> Result<RadiationPattern> {
    let mut pattern = sample_pattern(geom, weights, step_az_deg, step_el_deg)?;
    let (mut best, mut at) = (f64::NEG_INFINITY, (0, 0));
    for ((i, j), &v) in pattern.directivity.indexed_iter() {
        if v > best {
            best = v;
            at = (i, j);
        }
    }
    pattern.target = (pattern.az[at.1], pattern.el[at.0]);
    Ok(pattern)
}

/// Pattern for matched weights toward `(az, el)` (radians, boresight frame).
pub fn steered_pattern(geom: &ElementPositions, az: f64, el: f64, step_deg: f64) -> Result<RadiationPattern> {
    let weights = matched_weights(geom, az, el)?;
    let mut pattern = sample_pattern(geom, &weights, step_deg, step_deg)?;
    pattern.target = (az, el);
    Ok(pattern)
}

fn sample_pattern(
    geom: &ElementPositions,
    weights: &Array1<Complex64>,
    step_az_deg: f64,
    step_el_deg: f64,
) -> Result<RadiationPattern> {
    if geom.is_empty() {
        return Err(Error::InvalidPattern("array has no elements".into()));
    }
    if weights.len() != geom.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} elements",
            weights.len(),
            geom.len()
        )));
    }
    let n_az = grid_count(360.0, step_az_deg)?;
    let n_el = grid_count(180.0, step_el_deg)?;
    let step_az = TAU / n_az as f64;
    let step_el = PI / n_el as f64;
    let az: Vec<f64> = (0..n_az).map(|j| -PI + (j as f64 + 0.5) * step_az).collect();
    let el: Vec<f64> = (0..n_el).map(|i| -PI / 2.0 + (i as f64 + 0.5) * step_el).collect();

    let n = geom.len() as f64;
    let eval = FieldEvaluator::new(geom, weights);
    let rows: Vec<Vec<f64>> = el
        .par_iter()
        .map(|&e| az.iter().map(|&a| eval.power(a, e) * n).collect())
        .collect();
    let mut power = Array2::<f64>::zeros((n_el, n_az));
    let mut total = 0.0;
    for (i, row) in rows.into_iter().enumerate() {
        let c = el[i].cos();
        total += row.iter().sum::<f64>() * c;
        power.row_mut(i).assign(&Array1::from(row));
    }
    total *= step_az * step_el;
    if !(total > 0.0) {
        return Err(Error::InvalidPattern("pattern carries no power".into()));
    }
    let directivity = power.mapv(|p| 4.0 * PI * p / total);
    // `total` above includes the factor N; keep it consistent with
    // FieldEvaluator::power, which omits N
    let total_power = total / n;
    Ok(RadiationPattern {
        kind: geom.kind,
        az,
        el,
        step_az,
        step_el,
        directivity,
        target: (0.0, 0.0),
        total_power,
        geom: geom.clone(),
        weights: weights.clone(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PatternSummary {
    pub kind: GeometryKind,
    pub target_az_deg: f64,
    pub target_el_deg: f64,
    pub directivity_dbi: f64,
    pub hpbw_az_deg: f64,
    pub hpbw_el_deg: f64,
    /// Side-lobe directivities, dBi, strongest first.
    pub side_lobes_dbi: Vec<f64>,
    /// Mean of the side-lobe levels in dB (geometric mean in linear terms).
    pub asld_db: Option<f64>,
}

pub fn summarize(pattern: &RadiationPattern) -> PatternSummary {
    let eval = FieldEvaluator::new(&pattern.geom, &pattern.weights);
    let (az0, el0) = pattern.target;
    let peak = eval.power(az0, el0);
    let directivity = 4.0 * PI * peak / pattern.total_power;

    let hpbw_az = half_power_width(|x| eval.power(az0 + x, el0), peak, pattern.step_az);
    let hpbw_el = half_power_width(|x| eval.power(az0, el0 + x), peak, pattern.step_el);

    let side_lobes = side_lobes(pattern);
    let asld = if side_lobes.is_empty() {
        None
    } else {
        Some(side_lobes.iter().sum::<f64>() / side_lobes.len() as f64)
    };
    PatternSummary {
        kind: pattern.kind,
        target_az_deg: az0.to_degrees(),
        target_el_deg: el0.to_degrees(),
        directivity_dbi: to_db(directivity),
        hpbw_az_deg: hpbw_az.to_degrees(),
        hpbw_el_deg: hpbw_el.to_degrees(),
        side_lobes_dbi: side_lobes,
        asld_db: asld,
    }
}

/// Width of the region around `x = 0` where `f(x) >= peak / 2`, walking
/// outward in steps of `step` and interpolating linearly at each crossing.
/// Returns a full turn when either side never drops below half power.
fn half_power_width(f: impl Fn(f64) -> f64, peak: f64, step: f64) -> f64 {
    let half = peak / 2.0;
    let limit = (PI / step).ceil() as usize;
    let mut edges = [0.0; 2];
    for (slot, sign) in edges.iter_mut().zip([1.0, -1.0]) {
        let mut prev = peak;
        let mut found = None;
        for k in 1..=limit {
            let x = k as f64 * step;
            if x > PI {
                break;
            }
            let v = f(sign * x);
            if v < half {
                let t = (prev - half) / (prev - v);
                found = Some(x - step + t * step);
                break;
            }
            prev = v;
        }
        match found {
            Some(x) => *slot = x,
            None => return TAU,
        }
    }
    edges[0] + edges[1]
}

/// Side-lobe levels (dBi) of a sampled pattern, strongest first.
///
/// Every plateau of grid points that are no lower than any of their eight
/// neighbours (azimuth wraps, elevation does not) is one lobe. The main
/// lobe is the 8-connected region above `peak - MAIN_LOBE_FLOOR_DB` that
/// contains the grid point nearest the steering target; maxima inside it
/// are not side lobes.
pub fn side_lobes(pattern: &RadiationPattern) -> Vec<f64> {
    let db = pattern.directivity.mapv(to_db);
    let (n_el, n_az) = db.dim();
    let neighbours = |i: usize, j: usize| {
        let mut out = [(0usize, 0usize); 8];
        let mut len = 0;
        for di in [-1isize, 0, 1] {
            let ii = i as isize + di;
            if ii < 0 || ii >= n_el as isize {
                continue;
            }
            for dj in [-1isize, 0, 1] {
                if di == 0 && dj == 0 {
                    continue;
                }
                let jj = (j as isize + dj).rem_euclid(n_az as isize) as usize;
                out[len] = (ii as usize, jj);
                len += 1;
            }
        }
        (out, len)
    };

    // numerically flat ridges (e.g. a ULA around its axis) count as one plateau
    const TOL_DB: f64 = 1e-9;
    let mut is_max = Array2::from_elem((n_el, n_az), false);
    for i in 0..n_el {
        for j in 0..n_az {
            let v = db[[i, j]];
            let (nb, len) = neighbours(i, j);
            is_max[[i, j]] = nb[..len].iter().all(|&(a, b)| v >= db[[a, b]] - TOL_DB);
        }
    }

    let (si, sj) = pattern.nearest_index(pattern.target.0, pattern.target.1);
    let floor = db.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - MAIN_LOBE_FLOOR_DB;
    let mut main = Array2::from_elem((n_el, n_az), false);
    let mut queue = VecDeque::new();
    if db[[si, sj]] >= floor {
        main[[si, sj]] = true;
        queue.push_back((si, sj));
    }
    while let Some((i, j)) = queue.pop_front() {
        let (nb, len) = neighbours(i, j);
        for &(a, b) in &nb[..len] {
            if !main[[a, b]] && db[[a, b]] >= floor {
                main[[a, b]] = true;
                queue.push_back((a, b));
            }
        }
    }

    let mut seen = Array2::from_elem((n_el, n_az), false);
    let mut lobes = Vec::new();
    for i in 0..n_el {
        for j in 0..n_az {
            if !is_max[[i, j]] || seen[[i, j]] {
                continue;
            }
            let mut in_main = false;
            let mut level = f64::NEG_INFINITY;
            seen[[i, j]] = true;
            queue.push_back((i, j));
            while let Some((a, b)) = queue.pop_front() {
                in_main |= main[[a, b]];
                level = level.max(db[[a, b]]);
                let (nb, len) = neighbours(a, b);
                for &(c, d) in &nb[..len] {
                    if is_max[[c, d]] && !seen[[c, d]] {
                        seen[[c, d]] = true;
                        queue.push_back((c, d));
                    }
                }
            }
            if !in_main {
                lobes.push(level);
            }
        }
    }
    lobes.sort_by(|a, b| b.total_cmp(a));
    lobes
}

type SummaryCell = fn(&PatternSummary) -> String;

/// Aligned text table with one block of rows per geometry and one value
/// column per steering target.
pub fn format_summary_table(rows: &[(GeometryKind, Vec<PatternSummary>)]) -> String {
    let mut out = String::new();
    let targets: Vec<String> = rows
        .first()
        .map(|(_, s)| {
            s.iter()
                .map(|p| format!("Steered at {:.0} Az; {:.0} El", p.target_az_deg, p.target_el_deg))
                .collect()
        })
        .unwrap_or_default();
    let width = 28;
    let _ = write!(out, "{:<6}{:<20}", "", "Parameter");
    for t in &targets {
        let _ = write!(out, "{t:>width$}");
    }
    out.push('\n');
    for (kind, summaries) in rows {
        let lines: [(&str, SummaryCell); 3] = [
            ("Directivity (dBi)", |s| format!("{:.2}", s.directivity_dbi)),
            ("HPBW", |s| format!("{:.2} Az; {:.2} El", s.hpbw_az_deg, s.hpbw_el_deg)),
            ("ASLD (dB)", |s| {
                s.asld_db.map_or_else(|| "n/a".into(), |v| format!("{v:.2}"))
            }),
        ];
        for (row, (name, fmt_fn)) in lines.iter().enumerate() {
            let label = if row == 0 { kind.as_str() } else { "" };
            let _ = write!(out, "{label:<6}{name:<20}");
            for s in summaries {
                let _ = write!(out, "{:>width$}", fmt_fn(s));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{element_positions, steering_vector, ArrayLayout, GeometrySpec};
    use approx::assert_abs_diff_eq;

    fn reference(kind: GeometryKind) -> ElementPositions {
        element_positions(&GeometrySpec::reference(kind, 1.0)).unwrap()
    }

    #[test]
    fn single_element_is_isotropic() {
        let geom = element_positions(&GeometrySpec::new(ArrayLayout::Ula { count: 1, spacing: 0.5 }, 1.0)).unwrap();
        let w = Array1::from(vec![Complex64::new(1.0, 0.0)]);
        let p = compute_pattern(&geom, &w, 1.0, 1.0).unwrap();
        for v in p.directivity.iter() {
            assert_abs_diff_eq!(to_db(*v), 0.0, epsilon = 1e-3);
        }
    }

    #[test]
    fn frame_maps_boresight_to_array_normal() {
        let (az, el) = BoresightFrame::for_kind(GeometryKind::Ura).to_polar(0.0, 0.0);
        assert_abs_diff_eq!(el, 0.0, epsilon = 1e-12);
        let _ = az;
        let (_, el) = BoresightFrame::for_kind(GeometryKind::Ula).to_polar(0.0, 0.0);
        assert_abs_diff_eq!(el, PI / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn matched_weights_agree_with_polar_steering_vector() {
        for kind in GeometryKind::ALL {
            let geom = reference(kind);
            let (az, el) = (0.3, -0.4);
            let (paz, pel) = BoresightFrame::for_kind(kind).to_polar(az, el);
            let a = matched_weights(&geom, az, el).unwrap();
            let b = steering_vector(&geom, paz, pel).unwrap();
            for (x, y) in a.iter().zip(b.as_array()) {
                assert!((x - y).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn normalization_integrates_to_one() {
        for kind in GeometryKind::ALL {
            let geom = reference(kind);
            let p = steered_pattern(&geom, 0.2, 0.1, 0.5).unwrap();
            assert_abs_diff_eq!(p.normalization(), 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn matched_peak_sits_at_target() {
        for kind in [GeometryKind::Ura, GeometryKind::Uca, GeometryKind::Cca] {
            let geom = reference(kind);
            let (az, el) = (15f64.to_radians(), 30f64.to_radians());
            let w = matched_weights(&geom, az, el).unwrap();
            let p = compute_pattern(&geom, &w, 0.5, 0.5).unwrap();
            // planar arrays radiate a mirror beam behind the array plane
            let front = wrap_pi(p.target.0 - az).abs();
            let back = wrap_pi(p.target.0 - (PI - az)).abs();
            assert!(front.min(back) <= p.step_az);
            assert!((p.target.1 - el).abs() <= p.step_el);
        }
    }

    #[test]
    fn summary_peak_dominates_grid() {
        let geom = reference(GeometryKind::Cca);
        let p = steered_pattern(&geom, 0.0, 0.0, 0.5).unwrap();
        let s = summarize(&p);
        let grid_max = p.directivity.iter().cloned().fold(0.0, f64::max);
        assert!(s.directivity_dbi >= to_db(grid_max) - 1e-9);
        assert!(s.directivity_dbi >= 0.0);
        let asld = s.asld_db.unwrap();
        assert!(asld <= s.side_lobes_dbi[0]);
        assert!(s.hpbw_az_deg > 0.0 && s.hpbw_el_deg > 0.0);
    }

    #[test]
    fn ula_is_omnidirectional_in_azimuth() {
        let geom = reference(GeometryKind::Ula);
        let p = steered_pattern(&geom, 0.0, 0.0, 0.5).unwrap();
        let s = summarize(&p);
        assert_eq!(s.hpbw_az_deg, 360.0);
        assert!(s.hpbw_el_deg < 2.0);
        assert_abs_diff_eq!(s.directivity_dbi, 10.0 * 82f64.log10(), epsilon = 0.05);
    }

    #[test]
    fn ula_beamwidth_shrinks_with_size() {
        let mut last = f64::INFINITY;
        for n in [8usize, 16, 32, 64] {
            let geom = element_positions(&GeometrySpec::new(ArrayLayout::Ula { count: n, spacing: 0.5 }, 1.0)).unwrap();
            let p = steered_pattern(&geom, 0.0, 0.0, 0.5).unwrap();
            let s = summarize(&p);
            assert!(s.hpbw_el_deg < last, "N={n}: {} >= {last}", s.hpbw_el_deg);
            last = s.hpbw_el_deg;
        }
    }

    #[test]
    fn half_power_width_of_known_profile() {
        // cos^2 has half power at +-pi/4
        let w = half_power_width(|x| x.cos().powi(2), 1.0, 1e-4);
        assert_abs_diff_eq!(w, PI / 2.0, epsilon = 1e-6);
        assert_eq!(half_power_width(|_| 1.0, 1.0, 0.01), TAU);
    }

    #[test]
    fn resolution_limits() {
        let geom = reference(GeometryKind::Ura);
        let w = matched_weights(&geom, 0.0, 0.0).unwrap();
        assert!(compute_pattern(&geom, &w, 2.0, 0.5).is_err());
        assert!(compute_pattern(&geom, &w, 0.0, 0.5).is_err());
        let short = Array1::from(vec![Complex64::new(1.0, 0.0); 3]);
        assert!(compute_pattern(&geom, &short, 1.0, 1.0).is_err());
    }

    #[test]
    fn summary_table_layout() {
        let geom = reference(GeometryKind::Ura);
        let s = summarize(&steered_pattern(&geom, 0.0, 0.0, 1.0).unwrap());
        let table = format_summary_table(&[(GeometryKind::Ura, vec![s])]);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("URA"));
        assert!(lines[2].contains("Az;"));
    }
}
