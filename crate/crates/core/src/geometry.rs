//! Array layouts and their response (steering) vectors.
//!
//! Element positions are held in meters. Angles follow the polar
//! convention used by the wave-number expression: `az` is measured in the
//! x-y plane from the x-axis and `el` is the polar angle from the z-axis.
//!
//! Element ordering is fixed so every consumer of a geometry sees the same
//! weight layout:
//!
//! * ULA: by `n_z`
//! * URA: row-major over `(n_x, n_y)`
//! * UCA: by `n_c`
//! * CCA: ring-major over `(ring, n_c)`

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use ndarray::Array1;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

pub fn wavelength_from_carrier(carrier_hz: f64) -> Result<f64> {
    if !(carrier_hz > 0.0) || !carrier_hz.is_finite() {
        return Err(Error::InvalidChannel(format!(
            "carrier frequency must be positive, got {carrier_hz}"
        )));
    }
    Ok(SPEED_OF_LIGHT / carrier_hz)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GeometryKind {
    Ula,
    Ura,
    Uca,
    Cca,
}

impl GeometryKind {
    pub const ALL: [GeometryKind; 4] = [
        GeometryKind::Ula,
        GeometryKind::Ura,
        GeometryKind::Uca,
        GeometryKind::Cca,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GeometryKind::Ula => "ULA",
            GeometryKind::Ura => "URA",
            GeometryKind::Uca => "UCA",
            GeometryKind::Cca => "CCA",
        }
    }

    /// Reference layout used throughout the simulations: 82 elements at
    /// half-wavelength pitch (81 for the 9x9 URA), UCA radius `N/(4*pi)`
    /// wavelengths and a four-ring concentric layout.
    pub fn reference_layout(self) -> ArrayLayout {
        match self {
            GeometryKind::Ula => ArrayLayout::Ula {
                count: 82,
                spacing: 0.5,
            },
            GeometryKind::Ura => ArrayLayout::Ura {
                nx: 9,
                ny: 9,
                dx: 0.5,
                dy: 0.5,
            },
            GeometryKind::Uca => ArrayLayout::Uca {
                count: 82,
                radius: 82.0 / (4.0 * PI),
            },
            GeometryKind::Cca => ArrayLayout::Cca {
                rings: REFERENCE_CCA_RINGS
                    .iter()
                    .map(|&(radius, count)| Ring { radius, count })
                    .collect(),
            },
        }
    }
}

impl fmt::Display for GeometryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeometryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "ULA" => Ok(GeometryKind::Ula),
            "URA" => Ok(GeometryKind::Ura),
            "UCA" => Ok(GeometryKind::Uca),
            "CCA" => Ok(GeometryKind::Cca),
            other => Err(Error::InvalidGeometry(format!("unknown geometry `{other}`"))),
        }
    }
}

/// Optimized ring radii (wavelengths) and element counts for the
/// 82-element concentric array.
pub const REFERENCE_CCA_RINGS: [(f64, usize); 4] = [(0.76, 9), (1.36, 17), (2.09, 25), (2.99, 31)];

/// One ring of a concentric circular array. Radius is in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ring {
    pub radius: f64,
    pub count: usize,
}

/// Layout parameters. Spacings and radii are in wavelengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "UPPERCASE")]
pub enum ArrayLayout {
    Ula { count: usize, spacing: f64 },
    Ura { nx: usize, ny: usize, dx: f64, dy: f64 },
    Uca { count: usize, radius: f64 },
    Cca { rings: Vec<Ring> },
}

impl ArrayLayout {
    pub fn kind(&self) -> GeometryKind {
        match self {
            ArrayLayout::Ula { .. } => GeometryKind::Ula,
            ArrayLayout::Ura { .. } => GeometryKind::Ura,
            ArrayLayout::Uca { .. } => GeometryKind::Uca,
            ArrayLayout::Cca { .. } => GeometryKind::Cca,
        }
    }

    pub fn element_count(&self) -> usize {
        match self {
            ArrayLayout::Ula { count, .. } | ArrayLayout::Uca { count, .. } => *count,
            ArrayLayout::Ura { nx, ny, .. } => nx * ny,
            ArrayLayout::Cca { rings } => rings.iter().map(|r| r.count).sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometrySpec {
    pub layout: ArrayLayout,
    /// Meters.
    pub wavelength: f64,
}

impl GeometrySpec {
    pub fn new(layout: ArrayLayout, wavelength: f64) -> Self {
        Self { layout, wavelength }
    }

    pub fn reference(kind: GeometryKind, wavelength: f64) -> Self {
        Self::new(kind.reference_layout(), wavelength)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.wavelength > 0.0) || !self.wavelength.is_finite() {
            return Err(Error::InvalidWavelength(self.wavelength));
        }
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidGeometry(format!("{name} must be positive, got {v}")))
            }
        };
        let nonzero = |name: &str, n: usize| {
            if n >= 1 {
                Ok(())
            } else {
                Err(Error::InvalidGeometry(format!("{name} must be at least 1")))
            }
        };
        match &self.layout {
            ArrayLayout::Ula { count, spacing } => {
                nonzero("element count", *count)?;
                positive("spacing", *spacing)
            }
            ArrayLayout::Ura { nx, ny, dx, dy } => {
                nonzero("nx", *nx)?;
                nonzero("ny", *ny)?;
                positive("dx", *dx)?;
                positive("dy", *dy)
            }
            ArrayLayout::Uca { count, radius } => {
                nonzero("element count", *count)?;
                positive("radius", *radius)
            }
            ArrayLayout::Cca { rings } => {
                if rings.is_empty() {
                    return Err(Error::InvalidGeometry("CCA needs at least one ring".into()));
                }
                for (i, ring) in rings.iter().enumerate() {
                    nonzero(&format!("ring {i} count"), ring.count)?;
                    positive(&format!("ring {i} radius"), ring.radius)?;
                }
                Ok(())
            }
        }
    }
}

/// Build a CCA from parallel radius and count lists.
pub fn cca_layout(radii: &[f64], counts: &[usize]) -> Result<ArrayLayout> {
    if radii.len() != counts.len() {
        return Err(Error::InvalidGeometry(format!(
            "CCA has {} radii but {} ring counts",
            radii.len(),
            counts.len()
        )));
    }
    Ok(ArrayLayout::Cca {
        rings: radii
            .iter()
            .zip(counts)
            .map(|(&radius, &count)| Ring { radius, count })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementPositions {
    pub kind: GeometryKind,
    pub wavelength: f64,
    /// Meters.
    pub positions: Vec<[f64; 3]>,
}

impl ElementPositions {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

pub fn element_positions(spec: &GeometrySpec) -> Result<ElementPositions> {
    spec.validate()?;
    let lambda = spec.wavelength;
    let positions = match &spec.layout {
        ArrayLayout::Ula { count, spacing } => (0..*count).map(|n| [0.0, 0.0, n as f64 * spacing * lambda]).collect(),
        ArrayLayout::Ura { nx, ny, dx, dy } => (0..*nx)
            .flat_map(|ix| (0..*ny).map(move |iy| [ix as f64 * dx * lambda, iy as f64 * dy * lambda, 0.0]))
            .collect(),
        ArrayLayout::Uca { count, radius } => ring_positions(*radius * lambda, *count).collect(),
        ArrayLayout::Cca { rings } => rings
            .iter()
            .flat_map(|ring| ring_positions(ring.radius * lambda, ring.count))
            .collect(),
    };
    Ok(ElementPositions {
        kind: spec.layout.kind(),
        wavelength: lambda,
        positions,
    })
}

fn ring_positions(radius: f64, count: usize) -> impl Iterator<Item = [f64; 3]> {
    (0..count).map(move |n| {
        let angle = TAU * n as f64 / count as f64;
        [radius * angle.cos(), radius * angle.sin(), 0.0]
    })
}

/// Wave vector `(2*pi/lambda) * [sin(el)cos(az), sin(el)sin(az), cos(el)]` in rad/m.
pub fn wave_number(az: f64, el: f64, wavelength: f64) -> Result<[f64; 3]> {
    if !(wavelength > 0.0) || !wavelength.is_finite() {
        return Err(Error::InvalidWavelength(wavelength));
    }
    let k = TAU / wavelength;
    let (sin_el, cos_el) = el.sin_cos();
    let (sin_az, cos_az) = az.sin_cos();
    Ok([k * sin_el * cos_az, k * sin_el * sin_az, k * cos_el])
}

/// Unit-norm array response with entries `exp(j k.p_n) / sqrt(N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector(pub Array1<Complex64>);

impl SteeringVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_array(&self) -> &Array1<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> Array1<Complex64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

pub fn steering_vector(positions: &ElementPositions, az: f64, el: f64) -> Result<SteeringVector> {
    let k = wave_number(az, el, positions.wavelength)?;
    steering_from_wave_vector(positions, k)
}

/// Response for an explicit wave vector (rad/m). Used when directions are
/// already expressed in Cartesian form.
pub fn steering_from_wave_vector(positions: &ElementPositions, k: [f64; 3]) -> Result<SteeringVector> {
    if positions.is_empty() {
        return Err(Error::InvalidGeometry("array has no elements".into()));
    }
    let scale = 1.0 / (positions.len() as f64).sqrt();
    let weights = positions
        .positions
        .iter()
        .map(|p| Complex64::from_polar(scale, k[0] * p[0] + k[1] * p[1] + k[2] * p[2]))
        .collect();
    Ok(SteeringVector(weights))
}
