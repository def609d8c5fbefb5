use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::PatchError;

/// An open disk `|z - center| < radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hole {
    pub center: [f64; 2],
    pub radius: f64,
}

impl Hole {
    pub fn new(center: Complex64, radius: f64) -> Self {
        Hole {
            center: [center.re, center.im],
            radius,
        }
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(self.center[0], self.center[1])
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center()).norm() < self.radius
    }
}

/// `U` as a finite union of open disks; `K` is its complement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionSpec {
    holes: Vec<Hole>,
    bounding_radius: f64,
}

impl RegionSpec {
    pub fn new(holes: Vec<Hole>) -> Result<Self, PatchError> {
        if holes.is_empty() {
            return Err(PatchError::InvalidRegion("no holes".into()));
        }
        for h in &holes {
            let finite = h.center.iter().all(|c| c.is_finite()) && h.radius.is_finite();
            if !finite || h.radius <= 0.0 {
                return Err(PatchError::InvalidRegion(format!(
                    "hole {:?} must have a finite positive radius",
                    h
                )));
            }
        }
        let bounding_radius = holes
            .iter()
            .map(|h| h.center().norm() + h.radius)
            .fold(0.0, f64::max);
        Ok(RegionSpec {
            holes,
            bounding_radius,
        })
    }

    /// The disk `D_radius` centred at 0.
    pub fn disk(radius: f64) -> Result<Self, PatchError> {
        Self::new(vec![Hole::new(Complex64::new(0.0, 0.0), radius)])
    }

    /// Parses the JSON list `[{"center": [x, y], "radius": r}, …]`.
    pub fn from_json(text: &str) -> Result<Self, PatchError> {
        let holes: Vec<Hole> =
            serde_json::from_str(text).map_err(|e| PatchError::InvalidRegion(e.to_string()))?;
        Self::new(holes)
    }

    pub fn holes(&self) -> &[Hole] {
        &self.holes
    }

    /// Smallest `r_U` with `U ⊆ D_{r_U}`.
    pub fn bounding_radius(&self) -> f64 {
        self.bounding_radius
    }

    pub fn in_u(&self, z: Complex64) -> bool {
        self.holes.iter().any(|h| h.contains(z))
    }

    pub fn in_k(&self, z: Complex64) -> bool {
        !self.in_u(z)
    }

    /// True unless `z` lies in some hole with at least `margin` to spare,
    /// i.e. some point of `K` may lie within `margin` of `z`.
    pub(crate) fn near_k(&self, z: Complex64, margin: f64) -> bool {
        self.holes
            .iter()
            .all(|h| (z - h.center()).norm() > h.radius - margin)
    }
}
