use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::analytic::JetData;
use super::domain::DomainSpec;
use super::{PotentialConfig, PotentialError};

/// Boundary quadrature data for one curve: equispaced parameters, points,
/// normalized measure density per unit parameter, and its Fourier
/// coefficients `ŵ_k`, `0 ≤ k ≤ N/2`.
#[derive(Debug, Clone)]
pub(crate) struct CurveQuad {
    pub t: Vec<f64>,
    pub z: Vec<Complex64>,
    pub w: Vec<f64>,
    pub w_hat: Vec<Complex64>,
}

/// Solved Green's function of a domain with its pole at the marked point.
#[derive(Debug, Clone)]
pub struct GreenSolution {
    domain: DomainSpec,
    config: PotentialConfig,
    a0: f64,
    sources: Vec<Complex64>,
    charges: Vec<f64>,
    mass_scale: f64,
    /// `h(O)`, the Robin constant.
    pub robin_c: f64,
    /// `e^{-robin_c}`.
    pub capacity: f64,
    /// Largest `|h - log|z - O||` at boundary points between collocation nodes.
    pub collocation_residual: f64,
    /// Change in `robin_c` against a solve at half the resolution.
    pub refinement_delta: f64,
    /// Trapezoid mass of the unnormalized density.
    pub raw_mass: f64,
    pub(crate) quad: Vec<CurveQuad>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureNode {
    pub curve: usize,
    pub t: f64,
    pub point: Complex64,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionSummary {
    pub robin: f64,
    pub capacity: f64,
    pub collocation_residual: f64,
    pub refinement_delta: f64,
    pub raw_mass: f64,
    pub resolution: usize,
}

struct Charges {
    a0: f64,
    sources: Vec<Complex64>,
    charges: Vec<f64>,
}

impl Charges {
    fn h(&self, x: Complex64) -> f64 {
        self.a0
            + self
                .sources
                .iter()
                .zip(&self.charges)
                .map(|(s, q)| q * (x - s).norm().ln())
                .sum::<f64>()
    }
}

fn place_sources(domain: &DomainSpec, n: usize, tau: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n * domain.curves().len());
    for (c, curve) in domain.curves().iter().enumerate() {
        let sign = domain.sign(c);
        for j in 0..n {
            let t = TAU * (j as f64 + 0.5) / n as f64;
            out.push(curve.eval(Complex64::new(t, -sign * tau)));
        }
    }
    out
}

fn sources_are_exterior(domain: &DomainSpec, sources: &[Complex64], n: usize) -> bool {
    sources.iter().enumerate().all(|(i, s)| {
        let c = i / n;
        let wind = domain.curves()[c].winding(*s);
        let ok = if c == 0 { wind == 0 } else { wind == 1 };
        ok && domain.boundary_distance(*s) > 1e-3 * domain.curves()[0].scale()
    })
}

fn solve_charges(domain: &DomainSpec, n: usize, tau0: f64) -> Result<Charges, PotentialError> {
    let mut tau = tau0;
    let mut sources = place_sources(domain, n, tau);
    for _ in 0..6 {
        if sources_are_exterior(domain, &sources, n) {
            break;
        }
        tau /= 2.0;
        sources = place_sources(domain, n, tau);
    }
    if !sources_are_exterior(domain, &sources, n) {
        return Err(PotentialError::InvalidDomain(
            "could not place charges outside the domain".into(),
        ));
    }
    let o = domain.center();
    let colloc: Vec<Complex64> = domain.curves().iter().flat_map(|c| c.samples(n)).collect();
    let rows = colloc.len();
    let cols = sources.len() + 1;
    let a = DMatrix::from_fn(rows, cols, |i, j| {
        if j == 0 {
            1.0
        } else {
            (colloc[i] - sources[j - 1]).norm().ln()
        }
    });
    let b = DVector::from_iterator(rows, colloc.iter().map(|z| (z - o).norm().ln()));
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let x = svd
        .solve(&b, 1e-14 * smax)
        .map_err(|e| PotentialError::InvalidDomain(e.to_string()))?;
    Ok(Charges {
        a0: x[0],
        sources,
        charges: x.iter().skip(1).copied().collect(),
    })
}

/// Solves the Dirichlet problem with `resolution` collocation points per
/// curve and default tolerances.
pub fn solve_green(
    domain: &DomainSpec,
    resolution: usize,
) -> Result<GreenSolution, PotentialError> {
    solve_green_with(
        domain,
        &PotentialConfig {
            resolution,
            ..PotentialConfig::default()
        },
    )
}

pub fn solve_green_with(
    domain: &DomainSpec,
    config: &PotentialConfig,
) -> Result<GreenSolution, PotentialError> {
    let n = config.resolution.max(16);
    let ch = solve_charges(domain, n, config.source_offset)?;
    let o = domain.center();
    let robin_c = ch.h(o);
    let coarse = solve_charges(domain, n / 2, config.source_offset)?;
    let refinement_delta = (coarse.h(o) - robin_c).abs();

    let mut residual = 0.0f64;
    for curve in domain.curves() {
        for j in 0..n {
            let z = curve.at(TAU * (j as f64 + 0.5) / n as f64);
            residual = residual.max((ch.h(z) - (z - o).norm().ln()).abs());
        }
    }
    if !(residual <= config.residual_threshold) {
        return Err(PotentialError::SolverIllConditioned { residual });
    }

    let mut sol = GreenSolution {
        domain: domain.clone(),
        config: *config,
        a0: ch.a0,
        sources: ch.sources,
        charges: ch.charges,
        mass_scale: 1.0,
        robin_c,
        capacity: (-robin_c).exp(),
        collocation_residual: residual,
        refinement_delta,
        raw_mass: 0.0,
        quad: Vec::new(),
    };
    let raw_mass: f64 = (0..domain.curves().len())
        .map(|c| {
            (0..n)
                .map(|j| sol.density_dt(c, TAU * j as f64 / n as f64))
                .sum::<f64>()
                * TAU
                / n as f64
        })
        .sum();
    if !((raw_mass - 1.0).abs() <= config.mass_tolerance) {
        return Err(PotentialError::MeasureMass { mass: raw_mass });
    }
    sol.raw_mass = raw_mass;
    sol.mass_scale = 1.0 / raw_mass;
    sol.quad = (0..domain.curves().len())
        .map(|c| sol.curve_quad(c, n))
        .collect();
    Ok(sol)
}

impl GreenSolution {
    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn config(&self) -> &PotentialConfig {
        &self.config
    }

    pub fn summary(&self) -> SolutionSummary {
        SolutionSummary {
            robin: self.robin_c,
            capacity: self.capacity,
            collocation_residual: self.collocation_residual,
            refinement_delta: self.refinement_delta,
            raw_mass: self.raw_mass,
            resolution: self.config.resolution,
        }
    }

    /// Harmonic part `h`.
    pub fn harmonic_part(&self, x: Complex64) -> f64 {
        self.a0
            + self
                .sources
                .iter()
                .zip(&self.charges)
                .map(|(s, q)| q * (x - s).norm().ln())
                .sum::<f64>()
    }

    /// `F'` for the analytic function with real part `g`.
    fn complex_gradient(&self, x: Complex64) -> Complex64 {
        let o = self.domain.center();
        -(x - o).inv()
            + self
                .sources
                .iter()
                .zip(&self.charges)
                .map(|(s, q)| (x - s).inv() * *q)
                .sum::<Complex64>()
    }

    /// Measure density per unit parameter on curve `c`, normalized once the
    /// mass is known.
    pub(crate) fn density_dt(&self, c: usize, t: f64) -> f64 {
        let curve = &self.domain.curves()[c];
        let (z, dz) = (curve.at(t), curve.tangent(t));
        let v = (Complex64::new(0.0, 1.0) * dz * self.complex_gradient(z)).re;
        self.domain.sign(c) * v / TAU * self.mass_scale
    }

    fn curve_quad(&self, c: usize, n: usize) -> CurveQuad {
        let curve = &self.domain.curves()[c];
        let t: Vec<f64> = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
        let z: Vec<Complex64> = t.iter().map(|&t| curve.at(t)).collect();
        let w: Vec<f64> = t.iter().map(|&t| self.density_dt(c, t)).collect();
        let w_hat = (0..=n / 2)
            .map(|k| {
                w.iter()
                    .zip(&t)
                    .map(|(w, t)| Complex64::from_polar(*w, -(k as f64) * t))
                    .sum::<Complex64>()
                    / n as f64
            })
            .collect();
        CurveQuad { t, z, w, w_hat }
    }

    /// `∫ log|z - ρ| dμ(z)`. Near the boundary the logarithm is split as
    /// `log|2 sin((t - s)/2)|` plus a smooth remainder, where `z(s) = ρ`
    /// for a complex parameter `s`; the singular part is integrated
    /// against the Fourier series of the density.
    pub(crate) fn log_potential(&self, rho: Complex64) -> f64 {
        (0..self.quad.len())
            .map(|c| {
                let s = self.domain.curves()[c]
                    .complex_parameter(rho)
                    .filter(|s| s.im.abs() < 0.5);
                self.log_potential_curve(c, rho, s)
            })
            .sum()
    }

    /// Same as [`Self::log_potential`] for a point known to sit at real
    /// parameter `t` of curve `c`.
    pub(crate) fn log_potential_on_curve(&self, c: usize, t: f64) -> f64 {
        let rho = self.domain.curves()[c].at(t);
        (0..self.quad.len())
            .map(|k| {
                let s = if k == c {
                    Some(Complex64::new(t, 0.0))
                } else {
                    self.domain.curves()[k]
                        .complex_parameter(rho)
                        .filter(|s| s.im.abs() < 0.5)
                };
                self.log_potential_curve(k, rho, s)
            })
            .sum()
    }

    fn log_potential_curve(&self, c: usize, rho: Complex64, s: Option<Complex64>) -> f64 {
        let q = &self.quad[c];
        let n = q.t.len();
        let h = TAU / n as f64;
        let Some(s) = s else {
            return q
                .z
                .iter()
                .zip(&q.w)
                .map(|(z, w)| (z - rho).norm().ln() * w)
                .sum::<f64>()
                * h;
        };
        let curve = &self.domain.curves()[c];
        let smooth: f64 = (0..n)
            .map(|j| {
                let u = Complex64::new(q.t[j], 0.0) - s;
                let wrapped = Complex64::new((u.re + PI).rem_euclid(TAU) - PI, u.im);
                let r = if wrapped.norm() < 1e-9 {
                    curve.tangent(q.t[j]).norm().ln()
                } else {
                    (q.z[j] - rho).norm().ln() - (2.0 * (u / 2.0).sin()).norm().ln()
                };
                r * q.w[j]
            })
            .sum::<f64>()
            * h;
        let (a, b) = (s.re, s.im.abs());
        let mut kernel = 0.5 * b * q.w_hat[0].re;
        for k in 1..n / 2 {
            let kf = k as f64;
            kernel -= (-kf * b).exp() / kf * (q.w_hat[k] * Complex64::from_polar(1.0, kf * a)).re;
        }
        smooth + TAU * kernel
    }
}

/// `g(x)`, zero outside the interior of the domain.
pub fn green_eval(sol: &GreenSolution, x: Complex64) -> Result<f64, PotentialError> {
    let o = sol.domain.center();
    if (x - o).norm() <= 1e-14 * (1.0 + o.norm()) {
        return Err(PotentialError::PoleAtCenter);
    }
    if !sol.domain.contains(x) {
        return Ok(0.0);
    }
    Ok(-(x - o).norm().ln() + sol.harmonic_part(x))
}

/// Equilibrium density with respect to arclength at parameter `t` of
/// curve `curve`.
pub fn measure_density(sol: &GreenSolution, curve: usize, t: f64) -> f64 {
    sol.density_dt(curve, t) / sol.domain.curves()[curve].tangent(t).norm()
}

/// Trapezoid discretization of the equilibrium measure with `nodes`
/// points per boundary curve, weights normalized to total 1.
pub fn equilibrium_measure(sol: &GreenSolution, nodes: usize) -> Vec<MeasureNode> {
    let nodes = nodes.max(1);
    let mut out: Vec<MeasureNode> = (0..sol.domain.curves().len())
        .flat_map(|c| {
            (0..nodes).map(move |j| {
                let t = TAU * j as f64 / nodes as f64;
                MeasureNode {
                    curve: c,
                    t,
                    point: sol.domain.curves()[c].at(t),
                    weight: sol.density_dt(c, t),
                }
            })
        })
        .collect();
    let total: f64 = out.iter().map(|n| n.weight).sum();
    for n in &mut out {
        n.weight /= total;
    }
    out
}

/// `log|c_e| + e·robin_c`: the jet measured against the conformal radius.
pub fn jet_cap_norm(jet: &JetData, sol: &GreenSolution) -> f64 {
    jet.leading().norm().ln() + jet.vanishing_order as f64 * sol.robin_c
}
