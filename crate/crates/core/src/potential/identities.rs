use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::analytic::{fiber, preimages, taylor_jet, AnalyticMap, JetData};
use super::domain::DomainSpec;
use super::solver::{green_eval, jet_cap_norm, solve_green, GreenSolution};
use super::PotentialError;
use crate::numeric::gauss_legendre;

const GL_POINTS: usize = 20;
const PANELS: usize = 32;
const SCAN: usize = 256;

/// `(f_*g)(w)`: multiplicity-weighted sum of `g` over the fibre of `w`.
pub fn pushforward_green(
    sol: &GreenSolution,
    f: &AnalyticMap,
    w: Complex64,
) -> Result<f64, PotentialError> {
    preimages(f, w, sol.domain())?
        .iter()
        .map(|p| Ok(p.multiplicity as f64 * green_eval(sol, p.point)?))
        .sum()
}

fn boundary_guard(sol: &GreenSolution, f: &AnalyticMap) -> Result<(), PotentialError> {
    let threshold = sol.config().boundary_zero_threshold;
    for q in &sol.quad {
        for z in &q.z {
            if !(f.eval(*z)?.norm() > threshold) {
                return Err(PotentialError::BoundaryZero);
            }
        }
    }
    Ok(())
}

/// `∫ log|f| dμ`. Polynomials are split into `log|lead| + Σ ∫ log|z - ρ_i| dμ`
/// over their roots, which stays accurate when a root is near the boundary.
pub fn log_abs_boundary_integral(
    sol: &GreenSolution,
    f: &AnalyticMap,
) -> Result<f64, PotentialError> {
    boundary_guard(sol, f)?;
    match f.as_polynomial() {
        Some(c) if c.len() >= 2 => {
            let lead = c.last().expect("nonempty").norm().ln();
            Ok(lead
                + fiber(f, Complex64::default())?
                    .iter()
                    .map(|r| sol.log_potential(*r))
                    .sum::<f64>())
        }
        _ => {
            let mut total = 0.0;
            for q in &sol.quad {
                let h = TAU / q.t.len() as f64;
                for (z, w) in q.z.iter().zip(&q.w) {
                    total += f.eval(*z)?.norm().ln() * w * h;
                }
            }
            Ok(total)
        }
    }
}

/// `Σ mult(y)·g(y)` over the fibre of `f(O)` with `O` itself removed.
fn divisor_term(sol: &GreenSolution, f: &AnalyticMap) -> Result<f64, PotentialError> {
    let o = sol.domain().center();
    let fo = f.eval(o)?;
    preimages(f, fo, sol.domain())?
        .iter()
        .filter(|p| (p.point - o).norm() > 1e-6 * (1.0 + o.norm()))
        .map(|p| Ok(p.multiplicity as f64 * green_eval(sol, p.point)?))
        .sum()
}

fn center_jet(sol: &GreenSolution, f: &AnalyticMap) -> Result<JetData, PotentialError> {
    let order = f.as_polynomial().map_or(16, |c| c.len().max(2) - 1);
    taylor_jet(f, sol.domain(), order, sol.config().vanishing_tolerance)
}

/// The other points of the fibre of `f(z)` for `z` on the boundary.
fn partners(f: &AnalyticMap, z: Complex64) -> Result<Vec<Complex64>, PotentialError> {
    let mut roots = fiber(f, f.eval(z)?)?;
    if let Some(i) =
        (0..roots.len()).min_by(|&a, &b| (roots[a] - z).norm().total_cmp(&(roots[b] - z).norm()))
    {
        roots.remove(i);
    }
    Ok(roots)
}

fn inside_count(domain: &DomainSpec, pts: &[Complex64]) -> usize {
    pts.iter().filter(|p| domain.contains(**p)).count()
}

/// Parameters on curve `c` where a partner point crosses the boundary.
fn crossings(sol: &GreenSolution, f: &AnalyticMap, c: usize) -> Result<Vec<f64>, PotentialError> {
    let curve = &sol.domain().curves()[c];
    let count = |t: f64| -> Result<usize, PotentialError> {
        Ok(inside_count(sol.domain(), &partners(f, curve.at(t))?))
    };
    let mut out = Vec::new();
    let mut prev = count(0.0)?;
    for j in 1..=SCAN {
        let t1 = TAU * j as f64 / SCAN as f64;
        let cur = count(t1)?;
        if cur != prev {
            let (mut lo, mut hi) = (TAU * (j - 1) as f64 / SCAN as f64, t1);
            for _ in 0..50 {
                let mid = 0.5 * (lo + hi);
                if count(mid)? == prev {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        prev = cur;
    }
    Ok(out)
}

/// `∫ F(c, t, z(t), partners) dμ` over all boundary curves, by composite
/// Gauss–Legendre with panel edges at the partner crossings.
fn fibre_integral<F>(
    sol: &GreenSolution,
    f: &AnalyticMap,
    integrand: F,
) -> Result<f64, PotentialError>
where
    F: Fn(usize, f64, &[Complex64]) -> Result<f64, PotentialError>,
{
    let (x, w) = gauss_legendre(GL_POINTS);
    let mut total = 0.0;
    for c in 0..sol.domain().curves().len() {
        let curve = &sol.domain().curves()[c];
        let mut edges: Vec<f64> = (0..=PANELS)
            .map(|j| TAU * j as f64 / PANELS as f64)
            .collect();
        edges.extend(crossings(sol, f, c)?);
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        for pair in edges.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let half = 0.5 * (b - a);
            for (xi, wi) in x.iter().zip(&w) {
                let t = a + half * (1.0 + xi);
                let ps = partners(f, curve.at(t))?;
                total += wi * half * integrand(c, t, &ps)? * sol.density_dt(c, t);
            }
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OverflowMethod {
    /// Divisor term plus the integral of the pushed-forward Green's function.
    Def,
    /// Boundary energy of `f` minus the log jet norm.
    Energy,
}

/// Overflow of a polynomial map, computed either from its definition or
/// as an energy.
pub fn overflow(
    sol: &GreenSolution,
    f: &AnalyticMap,
    method: OverflowMethod,
) -> Result<f64, PotentialError> {
    let coeffs = f.as_polynomial().ok_or(PotentialError::NotPolynomial)?;
    if coeffs.len() < 2 {
        return Err(PotentialError::ConstantMap);
    }
    match method {
        OverflowMethod::Def => {
            let div = divisor_term(sol, f)?;
            let push = fibre_integral(sol, f, |_, _, ps| {
                ps.iter()
                    .map(|p| green_eval(sol, *p))
                    .sum::<Result<f64, _>>()
            })?;
            Ok(div + push)
        }
        OverflowMethod::Energy => {
            let lead = coeffs.last().expect("nonempty").norm().ln();
            let energy = fibre_integral(sol, f, |c, t, ps| {
                Ok(lead
                    + sol.log_potential_on_curve(c, t)
                    + ps.iter().map(|p| sol.log_potential(*p)).sum::<f64>())
            })?;
            Ok(energy - jet_cap_norm(&center_jet(sol, f)?, sol))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    /// `(f_*g)(f(x)) = ∫ log|1/f(x) - 1/f(x')| dμ(x') + ∫ log|f| dμ`.
    Pushforward,
    /// `∫ log|f| dμ = Σ_{f^{-1}(0) - eO} g + log‖f^{[e]}(O)‖`.
    Jensen,
    /// `(f_*g)(f(x)) - Σ g - log‖f^{[e]}(O)‖ = ∫ log|1/f(x) - 1/f(x')| dμ(x')`.
    Combined,
}

/// `∫ log|1/f(x) - 1/f(x')| dμ(x')`, via the fibre of `f(x)`.
fn reciprocal_energy(
    sol: &GreenSolution,
    f: &AnalyticMap,
    fx: Complex64,
    log_f_mean: f64,
) -> Result<f64, PotentialError> {
    let coeffs = f.as_polynomial().ok_or(PotentialError::NotPolynomial)?;
    let lead = coeffs.last().expect("nonempty").norm().ln();
    let fibre: f64 = fiber(f, fx)?.iter().map(|r| sol.log_potential(*r)).sum();
    Ok(lead + fibre - fx.norm().ln() - log_f_mean)
}

/// `|LHS - RHS|` of the chosen identity for a polynomial with `f(O) = 0`.
pub fn identity_residual(
    sol: &GreenSolution,
    f: &AnalyticMap,
    which: Identity,
    x: Option<Complex64>,
) -> Result<f64, PotentialError> {
    let coeffs = f.as_polynomial().ok_or(PotentialError::NotPolynomial)?;
    if coeffs.len() < 2 {
        return Err(PotentialError::ConstantMap);
    }
    let scale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
    if f.eval(sol.domain().center())?.norm() > 1e-9 * scale {
        return Err(PotentialError::CenterNotZero);
    }
    let log_f_mean = log_abs_boundary_integral(sol, f)?;
    let constant = || -> Result<f64, PotentialError> {
        Ok(divisor_term(sol, f)? + jet_cap_norm(&center_jet(sol, f)?, sol))
    };
    let at = || -> Result<(Complex64, f64), PotentialError> {
        let x = x.ok_or(PotentialError::MissingPoint)?;
        let fx = f.eval(x)?;
        if fx.norm() <= 1e-12 * scale {
            return Err(PotentialError::SampleAtZero);
        }
        Ok((fx, pushforward_green(sol, f, fx)?))
    };
    match which {
        Identity::Jensen => Ok((log_f_mean - constant()?).abs()),
        Identity::Pushforward => {
            let (fx, push) = at()?;
            let rhs = reciprocal_energy(sol, f, fx, log_f_mean)? + log_f_mean;
            Ok((push - rhs).abs())
        }
        Identity::Combined => {
            let (fx, push) = at()?;
            let rhs = reciprocal_energy(sol, f, fx, log_f_mean)?;
            Ok((push - constant()? - rhs).abs())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalCheck {
    /// Largest identity residual over the exterior sample points.
    pub max_residual: f64,
    /// Log-capacity of the disk, `-(log jet norm)` of the chart coordinate.
    pub v_infinity: f64,
    pub samples: usize,
}

/// Exterior Green's function of the closed disk of `hole_radius`, checked
/// through the chart `w = 1/z` in which the complement becomes the disk of
/// radius `1/hole_radius` marked at `w = 0` and `φ = w`.
pub fn classical_inverse_check(
    hole_radius: f64,
    samples: usize,
    resolution: usize,
) -> Result<ClassicalCheck, PotentialError> {
    if !(hole_radius > 0.0) {
        return Err(PotentialError::InvalidDomain(
            "hole radius must be positive".into(),
        ));
    }
    let chart = DomainSpec::disk(Complex64::default(), 1.0 / hole_radius)?;
    let sol = solve_green(&chart, resolution)?;
    let phi = AnalyticMap::identity();
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    let mut worst = 0.0f64;
    for j in 0..samples {
        let r = hole_radius * (1.1 + 2.9 * (j as f64 * golden).fract());
        let z = Complex64::from_polar(r, TAU * (j as f64 + 0.5) / samples as f64);
        worst = worst.max(identity_residual(
            &sol,
            &phi,
            Identity::Combined,
            Some(z.inv()),
        )?);
    }
    let v_infinity = -jet_cap_norm(&center_jet(&sol, &phi)?, &sol);
    Ok(ClassicalCheck {
        max_residual: worst,
        v_infinity,
        samples,
    })
}

/// `|f(z̄) - conj(f(z))|` at `samples` points of each boundary curve.
pub fn symmetry_deviations(
    f: &AnalyticMap,
    domain: &DomainSpec,
    samples: usize,
) -> Result<Vec<(Complex64, f64)>, PotentialError> {
    if !domain.is_conjugation_symmetric(1e-9) {
        return Err(PotentialError::AsymmetricDomain);
    }
    let mut out = Vec::new();
    for curve in domain.curves() {
        for z in curve.samples(samples.max(1)) {
            out.push((z, (f.eval(z.conj())? - f.eval(z)?.conj()).norm()));
        }
    }
    Ok(out)
}

/// Largest deviation of `f` from commuting with conjugation on the boundary.
pub fn symmetry_check(
    f: &AnalyticMap,
    domain: &DomainSpec,
    samples: usize,
) -> Result<f64, PotentialError> {
    Ok(symmetry_deviations(f, domain, samples)?
        .into_iter()
        .map(|(_, d)| d)
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArakelovDegree {
    pub degree: f64,
    pub pseudoconvex: bool,
}

/// `log|c_1| + robin_c` for a gluing map with simple vanishing at `O`.
pub fn arakelov_degree(
    sol: &GreenSolution,
    gluing_jet: &JetData,
) -> Result<ArakelovDegree, PotentialError> {
    if gluing_jet.vanishing_order != 1 {
        return Err(PotentialError::WrongVanishingOrder(
            gluing_jet.vanishing_order,
        ));
    }
    let degree = jet_cap_norm(gluing_jet, sol);
    Ok(ArakelovDegree {
        degree,
        pseudoconvex: degree < 0.0,
    })
}

/// `|log‖(f∘φ)^{[e]}(O)‖ - e·deg|` where `e` is the order of `f` at 0.
pub fn degree_consistency(
    sol: &GreenSolution,
    f: &AnalyticMap,
    phi: &AnalyticMap,
) -> Result<f64, PotentialError> {
    let tol = sol.config().vanishing_tolerance;
    let deg = arakelov_degree(sol, &taylor_jet(phi, sol.domain(), 8, tol)?)?;
    let order = f.as_polynomial().map_or(16, |c| c.len().max(2) - 1);
    let composed = AnalyticMap::compose(f, phi);
    let jet = taylor_jet(&composed, sol.domain(), order.max(8), tol)?;
    Ok((jet_cap_norm(&jet, sol) - jet.vanishing_order as f64 * deg.degree).abs())
}
