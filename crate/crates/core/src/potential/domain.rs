use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::PotentialError;

const SAMPLES: usize = 512;

/// Closed curve `t ↦ Σ_{k=-n}^{n} c_k e^{ikt}`, oriented counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    /// `coeffs[k + n]` multiplies `e^{ikt}`.
    coeffs: Vec<Complex64>,
}

impl Curve {
    /// From two-sided Fourier coefficients, index `k + n` for `k ∈ [-n, n]`.
    /// The orientation is flipped if needed so the curve runs counterclockwise.
    pub fn from_fourier(coeffs: Vec<Complex64>) -> Result<Self, PotentialError> {
        if coeffs.len().is_multiple_of(2) || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(PotentialError::InvalidDomain(
                "curve needs an odd number of finite Fourier coefficients".into(),
            ));
        }
        let mut c = Curve { coeffs };
        let area = c.signed_area();
        if area.abs() < 1e-300 {
            return Err(PotentialError::InvalidDomain("degenerate curve".into()));
        }
        if area < 0.0 {
            c.coeffs.reverse();
        }
        Ok(c)
    }

    /// `t ↦ Σ_k (a_k cos kt + b_k sin kt)`; `b_0` is ignored.
    pub fn from_trig(a: &[Complex64], b: &[Complex64]) -> Result<Self, PotentialError> {
        let n = a.len().max(b.len()).max(1) - 1;
        let i = Complex64::new(0.0, 1.0);
        let get = |v: &[Complex64], k: usize| v.get(k).copied().unwrap_or_default();
        let mut coeffs = vec![Complex64::default(); 2 * n + 1];
        coeffs[n] = get(a, 0);
        for k in 1..=n {
            coeffs[n + k] = (get(a, k) - i * get(b, k)) / 2.0;
            coeffs[n - k] = (get(a, k) + i * get(b, k)) / 2.0;
        }
        Self::from_fourier(coeffs)
    }

    pub fn circle(origin: Complex64, radius: f64) -> Result<Self, PotentialError> {
        if !(radius > 0.0) {
            return Err(PotentialError::InvalidDomain(
                "radius must be positive".into(),
            ));
        }
        Self::from_fourier(vec![
            Complex64::default(),
            origin,
            Complex64::new(radius, 0.0),
        ])
    }

    /// Semi-axes `a` (along `angle`) and `b`.
    pub fn ellipse(origin: Complex64, a: f64, b: f64, angle: f64) -> Result<Self, PotentialError> {
        if !(a > 0.0 && b > 0.0) {
            return Err(PotentialError::InvalidDomain(
                "semi-axes must be positive".into(),
            ));
        }
        let rot = Complex64::from_polar(1.0, angle);
        Self::from_fourier(vec![rot * (a - b) / 2.0, origin, rot * (a + b) / 2.0])
    }

    /// Image of the unit circle under `ψ(w) = Σ d_j w^j`.
    pub fn conformal_image(d: &[Complex64]) -> Result<Self, PotentialError> {
        let n = d.len().max(2) - 1;
        let mut coeffs = vec![Complex64::default(); 2 * n + 1];
        for (j, c) in d.iter().enumerate() {
            coeffs[n + j] = *c;
        }
        Self::from_fourier(coeffs)
    }

    fn half(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn fourier(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `z(s)` for real or complex parameter `s`.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let n = self.half() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * (Complex64::new(0.0, (j as i64 - n) as f64) * s).exp())
            .sum()
    }

    pub fn deriv(&self, s: Complex64) -> Complex64 {
        let n = self.half() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let k = Complex64::new(0.0, (j as i64 - n) as f64);
                c * k * (k * s).exp()
            })
            .sum()
    }

    pub fn deriv2(&self, s: Complex64) -> Complex64 {
        let n = self.half() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let k = Complex64::new(0.0, (j as i64 - n) as f64);
                c * k * k * (k * s).exp()
            })
            .sum()
    }

    pub fn at(&self, t: f64) -> Complex64 {
        self.eval(Complex64::new(t, 0.0))
    }

    pub fn tangent(&self, t: f64) -> Complex64 {
        self.deriv(Complex64::new(t, 0.0))
    }

    /// Enclosed area, `π Σ k |c_k|²`; positive for counterclockwise curves.
    pub fn signed_area(&self) -> f64 {
        let n = self.half() as i64;
        std::f64::consts::PI
            * self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (j as i64 - n) as f64 * c.norm_sqr())
                .sum::<f64>()
    }

    pub fn samples(&self, m: usize) -> Vec<Complex64> {
        (0..m).map(|j| self.at(TAU * j as f64 / m as f64)).collect()
    }

    /// Approximate diameter of the curve.
    pub fn scale(&self) -> f64 {
        let pts = self.samples(64);
        let c: Complex64 = pts.iter().sum::<Complex64>() / pts.len() as f64;
        2.0 * pts.iter().map(|z| (z - c).norm()).fold(0.0, f64::max)
    }

    /// Parameter of the point on the curve closest to `x`, and the distance.
    pub fn nearest(&self, x: Complex64) -> (f64, f64) {
        let (mut t, _) = (0..SAMPLES)
            .map(|j| {
                let t = TAU * j as f64 / SAMPLES as f64;
                (t, (self.at(t) - x).norm())
            })
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        for _ in 0..30 {
            let s = Complex64::new(t, 0.0);
            let (z, d1, d2) = (self.eval(s) - x, self.deriv(s), self.deriv2(s));
            let g = (z.conj() * d1).re;
            let h = d1.norm_sqr() + (z.conj() * d2).re;
            if h <= 0.0 {
                break;
            }
            let step = (g / h).clamp(-0.1, 0.1);
            t -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let t = t.rem_euclid(TAU);
        (t, (self.at(t) - x).norm())
    }

    /// Winding number of the curve around `x`.
    pub fn winding(&self, x: Complex64) -> i64 {
        let (t, d) = self.nearest(x);
        if d < 0.05 * self.scale() {
            // Side of the tangent at the nearest point.
            let outward = self.tangent(t) * Complex64::new(0.0, -1.0);
            return if ((x - self.at(t)) * outward.conj()).re < 0.0 {
                1
            } else {
                0
            };
        }
        let pts = self.samples(SAMPLES);
        let total: f64 = (0..SAMPLES)
            .map(|j| ((pts[(j + 1) % SAMPLES] - x) / (pts[j] - x)).arg())
            .sum();
        (total / TAU).round() as i64
    }

    /// The parameter `s ∈ ℂ` with `z(s) = x`, by Newton from the nearest
    /// real parameter; `None` if it does not converge.
    pub fn complex_parameter(&self, x: Complex64) -> Option<Complex64> {
        let (t, _) = self.nearest(x);
        let mut s = Complex64::new(t, 0.0);
        for _ in 0..60 {
            let d = self.deriv(s);
            if d.norm() == 0.0 {
                return None;
            }
            let step = (self.eval(s) - x) / d;
            let step = if step.norm() > 0.5 {
                step * (0.5 / step.norm())
            } else {
                step
            };
            s -= step;
            if step.norm() < 1e-15 * (1.0 + s.norm()) {
                return Some(Complex64::new(s.re.rem_euclid(TAU), s.im));
            }
        }
        ((self.eval(s) - x).norm() < 1e-12 * self.scale().max(1.0))
            .then(|| Complex64::new(s.re.rem_euclid(TAU), s.im))
    }
}

fn segments_cross(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let cross = |u: Complex64, v: Complex64| u.re * v.im - u.im * v.re;
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

fn polyline_self_intersects(pts: &[Complex64]) -> bool {
    let m = pts.len();
    for i in 0..m {
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            if segments_cross(pts[i], pts[(i + 1) % m], pts[j], pts[(j + 1) % m]) {
                return true;
            }
        }
    }
    false
}

fn polylines_cross(p: &[Complex64], q: &[Complex64]) -> bool {
    (0..p.len()).any(|i| {
        (0..q.len()).any(|j| segments_cross(p[i], p[(i + 1) % p.len()], q[j], q[(j + 1) % q.len()]))
    })
}

/// Compact planar region bounded by an outer curve and optional hole
/// curves, with a marked interior point `O`.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    curves: Vec<Curve>,
    center: Complex64,
}

impl DomainSpec {
    /// The first curve is the outer boundary; the rest bound holes.
    pub fn new(curves: Vec<Curve>, center: Complex64) -> Result<Self, PotentialError> {
        if curves.is_empty() {
            return Err(PotentialError::InvalidDomain("no boundary curve".into()));
        }
        let polys: Vec<Vec<Complex64>> = curves.iter().map(|c| c.samples(256)).collect();
        for p in &polys {
            if polyline_self_intersects(p) {
                return Err(PotentialError::InvalidDomain("curve is not simple".into()));
            }
        }
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                if polylines_cross(&polys[i], &polys[j]) {
                    return Err(PotentialError::InvalidDomain("curves intersect".into()));
                }
            }
        }
        for (h, hole) in curves.iter().enumerate().skip(1) {
            if curves[0].winding(hole.at(0.0)) != 1 {
                return Err(PotentialError::InvalidDomain(format!(
                    "hole {h} is not inside the outer curve"
                )));
            }
            for (o, other) in curves.iter().enumerate().skip(1) {
                if o != h && other.winding(hole.at(0.0)) != 0 {
                    return Err(PotentialError::InvalidDomain("nested holes".into()));
                }
            }
        }
        let d = DomainSpec { curves, center };
        let scale = d.curves[0].scale();
        if d.boundary_distance(center) < 1e-9 * scale {
            return Err(PotentialError::CenterOnBoundary);
        }
        if !d.contains(center) {
            return Err(PotentialError::InvalidDomain(
                "center lies outside the domain".into(),
            ));
        }
        Ok(d)
    }

    pub fn disk(center: Complex64, radius: f64) -> Result<Self, PotentialError> {
        Self::new(vec![Curve::circle(center, radius)?], center)
    }

    /// Disk of `radius` about `origin` with marked point `center`.
    pub fn disk_with_center(
        origin: Complex64,
        radius: f64,
        center: Complex64,
    ) -> Result<Self, PotentialError> {
        Self::new(vec![Curve::circle(origin, radius)?], center)
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    /// Orientation sign: `+1` for the outer curve, `-1` for holes.
    pub fn sign(&self, curve: usize) -> f64 {
        if curve == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn boundary_distance(&self, x: Complex64) -> f64 {
        self.curves
            .iter()
            .map(|c| c.nearest(x).1)
            .fold(f64::INFINITY, f64::min)
    }

    /// Membership in the interior `V°`.
    pub fn contains(&self, x: Complex64) -> bool {
        self.curves[0].winding(x) == 1 && self.curves[1..].iter().all(|c| c.winding(x) == 0)
    }

    /// True when the region is mapped to itself by complex conjugation and
    /// `O` is real.
    pub fn is_conjugation_symmetric(&self, tol: f64) -> bool {
        let scale = self.curves[0].scale().max(1.0);
        if self.center.im.abs() > tol * scale {
            return false;
        }
        let probes = 64;
        (0..self.curves.len()).all(|i| {
            self.curves[i].samples(probes).into_iter().all(|z| {
                self.curves
                    .iter()
                    .any(|c| c.nearest(z.conj()).1 < tol * scale)
            })
        })
    }

    /// Parses `{type, params, center, holes?}`.
    pub fn from_json(text: &str) -> Result<Self, PotentialError> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| PotentialError::InvalidDomain(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self, PotentialError> {
        let raw: DomainJson = serde_json::from_value(v.clone())
            .map_err(|e| PotentialError::InvalidDomain(e.to_string()))?;
        let (outer, default_center) = shape(&raw.shape)?;
        let mut curves = vec![outer];
        for h in &raw.holes {
            curves.push(shape(h)?.0);
        }
        let center = raw.center.map(pair).unwrap_or(default_center);
        Self::new(curves, center)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShapeJson {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub params: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DomainJson {
    #[serde(flatten)]
    shape: ShapeJson,
    center: Option<[f64; 2]>,
    #[serde(default)]
    holes: Vec<ShapeJson>,
}

fn pair(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn param_f64(params: &Value, key: &str) -> Result<f64, PotentialError> {
    params
        .get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| PotentialError::InvalidDomain(format!("missing numeric parameter '{key}'")))
}

fn param_point(params: &Value, key: &str) -> Result<Complex64, PotentialError> {
    match params.get(key) {
        None => Ok(Complex64::default()),
        Some(v) => serde_json::from_value::<[f64; 2]>(v.clone())
            .map(pair)
            .map_err(|e| PotentialError::InvalidDomain(format!("parameter '{key}': {e}"))),
    }
}

fn param_complex_list(params: &Value, key: &str) -> Result<Vec<Complex64>, PotentialError> {
    match params.get(key) {
        None => Ok(Vec::new()),
        Some(v) => serde_json::from_value::<Vec<[f64; 2]>>(v.clone())
            .map(|l| l.into_iter().map(pair).collect())
            .map_err(|e| PotentialError::InvalidDomain(format!("parameter '{key}': {e}"))),
    }
}

/// A curve and its natural marked point.
fn shape(s: &ShapeJson) -> Result<(Curve, Complex64), PotentialError> {
    let p = &s.params;
    match s.kind.as_str() {
        "circle" => {
            let origin = param_point(p, "origin")?;
            Ok((Curve::circle(origin, param_f64(p, "radius")?)?, origin))
        }
        "ellipse" => {
            let origin = param_point(p, "origin")?;
            let angle = p.get("angle").and_then(Value::as_f64).unwrap_or(0.0);
            let c = Curve::ellipse(origin, param_f64(p, "a")?, param_f64(p, "b")?, angle)?;
            Ok((c, origin))
        }
        "trigpoly" => {
            let a = param_complex_list(p, "a")?;
            let b = param_complex_list(p, "b")?;
            Ok((
                Curve::from_trig(&a, &b)?,
                a.first().copied().unwrap_or_default(),
            ))
        }
        "conformal_poly_image" => {
            let d = param_complex_list(p, "coeffs")?;
            Ok((
                Curve::conformal_image(&d)?,
                d.first().copied().unwrap_or_default(),
            ))
        }
        other => Err(PotentialError::InvalidDomain(format!(
            "unknown domain type '{other}'"
        ))),
    }
}
