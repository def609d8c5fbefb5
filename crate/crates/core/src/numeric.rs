//! Floating-point helpers: complex polynomial roots and Gauss–Legendre rules.

use num_complex::Complex64;

/// Horner evaluation; `coeffs[i]` multiplies `z^i`.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Value and derivative in one pass.
pub fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    coeffs
        .iter()
        .rev()
        .fold((zero, zero), |(p, dp), &c| (p * z + c, dp * z + p))
}

/// All roots of a polynomial with nonzero leading coefficient, with
/// multiplicity, by Aberth–Ehrlich simultaneous iteration.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut cs = coeffs.to_vec();
    while cs.last().is_some_and(|c| *c == zero) {
        cs.pop();
    }
    let mut roots = Vec::new();
    let lead_zeros = cs.iter().take_while(|c| **c == zero).count();
    roots.extend(std::iter::repeat_n(
        zero,
        lead_zeros.min(cs.len().saturating_sub(1)),
    ));
    let cs: Vec<Complex64> = cs.into_iter().skip(lead_zeros).collect();
    let n = cs.len().saturating_sub(1);
    if n == 0 {
        return roots;
    }
    let rho = (cs[0] / cs[n]).norm().powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(rho, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner_with_derivative(&cs, z[k]);
            if p == zero {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    roots.extend(z);
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn roots_of_quadratics() {
        let r = poly_roots(&[c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(r.len(), 2);
        assert!((r[0] - c(0.0, -2f64.sqrt())).norm() < 1e-12);
        assert!((r[1] - c(0.0, 2f64.sqrt())).norm() < 1e-12);
        let r = poly_roots(&[c(0.25, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]);
        assert!(r.iter().all(|z| (z - c(0.5, 0.0)).norm() < 1e-7));
    }

    #[test]
    fn roots_of_unity() {
        let mut cs = vec![c(0.0, 0.0); 8];
        cs[0] = c(-1.0, 0.0);
        cs.push(c(1.0, 0.0));
        let r = poly_roots(&cs);
        assert_eq!(r.len(), 8);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.powu(8) - c(1.0, 0.0)).norm() < 1e-11);
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        let x18: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((x18 - 2.0 / 19.0).abs() < 1e-14);
        let (x, w) = gauss_legendre(1);
        assert_eq!((x[0], w[0]), (0.0, 2.0));
    }
}
