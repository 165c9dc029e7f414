//! Polynomial root location: Aberth–Ehrlich simultaneous iteration on the
//! exact squarefree factors.
//!
//! The exact layer (Yun decomposition over ℚ) splits off multiplicities, so
//! the numeric iteration only ever sees simple roots and converges at full
//! double precision; each root is then emitted with its multiplicity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Ring;

/// A located root with its scaled residual |p(root)| / |lead(p)|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
}

impl ComplexApprox {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

const MAX_ITERATIONS: u32 = 400;

/// All deg(p) roots of an exact polynomial, with multiplicities reported by
/// repetition. Residuals are checked against tol·max(1, |root|)^deg; roots
/// within √tol of each other are clustered to their centroid.
pub fn find_roots(p: &Poly, tol: f64) -> Result<Vec<ComplexApprox>> {
    if p.degree() < 1 {
        return Err(Error::InvalidArgument("root finding needs degree >= 1".into()));
    }
    let (zeros_at_origin, stripped) = p.strip_power_of_x();
    let mut roots: Vec<(Complex64, usize)> =
        vec![(Complex64::new(0.0, 0.0), 1); zeros_at_origin];
    if stripped.degree() >= 1 {
        for (factor, multiplicity) in yun_squarefree(&stripped) {
            if factor.degree() < 1 {
                continue;
            }
            let coeffs = to_f64_monic(&factor);
            for z in aberth(&coeffs)? {
                roots.push((z, multiplicity));
            }
        }
    }
    // Cluster within sqrt(tol) and replace members by the cluster centroid.
    let cluster_radius = tol.max(f64::EPSILON).sqrt();
    let flat: Vec<Complex64> = roots
        .iter()
        .flat_map(|&(z, m)| std::iter::repeat(z).take(m))
        .collect();
    let clustered = cluster(&flat, cluster_radius);

    // Residuals against the original polynomial.
    let p_f64: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64()).collect();
    let lead = *p_f64.last().expect("nonzero degree");
    let deg = p.degree() as i32;
    let mut out = Vec::with_capacity(clustered.len());
    for z in clustered {
        let value = eval_complex(&p_f64, z);
        let residual = value.norm() / lead.abs();
        let bound = tol * z.norm().max(1.0).powi(deg);
        if !residual.is_finite() || residual >= bound.max(tol) {
            return Err(Error::RootFindingFailed(MAX_ITERATIONS));
        }
        out.push(ComplexApprox { re: z.re, im: z.im, residual });
    }
    out.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(out)
}

/// Yun's squarefree decomposition over ℚ: returns pairwise-coprime monic
/// factors with their multiplicities, product (up to the leading unit) the
/// input.
pub fn yun_squarefree(p: &Poly) -> Vec<(Poly, usize)> {
    let p = p.monic().to_ring(Ring::Q).expect("promotion");
    let dp = p.derivative();
    let g = p.gcd(&dp);
    if g.degree() <= 0 {
        return vec![(p, 1)];
    }
    let mut factors = Vec::new();
    let mut w = p.div_exact(&g).expect("gcd divides");
    let mut y = dp.div_exact(&g).expect("gcd divides");
    let mut i = 1usize;
    while w.degree() > 0 {
        let z = &y - &w.derivative();
        let gi = w.gcd(&z);
        if gi.degree() > 0 {
            factors.push((gi.clone(), i));
        }
        if gi.degree() > 0 {
            w = w.div_exact(&gi).expect("gcd divides");
            y = z.div_exact(&gi).expect("gcd divides");
        } else {
            w = w.clone();
            y = z;
        }
        i += 1;
    }
    factors
}

fn to_f64_monic(p: &Poly) -> Vec<f64> {
    let monic = p.monic();
    monic.coeffs().iter().map(|c| c.to_f64()).collect()
}

fn eval_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        deriv = deriv * z + acc;
        acc = acc * z + c;
    }
    (acc, deriv)
}

/// Aberth–Ehrlich iteration on a monic squarefree polynomial given by f64
/// coefficients (lowest degree first, last = 1).
fn aberth(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 1 {
        return Ok(vec![Complex64::new(-coeffs[0], 0.0)]);
    }
    // Cauchy bound on root moduli for a monic polynomial.
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            0.9 * radius * Complex64::new(angle.cos(), angle.sin())
        })
        .collect();
    let eps = 1e-14;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (value, deriv) = eval_with_derivative(coeffs, z[i]);
            if value.norm() == 0.0 {
                continue;
            }
            let newton = if deriv.norm() == 0.0 {
                // Derivative vanished (saddle); nudge off it.
                Complex64::new(1e-8, 1e-8)
            } else {
                value / deriv
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            z[i] -= step;
            let scale = 1.0 + z[i].norm();
            max_step = max_step.max(step.norm() / scale);
        }
        if max_step < eps {
            // A few Newton polishing passes sharpen the last bits.
            for zi in z.iter_mut() {
                for _ in 0..3 {
                    let (value, deriv) = eval_with_derivative(coeffs, *zi);
                    if deriv.norm() == 0.0 {
                        break;
                    }
                    let step = value / deriv;
                    if !step.re.is_finite() || !step.im.is_finite() {
                        break;
                    }
                    *zi -= step;
                }
            }
            return Ok(z);
        }
    }
    Err(Error::RootFindingFailed(MAX_ITERATIONS))
}

/// Greedy clustering: points within `radius` of a cluster seed are replaced
/// by the cluster centroid.
fn cluster(points: &[Complex64], radius: f64) -> Vec<Complex64> {
    let mut assigned = vec![false; points.len()];
    let mut out = Vec::with_capacity(points.len());
    for i in 0..points.len() {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        assigned[i] = true;
        for j in i + 1..points.len() {
            if !assigned[j] && (points[i] - points[j]).norm() < radius {
                members.push(j);
                assigned[j] = true;
            }
        }
        let centroid = members.iter().map(|&k| points[k]).sum::<Complex64>()
            / Complex64::new(members.len() as f64, 0.0);
        for _ in 0..members.len() {
            out.push(centroid);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_with_critical_roots() {
        // z^2 - z + 1: roots (1 ± i√3)/2.
        let p = Poly::from_ints(&[1, -1, 1]);
        let roots = find_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!((r.re - 0.5).abs() < 1e-12);
            assert!((r.im.abs() - 0.75f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_root_is_exact() {
        // 2z - 1 -> 0.5
        let p = Poly::from_ints(&[-1, 2]);
        let roots = find_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].re, 0.5);
        assert_eq!(roots[0].im, 0.0);
    }

    #[test]
    fn triple_root_clusters() {
        // (z-1)^3
        let p = &(&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-1, 1])) * &Poly::from_ints(&[-1, 1]);
        let roots = find_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!((r.re - 1.0).abs() < 1e-10, "triple root off: {:?}", r);
            assert!(r.im.abs() < 1e-10);
        }
        // All three collapsed to the same centroid.
        assert_eq!(roots[0].re, roots[1].re);
        assert_eq!(roots[1].re, roots[2].re);
    }

    #[test]
    fn zeros_at_origin_are_exact() {
        // z^2 (z - 3)
        let p = Poly::from_ints(&[0, 0, -3, 1]);
        let roots = find_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0].re, 0.0);
        assert_eq!(roots[1].re, 0.0);
        assert!((roots[2].re - 3.0).abs() < 1e-10);
    }

    #[test]
    fn high_degree_roots_of_unity() {
        // z^12 - 1: all roots on the unit circle.
        let mut coeffs = vec![0i64; 13];
        coeffs[0] = -1;
        coeffs[12] = 1;
        let p = Poly::from_ints(&coeffs);
        let roots = find_roots(&p, 1e-9).unwrap();
        assert_eq!(roots.len(), 12);
        for r in &roots {
            assert!((r.modulus() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(find_roots(&Poly::from_ints(&[5]), 1e-9).is_err());
    }

    #[test]
    fn yun_decomposition() {
        // (z-1)^2 (z+2)^3 (z^2+1)
        let f1 = Poly::from_ints(&[-1, 1]);
        let f2 = Poly::from_ints(&[2, 1]);
        let f3 = Poly::from_ints(&[1, 0, 1]);
        let p = &(&(&f1 * &f1) * &(&(&f2 * &f2) * &f2)) * &f3;
        let factors = yun_squarefree(&p);
        assert_eq!(factors.len(), 3);
        assert_eq!(factors[0], (f3.monic(), 1));
        assert_eq!(factors[1], (f1.monic(), 2));
        assert_eq!(factors[2], (f2.monic(), 3));
    }
}
