//! Adaptive quadrature used by the moment constructors: Gauss-Kronrod
//! (G7, K15) with bisection on finite intervals, an exponential substitution
//! for the tail of [0, inf), and trapezoid doubling for periodic angular
//! integrals.

use crate::{Error, Result};

/// Tolerances for the quadrature-backed moment constructors.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { rel_tol: 1e-10, abs_tol: 1e-14, max_depth: 40 }
    }
}

// Kronrod-15 abscissae on [0, 1] side (symmetric) and weights, with the
// embedded Gauss-7 weights on the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One G7/K15 panel: returns (kronrod, |kronrod - gauss|).
fn gk15(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (fp, fm) = if x == 0.0 {
            let v = f(c);
            (v, 0.0)
        } else {
            (f(c + h * x), f(c - h * x))
        };
        let s = fp + fm;
        kron += wk * s;
        // the Gauss-7 nodes sit at the odd Kronrod indices (center included)
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * h, (kron - gauss).abs() * h)
}

/// Adaptive integration on a finite interval.
pub fn integrate(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    fn rec(
        f: &mut dyn FnMut(f64) -> f64,
        a: f64,
        b: f64,
        spec: &QuadratureSpec,
        depth: u32,
        whole_scale: f64,
    ) -> Result<f64> {
        let (v, e) = gk15(f, a, b);
        if e <= spec.abs_tol + spec.rel_tol * whole_scale.max(v.abs()) {
            return Ok(v);
        }
        if depth >= spec.max_depth {
            return Err(Error::NonConvergence(format!(
                "Gauss-Kronrod failed on [{a}, {b}] (err {e:.3e})"
            )));
        }
        let c = 0.5 * (a + b);
        let left = rec(f, a, c, spec, depth + 1, whole_scale)?;
        let right = rec(f, c, b, spec, depth + 1, whole_scale)?;
        Ok(left + right)
    }
    let (whole, _) = gk15(f, a, b);
    rec(f, a, b, spec, 0, whole.abs())
}

/// Integration over [0, inf): a finite panel on [0, 1], then the exponential
/// substitution x = e^u on [1, inf), integrating unit u-segments until the
/// tail stops contributing. Diverging integrands fail the tail test.
pub fn integrate_0_inf(f: &mut dyn FnMut(f64) -> f64, spec: &QuadratureSpec) -> Result<f64> {
    let mut total = integrate(f, 0.0, 1.0, spec)?;
    let mut negligible_run = 0;
    for seg in 0..200 {
        let a = seg as f64;
        let b = a + 1.0;
        let mut g = |u: f64| {
            let x = u.exp();
            f(x) * x
        };
        let v = integrate(&mut g, a, b, spec)?;
        if !v.is_finite() {
            return Err(Error::NonConvergence("integrand not finite on the tail".into()));
        }
        total += v;
        if v.abs() <= spec.abs_tol + spec.rel_tol * total.abs() {
            negligible_run += 1;
            if negligible_run >= 2 {
                return Ok(total);
            }
        } else {
            negligible_run = 0;
        }
    }
    Err(Error::NonConvergence("tail of [0, inf) did not decay".into()))
}

/// Periodic integral over [0, 2 pi) by trapezoid sums with doubling; for
/// smooth periodic integrands this converges spectrally.
pub fn integrate_angle(f: &mut dyn FnMut(f64) -> f64, spec: &QuadratureSpec) -> Result<f64> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut n = 16usize;
    let eval = |f: &mut dyn FnMut(f64) -> f64, n: usize| -> f64 {
        let h = two_pi / n as f64;
        (0..n).map(|i| f(i as f64 * h)).sum::<f64>() * h
    };
    let mut prev = eval(f, n);
    while n <= 1 << 15 {
        n *= 2;
        let cur = eval(f, n);
        if (cur - prev).abs() <= spec.abs_tol + spec.rel_tol * cur.abs() {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergence("angular trapezoid did not settle".into()))
}
