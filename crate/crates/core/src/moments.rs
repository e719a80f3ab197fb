//! Bi-moment tables g_{km} and their parametrizations.
//!
//! Sources: the Gaussian closed form (exact, with pi carried as a symbolic
//! unit), axially symmetric potentials via radial quadrature, general
//! potentials via polar 2-D quadrature, caller-supplied tables taken as
//! ground truth, and the discrete sums of the lattice models. The diagonal
//! xi-parametrization stores the multiplicative ratios a_m = g_mm / g_00 so
//! exact fields stay exact.

use crate::quad::{integrate_0_inf, integrate_angle, QuadratureSpec};
use crate::scalar::{factorial, Scalar};
use crate::schur::CouplingVector;
use crate::series::Series2;
use crate::{Error, Result};
use num::complex::Complex64;

/// A (K+1) x (K+1) table of bi-moments. When `pi` is set, every entry
/// carries an implicit factor of pi (one per moment); determinant ratios
/// then stay exactly rational.
#[derive(Clone, PartialEq, Debug)]
pub struct MomentTable<T> {
    entries: Vec<Vec<T>>,
    diagonal: bool,
    pi: bool,
}

impl<T: Scalar> MomentTable<T> {
    pub fn from_entries(entries: Vec<Vec<T>>, pi: bool) -> Self {
        let k = entries.len();
        assert!(k > 0 && entries.iter().all(|r| r.len() == k), "table must be square");
        let diagonal = entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, v)| i == j || v.is_zero()));
        MomentTable { entries, diagonal, pi }
    }

    pub fn from_diagonal(diag: Vec<T>, pi: bool) -> Self {
        let k = diag.len();
        let mut entries = vec![vec![T::zero(); k]; k];
        for (i, v) in diag.into_iter().enumerate() {
            entries[i][i] = v;
        }
        MomentTable { entries, diagonal: true, pi }
    }

    /// Largest index covered.
    pub fn k_max(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn has_pi_factor(&self) -> bool {
        self.pi
    }

    pub fn get(&self, k: usize, m: usize) -> Result<T> {
        let size = self.k_max();
        if k > size || m > size {
            return Err(Error::TableTooSmall { need: k.max(m), size });
        }
        Ok(self.entries[k][m].clone())
    }

    pub fn entries(&self) -> &[Vec<T>] {
        &self.entries
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "K": self.k_max(),
            "diagonal": self.diagonal,
            "pi_factor": self.pi,
            "entries": self.entries.iter()
                .map(|row| row.iter().map(|v| v.to_json()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Diagonal xi-parametrization, stored multiplicatively: a_m = g_mm / g_00
/// plays the role of e^{xi_m - xi_0}, with a_0 = 1.
#[derive(Clone, PartialEq, Debug)]
pub struct XiSequence<T> {
    a: Vec<T>,
}

impl<T: Scalar> XiSequence<T> {
    pub fn from_ratios(a: Vec<T>) -> Self {
        assert!(!a.is_empty() && a[0] == T::one(), "a_0 must be 1");
        XiSequence { a }
    }

    /// a_m = prod_{k=1..m} r(k), the ladder defined by r(k) = e^{xi_k - xi_{k-1}}.
    pub fn from_r(r: impl Fn(i64) -> T, len: usize) -> Self {
        let mut a = Vec::with_capacity(len + 1);
        a.push(T::one());
        for k in 1..=len {
            let prev = a[k - 1].clone();
            a.push(prev * r(k as i64));
        }
        XiSequence { a }
    }

    /// The Gaussian ladder a_m = m!.
    pub fn gaussian(len: usize) -> Self {
        XiSequence { a: (0..=len as u32).map(|m| factorial::<T>(m)).collect() }
    }

    pub fn len(&self) -> usize {
        self.a.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// a_m, defined up to the stored length.
    pub fn a(&self, m: usize) -> Result<T> {
        self.a
            .get(m)
            .cloned()
            .ok_or(Error::TableTooSmall { need: m, size: self.a.len() - 1 })
    }

    /// a_k / a_{k-1}, the r-ladder back out of the ratios.
    pub fn r(&self, k: usize) -> Result<T> {
        Ok(self.a(k)? / self.a(k - 1)?)
    }
}

/// Gaussian interaction: g_mm = pi * m!, held exactly with the pi unit.
pub fn gaussian_moments<T: Scalar>(k_max: usize) -> MomentTable<T> {
    MomentTable::from_diagonal((0..=k_max as u32).map(|m| factorial::<T>(m)).collect(), true)
}

/// Diagonal moments of an axially symmetric potential:
/// g_mm = pi * int_0^inf x^m e^{V_axi(x)} dx, by adaptive quadrature.
/// The numeric pi is folded into the entries.
pub fn axial_moments(
    v_axi: impl Fn(f64) -> f64,
    k_max: usize,
    spec: &QuadratureSpec,
) -> Result<MomentTable<f64>> {
    let mut diag = Vec::with_capacity(k_max + 1);
    for m in 0..=k_max {
        let val = integrate_0_inf(&mut |x| x.powi(m as i32) * v_axi(x).exp(), spec)?;
        diag.push(std::f64::consts::PI * val);
    }
    Ok(MomentTable::from_diagonal(diag, false))
}

/// General bi-moments g_{km} = int z^k conj(z)^m e^{V(z)} d^2 z in polar
/// coordinates: angular trapezoid inside, adaptive radial outside.
pub fn general_moments(
    v: impl Fn(Complex64) -> f64,
    k_max: usize,
    spec: &QuadratureSpec,
) -> Result<MomentTable<Complex64>> {
    let mut entries = vec![vec![Complex64::new(0.0, 0.0); k_max + 1]; k_max + 1];
    for k in 0..=k_max {
        for m in 0..=k_max {
            let freq = k as i32 - m as i32;
            let power = (k + m + 1) as i32;
            let mut radial_part = |trig: fn(f64) -> f64| {
                integrate_0_inf(
                    &mut |r| {
                        if r == 0.0 {
                            return 0.0;
                        }
                        let mut ang = |theta: f64| {
                            let z = Complex64::from_polar(r, theta);
                            trig(freq as f64 * theta) * v(z).exp()
                        };
                        r.powi(power) * integrate_angle(&mut ang, spec).unwrap_or(f64::NAN)
                    },
                    spec,
                )
            };
            let re = radial_part(f64::cos)?;
            let im = radial_part(f64::sin)?;
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::NonConvergence(format!("moment ({k},{m}) not finite")));
            }
            entries[k][m] = Complex64::new(re, im);
        }
    }
    Ok(MomentTable::from_entries(entries, false))
}

/// Extract the diagonal ratios a_m = g_mm / g_00 from a diagonal table.
pub fn xi_from_diagonal<T: Scalar>(g: &MomentTable<T>) -> Result<XiSequence<T>> {
    if !g.is_diagonal() {
        return Err(Error::InvalidConfig("xi parametrization needs a diagonal table".into()));
    }
    let g00 = g.get(0, 0)?;
    if g00.is_zero() {
        return Err(Error::ZeroDiagonal(0));
    }
    let a = (0..=g.k_max())
        .map(|m| Ok(g.get(m, m)? / g00.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(XiSequence { a })
}

/// Rebuild the (normalized, g_00 = 1) diagonal table from the ratios.
pub fn diagonal_from_xi<T: Scalar>(xi: &XiSequence<T>) -> MomentTable<T> {
    MomentTable::from_diagonal(xi.a.clone(), false)
}

/// Scalars that support a numeric exponential: the carriers of the concrete
/// (non-graded) moment deformation.
pub trait FloatScalar: Scalar {
    fn exp(&self) -> Self;
}

impl FloatScalar for f64 {
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
}

impl FloatScalar for Complex64 {
    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }
}

/// Deform the moments by the coupling flows:
/// g_{km} -> e^{xi(t~, q1^k) + xi(t~', q2^m)} g_{km}.
pub fn deform_moments<T: FloatScalar>(
    g: &MomentTable<T>,
    t_t: &CouplingVector<T>,
    t_tp: &CouplingVector<T>,
    q1: &T,
    q2: &T,
) -> MomentTable<T> {
    let k_max = g.k_max();
    let mut entries = vec![vec![T::zero(); k_max + 1]; k_max + 1];
    for k in 0..=k_max {
        for m in 0..=k_max {
            let w = t_t.xi_at(&q1.powi(k as i64)) + t_tp.xi_at(&q2.powi(m as i64));
            entries[k][m] = w.exp() * g.get(k, m).unwrap();
        }
    }
    MomentTable::from_entries(entries, g.has_pi_factor())
}

/// Graded version of [`deform_moments`] restricted to (t~_1, t~'_1): each
/// entry becomes a bivariate series exp(t~_1 q1^k + t~'_1 q2^m) g_{km}.
pub fn deform_moments_graded<T: Scalar>(
    g: &MomentTable<T>,
    q1: &T,
    q2: &T,
    deg: usize,
) -> Vec<Vec<Series2<T>>> {
    let k_max = g.k_max();
    (0..=k_max)
        .map(|k| {
            (0..=k_max)
                .map(|m| {
                    let mut arg = Series2::zero(deg);
                    arg.set_coeff(1, 0, q1.powi(k as i64));
                    arg.set_coeff(0, 1, q2.powi(m as i64));
                    arg.exp().scale(&g.get(k, m).unwrap())
                })
                .collect()
        })
        .collect()
}

/// Discrete bi-moments from a pair-weight table:
/// g~_{km} = sum_{h, h' = 0..H} q1^{k h} q2^{m h'} w(h, h'), the single-pair
/// sum with the normalization constant fixed to 1.
///
/// Returns the table together with a convergence flag: the flag is false
/// when growing the cutoff from H-1 to H still moves some entry by more than
/// `tail_tol` relative.
pub fn discrete_moments<T: Scalar>(
    pair: &MomentTable<T>,
    q1: &T,
    q2: &T,
    k_max: usize,
    h_cut: usize,
    tail_tol: f64,
) -> (MomentTable<T>, bool) {
    let sum_to = |hmax: usize| -> Vec<Vec<T>> {
        let top = hmax.min(pair.k_max());
        let mut out = vec![vec![T::zero(); k_max + 1]; k_max + 1];
        for (k, row) in out.iter_mut().enumerate() {
            for (m, slot) in row.iter_mut().enumerate() {
                let mut acc = T::zero();
                for h in 0..=top {
                    for hp in 0..=top {
                        let w = pair.get(h, hp).unwrap();
                        if w.is_zero() {
                            continue;
                        }
                        acc = acc + q1.powi((k * h) as i64) * q2.powi((m * hp) as i64) * w;
                    }
                }
                *slot = acc;
            }
        }
        out
    };
    let full = sum_to(h_cut);
    let mut converged = true;
    if h_cut > 0 && h_cut <= pair.k_max() {
        let prev = sum_to(h_cut - 1);
        'outer: for k in 0..=k_max {
            for m in 0..=k_max {
                let delta = (full[k][m].clone() - prev[k][m].clone()).abs_norm();
                if delta > tail_tol * (full[k][m].abs_norm() + 1.0) {
                    converged = false;
                    break 'outer;
                }
            }
        }
    }
    (MomentTable::from_entries(full, false), converged)
}
