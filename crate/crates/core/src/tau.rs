//! Tau-function series: the double Schur expansion with determinantal
//! coefficients, the diagonal hypergeometric family, the axial closed form,
//! evaluation, the Toda residual check, and the Frobenius re-summation.
//!
//! Normalization conventions, fixed once here and relied on everywhere:
//!
//! - [`z_expand`] stores c_{lambda lambda'} = n! det(g_{h_i h'_j}) built from
//!   the raw table entries; if the table carries the symbolic pi unit, the
//!   series records `pi_power = n` and the stored values are the rational
//!   parts (true coefficient = stored * pi^pi_power).
//! - [`tau_hyper`] and [`z_axial`] are vacuum-normalized: c at the empty
//!   pair is 1, and the n! (times, for the axial case, the vacuum moment
//!   determinant known only to the caller) is metadata in `prefactor`.

use crate::moments::{MomentTable, XiSequence};
use crate::partition::{content_product, enumerate, from_h, to_h, FrobeniusCoords, Partition};
use crate::scalar::{det_ring, factorial, q_poch_base, Scalar};
use crate::schur::{schur_jt, CouplingVector};
use crate::series::Series2;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// The single-variable function r defining a hypergeometric-type tau
/// function; `semi_infinite` asserts r(0) = 0 (checked), which truncates the
/// lattice to non-negative sites.
pub struct RFunction<T> {
    func: Box<dyn Fn(i64) -> T + Send + Sync>,
    pub semi_infinite: bool,
}

impl<T: Scalar> RFunction<T> {
    pub fn new(func: impl Fn(i64) -> T + Send + Sync + 'static, semi_infinite: bool) -> Self {
        let f = RFunction { func: Box::new(func), semi_infinite };
        if f.semi_infinite {
            assert!(f.at(0).is_zero(), "semi-infinite r requires r(0) = 0");
        }
        f
    }

    pub fn at(&self, k: i64) -> T {
        (self.func)(k)
    }

    /// r_lambda(x): the content product over the diagram.
    pub fn content_product(&self, x: i64, la: &Partition) -> T {
        content_product(|k| self.at(k), x, la)
    }
}

/// Double Schur series sum c_{lambda lambda'} s_lambda(t) s_lambda'(t').
///
/// Keys are restricted to ell <= n and weight <= d_max; missing keys are
/// zero. `diagonal` promises c = 0 off the diagonal (and only diagonal keys
/// are stored). True coefficients are `stored * pi^pi_power`; `prefactor`
/// is reporting metadata, never folded into [`SchurSeries::evaluate`].
#[derive(Clone, PartialEq, Debug)]
pub struct SchurSeries<T> {
    pub n: usize,
    pub d_max: usize,
    pub diagonal: bool,
    pub prefactor: T,
    pub pi_power: u32,
    coeffs: BTreeMap<(Partition, Partition), T>,
}

impl<T: Scalar> SchurSeries<T> {
    pub fn new(
        n: usize,
        d_max: usize,
        diagonal: bool,
        prefactor: T,
        pi_power: u32,
        coeffs: BTreeMap<(Partition, Partition), T>,
    ) -> Self {
        debug_assert!(coeffs
            .keys()
            .all(|(a, b)| a.len() <= n && b.len() <= n
                && a.weight() <= d_max as u32
                && b.weight() <= d_max as u32
                && (!diagonal || a == b)));
        SchurSeries { n, d_max, diagonal, prefactor, pi_power, coeffs }
    }

    pub fn coeff(&self, la: &Partition, lap: &Partition) -> T {
        self.coeffs
            .get(&(la.clone(), lap.clone()))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn vacuum(&self) -> T {
        self.coeff(&Partition::empty(), &Partition::empty())
    }

    pub fn coeffs(&self) -> &BTreeMap<(Partition, Partition), T> {
        &self.coeffs
    }

    /// Sum c s_lambda(t) s_lambda'(t') over the stored keys. The prefactor
    /// and pi unit are NOT applied.
    pub fn evaluate(&self, t: &CouplingVector<T>, tp: &CouplingVector<T>) -> Result<T> {
        let mut acc = T::zero();
        let mut s_cache: BTreeMap<(bool, Partition), T> = BTreeMap::new();
        for ((la, lap), c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let sl = match s_cache.get(&(false, la.clone())) {
                Some(v) => v.clone(),
                None => {
                    let v = schur_jt(la, t)?;
                    s_cache.insert((false, la.clone()), v.clone());
                    v
                }
            };
            let sr = match s_cache.get(&(true, lap.clone())) {
                Some(v) => v.clone(),
                None => {
                    let v = schur_jt(lap, tp)?;
                    s_cache.insert((true, lap.clone()), v.clone());
                    v
                }
            };
            acc = acc + c.clone() * sl * sr;
        }
        Ok(acc)
    }

    /// Per-degree slices of [`SchurSeries::evaluate`]: the (d, d') entry is
    /// the sum over |lambda| = d, |lambda'| = d'.
    pub fn degree_table(
        &self,
        t: &CouplingVector<T>,
        tp: &CouplingVector<T>,
    ) -> Result<BTreeMap<(u32, u32), T>> {
        let mut out = BTreeMap::new();
        for ((la, lap), c) in &self.coeffs {
            let v = c.clone() * schur_jt(la, t)? * schur_jt(lap, tp)?;
            let key = (la.weight(), lap.weight());
            let slot = out.entry(key).or_insert_with(T::zero);
            *slot = slot.clone() + v;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|((la, lap), c)| {
                serde_json::json!({
                    "lambda": la.parts(),
                    "lambda_prime": lap.parts(),
                    "coeff": c.to_json(),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "D": self.d_max,
            "diagonal": self.diagonal,
            "prefactor": self.prefactor.to_json(),
            "pi_power": self.pi_power,
            "terms": terms,
        })
    }
}

/// det(g_{h_i h'_j})_{i,j=1..n} with h from the two partitions. Works on the
/// stored entries; a symbolic pi unit on the table contributes pi^n, tracked
/// by the caller.
pub fn coeff_det<T: Scalar>(
    g: &MomentTable<T>,
    la: &Partition,
    lap: &Partition,
    n: usize,
) -> Result<T> {
    let h = to_h(la, n)?;
    let hp = to_h(lap, n)?;
    let need = h.h.first().copied().unwrap_or(0).max(hp.h.first().copied().unwrap_or(0)) as usize;
    if need > g.k_max() {
        return Err(Error::TableTooSmall { need, size: g.k_max() });
    }
    if n == 0 {
        return Ok(T::one());
    }
    let m: Vec<Vec<T>> = h
        .h
        .iter()
        .map(|&hi| hp.h.iter().map(|&hj| g.get(hi as usize, hj as usize).unwrap()).collect())
        .collect();
    Ok(det_ring(&m))
}

/// Theorem-1 series: c_{lambda lambda'} = n! det(g_{h_i h'_j}) over all
/// pairs with weight <= d and length <= n. Needs the table to cover index
/// d + n - 1.
pub fn z_expand<T: Scalar>(g: &MomentTable<T>, n: usize, d: usize) -> Result<SchurSeries<T>> {
    let need = d + n.saturating_sub(1);
    if need > g.k_max() {
        return Err(Error::TableTooSmall { need, size: g.k_max() });
    }
    let nf: T = factorial(n as u32);
    let lams = enumerate(d as u32, n);
    let pairs: Vec<(Partition, Partition)> = if g.is_diagonal() {
        lams.iter().map(|la| (la.clone(), la.clone())).collect()
    } else {
        lams.iter()
            .flat_map(|a| lams.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    };
    let computed: Vec<((Partition, Partition), T)> = pairs
        .into_par_iter()
        .map(|(la, lap)| {
            let det = coeff_det(g, &la, &lap, n).expect("coverage checked above");
            ((la, lap), nf.clone() * det)
        })
        .collect();
    let coeffs: BTreeMap<_, _> = computed.into_iter().collect();
    Ok(SchurSeries::new(
        n,
        d,
        g.is_diagonal(),
        T::one(),
        if g.has_pi_factor() { n as u32 } else { 0 },
        coeffs,
    ))
}

/// Hypergeometric-type diagonal series: c_{lambda lambda} = r_lambda(n).
/// For semi-infinite r the coefficients vanish exactly whenever the diagram
/// reaches a node of content -n, i.e. whenever ell(lambda) > n.
pub fn tau_hyper<T: Scalar>(r: &RFunction<T>, n: usize, d: usize) -> SchurSeries<T> {
    let mut coeffs = BTreeMap::new();
    let max_len = if r.semi_infinite { n } else { d };
    for la in enumerate(d as u32, max_len) {
        let c = r.content_product(n as i64, &la);
        coeffs.insert((la.clone(), la), c);
    }
    SchurSeries::new(n, d, true, T::one(), 0, coeffs)
}

/// Axial diagonal series from the xi-ladder: c_{lambda lambda} =
/// prod_{i <= ell} a_{h_i} / a_{n-i}. Vacuum-normalized; the n! (and the
/// absolute vacuum moment determinant) live outside as metadata.
pub fn z_axial<T: Scalar>(xi: &XiSequence<T>, n: usize, d: usize) -> Result<SchurSeries<T>> {
    let mut coeffs = BTreeMap::new();
    for la in enumerate(d as u32, n) {
        let mut c = T::one();
        for i in 1..=la.len() {
            let h = la.part(i - 1) as usize + n - i;
            c = c * xi.a(h)? / xi.a(n - i)?;
        }
        coeffs.insert((la.clone(), la), c);
    }
    Ok(SchurSeries::new(n, d, true, factorial(n as u32), 0, coeffs))
}

/// Toda-lattice residual for the hypergeometric family, as a bivariate
/// series in (t_1, t_1') with every other time frozen at zero:
///
///   R = d_{t1} d_{t1'} phi_n - r(n) e^{phi_{n-1} - phi_n}
///                            + r(n+1) e^{phi_n - phi_{n+1}},
///
/// with phi_k = -log(tau_r(k+1) / tau_r(k)). The solution property makes
/// every coefficient of total degree <= D - 2 vanish.
pub fn toda_residual<T: Scalar>(r: &RFunction<T>, n: usize, d: usize) -> Series2<T> {
    assert!(n >= 1, "the residual is defined for n >= 1");
    let phi = |k: usize| -> Series2<T> {
        // -log(tau(k+1)/tau(k)) = log tau(k) - log tau(k+1)
        tau_restricted(r, k, d).log().sub(&tau_restricted(r, k + 1, d).log())
    };
    let phi_prev = phi(n - 1);
    let phi_n = phi(n);
    let phi_next = phi(n + 1);
    let first = phi_n.d_dx().d_dy();
    let down = phi_prev.sub(&phi_n).exp().scale(&r.at(n as i64));
    let up = phi_n.sub(&phi_next).exp().scale(&r.at(n as i64 + 1));
    first.sub(&down).add(&up)
}

/// tau_r(k) restricted to the (t_1, t_1') plane, as a bivariate series:
/// sum over |lambda| <= d of r_lambda(k) (t_1 t_1')^{|lambda|} / H_lambda^2.
pub fn tau_restricted<T: Scalar>(r: &RFunction<T>, k: usize, d: usize) -> Series2<T> {
    let mut s = Series2::zero(d);
    for la in enumerate(d as u32, d) {
        let c = r.content_product(k as i64, &la);
        if c.is_zero() {
            continue;
        }
        let w = la.weight() as usize;
        let h = crate::partition::hook_product::<T>(&la);
        let h2 = (h.clone() * h).inv();
        let mut mono = Series2::zero(d);
        mono.set_coeff(w, w, c * h2);
        s = s.add(&mono);
    }
    s
}

/// One term of the Frobenius-indexed re-summation.
#[derive(Clone, Debug)]
pub struct FrobeniusTerm<T> {
    pub coords: FrobeniusCoords,
    pub partition: Partition,
    /// prod_i a_{n + alpha_i} / a_{n - beta_i - 1}
    pub coeff: T,
}

/// The axial series re-indexed by Frobenius coordinates (alpha | beta) with
/// beta_1 < n. Term-by-term equal to [`z_axial`] under the bijection.
pub fn frobenius_resum<T: Scalar>(
    xi: &XiSequence<T>,
    n: usize,
    d: usize,
) -> Result<Vec<FrobeniusTerm<T>>> {
    let mut out = Vec::new();
    for la in enumerate(d as u32, n) {
        let coords = crate::partition::frobenius(&la);
        let mut coeff = T::one();
        for i in 0..coords.alpha.len() {
            coeff = coeff * xi.a(n + coords.alpha[i] as usize)?
                / xi.a(n - coords.beta[i] as usize - 1)?;
        }
        out.push(FrobeniusTerm { coords, partition: la, coeff });
    }
    Ok(out)
}

/// The t_infty soliton weight in Frobenius coordinates:
/// prod_{i<j} (a_i - a_j)(b_i - b_j) / [prod_{i,j} (a_i + b_j + 1) *
/// prod a_i! prod b_i!]; equals s_lambda(t_infty) = 1 / H_lambda.
pub fn frobenius_tinfty_factor<T: Scalar>(fc: &FrobeniusCoords) -> T {
    let k = fc.alpha.len();
    let mut num = T::one();
    for i in 0..k {
        for j in i + 1..k {
            num = num
                * T::from_i64(fc.alpha[i] as i64 - fc.alpha[j] as i64)
                * T::from_i64(fc.beta[i] as i64 - fc.beta[j] as i64);
        }
    }
    let mut den = T::one();
    for i in 0..k {
        for j in 0..k {
            den = den * T::from_i64(fc.alpha[i] as i64 + fc.beta[j] as i64 + 1);
        }
        den = den * factorial::<T>(fc.alpha[i]) * factorial::<T>(fc.beta[i]);
    }
    num / den
}

/// The q-deformed soliton weight in Frobenius coordinates, normalized so
/// that it equals s_lambda(t(infty, q)) = q^{n(lambda)} / H_lambda(q):
///
///   q^{n(lambda) - P} *
///   prod_{i<j} (q^{a_i+1} - q^{a_j+1})(q^{-b_j} - q^{-b_i}) /
///   [prod_{i,j} (q^{-b_i} - q^{a_j+1}) prod (q;q)_{a_i} prod (q;q)_{b_i}],
///
/// where P = sum_j (j-1)(a_j + 1) + sum_i i b_i is the q-power the raw
/// cross-ratio picks up over the principal specialization.
pub fn frobenius_q_factor<T: Scalar>(fc: &FrobeniusCoords, q: &T) -> T {
    let k = fc.alpha.len();
    let mut num = T::one();
    for i in 0..k {
        for j in i + 1..k {
            num = num
                * (q.powi(fc.alpha[i] as i64 + 1) - q.powi(fc.alpha[j] as i64 + 1))
                * (q.powi(-(fc.beta[j] as i64)) - q.powi(-(fc.beta[i] as i64)));
        }
    }
    let mut den = T::one();
    for i in 0..k {
        for j in 0..k {
            den = den * (q.powi(-(fc.beta[i] as i64)) - q.powi(fc.alpha[j] as i64 + 1));
        }
        den = den * q_poch_base(q, q, fc.alpha[i] as i64) * q_poch_base(q, q, fc.beta[i] as i64);
    }
    let la = crate::partition::from_frobenius(fc);
    let p_shift: i64 = (0..k)
        .map(|j| j as i64 * (fc.alpha[j] as i64 + 1))
        .sum::<i64>()
        + (0..k).map(|i| (i as i64 + 1) * fc.beta[i] as i64).sum::<i64>();
    q.powi(crate::partition::n_stat(&la) as i64 - p_shift) * num / den
}

/// Recover a partition pair from h-sequences (used by tests and the lattice
/// bridging code).
pub fn partition_pair_from_h(h: &[u32], hp: &[u32], n: usize) -> (Partition, Partition) {
    (
        from_h(&crate::partition::HSequence { h: h.to_vec(), n }),
        from_h(&crate::partition::HSequence { h: hp.to_vec(), n }),
    )
}
