//! Schur functions in higher-time variables and in eigenvalue variables,
//! together with the closed-form specializations of the coupling constants.
//!
//! The two definitions in play:
//!
//! - Jacobi-Trudi over the times t = (t_1, t_2, ...):
//!   s_lambda(t) = det(h_{lambda_i - i + j}(t)) where
//!   sum_k z^k h_k(t) = exp(sum_m z^m t_m);
//! - ratio of alternants in eigenvalues x = (x_1, ..., x_n):
//!   s_lambda(x) = det(x_i^{lambda_j - j + n}) / det(x_i^{n - j}).
//!
//! They agree under the Miwa map t_m = (1/m) sum x_i^m, which is how repeated
//! eigenvalues are handled (the alternant would be 0/0 there).

use crate::partition::{
    hook_polynomial, hook_product, n_stat, q_pochhammer, rising_factorial, Partition,
};
use crate::scalar::{det_field, factorial, Scalar};
use crate::series::Series1;
use crate::{Error, Result};

pub use crate::partition::t1_derivative_terms;

/// Truncated vector of coupling constants (t_1, ..., t_M); t_m is graded
/// with weight m, and t_m = 0 for m > M.
#[derive(Clone, PartialEq, Debug)]
pub struct CouplingVector<T> {
    values: Vec<T>,
}

impl<T: Scalar> CouplingVector<T> {
    pub fn new(values: Vec<T>) -> Self {
        CouplingVector { values }
    }

    pub fn zero(m: usize) -> Self {
        CouplingVector { values: vec![T::zero(); m] }
    }

    /// Truncation order M.
    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// t_m, 1-based; zero beyond the truncation.
    pub fn get(&self, m: usize) -> T {
        assert!(m >= 1);
        self.values.get(m - 1).cloned().unwrap_or_else(T::zero)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// t_m <- x^m t_m; evaluating s_lambda afterwards multiplies by x^{|lambda|}.
    pub fn scaled(&self, x: &T) -> Self {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, t)| t.clone() * x.powi(i as i64 + 1))
            .collect();
        CouplingVector { values }
    }

    /// xi(t, z) = sum_m t_m z^m, the linear potential at a point.
    pub fn xi_at(&self, z: &T) -> T {
        let mut acc = T::zero();
        let mut p = T::one();
        for t in &self.values {
            p = p * z.clone();
            acc = acc + t.clone() * p.clone();
        }
        acc
    }
}

/// Eigenvalue vector (x_1, ..., x_n).
#[derive(Clone, PartialEq, Debug)]
pub struct EigenvalueVector<T> {
    pub x: Vec<T>,
}

impl<T: Scalar> EigenvalueVector<T> {
    pub fn new(x: Vec<T>) -> Self {
        EigenvalueVector { x }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn has_repeats(&self) -> bool {
        for i in 0..self.x.len() {
            for j in i + 1..self.x.len() {
                if self.x[i] == self.x[j] {
                    return true;
                }
            }
        }
        false
    }
}

/// The structured choices of coupling constants. `TAQ` carries q^a as an
/// independent scalar `qa`, so half-integer exponents stay inside the
/// rational field; for integer a simply pass `qa = q.powi(a)`.
#[derive(Clone, PartialEq, Debug)]
pub enum SpecializationKind<T> {
    /// t = (1, 0, 0, ...)
    TInfty,
    /// t_m = a / m
    TA1 { a: T },
    /// t_m = 1 / (m (1 - q^m))
    TInftyQ { q: T },
    /// t_m = (1 - qa^m) / (m (1 - q^m)), qa standing for q^a
    TAQ { qa: T, q: T },
    /// t_m = (1/m) sum_{i=1}^{n} q^{m(n-i)}: the principal finite choice
    TNQ { n: usize, q: T },
}

/// Elementary Schur functions h_0..h_kmax of the coupling vector: the
/// coefficients of exp(sum z^m t_m).
pub fn elementary_schur<T: Scalar>(t: &CouplingVector<T>, kmax: usize) -> Result<Vec<T>> {
    if kmax > t.order() {
        return Err(Error::TruncationInsufficient { need: kmax, have: t.order() });
    }
    let mut arg = Series1::zero(kmax);
    for m in 1..=kmax.min(t.order()) {
        arg.add_assign_coeff(m, t.get(m));
    }
    let e = arg.exp();
    Ok((0..=kmax).map(|k| e.coeff(k)).collect())
}

/// Jacobi-Trudi determinant s_lambda(t).
pub fn schur_jt<T: Scalar>(la: &Partition, t: &CouplingVector<T>) -> Result<T> {
    if la.is_empty() {
        return Ok(T::one());
    }
    let w = la.weight() as usize;
    if w > t.order() {
        return Err(Error::TruncationInsufficient { need: w, have: t.order() });
    }
    let ell = la.len();
    let kmax = la.part(0) as usize + ell - 1;
    let h = elementary_schur(t, kmax)?;
    let get = |k: i64| -> T {
        if k < 0 {
            T::zero()
        } else {
            h[k as usize].clone()
        }
    };
    let m: Vec<Vec<T>> = (1..=ell)
        .map(|i| {
            (1..=ell)
                .map(|j| get(la.part(i - 1) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    Ok(det_field(&m))
}

/// Miwa map t_m = (1/m) sum_i x_i^m, m = 1..M.
pub fn power_sums<T: Scalar>(x: &EigenvalueVector<T>, m_order: usize) -> CouplingVector<T> {
    let mut values = Vec::with_capacity(m_order);
    let mut pows: Vec<T> = vec![T::one(); x.len()];
    for m in 1..=m_order {
        let mut s = T::zero();
        for (p, xi) in pows.iter_mut().zip(&x.x) {
            *p = p.clone() * xi.clone();
            s = s + p.clone();
        }
        values.push(s / T::from_i64(m as i64));
    }
    CouplingVector { values }
}

/// Schur function as a ratio of alternants. Repeated eigenvalues (or
/// ell(lambda) > n) route through the power-sum evaluation, which is equal
/// where both are defined and never divides by zero.
pub fn schur_alternant<T: Scalar>(la: &Partition, x: &EigenvalueVector<T>) -> T {
    let n = x.len();
    if la.len() > n || x.has_repeats() {
        let m = (la.weight() as usize).max(1);
        return schur_jt(la, &power_sums(x, m)).expect("order chosen to cover |lambda|");
    }
    if la.is_empty() && n == 0 {
        return T::one();
    }
    let num = alternant_det(
        &x.x,
        &(0..n)
            .map(|j| la.part(j) as i64 - j as i64 - 1 + n as i64)
            .collect::<Vec<_>>(),
    );
    let den = alternant_det(&x.x, &(0..n).map(|j| n as i64 - 1 - j as i64).collect::<Vec<_>>());
    num / den
}

/// det(x_i^{e_j}) for a given exponent list.
pub fn alternant_det<T: Scalar>(x: &[T], exps: &[i64]) -> T {
    let n = x.len();
    assert_eq!(n, exps.len());
    let m: Vec<Vec<T>> = (0..n)
        .map(|i| exps.iter().map(|&e| x[i].powi(e)).collect())
        .collect();
    det_field(&m)
}

/// The coupling vector prescribed by a specialization, truncated at M.
pub fn specialize<T: Scalar>(
    kind: &SpecializationKind<T>,
    m_order: usize,
) -> Result<CouplingVector<T>> {
    let mut values = Vec::with_capacity(m_order);
    match kind {
        SpecializationKind::TInfty => {
            for m in 1..=m_order {
                values.push(if m == 1 { T::one() } else { T::zero() });
            }
        }
        SpecializationKind::TA1 { a } => {
            for m in 1..=m_order {
                values.push(a.clone() / T::from_i64(m as i64));
            }
        }
        SpecializationKind::TInftyQ { q } => {
            for m in 1..=m_order {
                let d = T::one() - q.powi(m as i64);
                if d.is_zero() {
                    return Err(Error::RootOfUnity { m });
                }
                values.push((T::from_i64(m as i64) * d).inv());
            }
        }
        SpecializationKind::TAQ { qa, q } => {
            for m in 1..=m_order {
                let d = T::one() - q.powi(m as i64);
                if d.is_zero() {
                    return Err(Error::RootOfUnity { m });
                }
                let num = T::one() - qa.powi(m as i64);
                values.push(num / (T::from_i64(m as i64) * d));
            }
        }
        SpecializationKind::TNQ { n, q } => {
            for m in 1..=m_order {
                let mut s = T::zero();
                for i in 1..=*n {
                    s = s + q.powi((m * (n - i)) as i64);
                }
                values.push(s / T::from_i64(m as i64));
            }
        }
    }
    Ok(CouplingVector { values })
}

/// Closed-form value of s_lambda at a specialization:
/// 1/H, (a)_lambda/H, q^{n(lambda)}/H(q), q^{n(lambda)} (q^a; q)_lambda / H(q),
/// and the alternant at x_i = q^{n-i} for the principal finite choice.
pub fn schur_closed_form<T: Scalar>(la: &Partition, kind: &SpecializationKind<T>) -> Result<T> {
    match kind {
        SpecializationKind::TInfty => Ok(hook_product::<T>(la).inv()),
        SpecializationKind::TA1 { a } => Ok(rising_factorial(a, la) / hook_product::<T>(la)),
        SpecializationKind::TInftyQ { q } => {
            let hq = hook_polynomial(la, q);
            if hq.is_zero() {
                return Err(Error::RootOfUnity { m: 0 });
            }
            Ok(q.powi(n_stat(la) as i64) / hq)
        }
        SpecializationKind::TAQ { qa, q } => {
            let hq = hook_polynomial(la, q);
            if hq.is_zero() {
                return Err(Error::RootOfUnity { m: 0 });
            }
            Ok(q.powi(n_stat(la) as i64) * q_pochhammer(qa, q, la) / hq)
        }
        SpecializationKind::TNQ { n, q } => {
            let x = EigenvalueVector::new((0..*n).map(|i| q.powi((*n - 1 - i) as i64)).collect());
            Ok(schur_alternant(la, &x))
        }
    }
}

/// Coefficient extraction by Hall-pairing orthonormality: applying
/// s_mu(d~) s_mu'(d~') to a double Schur series and evaluating at t = t' = 0
/// returns the (mu, mu') coefficient. That this equals the differential
/// action is certified against symbolic differentiation in the test suite.
pub fn extract_coeff<T: Scalar>(
    coeffs: &std::collections::BTreeMap<(Partition, Partition), T>,
    mu: &Partition,
    mu_p: &Partition,
) -> T {
    coeffs
        .get(&(mu.clone(), mu_p.clone()))
        .cloned()
        .unwrap_or_else(T::zero)
}

/// Coefficient of t_1^{|nu| - |mu|} in the skew evaluation s_{nu/mu} at
/// t = (t_1, 0, 0, ...): the Jacobi-Trudi determinant
/// det(1/(nu_i - mu_j - i + j)!). Zero when mu is not contained in nu.
pub fn skew_t1_coeff<T: Scalar>(nu: &Partition, mu: &Partition) -> T {
    if !nu.contains(mu) {
        return T::zero();
    }
    if nu.is_empty() {
        return T::one();
    }
    let ell = nu.len();
    let entry = |i: usize, j: usize| -> T {
        let k = nu.part(i - 1) as i64 - mu.part(j - 1) as i64 - i as i64 + j as i64;
        if k < 0 {
            T::zero()
        } else {
            factorial::<T>(k as u32).inv()
        }
    };
    let m: Vec<Vec<T>> = (1..=ell)
        .map(|i| (1..=ell).map(|j| entry(i, j)).collect())
        .collect();
    det_field(&m)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate;
    use crate::scalar::{rat, Rat};
    use num::Zero;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn cv(vals: &[(i64, i64)]) -> CouplingVector<Rat> {
        CouplingVector::new(vals.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn elementary_schur_examples() {
        // exp(z): (1, 1, 1/2, 1/6)
        let t = cv(&[(1, 1), (0, 1), (0, 1)]);
        let h = elementary_schur(&t, 3).unwrap();
        assert_eq!(h, vec![rat(1, 1), rat(1, 1), rat(1, 2), rat(1, 6)]);
        // zero vector
        let h = elementary_schur(&CouplingVector::<Rat>::zero(3), 3).unwrap();
        assert_eq!(h, vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        // exp(z^2): (1, 0, 1, 0, 1/2)
        let t = cv(&[(0, 1), (1, 1), (0, 1), (0, 1)]);
        let h = elementary_schur(&t, 4).unwrap();
        assert_eq!(h, vec![rat(1, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(1, 2)]);
        assert!(elementary_schur(&t, 5).is_err());
    }

    #[test]
    fn schur_jt_examples() {
        // s_(2,1) at t = (1,1,1): 1/3 - 1 = -2/3
        let t = cv(&[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(schur_jt(&p(&[2, 1]), &t).unwrap(), rat(-2, 3));
        assert_eq!(schur_jt(&Partition::empty(), &t).unwrap(), rat(1, 1));
        // s_(2,1) at t_infty = 1/H = 1/3
        let t = cv(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(schur_jt(&p(&[2, 1]), &t).unwrap(), rat(1, 3));
    }

    #[test]
    fn power_sums_examples() {
        let x = EigenvalueVector::new(vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(power_sums(&x, 2).values(), &[rat(2, 1), rat(1, 1)]);
        let x = EigenvalueVector::new(vec![rat(0, 1)]);
        assert_eq!(power_sums(&x, 3).values(), &[rat(0, 1), rat(0, 1), rat(0, 1)]);
        let x = EigenvalueVector::new(vec![rat(1, 1), rat(1, 2)]);
        assert_eq!(power_sums(&x, 2).values(), &[rat(3, 2), rat(5, 8)]);
    }

    #[test]
    fn alternant_examples() {
        let x = EigenvalueVector::new(vec![rat(2, 1), rat(1, 1)]);
        assert_eq!(schur_alternant(&p(&[1]), &x), rat(3, 1));
        // s_(2)(a, b) = a^2 + ab + b^2 at (2,1) -> 7
        assert_eq!(schur_alternant(&p(&[2]), &x), rat(7, 1));
        // length beyond n vanishes through the power-sum route
        assert_eq!(schur_alternant(&p(&[1, 1, 1]), &x), rat(0, 1));
        // repeated eigenvalues fall back as well: s_(1)(1,1) = 2
        let x = EigenvalueVector::new(vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(schur_alternant(&p(&[1]), &x), rat(2, 1));
    }

    #[test]
    fn jt_equals_alternant() {
        let xs: Vec<Vec<Rat>> = vec![
            vec![rat(2, 1)],
            vec![rat(2, 1), rat(1, 3)],
            vec![rat(1, 2), rat(3, 1), rat(-1, 5)],
            vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(-2, 7)],
        ];
        for la in enumerate(6, 6) {
            for xv in &xs {
                let x = EigenvalueVector::new(xv.clone());
                if la.len() > x.len() {
                    continue;
                }
                let via_t = schur_jt(&la, &power_sums(&x, la.weight().max(1) as usize)).unwrap();
                let via_x = schur_alternant(&la, &x);
                assert_eq!(via_t, via_x, "{la:?} {xv:?}");
            }
        }
    }

    #[test]
    fn vanishing_beyond_length() {
        for la in enumerate(6, 6) {
            for n in 1..=3usize {
                if la.len() <= n {
                    continue;
                }
                let x = EigenvalueVector::new((1..=n as i64).map(|i| rat(i + 1, 2)).collect());
                let v = schur_jt(&la, &power_sums(&x, la.weight().max(1) as usize)).unwrap();
                assert!(v.is_zero(), "{la:?} n={n}");
            }
        }
    }

    #[test]
    fn specialize_examples() {
        let t = specialize(&SpecializationKind::<Rat>::TInfty, 3).unwrap();
        assert_eq!(t.values(), &[rat(1, 1), rat(0, 1), rat(0, 1)]);
        let t = specialize(&SpecializationKind::TA1 { a: rat(2, 1) }, 3).unwrap();
        assert_eq!(t.values(), &[rat(2, 1), rat(1, 1), rat(2, 3)]);
        let t = specialize(&SpecializationKind::TInftyQ { q: rat(1, 2) }, 2).unwrap();
        assert_eq!(t.values(), &[rat(2, 1), rat(2, 3)]);
        assert!(specialize(&SpecializationKind::TInftyQ { q: rat(1, 1) }, 2).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            schur_closed_form(&p(&[2, 1]), &SpecializationKind::<Rat>::TInfty).unwrap(),
            rat(1, 3)
        );
        // (1) at t(infty, q): 1/(1-q), q = 1/2 -> 2
        assert_eq!(
            schur_closed_form(&p(&[1]), &SpecializationKind::TInftyQ { q: rat(1, 2) }).unwrap(),
            rat(2, 1)
        );
        // (2,1) at t(a,1), a=3: (3)_(2,1)/3 = 8
        assert_eq!(
            schur_closed_form(&p(&[2, 1]), &SpecializationKind::TA1 { a: rat(3, 1) }).unwrap(),
            rat(8, 1)
        );
    }

    #[test]
    fn lemma1_jt_equals_closed_forms() {
        // all four specializations, |lambda| <= 6, sampled rational parameters
        let kinds: Vec<SpecializationKind<Rat>> = vec![
            SpecializationKind::TInfty,
            SpecializationKind::TA1 { a: rat(2, 1) },
            SpecializationKind::TA1 { a: rat(7, 2) },
            SpecializationKind::TInftyQ { q: rat(1, 2) },
            SpecializationKind::TInftyQ { q: rat(3, 5) },
            SpecializationKind::TAQ { qa: rat(1, 4), q: rat(1, 2) },
            SpecializationKind::TAQ { qa: rat(9, 25), q: rat(3, 5) },
            // generic point: qa off the integer q-power lattice
            SpecializationKind::TAQ { qa: rat(3, 7), q: rat(1, 2) },
        ];
        for la in enumerate(6, 6) {
            let m = la.weight().max(1) as usize;
            for kind in &kinds {
                let t = specialize(kind, m).unwrap();
                let lhs = schur_jt(&la, &t).unwrap();
                let rhs = schur_closed_form(&la, kind).unwrap();
                assert_eq!(lhs, rhs, "{la:?} {kind:?}");
            }
        }
    }

    #[test]
    fn lemma1_finite_principal() {
        // s_lambda(t(n, q)) equals the alternant at x = (q^{n-1}, ..., 1)
        for la in enumerate(5, 5) {
            for n in 1..=3usize {
                let kind = SpecializationKind::TNQ { n, q: rat(1, 2) };
                let t = specialize(&kind, la.weight().max(1) as usize).unwrap();
                let lhs = schur_jt(&la, &t).unwrap();
                let rhs = schur_closed_form(&la, &kind).unwrap();
                assert_eq!(lhs, rhs, "{la:?} n={n}");
            }
        }
    }

    #[test]
    fn homogeneity() {
        // s_lambda(c t1, c^2 t2, ...) = c^{|lambda|} s_lambda(t)
        let t = cv(&[(1, 2), (2, 3), (-1, 5), (1, 7), (3, 2)]);
        let c = rat(-3, 4);
        for la in enumerate(5, 5) {
            let lhs = schur_jt(&la, &t.scaled(&c)).unwrap();
            let rhs = c.powi(la.weight() as i64) * schur_jt(&la, &t).unwrap();
            assert_eq!(lhs, rhs, "{la:?}");
        }
    }

    #[test]
    fn t1_derivative_rule() {
        // sum over corner-removals of s_mu equals d/dt_1 s_lambda, checked
        // symbolically and by exact Lagrange differentiation on integer
        // nodes (degree <= 5 in t_1, so 6 nodes suffice).
        use super::mpoly::{schur_poly, MPoly};
        for la in enumerate(5, 5) {
            let kmax = la.weight().max(1) as usize;
            let sp = schur_poly(&la, kmax);
            let dsp = sp.diff(1);
            let mut sum = MPoly::zero(kmax.max(1));
            for mu in t1_derivative_terms(&la) {
                sum = sum.add(&schur_poly(&mu, kmax));
            }
            assert!(dsp.sub(&sum).is_zero(), "symbolic {la:?}");
        }

        // numeric route at a generic base point, derivative at t1 = 0
        let base = cv(&[(1, 3), (2, 5), (1, 7), (-1, 2), (1, 11)]);
        for la in enumerate(5, 5) {
            let w = la.weight().max(1) as usize;
            let nodes: Vec<Rat> = (0..=5i64).map(|k| rat(k, 1)).collect();
            let mut dval = Rat::zero();
            for (k, xk) in nodes.iter().enumerate() {
                // w_k = l_k'(0), the exact differentiation weight
                let mut w_k = Rat::zero();
                for (m, _xm) in nodes.iter().enumerate() {
                    if m == k {
                        continue;
                    }
                    let xm = &nodes[m];
                    let mut prod = (xk.clone() - xm.clone()).recip();
                    for (j, xj) in nodes.iter().enumerate() {
                        if j == k || j == m {
                            continue;
                        }
                        prod = prod * (Rat::zero() - xj.clone()) / (xk.clone() - xj.clone());
                    }
                    w_k = w_k + prod;
                }
                let mut vals = base.values().to_vec();
                vals[0] = xk.clone();
                let s = schur_jt(&la, &CouplingVector::new(vals[..w].to_vec())).unwrap();
                dval = dval + w_k * s;
            }
            let mut vals = base.values().to_vec();
            vals[0] = Rat::zero();
            let t0 = CouplingVector::new(vals[..w].to_vec());
            let mut expect = Rat::zero();
            for mu in t1_derivative_terms(&la) {
                expect = expect + schur_jt(&mu, &t0).unwrap();
            }
            assert_eq!(dval, expect, "numeric {la:?}");
        }
    }

    #[test]
    fn xi_at_evaluates_linear_potential() {
        let t = cv(&[(1, 1), (1, 2)]);
        // xi(t, z) = z + z^2/2 at z = 1/3: 1/3 + 1/18 = 7/18
        assert_eq!(t.xi_at(&rat(1, 3)), rat(7, 18));
    }
}
