//! Coefficient fields.
//!
//! Every algebraic routine in this crate is generic over [`Scalar`]. Three
//! fields are supported: exact arbitrary-precision rationals ([`Rat`], the
//! default), `f64` for quadrature-backed tables, and [`Complex64`] for q on
//! the unit circle. Mixing fields within one computation is not possible by
//! construction: the scalar type is fixed by the caller.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::{BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational scalar.
pub type Rat = BigRational;

/// A field of coefficients.
///
/// `EXACT` distinguishes the arithmetic class: exact fields demand
/// identically-zero residuals, floating fields carry tolerances.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Sum<Self>
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// Magnitude used for tolerance checks and reports.
    fn abs_norm(&self) -> f64;
    /// JSON form: rationals as `"num/den"`, floats as numbers, complex as `[re, im]`.
    fn to_json(&self) -> serde_json::Value;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Integer power, negative exponents via the field inverse.
    fn powi(&self, k: i64) -> Self {
        if k < 0 {
            return self.powi(-k).inv();
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn abs_norm(&self) -> f64 {
        let v = self.abs();
        v.to_f64().unwrap_or(if v.is_zero() { 0.0 } else { f64::MAX })
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(rat_to_string(self))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rat(r: &Rat) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn abs_norm(&self) -> f64 {
        self.abs()
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_rat(r: &Rat) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn abs_norm(&self) -> f64 {
        self.norm()
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.re, self.im])
    }
}

/// `"num/den"` (or `"num"` for integers), with the sign on the numerator.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"num"`, `"num/den"`, or a plain integer literal.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Shorthand rational constructor.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// k! in the target field.
pub fn factorial<T: Scalar>(k: u32) -> T {
    let mut acc = T::one();
    for j in 2..=k as i64 {
        acc = acc * T::from_i64(j);
    }
    acc
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1) for integer k, possibly
/// negative: (a)_{-m} = 1 / ((a-1)(a-2)...(a-m)).
pub fn rising<T: Scalar>(a: &T, k: i64) -> T {
    if k >= 0 {
        let mut acc = T::one();
        for j in 0..k {
            acc = acc * (a.clone() + T::from_i64(j));
        }
        acc
    } else {
        let mut acc = T::one();
        for j in 1..=(-k) {
            acc = acc * (a.clone() - T::from_i64(j));
        }
        acc.inv()
    }
}

/// Finite q-Pochhammer (b; q)_k = prod_{j=0}^{k-1} (1 - b q^j), with the
/// negative-index convention (b; q)_{-m} = 1 / prod_{j=1}^{m} (1 - b q^{-j}).
pub fn q_poch_base<T: Scalar>(b: &T, q: &T, k: i64) -> T {
    if k >= 0 {
        let mut acc = T::one();
        let mut p = b.clone();
        for _ in 0..k {
            acc = acc * (T::one() - p.clone());
            p = p * q.clone();
        }
        acc
    } else {
        let mut acc = T::one();
        let qi = q.inv();
        let mut p = b.clone() * qi.clone();
        for _ in 0..(-k) {
            acc = acc * (T::one() - p.clone());
            p = p * qi.clone();
        }
        acc.inv()
    }
}

/// Determinant by cofactor expansion; needs only ring operations.
/// Intended for the small (n <= 4) moment determinants.
pub fn det_ring<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    match n {
        0 => T::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone(),
        _ => {
            let mut acc = T::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<T>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[i][c].clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].clone() * det_ring(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Determinant by Gaussian elimination over a field, with pivot search.
pub fn det_field<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n <= 3 {
        return det_ring(m);
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else {
            return T::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det = det * pv.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / pv.clone();
            for c in col..n {
                let delta = f.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - delta;
            }
        }
    }
    det
}

/// Vandermonde product prod_{i<j} (x_i - x_j).
pub fn vandermonde<T: Scalar>(x: &[T]) -> T {
    let mut acc = T::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            acc = acc * (x[i].clone() - x[j].clone());
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_roundtrip() {
        let r = rat(-3, 12);
        assert_eq!(rat_to_string(&r), "-1/4");
        assert_eq!(rat_from_str("-1/4").unwrap(), r);
        assert_eq!(rat_from_str("7").unwrap(), rat(7, 1));
        assert!(rat_from_str("1/0").is_none());
    }

    #[test]
    fn rising_and_poch() {
        // (3)_2 = 3*4
        assert_eq!(rising::<Rat>(&rat(3, 1), 2), rat(12, 1));
        // (a)_{-1} = 1/(a-1)
        assert_eq!(rising::<Rat>(&rat(3, 1), -1), rat(1, 2));
        // (q; q)_2 = (1-q)(1-q^2) at q = 1/2
        let q = rat(1, 2);
        assert_eq!(q_poch_base(&q, &q, 2), rat(3, 8));
    }

    #[test]
    fn q_poch_negative_consistency() {
        // (b;q)_k * (b q^k; q)_m = (b; q)_{k+m} also for negative k
        let b = rat(1, 3);
        let q = rat(1, 2);
        for k in -3i64..=3 {
            for m in 0i64..=3 {
                let lhs = q_poch_base(&b, &q, k) * q_poch_base(&(b.clone() * q.powi(k)), &q, m);
                let rhs = q_poch_base(&b, &q, k + m);
                assert_eq!(lhs, rhs, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn determinants_agree() {
        let m: Vec<Vec<Rat>> = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(4, 1), rat(2, 1)],
            vec![rat(5, 1), rat(6, 1), rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)],
        ];
        let a = {
            // cofactor route forced on the full matrix
            fn cof(m: &[Vec<Rat>]) -> Rat {
                det_ring(m)
            }
            cof(&m)
        };
        let b = det_field(&m);
        assert_eq!(a, b);
    }

    #[test]
    fn powi_negative() {
        let q = rat(2, 3);
        assert_eq!(q.powi(-2), rat(9, 4));
    }
}
