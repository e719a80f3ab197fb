//! Integer partitions and the scalar statistics attached to them: hooks,
//! contents, the h-sequence, Frobenius coordinates, and enumeration.
//!
//! A partition stores only its nonzero parts; `(l1,...,lk)` and
//! `(l1,...,lk,0)` are identified by stripping trailing zeros at
//! construction. Partitions order by weight first, then by lexicographically
//! descending parts; enumeration and series reports both follow this order.

use crate::scalar::{q_poch_base, rising, Scalar};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A partition: finite non-increasing list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build from parts; trailing zeros are stripped.
    ///
    /// Panics if the sequence increases anywhere.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be non-increasing: {parts:?}"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    /// The zero partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part at `i` (0-based), zero beyond the stored length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Weight |lambda|.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Length ell(lambda): number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut t = Vec::with_capacity(cols);
        for j in 1..=cols as u32 {
            t.push(self.parts.iter().filter(|&&p| p >= j).count() as u32);
        }
        Partition { parts: t }
    }

    /// Boxes (i, j) of the diagram, 1-based, row-major.
    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i as u32 + 1, j)))
    }

    /// Hook length of box (i, j), 1-based.
    pub fn hook_len(&self, i: u32, j: u32) -> u32 {
        let t = self.conjugate();
        self.part(i as usize - 1) - j + t.part(j as usize - 1) - i + 1
    }

    /// Does this diagram contain `other`?
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Ord for Partition {
    /// Weight ascending, then lexicographically descending parts; the
    /// enumeration order and all report orders coincide with this.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Frobenius coordinates (alpha | beta): arm and leg lengths along the main
/// diagonal, both strictly decreasing.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FrobeniusCoords {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

/// The strictly decreasing sequence h_i = lambda_i - i + n, i = 1..n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HSequence {
    pub h: Vec<u32>,
    pub n: usize,
}

/// H_lambda: product of all hook lengths; 1 for the zero partition.
pub fn hook_product<T: Scalar>(la: &Partition) -> T {
    let t = la.conjugate();
    let mut acc = T::one();
    for (i, j) in la.boxes() {
        let h = la.part(i as usize - 1) - j + t.part(j as usize - 1) - i + 1;
        acc = acc * T::from_i64(h as i64);
    }
    acc
}

/// Hook polynomial H_lambda(q) = prod over boxes of (1 - q^h).
pub fn hook_polynomial<T: Scalar>(la: &Partition, q: &T) -> T {
    let t = la.conjugate();
    let mut acc = T::one();
    for (i, j) in la.boxes() {
        let h = la.part(i as usize - 1) - j + t.part(j as usize - 1) - i + 1;
        let f = T::one() - q.powi(h as i64);
        if f.is_zero() {
            return T::zero();
        }
        acc = acc * f;
    }
    acc
}

/// n(lambda) = sum (i-1) lambda_i.
pub fn n_stat(la: &Partition) -> u64 {
    la.parts
        .iter()
        .enumerate()
        .map(|(i, &p)| i as u64 * p as u64)
        .sum()
}

/// Generalized rising factorial (a)_lambda = prod_i (a - i + 1)_{lambda_i}.
pub fn rising_factorial<T: Scalar>(a: &T, la: &Partition) -> T {
    let mut acc = T::one();
    for (i, &p) in la.parts.iter().enumerate() {
        let base = a.clone() - T::from_i64(i as i64);
        acc = acc * rising(&base, p as i64);
    }
    acc
}

/// (q^a; q)_lambda = prod_i (q^{a-i+1}; q)_{lambda_i}, built from qa = q^a so
/// the identity stays inside the rational field for any formal exponent a.
pub fn q_pochhammer<T: Scalar>(qa: &T, q: &T, la: &Partition) -> T {
    let mut acc = T::one();
    for (i, &p) in la.parts.iter().enumerate() {
        let base = qa.clone() * q.powi(-(i as i64));
        acc = acc * q_poch_base(&base, q, p as i64);
    }
    acc
}

/// h_i = lambda_i - i + n for i = 1..n; requires ell(lambda) <= n.
pub fn to_h(la: &Partition, n: usize) -> Result<HSequence> {
    if la.len() > n {
        return Err(Error::LengthExceedsN { len: la.len(), n });
    }
    let h = (1..=n)
        .map(|i| (la.part(i - 1) as i64 - i as i64 + n as i64) as u32)
        .collect();
    Ok(HSequence { h, n })
}

/// Inverse of [`to_h`].
pub fn from_h(hs: &HSequence) -> Partition {
    let n = hs.n;
    let parts: Vec<u32> = hs
        .h
        .iter()
        .enumerate()
        .map(|(i, &h)| {
            let p = h as i64 + (i as i64 + 1) - n as i64;
            assert!(p >= 0, "h-sequence is not staircase-dominated");
            p as u32
        })
        .collect();
    Partition::new(parts)
}

/// Frobenius coordinates along the main diagonal.
pub fn frobenius(la: &Partition) -> FrobeniusCoords {
    let t = la.conjugate();
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut i = 0usize;
    while la.part(i) as usize > i {
        alpha.push(la.part(i) - i as u32 - 1);
        beta.push(t.part(i) - i as u32 - 1);
        i += 1;
    }
    FrobeniusCoords { alpha, beta }
}

/// Rebuild the partition from Frobenius coordinates.
pub fn from_frobenius(fc: &FrobeniusCoords) -> Partition {
    assert_eq!(fc.alpha.len(), fc.beta.len());
    let k = fc.alpha.len();
    if k == 0 {
        return Partition::empty();
    }
    // Row lengths above/on the diagonal, then fill in the rows below from
    // the conjugate data.
    let ell = fc.beta[0] as usize + 1;
    let mut parts = vec![0u32; ell];
    for i in 0..k {
        parts[i] = fc.alpha[i] + i as u32 + 1;
    }
    for i in k..ell {
        // number of j <= k with beta_j >= i - j ... equivalently count of
        // diagonal columns whose leg reaches row i+1.
        parts[i] = (0..k).filter(|&j| fc.beta[j] as usize + j + 1 > i).count() as u32;
    }
    Partition::new(parts)
}

/// All partitions with weight <= `max_weight` and length <= `max_length`,
/// in (weight ascending, lexicographically descending parts) order.
pub fn enumerate(max_weight: u32, max_length: usize) -> Vec<Partition> {
    let mut out = vec![Partition::empty()];
    for w in 1..=max_weight {
        let mut acc = Vec::new();
        let mut prefix = Vec::new();
        gen_weight(w, w, max_length, &mut prefix, &mut acc);
        out.extend(acc);
    }
    out
}

fn gen_weight(rem: u32, max_part: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition::new(prefix.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    let hi = rem.min(max_part);
    for p in (1..=hi).rev() {
        prefix.push(p);
        gen_weight(rem - p, p, slots - 1, prefix, out);
        prefix.pop();
    }
}

/// Partitions of exact weight `w` with length <= `max_length`.
pub fn partitions_of(w: u32, max_length: usize) -> Vec<Partition> {
    if w == 0 {
        return vec![Partition::empty()];
    }
    let mut acc = Vec::new();
    let mut prefix = Vec::new();
    gen_weight(w, w, max_length, &mut prefix, &mut acc);
    acc
}

/// Content product r_lambda(x) = prod over boxes (i,j) of r(x + j - i);
/// empty partition gives 1. Exits early on a zero factor.
pub fn content_product<T: Scalar>(r: impl Fn(i64) -> T, x: i64, la: &Partition) -> T {
    let mut acc = T::one();
    for (i, j) in la.boxes() {
        let f = r(x + j as i64 - i as i64);
        if f.is_zero() {
            return T::zero();
        }
        acc = acc * f;
    }
    acc
}

/// Parents of lambda under removal of one corner box, so that
/// d s_lambda / d t_1 = sum over these.
pub fn t1_derivative_terms(la: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    for i in 0..la.len() {
        let removable = la.part(i) > la.part(i + 1);
        if removable {
            let mut parts = la.parts().to_vec();
            parts[i] -= 1;
            out.push(Partition::new(parts));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use num::One;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 3, 1]).conjugate(), p(&[3, 2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[5]).conjugate(), p(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn conjugate_involution() {
        for la in enumerate(8, 8) {
            assert_eq!(la.conjugate().conjugate(), la);
        }
    }

    #[test]
    fn hook_products() {
        assert_eq!(hook_product::<Rat>(&p(&[3, 3, 1])), rat(240, 1));
        assert_eq!(hook_product::<Rat>(&p(&[1])), rat(1, 1));
        assert_eq!(hook_product::<Rat>(&p(&[2, 1])), rat(3, 1));
        assert_eq!(hook_product::<Rat>(&Partition::empty()), rat(1, 1));
    }

    #[test]
    fn hook_polynomial_examples() {
        let q = rat(1, 2);
        assert_eq!(hook_polynomial(&p(&[1]), &q), rat(1, 2));
        assert_eq!(hook_polynomial(&p(&[2, 1]), &q), rat(7, 32));
    }

    #[test]
    fn hook_polynomial_q_to_1_limit() {
        // H_lambda(q) / (1-q)^{|lambda|} at q -> 1: divide each factor
        // (1 - q^h) by (1 - q) to get 1 + q + ... + q^{h-1}, then set q = 1.
        // The result is the plain hook product.
        for la in enumerate(8, 8) {
            let mut lim = Rat::one();
            for (i, j) in la.boxes() {
                let h = la.hook_len(i, j);
                lim = lim * rat(h as i64, 1);
            }
            assert_eq!(lim, hook_product::<Rat>(&la), "{la:?}");
        }
    }

    #[test]
    fn n_stat_examples() {
        assert_eq!(n_stat(&p(&[3, 3, 1])), 5);
        assert_eq!(n_stat(&Partition::empty()), 0);
        assert_eq!(n_stat(&p(&[1, 1, 1])), 3);
    }

    #[test]
    fn rising_factorial_examples() {
        assert_eq!(rising_factorial(&rat(2, 1), &p(&[1])), rat(2, 1));
        // (a)_{(2,1)} = a(a+1)(a-1) at a = 3 -> 24
        assert_eq!(rising_factorial(&rat(3, 1), &p(&[2, 1])), rat(24, 1));
        assert_eq!(rising_factorial(&rat(3, 1), &Partition::empty()), rat(1, 1));
    }

    #[test]
    fn q_pochhammer_examples() {
        let q = rat(1, 2);
        assert_eq!(q_pochhammer(&q, &q, &Partition::empty()), rat(1, 1));
        // a = 1: (q; q)_{(1)} = 1 - q
        assert_eq!(q_pochhammer(&q, &q, &p(&[1])), rat(1, 2));
        // a = 2: (q^2; q)_{(1,1)} = (1 - q^2)(1 - q) = 3/8
        let qa = rat(1, 4);
        assert_eq!(q_pochhammer(&qa, &q, &p(&[1, 1])), rat(3, 8));
    }

    #[test]
    fn h_sequence_roundtrip() {
        let hs = to_h(&p(&[3, 3, 1]), 3).unwrap();
        assert_eq!(hs.h, vec![5, 4, 1]);
        assert_eq!(from_h(&hs), p(&[3, 3, 1]));
        let hs0 = to_h(&Partition::empty(), 3).unwrap();
        assert_eq!(hs0.h, vec![2, 1, 0]);
        assert!(to_h(&p(&[1, 1, 1, 1]), 3).is_err());
        // weight relation: sum h_i - n(n-1)/2 = |lambda|
        for la in enumerate(8, 4) {
            for n in la.len()..=5 {
                let hs = to_h(&la, n).unwrap();
                let s: i64 = hs.h.iter().map(|&h| h as i64).sum();
                assert_eq!(s - (n as i64 * (n as i64 - 1)) / 2, la.weight() as i64);
                assert_eq!(from_h(&hs), la);
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        // (3,3,1): two diagonal boxes, arms (2,1), legs (2,0)
        let fc = frobenius(&p(&[3, 3, 1]));
        assert_eq!(fc.alpha, vec![2, 1]);
        assert_eq!(fc.beta, vec![2, 0]);
        assert_eq!(from_frobenius(&fc), p(&[3, 3, 1]));

        let fc0 = frobenius(&Partition::empty());
        assert!(fc0.alpha.is_empty() && fc0.beta.is_empty());
        let fc1 = frobenius(&p(&[1]));
        assert_eq!((fc1.alpha.clone(), fc1.beta.clone()), (vec![0], vec![0]));
    }

    #[test]
    fn frobenius_roundtrip_and_weight() {
        for la in enumerate(10, 10) {
            let fc = frobenius(&la);
            assert_eq!(from_frobenius(&fc), la);
            let w: u32 = fc.alpha.len() as u32
                + fc.alpha.iter().sum::<u32>()
                + fc.beta.iter().sum::<u32>();
            assert_eq!(w, la.weight());
        }
    }

    #[test]
    fn enumerate_examples() {
        let e = enumerate(2, 2);
        assert_eq!(e, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1])]);
        let e = enumerate(3, 1);
        assert_eq!(e, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[3])]);
        assert_eq!(enumerate(0, 5), vec![Partition::empty()]);
    }

    /// Independent counting oracle: p(w, parts <= l, all parts <= m).
    fn count_brute(w: u32, max_len: usize, max_part: u32) -> u64 {
        if w == 0 {
            return 1;
        }
        if max_len == 0 || max_part == 0 {
            return 0;
        }
        let mut c = 0;
        for first in 1..=w.min(max_part) {
            c += count_brute(w - first, max_len - 1, first);
        }
        c
    }

    #[test]
    fn enumerate_counts_match_brute_force() {
        for d in 0..=10u32 {
            for n in 0..=6usize {
                let got = enumerate(d, n).len() as u64;
                let want: u64 = (0..=d).map(|w| count_brute(w, n, w)).sum();
                assert_eq!(got, want, "D={d} n={n}");
            }
        }
    }

    #[test]
    fn enumerate_is_sorted_and_unique() {
        let e = enumerate(9, 9);
        for w in e.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn content_product_examples() {
        // r(k) = k, x = 1, lambda = (2): r(1) r(2) = 2
        let v = content_product(|k| rat(k, 1), 1, &p(&[2]));
        assert_eq!(v, rat(2, 1));
        assert_eq!(content_product(|k| rat(k, 1), 5, &Partition::empty()), rat(1, 1));
        // (3,3,1) content multiset at x: {x+2, x+1, x+1, x, x, x-1, x-2}
        let x = 7;
        let v = content_product(|k| rat(k, 1), x, &p(&[3, 3, 1]));
        let expect = rat(x + 2, 1) * rat(x + 1, 1) * rat(x + 1, 1) * rat(x, 1) * rat(x, 1) * rat(x - 1, 1) * rat(x - 2, 1);
        assert_eq!(v, expect);
    }

    #[test]
    fn content_product_matches_rising() {
        // r(k) = k at x = n gives prod (n + j - i) = (n)_lambda
        for la in enumerate(6, 6) {
            for n in 1..=4i64 {
                let lhs = content_product(|k| rat(k, 1), n, &la);
                let rhs = rising_factorial(&rat(n, 1), &la);
                assert_eq!(lhs, rhs, "{la:?} n={n}");
            }
        }
    }

    #[test]
    fn corner_removals() {
        assert_eq!(t1_derivative_terms(&p(&[2])), vec![p(&[1])]);
        assert_eq!(t1_derivative_terms(&p(&[2, 1])), vec![p(&[1, 1]), p(&[2])]);
        assert!(t1_derivative_terms(&Partition::empty()).is_empty());
    }
}
