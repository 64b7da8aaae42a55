//! Betti numbers of the configuration space from those of the base manifold.
//!
//! For a `d`-dimensional base with Betti numbers `β_1, …, β_d`, the `n`-th
//! configuration-space Betti number is
//!
//! ```text
//! b_n = Σ_{m=1}^{n} Σ_{1 ≤ k_1 < … < k_m ≤ d} Σ_{s_i ≥ 1, Σ s_i k_i = n} ∏ β_{k_i}^{(s_i)}
//! ```
//!
//! with `β_k^{(s)} = C(β_k, s)` for odd `k` and `C(β_k + s − 1, s)` for even
//! `k`. `b_0 = 1` is the scalar component.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial, multichoose};
use crate::error::{Error, Result};

/// Betti numbers `β_0, …, β_d` of a `d`-dimensional base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiVector {
    beta: Vec<u64>,
}

impl BettiVector {
    /// `beta` must have length `d + 1` with `d ≥ 1`.
    pub fn new(d: usize, beta: Vec<u64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("manifold dimension must be ≥ 1".into()));
        }
        if beta.len() != d + 1 {
            return Err(Error::LengthMismatch { expected: d + 1, found: beta.len() });
        }
        Ok(Self { beta })
    }

    /// Infers `d` from the length; at least two entries are needed.
    pub fn from_slice(beta: &[u64]) -> Result<Self> {
        Self::new(beta.len().saturating_sub(1), beta.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    /// `β_k`, zero above the dimension.
    pub fn get(&self, k: usize) -> u64 {
        self.beta.get(k).copied().unwrap_or(0)
    }

    /// Same vector with `β_0` set to zero.
    pub fn with_zero_beta0(&self) -> Self {
        let mut beta = self.beta.clone();
        beta[0] = 0;
        Self { beta }
    }

    /// Pads with zeros up to dimension `d`.
    pub fn padded(&self, d: usize) -> Self {
        let mut beta = self.beta.clone();
        if beta.len() < d + 1 {
            beta.resize(d + 1, 0);
        }
        Self { beta }
    }

    /// True when every even-degree `β_k` with `k ≥ 1` vanishes.
    pub fn odd_only(&self) -> bool {
        self.beta.iter().enumerate().skip(1).all(|(k, &b)| k % 2 == 1 || b == 0)
    }

    /// Warnings about inputs outside the formula's hypotheses.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.beta[0] != 0 {
            w.push(format!(
                "beta_0 = {} is ignored; the configuration-space formula assumes an infinite-volume base with beta_0 = 0",
                self.beta[0]
            ));
        }
        w
    }
}

/// `β_k^{(s)}`: dimension of the `s`-th wedge power (odd `k`) or symmetric
/// power (even `k`) of a `β_k`-dimensional space.
pub fn beta_super(beta_k: u64, k: usize, s: usize) -> BigUint {
    if k % 2 == 1 {
        binomial(beta_k, s as u64)
    } else {
        multichoose(beta_k, s as u64)
    }
}

/// `b_n` by direct enumeration of the index set: strictly increasing degree
/// subsets, then positive multiplicities solving `Σ s_i k_i = n`.
pub fn config_betti(betti: &BettiVector, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let d = betti.dim();
    let mut total = BigUint::zero();
    let mut subset = Vec::with_capacity(d);
    // Walk subsets of {1..d} in increasing order.
    fn subsets(
        betti: &BettiVector,
        next: usize,
        d: usize,
        n: usize,
        subset: &mut Vec<usize>,
        total: &mut BigUint,
    ) {
        if !subset.is_empty() {
            let min_weight: usize = subset.iter().sum();
            if min_weight <= n {
                let mut mult = Vec::with_capacity(subset.len());
                *total += multiplicities(betti, subset, n, &mut mult);
            }
        }
        for k in next..=d {
            // the subset's minimal weight only grows
            if subset.iter().sum::<usize>() + k > n {
                break;
            }
            subset.push(k);
            subsets(betti, k + 1, d, n, subset, total);
            subset.pop();
        }
    }
    // Σ over s_i ≥ 1 with Σ s_i k_i = remaining of ∏ β_{k_i}^{(s_i)}.
    fn multiplicities(betti: &BettiVector, subset: &[usize], remaining: usize, mult: &mut Vec<usize>) -> BigUint {
        let idx = mult.len();
        if idx == subset.len() {
            if remaining != 0 {
                return BigUint::zero();
            }
            return subset
                .iter()
                .zip(mult.iter())
                .map(|(&k, &s)| beta_super(betti.get(k), k, s))
                .fold(BigUint::one(), |acc, x| acc * x);
        }
        let k = subset[idx];
        let reserved: usize = subset[idx + 1..].iter().sum();
        let mut sum = BigUint::zero();
        let mut s = 1;
        while s * k + reserved <= remaining {
            mult.push(s);
            sum += multiplicities(betti, subset, remaining - s * k, mult);
            mult.pop();
            s += 1;
        }
        sum
    }
    subsets(betti, 1, d, n, &mut subset, &mut total);
    total
}

/// `b_0, …, b_{n_max}` via the generating function
/// `∏_k Σ_s β_k^{(s)} x^{k s}`, truncated at degree `n_max`.
pub fn config_betti_series(betti: &BettiVector, n_max: usize) -> Vec<BigUint> {
    let mut poly = vec![BigUint::zero(); n_max + 1];
    poly[0] = BigUint::one();
    for k in 1..=betti.dim() {
        let factor: Vec<BigUint> = (0..=n_max)
            .map(|e| if e % k == 0 { beta_super(betti.get(k), k, e / k) } else { BigUint::zero() })
            .collect();
        let mut next = vec![BigUint::zero(); n_max + 1];
        for (i, a) in poly.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, f) in factor.iter().enumerate().take(n_max + 1 - i) {
                if !f.is_zero() {
                    next[i + j] += a * f;
                }
            }
        }
        poly = next;
    }
    poly
}

/// `b_0, …, b_{n_max}` by the reference enumeration.
pub fn config_betti_range(betti: &BettiVector, n_max: usize) -> Vec<BigUint> {
    (0..=n_max).map(|n| config_betti(betti, n)).collect()
}

/// `K_0 = Σ i β_i` and whether the vanishing statement applies (all even
/// `β_k` zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingThreshold {
    pub k0: u64,
    pub valid: bool,
}

/// Computes the threshold and, when it applies, checks `b_{K_0} = 1` and
/// `b_k = 0` for `K_0 < k ≤ K_0 + d`.
pub fn vanishing_threshold(betti: &BettiVector) -> Result<VanishingThreshold> {
    let k0: u64 = betti.beta().iter().enumerate().skip(1).map(|(i, &b)| i as u64 * b).sum();
    let valid = betti.odd_only();
    if valid {
        let k0u = usize::try_from(k0).map_err(|_| Error::InvalidParameter("K_0 too large".into()))?;
        let series = config_betti_range(betti, k0u + betti.dim());
        if !series[k0u].is_one() {
            return Err(Error::Invariant(format!("b_{k0} = {} but expected 1", series[k0u])));
        }
        if let Some((k, b)) = series.iter().enumerate().skip(k0u + 1).find(|(_, b)| !b.is_zero()) {
            return Err(Error::Invariant(format!("b_{k} = {b} above K_0 = {k0}")));
        }
    }
    Ok(VanishingThreshold { k0, valid })
}

/// Betti numbers of a product: the convolution of the two sequences.
pub fn kunneth_product(x: &BettiVector, m: &BettiVector) -> BettiVector {
    let mut beta = vec![0u64; x.beta.len() + m.beta.len() - 1];
    for (i, a) in x.beta.iter().enumerate() {
        for (j, b) in m.beta.iter().enumerate() {
            beta[i + j] += a * b;
        }
    }
    BettiVector { beta }
}

/// Both sides of the tangent-fiber decomposition for `N` points on a
/// `d`-manifold: `dim ∧^n (R^{dN})` against the sum over `m`-point subsets
/// and ordered degree vectors `(k_1, …, k_m)` with `Σ k_i = n` of
/// `∏ C(d, k_i)`.
pub fn fiber_decomposition_check(points: u64, d: u64, n: u64) -> (BigUint, BigUint) {
    let lhs = binomial(points * d, n);
    let mut rhs = if n == 0 { BigUint::one() } else { BigUint::zero() };
    for m in 1..=n.min(points) {
        rhs += binomial(points, m) * ordered_fiber_sum(d, m, n);
    }
    (lhs, rhs)
}

/// Σ over `(k_1, …, k_m)`, `1 ≤ k_i ≤ d`, `Σ k_i = n` of `∏ C(d, k_i)`.
fn ordered_fiber_sum(d: u64, m: u64, n: u64) -> BigUint {
    if m == 0 {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let mut total = BigUint::zero();
    for k in 1..=d.min(n) {
        if n - k < m - 1 {
            break;
        }
        total += binomial(d, k) * ordered_fiber_sum(d, m - 1, n - k);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(beta: &[u64]) -> BettiVector {
        BettiVector::from_slice(beta).unwrap()
    }

    fn nums(v: &[BigUint]) -> Vec<u64> {
        v.iter().map(|x| u64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn beta_super_examples() {
        assert_eq!(beta_super(3, 1, 2), BigUint::from(3u32));
        assert_eq!(beta_super(2, 2, 3), BigUint::from(4u32));
        for k in 1..5 {
            for s in 1..4 {
                assert!(beta_super(0, k, s).is_zero());
            }
        }
    }

    #[test]
    fn surface_example_is_binomial_row() {
        for b in 1..=6u64 {
            let got = config_betti_range(&bv(&[0, b, 0]), 10);
            let want: Vec<BigUint> = (0..=10).map(|k| binomial(b, k)).collect();
            assert_eq!(got, want, "B = {b}");
        }
    }

    #[test]
    fn zero_betti_vector() {
        let v = bv(&[0, 0, 0, 0]);
        assert_eq!(nums(&config_betti_range(&v, 6)), vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn series_agrees_with_enumeration() {
        for beta in [[0, 2, 1, 1], [0, 0, 3, 0], [1, 1, 1, 1], [0, 3, 2, 2]] {
            let v = bv(&beta);
            assert_eq!(config_betti_series(&v, 12), config_betti_range(&v, 12));
        }
    }

    #[test]
    fn even_generator_never_vanishes() {
        let v = bv(&[0, 0, 1]);
        assert_eq!(nums(&config_betti_range(&v, 6)), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn vanishing_examples() {
        let t = vanishing_threshold(&bv(&[0, 2, 0])).unwrap();
        assert_eq!(t, VanishingThreshold { k0: 2, valid: true });
        assert!(config_betti(&bv(&[0, 2, 0]), 2).is_one());
        assert!(config_betti(&bv(&[0, 2, 0]), 3).is_zero());

        let t = vanishing_threshold(&bv(&[0, 1, 0, 1])).unwrap();
        assert_eq!(t, VanishingThreshold { k0: 4, valid: true });
        assert!(config_betti(&bv(&[0, 1, 0, 1]), 4).is_one());

        let t = vanishing_threshold(&bv(&[0, 0, 1])).unwrap();
        assert!(!t.valid);
        assert_eq!(t.k0, 2);
    }

    #[test]
    fn kunneth_examples() {
        let x = bv(&[0, 2]);
        assert_eq!(kunneth_product(&x, &bv(&[1, 0])).beta(), &[0, 2, 0]);
        assert_eq!(kunneth_product(&x, &bv(&[1, 1])).beta(), &[0, 2, 2]);
        assert_eq!(kunneth_product(&x, &bv(&[1, 1])).dim(), 2);
    }

    #[test]
    fn fiber_examples() {
        assert_eq!(fiber_decomposition_check(2, 1, 2), (BigUint::one(), BigUint::one()));
        assert_eq!(fiber_decomposition_check(3, 2, 0), (BigUint::one(), BigUint::one()));
        let (l, r) = fiber_decomposition_check(3, 2, 4);
        assert_eq!(l, BigUint::from(15u32));
        assert_eq!(l, r);
    }

    #[test]
    fn warnings_flag_nonzero_beta0() {
        assert!(bv(&[0, 1]).warnings().is_empty());
        assert_eq!(bv(&[1, 1]).warnings().len(), 1);
        assert_eq!(bv(&[1, 1]).with_zero_beta0().beta(), &[0, 1]);
    }

    #[test]
    fn constructor_rejects_bad_lengths() {
        assert!(BettiVector::new(0, vec![0]).is_err());
        assert_eq!(
            BettiVector::new(2, vec![0, 1]),
            Err(Error::LengthMismatch { expected: 3, found: 2 })
        );
        assert!(BettiVector::from_slice(&[3]).is_err());
    }
}
