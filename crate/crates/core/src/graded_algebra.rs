//! Supercommutative tensor algebra over finitely many graded spaces.
//!
//! Each generator space `H_i` has a degree `p(i) ≥ 1` and an orthonormal
//! basis of size `dim(H_i)`. A [`BasisWord`] is a tensor product of basis
//! vectors; distinct words are orthonormal. The super-symmetrizing projector
//! `P` averages a word over all permutations, weighting each by the product
//! of `(-1)^{p p'}` over the inversions it introduces. Its image is the
//! supercommutative algebra: odd generators anticommute, even ones commute.
//!
//! Component indices and basis indices are 0-based throughout.
//!
//! Norm convention: plain words are orthonormal, and wedge/symmetric
//! monomials are the `P`-images of words, so `‖e_1∧…∧e_r‖² = 1/r!`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial, factorial, multichoose};
use crate::error::{Error, Result};
use crate::linalg::{rank_integer, Matrix};

/// Default cap on the number of words enumerated per `(m, n)` component.
pub const DEFAULT_WORD_CAP: usize = 20_000;

/// One generator space: its degree and dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub degree: u32,
    pub dim: usize,
}

impl Component {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// An ordered list of graded generator spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    components: Vec<Component>,
}

impl GradedSpace {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidSpace("at least one component is required".into()));
        }
        if let Some(c) = components.iter().find(|c| c.degree == 0) {
            return Err(Error::InvalidSpace(format!("component degree must be ≥ 1, got {}", c.degree)));
        }
        Ok(Self { components })
    }

    /// Builds a space from `(degree, dim)` pairs.
    pub fn from_pairs(pairs: &[(u32, usize)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(degree, dim)| Component { degree, dim }).collect())
    }

    /// The configuration-space instance: component `k` has degree `k` and
    /// dimension `dims[k-1]`.
    pub fn with_natural_degrees(dims: &[usize]) -> Result<Self> {
        Self::new(
            dims.iter()
                .enumerate()
                .map(|(i, &dim)| Component { degree: i as u32 + 1, dim })
                .collect(),
        )
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn degree(&self, component: usize) -> u32 {
        self.components[component].degree
    }

    pub fn alphabet_size(&self) -> usize {
        self.components.iter().map(|c| c.dim).sum()
    }

    /// All letters in lexicographic order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| (0..comp.dim).map(move |b| Letter { component: c, basis: b }))
    }
}

/// A basis vector of one generator space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub component: usize,
    pub basis: usize,
}

impl Letter {
    pub const fn new(component: usize, basis: usize) -> Self {
        Self { component, basis }
    }
}

/// A tensor product of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BasisWord(Vec<Letter>);

impl BasisWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multidegree(&self, space: &GradedSpace) -> u64 {
        self.0.iter().map(|l| u64::from(space.degree(l.component))).sum()
    }

    pub fn degrees(&self, space: &GradedSpace) -> Vec<u32> {
        self.0.iter().map(|l| space.degree(l.component)).collect()
    }

    /// The word `h_{σ(0)} ⊗ … ⊗ h_{σ(m-1)}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self(perm.iter().map(|&i| self.0[i]).collect())
    }

    /// Checks that every letter names an existing basis vector.
    pub fn validate(&self, space: &GradedSpace) -> Result<()> {
        for l in &self.0 {
            let comp = space.components.get(l.component).ok_or_else(|| {
                Error::InvalidParameter(format!("component {} out of range", l.component))
            })?;
            if l.basis >= comp.dim {
                return Err(Error::InvalidParameter(format!(
                    "basis index {} out of range for component {}",
                    l.basis, l.component
                )));
            }
        }
        Ok(())
    }

    /// The sorted rearrangement; words with the same key span one invariant
    /// block of `P`.
    pub fn orbit_key(&self) -> Self {
        let mut letters = self.0.clone();
        letters.sort_unstable();
        Self(letters)
    }
}

impl From<Vec<Letter>> for BasisWord {
    fn from(v: Vec<Letter>) -> Self {
        Self(v)
    }
}

/// A finite linear combination of words with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorVector {
    terms: BTreeMap<BasisWord, BigRational>,
}

impl TensorVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(word: BasisWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, BigRational::one());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &BasisWord) -> BigRational {
        self.terms.get(word).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, word: BasisWord, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * factor);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Inner product in which distinct words are orthonormal.
    pub fn inner(&self, other: &Self) -> BigRational {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .terms
            .iter()
            .filter_map(|(w, c)| large.terms.get(w).map(|d| c * d))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// Applies `P` term by term.
    pub fn project(&self, space: &GradedSpace) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for (pw, pc) in project(space, w).terms {
                out.add_term(pw, pc * c);
            }
        }
        out
    }
}

/// Product over inversions `k < r, σ(k) > σ(r)` of `(-1)^{d[σ(k)]·d[σ(r)]}`,
/// where `d = degrees`. `perm` lists `σ(0), …, σ(m-1)`.
pub fn super_sign(perm: &[usize], degrees: &[u32]) -> Result<i8> {
    let m = perm.len();
    if degrees.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: degrees.len() });
    }
    let mut seen = vec![false; m];
    for &p in perm {
        if p >= m || core::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation { len: m });
        }
    }
    Ok(super_sign_unchecked(perm, degrees))
}

fn super_sign_unchecked(perm: &[usize], degrees: &[u32]) -> i8 {
    let mut odd_pairs = 0u32;
    for k in 0..perm.len() {
        for r in k + 1..perm.len() {
            if perm[k] > perm[r] && degrees[perm[k]] % 2 == 1 && degrees[perm[r]] % 2 == 1 {
                odd_pairs += 1;
            }
        }
    }
    if odd_pairs.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Advances `perm` to the next permutation in lexicographic order; returns
/// `false` after the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("a successor exists");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Calls `f` on every permutation of `0..m` in lexicographic order.
pub fn for_each_permutation(m: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        f(&perm);
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

/// All words of length `m` and multidegree `n`, lexicographically ordered.
/// Fails once more than `cap` words would be produced.
pub fn enumerate_words(space: &GradedSpace, m: usize, n: u64, cap: usize) -> Result<Vec<BasisWord>> {
    let letters: Vec<(Letter, u64)> =
        space.letters().map(|l| (l, u64::from(space.degree(l.component)))).collect();
    let min_degree = letters.iter().map(|&(_, d)| d).min();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn rec(
        letters: &[(Letter, u64)],
        min_degree: u64,
        remaining_len: usize,
        remaining_deg: u64,
        current: &mut Vec<Letter>,
        out: &mut Vec<BasisWord>,
        cap: usize,
    ) -> Result<()> {
        if remaining_len == 0 {
            if remaining_deg == 0 {
                if out.len() == cap {
                    return Err(Error::WordCapExceeded { cap });
                }
                out.push(BasisWord(current.clone()));
            }
            return Ok(());
        }
        for &(letter, deg) in letters {
            if deg > remaining_deg || remaining_deg - deg < min_degree * (remaining_len as u64 - 1) {
                continue;
            }
            current.push(letter);
            rec(letters, min_degree, remaining_len - 1, remaining_deg - deg, current, out, cap)?;
            current.pop();
        }
        Ok(())
    }
    match min_degree {
        Some(min) => rec(&letters, min, m, n, &mut current, &mut out, cap)?,
        None if m == 0 && n == 0 => out.push(BasisWord::empty()),
        None => {}
    }
    Ok(out)
}

/// `m! · P(word)` as an integer combination.
fn project_scaled(space: &GradedSpace, word: &BasisWord) -> BTreeMap<BasisWord, i64> {
    let degrees = word.degrees(space);
    let mut acc: BTreeMap<BasisWord, i64> = BTreeMap::new();
    for_each_permutation(word.len(), |perm| {
        let s = i64::from(super_sign_unchecked(perm, &degrees));
        *acc.entry(word.permuted(perm)).or_insert(0) += s;
    });
    acc.retain(|_, c| *c != 0);
    acc
}

/// The super-symmetrizing projector applied to one word.
pub fn project(space: &GradedSpace, word: &BasisWord) -> TensorVector {
    let denom = BigInt::from(factorial(word.len() as u64));
    let mut out = TensorVector::zero();
    for (w, c) in project_scaled(space, word) {
        out.add_term(w, BigRational::new(BigInt::from(c), denom.clone()));
    }
    out
}

/// Gram matrix `⟨P w_a, w_b⟩` over [`enumerate_words`].
pub fn gram_matrix_sym(space: &GradedSpace, m: usize, n: u64, cap: usize) -> Result<Matrix<BigRational>> {
    let words = enumerate_words(space, m, n, cap)?;
    let index: BTreeMap<&BasisWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut gram = Matrix::zeros(words.len(), words.len());
    for (a, w) in words.iter().enumerate() {
        for (pw, c) in project(space, w).terms {
            let b = index[&pw];
            gram[(a, b)] = c;
        }
    }
    Ok(gram)
}

/// `dim` of the `(m, n)` component of the supercommutative algebra, as the
/// rank of the Gram matrix of `P`.
///
/// The Gram matrix is block diagonal: `⟨P w_a, w_b⟩ = 0` unless `w_b` is a
/// rearrangement of `w_a`. Each block is ranked separately with integer
/// entries `m! ⟨P w_a, w_b⟩`.
pub fn sym_component_dim_bruteforce(space: &GradedSpace, m: usize, n: u64, cap: usize) -> Result<usize> {
    let words = enumerate_words(space, m, n, cap)?;
    let mut blocks: BTreeMap<BasisWord, Vec<BasisWord>> = BTreeMap::new();
    for w in words {
        blocks.entry(w.orbit_key()).or_default().push(w);
    }
    let mut dim = 0;
    for block in blocks.values() {
        let index: BTreeMap<&BasisWord, usize> = block.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut gram = Matrix::<BigInt>::zeros(block.len(), block.len());
        for (a, w) in block.iter().enumerate() {
            for (pw, c) in project_scaled(space, w) {
                gram[(a, index[&pw])] = BigInt::from(c);
            }
        }
        dim += rank_integer(&gram);
    }
    Ok(dim)
}

/// Dimension of the `s`-th wedge power (odd degree) or symmetric power
/// (even degree) of a `dim`-dimensional space.
pub fn graded_power_dim(degree: u32, dim: usize, s: usize) -> BigUint {
    if degree % 2 == 1 {
        binomial(dim as u64, s as u64)
    } else {
        multichoose(dim as u64, s as u64)
    }
}

/// `dim` of the `(m, n)` component as a sum over multiplicity vectors
/// `(s_1, …, s_l)` with `Σ s_i = m` and `Σ p(i) s_i = n` of
/// `∏ dim H_i^{⋄ s_i}`.
pub fn sym_component_dim_closed(space: &GradedSpace, m: usize, n: u64) -> BigUint {
    fn rec(comps: &[Component], m: usize, n: u64) -> BigUint {
        let Some((first, rest)) = comps.split_first() else {
            return if m == 0 && n == 0 { BigUint::one() } else { BigUint::zero() };
        };
        let deg = u64::from(first.degree);
        let mut total = BigUint::zero();
        for s in 0..=m {
            let used = deg * s as u64;
            if used > n {
                break;
            }
            let here = graded_power_dim(first.degree, first.dim, s);
            if here.is_zero() {
                continue;
            }
            total += here * rec(rest, m - s, n - used);
        }
        total
    }
    rec(&space.components, m, n)
}

/// Whether the word lists all letters of component 0 first, then component
/// 1, and so on, with strictly increasing basis indices inside odd blocks
/// and non-decreasing ones inside even blocks.
pub fn is_block_sorted(space: &GradedSpace, word: &BasisWord) -> bool {
    word.0.windows(2).all(|pair| {
        let (a, b) = (pair[0], pair[1]);
        match a.component.cmp(&b.component) {
            core::cmp::Ordering::Less => true,
            core::cmp::Ordering::Greater => false,
            core::cmp::Ordering::Equal => {
                if space.components[a.component].is_odd() {
                    a.basis < b.basis
                } else {
                    a.basis <= b.basis
                }
            }
        }
    })
}

/// `‖P w‖²` for a block-sorted word, from the block structure:
/// `(r_1!⋯r_l!/m!) · ∏_j ‖⋄-monomial of block j‖²`, where a wedge of `r`
/// distinct orthonormal vectors has norm² `1/r!` and a symmetric monomial
/// with multiplicities `μ` has norm² `∏ μ!/r!`.
///
/// An odd block with a repeated letter gives 0. Words that are not block
/// sorted are rejected.
pub fn projected_norm_sq(space: &GradedSpace, word: &BasisWord) -> Result<BigRational> {
    word.validate(space)?;
    let mut sorted = word.clone();
    sorted.0.sort_unstable();
    // Only failure modes left after sorting are repeated odd letters.
    let repeated_odd = sorted
        .0
        .windows(2)
        .any(|p| p[0] == p[1] && space.components[p[0].component].is_odd());
    if repeated_odd {
        return Ok(BigRational::zero());
    }
    if !is_block_sorted(space, word) {
        return Err(Error::InvalidParameter("word is not block sorted".into()));
    }
    let m = word.len() as u64;
    let mut num = BigUint::one();
    let mut den = factorial(m);
    let mut start = 0;
    while start < word.0.len() {
        let comp = word.0[start].component;
        let end = start + word.0[start..].iter().take_while(|l| l.component == comp).count();
        let block = &word.0[start..end];
        let r = block.len() as u64;
        num *= factorial(r);
        // monomial norm²
        den *= factorial(r);
        if !space.components[comp].is_odd() {
            let mut i = 0;
            while i < block.len() {
                let run = block[i..].iter().take_while(|l| **l == block[i]).count();
                num *= factorial(run as u64);
                i += run;
            }
        }
        start = end;
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}
