//! Subsets of a small ground set `[m] = {1, ..., m}` packed into one machine
//! word, explicit permutations of the ground set, and exact integer sequences.
//!
//! Element `x` of the ground set lives in bit `x - 1`. Every vertex of every
//! graph family in this crate is a [`Block`], and the canonical vertex order
//! is ascending bitmask value (colexicographic order within one block size).

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{param, Error, Result};

/// Largest supported ground set size; one bit per element in a `u64`.
pub const MAX_GROUND: usize = 63;

/// Size `m` of the ground set `[m]`, `1 <= m <= 63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSize(u8);

impl GroundSize {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_GROUND {
            return param(format!("ground size {m} outside 1..={MAX_GROUND}"));
        }
        Ok(GroundSize(m as u8))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Bitmask of the whole ground set.
    #[inline]
    pub fn full_mask(self) -> u64 {
        (1u64 << self.0) - 1
    }
}

impl fmt::Display for GroundSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// A subset of `[m]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    bits: u64,
    ground: GroundSize,
}

impl Block {
    pub fn new(ground: GroundSize, bits: u64) -> Result<Self> {
        if bits & !ground.full_mask() != 0 {
            return param(format!("bitmask {bits:#x} exceeds ground set {ground}"));
        }
        Ok(Block { bits, ground })
    }

    /// Builds a block from 1-based elements. Duplicates are ignored.
    pub fn from_elements(ground: GroundSize, elements: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &x in elements {
            if x == 0 || x > ground.get() {
                return param(format!("element {x} not in {ground}"));
            }
            bits |= 1 << (x - 1);
        }
        Ok(Block { bits, ground })
    }

    pub(crate) fn from_bits_unchecked(ground: GroundSize, bits: u64) -> Self {
        debug_assert_eq!(bits & !ground.full_mask(), 0);
        Block { bits, ground }
    }

    pub fn empty(ground: GroundSize) -> Self {
        Block { bits: 0, ground }
    }

    pub fn full(ground: GroundSize) -> Self {
        Block {
            bits: ground.full_mask(),
            ground,
        }
    }

    /// The block `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
    pub fn range(ground: GroundSize, lo: usize, hi: usize) -> Result<Self> {
        let elems: Vec<usize> = (lo..=hi).collect();
        Block::from_elements(ground, &elems)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ground(self) -> GroundSize {
        self.ground
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x >= 1 && x <= self.ground.get() && self.bits & (1 << (x - 1)) != 0
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(tz + 1)
            }
        })
    }

    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The only element, if the block is a singleton.
    pub fn single_element(self) -> Option<usize> {
        (self.len() == 1).then(|| self.bits.trailing_zeros() as usize + 1)
    }

    pub fn min_element(self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize + 1)
    }

    pub fn max_element(self) -> Option<usize> {
        (self.bits != 0).then(|| 64 - self.bits.leading_zeros() as usize)
    }

    #[inline]
    pub fn union(self, other: Block) -> Block {
        debug_assert_eq!(self.ground, other.ground);
        Block {
            bits: self.bits | other.bits,
            ground: self.ground,
        }
    }

    #[inline]
    pub fn intersection(self, other: Block) -> Block {
        debug_assert_eq!(self.ground, other.ground);
        Block {
            bits: self.bits & other.bits,
            ground: self.ground,
        }
    }

    #[inline]
    pub fn difference(self, other: Block) -> Block {
        debug_assert_eq!(self.ground, other.ground);
        Block {
            bits: self.bits & !other.bits,
            ground: self.ground,
        }
    }

    #[inline]
    pub fn symmetric_difference(self, other: Block) -> Block {
        debug_assert_eq!(self.ground, other.ground);
        Block {
            bits: self.bits ^ other.bits,
            ground: self.ground,
        }
    }

    #[inline]
    pub fn is_subset(self, other: Block) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Block) -> bool {
        self.bits & other.bits == 0
    }

    /// `self ∪ {x}`.
    pub fn with(self, x: usize) -> Result<Block> {
        Ok(self.union(Block::from_elements(self.ground, &[x])?))
    }

    /// `self − {x}`.
    pub fn without(self, x: usize) -> Block {
        if x == 0 || x > self.ground.get() {
            return self;
        }
        Block {
            bits: self.bits & !(1 << (x - 1)),
            ground: self.ground,
        }
    }

    /// `[m] − self`.
    #[inline]
    pub fn complement(self) -> Block {
        Block {
            bits: !self.bits & self.ground.full_mask(),
            ground: self.ground,
        }
    }

    /// The same elements viewed inside another ground set.
    pub fn regrounded(self, ground: GroundSize) -> Result<Block> {
        Block::new(ground, self.bits)
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Block {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.bits, self.ground).cmp(&(other.bits, other.ground))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All `k`-subsets of `[m]` in ascending bitmask (colex) order.
pub fn k_blocks(m: GroundSize, k: usize) -> Result<Vec<Block>> {
    let n = m.get();
    if k > n {
        return param(format!("block size {k} exceeds ground size {n}"));
    }
    let mut out = Vec::new();
    if k == 0 {
        out.push(Block::empty(m));
        return Ok(out);
    }
    let last = m.full_mask() & !((1u64 << (n - k)) - 1);
    let mut bits = (1u64 << k) - 1;
    loop {
        out.push(Block::from_bits_unchecked(m, bits));
        if bits == last {
            break;
        }
        // Gosper's hack: next word with the same popcount.
        let c = bits & bits.wrapping_neg();
        let r = bits + c;
        bits = (((r ^ bits) >> 2) / c) | r;
    }
    Ok(out)
}

/// All `k`-subsets of the elements of `within`, ascending bitmask order.
pub fn k_subsets_of(within: Block, k: usize) -> Vec<Block> {
    let elems = within.elements();
    if k > elems.len() {
        return Vec::new();
    }
    if k == 0 {
        return vec![Block::empty(within.ground())];
    }
    let local = GroundSize::new(elems.len()).expect("nonempty subset of a valid ground");
    k_blocks(local, k)
        .expect("k checked against ground")
        .into_iter()
        .map(|b| {
            let bits = b.iter().fold(0u64, |acc, i| acc | 1 << (elems[i - 1] - 1));
            Block::from_bits_unchecked(within.ground(), bits)
        })
        .collect()
}

/// A bijection of `[m]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    // images[i] = p(i + 1) - 1
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(m: GroundSize) -> Self {
        Perm {
            images: (0..m.get() as u8).collect(),
        }
    }

    /// `images[i]` is the 1-based image of element `i + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = GroundSize::new(images.len())?;
        let mut seen = vec![false; m.get()];
        for &y in images {
            if y == 0 || y > m.get() || seen[y - 1] {
                return param(format!("{images:?} is not a permutation of [{}]", m.get()));
            }
            seen[y - 1] = true;
        }
        Ok(Perm {
            images: images.iter().map(|&y| (y - 1) as u8).collect(),
        })
    }

    /// The transposition `(a, b)`; identity when `a == b`.
    pub fn transposition(m: GroundSize, a: usize, b: usize) -> Result<Self> {
        Perm::cycle(m, &[a, b])
    }

    /// The cycle `(c_1, c_2, ..., c_r)`: `c_i -> c_{i+1}`, `c_r -> c_1`.
    pub fn cycle(m: GroundSize, cycle: &[usize]) -> Result<Self> {
        let mut p = Perm::identity(m);
        if cycle.len() == 2 && cycle[0] == cycle[1] {
            Block::from_elements(m, cycle)?;
            return Ok(p);
        }
        let support = Block::from_elements(m, cycle)?;
        if support.len() != cycle.len() {
            return param(format!("cycle {cycle:?} repeats an element"));
        }
        for (i, &c) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            p.images[c - 1] = (next - 1) as u8;
        }
        Ok(p)
    }

    /// The rotation `x -> x + 1 (mod m)` on `[m]`, i.e. `(1, 2, ..., m)`.
    pub fn rotation(m: GroundSize) -> Self {
        let n = m.get();
        Perm {
            images: (0..n).map(|i| ((i + 1) % n) as u8).collect(),
        }
    }

    /// The product of transpositions pairing `from[i]` with `to[i]`.
    /// The pairs must be pairwise disjoint.
    pub fn swap_pairs(m: GroundSize, from: &[usize], to: &[usize]) -> Result<Self> {
        if from.len() != to.len() {
            return param("transposition lists differ in length");
        }
        let mut all = from.to_vec();
        all.extend_from_slice(to);
        let support = Block::from_elements(m, &all)?;
        if support.len() != all.len() {
            return param("transpositions are not disjoint");
        }
        let mut p = Perm::identity(m);
        for (&a, &b) in from.iter().zip(to) {
            p.images.swap(a - 1, b - 1);
        }
        Ok(p)
    }

    pub fn ground(&self) -> GroundSize {
        GroundSize(self.images.len() as u8)
    }

    /// Image of the 1-based element `x`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.images.len(), other.images.len(), "ground sets differ");
        Perm {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &y) in self.images.iter().enumerate() {
            inv[y as usize] = i as u8;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &y)| i == y as usize)
    }

    /// 1-based images, `result[i] = p(i + 1)`.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y as usize + 1).collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images())
    }
}

/// `{ p(x) : x ∈ b }`.
pub fn apply_perm(p: &Perm, b: Block) -> Block {
    assert_eq!(
        p.ground(),
        b.ground(),
        "permutation and block on different ground sets"
    );
    let bits = b.iter().fold(0u64, |acc, x| acc | 1 << (p.apply(x) - 1));
    Block::from_bits_unchecked(b.ground(), bits)
}

/// `[m] − b`.
pub fn complement(b: Block) -> Block {
    b.complement()
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `c_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// `4 / (2n − 4) · C(2n − 4, n)` as an exact rational, `n >= 3`.
pub fn fourth_convolution_ratio(n: u64) -> Result<BigRational> {
    if n < 3 {
        return param(format!(
            "fourth Catalan convolution is defined for n >= 3, got {n}"
        ));
    }
    let numer = BigRational::from_integer((binomial(2 * n - 4, n) * 4u32).into());
    let denom = BigRational::from_integer((2 * n - 4).into());
    Ok(numer / denom)
}

/// The fourth convolution of the Catalan numbers, `C_n^(4)`; zero at `n = 3`.
pub fn catalan_fourth_convolution(n: u64) -> Result<BigUint> {
    let r = fourth_convolution_ratio(n)?;
    if !r.is_integer() {
        return Err(Error::NonIntegral(format!("C_{n}^(4) = {r}")));
    }
    r.to_integer()
        .to_biguint()
        .ok_or_else(|| Error::NonIntegral(format!("C_{n}^(4) = {r} is negative")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(m: usize) -> GroundSize {
        GroundSize::new(m).unwrap()
    }

    fn blk(m: usize, e: &[usize]) -> Block {
        Block::from_elements(g(m), e).unwrap()
    }

    fn brute_force_blocks(m: usize, k: usize) -> Vec<u64> {
        (0u64..1 << m)
            .filter(|b| b.count_ones() as usize == k)
            .collect()
    }

    fn catalan_by_recurrence(n: usize) -> Vec<BigUint> {
        let mut c = vec![BigUint::one()];
        for i in 0..n {
            let next = (0..=i).map(|j| &c[j] * &c[i - j]).sum();
            c.push(next);
        }
        c
    }

    #[test]
    fn ground_size_limits() {
        assert!(GroundSize::new(0).is_err());
        assert!(GroundSize::new(64).is_err());
        assert_eq!(GroundSize::new(63).unwrap().full_mask(), u64::MAX >> 1);
    }

    #[test]
    fn k_blocks_examples() {
        let singles = k_blocks(g(3), 1).unwrap();
        assert_eq!(singles, vec![blk(3, &[1]), blk(3, &[2]), blk(3, &[3])]);
        assert_eq!(k_blocks(g(5), 2).unwrap().len(), 10);
        let b73 = k_blocks(g(7), 3).unwrap();
        assert_eq!(b73.len(), 35);
        assert_eq!(b73[0], blk(7, &[1, 2, 3]));
        let bits: Vec<u64> = b73.iter().map(|b| b.bits()).collect();
        assert_eq!(bits, brute_force_blocks(7, 3));
        assert!(k_blocks(g(3), 4).is_err());
        assert_eq!(k_blocks(g(4), 0).unwrap(), vec![Block::empty(g(4))]);
        assert_eq!(k_blocks(g(4), 4).unwrap(), vec![Block::full(g(4))]);
    }

    #[test]
    fn subsets_within_a_block() {
        let within = blk(9, &[2, 5, 9]);
        let subs = k_subsets_of(within, 2);
        assert_eq!(
            subs,
            vec![blk(9, &[2, 5]), blk(9, &[2, 9]), blk(9, &[5, 9])]
        );
        assert_eq!(k_subsets_of(within, 0), vec![Block::empty(g(9))]);
        assert!(k_subsets_of(within, 4).is_empty());
    }

    #[test]
    fn apply_perm_examples() {
        let t = Perm::transposition(g(5), 1, 3).unwrap();
        assert_eq!(apply_perm(&t, blk(5, &[1, 2])), blk(5, &[2, 3]));
        let id = Perm::identity(g(5));
        assert_eq!(apply_perm(&id, blk(5, &[2, 4])), blk(5, &[2, 4]));
        let sigma = Perm::cycle(g(5), &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(sigma, Perm::rotation(g(5)));
        assert_eq!(apply_perm(&sigma, blk(5, &[1, 5])), blk(5, &[1, 2]));
    }

    #[test]
    fn perm_validation() {
        assert!(Perm::from_images(&[1, 1, 3]).is_err());
        assert!(Perm::from_images(&[1, 2, 4]).is_err());
        assert!(Perm::cycle(g(4), &[1, 2, 1]).is_err());
        assert!(Perm::swap_pairs(g(5), &[1, 2], &[2, 3]).is_err());
        let p = Perm::swap_pairs(g(5), &[1, 2], &[4, 5]).unwrap();
        assert_eq!(p.images(), vec![4, 5, 3, 1, 2]);
        assert!(p.compose(&p).is_identity());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(blk(5, &[1, 2])), blk(5, &[3, 4, 5]));
        assert_eq!(complement(Block::empty(g(3))), blk(3, &[1, 2, 3]));
        assert_eq!(complement(blk(5, &[1, 3, 5])), blk(5, &[2, 4]));
    }

    #[test]
    fn block_accessors() {
        let b = blk(9, &[2, 7]);
        assert_eq!(b.to_string(), "{2,7}");
        assert_eq!(b.min_element(), Some(2));
        assert_eq!(b.max_element(), Some(7));
        assert_eq!(b.single_element(), None);
        assert_eq!(b.without(7).single_element(), Some(2));
        assert_eq!(b.with(3).unwrap(), blk(9, &[2, 3, 7]));
        assert!(b.with(10).is_err());
        assert!(Block::new(g(3), 0b1000).is_err());
        assert_eq!(Block::range(g(9), 6, 9).unwrap(), blk(9, &[6, 7, 8, 9]));
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(3), BigUint::from(5u32));
        // frozen from the convolution recurrence oracle below
        assert_eq!(catalan(10), BigUint::from(16796u32));
        let oracle = catalan_by_recurrence(30);
        for (n, c) in oracle.iter().enumerate() {
            assert_eq!(&catalan(n as u64), c, "c_{n}");
        }
    }

    #[test]
    fn catalan_times_successor_is_central_binomial() {
        for n in 0..=30u64 {
            assert_eq!(catalan(n) * (n + 1), binomial(2 * n, n));
        }
    }

    #[test]
    fn fourth_convolution_examples() {
        assert_eq!(catalan_fourth_convolution(3).unwrap(), BigUint::zero());
        assert_eq!(catalan_fourth_convolution(4).unwrap(), BigUint::one());
        assert_eq!(catalan_fourth_convolution(5).unwrap(), BigUint::from(4u32));
        assert_eq!(catalan_fourth_convolution(6).unwrap(), BigUint::from(14u32));
        assert!(catalan_fourth_convolution(2).is_err());
    }

    #[test]
    fn fourth_convolution_matches_vertex_edge_accounting() {
        // k = (n-3) / ((2n-1)(2n-3)) * C(2n-1, n-1), the orbit count forced by
        // a 3-regular result after removing k independent orbits.
        for n in 3..=40u64 {
            let direct = BigRational::from_integer((binomial(2 * n - 1, n - 1) * (n - 3)).into())
                / BigRational::from_integer(((2 * n - 1) * (2 * n - 3)).into());
            assert_eq!(fourth_convolution_ratio(n).unwrap(), direct, "n = {n}");
            assert!(direct.is_integer(), "n = {n}");
        }
    }

    fn arb_perm(m: usize) -> impl Strategy<Value = Perm> {
        Just((1..=m).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(&v).unwrap())
    }

    proptest! {
        #[test]
        fn k_blocks_are_distinct_and_sized(m in 1usize..=12, k in 0usize..=12) {
            prop_assume!(k <= m);
            let blocks = k_blocks(g(m), k).unwrap();
            prop_assert_eq!(BigUint::from(blocks.len()), binomial(m as u64, k as u64));
            prop_assert!(blocks.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(blocks.iter().all(|b| b.len() == k));
        }

        #[test]
        fn apply_perm_respects_composition(
            (p, q) in (arb_perm(9), arb_perm(9)),
            bits in 0u64..512,
        ) {
            let b = Block::new(g(9), bits).unwrap();
            prop_assert_eq!(apply_perm(&p.compose(&q), b), apply_perm(&p, apply_perm(&q, b)));
            prop_assert_eq!(apply_perm(&p, b).len(), b.len());
            prop_assert_eq!(apply_perm(&p.inverse(), apply_perm(&p, b)), b);
        }

        #[test]
        fn complement_is_an_involution(m in 1usize..=63, raw in any::<u64>()) {
            let gs = g(m);
            let b = Block::new(gs, raw & gs.full_mask()).unwrap();
            prop_assert_eq!(b.complement().complement(), b);
            prop_assert_eq!(b.complement().len(), m - b.len());
        }
    }
}
