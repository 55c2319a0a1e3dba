//! Finite lattices stored as cover digraphs with level-consistent numbering.
//!
//! Element `0` is the top. The level of an element is its longest distance
//! from the top, and ids are assigned so that a smaller level always means a
//! smaller id. Consequently every cover edge points from a smaller id to a
//! larger one and the bottom is the last element.

mod partial;
mod predicates;

use std::ops::Range;

use crate::error::{Error, Result};

pub use partial::PartialLattice;

/// A set of element ids, one bit per element.
pub type Mask = u64;

/// Largest supported element count.
pub const MAX_ELEMENTS: usize = 62;

#[inline]
pub(crate) fn bit(i: usize) -> Mask {
    1 << i
}

/// Mask with the low `n` bits set.
#[inline]
pub(crate) fn low_mask(n: usize) -> Mask {
    if n >= 64 {
        !0
    } else {
        (1 << n) - 1
    }
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(Mask);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub fn bits(mask: Mask) -> Bits {
    Bits(mask)
}

/// A finite bounded poset given by its cover relation.
///
/// Every value of this type has a unique top and bottom and level-consistent
/// numbering. Values built by the generator are lattices; values decoded from
/// files or built by the oracle may not be, which is what
/// [`Lattice::is_lattice`] is for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    upper: Vec<Mask>,
    lower: Vec<Mask>,
    level: Vec<u8>,
    level_start: Vec<usize>,
}

impl Lattice {
    /// Assembles a lattice from cover masks and levels that already satisfy
    /// the numbering invariant.
    pub(crate) fn from_parts(upper: Vec<Mask>, lower: Vec<Mask>, level: Vec<u8>) -> Lattice {
        debug_assert!(level.windows(2).all(|w| w[0] <= w[1]));
        let levels = level.last().map_or(0, |&l| l as usize + 1);
        let mut level_start = vec![0; levels + 1];
        for &l in &level {
            level_start[l as usize + 1] += 1;
        }
        for k in 1..=levels {
            level_start[k] += level_start[k - 1];
        }
        Lattice {
            upper,
            lower,
            level,
            level_start,
        }
    }

    /// Builds a bounded poset from its cover arcs `(a, b)`, meaning `a`
    /// covers `b`, on vertices `0..n`.
    ///
    /// Vertices are renumbered by `(level, original id)`. The arcs must form
    /// an acyclic transitive reduction with one maximal and one minimal
    /// element. The lattice property itself is not checked.
    pub fn from_covers(n: usize, arcs: &[(usize, usize)]) -> Result<Lattice> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::SizeOutOfRange(n, 1, MAX_ELEMENTS));
        }
        let mut down = vec![0 as Mask; n];
        let mut up = vec![0 as Mask; n];
        for &(a, b) in arcs {
            if a >= n || b >= n {
                return Err(Error::BadVertex(a, b, n));
            }
            if a == b {
                return Err(Error::Cyclic);
            }
            down[a] |= bit(b);
            up[b] |= bit(a);
        }

        // Kahn's algorithm from the maximal elements downwards.
        let mut indeg: Vec<u32> = up.iter().map(|m| m.count_ones()).collect();
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let tops = ready.len();
        while let Some(v) = ready.pop() {
            order.push(v);
            for w in bits(down[v]) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Cyclic);
        }
        let bottoms = (0..n).filter(|&v| down[v] == 0).count();
        if tops != 1 || bottoms != 1 {
            return Err(Error::NotBounded { tops, bottoms });
        }

        // Strict down-sets, bottom-up.
        let mut reach = vec![0 as Mask; n];
        for &v in order.iter().rev() {
            let mut r = 0;
            for w in bits(down[v]) {
                r |= bit(w) | reach[w];
            }
            reach[v] = r;
        }
        for a in 0..n {
            for b in bits(down[a]) {
                if bits(down[a] & !bit(b)).any(|c| reach[c] & bit(b) != 0) {
                    return Err(Error::NotCoverRelation(a, b));
                }
            }
        }

        let mut level = vec![0usize; n];
        for &v in &order {
            for w in bits(down[v]) {
                level[w] = level[w].max(level[v] + 1);
            }
        }
        let mut by_level: Vec<usize> = (0..n).collect();
        by_level.sort_by_key(|&v| (level[v], v));
        let mut new_id = vec![0; n];
        for (i, &v) in by_level.iter().enumerate() {
            new_id[v] = i;
        }
        let remap = |m: Mask| bits(m).fold(0, |acc, v| acc | bit(new_id[v]));
        let upper = by_level.iter().map(|&v| remap(up[v])).collect();
        let lower = by_level.iter().map(|&v| remap(down[v])).collect();
        let lv = by_level.iter().map(|&v| level[v] as u8).collect();
        Ok(Lattice::from_parts(upper, lower, lv))
    }

    /// The initial lattice `M_j`: a top, `j` coatoms and a bottom.
    pub fn new_initial(j: usize, max_size: usize) -> Result<Lattice> {
        let max = max_size.min(MAX_ELEMENTS).saturating_sub(2);
        if j < 2 || j > max {
            return Err(Error::BadInitial { j, max });
        }
        Ok(Lattice::m(j))
    }

    /// `M_j` without a size bound; `m(1)` is the 3-chain and `m(0)` the 2-chain.
    pub fn m(j: usize) -> Lattice {
        let n = j + 2;
        let bottom = n - 1;
        let mut arcs: Vec<_> = (1..=j).flat_map(|c| [(0, c), (c, bottom)]).collect();
        if j == 0 {
            arcs.push((0, 1));
        }
        Lattice::from_covers(n, &arcs).expect("M_j is well formed")
    }

    /// The single-element lattice.
    pub fn point() -> Lattice {
        Lattice::from_parts(vec![0], vec![0], vec![0])
    }

    /// The chain with `n` elements.
    pub fn chain(n: usize) -> Lattice {
        assert!((1..=MAX_ELEMENTS).contains(&n));
        let arcs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Lattice::from_covers(n, &arcs).expect("chain is well formed")
    }

    /// The Boolean lattice of all subsets of a `rank`-element set.
    pub fn boolean(rank: usize) -> Lattice {
        assert!(rank <= 5);
        let n = 1 << rank;
        // Vertex v is the complement of subset v, so vertex 0 is the top.
        let mut arcs = Vec::new();
        for v in 0..n {
            for i in 0..rank {
                if v & (1 << i) == 0 {
                    arcs.push((v, v | (1 << i)));
                }
            }
        }
        Lattice::from_covers(n, &arcs).expect("Boolean lattice is well formed")
    }

    pub fn size(&self) -> usize {
        self.level.len()
    }

    /// Level of the bottom element.
    pub fn length(&self) -> usize {
        self.level[self.size() - 1] as usize
    }

    pub fn num_levels(&self) -> usize {
        self.level_start.len() - 1
    }

    pub fn top(&self) -> usize {
        0
    }

    pub fn bottom(&self) -> usize {
        self.size() - 1
    }

    pub fn level(&self, i: usize) -> usize {
        self.level[i] as usize
    }

    pub fn levels(&self) -> &[u8] {
        &self.level
    }

    /// Element ids on level `k`.
    pub fn level_range(&self, k: usize) -> Range<usize> {
        self.level_start[k]..self.level_start[k + 1]
    }

    pub fn level_mask(&self, k: usize) -> Mask {
        let r = self.level_range(k);
        low_mask(r.end) & !low_mask(r.start)
    }

    pub fn level_width(&self, k: usize) -> usize {
        self.level_range(k).len()
    }

    /// Elements covering `i`.
    pub fn upper_cover(&self, i: usize) -> Mask {
        self.upper[i]
    }

    /// Elements covered by `i`.
    pub fn lower_cover(&self, i: usize) -> Mask {
        self.lower[i]
    }

    pub fn up_degree(&self, i: usize) -> usize {
        self.upper[i].count_ones() as usize
    }

    pub fn down_degree(&self, i: usize) -> usize {
        self.lower[i].count_ones() as usize
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Mask {
        if self.size() == 1 {
            0
        } else {
            self.upper[self.bottom()]
        }
    }

    /// Elements covered by the top.
    pub fn coatoms(&self) -> Mask {
        self.lower[0]
    }

    pub(crate) fn upper_masks(&self) -> &[Mask] {
        &self.upper
    }

    pub(crate) fn lower_masks(&self) -> &[Mask] {
        &self.lower
    }

    /// Cover arcs `(a, b)` with `a` covering `b`, sorted.
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .flat_map(|a| bits(self.lower[a]).map(move |b| (a, b)))
            .collect()
    }

    /// Reflexive up-sets: `above[i]` holds every `j >= i`.
    pub fn above_sets(&self) -> Vec<Mask> {
        let mut above = vec![0; self.size()];
        for i in 0..self.size() {
            let mut m = bit(i);
            for p in bits(self.upper[i]) {
                m |= above[p];
            }
            above[i] = m;
        }
        above
    }

    /// Reflexive down-sets: `below[i]` holds every `j <= i`.
    pub fn below_sets(&self) -> Vec<Mask> {
        let mut below = vec![0; self.size()];
        for i in (0..self.size()).rev() {
            let mut m = bit(i);
            for c in bits(self.lower[i]) {
                m |= below[c];
            }
            below[i] = m;
        }
        below
    }

    /// Least upper bound of `a` and `b`, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let above = self.above_sets();
        least_of(&above, above[a] & above[b])
    }

    /// Greatest lower bound of `a` and `b`, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let below = self.below_sets();
        least_of(&below, below[a] & below[b])
    }

    /// The order-reversed lattice, renumbered by levels.
    pub fn dual(&self) -> Lattice {
        let arcs: Vec<_> = self.cover_edges().into_iter().map(|(a, b)| (b, a)).collect();
        Lattice::from_covers(self.size(), &arcs).expect("dual of a bounded poset is bounded")
    }

    /// Applies a relabeling (`perm[old] = new`) and renumbers by levels.
    pub fn relabel(&self, perm: &[usize]) -> Result<Lattice> {
        let arcs: Vec<_> = self
            .cover_edges()
            .into_iter()
            .map(|(a, b)| (perm[a], perm[b]))
            .collect();
        Lattice::from_covers(self.size(), &arcs)
    }

    /// Vertical sum: `other` is hung below `self`, identifying the bottom
    /// of `self` with the top of `other`.
    pub fn vertical_sum(&self, other: &Lattice) -> Lattice {
        let offset = self.size() - 1;
        let mut arcs = self.cover_edges();
        arcs.extend(
            other
                .cover_edges()
                .into_iter()
                .map(|(a, b)| (a + offset, b + offset)),
        );
        Lattice::from_covers(self.size() + other.size() - 1, &arcs)
            .expect("vertical sum of bounded posets is bounded")
    }
}

/// The element `u` of `set` with `closure[u] == set`, i.e. the least element
/// of an up-closed (or down-closed) set.
pub(crate) fn least_of(closure: &[Mask], set: Mask) -> Option<usize> {
    bits(set).find(|&u| closure[u] == set)
}
