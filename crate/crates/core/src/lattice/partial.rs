use super::{bit, bits, low_mask, Lattice, Mask, MAX_ELEMENTS};

const CAP: usize = 64;

/// A lattice under construction: complete levels `0..frontier` plus the
/// elements created so far on the frontier level, with the bottom left
/// implicit.
///
/// Joins are represented through reflexive up-sets. Because numbering is
/// level-consistent, the element with the largest id in an intersection of
/// up-sets is one of its minimal elements, so the join of `a` and `b` exists
/// exactly when that element's up-set equals the intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialLattice {
    max_size: usize,
    n: usize,
    frontier: usize,
    level_start: [u8; CAP],
    level: [u8; CAP],
    upper: [Mask; CAP],
    lower: [Mask; CAP],
    above: [Mask; CAP],
}

impl PartialLattice {
    /// Drops the bottom of a finished lattice and opens a new level below
    /// its atoms.
    pub fn from_mother(mother: &Lattice, max_size: usize) -> PartialLattice {
        assert!(mother.size() >= 2 && max_size <= MAX_ELEMENTS);
        let n = mother.size() - 1;
        let frontier = mother.length();
        let mut pl = PartialLattice {
            max_size,
            n,
            frontier,
            level_start: [0; CAP],
            level: [0; CAP],
            upper: [0; CAP],
            lower: [0; CAP],
            above: [0; CAP],
        };
        for k in 0..=frontier {
            pl.level_start[k] = mother.level_start[k] as u8;
        }
        let bottom = bit(n);
        for i in 0..n {
            pl.level[i] = mother.level[i];
            pl.upper[i] = mother.upper[i];
            pl.lower[i] = mother.lower[i] & !bottom;
            let mut a = bit(i);
            for p in bits(mother.upper[i]) {
                a |= pl.above[p];
            }
            pl.above[i] = a;
        }
        pl
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Number of elements, not counting the implicit bottom.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn frontier_level(&self) -> usize {
        self.frontier
    }

    /// First id on the frontier level.
    pub fn frontier_start(&self) -> usize {
        self.level_start[self.frontier] as usize
    }

    /// Elements already created on the frontier level.
    pub fn frontier_mask(&self) -> Mask {
        low_mask(self.n) & !low_mask(self.frontier_start())
    }

    pub fn frontier_len(&self) -> usize {
        self.n - self.frontier_start()
    }

    /// The level directly above the frontier, whose elements receive the
    /// new covers.
    pub fn parent_level_mask(&self) -> Mask {
        let start = self.level_start[self.frontier - 1] as usize;
        low_mask(self.frontier_start()) & !low_mask(start)
    }

    pub fn level_of(&self, i: usize) -> usize {
        self.level[i] as usize
    }

    pub fn upper_cover(&self, i: usize) -> Mask {
        self.upper[i]
    }

    pub fn lower_cover(&self, i: usize) -> Mask {
        self.lower[i]
    }

    pub fn up_set(&self, i: usize) -> Mask {
        self.above[i]
    }

    /// Join of two existing elements.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let u = self.above[a] & self.above[b];
        let m = 63 - u.leading_zeros() as usize;
        debug_assert_eq!(self.above[m], u, "join-uniqueness violated");
        m
    }

    /// Whether a new element below exactly the elements of `cover` keeps
    /// every pair of elements with a unique minimal common upper bound.
    #[inline]
    pub fn can_add(&self, cover: Mask) -> bool {
        debug_assert!(cover != 0 && cover & !self.parent_level_mask() == 0);
        debug_assert!(self.n + 2 <= self.max_size);
        let mut up = 0;
        for a in bits(cover) {
            up |= self.above[a];
        }
        for y in bits(low_mask(self.n) & !up) {
            let u = up & self.above[y];
            let m = 63 - u.leading_zeros() as usize;
            if self.above[m] != u {
                return false;
            }
        }
        true
    }

    /// Appends a new frontier element with upper cover `cover`.
    #[inline]
    pub fn add_element(&mut self, cover: Mask) {
        let x = self.n;
        debug_assert!(x + 1 < CAP);
        let mut up = bit(x);
        for a in bits(cover) {
            up |= self.above[a];
            self.lower[a] |= bit(x);
        }
        self.level[x] = self.frontier as u8;
        self.upper[x] = cover;
        self.lower[x] = 0;
        self.above[x] = up;
        self.n += 1;
    }

    /// Reverses the most recent [`add_element`](Self::add_element).
    #[inline]
    pub fn remove_last(&mut self) {
        debug_assert!(self.frontier_len() > 0);
        let x = self.n - 1;
        for a in bits(self.upper[x]) {
            self.lower[a] &= !bit(x);
        }
        self.level[x] = 0;
        self.upper[x] = 0;
        self.above[x] = 0;
        self.n = x;
    }

    /// Elements of the parent level that have no frontier child yet.
    pub fn uncovered_parents(&self) -> Mask {
        bits(self.parent_level_mask())
            .filter(|&a| self.lower[a] == 0)
            .fold(0, |acc, a| acc | bit(a))
    }

    /// Closes the frontier level with a bottom element, provided every parent
    /// has a child and the level has at least two elements.
    pub fn complete_level(&self) -> Option<Lattice> {
        if self.frontier_len() < 2 || self.uncovered_parents() != 0 {
            return None;
        }
        let n = self.n + 1;
        let bottom = self.n;
        let frontier = self.frontier_mask();
        let mut upper = self.upper[..n].to_vec();
        let mut lower = self.lower[..n].to_vec();
        let mut level = self.level[..n].to_vec();
        upper[bottom] = frontier;
        lower[bottom] = 0;
        level[bottom] = self.frontier as u8 + 1;
        for f in bits(frontier) {
            lower[f] = bit(bottom);
        }
        Some(Lattice::from_parts(upper, lower, level))
    }

    /// Recomputes every up-set from the cover sets and compares it with the
    /// incrementally maintained ones.
    pub fn joins_consistent(&self) -> bool {
        let mut fresh = [0 as Mask; CAP];
        for i in 0..self.n {
            let mut a = bit(i);
            for p in bits(self.upper[i]) {
                a |= fresh[p];
            }
            fresh[i] = a;
        }
        fresh[..self.n] == self.above[..self.n]
            && (0..self.n).all(|i| {
                bits(self.upper[i]).all(|p| self.lower[p] & bit(i) != 0)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force lattice test of the structure closed with a bottom.
    fn closes_to_lattice(pl: &PartialLattice) -> bool {
        let n = pl.size();
        let mut arcs = Vec::new();
        for i in 0..n {
            for p in bits(pl.upper_cover(i)) {
                arcs.push((p, i));
            }
            if pl.lower_cover(i) == 0 {
                arcs.push((i, n));
            }
        }
        Lattice::from_covers(n + 1, &arcs).unwrap().is_lattice()
    }

    #[test]
    fn first_element_always_fits() {
        let pl = PartialLattice::from_mother(&Lattice::m(2), 8);
        assert_eq!(pl.frontier_level(), 2);
        assert_eq!(pl.parent_level_mask(), 0b110);
        assert!(pl.can_add(0b110));
    }

    #[test]
    fn duplicated_pair_cover_rejected() {
        let mut pl = PartialLattice::from_mother(&Lattice::m(2), 8);
        pl.add_element(0b110);
        assert!(!pl.can_add(0b110));
        assert!(pl.can_add(0b010));
    }

    #[test]
    fn add_remove_round_trip() {
        let mut pl = PartialLattice::from_mother(&Lattice::m(4), 12);
        let before = pl.clone();
        pl.add_element(0b00110);
        pl.add_element(0b01000);
        assert!(pl.joins_consistent());
        pl.remove_last();
        pl.remove_last();
        assert_eq!(pl, before);
    }

    #[test]
    fn m4_construction_step() {
        let mut pl = PartialLattice::from_mother(&Lattice::m(4), 12);
        // Coatoms of M_4 are ids 1..=4; covers {1,2}, {3}, {3}.
        for c in [0b0110, 0b1000, 0b1000] {
            assert!(pl.can_add(c));
            pl.add_element(c);
        }
        assert_eq!(pl.frontier_len(), 3);
        assert_eq!(pl.uncovered_parents(), 0b10000);
    }

    #[test]
    fn joins_after_add() {
        let mut pl = PartialLattice::from_mother(&Lattice::m(2), 8);
        pl.add_element(0b110);
        assert_eq!(pl.join(1, 2), 0);
        let x = pl.size() - 1;
        assert_eq!(pl.join(x, 1), 1);
        assert_eq!(pl.join(x, 2), 2);
        assert!(pl.joins_consistent());
    }

    #[test]
    fn shared_pair_blocked_by_wider_cover() {
        // Level 2 of the symmetric-box example under construction: the
        // coatoms 2..5 of the figure are ids 1..4 here. Element 11 is covered
        // by {3, 4, 5}; a further element covered by {4, 5} must be refused.
        let mut pl = PartialLattice::from_mother(&Lattice::m(4), 20);
        let c = |ids: &[usize]| ids.iter().fold(0 as Mask, |m, &i| m | bit(i - 1));
        for cover in [c(&[2]), c(&[2]), c(&[2]), c(&[3]), c(&[3]), c(&[3, 4, 5]), c(&[5])] {
            assert!(pl.can_add(cover));
            pl.add_element(cover);
        }
        let proposal = c(&[4, 5]);
        let mut probe = pl.clone();
        probe.add_element(proposal);
        assert!(!closes_to_lattice(&probe));
        assert!(!pl.can_add(proposal));
    }

    #[test]
    fn can_add_matches_brute_force_small() {
        // Every sequence of three covers under M_3 agrees with the brute-force test.
        let base = PartialLattice::from_mother(&Lattice::m(3), 10);
        let parents: Vec<Mask> = (1..8u64).map(|m| m << 1).collect();
        for &a in &parents {
            for &b in &parents {
                for &c in &parents {
                    let mut pl = base.clone();
                    let mut ok = true;
                    for cover in [a, b, c] {
                        let predicted = pl.can_add(cover);
                        let mut probe = pl.clone();
                        probe.add_element(cover);
                        assert_eq!(predicted, closes_to_lattice(&probe));
                        if !predicted {
                            ok = false;
                            break;
                        }
                        pl.add_element(cover);
                    }
                    if ok {
                        assert!(pl.joins_consistent());
                    }
                }
            }
        }
    }
}
