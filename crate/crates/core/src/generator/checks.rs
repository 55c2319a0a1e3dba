//! Family conditions applied while a level is built or when it is closed.

use crate::lattice::{bits, Lattice, Mask, PartialLattice};

fn pairs(mask: Mask) -> impl Iterator<Item = (usize, usize)> {
    bits(mask).flat_map(move |a| bits(mask & !((2 << a) - 1)).map(move |b| (a, b)))
}

/// Every two elements of a proposed upper cover share an upper cover.
pub fn semimodular_cover_ok(pl: &PartialLattice, cover: Mask) -> bool {
    pairs(cover).all(|(a, b)| pl.upper_cover(a) & pl.upper_cover(b) != 0)
}

/// Number of parent-level pairs with a common upper cover but no common
/// frontier child yet.
pub fn wanting_pairs(pl: &PartialLattice) -> usize {
    pairs(pl.parent_level_mask())
        .filter(|&(a, b)| {
            pl.upper_cover(a) & pl.upper_cover(b) != 0 && pl.lower_cover(a) & pl.lower_cover(b) == 0
        })
        .count()
}

/// Every parent-level pair with a common upper cover has a common child on
/// the frontier.
pub fn lower_semimodular_level_ok(pl: &PartialLattice) -> bool {
    wanting_pairs(pl) == 0
}

/// Every two atoms share an upper cover.
pub fn atoms_common_cover_ok(l: &Lattice) -> bool {
    pairs(l.atoms()).all(|(a, b)| l.upper_cover(a) & l.upper_cover(b) != 0)
}

/// Every element below the coatom level has at least two upper covers.
pub fn geometric_updegree_ok(l: &Lattice) -> bool {
    (0..l.size())
        .filter(|&i| l.level(i) >= 2)
        .all(|i| l.up_degree(i) >= 2)
}

/// Pairs still waiting for a common child, and how many more elements fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairBudget {
    pub pairs_wanting: usize,
    pub capacity_left: usize,
}

/// Whether `capacity_left` further elements of up-degree at most `r` cannot
/// give every wanting pair a common child.
pub fn pair_budget_prune(b: PairBudget, r: usize) -> bool {
    let per_element = r * r.saturating_sub(1) / 2;
    b.pairs_wanting > b.capacity_left * per_element
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::bit;

    fn cover(ids: &[usize]) -> Mask {
        // Figure numbering starts at 1.
        ids.iter().fold(0, |m, &i| m | bit(i - 1))
    }

    /// The pair-budget example: ten coatoms, two level-2 elements of
    /// up-degree three, lattices of at most 25 elements.
    fn budget_example() -> PartialLattice {
        let mut pl = PartialLattice::from_mother(&Lattice::m(10), 25);
        pl.add_element(cover(&[2, 3, 4]));
        pl.add_element(cover(&[4, 5, 6]));
        pl
    }

    #[test]
    fn budget_example_counts() {
        let pl = budget_example();
        assert_eq!(wanting_pairs(&pl), 39);
        assert!(!lower_semimodular_level_ok(&pl));
        let b = PairBudget {
            pairs_wanting: wanting_pairs(&pl),
            capacity_left: pl.max_size() - pl.size() - 1,
        };
        assert_eq!(b.capacity_left, 11);
        assert!(pair_budget_prune(b, 3));
    }

    #[test]
    fn budget_boundaries() {
        let b = PairBudget {
            pairs_wanting: 33,
            capacity_left: 11,
        };
        assert!(!pair_budget_prune(b, 3));
        let zero = PairBudget {
            pairs_wanting: 0,
            capacity_left: 0,
        };
        assert!(!pair_budget_prune(zero, 1));
        assert!(pair_budget_prune(PairBudget { pairs_wanting: 1, capacity_left: 9 }, 1));
    }

    #[test]
    fn semimodular_cover_cases() {
        let pl = budget_example();
        assert!(semimodular_cover_ok(&pl, cover(&[4])));
        assert!(semimodular_cover_ok(&pl, cover(&[4, 5])));

        // Level 3 under the symmetric-box example: 6 and 9 sit under 2 and 3.
        let mother = crate::canon::tests_support::box_example();
        let pl = PartialLattice::from_mother(&mother, 30);
        assert!(!semimodular_cover_ok(&pl, cover(&[6, 9])));
        assert!(semimodular_cover_ok(&pl, cover(&[6, 7])));
    }

    #[test]
    fn universal_child_satisfies_lower_semimodularity() {
        let mut pl = PartialLattice::from_mother(&Lattice::m(4), 12);
        pl.add_element(pl.parent_level_mask());
        assert!(lower_semimodular_level_ok(&pl));
    }

    #[test]
    fn boolean_middle_level() {
        // Reopen B_3's atom level and rebuild it: each coatom pair gets a child.
        let b3 = Lattice::boolean(3);
        let mut pl = PartialLattice::from_mother(&Lattice::m(3), 8);
        assert_eq!(wanting_pairs(&pl), 3);
        for c in [0b0110, 0b1010, 0b1100] {
            pl.add_element(c);
        }
        assert!(lower_semimodular_level_ok(&pl));
        let l = pl.complete_level().unwrap();
        assert_eq!(crate::canonical_form(&l), crate::canonical_form(&b3));
        assert!(geometric_updegree_ok(&b3));
        assert!(geometric_updegree_ok(&b3.dual()));
    }

    #[test]
    fn atoms_check_cases() {
        assert!(atoms_common_cover_ok(&Lattice::m(3)));
        assert!(atoms_common_cover_ok(&Lattice::chain(4)));
        // Two atoms under distinct coatoms, a 6-element graded lattice.
        let l = Lattice::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        assert!(!atoms_common_cover_ok(&l));
    }

    #[test]
    fn updegree_cases() {
        assert!(geometric_updegree_ok(&Lattice::m(5)));
        let l = Lattice::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        assert!(!geometric_updegree_ok(&l));
    }
}
