//! Definitional family predicates. These work from the cover relation and
//! the order ideals directly and are meant for checking, not for the search.

use super::{bits, least_of, Lattice, Mask};

impl Lattice {
    /// Every pair has a least upper bound and a greatest lower bound.
    pub fn is_lattice(&self) -> bool {
        let above = self.above_sets();
        let below = self.below_sets();
        let n = self.size();
        (0..n).all(|a| {
            (a + 1..n).all(|b| {
                least_of(&above, above[a] & above[b]).is_some()
                    && least_of(&below, below[a] & below[b]).is_some()
            })
        })
    }

    /// All maximal chains have the same length, i.e. every element is
    /// reached from the top by cover paths of a single length.
    pub fn is_graded(&self) -> bool {
        let n = self.size();
        let mut shortest = vec![usize::MAX; n];
        let mut longest = vec![0usize; n];
        shortest[0] = 0;
        for i in 1..n {
            for p in bits(self.upper[i]) {
                shortest[i] = shortest[i].min(shortest[p] + 1);
                longest[i] = longest[i].max(longest[p] + 1);
            }
        }
        shortest == longest
    }

    /// Whenever `a != b` both cover some `d`, some `c` covers both.
    pub fn is_semimodular(&self) -> bool {
        (0..self.size()).all(|d| {
            pairs(self.upper[d]).all(|(a, b)| self.upper[a] & self.upper[b] != 0)
        })
    }

    /// Whenever some `c` covers both `a != b`, they cover a common `d`.
    pub fn is_lower_semimodular(&self) -> bool {
        (0..self.size()).all(|c| {
            pairs(self.lower[c]).all(|(a, b)| self.lower[a] & self.lower[b] != 0)
        })
    }

    /// The modular law: `x <= z` implies `x ∨ (y ∧ z) = (x ∨ y) ∧ z`.
    pub fn is_modular(&self) -> bool {
        let Some((join, meet)) = self.operation_tables() else {
            return false;
        };
        let n = self.size();
        let below = self.below_sets();
        (0..n).all(|z| {
            bits(below[z]).all(|x| {
                (0..n).all(|y| join[x * n + meet[y * n + z]] == meet[join[x * n + y] * n + z])
            })
        })
    }

    /// Every element is the join of the atoms below it.
    pub fn is_atomistic(&self) -> bool {
        let above = self.above_sets();
        let below = self.below_sets();
        let atoms = self.atoms();
        (0..self.size()).all(|x| {
            let under = below[x] & atoms;
            if under == 0 {
                return x == self.bottom();
            }
            let bounds = bits(under).fold(!0 as Mask, |acc, a| acc & above[a]);
            least_of(&above, bounds) == Some(x)
        })
    }

    /// Every element is the meet of the coatoms above it.
    pub fn is_coatomistic(&self) -> bool {
        self.dual().is_atomistic()
    }

    pub fn is_geometric(&self) -> bool {
        self.is_semimodular() && self.is_atomistic()
    }

    /// No element other than top and bottom is comparable to every element.
    pub fn is_vertically_indecomposable(&self) -> bool {
        let n = self.size();
        if n <= 2 {
            return true;
        }
        let above = self.above_sets();
        let below = self.below_sets();
        let all = super::low_mask(n);
        (1..n - 1).all(|x| above[x] | below[x] != all)
    }

    /// Dense join and meet tables, or `None` if some pair lacks one.
    fn operation_tables(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.size();
        let above = self.above_sets();
        let below = self.below_sets();
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = least_of(&above, above[a] & above[b])?;
                meet[a * n + b] = least_of(&below, below[a] & below[b])?;
            }
        }
        Some((join, meet))
    }
}

/// Unordered pairs of distinct members of a mask.
pub(crate) fn pairs(mask: Mask) -> impl Iterator<Item = (usize, usize)> {
    bits(mask).flat_map(move |a| bits(mask & !super::low_mask(a + 1)).map(move |b| (a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> Lattice {
        Lattice::from_covers(5, &[(0, 1), (0, 2), (1, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn m3_is_in_every_family() {
        let m3 = Lattice::m(3);
        assert!(m3.is_lattice());
        assert!(m3.is_graded());
        assert!(m3.is_modular());
        assert!(m3.is_semimodular() && m3.is_lower_semimodular());
        assert!(m3.is_geometric() && m3.is_coatomistic());
        assert!(m3.is_vertically_indecomposable());
    }

    #[test]
    fn three_chain_is_decomposable() {
        let c = Lattice::chain(3);
        assert!(c.is_graded() && c.is_modular());
        assert!(!c.is_vertically_indecomposable());
        assert!(Lattice::chain(2).is_vertically_indecomposable());
        assert!(Lattice::point().is_vertically_indecomposable());
    }

    #[test]
    fn pentagon_is_not_graded() {
        let p = pentagon();
        assert!(p.is_lattice());
        assert!(!p.is_graded());
        assert!(!p.is_modular());
        assert!(!p.is_semimodular());
    }

    #[test]
    fn non_lattice_poset() {
        // Two middle pairs crossed: 1,2 both above 3,4.
        let p = Lattice::from_covers(
            6,
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert!(!p.is_lattice());
        assert!(!p.is_modular());
    }

    #[test]
    fn boolean_and_atomistic() {
        let b3 = Lattice::boolean(3);
        assert!(b3.is_geometric() && b3.is_modular() && b3.is_coatomistic());
        // The 4-chain is not atomistic: its middle elements each cover one element.
        let c = Lattice::chain(4);
        assert!(!c.is_atomistic());
        assert!(Lattice::point().is_atomistic() && Lattice::chain(2).is_atomistic());
    }

    #[test]
    fn semimodular_but_not_lower() {
        // Dual of the "hexagon with a bar": M_2 over a pair glued under one atom.
        // Atoms a,b under coatoms: 1 covers 3,4; 2 covers 4,5; bottom 6 under 3,4,5.
        let l = Lattice::from_covers(
            7,
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)],
        )
        .unwrap();
        assert!(l.is_lattice());
        assert!(l.is_lower_semimodular());
        assert!(!l.is_semimodular());
        assert!(l.dual().is_semimodular());
        assert!(!l.is_modular());
    }
}
