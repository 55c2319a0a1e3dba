//! Canonical forms, automorphisms and hash keys of lattice cover digraphs.
//!
//! The cover digraph has an arc from every element to each element it
//! covers. Vertices are initially colored by level, so canonical positions
//! never mix levels.

mod mother;
mod search;

use crate::lattice::{bits, Lattice, Mask};

pub use mother::{atom_orbits, classify_mother, MotherClass};

/// Labeling-invariant normal form of a lattice: row `i` holds the canonical
/// positions of the elements covered by canonical element `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    rows: Vec<Mask>,
}

impl CanonicalForm {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Mask] {
        &self.rows
    }

    /// Sorted cover pairs `(i, j)`: canonical element `i` covers `j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| bits(r).map(move |j| (i, j)))
            .collect()
    }

    /// The lattice in canonical numbering.
    pub fn to_lattice(&self) -> Lattice {
        Lattice::from_covers(self.size(), &self.edges()).expect("canonical form of a bounded poset")
    }
}

/// Three 64-bit digests of a canonical form, used to bucket daughter stores.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HashKeys(pub [u64; 3]);

const SEEDS: [u64; 3] = [0x243f_6a88_85a3_08d3, 0x1319_8a2e_0370_7344, 0xa409_3822_299f_31d0];

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn hash_keys(form: &CanonicalForm) -> HashKeys {
    HashKeys(SEEDS.map(|seed| {
        let mut h = mix(seed ^ form.size() as u64);
        for &row in form.rows() {
            h = mix(h.rotate_left(23) ^ row ^ seed);
        }
        h
    }))
}

fn level_colors(l: &Lattice) -> Vec<u32> {
    l.levels().iter().map(|&k| k as u32).collect()
}

/// Canonical form of a finished lattice.
pub fn canonical_form(l: &Lattice) -> CanonicalForm {
    let lab = search::canonize(l.lower_masks(), l.upper_masks(), &level_colors(l));
    CanonicalForm { rows: lab.rows }
}

/// Canonical form together with the relabeling `perm[old] = canonical`.
pub fn canonical_labeling(l: &Lattice) -> (CanonicalForm, Vec<usize>) {
    let lab = search::canonize(l.lower_masks(), l.upper_masks(), &level_colors(l));
    let mut perm = vec![0; l.size()];
    for (p, &v) in lab.lab.iter().enumerate() {
        perm[v] = p;
    }
    (CanonicalForm { rows: lab.rows }, perm)
}

/// Automorphism group data of a lattice's cover digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphisms {
    /// Smallest member of each element's orbit.
    pub orbit_of: Vec<usize>,
    /// Generating permutations, `g[v]` the image of `v`.
    pub generators: Vec<Vec<usize>>,
}

impl Automorphisms {
    /// Orbits as sorted element lists, ordered by their smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (v, &r) in self.orbit_of.iter().enumerate() {
            if r == v {
                out.push(vec![v]);
            } else {
                let slot = out.iter_mut().find(|o| o[0] == r).expect("root precedes members");
                slot.push(v);
            }
        }
        out
    }
}

/// Orbits and a generating set of the automorphism group.
///
/// Generators come from the labeling search. Orbits are then confirmed
/// exactly: two classes inside one equitable cell are merged only if
/// individualizing either representative yields the same canonical form.
pub fn automorphisms(l: &Lattice) -> Automorphisms {
    let all = crate::lattice::low_mask(l.size());
    let orbit_of = mother::exact_orbits(l, all);
    let lab = search::canonize(l.lower_masks(), l.upper_masks(), &level_colors(l));
    Automorphisms {
        orbit_of,
        generators: lab
            .generators
            .into_iter()
            .map(|g| g.into_iter().map(usize::from).collect())
            .collect(),
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_isomorphic(a: &Lattice, b: &Lattice) -> bool {
        if a.size() != b.size() {
            return false;
        }
        let ea: std::collections::BTreeSet<_> = a.cover_edges().into_iter().collect();
        let eb: std::collections::BTreeSet<_> = b.cover_edges().into_iter().collect();
        permutations(a.size()).into_iter().any(|p| {
            ea.iter().map(|&(x, y)| (p[x], p[y])).collect::<std::collections::BTreeSet<_>>() == eb
        })
    }

    #[test]
    fn m2_coatom_swap() {
        let a = Lattice::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let b = Lattice::from_covers(4, &[(0, 2), (0, 1), (2, 3), (1, 3)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn boolean_cube_all_relabelings() {
        let b3 = Lattice::boolean(3);
        let expected = canonical_form(&b3);
        for p in permutations(8) {
            let r = b3.relabel(&p).unwrap();
            assert_eq!(canonical_form(&r), expected);
        }
    }

    #[test]
    fn idempotent() {
        for l in [Lattice::boolean(3), Lattice::m(5), Lattice::chain(4)] {
            let f = canonical_form(&l);
            assert_eq!(canonical_form(&f.to_lattice()), f);
        }
    }

    #[test]
    fn levels_preserved() {
        let l = Lattice::m(3).vertical_sum(&Lattice::boolean(2));
        let f = canonical_form(&l);
        let cl = f.to_lattice();
        // from_covers keeps ids when numbering is already level-consistent
        assert_eq!(cl.cover_edges(), f.edges());
        assert_eq!(cl.levels(), l.levels());
    }

    #[test]
    fn forms_match_brute_force_isomorphism() {
        // All lattices on 6 elements, hand-listed: compare every pair.
        let ls = [
            Lattice::m(4),
            Lattice::chain(6),
            Lattice::m(2).vertical_sum(&Lattice::m(2)),
            Lattice::m(2).vertical_sum(&Lattice::chain(3)),
            Lattice::chain(3).vertical_sum(&Lattice::m(2)),
            Lattice::from_covers(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5)])
                .unwrap(),
            Lattice::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4), (4, 5)]).unwrap(),
        ];
        for a in &ls {
            for b in &ls {
                let same = canonical_form(a) == canonical_form(b);
                assert_eq!(same, brute_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn m3_automorphisms() {
        let m3 = Lattice::m(3);
        let aut = automorphisms(&m3);
        assert_eq!(aut.orbits(), vec![vec![0], vec![1, 2, 3], vec![4]]);
        // Group order by brute force over all permutations of the coatoms.
        let edges: std::collections::BTreeSet<_> = m3.cover_edges().into_iter().collect();
        let order = permutations(5)
            .into_iter()
            .filter(|p| {
                edges.iter().map(|&(x, y)| (p[x], p[y])).collect::<std::collections::BTreeSet<_>>()
                    == edges
            })
            .count();
        assert_eq!(order, 6);
        for g in &aut.generators {
            let img: std::collections::BTreeSet<_> =
                edges.iter().map(|&(x, y)| (g[x], g[y])).collect();
            assert_eq!(img, edges);
        }
    }

    #[test]
    fn chain_is_rigid() {
        let aut = automorphisms(&Lattice::chain(4));
        assert!(aut.generators.is_empty());
        assert_eq!(aut.orbit_of, vec![0, 1, 2, 3]);
    }

    #[test]
    fn large_symmetric_lattice_is_fast() {
        let m = Lattice::m(40);
        let f = canonical_form(&m);
        assert_eq!(f.size(), 42);
        let aut = automorphisms(&m);
        assert_eq!(aut.orbits().len(), 3);
    }

    #[test]
    fn hash_keys_pure() {
        let f = canonical_form(&Lattice::boolean(3));
        assert_eq!(hash_keys(&f), hash_keys(&f.clone()));
        let g = canonical_form(&Lattice::m(6));
        assert_ne!(hash_keys(&f), hash_keys(&g));
        let HashKeys([a, b, c]) = hash_keys(&f);
        assert!(a != b && b != c);
    }
}
