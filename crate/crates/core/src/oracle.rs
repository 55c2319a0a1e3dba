//! Brute-force lattice enumeration for small sizes.
//!
//! Every naturally labeled poset on `n − 2` elements is built by adding one
//! element at a time on top of a down-set of the elements already
//! present; a top and a bottom are added and the lattices kept.

use std::collections::BTreeSet;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::lattice::{bit, bits, Lattice, Mask};

/// Largest size the oracle accepts.
pub const ORACLE_MAX: usize = 8;

/// Canonical forms of all lattices with `n` elements.
pub fn brute_force_lattices(n: usize) -> Result<BTreeSet<CanonicalForm>> {
    brute_force_family(n, |_| true)
}

/// Canonical forms of the `n`-element lattices satisfying `keep`.
pub fn brute_force_family<F: Fn(&Lattice) -> bool>(
    n: usize,
    keep: F,
) -> Result<BTreeSet<CanonicalForm>> {
    if n > ORACLE_MAX {
        return Err(Error::OracleTooLarge { n, max: ORACLE_MAX });
    }
    let mut out = BTreeSet::new();
    match n {
        0 => {}
        1 => {
            let p = Lattice::point();
            if keep(&p) {
                out.insert(canonical_form(&p));
            }
        }
        _ => {
            let mut below = Vec::with_capacity(n - 2);
            posets(n - 2, &mut below, &mut |below| {
                let l = bounded(below);
                if l.is_lattice() && keep(&l) {
                    out.insert(canonical_form(&l));
                }
            });
        }
    }
    Ok(out)
}

/// Calls `f` with the strict down-sets of every naturally labeled poset on
/// `m` elements.
fn posets<F: FnMut(&[Mask])>(m: usize, below: &mut Vec<Mask>, f: &mut F) {
    let i = below.len();
    if i == m {
        f(below);
        return;
    }
    for d in 0..(1 as Mask) << i {
        if bits(d).all(|j| below[j] & !d == 0) {
            below.push(d);
            posets(m, below, f);
            below.pop();
        }
    }
}

/// The poset with a new top (id 0) and bottom (id `m + 1`); middle element
/// `j` becomes id `j + 1` and larger elements come first.
fn bounded(below: &[Mask]) -> Lattice {
    let m = below.len();
    let n = m + 2;
    let id = |j: usize| m - j;
    let mut arcs = Vec::new();
    let mut above_any: Mask = 0;
    for (x, &d) in below.iter().enumerate() {
        above_any |= d;
        // Covers of x: elements of d not below another element of d.
        let inner = bits(d).fold(0, |acc, y| acc | below[y]);
        for y in bits(d & !inner) {
            arcs.push((id(x), id(y)));
        }
        if d == 0 {
            arcs.push((id(x), n - 1));
        }
    }
    for x in 0..m {
        if above_any & bit(x) == 0 {
            arcs.push((0, id(x)));
        }
    }
    if m == 0 {
        arcs.push((0, 1));
    }
    Lattice::from_covers(n, &arcs).expect("bounded poset")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_totals() {
        let sizes: Vec<usize> = (1..=7).map(|n| brute_force_lattices(n).unwrap().len()).collect();
        // All lattices, graded or not.
        assert_eq!(sizes, vec![1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn five_elements() {
        let graded = brute_force_family(5, |l| l.is_graded()).unwrap();
        assert_eq!(graded.len(), 4);
        assert_eq!(brute_force_lattices(5).unwrap().len(), 5);
    }

    #[test]
    fn eight_elements() {
        assert_eq!(brute_force_family(8, |l| l.is_graded()).unwrap().len(), 60);
        assert_eq!(brute_force_family(8, |l| l.is_modular()).unwrap().len(), 34);
        let semi_vi =
            brute_force_family(8, |l| l.is_semimodular() && l.is_vertically_indecomposable());
        assert_eq!(semi_vi.unwrap().len(), 9);
        assert_eq!(brute_force_family(8, |l| l.is_geometric()).unwrap().len(), 2);
    }

    #[test]
    fn too_large() {
        assert!(matches!(brute_force_lattices(9), Err(Error::OracleTooLarge { .. })));
    }
}
