//! Classification of mother lattices by the symmetry of their atoms.

use std::collections::HashMap;

use super::search::canonize;
use crate::lattice::{bit, bits, Lattice, Mask};

/// How the atoms of a mother lattice sit under its automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MotherClass {
    /// No automorphism moves an atom.
    Fixed,
    /// Every atom orbit is a symmetric box: any permutation of it extends to
    /// an automorphism fixing the other atoms. Boxes are listed by smallest
    /// member, each in increasing id order, and partition the atoms.
    Simple(Vec<Vec<usize>>),
    Other,
}

impl MotherClass {
    pub fn tag(&self) -> &'static str {
        match self {
            MotherClass::Fixed => "fixed",
            MotherClass::Simple(_) => "simple",
            MotherClass::Other => "other",
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Orbit representative (smallest member) of every element. Orbits of the
/// elements in `which` are exact; other elements only reflect the
/// automorphisms found by the labeling search.
pub(crate) fn exact_orbits(l: &Lattice, which: Mask) -> Vec<usize> {
    let n = l.size();
    let colors: Vec<u32> = l.levels().iter().map(|&k| 2 * k as u32 + 1).collect();
    let lab = canonize(l.lower_masks(), l.upper_masks(), &colors);
    let mut parent: Vec<usize> = (0..n).collect();
    for g in &lab.generators {
        for (v, &w) in g.iter().enumerate() {
            union(&mut parent, v, w as usize);
        }
    }
    for &cell in &lab.root_cells {
        let members = cell & which;
        let mut reps: Vec<usize> = bits(members).filter(|&v| find(&mut parent, v) == v).collect();
        if reps.len() < 2 {
            continue;
        }
        reps.sort_unstable();
        let mut seen: HashMap<Vec<Mask>, usize> = HashMap::new();
        for r in reps {
            let mut c = colors.clone();
            c[r] -= 1;
            let form = canonize(l.lower_masks(), l.upper_masks(), &c).rows;
            match seen.get(&form) {
                Some(&first) => union(&mut parent, first, r),
                None => {
                    seen.insert(form, r);
                }
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

fn atom_level(l: &Lattice) -> Mask {
    if l.length() == 0 {
        0
    } else {
        l.level_mask(l.length() - 1)
    }
}

/// Orbits of the automorphism group on the atom level, by smallest member.
pub fn atom_orbits(l: &Lattice) -> Vec<Vec<usize>> {
    let atoms = atom_level(l);
    let orbit_of = exact_orbits(l, atoms);
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for a in bits(atoms) {
        match orbits.iter_mut().find(|o| orbit_of[o[0]] == orbit_of[a]) {
            Some(o) => o.push(a),
            None => orbits.push(vec![a]),
        }
    }
    orbits
}

/// Whether swapping atoms `a` and `b` while fixing all other atoms extends
/// to an automorphism. `base` is the canonical form with every atom
/// individually colored.
fn transposition_extends(l: &Lattice, colors: &[u32], base: &[Mask], a: usize, b: usize) -> bool {
    let mut c = colors.to_vec();
    c.swap(a, b);
    canonize(l.lower_masks(), l.upper_masks(), &c).rows == base
}

/// Classifies `l` by the symmetry of its atom level.
pub fn classify_mother(l: &Lattice) -> MotherClass {
    let atoms = atom_level(l);
    let orbits = atom_orbits(l);
    if orbits.iter().all(|o| o.len() == 1) {
        return MotherClass::Fixed;
    }
    // Non-atoms keep their level; atoms get pairwise distinct colors.
    let colors: Vec<u32> = (0..l.size())
        .map(|v| {
            let slot = if atoms & bit(v) != 0 { 1 + v as u32 } else { 0 };
            ((l.level(v) as u32) << 8) | slot
        })
        .collect();
    let base = canonize(l.lower_masks(), l.upper_masks(), &colors).rows;
    for orbit in orbits.iter().filter(|o| o.len() > 1) {
        let head = orbit[0];
        if !orbit[1..]
            .iter()
            .all(|&o| transposition_extends(l, &colors, &base, head, o))
        {
            return MotherClass::Other;
        }
    }
    MotherClass::Simple(orbits)
}
