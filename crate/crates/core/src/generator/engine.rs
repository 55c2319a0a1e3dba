use super::checks::{atoms_common_cover_ok, pair_budget_prune, PairBudget};
use super::sink::Sink;
use super::store::DaughterStore;
use super::{Family, FamilySpec, GeneratorConfig, SearchStats};
use crate::canon::{canonical_form, classify_mother, MotherClass};
use crate::lattice::{bit, bits, Lattice, Mask, PartialLattice};

/// Per-mother search state.
struct Frame {
    pl: PartialLattice,
    parents: Vec<usize>,
    /// Parent-level elements sharing an upper cover with each parent.
    sib: [Mask; 64],
    /// Predecessor of each atom of a simple mother inside its box.
    box_pred: [Mask; 64],
    /// Box of each atom of a simple mother.
    box_of: [u8; 64],
    /// Up-degree-one children given to each parent in the current batch.
    batch_counts: [usize; 64],
    /// Earlier atom of the same box with the same children, per parent.
    twin: [Option<usize>; 64],
    simple: bool,
    fixed: bool,
    skip_dedup: bool,
    /// Sibling pairs without a common frontier child.
    wanting: usize,
    deltas: Vec<usize>,
    store: DaughterStore,
}

pub(super) struct Engine<'a, S: Sink> {
    spec: FamilySpec,
    max_n: usize,
    config: &'a GeneratorConfig,
    sink: &'a mut S,
    harvest: Option<usize>,
    pub harvested: Vec<Lattice>,
    pub stats: SearchStats,
    lsm: bool,
    usm: bool,
}

impl<'a, S: Sink> Engine<'a, S> {
    pub fn new(
        spec: FamilySpec,
        max_n: usize,
        config: &'a GeneratorConfig,
        sink: &'a mut S,
        harvest: Option<usize>,
    ) -> Self {
        Engine {
            spec,
            max_n,
            config,
            sink,
            harvest,
            harvested: Vec::new(),
            stats: SearchStats::default(),
            lsm: spec.family.lower_semimodular(),
            usm: spec.family.upper_semimodular(),
        }
    }

    /// Emits `l` if it belongs to the family, then extends it.
    pub fn accept(&mut self, l: Lattice) {
        let emit = !self.usm || atoms_common_cover_ok(&l);
        if emit {
            let out = if self.spec.emit_dual { l.dual() } else { l.clone() };
            if self.config.check_invariants {
                assert!(
                    self.spec.contains(&out) && out.is_vertically_indecomposable(),
                    "emitted lattice outside the family"
                );
            }
            self.sink.accept(&out);
        }
        if self.harvest == Some(l.length()) {
            self.harvested.push(l);
            return;
        }
        if l.size() + 2 <= self.max_n {
            self.extend(&l);
        }
    }

    /// Builds every daughter of `mother` up to the size limit.
    pub fn extend(&mut self, mother: &Lattice) {
        if mother.size() + 2 > self.max_n {
            return;
        }
        let class = classify_mother(mother);
        match class {
            MotherClass::Fixed => self.stats.mothers_fixed += 1,
            MotherClass::Simple(_) => self.stats.mothers_simple += 1,
            MotherClass::Other => self.stats.mothers_other += 1,
        }
        let pl = PartialLattice::from_mother(mother, self.max_n);
        let parents: Vec<usize> = bits(pl.parent_level_mask()).collect();
        let mut sib = [0; 64];
        for &a in &parents {
            let mut s = 0;
            for p in bits(pl.upper_cover(a)) {
                s |= pl.lower_cover(p);
            }
            sib[a] = s & !bit(a);
        }
        let mut box_pred = [0; 64];
        let mut box_of = [u8::MAX; 64];
        if let (true, MotherClass::Simple(boxes)) = (self.config.shortcuts, &class) {
            for (k, b) in boxes.iter().enumerate() {
                for w in b.windows(2) {
                    box_pred[w[1]] = bit(w[0]);
                }
                for &a in b {
                    box_of[a] = k as u8;
                }
            }
        }
        let wanting = parents
            .iter()
            .map(|&a| (sib[a] & !((2u64 << a) - 1)).count_ones() as usize)
            .sum();
        let fixed = class == MotherClass::Fixed;
        let mut f = Frame {
            pl,
            sib,
            box_pred,
            box_of,
            batch_counts: [0; 64],
            twin: [None; 64],
            simple: self.config.shortcuts && matches!(class, MotherClass::Simple(_)),
            fixed,
            skip_dedup: self.config.shortcuts && fixed,
            wanting,
            deltas: Vec::new(),
            store: DaughterStore::default(),
            parents,
        };
        let width = f.parents.len();
        self.build(&mut f, width, 0);
    }

    fn capacity(&self, f: &Frame) -> usize {
        (self.max_n - 1).saturating_sub(f.pl.size())
    }

    /// Adds further elements of up-degree at most `max_r`; a cover of size
    /// `max_r` must come lexicographically after `after`.
    fn build(&mut self, f: &mut Frame, max_r: usize, after: Mask) {
        self.close_level(f);
        let cap = self.capacity(f);
        if cap == 0 {
            return;
        }
        let uncovered = f.pl.uncovered_parents().count_ones() as usize;
        for r in (2..=max_r).rev() {
            if self.lsm
                && self.config.pair_budget
                && pair_budget_prune(
                    PairBudget {
                        pairs_wanting: f.wanting,
                        capacity_left: cap,
                    },
                    r,
                )
            {
                self.stats.pair_budget_cuts += 1;
                break;
            }
            if uncovered > cap * r {
                break;
            }
            let prev = if r == max_r { after } else { 0 };
            let mut covers = Vec::new();
            self.covers(f, r, prev, &mut covers);
            for c in covers {
                if f.pl.can_add(c) {
                    self.add(f, c);
                    self.build(f, r, c);
                    self.remove(f);
                }
            }
        }
    }

    /// Candidate covers of size `r` in lexicographic order, strictly after
    /// `after` when it is non-zero.
    fn covers(&self, f: &Frame, r: usize, after: Mask, out: &mut Vec<Mask>) {
        let after: Vec<usize> = bits(after).collect();
        let first = f.simple && f.pl.frontier_len() == 0;
        let mut ctx = Combos {
            f,
            r,
            after: &after,
            first,
            usm: self.usm,
            out,
        };
        ctx.walk(0, 0, 0, !0, !after.is_empty());
    }

    fn add(&mut self, f: &mut Frame, cover: Mask) {
        let mut delta = 0;
        if self.lsm {
            for a in bits(cover) {
                for b in bits(cover & f.sib[a] & !((2u64 << a) - 1)) {
                    if f.pl.lower_cover(a) & f.pl.lower_cover(b) == 0 {
                        delta += 1;
                    }
                }
            }
        }
        f.wanting -= delta;
        f.deltas.push(delta);
        f.pl.add_element(cover);
        if self.config.check_invariants {
            assert!(f.pl.joins_consistent());
            if self.lsm {
                assert_eq!(f.wanting, super::checks::wanting_pairs(&f.pl));
            }
        }
    }

    fn remove(&mut self, f: &mut Frame) {
        f.pl.remove_last();
        f.wanting += f.deltas.pop().expect("balanced add/remove");
    }

    /// Finishes the level with up-degree-one elements: each uncovered parent
    /// gets at least one, any parent may get more.
    fn close_level(&mut self, f: &mut Frame) {
        if self.lsm && f.wanting != 0 {
            return;
        }
        let uncovered = f.pl.uncovered_parents();
        let mandatory = uncovered.count_ones() as usize;
        let cap = self.capacity(f);
        if mandatory > cap {
            return;
        }
        if self.spec.family == Family::GeometricDual {
            if mandatory == 0 {
                self.finish(f);
            }
            return;
        }
        // Box atoms with identical children are interchangeable, so their
        // counts can be taken non-increasing.
        for (i, &a) in f.parents.iter().enumerate() {
            f.twin[a] = None;
            if f.simple {
                f.twin[a] = f.parents[..i].iter().rev().copied().find(|&q| {
                    f.box_of[q] == f.box_of[a] && f.pl.lower_cover(q) == f.pl.lower_cover(a)
                });
            }
        }
        let parents = f.parents.clone();
        self.batch(f, &parents, uncovered, 0, cap);
    }

    fn batch(&mut self, f: &mut Frame, parents: &[usize], uncovered: Mask, idx: usize, left: usize) {
        let Some(&p) = parents.get(idx) else {
            self.finish(f);
            return;
        };
        let later: usize = parents[idx + 1..]
            .iter()
            .filter(|&&q| uncovered & bit(q) != 0)
            .count();
        let min = usize::from(uncovered & bit(p) != 0);
        let max = match f.twin[p] {
            Some(q) => f.batch_counts[q].min(left - later),
            None => left - later,
        };
        for c in min..=max {
            f.batch_counts[p] = c;
            for _ in 0..c {
                f.pl.add_element(bit(p));
            }
            self.batch(f, parents, uncovered, idx + 1, left - c);
            for _ in 0..c {
                f.pl.remove_last();
            }
        }
    }

    fn finish(&mut self, f: &mut Frame) {
        let Some(l) = f.pl.complete_level() else {
            return;
        };
        self.stats.daughters_built += 1;
        if !f.skip_dedup {
            self.stats.canonical_calls += 1;
            if f.fixed {
                self.stats.canonical_calls_fixed += 1;
            }
            if !f.store.insert(canonical_form(&l)) {
                self.stats.daughters_rejected += 1;
                return;
            }
        }
        if self.config.check_invariants {
            assert!(l.is_lattice() && l.is_graded());
        }
        self.accept(l);
    }
}

/// Lexicographic enumeration of covers of a fixed size.
struct Combos<'f, 'o> {
    f: &'f Frame,
    r: usize,
    after: &'f [usize],
    first: bool,
    usm: bool,
    out: &'o mut Vec<Mask>,
}

impl Combos<'_, '_> {
    fn walk(&mut self, depth: usize, start: usize, chosen: Mask, allowed: Mask, tight: bool) {
        let ps = &self.f.parents;
        let need = self.r - depth;
        for idx in start..ps.len() {
            if ps.len() - idx < need {
                break;
            }
            let a = ps[idx];
            if tight && a < self.after[depth] {
                continue;
            }
            if allowed & bit(a) == 0 {
                continue;
            }
            if self.first && self.f.box_pred[a] & !chosen != 0 {
                continue;
            }
            let still_tight = tight && a == self.after[depth];
            let next = chosen | bit(a);
            if need == 1 {
                if !still_tight {
                    self.out.push(next);
                }
            } else {
                let allowed = if self.usm { allowed & self.f.sib[a] } else { allowed };
                self.walk(depth + 1, idx + 1, next, allowed, still_tight);
            }
        }
    }
}
