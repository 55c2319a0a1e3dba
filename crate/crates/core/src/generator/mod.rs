//! The level-extension search.
//!
//! Starting from `M_2, …, M_{N-2}`, every mother lattice of length `k` is
//! extended by a new level of elements below its atoms. New elements are
//! created in decreasing order of up-degree, covers of equal size in
//! lexicographic order, and every element must keep all pairwise joins
//! unique. Once every atom has a child the level can be closed with a new
//! bottom, giving a daughter of length `k + 1`.

mod checks;
mod engine;
pub mod sink;
mod store;

use std::fmt;
use std::str::FromStr;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::codec;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, MAX_ELEMENTS};

pub use checks::{
    atoms_common_cover_ok, geometric_updegree_ok, lower_semimodular_level_ok, pair_budget_prune,
    semimodular_cover_ok, wanting_pairs, PairBudget,
};
pub use store::DaughterStore;

use engine::Engine;
use sink::Sink;

/// Which lattices the search builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Graded,
    /// Upper semimodular, built directly: each new cover must consist of
    /// elements with pairwise common covers, and the atoms of an emitted
    /// lattice must pairwise share a cover.
    Semimodular,
    LowerSemimodular,
    Modular,
    /// Lower semimodular and coatomistic, the duals of geometric lattices.
    GeometricDual,
}

impl Family {
    /// Whether closing a level requires every pair with a common cover to
    /// receive a common child.
    pub fn lower_semimodular(self) -> bool {
        matches!(self, Family::LowerSemimodular | Family::Modular | Family::GeometricDual)
    }

    /// Whether new covers must be pairwise upper-connected.
    pub fn upper_semimodular(self) -> bool {
        matches!(self, Family::Semimodular | Family::Modular)
    }
}

/// A family plus whether emitted lattices are dualized first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub emit_dual: bool,
}

impl FamilySpec {
    pub fn new(family: Family) -> FamilySpec {
        FamilySpec {
            family,
            emit_dual: false,
        }
    }

    /// Semimodular lattices as duals of lower semimodular ones.
    pub fn semimodular() -> FamilySpec {
        FamilySpec {
            family: Family::LowerSemimodular,
            emit_dual: true,
        }
    }

    pub fn semimodular_direct() -> FamilySpec {
        FamilySpec::new(Family::Semimodular)
    }

    pub fn geometric() -> FamilySpec {
        FamilySpec {
            family: Family::GeometricDual,
            emit_dual: true,
        }
    }

    /// Whether a lattice produced by this spec (after dualizing) belongs to
    /// the target family, by the definitional predicates.
    pub fn contains(&self, l: &Lattice) -> bool {
        self.target().contains(l)
    }

    pub fn target(&self) -> Target {
        match (self.family, self.emit_dual) {
            (Family::Graded, _) => Target::Graded,
            (Family::Modular, _) => Target::Modular,
            (Family::Semimodular, false) | (Family::LowerSemimodular, true) => Target::Semimodular,
            (Family::Semimodular, true) | (Family::LowerSemimodular, false) => {
                Target::LowerSemimodular
            }
            (Family::GeometricDual, true) => Target::Geometric,
            (Family::GeometricDual, false) => Target::GeometricDual,
        }
    }
}

/// The lattice family a user asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Graded,
    Semimodular,
    LowerSemimodular,
    Modular,
    Geometric,
    GeometricDual,
}

impl Target {
    pub const ALL: [Target; 5] = [
        Target::Graded,
        Target::Semimodular,
        Target::LowerSemimodular,
        Target::Modular,
        Target::Geometric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Graded => "graded",
            Target::Semimodular => "semimodular",
            Target::LowerSemimodular => "lsm",
            Target::Modular => "modular",
            Target::Geometric => "geometric",
            Target::GeometricDual => "geometric-dual",
        }
    }

    /// The production generation route for this family.
    pub fn spec(self) -> FamilySpec {
        match self {
            Target::Graded => FamilySpec::new(Family::Graded),
            Target::Semimodular => FamilySpec::semimodular(),
            Target::LowerSemimodular => FamilySpec::new(Family::LowerSemimodular),
            Target::Modular => FamilySpec::new(Family::Modular),
            Target::Geometric => FamilySpec::geometric(),
            Target::GeometricDual => FamilySpec::new(Family::GeometricDual),
        }
    }

    /// Definitional membership test.
    pub fn contains(self, l: &Lattice) -> bool {
        if !l.is_lattice() {
            return false;
        }
        match self {
            Target::Graded => l.is_graded(),
            Target::Semimodular => l.is_semimodular(),
            Target::LowerSemimodular => l.is_lower_semimodular(),
            Target::Modular => l.is_modular(),
            Target::Geometric => l.is_geometric(),
            Target::GeometricDual => l.dual().is_geometric(),
        }
    }

    /// Whether the family is closed under vertical sums, so that totals
    /// follow from the vertically indecomposable counts.
    pub fn decomposable(self) -> bool {
        !matches!(self, Target::Geometric | Target::GeometricDual)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Target> {
        match s {
            "graded" => Ok(Target::Graded),
            "semimodular" => Ok(Target::Semimodular),
            "lsm" | "lower-semimodular" => Ok(Target::LowerSemimodular),
            "modular" => Ok(Target::Modular),
            "geometric" => Ok(Target::Geometric),
            "geometric-dual" => Ok(Target::GeometricDual),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// Search switches. The defaults are the production settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// Cut off lower semimodular branches that cannot cover their pairs.
    pub pair_budget: bool,
    /// Use the fixed/simple mother shortcuts.
    pub shortcuts: bool,
    /// Worker threads; 1 runs everything on the calling thread.
    pub threads: usize,
    /// Re-verify incremental state and family predicates at every step.
    pub check_invariants: bool,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            pair_budget: true,
            shortcuts: true,
            threads: 1,
            check_invariants: false,
        }
    }
}

/// Counters collected during a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub mothers_fixed: u64,
    pub mothers_simple: u64,
    pub mothers_other: u64,
    /// Completed levels that reached the duplicate check or were accepted
    /// without one.
    pub daughters_built: u64,
    pub daughters_rejected: u64,
    pub canonical_calls: u64,
    pub pair_budget_cuts: u64,
    /// Canonical-form calls made while extending fixed mothers.
    pub canonical_calls_fixed: u64,
}

impl SearchStats {
    fn merge(&mut self, o: &SearchStats) {
        self.mothers_fixed += o.mothers_fixed;
        self.mothers_simple += o.mothers_simple;
        self.mothers_other += o.mothers_other;
        self.daughters_built += o.daughters_built;
        self.daughters_rejected += o.daughters_rejected;
        self.canonical_calls += o.canonical_calls;
        self.pair_budget_cuts += o.pair_budget_cuts;
        self.canonical_calls_fixed += o.canonical_calls_fixed;
    }
}

/// Emits one representative of every isomorphism class of vertically
/// indecomposable lattices of the family with at most `max_n` elements.
pub fn generate<S: Sink>(spec: &FamilySpec, max_n: usize, sink: &mut S) -> Result<SearchStats> {
    generate_with(spec, max_n, &GeneratorConfig::default(), sink)
}

pub fn generate_with<S: Sink>(
    spec: &FamilySpec,
    max_n: usize,
    config: &GeneratorConfig,
    sink: &mut S,
) -> Result<SearchStats> {
    if !(3..=MAX_ELEMENTS).contains(&max_n) {
        return Err(Error::SizeOutOfRange(max_n, 3, MAX_ELEMENTS));
    }
    // Lengths 0 and 1.
    sink.accept(&Lattice::point());
    sink.accept(&Lattice::chain(2));

    let initial: Vec<Lattice> = (2..=max_n - 2).map(Lattice::m).collect();
    if config.threads <= 1 {
        let mut engine = Engine::new(*spec, max_n, config, sink, None);
        for m in &initial {
            engine.accept(m.clone());
        }
        return Ok(engine.stats);
    }

    // Run the first extension step serially and hand the resulting length-3
    // lattices to the workers as independent subtrees.
    let mut tasks = Vec::new();
    let mut stats = {
        let mut engine = Engine::new(*spec, max_n, config, sink, Some(3));
        for m in &initial {
            engine.accept(m.clone());
        }
        tasks.append(&mut engine.harvested);
        engine.stats
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .expect("thread pool");
    let jobs: Vec<(Lattice, S)> = tasks.into_iter().map(|t| (t, sink.fork())).collect();
    let results: Vec<(S, SearchStats)> = pool.install(|| {
        jobs.into_par_iter()
            .map(|(mother, mut local)| {
                let stats = {
                    let mut engine = Engine::new(*spec, max_n, config, &mut local, None);
                    engine.extend(&mother);
                    engine.stats
                };
                (local, stats)
            })
            .collect()
    });
    for (local, s) in results {
        sink.merge(local);
        stats.merge(&s);
    }
    Ok(stats)
}

/// Every lattice of the family with at most `max_n` elements, including the
/// vertically decomposable ones, built as vertical sums of the
/// indecomposable ones. `vi` must hold the indecomposable lattices of every
/// size from 2 to `max_n`.
pub fn vertical_sums(vi: &[Lattice], max_n: usize) -> Vec<Lattice> {
    let mut by_size: Vec<Vec<&Lattice>> = vec![Vec::new(); max_n + 1];
    for b in vi.iter().filter(|l| (2..=max_n).contains(&l.size())) {
        by_size[b.size()].push(b);
    }
    let mut all = vec![Lattice::point()];
    let mut frontier: Vec<Lattice> = by_size.iter().flatten().map(|&b| b.clone()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for l in &frontier {
            for blocks in by_size.iter().take(max_n + 2 - l.size()).skip(2) {
                next.extend(blocks.iter().map(|b| l.vertical_sum(b)));
            }
        }
        all.append(&mut frontier);
        frontier = next;
    }
    all
}

/// Records of a family list together with per-size counts of the
/// vertically indecomposable members.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyList {
    /// Sorted canonical digraph6 records.
    pub records: Vec<String>,
    pub vi_counts: BTreeMap<usize, u64>,
}

/// Generates the family up to `max_n` (any size from 1) and encodes it.
/// Unless `vi_only`, vertical sums are added for families closed under
/// them.
pub fn list_family(
    spec: &FamilySpec,
    max_n: usize,
    config: &GeneratorConfig,
    vi_only: bool,
) -> Result<FamilyList> {
    if !(1..=MAX_ELEMENTS).contains(&max_n) {
        return Err(Error::SizeOutOfRange(max_n, 1, MAX_ELEMENTS));
    }
    let mut sink = sink::FormSink::default();
    generate_with(spec, max_n.max(3), config, &mut sink)?;
    let forms: Vec<CanonicalForm> = sink.sorted().into_iter().filter(|f| f.size() <= max_n).collect();
    let mut vi_counts: BTreeMap<usize, u64> = (1..=max_n).map(|n| (n, 0)).collect();
    for f in &forms {
        *vi_counts.entry(f.size()).or_default() += 1;
    }
    let mut records: Vec<String> = if vi_only || !spec.target().decomposable() {
        forms.iter().map(codec::encode).collect()
    } else {
        let vi: Vec<Lattice> = forms.iter().map(CanonicalForm::to_lattice).collect();
        vertical_sums(&vi, max_n)
            .par_iter()
            .map(|l| codec::encode(&canonical_form(l)))
            .collect()
    };
    records.sort_unstable();
    Ok(FamilyList { records, vi_counts })
}
