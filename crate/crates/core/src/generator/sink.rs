//! Destinations for generated lattices.

use std::collections::BTreeMap;

use crate::canon::{canonical_form, classify_mother, CanonicalForm, MotherClass};
use crate::codec;
use crate::lattice::Lattice;

/// Receives every generated lattice once.
///
/// Parallel generation gives each worker a [`fork`](Sink::fork) of the sink
/// and folds the results back with [`merge`](Sink::merge) in a fixed order.
pub trait Sink: Send {
    fn accept(&mut self, lattice: &Lattice);

    fn fork(&self) -> Self
    where
        Self: Sized;

    fn merge(&mut self, other: Self)
    where
        Self: Sized;
}

/// Counts lattices per size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountSink {
    counts: BTreeMap<usize, u64>,
}

impl CountSink {
    pub fn count(&self, n: usize) -> u64 {
        self.counts.get(&n).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

impl Sink for CountSink {
    fn accept(&mut self, lattice: &Lattice) {
        *self.counts.entry(lattice.size()).or_default() += 1;
    }

    fn fork(&self) -> Self {
        CountSink::default()
    }

    fn merge(&mut self, other: Self) {
        for (n, c) in other.counts {
            *self.counts.entry(n).or_default() += c;
        }
    }
}

/// Collects canonical forms.
#[derive(Clone, Debug, Default)]
pub struct FormSink {
    pub forms: Vec<CanonicalForm>,
}

impl FormSink {
    /// Forms sorted, with their multiplicity preserved.
    pub fn sorted(mut self) -> Vec<CanonicalForm> {
        self.forms.sort_unstable();
        self.forms
    }
}

impl Sink for FormSink {
    fn accept(&mut self, lattice: &Lattice) {
        self.forms.push(canonical_form(lattice));
    }

    fn fork(&self) -> Self {
        FormSink::default()
    }

    fn merge(&mut self, other: Self) {
        self.forms.extend(other.forms);
    }
}

/// Collects canonical digraph6 records.
#[derive(Clone, Debug, Default)]
pub struct ListSink {
    pub lines: Vec<String>,
}

impl ListSink {
    pub fn sorted(mut self) -> Vec<String> {
        self.lines.sort_unstable();
        self.lines
    }
}

impl Sink for ListSink {
    fn accept(&mut self, lattice: &Lattice) {
        self.lines.push(codec::encode(&canonical_form(lattice)));
    }

    fn fork(&self) -> Self {
        ListSink::default()
    }

    fn merge(&mut self, other: Self) {
        self.lines.extend(other.lines);
    }
}

/// Tallies the mother class of every lattice of one size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassTallySink {
    pub size: usize,
    pub fixed: u64,
    pub simple: u64,
    pub other: u64,
}

impl ClassTallySink {
    pub fn for_size(size: usize) -> Self {
        ClassTallySink {
            size,
            ..Default::default()
        }
    }

    pub fn total(&self) -> u64 {
        self.fixed + self.simple + self.other
    }

    /// Percentages of fixed, simple and other.
    pub fn percentages(&self) -> [f64; 3] {
        let t = self.total().max(1) as f64;
        [self.fixed, self.simple, self.other].map(|c| 100.0 * c as f64 / t)
    }
}

impl Sink for ClassTallySink {
    fn accept(&mut self, lattice: &Lattice) {
        if lattice.size() != self.size {
            return;
        }
        match classify_mother(lattice) {
            MotherClass::Fixed => self.fixed += 1,
            MotherClass::Simple(_) => self.simple += 1,
            MotherClass::Other => self.other += 1,
        }
    }

    fn fork(&self) -> Self {
        ClassTallySink::for_size(self.size)
    }

    fn merge(&mut self, other: Self) {
        self.fixed += other.fixed;
        self.simple += other.simple;
        self.other += other.other;
    }
}

impl<A: Sink, B: Sink> Sink for (A, B) {
    fn accept(&mut self, lattice: &Lattice) {
        self.0.accept(lattice);
        self.1.accept(lattice);
    }

    fn fork(&self) -> Self {
        (self.0.fork(), self.1.fork())
    }

    fn merge(&mut self, other: Self) {
        self.0.merge(other.0);
        self.1.merge(other.1);
    }
}
