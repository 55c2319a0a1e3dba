//! Partition refinement and search-tree canonical labeling for vertex-colored
//! digraphs of at most 64 vertices.
//!
//! Cells are refined by the number of out- and in-neighbours each vertex has
//! in every cell until the partition is equitable. The search individualizes
//! each vertex of the first largest non-singleton cell in turn; the leaf with
//! the lexicographically least relabeled adjacency rows wins. Automorphisms
//! found at leaves prune the tree.

use crate::lattice::{bit, bits, low_mask, Mask};

const CAP: usize = 64;

#[derive(Clone)]
struct Partition {
    /// Vertex at each position.
    lab: [u8; CAP],
    /// Position of each vertex.
    pos: [u8; CAP],
    /// Bit `p` is set when a cell starts at position `p`; bit `n` is a sentinel.
    starts: Mask,
}

impl Partition {
    fn initial(n: usize, colors: &[u32]) -> Partition {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (colors[v], v));
        let mut p = Partition {
            lab: [0; CAP],
            pos: [0; CAP],
            starts: bit(n) | 1,
        };
        for (i, &v) in order.iter().enumerate() {
            p.lab[i] = v as u8;
            p.pos[v] = i as u8;
            if i > 0 && colors[v] != colors[order[i - 1]] {
                p.starts |= bit(i);
            }
        }
        p
    }

    #[inline]
    fn cell_end(&self, start: usize) -> usize {
        start + 1 + (self.starts >> (start + 1)).trailing_zeros() as usize
    }

    #[inline]
    fn cell_start_of(&self, position: usize) -> usize {
        63 - (self.starts & low_mask(position + 1)).leading_zeros() as usize
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.starts & low_mask(n) == low_mask(n)
    }

    /// First cell of maximum size, if any cell has two or more vertices.
    fn target_cell(&self, n: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for s in bits(self.starts & low_mask(n)) {
            let e = self.cell_end(s);
            if e - s > 1 && best.is_none_or(|(bs, be)| e - s > be - bs) {
                best = Some((s, e));
            }
        }
        best
    }

    fn individualize(&self, v: usize) -> Partition {
        let mut p = self.clone();
        let at = p.pos[v] as usize;
        let s = p.cell_start_of(at);
        let w = p.lab[s] as usize;
        p.lab.swap(s, at);
        p.pos[v] = s as u8;
        p.pos[w] = at as u8;
        p.starts |= bit(s + 1);
        p
    }
}

#[derive(Clone)]
struct Leaf {
    rows: Vec<Mask>,
    lab: [u8; CAP],
}

enum Flow {
    Continue,
    /// Unwind to the node whose path has this length.
    Abort(usize),
}

/// Result of canonically labeling a colored digraph.
pub(crate) struct Labeling {
    /// Out-neighbour rows of the canonically relabeled digraph.
    pub rows: Vec<Mask>,
    /// `lab[p]` is the original vertex placed at canonical position `p`.
    pub lab: Vec<usize>,
    /// Automorphisms found during the search, as vertex images.
    pub generators: Vec<Vec<u8>>,
    /// Cells of the equitable refinement of the initial coloring.
    pub root_cells: Vec<Mask>,
}

struct Search<'a> {
    n: usize,
    out: &'a [Mask],
    inn: &'a [Mask],
    first: Option<(Leaf, Vec<u8>)>,
    best: Option<(Leaf, Vec<u8>)>,
    path: Vec<u8>,
    generators: Vec<Vec<u8>>,
    root_cells: Vec<Mask>,
}

impl<'a> Search<'a> {
    /// Splits cells by neighbour counts into splitter cells until the
    /// partition is equitable. `queue` holds the start positions of the
    /// cells still to be used as splitters.
    fn refine(&mut self, p: &mut Partition, mut queue: Mask) {
        let n = self.n;
        let all = low_mask(n);
        let mut keys = [0u16; CAP];
        while queue != 0 {
            if p.starts & all == all {
                return;
            }
            let w_start = queue.trailing_zeros() as usize;
            queue &= queue - 1;
            let w_end = p.cell_end(w_start);
            let splitter = p.lab[w_start..w_end]
                .iter()
                .fold(0 as Mask, |m, &v| m | bit(v as usize));
            let mut s = 0;
            while s < n {
                let e = p.cell_end(s);
                if e - s > 1 {
                    let mut same = true;
                    for q in s..e {
                        let v = p.lab[q] as usize;
                        let k = ((self.out[v] & splitter).count_ones() << 7
                            | (self.inn[v] & splitter).count_ones()) as u16;
                        keys[v] = k;
                        same &= k == keys[p.lab[s] as usize];
                    }
                    if !same {
                        p.lab[s..e].sort_unstable_by_key(|&v| keys[v as usize]);
                        queue |= bit(s);
                        for q in s + 1..e {
                            if keys[p.lab[q] as usize] != keys[p.lab[q - 1] as usize] {
                                p.starts |= bit(q);
                                queue |= bit(q);
                            }
                        }
                        for q in s..e {
                            p.pos[p.lab[q] as usize] = q as u8;
                        }
                    }
                }
                s = e;
            }
        }
    }

    fn leaf_rows(&self, p: &Partition) -> Vec<Mask> {
        (0..self.n)
            .map(|q| {
                bits(self.out[p.lab[q] as usize]).fold(0, |m, j| m | bit(p.pos[j] as usize))
            })
            .collect()
    }

    fn record_automorphism(&mut self, from: &[u8; CAP], to: &[u8; CAP]) {
        let mut gamma = vec![0u8; self.n];
        for q in 0..self.n {
            gamma[from[q] as usize] = to[q];
        }
        if gamma.iter().enumerate().any(|(v, &w)| v != w as usize) {
            self.generators.push(gamma);
        }
    }

    fn leaf(&mut self, p: &Partition) -> Flow {
        let rows = self.leaf_rows(p);
        let Some((first, first_path)) = &self.first else {
            let leaf = Leaf { rows, lab: p.lab };
            self.first = Some((leaf.clone(), self.path.clone()));
            self.best = Some((leaf, self.path.clone()));
            return Flow::Continue;
        };
        if rows == first.rows {
            let (from, depth) = (first.lab, common_prefix(first_path, &self.path));
            self.record_automorphism(&from, &p.lab);
            return Flow::Abort(depth);
        }
        let (best, best_path) = self.best.as_ref().expect("best is set with first");
        match rows.cmp(&best.rows) {
            std::cmp::Ordering::Equal => {
                let (from, depth) = (best.lab, common_prefix(best_path, &self.path));
                self.record_automorphism(&from, &p.lab);
                Flow::Abort(depth)
            }
            std::cmp::Ordering::Less => {
                self.best = Some((Leaf { rows, lab: p.lab }, self.path.clone()));
                Flow::Continue
            }
            std::cmp::Ordering::Greater => Flow::Continue,
        }
    }

    /// Merges into `orbits` the known automorphisms from `gens[*used..]`
    /// that fix the current path pointwise.
    fn absorb(&self, orbits: &mut [u8; CAP], used: &mut usize) {
        for g in &self.generators[*used..] {
            if self.path.iter().any(|&q| g[q as usize] != q) {
                continue;
            }
            for (x, &y) in g.iter().enumerate() {
                let (rx, ry) = (find(orbits, x as u8), find(orbits, y));
                if rx != ry {
                    orbits[rx.max(ry) as usize] = rx.min(ry);
                }
            }
        }
        *used = self.generators.len();
    }

    fn node(&mut self, mut p: Partition, queue: Mask) -> Flow {
        self.refine(&mut p, queue);
        if self.path.is_empty() {
            self.root_cells = bits(p.starts & low_mask(self.n))
                .map(|s| {
                    p.lab[s..p.cell_end(s)]
                        .iter()
                        .fold(0, |m, &v| m | bit(v as usize))
                })
                .collect();
        }
        let Some((s, e)) = p.target_cell(self.n) else {
            debug_assert!(p.is_discrete(self.n));
            return self.leaf(&p);
        };
        let depth = self.path.len();
        let cell: Vec<u8> = p.lab[s..e].to_vec();
        let mut explored: Mask = 0;
        let mut orbits: [u8; CAP] = std::array::from_fn(|i| i as u8);
        let mut used = 0;
        for v in cell {
            if explored != 0 {
                self.absorb(&mut orbits, &mut used);
                let rv = find(&mut orbits, v);
                if bits(explored).any(|u| find(&mut orbits, u as u8) == rv) {
                    continue;
                }
            }
            explored |= bit(v as usize);
            let child = p.individualize(v as usize);
            self.path.push(v);
            let at = child.pos[v as usize] as usize;
            let flow = self.node(child, bit(at) | bit(at + 1));
            self.path.pop();
            if let Flow::Abort(d) = flow {
                if d < depth {
                    return flow;
                }
            }
        }
        Flow::Continue
    }
}

fn find(parent: &mut [u8; CAP], mut x: u8) -> u8 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Canonically labels the digraph with out-neighbour masks `out`, in-neighbour
/// masks `inn` and vertex colors `colors`. Vertices of smaller color always
/// receive smaller canonical positions.
pub(crate) fn canonize(out: &[Mask], inn: &[Mask], colors: &[u32]) -> Labeling {
    let n = out.len();
    assert!(n <= CAP && inn.len() == n && colors.len() == n);
    let mut search = Search {
        n,
        out,
        inn,
        first: None,
        best: None,
        path: Vec::new(),
        generators: Vec::new(),
        root_cells: Vec::new(),
    };
    let initial = Partition::initial(n, colors);
    let queue = initial.starts & low_mask(n);
    search.node(initial, queue);
    let (best, _) = search.best.expect("search visits at least one leaf");
    Labeling {
        rows: best.rows,
        lab: best.lab[..n].iter().map(|&v| v as usize).collect(),
        generators: search.generators,
        root_cells: search.root_cells,
    }
}
