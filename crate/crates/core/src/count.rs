//! Per-size counts and totals from the vertical-sum recursion
//! `u(N) = Σ_{k=2}^{N} u_vi(k) · u(N − k + 1)`.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub family: String,
    pub vi: BTreeMap<usize, u64>,
    /// Totals including vertically decomposable lattices; `None` when the
    /// family is not closed under vertical sums.
    pub total: Option<BTreeMap<usize, u64>>,
    pub max_n: usize,
}

impl CountTable {
    /// Builds the table, applying the recursion when `decomposable`.
    pub fn new(
        family: &str,
        vi: BTreeMap<usize, u64>,
        max_n: usize,
        decomposable: bool,
    ) -> Result<CountTable> {
        let vi: BTreeMap<usize, u64> = (1..=max_n)
            .map(|n| (n, vi.get(&n).copied().unwrap_or(0)))
            .collect();
        let total = if decomposable {
            Some(totals_from_vi(&vi)?)
        } else {
            None
        };
        Ok(CountTable {
            family: family.to_string(),
            vi,
            total,
            max_n,
        })
    }
}

/// Totals for every size `1..=max` where `max` is the largest key of `vi`.
pub fn totals_from_vi(vi: &BTreeMap<usize, u64>) -> Result<BTreeMap<usize, u64>> {
    let max_n = vi.keys().next_back().copied().unwrap_or(0);
    let mut u = vec![0u64; max_n + 1];
    let mut out = BTreeMap::new();
    for n in 1..=max_n {
        if !vi.contains_key(&n) {
            return Err(Error::MissingCount(n));
        }
        u[n] = if n == 1 {
            1
        } else {
            let mut s = 0u64;
            for k in 2..=n {
                let term = vi[&k].checked_mul(u[n - k + 1]).ok_or(Error::Overflow(n))?;
                s = s.checked_add(term).ok_or(Error::Overflow(n))?;
            }
            s
        };
        out.insert(n, u[n]);
    }
    Ok(out)
}

/// Text table with rows `n, vi, total`, or `n, count` without totals.
pub fn render_table(t: &CountTable) -> String {
    let mut s = String::new();
    if t.total.is_some() {
        s.push_str("n, vi, total\n");
    } else {
        s.push_str("n, count\n");
    }
    for (&n, &v) in &t.vi {
        if let Some(total) = &t.total {
            let _ = writeln!(s, "{n}, {v}, {}", total.get(&n).copied().unwrap_or(0));
        } else {
            let _ = writeln!(s, "{n}, {v}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn map(v: &[u64]) -> BTreeMap<usize, u64> {
        v.iter().enumerate().map(|(i, &c)| (i + 1, c)).collect()
    }

    #[test]
    fn graded_six() {
        let t = totals_from_vi(&map(&[1, 1, 0, 1, 1, 3])).unwrap();
        assert_eq!(t.values().copied().collect::<Vec<_>>(), vec![1, 1, 1, 2, 4, 9]);
    }

    #[test]
    fn modular_eighteen() {
        let vi = [1, 1, 0, 1, 1, 2, 3, 7, 12, 28, 54, 127, 266, 614, 1356, 3134, 7091, 16482];
        let t = totals_from_vi(&map(&vi)).unwrap();
        assert_eq!(t[&18], 110_024);
    }

    #[test]
    fn chains_only() {
        let mut v = vec![1, 1];
        v.extend([0; 10]);
        let t = totals_from_vi(&map(&v)).unwrap();
        assert!(t.values().all(|&c| c == 1));
    }

    #[test]
    fn missing_entry() {
        let mut m = map(&[1, 1, 0]);
        m.insert(5, 1);
        assert!(matches!(totals_from_vi(&m), Err(Error::MissingCount(4))));
    }

    #[test]
    fn overflow_is_reported() {
        let mut v = vec![1, u64::MAX];
        v.extend([u64::MAX; 3]);
        assert!(matches!(totals_from_vi(&map(&v)), Err(Error::Overflow(_))));
    }

    #[test]
    fn rendering() {
        let semi = [1, 1, 0, 1, 1, 2, 4, 9, 21, 53, 139, 384, 1088, 3186];
        let t = CountTable::new("semimodular", map(&semi), 14, true).unwrap();
        assert!(render_table(&t).ends_with("14, 3186, 10232\n"));
        let geo = [1, 1, 0, 1, 1, 1, 1, 2, 1, 2, 1, 3, 2, 2, 3, 5];
        let t = CountTable::new("geometric", map(&geo), 16, false).unwrap();
        assert!(render_table(&t).ends_with("16, 5\n"));
        let empty = CountTable::new("graded", BTreeMap::new(), 0, true).unwrap();
        assert_eq!(render_table(&empty), "n, vi, total\n");
    }

    proptest! {
        #[test]
        fn totals_dominate_vi(v in proptest::collection::vec(0u64..4, 1..12)) {
            let mut v = v;
            v[0] = 1;
            let t = totals_from_vi(&map(&v)).unwrap();
            for (n, &c) in v.iter().enumerate().skip(1) {
                prop_assert!(t[&(n + 1)] >= c);
            }
        }
    }
}
