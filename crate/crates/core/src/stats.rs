//! Shape statistics: mean length per size and mean level widths.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

pub type Rational = Ratio<u64>;

/// Where levels of lattices with different lengths are lined up.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Anchor {
    #[default]
    Top,
    Bottom,
}

impl Anchor {
    pub fn name(self) -> &'static str {
        match self {
            Anchor::Top => "top",
            Anchor::Bottom => "bottom",
        }
    }
}

/// Mean length of the lattices of each size present in `lattices`.
pub fn average_length(lattices: &[Lattice]) -> Result<BTreeMap<usize, Rational>> {
    if lattices.is_empty() {
        return Err(Error::Empty("no lattices"));
    }
    let mut acc: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
    for l in lattices {
        let e = acc.entry(l.size()).or_default();
        e.0 += l.length() as u64;
        e.1 += 1;
    }
    Ok(acc
        .into_iter()
        .map(|(n, (sum, count))| (n, Rational::new(sum, count)))
        .collect())
}

/// Mean number of elements on each level over the lattices of size `n`.
/// Shorter lattices contribute zeros past their last level.
pub fn average_level_widths(lattices: &[Lattice], n: usize, anchor: Anchor) -> Result<Vec<Rational>> {
    let group: Vec<&Lattice> = lattices.iter().filter(|l| l.size() == n).collect();
    if group.is_empty() {
        return Err(Error::Empty("no lattices of the requested size"));
    }
    let levels = group.iter().map(|l| l.num_levels()).max().unwrap_or(0);
    let mut sums = vec![0u64; levels];
    for l in &group {
        let k = l.num_levels();
        for lev in 0..k {
            let slot = match anchor {
                Anchor::Top => lev,
                Anchor::Bottom => levels - k + lev,
            };
            sums[slot] += l.level_width(lev) as u64;
        }
    }
    let count = group.len() as u64;
    Ok(sums.into_iter().map(|s| Rational::new(s, count)).collect())
}

fn decimal(r: &Rational) -> String {
    format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
}

/// CSV with columns `n,family,mean_length`.
pub fn length_csv(rows: &[(String, BTreeMap<usize, Rational>)]) -> String {
    let mut s = String::from("n,family,mean_length\n");
    for (family, means) in rows {
        for (n, m) in means {
            let _ = writeln!(s, "{n},{family},{}", decimal(m));
        }
    }
    s
}

/// CSV with columns `level,family,mean_width`, preceded by a comment line
/// naming the alignment.
pub fn widths_csv(n: usize, anchor: Anchor, rows: &[(String, Vec<Rational>)]) -> String {
    let mut s = format!("# n={n}, levels aligned from the {}\n", anchor.name());
    s.push_str("level,family,mean_width\n");
    for (family, widths) in rows {
        for (k, w) in widths.iter().enumerate() {
            let _ = writeln!(s, "{k},{family},{}", decimal(w));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_four() {
        let ls = [Lattice::chain(4), Lattice::boolean(2)];
        let m = average_length(&ls).unwrap();
        assert_eq!(m[&4], Rational::new(5, 2));
        assert_eq!(average_length(&[Lattice::point()]).unwrap()[&1], Rational::from_integer(0));
    }

    #[test]
    fn widths_of_m19() {
        let w = average_level_widths(&[Lattice::m(19)], 21, Anchor::Top).unwrap();
        assert_eq!(w, [1, 19, 1].map(Rational::from_integer).to_vec());
    }

    #[test]
    fn widths_conserve_size() {
        let ls = [Lattice::chain(4), Lattice::boolean(2)];
        for anchor in [Anchor::Top, Anchor::Bottom] {
            let w = average_level_widths(&ls, 4, anchor).unwrap();
            assert_eq!(w.iter().copied().sum::<Rational>(), Rational::from_integer(4));
        }
        let top = average_level_widths(&ls, 4, Anchor::Top).unwrap();
        assert_eq!(top[3], Rational::new(1, 2));
        let bottom = average_level_widths(&ls, 4, Anchor::Bottom).unwrap();
        assert_eq!(bottom[0], Rational::new(1, 2));
    }

    #[test]
    fn empty_groups() {
        assert!(average_length(&[]).is_err());
        assert!(average_level_widths(&[Lattice::m(2)], 5, Anchor::Top).is_err());
    }

    #[test]
    fn csv_layout() {
        let mut m = BTreeMap::new();
        m.insert(4, Rational::new(5, 2));
        assert_eq!(length_csv(&[("modular".into(), m)]), "n,family,mean_length\n4,modular,2.500000\n");
        let w = widths_csv(3, Anchor::Top, &[("graded".into(), vec![Rational::from_integer(1)])]);
        assert!(w.starts_with("# n=3, levels aligned from the top\nlevel,family,mean_width\n0,graded,"));
    }
}
