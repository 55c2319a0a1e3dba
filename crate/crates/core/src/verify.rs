//! Consistency checks over lattice lists.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::canon::canonical_form;
use crate::codec::{decode, encode};
use crate::error::Result;

/// Outcome of a list check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: &'static str,
    pub records: usize,
    /// First record violating the check, in input order.
    pub offending: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.offending.is_none()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.offending {
            None => write!(f, "{}: ok ({} records)", self.check, self.records),
            Some(r) => write!(f, "{}: FAILED at {r} ({} records)", self.check, self.records),
        }
    }
}

/// Re-derives the canonical record of every input record.
pub fn recanonicalize(list: &[String]) -> Result<Vec<String>> {
    list.par_iter()
        .map(|r| Ok(encode(&canonical_form(&decode(r)?.to_lattice()?))))
        .collect()
}

/// No two records describe isomorphic lattices.
pub fn check_isomorph_free(list: &[String]) -> Result<Report> {
    let canon = recanonicalize(list)?;
    let mut seen = HashSet::with_capacity(canon.len());
    let offending = list
        .iter()
        .zip(&canon)
        .find(|(_, c)| !seen.insert(c.as_str()))
        .map(|(r, _)| r.clone());
    Ok(Report {
        check: "isomorph-free",
        records: list.len(),
        offending,
    })
}

/// Every lattice of `sub` is isomorphic to one of `sup`.
pub fn check_containment(sub: &[String], sup: &[String]) -> Result<Report> {
    let sup: HashSet<String> = recanonicalize(sup)?.into_iter().collect();
    let canon = recanonicalize(sub)?;
    let offending = sub
        .iter()
        .zip(&canon)
        .find(|(_, c)| !sup.contains(*c))
        .map(|(r, _)| r.clone());
    Ok(Report {
        check: "containment",
        records: sub.len(),
        offending,
    })
}

/// The dual of every listed lattice is listed too.
pub fn check_duality_closed(list: &[String]) -> Result<Report> {
    let set: HashSet<String> = recanonicalize(list)?.into_iter().collect();
    let duals: Vec<String> = list
        .par_iter()
        .map(|r| Ok(encode(&canonical_form(&decode(r)?.to_lattice()?.dual()))))
        .collect::<Result<_>>()?;
    let offending = list
        .iter()
        .zip(&duals)
        .find(|(_, d)| !set.contains(*d))
        .map(|(r, _)| r.clone());
    Ok(Report {
        check: "duality-closed",
        records: list.len(),
        offending,
    })
}
