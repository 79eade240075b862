//! Shallow pairs and cancellations.
//!
//! Cancelling a facet-cofacet pair `s < t` removes both cells and rewrites
//! the incidence as `d'(x,y) = d(x,y) + d(s,y) * d(x,t)`, i.e. column `t` is
//! added to every other column with a 1 in row `s` before rows and columns
//! `s` and `t` are dropped. The quotient keeps labels and filter values.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{CellId, Filter, LefschetzComplex, Reindexed};
use crate::error::{Error, Result};
use crate::gf2::{standard_reduction, BitSet, OrderedBoundaryMatrix};

/// `birth` is the last facet of `death` and `death` the first cofacet of
/// `birth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShallowPair {
    pub birth: CellId,
    pub death: CellId,
}

pub fn is_shallow(complex: &LefschetzComplex, filter: &Filter, s: CellId, t: CellId) -> bool {
    if s >= complex.len() || t >= complex.len() || !complex.is_facet(s, t) {
        return false;
    }
    let (fs, ft) = (filter.value(s), filter.value(t));
    complex.facets(t).iter().all(|&x| filter.value(x) <= fs)
        && complex.cofacets(s).iter().all(|&y| filter.value(y) >= ft)
}

/// All shallow pairs, sorted by the value of the death cell.
pub fn shallow_pairs(complex: &LefschetzComplex, filter: &Filter) -> Vec<ShallowPair> {
    let last_facet = |t: CellId| {
        complex
            .facets(t)
            .iter()
            .copied()
            .max_by(|&a, &b| filter.value(a).total_cmp(&filter.value(b)))
    };
    let first_cofacet = |s: CellId| {
        complex
            .cofacets(s)
            .iter()
            .copied()
            .min_by(|&a, &b| filter.value(a).total_cmp(&filter.value(b)))
    };
    let mut pairs: Vec<ShallowPair> = (0..complex.len())
        .filter_map(|t| {
            let s = last_facet(t)?;
            (first_cofacet(s) == Some(t)).then_some(ShallowPair { birth: s, death: t })
        })
        .collect();
    pairs.sort_by(|a, b| filter.value(a.death).total_cmp(&filter.value(b.death)));
    pairs
}

/// Cancels `s < t` in the bare complex. Returns the quotient and the source
/// id of each surviving cell.
pub fn cancel_complex(complex: &LefschetzComplex, s: CellId, t: CellId) -> Result<(LefschetzComplex, Vec<CellId>)> {
    let n = complex.len();
    for id in [s, t] {
        if id >= n {
            return Err(Error::UnknownCell { id, len: n });
        }
    }
    if !complex.is_facet(s, t) {
        return Err(Error::NotIncident {
            facet: complex.label(s),
            cofacet: complex.label(t),
        });
    }
    let column_t = BitSet::from_ones(n, complex.facets(t).iter().copied());
    let origin: Vec<CellId> = (0..n).filter(|&i| i != s && i != t).collect();
    let mut new_id = vec![usize::MAX; n];
    for (new, &old) in origin.iter().enumerate() {
        new_id[old] = new;
    }
    let mut incidence = Vec::with_capacity(complex.incidence_count());
    for &y in &origin {
        let mut column = BitSet::from_ones(n, complex.facets(y).iter().copied());
        if complex.is_facet(s, y) {
            column.xor_assign(&column_t);
        }
        incidence.extend(
            column
                .ones()
                .filter(|&x| x != s && x != t)
                .map(|x| (new_id[x], new_id[y])),
        );
    }
    let cells = origin
        .iter()
        .map(|&i| (complex.dim(i), complex.cell(i).label.clone()))
        .collect();
    Ok((LefschetzComplex::new(cells, incidence)?, origin))
}

/// Cancels `s < t` and restricts the filter. Fails if `s` is not a facet of
/// `t`, or if the restricted values are not monotone on the quotient (which
/// can happen only when the pair is not shallow).
pub fn cancel(complex: &LefschetzComplex, filter: &Filter, s: CellId, t: CellId) -> Result<Reindexed> {
    let (quotient, origin) = cancel_complex(complex, s, t)?;
    let filter = Filter::new(&quotient, filter.restrict(&origin))?;
    Ok(Reindexed {
        complex: quotient,
        filter,
        origin,
    })
}

pub fn cancel_shallow(complex: &LefschetzComplex, filter: &Filter, pair: ShallowPair) -> Result<Reindexed> {
    if !is_shallow(complex, filter, pair.birth, pair.death) {
        return Err(Error::NotShallow {
            birth: label_or_id(complex, pair.birth),
            death: label_or_id(complex, pair.death),
        });
    }
    cancel(complex, filter, pair.birth, pair.death)
}

/// [`cancel_shallow`] followed by a check that the birth-death pairs of the
/// quotient are exactly the old ones minus `pair`, and that every other old
/// shallow pair is still shallow.
pub fn cancel_shallow_checked(complex: &LefschetzComplex, filter: &Filter, pair: ShallowPair) -> Result<Reindexed> {
    let quotient = cancel_shallow(complex, filter, pair)?;
    let before = standard_reduction(&OrderedBoundaryMatrix::build(complex, filter));
    let after = standard_reduction(&OrderedBoundaryMatrix::build(&quotient.complex, &quotient.filter));

    let expected: BTreeSet<(CellId, CellId)> = before
        .pairs()
        .iter()
        .copied()
        .filter(|&p| p != (pair.birth, pair.death))
        .collect();
    let got: BTreeSet<(CellId, CellId)> = after
        .pairs()
        .iter()
        .map(|&(b, d)| (quotient.origin[b], quotient.origin[d]))
        .collect();
    if expected != got {
        return Err(Error::Internal(format!(
            "birth-death pairs changed beyond ({}, {})",
            complex.label(pair.birth),
            complex.label(pair.death)
        )));
    }
    let shallow_after: BTreeSet<(CellId, CellId)> = shallow_pairs(&quotient.complex, &quotient.filter)
        .iter()
        .map(|p| (quotient.origin[p.birth], quotient.origin[p.death]))
        .collect();
    for p in shallow_pairs(complex, filter) {
        if p != pair && !shallow_after.contains(&(p.birth, p.death)) {
            return Err(Error::Internal(format!(
                "({}, {}) stopped being shallow",
                complex.label(p.birth),
                complex.label(p.death)
            )));
        }
    }
    Ok(quotient)
}

/// A cancellation sequence stopped because a pair was not shallow (or no
/// longer present) at its turn. `step` counts from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("pair at step {step} is not shallow when its turn comes")]
pub struct CancelFailure {
    pub step: usize,
}

/// Cancels `pairs` (given as ids of the input complex) in order, requiring
/// each one to be shallow at its turn. The result's `origin` maps to the
/// input complex.
pub fn cancel_sequence(
    complex: &LefschetzComplex,
    filter: &Filter,
    pairs: &[(CellId, CellId)],
) -> std::result::Result<Reindexed, CancelFailure> {
    let mut current = Reindexed {
        complex: complex.clone(),
        filter: filter.clone(),
        origin: (0..complex.len()).collect(),
    };
    for (k, &(s, t)) in pairs.iter().enumerate() {
        let failure = CancelFailure { step: k + 1 };
        let (Some(s), Some(t)) = (current.new_id(s), current.new_id(t)) else {
            return Err(failure);
        };
        let next = cancel_shallow(&current.complex, &current.filter, ShallowPair { birth: s, death: t })
            .map_err(|_| failure)?;
        current = Reindexed {
            origin: next.origin.iter().map(|&i| current.origin[i]).collect(),
            complex: next.complex,
            filter: next.filter,
        };
    }
    Ok(current)
}

fn label_or_id(complex: &LefschetzComplex, id: CellId) -> String {
    if id < complex.len() {
        complex.label(id)
    } else {
        format!("#{id}")
    }
}
