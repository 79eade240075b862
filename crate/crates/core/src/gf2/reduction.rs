use std::collections::HashMap;

use super::bits::BitSet;
use super::matrix::OrderedBoundaryMatrix;
use crate::complex::{CellId, Filter, LefschetzComplex};
use crate::depth_poset::BirthDeathPair;
use crate::error::{Error, Result};

/// Persistence pairing: birth-death pairs and unpaired (essential) births.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pairs: Vec<(CellId, CellId)>,
    essential: Vec<CellId>,
    partner: Vec<Option<CellId>>,
}

impl Pairing {
    /// `pairs` as `(birth, death)`; `cells` is the size of the complex.
    pub fn new(cells: usize, mut pairs: Vec<(CellId, CellId)>, mut essential: Vec<CellId>) -> Self {
        let mut partner = vec![None; cells];
        for &(b, d) in &pairs {
            partner[b] = Some(d);
            partner[d] = Some(b);
        }
        pairs.sort_unstable();
        essential.sort_unstable();
        Pairing { pairs, essential, partner }
    }

    /// Pairs `(birth, death)`, sorted by birth id.
    pub fn pairs(&self) -> &[(CellId, CellId)] {
        &self.pairs
    }

    /// Essential cells, sorted by id.
    pub fn essential(&self) -> &[CellId] {
        &self.essential
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, birth: CellId, death: CellId) -> bool {
        self.pairs.binary_search(&(birth, death)).is_ok()
    }

    pub fn is_essential(&self, cell: CellId) -> bool {
        self.essential.binary_search(&cell).is_ok()
    }

    /// Whether the cell gives death, i.e. is the second entry of a pair.
    pub fn gives_death(&self, cell: CellId) -> bool {
        self.birth_of(cell).is_some()
    }

    pub fn birth_of(&self, death: CellId) -> Option<CellId> {
        self.partner[death].filter(|&b| self.contains(b, death))
    }

    pub fn death_of(&self, birth: CellId) -> Option<CellId> {
        self.partner[birth].filter(|&d| self.contains(birth, d))
    }

    pub fn birth_death_pairs(&self, complex: &LefschetzComplex, filter: &Filter) -> Vec<BirthDeathPair> {
        self.pairs
            .iter()
            .map(|&(b, d)| BirthDeathPair::new(complex, filter, b, d))
            .collect()
    }
}

/// Left-to-right column reduction by lowest-one collisions.
pub fn standard_reduction(matrix: &OrderedBoundaryMatrix) -> Pairing {
    let n = matrix.size();
    let mut reduced: Vec<BitSet> = Vec::with_capacity(n);
    let mut low_owner: Vec<Option<usize>> = vec![None; n];
    for j in 0..n {
        let mut col = matrix.column(j).clone();
        while let Some(low) = col.last() {
            match low_owner[low] {
                Some(k) => col.xor_assign(&reduced[k]),
                None => {
                    low_owner[low] = Some(j);
                    break;
                }
            }
        }
        reduced.push(col);
    }
    collect_pairing(matrix, &low_owner, |j| reduced[j].is_empty())
}

/// Column reduction by decreasing dimension, skipping columns of cells
/// already known to give birth to a paired class. Produces the same pairing
/// as [`standard_reduction`].
pub fn reduction_with_clearing(matrix: &OrderedBoundaryMatrix) -> Pairing {
    let n = matrix.size();
    let top = (0..n).map(|p| matrix.dim_at(p)).max().unwrap_or(0);
    let mut reduced: Vec<Option<BitSet>> = vec![None; n];
    let mut low_owner: Vec<Option<usize>> = vec![None; n];
    let mut cleared = vec![false; n];
    for dim in (0..=top).rev() {
        for j in (0..n).filter(|&j| matrix.dim_at(j) == dim) {
            if cleared[j] {
                continue;
            }
            let mut col = matrix.column(j).clone();
            while let Some(low) = col.last() {
                match low_owner[low] {
                    Some(k) => col.xor_assign(reduced[k].as_ref().expect("owner reduced")),
                    None => {
                        low_owner[low] = Some(j);
                        cleared[low] = true;
                        break;
                    }
                }
            }
            reduced[j] = Some(col);
        }
    }
    collect_pairing(matrix, &low_owner, |j| reduced[j].as_ref().is_none_or(BitSet::is_empty))
}

fn collect_pairing(
    matrix: &OrderedBoundaryMatrix,
    low_owner: &[Option<usize>],
    column_is_zero: impl Fn(usize) -> bool,
) -> Pairing {
    let n = matrix.size();
    let mut pairs = Vec::new();
    let mut essential = Vec::new();
    for (i, owner) in low_owner.iter().enumerate() {
        match owner {
            Some(j) => pairs.push((matrix.cell_at(i), matrix.cell_at(*j))),
            None if column_is_zero(i) => essential.push(matrix.cell_at(i)),
            None => {}
        }
    }
    Pairing::new(n, pairs, essential)
}

/// The canonical cycle `d_y = c_y + y` of a birth-giving cell `y`: the
/// unique chain `c_y` of earlier death-giving cells of the same dimension
/// with the same boundary as `y`. Returned as a set of cell ids.
pub fn canonical_cycle(matrix: &OrderedBoundaryMatrix, pairing: &Pairing, y: CellId) -> Result<BitSet> {
    let n = matrix.size();
    if pairing.gives_death(y) {
        return Err(Error::GivesDeath(format!("#{y}")));
    }
    let py = matrix.position_of(y);
    let candidates: Vec<usize> = (0..py)
        .filter(|&p| matrix.dim_at(p) == matrix.dim_at(py) && pairing.gives_death(matrix.cell_at(p)))
        .collect();

    // Echelon form keyed by lowest row, each row carrying which candidates
    // were combined into it.
    let mut pivots: HashMap<usize, (BitSet, BitSet)> = HashMap::new();
    for (k, &p) in candidates.iter().enumerate() {
        let mut col = matrix.column(p).clone();
        let mut tag = BitSet::from_ones(candidates.len(), [k]);
        loop {
            let Some(low) = col.last() else {
                return Err(Error::Internal(format!(
                    "death columns before position {py} are dependent; canonical cycle is not unique"
                )));
            };
            match pivots.get(&low) {
                Some((c, t)) => {
                    col.xor_assign(c);
                    tag.xor_assign(t);
                }
                None => {
                    pivots.insert(low, (col, tag));
                    break;
                }
            }
        }
    }
    let mut target = matrix.column(py).clone();
    let mut used = BitSet::new(candidates.len());
    while let Some(low) = target.last() {
        let Some((c, t)) = pivots.get(&low) else {
            return Err(Error::Internal(format!(
                "boundary of cell #{y} is not a sum of earlier death boundaries"
            )));
        };
        target.xor_assign(c);
        used.xor_assign(t);
    }
    let mut cycle = BitSet::new(n);
    cycle.insert(y);
    for k in used.ones() {
        cycle.insert(matrix.cell_at(candidates[k]));
    }
    Ok(cycle)
}
