//! The depth poset of a filter: the dependencies between shallow
//! cancellations, built from two book-keeping matrix reductions.
//!
//! The column pass ([`reduce_alpha`]) repeatedly takes the leftmost 1 in the
//! last non-zero row as pivot `(s, t)`, adds column `t` to every later
//! column `y` with a 1 in row `s`, records `(t, y)`, and clears rows and
//! columns `s` and `t`. The row pass ([`reduce_omega`]) is the mirror image:
//! lowest 1 in the first non-zero column, row additions upwards, records
//! `(s, x)`. Each pivot is a shallow pair of the current quotient, so the
//! passes visit the pairs in two shallow orders: by decreasing birth and by
//! increasing death.
//!
//! A record `(t, y)` says the pair dying at `t` must be cancelled before the
//! pair dying at `y`; a record `(s, x)` says the same for the pairs born at
//! `s` and `x`. The transitive closure of those relations is the depth
//! poset. Records whose second cell is not a death (resp. birth) cell of a
//! pair relate to no pair and are dropped when translating.

use std::collections::{BTreeSet, HashMap};

use crate::complex::{CellId, Filter, LefschetzComplex};
use crate::error::{Error, Result};
use crate::gf2::{BitSet, OrderedBoundaryMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BirthDeathPair {
    pub birth: CellId,
    pub death: CellId,
    /// Dimension of the birth cell.
    pub dim: usize,
    pub birth_value: f64,
    pub death_value: f64,
    /// `death_value - birth_value`.
    pub persistence: f64,
}

impl BirthDeathPair {
    pub fn new(complex: &LefschetzComplex, filter: &Filter, birth: CellId, death: CellId) -> Self {
        let (birth_value, death_value) = (filter.value(birth), filter.value(death));
        BirthDeathPair {
            birth,
            death,
            dim: complex.dim(birth),
            birth_value,
            death_value,
            persistence: death_value - birth_value,
        }
    }

    fn at_positions(matrix: &OrderedBoundaryMatrix, s: usize, t: usize) -> Self {
        let (birth_value, death_value) = (matrix.value_at(s), matrix.value_at(t));
        BirthDeathPair {
            birth: matrix.cell_at(s),
            death: matrix.cell_at(t),
            dim: matrix.dim_at(s),
            birth_value,
            death_value,
            persistence: death_value - birth_value,
        }
    }

    pub fn key(&self) -> (CellId, CellId) {
        (self.birth, self.death)
    }

    /// `other` strictly contains this pair's interval.
    pub fn nested_in(&self, other: &BirthDeathPair) -> bool {
        other.birth_value < self.birth_value && self.death_value < other.death_value
    }

    pub fn display(&self, complex: &LefschetzComplex) -> String {
        format!("({},{})", complex.label(self.birth), complex.label(self.death))
    }
}

/// Relations recorded by the two passes, as cell pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BookKeeping {
    /// `(death, death)` records of the column pass.
    pub b_prime: BTreeSet<(CellId, CellId)>,
    /// `(birth, birth)` records of the row pass.
    pub b_double_prime: BTreeSet<(CellId, CellId)>,
}

/// Outcome of one reduction pass.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionPass {
    /// Pairs in the order the pass cancelled them.
    pub order: Vec<BirthDeathPair>,
    pub book: BTreeSet<(CellId, CellId)>,
}

/// Bottom-to-top column reduction, one cancellation per [`step`](Self::step).
///
/// Cleared rows and columns stay in the matrix as zero lines, so positions
/// are stable.
#[derive(Debug, Clone)]
pub struct ColumnReducer {
    matrix: OrderedBoundaryMatrix,
    alive: Vec<bool>,
    // Rows at or beyond the cursor are zero and stay zero.
    cursor: usize,
    pass: ReductionPass,
}

impl ColumnReducer {
    pub fn new(matrix: &OrderedBoundaryMatrix) -> Self {
        ColumnReducer {
            alive: vec![true; matrix.size()],
            cursor: matrix.size(),
            matrix: matrix.clone(),
            pass: ReductionPass { order: Vec::new(), book: BTreeSet::new() },
        }
    }

    pub fn step(&mut self) -> Option<BirthDeathPair> {
        while self.cursor > 0 && self.matrix.row(self.cursor - 1).is_empty() {
            self.cursor -= 1;
        }
        let s = self.cursor.checked_sub(1)?;
        let row: Vec<usize> = self.matrix.row(s).ones().collect();
        let t = row[0];
        for &y in &row[1..] {
            self.matrix.add_column_unchecked(t, y);
            self.pass.book.insert((self.matrix.cell_at(t), self.matrix.cell_at(y)));
        }
        let pair = BirthDeathPair::at_positions(&self.matrix, s, t);
        self.matrix.clear_line(s);
        self.matrix.clear_line(t);
        self.alive[s] = false;
        self.alive[t] = false;
        self.pass.order.push(pair);
        Some(pair)
    }

    /// Current working matrix; cancelled positions are zero lines.
    pub fn matrix(&self) -> &OrderedBoundaryMatrix {
        &self.matrix
    }

    /// Whether the cell at `position` has not been cancelled yet.
    pub fn is_alive(&self, position: usize) -> bool {
        self.alive[position]
    }

    pub fn finish(mut self) -> ReductionPass {
        while self.step().is_some() {}
        self.pass
    }
}

/// Left-to-right row reduction, the mirror image of [`ColumnReducer`].
#[derive(Debug, Clone)]
pub struct RowReducer {
    matrix: OrderedBoundaryMatrix,
    alive: Vec<bool>,
    // Columns before the cursor are zero and stay zero.
    cursor: usize,
    pass: ReductionPass,
}

impl RowReducer {
    pub fn new(matrix: &OrderedBoundaryMatrix) -> Self {
        RowReducer {
            alive: vec![true; matrix.size()],
            cursor: 0,
            matrix: matrix.clone(),
            pass: ReductionPass { order: Vec::new(), book: BTreeSet::new() },
        }
    }

    pub fn step(&mut self) -> Option<BirthDeathPair> {
        let n = self.matrix.size();
        while self.cursor < n && self.matrix.column(self.cursor).is_empty() {
            self.cursor += 1;
        }
        if self.cursor == n {
            return None;
        }
        let t = self.cursor;
        let column: Vec<usize> = self.matrix.column(t).ones().collect();
        let (&s, above) = column.split_last().expect("column is non-zero");
        for &x in above {
            self.matrix.add_row_unchecked(s, x);
            self.pass.book.insert((self.matrix.cell_at(s), self.matrix.cell_at(x)));
        }
        let pair = BirthDeathPair::at_positions(&self.matrix, s, t);
        self.matrix.clear_line(s);
        self.matrix.clear_line(t);
        self.alive[s] = false;
        self.alive[t] = false;
        self.pass.order.push(pair);
        Some(pair)
    }

    pub fn matrix(&self) -> &OrderedBoundaryMatrix {
        &self.matrix
    }

    pub fn is_alive(&self, position: usize) -> bool {
        self.alive[position]
    }

    pub fn finish(mut self) -> ReductionPass {
        while self.step().is_some() {}
        self.pass
    }
}

/// Column pass: pairs by decreasing birth value, with `(death, death)`
/// records.
pub fn reduce_alpha(matrix: &OrderedBoundaryMatrix) -> ReductionPass {
    ColumnReducer::new(matrix).finish()
}

/// Row pass: pairs by increasing death value, with `(birth, birth)` records.
pub fn reduce_omega(matrix: &OrderedBoundaryMatrix) -> ReductionPass {
    RowReducer::new(matrix).finish()
}

/// Both passes, run side by side on separate copies of the matrix.
pub fn book_keeping(matrix: &OrderedBoundaryMatrix) -> (ReductionPass, ReductionPass) {
    rayon::join(|| reduce_alpha(matrix), || reduce_omega(matrix))
}

pub fn build_depth_poset(complex: &LefschetzComplex, filter: &Filter) -> Result<DepthPoset> {
    let matrix = OrderedBoundaryMatrix::build(complex, filter);
    let (alpha, omega) = book_keeping(&matrix);
    let alpha_keys: BTreeSet<_> = alpha.order.iter().map(BirthDeathPair::key).collect();
    let omega_keys: BTreeSet<_> = omega.order.iter().map(BirthDeathPair::key).collect();
    if alpha_keys != omega_keys {
        return Err(Error::Internal("column and row passes found different pairs".into()));
    }
    let book = BookKeeping {
        b_prime: alpha.book,
        b_double_prime: omega.book,
    };
    DepthPoset::from_book_keeping(alpha.order, &book)
}

/// Pairs by increasing persistence; ties by birth value, then birth id.
pub fn order_pi(pairs: &[BirthDeathPair]) -> Vec<BirthDeathPair> {
    let mut order = pairs.to_vec();
    order.sort_by(|a, b| {
        a.persistence
            .total_cmp(&b.persistence)
            .then(a.birth_value.total_cmp(&b.birth_value))
            .then(a.birth.cmp(&b.birth))
    });
    order
}

/// A strict partial order on birth-death pairs.
///
/// Elements are sorted by birth value. `closure` holds every relation
/// `(i, j)`, meaning element `i` must be cancelled before element `j`;
/// `hasse` is its transitive reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthPoset {
    elements: Vec<BirthDeathPair>,
    closure: BTreeSet<(usize, usize)>,
    hasse: BTreeSet<(usize, usize)>,
}

impl DepthPoset {
    /// Builds the poset generated by `relations` (indices into `elements`).
    /// Fails if the relations contain a cycle.
    pub fn new(elements: Vec<BirthDeathPair>, relations: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = elements.len();
        let mut sorted: Vec<usize> = (0..n).collect();
        sorted.sort_by(|&a, &b| elements[a].birth_value.total_cmp(&elements[b].birth_value));
        let mut rank = vec![0; n];
        for (r, &i) in sorted.iter().enumerate() {
            rank[i] = r;
        }

        let mut reach = vec![BitSet::new(n); n];
        for (a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::Internal(format!("relation ({a}, {b}) outside {n} elements")));
            }
            reach[rank[a]].insert(rank[b]);
        }
        for k in 0..n {
            let via = reach[k].clone();
            for row in reach.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| reach[i].contains(i)) {
            return Err(Error::Internal(format!(
                "relations are cyclic through the pair born at cell {}",
                elements[sorted[i]].birth
            )));
        }
        let mut closure = BTreeSet::new();
        let mut hasse = BTreeSet::new();
        for i in 0..n {
            let mut indirect = BitSet::new(n);
            for k in reach[i].ones() {
                indirect.union_with(&reach[k]);
            }
            for j in reach[i].ones() {
                closure.insert((i, j));
                if !indirect.contains(j) {
                    hasse.insert((i, j));
                }
            }
        }
        Ok(DepthPoset {
            elements: sorted.iter().map(|&i| elements[i]).collect(),
            closure,
            hasse,
        })
    }

    /// Translates book-keeping records into pair relations.
    pub fn from_book_keeping(pairs: Vec<BirthDeathPair>, book: &BookKeeping) -> Result<Self> {
        let by_death: HashMap<CellId, usize> = pairs.iter().enumerate().map(|(i, p)| (p.death, i)).collect();
        let by_birth: HashMap<CellId, usize> = pairs.iter().enumerate().map(|(i, p)| (p.birth, i)).collect();
        let mut relations = Vec::new();
        for &(t, y) in &book.b_prime {
            let phi = *by_death
                .get(&t)
                .ok_or_else(|| Error::Internal(format!("column record starts at cell {t}, which gives no death")))?;
            if let Some(&psi) = by_death.get(&y) {
                relations.push((phi, psi));
            }
        }
        for &(s, x) in &book.b_double_prime {
            let phi = *by_birth
                .get(&s)
                .ok_or_else(|| Error::Internal(format!("row record starts at cell {s}, which is not a paired birth")))?;
            if let Some(&psi) = by_birth.get(&x) {
                relations.push((phi, psi));
            }
        }
        DepthPoset::new(pairs, relations)
    }

    pub fn elements(&self) -> &[BirthDeathPair] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn closure(&self) -> &BTreeSet<(usize, usize)> {
        &self.closure
    }

    pub fn hasse(&self) -> &BTreeSet<(usize, usize)> {
        &self.hasse
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.closure.contains(&(a, b))
    }

    pub fn index_of(&self, birth: CellId, death: CellId) -> Option<usize> {
        self.elements.iter().position(|p| p.birth == birth && p.death == death)
    }

    /// Closure relations as `((birth, death), (birth, death))` cell pairs.
    pub fn relations_by_cells(&self) -> BTreeSet<((CellId, CellId), (CellId, CellId))> {
        self.closure
            .iter()
            .map(|&(a, b)| (self.elements[a].key(), self.elements[b].key()))
            .collect()
    }

    /// Every relation joins properly nested intervals, the later-born pair
    /// inside the earlier-born one.
    pub fn relations_are_nested(&self) -> bool {
        self.closure
            .iter()
            .all(|&(a, b)| self.elements[a].nested_in(&self.elements[b]))
    }

    fn positions_of(&self, order: &[BirthDeathPair]) -> Result<Vec<usize>> {
        if order.len() != self.len() {
            return Err(Error::NotAPermutation);
        }
        let index: HashMap<(CellId, CellId), usize> =
            self.elements.iter().enumerate().map(|(i, p)| (p.key(), i)).collect();
        let mut position = vec![usize::MAX; self.len()];
        for (k, p) in order.iter().enumerate() {
            let i = *index.get(&p.key()).ok_or(Error::NotAPermutation)?;
            if position[i] != usize::MAX {
                return Err(Error::NotAPermutation);
            }
            position[i] = k;
        }
        Ok(position)
    }

    /// Whether `order` (a permutation of the elements) respects every
    /// relation.
    pub fn is_linear_extension(&self, order: &[BirthDeathPair]) -> Result<bool> {
        let position = self.positions_of(order)?;
        Ok(self.closure.iter().all(|&(a, b)| position[a] < position[b]))
    }

    /// All linear extensions as element-index sequences, by backtracking over
    /// minimal elements in index order.
    pub fn linear_extensions(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.len();
        let mut indegree = vec![0usize; n];
        let mut successors = vec![Vec::new(); n];
        for &(a, b) in &self.hasse {
            indegree[b] += 1;
            successors[a].push(b);
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(n);
        let mut used = vec![false; n];
        extend(&successors, &mut indegree, &mut used, &mut prefix, &mut out, cap)?;
        Ok(out)
    }

    /// One sub-poset per birth dimension `0..=max dim`, each holding the
    /// relations among its own elements.
    pub fn split_by_dimension(&self) -> Vec<DepthPoset> {
        let Some(top) = self.elements.iter().map(|p| p.dim).max() else {
            return Vec::new();
        };
        (0..=top)
            .map(|p| {
                let members: Vec<usize> = (0..self.len()).filter(|&i| self.elements[i].dim == p).collect();
                let local: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
                let relations: Vec<(usize, usize)> = self
                    .closure
                    .iter()
                    .filter_map(|(a, b)| Some((*local.get(a)?, *local.get(b)?)))
                    .collect();
                let elements = members.iter().map(|&i| self.elements[i]).collect();
                DepthPoset::new(elements, relations).expect("restriction of an acyclic relation")
            })
            .collect()
    }
}

fn extend(
    successors: &[Vec<usize>],
    indegree: &mut [usize],
    used: &mut [bool],
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    let n = indegree.len();
    if prefix.len() == n {
        if out.len() == cap {
            return Err(Error::CapExceeded(cap));
        }
        out.push(prefix.clone());
        return Ok(());
    }
    for i in 0..n {
        if used[i] || indegree[i] != 0 {
            continue;
        }
        used[i] = true;
        prefix.push(i);
        for &j in &successors[i] {
            indegree[j] -= 1;
        }
        let result = extend(successors, indegree, used, prefix, out, cap);
        for &j in &successors[i] {
            indegree[j] += 1;
        }
        prefix.pop();
        used[i] = false;
        result?;
    }
    Ok(())
}
