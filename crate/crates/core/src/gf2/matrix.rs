use std::fmt::Write as _;

use super::bits::BitSet;
use crate::complex::{CellId, Filter, LefschetzComplex};
use crate::error::{Error, Result};

/// Boundary matrix with rows and columns sorted by filter value.
///
/// Entry `(i, j)` is 1 iff the cell at position `i` is a facet of the cell at
/// position `j`. Columns and rows are both stored as bit sets over
/// positions and kept in sync by every mutation.
///
/// "Below" and "last" refer to larger positions (later in the filter), so
/// the lower-left minor at `(s, t)` keeps rows `>= s` and columns `<= t`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedBoundaryMatrix {
    order: Vec<CellId>,
    position: Vec<usize>,
    dims: Vec<usize>,
    values: Vec<f64>,
    columns: Vec<BitSet>,
    rows: Vec<BitSet>,
}

impl OrderedBoundaryMatrix {
    pub fn build(complex: &LefschetzComplex, filter: &Filter) -> Self {
        let n = complex.len();
        let order = filter.order();
        let mut position = vec![0; n];
        for (p, &c) in order.iter().enumerate() {
            position[c] = p;
        }
        let mut columns = vec![BitSet::new(n); n];
        let mut rows = vec![BitSet::new(n); n];
        for (x, y) in complex.incidences() {
            let (i, j) = (position[x], position[y]);
            columns[j].insert(i);
            rows[i].insert(j);
        }
        OrderedBoundaryMatrix {
            dims: order.iter().map(|&c| complex.dim(c)).collect(),
            values: order.iter().map(|&c| filter.value(c)).collect(),
            order,
            position,
            columns,
            rows,
        }
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn cell_at(&self, position: usize) -> CellId {
        self.order[position]
    }

    pub fn position_of(&self, cell: CellId) -> usize {
        self.position[cell]
    }

    pub fn dim_at(&self, position: usize) -> usize {
        self.dims[position]
    }

    pub fn value_at(&self, position: usize) -> f64 {
        self.values[position]
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].contains(row)
    }

    pub fn column(&self, col: usize) -> &BitSet {
        &self.columns[col]
    }

    pub fn row(&self, row: usize) -> &BitSet {
        &self.rows[row]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BitSet::is_empty)
    }

    /// Non-zero entries as `(row, col)` positions, column-major.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.ones().map(move |i| (i, j)))
            .collect()
    }

    fn check(&self, position: usize) -> Result<()> {
        if position >= self.size() {
            return Err(Error::PositionOutOfRange { position, size: self.size() });
        }
        Ok(())
    }

    /// Adds column `from` to column `to`.
    pub fn add_column(&mut self, from: usize, to: usize) -> Result<()> {
        self.check(from)?;
        self.check(to)?;
        if from == to {
            return Err(Error::SelfAddition(from));
        }
        self.add_column_unchecked(from, to);
        Ok(())
    }

    pub(crate) fn add_column_unchecked(&mut self, from: usize, to: usize) {
        let (src, dst) = pair_mut(&mut self.columns, from, to);
        dst.xor_assign(src);
        for i in self.columns[from].ones() {
            self.rows[i].toggle(to);
        }
    }

    /// Adds row `from` to row `to`.
    pub fn add_row(&mut self, from: usize, to: usize) -> Result<()> {
        self.check(from)?;
        self.check(to)?;
        if from == to {
            return Err(Error::SelfAddition(from));
        }
        self.add_row_unchecked(from, to);
        Ok(())
    }

    pub(crate) fn add_row_unchecked(&mut self, from: usize, to: usize) {
        let (src, dst) = pair_mut(&mut self.rows, from, to);
        dst.xor_assign(src);
        for j in self.rows[from].ones() {
            self.columns[j].toggle(to);
        }
    }

    /// Zeroes row and column `position`.
    pub(crate) fn clear_line(&mut self, position: usize) {
        let n = self.size();
        let col = std::mem::replace(&mut self.columns[position], BitSet::new(n));
        for i in col.ones() {
            self.rows[i].remove(position);
        }
        let row = std::mem::replace(&mut self.rows[position], BitSet::new(n));
        for j in row.ones() {
            self.columns[j].remove(position);
        }
    }

    /// Whether the row view is the transpose of the column view.
    pub fn mirrors_agree(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.columns[j].contains(i) == self.rows[i].contains(j)))
    }

    /// GF(2) rank of the lower-left minor keeping rows `>= s` and columns
    /// `<= t`. Works on a scratch copy.
    pub fn minor_rank(&self, s: usize, t: usize) -> Result<usize> {
        self.check(s)?;
        self.check(t)?;
        Ok(self.minor_rank_bounds(s, t + 1))
    }

    /// Rank of the minor with rows `>= row_from` and columns `< col_end`;
    /// either bound may be out of range, giving an empty minor.
    fn minor_rank_bounds(&self, row_from: usize, col_end: usize) -> usize {
        let n = self.size();
        if row_from >= n || col_end == 0 {
            return 0;
        }
        let columns = self.columns[..col_end.min(n)].iter().map(|c| {
            let mut c = c.clone();
            c.clear_below(row_from);
            c
        });
        super::rank_of_columns(columns)
    }

    /// Birth-death test by ranks of four lower-left minors:
    /// `r(s,t) - r(s,v) - r(u,t) + r(u,v) > 0` with `u` the row after `s`
    /// and `v` the column before `t`.
    pub fn is_birth_death_by_ranks(&self, s: usize, t: usize) -> Result<bool> {
        self.check(s)?;
        self.check(t)?;
        let r = |row_from: usize, col_end: usize| self.minor_rank_bounds(row_from, col_end) as i64;
        let (u, v_end) = (s + 1, t);
        Ok(r(s, t + 1) - r(s, v_end) - r(u, t + 1) + r(u, v_end) > 0)
    }

    fn position_label(&self, complex: &LefschetzComplex, p: usize) -> String {
        format!("{}@{}", complex.label(self.order[p]), self.values[p])
    }

    /// ASCII grid, one line per row, `1`/`.` per entry; rows and columns
    /// annotated with cell label and filter value.
    pub fn dump_grid(&self, complex: &LefschetzComplex) -> String {
        let n = self.size();
        let labels: Vec<String> = (0..n).map(|p| self.position_label(complex, p)).collect();
        let width = labels.iter().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for (p, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "{:>w$} col {p:>3}: {l}", "", w = width);
        }
        for i in 0..n {
            let line: String = (0..n).map(|j| if self.get(i, j) { '1' } else { '.' }).collect();
            let _ = writeln!(out, "{:>w$} {i:>3} | {line}", labels[i], w = width);
        }
        out
    }

    /// Sparse coordinate list: `row col row_label col_label`.
    pub fn dump_coordinates(&self, complex: &LefschetzComplex) -> String {
        let mut out = String::from("row,col,row_cell,col_cell\n");
        for (i, j) in self.entries() {
            let _ = writeln!(
                out,
                "{i},{j},{},{}",
                self.position_label(complex, i),
                self.position_label(complex, j)
            );
        }
        out
    }
}

fn pair_mut(v: &mut [BitSet], from: usize, to: usize) -> (&BitSet, &mut BitSet) {
    if from < to {
        let (a, b) = v.split_at_mut(to);
        (&a[from], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(from);
        (&b[0], &mut a[to])
    }
}
