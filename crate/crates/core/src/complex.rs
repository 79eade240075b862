//! Lefschetz complexes, filters, sublevel sets and Z/2 Betti numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::BitSet;

/// Dense cell index, contiguous from 0 within a complex.
pub type CellId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: CellId,
    pub dim: usize,
    pub label: Option<String>,
}

/// A finite set of cells with dimensions and a mod-2 incidence relation.
///
/// The incidence is kept both ways (facets and cofacets, each sorted by id).
/// Construction only checks that ids are in range; the Lefschetz conditions
/// are reported by [`LefschetzComplex::validate`] so that malformed inputs can
/// be inspected.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LefschetzComplex {
    cells: Vec<Cell>,
    facets: Vec<Vec<CellId>>,
    cofacets: Vec<Vec<CellId>>,
}

/// A violated Lefschetz condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `facet < cofacet` is recorded but the dimensions do not differ by one.
    Dimension { facet: CellId, cofacet: CellId },
    /// An odd number of cells `y` with `lower < y < upper`.
    OddBoundary { lower: CellId, upper: CellId, count: usize },
}

impl Violation {
    pub fn describe(&self, complex: &LefschetzComplex) -> String {
        match *self {
            Violation::Dimension { facet, cofacet } => format!(
                "incidence ({}, {}) joins dimensions {} and {}",
                complex.label(facet),
                complex.label(cofacet),
                complex.dim(facet),
                complex.dim(cofacet)
            ),
            Violation::OddBoundary { lower, upper, count } => format!(
                "boundary of boundary is non-zero: {} occurs {} times in the boundary of the boundary of {}",
                complex.label(lower),
                count,
                complex.label(upper)
            ),
        }
    }
}

impl LefschetzComplex {
    /// Builds a complex from `(dim, label)` per cell and `(facet, cofacet)`
    /// incidences. Cell ids are the positions in `cells`.
    pub fn new<I>(cells: Vec<(usize, Option<String>)>, incidence: I) -> Result<Self>
    where
        I: IntoIterator<Item = (CellId, CellId)>,
    {
        let n = cells.len();
        let cells: Vec<Cell> = cells
            .into_iter()
            .enumerate()
            .map(|(id, (dim, label))| Cell { id, dim, label })
            .collect();
        let mut facets = vec![Vec::new(); n];
        let mut cofacets = vec![Vec::new(); n];
        for (x, y) in incidence {
            for id in [x, y] {
                if id >= n {
                    return Err(Error::UnknownCell { id, len: n });
                }
            }
            facets[y].push(x);
            cofacets[x].push(y);
        }
        let mut complex = LefschetzComplex { cells, facets, cofacets };
        for y in 0..n {
            complex.facets[y].sort_unstable();
            if let Some(w) = complex.facets[y].windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateIncidence {
                    facet: complex.label(w[0]),
                    cofacet: complex.label(y),
                });
            }
            complex.cofacets[y].sort_unstable();
        }
        Ok(complex)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a simplicial complex. Each simplex is a set of vertex names;
    /// missing faces are added after the given simplices, ordered by
    /// dimension and then lexicographically. Vertex cells are labelled with
    /// the vertex name, higher simplices with their sorted vertex names
    /// joined by `-`.
    pub fn from_simplicial<V>(simplices: &[Vec<V>]) -> Result<Self>
    where
        V: Ord + Clone + fmt::Display,
    {
        let mut index: BTreeMap<Vec<V>, CellId> = BTreeMap::new();
        let mut list: Vec<Vec<V>> = Vec::new();
        for (i, simplex) in simplices.iter().enumerate() {
            let mut s = simplex.clone();
            s.sort();
            s.dedup();
            if s.is_empty() {
                return Err(Error::EmptySimplex(i));
            }
            if index.contains_key(&s) {
                return Err(Error::DuplicateSimplex(i));
            }
            index.insert(s.clone(), list.len());
            list.push(s);
        }
        // Close under faces, lower dimensions in sorted order.
        let mut missing: BTreeMap<(usize, Vec<V>), ()> = BTreeMap::new();
        let mut frontier: Vec<Vec<V>> = list.clone();
        while let Some(s) = frontier.pop() {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Vec<V> = s
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, v)| v.clone())
                    .collect();
                if !index.contains_key(&face) && !missing.contains_key(&(face.len(), face.clone())) {
                    missing.insert((face.len(), face.clone()), ());
                    frontier.push(face);
                }
            }
        }
        for ((_, face), ()) in missing {
            index.insert(face.clone(), list.len());
            list.push(face);
        }

        let cells = list
            .iter()
            .map(|s| {
                let label = s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-");
                (s.len() - 1, Some(label))
            })
            .collect();
        let mut incidence = Vec::new();
        for (id, s) in list.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Vec<V> = s
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, v)| v.clone())
                    .collect();
                incidence.push((index[&face], id));
            }
        }
        Self::new(cells, incidence)
    }

    /// Replaces every label, in id order.
    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        for (cell, label) in self.cells.iter_mut().zip(labels) {
            cell.label = Some(label.into());
        }
        self
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id]
    }

    pub fn dim(&self, id: CellId) -> usize {
        self.cells[id].dim
    }

    /// Largest cell dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    /// The label of a cell, or `#id` when it has none.
    pub fn label(&self, id: CellId) -> String {
        match &self.cells[id].label {
            Some(l) => l.clone(),
            None => format!("#{id}"),
        }
    }

    /// Looks a cell up by label, falling back to `#id` and plain ids.
    pub fn find(&self, name: &str) -> Option<CellId> {
        if let Some(c) = self.cells.iter().find(|c| c.label.as_deref() == Some(name)) {
            return Some(c.id);
        }
        let id: CellId = name.strip_prefix('#').unwrap_or(name).parse().ok()?;
        (id < self.len()).then_some(id)
    }

    pub fn facets(&self, id: CellId) -> &[CellId] {
        &self.facets[id]
    }

    pub fn cofacets(&self, id: CellId) -> &[CellId] {
        &self.cofacets[id]
    }

    pub fn is_facet(&self, x: CellId, y: CellId) -> bool {
        self.facets[y].binary_search(&x).is_ok()
    }

    /// All incidences `(facet, cofacet)`, ordered by cofacet then facet.
    pub fn incidences(&self) -> impl Iterator<Item = (CellId, CellId)> + '_ {
        self.facets
            .iter()
            .enumerate()
            .flat_map(|(y, fs)| fs.iter().map(move |&x| (x, y)))
    }

    pub fn incidence_count(&self) -> usize {
        self.facets.iter().map(Vec::len).sum()
    }

    /// Checks the dimension condition and the vanishing of the boundary of
    /// every boundary. An empty list means the complex is a Lefschetz
    /// complex.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        for (x, y) in self.incidences() {
            if self.dim(y) != self.dim(x) + 1 {
                violations.push(Violation::Dimension { facet: x, cofacet: y });
            }
        }
        let mut count: BTreeMap<CellId, usize> = BTreeMap::new();
        for z in 0..self.len() {
            count.clear();
            for &y in &self.facets[z] {
                for &x in &self.facets[y] {
                    *count.entry(x).or_default() += 1;
                }
            }
            for (&x, &c) in &count {
                if c % 2 == 1 {
                    violations.push(Violation::OddBoundary { lower: x, upper: z, count: c });
                }
            }
        }
        violations
    }

    /// Keeps the cells flagged in `keep`, renumbered densely in id order.
    /// Returns the new complex and the original id of every new cell.
    pub(crate) fn restrict(&self, keep: &[bool]) -> (LefschetzComplex, Vec<CellId>) {
        let origin: Vec<CellId> = (0..self.len()).filter(|&i| keep[i]).collect();
        let mut new_id = vec![usize::MAX; self.len()];
        for (new, &old) in origin.iter().enumerate() {
            new_id[old] = new;
        }
        let cells = origin
            .iter()
            .map(|&old| (self.cells[old].dim, self.cells[old].label.clone()))
            .collect();
        let incidence: Vec<_> = self
            .incidences()
            .filter(|&(x, y)| keep[x] && keep[y])
            .map(|(x, y)| (new_id[x], new_id[y]))
            .collect();
        let complex = LefschetzComplex::new(cells, incidence).expect("restriction of a well-formed complex");
        (complex, origin)
    }
}

/// An injective real-valued map on cells that increases along incidences.
#[derive(Debug, Clone, PartialEq)]
pub struct Filter {
    values: Vec<f64>,
}

impl Filter {
    /// Checks length, finiteness, injectivity and monotonicity.
    pub fn new(complex: &LefschetzComplex, values: Vec<f64>) -> Result<Self> {
        if values.len() != complex.len() {
            return Err(Error::FilterLength { expected: complex.len(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue(complex.label(i)));
        }
        let mut seen: HashMap<u64, CellId> = HashMap::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            // -0.0 and 0.0 compare equal, so normalise before hashing.
            let key = if *v == 0.0 { 0.0f64.to_bits() } else { v.to_bits() };
            if let Some(&j) = seen.get(&key) {
                return Err(Error::FilterTie {
                    first: complex.label(j),
                    second: complex.label(i),
                    value: *v,
                });
            }
            seen.insert(key, i);
        }
        for (x, y) in complex.incidences() {
            if values[x] >= values[y] {
                return Err(Error::FilterNotMonotone {
                    facet: complex.label(x),
                    cofacet: complex.label(y),
                    facet_value: values[x],
                    cofacet_value: values[y],
                });
            }
        }
        Ok(Filter { values })
    }

    /// Like [`Filter::new`] but breaks ties first. Within a group of equal
    /// values, cells are ordered by dimension and then by id, and the k-th
    /// cell of the group is raised by `k * eps`, where `eps` is 2^-30 times
    /// the smallest non-zero gap between distinct values.
    pub fn perturbed(complex: &LefschetzComplex, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != complex.len() {
            return Err(Error::FilterLength { expected: complex.len(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue(complex.label(i)));
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup_by(|a, b| a == b);
        let gap = sorted
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        let gap = if gap.is_finite() { gap } else { 1.0 };
        let eps = gap * (-30f64).exp2();

        let mut groups: BTreeMap<u64, Vec<CellId>> = BTreeMap::new();
        for (i, v) in values.iter().enumerate() {
            let key = if *v == 0.0 { 0 } else { v.to_bits() };
            groups.entry(key).or_default().push(i);
        }
        for members in groups.values_mut().filter(|m| m.len() > 1) {
            members.sort_by_key(|&i| (complex.dim(i), i));
            for (k, &i) in members.iter().enumerate() {
                values[i] += k as f64 * eps;
            }
        }
        Filter::new(complex, values)
    }

    pub fn value(&self, id: CellId) -> f64 {
        self.values[id]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Cell ids sorted by increasing value.
    pub fn order(&self) -> Vec<CellId> {
        let mut order: Vec<CellId> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        order
    }

    pub(crate) fn restrict(&self, origin: &[CellId]) -> Vec<f64> {
        origin.iter().map(|&i| self.values[i]).collect()
    }
}

/// A complex derived from another one, together with its restricted filter
/// and the id each cell had in the source complex.
#[derive(Debug, Clone, PartialEq)]
pub struct Reindexed {
    pub complex: LefschetzComplex,
    pub filter: Filter,
    pub origin: Vec<CellId>,
}

impl Reindexed {
    /// New id of a source cell, if it survived.
    pub fn new_id(&self, source: CellId) -> Option<CellId> {
        self.origin.binary_search(&source).ok()
    }
}

/// Restriction to the cells with value at most `b`.
pub fn sublevel(complex: &LefschetzComplex, filter: &Filter, b: f64) -> Reindexed {
    let keep: Vec<bool> = filter.values().iter().map(|&v| v <= b).collect();
    let (sub, origin) = complex.restrict(&keep);
    let values = filter.restrict(&origin);
    Reindexed {
        complex: sub,
        filter: Filter { values },
        origin,
    }
}

/// Z/2 Betti numbers, indexed by dimension `0..=dim X`.
///
/// Equality ignores trailing zeros: homology does not see the dimension of
/// the complex, and a cancellation may remove every top cell.
#[derive(Debug, Clone, Default)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn ranks(&self) -> &[usize] {
        &self.0
    }

    fn significant(&self) -> &[usize] {
        let end = self.0.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
        &self.0[..end]
    }
}

impl PartialEq for BettiVector {
    fn eq(&self, other: &Self) -> bool {
        self.significant() == other.significant()
    }
}

impl Eq for BettiVector {}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `beta_p = #cells of dim p - rank d_p - rank d_{p+1}` over GF(2).
pub fn betti(complex: &LefschetzComplex) -> BettiVector {
    let Some(top) = complex.dimension() else {
        return BettiVector(Vec::new());
    };
    let mut count = vec![0usize; top + 1];
    for c in complex.cells() {
        count[c.dim] += 1;
    }
    // rank[p] = rank of the boundary map from dimension p to p-1.
    let mut rank = vec![0usize; top + 2];
    for (p, r) in rank.iter_mut().enumerate().take(top + 1).skip(1) {
        let columns = complex
            .cells()
            .iter()
            .filter(|c| c.dim == p)
            .map(|c| BitSet::from_ones(complex.len(), complex.facets(c.id).iter().copied()));
        *r = crate::gf2::rank_of_columns(columns);
    }
    let ranks = (0..=top).map(|p| count[p] - rank[p] - rank[p + 1]).collect();
    BettiVector(ranks)
}

/// Cells grouped by dimension, for quick summaries.
pub fn cells_per_dimension(complex: &LefschetzComplex) -> Vec<usize> {
    let mut count = vec![0usize; complex.dimension().map_or(0, |d| d + 1)];
    for c in complex.cells() {
        count[c.dim] += 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::HashSet;

    fn label_set(complex: &LefschetzComplex, ids: impl IntoIterator<Item = CellId>) -> HashSet<String> {
        ids.into_iter().map(|i| complex.label(i)).collect()
    }

    #[test]
    fn betti_equality_ignores_trailing_zeros() {
        assert_eq!(BettiVector(vec![4]), BettiVector(vec![4, 0]));
        assert_ne!(BettiVector(vec![1, 0, 1]), BettiVector(vec![1, 0]));
        assert_eq!(BettiVector(vec![1, 0, 0]).to_string(), "(1,0,0)");
    }

    #[test]
    fn dunce_hat_is_valid() {
        let (complex, _) = fixtures::dunce_hat();
        assert!(complex.validate().is_empty());
    }

    #[test]
    fn empty_complex_is_valid() {
        assert!(LefschetzComplex::empty().validate().is_empty());
        assert_eq!(betti(&LefschetzComplex::empty()), BettiVector(vec![]));
    }

    #[test]
    fn odd_boundary_is_reported() {
        // v < e < t with e having a single vertex: v appears once in dd(t).
        let complex = LefschetzComplex::new(
            vec![(0, Some("v".into())), (1, Some("e".into())), (2, Some("t".into()))],
            [(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(
            complex.validate(),
            vec![Violation::OddBoundary { lower: 0, upper: 2, count: 1 }]
        );
    }

    #[test]
    fn dimension_violation_is_reported() {
        let complex = LefschetzComplex::new(vec![(0, None), (2, None)], [(0, 1)]).unwrap();
        assert_eq!(complex.validate(), vec![Violation::Dimension { facet: 0, cofacet: 1 }]);
    }

    #[test]
    fn duplicate_incidence_rejected() {
        let err = LefschetzComplex::new(vec![(0, None), (1, None)], [(0, 1), (0, 1)]).unwrap_err();
        assert!(matches!(err, Error::DuplicateIncidence { .. }));
    }

    #[test]
    fn simplicial_single_edge() {
        let complex = LefschetzComplex::from_simplicial(&[vec![1], vec![2], vec![1, 2]]).unwrap();
        assert_eq!(complex.len(), 3);
        assert_eq!(complex.incidence_count(), 2);
        assert_eq!(complex.label(2), "1-2");
    }

    #[test]
    fn simplicial_triangle_completes_faces() {
        let complex = LefschetzComplex::from_simplicial(&[vec![1, 2, 3]]).unwrap();
        assert_eq!(cells_per_dimension(&complex), vec![3, 3, 1]);
        assert!(complex.validate().is_empty());
        assert_eq!(betti(&complex), BettiVector(vec![1, 0, 0]));
    }

    #[test]
    fn simplicial_duplicate_rejected() {
        let err = LefschetzComplex::from_simplicial(&[vec![1], vec![2], vec![2, 1], vec![1, 2]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateSimplex(3)));
    }

    #[test]
    fn circle_fixture_shape() {
        let (complex, _) = fixtures::circle();
        assert_eq!(complex.len(), 16);
        assert_eq!(complex.incidence_count(), 16);
        assert_eq!(betti(&complex), BettiVector(vec![1, 1]));
    }

    #[test]
    fn isolated_cells_with_dimension_gap() {
        // A 0-cell and a 3-cell, no incidences.
        let complex = LefschetzComplex::new(vec![(0, None), (3, None)], []).unwrap();
        assert!(complex.validate().is_empty());
        assert_eq!(betti(&complex), BettiVector(vec![1, 0, 0, 1]));
    }

    #[test]
    fn filter_rejects_ties_and_non_monotone() {
        let complex = LefschetzComplex::from_simplicial(&[vec![1, 2]]).unwrap();
        // cells: edge 1-2, vertex 1, vertex 2
        assert!(matches!(
            Filter::new(&complex, vec![2.0, 0.0, 0.0]),
            Err(Error::FilterTie { .. })
        ));
        assert!(matches!(
            Filter::new(&complex, vec![0.5, 0.0, 1.0]),
            Err(Error::FilterNotMonotone { .. })
        ));
        assert!(matches!(
            Filter::new(&complex, vec![0.5, f64::NAN, 1.0]),
            Err(Error::NonFiniteValue(_))
        ));
        assert!(matches!(Filter::new(&complex, vec![0.5]), Err(Error::FilterLength { .. })));
    }

    #[test]
    fn perturbation_breaks_ties_monotonically() {
        let complex = LefschetzComplex::from_simplicial(&[vec![1, 2]]).unwrap();
        // Everything tied: vertices must end up below the edge.
        let filter = Filter::perturbed(&complex, vec![1.0, 1.0, 1.0]).unwrap();
        assert!(filter.value(1) < filter.value(2));
        assert!(filter.value(2) < filter.value(0));

        let filter = Filter::perturbed(&complex, vec![3.0, 1.0, 1.0]).unwrap();
        let eps = 2.0 * (-30f64).exp2();
        assert_eq!(filter.value(2), 1.0 + eps);
    }

    #[test]
    fn sublevel_extremes_and_middle() {
        let (complex, filter) = fixtures::circle();
        assert!(sublevel(&complex, &filter, -1.0).complex.is_empty());
        let all = sublevel(&complex, &filter, 1e9);
        assert_eq!(all.complex, complex);

        let b = complex.find("b").unwrap();
        let big_b = complex.find("B").unwrap();
        let level = (filter.value(b) + filter.value(big_b)) / 2.0;
        let sub = sublevel(&complex, &filter, level);
        assert!(sub.complex.validate().is_empty());
        let expected: Vec<CellId> = (0..complex.len()).filter(|&i| filter.value(i) <= level).collect();
        assert_eq!(sub.origin, expected);
        assert!(!sub.complex.is_empty() && sub.complex.len() < complex.len());
        for (new, &old) in sub.origin.iter().enumerate() {
            assert_eq!(sub.complex.label(new), complex.label(old));
            assert_eq!(sub.filter.value(new), filter.value(old));
        }
    }

    #[test]
    fn sublevel_is_monotone() {
        let (complex, filter) = fixtures::circle();
        let mut previous: HashSet<String> = HashSet::new();
        for k in -1..20 {
            let sub = sublevel(&complex, &filter, k as f64);
            let labels = label_set(&complex, sub.origin.iter().copied());
            assert!(previous.is_subset(&labels));
            previous = labels;
        }
    }

    #[test]
    fn find_by_label_or_id() {
        let (complex, _) = fixtures::circle();
        let a = complex.find("a").unwrap();
        assert_eq!(complex.find(&format!("#{a}")), Some(a));
        assert_eq!(complex.find("nope"), None);
    }
}
