//! Brute-force ground truth: every shallow order by recursive cancellation,
//! the depth poset as their intersection, and seeded random instances.
//!
//! The search works on the complexes themselves (cancellation plus the
//! last-facet/first-cofacet test) and never touches the book-keeping
//! reductions, so it can be used to check them. States are keyed by the set
//! of cancelled pairs, since the quotient depends only on that set.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cancellation::{cancel, cancel_shallow, shallow_pairs};
use crate::complex::{CellId, Filter, LefschetzComplex, Reindexed};
use crate::depth_poset::{build_depth_poset, BirthDeathPair, DepthPoset};
use crate::error::{Error, Result};
use crate::gf2::{standard_reduction, OrderedBoundaryMatrix};

pub const DEFAULT_CAP: usize = 100_000;

/// Largest number of birth-death pairs the search accepts.
pub const MAX_SEARCH_PAIRS: usize = 63;

#[derive(Debug, Clone)]
struct State {
    quotient: Reindexed,
    /// Pairs (indices) that are shallow in this quotient.
    moves: Vec<usize>,
}

/// The reachable cancellation states of a filtered complex.
#[derive(Debug, Clone)]
pub struct ShallowOrderSearch {
    pairs: Vec<BirthDeathPair>,
    states: HashMap<u64, State>,
}

impl ShallowOrderSearch {
    /// Explores every state reachable by shallow cancellations. `cap` bounds
    /// the number of states visited.
    pub fn explore(complex: &LefschetzComplex, filter: &Filter, cap: usize) -> Result<Self> {
        let pairing = standard_reduction(&OrderedBoundaryMatrix::build(complex, filter));
        let pairs = pairing.birth_death_pairs(complex, filter);
        if pairs.len() > MAX_SEARCH_PAIRS {
            return Err(Error::InvalidParameter(format!(
                "{} birth-death pairs exceed the search limit of {MAX_SEARCH_PAIRS}",
                pairs.len()
            )));
        }
        let index: HashMap<(CellId, CellId), usize> = pairs.iter().enumerate().map(|(i, p)| (p.key(), i)).collect();
        let full: u64 = if pairs.is_empty() { 0 } else { u64::MAX >> (64 - pairs.len()) };

        let root = Reindexed {
            complex: complex.clone(),
            filter: filter.clone(),
            origin: (0..complex.len()).collect(),
        };
        let mut states: HashMap<u64, State> = HashMap::new();
        let mut queue: VecDeque<(u64, Reindexed)> = VecDeque::from([(0, root)]);
        let mut queued: std::collections::HashSet<u64> = [0].into();
        while let Some((mask, quotient)) = queue.pop_front() {
            if states.len() >= cap {
                return Err(Error::CapExceeded(cap));
            }
            let shallow = shallow_pairs(&quotient.complex, &quotient.filter);
            let mut moves = Vec::with_capacity(shallow.len());
            for p in &shallow {
                let key = (quotient.origin[p.birth], quotient.origin[p.death]);
                let &i = index.get(&key).ok_or_else(|| {
                    Error::Internal(format!(
                        "shallow pair ({}, {}) is not a birth-death pair of the input",
                        complex.label(key.0),
                        complex.label(key.1)
                    ))
                })?;
                if mask >> i & 1 == 1 {
                    return Err(Error::Internal("a cancelled pair reappeared".into()));
                }
                moves.push(i);
                let child = mask | 1 << i;
                if queued.insert(child) {
                    let next = cancel_shallow(&quotient.complex, &quotient.filter, *p)?;
                    let origin = next.origin.iter().map(|&c| quotient.origin[c]).collect();
                    queue.push_back((
                        child,
                        Reindexed {
                            complex: next.complex,
                            filter: next.filter,
                            origin,
                        },
                    ));
                }
            }
            moves.sort_unstable();
            if moves.is_empty() && mask != full {
                return Err(Error::Internal(
                    "no shallow pair left although birth-death pairs remain".into(),
                ));
            }
            states.insert(mask, State { quotient, moves });
        }
        Ok(ShallowOrderSearch { pairs, states })
    }

    /// Birth-death pairs of the input; order indices refer to this list.
    pub fn pairs(&self) -> &[BirthDeathPair] {
        &self.pairs
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Quotient after cancelling the pairs whose bits are set in `mask`.
    pub fn quotient(&self, mask: u64) -> Option<&Reindexed> {
        self.states.get(&mask).map(|s| &s.quotient)
    }

    /// Pairs that are shallow after cancelling `mask`.
    pub fn moves(&self, mask: u64) -> Option<&[usize]> {
        self.states.get(&mask).map(|s| s.moves.as_slice())
    }

    /// Number of complete shallow orders.
    pub fn count_orders(&self) -> u128 {
        let mut memo: HashMap<u64, u128> = HashMap::new();
        self.count_from(0, &mut memo)
    }

    fn count_from(&self, mask: u64, memo: &mut HashMap<u64, u128>) -> u128 {
        if let Some(&c) = memo.get(&mask) {
            return c;
        }
        let moves = &self.states[&mask].moves;
        let c = if moves.is_empty() {
            1
        } else {
            moves
                .iter()
                .map(|&i| self.count_from(mask | 1 << i, memo))
                .fold(0u128, u128::saturating_add)
        };
        memo.insert(mask, c);
        c
    }

    /// All shallow orders as pair-index sequences, in lexicographic order.
    pub fn orders(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        if self.count_orders() > cap as u128 {
            return Err(Error::CapExceeded(cap));
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.pairs.len());
        self.walk(0, &mut prefix, &mut out);
        Ok(out)
    }

    fn walk(&self, mask: u64, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let moves = &self.states[&mask].moves;
        if moves.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for &i in moves {
            prefix.push(i);
            self.walk(mask | 1 << i, prefix, out);
            prefix.pop();
        }
    }
}

/// Every shallow order of the filter. Fails with [`Error::CapExceeded`]
/// rather than truncating.
pub fn enumerate_shallow_orders(complex: &LefschetzComplex, filter: &Filter, cap: usize) -> Result<Vec<Vec<BirthDeathPair>>> {
    let search = ShallowOrderSearch::explore(complex, filter, cap)?;
    let orders = search.orders(cap)?;
    Ok(orders
        .into_iter()
        .map(|o| o.into_iter().map(|i| search.pairs()[i]).collect())
        .collect())
}

/// The depth poset as the intersection of all shallow orders.
pub fn brute_depth_poset(complex: &LefschetzComplex, filter: &Filter, cap: usize) -> Result<DepthPoset> {
    let search = ShallowOrderSearch::explore(complex, filter, cap)?;
    let orders = search.orders(cap)?;
    Ok(intersect_orders(search.pairs().to_vec(), &orders))
}

/// The relation "before in every order" on `pairs`.
pub fn intersect_orders(pairs: Vec<BirthDeathPair>, orders: &[Vec<usize>]) -> DepthPoset {
    let n = pairs.len();
    let mut always = vec![vec![true; n]; n];
    for order in orders {
        let mut position = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            position[i] = k;
        }
        for a in 0..n {
            for b in 0..n {
                if position[a] >= position[b] {
                    always[a][b] = false;
                }
            }
        }
    }
    let relations: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| always[a][b])
        .collect();
    DepthPoset::new(pairs, relations).expect("intersection of total orders is acyclic")
}

/// A random flag complex with a random filter.
///
/// Each edge on `n_vertices` vertices is present with probability
/// `density`; every clique of at most `dim + 1` vertices becomes a simplex.
/// The filter lists the simplices in a uniformly chosen face-respecting
/// order (each step picks uniformly among simplices whose facets are
/// already listed) and assigns them sorted uniform values from [0, 1).
/// Identical seeds give identical output.
pub fn random_filtered_complex(seed: u64, n_vertices: usize, dim: usize, density: f64) -> Result<(LefschetzComplex, Filter)> {
    if n_vertices == 0 {
        return Err(Error::InvalidParameter("n_vertices must be positive".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidParameter(format!("density {density} is outside (0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacent = vec![vec![false; n_vertices]; n_vertices];
    for u in 0..n_vertices {
        for v in u + 1..n_vertices {
            let edge = rng.gen::<f64>() < density;
            adjacent[u][v] = edge;
            adjacent[v][u] = edge;
        }
    }
    // Cliques in increasing size, each listed with sorted vertices.
    let mut simplices: Vec<Vec<usize>> = (0..n_vertices).map(|v| vec![v]).collect();
    let mut layer = simplices.clone();
    for _ in 0..dim {
        let mut next = Vec::new();
        for s in &layer {
            let last = *s.last().expect("non-empty simplex");
            for v in last + 1..n_vertices {
                if s.iter().all(|&u| adjacent[u][v]) {
                    let mut t = s.clone();
                    t.push(v);
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        simplices.extend(next.iter().cloned());
        layer = next;
    }
    let complex = LefschetzComplex::from_simplicial(&simplices)?;

    let n = complex.len();
    let mut missing: Vec<usize> = (0..n).map(|c| complex.facets(c).len()).collect();
    let mut ready: Vec<CellId> = (0..n).filter(|&c| missing[c] == 0).collect();
    let mut sequence = Vec::with_capacity(n);
    while !ready.is_empty() {
        let k = rng.gen_range(0..ready.len());
        let c = ready.swap_remove(k);
        sequence.push(c);
        for &y in complex.cofacets(c) {
            missing[y] -= 1;
            if missing[y] == 0 {
                ready.push(y);
            }
        }
    }
    let mut draws: Vec<f64> = Vec::with_capacity(n);
    while draws.len() < n {
        draws.push(rng.gen::<f64>());
        draws.sort_by(f64::total_cmp);
        draws.dedup();
    }
    let mut values = vec![0.0; n];
    for (c, v) in sequence.into_iter().zip(draws) {
        values[c] = v;
    }
    let filter = Filter::new(&complex, values)?;
    Ok((complex, filter))
}

/// Number of birth-death pairs.
pub fn pair_count(complex: &LefschetzComplex, filter: &Filter) -> usize {
    standard_reduction(&OrderedBoundaryMatrix::build(complex, filter)).len()
}

/// Tuning for [`sweep_instance`].
#[derive(Debug, Clone, Copy)]
pub struct InstanceShape {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub min_dim: usize,
    pub max_dim: usize,
    /// Probability of replacing the simplicial complex by the quotient of a
    /// random (generally non-shallow) cancellation.
    pub quotient_probability: f64,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape {
            min_vertices: 3,
            max_vertices: 7,
            min_dim: 1,
            max_dim: 2,
            quotient_probability: 0.3,
        }
    }
}

/// A deterministic instance for seed `seed` with between 1 and `max_bd`
/// birth-death pairs (0 pairs only if `max_bd` is 0).
pub fn sweep_instance(seed: u64, max_bd: usize, shape: InstanceShape) -> (LefschetzComplex, Filter) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x005e_ed0f_de97);
    loop {
        let n = rng.gen_range(shape.min_vertices..=shape.max_vertices);
        let dim = rng.gen_range(shape.min_dim..=shape.max_dim);
        let density = rng.gen_range(0.3..=1.0);
        let (mut complex, mut filter) =
            random_filtered_complex(rng.gen(), n, dim, density).expect("parameters are in range");
        if rng.gen::<f64>() < shape.quotient_probability {
            let mut incidences: Vec<_> = complex.incidences().collect();
            incidences.shuffle(&mut rng);
            if let Some(q) = incidences.into_iter().find_map(|(s, t)| cancel(&complex, &filter, s, t).ok()) {
                complex = q.complex;
                filter = q.filter;
            }
        }
        let bd = pair_count(&complex, &filter);
        if bd <= max_bd && (bd > 0 || max_bd == 0) {
            return (complex, filter);
        }
    }
}

/// Result of comparing the book-keeping poset with the brute-force one.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceCheck {
    pub seed: u64,
    pub pairs: usize,
    pub relations: usize,
    pub matches: bool,
}

pub fn check_instance(seed: u64, complex: &LefschetzComplex, filter: &Filter, cap: usize) -> Result<InstanceCheck> {
    let fast = build_depth_poset(complex, filter)?;
    let brute = brute_depth_poset(complex, filter, cap)?;
    Ok(InstanceCheck {
        seed,
        pairs: fast.len(),
        relations: fast.closure().len(),
        matches: fast.relations_by_cells() == brute.relations_by_cells(),
    })
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepReport {
    pub checks: Vec<InstanceCheck>,
}

impl SweepReport {
    pub fn total(&self) -> usize {
        self.checks.len()
    }

    pub fn matched(&self) -> usize {
        self.checks.iter().filter(|c| c.matches).count()
    }

    pub fn mismatched_seeds(&self) -> Vec<u64> {
        self.checks.iter().filter(|c| !c.matches).map(|c| c.seed).collect()
    }

    /// Instances whose poset has at least one relation.
    pub fn nontrivial(&self) -> usize {
        self.checks.iter().filter(|c| c.relations > 0).count()
    }

    /// Instances per pair count.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in &self.checks {
            *h.entry(c.pairs).or_default() += 1;
        }
        h
    }
}

/// Runs [`check_instance`] on seeds `first..first + count` in parallel.
pub fn verify_sweep(first: u64, count: u64, max_bd: usize, cap: usize) -> Result<SweepReport> {
    let checks: Result<Vec<InstanceCheck>> = (first..first + count)
        .into_par_iter()
        .map(|seed| {
            let (complex, filter) = sweep_instance(seed, max_bd, InstanceShape::default());
            check_instance(seed, &complex, &filter, cap)
        })
        .collect();
    Ok(SweepReport { checks: checks? })
}
