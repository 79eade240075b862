mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use depthposet::cancellation::{cancel_complex, cancel_shallow_checked};
use depthposet::depth_poset::{ColumnReducer, RowReducer};
use depthposet::gf2::{canonical_cycle, reduction_with_clearing};
use depthposet::oracle::{enumerate_shallow_orders, DEFAULT_CAP};
use depthposet::{
    betti, build_depth_poset, cancel_sequence, order_pi, reduce_alpha, reduce_omega, shallow_pairs, standard_reduction,
    BirthDeathPair, Error, OrderedBoundaryMatrix, Reindexed,
};
use proptest::prelude::*;

use common::*;

fn pair_keys(complex: &depthposet::LefschetzComplex, filter: &depthposet::Filter) -> BTreeSet<(usize, usize)> {
    standard_reduction(&OrderedBoundaryMatrix::build(complex, filter)).pairs().iter().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minor_ranks_match_dense_elimination(seed in any::<u64>()) {
        let (complex, filter) = small_complex(seed, 16);
        let m = OrderedBoundaryMatrix::build(&complex, &filter);
        for s in 0..m.size() {
            for t in 0..m.size() {
                prop_assert_eq!(m.minor_rank(s, t).unwrap(), dense_minor_rank(&m, s, t));
            }
        }
    }

    #[test]
    fn minor_rank_is_monotone(seed in any::<u64>()) {
        let (complex, filter) = small_complex(seed, 16);
        let m = OrderedBoundaryMatrix::build(&complex, &filter);
        let n = m.size();
        for s in 0..n {
            for t in 0..n {
                let r = m.minor_rank(s, t).unwrap();
                if t + 1 < n {
                    prop_assert!(m.minor_rank(s, t + 1).unwrap() >= r);
                }
                if s + 1 < n {
                    prop_assert!(m.minor_rank(s + 1, t).unwrap() <= r);
                }
            }
        }
    }

    #[test]
    fn rank_test_matches_reduction(seed in any::<u64>()) {
        let (complex, filter) = small_complex(seed, 14);
        let m = OrderedBoundaryMatrix::build(&complex, &filter);
        let pairing = standard_reduction(&m);
        for s in 0..m.size() {
            for t in s + 1..m.size() {
                let expected = pairing.contains(m.cell_at(s), m.cell_at(t));
                prop_assert_eq!(dense_is_pair(&m, s, t), expected);
                prop_assert_eq!(m.is_birth_death_by_ranks(s, t).unwrap(), expected);
            }
        }
    }

    #[test]
    fn line_additions_keep_mirrors(seed in any::<u64>(), ops in prop::collection::vec((any::<bool>(), 0usize..64, 0usize..64), 0..40)) {
        let (complex, filter) = small_complex(seed, 20);
        let mut m = OrderedBoundaryMatrix::build(&complex, &filter);
        let n = m.size();
        for (column, a, b) in ops {
            let (a, b) = (a % n, b % n);
            let result = if column { m.add_column(a, b) } else { m.add_row(a, b) };
            prop_assert_eq!(result.is_err(), a == b);
        }
        prop_assert!(m.mirrors_agree());
    }

    #[test]
    fn clearing_matches_standard(seed in any::<u64>()) {
        let (complex, filter) = instance(seed, 40);
        let m = OrderedBoundaryMatrix::build(&complex, &filter);
        prop_assert_eq!(standard_reduction(&m), reduction_with_clearing(&m));
    }

    #[test]
    fn pairing_counts_match_betti(seed in any::<u64>()) {
        let (complex, filter) = instance(seed, 40);
        let pairing = standard_reduction(&OrderedBoundaryMatrix::build(&complex, &filter));
        prop_assert_eq!(pairing.essential().len(), betti(&complex).0.iter().sum::<usize>());
        prop_assert_eq!(2 * pairing.len() + pairing.essential().len(), complex.len());
        for &(b, d) in pairing.pairs() {
            prop_assert!(filter.value(b) < filter.value(d));
            prop_assert_eq!(complex.dim(b) + 1, complex.dim(d));
        }
    }

    #[test]
    fn canonical_cycles_are_cycles(seed in any::<u64>()) {
        let (complex, filter) = instance(seed, 40);
        let m = OrderedBoundaryMatrix::build(&complex, &filter);
        let pairing = standard_reduction(&m);
        for y in 0..complex.len() {
            match canonical_cycle(&m, &pairing, y) {
                Ok(cycle) => {
                    prop_assert!(!pairing.gives_death(y));
                    prop_assert!(cycle.contains(y));
                    let cells: Vec<usize> = cycle.ones().collect();
                    prop_assert!(cells.iter().all(|&c| complex.dim(c) == complex.dim(y) && filter.value(c) <= filter.value(y)));
                    prop_assert!(boundary(&complex, cells).is_empty());
                }
                Err(Error::GivesDeath(_)) => prop_assert!(pairing.gives_death(y)),
                Err(e) => prop_assert!(false, "unexpected {}", e),
            }
        }
    }

    #[test]
    fn general_cancellation_keeps_betti(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let (complex, _) = instance(seed, 40);
        let incidences: Vec<_> = complex.incidences().collect();
        prop_assume!(!incidences.is_empty());
        let (s, t) = incidences[pick.index(incidences.len())];
        let (quotient, origin) = cancel_complex(&complex, s, t).unwrap();
        prop_assert!(quotient.validate().is_empty());
        prop_assert_eq!(origin.len(), complex.len() - 2);
        prop_assert_eq!(betti(&quotient), betti(&complex));
    }

    #[test]
    fn shallow_cancellation_drops_exactly_one_pair(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let (complex, filter) = instance(seed, 40);
        let shallow = shallow_pairs(&complex, &filter);
        prop_assume!(!shallow.is_empty());
        let pair = shallow[pick.index(shallow.len())];
        let q = cancel_shallow_checked(&complex, &filter, pair).unwrap();
        let before = pair_keys(&complex, &filter);
        let after: BTreeSet<_> = pair_keys(&q.complex, &q.filter).into_iter().map(|(b, d)| (q.origin[b], q.origin[d])).collect();
        let mut expected = before;
        expected.remove(&(pair.birth, pair.death));
        prop_assert_eq!(after, expected);
        let still: HashSet<_> = shallow_pairs(&q.complex, &q.filter).iter().map(|p| (q.origin[p.birth], q.origin[p.death])).collect();
        for p in &shallow {
            if *p != pair {
                prop_assert!(still.contains(&(p.birth, p.death)));
            }
        }
    }

    #[test]
    fn reducer_matrices_are_quotient_matrices(seed in any::<u64>()) {
        let (complex, filter) = instance(seed, 12);
        let m = OrderedBoundaryMatrix::build(&complex, &filter);
        let bd = standard_reduction(&m).len();
        let mut col = ColumnReducer::new(&m);
        let mut row = RowReducer::new(&m);
        let (mut alpha, mut omega) = (Vec::new(), Vec::new());
        for _ in 0..bd {
            alpha.push(col.step().unwrap().key());
            omega.push(row.step().unwrap().key());
            for (order, work, alive) in [
                (&alpha, col.matrix(), &(|p| col.is_alive(p)) as &dyn Fn(usize) -> bool),
                (&omega, row.matrix(), &(|p| row.is_alive(p)) as &dyn Fn(usize) -> bool),
            ] {
                let q = cancel_sequence(&complex, &filter, order).unwrap();
                let live: Vec<usize> = (0..m.size()).filter(|&p| alive(p)).collect();
                let qm = OrderedBoundaryMatrix::build(&q.complex, &q.filter);
                prop_assert_eq!(live.len(), qm.size());
                for (i, &pi) in live.iter().enumerate() {
                    prop_assert_eq!(q.origin[qm.cell_at(i)], m.cell_at(pi));
                    for (j, &pj) in live.iter().enumerate() {
                        prop_assert_eq!(work.get(pi, pj), qm.get(i, j));
                    }
                }
                prop_assert!(work.mirrors_agree());
            }
        }
        prop_assert!(col.step().is_none());
        prop_assert!(row.step().is_none());
    }

    #[test]
    fn special_orders_are_shallow_orders(seed in any::<u64>()) {
        let (complex, filter) = instance(seed, 40);
        let m = OrderedBoundaryMatrix::build(&complex, &filter);
        let alpha = reduce_alpha(&m).order;
        let omega = reduce_omega(&m).order;
        let pi = order_pi(&alpha);
        let poset = build_depth_poset(&complex, &filter).unwrap();
        prop_assert!(alpha.windows(2).all(|w| w[0].birth_value > w[1].birth_value));
        prop_assert!(omega.windows(2).all(|w| w[0].death_value < w[1].death_value));
        for order in [&alpha, &omega, &pi] {
            let keys: Vec<_> = order.iter().map(BirthDeathPair::key).collect();
            prop_assert!(cancel_sequence(&complex, &filter, &keys).is_ok());
            prop_assert!(poset.is_linear_extension(order).unwrap());
        }
        prop_assert!(poset.relations_are_nested());
    }

    #[test]
    fn filters_are_valid_and_deterministic(seed in any::<u64>(), n in 1usize..9, dim in 0usize..4, density in 0.05f64..1.0) {
        let (c, f) = depthposet::oracle::random_filtered_complex(seed, n, dim, density).unwrap();
        let (c2, f2) = depthposet::oracle::random_filtered_complex(seed, n, dim, density).unwrap();
        prop_assert_eq!(&c, &c2);
        prop_assert_eq!(&f, &f2);
        prop_assert!(c.validate().is_empty());
        prop_assert!(c.dimension().unwrap() <= dim);
        for (x, y) in c.incidences() {
            prop_assert!(f.value(x) < f.value(y));
        }
    }
}

/// Quotient after cancelling `order` (ids of the original complex).
fn quotient(complex: &depthposet::LefschetzComplex, filter: &depthposet::Filter, order: &[BirthDeathPair]) -> Reindexed {
    let keys: Vec<_> = order.iter().map(BirthDeathPair::key).collect();
    cancel_sequence(complex, filter, &keys).expect("shallow order")
}

#[test]
fn quotient_depends_only_on_prefix_set() {
    for seed in 0..60 {
        let (complex, filter) = instance(seed, 5);
        let orders = enumerate_shallow_orders(&complex, &filter, DEFAULT_CAP).unwrap();
        for k in 1..orders[0].len() {
            let mut by_prefix: BTreeMap<BTreeSet<(usize, usize)>, Reindexed> = BTreeMap::new();
            for order in &orders {
                let key: BTreeSet<_> = order[..k].iter().map(BirthDeathPair::key).collect();
                let q = quotient(&complex, &filter, &order[..k]);
                if let Some(seen) = by_prefix.get(&key) {
                    assert_eq!(seen, &q, "seed {seed}, prefix length {k}");
                } else {
                    by_prefix.insert(key, q);
                }
            }
        }
    }
}

#[test]
fn shallow_orders_connected_by_transpositions() {
    for seed in 0..60 {
        let (complex, filter) = instance(seed, 5);
        let orders: Vec<Vec<(usize, usize)>> = enumerate_shallow_orders(&complex, &filter, DEFAULT_CAP)
            .unwrap()
            .into_iter()
            .map(|o| o.iter().map(BirthDeathPair::key).collect())
            .collect();
        let known: HashSet<&Vec<(usize, usize)>> = orders.iter().collect();
        let mut seen = HashSet::new();
        let mut stack = vec![orders[0].clone()];
        seen.insert(orders[0].clone());
        while let Some(order) = stack.pop() {
            for k in 0..order.len().saturating_sub(1) {
                let mut next = order.clone();
                next.swap(k, k + 1);
                if known.contains(&next) && seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        assert_eq!(seen.len(), orders.len(), "seed {seed}");
    }
}

#[test]
fn linear_extensions_are_shallow_orders() {
    let mut checked = 0;
    for seed in 0..150 {
        let (complex, filter) = instance(seed, 6);
        let poset = build_depth_poset(&complex, &filter).unwrap();
        let extensions: BTreeSet<Vec<(usize, usize)>> = poset
            .linear_extensions(DEFAULT_CAP)
            .unwrap()
            .into_iter()
            .map(|e| e.iter().map(|&i| poset.elements()[i].key()).collect())
            .collect();
        let orders: BTreeSet<Vec<(usize, usize)>> = enumerate_shallow_orders(&complex, &filter, DEFAULT_CAP)
            .unwrap()
            .into_iter()
            .map(|o| o.iter().map(BirthDeathPair::key).collect())
            .collect();
        assert_eq!(extensions, orders, "seed {seed}");
        checked += 1;
    }
    assert_eq!(checked, 150);
}

#[test]
fn truncated_order_restricts_the_poset() {
    for seed in 0..40 {
        let (complex, filter) = instance(seed, 6);
        let poset = build_depth_poset(&complex, &filter).unwrap();
        let alpha = reduce_alpha(&OrderedBoundaryMatrix::build(&complex, &filter)).order;
        for k in 0..alpha.len() {
            let q = quotient(&complex, &filter, &alpha[..k]);
            let sub = build_depth_poset(&q.complex, &q.filter).unwrap();
            let lifted: BTreeSet<_> = sub
                .relations_by_cells()
                .into_iter()
                .map(|((a, b), (c, d))| ((q.origin[a], q.origin[b]), (q.origin[c], q.origin[d])))
                .collect();
            let remaining: HashSet<_> = alpha[k..].iter().map(BirthDeathPair::key).collect();
            let restricted: BTreeSet<_> = poset
                .relations_by_cells()
                .into_iter()
                .filter(|(x, y)| remaining.contains(x) && remaining.contains(y))
                .collect();
            assert_eq!(lifted, restricted, "seed {seed}, after {k} cancellations");
        }
    }
}

/// The pairing built cell by cell from canonical cycles, with dense linear
/// algebra only. Returns (pairs, canonical cycles of birth cells).
fn pairing_by_definition(
    complex: &depthposet::LefschetzComplex,
    filter: &depthposet::Filter,
) -> (BTreeSet<(usize, usize)>, BTreeMap<usize, Vec<usize>>) {
    let n = complex.len();
    let vector = |cells: &[usize]| {
        let mut v = vec![false; n];
        for &c in cells {
            v[c] ^= true;
        }
        v
    };
    let order = filter.order();
    let mut deaths: Vec<usize> = Vec::new();
    let mut alive: Vec<usize> = Vec::new();
    let mut cycles: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut pairs = BTreeSet::new();
    for (k, &y) in order.iter().enumerate() {
        let before = &order[..k];
        let dy = vector(complex.facets(y));
        let bounding: Vec<Vec<bool>> = before
            .iter()
            .filter(|&&w| complex.dim(w) == complex.dim(y))
            .map(|&w| vector(complex.facets(w)))
            .collect();
        if dense_solve(&bounding, &dy).is_some() {
            // Birth: the unique chain of earlier death cells with the same boundary.
            let support: Vec<usize> = deaths.iter().copied().filter(|&w| complex.dim(w) == complex.dim(y)).collect();
            let columns: Vec<Vec<bool>> = support.iter().map(|&w| vector(complex.facets(w))).collect();
            let lambda = dense_solve(&columns, &dy).expect("boundary of earlier death cells");
            let mut cycle: Vec<usize> = support.iter().zip(&lambda).filter(|p| *p.1).map(|p| *p.0).collect();
            cycle.push(y);
            cycle.sort_unstable();
            cycles.insert(y, cycle);
            alive.push(y);
        } else {
            // Death: express the boundary through live canonical cycles modulo boundaries.
            let candidates: Vec<usize> = alive.iter().copied().filter(|&x| complex.dim(x) + 1 == complex.dim(y)).collect();
            let mut columns: Vec<Vec<bool>> = candidates.iter().map(|x| vector(&cycles[x])).collect();
            columns.extend(
                before
                    .iter()
                    .filter(|&&w| complex.dim(w) == complex.dim(y))
                    .map(|&w| vector(complex.facets(w))),
            );
            let lambda = dense_solve(&columns, &dy).expect("boundary is homologous to live cycles");
            let z = candidates
                .iter()
                .zip(&lambda)
                .filter(|p| *p.1)
                .map(|p| *p.0)
                .max_by(|&a, &b| filter.value(a).total_cmp(&filter.value(b)))
                .expect("non-empty combination");
            pairs.insert((z, y));
            alive.retain(|&x| x != z);
            deaths.push(y);
        }
    }
    (pairs, cycles)
}

#[test]
fn reduction_matches_inductive_definition() {
    let mut cases = vec![fixtures_pair(0), fixtures_pair(1)];
    cases.extend((0..60).map(|seed| instance(seed, 12)));
    for (k, (complex, filter)) in cases.iter().enumerate() {
        let m = OrderedBoundaryMatrix::build(complex, filter);
        let pairing = standard_reduction(&m);
        let (pairs, cycles) = pairing_by_definition(complex, filter);
        let reduced: BTreeSet<_> = pairing.pairs().iter().copied().collect();
        assert_eq!(pairs, reduced, "case {k}");
        for (&y, cycle) in &cycles {
            let got: Vec<usize> = canonical_cycle(&m, &pairing, y).unwrap().ones().collect();
            assert_eq!(&got, cycle, "case {k}, cell {y}");
        }
    }
}

fn fixtures_pair(which: usize) -> (depthposet::LefschetzComplex, depthposet::Filter) {
    match which {
        0 => depthposet::fixtures::circle(),
        _ => depthposet::fixtures::dunce_hat(),
    }
}
