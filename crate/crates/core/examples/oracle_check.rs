//! Cross-checking the depth poset against brute-force enumeration of every
//! shallow order, on the circle and on a handful of random instances.
//!
//! ```bash
//! cargo run -p depthposet --example oracle_check
//! ```

use depthposet::oracle::{self, InstanceShape, ShallowOrderSearch, DEFAULT_CAP};
use depthposet::{build_depth_poset, fixtures};

fn main() -> depthposet::Result<()> {
    let (complex, filter) = fixtures::circle();
    let search = ShallowOrderSearch::explore(&complex, &filter, DEFAULT_CAP)?;
    println!(
        "circle: {} reachable quotients, {} shallow orders",
        search.state_count(),
        search.count_orders()
    );
    let brute = oracle::brute_depth_poset(&complex, &filter, DEFAULT_CAP)?;
    let fast = build_depth_poset(&complex, &filter)?;
    println!("relations agree: {}", brute.relations_by_cells() == fast.relations_by_cells());

    println!("\nseed  pairs  relations  orders  agree");
    for seed in 0..10 {
        let (complex, filter) = oracle::sweep_instance(seed, 5, InstanceShape::default());
        let check = oracle::check_instance(seed, &complex, &filter, DEFAULT_CAP)?;
        let orders = oracle::enumerate_shallow_orders(&complex, &filter, DEFAULT_CAP)?.len();
        println!(
            "{:>4}  {:>5}  {:>9}  {:>6}  {}",
            seed, check.pairs, check.relations, orders, check.matches
        );
    }

    let report = oracle::verify_sweep(0, 200, 6, DEFAULT_CAP)?;
    println!("\nsweep: {}/{} match", report.matched(), report.total());
    Ok(())
}
