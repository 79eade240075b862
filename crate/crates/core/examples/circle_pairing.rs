//! Persistence pairing and shallow pairs of a height function on a circle.
//!
//! ```bash
//! cargo run -p depthposet --example circle_pairing
//! ```

use depthposet::gf2::canonical_cycle;
use depthposet::{fixtures, shallow_pairs, standard_reduction, OrderedBoundaryMatrix};

fn main() -> depthposet::Result<()> {
    let (complex, filter) = fixtures::circle();
    let matrix = OrderedBoundaryMatrix::build(&complex, &filter);
    let pairing = standard_reduction(&matrix);

    println!("birth-death pairs:");
    let mut pairs = pairing.birth_death_pairs(&complex, &filter);
    pairs.sort_by(|a, b| a.death_value.total_cmp(&b.death_value));
    for p in &pairs {
        println!("  {:<6} persistence {}", p.display(&complex), p.persistence);
    }
    let essential: Vec<String> = pairing.essential().iter().map(|&c| complex.label(c)).collect();
    println!("essential: {}", essential.join(", "));

    let shallow: Vec<String> = shallow_pairs(&complex, &filter)
        .iter()
        .map(|p| format!("({},{})", complex.label(p.birth), complex.label(p.death)))
        .collect();
    println!("shallow: {}", shallow.join(" "));

    // The essential edge carries the whole circle as its cycle.
    let a = complex.find("A").expect("edge A");
    let cycle = canonical_cycle(&matrix, &pairing, a)?;
    let cells: Vec<String> = cycle.ones().map(|c| complex.label(c)).collect();
    println!("cycle born at A: {}", cells.join(" + "));
    Ok(())
}
