//! The filter-ordered boundary matrix: dumps, minor ranks and the two
//! reduction strategies.
//!
//! ```bash
//! cargo run -p depthposet --example boundary_matrix
//! ```

use depthposet::gf2::reduction_with_clearing;
use depthposet::{fixtures, standard_reduction, OrderedBoundaryMatrix};

fn main() -> depthposet::Result<()> {
    let (complex, filter) = fixtures::dunce_hat();
    let matrix = OrderedBoundaryMatrix::build(&complex, &filter);
    print!("{}", matrix.dump_grid(&complex));
    println!();
    print!("{}", matrix.dump_coordinates(&complex));

    let pairing = standard_reduction(&matrix);
    assert_eq!(pairing, reduction_with_clearing(&matrix));

    // A position pair is a birth-death pair exactly when the alternating
    // sum of lower-left minor ranks is positive.
    println!("\nfrom ranks:");
    let n = matrix.size();
    for s in 0..n {
        for t in s + 1..n {
            if matrix.is_birth_death_by_ranks(s, t)? {
                let (b, d) = (matrix.cell_at(s), matrix.cell_at(t));
                println!("  ({},{}) reduction agrees: {}", complex.label(b), complex.label(d), pairing.contains(b, d));
            }
        }
    }
    Ok(())
}
