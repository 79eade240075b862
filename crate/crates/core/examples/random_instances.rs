//! Seeded random flag complexes, written to and read back from the JSON
//! file format.
//!
//! ```bash
//! cargo run -p depthposet --example random_instances -- 7
//! ```

use depthposet::oracle::random_filtered_complex;
use depthposet::{betti, build_depth_poset, io, standard_reduction, OrderedBoundaryMatrix};

fn main() -> depthposet::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let (complex, filter) = random_filtered_complex(seed, 7, 2, 0.6)?;
    println!(
        "seed {seed}: {} cells, dimension {:?}, betti {}",
        complex.len(),
        complex.dimension(),
        betti(&complex)
    );

    let text = io::to_json(&complex, Some(&filter));
    let loaded = io::parse_complex(&text, false)?;
    assert_eq!(loaded.complex, complex);
    assert_eq!(loaded.filter.as_ref(), Some(&filter));
    println!("JSON round trip: {} bytes", text.len());

    let pairs = standard_reduction(&OrderedBoundaryMatrix::build(&complex, &filter)).len();
    let poset = build_depth_poset(&complex, &filter)?;
    println!("{pairs} pairs; depth poset has {} relations", poset.closure().len());
    for part in poset.split_by_dimension() {
        if let Some(p) = part.elements().first() {
            println!("  dim {}: {} pairs, {} relations", p.dim, part.len(), part.closure().len());
        }
    }
    Ok(())
}
