//! The depth poset from the two book-keeping reductions, its special
//! linear extensions and its text renderings.
//!
//! ```bash
//! cargo run -p depthposet --example depth_poset
//! ```

use depthposet::emit::{emit_annotated_csv, emit_dot};
use depthposet::{build_depth_poset, cancel_sequence, fixtures, order_pi, reduce_alpha, reduce_omega, OrderedBoundaryMatrix};

fn main() -> depthposet::Result<()> {
    let (complex, filter) = fixtures::circle();
    let matrix = OrderedBoundaryMatrix::build(&complex, &filter);
    let alpha = reduce_alpha(&matrix);
    let omega = reduce_omega(&matrix);
    let pi = order_pi(&alpha.order);

    for (name, order) in [("alpha", &alpha.order), ("omega", &omega.order), ("pi", &pi)] {
        let text: Vec<String> = order.iter().map(|p| p.display(&complex)).collect();
        println!("{name:>5}: {}", text.join(" "));
        let steps: Vec<_> = order.iter().map(|p| p.key()).collect();
        assert!(cancel_sequence(&complex, &filter, &steps).is_ok());
    }

    let poset = build_depth_poset(&complex, &filter)?;
    println!("\n{} pairs, {} relations, {} Hasse edges", poset.len(), poset.closure().len(), poset.hasse().len());
    for &(a, b) in poset.hasse() {
        let (p, q) = (&poset.elements()[a], &poset.elements()[b]);
        println!("  {} before {}", p.display(&complex), q.display(&complex));
    }
    println!("linear extensions: {}", poset.linear_extensions(1_000_000)?.len());

    println!("\n{}", emit_dot(&poset, &complex));
    print!("{}", emit_annotated_csv(&poset));
    Ok(())
}
