//! Cancelling a deep pair in a small 2-complex: homology survives, the
//! incidences get rewired.
//!
//! ```bash
//! cargo run -p depthposet --example dunce_hat_cancellation
//! ```

use depthposet::cancellation::cancel_complex;
use depthposet::{betti, cancel_sequence, fixtures, is_shallow, shallow_pairs};

fn main() -> depthposet::Result<()> {
    let (complex, filter) = fixtures::dunce_hat();
    let aa = complex.find("AA").expect("AA");
    let dh = complex.find("Dh").expect("Dh");
    println!("betti: {}", betti(&complex));
    println!("(AA,Dh) shallow: {}", is_shallow(&complex, &filter, aa, dh));

    let (quotient, origin) = cancel_complex(&complex, aa, dh)?;
    println!("after cancelling (AA,Dh): betti {}", betti(&quotient));
    for (id, &source) in origin.iter().enumerate() {
        let facets: Vec<String> = quotient.facets(id).iter().map(|&f| quotient.label(f)).collect();
        if !facets.is_empty() {
            println!("  d{} = {}", complex.label(source), facets.join(" + "));
        }
    }

    // Cancelling the shallow pairs of the original one after another.
    let order: Vec<_> = shallow_pairs(&complex, &filter).iter().map(|p| (p.birth, p.death)).collect();
    match cancel_sequence(&complex, &filter, &order) {
        Ok(q) => println!("{} shallow cancellations leave {} cells", order.len(), q.complex.len()),
        Err(e) => println!("sequence failed: {e}"),
    }
    Ok(())
}
