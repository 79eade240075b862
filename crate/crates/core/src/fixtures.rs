//! Small hand-built filtered complexes used by the examples and tests.

use crate::complex::{Filter, LefschetzComplex};

/// A function on a circle with eight minima `a..h` (vertices) and eight
/// maxima `A..H` (edges), edge `A` joining `a` and `b`, `B` joining `b` and
/// `c`, and so on around to `H` joining `h` and `a`.
///
/// Heights are chosen so that the minima rise in the order
/// `a g c b f d e h` and the maxima in the order `B C F E D G H A`.
/// Cell ids: vertices `a..h` are 0..8, edges `A..H` are 8..16.
pub fn circle() -> (LefschetzComplex, Filter) {
    let names = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let mut simplices: Vec<Vec<&str>> = names.iter().map(|v| vec![*v]).collect();
    for i in 0..8 {
        simplices.push(vec![names[i], names[(i + 1) % 8]]);
    }
    let labels = names
        .iter()
        .map(|s| s.to_string())
        .chain(names.iter().map(|s| s.to_uppercase()));
    let complex = LefschetzComplex::from_simplicial(&simplices)
        .expect("circle simplices are distinct")
        .with_labels(labels);
    //             a    b    c    d    e    f    g    h
    let minima = [0.0, 3.0, 2.0, 5.0, 6.0, 4.0, 1.0, 7.0];
    //              A     B     C     D     E     F     G     H
    let maxima = [17.0, 10.0, 11.0, 14.0, 13.0, 12.0, 15.0, 16.0];
    let values = minima.iter().chain(maxima.iter()).copied().collect();
    let filter = Filter::new(&complex, values).expect("circle heights form a filter");
    (complex, filter)
}

/// A cylinder with boundary circles `AA` and `BB`, cut along `AB`, with a
/// Dunce hat `Dh` attached to `AA`: `dCyl = AA + BB`, `dDh = AA`,
/// `dAB = A + B`, `dAA = dBB = 0`.
///
/// Cell ids in order: `A, B, AA, BB, AB, Cyl, Dh`.
pub fn dunce_hat() -> (LefschetzComplex, Filter) {
    let cells = [("A", 0), ("B", 0), ("AA", 1), ("BB", 1), ("AB", 1), ("Cyl", 2), ("Dh", 2)];
    let complex = LefschetzComplex::new(
        cells.iter().map(|&(l, d)| (d, Some(l.to_string()))).collect(),
        [(0, 4), (1, 4), (2, 5), (3, 5), (2, 6)],
    )
    .expect("dunce hat ids are in range");
    let filter = Filter::new(&complex, vec![0.0, 1.0, 2.0, 3.0, 4.0, 6.0, 5.0])
        .expect("dunce hat values form a filter");
    (complex, filter)
}

/// Two disjoint edges `p-P-q` and `r-R-s` whose birth-death intervals do
/// not overlap.
pub fn two_independent_edges() -> (LefschetzComplex, Filter) {
    let complex = LefschetzComplex::from_simplicial(&[
        vec!["p"],
        vec!["q"],
        vec!["p", "q"],
        vec!["r"],
        vec!["s"],
        vec!["r", "s"],
    ])
    .expect("distinct simplices")
    .with_labels(["p", "q", "P", "r", "s", "R"]);
    let filter = Filter::new(&complex, vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).expect("monotone");
    (complex, filter)
}

/// One edge `e` on vertices `u < v`.
pub fn single_edge() -> (LefschetzComplex, Filter) {
    let complex = LefschetzComplex::from_simplicial(&[vec!["u"], vec!["v"], vec!["u", "v"]])
        .expect("distinct simplices")
        .with_labels(["u", "v", "e"]);
    let filter = Filter::new(&complex, vec![0.0, 1.0, 2.0]).expect("monotone");
    (complex, filter)
}
