//! Ordered GF(2) boundary matrices: bit-set storage, line additions, minor
//! ranks, the standard persistence reduction and canonical cycles.

mod bits;
mod matrix;
mod reduction;

pub use bits::BitSet;
pub use matrix::OrderedBoundaryMatrix;
pub use reduction::{canonical_cycle, reduction_with_clearing, standard_reduction, Pairing};

/// Rank over GF(2) of a family of columns, by lowest-one elimination.
pub fn rank_of_columns<I>(columns: I) -> usize
where
    I: IntoIterator<Item = BitSet>,
{
    let mut pivots: std::collections::HashMap<usize, BitSet> = std::collections::HashMap::new();
    let mut rank = 0;
    for mut col in columns {
        while let Some(low) = col.last() {
            match pivots.get(&low) {
                Some(p) => col.xor_assign(p),
                None => {
                    pivots.insert(low, col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}
