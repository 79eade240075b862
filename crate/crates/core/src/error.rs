use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate simplex at index {0}")]
    DuplicateSimplex(usize),

    #[error("empty simplex at index {0}")]
    EmptySimplex(usize),

    #[error("cell id {id} out of range for complex with {len} cells")]
    UnknownCell { id: usize, len: usize },

    #[error("duplicate incidence ({facet}, {cofacet})")]
    DuplicateIncidence { facet: String, cofacet: String },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("filter has {got} values for {expected} cells")]
    FilterLength { expected: usize, got: usize },

    #[error("filter value of cell {0} is not finite")]
    NonFiniteValue(String),

    #[error("filter is not injective: cells {first} and {second} share value {value}")]
    FilterTie { first: String, second: String, value: f64 },

    #[error("filter is not monotone: facet {facet} ({facet_value}) is not below cofacet {cofacet} ({cofacet_value})")]
    FilterNotMonotone {
        facet: String,
        cofacet: String,
        facet_value: f64,
        cofacet_value: f64,
    },

    #[error("position {position} out of range for matrix of size {size}")]
    PositionOutOfRange { position: usize, size: usize },

    #[error("cannot add line {0} to itself")]
    SelfAddition(usize),

    #[error("{facet} is not a facet of {cofacet}")]
    NotIncident { facet: String, cofacet: String },

    #[error("({birth}, {death}) is not a shallow pair")]
    NotShallow { birth: String, death: String },

    #[error("cell {0} gives death and has no canonical cycle")]
    GivesDeath(String),

    #[error("order is not a permutation of the poset elements")]
    NotAPermutation,

    #[error("enumeration exceeded the cap of {0} orders")]
    CapExceeded(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
