use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field of order {0} exceeds the supported size")]
    FieldTooLarge(u64),
    #[error(
        "no root of unity of order {m} in a field with {q} elements ({m} does not divide {q}-1)"
    )]
    NoUnityRoot { m: u64, q: u64 },
    #[error("the zero polynomial cannot be factored")]
    ZeroPolynomial,

    #[error("group axiom violated: {0}")]
    GroupAxiom(String),
    #[error("permutation {0} is not a bijection on 1..={1}")]
    BadPermutation(usize, usize),
    #[error("group closure exceeds the order cap {0}")]
    OrderCapExceeded(usize),
    #[error("element set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a homomorphism: map[{x}*{y}] != map[{x}]*map[{y}]")]
    NotAHomomorphism { x: usize, y: usize },
    #[error("invalid semidirect action: {0}")]
    BadAction(String),

    #[error("table is not a 2-cocycle: identity fails at ({x}, {y}, {z})")]
    NotACocycle { x: usize, y: usize, z: usize },
    #[error("cocycle shape mismatch: expected {expected} entries, got {got}")]
    CocycleShape { expected: usize, got: usize },
    #[error("torsion order {m} is not coprime to the characteristic {p}")]
    TorsionNotCoprime { m: u64, p: u64 },

    #[error("associativity fails at basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("designated unit is not a two-sided identity (basis index {0})")]
    UnitNotIdentity(usize),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("element is not central")]
    NotCentral,
    #[error("subspace is not stable under the group action")]
    NotStable,
    #[error("action is not multiplicative at pair ({x}, {y})")]
    NotMultiplicative { x: usize, y: usize },
    #[error("element is not fixed by the given subgroup")]
    NotFixed,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Input(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
