//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by group construction, validation and the degree pipeline.
///
/// Programmer errors (mixing elements of different groups, mixing cyclotomic
/// moduli, dividing by zero) are panics, not `Err` values; everything that can
/// be triggered by user input goes through this enum.
#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplication table is not associative: ({a} {b}) {c} != {a} ({b} {c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("multiplication table has no two-sided identity")]
    NoIdentity,

    #[error("element {element} has no inverse in the multiplication table")]
    NoInverse { element: usize },

    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeds the order cap {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("unsupported group parameter: {0}")]
    UnsupportedGroup(String),

    #[error("expected an abelian group")]
    NotAbelian,

    #[error("dihedral character table requires odd n >= 3, got {0}")]
    DihedralEvenOrder(u64),

    #[error("group is not laid out as the dihedral presentation <a, b | a^n = b^2 = (ab)^2 = 1>")]
    NotDihedralLayout,

    #[error("connection set {set} is not conjugate-closed: contains {witness} but not its conjugate {missing}")]
    NotConjugateClosed {
        set: String,
        witness: String,
        missing: String,
    },

    #[error("multiset is not conjugate-closed (witness element index {witness})")]
    MultisetNotClassClosed { witness: usize },

    #[error("no prime p = 1 (mod {modulus}) with p > {lower_bound} below the search bound")]
    NoSuitablePrime { modulus: u64, lower_bound: u64 },

    #[error("prime {p} divides a coefficient denominator")]
    PrimeDividesDenominator { p: u64 },

    #[error(
        "squareness of radicand {radicand} is undetermined after {primes} prime embeddings \
         (non-square with probability >= 1 - 2^-{primes})"
    )]
    UndeterminedSquareness { radicand: String, primes: usize },

    #[error("character table does not belong to this group")]
    TableGroupMismatch,

    #[error("internal failure in the character table engine: {0}")]
    CharTableEngine(String),

    #[error("matrix dimension {dim} exceeds the oracle cap {cap}")]
    OracleDimension { dim: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
