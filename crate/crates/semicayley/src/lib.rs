//! Exact spectra of quasi-abelian semi-Cayley digraphs.
//!
//! A semi-Cayley digraph over a finite group G has vertex set two copies of
//! G and arcs controlled by four connection sets; it is quasi-abelian when
//! every connection set is a union of conjugacy classes. For such digraphs
//! the eigenvalues come in radical pairs indexed by the irreducible
//! characters of G, and the splitting field and algebraic degree of the
//! spectrum can be computed exactly from character data, a Galois fixed
//! field and a group of square classes.
//!
//! The crate keeps two independent routes to the spectrum: the character
//! formulas (exact arithmetic in cyclotomic fields) and a brute-force
//! characteristic polynomial of the adjacency matrix. The `oracle` module
//! reconciles them coefficient by coefficient.
//!
//! See the `book/` directory for a guided tour; every code snippet there is
//! compiled and run as a doc-test of this crate.

pub mod error;
pub mod group;
pub mod multiset;
pub mod perm;
pub(crate) mod modp;
pub mod cyclotomic;
pub mod chartable;
pub mod digraph;
pub mod splitting;
pub mod oracle;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(groups_and_multisets, "../../../book/src/groups-and-multisets.md");
    chapter!(cyclotomic_numbers, "../../../book/src/cyclotomic-numbers.md");
    chapter!(character_tables, "../../../book/src/character-tables.md");
    chapter!(semi_cayley_digraphs, "../../../book/src/semi-cayley-digraphs.md");
    chapter!(splitting_fields, "../../../book/src/splitting-fields.md");
    chapter!(oracle_checks, "../../../book/src/oracle-checks.md");
}
