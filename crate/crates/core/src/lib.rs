//! Sumsets and signed sumsets of subsets of finite abelian groups.
//!
//! For a group `G`, a subset size `m` and a fold count `h`, this crate
//! computes `hA` (sums of `h` elements, repetition allowed) and `h_±A`
//! (signed combinations with total absolute coefficient `h`), the
//! divisor-minimum closed forms that bound their smallest possible sizes,
//! and exhaustive oracles that compute those minima exactly on small
//! groups.
//!
//! ```
//! use signed_sumset::{GroupSpec, ElementSet, h_fold_signed_sumset};
//!
//! let g: GroupSpec = "Z5".parse().unwrap();
//! let a = ElementSet::from_indices(&g, [1, 2]).unwrap();
//! let s = h_fold_signed_sumset(&g, &a, 2).unwrap();
//! assert_eq!(s.indices(), vec![1, 2, 3, 4]);
//! ```

pub mod closed_forms;
pub mod error;
pub mod group;
#[cfg(feature = "harness")]
pub mod harness;
pub mod oracle;
pub mod set;
pub mod sumset;

pub use closed_forms::{
    coset_progression_size, equality_certificate, min_sumset_size, predicted_signed_minimum,
    signed_sumset_bound, zp2_equality, zp2_equality_by_complement, zp2_equality_by_ranges,
    zp2_table_prediction, DigitProfile, DivisorMinimum, EqualityCertificate, PowerSplit,
};
pub use error::{Error, Result};
pub use group::{admissible_divisors, divisors, is_prime, GroupElement, GroupSpec};
pub use oracle::{
    enumerate_family, rho_oracle, rho_pm_oracle, upper_bound_probe, Family, OracleResult,
    PairStructure, ProbeResult, SearchOptions, SearchSpace, DEFAULT_BUDGET,
};
pub use set::ElementSet;
pub use sumset::{
    classify_symmetry, h_fold_signed_sumset, h_fold_sumset, in_a_family, set_add, SymmetryClass,
};
