//! Brute-force ground truth for small registers.
//!
//! Grover iterates are simulated on the full `2^n` statevector and the
//! nearest product state is searched over *all* product states, with a
//! free angle and phase per qubit. Nothing here relies on the weight-class
//! formulas in the rest of the crate, so agreement between the two is a
//! real check of the symmetric reduction.

mod dense;
mod product;

pub use dense::{
    check_permutation_symmetry, grover_step, grover_trajectory, DenseState, MarkedBits, MAX_ORACLE_QUBITS,
};
pub use product::{oracle_gme, product_overlap, OracleGme, ProductAnsatz, RANDOM_STARTS};
