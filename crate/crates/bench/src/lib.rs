//! Shared fixtures for the kernel benchmarks.

use modsat::brauer::SatakeSetup;
use modsat::linalg::Matrix;
use modsat::rootdata::{block_cyclic_automorphism, inner_torsion_automorphism, pinned_automorphism, RootDatum};

/// Deterministic dense integer matrix with entries in `-9..=9`.
pub fn dense_matrix(n: usize, seed: u64) -> Matrix {
    let mut x = seed | 1;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    (x % 19) as i64 - 9
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(&rows).expect("square")
}

pub fn inner_a2_setup() -> SatakeSetup {
    let d = RootDatum::from_label("A2:adjoint").expect("label");
    SatakeSetup::new(&inner_torsion_automorphism(&d, &[1, 1], 3).expect("automorphism")).expect("setup")
}

pub fn a2_fold_setup() -> SatakeSetup {
    let d = RootDatum::from_label("A2").expect("label");
    SatakeSetup::new(&pinned_automorphism(&d, &[1, 0], 2).expect("automorphism")).expect("setup")
}

/// Base change of `A2` along a degree-3 cyclic extension.
pub fn a2_base_change_setup() -> SatakeSetup {
    let d = RootDatum::from_label("A2").expect("label");
    SatakeSetup::new(&block_cyclic_automorphism(&d, 3).expect("automorphism")).expect("setup")
}
