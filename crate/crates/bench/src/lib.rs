//! Benchmark fixtures.

use gkz_core::scalar;
use gkz_core::{MomentFunctional, Precision};

/// A fixed three-point mixture inside the disc of radius 1/2.
pub fn three_point_mixture(order: usize) -> MomentFunctional {
    let p = Precision::DEFAULT;
    MomentFunctional::mixture(
        p,
        &[
            (scalar::complex(p, 0.5, 0.0), scalar::complex(p, 0.1, 0.2)),
            (scalar::complex(p, 0.3, 0.0), scalar::complex(p, -0.4, 0.1)),
            (scalar::complex(p, 0.2, 0.0), scalar::complex(p, 0.2, -0.3)),
        ],
        order,
    )
    .expect("weights sum to one")
}
