//! The default state battery used by the verification suite and CLI.

use num_complex::Complex64 as C64;

use crate::fock::StateKind;

/// Vacuum, coherent, Fock, squeezed, thermal, cat and mixed states covering
/// every equality case and every strict case of the relation suite.
pub fn default_battery() -> Vec<StateKind> {
    vec![
        StateKind::vacuum(),
        StateKind::coherent(C64::new(0.7, 0.2)),
        StateKind::coherent(C64::new(1.0, 0.0)),
        StateKind::Fock { m: 1 },
        StateKind::Fock { m: 2 },
        StateKind::SqueezedVacuum { r: 0.5, phi: 0.0 },
        StateKind::SqueezedVacuum { r: 1.0, phi: 0.0 },
        StateKind::IdealSqueezed { alpha: [0.5, 0.0], r: 0.5, phi: 0.0 },
        StateKind::Thermal { n_bar: 1.0 },
        StateKind::odd_cat(1.5),
        StateKind::Mixture {
            components: vec![
                (0.5, StateKind::Fock { m: 0 }),
                (0.5, StateKind::Fock { m: 1 }),
            ],
        },
    ]
}

/// The subset with Gaussian pure Wigner functions (numerical Hudson–Piquet
/// direction: `||W||_1 = 1`).
pub fn gaussian_pure_battery() -> Vec<StateKind> {
    vec![
        StateKind::vacuum(),
        StateKind::coherent(C64::new(0.7, 0.2)),
        StateKind::coherent(C64::new(1.0, 0.0)),
        StateKind::SqueezedVacuum { r: 0.5, phi: 0.0 },
        StateKind::SqueezedVacuum { r: 1.0, phi: 0.0 },
        StateKind::IdealSqueezed { alpha: [0.5, 0.0], r: 0.5, phi: 0.0 },
    ]
}
