//! Entropic localisation measures: Rényi–Wehrl entropies of the Husimi
//! function, the Süßmann measure and its entropy, and the `ln ||W||_1`
//! non-classicality, together with their p-norm reformulations.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::engine::{auto_grid, husimi_q, wigner_w};
use crate::error::{Error, Result};
use crate::extended::Ext;
use crate::fock::DensityMatrix;
use crate::grid::{PhaseGrid, PhaseSpaceField};

/// Support threshold for the (grid-dependent) q = 0 Rényi–Wehrl entropy.
pub const SUPPORT_THRESHOLD: f64 = 1e-15;

/// Rényi order in `[0, inf]`; 0, 1 and inf route to dedicated limit formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenyiOrder(pub Ext);

impl RenyiOrder {
    pub fn new(q: Ext) -> Result<Self> {
        if let Ext::Finite(v) = q {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::BadParameter(format!("Rényi order q = {v} must be >= 0")));
            }
        }
        Ok(RenyiOrder(q))
    }
}

/// `R_q = (1/(1-q)) ln int Q^q d^2alpha`, with the q in {0, 1, inf} limits.
pub fn renyi_wehrl(q_field: &PhaseSpaceField, order: RenyiOrder) -> Result<f64> {
    let h2 = q_field.grid.cell_area();
    Ok(match order.0 {
        Ext::Inf => {
            let (sup, _) = q_field.pnorm(Ext::Inf)?;
            -sup.ln()
        }
        Ext::Finite(q) if q == 1.0 => {
            // -int Q ln Q, with 0 ln 0 := 0
            -q_field
                .values
                .iter()
                .map(|&v| if v > 0.0 { v * v.ln() } else { 0.0 })
                .sum::<f64>()
                * h2
        }
        Ext::Finite(q) if q == 0.0 => {
            // grid-dependent support measure, documented convention
            let cells = q_field.values.iter().filter(|&&v| v > SUPPORT_THRESHOLD).count();
            (cells as f64 * h2).ln()
        }
        Ext::Finite(q) => {
            let integral = q_field.values.iter().map(|&v| v.abs().powf(q)).sum::<f64>() * h2;
            integral.ln() / (1.0 - q)
        }
    })
}

/// Norm form `R_q = (q/(1-q)) ln ||Q||_q` for q > 1; algebraically identical
/// to [`renyi_wehrl`], kept as a second code path for consistency checks.
pub fn renyi_wehrl_norm_form(q_field: &PhaseSpaceField, q: f64) -> Result<f64> {
    if q <= 1.0 {
        return Err(Error::BadParameter(format!("norm form requires q > 1, got {q}")));
    }
    let (norm, _) = q_field.pnorm(Ext::Finite(q))?;
    Ok(q / (1.0 - q) * norm.ln())
}

/// Wehrl entropy `W(rho) = R_1`.
pub fn wehrl_entropy(q_field: &PhaseSpaceField) -> Result<f64> {
    renyi_wehrl(q_field, RenyiOrder(Ext::Finite(1.0)))
}

/// Süßmann measure from the Wigner field: returns
/// `(delta/(2 pi hbar), S_delta)` with `delta/(2 pi hbar) = (pi int W^2)^{-1}`.
/// All outputs are hbar-free in the alpha convention.
pub fn suessmann(w_field: &PhaseSpaceField) -> Result<(f64, f64)> {
    let overlap = w_field.product_trace(w_field)?;
    let area_ratio = 1.0 / overlap;
    Ok((area_ratio, area_ratio.ln()))
}

/// Non-classicality `C_rho = ln ||W||_1`; zero iff W is non-negative.
pub fn nonclassicality(w_field: &PhaseSpaceField) -> Result<f64> {
    let (n1, _) = w_field.pnorm(Ext::Finite(1.0))?;
    Ok(n1.ln())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NumericsMeta {
    pub n_max: usize,
    pub grid_half_extent: f64,
    pub grid_points: usize,
    pub tail_mass: f64,
    pub q_normalisation: f64,
    pub w_normalisation: f64,
    pub husimi_clipped_samples: usize,
    pub truncation_warning: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossChecks {
    /// |S_delta + ln purity| — phase-space vs Hilbert-space route.
    pub s_delta_vs_purity: f64,
    /// |R_2 integral form - R_2 norm form| — two formulas, same samples.
    pub r2_two_form: f64,
}

/// All localisation measures of one state, with the numerics that made them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureReport {
    pub state_tag: String,
    pub renyi_wehrl: Vec<(Ext, f64)>,
    pub wehrl: f64,
    /// Original convention `W - ln pi`, reported only when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wehrl_original_convention: Option<f64>,
    pub suessmann_entropy: f64,
    pub suessmann_area_over_2pi_hbar: f64,
    pub nonclassicality: f64,
    pub purity: f64,
    pub w_norms: Vec<(Ext, f64, f64)>,
    pub q_norms: Vec<(Ext, f64, f64)>,
    pub cross_checks: CrossChecks,
    pub numerics: NumericsMeta,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureConfig {
    pub grid_points: usize,
    /// None = auto-size from the state's Husimi moments.
    pub grid_half_extent: Option<f64>,
    pub q_lattice: Vec<Ext>,
    pub p_lattice: Vec<Ext>,
    /// Also report the original Wehrl convention `W - ln pi`.
    pub original_wehrl_convention: bool,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            grid_points: 256,
            grid_half_extent: None,
            q_lattice: vec![
                Ext::Finite(0.5),
                Ext::Finite(1.0),
                Ext::Finite(2.0),
                Ext::Finite(3.0),
                Ext::Finite(5.0),
                Ext::Inf,
            ],
            p_lattice: vec![Ext::Finite(1.0), Ext::Finite(2.0), Ext::Inf],
            original_wehrl_convention: false,
        }
    }
}

impl MeasureConfig {
    pub fn resolve_grid(&self, rho: &DensityMatrix) -> Result<PhaseGrid> {
        match self.grid_half_extent {
            Some(r) => PhaseGrid::new(r, self.grid_points),
            None => auto_grid(rho, self.grid_points),
        }
    }
}

pub fn build_measure_report(rho: &DensityMatrix, config: &MeasureConfig) -> Result<MeasureReport> {
    let grid = config.resolve_grid(rho)?;
    let q_field = husimi_q(rho, &grid)?;
    let w_field = wigner_w(rho, &grid)?;
    build_measure_report_from_fields(rho, &q_field, &w_field, config)
}

pub fn build_measure_report_from_fields(
    rho: &DensityMatrix,
    q_field: &PhaseSpaceField,
    w_field: &PhaseSpaceField,
    config: &MeasureConfig,
) -> Result<MeasureReport> {
    let mut renyi = Vec::new();
    for &q in &config.q_lattice {
        renyi.push((q, renyi_wehrl(q_field, RenyiOrder::new(q)?)?));
    }
    let wehrl = wehrl_entropy(q_field)?;
    let (area_ratio, s_delta) = suessmann(w_field)?;
    let c_rho = nonclassicality(w_field)?;
    let purity = rho.purity();

    let mut w_norms = Vec::new();
    let mut q_norms = Vec::new();
    for &p in &config.p_lattice {
        let (wv, we) = w_field.pnorm(p)?;
        w_norms.push((p, wv, we));
        let (qv, qe) = q_field.pnorm(p)?;
        q_norms.push((p, qv, qe));
    }

    let r2 = renyi_wehrl(q_field, RenyiOrder(Ext::Finite(2.0)))?;
    let cross_checks = CrossChecks {
        s_delta_vs_purity: (s_delta + purity.ln()).abs(),
        r2_two_form: (r2 - renyi_wehrl_norm_form(q_field, 2.0)?).abs(),
    };

    Ok(MeasureReport {
        state_tag: rho.tag().to_string(),
        renyi_wehrl: renyi,
        wehrl,
        wehrl_original_convention: config.original_wehrl_convention.then(|| wehrl - PI.ln()),
        suessmann_entropy: s_delta,
        suessmann_area_over_2pi_hbar: area_ratio,
        nonclassicality: c_rho,
        purity,
        w_norms,
        q_norms,
        cross_checks,
        numerics: NumericsMeta {
            n_max: rho.cutoff().n_max,
            grid_half_extent: q_field.grid.half_extent,
            grid_points: q_field.grid.points_per_axis,
            tail_mass: rho.tail_mass(),
            q_normalisation: q_field.integral(),
            w_normalisation: w_field.integral(),
            husimi_clipped_samples: q_field.clipped,
            truncation_warning: rho.truncation_warning(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockCutoff, StateKind};
    use approx::assert_relative_eq;
    use num_complex::Complex64 as C64;

    fn q_field_of(kind: StateKind, n_max: usize, n_grid: usize) -> PhaseSpaceField {
        let rho = DensityMatrix::build(&kind, FockCutoff::new(n_max)).unwrap();
        let grid = auto_grid(&rho, n_grid).unwrap();
        husimi_q(&rho, &grid).unwrap()
    }

    #[test]
    fn coherent_collision_entropy() {
        // R_2 = ln 2 + ln pi for any coherent state
        let q = q_field_of(StateKind::coherent(C64::new(0.7, 0.2)), 63, 128);
        let r2 = renyi_wehrl(&q, RenyiOrder(Ext::Finite(2.0))).unwrap();
        assert_relative_eq!(r2, 2f64.ln() + PI.ln(), epsilon = 1e-6);
    }

    #[test]
    fn squeezed_closed_form_r2() {
        let q = q_field_of(StateKind::SqueezedVacuum { r: 1.0, phi: 0.0 }, 63, 256);
        let r2 = renyi_wehrl(&q, RenyiOrder(Ext::Finite(2.0))).unwrap();
        assert_relative_eq!(r2, 2f64.ln() + PI.ln() + 1f64.cosh().ln(), epsilon = 1e-6);
    }

    #[test]
    fn coherent_renyi_infinity() {
        let q = q_field_of(StateKind::coherent(C64::new(0.5, 0.5)), 63, 128);
        let r_inf = renyi_wehrl(&q, RenyiOrder(Ext::Inf)).unwrap();
        assert_relative_eq!(r_inf, PI.ln(), epsilon = 1e-6);
    }

    #[test]
    fn coherent_wehrl_lieb_equality() {
        let q = q_field_of(StateKind::coherent(C64::new(0.7, 0.2)), 63, 128);
        assert_relative_eq!(wehrl_entropy(&q).unwrap(), 1.0 + PI.ln(), epsilon = 1e-6);
    }

    #[test]
    fn squeezed_wehrl() {
        let q = q_field_of(StateKind::SqueezedVacuum { r: 0.5, phi: 0.0 }, 63, 128);
        assert_relative_eq!(
            wehrl_entropy(&q).unwrap(),
            1.0 + PI.ln() + 0.5f64.cosh().ln(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn thermal_broader_than_vacuum() {
        let qt = q_field_of(StateKind::Thermal { n_bar: 1.0 }, 63, 128);
        let qv = q_field_of(StateKind::vacuum(), 63, 128);
        assert!(wehrl_entropy(&qt).unwrap() > wehrl_entropy(&qv).unwrap());
    }

    #[test]
    fn suessmann_pure_and_thermal() {
        let rho = DensityMatrix::build(&StateKind::vacuum(), FockCutoff::new(40)).unwrap();
        let grid = auto_grid(&rho, 128).unwrap();
        let w = wigner_w(&rho, &grid).unwrap();
        let (ratio, s_delta) = suessmann(&w).unwrap();
        assert_relative_eq!(ratio, 1.0, epsilon = 1e-6);
        assert!(s_delta.abs() < 1e-6);

        let rho = DensityMatrix::build(&StateKind::Thermal { n_bar: 1.0 }, FockCutoff::new(63))
            .unwrap();
        let grid = auto_grid(&rho, 128).unwrap();
        let w = wigner_w(&rho, &grid).unwrap();
        let (ratio, s_delta) = suessmann(&w).unwrap();
        assert_relative_eq!(ratio, 3.0, epsilon = 1e-5);
        assert_relative_eq!(s_delta, 3f64.ln(), epsilon = 1e-6);
    }

    #[test]
    fn mixture_suessmann() {
        let kind = StateKind::Mixture {
            components: vec![
                (0.5, StateKind::Fock { m: 0 }),
                (0.5, StateKind::Fock { m: 1 }),
            ],
        };
        let rho = DensityMatrix::build(&kind, FockCutoff::new(40)).unwrap();
        let grid = auto_grid(&rho, 128).unwrap();
        let w = wigner_w(&rho, &grid).unwrap();
        let (_, s_delta) = suessmann(&w).unwrap();
        assert_relative_eq!(s_delta, 2f64.ln(), epsilon = 1e-6);
    }

    #[test]
    fn nonclassicality_signs() {
        let rho = DensityMatrix::build(&StateKind::coherent(C64::new(1.0, 0.0)), FockCutoff::new(63))
            .unwrap();
        let grid = auto_grid(&rho, 128).unwrap();
        let w = wigner_w(&rho, &grid).unwrap();
        let c = nonclassicality(&w).unwrap();
        assert!(c.abs() < 1e-6);

        let rho = DensityMatrix::build(&StateKind::odd_cat(1.5), FockCutoff::new(63)).unwrap();
        let grid = auto_grid(&rho, 128).unwrap();
        let w = wigner_w(&rho, &grid).unwrap();
        assert!(nonclassicality(&w).unwrap() > 0.05);
    }

    #[test]
    fn report_vacuum() {
        let rho = DensityMatrix::build(&StateKind::vacuum(), FockCutoff::new(40)).unwrap();
        let report = build_measure_report(&rho, &MeasureConfig::default()).unwrap();
        assert_relative_eq!(report.wehrl, 1.0 + PI.ln(), epsilon = 1e-6);
        assert!(report.suessmann_entropy.abs() < 1e-6);
        assert!(report.nonclassicality.abs() < 1e-6);
        assert_relative_eq!(report.purity, 1.0, epsilon = 1e-8);
        assert!(report.cross_checks.s_delta_vs_purity < 1e-6);
        assert!(report.cross_checks.r2_two_form < 1e-10);
        // serialises and round-trips
        let json = serde_json::to_string(&report).unwrap();
        let back: MeasureReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.state_tag, "vacuum");
    }

    #[test]
    fn renyi_monotone_in_q() {
        let q = q_field_of(StateKind::odd_cat(1.5), 63, 128);
        let orders = [
            Ext::Finite(0.5),
            Ext::Finite(1.0),
            Ext::Finite(2.0),
            Ext::Finite(3.0),
            Ext::Finite(5.0),
            Ext::Inf,
        ];
        let vals: Vec<f64> = orders
            .iter()
            .map(|&o| renyi_wehrl(&q, RenyiOrder(o)).unwrap())
            .collect();
        for w in vals.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "R_q must be non-increasing: {vals:?}");
        }
    }

    #[test]
    fn limit_consistency() {
        let q = q_field_of(StateKind::Thermal { n_bar: 1.0 }, 63, 128);
        let wehrl = wehrl_entropy(&q).unwrap();
        let lo = renyi_wehrl(&q, RenyiOrder(Ext::Finite(1.01))).unwrap();
        let hi = renyi_wehrl(&q, RenyiOrder(Ext::Finite(0.99))).unwrap();
        assert!(lo <= wehrl + 0.02 && wehrl <= hi + 0.02);
        let r50 = renyi_wehrl(&q, RenyiOrder(Ext::Finite(50.0))).unwrap();
        let r_inf = renyi_wehrl(&q, RenyiOrder(Ext::Inf)).unwrap();
        // exact gap for thermal(1): R_50 - R_inf = (ln 25 - ln pi)/49 +
        // 50 ln(2 pi)/49 - ln(2 pi) = 0.0798, so 0.05 is unattainable here
        assert!((r50 - r_inf).abs() < 0.1);
    }

    #[test]
    fn rejects_negative_order() {
        assert!(RenyiOrder::new(Ext::Finite(-1.0)).is_err());
    }
}
