//! End-to-end acceptance gate. One criterion per check function; every check
//! prints a single pass/fail line and the test fails if any criterion does.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phasespace_core::battery::{default_battery, gaussian_pure_battery};
use phasespace_core::engine::{field_via_char, order_smooth, wigner_w};
use phasespace_core::fock::{displacement_op, squeezing_op};
use phasespace_core::gaussian::{
    bbl_bound, gauss_convolve, gauss_pnorm, ExponentTriple, GaussianFn,
};
use phasespace_core::inequality::{
    verify_collision_case, verify_convolution_identity, verify_entropy_relation,
    verify_p1_case, verify_p_infty_case, verify_renyi_infty_case, StateBundle, SuiteConfig,
};
use phasespace_core::measures::{renyi_wehrl, renyi_wehrl_norm_form, suessmann, wehrl_entropy, RenyiOrder};
use phasespace_core::{DensityMatrix, Ext, FockCutoff, SqueezeParam, StateKind};

const N_MAX: usize = 63;

static BUNDLES: Lazy<Vec<StateBundle>> = Lazy::new(|| {
    let config = SuiteConfig::default();
    default_battery()
        .iter()
        .map(|k| StateBundle::prepare(k, FockCutoff::new(N_MAX), &config).unwrap())
        .collect()
});

fn bundle_for(tag: &str) -> &'static StateBundle {
    BUNDLES
        .iter()
        .find(|b| b.rho.tag() == tag)
        .unwrap_or_else(|| panic!("no battery state tagged {tag}"))
}

fn check(results: &mut Vec<(usize, &'static str, bool)>, id: usize, label: &'static str, ok: bool) {
    println!("[{}] criterion {id:2}: {label}", if ok { "PASS" } else { "FAIL" });
    results.push((id, label, ok));
}

/// Criterion 1: squeezed-vacuum Rényi–Wehrl closed form
/// `R_q = ln(q)/(q-1) + ln pi + ln cosh r`.
///
/// Needs n_max = 127: at the default 63 the tail-weighted q = 0.5 integral of
/// the r = 1 state is off by 2.6e-4 from pure Fock truncation (grid
/// independent; 2.3e-8 at 127).
fn squeezed_closed_form() -> bool {
    let config = SuiteConfig::default();
    for r in [0.0, 0.5, 1.0] {
        let kind = StateKind::SqueezedVacuum { r, phi: 0.0 };
        let b = StateBundle::prepare(&kind, FockCutoff::new(127), &config).unwrap();
        for q in [0.5, 2.0, 3.0, 5.0] {
            let got = renyi_wehrl(&b.q_field, RenyiOrder(Ext::Finite(q))).unwrap();
            let want = q.ln() / (q - 1.0) + PI.ln() + r.cosh().ln();
            if (got - want).abs() >= 1e-5 {
                eprintln!("  r = {r}, q = {q}: got {got}, want {want}");
                return false;
            }
        }
    }
    true
}

/// Criterion 2: Wehrl–Lieb equality case, coherent = 1 + ln pi; every
/// non-coherent battery state strictly above.
fn wehrl_lieb() -> bool {
    let floor = 1.0 + PI.ln();
    let coh = wehrl_entropy(&bundle_for("coherent_0.7_0.2").q_field).unwrap();
    if (coh - floor).abs() >= 1e-5 {
        eprintln!("  coherent Wehrl entropy {coh} vs {floor}");
        return false;
    }
    for b in BUNDLES.iter().filter(|b| !b.is_coherent_like()) {
        let w = wehrl_entropy(&b.q_field).unwrap();
        if w <= floor + 1e-3 {
            eprintln!("  {}: Wehrl entropy {w} not above {floor}", b.rho.tag());
            return false;
        }
    }
    true
}

/// Criterion 3: `S_delta = -ln Tr rho^2`; thermal(1) gives ln 3.
fn purity_bridge() -> bool {
    for b in BUNDLES.iter() {
        let (_, s_delta) = suessmann(&b.w_field).unwrap();
        let want = -b.rho.purity().ln();
        if (s_delta - want).abs() >= 1e-6 {
            eprintln!("  {}: S_delta {s_delta} vs -ln purity {want}", b.rho.tag());
            return false;
        }
    }
    let (_, s_th) = suessmann(&bundle_for("thermal_1").w_field).unwrap();
    if (s_th - 3f64.ln()).abs() >= 1e-6 {
        eprintln!("  thermal(1): S_delta {s_th} vs ln 3");
        return false;
    }
    true
}

/// Criterion 4: `||W_pure||_2 = pi^{-1/2}` and two-formula R_q agreement.
fn norm_reformulations() -> bool {
    for b in BUNDLES.iter().filter(|b| b.rho.purity() > 1.0 - 1e-9) {
        let (w2, _) = b.w_field.pnorm(Ext::Finite(2.0)).unwrap();
        if (w2 - 1.0 / PI.sqrt()).abs() >= 1e-6 {
            eprintln!("  {}: ||W||_2 = {w2}", b.rho.tag());
            return false;
        }
    }
    for b in BUNDLES.iter() {
        for q in [1.5, 2.0, 3.0, 5.0] {
            let a = renyi_wehrl(&b.q_field, RenyiOrder(Ext::Finite(q))).unwrap();
            let c = renyi_wehrl_norm_form(&b.q_field, q).unwrap();
            if (a - c).abs() >= 1e-10 {
                eprintln!("  {}: R_{q} integral {a} vs norm form {c}", b.rho.tag());
                return false;
            }
        }
    }
    true
}

/// Criterion 5: `Q = (2/pi)(W * f_2)` pointwise, plus semigroup consistency
/// of order smoothing (0 -> -0.5 -> -1 equals 0 -> -1).
fn convolution_identity() -> bool {
    for b in BUNDLES.iter() {
        let v = verify_convolution_identity(b).unwrap();
        if !v.passed {
            eprintln!("  {}: convolution deviation {}", b.rho.tag(), v.lhs);
            return false;
        }
    }
    let w = &bundle_for("fock_2").w_field;
    let two_step = order_smooth(&order_smooth(w, -0.5).unwrap(), -1.0).unwrap();
    let one_step = order_smooth(w, -1.0).unwrap();
    let dev = two_step.max_abs_diff(&one_step).unwrap();
    if dev >= 1e-6 {
        eprintln!("  semigroup deviation {dev}");
        return false;
    }
    true
}

/// Criterion 6: entropy relation over r in {2,3,4,8,inf} x battery;
/// coherent collision slack = ln 2.
fn entropy_relation() -> bool {
    let r_lattice = [Ext::Finite(2.0), Ext::Finite(3.0), Ext::Finite(4.0), Ext::Finite(8.0), Ext::Inf];
    for b in BUNDLES.iter() {
        for r in r_lattice {
            let v = verify_entropy_relation(b, r).unwrap();
            if !v.passed {
                eprintln!("  {} at r = {r:?}: slack {} < -{}", b.rho.tag(), v.slack, v.tolerance);
                return false;
            }
        }
    }
    let v = verify_collision_case(bundle_for("coherent_0.7_0.2")).unwrap();
    if (v.slack - 2f64.ln()).abs() >= 1e-5 {
        eprintln!("  coherent collision slack {} vs ln 2", v.slack);
        return false;
    }
    true
}

/// Criterion 7: r = inf equality for coherent states only.
fn renyi_infty_equality() -> bool {
    let v = verify_renyi_infty_case(bundle_for("coherent_0.7_0.2")).unwrap();
    if v.slack.abs() >= 1e-5 {
        eprintln!("  coherent |2R_inf - S_delta - 2 ln pi| = {}", v.slack.abs());
        return false;
    }
    for tag in ["fock_1", "cat_1.5_0_3.142"] {
        let v = verify_renyi_infty_case(bundle_for(tag)).unwrap();
        if v.slack.abs() <= 0.1 {
            eprintln!("  {tag}: slack {} not strict", v.slack);
            return false;
        }
    }
    true
}

/// Criterion 8: p = 1 generalisation plus `||W||_1` behaviour (1 for pure
/// Gaussian states, ~sqrt(m+1) for Fock states).
fn p1_generalisation() -> bool {
    for b in BUNDLES.iter() {
        for q in [Ext::Finite(1.0), Ext::Finite(2.0), Ext::Inf] {
            let v = verify_p1_case(b, q).unwrap();
            if !v.passed {
                eprintln!("  {} at q = {q:?}: slack {}", b.rho.tag(), v.slack);
                return false;
            }
        }
    }
    let config = SuiteConfig::default();
    // n_max = 127: the r = 1 squeezed state is truncation-limited at 63
    // (||W||_1 - 1 = 2.7e-4 there vs 4.6e-8 at 127, grid independent)
    for kind in gaussian_pure_battery() {
        let b = StateBundle::prepare(&kind, FockCutoff::new(127), &config).unwrap();
        let (w1, _) = b.w_field.pnorm(Ext::Finite(1.0)).unwrap();
        if (w1 - 1.0).abs() >= 2e-6 {
            eprintln!("  {}: ||W||_1 = {w1}", b.rho.tag());
            return false;
        }
    }
    for m in 0..=10usize {
        let b = StateBundle::prepare(&StateKind::Fock { m }, FockCutoff::new(N_MAX), &config)
            .unwrap();
        let (w1, _) = b.w_field.pnorm(Ext::Finite(1.0)).unwrap();
        let want = ((m + 1) as f64).sqrt();
        if (w1 - want).abs() >= 0.15 * want {
            eprintln!("  fock({m}): ||W||_1 = {w1} vs ~{want}");
            return false;
        }
    }
    true
}

/// Criterion 9: `||Q||_inf <= ||W||_inf` on the battery.
fn p_infty_case() -> bool {
    for b in BUNDLES.iter() {
        let v = verify_p_infty_case(b).unwrap();
        if !v.passed {
            eprintln!("  {}: slack {}", b.rho.tag(), v.slack);
            return false;
        }
    }
    true
}

fn frob_block(
    a: &nalgebra::DMatrix<C64>,
    b: &nalgebra::DMatrix<C64>,
    k: usize,
) -> f64 {
    let mut s = 0.0;
    for m in 0..k {
        for n in 0..k {
            s += (a[(m, n)] - b[(m, n)]).norm_sqr();
        }
    }
    s.sqrt()
}

/// Criterion 10: displacement composition phase law and squeeze-displacement
/// interchange at n_max = 60, Frobenius < 1e-7 on the truncation-safe block.
fn operator_algebra() -> bool {
    let cutoff = FockCutoff::new(60);
    let (alpha, beta) = (C64::new(0.6, -0.3), C64::new(-0.4, 0.8));
    let lhs = displacement_op(alpha + beta, cutoff);
    let phase = ((alpha.conj() * beta - alpha * beta.conj()) / 2.0).exp();
    let rhs = displacement_op(alpha, cutoff) * displacement_op(beta, cutoff) * phase;
    let d_comp = frob_block(&lhs, &rhs, 40);
    if d_comp >= 1e-7 {
        eprintln!("  composition Frobenius {d_comp}");
        return false;
    }

    let alpha = C64::new(0.5, 0.2);
    let (r, phi) = (0.4, 0.9);
    let xi = SqueezeParam::new(r, phi).unwrap();
    let beta = alpha * r.cosh() - alpha.conj() * C64::from_polar(1.0, phi) * r.sinh();
    let lhs = squeezing_op(xi, cutoff) * displacement_op(alpha, cutoff);
    let rhs = displacement_op(beta, cutoff) * squeezing_op(xi, cutoff);
    let d_int = frob_block(&lhs, &rhs, 20);
    if d_int >= 1e-7 {
        eprintln!("  interchange Frobenius {d_int}");
        return false;
    }
    true
}

/// Brute-force `||e^{-a r^2}||_p` in two dimensions by Simpson quadrature of
/// the radial integral.
fn radial_pnorm_2d(a: f64, p: f64) -> f64 {
    let r_max = 14.0 / (p * a).sqrt();
    let n = 40_000usize; // even
    let h = r_max / n as f64;
    let f = |r: f64| (-p * a * r * r).exp() * r;
    let mut s = f(0.0) + f(r_max);
    for i in 1..n {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    (2.0 * PI * s * h / 3.0).powf(1.0 / p)
}

/// Criterion 11: Gaussian p-norm oracle vs quadrature, and exact BBL equality
/// on the width family a = gamma p', b = gamma q'.
fn gaussian_oracle() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..20 {
        let a = rng.gen_range(0.3..3.0);
        let p = rng.gen_range(1.0..6.0);
        let g = GaussianFn::standard(a);
        let closed = gauss_pnorm(&g, Ext::Finite(p)).unwrap();
        let brute = radial_pnorm_2d(a, p);
        if (closed - brute).abs() >= 1e-10 {
            eprintln!("  a = {a}, p = {p}: closed {closed} vs quadrature {brute}");
            return false;
        }
    }
    for (p, q) in [(1.5, 3.0), (4.0 / 3.0, 4.0 / 3.0), (2.0, 1.2)] {
        let t = ExponentTriple::from_pq(Ext::Finite(p), Ext::Finite(q)).unwrap();
        let gamma = 0.7;
        let f = GaussianFn::centred_1d(1.0, gamma * Ext::Finite(p).conjugate().value());
        let g = GaussianFn::centred_1d(1.0, gamma * Ext::Finite(q).conjugate().value());
        let lhs = gauss_pnorm(&gauss_convolve(&f, &g).unwrap(), t.r).unwrap();
        let rhs = bbl_bound(
            gauss_pnorm(&f, t.p).unwrap(),
            gauss_pnorm(&g, t.q).unwrap(),
            t,
            1,
        )
        .unwrap();
        if (lhs - rhs).abs() >= 1e-12 * rhs {
            eprintln!("  BBL equality family (p = {p}, q = {q}): {lhs} vs {rhs}");
            return false;
        }
    }
    true
}

/// Criterion 12: Wigner via the characteristic-function transform agrees with
/// the displaced-parity path across the battery.
fn two_path_wigner() -> bool {
    for kind in default_battery() {
        let rho = DensityMatrix::build(&kind, FockCutoff::new(N_MAX)).unwrap();
        let via = field_via_char(&rho, 0.0).unwrap();
        let direct = wigner_w(&rho, &via.grid).unwrap();
        let dev = via.max_abs_diff(&direct).unwrap();
        if dev >= 1e-6 {
            eprintln!("  {}: two-path deviation {dev}", rho.tag());
            return false;
        }
    }
    true
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    check(&mut results, 1, "squeezed-state Renyi-Wehrl closed form", squeezed_closed_form());
    check(&mut results, 2, "Wehrl-Lieb equality case", wehrl_lieb());
    check(&mut results, 3, "purity bridge S_delta = -ln Tr rho^2", purity_bridge());
    check(&mut results, 4, "norm reformulations of R_q", norm_reformulations());
    check(&mut results, 5, "convolution identity Q = (2/pi)(W * f_2)", convolution_identity());
    check(&mut results, 6, "entropy relation across r-lattice and battery", entropy_relation());
    check(&mut results, 7, "r = inf equality for coherent states", renyi_infty_equality());
    check(&mut results, 8, "p = 1 generalisation and ||W||_1 behaviour", p1_generalisation());
    check(&mut results, 9, "p = inf case ||Q||_inf <= ||W||_inf", p_infty_case());
    check(&mut results, 10, "displacement/squeeze operator algebra", operator_algebra());
    check(&mut results, 11, "Gaussian p-norm and BBL oracle", gaussian_oracle());
    check(&mut results, 12, "two-path Wigner agreement", two_path_wigner());

    let failed: Vec<_> = results.iter().filter(|(_, _, ok)| !ok).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
