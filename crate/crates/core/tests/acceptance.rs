//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any failure.

use std::process::ExitCode;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use renyi_moments::bounds::{
    bound_c, bound_product_2d, classical_bound_d, dlogm_dlambda, ln_bound_m, maxent_verify, BoundOptions,
};
use renyi_moments::entropic::{bound_b, conjugate, gaussian_power_product};
use renyi_moments::quantum::{hydrogen_states, oscillator_states, quadrature_moment, CentralState, System};
use renyi_moments::verify::{maxent_cases, OrderRange, Preset, FIGURE_A_VALUES};
use renyi_moments::{DimensionContext, MomentOrders, RenyiIndex, Result};

const OPTIMIZER_TOL: f64 = 1e-10;

fn idx(x: f64) -> RenyiIndex {
    RenyiIndex::new(x).unwrap()
}

fn ctx(d: u32) -> DimensionContext {
    DimensionContext::new(d).unwrap()
}

fn orders(a: f64, b: f64, d: u32) -> MomentOrders {
    MomentOrders::new(a, b, ctx(d)).unwrap()
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

/// Outcome of one criterion: the worst observed residual against its pinned tolerance.
struct Verdict {
    ok: bool,
    detail: String,
}

fn within(worst: f64, tol: f64, what: &str) -> Verdict {
    Verdict { ok: worst <= tol, detail: format!("{what}: worst {worst:.3e} (tol {tol:.0e})") }
}

fn all(parts: Vec<Verdict>) -> Verdict {
    Verdict {
        ok: parts.iter().all(|v| v.ok),
        detail: parts.into_iter().map(|v| v.detail).collect::<Vec<_>>().join("; "),
    }
}

fn heisenberg_reduction() -> Result<Verdict> {
    let (mut worst_c, mut worst_alpha) = (0.0f64, 0.0f64);
    for d in [1u32, 2, 3, 5, 10] {
        let r = bound_c(&orders(2.0, 2.0, d))?;
        let df = d as f64;
        worst_c = worst_c.max(rel(r.value, df * df / 4.0));
        worst_alpha = worst_alpha.max((r.alpha_opt - 1.0).abs());
    }
    Ok(all(vec![within(worst_c, 1e-10, "C(2,2,d) vs d^2/4"), within(worst_alpha, OPTIMIZER_TOL, "|alpha_opt - 1|")]))
}

fn classical_coincidence() -> Result<Verdict> {
    let (mut worst_c, mut worst_alpha) = (0.0f64, 0.0f64);
    for d in [3u32, 5] {
        for a in FIGURE_A_VALUES {
            let m = orders(a, a, d);
            let r = bound_c(&m)?;
            worst_c = worst_c.max(rel(r.value, classical_bound_d(&m)?));
            worst_alpha = worst_alpha.max((r.alpha_opt - 1.0).abs());
        }
    }
    Ok(all(vec![within(worst_c, 1e-8, "C(a,a) vs D(a,a)"), within(worst_alpha, OPTIMIZER_TOL, "|alpha_opt - 1|")]))
}

fn improvement() -> Result<Verdict> {
    let mut worst_deficit = 0.0f64;
    let bs = OrderRange::new(0.1, 8.0, 50)?.values();
    for a in FIGURE_A_VALUES {
        for &b in &bs {
            let m = orders(a, b, 5);
            worst_deficit = worst_deficit.max(classical_bound_d(&m)? - bound_c(&m)?.value);
        }
    }
    let mut smallest_gain = f64::INFINITY;
    for a in FIGURE_A_VALUES {
        let m = orders(a, 4.0 * a, 5);
        smallest_gain = smallest_gain.min(bound_c(&m)?.value / classical_bound_d(&m)? - 1.0);
    }
    Ok(all(vec![
        within(worst_deficit.max(0.0), 1e-12, "D - C over fig1 grid"),
        Verdict {
            ok: smallest_gain >= 0.01,
            detail: format!("min C/D - 1 at b=4a: {smallest_gain:.4} (need >= 0.01)"),
        },
    ]))
}

fn symmetry() -> Result<Verdict> {
    let mut rng = StdRng::seed_from_u64(20240917);
    let (mut worst_c, mut worst_alpha) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let a: f64 = rng.gen_range(0.1..5.0);
        let b: f64 = rng.gen_range(0.1..5.0);
        let d = rng.gen_range(1..=5u32);
        let ab = bound_c(&orders(a, b, d))?;
        let ba = bound_c(&orders(b, a, d))?;
        worst_c = worst_c.max((ab.value - ba.value).abs() / ab.value);
        worst_alpha = worst_alpha.max((ba.alpha_opt - conjugate(idx(ab.alpha_opt))?.value()).abs());
    }
    Ok(all(vec![
        within(worst_c, 1e-10, "|C(a,b) - C(b,a)|/C"),
        within(worst_alpha, 10.0 * OPTIMIZER_TOL, "|alpha_opt(b,a) - alpha_opt(a,b)*|"),
    ]))
}

fn conjugation_curve() -> Result<Verdict> {
    let n = 100;
    let mut worst_cells = 0.0f64;
    for (a, b, d) in [(1.0, 2.0, 3u32), (2.0, 1.0, 3), (0.5, 4.0, 5)] {
        let c = ctx(d);
        let df = d as f64;
        let (lo_a, lo_b, hi) = (df / (df + a), df / (df + b), 3.0);
        let (step_a, step_b) = ((hi - lo_a) / n as f64, (hi - lo_b) / n as f64);
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
        for i in 1..=n {
            let al = lo_a + step_a * i as f64;
            // 1/α + 1/β = 2 on the curve.
            let curve = if al > 0.5 { al / (2.0 * al - 1.0) } else { f64::INFINITY };
            for j in 1..=n {
                let be = lo_b + step_b * j as f64;
                if be > curve {
                    continue;
                }
                let v = bound_product_2d(a, b, idx(al), idx(be), &c)?;
                if v > best.0 {
                    best = (v, al, be);
                }
            }
        }
        let (_, al, be) = best;
        let curve = if al > 0.5 { al / (2.0 * al - 1.0) } else { f64::INFINITY };
        worst_cells = worst_cells.max((be - curve).abs() / step_b);
    }
    Ok(within(worst_cells, 1.0, "argmax distance from beta = alpha* in cells"))
}

fn maximizer_saturation() -> Result<Verdict> {
    let cases = maxent_cases();
    let branches = (
        cases.iter().filter(|c| c.1 < 1.0).count(),
        cases.iter().filter(|c| c.1 == 1.0).count(),
        cases.iter().filter(|c| c.1 > 1.0).count(),
    );
    let mut worst = 0.0f64;
    for &(l, lam, d) in &cases {
        worst = worst.max(maxent_verify(l, idx(lam), &ctx(d), 2.3)?.residual);
    }
    let covered = cases.len() == 12 && branches.0 > 0 && branches.1 > 0 && branches.2 > 0;
    Ok(all(vec![
        Verdict { ok: covered, detail: format!("{} cases, branches <1/=1/>1: {branches:?}", cases.len()) },
        within(worst, 1e-8, "maxent residual"),
    ]))
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp()).collect()
}

fn monotonicity() -> Result<Verdict> {
    let mut m_violations = 0;
    for d in [1u32, 3, 5] {
        let c = ctx(d);
        for l in [0.5, 1.0, 2.0, 4.0] {
            let lo = d as f64 / (d as f64 + l) + 1e-6;
            let mut prev = f64::NEG_INFINITY;
            for i in 0..200 {
                let lam = lo + (5.0 - lo) * i as f64 / 199.0;
                let v = ln_bound_m(l, idx(lam), &c)?;
                if v <= prev {
                    m_violations += 1;
                }
                prev = v;
            }
        }
    }
    let mut b_violations = 0;
    for (lo, hi, up) in [(0.5, 1.0, true), (1.0, 20.0, false)] {
        let vals: Vec<f64> = log_grid(lo, hi, 200).into_iter().map(|x| bound_b(idx(x)).unwrap()).collect();
        b_violations += vals.windows(2).filter(|w| if up { w[1] <= w[0] } else { w[1] >= w[0] }).count();
    }
    let mut rng = StdRng::seed_from_u64(77);
    let mut worst_fd = 0.0f64;
    let h = 1e-6;
    for _ in 0..100 {
        let d = rng.gen_range(1..=6u32);
        let l: f64 = rng.gen_range(0.3..5.0);
        let lam: f64 = rng.gen_range(d as f64 / (d as f64 + l) + 0.02..5.0);
        let c = ctx(d);
        let fd = (ln_bound_m(l, idx(lam + h), &c)? - ln_bound_m(l, idx(lam - h), &c)?) / (2.0 * h);
        worst_fd = worst_fd.max((dlogm_dlambda(l, idx(lam), &c)? - fd).abs());
    }
    Ok(all(vec![
        Verdict { ok: m_violations == 0, detail: format!("M non-increasing steps: {m_violations}") },
        Verdict { ok: b_violations == 0, detail: format!("B shape violations: {b_violations}") },
        within(worst_fd, 1e-5, "dlogM/dlambda vs central difference"),
    ]))
}

fn moments_vs_quadrature() -> Result<Verdict> {
    let (mut worst_q, mut worst_virial) = (0.0f64, 0.0f64);
    for d in [2u32, 3, 5] {
        let c = ctx(d);
        let mut states = hydrogen_states(d, 4)?;
        // n is the radial node count for the oscillator.
        states.extend(oscillator_states(d, 4, 3)?);
        for s in states {
            let (fr, fp) = (s.radial_position::<f64>(), s.radial_momentum::<f64>());
            for k in [0.5, 1.0, 2.0, 3.0] {
                worst_q = worst_q.max(rel(quadrature_moment(&fr, &c, k)?.value, s.moment_r(k)?));
                worst_q = worst_q.max(rel(quadrature_moment(&fp, &c, k)?.value, s.moment_p(k)?));
            }
            let e: f64 = s.energy();
            match s.system() {
                System::Hydrogen => {
                    let (_, n, _) = s.quantum_numbers();
                    let eta = n as f64 + (d as f64 - 3.0) / 2.0;
                    worst_virial = worst_virial.max(rel(s.moment_p(2.0)?, 1.0 / (eta * eta)));
                }
                System::Oscillator => {
                    worst_virial = worst_virial.max(rel(s.moment_r(2.0)?, e)).max(rel(s.moment_p(2.0)?, e));
                }
            }
        }
    }
    Ok(all(vec![within(worst_q, 1e-8, "closed form vs quadrature"), within(worst_virial, 1e-10, "virial")]))
}

fn physical_inequality() -> Result<Verdict> {
    let opts = BoundOptions::default();
    let (mut rows, mut worst) = (0usize, 0.0f64);
    for p in [Preset::Fig3, Preset::Fig4, Preset::Fig5, Preset::Fig6, Preset::Fig7, Preset::Fig8] {
        for row in p.run(&opts)?.rows {
            rows += 1;
            worst = worst.max((row.bound_c - row.product.unwrap()) / row.bound_c);
        }
    }
    let ground = CentralState::new(System::Oscillator, 3, 0, 0)?;
    let saturation = rel(ground.uncertainty_product(2.0, 2.0)?, bound_c(&orders(2.0, 2.0, 3))?.value);
    Ok(all(vec![
        within(worst.max(0.0), 1e-10, &format!("(C - product)/C over {rows} rows")),
        within(saturation, 1e-10, "oscillator ground state at (2,2)"),
    ]))
}

fn trends() -> Result<Verdict> {
    let c12 = bound_c(&orders(1.0, 2.0, 3))?.value;
    let c14 = bound_c(&orders(1.0, 4.0, 3))?.value;
    let gaps = (1..=5)
        .map(|n| Ok(CentralState::new(System::Hydrogen, 3, n, 0)?.uncertainty_product(1.0, 2.0)? - c12))
        .collect::<Result<Vec<f64>>>()?;
    let increasing = gaps.windows(2).all(|w| w[1] > w[0]);
    let ground = CentralState::new(System::Hydrogen, 3, 1, 0)?;
    let p12 = ground.uncertainty_product(1.0, 2.0)?;
    let (r12, r14) = (p12 / c12, ground.uncertainty_product(1.0, 4.0)? / c14);
    Ok(all(vec![
        Verdict { ok: increasing, detail: format!("hydrogen gaps n=1..5: {gaps:.4?}") },
        within(rel(p12, 2.25), 1e-12, "ground-state product vs 2.25"),
        Verdict { ok: r12 < r14, detail: format!("ratio (1,2) = {r12:.4} < ratio (1,4) = {r14:.4}") },
    ]))
}

fn gaussian_sharpness() -> Result<Verdict> {
    let mut rng = StdRng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let alpha = idx(rng.gen_range(0.51..20.0));
        let sigma: f64 = rng.gen_range(-5.0f64..5.0).exp();
        worst = worst.max(rel(gaussian_power_product(alpha, sigma)?, bound_b(alpha)?));
    }
    Ok(within(worst, 1e-12, "Gaussian product vs B(alpha)"))
}

type Criterion = fn() -> Result<Verdict>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 11] = [
        ("heisenberg_reduction", heisenberg_reduction),
        ("classical_coincidence_at_a_equals_b", classical_coincidence),
        ("improvement_over_classical", improvement),
        ("order_exchange_symmetry", symmetry),
        ("conjugation_curve_maximality", conjugation_curve),
        ("maximizer_saturation", maximizer_saturation),
        ("monotonicity", monotonicity),
        ("closed_form_vs_quadrature", moments_vs_quadrature),
        ("physical_inequality", physical_inequality),
        ("trend_reproduction", trends),
        ("gaussian_sharpness", gaussian_sharpness),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run().unwrap_or_else(|e| Verdict { ok: false, detail: format!("error: {e}") });
        if !v.ok {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if v.ok { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
