//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the target
//! fails if any criterion fails.
//!
//! Reference values come from closed forms typed in here and from a literal
//! rank-one summation written independently of the library's linear algebra.

use std::f64::consts::{SQRT_2, TAU};
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use riesz_core::domain::{self, OperatorKind, Verdict, Weights};
use riesz_core::linalg::{self, basis_vector, max_abs_diff_vec};
use riesz_core::suite::{self, RandomParams};
use riesz_core::{ladder, random, ComplexMatrix, OperatorBundle, RieszBasisPair, SequenceSpec, Side};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real(rows: [[f64; 3]; 3]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&rows).unwrap()
}

fn scaled(v: &[Complex64], z: Complex64) -> Vec<Complex64> {
    v.iter().map(|x| x * z).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(name: &str, residual: f64, tol: f64) -> Result<f64, String> {
    ensure(residual <= tol, || {
        format!("{name}: residual {residual:.3e} > {tol:.0e}")
    })?;
    Ok(residual)
}

fn generator(t: f64) -> ComplexMatrix {
    let (s, c) = (t / 2.0).sin_cos();
    real([[1.0, s, c], [0.0, -2.0 * c, 2.0 * s], [1.0, 6.0 * s, 6.0 * c]])
}

fn eps(t: f64) -> [f64; 3] {
    [0.0, 2.0 * t.cos() - 1.0, 2.0 * t.cos() + 1.0]
}

fn displayed_h(t: f64) -> ComplexMatrix {
    let (sin, cos) = t.sin_cos();
    real([
        [-0.6 * cos, 0.5 * sin, 0.6 * cos],
        [-0.4 * sin, cos, 0.4 * sin],
        [-3.6 * cos, 3.0 * sin, 3.6 * cos],
    ])
}

fn three_level_bundle(t: f64) -> OperatorBundle {
    let pair = RieszBasisPair::from_generator(generator(t), 1e-12).unwrap();
    OperatorBundle::new(pair, SequenceSpec::from_real(&eps(t)), 1e-12).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s_phi = real([[2.0, 0.0, 7.0], [0.0, 4.0, 0.0], [7.0, 0.0, 37.0]]);
    let s_psi = real([[1.48, 0.0, -0.28], [0.0, 0.25, 0.0], [-0.28, 0.0, 0.08]]);
    let s_phi_sqrt = real([[1.0, 0.0, 1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 6.0]]);
    let mut worst = 0.0f64;
    for t in [0.0, 0.1, 0.3, 0.5, 1.0] {
        let b = three_level_bundle(t);
        let (sin, cos) = t.sin_cos();
        let h = real([[0.0, 0.0, 0.0], [0.0, cos, sin], [0.0, sin, 3.0 * cos]]);
        let e = eps(t);
        let mut action = 0.0f64;
        for (k, phi) in generator(t).columns().iter().enumerate() {
            action = action.max(max_abs_diff_vec(
                &b.h_phi_psi().mul_vec(phi),
                &scaled(phi, c(e[k], 0.0)),
            ));
        }
        for (name, r) in [
            ("S_phi", b.s_phi().max_abs_diff(&s_phi)),
            ("S_psi", b.s_psi().max_abs_diff(&s_psi)),
            ("S_phi^1/2", b.s_phi_sqrt().max_abs_diff(&s_phi_sqrt)),
            ("h", b.similar().max_abs_diff(&h)),
            ("H", b.h_phi_psi().max_abs_diff(&displayed_h(t))),
            ("H phi_n = eps_n phi_n", action),
        ] {
            worst = worst.max(within(&format!("t = {t}: {name}"), r, 1e-10)?);
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("runtime {elapsed:?} >= 1 s")
    })?;
    Ok(format!("max residual {worst:.2e}, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let expected = ((39.0 + 7.0 * 29f64.sqrt()) / 2.0).sqrt();
    let mut worst = 0.0f64;
    for i in 0..50 {
        let t = TAU * i as f64 / 50.0;
        let g = generator(t);
        let norm = linalg::operator_norm(&g).map_err(|e| e.to_string())?;
        let inv = linalg::inverse(&g, 1e-12).map_err(|e| e.to_string())?;
        let norm_inv = linalg::operator_norm(&inv).map_err(|e| e.to_string())?;
        worst = worst.max(within(&format!("|T({t})|"), (norm - expected).abs(), 1e-9)?);
        worst = worst.max(within(&format!("|T({t})^-1|"), (norm_inv - norm / 5.0).abs(), 1e-9)?);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("runtime {elapsed:?} >= 1 s")
    })?;
    Ok(format!("max residual {worst:.2e} over 50 points, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let t = 0.3f64;
    let (s, co) = (t / 2.0).sin_cos();
    let e = eps(t);
    let (g1, g2) = (c(e[1].sqrt(), 0.0), c(e[2].sqrt(), 0.0));
    let b = three_level_bundle(t);
    let gamma = SequenceSpec::from_real(&[0.0, e[1].sqrt(), e[2].sqrt()]);
    let lp = ladder::build_ladder(b.pair(), &gamma).map_err(|e| e.to_string())?;
    let phi = generator(t).columns();
    let psi: Vec<Vec<Complex64>> = [
        [1.2, 0.0, -0.2],
        [-s / 5.0, -co / 2.0, s / 5.0],
        [-co / 5.0, s / 2.0, co / 5.0],
    ]
    .iter()
    .map(|v| v.iter().map(|&x| c(x, 0.0)).collect())
    .collect();
    let zero = vec![c(0.0, 0.0); 3];
    let (a, bb) = (&lp.a_phi_psi, &lp.b_phi_psi);
    let (a_adj, b_adj) = (a.adjoint(), bb.adjoint());
    let hat = a * bb;
    let hat_adj = hat.adjoint();
    let tilde = [e[1], e[2], 0.0];
    let mut cases = vec![
        ("A phi_0", a.mul_vec(&phi[0]), zero.clone()),
        ("A phi_1", a.mul_vec(&phi[1]), scaled(&phi[0], g1)),
        ("A phi_2", a.mul_vec(&phi[2]), scaled(&phi[1], g2)),
        ("B phi_0", bb.mul_vec(&phi[0]), scaled(&phi[1], g1)),
        ("B phi_1", bb.mul_vec(&phi[1]), scaled(&phi[2], g2)),
        ("B phi_2", bb.mul_vec(&phi[2]), zero.clone()),
        ("B* psi_0", b_adj.mul_vec(&psi[0]), zero.clone()),
        ("B* psi_1", b_adj.mul_vec(&psi[1]), scaled(&psi[0], g1)),
        ("B* psi_2", b_adj.mul_vec(&psi[2]), scaled(&psi[1], g2)),
        ("A* psi_0", a_adj.mul_vec(&psi[0]), scaled(&psi[1], g1)),
        ("A* psi_1", a_adj.mul_vec(&psi[1]), scaled(&psi[2], g2)),
        ("A* psi_2", a_adj.mul_vec(&psi[2]), zero),
    ];
    for k in 0..3 {
        let z = c(tilde[k], 0.0);
        cases.push(("AB phi_n", hat.mul_vec(&phi[k]), scaled(&phi[k], z)));
        cases.push(("(AB)* psi_n", hat_adj.mul_vec(&psi[k]), scaled(&psi[k], z)));
    }
    let mut worst = 0.0f64;
    for (name, lhs, rhs) in &cases {
        worst = worst.max(within(name, max_abs_diff_vec(lhs, rhs), 1e-10)?);
    }
    worst = worst.max(within("H = BA", (bb * a).max_abs_diff(&displayed_h(t)), 1e-10)?);
    Ok(format!("{} actions and H = BA, max residual {worst:.2e}", cases.len()))
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..10u64 {
        let dim = 4 + (seed as usize * 5) % 13;
        let support = 2 + seed as usize % 4;
        let u = random::random_unit_vector(&mut random::rng(seed), dim, support);
        let p = ComplexMatrix::outer(&u, &u);
        let id = ComplexMatrix::identity(dim);
        let with = |z: Complex64| &id + &p.scale(z);
        let alpha = SequenceSpec::power(1.0);
        let pair = RieszBasisPair::from_generator(with(c(0.0, 1.0)), 1e-12).map_err(|e| e.to_string())?;
        let b = OperatorBundle::new(pair, alpha.clone(), 1e-12).map_err(|e| e.to_string())?;
        let h = b.similar();
        let mut outside = 0.0f64;
        for k in support..dim {
            let ek = basis_vector(dim, k);
            outside = outside.max(max_abs_diff_vec(&h.mul_vec(&ek), &scaled(&ek, c(k as f64, 0.0))));
        }
        let transported: Vec<_> = b.pair().phi().iter().map(|f| b.s_psi_sqrt().mul_vec(f)).collect();
        let mut ortho = 0.0f64;
        for (i, f) in transported.iter().enumerate() {
            for (j, g) in transported.iter().enumerate() {
                let d = if i == j { 1.0 } else { 0.0 };
                ortho = ortho.max((linalg::inner(f, g) - d).norm());
            }
        }
        for (name, r) in [
            ("T^-1", b.pair().generator_inverse().max_abs_diff(&with(c(-0.5, -0.5)))),
            ("S_phi", b.s_phi().max_abs_diff(&with(c(1.0, 0.0)))),
            ("S_phi^1/2", b.s_phi_sqrt().max_abs_diff(&with(c(SQRT_2 - 1.0, 0.0)))),
            (
                "S_psi^1/2",
                b.s_psi_sqrt().max_abs_diff(&with(c(-(2.0 - SQRT_2) / 2.0, 0.0))),
            ),
            ("h Hermitian", h.max_abs_diff(&h.adjoint())),
            ("h outside support", outside),
            ("transported orthonormality", ortho),
        ] {
            worst = worst.max(within(
                &format!("seed {seed}, dim {dim}, support {support}: {name}"),
                r,
                1e-10,
            )?);
        }
        let report = suite::run_projection(
            &suite::ProjectionParams {
                dim,
                support,
                seed,
                alpha,
                gamma: None,
            },
            1e-10,
        )
        .map_err(|e| e.to_string())?;
        ensure(report.all_passed(), || {
            format!("seed {seed}: projection report failed\n{}", report.to_json())
        })?;
    }
    Ok(format!("10 models, max residual {worst:.2e}"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let alphas = [
        "poly:1",
        "affine:2,0.5",
        "poly:1*(1+2i)",
        "list:0,1i,2,-1+0.5i,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29,30,31",
    ];
    let gammas = ["sqrt-poly:1", "sqrt-poly:1*(0.6-0.8i)", "poly:1", "sqrt-poly:1*(2+1i)"];
    let required = [
        "riesz.biorthogonality",
        "riesz.frame_inequality",
        "operators.metric",
        "operators.adjoint_pair",
        "operators.intertwining",
        "ladder.adjoints",
        "ladder.products",
        "ladder.commutator",
    ];
    let mut worst = 0.0f64;
    for seed in 0..50u64 {
        let dim = [4, 8, 16, 32][seed as usize % 4];
        let alpha: SequenceSpec = alphas[(seed as usize / 4) % 4].parse().map_err(|e| format!("{e}"))?;
        let gamma: SequenceSpec = gammas[(seed as usize / 2) % 4].parse().map_err(|e| format!("{e}"))?;
        let real = alpha.check_real(dim);
        let params = RandomParams {
            dim,
            seed,
            alpha,
            gamma: Some(gamma),
        };
        let report = suite::run_random(&params, 1e-9).map_err(|e| format!("seed {seed}: {e}"))?;
        let similarity = if real {
            "similarity.self_adjoint"
        } else {
            "similarity.adjoint_relation"
        };
        for name in required.iter().chain(Some(&similarity)) {
            let check = report
                .check(name)
                .ok_or_else(|| format!("seed {seed}: missing {name}"))?;
            worst = worst.max(within(
                &format!("seed {seed}, dim {dim}: {name}"),
                check.residual,
                1e-9,
            )?);
        }
        for check in &report.checks {
            worst = worst.max(within(
                &format!("seed {seed}, dim {dim}: {}", check.name),
                check.residual,
                1e-9,
            )?);
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("runtime {elapsed:?} >= 30 s")
    })?;
    Ok(format!("50 generators, max residual {worst:.2e}, {elapsed:.2?}"))
}

/// Literal rank-one construction at dimension 4 with its own inverse
/// (adjugate) and square root (Denman–Beavers).
mod oracle {
    use num_complex::Complex64;

    pub type M = [[Complex64; 4]; 4];
    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    pub fn identity() -> M {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn mul(a: &M, b: &M) -> M {
        let mut m = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    m[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        m
    }

    fn det3(m: [[Complex64; 3]; 3]) -> Complex64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    fn minor(a: &M, r: usize, c: usize) -> Complex64 {
        let mut m = [[ZERO; 3]; 3];
        for (ii, i) in (0..4).filter(|&i| i != r).enumerate() {
            for (jj, j) in (0..4).filter(|&j| j != c).enumerate() {
                m[ii][jj] = a[i][j];
            }
        }
        det3(m)
    }

    /// Inverse from the adjugate.
    pub fn inverse(a: &M) -> M {
        let det: Complex64 = (0..4)
            .map(|j| a[0][j] * minor(a, 0, j) * if j % 2 == 0 { 1.0 } else { -1.0 })
            .sum();
        let mut m = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                m[i][j] = minor(a, j, i) * sign / det;
            }
        }
        m
    }

    /// Denman–Beavers iteration for the principal square root.
    pub fn sqrt(a: &M) -> M {
        let (mut y, mut z) = (*a, identity());
        for _ in 0..60 {
            let (yi, zi) = (inverse(&y), inverse(&z));
            for i in 0..4 {
                for j in 0..4 {
                    let ny = (y[i][j] + zi[i][j]) * 0.5;
                    z[i][j] = (z[i][j] + yi[i][j]) * 0.5;
                    y[i][j] = ny;
                }
            }
        }
        y
    }

    /// `Σ_n w_n v_n w̄ᵀ_n` entry by entry: `(v ⊗ w̄)_{ij} = v_i conj(w_j)`.
    pub fn rank_one_sum(weights: &[Complex64], left: &[[Complex64; 4]], right: &[[Complex64; 4]]) -> M {
        let mut m = [[ZERO; 4]; 4];
        for (n, w) in weights.iter().enumerate() {
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] += w * left[n][i] * right[n][j].conj();
                }
            }
        }
        m
    }
}

fn criterion_6() -> Outcome {
    use oracle::M;
    let t_lib = random::random_generator(4, 2024);
    let mut t: M = [[c(0.0, 0.0); 4]; 4];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = t_lib[(i, j)];
        }
    }
    let t_inv = oracle::inverse(&t);
    let phi: Vec<[Complex64; 4]> = (0..4).map(|n| std::array::from_fn(|i| t[i][n])).collect();
    let psi: Vec<[Complex64; 4]> = (0..4).map(|n| std::array::from_fn(|i| t_inv[n][i].conj())).collect();
    let alpha = [c(0.0, 0.0), c(1.0, 0.5), c(-2.0, 1.0), c(3.5, 0.0)];
    let beta = [c(1.0, 0.0), c(0.5, -1.0), c(2.0, 0.0), c(-1.5, 0.25)];
    let gamma = [c(0.0, 0.0), c(1.0, 0.0), c(1.2, 0.7), c(2.0, -1.0)];
    let ones = [c(1.0, 0.0); 4];
    let shift = |v: &[[Complex64; 4]], d: isize| -> Vec<[Complex64; 4]> {
        (0..4)
            .map(|n| {
                let k = n as isize + d;
                if (0..4).contains(&k) {
                    v[k as usize]
                } else {
                    [c(0.0, 0.0); 4]
                }
            })
            .collect()
    };
    let h_pp = oracle::rank_one_sum(&alpha, &phi, &psi);
    let h_qp = oracle::rank_one_sum(&alpha, &psi, &phi);
    let s_phi = oracle::rank_one_sum(&ones, &phi, &phi);
    let s_psi = oracle::rank_one_sum(&ones, &psi, &psi);
    let sp_sqrt = oracle::sqrt(&s_phi);
    let sq_sqrt = oracle::sqrt(&s_psi);
    let h = oracle::mul(&oracle::mul(&sq_sqrt, &h_pp), &sp_sqrt);
    // A = Σ_{n≥1} γ_n φ_{n-1} ψ̄_n, B = Σ_{n≥0} γ_{n+1} φ_{n+1} ψ̄_n
    let a_pp = oracle::rank_one_sum(&gamma, &shift(&phi, -1), &psi);
    let a_qp = oracle::rank_one_sum(&gamma, &shift(&psi, -1), &phi);
    let g_next: Vec<Complex64> = (0..4)
        .map(|n| if n + 1 < 4 { gamma[n + 1] } else { c(0.0, 0.0) })
        .collect();
    let b_pp = oracle::rank_one_sum(&g_next, &shift(&phi, 1), &psi);
    let b_qp = oracle::rank_one_sum(&g_next, &shift(&psi, 1), &phi);
    let sb_phi = oracle::rank_one_sum(&beta, &phi, &phi);
    let sb_psi = oracle::rank_one_sum(&beta, &psi, &psi);

    let pair = RieszBasisPair::from_generator(t_lib, 1e-12).map_err(|e| e.to_string())?;
    let alpha_spec = SequenceSpec::explicit(alpha.to_vec());
    let beta_spec = SequenceSpec::explicit(beta.to_vec());
    let bundle = OperatorBundle::new(pair.clone(), alpha_spec, 1e-12).map_err(|e| e.to_string())?;
    let lp = ladder::build_ladder(&pair, &SequenceSpec::explicit(gamma.to_vec())).map_err(|e| e.to_string())?;
    let weighted = |side| riesz_core::operators::build_s_weighted(&pair, &beta_spec, side).unwrap();
    let diff = |lib: &ComplexMatrix, o: &M| -> f64 {
        let mut w = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                w = w.max((lib[(i, j)] - o[i][j]).norm());
            }
        }
        w
    };
    let mut worst = 0.0f64;
    let mut vectors = 0.0f64;
    for n in 0..4 {
        vectors = vectors
            .max(max_abs_diff_vec(&pair.phi()[n], &phi[n]))
            .max(max_abs_diff_vec(&pair.psi()[n], &psi[n]));
    }
    for (name, r) in [
        ("phi/psi", vectors),
        ("T^-1", diff(pair.generator_inverse(), &t_inv)),
        ("H_phi_psi", diff(bundle.h_phi_psi(), &h_pp)),
        ("H_psi_phi", diff(bundle.h_psi_phi(), &h_qp)),
        ("S_phi", diff(bundle.s_phi(), &s_phi)),
        ("S_psi", diff(bundle.s_psi(), &s_psi)),
        ("S_phi^1/2", diff(bundle.s_phi_sqrt(), &sp_sqrt)),
        ("S_psi^1/2", diff(bundle.s_psi_sqrt(), &sq_sqrt)),
        ("h", diff(bundle.similar(), &h)),
        ("S^beta_phi", diff(&weighted(Side::Phi), &sb_phi)),
        ("S^beta_psi", diff(&weighted(Side::Psi), &sb_psi)),
        ("A_phi_psi", diff(&lp.a_phi_psi, &a_pp)),
        ("A_psi_phi", diff(&lp.a_psi_phi, &a_qp)),
        ("B_phi_psi", diff(&lp.b_phi_psi, &b_pp)),
        ("B_psi_phi", diff(&lp.b_psi_phi, &b_qp)),
    ] {
        worst = worst.max(within(name, r, 1e-12)?);
    }
    Ok(format!("15 operators, max entrywise difference {worst:.2e}"))
}

/// Random weight family: power, affine or geometric growth.
fn random_weight(rng: &mut impl Rng) -> SequenceSpec {
    let scale = c(rng.random_range(0.2..3.0), 0.0);
    match rng.random_range(0..3) {
        0 => SequenceSpec::power(rng.random_range(0.0..3.0)),
        1 => SequenceSpec::affine(rng.random_range(0.1..3.0), rng.random_range(0.0..2.0)),
        _ => SequenceSpec::geometric(rng.random_range(1.0..1.003)),
    }
    .with_scale(scale)
}

fn random_coeff(rng: &mut impl Rng) -> SequenceSpec {
    if rng.random_bool(0.5) {
        SequenceSpec::power(rng.random_range(-4.0..-0.5))
    } else {
        SequenceSpec::geometric(rng.random_range(0.3..0.999))
    }
}

fn dominated(small: &SequenceSpec, big: &SequenceSpec, n_max: usize) -> bool {
    (0..n_max).all(|n| small.weight(n).unwrap() <= big.weight(n).unwrap())
}

fn criterion_7() -> Outcome {
    let n = domain::DEFAULT_N_MAX;
    let verdict = |w: &str, cf: &str| {
        domain::summability_verdict(
            &w.parse::<SequenceSpec>().unwrap(),
            &cf.parse::<SequenceSpec>().unwrap(),
            n,
        )
        .unwrap()
        .verdict
    };
    ensure(verdict("poly:1", "geometric:0.5") == Verdict::Converged, || {
        "geometric coefficients".into()
    })?;
    ensure(verdict("poly:1", "harmonic") == Verdict::Diverged, || {
        "harmonic with linear weights".into()
    })?;
    ensure(verdict("poly:0", "harmonic") == Verdict::Converged, || {
        "unit weights, square-summable".into()
    })?;

    let mut rng = random::rng(77);
    let (mut pairs, mut draws, mut converged_pairs) = (0, 0, 0);
    while pairs < 20 {
        draws += 1;
        ensure(draws < 10_000, || "could not draw 20 dominated pairs".into())?;
        let big = random_weight(&mut rng);
        let small = if rng.random_bool(0.5) {
            big.clone().with_scale(big.scale() * rng.random_range(0.05..1.0))
        } else {
            random_weight(&mut rng)
        };
        if !dominated(&small, &big, 2 * n) {
            continue;
        }
        pairs += 1;
        let coeff = random_coeff(&mut rng);
        for n_max in [n, 2 * n] {
            let vb = domain::summability_verdict(&big, &coeff, n_max).unwrap().verdict;
            let vs = domain::summability_verdict(&small, &coeff, n_max).unwrap().verdict;
            if vb == Verdict::Converged {
                converged_pairs += 1;
                ensure(vs == Verdict::Converged, || {
                    format!("|{small}| <= |{big}| on {coeff}: {vs:?} vs {vb:?}")
                })?;
            }
        }
        for w in [&big, &small] {
            let v1 = domain::summability_verdict(w, &coeff, n).unwrap().verdict;
            let v2 = domain::summability_verdict(w, &coeff, 2 * n).unwrap().verdict;
            let flip = matches!(
                (v1, v2),
                (Verdict::Converged, Verdict::Diverged) | (Verdict::Diverged, Verdict::Converged)
            );
            ensure(!flip, || format!("{w} on {coeff}: {v1:?} at {n}, {v2:?} at {}", 2 * n))?;
        }
    }

    let gamma: SequenceSpec = "sqrt-poly:1".parse().unwrap();
    let (domain::DomainPredicate::Single(ab), domain::DomainPredicate::Single(ba)) = (
        domain::domain_of(OperatorKind::AB, &gamma),
        domain::domain_of(OperatorKind::BA, &gamma),
    ) else {
        return Err("monotone gamma should give single-weight product domains".into());
    };
    let inclusion = domain::domain_inclusion(&ab, &ba, n).map_err(|e| e.to_string())?;
    ensure(inclusion.established, || {
        format!("D(AB) in D(BA) not established: {inclusion:?}")
    })?;
    Ok(format!(
        "verdict table ok; 20 dominated pairs ({converged_pairs} converged cases, {draws} draws); D(AB) in D(BA) with C = {:.3}",
        inclusion.constant
    ))
}

fn criterion_8() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_riesz"))
            .args(["verify", "random", "--dim", "16", "--seed", "42"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || {
        format!(
            "exit status {:?}, {:?}: {}",
            a.status,
            b.status,
            String::from_utf8_lossy(&a.stderr)
        )
    })?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "reports differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("closed-form reproduction of the three-level model", criterion_1),
        ("norm constancy of T(t) and its inverse", criterion_2),
        ("three-level ladder actions and factorization", criterion_3),
        ("rank-one projection closed forms", criterion_4),
        ("property suite on 50 random generators", criterion_5),
        ("literal rank-one oracle at dimension 4", criterion_6),
        ("domain diagnostics", criterion_7),
        ("deterministic reports", criterion_8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
