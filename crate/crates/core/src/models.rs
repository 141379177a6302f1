//! Closed-form models used as ground truth for the generic pipeline.
//!
//! [`ThreeLevelModel`] is a one-parameter 3×3 family with
//! `T(t) = [[1, s, c], [0, -2c, 2s], [1, 6s, 6c]]`, `s = sin(t/2)`,
//! `c = cos(t/2)`, and eigenvalues `(0, 2cos t − 1, 2cos t + 1)`.
//!
//! [`ProjectionModel`] perturbs the identity by a rank-one projection,
//! `T = I + iP` with `P = u ⊗ ū`.

use std::f64::consts::{PI, SQRT_2, TAU};

use num_complex::Complex64;

use crate::domain::{self, DomainPredicate, OperatorKind};
use crate::error::{Error, Result};
use crate::ladder::LadderPair;
use crate::linalg::{self, max_abs_diff_vec, ComplexMatrix};
use crate::operators::OperatorBundle;
use crate::report::Check;
use crate::riesz::RieszBasisPair;
use crate::sequence::SequenceSpec;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn real_matrix(rows: [[f64; 3]; 3]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&rows).expect("3x3 rows")
}

fn complex_matrix(rows: [[Complex64; 3]; 3]) -> ComplexMatrix {
    ComplexMatrix::from_rows(&rows).expect("3x3 rows")
}

fn real_vec(v: [f64; 3]) -> Vec<Complex64> {
    v.iter().map(|&x| re(x)).collect()
}

fn scaled(v: &[Complex64], z: Complex64) -> Vec<Complex64> {
    v.iter().map(|x| x * z).collect()
}

/// Whether `t` lies in `[0, π/3) ∪ (5π/3, 2π)`, where `ε_0 < ε_1 < ε_2`.
///
/// At `t = 5π/3` itself `ε_1 = ε_0 = 0`, so that endpoint is excluded.
pub fn is_admissible(t: f64) -> bool {
    (0.0..PI / 3.0).contains(&t) || (t > 5.0 * PI / 3.0 && t < TAU)
}

/// `‖T(t)‖`, independent of `t`.
pub fn three_level_generator_norm() -> f64 {
    ((39.0 + 7.0 * 29f64.sqrt()) / 2.0).sqrt()
}

#[derive(Clone, Debug)]
pub struct ThreeLevelModel {
    pub t: f64,
    pub admissible: bool,
    /// `(0, 2cos t − 1, 2cos t + 1)`.
    pub eps: [f64; 3],
    pub h: ComplexMatrix,
    pub generator: ComplexMatrix,
    pub s_phi: ComplexMatrix,
    pub s_psi: ComplexMatrix,
    pub s_phi_sqrt: ComplexMatrix,
    pub s_psi_sqrt: ComplexMatrix,
    /// `S_ψ^{1/2} H S_φ^{1/2}`.
    pub similar: ComplexMatrix,
    /// Lowering operator `A_{φψ}` with `γ = (0, √ε_1, √ε_2)`.
    pub lowering: ComplexMatrix,
    /// Raising operator `B_{φψ}`.
    pub raising: ComplexMatrix,
    /// `S_ψ^{1/2} A S_φ^{1/2}`.
    pub lowering_similar: ComplexMatrix,
    pub phi: [Vec<Complex64>; 3],
    pub psi: [Vec<Complex64>; 3],
    /// `Φ_n = S_ψ^{1/2} φ_n`, the eigenvectors of `h`.
    pub transported: [Vec<Complex64>; 3],
}

/// Builds every closed form at parameter `t ∈ [0, 2π)`.
///
/// Inadmissible `t` is accepted and flagged; the ladder closed forms then use
/// the principal complex square root of `ε_1 < 0`.
pub fn three_level(t: f64) -> Result<ThreeLevelModel> {
    if !(0.0..TAU).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} is outside [0, 2pi)")));
    }
    let (s, c) = (t / 2.0).sin_cos();
    let (sin, cos) = t.sin_cos();
    let eps = [0.0, 2.0 * cos - 1.0, 2.0 * cos + 1.0];

    let h = real_matrix([
        [-3.0 * cos / 5.0, sin / 2.0, 3.0 * cos / 5.0],
        [-2.0 * sin / 5.0, cos, 2.0 * sin / 5.0],
        [-18.0 * cos / 5.0, 3.0 * sin, 18.0 * cos / 5.0],
    ]);
    let generator = real_matrix([[1.0, s, c], [0.0, -2.0 * c, 2.0 * s], [1.0, 6.0 * s, 6.0 * c]]);
    let s_phi = real_matrix([[2.0, 0.0, 7.0], [0.0, 4.0, 0.0], [7.0, 0.0, 37.0]]);
    let s_psi = real_matrix([
        [37.0 / 25.0, 0.0, -7.0 / 25.0],
        [0.0, 0.25, 0.0],
        [-7.0 / 25.0, 0.0, 2.0 / 25.0],
    ]);
    let s_phi_sqrt = real_matrix([[1.0, 0.0, 1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 6.0]]);
    let s_psi_sqrt = real_matrix([
        [6.0 / 5.0, 0.0, -1.0 / 5.0],
        [0.0, 0.5, 0.0],
        [-1.0 / 5.0, 0.0, 1.0 / 5.0],
    ]);
    let similar = real_matrix([[0.0, 0.0, 0.0], [0.0, cos, sin], [0.0, sin, 3.0 * cos]]);

    let e1 = re(eps[1]).sqrt();
    let e2 = re(eps[2]).sqrt();
    let (s, c, sin, cos) = (re(s), re(c), re(sin), re(cos));
    let one = re(1.0);
    let lowering = complex_matrix([
        [
            -(e1 + c * e2) * s / 5.0,
            (-c * e1 + e2 * s * s) / 2.0,
            (2.0 * e1 * s + e2 * sin) / 10.0,
        ],
        [(one + cos) * e2 / 5.0, -e2 * sin / 2.0, -(one + cos) * e2 / 5.0],
        [
            (-e1 * s - 3.0 * e2 * sin) / 5.0,
            -c * e1 / 2.0 + 3.0 * e2 * s * s,
            (e1 * s + 3.0 * e2 * sin) / 5.0,
        ],
    ]);
    let raising = complex_matrix([
        [
            6.0 / 5.0 * e1 * s - e2 * sin / 10.0,
            -(one + cos) * e2 / 4.0,
            (-2.0 * e1 * s + e2 * sin) / 10.0,
        ],
        [
            -0.4 * (6.0 * c * e1 + e2 * s * s),
            -e2 * sin / 2.0,
            0.4 * (c * e1 + e2 * s * s),
        ],
        [
            0.6 * (12.0 * e1 * s - e2 * sin),
            -1.5 * (one + cos) * e2,
            0.6 * (-2.0 * e1 * s + e2 * sin),
        ],
    ]);
    let zero = re(0.0);
    let lowering_similar = complex_matrix([
        [zero, -c * e1, e1 * s],
        [zero, -e2 * sin / 2.0, -(one + cos) * e2 / 2.0],
        [zero, e2 * s * s, e2 * sin / 2.0],
    ]);

    let (s, c) = (s.re, c.re);
    let phi = [
        real_vec([1.0, 0.0, 1.0]),
        real_vec([s, -2.0 * c, 6.0 * s]),
        real_vec([c, 2.0 * s, 6.0 * c]),
    ];
    let psi = [
        real_vec([6.0 / 5.0, 0.0, -1.0 / 5.0]),
        real_vec([-s / 5.0, -c / 2.0, s / 5.0]),
        real_vec([-c / 5.0, s / 2.0, c / 5.0]),
    ];
    let transported = [real_vec([1.0, 0.0, 0.0]), real_vec([0.0, -c, s]), real_vec([0.0, s, c])];

    Ok(ThreeLevelModel {
        t,
        admissible: is_admissible(t),
        eps,
        h,
        generator,
        s_phi,
        s_psi,
        s_phi_sqrt,
        s_psi_sqrt,
        similar,
        lowering,
        raising,
        lowering_similar,
        phi,
        psi,
        transported,
    })
}

impl ThreeLevelModel {
    pub fn alpha(&self) -> SequenceSpec {
        SequenceSpec::from_real(&self.eps)
    }

    /// `γ_n = √ε_n`, principal branch.
    pub fn gamma(&self) -> SequenceSpec {
        SequenceSpec::explicit(self.eps.iter().map(|&e| re(e).sqrt()).collect())
    }

    /// Eigenvalues of `AB`: `(ε_1, ε_2, 0)`.
    pub fn eps_tilde(&self) -> [f64; 3] {
        [self.eps[1], self.eps[2], 0.0]
    }

    /// Generic pipeline applied to `T(t)`.
    pub fn generic_bundle(&self, tol: f64) -> Result<OperatorBundle> {
        let pair = RieszBasisPair::from_generator(self.generator.clone(), tol)?;
        OperatorBundle::new(pair, self.alpha(), tol)
    }
}

/// Entrywise agreement of the generic pipeline with the closed forms, plus
/// `H φ_n = ε_n φ_n` for the closed-form `φ_n`.
pub fn check_three_level_closed_forms(model: &ThreeLevelModel, bundle: &OperatorBundle, tol: f64) -> Check {
    let matrices = [
        ("H", bundle.h_phi_psi().max_abs_diff(&model.h)),
        ("S_phi", bundle.s_phi().max_abs_diff(&model.s_phi)),
        ("S_psi", bundle.s_psi().max_abs_diff(&model.s_psi)),
        ("S_phi^1/2", bundle.s_phi_sqrt().max_abs_diff(&model.s_phi_sqrt)),
        ("S_psi^1/2", bundle.s_psi_sqrt().max_abs_diff(&model.s_psi_sqrt)),
        ("h", bundle.similar().max_abs_diff(&model.similar)),
    ];
    let pair = bundle.pair();
    let mut vectors = 0.0f64;
    for k in 0..3 {
        vectors = vectors
            .max(max_abs_diff_vec(&pair.phi()[k], &model.phi[k]))
            .max(max_abs_diff_vec(&pair.psi()[k], &model.psi[k]));
    }
    let mut eigen = 0.0f64;
    for (k, v) in model.phi.iter().enumerate() {
        eigen = eigen.max(max_abs_diff_vec(&model.h.mul_vec(v), &scaled(v, re(model.eps[k]))));
    }
    let worst = matrices.iter().map(|(_, r)| *r).fold(vectors.max(eigen), f64::max);
    let detail: Vec<String> = matrices.iter().map(|(n, r)| format!("{n} {r:.3e}")).collect();
    Check::residual(
        "three_level.closed_forms",
        worst,
        tol,
        format!(
            "{}; phi/psi {vectors:.3e}; H phi_n = eps_n phi_n {eigen:.3e}",
            detail.join(", ")
        ),
    )
}

/// `‖T‖ = √((39 + 7√29)/2)` and `‖T⁻¹‖ = ‖T‖/5`.
pub fn check_three_level_norms(model: &ThreeLevelModel, tol: f64) -> Result<Check> {
    let expected = three_level_generator_norm();
    let norm_t = linalg::operator_norm(&model.generator)?;
    let norm_inv = linalg::operator_norm(&linalg::inverse(&model.generator, tol)?)?;
    let a = (norm_t - expected).abs();
    let b = (norm_inv - expected / 5.0).abs();
    Ok(Check::residual(
        "three_level.norms",
        a.max(b),
        tol,
        format!("|T| = {norm_t:.12}, |T^-1| = {norm_inv:.12}"),
    ))
}

/// The positive root `S_φ^{1/2}` differs from `T` itself.
pub fn check_sqrt_is_not_generator(model: &ThreeLevelModel) -> Check {
    let gap = model.s_phi_sqrt.max_abs_diff(&model.generator);
    Check::flag(
        "three_level.sqrt_not_generator",
        gap > 0.1,
        format!("max |S_phi^1/2 - T| = {gap:.3e}"),
    )
}

pub fn check_admissible(model: &ThreeLevelModel) -> Check {
    Check::flag(
        "three_level.admissible",
        model.admissible,
        format!("t = {} in [0, pi/3) u (5pi/3, 2pi)", model.t),
    )
}

/// `ε_0 < ε_1 < ε_2` with gaps larger than `tol`.
pub fn check_ordering(model: &ThreeLevelModel, tol: f64) -> Check {
    let [e0, e1, e2] = model.eps;
    let gap = (e1 - e0).min(e2 - e1);
    Check::flag(
        "three_level.ordering",
        gap > tol,
        format!("eps = ({e0}, {e1}, {e2}), smallest gap {gap:.3e}"),
    )
}

/// Generic ladder operators against the closed-form `A`, `B` and
/// `S_ψ^{1/2} A S_φ^{1/2}`.
pub fn check_ladder_closed_forms(model: &ThreeLevelModel, lp: &LadderPair, bundle: &OperatorBundle, tol: f64) -> Check {
    let a = lp.a_phi_psi.max_abs_diff(&model.lowering);
    let b = lp.b_phi_psi.max_abs_diff(&model.raising);
    let sim = (&(bundle.s_psi_sqrt() * &lp.a_phi_psi) * bundle.s_phi_sqrt()).max_abs_diff(&model.lowering_similar);
    Check::residual(
        "three_level.ladder_closed_forms",
        a.max(b).max(sim),
        tol,
        format!("A {a:.3e}, B {b:.3e}, S_psi^1/2 A S_phi^1/2 {sim:.3e}"),
    )
}

/// Actions of `A`, `B`, `A*`, `B*` on the closed-form vectors, and `H = BA`.
pub fn check_ladder_actions(model: &ThreeLevelModel, lp: &LadderPair, tol: f64) -> Check {
    let g = lp.gamma_terms();
    let zero = vec![re(0.0); 3];
    let (phi, psi) = (&model.phi, &model.psi);
    let (a, b) = (&lp.a_phi_psi, &lp.b_phi_psi);
    let (a_adj, b_adj) = (a.adjoint(), b.adjoint());
    let cases = [
        (a.mul_vec(&phi[0]), zero.clone()),
        (a.mul_vec(&phi[1]), scaled(&phi[0], g[1])),
        (a.mul_vec(&phi[2]), scaled(&phi[1], g[2])),
        (b.mul_vec(&phi[0]), scaled(&phi[1], g[1])),
        (b.mul_vec(&phi[1]), scaled(&phi[2], g[2])),
        (b.mul_vec(&phi[2]), zero.clone()),
        (b_adj.mul_vec(&psi[0]), zero.clone()),
        (b_adj.mul_vec(&psi[1]), scaled(&psi[0], g[1].conj())),
        (b_adj.mul_vec(&psi[2]), scaled(&psi[1], g[2].conj())),
        (a_adj.mul_vec(&psi[0]), scaled(&psi[1], g[1].conj())),
        (a_adj.mul_vec(&psi[1]), scaled(&psi[2], g[2].conj())),
        (a_adj.mul_vec(&psi[2]), zero),
    ];
    let actions = cases.iter().map(|(l, r)| max_abs_diff_vec(l, r)).fold(0.0, f64::max);
    let product = (b * a).max_abs_diff(&model.h);
    Check::residual(
        "three_level.ladder_actions",
        actions.max(product),
        tol,
        format!("A, B, A*, B* actions {actions:.3e}; BA - H {product:.3e}"),
    )
}

/// `Ĥ = AB`: `Ĥ φ_n = ε̃_n φ_n`, `Ĥ* ψ_n = ε̃_n ψ_n`, and
/// `tr(AB) = tr(BA) = ε_1 + ε_2`. Requires admissible `t`.
pub fn three_level_hat_spectrum(model: &ThreeLevelModel, lp: &LadderPair, tol: f64) -> Result<Check> {
    if !model.admissible {
        return Err(Error::InvalidParameter(format!(
            "t = {} is not admissible; the relabeled spectrum is undefined",
            model.t
        )));
    }
    let hat = &lp.a_phi_psi * &lp.b_phi_psi;
    let hat_adj = hat.adjoint();
    let tilde = model.eps_tilde();
    let mut actions = 0.0f64;
    for k in 0..3 {
        let e = re(tilde[k]);
        actions = actions
            .max(max_abs_diff_vec(&hat.mul_vec(&model.phi[k]), &scaled(&model.phi[k], e)))
            .max(max_abs_diff_vec(
                &hat_adj.mul_vec(&model.psi[k]),
                &scaled(&model.psi[k], e),
            ));
    }
    let expected = re(model.eps[1] + model.eps[2]);
    let ba = &lp.b_phi_psi * &lp.a_phi_psi;
    let trace = (hat.trace() - expected).norm().max((ba.trace() - expected).norm());
    Ok(Check::residual(
        "three_level.hat_spectrum",
        actions.max(trace),
        tol,
        format!(
            "eps_tilde = ({}, {}, {}); actions {actions:.3e}; trace {trace:.3e}",
            tilde[0], tilde[1], tilde[2]
        ),
    ))
}

/// `T = I + iP`, `P = u ⊗ ū`, with `u` normalized and at least two nonzero
/// coefficients.
#[derive(Clone, Debug)]
pub struct ProjectionModel {
    pub dim: usize,
    pub u: Vec<Complex64>,
    /// Indices with nonzero coefficient in `u`.
    pub support: Vec<usize>,
    pub projection: ComplexMatrix,
    pub generator: ComplexMatrix,
    pub generator_inverse: ComplexMatrix,
    pub s_phi: ComplexMatrix,
    pub s_phi_sqrt: ComplexMatrix,
    pub s_psi_sqrt: ComplexMatrix,
    pub alpha: SequenceSpec,
}

/// Builds the closed forms for `T = I + iP`.
///
/// `alpha` must be real over the truncation.
pub fn projection_model(dim: usize, u: Vec<Complex64>, alpha: SequenceSpec, tol: f64) -> Result<ProjectionModel> {
    if u.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: u.len(),
        });
    }
    let n = linalg::norm(&u);
    if (n - 1.0).abs() > tol {
        return Err(Error::InvalidModel(format!("u has norm {n}, expected 1")));
    }
    let support: Vec<usize> = (0..dim).filter(|&k| u[k].norm() > tol).collect();
    if support.len() < 2 {
        return Err(Error::InvalidModel(format!(
            "u needs at least two nonzero coefficients, found {}",
            support.len()
        )));
    }
    if !alpha.check_real(dim) {
        return Err(Error::NotReal);
    }
    let p = ComplexMatrix::outer(&u, &u);
    let id = ComplexMatrix::identity(dim);
    let with = |z: Complex64| &id + &p.scale(z);
    Ok(ProjectionModel {
        dim,
        support,
        generator: with(I),
        generator_inverse: with(-(I + 1.0) / 2.0),
        s_phi: with(re(1.0)),
        s_phi_sqrt: with(re(SQRT_2 - 1.0)),
        s_psi_sqrt: with(re(-(2.0 - SQRT_2) / 2.0)),
        projection: p,
        u,
        alpha,
    })
}

impl ProjectionModel {
    /// `φ_n = e_n + i c̄_n u`, with `c_n = u_n`.
    pub fn phi(&self, n: usize) -> Vec<Complex64> {
        self.perturbed_basis(n, I)
    }

    /// `ψ_n = e_n + ((i − 1)/2) c̄_n u`.
    pub fn psi(&self, n: usize) -> Vec<Complex64> {
        self.perturbed_basis(n, (I - 1.0) / 2.0)
    }

    fn perturbed_basis(&self, n: usize, z: Complex64) -> Vec<Complex64> {
        let mut v = scaled(&self.u, z * self.u[n].conj());
        v[n] += 1.0;
        v
    }

    /// `Σ_{k∈supp} α_k φ_k ⊗ ψ̄_k + Σ_{k∉supp} α_k e_k ⊗ ē_k`.
    pub fn h_split(&self) -> Result<ComplexMatrix> {
        let alpha = self.alpha.take(self.dim)?;
        let mut h = ComplexMatrix::zeros(self.dim);
        for (k, a) in alpha.iter().enumerate() {
            if self.support.contains(&k) {
                h.add_outer(*a, &self.phi(k), &self.psi(k));
            } else {
                h[(k, k)] += a;
            }
        }
        Ok(h)
    }

    pub fn generic_bundle(&self, tol: f64) -> Result<OperatorBundle> {
        let pair = RieszBasisPair::from_generator(self.generator.clone(), tol)?;
        OperatorBundle::new(pair, self.alpha.clone(), tol)
    }

    /// Domain predicate of `h = S_ψ^{1/2} H S_φ^{1/2}`.
    ///
    /// `S_ψ^{1/2}` differs from the identity only on the finite support of
    /// `u`, so `D(h) = D(H)`, i.e. the weights `|α_n|`. For general
    /// generators `D(h)` is not a diagonal predicate and is not exposed.
    pub fn h_domain(&self) -> DomainPredicate {
        domain::domain_of(OperatorKind::H, &self.alpha)
    }
}

/// Projection identities, closed forms against the generic pipeline, case
/// formulas for `φ_n`, `ψ_n`, and the split of `H`.
pub fn check_projection_closed_forms(model: &ProjectionModel, bundle: &OperatorBundle, tol: f64) -> Result<Check> {
    let p = &model.projection;
    let idempotent = (p * p).max_abs_diff(p).max(p.hermitian_defect());
    let matrices = [
        ("T", bundle.pair().generator().max_abs_diff(&model.generator)),
        (
            "T^-1",
            bundle.pair().generator_inverse().max_abs_diff(&model.generator_inverse),
        ),
        ("S_phi", bundle.s_phi().max_abs_diff(&model.s_phi)),
        ("S_phi^1/2", bundle.s_phi_sqrt().max_abs_diff(&model.s_phi_sqrt)),
        ("S_psi^1/2", bundle.s_psi_sqrt().max_abs_diff(&model.s_psi_sqrt)),
        ("H split", bundle.h_phi_psi().max_abs_diff(&model.h_split()?)),
    ];
    let mut vectors = 0.0f64;
    for k in 0..model.dim {
        vectors = vectors
            .max(max_abs_diff_vec(&bundle.pair().phi()[k], &model.phi(k)))
            .max(max_abs_diff_vec(&bundle.pair().psi()[k], &model.psi(k)));
    }
    let worst = matrices.iter().map(|(_, r)| *r).fold(idempotent.max(vectors), f64::max);
    let detail: Vec<String> = matrices.iter().map(|(n, r)| format!("{n} {r:.3e}")).collect();
    Ok(Check::residual(
        "projection.closed_forms",
        worst,
        tol,
        format!(
            "P^2 = P = P* {idempotent:.3e}; {}; phi/psi {vectors:.3e}",
            detail.join(", ")
        ),
    ))
}

/// `h` is Hermitian, acts as `α_k` on `e_k` outside the support, and its
/// support block has orthonormal eigenvectors `Φ_k = S_ψ^{1/2} φ_k` with
/// eigenvalues `α_k`.
pub fn check_projection_block_structure(model: &ProjectionModel, bundle: &OperatorBundle, tol: f64) -> Result<Check> {
    let h = bundle.similar();
    let alpha = model.alpha.take(model.dim)?;
    let hermitian = h.max_abs_diff(&h.adjoint());
    let mut outside = 0.0f64;
    for k in (0..model.dim).filter(|k| !model.support.contains(k)) {
        let e = linalg::basis_vector(model.dim, k);
        outside = outside.max(max_abs_diff_vec(&h.mul_vec(&e), &scaled(&e, alpha[k])));
    }
    let block: Vec<Vec<Complex64>> = model
        .support
        .iter()
        .map(|&k| bundle.s_psi_sqrt().mul_vec(&bundle.pair().phi()[k]))
        .collect();
    let mut inside = 0.0f64;
    let mut leak = 0.0f64;
    for (v, &k) in block.iter().zip(&model.support) {
        inside = inside.max(max_abs_diff_vec(&h.mul_vec(v), &scaled(v, alpha[k])));
        for (j, x) in v.iter().enumerate() {
            if !model.support.contains(&j) {
                leak = leak.max(x.norm());
            }
        }
    }
    let mut ortho = 0.0f64;
    for (a, f) in block.iter().enumerate() {
        for (b, g) in block.iter().enumerate() {
            let delta = if a == b { 1.0 } else { 0.0 };
            ortho = ortho.max((linalg::inner(f, g) - delta).norm());
        }
    }
    Ok(Check::residual(
        "projection.block_structure",
        hermitian.max(outside).max(inside).max(leak).max(ortho),
        tol,
        format!(
            "h - h* {hermitian:.3e}; outside support {outside:.3e}; support block eigen {inside:.3e}, leak {leak:.3e}, orthonormality {ortho:.3e}"
        ),
    ))
}
