//! Similarity transform to self-adjoint form and the metric inner product.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, inner, max_abs_diff_vec, ComplexMatrix};
use crate::operators::{self, Direction, OperatorBundle};
use crate::report::Check;

/// Inner product `⟨f, g⟩_S = ⟨S f, g⟩` for a positive-definite metric `S`.
#[derive(Clone, Debug)]
pub struct SInnerProduct {
    metric: ComplexMatrix,
    tol: f64,
}

impl SInnerProduct {
    /// Rejects metrics that are not Hermitian or not positive definite.
    pub fn new(metric: ComplexMatrix, tol: f64) -> Result<Self> {
        let eig = linalg::hermitian_eig(&metric, tol)?;
        let lowest = eig.eigenvalues[0];
        if lowest <= tol * metric.frobenius_norm() {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: lowest });
        }
        Ok(Self { metric, tol })
    }

    pub fn metric(&self) -> &ComplexMatrix {
        &self.metric
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn inner(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        inner(&self.metric.mul_vec(f), g)
    }

    pub fn norm(&self, f: &[Complex64]) -> f64 {
        self.inner(f, f).re.max(0.0).sqrt()
    }
}

/// `h_{φψ} = S_ψ^{1/2} H_{φψ} S_φ^{1/2}` or `h_{ψφ} = S_φ^{1/2} H_{ψφ} S_ψ^{1/2}`.
pub fn build_h(bundle: &OperatorBundle, direction: Direction) -> ComplexMatrix {
    match direction {
        Direction::PhiPsi => bundle.similar().clone(),
        Direction::PsiPhi => &(bundle.s_phi_sqrt() * bundle.h_psi_phi()) * bundle.s_psi_sqrt(),
    }
}

/// For real `α`: `h = h*`. Always: `(h^α_{φψ})* = h^ᾱ_{ψφ}`.
pub fn check_selfadjoint_h(bundle: &OperatorBundle, tol: f64) -> Result<Check> {
    let h = bundle.similar();
    let conj = bundle.alpha().conj();
    let h_bar_psi_phi = operators::build_h(bundle.pair(), &conj, Direction::PsiPhi)?;
    let partner = &(bundle.s_phi_sqrt() * &h_bar_psi_phi) * bundle.s_psi_sqrt();
    let relation = h.adjoint().max_abs_diff(&partner);
    if bundle.alpha().is_real() {
        let selfadj = h.max_abs_diff(&h.adjoint());
        Ok(Check::residual(
            "similarity.self_adjoint",
            selfadj.max(relation),
            tol,
            format!("h - h*: {selfadj:.3e}; h* - h'(conj alpha): {relation:.3e}"),
        ))
    } else {
        Ok(Check::residual(
            "similarity.adjoint_relation",
            relation,
            tol,
            "complex alpha: (h_phi_psi)* = h_psi_phi with conjugate weights",
        ))
    }
}

/// `Φ_n = S_ψ^{1/2} φ_n`.
pub fn transported_eigenbasis(bundle: &OperatorBundle) -> Vec<Vec<Complex64>> {
    bundle
        .pair()
        .phi()
        .iter()
        .map(|phi| bundle.s_psi_sqrt().mul_vec(phi))
        .collect()
}

/// `h Φ_n = α_n Φ_n` and `⟨Φ_n, Φ_m⟩ = δ_nm`.
pub fn check_transported_eigenbasis(bundle: &OperatorBundle, tol: f64) -> Check {
    let basis = transported_eigenbasis(bundle);
    let h = bundle.similar();
    let mut action = 0.0f64;
    for (v, a) in basis.iter().zip(bundle.alpha_terms()) {
        let scaled: Vec<_> = v.iter().map(|x| a * x).collect();
        action = action.max(max_abs_diff_vec(&h.mul_vec(v), &scaled));
    }
    let ortho = gram_defect(&basis, inner);
    Check::residual(
        "similarity.transported_eigenbasis",
        action.max(ortho),
        tol,
        format!("h Phi_n = alpha_n Phi_n: {action:.3e}; orthonormality: {ortho:.3e}"),
    )
}

fn gram_defect(basis: &[Vec<Complex64>], ip: impl Fn(&[Complex64], &[Complex64]) -> Complex64) -> f64 {
    let mut worst = 0.0f64;
    for (n, f) in basis.iter().enumerate() {
        for (m, g) in basis.iter().enumerate() {
            let delta = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((ip(f, g) - delta).norm());
        }
    }
    worst
}

/// `⟨φ_n, φ_m⟩_S = ⟨S_ψ φ_n, φ_m⟩ = δ_nm`.
pub fn onb_in_hs(bundle: &OperatorBundle, tol: f64) -> Check {
    let sp = bundle.s_psi();
    let worst = gram_defect(bundle.pair().phi(), |f, g| inner(&sp.mul_vec(f), g));
    Check::residual(
        "similarity.onb_in_hs",
        worst,
        tol,
        "max |<S_psi phi_n, phi_m> - delta_nm|",
    )
}

/// `S_φ^{1/2} h_{φψ} = H_{φψ} S_φ^{1/2}` and `S_ψ^{1/2} h_{ψφ} = H_{ψφ} S_ψ^{1/2}`.
pub fn check_similarity_intertwining(bundle: &OperatorBundle, tol: f64) -> Check {
    let a = (bundle.s_phi_sqrt() * bundle.similar()).max_abs_diff(&(bundle.h_phi_psi() * bundle.s_phi_sqrt()));
    let h2 = build_h(bundle, Direction::PsiPhi);
    let b = (bundle.s_psi_sqrt() * &h2).max_abs_diff(&(bundle.h_psi_phi() * bundle.s_psi_sqrt()));
    Check::residual(
        "similarity.intertwining",
        a.max(b),
        tol,
        format!("S_phi^1/2 h - H S_phi^1/2: {a:.3e}; S_psi^1/2 h' - H' S_psi^1/2: {b:.3e}"),
    )
}

/// Conjugate symmetry and positivity of `⟨·,·⟩_S` on the given vectors.
pub fn check_s_inner_product(bundle: &OperatorBundle, vectors: &[Vec<Complex64>], tol: f64) -> Result<Check> {
    let ip = SInnerProduct::new(bundle.s_psi().clone(), tol)?;
    let mut symmetry = 0.0f64;
    let mut positive = true;
    for (i, f) in vectors.iter().enumerate() {
        let ff = ip.inner(f, f);
        if ff.re.is_nan() || ff.re <= 0.0 || ff.im.abs() > tol * ff.re.abs().max(1.0) {
            positive = false;
        }
        for g in &vectors[i + 1..] {
            let scale = (linalg::norm(f) * linalg::norm(g)).max(f64::MIN_POSITIVE);
            symmetry = symmetry.max((ip.inner(f, g) - ip.inner(g, f).conj()).norm() / scale);
        }
    }
    let residual = if positive { symmetry } else { f64::INFINITY };
    Ok(Check::residual(
        "similarity.s_inner_product",
        residual,
        tol,
        format!(
            "conjugate symmetry {symmetry:.3e}; positivity {}",
            if positive { "ok" } else { "violated" }
        ),
    ))
}
