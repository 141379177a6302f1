//! Operators built from a Riesz-basis pair as explicit sums of rank-one terms:
//!
//! * `H^α_{φψ} = Σ α_n φ_n ⊗ ψ̄_n` and `H^α_{ψφ} = Σ α_n ψ_n ⊗ φ̄_n`
//! * `S^β_φ = Σ β_n φ_n ⊗ φ̄_n` and `S^β_ψ = Σ β_n ψ_n ⊗ ψ̄_n`
//! * the metric operators `S_φ = S^𝟙_φ`, `S_ψ = S^𝟙_ψ` and their square roots.
//!
//! Note on the weighted actions: `S^β_φ ψ_k = β_k φ_k` and, symmetrically,
//! `S^β_ψ φ_k = β_k ψ_k`. The second identity is sometimes misprinted with
//! `S^β_φ` on the left; that form does not follow from the definition.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, inner, max_abs_diff_vec, norm, ComplexMatrix};
use crate::report::Check;
use crate::riesz::RieszBasisPair;
use crate::sequence::SequenceSpec;

/// Which family sits on the left of the rank-one terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `Σ α_n φ_n ⊗ ψ̄_n`
    PhiPsi,
    /// `Σ α_n ψ_n ⊗ φ̄_n`
    PsiPhi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Phi,
    Psi,
}

fn rank_one_sum(weights: &[Complex64], left: &[Vec<Complex64>], right: &[Vec<Complex64>]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(left[0].len());
    for ((w, v), u) in weights.iter().zip(left).zip(right) {
        m.add_outer(*w, v, u);
    }
    m
}

pub fn build_h(pair: &RieszBasisPair, alpha: &SequenceSpec, direction: Direction) -> Result<ComplexMatrix> {
    let weights = alpha.take(pair.dim())?;
    Ok(match direction {
        Direction::PhiPsi => rank_one_sum(&weights, pair.phi(), pair.psi()),
        Direction::PsiPhi => rank_one_sum(&weights, pair.psi(), pair.phi()),
    })
}

pub fn build_s_weighted(pair: &RieszBasisPair, beta: &SequenceSpec, side: Side) -> Result<ComplexMatrix> {
    let weights = beta.take(pair.dim())?;
    Ok(match side {
        Side::Phi => rank_one_sum(&weights, pair.phi(), pair.phi()),
        Side::Psi => rank_one_sum(&weights, pair.psi(), pair.psi()),
    })
}

/// All operators attached to one `(pair, α)` instance.
#[derive(Clone, Debug)]
pub struct OperatorBundle {
    pair: RieszBasisPair,
    alpha: SequenceSpec,
    alpha_terms: Vec<Complex64>,
    h_phi_psi: ComplexMatrix,
    h_psi_phi: ComplexMatrix,
    s_phi: ComplexMatrix,
    s_psi: ComplexMatrix,
    s_phi_sqrt: ComplexMatrix,
    s_psi_sqrt: ComplexMatrix,
    similar: ComplexMatrix,
}

impl OperatorBundle {
    pub fn new(pair: RieszBasisPair, alpha: SequenceSpec, tol: f64) -> Result<Self> {
        let alpha_terms = alpha.take(pair.dim())?;
        let h_phi_psi = build_h(&pair, &alpha, Direction::PhiPsi)?;
        let h_psi_phi = build_h(&pair, &alpha, Direction::PsiPhi)?;
        let ones = SequenceSpec::ones();
        let s_phi = build_s_weighted(&pair, &ones, Side::Phi)?;
        let s_psi = build_s_weighted(&pair, &ones, Side::Psi)?;
        let s_phi_sqrt = linalg::sqrt_psd(&s_phi, tol)?;
        let s_psi_sqrt = linalg::sqrt_psd(&s_psi, tol)?;
        let similar = &(&s_psi_sqrt * &h_phi_psi) * &s_phi_sqrt;
        Ok(Self {
            pair,
            alpha,
            alpha_terms,
            h_phi_psi,
            h_psi_phi,
            s_phi,
            s_psi,
            s_phi_sqrt,
            s_psi_sqrt,
            similar,
        })
    }

    pub fn pair(&self) -> &RieszBasisPair {
        &self.pair
    }

    pub fn alpha(&self) -> &SequenceSpec {
        &self.alpha
    }

    /// `α_0, …, α_{N-1}`.
    pub fn alpha_terms(&self) -> &[Complex64] {
        &self.alpha_terms
    }

    pub fn dim(&self) -> usize {
        self.pair.dim()
    }

    pub fn h_phi_psi(&self) -> &ComplexMatrix {
        &self.h_phi_psi
    }

    pub fn h_psi_phi(&self) -> &ComplexMatrix {
        &self.h_psi_phi
    }

    pub fn h(&self, direction: Direction) -> &ComplexMatrix {
        match direction {
            Direction::PhiPsi => &self.h_phi_psi,
            Direction::PsiPhi => &self.h_psi_phi,
        }
    }

    pub fn s_phi(&self) -> &ComplexMatrix {
        &self.s_phi
    }

    pub fn s_psi(&self) -> &ComplexMatrix {
        &self.s_psi
    }

    pub fn s_phi_sqrt(&self) -> &ComplexMatrix {
        &self.s_phi_sqrt
    }

    pub fn s_psi_sqrt(&self) -> &ComplexMatrix {
        &self.s_psi_sqrt
    }

    /// `S_ψ^{1/2} H^α_{φψ} S_φ^{1/2}`.
    pub fn similar(&self) -> &ComplexMatrix {
        &self.similar
    }
}

/// `H_{φψ} φ_k = α_k φ_k` and `H_{ψφ} ψ_k = α_k ψ_k`.
pub fn check_eigen_action(bundle: &OperatorBundle, tol: f64) -> Check {
    let pair = bundle.pair();
    let mut worst = 0.0f64;
    for (k, a) in bundle.alpha_terms().iter().enumerate() {
        for (op, v) in [
            (bundle.h_phi_psi(), &pair.phi()[k]),
            (bundle.h_psi_phi(), &pair.psi()[k]),
        ] {
            let lhs = op.mul_vec(v);
            let rhs: Vec<_> = v.iter().map(|x| a * x).collect();
            worst = worst.max(max_abs_diff_vec(&lhs, &rhs));
        }
    }
    Check::residual(
        "operators.eigen_action",
        worst,
        tol,
        "H_phi_psi phi_k = alpha_k phi_k, H_psi_phi psi_k = alpha_k psi_k",
    )
}

/// Metric identities: `S_φ S_ψ = I`, `S_φ = TT*`, `S_ψ = (T⁻¹)* T⁻¹`,
/// `(S_φ^{1/2})² = S_φ`, `S_ψ^{1/2} = (S_φ^{1/2})⁻¹`, and Hermiticity.
pub fn check_metric(bundle: &OperatorBundle, tol: f64) -> Check {
    let pair = bundle.pair();
    let n = bundle.dim();
    let id = ComplexMatrix::identity(n);
    let t = pair.generator();
    let ti = pair.generator_inverse();
    let residuals = [
        (bundle.s_phi() * bundle.s_psi()).max_abs_diff(&id),
        bundle.s_phi().max_abs_diff(&(t * &t.adjoint())),
        bundle.s_psi().max_abs_diff(&(&ti.adjoint() * ti)),
        (bundle.s_phi_sqrt() * bundle.s_phi_sqrt()).max_abs_diff(bundle.s_phi()),
        (bundle.s_psi_sqrt() * bundle.s_phi_sqrt()).max_abs_diff(&id),
        bundle.s_phi().max_abs_diff(&bundle.s_phi().adjoint()),
        bundle.s_psi().max_abs_diff(&bundle.s_psi().adjoint()),
    ];
    Check::residual(
        "operators.metric",
        residuals.iter().copied().fold(0.0, f64::max),
        tol,
        format!(
            "S_phi S_psi = I: {:.3e}; S_phi = TT*: {:.3e}; S_psi = T^-* T^-1: {:.3e}; sqrt^2: {:.3e}; sqrt inverse: {:.3e}; hermitian: {:.3e}",
            residuals[0],
            residuals[1],
            residuals[2],
            residuals[3],
            residuals[4],
            residuals[5].max(residuals[6])
        ),
    )
}

/// `S^β_φ ψ_k = β_k φ_k`, `S^β_ψ φ_k = β_k ψ_k`, and for real `β` both
/// operators Hermitian.
pub fn check_weighted_actions(pair: &RieszBasisPair, beta: &SequenceSpec, tol: f64) -> Result<Check> {
    let weights = beta.take(pair.dim())?;
    let s_phi = build_s_weighted(pair, beta, Side::Phi)?;
    let s_psi = build_s_weighted(pair, beta, Side::Psi)?;
    let mut action = 0.0f64;
    for (k, b) in weights.iter().enumerate() {
        let (phi, psi) = (&pair.phi()[k], &pair.psi()[k]);
        let scaled = |v: &[Complex64]| v.iter().map(|x| b * x).collect::<Vec<_>>();
        action = action.max(max_abs_diff_vec(&s_phi.mul_vec(psi), &scaled(phi)));
        action = action.max(max_abs_diff_vec(&s_psi.mul_vec(phi), &scaled(psi)));
    }
    let hermitian = if beta.is_real() {
        s_phi
            .max_abs_diff(&s_phi.adjoint())
            .max(s_psi.max_abs_diff(&s_psi.adjoint()))
    } else {
        0.0
    };
    Ok(Check::residual(
        "operators.weighted_action",
        action.max(hermitian),
        tol,
        format!(
            "S^b_phi psi_k = b_k phi_k, S^b_psi phi_k = b_k psi_k: {action:.3e}; hermitian for real b: {}",
            if beta.is_real() {
                format!("{hermitian:.3e}")
            } else {
                "n/a".into()
            }
        ),
    ))
}

/// `(H^α_{φψ})* = H^ᾱ_{ψφ}`, `(H^α_{ψφ})* = H^ᾱ_{φψ}` and
/// `(S^α_φ)* = S^ᾱ_φ`, `(S^α_ψ)* = S^ᾱ_ψ`.
pub fn check_adjoint_pair(pair: &RieszBasisPair, alpha: &SequenceSpec, tol: f64) -> Result<Check> {
    let conj = alpha.conj();
    let h = build_h(pair, alpha, Direction::PhiPsi)?;
    let k = build_h(pair, alpha, Direction::PsiPhi)?;
    let h_bar = build_h(pair, &conj, Direction::PsiPhi)?;
    let k_bar = build_h(pair, &conj, Direction::PhiPsi)?;
    let h_res = h.adjoint().max_abs_diff(&h_bar).max(k.adjoint().max_abs_diff(&k_bar));
    let mut s_res = 0.0f64;
    for side in [Side::Phi, Side::Psi] {
        let s = build_s_weighted(pair, alpha, side)?;
        let s_bar = build_s_weighted(pair, &conj, side)?;
        s_res = s_res.max(s.adjoint().max_abs_diff(&s_bar));
    }
    Ok(Check::residual(
        "operators.adjoint_pair",
        h_res.max(s_res),
        tol,
        format!("H adjoint pair: {h_res:.3e}; S^a adjoint: {s_res:.3e}"),
    ))
}

/// `S_ψ H_{φψ} = H_{ψφ} S_ψ = S^α_ψ` and `S_φ H_{ψφ} = H_{φψ} S_φ = S^α_φ`.
pub fn check_intertwining(bundle: &OperatorBundle, tol: f64) -> Result<Check> {
    let pair = bundle.pair();
    let (h, k) = (bundle.h_phi_psi(), bundle.h_psi_phi());
    let (sf, sp) = (bundle.s_phi(), bundle.s_psi());
    let s_alpha_psi = build_s_weighted(pair, bundle.alpha(), Side::Psi)?;
    let s_alpha_phi = build_s_weighted(pair, bundle.alpha(), Side::Phi)?;
    let sp_h = sp * h;
    let sf_k = sf * k;
    let r = [
        sp_h.max_abs_diff(&(k * sp)),
        sp_h.max_abs_diff(&s_alpha_psi),
        sf_k.max_abs_diff(&(h * sf)),
        sf_k.max_abs_diff(&s_alpha_phi),
    ];
    Ok(Check::residual(
        "operators.intertwining",
        r.iter().copied().fold(0.0, f64::max),
        tol,
        format!(
            "S_psi H - H' S_psi: {:.3e}; S_psi H - S^a_psi: {:.3e}; S_phi H' - H S_phi: {:.3e}; S_phi H' - S^a_phi: {:.3e}",
            r[0], r[1], r[2], r[3]
        ),
    ))
}

/// Symmetry of `H_{φψ}` in the metric `⟨f,g⟩_S = ⟨S_ψ f, g⟩`, for real `α`.
///
/// Residual: `max |⟨S_ψ H f, g⟩ − ⟨S_ψ f, H g⟩| / (‖f‖‖g‖)`.
pub fn quasi_hermitian_symmetry(
    bundle: &OperatorBundle,
    pairs: &[(Vec<Complex64>, Vec<Complex64>)],
    tol: f64,
) -> Result<Check> {
    if !bundle.alpha().is_real() {
        return Err(Error::NotReal);
    }
    let h = bundle.h_phi_psi();
    let sp = bundle.s_psi();
    let mut worst = 0.0f64;
    for (f, g) in pairs {
        bundle.pair().check_len(f)?;
        bundle.pair().check_len(g)?;
        let lhs = inner(&sp.mul_vec(&h.mul_vec(f)), g);
        let rhs = inner(&sp.mul_vec(f), &h.mul_vec(g));
        let scale = (norm(f) * norm(g)).max(f64::MIN_POSITIVE);
        worst = worst.max((lhs - rhs).norm() / scale);
    }
    Ok(Check::residual(
        "operators.quasi_hermitian",
        worst,
        tol,
        format!("{} vector pairs, <H f, g>_S = <f, H g>_S", pairs.len()),
    ))
}

/// Truncated boundedness proxy `‖H_{φψ}‖ ≤ (γ₂/γ₁)·max|α_n|`.
pub fn check_norm_bound(bundle: &OperatorBundle, tol: f64) -> Result<Check> {
    let pair = bundle.pair();
    let norm_h = linalg::operator_norm(bundle.h_phi_psi())?;
    let sup = bundle.alpha_terms().iter().map(|a| a.norm()).fold(0.0, f64::max);
    let bound = pair.frame_upper() / pair.frame_lower() * sup;
    Ok(Check::residual(
        "operators.norm_bound",
        (norm_h - bound).max(0.0),
        tol,
        format!("||H|| = {norm_h:.6e}, (gamma2/gamma1) sup|alpha| = {bound:.6e}"),
    ))
}
