//! Generalized lowering and raising operators
//!
//! ```text
//! A_{φψ} = Σ_{n≥1} γ_n φ_{n-1} ⊗ ψ̄_n      B_{φψ} = Σ_{n≥0} γ_{n+1} φ_{n+1} ⊗ ψ̄_n
//! A_{ψφ} = Σ_{n≥1} γ_n ψ_{n-1} ⊗ φ̄_n      B_{ψφ} = Σ_{n≥0} γ_{n+1} ψ_{n+1} ⊗ φ̄_n
//! ```
//!
//! At truncation `N` the raising operator loses its `γ_N` term, so
//! `B φ_{N-1} = 0` and `AB` agrees with `Σ γ_{n+1}² φ_n ⊗ ψ̄_n` only on the
//! interior indices `0..=N-2`. Product and commutator identities also need
//! `γ_0 = 0`, since `BA φ_0 = 0` always.

use std::ops::Range;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff_vec, norm, ComplexMatrix};
use crate::operators::OperatorBundle;
use crate::report::Check;
use crate::riesz::RieszBasisPair;
use crate::sequence::SequenceSpec;

#[derive(Clone, Debug)]
pub struct LadderPair {
    pair: RieszBasisPair,
    gamma: SequenceSpec,
    gamma_terms: Vec<Complex64>,
    pub a_phi_psi: ComplexMatrix,
    pub b_phi_psi: ComplexMatrix,
    pub a_psi_phi: ComplexMatrix,
    pub b_psi_phi: ComplexMatrix,
    interior: Range<usize>,
    warnings: Vec<String>,
}

impl LadderPair {
    pub fn pair(&self) -> &RieszBasisPair {
        &self.pair
    }

    pub fn gamma(&self) -> &SequenceSpec {
        &self.gamma
    }

    pub fn gamma_terms(&self) -> &[Complex64] {
        &self.gamma_terms
    }

    /// Indices on which the product identities hold at truncation.
    pub fn interior(&self) -> Range<usize> {
        self.interior.clone()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Whether `γ_0 = 0`, required by the product identities.
    pub fn gamma_zero_vanishes(&self) -> bool {
        self.gamma_terms[0] == Complex64::new(0.0, 0.0)
    }
}

pub fn build_ladder(pair: &RieszBasisPair, gamma: &SequenceSpec) -> Result<LadderPair> {
    let n = pair.dim();
    let g = gamma.take(n)?;
    let (phi, psi) = (pair.phi(), pair.psi());
    let mut a_phi_psi = ComplexMatrix::zeros(n);
    let mut a_psi_phi = ComplexMatrix::zeros(n);
    let mut b_phi_psi = ComplexMatrix::zeros(n);
    let mut b_psi_phi = ComplexMatrix::zeros(n);
    for k in 1..n {
        a_phi_psi.add_outer(g[k], &phi[k - 1], &psi[k]);
        a_psi_phi.add_outer(g[k], &psi[k - 1], &phi[k]);
        b_phi_psi.add_outer(g[k], &phi[k], &psi[k - 1]);
        b_psi_phi.add_outer(g[k], &psi[k], &phi[k - 1]);
    }
    let mut warnings = Vec::new();
    if g[0] != Complex64::new(0.0, 0.0) {
        warnings.push(format!(
            "gamma_0 = {} is nonzero; product and commutator identities require gamma_0 = 0 and are skipped",
            g[0]
        ));
    }
    Ok(LadderPair {
        pair: pair.clone(),
        gamma: gamma.clone(),
        gamma_terms: g,
        a_phi_psi,
        b_phi_psi,
        a_psi_phi,
        b_psi_phi,
        interior: 0..n.saturating_sub(1),
        warnings,
    })
}

fn scaled(v: &[Complex64], z: Complex64) -> Vec<Complex64> {
    v.iter().map(|x| x * z).collect()
}

/// Lowering/raising actions on both families, including the truncation edge.
pub fn check_ladder_actions(lp: &LadderPair, tol: f64) -> Check {
    let n = lp.pair.dim();
    let g = &lp.gamma_terms;
    let zero = vec![Complex64::new(0.0, 0.0); n];
    let mut worst = 0.0f64;
    for (family, a, b) in [
        (lp.pair.phi(), &lp.a_phi_psi, &lp.b_phi_psi),
        (lp.pair.psi(), &lp.a_psi_phi, &lp.b_psi_phi),
    ] {
        worst = worst.max(max_abs_diff_vec(&a.mul_vec(&family[0]), &zero));
        for k in 1..n {
            worst = worst.max(max_abs_diff_vec(&a.mul_vec(&family[k]), &scaled(&family[k - 1], g[k])));
        }
        for k in 0..n - 1 {
            worst = worst.max(max_abs_diff_vec(
                &b.mul_vec(&family[k]),
                &scaled(&family[k + 1], g[k + 1]),
            ));
        }
        worst = worst.max(max_abs_diff_vec(&b.mul_vec(&family[n - 1]), &zero));
    }
    Check::residual(
        "ladder.actions",
        worst,
        tol,
        "A v_0 = 0, A v_k = g_k v_{k-1}, B v_k = g_{k+1} v_{k+1}, B v_{N-1} = 0 for v = phi, psi",
    )
}

/// `(A^γ_{φψ})* = B^γ̄_{ψφ}` and `(A^γ_{ψφ})* = B^γ̄_{φψ}`.
pub fn check_ladder_adjoints(lp: &LadderPair, tol: f64) -> Result<Check> {
    let bar = build_ladder(&lp.pair, &lp.gamma.conj())?;
    let r1 = lp.a_phi_psi.adjoint().max_abs_diff(&bar.b_psi_phi);
    let r2 = lp.a_psi_phi.adjoint().max_abs_diff(&bar.b_phi_psi);
    Ok(Check::residual(
        "ladder.adjoints",
        r1.max(r2),
        tol,
        format!("(A_phi_psi)* - B_psi_phi(conj g): {r1:.3e}; (A_psi_phi)* - B_phi_psi(conj g): {r2:.3e}"),
    ))
}

fn weighted_phi_psi(pair: &RieszBasisPair, weights: &[Complex64]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(pair.dim());
    for (k, w) in weights.iter().enumerate() {
        m.add_outer(*w, &pair.phi()[k], &pair.psi()[k]);
    }
    m
}

/// Products `BA` and `AB`.
///
/// Action checks `(BA)φ_k = γ_k² φ_k` (all `k`) and `(AB)φ_k = γ_{k+1}² φ_k`
/// (interior `k`) always run; the matrix identities `BA = H^{γ_n²}` and
/// `AB = H^{γ_{n+1}²}` (restricted to the interior) run only for `|γ|`
/// non-decreasing. Returns `None` when `γ_0 ≠ 0`.
pub fn check_products(lp: &LadderPair, tol: f64) -> Option<Check> {
    if !lp.gamma_zero_vanishes() {
        return None;
    }
    let n = lp.pair.dim();
    let g = &lp.gamma_terms;
    let phi = lp.pair.phi();
    let ba = &lp.b_phi_psi * &lp.a_phi_psi;
    let ab = &lp.a_phi_psi * &lp.b_phi_psi;
    let mut action = 0.0f64;
    for k in 0..n {
        action = action.max(max_abs_diff_vec(&ba.mul_vec(&phi[k]), &scaled(&phi[k], g[k] * g[k])));
    }
    for k in lp.interior() {
        action = action.max(max_abs_diff_vec(
            &ab.mul_vec(&phi[k]),
            &scaled(&phi[k], g[k + 1] * g[k + 1]),
        ));
    }
    let monotone = lp.gamma.check_abs_monotone(n);
    let mut matrix = 0.0f64;
    if monotone {
        let sq: Vec<_> = g.iter().map(|z| z * z).collect();
        let shifted: Vec<_> = (0..n)
            .map(|k| {
                if k + 1 < n {
                    g[k + 1] * g[k + 1]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        matrix = ba
            .max_abs_diff(&weighted_phi_psi(&lp.pair, &sq))
            .max(ab.max_abs_diff(&weighted_phi_psi(&lp.pair, &shifted)));
    }
    Some(Check::residual(
        "ladder.products",
        action.max(matrix),
        tol,
        if monotone {
            format!("actions: {action:.3e}; BA = H^(g_n^2), AB = H^(g_(n+1)^2) on interior: {matrix:.3e}")
        } else {
            format!("actions: {action:.3e}; |gamma| not monotone, matrix identities not checked")
        },
    ))
}

/// `(AB − BA) f = Σ_{n ≤ N-2} (γ_{n+1}² − γ_n²) ⟨f,ψ_n⟩ φ_n` for `f` in the
/// interior span. Residual is relative to `‖f‖`.
pub fn check_commutator(lp: &LadderPair, vectors: &[Vec<Complex64>], tol: f64) -> Result<Option<Check>> {
    let n = lp.pair.dim();
    if !lp.gamma.check_abs_monotone(n) {
        return Err(Error::InvalidParameter(
            "commutator identity requires |gamma_n| non-decreasing".into(),
        ));
    }
    if !lp.gamma_zero_vanishes() {
        return Ok(None);
    }
    let g = &lp.gamma_terms;
    let ab = &lp.a_phi_psi * &lp.b_phi_psi;
    let ba = &lp.b_phi_psi * &lp.a_phi_psi;
    let comm = &ab - &ba;
    let mut worst = 0.0f64;
    for f in vectors {
        let e = lp.pair.expand(f)?;
        let scale = norm(f).max(f64::MIN_POSITIVE);
        let edge = e.coeff_psi[n - 1].norm();
        if edge > tol * scale {
            return Err(Error::OutsideInterior { mass: edge });
        }
        let coeffs: Vec<_> = (0..n)
            .map(|k| {
                if k + 1 < n {
                    (g[k + 1] * g[k + 1] - g[k] * g[k]) * e.coeff_psi[k]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        let rhs = RieszBasisPair::synthesize(lp.pair.phi(), &coeffs);
        let lhs = comm.mul_vec(f);
        let diff: Vec<_> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
        worst = worst.max(norm(&diff) / scale);
    }
    Ok(Some(Check::residual(
        "ladder.commutator",
        worst,
        tol,
        format!("{} interior vectors", vectors.len()),
    )))
}

/// Factorizes `H^α_{φψ} = B A` with `γ_n = √α_n`.
///
/// Requires `α` real with `0 = α_0 < α_1 < …` over the truncation; strictness
/// means consecutive gaps larger than `tol`.
pub fn factorize_from_alpha(bundle: &OperatorBundle, tol: f64) -> Result<LadderPair> {
    let alpha = bundle.alpha_terms();
    if let Some(index) = ordering_violation(alpha, tol) {
        return Err(Error::OrderingViolation { index });
    }
    let gamma = SequenceSpec::explicit(alpha.iter().map(|a| Complex64::new(a.re.sqrt(), 0.0)).collect());
    build_ladder(bundle.pair(), &gamma)
}

/// First index at which `0 = α_0 < α_1 < …` fails.
pub fn ordering_violation(alpha: &[Complex64], tol: f64) -> Option<usize> {
    if let Some(i) = alpha.iter().position(|a| a.im.abs() > tol) {
        return Some(i);
    }
    if alpha.first().is_some_and(|a| a.re.abs() > tol) {
        return Some(0);
    }
    (1..alpha.len()).find(|&k| alpha[k].re - alpha[k - 1].re <= tol)
}

/// `‖B A − H^α_{φψ}‖` for a factorization produced by [`factorize_from_alpha`].
pub fn check_factorization(lp: &LadderPair, bundle: &OperatorBundle, tol: f64) -> Check {
    let ba = &lp.b_phi_psi * &lp.a_phi_psi;
    Check::residual(
        "ladder.factorization",
        ba.max_abs_diff(bundle.h_phi_psi()),
        tol,
        "B A = H_phi_psi with gamma_n = sqrt(alpha_n)",
    )
}
