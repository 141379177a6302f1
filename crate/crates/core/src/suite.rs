//! Verification suites: each runs the full check battery against one model
//! and collects a [`VerificationReport`].

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{self, DomainVerdict, OperatorKind};
use crate::error::{Error, Result};
use crate::ladder::{self, LadderPair};
use crate::linalg;
use crate::models;
use crate::operators::{self, OperatorBundle};
use crate::random;
use crate::report::VerificationReport;
use crate::riesz::{self, RieszBasisPair};
use crate::sequence::SequenceSpec;
use crate::similarity;

/// Random vectors drawn per report for expansion, frame and metric checks.
pub const TEST_VECTORS: usize = 10;

/// Keeps test-vector draws independent of the generator draws for one seed.
const VECTOR_STREAM: u64 = 0x9e37_79b9_7f4a_7c15;

fn test_vectors(dim: usize, seed: u64) -> Vec<Vec<Complex64>> {
    random::random_vectors(&mut random::rng(seed ^ VECTOR_STREAM), dim, TEST_VECTORS)
}

/// Removes the `φ_{N-1}` component so `f` lies in the interior span.
fn interior_projection(pair: &RieszBasisPair, f: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = pair.dim();
    let c = pair.expand(f)?.coeff_psi[n - 1];
    Ok(f.iter().zip(&pair.phi()[n - 1]).map(|(x, p)| x - c * p).collect())
}

/// Checks from the basis, operator and similarity layers.
pub fn operator_battery(
    report: &mut VerificationReport,
    bundle: &OperatorBundle,
    vectors: &[Vec<Complex64>],
    tol: f64,
) -> Result<()> {
    let pair = bundle.pair();
    let alpha = bundle.alpha();
    report.push(riesz::verify_biorthogonality(pair, tol));
    report.push(riesz::check_expansion(pair, vectors, tol)?);
    report.push(riesz::frame_inequality_check(pair, alpha, vectors, tol)?);
    report.push(operators::check_eigen_action(bundle, tol));
    report.push(operators::check_metric(bundle, tol));
    report.push(operators::check_weighted_actions(pair, alpha, tol)?);
    report.push(operators::check_adjoint_pair(pair, alpha, tol)?);
    report.push(operators::check_intertwining(bundle, tol)?);
    if alpha.is_real() {
        let pairs: Vec<_> = vectors.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        report.push(operators::quasi_hermitian_symmetry(bundle, &pairs, tol)?);
    }
    report.push(operators::check_norm_bound(bundle, tol)?);
    report.push(similarity::check_selfadjoint_h(bundle, tol)?);
    report.push(similarity::check_transported_eigenbasis(bundle, tol));
    report.push(similarity::onb_in_hs(bundle, tol));
    report.push(similarity::check_similarity_intertwining(bundle, tol));
    report.push(similarity::check_s_inner_product(bundle, vectors, tol)?);
    report
        .metric("frame_lower", pair.frame_lower())
        .metric("frame_upper", pair.frame_upper());
    Ok(())
}

/// Ladder checks for one `γ`; skipped identities are recorded as warnings.
pub fn ladder_battery(
    report: &mut VerificationReport,
    lp: &LadderPair,
    vectors: &[Vec<Complex64>],
    tol: f64,
) -> Result<()> {
    let pair = lp.pair();
    report.push(ladder::check_ladder_actions(lp, tol));
    report.push(ladder::check_ladder_adjoints(lp, tol)?);
    for w in lp.warnings() {
        report.warn(w.clone());
    }
    if let Some(check) = ladder::check_products(lp, tol) {
        report.push(check);
    }
    if lp.gamma().check_abs_monotone(pair.dim()) {
        let interior = vectors
            .iter()
            .map(|f| interior_projection(pair, f))
            .collect::<Result<Vec<_>>>()?;
        if let Some(check) = ladder::check_commutator(lp, &interior, tol)? {
            report.push(check);
        }
    } else {
        report.warn("|gamma_n| is not non-decreasing; commutator identity skipped");
    }
    Ok(())
}

/// `H = BA` with `γ_n = √α_n` when `α` admits it.
fn factorization_battery(report: &mut VerificationReport, bundle: &OperatorBundle, tol: f64) -> Result<()> {
    match ladder::factorize_from_alpha(bundle, tol) {
        Ok(lp) => {
            report.push(ladder::check_factorization(&lp, bundle, tol));
            Ok(())
        }
        Err(Error::OrderingViolation { index }) => {
            report.warn(format!(
                "alpha is not 0 = alpha_0 < alpha_1 < ... (index {index}); factorization skipped"
            ));
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// Three-level model at parameter `t`.
pub fn run_three_level(t: f64, seed: u64, tol: f64) -> Result<VerificationReport> {
    let model = models::three_level(t)?;
    let mut report = VerificationReport::new("three-level");
    report.param_f64("t", t).param("seed", seed).param_f64("tol", tol);

    report.push(models::check_admissible(&model));
    if model.admissible {
        report.push(models::check_ordering(&model, tol));
    } else {
        report.warn("t is outside the admissible interval; ordering, factorization and relabeled spectrum skipped");
    }
    let bundle = model.generic_bundle(tol)?;
    report.push(models::check_three_level_closed_forms(&model, &bundle, tol));
    report.push(models::check_three_level_norms(&model, tol)?);
    report.push(models::check_sqrt_is_not_generator(&model));

    let vectors = test_vectors(3, seed);
    operator_battery(&mut report, &bundle, &vectors, tol)?;

    let lp = ladder::build_ladder(bundle.pair(), &model.gamma())?;
    report.push(models::check_ladder_closed_forms(&model, &lp, &bundle, tol));
    report.push(models::check_ladder_actions(&model, &lp, tol));
    ladder_battery(&mut report, &lp, &vectors, tol)?;
    if model.admissible {
        factorization_battery(&mut report, &bundle, tol)?;
        report.push(models::three_level_hat_spectrum(&model, &lp, tol)?);
    }

    report
        .metric("eps_1", model.eps[1])
        .metric("eps_2", model.eps[2])
        .metric("norm_T", linalg::operator_norm(&model.generator)?)
        .metric("norm_T_inv", linalg::operator_norm(bundle.pair().generator_inverse())?);
    Ok(report)
}

/// Parameters of the projection suite.
#[derive(Clone, Debug)]
pub struct ProjectionParams {
    pub dim: usize,
    /// Number of leading coordinates carrying `u`.
    pub support: usize,
    pub seed: u64,
    pub alpha: SequenceSpec,
    pub gamma: Option<SequenceSpec>,
}

/// Rank-one projection model with a seeded `u`.
pub fn run_projection(params: &ProjectionParams, tol: f64) -> Result<VerificationReport> {
    let ProjectionParams { dim, support, seed, .. } = *params;
    if support < 2 || support > dim {
        return Err(Error::InvalidParameter(format!(
            "support size must lie in [2, dim = {dim}], got {support}"
        )));
    }
    let u = random::random_unit_vector(&mut random::rng(seed), dim, support);
    let model = models::projection_model(dim, u, params.alpha.clone(), tol)?;
    let mut report = VerificationReport::new("projection");
    report
        .param("alpha", &params.alpha)
        .param("dim", dim)
        .param(
            "gamma",
            params.gamma.as_ref().map_or("none".to_string(), |g| g.to_string()),
        )
        .param("seed", seed)
        .param("support", support)
        .param_f64("tol", tol);

    let bundle = model.generic_bundle(tol)?;
    report.push(models::check_projection_closed_forms(&model, &bundle, tol)?);
    report.push(models::check_projection_block_structure(&model, &bundle, tol)?);
    let vectors = test_vectors(dim, seed);
    operator_battery(&mut report, &bundle, &vectors, tol)?;
    if let Some(gamma) = &params.gamma {
        let lp = ladder::build_ladder(bundle.pair(), gamma)?;
        ladder_battery(&mut report, &lp, &vectors, tol)?;
    }
    factorization_battery(&mut report, &bundle, tol)?;
    Ok(report)
}

/// Parameters of the random-generator suite.
#[derive(Clone, Debug)]
pub struct RandomParams {
    pub dim: usize,
    pub seed: u64,
    pub alpha: SequenceSpec,
    pub gamma: Option<SequenceSpec>,
}

/// Generic pipeline on `T = I + 0.3R` with seeded `R`.
pub fn run_random(params: &RandomParams, tol: f64) -> Result<VerificationReport> {
    let RandomParams { dim, seed, .. } = *params;
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("dim must be at least 2, got {dim}")));
    }
    let mut report = VerificationReport::new("random");
    report
        .param("alpha", &params.alpha)
        .param("dim", dim)
        .param(
            "gamma",
            params.gamma.as_ref().map_or("none".to_string(), |g| g.to_string()),
        )
        .param("seed", seed)
        .param_f64("tol", tol);

    let pair = RieszBasisPair::from_generator(random::random_generator(dim, seed), tol)?;
    let bundle = OperatorBundle::new(pair, params.alpha.clone(), tol)?;
    let vectors = test_vectors(dim, seed);
    operator_battery(&mut report, &bundle, &vectors, tol)?;
    if let Some(gamma) = &params.gamma {
        let lp = ladder::build_ladder(bundle.pair(), gamma)?;
        ladder_battery(&mut report, &lp, &vectors, tol)?;
    }
    factorization_battery(&mut report, &bundle, tol)?;
    Ok(report)
}

/// One three-level report per grid point of `steps` equally spaced values
/// in `[t_min, t_max]`, in parameter order.
pub fn sweep_three_level(t_min: f64, t_max: f64, steps: usize, seed: u64, tol: f64) -> Result<Vec<VerificationReport>> {
    if steps < 2 {
        return Err(Error::InvalidParameter(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    if t_min.is_nan() || t_max.is_nan() || t_min >= t_max {
        return Err(Error::InvalidParameter(format!(
            "t-min {t_min} must be below t-max {t_max}"
        )));
    }
    let h = (t_max - t_min) / (steps - 1) as f64;
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let t = if i + 1 == steps { t_max } else { t_min + h * i as f64 };
            run_three_level(t, seed, tol)
        })
        .collect()
}

/// One projection report per support size in `n_min..=n_max`.
pub fn sweep_projection(
    base: &ProjectionParams,
    n_min: usize,
    n_max: usize,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    if n_min < 2 || n_min > n_max || n_max > base.dim {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= n-min <= n-max <= dim, got n-min {n_min}, n-max {n_max}, dim {}",
            base.dim
        )));
    }
    (n_min..=n_max)
        .into_par_iter()
        .map(|support| {
            run_projection(
                &ProjectionParams {
                    support,
                    ..base.clone()
                },
                tol,
            )
        })
        .collect()
}

/// Domain diagnostic for `H^α` at coefficients `c_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DomainReport {
    pub alpha: String,
    pub coeff: String,
    #[serde(flatten)]
    pub result: DomainVerdict,
}

impl DomainReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

/// Summability of `Σ |α_n c_n|²`, the domain condition for `H^α`.
pub fn run_domain(alpha: &SequenceSpec, coeff: &SequenceSpec, n_max: usize) -> Result<DomainReport> {
    let result = domain::predicate_verdict(&domain::domain_of(OperatorKind::H, alpha), coeff, n_max)?;
    Ok(DomainReport {
        alpha: alpha.to_string(),
        coeff: coeff.to_string(),
        result,
    })
}
