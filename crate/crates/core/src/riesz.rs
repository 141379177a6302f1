//! Biorthogonal Riesz-basis pairs `φ_n = T e_n`, `ψ_n = (T⁻¹)* e_n`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, inner, norm, ComplexMatrix};
use crate::report::Check;
use crate::sequence::SequenceSpec;

/// A Riesz basis and its biorthogonal dual, both stored in coordinates of the
/// standard basis of `ℂ^N`.
#[derive(Clone, Debug)]
pub struct RieszBasisPair {
    generator: ComplexMatrix,
    generator_inverse: ComplexMatrix,
    phi: Vec<Vec<Complex64>>,
    psi: Vec<Vec<Complex64>>,
    frame_lower: f64,
    frame_upper: f64,
}

/// Both coefficient families of a vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    /// `⟨f, ψ_n⟩`, the coordinates of `f` along `φ_n`.
    pub coeff_psi: Vec<Complex64>,
    /// `⟨f, φ_n⟩`, the coordinates of `f` along `ψ_n`.
    pub coeff_phi: Vec<Complex64>,
}

impl RieszBasisPair {
    /// Builds the pair generated by an invertible `T`.
    ///
    /// The frame bounds are the extreme singular values of `T`.
    pub fn from_generator(generator: ComplexMatrix, tol: f64) -> Result<Self> {
        let sigma = linalg::singular_values(&generator)?;
        let frame_lower = sigma[0];
        let frame_upper = *sigma.last().expect("dim >= 1");
        if frame_lower <= tol {
            return Err(Error::Singular { sigma_min: frame_lower });
        }
        let generator_inverse = linalg::inverse(&generator, tol)?;
        let phi = generator.columns();
        let psi = generator_inverse.adjoint().columns();
        Ok(Self {
            generator,
            generator_inverse,
            phi,
            psi,
            frame_lower,
            frame_upper,
        })
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    pub fn generator(&self) -> &ComplexMatrix {
        &self.generator
    }

    pub fn generator_inverse(&self) -> &ComplexMatrix {
        &self.generator_inverse
    }

    pub fn phi(&self) -> &[Vec<Complex64>] {
        &self.phi
    }

    pub fn psi(&self) -> &[Vec<Complex64>] {
        &self.psi
    }

    /// `γ₁ = σ_min(T)`.
    pub fn frame_lower(&self) -> f64 {
        self.frame_lower
    }

    /// `γ₂ = σ_max(T)`.
    pub fn frame_upper(&self) -> f64 {
        self.frame_upper
    }

    /// `max |⟨φ_n, ψ_m⟩ − δ_nm|`.
    pub fn biorthogonality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (n, phi) in self.phi.iter().enumerate() {
            for (m, psi) in self.psi.iter().enumerate() {
                let delta = if n == m { 1.0 } else { 0.0 };
                worst = worst.max((inner(phi, psi) - delta).norm());
            }
        }
        worst
    }

    pub fn expand(&self, f: &[Complex64]) -> Result<Expansion> {
        self.check_len(f)?;
        Ok(Expansion {
            coeff_psi: self.psi.iter().map(|p| inner(f, p)).collect(),
            coeff_phi: self.phi.iter().map(|p| inner(f, p)).collect(),
        })
    }

    /// `Σ c_n v_n` for the given family.
    pub fn synthesize(family: &[Vec<Complex64>], coeffs: &[Complex64]) -> Vec<Complex64> {
        let dim = family.first().map_or(0, Vec::len);
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (v, c) in family.iter().zip(coeffs) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        out
    }

    /// Relative error of both reconstructions
    /// `f = Σ ⟨f,ψ_n⟩ φ_n = Σ ⟨f,φ_n⟩ ψ_n`.
    pub fn reconstruction_residual(&self, f: &[Complex64]) -> Result<f64> {
        let e = self.expand(f)?;
        let via_phi = Self::synthesize(&self.phi, &e.coeff_psi);
        let via_psi = Self::synthesize(&self.psi, &e.coeff_phi);
        let scale = norm(f).max(f64::MIN_POSITIVE);
        let err = |g: &[Complex64]| norm(&g.iter().zip(f).map(|(a, b)| a - b).collect::<Vec<_>>()) / scale;
        Ok(err(&via_phi).max(err(&via_psi)))
    }

    pub(crate) fn check_len(&self, f: &[Complex64]) -> Result<()> {
        if f.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: f.len(),
            });
        }
        Ok(())
    }
}

pub fn verify_biorthogonality(pair: &RieszBasisPair, tol: f64) -> Check {
    Check::residual(
        "riesz.biorthogonality",
        pair.biorthogonality_residual(),
        tol,
        "max |<phi_n, psi_m> - delta_nm|",
    )
}

/// Reconstruction check over a set of vectors; residual is the worst relative
/// reconstruction error.
pub fn check_expansion(pair: &RieszBasisPair, vectors: &[Vec<Complex64>], tol: f64) -> Result<Check> {
    let mut worst = 0.0f64;
    for f in vectors {
        worst = worst.max(pair.reconstruction_residual(f)?);
    }
    Ok(Check::residual(
        "riesz.expansion",
        worst,
        tol,
        format!(
            "{} vectors, relative reconstruction error in both families",
            vectors.len()
        ),
    ))
}

/// The two sides of the weighted frame inequality for one vector.
#[derive(Clone, Copy, Debug)]
pub struct FrameInequality {
    /// `Σ |α_k ⟨f,ψ_k⟩|²`
    pub coefficient_mass: f64,
    /// `‖Σ α_k ⟨f,ψ_k⟩ φ_k‖²`
    pub image_norm_sq: f64,
    pub lower: f64,
    pub upper: f64,
}

impl FrameInequality {
    /// Largest violation of `γ₁² s ≤ ‖v‖² ≤ γ₂² s`, relative to `max(1, γ₂² s)`.
    pub fn violation(&self) -> f64 {
        let low = self.lower.powi(2) * self.coefficient_mass - self.image_norm_sq;
        let high = self.image_norm_sq - self.upper.powi(2) * self.coefficient_mass;
        let scale = (self.upper.powi(2) * self.coefficient_mass).max(1.0);
        low.max(high).max(0.0) / scale
    }
}

pub fn frame_inequality(pair: &RieszBasisPair, alpha: &SequenceSpec, f: &[Complex64]) -> Result<FrameInequality> {
    let weights = alpha.take(pair.dim())?;
    let e = pair.expand(f)?;
    let coeffs: Vec<Complex64> = weights.iter().zip(&e.coeff_psi).map(|(a, c)| a * c).collect();
    let image = RieszBasisPair::synthesize(pair.phi(), &coeffs);
    Ok(FrameInequality {
        coefficient_mass: coeffs.iter().map(|c| c.norm_sqr()).sum(),
        image_norm_sq: norm(&image).powi(2),
        lower: pair.frame_lower(),
        upper: pair.frame_upper(),
    })
}

/// Weighted frame inequality over several vectors.
pub fn frame_inequality_check(
    pair: &RieszBasisPair,
    alpha: &SequenceSpec,
    vectors: &[Vec<Complex64>],
    tol: f64,
) -> Result<Check> {
    let mut worst = 0.0f64;
    for f in vectors {
        worst = worst.max(frame_inequality(pair, alpha, f)?.violation());
    }
    Ok(Check::residual(
        "riesz.frame_inequality",
        worst,
        tol,
        format!(
            "gamma1 = {:.6e}, gamma2 = {:.6e}, {} vectors",
            pair.frame_lower(),
            pair.frame_upper(),
            vectors.len()
        ),
    ))
}
