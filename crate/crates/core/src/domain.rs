//! Sequence-level domain diagnostics.
//!
//! Domains of the operators built here are summability conditions
//! `Σ |w_n|² |c_n|² < ∞` where `c_n` are expansion coefficients of `f` and
//! `w_n` an effective weight. A finite computation cannot decide
//! convergence, so [`summability_verdict`] answers with a three-valued
//! verdict from dyadic block sums.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::SequenceSpec;

/// Ratio below which consecutive block sums count as decaying.
pub const DECAY_RATIO: f64 = 0.9;
/// Partial sums above this are reported as divergent.
pub const DIVERGENCE_BOUND: f64 = 1e12;
/// Default evaluation range.
pub const DEFAULT_N_MAX: usize = 4096;
pub const MIN_N_MAX: usize = 64;
/// Slack allowed between head and full-range ratio maxima in
/// [`domain_inclusion`].
pub const INCLUSION_SLACK: f64 = 0.05;

/// Nonnegative sequence `|w_n|`.
pub trait Weights {
    /// `None` when the sequence cannot be evaluated at `n`.
    fn weight(&self, n: usize) -> Option<f64>;
}

impl Weights for SequenceSpec {
    fn weight(&self, n: usize) -> Option<f64> {
        self.term(n).map(|z| z.norm())
    }
}

/// `|base_{n+shift}|^power`.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveWeight {
    pub base: SequenceSpec,
    pub shift: usize,
    pub power: i32,
}

impl EffectiveWeight {
    pub fn new(base: SequenceSpec, shift: usize, power: i32) -> Self {
        Self { base, shift, power }
    }
}

impl Weights for EffectiveWeight {
    fn weight(&self, n: usize) -> Option<f64> {
        self.base.weight(n + self.shift).map(|w| w.powi(self.power))
    }
}

/// Operators whose domains are summability predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    H,
    S,
    A,
    B,
    AB,
    BA,
}

/// Domain predicate: one weight, or two that must both be summable.
#[derive(Clone, Debug, PartialEq)]
pub enum DomainPredicate {
    Single(EffectiveWeight),
    Conjunction(EffectiveWeight, EffectiveWeight),
}

/// Effective weights defining `D(op)` for the sequence attached to `op`
/// (`α` for `H`, `β` for `S`, `γ` for the ladder operators).
///
/// Without `|γ|` monotone the product domains are the two-condition
/// conjunction `Σ|γ|²|c|² < ∞ ∧ Σ|γ|⁴|c|² < ∞`.
pub fn domain_of(kind: OperatorKind, weights: &SequenceSpec) -> DomainPredicate {
    let w = |shift, power| EffectiveWeight::new(weights.clone(), shift, power);
    match kind {
        OperatorKind::H | OperatorKind::S | OperatorKind::A => DomainPredicate::Single(w(0, 1)),
        OperatorKind::B => DomainPredicate::Single(w(1, 1)),
        OperatorKind::BA | OperatorKind::AB => {
            let shift = usize::from(kind == OperatorKind::AB);
            if weights.is_abs_monotone() {
                DomainPredicate::Single(w(shift, 2))
            } else {
                DomainPredicate::Conjunction(w(shift, 1), w(shift, 2))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converged,
    Diverged,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DomainVerdict {
    pub verdict: Verdict,
    #[serde(serialize_with = "crate::report::sci17")]
    pub partial_sum: f64,
    /// Last dyadic block sum over the one before it.
    #[serde(serialize_with = "crate::report::sci17")]
    pub tail_ratio: f64,
    pub n_max: usize,
}

fn block_ratio(prev: f64, next: f64) -> f64 {
    if next == 0.0 {
        0.0
    } else if prev == 0.0 {
        f64::INFINITY
    } else {
        next / prev
    }
}

/// Decides `Σ_{n<n_max} |w_n c_n|²` from dyadic blocks
/// `B_j = Σ_{2^j ≤ n < 2^{j+1}} |w_n c_n|²`:
///
/// * diverged if the partial sum exceeds [`DIVERGENCE_BOUND`] or the last
///   three block ratios are all `≥ 1`;
/// * converged if the last three block ratios are all `< DECAY_RATIO`;
/// * inconclusive otherwise.
pub fn summability_verdict(weights: &impl Weights, coeffs: &impl Weights, n_max: usize) -> Result<DomainVerdict> {
    if n_max < MIN_N_MAX {
        return Err(Error::InvalidParameter(format!(
            "n_max must be at least {MIN_N_MAX}, got {n_max}"
        )));
    }
    let mut terms = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let (w, c) = match (weights.weight(n), coeffs.weight(n)) {
            (Some(w), Some(c)) => (w, c),
            _ => {
                return Err(Error::SequenceTooShort {
                    needed: n_max,
                    available: n,
                })
            }
        };
        let t = (w * c).powi(2);
        terms.push(if t.is_nan() { f64::INFINITY } else { t });
    }
    let partial_sum: f64 = terms.iter().sum();

    let mut blocks = Vec::new();
    let mut start = 1usize;
    while 2 * start <= n_max {
        blocks.push(terms[start..2 * start].iter().sum::<f64>());
        start *= 2;
    }
    let tail = &blocks[blocks.len() - 4..];
    let ratios: Vec<f64> = tail.windows(2).map(|w| block_ratio(w[0], w[1])).collect();
    let tail_ratio = ratios[2];

    let verdict = if partial_sum.is_nan() || partial_sum > DIVERGENCE_BOUND || ratios.iter().all(|&r| r >= 1.0) {
        Verdict::Diverged
    } else if ratios.iter().all(|&r| r < DECAY_RATIO) {
        Verdict::Converged
    } else {
        Verdict::Inconclusive
    };
    Ok(DomainVerdict {
        verdict,
        partial_sum,
        tail_ratio,
        n_max,
    })
}

/// Verdict for a domain predicate: a conjunction converges only if both
/// parts do, and diverges if either does.
pub fn predicate_verdict(predicate: &DomainPredicate, coeffs: &impl Weights, n_max: usize) -> Result<DomainVerdict> {
    match predicate {
        DomainPredicate::Single(w) => summability_verdict(w, coeffs, n_max),
        DomainPredicate::Conjunction(a, b) => {
            let va = summability_verdict(a, coeffs, n_max)?;
            let vb = summability_verdict(b, coeffs, n_max)?;
            let rank = |v: &DomainVerdict| match v.verdict {
                Verdict::Diverged => 2,
                Verdict::Inconclusive => 1,
                Verdict::Converged => 0,
            };
            Ok(if rank(&vb) > rank(&va) { vb } else { va })
        }
    }
}

/// Outcome of a termwise-domination test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inclusion {
    /// `true` means `D(wa) ⊆ D(wb)` is established; `false` means only that
    /// it was not established.
    pub established: bool,
    /// `max_n |wb_n| / |wa_n|`.
    pub constant: f64,
}

/// Termwise domination `|wb_n| ≤ C |wa_n|`, a sufficient condition for
/// `D(wa) ⊆ D(wb)`.
///
/// The ratio `|wb_n|/|wa_n|` is considered bounded when its maximum over the
/// whole range exceeds the maximum over the first half by at most
/// [`INCLUSION_SLACK`]. Indices in the first half where `wa_n = 0` are
/// ignored; a vanishing `wa_n` under a nonzero `wb_n` in the second half
/// means domination is not established.
pub fn domain_inclusion(wa: &impl Weights, wb: &impl Weights, n_max: usize) -> Result<Inclusion> {
    if n_max < 2 {
        return Err(Error::InvalidParameter("n_max must be at least 2".into()));
    }
    let half = n_max / 2;
    let mut head = 0.0f64;
    let mut all = 0.0f64;
    for n in 0..n_max {
        let (a, b) = match (wa.weight(n), wb.weight(n)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::SequenceTooShort {
                    needed: n_max,
                    available: n,
                })
            }
        };
        let ratio = if b == 0.0 {
            0.0
        } else if a == 0.0 {
            if n < half {
                continue;
            }
            f64::INFINITY
        } else {
            b / a
        };
        if n < half {
            head = head.max(ratio);
        }
        all = all.max(ratio);
    }
    let established = all.is_finite() && all <= head * (1.0 + INCLUSION_SLACK);
    Ok(Inclusion {
        established,
        constant: all,
    })
}
