//! Fixtures shared by the benchmarks.

use riesz_core::{random, ComplexMatrix, OperatorBundle, RieszBasisPair, SequenceSpec};

pub const DIMS: [usize; 3] = [8, 16, 32];

/// Seeded generator `T = I + 0.3R`.
pub fn generator(dim: usize) -> ComplexMatrix {
    random::random_generator(dim, 42)
}

/// `S_φ = TT*` for the seeded generator.
pub fn metric(dim: usize) -> ComplexMatrix {
    let t = generator(dim);
    &t * &t.adjoint()
}

pub fn bundle(dim: usize) -> OperatorBundle {
    let pair = RieszBasisPair::from_generator(generator(dim), 1e-10).expect("seeded generators are invertible");
    OperatorBundle::new(pair, SequenceSpec::power(1.0), 1e-10).expect("positive metric")
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_build() {
        for dim in super::DIMS {
            assert_eq!(super::bundle(dim).dim(), dim);
        }
    }
}
