use super::MeasureResult;
use crate::error::Result;
use crate::linalg::{hermitian_eigen, pauli, tensor, ComplexMatrix, C64, ZERO_CLAMP};
use crate::states::DensityMatrix;

fn sigma_yy() -> ComplexMatrix {
    tensor(&pauli::sigma_y(), &pauli::sigma_y()).expect("2x2 factors")
}

/// Spin-flipped state `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`, with `ρ*` the entrywise
/// conjugate in the computational basis.
pub fn spin_flip(rho: &ComplexMatrix) -> ComplexMatrix {
    rho.conj().conjugate_by(&sigma_yy())
}

/// Positive square root of a PSD matrix; eigenvalues below the zero clamp
/// are set to zero first.
fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m, 1e-10)?;
    Ok(eig.map_spectrum(|v| if v > ZERO_CLAMP { v.sqrt() } else { 0.0 }))
}

/// `χ₁ ≥ χ₂ ≥ χ₃ ≥ χ₄`, the square roots of the eigenvalues of `ρρ̃`.
///
/// They are obtained as singular values of `K = √ρ √ρ̃` (since
/// `K K† = √ρ ρ̃ √ρ`), read off as the non-negative half of the spectrum of
/// the Hermitian block matrix `[[0, K], [K†, 0]]`. This avoids taking square
/// roots of eigenvalues near zero.
pub fn spin_flip_singular_values(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let m = rho.matrix().hermitize();
    let root = psd_sqrt(&m)?;
    let root_flipped = spin_flip(&root);
    let k = root.matmul(&root_flipped);
    let block = ComplexMatrix::from_fn(8, |i, j| match (i < 4, j < 4) {
        (true, false) => k[(i, j - 4)],
        (false, true) => k[(j, i - 4)].conj(),
        _ => C64::new(0.0, 0.0),
    });
    let eig = hermitian_eigen(&block, 1e-12)?;
    let mut chi = [0.0; 4];
    for (c, v) in chi.iter_mut().zip(&eig.values) {
        *c = v.max(0.0);
    }
    Ok(chi)
}

/// `χ₁ − χ₂ − χ₃ − χ₄` before clamping at zero; negative once the state is
/// separable.
pub fn concurrence_margin(rho: &DensityMatrix) -> Result<f64> {
    let chi = spin_flip_singular_values(rho)?;
    Ok(chi[0] - chi[1] - chi[2] - chi[3])
}

/// Wootters concurrence `max(0, χ₁ − χ₂ − χ₃ − χ₄)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<MeasureResult> {
    let margin = concurrence_margin(rho)?;
    Ok(MeasureResult::oracle(margin.clamp(0.0, 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{initial_state, StateParams};
    use crate::testing::random_state;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn reference_states() {
        assert_abs_diff_eq!(
            concurrence(&DensityMatrix::singlet()).unwrap().value,
            1.0,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            concurrence(&DensityMatrix::maximally_mixed()).unwrap().value,
            0.0,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            concurrence(&DensityMatrix::basis(0, 1).unwrap()).unwrap().value,
            0.0,
            epsilon = 1e-13
        );
    }

    #[test]
    fn initial_family_quarter_pi() {
        let rho = initial_state(&StateParams::new(std::f64::consts::FRAC_PI_4).unwrap());
        assert_abs_diff_eq!(concurrence(&rho).unwrap().value, 0.5, epsilon = 1e-13);
        let chi = spin_flip_singular_values(&rho).unwrap();
        for (got, want) in chi.iter().zip([0.75, 0.25, 0.0, 0.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-13);
        }
    }

    #[test]
    fn spin_flip_uses_conjugate_not_dagger() {
        // |ψ⟩ = (|00⟩ + i|11⟩)/√2: ρ* differs from ρ† = ρ.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [
            C64::new(s, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, s),
        ];
        let rho = ComplexMatrix::projector(&psi);
        let flipped = spin_flip(&rho);
        assert!(flipped.max_abs_diff(&rho.dagger().conjugate_by(&sigma_yy())) > 0.1);
        let rho = DensityMatrix::new(rho).unwrap();
        assert_abs_diff_eq!(concurrence(&rho).unwrap().value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pure_state_formula() {
        // C(|ψ⟩) = 2|ad − bc| for |ψ⟩ = a|00⟩ + b|01⟩ + c|10⟩ + d|11⟩
        let raw = [
            C64::new(0.3, 0.1),
            C64::new(-0.2, 0.4),
            C64::new(0.5, -0.3),
            C64::new(0.1, 0.6),
        ];
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi: Vec<C64> = raw.iter().map(|z| z / norm).collect();
        let want = 2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm();
        let rho = DensityMatrix::new(ComplexMatrix::projector(&psi)).unwrap();
        assert_abs_diff_eq!(concurrence(&rho).unwrap().value, want, epsilon = 1e-12);
    }

    /// Independent route: eigenvalues of the Hermitian `√ρ ρ̃ √ρ`.
    fn chi_squared_route(rho: &DensityMatrix) -> [f64; 4] {
        let root = psd_sqrt(rho.matrix()).unwrap();
        let h = root.matmul(&spin_flip(rho.matrix())).matmul(&root);
        let e = hermitian_eigen(&h.hermitize(), 1e-10).unwrap();
        let mut out = [0.0; 4];
        for (o, v) in out.iter_mut().zip(&e.values) {
            *o = v.max(0.0).sqrt();
        }
        out
    }

    proptest! {
        #[test]
        fn concurrence_in_unit_interval(rho in random_state()) {
            let c = concurrence(&rho).unwrap().value;
            prop_assert!((0.0..=1.0).contains(&c));
        }

        #[test]
        fn singular_values_match_eigen_route(rho in random_state()) {
            // full-rank random states: no amplification near zero
            let a = spin_flip_singular_values(&rho).unwrap();
            let b = chi_squared_route(&rho);
            for (x, y) in a.iter().zip(b) {
                prop_assert!((x - y).abs() < 1e-7);
            }
        }
    }
}
