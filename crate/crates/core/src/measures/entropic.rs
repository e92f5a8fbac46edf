use super::{optimal_conditional_entropy, MeasureResult, OptimizerSettings};
use crate::error::{Error, Result};
use crate::linalg::{von_neumann_entropy, LogBase, Subsystem};
use crate::states::DensityMatrix;

/// Agreement demanded between the two algebraic routes to the discord.
const ROUTE_AGREEMENT: f64 = 1e-12;

fn entropy(m: &crate::linalg::ComplexMatrix) -> Result<f64> {
    von_neumann_entropy(m, LogBase::Bits)
}

/// `I = S(ρ_A) + S(ρ_B) − S(ρ)`.
pub fn mutual_information(rho: &DensityMatrix) -> Result<MeasureResult> {
    let s_a = entropy(&rho.reduced(Subsystem::A))?;
    let s_b = entropy(&rho.reduced(Subsystem::B))?;
    let s = entropy(rho.matrix())?;
    Ok(MeasureResult::oracle(s_a + s_b - s))
}

/// Classical correlation `S(ρ_other) − min S(ρ_other | {Π})`, maximised over
/// projective measurements on `measured`.
pub fn classical_correlation(
    rho: &DensityMatrix,
    measured: Subsystem,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    let cond = optimal_conditional_entropy(rho, measured, settings)?;
    let s_other = entropy(&rho.reduced(measured.other()))?;
    Ok(MeasureResult {
        optimizer: cond.optimizer,
        ..MeasureResult::oracle(s_other - cond.value)
    })
}

/// Quantum discord `S(ρ_measured) − S(ρ) + min S(ρ_other | {Π})`.
///
/// Also evaluated as `I − CC` from the same optimum; the two must agree.
pub fn quantum_discord(
    rho: &DensityMatrix,
    measured: Subsystem,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    let cond = optimal_conditional_entropy(rho, measured, settings)?;
    let s_measured = entropy(&rho.reduced(measured))?;
    let s_other = entropy(&rho.reduced(measured.other()))?;
    let s = entropy(rho.matrix())?;

    let direct = s_measured - s + cond.value;
    let via_mutual = (s_measured + s_other - s) - (s_other - cond.value);
    if (direct - via_mutual).abs() > ROUTE_AGREEMENT {
        return Err(Error::Numerical(format!(
            "discord routes disagree: {direct} vs {via_mutual}"
        )));
    }
    Ok(MeasureResult {
        optimizer: cond.optimizer,
        ..MeasureResult::oracle(direct)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{initial_state, StateParams};
    use crate::testing::random_state;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    fn settings() -> OptimizerSettings {
        OptimizerSettings::default()
    }

    #[test]
    fn mutual_information_reference() {
        assert_abs_diff_eq!(
            mutual_information(&DensityMatrix::basis(0, 0).unwrap()).unwrap().value,
            0.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            mutual_information(&DensityMatrix::singlet()).unwrap().value,
            2.0,
            epsilon = 1e-12
        );
        let rho = initial_state(&StateParams::new(FRAC_PI_4).unwrap());
        assert_abs_diff_eq!(
            mutual_information(&rho).unwrap().value,
            1.188_721_875_540_867,
            epsilon = 1e-12
        );
    }

    #[test]
    fn classical_correlation_reference() {
        let cc = classical_correlation(&DensityMatrix::basis(0, 0).unwrap(), Subsystem::A, &settings()).unwrap();
        assert_abs_diff_eq!(cc.value, 0.0, epsilon = 1e-12);
        for theta in [0.2, FRAC_PI_4, 1.3, 2.5] {
            let rho = initial_state(&StateParams::new(theta).unwrap());
            let cc = classical_correlation(&rho, Subsystem::A, &settings()).unwrap();
            assert_abs_diff_eq!(cc.value, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn discord_reference() {
        let s = settings();
        assert_abs_diff_eq!(
            quantum_discord(&DensityMatrix::singlet(), Subsystem::A, &s)
                .unwrap()
                .value,
            1.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            quantum_discord(&DensityMatrix::basis(0, 0).unwrap(), Subsystem::A, &s)
                .unwrap()
                .value,
            0.0,
            epsilon = 1e-12
        );
        let rho = initial_state(&StateParams::new(FRAC_PI_4).unwrap());
        // 3 ln 3 / ln 16 − 1
        let want = 3.0 * 3f64.ln() / 16f64.ln() - 1.0;
        assert_abs_diff_eq!(
            quantum_discord(&rho, Subsystem::A, &s).unwrap().value,
            want,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            quantum_discord(&rho, Subsystem::B, &s).unwrap().value,
            want,
            epsilon = 1e-9
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn discord_bounds(rho in random_state()) {
            let s = settings();
            let d = quantum_discord(&rho, Subsystem::A, &s).unwrap().value;
            let i = mutual_information(&rho).unwrap().value;
            let cc = classical_correlation(&rho, Subsystem::A, &s).unwrap().value;
            prop_assert!((0.0..=1.0 + 1e-9).contains(&d));
            prop_assert!(cc >= -1e-9 && cc <= i + 1e-9);
            prop_assert!((d - (i - cc)).abs() < 1e-9);
        }
    }
}
