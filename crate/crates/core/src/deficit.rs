//! Rajagopal–Rendell quantum deficit: relative entropy between a bipartite
//! state and its decohered counterpart, the state dephased in the product of
//! the marginals' eigenbases.
//!
//! For a state `rho` with eigenvalues `lambda_i` and decohered diagonal `P`,
//!
//! ```text
//! D = sum_i lambda_i log lambda_i - sum_k P_k log P_k
//! ```

use serde::Serialize;

use crate::base::LogBase;
use crate::error::{Error, Result};
use crate::linalg::{
    kron_vec, spectral_entropy_term, DensityMatrix, EigenDecomposition, Qubit, Spectrum,
    DEGENERACY_TOL,
};
use crate::states::{build_state, marginals, MarginalSet, PureState, StateSpec};

/// Allowed mismatch between a supplied marginal and the partial trace of the joint state.
pub const MARGINAL_TOL: f64 = 1e-8;
/// Deficits in `[-NEGATIVE_TOL, 0)` are reported as zero.
pub const NEGATIVE_TOL: f64 = 1e-10;

/// Order in which each marginal's eigenvectors enumerate the product basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenOrder {
    #[default]
    Descending,
    Ascending,
}

impl EigenOrder {
    fn apply(self, e: EigenDecomposition) -> EigenDecomposition {
        match self {
            EigenOrder::Descending => e,
            EigenOrder::Ascending => e.reversed(),
        }
    }
}

/// Diagonal of a decohered state in the product eigenbasis, left factor major.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoheredDiagonal {
    probabilities: Vec<f64>,
}

impl DecoheredDiagonal {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.iter().any(|p| !p.is_finite() || *p < -NEGATIVE_TOL) {
            return Err(Error::InvalidDistribution(
                "decohered diagonal has negative entries".into(),
            ));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDistribution(format!(
                "decohered diagonal sums to {total}"
            )));
        }
        Ok(Self {
            probabilities: probabilities.into_iter().map(|p| p.clamp(0.0, 1.0)).collect(),
        })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// `sum_k P_k log P_k`.
    pub fn entropy_term(&self, base: LogBase) -> f64 {
        self.probabilities.iter().map(|&p| base.plogp(p)).sum()
    }
}

fn check_dim(rho: &DensityMatrix, expected: usize) -> Result<()> {
    if rho.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: rho.dim(),
        });
    }
    Ok(())
}

fn marginal_deviation(joint: &DensityMatrix, keep: &[Qubit], given: &DensityMatrix) -> Result<f64> {
    Ok(joint.partial_trace(keep)?.matrix().max_abs_diff(given.matrix()))
}

fn product_diagonal(
    rho: &DensityMatrix,
    left: &EigenDecomposition,
    right: &EigenDecomposition,
) -> Result<DecoheredDiagonal> {
    let mut probs = Vec::with_capacity(left.len() * right.len());
    for a in left.vectors() {
        for b in right.vectors() {
            probs.push(rho.matrix().quadratic_form(&kron_vec(a, b))?.re);
        }
    }
    DecoheredDiagonal::new(probs)
}

/// Decohered diagonal of a two-qubit state in the eigenbases of its two
/// single-qubit marginals, eigenvectors in descending eigenvalue order.
pub fn decohere_pair(
    rho_pair: &DensityMatrix,
    rho_left: &DensityMatrix,
    rho_right: &DensityMatrix,
) -> Result<DecoheredDiagonal> {
    decohere_pair_ordered(rho_pair, rho_left, rho_right, EigenOrder::Descending)
}

pub fn decohere_pair_ordered(
    rho_pair: &DensityMatrix,
    rho_left: &DensityMatrix,
    rho_right: &DensityMatrix,
    order: EigenOrder,
) -> Result<DecoheredDiagonal> {
    check_dim(rho_pair, 4)?;
    check_dim(rho_left, 2)?;
    check_dim(rho_right, 2)?;
    let deviation = marginal_deviation(rho_pair, &[Qubit::A], rho_left)?
        .max(marginal_deviation(rho_pair, &[Qubit::B], rho_right)?);
    if deviation > MARGINAL_TOL {
        return Err(Error::InconsistentMarginals { deviation });
    }
    let left = order.apply(rho_left.eigh()?);
    let right = order.apply(rho_right.eigh()?);
    product_diagonal(rho_pair, &left, &right)
}

/// Decohered diagonal of a pure three-qubit state across the cut `A:BC`,
/// over `chi_i ⊗ eta_j` (i major) with `chi` the eigenvectors of `rho_A` and
/// `eta` those of `rho_BC`.
pub fn decohere_bipartition(
    rho_abc: &DensityMatrix,
    rho_a: &DensityMatrix,
    rho_bc: &DensityMatrix,
) -> Result<DecoheredDiagonal> {
    decohere_bipartition_ordered(rho_abc, rho_a, rho_bc, EigenOrder::Descending)
}

pub fn decohere_bipartition_ordered(
    rho_abc: &DensityMatrix,
    rho_a: &DensityMatrix,
    rho_bc: &DensityMatrix,
    order: EigenOrder,
) -> Result<DecoheredDiagonal> {
    check_dim(rho_abc, 8)?;
    check_dim(rho_a, 2)?;
    check_dim(rho_bc, 4)?;
    let purity = rho_abc.purity();
    if (purity - 1.0).abs() > MARGINAL_TOL {
        return Err(Error::MixedState { purity });
    }
    let deviation = marginal_deviation(rho_abc, &[Qubit::A], rho_a)?
        .max(marginal_deviation(rho_abc, &[Qubit::B, Qubit::C], rho_bc)?);
    if deviation > MARGINAL_TOL {
        return Err(Error::InconsistentMarginals { deviation });
    }
    let chi = order.apply(rho_a.eigh()?);
    let eta = order.apply(rho_bc.eigh()?);
    product_diagonal(rho_abc, &chi, &eta)
}

/// `sum lambda log lambda - sum P log P`, with values within `1e-10` below
/// zero clamped to zero.
pub fn quantum_deficit(spectrum: &Spectrum, diagonal: &DecoheredDiagonal, base: LogBase) -> f64 {
    let d = spectral_entropy_term(spectrum, base) - diagonal.entropy_term(base);
    if (-NEGATIVE_TOL..0.0).contains(&d) {
        0.0
    } else {
        d
    }
}

/// The three deficits entering the monogamy relation `D_AB + D_AC <= D_A:BC`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeficitReport {
    pub state: StateSpec,
    pub base: LogBase,
    pub d_ab: f64,
    pub d_ac: f64,
    pub d_a_bc: f64,
    /// Some marginal whose eigenbasis defines the dephasing has a degenerate
    /// eigenvalue, so the deficit depends on the basis convention.
    pub degenerate_marginal: bool,
}

impl DeficitReport {
    /// `D_A:BC - D_AB - D_AC`.
    pub fn monogamy_gap(&self) -> f64 {
        self.d_a_bc - self.d_ab - self.d_ac
    }
}

pub fn deficit_report(spec: &StateSpec, base: LogBase) -> Result<DeficitReport> {
    let psi = build_state(spec)?;
    let mut report = report_for_state(&psi, base, EigenOrder::Descending)?;
    report.state = spec.clone();
    Ok(report)
}

/// Deficit report of an explicit pure state; the recorded spec is its amplitudes.
pub fn report_for_state(psi: &PureState, base: LogBase, order: EigenOrder) -> Result<DeficitReport> {
    let m = marginals(psi);
    report_from_marginals(&m, base, order).map(|(d_ab, d_ac, d_a_bc, degenerate_marginal)| {
        DeficitReport {
            state: StateSpec::Amplitudes(*psi.amplitudes()),
            base,
            d_ab,
            d_ac,
            d_a_bc,
            degenerate_marginal,
        }
    })
}

fn report_from_marginals(
    m: &MarginalSet,
    base: LogBase,
    order: EigenOrder,
) -> Result<(f64, f64, f64, bool)> {
    let d_ab = quantum_deficit(
        &m.rho_ab.spectrum()?,
        &decohere_pair_ordered(&m.rho_ab, &m.rho_a, &m.rho_b, order)?,
        base,
    );
    let d_ac = quantum_deficit(
        &m.rho_ac.spectrum()?,
        &decohere_pair_ordered(&m.rho_ac, &m.rho_a, &m.rho_c, order)?,
        base,
    );
    let d_a_bc = quantum_deficit(
        &m.rho_abc.spectrum()?,
        &decohere_bipartition_ordered(&m.rho_abc, &m.rho_a, &m.rho_bc, order)?,
        base,
    );

    let mut degenerate = false;
    for single in [&m.rho_a, &m.rho_b, &m.rho_c] {
        degenerate |= single.eigh()?.has_degeneracy_above(f64::NEG_INFINITY);
    }
    // A degenerate null space of rho_BC carries no weight and does not count.
    degenerate |= m.rho_bc.eigh()?.has_degeneracy_above(DEGENERACY_TOL);

    Ok((d_ab, d_ac, d_a_bc, degenerate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ghz_state, w_state, wwbar_state, NamedState};

    fn sorted_nonzero(d: &DecoheredDiagonal) -> Vec<f64> {
        let mut v: Vec<f64> = d.probabilities().iter().copied().filter(|p| *p > 1e-12).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn w_pair_diagonal() {
        let m = marginals(&w_state());
        let d = decohere_pair(&m.rho_ab, &m.rho_a, &m.rho_b).unwrap();
        assert_close(d.probabilities(), &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0], 1e-14);
    }

    #[test]
    fn wwbar_pair_diagonal() {
        let m = marginals(&wwbar_state());
        let d = decohere_pair(&m.rho_ab, &m.rho_a, &m.rho_b).unwrap();
        assert_close(d.probabilities(), &[0.75, 1.0 / 12.0, 1.0 / 12.0, 1.0 / 12.0], 1e-14);
    }

    #[test]
    fn diagonal_state_decoheres_to_itself() {
        use crate::linalg::ComplexMatrix;
        let diag = [0.4, 0.3, 0.2, 0.1];
        let rho = DensityMatrix::new(ComplexMatrix::diagonal(&diag)).unwrap();
        let a = rho.partial_trace(&[Qubit::A]).unwrap();
        let b = rho.partial_trace(&[Qubit::B]).unwrap();
        let d = decohere_pair(&rho, &a, &b).unwrap();
        assert_close(d.probabilities(), &diag, 1e-15);
    }

    #[test]
    fn bipartition_diagonals() {
        let m = marginals(&w_state());
        let d = decohere_bipartition(&m.rho_abc, &m.rho_a, &m.rho_bc).unwrap();
        assert_close(&sorted_nonzero(&d), &[2.0 / 3.0, 1.0 / 3.0], 1e-14);

        let m = marginals(&wwbar_state());
        let d = decohere_bipartition(&m.rho_abc, &m.rho_a, &m.rho_bc).unwrap();
        assert_close(&sorted_nonzero(&d), &[5.0 / 6.0, 1.0 / 6.0], 1e-14);

        let m = marginals(&PureState::basis(0).unwrap());
        let d = decohere_bipartition(&m.rho_abc, &m.rho_a, &m.rho_bc).unwrap();
        assert_close(d.probabilities(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1e-15);
    }

    #[test]
    fn inconsistent_marginals_rejected() {
        let w = marginals(&w_state());
        let g = marginals(&ghz_state());
        match decohere_pair(&w.rho_ab, &g.rho_a, &w.rho_b) {
            Err(Error::InconsistentMarginals { deviation }) => {
                assert!((deviation - 1.0 / 6.0).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(decohere_bipartition(&w.rho_abc, &w.rho_a, &g.rho_bc).is_err());
    }

    #[test]
    fn mixed_tripartite_state_rejected() {
        use crate::linalg::ComplexMatrix;
        let mixed = DensityMatrix::new(ComplexMatrix::identity(8).scaled(0.125)).unwrap();
        let a = mixed.partial_trace(&[Qubit::A]).unwrap();
        let bc = mixed.partial_trace(&[Qubit::B, Qubit::C]).unwrap();
        assert!(matches!(
            decohere_bipartition(&mixed, &a, &bc),
            Err(Error::MixedState { .. })
        ));
    }

    #[test]
    fn closed_form_deficits() {
        let ln = f64::ln;
        // W: (2/3)ln(2/3) + (1/3)ln(1/3) - ln(1/3), and the binary entropy of 2/3.
        let w_pair = (2.0 / 3.0) * ln(2.0 / 3.0) + (1.0 / 3.0) * ln(1.0 / 3.0) - ln(1.0 / 3.0);
        let w_bip = -((2.0 / 3.0) * ln(2.0 / 3.0) + (1.0 / 3.0) * ln(1.0 / 3.0));
        // WWbar uses the computed marginal spectrum (5/6, 1/6).
        let h56 = (5.0 / 6.0) * ln(5.0 / 6.0) + (1.0 / 6.0) * ln(1.0 / 6.0);
        let ww_pair = h56 - (0.75 * ln(0.75) + 0.25 * ln(1.0 / 12.0));
        let ww_bip = -h56;

        let r = deficit_report(&StateSpec::Named(NamedState::W), LogBase::Nats).unwrap();
        assert!((r.d_ab - w_pair).abs() < 1e-12);
        assert!((r.d_ac - w_pair).abs() < 1e-12);
        assert!((r.d_a_bc - w_bip).abs() < 1e-12);
        assert!((r.d_ab - 0.462).abs() < 1e-3);
        assert!((r.d_a_bc - 0.636).abs() < 1e-3);
        assert!(!r.degenerate_marginal);

        let r = deficit_report(&StateSpec::Named(NamedState::WWBar), LogBase::Nats).unwrap();
        assert!((r.d_ab - ww_pair).abs() < 1e-12);
        assert!((r.d_a_bc - ww_bip).abs() < 1e-12);
        assert!((r.d_ab - 0.386).abs() < 1e-3);
        assert!((r.d_a_bc - 0.45).abs() < 1e-3);
    }

    #[test]
    fn ghz_in_both_bases() {
        let bits = deficit_report(&StateSpec::Named(NamedState::Ghz), LogBase::Bits).unwrap();
        assert!(bits.d_ab.abs() < 1e-12 && bits.d_ac.abs() < 1e-12);
        assert!((bits.d_a_bc - 1.0).abs() < 1e-12);
        assert!(bits.degenerate_marginal);
        let nats = deficit_report(&StateSpec::Named(NamedState::Ghz), LogBase::Nats).unwrap();
        assert!((nats.monogamy_gap() - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn product_state_has_no_deficit() {
        let r = report_for_state(&PureState::basis(0).unwrap(), LogBase::Nats, EigenOrder::Descending)
            .unwrap();
        assert_eq!((r.d_ab, r.d_ac, r.d_a_bc), (0.0, 0.0, 0.0));
    }

    #[test]
    fn purity_shortcut() {
        for spec in [
            StateSpec::Named(NamedState::W),
            StateSpec::Named(NamedState::WWBar),
            StateSpec::Theta(1.3),
        ] {
            let m = marginals(&build_state(&spec).unwrap());
            let diag = decohere_bipartition(&m.rho_abc, &m.rho_a, &m.rho_bc).unwrap();
            let shortcut = -diag.entropy_term(LogBase::Nats);
            let full = quantum_deficit(&m.rho_abc.spectrum().unwrap(), &diag, LogBase::Nats);
            assert!((full - shortcut).abs() < 1e-10, "{spec}");
        }
    }

    #[test]
    fn ordering_convention_is_irrelevant_when_non_degenerate() {
        for theta in [0.4, 1.0, 2.2, 3.0] {
            let psi = build_state(&StateSpec::Theta(theta)).unwrap();
            let d = report_for_state(&psi, LogBase::Nats, EigenOrder::Descending).unwrap();
            let a = report_for_state(&psi, LogBase::Nats, EigenOrder::Ascending).unwrap();
            assert!((d.d_ab - a.d_ab).abs() < 1e-12);
            assert!((d.d_a_bc - a.d_a_bc).abs() < 1e-12);
        }
    }
}
