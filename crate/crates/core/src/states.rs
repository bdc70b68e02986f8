//! Three-qubit pure states and their reduced density matrices.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{vec_norm, DensityMatrix, Qubit};

/// Number of amplitudes of a three-qubit state.
pub const DIM: usize = 8;

/// The named states used throughout: `W`, its obverse `WBAR`, their equal
/// superposition `WWBAR`, and `GHZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedState {
    W,
    WBar,
    WWBar,
    Ghz,
}

impl NamedState {
    pub fn as_str(self) -> &'static str {
        match self {
            NamedState::W => "W",
            NamedState::WBar => "WBAR",
            NamedState::WWBar => "WWBAR",
            NamedState::Ghz => "GHZ",
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "W" => Ok(NamedState::W),
            "WBAR" => Ok(NamedState::WBar),
            "WWBAR" => Ok(NamedState::WWBar),
            "GHZ" => Ok(NamedState::Ghz),
            other => Err(Error::InvalidState(format!(
                "unknown state name `{other}` (expected W, WBAR, WWBAR or GHZ)"
            ))),
        }
    }
}

/// How a state is requested: by name, by the angle of
/// `cos(θ/2)|000> + sin(θ/2)|W>`, or by raw amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Named(NamedState),
    Theta(f64),
    Amplitudes([Complex64; DIM]),
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Named(n) => write!(f, "{n}"),
            StateSpec::Theta(t) => write!(f, "theta={t}"),
            StateSpec::Amplitudes(_) => f.write_str("amplitudes"),
        }
    }
}

/// Wire form: a record carrying exactly one of `name`, `theta`, `amplitudes`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateSpecRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    amplitudes: Option<Vec<[f64; 2]>>,
}

impl TryFrom<StateSpecRecord> for StateSpec {
    type Error = Error;

    fn try_from(rec: StateSpecRecord) -> Result<Self> {
        match (rec.name, rec.theta, rec.amplitudes) {
            (Some(name), None, None) => Ok(StateSpec::Named(name.parse()?)),
            (None, Some(theta), None) => Ok(StateSpec::Theta(theta)),
            (None, None, Some(amps)) => {
                if amps.len() != DIM {
                    return Err(Error::InvalidState(format!(
                        "expected {DIM} amplitudes, got {}",
                        amps.len()
                    )));
                }
                let mut out = [Complex64::new(0.0, 0.0); DIM];
                for (slot, [re, im]) in out.iter_mut().zip(amps) {
                    *slot = Complex64::new(re, im);
                }
                Ok(StateSpec::Amplitudes(out))
            }
            _ => Err(Error::InvalidState(
                "state spec needs exactly one of `name`, `theta`, `amplitudes`".into(),
            )),
        }
    }
}

impl From<&StateSpec> for StateSpecRecord {
    fn from(spec: &StateSpec) -> Self {
        let mut rec = StateSpecRecord {
            name: None,
            theta: None,
            amplitudes: None,
        };
        match spec {
            StateSpec::Named(n) => rec.name = Some(n.as_str().to_string()),
            StateSpec::Theta(t) => rec.theta = Some(*t),
            StateSpec::Amplitudes(a) => {
                rec.amplitudes = Some(a.iter().map(|z| [z.re, z.im]).collect())
            }
        }
        rec
    }
}

impl Serialize for StateSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StateSpecRecord::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = StateSpecRecord::deserialize(deserializer)?;
        StateSpec::try_from(rec).map_err(serde::de::Error::custom)
    }
}

/// Normalized three-qubit state vector, basis index `4a + 2b + c`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: [Complex64; DIM],
}

impl PureState {
    /// Renormalizes any non-zero vector.
    pub fn new(amplitudes: [Complex64; DIM]) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if !norm.is_finite() || norm < 1e-150 {
            return Err(Error::InvalidState("amplitudes cannot be normalized".into()));
        }
        let mut amplitudes = amplitudes;
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis state `|abc>` given its index.
    pub fn basis(index: usize) -> Result<Self> {
        if index >= DIM {
            return Err(Error::InvalidState(format!("basis index {index} out of range")));
        }
        let mut amps = [Complex64::new(0.0, 0.0); DIM];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: amps })
    }

    pub fn amplitudes(&self) -> &[Complex64; DIM] {
        &self.amplitudes
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(&self.amplitudes).expect("pure states are normalized")
    }

    /// `(U_A ⊗ U_B ⊗ U_C)|psi>`; each factor must be unitary.
    pub fn apply_local(&self, unitaries: &[LocalUnitary; 3]) -> Result<Self> {
        for u in unitaries {
            let d = u.unitarity_defect();
            if d > 1e-10 {
                return Err(Error::InvalidState(format!(
                    "local operator is not unitary (defect {d:.3e})"
                )));
            }
        }
        let mut out = [Complex64::new(0.0, 0.0); DIM];
        for (row, slot) in out.iter_mut().enumerate() {
            let (ra, rb, rc) = (row >> 2 & 1, row >> 1 & 1, row & 1);
            for (col, amp) in self.amplitudes.iter().enumerate() {
                let (ca, cb, cc) = (col >> 2 & 1, col >> 1 & 1, col & 1);
                *slot += unitaries[0].0[ra][ca]
                    * unitaries[1].0[rb][cb]
                    * unitaries[2].0[rc][cc]
                    * amp;
            }
        }
        Self::new(out)
    }
}

/// A 2x2 unitary acting on one qubit, rows then columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitary(pub [[Complex64; 2]; 2]);

impl LocalUnitary {
    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self([[o, z], [z, o]])
    }

    /// Largest entry of `|U^H U - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let u = &self.0;
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                let dot: Complex64 = (0..2).map(|k| u[k][i].conj() * u[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

fn symmetric_weight(weight: u32) -> [Complex64; DIM] {
    let members = (0..DIM).filter(|i| (*i as u32).count_ones() == weight).count();
    let amp = 1.0 / (members as f64).sqrt();
    let mut out = [Complex64::new(0.0, 0.0); DIM];
    for (i, slot) in out.iter_mut().enumerate() {
        if (i as u32).count_ones() == weight {
            *slot = Complex64::new(amp, 0.0);
        }
    }
    out
}

/// `|W> = (|100> + |010> + |001>)/√3`.
pub fn w_state() -> PureState {
    PureState {
        amplitudes: symmetric_weight(1),
    }
}

/// `|W̄> = (|011> + |101> + |110>)/√3`.
pub fn wbar_state() -> PureState {
    PureState {
        amplitudes: symmetric_weight(2),
    }
}

/// `(|W> + |W̄>)/√2`.
pub fn wwbar_state() -> PureState {
    let (w, wb) = (symmetric_weight(1), symmetric_weight(2));
    let mut out = [Complex64::new(0.0, 0.0); DIM];
    for i in 0..DIM {
        out[i] = (w[i] + wb[i]) * std::f64::consts::FRAC_1_SQRT_2;
    }
    PureState { amplitudes: out }
}

/// `(|000> + |111>)/√2`.
pub fn ghz_state() -> PureState {
    let mut out = [Complex64::new(0.0, 0.0); DIM];
    out[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    out[7] = out[0];
    PureState { amplitudes: out }
}

/// `cos(θ/2)|000> + sin(θ/2)|W>` for θ in `(0, π]`; exactly `|W>` at `θ = π`.
pub fn theta_state(theta: f64) -> Result<PureState> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::InvalidState(format!(
            "theta = {theta} outside (0, π]"
        )));
    }
    // cos(θ/2) written as sin((π-θ)/2) so that θ = π gives an exact zero.
    let c = ((PI - theta) / 2.0).sin();
    let s = (theta / 2.0).sin();
    let w = symmetric_weight(1);
    let mut out = [Complex64::new(0.0, 0.0); DIM];
    out[0] = Complex64::new(c, 0.0);
    for i in 1..DIM {
        out[i] = w[i] * s;
    }
    Ok(PureState { amplitudes: out })
}

pub fn build_state(spec: &StateSpec) -> Result<PureState> {
    match spec {
        StateSpec::Named(NamedState::W) => Ok(w_state()),
        StateSpec::Named(NamedState::WBar) => Ok(wbar_state()),
        StateSpec::Named(NamedState::WWBar) => Ok(wwbar_state()),
        StateSpec::Named(NamedState::Ghz) => Ok(ghz_state()),
        StateSpec::Theta(theta) => theta_state(*theta),
        StateSpec::Amplitudes(amps) => PureState::new(*amps),
    }
}

/// Every reduced state of a three-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalSet {
    pub rho_a: DensityMatrix,
    pub rho_b: DensityMatrix,
    pub rho_c: DensityMatrix,
    pub rho_ab: DensityMatrix,
    pub rho_ac: DensityMatrix,
    pub rho_bc: DensityMatrix,
    pub rho_abc: DensityMatrix,
}

pub fn marginals(psi: &PureState) -> MarginalSet {
    let rho_abc = psi.density();
    let pt = |keep: &[Qubit]| {
        rho_abc
            .partial_trace(keep)
            .expect("keep-sets are proper subsets of three qubits")
    };
    MarginalSet {
        rho_a: pt(&[Qubit::A]),
        rho_b: pt(&[Qubit::B]),
        rho_c: pt(&[Qubit::C]),
        rho_ab: pt(&[Qubit::A, Qubit::B]),
        rho_ac: pt(&[Qubit::A, Qubit::C]),
        rho_bc: pt(&[Qubit::B, Qubit::C]),
        rho_abc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;

    #[test]
    fn w_amplitudes() {
        let w = build_state(&StateSpec::Named(NamedState::W)).unwrap();
        let r = 1.0 / 3f64.sqrt();
        let expected = [0.0, r, r, 0.0, r, 0.0, 0.0, 0.0];
        for (a, e) in w.amplitudes().iter().zip(expected) {
            assert!((a - Complex64::new(e, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn wwbar_amplitudes() {
        let s = build_state(&StateSpec::Named(NamedState::WWBar)).unwrap();
        let r = 1.0 / 6f64.sqrt();
        for (i, a) in s.amplitudes().iter().enumerate() {
            let e = if i == 0 || i == 7 { 0.0 } else { r };
            assert!((a - Complex64::new(e, 0.0)).norm() < 1e-15, "index {i}");
        }
    }

    #[test]
    fn theta_pi_is_exactly_w() {
        let t = build_state(&StateSpec::Theta(PI)).unwrap();
        assert_eq!(t, w_state());
    }

    #[test]
    fn theta_domain() {
        assert!(theta_state(0.0).is_err());
        assert!(theta_state(-0.5).is_err());
        assert!(theta_state(PI + 1e-9).is_err());
        assert!(theta_state(f64::NAN).is_err());
        assert!(theta_state(1e-6).is_ok());
    }

    #[test]
    fn raw_amplitudes_are_renormalized() {
        let mut amps = [Complex64::new(0.0, 0.0); DIM];
        amps[0] = Complex64::new(1.0 + 1e-9, 0.0);
        let s = PureState::new(amps).unwrap();
        assert!((vec_norm(s.amplitudes()) - 1.0).abs() < 1e-15);
        assert!(PureState::new([Complex64::new(0.0, 0.0); DIM]).is_err());
    }

    #[test]
    fn w_marginals_match_closed_form() {
        let m = marginals(&w_state());
        let ab = ComplexMatrix::from_real(
            4,
            &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        )
        .unwrap()
        .scaled(1.0 / 3.0);
        assert!(m.rho_ab.matrix().max_abs_diff(&ab) < 1e-15);
        assert!(m.rho_ac.matrix().max_abs_diff(&ab) < 1e-15);
        let a = ComplexMatrix::diagonal(&[2.0 / 3.0, 1.0 / 3.0]);
        for rho in [&m.rho_a, &m.rho_b, &m.rho_c] {
            assert!(rho.matrix().max_abs_diff(&a) < 1e-15);
        }
    }

    #[test]
    fn wwbar_marginals_match_closed_form() {
        let m = marginals(&wwbar_state());
        let ab = ComplexMatrix::from_real(
            4,
            &[1.0, 1.0, 1.0, 0.0, 1.0, 2.0, 2.0, 1.0, 1.0, 2.0, 2.0, 1.0, 0.0, 1.0, 1.0, 1.0],
        )
        .unwrap()
        .scaled(1.0 / 6.0);
        assert!(m.rho_ab.matrix().max_abs_diff(&ab) < 1e-15);
        let a = ComplexMatrix::from_real(2, &[3.0, 2.0, 2.0, 3.0]).unwrap().scaled(1.0 / 6.0);
        assert!(m.rho_a.matrix().max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn product_state_marginals_are_projectors() {
        let m = marginals(&PureState::basis(0).unwrap());
        for rho in [&m.rho_a, &m.rho_b, &m.rho_c, &m.rho_ab, &m.rho_ac, &m.rho_bc, &m.rho_abc] {
            assert!((rho.purity() - 1.0).abs() < 1e-15);
            assert!((rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_states_have_equal_marginals() {
        let specs = [
            StateSpec::Named(NamedState::W),
            StateSpec::Named(NamedState::WBar),
            StateSpec::Named(NamedState::WWBar),
            StateSpec::Named(NamedState::Ghz),
            StateSpec::Theta(0.3),
            StateSpec::Theta(2.0),
        ];
        for spec in &specs {
            let m = marginals(&build_state(spec).unwrap());
            assert!(m.rho_a.matrix().max_abs_diff(m.rho_b.matrix()) < 1e-12, "{spec}");
            assert!(m.rho_a.matrix().max_abs_diff(m.rho_c.matrix()) < 1e-12, "{spec}");
            assert!(m.rho_ab.matrix().max_abs_diff(m.rho_ac.matrix()) < 1e-12, "{spec}");
        }
    }

    #[test]
    fn spec_record_requires_exactly_one_field() {
        let bad = StateSpecRecord {
            name: Some("W".into()),
            theta: Some(1.0),
            amplitudes: None,
        };
        assert!(StateSpec::try_from(bad).is_err());
        let none = StateSpecRecord {
            name: None,
            theta: None,
            amplitudes: None,
        };
        assert!(StateSpec::try_from(none).is_err());
        let short = StateSpecRecord {
            name: None,
            theta: None,
            amplitudes: Some(vec![[1.0, 0.0]; 3]),
        };
        assert!(StateSpec::try_from(short).is_err());
    }

    #[test]
    fn local_identity_is_a_no_op() {
        let id = LocalUnitary::identity();
        let s = wwbar_state();
        let t = s.apply_local(&[id, id, id]).unwrap();
        for (a, b) in s.amplitudes().iter().zip(t.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn non_unitary_local_operator_rejected() {
        let mut u = LocalUnitary::identity();
        u.0[0][0] = Complex64::new(2.0, 0.0);
        assert!(w_state().apply_local(&[u, LocalUnitary::identity(), LocalUnitary::identity()]).is_err());
    }
}
