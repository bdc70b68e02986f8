//! Shannon information of three discrete random variables `X`, `Y`, `Z`.
//!
//! With `Y` as the pivot the relevant quantities are
//! `x = H(Y:XZ)`, `y = H(Y:X)`, `z = H(Y:Z)` and `H(X:Z)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use crate::base::LogBase;
use crate::error::{Error, Result};

/// Slack below zero tolerated when checking an inequality.
pub const CHAIN_TOL: f64 = 1e-10;
/// Largest alphabet accepted by [`sample_pmf`].
pub const MAX_SAMPLED_ALPHABET: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
}

/// Joint probability mass function `p(x, y, z)`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf3 {
    dims: [usize; 3],
    p: Vec<f64>,
}

impl JointPmf3 {
    /// Entries must be `>= -1e-15` (clamped to zero) and sum to one within `1e-12`.
    pub fn new(dims: [usize; 3], p: Vec<f64>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::InvalidDistribution(format!("empty alphabet in {dims:?}")));
        }
        let cells = dims.iter().product::<usize>();
        if p.len() != cells {
            return Err(Error::InvalidDistribution(format!(
                "{} entries for alphabet sizes {dims:?}",
                p.len()
            )));
        }
        if let Some(bad) = p.iter().find(|v| !v.is_finite() || **v < -1e-15) {
            return Err(Error::InvalidDistribution(format!("entry {bad} is negative")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDistribution(format!("entries sum to {total}")));
        }
        Ok(Self {
            dims,
            p: p.into_iter().map(|v| v.max(0.0)).collect(),
        })
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> f64 {
        self.p[(x * self.dims[1] + y) * self.dims[2] + z]
    }

    /// Marginal over `vars` (any order), flattened with the listed variables
    /// in ascending `X, Y, Z` order.
    pub fn marginal(&self, vars: &[Var]) -> Vec<f64> {
        let mut keep = [false; 3];
        for v in vars {
            keep[*v as usize] = true;
        }
        let size: usize = (0..3).filter(|&k| keep[k]).map(|k| self.dims[k]).product();
        let mut out = vec![0.0; size];
        let [dx, dy, dz] = self.dims;
        for x in 0..dx {
            for y in 0..dy {
                for z in 0..dz {
                    let idx = [x, y, z];
                    let mut flat = 0;
                    for k in 0..3 {
                        if keep[k] {
                            flat = flat * self.dims[k] + idx[k];
                        }
                    }
                    out[flat] += self.get(x, y, z);
                }
            }
        }
        out
    }
}

fn check_group(group: &[Var], what: &str) -> Result<()> {
    if group.is_empty() {
        return Err(Error::InvalidGroups(format!("{what} group is empty")));
    }
    let mut seen = [false; 3];
    for v in group {
        if std::mem::replace(&mut seen[*v as usize], true) {
            return Err(Error::InvalidGroups(format!("{what} group repeats {v:?}")));
        }
    }
    Ok(())
}

/// Shannon entropy of the marginal over `vars`, with `0 log 0 = 0`.
pub fn entropy(pmf: &JointPmf3, vars: &[Var], base: LogBase) -> Result<f64> {
    check_group(vars, "entropy")?;
    let h: f64 = -pmf.marginal(vars).iter().map(|&p| base.plogp(p)).sum::<f64>();
    Ok(h.max(0.0))
}

/// `H(L) + H(R) - H(L ∪ R)` for disjoint non-empty groups.
pub fn mutual_information(pmf: &JointPmf3, left: &[Var], right: &[Var], base: LogBase) -> Result<f64> {
    check_group(left, "left")?;
    check_group(right, "right")?;
    if left.iter().any(|v| right.contains(v)) {
        return Err(Error::InvalidGroups("groups overlap".into()));
    }
    let union: Vec<Var> = left.iter().chain(right).copied().collect();
    Ok(entropy(pmf, left, base)? + entropy(pmf, right, base)? - entropy(pmf, &union, base)?)
}

/// `H(target | given)` evaluated directly as `sum_c p(c) H(target | given = c)`.
pub fn conditional_entropy(pmf: &JointPmf3, target: Var, given: &[Var], base: LogBase) -> Result<f64> {
    check_group(given, "conditioning")?;
    if given.contains(&target) {
        return Err(Error::InvalidGroups("target is also conditioned on".into()));
    }
    let mut cond: Vec<Var> = given.to_vec();
    cond.sort_unstable();

    let dims = pmf.dims();
    let cond_size: usize = cond.iter().map(|v| dims[*v as usize]).product();
    let t_size = dims[target as usize];
    // Regroup the joint marginal as [conditioning value][target value].
    let mut table = vec![vec![0.0; t_size]; cond_size];
    let [dx, dy, dz] = dims;
    for x in 0..dx {
        for y in 0..dy {
            for z in 0..dz {
                let idx = [x, y, z];
                let c = cond
                    .iter()
                    .fold(0, |acc, v| acc * dims[*v as usize] + idx[*v as usize]);
                table[c][idx[target as usize]] += pmf.get(x, y, z);
            }
        }
    }
    let mut h = 0.0;
    for row in &table {
        let pc: f64 = row.iter().sum();
        if pc <= 0.0 {
            continue;
        }
        h -= pc * row.iter().map(|&p| base.plogp(p / pc)).sum::<f64>();
    }
    Ok(h.max(0.0))
}

/// Mutual informations with `Y` as pivot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MiTriple {
    /// `H(Y:XZ)`
    pub x: f64,
    /// `H(Y:X)`
    pub y: f64,
    /// `H(Y:Z)`
    pub z: f64,
    /// `H(X:Z)`
    pub h_xz: f64,
    pub base: LogBase,
}

fn clamp_noise(v: f64) -> f64 {
    if (-1e-12..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

pub fn mi_triple(pmf: &JointPmf3, base: LogBase) -> MiTriple {
    use Var::*;
    let h = |vars: &[Var]| entropy(pmf, vars, base).expect("fixed non-empty groups");
    let (hx, hy, hz) = (h(&[X]), h(&[Y]), h(&[Z]));
    let (hxy, hyz, hxz, hxyz) = (h(&[X, Y]), h(&[Y, Z]), h(&[X, Z]), h(&[X, Y, Z]));
    MiTriple {
        x: clamp_noise(hy + hxz - hxyz),
        y: clamp_noise(hx + hy - hxy),
        z: clamp_noise(hy + hz - hyz),
        h_xz: clamp_noise(hx + hz - hxz),
        base,
    }
}

/// One inequality written as `slack >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub slack: f64,
    pub holds: bool,
}

impl InequalityCheck {
    fn new(slack: f64) -> Self {
        Self {
            slack,
            holds: slack >= -CHAIN_TOL,
        }
    }
}

/// The inequalities leading from strong subadditivity to power monogamy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityChain {
    /// `H(X,Y) + H(Y,Z) - H(X,Y,Z) - H(Y) >= 0`
    pub strong_subadditivity: InequalityCheck,
    /// `x + H(X:Z) - y - z >= 0`
    pub four_term_bound: InequalityCheck,
    /// `y + z - x >= 0`
    pub reversed_monogamy: InequalityCheck,
    /// `x - y >= 0`
    pub discard_z: InequalityCheck,
    /// `x - z >= 0`
    pub discard_x: InequalityCheck,
}

impl InequalityChain {
    pub const NAMES: [&'static str; 5] = [
        "strong_subadditivity",
        "four_term_bound",
        "reversed_monogamy",
        "discard_z",
        "discard_x",
    ];

    pub fn checks(&self) -> [InequalityCheck; 5] {
        [
            self.strong_subadditivity,
            self.four_term_bound,
            self.reversed_monogamy,
            self.discard_z,
            self.discard_x,
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.checks().iter().all(|c| c.holds)
    }
}

pub fn verify_inequality_chain(pmf: &JointPmf3, base: LogBase) -> InequalityChain {
    use Var::*;
    let h = |vars: &[Var]| entropy(pmf, vars, base).expect("fixed non-empty groups");
    let t = mi_triple(pmf, base);
    InequalityChain {
        strong_subadditivity: InequalityCheck::new(h(&[X, Y]) + h(&[Y, Z]) - h(&[X, Y, Z]) - h(&[Y])),
        four_term_bound: InequalityCheck::new(t.x + t.h_xz - t.y - t.z),
        reversed_monogamy: InequalityCheck::new(t.y + t.z - t.x),
        discard_z: InequalityCheck::new(t.x - t.y),
        discard_x: InequalityCheck::new(t.x - t.z),
    }
}

/// Smallest `n <= n_max` with `y^n + z^n <= x^n (1 + tol)`.
///
/// When one of `y, z` reaches `x` while the other is positive no power can
/// work, and `None` is returned regardless of `tol`.
pub fn min_mi_power(t: &MiTriple, n_max: u32, tol: f64) -> Option<u32> {
    let (x, y, z) = (t.x, t.y, t.z);
    let saturated = |a: f64, b: f64| a >= x - tol && b > tol;
    if saturated(y, z) || saturated(z, y) {
        return None;
    }
    if x <= 0.0 {
        // The guard above leaves only y, z within tol of zero here.
        return (n_max >= 1).then_some(1);
    }
    // Compared relative to x^n so that small informations do not slip under
    // an absolute floor (and their high powers do not underflow).
    (1..=n_max).find(|&n| {
        let k = n as i32;
        (y / x).powi(k) + (z / x).powi(k) <= 1.0 + tol
    })
}

/// Uniform draw from the probability simplex on `dims` (normalized
/// independent unit exponentials), deterministic per seed.
pub fn sample_pmf(dims: [usize; 3], seed: u64) -> Result<JointPmf3> {
    if dims.iter().any(|d| !(2..=MAX_SAMPLED_ALPHABET).contains(d)) {
        return Err(Error::InvalidDistribution(format!(
            "sampled alphabet sizes must lie in 2..={MAX_SAMPLED_ALPHABET}, got {dims:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = dims.iter().product::<usize>();
    let draws: Vec<f64> = (0..cells).map(|_| Exp1.sample(&mut rng)).collect();
    let total: f64 = draws.iter().sum();
    JointPmf3::new(dims, draws.into_iter().map(|d| d / total).collect())
}
