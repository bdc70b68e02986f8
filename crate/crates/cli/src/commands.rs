use std::fmt::Write as _;

use qdeficit::classical::CHAIN_TOL;
use qdeficit::monogamy::DEFAULT_TOL;
use qdeficit::{
    deficit_report, min_mi_power, min_monogamy_power, mi_triple, power_scan, sample_pmf,
    theta_sweep, verify_inequality_chain, InequalityChain, JointPmf3, LogBase, NamedState,
    StateSpec,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::PmfSource;
use crate::output::{csv, num, opt_int, opt_num, ser12, ser12_opt};
use crate::CliError;

/// Powers listed per state in the reproduced table.
pub const TABLE1_POWERS: u32 = 5;

#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub state: &'static str,
    pub n: u32,
    #[serde(serialize_with = "ser12")]
    pub d_pair_n: f64,
    #[serde(serialize_with = "ser12")]
    pub d_bipart_n: f64,
    #[serde(serialize_with = "ser12")]
    pub delta_n: f64,
}

pub fn table1(base: LogBase) -> Result<Vec<Table1Row>, CliError> {
    let mut rows = Vec::new();
    for named in [NamedState::W, NamedState::WWBar] {
        let report = deficit_report(&StateSpec::Named(named), base)?;
        for r in power_scan(&report, TABLE1_POWERS) {
            rows.push(Table1Row {
                state: named.as_str(),
                n: r.n,
                d_pair_n: r.q_pair_n,
                d_bipart_n: r.q_bipart_n,
                delta_n: r.delta_n,
            });
        }
    }
    Ok(rows)
}

pub fn render_table1_csv(rows: &[Table1Row]) -> String {
    csv(
        &["state", "n", "d_pair_n", "d_bipart_n", "delta_n"],
        rows.iter().map(|r| {
            vec![
                r.state.to_string(),
                r.n.to_string(),
                num(r.d_pair_n),
                num(r.d_bipart_n),
                num(r.delta_n),
            ]
        }),
    )
}

pub fn render_table1_text(rows: &[Table1Row]) -> String {
    let mut out = String::new();
    writeln!(out, "{:<6} {:>3} {:>9} {:>10} {:>20}", "state", "n", "D^n_AB", "D^n_A:BC", "D^n_A:BC - 2 D^n_AB").unwrap();
    for r in rows {
        writeln!(
            out,
            "{:<6} {:>3} {:>9.3} {:>10.3} {:>20.3}",
            r.state, r.n, r.d_pair_n, r.d_bipart_n, r.delta_n
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Fig1Row {
    #[serde(serialize_with = "ser12")]
    pub theta: f64,
    pub n: u32,
    #[serde(serialize_with = "ser12")]
    pub d_pair_n: f64,
    #[serde(serialize_with = "ser12")]
    pub d_bipart_n: f64,
    #[serde(serialize_with = "ser12")]
    pub delta_n: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaPower {
    #[serde(serialize_with = "ser12")]
    pub theta: f64,
    pub r: Option<u32>,
    #[serde(serialize_with = "ser12_opt")]
    pub tau_q: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Fig1Summary {
    pub base: LogBase,
    pub n_max: u32,
    /// Largest minimal power over the grid points where one was found.
    pub max_r: Option<u32>,
    /// Grid points with no monogamous power up to `n_max`.
    pub unresolved: usize,
    pub points: Vec<ThetaPower>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Fig1 {
    pub rows: Vec<Fig1Row>,
    pub summary: Fig1Summary,
}

pub fn fig1(grid: &[f64], powers: &[u32], base: LogBase, n_max: u32) -> Result<Fig1, CliError> {
    let sweep = theta_sweep(grid, powers, base)?;
    let mut rows = Vec::with_capacity(sweep.len() * powers.len());
    let mut points = Vec::with_capacity(sweep.len());
    for p in &sweep {
        for r in &p.rows {
            rows.push(Fig1Row {
                theta: p.theta,
                n: r.n,
                d_pair_n: r.q_pair_n,
                d_bipart_n: r.q_bipart_n,
                delta_n: r.delta_n,
            });
        }
        let t = p.min_power(n_max, DEFAULT_TOL);
        points.push(ThetaPower {
            theta: p.theta,
            r: t.r,
            tau_q: t.tau_q,
        });
    }
    let summary = Fig1Summary {
        base,
        n_max,
        max_r: points.iter().filter_map(|p| p.r).max(),
        unresolved: points.iter().filter(|p| p.r.is_none()).count(),
        points,
    };
    Ok(Fig1 { rows, summary })
}

pub fn render_fig1_csv(f: &Fig1) -> String {
    csv(
        &["theta", "n", "d_pair_n", "d_bipart_n", "delta_n"],
        f.rows.iter().map(|r| {
            vec![num(r.theta), r.n.to_string(), num(r.d_pair_n), num(r.d_bipart_n), num(r.delta_n)]
        }),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct DeficitOutput {
    pub state: StateSpec,
    pub base: LogBase,
    #[serde(serialize_with = "ser12")]
    pub d_ab: f64,
    #[serde(serialize_with = "ser12")]
    pub d_ac: f64,
    #[serde(serialize_with = "ser12")]
    pub d_a_bc: f64,
    pub degenerate_marginal: bool,
    pub r: Option<u32>,
    #[serde(serialize_with = "ser12_opt")]
    pub tau_q: Option<f64>,
}

pub fn deficit(spec: &StateSpec, base: LogBase, n_max: u32) -> Result<DeficitOutput, CliError> {
    let report = deficit_report(spec, base)?;
    let t = min_monogamy_power(&report, n_max, DEFAULT_TOL);
    Ok(DeficitOutput {
        state: report.state.clone(),
        base,
        d_ab: report.d_ab,
        d_ac: report.d_ac,
        d_a_bc: report.d_a_bc,
        degenerate_marginal: report.degenerate_marginal,
        r: t.r,
        tau_q: t.tau_q,
    })
}

pub fn render_deficit_csv(d: &DeficitOutput) -> String {
    csv(
        &["state", "base", "d_ab", "d_ac", "d_a_bc", "degenerate_marginal", "r", "tau_q"],
        [vec![
            d.state.to_string(),
            d.base.to_string(),
            num(d.d_ab),
            num(d.d_ac),
            num(d.d_a_bc),
            d.degenerate_marginal.to_string(),
            opt_int(d.r),
            opt_num(d.tau_q),
        ]],
    )
}

pub fn render_deficit_text(d: &DeficitOutput) -> String {
    let mut out = String::new();
    writeln!(out, "state                {}", d.state).unwrap();
    writeln!(out, "base                 {}", d.base).unwrap();
    writeln!(out, "D_AB                 {:.3}", d.d_ab).unwrap();
    writeln!(out, "D_AC                 {:.3}", d.d_ac).unwrap();
    writeln!(out, "D_A:BC               {:.3}", d.d_a_bc).unwrap();
    writeln!(out, "degenerate marginal  {}", d.degenerate_marginal).unwrap();
    writeln!(out, "r                    {}", opt_int(d.r)).unwrap();
    writeln!(
        out,
        "tau_q                {}",
        d.tau_q.map(|t| format!("{t:.3}")).unwrap_or_else(|| "none".into())
    )
    .unwrap();
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    /// Seed of the sampled instance; absent for an explicit distribution.
    pub seed: Option<u64>,
    #[serde(serialize_with = "ser12")]
    pub x: f64,
    #[serde(serialize_with = "ser12")]
    pub y: f64,
    #[serde(serialize_with = "ser12")]
    pub z: f64,
    #[serde(serialize_with = "ser12")]
    pub h_xz: f64,
    pub min_n: Option<u32>,
    #[serde(serialize_with = "ser12")]
    pub slack_strong_subadditivity: f64,
    #[serde(serialize_with = "ser12")]
    pub slack_four_term_bound: f64,
    #[serde(serialize_with = "ser12")]
    pub slack_reversed_monogamy: f64,
    #[serde(serialize_with = "ser12")]
    pub slack_discard_z: f64,
    #[serde(serialize_with = "ser12")]
    pub slack_discard_x: f64,
}

/// Violations (slack below `-1e-10`) per inequality.
#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct ViolationCounts {
    pub strong_subadditivity: u64,
    pub four_term_bound: u64,
    pub reversed_monogamy: u64,
    pub discard_z: u64,
    pub discard_x: u64,
}

impl ViolationCounts {
    fn add(&mut self, chain: &InequalityChain) {
        let bump = |c: &mut u64, holds: bool| *c += u64::from(!holds);
        bump(&mut self.strong_subadditivity, chain.strong_subadditivity.holds);
        bump(&mut self.four_term_bound, chain.four_term_bound.holds);
        bump(&mut self.reversed_monogamy, chain.reversed_monogamy.holds);
        bump(&mut self.discard_z, chain.discard_z.holds);
        bump(&mut self.discard_x, chain.discard_x.holds);
    }

    pub fn total(&self) -> u64 {
        self.strong_subadditivity
            + self.four_term_bound
            + self.reversed_monogamy
            + self.discard_z
            + self.discard_x
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub samples: u64,
    pub dims: [usize; 3],
    pub seed: Option<u64>,
    pub base: LogBase,
    pub n_max: u32,
    pub tolerance: f64,
    pub violations: ViolationCounts,
    pub no_finite_r: u64,
    #[serde(serialize_with = "ser12")]
    pub no_finite_r_fraction: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicalScan {
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
}

fn scan_one(pmf: &JointPmf3, seed: Option<u64>, base: LogBase, n_max: u32) -> (ScanRow, InequalityChain) {
    let t = mi_triple(pmf, base);
    let chain = verify_inequality_chain(pmf, base);
    let row = ScanRow {
        seed,
        x: t.x,
        y: t.y,
        z: t.z,
        h_xz: t.h_xz,
        min_n: min_mi_power(&t, n_max, DEFAULT_TOL),
        slack_strong_subadditivity: chain.strong_subadditivity.slack,
        slack_four_term_bound: chain.four_term_bound.slack,
        slack_reversed_monogamy: chain.reversed_monogamy.slack,
        slack_discard_z: chain.discard_z.slack,
        slack_discard_x: chain.discard_x.slack,
    };
    (row, chain)
}

pub fn classical_scan(source: &PmfSource, base: LogBase, n_max: u32) -> Result<ClassicalScan, CliError> {
    let (results, dims, seed) = match source {
        PmfSource::Explicit(pmf) => (vec![scan_one(pmf, None, base, n_max)], pmf.dims(), None),
        PmfSource::Sampled { samples, dims, seed } => {
            let results = (0..*samples)
                .into_par_iter()
                .map(|i| {
                    let s = seed.wrapping_add(i);
                    sample_pmf(*dims, s).map(|pmf| scan_one(&pmf, Some(s), base, n_max))
                })
                .collect::<Result<Vec<_>, _>>()?;
            (results, *dims, Some(*seed))
        }
    };
    let mut violations = ViolationCounts::default();
    let mut no_finite_r = 0;
    let mut rows = Vec::with_capacity(results.len());
    for (row, chain) in results {
        violations.add(&chain);
        no_finite_r += u64::from(row.min_n.is_none());
        rows.push(row);
    }
    let samples = rows.len() as u64;
    Ok(ClassicalScan {
        summary: ScanSummary {
            samples,
            dims,
            seed,
            base,
            n_max,
            tolerance: CHAIN_TOL,
            violations,
            no_finite_r,
            no_finite_r_fraction: no_finite_r as f64 / samples as f64,
        },
        rows,
    })
}

pub fn render_scan_csv(s: &ClassicalScan) -> String {
    csv(
        &[
            "seed",
            "x",
            "y",
            "z",
            "h_xz",
            "min_n",
            "slack_strong_subadditivity",
            "slack_four_term_bound",
            "slack_reversed_monogamy",
            "slack_discard_z",
            "slack_discard_x",
        ],
        s.rows.iter().map(|r| {
            vec![
                r.seed.map(|v| v.to_string()).unwrap_or_else(|| "none".into()),
                num(r.x),
                num(r.y),
                num(r.z),
                num(r.h_xz),
                opt_int(r.min_n),
                num(r.slack_strong_subadditivity),
                num(r.slack_four_term_bound),
                num(r.slack_reversed_monogamy),
                num(r.slack_discard_z),
                num(r.slack_discard_x),
            ]
        }),
    )
}
