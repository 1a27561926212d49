//! Cospectral-pair checks and the deterministic verification suites.
//!
//! A suite expands its configuration into a list of cases, evaluates them in
//! parallel, and reports them in generation order. Every case draws its
//! randomness from a seed derived from the suite seed and the case's own
//! parameters, so a single case can be rerun alone with `--case <id>`.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::construct::{
    bridge, coalesce, coalesce_power, copies, loose_path, mixed_coalesce_power, r_family,
    random_supertree, w_family, Construction,
};
use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::iso::are_isomorphic;
use crate::matching::matching_polynomial;
use crate::poly::SparsePolynomial;
use crate::spectra::{matching_energy, round_sig, spectral_radius, tree_char_poly};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, passed: bool) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// One left/right comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub params: Value,
    pub lhs_phi: SparsePolynomial,
    pub rhs_phi: SparsePolynomial,
    pub phi_equal: bool,
    #[serde(serialize_with = "round_sig")]
    pub rho_lhs: f64,
    #[serde(serialize_with = "round_sig")]
    pub rho_rhs: f64,
    #[serde(serialize_with = "round_sig")]
    pub me_lhs: f64,
    #[serde(serialize_with = "round_sig")]
    pub me_rhs: f64,
    pub isomorphic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_isomorphic: Option<bool>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

impl CaseReport {
    /// Requires `isomorphic == expected`.
    pub fn expect_isomorphic(mut self, expected: bool) -> Self {
        self.expect_isomorphic = Some(expected);
        self.refresh();
        self
    }

    pub fn push_check(&mut self, check: Check) {
        self.checks.push(check);
        self.refresh();
    }

    fn refresh(&mut self) {
        let iso_ok = match self.expect_isomorphic {
            Some(expected) => self.isomorphic == Some(expected),
            None => true,
        };
        self.passed = self.error.is_none()
            && self.phi_equal
            && iso_ok
            && self.checks.iter().all(|c| c.passed);
    }

    fn failed(id: String, params: Value, err: &Error) -> Self {
        CaseReport {
            id,
            params,
            lhs_phi: SparsePolynomial::zero(),
            rhs_phi: SparsePolynomial::zero(),
            phi_equal: false,
            rho_lhs: f64::NAN,
            rho_rhs: f64::NAN,
            me_lhs: f64::NAN,
            me_rhs: f64::NAN,
            isomorphic: None,
            expect_isomorphic: None,
            checks: Vec::new(),
            error: Some(err.to_string()),
            passed: false,
            repro: None,
        }
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= 10.0 * tol * a.abs().max(b.abs()).max(1.0)
}

/// Exact `φ` comparison plus independent numeric `ρ` and `ME` on each side
/// and an isomorphism test.
pub fn check_cospectral(
    h1: &UniformHypergraph,
    h2: &UniformHypergraph,
    tol: f64,
) -> Result<CaseReport> {
    if h1.r() != h2.r() {
        return Err(Error::RankMismatch {
            left: h1.r(),
            right: h2.r(),
        });
    }
    let lhs_phi = matching_polynomial(h1);
    let rhs_phi = matching_polynomial(h2);
    let phi_equal = lhs_phi == rhs_phi;
    let rho_lhs = spectral_radius(h1, tol)?;
    let rho_rhs = spectral_radius(h2, tol)?;
    let me_lhs = matching_energy(h1, tol)?;
    let me_rhs = matching_energy(h2, tol)?;
    let mut report = CaseReport {
        id: "cospectral".into(),
        params: Value::Null,
        lhs_phi,
        rhs_phi,
        phi_equal,
        rho_lhs,
        rho_rhs,
        me_lhs,
        me_rhs,
        isomorphic: Some(are_isomorphic(h1, h2)),
        expect_isomorphic: None,
        checks: Vec::new(),
        error: None,
        passed: false,
        repro: None,
    };
    if phi_equal {
        report.checks.push(
            Check::new("rho_agree", close(rho_lhs, rho_rhs, tol))
                .with_detail(format!("{rho_lhs} vs {rho_rhs}")),
        );
        report.checks.push(
            Check::new("me_agree", close(me_lhs, me_rhs, tol))
                .with_detail(format!("{me_lhs} vs {me_rhs}")),
        );
    }
    report.refresh();
    Ok(report)
}

fn char_poly_check(lhs: &UniformHypergraph, rhs: &UniformHypergraph) -> Result<Check> {
    let a = tree_char_poly(lhs)?;
    let b = tree_char_poly(rhs)?;
    let same_as_phi = a == matching_polynomial(lhs);
    Ok(
        Check::new("char_poly_equal", a == b && same_as_phi).with_detail(if same_as_phi {
            format!("det(xI - A) = {a}")
        } else {
            "characteristic polynomial differs from matching polynomial".to_string()
        }),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Coalesce,
    Bridge,
    PathW,
}

impl SuiteName {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Coalesce => "coalesce",
            SuiteName::Bridge => "bridge",
            SuiteName::PathW => "path-w",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "coalesce" => Ok(SuiteName::Coalesce),
            "bridge" => Ok(SuiteName::Bridge),
            "path-w" => Ok(SuiteName::PathW),
            other => Err(Error::InvalidParameter(format!(
                "unknown suite {other:?} (expected coalesce, bridge or path-w)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub r_list: Vec<usize>,
    pub seed: u64,
    pub trials: usize,
    pub m_max: usize,
    pub m_range: (usize, usize),
    pub n_range: (usize, usize),
    pub tol: f64,
    /// Largest edge count of a sampled supertree.
    pub max_edges: usize,
    #[serde(skip)]
    pub timing: bool,
    #[serde(skip)]
    pub only_case: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            r_list: vec![2, 3, 4, 5],
            seed: 0,
            trials: 25,
            m_max: 4,
            m_range: (6, 10),
            n_range: (6, 10),
            tol: crate::spectra::default_tol(),
            max_edges: 5,
            timing: false,
            only_case: None,
        }
    }
}

impl SuiteConfig {
    fn validate(&self) -> Result<()> {
        if self.r_list.is_empty() {
            return Err(Error::InvalidParameter("empty r list".into()));
        }
        if let Some(&r) = self.r_list.iter().find(|&&r| r < 2) {
            return Err(Error::InvalidRank(r));
        }
        if self.max_edges < 1 {
            return Err(Error::InvalidParameter(
                "max_edges must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn repro(&self, suite: SuiteName, id: &str) -> String {
        let rs: Vec<String> = self.r_list.iter().map(ToString::to_string).collect();
        format!(
            "supertree suite --name {} --r {} --seed {} --trials {} --m-max {} --m-range {}..{} --n-range {}..{} --max-edges {} --case {id}",
            suite.as_str(),
            rs.join(","),
            self.seed,
            self.trials,
            self.m_max,
            self.m_range.0,
            self.m_range.1,
            self.n_range.0,
            self.n_range.1,
            self.max_edges,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite_name: String,
    pub config: SuiteConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub cases: Vec<CaseReport>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_secs: Option<f64>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| !c.passed)
    }

    /// Plain-text table, one row per case.
    pub fn table(&self) -> String {
        let width = self
            .cases
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(2)
            .max(2);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>5}  {:>18}  {:>18}  {:>5}  status",
            "id", "phi", "rho_lhs", "rho_rhs", "iso"
        );
        for c in &self.cases {
            let iso = match c.isomorphic {
                Some(true) => "yes",
                Some(false) => "no",
                None => "-",
            };
            let _ = writeln!(
                out,
                "{:<width$}  {:>5}  {:>18.12}  {:>18.12}  {:>5}  {}",
                c.id,
                if c.phi_equal { "equal" } else { "DIFF" },
                c.rho_lhs,
                c.rho_rhs,
                iso,
                if c.passed { "ok" } else { "FAIL" }
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "suite {}: {} case(s), {} failed: {}",
            self.suite_name,
            self.cases.len(),
            failed,
            if self.passed { "PASSED" } else { "FAILED" }
        );
        if let Some(note) = &self.note {
            let _ = writeln!(out, "note: {note}");
        }
        for c in self.failures() {
            if let Some(repro) = &c.repro {
                let _ = writeln!(out, "reproduce {}: {repro}", c.id);
            }
        }
        out
    }
}

/// Mixes the suite seed with case parameters (splitmix64 finalizer).
fn case_seed(seed: u64, parts: &[u64]) -> u64 {
    let mut h = seed;
    for &p in parts {
        h ^= p
            .wrapping_add(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(h << 6)
            .wrapping_add(h >> 2);
        h = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
        h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h ^= h >> 31;
    }
    h
}

/// Prepared left and right sides of one case plus its extra assertions.
struct Prepared {
    lhs: UniformHypergraph,
    rhs: UniformHypergraph,
    expect_isomorphic: Option<bool>,
    checks: Vec<Check>,
}

type CaseFn<'a> = Box<dyn Fn() -> Result<Prepared> + Send + Sync + 'a>;

struct CaseSpec<'a> {
    id: String,
    params: Value,
    build: CaseFn<'a>,
}

fn run_cases(
    suite: SuiteName,
    config: &SuiteConfig,
    specs: Vec<CaseSpec<'_>>,
    note: Option<String>,
) -> Result<SuiteReport> {
    let start = Instant::now();
    let specs: Vec<_> = match &config.only_case {
        Some(id) => {
            let picked: Vec<_> = specs.into_iter().filter(|s| &s.id == id).collect();
            if picked.is_empty() {
                return Err(Error::InvalidParameter(format!("no case with id {id:?}")));
            }
            picked
        }
        None => specs,
    };
    let cases: Vec<CaseReport> = specs
        .par_iter()
        .map(|spec| {
            let mut report = (spec.build)()
                .and_then(|p| {
                    let mut report = check_cospectral(&p.lhs, &p.rhs, config.tol)?;
                    report.expect_isomorphic = p.expect_isomorphic;
                    report.checks.extend(p.checks);
                    report.refresh();
                    Ok(report)
                })
                .unwrap_or_else(|e| CaseReport::failed(spec.id.clone(), spec.params.clone(), &e));
            report.id = spec.id.clone();
            report.params = spec.params.clone();
            report.repro = Some(config.repro(suite, &spec.id));
            report
        })
        .collect();
    let passed = cases.iter().all(|c| c.passed);
    Ok(SuiteReport {
        schema: SCHEMA_VERSION,
        suite_name: suite.as_str().to_string(),
        config: config.clone(),
        note,
        cases,
        passed,
        elapsed_secs: config.timing.then(|| start.elapsed().as_secs_f64()),
    })
}

pub fn run_suite(name: SuiteName, config: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        SuiteName::Coalesce => suite_coalesce(config),
        SuiteName::Bridge => suite_bridge(config),
        SuiteName::PathW => suite_path_w(config),
    }
}

/// The premise pair: `G = R(1,1,2,4)` with `u` the tip of the pendant edge
/// at `v3`, and `H = R(1,3,1,3)` with `v` the tip of the pendant edge at
/// `v6`.
pub fn premise_pair(r: usize) -> Result<((Construction, usize), (Construction, usize))> {
    let g = r_family(r, 1, 1, 2, 4)?;
    let u = g.pendant_tip(3)?;
    let h = r_family(r, 1, 3, 1, 3)?;
    let v = h.pendant_tip(6)?;
    Ok(((g, u), (h, v)))
}

fn sample_supertree(rng: &mut ChaCha8Rng, r: usize, max_edges: usize) -> Result<UniformHypergraph> {
    let m = rng.gen_range(1..=max_edges);
    random_supertree(r, m, rng)
}

/// Coalescence checks for the premise pair: premises, sampled `Γ`
/// coalescences, and the mixed coalescence-power chain.
pub fn suite_coalesce(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let mut specs: Vec<CaseSpec> = Vec::new();
    for &r in &config.r_list {
        let tag = format!("coalesce/r{r}");
        specs.push(CaseSpec {
            id: format!("{tag}/premise"),
            params: json!({"r": r, "kind": "premise"}),
            build: Box::new(move || {
                let ((g, u), (h, v)) = premise_pair(r)?;
                let gu = g.graph.delete_vertex(u)?;
                let hv = h.graph.delete_vertex(v)?;
                let mut checks = vec![
                    Check::new(
                        "phi_deleted_equal",
                        matching_polynomial(&gu) == matching_polynomial(&hv),
                    ),
                    Check::new("deleted_isomorphic", are_isomorphic(&gu, &hv)),
                ];
                if r == 2 {
                    checks.push(char_poly_check(&g.graph, &h.graph)?);
                }
                Ok(Prepared {
                    lhs: g.graph,
                    rhs: h.graph,
                    expect_isomorphic: Some(false),
                    checks,
                })
            }),
        });

        let named: [(&str, usize); 2] = [("gamma-single-vertex", 0), ("gamma-path-end", 3)];
        for (name, len) in named {
            specs.push(CaseSpec {
                id: format!("{tag}/{name}"),
                params: json!({"r": r, "kind": "gamma", "gamma": format!("P_{len}"), "w": "v1"}),
                build: Box::new(move || {
                    let gamma = loose_path(r, len)?;
                    let w = gamma.path_vertex(1)?;
                    gamma_case(r, &gamma.graph, w)
                }),
            });
        }
        for t in 0..config.trials {
            let seed = case_seed(config.seed, &[1, r as u64, t as u64]);
            let max_edges = config.max_edges;
            specs.push(CaseSpec {
                id: format!("{tag}/gamma/{t:02}"),
                params: json!({"r": r, "kind": "gamma", "trial": t, "case_seed": seed}),
                build: Box::new(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let gamma = sample_supertree(&mut rng, r, max_edges)?;
                    let w = rng.gen_range(0..gamma.n());
                    gamma_case(r, &gamma, w)
                }),
            });
        }
        specs.push(CaseSpec {
            id: format!("{tag}/power-one"),
            params: json!({"r": r, "kind": "chain", "m": 1}),
            build: Box::new(move || {
                let ((g, u), _) = premise_pair(r)?;
                let single = coalesce_power(&g.graph, u, 1)?.graph;
                Ok(Prepared {
                    lhs: single,
                    rhs: g.graph,
                    expect_isomorphic: Some(true),
                    checks: Vec::new(),
                })
            }),
        });
        for m in 1..=config.m_max {
            for step in 0..m {
                specs.push(CaseSpec {
                    id: format!("{tag}/chain/m{m}/step{step}"),
                    params: json!({"r": r, "kind": "chain", "m": m, "h_copies": m - step, "g_copies": step}),
                    build: Box::new(move || {
                        let ((g, u), (h, v)) = premise_pair(r)?;
                        let lhs =
                            mixed_coalesce_power(&h.graph, v, m - step, &g.graph, u, step)?.graph;
                        let rhs = mixed_coalesce_power(&h.graph, v, m - step - 1, &g.graph, u, step + 1)?
                            .graph;
                        let mut checks = Vec::new();
                        if r == 2 {
                            checks.push(char_poly_check(&lhs, &rhs)?);
                        }
                        Ok(Prepared {
                            lhs,
                            rhs,
                            expect_isomorphic: None,
                            checks,
                        })
                    }),
                });
            }
        }
    }
    run_cases(
        SuiteName::Coalesce,
        config,
        specs,
        Some(
            "the coalescence identity covers every supertree Γ; premises verified + sampled instances, not a proof"
                .into(),
        ),
    )
}

fn gamma_case(r: usize, gamma: &UniformHypergraph, w: usize) -> Result<Prepared> {
    let ((g, u), (h, v)) = premise_pair(r)?;
    let lhs = coalesce(&g.graph, u, gamma, w)?.graph;
    let rhs = coalesce(&h.graph, v, gamma, w)?.graph;
    let mut checks = Vec::new();
    if r == 2 {
        checks.push(char_poly_check(&lhs, &rhs)?);
    }
    Ok(Prepared {
        lhs,
        rhs,
        expect_isomorphic: None,
        checks,
    })
}

/// `φ(G_u·mH_v) φ(G)^{m−1}` in closed form.
pub fn bridge_closed_form(
    g: &UniformHypergraph,
    u: usize,
    h: &UniformHypergraph,
    v: usize,
    m: usize,
) -> Result<SparsePolynomial> {
    if m < 1 {
        return Err(Error::InvalidParameter("bridge needs m >= 1".into()));
    }
    let r = g.r();
    let gh = &matching_polynomial(g) * &matching_polynomial(h);
    let deleted =
        &matching_polynomial(&g.delete_vertex(u)?) * &matching_polynomial(&h.delete_vertex(v)?);
    let inner = &gh.multiply_by_power(r - 2) - &deleted.scalar_multiply(&BigInt::from(m));
    Ok((&gh.pow(m as u32 - 1) * &inner).multiply_by_power((m - 1) * (r - 2)))
}

#[allow(clippy::too_many_arguments)]
fn bridge_case(
    r: usize,
    g: &UniformHypergraph,
    u: usize,
    h: &UniformHypergraph,
    v: usize,
    m: usize,
    expect_isomorphic: Option<bool>,
    tol: f64,
) -> Result<Prepared> {
    let left_bridge = bridge(g, u, h, v, m)?.graph;
    let right_bridge = bridge(h, v, g, u, m)?.graph;
    let lhs = left_bridge.disjoint_union(&copies(g, m - 1))?;
    let rhs = right_bridge.disjoint_union(&copies(h, m - 1))?;
    let closed = bridge_closed_form(g, u, h, v, m)?;
    let rho_l = spectral_radius(&left_bridge, tol)?;
    let rho_r = spectral_radius(&right_bridge, tol)?;
    let mut checks = vec![
        Check::new("closed_form", closed == matching_polynomial(&lhs)),
        Check::new("rho_bridge_equal", close(rho_l, rho_r, tol))
            .with_detail(format!("{rho_l} vs {rho_r}")),
    ];
    if r == 2 {
        checks.push(char_poly_check(&lhs, &rhs)?);
    }
    Ok(Prepared {
        lhs,
        rhs,
        expect_isomorphic,
        checks,
    })
}

/// Bridged constructions: `(G_u·mH_v) ∪ (m−1)G` against
/// `(H_v·mG_u) ∪ (m−1)H`.
pub fn suite_bridge(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    if config.m_max < 1 {
        return Err(Error::InvalidParameter("m_max must be at least 1".into()));
    }
    let tol = config.tol;
    let mut specs: Vec<CaseSpec> = Vec::new();
    for &r in &config.r_list {
        for m in 1..=config.m_max {
            let tag = format!("bridge/r{r}/m{m}");
            specs.push(CaseSpec {
                id: format!("{tag}/paths"),
                params: json!({"r": r, "m": m, "G": "P_1", "H": "P_2", "u": "v1", "v": "v1"}),
                build: Box::new(move || {
                    let g = loose_path(r, 1)?;
                    let h = loose_path(r, 2)?;
                    let (u, v) = (g.path_vertex(1)?, h.path_vertex(1)?);
                    bridge_case(
                        r,
                        &g.graph,
                        u,
                        &h.graph,
                        v,
                        m,
                        (m == 1).then_some(true),
                        tol,
                    )
                }),
            });
            let seed = case_seed(config.seed, &[2, r as u64, m as u64, u64::MAX]);
            let max_edges = config.max_edges;
            specs.push(CaseSpec {
                id: format!("{tag}/self"),
                params: json!({"r": r, "m": m, "kind": "G = H, u = v", "case_seed": seed}),
                build: Box::new(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let g = sample_supertree(&mut rng, r, max_edges)?;
                    let u = rng.gen_range(0..g.n());
                    bridge_case(r, &g, u, &g, u, m, Some(true), tol)
                }),
            });
            for t in 0..config.trials {
                let seed = case_seed(config.seed, &[2, r as u64, m as u64, t as u64]);
                specs.push(CaseSpec {
                    id: format!("{tag}/t{t:02}"),
                    params: json!({"r": r, "m": m, "trial": t, "case_seed": seed}),
                    build: Box::new(move || {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        let g = sample_supertree(&mut rng, r, max_edges)?;
                        let h = sample_supertree(&mut rng, r, max_edges)?;
                        let u = rng.gen_range(0..g.n());
                        let v = rng.gen_range(0..h.n());
                        bridge_case(r, &g, u, &h, v, m, (m == 1).then_some(true), tol)
                    }),
                });
            }
        }
    }
    run_cases(SuiteName::Bridge, config, specs, None)
}

/// `P_{m−5} ∪ W_{n−1}` against `P_{n−5} ∪ W_{m−1}`.
pub fn path_w_pair(r: usize, m: usize, n: usize) -> Result<(UniformHypergraph, UniformHypergraph)> {
    if m < 6 || n < 6 {
        return Err(Error::InvalidParameter(format!(
            "path/W pairs need m, n >= 6, got ({m}, {n})"
        )));
    }
    let lhs = loose_path(r, m - 5)?
        .graph
        .disjoint_union(&w_family(r, n - 1)?.graph)?;
    let rhs = loose_path(r, n - 5)?
        .graph
        .disjoint_union(&w_family(r, m - 1)?.graph)?;
    Ok((lhs, rhs))
}

pub fn suite_path_w(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let (m_lo, m_hi) = config.m_range;
    let (n_lo, n_hi) = config.n_range;
    if m_lo < 6 || n_lo < 6 || m_lo > m_hi || n_lo > n_hi {
        return Err(Error::InvalidParameter(format!(
            "ranges must satisfy 6 <= lo <= hi, got m {m_lo}..{m_hi}, n {n_lo}..{n_hi}"
        )));
    }
    let mut specs: Vec<CaseSpec> = Vec::new();
    for &r in &config.r_list {
        for m in m_lo..=m_hi {
            for n in n_lo..=n_hi {
                specs.push(CaseSpec {
                    id: format!("path-w/r{r}/m{m}/n{n}"),
                    params: json!({"r": r, "m": m, "n": n}),
                    build: Box::new(move || {
                        let (lhs, rhs) = path_w_pair(r, m, n)?;
                        let mut checks = Vec::new();
                        if r == 2 {
                            checks.push(char_poly_check(&lhs, &rhs)?);
                        }
                        Ok(Prepared {
                            lhs,
                            rhs,
                            expect_isomorphic: Some(m == n),
                            checks,
                        })
                    }),
                });
            }
        }
    }
    run_cases(SuiteName::PathW, config, specs, None)
}
