//! Command-line surface: seeded verification suites and one-shot exact
//! computations with human-readable, JSON, or CSV output.
//!
//! All random parameters are drawn from a ChaCha stream seeded by the
//! 64-bit run seed, so a given seed and configuration always produce
//! byte-identical JSON reports.  Exact values are serialized as strings;
//! the only floating-point output is the spectrum probe, which is tagged
//! as approximate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use crate::asm::{
    check_kuperberg_links, closed_form, enumerate, genfun, l_matrix_checks, AsmClass,
    ClosedFormName,
};
use crate::exact::{rand_rational, ExactScalar, GenPoly, Rational};
use crate::partition::{
    xi_scalar, z_a, z_a_direct, z_ad, z_ad_direct, z_bruteforce,
    z_cap, z_ht, z_ik, z_mixed, z_qt_full, z_u, z_uu, DomainSpec,
};
use crate::sov::{
    check_eigenvector, check_eigenvector_properties, check_sov_structure, phi, psi_ad,
    PsiAdMethod,
};
use crate::transfer::{
    hamiltonian, hamiltonian_from_transfer, spectrum_probe, transfer, InhomParams,
    SpectrumReport, TwistKind,
};
use crate::vertex::{
    check_boundary_ybe_and_fish, check_inversion_crossing, check_projector_absorption,
    check_q_inversion, check_rcheck_relations, check_yang_baxter, ModelParams,
};

// ---------------------------------------------------------------------------
// Run configuration and report types.
// ---------------------------------------------------------------------------

/// Output rendering selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    /// One line per check, tabulated.
    Human,
    /// Pretty-printed JSON; byte-identical for identical seed and config.
    Json,
    /// Comma-separated values with a header row.
    Csv,
}

/// Everything a verification run depends on.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Seed for all random parameter draws.
    pub seed: u64,
    /// Size cap applied to every family of checks.
    pub max_n: usize,
    /// Worker threads used to execute checks.
    pub jobs: usize,
    /// Output rendering.
    pub format: OutputFormat,
    /// Bound on numerators and denominators of random rationals.
    pub max_denom: u64,
}

impl RunConfig {
    /// Build a configuration, reading `VERTEXLAB_MAX_DENOM` from the
    /// environment (default 10⁴) for the rational-parameter bound.
    pub fn new(seed: u64, max_n: usize, jobs: usize, format: OutputFormat) -> Self {
        let max_denom = std::env::var("VERTEXLAB_MAX_DENOM")
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
            .filter(|&v| v >= 2)
            .unwrap_or(10_000);
        RunConfig { seed, max_n: max_n.max(1), jobs: jobs.max(1), format, max_denom }
    }
}

/// Outcome classification of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    /// The identity held exactly.
    Pass,
    /// The identity failed (or errored); `lhs` carries the details.
    Fail,
    /// Not run under the current configuration.
    Skipped,
}

/// One verified identity.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    /// Stable dotted identifier, unique within a report.
    pub id: String,
    /// Human description of the identity being checked.
    pub anchor: &'static str,
    /// The concrete parameter values used.
    pub parameters: String,
    /// Pass/fail/skipped.
    pub status: CheckStatus,
    /// Serialized left-hand value (or error text).
    pub lhs: String,
    /// Serialized right-hand value.
    pub rhs: String,
    /// Wall-clock time; excluded from JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// A full verification report.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    /// Suite name (`local`, `transfer`, `sov`, `partition`, `asm`, `all`).
    pub suite: String,
    /// Seed the parameters were drawn from.
    pub seed: u64,
    /// Check outcomes, sorted by id.
    pub checks: Vec<CheckResult>,
}

impl Report {
    /// True when no check failed.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// Render in the requested format.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                serde_json::to_string_pretty(self).expect("report serializes")
            }
            OutputFormat::Csv => {
                let mut out = String::from("id,status,anchor,parameters,lhs,rhs\n");
                for c in &self.checks {
                    let status = match c.status {
                        CheckStatus::Pass => "pass",
                        CheckStatus::Fail => "fail",
                        CheckStatus::Skipped => "skipped",
                    };
                    let row = [
                        c.id.as_str(),
                        status,
                        c.anchor,
                        c.parameters.as_str(),
                        c.lhs.as_str(),
                        c.rhs.as_str(),
                    ];
                    let cells: Vec<String> = row
                        .iter()
                        .map(|f| format!("\"{}\"", f.replace('"', "\"\"")))
                        .collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            OutputFormat::Human => {
                let mut out = format!("suite {} (seed {})\n", self.suite, self.seed);
                for c in &self.checks {
                    let tag = match c.status {
                        CheckStatus::Pass => "PASS",
                        CheckStatus::Fail => "FAIL",
                        CheckStatus::Skipped => "SKIP",
                    };
                    let _ = writeln!(
                        out,
                        "{tag}  {:<44} {:>6} ms  [{}]",
                        c.id, c.elapsed_ms, c.parameters
                    );
                    if c.status == CheckStatus::Fail {
                        let _ = writeln!(out, "      lhs: {}\n      rhs: {}", c.lhs, c.rhs);
                    }
                }
                let passed = self
                    .checks
                    .iter()
                    .filter(|c| c.status == CheckStatus::Pass)
                    .count();
                let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
                out
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Anchor registry.
// ---------------------------------------------------------------------------

/// Map from check-id prefixes to a description of the identity verified.
const ANCHORS: &[(&str, &str)] = &[
    ("local.yang-baxter", "cubic exchange relation for all mixed spin-1/2 and spin-1 R-matrices"),
    ("local.inversion-crossing", "R(z)R(1/z) is scalar and the mixed R-matrix has transpose-crossing symmetry"),
    ("local.q-inversion", "gauge inversion of the mixed R-matrix through the fusion projector"),
    ("local.braid", "braid-form exchange matrices square to scalars and preserve the fusion projector"),
    ("local.boundary-reflection", "boundary exchange relation and fish identity for the two-site boundary vectors"),
    ("local.projector-absorption", "the symmetrizer absorbs adjacent R-matrices at the fusion point"),
    ("transfer.fusion", "trace and fused constructions of the level-2 transfer matrix agree"),
    ("transfer.commutation", "transfer matrices at two spectral points commute"),
    ("transfer.hamiltonian-agreement", "local bond Hamiltonian equals the logarithmic derivative of the transfer matrix"),
    ("transfer.spectrum", "floating-point sector spectra of the twisted chain Hamiltonian"),
    ("sov.structure", "separated height basis: pairing, operator action, and completeness"),
    ("sov.null-vector", "the special vector is annihilated by the odd transfer matrix and is an even-transfer eigenvector"),
    ("sov.construction-agreement", "kernel and separated constructions produce the same special vector"),
    ("sov.properties", "symmetry, exchange, and normalization properties of the special vectors"),
    ("sov.hamiltonian-null", "the homogeneous special vector has exactly zero energy"),
    ("partition.domain-wall", "determinant closed form equals the configuration sum on the square ice domain"),
    ("partition.half-turn", "determinant closed form equals the configuration sum on the half-turn domain"),
    ("partition.quarter-turn", "pfaffian closed form equals the configuration sum on the quarter-turn domain"),
    ("partition.u-turn", "determinant closed form equals the configuration sum on the U-turn domain"),
    ("partition.double-u-turn", "factorized closed form equals the configuration sum on the doubly reflecting domain"),
    ("partition.cap", "determinant closed form equals the configuration sum on the cap-closed domain"),
    ("partition.ten-vertex", "ten-vertex closed form equals the transfer-matrix construction and the configuration sum"),
    ("partition.norm-generating", "magnetization-resolved square norm: determinant versus direct component sum"),
    ("partition.mixed-overlap", "overlap of the two special vectors: direct pairing, subset sum, and pfaffian agree"),
    ("partition.boundary-overlap", "boundary-vector overlap with the special vector matches its closed form"),
    ("partition.wheel", "the ten-vertex partition function vanishes on a q-wheel of row parameters"),
    ("asm.count", "plain enumeration reproduces the classical counting sequence"),
    ("asm.genfun", "weighted enumeration reproduces the closed-form polynomial"),
    ("asm.links", "enumeration generating functions match lattice sums and special-vector components"),
    ("asm.binomial-family", "triangular binomial matrix family: determinant, Gram identity, and composition law"),
];

fn anchor_for(id: &str) -> &'static str {
    ANCHORS
        .iter()
        .filter(|(p, _)| id.starts_with(p))
        .max_by_key(|(p, _)| p.len())
        .map(|(_, a)| *a)
        .unwrap_or_else(|| panic!("no anchor registered for check id {id}"))
}

// ---------------------------------------------------------------------------
// Seeded parameter drawing.
// ---------------------------------------------------------------------------

/// Deterministic stream of generic rational parameters.
pub struct SeededDraw {
    rng: ChaCha8Rng,
    max_denom: u64,
}

impl SeededDraw {
    /// New stream for the given seed and denominator bound.
    pub fn new(seed: u64, max_denom: u64) -> Self {
        SeededDraw { rng: ChaCha8Rng::seed_from_u64(seed), max_denom }
    }

    /// Non-zero rational with absolute value different from 1.
    pub fn rational(&mut self) -> Rational {
        loop {
            let v = rand_rational(&mut self.rng, self.max_denom);
            let a = if v < Rational::from_integer(0.into()) { -v.clone() } else { v.clone() };
            if a != Rational::from_integer(1.into()) {
                return v;
            }
        }
    }

    /// Generic deformation parameter (avoids the degenerate loci q⁴ = 1).
    pub fn q(&mut self) -> Rational {
        self.rational()
    }

    /// Generic scalar spectral parameter.
    pub fn scalar(&mut self) -> ExactScalar {
        ExactScalar::from_rational(self.rational())
    }

    /// `n` spectral parameters whose pairwise ratios avoid `q^k` for
    /// `|k| ≤ 2` (in particular they are pairwise distinct, and stay
    /// distinct after inversion).
    pub fn point_set(&mut self, n: usize, q: &Rational) -> Vec<ExactScalar> {
        let mut pts: Vec<Rational> = Vec::with_capacity(n);
        let qpows: Vec<Rational> = (-2i32..=2)
            .map(|k| {
                let mut acc = Rational::from_integer(1.into());
                for _ in 0..k.abs() {
                    acc *= q.clone();
                }
                if k < 0 {
                    acc.recip()
                } else {
                    acc
                }
            })
            .collect();
        while pts.len() < n {
            let v = self.rational();
            let clash = pts.iter().any(|p| {
                let r = v.clone() / p.clone();
                qpows.contains(&r) || qpows.contains(&r.recip()) || {
                    let pr = v.clone() * p.clone();
                    qpows.contains(&pr)
                }
            });
            if !clash {
                pts.push(v);
            }
        }
        pts.into_iter().map(ExactScalar::from_rational).collect()
    }
}

// ---------------------------------------------------------------------------
// Check construction and execution.
// ---------------------------------------------------------------------------

struct Outcome {
    status: CheckStatus,
    lhs: String,
    rhs: String,
}

fn bool_outcome(ok: bool) -> Outcome {
    Outcome {
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        lhs: ok.to_string(),
        rhs: "true".into(),
    }
}

fn eq_outcome(lhs: &ExactScalar, rhs: &ExactScalar) -> Outcome {
    Outcome {
        status: if lhs == rhs { CheckStatus::Pass } else { CheckStatus::Fail },
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn err_outcome(msg: impl std::fmt::Display) -> Outcome {
    Outcome { status: CheckStatus::Fail, lhs: format!("error: {msg}"), rhs: String::new() }
}

struct CheckSpec {
    id: String,
    parameters: String,
    run: Box<dyn FnOnce() -> Outcome + Send>,
}

fn spec(
    id: impl Into<String>,
    parameters: impl Into<String>,
    run: impl FnOnce() -> Outcome + Send + 'static,
) -> CheckSpec {
    let id = id.into();
    anchor_for(&id);
    CheckSpec { id, parameters: parameters.into(), run: Box::new(run) }
}

fn execute(suite: &str, cfg: &RunConfig, specs: Vec<CheckSpec>) -> Report {
    let run_one = |s: CheckSpec| -> CheckResult {
        let anchor = anchor_for(&s.id);
        let start = Instant::now();
        let out = (s.run)();
        CheckResult {
            id: s.id,
            anchor,
            parameters: s.parameters,
            status: out.status,
            lhs: out.lhs,
            rhs: out.rhs,
            elapsed_ms: start.elapsed().as_millis(),
        }
    };
    let mut checks: Vec<CheckResult> = if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| specs.into_par_iter().map(run_one).collect())
    } else {
        specs.into_iter().map(run_one).collect()
    };
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Report { suite: suite.into(), seed: cfg.seed, checks }
}

// ---------------------------------------------------------------------------
// Suites.
// ---------------------------------------------------------------------------

fn local_specs(cfg: &RunConfig) -> Vec<CheckSpec> {
    let mut d = SeededDraw::new(cfg.seed, cfg.max_denom);
    let mut specs = Vec::new();
    for p in 0..3 {
        let q = d.q();
        let params = ModelParams::new(q.clone()).expect("generic q");
        let z = d.scalar();
        let w = d.scalar();
        let b = d.scalar();
        let pstr = format!("q={q}; z={z}; w={w}; b={b}");

        let pc = params.clone();
        let (zc, wc) = (z.clone(), w.clone());
        specs.push(spec(format!("local.yang-baxter.{p}"), pstr.clone(), move || {
            let mut ok = true;
            for m in [1u8, 2] {
                for n in [1u8, 2] {
                    for l in [1u8, 2] {
                        ok &= check_yang_baxter(m, n, l, &zc, &wc, &pc);
                    }
                }
            }
            bool_outcome(ok)
        }));

        let pc = params.clone();
        let zc = z.clone();
        specs.push(spec(format!("local.inversion-crossing.{p}"), pstr.clone(), move || {
            bool_outcome(check_inversion_crossing(&zc, &pc))
        }));

        let pc = params.clone();
        let zc = z.clone();
        specs.push(spec(format!("local.q-inversion.{p}"), pstr.clone(), move || {
            bool_outcome(check_q_inversion(&zc, &pc))
        }));

        let pc = params.clone();
        let zc = z.clone();
        specs.push(spec(format!("local.braid.{p}"), pstr.clone(), move || {
            bool_outcome(check_rcheck_relations(&zc, &pc))
        }));

        // The spin-1/2 boundary vector and the symmetrizer absorption
        // need the half-parameter s with q = s².
        let (s, sparams) = loop {
            let s = d.rational();
            if let Ok(sp) = ModelParams::from_s(s.clone()) {
                break (s, sp);
            }
        };
        let spstr = format!("s={s}; z={z}; w={w}; b={b}");
        for model in [1u8, 2] {
            let pc = if model == 1 { sparams.clone() } else { params.clone() };
            let ps = if model == 1 { spstr.clone() } else { pstr.clone() };
            let (zc, wc, bc) = (z.clone(), w.clone(), b.clone());
            specs.push(spec(
                format!("local.boundary-reflection.m{model}.{p}"),
                ps,
                move || match check_boundary_ybe_and_fish(model, &zc, &wc, &bc, &pc) {
                    Ok(ok) => bool_outcome(ok),
                    Err(e) => err_outcome(e),
                },
            ));
        }

        let pc = sparams.clone();
        let (zc, wc, bc) = (z.clone(), w.clone(), b.clone());
        specs.push(spec(format!("local.projector-absorption.{p}"), spstr, move || {
            match check_projector_absorption(&zc, &wc, &bc, &pc) {
                Ok(ok) => bool_outcome(ok),
                Err(e) => err_outcome(e),
            }
        }));
    }
    specs
}

fn transfer_specs(cfg: &RunConfig) -> Vec<CheckSpec> {
    let mut d = SeededDraw::new(cfg.seed, cfg.max_denom);
    let mut specs = Vec::new();
    let q = d.q();
    let params = ModelParams::new(q.clone()).expect("generic q");
    let twists = [TwistKind::Diagonal, TwistKind::AntiDiagonal];

    for n in 2..=cfg.max_n.min(4) {
        let w = d.point_set(n, &q);
        let inhom = InhomParams::new(w).expect("distinct parameters");
        for (ti, twist) in twists.into_iter().enumerate() {
            for p in 0..2 {
                let z = d.scalar();
                let pc = params.clone();
                let ic = inhom.clone();
                let pstr = format!("q={q}; n={n}; z={z}");
                specs.push(spec(
                    format!("transfer.fusion.n{n}.t{ti}.{p}"),
                    pstr,
                    move || match transfer(2, &z, twist, &pc, &ic) {
                        Ok(_) => bool_outcome(true),
                        Err(e) => err_outcome(e),
                    },
                ));
            }
        }
    }

    let nc = cfg.max_n.clamp(2, 3);
    let w = d.point_set(nc, &q);
    let inhom = InhomParams::new(w).expect("distinct parameters");
    for (ti, twist) in twists.into_iter().enumerate() {
        let (z1, z2) = (d.scalar(), d.scalar());
        let pc = params.clone();
        let ic = inhom.clone();
        let pstr = format!("q={q}; n={nc}; z1={z1}; z2={z2}");
        specs.push(spec(format!("transfer.commutation.n{nc}.t{ti}"), pstr, move || {
            let a = match transfer(1, &z1, twist, &pc, &ic) {
                Ok(t) => t,
                Err(e) => return err_outcome(e),
            };
            let b = match transfer(1, &z2, twist, &pc, &ic) {
                Ok(t) => t,
                Err(e) => return err_outcome(e),
            };
            bool_outcome(a.m.matmul(&b.m) == b.m.matmul(&a.m))
        }));
    }

    for n in 2..=cfg.max_n.min(3) {
        for (ti, twist) in twists.into_iter().enumerate() {
            let pc = params.clone();
            let x = params.x();
            let pstr = format!("q={q}; n={n}");
            specs.push(spec(
                format!("transfer.hamiltonian-agreement.n{n}.t{ti}"),
                pstr,
                move || {
                    let ha = match hamiltonian(n, &x, twist) {
                        Ok(h) => h,
                        Err(e) => return err_outcome(e),
                    };
                    let hb = match hamiltonian_from_transfer(n, &pc, twist) {
                        Ok(h) => h,
                        Err(e) => return err_outcome(e),
                    };
                    bool_outcome(ha.m == hb.m)
                },
            ));
        }
    }
    specs
}

fn sov_specs(cfg: &RunConfig) -> Vec<CheckSpec> {
    let mut d = SeededDraw::new(cfg.seed, cfg.max_denom);
    let mut specs = Vec::new();
    let q = d.q();
    let params = ModelParams::new(q.clone()).expect("generic q");
    let twists = [TwistKind::Diagonal, TwistKind::AntiDiagonal];

    for n in 1..=cfg.max_n.min(3) {
        let inhom = InhomParams::new(d.point_set(n, &q)).expect("distinct parameters");
        let pc = params.clone();
        let ic = inhom.clone();
        specs.push(spec(format!("sov.structure.n{n}"), format!("q={q}; n={n}"), move || {
            match check_sov_structure(&ic, &pc) {
                Ok(ok) => bool_outcome(ok),
                Err(e) => err_outcome(e),
            }
        }));

        for (ti, twist) in twists.into_iter().enumerate() {
            let z = d.scalar();
            let pc = params.clone();
            let ic = inhom.clone();
            let pstr = format!("q={q}; n={n}; z={z}");
            specs.push(spec(format!("sov.null-vector.n{n}.t{ti}"), pstr, move || {
                match check_eigenvector(twist, &ic, &pc, &z) {
                    Ok(ok) => bool_outcome(ok),
                    Err(e) => err_outcome(e),
                }
            }));
        }

        let pc = params.clone();
        let ic = inhom.clone();
        specs.push(spec(
            format!("sov.construction-agreement.n{n}"),
            format!("q={q}; n={n}"),
            move || {
                let a = match psi_ad(&ic, &pc, PsiAdMethod::Sov) {
                    Ok(v) => v,
                    Err(e) => return err_outcome(e),
                };
                let b = match psi_ad(&ic, &pc, PsiAdMethod::Kernel) {
                    Ok(v) => v,
                    Err(e) => return err_outcome(e),
                };
                bool_outcome(a.components == b.components)
            },
        ));
    }

    {
        let n = cfg.max_n.min(3);
        let inhom = InhomParams::new(d.point_set(n, &q)).expect("distinct parameters");
        for (ti, twist) in twists.into_iter().enumerate() {
            let pc = params.clone();
            let ic = inhom.clone();
            specs.push(spec(
                format!("sov.properties.n{n}.t{ti}"),
                format!("q={q}; n={n}"),
                move || match check_eigenvector_properties(twist, &ic, &pc) {
                    Ok(rep) => {
                        let failing: Vec<&str> = rep
                            .checks
                            .iter()
                            .filter(|(_, ok)| !ok)
                            .map(|(name, _)| name.as_str())
                            .collect();
                        Outcome {
                            status: if failing.is_empty() {
                                CheckStatus::Pass
                            } else {
                                CheckStatus::Fail
                            },
                            lhs: if failing.is_empty() {
                                format!("all {} properties hold", rep.checks.len())
                            } else {
                                format!("failing: {}", failing.join(", "))
                            },
                            rhs: "all properties hold".into(),
                        }
                    }
                    Err(e) => err_outcome(e),
                },
            ));
        }
    }

    for n in 2..=cfg.max_n.min(5) {
        for (ti, twist) in twists.into_iter().enumerate() {
            let pc = params.clone();
            let x = params.x();
            specs.push(spec(
                format!("sov.hamiltonian-null.n{n}.t{ti}"),
                format!("q={q}; n={n}"),
                move || {
                    let h = match hamiltonian(n, &x, twist) {
                        Ok(h) => h,
                        Err(e) => return err_outcome(e),
                    };
                    let v = match phi(twist, n, &pc) {
                        Ok(v) => v,
                        Err(e) => return err_outcome(e),
                    };
                    let hv = h.m.matvec(&v.components);
                    bool_outcome(hv.iter().all(|c| c.is_zero()))
                },
            ));
        }
    }
    specs
}

fn partition_specs(cfg: &RunConfig) -> Vec<CheckSpec> {
    let mut d = SeededDraw::new(cfg.seed, cfg.max_denom);
    let mut specs = Vec::new();
    let q = d.q();
    let params = ModelParams::new(q.clone()).expect("generic q");

    {
        let z = d.point_set(2, &q);
        let w = d.point_set(2, &q);
        let pc = params.clone();
        let pstr = format!("q={q}; N=2");
        let (zc, wc) = (z.clone(), w.clone());
        specs.push(spec("partition.domain-wall", pstr.clone(), move || {
            let closed = match z_ik(&zc, &wc, &pc) {
                Ok(v) => v,
                Err(e) => return err_outcome(e),
            };
            let oracle = match z_bruteforce(&DomainSpec::Dwbc { z: zc, w: wc }, &pc) {
                Ok(v) => v,
                Err(e) => return err_outcome(e),
            };
            eq_outcome(&closed, &oracle)
        }));

        for sign in [1i8, -1] {
            let name = if sign == 1 { "plus" } else { "minus" };
            let pc = params.clone();
            let (zc, wc) = (z.clone(), w.clone());
            specs.push(spec(
                format!("partition.half-turn.{name}"),
                pstr.clone(),
                move || {
                    let closed = match z_ht(sign, &zc[..1], &wc[..1], &pc) {
                        Ok(v) => v,
                        Err(e) => return err_outcome(e),
                    };
                    let oracle = match z_bruteforce(
                        &DomainSpec::HalfTurn {
                            sign,
                            z: zc[..1].to_vec(),
                            w: wc[..1].to_vec(),
                        },
                        &pc,
                    ) {
                        Ok(v) => v,
                        Err(e) => return err_outcome(e),
                    };
                    eq_outcome(&closed, &oracle)
                },
            ));
        }

        let pc = params.clone();
        let wc = w.clone();
        specs.push(spec("partition.quarter-turn", pstr, move || {
            let closed = match z_qt_full(&wc, &pc) {
                Ok(v) => v,
                Err(e) => return err_outcome(e),
            };
            let oracle = match z_bruteforce(&DomainSpec::QuarterTurn { w: wc }, &pc) {
                Ok(v) => v,
                Err(e) => return err_outcome(e),
            };
            eq_outcome(&closed, &oracle)
        }));
    }

    {
        let x = d.point_set(1, &q);
        let y = d.point_set(1, &q);
        let b = d.scalar();
        let c = d.scalar();
        let pstr = format!("q={q}; n=1; x={}; y={}; b={b}; c={c}", x[0], y[0]);

        let pc = params.clone();
        let (xc, yc, bc) = (x.clone(), y.clone(), b.clone());
        specs.push(spec("partition.u-turn", pstr.clone(), move || {
            let closed = match z_u(&xc, &yc, &bc, &pc) {
                Ok(v) => v,
                Err(e) => return err_outcome(e),
            };
            let oracle = match z_bruteforce(
                &DomainSpec::Uturn { x: xc, y: yc, b: bc },
                &pc,
            ) {
                Ok(v) => v,
                Err(e) => return err_outcome(e),
            };
            eq_outcome(&closed, &oracle)
        }));

        let pc = params.clone();
        let (xc, yc, bc, cc) = (x.clone(), y.clone(), b.clone(), c.clone());
        specs.push(spec("partition.double-u-turn", pstr, move || {
            let closed = match z_uu(&xc, &yc, &bc, &cc, &pc) {
                Ok(v) => v,
                Err(e) => return err_outcome(e),
            };
            let oracle = match z_bruteforce(
                &DomainSpec::UuTurn { x: xc, y: yc, b: bc, c: cc },
                &pc,
            ) {
                Ok(v) => v,
                Err(e) => return err_outcome(e),
            };
            eq_outcome(&closed, &oracle)
        }));
    }

    {
        // The cap and ten-vertex domains need the half-parameter s.
        let s = d.rational();
        if let Ok(sp) = ModelParams::from_s(s.clone()) {
            let sq = s.clone() * s.clone();
            let x = d.point_set(1, &sq);
            let y = d.point_set(1, &sq);
            let y2 = d.point_set(2, &sq);
            let b = d.scalar();
            let pstr = format!("s={s}; x={}; b={b}", x[0]);

            let pc = sp.clone();
            let (xc, yc, bc) = (x.clone(), y.clone(), b.clone());
            specs.push(spec("partition.cap", pstr.clone(), move || {
                let closed = match z_cap(&xc, &yc, &bc, &pc) {
                    Ok(v) => v,
                    Err(e) => return err_outcome(e),
                };
                let oracle = match z_bruteforce(
                    &DomainSpec::ZcapDomain { x: xc, y: yc, b: bc },
                    &pc,
                ) {
                    Ok(v) => v,
                    Err(e) => return err_outcome(e),
                };
                eq_outcome(&closed, &oracle)
            }));

            let pc = sp.clone();
            let (xc, yc, bc) = (x.clone(), y2.clone(), b.clone());
            specs.push(spec("partition.ten-vertex", pstr, move || {
                let closed = match z_a(&xc, &yc, &bc, &pc) {
                    Ok(v) => v,
                    Err(e) => return err_outcome(e),
                };
                let direct = z_a_direct(&xc, &yc, &bc, &pc);
                if closed != direct {
                    return eq_outcome(&closed, &direct);
                }
                let oracle = match z_bruteforce(
                    &DomainSpec::ZaDomain { x: xc, y: yc, b: bc },
                    &pc,
                ) {
                    Ok(v) => v,
                    Err(e) => return err_outcome(e),
                };
                eq_outcome(&closed, &oracle)
            }));
        }
    }

    {
        let w = d.point_set(2, &q);
        let y = d.scalar();
        let inhom = InhomParams::new(w).expect("distinct parameters");
        let pc = params.clone();
        let ic = inhom.clone();
        let yc = y.clone();
        specs.push(spec(
            "partition.norm-generating",
            format!("q={q}; N=2; y={y}"),
            move || {
                let det = match z_ad(&yc, &ic, &pc) {
                    Ok(v) => v,
                    Err(e) => return err_outcome(e),
                };
                let direct = match z_ad_direct(&yc, &ic, &pc) {
                    Ok(v) => v,
                    Err(e) => return err_outcome(e),
                };
                eq_outcome(&det, &direct)
            },
        ));

        let pc = params.clone();
        specs.push(spec("partition.mixed-overlap", format!("q={q}; N=2"), move || {
            match z_mixed(&inhom, &pc) {
                Ok(v) => Outcome {
                    status: CheckStatus::Pass,
                    lhs: v.to_string(),
                    rhs: v.to_string(),
                },
                Err(e) => err_outcome(e),
            }
        }));
    }

    for (ti, twist) in [TwistKind::Diagonal, TwistKind::AntiDiagonal]
        .into_iter()
        .enumerate()
    {
        let x = d.point_set(1, &q);
        let b = d.scalar();
        let pc = params.clone();
        let pstr = format!("q={q}; n=1; x={}; b={b}", x[0]);
        specs.push(spec(format!("partition.boundary-overlap.t{ti}"), pstr, move || {
            match xi_scalar(twist, &x, &b, &pc) {
                Ok(v) => Outcome {
                    status: CheckStatus::Pass,
                    lhs: v.to_string(),
                    rhs: v.to_string(),
                },
                Err(e) => err_outcome(e),
            }
        }));
    }

    {
        let x = d.point_set(2, &q);
        let extra = d.scalar();
        let b = d.scalar();
        let pc = params.clone();
        let pstr = format!("q={q}; n=2; x1={}; x2={}", x[0], x[1]);
        specs.push(spec("partition.wheel", pstr, move || {
            let qv = pc.qs();
            let y = vec![
                x[1].div_ref(&qv).expect("generic q"),
                x[1].clone(),
                qv.mul_ref(&x[1]),
                extra,
            ];
            let v = z_a_direct(&x, &y, &b, &pc);
            eq_outcome(&v, &ExactScalar::zero())
        }));
    }
    specs
}

fn asm_specs(cfg: &RunConfig) -> Vec<CheckSpec> {
    let mut d = SeededDraw::new(cfg.seed, cfg.max_denom);
    let mut specs = Vec::new();

    specs.push(spec("asm.count.plain", "N=1..5", move || {
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate(AsmClass::Plain, n).map(|v| v.len()).unwrap_or(0))
            .collect();
        let want = vec![1usize, 2, 7, 42, 429];
        Outcome {
            status: if counts == want { CheckStatus::Pass } else { CheckStatus::Fail },
            lhs: format!("{counts:?}"),
            rhs: format!("{want:?}"),
        }
    }));

    specs.push(spec("asm.genfun.plain-size-3", "N=3", move || {
        let got = genfun(AsmClass::Plain, 3).expect("size in range");
        let want = GenPoly::constant(6.into()).add_ref(&GenPoly::t());
        Outcome {
            status: if got == want { CheckStatus::Pass } else { CheckStatus::Fail },
            lhs: got.to_string(),
            rhs: want.to_string(),
        }
    }));

    specs.push(spec("asm.genfun.vertical-mirror-size-5", "N=5", move || {
        let got = genfun(AsmClass::VerticalMirror, 5).expect("size in range");
        let want = GenPoly::constant(2.into()).add_ref(&GenPoly::t());
        Outcome {
            status: if got == want { CheckStatus::Pass } else { CheckStatus::Fail },
            lhs: got.to_string(),
            rhs: want.to_string(),
        }
    }));

    {
        // The full cross-pipeline suite at n = 2 enumerates 8 × 8 symmetry
        // classes and builds 243-component special vectors; only run it
        // when the size cap asks for it.
        let n_links = if cfg.max_n >= 3 { 2 } else { 1 };
        let q = d.q();
        let qc = q.clone();
        specs.push(spec("asm.links", format!("q={q}; n={n_links}"), move || {
            match check_kuperberg_links(n_links, qc) {
                Ok(results) => {
                    let failing: Vec<&str> = results
                        .iter()
                        .filter(|(_, ok)| !ok)
                        .map(|(name, _)| name.as_str())
                        .collect();
                    Outcome {
                        status: if failing.is_empty() {
                            CheckStatus::Pass
                        } else {
                            CheckStatus::Fail
                        },
                        lhs: if failing.is_empty() {
                            format!("all {} links hold", results.len())
                        } else {
                            format!("failing: {}", failing.join(", "))
                        },
                        rhs: "all links hold".into(),
                    }
                }
                Err(e) => err_outcome(e),
            }
        }));
    }

    for n in [3usize, 4] {
        let (a, b) = (d.rational(), d.rational());
        let (a2, b2) = loop {
            let a2 = d.rational();
            if a2 != a {
                break (a2, d.rational());
            }
        };
        let pstr = format!("alpha={a}; beta={b}; alpha'={a2}; beta'={b2}; N={n}");
        specs.push(spec(format!("asm.binomial-family.n{n}"), pstr, move || {
            bool_outcome(l_matrix_checks(&a, &b, &a2, &b2, n))
        }));
    }
    specs
}

/// Run one verification suite (or `all`).
pub fn cmd_verify(suite: &str, cfg: &RunConfig) -> Result<Report, String> {
    let specs = match suite {
        "local" => local_specs(cfg),
        "transfer" => transfer_specs(cfg),
        "sov" => sov_specs(cfg),
        "partition" => partition_specs(cfg),
        "asm" => asm_specs(cfg),
        "all" => {
            let mut v = local_specs(cfg);
            v.extend(transfer_specs(cfg));
            v.extend(sov_specs(cfg));
            v.extend(partition_specs(cfg));
            v.extend(asm_specs(cfg));
            v
        }
        other => {
            return Err(format!(
                "unknown suite `{other}` (expected local, transfer, sov, partition, asm, or all)"
            ))
        }
    };
    Ok(execute(suite, cfg, specs))
}

// ---------------------------------------------------------------------------
// One-shot computations.
// ---------------------------------------------------------------------------

/// Parse an enumeration class name.
pub fn parse_class(name: &str) -> Result<AsmClass, String> {
    match name {
        "plain" => Ok(AsmClass::Plain),
        "half-turn" => Ok(AsmClass::HalfTurn),
        "quarter-turn" => Ok(AsmClass::QuarterTurn),
        "vertical-mirror" => Ok(AsmClass::VerticalMirror),
        "double-u-turn" => Ok(AsmClass::DoubleUTurn),
        "double-mirror" => Ok(AsmClass::DoubleMirror),
        _ => Err(format!(
            "unknown class `{name}` (expected plain, half-turn, quarter-turn, \
             vertical-mirror, double-u-turn, or double-mirror)"
        )),
    }
}

/// Parse a closed-form name.
pub fn parse_form(name: &str) -> Result<ClosedFormName, String> {
    match name {
        "norm-generating" => Ok(ClosedFormName::ZadHom),
        "vertical-mirror" => Ok(ClosedFormName::AV),
        "quarter-turn-1" => Ok(ClosedFormName::AQt1),
        "double-u-turn-2" => Ok(ClosedFormName::AUu2),
        "double-u-turn-2-bare" => Ok(ClosedFormName::AUu2Tilde),
        "half-plus" => Ok(ClosedFormName::AVhp2),
        _ => Err(format!(
            "unknown closed form `{name}` (expected norm-generating, vertical-mirror, \
             quarter-turn-1, double-u-turn-2, double-u-turn-2-bare, or half-plus)"
        )),
    }
}

/// Parse a twist name.
pub fn parse_twist(name: &str) -> Result<TwistKind, String> {
    match name {
        "diagonal" | "d" => Ok(TwistKind::Diagonal),
        "anti-diagonal" | "ad" => Ok(TwistKind::AntiDiagonal),
        _ => Err(format!("unknown twist `{name}` (expected diagonal or anti-diagonal)")),
    }
}

/// Parse a rational like `3/2` or `-5`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    Rational::from_str(text).map_err(|e| format!("invalid rational `{text}`: {e}"))
}

#[derive(Serialize)]
struct PolyOutput {
    name: String,
    size: usize,
    terms: Vec<([i32; 3], String)>,
    display: String,
}

fn render_poly(name: String, size: usize, p: &GenPoly, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&PolyOutput {
            name,
            size,
            terms: p.to_sorted_pairs(),
            display: p.to_string(),
        })
        .expect("polynomial serializes"),
        OutputFormat::Csv => {
            let mut out = String::from("t,y,z,coefficient\n");
            for ([a, b, c], v) in p.to_sorted_pairs() {
                let _ = writeln!(out, "{a},{b},{c},{v}");
            }
            out
        }
        OutputFormat::Human => format!("{name}({size}) = {p}"),
    }
}

/// `compute genfun`: weighted enumeration of a symmetry class, or a
/// closed-form polynomial.
pub fn cmd_compute_genfun(
    class: Option<&str>,
    form: Option<&str>,
    size: usize,
    format: OutputFormat,
) -> Result<String, String> {
    match (class, form) {
        (Some(c), None) => {
            let cls = parse_class(c)?;
            let p = genfun(cls, size).map_err(|e| e.to_string())?;
            Ok(render_poly(c.into(), size, &p, format))
        }
        (None, Some(f)) => {
            let name = parse_form(f)?;
            let p = closed_form(name, size);
            Ok(render_poly(f.into(), size, &p, format))
        }
        _ => Err("specify exactly one of --class or --form".into()),
    }
}

#[derive(Serialize)]
struct ValueOutput {
    kind: String,
    parameters: String,
    value: String,
    oracle: Option<String>,
    matches: Option<bool>,
}

fn render_value(v: ValueOutput, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&v).expect("value serializes"),
        OutputFormat::Csv => format!(
            "kind,parameters,value,oracle,matches\n\"{}\",\"{}\",\"{}\",\"{}\",\"{}\"\n",
            v.kind,
            v.parameters.replace('"', "\"\""),
            v.value,
            v.oracle.as_deref().unwrap_or(""),
            v.matches.map(|b| b.to_string()).unwrap_or_default()
        ),
        OutputFormat::Human => {
            let mut out = format!("{} [{}]\n  value  = {}\n", v.kind, v.parameters, v.value);
            if let Some(o) = &v.oracle {
                let _ = writeln!(out, "  oracle = {o}");
            }
            if let Some(m) = v.matches {
                let _ = writeln!(out, "  match  = {m}");
            }
            out
        }
    }
}

/// `compute partition`: evaluate one closed-form partition function at
/// seeded random parameters and compare with the configuration-sum oracle.
pub fn cmd_compute_partition(
    kind: &str,
    cfg: &RunConfig,
) -> Result<String, String> {
    let mut d = SeededDraw::new(cfg.seed, cfg.max_denom);
    let q = d.q();
    let params = ModelParams::new(q.clone()).map_err(|e| e.to_string())?;
    let perr = |e: crate::partition::PartitionError| e.to_string();
    let out = match kind {
        "domain-wall" => {
            let z = d.point_set(2, &q);
            let w = d.point_set(2, &q);
            let v = z_ik(&z, &w, &params).map_err(perr)?;
            let o = z_bruteforce(&DomainSpec::Dwbc { z: z.clone(), w: w.clone() }, &params)
                .map_err(perr)?;
            ValueOutput {
                kind: kind.into(),
                parameters: format!("q={q}; z={};{}; w={};{}", z[0], z[1], w[0], w[1]),
                value: v.to_string(),
                oracle: Some(o.to_string()),
                matches: Some(v == o),
            }
        }
        "half-turn-plus" | "half-turn-minus" => {
            let sign: i8 = if kind.ends_with("plus") { 1 } else { -1 };
            let z = d.point_set(1, &q);
            let w = d.point_set(1, &q);
            let v = z_ht(sign, &z, &w, &params).map_err(perr)?;
            let o = z_bruteforce(
                &DomainSpec::HalfTurn { sign, z: z.clone(), w: w.clone() },
                &params,
            )
            .map_err(perr)?;
            ValueOutput {
                kind: kind.into(),
                parameters: format!("q={q}; z={}; w={}", z[0], w[0]),
                value: v.to_string(),
                oracle: Some(o.to_string()),
                matches: Some(v == o),
            }
        }
        "quarter-turn" => {
            let w = d.point_set(2, &q);
            let v = z_qt_full(&w, &params).map_err(perr)?;
            let o = z_bruteforce(&DomainSpec::QuarterTurn { w: w.clone() }, &params)
                .map_err(perr)?;
            ValueOutput {
                kind: kind.into(),
                parameters: format!("q={q}; w={};{}", w[0], w[1]),
                value: v.to_string(),
                oracle: Some(o.to_string()),
                matches: Some(v == o),
            }
        }
        "u-turn" => {
            let x = d.point_set(1, &q);
            let y = d.point_set(1, &q);
            let b = d.scalar();
            let v = z_u(&x, &y, &b, &params).map_err(perr)?;
            let o = z_bruteforce(
                &DomainSpec::Uturn { x: x.clone(), y: y.clone(), b: b.clone() },
                &params,
            )
            .map_err(perr)?;
            ValueOutput {
                kind: kind.into(),
                parameters: format!("q={q}; x={}; y={}; b={b}", x[0], y[0]),
                value: v.to_string(),
                oracle: Some(o.to_string()),
                matches: Some(v == o),
            }
        }
        "double-u-turn" => {
            let x = d.point_set(1, &q);
            let y = d.point_set(1, &q);
            let b = d.scalar();
            let c = d.scalar();
            let v = z_uu(&x, &y, &b, &c, &params).map_err(perr)?;
            let o = z_bruteforce(
                &DomainSpec::UuTurn {
                    x: x.clone(),
                    y: y.clone(),
                    b: b.clone(),
                    c: c.clone(),
                },
                &params,
            )
            .map_err(perr)?;
            ValueOutput {
                kind: kind.into(),
                parameters: format!("q={q}; x={}; y={}; b={b}; c={c}", x[0], y[0]),
                value: v.to_string(),
                oracle: Some(o.to_string()),
                matches: Some(v == o),
            }
        }
        "norm-generating" => {
            let w = d.point_set(2, &q);
            let y = d.scalar();
            let inhom = InhomParams::new(w.clone()).map_err(|e| e.to_string())?;
            let v = z_ad(&y, &inhom, &params).map_err(perr)?;
            let o = z_ad_direct(&y, &inhom, &params).map_err(perr)?;
            ValueOutput {
                kind: kind.into(),
                parameters: format!("q={q}; w={};{}; y={y}", w[0], w[1]),
                value: v.to_string(),
                oracle: Some(o.to_string()),
                matches: Some(v == o),
            }
        }
        "mixed-overlap" => {
            let w = d.point_set(2, &q);
            let inhom = InhomParams::new(w.clone()).map_err(|e| e.to_string())?;
            let v = z_mixed(&inhom, &params).map_err(perr)?;
            ValueOutput {
                kind: kind.into(),
                parameters: format!("q={q}; w={};{}", w[0], w[1]),
                value: v.to_string(),
                oracle: None,
                matches: None,
            }
        }
        other => {
            return Err(format!(
                "unknown partition kind `{other}` (expected domain-wall, half-turn-plus, \
                 half-turn-minus, quarter-turn, u-turn, double-u-turn, norm-generating, \
                 or mixed-overlap)"
            ))
        }
    };
    Ok(render_value(out, cfg.format))
}

/// `compute component`: one component of the homogeneous special vector.
/// The pattern is a string over `u` (up), `0` (zero), `d` (down), one
/// letter per site starting from site 1.
pub fn cmd_compute_component(
    twist_name: &str,
    pattern: &str,
    q_text: &str,
    format: OutputFormat,
) -> Result<String, String> {
    let twist = parse_twist(twist_name)?;
    let q = parse_rational(q_text)?;
    let params = ModelParams::new(q.clone()).map_err(|e| e.to_string())?;
    let n = pattern.len();
    if n == 0 || n > 6 {
        return Err("pattern length must be between 1 and 6".into());
    }
    let mut idx = 0usize;
    for ch in pattern.chars() {
        let digit = match ch {
            'u' | '^' => 0usize,
            '0' => 1,
            'd' | 'v' => 2,
            other => return Err(format!("invalid pattern letter `{other}`")),
        };
        idx = idx * 3 + digit;
    }
    let v = phi(twist, n, &params).map_err(|e| e.to_string())?;
    Ok(render_value(
        ValueOutput {
            kind: "component".into(),
            parameters: format!("twist={twist_name}; q={q}; pattern={pattern}"),
            value: v.components[idx].to_string(),
            oracle: None,
            matches: None,
        },
        format,
    ))
}

#[derive(Serialize)]
struct SumruleRow {
    point: String,
    lhs: String,
    rhs: String,
    matches: bool,
}

#[derive(Serialize)]
struct SumruleOutput {
    n: usize,
    q: String,
    polynomial: String,
    rows: Vec<SumruleRow>,
}

/// `compute sumrule`: the magnetization-refined homogeneous square norm as
/// a polynomial, checked at its three special points against weighted
/// enumerations.
pub fn cmd_compute_sumrule(
    n: usize,
    q_text: &str,
    format: OutputFormat,
) -> Result<String, String> {
    if n == 0 || n > 4 {
        return Err("size must be between 1 and 4".into());
    }
    let q = parse_rational(q_text)?;
    let params = ModelParams::new(q.clone()).map_err(|e| e.to_string())?;
    let one = ExactScalar::one();
    let x = params.sc(params.x());
    let t = x.mul_ref(&x);
    let zh = crate::asm::zad_hom(n);
    let a_poly = genfun(AsmClass::Plain, n).map_err(|e| e.to_string())?;
    let ev = |p: &GenPoly| p.eval_scalar(&t, &one, &one);
    let mut rows = Vec::new();

    let lhs = zh.eval_scalar(&t, &params.qs(), &one);
    let rhs = x.pow(n as i64).mul_ref(&ev(&a_poly));
    rows.push(SumruleRow {
        point: "y=q".into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        matches: lhs == rhs,
    });

    let lhs = zh.eval_scalar(&t, &one, &one).mul_ref(&ev(&a_poly));
    let ht_plus = genfun(AsmClass::HalfTurn, 2 * n).map_err(|e| e.to_string())?;
    let rhs = ev(&ht_plus);
    rows.push(SumruleRow {
        point: "y=1".into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        matches: lhs == rhs,
    });

    let lhs = zh
        .eval_scalar(&t, &ExactScalar::i(), &one)
        .mul_ref(&ev(&a_poly));
    let ht_minus =
        crate::asm::genfun_half_turn_signed(2 * n).map_err(|e| e.to_string())?;
    let rhs = ExactScalar::i().pow(n as i64).mul_ref(&ev(&ht_minus));
    rows.push(SumruleRow {
        point: "y=i".into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        matches: lhs == rhs,
    });

    let out = SumruleOutput {
        n,
        q: q.to_string(),
        polynomial: zh.to_string(),
        rows,
    };
    match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&out).map_err(|e| e.to_string())
        }
        OutputFormat::Csv => {
            let mut s = String::from("point,lhs,rhs,matches\n");
            for r in &out.rows {
                let _ = writeln!(s, "\"{}\",\"{}\",\"{}\",{}", r.point, r.lhs, r.rhs, r.matches);
            }
            Ok(s)
        }
        OutputFormat::Human => {
            let mut s = format!("refined square norm, N={n}, q={q}\n  Z(t, y) = {}\n", out.polynomial);
            for r in &out.rows {
                let tag = if r.matches { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "  {tag} {}: {} vs {}", r.point, r.lhs, r.rhs);
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct EnumOutput {
    class: String,
    size: usize,
    count: usize,
    genfun: String,
    matrices: Vec<Vec<String>>,
}

/// `enumerate`: list matrices of a symmetry class (rows as signed digits).
pub fn cmd_enumerate(
    class_name: &str,
    size: usize,
    limit: usize,
    format: OutputFormat,
) -> Result<String, String> {
    let class = parse_class(class_name)?;
    let mats = enumerate(class, size).map_err(|e| e.to_string())?;
    let gf = genfun(class, size).map_err(|e| e.to_string())?;
    let shown = mats.iter().take(limit);
    let rendered: Vec<Vec<String>> = shown
        .map(|m| {
            (0..m.rows)
                .map(|i| {
                    (0..m.cols)
                        .map(|j| m.at(i, j).to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect()
        })
        .collect();
    let out = EnumOutput {
        class: class_name.into(),
        size,
        count: mats.len(),
        genfun: gf.to_string(),
        matrices: rendered,
    };
    match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&out).map_err(|e| e.to_string())
        }
        OutputFormat::Csv => {
            let mut s = String::from("class,size,count,genfun\n");
            let _ = writeln!(s, "\"{}\",{},{},\"{}\"", out.class, out.size, out.count, out.genfun);
            Ok(s)
        }
        OutputFormat::Human => {
            let mut s = format!(
                "{} size {}: {} matrices, generating function {}\n",
                out.class, out.size, out.count, out.genfun
            );
            for (k, m) in out.matrices.iter().enumerate() {
                let _ = writeln!(s, "matrix {k}:");
                for row in m {
                    let _ = writeln!(s, "  {row}");
                }
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct ApproxReport {
    /// Spectrum values are floating point, not exact.
    approximate: bool,
    report: SpectrumReport,
}

/// `spectrum`: floating-point sector spectra of the chain Hamiltonian.
pub fn cmd_spectrum(
    n: usize,
    x: f64,
    twist_name: &str,
    format: OutputFormat,
) -> Result<String, String> {
    let twist = parse_twist(twist_name)?;
    if n < 2 || n > 8 {
        return Err("chain length must be between 2 and 8".into());
    }
    let report = spectrum_probe(n, x, twist).map_err(|e| e.to_string())?;
    match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&ApproxReport { approximate: true, report })
                .map_err(|e| e.to_string())
        }
        OutputFormat::Csv => {
            let mut s = String::from("sector,eigenvalue\n");
            for sec in &report.sectors {
                for e in &sec.eigenvalues {
                    let _ = writeln!(s, "\"{}\",{e}", sec.sector);
                }
            }
            Ok(s)
        }
        OutputFormat::Human => {
            let mut s = format!(
                "spectrum (approximate): n={n}, x={x}, twist={twist_name}\n\
                 zero-energy degeneracy: {}\nminimum eigenvalue: {}\n\
                 non-zero sector spectra match: {}\n",
                report.zero_degeneracy, report.min_eigenvalue, report.nonzero_spectra_match
            );
            for sec in &report.sectors {
                let vals: Vec<String> =
                    sec.eigenvalues.iter().map(|e| format!("{e:.6}")).collect();
                let _ = writeln!(s, "sector {}: {}", sec.sector, vals.join(", "));
            }
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config(seed: u64) -> RunConfig {
        RunConfig { seed, max_n: 2, jobs: 1, format: OutputFormat::Json, max_denom: 40 }
    }

    #[test]
    fn anchor_registry_has_unique_prefixes() {
        for (i, (a, _)) in ANCHORS.iter().enumerate() {
            for (b, _) in &ANCHORS[i + 1..] {
                assert_ne!(a, b, "duplicate anchor prefix {a}");
            }
        }
    }

    #[test]
    fn local_suite_passes_and_is_deterministic() {
        let cfg = quick_config(7);
        let r1 = cmd_verify("local", &cfg).unwrap();
        assert!(r1.all_pass(), "{}", r1.render(OutputFormat::Human));
        let r2 = cmd_verify("local", &cfg).unwrap();
        assert_eq!(r1.render(OutputFormat::Json), r2.render(OutputFormat::Json));
    }

    #[test]
    fn transfer_suite_passes() {
        let cfg = quick_config(11);
        let r = cmd_verify("transfer", &cfg).unwrap();
        assert!(r.all_pass(), "{}", r.render(OutputFormat::Human));
    }

    #[test]
    fn sov_suite_passes() {
        let cfg = quick_config(3);
        let r = cmd_verify("sov", &cfg).unwrap();
        assert!(r.all_pass(), "{}", r.render(OutputFormat::Human));
    }

    #[test]
    fn partition_suite_passes() {
        let cfg = quick_config(5);
        let r = cmd_verify("partition", &cfg).unwrap();
        assert!(r.all_pass(), "{}", r.render(OutputFormat::Human));
    }

    #[test]
    fn asm_suite_passes() {
        let cfg = quick_config(13);
        let r = cmd_verify("asm", &cfg).unwrap();
        assert!(r.all_pass(), "{}", r.render(OutputFormat::Human));
    }

    #[test]
    fn parallel_report_matches_serial() {
        let mut cfg = quick_config(17);
        let serial = cmd_verify("local", &cfg).unwrap();
        cfg.jobs = 4;
        let parallel = cmd_verify("local", &cfg).unwrap();
        assert_eq!(
            serial.render(OutputFormat::Json),
            parallel.render(OutputFormat::Json)
        );
    }

    #[test]
    fn compute_commands_render() {
        let out = cmd_compute_genfun(Some("plain"), None, 3, OutputFormat::Human).unwrap();
        assert!(out.contains("6 + t"), "{out}");
        let out = cmd_compute_genfun(None, Some("vertical-mirror"), 2, OutputFormat::Json)
            .unwrap();
        assert!(out.contains("\"display\""), "{out}");
        let out = cmd_compute_sumrule(2, "2", OutputFormat::Human).unwrap();
        assert!(out.contains("PASS y=q"), "{out}");
        assert!(!out.contains("FAIL"), "{out}");
        let out = cmd_enumerate("plain", 3, 2, OutputFormat::Human).unwrap();
        assert!(out.contains("7 matrices"), "{out}");
        let out = cmd_compute_component("ad", "uu", "2", OutputFormat::Human).unwrap();
        assert!(out.contains("value"), "{out}");
        let out = cmd_spectrum(2, 2.0, "diagonal", OutputFormat::Json).unwrap();
        assert!(out.contains("\"approximate\": true"), "{out}");
    }

    #[test]
    fn compute_partition_matches_oracles() {
        let cfg = quick_config(23);
        for kind in [
            "domain-wall",
            "half-turn-plus",
            "half-turn-minus",
            "quarter-turn",
            "u-turn",
            "double-u-turn",
            "norm-generating",
        ] {
            let out = cmd_compute_partition(kind, &cfg).unwrap();
            assert!(out.contains("\"matches\": true"), "{kind}: {out}");
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        let cfg = quick_config(1);
        assert!(cmd_verify("bogus", &cfg).is_err());
        assert!(cmd_compute_partition("bogus", &cfg).is_err());
        assert!(parse_class("bogus").is_err());
        assert!(parse_form("bogus").is_err());
        assert!(parse_twist("bogus").is_err());
        assert!(parse_rational("x").is_err());
    }
}
