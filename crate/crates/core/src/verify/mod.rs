//! Seeded verification suites for every identity the library implements.
//!
//! A suite draws cones (the degenerate catalog first, then random ones),
//! builds atomic [`Instance`]s from them and evaluates each exactly. Every
//! trial gets its own seed derived from the master seed and the trial
//! index, so reports do not depend on evaluation order.

mod checks;
mod generate;
mod oracle;
mod suites;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gamma::Mutation;
use crate::linalg::QVector;
use crate::rational::Rational;
use crate::Cone;

pub use checks::{evaluate, Check, Instance, Outcome, MAX_EXHAUSTIVE_FACETS};
pub use generate::{degenerate_catalog, random_cone, random_point, GeneratorMode, GeneratorProfile, MAX_GENERATOR_DIM};
pub use oracle::{brute_force_angle_cone, brute_force_faces, lattice_matches_brute_force, MAX_ORACLE_FACETS};

/// Suite names accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: [&str; 15] = [
    "euler",
    "iep",
    "bgs",
    "wellknown",
    "dual-valuation",
    "gameazy",
    "xyvanish",
    "gambound",
    "main-cut",
    "closed-form-2d",
    "reciprocity",
    "prime-cut",
    "lang",
    "angle-definition",
    "lattice-oracle",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Random cones drawn, spread round-robin over the dimensions.
    pub trials: usize,
    pub seed: u64,
    pub dim_min: usize,
    pub dim_max: usize,
    /// Generator modes to draw from; `None` uses the suite's own mix.
    pub modes: Option<Vec<GeneratorMode>>,
    pub max_generators: Option<usize>,
    pub coord_bound: i64,
    /// Sample points (or point pairs) per cone.
    pub points: usize,
    /// Also run the degenerate catalog for every dimension.
    pub catalog: bool,
    /// Stop once this many failures were found.
    pub max_failures: Option<usize>,
    /// Shrink each failure to a smaller counterexample.
    pub minimize: bool,
    #[doc(hidden)]
    pub mutation: Mutation,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            trials: 100,
            seed: 0,
            dim_min: 1,
            dim_max: 4,
            modes: None,
            max_generators: None,
            coord_bound: 3,
            points: 50,
            catalog: true,
            max_failures: Some(20),
            minimize: true,
            mutation: Mutation::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub trial: usize,
    /// Seed of the trial that produced the instance.
    pub seed: u64,
    pub instance: Instance,
    pub outcome: Outcome,
    /// A smaller instance failing the same check, if shrinking succeeded.
    pub minimized: Option<(Instance, Outcome)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub suite: String,
    /// Cones examined, catalog included.
    pub trials: usize,
    /// Instances evaluated with their preconditions met.
    pub checks: usize,
    /// `checks` split by check name.
    pub by_check: BTreeMap<String, usize>,
    /// Instances whose preconditions did not hold.
    pub skipped: usize,
    /// Instances on the sphere `<x, x - y> = 0`.
    pub boundary_cases: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    fn new(suite: &str) -> Self {
        CheckReport { suite: suite.into(), trials: 0, checks: 0, by_check: BTreeMap::new(), skipped: 0, boundary_cases: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Collects outcomes for one suite run.
pub(crate) struct Recorder<'a> {
    options: &'a SuiteOptions,
    report: CheckReport,
    trial: usize,
    seed: u64,
}

impl Recorder<'_> {
    pub(crate) fn record(&mut self, instance: Instance, outcome: Option<Outcome>) {
        let Some(outcome) = outcome else {
            self.report.skipped += 1;
            return;
        };
        self.report.checks += 1;
        *self.report.by_check.entry(instance.check.name()).or_default() += 1;
        if let [y, x] = instance.vectors.as_slice() {
            if matches!(instance.check, Check::GamBound | Check::GammaOracle) && x.inner(&x.sub(y)).is_zero() {
                self.report.boundary_cases += 1;
            }
        }
        if outcome.passed() || self.full() {
            return;
        }
        let minimized = if self.options.minimize { minimize(&instance, self.options.mutation, 200) } else { None };
        self.report.failures.push(Failure { trial: self.trial, seed: self.seed, instance, outcome, minimized });
    }

    /// Evaluates and records an instance.
    pub(crate) fn run(&mut self, instance: Instance) -> Result<()> {
        let outcome = evaluate(&instance, self.options.mutation)?;
        self.record(instance, outcome);
        Ok(())
    }

    fn full(&self) -> bool {
        self.options.max_failures.is_some_and(|m| self.report.failures.len() >= m)
    }
}

pub fn run_suite(name: &str, options: &SuiteOptions) -> Result<CheckReport> {
    let suite = suites::lookup(name).ok_or_else(|| Error::UnknownSuite(name.into()))?;
    let (lo, hi) = suite.dims.unwrap_or((options.dim_min, options.dim_max));
    if lo == 0 || lo > hi || hi > MAX_GENERATOR_DIM {
        return Err(Error::Unsupported(alloc::format!("dimension range {lo}..={hi} is outside 1..={MAX_GENERATOR_DIM}")));
    }
    let modes: Vec<GeneratorMode> = match (&options.modes, suite.modes) {
        (_, Some(forced)) => forced.to_vec(),
        (Some(m), None) if !m.is_empty() => m.clone(),
        _ => suites::DEFAULT_MODES.to_vec(),
    };
    let mut rec = Recorder { options, report: CheckReport::new(name), trial: 0, seed: 0 };
    let mut index = 0usize;
    if options.catalog {
        for d in lo..=hi {
            for cone in degenerate_catalog(d) {
                run_trial(&mut rec, &suite, index, cone)?;
                index += 1;
                if rec.full() {
                    return Ok(rec.report);
                }
            }
        }
    }
    let dims = hi - lo + 1;
    for t in 0..options.trials {
        let seed = generate::trial_seed(options.seed, index as u64);
        let mut rng = generate::rng_from(seed);
        let dim = lo + t % dims;
        let mode = modes[rand::Rng::gen_range(&mut rng, 0..modes.len())];
        let mut profile = GeneratorProfile::new(dim, mode, rand::Rng::gen(&mut rng));
        profile.coord_bound = options.coord_bound;
        profile.max_generators = options.max_generators.unwrap_or(dim + 2);
        let cone = random_cone(&profile)?;
        run_trial(&mut rec, &suite, index, cone)?;
        index += 1;
        if rec.full() {
            break;
        }
    }
    Ok(rec.report)
}

fn run_trial(rec: &mut Recorder, suite: &suites::Suite, index: usize, cone: Cone) -> Result<()> {
    let seed = generate::trial_seed(rec.options.seed ^ suite.salt, index as u64);
    rec.trial = index;
    rec.seed = seed;
    rec.report.trials += 1;
    let mut rng = generate::rng_from(seed);
    (suite.run)(rec, &mut rng, &cone)
}

/// Every suite in [`SUITES`] order.
pub fn run_all(options: &SuiteOptions) -> Result<Vec<CheckReport>> {
    SUITES.iter().map(|s| run_suite(s, options)).collect()
}

/// Greedily shrinks a failing instance: drops generators, halves
/// coordinates and pulls vector entries towards zero while the check
/// still fails. `None` if nothing smaller fails.
pub fn minimize(instance: &Instance, mutation: Mutation, budget: usize) -> Option<(Instance, Outcome)> {
    let fails = |i: &Instance| match evaluate(i, mutation) {
        Ok(Some(o)) if !o.passed() => Some(o),
        _ => None,
    };
    let mut best: Option<(Instance, Outcome)> = None;
    let mut current = instance.clone();
    let mut spent = 0;
    'outer: while spent < budget {
        for cand in shrink_candidates(&current) {
            spent += 1;
            if let Some(o) = fails(&cand) {
                current = cand.clone();
                best = Some((cand, o));
                continue 'outer;
            }
            if spent >= budget {
                break 'outer;
            }
        }
        break;
    }
    best
}

fn halve_toward_zero(r: &Rational) -> Option<Rational> {
    let (p, q) = r.to_i64_parts()?;
    (p != 0).then(|| Rational::new(p / 2, q))
}

fn truncate(r: &Rational) -> Option<Rational> {
    let (p, q) = r.to_i64_parts()?;
    (q != 1).then(|| Rational::integer(p / q))
}

fn shrink_candidates(inst: &Instance) -> Vec<Instance> {
    let mut out = Vec::new();
    let cone = &inst.cone;
    let d = cone.dim();
    let rays = cone.rays().to_vec();
    let lin = cone.lineality().rows().to_vec();
    let mut with_cone = |c: Result<Cone>| {
        if let Ok(c) = c {
            if c != *cone && inst.face.is_none_or(|f| f.0 < c.face_lattice().len()) {
                out.push(Instance { cone: c, ..inst.clone() });
            }
        }
    };
    for i in 0..rays.len() {
        let mut r = rays.clone();
        r.remove(i);
        with_cone(Cone::from_vrep(d, &r, &lin));
    }
    for i in 0..lin.len() {
        let mut l = lin.clone();
        l.remove(i);
        with_cone(Cone::from_vrep(d, &rays, &l));
    }
    for i in 0..rays.len() {
        let coords: Option<Vec<Rational>> = rays[i].iter().map(|c| Some(halve_toward_zero(c).unwrap_or_else(Rational::zero))).collect();
        if let Some(c) = coords {
            let v = QVector::new(c);
            if !v.is_zero() {
                let mut r = rays.clone();
                r[i] = v;
                with_cone(Cone::from_vrep(d, &r, &lin));
            }
        }
    }
    for (vi, v) in inst.vectors.iter().enumerate() {
        for j in 0..v.dim() {
            let mut alts = Vec::new();
            if !v[j].is_zero() {
                alts.push(Rational::zero());
            }
            alts.extend(truncate(&v[j]));
            alts.extend(halve_toward_zero(&v[j]).filter(|h| !h.is_zero()));
            for a in alts {
                let mut coords = v.coords().to_vec();
                coords[j] = a;
                let mut vectors = inst.vectors.clone();
                vectors[vi] = QVector::new(coords);
                out.push(Instance { vectors, ..inst.clone() });
            }
        }
    }
    out
}
