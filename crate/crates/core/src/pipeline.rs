//! End-to-end run: labels → basis → generators → relations → 1-dim reps.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{DenominatorLedger, Rational};
use crate::basisbuilder::{build_graded_basis, GradedBasis};
use crate::catalogue;
use crate::error::{Result, WalgError};
use crate::generators::{compute_generators, generator_ledger, Generator, TailStrategy, ThetaAlgebra, DEFAULT_MAX_CANDIDATES};
use crate::onedim::{build_system, default_limits, needed_relation_pairs, representation_from_solution, solve_system, OneDimSystem, SolutionSet};
use crate::relations::{build_presentation, build_relations, kazhdan_bound_holds, Presentation};
use crate::rootsystem::{simple_lie_algebra, LieAlgebraData, LieType};
use crate::sl2grading::{grading_from_labels, sl2_triple, DynkinLabels, Grading, Sl2Triple};
use crate::uea::PbwModule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Present,
    GeneratorsOnly,
    OnedimFast,
}

impl FromStr for Mode {
    type Err = WalgError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "present" => Ok(Mode::Present),
            "generators-only" => Ok(Mode::GeneratorsOnly),
            "onedim-fast" => Ok(Mode::OnedimFast),
            _ => Err(WalgError::InvalidInput(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Present => "present",
            Mode::GeneratorsOnly => "generators-only",
            Mode::OnedimFast => "onedim-fast",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub lie_type: LieType,
    pub rank: usize,
    pub labels: DynkinLabels,
    pub orbit: Option<String>,
    pub mode: Mode,
    pub max_candidates: usize,
    pub threads: Option<usize>,
    pub solver_degree_bound: Option<u32>,
    pub tail: TailStrategy,
    /// Root vector signs; `None` uses the reference signs for the type.
    pub signs: Option<Vec<i8>>,
}

impl RunConfig {
    pub fn new(lie_type: LieType, rank: usize, labels: DynkinLabels) -> Self {
        RunConfig {
            lie_type,
            rank,
            labels,
            orbit: None,
            mode: Mode::Present,
            max_candidates: DEFAULT_MAX_CANDIDATES,
            threads: None,
            solver_degree_bound: None,
            tail: TailStrategy::Auto,
            signs: None,
        }
    }

    /// Configuration for a catalogued orbit name.
    pub fn for_orbit(lie_type: LieType, rank: usize, name: &str) -> Result<Self> {
        let e = catalogue::lookup(lie_type, rank, name).ok_or_else(|| {
            WalgError::InvalidInput(format!("no catalogued orbit {name:?} in {lie_type}{rank}"))
        })?;
        let mut c = RunConfig::new(lie_type, rank, DynkinLabels::new(e.labels.to_vec())?);
        c.orbit = Some(e.name.to_string());
        Ok(c)
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn effective_signs(&self) -> Option<Vec<i8>> {
        self.signs
            .clone()
            .or_else(|| catalogue::reference_signs(self.lie_type, self.rank).map(<[i8]>::to_vec))
    }
}

pub struct RunResult {
    pub config: RunConfig,
    pub algebra: LieAlgebraData,
    pub grading: Grading,
    pub triple: Sl2Triple,
    pub basis: GradedBasis,
    pub generators: Vec<Generator>,
    /// Relations; in onedim-fast mode only those the system needs.
    pub presentation: Option<Presentation>,
    pub system: Option<OneDimSystem>,
    pub solutions: Option<SolutionSet>,
    /// ρ(Θ_1 … Θ_r) for each rational solution.
    pub representations: Vec<Vec<Rational>>,
    pub ledger: DenominatorLedger,
}

pub fn build_algebra(config: &RunConfig) -> Result<LieAlgebraData> {
    let g = simple_lie_algebra(config.lie_type, config.rank)?;
    match config.effective_signs() {
        Some(s) => g.with_root_signs(&s),
        None => Ok(g),
    }
}

pub fn run(config: &RunConfig) -> Result<RunResult> {
    match config.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| WalgError::InvalidInput(format!("thread pool: {e}")))?;
            pool.install(|| run_inner(config))
        }
        None => run_inner(config),
    }
}

fn run_inner(config: &RunConfig) -> Result<RunResult> {
    let g = build_algebra(config)?;
    if config.labels.as_slice().len() != g.rank() {
        return Err(WalgError::InvalidLabels(format!(
            "{} labels given for rank {}",
            config.labels.as_slice().len(),
            g.rank()
        )));
    }
    let grading = grading_from_labels(&g, &config.labels)?;
    let triple = sl2_triple(&g, &grading, &config.labels)?;
    let basis = build_graded_basis(&g, &grading, &triple)?;
    let mut ledger = basis.ledger.clone();

    let q = PbwModule::gelfand_graev(&basis);
    let generators = compute_generators(&q, config.max_candidates, config.tail)?;
    ledger.merge(&generator_ledger(&generators));

    let mut presentation = None;
    let mut system = None;
    let mut solutions = None;
    let mut representations = Vec::new();
    if config.mode != Mode::GeneratorsOnly {
        let alg = ThetaAlgebra::new(&q, &generators);
        let pres = match config.mode {
            Mode::Present => build_presentation(&alg)?,
            _ => {
                let relations = build_relations(&alg, &needed_relation_pairs(&basis))?;
                let mut l = DenominatorLedger::new();
                for p in relations.values() {
                    l.add_all(p.terms.values(), "relations");
                }
                Presentation {
                    r: basis.r,
                    b: basis.b,
                    relations,
                    ledger: l,
                }
            }
        };
        for ((i, j), p) in &pres.relations {
            if !kazhdan_bound_holds(&basis, *i, *j, p) {
                return Err(WalgError::invariant(
                    "relations",
                    format!("F({},{}) exceeds the Kazhdan bound", i + 1, j + 1),
                ));
            }
        }
        ledger.merge(&pres.ledger);
        let sys = build_system(&pres, &basis)?;
        let sol = solve_system(&sys, &default_limits(config.solver_degree_bound))?;
        for s in &sol.solutions {
            if s.is_rational() {
                representations.push(representation_from_solution(s, &pres, &basis)?);
            }
        }
        presentation = Some(pres);
        system = Some(sys);
        solutions = Some(sol);
    }

    let result = RunResult {
        config: config.clone(),
        algebra: g,
        grading,
        triple,
        basis,
        generators,
        presentation,
        system,
        solutions,
        representations,
        ledger,
    };
    certify_denominators(&result)?;
    Ok(result)
}

/// Checks that every coefficient produced lies in ℤ[1/d].
pub fn certify_denominators(res: &RunResult) -> Result<()> {
    let l = &res.ledger;
    let fail = |what: String| Err(WalgError::invariant("pipeline", format!("{what} not covered by d = {}", l.d())));
    for (i, v) in res.basis.vectors.iter().enumerate() {
        if !v.iter().all(|(_, c)| l.covers(c)) {
            return fail(format!("x{}", i + 1));
        }
    }
    for g in &res.generators {
        if !g.theta.terms.values().all(|c| l.covers(c)) {
            return fail(format!("Θ{}", g.index + 1));
        }
    }
    if let Some(p) = &res.presentation {
        for ((i, j), f) in &p.relations {
            if !f.terms.values().all(|c| l.covers(c)) {
                return fail(format!("F({},{})", i + 1, j + 1));
            }
        }
    }
    Ok(())
}
