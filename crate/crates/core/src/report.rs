//! Deterministic JSON and plain-text reports of a run.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::{fmt_rational, PrimeSource, Rational, RationalJson};
use crate::basisbuilder::Segment;
use crate::generators::ThetaMethod;
use crate::onedim::{Classification, Coordinate};
use crate::pipeline::{Mode, RunResult};
use crate::poly::{isolate_real_roots, to_f64};
use crate::rootsystem::SparseVec;
use crate::uea::{display_order, exponents, Mono};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub input: InputJson,
    pub dimensions: DimensionsJson,
    pub algebra: AlgebraJson,
    pub triple: TripleJson,
    pub basis: Vec<BasisJson>,
    pub m_generators: Vec<usize>,
    pub generators: Vec<GeneratorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<RelationJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub onedim: Option<OneDimJson>,
    pub denominator: DenominatorJson,
}

#[derive(Serialize)]
pub struct InputJson {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub rank: usize,
    pub labels: Vec<i64>,
    pub orbit: Option<String>,
    pub mode: Mode,
    pub root_signs: Option<Vec<i8>>,
}

/// Chevalley basis b_1 … b_n and its nonzero brackets [b_i, b_j], i < j.
#[derive(Serialize)]
pub struct AlgebraJson {
    pub basis_labels: Vec<String>,
    pub positive_roots: Vec<Vec<i64>>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Serialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize)]
pub struct DimensionsJson {
    pub n: usize,
    pub r: usize,
    pub b: usize,
    pub m: usize,
    pub s: usize,
    pub s_prime: usize,
    pub minimal_prefix: usize,
    pub minimal_m_generators: usize,
    pub te_dim: usize,
    pub te_basis: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct TermJson {
    /// Chevalley basis index, 1-based.
    pub b: usize,
    pub coeff: RationalJson,
}

#[derive(Serialize)]
pub struct TripleJson {
    pub e: Vec<TermJson>,
    pub h: Vec<TermJson>,
    pub f: Vec<TermJson>,
    pub kappa_ef: RationalJson,
}

#[derive(Serialize)]
pub struct BasisJson {
    pub index: usize,
    pub n: i64,
    pub beta: Vec<i64>,
    pub segment: Segment,
    pub chi: RationalJson,
    pub expression: Vec<TermJson>,
    pub display: String,
}

#[derive(Serialize)]
pub struct MonomialTermJson {
    /// Pairs (1-based index, exponent).
    pub monomial: Vec<(usize, u32)>,
    pub coeff: RationalJson,
}

#[derive(Serialize)]
pub struct GeneratorJson {
    pub index: usize,
    pub method: ThetaMethod,
    pub candidates: usize,
    pub kazhdan_degree: Option<i64>,
    pub terms: Vec<MonomialTermJson>,
    pub display: String,
}

#[derive(Serialize)]
pub struct RelationJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<MonomialTermJson>,
    pub display: String,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordinateJson {
    Rational(RationalJson),
    Algebraic {
        polynomial: Vec<RationalJson>,
        irreducible: bool,
        real_roots: usize,
        display: String,
    },
}

#[derive(Serialize)]
pub struct SolutionJson {
    pub multiplicity: usize,
    pub values: BTreeMap<String, CoordinateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<RationalJson>>,
}

#[derive(Serialize)]
pub struct OneDimJson {
    pub variables: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub equations: Vec<String>,
    pub forced: Vec<(usize, RationalJson)>,
    pub reduced_equations: Vec<String>,
    pub groebner_basis: Vec<String>,
    pub classification: Classification,
    pub count: Option<usize>,
    pub solutions: Vec<SolutionJson>,
}

#[derive(Serialize)]
pub struct DenominatorJson {
    pub d: String,
    pub primes: Vec<PrimeSource>,
}

fn terms_json(v: &SparseVec) -> Vec<TermJson> {
    v.iter()
        .map(|(k, c)| TermJson {
            b: k + 1,
            coeff: c.into(),
        })
        .collect()
}

fn monomial_terms<'a>(terms: impl IntoIterator<Item = (&'a Mono, &'a Rational)>) -> Vec<MonomialTermJson> {
    terms
        .into_iter()
        .map(|(m, c)| MonomialTermJson {
            monomial: exponents(m).into_iter().map(|(i, p)| (i as usize + 1, p)).collect(),
            coeff: c.into(),
        })
        .collect()
}

pub fn build_report(res: &RunResult) -> Report {
    let gb = &res.basis;
    let basis = (0..gb.dim())
        .map(|i| BasisJson {
            index: i + 1,
            n: gb.n[i],
            beta: gb.beta[i].clone(),
            segment: gb.segment[i],
            chi: (&gb.chi_values[i]).into(),
            expression: terms_json(&gb.vectors[i]),
            display: gb.describe(i),
        })
        .collect();
    let generators = res
        .generators
        .iter()
        .map(|g| {
            let mut t: Vec<(&Mono, &Rational)> = g.theta.terms.iter().collect();
            t.sort_by(|a, b| display_order(gb, a.0, b.0));
            GeneratorJson {
                index: g.index + 1,
                method: g.method,
                candidates: g.candidates,
                kazhdan_degree: g.theta.kazhdan_degree(gb),
                terms: monomial_terms(t),
                display: g.theta.display(gb, "x").to_string(),
            }
        })
        .collect();
    let relations = res.presentation.as_ref().map(|p| {
        p.relations
            .iter()
            .map(|((i, j), f)| RelationJson {
                i: i + 1,
                j: j + 1,
                terms: monomial_terms(f.sorted_terms(gb)),
                display: f.format(gb),
            })
            .collect()
    });
    let onedim = match (&res.system, &res.solutions) {
        (Some(sys), Some(sol)) => {
            let names = sys.names();
            let mut rho_iter = res.representations.iter();
            Some(OneDimJson {
                variables: sys.variables.iter().map(|i| i + 1).collect(),
                pairs: sys.pairs.iter().map(|(j, k)| (j + 1, k + 1)).collect(),
                equations: sys
                    .equations
                    .iter()
                    .map(|((j, k), p)| format!("F({},{}) = {}", j + 1, k + 1, p.display(&names)))
                    .collect(),
                forced: sol.forced.iter().map(|(i, v)| (i + 1, v.into())).collect(),
                reduced_equations: sol.reduced_equations.iter().map(|p| p.display(&names).to_string()).collect(),
                groebner_basis: sol.groebner.iter().map(|p| p.display(&names).to_string()).collect(),
                classification: sol.classification,
                count: sol.count,
                solutions: sol
                    .solutions
                    .iter()
                    .map(|s| SolutionJson {
                        multiplicity: s.multiplicity,
                        values: s
                            .values
                            .iter()
                            .map(|(i, c)| (format!("t{}", i + 1), coordinate_json(c)))
                            .collect(),
                        rho: if s.is_rational() {
                            rho_iter.next().map(|v| v.iter().map(RationalJson::from).collect())
                        } else {
                            None
                        },
                    })
                    .collect(),
            })
        }
        _ => None,
    };
    Report {
        schema: SCHEMA_VERSION,
        input: InputJson {
            lie_type: res.config.lie_type.to_string(),
            rank: res.config.rank,
            labels: res.config.labels.as_slice().to_vec(),
            orbit: res.config.orbit.clone(),
            mode: res.config.mode,
            root_signs: res.config.effective_signs(),
        },
        dimensions: DimensionsJson {
            n: gb.dim(),
            r: gb.r,
            b: gb.b,
            m: gb.m,
            s: gb.s,
            s_prime: gb.s_prime,
            minimal_prefix: gb.minimal_prefix,
            minimal_m_generators: gb.minimal_m_generators,
            te_dim: gb.te_dim(),
            te_basis: gb.te_basis.clone(),
        },
        algebra: algebra_json(res),
        triple: TripleJson {
            e: terms_json(&res.triple.e),
            h: terms_json(&res.triple.h),
            f: terms_json(&res.triple.f),
            kappa_ef: (&res.triple.kappa_ef).into(),
        },
        basis,
        m_generators: gb.m_generators.iter().map(|k| k + 1).collect(),
        generators,
        relations,
        onedim,
        denominator: DenominatorJson {
            d: res.ledger.d().to_string(),
            primes: res.ledger.sources(),
        },
    }
}

fn algebra_json(res: &RunResult) -> AlgebraJson {
    let g = &res.algebra;
    let n = g.dim();
    AlgebraJson {
        basis_labels: g.basis_labels.clone(),
        positive_roots: g.root_system.positive_roots.clone(),
        brackets: (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !g.bracket_basis(i, j).is_empty())
            .map(|(i, j)| BracketJson {
                i: i + 1,
                j: j + 1,
                terms: terms_json(g.bracket_basis(i, j)),
            })
            .collect(),
    }
}

fn coordinate_json(c: &Coordinate) -> CoordinateJson {
    match c {
        Coordinate::Rational(q) => CoordinateJson::Rational(q.into()),
        Coordinate::Algebraic {
            polynomial,
            irreducible,
            real_roots,
        } => CoordinateJson::Algebraic {
            polynomial: polynomial.coeffs.iter().map(RationalJson::from).collect(),
            irreducible: *irreducible,
            real_roots: *real_roots,
            display: polynomial.display("t"),
        },
    }
}

pub fn to_json(res: &RunResult) -> String {
    let mut s = serde_json::to_string_pretty(&build_report(res)).expect("report serializes");
    s.push('\n');
    s
}

/// Human-readable report in the layout of a worked example.
pub fn to_text(res: &RunResult) -> String {
    let gb = &res.basis;
    let mut out = String::new();
    let labels: Vec<String> = res.config.labels.as_slice().iter().map(|l| l.to_string()).collect();
    let _ = writeln!(
        out,
        "U(g,e) for g = {}{}, labels ({}){}",
        res.config.lie_type,
        res.config.rank,
        labels.join(","),
        res.config.orbit.as_ref().map(|o| format!(", orbit {o}")).unwrap_or_default()
    );
    let _ = writeln!(out, "mode: {}", res.config.mode);
    let _ = writeln!(
        out,
        "n = {}, r = {}, b = {}, m = {}, s = {}, s' = {}",
        gb.dim(),
        gb.r,
        gb.b,
        gb.m,
        gb.s,
        gb.s_prime
    );
    let _ = writeln!(out, "kappa(e,f) = {}", fmt_rational(&res.triple.kappa_ef));
    let _ = writeln!(out);
    let _ = writeln!(out, "basis");
    for i in 0..gb.dim() {
        let beta: Vec<String> = gb.beta[i].iter().map(|b| b.to_string()).collect();
        let _ = writeln!(
            out,
            "  x{:<3} = {:<16} n = {:>2}  beta = ({})",
            i + 1,
            gb.describe(i),
            gb.n[i],
            beta.join(",")
        );
    }
    let k: Vec<String> = gb.m_generators.iter().map(|k| (k + 1).to_string()).collect();
    let _ = writeln!(out, "K = {{{}}}", k.join(", "));
    let _ = writeln!(out);
    let _ = writeln!(out, "generators");
    for g in &res.generators {
        let _ = writeln!(out, "  Theta{} = {}", g.index + 1, g.theta.display(gb, "x"));
    }
    if let Some(p) = &res.presentation {
        let _ = writeln!(out);
        let _ = writeln!(out, "relations (zero commutators omitted)");
        for ((i, j), f) in p.nonzero() {
            let _ = writeln!(out, "  [Theta{}, Theta{}] = {}", i + 1, j + 1, f.format(gb));
        }
    }
    if let (Some(sys), Some(sol)) = (&res.system, &res.solutions) {
        let names = sys.names();
        let _ = writeln!(out);
        let vars: Vec<String> = names.clone();
        let _ = writeln!(out, "one-dimensional representations, variables {}", vars.join(", "));
        for ((j, k), p) in &sys.equations {
            let _ = writeln!(out, "  F({},{}) = {}", j + 1, k + 1, p.display(&names));
        }
        for (i, v) in &sol.forced {
            let _ = writeln!(out, "  forced: t{} = {}", i + 1, fmt_rational(v));
        }
        for p in &sol.reduced_equations {
            let _ = writeln!(out, "  remaining: {} = 0", p.display(&names));
        }
        match sol.classification {
            Classification::PositiveDimensional => {
                let _ = writeln!(out, "  solution set is positive-dimensional");
            }
            Classification::Finite => {
                let _ = writeln!(out, "  number of solutions: {}", sol.count.unwrap_or(0));
                for s in &sol.solutions {
                    let coords: Vec<String> = s
                        .values
                        .iter()
                        .map(|(i, c)| match c {
                            Coordinate::Rational(q) => format!("t{} = {}", i + 1, fmt_rational(q)),
                            Coordinate::Algebraic { polynomial, .. } => {
                                let approx: Vec<String> = isolate_real_roots(polynomial)
                                    .iter()
                                    .map(|(a, b)| format!("{:.6}", (to_f64(a) + to_f64(b)) / 2.0))
                                    .collect();
                                format!(
                                    "t{} root of {} (real roots near {})",
                                    i + 1,
                                    polynomial.display("t"),
                                    approx.join(", ")
                                )
                            }
                        })
                        .collect();
                    let mult = if s.multiplicity > 1 {
                        format!(" [{} conjugate solutions]", s.multiplicity)
                    } else {
                        String::new()
                    };
                    let _ = writeln!(out, "  ({}){mult}", coords.join(", "));
                }
            }
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "{}", res.ledger);
    for p in res.ledger.sources() {
        let _ = writeln!(out, "  {}: {}", p.prime, p.stages.join(", "));
    }
    out
}
