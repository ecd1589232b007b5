//! One-dimensional representations ρ : U(g,e) → ℚ̄.
//!
//! ρ(Θ_i) = 0 whenever β_i ≠ 0, so the unknowns are t_i for i ∈ I (β_i = 0)
//! and the equations are F_jk(t) = 0 for (j, k) ∈ J (j in the prefix,
//! β_k = −β_j) after setting the other variables to zero.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::Rational;
use crate::basisbuilder::GradedBasis;
use crate::error::{Result, WalgError};
use crate::poly::{
    charpoly, groebner, isolate_real_roots, multiplication_matrix, standard_monomials, GbLimits, Poly, UPoly,
};
use crate::relations::{Presentation, WPolynomial};

/// Attempts allowed to Kronecker's method per polynomial.
pub const FACTOR_TRIES: u64 = 2_000_000;

#[derive(Debug, Clone)]
pub struct OneDimSystem {
    /// I in solver order (lex, largest first): ascending n_i, then index.
    pub variables: Vec<usize>,
    /// J, 0-based.
    pub pairs: Vec<(usize, usize)>,
    /// Nonzero F̄_jk.
    pub equations: Vec<((usize, usize), Poly)>,
}

impl OneDimSystem {
    pub fn names(&self) -> Vec<String> {
        self.variables.iter().map(|i| format!("t{}", i + 1)).collect()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.equations.iter().map(|(_, p)| p.clone()).collect()
    }
}

pub fn zero_weight_indices(gb: &GradedBasis) -> Vec<usize> {
    let mut v: Vec<usize> = (0..gb.r).filter(|&i| gb.beta[i].iter().all(|&c| c == 0)).collect();
    v.sort_by_key(|&i| (gb.n[i], i));
    v
}

/// J = {(j, k) : j < b, k < r, β_k = −β_j}.
pub fn j_pairs(gb: &GradedBasis) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 0..gb.b {
        for k in 0..gb.r {
            if gb.beta[j].iter().zip(&gb.beta[k]).all(|(a, b)| a + b == 0) {
                out.push((j, k));
            }
        }
    }
    out
}

/// Pairs (i, j), i < j, whose relations the system needs.
pub fn needed_relation_pairs(gb: &GradedBasis) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = j_pairs(gb)
        .into_iter()
        .filter(|(j, k)| j != k)
        .map(|(j, k)| (j.min(k), j.max(k)))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// F̄: drops monomials containing a variable outside I.
pub fn restrict(p: &WPolynomial, variables: &[usize]) -> Poly {
    let pos: BTreeMap<usize, usize> = variables.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut out = Poly::zero(variables.len());
    'terms: for (m, c) in &p.terms {
        let mut e = vec![0u32; variables.len()];
        for &i in m {
            match pos.get(&(i as usize)) {
                Some(&k) => e[k] += 1,
                None => continue 'terms,
            }
        }
        out.add_term(e, c.clone());
    }
    out
}

pub fn build_system(pres: &Presentation, gb: &GradedBasis) -> Result<OneDimSystem> {
    let variables = zero_weight_indices(gb);
    let pairs = j_pairs(gb);
    let mut equations = Vec::new();
    for &(j, k) in &pairs {
        let f = pres.get(j, k).ok_or(WalgError::MissingRelation(j + 1, k + 1))?;
        let p = restrict(&f, &variables);
        if !p.is_zero() && !equations.iter().any(|(_, q): &((usize, usize), Poly)| q == &p || q == &negate(&p)) {
            equations.push(((j, k), p));
        }
    }
    Ok(OneDimSystem {
        variables,
        pairs,
        equations,
    })
}

fn negate(p: &Poly) -> Poly {
    Poly::zero(p.nvars).sub(p)
}

/// Repeatedly solves equations of the form a·t + c = 0 and substitutes.
/// Returns the forced values (basis index, value) and the remaining equations.
pub fn forced_values(sys: &OneDimSystem) -> (Vec<(usize, Rational)>, Vec<Poly>) {
    let mut eqs = sys.polys();
    let mut forced = Vec::new();
    loop {
        let found = eqs.iter().find_map(|p| {
            let sup = p.support();
            if sup.len() != 1 || p.total_degree() != 1 {
                return None;
            }
            let u = p.as_univariate(sup[0])?;
            Some((sup[0], -&u.coeffs[0] / &u.coeffs[1]))
        });
        let Some((v, value)) = found else {
            break;
        };
        forced.push((sys.variables[v], value.clone()));
        eqs = eqs
            .iter()
            .map(|p| p.substitute(v, &value))
            .filter(|p| !p.is_zero())
            .collect();
        eqs.dedup();
    }
    (forced, eqs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Finite,
    PositiveDimensional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coordinate {
    Rational(Rational),
    /// A root of `polynomial` (squarefree; irreducible when `irreducible`).
    Algebraic {
        polynomial: UPoly,
        irreducible: bool,
        real_roots: usize,
    },
}

/// One solution, or a family of `multiplicity` conjugate solutions when some
/// coordinate is irrational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub values: BTreeMap<usize, Coordinate>,
    pub multiplicity: usize,
}

impl Solution {
    pub fn is_rational(&self) -> bool {
        self.values.values().all(|c| matches!(c, Coordinate::Rational(_)))
    }

    /// ρ(Θ_1) … ρ(Θ_r) for a rational solution.
    pub fn assignment(&self, r: usize) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); r];
        for (i, c) in &self.values {
            match c {
                Coordinate::Rational(q) => out[*i] = q.clone(),
                Coordinate::Algebraic { .. } => return None,
            }
        }
        Some(out)
    }
}

#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub classification: Classification,
    /// Number of distinct solutions over ℂ when finite.
    pub count: Option<usize>,
    pub solutions: Vec<Solution>,
    /// Reduced lex Gröbner basis of the system.
    pub groebner: Vec<Poly>,
    pub forced: Vec<(usize, Rational)>,
    pub reduced_equations: Vec<Poly>,
}

fn undecided(e: crate::poly::GbExceeded) -> WalgError {
    WalgError::Undecided(format!("elimination stopped: {}", e.0))
}

pub fn solve_system(sys: &OneDimSystem, limits: &GbLimits) -> Result<SolutionSet> {
    let nv = sys.variables.len();
    let (forced, reduced_equations) = forced_values(sys);
    let gb = groebner(&sys.polys(), limits).map_err(undecided)?;
    let Some(std) = standard_monomials(&gb, nv) else {
        return Ok(SolutionSet {
            classification: Classification::PositiveDimensional,
            count: None,
            solutions: Vec::new(),
            groebner: gb,
            forced,
            reduced_equations,
        });
    };
    // radical: adjoin the squarefree eliminant of every variable
    let mut gens = gb.clone();
    for v in 0..nv {
        let cp = charpoly(&multiplication_matrix(&gb, &std, v)).squarefree();
        gens.push(univariate_poly(&cp, nv, v));
    }
    let radical = groebner(&gens, limits).map_err(undecided)?;
    let count = standard_monomials(&radical, nv)
        .ok_or_else(|| WalgError::invariant("onedim", "radical lost zero-dimensionality"))?
        .len();
    let mut solutions = Vec::new();
    let order: Vec<usize> = (0..nv).rev().collect();
    extract(sys, &radical, &order, &BTreeMap::new(), limits, &mut solutions)?;
    let total: usize = solutions.iter().map(|s| s.multiplicity).sum();
    if total != count {
        return Err(WalgError::invariant(
            "onedim",
            format!("extracted {total} solutions but the quotient has dimension {count}"),
        ));
    }
    solutions.sort_by_key(solution_key);
    Ok(SolutionSet {
        classification: Classification::Finite,
        count: Some(count),
        solutions,
        groebner: gb,
        forced,
        reduced_equations,
    })
}

fn solution_key(s: &Solution) -> Vec<(usize, Option<Rational>)> {
    s.values
        .iter()
        .map(|(i, c)| {
            (
                *i,
                match c {
                    Coordinate::Rational(q) => Some(q.clone()),
                    Coordinate::Algebraic { .. } => None,
                },
            )
        })
        .collect()
}

fn univariate_poly(u: &UPoly, nv: usize, v: usize) -> Poly {
    let mut p = Poly::zero(nv);
    for (k, c) in u.coeffs.iter().enumerate() {
        let mut e = vec![0u32; nv];
        e[v] = k as u32;
        p.add_term(e, c.clone());
    }
    p
}

fn extract(
    sys: &OneDimSystem,
    ideal: &[Poly],
    remaining: &[usize],
    assigned: &BTreeMap<usize, Rational>,
    limits: &GbLimits,
    out: &mut Vec<Solution>,
) -> Result<()> {
    let nv = sys.variables.len();
    let Some((&v, rest)) = remaining.split_first() else {
        out.push(Solution {
            values: assigned
                .iter()
                .map(|(k, q)| (sys.variables[*k], Coordinate::Rational(q.clone())))
                .collect(),
            multiplicity: 1,
        });
        return Ok(());
    };
    let std = standard_monomials(ideal, nv)
        .ok_or_else(|| WalgError::invariant("onedim", "branch is not zero-dimensional"))?;
    if std.is_empty() {
        return Ok(());
    }
    let cp = charpoly(&multiplication_matrix(ideal, &std, v)).squarefree();
    let (factors, _) = cp.factor_squarefree(FACTOR_TRIES);
    for f in factors {
        let mut gens = ideal.to_vec();
        gens.push(univariate_poly(&f, nv, v));
        let branch = groebner(&gens, limits).map_err(undecided)?;
        if f.degree() == 1 {
            let root = -&f.coeffs[0] / &f.coeffs[1];
            let mut a = assigned.clone();
            a.insert(v, root);
            extract(sys, &branch, rest, &a, limits, out)?;
        } else {
            let bstd = standard_monomials(&branch, nv)
                .ok_or_else(|| WalgError::invariant("onedim", "branch is not zero-dimensional"))?;
            if bstd.is_empty() {
                continue;
            }
            let mut values: BTreeMap<usize, Coordinate> = assigned
                .iter()
                .map(|(k, q)| (sys.variables[*k], Coordinate::Rational(q.clone())))
                .collect();
            for &w in remaining {
                let p = charpoly(&multiplication_matrix(&branch, &bstd, w)).squarefree();
                let coord = if p.degree() == 1 {
                    Coordinate::Rational(-&p.coeffs[0] / &p.coeffs[1])
                } else {
                    let (fs, complete) = p.factor_squarefree(FACTOR_TRIES);
                    Coordinate::Algebraic {
                        real_roots: isolate_real_roots(&p).len(),
                        irreducible: complete && fs.len() == 1,
                        polynomial: p,
                    }
                };
                values.insert(sys.variables[w], coord);
            }
            out.push(Solution {
                values,
                multiplicity: bstd.len(),
            });
        }
    }
    Ok(())
}

/// Commutative evaluation of a relation at ρ(Θ) = point.
pub fn evaluate(p: &WPolynomial, point: &[Rational]) -> Rational {
    p.terms
        .iter()
        .map(|(m, c)| m.iter().fold(c.clone(), |acc, &i| acc * &point[i as usize]))
        .sum()
}

/// Full ρ(Θ_1) … ρ(Θ_r), checked against every computed relation.
pub fn representation_from_solution(sol: &Solution, pres: &Presentation, gb: &GradedBasis) -> Result<Vec<Rational>> {
    let point = sol
        .assignment(gb.r)
        .ok_or_else(|| WalgError::invariant("onedim", "solution has irrational coordinates"))?;
    for (i, v) in point.iter().enumerate() {
        if !v.is_zero() && gb.beta[i].iter().any(|&c| c != 0) {
            return Err(WalgError::invariant("onedim", format!("t{} ≠ 0 has nonzero weight", i + 1)));
        }
    }
    for ((i, j), p) in &pres.relations {
        if !evaluate(p, &point).is_zero() {
            return Err(WalgError::invariant(
                "onedim",
                format!("solution violates F({},{})", i + 1, j + 1),
            ));
        }
    }
    Ok(point)
}

/// Scalar multiple test for univariate polynomials.
pub fn proportional(a: &UPoly, b: &UPoly) -> bool {
    !a.is_zero() && !b.is_zero() && a.monic() == b.monic()
}

/// Default solver bounds.
pub fn default_limits(degree_bound: Option<u32>) -> GbLimits {
    let mut l = GbLimits::default();
    if let Some(d) = degree_bound {
        l.max_degree = d;
    }
    l
}

