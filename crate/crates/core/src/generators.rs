//! Generators Θ_1 … Θ_r of the finite W-algebra, realized inside Q_χ.
//!
//! Θ_i = x_i + Σ λ_{i,a} x^a over monomials of weight β_i and Kazhdan degree
//! at most n_i + 2, excluding monomials in g^e letters only and single letters
//! of the top degree. The λ are fixed by (ad x_k) Θ_i = 0 for k ∈ K.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{DenominatorLedger, Rational};
use crate::basisbuilder::GradedBasis;
use crate::error::{Result, WalgError};
use crate::linalg::{SparseSolution, SparseSystem};
use crate::uea::{kazhdan_of, weight_of, Element, Mono, PbwModule};

pub const DEFAULT_MAX_CANDIDATES: usize = 5000;

/// How a generator was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThetaMethod {
    LinearSolve,
    Commutators,
}

#[derive(Debug, Clone)]
pub struct Generator {
    pub index: usize,
    pub theta: Element,
    pub method: ThetaMethod,
    pub candidates: usize,
    pub equations: usize,
}

/// Monomials allowed in Θ_i besides the leading x_i.
pub fn candidate_monomials(gb: &GradedBasis, i: usize) -> Vec<Mono> {
    let budget = gb.kazhdan_weight(i);
    let target = &gb.beta[i];
    let letters = gb.q_len();
    let mut out = Vec::new();
    let mut cur: Mono = Vec::new();
    fn walk(
        gb: &GradedBasis,
        start: usize,
        letters: usize,
        budget: i64,
        cur: &mut Mono,
        out: &mut Vec<Mono>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for j in start..letters {
            let w = gb.kazhdan_weight(j);
            if w <= budget {
                cur.push(j as u16);
                walk(gb, j, letters, budget - w, cur, out);
                cur.pop();
            }
        }
    }
    walk(gb, 0, letters, budget, &mut cur, &mut out);
    out.retain(|m| {
        if m.iter().all(|&j| (j as usize) < gb.r) {
            return false;
        }
        if m.len() == 1 && kazhdan_of(gb, m) == budget {
            return false;
        }
        &weight_of(gb, m) == target
    });
    out.sort();
    out
}

/// Solves for Θ_i from the equations (ad x_k) Θ_i = 0, k ∈ K, then checks
/// invariance under every basis vector of m.
pub fn solve_theta(q: &PbwModule<'_>, i: usize, max_candidates: usize) -> Result<Generator> {
    let gb = q.gb;
    let cands = candidate_monomials(gb, i);
    if cands.len() > max_candidates {
        return Err(WalgError::Undecided(format!(
            "Θ{} has {} candidate monomials (limit {max_candidates})",
            i + 1,
            cands.len()
        )));
    }
    let lead = Element::letter(i);
    let mut system = SparseSystem::new(cands.len());
    for &k in &gb.m_generators {
        let lead_img = q.ad_m(k, &lead);
        let imgs: Vec<Element> = cands
            .par_iter()
            .map(|c| q.ad_m(k, &Element::monomial(c.clone(), Rational::one())))
            .collect();
        let mut rows: BTreeMap<&Mono, Vec<(usize, Rational)>> = BTreeMap::new();
        for (col, img) in imgs.iter().enumerate() {
            for (m, c) in &img.terms {
                rows.entry(m).or_default().push((col, c.clone()));
            }
        }
        for m in lead_img.terms.keys() {
            rows.entry(m).or_default();
        }
        for (m, coeffs) in rows {
            system.add_equation(&coeffs, &-lead_img.coefficient(m));
        }
    }
    let lambda = match system.finish() {
        SparseSolution::Unique(x) => x,
        SparseSolution::Inconsistent => {
            return Err(WalgError::invariant("generators", format!("no m-invariant lift of x{}", i + 1)))
        }
        SparseSolution::Underdetermined { rank } => {
            return Err(WalgError::Undecided(format!(
                "Θ{}: rank {rank} of {} unknowns",
                i + 1,
                cands.len()
            )))
        }
    };
    let mut theta = lead;
    for (c, l) in cands.iter().zip(&lambda) {
        theta.add_term(c.clone(), l.clone());
    }
    check_invariant(q, i, &theta)?;
    Ok(Generator {
        index: i,
        theta,
        method: ThetaMethod::LinearSolve,
        candidates: cands.len(),
        equations: system.rows_seen(),
    })
}

/// Verifies (ad x_k) θ = 0 for every x_k in m.
pub fn check_invariant(q: &PbwModule<'_>, i: usize, theta: &Element) -> Result<()> {
    let gb = q.gb;
    for k in gb.q_len()..gb.dim() {
        if !q.ad_m(k, theta).is_zero() {
            return Err(WalgError::invariant(
                "generators",
                format!("Θ{} is not invariant under x{}", i + 1, k + 1),
            ));
        }
    }
    Ok(())
}

/// Θ_i for i beyond the generating prefix, from x_i = Σ ν [x_a, x_b]:
/// Σ ν [Θ_a, Θ_b] minus Θ-monomials cancelling every pure g^e term except x_i.
pub fn theta_via_commutators(q: &PbwModule<'_>, thetas: &[Option<Element>], i: usize) -> Result<Generator> {
    let gb = q.gb;
    let nu = gb.bracket_decomposition.get(&i).ok_or_else(|| {
        WalgError::invariant("generators", format!("x{} has no bracket decomposition", i + 1))
    })?;
    let get = |j: usize| -> Result<&Element> {
        thetas.get(j).and_then(|t| t.as_ref()).ok_or_else(|| {
            WalgError::invariant("generators", format!("Θ{} needed before Θ{}", j + 1, i + 1))
        })
    };
    let mut acc = Element::zero();
    for (a, b, c) in nu {
        let (ta, tb) = (get(*a)?, get(*b)?);
        let comm = q.apply(ta, tb).sub(&q.apply(tb, ta));
        acc.add_scaled(&comm, c);
    }
    let lead: Mono = vec![i as u16];
    loop {
        let pure = acc
            .terms
            .iter()
            .filter(|(m, _)| **m != lead && m.iter().all(|&j| (j as usize) < gb.r))
            .max_by(|x, y| kazhdan_of(gb, x.0).cmp(&kazhdan_of(gb, y.0)).then_with(|| x.0.cmp(y.0)));
        let Some((m, c)) = pure.map(|(m, c)| (m.clone(), c.clone())) else {
            break;
        };
        let mut prod = Element::one();
        for &j in m.iter().rev() {
            prod = q.apply(get(j as usize)?, &prod);
        }
        acc.add_scaled(&prod, &-c);
    }
    if acc.coefficient(&lead) != Rational::one() {
        return Err(WalgError::invariant(
            "generators",
            format!("commutator construction of Θ{} lost its leading term", i + 1),
        ));
    }
    check_invariant(q, i, &acc)?;
    Ok(Generator {
        index: i,
        theta: acc,
        method: ThetaMethod::Commutators,
        candidates: 0,
        equations: 0,
    })
}

/// Strategy for the generators beyond the prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailStrategy {
    /// Linear solve when within the candidate limit, commutators otherwise.
    Auto,
    Commutators,
}

/// Computes Θ_1 … Θ_r. The prefix is solved in parallel.
pub fn compute_generators(
    q: &PbwModule<'_>,
    max_candidates: usize,
    tail: TailStrategy,
) -> Result<Vec<Generator>> {
    let gb = q.gb;
    let head: Vec<Generator> = (0..gb.b)
        .into_par_iter()
        .map(|i| solve_theta(q, i, max_candidates))
        .collect::<Result<_>>()?;
    let mut slots: Vec<Option<Element>> = vec![None; gb.r];
    for g in &head {
        slots[g.index] = Some(g.theta.clone());
    }
    let mut out = head;
    for i in gb.b..gb.r {
        let within = candidate_monomials(gb, i).len() <= max_candidates;
        let g = if tail == TailStrategy::Auto && within {
            solve_theta(q, i, max_candidates)?
        } else {
            theta_via_commutators(q, &slots, i)?
        };
        slots[i] = Some(g.theta.clone());
        out.push(g);
    }
    Ok(out)
}

pub fn generator_ledger(gens: &[Generator]) -> DenominatorLedger {
    let mut l = DenominatorLedger::new();
    for g in gens {
        l.add_all(g.theta.terms.values(), "generators");
    }
    l
}

/// The algebra generated by the Θ_i inside Q_χ, with cached ordered powers.
pub struct ThetaAlgebra<'a> {
    pub q: &'a PbwModule<'a>,
    pub thetas: Vec<Element>,
    powers: DashMap<Mono, Arc<Element>>,
}

impl<'a> ThetaAlgebra<'a> {
    pub fn new(q: &'a PbwModule<'a>, gens: &[Generator]) -> Self {
        ThetaAlgebra {
            q,
            thetas: gens.iter().map(|g| g.theta.clone()).collect(),
            powers: DashMap::new(),
        }
    }

    pub fn product(&self, x: &Element, y: &Element) -> Element {
        self.q.apply(x, y)
    }

    /// Ordered product Θ_{a_1} Θ_{a_2} ⋯ Θ_{a_k} for nondecreasing `a`.
    pub fn power(&self, a: &[u16]) -> Arc<Element> {
        if a.is_empty() {
            return Arc::new(Element::one());
        }
        if let Some(hit) = self.powers.get(a) {
            return Arc::clone(hit.value());
        }
        let rest = self.power(&a[1..]);
        let v = Arc::new(self.product(&self.thetas[a[0] as usize], &rest));
        self.powers.insert(a.to_vec(), Arc::clone(&v));
        v
    }

    /// [Θ_i, Θ_j] in Q_χ.
    pub fn commutator(&self, i: usize, j: usize) -> Element {
        let (ti, tj) = (&self.thetas[i], &self.thetas[j]);
        self.product(ti, tj).sub(&self.product(tj, ti))
    }

    /// Evaluates a polynomial in ordered Θ-monomials.
    pub fn evaluate(&self, poly: &BTreeMap<Mono, Rational>) -> Element {
        let mut out = Element::zero();
        for (a, c) in poly {
            out.add_scaled(&self.power(a), c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;
    use crate::basisbuilder::build_graded_basis;
    use crate::rootsystem::{simple_lie_algebra, LieType};
    use crate::sl2grading::{grading_from_labels, sl2_triple, DynkinLabels};

    fn basis(t: LieType, l: usize, labels: &str) -> GradedBasis {
        let g = simple_lie_algebra(t, l).unwrap();
        let labels: DynkinLabels = labels.parse().unwrap();
        let gr = grading_from_labels(&g, &labels).unwrap();
        let tr = sl2_triple(&g, &gr, &labels).unwrap();
        build_graded_basis(&g, &gr, &tr).unwrap()
    }

    #[test]
    fn g2_degree_zero_generators() {
        let gb = basis(LieType::G, 2, "1,0");
        let q = PbwModule::gelfand_graev(&gb);
        let gens = compute_generators(&q, DEFAULT_MAX_CANDIDATES, TailStrategy::Auto).unwrap();
        assert_eq!(gens[3].theta, Element::letter(3));
        assert_eq!(gens[5].theta, Element::letter(5));
        let mut t5 = Element::letter(4);
        t5.add_term(vec![9, 9], frac(-1, 4));
        assert_eq!(gens[4].theta, t5);
    }

    #[test]
    fn sl2_principal_casimir() {
        let gb = basis(LieType::A, 1, "2");
        let q = PbwModule::gelfand_graev(&gb);
        let gens = compute_generators(&q, DEFAULT_MAX_CANDIDATES, TailStrategy::Auto).unwrap();
        assert_eq!(gens.len(), 1);
        // Θ = e + quadratic in h
        assert!(gens[0].theta.terms.keys().any(|m| m.len() == 2));
    }
}
