//! Relations [Θ_i, Θ_j] = F_ij(Θ_1, …, Θ_r) for i in the generating prefix.
//!
//! F_ij is a polynomial in ordered Θ-monomials Θ_{a_1} ⋯ Θ_{a_k}
//! (a nondecreasing). It is found by repeatedly cancelling the highest
//! monomial of the commutator supported on g^e letters.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{DenominatorLedger, Rational};
use crate::basisbuilder::GradedBasis;
use crate::error::{Result, WalgError};
use crate::generators::ThetaAlgebra;
use crate::uea::{display_order, format_terms, kazhdan_of, Element, Mono};

/// Polynomial in ordered Θ-monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WPolynomial {
    pub terms: BTreeMap<Mono, Rational>,
}

impl WPolynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Kazhdan degree Σ (n_k + 2) of the top Θ-monomial.
    pub fn kazhdan_degree(&self, gb: &GradedBasis) -> Option<i64> {
        self.terms.keys().map(|m| kazhdan_of(gb, m)).max()
    }

    pub fn sorted_terms(&self, gb: &GradedBasis) -> Vec<(&Mono, &Rational)> {
        let mut t: Vec<(&Mono, &Rational)> = self.terms.iter().collect();
        t.sort_by(|a, b| display_order(gb, a.0, b.0));
        t
    }

    pub fn format(&self, gb: &GradedBasis) -> String {
        format_terms(self.sorted_terms(gb), "T")
    }
}

/// Writes an m-invariant element of Q_χ as a polynomial in the Θ's.
pub fn commutator_to_wpoly(alg: &ThetaAlgebra<'_>, element: &Element) -> Result<WPolynomial> {
    let gb = alg.q.gb;
    let mut rest = element.clone();
    let mut out = WPolynomial::default();
    loop {
        let top = rest
            .terms
            .iter()
            .filter(|(m, _)| m.iter().all(|&j| (j as usize) < gb.r))
            .max_by(|x, y| kazhdan_of(gb, x.0).cmp(&kazhdan_of(gb, y.0)).then_with(|| x.0.cmp(y.0)))
            .map(|(m, c)| (m.clone(), c.clone()));
        let Some((m, c)) = top else {
            break;
        };
        rest.add_scaled(&alg.power(&m), &-c.clone());
        out.add_term(m, c);
    }
    if !rest.is_zero() {
        return Err(WalgError::invariant(
            "relations",
            "invariant element left a remainder without g^e terms",
        ));
    }
    Ok(out)
}

/// The presentation: generators Θ_1 … Θ_r and relations for i < b, i < j.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub r: usize,
    pub b: usize,
    /// Keyed by 0-based (i, j) with i < j; zero relations are kept.
    pub relations: BTreeMap<(usize, usize), WPolynomial>,
    pub ledger: DenominatorLedger,
}

impl Presentation {
    pub fn get(&self, i: usize, j: usize) -> Option<WPolynomial> {
        if i == j {
            return Some(WPolynomial::default());
        }
        if i < j {
            self.relations.get(&(i, j)).cloned()
        } else {
            self.relations.get(&(j, i)).map(|p| {
                let mut n = WPolynomial::default();
                for (m, c) in &p.terms {
                    n.add_term(m.clone(), -c.clone());
                }
                n
            })
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize), &WPolynomial)> {
        self.relations.iter().filter(|(_, p)| !p.is_zero())
    }
}

/// Pairs (i, j), i < j, with i in the prefix.
pub fn relation_pairs(b: usize, r: usize) -> Vec<(usize, usize)> {
    (0..b).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect()
}

/// Computes the relations for `pairs` in parallel.
pub fn build_relations(
    alg: &ThetaAlgebra<'_>,
    pairs: &[(usize, usize)],
) -> Result<BTreeMap<(usize, usize), WPolynomial>> {
    let computed: Vec<((usize, usize), WPolynomial)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let c = alg.commutator(i, j);
            commutator_to_wpoly(alg, &c).map(|p| ((i, j), p))
        })
        .collect::<Result<_>>()?;
    Ok(computed.into_iter().collect())
}

pub fn build_presentation(alg: &ThetaAlgebra<'_>) -> Result<Presentation> {
    let gb = alg.q.gb;
    let relations = build_relations(alg, &relation_pairs(gb.b, gb.r))?;
    let mut ledger = DenominatorLedger::new();
    for p in relations.values() {
        ledger.add_all(p.terms.values(), "relations");
    }
    Ok(Presentation {
        r: gb.r,
        b: gb.b,
        relations,
        ledger,
    })
}

/// Kazhdan filtration bound deg F_ij ≤ n_i + n_j + 2.
pub fn kazhdan_bound_holds(gb: &GradedBasis, i: usize, j: usize, p: &WPolynomial) -> bool {
    p.kazhdan_degree(gb).is_none_or(|d| d <= gb.n[i] + gb.n[j] + 2)
}
