//! PBW arithmetic in U(g) and in the generalized Gelfand–Graev module
//! Q_χ = U(g) ⊗_{U(m)} C_χ, both in the ordered basis `x_1 … x_n`.
//!
//! A monomial is a nondecreasing list of 0-based letter indices. The same
//! straightening routine serves both spaces: letters below `letters` are PBW
//! letters, higher letters belong to m and act on the empty monomial by χ.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::{One, Zero};

use crate::arith::{fmt_rational, Rational};
use crate::basisbuilder::GradedBasis;

pub type Mono = Vec<u16>;

/// Sparse linear combination of PBW monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    pub terms: BTreeMap<Mono, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Mono::new(), Rational::one())
    }

    pub fn monomial(m: Mono, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    /// The single letter `x_i`.
    pub fn letter(i: usize) -> Self {
        Self::monomial(vec![i as u16], Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn coefficient(&self, m: &[u16]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    /// Kazhdan degree Σ (n_i + 2) of the highest monomial, `None` for zero.
    pub fn kazhdan_degree(&self, gb: &GradedBasis) -> Option<i64> {
        self.terms.keys().map(|m| kazhdan_of(gb, m)).max()
    }

    /// Largest restricted weight imbalance, used by weight checks.
    pub fn weights(&self, gb: &GradedBasis) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.terms.keys().map(|m| weight_of(gb, m)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Renders with letters `x1, x2, …` (1-based).
    pub fn display<'a>(&'a self, gb: &'a GradedBasis, letter: &'a str) -> ElementDisplay<'a> {
        ElementDisplay { e: self, gb, letter }
    }
}

pub fn kazhdan_of(gb: &GradedBasis, m: &[u16]) -> i64 {
    m.iter().map(|&i| gb.kazhdan_weight(i as usize)).sum()
}

pub fn weight_of(gb: &GradedBasis, m: &[u16]) -> Vec<i64> {
    let mut w = vec![0i64; gb.te_dim()];
    for &i in m {
        for (a, b) in w.iter_mut().zip(&gb.beta[i as usize]) {
            *a += b;
        }
    }
    w
}

/// Exponent form `[(index, power)]` of a monomial.
pub fn exponents(m: &[u16]) -> Vec<(u16, u32)> {
    let mut out: Vec<(u16, u32)> = Vec::new();
    for &i in m {
        match out.last_mut() {
            Some((j, p)) if *j == i => *p += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

/// Display order: Kazhdan degree descending, then exponent form ascending.
pub fn display_order(gb: &GradedBasis, a: &[u16], b: &[u16]) -> Ordering {
    kazhdan_of(gb, b)
        .cmp(&kazhdan_of(gb, a))
        .then_with(|| exponents(a).cmp(&exponents(b)))
}

pub fn format_monomial(m: &[u16], letter: &str) -> String {
    exponents(m)
        .iter()
        .map(|(i, p)| {
            if *p == 1 {
                format!("{letter}{}", i + 1)
            } else {
                format!("{letter}{}^{p}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Formats `Σ c m` in the given monomial order.
pub fn format_terms<'a>(
    terms: impl IntoIterator<Item = (&'a Mono, &'a Rational)>,
    letter: &str,
) -> String {
    let mut out = String::new();
    for (m, c) in terms {
        let neg = c < &Rational::zero();
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(m, letter);
        if mono.is_empty() {
            out.push_str(&fmt_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", fmt_rational(&abs)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub struct ElementDisplay<'a> {
    e: &'a Element,
    gb: &'a GradedBasis,
    letter: &'a str,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Mono, &Rational)> = self.e.terms.iter().collect();
        terms.sort_by(|a, b| display_order(self.gb, a.0, b.0));
        f.write_str(&format_terms(terms, self.letter))
    }
}

/// Left U(g)-module on PBW monomials in the letters `0 .. letters`.
///
/// With `letters = n` this is U(g) itself under left multiplication; with
/// `letters = m + s` it is Q_χ.
pub struct PbwModule<'a> {
    pub gb: &'a GradedBasis,
    letters: usize,
    cache: DashMap<(u16, Mono), Arc<Element>>,
}

impl<'a> PbwModule<'a> {
    pub fn universal(gb: &'a GradedBasis) -> Self {
        Self::with_letters(gb, gb.dim())
    }

    pub fn gelfand_graev(gb: &'a GradedBasis) -> Self {
        Self::with_letters(gb, gb.q_len())
    }

    fn with_letters(gb: &'a GradedBasis, letters: usize) -> Self {
        PbwModule {
            gb,
            letters,
            cache: DashMap::new(),
        }
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    /// x_j · m
    pub fn act(&self, j: usize, m: &[u16]) -> Arc<Element> {
        let key = (j as u16, m.to_vec());
        if let Some(hit) = self.cache.get(&key) {
            return Arc::clone(hit.value());
        }
        let result = Arc::new(self.act_uncached(j, m));
        self.cache.insert(key, Arc::clone(&result));
        result
    }

    fn act_uncached(&self, j: usize, m: &[u16]) -> Element {
        let Some(&first) = m.first() else {
            if j < self.letters {
                return Element::letter(j);
            }
            let c = &self.gb.chi_values[j];
            return if c.is_zero() {
                Element::zero()
            } else {
                Element::monomial(Mono::new(), c.clone())
            };
        };
        let i1 = first as usize;
        if j <= i1 && j < self.letters {
            let mut out = Vec::with_capacity(m.len() + 1);
            out.push(j as u16);
            out.extend_from_slice(m);
            return Element::monomial(out, Rational::one());
        }
        // x_j x_{i1} rest = x_{i1} (x_j rest) + [x_j, x_{i1}] rest
        let rest = &m[1..];
        let mut out = Element::zero();
        let inner = self.act(j, rest);
        for (mono, c) in &inner.terms {
            out.add_scaled(&self.act(i1, mono), c);
        }
        for (k, c) in &self.gb.structure[j][i1] {
            out.add_scaled(&self.act(*k, rest), c);
        }
        out
    }

    /// x_j · v
    pub fn act_element(&self, j: usize, v: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in &v.terms {
            out.add_scaled(&self.act(j, m), c);
        }
        out
    }

    /// u · v where u is any PBW word (letters applied right to left).
    pub fn word_action(&self, word: &[u16], v: &Element) -> Element {
        let mut cur = v.clone();
        for &j in word.iter().rev() {
            cur = self.act_element(j as usize, &cur);
        }
        cur
    }

    /// u · v for an element u written in PBW monomials of any letters.
    pub fn apply(&self, u: &Element, v: &Element) -> Element {
        let mut out = Element::zero();
        for (word, c) in &u.terms {
            out.add_scaled(&self.word_action(word, v), c);
        }
        out
    }

    /// Image of u ∈ U(g) in this module, i.e. u · 1.
    pub fn reduce(&self, u: &Element) -> Element {
        self.apply(u, &Element::one())
    }

    /// (ad x_k) v = x_k v − χ(x_k) v, valid in Q_χ for x_k ∈ m.
    pub fn ad_m(&self, k: usize, v: &Element) -> Element {
        let mut out = self.act_element(k, v);
        out.add_scaled(v, &-self.gb.chi_values[k].clone());
        out
    }

    /// Product of two PBW elements in U(g) (only meaningful for the universal module).
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.apply(a, b)
    }
}

/// Reduction of u ∈ U(g) modulo the left ideal I_χ, as an element of Q_χ.
pub fn reduce_mod_ichi(q: &PbwModule<'_>, u: &Element) -> Element {
    q.reduce(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};
    use crate::basisbuilder::build_graded_basis;
    use crate::rootsystem::{simple_lie_algebra, LieType};
    use crate::sl2grading::{grading_from_labels, sl2_triple, DynkinLabels};

    fn g2() -> GradedBasis {
        let g = simple_lie_algebra(LieType::G, 2).unwrap();
        let labels: DynkinLabels = "1,0".parse().unwrap();
        let gr = grading_from_labels(&g, &labels).unwrap();
        let tr = sl2_triple(&g, &gr, &labels).unwrap();
        build_graded_basis(&g, &gr, &tr).unwrap()
    }

    #[test]
    fn commutator_matches_structure_constants() {
        let gb = g2();
        let u = PbwModule::universal(&gb);
        for i in 0..gb.dim() {
            for j in 0..gb.dim() {
                let xy = u.multiply(&Element::letter(i), &Element::letter(j));
                let yx = u.multiply(&Element::letter(j), &Element::letter(i));
                let mut expect = Element::zero();
                for (k, c) in &gb.structure[i][j] {
                    expect.add_term(vec![*k as u16], c.clone());
                }
                assert_eq!(xy.sub(&yx), expect, "[x{}, x{}]", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn m_acts_by_chi_on_vacuum() {
        let gb = g2();
        let q = PbwModule::gelfand_graev(&gb);
        // f = x12 has χ = 1, the other m letters have χ = 0
        assert_eq!(*q.act(11, &[]), Element::monomial(vec![], int(1)));
        assert!(q.act(12, &[]).is_zero());
        assert_eq!(*q.act(3, &[]), Element::letter(3));
    }

    #[test]
    fn display_orders_by_kazhdan_degree() {
        let gb = g2();
        let mut e = Element::zero();
        e.add_term(vec![4], int(1));
        e.add_term(vec![9, 9], frac(-1, 4));
        assert_eq!(e.display(&gb, "x").to_string(), "x5 - 1/4*x10^2");
        assert_eq!(e.kazhdan_degree(&gb), Some(2));
        assert_eq!(Element::zero().kazhdan_degree(&gb), None);
    }
}
