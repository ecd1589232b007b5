//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use walg_core::arith::Rational;
use walg_core::basisbuilder::GradedBasis;
use walg_core::uea::{Element, Mono};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses "3/2 x4 x10^2 - x8 + 5" style polynomials in 1-based letters.
/// Any single-letter prefix is accepted (`x`, `T`, `t`).
pub fn parse_poly(src: &str) -> BTreeMap<Mono, Rational> {
    let mut out = BTreeMap::new();
    let cleaned = src.replace('-', "+-");
    for raw in cleaned.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            continue;
        }
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b.trim()),
            None => (false, term),
        };
        let mut coeff = Rational::one();
        let mut mono: Mono = Vec::new();
        for tok in body.split_whitespace() {
            if tok.chars().next().unwrap().is_ascii_digit() {
                coeff = match tok.split_once('/') {
                    Some((n, d)) => q(n.parse().unwrap(), d.parse().unwrap()),
                    None => q(tok.parse().unwrap(), 1),
                };
            } else {
                let (letter, exp) = match tok[1..].split_once('^') {
                    Some((l, e)) => (l.parse::<u16>().unwrap(), e.parse::<usize>().unwrap()),
                    None => (tok[1..].parse::<u16>().unwrap(), 1),
                };
                mono.extend(std::iter::repeat_n(letter - 1, exp));
            }
        }
        mono.sort_unstable();
        if neg {
            coeff = -coeff;
        }
        *out.entry(mono).or_insert_with(Rational::zero) += coeff;
    }
    out.retain(|_, c: &mut Rational| !c.is_zero());
    out
}

/// Rewrites arbitrary words in U(g) into ordered PBW form by repeatedly
/// swapping the first descent: x_a x_b = x_b x_a + [x_a, x_b].
pub fn straighten(gb: &GradedBasis, words: BTreeMap<Mono, Rational>) -> BTreeMap<Mono, Rational> {
    let mut done: BTreeMap<Mono, Rational> = BTreeMap::new();
    let mut todo = words;
    while let Some((w, c)) = todo.pop_first() {
        if c.is_zero() {
            continue;
        }
        match (1..w.len()).find(|&p| w[p - 1] > w[p]) {
            None => {
                let e = done.entry(w).or_insert_with(Rational::zero);
                *e += c;
            }
            Some(p) => {
                let (a, b) = (w[p - 1], w[p]);
                let mut swapped = w.clone();
                swapped.swap(p - 1, p);
                *todo.entry(swapped).or_insert_with(Rational::zero) += &c;
                for (k, s) in &gb.structure[a as usize][b as usize] {
                    let mut nw = w[..p - 1].to_vec();
                    nw.push(*k as u16);
                    nw.extend_from_slice(&w[p + 1..]);
                    *todo.entry(nw).or_insert_with(Rational::zero) += &c * s;
                }
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}

/// Image in U(g)/I_χ of an ordered PBW element: trailing letters from m are
/// replaced by their χ-values.
pub fn reduce_chi(gb: &GradedBasis, ordered: &BTreeMap<Mono, Rational>) -> BTreeMap<Mono, Rational> {
    let mut out: BTreeMap<Mono, Rational> = BTreeMap::new();
    for (w, c) in ordered {
        let mut w = w.clone();
        let mut c = c.clone();
        while let Some(&last) = w.last() {
            if (last as usize) < gb.q_len() {
                break;
            }
            c *= &gb.chi_values[last as usize];
            w.pop();
        }
        if !c.is_zero() {
            *out.entry(w).or_insert_with(Rational::zero) += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Product of two ordered elements, concatenated then straightened.
pub fn oracle_product(
    gb: &GradedBasis,
    a: &BTreeMap<Mono, Rational>,
    b: &BTreeMap<Mono, Rational>,
) -> BTreeMap<Mono, Rational> {
    let mut words = BTreeMap::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            *words.entry(w).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    straighten(gb, words)
}

pub fn element(terms: BTreeMap<Mono, Rational>) -> Element {
    Element { terms }
}

/// Sum of the weights of the letters of `m`.
pub fn mono_weight(gb: &GradedBasis, m: &[u16]) -> Vec<i64> {
    let mut w = vec![0; gb.te_dim()];
    for &i in m {
        for (acc, b) in w.iter_mut().zip(&gb.beta[i as usize]) {
            *acc += b;
        }
    }
    w
}
