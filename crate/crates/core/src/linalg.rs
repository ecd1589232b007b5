//! Exact linear algebra over Q and Z.
//!
//! Dense routines serve the small systems of the basis construction; the
//! sparse [`SparseSystem`] is the fraction-free eliminator used to solve for
//! generator coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{common_denominator, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// In-place reduced row echelon form. Returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let (pivot_row, other) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in other.iter_mut().zip(pivot_row.iter()) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{v : m v = 0}`, one vector per free column (value 1 there).
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        out.push(v);
    }
    out
}

/// Solves `m x = rhs`. Returns `None` if inconsistent, otherwise a particular
/// solution together with the dimension of the solution space.
pub fn solve(m: &Matrix, rhs: &[Rational]) -> Option<(Vec<Rational>, usize)> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some((x, cols - pivots.len()))
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            let (top, bottom) = a.split_at_mut(i);
            for (x, y) in bottom[0].iter_mut().zip(top[c].iter()).skip(c) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Incrementally maintained echelon basis of a subspace of Q^dim, used for
/// independence tests and span membership.
#[derive(Debug, Clone)]
pub struct SpanTracker {
    dim: usize,
    // pivot column -> normalized row (pivot entry 1)
    rows: BTreeMap<usize, Vec<Rational>>,
}

impl SpanTracker {
    pub fn new(dim: usize) -> Self {
        SpanTracker {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (&pc, row) in &self.rows {
            if !w[pc].is_zero() {
                let f = w[pc].clone();
                for (x, y) in w.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` if it is independent of the current span; returns whether it was added.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pc].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for (x, y) in row.iter_mut().zip(w.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.insert(pc, w);
        true
    }
}

/// Index of the lattice spanned by the (independent) integer rows inside its
/// saturation, i.e. the product of the invariant factors.
pub fn lattice_index(rows: &[Vec<BigInt>]) -> BigInt {
    if rows.is_empty() {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let r = a.len();
    let c = a[0].len();
    let mut prod = BigInt::one();
    let mut t = 0;
    while t < r.min(c) {
        // locate the smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = a[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..c {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = a[t][j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..r {
                        let s = &q * &a[i][t];
                        a[i][j] -= s;
                    }
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // move the smallest remaining entry of row/col t into the pivot
            let mut best = (t, t);
            for i in t..r {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..c {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        prod *= a[t][t].abs();
        t += 1;
    }
    // invariant factors come from the Smith form; the product of the
    // diagonal of this (not necessarily divisibility-ordered) form agrees.
    prod
}

/// Outcome of [`SparseSystem::finish`].
#[derive(Debug, Clone, PartialEq)]
pub enum SparseSolution {
    Unique(Vec<Rational>),
    Inconsistent,
    Underdetermined { rank: usize },
}

#[derive(Debug, Clone)]
struct IntRow {
    // sorted by column
    entries: Vec<(usize, BigInt)>,
    rhs: BigInt,
}

impl IntRow {
    fn normalize(&mut self) {
        let mut g = self.rhs.abs();
        for (_, v) in &self.entries {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for (_, v) in self.entries.iter_mut() {
            *v /= &g;
        }
        self.rhs /= &g;
    }

    /// self <- a*self - b*other, eliminating the shared leading column.
    fn eliminate(&mut self, other: &IntRow) {
        let a = other.entries[0].1.clone();
        let b = self.entries[0].1.clone();
        let g = a.gcd(&b);
        let (a, b) = (&a / &g, &b / &g);
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let ci = self.entries.get(i).map(|e| e.0);
            let cj = other.entries.get(j).map(|e| e.0);
            match (ci, cj) {
                (Some(x), Some(y)) if x == y => {
                    let v = &a * &self.entries[i].1 - &b * &other.entries[j].1;
                    if !v.is_zero() {
                        out.push((x, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push((x, &a * &self.entries[i].1));
                    i += 1;
                }
                (Some(x), None) => {
                    out.push((x, &a * &self.entries[i].1));
                    i += 1;
                }
                (_, Some(y)) => {
                    out.push((y, -(&b * &other.entries[j].1)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        self.entries = out;
        self.rhs = &a * &self.rhs - &b * &other.rhs;
        self.normalize();
    }
}

/// Sparse exact system `A x = b` solved by fraction-free elimination.
///
/// Rows are added one at a time. Once every unknown has a pivot the
/// solution is fixed and later rows are only checked by substitution.
#[derive(Debug, Clone)]
pub struct SparseSystem {
    unknowns: usize,
    pivots: BTreeMap<usize, IntRow>,
    inconsistent: bool,
    solution: Option<Vec<Rational>>,
    rows_seen: usize,
    rows_verified: usize,
}

impl SparseSystem {
    pub fn new(unknowns: usize) -> Self {
        SparseSystem {
            unknowns,
            pivots: BTreeMap::new(),
            inconsistent: false,
            solution: if unknowns == 0 { Some(Vec::new()) } else { None },
            rows_seen: 0,
            rows_verified: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_determined(&self) -> bool {
        self.solution.is_some()
    }

    pub fn rows_seen(&self) -> usize {
        self.rows_seen
    }

    /// Number of rows checked by substitution after the solution was fixed.
    pub fn rows_verified(&self) -> usize {
        self.rows_verified
    }

    /// Adds the equation `sum coeffs[col] * x[col] = rhs`.
    pub fn add_equation(&mut self, coeffs: &[(usize, Rational)], rhs: &Rational) {
        self.rows_seen += 1;
        if self.inconsistent {
            return;
        }
        if let Some(sol) = &self.solution {
            let lhs: Rational = coeffs.iter().map(|(c, v)| v * &sol[*c]).sum();
            self.rows_verified += 1;
            if &lhs != rhs {
                self.inconsistent = true;
            }
            return;
        }
        let den = common_denominator(coeffs.iter().map(|(_, v)| v).chain(std::iter::once(rhs)));
        let denq = Rational::from_integer(den);
        let mut entries: Vec<(usize, BigInt)> = coeffs
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (*c, (v * &denq).to_integer()))
            .collect();
        entries.sort_by_key(|e| e.0);
        // merge duplicate columns
        let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        let mut row = IntRow {
            entries: merged,
            rhs: (rhs * &denq).to_integer(),
        };
        row.normalize();
        while let Some(&(lead, _)) = row.entries.first() {
            match self.pivots.get(&lead) {
                Some(p) => row.eliminate(p),
                None => break,
            }
        }
        if row.entries.is_empty() {
            if !row.rhs.is_zero() {
                self.inconsistent = true;
            }
            return;
        }
        let lead = row.entries[0].0;
        self.pivots.insert(lead, row);
        if self.pivots.len() == self.unknowns {
            self.solution = Some(self.back_substitute());
        }
    }

    fn back_substitute(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.unknowns];
        for (&pc, row) in self.pivots.iter().rev() {
            let mut acc = Rational::from_integer(row.rhs.clone());
            for (c, v) in row.entries.iter().skip(1) {
                acc -= Rational::from_integer(v.clone()) * &x[*c];
            }
            x[pc] = acc / Rational::from_integer(row.entries[0].1.clone());
        }
        x
    }

    pub fn finish(&self) -> SparseSolution {
        if self.inconsistent {
            SparseSolution::Inconsistent
        } else if let Some(s) = &self.solution {
            SparseSolution::Unique(s.clone())
        } else {
            SparseSolution::Underdetermined { rank: self.rank() }
        }
    }
}
