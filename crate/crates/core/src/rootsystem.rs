//! Root systems of simple Lie algebras and Chevalley-basis structure constants.
//!
//! Roots are integer coordinate vectors over the simple roots (Bourbaki
//! numbering). Positive roots are ordered by height, then by coordinate
//! vector in decreasing lexicographic order, so the simple roots come first in
//! their natural order.
//!
//! Basis layout of [`LieAlgebraData`]: `e_α` for the positive roots in the
//! order above, then `e_{-α}` in the same order, then `h_1 … h_l` (the simple
//! coroots). Signs of the structure constants follow the extraspecial-pair
//! convention: `N_{α,β} = +(p+1)` for every extraspecial pair, all other
//! constants being forced by the Chevalley relations. A diagonal change of
//! sign on root vectors can be applied afterwards with
//! [`LieAlgebraData::with_root_signs`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, Rational};
use crate::error::{Result, WalgError};

pub type Root = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
            LieType::E => 'E',
            LieType::F => 'F',
            LieType::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for LieType {
    type Err = WalgError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            "F" => Ok(LieType::F),
            "G" => Ok(LieType::G),
            other => Err(WalgError::InvalidInput(format!("unknown Lie type {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub rank: usize,
    /// Gram matrix of the simple roots, short roots normalized to length² 2.
    pub gram: Vec<Vec<i64>>,
    /// `cartan[i][j] = <α_i, α_j^∨>`.
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

fn validate(t: LieType, rank: usize) -> Result<()> {
    let ok = (1..=8).contains(&rank)
        && match t {
            LieType::A => true,
            LieType::B | LieType::C => rank >= 2,
            LieType::D => rank >= 4,
            LieType::E => (6..=8).contains(&rank),
            LieType::F => rank == 4,
            LieType::G => rank == 2,
        };
    if ok {
        Ok(())
    } else {
        Err(WalgError::InvalidInput(format!(
            "{t}{rank} is not a simple type of rank at most 8"
        )))
    }
}

fn gram_matrix(t: LieType, l: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; l]; l];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match t {
        LieType::A => {
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 0..l.saturating_sub(1) {
                link(&mut g, i, i + 1, -1);
            }
        }
        LieType::B => {
            for i in 0..l - 1 {
                g[i][i] = 4;
            }
            g[l - 1][l - 1] = 2;
            for i in 0..l - 1 {
                link(&mut g, i, i + 1, -2);
            }
        }
        LieType::C => {
            for i in 0..l - 1 {
                g[i][i] = 2;
            }
            g[l - 1][l - 1] = 4;
            for i in 0..l - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, l - 2, l - 1, -2);
        }
        LieType::D => {
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 0..l - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, l - 3, l - 1, -1);
        }
        LieType::E => {
            for i in 0..l {
                g[i][i] = 2;
            }
            // 1-3-4-5-6(-7-8), 2-4
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..l - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        LieType::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        LieType::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

impl RootSystem {
    pub fn new(lie_type: LieType, rank: usize) -> Result<Self> {
        validate(lie_type, rank)?;
        let gram = gram_matrix(lie_type, rank);
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let mut rs = RootSystem {
            lie_type,
            rank,
            gram,
            cartan,
            positive_roots: Vec::new(),
            index: HashMap::new(),
        };
        rs.generate_positive_roots();
        Ok(rs)
    }

    fn generate_positive_roots(&mut self) {
        let l = self.rank;
        let mut roots: Vec<Root> = (0..l)
            .map(|i| {
                let mut r = vec![0; l];
                r[i] = 1;
                r
            })
            .collect();
        let mut known: std::collections::HashSet<Root> = roots.iter().cloned().collect();
        let mut frontier = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..l {
                    // p: how far down the α_i-string through β goes
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - self.pair(beta, i);
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up.clone());
                            roots.push(up);
                        }
                    }
                }
            }
            frontier = next;
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        self.index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        self.positive_roots = roots;
    }

    /// `<β, α_i^∨>` for β given in simple-root coordinates.
    pub fn pair(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().enumerate().map(|(j, c)| c * self.cartan[j][i]).sum()
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    pub fn dim(&self) -> usize {
        self.num_roots() + self.rank
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// All roots: positive ones first, then their negatives in the same order.
    pub fn roots(&self) -> Vec<Root> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| r.iter().map(|c| -c).collect::<Root>()));
        all
    }

    /// Index into [`RootSystem::roots`] (and into the Chevalley basis).
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        if root.iter().all(|&c| c >= 0) {
            self.index.get(root).copied()
        } else if root.iter().all(|&c| c <= 0) {
            let neg: Root = root.iter().map(|c| -c).collect();
            self.index.get(&neg).map(|i| i + self.num_positive())
        } else {
            None
        }
    }

    pub fn is_root(&self, root: &[i64]) -> bool {
        self.root_index(root).is_some()
    }

    /// Coroot of `root` in the basis of simple coroots.
    pub fn coroot(&self, root: &[i64]) -> Vec<Rational> {
        let len = self.inner(root, root);
        (0..self.rank)
            .map(|i| Rational::new((root[i] * self.gram[i][i]).into(), len.into()))
            .collect()
    }

    /// Largest p with β − pα a root.
    pub fn string_down(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut p = 0;
        let mut cur: Root = beta.to_vec();
        loop {
            for (c, a) in cur.iter_mut().zip(alpha) {
                *c -= a;
            }
            if self.is_root(&cur) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Primes that are bad for this type.
    pub fn bad_primes(&self) -> Vec<u64> {
        match self.lie_type {
            LieType::A => vec![],
            LieType::B | LieType::C | LieType::D => vec![2],
            LieType::G | LieType::F => vec![2, 3],
            LieType::E => {
                if self.rank == 8 {
                    vec![2, 3, 5]
                } else {
                    vec![2, 3]
                }
            }
        }
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.lie_type, self.rank)
    }
}

/// Sparse vector in some basis: sorted `(index, coefficient)` pairs, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Adds `scale * v` into `acc` (both sorted, result kept canonical).
pub fn axpy(acc: &mut SparseVec, scale: &Rational, v: &SparseVec) {
    if scale.is_zero() || v.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(acc.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < v.len() {
        match (acc.get(i), v.get(j)) {
            (Some(a), Some(b)) if a.0 == b.0 => {
                let s = &a.1 + scale * &b.1;
                if !s.is_zero() {
                    out.push((a.0, s));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a.0 < b.0 => {
                out.push(a.clone());
                i += 1;
            }
            (Some(a), None) => {
                out.push(a.clone());
                i += 1;
            }
            (_, Some(b)) => {
                out.push((b.0, scale * &b.1));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    *acc = out;
}

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVec, dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// A simple Lie algebra in a Chevalley basis with exact structure constants.
#[derive(Debug, Clone)]
pub struct LieAlgebraData {
    pub root_system: RootSystem,
    pub basis_labels: Vec<String>,
    /// `brackets[i][j]` = `[b_i, b_j]` as a sparse vector.
    brackets: Vec<Vec<SparseVec>>,
    killing: Vec<Vec<Rational>>,
}

impl LieAlgebraData {
    pub fn dim(&self) -> usize {
        self.brackets.len()
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank
    }

    /// Index of the first Cartan basis element `h_1`.
    pub fn cartan_offset(&self) -> usize {
        self.root_system.num_roots()
    }

    pub fn is_cartan(&self, i: usize) -> bool {
        i >= self.cartan_offset()
    }

    /// Root attached to a root-vector basis index.
    pub fn root_of(&self, i: usize) -> Option<Root> {
        let np = self.root_system.num_positive();
        if i < np {
            Some(self.root_system.positive_roots[i].clone())
        } else if i < 2 * np {
            Some(self.root_system.positive_roots[i - np].iter().map(|c| -c).collect())
        } else {
            None
        }
    }

    /// t-weight (simple-root coordinates) of a basis element; zero for Cartan.
    pub fn weight_of(&self, i: usize) -> Root {
        self.root_of(i).unwrap_or_else(|| vec![0; self.rank()])
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    /// Bracket of two vectors in Chevalley coordinates.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                let br = &self.brackets[*i][*j];
                if !br.is_empty() {
                    axpy(&mut acc, &(a * b), br);
                }
            }
        }
        acc
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.brackets[i][j]
            .iter()
            .find(|(idx, _)| *idx == k)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Killing form on basis elements.
    pub fn killing_basis(&self, i: usize, j: usize) -> &Rational {
        &self.killing[i][j]
    }

    pub fn killing(&self, x: &SparseVec, y: &SparseVec) -> Rational {
        let mut s = Rational::zero();
        for (i, a) in x {
            for (j, b) in y {
                let k = &self.killing[*i][*j];
                if !k.is_zero() {
                    s += a * b * k;
                }
            }
        }
        s
    }

    pub fn killing_matrix(&self) -> &Vec<Vec<Rational>> {
        &self.killing
    }

    /// Rescales root vectors by `signs[α]` (one entry per positive root, the
    /// same sign is applied to `e_{-α}` so `[e_α, e_{-α}] = h_α` is kept).
    pub fn with_root_signs(&self, signs: &[i8]) -> Result<Self> {
        let np = self.root_system.num_positive();
        if signs.len() != np || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(WalgError::InvalidInput(format!(
                "expected {np} signs in {{+1,-1}}"
            )));
        }
        let n = self.dim();
        let eps = |i: usize| -> i64 {
            if i < np {
                signs[i] as i64
            } else if i < 2 * np {
                signs[i - np] as i64
            } else {
                1
            }
        };
        let mut brackets = self.brackets.clone();
        for i in 0..n {
            for j in 0..n {
                for (k, v) in brackets[i][j].iter_mut() {
                    *v *= int(eps(i) * eps(j) * eps(*k));
                }
            }
        }
        let mut out = LieAlgebraData {
            root_system: self.root_system.clone(),
            basis_labels: self.basis_labels.clone(),
            brackets,
            killing: Vec::new(),
        };
        out.killing = out.compute_killing();
        Ok(out)
    }

    fn compute_killing(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        // ad matrices in sparse column form: ad_i[l] = [b_i, b_l]
        let mut k = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let wi = self.weight_of(i);
                let wj = self.weight_of(j);
                if wi.iter().zip(&wj).any(|(a, b)| a + b != 0) {
                    continue;
                }
                // tr(ad b_i ad b_j) = sum_l coefficient of b_l in [b_i, [b_j, b_l]]
                let mut tr = Rational::zero();
                for l in 0..n {
                    for (m, c) in &self.brackets[j][l] {
                        for (p, d) in &self.brackets[i][*m] {
                            if *p == l {
                                tr += c * d;
                            }
                        }
                    }
                }
                k[i][j] = tr.clone();
                k[j][i] = tr;
            }
        }
        k
    }
}

/// Builds the Chevalley basis and its structure constants.
pub fn chevalley_constants(rs: &RootSystem) -> LieAlgebraData {
    let np = rs.num_positive();
    let l = rs.rank;
    let n = rs.dim();
    let roots = rs.roots();
    let pos = &rs.positive_roots;
    let len = |r: &[i64]| rs.inner(r, r);

    // N for pairs of positive roots, filled in by increasing height of the sum.
    let mut npos: HashMap<(usize, usize), i64> = HashMap::new();

    // General N_{α,β} for arbitrary roots in terms of the positive-pair table.
    fn n_general(
        rs: &RootSystem,
        npos: &HashMap<(usize, usize), i64>,
        a: &[i64],
        b: &[i64],
    ) -> i64 {
        let sum: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if !rs.is_root(&sum) {
            return 0;
        }
        let is_pos = |r: &[i64]| r.iter().all(|&c| c >= 0);
        let neg = |r: &[i64]| -> Root { r.iter().map(|c| -c).collect() };
        let len = |r: &[i64]| rs.inner(r, r);
        match (is_pos(a), is_pos(b)) {
            (true, true) => {
                let ia = rs.root_index(a).unwrap();
                let ib = rs.root_index(b).unwrap();
                if let Some(v) = npos.get(&(ia, ib)) {
                    *v
                } else if let Some(v) = npos.get(&(ib, ia)) {
                    -*v
                } else {
                    panic!("structure constant requested before it was determined")
                }
            }
            (false, false) => -n_general(rs, npos, &neg(a), &neg(b)),
            (false, true) => -n_general(rs, npos, b, a),
            (true, false) => {
                // a positive, b = -g with g positive
                let g = neg(b);
                if is_pos(&sum) {
                    // a = g + d, d = sum positive
                    let d = sum;
                    let v = n_general(rs, npos, &g, &d);
                    -(len(&d) * v) / len(a)
                } else {
                    // g = a + d, d = -sum positive
                    let d = neg(&sum);
                    let v = n_general(rs, npos, &d, a);
                    (len(&d) * v) / len(&g)
                }
            }
        }
    }

    for (xi_idx, xi) in pos.iter().enumerate() {
        if RootSystem::height(xi) == 1 {
            continue;
        }
        // special pairs (α, β), α < β in the root order, α + β = ξ
        let mut pairs = Vec::new();
        for (ia, a) in pos.iter().enumerate() {
            let b: Root = xi.iter().zip(a).map(|(x, y)| x - y).collect();
            if let Some(ib) = rs.root_index(&b) {
                if ib < np && ia < ib {
                    pairs.push((ia, ib));
                }
            }
        }
        let _ = xi_idx;
        let (ea, eb) = pairs[0];
        let p = rs.string_down(&pos[ea], &pos[eb]);
        npos.insert((ea, eb), p + 1);
        let n_ex = p + 1;
        for &(ia, ib) in &pairs[1..] {
            let a = &pos[ia];
            let b = &pos[ib];
            let a1 = &pos[ea];
            let b1 = &pos[eb];
            let neg = |r: &[i64]| -> Root { r.iter().map(|c| -c).collect() };
            let diff = |x: &[i64], y: &[i64]| -> Root { x.iter().zip(y).map(|(u, v)| u - v).collect() };
            // four-root relation on (α, β, -α', -β')
            let mut t = Rational::zero();
            let s1 = diff(b, a1);
            if rs.is_root(&s1) {
                let v = n_general(rs, &npos, b, &neg(a1)) * n_general(rs, &npos, a, &neg(b1));
                t += Rational::new(v.into(), len(&s1).into());
            }
            let s2 = diff(a, a1);
            if rs.is_root(&s2) {
                let v = n_general(rs, &npos, &neg(a1), a) * n_general(rs, &npos, b, &neg(b1));
                t += Rational::new(v.into(), len(&s2).into());
            }
            let val = t * Rational::from_integer(len(xi).into()) / Rational::from_integer(n_ex.into());
            assert!(val.is_integer(), "non-integral structure constant");
            npos.insert((ia, ib), val.to_integer().try_into().expect("small constant"));
        }
    }

    let mut brackets = vec![vec![SparseVec::new(); n]; n];
    let h0 = 2 * np;
    for i in 0..2 * np {
        let a = &roots[i];
        for j in 0..2 * np {
            let b = &roots[j];
            let sum: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&c| c == 0) {
                // [e_α, e_{-α}] = h_α
                let co = rs.coroot(a);
                brackets[i][j] = co
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (h0 + k, c))
                    .collect();
            } else if let Some(k) = rs.root_index(&sum) {
                let v = n_general(rs, &npos, a, b);
                brackets[i][j] = vec![(k, int(v))];
            }
        }
        for k in 0..l {
            let c = rs.pair(a, k);
            if c != 0 {
                brackets[h0 + k][i] = vec![(i, int(c))];
                brackets[i][h0 + k] = vec![(i, int(-c))];
            }
        }
    }

    let mut labels = Vec::with_capacity(n);
    let fmt_root = |r: &[i64]| {
        r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    };
    for r in &roots {
        labels.push(format!("e[{}]", fmt_root(r)));
    }
    for k in 0..l {
        labels.push(format!("h{}", k + 1));
    }

    let mut data = LieAlgebraData {
        root_system: rs.clone(),
        basis_labels: labels,
        brackets,
        killing: Vec::new(),
    };
    data.killing = data.compute_killing();
    data
}

/// Convenience: root system plus Chevalley data.
pub fn simple_lie_algebra(t: LieType, rank: usize) -> Result<LieAlgebraData> {
    let rs = RootSystem::new(t, rank)?;
    Ok(chevalley_constants(&rs))
}

/// Checks the Jacobi identity on one basis triple.
pub fn jacobi_holds(g: &LieAlgebraData, i: usize, j: usize, k: usize) -> bool {
    let e = |x: usize| vec![(x, Rational::one())];
    let t1 = g.bracket(&e(i), g.bracket_basis(j, k));
    let t2 = g.bracket(&e(j), g.bracket_basis(k, i));
    let t3 = g.bracket(&e(k), g.bracket_basis(i, j));
    let mut acc = t1;
    axpy(&mut acc, &Rational::one(), &t2);
    axpy(&mut acc, &Rational::one(), &t3);
    acc.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;

    #[test]
    fn root_counts() {
        let cases = [
            (LieType::A, 1, 2),
            (LieType::A, 3, 12),
            (LieType::B, 3, 18),
            (LieType::C, 3, 18),
            (LieType::D, 4, 24),
            (LieType::G, 2, 12),
            (LieType::F, 4, 48),
            (LieType::E, 6, 72),
            (LieType::E, 7, 126),
            (LieType::E, 8, 240),
        ];
        for (t, l, count) in cases {
            let rs = RootSystem::new(t, l).unwrap();
            assert_eq!(rs.num_roots(), count, "{t}{l}");
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootSystem::new(LieType::G, 3).is_err());
        assert!(RootSystem::new(LieType::E, 5).is_err());
        assert!(RootSystem::new(LieType::A, 9).is_err());
        assert!(RootSystem::new(LieType::D, 3).is_err());
        assert!("X".parse::<LieType>().is_err());
    }

    #[test]
    fn cartan_matrix_shape() {
        for (t, l) in [(LieType::G, 2), (LieType::F, 4), (LieType::B, 3), (LieType::E, 6)] {
            let rs = RootSystem::new(t, l).unwrap();
            for i in 0..l {
                assert_eq!(rs.cartan[i][i], 2);
                for j in 0..l {
                    if i != j {
                        assert!(rs.cartan[i][j] <= 0);
                    }
                }
            }
        }
        let g2 = RootSystem::new(LieType::G, 2).unwrap();
        assert_eq!(g2.cartan, vec![vec![2, -1], vec![-3, 2]]);
        let a1 = RootSystem::new(LieType::A, 1).unwrap();
        assert_eq!(a1.cartan, vec![vec![2]]);
    }

    #[test]
    fn g2_positive_roots_in_height_order() {
        let rs = RootSystem::new(LieType::G, 2).unwrap();
        let expect: Vec<Root> = vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
            vec![3, 1],
            vec![3, 2],
        ];
        assert_eq!(rs.positive_roots, expect);
    }

    #[test]
    fn sl2_relations() {
        let g = simple_lie_algebra(LieType::A, 1).unwrap();
        // basis e, f, h
        assert_eq!(g.bracket_basis(0, 1), &vec![(2, int(1))]);
        assert_eq!(g.bracket_basis(2, 0), &vec![(0, int(2))]);
        assert_eq!(g.bracket_basis(2, 1), &vec![(1, int(-2))]);
        assert_eq!(g.killing_basis(0, 1), &int(4));
    }

    #[test]
    fn g2_chevalley_integrality_and_jacobi() {
        let g = simple_lie_algebra(LieType::G, 2).unwrap();
        let n = g.dim();
        assert_eq!(n, 14);
        let rs = &g.root_system;
        for i in 0..12 {
            for j in 0..12 {
                let a = g.root_of(i).unwrap();
                let b = g.root_of(j).unwrap();
                let sum: Root = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                if let Some(k) = rs.root_index(&sum) {
                    let c = g.structure_constant(i, j, k);
                    let p = rs.string_down(&a, &b);
                    assert_eq!(c.clone() * c, int((p + 1) * (p + 1)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut s = g.bracket_basis(i, j).clone();
                axpy(&mut s, &int(1), g.bracket_basis(j, i));
                assert!(s.is_empty());
                for k in 0..n {
                    assert!(jacobi_holds(&g, i, j, k), "jacobi {i} {j} {k}");
                }
            }
        }
    }

    #[test]
    fn g2_killing_values() {
        let g = simple_lie_algebra(LieType::G, 2).unwrap();
        // short root 2α1+α2 is index 3, its negative is index 9
        assert_eq!(g.killing_basis(3, 9), &int(24));
        // long root α2
        assert_eq!(g.killing_basis(1, 7), &int(8));
        assert_eq!(g.killing_basis(3, 8), &int(0));
        let det = determinant(g.killing_matrix());
        assert!(!det.is_zero());
    }

    #[test]
    fn sign_change_preserves_chevalley_relations() {
        let g = simple_lie_algebra(LieType::G, 2).unwrap();
        let g2 = g.with_root_signs(&[1, -1, 1, -1, -1, 1]).unwrap();
        for i in 0..14 {
            for j in 0..14 {
                for k in 0..14 {
                    assert!(jacobi_holds(&g2, i, j, k));
                }
            }
        }
        assert_eq!(g2.bracket_basis(1, 7), g.bracket_basis(1, 7));
        assert_eq!(g2.killing_matrix(), g.killing_matrix());
    }
}
