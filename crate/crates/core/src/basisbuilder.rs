//! Construction of the ordered basis `x_1 … x_n` adapted to `(e, h, f)`.
//!
//! Segments, in order:
//!
//! | indices            | content                                         |
//! |--------------------|-------------------------------------------------|
//! | `0 .. r`           | basis of g^e (generating prefix `0 .. b`)        |
//! | `r .. m`           | Chevalley vectors completing p = ⊕_{j≥0} g(j)    |
//! | `m .. m+s`         | `z_1 … z_s`, root vectors of g(-1)               |
//! | `m+s .. m+2s`      | `z*_1 … z*_s`, the Lagrangian dual to the `z_i`  |
//! | `m+2s .. m+2s+s'`  | basis of ker χ on g(-2), then f                  |
//! | `m+2s+s' .. n`     | root vectors of g(j), j ≤ -3                     |
//!
//! Indices `m+s .. n` span the nilpotent subalgebra m. Within segments the
//! order is by descending degree; ties in g^e are broken by nonzero weight
//! first, then decreasing restricted weight, elsewhere by the Chevalley index.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{fmt_rational, int, primitive_integer_vector, DenominatorLedger, Rational};
use crate::error::{Result, WalgError};
use crate::linalg::{inverse, lattice_index, nullspace, rank, solve, Matrix, SpanTracker};
use crate::rootsystem::{axpy, dense_from_sparse, sparse_from_dense, LieAlgebraData, SparseVec};
use crate::sl2grading::{chi, Grading, Sl2Triple};

/// A proper generating prefix of g^e is used only when it has at most this
/// fraction (numerator, denominator) of the elements of g^e.
pub const PREFIX_FRACTION: (usize, usize) = (1, 2);

/// Segment each basis vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Segment {
    Centralizer,
    Parabolic,
    WittZ,
    WittZStar,
    KerChi,
    F,
    Low,
}

/// A vector of g together with its h-eigenvalue and t^e-weight.
#[derive(Debug, Clone)]
pub struct WeightedVector {
    pub vec: SparseVec,
    pub n: i64,
    pub beta: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub vectors: Vec<SparseVec>,
    pub n: Vec<i64>,
    pub beta: Vec<Vec<i64>>,
    pub segment: Vec<Segment>,
    pub r: usize,
    pub b: usize,
    pub m: usize,
    pub s: usize,
    pub s_prime: usize,
    pub e_index: usize,
    /// t^e basis, in coordinates over the simple coroots.
    pub te_basis: Vec<Vec<i64>>,
    /// K: indices of basis vectors generating m (all ≥ m+s).
    pub m_generators: Vec<usize>,
    /// Smallest generating prefix in the final order, before the size policy.
    pub minimal_prefix: usize,
    /// Smallest size of a generating set of m (dim m − dim [m,m]).
    pub minimal_m_generators: usize,
    /// For k in b..r: x_k = Σ ν [x_i, x_j] with i, j < k.
    pub bracket_decomposition: BTreeMap<usize, Vec<(usize, usize, Rational)>>,
    /// χ(x_i).
    pub chi_values: Vec<Rational>,
    /// `[x_i, x_j]` in the x-basis.
    pub structure: Vec<Vec<SparseVec>>,
    pub ledger: DenominatorLedger,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Number of PBW letters of Q_χ, i.e. m + s.
    pub fn q_len(&self) -> usize {
        self.m + self.s
    }

    /// Kazhdan weight n_i + 2 of a letter.
    pub fn kazhdan_weight(&self, i: usize) -> i64 {
        self.n[i] + 2
    }

    pub fn in_m(&self, i: usize) -> bool {
        i >= self.m + self.s
    }

    pub fn te_dim(&self) -> usize {
        self.te_basis.len()
    }

    /// Bracket in the x-basis of two x-coordinate vectors.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                let br = &self.structure[*i][*j];
                if !br.is_empty() {
                    axpy(&mut acc, &(a * b), br);
                }
            }
        }
        acc
    }

    /// Expression of x_i in the Chevalley basis, e.g. `1/2*b7` (1-based b).
    pub fn describe(&self, i: usize) -> String {
        let terms: Vec<String> = self.vectors[i]
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    format!("b{}", k + 1)
                } else if c == &-Rational::one() {
                    format!("-b{}", k + 1)
                } else {
                    format!("{}*b{}", fmt_rational(c), k + 1)
                }
            })
            .collect();
        let s = terms.join(" + ");
        s.replace("+ -", "- ")
    }
}

/// Restricted weight of the Chevalley basis element `i` against `te`.
fn restricted_weight(g: &LieAlgebraData, te: &[Vec<i64>], i: usize) -> Vec<i64> {
    let w = g.weight_of(i);
    te.iter()
        .map(|t| t.iter().enumerate().map(|(j, c)| c * g.root_system.pair(&w, j)).sum())
        .collect()
}

/// t^e := t ∩ ker(ad e) = {t ∈ t : γ(t) = 0 for γ ∈ Γ}, as primitive integer
/// vectors over the simple coroots.
pub fn te_basis(g: &LieAlgebraData, triple: &Sl2Triple) -> Result<Vec<Vec<i64>>> {
    let l = g.rank();
    let m: Matrix = triple
        .gamma
        .iter()
        .map(|&i| {
            let r = g.root_of(i).unwrap();
            (0..l).map(|j| int(g.root_system.pair(&r, j))).collect()
        })
        .collect();
    let basis: Vec<Vec<i64>> = if m.is_empty() {
        (0..l)
            .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
            .collect()
    } else {
        nullspace(&m, l)
            .iter()
            .map(|v| {
                primitive_integer_vector(v)
                    .iter()
                    .map(|x| i64::try_from(x).expect("small coroot coordinate"))
                    .collect()
            })
            .collect()
    };
    let gamma_roots: Matrix = triple
        .gamma
        .iter()
        .map(|&i| g.root_of(i).unwrap().into_iter().map(int).collect())
        .collect();
    let expected = l - rank(&gamma_roots);
    if basis.len() != expected {
        return Err(WalgError::invariant(
            "basisbuilder",
            format!("dim t^e = {} but rank − |Γ| = {expected}", basis.len()),
        ));
    }
    Ok(basis)
}

/// Key ordering the centralizer basis: descending degree, vectors of nonzero
/// weight first, decreasing weight, e first in its block, then Chevalley index.
fn centralizer_key(w: &WeightedVector, is_e: bool) -> (Reverse<i64>, bool, Reverse<Vec<i64>>, bool, usize) {
    let zero = w.beta.iter().all(|&c| c == 0);
    (
        Reverse(w.n),
        zero,
        Reverse(w.beta.clone()),
        !is_e,
        w.vec.first().map_or(usize::MAX, |(i, _)| *i),
    )
}

/// Basis of g^e made of h- and t^e-eigenvectors, ordered by [`centralizer_key`].
/// The first returned index is the position of e (or `None` when e = 0).
pub fn centralizer_basis(
    g: &LieAlgebraData,
    grading: &Grading,
    triple: &Sl2Triple,
    te: &[Vec<i64>],
    ledger: &mut DenominatorLedger,
) -> Result<(Vec<WeightedVector>, Option<usize>)> {
    let dim = g.dim();
    // blocks of p keyed by (degree, restricted weight)
    let mut blocks: BTreeMap<(i64, Vec<i64>), Vec<usize>> = BTreeMap::new();
    for i in 0..dim {
        let d = grading.degree[i];
        if d >= 0 {
            blocks.entry((d, restricted_weight(g, te, i))).or_default().push(i);
        }
    }
    let mut out: Vec<(WeightedVector, bool)> = Vec::new();
    for ((n, beta), members) in blocks {
        // columns: [e, b_j] for b_j in the block
        let images: Vec<SparseVec> = members
            .iter()
            .map(|&j| g.bracket(&triple.e, &vec![(j, Rational::one())]))
            .collect();
        let rows: Vec<usize> = {
            let mut r: Vec<usize> = images.iter().flat_map(|v| v.iter().map(|(k, _)| *k)).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let kernel: Vec<Vec<Rational>> = if rows.is_empty() {
            (0..members.len())
                .map(|c| (0..members.len()).map(|k| if k == c { int(1) } else { int(0) }).collect())
                .collect()
        } else {
            let m: Matrix = rows
                .iter()
                .map(|&k| {
                    images
                        .iter()
                        .map(|v| v.iter().find(|(i, _)| *i == k).map_or(Rational::zero(), |(_, x)| x.clone()))
                        .collect()
                })
                .collect();
            nullspace(&m, members.len())
        };
        if kernel.is_empty() {
            continue;
        }
        let mut ints: Vec<Vec<BigInt>> = kernel.iter().map(|v| primitive_integer_vector(v)).collect();
        // e leads its block when present
        let e_local: Option<Vec<BigInt>> = if !triple.e.is_empty() && n == 2 && beta.iter().all(|&c| c == 0) {
            let ev: Vec<BigInt> = members
                .iter()
                .map(|j| {
                    triple
                        .e
                        .iter()
                        .find(|(i, _)| i == j)
                        .map_or(BigInt::zero(), |(_, x)| x.to_integer())
                })
                .collect();
            if ev.iter().any(|x| !x.is_zero()) {
                Some(ev)
            } else {
                None
            }
        } else {
            None
        };
        if let Some(ev) = &e_local {
            let mut tracker = SpanTracker::new(members.len());
            let to_q = |v: &Vec<BigInt>| v.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>();
            tracker.insert(&to_q(ev));
            let mut chosen = vec![ev.clone()];
            for v in &ints {
                if tracker.insert(&to_q(v)) {
                    chosen.push(v.clone());
                }
            }
            ints = chosen;
        }
        let idx = lattice_index(&ints);
        if !idx.is_one() {
            ledger.add_integer(&idx, "centralizer basis");
        }
        for (c, v) in ints.iter().enumerate() {
            let vec: SparseVec = members
                .iter()
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .map(|(&j, x)| (j, Rational::from_integer(x.clone())))
                .collect();
            out.push((
                WeightedVector {
                    vec,
                    n,
                    beta: beta.clone(),
                },
                e_local.is_some() && c == 0,
            ));
        }
    }
    out.sort_by_key(|a| centralizer_key(&a.0, a.1));
    let e_index = out.iter().position(|(_, is_e)| *is_e);
    Ok((out.into_iter().map(|(w, _)| w).collect(), e_index))
}

/// Span of the Lie subalgebra generated by `gens` (Chevalley coordinates).
fn lie_closure(g: &LieAlgebraData, gens: &[SparseVec]) -> SpanTracker {
    let dim = g.dim();
    let mut span = SpanTracker::new(dim);
    let mut basis: Vec<SparseVec> = Vec::new();
    for v in gens {
        if span.insert(&dense_from_sparse(v, dim)) {
            basis.push(v.clone());
        }
    }
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for u in &frontier {
            for v in gens {
                let w = g.bracket(v, u);
                if !w.is_empty() && span.insert(&dense_from_sparse(&w, dim)) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    span
}

/// Smallest prefix length whose Lie closure is the span of all `vectors`.
pub fn minimal_generating_prefix(g: &LieAlgebraData, vectors: &[SparseVec]) -> usize {
    let target = vectors.len();
    (0..=target)
        .find(|&b| lie_closure(g, &vectors[..b]).rank() == target)
        .unwrap_or(target)
}

/// Chooses the generating prefix of g^e and reorders the centralizer basis so
/// that `x_{b+1} … x_r` have nondecreasing degree and each lies in the span of
/// brackets of earlier vectors. Returns `(ordered basis, b, ν-decompositions)`.
///
/// For e = 0 the shortest generating prefix of the given order is tried
/// first and no size threshold applies.
#[allow(clippy::type_complexity)]
pub fn generating_prefix(
    g: &LieAlgebraData,
    centralizer: &[WeightedVector],
    e_index: Option<usize>,
) -> (Vec<WeightedVector>, usize, BTreeMap<usize, Vec<(usize, usize, Rational)>>) {
    let r = centralizer.len();
    let full = || (centralizer.to_vec(), r, BTreeMap::new());
    if r == 0 {
        return full();
    }
    if e_index.is_none() {
        let vecs: Vec<SparseVec> = centralizer.iter().map(|w| w.vec.clone()).collect();
        let b = minimal_generating_prefix(g, &vecs);
        if let Some(placed) = place_tail(g, centralizer, (0..b).collect()) {
            return placed;
        }
    }
    // greedy generating set, scanning by ascending degree; e always included
    let mut by_degree: Vec<usize> = (0..r).collect();
    by_degree.sort_by_key(|&i| (centralizer[i].n, i));
    let mut gens: Vec<usize> = e_index.into_iter().collect();
    for &i in &by_degree {
        if gens.contains(&i) {
            continue;
        }
        let vecs: Vec<SparseVec> = gens.iter().map(|&k| centralizer[k].vec.clone()).collect();
        let closure = lie_closure(g, &vecs);
        if !closure.contains(&dense_from_sparse(&centralizer[i].vec, g.dim())) {
            gens.push(i);
        }
    }
    let (num, den) = PREFIX_FRACTION;
    if e_index.is_some() && gens.len() * den > r * num {
        return full();
    }
    gens.sort_unstable();
    place_tail(g, centralizer, gens).unwrap_or_else(full)
}

/// Orders the non-generators smallest degree first, each in the span of
/// brackets of vectors already placed.
#[allow(clippy::type_complexity)]
fn place_tail(
    g: &LieAlgebraData,
    centralizer: &[WeightedVector],
    gens: Vec<usize>,
) -> Option<(Vec<WeightedVector>, usize, BTreeMap<usize, Vec<(usize, usize, Rational)>>)> {
    let b = gens.len();
    let mut rest: Vec<usize> = (0..centralizer.len()).filter(|i| !gens.contains(i)).collect();
    let mut placed = gens;
    rest.sort_by_key(|&i| (centralizer[i].n, i));
    let mut decomposition = BTreeMap::new();
    while !rest.is_empty() {
        let lowest = centralizer[rest[0]].n;
        let (pos, nu) = rest
            .iter()
            .enumerate()
            .take_while(|(_, &cand)| centralizer[cand].n == lowest)
            .find_map(|(pos, &cand)| bracket_combination(g, centralizer, &placed, cand).map(|nu| (pos, nu)))?;
        let cand = rest.remove(pos);
        decomposition.insert(placed.len(), nu);
        placed.push(cand);
    }
    let ordered: Vec<WeightedVector> = placed.iter().map(|&i| centralizer[i].clone()).collect();
    Some((ordered, b, decomposition))
}

/// Writes `centralizer[target]` as Σ ν [x_i, x_j] over pairs of `placed`
/// (positions in `placed` are returned).
fn bracket_combination(
    g: &LieAlgebraData,
    centralizer: &[WeightedVector],
    placed: &[usize],
    target: usize,
) -> Option<Vec<(usize, usize, Rational)>> {
    let dim = g.dim();
    let want = &centralizer[target];
    let mut pairs = Vec::new();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for a in 0..placed.len() {
        for b in a + 1..placed.len() {
            let (x, y) = (&centralizer[placed[a]], &centralizer[placed[b]]);
            if x.n + y.n != want.n || x.beta.iter().zip(&y.beta).zip(&want.beta).any(|((p, q), w)| p + q != *w) {
                continue;
            }
            let br = g.bracket(&x.vec, &y.vec);
            if br.is_empty() {
                continue;
            }
            pairs.push((a, b));
            cols.push(dense_from_sparse(&br, dim));
        }
    }
    if cols.is_empty() {
        return None;
    }
    let m: Matrix = (0..dim).map(|k| cols.iter().map(|c| c[k].clone()).collect()).collect();
    let rhs = dense_from_sparse(&want.vec, dim);
    let (nu, _) = solve(&m, &rhs)?;
    Some(
        pairs
            .into_iter()
            .zip(nu)
            .filter(|(_, v)| !v.is_zero())
            .map(|((a, b), v)| (a, b, v))
            .collect(),
    )
}

/// Witt basis of g(-1) for ⟨x, y⟩ = χ([x, y]).
///
/// For each pair of opposite restricted weights {λ, −λ}, the weight of the
/// earlier root (Chevalley order) goes to the Lagrangian side: the z_i are the
/// root vectors of the other weight and the z*_j are the combinations of the
/// earlier-weight root vectors dual to them. Weight-zero vectors are split by
/// a greedy isotropic choice and corrected to a Witt basis.
pub fn witt_basis_gminus1(
    g: &LieAlgebraData,
    grading: &Grading,
    triple: &Sl2Triple,
    te: &[Vec<i64>],
    ledger: &mut DenominatorLedger,
) -> Result<(Vec<WeightedVector>, Vec<WeightedVector>)> {
    let roots: Vec<usize> = grading.piece(-1).to_vec();
    if roots.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let pairing = |x: &SparseVec, y: &SparseVec| chi(g, triple, &g.bracket(x, y));
    let unit = |i: usize| -> SparseVec { vec![(i, Rational::one())] };
    let weight = |i: usize| restricted_weight(g, te, i);

    // side of each weight: true = z (root vectors), false = z* (Lagrangian)
    let mut z_side: BTreeMap<Vec<i64>, bool> = BTreeMap::new();
    for &i in &roots {
        let w = weight(i);
        if w.iter().all(|&c| c == 0) || z_side.contains_key(&w) {
            continue;
        }
        let neg: Vec<i64> = w.iter().map(|c| -c).collect();
        z_side.insert(w, false);
        z_side.insert(neg, true);
    }

    let mut zs: Vec<WeightedVector> = Vec::new();
    let mut stars: Vec<WeightedVector> = Vec::new();
    let mut classes: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for &i in &roots {
        classes.entry(weight(i)).or_default().push(i);
    }
    // nonzero classes, processed in order of their first z root
    let mut z_roots: Vec<usize> = roots
        .iter()
        .copied()
        .filter(|&i| z_side.get(&weight(i)) == Some(&true))
        .collect();
    z_roots.sort_unstable();
    let mut done: Vec<Vec<i64>> = Vec::new();
    for &zi in &z_roots {
        let w = weight(zi);
        if done.contains(&w) {
            continue;
        }
        done.push(w.clone());
        let zlist = classes[&w].clone();
        let neg: Vec<i64> = w.iter().map(|c| -c).collect();
        let rlist = classes.get(&neg).cloned().unwrap_or_default();
        if zlist.len() != rlist.len() {
            return Err(WalgError::invariant("basisbuilder", "unbalanced weight spaces in g(-1)"));
        }
        let p: Matrix = zlist
            .iter()
            .map(|&z| rlist.iter().map(|&r| pairing(&unit(z), &unit(r))).collect())
            .collect();
        let pinv = inverse(&p).ok_or_else(|| {
            WalgError::invariant("basisbuilder", "degenerate pairing on g(-1)")
        })?;
        for (a, &z) in zlist.iter().enumerate() {
            zs.push(WeightedVector {
                vec: unit(z),
                n: -1,
                beta: w.clone(),
            });
            let star: SparseVec = rlist
                .iter()
                .enumerate()
                .filter(|(j, _)| !pinv[*j][a].is_zero())
                .map(|(j, &r)| (r, pinv[j][a].clone()))
                .collect();
            ledger.add_all(star.iter().map(|(_, c)| c), "Witt basis");
            stars.push(WeightedVector {
                vec: {
                    let mut s = star;
                    s.sort_by_key(|e| e.0);
                    s
                },
                n: -1,
                beta: neg.clone(),
            });
        }
    }

    // weight-zero part
    let zero_w = vec![0i64; te.len()];
    if let Some(v0) = classes.get(&zero_w) {
        let k = v0.len() / 2;
        let mut lag: Vec<usize> = Vec::new();
        for &v in v0 {
            if lag.len() < k && lag.iter().all(|&s| pairing(&unit(v), &unit(s)).is_zero()) {
                lag.push(v);
            }
        }
        let zl: Vec<usize> = v0.iter().copied().filter(|v| !lag.contains(v)).collect();
        if lag.len() != k || zl.len() != k {
            return Err(WalgError::invariant("basisbuilder", "no isotropic split of g(-1)_0"));
        }
        let p: Matrix = zl
            .iter()
            .map(|&z| lag.iter().map(|&r| pairing(&unit(z), &unit(r))).collect())
            .collect();
        let pinv = inverse(&p).ok_or_else(|| {
            WalgError::invariant("basisbuilder", "degenerate pairing on g(-1)_0")
        })?;
        let star_vecs: Vec<SparseVec> = (0..k)
            .map(|a| {
                let mut s: SparseVec = lag
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| !pinv[*j][a].is_zero())
                    .map(|(j, &r)| (r, pinv[j][a].clone()))
                    .collect();
                s.sort_by_key(|e| e.0);
                s
            })
            .collect();
        for (a, &z) in zl.iter().enumerate() {
            // z'_a = z_a + 1/2 Σ_c ⟨z_a, z_c⟩ z*_c makes the z side isotropic
            let mut v = unit(z);
            for (c, &zc) in zl.iter().enumerate() {
                let w = pairing(&unit(z), &unit(zc));
                if !w.is_zero() {
                    axpy(&mut v, &(w * Rational::new(1.into(), 2.into())), &star_vecs[c]);
                }
            }
            ledger.add_all(v.iter().map(|(_, c)| c), "Witt basis");
            ledger.add_all(star_vecs[a].iter().map(|(_, c)| c), "Witt basis");
            zs.push(WeightedVector {
                vec: v,
                n: -1,
                beta: zero_w.clone(),
            });
            stars.push(WeightedVector {
                vec: star_vecs[a].clone(),
                n: -1,
                beta: zero_w.clone(),
            });
        }
    }

    // verify the Witt relations
    for (i, zi) in zs.iter().enumerate() {
        for (j, zj) in zs.iter().enumerate() {
            let ok = pairing(&zi.vec, &zj.vec).is_zero()
                && pairing(&stars[i].vec, &stars[j].vec).is_zero()
                && pairing(&zi.vec, &stars[j].vec) == if i == j { int(1) } else { int(0) };
            if !ok {
                return Err(WalgError::invariant("basisbuilder", "Witt relations fail on g(-1)"));
            }
        }
    }
    Ok((zs, stars))
}

/// Basis of g(-2): weight vectors spanning ker χ, then f.
pub fn gminus2_basis(
    g: &LieAlgebraData,
    grading: &Grading,
    triple: &Sl2Triple,
    te: &[Vec<i64>],
    ledger: &mut DenominatorLedger,
) -> Vec<WeightedVector> {
    if triple.is_zero() {
        return grading
            .piece(-2)
            .iter()
            .map(|&i| WeightedVector {
                vec: vec![(i, Rational::one())],
                n: -2,
                beta: restricted_weight(g, te, i),
            })
            .collect();
    }
    let mut out = Vec::new();
    let mut anchor: Option<(usize, Rational)> = None;
    for &i in grading.piece(-2) {
        let v = vec![(i, Rational::one())];
        let c = chi(g, triple, &v);
        let beta = restricted_weight(g, te, i);
        if c.is_zero() {
            out.push(WeightedVector { vec: v, n: -2, beta });
            continue;
        }
        match &anchor {
            None => anchor = Some((i, c)),
            Some((a, ca)) => {
                let lambda = -(c / ca);
                ledger.add_rational(&lambda, "g(-2) basis");
                let mut vec = vec![(*a, lambda), (i, Rational::one())];
                vec.sort_by_key(|e| e.0);
                out.push(WeightedVector { vec, n: -2, beta });
            }
        }
    }
    out.sort_by_key(|w| w.vec.iter().map(|(i, _)| *i).max().unwrap_or(0));
    out.push(WeightedVector {
        vec: triple.f.clone(),
        n: -2,
        beta: vec![0; te.len()],
    });
    out
}

/// Minimal generating set of m: a complement of [m, m] chosen greedily in
/// index order. `basis_vectors` are Chevalley-coordinate vectors.
pub fn minimal_m_generators(
    g: &LieAlgebraData,
    basis_vectors: &[SparseVec],
    m_indices: &[usize],
) -> Vec<usize> {
    let dim = g.dim();
    let mut derived = SpanTracker::new(dim);
    for (a, &i) in m_indices.iter().enumerate() {
        for &j in &m_indices[a + 1..] {
            let br = g.bracket(&basis_vectors[i], &basis_vectors[j]);
            if !br.is_empty() {
                derived.insert(&dense_from_sparse(&br, dim));
            }
        }
    }
    let mut out = Vec::new();
    for &i in m_indices {
        if derived.insert(&dense_from_sparse(&basis_vectors[i], dim)) {
            out.push(i);
        }
    }
    out
}

/// K for the generator equations: the minimal set when it saves at least two
/// vectors, otherwise all of m. Closure is verified either way.
pub fn m_generating_set(
    g: &LieAlgebraData,
    basis_vectors: &[SparseVec],
    m_indices: &[usize],
) -> Result<Vec<usize>> {
    let minimal = minimal_m_generators(g, basis_vectors, m_indices);
    let k = if minimal.len() + 2 <= m_indices.len() {
        minimal
    } else {
        m_indices.to_vec()
    };
    let gens: Vec<SparseVec> = k.iter().map(|&i| basis_vectors[i].clone()).collect();
    if lie_closure(g, &gens).rank() != m_indices.len() {
        return Err(WalgError::invariant("basisbuilder", "K does not generate m"));
    }
    Ok(k)
}

/// Assembles the full graded basis.
pub fn build_graded_basis(
    g: &LieAlgebraData,
    grading: &Grading,
    triple: &Sl2Triple,
) -> Result<GradedBasis> {
    let dim = g.dim();
    let mut ledger = DenominatorLedger::new();
    for p in g.root_system.bad_primes() {
        ledger.add_prime(p, "bad prime");
    }
    if !triple.kappa_ef.is_zero() {
        ledger.add_integer(triple.kappa_ef.numer(), "kappa(e,f)");
        ledger.add_integer(triple.kappa_ef.denom(), "kappa(e,f)");
    }
    for (_, c) in &triple.f {
        ledger.add_rational(c, "sl2-triple");
    }

    let te = te_basis(g, triple)?;
    let (centralizer, e_pos) = centralizer_basis(g, grading, triple, &te, &mut ledger)?;
    let r = centralizer.len();
    let (centralizer, b, decomposition) = generating_prefix(g, &centralizer, e_pos);
    let e_index = if triple.is_zero() {
        0
    } else {
        centralizer
            .iter()
            .position(|w| w.vec == triple.e)
            .ok_or_else(|| WalgError::invariant("basisbuilder", "e missing from g^e basis"))?
    };

    let mut vectors: Vec<WeightedVector> = centralizer.clone();
    let mut segment = vec![Segment::Centralizer; r];

    // complete to p with Chevalley vectors
    let mut span = SpanTracker::new(dim);
    for w in &vectors {
        span.insert(&dense_from_sparse(&w.vec, dim));
    }
    let mut p_candidates: Vec<usize> = (0..dim).filter(|&i| grading.degree[i] >= 0).collect();
    p_candidates.sort_by_key(|&i| (Reverse(grading.degree[i]), g.is_cartan(i), i));
    for i in p_candidates {
        let v = vec![(i, Rational::one())];
        if span.insert(&dense_from_sparse(&v, dim)) {
            vectors.push(WeightedVector {
                vec: v,
                n: grading.degree[i],
                beta: restricted_weight(g, &te, i),
            });
            segment.push(Segment::Parabolic);
        }
    }
    let m = vectors.len();
    let p_dim: usize = grading.pieces.range(0..).map(|(_, v)| v.len()).sum();
    if m != p_dim {
        return Err(WalgError::invariant("basisbuilder", "failed to complete a basis of p"));
    }

    let (zs, stars) = witt_basis_gminus1(g, grading, triple, &te, &mut ledger)?;
    let s = zs.len();
    segment.extend(std::iter::repeat_n(Segment::WittZ, s));
    segment.extend(std::iter::repeat_n(Segment::WittZStar, s));
    vectors.extend(zs);
    vectors.extend(stars);

    let minus2 = gminus2_basis(g, grading, triple, &te, &mut ledger);
    let s_prime = minus2.len();
    for k in 0..s_prime {
        segment.push(if !triple.is_zero() && k + 1 == s_prime {
            Segment::F
        } else {
            Segment::KerChi
        });
    }
    vectors.extend(minus2);

    let mut low: Vec<usize> = (0..dim).filter(|&i| grading.degree[i] <= -3).collect();
    low.sort_by_key(|&i| (Reverse(grading.degree[i]), i));
    for i in low {
        vectors.push(WeightedVector {
            vec: vec![(i, Rational::one())],
            n: grading.degree[i],
            beta: restricted_weight(g, &te, i),
        });
        segment.push(Segment::Low);
    }
    if vectors.len() != dim {
        return Err(WalgError::invariant(
            "basisbuilder",
            format!("assembled {} vectors for dim {dim}", vectors.len()),
        ));
    }

    // transition matrix and structure constants in the x-basis
    let t: Matrix = vectors.iter().map(|w| dense_from_sparse(&w.vec, dim)).collect();
    let tinv = inverse(&t).ok_or_else(|| WalgError::invariant("basisbuilder", "basis is singular"))?;
    for row in t.iter().chain(tinv.iter()) {
        ledger.add_all(row.iter(), "basis transition");
    }
    let to_x = |v: &SparseVec| -> SparseVec {
        let mut acc = vec![Rational::zero(); dim];
        for (k, c) in v {
            for (j, x) in tinv[*k].iter().enumerate() {
                if !x.is_zero() {
                    acc[j] += c * x;
                }
            }
        }
        sparse_from_dense(&acc)
    };
    let raw: Vec<SparseVec> = vectors.iter().map(|w| w.vec.clone()).collect();
    let mut structure = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if j < i {
                structure[i][j] = structure[j][i].iter().map(|(k, c)| (*k, -c)).collect();
                continue;
            }
            let br = g.bracket(&raw[i], &raw[j]);
            structure[i][j] = to_x(&br);
        }
    }
    let chi_values: Vec<Rational> = raw.iter().map(|v| chi(g, triple, v)).collect();

    let m_indices: Vec<usize> = (m + s..dim).collect();
    let minimal_m = minimal_m_generators(g, &raw, &m_indices).len();
    let m_generators = m_generating_set(g, &raw, &m_indices)?;
    let minimal_prefix = minimal_generating_prefix(g, &raw[..r]);

    let gb = GradedBasis {
        n: vectors.iter().map(|w| w.n).collect(),
        beta: vectors.iter().map(|w| w.beta.clone()).collect(),
        vectors: raw,
        segment,
        r,
        b,
        m,
        s,
        s_prime,
        e_index,
        te_basis: te,
        m_generators,
        minimal_prefix,
        minimal_m_generators: minimal_m,
        bracket_decomposition: decomposition,
        chi_values,
        structure,
        ledger,
    };
    verify_graded_basis(g, triple, &gb)?;
    Ok(gb)
}

/// Checks the segment invariants of an assembled basis.
pub fn verify_graded_basis(g: &LieAlgebraData, triple: &Sl2Triple, gb: &GradedBasis) -> Result<()> {
    let fail = |msg: String| Err(WalgError::invariant("basisbuilder", msg));
    let dim = g.dim();
    for i in 0..dim {
        // h-eigenvector with eigenvalue n_i
        let hx = g.bracket(&triple.h, &gb.vectors[i]);
        let expect: SparseVec = gb.vectors[i]
            .iter()
            .map(|(k, c)| (*k, c * int(gb.n[i])))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if !triple.is_zero() && hx != expect {
            return fail(format!("x{} is not an ad h eigenvector", i + 1));
        }
        // t^e weight vector
        for (t_idx, t) in gb.te_basis.iter().enumerate() {
            let tv: SparseVec = t
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(j, c)| (g.cartan_offset() + j, int(*c)))
                .collect();
            let tx = g.bracket(&tv, &gb.vectors[i]);
            let expect: SparseVec = gb.vectors[i]
                .iter()
                .map(|(k, c)| (*k, c * int(gb.beta[i][t_idx])))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if tx != expect {
                return fail(format!("x{} is not a t^e weight vector", i + 1));
            }
        }
    }
    // x_1..x_r span g^e
    for i in 0..gb.r {
        if !g.bracket(&triple.e, &gb.vectors[i]).is_empty() {
            return fail(format!("x{} does not commute with e", i + 1));
        }
    }
    if !triple.is_zero() && gb.vectors[gb.e_index] != triple.e {
        return fail("x_{e_index} is not e".into());
    }
    // χ on g(-2): kernel vectors then f
    let start = gb.m + 2 * gb.s;
    for k in 0..gb.s_prime {
        let c = &gb.chi_values[start + k];
        let last = k + 1 == gb.s_prime && !triple.is_zero();
        if (last && c != &int(1)) || (!last && !c.is_zero()) {
            return fail("g(-2) basis does not split χ".into());
        }
    }
    // χ vanishes on [m, m]
    for i in gb.m + gb.s..dim {
        for j in gb.m + gb.s..dim {
            let br = g.bracket(&gb.vectors[i], &gb.vectors[j]);
            if !chi(g, triple, &br).is_zero() {
                return fail("χ is not a character of m".into());
            }
            for (k, _) in &gb.structure[i][j] {
                if *k < gb.m + gb.s {
                    return fail("m is not a subalgebra".into());
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{simple_lie_algebra, LieType};
    use crate::sl2grading::{grading_from_labels, sl2_triple, DynkinLabels};

    fn build(t: LieType, l: usize, labels: &str) -> (LieAlgebraData, GradedBasis) {
        let g = simple_lie_algebra(t, l).unwrap();
        let labels: DynkinLabels = labels.parse().unwrap();
        let gr = grading_from_labels(&g, &labels).unwrap();
        let tr = sl2_triple(&g, &gr, &labels).unwrap();
        let gb = build_graded_basis(&g, &gr, &tr).unwrap();
        (g, gb)
    }

    #[test]
    fn g2_short_root_segments() {
        let (_, gb) = build(LieType::G, 2, "1,0");
        assert_eq!((gb.r, gb.b, gb.m, gb.s, gb.s_prime), (6, 6, 9, 1, 1));
        assert_eq!(gb.n, vec![3, 3, 2, 0, 0, 0, 1, 1, 0, -1, -1, -2, -3, -3]);
        let beta: Vec<i64> = gb.beta.iter().map(|b| b[0]).collect();
        assert_eq!(beta, vec![1, -1, 0, 2, -2, 0, -1, 1, 0, -1, 1, 0, 1, -1]);
        assert_eq!(gb.e_index, 2);
        assert_eq!(gb.m_generators, vec![10, 11, 12, 13]);
        assert_eq!(gb.minimal_m_generators, 3);
        let names: Vec<String> = (0..14).map(|i| gb.describe(i)).collect();
        assert_eq!(
            names,
            vec!["b6", "b5", "b4", "b2", "b8", "b14", "b1", "b3", "b13", "b9", "1/2*b7", "b10", "b11", "b12"]
                .into_iter()
                .map(String::from)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn zero_orbit_is_all_of_g() {
        let (g, gb) = build(LieType::A, 1, "0");
        assert_eq!(gb.r, g.dim());
        assert_eq!(gb.m, g.dim());
        assert_eq!((gb.s, gb.s_prime), (0, 0));
        assert_eq!(gb.te_dim(), 1);
        assert!(gb.m_generators.is_empty());
        // minimal prefix: two of e, h, f generate sl2
        assert_eq!(gb.minimal_prefix, 2);
        assert_eq!(gb.b, 2);
    }

    #[test]
    fn sl2_principal_centralizer() {
        let (_, gb) = build(LieType::A, 1, "2");
        assert_eq!((gb.r, gb.b), (1, 1));
        assert_eq!(gb.te_dim(), 0);
        assert!(gb.beta.iter().all(|b| b.is_empty()));
    }

    #[test]
    fn f4_minimal_orbit_dimensions() {
        let (_, gb) = build(LieType::F, 4, "1,0,0,0");
        assert_eq!(gb.r, 36);
        assert!(gb.b <= gb.r);
        assert_eq!(gb.m + 2 * gb.s + gb.s_prime + (52 - gb.m - 2 * gb.s - gb.s_prime), 52);
    }
}
