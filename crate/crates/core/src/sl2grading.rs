//! Dynkin grading, the sl2-triple `(e, h, f)` and the character χ attached to
//! a weighted Dynkin diagram.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arith::{int, Rational};
use crate::error::{Result, WalgError};
use crate::linalg::{rank, solve, Matrix};
use crate::rootsystem::{axpy, LieAlgebraData, SparseVec};

/// Labels `d_α ∈ {0,1,2}`, one per simple root in Bourbaki order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinLabels(Vec<i64>);

impl DynkinLabels {
    pub fn new(labels: Vec<i64>) -> Result<Self> {
        if let Some(bad) = labels.iter().find(|d| !(0..=2).contains(*d)) {
            return Err(WalgError::InvalidLabels(format!(
                "label {bad} is outside {{0,1,2}}"
            )));
        }
        Ok(DynkinLabels(labels))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// Whether only even labels occur (then g(-1) = 0).
    pub fn is_even(&self) -> bool {
        self.0.iter().all(|&d| d % 2 == 0)
    }
}

impl FromStr for DynkinLabels {
    type Err = WalgError;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| WalgError::InvalidLabels(format!("cannot parse label {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DynkinLabels::new(labels)
    }
}

impl fmt::Display for DynkinLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct Grading {
    /// Degree of each Chevalley basis element.
    pub degree: Vec<i64>,
    /// Basis indices spanning g(j).
    pub pieces: BTreeMap<i64, Vec<usize>>,
}

impl Grading {
    pub fn piece(&self, j: i64) -> &[usize] {
        self.pieces.get(&j).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, j: i64) -> usize {
        self.piece(j).len()
    }

    /// Largest j with g(j) ≠ 0.
    pub fn height(&self) -> i64 {
        self.pieces.keys().copied().max().unwrap_or(0)
    }
}

pub fn grading_from_labels(g: &LieAlgebraData, labels: &DynkinLabels) -> Result<Grading> {
    let l = g.rank();
    if labels.as_slice().len() != l {
        return Err(WalgError::InvalidLabels(format!(
            "expected {l} labels for {}, got {}",
            g.root_system.label(),
            labels.as_slice().len()
        )));
    }
    let degree: Vec<i64> = (0..g.dim())
        .map(|i| {
            g.weight_of(i)
                .iter()
                .zip(labels.as_slice())
                .map(|(a, d)| a * d)
                .sum()
        })
        .collect();
    let mut pieces: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &d) in degree.iter().enumerate() {
        pieces.entry(d).or_default().push(i);
    }
    Ok(Grading { degree, pieces })
}

#[derive(Debug, Clone)]
pub struct Sl2Triple {
    pub e: SparseVec,
    pub h: SparseVec,
    pub f: SparseVec,
    /// Root-vector basis indices making up e.
    pub gamma: Vec<usize>,
    /// κ(e, f); zero for the zero orbit.
    pub kappa_ef: Rational,
    /// Coefficients λ_α of h in the simple coroots.
    pub h_coefficients: Vec<Rational>,
}

impl Sl2Triple {
    pub fn is_zero(&self) -> bool {
        self.e.is_empty()
    }

    /// 1/κ(e,f), the rescaling making (e,f) = 1.
    pub fn form_scale(&self) -> Option<Rational> {
        if self.kappa_ef.is_zero() {
            None
        } else {
            Some(self.kappa_ef.recip())
        }
    }
}

/// Solves `Σ λ_α β(h_α) = d_β`; rejects non-integral or negative solutions.
pub fn find_h(g: &LieAlgebraData, labels: &DynkinLabels) -> Result<(SparseVec, Vec<Rational>)> {
    let l = g.rank();
    let cartan = &g.root_system.cartan;
    if labels.as_slice().len() != l {
        return Err(WalgError::InvalidLabels(format!("expected {l} labels")));
    }
    // row β, column α: β(h_α) = <β, α^∨>
    let m: Matrix = (0..l)
        .map(|b| (0..l).map(|a| int(cartan[b][a])).collect())
        .collect();
    let rhs: Vec<Rational> = labels.as_slice().iter().map(|&d| int(d)).collect();
    let (lambda, free) = solve(&m, &rhs)
        .ok_or_else(|| WalgError::invariant("sl2grading", "Cartan matrix is singular"))?;
    debug_assert_eq!(free, 0);
    if let Some(bad) = lambda.iter().find(|x| !x.is_integer() || x.is_negative()) {
        return Err(WalgError::InvalidLabels(format!(
            "h has coefficient {bad}, not a nonnegative integer"
        )));
    }
    let h0 = g.cartan_offset();
    let h: SparseVec = lambda
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (h0 + i, x.clone()))
        .collect();
    Ok((h, lambda))
}

/// Solves `[e, f] = h` for `f ∈ g(-2)`. Returns `None` if the system is
/// inconsistent; errors if the solution is not unique.
pub fn find_f(
    g: &LieAlgebraData,
    grading: &Grading,
    e: &SparseVec,
    h: &SparseVec,
) -> Result<Option<SparseVec>> {
    if e.is_empty() {
        return Ok(if h.is_empty() { Some(SparseVec::new()) } else { None });
    }
    let minus2 = grading.piece(-2);
    let zero = grading.piece(0);
    let row_of: BTreeMap<usize, usize> = zero.iter().enumerate().map(|(r, &i)| (i, r)).collect();
    let mut m: Matrix = vec![vec![Rational::zero(); minus2.len()]; zero.len()];
    for (col, &j) in minus2.iter().enumerate() {
        let br = g.bracket(e, &vec![(j, Rational::one())]);
        for (k, v) in br {
            let Some(&r) = row_of.get(&k) else {
                return Err(WalgError::invariant("sl2grading", "[e, g(-2)] left g(0)"));
            };
            m[r][col] = v;
        }
    }
    let mut rhs = vec![Rational::zero(); zero.len()];
    for (k, v) in h {
        let Some(&r) = row_of.get(k) else {
            return Err(WalgError::invariant("sl2grading", "h is not in g(0)"));
        };
        rhs[r] = v.clone();
    }
    let Some((mu, free)) = solve(&m, &rhs) else {
        return Ok(None);
    };
    if free != 0 {
        return Err(WalgError::invariant(
            "sl2grading",
            format!("f is not unique ({free}-dimensional solution space)"),
        ));
    }
    Ok(Some(
        minus2
            .iter()
            .zip(mu)
            .filter(|(_, x)| !x.is_zero())
            .map(|(&j, x)| (j, x))
            .collect(),
    ))
}

/// Deterministic search for `e = Σ_{α∈Γ} e_α`: subsets of Φ(2) in the fixed
/// root order, smallest cardinality first, lexicographic within a size.
pub fn find_e(
    g: &LieAlgebraData,
    grading: &Grading,
    h: &SparseVec,
) -> Result<(SparseVec, Vec<usize>, SparseVec)> {
    if h.is_empty() {
        return Ok((SparseVec::new(), Vec::new(), SparseVec::new()));
    }
    let phi2: Vec<usize> = grading
        .piece(2)
        .iter()
        .copied()
        .filter(|&i| !g.is_cartan(i))
        .collect();
    let max_size = g.rank().min(phi2.len());
    for size in 1..=max_size {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let gamma: Vec<usize> = combo.iter().map(|&c| phi2[c]).collect();
            let roots: Matrix = gamma
                .iter()
                .map(|&i| g.root_of(i).unwrap().into_iter().map(int).collect())
                .collect();
            if rank(&roots) == size {
                let e: SparseVec = gamma.iter().map(|&i| (i, Rational::one())).collect();
                if let Some(f) = find_f(g, grading, &e, h)? {
                    return Ok((e, gamma, f));
                }
            }
            if !next_combination(&mut combo, phi2.len()) {
                break;
            }
        }
    }
    Err(WalgError::InvalidLabels(
        "no sl2-triple exists for these labels (not a weighted Dynkin diagram)".into(),
    ))
}

/// Advances `combo` to the next k-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for t in i + 1..k {
                combo[t] = combo[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Full construction: h, then (e, Γ, f), with the triple relations verified.
pub fn sl2_triple(g: &LieAlgebraData, grading: &Grading, labels: &DynkinLabels) -> Result<Sl2Triple> {
    let (h, h_coefficients) = find_h(g, labels)?;
    let (e, gamma, f) = find_e(g, grading, &h)?;
    let triple = Sl2Triple {
        kappa_ef: g.killing(&e, &f),
        e,
        h,
        f,
        gamma,
        h_coefficients,
    };
    check_triple(g, &triple)?;
    Ok(triple)
}

pub fn check_triple(g: &LieAlgebraData, t: &Sl2Triple) -> Result<()> {
    let scaled = |v: &SparseVec, s: i64| -> SparseVec {
        v.iter().map(|(i, x)| (*i, x * int(s))).collect()
    };
    let mut he = g.bracket(&t.h, &t.e);
    axpy(&mut he, &int(-1), &scaled(&t.e, 2));
    let mut hf = g.bracket(&t.h, &t.f);
    axpy(&mut hf, &int(1), &scaled(&t.f, 2));
    let mut ef = g.bracket(&t.e, &t.f);
    axpy(&mut ef, &int(-1), &t.h);
    if he.is_empty() && hf.is_empty() && ef.is_empty() {
        Ok(())
    } else {
        Err(WalgError::invariant("sl2grading", "sl2 relations fail"))
    }
}

/// χ(x) = κ(x, e)/κ(e, f); identically zero for the zero orbit.
pub fn chi(g: &LieAlgebraData, t: &Sl2Triple, x: &SparseVec) -> Rational {
    match t.form_scale() {
        Some(s) => g.killing(x, &t.e) * s,
        None => Rational::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::{simple_lie_algebra, LieType};

    fn g2() -> LieAlgebraData {
        simple_lie_algebra(LieType::G, 2).unwrap()
    }

    #[test]
    fn labels_parse_and_validate() {
        let l: DynkinLabels = "1,0".parse().unwrap();
        assert_eq!(l.as_slice(), &[1, 0]);
        assert!("1,3".parse::<DynkinLabels>().is_err());
        assert!("a".parse::<DynkinLabels>().is_err());
    }

    #[test]
    fn zero_grading() {
        let g = g2();
        let gr = grading_from_labels(&g, &"0,0".parse().unwrap()).unwrap();
        assert_eq!(gr.dim(0), 14);
        let (h, _) = find_h(&g, &"0,0".parse().unwrap()).unwrap();
        assert!(h.is_empty());
        let (e, gamma, f) = find_e(&g, &gr, &h).unwrap();
        assert!(e.is_empty() && gamma.is_empty() && f.is_empty());
    }

    #[test]
    fn sl2_principal() {
        let g = simple_lie_algebra(LieType::A, 1).unwrap();
        let labels: DynkinLabels = "2".parse().unwrap();
        let gr = grading_from_labels(&g, &labels).unwrap();
        assert_eq!(gr.piece(2), &[0]);
        assert_eq!(gr.piece(0), &[2]);
        assert_eq!(gr.piece(-2), &[1]);
        let t = sl2_triple(&g, &gr, &labels).unwrap();
        assert_eq!(t.h, vec![(2, int(1))]);
        assert_eq!(t.e, vec![(0, int(1))]);
        assert_eq!(t.f, vec![(1, int(1))]);
        assert_eq!(t.kappa_ef, int(4));
    }

    #[test]
    fn g2_short_root_orbit() {
        let g = g2();
        let labels: DynkinLabels = "1,0".parse().unwrap();
        let gr = grading_from_labels(&g, &labels).unwrap();
        assert_eq!(gr.dim(-1), 2);
        assert_eq!(gr.dim(-2), 1);
        assert_eq!(gr.dim(-3), 2);
        let t = sl2_triple(&g, &gr, &labels).unwrap();
        // h = 2 h_1 + 3 h_2, e = e_{2α1+α2}, f = e_{-(2α1+α2)}
        assert_eq!(t.h_coefficients, vec![int(2), int(3)]);
        assert_eq!(t.e, vec![(3, int(1))]);
        assert_eq!(t.f, vec![(9, int(1))]);
        assert_eq!(t.kappa_ef, int(24));
        assert_eq!(chi(&g, &t, &t.f), int(1));
        for j in [-3, -1, 0, 1, 2, 3] {
            for &i in gr.piece(j) {
                assert!(chi(&g, &t, &vec![(i, int(1))]).is_zero());
            }
        }
    }

    #[test]
    fn grading_is_bracket_compatible() {
        let g = simple_lie_algebra(LieType::F, 4).unwrap();
        let gr = grading_from_labels(&g, &"0,1,0,1".parse().unwrap()).unwrap();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                for (k, _) in g.bracket_basis(i, j) {
                    assert_eq!(gr.degree[*k], gr.degree[i] + gr.degree[j]);
                }
            }
        }
        let total: usize = gr.pieces.values().map(|v| v.len()).sum();
        assert_eq!(total, 52);
    }

    #[test]
    fn rejects_fake_diagram() {
        let g = g2();
        // (2,2) is the regular orbit; (1,1) is not a weighted diagram of G2
        let labels: DynkinLabels = "1,1".parse().unwrap();
        let gr = grading_from_labels(&g, &labels).unwrap();
        assert!(sl2_triple(&g, &gr, &labels).is_err());
        let labels: DynkinLabels = "2,2".parse().unwrap();
        let gr = grading_from_labels(&g, &labels).unwrap();
        assert!(sl2_triple(&g, &gr, &labels).is_ok());
    }
}
