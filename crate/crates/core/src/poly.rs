//! Commutative polynomials over ℚ: lexicographic Gröbner bases and exact
//! univariate factorization, sized for the small systems of the
//! 1-dimensional representation solver.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{common_denominator, factorize, fmt_rational, Rational};
use crate::linalg::Matrix;

pub type Exp = Vec<u32>;

/// Multivariate polynomial; variable 0 is the largest in lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Exp, Rational>,
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exp(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn add_term(&mut self, e: Exp, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn lead(&self) -> Option<(&Exp, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        for (e, x) in &other.terms {
            self.add_term(e.clone(), x * c);
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(other, &-Rational::one());
        p
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y);
            }
        }
        out
    }

    pub fn mul_monomial(&self, e: &Exp, c: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            out.terms.insert(a.iter().zip(e).map(|(p, q)| p + q).collect(), x * c);
        }
        out
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                let mut out = Poly::zero(self.nvars);
                for (e, x) in &self.terms {
                    out.terms.insert(e.clone(), x * &inv);
                }
                out
            }
        }
    }

    /// Substitutes `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] = 0;
            out.add_term(e2, c * pow(value, k));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(point).fold(c.clone(), |acc, (k, v)| acc * pow(v, *k)))
            .sum()
    }

    /// Variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    /// The polynomial as a univariate one in `var`, if no other variable occurs.
    pub fn as_univariate(&self, var: usize) -> Option<UPoly> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return None;
            }
            let d = e[var] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names }
    }
}

pub fn pow(v: &Rational, k: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..k {
        r *= v;
    }
    r
}

pub struct PolyDisplay<'a> {
    p: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.p.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| {
                    if *k == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{k}", self.names[i])
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Resource bounds for Buchberger's algorithm.
#[derive(Debug, Clone, Copy)]
pub struct GbLimits {
    pub max_degree: u32,
    pub max_basis: usize,
    pub max_terms: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits {
            max_degree: 64,
            max_basis: 2000,
            max_terms: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbExceeded(pub String);

/// Full reduction of `p` by `basis`.
pub fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    let mut rem = Poly::zero(p.nvars);
    let mut cur = p.clone();
    while let Some((e, c)) = cur.lead().map(|(e, c)| (e.clone(), c.clone())) {
        let divisor = basis
            .iter()
            .find(|g| g.lead().is_some_and(|(ge, _)| divides(ge, &e)));
        match divisor {
            Some(g) => {
                let (ge, gc) = g.lead().unwrap();
                let q = sub_exp(&e, ge);
                cur.add_scaled(&g.mul_monomial(&q, &Rational::one()), &-(&c / gc));
            }
            None => {
                cur.terms.remove(&e);
                rem.add_term(e, c);
            }
        }
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fe, fc) = f.lead().unwrap();
    let (ge, gc) = g.lead().unwrap();
    let l = lcm_exp(fe, ge);
    let a = f.mul_monomial(&sub_exp(&l, fe), &fc.recip());
    let b = g.mul_monomial(&sub_exp(&l, ge), &gc.recip());
    a.sub(&b)
}

/// Reduced lexicographic Gröbner basis, monic and sorted by leading monomial.
pub fn groebner(polys: &[Poly], limits: &GbLimits) -> Result<Vec<Poly>, GbExceeded> {
    let mut basis: Vec<Poly> = Vec::new();
    for p in polys {
        let r = reduce(p, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (fi, fj) = (&basis[i], &basis[j]);
        let (ei, ej) = (fi.lead().unwrap().0, fj.lead().unwrap().0);
        // coprime leading monomials reduce to zero
        if ei.iter().zip(ej).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let r = reduce(&s_poly(fi, fj), &basis);
        if r.is_zero() {
            continue;
        }
        if r.total_degree() > limits.max_degree {
            return Err(GbExceeded(format!("degree {} exceeds bound {}", r.total_degree(), limits.max_degree)));
        }
        if r.terms.len() > limits.max_terms {
            return Err(GbExceeded(format!("{} terms exceed bound {}", r.terms.len(), limits.max_terms)));
        }
        basis.push(r.monic());
        if basis.len() > limits.max_basis {
            return Err(GbExceeded(format!("basis size exceeds {}", limits.max_basis)));
        }
        let k = basis.len() - 1;
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    // interreduce
    basis.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
    let mut minimal: Vec<Poly> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let e = p.lead().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, q)| {
            let qe = q.lead().unwrap().0;
            j != k && divides(qe, e) && (qe != e || j < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, q)| q.clone())
            .collect();
        let (e, c) = minimal[k].lead().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut tail = minimal[k].clone();
        tail.terms.remove(&e);
        let mut r = reduce(&tail, &others);
        r.add_term(e, c);
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
    Ok(reduced)
}

/// True when the basis is {1}.
pub fn is_unit_ideal(gb: &[Poly]) -> bool {
    gb.iter().any(|p| !p.is_zero() && p.is_constant())
}

/// Standard monomials of a zero-dimensional ideal, `None` if the ideal is
/// not zero-dimensional.
pub fn standard_monomials(gb: &[Poly], nvars: usize) -> Option<Vec<Exp>> {
    if is_unit_ideal(gb) {
        return Some(Vec::new());
    }
    let leads: Vec<&Exp> = gb.iter().filter_map(|p| p.lead().map(|(e, _)| e)).collect();
    let mut bounds = vec![0u32; nvars];
    for (v, bound) in bounds.iter_mut().enumerate() {
        *bound = leads
            .iter()
            .filter(|e| e.iter().enumerate().all(|(i, &k)| (i == v) == (k > 0)))
            .map(|e| e[v])
            .min()?;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    loop {
        if !leads.iter().any(|l| divides(l, &cur)) {
            out.push(cur.clone());
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == nvars {
                return Some(out);
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Matrix of multiplication by variable `var` on ℚ[x]/I in the basis of
/// standard monomials (column k = normal form of var * std[k]).
pub fn multiplication_matrix(gb: &[Poly], std: &[Exp], var: usize) -> Matrix {
    let n = std.len();
    let pos: BTreeMap<&Exp, usize> = std.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (k, e) in std.iter().enumerate() {
        let mut e2 = e.clone();
        e2[var] += 1;
        let mut p = Poly::zero(e.len());
        p.add_term(e2, Rational::one());
        let nf = reduce(&p, gb);
        for (t, c) in &nf.terms {
            m[pos[t]][k] = c.clone();
        }
    }
    m
}

/// Characteristic polynomial det(tI − M) by the Faddeev–LeVerrier recursion.
pub fn charpoly(m: &Matrix) -> UPoly {
    let n = m.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let ident = |k: usize| -> Matrix {
        (0..k)
            .map(|i| (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    };
    let matmul = |a: &Matrix, b: &Matrix| -> Matrix {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut mk = ident(n);
    for k in 1..=n {
        let am = matmul(m, &mk);
        let tr: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        let c = -tr / Rational::from_integer(BigInt::from(k));
        coeffs[n - k] = c.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    UPoly::new(coeffs)
}

/// Univariate polynomial, coefficients from degree 0 upwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        UPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::new(Vec::new());
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        if r.len() <= dd {
            return (UPoly::new(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        let inv = d.lead().recip();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> UPoly {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Integer polynomial with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> Vec<BigInt> {
        let den = common_denominator(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if ints.last().is_some_and(|x| x.is_negative()) { -1 } else { 1 };
        ints.iter().map(|x| x / &g * sign).collect()
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        if self.degree() <= 0 {
            return out;
        }
        let mut p = self.squarefree();
        if p.coeffs[0].is_zero() {
            out.push(Rational::zero());
            p = p.div_rem(&UPoly::from_ints(&[0, 1])).0;
        }
        if p.degree() >= 1 {
            let ints = p.primitive();
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let nums = divisors(&a0);
            let dens = divisors(&an);
            for n in &nums {
                for d in &dens {
                    for s in [1, -1] {
                        let q = Rational::new(n * s, d.clone());
                        if q.denom() == d && p.eval(&q).is_zero() && !out.contains(&q) {
                            out.push(q);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Irreducible factorization of the squarefree part into monic factors.
    /// Returns the factors and whether factoring completed within `max_tries`.
    pub fn factor_squarefree(&self, max_tries: u64) -> (Vec<UPoly>, bool) {
        let mut factors = Vec::new();
        let mut rest = self.squarefree();
        for r in self.rational_roots() {
            let lin = UPoly::new(vec![-r, Rational::one()]);
            rest = rest.div_rem(&lin).0;
            factors.push(lin);
        }
        let mut complete = true;
        let mut stack = vec![rest];
        while let Some(p) = stack.pop() {
            if p.degree() <= 0 {
                continue;
            }
            match kronecker_split(&p, max_tries) {
                KroneckerOutcome::Irreducible => factors.push(p.monic()),
                KroneckerOutcome::Split(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                KroneckerOutcome::GaveUp => {
                    complete = false;
                    factors.push(p.monic());
                }
            }
        }
        factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs.cmp(&b.coeffs)));
        (factors, complete)
    }

    pub fn display(&self, var: &str) -> String {
        let mut p = Poly::zero(1);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(vec![i as u32], c.clone());
        }
        p.display(&[var.to_string()]).to_string()
    }
}

/// Positive divisors of |n| (n ≠ 0); {1} for n = 0.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = vec![BigInt::one()];
    for (p, k) in factorize(n) {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=k {
                next.push(d * &pk);
                pk *= BigInt::from(p);
            }
        }
        out = next;
    }
    out.sort();
    out
}

enum KroneckerOutcome {
    Irreducible,
    Split(UPoly, UPoly),
    GaveUp,
}

/// Searches for a factor of degree 2 ..= deg/2 by Kronecker's method.
fn kronecker_split(p: &UPoly, max_tries: u64) -> KroneckerOutcome {
    let n = p.degree();
    if n <= 1 {
        return KroneckerOutcome::Irreducible;
    }
    let ints = p.primitive();
    let pi = UPoly::new(ints.iter().map(|x| Rational::from_integer(x.clone())).collect());
    let mut tries: u64 = 0;
    for d in 1..=(n / 2) {
        // d + 1 integer points where p does not vanish (p has no rational roots here)
        let points: Vec<i64> = (0..=d).map(|k| if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }).collect();
        let values: Vec<BigInt> = points
            .iter()
            .map(|&x| pi.eval(&Rational::from_integer(x.into())).to_integer())
            .collect();
        if values.iter().any(|v| v.is_zero()) {
            return KroneckerOutcome::GaveUp;
        }
        let divs: Vec<Vec<BigInt>> = values.iter().map(divisors).collect();
        let total: f64 = divs.iter().map(|v| (2 * v.len()) as f64).product();
        if total > max_tries as f64 {
            return KroneckerOutcome::GaveUp;
        }
        let mut idx = vec![0usize; divs.len()];
        loop {
            tries += 1;
            if tries > max_tries {
                return KroneckerOutcome::GaveUp;
            }
            // candidate values: the first point's divisor stays positive (sign normalization)
            let vals: Vec<Rational> = idx
                .iter()
                .enumerate()
                .map(|(k, &ix)| {
                    let dv = &divs[k][ix / 2];
                    let v = if ix % 2 == 0 { dv.clone() } else { -dv.clone() };
                    Rational::from_integer(v)
                })
                .collect();
            if let Some(q) = interpolate(&points, &vals) {
                if q.degree() == d && q.coeffs.iter().all(|c| c.is_integer()) {
                    let (quot, rem) = pi.div_rem(&q);
                    if rem.is_zero() {
                        return KroneckerOutcome::Split(q.monic(), quot.monic());
                    }
                }
            }
            // advance odometer; index 0 only over positive signs
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += if k == 0 { 2 } else { 1 };
                let lim = 2 * divs[k].len();
                if idx[k] < lim {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    KroneckerOutcome::Irreducible
}

/// Lagrange interpolation through (x_k, y_k).
fn interpolate(xs: &[i64], ys: &[Rational]) -> Option<UPoly> {
    let mut acc = UPoly::new(Vec::new());
    for (k, (&xk, yk)) in xs.iter().zip(ys).enumerate() {
        let mut basis = UPoly::from_ints(&[1]);
        let mut den = Rational::one();
        for (j, &xj) in xs.iter().enumerate() {
            if j != k {
                basis = basis.mul(&UPoly::from_ints(&[-xj, 1]));
                den *= Rational::from_integer((xk - xj).into());
            }
        }
        if den.is_zero() {
            return None;
        }
        let scale = yk / den;
        let term = UPoly::new(basis.coeffs.iter().map(|c| c * &scale).collect());
        let len = acc.coeffs.len().max(term.coeffs.len());
        let mut sum = vec![Rational::zero(); len];
        for (i, c) in acc.coeffs.iter().enumerate() {
            sum[i] += c;
        }
        for (i, c) in term.coeffs.iter().enumerate() {
            sum[i] += c;
        }
        acc = UPoly::new(sum);
    }
    Some(acc)
}

/// Number of real roots of a squarefree polynomial in (a, b] via Sturm's theorem.
pub fn sturm_count(p: &UPoly, a: &Rational, b: &Rational) -> usize {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(UPoly::new(r.coeffs.iter().map(|c| -c).collect()));
    }
    let changes = |x: &Rational| -> usize {
        let signs: Vec<i8> = seq
            .iter()
            .map(|q| {
                let v = q.eval(x);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .filter(|s| *s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(a).saturating_sub(changes(b))
}

/// Disjoint rational intervals (a, b], each holding exactly one real root.
pub fn isolate_real_roots(p: &UPoly) -> Vec<(Rational, Rational)> {
    let p = p.squarefree();
    if p.degree() <= 0 {
        return Vec::new();
    }
    // Cauchy bound
    let lead = p.lead().abs();
    let bound = Rational::one()
        + p.coeffs[..p.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match sturm_count(&p, &a, &b) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = (&a + &b) / Rational::from_integer(2.into());
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    out.sort();
    out
}

/// Approximate value, for display only.
pub fn to_f64(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    #[test]
    fn univariate_roots_and_factors() {
        // 2t^2 + 39t + 189 = (t + 9)(2t + 21)
        let p = UPoly::from_ints(&[189, 39, 2]);
        assert_eq!(p.rational_roots(), vec![frac(-21, 2), int(-9)]);
        // (t^2 - 2)(t^2 + 1)(t - 3)
        let q = UPoly::from_ints(&[-2, 0, 1])
            .mul(&UPoly::from_ints(&[1, 0, 1]))
            .mul(&UPoly::from_ints(&[-3, 1]));
        let (f, complete) = q.factor_squarefree(1_000_000);
        assert!(complete);
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], UPoly::from_ints(&[-3, 1]));
        assert_eq!(isolate_real_roots(&q).len(), 3);
    }

    #[test]
    fn squarefree_removes_repeats() {
        let p = UPoly::from_ints(&[1, -1]).mul(&UPoly::from_ints(&[1, -1])).mul(&UPoly::from_ints(&[2, 1]));
        assert_eq!(p.squarefree().degree(), 2);
    }

    #[test]
    fn groebner_of_two_points() {
        // x - y = 0, y^2 - 1 = 0 → two points
        let n = 2;
        let x = Poly::var(n, 0);
        let y = Poly::var(n, 1);
        let f1 = x.sub(&y);
        let f2 = y.mul(&y).sub(&Poly::constant(n, int(1)));
        let gb = groebner(&[f1, f2], &GbLimits::default()).unwrap();
        let std = standard_monomials(&gb, n).unwrap();
        assert_eq!(std.len(), 2);
        let m = multiplication_matrix(&gb, &std, 1);
        assert_eq!(charpoly(&m), UPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn inconsistent_system_is_unit() {
        let n = 1;
        let x = Poly::var(n, 0);
        let gb = groebner(&[x.clone(), x.sub(&Poly::constant(n, int(1)))], &GbLimits::default()).unwrap();
        assert!(is_unit_ideal(&gb));
        assert_eq!(standard_monomials(&gb, n).unwrap().len(), 0);
    }

    #[test]
    fn positive_dimensional_detected() {
        let n = 2;
        let f = Poly::var(n, 0).mul(&Poly::var(n, 1));
        let gb = groebner(&[f], &GbLimits::default()).unwrap();
        assert!(standard_monomials(&gb, n).is_none());
    }
}
