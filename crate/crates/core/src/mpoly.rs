//! Sparse multivariate polynomials over a finite field.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic with `z_1 > z_2 > ... > z_n`; the last entry is the leading term.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Vector, MAX_DIM};

/// Exponent vector. Slots past the ring's variable count are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; MAX_DIM]);

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        let mut m = [0; MAX_DIM];
        m[..exps.len()].copy_from_slice(exps);
        Monomial(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = [0; MAX_DIM];
        m[i] = 1;
        Monomial(m)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn exps(&self, n_vars: usize) -> &[u32] {
        &self.0[..n_vars]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// `other / self`; caller checks divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = other.0;
        for (a, b) in m.iter_mut().zip(self.0) {
            *a -= b;
        }
        Monomial(m)
    }

    fn scaled(&self, factor: u32) -> Monomial {
        Monomial(self.0.map(|e| e * factor))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse polynomial in `n_vars` variables `z_1, ..., z_n`. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

/// One serialized term: `{exponents, coeff}` with the coefficient as power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub exponents: Vec<u32>,
    pub coeff: Vec<u32>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::default(), c);
        }
        p
    }

    pub fn one(n_vars: usize) -> Self {
        MultiPoly::constant(n_vars, Scalar::ONE)
    }

    /// The variable `z_{i+1}` (zero-based index `i`).
    pub fn var(n_vars: usize, i: usize) -> Self {
        MultiPoly::monomial(n_vars, Monomial::var(i), Scalar::ONE)
    }

    pub fn monomial(n_vars: usize, m: Monomial, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `sum_i coeffs[i] z_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = MultiPoly::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(i), c);
            }
        }
        p
    }

    /// Builds a polynomial from terms in any order, combining repeats.
    pub fn from_terms(
        field: &FieldSpec,
        n_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = MultiPoly::zero(n_vars);
        for (m, c) in terms {
            p.add_term(field, m, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
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

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn leading_term(&self) -> Option<(Monomial, Scalar)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, *c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// The common degree of all terms; `None` if zero or not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// The value if this is a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::ZERO),
            1 => self.terms.get(&Monomial::default()).copied(),
            _ => None,
        }
    }

    fn add_term(&mut self, field: &FieldSpec, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = field.add(*e.get(), c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, field: &FieldSpec, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, *m, *c);
        }
        out
    }

    pub fn sub(&self, field: &FieldSpec, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, *m, field.neg(*c));
        }
        out
    }

    pub fn neg(&self, field: &FieldSpec) -> MultiPoly {
        self.scale(field, field.neg(Scalar::ONE))
    }

    pub fn scale(&self, field: &FieldSpec, c: Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n_vars);
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, &x)| (*m, field.mul(c, x)))
                .collect(),
        }
    }

    /// Multiplies by the monomial `c * m`.
    pub fn mul_term(&self, field: &FieldSpec, m: &Monomial, c: Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n_vars);
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(k, &x)| (k.mul(m), field.mul(c, x)))
                .collect(),
        }
    }

    pub fn mul(&self, field: &FieldSpec, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(self.n_vars);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = small.leading_term().unwrap();
            return big.mul_term(field, &m, c);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.len() * other.len());
        for (ma, &ca) in &small.terms {
            for (mb, &cb) in &big.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(Scalar::ZERO);
                *e = field.add(*e, field.mul(ca, cb));
            }
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `f^(p^i)`, computed termwise since Frobenius is a ring endomorphism.
    pub fn frobenius_power(&self, field: &FieldSpec, i: u32) -> MultiPoly {
        let pe = (field.p() as u64).pow(i);
        let factor = u32::try_from(pe).expect("exponent overflow");
        MultiPoly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.scaled(factor), field.pow(c, pe)))
                .collect(),
        }
    }

    /// `f^e` via the base-p expansion of `e`.
    pub fn pow(&self, field: &FieldSpec, e: u64) -> MultiPoly {
        let p = field.p() as u64;
        let mut result = MultiPoly::one(self.n_vars);
        let mut rest = e;
        let mut i = 0;
        while rest > 0 {
            let digit = rest % p;
            if digit > 0 {
                let base = self.frobenius_power(field, i);
                for _ in 0..digit {
                    result = result.mul(field, &base);
                }
            }
            rest /= p;
            i += 1;
        }
        result
    }

    /// Partial derivative with respect to `z_{var+1}`.
    pub fn derivative(&self, field: &FieldSpec, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n_vars);
        for (m, &c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let coef = field.mul_int(c, e as u64);
            if coef.is_zero() {
                continue;
            }
            let mut nm = *m;
            nm.0[var] -= 1;
            out.terms.insert(nm, coef);
        }
        out
    }

    /// Substitutes `z_j -> sum_i images[j][i] z_i` for every variable.
    pub fn compose_linear(&self, field: &FieldSpec, images: &[Vector]) -> MultiPoly {
        let n = self.n_vars;
        let forms: Vec<MultiPoly> = images.iter().map(|v| MultiPoly::linear(v)).collect();
        let mut cache: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(n);
        for (m, &c) in &self.terms {
            let mut term = MultiPoly::constant(n, c);
            for (j, form) in forms.iter().enumerate() {
                let e = m.exp(j);
                if e == 0 {
                    continue;
                }
                let power = cache
                    .entry((j, e))
                    .or_insert_with(|| form.pow(field, e as u64));
                term = term.mul(field, power);
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(field, tm, tc);
            }
        }
        out
    }

    /// The action of a matrix: `(g.f)(v) = f(g v)`, i.e. `z_j -> sum_i g_{ji} z_i`.
    ///
    /// With this convention `act(g, act(h, f)) = act(hg, f)`; invariance under a
    /// group does not depend on the choice.
    pub fn act(&self, field: &FieldSpec, g: &Matrix) -> Result<MultiPoly> {
        if g.dim() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: g.dim(),
            });
        }
        Ok(self.compose_linear(field, &g.rows()))
    }

    /// Whether every term contains exactly one active variable, raised to a power of `p`.
    /// Passive variables may appear freely.
    pub fn is_additive(&self, active: &[usize], p: u32) -> bool {
        self.terms.keys().all(|m| {
            let mut hits = active.iter().filter(|&&v| m.exp(v) > 0);
            match (hits.next(), hits.next()) {
                (Some(&v), None) => is_power_of(m.exp(v) as u64, p as u64),
                _ => false,
            }
        })
    }

    /// Serialized terms in descending graded-lex order.
    pub fn to_repr(&self, field: &FieldSpec) -> Vec<TermRepr> {
        self.terms
            .iter()
            .rev()
            .map(|(m, &c)| TermRepr {
                exponents: m.exps(self.n_vars).to_vec(),
                coeff: field.coeffs(c),
            })
            .collect()
    }

    /// Parses serialized terms in any order.
    pub fn from_repr(field: &FieldSpec, n_vars: usize, terms: &[TermRepr]) -> Result<Self> {
        let mut p = MultiPoly::zero(n_vars);
        for t in terms {
            if t.exponents.len() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    got: t.exponents.len(),
                });
            }
            let c = field.from_coeffs(&t.coeff)?;
            p.add_term(field, Monomial::new(&t.exponents), c);
        }
        Ok(p)
    }

    pub fn display<'a>(&'a self, field: &'a FieldSpec) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, field }
    }
}

pub(crate) fn is_power_of(mut e: u64, p: u64) -> bool {
    if e == 0 {
        return false;
    }
    while e.is_multiple_of(p) {
        e /= p;
    }
    e == 1
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

/// Formats a polynomial as `z1^2*z2 + (c+1)*z3`.
pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    field: &'a FieldSpec,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let n = self.poly.n_vars;
        let parts: Vec<String> = self
            .poly
            .terms
            .iter()
            .rev()
            .map(|(m, &c)| {
                let mut factors = Vec::new();
                let cs = self.field.format(c);
                let is_const = m.degree() == 0;
                if !c.is_one() || is_const {
                    factors.push(if cs.contains('+') {
                        format!("({cs})")
                    } else {
                        cs
                    });
                }
                for (i, &e) in m.exps(n).iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("z{}", i + 1)),
                        _ => factors.push(format!("z{}^{e}", i + 1)),
                    }
                }
                factors.join("*")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Determinant of a square matrix of polynomials, by expansion over column subsets.
pub fn poly_determinant(field: &FieldSpec, n_vars: usize, m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(n_vars);
    }
    // minors[mask] = signed sum over assignments of the first popcount(mask) rows to columns in mask
    let mut minors: HashMap<u32, MultiPoly> = HashMap::new();
    minors.insert(0, MultiPoly::one(n_vars));
    for (r, row) in m.iter().enumerate() {
        let mut next: HashMap<u32, MultiPoly> = HashMap::new();
        for (&mask, partial) in &minors {
            debug_assert_eq!(mask.count_ones() as usize, r);
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let inversions = (mask >> (c + 1)).count_ones();
                let mut prod = partial.mul(field, entry);
                if inversions % 2 == 1 {
                    prod = prod.neg(field);
                }
                let slot = next
                    .entry(mask | (1 << c))
                    .or_insert_with(|| MultiPoly::zero(n_vars));
                *slot = slot.add(field, &prod);
            }
        }
        minors = next;
    }
    minors
        .remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| MultiPoly::zero(n_vars))
}

/// `det(d f_i / d z_j)`.
pub fn jacobian(field: &FieldSpec, fs: &[MultiPoly]) -> Result<MultiPoly> {
    let n = fs.first().map_or(0, |f| f.n_vars);
    if fs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: fs.len(),
        });
    }
    if let Some(bad) = fs.iter().find(|f| f.n_vars != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: bad.n_vars,
        });
    }
    let matrix: Vec<Vec<MultiPoly>> = fs
        .iter()
        .map(|f| (0..n).map(|j| f.derivative(field, j)).collect())
        .collect();
    Ok(poly_determinant(field, n, &matrix))
}

fn is_linear_form(g: &MultiPoly) -> bool {
    !g.is_zero() && g.terms.keys().all(|m| m.degree() == 1)
}

/// Invertible substitution sending the linear form `g` to a single variable.
///
/// Returns `(pivot, forward, backward)`: composing with `forward` rewrites a polynomial
/// in coordinates where `g` becomes `z_pivot`, and `backward` undoes it.
fn straighten(field: &FieldSpec, g: &MultiPoly) -> (usize, Vec<Vector>, Vec<Vector>) {
    let n = g.n_vars;
    let coeffs: Vector = (0..n).map(|i| g.coeff(&Monomial::var(i))).collect();
    let pivot = (0..n)
        .rev()
        .find(|&i| !coeffs[i].is_zero())
        .expect("nonzero linear form");
    let inv = field.inv(coeffs[pivot]).expect("nonzero pivot");
    let unit = |i: usize| -> Vector {
        (0..n)
            .map(|j| if i == j { Scalar::ONE } else { Scalar::ZERO })
            .collect()
    };
    let mut forward: Vec<Vector> = (0..n).map(unit).collect();
    forward[pivot] = (0..n)
        .map(|i| {
            if i == pivot {
                inv
            } else {
                field.neg(field.mul(inv, coeffs[i]))
            }
        })
        .collect();
    let mut backward: Vec<Vector> = (0..n).map(unit).collect();
    backward[pivot] = coeffs;
    (pivot, forward, backward)
}

/// Largest `m` with `g^m | f` for a nonzero linear form `g`; `None` when `f = 0`.
pub fn linear_multiplicity(field: &FieldSpec, f: &MultiPoly, g: &MultiPoly) -> Result<Option<u32>> {
    if !is_linear_form(g) {
        return Err(Error::Internal(
            "linear_multiplicity needs a linear form".into(),
        ));
    }
    if f.is_zero() {
        return Ok(None);
    }
    let (pivot, forward, _) = straighten(field, g);
    let h = f.compose_linear(field, &forward);
    Ok(h.terms.keys().map(|m| m.exp(pivot)).min())
}

/// `f / g` when `g` divides `f`, otherwise `None`.
///
/// Linear divisors go through a change of variables that turns `g` into a
/// coordinate; everything else uses the graded-lex division algorithm.
pub fn exact_divide(field: &FieldSpec, f: &MultiPoly, g: &MultiPoly) -> Result<Option<MultiPoly>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_zero() {
        return Ok(Some(MultiPoly::zero(f.n_vars)));
    }
    if is_linear_form(g) {
        let (pivot, forward, backward) = straighten(field, g);
        let h = f.compose_linear(field, &forward);
        if h.terms.keys().any(|m| m.exp(pivot) == 0) {
            return Ok(None);
        }
        let shifted = MultiPoly {
            n_vars: h.n_vars,
            terms: h
                .terms
                .into_iter()
                .map(|(mut m, c)| {
                    m.0[pivot] -= 1;
                    (m, c)
                })
                .collect(),
        };
        return Ok(Some(shifted.compose_linear(field, &backward)));
    }
    divide_general(field, f, g)
}

/// Single-divisor multivariate division; `None` if the remainder is nonzero.
pub fn divide_general(
    field: &FieldSpec,
    f: &MultiPoly,
    g: &MultiPoly,
) -> Result<Option<MultiPoly>> {
    let (lm, lc) = g.leading_term().ok_or(Error::ZeroPolynomial)?;
    let lc_inv = field.inv(lc)?;
    let mut rem = f.clone();
    let mut quot = MultiPoly::zero(f.n_vars);
    while let Some((m, c)) = rem.leading_term() {
        if !lm.divides(&m) {
            // this term can never cancel, so the remainder is nonzero
            return Ok(None);
        }
        let tm = lm.quotient_of(&m);
        let tc = field.mul(c, lc_inv);
        quot.terms.insert(tm, tc);
        for (gm, &gc) in &g.terms {
            rem.add_term(field, gm.mul(&tm), field.neg(field.mul(tc, gc)));
        }
    }
    Ok(Some(quot))
}

/// A polynomial in an auxiliary variable `X` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyInX {
    /// exponent of X -> coefficient
    pub coeffs: BTreeMap<u64, MultiPoly>,
}

impl PolyInX {
    pub fn exponents(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs.keys().copied()
    }

    /// Substitutes a polynomial for `X`.
    pub fn compose(&self, field: &FieldSpec, x: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(x.n_vars);
        for (&e, c) in &self.coeffs {
            out = out.add(field, &c.mul(field, &x.pow(field, e)));
        }
        out
    }
}

/// `h(X) = prod_{a in A} (X + a u)` for a finite additive subgroup `A` of the field.
///
/// Every exponent of `X` in the result is a power of `p`; a violation is reported
/// as an internal error.
pub fn orbit_additive_product(field: &FieldSpec, set: &[Scalar], u: &MultiPoly) -> Result<PolyInX> {
    let elems: HashSet<Scalar> = set.iter().copied().collect();
    if !elems.contains(&Scalar::ZERO) || elems.len() != set.len() {
        return Err(Error::NotAdditiveSubgroup);
    }
    for &a in &elems {
        for &b in &elems {
            if !elems.contains(&field.add(a, b)) {
                return Err(Error::NotAdditiveSubgroup);
            }
        }
    }
    // dense prod (X + a) over the field, lowest degree first
    let mut prod: Vec<Scalar> = vec![Scalar::ONE];
    for &a in set {
        let mut next = vec![Scalar::ZERO; prod.len() + 1];
        for (i, &c) in prod.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.add(next[i], field.mul(a, c));
        }
        prod = next;
    }
    let size = set.len() as u64;
    let mut coeffs = BTreeMap::new();
    for (j, &c) in prod.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = j as u64;
        if !is_power_of(j, field.p() as u64) {
            return Err(Error::Internal(format!(
                "orbit product has non-additive exponent {j}"
            )));
        }
        coeffs.insert(j, u.pow(field, size - j).scale(field, c));
    }
    Ok(PolyInX { coeffs })
}
