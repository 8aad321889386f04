//! Finite fields `F_q = F_p[x]/(m(x))` and the subfields `F_p(w)` generated by single elements.
//!
//! Elements are stored as packed power-basis coordinates: the scalar with
//! coordinates `[a_0, ..., a_{k-1}]` has index `a_0 + a_1 p + ... + a_{k-1} p^{k-1}`.
//! The packing is a bijection, so equality of scalars is coordinate-wise equality.
//! Multiplication runs through log/exp tables built once per field.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec`].
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// An element of a finite field, stored as packed power-basis coordinates.
///
/// Scalars carry no reference to their field; every operation goes through a [`FieldSpec`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    /// The packed index of this element.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

struct Tables {
    p: u32,
    k: usize,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for a fixed primitive element g, i in 0..q-1
    exp: Vec<u32>,
    /// log[a] for a != 0
    log: Vec<u32>,
    /// powers of p, length k
    place: Vec<u32>,
}

/// A finite field `F_p[x]/(modulus)`.
///
/// Cheap to clone: the arithmetic tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.inner.p)
            .field("k", &self.inner.k)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

/// Wire form of a [`FieldSpec`]: `{p, k, modulus}` with the modulus including its leading 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpecRepr {
    pub p: u32,
    pub k: usize,
    pub modulus: Vec<u32>,
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(repr: FieldSpecRepr) -> Result<Self> {
        if repr.modulus.len() != repr.k + 1 {
            return Err(Error::InvalidField(format!(
                "modulus has {} coefficients but k = {}",
                repr.modulus.len(),
                repr.k
            )));
        }
        FieldSpec::new(repr.p, repr.modulus)
    }
}

impl From<&FieldSpec> for FieldSpecRepr {
    fn from(f: &FieldSpec) -> Self {
        FieldSpecRepr {
            p: f.p(),
            k: f.k(),
            modulus: f.modulus().to_vec(),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpecRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FieldSpecRepr::deserialize(d)?;
        FieldSpec::try_from(repr).map_err(serde::de::Error::custom)
    }
}

/// The operations accepted by [`FieldSpec::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(u64),
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^k`; `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// Dense polynomials over F_p, least degree first, used only while building a field.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (factor as u64 * bc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2)
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    for deg in 1..=k / 2 {
        // every monic polynomial of this degree
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut cand = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                cand.push((c % p as u64) as u32);
                c /= p as u64;
            }
            cand.push(1);
            if poly_rem(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds `F_p[x]/(modulus)`; `modulus` is monic, least degree first, with its leading 1.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField(
                "modulus must have degree at least 1".into(),
            ));
        }
        if modulus.last() != Some(&1) {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if let Some(&bad) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus coefficient {bad} is not reduced mod {p}"
            )));
        }
        let k = modulus.len() - 1;
        let q = (p as u64)
            .checked_pow(k as u32)
            .filter(|&q| q <= MAX_FIELD_ORDER as u64);
        let Some(q) = q else {
            return Err(Error::InvalidField(format!(
                "field order {p}^{k} exceeds {MAX_FIELD_ORDER}"
            )));
        };
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(modulus, p));
        }
        let q = q as u32;
        let place: Vec<u32> = (0..k).map(|i| p.pow(i as u32)).collect();
        let mut tables = Tables {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            place,
        };
        tables.build_log_tables();
        Ok(FieldSpec {
            inner: Arc::new(tables),
        })
    }

    /// The field of order `q` with the smallest irreducible monic modulus.
    ///
    /// Candidates are ordered by their packed value `a_0 + a_1 p + ... + a_{k-1} p^{k-1}`,
    /// so for `q = 8` this picks `x^3 + x + 1`.
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!(
                "field order {q} exceeds {MAX_FIELD_ORDER}"
            )));
        }
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let mut modulus = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                modulus.push((c % p as u64) as u32);
                c /= p as u64;
            }
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                return FieldSpec::new(p, modulus);
            }
        }
        Err(Error::Internal(format!(
            "no irreducible polynomial of degree {k} over F_{p}"
        )))
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn k(&self) -> usize {
        self.inner.k
    }

    /// The field order `q = p^k`.
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> Scalar {
        Scalar::ZERO
    }

    pub fn one(&self) -> Scalar {
        Scalar::ONE
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Scalar {
        Scalar(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Scalar with the given packed index.
    pub fn element(&self, index: u32) -> Result<Scalar> {
        if index >= self.inner.q {
            return Err(Error::ScalarOutOfRange {
                value: index,
                order: self.inner.q,
            });
        }
        Ok(Scalar(index))
    }

    /// All elements in packed-index order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.inner.q).map(Scalar)
    }

    /// Scalar from power-basis coordinates `[a_0, ..., a_{k-1}]`.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Scalar> {
        let t = &self.inner;
        if coeffs.len() != t.k {
            return Err(Error::DimensionMismatch {
                expected: t.k,
                got: coeffs.len(),
            });
        }
        let mut idx = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= t.p {
                return Err(Error::ScalarOutOfRange {
                    value: c,
                    order: t.p,
                });
            }
            idx += c * t.place[i];
        }
        Ok(Scalar(idx))
    }

    /// Power-basis coordinates of a scalar, least degree first.
    pub fn coeffs(&self, a: Scalar) -> Vec<u32> {
        let t = &self.inner;
        let mut v = Vec::with_capacity(t.k);
        let mut x = a.0;
        for _ in 0..t.k {
            v.push(x % t.p);
            x /= t.p;
        }
        v
    }

    /// The class of `x` modulo the modulus.
    pub fn x_class(&self) -> Scalar {
        let t = &self.inner;
        if t.k >= 2 {
            Scalar(t.p)
        } else {
            // x = -a_0 in F_p[x]/(x + a_0)
            self.neg(Scalar(t.modulus[0]))
        }
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let t = &self.inner;
        if t.p == 2 {
            return Scalar(a.0 ^ b.0);
        }
        if t.k == 1 {
            return Scalar((a.0 + b.0) % t.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        for &w in &t.place {
            out += ((x % t.p + y % t.p) % t.p) * w;
            x /= t.p;
            y /= t.p;
        }
        Scalar(out)
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        let t = &self.inner;
        if t.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        for &w in &t.place {
            out += ((t.p - x % t.p) % t.p) * w;
            x /= t.p;
        }
        Scalar(out)
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.0 == 0 || b.0 == 0 {
            return Scalar::ZERO;
        }
        let t = &self.inner;
        let n = t.q - 1;
        let e = (t.log[a.0 as usize] + t.log[b.0 as usize]) % n;
        Scalar(t.exp[e as usize])
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &self.inner;
        let n = t.q - 1;
        let e = (n - t.log[a.0 as usize]) % n;
        Ok(Scalar(t.exp[e as usize]))
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Scalar, e: u64) -> Scalar {
        if e == 0 {
            return Scalar::ONE;
        }
        if a.0 == 0 {
            return Scalar::ZERO;
        }
        let t = &self.inner;
        let n = (t.q - 1) as u64;
        let l = t.log[a.0 as usize] as u64 * (e % n) % n;
        Scalar(t.exp[l as usize])
    }

    /// Integer multiple `m·a`.
    pub fn mul_int(&self, a: Scalar, m: u64) -> Scalar {
        self.mul(a, self.from_int((m % self.inner.p as u64) as i64))
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: Scalar) -> Scalar {
        self.pow(a, self.inner.p as u64)
    }

    /// Uniform entry point for the basic arithmetic operations.
    pub fn apply(&self, op: ArithOp, operands: &[Scalar]) -> Result<Scalar> {
        let arity = match op {
            ArithOp::Add | ArithOp::Sub | ArithOp::Mul => 2,
            ArithOp::Inv | ArithOp::Pow(_) => 1,
        };
        if operands.len() != arity {
            return Err(Error::DimensionMismatch {
                expected: arity,
                got: operands.len(),
            });
        }
        for &s in operands {
            self.element(s.0)?;
        }
        match op {
            ArithOp::Add => Ok(self.add(operands[0], operands[1])),
            ArithOp::Sub => Ok(self.sub(operands[0], operands[1])),
            ArithOp::Mul => Ok(self.mul(operands[0], operands[1])),
            ArithOp::Inv => self.inv(operands[0]),
            ArithOp::Pow(e) => Ok(self.pow(operands[0], e)),
        }
    }

    /// The generator of the multiplicative group used by the log tables.
    pub fn primitive_element(&self) -> Scalar {
        Scalar(self.inner.exp.get(1).copied().unwrap_or(1))
    }

    /// Smallest `e >= 1` with `a^e = 1`.
    pub fn multiplicative_order(&self, a: Scalar) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = (self.inner.q - 1) as u64;
        let l = self.inner.log[a.0 as usize] as u64;
        // order of g^l in a cyclic group of order n; gcd(n, 0) = n gives 1
        Ok(n / num_integer::gcd(n, l))
    }

    /// Human-readable form: an integer in the prime field, otherwise a polynomial in `c`,
    /// the class of `x`.
    pub fn format(&self, a: Scalar) -> String {
        let coeffs = self.coeffs(a);
        if self.k() == 1 || self.is_in_prime_field(a) {
            return coeffs.first().copied().unwrap_or(0).to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            parts.push(match i {
                0 => coef,
                1 => format!("{coef}c"),
                _ => format!("{coef}c^{i}"),
            });
        }
        parts.join("+")
    }

    pub fn is_in_prime_field(&self, a: Scalar) -> bool {
        a.0 < self.inner.p
    }

    /// The smallest subfield containing `w`.
    pub fn subfield_generated(&self, w: Scalar) -> Subfield {
        let p = self.inner.p;
        // echelon basis over F_p of the coordinate vectors of 1, w, w^2, ...
        let mut echelon: Vec<(usize, Vec<u32>)> = Vec::new();
        let mut degree = 0;
        let mut power = Scalar::ONE;
        loop {
            let mut v = self.coeffs(power);
            for (pivot, row) in &echelon {
                let c = v[*pivot];
                if c != 0 {
                    for (x, r) in v.iter_mut().zip(row) {
                        *x = (*x + p - (c * r) % p) % p;
                    }
                }
            }
            let Some(pivot) = v.iter().position(|&c| c != 0) else {
                break;
            };
            let s = inv_mod(v[pivot], p);
            for x in v.iter_mut() {
                *x = *x * s % p;
            }
            echelon.push((pivot, v));
            degree += 1;
            power = self.mul(power, w);
        }
        let basis: Vec<Scalar> = (0..degree).map(|i| self.pow(w, i as u64)).collect();
        let mut elements = vec![Scalar::ZERO];
        for b in &basis {
            let mut next = Vec::with_capacity(elements.len() * p as usize);
            for &e in &elements {
                let mut acc = e;
                for _ in 0..p {
                    next.push(acc);
                    acc = self.add(acc, *b);
                }
            }
            elements = next;
        }
        elements.sort();
        Subfield {
            generator: w,
            degree,
            elements,
        }
    }
}

impl Tables {
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (p, k) = (self.p, self.k);
        let da = digits(a, p, k);
        let db = digits(b, p, k);
        let mut prod = vec![0u32; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let r = poly_rem(&prod, &self.modulus, p);
        r.iter().enumerate().map(|(i, &c)| c * self.place[i]).sum()
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.slow_mul(result, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        result
    }

    fn build_log_tables(&mut self) {
        let n = (self.q - 1) as u64;
        let factors = prime_factors(n);
        let g = (1..self.q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, n / r) != 1) && (n > 1 || g == 1))
            .unwrap_or(1);
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for i in 0..n as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = self.slow_mul(x, g);
        }
        self.exp = exp;
        self.log = log;
    }
}

fn digits(mut a: u32, p: u32, k: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(k);
    for _ in 0..k {
        v.push(a % p);
        a /= p;
    }
    v
}

/// The subfield `F_p(w)` as an explicit element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subfield {
    pub generator: Scalar,
    /// `[F_p(w) : F_p]`
    pub degree: usize,
    /// sorted by packed index
    pub elements: Vec<Scalar>,
}

impl Subfield {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: Scalar) -> bool {
        self.elements.binary_search(&a).is_ok()
    }
}
