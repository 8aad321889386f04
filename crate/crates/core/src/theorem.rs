//! Checks of the Jacobian factorization over the reflection arrangement, the
//! divisibility and degree identities, and the ramification formula.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Scalar};
use crate::group::{
    all_hyperplanes, pointwise_stabilizer, reflecting_arrangement, Group, Hyperplane,
};
use crate::invariants::{
    construct_hyperplane_invariants, verify_basic_invariants, BasicInvariants, VerificationReport,
};
use crate::mpoly::{self, MultiPoly};

pub type Rational = Ratio<i128>;

/// A hyperplane with its pointwise stabilizer's order and constructed basic invariants.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub hyperplane: Hyperplane,
    pub stabilizer_order: usize,
    pub basics: BasicInvariants,
}

impl LocalData {
    /// `m_H`: the exponent sum of the pointwise stabilizer.
    pub fn exponent_sum(&self) -> u32 {
        self.basics.exponent_sum()
    }
}

/// Stabilizer data for any hyperplane, reflecting or not.
pub fn local_data(field: &FieldSpec, group: &Group, h: &Hyperplane) -> Result<LocalData> {
    let g_h = pointwise_stabilizer(field, &group.elements, h);
    let (basics, _) = construct_hyperplane_invariants(field, &g_h, h)?;
    Ok(LocalData {
        hyperplane: h.clone(),
        stabilizer_order: g_h.len(),
        basics,
    })
}

/// [`local_data`] for every reflecting hyperplane, in arrangement order.
pub fn arrangement_data(field: &FieldSpec, group: &Group) -> Result<Vec<LocalData>> {
    reflecting_arrangement(field, &group.elements)
        .iter()
        .map(|h| local_data(field, group, h))
        .collect()
}

pub fn stabilizer_exponent_sum(field: &FieldSpec, group: &Group, h: &Hyperplane) -> Result<u32> {
    let data = local_data(field, group, h)?;
    if data.stabilizer_order == 1 {
        return Err(Error::NotReflecting);
    }
    Ok(data.exponent_sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorRecord {
    pub hyperplane: Hyperplane,
    /// `m_H` from the stabilizer's invariants
    pub multiplicity: u32,
    /// largest power of `l_H` dividing the Jacobian
    pub observed: u32,
    /// whether `l_H^{m_H}` divides the Jacobian
    pub divides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub jacobian: MultiPoly,
    pub factors: Vec<FactorRecord>,
    /// `J / prod l_H^{m_H}` when that quotient is a nonzero constant
    pub unit: Option<Scalar>,
    pub pass: bool,
}

pub fn jacobian_factorization(
    field: &FieldSpec,
    group: &Group,
    basics: &BasicInvariants,
) -> Result<FactorizationReport> {
    let locals = arrangement_data(field, group)?;
    factorization_from(field, basics, &locals)
}

pub fn factorization_from(
    field: &FieldSpec,
    basics: &BasicInvariants,
    locals: &[LocalData],
) -> Result<FactorizationReport> {
    let jacobian = mpoly::jacobian(field, &basics.polys)?;
    if jacobian.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = jacobian.n_vars();
    let mut product = MultiPoly::one(n);
    let mut factors = Vec::with_capacity(locals.len());
    for local in locals {
        let l = local.hyperplane.linear_form();
        let m = local.exponent_sum();
        let power = l.pow(field, m as u64);
        let observed = mpoly::linear_multiplicity(field, &jacobian, &l)?.expect("nonzero Jacobian");
        let divides = mpoly::exact_divide(field, &jacobian, &power)?.is_some();
        factors.push(FactorRecord {
            hyperplane: local.hyperplane.clone(),
            multiplicity: m,
            observed,
            divides,
        });
        product = product.mul(field, &power);
    }
    let unit = mpoly::divide_general(field, &jacobian, &product)?
        .and_then(|quot| quot.as_constant())
        .filter(|c| !c.is_zero());
    Ok(FactorizationReport {
        jacobian,
        factors,
        pass: unit.is_some(),
        unit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeIdentityReport {
    /// `sum (d_i - 1)`
    pub jacobian_degree: u32,
    /// `sum_H m_H`
    pub exponent_sum: u32,
    pub pass: bool,
}

pub fn degree_identity_check(
    field: &FieldSpec,
    group: &Group,
    basics: &BasicInvariants,
) -> Result<DegreeIdentityReport> {
    Ok(degree_identity_from(
        basics,
        &arrangement_data(field, group)?,
    ))
}

pub fn degree_identity_from(
    basics: &BasicInvariants,
    locals: &[LocalData],
) -> DegreeIdentityReport {
    let jacobian_degree = basics.exponent_sum();
    let exponent_sum = locals.iter().map(LocalData::exponent_sum).sum();
    DegreeIdentityReport {
        jacobian_degree,
        exponent_sum,
        pass: jacobian_degree == exponent_sum,
    }
}

/// Coefficients `c_0, ..., c_order` of `1 / g(s)` for a power series `g` with `g(0) != 0`.
fn invert_series(g: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0); order + 1];
    out[0] = g[0].recip();
    for k in 1..=order {
        let mut acc = Rational::from_integer(0);
        for j in 1..=k.min(g.len() - 1) {
            acc += g[j] * out[k - j];
        }
        out[k] = -acc / g[0];
    }
    out
}

fn binomial(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// The coefficient of `(1 - t)^{-(n-1)}` in the expansion of `prod 1/(1 - t^{d_i})` at `t = 1`.
///
/// With `t = 1 - s` each factor is `s^{-1} / g_d(s)` where
/// `g_d(s) = sum_{k>=1} (-1)^{k+1} C(d, k) s^{k-1}`, so the wanted coefficient is
/// the linear coefficient of `prod 1/g_{d_i}`.
pub fn psi(degrees: &[u32], n: usize) -> Result<Rational> {
    if degrees.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: degrees.len(),
        });
    }
    if degrees.contains(&0) {
        return Err(Error::ZeroDegree);
    }
    let mut series = vec![Rational::from_integer(1), Rational::from_integer(0)];
    for &d in degrees {
        let g: Vec<Rational> = (1..=d.min(2))
            .map(|k| {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                Rational::from_integer(sign * binomial(d, k))
            })
            .collect();
        let inv = invert_series(&g, 1);
        series = vec![series[0] * inv[0], series[0] * inv[1] + series[1] * inv[0]];
    }
    let value = series[1];
    let product: i128 = degrees.iter().map(|&d| d as i128).product();
    let closed = Rational::new(degrees.iter().map(|&d| d as i128 - 1).sum(), 2 * product);
    if value != closed {
        return Err(Error::Internal(format!(
            "psi expansion {value} differs from closed form {closed}"
        )));
    }
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationTerm {
    pub hyperplane: Hyperplane,
    pub stabilizer_order: usize,
    pub degrees: Vec<u32>,
    pub psi: Rational,
    /// `|G_H| psi_H`
    pub contribution: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    pub lhs: Rational,
    pub rhs: Rational,
    pub terms: Vec<RamificationTerm>,
    pub pass: bool,
}

/// `|G| psi(F[V]^G)` against `sum_H |G_H| psi(F[V]^{G_H})`.
///
/// A hyperplane with trivial stabilizer contributes `psi` of a ring generated in degree 1,
/// which is 0, so by default only reflecting hyperplanes are summed; `exhaustive`
/// sums over every hyperplane instead.
pub fn ramification_check(
    field: &FieldSpec,
    group: &Group,
    basics: &BasicInvariants,
    exhaustive: bool,
) -> Result<RamificationReport> {
    let locals = if exhaustive {
        all_hyperplanes(field, group.n)
            .iter()
            .map(|h| local_data(field, group, h))
            .collect::<Result<Vec<_>>>()?
    } else {
        arrangement_data(field, group)?
    };
    ramification_from(group, basics, &locals)
}

pub fn ramification_from(
    group: &Group,
    basics: &BasicInvariants,
    locals: &[LocalData],
) -> Result<RamificationReport> {
    let n = group.n;
    let lhs = Rational::from_integer(group.order() as i128) * psi(&basics.degrees, n)?;
    let mut rhs = Rational::from_integer(0);
    let mut terms = Vec::with_capacity(locals.len());
    for local in locals {
        let value = psi(&local.basics.degrees, n)?;
        let contribution = Rational::from_integer(local.stabilizer_order as i128) * value;
        rhs += contribution;
        terms.push(RamificationTerm {
            hyperplane: local.hyperplane.clone(),
            stabilizer_order: local.stabilizer_order,
            degrees: local.basics.degrees.clone(),
            psi: value,
            contribution,
        });
    }
    Ok(RamificationReport {
        lhs,
        rhs,
        terms,
        pass: lhs == rhs,
    })
}

/// Every check for a group and a proposed set of basic invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub verification: VerificationReport,
    pub factorization: Option<FactorizationReport>,
    pub degree_identity: Option<DegreeIdentityReport>,
    pub ramification: Option<RamificationReport>,
    /// factorization passes and every reflecting hyperplane has positive multiplicity
    pub zero_set_is_arrangement: bool,
    pub pass: bool,
}

/// Runs the verifier, then (if it passes) factorization, degree identity and ramification.
pub fn check_all(
    field: &FieldSpec,
    group: &Group,
    polys: &[MultiPoly],
    exhaustive: bool,
) -> Result<TheoremReport> {
    let verification = verify_basic_invariants(field, group, polys)?;
    if !verification.pass {
        return Ok(TheoremReport {
            verification,
            factorization: None,
            degree_identity: None,
            ramification: None,
            zero_set_is_arrangement: false,
            pass: false,
        });
    }
    let basics = BasicInvariants::new(polys.to_vec())?;
    let locals = arrangement_data(field, group)?;
    let factorization = factorization_from(field, &basics, &locals)?;
    let degree_identity = degree_identity_from(&basics, &locals);
    let ramification = ramification_check(field, group, &basics, exhaustive)?;
    let zero_set_is_arrangement =
        factorization.pass && factorization.factors.iter().all(|f| f.multiplicity >= 1);
    let pass =
        factorization.pass && degree_identity.pass && ramification.pass && zero_set_is_arrangement;
    Ok(TheoremReport {
        verification,
        factorization: Some(factorization),
        degree_identity: Some(degree_identity),
        ramification: Some(ramification),
        zero_set_is_arrangement,
        pass,
    })
}
