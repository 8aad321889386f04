//! Wire forms of inputs and reports. Scalars are coefficient vectors, matrices are
//! nested arrays of scalars, rationals are `{num, den}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, FieldSpecRepr, Scalar};
use crate::group::{GroupSpec, Hyperplane, StabilizerDecomposition, DEFAULT_ORDER_CAP};
use crate::invariants::{BasicInvariants, ConstructionTrace, VerificationReport};
use crate::linalg::Matrix;
use crate::mpoly::{MultiPoly, TermRepr};
use crate::theorem::{DegreeIdentityReport, FactorizationReport, RamificationReport, Rational};

pub const SCHEMA_VERSION: u32 = 1;

pub type ScalarRepr = Vec<u32>;
pub type VectorRepr = Vec<ScalarRepr>;
pub type MatrixRepr = Vec<VectorRepr>;
pub type PolyRepr = Vec<TermRepr>;

pub fn vector_repr(field: &FieldSpec, v: &[Scalar]) -> VectorRepr {
    v.iter().map(|&s| field.coeffs(s)).collect()
}

pub fn poly_repr(field: &FieldSpec, f: &MultiPoly) -> PolyRepr {
    f.to_repr(field)
}

/// A group presentation read from a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInput {
    pub field: FieldSpecRepr,
    pub n: usize,
    pub generators: Vec<MatrixRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_cap: Option<usize>,
    /// proposed basic invariants
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Vec<PolyRepr>>,
}

impl GroupInput {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_spec(
        spec: &GroupSpec,
        labels: Option<Vec<String>>,
        invariants: Option<&[MultiPoly]>,
    ) -> Self {
        GroupInput {
            field: FieldSpecRepr::from(&spec.field),
            n: spec.n,
            generators: spec
                .generators
                .iter()
                .map(|g| g.to_repr(&spec.field))
                .collect(),
            labels,
            order_cap: (spec.order_cap != DEFAULT_ORDER_CAP).then_some(spec.order_cap),
            invariants: invariants.map(|fs| fs.iter().map(|f| poly_repr(&spec.field, f)).collect()),
        }
    }

    /// The group spec and any proposed invariants.
    pub fn resolve(&self) -> Result<(GroupSpec, Option<Vec<MultiPoly>>)> {
        let field = FieldSpec::try_from(self.field.clone())?;
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let m = Matrix::from_repr(&field, g)?;
                if m.dim() != self.n {
                    return Err(Error::DimensionMismatch {
                        expected: self.n,
                        got: m.dim(),
                    });
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut spec = GroupSpec::new(field.clone(), self.n, generators)?;
        if let Some(cap) = self.order_cap {
            spec = spec.with_order_cap(cap);
        }
        let invariants = self
            .invariants
            .as_ref()
            .map(|fs| {
                fs.iter()
                    .map(|f| MultiPoly::from_repr(&field, self.n, f))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok((spec, invariants))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: i128,
    pub den: i128,
}

impl From<Rational> for RationalRepr {
    fn from(r: Rational) -> Self {
        RationalRepr {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub field: FieldSpecRepr,
    pub n: usize,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionCensus {
    pub reflections: usize,
    pub transvections: usize,
    pub diagonalizable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerRepr {
    pub hyperplane: VectorRepr,
    pub order: usize,
    pub sigma: MatrixRepr,
    pub omega: ScalarRepr,
    pub e: u64,
    pub k_order: usize,
    pub d: usize,
    pub subfield_order: usize,
    pub transvections: Vec<MatrixRepr>,
    /// `|G_H| = e |F_p(w)|^d`
    pub order_formula: bool,
}

impl StabilizerRepr {
    pub fn new(field: &FieldSpec, dec: &StabilizerDecomposition) -> Self {
        let expected = dec.e as u128 * (dec.subfield.size() as u128).pow(dec.d as u32);
        StabilizerRepr {
            hyperplane: vector_repr(field, dec.hyperplane.form()),
            order: dec.order,
            sigma: dec.sigma.to_repr(field),
            omega: field.coeffs(dec.omega),
            e: dec.e,
            k_order: dec.k_order,
            d: dec.d,
            subfield_order: dec.subfield.size(),
            transvections: dec.transvections.iter().map(|t| t.to_repr(field)).collect(),
            order_formula: expected == dec.order as u128,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRepr {
    pub census: ReflectionCensus,
    pub reflection_generated: bool,
    pub arrangement: Vec<VectorRepr>,
    pub stabilizers: Vec<StabilizerRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStepRepr {
    pub transvection: MatrixRepr,
    pub pivot: usize,
    pub b: Vec<ScalarRepr>,
    pub c: Vec<ScalarRepr>,
    pub additive_set: Vec<ScalarRepr>,
    pub jacobian_exponent: u32,
    pub polys: Vec<PolyRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRepr {
    pub hyperplane: VectorRepr,
    pub basis: MatrixRepr,
    pub sigma: MatrixRepr,
    pub e: u64,
    pub initial_exponent: u32,
    pub steps: Vec<TraceStepRepr>,
}

impl TraceRepr {
    pub fn new(field: &FieldSpec, trace: &ConstructionTrace) -> Self {
        TraceRepr {
            hyperplane: vector_repr(field, trace.hyperplane.form()),
            basis: trace.basis.to_repr(field),
            sigma: trace.sigma.to_repr(field),
            e: trace.e,
            initial_exponent: trace.initial_exponent,
            steps: trace
                .steps
                .iter()
                .map(|s| TraceStepRepr {
                    transvection: s.transvection.to_repr(field),
                    pivot: s.pivot,
                    b: vector_repr(field, &s.b),
                    c: vector_repr(field, &s.c),
                    additive_set: vector_repr(field, &s.additive_set),
                    jacobian_exponent: s.jacobian_exponent,
                    polys: s.polys.iter().map(|f| poly_repr(field, f)).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsRepr {
    /// `input`, `family` or `constructed`
    pub source: String,
    pub polys: Vec<PolyRepr>,
    pub degrees: Vec<u32>,
    pub exponents: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceRepr>,
}

impl InvariantsRepr {
    pub fn new(
        field: &FieldSpec,
        source: &str,
        basics: &BasicInvariants,
        trace: Option<&ConstructionTrace>,
    ) -> Self {
        InvariantsRepr {
            source: source.to_string(),
            polys: basics.polys.iter().map(|f| poly_repr(field, f)).collect(),
            degrees: basics.degrees.clone(),
            exponents: basics.exponents.clone(),
            trace: trace.map(|t| TraceRepr::new(field, t)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRepr {
    pub degrees: Vec<u32>,
    pub invariant: bool,
    pub jacobian_nonzero: bool,
    pub degree_product_matches: bool,
    pub pass: bool,
}

impl From<&VerificationReport> for VerificationRepr {
    fn from(r: &VerificationReport) -> Self {
        VerificationRepr {
            degrees: r.degrees.clone(),
            invariant: r.invariant,
            jacobian_nonzero: r.jacobian_nonzero,
            degree_product_matches: r.degree_product_matches,
            pass: r.pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRepr {
    pub hyperplane: VectorRepr,
    pub multiplicity: u32,
    pub observed: u32,
    pub divides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeIdentityRepr {
    pub jacobian_degree: u32,
    pub exponent_sum: u32,
    pub pass: bool,
}

impl From<&DegreeIdentityReport> for DegreeIdentityRepr {
    fn from(r: &DegreeIdentityReport) -> Self {
        DegreeIdentityRepr {
            jacobian_degree: r.jacobian_degree,
            exponent_sum: r.exponent_sum,
            pass: r.pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationTermRepr {
    pub hyperplane: VectorRepr,
    pub stabilizer_order: usize,
    pub degrees: Vec<u32>,
    pub psi: RationalRepr,
    pub contribution: RationalRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationRepr {
    pub lhs: RationalRepr,
    pub rhs: RationalRepr,
    pub terms: Vec<RamificationTermRepr>,
    pub pass: bool,
}

impl RamificationRepr {
    pub fn new(field: &FieldSpec, r: &RamificationReport) -> Self {
        RamificationRepr {
            lhs: r.lhs.into(),
            rhs: r.rhs.into(),
            terms: r
                .terms
                .iter()
                .map(|t| RamificationTermRepr {
                    hyperplane: vector_repr(field, t.hyperplane.form()),
                    stabilizer_order: t.stabilizer_order,
                    degrees: t.degrees.clone(),
                    psi: t.psi.into(),
                    contribution: t.contribution.into(),
                })
                .collect(),
            pass: r.pass,
        }
    }
}

/// The factorization report, plus the degree identity and (for `verify`) ramification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremRepr {
    pub pass: bool,
    pub jacobian: PolyRepr,
    pub unit: Option<ScalarRepr>,
    pub factors: Vec<FactorRepr>,
    pub degree_identity: DegreeIdentityRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramification: Option<RamificationRepr>,
    pub zero_set_is_arrangement: bool,
}

impl TheoremRepr {
    pub fn new(
        field: &FieldSpec,
        factorization: &FactorizationReport,
        degree_identity: &DegreeIdentityReport,
        ramification: Option<&RamificationReport>,
    ) -> Self {
        let zero_set_is_arrangement =
            factorization.pass && factorization.factors.iter().all(|f| f.multiplicity >= 1);
        let pass = factorization.pass
            && degree_identity.pass
            && zero_set_is_arrangement
            && ramification.is_none_or(|r| r.pass);
        TheoremRepr {
            pass,
            jacobian: poly_repr(field, &factorization.jacobian),
            unit: factorization.unit.map(|u| field.coeffs(u)),
            factors: factorization
                .factors
                .iter()
                .map(|f| FactorRepr {
                    hyperplane: vector_repr(field, f.hyperplane.form()),
                    multiplicity: f.multiplicity,
                    observed: f.observed,
                    divides: f.divides,
                })
                .collect(),
            degree_identity: degree_identity.into(),
            ramification: ramification.map(|r| RamificationRepr::new(field, r)),
            zero_set_is_arrangement,
        }
    }
}

/// Top-level JSON document written by the command-line tool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Output {
    pub schema: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub group: GroupSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<TheoremRepr>,
    pub pass: bool,
}

pub fn hyperplane_label(field: &FieldSpec, h: &Hyperplane) -> String {
    h.linear_form().display(field).to_string()
}
