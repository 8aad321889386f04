//! Finite matrix groups: closure enumeration, reflections and transvections,
//! reflecting hyperplanes, pointwise stabilizers and root vectors.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Scalar, Subfield};
use crate::linalg::{self, Matrix, Vector, MAX_DIM};
use crate::mpoly::MultiPoly;

pub const DEFAULT_ORDER_CAP: usize = 1 << 20;

/// Generators of a finite subgroup of `GL_n(F_q)`.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub field: FieldSpec,
    pub n: usize,
    pub generators: Vec<Matrix>,
    pub order_cap: usize,
}

impl GroupSpec {
    pub fn new(field: FieldSpec, n: usize, generators: Vec<Matrix>) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        for g in &generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.dim(),
                });
            }
            if g.entries().iter().any(|s| s.index() >= field.order()) {
                return Err(Error::ScalarOutOfRange {
                    value: field.order(),
                    order: field.order(),
                });
            }
            if linalg::det(&field, g).is_zero() {
                return Err(Error::SingularMatrix);
            }
        }
        Ok(GroupSpec {
            field,
            n,
            generators,
            order_cap: DEFAULT_ORDER_CAP,
        })
    }

    pub fn with_order_cap(mut self, cap: usize) -> Self {
        self.order_cap = cap;
        self
    }
}

/// All elements of the group generated by `spec.generators`, identity first,
/// in breadth-first order.
pub fn enumerate_group(spec: &GroupSpec) -> Result<Vec<Matrix>> {
    let id = Matrix::identity(spec.n);
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id.clone()]);
    seen.insert(id);
    while let Some(x) = queue.pop_front() {
        for g in &spec.generators {
            let y = linalg::mat_mul(&spec.field, &x, g);
            if seen.insert(y.clone()) {
                if seen.len() > spec.order_cap {
                    return Err(Error::OrderCapExceeded {
                        cap: spec.order_cap,
                    });
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

/// An enumerated finite group.
#[derive(Clone, Debug)]
pub struct Group {
    pub field: FieldSpec,
    pub n: usize,
    pub generators: Vec<Matrix>,
    pub elements: Vec<Matrix>,
}

impl Group {
    pub fn generate(spec: &GroupSpec) -> Result<Self> {
        let elements = enumerate_group(spec)?;
        Ok(Group {
            field: spec.field.clone(),
            n: spec.n,
            generators: spec.generators.clone(),
            elements,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Subgroup given by an element list closed under multiplication, with chosen generators.
    pub fn subgroup(&self, generators: Vec<Matrix>, elements: Vec<Matrix>) -> Group {
        Group {
            field: self.field.clone(),
            n: self.n,
            generators,
            elements,
        }
    }
}

/// Lexicographic order on the serialized form of a vector (coordinate lists per entry).
pub fn serial_cmp(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Ordering {
    for (&x, &y) in a.iter().zip(b) {
        let o = field.coeffs(x).cmp(&field.coeffs(y));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// A hyperplane `ker l_H`, with `l_H` scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Hyperplane {
    form: Vector,
}

impl Hyperplane {
    pub fn from_form(field: &FieldSpec, form: &[Scalar]) -> Result<Self> {
        let lead = form
            .iter()
            .find(|s| !s.is_zero())
            .ok_or(Error::ZeroPolynomial)?;
        let inv = field.inv(*lead)?;
        Ok(Hyperplane {
            form: linalg::scale(field, inv, form),
        })
    }

    /// `ker z_{i+1}`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut form = vec![Scalar::ZERO; n];
        form[i] = Scalar::ONE;
        Hyperplane { form }
    }

    pub fn form(&self) -> &[Scalar] {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.len()
    }

    pub fn linear_form(&self) -> MultiPoly {
        MultiPoly::linear(&self.form)
    }

    pub fn eval(&self, field: &FieldSpec, v: &[Scalar]) -> Scalar {
        linalg::dot(field, &self.form, v)
    }

    /// Echelon basis of the hyperplane.
    pub fn basis(&self, field: &FieldSpec) -> Vec<Vector> {
        let row = Matrix::from_rows(
            std::iter::once(self.form.clone())
                .chain((1..self.form.len()).map(|_| vec![Scalar::ZERO; self.form.len()]))
                .collect(),
        )
        .expect("square");
        linalg::kernel(field, &row).basis
    }

    /// A vector with `l_H(v) = 1`: the unit vector at the leading coordinate.
    pub fn transversal(&self) -> Vector {
        let lead = self
            .form
            .iter()
            .position(|s| !s.is_zero())
            .expect("nonzero form");
        let mut v = vec![Scalar::ZERO; self.form.len()];
        v[lead] = Scalar::ONE;
        v
    }
}

/// A reflection with its hyperplane, root vector (relative to the normalized form) and eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionInfo {
    pub element: Matrix,
    pub hyperplane: Hyperplane,
    pub root: Vector,
    /// `1 + l_H(root)`: the nonidentity eigenvalue, or 1 for a transvection
    pub eigenvalue: Scalar,
    pub is_transvection: bool,
}

pub fn fixes_pointwise(field: &FieldSpec, g: &Matrix, h: &Hyperplane) -> bool {
    h.basis(field)
        .iter()
        .all(|v| linalg::mat_vec(field, g, v) == *v)
}

/// The root vector `a` with `g(v) = v + form(v) a`.
///
/// `form` need not be normalized; the root vector scales inversely with it.
pub fn root_vector(field: &FieldSpec, g: &Matrix, form: &[Scalar]) -> Result<Vector> {
    let h = Hyperplane::from_form(field, form)?;
    if g.dim() != form.len() {
        return Err(Error::DimensionMismatch {
            expected: form.len(),
            got: g.dim(),
        });
    }
    if !fixes_pointwise(field, g, &h) {
        return Err(Error::NotFixingHyperplane);
    }
    let v0 = h.transversal();
    let gv = linalg::mat_vec(field, g, &v0);
    let moved = linalg::vec_sub(field, &gv, &v0);
    let inv = field.inv(linalg::dot(field, form, &v0))?;
    Ok(linalg::scale(field, inv, &moved))
}

/// The reflecting hyperplane of `g`, if `g` is a reflection.
pub fn reflection_hyperplane(field: &FieldSpec, g: &Matrix) -> Option<Hyperplane> {
    let m = linalg::mat_sub(field, g, &Matrix::identity(g.dim()));
    if linalg::rank(field, &m) != 1 {
        return None;
    }
    // g - I = a l^T, so every nonzero row is a multiple of l
    let row = m
        .rows()
        .into_iter()
        .find(|r| r.iter().any(|s| !s.is_zero()))?;
    Hyperplane::from_form(field, &row).ok()
}

pub fn reflection_info(field: &FieldSpec, g: &Matrix) -> Option<ReflectionInfo> {
    let hyperplane = reflection_hyperplane(field, g)?;
    let root = root_vector(field, g, hyperplane.form()).ok()?;
    let shift = hyperplane.eval(field, &root);
    Some(ReflectionInfo {
        element: g.clone(),
        eigenvalue: field.add(Scalar::ONE, shift),
        is_transvection: shift.is_zero(),
        hyperplane,
        root,
    })
}

/// All reflections among `elements`, in input order.
pub fn classify_reflections(field: &FieldSpec, elements: &[Matrix]) -> Vec<ReflectionInfo> {
    elements
        .iter()
        .filter_map(|g| reflection_info(field, g))
        .collect()
}

/// Distinct reflecting hyperplanes, sorted lexicographically by normalized form.
pub fn reflecting_arrangement(field: &FieldSpec, elements: &[Matrix]) -> Vec<Hyperplane> {
    let mut seen = HashSet::new();
    let mut out: Vec<Hyperplane> = classify_reflections(field, elements)
        .into_iter()
        .filter_map(|r| seen.insert(r.hyperplane.clone()).then_some(r.hyperplane))
        .collect();
    out.sort_by(|a, b| serial_cmp(field, a.form(), b.form()));
    out
}

pub fn pointwise_stabilizer(field: &FieldSpec, elements: &[Matrix], h: &Hyperplane) -> Vec<Matrix> {
    elements
        .iter()
        .filter(|g| fixes_pointwise(field, g, h))
        .cloned()
        .collect()
}

/// Every hyperplane of `F_q^n`, in lexicographic order of normalized forms.
pub fn all_hyperplanes(field: &FieldSpec, n: usize) -> Vec<Hyperplane> {
    let q = field.order() as usize;
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        for code in 0..q.pow(free as u32) {
            let mut form = vec![Scalar::ZERO; n];
            form[lead] = Scalar::ONE;
            let mut c = code;
            for slot in form.iter_mut().skip(lead + 1) {
                *slot = field.element((c % q) as u32).expect("in range");
                c /= q;
            }
            out.push(Hyperplane { form });
        }
    }
    out.sort_by(|a, b| serial_cmp(field, a.form(), b.form()));
    out
}

/// Structure of a group fixing a hyperplane pointwise: a diagonalizable reflection of
/// maximal order and a minimal transvection set generating the rest.
#[derive(Clone, Debug)]
pub struct StabilizerDecomposition {
    pub hyperplane: Hyperplane,
    /// diagonalizable reflection of maximal order, or the identity
    pub sigma: Matrix,
    /// `det(sigma)`
    pub omega: Scalar,
    /// multiplicative order of `omega`
    pub e: u64,
    /// size of the transvection subgroup
    pub k_order: usize,
    /// minimal transvections; their root vectors form a basis over `subfield`
    pub transvections: Vec<Matrix>,
    pub d: usize,
    /// `F_p(omega)`
    pub subfield: Subfield,
    pub order: usize,
}

impl StabilizerDecomposition {
    /// `sigma` followed by the minimal transvections.
    pub fn generators(&self) -> Vec<Matrix> {
        std::iter::once(self.sigma.clone())
            .chain(self.transvections.iter().cloned())
            .collect()
    }
}

fn matrix_cmp(field: &FieldSpec, a: &Matrix, b: &Matrix) -> Ordering {
    serial_cmp(field, a.entries(), b.entries())
}

pub fn stabilizer_decomposition(
    field: &FieldSpec,
    g_h: &[Matrix],
    h: &Hyperplane,
) -> Result<StabilizerDecomposition> {
    let n = h.dim();
    let mut diagonalizable: Vec<(u64, Matrix, Scalar)> = Vec::new();
    let mut transvections: Vec<(Matrix, Vector)> = Vec::new();
    for g in g_h {
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.dim(),
            });
        }
        if !fixes_pointwise(field, g, h) {
            return Err(Error::NotFixingHyperplane);
        }
        if g.is_identity() {
            continue;
        }
        let root = root_vector(field, g, h.form())?;
        let lambda = field.add(Scalar::ONE, h.eval(field, &root));
        if lambda.is_one() {
            transvections.push((g.clone(), root));
        } else {
            diagonalizable.push((field.multiplicative_order(lambda)?, g.clone(), lambda));
        }
    }
    let (sigma, omega, e) = diagonalizable
        .into_iter()
        .min_by(|a, b| b.0.cmp(&a.0).then_with(|| matrix_cmp(field, &a.1, &b.1)))
        .map(|(e, m, l)| (m, l, e))
        .unwrap_or((Matrix::identity(n), Scalar::ONE, 1));
    let subfield = field.subfield_generated(omega);
    transvections.sort_by(|a, b| matrix_cmp(field, &a.0, &b.0));
    let k_order = transvections.len() + 1;

    let mut chosen: Vec<Matrix> = Vec::new();
    let mut roots: Vec<Vector> = Vec::new();
    for (t, root) in &transvections {
        roots.push(root.clone());
        if linalg::subfield_span_dim(field, &roots, &subfield) > chosen.len() {
            chosen.push(t.clone());
        } else {
            roots.pop();
        }
    }
    let d = chosen.len();
    let k_expected = subfield.size().checked_pow(d as u32).unwrap_or(usize::MAX);
    if k_order != k_expected || g_h.len() as u64 != e * k_expected as u64 {
        return Err(Error::Internal(format!(
            "order formula violated: |G_H| = {}, |K| = {k_order}, e = {e}, |F_p(w)| = {}, d = {d}",
            g_h.len(),
            subfield.size()
        )));
    }
    Ok(StabilizerDecomposition {
        hyperplane: h.clone(),
        sigma,
        omega,
        e,
        k_order,
        transvections: chosen,
        d,
        subfield,
        order: g_h.len(),
    })
}

/// Whether the reflections in the group generate it. The trivial group counts as generated.
pub fn is_reflection_generated(field: &FieldSpec, elements: &[Matrix]) -> Result<bool> {
    let n = elements.first().map_or(1, Matrix::dim);
    let reflections: Vec<Matrix> = classify_reflections(field, elements)
        .into_iter()
        .map(|r| r.element)
        .collect();
    let spec = GroupSpec {
        field: field.clone(),
        n,
        generators: reflections,
        order_cap: elements.len().max(1),
    };
    match enumerate_group(&spec) {
        Ok(closure) => Ok(closure.len() == elements.len()),
        Err(Error::OrderCapExceeded { .. }) => Err(Error::Internal(
            "reflections generate more than the group".into(),
        )),
        Err(e) => Err(e),
    }
}

/// The hyperplane fixed pointwise by every element, when the group is a nontrivial
/// hyperplane-fixing group. The trivial group yields `ker z_n`.
pub fn fixed_hyperplane(field: &FieldSpec, elements: &[Matrix]) -> Option<Hyperplane> {
    let n = elements.first()?.dim();
    let arrangement = reflecting_arrangement(field, elements);
    let h = match arrangement.as_slice() {
        [] if elements.iter().all(Matrix::is_identity) => {
            return Some(Hyperplane::coordinate(n, n - 1))
        }
        [h] => h.clone(),
        _ => return None,
    };
    elements
        .iter()
        .all(|g| fixes_pointwise(field, g, &h))
        .then_some(h)
}
