//! Basic invariants: the inductive construction for groups fixing a hyperplane,
//! the Dickson, `SL_n` and hyperplane-stabilizer families, and a Kemper-style verifier.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Scalar};
use crate::group::{
    all_hyperplanes, enumerate_group, root_vector, stabilizer_decomposition, Group, GroupSpec,
    Hyperplane, StabilizerDecomposition,
};
use crate::linalg::{self, Matrix, Vector};
use crate::mpoly::{self, is_power_of, orbit_additive_product, Monomial, MultiPoly};

/// Homogeneous generators of an invariant ring together with their degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicInvariants {
    pub polys: Vec<MultiPoly>,
    pub degrees: Vec<u32>,
    /// `d_i - 1`, in the same order as `polys`
    pub exponents: Vec<u32>,
}

impl BasicInvariants {
    pub fn new(polys: Vec<MultiPoly>) -> Result<Self> {
        let mut degrees = Vec::with_capacity(polys.len());
        for f in &polys {
            if f.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            degrees.push(f.homogeneous_degree().ok_or(Error::NotHomogeneous)?);
        }
        if degrees.contains(&0) {
            return Err(Error::ZeroDegree);
        }
        let exponents = degrees.iter().map(|d| d - 1).collect();
        Ok(BasicInvariants {
            polys,
            degrees,
            exponents,
        })
    }

    pub fn exponent_sum(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn degree_product(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).product()
    }

    /// Degrees in ascending order.
    pub fn sorted_degrees(&self) -> Vec<u32> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }
}

/// One induction step of the construction: adjoining a transvection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub transvection: Matrix,
    /// index of the minimal-degree non-invariant polynomial
    pub pivot: usize,
    /// `t f_i - f_i = b_i l^{d_i}`
    pub b: Vec<Scalar>,
    pub c: Vec<Scalar>,
    /// `F_p(w) b_pivot`
    pub additive_set: Vec<Scalar>,
    /// Jacobian after the step is a scalar times `l^m`
    pub jacobian_exponent: u32,
    /// polynomials after the step, in the original coordinates
    pub polys: Vec<MultiPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub hyperplane: Hyperplane,
    /// columns: a basis of `H` followed by a vector on which the form is 1
    pub basis: Matrix,
    pub sigma: Matrix,
    pub e: u64,
    pub initial_exponent: u32,
    pub steps: Vec<TraceStep>,
}

/// Result of the invariance and Kemper checks on a proposed set of basic invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub degrees: Vec<u32>,
    pub invariant: bool,
    pub jacobian_nonzero: bool,
    pub degree_product_matches: bool,
    pub pass: bool,
}

pub fn verify_basic_invariants(
    field: &FieldSpec,
    group: &Group,
    polys: &[MultiPoly],
) -> Result<VerificationReport> {
    if polys.len() != group.n {
        return Err(Error::DimensionMismatch {
            expected: group.n,
            got: polys.len(),
        });
    }
    if let Some(f) = polys.iter().find(|f| f.n_vars() != group.n) {
        return Err(Error::DimensionMismatch {
            expected: group.n,
            got: f.n_vars(),
        });
    }
    let basics = BasicInvariants::new(polys.to_vec())?;
    let mut invariant = true;
    'outer: for g in &group.generators {
        for f in polys {
            if f.act(field, g)? != *f {
                invariant = false;
                break 'outer;
            }
        }
    }
    let jacobian_nonzero = !mpoly::jacobian(field, polys)?.is_zero();
    let degree_product_matches = basics.degree_product() == group.order() as u64;
    Ok(VerificationReport {
        degrees: basics.degrees,
        invariant,
        jacobian_nonzero,
        degree_product_matches,
        pass: invariant && jacobian_nonzero && degree_product_matches,
    })
}

/// Basic invariants of a finite group fixing `h` pointwise, built one transvection at a time.
///
/// `g_h` lists every element of the group. The result is expressed in the original
/// coordinates and its Jacobian is a scalar multiple of `l_H^m`, `m` the exponent sum.
pub fn construct_hyperplane_invariants(
    field: &FieldSpec,
    g_h: &[Matrix],
    h: &Hyperplane,
) -> Result<(BasicInvariants, ConstructionTrace)> {
    let dec = stabilizer_decomposition(field, g_h, h)?;
    let ts = dec.transvections.clone();
    construct_from_decomposition(field, g_h, &dec, &ts)
}

/// As [`construct_hyperplane_invariants`], consuming the minimal transvections in the given order.
pub fn construct_with_transvection_order(
    field: &FieldSpec,
    g_h: &[Matrix],
    h: &Hyperplane,
    order: &[usize],
) -> Result<(BasicInvariants, ConstructionTrace)> {
    let dec = stabilizer_decomposition(field, g_h, h)?;
    let mut seen = vec![false; dec.d];
    if order.len() != dec.d
        || order
            .iter()
            .any(|&i| i >= dec.d || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::Internal(format!(
            "transvection order {order:?} is not a permutation of 0..{}",
            dec.d
        )));
    }
    let ts: Vec<Matrix> = order
        .iter()
        .map(|&i| dec.transvections[i].clone())
        .collect();
    construct_from_decomposition(field, g_h, &dec, &ts)
}

/// Columns of the adapted basis: `H` first, then an eigenvector of `sigma` with form value 1.
fn adapted_basis(field: &FieldSpec, dec: &StabilizerDecomposition) -> Result<Matrix> {
    let h = &dec.hyperplane;
    let last = if dec.sigma.is_identity() {
        h.transversal()
    } else {
        let root = root_vector(field, &dec.sigma, h.form())?;
        let inv = field.inv(h.eval(field, &root))?;
        linalg::scale(field, inv, &root)
    };
    let mut cols: Vec<Vector> = h.basis(field);
    cols.push(last);
    Matrix::from_columns(&cols)
}

fn is_scaled_power(f: &MultiPoly, var: usize, m: u32) -> bool {
    let n = f.n_vars();
    let mut exps = vec![0; n];
    exps[var] = m;
    f.len() == 1 && !f.coeff(&Monomial::new(&exps)).is_zero()
}

fn construct_from_decomposition(
    field: &FieldSpec,
    g_h: &[Matrix],
    dec: &StabilizerDecomposition,
    transvections: &[Matrix],
) -> Result<(BasicInvariants, ConstructionTrace)> {
    let h = &dec.hyperplane;
    let n = h.dim();
    let last = n - 1;
    let p = field.p() as u64;

    let generators: Vec<Matrix> = std::iter::once(dec.sigma.clone())
        .chain(transvections.iter().cloned())
        .collect();
    let spec = GroupSpec {
        field: field.clone(),
        n,
        generators: generators.clone(),
        order_cap: g_h.len(),
    };
    if enumerate_group(&spec).map(|c| c.len()).ok() != Some(g_h.len()) {
        return Err(Error::Internal(
            "sigma and the minimal transvections do not generate the stabilizer".into(),
        ));
    }

    let basis = adapted_basis(field, dec)?;
    let basis_inv = linalg::mat_inv(field, &basis)?;
    let original = |fs: &[MultiPoly]| -> Result<Vec<MultiPoly>> {
        fs.iter().map(|f| f.act(field, &basis_inv)).collect()
    };

    let zn = MultiPoly::var(n, last);
    let mut fs: Vec<MultiPoly> = (0..last).map(|i| MultiPoly::var(n, i)).collect();
    fs.push(zn.pow(field, dec.e));
    let mut m = (dec.e - 1) as u32;
    let mut steps = Vec::with_capacity(transvections.len());

    for t in transvections {
        let local = linalg::change_of_basis(field, t, &basis)?;
        let mut b = Vec::with_capacity(n);
        for f in &fs {
            let diff = f.act(field, &local)?.sub(field, f);
            let d = f.homogeneous_degree().expect("homogeneous");
            if diff.is_zero() {
                b.push(Scalar::ZERO);
            } else if is_scaled_power(&diff, last, d) {
                b.push(diff.leading_term().expect("nonzero").1);
            } else {
                return Err(Error::Internal(format!(
                    "t f - f is not a multiple of l^{d}"
                )));
            }
        }
        let degrees: Vec<u32> = fs
            .iter()
            .map(|f| f.homogeneous_degree().expect("homogeneous"))
            .collect();
        let pivot = (0..n)
            .filter(|&i| !b[i].is_zero())
            .min_by_key(|&i| (degrees[i], i))
            .ok_or_else(|| Error::Internal("transvection already fixes every invariant".into()))?;
        let d1 = degrees[pivot];
        let b1 = b[pivot];

        let mut c = vec![Scalar::ZERO; n];
        let f1 = fs[pivot].clone();
        for i in 0..n {
            if i == pivot || b[i].is_zero() {
                continue;
            }
            if !degrees[i].is_multiple_of(d1) || !is_power_of((degrees[i] / d1) as u64, p) {
                return Err(Error::Internal(format!(
                    "degree ratio {}/{d1} is not a power of p",
                    degrees[i]
                )));
            }
            let r = (degrees[i] / d1) as u64;
            c[i] = field.neg(field.div(b[i], field.pow(b1, r))?);
            fs[i] = fs[i].add(field, &f1.pow(field, r).scale(field, c[i]));
        }

        let additive_set: Vec<Scalar> = dec
            .subfield
            .elements
            .iter()
            .map(|&s| field.mul(s, b1))
            .collect();
        let hx = orbit_additive_product(field, &additive_set, &zn.pow(field, d1 as u64))?;
        fs[pivot] = hx.compose(field, &f1);
        m += d1 * (additive_set.len() as u32 - 1);

        let jac = mpoly::jacobian(field, &fs)?;
        if !is_scaled_power(&jac, last, m) {
            return Err(Error::Internal(format!(
                "intermediate Jacobian is not a multiple of l^{m}"
            )));
        }
        steps.push(TraceStep {
            transvection: t.clone(),
            pivot,
            b,
            c,
            additive_set,
            jacobian_exponent: m,
            polys: original(&fs)?,
        });
    }

    let polys = original(&fs)?;
    let basics = BasicInvariants::new(polys)?;
    for &d in &basics.degrees[..last] {
        if !is_power_of(d as u64, p) {
            return Err(Error::Internal(format!("degree {d} is not a power of p")));
        }
    }
    if basics.degrees[last] as u64 != dec.e {
        return Err(Error::Internal(
            "last degree differs from the order of omega".into(),
        ));
    }
    if m != basics.exponent_sum() {
        return Err(Error::Internal(
            "Jacobian exponent differs from the exponent sum".into(),
        ));
    }
    let jac = mpoly::jacobian(field, &basics.polys)?;
    let l = h.linear_form();
    if jac.degree() != Some(m) || mpoly::linear_multiplicity(field, &jac, &l)? != Some(m) {
        return Err(Error::Internal(
            "Jacobian is not a power of the hyperplane form".into(),
        ));
    }
    let group = Group {
        field: field.clone(),
        n,
        generators,
        elements: g_h.to_vec(),
    };
    if !verify_basic_invariants(field, &group, &basics.polys)?.pass {
        return Err(Error::VerificationFailed);
    }
    let trace = ConstructionTrace {
        hyperplane: h.clone(),
        basis,
        sigma: dec.sigma.clone(),
        e: dec.e,
        initial_exponent: (dec.e - 1) as u32,
        steps,
    };
    Ok((basics, trace))
}

/// Largest `q^n` accepted by the builtin families.
pub const FAMILY_SIZE_GUARD: u64 = 512;

fn guard(n: usize, q: u32) -> Result<()> {
    if n == 0 || n > 3 {
        return Err(Error::SizeGuard(format!("n = {n} outside 1..=3")));
    }
    if (q as u64).pow(n as u32) > FAMILY_SIZE_GUARD {
        return Err(Error::SizeGuard(format!(
            "{q}^{n} exceeds {FAMILY_SIZE_GUARD}"
        )));
    }
    Ok(())
}

/// Matrix of monomials `z_j^{q^i}` for the listed row exponents `i`.
fn frobenius_minor(n: usize, q: u64, rows: &[u32]) -> Vec<Vec<MultiPoly>> {
    rows.iter()
        .map(|&i| {
            (0..n)
                .map(|j| {
                    let mut exps = vec![0; n];
                    exps[j] = q.pow(i) as u32;
                    MultiPoly::monomial(n, Monomial::new(&exps), Scalar::ONE)
                })
                .collect()
        })
        .collect()
}

/// The Dickson invariants `d_{n,0}, ..., d_{n,n-1}` of `GL_n(F_q)`, as determinant quotients.
pub fn dickson_invariants(field: &FieldSpec, n: usize) -> Result<Vec<MultiPoly>> {
    let q = field.order();
    guard(n, q)?;
    let q = q as u64;
    let base: Vec<u32> = (0..n as u32).collect();
    let denom = mpoly::poly_determinant(field, n, &frobenius_minor(n, q, &base));
    (0..n as u32)
        .map(|k| {
            let rows: Vec<u32> = (0..=n as u32).filter(|&i| i != k).collect();
            let num = mpoly::poly_determinant(field, n, &frobenius_minor(n, q, &rows));
            mpoly::exact_divide(field, &num, &denom)?
                .ok_or_else(|| Error::Internal(format!("Dickson quotient {k} is not exact")))
        })
        .collect()
}

/// Every vector of `F_q^n`, zero first.
fn all_vectors(field: &FieldSpec, n: usize) -> Vec<Vector> {
    let q = field.order();
    (0..q.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let s = field.element(code % q).expect("in range");
                    code /= q;
                    s
                })
                .collect()
        })
        .collect()
}

/// All `dim`-dimensional subspaces of `F_q^n`, each as its reduced echelon basis.
fn subspaces(field: &FieldSpec, n: usize, dim: usize) -> Vec<Vec<Vector>> {
    fn pivot_sets(
        n: usize,
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            pivot_sets(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    pivot_sets(n, dim, 0, &mut Vec::new(), &mut sets);
    let q = field.order();
    let mut out = Vec::new();
    for pivots in sets {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                ((pc + 1)..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        for mut code in 0..q.pow(free.len() as u32) {
            let mut rows: Vec<Vector> = pivots
                .iter()
                .map(|&pc| {
                    let mut v = vec![Scalar::ZERO; n];
                    v[pc] = Scalar::ONE;
                    v
                })
                .collect();
            for &(r, c) in &free {
                rows[r][c] = field.element(code % q).expect("in range");
                code /= q;
            }
            out.push(rows);
        }
    }
    out
}

/// `d_{n,i} = (-1)^{n-i} sum_{W} prod_{v in V* \ W} v`, over `i`-dimensional subspaces `W` of linear forms.
///
/// Exponential in `q^n`; used as an independent check of [`dickson_invariants`].
pub fn dickson_by_orbits(field: &FieldSpec, n: usize) -> Result<Vec<MultiPoly>> {
    guard(n, field.order())?;
    let forms = all_vectors(field, n);
    (0..n)
        .map(|i| {
            let mut total = MultiPoly::zero(n);
            for w in subspaces(field, n, i) {
                let sub = linalg::Subspace::span(field, n, &w);
                let mut prod = MultiPoly::one(n);
                for v in &forms {
                    if !sub.contains(field, v) {
                        prod = prod.mul(field, &MultiPoly::linear(v));
                    }
                }
                total = total.add(field, &prod);
            }
            Ok(if (n - i) % 2 == 1 {
                total.neg(field)
            } else {
                total
            })
        })
        .collect()
}

/// Product of the normalized linear forms of all hyperplanes of `F_q^n`.
pub fn q_form(field: &FieldSpec, n: usize) -> Result<MultiPoly> {
    guard(n, field.order())?;
    Ok(all_hyperplanes(field, n)
        .iter()
        .fold(MultiPoly::one(n), |acc, h| acc.mul(field, &h.linear_form())))
}

/// Basic invariants `Q, d_{n,1}, ..., d_{n,n-1}` of `SL_n(F_q)`.
pub fn sl_invariants(field: &FieldSpec, n: usize) -> Result<Vec<MultiPoly>> {
    let mut out = vec![q_form(field, n)?];
    out.extend(dickson_invariants(field, n)?.into_iter().skip(1));
    Ok(out)
}

/// Basic invariants of the pointwise stabilizer of `z_n = 0`: `u_i = z_i^q - z_n^{q-1} z_i`
/// for `i < n`, then `u_n = z_n^{q-1}` for the full stabilizer in `GL_n` or `u_n = z_n`
/// for its transvection subgroup.
pub fn stabilizer_invariants(field: &FieldSpec, n: usize, full: bool) -> Result<Vec<MultiPoly>> {
    if n == 0 {
        return Err(Error::UnsupportedDimension(n));
    }
    let q = field.order();
    let last = n - 1;
    let zn = MultiPoly::var(n, last);
    let zn_q1 = zn.pow(field, (q - 1) as u64);
    let mut out: Vec<MultiPoly> = (0..last)
        .map(|i| {
            let zi = MultiPoly::var(n, i);
            zi.pow(field, q as u64).sub(field, &zn_q1.mul(field, &zi))
        })
        .collect();
    out.push(if full { zn_q1 } else { zn });
    Ok(out)
}

/// The three invariants printed for the group generated by
/// `I + a E_13`, `I + b E_23`, `I + c (E_13 + E_23)`.
///
/// With `u_i = z_i^p - s^{p-1} z_i z_3^{p-1}`:
/// `f_1 = u_1^p - c^{p-1}(a^{p-1} - c^{p-1}) u_1 z_3^{p(p-1)}`,
/// `f_2 = u_2 - (b^{p-1} - c^{p-1})/(a^{p-1} - c^{p-1}) u_1`, `f_3 = z_3`.
/// These are invariant in characteristic 2; for odd `p` the formula for `f_1` is not.
pub fn example41_printed(
    field: &FieldSpec,
    a: Scalar,
    b: Scalar,
    c: Scalar,
) -> Result<Vec<MultiPoly>> {
    let p = field.p() as u64;
    let z = |i| MultiPoly::var(3, i);
    let u = |i: usize, s: Scalar| {
        let lead = z(i).pow(field, p);
        let tail = z(i)
            .mul(field, &z(2).pow(field, p - 1))
            .scale(field, field.pow(s, p - 1));
        lead.sub(field, &tail)
    };
    let (ap, bp, cp) = (
        field.pow(a, p - 1),
        field.pow(b, p - 1),
        field.pow(c, p - 1),
    );
    let u1 = u(0, a);
    let u2 = u(1, b);
    let k1 = field.mul(cp, field.sub(ap, cp));
    let f1 = u1.pow(field, p).sub(
        field,
        &u1.mul(field, &z(2).pow(field, p * (p - 1)))
            .scale(field, k1),
    );
    let k2 = field.div(field.sub(bp, cp), field.sub(ap, cp))?;
    let f2 = u2.sub(field, &u1.scale(field, k2));
    Ok(vec![f1, f2, z(2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::pointwise_stabilizer;

    fn mat(f: &FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn poly(f: &FieldSpec, n: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            f,
            n,
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e), f.from_int(*c))),
        )
    }

    #[test]
    fn single_transvection() {
        let f = FieldSpec::of_order(2).unwrap();
        let g = Group::generate(
            &GroupSpec::new(f.clone(), 2, vec![mat(&f, &[&[1, 1], &[0, 1]])]).unwrap(),
        )
        .unwrap();
        let h = Hyperplane::coordinate(2, 1);
        let (basics, trace) = construct_hyperplane_invariants(&f, &g.elements, &h).unwrap();
        assert_eq!(basics.degrees, vec![2, 1]);
        assert_eq!(basics.polys[0], poly(&f, 2, &[(&[2, 0], 1), (&[1, 1], 1)]));
        assert_eq!(basics.polys[1], MultiPoly::var(2, 1));
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].jacobian_exponent, 1);
    }

    #[test]
    fn cyclic_base_case() {
        let f = FieldSpec::of_order(4).unwrap();
        let c = f.x_class();
        let g = Group::generate(
            &GroupSpec::new(f.clone(), 2, vec![Matrix::diagonal(&[Scalar::ONE, c])]).unwrap(),
        )
        .unwrap();
        let h = Hyperplane::coordinate(2, 1);
        let (basics, trace) = construct_hyperplane_invariants(&f, &g.elements, &h).unwrap();
        assert_eq!(
            basics.polys,
            vec![MultiPoly::var(2, 0), MultiPoly::var(2, 1).pow(&f, 3)]
        );
        assert_eq!(basics.exponent_sum(), 2);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn stabilizer_in_gl2_f3() {
        let f = FieldSpec::of_order(3).unwrap();
        let gens = vec![
            mat(&f, &[&[2, 0], &[0, 1]]),
            mat(&f, &[&[1, 1], &[0, 1]]),
            mat(&f, &[&[1, 0], &[1, 1]]),
        ];
        let g = Group::generate(&GroupSpec::new(f.clone(), 2, gens).unwrap()).unwrap();
        let h = Hyperplane::coordinate(2, 1);
        let g_h = pointwise_stabilizer(&f, &g.elements, &h);
        let (basics, _) = construct_hyperplane_invariants(&f, &g_h, &h).unwrap();
        assert_eq!(basics.sorted_degrees(), vec![2, 3]);
        // u_1 = z_1^3 - z_2^2 z_1, u_2 = z_2^2
        let u1 = poly(&f, 2, &[(&[3, 0], 1), (&[1, 2], -1)]);
        let sub = Group {
            field: f.clone(),
            n: 2,
            generators: g_h.clone(),
            elements: g_h.clone(),
        };
        let report =
            verify_basic_invariants(&f, &sub, &[u1, MultiPoly::var(2, 1).pow(&f, 2)]).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn dickson_small() {
        let f = FieldSpec::of_order(2).unwrap();
        let d = dickson_invariants(&f, 2).unwrap();
        assert_eq!(
            d[1],
            poly(&f, 2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)])
        );
        assert_eq!(d[0], poly(&f, 2, &[(&[2, 1], 1), (&[1, 2], 1)]));
        let d3 = dickson_invariants(&f, 3).unwrap();
        assert_eq!(
            d3.iter()
                .map(|p| p.homogeneous_degree().unwrap())
                .collect::<Vec<_>>(),
            vec![7, 6, 4]
        );
    }

    #[test]
    fn dickson_agrees_with_orbit_sums() {
        for (n, q) in [(2, 2), (2, 3), (3, 2), (1, 5), (2, 4)] {
            let f = FieldSpec::of_order(q).unwrap();
            assert_eq!(
                dickson_invariants(&f, n).unwrap(),
                dickson_by_orbits(&f, n).unwrap(),
                "n={n} q={q}"
            );
        }
    }

    #[test]
    fn q_forms() {
        let f2 = FieldSpec::of_order(2).unwrap();
        assert_eq!(q_form(&f2, 1).unwrap(), MultiPoly::var(1, 0));
        assert_eq!(
            q_form(&f2, 2).unwrap(),
            poly(&f2, 2, &[(&[2, 1], 1), (&[1, 2], 1)])
        );
        let f3 = FieldSpec::of_order(3).unwrap();
        assert_eq!(q_form(&f3, 2).unwrap().homogeneous_degree(), Some(4));
        assert!(matches!(
            q_form(&FieldSpec::of_order(9).unwrap(), 3),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn sl_degrees() {
        let f3 = FieldSpec::of_order(3).unwrap();
        let s = BasicInvariants::new(sl_invariants(&f3, 2).unwrap()).unwrap();
        assert_eq!(s.degrees, vec![4, 6]);
        let f2 = FieldSpec::of_order(2).unwrap();
        let s = BasicInvariants::new(sl_invariants(&f2, 2).unwrap()).unwrap();
        assert_eq!(s.degrees, vec![3, 2]);
    }

    #[test]
    fn verifier_rejects() {
        let f = FieldSpec::of_order(2).unwrap();
        let gens = vec![mat(&f, &[&[0, 1], &[1, 0]]), mat(&f, &[&[1, 1], &[0, 1]])];
        let g = Group::generate(&GroupSpec::new(f.clone(), 2, gens).unwrap()).unwrap();
        let r =
            verify_basic_invariants(&f, &g, &[MultiPoly::var(2, 0), MultiPoly::var(2, 1)]).unwrap();
        assert!(!r.invariant && r.jacobian_nonzero && !r.pass);
        let mixed = MultiPoly::var(2, 0).add(&f, &MultiPoly::var(2, 1).pow(&f, 2));
        assert_eq!(
            verify_basic_invariants(&f, &g, &[mixed, MultiPoly::var(2, 1)]),
            Err(Error::NotHomogeneous)
        );
        assert!(verify_basic_invariants(&f, &g, &[MultiPoly::var(2, 0)]).is_err());
    }

    #[test]
    fn printed_example_fails_in_odd_characteristic() {
        let f9 = FieldSpec::of_order(9).unwrap();
        let c = f9.x_class();
        let (one, zero) = (f9.one(), f9.zero());
        let gens = vec![
            Matrix::from_rows(vec![
                vec![one, zero, one],
                vec![zero, one, zero],
                vec![zero, zero, one],
            ])
            .unwrap(),
            Matrix::from_rows(vec![
                vec![one, zero, zero],
                vec![zero, one, one],
                vec![zero, zero, one],
            ])
            .unwrap(),
            Matrix::from_rows(vec![
                vec![one, zero, c],
                vec![zero, one, c],
                vec![zero, zero, one],
            ])
            .unwrap(),
        ];
        let g = Group::generate(&GroupSpec::new(f9.clone(), 3, gens).unwrap()).unwrap();
        assert_eq!(g.order(), 27);
        let printed = example41_printed(&f9, one, one, c).unwrap();
        assert!(
            !verify_basic_invariants(&f9, &g, &printed)
                .unwrap()
                .invariant
        );
        let (basics, _) =
            construct_hyperplane_invariants(&f9, &g.elements, &Hyperplane::coordinate(3, 2))
                .unwrap();
        assert_eq!(basics.sorted_degrees(), vec![1, 3, 9]);
    }
}
