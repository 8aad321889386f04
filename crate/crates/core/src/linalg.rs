//! Exact vectors and matrices over a finite field.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Scalar, Subfield};

/// Largest supported vector-space dimension.
pub const MAX_DIM: usize = 6;

pub type Vector = Vec<Scalar>;

/// Square matrix, row-major. Acts on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Scalar::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = Scalar::ONE;
        }
        Matrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![Scalar::ZERO; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        let m = Matrix::from_rows(cols.to_vec())?;
        Ok(m.transpose())
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zero(n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vector {
        self.entries[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn rows(&self) -> Vec<Vector> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut m = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| self.get(i, j) == if i == j { Scalar::ONE } else { Scalar::ZERO })
        })
    }

    /// Entries as nested power-basis coordinate vectors.
    pub fn to_repr(&self, field: &FieldSpec) -> Vec<Vec<Vec<u32>>> {
        self.rows()
            .into_iter()
            .map(|r| r.into_iter().map(|s| field.coeffs(s)).collect())
            .collect()
    }

    pub fn from_repr(field: &FieldSpec, repr: &[Vec<Vec<u32>>]) -> Result<Self> {
        let rows = repr
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| field.from_coeffs(c))
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

pub fn dot(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::ZERO, |acc, (&x, &y)| {
        field.add(acc, field.mul(x, y))
    })
}

pub fn scale(field: &FieldSpec, c: Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|&x| field.mul(c, x)).collect()
}

pub fn vec_add(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn vec_sub(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn mat_mul(field: &FieldSpec, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.n;
    let mut out = Matrix::zero(n);
    for i in 0..n {
        for k in 0..n {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let cur = out.get(i, j);
                out.set(i, j, field.add(cur, field.mul(x, b.get(k, j))));
            }
        }
    }
    out
}

pub fn mat_vec(field: &FieldSpec, a: &Matrix, v: &[Scalar]) -> Vector {
    (0..a.n).map(|i| dot(field, &a.row(i), v)).collect()
}

pub fn mat_sub(field: &FieldSpec, a: &Matrix, b: &Matrix) -> Matrix {
    Matrix {
        n: a.n,
        entries: vec_sub(field, &a.entries, &b.entries),
    }
}

/// Reduced row echelon form: zero rows dropped, pivots equal to one, rows sorted by pivot column.
pub fn rref(field: &FieldSpec, rows: Vec<Vector>) -> (Vec<Vector>, Vec<usize>) {
    let mut rows = rows;
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        rows[r] = scale(field, inv, &rows[r]);
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let c = rows[i][col];
                let sub = scale(field, c, &rows[r]);
                rows[i] = vec_sub(field, &rows[i], &sub);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(field: &FieldSpec, m: &Matrix) -> usize {
    rref(field, m.rows()).1.len()
}

pub fn det(field: &FieldSpec, m: &Matrix) -> Scalar {
    let n = m.n;
    let mut a = m.rows();
    let mut d = Scalar::ONE;
    for col in 0..n {
        let Some(sel) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Scalar::ZERO;
        };
        if sel != col {
            a.swap(sel, col);
            d = field.neg(d);
        }
        let pivot = a[col][col];
        d = field.mul(d, pivot);
        let inv = field.inv(pivot).expect("pivot is nonzero");
        for i in col + 1..n {
            if !a[i][col].is_zero() {
                let c = field.mul(a[i][col], inv);
                let sub = scale(field, c, &a[col]);
                a[i] = vec_sub(field, &a[i], &sub);
            }
        }
    }
    d
}

pub fn mat_inv(field: &FieldSpec, m: &Matrix) -> Result<Matrix> {
    let n = m.n;
    let rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut r = m.row(i);
            r.extend((0..n).map(|j| if i == j { Scalar::ONE } else { Scalar::ZERO }));
            r
        })
        .collect();
    let (red, pivots) = rref(field, rows);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::SingularMatrix);
    }
    Matrix::from_rows(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `P^{-1} M P`: the matrix of `M` in the basis given by the columns of `P`.
pub fn change_of_basis(field: &FieldSpec, m: &Matrix, new_basis: &Matrix) -> Result<Matrix> {
    let inv = mat_inv(field, new_basis)?;
    Ok(mat_mul(field, &mat_mul(field, &inv, m), new_basis))
}

/// A subspace of `F^n` held as a reduced echelon basis, so equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(field: &FieldSpec, ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: Vec::new(),
            };
        }
        let (basis, _) = rref(field, vectors.to_vec());
        Subspace { ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, field: &FieldSpec, v: &[Scalar]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(field, rows).1.len() == self.basis.len()
    }
}

/// Null space of `M` acting on column vectors.
pub fn kernel(field: &FieldSpec, m: &Matrix) -> Subspace {
    let n = m.n;
    let (red, pivots) = rref(field, m.rows());
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::ZERO; n];
            v[f] = Scalar::ONE;
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = field.neg(row[f]);
            }
            v
        })
        .collect();
    Subspace::span(field, n, &vectors)
}

/// Dimension of the span of `vectors` when scalars are restricted to `sub`.
///
/// Each coordinate is expanded in a basis of the ambient field over `sub`,
/// then ordinary elimination runs over `sub`. Only the dimension is reported,
/// so the choice of relative basis does not matter.
pub fn subfield_span_dim(field: &FieldSpec, vectors: &[Vector], sub: &Subfield) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let basis = relative_basis(field, sub);
    let coords = coordinate_table(field, sub, &basis);
    let flat: Vec<Vector> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .flat_map(|s| coords[s.index() as usize].iter().copied())
                .collect()
        })
        .collect();
    // elements of sub are closed under the ambient operations, so rref over the
    // ambient field computes the rank over sub
    rref(field, flat).1.len()
}

/// Greedy basis of the ambient field over `sub`, drawn from the power basis `1, x, x^2, ...`.
fn relative_basis(field: &FieldSpec, sub: &Subfield) -> Vec<Scalar> {
    let mut basis: Vec<Scalar> = Vec::new();
    let mut span = vec![Scalar::ZERO];
    let x = field.x_class();
    let mut cand = Scalar::ONE;
    let target = field.order() as usize;
    for _ in 0..field.k().max(1) {
        if span.len() == target {
            break;
        }
        if !span.contains(&cand) {
            let mut next = Vec::with_capacity(span.len() * sub.size());
            for &s in &span {
                for &c in &sub.elements {
                    next.push(field.add(s, field.mul(c, cand)));
                }
            }
            span = next;
            basis.push(cand);
        }
        cand = field.mul(cand, x);
    }
    debug_assert_eq!(span.len(), target);
    basis
}

/// For each ambient element (by packed index) its coordinates over `sub` in `basis`.
fn coordinate_table(field: &FieldSpec, sub: &Subfield, basis: &[Scalar]) -> Vec<Vector> {
    let mut table = vec![Vec::new(); field.order() as usize];
    let m = basis.len();
    let s = sub.size();
    let total = s.pow(m as u32);
    for code in 0..total {
        let mut c = code;
        let mut coords = Vec::with_capacity(m);
        let mut value = Scalar::ZERO;
        for &b in basis {
            let e = sub.elements[c % s];
            c /= s;
            coords.push(e);
            value = field.add(value, field.mul(e, b));
        }
        table[value.index() as usize] = coords;
    }
    table
}
