//! Builtin groups: general and special linear groups, hyperplane stabilizers,
//! cyclic diagonal groups and the three-transvection example.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, Scalar};
use crate::group::GroupSpec;
use crate::invariants::{
    dickson_invariants, example41_printed, sl_invariants, stabilizer_invariants,
};
use crate::linalg::{Matrix, MAX_DIM};
use crate::mpoly::MultiPoly;

/// A named builtin group, optionally with a known family of basic invariants.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub spec: GroupSpec,
    pub labels: Vec<String>,
    pub family: Option<Family>,
}

/// A builtin family of basic invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Dickson,
    SpecialLinear,
    /// `u_i = z_i^q - z_n^{q-1} z_i` with `u_n = z_n^{q-1}` (full) or `z_n`
    Stabilizer {
        full: bool,
    },
    /// the printed invariants for `a = b = 1`, `c` the class of `x`
    Example41,
}

impl Fixture {
    /// The family's basic invariants, computed on demand.
    pub fn family_invariants(&self) -> Option<Result<Vec<MultiPoly>>> {
        let field = &self.spec.field;
        let n = self.spec.n;
        self.family.map(|family| match family {
            Family::Dickson => dickson_invariants(field, n),
            Family::SpecialLinear => sl_invariants(field, n),
            Family::Stabilizer { full } => stabilizer_invariants(field, n, full),
            Family::Example41 => {
                example41_printed(field, field.one(), field.one(), field.x_class())
            }
        })
    }
}

/// `(name, argument names, description)` for every builtin.
pub const REGISTRY: &[(&str, &str, &str)] = &[
    (
        "gl",
        "N Q",
        "general linear group GL_N(F_Q), with Dickson invariants",
    ),
    (
        "sl",
        "N Q",
        "special linear group SL_N(F_Q), with Q and the upper Dickson invariants",
    ),
    (
        "stab-gl",
        "N Q",
        "pointwise stabilizer of z_N = 0 in GL_N(F_Q), with its closed-form invariants",
    ),
    (
        "stab-sl",
        "N Q",
        "transvections fixing z_N = 0 in GL_N(F_Q), with its closed-form invariants",
    ),
    (
        "cyclic",
        "N Q",
        "diag(1, ..., 1, g) for a primitive g of F_Q",
    ),
    (
        "example41",
        "Q",
        "three transvections I+E13, I+E23, I+c(E13+E23) over F_Q, c the class of x",
    ),
];

fn elementary(n: usize, i: usize, j: usize, c: Scalar) -> Matrix {
    let mut m = Matrix::identity(n);
    m.set(i, j, c);
    m
}

/// Powers `1, x, ..., x^{k-1}` of the generator: an additive basis over `F_p`.
fn prime_field_basis(field: &FieldSpec) -> Vec<Scalar> {
    let x = field.x_class();
    (0..field.k())
        .map(|m| {
            if m == 0 {
                field.one()
            } else {
                field.pow(x, m as u64)
            }
        })
        .collect()
}

fn last_diagonal(field: &FieldSpec, n: usize, g: Scalar) -> Matrix {
    let mut d = vec![field.one(); n];
    d[n - 1] = g;
    Matrix::diagonal(&d)
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(())
}

pub fn sl_generators(field: &FieldSpec, n: usize) -> Vec<Matrix> {
    let basis = prime_field_basis(field);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.extend(basis.iter().map(|&c| elementary(n, i, j, c)));
            }
        }
    }
    out
}

pub fn gl_generators(field: &FieldSpec, n: usize) -> Vec<Matrix> {
    let mut out = sl_generators(field, n);
    let g = field.primitive_element();
    if !g.is_one() {
        out.push(last_diagonal(field, n, g));
    }
    if out.is_empty() {
        out.push(Matrix::identity(n));
    }
    out
}

pub fn stab_sl_generators(field: &FieldSpec, n: usize) -> Vec<Matrix> {
    let basis = prime_field_basis(field);
    let mut out: Vec<Matrix> = (0..n - 1)
        .flat_map(|i| basis.iter().map(move |&c| elementary(n, i, n - 1, c)))
        .collect();
    if out.is_empty() {
        out.push(Matrix::identity(n));
    }
    out
}

pub fn stab_gl_generators(field: &FieldSpec, n: usize) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = stab_sl_generators(field, n)
        .into_iter()
        .filter(|m| !m.is_identity())
        .collect();
    out.push(last_diagonal(field, n, field.primitive_element()));
    out
}

pub fn example41_generators(field: &FieldSpec, a: Scalar, b: Scalar, c: Scalar) -> Vec<Matrix> {
    let z = field.zero();
    let o = field.one();
    vec![
        Matrix::from_rows(vec![vec![o, z, a], vec![z, o, z], vec![z, z, o]]).expect("3x3"),
        Matrix::from_rows(vec![vec![o, z, z], vec![z, o, b], vec![z, z, o]]).expect("3x3"),
        Matrix::from_rows(vec![vec![o, z, c], vec![z, o, c], vec![z, z, o]]).expect("3x3"),
    ]
}

fn parse_args(name: &str, args: &[String], expected: usize) -> Result<Vec<u32>> {
    if args.len() != expected {
        return Err(Error::Parse(format!(
            "builtin {name} takes {expected} argument(s), got {}",
            args.len()
        )));
    }
    args.iter()
        .map(|a| {
            a.parse::<u32>()
                .map_err(|_| Error::Parse(format!("builtin {name}: bad argument {a:?}")))
        })
        .collect()
}

/// Looks up a builtin by name, e.g. `("gl", ["2", "3"])`.
pub fn builtin(name: &str, args: &[String]) -> Result<Fixture> {
    let (field, n) = if name == "example41" {
        let [q] = parse_args(name, args, 1)?[..] else {
            unreachable!()
        };
        (FieldSpec::of_order(q)?, 3)
    } else {
        let [n, q] = parse_args(name, args, 2)?[..] else {
            unreachable!()
        };
        check_dim(n as usize)?;
        (FieldSpec::of_order(q)?, n as usize)
    };
    let (generators, family) = match name {
        "gl" => (gl_generators(&field, n), Some(Family::Dickson)),
        "sl" => (sl_generators(&field, n), Some(Family::SpecialLinear)),
        "stab-gl" => (
            stab_gl_generators(&field, n),
            Some(Family::Stabilizer { full: true }),
        ),
        "stab-sl" => (
            stab_sl_generators(&field, n),
            Some(Family::Stabilizer { full: false }),
        ),
        "cyclic" => (
            vec![last_diagonal(&field, n, field.primitive_element())],
            None,
        ),
        "example41" => {
            let c = field.x_class();
            if field.is_in_prime_field(c) {
                return Err(Error::InvalidField(format!(
                    "example41 needs a proper extension of F_{}",
                    field.p()
                )));
            }
            (
                example41_generators(&field, field.one(), field.one(), c),
                Some(Family::Example41),
            )
        }
        _ => return Err(Error::Parse(format!("unknown builtin {name:?}"))),
    };
    let labels = match name {
        "example41" => vec!["A".into(), "B".into(), "C".into()],
        _ => (1..=generators.len()).map(|i| format!("g{i}")).collect(),
    };
    let spec = GroupSpec::new(field, n, generators)?;
    let full = std::iter::once(name.to_string())
        .chain(args.iter().cloned())
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Fixture {
        name: full,
        spec,
        labels,
        family,
    })
}
