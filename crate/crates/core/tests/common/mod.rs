//! Test oracles that avoid the symbolic code paths under test: polynomials are
//! evaluated at random points of a large extension field, where a nonzero
//! polynomial of low degree almost never vanishes.
#![allow(dead_code)]

use hyperjac::gf::{FieldSpec, Scalar};
use hyperjac::group::{Group, GroupSpec};
use hyperjac::linalg::Matrix;
use hyperjac::mpoly::MultiPoly;
use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A large field containing `small`, with the embedding as a table indexed by packed value.
pub struct Ext {
    pub small: FieldSpec,
    pub big: FieldSpec,
    pub embed: Vec<Scalar>,
}

impl Ext {
    pub fn new(small: &FieldSpec) -> Ext {
        let p = small.p();
        let big_order = match p {
            2 => 1 << 12,
            3 => 729,
            5 => 625,
            7 => 2401,
            _ => panic!("no extension table for p = {p}"),
        };
        let big = FieldSpec::of_order(big_order).unwrap();
        assert_eq!(
            big.k() % small.k(),
            0,
            "F_{} does not embed in F_{big_order}",
            small.order()
        );
        let modulus = small.modulus().to_vec();
        let eval_mod = |r: Scalar| {
            modulus.iter().rev().fold(big.zero(), |acc, &c| {
                big.add(big.mul(acc, r), big.from_int(c as i64))
            })
        };
        let root = big
            .elements()
            .find(|&r| eval_mod(r).is_zero())
            .expect("modulus splits in the extension");
        let embed = small
            .elements()
            .map(|a| {
                small
                    .coeffs(a)
                    .iter()
                    .enumerate()
                    .fold(big.zero(), |acc, (i, &c)| {
                        big.add(
                            acc,
                            big.mul(big.from_int(c as i64), big.pow(root, i as u64)),
                        )
                    })
            })
            .collect();
        Ext {
            small: small.clone(),
            big,
            embed,
        }
    }

    pub fn lift(&self, a: Scalar) -> Scalar {
        self.embed[a.index() as usize]
    }

    pub fn random_point(&self, rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
        (0..n)
            .map(|_| {
                self.big
                    .element(rng.random_range(0..self.big.order()))
                    .unwrap()
            })
            .collect()
    }

    pub fn eval(&self, f: &MultiPoly, v: &[Scalar]) -> Scalar {
        let big = &self.big;
        f.terms().fold(big.zero(), |acc, (m, &c)| {
            let term = (0..f.n_vars()).fold(self.lift(c), |t, i| {
                big.mul(t, big.pow(v[i], m.exp(i) as u64))
            });
            big.add(acc, term)
        })
    }

    /// `d f / d z_j` at `v`, from the exponent vectors directly.
    pub fn partial_at(&self, f: &MultiPoly, j: usize, v: &[Scalar]) -> Scalar {
        let big = &self.big;
        f.terms().fold(big.zero(), |acc, (m, &c)| {
            let e = m.exp(j);
            if e == 0 {
                return acc;
            }
            let coef = big.mul_int(self.lift(c), e as u64);
            let term = (0..f.n_vars()).fold(coef, |t, i| {
                let k = if i == j { e - 1 } else { m.exp(i) };
                big.mul(t, big.pow(v[i], k as u64))
            });
            big.add(acc, term)
        })
    }

    /// Jacobian determinant at `v` by the Leibniz formula.
    pub fn jacobian_at(&self, fs: &[MultiPoly], v: &[Scalar]) -> Scalar {
        let n = fs.len();
        let big = &self.big;
        let m: Vec<Vec<Scalar>> = fs
            .iter()
            .map(|f| (0..n).map(|j| self.partial_at(f, j, v)).collect())
            .collect();
        (0..n).permutations(n).fold(big.zero(), |acc, perm| {
            let inversions = (0..n)
                .tuple_combinations()
                .filter(|&(a, b)| perm[a] > perm[b])
                .count();
            let prod = (0..n).fold(big.one(), |t, i| big.mul(t, m[i][perm[i]]));
            if inversions % 2 == 0 {
                big.add(acc, prod)
            } else {
                big.sub(acc, prod)
            }
        })
    }

    /// `g v` with `g` lifted into the extension.
    pub fn apply(&self, g: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
        let big = &self.big;
        (0..g.dim())
            .map(|i| {
                (0..g.dim()).fold(big.zero(), |acc, j| {
                    big.add(acc, big.mul(self.lift(g.get(i, j)), v[j]))
                })
            })
            .collect()
    }

    /// Whether `f(g v) = f(v)` at `trials` random points for every generator.
    pub fn invariant(
        &self,
        rng: &mut ChaCha8Rng,
        group: &Group,
        f: &MultiPoly,
        trials: usize,
    ) -> bool {
        (0..trials).all(|_| {
            let v = self.random_point(rng, group.n);
            let fv = self.eval(f, &v);
            group
                .generators
                .iter()
                .all(|g| self.eval(f, &self.apply(g, &v)) == fv)
        })
    }

    /// Whether `a = u b` for one nonzero constant `u`, judged at random points.
    pub fn proportional(
        &self,
        rng: &mut ChaCha8Rng,
        n: usize,
        a: &dyn Fn(&[Scalar]) -> Scalar,
        b: &dyn Fn(&[Scalar]) -> Scalar,
        trials: usize,
    ) -> bool {
        let big = &self.big;
        let mut ratio: Option<Scalar> = None;
        for _ in 0..trials {
            let v = self.random_point(rng, n);
            let (x, y) = (a(&v), b(&v));
            if y.is_zero() {
                if !x.is_zero() {
                    return false;
                }
                continue;
            }
            let r = big.div(x, y).unwrap();
            if r.is_zero() || ratio.is_some_and(|u| u != r) {
                return false;
            }
            ratio = Some(r);
        }
        ratio.is_some()
    }
}

pub fn gl_order(n: u32, q: u64) -> u64 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

pub fn group_of(field: &FieldSpec, n: usize, generators: Vec<Matrix>) -> Group {
    Group::generate(&GroupSpec::new(field.clone(), n, generators).unwrap()).unwrap()
}

pub fn builtin_group(name: &str, args: &[&str]) -> (hyperjac::fixtures::Fixture, Group) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let fx = hyperjac::fixtures::builtin(name, &args).unwrap();
    let g = Group::generate(&fx.spec).unwrap();
    (fx, g)
}

/// A random group fixing a random hyperplane pointwise: products of maps `v -> v + l(v) a`.
pub fn random_hyperplane_group(
    rng: &mut ChaCha8Rng,
    field: &FieldSpec,
    n: usize,
) -> (Group, Vec<Scalar>) {
    let q = field.order();
    let rand_scalar = |rng: &mut ChaCha8Rng| field.element(rng.random_range(0..q)).unwrap();
    let form: Vec<Scalar> = loop {
        let f: Vec<Scalar> = (0..n).map(|_| rand_scalar(rng)).collect();
        if f.iter().any(|s| !s.is_zero()) {
            break f;
        }
    };
    let count = rng.random_range(1..=3);
    let mut generators = Vec::new();
    while generators.len() < count {
        let a: Vec<Scalar> = (0..n).map(|_| rand_scalar(rng)).collect();
        let la = (0..n).fold(field.zero(), |acc, i| {
            field.add(acc, field.mul(form[i], a[i]))
        });
        if a.iter().all(|s| s.is_zero()) || field.add(field.one(), la).is_zero() {
            continue;
        }
        let rows = a.iter().enumerate().map(|(i, &ai)| {
            form.iter()
                .enumerate()
                .map(|(j, &lj)| {
                    field.add(
                        if i == j { field.one() } else { field.zero() },
                        field.mul(ai, lj),
                    )
                })
                .collect()
        });
        generators.push(Matrix::from_rows(rows.collect()).unwrap());
    }
    (group_of(field, n, generators), form)
}
