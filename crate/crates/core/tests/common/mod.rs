//! Component-formula oracles and random fixture generators shared by the
//! integration tests. Nothing here goes through the big bracket.

#![allow(dead_code)]

pub mod matrix;

use hyperforge::algebroid::{AlgebroidSpec, EndoTensor, Form, MultiVector, Section};
use hyperforge::coeff::{CoeffMatrix, Monomial, Poly, RatFunc};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Random polynomial in `n` variables with total degree ≤ `deg` and at most
/// `terms` terms, coefficients in [-3, 3].
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: u32, terms: usize) -> RatFunc {
    let mut acc = Poly::zero();
    for _ in 0..terms {
        let c = rng.gen_range(-3i64..=3);
        if c == 0 {
            continue;
        }
        let mut exps = vec![0u32; n];
        let mut left = if n == 0 { 0 } else { rng.gen_range(0..=deg) };
        while left > 0 {
            exps[rng.gen_range(0..n)] += 1;
            left -= 1;
        }
        acc = &acc + &Poly::term(hyperforge::coeff::integer(c), Monomial::from_exponents(exps));
    }
    RatFunc::from_poly(acc)
}

pub fn random_int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> RatFunc {
    RatFunc::from_int(rng.gen_range(lo..=hi))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, vars: usize, deg: u32) -> CoeffMatrix {
    CoeffMatrix::from_fn(n, n, |_, _| random_poly(rng, vars, deg, 2))
}

pub fn random_antisymmetric(rng: &mut ChaCha8Rng, n: usize, vars: usize, deg: u32) -> CoeffMatrix {
    let mut m = CoeffMatrix::zeros(n, n);
    for a in 0..n {
        for b in a + 1..n {
            let v = random_poly(rng, vars, deg, 2);
            m.set(b, a, -v.clone());
            m.set(a, b, v);
        }
    }
    m
}

/// Random pre-algebroid (no Jacobi requirement) with polynomial anchor and
/// structure functions.
pub fn random_pre_algebroid(rng: &mut ChaCha8Rng, n: usize, d: usize) -> AlgebroidSpec {
    let anchor = CoeffMatrix::from_fn(n, d, |_, _| random_poly(rng, n, 1, 2));
    let mut spec = AlgebroidSpec::new(names(n), d, anchor).unwrap();
    for c in 0..d {
        for a in 0..d {
            for b in a + 1..d {
                spec.set_structure(c, a, b, random_poly(rng, n, 1, 2)).unwrap();
            }
        }
    }
    spec
}

/// Abelian, tangent, so(3) or random pre-algebroid, chosen by `kind % 4`.
pub fn fixture_spec(rng: &mut ChaCha8Rng, kind: usize) -> AlgebroidSpec {
    match kind % 4 {
        0 => {
            let n = rng.gen_range(0..=2);
            let d = rng.gen_range(1..=3);
            AlgebroidSpec::abelian(names(n), d).unwrap()
        }
        1 => AlgebroidSpec::tangent(names(rng.gen_range(1..=4))).unwrap(),
        2 => AlgebroidSpec::so3(),
        _ => {
            let n = rng.gen_range(1..=2);
            let d = rng.gen_range(2..=3);
            random_pre_algebroid(rng, n, d)
        }
    }
}

pub fn random_section(rng: &mut ChaCha8Rng, spec: &AlgebroidSpec) -> Vec<RatFunc> {
    (0..spec.rank()).map(|_| random_poly(rng, spec.dim(), 2, 2)).collect()
}

pub fn add(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mat_apply(m: &CoeffMatrix, v: &[RatFunc]) -> Vec<RatFunc> {
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(RatFunc::zero(), |acc, j| &acc + &(m.get(i, j) * &v[j])))
        .collect()
}

pub fn basis(d: usize, a: usize) -> Vec<RatFunc> {
    (0..d).map(|b| if a == b { RatFunc::one() } else { RatFunc::zero() }).collect()
}

/// Component algebroid data, possibly deformed.
pub struct Oracle {
    pub n: usize,
    pub d: usize,
    /// `anchor[i][a] = ρ^i_a`
    pub anchor: CoeffMatrix,
    /// `c(c, a, b)`
    pub structure: Vec<RatFunc>,
}

impl Oracle {
    pub fn from_spec(spec: &AlgebroidSpec) -> Self {
        let d = spec.rank();
        let mut structure = Vec::with_capacity(d * d * d);
        for c in 0..d {
            for a in 0..d {
                for b in 0..d {
                    structure.push(spec.structure_constant(c, a, b).clone());
                }
            }
        }
        Oracle { n: spec.dim(), d, anchor: spec.anchor().clone(), structure }
    }

    pub fn c(&self, c: usize, a: usize, b: usize) -> &RatFunc {
        &self.structure[(c * self.d + a) * self.d + b]
    }

    /// `ρ(X)·f = Σ ρ^i_a X^a ∂_i f`.
    pub fn anchor_apply(&self, x: &[RatFunc], f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        for i in 0..self.n {
            let df = f.derivative(i);
            if df.is_zero() {
                continue;
            }
            for a in 0..self.d {
                acc = &acc + &(&(self.anchor.get(i, a) * &x[a]) * &df);
            }
        }
        acc
    }

    /// `[X,Y]^c = ρ(X)Y^c − ρ(Y)X^c + c^c_{ab} X^a Y^b`.
    pub fn bracket(&self, x: &[RatFunc], y: &[RatFunc]) -> Vec<RatFunc> {
        (0..self.d)
            .map(|c| {
                let mut acc = &self.anchor_apply(x, &y[c]) - &self.anchor_apply(y, &x[c]);
                for a in 0..self.d {
                    for b in 0..self.d {
                        acc = &acc + &(&(self.c(c, a, b) * &x[a]) * &y[b]);
                    }
                }
                acc
            })
            .collect()
    }

    /// The algebroid `(A, [·,·]_N, ρ∘N)`.
    pub fn deformed(&self, n: &CoeffMatrix) -> Oracle {
        let anchor = self.anchor.mul(n).unwrap();
        let mut structure = Vec::with_capacity(self.d.pow(3));
        for c in 0..self.d {
            for a in 0..self.d {
                for b in 0..self.d {
                    structure.push(self.deformed_bracket(n, &basis(self.d, a), &basis(self.d, b))[c].clone());
                }
            }
        }
        Oracle { n: self.n, d: self.d, anchor, structure }
    }

    /// `[X,Y]_N = [NX,Y] + [X,NY] − N[X,Y]`.
    pub fn deformed_bracket(&self, n: &CoeffMatrix, x: &[RatFunc], y: &[RatFunc]) -> Vec<RatFunc> {
        let nx = mat_apply(n, x);
        let ny = mat_apply(n, y);
        let s = add(&self.bracket(&nx, y), &self.bracket(x, &ny));
        sub(&s, &mat_apply(n, &self.bracket(x, y)))
    }

    /// `TN(X,Y) = [NX,NY] − N[X,Y]_N`.
    pub fn torsion(&self, n: &CoeffMatrix, x: &[RatFunc], y: &[RatFunc]) -> Vec<RatFunc> {
        let l = self.bracket(&mat_apply(n, x), &mat_apply(n, y));
        sub(&l, &mat_apply(n, &self.deformed_bracket(n, x, y)))
    }

    /// Jacobiator `[[X,Y],Z] + cyclic`.
    pub fn jacobiator(&self, x: &[RatFunc], y: &[RatFunc], z: &[RatFunc]) -> Vec<RatFunc> {
        let a = self.bracket(&self.bracket(x, y), z);
        let b = self.bracket(&self.bracket(y, z), x);
        let c = self.bracket(&self.bracket(z, x), y);
        add(&add(&a, &b), &c)
    }

    /// Cartan formula for `dσ` evaluated on basis sections, `σ` given by its
    /// component function on index lists.
    pub fn differential(&self, degree: usize, sigma: &dyn Fn(&[usize]) -> RatFunc, idx: &[usize]) -> RatFunc {
        assert_eq!(idx.len(), degree + 1);
        let e = |a: usize| basis(self.d, a);
        let eval = |v: &[Vec<RatFunc>]| -> RatFunc {
            // σ evaluated on arbitrary sections by multilinearity
            multilinear(self.d, degree, sigma, v)
        };
        let mut acc = RatFunc::zero();
        for i in 0..=degree {
            let rest: Vec<Vec<RatFunc>> = idx.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &a)| e(a)).collect();
            let term = self.anchor_apply(&e(idx[i]), &eval(&rest));
            acc = if i % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        for i in 0..=degree {
            for j in i + 1..=degree {
                let mut args = vec![self.bracket(&e(idx[i]), &e(idx[j]))];
                args.extend(idx.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, &a)| e(a)));
                let term = eval(&args);
                acc = if (i + j) % 2 == 0 { &acc + &term } else { &acc - &term };
            }
        }
        acc
    }
}

/// `σ(v₁, …, v_k)` from components on basis index lists.
pub fn multilinear(d: usize, k: usize, sigma: &dyn Fn(&[usize]) -> RatFunc, v: &[Vec<RatFunc>]) -> RatFunc {
    assert_eq!(v.len(), k);
    let mut acc = RatFunc::zero();
    let mut idx = vec![0usize; k];
    loop {
        let mut coef = RatFunc::one();
        for (slot, &a) in idx.iter().enumerate() {
            coef = &coef * &v[slot][a];
            if coef.is_zero() {
                break;
            }
        }
        if !coef.is_zero() {
            acc = &acc + &(&coef * &sigma(&idx));
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return acc;
            }
            idx[pos] += 1;
            if idx[pos] < d {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Bracket of 1-forms induced by a bivector `Π` over the algebroid `o`:
/// `[α,β]_π = L_{π♯α}β − L_{π♯β}α − d(π(α,β))`.
pub fn pi_bracket(o: &Oracle, pi: &CoeffMatrix, alpha: &[RatFunc], beta: &[RatFunc]) -> Vec<RatFunc> {
    let sharp = |a: &[RatFunc]| mat_apply(&pi.transpose(), a);
    let pair = |a: &[RatFunc], x: &[RatFunc]| a.iter().zip(x).fold(RatFunc::zero(), |acc, (p, q)| &acc + &(p * q));
    // (L_X β)_b = ρ(X)β_b − β([X, e_b])
    let lie = |x: &[RatFunc], b: &[RatFunc]| -> Vec<RatFunc> {
        (0..o.d).map(|k| &o.anchor_apply(x, &b[k]) - &pair(b, &o.bracket(x, &basis(o.d, k)))).collect()
    };
    let pab = pair(beta, &sharp(alpha));
    let dpab: Vec<RatFunc> = (0..o.d).map(|k| o.anchor_apply(&basis(o.d, k), &pab)).collect();
    sub(&sub(&lie(&sharp(alpha), beta), &lie(&sharp(beta), alpha)), &dpab)
}

pub fn section(spec: &AlgebroidSpec, comps: Vec<RatFunc>) -> Section {
    Section::new(spec.gens(), comps).unwrap()
}

pub fn one_form(spec: &AlgebroidSpec, comps: &[RatFunc]) -> Form {
    Form::one_form(spec.gens(), comps).unwrap()
}

pub fn endo(spec: &AlgebroidSpec, m: CoeffMatrix) -> EndoTensor {
    EndoTensor::new(spec.gens(), m).unwrap()
}

pub fn bivector(spec: &AlgebroidSpec, m: &CoeffMatrix) -> MultiVector {
    MultiVector::bivector(spec.gens(), m).unwrap()
}

/// Six closed symplectic forms on ℝ⁴ in coordinates (x, y, p, q).
pub fn r4_forms() -> Vec<CoeffMatrix> {
    // (a, b, sign) entries with W[a][b] = sign, W[b][a] = −sign
    let spec: [[(usize, usize, i64); 2]; 6] = [
        [(0, 2, 1), (1, 3, 1)],
        [(0, 3, 1), (2, 1, 1)],
        [(0, 1, 1), (2, 3, -1)],
        [(0, 2, 1), (1, 3, -1)],
        [(0, 3, 1), (2, 1, -1)],
        [(0, 1, 1), (2, 3, 1)],
    ];
    spec.iter()
        .map(|pairs| {
            let mut w = CoeffMatrix::zeros(4, 4);
            for &(a, b, s) in pairs {
                w.set(a, b, RatFunc::from_int(s));
                w.set(b, a, RatFunc::from_int(-s));
            }
            w
        })
        .collect()
}
