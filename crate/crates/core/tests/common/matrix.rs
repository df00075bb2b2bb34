//! Plain rational matrices with a cofactor inverse, sharing no code with the
//! library's Gauss–Jordan path, and the search for product-`+1` triples.

use hyperforge::coeff::{CoeffMatrix, RatFunc};
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

pub type M = Vec<Vec<Rational64>>;

pub fn from(m: &CoeffMatrix) -> M {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let v = m.get(i, j).evaluate(&[]).expect("constant");
                    Rational64::new(v.numer().try_into().unwrap(), v.denom().try_into().unwrap())
                })
                .collect()
        })
        .collect()
}

pub fn to_coeff(m: &M) -> CoeffMatrix {
    CoeffMatrix::from_fn(m.len(), m.len(), |i, j| {
        RatFunc::from_rational(hyperforge::coeff::rational(*m[i][j].numer(), *m[i][j].denom()))
    })
}

pub fn t(a: &M) -> M {
    (0..a.len()).map(|i| (0..a.len()).map(|j| a[j][i]).collect()).collect()
}

pub fn mul(a: &M, b: &M) -> M {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn scale(a: &M, s: i64) -> M {
    a.iter().map(|r| r.iter().map(|v| v * s).collect()).collect()
}

pub fn id(n: usize) -> M {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }).collect()).collect()
}

fn minor(a: &M, r: usize, c: usize) -> M {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect())
        .collect()
}

pub fn det(a: &M) -> Rational64 {
    if a.is_empty() {
        return Rational64::one();
    }
    (0..a.len())
        .map(|j| {
            let s = if j % 2 == 0 { 1 } else { -1 };
            a[0][j] * det(&minor(a, 0, j)) * s
        })
        .sum()
}

pub fn inv(a: &M) -> Option<M> {
    let d = det(a);
    if d.is_zero() {
        return None;
    }
    let n = a.len();
    Some(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                        det(&minor(a, j, i)) * s / d
                    })
                    .collect()
            })
            .collect(),
    )
}

/// `N_i = Π_{i−1}ᵀ W_{i+1}ᵀ`, 0-based slots.
pub fn transitions(w: &[M; 3]) -> Option<[M; 3]> {
    let p = [inv(&w[0])?, inv(&w[1])?, inv(&w[2])?];
    let n = |i: usize| mul(&t(&p[(i + 2) % 3]), &t(&w[(i + 1) % 3]));
    Some([n(0), n(1), n(2)])
}

pub fn square_sign(n: &M) -> Option<i8> {
    let sq = mul(n, n);
    if sq == id(n.len()) {
        Some(1)
    } else if sq == scale(&id(n.len()), -1) {
        Some(-1)
    } else {
        None
    }
}

pub fn epsilon(w: &[M; 3]) -> Option<[i8; 3]> {
    let n = transitions(w)?;
    Some([square_sign(&n[0])?, square_sign(&n[1])?, square_sign(&n[2])?])
}

/// Characteristic polynomial coefficients `c₀ + c₁λ + … + λⁿ` by Faddeev–LeVerrier.
pub fn char_poly(a: &M) -> Vec<Rational64> {
    let n = a.len();
    let mut coeffs = vec![Rational64::zero(); n + 1];
    coeffs[n] = Rational64::one();
    let mut m = id(n);
    for k in 1..=n {
        let am = mul(a, &m);
        let tr: Rational64 = (0..n).map(|i| am[i][i]).sum();
        let c = -tr / Rational64::from_integer(k as i64);
        coeffs[n - k] = c;
        m = am;
        for i in 0..n {
            m[i][i] += c;
        }
    }
    coeffs
}

fn sign_changes(c: &[Rational64]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// For a real-rooted polynomial, Descartes' rule counts roots exactly.
pub fn inertia(a: &M) -> (usize, usize) {
    let c = char_poly(a);
    let neg: Vec<Rational64> = c.iter().enumerate().map(|(k, v)| if k % 2 == 1 { -v } else { *v }).collect();
    (sign_changes(&c), sign_changes(&neg))
}

/// Structured search for an ε-signature with product `+1`: `ω₁` is the first
/// basis form, `ω₂` and `ω₃` range over all combinations of the six basis
/// forms with coefficients in {−1, 0, 1} (729 candidates each). Candidates are
/// filtered by `N₃² = ±Id` and `N₂² = ±Id` before pairing. Each hit carries
/// whether its three forms are pairwise non-proportional.
pub fn positive_product_search() -> Vec<([M; 3], bool)> {
    let basis: Vec<M> = super::r4_forms().iter().map(from).collect();
    let mut combos = Vec::new();
    for code in 0..729usize {
        let mut c = code;
        let mut m = scale(&basis[0], 0);
        for b in &basis {
            let k = (c % 3) as i64 - 1;
            c /= 3;
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] += b[i][j] * k;
                }
            }
        }
        if !det(&m).is_zero() {
            combos.push(m);
        }
    }
    let w1 = basis[0].clone();
    let p1 = inv(&w1).unwrap();
    let proportional = |a: &M, b: &M| {
        [-1i64, 1].iter().any(|&s| scale(a, s) == *b) || {
            let (mut r, mut ok) = (None, true);
            for i in 0..4 {
                for j in 0..4 {
                    if a[i][j].is_zero() != b[i][j].is_zero() {
                        ok = false;
                    } else if !a[i][j].is_zero() {
                        let q = b[i][j] / a[i][j];
                        ok &= *r.get_or_insert(q) == q;
                    }
                }
            }
            ok
        }
    };
    let second: Vec<&M> = combos
        .iter()
        .filter(|w2| {
            let n3 = mul(&t(&inv(w2).unwrap()), &t(&w1));
            square_sign(&n3).is_some()
        })
        .collect();
    let third: Vec<&M> = combos
        .iter()
        .filter(|w3| {
            let n2 = mul(&t(&p1), &t(w3));
            square_sign(&n2).is_some()
        })
        .collect();
    let mut found = Vec::new();
    for w2 in &second {
        for w3 in &third {
            let ws = [w1.clone(), (*w2).clone(), (*w3).clone()];
            if let Some(e) = epsilon(&ws) {
                if e[0] * e[1] * e[2] == 1 {
                    let distinct = !proportional(&ws[0], &ws[1]) && !proportional(&ws[0], &ws[2]) && !proportional(&ws[1], &ws[2]);
                    found.push((ws, distinct));
                }
            }
        }
    }
    found
}
