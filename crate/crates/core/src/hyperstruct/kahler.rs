use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebroid::{self, Form};
use crate::coeff::Rational;

use super::{prev, EpsilonSignature, HyperError, MetricG, SymplecticTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HyperkahlerKind {
    Hyperkahler,
    ParaHyperkahler,
}

/// The (para-)hyperkähler structure `(g, N₁, N₂)` recovered from a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperkahlerReport {
    pub kind: HyperkahlerKind,
    pub pseudo_metric: bool,
    /// `g∘N_j + N_j*∘g = 0` for `j = 1, 2`.
    pub hermitian: [bool; 2],
    pub anticommute: bool,
    /// `N₃ = s·N₁N₂`.
    pub n3_sign: i8,
    /// `g♭∘N_i` is closed.
    pub fundamental_closed: [bool; 3],
    /// `g♭∘N_i = s_i ω_i♭` holds with the recorded `s_i`.
    pub round_trip: [bool; 3],
    pub round_trip_sign: [i8; 3],
}

impl HyperkahlerReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.pseudo_metric {
            out.push("g is a pseudo-metric".to_string());
        }
        for (j, ok) in self.hermitian.iter().enumerate() {
            if !ok {
                out.push(format!("(g, N{}) hermitian", j + 1));
            }
        }
        if !self.anticommute {
            out.push("N1 N2 = -N2 N1".to_string());
        }
        for i in 0..3 {
            if !self.fundamental_closed[i] {
                out.push(format!("g N{} closed", i + 1));
            }
            if !self.round_trip[i] {
                out.push(format!("g N{0} recovers w{0}", i + 1));
            }
        }
        out
    }
}

/// Requires `ε₁ε₂ε₃ = −1`; reports every hyperkähler condition rather than
/// stopping at the first failure.
pub fn to_hyperkahler(t: &SymplecticTriple, eps: &EpsilonSignature, g: &MetricG) -> Result<HyperkahlerReport, HyperError> {
    if eps.product != -1 {
        return Err(HyperError::Precondition("eps1 eps2 eps3 must be -1".into()));
    }
    let kind = if eps.eps == [-1, -1, -1] { HyperkahlerKind::Hyperkahler } else { HyperkahlerKind::ParaHyperkahler };
    let gm = &g.gflat;
    let pseudo_metric = gm.is_symmetric() && !gm.determinant()?.is_zero();
    let mut hermitian = [false; 2];
    for (j, h) in hermitian.iter_mut().enumerate() {
        let n = t.n_matrix(j);
        *h = gm.mul(n)?.add(&n.transpose().mul(gm)?)?.is_zero();
    }
    let (n1, n2, n3) = (t.n_matrix(0), t.n_matrix(1), t.n_matrix(2));
    let n12 = n1.mul(n2)?;
    let anticommute = n12 == n2.mul(n1)?.neg();
    let n3_sign = if *n3 == n12 {
        1
    } else if *n3 == n12.neg() {
        -1
    } else {
        0
    };
    let mut fundamental_closed = [false; 3];
    let mut round_trip = [false; 3];
    let mut round_trip_sign = [0i8; 3];
    for i in 0..3 {
        let gn = gm.mul(t.n_matrix(i))?;
        fundamental_closed[i] = match Form::two_form(t.mu().gens(), &gn.transpose()) {
            Ok(f) => algebroid::differential(t.mu(), &f).is_zero(),
            Err(_) => false,
        };
        let s = eps.get(i) * eps.get(prev(i));
        round_trip_sign[i] = s as i8;
        round_trip[i] = gn == t.omega(i).flat().scale_int(s);
    }
    Ok(HyperkahlerReport {
        kind,
        pseudo_metric,
        hermitian,
        anticommute,
        n3_sign,
        fundamental_closed,
        round_trip,
        round_trip_sign,
    })
}

/// Signature `(n₊, n₋)` of `g` at a point, by symmetric `LDLᵀ` congruence
/// with pivoting. Degenerate directions are counted in neither.
pub fn signature_at_point(g: &MetricG, point: &[Rational]) -> Result<(usize, usize), HyperError> {
    if !g.is_symmetric() {
        return Err(HyperError::NotSymmetric);
    }
    Ok(rational_signature(g.gflat.evaluate(point)?))
}

pub(crate) fn rational_signature(mut a: Vec<Vec<Rational>>) -> (usize, usize) {
    let (mut plus, mut minus) = (0, 0);
    let mut active: Vec<usize> = (0..a.len()).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                let off = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = off else { break };
                // e_i ← e_i + e_j makes the diagonal entry 2a_ij ≠ 0.
                for k in 0..a.len() {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..a.len() {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[pivot][pivot].clone();
        if d.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        active.retain(|&r| r != pivot);
        for &r in &active {
            let f = &a[r][pivot] / &d;
            for &c in &active {
                let v = &f * &a[pivot][c];
                a[r][c] -= v;
            }
        }
        for &r in &active {
            a[r][pivot] = Rational::zero();
            a[pivot][r] = Rational::zero();
        }
    }
    (plus, minus)
}
