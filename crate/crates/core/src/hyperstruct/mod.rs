//! ε-hypersymplectic structures: triples of symplectic forms, their transition
//! tensors, the metric `g`, the identity suite, induced structures,
//! classification and the (para-)hyperkähler correspondence.
//!
//! Indices live in ℤ₃ with representatives 1, 2, 3; arrays are 0-based, so
//! slot `i` holds index `i + 1`. Matrices act on column vectors with
//! `ω♭ = Wᵀ`, `π♯ = Πᵀ` and `Π = W⁻¹`.

mod induced;
mod kahler;
mod relations;

use serde::Serialize;
use thiserror::Error;

use crate::algebroid::{self, AlgebroidError, EndoTensor, Form, MultiVector, Mu};
use crate::coeff::{CoeffError, CoeffMatrix};

pub use induced::{
    induced_structures, is_omega_n, is_p_omega, is_pn, nijenhuis_compatible, poisson_compatible, InducedInventory,
    InducedPair, NijenhuisCompatibility, PairKind,
};
pub use kahler::{signature_at_point, to_hyperkahler, HyperkahlerKind, HyperkahlerReport};
pub use relations::check_structure_relations;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperError {
    #[error("form {0} is not antisymmetric")]
    NotAntisymmetric(usize),
    #[error("form {0} is not closed")]
    NotClosed(usize),
    #[error("form {0} is degenerate")]
    Degenerate(usize),
    #[error("inverse of form {0} is not Poisson")]
    NotPoisson(usize),
    #[error("inconsistent: {0}")]
    Inconsistent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("metric is not symmetric")]
    NotSymmetric,
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Slot of index `i − 1` in ℤ₃.
pub(crate) fn prev(i: usize) -> usize {
    (i + 2) % 3
}

/// Slot of index `i + 1` in ℤ₃.
pub(crate) fn next(i: usize) -> usize {
    (i + 1) % 3
}

/// Three closed nondegenerate 2-forms with their inverse Poisson bivectors
/// and transition tensors `N_i = π_{i−1}♯∘ω_{i+1}♭`.
#[derive(Clone, Debug)]
pub struct SymplecticTriple {
    mu: Mu,
    omega: [Form; 3],
    pi: [MultiVector; 3],
    n: [EndoTensor; 3],
}

impl SymplecticTriple {
    pub fn mu(&self) -> &Mu {
        &self.mu
    }

    pub fn omega(&self, i: usize) -> &Form {
        &self.omega[i]
    }

    pub fn pi(&self, i: usize) -> &MultiVector {
        &self.pi[i]
    }

    pub fn n(&self, i: usize) -> &EndoTensor {
        &self.n[i]
    }

    /// `W_i`, with `W[a][b] = ω_i(e_a, e_b)`.
    pub fn w(&self, i: usize) -> CoeffMatrix {
        self.omega[i].matrix()
    }

    /// `Π_i = W_i⁻¹`.
    pub fn pi_matrix(&self, i: usize) -> CoeffMatrix {
        self.pi[i].matrix()
    }

    pub fn n_matrix(&self, i: usize) -> &CoeffMatrix {
        self.n[i].matrix()
    }

    pub fn rank(&self) -> usize {
        self.mu.gens().rank()
    }

    /// `(ω₁, ω₂, ω₃) ↦ (ω₂, ω₃, ω₁)` applied `times` times; then `ε'_i = ε_{i+times}`.
    pub fn rotated(&self, times: usize) -> SymplecticTriple {
        let mut t = self.clone();
        let r = times % 3;
        t.omega.rotate_left(r);
        t.pi.rotate_left(r);
        t.n.rotate_left(r);
        t
    }
}

/// Validates `W₁, W₂, W₃` (closed, then nondegenerate), inverts them and
/// builds the transition tensors.
pub fn build_triple(mu: &Mu, w: [&CoeffMatrix; 3]) -> Result<SymplecticTriple, HyperError> {
    let gens = mu.gens();
    let mut omega = Vec::with_capacity(3);
    let mut pi = Vec::with_capacity(3);
    for (i, wi) in w.iter().enumerate() {
        let form = match Form::two_form(gens, wi) {
            Ok(f) => f,
            Err(AlgebroidError::NotAntisymmetric) => return Err(HyperError::NotAntisymmetric(i + 1)),
            Err(e) => return Err(e.into()),
        };
        if !algebroid::differential(mu, &form).is_zero() {
            return Err(HyperError::NotClosed(i + 1));
        }
        let inv = match wi.inverse() {
            Ok(m) => m,
            Err(CoeffError::Singular) => return Err(HyperError::Degenerate(i + 1)),
            Err(e) => return Err(e.into()),
        };
        let p = MultiVector::bivector(gens, &inv)?;
        if !algebroid::schouten(mu, &p, &p).is_zero() {
            return Err(HyperError::NotPoisson(i + 1));
        }
        omega.push(form);
        pi.push(p);
    }
    let omega: [Form; 3] = omega.try_into().expect("three forms");
    let pi: [MultiVector; 3] = pi.try_into().expect("three bivectors");
    let mut n = Vec::with_capacity(3);
    for i in 0..3 {
        let m = pi[prev(i)].sharp().mul(&omega[next(i)].flat())?;
        n.push(EndoTensor::new(gens, m)?);
    }
    let n: [EndoTensor; 3] = n.try_into().expect("three tensors");
    Ok(SymplecticTriple { mu: mu.clone(), omega, pi, n })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EpsilonSignature {
    pub eps: [i8; 3],
    pub product: i8,
}

impl EpsilonSignature {
    pub fn new(eps: [i8; 3]) -> Self {
        EpsilonSignature { eps, product: eps[0] * eps[1] * eps[2] }
    }

    pub fn get(&self, slot: usize) -> i64 {
        i64::from(self.eps[slot % 3])
    }

    pub fn product(&self) -> i64 {
        i64::from(self.product)
    }

    pub fn rotated(&self, times: usize) -> Self {
        let mut e = self.eps;
        e.rotate_left(times % 3);
        EpsilonSignature::new(e)
    }
}

/// `N_i² = ε_i Id` for each `i`, testing `+Id` then `−Id`; `None` when some
/// `N_i²` is neither. The equivalent form `ω_{i+1}♭∘π_{i−1}♯ = ε_i ω_{i−1}♭∘π_{i+1}♯`
/// is checked as well and must agree.
pub fn epsilon_signature(t: &SymplecticTriple) -> Option<EpsilonSignature> {
    let d = t.rank();
    let id = CoeffMatrix::identity(d);
    let mut eps = [0i8; 3];
    for i in 0..3 {
        let n = t.n_matrix(i);
        let sq = n.mul(n).ok()?;
        eps[i] = if sq == id {
            1
        } else if sq == id.neg() {
            -1
        } else {
            return None;
        };
        let lhs = t.omega(next(i)).flat().mul(&t.pi(prev(i)).sharp()).ok()?;
        let rhs = t.omega(prev(i)).flat().mul(&t.pi(next(i)).sharp()).ok()?.scale_int(i64::from(eps[i]));
        if lhs != rhs {
            return None;
        }
    }
    Some(EpsilonSignature::new(eps))
}

/// `g♭` and its inverse as matrices: `g(X, Y) = ⟨g♭X, Y⟩ = Yᵀ G X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricG {
    pub gflat: CoeffMatrix,
    pub ginv: CoeffMatrix,
}

impl MetricG {
    pub fn is_symmetric(&self) -> bool {
        self.gflat.is_symmetric()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.gflat.is_antisymmetric()
    }

    /// `g` as a 2-form (when antisymmetric): `W_g = Gᵀ`.
    pub fn as_form(&self, mu: &Mu) -> Result<Form, HyperError> {
        Ok(Form::two_form(mu.gens(), &self.gflat.transpose())?)
    }

    /// `g⁻¹` as a bivector (when antisymmetric): `Π_g = (G⁻¹)ᵀ`.
    pub fn inverse_as_bivector(&self, mu: &Mu) -> Result<MultiVector, HyperError> {
        Ok(MultiVector::bivector(mu.gens(), &self.ginv.transpose())?)
    }
}

/// `g♭ = ε₃ε₂ ω₃♭∘π₁♯∘ω₂♭`, checked against all three cyclic forms
/// `ε_{i−1}ε_{i+1} ω_{i−1}♭∘π_i♯∘ω_{i+1}♭`.
pub fn metric_g(t: &SymplecticTriple, eps: &EpsilonSignature) -> Result<MetricG, HyperError> {
    let formula = |i: usize| -> Result<CoeffMatrix, HyperError> {
        let m = t.omega(prev(i)).flat().mul(&t.pi(i).sharp())?.mul(&t.omega(next(i)).flat())?;
        Ok(m.scale_int(eps.get(prev(i)) * eps.get(next(i))))
    };
    let gflat = formula(0)?;
    for i in 1..3 {
        if formula(i)? != gflat {
            return Err(HyperError::Inconsistent(format!("cyclic formula for g with i = {} disagrees", i + 1)));
        }
    }
    let ginv = gflat.inverse()?;
    Ok(MetricG { gflat, ginv })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StructClass {
    NotEpsilonHypersymplectic,
    Hypersymplectic,
    ParaHypersymplectic,
    PositiveProduct,
}

impl StructClass {
    pub fn from_signature(eps: Option<&EpsilonSignature>) -> Self {
        match eps {
            None => StructClass::NotEpsilonHypersymplectic,
            Some(e) if e.eps == [-1, -1, -1] => StructClass::Hypersymplectic,
            Some(e) if e.product == -1 => StructClass::ParaHypersymplectic,
            Some(_) => StructClass::PositiveProduct,
        }
    }

    pub const ALL: [StructClass; 4] = [
        StructClass::NotEpsilonHypersymplectic,
        StructClass::Hypersymplectic,
        StructClass::ParaHypersymplectic,
        StructClass::PositiveProduct,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

impl IdentityCheck {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        IdentityCheck { name: name.into(), passed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricReport {
    pub gflat: Vec<Vec<String>>,
    pub ginv: Vec<Vec<String>>,
    pub symmetric: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub class: StructClass,
    /// Signature of the triple in the given order.
    pub input_epsilon: Option<EpsilonSignature>,
    /// Cyclic shift applied before the remaining checks (para case only).
    pub rotation: usize,
    pub epsilon: Option<EpsilonSignature>,
    pub metric: Option<MetricReport>,
    pub suite: Vec<IdentityCheck>,
    pub induced: Option<InducedInventory>,
    pub hyperkahler: Option<HyperkahlerReport>,
}

impl ClassificationReport {
    pub fn failed_identities(&self) -> Vec<String> {
        let mut out: Vec<String> = self.suite.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        if let Some(inv) = &self.induced {
            out.extend(inv.failures());
        }
        if let Some(hk) = &self.hyperkahler {
            out.extend(hk.failures());
        }
        out
    }

    pub fn all_passed(&self) -> bool {
        self.failed_identities().is_empty()
    }
}

/// Cyclic shift bringing a para-hypersymplectic signature to `(1, 1, −1)`.
pub fn para_rotation(eps: &EpsilonSignature) -> usize {
    (0..3).find(|&r| eps.rotated(r).eps == [1, 1, -1]).unwrap_or(0)
}

pub fn classify(t: &SymplecticTriple) -> ClassificationReport {
    let input_epsilon = epsilon_signature(t);
    let class = StructClass::from_signature(input_epsilon.as_ref());
    let Some(input) = input_epsilon else {
        return ClassificationReport {
            class,
            input_epsilon,
            rotation: 0,
            epsilon: None,
            metric: None,
            suite: Vec::new(),
            induced: None,
            hyperkahler: None,
        };
    };
    let rotation = if class == StructClass::ParaHypersymplectic { para_rotation(&input) } else { 0 };
    let t = t.rotated(rotation);
    let eps = input.rotated(rotation);
    let vars = t.mu().gens().vars().to_vec();
    let metric = metric_g(&t, &eps);
    let mut suite = check_structure_relations(&t, &eps);
    let (metric_report, induced, hyperkahler) = match &metric {
        Ok(g) => {
            let report = MetricReport {
                gflat: g.gflat.display_with(&vars),
                ginv: g.ginv.display_with(&vars),
                symmetric: g.is_symmetric(),
            };
            let induced = induced_structures(&t, &eps, g);
            let hk = if eps.product == -1 { to_hyperkahler(&t, &eps, g).ok() } else { None };
            (Some(report), Some(induced), hk)
        }
        Err(e) => {
            suite.push(IdentityCheck::new(format!("metric: {e}"), false));
            (None, None, None)
        }
    };
    ClassificationReport {
        class,
        input_epsilon,
        rotation,
        epsilon: Some(eps),
        metric: metric_report,
        suite,
        induced,
        hyperkahler,
    }
}
