use serde::Serialize;

use crate::algebroid::{self, AlgebroidError, EndoTensor, Form, MultiVector, Mu};

use super::{next, prev, EpsilonSignature, HyperError, IdentityCheck, MetricG, SymplecticTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairKind {
    #[serde(rename = "P-Omega")]
    POmega,
    #[serde(rename = "PN")]
    PN,
    #[serde(rename = "Omega-N")]
    OmegaN,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedPair {
    pub kind: PairKind,
    pub left: String,
    pub right: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InducedInventory {
    pub pairs: Vec<InducedPair>,
    pub compatibilities: Vec<IdentityCheck>,
    pub contractions: Vec<IdentityCheck>,
}

impl InducedInventory {
    pub fn count(&self, kind: PairKind) -> usize {
        self.pairs.iter().filter(|p| p.kind == kind && p.holds).count()
    }

    pub fn verified(&self) -> usize {
        self.pairs.iter().filter(|p| p.holds).count()
    }

    pub fn failures(&self) -> Vec<String> {
        let pairs = self.pairs.iter().filter(|p| !p.holds).map(|p| format!("{:?} ({}, {})", p.kind, p.left, p.right));
        let checks = self.compatibilities.iter().chain(&self.contractions).filter(|c| !c.passed).map(|c| c.name.clone());
        pairs.chain(checks).collect()
    }
}

fn flag(r: Result<bool, HyperError>) -> bool {
    r.unwrap_or(false)
}

/// `π` Poisson, `ω` closed and `ω_N`, with `N = π♯∘ω♭`, closed.
pub fn is_p_omega(mu: &Mu, pi: &MultiVector, omega: &Form) -> Result<bool, HyperError> {
    if !algebroid::schouten(mu, pi, pi).is_zero() || !algebroid::differential(mu, omega).is_zero() {
        return Ok(false);
    }
    let w = omega.matrix();
    let wn = w.mul(&pi.matrix())?.mul(&w)?;
    let omega_n = Form::two_form(mu.gens(), &wn)?;
    Ok(algebroid::differential(mu, &omega_n).is_zero())
}

/// `π` Poisson, `N` Nijenhuis, `N∘π♯ = π♯∘N*` and vanishing concomitant.
pub fn is_pn(mu: &Mu, pi: &MultiVector, n: &EndoTensor) -> Result<bool, HyperError> {
    if !algebroid::schouten(mu, pi, pi).is_zero() || !algebroid::torsion(mu, n).is_zero() {
        return Ok(false);
    }
    let m = n.matrix();
    if m.mul(&pi.sharp())? != pi.sharp().mul(&m.transpose())? {
        return Ok(false);
    }
    Ok(algebroid::concomitant(mu, pi, n).is_zero())
}

/// `ω` closed, `N` Nijenhuis, `ω♭∘N = N*∘ω♭` and `ω_N = ω♭∘N` closed.
pub fn is_omega_n(mu: &Mu, omega: &Form, n: &EndoTensor) -> Result<bool, HyperError> {
    if !algebroid::differential(mu, omega).is_zero() || !algebroid::torsion(mu, n).is_zero() {
        return Ok(false);
    }
    let m = n.matrix();
    let wn = omega.flat().mul(m)?;
    if wn != m.transpose().mul(&omega.flat())? {
        return Ok(false);
    }
    let omega_n = match Form::two_form(mu.gens(), &wn.transpose()) {
        Ok(f) => f,
        Err(AlgebroidError::NotAntisymmetric) => return Ok(false),
        Err(e) => return Err(e.into()),
    };
    Ok(algebroid::differential(mu, &omega_n).is_zero())
}

/// `[π₁, π₂] = 0`.
pub fn poisson_compatible(mu: &Mu, p1: &MultiVector, p2: &MultiVector) -> bool {
    algebroid::schouten(mu, p1, p2).is_zero()
}

/// Both criteria for compatibility of two Nijenhuis tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NijenhuisCompatibility {
    /// `[N, M]_FN = 0`.
    pub frolicher_nijenhuis: bool,
    /// `T(N + M) = 0`.
    pub torsion_of_sum: bool,
}

impl NijenhuisCompatibility {
    pub fn compatible(&self) -> bool {
        self.frolicher_nijenhuis && self.torsion_of_sum
    }

    pub fn agree(&self) -> bool {
        self.frolicher_nijenhuis == self.torsion_of_sum
    }
}

pub fn nijenhuis_compatible(mu: &Mu, n: &EndoTensor, m: &EndoTensor) -> Result<NijenhuisCompatibility, HyperError> {
    let fnb = algebroid::frolicher_nijenhuis(mu, &n.to_valued_form(), &m.to_valued_form())?;
    let sum = algebroid::torsion(mu, &n.add(m));
    Ok(NijenhuisCompatibility { frolicher_nijenhuis: fnb.is_zero(), torsion_of_sum: sum.is_zero() })
}

/// Every induced PΩ, PN and ΩN pair of the triple, the pairwise
/// compatibilities, and the contractions `i_{N_i*}π_i`. When `ε₁ε₂ε₃ = 1`
/// the pairs built from `g` (a 2-form then) and `g⁻¹` are included.
pub fn induced_structures(t: &SymplecticTriple, eps: &EpsilonSignature, g: &MetricG) -> InducedInventory {
    let mu = t.mu();
    let mut inv = InducedInventory::default();
    let (w, p, n) = (|i: usize| format!("w{}", i + 1), |i: usize| format!("p{}", i + 1), |i: usize| format!("N{}", i + 1));
    let mut push = |kind, left: String, right: String, holds| inv.pairs.push(InducedPair { kind, left, right, holds });

    for i in 0..3 {
        for k in [next(i), prev(i)] {
            push(PairKind::POmega, p(k), w(i), flag(is_p_omega(mu, t.pi(k), t.omega(i))));
        }
    }
    for i in 0..3 {
        for k in [next(i), prev(i)] {
            push(PairKind::PN, p(i), n(k), flag(is_pn(mu, t.pi(i), t.n(k))));
        }
    }
    for i in 0..3 {
        for k in [next(i), prev(i)] {
            push(PairKind::OmegaN, w(i), n(k), flag(is_omega_n(mu, t.omega(i), t.n(k))));
        }
    }
    if eps.product == 1 {
        let gf = g.as_form(mu);
        let gb = g.inverse_as_bivector(mu);
        for i in 0..3 {
            push(PairKind::PN, p(i), n(i), flag(is_pn(mu, t.pi(i), t.n(i))));
            push(PairKind::PN, "g^-1".into(), n(i), gb.as_ref().is_ok_and(|b| flag(is_pn(mu, b, t.n(i)))));
            push(PairKind::OmegaN, w(i), n(i), flag(is_omega_n(mu, t.omega(i), t.n(i))));
            push(PairKind::OmegaN, "g".into(), n(i), gf.as_ref().is_ok_and(|f| flag(is_omega_n(mu, f, t.n(i)))));
            push(PairKind::POmega, p(i), "g".into(), gf.as_ref().is_ok_and(|f| flag(is_p_omega(mu, t.pi(i), f))));
            push(PairKind::POmega, "g^-1".into(), w(i), gb.as_ref().is_ok_and(|b| flag(is_p_omega(mu, b, t.omega(i)))));
        }
    }

    for i in 0..3 {
        for j in i + 1..3 {
            inv.compatibilities.push(IdentityCheck::new(
                format!("[p{}, p{}] = 0", i + 1, j + 1),
                poisson_compatible(mu, t.pi(i), t.pi(j)),
            ));
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let ok = nijenhuis_compatible(mu, t.n(i), t.n(j)).is_ok_and(|c| c.compatible());
            inv.compatibilities.push(IdentityCheck::new(format!("N{} and N{} compatible", i + 1, j + 1), ok));
        }
    }
    if eps.product == 1 {
        let gb = g.inverse_as_bivector(mu).ok();
        inv.compatibilities
            .push(IdentityCheck::new("g^-1 Poisson", gb.as_ref().is_some_and(|b| poisson_compatible(mu, b, b))));
        for i in 0..3 {
            inv.compatibilities.push(IdentityCheck::new(
                format!("[p{}, g^-1] = 0", i + 1),
                gb.as_ref().is_some_and(|b| poisson_compatible(mu, t.pi(i), b)),
            ));
        }
    }
    for i in 0..3 {
        let c = algebroid::contract_bivector(t.pi(i), &t.n_matrix(i).transpose());
        let expected = g.ginv.transpose().scale_int(eps.get(next(i)) * (1 + eps.product()));
        let ok = c.is_ok_and(|c| c.matrix() == expected);
        let name = if eps.product == 1 {
            format!("i_(N{0}*) p{0} = 2 eps{1} g^-1", i + 1, next(i) + 1)
        } else {
            format!("i_(N{0}*) p{0} = 0", i + 1)
        };
        inv.contractions.push(IdentityCheck::new(name, ok));
    }
    inv
}
