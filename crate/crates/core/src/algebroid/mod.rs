//! Lie algebroid structures as elements `μ ∈ F^{1,2}` and the derived-bracket
//! calculus built on them.
//!
//! Every operation here is a composition of big brackets. Component formulas
//! live only in tests, where they serve as independent oracles.

mod tensors;

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::coeff::{integer, rational, CoeffError, CoeffMatrix, RatFunc};
use crate::conventions;
use crate::superalgebra::{Bidegree, GeneratorSet, SuperElem, SuperError, SuperMonomial};

pub use tensors::{EndoTensor, Form, MultiVector, Section, ValuedForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebroidError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("expected bidegree {expected}, found {found}")]
    WrongShape { expected: Bidegree, found: Bidegree },
    #[error("structure constant c^{c}_{{{a}{b}}} must vanish on the diagonal")]
    DiagonalStructure { c: usize, a: usize, b: usize },
    #[error("insertion needs a form degree of at least 1")]
    DegreeUnderflow,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Super(#[from] SuperError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// Coordinate data of a Lie algebroid `A → M` with `dim M = n`, `rank A = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebroidSpec {
    gens: Arc<GeneratorSet>,
    anchor: CoeffMatrix,
    structure: Vec<RatFunc>,
}

impl AlgebroidSpec {
    /// `anchor[i][a] = ρ^i_a`, an `n × d` matrix. Structure constants start at 0.
    pub fn new(vars: Vec<String>, rank: usize, anchor: CoeffMatrix) -> Result<Self, AlgebroidError> {
        let n = vars.len();
        let gens = GeneratorSet::new(vars, rank)?;
        if anchor.rows() != n || anchor.cols() != rank {
            return Err(AlgebroidError::Shape(format!(
                "anchor is {}x{}, expected {n}x{rank}",
                anchor.rows(),
                anchor.cols()
            )));
        }
        Ok(AlgebroidSpec { gens, anchor, structure: vec![RatFunc::zero(); rank * rank * rank] })
    }

    pub fn abelian(vars: Vec<String>, rank: usize) -> Result<Self, AlgebroidError> {
        let n = vars.len();
        AlgebroidSpec::new(vars, rank, CoeffMatrix::zeros(n, rank))
    }

    /// The tangent algebroid `TM` of a coordinate chart.
    pub fn tangent(vars: Vec<String>) -> Result<Self, AlgebroidError> {
        let n = vars.len();
        AlgebroidSpec::new(vars, n, CoeffMatrix::identity(n))
    }

    /// `so(3)` over a point: `[e_a, e_b] = ε_{abc} e_c`.
    pub fn so3() -> Self {
        let mut spec = AlgebroidSpec::new(vec![], 3, CoeffMatrix::zeros(0, 3)).expect("so(3) shape");
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            spec.set_structure(c, a, b, RatFunc::one()).expect("off-diagonal");
        }
        spec
    }

    /// Sets `c^c_{ab} = value` and `c^c_{ba} = −value` (0-based indices).
    pub fn set_structure(&mut self, c: usize, a: usize, b: usize, value: RatFunc) -> Result<(), AlgebroidError> {
        let d = self.rank();
        if a >= d || b >= d || c >= d {
            return Err(AlgebroidError::Shape(format!("structure index out of range for rank {d}")));
        }
        if a == b {
            if value.is_zero() {
                return Ok(());
            }
            return Err(AlgebroidError::DiagonalStructure { c, a, b });
        }
        self.structure[(c * d + b) * d + a] = -value.clone();
        self.structure[(c * d + a) * d + b] = value;
        Ok(())
    }

    pub fn with_structure(mut self, c: usize, a: usize, b: usize, value: RatFunc) -> Result<Self, AlgebroidError> {
        self.set_structure(c, a, b, value)?;
        Ok(self)
    }

    pub fn structure_constant(&self, c: usize, a: usize, b: usize) -> &RatFunc {
        let d = self.rank();
        &self.structure[(c * d + a) * d + b]
    }

    pub fn anchor(&self) -> &CoeffMatrix {
        &self.anchor
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.rank()
    }

    pub fn dim(&self) -> usize {
        self.gens.dim()
    }
}

/// An element of `F^{1,2}` read as a (pre-)Lie algebroid structure.
#[derive(Clone, Debug)]
pub struct Mu {
    elem: SuperElem,
    jacobi: OnceLock<bool>,
}

impl PartialEq for Mu {
    fn eq(&self, other: &Self) -> bool {
        self.elem == other.elem
    }
}

impl Eq for Mu {}

impl Mu {
    pub fn from_elem(elem: SuperElem) -> Self {
        Mu { elem, jacobi: OnceLock::new() }
    }

    pub fn elem(&self) -> &SuperElem {
        &self.elem
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        self.elem.gens()
    }

    /// `{μ, μ} = 0`; the result is cached.
    pub fn check_jacobi(&self) -> bool {
        *self.jacobi.get_or_init(|| self.elem.bracket(&self.elem).is_zero())
    }

    /// The cached Jacobi flag, if [`Mu::check_jacobi`] has run.
    pub fn jacobi_flag(&self) -> Option<bool> {
        self.jacobi.get().copied()
    }
}

/// `μ = Σ ρ^i_a p_i ξ^a + s·½ Σ c^c_{ab} θ_c ξ^a ξ^b` with `s` the calibrated
/// structure sign.
pub fn build_mu(spec: &AlgebroidSpec) -> Mu {
    let gens = spec.gens();
    let (n, d) = (spec.dim(), spec.rank());
    let mut elem = SuperElem::zero(gens);
    for i in 0..n {
        for a in 0..d {
            let r = spec.anchor.get(i, a);
            if !r.is_zero() {
                let mut p = vec![0; i + 1];
                p[i] = 1;
                elem = elem.add(&SuperElem::monomial(gens, r.clone(), SuperMonomial::new(0, p, 1 << a)));
            }
        }
    }
    let sign = integer(conventions::STRUCTURE_SIGN);
    for c in 0..d {
        for a in 0..d {
            for b in a + 1..d {
                let v = spec.structure_constant(c, a, b);
                if !v.is_zero() {
                    let m = SuperMonomial::new(1 << c, vec![], (1 << a) | (1 << b));
                    elem = elem.add(&SuperElem::monomial(gens, v.scale(&sign), m));
                }
            }
        }
    }
    Mu::from_elem(elem)
}

pub fn check_jacobi(mu: &Mu) -> bool {
    mu.check_jacobi()
}

/// `{{a, μ}, b}`.
pub fn derived_bracket(mu: &Mu, a: &SuperElem, b: &SuperElem) -> SuperElem {
    a.bracket(&mu.elem).bracket(b)
}

pub fn lie_bracket(mu: &Mu, x: &Section, y: &Section) -> Section {
    Section::from_elem(derived_bracket(mu, x.elem(), y.elem())).expect("bracket of sections has bidegree (1,0)")
}

pub fn anchor_apply(mu: &Mu, x: &Section, f: &RatFunc) -> RatFunc {
    let r = derived_bracket(mu, x.elem(), &SuperElem::scalar(mu.gens(), f.clone()));
    r.coefficient(&SuperMonomial::new(0, vec![], 0))
}

/// `dσ = {μ, σ}`.
pub fn differential(mu: &Mu, sigma: &Form) -> Form {
    Form::from_elem(mu.elem.bracket(sigma.elem()), sigma.degree() + 1).expect("dσ has bidegree (0,l+1)")
}

/// `[P, Q] = {{P, μ}, Q}`.
pub fn schouten(mu: &Mu, p: &MultiVector, q: &MultiVector) -> MultiVector {
    let degree = (p.degree() + q.degree()).saturating_sub(1);
    MultiVector::from_elem(derived_bracket(mu, p.elem(), q.elem()), degree).expect("Schouten bracket has bidegree (p+q-1,0)")
}

/// Bracket of 1-forms induced by a structure on the dual, `{{α, μ'}, β}`.
pub fn dual_bracket(mu: &Mu, alpha: &Form, beta: &Form) -> Form {
    Form::from_elem(derived_bracket(mu, alpha.elem(), beta.elem()), 1).expect("dual bracket has bidegree (0,1)")
}

/// `μ_N = {N, μ}`.
pub fn deform_by_endo(mu: &Mu, n: &EndoTensor) -> Mu {
    Mu::from_elem(n.elem().bracket(&mu.elem))
}

/// `μ_{N,S} = {S, {N, μ}}`.
pub fn deform_twice(mu: &Mu, n: &EndoTensor, s: &EndoTensor) -> Mu {
    Mu::from_elem(s.elem().bracket(&n.elem().bracket(&mu.elem)))
}

/// `μ_π = {π, μ}`, a structure on the dual bundle.
pub fn deform_by_bivector(mu: &Mu, pi: &MultiVector) -> Mu {
    Mu::from_elem(pi.elem().bracket(&mu.elem))
}

/// `TN = ½(μ_{N,N} − μ_{N²})`.
pub fn torsion(mu: &Mu, n: &EndoTensor) -> ValuedForm {
    let nn = deform_twice(mu, n, n);
    let n2 = deform_by_endo(mu, &n.compose(n));
    let elem = nn.elem.sub(&n2.elem).scale_rational(&rational(1, 2));
    ValuedForm::from_elem_unchecked(elem, 2)
}

/// Magri–Morosi concomitant `C_{π,N} = {π,{N,μ}} + {N,{π,μ}}`.
pub fn concomitant(mu: &Mu, pi: &MultiVector, n: &EndoTensor) -> SuperElem {
    let a = pi.elem().bracket(&n.elem().bracket(&mu.elem));
    let b = n.elem().bracket(&pi.elem().bracket(&mu.elem));
    a.add(&b)
}

/// `i_L K` for `(k, l) ∈ {(1,1), (1,2), (2,1)}`.
pub fn insertion(k: &ValuedForm, l: &ValuedForm) -> Result<ValuedForm, AlgebroidError> {
    if k.elem().gens() != l.elem().gens() {
        return Err(SuperError::GeneratorMismatch.into());
    }
    let gens = k.elem().gens();
    let d = gens.rank();
    match (k.degree(), l.degree()) {
        (0, _) => Err(AlgebroidError::DegreeUnderflow),
        (1, 1) | (1, 2) => {
            let deg = l.degree();
            Ok(ValuedForm::from_components(gens, deg, |c, idx| {
                let mut acc = RatFunc::zero();
                for e in 0..d {
                    acc = &acc + &(&k.component(c, &[e]) * &l.component(e, idx));
                }
                acc
            }))
        }
        (2, 1) => Ok(ValuedForm::from_components(gens, 2, |c, idx| {
            let (a, b) = (idx[0], idx[1]);
            let mut acc = RatFunc::zero();
            for e in 0..d {
                acc = &acc + &(&k.component(c, &[e, b]) * &l.component(e, &[a]));
                acc = &acc + &(&k.component(c, &[a, e]) * &l.component(e, &[b]));
            }
            acc
        })),
        (kd, ld) => Err(AlgebroidError::Unsupported(format!("insertion of a degree-{ld} into a degree-{kd} valued form"))),
    }
}

/// `[K, L]_FN = {{K, μ}, L} + (−1)^{k(l+1)} {i_L K, μ}`.
pub fn frolicher_nijenhuis(mu: &Mu, k: &ValuedForm, l: &ValuedForm) -> Result<ValuedForm, AlgebroidError> {
    let first = derived_bracket(mu, k.elem(), l.elem());
    let inserted = insertion(k, l)?;
    let mut second = inserted.elem().bracket(&mu.elem);
    if (k.degree() * (l.degree() + 1)) % 2 == 1 {
        second = second.neg();
    }
    Ok(ValuedForm::from_elem_unchecked(first.add(&second), k.degree() + l.degree()))
}

/// `i_φπ(α, β) = π(φα, β) − π(φβ, α)` where `phi` is the matrix of `φ` on
/// covector components. With `φ = N*` pass `Nᵀ`.
pub fn contract_bivector(pi: &MultiVector, phi: &CoeffMatrix) -> Result<MultiVector, AlgebroidError> {
    let p = pi.matrix();
    let m = phi.transpose().mul(&p)?.add(&p.mul(phi)?)?;
    MultiVector::bivector(pi.elem().gens(), &m)
}

/// Both sides of the identity
/// `{{[π,π],ω},ω} = {{{π,dω},π},ω} − {{π,N},dω} + 2{π,{ω,{N,μ}}} + 4TN`
/// with `N = π♯∘ω♭`. Here `[π,π]` enters as `{π,{π,μ}}`, which is
/// `KSR_SELF_BRACKET_SIGN · schouten(π, π)`.
pub fn ksr_sides(mu: &Mu, pi: &MultiVector, omega: &Form) -> Result<(SuperElem, SuperElem), AlgebroidError> {
    let gens = mu.gens();
    let n = EndoTensor::new(gens, pi.sharp().mul(&omega.flat())?)?;
    let (p, w) = (pi.elem(), omega.elem());
    let pp = schouten(mu, pi, pi).elem().scale_int(conventions::KSR_SELF_BRACKET_SIGN);
    let lhs = pp.bracket(w).bracket(w);
    let dw = differential(mu, omega);
    let t1 = p.bracket(dw.elem()).bracket(p).bracket(w);
    let t2 = p.bracket(n.elem()).bracket(dw.elem());
    let t3 = p.bracket(&w.bracket(&n.elem().bracket(&mu.elem))).scale_int(2);
    let t4 = torsion(mu, &n).elem().scale_int(4);
    Ok((lhs, t1.sub(&t2).add(&t3).add(&t4)))
}

pub fn lemma_ksr_check(mu: &Mu, pi: &MultiVector, omega: &Form) -> bool {
    match ksr_sides(mu, pi, omega) {
        Ok((lhs, rhs)) => lhs == rhs,
        Err(_) => false,
    }
}
