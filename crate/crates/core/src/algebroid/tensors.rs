//! Tensor wrappers around [`SuperElem`] with fixed embedding constants.
//!
//! | object                     | element of F                                   |
//! |----------------------------|------------------------------------------------|
//! | section `X`                | `X^a θ_a`                                      |
//! | `l`-form `σ`               | `(1/l!) σ_{a₁…a_l} ξ^{a₁}…ξ^{a_l}`             |
//! | `k`-vector `P`             | `(1/k!) P^{a₁…a_k} θ_{a₁}…θ_{a_k}`             |
//! | `(1,1)`-tensor `N`         | `−N^a_b θ_a ξ^b`                               |
//! | `A`-valued `k`-form `K`    | `−(1/k!) K^c_{a₁…a_k} θ_c ξ^{a₁}…ξ^{a_k}`      |
//!
//! The structure element `μ` carries its bracket with the same sign, so a
//! `(1,2)` element reads off directly as an `A`-valued 2-form.
//!
//! Component matrices use the index conventions `W[a][b] = ω(e_a, e_b)`,
//! `Π[a][b] = π(e^a, e^b)` and `N[a][b] = N^a_b` (column vectors), so that
//! `ω♭` acts as `Wᵀ` and `π♯` as `Πᵀ`.

use std::sync::Arc;

use crate::coeff::{CoeffMatrix, RatFunc};
use crate::superalgebra::{Bidegree, GeneratorSet, SuperElem, SuperMonomial};

use super::AlgebroidError;

fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &a| m | (1 << a))
}

/// Sorts a list of distinct 0-based indices, returning `None` on repeats and
/// otherwise whether the sorting permutation is odd.
fn sort_parity(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len().saturating_sub(1 + i) {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

fn check_pure(elem: &SuperElem, k: u32, l: u32) -> Result<(), AlgebroidError> {
    for (m, _) in elem.terms() {
        let bd = m.bidegree();
        if m.p_degree() > 0 || bd != Bidegree::new(k, l) {
            return Err(AlgebroidError::WrongShape { expected: Bidegree::new(k, l), found: bd });
        }
    }
    Ok(())
}

/// Section of `A`, bidegree (1,0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    components: Vec<RatFunc>,
    elem: SuperElem,
}

impl Section {
    pub fn new(gens: &Arc<GeneratorSet>, components: Vec<RatFunc>) -> Result<Self, AlgebroidError> {
        if components.len() != gens.rank() {
            return Err(AlgebroidError::Shape(format!("section needs {} components", gens.rank())));
        }
        let mut elem = SuperElem::zero(gens);
        for (a, c) in components.iter().enumerate() {
            elem = elem.add(&SuperElem::theta(gens, a + 1).scale(c));
        }
        Ok(Section { components, elem })
    }

    pub fn basis(gens: &Arc<GeneratorSet>, a: usize) -> Self {
        let comps = (0..gens.rank()).map(|b| if a == b { RatFunc::one() } else { RatFunc::zero() }).collect();
        Section::new(gens, comps).expect("basis section")
    }

    pub fn from_elem(elem: SuperElem) -> Result<Self, AlgebroidError> {
        check_pure(&elem, 1, 0)?;
        let components = (0..elem.gens().rank())
            .map(|a| elem.coefficient(&SuperMonomial::new(1 << a, vec![], 0)))
            .collect();
        Ok(Section { components, elem })
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.components
    }

    pub fn elem(&self) -> &SuperElem {
        &self.elem
    }

    pub fn to_multivector(&self) -> MultiVector {
        MultiVector { degree: 1, elem: self.elem.clone() }
    }
}

/// `l`-form on `A`, bidegree (0,l).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    degree: usize,
    elem: SuperElem,
}

impl Form {
    pub fn function(gens: &Arc<GeneratorSet>, f: RatFunc) -> Self {
        Form { degree: 0, elem: SuperElem::scalar(gens, f) }
    }

    pub fn one_form(gens: &Arc<GeneratorSet>, components: &[RatFunc]) -> Result<Self, AlgebroidError> {
        if components.len() != gens.rank() {
            return Err(AlgebroidError::Shape(format!("1-form needs {} components", gens.rank())));
        }
        let mut elem = SuperElem::zero(gens);
        for (a, c) in components.iter().enumerate() {
            elem = elem.add(&SuperElem::xi(gens, a + 1).scale(c));
        }
        Ok(Form { degree: 1, elem })
    }

    /// Embeds the antisymmetric component matrix `W[a][b] = ω(e_a, e_b)`.
    pub fn two_form(gens: &Arc<GeneratorSet>, w: &CoeffMatrix) -> Result<Self, AlgebroidError> {
        let d = gens.rank();
        if w.rows() != d || w.cols() != d {
            return Err(AlgebroidError::Shape(format!("2-form matrix must be {d}x{d}")));
        }
        if !w.is_antisymmetric() {
            return Err(AlgebroidError::NotAntisymmetric);
        }
        let mut elem = SuperElem::zero(gens);
        for a in 0..d {
            for b in a + 1..d {
                let c = w.get(a, b);
                if !c.is_zero() {
                    let m = SuperMonomial::new(0, vec![], mask_of(&[a, b]));
                    elem = elem.add(&SuperElem::monomial(gens, c.clone(), m));
                }
            }
        }
        Ok(Form { degree: 2, elem })
    }

    pub fn from_elem(elem: SuperElem, degree: usize) -> Result<Self, AlgebroidError> {
        check_pure(&elem, 0, degree as u32)?;
        Ok(Form { degree, elem })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elem(&self) -> &SuperElem {
        &self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    /// `σ(e_{a₁}, …, e_{a_l})` for 0-based indices.
    pub fn component(&self, indices: &[usize]) -> RatFunc {
        assert_eq!(indices.len(), self.degree, "form degree mismatch");
        match sort_parity(indices) {
            None => RatFunc::zero(),
            Some((sorted, odd)) => {
                let c = self.elem.coefficient(&SuperMonomial::new(0, vec![], mask_of(&sorted)));
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Component matrix of a 2-form.
    pub fn matrix(&self) -> CoeffMatrix {
        assert_eq!(self.degree, 2, "matrix() needs a 2-form");
        let d = self.elem.gens().rank();
        CoeffMatrix::from_fn(d, d, |a, b| self.component(&[a, b]))
    }

    /// `ω♭ = Wᵀ`.
    pub fn flat(&self) -> CoeffMatrix {
        self.matrix().transpose()
    }
}

/// `k`-vector on `A`, bidegree (k,0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector {
    degree: usize,
    elem: SuperElem,
}

impl MultiVector {
    /// Embeds the antisymmetric component matrix `Π[a][b] = π(e^a, e^b)`.
    pub fn bivector(gens: &Arc<GeneratorSet>, pi: &CoeffMatrix) -> Result<Self, AlgebroidError> {
        let d = gens.rank();
        if pi.rows() != d || pi.cols() != d {
            return Err(AlgebroidError::Shape(format!("bivector matrix must be {d}x{d}")));
        }
        if !pi.is_antisymmetric() {
            return Err(AlgebroidError::NotAntisymmetric);
        }
        let mut elem = SuperElem::zero(gens);
        for a in 0..d {
            for b in a + 1..d {
                let c = pi.get(a, b);
                if !c.is_zero() {
                    let m = SuperMonomial::new(mask_of(&[a, b]), vec![], 0);
                    elem = elem.add(&SuperElem::monomial(gens, c.clone(), m));
                }
            }
        }
        Ok(MultiVector { degree: 2, elem })
    }

    pub fn from_elem(elem: SuperElem, degree: usize) -> Result<Self, AlgebroidError> {
        check_pure(&elem, degree as u32, 0)?;
        Ok(MultiVector { degree, elem })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elem(&self) -> &SuperElem {
        &self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    pub fn component(&self, indices: &[usize]) -> RatFunc {
        assert_eq!(indices.len(), self.degree, "multivector degree mismatch");
        match sort_parity(indices) {
            None => RatFunc::zero(),
            Some((sorted, odd)) => {
                let c = self.elem.coefficient(&SuperMonomial::new(mask_of(&sorted), vec![], 0));
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn matrix(&self) -> CoeffMatrix {
        assert_eq!(self.degree, 2, "matrix() needs a bivector");
        let d = self.elem.gens().rank();
        CoeffMatrix::from_fn(d, d, |a, b| self.component(&[a, b]))
    }

    /// `π♯ = Πᵀ`.
    pub fn sharp(&self) -> CoeffMatrix {
        self.matrix().transpose()
    }
}

/// `(1,1)`-tensor `N: A → A`, bidegree (1,1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoTensor {
    matrix: CoeffMatrix,
    elem: SuperElem,
}

impl EndoTensor {
    pub fn new(gens: &Arc<GeneratorSet>, matrix: CoeffMatrix) -> Result<Self, AlgebroidError> {
        let d = gens.rank();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(AlgebroidError::Shape(format!("(1,1)-tensor matrix must be {d}x{d}")));
        }
        let mut elem = SuperElem::zero(gens);
        for a in 0..d {
            for b in 0..d {
                let c = matrix.get(a, b);
                if !c.is_zero() {
                    let m = SuperMonomial::new(1 << a, vec![], 1 << b);
                    elem = elem.add(&SuperElem::monomial(gens, -c, m));
                }
            }
        }
        Ok(EndoTensor { matrix, elem })
    }

    pub fn identity(gens: &Arc<GeneratorSet>) -> Self {
        EndoTensor::new(gens, CoeffMatrix::identity(gens.rank())).expect("identity shape")
    }

    pub fn from_elem(elem: SuperElem) -> Result<Self, AlgebroidError> {
        check_pure(&elem, 1, 1)?;
        let d = elem.gens().rank();
        let matrix = CoeffMatrix::from_fn(d, d, |a, b| -elem.coefficient(&SuperMonomial::new(1 << a, vec![], 1 << b)));
        Ok(EndoTensor { matrix, elem })
    }

    pub fn matrix(&self) -> &CoeffMatrix {
        &self.matrix
    }

    pub fn elem(&self) -> &SuperElem {
        &self.elem
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        self.elem.gens()
    }

    pub fn apply(&self, x: &Section) -> Section {
        let comps = self.matrix.apply(x.components()).expect("rank matches");
        Section::new(self.gens(), comps).expect("rank matches")
    }

    pub fn compose(&self, other: &EndoTensor) -> EndoTensor {
        EndoTensor::new(self.gens(), self.matrix.mul(&other.matrix).expect("rank matches")).expect("rank matches")
    }

    pub fn add(&self, other: &EndoTensor) -> EndoTensor {
        EndoTensor { matrix: self.matrix.add(&other.matrix).expect("rank matches"), elem: self.elem.add(&other.elem) }
    }

    pub fn scale_int(&self, n: i64) -> EndoTensor {
        EndoTensor { matrix: self.matrix.scale_int(n), elem: self.elem.scale_int(n) }
    }

    pub fn to_valued_form(&self) -> ValuedForm {
        ValuedForm { degree: 1, elem: self.elem.clone() }
    }
}

/// `A`-valued `k`-form, bidegree (1,k) without momenta.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedForm {
    degree: usize,
    elem: SuperElem,
}

impl ValuedForm {
    pub fn from_elem(elem: SuperElem, degree: usize) -> Result<Self, AlgebroidError> {
        check_pure(&elem, 1, degree as u32)?;
        Ok(ValuedForm { degree, elem })
    }

    /// Wraps an element without checking its shape; used for bracket results
    /// whose tensoriality is itself under test.
    pub(crate) fn from_elem_unchecked(elem: SuperElem, degree: usize) -> Self {
        ValuedForm { degree, elem }
    }

    /// Builds from a component function `K(c, [a₁…a_k])`, read on increasing
    /// index tuples only.
    pub fn from_components(
        gens: &Arc<GeneratorSet>,
        degree: usize,
        component: impl Fn(usize, &[usize]) -> RatFunc,
    ) -> Self {
        let d = gens.rank();
        let mut elem = SuperElem::zero(gens);
        for idx in increasing_tuples(d, degree) {
            for c in 0..d {
                let v = component(c, &idx);
                if !v.is_zero() {
                    let m = SuperMonomial::new(1 << c, vec![], mask_of(&idx));
                    elem = elem.add(&SuperElem::monomial(gens, -v, m));
                }
            }
        }
        ValuedForm { degree, elem }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elem(&self) -> &SuperElem {
        &self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    /// `K^c(e_{a₁}, …, e_{a_k})`, 0-based.
    pub fn component(&self, c: usize, indices: &[usize]) -> RatFunc {
        assert_eq!(indices.len(), self.degree, "valued form degree mismatch");
        match sort_parity(indices) {
            None => RatFunc::zero(),
            Some((sorted, odd)) => {
                let raw = self.elem.coefficient(&SuperMonomial::new(1 << c, vec![], mask_of(&sorted)));
                if odd {
                    raw
                } else {
                    -raw
                }
            }
        }
    }

    /// Matrix of a degree-1 valued form, i.e. a `(1,1)`-tensor.
    pub fn to_endo(&self) -> Result<EndoTensor, AlgebroidError> {
        if self.degree != 1 {
            return Err(AlgebroidError::Unsupported(format!("degree-{} valued form is not a (1,1)-tensor", self.degree)));
        }
        EndoTensor::from_elem(self.elem.clone())
    }

    pub fn scale_int(&self, n: i64) -> ValuedForm {
        ValuedForm { degree: self.degree, elem: self.elem.scale_int(n) }
    }
}

pub(crate) fn increasing_tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..d {
            cur.push(a);
            rec(a + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(d: usize) -> Arc<GeneratorSet> {
        GeneratorSet::new(vec![], d).unwrap()
    }

    #[test]
    fn two_form_round_trip() {
        let g = gens(3);
        let w = CoeffMatrix::from_integers(&[&[0, 2, -1], &[-2, 0, 5], &[1, -5, 0]]);
        let f = Form::two_form(&g, &w).unwrap();
        assert_eq!(f.matrix(), w);
        assert_eq!(f.component(&[2, 1]), RatFunc::from_int(-5));
        assert!(f.component(&[1, 1]).is_zero());
        assert!(Form::two_form(&g, &CoeffMatrix::identity(3)).is_err());
    }

    #[test]
    fn endo_round_trip() {
        let g = gens(2);
        let n = CoeffMatrix::from_integers(&[&[1, 2], &[3, 4]]);
        let e = EndoTensor::new(&g, n.clone()).unwrap();
        assert_eq!(EndoTensor::from_elem(e.elem().clone()).unwrap().matrix(), &n);
        let v = e.to_valued_form();
        assert_eq!(v.component(0, &[1]), RatFunc::from_int(2));
        assert_eq!(v.component(1, &[0]), RatFunc::from_int(3));
    }

    #[test]
    fn valued_form_components() {
        let g = gens(3);
        let k = ValuedForm::from_components(&g, 2, |c, idx| RatFunc::from_int((c * 9 + idx[0] * 3 + idx[1]) as i64));
        assert_eq!(k.component(1, &[0, 2]), RatFunc::from_int(11));
        assert_eq!(k.component(1, &[2, 0]), RatFunc::from_int(-11));
        assert!(k.component(0, &[2, 2]).is_zero());
    }

    #[test]
    fn wrong_shape_rejected() {
        let g = gens(2);
        assert!(Section::from_elem(SuperElem::xi(&g, 1)).is_err());
        assert!(EndoTensor::from_elem(SuperElem::theta(&g, 1)).is_err());
    }
}
