//! The graded Poisson algebra of functions on T*[2]A[1].
//!
//! Local generators: base coordinates `x^i` (absorbed into [`RatFunc`]
//! coefficients), even momenta `p_i`, odd fibre coordinates `ξ^a` and their odd
//! momenta `θ_a`. Monomials are stored in the canonical order θ-block, p-block,
//! ξ-block with strictly increasing odd indices; every sign produced by
//! reordering lives in the coefficient.
//!
//! The big bracket is the even Poisson bracket of degree −2 with
//! `{p_i, x^j} = δ_i^j`, `{θ_a, ξ^b} = δ_a^b` and all other generator brackets
//! zero. On monomials it is evaluated as
//!
//! ```text
//! {f, g} = Σ_i  (f ∂/∂p_i)(∂/∂x^i g) − (f ∂/∂x^i)(∂/∂p_i g)
//!        + Σ_a  (f ∂←/∂θ_a)(∂→/∂ξ^a g) + (f ∂←/∂ξ^a)(∂→/∂θ_a g)
//! ```
//!
//! with right derivatives acting on `f` and left derivatives on `g`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::coeff::{RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperError {
    #[error("generator sets differ")]
    GeneratorMismatch,
    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),
    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}

/// Base dimension `n`, fibre rank `d` and base-coordinate names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    vars: Vec<String>,
    rank: usize,
}

/// Odd generators are kept in `u32` bitmasks.
pub const MAX_RANK: usize = 32;

impl GeneratorSet {
    pub fn new(vars: Vec<String>, rank: usize) -> Result<Arc<Self>, SuperError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(SuperError::InvalidGenerators(format!("rank must lie in 1..={MAX_RANK}, got {rank}")));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(SuperError::InvalidGenerators(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(GeneratorSet { vars, rank }))
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
}

/// Bidegree `(k, l)` with `k = #p + #θ` and `l = #p + #ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bidegree {
    pub k: u32,
    pub l: u32,
}

impl Bidegree {
    pub fn new(k: u32, l: u32) -> Self {
        Bidegree { k, l }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// θ-set, p-exponents and ξ-set of a canonical monomial. Bit `a−1` of a mask
/// stands for index `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SuperMonomial {
    theta: u32,
    p: Vec<u32>,
    xi: u32,
}

impl SuperMonomial {
    pub fn new(theta: u32, p: Vec<u32>, xi: u32) -> Self {
        let mut p = p;
        while p.last() == Some(&0) {
            p.pop();
        }
        SuperMonomial { theta, p, xi }
    }

    pub fn theta_mask(&self) -> u32 {
        self.theta
    }

    pub fn xi_mask(&self) -> u32 {
        self.xi
    }

    pub fn p_exponent(&self, i: usize) -> u32 {
        self.p.get(i).copied().unwrap_or(0)
    }

    pub fn p_degree(&self) -> u32 {
        self.p.iter().sum()
    }

    pub fn bidegree(&self) -> Bidegree {
        let np = self.p_degree();
        Bidegree { k: np + self.theta.count_ones(), l: np + self.xi.count_ones() }
    }

    fn with_p(&self, i: usize, exp: u32) -> SuperMonomial {
        let mut p = self.p.clone();
        if p.len() <= i {
            p.resize(i + 1, 0);
        }
        p[i] = exp;
        SuperMonomial::new(self.theta, p, self.xi)
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        for a in bits(self.theta) {
            parts.push(format!("th{}", a + 1));
        }
        for (i, &e) in self.p.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("p{}", i + 1)),
                _ => parts.push(format!("p{}^{}", i + 1, e)),
            }
        }
        for a in bits(self.xi) {
            parts.push(format!("xi{}", a + 1));
        }
        parts.join("*")
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask & (1 << b) != 0)
}

/// Sign of concatenating two disjoint increasing index sets and sorting:
/// parity of the number of pairs `(a ∈ left, b ∈ right)` with `a > b`.
fn merge_sign(left: u32, right: u32) -> bool {
    let mut inversions = 0;
    for b in bits(right) {
        inversions += (left >> (b + 1)).count_ones();
    }
    inversions % 2 == 1
}

/// Product of two canonical monomials as `(negate, monomial)`, or `None` when
/// an odd generator repeats.
fn mul_monomials(a: &SuperMonomial, b: &SuperMonomial) -> Option<(bool, SuperMonomial)> {
    if a.theta & b.theta != 0 || a.xi & b.xi != 0 {
        return None;
    }
    // θ^A p^P ξ^B · θ^C p^Q ξ^D: move θ^C left past ξ^B, then merge blocks.
    let mut negate = (a.xi.count_ones() * b.theta.count_ones()) % 2 == 1;
    negate ^= merge_sign(a.theta, b.theta);
    negate ^= merge_sign(a.xi, b.xi);
    let len = a.p.len().max(b.p.len());
    let p = (0..len).map(|i| a.p_exponent(i) + b.p_exponent(i)).collect();
    Some((negate, SuperMonomial::new(a.theta | b.theta, p, a.xi | b.xi)))
}

/// Normal-form element of the superalgebra: sparse map from canonical
/// monomials to nonzero rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperElem {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<SuperMonomial, RatFunc>,
}

impl SuperElem {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        SuperElem { gens: Arc::clone(gens), terms: BTreeMap::new() }
    }

    pub fn scalar(gens: &Arc<GeneratorSet>, f: RatFunc) -> Self {
        SuperElem::monomial(gens, f, SuperMonomial::default())
    }

    pub fn monomial(gens: &Arc<GeneratorSet>, c: RatFunc, m: SuperMonomial) -> Self {
        let mut e = SuperElem::zero(gens);
        e.add_term(m, c);
        e
    }

    /// `θ_a`, 1-based.
    pub fn theta(gens: &Arc<GeneratorSet>, a: usize) -> Self {
        assert!(a >= 1 && a <= gens.rank(), "theta index {a} out of range");
        SuperElem::monomial(gens, RatFunc::one(), SuperMonomial::new(1 << (a - 1), vec![], 0))
    }

    /// `ξ^a`, 1-based.
    pub fn xi(gens: &Arc<GeneratorSet>, a: usize) -> Self {
        assert!(a >= 1 && a <= gens.rank(), "xi index {a} out of range");
        SuperElem::monomial(gens, RatFunc::one(), SuperMonomial::new(0, vec![], 1 << (a - 1)))
    }

    /// `p_i`, 1-based.
    pub fn p(gens: &Arc<GeneratorSet>, i: usize) -> Self {
        assert!(i >= 1 && i <= gens.dim(), "p index {i} out of range");
        let mut exps = vec![0; i];
        exps[i - 1] = 1;
        SuperElem::monomial(gens, RatFunc::one(), SuperMonomial::new(0, exps, 0))
    }

    /// Base coordinate `x^i` as a scalar element, 1-based.
    pub fn x(gens: &Arc<GeneratorSet>, i: usize) -> Self {
        assert!(i >= 1 && i <= gens.dim(), "x index {i} out of range");
        SuperElem::scalar(gens, RatFunc::var(i - 1))
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &SuperMonomial) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: SuperMonomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn same_gens(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.gens, &other.gens) || *self.gens == *other.gens
    }

    fn assert_same_gens(&self, other: &Self) {
        assert!(self.same_gens(other), "superalgebra elements over different generator sets");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_gens(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SuperElem {
            gens: Arc::clone(&self.gens),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, f: &RatFunc) -> Self {
        if f.is_zero() {
            return SuperElem::zero(&self.gens);
        }
        SuperElem {
            gens: Arc::clone(&self.gens),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * f)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return SuperElem::zero(&self.gens);
        }
        SuperElem {
            gens: Arc::clone(&self.gens),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(q))).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale_rational(&Rational::from_integer(n.into()))
    }

    /// Graded-commutative product. Panics on mismatched generator sets; see
    /// [`super_mul`] for the checked form.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_gens(other);
        let mut out = SuperElem::zero(&self.gens);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((negate, m)) = mul_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if negate { -c } else { c });
                }
            }
        }
        out
    }

    /// Big bracket. Panics on mismatched generator sets; see [`big_bracket`]
    /// for the checked form.
    pub fn bracket(&self, other: &Self) -> Self {
        self.assert_same_gens(other);
        let mut out = SuperElem::zero(&self.gens);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                bracket_monomials(&mut out, ma, ca, mb, cb, self.gens.dim());
            }
        }
        out
    }

    /// Splits into bihomogeneous parts ordered by bidegree.
    pub fn bidegree_components(&self) -> Vec<(Bidegree, SuperElem)> {
        let mut parts: BTreeMap<Bidegree, SuperElem> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.bidegree()).or_insert_with(|| SuperElem::zero(&self.gens)).add_term(m.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    /// The bidegree when the element is bihomogeneous and nonzero.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut degs = self.terms.keys().map(SuperMonomial::bidegree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn has_momenta(&self) -> bool {
        self.terms.keys().any(|m| m.p_degree() > 0)
    }

    /// Text rendering: terms sorted by bidegree then monomial.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.bidegree().cmp(&b.bidegree()).then_with(|| a.cmp(b)));
        let vars = self.gens.vars();
        terms
            .into_iter()
            .map(|(m, c)| {
                let mono = m.render();
                let coeff = c.display_with(vars);
                if mono.is_empty() {
                    format!("({coeff})")
                } else {
                    format!("({coeff})*{mono}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for SuperElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn push_product(
    out: &mut SuperElem,
    ca: RatFunc,
    ma: &SuperMonomial,
    cb: &RatFunc,
    mb: &SuperMonomial,
    negate: bool,
) {
    if ca.is_zero() || cb.is_zero() {
        return;
    }
    if let Some((neg, m)) = mul_monomials(ma, mb) {
        let c = &ca * cb;
        out.add_term(m, if neg ^ negate { -c } else { c });
    }
}

fn bracket_monomials(out: &mut SuperElem, ma: &SuperMonomial, ca: &RatFunc, mb: &SuperMonomial, cb: &RatFunc, dim: usize) {
    // Even pair: (f ∂/∂p_i)(∂/∂x^i g) − (f ∂/∂x^i)(∂/∂p_i g).
    for i in 0..dim {
        let ea = ma.p_exponent(i);
        if ea > 0 {
            let dcb = cb.derivative(i);
            if !dcb.is_zero() {
                let fa = ca.scale(&Rational::from_integer(ea.into()));
                push_product(out, fa, &ma.with_p(i, ea - 1), &dcb, mb, false);
            }
        }
        let eb = mb.p_exponent(i);
        if eb > 0 {
            let dca = ca.derivative(i);
            if !dca.is_zero() {
                let gb = cb.scale(&Rational::from_integer(eb.into()));
                push_product(out, dca, ma, &gb, &mb.with_p(i, eb - 1), true);
            }
        }
    }
    // (f ∂←/∂θ_a)(∂→/∂ξ^a g)
    for a in bits(ma.theta & mb.xi) {
        let bit = 1u32 << a;
        // θ_a to the right end of f: past later θ's, then past the whole ξ-block.
        let right_sign = ((ma.theta >> (a + 1)).count_ones() + ma.xi.count_ones()) % 2 == 1;
        let fa = SuperMonomial { theta: ma.theta & !bit, p: ma.p.clone(), xi: ma.xi };
        // ξ^a to the left end of g: past the θ-block, then earlier ξ's.
        let left_sign = (mb.theta.count_ones() + (mb.xi & (bit - 1)).count_ones()) % 2 == 1;
        let gb = SuperMonomial { theta: mb.theta, p: mb.p.clone(), xi: mb.xi & !bit };
        push_product(out, ca.clone(), &fa, cb, &gb, right_sign ^ left_sign);
    }
    // (f ∂←/∂ξ^a)(∂→/∂θ_a g)
    for a in bits(ma.xi & mb.theta) {
        let bit = 1u32 << a;
        let right_sign = (ma.xi >> (a + 1)).count_ones() % 2 == 1;
        let fa = SuperMonomial { theta: ma.theta, p: ma.p.clone(), xi: ma.xi & !bit };
        let left_sign = (mb.theta & (bit - 1)).count_ones() % 2 == 1;
        let gb = SuperMonomial { theta: mb.theta & !bit, p: mb.p.clone(), xi: mb.xi };
        push_product(out, ca.clone(), &fa, cb, &gb, right_sign ^ left_sign);
    }
}

pub fn super_mul(a: &SuperElem, b: &SuperElem) -> Result<SuperElem, SuperError> {
    if !a.same_gens(b) {
        return Err(SuperError::GeneratorMismatch);
    }
    Ok(a.mul(b))
}

pub fn big_bracket(a: &SuperElem, b: &SuperElem) -> Result<SuperElem, SuperError> {
    if !a.same_gens(b) {
        return Err(SuperError::GeneratorMismatch);
    }
    Ok(a.bracket(b))
}

pub fn bidegree_components(a: &SuperElem) -> Vec<(Bidegree, SuperElem)> {
    a.bidegree_components()
}
