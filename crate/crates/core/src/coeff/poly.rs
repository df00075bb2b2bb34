use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Exponent vector with trailing zeros trimmed, so that a polynomial does not
/// need to know how many variables were declared. Ordered graded
/// lexicographically: total degree first, then the first differing exponent
/// (a larger exponent on an earlier variable is greater).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the last variable with a nonzero exponent.
    pub fn max_var(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut exps = long.clone();
        for (e, s) in exps.iter_mut().zip(short) {
            *e += s;
        }
        Monomial(exps)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut exps = self.0.clone();
        for (e, o) in exps.iter_mut().zip(&other.0) {
            if *e < *o {
                return None;
            }
            *e -= o;
        }
        Some(Monomial::from_exponents(exps))
    }

    fn with_exponent(&self, var: usize, exp: u32) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() <= var {
            exps.resize(var + 1, 0);
        }
        exps[var] = exp;
        Monomial::from_exponents(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for i in 0..len {
                let c = self.exponent(i).cmp(&other.exponent(i));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over ℚ. Variables are identified by their
/// index into the declared coordinate list; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn var(index: usize) -> Self {
        Poly::term(Rational::one(), Monomial::var(index))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, when the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(m.with_exponent(var, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let x = point.get(i).cloned().unwrap_or_else(Rational::zero);
                    t *= num_traits::pow(x, e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. With a single divisor the grlex division algorithm has a zero
    /// remainder exactly when the divisor divides.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut quotient = Poly::zero();
        let mut rem = self.clone();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(lm)?;
            let c = rc / lc;
            let t = Poly::term(c, m);
            rem = &rem - &(&t * divisor);
            quotient = &quotient + &t;
        }
        Some(quotient)
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`, by
    /// ascending degree. Each coefficient is free of `var`.
    fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    /// Greatest common divisor of the coefficients in `var`.
    fn content_in(&self, var: usize) -> Poly {
        let mut g = Poly::zero();
        for c in self.coefficients_in(var) {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        g
    }

    fn leading_coefficient_in(&self, var: usize) -> Poly {
        self.coefficients_in(var).pop().unwrap_or_default()
    }

    /// Pseudo-remainder of `self` by `divisor` as univariate polynomials in
    /// `var`.
    fn pseudo_remainder(&self, divisor: &Poly, var: usize) -> Poly {
        let db = divisor.degree_in(var);
        let lc = divisor.leading_coefficient_in(var);
        let mut rem = self.clone();
        while !rem.is_zero() && rem.degree_in(var) >= db {
            let dr = rem.degree_in(var);
            let lr = rem.leading_coefficient_in(var);
            let shift = Monomial::var(var).with_exponent(var, dr - db);
            rem = &(&rem * &lc) - &(&(&lr * divisor) * &Poly::term(Rational::one(), shift));
        }
        rem
    }

    /// Monic greatest common divisor over ℚ, computed recursively by the
    /// primitive polynomial remainder sequence in the highest variable.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        let var = self.max_var().max(other.max_var()).expect("non-constant polynomial");
        let (da, db) = (self.degree_in(var), other.degree_in(var));
        if da == 0 {
            return self.gcd(&other.content_in(var));
        }
        if db == 0 {
            return self.content_in(var).gcd(other);
        }
        let ca = self.content_in(var);
        let cb = other.content_in(var);
        let content = ca.gcd(&cb);
        let mut p = self.div_exact(&ca).expect("content divides");
        let mut q = other.div_exact(&cb).expect("content divides");
        if p.degree_in(var) < q.degree_in(var) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = p.pseudo_remainder(&q, var);
            if r.is_zero() {
                break;
            }
            if r.degree_in(var) == 0 {
                q = Poly::one();
                break;
            }
            let cr = r.content_in(var);
            p = q;
            q = r.div_exact(&cr).expect("content divides");
        }
        let cq = q.content_in(var);
        let primitive = q.div_exact(&cq).expect("content divides");
        (&content * &primitive).monic()
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = vars.get(v).cloned().unwrap_or_else(|| format!("x{}", v + 1));
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}
