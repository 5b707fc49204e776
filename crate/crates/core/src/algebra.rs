//! Free graded-commutative algebras over the rationals.
//!
//! An [`Algebra`] is the free graded-commutative algebra on a finite, ordered
//! list of positively graded generators. Elements are [`Polynomial`]s: sparse
//! maps from canonical [`Monomial`]s to nonzero rational coefficients. Odd
//! generators anticommute and square to zero; even generators commute.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Rational = BigRational;

pub(crate) fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub index: usize,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A canonical monomial: `(generator index, exponent)` pairs sorted strictly by
/// index, exponents positive, odd generators with exponent one. The empty
/// monomial is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Monomial(vec![(index, 1)])
    }

    /// Builds a monomial from raw pairs. The caller guarantees canonical form.
    pub(crate) fn from_sorted(pairs: Vec<(usize, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(pairs.iter().all(|&(_, e)| e > 0));
        Monomial(pairs)
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent_of(&self, index: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(i, _)| i == index)
            .map_or(0, |&(_, e)| e)
    }

    /// Largest generator index occurring, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i)
    }

    /// True when the single generator `index` occurs with exponent one and
    /// nothing else does.
    pub fn as_generator(&self) -> Option<usize> {
        match self.0.as_slice() {
            [(i, 1)] => Some(*i),
            _ => None,
        }
    }

    pub fn involves_any(&self, mut pred: impl FnMut(usize) -> bool) -> bool {
        self.0.iter().any(|&(i, _)| pred(i))
    }
}

/// A finite linear combination of canonical monomials with nonzero rational
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn generator(index: usize) -> Self {
        Self::monomial(Monomial::generator(index), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c·m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
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

    /// `self += c·other`
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Terms that are exactly one generator, as `(index, coefficient)`.
    pub fn linear_terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms
            .iter()
            .filter_map(|(m, c)| m.as_generator().map(|i| (i, c)))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_index).max()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }
}

impl std::ops::AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl std::ops::Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// The free graded-commutative algebra on an ordered generator list.
#[derive(Clone, Debug)]
pub struct Algebra {
    generators: Vec<Generator>,
    by_name: HashMap<String, usize>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let mut gens = Vec::new();
        let mut by_name = HashMap::new();
        for (index, (name, degree)) in generators.into_iter().enumerate() {
            let name = name.into();
            if degree == 0 {
                return Err(Error::InvalidGenerator(format!(
                    "generator `{name}` has degree 0; degrees must be at least 1"
                )));
            }
            if !is_identifier(&name) {
                return Err(Error::InvalidGenerator(format!(
                    "`{name}` is not a valid generator name"
                )));
            }
            if by_name.insert(name.clone(), index).is_some() {
                return Err(Error::InvalidGenerator(format!(
                    "duplicate generator name `{name}`"
                )));
            }
            gens.push(Generator {
                name,
                degree,
                index,
            });
        }
        Ok(Algebra {
            generators: gens,
            by_name,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, index: usize) -> &Generator {
        &self.generators[index]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn max_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn is_odd(&self, index: usize) -> bool {
        self.generators[index].is_odd()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .map(|&(i, e)| e * self.generators[i].degree)
            .sum()
    }

    /// The common degree of all terms, `None` for the zero polynomial or an
    /// inhomogeneous one.
    pub fn homogeneous_degree(&self, p: &Polynomial) -> Option<u32> {
        let mut degrees = p.terms().map(|(m, _)| self.monomial_degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Checks that `p` is a canonical element of this algebra.
    pub fn check(&self, p: &Polynomial) -> Result<()> {
        for (m, _) in p.terms() {
            for &(i, e) in m.exponents() {
                if i >= self.len() {
                    return Err(Error::AlgebraMismatch(format!(
                        "generator index {i} is outside an algebra with {} generators",
                        self.len()
                    )));
                }
                if e > 1 && self.is_odd(i) {
                    return Err(Error::AlgebraMismatch(format!(
                        "odd generator `{}` carries exponent {e}",
                        self.generators[i].name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Product of two monomials with its Koszul sign, or `None` when an odd
    /// generator would be squared.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut out = Vec::with_capacity(a.0.len() + b.0.len());
        let mut negative = false;
        // Odd generators of `a` with index strictly greater than the current
        // element of `b` must be moved past it.
        let odd_in_a: Vec<usize> = a
            .0
            .iter()
            .filter(|&&(i, _)| self.is_odd(i))
            .map(|&(i, _)| i)
            .collect();
        for &(j, _) in &b.0 {
            if self.is_odd(j) {
                let passed = odd_in_a.iter().filter(|&&i| i > j).count();
                if passed % 2 == 1 {
                    negative = !negative;
                }
            }
        }
        let (mut x, mut y) = (a.0.iter().peekable(), b.0.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => {
                    if i < j {
                        out.push((i, e));
                        x.next();
                    } else if j < i {
                        out.push((j, f));
                        y.next();
                    } else {
                        if self.is_odd(i) {
                            return None;
                        }
                        out.push((i, e + f));
                        x.next();
                        y.next();
                    }
                }
                (Some(&&t), None) => {
                    out.push(t);
                    x.next();
                }
                (None, Some(&&t)) => {
                    out.push(t);
                    y.next();
                }
                (None, None) => break,
            }
        }
        Some((Monomial(out), negative))
    }

    /// Graded-commutative product. Operands are assumed to belong to this
    /// algebra; see [`Algebra::multiply`] for the checked form.
    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((m, negative)) = self.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    pub fn multiply(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, a: &Polynomial, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// Sum of the terms of `p` of total degree exactly `n`.
    pub fn degree_component(&self, p: &Polynomial, n: u32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            if self.monomial_degree(m) == n {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// All canonical monomials of total degree `n`. Ordered by exponent vector,
    /// larger exponents of earlier generators first.
    pub fn monomial_basis(&self, n: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.enumerate(0, n, &mut current, &mut out);
        out
    }

    fn enumerate(
        &self,
        index: usize,
        remaining: u32,
        current: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
            return;
        }
        if index == self.len() {
            return;
        }
        let g = &self.generators[index];
        let max = if g.is_odd() {
            1.min(remaining / g.degree)
        } else {
            remaining / g.degree
        };
        for e in (0..=max).rev() {
            if e > 0 {
                current.push((index, e));
            }
            self.enumerate(index + 1, remaining - e * g.degree, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }

    pub fn dimension(&self, n: u32) -> usize {
        self.monomial_basis(n).len()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        crate::parse::parse_polynomial(self, text)
    }

    pub fn display<'a>(&'a self, p: &'a Polynomial) -> PolyDisplay<'a> {
        PolyDisplay { algebra: self, poly: p }
    }

    pub fn format(&self, p: &Polynomial) -> String {
        self.display(p).to_string()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub struct PolyDisplay<'a> {
    algebra: &'a Algebra,
    poly: &'a Polynomial,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms().enumerate() {
            let magnitude = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut need_star = false;
            if m.is_one() || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
                need_star = true;
            }
            for &(i, e) in m.exponents() {
                if need_star {
                    f.write_str("*")?;
                }
                f.write_str(&self.algebra.generators[i].name)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                need_star = true;
            }
        }
        Ok(())
    }
}
