//! Extending generator values to the whole algebra: algebra morphisms
//! multiplicatively, (φ-)derivations by the graded Leibniz rule
//! `θ(ab) = θ(a)φ(b) + (−1)^{|θ||a|} φ(a)θ(b)`. Results are memoized per
//! monomial for the lifetime of the action.

use std::collections::HashMap;

use num_traits::Zero;

use crate::algebra::{rational, Algebra, Monomial, Polynomial};

pub(crate) struct MorphismAction<'a> {
    target: &'a Algebra,
    values: &'a [Polynomial],
    cache: HashMap<Monomial, Polynomial>,
}

impl<'a> MorphismAction<'a> {
    pub fn new(target: &'a Algebra, values: &'a [Polynomial]) -> Self {
        MorphismAction {
            target,
            values,
            cache: HashMap::new(),
        }
    }

    fn image_of_pairs(&mut self, pairs: &[(usize, u32)]) -> Polynomial {
        let key = Monomial::from_sorted(pairs.to_vec());
        if let Some(p) = self.cache.get(&key) {
            return p.clone();
        }
        let mut out = Polynomial::one();
        for &(g, e) in pairs {
            for _ in 0..e {
                out = self.target.mul(&out, &self.values[g]);
                if out.is_zero() {
                    break;
                }
            }
        }
        self.cache.insert(key, out.clone());
        out
    }

    pub fn apply_monomial(&mut self, m: &Monomial) -> Polynomial {
        self.image_of_pairs(m.exponents())
    }

    pub fn apply(&mut self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let image = self.apply_monomial(m);
            out.add_scaled(&image, c);
        }
        out
    }
}

/// A derivation of parity `odd` given by its values on every source generator,
/// optionally along an algebra morphism `φ` (identity when absent).
pub(crate) struct DerivationAction<'a> {
    source: &'a Algebra,
    target: &'a Algebra,
    values: &'a [Polynomial],
    odd: bool,
    along: Option<MorphismAction<'a>>,
    cache: HashMap<Monomial, Polynomial>,
}

impl<'a> DerivationAction<'a> {
    pub fn new(algebra: &'a Algebra, values: &'a [Polynomial], odd: bool) -> Self {
        debug_assert_eq!(values.len(), algebra.len());
        DerivationAction {
            source: algebra,
            target: algebra,
            values,
            odd,
            along: None,
            cache: HashMap::new(),
        }
    }

    pub fn along(
        source: &'a Algebra,
        target: &'a Algebra,
        values: &'a [Polynomial],
        odd: bool,
        phi: &'a [Polynomial],
    ) -> Self {
        debug_assert_eq!(values.len(), source.len());
        DerivationAction {
            source,
            target,
            values,
            odd,
            along: Some(MorphismAction::new(target, phi)),
            cache: HashMap::new(),
        }
    }

    fn image(&mut self, pairs: &[(usize, u32)]) -> Polynomial {
        match &mut self.along {
            Some(phi) => phi.image_of_pairs(pairs),
            None => Polynomial::monomial(Monomial::from_sorted(pairs.to_vec()), num_traits::One::one()),
        }
    }

    pub fn apply_monomial(&mut self, m: &Monomial) -> Polynomial {
        if let Some(p) = self.cache.get(m) {
            return p.clone();
        }
        let pairs = m.exponents();
        let mut out = Polynomial::zero();
        let mut prefix_degree = 0u32;
        for (k, &(g, e)) in pairs.iter().enumerate() {
            let value = &self.values[g];
            if !value.is_zero() {
                // θ(g^e) = e·θ(g)·φ(g)^{e−1}; odd g has e = 1.
                let mut part = value.clone();
                if e > 1 {
                    let rest = self.image(&[(g, e - 1)]);
                    part = self.target.mul(&part, &rest).scaled(&rational(e as i64));
                }
                let prefix = self.image(&pairs[..k]);
                let suffix = self.image(&pairs[k + 1..]);
                let mut term = self.target.mul(&self.target.mul(&prefix, &part), &suffix);
                if self.odd && prefix_degree % 2 == 1 {
                    term = -&term;
                }
                out += &term;
            }
            prefix_degree += e * self.source.generator(g).degree;
        }
        self.cache.insert(m.clone(), out.clone());
        out
    }

    pub fn apply(&mut self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            if c.is_zero() {
                continue;
            }
            let image = self.apply_monomial(m);
            out.add_scaled(&image, c);
        }
        out
    }
}
