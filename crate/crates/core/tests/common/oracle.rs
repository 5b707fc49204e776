//! Brute-force reference for derivation homology.
//!
//! Shares nothing with the library beyond reading generator degrees and
//! differential coefficients: polynomials are dense exponent vectors,
//! products are computed by bubble-sorting words of generators, derivations
//! act letter by letter, and ranks come from naive rational elimination.

#![allow(clippy::needless_range_loop)]

use std::collections::HashMap;

use fibrewise::{Rational, RelativeModel};
use num_traits::{One, Zero};

type Exps = Vec<u32>;
pub type Dense = HashMap<Exps, Rational>;

pub struct Oracle {
    degrees: Vec<u32>,
    base_len: usize,
    d: Vec<Dense>,
}

fn add_into(out: &mut Dense, e: Exps, c: Rational) {
    let entry = out.entry(e.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        out.remove(&e);
    }
}

impl Oracle {
    pub fn new(model: &RelativeModel) -> Self {
        let alg = model.total();
        let n = alg.len();
        let degrees = alg.generators().iter().map(|g| g.degree).collect();
        let d = model
            .differential()
            .iter()
            .map(|p| {
                let mut dense = Dense::new();
                for (m, c) in p.terms() {
                    let mut e = vec![0; n];
                    for &(i, k) in m.exponents() {
                        e[i] = k;
                    }
                    dense.insert(e, c.clone());
                }
                dense
            })
            .collect();
        Oracle {
            degrees,
            base_len: model.base_len(),
            d,
        }
    }

    fn n(&self) -> usize {
        self.degrees.len()
    }

    fn odd(&self, i: usize) -> bool {
        self.degrees[i] % 2 == 1
    }

    fn word(e: &Exps) -> Vec<usize> {
        let mut w = Vec::new();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                w.push(i);
            }
        }
        w
    }

    /// Sorts a word of generators, tracking the Koszul sign of each adjacent
    /// swap; `None` if an odd generator repeats.
    fn normalize(&self, mut w: Vec<usize>) -> Option<(Exps, bool)> {
        let mut negative = false;
        let len = w.len();
        for i in 0..len {
            for j in 0..len - 1 - i {
                if w[j] > w[j + 1] {
                    if self.odd(w[j]) && self.odd(w[j + 1]) {
                        negative = !negative;
                    }
                    w.swap(j, j + 1);
                }
            }
        }
        let mut e = vec![0; self.n()];
        for &g in &w {
            e[g] += 1;
            if self.odd(g) && e[g] > 1 {
                return None;
            }
        }
        Some((e, negative))
    }

    fn word_degree(&self, w: &[usize]) -> u32 {
        w.iter().map(|&g| self.degrees[g]).sum()
    }

    /// `prefix · p · suffix` with prefix and suffix given as words.
    fn sandwich(&self, prefix: &[usize], p: &Dense, suffix: &[usize], negate: bool) -> Dense {
        let mut out = Dense::new();
        for (e, c) in p {
            let mut w = prefix.to_vec();
            w.extend(Self::word(e));
            w.extend_from_slice(suffix);
            if let Some((e2, neg)) = self.normalize(w) {
                let c = if neg ^ negate { -c.clone() } else { c.clone() };
                add_into(&mut out, e2, c);
            }
        }
        out
    }

    /// Applies the derivation with the given values on every generator.
    pub fn apply(&self, values: &[Dense], odd: bool, p: &Dense) -> Dense {
        let mut out = Dense::new();
        for (e, c) in p {
            let w = Self::word(e);
            for k in 0..w.len() {
                let negate = odd && self.word_degree(&w[..k]) % 2 == 1;
                let part = self.sandwich(&w[..k], &values[w[k]], &w[k + 1..], negate);
                for (e2, c2) in part {
                    add_into(&mut out, e2, c2 * c);
                }
            }
        }
        out
    }

    pub fn monomials(&self, degree: i64) -> Vec<Exps> {
        if degree < 0 {
            return Vec::new();
        }
        let degree = degree as u32;
        let mut all = vec![vec![0u32; self.n()]];
        for i in 0..self.n() {
            let cap = if self.odd(i) { 1 } else { degree / self.degrees[i] };
            let mut next = Vec::new();
            for e in &all {
                for k in 0..=cap {
                    let mut e2 = e.clone();
                    e2[i] = k;
                    next.push(e2);
                }
            }
            all = next;
        }
        all.into_iter()
            .filter(|e| e.iter().zip(&self.degrees).map(|(k, d)| k * d).sum::<u32>() == degree)
            .collect()
    }

    fn basis(&self, n: i64, restricted: bool) -> Vec<(usize, Exps)> {
        let mut out = Vec::new();
        for w in self.base_len..self.n() {
            for e in self.monomials(self.degrees[w] as i64 - n) {
                if restricted && e[..self.base_len].iter().all(|&k| k == 0) {
                    continue;
                }
                out.push((w, e));
            }
        }
        out
    }

    fn differential_values(&self, theta: &[Dense], n: i64) -> Vec<Dense> {
        let values: Vec<Dense> = theta.to_vec();
        let odd = n.rem_euclid(2) == 1;
        let mut result = Vec::new();
        for w in 0..self.n() {
            if w < self.base_len {
                result.push(Dense::new());
                continue;
            }
            let mut out = self.apply(&self.d, true, &values[w]);
            let inner = self.apply(&values, odd, &self.d[w]);
            for (e, c) in inner {
                let c = if odd { c } else { -c };
                add_into(&mut out, e, c);
            }
            result.push(out);
        }
        result
    }

    fn elementary(&self, w: usize, e: &Exps) -> Vec<Dense> {
        let mut values = vec![Dense::new(); self.n()];
        values[w].insert(e.clone(), Rational::one());
        values
    }

    fn coords(basis: &[(usize, Exps)], values: &[Dense]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); basis.len()];
        for (w, p) in values.iter().enumerate() {
            for (e, c) in p {
                let i = basis
                    .iter()
                    .position(|(w2, e2)| *w2 == w && e2 == e)
                    .expect("value outside the target basis");
                v[i] = c.clone();
            }
        }
        v
    }

    /// Columns of `𝒟 : Der^n → Der^{n−1}`.
    fn differential_columns(&self, n: i64, restricted: bool) -> (usize, Vec<Vec<Rational>>) {
        let src = self.basis(n, restricted);
        let tgt = self.basis(n - 1, restricted);
        let cols = src
            .iter()
            .map(|(w, e)| Self::coords(&tgt, &self.differential_values(&self.elementary(*w, e), n)))
            .collect();
        (tgt.len(), cols)
    }

    pub fn der_dim(&self, n: i64) -> usize {
        self.basis(n, false).len()
    }

    fn homology_with(&self, n: i64, restricted: bool) -> usize {
        let dim = self.basis(n, restricted).len();
        let (_, out) = self.differential_columns(n, restricted);
        let (_, inc) = self.differential_columns(n + 1, restricted);
        dim - naive_rank(&out) - naive_rank(&inc)
    }

    pub fn homology(&self, n: i64) -> usize {
        self.homology_with(n, false)
    }

    pub fn fibre_identity_homology(&self, n: i64) -> usize {
        self.homology_with(n, true)
    }

    /// Dimension of the cokernel of `𝒟 : Der^1 → Der^0_♯`.
    pub fn h0_sharp(&self) -> usize {
        let der0 = self.basis(0, false);
        // Linear part D0 : W → V as a (V × W) table.
        let lin = |w: usize, v: usize| -> Rational {
            let mut e = vec![0; self.n()];
            e[v] = 1;
            self.d[w].get(&e).cloned().unwrap_or_else(Rational::zero)
        };
        let ws: Vec<usize> = (self.base_len..self.n()).collect();
        let vs: Vec<usize> = (0..self.base_len).collect();
        let d0_rows: Vec<Vec<Rational>> = vs.iter().map(|&v| ws.iter().map(|&w| lin(w, v)).collect()).collect();
        let w0 = naive_kernel(&d0_rows, ws.len());
        let is_gen = |e: &Exps, g: usize| e.iter().enumerate().all(|(i, &k)| k == u32::from(i == g));

        // Constraint rows over Der^0 coordinates.
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let (_, cycle_cols) = self.differential_columns(0, false);
        let target_dim = self.basis(-1, false).len();
        for r in 0..target_dim {
            rows.push(cycle_cols.iter().map(|c| c[r].clone()).collect());
        }
        // θ(u) has no W-linear part for u ∈ W₀.
        for u in &w0 {
            for &target in &ws {
                rows.push(
                    der0.iter()
                        .map(|(w, e)| {
                            if is_gen(e, target) {
                                u[w - self.base_len].clone()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect(),
                );
            }
        }
        // D₀ kills the W-linear part of θ(w) for every w.
        for &w in &ws {
            for &v in &vs {
                rows.push(
                    der0.iter()
                        .map(|(w2, e)| {
                            if *w2 != w {
                                return Rational::zero();
                            }
                            match (0..self.n()).find(|&g| is_gen(e, g)) {
                                Some(g) if g >= self.base_len => lin(g, v),
                                _ => Rational::zero(),
                            }
                        })
                        .collect(),
                );
            }
        }
        let sharp_dim = der0.len() - naive_rank_rows(&rows);
        let (_, boundary_cols) = self.differential_columns(1, false);
        sharp_dim - naive_rank(&boundary_cols)
    }
}

/// Rank of a matrix given by columns.
pub fn naive_rank(columns: &[Vec<Rational>]) -> usize {
    naive_rank_rows(columns)
}

/// Rank via plain Gauss–Jordan over Q (row/column rank agree).
pub fn naive_rank_rows(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for j in c..cols {
                    let delta = &f * &m[rank][j];
                    m[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn naive_kernel(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for j in 0..cols {
            m[rank][j] = &m[rank][j] / &pivot;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[rank][j];
                    m[r][j] -= delta;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}
