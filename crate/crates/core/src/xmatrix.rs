//! Polynomials in the entries `X_ab` (`1 <= a, b <= N`) of a truncated
//! variable matrix, the derivations `D_ab = Σ_c X_ac ∂/∂X_bc`, and the
//! normal-ordered W-operator `(1/d) Σ_a D_(a_1..a_d)`.
//!
//! A permutation `g` with vertex labels `(a_1..a_n)` gives the monomial
//! `Π_i X_{a_i, a_g(i)}` (its quiver, relabeled).

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::psymring::PPolynomial;
use crate::Rational;

type Entry = (usize, usize);

/// Monomial in the matrix entries: `((row, col), exponent)` sorted by entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XMonomial {
    exps: Vec<(Entry, u32)>,
}

impl XMonomial {
    pub fn one() -> Self {
        XMonomial::default()
    }

    /// Product of `X_ab` over the listed entries, repeats allowed.
    pub fn from_entries<I: IntoIterator<Item = Entry>>(entries: I) -> Self {
        XMonomial::from_pairs(entries.into_iter().map(|e| (e, 1)))
    }

    pub fn from_pairs<I: IntoIterator<Item = (Entry, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Entry, u32> = BTreeMap::new();
        for (e, k) in pairs {
            assert!(e.0 >= 1 && e.1 >= 1, "matrix entries are 1-indexed");
            if k > 0 {
                *map.entry(e).or_insert(0) += k;
            }
        }
        XMonomial {
            exps: map.into_iter().collect(),
        }
    }

    pub fn pairs(&self) -> &[(Entry, u32)] {
        &self.exps
    }

    pub fn exponent(&self, entry: Entry) -> u32 {
        self.exps
            .binary_search_by_key(&entry, |&(e, _)| e)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, k)| k).sum()
    }

    /// Largest row or column index present (0 for the unit monomial).
    pub fn max_index(&self) -> usize {
        self.exps
            .iter()
            .map(|&((a, b), _)| a.max(b))
            .max()
            .unwrap_or(0)
    }

    /// Distinct rows present.
    pub fn rows(&self) -> Vec<usize> {
        self.exps.iter().map(|&((a, _), _)| a).dedup().collect()
    }

    /// Columns `c` with `X_{row,c}` present.
    pub fn columns_in_row(&self, row: usize) -> Vec<usize> {
        self.exps
            .iter()
            .filter(|&&((a, _), _)| a == row)
            .map(|&((_, b), _)| b)
            .collect()
    }

    pub fn mul(&self, other: &XMonomial) -> XMonomial {
        XMonomial::from_pairs(self.exps.iter().chain(other.exps.iter()).copied())
    }

    /// Applies `Π ∂/∂X_t` over a multiset of entries: returns the product of
    /// falling factorials and the reduced monomial, or `None` if annihilated.
    pub fn multi_derivative(&self, targets: &[Entry]) -> Option<(u128, XMonomial)> {
        let mut counts: BTreeMap<Entry, u32> = BTreeMap::new();
        for &t in targets {
            *counts.entry(t).or_insert(0) += 1;
        }
        let mut exps: BTreeMap<Entry, u32> = self.exps.iter().copied().collect();
        let mut factor: u128 = 1;
        for (t, m) in counts {
            let k = *exps.get(&t)?;
            if k < m {
                return None;
            }
            factor *= (k - m + 1..=k).map(|x| x as u128).product::<u128>();
            if k == m {
                exps.remove(&t);
            } else {
                exps.insert(t, k - m);
            }
        }
        let exps = exps.into_iter().collect();
        Some((factor, XMonomial { exps }))
    }
}

fn fmt_entry(f: &mut fmt::Formatter<'_>, (a, b): Entry) -> fmt::Result {
    if a < 10 && b < 10 {
        write!(f, "X{a}{b}")
    } else {
        write!(f, "X({a},{b})")
    }
}

impl fmt::Display for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (i, &(e, k)) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            fmt_entry(f, e)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in `X_ab` with `1 <= a, b <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPolynomial {
    bound: usize,
    terms: BTreeMap<XMonomial, Rational>,
}

impl XPolynomial {
    pub fn zero(bound: usize) -> Self {
        XPolynomial {
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(bound: usize) -> Self {
        let mut p = XPolynomial::zero(bound);
        p.terms.insert(XMonomial::one(), Rational::one());
        p
    }

    pub fn from_monomial(m: XMonomial, bound: usize) -> Result<Self> {
        let mut p = XPolynomial::zero(bound);
        p.try_add_term(m, Rational::one())?;
        Ok(p)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn try_add_term(&mut self, m: XMonomial, c: Rational) -> Result<()> {
        if m.max_index() > self.bound {
            return Err(Error::OutOfTruncation {
                index: m.max_index(),
                bound: self.bound,
            });
        }
        self.add_term(m, c);
        Ok(())
    }

    fn add_term(&mut self, m: XMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &XMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &XPolynomial) -> XPolynomial {
        let mut out = XPolynomial {
            bound: self.bound.max(other.bound),
            terms: self.terms.clone(),
        };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &XPolynomial) -> XPolynomial {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> XPolynomial {
        let mut out = XPolynomial::zero(self.bound);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &XPolynomial) -> XPolynomial {
        let mut out = XPolynomial::zero(self.bound.max(other.bound));
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.bound {
            return Err(Error::OutOfTruncation {
                index: i,
                bound: self.bound,
            });
        }
        Ok(())
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (i == 0, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if m.exps.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

fn int(x: u128) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// `X_{(a_1..a_k)} = Π_i X_{a_i a_{i+1}}`, indices cyclic.
pub fn x_cycle_monomial(labels: &[usize]) -> XMonomial {
    let k = labels.len();
    XMonomial::from_entries((0..k).map(|i| (labels[i], labels[(i + 1) % k])))
}

/// `tr(X^k)` at truncation `N`.
pub fn trace_power(bound: usize, k: u32) -> XPolynomial {
    let mut out = XPolynomial::zero(bound);
    if k == 0 {
        out.add_term(XMonomial::one(), int(bound as u128));
        return out;
    }
    for labels in (0..k).map(|_| 1..=bound).multi_cartesian_product() {
        out.add_term(x_cycle_monomial(&labels), Rational::one());
    }
    out
}

/// The ring homomorphism `p_k ↦ tr(X^k)` at truncation `N`.
pub fn p_to_x_subst(f: &PPolynomial, bound: usize) -> XPolynomial {
    let mut traces: BTreeMap<u32, XPolynomial> = BTreeMap::new();
    let mut out = XPolynomial::zero(bound);
    for (m, c) in f.terms() {
        let mut acc = XPolynomial::one(bound);
        for &(k, e) in m.pairs() {
            let t = traces.entry(k).or_insert_with(|| trace_power(bound, k));
            for _ in 0..e {
                acc = acc.mul(t);
            }
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// `D_ab f = Σ_c X_ac ∂f/∂X_bc`.
pub fn apply_d(a: usize, b: usize, f: &XPolynomial) -> Result<XPolynomial> {
    f.check_index(a)?;
    f.check_index(b)?;
    let mut out = XPolynomial::zero(f.bound);
    for (m, coeff) in &f.terms {
        for c in m.columns_in_row(b) {
            let (k, rest) = m.multi_derivative(&[(b, c)]).expect("entry present");
            out.add_term(rest.mul(&XMonomial::from_entries([(a, c)])), coeff * int(k));
        }
    }
    Ok(out)
}

/// Normal-ordered `D_(a_1..a_d) = :Π_i D_{a_i a_{i+1}}:`:
/// `Σ_e (Π_i X_{a_i e_i}) (Π_i ∂/∂X_{a_{i+1} e_i})`, all derivatives taken
/// before any multiplication.
pub fn apply_d_tuple(rows: &[usize], f: &XPolynomial) -> Result<XPolynomial> {
    for &a in rows {
        f.check_index(a)?;
    }
    let mut out = XPolynomial::zero(f.bound);
    for (m, coeff) in &f.terms {
        apply_d_tuple_monomial(rows, m, coeff, &mut out);
    }
    Ok(out)
}

fn apply_d_tuple_monomial(rows: &[usize], m: &XMonomial, coeff: &Rational, out: &mut XPolynomial) {
    let d = rows.len();
    if d == 0 {
        out.add_term(m.clone(), coeff.clone());
        return;
    }
    // e_i ranges over columns present in row a_{i+1}; other choices annihilate.
    let choices: Vec<Vec<usize>> = (0..d)
        .map(|i| m.columns_in_row(rows[(i + 1) % d]))
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    for cols in choices
        .iter()
        .map(|c| c.iter().copied())
        .multi_cartesian_product()
    {
        let targets: Vec<Entry> = (0..d).map(|i| (rows[(i + 1) % d], cols[i])).collect();
        if let Some((k, rest)) = m.multi_derivative(&targets) {
            let gained = XMonomial::from_entries((0..d).map(|i| (rows[i], cols[i])));
            out.add_term(rest.mul(&gained), coeff * int(k));
        }
    }
}

/// Ordinary composition `D_{a_1 a_2} ∘ D_{a_2 a_3} ∘ ... ∘ D_{a_d a_1}`,
/// without normal ordering. Differs from [`apply_d_tuple`] in general.
pub fn apply_d_sequential(rows: &[usize], f: &XPolynomial) -> Result<XPolynomial> {
    let d = rows.len();
    let mut acc = f.clone();
    for i in (0..d).rev() {
        acc = apply_d(rows[i], rows[(i + 1) % d], &acc)?;
    }
    Ok(acc)
}

/// `W([d]) f = (1/d) Σ_{a ∈ {1..N}^d} D_(a) f`.
///
/// Only tuples whose rows all occur in a monomial can act on it, so the sum
/// runs over those.
pub fn apply_w_truncated(d: usize, f: &XPolynomial) -> XPolynomial {
    assert!(d >= 1, "W([d]) needs d >= 1");
    let mut out = XPolynomial::zero(f.bound);
    for (m, coeff) in &f.terms {
        if (m.degree() as usize) < d {
            continue;
        }
        let rows = m.rows();
        for tuple in (0..d)
            .map(|_| rows.iter().copied())
            .multi_cartesian_product()
        {
            apply_d_tuple_monomial(&tuple, m, coeff, &mut out);
        }
    }
    out.scale(&Rational::new(BigInt::one(), BigInt::from(d)))
}

/// `Π_i X_{labels[i], labels[g(i)]}`: the quiver of `g` with vertex `i`
/// relabeled `labels[i-1]`.
pub fn x_monomial_of_permutation(
    g: &Permutation,
    labels: &[usize],
    bound: usize,
) -> Result<XMonomial> {
    if labels.len() != g.degree() {
        return Err(Error::LengthMismatch {
            expected: g.degree(),
            got: labels.len(),
        });
    }
    if let Some(&bad) = labels.iter().find(|&&a| a == 0 || a > bound) {
        return Err(Error::OutOfTruncation { index: bad, bound });
    }
    Ok(XMonomial::from_entries(
        (1..=g.degree()).map(|i| (labels[i - 1], labels[g.apply(i) - 1])),
    ))
}
