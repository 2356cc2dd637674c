//! The polynomial ring `Q[p1, p2, ...]`, the map `Φ`, and doubly truncated
//! series in `z` and the power sums.
//!
//! Text syntax: monomials as `p1^3*p2`, rational coefficients as `num/den`,
//! terms joined by `+`/`-`. Whitespace is ignored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::permgroup::{GroupAlgebraElement, Permutation};
use crate::Rational;

pub use crate::xmatrix::p_to_x_subst;

/// A monomial `Π p_k^{e_k}`, stored as `(k, e_k)` pairs sorted by `k`, all
/// exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PMonomial {
    exps: Vec<(u32, u32)>,
}

impl PMonomial {
    /// The unit monomial.
    pub fn one() -> Self {
        PMonomial { exps: Vec::new() }
    }

    /// The single variable `p_k`.
    pub fn p(k: u32) -> Self {
        PMonomial::from_pairs([(k, 1)])
    }

    /// Builds a monomial from `(index, exponent)` pairs; repeated indices are
    /// merged, zero exponents dropped. Panics on index 0.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (k, e) in pairs {
            assert!(k >= 1, "power sums are indexed from 1");
            if e > 0 {
                *map.entry(k).or_insert(0) += e;
            }
        }
        PMonomial {
            exps: map.into_iter().collect(),
        }
    }

    /// `p_λ = p_{λ_1} p_{λ_2} ...`.
    pub fn from_partition(lambda: &Partition) -> Self {
        PMonomial::from_pairs(lambda.parts().iter().map(|&p| (p, 1)))
    }

    /// Product of `p` over a list of indices (repeats allowed).
    pub fn from_indices<I: IntoIterator<Item = u32>>(indices: I) -> Self {
        PMonomial::from_pairs(indices.into_iter().map(|k| (k, 1)))
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, k: u32) -> u32 {
        self.exps
            .binary_search_by_key(&k, |&(i, _)| i)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    /// `Σ k e_k`.
    pub fn weight(&self) -> u32 {
        self.exps.iter().map(|&(k, e)| k * e).sum()
    }

    /// `Σ e_k`.
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    /// The indices present with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.exps.iter().map(|&(k, _)| k)
    }

    /// The partition whose parts are the indices with multiplicity, `None` for
    /// the unit monomial.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.is_one() {
            return None;
        }
        let parts = self
            .exps
            .iter()
            .flat_map(|&(k, e)| std::iter::repeat_n(k, e as usize))
            .collect();
        Some(Partition::new(parts).expect("positive indices"))
    }

    pub fn mul(&self, other: &PMonomial) -> PMonomial {
        PMonomial::from_pairs(self.exps.iter().chain(other.exps.iter()).copied())
    }

    /// `∂^m/∂p_k^m` as `(e(e-1)...(e-m+1), reduced monomial)`, or `None` when
    /// the monomial is annihilated.
    pub fn derivative(&self, k: u32, m: u32) -> Option<(u128, PMonomial)> {
        let e = self.exponent(k);
        if e < m {
            return None;
        }
        let factor: u128 = (e - m + 1..=e).map(|x| x as u128).product();
        let exps = self
            .exps
            .iter()
            .filter_map(|&(i, x)| {
                if i != k {
                    Some((i, x))
                } else if x > m {
                    Some((i, x - m))
                } else {
                    None
                }
            })
            .collect();
        Some((factor, PMonomial { exps }))
    }
}

impl fmt::Display for PMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, &(k, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "p{k}")?;
            } else {
                write!(f, "p{k}^{e}")?;
            }
        }
        Ok(())
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
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

/// Sparse polynomial in the power sums with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PPolynomial {
    terms: BTreeMap<PMonomial, Rational>,
}

impl PPolynomial {
    pub fn zero() -> Self {
        PPolynomial::default()
    }

    pub fn one() -> Self {
        PPolynomial::from_monomial(PMonomial::one())
    }

    pub fn from_monomial(m: PMonomial) -> Self {
        PPolynomial::term(m, Rational::one())
    }

    pub fn term(m: PMonomial, c: Rational) -> Self {
        let mut p = PPolynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn constant(c: Rational) -> Self {
        PPolynomial::term(PMonomial::one(), c)
    }

    pub fn add_term(&mut self, m: PMonomial, c: Rational) {
        add_into(&mut self.terms, m, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PMonomial) -> Rational {
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

    pub fn scale(&self, c: &Rational) -> PPolynomial {
        if c.is_zero() {
            return PPolynomial::zero();
        }
        PPolynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// All monomials have weight `w` (vacuously true for zero).
    pub fn is_homogeneous(&self, w: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    /// Drops all monomials of weight greater than `w_max`.
    pub fn truncate_weight(&self, w_max: u32) -> PPolynomial {
        PPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= w_max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn partial(&self, k: u32) -> PPolynomial {
        let mut out = PPolynomial::zero();
        for (m, c) in &self.terms {
            if let Some((f, rest)) = m.derivative(k, 1) {
                out.add_term(rest, c * Rational::from_integer(BigInt::from(f)));
            }
        }
        out
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// `e^{p_1}` truncated to weight `w_max`.
    pub fn exp_p1(w_max: u32) -> PPolynomial {
        let mut out = PPolynomial::zero();
        let mut fact = BigInt::one();
        for n in 0..=w_max {
            if n > 0 {
                fact *= BigInt::from(n);
            }
            out.add_term(
                PMonomial::from_pairs([(1, n)]),
                Rational::new(BigInt::one(), fact.clone()),
            );
        }
        out
    }
}

impl From<PMonomial> for PPolynomial {
    fn from(m: PMonomial) -> Self {
        PPolynomial::from_monomial(m)
    }
}

impl Add for &PPolynomial {
    type Output = PPolynomial;
    fn add(self, rhs: &PPolynomial) -> PPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PPolynomial {
    type Output = PPolynomial;
    fn sub(self, rhs: &PPolynomial) -> PPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &PPolynomial {
    type Output = PPolynomial;
    fn neg(self) -> PPolynomial {
        PPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &PPolynomial {
    type Output = PPolynomial;
    fn mul(self, rhs: &PPolynomial) -> PPolynomial {
        let mut out = PPolynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for PPolynomial {
            type Output = PPolynomial;
            fn $f(self, rhs: PPolynomial) -> PPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_coeff_term(
    f: &mut fmt::Formatter<'_>,
    c: &Rational,
    m: &PMonomial,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if m.is_one() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{abs}*{m}")
    }
}

impl fmt::Display for PPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            fmt_coeff_term(f, c, m, i == 0)?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let v = self.digits()?;
        u32::try_from(v).map_err(|_| Error::Parse {
            pos: at,
            msg: format!("{what} too large"),
        })
    }

    // factor := digits ['/' digits] | 'p' digits ['^' digits]
    fn factor(&mut self, coeff: &mut Rational, mono: &mut Vec<(u32, u32)>) -> Result<()> {
        match self.peek() {
            Some(b'p') => {
                self.pos += 1;
                let at = self.pos;
                let k = self.small("index")?;
                if k == 0 {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "power sums start at p1".into(),
                    });
                }
                let mut e = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.small("exponent")?;
                }
                mono.push((k, e));
                Ok(())
            }
            Some(b'0'..=b'9') => {
                let num = self.digits()?;
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    den = self.digits()?;
                    if den.is_zero() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "zero denominator".into(),
                        });
                    }
                }
                *coeff *= Rational::new(num, den);
                Ok(())
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn polynomial(&mut self) -> Result<PPolynomial> {
        let mut out = PPolynomial::zero();
        if self.src.is_empty() {
            return self.err("empty polynomial");
        }
        let mut first = true;
        while self.pos < self.src.len() {
            let mut sign = Rational::one();
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                _ if first => {}
                _ => return self.err("expected '+' or '-'"),
            }
            first = false;
            let mut coeff = sign;
            let mut mono = Vec::new();
            self.factor(&mut coeff, &mut mono)?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                self.factor(&mut coeff, &mut mono)?;
            }
            out.add_term(PMonomial::from_pairs(mono), coeff);
        }
        Ok(out)
    }
}

impl FromStr for PPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        Parser {
            src: &compact,
            pos: 0,
        }
        .polynomial()
    }
}

/// `Φ(g) = p_{cycle type of g}`.
pub fn phi(g: &Permutation) -> PMonomial {
    PMonomial::from_indices(g.cycles().iter().map(|c| c.len() as u32))
}

/// Linear extension of [`phi`] to the group algebra.
pub fn phi_linear(x: &GroupAlgebraElement) -> PPolynomial {
    let mut out = PPolynomial::zero();
    for (g, c) in x.terms() {
        out.add_term(phi(g), c.clone());
    }
    out
}

/// Series `Σ c_{k,m} z^k m` kept exactly for `k <= k_max` and
/// `weight(m) <= w_max`; everything beyond is discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    k_max: u32,
    w_max: u32,
    coeffs: BTreeMap<(u32, PMonomial), Rational>,
}

impl ZSeries {
    pub fn zero(k_max: u32, w_max: u32) -> Self {
        ZSeries {
            k_max,
            w_max,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(k_max: u32, w_max: u32) -> Self {
        let mut s = ZSeries::zero(k_max, w_max);
        s.add_term(0, PMonomial::one(), Rational::one());
        s
    }

    /// `z^k · f`, truncated.
    pub fn from_polynomial(k: u32, f: &PPolynomial, k_max: u32, w_max: u32) -> Self {
        let mut s = ZSeries::zero(k_max, w_max);
        for (m, c) in f.terms() {
            s.add_term(k, m.clone(), c.clone());
        }
        s
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn w_max(&self) -> u32 {
        self.w_max
    }

    /// Adds `c z^k m`; silently dropped when outside the truncation.
    pub fn add_term(&mut self, k: u32, m: PMonomial, c: Rational) {
        if k > self.k_max || m.weight() > self.w_max {
            return;
        }
        add_into(&mut self.coeffs, (k, m), c);
    }

    pub fn coeff(&self, k: u32, m: &PMonomial) -> Rational {
        self.coeffs
            .get(&(k, m.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, &PMonomial::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &PMonomial, &Rational)> {
        self.coeffs.iter().map(|((k, m), c)| (*k, m, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The polynomial coefficient of `z^k`.
    pub fn z_slice(&self, k: u32) -> PPolynomial {
        let mut out = PPolynomial::zero();
        for ((kk, m), c) in &self.coeffs {
            if *kk == k {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn truncate(&self, k_max: u32, w_max: u32) -> ZSeries {
        let mut out = ZSeries::zero(k_max, w_max);
        for ((k, m), c) in &self.coeffs {
            out.add_term(*k, m.clone(), c.clone());
        }
        out
    }

    fn common(&self, other: &ZSeries) -> (u32, u32) {
        (self.k_max.min(other.k_max), self.w_max.min(other.w_max))
    }

    pub fn add(&self, other: &ZSeries) -> ZSeries {
        let (k, w) = self.common(other);
        let mut out = self.truncate(k, w);
        for ((kk, m), c) in &other.coeffs {
            out.add_term(*kk, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZSeries) -> ZSeries {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> ZSeries {
        let mut out = ZSeries::zero(self.k_max, self.w_max);
        for ((k, m), x) in &self.coeffs {
            out.add_term(*k, m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &ZSeries) -> ZSeries {
        let (k_max, w_max) = self.common(other);
        let mut out = ZSeries::zero(k_max, w_max);
        for ((ka, a), x) in &self.coeffs {
            if *ka > k_max || a.weight() > w_max {
                continue;
            }
            for ((kb, b), y) in &other.coeffs {
                if ka + kb > k_max || a.weight() + b.weight() > w_max {
                    continue;
                }
                out.add_term(ka + kb, a.mul(b), x * y);
            }
        }
        out
    }

    /// `∂/∂z`, valid up to `z^{k_max - 1}`.
    pub fn dz(&self) -> ZSeries {
        let mut out = ZSeries::zero(self.k_max.saturating_sub(1), self.w_max);
        for ((k, m), c) in &self.coeffs {
            if *k > 0 {
                out.add_term(
                    k - 1,
                    m.clone(),
                    c * Rational::from_integer(BigInt::from(*k)),
                );
            }
        }
        out
    }

    /// Applies a weight-preserving linear map to each `z^k` slice.
    pub fn map_slices<F: Fn(&PPolynomial) -> PPolynomial>(&self, f: F) -> ZSeries {
        let mut out = ZSeries::zero(self.k_max, self.w_max);
        for k in 0..=self.k_max {
            let slice = self.z_slice(k);
            if slice.is_zero() {
                continue;
            }
            for (m, c) in f(&slice).terms() {
                out.add_term(k, m.clone(), c.clone());
            }
        }
        out
    }

    // Every nonconstant term raises either the z-order or the weight, so
    // powers beyond k_max + w_max vanish under the truncation.
    fn power_bound(&self) -> u32 {
        self.k_max + self.w_max
    }

    /// `Σ_{m>=0} s^m/m!`. Requires a zero constant term.
    pub fn exp(&self) -> Result<ZSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::InvalidSeries(format!(
                "exp needs a zero constant term, found {}",
                self.constant_term()
            )));
        }
        let mut out = ZSeries::one(self.k_max, self.w_max);
        let mut power = ZSeries::one(self.k_max, self.w_max);
        for m in 1..=self.power_bound() {
            power = power
                .mul(self)
                .scale(&Rational::new(BigInt::one(), BigInt::from(m)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }

    /// `Σ_{m>=1} (-1)^{m+1} (s-1)^m/m`. Requires constant term 1.
    pub fn log(&self) -> Result<ZSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::InvalidSeries(format!(
                "log needs constant term 1, found {}",
                self.constant_term()
            )));
        }
        let u = self.sub(&ZSeries::one(self.k_max, self.w_max));
        let mut out = ZSeries::zero(self.k_max, self.w_max);
        let mut power = ZSeries::one(self.k_max, self.w_max);
        for m in 1..=self.power_bound() {
            power = power.mul(&u);
            if power.is_zero() {
                break;
            }
            let sign = if m % 2 == 1 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            out = out.add(&power.scale(&Rational::new(sign, BigInt::from(m))));
        }
        Ok(out)
    }
}

/// `exp` as a free function.
pub fn series_exp(s: &ZSeries) -> Result<ZSeries> {
    s.exp()
}

/// `log` as a free function.
pub fn series_log(s: &ZSeries) -> Result<ZSeries> {
    s.log()
}

impl fmt::Display for ZSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((k, m), c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            match (i == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || (*k == 0 && m.is_one()) {
                factors.push(abs.to_string());
            }
            match k {
                0 => {}
                1 => factors.push("z".into()),
                _ => factors.push(format!("z^{k}")),
            }
            if !m.is_one() {
                factors.push(m.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly(s: &str) -> PPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn phi_examples() {
        let g = Permutation::parse(6, "(1 2 3)(4 5)").unwrap();
        assert_eq!(phi(&g), PMonomial::from_indices([3, 2, 1]));
        assert_eq!(
            phi(&Permutation::identity(4)),
            PMonomial::from_pairs([(1, 4)])
        );
        assert_eq!(
            phi(&Permutation::parse(2, "(1 2)").unwrap()),
            PMonomial::p(2)
        );
    }

    #[test]
    fn phi_linear_examples() {
        let k2 = GroupAlgebraElement::class_sum(&Partition::new(vec![2]).unwrap());
        assert_eq!(phi_linear(&k2), poly("p2"));
        let k21 = GroupAlgebraElement::class_sum(&Partition::new(vec![2, 1]).unwrap());
        assert_eq!(phi_linear(&k21), poly("3*p2*p1"));
        assert!(phi_linear(&GroupAlgebraElement::zero(3)).is_zero());
    }

    #[test]
    fn parse_and_print() {
        let f = poly(" 1/2 * p2 - p1^2 + 3 ");
        assert_eq!(f.coeff(&PMonomial::p(2)), q(1, 2));
        assert_eq!(f.coeff(&PMonomial::from_pairs([(1, 2)])), q(-1, 1));
        assert_eq!(f.coeff(&PMonomial::one()), q(3, 1));
        assert_eq!(poly("p1^3*p2").to_string(), "p1^3*p2");
        assert_eq!(poly("2*p3").to_string(), "2*p3");
        assert_eq!(poly("p2*p1 - p1*p2").to_string(), "0");
        assert_eq!(poly("-p1 + 1/3").to_string(), "1/3 - p1");
        assert_eq!(poly("p2*p2"), poly("p2^2"));
        assert_eq!(poly(&f.to_string()), f);
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "", "p", "p0", "p1^", "2/0*p1", "p1 p2", "x1", "p1++p2", "p1*",
        ] {
            assert!(
                bad.parse::<PPolynomial>().is_err(),
                "{bad:?} should not parse"
            );
        }
    }

    #[test]
    fn derivative_falling_factorial() {
        let m = PMonomial::from_pairs([(2, 3), (1, 1)]);
        assert_eq!(
            m.derivative(2, 2),
            Some((6, PMonomial::from_pairs([(2, 1), (1, 1)])))
        );
        assert_eq!(m.derivative(3, 1), None);
        assert_eq!(
            m.derivative(1, 1),
            Some((1, PMonomial::from_pairs([(2, 3)])))
        );
        assert_eq!(m.weight(), 7);
    }

    #[test]
    fn exp_examples() {
        let s = ZSeries::from_polynomial(0, &poly("p1"), 0, 3);
        let e = s.exp().unwrap();
        let expected = ZSeries::from_polynomial(0, &poly("1 + p1 + 1/2*p1^2 + 1/6*p1^3"), 0, 3);
        assert_eq!(e, expected);
        assert_eq!(ZSeries::zero(2, 2).exp().unwrap(), ZSeries::one(2, 2));
        assert!(ZSeries::one(2, 2).exp().is_err());
    }

    #[test]
    fn exp_log_round_trip() {
        let mut s = ZSeries::from_polynomial(1, &poly("p2"), 2, 4);
        s = s.add(&ZSeries::from_polynomial(0, &poly("p1"), 2, 4));
        assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn log_examples() {
        assert!(ZSeries::one(3, 3).log().unwrap().is_zero());
        let e = ZSeries::from_polynomial(0, &PPolynomial::exp_p1(4), 0, 4);
        assert_eq!(
            e.log().unwrap(),
            ZSeries::from_polynomial(0, &poly("p1"), 0, 4)
        );
        let s = ZSeries::from_polynomial(0, &poly("1 + p2"), 0, 4);
        assert_eq!(
            s.log().unwrap(),
            ZSeries::from_polynomial(0, &poly("p2 - 1/2*p2^2"), 0, 4)
        );
        assert!(ZSeries::zero(1, 1).log().is_err());
    }

    #[test]
    fn series_truncation_discards() {
        let mut s = ZSeries::zero(1, 2);
        s.add_term(2, PMonomial::p(1), q(1, 1));
        s.add_term(0, PMonomial::p(3), q(1, 1));
        assert!(s.is_zero());
        let a = ZSeries::from_polynomial(1, &poly("p1"), 1, 2);
        assert!(a.mul(&a).is_zero());
    }

    #[test]
    fn dz_lowers_order() {
        let s = ZSeries::from_polynomial(2, &poly("p1"), 3, 2);
        let d = s.dz();
        assert_eq!(d.k_max(), 2);
        assert_eq!(d.coeff(1, &PMonomial::p(1)), q(2, 1));
    }
}
