//! Sparse polynomials in the three indeterminates `λ, μ, ν`.
//!
//! Terms live in a hash map keyed by a packed exponent triple: 20 bits per
//! variable, `λ` in the high bits. Products check the exponent sums before
//! packing, so a term whose exponent would pass `2^20 - 1` raises
//! [`Error::ExponentOverflow`] instead of silently bleeding into the
//! neighbouring variable.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{Elem, Field};
use crate::upoly::{Embedding, UniPoly};

const BITS: u32 = 20;
const MASK: u64 = (1 << BITS) - 1;
const MAX_EXP: u32 = (1 << BITS) - 1;

/// Term count above which products are split across the rayon pool.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Lambda,
    Mu,
    Nu,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::Lambda, Var::Mu, Var::Nu];

    fn index(self) -> usize {
        match self {
            Var::Lambda => 0,
            Var::Mu => 1,
            Var::Nu => 2,
        }
    }

    /// Name used in the text form.
    pub fn symbol(self) -> char {
        match self {
            Var::Lambda => 'l',
            Var::Mu => 'm',
            Var::Nu => 'n',
        }
    }
}

/// A monomial `λ^i μ^j ν^k` packed into one word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(l: u32, m: u32, n: u32) -> Result<Monomial> {
        if l > MAX_EXP || m > MAX_EXP || n > MAX_EXP {
            return Err(Error::ExponentOverflow(BITS));
        }
        Ok(Monomial(((l as u64) << (2 * BITS)) | ((m as u64) << BITS) | n as u64))
    }

    pub fn exps(self) -> [u32; 3] {
        [
            (self.0 >> (2 * BITS)) as u32,
            ((self.0 >> BITS) & MASK) as u32,
            (self.0 & MASK) as u32,
        ]
    }

    pub fn exp(self, v: Var) -> u32 {
        self.exps()[v.index()]
    }

    pub fn degree(self) -> u32 {
        self.exps().iter().sum()
    }

    fn with_exp(self, v: Var, e: u32) -> Monomial {
        let mut x = self.exps();
        x[v.index()] = e;
        Monomial::new(x[0], x[1], x[2]).expect("exponent within range")
    }
}

/// Graded reverse order used by the text form: higher total degree first,
/// then lexicographically larger `(λ, μ, ν)` exponents first.
fn graded_lex_desc(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    b.degree().cmp(&a.degree()).then(b.exps().cmp(&a.exps()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(u32),
    Inhomogeneous,
}

#[derive(Clone)]
pub struct TriPoly {
    field: Field,
    terms: HashMap<Monomial, Elem>,
}

impl PartialEq for TriPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl Eq for TriPoly {}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriPoly({:?}, {})", self.field, self)
    }
}

impl TriPoly {
    pub fn zero(field: &Field) -> TriPoly {
        TriPoly {
            field: field.clone(),
            terms: HashMap::new(),
        }
    }

    pub fn constant(field: &Field, c: Elem) -> TriPoly {
        TriPoly::term(field, c, Monomial::ONE)
    }

    pub fn one(field: &Field) -> TriPoly {
        TriPoly::constant(field, field.one())
    }

    pub fn var(field: &Field, v: Var) -> TriPoly {
        TriPoly::term(field, field.one(), Monomial::ONE.with_exp(v, 1))
    }

    pub fn term(field: &Field, c: Elem, m: Monomial) -> TriPoly {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TriPoly {
            field: field.clone(),
            terms,
        }
    }

    /// Builds from `(coefficient, [i_λ, i_μ, i_ν])` pairs, merging repeats.
    pub fn from_terms<I>(field: &Field, terms: I) -> Result<TriPoly>
    where
        I: IntoIterator<Item = (Elem, [u32; 3])>,
    {
        let mut out = TriPoly::zero(field);
        for (c, [l, m, n]) in terms {
            out.add_term(Monomial::new(l, m, n)?, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: Elem) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = f.add(v, &c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: u32, m: u32, n: u32) -> Elem {
        Monomial::new(l, m, n)
            .ok()
            .and_then(|mono| self.terms.get(&mono).copied())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Elem)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    /// Terms in the canonical graded-lex order of the text form.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Elem)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| graded_lex_desc(&a.0, &b.0));
        v
    }

    pub fn scale(&self, c: &Elem) -> TriPoly {
        let f = &self.field;
        let mut out = TriPoly::zero(f);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (*m, f.mul(v, c))).collect();
        out
    }

    fn max_exps(&self) -> [u32; 3] {
        let mut out = [0; 3];
        for m in self.terms.keys() {
            for (o, e) in out.iter_mut().zip(m.exps()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    /// Product, or [`Error::FieldMismatch`] / [`Error::ExponentOverflow`].
    pub fn checked_mul(&self, other: &TriPoly) -> Result<TriPoly> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (ma, mb) = (self.max_exps(), other.max_exps());
        if ma.iter().zip(&mb).any(|(a, b)| a + b > MAX_EXP) {
            return Err(Error::ExponentOverflow(BITS));
        }
        let f = &self.field;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let small_terms: Vec<(u64, Elem)> = small.terms.iter().map(|(m, c)| (m.0, *c)).collect();
        let large_terms: Vec<(u64, Elem)> = large.terms.iter().map(|(m, c)| (m.0, *c)).collect();
        let partial = |chunk: &[(u64, Elem)]| -> HashMap<u64, Elem> {
            let mut acc: HashMap<u64, Elem> = HashMap::with_capacity(chunk.len() * 4);
            for (ka, ca) in chunk {
                for (kb, cb) in &large_terms {
                    let prod = f.mul(ca, cb);
                    acc.entry(ka + kb)
                        .and_modify(|v| *v = f.add(v, &prod))
                        .or_insert(prod);
                }
            }
            acc
        };
        let work = small_terms.len() * large_terms.len();
        let merged = if work >= PARALLEL_THRESHOLD * PARALLEL_THRESHOLD / 4 && small_terms.len() > 1 {
            let chunk = (small_terms.len() / rayon::current_num_threads().max(1)).max(1);
            small_terms
                .par_chunks(chunk)
                .map(partial)
                .reduce(HashMap::new, |mut a, b| {
                    for (k, v) in b {
                        a.entry(k).and_modify(|x| *x = f.add(x, &v)).or_insert(v);
                    }
                    a
                })
        } else {
            partial(&small_terms)
        };
        let terms = merged
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (Monomial(k), v))
            .collect();
        Ok(TriPoly {
            field: f.clone(),
            terms,
        })
    }

    /// `f^p`: coefficients pass through Frobenius and exponents scale by `p`.
    pub fn frobenius_power(&self) -> TriPoly {
        let f = &self.field;
        let p = f.p() as u32;
        let mut out = TriPoly::zero(f);
        for (m, c) in &self.terms {
            let [l, mu, n] = m.exps();
            let mono = Monomial::new(l * p, mu * p, n * p).expect("exponent overflow in f^p");
            out.terms.insert(mono, f.frobenius(c));
        }
        out
    }

    /// `f^e` by binary powering, taking the `f^p` shortcut whenever the
    /// exponent is divisible by the characteristic.
    pub fn pow(&self, e: u64) -> TriPoly {
        let p = self.field.p();
        if e == 0 {
            return TriPoly::one(&self.field);
        }
        if e % p == 0 {
            return self.pow(e / p).frobenius_power();
        }
        let mut base = self.clone();
        let mut acc: Option<TriPoly> = None;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.unwrap()
    }

    /// Plain repeated squaring without the Frobenius shortcut.
    pub fn pow_naive(&self, mut e: u64) -> TriPoly {
        let mut base = self.clone();
        let mut acc = TriPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Minimal exponent of `v` over all terms; `None` (infinity) for zero.
    pub fn ord(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    /// Maximal exponent of `v`; `None` for zero.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn homogeneous_degree(&self) -> Result<Homogeneity> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next().ok_or(Error::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(Homogeneity::Homogeneous(first))
        } else {
            Ok(Homogeneity::Inhomogeneous)
        }
    }

    /// Reduction modulo the monomial ideal generated by `vars`: every term
    /// containing one of them is dropped.
    pub fn reduce_mod_vars(&self, vars: &[Var]) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        out.terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&v| m.exp(v) == 0))
            .map(|(m, c)| (*m, *c))
            .collect();
        out
    }

    /// Collects the coefficient of `v^e`, as a polynomial in the other two
    /// variables.
    pub fn coefficient_of(&self, v: Var, e: u32) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        out.terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == e)
            .map(|(m, c)| (m.with_exp(v, 0), *c))
            .collect();
        out
    }

    /// Exact division by the monomial `λ^l μ^m ν^n`.
    pub fn div_monomial(&self, l: u32, m: u32, n: u32) -> Result<TriPoly> {
        let mut out = TriPoly::zero(&self.field);
        for (mono, c) in &self.terms {
            let [a, b, d] = mono.exps();
            if a < l || b < m || d < n {
                return Err(Error::InexactDivision);
            }
            out.terms.insert(Monomial::new(a - l, b - m, d - n)?, *c);
        }
        Ok(out)
    }

    /// Partial substitution `v := value`; the result no longer involves `v`.
    pub fn substitute(&self, v: Var, value: &Elem) -> TriPoly {
        let f = &self.field;
        let mut out = TriPoly::zero(f);
        let mut powers: HashMap<u32, Elem> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let pw = *powers.entry(e).or_insert_with(|| f.pow(value, e as u64));
            out.add_term(m.with_exp(v, 0), f.mul(c, &pw));
        }
        out
    }

    /// Full evaluation. Variables mapped to `None` must not occur.
    pub fn evaluate(&self, assignment: &[Option<Elem>; 3]) -> Result<Elem> {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = *c;
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let x = assignment[v.index()].ok_or(Error::UnboundVariable(v.symbol()))?;
                t = f.mul(&t, &f.pow(&x, e as u64));
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Reads `self` as a univariate polynomial in `v`; fails if any other
    /// variable occurs.
    pub fn to_univariate(&self, v: Var) -> Result<UniPoly> {
        let f = &self.field;
        let n = self.degree_in(v).unwrap_or(0) as usize;
        let mut coeffs = vec![f.zero(); n + 1];
        for (m, c) in &self.terms {
            if m.with_exp(v, 0) != Monomial::ONE {
                return Err(Error::NotUnivariate(v.symbol()));
            }
            coeffs[m.exp(v) as usize] = *c;
        }
        Ok(UniPoly::new(f, coeffs))
    }

    /// Lifts a univariate polynomial into the variable `v`.
    pub fn from_univariate(g: &UniPoly, v: Var) -> TriPoly {
        let mut out = TriPoly::zero(g.field());
        for (i, c) in g.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(Monomial::ONE.with_exp(v, i as u32), *c);
            }
        }
        out
    }

    /// Multiplies each term by the power of `v` that brings it to total
    /// degree `degree`. Inverse of `substitute(v, 1)` on homogeneous input.
    pub fn homogenize(&self, v: Var, degree: u32) -> Result<TriPoly> {
        let mut out = TriPoly::zero(&self.field);
        for (m, c) in &self.terms {
            let d = m.degree();
            if d > degree {
                return Err(Error::WrongDegree {
                    expected: "at most the target degree",
                    got: Some(d as usize),
                });
            }
            let mono = m.with_exp(v, m.exp(v) + degree - d);
            out.add_term(mono, *c);
        }
        Ok(out)
    }

    /// Maps coefficients through a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Result<TriPoly> {
        if &self.field != emb.source() {
            return Err(Error::FieldMismatch);
        }
        let mut out = TriPoly::zero(emb.target());
        out.terms = self.terms.iter().map(|(m, c)| (*m, emb.apply(c))).collect();
        Ok(out)
    }

    /// Canonical text form, e.g. `3*l^2*m^0*n^1 + 1*l^0*m^0*n^0`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn fmt_coeff(field: &Field, c: &Elem) -> String {
    match field.as_prime(c) {
        Some(v) if field.is_prime_field() => v.to_string(),
        _ => format!("{:?}", field.to_coeffs(c)).replace(' ', ""),
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .iter()
            .map(|(m, c)| {
                let [l, mu, n] = m.exps();
                format!("{}*l^{}*m^{}*n^{}", fmt_coeff(&self.field, c), l, mu, n)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        assert!(self.field == rhs.field, "operands live over different fields");
        let (mut out, other) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        out
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        let f = &self.field;
        let mut out = TriPoly::zero(f);
        out.terms = self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect();
        out
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        self + &(-rhs)
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    /// Panics on mismatched fields or exponent overflow; see
    /// [`TriPoly::checked_mul`].
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        self.checked_mul(rhs).expect("TriPoly product")
    }
}
