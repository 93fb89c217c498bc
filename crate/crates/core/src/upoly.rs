//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored constant term first with no trailing zeros, so
//! the zero polynomial is the empty vector. Multiplication is schoolbook;
//! at the degrees this crate works with (a few hundred at most outside the
//! elimination step) that is both simple and fast enough.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({:?}, {:?})", self.field, self.coeffs)
    }
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from prime-field residues (reduced mod `p`).
    pub fn from_u64s(field: &Field, coeffs: &[u64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_u64(c)).collect())
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field, field.one())
    }

    pub fn x(field: &Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: &Field, c: Elem) -> UniPoly {
        UniPoly::new(field, vec![c])
    }

    pub fn monomial(field: &Field, c: Elem, n: usize) -> UniPoly {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        UniPoly::new(field, coeffs)
    }

    /// `x - r`
    pub fn linear(field: &Field, r: Elem) -> UniPoly {
        UniPoly::new(field, vec![field.neg(&r), field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    fn same_field(&self, other: &UniPoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn scale(&self, c: &Elem) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(&lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Product with every term of degree above `cutoff` discarded.
    pub fn mul_truncated(&self, other: &UniPoly, cutoff: usize) -> UniPoly {
        assert!(self.field == other.field, "operands live over different fields");
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let f = &self.field;
        let n = (self.coeffs.len() + other.coeffs.len() - 1).min(cutoff + 1);
        let mut out = vec![f.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn truncate(&self, cutoff: usize) -> UniPoly {
        UniPoly::new(
            &self.field,
            self.coeffs.iter().take(cutoff + 1).copied().collect(),
        )
    }

    /// `self^e` with all terms of degree above `cutoff` dropped, by binary
    /// powering. Low-degree coefficients of a product never depend on
    /// high-degree coefficients of the factors, so truncating at every step
    /// yields exactly the low part of the full power.
    pub fn pow_truncated(&self, mut e: u64, cutoff: usize) -> UniPoly {
        let mut base = self.truncate(cutoff);
        let mut acc = UniPoly::one(&self.field).truncate(cutoff);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_truncated(&base, cutoff);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_truncated(&base, cutoff);
            }
        }
        acc
    }

    pub fn pow(&self, e: u64) -> UniPoly {
        let cutoff = self.degree().map_or(0, |d| d * e as usize);
        self.pow_truncated(e, cutoff)
    }

    /// Formal derivative in characteristic `p`.
    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        UniPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul_u64(c, i as u64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(u X + v)` as a polynomial in `X`.
    pub fn compose_affine(&self, u: &Elem, v: &Elem) -> UniPoly {
        let f = &self.field;
        let lin = UniPoly::new(f, vec![*v, *u]);
        let mut acc = UniPoly::zero(f);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(f, *c);
        }
        acc
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.same_field(divisor)?;
        let lc = divisor.leading().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((UniPoly::zero(f), self.clone()));
        }
        let inv = f.inv(&lc)?;
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(&r[i], &inv);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                r[i - dd + j] = f.sub(&r[i - dd + j], &f.mul(&c, d));
            }
        }
        r.truncate(dd);
        Ok((UniPoly::new(f, q), UniPoly::new(f, r)))
    }

    /// Remainder modulo a nonzero polynomial over the same field.
    ///
    /// Panics on a zero divisor or mismatched fields.
    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).expect("nonzero divisor over the same field").1
    }

    /// Exact quotient; errors when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        self.same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn mul_mod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        (self * other).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m);
        let mut acc = UniPoly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// `gcd(f, f') = 1`. A vanishing derivative means `f` is a `p`-th power.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).map(|g| g.is_one()).unwrap_or(false)
            }
        }
    }

    /// Resultant `Res(f, g) = lc(f)^deg(g) * prod g(r)` over the roots `r`
    /// of `f`. This is the determinant of the Sylvester matrix with `f`'s
    /// rows first, so `Res(x - a, x - b) = a - b`. Zero if either input is
    /// the zero polynomial.
    ///
    /// Computed along the Euclidean remainder sequence, which is the
    /// subresultant chain up to unit factors over a field.
    pub fn resultant(&self, other: &UniPoly) -> Result<Elem> {
        self.same_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(f.zero());
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut acc = f.one();
        loop {
            let da = a.coeffs.len() - 1;
            let db = b.coeffs.len() - 1;
            if da == 0 {
                return Ok(f.mul(&acc, &f.pow(&a.coeffs[0], db as u64)));
            }
            if db == 0 {
                return Ok(f.mul(&acc, &f.pow(&b.coeffs[0], da as u64)));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Ok(f.zero());
            }
            let dr = r.coeffs.len() - 1;
            // Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
            let mut factor = f.pow(&b.leading().unwrap(), (da - dr) as u64);
            if (da * db) % 2 == 1 {
                factor = f.neg(&factor);
            }
            acc = f.mul(&acc, &factor);
            a = b;
            b = r;
        }
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs
    /// `(d, g_d)` where `g_d` is the monic product of all irreducible
    /// factors of degree `d`.
    pub fn distinct_degree_factorization(&self) -> Vec<(usize, UniPoly)> {
        let fld = &self.field;
        let q = fld.order();
        let mut rest = self.monic();
        let mut out = Vec::new();
        let x = UniPoly::x(fld);
        let mut h = x.rem(&rest);
        let mut d = 0;
        while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(q, &rest);
            let g = rest.gcd(&(&h - &x)).expect("same field");
            if !g.is_one() {
                rest = rest.div_exact(&g).expect("gcd divides");
                h = h.rem(&rest);
                out.push((d, g));
            }
        }
        if let Some(n) = rest.degree().filter(|&n| n > 0) {
            out.push((n, rest));
        }
        out
    }

    /// The distinct roots of `self` lying in its own coefficient field,
    /// sorted. Equal-degree splitting uses a ChaCha stream seeded by
    /// `seed`; the returned set does not depend on it.
    ///
    /// Panics on the zero polynomial.
    pub fn roots(&self, seed: u64) -> Vec<Elem> {
        assert!(!self.is_zero(), "the zero polynomial vanishes everywhere");
        if self.is_constant() {
            return Vec::new();
        }
        let fld = &self.field;
        let f = self.monic();
        let x = UniPoly::x(fld);
        let xq = x.pow_mod(fld.order(), &f);
        let g = f.gcd(&(&xq - &x)).expect("same field");
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        split_linear(&g, &mut rng, &mut out);
        out.sort();
        out
    }

    /// Maps every coefficient through a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Result<UniPoly> {
        if self.field != emb.source {
            return Err(Error::FieldMismatch);
        }
        Ok(UniPoly::new(
            &emb.target,
            self.coeffs.iter().map(|c| emb.apply(c)).collect(),
        ))
    }
}

fn split_linear(g: &UniPoly, rng: &mut ChaCha8Rng, out: &mut Vec<Elem>) {
    let fld = g.field();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let r = fld.neg(&fld.div(&g.coeffs[0], &g.coeffs[1]).unwrap());
            out.push(r);
        }
        Some(n) => {
            let half = (fld.order() - 1) / 2;
            loop {
                let a = fld.random(rng);
                let shifted = UniPoly::new(fld, vec![a, fld.one()]);
                let h = &shifted.pow_mod(half, g) - &UniPoly::one(fld);
                let d = g.gcd(&h).expect("same field");
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && dd < n {
                    let other = g.div_exact(&d).expect("gcd divides");
                    split_linear(&d, rng, out);
                    split_linear(&other, rng, out);
                    return;
                }
            }
        }
    }
}

/// Builds `F_{p^k}` from `seed`, carries `f` into it and returns the field
/// with the sorted roots of `f` that lie there.
pub fn roots_in_extension(f: &UniPoly, k: usize, seed: u64) -> Result<(Field, Vec<Elem>)> {
    let target = Field::build_extension(f.field().p(), k, seed)?;
    let emb = Embedding::new(f.field(), &target)?;
    let g = f.embed(&emb)?;
    let roots = g.roots(seed);
    Ok((target, roots))
}

/// A field embedding `F_{p^j} -> F_{p^k}` (`j | k`), fixed by the image of
/// the source generator. For the same source and target the smallest root
/// of the source modulus is chosen, so embeddings are reproducible.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// Images of `z^i`, `i < j`.
    basis: Vec<Elem>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        let no = || Error::NoEmbedding {
            p: source.p(),
            from: source.k(),
            into: target.k(),
        };
        if source.p() != target.p() || target.k() % source.k() != 0 {
            return Err(no());
        }
        let basis = if source == target {
            let mut b = vec![target.one()];
            if let Some(z) = target.generator() {
                b.push(z);
                for _ in 2..target.k() {
                    b.push(target.mul(b.last().unwrap(), &z));
                }
            }
            b
        } else if source.is_prime_field() {
            vec![target.one()]
        } else {
            let m = source.modulus().unwrap();
            let mp = UniPoly::new(target, m.iter().map(|&c| target.from_u64(c as u64)).collect());
            let image = *mp.roots(0).first().ok_or_else(no)?;
            let mut b = vec![target.one(), image];
            for _ in 2..source.k() {
                b.push(target.mul(b.last().unwrap(), &image));
            }
            b
        };
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            basis,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        let t = &self.target;
        let mut acc = t.zero();
        for (i, &c) in x.coeffs(self.source.k()).iter().enumerate() {
            if c != 0 {
                acc = t.add(&acc, &t.mul_u64(&self.basis[i], c as u64));
            }
        }
        acc
    }

    /// Inverse image, if `y` lies in the embedded subfield.
    pub fn preimage(&self, y: &Elem) -> Option<Elem> {
        let (s, t) = (&self.source, &self.target);
        let p = s.p();
        let (js, kt) = (s.k(), t.k());
        // Solve sum_i c_i basis_i = y over F_p: a kt x js system.
        let mut rows: Vec<Vec<u64>> = (0..kt)
            .map(|r| {
                let mut row: Vec<u64> = self.basis.iter().map(|b| b.coeffs(kt)[r] as u64).collect();
                row.push(y.coeffs(kt)[r] as u64);
                row
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for col in 0..js {
            let Some(piv) = (r..kt).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = crate::ff::inv_mod(rows[r][col], p);
            for v in rows[r].iter_mut() {
                *v = (*v * inv) % p;
            }
            for i in 0..kt {
                if i != r && rows[i][col] != 0 {
                    let c = rows[i][col];
                    for j in 0..=js {
                        rows[i][j] = (rows[i][j] + p * p - c * rows[r][j]) % p;
                    }
                }
            }
            pivot_cols.push(col);
            r += 1;
        }
        if rows[r..].iter().any(|row| row[js] != 0) {
            return None;
        }
        let mut coeffs = vec![0u64; js];
        for (i, &col) in pivot_cols.iter().enumerate() {
            coeffs[col] = rows[i][js];
        }
        s.from_coeffs(&coeffs).ok()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        assert!(self.field == rhs.field, "operands live over different fields");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            f,
            (0..n).map(|i| f.add(&self.coeff(i), &rhs.coeff(i))).collect(),
        )
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        assert!(self.field == rhs.field, "operands live over different fields");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            f,
            (0..n).map(|i| f.sub(&self.coeff(i), &rhs.coeff(i))).collect(),
        )
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let cutoff = (self.coeffs.len() + rhs.coeffs.len()).saturating_sub(2);
        self.mul_truncated(rhs, cutoff)
    }
}
