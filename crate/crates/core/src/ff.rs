//! Exact arithmetic in prime fields `F_p` and their extensions `F_{p^k}`.
//!
//! A [`Field`] is a cheap, shareable handle (an `Arc` around the prime, the
//! degree and the monic irreducible modulus). Elements are plain `Copy`
//! values of type [`Elem`]; every operation goes through the handle, so the
//! same element type serves every field without carrying a pointer around.
//!
//! An element of `F_{p^k} = F_p[z]/(m(z))` is stored as the coefficient
//! vector of its canonical representative, lowest degree first, each entry
//! in `[0, p)`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::upoly::UniPoly;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

/// Characteristics are kept below 2^20 so that products of residues and
/// their short sums stay far away from `u64` overflow.
const MAX_CHARACTERISTIC: u64 = 1 << 20;

/// An element of some `F_{p^k}`. Unused trailing slots are always zero, so
/// the derived ordering is lexicographic on the serialized coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem {
    c: [u32; MAX_DEGREE],
}

impl Elem {
    const ZERO: Elem = Elem { c: [0; MAX_DEGREE] };

    fn scalar(v: u32) -> Elem {
        let mut e = Elem::ZERO;
        e.c[0] = v;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Coefficients of the representative, truncated to `k` entries.
    pub fn coeffs(&self, k: usize) -> &[u32] {
        &self.c[..k]
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.c.iter().rposition(|&x| x != 0).unwrap_or(0);
        write!(f, "{:?}", &self.c[..=last])
    }
}

struct Inner {
    p: u32,
    k: usize,
    /// Monic modulus, `k + 1` coefficients lowest first. Empty for prime fields.
    modulus: Vec<u32>,
    /// `(p - m_j) mod p` for `j < k`, used by the reduction loop.
    neg_modulus: Vec<u64>,
    order: u64,
    /// `floor((2^64 - 1) / p)`, for Barrett reduction.
    barrett: u64,
    /// `frob_basis[i]` is the image of `z^i` under `x -> x^p`.
    frob_basis: Vec<Elem>,
}

/// Handle on a finite field `F_{p^k}`.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}[{:?}]", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

/// Serialized form of a field handle: `{p, k, modulus: [c0, .., c_{k-1}, 1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_characteristic(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 || p >= MAX_CHARACTERISTIC {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    Ok(())
}

fn mix_seed(seed: u64, p: u64, k: usize) -> u64 {
    // splitmix64 finalizer over the three inputs
    let mut z = seed ^ p.rotate_left(17) ^ (k as u64).rotate_left(41) ^ 0x9e37_79b9_7f4a_7c15;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        check_characteristic(p)?;
        Ok(Field(Arc::new(Inner {
            p: p as u32,
            k: 1,
            modulus: Vec::new(),
            neg_modulus: Vec::new(),
            order: p,
            barrett: u64::MAX / p,
            frob_basis: vec![Elem::scalar(1)],
        })))
    }

    /// Builds `F_{p^k}` with a random monic irreducible modulus drawn from a
    /// ChaCha stream seeded by `(p, k, seed)`; the same inputs always give
    /// the same modulus.
    pub fn build_extension(p: u64, k: usize, seed: u64) -> Result<Field> {
        check_characteristic(p)?;
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        if k == 1 {
            return Field::prime(p);
        }
        check_size(p, k)?;
        let base = Field::prime(p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, p, k));
        loop {
            let mut m: Vec<u32> = (0..k).map(|_| rng.random_range(0..p as u32)).collect();
            m.push(1);
            if m[0] == 0 {
                continue;
            }
            if is_irreducible_over_prime(&base, &m) {
                return Field::from_modulus_unchecked(p, m);
            }
        }
    }

    /// Rebuilds a field from an explicit modulus, validating primality,
    /// monicity and irreducibility.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Field> {
        check_characteristic(p)?;
        if modulus.len() < 2 {
            return Err(Error::MalformedModulus);
        }
        let k = modulus.len() - 1;
        check_size(p, k)?;
        if modulus[k] != 1 {
            return Err(Error::MalformedModulus);
        }
        if let Some(&v) = modulus.iter().find(|&&v| v >= p) {
            return Err(Error::CoefficientOutOfRange { value: v, p });
        }
        if k == 1 {
            // a monic linear modulus describes F_p itself
            return Field::prime(p);
        }
        let m: Vec<u32> = modulus.iter().map(|&v| v as u32).collect();
        let base = Field::prime(p)?;
        if !is_irreducible_over_prime(&base, &m) {
            return Err(Error::ReducibleModulus(p));
        }
        Field::from_modulus_unchecked(p, m)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        if spec.k == 0 {
            return Err(Error::ZeroDegree);
        }
        match (&spec.modulus, spec.k) {
            (None, 1) => Field::prime(spec.p),
            (None, _) => Err(Error::MalformedModulus),
            (Some(m), k) => {
                if m.len() != k + 1 {
                    return Err(Error::MalformedModulus);
                }
                Field::with_modulus(spec.p, m)
            }
        }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p(),
            k: self.k(),
            modulus: self
                .modulus()
                .map(|m| m.iter().map(|&c| c as u64).collect()),
        }
    }

    fn from_modulus_unchecked(p: u64, modulus: Vec<u32>) -> Result<Field> {
        let k = modulus.len() - 1;
        let neg_modulus = modulus[..k]
            .iter()
            .map(|&m| (p - m as u64) % p)
            .collect();
        let mut inner = Inner {
            p: p as u32,
            k,
            modulus,
            neg_modulus,
            order: p.pow(k as u32),
            barrett: u64::MAX / p,
            frob_basis: Vec::new(),
        };
        // z^p, then its powers
        let tmp = Field(Arc::new(Inner {
            p: inner.p,
            k,
            modulus: inner.modulus.clone(),
            neg_modulus: inner.neg_modulus.clone(),
            order: inner.order,
            barrett: inner.barrett,
            frob_basis: Vec::new(),
        }));
        let mut z = Elem::ZERO;
        z.c[1] = 1;
        let zp = tmp.pow(&z, p);
        let mut acc = tmp.one();
        for _ in 0..k {
            inner.frob_basis.push(acc);
            acc = tmp.mul(&acc, &zp);
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    /// Number of elements, `p^k`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// The monic modulus (`k + 1` coefficients, lowest first), absent for `F_p`.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.0.k == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    /// The prime subfield as its own handle.
    pub fn prime_subfield(&self) -> Field {
        Field::prime(self.p()).expect("characteristic already validated")
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::scalar(1)
    }

    /// The class of `z` in `F_p[z]/(m)`; `None` for a prime field.
    pub fn generator(&self) -> Option<Elem> {
        if self.0.k == 1 {
            return None;
        }
        let mut z = Elem::ZERO;
        z.c[1] = 1;
        Some(z)
    }

    pub fn from_u64(&self, v: u64) -> Elem {
        Elem::scalar((v % self.p()) as u32)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        Elem::scalar(v.rem_euclid(self.p() as i64) as u32)
    }

    /// Validates and wraps a coefficient vector of length `k`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() != self.k() {
            return Err(Error::ElementLength {
                got: coeffs.len(),
                expected: self.k(),
            });
        }
        let mut e = Elem::ZERO;
        for (slot, &v) in e.c.iter_mut().zip(coeffs) {
            if v >= self.p() {
                return Err(Error::CoefficientOutOfRange { value: v, p: self.p() });
            }
            *slot = v as u32;
        }
        Ok(e)
    }

    pub fn to_coeffs(&self, x: &Elem) -> Vec<u64> {
        x.c[..self.k()].iter().map(|&v| v as u64).collect()
    }

    /// Returns the residue if `x` lies in the prime subfield.
    pub fn as_prime(&self, x: &Elem) -> Option<u64> {
        if x.c[1..].iter().all(|&v| v == 0) {
            Some(x.c[0] as u64)
        } else {
            None
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.0.p;
        let mut out = Elem::ZERO;
        for i in 0..self.0.k {
            let s = a.c[i] + b.c[i];
            out.c[i] = if s >= p { s - p } else { s };
        }
        out
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.0.p;
        let mut out = Elem::ZERO;
        for i in 0..self.0.k {
            out.c[i] = if a.c[i] >= b.c[i] {
                a.c[i] - b.c[i]
            } else {
                a.c[i] + p - b.c[i]
            };
        }
        out
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let p = self.0.p;
        let mut out = Elem::ZERO;
        for i in 0..self.0.k {
            out.c[i] = if a.c[i] == 0 { 0 } else { p - a.c[i] };
        }
        out
    }

    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        let p = self.0.p as u64;
        let q = ((x as u128 * self.0.barrett as u128) >> 64) as u64;
        let mut r = x - q * p;
        while r >= p {
            r -= p;
        }
        r
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let k = self.0.k;
        if k == 1 {
            return Elem::scalar(self.reduce(a.c[0] as u64 * b.c[0] as u64) as u32);
        }
        let mut t = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..k {
            let ai = a.c[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                t[i + j] += ai * b.c[j] as u64;
            }
        }
        let nm = &self.0.neg_modulus;
        for i in (k..2 * k - 1).rev() {
            let c = self.reduce(t[i]);
            if c != 0 {
                let base = i - k;
                for j in 0..k {
                    t[base + j] += c * nm[j];
                }
            }
        }
        let mut out = Elem::ZERO;
        for i in 0..k {
            out.c[i] = self.reduce(t[i]) as u32;
        }
        out
    }

    /// Multiplies by an integer scalar.
    pub fn mul_u64(&self, a: &Elem, s: u64) -> Elem {
        let p = self.0.p as u64;
        let s = s % p;
        let mut out = Elem::ZERO;
        for i in 0..self.0.k {
            out.c[i] = ((a.c[i] as u64 * s) % p) as u32;
        }
        out
    }

    pub fn square(&self, a: &Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on
    /// representatives.
    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p();
        if self.0.k == 1 {
            return Ok(Elem::scalar(inv_mod(a.c[0] as u64, p) as u32));
        }
        let k = self.0.k;
        // r0 = m, r1 = a; track s with s * a = r (mod m)
        let mut r0: Vec<u64> = self.0.modulus.iter().map(|&v| v as u64).collect();
        let mut r1: Vec<u64> = a.c[..k].iter().map(|&v| v as u64).collect();
        let mut s0: Vec<u64> = vec![0];
        let mut s1: Vec<u64> = vec![1];
        trim(&mut r1);
        while !(r1.len() == 1) {
            let (q, r) = small_divrem(&r0, &r1, p);
            let qs = small_mul(&q, &s1, p);
            let s2 = small_sub(&s0, &qs, p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since m is irreducible
        let c = inv_mod(r1[0], p);
        let mut out = Elem::ZERO;
        for (i, &v) in s1.iter().enumerate().take(k) {
            out.c[i] = ((v * c) % p) as u32;
        }
        Ok(out)
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The Frobenius map `x -> x^p`.
    pub fn frobenius(&self, a: &Elem) -> Elem {
        let k = self.0.k;
        if k == 1 {
            return *a;
        }
        let p = self.0.p as u64;
        let mut acc = [0u64; MAX_DEGREE];
        for i in 0..k {
            let ai = a.c[i] as u64;
            if ai == 0 {
                continue;
            }
            let img = &self.0.frob_basis[i];
            for j in 0..k {
                acc[j] += ai * img.c[j] as u64;
            }
        }
        let mut out = Elem::ZERO;
        for j in 0..k {
            out.c[j] = (acc[j] % p) as u32;
        }
        out
    }

    /// `x -> x^(p^j)`.
    pub fn frobenius_pow(&self, a: &Elem, j: usize) -> Elem {
        let mut out = *a;
        for _ in 0..(j % self.0.k) {
            out = self.frobenius(&out);
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        let mut e = Elem::ZERO;
        for i in 0..self.0.k {
            e.c[i] = rng.random_range(0..self.0.p);
        }
        e
    }

    /// The element whose coefficient vector is the base-`p` expansion of
    /// `index` (lowest digit first). Bijective on `0..order`.
    pub fn element_at(&self, mut index: u64) -> Elem {
        let p = self.p();
        let mut e = Elem::ZERO;
        for i in 0..self.0.k {
            e.c[i] = (index % p) as u32;
            index /= p;
        }
        e
    }

    /// All field elements, in `element_at` order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }
}

fn check_size(p: u64, k: usize) -> Result<()> {
    if k > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(k, MAX_DEGREE));
    }
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc
            .checked_mul(p)
            .filter(|&v| v < (1u64 << 62))
            .ok_or(Error::FieldTooLarge { p, k })?;
    }
    Ok(())
}

/// Rabin's test: `m` (monic, degree `k`, over `F_p`) is irreducible iff
/// `z^(p^k) = z mod m` and `gcd(m, z^(p^(k/r)) - z) = 1` for every prime `r | k`.
fn is_irreducible_over_prime(base: &Field, m: &[u32]) -> bool {
    let k = m.len() - 1;
    let modulus = UniPoly::new(base, m.iter().map(|&c| base.from_u64(c as u64)).collect());
    let x = UniPoly::x(base);
    // frob[d] = z^(p^d) mod m
    let mut frob = vec![x.clone()];
    for d in 1..=k {
        let next = frob[d - 1].pow_mod(base.p(), &modulus);
        frob.push(next);
    }
    if frob[k] != x.rem(&modulus) {
        return false;
    }
    prime_divisors(k).into_iter().all(|r| {
        let diff = &frob[k / r] - &x;
        modulus.gcd(&diff).map(|g| g.degree() == Some(0)).unwrap_or(false)
    })
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of a non-unit");
    s0.rem_euclid(p as i64) as u64
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn small_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv_lc = inv_mod(b[db], p);
    if r.len() < b.len() {
        return (vec![0], r);
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = (r[i] * inv_lc) % p;
        q[i - db] = c;
        if c != 0 {
            for j in 0..=db {
                r[i - db + j] = (r[i - db + j] + p - (c * b[j]) % p) % p;
            }
        }
    }
    r.truncate(db.max(1));
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn small_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn small_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_has_no_modulus() {
        let f = Field::build_extension(5, 1, 99).unwrap();
        assert!(f.is_prime_field());
        assert!(f.modulus().is_none());
        assert_eq!(f.order(), 5);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::build_extension(9, 2, 0).unwrap_err(), Error::NotPrime(9));
        assert_eq!(Field::build_extension(4, 1, 0).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::build_extension(7, 0, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            Field::build_extension(2, 1, 0),
            Err(Error::UnsupportedCharacteristic(2))
        ));
    }

    #[test]
    fn extension_is_deterministic() {
        let a = Field::build_extension(5, 2, 17).unwrap();
        let b = Field::build_extension(5, 2, 17).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a, b);
        assert_eq!(a.modulus().unwrap().len(), 3);
        assert_eq!(*a.modulus().unwrap().last().unwrap(), 1);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // z^2 - 1 = (z - 1)(z + 1) over F_7
        assert_eq!(
            Field::with_modulus(7, &[6, 0, 1]).unwrap_err(),
            Error::ReducibleModulus(7)
        );
        assert!(Field::with_modulus(7, &[1, 0, 2]).is_err());
        // z^2 + 1 is irreducible mod 7 since -1 is a non-residue
        assert!(Field::with_modulus(7, &[1, 0, 1]).is_ok());
    }

    #[test]
    fn inverse_and_frobenius_in_f25() {
        let f = Field::build_extension(5, 2, 3).unwrap();
        let g = f.generator().unwrap();
        let g5 = f.frobenius(&g);
        assert_eq!(g5, f.pow(&g, 5));
        assert_eq!(f.frobenius(&g5), g);
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn prime_subfield_is_fixed_by_frobenius() {
        let f = Field::build_extension(7, 3, 1).unwrap();
        for v in 0..7 {
            let x = f.from_u64(v);
            assert_eq!(f.frobenius(&x), x);
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = Field::build_extension(11, 3, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let x = f.random(&mut rng);
            let y = f.random(&mut rng);
            assert_eq!(
                f.frobenius(&f.add(&x, &y)),
                f.add(&f.frobenius(&x), &f.frobenius(&y))
            );
        }
    }

    #[test]
    fn coefficient_validation() {
        let f = Field::build_extension(5, 2, 0).unwrap();
        assert!(f.from_coeffs(&[1, 2]).is_ok());
        assert!(matches!(f.from_coeffs(&[1]), Err(Error::ElementLength { .. })));
        assert!(matches!(
            f.from_coeffs(&[5, 0]),
            Err(Error::CoefficientOutOfRange { .. })
        ));
    }

    #[test]
    fn spec_round_trip() {
        let f = Field::build_extension(13, 3, 8).unwrap();
        let g = Field::from_spec(&f.spec()).unwrap();
        assert_eq!(f, g);
        let p = Field::prime(13).unwrap();
        assert_eq!(p.spec().modulus, None);
        assert_eq!(Field::from_spec(&p.spec()).unwrap(), p);
    }
}
