//! The Legendre family `y^2 = x(x-1)(x-t)`: Hasse polynomial, the two
//! coefficients of `g^e` that govern supersingularity, and the identities
//! relating them.

use crate::error::{Error, Result};
use crate::ff::{Elem, Field};
use crate::upoly::{roots_in_extension, Embedding, UniPoly};

/// Seed used for the quadratic extension when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x4c45_4745_4e44_5245;

#[derive(Debug, Clone)]
pub struct LegendreContext {
    p: u64,
    e: u64,
    fp: Field,
    fp2: Field,
    seed: u64,
}

impl LegendreContext {
    /// `p = 3` is accepted so that [`hasse_poly`] can be evaluated there;
    /// the remaining checks want `p > 3`.
    pub fn new(p: u64) -> Result<LegendreContext> {
        LegendreContext::with_seed(p, DEFAULT_SEED)
    }

    pub fn with_seed(p: u64, seed: u64) -> Result<LegendreContext> {
        let fp = Field::prime(p)?;
        let fp2 = Field::build_extension(p, 2, seed)?;
        Ok(LegendreContext {
            p,
            e: (p - 1) / 2,
            fp,
            fp2,
            seed,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn fp(&self) -> &Field {
        &self.fp
    }

    pub fn fp2(&self) -> &Field {
        &self.fp2
    }

    fn require_large(&self) -> Result<()> {
        if self.p <= 3 {
            return Err(Error::UnsupportedCharacteristic(self.p));
        }
        Ok(())
    }
}

/// `C(n, i) mod p` for `0 <= i <= n < p`, by the multiplicative recurrence.
pub fn binomials_mod(n: u64, field: &Field) -> Vec<Elem> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = field.one();
    out.push(c);
    for i in 1..=n {
        let ratio = field
            .div(&field.from_u64(n - i + 1), &field.from_u64(i))
            .expect("i < p is invertible");
        c = field.mul(&c, &ratio);
        out.push(c);
    }
    out
}

/// `C(n, k) mod p` for arbitrary `n, k`, by Lucas' theorem.
pub fn binomial_lucas(mut n: u64, mut k: u64, field: &Field) -> Elem {
    let p = field.p();
    let mut acc = field.one();
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return field.zero();
        }
        acc = field.mul(&acc, &binomials_mod(ni, field)[ki as usize]);
        n /= p;
        k /= p;
    }
    acc
}

fn sign(e: u64, field: &Field) -> Elem {
    if e % 2 == 0 {
        field.one()
    } else {
        field.neg(&field.one())
    }
}

/// `H_p(t) = sum_{i=0}^{e} C(e, i)^2 t^i`.
pub fn hasse_poly(ctx: &LegendreContext) -> UniPoly {
    let f = &ctx.fp;
    let coeffs = binomials_mod(ctx.e, f).iter().map(|c| f.square(c)).collect();
    UniPoly::new(f, coeffs)
}

/// Closed form of the `x^{p-1}` coefficient of `g(x)^e`: `(-1)^e H_p(t)`.
pub fn delta_pm1(ctx: &LegendreContext) -> UniPoly {
    hasse_poly(ctx).scale(&sign(ctx.e, &ctx.fp))
}

/// Closed form of the `x^{p-2}` coefficient of `g(x)^e`:
/// `(-1)^{e-1} sum_{i=1}^{e} C(e, i-1) C(e, i) t^i`.
pub fn delta_pm2(ctx: &LegendreContext) -> UniPoly {
    let f = &ctx.fp;
    let c = binomials_mod(ctx.e, f);
    let mut coeffs = vec![f.zero()];
    for i in 1..=ctx.e as usize {
        coeffs.push(f.mul(&c[i - 1], &c[i]));
    }
    UniPoly::new(f, coeffs).scale(&sign(ctx.e + 1, f))
}

/// Polynomial in `x` whose coefficients are polynomials in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XtPoly {
    pub field: Field,
    /// `coeffs[j]` is the coefficient of `x^j`.
    pub coeffs: Vec<UniPoly>,
}

impl XtPoly {
    fn mul(&self, other: &XtPoly) -> XtPoly {
        let f = &self.field;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![UniPoly::zero(f); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        XtPoly {
            field: f.clone(),
            coeffs: out,
        }
    }

    pub fn coeff(&self, j: usize) -> UniPoly {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(&self.field))
    }

    fn trimmed(mut self) -> XtPoly {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }
}

/// `g(x)^e` with `g = x(x-1)(x-t)`, expanded by repeated multiplication
/// over `F_p[t][x]`.
pub fn g_power(ctx: &LegendreContext) -> XtPoly {
    let f = &ctx.fp;
    let g = XtPoly {
        field: f.clone(),
        coeffs: vec![
            UniPoly::zero(f),
            UniPoly::from_u64s(f, &[0, 1]),
            UniPoly::from_i64s(f, &[-1, -1]),
            UniPoly::one(f),
        ],
    };
    let mut acc = XtPoly {
        field: f.clone(),
        coeffs: vec![UniPoly::one(f)],
    };
    for _ in 0..ctx.e {
        acc = acc.mul(&g);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaReport {
    /// `delta_pm2` agrees with the brute-force `x^{p-2}` coefficient, and
    /// `delta_pm1` with the `x^{p-1}` coefficient.
    pub closed_forms: bool,
    /// `2 δ'_{p-2} = 2t δ'_{p-1} + δ_{p-1}`.
    pub derivative_identity: bool,
    /// `(e+1) δ_{p-2} = (e+1) t δ_{p-1} + t(t-1) δ'_{p-1}`.
    pub linear_identity: bool,
    /// `gcd(δ_{p-1}, δ_{p-2}) = 1`.
    pub coprime: bool,
    /// `gcd(H_p, H_p') = 1`.
    pub hasse_squarefree: bool,
}

impl DeltaReport {
    pub fn all(&self) -> bool {
        self.closed_forms
            && self.derivative_identity
            && self.linear_identity
            && self.coprime
            && self.hasse_squarefree
    }
}

pub fn check_delta_identities(ctx: &LegendreContext) -> Result<DeltaReport> {
    ctx.require_large()?;
    let f = &ctx.fp;
    let p = ctx.p as usize;
    let d1 = delta_pm1(ctx);
    let d2 = delta_pm2(ctx);
    let ge = g_power(ctx);
    let closed_forms = ge.coeff(p - 1) == d1 && ge.coeff(p - 2) == d2;

    let two = f.from_u64(2);
    let t = UniPoly::x(f);
    let d1p = d1.derivative();
    let lhs2 = d2.derivative().scale(&two);
    let rhs2 = &(&t * &d1p).scale(&two) + &d1;

    let e1 = f.from_u64(ctx.e + 1);
    let lhs3 = d2.scale(&e1);
    let t_tm1 = UniPoly::from_i64s(f, &[0, -1, 1]);
    let rhs3 = &(&t * &d1).scale(&e1) + &(&t_tm1 * &d1p);

    let h = hasse_poly(ctx);
    Ok(DeltaReport {
        closed_forms,
        derivative_identity: lhs2 == rhs2,
        linear_identity: lhs3 == rhs3,
        coprime: d1.gcd(&d2)?.is_one(),
        hasse_squarefree: h.gcd(&h.derivative())?.is_one(),
    })
}

/// `(p-i)! ≡ (-1)^i / (i-1)!  (mod p)` for every `i` in `1..=p`.
pub fn check_factorial_reflection(ctx: &LegendreContext) -> bool {
    let f = &ctx.fp;
    let p = ctx.p;
    let mut fact = vec![f.one()];
    for n in 1..p {
        let next = f.mul(fact.last().unwrap(), &f.from_u64(n));
        fact.push(next);
    }
    (1..=p).all(|i| {
        let lhs = fact[(p - i) as usize];
        let rhs = f
            .div(&sign(i, f), &fact[(i - 1) as usize])
            .expect("factorials below p are units");
        lhs == rhs
    })
}

/// Roots of `H_p` in `F_{p^2}`, sorted. Fails if `H_p` has an irreducible
/// factor of degree above 2 over `F_p`.
pub fn supersingular_invariants(ctx: &LegendreContext) -> Result<Vec<Elem>> {
    ctx.require_large()?;
    let h = hasse_poly(ctx);
    if let Some((d, _)) = h.distinct_degree_factorization().iter().find(|(d, _)| *d > 2) {
        return Err(Error::SplittingViolation(*d));
    }
    let emb = Embedding::new(&ctx.fp, &ctx.fp2)?;
    let roots = h.embed(&emb)?.roots(ctx.seed);
    Ok(roots)
}

/// Checks that `(-1)^e e!/(p-1)! · ∂_x^e (g^e)` equals
/// `prod_i ((t - a_i) x - (1 - a_i) t)` over the roots `a_i` of `H_p`.
pub fn check_hasse_product(ctx: &LegendreContext) -> Result<bool> {
    let roots = supersingular_invariants(ctx)?;
    let f = &ctx.fp;
    let f2 = &ctx.fp2;
    let e = ctx.e as usize;
    let p = ctx.p as usize;

    let ge = g_power(ctx);
    let mut e_fact = f.one();
    for i in 1..=ctx.e {
        e_fact = f.mul(&e_fact, &f.from_u64(i));
    }
    // (p-1)! = -1 by Wilson.
    let scale = f.div(&f.mul(&sign(ctx.e, f), &e_fact), &f.from_i64(-1))?;
    let mut lhs = Vec::new();
    for j in 0..ge.coeffs.len().saturating_sub(e) {
        // d^e/dx^e x^{j+e} = (j+e)(j+e-1)...(j+1) x^j
        let mut falling = f.one();
        for m in (j + 1)..=(j + e) {
            falling = f.mul(&falling, &f.from_u64((m % p) as u64));
        }
        lhs.push(ge.coeff(j + e).scale(&f.mul(&falling, &scale)));
    }
    let emb = Embedding::new(f, f2)?;
    let lhs = XtPoly {
        field: f2.clone(),
        coeffs: lhs.iter().map(|c| c.embed(&emb)).collect::<Result<_>>()?,
    }
    .trimmed();

    let mut rhs = XtPoly {
        field: f2.clone(),
        coeffs: vec![UniPoly::one(f2)],
    };
    for a in &roots {
        let factor = XtPoly {
            field: f2.clone(),
            coeffs: vec![
                UniPoly::new(f2, vec![f2.zero(), f2.sub(a, &f2.one())]),
                UniPoly::new(f2, vec![f2.neg(a), f2.one()]),
            ],
        };
        rhs = rhs.mul(&factor);
    }
    Ok(lhs == rhs.trimmed())
}

/// Depresses `x(x-1)(x-a)` by `x -> X + (a+1)/3` into `X^3 + AX + B`.
pub fn legendre_to_short_weierstrass(field: &Field, a: &Elem) -> Result<(Elem, Elem)> {
    if field.p() <= 3 {
        return Err(Error::UnsupportedCharacteristic(field.p()));
    }
    if a.is_zero() || *a == field.one() {
        return Err(Error::DegenerateLegendreParameter);
    }
    let one = field.one();
    let a2 = field.square(a);
    let aa = field.add(&field.sub(&a2, a), &one);
    let big_a = field.neg(&field.div(&aa, &field.from_u64(3))?);
    let ap1 = field.add(a, &one);
    let am2 = field.sub(a, &field.from_u64(2));
    let a2m1 = field.sub(&field.mul_u64(a, 2), &one);
    let num = field.mul(&field.mul(&ap1, &am2), &a2m1);
    let big_b = field.neg(&field.div(&num, &field.from_u64(27))?);
    Ok((big_a, big_b))
}

/// `j = 1728 · 4A^3 / (4A^3 + 27B^2)`.
pub fn j_invariant(field: &Field, a: &Elem, b: &Elem) -> Result<Elem> {
    let four_a3 = field.mul_u64(&field.pow(a, 3), 4);
    let disc = field.add(&four_a3, &field.mul_u64(&field.square(b), 27));
    if disc.is_zero() {
        return Err(Error::SingularCurve);
    }
    field.div(&field.mul_u64(&four_a3, 1728), &disc)
}

/// A short Weierstrass model over `F_p` with the given `j`-invariant.
pub fn model_for_j(field: &Field, j: &Elem) -> Result<(Elem, Elem)> {
    let j1728 = field.from_u64(1728);
    if j.is_zero() {
        return Ok((field.zero(), field.one()));
    }
    if *j == j1728 {
        return Ok((field.one(), field.zero()));
    }
    let k = field.div(j, &field.sub(&j1728, j))?;
    Ok((field.mul_u64(&k, 3), field.mul_u64(&k, 2)))
}

/// Supersingular `j`-invariants lying in `F_p`, read off from the Legendre
/// roots in `F_{p^2}`. Sorted ascending.
pub fn prime_field_supersingular_j(ctx: &LegendreContext) -> Result<Vec<u64>> {
    let f2 = &ctx.fp2;
    let mut js = Vec::new();
    for a in supersingular_invariants(ctx)? {
        let (aa, bb) = legendre_to_short_weierstrass(f2, &a)?;
        let j = j_invariant(f2, &aa, &bb)?;
        let emb = Embedding::new(&ctx.fp, f2)?;
        if let Some(jp) = emb.preimage(&j) {
            js.push(ctx.fp.as_prime(&jp).expect("prime field element"));
        }
    }
    js.sort_unstable();
    js.dedup();
    Ok(js)
}

/// Roots of `H_p` in `F_{p^k}` for a caller-chosen `k`.
pub fn hasse_roots(ctx: &LegendreContext, k: usize) -> Result<(Field, Vec<Elem>)> {
    roots_in_extension(&hasse_poly(ctx), k, ctx.seed)
}
