//! Howe curves of genus 4 built from two supersingular elliptic curves
//!
//! ```text
//! f1 = x^3 + A1 μ^2 x + B1 μ^3
//! f2 = (x - λ)^3 + A2 ν^2 (x - λ) + B2 ν^3
//! ```
//!
//! and the genus-2 curve `C: y^2 = f1 f2`. The fiber product is a
//! supersingular Howe curve exactly when both elliptic curves and `C` are
//! supersingular and the parameters are of Howe type.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartier::{
    a_number, cartier_matrix_unchecked, elliptic_supersingular,
    is_supersingular_genus2, reduced_system, CartierMatrix,
};
use crate::error::{Error, Result};
use crate::ff::{Elem, Field, FieldSpec};
use crate::legendre::{
    binomial_lucas, legendre_to_short_weierstrass, model_for_j, prime_field_supersingular_j,
    supersingular_invariants, LegendreContext,
};
use crate::mpoly::{Homogeneity, Monomial, TriPoly, Var};
use crate::upoly::{Embedding, UniPoly};

/// Largest prime for which the trivariate `h0, h1, h2` are expanded by default.
pub const DEFAULT_SYMBOLIC_CAP: u64 = 13;

/// Certificate schema version.
pub const CERT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoweFamily {
    field: Field,
    a1: Elem,
    b1: Elem,
    a2: Elem,
    b2: Elem,
}

fn expand_cubic_power(field: &Field, a: &Elem, b: &Elem, e: u64) -> Vec<Elem> {
    let cubic = UniPoly::new(field, vec![*b, *a, field.zero(), field.one()]);
    let g = cubic.pow(e);
    (0..=(3 * e) as usize).map(|i| g.coeff(i)).collect()
}

impl HoweFamily {
    /// Validates that both curves are nonsingular and supersingular.
    pub fn new(field: &Field, a1: Elem, b1: Elem, a2: Elem, b2: Elem) -> Result<HoweFamily> {
        for (a, b) in [(&a1, &b1), (&a2, &b2)] {
            if !elliptic_supersingular(field, a, b)? {
                return Err(Error::NotSupersingular);
            }
        }
        Ok(HoweFamily {
            field: field.clone(),
            a1,
            b1,
            a2,
            b2,
        })
    }

    /// Family over `F_p` from integer coefficients `[A1, B1, A2, B2]`.
    pub fn from_u64(p: u64, coeffs: [u64; 4]) -> Result<HoweFamily> {
        let f = Field::prime(p)?;
        for &c in &coeffs {
            if c >= p {
                return Err(Error::CoefficientOutOfRange { value: c, p });
            }
        }
        let [a1, b1, a2, b2] = coeffs.map(|c| f.from_u64(c));
        HoweFamily::new(&f, a1, b1, a2, b2)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// `[A1, B1, A2, B2]`.
    pub fn coefficients(&self) -> [Elem; 4] {
        [self.a1, self.b1, self.a2, self.b2]
    }

    /// The same family with coefficients mapped into `target`.
    pub fn over(&self, target: &Field) -> Result<HoweFamily> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let emb = Embedding::new(&self.field, target)?;
        let [a1, b1, a2, b2] = self.coefficients().map(|c| emb.apply(&c));
        Ok(HoweFamily {
            field: target.clone(),
            a1,
            b1,
            a2,
            b2,
        })
    }

    fn e(&self) -> u64 {
        (self.p() - 1) / 2
    }

    /// `α̃_k`: the `x^k` coefficient of `(x^3 + A1 x + B1)^e`.
    pub fn alpha_tilde(&self) -> Vec<Elem> {
        expand_cubic_power(&self.field, &self.a1, &self.b1, self.e())
    }

    /// `β̃_k`: the `x^k` coefficient of `(x^3 + A2 x + B2)^e`.
    pub fn beta_tilde(&self) -> Vec<Elem> {
        expand_cubic_power(&self.field, &self.a2, &self.b2, self.e())
    }
}

/// Default families over `F_p`: one model per supersingular `j`-invariant in
/// `F_p`, paired as `(E1, E2)` with `j1 <= j2`.
pub fn default_families(p: u64) -> Result<Vec<HoweFamily>> {
    let ctx = LegendreContext::new(p)?;
    let f = ctx.fp().clone();
    let js = prime_field_supersingular_j(&ctx)?;
    let models: Vec<(Elem, Elem)> = js
        .iter()
        .map(|&j| model_for_j(&f, &f.from_u64(j)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 0..models.len() {
        for j in i..models.len() {
            let (a1, b1) = models[i];
            let (a2, b2) = models[j];
            out.push(HoweFamily::new(&f, a1, b1, a2, b2)?);
        }
    }
    Ok(out)
}

/// One family per supersingular Legendre invariant `a`, with both curves
/// the depressed model of `y^2 = x(x-1)(x-a)` over `F_{p^2}`.
pub fn legendre_families(p: u64) -> Result<Vec<HoweFamily>> {
    let ctx = LegendreContext::new(p)?;
    let f2 = ctx.fp2().clone();
    supersingular_invariants(&ctx)?
        .iter()
        .map(|a| {
            let (aa, bb) = legendre_to_short_weierstrass(&f2, a)?;
            HoweFamily::new(&f2, aa, bb, aa, bb)
        })
        .collect()
}

/// `(f1, f2)` for the family at `(λ, μ, ν)`; all inputs over `fam.field()`.
pub fn build_pair(fam: &HoweFamily, lambda: &Elem, mu: &Elem, nu: &Elem) -> (UniPoly, UniPoly) {
    let f = &fam.field;
    let mu2 = f.square(mu);
    let nu2 = f.square(nu);
    let f1 = UniPoly::new(
        f,
        vec![
            f.mul(&fam.b1, &f.mul(&mu2, mu)),
            f.mul(&fam.a1, &mu2),
            f.zero(),
            f.one(),
        ],
    );
    let shifted = UniPoly::new(f, vec![f.neg(lambda), f.one()]);
    let cubic = UniPoly::new(
        f,
        vec![
            f.mul(&fam.b2, &f.mul(&nu2, nu)),
            f.mul(&fam.a2, &nu2),
            f.zero(),
            f.one(),
        ],
    );
    // cubic(x - λ) by Horner
    let mut f2 = UniPoly::zero(f);
    for c in cubic.coeffs().iter().rev() {
        f2 = &(&f2 * &shifted) + &UniPoly::constant(f, *c);
    }
    (f1, f2)
}

/// `μ ≠ 0`, `ν ≠ 0` and `gcd(f1, f2) = 1`.
pub fn is_howe_type(f1: &UniPoly, f2: &UniPoly, mu: &Elem, nu: &Elem) -> bool {
    !mu.is_zero() && !nu.is_zero() && f1.gcd(f2).map(|g| g.is_one()).unwrap_or(false)
}

/// Symbolic Cartier–Manin entries of `y^2 = f1 f2` as polynomials in
/// `λ, μ, ν`.
#[derive(Debug, Clone)]
pub struct SymbolicCartier {
    pub field: Field,
    pub alpha_tilde: Vec<Elem>,
    pub alpha: Vec<TriPoly>,
    pub beta_tilde: Vec<Elem>,
    pub beta_prime: Vec<TriPoly>,
    pub beta: Vec<TriPoly>,
    pub a: TriPoly,
    pub b: TriPoly,
    pub c: TriPoly,
    pub d: TriPoly,
}

fn check_cap(p: u64, cap: u64) -> Result<()> {
    if p > cap {
        return Err(Error::SymbolicCapExceeded { p, cap });
    }
    Ok(())
}

fn mono(l: u64, m: u64, n: u64) -> Monomial {
    Monomial::new(l as u32, m as u32, n as u32).expect("small exponent")
}

pub fn symbolic_cartier(fam: &HoweFamily, cap: u64) -> Result<SymbolicCartier> {
    let p = fam.p();
    check_cap(p, cap)?;
    let f = &fam.field;
    let e = fam.e();
    let top = 3 * e;
    let alpha_tilde = fam.alpha_tilde();
    let beta_tilde = fam.beta_tilde();
    let alpha: Vec<TriPoly> = (0..=top)
        .map(|k| TriPoly::term(f, alpha_tilde[k as usize], mono(0, top - k, 0)))
        .collect();
    let beta_prime: Vec<TriPoly> = (0..=top)
        .map(|k| TriPoly::term(f, beta_tilde[k as usize], mono(0, 0, top - k)))
        .collect();
    // f2^e = sum_n β'_n (x - λ)^n, so β_k = sum_n C(n, k) β'_n (-λ)^{n-k}.
    let mut beta = Vec::with_capacity(top as usize + 1);
    for k in 0..=top {
        let mut acc = TriPoly::zero(f);
        for n in k..=top {
            let mut c = f.mul(&binomial_lucas(n, k, f), &beta_tilde[n as usize]);
            if (n - k) % 2 == 1 {
                c = f.neg(&c);
            }
            acc = &acc + &TriPoly::term(f, c, mono(n - k, 0, top - n));
        }
        beta.push(acc);
    }
    let gamma = |i: u64| -> TriPoly {
        let mut acc = TriPoly::zero(f);
        for k in 0..=top.min(i) {
            if i - k <= top {
                acc = &acc + &(&alpha[k as usize] * &beta[(i - k) as usize]);
            }
        }
        acc
    };
    Ok(SymbolicCartier {
        field: f.clone(),
        a: gamma(p - 1),
        b: gamma(2 * p - 1),
        c: gamma(p - 2),
        d: gamma(2 * p - 2),
        alpha_tilde,
        alpha,
        beta_tilde,
        beta_prime,
        beta,
    })
}

impl SymbolicCartier {
    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn e(&self) -> u64 {
        (self.p() - 1) / 2
    }

    /// Entries at a concrete point; the point must lie in `self.field`.
    pub fn specialize(&self, lambda: &Elem, mu: &Elem, nu: &Elem) -> Result<CartierMatrix> {
        let asg = [Some(*lambda), Some(*mu), Some(*nu)];
        Ok(CartierMatrix::new(
            &self.field,
            self.a.evaluate(&asg)?,
            self.b.evaluate(&asg)?,
            self.c.evaluate(&asg)?,
            self.d.evaluate(&asg)?,
        ))
    }

    /// `ad - bc`.
    pub fn determinant(&self) -> TriPoly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolys {
    pub h0: TriPoly,
    pub h1: TriPoly,
    pub h2: TriPoly,
}

/// `h0 = (ad - bc)/(μν)^{(p+1)/2}`, `h1 = a b^{p-1} + d^p`,
/// `h2 = a^p + c^{p-1} d`.
pub fn build_h(sc: &SymbolicCartier) -> Result<HPolys> {
    let p = sc.p();
    let half = ((p + 1) / 2) as u32;
    let h0 = sc.determinant().div_monomial(0, half, half)?;
    let h1 = &(&sc.a * &sc.b.pow(p - 1)) + &sc.d.pow(p);
    let h2 = &sc.a.pow(p) + &(&sc.c.pow(p - 1) * &sc.d);
    Ok(HPolys { h0, h1, h2 })
}

fn homogeneous_of(poly: &TriPoly, degree: u64) -> bool {
    poly.homogeneous_degree() == Ok(Homogeneity::Homogeneous(degree as u32))
}

/// Outcome of the symbolic order and leading-term checks. Each field is one
/// assertion; `passed()` is their conjunction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub p: u64,
    pub entry_degrees: bool,
    pub h_degrees: bool,
    pub exact_division: bool,
    pub beta0_leading: bool,
    pub beta1_leading: bool,
    pub beta_e_leading: bool,
    pub beta_e1_leading: bool,
    pub ord_mu_a: bool,
    pub ord_mu_c: bool,
    pub ord_det: bool,
    pub h0_mod_mu_nu: bool,
    pub h0_constant_closed_form: bool,
    /// `h0(λ, 0, 0) = 0` forces `λ = 0`.
    pub mu_nu_not_both_zero: bool,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            ("entry_degrees", self.entry_degrees),
            ("h_degrees", self.h_degrees),
            ("exact_division", self.exact_division),
            ("beta0_leading", self.beta0_leading),
            ("beta1_leading", self.beta1_leading),
            ("beta_e_leading", self.beta_e_leading),
            ("beta_e1_leading", self.beta_e1_leading),
            ("ord_mu_a", self.ord_mu_a),
            ("ord_mu_c", self.ord_mu_c),
            ("ord_det", self.ord_det),
            ("h0_mod_mu_nu", self.h0_mod_mu_nu),
            ("h0_constant_closed_form", self.h0_constant_closed_form),
            ("mu_nu_not_both_zero", self.mu_nu_not_both_zero),
        ];
        checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect()
    }
}

fn sign_elem(f: &Field, n: u64) -> Elem {
    if n % 2 == 0 {
        f.one()
    } else {
        f.neg(&f.one())
    }
}

/// Checks the leading `λ`-term of a polynomial in `λ, ν`: its `λ`-degree is
/// `deg` and the coefficient of `λ^deg` is `coeff · ν^nu_exp`.
fn leading_lambda_is(poly: &TriPoly, deg: u64, coeff: &Elem, nu_exp: u64) -> bool {
    let f = poly.field();
    poly.degree_in(Var::Lambda) == Some(deg as u32)
        && !coeff.is_zero()
        && poly.coefficient_of(Var::Lambda, deg as u32) == TriPoly::term(f, *coeff, mono(0, 0, nu_exp))
}

pub fn check_order_lemmas(sc: &SymbolicCartier) -> Result<OrderReport> {
    let f = &sc.field;
    let p = sc.p();
    let e = sc.e();
    let half = (p + 1) / 2;

    let entry_degrees = homogeneous_of(&sc.a, 2 * p - 2)
        && homogeneous_of(&sc.b, p - 2)
        && homogeneous_of(&sc.c, 2 * p - 1)
        && homogeneous_of(&sc.d, p - 1);

    let det = sc.determinant();
    let hs = build_h(sc);
    let exact_division = hs.is_ok();
    let h_degrees = match &hs {
        Ok(h) => {
            homogeneous_of(&h.h0, 2 * p - 4)
                && homogeneous_of(&h.h1, p * (p - 1))
                && homogeneous_of(&h.h2, 2 * p * (p - 1))
        }
        Err(_) => false,
    };

    let beta = &sc.beta;
    let bt_pm2 = sc.beta_tilde[(p - 2) as usize];
    let beta0_leading = homogeneous_of(&beta[0], 3 * e)
        && leading_lambda_is(&beta[0], 3 * e, &sign_elem(f, 3 * e), 0);
    let beta1_coeff = f.mul(&f.from_u64(3 * e), &sign_elem(f, 3 * e - 1));
    let beta1_leading = homogeneous_of(&beta[1], 3 * e - 1)
        && leading_lambda_is(&beta[1], 3 * e - 1, &beta1_coeff, 0);
    let be_coeff = f.mul(
        &f.mul(&binomial_lucas(p - 2, e, f), &bt_pm2),
        &sign_elem(f, e - 1),
    );
    let beta_e_leading = homogeneous_of(&beta[e as usize], 2 * e)
        && leading_lambda_is(&beta[e as usize], e - 1, &be_coeff, e + 1);
    let be1_coeff = f.mul(
        &f.mul(&binomial_lucas(p - 2, e + 1, f), &bt_pm2),
        &sign_elem(f, e - 2),
    );
    let beta_e1_leading = homogeneous_of(&beta[(e + 1) as usize], 2 * e - 1)
        && leading_lambda_is(&beta[(e + 1) as usize], e - 2, &be1_coeff, e + 1);

    let ord_mu_a = sc.a.ord(Var::Mu) == Some(half as u32);
    let ord_mu_c = sc.c.ord(Var::Mu) == Some(half as u32);
    let ord_det = det.ord(Var::Mu) == Some(half as u32) && det.ord(Var::Nu) == Some(half as u32);

    let (h0_mod_mu_nu, h0_constant_closed_form, mu_nu_not_both_zero) = match &hs {
        Ok(h) => {
            let reduced = h.h0.reduce_mod_vars(&[Var::Mu, Var::Nu]);
            let big_b = reduced.coeff((2 * p - 4) as u32, 0, 0);
            let shape = !big_b.is_zero()
                && reduced == TriPoly::term(f, big_b, mono(2 * p - 4, 0, 0));
            let at = &sc.alpha_tilde;
            let factor = f.sub(
                &f.mul(&f.from_u64(3 * e), &binomial_lucas(p - 2, e, f)),
                &binomial_lucas(p - 2, e + 1, f),
            );
            let closed = f.mul(
                &f.mul(&at[(p - 2) as usize], &at[(3 * e) as usize]),
                &f.mul(&bt_pm2, &factor),
            );
            (shape, shape && closed == big_b, shape)
        }
        Err(_) => (false, false, false),
    };

    Ok(OrderReport {
        p,
        entry_degrees,
        h_degrees,
        exact_division,
        beta0_leading,
        beta1_leading,
        beta_e_leading,
        beta_e1_leading,
        ord_mu_a,
        ord_mu_c,
        ord_det,
        h0_mod_mu_nu,
        h0_constant_closed_form,
        mu_nu_not_both_zero,
    })
}

/// With `ν = 1`: `gcd(c'_0, d_0) = 1` and `gcd(b_0, d_0) = 1`, where `c'_0`
/// is the `μ^{(p+1)/2}` coefficient of `c` and `b_0, d_0` the `μ`-free parts
/// of `b, d`, all as polynomials in `λ`.
pub fn check_coprimality_lemma(fam: &HoweFamily, cap: u64) -> Result<bool> {
    let sc = symbolic_cartier(fam, cap)?;
    let one = sc.field.one();
    let half = ((sc.p() + 1) / 2) as u32;
    let part = |poly: &TriPoly, m: u32| -> Result<UniPoly> {
        poly.substitute(Var::Nu, &one)
            .coefficient_of(Var::Mu, m)
            .to_univariate(Var::Lambda)
    };
    let c0 = part(&sc.c, half)?;
    let b0 = part(&sc.b, 0)?;
    let d0 = part(&sc.d, 0)?;
    Ok(c0.gcd(&d0)?.is_one() && b0.gcd(&d0)?.is_one())
}

/// Numeric evaluation of the Cartier–Manin entries on the slice `ν = 1`.
///
/// For fixed `λ` each entry is a polynomial in `μ`:
/// `γ_i = sum_k α̃_k μ^{3e-k} β_{i-k}(λ)`. This is the same quantity
/// `cartier_matrix(f1 f2)` reads off, computed without re-expanding the
/// product at every `μ`.
#[derive(Debug, Clone)]
pub struct FiberEvaluator {
    field: Field,
    p: u64,
    e: u64,
    alpha_tilde: Vec<Elem>,
    beta_tilde: Vec<Elem>,
    binom: Vec<Vec<Elem>>,
}

impl FiberEvaluator {
    /// `fam` must already live over the evaluation field.
    pub fn new(fam: &HoweFamily) -> FiberEvaluator {
        let f = fam.field.clone();
        let p = fam.p();
        let e = fam.e();
        let top = 3 * e;
        let binom = (0..=top)
            .map(|n| (0..=n).map(|k| binomial_lucas(n, k, &f)).collect())
            .collect();
        FiberEvaluator {
            alpha_tilde: fam.alpha_tilde(),
            beta_tilde: fam.beta_tilde(),
            field: f,
            p,
            e,
            binom,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `β_k(λ)` at `ν = 1` for `k = 0..=3e`.
    pub fn betas(&self, lambda: &Elem) -> Vec<Elem> {
        let f = &self.field;
        let top = (3 * self.e) as usize;
        let neg_l = f.neg(lambda);
        let mut pw = vec![f.one(); top + 1];
        for i in 1..=top {
            pw[i] = f.mul(&pw[i - 1], &neg_l);
        }
        (0..=top)
            .map(|k| {
                let mut acc = f.zero();
                for n in k..=top {
                    let t = f.mul(&self.binom[n][k], &self.beta_tilde[n]);
                    acc = f.add(&acc, &f.mul(&t, &pw[n - k]));
                }
                acc
            })
            .collect()
    }

    /// `[a, b, c, d]` as polynomials in `μ` for the given `β_k(λ)`.
    pub fn fiber(&self, betas: &[Elem]) -> [UniPoly; 4] {
        let f = &self.field;
        let p = self.p;
        let top = 3 * self.e;
        [p - 1, 2 * p - 1, p - 2, 2 * p - 2].map(|i| {
            let mut coeffs = vec![f.zero(); top as usize + 1];
            for k in 0..=top.min(i) {
                if i - k <= top {
                    coeffs[(top - k) as usize] =
                        f.mul(&self.alpha_tilde[k as usize], &betas[(i - k) as usize]);
                }
            }
            UniPoly::new(f, coeffs)
        })
    }

    /// Cartier–Manin matrix at `(λ, μ, 1)`.
    pub fn matrix(&self, lambda: &Elem, mu: &Elem) -> CartierMatrix {
        let polys = self.fiber(&self.betas(lambda));
        let [a, b, c, d] = polys.map(|g| g.eval(mu));
        CartierMatrix::new(&self.field, a, b, c, d)
    }

    /// `(h0, h1, h2)` restricted to the line `λ = const, ν = 1`.
    pub fn fiber_h(&self, lambda: &Elem) -> Result<[UniPoly; 3]> {
        let f = &self.field;
        let p = self.p;
        let [a, b, c, d] = self.fiber(&self.betas(lambda));
        let det = &(&a * &d) - &(&b * &c);
        let half = ((p + 1) / 2) as usize;
        let coeffs = det.coeffs();
        if coeffs.iter().take(half).any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        let h0 = UniPoly::new(f, coeffs.iter().skip(half).copied().collect());
        let h1 = &(&a * &b.pow(p - 1)) + &d.pow(p);
        let h2 = &a.pow(p) + &(&c.pow(p - 1) * &d);
        Ok([h0, h1, h2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Scan,
    Resultant,
    Auto,
}

impl Strategy {
    /// `Auto` becomes `Resultant` up to the symbolic cap and `Scan` above it.
    pub fn resolve(self, p: u64, cap: u64) -> Strategy {
        match self {
            Strategy::Auto if p <= cap => Strategy::Resultant,
            Strategy::Auto => Strategy::Scan,
            s => s,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Scan => "scan",
            Strategy::Resultant => "resultant",
            Strategy::Auto => "auto",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub strategy: Strategy,
    pub k_max: usize,
    pub seed: u64,
    pub symbolic_cap: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            strategy: Strategy::Auto,
            k_max: 8,
            seed: 0,
            symbolic_cap: DEFAULT_SYMBOLIC_CAP,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOutcome {
    /// Extension degree of the certificates, `None` if nothing was found.
    pub k: Option<usize>,
    pub certificates: Vec<HoweCertificate>,
    pub diagnostics: Vec<String>,
}

/// Grid scan over `(λ, μ) ∈ F_{p^k} × F_{p^k}^*` with `ν = 1`.
fn scan_points(fam: &HoweFamily) -> Vec<(Elem, Elem)> {
    let ev = FiberEvaluator::new(fam);
    let f = ev.field().clone();
    let p = fam.p();
    let order = f.order();
    let mut hits: Vec<(Elem, Elem)> = (0..order)
        .into_par_iter()
        .flat_map_iter(|li| {
            let lambda = f.element_at(li);
            let polys = ev.fiber(&ev.betas(&lambda));
            let mut found = Vec::new();
            for mi in 1..order {
                let mu = f.element_at(mi);
                let [a, b, c, d] = [0, 1, 2, 3].map(|i| polys[i].eval(&mu));
                if !f.sub(&f.mul(&a, &d), &f.mul(&b, &c)).is_zero() {
                    continue;
                }
                let h1 = f.add(&f.mul(&a, &f.pow(&b, p - 1)), &f.frobenius(&d));
                let h2 = f.add(&f.frobenius(&a), &f.mul(&f.pow(&c, p - 1), &d));
                if h1.is_zero() && h2.is_zero() {
                    found.push((lambda, mu));
                }
            }
            found
        })
        .collect();
    hits.sort();
    hits
}

/// Newton interpolation through `(xs[i], ys[i])`, batching the inversions
/// of each divided-difference column.
fn interpolate(field: &Field, xs: &[Elem], ys: &[Elem]) -> Result<UniPoly> {
    let f = field;
    let n = xs.len();
    let mut c = ys.to_vec();
    let mut dens = Vec::with_capacity(n);
    for j in 1..n {
        dens.clear();
        dens.extend((j..n).map(|i| f.sub(&xs[i], &xs[i - j])));
        let inv = batch_inverse(f, &dens)?;
        for i in (j..n).rev() {
            c[i] = f.mul(&f.sub(&c[i], &c[i - 1]), &inv[i - j]);
        }
    }
    // Horner on the Newton form, in place: acc <- acc * (x - xs[i]) + c[i].
    let mut acc = vec![c[n - 1]];
    for i in (0..n - 1).rev() {
        let xi = xs[i];
        acc.push(f.zero());
        for t in (1..acc.len()).rev() {
            acc[t] = f.sub(&acc[t - 1], &f.mul(&xi, &acc[t]));
        }
        acc[0] = f.sub(&c[i], &f.mul(&xi, &acc[0]));
    }
    Ok(UniPoly::new(f, acc))
}

fn batch_inverse(f: &Field, xs: &[Elem]) -> Result<Vec<Elem>> {
    let mut prefix = Vec::with_capacity(xs.len());
    let mut acc = f.one();
    for x in xs {
        prefix.push(acc);
        acc = f.mul(&acc, x);
    }
    let mut inv = f.inv(&acc)?;
    let mut out = vec![f.zero(); xs.len()];
    for i in (0..xs.len()).rev() {
        out[i] = f.mul(&inv, &prefix[i]);
        inv = f.mul(&inv, &xs[i]);
    }
    Ok(out)
}

/// `Res(g, h)` from `Res(g, h mod g)`, given the true degree of `h`.
fn resultant_via_remainder(g: &UniPoly, r: &UniPoly, h_degree: usize) -> Result<Elem> {
    let f = g.field();
    if r.is_zero() {
        return Ok(f.zero());
    }
    let lc = g.leading().ok_or(Error::ZeroPolynomial)?;
    let shift = h_degree - r.degree().unwrap();
    Ok(f.mul(&f.pow(&lc, shift as u64), &g.resultant(r)?))
}

/// `μ`-elimination data for one family: `G(λ) = gcd(Res_μ(h0, h1), Res_μ(h0, h2))`.
#[derive(Debug, Clone)]
pub struct Eliminant {
    /// `None` when a resultant vanished identically.
    pub g: Option<UniPoly>,
    pub resultant_degrees: [Option<usize>; 2],
    pub diagnostics: Vec<String>,
}

/// Eliminates `μ` from `(h0, h1)` and `(h0, h2)` on `ν = 1`.
///
/// The symbolic `h_i` supply the `μ`-degrees, the leading coefficients in
/// `λ` and the total degrees that bound `deg_λ Res`. The resultants are then
/// recovered by evaluation at enough points of an auxiliary extension and
/// interpolation; at each point `h1, h2` are reduced modulo `h0` before the
/// resultant is taken.
pub fn eliminate(fam: &HoweFamily, cap: u64, seed: u64) -> Result<Eliminant> {
    let p = fam.p();
    let fq = fam.field().clone();
    let sc = symbolic_cartier(fam, cap)?;
    let hs = build_h(&sc)?;
    let one = fq.one();
    let deh: Vec<TriPoly> = [&hs.h0, &hs.h1, &hs.h2]
        .iter()
        .map(|h| h.substitute(Var::Nu, &one))
        .collect();
    let mu_deg: Vec<u32> = deh.iter().map(|h| h.degree_in(Var::Mu).unwrap_or(0)).collect();
    let tot: Vec<u64> = deh.iter().map(|h| h.total_degree().unwrap_or(0) as u64).collect();
    let lcs: Vec<UniPoly> = deh
        .iter()
        .zip(&mu_deg)
        .map(|(h, &d)| h.coefficient_of(Var::Mu, d).to_univariate(Var::Lambda))
        .collect::<Result<_>>()?;
    let bounds = [tot[0] * tot[1], tot[0] * tot[2]];
    let need = bounds[1].max(bounds[0]) as usize + 1;
    let bad: usize = lcs.iter().map(|l| l.degree().unwrap_or(0)).sum();

    let kq = fq.k();
    let mut t = kq;
    while (p as f64).powi(t as i32) < (need + bad + 1) as f64 {
        t += kq;
    }
    let ev_field = Field::build_extension(p, t, seed ^ 0x5245_5355_4c54)?;
    let emb = Embedding::new(&fq, &ev_field)?;
    let lcs_ev: Vec<UniPoly> = lcs.iter().map(|l| l.embed(&emb)).collect::<Result<_>>()?;
    let mut xs = Vec::with_capacity(need);
    let mut idx = 0u64;
    while xs.len() < need {
        let x = ev_field.element_at(idx);
        idx += 1;
        if lcs_ev.iter().all(|l| !l.eval(&x).is_zero()) {
            xs.push(x);
        }
    }
    let ev = FiberEvaluator::new(&fam.over(&ev_field)?);
    let values: Vec<[Elem; 2]> = xs
        .par_iter()
        .map(|x| -> Result<[Elem; 2]> {
            let [a, b, c, d] = ev.fiber(&ev.betas(x));
            let det = &(&a * &d) - &(&b * &c);
            let half = ((p + 1) / 2) as usize;
            let h0 = UniPoly::new(&ev_field, det.coeffs().iter().skip(half).copied().collect());
            if h0.degree() != Some(mu_deg[0] as usize) {
                return Err(Error::Inconsistent("h0 lost its generic mu-degree at an evaluation point"));
            }
            let r1 = &a.rem(&h0).mul_mod(&b.pow_mod(p - 1, &h0), &h0) + &d.pow_mod(p, &h0);
            let r2 = &a.pow_mod(p, &h0) + &c.pow_mod(p - 1, &h0).mul_mod(&d, &h0);
            Ok([
                resultant_via_remainder(&h0, &r1.rem(&h0), mu_deg[1] as usize)?,
                resultant_via_remainder(&h0, &r2.rem(&h0), mu_deg[2] as usize)?,
            ])
        })
        .collect::<Result<_>>()?;

    let mut diagnostics = Vec::new();
    let mut res = Vec::new();
    for (i, bound) in bounds.iter().enumerate() {
        let n = *bound as usize + 1;
        let ys: Vec<Elem> = values[..n].iter().map(|v| v[i]).collect();
        let r = interpolate(&ev_field, &xs[..n], &ys)?;
        let coeffs = r
            .coeffs()
            .iter()
            .map(|c| {
                emb.preimage(c)
                    .ok_or(Error::Inconsistent("interpolated resultant left the base field"))
            })
            .collect::<Result<Vec<Elem>>>()?;
        let r = UniPoly::new(&fq, coeffs);
        if r.is_zero() {
            diagnostics.push(format!(
                "Res_mu(h0, h{}) vanishes identically; falling back to scan",
                i + 1
            ));
        }
        res.push(r);
    }
    let resultant_degrees = [res[0].degree(), res[1].degree()];
    let g = if res.iter().any(UniPoly::is_zero) {
        None
    } else {
        Some(res[0].gcd(&res[1])?)
    };
    Ok(Eliminant {
        g,
        resultant_degrees,
        diagnostics,
    })
}

/// Common roots `μ ≠ 0` of `h0, h1, h2` on the line through `λ`.
fn solve_fiber(ev: &FiberEvaluator, lambda: &Elem, seed: u64) -> Result<Vec<Elem>> {
    let f = ev.field();
    let [h0, h1, h2] = ev.fiber_h(lambda)?;
    let g = h0.gcd(&h1)?.gcd(&h2)?;
    let roots = if g.is_zero() {
        f.elements().collect()
    } else {
        g.roots(seed)
    };
    Ok(roots.into_iter().filter(|m| !m.is_zero()).collect())
}

fn resultant_points(fam_k: &HoweFamily, g: &UniPoly, seed: u64) -> Result<Vec<(Elem, Elem)>> {
    let f = fam_k.field();
    let emb = Embedding::new(g.field(), f)?;
    let gk = g.embed(&emb)?;
    let lambdas = if gk.is_constant() { Vec::new() } else { gk.roots(seed) };
    let ev = FiberEvaluator::new(fam_k);
    let mut pts: Vec<(Elem, Elem)> = lambdas
        .par_iter()
        .map(|l| -> Result<Vec<(Elem, Elem)>> {
            Ok(solve_fiber(&ev, l, seed)?.into_iter().map(|m| (*l, m)).collect())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    pts.sort();
    Ok(pts)
}

fn certify_points(fam_k: &HoweFamily, pts: &[(Elem, Elem)]) -> Vec<HoweCertificate> {
    let one = fam_k.field().one();
    let mut out: Vec<HoweCertificate> = pts
        .par_iter()
        .filter_map(|(l, m)| {
            let cert = HoweCertificate::issue(fam_k, l, m, &one);
            cert.flags.all().then_some(cert)
        })
        .collect();
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// Per-family state reused across extension degrees.
struct FamilyRun<'a> {
    fam: &'a HoweFamily,
    strategy: Strategy,
    eliminant: Option<Eliminant>,
}

impl<'a> FamilyRun<'a> {
    fn new(fam: &'a HoweFamily, cfg: &SearchConfig, diagnostics: &mut Vec<String>) -> Result<Self> {
        let mut strategy = cfg.strategy.resolve(fam.p(), cfg.symbolic_cap);
        let mut eliminant = None;
        if strategy == Strategy::Resultant {
            let el = eliminate(fam, cfg.symbolic_cap, cfg.seed)?;
            diagnostics.extend(el.diagnostics.iter().cloned());
            if el.g.is_none() {
                strategy = Strategy::Scan;
            } else {
                eliminant = Some(el);
            }
        }
        Ok(FamilyRun {
            fam,
            strategy,
            eliminant,
        })
    }

    fn at_degree(&self, field: &Field, seed: u64) -> Result<Option<Vec<HoweCertificate>>> {
        if field.k() % self.fam.field().k() != 0 {
            return Ok(None);
        }
        let fam_k = self.fam.over(field)?;
        let pts = match (self.strategy, &self.eliminant) {
            (Strategy::Resultant, Some(el)) => {
                resultant_points(&fam_k, el.g.as_ref().expect("checked"), seed)?
            }
            _ => scan_points(&fam_k),
        };
        Ok(Some(certify_points(&fam_k, &pts)))
    }
}

/// All certificates for `fam` over `F_{p^k}`, with the field built from `seed`.
pub fn search_at_degree(fam: &HoweFamily, k: usize, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let mut diagnostics = Vec::new();
    let run = FamilyRun::new(fam, cfg, &mut diagnostics)?;
    let field = Field::build_extension(fam.p(), k, cfg.seed)?;
    let certs = run.at_degree(&field, cfg.seed)?.unwrap_or_default();
    Ok(SearchOutcome {
        k: (!certs.is_empty()).then_some(k),
        certificates: certs,
        diagnostics,
    })
}

/// Extension ladder `k = 1, ..., k_max` over every family; stops at the first
/// `k` where some family has a solution and returns all solutions at that
/// `k`, ordered by family then point.
pub fn search_families(fams: &[HoweFamily], cfg: &SearchConfig) -> Result<SearchOutcome> {
    if cfg.k_max == 0 {
        return Err(Error::ZeroDegree);
    }
    let Some(first) = fams.first() else {
        return Ok(SearchOutcome::default());
    };
    let p = first.p();
    if fams.iter().any(|f| f.p() != p) {
        return Err(Error::FieldMismatch);
    }
    let mut diagnostics = Vec::new();
    let runs: Vec<FamilyRun> = fams
        .iter()
        .map(|f| FamilyRun::new(f, cfg, &mut diagnostics))
        .collect::<Result<_>>()?;
    for k in 1..=cfg.k_max {
        let field = Field::build_extension(p, k, cfg.seed)?;
        let mut certs = Vec::new();
        for run in &runs {
            if let Some(c) = run.at_degree(&field, cfg.seed)? {
                certs.extend(c);
            }
        }
        if !certs.is_empty() {
            return Ok(SearchOutcome {
                k: Some(k),
                certificates: certs,
                diagnostics,
            });
        }
    }
    Ok(SearchOutcome {
        k: None,
        certificates: Vec::new(),
        diagnostics,
    })
}

pub fn search(fam: &HoweFamily, cfg: &SearchConfig) -> Result<SearchOutcome> {
    search_families(std::slice::from_ref(fam), cfg)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    #[serde(rename = "A1")]
    pub a1: Vec<u64>,
    #[serde(rename = "B1")]
    pub b1: Vec<u64>,
    #[serde(rename = "A2")]
    pub a2: Vec<u64>,
    #[serde(rename = "B2")]
    pub b2: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub lambda: Vec<u64>,
    pub mu: Vec<u64>,
    pub nu: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub d: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFlags {
    pub howe_type: bool,
    pub h0_zero: bool,
    pub h1_zero: bool,
    pub h2_zero: bool,
    pub mm_sigma_zero: bool,
}

impl CertificateFlags {
    pub fn all(&self) -> bool {
        self.howe_type && self.h0_zero && self.h1_zero && self.h2_zero && self.mm_sigma_zero
    }
}

/// A self-contained witness of one supersingular Howe curve. Every element
/// is serialized in the certificate's field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoweCertificate {
    pub version: u32,
    pub p: u64,
    pub field: FieldSpec,
    pub family: FamilyRecord,
    pub point: PointRecord,
    pub matrix: MatrixRecord,
    pub flags: CertificateFlags,
}

fn flags_for(fam: &HoweFamily, f1: &UniPoly, f2: &UniPoly, mu: &Elem, nu: &Elem, m: &CartierMatrix) -> CertificateFlags {
    let f = fam.field();
    let [det, e1, e2] = reduced_system(f, &m.a, &m.b, &m.c, &m.d);
    CertificateFlags {
        howe_type: is_howe_type(f1, f2, mu, nu),
        h0_zero: det.is_zero(),
        h1_zero: e1.is_zero(),
        h2_zero: e2.is_zero(),
        mm_sigma_zero: is_supersingular_genus2(m),
    }
}

impl HoweCertificate {
    /// Computes the matrix and flags at `(λ, μ, ν)` for a family already
    /// over the certificate field. The flags may be false; callers decide.
    pub fn issue(fam: &HoweFamily, lambda: &Elem, mu: &Elem, nu: &Elem) -> HoweCertificate {
        let f = fam.field();
        let (f1, f2) = build_pair(fam, lambda, mu, nu);
        let m = cartier_matrix_unchecked(&(&f1 * &f2));
        let flags = flags_for(fam, &f1, &f2, mu, nu, &m);
        let enc = |x: &Elem| f.to_coeffs(x);
        HoweCertificate {
            version: CERT_VERSION,
            p: f.p(),
            field: f.spec(),
            family: FamilyRecord {
                a1: enc(&fam.a1),
                b1: enc(&fam.b1),
                a2: enc(&fam.a2),
                b2: enc(&fam.b2),
            },
            point: PointRecord {
                lambda: enc(lambda),
                mu: enc(mu),
                nu: enc(nu),
            },
            matrix: MatrixRecord {
                a: enc(&m.a),
                b: enc(&m.b),
                c: enc(&m.c),
                d: enc(&m.d),
            },
            flags,
        }
    }

    fn sort_key(&self) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        (
            self.point.lambda.clone(),
            self.point.mu.clone(),
            self.point.nu.clone(),
        )
    }

    pub fn extension_degree(&self) -> usize {
        self.field.k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    SingularCurve,
    E1NotSupersingular,
    E2NotSupersingular,
    NotHoweType,
    MatrixMismatch,
    ReducedSystemFails,
    NotSupersingular,
    FlagMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub reason: Option<FailureReason>,
    /// `2 - rank M` for the genus-2 curve.
    pub a_number_c: u8,
    /// `1 + 1 + a(C)`: both elliptic factors contribute 1.
    pub a_number_howe: u8,
}

impl VerifyReport {
    fn fail(reason: FailureReason) -> VerifyReport {
        VerifyReport {
            ok: false,
            reason: Some(reason),
            a_number_c: 0,
            a_number_howe: 0,
        }
    }
}

/// Re-derives everything in `cert` from its field, family and point.
/// Malformed input is an `Err`; a well-formed certificate that does not
/// check out yields `ok = false` with a reason.
pub fn verify_certificate(cert: &HoweCertificate) -> Result<VerifyReport> {
    if cert.version != CERT_VERSION {
        return Err(Error::MalformedCertificate(format!(
            "unsupported version {}",
            cert.version
        )));
    }
    let f = Field::from_spec(&cert.field)?;
    if cert.p != f.p() {
        return Err(Error::MalformedCertificate(format!(
            "p = {} disagrees with the field characteristic {}",
            cert.p,
            f.p()
        )));
    }
    if f.p() <= 3 {
        return Err(Error::UnsupportedCharacteristic(f.p()));
    }
    let parse = |v: &[u64]| f.from_coeffs(v);
    let [a1, b1, a2, b2] = [
        &cert.family.a1,
        &cert.family.b1,
        &cert.family.a2,
        &cert.family.b2,
    ]
    .map(|v| parse(v));
    let (a1, b1, a2, b2) = (a1?, b1?, a2?, b2?);
    let lambda = parse(&cert.point.lambda)?;
    let mu = parse(&cert.point.mu)?;
    let nu = parse(&cert.point.nu)?;
    let stored = CartierMatrix::new(
        &f,
        parse(&cert.matrix.a)?,
        parse(&cert.matrix.b)?,
        parse(&cert.matrix.c)?,
        parse(&cert.matrix.d)?,
    );

    for (a, b, reason) in [
        (&a1, &b1, FailureReason::E1NotSupersingular),
        (&a2, &b2, FailureReason::E2NotSupersingular),
    ] {
        match elliptic_supersingular(&f, a, b) {
            Err(Error::SingularCurve) => return Ok(VerifyReport::fail(FailureReason::SingularCurve)),
            Err(e) => return Err(e),
            Ok(false) => return Ok(VerifyReport::fail(reason)),
            Ok(true) => {}
        }
    }
    let fam = HoweFamily {
        field: f.clone(),
        a1,
        b1,
        a2,
        b2,
    };
    let (f1, f2) = build_pair(&fam, &lambda, &mu, &nu);
    if !is_howe_type(&f1, &f2, &mu, &nu) {
        return Ok(VerifyReport::fail(FailureReason::NotHoweType));
    }
    let m = cartier_matrix_unchecked(&(&f1 * &f2));
    if m != stored {
        return Ok(VerifyReport::fail(FailureReason::MatrixMismatch));
    }
    let flags = flags_for(&fam, &f1, &f2, &mu, &nu, &m);
    if !(flags.h0_zero && flags.h1_zero && flags.h2_zero) {
        return Ok(VerifyReport::fail(FailureReason::ReducedSystemFails));
    }
    if !flags.mm_sigma_zero {
        return Ok(VerifyReport::fail(FailureReason::NotSupersingular));
    }
    if flags != cert.flags {
        return Ok(VerifyReport::fail(FailureReason::FlagMismatch));
    }
    let ac = a_number(&m);
    Ok(VerifyReport {
        ok: true,
        reason: None,
        a_number_c: ac,
        a_number_howe: 2 + ac,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartier::cartier_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam(p: u64) -> HoweFamily {
        default_families(p).unwrap().remove(0)
    }

    #[test]
    fn identity_parameters() {
        let fm = fam(5);
        let f = fm.field().clone();
        let (f1, f2) = build_pair(&fm, &f.zero(), &f.one(), &f.one());
        let [a1, b1, a2, b2] = fm.coefficients();
        assert_eq!(f1, UniPoly::new(&f, vec![b1, a1, f.zero(), f.one()]));
        assert_eq!(f2, UniPoly::new(&f, vec![b2, a2, f.zero(), f.one()]));
        let (g1, _) = build_pair(&fm, &f.one(), &f.zero(), &f.one());
        assert_eq!(g1, UniPoly::monomial(&f, f.one(), 3));
    }

    #[test]
    fn howe_type_conditions() {
        let fm = fam(7);
        let f = fm.field().clone();
        let (f1, f2) = build_pair(&fm, &f.from_u64(3), &f.one(), &f.one());
        assert!(is_howe_type(&f1, &f2, &f.one(), &f.one()));
        assert!(!is_howe_type(&f1, &f1, &f.one(), &f.one()));
        assert!(!is_howe_type(&f1, &f2, &f.zero(), &f.one()));
    }

    #[test]
    fn default_families_are_supersingular_over_fp() {
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
            let fams = default_families(p).unwrap();
            assert!(!fams.is_empty(), "p = {p}");
            for fm in fams {
                assert!(fm.field().is_prime_field());
                let [a1, b1, a2, b2] = fm.coefficients();
                assert!(elliptic_supersingular(fm.field(), &a1, &b1).unwrap());
                assert!(elliptic_supersingular(fm.field(), &a2, &b2).unwrap());
            }
        }
    }

    #[test]
    fn symbolic_p5_orders() {
        let sc = symbolic_cartier(&fam(5), DEFAULT_SYMBOLIC_CAP).unwrap();
        assert_eq!(sc.a.ord(Var::Mu), Some(3));
        assert_eq!(sc.c.ord(Var::Mu), Some(3));
        assert_eq!(sc.a.homogeneous_degree(), Ok(Homogeneity::Homogeneous(8)));
        let hs = build_h(&sc).unwrap();
        assert_eq!(hs.h0.homogeneous_degree(), Ok(Homogeneity::Homogeneous(6)));
        let r = hs.h0.reduce_mod_vars(&[Var::Mu, Var::Nu]);
        assert_eq!(r.len(), 1);
        assert!(!r.coeff(6, 0, 0).is_zero());
        let report = check_order_lemmas(&sc).unwrap();
        assert!(report.passed(), "{:?}", report.failures());
    }

    #[test]
    fn symbolic_cap_enforced() {
        assert_eq!(
            symbolic_cartier(&fam(17), 13).err(),
            Some(Error::SymbolicCapExceeded { p: 17, cap: 13 })
        );
    }

    #[test]
    fn specialization_matches_numeric_p7() {
        let fm = fam(7);
        let sc = symbolic_cartier(&fm, DEFAULT_SYMBOLIC_CAP).unwrap();
        let f49 = Field::build_extension(7, 2, 1).unwrap();
        let emb = Embedding::new(fm.field(), &f49).unwrap();
        let sc49 = SymbolicCartier {
            field: f49.clone(),
            a: sc.a.embed(&emb).unwrap(),
            b: sc.b.embed(&emb).unwrap(),
            c: sc.c.embed(&emb).unwrap(),
            d: sc.d.embed(&emb).unwrap(),
            ..sc.clone()
        };
        let fm49 = fm.over(&f49).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let [l, m, n] = [0; 3].map(|_| f49.random(&mut rng));
            let (f1, f2) = build_pair(&fm49, &l, &m, &n);
            let numeric = cartier_matrix_unchecked(&(&f1 * &f2));
            assert_eq!(sc49.specialize(&l, &m, &n).unwrap(), numeric);
        }
    }

    #[test]
    fn fiber_evaluator_matches_product() {
        let fm = fam(11);
        let f = fm.field().clone();
        let ev = FiberEvaluator::new(&fm);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let l = f.random(&mut rng);
            let m = f.random(&mut rng);
            let (f1, f2) = build_pair(&fm, &l, &m, &f.one());
            assert_eq!(ev.matrix(&l, &m), cartier_matrix_unchecked(&(&f1 * &f2)));
        }
    }

    #[test]
    fn frobenius_shortcut_matches_naive_p7() {
        let sc = symbolic_cartier(&fam(7), DEFAULT_SYMBOLIC_CAP).unwrap();
        assert_eq!(sc.d.pow(7), sc.d.pow_naive(7));
        let hs = build_h(&sc).unwrap();
        let naive = &(&sc.a * &sc.b.pow_naive(6)) + &sc.d.pow_naive(7);
        assert_eq!(hs.h1, naive);
    }

    #[test]
    fn p5_search_and_verify() {
        let cfg = SearchConfig::default();
        let out = search(&fam(5), &cfg).unwrap();
        assert_eq!(out.k, Some(1));
        assert!(!out.certificates.is_empty());
        for c in &out.certificates {
            let r = verify_certificate(c).unwrap();
            assert!(r.ok, "{r:?}");
            assert!(r.a_number_howe >= 3);
            let f = Field::from_spec(&c.field).unwrap();
            let m = CartierMatrix::new(
                &f,
                f.from_coeffs(&c.matrix.a).unwrap(),
                f.from_coeffs(&c.matrix.b).unwrap(),
                f.from_coeffs(&c.matrix.c).unwrap(),
                f.from_coeffs(&c.matrix.d).unwrap(),
            );
            assert!(crate::cartier::reduced_system_holds(&f, &m.a, &m.b, &m.c, &m.d));
            assert!(is_supersingular_genus2(&m));
        }
    }

    #[test]
    fn tampering_is_detected() {
        let out = search(&fam(5), &SearchConfig::default()).unwrap();
        let mut c = out.certificates[0].clone();
        c.point.lambda[0] = (c.point.lambda[0] + 1) % 5;
        assert!(!verify_certificate(&c).unwrap().ok);
        let mut bad = out.certificates[0].clone();
        bad.field = FieldSpec {
            p: 5,
            k: 2,
            modulus: Some(vec![4, 0, 1]),
        };
        assert!(verify_certificate(&bad).is_err());
    }

    #[test]
    fn strategies_agree_small() {
        for p in [5u64, 7] {
            for k in 1..=2 {
                let mut cfg = SearchConfig {
                    strategy: Strategy::Scan,
                    ..SearchConfig::default()
                };
                let fm = fam(p);
                let scan = search_at_degree(&fm, k, &cfg).unwrap().certificates;
                cfg.strategy = Strategy::Resultant;
                let res = search_at_degree(&fm, k, &cfg).unwrap().certificates;
                assert_eq!(scan, res, "p = {p}, k = {k}");
            }
        }
    }

    #[test]
    fn genus2_model_of_a_certificate_is_squarefree() {
        let out = search(&fam(11), &SearchConfig::default()).unwrap();
        let c = &out.certificates[0];
        let f = Field::from_spec(&c.field).unwrap();
        let fm = fam(11).over(&f).unwrap();
        let l = f.from_coeffs(&c.point.lambda).unwrap();
        let m = f.from_coeffs(&c.point.mu).unwrap();
        let (f1, f2) = build_pair(&fm, &l, &m, &f.one());
        assert!(cartier_matrix(&(&f1 * &f2)).is_ok());
    }
}
