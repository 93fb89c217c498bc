//! Cartier–Manin matrices of genus-2 curves `y^2 = f(x)` and the tests built
//! on them.
//!
//! With `f^{(p-1)/2} = sum γ_i x^i` the matrix is
//!
//! ```text
//! M = | γ_{p-1}   γ_{2p-1} |  =  | a  b |
//!     | γ_{p-2}   γ_{2p-2} |     | c  d |
//! ```
//!
//! and `M^σ` raises every entry to the `p`-th power.

use crate::error::{Error, Result};
use crate::ff::{Elem, Field};
use crate::upoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierMatrix {
    pub field: Field,
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

type Mat = [[Elem; 2]; 2];

fn mat_mul(f: &Field, x: &Mat, y: &Mat) -> Mat {
    let mut out = [[f.zero(); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = f.add(&f.mul(&x[i][0], &y[0][j]), &f.mul(&x[i][1], &y[1][j]));
        }
    }
    out
}

fn mat_sigma(f: &Field, x: &Mat) -> Mat {
    x.map(|row| row.map(|v| f.frobenius(&v)))
}

impl CartierMatrix {
    pub fn new(field: &Field, a: Elem, b: Elem, c: Elem, d: Elem) -> CartierMatrix {
        CartierMatrix {
            field: field.clone(),
            a,
            b,
            c,
            d,
        }
    }

    pub fn zero(field: &Field) -> CartierMatrix {
        let z = field.zero();
        CartierMatrix::new(field, z, z, z, z)
    }

    pub fn identity(field: &Field) -> CartierMatrix {
        let (z, o) = (field.zero(), field.one());
        CartierMatrix::new(field, o, z, z, o)
    }

    fn rows(&self) -> Mat {
        [[self.a, self.b], [self.c, self.d]]
    }

    fn from_rows(field: &Field, m: Mat) -> CartierMatrix {
        CartierMatrix::new(field, m[0][0], m[0][1], m[1][0], m[1][1])
    }

    pub fn entries(&self) -> [Elem; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(Elem::is_zero)
    }

    /// Entrywise Frobenius.
    pub fn sigma(&self) -> CartierMatrix {
        CartierMatrix::from_rows(&self.field, mat_sigma(&self.field, &self.rows()))
    }

    /// `M · M^σ`.
    pub fn mm_sigma(&self) -> CartierMatrix {
        let f = &self.field;
        CartierMatrix::from_rows(f, mat_mul(f, &self.rows(), &self.sigma().rows()))
    }

    pub fn determinant(&self) -> Elem {
        let f = &self.field;
        f.sub(&f.mul(&self.a, &self.d), &f.mul(&self.b, &self.c))
    }

    pub fn rank(&self) -> u8 {
        if self.is_zero() {
            0
        } else if self.determinant().is_zero() {
            1
        } else {
            2
        }
    }
}

/// Cartier–Manin matrix of `y^2 = f(x)` for squarefree `f` of degree 5 or 6.
pub fn cartier_matrix(f: &UniPoly) -> Result<CartierMatrix> {
    match f.degree() {
        Some(5) | Some(6) => {}
        got => {
            return Err(Error::WrongDegree {
                expected: "5 or 6",
                got,
            })
        }
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(cartier_matrix_unchecked(f))
}

/// Reads the four coefficients without validating the model.
pub fn cartier_matrix_unchecked(f: &UniPoly) -> CartierMatrix {
    let field = f.field();
    let p = field.p() as usize;
    let g = f.pow_truncated(((p - 1) / 2) as u64, 2 * p - 1);
    CartierMatrix::new(
        field,
        g.coeff(p - 1),
        g.coeff(2 * p - 1),
        g.coeff(p - 2),
        g.coeff(2 * p - 2),
    )
}

/// `M M^σ = 0`.
pub fn is_supersingular_genus2(m: &CartierMatrix) -> bool {
    m.mm_sigma().is_zero()
}

/// The three equations `ad - bc = 0`, `a b^{p-1} + d^p = 0`,
/// `a^p + c^{p-1} d = 0`.
pub fn reduced_system(field: &Field, a: &Elem, b: &Elem, c: &Elem, d: &Elem) -> [Elem; 3] {
    let p = field.p();
    let det = field.sub(&field.mul(a, d), &field.mul(b, c));
    let e1 = field.add(&field.mul(a, &field.pow(b, p - 1)), &field.frobenius(d));
    let e2 = field.add(&field.frobenius(a), &field.mul(&field.pow(c, p - 1), d));
    [det, e1, e2]
}

pub fn reduced_system_holds(field: &Field, a: &Elem, b: &Elem, c: &Elem, d: &Elem) -> bool {
    reduced_system(field, a, b, c, d).iter().all(Elem::is_zero)
}

/// `P^{-1} M P^σ` with `P = [[u, 0], [u v, u^2]]`: the matrix of the model
/// obtained by substituting `x = uX + v`.
pub fn transform(m: &CartierMatrix, u: &Elem, v: &Elem) -> Result<CartierMatrix> {
    let f = &m.field;
    if u.is_zero() {
        return Err(Error::ZeroScale);
    }
    let ui = f.inv(u)?;
    let ui2 = f.square(&ui);
    let p_inv: Mat = [[ui, f.zero()], [f.neg(&f.mul(v, &ui2)), ui2]];
    let p: Mat = [[*u, f.zero()], [f.mul(u, v), f.square(u)]];
    let out = mat_mul(f, &mat_mul(f, &p_inv, &m.rows()), &mat_sigma(f, &p));
    Ok(CartierMatrix::from_rows(f, out))
}

/// The `x^{p-1}` and `x^{p-2}` coefficients of `(x^3 + A x + B)^{(p-1)/2}`.
pub fn elliptic_epsilons(field: &Field, a: &Elem, b: &Elem) -> Result<(Elem, Elem)> {
    let p = field.p();
    if p <= 3 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    let disc = field.add(
        &field.mul_u64(&field.pow(a, 3), 4),
        &field.mul_u64(&field.square(b), 27),
    );
    if disc.is_zero() {
        return Err(Error::SingularCurve);
    }
    let cubic = UniPoly::new(field, vec![*b, *a, field.zero(), field.one()]);
    let g = cubic.pow_truncated((p - 1) / 2, (p - 1) as usize);
    Ok((g.coeff((p - 1) as usize), g.coeff((p - 2) as usize)))
}

/// Deuring's criterion on `y^2 = x^3 + A x + B`: the `x^{p-1}` coefficient
/// of the `(p-1)/2`-th power vanishes.
pub fn elliptic_supersingular(field: &Field, a: &Elem, b: &Elem) -> Result<bool> {
    Ok(elliptic_epsilons(field, a, b)?.0.is_zero())
}

/// `2 - rank M`.
pub fn a_number(m: &CartierMatrix) -> u8 {
    2 - m.rank()
}
