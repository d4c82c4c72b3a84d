//! Dense univariate polynomials over a [`Field`] and companion matrices.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals, Scalar};

/// Coefficients low to high; never carries a zero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Scalar> Poly<E> {
    pub fn new(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: E) -> Self {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn constant_term(&self) -> Option<&E> {
        self.coeffs.first()
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&E) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }
}

/// Polynomial arithmetic over a fixed coefficient field.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
}

pub type QPoly = Poly<Rational>;

pub fn qring() -> PolyRing<Rationals> {
    PolyRing::new(Rationals)
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn one(&self) -> Poly<F::Elem> {
        Poly::constant(self.field.one())
    }

    /// The monomial x.
    pub fn x(&self) -> Poly<F::Elem> {
        Poly::new(vec![self.field.zero(), self.field.one()])
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        Poly::constant(c)
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(&self, n: usize) -> Poly<F::Elem> {
        let mut c = vec![self.field.zero(); n + 1];
        c[0] = self.field.neg(&self.field.one());
        c[n] = self.field.one();
        Poly::new(c)
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = f.zero();
        Poly::new(
            (0..n)
                .map(|i| f.add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        Poly::new(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = &self.field;
        let mut out = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, a: &Poly<F::Elem>, k: u32) -> Poly<F::Elem> {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a Poly<F::Elem>>) -> Poly<F::Elem>
    where
        F::Elem: 'a,
    {
        items.into_iter().fold(self.one(), |acc, p| self.mul(&acc, p))
    }

    /// Quotient and remainder with `a = b*q + r`, `deg r < deg b`.
    pub fn divrem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let f = &self.field;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv_lc = f.inv(b.lc().unwrap()).ok_or(Error::DivisionByZero)?;
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut q = vec![f.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + db], &inv_lc);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    r[i + j] = f.sub(&r[i + j], &f.mul(&c, bj));
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.divrem(a, b)?.1)
    }

    /// `Some(a / b)` when `b` divides `a` exactly.
    pub fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        match self.divrem(a, b) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        self.div_exact(a, b).is_some()
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.lc() {
            None => Poly::zero(),
            Some(lc) => self.scale(a, &self.field.inv(lc).unwrap()),
        }
    }

    pub fn is_monic(&self, a: &Poly<F::Elem>) -> bool {
        a.lc().is_some_and(|c| self.field.is_one(c))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let mut x = self.monic(a);
        let mut y = self.monic(b);
        while !y.is_zero() {
            let r = self.rem(&x, &y)?;
            x = y;
            y = self.monic(&r);
        }
        Ok(x)
    }

    /// `(g, s, t)` with `s*a + t*b = g`, `g` the monic gcd.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.field.inv(r0.lc().unwrap()).unwrap();
        Ok((self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv)))
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.field.mul(c, &self.field.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        a.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// p(x^n).
    pub fn substitute_power(&self, a: &Poly<F::Elem>, n: usize) -> Poly<F::Elem> {
        assert!(n >= 1, "substitute_power needs n >= 1");
        if a.is_zero() || n == 1 {
            return a.clone();
        }
        let mut c = vec![self.field.zero(); (a.coeffs.len() - 1) * n + 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            c[i * n] = x.clone();
        }
        Poly::new(c)
    }

    /// p(x + c), by Horner's rule.
    pub fn shift(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        let lin = Poly::new(vec![c.clone(), self.field.one()]);
        a.coeffs.iter().rev().fold(Poly::zero(), |acc, k| {
            self.add(&self.mul(&acc, &lin), &Poly::constant(k.clone()))
        })
    }

    /// base^e mod m.
    pub fn powmod(
        &self,
        base: &Poly<F::Elem>,
        e: &BigUint,
        m: &Poly<F::Elem>,
    ) -> Result<Poly<F::Elem>> {
        let mut result = self.rem(&self.one(), m)?;
        let b = self.rem(base, m)?;
        for i in (0..e.bits()).rev() {
            result = self.rem(&self.mul(&result, &result), m)?;
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m)?;
            }
        }
        Ok(result)
    }

    /// Res(a, b) = lc(a)^deg(b) * prod_{a(r)=0} b(r); zero if either is zero.
    pub fn resultant(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
        let f = &self.field;
        let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
            return f.zero();
        };
        if db == 0 {
            return pow_elem(f, b.lc().unwrap(), da);
        }
        if da == 0 {
            return pow_elem(f, a.lc().unwrap(), db);
        }
        // Res(a,b) = (-1)^(da*db) lc(b)^(da - deg r) Res(b, r), r = a mod b
        let r = self.rem(a, b).expect("b is nonzero");
        let Some(dr) = r.degree() else {
            return f.zero();
        };
        let mut out = f.mul(&pow_elem(f, b.lc().unwrap(), da - dr), &self.resultant(b, &r));
        if (da * db) % 2 == 1 {
            out = f.neg(&out);
        }
        out
    }

    /// Newton interpolation through (xs[i], ys[i]) with distinct xs.
    pub fn interpolate(&self, xs: &[F::Elem], ys: &[F::Elem]) -> Poly<F::Elem> {
        let f = &self.field;
        let n = xs.len();
        let mut dd: Vec<F::Elem> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = f.sub(&dd[i], &dd[i - 1]);
                let den = f.sub(&xs[i], &xs[i - j]);
                dd[i] = f.mul(&num, &f.inv(&den).expect("distinct nodes"));
            }
        }
        let mut out = Poly::zero();
        for i in (0..n).rev() {
            let lin = Poly::new(vec![f.neg(&xs[i]), f.one()]);
            out = self.add(&self.mul(&out, &lin), &Poly::constant(dd[i].clone()));
        }
        out
    }

    /// Monic product of the distinct irreducible factors: p / gcd(p, p').
    pub fn squarefree_part(&self, a: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if a.degree() == Some(0) {
            return Ok(self.one());
        }
        let g = self.gcd(a, &self.derivative(a))?;
        Ok(self.monic(&self.div_exact(a, &g).expect("gcd divides its argument")))
    }

    /// Yun's algorithm: monic squarefree `a_i` (nonconstant) with multiplicity i,
    /// such that `monic(p) = prod a_i^i`.
    pub fn squarefree_decomposition(&self, a: &Poly<F::Elem>) -> Result<Vec<(Poly<F::Elem>, u32)>> {
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if a.degree() == Some(0) {
            return Ok(out);
        }
        let a = self.monic(a);
        let da = self.derivative(&a);
        let g = self.gcd(&a, &da)?;
        let mut b = self.div_exact(&a, &g).unwrap();
        let mut c = self.div_exact(&da, &g).unwrap();
        let mut d = self.sub(&c, &self.derivative(&b));
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let ai = self.gcd(&b, &d)?;
            b = self.div_exact(&b, &ai).unwrap();
            c = self.div_exact(&d, &ai).unwrap();
            d = self.sub(&c, &self.derivative(&b));
            if ai.degree().unwrap_or(0) > 0 {
                out.push((ai, i));
            }
            i += 1;
        }
        Ok(out)
    }
}

fn pow_elem<F: Field>(f: &F, a: &F::Elem, k: usize) -> F::Elem {
    (0..k).fold(f.one(), |acc, _| f.mul(&acc, a))
}

/// Companion matrix with the sign convention `P(x) = x^m - sum_j c_j x^(j-1)`
/// where `last_row = (c_1, ..., c_m)`. Entries above the diagonal are 1, all
/// other rows except the last are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix<E> {
    pub last_row: Vec<E>,
}

impl<E: Scalar> CompanionMatrix<E> {
    pub fn size(&self) -> usize {
        self.last_row.len()
    }

    /// Dense matrix, row-major, 0-indexed.
    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let m = self.size();
        let mut rows = vec![vec![field.zero(); m]; m];
        for (i, row) in rows.iter_mut().enumerate().take(m.saturating_sub(1)) {
            row[i + 1] = field.one();
        }
        if m > 0 {
            rows[m - 1] = self.last_row.clone();
        }
        rows
    }
}

pub fn companion_of<F: Field>(ring: &PolyRing<F>, p: &Poly<F::Elem>) -> Result<CompanionMatrix<F::Elem>> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    if !ring.is_monic(p) {
        return Err(Error::NotMonic);
    }
    if m == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let f = ring.field();
    Ok(CompanionMatrix { last_row: p.coeffs[..m].iter().map(|c| f.neg(c)).collect() })
}

pub fn charpoly_of<F: Field>(ring: &PolyRing<F>, c: &CompanionMatrix<F::Elem>) -> Poly<F::Elem> {
    let f = ring.field();
    let mut coeffs: Vec<F::Elem> = c.last_row.iter().map(|x| f.neg(x)).collect();
    coeffs.push(f.one());
    Poly::new(coeffs)
}

impl QPoly {
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn constant_is_zero(&self) -> bool {
        self.coeffs.first().is_none_or(Zero::is_zero)
    }
}
