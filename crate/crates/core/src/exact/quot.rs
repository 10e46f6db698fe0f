use alloc::vec::Vec;

use super::field::Field;
use super::matrix::MatF;
use super::poly::Poly;
use crate::error::Error;

/// The algebra `F[z]/(P)` for a nonconstant modulus `P`, stored monic.
///
/// Power sums of the roots of `P` are computed once at construction, which
/// turns every trace into a dot product.
#[derive(Clone)]
pub struct QuotAlg<F> {
    modulus: Poly<F>,
    power_sums: Vec<F>,
}

impl<F: Field> QuotAlg<F> {
    pub fn new(modulus: &Poly<F>) -> Result<Self, Error> {
        match modulus.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::DegreeTooSmall { degree: 0, required: 1 }),
            _ => {}
        }
        let modulus = modulus.monic();
        let power_sums = newton_power_sums(&modulus);
        Ok(QuotAlg { modulus, power_sums })
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.power_sums.len()
    }

    /// `Σ α^k` over the roots of the modulus, for `k < dim`.
    pub fn power_sums(&self) -> &[F] {
        &self.power_sums
    }

    pub fn reduce(&self, a: &Poly<F>) -> Poly<F> {
        a.rem(&self.modulus).expect("modulus is nonzero")
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.reduce(&(a * b))
    }

    pub fn pow(&self, a: &Poly<F>, exp: u32) -> Poly<F> {
        let mut acc = Poly::one();
        let mut base = self.reduce(a);
        let mut e = exp;
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

    pub fn inverse(&self, a: &Poly<F>) -> Result<Poly<F>, Error> {
        a.invert_mod(&self.modulus)
    }

    /// `a / b` in the algebra.
    pub fn div(&self, a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>, Error> {
        F::poly_div_mod(a, b, &self.modulus)
    }

    /// Trace of multiplication by `a`; for squarefree modulus this is the sum
    /// of `a` over the roots.
    pub fn trace(&self, a: &Poly<F>) -> F {
        let a = self.reduce(a);
        a.coeffs()
            .iter()
            .zip(&self.power_sums)
            .filter(|(c, _)| !c.is_zero())
            .fold(F::zero(), |acc, (c, s)| acc.add_ref(&c.mul_ref(s)))
    }

    /// Matrix of multiplication by `a` in the basis `1, z, ..., z^(D-1)`;
    /// column `j` holds the image of `z^j`.
    pub fn multiplication_matrix(&self, a: &Poly<F>) -> MatF<F> {
        let d = self.dim();
        let mut m = MatF::zeros(d);
        let mut col = self.reduce(a);
        for j in 0..d {
            for (i, c) in col.coeffs().iter().enumerate() {
                m.set(i, j, c.clone());
            }
            col = self.reduce(&col.shift(1));
        }
        m
    }

    /// Trace as the diagonal sum of the multiplication matrix.
    pub fn trace_by_matrix(&self, a: &Poly<F>) -> F {
        self.multiplication_matrix(a).trace()
    }
}

impl<F: Field> core::fmt::Debug for QuotAlg<F> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "QuotAlg[mod {}]", self.modulus)
    }
}

/// Newton's identities for a monic polynomial of degree `D`: the power sums
/// `p_0 .. p_(D-1)` of its roots.
fn newton_power_sums<F: Field>(monic: &Poly<F>) -> Vec<F> {
    let d = monic.degree().expect("nonzero");
    // e-coefficient for z^(D-k)
    let c = |k: usize| monic.coeff(d - k);
    let mut p: Vec<F> = Vec::with_capacity(d);
    p.push(F::from_int(d as i64));
    for k in 1..d {
        let mut s = c(k).mul_ref(&F::from_int(k as i64));
        for i in 1..k {
            let ci = c(i);
            if !ci.is_zero() {
                s = s.add_ref(&ci.mul_ref(&p[k - i]));
            }
        }
        p.push(s.neg_ref());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;

    fn p(v: &[i64]) -> Poly<Rat> {
        Poly::from_ints(v)
    }

    #[test]
    fn trace_examples() {
        let q = QuotAlg::new(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(q.trace(&p(&[0, 1])), Rat::from(0));
        let q = QuotAlg::new(&p(&[2, -3, 1])).unwrap();
        assert_eq!(q.trace(&p(&[0, 0, 1])), Rat::from(5));
        let q = QuotAlg::new(&p(&[7, 0, 3, -2, 5])).unwrap();
        assert_eq!(q.trace(&Poly::one()), Rat::from(4));
    }

    #[test]
    fn trace_routes_agree() {
        let q = QuotAlg::new(&p(&[3, -1, 4, 1, -5, 9])).unwrap();
        for a in [p(&[1]), p(&[0, 1]), p(&[2, 7, -1, 8, 2, 8, 1, 8])] {
            assert_eq!(q.trace(&a), q.trace_by_matrix(&a));
        }
    }

    #[test]
    fn inverse_and_div() {
        let q = QuotAlg::new(&p(&[-2, 0, 1])).unwrap();
        let inv = q.inverse(&p(&[0, 1])).unwrap();
        assert_eq!(q.mul(&inv, &p(&[0, 1])), Poly::one());
        let x = q.div(&p(&[1, 1]), &p(&[3, 1])).unwrap();
        assert_eq!(q.mul(&x, &p(&[3, 1])), p(&[1, 1]));
        assert!(matches!(QuotAlg::new(&p(&[4])), Err(Error::DegreeTooSmall { .. })));
    }
}
