use core::fmt;

use alloc::vec::Vec;

use super::field::Field;
use super::poly::Poly;

/// Square matrix over a field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatF<F> {
    dim: usize,
    data: Vec<F>,
}

impl<F: Field> MatF<F> {
    pub fn zeros(dim: usize) -> Self {
        MatF {
            dim,
            data: (0..dim * dim).map(|_| F::zero()).collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds from rows; `None` unless the rows form a square array.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Option<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(MatF {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F]> {
        self.data.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn trace(&self) -> F {
        (0..self.dim).fold(F::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add_ref(&a.mul_ref(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn add_scalar_identity(&self, c: &F) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            let v = m.get(i, i).add_ref(c);
            m.set(i, i, v);
        }
        m
    }

    /// `det(I - tM)` as a polynomial in `t` by the Faddeev-LeVerrier
    /// recursion; the only divisions are by the step index.
    pub fn charpoly_det(&self) -> Poly<F> {
        let n = self.dim;
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(F::one());
        if n == 0 {
            return Poly::new(coeffs);
        }
        let mut mk = self.clone();
        let mut c = mk.trace().neg_ref();
        coeffs.push(c.clone());
        for k in 2..=n {
            mk = self.mul(&mk.add_scalar_identity(&c));
            c = mk
                .trace()
                .neg_ref()
                .div_ref(&F::from_int(k as i64))
                .expect("nonzero in characteristic zero");
            coeffs.push(c.clone());
        }
        Poly::new(coeffs)
    }
}

impl<F: Field> fmt::Debug for MatF<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> MatF<Rat> {
        MatF::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::from(x)).collect()).collect()).unwrap()
    }

    /// Leibniz expansion of det(I - tM) with polynomial entries.
    fn leibniz(a: &MatF<Rat>) -> Poly<Rat> {
        let n = a.dim();
        let entry = |i: usize, j: usize| {
            let mut e = vec![Rat::from(0), -a.get(i, j).clone()];
            if i == j {
                e[0] = Rat::from(1);
            }
            Poly::new(e)
        };
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Poly::zero();
        permute(&mut perm, 0, &mut |p: &[usize]| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = Poly::one();
            for (i, &j) in p.iter().enumerate() {
                term = &term * &entry(i, j);
            }
            if inversions % 2 == 1 {
                term = -&term;
            }
            total = &total + &term;
        });
        total
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(m(&[&[2]]).charpoly_det(), Poly::from_ints(&[1, -2]));
        assert_eq!(MatF::<Rat>::zeros(3).charpoly_det(), Poly::one());
        assert_eq!(MatF::<Rat>::zeros(0).charpoly_det(), Poly::one());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).charpoly_det(), Poly::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn charpoly_matches_leibniz() {
        let a = m(&[&[1, -2, 3, 0], &[4, 0, -1, 2], &[0, 5, 2, -3], &[7, 1, 0, 1]]);
        assert_eq!(a.charpoly_det(), leibniz(&a));
        let b = m(&[&[0, 0, 0], &[0, 4, 0], &[0, 0, 0]]);
        assert_eq!(b.charpoly_det(), Poly::from_ints(&[1, -4]));
    }

    #[test]
    fn pow_and_trace() {
        let a = m(&[&[1, 1], &[1, 0]]);
        assert_eq!(a.pow(10), m(&[&[89, 55], &[55, 34]]));
        assert_eq!(a.pow(0), MatF::identity(2));
        assert_eq!(a.trace(), Rat::from(1));
    }
}
