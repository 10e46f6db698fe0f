//! Multi-modular gcd and modular inversion over Q with exact verification.
//!
//! Images are computed modulo word-sized primes, combined by CRT, lifted back
//! with rational reconstruction and then checked exactly over Q. A result is
//! returned only after the exact check succeeds.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::rat::Rat;
use crate::error::Error;

/// The largest primes below 2^62, in decreasing order.
const PRIME_TABLE: [u64; 16] = [
    0x3fffffffffffffc7,
    0x3fffffffffffffa9,
    0x3fffffffffffff8b,
    0x3fffffffffffff71,
    0x3fffffffffffff67,
    0x3fffffffffffff59,
    0x3fffffffffffff55,
    0x3fffffffffffff3d,
    0x3fffffffffffff35,
    0x3ffffffffffffeef,
    0x3ffffffffffffee1,
    0x3ffffffffffffec3,
    0x3ffffffffffffe45,
    0x3ffffffffffffe1d,
    0x3ffffffffffffe11,
    0x3ffffffffffffdc1,
];

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

#[inline]
fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a != 0);
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62 in decreasing order, without end.
pub(crate) struct Primes {
    idx: usize,
    last: u64,
}

impl Primes {
    pub(crate) fn new() -> Self {
        Primes { idx: 0, last: 0 }
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let p = if let Some(&p) = PRIME_TABLE.get(self.idx) {
            p
        } else {
            let mut c = self.last - 2;
            while !is_prime(c) {
                c -= 2;
            }
            c
        };
        self.idx += 1;
        self.last = p;
        Some(p)
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Image of a rational modulo `p`, `None` when `p` divides the denominator.
pub(crate) fn reduce_rat(r: &Rat, p: u64) -> Option<u64> {
    let d = bigint_mod(r.denom(), p);
    if d == 0 {
        return None;
    }
    let n = bigint_mod(r.numer(), p);
    Some(if d == 1 { n } else { mulmod(n, invmod(d, p), p) })
}

/// Image of a polynomial modulo `p`; `None` if a denominator vanishes or the
/// leading coefficient does.
fn reduce_poly(a: &Poly<Rat>, p: u64) -> Option<Vec<u64>> {
    let v: Option<Vec<u64>> = a.coeffs().iter().map(|c| reduce_rat(c, p)).collect();
    let v = v?;
    if v.last() == Some(&0) {
        return None;
    }
    Some(v)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn mul_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

/// `(quotient, remainder)` of `a` by nonzero `m`.
fn div_rem_p(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let dm = m.len() - 1;
    if a.len() <= dm {
        let mut r = a.to_vec();
        trim(&mut r);
        return (Vec::new(), r);
    }
    let inv = invmod(m[dm], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - dm];
    for k in (0..q.len()).rev() {
        let top = r[k + dm];
        if top == 0 {
            continue;
        }
        let c = mulmod(top, inv, p);
        q[k] = c;
        for i in 0..dm {
            r[k + i] = submod(r[k + i], mulmod(c, m[i], p), p);
        }
        r[k + dm] = 0;
    }
    r.truncate(dm);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn monic_p(mut a: Vec<u64>, p: u64) -> Vec<u64> {
    if let Some(&lc) = a.last() {
        if lc != 1 {
            let inv = invmod(lc, p);
            for c in a.iter_mut() {
                *c = mulmod(*c, inv, p);
            }
        }
    }
    a
}

fn gcd_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (_, r) = div_rem_p(&r0, &r1, p);
        r0 = r1;
        r1 = r;
    }
    monic_p(r0, p)
}

fn sub_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| submod(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0), p))
        .collect();
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` (degree >= 1), `None` if they share a factor.
fn inv_mod_p(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (_, a) = div_rem_p(a, m, p);
    let (mut r0, mut r1) = (m.to_vec(), a);
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while r1.len() > 1 {
        let (q, r) = div_rem_p(&r0, &r1, p);
        let s = sub_p(&s0, &mul_p(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r1.is_empty() {
        return None;
    }
    let c = invmod(r1[0], p);
    Some(s1.iter().map(|&x| mulmod(x, c, p)).collect())
}

/// Coefficient-wise Chinese remaindering of fixed-length residue vectors.
struct Crt {
    modulus: BigInt,
    residues: Vec<BigInt>,
    count: usize,
}

impl Crt {
    fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            residues: vec![BigInt::zero(); len],
            count: 0,
        }
    }

    fn add(&mut self, image: &[u64], p: u64) {
        let pb = BigInt::from(p);
        let m_inv = invmod(bigint_mod(&self.modulus, p), p);
        for (r, &v) in self.residues.iter_mut().zip(image) {
            let rp = bigint_mod(r, p);
            let k = mulmod(submod(v, rp, p), m_inv, p);
            if k != 0 {
                *r += &self.modulus * BigInt::from(k);
            }
        }
        self.modulus *= pb;
        self.count += 1;
    }

    fn reconstruct(&self) -> Option<Vec<Rat>> {
        let bound = (&self.modulus >> 1usize).sqrt();
        self.residues
            .iter()
            .map(|r| rational_reconstruction(r, &self.modulus, &bound))
            .collect()
    }
}

/// The unique `a/b` with `|a|, |b| <= bound` congruent to `r` modulo `m`,
/// if one exists.
fn rational_reconstruction(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rat> {
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, rem) = r0.div_rem(&r1);
        r0 = core::mem::replace(&mut r1, rem);
        let t = &t0 - &q * &t1;
        t0 = core::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

fn matches_image(candidate: &[Rat], image: &[u64], p: u64) -> bool {
    candidate.len() == image.len() && candidate.iter().zip(image).all(|(c, &v)| reduce_rat(c, p) == Some(v))
}

/// Shared driver: feeds images into CRT, reconstructs on a doubling schedule,
/// screens each candidate against a fresh prime, then verifies exactly.
struct Lifter {
    crt: Crt,
    candidate: Option<Vec<Rat>>,
    next_attempt: usize,
}

impl Lifter {
    fn new(len: usize) -> Self {
        Lifter {
            crt: Crt::new(len),
            candidate: None,
            next_attempt: 1,
        }
    }

    fn feed(&mut self, image: &[u64], p: u64, verify: impl Fn(&[Rat]) -> bool) -> Option<Vec<Rat>> {
        if let Some(c) = self.candidate.take() {
            if matches_image(&c, image, p) && verify(&c) {
                return Some(c);
            }
        }
        self.crt.add(image, p);
        if self.crt.count >= self.next_attempt {
            self.next_attempt = (self.next_attempt * 2).max(self.crt.count + 1);
            self.candidate = self.crt.reconstruct();
        }
        None
    }
}

/// Monic gcd of two polynomials over Q.
pub fn gcd_certified(a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let mut best = usize::MAX;
    let mut lifter = Lifter::new(0);
    let verify = |c: &[Rat]| {
        let g = Poly::new(c.to_vec());
        a.rem(&g).map(|r| r.is_zero()).unwrap_or(false) && b.rem(&g).map(|r| r.is_zero()).unwrap_or(false)
    };
    for p in Primes::new() {
        let (Some(ap), Some(bp)) = (reduce_poly(a, p), reduce_poly(b, p)) else {
            continue;
        };
        let g = gcd_p(&ap, &bp, p);
        let deg = g.len() - 1;
        // With leading coefficients nonzero mod p the image degree bounds the
        // true degree from above, so a unit image is conclusive.
        if deg == 0 {
            return Poly::one();
        }
        if deg > best {
            continue;
        }
        if deg < best {
            best = deg;
            lifter = Lifter::new(deg + 1);
        }
        if let Some(c) = lifter.feed(&g, p, verify) {
            return Poly::new(c);
        }
    }
    unreachable!("prime sequence is infinite")
}

/// `num * den^-1 mod modulus` over Q.
pub fn div_mod_certified(num: &Poly<Rat>, den: &Poly<Rat>, modulus: &Poly<Rat>) -> Result<Poly<Rat>, Error> {
    let md = modulus.degree().ok_or(Error::DivisionByZero)?;
    if md == 0 {
        return Ok(Poly::zero());
    }
    if den.is_constant() && !den.is_zero() {
        let c = den.coeff(0).recip().expect("nonzero constant");
        return num.scale(&c).rem(modulus);
    }
    let verify = |c: &[Rat]| {
        let x = Poly::new(c.to_vec());
        (&(den * &x) - num).rem(modulus).map(|r| r.is_zero()).unwrap_or(false)
    };
    let mut lifter = Lifter::new(md);
    let mut failures = 0usize;
    let mut coprime_checked = false;
    for p in Primes::new() {
        let Some(mp) = reduce_poly(modulus, p) else {
            continue;
        };
        let dp: Option<Vec<u64>> = den.coeffs().iter().map(|c| reduce_rat(c, p)).collect();
        let np: Option<Vec<u64>> = num.coeffs().iter().map(|c| reduce_rat(c, p)).collect();
        let (Some(dp), Some(np)) = (dp, np) else {
            continue;
        };
        let Some(inv) = inv_mod_p(&dp, &mp, p) else {
            failures += 1;
            if failures >= 3 && !coprime_checked {
                coprime_checked = true;
                if gcd_certified(den, modulus).degree() != Some(0) {
                    return Err(Error::NotInvertible);
                }
            }
            continue;
        };
        let (_, np) = div_rem_p(&np, &mp, p);
        let (_, mut x) = div_rem_p(&mul_p(&np, &inv, p), &mp, p);
        x.resize(md, 0);
        if let Some(c) = lifter.feed(&x, p, verify) {
            return Ok(Poly::new(c));
        }
    }
    unreachable!("prime sequence is infinite")
}
