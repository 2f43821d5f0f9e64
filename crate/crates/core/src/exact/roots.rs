//! Univariate polynomials over Q, resultants, and exact rational roots.
//!
//! Rational roots are found p-adically: roots modulo a good prime, Hensel
//! lifting past the size bound, then an exact check of every candidate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::determinant;
use super::poly::MultiPoly;
use super::scalar::{common_denominator, from_bigint, int, Scalar};

/// Dense coefficients, index = degree.
pub type UPoly = Vec<Scalar>;

pub fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &UPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[Scalar]) -> UPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * int(i as i64))
        .collect()
}

pub fn mul(a: &[Scalar], b: &[Scalar]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn divrem(a: &[Scalar], b: &[Scalar]) -> (UPoly, UPoly) {
    let db = degree(&b.to_vec()).expect("division by the zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Scalar::zero(); r.len() - db];
    let lead = b[db].recip();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            r[dr - db + j] -= &c * bj;
        }
        q[dr - db] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn lift(p: &[Scalar]) -> Vec<BigInt> {
    let mut p = p.to_vec();
    trim(&mut p);
    if p.is_empty() {
        Vec::new()
    } else {
        primitive_integer(&p)
    }
}

fn monic(p: Vec<BigInt>) -> UPoly {
    let Some(l) = p.last().cloned() else { return Vec::new() };
    p.into_iter().map(|c| Scalar::new(c, l.clone())).collect()
}

fn word_primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&q| is_prime(q))
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m { r - m } else { r }
}

/// Monic greatest common divisor (empty for two zero inputs).
///
/// Modular algorithm: monic images modulo word-size primes, scaled by the gcd
/// of the leading coefficients and combined by CRT until the primitive
/// candidate stabilizes and divides both inputs exactly. Primes whose image has
/// too high a degree are discarded.
pub fn gcd(a: &[Scalar], b: &[Scalar]) -> UPoly {
    let (x, y) = (lift(a), lift(b));
    if x.is_empty() || y.is_empty() {
        return monic(if x.is_empty() { y } else { x });
    }
    if x.len() == 1 || y.len() == 1 {
        return vec![Scalar::one()];
    }
    let (lx, ly) = (x.last().unwrap(), y.last().unwrap());
    let gamma = lx.gcd(ly);
    let mut best = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<BigInt>> = None;
    for q in word_primes() {
        let qb = BigInt::from(q);
        if (lx % &qb).is_zero() || (ly % &qb).is_zero() {
            continue;
        }
        let g = gcd_mod(&mod_poly(&x, q), &mod_poly(&y, q), q);
        let deg = g.len() - 1;
        if deg == 0 {
            return vec![Scalar::one()];
        }
        if deg > best {
            continue;
        }
        if deg < best {
            best = deg;
            acc = vec![BigInt::zero(); deg + 1];
            modulus = BigInt::one();
            previous = None;
        }
        let scale = pow_mod(*g.last().unwrap(), q - 2, q) * gamma.mod_floor(&qb).to_u64().unwrap() % q;
        let inv = modulus.mod_floor(&qb).modinv(&qb).expect("distinct primes");
        for (c, gi) in acc.iter_mut().zip(&g) {
            let want = BigInt::from(gi * scale % q);
            let t = ((&want - &*c) * &inv).mod_floor(&qb);
            *c += &modulus * t;
        }
        modulus *= &qb;
        let cand = content_free(acc.iter().map(|c| symmetric(c, &modulus)).collect());
        if previous.as_ref() == Some(&cand) {
            let cs: UPoly = cand.iter().cloned().map(Scalar::from_integer).collect();
            let to = |v: &[BigInt]| -> UPoly { v.iter().cloned().map(Scalar::from_integer).collect() };
            if divrem(&to(&x), &cs).1.is_empty() && divrem(&to(&y), &cs).1.is_empty() {
                return monic(cand);
            }
        }
        previous = Some(cand);
    }
    unreachable!("ran out of word-size primes")
}

fn content_free(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |a, n| a.gcd(n));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

pub fn squarefree_part(p: &[Scalar]) -> UPoly {
    let g = gcd(p, &derivative(p));
    if degree(&g).unwrap_or(0) == 0 {
        let mut q = p.to_vec();
        trim(&mut q);
        return q;
    }
    divrem(p, &g).0
}

/// Lagrange interpolation through `(xs[i], ys[i])` in Newton form.
pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> UPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out: UPoly = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        out = mul(&out, &[-xs[i].clone(), Scalar::one()]);
        if out.is_empty() {
            out.push(Scalar::zero());
        }
        out[0] += &dd[i];
    }
    trim(&mut out);
    out
}

/// Determinant of the Sylvester matrix for the given formal degrees
/// (`f.len() - 1`, `g.len() - 1`).
pub fn sylvester_resultant(f: &[Scalar], g: &[Scalar]) -> Scalar {
    let m = f.len().saturating_sub(1);
    let n = g.len().saturating_sub(1);
    if m + n == 0 {
        return Scalar::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![Scalar::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![Scalar::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    determinant(&rows)
}

/// Coefficients in the second variable of a two-variable polynomial at `x = x0`.
pub fn specialize_first(f: &MultiPoly, x0: &Scalar) -> UPoly {
    let dy = f.degree_in(1).unwrap_or(0) as usize;
    let mut out = vec![Scalar::zero(); dy + 1];
    for (m, c) in f.terms() {
        out[m[1] as usize] += c * pow(x0, m[0]);
    }
    out
}

fn pow(x: &Scalar, k: u32) -> Scalar {
    num_traits::pow(x.clone(), k as usize)
}

/// `Res_y(f, g)` as a polynomial in `x`, with formal `y`-degrees taken from
/// the polynomials themselves, by evaluation and interpolation.
pub fn resultant_in_y(f: &MultiPoly, g: &MultiPoly) -> UPoly {
    let bound = (f.total_degree().unwrap_or(0) * g.total_degree().unwrap_or(0)) as i64;
    let xs: Vec<Scalar> = (0..=bound).map(int).collect();
    let ys: Vec<Scalar> = xs
        .iter()
        .map(|x| {
            let mut fy = specialize_first(f, x);
            let mut gy = specialize_first(g, x);
            fy.resize(f.degree_in(1).unwrap_or(0) as usize + 1, Scalar::zero());
            gy.resize(g.degree_in(1).unwrap_or(0) as usize + 1, Scalar::zero());
            sylvester_resultant(&fy, &gy)
        })
        .collect();
    interpolate(&xs, &ys)
}

fn primitive_integer(p: &[Scalar]) -> Vec<BigInt> {
    let den = common_denominator(p.iter());
    let ints: Vec<BigInt> = p.iter().map(|s| s.numer() * (&den / s.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, n| a.gcd(n));
    ints.into_iter().map(|n| n / &g).collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn mod_poly(p: &[BigInt], q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    let mut v: Vec<u64> = p.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1u64;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

fn gcd_mod(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let inv = pow_mod(*y.last().unwrap(), q - 2, q);
        while x.len() >= y.len() {
            let c = x.last().unwrap() * inv % q;
            let shift = x.len() - y.len();
            for (j, yj) in y.iter().enumerate() {
                x[shift + j] = (x[shift + j] + q - c * yj % q) % q;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x
}

fn eval_mod(p: &[u64], x: u64, q: u64) -> u64 {
    p.iter().rev().fold(0, |acc, c| (acc * x + c) % q)
}

fn eval_big(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Distinct rational roots, ascending.
pub fn rational_roots(p: &[Scalar]) -> Vec<Scalar> {
    let mut p = p.to_vec();
    trim(&mut p);
    if degree(&p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    if p[0].is_zero() {
        roots.push(Scalar::zero());
        let k = p.iter().position(|c| !c.is_zero()).unwrap();
        p.drain(..k);
    }
    let sf = squarefree_part(&p);
    if degree(&sf).unwrap_or(0) >= 1 {
        roots.extend(nonzero_roots(&sf));
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Roots of a square-free polynomial with nonzero constant term.
fn nonzero_roots(p: &[Scalar]) -> Vec<Scalar> {
    let ip = primitive_integer(p);
    let lc = ip.last().unwrap().clone();
    let c0 = ip[0].clone();
    if ip.len() == 2 {
        return vec![Scalar::new(-c0, lc)];
    }
    let dp: Vec<BigInt> = ip
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    // a root a/b has b | lc and a | c0, so lc*a/b is an integer bounded by |lc*c0|
    let bound = (&lc * &c0).abs() * 2 + 1;
    let q = (32_003u64..)
        .filter(|&q| is_prime(q))
        .find(|&q| {
            let fq = mod_poly(&ip, q);
            fq.len() == ip.len() && gcd_mod(&fq, &mod_poly(&dp, q), q).len() == 1
        })
        .unwrap();
    let fq = mod_poly(&ip, q);
    let qb = BigInt::from(q);
    let mut out = Vec::new();
    for r0 in (0..q).filter(|&r| eval_mod(&fq, r, q) == 0) {
        let mut r = BigInt::from(r0);
        let mut m = qb.clone();
        while m < bound {
            m = &m * &m;
            let fr = eval_big(&ip, &r, &m);
            let dr = eval_big(&dp, &r, &m);
            let inv = dr.modinv(&m).expect("simple root modulo a good prime");
            r = (r - fr * inv).mod_floor(&m);
        }
        let mut n = (&r * &lc).mod_floor(&m);
        if n > &m / 2 {
            n -= &m;
        }
        let cand = Scalar::new(n, lc.clone());
        if eval(p, &cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

pub fn to_scalars(p: &[i64]) -> UPoly {
    p.iter().map(|&c| int(c)).collect()
}

pub fn from_ints(p: &[BigInt]) -> UPoly {
    p.iter().cloned().map(from_bigint).collect()
}
