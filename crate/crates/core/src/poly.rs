//! Univariate polynomial arithmetic and factorization over a prime field.
//!
//! Used to split characteristic polynomials of sampled endomorphisms into
//! pairwise coprime factors (squarefree + distinct-degree + Cantor-Zassenhaus
//! equal-degree). Coefficients are stored low degree first.

use crate::field::{Field, PrimeField};
use crate::matrix::Mat;
use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

pub type Poly = Vec<u64>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn deg(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn mul(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(&x, &y));
        }
    }
    trim(out)
}

pub fn sub(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = f.sub(&x, &y);
    }
    trim(out)
}

/// Remainder of a divided by monic-normalized b.
pub fn rem(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let b = trim(b.clone());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.clone());
    let db = b.len() - 1;
    let lead_inv = f.inv(b.last().unwrap());
    while r.len() > db {
        let c = f.mul(r.last().unwrap(), &lead_inv);
        let shift = r.len() - 1 - db;
        for i in 0..=db {
            let t = f.mul(&c, &b[i]);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        r = trim(r);
    }
    r
}

pub fn monic(f: &PrimeField, p: &Poly) -> Poly {
    let p = trim(p.clone());
    if p.is_empty() {
        return p;
    }
    let inv = f.inv(p.last().unwrap());
    p.iter().map(|c| f.mul(c, &inv)).collect()
}

pub fn gcd(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let mut a = trim(a.clone());
    let mut b = trim(b.clone());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn derivative(f: &PrimeField, p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![];
    }
    trim(
        (1..p.len())
            .map(|i| f.mul(&p[i], &f.from_i64(i as i64)))
            .collect(),
    )
}

/// x^e mod m with a big exponent.
pub fn pow_x_mod(f: &PrimeField, e: &BigUint, m: &Poly) -> Poly {
    pow_mod(f, &vec![0, 1], e, m)
}

pub fn pow_mod(f: &PrimeField, base: &Poly, e: &BigUint, m: &Poly) -> Poly {
    let mut acc = vec![1u64];
    let bits = e.bits();
    for i in (0..bits).rev() {
        acc = rem(f, &mul(f, &acc, &acc), m);
        if e.bit(i) {
            acc = rem(f, &mul(f, &acc, base), m);
        }
    }
    acc
}

/// Pairwise coprime monic factors of p, each with its multiplicity in p.
/// Factors of the same irreducible are merged; irreducibility is guaranteed.
pub fn coprime_factors<R: Rng>(f: &PrimeField, p: &Poly, rng: &mut R) -> Vec<(Poly, usize)> {
    let p = monic(f, p);
    if deg(&p).unwrap_or(0) == 0 {
        return vec![];
    }
    // Squarefree part p / gcd(p, p'); the characteristic is astronomically
    // larger than any degree seen here, so no p-th power corner cases arise.
    let d = derivative(f, &p);
    let g = if d.is_empty() { p.clone() } else { gcd(f, &p, &d) };
    let sqfree = if deg(&g).unwrap_or(0) == 0 { p.clone() } else { divide_exact(f, &p, &g) };
    let mut out = Vec::new();
    for fac in irreducible_factors_squarefree(f, &sqfree, rng) {
        let mut m = 0usize;
        let mut r = p.clone();
        while let Some(q) = try_divide(f, &r, &fac) {
            m += 1;
            r = q;
        }
        out.push((fac, m));
    }
    out
}

fn try_divide(f: &PrimeField, a: &Poly, b: &Poly) -> Option<Poly> {
    if a.len() < b.len() {
        return None;
    }
    let r = rem(f, a, b);
    if !r.is_empty() {
        return None;
    }
    Some(divide_exact(f, a, b))
}

/// Exact quotient; panics when the division is not exact.
pub fn divide_exact(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let a = trim(a.clone());
    let b = trim(b.clone());
    assert!(!b.is_empty());
    if a.is_empty() {
        return vec![];
    }
    assert!(a.len() >= b.len(), "inexact polynomial division");
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead_inv = f.inv(b.last().unwrap());
    let mut q = vec![0u64; a.len() - b.len() + 1];
    while r.len() > db {
        let c = f.mul(r.last().unwrap(), &lead_inv);
        let shift = r.len() - 1 - db;
        q[shift] = c;
        for i in 0..=db {
            let t = f.mul(&c, &b[i]);
            r[shift + i] = f.sub(&r[shift + i], &t);
        }
        r = trim(r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    trim(q)
}

/// Irreducible factors of a squarefree monic polynomial.
fn irreducible_factors_squarefree<R: Rng>(f: &PrimeField, p: &Poly, rng: &mut R) -> Vec<Poly> {
    let p = monic(f, p);
    let n = deg(&p).unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![p];
    }
    let prime = BigUint::from(f.p);
    let mut out = Vec::new();
    // Distinct-degree stage.
    let mut rest = p;
    let mut q_power = BigUint::one();
    let mut d = 0usize;
    while deg(&rest).unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > deg(&rest).unwrap() {
            out.push((rest.clone(), deg(&rest).unwrap()));
            break;
        }
        q_power *= &prime;
        let xq = pow_x_mod(f, &q_power, &rest);
        let diff = sub(f, &xq, &vec![0, 1]);
        let g = gcd(f, &diff, &rest);
        if deg(&g).unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            rest = divide_exact(f, &rest, &g);
        }
    }
    // Equal-degree (Cantor-Zassenhaus) stage.
    let mut factors = Vec::new();
    for (prod, d) in out {
        split_equal_degree(f, prod, d, rng, &mut factors);
    }
    factors
}

fn split_equal_degree<R: Rng>(
    f: &PrimeField,
    p: Poly,
    d: usize,
    rng: &mut R,
    out: &mut Vec<Poly>,
) {
    let n = deg(&p).unwrap();
    if n == d {
        out.push(p);
        return;
    }
    let e = (BigUint::from(f.p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: Poly = trim((0..n).map(|_| f.random(rng)).collect());
        if deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = pow_mod(f, &a, &e, &p);
        let b1 = sub(f, &b, &vec![1]);
        let g = gcd(f, &b1, &p);
        let dg = deg(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let q = divide_exact(f, &p, &g);
            split_equal_degree(f, g, d, rng, out);
            split_equal_degree(f, q, d, rng, out);
            return;
        }
    }
}

/// Characteristic polynomial of a square matrix over the prime field, via
/// Hessenberg reduction and the leading-minor recurrence.
pub fn char_poly(f: &PrimeField, m: &Mat<u64>) -> Poly {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return vec![1];
    }
    let mut h = m.clone();
    // Reduce to upper Hessenberg form by similarity transforms.
    for k in 0..n.saturating_sub(2) {
        let piv = (k + 1..n).find(|&i| h.at(i, k) != &0);
        let Some(piv) = piv else { continue };
        if piv != k + 1 {
            for j in 0..n {
                let (a, b) = (*h.at(piv, j), *h.at(k + 1, j));
                h.set(piv, j, b);
                h.set(k + 1, j, a);
            }
            for i in 0..n {
                let (a, b) = (*h.at(i, piv), *h.at(i, k + 1));
                h.set(i, piv, b);
                h.set(i, k + 1, a);
            }
        }
        let inv = f.inv(h.at(k + 1, k));
        for i in k + 2..n {
            let c = f.mul(h.at(i, k), &inv);
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let v = f.sub(h.at(i, j), &f.mul(&c, h.at(k + 1, j)));
                h.set(i, j, v);
            }
            for j in 0..n {
                let v = f.add(h.at(j, k + 1), &f.mul(&c, h.at(j, i)));
                h.set(j, k + 1, v);
            }
        }
    }
    // p_k = char poly of the leading k x k block of the Hessenberg matrix.
    let mut polys: Vec<Poly> = vec![vec![1]];
    for k in 1..=n {
        // p_k = (x - h[k-1][k-1]) p_{k-1} - sum over subdiagonal products.
        let x_minus = vec![f.neg(h.at(k - 1, k - 1)), 1];
        let mut p = mul(f, &x_minus, &polys[k - 1]);
        let mut prod = f.one();
        for i in (0..k - 1).rev() {
            // product of subdiagonal entries h[i+1][i] ... h[k-1][k-2]
            prod = f.mul(&prod, h.at(i + 1, i));
            if prod == 0 {
                break;
            }
            let c = f.mul(&prod, h.at(i, k - 1));
            if c == 0 {
                continue;
            }
            let term: Poly = polys[i].iter().map(|v| f.mul(v, &c)).collect();
            p = sub(f, &p, &term);
        }
        polys.push(trim(p));
    }
    polys.pop().unwrap()
}

/// Evaluate p at a matrix argument.
pub fn eval_matrix(f: &PrimeField, p: &Poly, m: &Mat<u64>) -> Mat<u64> {
    let n = m.rows;
    let mut acc = Mat::zero(f, n, n);
    for &c in p.iter().rev() {
        acc = acc.mul(f, m);
        for i in 0..n {
            let v = f.add(acc.at(i, i), &c);
            acc.set(i, i, v);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_PRIME;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn char_poly_of_diagonal() {
        let f = PrimeField::new(DEFAULT_PRIME);
        let m = Mat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        // (x-2)(x-3) = x^2 - 5x + 6
        assert_eq!(char_poly(&f, &m), vec![6, f.from_i64(-5), 1]);
    }

    #[test]
    fn char_poly_matches_det_for_random() {
        let f = PrimeField::new(DEFAULT_PRIME);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..6 {
            let m = Mat::from_fn(n, n, |_, _| f.random(&mut rng));
            let p = char_poly(&f, &m);
            assert_eq!(p.len(), n + 1);
            assert_eq!(*p.last().unwrap(), 1);
            // Constant term is (-1)^n det.
            let d = crate::matrix::det(&f, &m);
            let expect = if n % 2 == 0 { d } else { f.neg(&d) };
            assert_eq!(p[0], expect);
            // Cayley-Hamilton.
            assert!(eval_matrix(&f, &p, &m).is_zero(&f));
        }
    }

    #[test]
    fn factors_recombine() {
        let f = PrimeField::new(DEFAULT_PRIME);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        // (x-1)^2 (x-2) (x^2+1)-ish: build from known roots and a quadratic.
        let p = mul(
            &f,
            &mul(&f, &vec![f.from_i64(-1), 1], &vec![f.from_i64(-1), 1]),
            &mul(&f, &vec![f.from_i64(-2), 1], &vec![1, 0, 1]),
        );
        let facs = coprime_factors(&f, &p, &mut rng);
        let total: usize = facs.iter().map(|(q, m)| deg(q).unwrap() * m).sum();
        assert_eq!(total, deg(&p).unwrap());
        let mut rebuilt = vec![1u64];
        for (q, m) in &facs {
            for _ in 0..*m {
                rebuilt = mul(&f, &rebuilt, q);
            }
        }
        assert_eq!(monic(&f, &rebuilt), monic(&f, &p));
        // Factors pairwise coprime.
        for i in 0..facs.len() {
            for j in i + 1..facs.len() {
                assert_eq!(gcd(&f, &facs[i].0, &facs[j].0), vec![1]);
            }
        }
    }
}
