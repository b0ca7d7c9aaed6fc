//! Exact rationals. Backed by `num_rational::BigRational`, which already keeps
//! the denominator positive and the fraction reduced.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `"p/q"`, or `"p"` for integers.
pub fn to_text(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `x^k` for a nonnegative exponent.
pub fn pow(x: &Rational, k: u32) -> Rational {
    let mut acc = one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

pub fn sign_pow(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

/// Rational roots of `c_0 + c_1 x + ... + c_d x^d` with multiplicity, plus the
/// degree of the part left without rational roots.
pub fn rational_roots(coeffs: &[Rational]) -> (Vec<(Rational, usize)>, usize) {
    let mut p: Vec<Rational> = coeffs.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let push = |r: Rational, roots: &mut Vec<(Rational, usize)>| {
        if let Some(e) = roots.iter_mut().find(|(x, _)| *x == r) {
            e.1 += 1;
        } else {
            roots.push((r, 1));
        }
    };
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        push(zero(), &mut roots);
    }
    loop {
        if p.len() <= 1 {
            break;
        }
        // clear denominators
        let l = p
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let a0 = ints[0].abs();
        let ad = ints[ints.len() - 1].abs();
        let mut found = None;
        'search: for pd in divisors(&a0) {
            for qd in divisors(&ad) {
                for sgn in [1, -1] {
                    let cand = Rational::new(BigInt::from(sgn) * pd.clone(), qd.clone());
                    if horner(&p, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                p = deflate(&p, &r);
                push(r, &mut roots);
            }
            None => break,
        }
    }
    roots.sort();
    (roots, p.len().saturating_sub(1))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

fn horner(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(zero(), |acc, c| acc * x + c)
}

fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let d = p.len() - 1;
    let mut q = vec![zero(); d];
    let mut carry = zero();
    for k in (1..=d).rev() {
        carry = &carry * r + &p[k];
        q[k - 1] = carry.clone();
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(to_text(&parse(s).unwrap()), s);
        }
        assert_eq!(to_text(&parse("4/6").unwrap()), "2/3");
        assert_eq!(to_text(&parse("3/-6").unwrap()), "-1/2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn roots_of_products() {
        // (x - 3/2)(x + 1/2) = x^2 - x - 3/4
        let (r, rest) = rational_roots(&[frac(-3, 4), int(-1), int(1)]);
        assert_eq!(r, vec![(frac(-1, 2), 1), (frac(3, 2), 1)]);
        assert_eq!(rest, 0);
        // x^2 (x - 2)^2
        let (r, _) = rational_roots(&[int(0), int(0), int(4), int(-4), int(1)]);
        assert_eq!(r, vec![(int(0), 2), (int(2), 2)]);
        // x^2 + 1 has no rational roots
        let (r, rest) = rational_roots(&[int(1), int(0), int(1)]);
        assert!(r.is_empty());
        assert_eq!(rest, 2);
    }
}
