//! Multivariate polynomials in `y_1..y_n` with rational coefficients.

use super::rational::{self, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial; exponent vectors all have length `nvars`, zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// `y_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut p = MultiPoly { nvars: exps.len(), terms: BTreeMap::new() };
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Some(c) if the polynomial is the constant c.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::VarCount(self.nvars, o.nvars));
        }
        Ok(())
    }

    /// Same polynomial viewed in a ring with `n >= nvars` variables.
    pub fn extend(&self, n: usize) -> Self {
        assert!(n >= self.nvars);
        MultiPoly {
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(n, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Rename variables: `y_i` becomes `y_{perm[i]}` (0-based).
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                f[perm[i]] += x;
            }
            r.add_term(f, c.clone());
        }
        r
    }

    /// Exchange `y_i` and `y_j` (0-based).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        perm.swap(i, j);
        self.permute(&perm)
    }

    /// All exponent vectors of total degree at most `d` in `n` variables,
    /// graded then lexicographic.
    pub fn exponents_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for deg in 0..=d {
            let mut cur = vec![0; n];
            fill(&mut out, &mut cur, 0, deg);
        }
        out
    }

    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        Parser { s: s.as_bytes(), pos: 0, nvars }.parse_all()
    }
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, i: usize, left: u32) {
    if i + 1 >= cur.len() {
        if !cur.is_empty() {
            cur[i] = left;
            out.push(cur.clone());
            cur[i] = 0;
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[i] = k;
        fill(out, cur, i + 1, left - k);
    }
    cur[i] = 0;
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.try_add(o).expect("variable count mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.try_add(&-o).expect("variable count mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.try_mul(o).expect("variable count mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for MultiPoly {
    /// Graded, highest degree first: `y1^2 - 3/2*y1*y2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("y{}", i + 1) } else { format!("y{}^{}", i + 1, x) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", rational::to_text(&a))?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", rational::to_text(&a), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<MultiPoly> {
        let p = self.sum()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn sum(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.nvars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let k = self.integer()?;
            let k: u32 = k.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(b'y') => {
                self.pos += 1;
                let k: usize = self.integer()?.parse().map_err(|_| self.err("bad index"))?;
                if k == 0 || k > self.nvars {
                    return Err(Error::Parse(format!("variable y{k} outside y1..y{}", self.nvars)));
                }
                Ok(MultiPoly::var(self.nvars, k - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.integer()?;
                let mut text = p;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.ws();
                    text = format!("{text}/{}", self.integer()?);
                }
                Ok(MultiPoly::constant(self.nvars, rational::parse(&text)?))
            }
            _ => Err(self.err("expected a number, y<k> or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    #[test]
    fn parse_and_print() {
        let p = MultiPoly::parse("y1^2 - 3/2*y1*y2 + 1", 2).unwrap();
        assert_eq!(p.coeff(&[2, 0]), int(1));
        assert_eq!(p.coeff(&[1, 1]), frac(-3, 2));
        assert_eq!(p.constant_term(), int(1));
        assert_eq!(p.to_string(), "y1^2 - 3/2*y1*y2 + 1");
        assert_eq!(MultiPoly::parse("-(y1+y2)^2 + 2*y1*y2", 2).unwrap().to_string(), "-y1^2 - y2^2");
        assert!(MultiPoly::parse("y3", 2).is_err());
        assert!(MultiPoly::parse("y1 +", 2).is_err());
        assert_eq!(MultiPoly::parse("0", 1).unwrap().to_string(), "0");
    }

    #[test]
    fn exponent_listing_counts() {
        // binomial(n+d, d)
        assert_eq!(MultiPoly::exponents_up_to(2, 3).len(), 10);
        assert_eq!(MultiPoly::exponents_up_to(3, 2).len(), 10);
        assert_eq!(MultiPoly::exponents_up_to(1, 4).len(), 5);
    }

    #[test]
    fn swap_and_mismatch() {
        let p = MultiPoly::parse("y1^2*y2", 2).unwrap();
        assert_eq!(p.swap_vars(0, 1).to_string(), "y1*y2^2");
        assert_eq!(MultiPoly::one(2).try_add(&MultiPoly::one(3)), Err(Error::VarCount(2, 3)));
    }
}
