//! Truncated series `c_0 + c_1 u^{-1} + ... + c_K u^{-K}` with polynomial
//! coefficients.

use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    nvars: usize,
    coeffs: Vec<MultiPoly>,
}

impl LaurentSeries {
    pub fn new(nvars: usize, coeffs: Vec<MultiPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("a series needs at least c_0".into()));
        }
        for c in &coeffs {
            if c.nvars() != nvars {
                return Err(Error::VarCount(nvars, c.nvars()));
            }
        }
        Ok(LaurentSeries { nvars, coeffs })
    }

    /// Series with rational coefficients.
    pub fn from_rationals(nvars: usize, cs: &[Rational]) -> Result<Self> {
        Self::new(nvars, cs.iter().map(|c| MultiPoly::constant(nvars, c.clone())).collect())
    }

    pub fn zero(nvars: usize, order: usize) -> Self {
        LaurentSeries { nvars, coeffs: vec![MultiPoly::zero(nvars); order + 1] }
    }

    pub fn one(nvars: usize, order: usize) -> Self {
        let mut s = Self::zero(nvars, order);
        s.coeffs[0] = MultiPoly::one(nvars);
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<MultiPoly> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        LaurentSeries { nvars: self.nvars, coeffs: c }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let k = self.order().min(o.order());
        Ok(LaurentSeries {
            nvars: self.nvars,
            coeffs: (0..=k).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentSeries { nvars: self.nvars, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// `f(-u)`.
    pub fn reflect(&self) -> Self {
        LaurentSeries {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect(),
        }
    }

    /// Multiply by `u^{-1}`; the order is kept, the top coefficient drops.
    pub fn shift_down(&self) -> Self {
        let mut c = vec![MultiPoly::zero(self.nvars)];
        c.extend(self.coeffs[..self.order()].iter().cloned());
        LaurentSeries { nvars: self.nvars, coeffs: c }
    }

    /// Multiply by `u`, for a series without constant term; loses one order.
    pub fn shift_up(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("shift_up needs a zero constant term".into()));
        }
        if self.order() == 0 {
            return Err(Error::Precondition("shift_up needs order at least 1".into()));
        }
        Ok(LaurentSeries { nvars: self.nvars, coeffs: self.coeffs[1..].to_vec() })
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::VarCount(self.nvars, o.nvars));
        }
        Ok(())
    }
}

pub fn series_mul(f: &LaurentSeries, g: &LaurentSeries) -> Result<LaurentSeries> {
    f.check(g)?;
    let k = f.order().min(g.order());
    let mut out = Vec::with_capacity(k + 1);
    for n in 0..=k {
        let mut c = MultiPoly::zero(f.nvars);
        for i in 0..=n {
            if f.coeffs[i].is_zero() || g.coeffs[n - i].is_zero() {
                continue;
            }
            c = &c + &(&f.coeffs[i] * &g.coeffs[n - i]);
        }
        out.push(c);
    }
    Ok(LaurentSeries { nvars: f.nvars, coeffs: out })
}

pub fn series_div(f: &LaurentSeries, g: &LaurentSeries) -> Result<LaurentSeries> {
    f.check(g)?;
    let g0 = match g.coeffs[0].as_constant() {
        Some(c) if !c.is_zero() => c,
        _ => return Err(Error::NonUnit),
    };
    let inv = Rational::from_integer(1.into()) / g0;
    let k = f.order().min(g.order());
    let mut h: Vec<MultiPoly> = Vec::with_capacity(k + 1);
    for n in 0..=k {
        let mut c = f.coeffs[n].clone();
        for i in 1..=n {
            if g.coeffs[i].is_zero() || h[n - i].is_zero() {
                continue;
            }
            c = &c - &(&g.coeffs[i] * &h[n - i]);
        }
        h.push(c.scale(&inv));
    }
    Ok(LaurentSeries { nvars: f.nvars, coeffs: h })
}

/// `f*(u) = f(-u) / (1 - u^{-1} f(-u))`. Defined for polynomial coefficients
/// too, since the denominator always has constant term 1.
pub fn series_star(f: &LaurentSeries) -> LaurentSeries {
    let r = f.reflect();
    let den = LaurentSeries::one(f.nvars, f.order()).sub(&r.shift_down()).expect("same ring");
    series_div(&r, &den).expect("unit constant term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    fn rs(cs: &[i64]) -> LaurentSeries {
        LaurentSeries::from_rationals(0, &cs.iter().map(|&c| int(c)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn products_and_quotients() {
        assert_eq!(series_mul(&rs(&[1, 1, 0]), &rs(&[1, -1, 0])).unwrap(), rs(&[1, 0, -1]));
        assert_eq!(series_mul(&rs(&[2, 2, 2, 2]), &rs(&[1, -1, 0, 0])).unwrap(), rs(&[2, 0, 0, 0]));
        assert_eq!(series_div(&rs(&[1, 0, 0, 0]), &rs(&[1, -1, 0, 0])).unwrap(), rs(&[1, 1, 1, 1]));
        assert_eq!(series_div(&rs(&[2, 0, 0, 0]), &rs(&[1, -1, 0, 0])).unwrap(), rs(&[2, 2, 2, 2]));
        assert_eq!(series_div(&rs(&[1, 0]), &rs(&[0, 1])), Err(Error::NonUnit));
        // result order is the smaller one
        assert_eq!(series_mul(&rs(&[1, 1, 1]), &rs(&[1, 1])).unwrap().order(), 1);
    }

    #[test]
    fn star_of_constant_is_geometric() {
        // c / (1 - c u^{-1}), expanded by hand for c = 3/2 (with f(-u) = c)
        let c = frac(3, 2);
        let f = LaurentSeries::from_rationals(0, &[c.clone(), int(0), int(0), int(0)]).unwrap();
        let want: Vec<Rational> = (0..4).map(|k| c.clone() * crate::arith::rational::pow(&c, k)).collect();
        assert_eq!(series_star(&f), LaurentSeries::from_rationals(0, &want).unwrap());
        assert_eq!(series_star(&rs(&[0, 0, 0])), rs(&[0, 0, 0]));
    }
}
