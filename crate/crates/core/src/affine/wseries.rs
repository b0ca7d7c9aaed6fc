//! The bubble series `W_i^{(A)}(u)`: `e_i y_i^k e_i = w_k(y_1..y_{i-1}) e_i`
//! where `w_k` is the `u^{-k}` coefficient. It depends only on the prefix
//! `a_1..a_i` of the object.

use super::omega::OmegaSpec;
use crate::arith::{series_div, series_mul, series_star, LaurentSeries, MultiPoly};
use crate::diagram::OrSeq;
use crate::error::{Error, Result};

/// `W_i` for the object whose first `i = prefix.len()` entries are `prefix`
/// (and `a_{i+1} = -a_i`), to order `order`, in `i - 1` variables.
pub fn w_series(prefix: &[i8], order: usize, omega: &OmegaSpec) -> Result<LaurentSeries> {
    let i = prefix.len();
    if i == 0 {
        return Err(Error::Precondition("empty prefix".into()));
    }
    if i == 1 {
        let base = LaurentSeries::from_rationals(0, &omega.omegas(order)?)?;
        return Ok(if prefix[0] == 1 { base } else { series_star(&base) });
    }
    if prefix[i - 2] != prefix[i - 1] {
        // involution step from the object with the last two entries exchanged
        let mut flipped = prefix.to_vec();
        flipped[i - 1] = -flipped[i - 1];
        return Ok(series_star(&w_series(&flipped, order, omega)?));
    }
    // straightening: (W + u) = (W' + u) / (1 - (u - y)^{-2}), y = y_{i-1}
    let nv = i - 1;
    let w_prev = w_series(&prefix[..i - 1], order, omega)?;
    let w_prev = LaurentSeries::new(nv, w_prev.coeffs().iter().map(|c| c.extend(nv)).collect())?;
    let y = MultiPoly::var(nv, nv - 1);
    // G = (u - y)^{-2} = sum_{k>=2} (k-1) y^{k-2} u^{-k}
    let g: Vec<MultiPoly> = (0..=order + 1)
        .map(|k| if k < 2 { MultiPoly::zero(nv) } else { y.pow(k as u32 - 2).scale(&crate::arith::rational::int(k as i64 - 1)) })
        .collect();
    let g = LaurentSeries::new(nv, g)?;
    let one = LaurentSeries::one(nv, order + 1);
    let p = series_div(&g, &one.sub(&g)?)?; // Q - 1
    let q = one.add(&p)?.truncate(order);
    series_mul(&w_prev, &q)?.add(&p.shift_up()?)
}

/// The `u^{-k}` coefficient of `W_i^{(A)}` (1-based `i`), a polynomial in
/// `y_1..y_{i-1}`.
pub fn w_coeff(a: &OrSeq, i: usize, k: usize, omega: &OmegaSpec) -> Result<MultiPoly> {
    if i == 0 || i >= a.len() || a.get(i - 1) == a.get(i) {
        return Err(Error::Precondition(format!("W_{i} needs a_i != a_(i+1) on {a}")));
    }
    Ok(w_series(&a.as_slice()[..i], k, omega)?.coeff(k).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn first_bubble() {
        let om = OmegaSpec::List((0..6).map(|k| int(k * k + 1)).collect());
        for k in 0..6 {
            assert_eq!(w_coeff(&OrSeq::parse("1,-1").unwrap(), 1, k, &om).unwrap().as_constant(), Some(int((k * k + 1) as i64)));
        }
        assert_eq!(w_coeff(&OrSeq::parse("-1,1").unwrap(), 1, 0, &om).unwrap().as_constant(), Some(int(1)));
        assert!(w_coeff(&OrSeq::parse("1,1").unwrap(), 1, 0, &om).is_err());
    }

    #[test]
    fn constant_term_is_omega0() {
        let om = OmegaSpec::MnDelta { m: 3, n: 2, delta: 1 };
        for a in ["1,-1,1,-1", "1,1,-1,-1", "-1,-1,1,1", "-1,1,1,-1", "1,-1,-1,1"] {
            let a = OrSeq::parse(a).unwrap();
            for i in 1..a.len() {
                if a.get(i - 1) != a.get(i) {
                    assert_eq!(w_coeff(&a, i, 0, &om).unwrap().as_constant(), Some(int(5)));
                }
            }
        }
    }
}
