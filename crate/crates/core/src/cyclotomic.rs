//! The level-two cyclotomic quotient: `(y_1 - b1)(y_1 - b2) = 0` on objects
//! starting with `+1` and `(y_1 - b1*)(y_1 - b2*) = 0` on objects starting
//! with `-1`, with parameters coming from `(m, n, delta)`.

use crate::affine::{AffineEngine, OmegaSpec};
use crate::arith::linalg::{self, Matrix};
use crate::arith::rational::{self, Rational};
use crate::arith::{series_div, LaurentSeries, MultiPoly};
use crate::diagram::{enumerate_diagrams, DecoratedElement, End, GenKind, Monomial, OrSeq, Step};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloParams {
    pub m: i64,
    pub n: i64,
    pub delta: i64,
    pub beta1: Rational,
    pub beta2: Rational,
    pub beta1_star: Rational,
    pub beta2_star: Rational,
    pub omega: OmegaSpec,
}

pub fn make_params(m: i64, n: i64, delta: i64) -> Result<CycloParams> {
    if m < 1 || n < 1 {
        return Err(Error::Precondition(format!("m and n must be positive, got m={m}, n={n}")));
    }
    if delta == m || delta == n {
        return Err(Error::Degenerate(delta));
    }
    Ok(CycloParams {
        m,
        n,
        delta,
        beta1: rational::frac(-2 * delta + m + n, 2),
        beta2: rational::frac(n - m, 2),
        beta1_star: rational::frac(m + n, 2),
        beta2_star: rational::frac(2 * delta + m - n, 2),
        omega: OmegaSpec::MnDelta { m, n, delta },
    })
}

impl CycloParams {
    /// `(sum, product)` of the two roots for the leftmost orientation.
    pub fn roots(&self, orientation: i8) -> (Rational, Rational) {
        let (a, b) = if orientation == 1 { (&self.beta1, &self.beta2) } else { (&self.beta1_star, &self.beta2_star) };
        (a + b, a * b)
    }
}

/// `omega_k` from the rational generating function
/// `(w0 + (w1 - (b1+b2) w0) u^{-1}) / (1 - (b1+b2) u^{-1} + b1 b2 u^{-2})`.
pub fn w1_closed_form(p: &CycloParams, k: usize) -> Rational {
    let w0 = rational::int(p.m + p.n);
    let w1 = rational::int(-p.delta * p.m) + rational::frac((p.m + p.n) * (p.m + p.n), 2);
    let (s, q) = p.roots(1);
    let mut num = vec![Rational::zero(); k + 1];
    let mut den = vec![Rational::zero(); k + 1];
    num[0] = w0.clone();
    den[0] = Rational::one();
    if k >= 1 {
        num[1] = w1 - &s * &w0;
        den[1] = -s;
    }
    if k >= 2 {
        den[2] = q;
    }
    let f = LaurentSeries::from_rationals(0, &num).expect("series");
    let g = LaurentSeries::from_rationals(0, &den).expect("series");
    series_div(&f, &g).expect("unit").coeff(k).constant_term()
}

/// Cyclotomic regular monomials on `a`: at most one dot per strand, at the
/// strand's normal endpoint.
pub fn basis(a: &OrSeq) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in enumerate_diagrams(a, a).expect("same object") {
        out.extend(Monomial::regular_on(&d, 1));
    }
    out
}

/// Warning text when the parameters are outside the range where the
/// monomials are known to be a basis.
pub fn basis_warning(a: &OrSeq, p: &CycloParams) -> Option<String> {
    let rt = a.len() as i64;
    let mut w = Vec::new();
    if p.m < rt || p.n < rt {
        w.push(format!("m={} or n={} is below r+t={rt}; independence is not guaranteed", p.m, p.n));
    }
    if a.r() == 0 {
        w.push("r = 0 is outside the hypotheses of the dimension count".to_string());
    }
    (!w.is_empty()).then(|| w.join("; "))
}

/// Reducer for one parameter choice.
pub struct CycloEngine {
    pub params: CycloParams,
    pub affine: AffineEngine,
}

impl CycloEngine {
    pub fn new(params: CycloParams) -> Self {
        let affine = AffineEngine::new(params.omega.clone());
        CycloEngine { params, affine }
    }

    /// The crossings carrying position `p` to position 0, starting on `a`.
    fn transport(a: &OrSeq, p: usize) -> (Vec<Step>, OrSeq) {
        let mut obj = a.clone();
        let mut w = Vec::new();
        for y in (0..p).rev() {
            let st = Step::crossing(&obj, y);
            obj = st.target(&obj).unwrap();
            w.push(st);
        }
        (w, obj)
    }

    /// `T^{-1} (y_1^2 - s y_1 + q) T` on `a`, where `T` moves strand `p` to
    /// the left edge. Equal to `y_p^2` plus terms of lower degree.
    fn transported_quadratic(&self, a: &OrSeq, p: usize) -> Result<DecoratedElement> {
        let (t, a1) = Self::transport(a, p);
        let mut back = Vec::new();
        let mut obj = a1.clone();
        for y in 0..p {
            let st = Step::crossing(&obj, y);
            obj = st.target(&obj).unwrap();
            back.push(st);
        }
        debug_assert_eq!(&obj, a);
        let (s, q) = self.params.roots(a1.get(0));
        let x = self.affine.word_element(a, &t)?;
        let y1 = Step::new(GenKind::Y, 0);
        let y1x = self.affine.mul_elem_step(y1, &x)?;
        let mut r = self.affine.mul_elem_step(y1, &y1x)?;
        r.add_scaled(&y1x, &-s);
        r.add_scaled(&x, &q);
        self.affine.apply_word(&back, &r)
    }

    /// Reduce to cyclotomic regular monomials.
    pub fn cyclo_reduce(&self, x: &DecoratedElement) -> Result<DecoratedElement> {
        let mut cur = self.affine.reduce(x)?;
        loop {
            let pick = cur
                .terms()
                .filter(|(m, _)| m.gamma.iter().chain(&m.eta).any(|&d| d >= 2))
                .max_by_key(|(m, _)| m.degree())
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = pick else { return Ok(cur) };
            let n = m.diagram.len();
            let end = (0..n).map(End::Bottom).chain((0..n).map(End::Top)).find(|&e| m.dots(e) >= 2).unwrap();
            let mut rest = m.clone();
            *rest.dots_mut(end) -= 2;
            let rest = DecoratedElement::from_monomial(rest, Rational::one());
            let ideal = match end {
                End::Bottom(p) => self.affine.multiply(&rest, &self.transported_quadratic(&x.bottom, p)?)?,
                End::Top(q) => self.affine.multiply(&self.transported_quadratic(&x.top, q)?, &rest)?,
            };
            debug_assert_eq!(ideal.coeff(&m), Rational::one());
            cur.add_scaled(&ideal, &-c);
        }
    }

    pub fn multiply(&self, x: &DecoratedElement, y: &DecoratedElement) -> Result<DecoratedElement> {
        self.cyclo_reduce(&self.affine.multiply(x, y)?)
    }

    /// Sparse multiplication table `(i, j, k, c)`: `b_i b_j = sum_k c b_k`.
    pub fn structure_constants(&self, a: &OrSeq) -> Result<(Vec<Monomial>, Vec<(usize, usize, usize, Rational)>)> {
        let b = basis(a);
        let index: BTreeMap<&Monomial, usize> = b.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let elems: Vec<DecoratedElement> = b.iter().map(|m| DecoratedElement::from_monomial(m.clone(), Rational::one())).collect();
        let pairs: Vec<(usize, usize)> = (0..b.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).collect();
        let rows: Result<Vec<Vec<(usize, usize, usize, Rational)>>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let p = self.multiply(&elems[i], &elems[j])?;
                let mut row = Vec::new();
                for (m, c) in p.terms() {
                    let k = *index.get(m).ok_or_else(|| Error::Precondition("product left the basis".into()))?;
                    row.push((i, j, k, c.clone()));
                }
                row.sort();
                Ok(row)
            })
            .collect();
        Ok((b.clone(), rows?.into_iter().flatten().collect()))
    }

    fn poly_elem(a: &OrSeq, p: &MultiPoly) -> Result<DecoratedElement> {
        DecoratedElement::from_poly(a, p)
    }

    /// Generators of the endomorphism algebra of `a`.
    pub fn endo_generators(a: &OrSeq) -> Vec<Step> {
        let n = a.len();
        let mut g: Vec<Step> = (0..n).map(|i| Step::new(GenKind::Y, i)).collect();
        for i in 0..n.saturating_sub(1) {
            g.push(Step::new(if a.get(i) == a.get(i + 1) { GenKind::S } else { GenKind::E }, i));
        }
        g
    }

    /// Commutators `[p, g]` for the endomorphism generators, reduced either
    /// in the affine category or in the quotient.
    fn commutators(&self, p: &MultiPoly, a: &OrSeq, quotient: bool) -> Result<Vec<DecoratedElement>> {
        let pe = Self::poly_elem(a, p)?;
        let mut out = Vec::new();
        for st in Self::endo_generators(a) {
            let g = self.affine.word_element(a, &[st])?;
            let d = self.affine.multiply(&pe, &g)?.sub(&self.affine.multiply(&g, &pe)?)?;
            out.push(if quotient { self.cyclo_reduce(&d)? } else { self.affine.reduce(&d)? });
        }
        Ok(out)
    }

    /// Whether the polynomial commutes with every generator of the
    /// endomorphism algebra, reduced in the affine category (where the
    /// centre is described by invariance plus Q-cancellation).
    pub fn is_central(&self, p: &MultiPoly, a: &OrSeq) -> Result<bool> {
        Ok(self.commutators(p, a, false)?.iter().all(|d| d.is_zero()))
    }

    /// Same test with commutators reduced in the cyclotomic quotient.
    pub fn is_central_in_quotient(&self, p: &MultiPoly, a: &OrSeq) -> Result<bool> {
        Ok(self.commutators(p, a, true)?.iter().all(|d| d.is_zero()))
    }

    /// Basis of the degree `<= max_deg` polynomials commuting with all
    /// generators (affine reduction), by exact linear algebra.
    pub fn central_polys_by_commutators(&self, a: &OrSeq, max_deg: u32) -> Result<Vec<MultiPoly>> {
        let n = a.len();
        let exps = MultiPoly::exponents_up_to(n, max_deg);
        let cols: Result<Vec<Vec<DecoratedElement>>> = exps
            .par_iter()
            .map(|e| self.commutators(&MultiPoly::monomial(e.clone(), Rational::one()), a, false))
            .collect();
        let cols = cols?;
        let mut keys: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        for col in &cols {
            for (g, d) in col.iter().enumerate() {
                for (m, _) in d.terms() {
                    let l = keys.len();
                    keys.entry((g, m.clone())).or_insert(l);
                }
            }
        }
        let mut mat: Matrix = vec![vec![Rational::zero(); exps.len()]; keys.len()];
        for (j, col) in cols.iter().enumerate() {
            for (g, d) in col.iter().enumerate() {
                for (m, c) in d.terms() {
                    mat[keys[&(g, m.clone())]][j] = c.clone();
                }
            }
        }
        Ok(kernel_polys(&mat, &exps, n))
    }
}

fn kernel_polys(mat: &Matrix, exps: &[Vec<u32>], n: usize) -> Vec<MultiPoly> {
    let k = if mat.is_empty() {
        (0..exps.len())
            .map(|j| (0..exps.len()).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    } else {
        linalg::kernel(mat, exps.len())
    };
    k.into_iter().map(|v| MultiPoly::from_terms(n, exps.iter().cloned().zip(v))).collect()
}

/// `p(y_i = y, y_j = -y) == p(y_i = 0, y_j = 0)` (1-based `i`, `j`).
pub fn q_cancellation(p: &MultiPoly, i: usize, j: usize) -> Result<bool> {
    let n = p.nvars();
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Precondition(format!("bad pair ({i},{j}) for {n} variables")));
    }
    Ok(q_defect(p, i - 1, j - 1).is_zero())
}

fn q_defect(p: &MultiPoly, i: usize, j: usize) -> MultiPoly {
    let n = p.nvars();
    let mut d = MultiPoly::zero(n);
    for (e, c) in p.terms() {
        let mut f = e.clone();
        f[i] = e[i] + e[j];
        f[j] = 0;
        d.add_term(f, c * rational::sign_pow(e[j]));
        if e[i] == 0 && e[j] == 0 {
            d.add_term(e.clone(), -c.clone());
        }
    }
    d
}

/// Basis of degree `<= max_deg` polynomials invariant under permutations
/// of equally oriented positions and, if some pair has opposite
/// orientations, Q-cancelling for the first such pair.
pub fn center_basis(a: &OrSeq, max_deg: u32) -> Vec<MultiPoly> {
    let n = a.len();
    let exps = MultiPoly::exponents_up_to(n, max_deg);
    let idx: BTreeMap<&Vec<u32>, usize> = exps.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows: Matrix = Vec::new();
    let mut push_map = |f: &dyn Fn(&MultiPoly) -> MultiPoly| {
        let images: Vec<MultiPoly> = exps.iter().map(|e| f(&MultiPoly::monomial(e.clone(), Rational::one()))).collect();
        let mut keys: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for im in &images {
            for (e, _) in im.terms() {
                let l = keys.len();
                keys.entry(e.clone()).or_insert(l);
            }
        }
        let mut block = vec![vec![Rational::zero(); exps.len()]; keys.len()];
        for (j, im) in images.iter().enumerate() {
            for (e, c) in im.terms() {
                block[keys[e]][j] = c.clone();
            }
        }
        rows.extend(block);
    };
    for i in 0..n {
        for j in i + 1..n {
            if a.get(i) == a.get(j) {
                push_map(&|p: &MultiPoly| p - &p.swap_vars(i, j));
            }
        }
    }
    if let Some((i, j)) = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| a.get(i) != a.get(j)) {
        push_map(&|p: &MultiPoly| q_defect(p, i, j));
    }
    let _ = idx;
    kernel_polys(&rows, &exps, n)
}

/// Dimension of the span of a family of polynomials.
pub fn span_rank(ps: &[MultiPoly]) -> usize {
    let mut keys: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for p in ps {
        for (e, _) in p.terms() {
            let l = keys.len();
            keys.entry(e.clone()).or_insert(l);
        }
    }
    let mat: Matrix = ps
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); keys.len()];
            for (e, c) in p.terms() {
                row[keys[e]] = c.clone();
            }
            row
        })
        .collect();
    if mat.is_empty() {
        0
    } else {
        linalg::rank(&mat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    #[test]
    fn parameter_values() {
        let p = make_params(2, 2, 0).unwrap();
        assert_eq!((p.beta1.clone(), p.beta2.clone(), p.beta1_star.clone(), p.beta2_star.clone()), (int(2), int(0), int(2), int(0)));
        assert_eq!(p.omega.omegas(1).unwrap(), vec![int(4), int(8)]);
        assert_eq!(make_params(2, 2, 2), Err(Error::Degenerate(2)));
        let p = make_params(3, 2, 1).unwrap();
        assert_eq!((p.beta1, p.beta2), (frac(3, 2), frac(-1, 2)));
    }

    #[test]
    fn closed_form_values() {
        let p = make_params(1, 1, 0).unwrap();
        assert!((0..8).all(|k| w1_closed_form(&p, k) == int(2)));
        assert_eq!(w1_closed_form(&make_params(2, 2, 0).unwrap(), 2), int(16));
        assert_eq!(w1_closed_form(&make_params(3, 2, -1).unwrap(), 0), int(5));
    }

    #[test]
    fn q_cancellation_examples() {
        let q = |s: &str| q_cancellation(&MultiPoly::parse(s, 2).unwrap(), 1, 2).unwrap();
        assert!(q("y1 + y2"));
        assert!(!q("y1*y2"));
        assert!(q("y1^2 + y1*y2"));
        assert!(q("7"));
        assert!(q_cancellation(&MultiPoly::one(2), 1, 1).is_err());
    }

    #[test]
    fn basis_sizes_small() {
        assert_eq!(basis(&OrSeq::parse("1").unwrap()).len(), 2);
        assert_eq!(basis(&OrSeq::parse("1,-1").unwrap()).len(), 8);
        assert_eq!(basis(&OrSeq::parse("1,1,-1").unwrap()).len(), 48);
    }

    fn engine(m: i64, n: i64, d: i64) -> CycloEngine {
        CycloEngine::new(make_params(m, n, d).unwrap())
    }

    #[test]
    fn quadratic_on_left_strand() {
        for (a, star) in [("1,-1", false), ("-1,1", true), ("1", false), ("-1,-1", true)] {
            let e = engine(3, 2, 1);
            let a = OrSeq::parse(a).unwrap();
            let n = a.len();
            let y1sq = DecoratedElement::from_poly(&a, &MultiPoly::parse("y1^2", n).unwrap()).unwrap();
            let p = &e.params;
            let (b1, b2) = if star { (&p.beta1_star, &p.beta2_star) } else { (&p.beta1, &p.beta2) };
            let mut want = MultiPoly::var(n, 0).scale(&(b1 + b2));
            want.add_term(vec![0; n], -(b1 * b2));
            assert_eq!(e.cyclo_reduce(&y1sq).unwrap(), DecoratedElement::from_poly(&a, &want).unwrap());
        }
    }

    #[test]
    fn output_is_cyclotomic_regular_and_idempotent() {
        let e = engine(2, 2, 0);
        let a = OrSeq::parse("1,-1,1").unwrap();
        let x = DecoratedElement::from_poly(&a, &MultiPoly::parse("y2^3*y3^2 - y1*y3^2 + 2", 3).unwrap()).unwrap();
        let g = e.affine.word_element(&a, &[Step::new(GenKind::E, 0), Step::new(GenKind::Y, 1), Step::new(GenKind::SHat, 1)]).unwrap();
        let x = e.affine.multiply(&g, &x).unwrap();
        let r = e.cyclo_reduce(&x).unwrap();
        assert!(r.terms().all(|(m, _)| m.is_cyclotomic_regular()));
        assert_eq!(e.cyclo_reduce(&r).unwrap(), r);
    }

    #[test]
    fn structure_constants_small() {
        let e = engine(2, 2, 0);
        let a = OrSeq::parse("1,-1").unwrap();
        let (b, table) = e.structure_constants(&a).unwrap();
        assert_eq!(b.len(), 8);
        let id = b.iter().position(|m| *m == Monomial::identity(&a)).unwrap();
        assert!(table.contains(&(id, id, id, int(1))));
        let e1 = Monomial::undotted(crate::diagram::WBDiagram::of_step(&a, Step::new(GenKind::E, 0)).unwrap());
        let k = b.iter().position(|m| *m == e1).unwrap();
        assert!(table.contains(&(k, k, k, int(4))));
    }

    #[test]
    fn centre_small() {
        let e = engine(2, 2, 0);
        let a = OrSeq::parse("1,-1").unwrap();
        assert!(e.is_central(&MultiPoly::one(2), &a).unwrap());
        assert!(e.is_central(&MultiPoly::parse("y1+y2", 2).unwrap(), &a).unwrap());
        assert!(!e.is_central(&MultiPoly::parse("y1", 2).unwrap(), &a).unwrap());
        let cb = center_basis(&a, 1);
        assert_eq!(span_rank(&cb), 2);
        let one_and_sum = [MultiPoly::one(2), MultiPoly::parse("y1+y2", 2).unwrap()];
        assert_eq!(span_rank(&[cb.clone(), one_and_sum.to_vec()].concat()), 2);
        assert_eq!(span_rank(&center_basis(&OrSeq::parse("1").unwrap(), 3)), 4);
    }
}
