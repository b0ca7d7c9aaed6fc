//! Multiplication and reduction to regular monomials.
//!
//! A monomial `y^eta D y^gamma` is rewritten by moving each dot along its
//! strand to the strand's normal endpoint. The strand is followed through
//! the layered word of `D` (see [`WBDiagram::word`]); passing a crossing
//! leaves a correction term where that crossing is replaced by the identity
//! (plain crossing) or by the twisted cup-cap (twisted crossing), and passing
//! a cup or cap flips the sign. A cup-cap applied on top of a cap closes a
//! bubble, which is evaluated by the `W` series.

use super::omega::OmegaSpec;
use super::wseries::w_series;
use crate::arith::{LaurentSeries, Rational};
use crate::diagram::{DecoratedElement, End, GenKind, Monomial, OrSeq, Step, WBDiagram};
use crate::error::{Error, Result};
use num_traits::One;
use std::collections::HashMap;
use std::sync::Mutex;

/// Rewriting engine for a fixed parameter sequence. The internal caches only
/// memoize pure functions, so an engine can be shared between threads.
pub struct AffineEngine {
    omega: OmegaSpec,
    wcache: Mutex<HashMap<Vec<i8>, LaurentSeries>>,
    ncache: Mutex<HashMap<Monomial, DecoratedElement>>,
}

/// One dot moved to the far end of its strand: `sign * main + sum corrections`.
pub struct Slide {
    pub sign: Rational,
    pub main: Monomial,
    pub corrections: Vec<(Rational, Monomial)>,
}

impl AffineEngine {
    pub fn new(omega: OmegaSpec) -> Self {
        AffineEngine { omega, wcache: Mutex::new(HashMap::new()), ncache: Mutex::new(HashMap::new()) }
    }

    pub fn omega(&self) -> &OmegaSpec {
        &self.omega
    }

    /// `u^{-k}` coefficient of the bubble series for this prefix, as a
    /// polynomial in `nvars` variables.
    pub fn bubble(&self, prefix: &[i8], k: usize, nvars: usize) -> Result<crate::arith::MultiPoly> {
        let cached = self.wcache.lock().unwrap().get(prefix).filter(|s| s.order() >= k).cloned();
        let s = match cached {
            Some(s) => s,
            None => {
                let s = w_series(prefix, k, &self.omega)?;
                self.wcache.lock().unwrap().insert(prefix.to_vec(), s.clone());
                s
            }
        };
        Ok(s.coeff(k).extend(nvars))
    }

    /// Move one dot from endpoint `from` to the other end of its strand.
    pub fn slide(&self, m: &Monomial, from: End) -> Result<Slide> {
        if m.dots(from) == 0 {
            return Err(Error::Precondition("no dot to slide".into()));
        }
        let mut base = m.clone();
        *base.dots_mut(from) -= 1;
        let word = m.diagram.word();
        let steps: Vec<Step> = word.iter().map(|(s, _)| *s).collect();
        let levels = steps.len();
        let bottom = m.diagram.bottom().clone();
        let (mut level, mut pos, mut up) = match from {
            End::Bottom(p) => (0, p, true),
            End::Top(q) => (levels, q, false),
        };
        let mut sign = Rational::one();
        let mut corrections = Vec::new();
        let omega0 = self.omega.omega(0);
        let mut correct = |layer: usize, replace: Option<Step>, c: Rational| -> Result<()> {
            let mut w = steps.clone();
            match replace {
                Some(st) => w[layer] = st,
                None => {
                    w.remove(layer);
                }
            }
            let (loops, d) = WBDiagram::from_word(&bottom, &w)?;
            let mut c = c;
            for _ in 0..loops {
                c *= omega0.clone()?;
            }
            let mut mm = base.clone();
            mm.diagram = d;
            corrections.push((c, mm));
            Ok(())
        };
        let arrival = loop {
            if up {
                if level == levels {
                    break End::Top(pos);
                }
                let st = steps[level];
                let i = st.pos;
                if pos != i && pos != i + 1 {
                    level += 1;
                    continue;
                }
                let low = pos == i;
                match st.kind {
                    // s y_i = y_{i+1} s - 1, s y_{i+1} = y_i s + 1
                    GenKind::S => {
                        correct(level, None, if low { -sign.clone() } else { sign.clone() })?;
                        pos = if low { i + 1 } else { i };
                        level += 1;
                    }
                    // ŝ y_i = y_{i+1} ŝ + ê, ŝ y_{i+1} = y_i ŝ - ê
                    GenKind::SHat => {
                        let c = if low { sign.clone() } else { -sign.clone() };
                        correct(level, Some(Step::new(GenKind::EHat, i)), c)?;
                        pos = if low { i + 1 } else { i };
                        level += 1;
                    }
                    // under a cap: ė y_i = -ė y_{i+1}
                    GenKind::E | GenKind::EHat => {
                        sign = -sign;
                        pos = if low { i + 1 } else { i };
                        up = false;
                    }
                    GenKind::Y => unreachable!(),
                }
            } else {
                if level == 0 {
                    break End::Bottom(pos);
                }
                let st = steps[level - 1];
                let i = st.pos;
                if pos != i && pos != i + 1 {
                    level -= 1;
                    continue;
                }
                let low = pos == i;
                match st.kind {
                    // y_{i+1} s = s y_i + 1, y_i s = s y_{i+1} - 1
                    GenKind::S => {
                        correct(level - 1, None, if low { -sign.clone() } else { sign.clone() })?;
                        pos = if low { i + 1 } else { i };
                        level -= 1;
                    }
                    // y_{i+1} ŝ = ŝ y_i - ê, y_i ŝ = ŝ y_{i+1} + ê
                    GenKind::SHat => {
                        let c = if low { sign.clone() } else { -sign.clone() };
                        correct(level - 1, Some(Step::new(GenKind::EHat, i)), c)?;
                        pos = if low { i + 1 } else { i };
                        level -= 1;
                    }
                    // over a cup: y_i ė = -y_{i+1} ė
                    GenKind::E | GenKind::EHat => {
                        sign = -sign;
                        pos = if low { i + 1 } else { i };
                        up = true;
                    }
                    GenKind::Y => unreachable!(),
                }
            }
        };
        let mut main = base;
        *main.dots_mut(arrival) += 1;
        Ok(Slide { sign, main, corrections })
    }

    /// Rewrite a monomial as a combination of regular monomials.
    pub fn normalize(&self, m: &Monomial) -> Result<DecoratedElement> {
        if m.is_regular() {
            return Ok(DecoratedElement::from_monomial(m.clone(), Rational::one()));
        }
        if let Some(x) = self.ncache.lock().unwrap().get(m) {
            return Ok(x.clone());
        }
        let n = m.diagram.len();
        let from = (0..n)
            .map(End::Bottom)
            .chain((0..n).map(End::Top))
            .find(|&e| m.dots(e) > 0 && m.diagram.normal_end(e) != e)
            .expect("irregular monomial has a misplaced dot");
        let s = self.slide(m, from)?;
        let mut out = self.normalize(&s.main)?.scale(&s.sign);
        for (c, mm) in &s.corrections {
            out.add_scaled(&self.normalize(mm)?, c);
        }
        self.ncache.lock().unwrap().insert(m.clone(), out.clone());
        Ok(out)
    }

    pub fn reduce(&self, x: &DecoratedElement) -> Result<DecoratedElement> {
        let mut out = DecoratedElement::zero(x.bottom.clone(), x.top.clone());
        for (m, c) in x.terms() {
            out.add_scaled(&self.normalize(m)?, c);
        }
        Ok(out)
    }

    /// `g * m` for a single generator `g` acting on the top object of `m`.
    pub fn mul_step(&self, st: Step, m: &Monomial) -> Result<DecoratedElement> {
        let top = m.diagram.top().clone();
        let target = st.target(&top)?;
        let i = st.pos;
        match st.kind {
            GenKind::Y => {
                let mut mm = m.clone();
                mm.eta[i] += 1;
                self.normalize(&mm)
            }
            GenKind::S | GenKind::SHat => {
                for x in [i, i + 1] {
                    if m.eta[x] == 0 {
                        continue;
                    }
                    let mut rest = m.clone();
                    rest.eta[x] -= 1;
                    let other = if x == i { i + 1 } else { i };
                    let moved = self.mul_step(st, &rest)?;
                    let mut out = self.mul_elem_step(Step::new(GenKind::Y, other), &moved)?;
                    match (st.kind, x == i) {
                        // s y_i = y_{i+1} s - 1
                        (GenKind::S, true) => out.add_scaled(&self.normalize(&rest)?, &-Rational::one()),
                        // s y_{i+1} = y_i s + 1
                        (GenKind::S, false) => out.add_scaled(&self.normalize(&rest)?, &Rational::one()),
                        // ŝ y_i = y_{i+1} ŝ + ê
                        (_, true) => out.add_scaled(&self.mul_step(Step::new(GenKind::EHat, i), &rest)?, &Rational::one()),
                        // ŝ y_{i+1} = y_i ŝ - ê
                        (_, false) => out.add_scaled(&self.mul_step(Step::new(GenKind::EHat, i), &rest)?, &-Rational::one()),
                    }
                    return Ok(out);
                }
                self.stack(st, m, Rational::one())
            }
            GenKind::E | GenKind::EHat => {
                let arc = m.diagram.partner(End::Top(i)) == End::Top(i + 1);
                if !arc {
                    for x in [i, i + 1] {
                        if m.eta[x] > 0 {
                            let s = self.slide(m, End::Top(x))?;
                            let mut out = self.mul_step(st, &s.main)?.scale(&s.sign);
                            for (c, mm) in &s.corrections {
                                out.add_scaled(&self.mul_step(st, mm)?, c);
                            }
                            return Ok(out);
                        }
                    }
                    return self.stack(st, m, Rational::one());
                }
                // closing a bubble on the object `top` at position i
                let k = (m.eta[i] + m.eta[i + 1]) as usize;
                let sign = if m.eta[i + 1].is_multiple_of(2) { Rational::one() } else { -Rational::one() };
                let n = top.len();
                let w = self.bubble(&top.as_slice()[..=i], k, n)?;
                let g = WBDiagram::of_step(&top, st)?;
                let (loops, d) = WBDiagram::compose(&g, &m.diagram)?;
                debug_assert_eq!(loops, 1);
                let mut extra = sign;
                for _ in 1..loops {
                    extra *= self.omega.omega(0)?;
                }
                let mut out = DecoratedElement::zero(m.diagram.bottom().clone(), target);
                for (e, c) in w.terms() {
                    let mut mm = m.clone();
                    mm.diagram = d.clone();
                    mm.eta[i] = 0;
                    mm.eta[i + 1] = 0;
                    for (q, x) in e.iter().enumerate() {
                        mm.eta[q] += x;
                    }
                    out.add_scaled(&self.normalize(&mm)?, &(c * &extra));
                }
                Ok(out)
            }
        }
    }

    /// Compose the generator's diagram on top, keeping the dots (none of
    /// which sit on the generator's strands).
    fn stack(&self, st: Step, m: &Monomial, c: Rational) -> Result<DecoratedElement> {
        let g = WBDiagram::of_step(m.diagram.top(), st)?;
        let (loops, d) = WBDiagram::compose(&g, &m.diagram)?;
        let mut c = c;
        for _ in 0..loops {
            c *= self.omega.omega(0)?;
        }
        let mut mm = m.clone();
        mm.diagram = d;
        Ok(self.normalize(&mm)?.scale(&c))
    }

    pub fn mul_elem_step(&self, st: Step, x: &DecoratedElement) -> Result<DecoratedElement> {
        let target = st.target(&x.top)?;
        let mut out = DecoratedElement::zero(x.bottom.clone(), target);
        for (m, c) in x.terms() {
            out.add_scaled(&self.mul_step(st, m)?, c);
        }
        Ok(out)
    }

    /// Apply a word (first step first) on the left of `x`.
    pub fn apply_word(&self, word: &[Step], x: &DecoratedElement) -> Result<DecoratedElement> {
        let mut cur = x.clone();
        for &st in word {
            cur = self.mul_elem_step(st, &cur)?;
        }
        Ok(cur)
    }

    /// `x * y`: `y` first, then `x`.
    pub fn multiply(&self, x: &DecoratedElement, y: &DecoratedElement) -> Result<DecoratedElement> {
        if x.bottom != y.top {
            return Err(Error::Boundary(format!("cannot multiply {}->{} after {}->{}", x.bottom, x.top, y.bottom, y.top)));
        }
        let mut out = DecoratedElement::zero(y.bottom.clone(), x.top.clone());
        for (m, c) in x.terms() {
            out.add_scaled(&self.apply_word(&monomial_word(m), y)?, c);
        }
        Ok(out)
    }

    /// The element of a word starting at `a`.
    pub fn word_element(&self, a: &OrSeq, word: &[Step]) -> Result<DecoratedElement> {
        self.apply_word(word, &DecoratedElement::identity(a))
    }
}

/// Word for `y^eta D y^gamma`, first step first.
pub fn monomial_word(m: &Monomial) -> Vec<Step> {
    let mut w = Vec::new();
    for (p, &g) in m.gamma.iter().enumerate() {
        w.extend(std::iter::repeat_n(Step::new(GenKind::Y, p), g as usize));
    }
    w.extend(m.diagram.word().into_iter().map(|(s, _)| s));
    for (q, &e) in m.eta.iter().enumerate() {
        w.extend(std::iter::repeat_n(Step::new(GenKind::Y, q), e as usize));
    }
    w
}
