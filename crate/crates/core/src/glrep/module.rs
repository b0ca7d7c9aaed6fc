//! `M ⊗ V^{⊗A}` for `M` trivial or the two-block parabolic Verma module.
//!
//! The Verma module is modelled by monomials in the commuting lowering
//! symbols `x_ij` (`i > m >= j`, 1-based) applied to the highest weight
//! vector `z`. Indices are 0-based internally.

use crate::affine::OmegaSpec;
use crate::arith::rational::{self, Rational};
use crate::diagram::{GenKind, OrSeq, Step};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Trivial,
    Parabolic { m: usize, n: usize, delta: i64 },
}

/// A basis tensor `x^mu z ⊗ v_{b_1} ⊗ ... ⊗ v_{b_{r+t}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor {
    pub mu: Vec<u32>,
    pub slots: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    pub obj: OrSeq,
    terms: BTreeMap<Tensor, Rational>,
}

impl ModuleVector {
    pub fn zero(obj: OrSeq) -> Self {
        ModuleVector { obj, terms: BTreeMap::new() }
    }

    pub fn basis(obj: OrSeq, t: Tensor) -> Self {
        let mut v = Self::zero(obj);
        v.add_term(t, Rational::one());
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tensor, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Tensor) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, t: Tensor, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &ModuleVector, c: &Rational) {
        debug_assert_eq!(self.obj, o.obj);
        for (t, d) in &o.terms {
            self.add_term(t.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut v = Self::zero(self.obj.clone());
        v.add_scaled(self, c);
        v
    }

    pub fn sub(&self, o: &ModuleVector) -> Self {
        let mut v = self.clone();
        v.add_scaled(o, &-Rational::one());
        v
    }
}

type Action = Arc<Vec<(Vec<u32>, Rational)>>;

/// A `gl_N` module context.
pub struct GlContext {
    pub kind: ModuleKind,
    pub big_n: usize,
    m: usize,
    delta: Rational,
    memo: Mutex<HashMap<(u16, u16, Vec<u32>), Action>>,
}

impl GlContext {
    pub fn trivial(big_n: usize) -> Result<Self> {
        if big_n == 0 {
            return Err(Error::Precondition("N must be positive".into()));
        }
        Ok(GlContext { kind: ModuleKind::Trivial, big_n, m: 0, delta: Rational::zero(), memo: Mutex::default() })
    }

    pub fn parabolic(m: usize, n: usize, delta: i64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Precondition(format!("m and n must be positive, got m={m}, n={n}")));
        }
        Ok(GlContext {
            kind: ModuleKind::Parabolic { m, n, delta },
            big_n: m + n,
            m,
            delta: rational::int(delta),
            memo: Mutex::default(),
        })
    }

    /// The sequence `omega_k` this module should realise.
    pub fn omega_spec(&self) -> OmegaSpec {
        match self.kind {
            ModuleKind::Trivial => OmegaSpec::Trivial { n: self.big_n as i64 },
            ModuleKind::Parabolic { m, n, delta } => OmegaSpec::MnDelta { m: m as i64, n: n as i64, delta },
        }
    }

    /// Number of lowering symbols.
    pub fn nsymbols(&self) -> usize {
        self.m * (self.big_n - self.m)
    }

    fn symbol(&self, i: usize, j: usize) -> usize {
        (i - self.m) * self.m + j
    }

    pub(crate) fn symbol_pair(&self, s: usize) -> (usize, usize) {
        (s / self.m + self.m, s % self.m)
    }

    pub fn empty_mu(&self) -> Vec<u32> {
        vec![0; self.nsymbols()]
    }

    /// `E_ab x^mu z` as a combination of monomials.
    fn act_module(&self, a: usize, b: usize, mu: &[u32]) -> Action {
        let key = (a as u16, b as u16, mu.to_vec());
        if let Some(r) = self.memo.lock().unwrap().get(&key) {
            return r.clone();
        }
        let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        let mut add = |e: Vec<u32>, c: Rational| {
            let slot = out.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        };
        match mu.iter().position(|&d| d > 0) {
            None => {
                if a >= self.m && b < self.m {
                    let mut e = mu.to_vec();
                    e[self.symbol(a, b)] += 1;
                    add(e, Rational::one());
                } else if a == b && a < self.m && !self.delta.is_zero() {
                    add(mu.to_vec(), -self.delta.clone());
                }
            }
            Some(s) => {
                let (i, j) = self.symbol_pair(s);
                let mut rest = mu.to_vec();
                rest[s] -= 1;
                for (e, c) in self.act_module(a, b, &rest).iter() {
                    let mut e = e.clone();
                    e[s] += 1;
                    add(e, c.clone());
                }
                if b == i {
                    for (e, c) in self.act_module(a, j, &rest).iter() {
                        add(e.clone(), c.clone());
                    }
                }
                if j == a {
                    for (e, c) in self.act_module(i, b, &rest).iter() {
                        add(e.clone(), -c.clone());
                    }
                }
            }
        }
        let r: Action = Arc::new(out.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.memo.lock().unwrap().insert(key, r.clone());
        r
    }

    /// `E_ab` on one factor (`0` is the module, `k >= 1` is slot `k`) of a
    /// basis tensor, added into `out` with weight `c`.
    fn act_factor(&self, obj: &OrSeq, k: usize, a: usize, b: usize, t: &Tensor, c: &Rational, out: &mut ModuleVector) {
        if k == 0 {
            for (e, d) in self.act_module(a, b, &t.mu).iter() {
                out.add_term(Tensor { mu: e.clone(), slots: t.slots.clone() }, c * d);
            }
            return;
        }
        let q = t.slots[k - 1] as usize;
        let mut s = t.slots.clone();
        if obj.get(k - 1) == 1 {
            if q == b {
                s[k - 1] = a as u16;
                out.add_term(Tensor { mu: t.mu.clone(), slots: s }, c.clone());
            }
        } else if q == a {
            s[k - 1] = b as u16;
            out.add_term(Tensor { mu: t.mu.clone(), slots: s }, -c.clone());
        }
    }

    fn check_index(&self, a: usize) -> Result<()> {
        if a == 0 || a > self.big_n {
            return Err(Error::Precondition(format!("index {a} outside 1..{}", self.big_n)));
        }
        Ok(())
    }

    /// `E_ab` (1-based) acting on the whole tensor product.
    pub fn apply_e(&self, a: usize, b: usize, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_index(a)?;
        self.check_index(b)?;
        let mut out = ModuleVector::zero(v.obj.clone());
        for (t, c) in v.terms() {
            for k in 0..=v.obj.len() {
                self.act_factor(&v.obj, k, a - 1, b - 1, t, c, &mut out);
            }
        }
        Ok(out)
    }

    /// `Omega_kl = sum_ab E_ab ⊗ E_ba` between factors `k < l` (factor 0
    /// is the module).
    pub fn apply_omega(&self, k: usize, l: usize, v: &ModuleVector) -> ModuleVector {
        assert!(k < l && l <= v.obj.len());
        let nn = self.big_n;
        let mut out = ModuleVector::zero(v.obj.clone());
        let mut mid = ModuleVector::zero(v.obj.clone());
        for (t, c) in v.terms() {
            let q = t.slots[l - 1] as usize;
            // E_ba on slot l is nonzero only for a = q (V) or b = q (V*).
            for x in 0..nn {
                let (a, b) = if v.obj.get(l - 1) == 1 { (q, x) } else { (x, q) };
                mid.terms.clear();
                self.act_factor(&v.obj, l, b, a, t, c, &mut mid);
                for (t2, c2) in mid.terms() {
                    self.act_factor(&v.obj, k, a, b, t2, c2, &mut out);
                }
            }
        }
        out
    }

    /// `y_i` (1-based): `sum_{0 <= k < i} Omega_ki + N/2`.
    pub fn apply_y(&self, i: usize, v: &ModuleVector) -> Result<ModuleVector> {
        if i == 0 || i > v.obj.len() {
            return Err(Error::NoGenerator(format!("y_{i} on {}", v.obj)));
        }
        let mut out = v.scale(&rational::frac(self.big_n as i64, 2));
        for k in 0..i {
            out.add_scaled(&self.apply_omega(k, i, v), &Rational::one());
        }
        Ok(out)
    }

    /// One generator, 0-based position as in [`Step`].
    pub fn apply_step(&self, st: Step, v: &ModuleVector) -> Result<ModuleVector> {
        let target = st.target(&v.obj)?;
        let p = st.pos;
        match st.kind {
            GenKind::Y => self.apply_y(p + 1, v),
            GenKind::S | GenKind::SHat => {
                let mut out = ModuleVector::zero(target);
                for (t, c) in v.terms() {
                    let mut s = t.slots.clone();
                    s.swap(p, p + 1);
                    out.add_term(Tensor { mu: t.mu.clone(), slots: s }, c.clone());
                }
                Ok(out)
            }
            GenKind::E | GenKind::EHat => {
                let mut out = ModuleVector::zero(target);
                for (t, c) in v.terms() {
                    if t.slots[p] != t.slots[p + 1] {
                        continue;
                    }
                    for x in 0..self.big_n as u16 {
                        let mut s = t.slots.clone();
                        s[p] = x;
                        s[p + 1] = x;
                        out.add_term(Tensor { mu: t.mu.clone(), slots: s }, c.clone());
                    }
                }
                Ok(out)
            }
        }
    }

    /// Steps in application order.
    pub fn apply_word(&self, word: &[Step], v: &ModuleVector) -> Result<ModuleVector> {
        let mut cur = v.clone();
        for &st in word {
            cur = self.apply_step(st, &cur)?;
        }
        Ok(cur)
    }

    /// All basis tensors on `obj` whose Verma part has degree `<= maxdeg`.
    pub fn test_tensors(&self, obj: &OrSeq, maxdeg: u32) -> Vec<Tensor> {
        let mus = if self.nsymbols() == 0 {
            vec![vec![]]
        } else {
            crate::arith::MultiPoly::exponents_up_to(self.nsymbols(), maxdeg)
        };
        let n = obj.len();
        let total = self.big_n.pow(n as u32);
        let mut out = Vec::new();
        for mu in &mus {
            for mut code in 0..total {
                let mut slots = vec![0u16; n];
                for s in slots.iter_mut().rev() {
                    *s = (code % self.big_n) as u16;
                    code /= self.big_n;
                }
                out.push(Tensor { mu: mu.clone(), slots });
            }
        }
        out
    }

    /// `z ⊗ v_b` with 1-based indices.
    pub fn highest_tensor(&self, slots_1based: &[usize]) -> Tensor {
        Tensor { mu: self.empty_mu(), slots: slots_1based.iter().map(|&b| (b - 1) as u16).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    fn vec1(ctx: &GlContext, a: &str, slots: &[usize]) -> ModuleVector {
        ModuleVector::basis(OrSeq::parse(a).unwrap(), ctx.highest_tensor(slots))
    }

    #[test]
    fn natural_and_dual_actions() {
        let ctx = GlContext::trivial(3).unwrap();
        let v = ctx.apply_e(1, 2, &vec1(&ctx, "1", &[2])).unwrap();
        assert_eq!(v, vec1(&ctx, "1", &[1]));
        let v = ctx.apply_e(1, 2, &vec1(&ctx, "-1", &[1])).unwrap();
        assert_eq!(v, vec1(&ctx, "-1", &[2]).scale(&int(-1)));
    }

    #[test]
    fn highest_weight_of_verma() {
        let ctx = GlContext::parabolic(2, 2, 3).unwrap();
        let z = ModuleVector::basis(OrSeq::new(vec![]).unwrap(), ctx.highest_tensor(&[]));
        assert_eq!(ctx.apply_e(1, 1, &z).unwrap(), z.scale(&int(-3)));
        assert!(ctx.apply_e(3, 3, &z).unwrap().is_zero());
        assert!(ctx.apply_e(1, 3, &z).unwrap().is_zero());
        assert!(ctx.apply_e(1, 2, &z).unwrap().is_zero());
        // E_13 x_31 z = (E_11 - E_33) z
        let x31 = ctx.apply_e(3, 1, &z).unwrap();
        assert_eq!(ctx.apply_e(1, 3, &x31).unwrap(), z.scale(&int(-3)));
    }

    #[test]
    fn generators_on_small_vectors() {
        let ctx = GlContext::trivial(3).unwrap();
        let s = ctx.apply_step(Step::new(GenKind::S, 0), &vec1(&ctx, "1,1", &[1, 2])).unwrap();
        assert_eq!(s, vec1(&ctx, "1,1", &[2, 1]));
        let e = ctx.apply_step(Step::new(GenKind::E, 0), &vec1(&ctx, "1,-1", &[1, 1])).unwrap();
        let mut want = ModuleVector::zero(OrSeq::parse("1,-1").unwrap());
        for k in 1..=3 {
            want.add_scaled(&vec1(&ctx, "1,-1", &[k, k]), &int(1));
        }
        assert_eq!(e, want);
        let v = vec1(&ctx, "1,-1", &[2, 3]);
        assert_eq!(ctx.apply_y(1, &v).unwrap(), v.scale(&frac(3, 2)));
    }

    #[test]
    fn y1_on_natural_tensor_of_verma() {
        let ctx = GlContext::parabolic(3, 2, 1).unwrap();
        for i in 1..=3 {
            let v = vec1(&ctx, "1", &[i]);
            assert_eq!(ctx.apply_y(1, &v).unwrap(), v.scale(&frac(3, 2)));
        }
    }
}
