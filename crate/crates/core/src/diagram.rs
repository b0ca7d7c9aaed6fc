//! Orientation sequences, oriented walled Brauer diagrams, dotted monomials
//! and their formal linear combinations.
//!
//! Conventions: positions are 0-based internally; the public `generator`
//! takes the usual 1-based index. A product `x * y` stacks `y` underneath, so
//! `y` acts first. Dots on a monomial are `gamma` (bottom endpoints) and `eta`
//! (top endpoints).

use crate::arith::rational::{self, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// An (r,t)-sequence: r entries `+1` (V) and t entries `-1` (V*).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrSeq(Vec<i8>);

impl OrSeq {
    pub fn new(v: Vec<i8>) -> Result<Self> {
        if let Some(x) = v.iter().find(|&&x| x != 1 && x != -1) {
            return Err(Error::BadSeq(format!("entry {x} is not +1 or -1")));
        }
        Ok(OrSeq(v))
    }

    /// Comma separated, e.g. `"1,-1,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return OrSeq::new(Vec::new());
        }
        let v: std::result::Result<Vec<i8>, _> = s.split(',').map(|x| x.trim().parse::<i8>()).collect();
        OrSeq::new(v.map_err(|_| Error::BadSeq(format!("cannot parse {s:?}")))?)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn r(&self) -> usize {
        self.0.iter().filter(|&&x| x == 1).count()
    }

    pub fn t(&self) -> usize {
        self.0.len() - self.r()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    /// `s_i A`: entries `i` and `i+1` exchanged (0-based).
    pub fn swapped(&self, i: usize) -> OrSeq {
        let mut v = self.0.clone();
        v.swap(i, i + 1);
        OrSeq(v)
    }

    /// Every arrangement of r plus signs and t minus signs.
    pub fn all(r: usize, t: usize) -> Vec<OrSeq> {
        let n = r + t;
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == t {
                out.push(OrSeq((0..n).map(|i| if mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 }).collect()));
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    pub fn to_json(&self) -> Value {
        json!(self.0)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("orientation must be an array".into()))?;
        let mut out = Vec::new();
        for x in arr {
            let k = x.as_i64().ok_or_else(|| Error::Parse("orientation entries are integers".into()))?;
            out.push(k as i8);
        }
        OrSeq::new(out)
    }
}

impl fmt::Display for OrSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Generator families. The dotted forms are resolved by orientation:
/// a crossing of equal orientations is `S`, of opposite ones `SHat`; a
/// cup-cap keeping the object is `E`, one exchanging it is `EHat`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    S,
    E,
    SHat,
    EHat,
    Y,
}

impl GenKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "s" => GenKind::S,
            "e" => GenKind::E,
            "shat" | "ŝ" => GenKind::SHat,
            "ehat" | "ê" => GenKind::EHat,
            "y" => GenKind::Y,
            _ => return Err(Error::Parse(format!("unknown generator {s:?}"))),
        })
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, GenKind::S | GenKind::SHat)
    }

    pub fn is_cupcap(self) -> bool {
        matches!(self, GenKind::E | GenKind::EHat)
    }
}

/// One generator acting at 0-based position `pos` (strands `pos`, `pos+1`
/// for the two-strand kinds).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub kind: GenKind,
    pub pos: usize,
}

impl Step {
    pub fn new(kind: GenKind, pos: usize) -> Self {
        Step { kind, pos }
    }

    /// Target object when acting on `a`, or an error if the generator does
    /// not exist there.
    pub fn target(&self, a: &OrSeq) -> Result<OrSeq> {
        let n = a.len();
        let i = self.pos;
        let missing = || Error::NoGenerator(format!("{:?} at position {} on {a}", self.kind, i + 1));
        if self.kind == GenKind::Y {
            return if i < n { Ok(a.clone()) } else { Err(missing()) };
        }
        if i + 1 >= n {
            return Err(missing());
        }
        let same = a.get(i) == a.get(i + 1);
        match self.kind {
            GenKind::S if same => Ok(a.clone()),
            GenKind::E if !same => Ok(a.clone()),
            GenKind::SHat | GenKind::EHat if !same => Ok(a.swapped(i)),
            _ => Err(missing()),
        }
    }

    /// The crossing at `pos` that exists on `a`.
    pub fn crossing(a: &OrSeq, pos: usize) -> Step {
        if a.get(pos) == a.get(pos + 1) {
            Step::new(GenKind::S, pos)
        } else {
            Step::new(GenKind::SHat, pos)
        }
    }
}

/// A boundary point of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Bottom(usize),
    Top(usize),
}

/// Oriented walled Brauer diagram `bottom -> top`, stored as a fixed-point
/// free involution on the `2n` boundary points (bottom `p` is `p`, top `q` is
/// `n + q`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WBDiagram {
    bottom: OrSeq,
    top: OrSeq,
    partner: Vec<usize>,
}

impl WBDiagram {
    pub fn new(bottom: OrSeq, top: OrSeq, partner: Vec<usize>) -> Result<Self> {
        let n = bottom.len();
        if top.len() != n || partner.len() != 2 * n {
            return Err(Error::BadDiagram("boundary sizes disagree".into()));
        }
        let d = WBDiagram { bottom, top, partner };
        for x in 0..2 * n {
            let y = d.partner[x];
            if y >= 2 * n || y == x || d.partner[y] != x {
                return Err(Error::BadDiagram("matching is not a fixed-point free involution".into()));
            }
            let (ox, oy) = (d.orient(x), d.orient(y));
            let through = (x < n) != (y < n);
            if through && ox != oy {
                return Err(Error::BadDiagram("through strand changes orientation".into()));
            }
            if !through && ox == oy {
                return Err(Error::BadDiagram("arc joins points of equal orientation".into()));
            }
        }
        Ok(d)
    }

    pub fn identity(a: &OrSeq) -> Self {
        let n = a.len();
        let partner = (0..2 * n).map(|x| if x < n { x + n } else { x - n }).collect();
        WBDiagram { bottom: a.clone(), top: a.clone(), partner }
    }

    /// Diagram of a two-strand generator acting on `a`.
    pub fn of_step(a: &OrSeq, step: Step) -> Result<Self> {
        let top = step.target(a)?;
        let n = a.len();
        let i = step.pos;
        let mut d = WBDiagram::identity(a);
        d.top = top;
        let mut link = |x: usize, y: usize| {
            d.partner[x] = y;
            d.partner[y] = x;
        };
        match step.kind {
            GenKind::S | GenKind::SHat => {
                link(i, n + i + 1);
                link(i + 1, n + i);
            }
            GenKind::E | GenKind::EHat => {
                link(i, i + 1);
                link(n + i, n + i + 1);
            }
            GenKind::Y => return Err(Error::NoGenerator("a dot has no undecorated diagram".into())),
        }
        Ok(d)
    }

    pub fn bottom(&self) -> &OrSeq {
        &self.bottom
    }

    pub fn top(&self) -> &OrSeq {
        &self.top
    }

    pub fn len(&self) -> usize {
        self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bottom.is_empty()
    }

    fn orient(&self, x: usize) -> i8 {
        let n = self.len();
        // a top point is traversed downwards, so a top arc joins opposite
        // orientations just like a bottom arc
        if x < n {
            self.bottom.get(x)
        } else {
            self.top.get(x - n)
        }
    }

    fn code(&self, e: End) -> usize {
        match e {
            End::Bottom(p) => p,
            End::Top(q) => self.len() + q,
        }
    }

    fn end(&self, x: usize) -> End {
        let n = self.len();
        if x < n {
            End::Bottom(x)
        } else {
            End::Top(x - n)
        }
    }

    pub fn partner(&self, e: End) -> End {
        self.end(self.partner[self.code(e)])
    }

    /// Horizontal arcs among the bottom points, as `(left, right)`.
    pub fn bottom_arcs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).filter(|&p| self.partner[p] < n && self.partner[p] > p).map(|p| (p, self.partner[p])).collect()
    }

    pub fn top_arcs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .filter(|&q| self.partner[n + q] >= n && self.partner[n + q] > n + q)
            .map(|q| (q, self.partner[n + q] - n))
            .collect()
    }

    /// Through strands `(bottom, top)` ordered by bottom point.
    pub fn through(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).filter(|&p| self.partner[p] >= n).map(|p| (p, self.partner[p] - n)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == WBDiagram::identity(&self.bottom)
    }

    /// The endpoint where a strand's dots are kept: the bottom of a through
    /// strand, the right end of a bottom arc, the left end of a top arc.
    pub fn normal_end(&self, e: End) -> End {
        let f = self.partner(e);
        match (e, f) {
            (End::Bottom(_), End::Top(_)) => e,
            (End::Top(_), End::Bottom(_)) => f,
            (End::Bottom(p), End::Bottom(q)) => End::Bottom(p.max(q)),
            (End::Top(p), End::Top(q)) => End::Top(p.min(q)),
        }
    }

    /// Strands listed by their normal endpoints, bottoms first.
    pub fn normal_ends(&self) -> Vec<End> {
        let n = self.len();
        let mut v: Vec<End> = (0..n).map(End::Bottom).chain((0..n).map(End::Top)).filter(|&e| self.normal_end(e) == e).collect();
        v.sort();
        v
    }

    /// `upper ∘ lower`: stack `upper` on top of `lower`. Returns the number of
    /// closed loops removed and the resulting diagram.
    pub fn compose(upper: &WBDiagram, lower: &WBDiagram) -> Result<(usize, WBDiagram)> {
        if upper.bottom != lower.top {
            return Err(Error::Boundary(format!("cannot stack {} over {}", upper.bottom, lower.top)));
        }
        let n = lower.len();
        let mut seen = vec![false; n];
        let mut partner = vec![usize::MAX; 2 * n];
        // walk from an outer point; `in_lower` says which layer `cur` indexes
        let walk = |mut cur: usize, mut in_lower: bool, seen: &mut Vec<bool>| -> usize {
            loop {
                if in_lower {
                    if cur < n {
                        return cur;
                    }
                    let j = cur - n;
                    seen[j] = true;
                    cur = upper.partner[j];
                    in_lower = false;
                } else {
                    if cur >= n {
                        return cur;
                    }
                    seen[cur] = true;
                    cur = lower.partner[n + cur];
                    in_lower = true;
                }
            }
        };
        for p in 0..n {
            if partner[p] == usize::MAX {
                let x = walk(lower.partner[p], true, &mut seen);
                partner[p] = x;
                partner[x] = p;
            }
        }
        for q in n..2 * n {
            if partner[q] == usize::MAX {
                let x = walk(upper.partner[q], false, &mut seen);
                partner[q] = x;
                partner[x] = q;
            }
        }
        let mut loops = 0;
        for j in 0..n {
            if seen[j] {
                continue;
            }
            loops += 1;
            let mut x = j;
            loop {
                seen[x] = true;
                let y = upper.partner[x];
                seen[y] = true;
                x = lower.partner[n + y] - n;
                if x == j {
                    break;
                }
            }
        }
        Ok((loops, WBDiagram { bottom: lower.bottom.clone(), top: upper.top.clone(), partner }))
    }

    /// A word of generators, bottom first, whose product is this diagram
    /// with no closed loops and no strand crossing itself: bottom crossings
    /// gathering the bottom arcs to the left, one cup-cap per arc, then top
    /// crossings. Each item is the step and the object it acts on.
    pub fn word(&self) -> Vec<(Step, OrSeq)> {
        let n = self.len();
        let barcs = self.bottom_arcs();
        let tarcs = self.top_arcs();
        let thr = self.through();
        let h = barcs.len();
        let mut out = Vec::new();
        let mut obj = self.bottom.clone();

        // bottom crossings: bring bottom point src[j] to position j
        let mut src: Vec<usize> = Vec::with_capacity(n);
        for &(p, q) in &barcs {
            src.push(p);
            src.push(q);
        }
        src.extend(thr.iter().map(|&(p, _)| p));
        let mut cur: Vec<usize> = (0..n).collect();
        for j in 0..n {
            let x = cur.iter().position(|&l| l == src[j]).unwrap();
            for y in (j..x).rev() {
                let st = Step::crossing(&obj, y);
                out.push((st, obj.clone()));
                obj = st.target(&obj).unwrap();
                cur.swap(y, y + 1);
            }
        }
        // cup-caps
        for (k, &(q, q2)) in tarcs.iter().enumerate() {
            let want = (self.top.get(q), self.top.get(q2));
            let kind = if (obj.get(2 * k), obj.get(2 * k + 1)) == want { GenKind::E } else { GenKind::EHat };
            let st = Step::new(kind, 2 * k);
            out.push((st, obj.clone()));
            obj = st.target(&obj).unwrap();
        }
        // top crossings: position j carries top label dst[j]; sort
        let mut dst: Vec<usize> = Vec::with_capacity(n);
        for &(q, q2) in &tarcs {
            dst.push(q);
            dst.push(q2);
        }
        dst.extend(thr.iter().map(|&(_, q)| q));
        debug_assert_eq!(dst.len(), n);
        debug_assert_eq!(2 * h, 2 * tarcs.len());
        for j in 0..n {
            let x = dst.iter().position(|&l| l == j).unwrap();
            for y in (j..x).rev() {
                let st = Step::crossing(&obj, y);
                out.push((st, obj.clone()));
                obj = st.target(&obj).unwrap();
                dst.swap(y, y + 1);
            }
        }
        debug_assert_eq!(obj, self.top);
        out
    }

    /// Product of a word of two-strand steps starting at `a`.
    pub fn from_word(a: &OrSeq, steps: &[Step]) -> Result<(usize, WBDiagram)> {
        let mut d = WBDiagram::identity(a);
        let mut loops = 0;
        for &st in steps {
            let g = WBDiagram::of_step(d.top(), st)?;
            let (l, e) = WBDiagram::compose(&g, &d)?;
            loops += l;
            d = e;
        }
        Ok((loops, d))
    }

    /// JSON arc list with 1-based labels `"b3"`, `"t1"`.
    pub fn arcs_json(&self) -> Value {
        let n = self.len();
        let label = |x: usize| if x < n { format!("b{}", x + 1) } else { format!("t{}", x - n + 1) };
        let arcs: Vec<Value> =
            (0..2 * n).filter(|&x| self.partner[x] > x).map(|x| json!([label(x), label(self.partner[x])])).collect();
        Value::Array(arcs)
    }

    pub fn from_arcs_json(bottom: OrSeq, top: OrSeq, arcs: &Value) -> Result<Self> {
        let n = bottom.len();
        let mut partner = vec![usize::MAX; 2 * n];
        let parse_label = |v: &Value| -> Result<usize> {
            let s = v.as_str().ok_or_else(|| Error::Parse("arc endpoints are strings".into()))?;
            let (side, k) = s.split_at(1.min(s.len()));
            let k: usize = k.parse().map_err(|_| Error::Parse(format!("bad endpoint {s:?}")))?;
            if k == 0 || k > n {
                return Err(Error::Parse(format!("endpoint {s:?} out of range")));
            }
            match side {
                "b" => Ok(k - 1),
                "t" => Ok(n + k - 1),
                _ => Err(Error::Parse(format!("bad endpoint {s:?}"))),
            }
        };
        let arr = arcs.as_array().ok_or_else(|| Error::Parse("arcs must be an array".into()))?;
        for a in arr {
            let pair = a.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse("each arc is a pair".into()))?;
            let (x, y) = (parse_label(&pair[0])?, parse_label(&pair[1])?);
            if partner[x] != usize::MAX || partner[y] != usize::MAX {
                return Err(Error::BadDiagram("endpoint used twice".into()));
            }
            partner[x] = y;
            partner[y] = x;
        }
        if partner.contains(&usize::MAX) {
            return Err(Error::BadDiagram("some endpoint is not matched".into()));
        }
        WBDiagram::new(bottom, top, partner)
    }
}

/// All diagrams `a -> b`; there are `(r+t)!` of them.
pub fn enumerate_diagrams(a: &OrSeq, b: &OrSeq) -> Result<Vec<WBDiagram>> {
    if a.r() != b.r() || a.t() != b.t() {
        return Err(Error::Boundary(format!("{a} and {b} have different (r,t)")));
    }
    let n = a.len();
    let orient = |x: usize| if x < n { a.get(x) } else { b.get(x - n) };
    let ok = |x: usize, y: usize| {
        let through = (x < n) != (y < n);
        (orient(x) == orient(y)) == through
    };
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; 2 * n];
    fn rec(partner: &mut Vec<usize>, ok: &dyn Fn(usize, usize) -> bool, out: &mut Vec<Vec<usize>>) {
        let Some(x) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(partner.clone());
            return;
        };
        for y in x + 1..partner.len() {
            if partner[y] == usize::MAX && ok(x, y) {
                partner[x] = y;
                partner[y] = x;
                rec(partner, ok, out);
                partner[x] = usize::MAX;
                partner[y] = usize::MAX;
            }
        }
    }
    let mut raw = Vec::new();
    rec(&mut partner, &ok, &mut raw);
    for p in raw {
        out.push(WBDiagram::new(a.clone(), b.clone(), p)?);
    }
    out.sort();
    Ok(out)
}

/// A dotted diagram `y^eta D y^gamma`: `gamma` counts dots at the bottom
/// endpoints, `eta` at the top endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub diagram: WBDiagram,
    pub gamma: Vec<u32>,
    pub eta: Vec<u32>,
}

impl Monomial {
    pub fn undotted(d: WBDiagram) -> Self {
        let n = d.len();
        Monomial { diagram: d, gamma: vec![0; n], eta: vec![0; n] }
    }

    pub fn identity(a: &OrSeq) -> Self {
        Self::undotted(WBDiagram::identity(a))
    }

    pub fn degree(&self) -> u32 {
        self.gamma.iter().sum::<u32>() + self.eta.iter().sum::<u32>()
    }

    pub fn dots(&self, e: End) -> u32 {
        match e {
            End::Bottom(p) => self.gamma[p],
            End::Top(q) => self.eta[q],
        }
    }

    pub fn dots_mut(&mut self, e: End) -> &mut u32 {
        match e {
            End::Bottom(p) => &mut self.gamma[p],
            End::Top(q) => &mut self.eta[q],
        }
    }

    /// Dots only at normal endpoints.
    pub fn is_regular(&self) -> bool {
        let n = self.diagram.len();
        (0..n).all(|p| self.gamma[p] == 0 || self.diagram.normal_end(End::Bottom(p)) == End::Bottom(p))
            && (0..n).all(|q| self.eta[q] == 0 || self.diagram.normal_end(End::Top(q)) == End::Top(q))
    }

    /// Regular with at most one dot per strand.
    pub fn is_cyclotomic_regular(&self) -> bool {
        self.is_regular() && self.gamma.iter().chain(&self.eta).all(|&x| x <= 1)
    }

    /// All regular monomials on `d` with at most `max` dots per strand.
    pub fn regular_on(d: &WBDiagram, max: u32) -> Vec<Monomial> {
        let ends = d.normal_ends();
        let mut out = Vec::new();
        let total = (max as usize + 1).pow(ends.len() as u32);
        for mut code in 0..total {
            let mut m = Monomial::undotted(d.clone());
            for &e in &ends {
                *m.dots_mut(e) = (code % (max as usize + 1)) as u32;
                code /= max as usize + 1;
            }
            out.push(m);
        }
        out.sort();
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "bottom": self.diagram.bottom().to_json(),
            "top": self.diagram.top().to_json(),
            "arcs": self.diagram.arcs_json(),
            "gamma": self.gamma,
            "eta": self.eta,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
        let bottom = OrSeq::from_json(field("bottom")?)?;
        let top = OrSeq::from_json(field("top")?)?;
        let d = WBDiagram::from_arcs_json(bottom, top, field("arcs")?)?;
        let n = d.len();
        let dots = |k: &str| -> Result<Vec<u32>> {
            match v.get(k) {
                None => Ok(vec![0; n]),
                Some(x) => {
                    let arr: Vec<u32> = serde_json::from_value(x.clone()).map_err(|e| Error::Parse(format!("{k}: {e}")))?;
                    if arr.len() != n {
                        return Err(Error::Parse(format!("{k} must have length {n}")));
                    }
                    Ok(arr)
                }
            }
        };
        Ok(Monomial { gamma: dots("gamma")?, eta: dots("eta")?, diagram: d })
    }
}

/// Finite rational combination of monomials sharing bottom and top objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedElement {
    pub bottom: OrSeq,
    pub top: OrSeq,
    terms: BTreeMap<Monomial, Rational>,
}

impl DecoratedElement {
    pub fn zero(bottom: OrSeq, top: OrSeq) -> Self {
        DecoratedElement { bottom, top, terms: BTreeMap::new() }
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let mut x = Self::zero(m.diagram.bottom().clone(), m.diagram.top().clone());
        x.add_term(m, c);
        x
    }

    pub fn identity(a: &OrSeq) -> Self {
        Self::from_monomial(Monomial::identity(a), Rational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
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

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.diagram.bottom(), &self.bottom);
        debug_assert_eq!(m.diagram.top(), &self.top);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &DecoratedElement, c: &Rational) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut x = Self::zero(self.bottom.clone(), self.top.clone());
        x.add_scaled(self, c);
        x
    }

    pub fn add(&self, o: &DecoratedElement) -> Result<Self> {
        self.same_boundary(o)?;
        let mut x = self.clone();
        x.add_scaled(o, &Rational::one());
        Ok(x)
    }

    pub fn sub(&self, o: &DecoratedElement) -> Result<Self> {
        self.same_boundary(o)?;
        let mut x = self.clone();
        x.add_scaled(o, &-Rational::one());
        Ok(x)
    }

    fn same_boundary(&self, o: &DecoratedElement) -> Result<()> {
        if self.bottom != o.bottom || self.top != o.top {
            return Err(Error::Boundary(format!("{}->{} vs {}->{}", self.bottom, self.top, o.bottom, o.top)));
        }
        Ok(())
    }

    /// Filtration degree: the largest total dot count of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_regular(&self) -> bool {
        self.terms.keys().all(|m| m.is_regular())
    }

    /// A polynomial in the dots, placed on the identity of `a`.
    pub fn from_poly(a: &OrSeq, p: &crate::arith::MultiPoly) -> Result<Self> {
        if p.nvars() != a.len() {
            return Err(Error::VarCount(p.nvars(), a.len()));
        }
        let mut x = Self::zero(a.clone(), a.clone());
        for (e, c) in p.terms() {
            let mut m = Monomial::identity(a);
            m.gamma = e.clone();
            x.add_term(m, c.clone());
        }
        Ok(x)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                json!({
                    "coeff": rational::to_text(c),
                    "arcs": m.diagram.arcs_json(),
                    "gamma": m.gamma,
                    "eta": m.eta,
                })
            })
            .collect();
        json!({"bottom": self.bottom.to_json(), "top": self.top.to_json(), "terms": terms})
    }

    /// Accepts the element form above, or a single monomial (coefficient 1).
    pub fn from_json(v: &Value) -> Result<Self> {
        let Some(terms) = v.get("terms") else {
            return Ok(Self::from_monomial(Monomial::from_json(v)?, Rational::one()));
        };
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
        let bottom = OrSeq::from_json(field("bottom")?)?;
        let top = OrSeq::from_json(field("top")?)?;
        let mut x = Self::zero(bottom.clone(), top.clone());
        let arr = terms.as_array().ok_or_else(|| Error::Parse("terms must be an array".into()))?;
        for t in arr {
            let mut mv = t.clone();
            mv["bottom"] = bottom.to_json();
            mv["top"] = top.to_json();
            let m = Monomial::from_json(&mv)?;
            let c = match t.get("coeff") {
                None => Rational::one(),
                Some(Value::String(s)) => rational::parse(s)?,
                Some(Value::Number(k)) => {
                    rational::int(k.as_i64().ok_or_else(|| Error::Parse("coefficients must be integers or strings".into()))?)
                }
                Some(_) => return Err(Error::Parse("bad coefficient".into())),
            };
            x.add_term(m, c);
        }
        Ok(x)
    }
}

/// A single generator as an element; `i` is 1-based. Crossings and cup-caps
/// act on strands `i`, `i+1`; `y` puts one dot on strand `i`.
pub fn generator(kind: GenKind, a: &OrSeq, i: usize) -> Result<DecoratedElement> {
    if i == 0 {
        return Err(Error::NoGenerator("indices start at 1".into()));
    }
    let st = Step::new(kind, i - 1);
    st.target(a)?;
    if kind == GenKind::Y {
        let mut m = Monomial::identity(a);
        m.gamma[i - 1] = 1;
        return Ok(DecoratedElement::from_monomial(m, Rational::one()));
    }
    Ok(DecoratedElement::from_monomial(Monomial::undotted(WBDiagram::of_step(a, st)?), Rational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> OrSeq {
        OrSeq::parse(s).unwrap()
    }

    #[test]
    fn generators_and_targets() {
        let a = seq("1,-1");
        let e = generator(GenKind::E, &a, 1).unwrap();
        assert_eq!(e.top, a);
        let sh = generator(GenKind::SHat, &a, 1).unwrap();
        assert_eq!(sh.top, seq("-1,1"));
        assert!(matches!(generator(GenKind::S, &a, 1), Err(Error::NoGenerator(_))));
        assert!(generator(GenKind::Y, &a, 3).is_err());
    }

    #[test]
    fn loops_from_cupcaps() {
        let a = seq("1,-1");
        let e = WBDiagram::of_step(&a, Step::new(GenKind::E, 0)).unwrap();
        assert_eq!(WBDiagram::compose(&e, &e).unwrap(), (1, e.clone()));
        let eh = WBDiagram::of_step(&a, Step::new(GenKind::EHat, 0)).unwrap();
        let eh2 = WBDiagram::of_step(&seq("-1,1"), Step::new(GenKind::EHat, 0)).unwrap();
        assert_eq!(WBDiagram::compose(&eh2, &eh).unwrap(), (1, e));
        let id = WBDiagram::identity(&seq("-1,1"));
        assert_eq!(WBDiagram::compose(&id, &eh).unwrap(), (0, eh.clone()));
        assert!(WBDiagram::compose(&eh, &eh).is_err());
    }

    #[test]
    fn diagram_counts() {
        assert_eq!(enumerate_diagrams(&seq("1"), &seq("1")).unwrap().len(), 1);
        assert_eq!(enumerate_diagrams(&seq("1,-1"), &seq("1,-1")).unwrap().len(), 2);
        assert_eq!(enumerate_diagrams(&seq("1,1,-1"), &seq("1,1,-1")).unwrap().len(), 6);
        assert!(enumerate_diagrams(&seq("1,1"), &seq("1,-1")).is_err());
    }

    #[test]
    fn regularity_examples() {
        let a = seq("1,-1");
        let mut m = Monomial::identity(&a);
        m.gamma = vec![3, 1];
        assert!(m.is_regular());
        let e = WBDiagram::of_step(&a, Step::new(GenKind::E, 0)).unwrap();
        let mut m = Monomial::undotted(e.clone());
        m.eta = vec![0, 1];
        assert!(!m.is_regular());
        let mut m = Monomial::undotted(e);
        m.eta = vec![1, 0];
        assert!(m.is_regular());
        m.gamma = vec![1, 0];
        assert!(!m.is_regular());
    }

    #[test]
    fn json_round_trip() {
        let a = seq("1,-1,1");
        for d in enumerate_diagrams(&a, &seq("-1,1,1")).unwrap() {
            for m in Monomial::regular_on(&d, 1) {
                assert_eq!(Monomial::from_json(&m.to_json()).unwrap(), m);
            }
        }
    }
}
