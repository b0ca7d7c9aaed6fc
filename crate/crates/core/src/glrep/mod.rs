//! Exact action of the category on `M ⊗ V^{⊗A}` and the checks built on it.

mod module;

pub use module::{GlContext, ModuleKind, ModuleVector, Tensor};

use crate::affine::monomial_word;
use crate::arith::linalg::{self, Matrix, SparseEchelon};
use crate::arith::rational::{self, Rational};
use crate::cyclotomic::{self, CycloParams};
use crate::diagram::{DecoratedElement, GenKind, OrSeq, Step};
use crate::error::{Error, Result};
use crate::relations;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Apply a decorated element to a vector, term by term along each
/// monomial's word.
pub fn represent(ctx: &GlContext, x: &DecoratedElement, v: &ModuleVector) -> Result<ModuleVector> {
    if x.bottom != v.obj {
        return Err(Error::Boundary(format!("element starts at {}, vector lives on {}", x.bottom, v.obj)));
    }
    let mut out = ModuleVector::zero(x.top.clone());
    for (m, c) in x.terms() {
        out.add_scaled(&ctx.apply_word(&monomial_word(m), v)?, c);
    }
    Ok(out)
}

/// `omega_k(M)`: the scalar of `e_1 y_1^k e_1` on `z ⊗ v_1 ⊗ v*_1`.
pub fn extract_omega(ctx: &GlContext, k: usize) -> Result<Rational> {
    let a = OrSeq::parse("1,-1")?;
    let t = ctx.highest_tensor(&[1, 1]);
    let mut v = ModuleVector::basis(a, t.clone());
    let e = Step::new(GenKind::E, 0);
    v = ctx.apply_step(e, &v)?;
    for _ in 0..k {
        v = ctx.apply_step(Step::new(GenKind::Y, 0), &v)?;
    }
    v = ctx.apply_step(e, &v)?;
    Ok(v.coeff(&t))
}

/// Outcome of one family of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub instances: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub type Report = BTreeMap<String, CheckReport>;

pub fn report_json(r: &Report) -> Value {
    let mut obj = serde_json::Map::new();
    for (k, c) in r {
        obj.insert(k.clone(), json!({"instances": c.instances, "failures": c.failures}));
    }
    Value::Object(obj)
}

pub fn report_passed(r: &Report) -> bool {
    r.values().all(CheckReport::passed)
}

fn tensor_label(t: &Tensor) -> String {
    let s: Vec<String> = t.slots.iter().map(|b| (b + 1).to_string()).collect();
    if t.mu.iter().all(|&d| d == 0) {
        format!("z⊗[{}]", s.join(","))
    } else {
        format!("x^{:?}z⊗[{}]", t.mu, s.join(","))
    }
}

fn eval_side(ctx: &GlContext, side: &[(Rational, Vec<Step>)], target: &OrSeq, v: &ModuleVector) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero(target.clone());
    for (c, w) in side {
        out.add_scaled(&ctx.apply_word(w, v)?, c);
    }
    Ok(out)
}

/// Every defining relation instance on `a`, evaluated on all test tensors
/// whose Verma part has degree `<= maxdeg`.
pub fn verify_relations(ctx: &GlContext, a: &OrSeq, kmax: usize, maxdeg: u32) -> Result<Report> {
    let insts = relations::all_instances(a, &ctx.omega_spec(), kmax)?;
    let tensors = ctx.test_tensors(a, maxdeg);
    let results: Result<Vec<(String, String)>> = insts
        .par_iter()
        .map(|inst| {
            for t in &tensors {
                let v = ModuleVector::basis(a.clone(), t.clone());
                let l = eval_side(ctx, &inst.lhs, &inst.target, &v)?;
                let r = eval_side(ctx, &inst.rhs, &inst.target, &v)?;
                if l != r {
                    return Ok((inst.id.clone(), format!("{} on {}", inst.describe(), tensor_label(t))));
                }
            }
            Ok((inst.id.clone(), String::new()))
        })
        .collect();
    let mut rep = Report::new();
    for (id, fail) in results? {
        let e = rep.entry(id).or_default();
        e.instances += 1;
        if !fail.is_empty() {
            e.failures.push(fail);
        }
    }
    Ok(rep)
}

type Op<'a> = Box<dyn Fn(&ModuleVector) -> Result<ModuleVector> + Sync + 'a>;

fn check_equal(ctx: &GlContext, obj: &OrSeq, maxdeg: u32, lhs: &Op, rhs: &Op, name: &str, rep: &mut CheckReport) -> Result<()> {
    rep.instances += 1;
    for t in ctx.test_tensors(obj, maxdeg) {
        let v = ModuleVector::basis(obj.clone(), t.clone());
        if lhs(&v)? != rhs(&v)? {
            rep.failures.push(format!("{name} on {obj} at {}", tensor_label(&t)));
            return Ok(());
        }
    }
    Ok(())
}

fn add<'a>(f: Op<'a>, g: Op<'a>) -> Op<'a> {
    Box::new(move |v| {
        let mut x = f(v)?;
        x.add_scaled(&g(v)?, &Rational::one());
        Ok(x)
    })
}

fn then<'a>(first: Op<'a>, second: Op<'a>) -> Op<'a> {
    Box::new(move |v| second(&first(v)?))
}

fn neg<'a>(f: Op<'a>) -> Op<'a> {
    Box::new(move |v| Ok(f(v)?.scale(&-Rational::one())))
}

fn zero_op<'a>() -> Op<'a> {
    Box::new(|v| Ok(ModuleVector::zero(v.obj.clone())))
}

/// The identities behind the functor: crossing equals Casimir, cup-cap
/// equals minus Casimir, Casimir commutators, and the dot relations, on
/// every object of length `<= len` (slots only; the module factor is
/// spectator unless a dot is involved).
pub fn verify_section8(ctx: &GlContext, len: usize, maxdeg: u32) -> Result<Report> {
    let mut rep = Report::new();
    let omega = |k: usize, l: usize| -> Op { Box::new(move |v| Ok(ctx.apply_omega(k, l, v))) };
    let step = |kind: GenKind, p: usize| -> Op { Box::new(move |v| ctx.apply_step(Step::new(kind, p), v)) };
    let y = |i: usize| -> Op { Box::new(move |v| ctx.apply_y(i, v)) };
    for n in 1..=len {
        for a in (0..=n).flat_map(|r| OrSeq::all(r, n - r)) {
            for p in 0..n.saturating_sub(1) {
                let same = a.get(p) == a.get(p + 1);
                let key = if same { "crossing_equals_casimir" } else { "cupcap_equals_minus_casimir" };
                let lhs = if same { step(GenKind::S, p) } else { step(GenKind::E, p) };
                let rhs = if same { omega(p + 1, p + 2) } else { neg(omega(p + 1, p + 2)) };
                check_equal(ctx, &a, maxdeg, &lhs, &rhs, key, rep.entry(key.into()).or_default())?;
                let cross = Step::crossing(&a, p).kind;
                let e_kind = if same { None } else { Some(GenKind::E) };
                for j in 1..=n {
                    if j == p + 1 || j == p + 2 {
                        continue;
                    }
                    let key = "crossing_commutes_far_dot";
                    check_equal(ctx, &a, maxdeg, &then(y(j), step(cross, p)), &then(step(cross, p), y(j)), key, rep.entry(key.into()).or_default())?;
                    if let Some(ek) = e_kind {
                        let key = "cupcap_commutes_far_dot";
                        check_equal(ctx, &a, maxdeg, &then(y(j), step(ek, p)), &then(step(ek, p), y(j)), key, rep.entry(key.into()).or_default())?;
                    }
                }
                if !same {
                    let key = "cupcap_kills_dot_sum";
                    let sum = || add(y(p + 1), y(p + 2));
                    check_equal(ctx, &a, maxdeg, &then(sum(), step(GenKind::E, p)), &zero_op(), key, rep.entry(key.into()).or_default())?;
                    check_equal(ctx, &a, maxdeg, &then(step(GenKind::E, p), sum()), &zero_op(), key, rep.entry(key.into()).or_default())?;
                    if p + 2 < n {
                        let key = "casimir_pair_kills_cupcap";
                        let pair = || add(omega(p + 1, p + 3), omega(p + 2, p + 3));
                        check_equal(ctx, &a, maxdeg, &then(step(GenKind::E, p), pair()), &zero_op(), key, rep.entry(key.into()).or_default())?;
                        check_equal(ctx, &a, maxdeg, &then(pair(), step(GenKind::E, p)), &zero_op(), key, rep.entry(key.into()).or_default())?;
                    }
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    let key = "dots_commute";
                    check_equal(ctx, &a, maxdeg, &then(y(i), y(j)), &then(y(j), y(i)), key, rep.entry(key.into()).or_default())?;
                }
            }
            if n >= 3 {
                for k in 0..=n - 3 {
                    let key = "casimir_commutator";
                    let (p, q, r) = (k + 1, k + 2, k + 3);
                    let sum = || add(omega(p, q), omega(q, r));
                    check_equal(ctx, &a, maxdeg, &then(omega(p, r), sum()), &then(sum(), omega(p, r)), key, rep.entry(key.into()).or_default())?;
                }
            }
            if n >= 4 {
                let key = "far_casimirs_commute";
                check_equal(ctx, &a, maxdeg, &then(omega(1, 2), omega(3, 4)), &then(omega(3, 4), omega(1, 2)), key, rep.entry(key.into()).or_default())?;
            }
        }
    }
    Ok(rep)
}

/// Monic minimal polynomial (coefficients from constant term up) of `y_1`
/// on the span of `x^mu z ⊗ v_b`, `deg mu <= maxdeg`, for `r + t = 1`.
pub fn y1_minimal_poly(ctx: &GlContext, orientation: i8, maxdeg: u32) -> Result<Vec<Rational>> {
    let a = OrSeq::new(vec![orientation])?;
    let starts: Vec<ModuleVector> = ctx.test_tensors(&a, maxdeg).into_iter().map(|t| ModuleVector::basis(a.clone(), t)).collect();
    let mut powers: Vec<Vec<ModuleVector>> = vec![starts];
    for d in 1..=8 {
        let next: Result<Vec<ModuleVector>> = powers[d - 1].iter().map(|v| ctx.apply_y(1, v)).collect();
        powers.push(next?);
        // y^d v + sum_{j<d} c_j y^j v = 0 for every start vector v.
        let mut keys: BTreeMap<(usize, Tensor), usize> = BTreeMap::new();
        for (vi, _) in powers[0].iter().enumerate() {
            for p in powers.iter() {
                for (t, _) in p[vi].terms() {
                    let l = keys.len();
                    keys.entry((vi, t.clone())).or_insert(l);
                }
            }
        }
        let mut mat: Matrix = vec![vec![Rational::zero(); d]; keys.len()];
        let mut rhs = vec![Rational::zero(); keys.len()];
        for vi in 0..powers[0].len() {
            for (j, p) in powers.iter().enumerate() {
                for (t, c) in p[vi].terms() {
                    let row = keys[&(vi, t.clone())];
                    if j < d {
                        mat[row][j] = c.clone();
                    } else {
                        rhs[row] = -c.clone();
                    }
                }
            }
        }
        if let Some(mut c) = linalg::solve(&mat, &rhs) {
            c.push(Rational::one());
            return Ok(c);
        }
    }
    Err(Error::Precondition("no minimal polynomial of degree <= 8".into()))
}

/// Rank of the images of the cyclotomic basis monomials acting on every
/// `z ⊗ v_b`.
pub fn faithfulness_rank(a: &OrSeq, p: &CycloParams) -> Result<usize> {
    let ctx = GlContext::parabolic(p.m as usize, p.n as usize, p.delta)?;
    let tensors = ctx.test_tensors(a, 0);
    let basis = cyclotomic::basis(a);
    let rows: Result<Vec<BTreeMap<(usize, Tensor), Rational>>> = basis
        .par_iter()
        .map(|m| {
            let x = DecoratedElement::from_monomial(m.clone(), Rational::one());
            let mut row = BTreeMap::new();
            for (i, t) in tensors.iter().enumerate() {
                let w = represent(&ctx, &x, &ModuleVector::basis(a.clone(), t.clone()))?;
                for (t2, c) in w.terms() {
                    row.insert((i, t2.clone()), c.clone());
                }
            }
            Ok(row)
        })
        .collect();
    let mut ech = SparseEchelon::new();
    for r in rows? {
        ech.insert(r);
    }
    Ok(ech.rank())
}

/// The class of `x^mu z ⊗ w` in the coinvariants `(M ⊗ V^A) / u^-(M ⊗ V^A)`,
/// identified with `z ⊗ V^A`.
fn coinvariant_class(ctx: &GlContext, v: &ModuleVector) -> Result<BTreeMap<Vec<u16>, Rational>> {
    let mut out: BTreeMap<Vec<u16>, Rational> = BTreeMap::new();
    let mut work = v.clone();
    loop {
        let Some((t, c)) = work.terms().next().map(|(t, c)| (t.clone(), c.clone())) else { break };
        work.add_term(t.clone(), -c.clone());
        match t.mu.iter().position(|&d| d > 0) {
            None => {
                let e = out.entry(t.slots).or_insert_with(Rational::zero);
                *e += c;
            }
            Some(s) => {
                // x_ij u ≡ -(E_ij acting on the tensor factors) u
                let (i, j) = ctx.symbol_pair(s);
                let mut rest = t.clone();
                rest.mu[s] -= 1;
                let base = ModuleVector::basis(v.obj.clone(), Tensor { mu: rest.mu.clone(), slots: rest.slots.clone() });
                let mut slots_only = ModuleVector::zero(v.obj.clone());
                let full = ctx.apply_e(i + 1, j + 1, &base)?;
                let module_part = {
                    let z = ModuleVector::basis(OrSeq::new(vec![])?, Tensor { mu: rest.mu.clone(), slots: vec![] });
                    ctx.apply_e(i + 1, j + 1, &z)?
                };
                slots_only.add_scaled(&full, &Rational::one());
                for (tm, cm) in module_part.terms() {
                    slots_only.add_term(Tensor { mu: tm.mu.clone(), slots: rest.slots.clone() }, -cm.clone());
                }
                work.add_scaled(&slots_only, &-c);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Multiset of joint generalized eigenvalue tuples of `(y_1, ..., y_{r+t})`
/// over the composition factors of `M ⊗ V^A`, read off the Levi-singular
/// part of the `u^-`-coinvariants (one vector per factor).
pub fn spectrum(ctx: &GlContext, a: &OrSeq) -> Result<Vec<Vec<Rational>>> {
    let m = match ctx.kind {
        ModuleKind::Parabolic { m, .. } => m,
        ModuleKind::Trivial => 0,
    };
    let tensors = ctx.test_tensors(a, 0);
    let dim = tensors.len();
    let index: BTreeMap<Vec<u16>, usize> = tensors.iter().enumerate().map(|(i, t)| (t.slots.clone(), i)).collect();
    let to_col = |w: &BTreeMap<Vec<u16>, Rational>| -> Vec<Rational> {
        let mut c = vec![Rational::zero(); dim];
        for (s, x) in w {
            c[index[s]] = x.clone();
        }
        c
    };
    // Levi-singular vectors: killed by E_{b,b+1} for b != m.
    let mut rows: Matrix = Vec::new();
    for b in 1..ctx.big_n {
        if b == m {
            continue;
        }
        let mut block = vec![vec![Rational::zero(); dim]; dim];
        for (j, t) in tensors.iter().enumerate() {
            let w = ctx.apply_e(b, b + 1, &ModuleVector::basis(a.clone(), t.clone()))?;
            for (t2, c) in w.terms() {
                block[index[&t2.slots]][j] = c.clone();
            }
        }
        rows.extend(block);
    }
    let singular = if rows.is_empty() { linalg::identity(dim) } else { linalg::kernel(&rows, dim) };
    let tensors = &tensors;
    let to_col = &to_col;
    let ys: Vec<ColOp> = (1..=a.len())
        .map(|i| {
            let f: ColOp = Box::new(move |col: &[Rational]| {
                let mut v = ModuleVector::zero(a.clone());
                for (j, c) in col.iter().enumerate() {
                    if !c.is_zero() {
                        v.add_term(tensors[j].clone(), c.clone());
                    }
                }
                Ok(to_col(&coinvariant_class(ctx, &ctx.apply_y(i, &v)?)?))
            });
            f
        })
        .collect();
    let mut out = Vec::new();
    split_joint(&ys, 0, singular, Vec::new(), &mut out)?;
    out.sort();
    Ok(out)
}

type ColOp<'a> = Box<dyn Fn(&[Rational]) -> Result<Vec<Rational>> + 'a>;

fn split_joint(ys: &[ColOp], i: usize, space: Vec<Vec<Rational>>, tuple: Vec<Rational>, out: &mut Vec<Vec<Rational>>) -> Result<()> {
    if space.is_empty() {
        return Ok(());
    }
    if i == ys.len() {
        for _ in 0..space.len() {
            out.push(tuple.clone());
        }
        return Ok(());
    }
    let k = space.len();
    let dim = space[0].len();
    // Columns of `basis` span the space; express y_i on it in coordinates.
    let basis: Matrix = (0..dim).map(|r| space.iter().map(|v| v[r].clone()).collect()).collect();
    let mut mat: Matrix = vec![vec![Rational::zero(); k]; k];
    for (j, v) in space.iter().enumerate() {
        let img = ys[i](v)?;
        let coords = linalg::solve(&basis, &img).ok_or_else(|| Error::Precondition("dot does not preserve the subspace".into()))?;
        for r in 0..k {
            mat[r][j] = coords[r].clone();
        }
    }
    let (roots, leftover) = rational::rational_roots(&linalg::charpoly(&mat));
    if leftover > 0 {
        return Err(Error::NonRationalSpectrum(format!("{leftover} eigenvalues of y_{} are irrational", i + 1)));
    }
    for (lam, mult) in roots {
        let mut shifted = mat.clone();
        for (r, row) in shifted.iter_mut().enumerate() {
            row[r] -= &lam;
        }
        let mut pw = linalg::identity(k);
        for _ in 0..mult {
            pw = linalg::mat_mul(&pw, &shifted);
        }
        let sub: Vec<Vec<Rational>> = linalg::kernel(&pw, k)
            .into_iter()
            .map(|c| (0..dim).map(|r| (0..k).map(|j| &basis[r][j] * &c[j]).sum()).collect())
            .collect();
        let mut t = tuple.clone();
        t.push(lam);
        split_joint(ys, i + 1, sub, t, out)?;
    }
    Ok(())
}
