//! The defining relations of the category, instantiated on a concrete
//! object. Both the rewriting engine and the representation check these
//! same instances.
//!
//! A dotted crossing is resolved by orientation. A dotted cup-cap may be
//! either the plain or the twisted one; every choice for which both sides
//! exist with the same target is an instance.

use crate::affine::OmegaSpec;
use crate::arith::rational::{self, Rational};
use crate::diagram::{GenKind, OrSeq, Step};
use crate::error::{Error, Result};
use num_traits::One;
use std::collections::BTreeSet;

/// Relation identifiers, named by what they say.
pub const RELATION_IDS: &[&str] = &[
    "crossing_squared",
    "far_crossings_commute",
    "braid",
    "crossing_far_dot",
    "cupcap_squared",
    "bubble",
    "far_cupcap_commute",
    "cupcap_far_dot",
    "dots_commute",
    "twist_absorbed",
    "crossing_cupcap_slide",
    "cupcap_crossing_slide",
    "zigzag",
    "dot_crossing",
    "dot_twisted_crossing",
    "cupcap_kills_dot_sum_below",
    "cupcap_kills_dot_sum_above",
];

#[derive(Clone, Copy, Debug)]
enum Tok {
    Sd(usize),
    Ed(usize),
    S(usize),
    SH(usize),
    E(usize),
    EH(usize),
    Y(usize),
}

type Side = Vec<(Rational, Vec<Tok>)>;

/// Words are in application order: the first step acts first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RelationInstance {
    pub id: String,
    pub source: OrSeq,
    pub target: OrSeq,
    pub lhs: Vec<(Rational, Vec<Step>)>,
    pub rhs: Vec<(Rational, Vec<Step>)>,
}

fn one(w: Vec<Tok>) -> Side {
    vec![(Rational::one(), w)]
}

fn templates(id: &str, n: usize, omega: &OmegaSpec, kmax: usize) -> Result<Vec<(Side, Side)>> {
    use Tok::*;
    let mut out: Vec<(Side, Side)> = Vec::new();
    let m1 = -Rational::one();
    let far = |i: usize, j: usize| i.abs_diff(j) > 1;
    let pairs = 1..n; // i with i+1 <= n
    match id {
        "crossing_squared" => pairs.for_each(|i| out.push((one(vec![Sd(i), Sd(i)]), one(vec![])))),
        "far_crossings_commute" => {
            for i in 1..n {
                for j in 1..n {
                    if far(i, j) {
                        out.push((one(vec![Sd(i), Sd(j)]), one(vec![Sd(j), Sd(i)])));
                    }
                }
            }
        }
        "braid" => {
            for i in 1..n.saturating_sub(1) {
                out.push((one(vec![Sd(i), Sd(i + 1), Sd(i)]), one(vec![Sd(i + 1), Sd(i), Sd(i + 1)])));
            }
        }
        "crossing_far_dot" => {
            for i in 1..n {
                for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                    out.push((one(vec![Sd(i), Y(j)]), one(vec![Y(j), Sd(i)])));
                }
            }
        }
        "cupcap_squared" => {
            for i in 1..n {
                out.push((one(vec![Ed(i), Ed(i)]), vec![(omega.omega(0)?, vec![Ed(i)])]));
            }
        }
        "bubble" => {
            if n >= 2 {
                for k in 0..=kmax {
                    let mut w = vec![E(1)];
                    w.extend(std::iter::repeat_n(Y(1), k));
                    w.push(E(1));
                    out.push((one(w), vec![(omega.omega(k)?, vec![E(1)])]));
                }
            }
        }
        "far_cupcap_commute" => {
            for i in 1..n {
                for j in 1..n {
                    if far(i, j) {
                        out.push((one(vec![Sd(i), Ed(j)]), one(vec![Ed(j), Sd(i)])));
                        out.push((one(vec![Ed(i), Ed(j)]), one(vec![Ed(j), Ed(i)])));
                    }
                }
            }
        }
        "cupcap_far_dot" => {
            for i in 1..n {
                for j in (1..=n).filter(|&j| j != i && j != i + 1) {
                    out.push((one(vec![Ed(i), Y(j)]), one(vec![Y(j), Ed(i)])));
                }
            }
        }
        "dots_commute" => {
            for i in 1..=n {
                for j in 1..=n {
                    if i < j {
                        out.push((one(vec![Y(i), Y(j)]), one(vec![Y(j), Y(i)])));
                    }
                }
            }
        }
        "twist_absorbed" => {
            for i in 1..n {
                out.push((one(vec![SH(i), Ed(i)]), one(vec![Ed(i)])));
                out.push((one(vec![Ed(i), SH(i)]), one(vec![Ed(i)])));
            }
        }
        "crossing_cupcap_slide" => {
            for i in 1..n.saturating_sub(1) {
                out.push((one(vec![Sd(i), Ed(i + 1), Ed(i)]), one(vec![Sd(i + 1), Ed(i)])));
                out.push((one(vec![Ed(i), Ed(i + 1), Sd(i)]), one(vec![Ed(i), Sd(i + 1)])));
            }
        }
        "cupcap_crossing_slide" => {
            for i in 1..n.saturating_sub(1) {
                out.push((one(vec![Ed(i + 1), Ed(i), Sd(i + 1)]), one(vec![Ed(i + 1), Sd(i)])));
                out.push((one(vec![Sd(i + 1), Ed(i), Ed(i + 1)]), one(vec![Sd(i), Ed(i + 1)])));
            }
        }
        "zigzag" => {
            for i in 1..n.saturating_sub(1) {
                out.push((one(vec![Ed(i + 1), Ed(i), Ed(i + 1)]), one(vec![Ed(i + 1)])));
                out.push((one(vec![Ed(i), Ed(i + 1), Ed(i)]), one(vec![Ed(i)])));
            }
        }
        "dot_crossing" => {
            for i in 1..n {
                out.push((vec![(Rational::one(), vec![S(i), Y(i)]), (m1.clone(), vec![Y(i + 1), S(i)])], vec![(m1.clone(), vec![])]));
                out.push((vec![(Rational::one(), vec![S(i), Y(i + 1)]), (m1.clone(), vec![Y(i), S(i)])], one(vec![])));
            }
        }
        "dot_twisted_crossing" => {
            for i in 1..n {
                out.push((vec![(Rational::one(), vec![SH(i), Y(i)]), (m1.clone(), vec![Y(i + 1), SH(i)])], one(vec![EH(i)])));
                out.push((
                    vec![(Rational::one(), vec![SH(i), Y(i + 1)]), (m1.clone(), vec![Y(i), SH(i)])],
                    vec![(m1.clone(), vec![EH(i)])],
                ));
            }
        }
        "cupcap_kills_dot_sum_below" => {
            for i in 1..n {
                out.push((vec![(Rational::one(), vec![Ed(i), Y(i)]), (Rational::one(), vec![Ed(i), Y(i + 1)])], vec![]));
            }
        }
        "cupcap_kills_dot_sum_above" => {
            for i in 1..n {
                out.push((vec![(Rational::one(), vec![Y(i), Ed(i)]), (Rational::one(), vec![Y(i + 1), Ed(i)])], vec![]));
            }
        }
        _ => return Err(Error::Precondition(format!("unknown relation {id:?}"))),
    }
    Ok(out)
}

fn count_choices(side: &Side) -> usize {
    side.iter().flat_map(|(_, w)| w).filter(|t| matches!(t, Tok::Ed(_))).count()
}

/// Resolve a written word (leftmost acts last) on `a`; `bits` picks plain
/// or twisted for each dotted cup-cap in turn.
fn resolve(a: &OrSeq, w: &[Tok], bits: &mut impl Iterator<Item = bool>) -> Option<(Vec<Step>, OrSeq)> {
    let n = a.len();
    let mut obj = a.clone();
    let mut steps = Vec::new();
    for &t in w.iter().rev() {
        let st = match t {
            Tok::Sd(i) => {
                if i + 1 > n {
                    return None;
                }
                Step::crossing(&obj, i - 1)
            }
            Tok::Ed(i) => Step::new(if bits.next().unwrap() { GenKind::EHat } else { GenKind::E }, i - 1),
            Tok::S(i) => Step::new(GenKind::S, i - 1),
            Tok::SH(i) => Step::new(GenKind::SHat, i - 1),
            Tok::E(i) => Step::new(GenKind::E, i - 1),
            Tok::EH(i) => Step::new(GenKind::EHat, i - 1),
            Tok::Y(i) => Step::new(GenKind::Y, i - 1),
        };
        obj = st.target(&obj).ok()?;
        steps.push(st);
    }
    Some((steps, obj))
}

type Resolved = (Vec<(Rational, Vec<Step>)>, Option<OrSeq>);

fn resolve_side(a: &OrSeq, side: &Side, mask: usize) -> Option<Resolved> {
    let mut bits = (0..).map(move |b| mask >> b & 1 == 1);
    let mut target: Option<OrSeq> = None;
    let mut out = Vec::new();
    for (c, w) in side {
        let (steps, t) = resolve(a, w, &mut bits)?;
        if target.as_ref().is_some_and(|x| *x != t) {
            return None;
        }
        target = Some(t);
        out.push((c.clone(), steps));
    }
    Some((out, target))
}

/// Every instance of relation `id` on source object `a`. Bubble instances
/// run `k = 0..=kmax`.
pub fn instances_for(a: &OrSeq, id: &str, omega: &OmegaSpec, kmax: usize) -> Result<Vec<RelationInstance>> {
    let mut set = BTreeSet::new();
    if id == "bubble" && !(a.len() >= 2 && a.get(0) == 1 && a.get(1) == -1) {
        templates(id, 0, omega, kmax)?;
        return Ok(Vec::new());
    }
    for (lhs, rhs) in templates(id, a.len(), omega, kmax)? {
        let (cl, cr) = (count_choices(&lhs), count_choices(&rhs));
        for ml in 0..1usize << cl {
            let Some((l, tl)) = resolve_side(a, &lhs, ml) else { continue };
            for mr in 0..1usize << cr {
                let Some((r, tr)) = resolve_side(a, &rhs, mr) else { continue };
                let target = match (&tl, &tr) {
                    (Some(x), Some(y)) if x != y => continue,
                    (Some(x), _) | (None, Some(x)) => x.clone(),
                    (None, None) => continue,
                };
                set.insert(RelationInstance { id: id.to_string(), source: a.clone(), target, lhs: l.clone(), rhs: r });
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// All instances of all relations on `a`.
pub fn all_instances(a: &OrSeq, omega: &OmegaSpec, kmax: usize) -> Result<Vec<RelationInstance>> {
    let mut out = Vec::new();
    for id in RELATION_IDS {
        out.extend(instances_for(a, id, omega, kmax)?);
    }
    Ok(out)
}

impl RelationInstance {
    pub fn describe(&self) -> String {
        let side = |s: &Vec<(Rational, Vec<Step>)>| {
            if s.is_empty() {
                return "0".to_string();
            }
            s.iter()
                .map(|(c, w)| {
                    let word: Vec<String> = w.iter().rev().map(|st| format!("{:?}{}", st.kind, st.pos + 1)).collect();
                    format!("{}*[{}]", rational::to_text(c), word.join(" "))
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        format!("{} on {}: {} = {}", self.id, self.source, side(&self.lhs), side(&self.rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_counts_on_small_objects() {
        let om = OmegaSpec::Trivial { n: 2 };
        let a = OrSeq::parse("1,-1").unwrap();
        // all four choices of plain or twisted cup-caps have a matching right side
        assert_eq!(instances_for(&a, "cupcap_squared", &om, 0).unwrap().len(), 4);
        assert_eq!(instances_for(&a, "bubble", &om, 3).unwrap().len(), 4);
        assert!(instances_for(&OrSeq::parse("-1,1").unwrap(), "bubble", &om, 3).unwrap().is_empty());
        let b = OrSeq::parse("1,-1,1").unwrap();
        assert!(!instances_for(&b, "zigzag", &om, 0).unwrap().is_empty());
        assert!(instances_for(&b, "nonsense", &om, 0).is_err());
    }
}
