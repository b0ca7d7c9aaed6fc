//! 4-Young diagrams in a strip of width `m + n` and the sequences that
//! index composition factors of `M^p(delta) ⊗ V^{⊗A}`.
//!
//! Columns are numbered `1..=m+n` from the right; columns `1..=m` form the
//! right region. `b_k` is the signed height of column `k`, positive above
//! the horizontal line.

use crate::arith::rational::{self, Rational};
use crate::diagram::OrSeq;
use crate::error::{Error, Result};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourYoung {
    pub m: usize,
    pub n: usize,
    pub delta: i64,
    b: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoxMode {
    AddableAbove,
    RemovableAbove,
    AddableBelow,
    RemovableBelow,
}

impl BoxMode {
    pub const ALL: [BoxMode; 4] = [BoxMode::AddableAbove, BoxMode::RemovableAbove, BoxMode::AddableBelow, BoxMode::RemovableBelow];

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "addable_above" => BoxMode::AddableAbove,
            "removable_above" => BoxMode::RemovableAbove,
            "addable_below" => BoxMode::AddableBelow,
            "removable_below" => BoxMode::RemovableBelow,
            _ => return Err(Error::Parse(format!("unknown box mode {s:?}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            BoxMode::AddableAbove => "addable_above",
            BoxMode::RemovableAbove => "removable_above",
            BoxMode::AddableBelow => "addable_below",
            BoxMode::RemovableBelow => "removable_below",
        }
    }

    /// `+1` for adding, `-1` for removing.
    pub fn eta(self) -> i64 {
        match self {
            BoxMode::AddableAbove | BoxMode::AddableBelow => 1,
            _ => -1,
        }
    }

    /// Change of `b` at the column.
    fn db(self) -> i64 {
        match self {
            BoxMode::AddableAbove | BoxMode::RemovableBelow => 1,
            _ => -1,
        }
    }

    /// Modes allowed for a step of orientation `a`.
    pub fn for_orientation(a: i8) -> [BoxMode; 2] {
        if a == 1 {
            [BoxMode::AddableAbove, BoxMode::RemovableBelow]
        } else {
            [BoxMode::RemovableAbove, BoxMode::AddableBelow]
        }
    }
}

fn violation(m: usize, b: &[i64]) -> Option<String> {
    for k in 1..b.len() {
        if k == m {
            continue;
        }
        if b[k] > b[k - 1] {
            let region = if k < m { "right" } else { "left" };
            return Some(format!("column {} is taller than column {} in the {region} region", k + 1, k));
        }
    }
    None
}

impl FourYoung {
    /// The diagram with `b_k = lambda_k`.
    pub fn from_weight(lambda: &[i64], m: usize, n: usize, delta: i64) -> Result<Self> {
        if lambda.len() != m + n {
            return Err(Error::NotFourYoung(format!("weight has {} entries, strip has {} columns", lambda.len(), m + n)));
        }
        if let Some(v) = violation(m, lambda) {
            return Err(Error::NotFourYoung(v));
        }
        Ok(FourYoung { m, n, delta, b: lambda.to_vec() })
    }

    /// The diagram of the highest weight `-delta (e_1 + ... + e_m)`.
    pub fn initial(m: usize, n: usize, delta: i64) -> Self {
        let mut b = vec![-delta; m];
        b.extend(vec![0; n]);
        FourYoung { m, n, delta, b }
    }

    pub fn weight(&self) -> &[i64] {
        &self.b
    }

    /// Shifted content of the box in column `k` (1-based) at height `h >= 1`
    /// above the line, or depth `h >= 1` below it.
    pub fn content(&self, k: usize, h: i64, above: bool) -> Rational {
        let half = rational::frac((self.m + self.n) as i64, 2);
        let k = k as i64;
        if above {
            rational::int(h - k) + half
        } else {
            rational::int(h + k - 1) - half
        }
    }

    /// Candidate boxes `(column, content)` whose addition or removal gives a
    /// 4-Young diagram.
    pub fn boxes(&self, mode: BoxMode) -> Vec<(usize, Rational)> {
        let mut out = Vec::new();
        for k in 0..self.b.len() {
            let h = self.b[k];
            let (ok, level, above) = match mode {
                BoxMode::AddableAbove => (h >= 0, h + 1, true),
                BoxMode::RemovableAbove => (h > 0, h, true),
                BoxMode::AddableBelow => (h <= 0, 1 - h, false),
                BoxMode::RemovableBelow => (h < 0, -h, false),
            };
            if !ok {
                continue;
            }
            let mut b = self.b.clone();
            b[k] += mode.db();
            if violation(self.m, &b).is_none() {
                out.push((k + 1, self.content(k + 1, level, above)));
            }
        }
        out
    }

    fn changed(&self, k: usize, mode: BoxMode) -> FourYoung {
        let mut y = self.clone();
        y.b[k - 1] += mode.db();
        y
    }

    pub fn to_json(&self) -> Value {
        json!({"b": self.b, "m": self.m, "n": self.n, "delta": self.delta})
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungStep {
    pub mode: BoxMode,
    pub column: usize,
    pub content: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourYoungSeq {
    pub a: OrSeq,
    pub diagrams: Vec<FourYoung>,
    pub steps: Vec<YoungStep>,
}

impl FourYoungSeq {
    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| json!({"action": s.mode.name(), "column": s.column, "content": rational::to_text(&s.content)}))
            .collect();
        json!({"steps": steps, "final": self.diagrams.last().map(FourYoung::to_json)})
    }
}

/// All sequences starting at the highest weight diagram, step `j` adding
/// above or removing below when `a_j = 1` and the reverse when `a_j = -1`.
pub fn enumerate_y(a: &OrSeq, m: usize, n: usize, delta: i64) -> Vec<FourYoungSeq> {
    let start = FourYoungSeq { a: a.clone(), diagrams: vec![FourYoung::initial(m, n, delta)], steps: Vec::new() };
    let mut layer = vec![start];
    for &o in a.as_slice() {
        let mut next = Vec::new();
        for s in &layer {
            let y = s.diagrams.last().unwrap();
            for mode in BoxMode::for_orientation(o) {
                for (k, c) in y.boxes(mode) {
                    let mut t = s.clone();
                    t.diagrams.push(y.changed(k, mode));
                    t.steps.push(YoungStep { mode, column: k, content: c });
                    next.push(t);
                }
            }
        }
        layer = next;
    }
    layer.sort();
    layer
}

/// Generalized eigenvalues `(eta_1 i_1, ..., eta_{r+t} i_{r+t})`.
pub fn eigenvalue_tuple(seq: &FourYoungSeq) -> Vec<Rational> {
    seq.steps.iter().map(|s| rational::int(s.mode.eta()) * &s.content).collect()
}

/// Eigenvalue of a step from the weight before it and the column touched:
/// `lambda_k - k + 1 + (m+n)/2` for `a = 1`, `-lambda_k + k - (m+n)/2`
/// for `a = -1`.
pub fn eigenvalue_from_weight(before: &[i64], column: usize, orientation: i8, m: usize, n: usize) -> Rational {
    let half = rational::frac((m + n) as i64, 2);
    let k = column as i64;
    let l = before[column - 1];
    if orientation == 1 {
        rational::int(l - k + 1) + half
    } else {
        rational::int(-l + k) - half
    }
}

/// Final weights of all sequences, with multiplicity.
pub fn composition_factors(a: &OrSeq, m: usize, n: usize, delta: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = enumerate_y(a, m, n, delta).iter().map(|s| s.diagrams.last().unwrap().b.clone()).collect();
    out.sort();
    out
}

/// Sum over final diagrams of the squared number of sequences reaching it.
pub fn squared_path_count(a: &OrSeq, m: usize, n: usize, delta: i64) -> usize {
    let mut counts = std::collections::BTreeMap::new();
    for w in composition_factors(a, m, n, delta) {
        *counts.entry(w).or_insert(0usize) += 1;
    }
    counts.values().map(|c| c * c).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    #[test]
    fn weights_and_validity() {
        let y = FourYoung::from_weight(&[-2, -2, 0, 0], 2, 2, 2).unwrap();
        assert_eq!(y, FourYoung::initial(2, 2, 2));
        assert!(FourYoung::from_weight(&[0, 0, 0], 2, 1, 0).is_ok());
        assert!(matches!(FourYoung::from_weight(&[1, 2, 0], 2, 1, 0), Err(Error::NotFourYoung(_))));
        assert!(FourYoung::from_weight(&[0, 5, 0], 1, 2, 0).is_ok());
        assert!(FourYoung::from_weight(&[0, 5, 0], 2, 1, 0).is_err());
        assert!(FourYoung::from_weight(&[0, -5, 3], 2, 1, 0).is_ok());
    }

    #[test]
    fn first_boxes() {
        let y = FourYoung::initial(3, 2, 0);
        assert_eq!(y.boxes(BoxMode::AddableAbove), vec![(1, frac(5, 2)), (4, frac(-1, 2))]);
        assert_eq!(y.boxes(BoxMode::AddableBelow), vec![(3, frac(1, 2)), (5, frac(5, 2))]);
        assert!(y.boxes(BoxMode::RemovableBelow).is_empty());
        let y = FourYoung::initial(2, 2, 1);
        assert_eq!(y.boxes(BoxMode::RemovableBelow), vec![(1, int(-1))]);
    }

    #[test]
    fn single_step_factors() {
        let a = OrSeq::parse("1").unwrap();
        assert_eq!(composition_factors(&a, 2, 3, 1), vec![vec![-1, -1, 1, 0, 0], vec![0, -1, 0, 0, 0]]);
        let a = OrSeq::parse("-1").unwrap();
        assert_eq!(composition_factors(&a, 2, 3, 1), vec![vec![-1, -2, 0, 0, 0], vec![-1, -1, 0, 0, -1]]);
    }

    #[test]
    fn counts() {
        let c = |s: &str, m, n| enumerate_y(&OrSeq::parse(s).unwrap(), m, n, 0).len();
        assert_eq!(c("1", 2, 2), 2);
        assert_eq!(c("1,-1", 2, 2), 6);
        assert_eq!(squared_path_count(&OrSeq::parse("1,-1").unwrap(), 2, 2, 0), 8);
    }
}
