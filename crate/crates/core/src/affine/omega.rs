//! The parameter sequence `omega_k`.

use crate::arith::rational::{self, Rational};
use crate::error::{Error, Result};
use serde_json::{json, Value};

/// Where the `omega_k` come from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OmegaSpec {
    /// Explicit values `omega_0, omega_1, ...`; asking past the end is an error.
    List(Vec<Rational>),
    /// Level-two values for the parabolic Verma module with blocks `m`, `n`
    /// and shift `delta`: the two-term recursion with roots `beta_1`, `beta_2`.
    MnDelta { m: i64, n: i64, delta: i64 },
    /// Trivial module of `gl_N`: `omega_k = N (N/2)^k`.
    Trivial { n: i64 },
}

impl OmegaSpec {
    pub fn omega(&self, k: usize) -> Result<Rational> {
        match self {
            OmegaSpec::List(v) => v.get(k).cloned().ok_or(Error::OmegaRange(k)),
            OmegaSpec::Trivial { n } => Ok(rational::int(*n) * rational::pow(&rational::frac(*n, 2), k as u32)),
            OmegaSpec::MnDelta { m, n, delta } => Ok(mn_delta_omegas(*m, *n, *delta, k).pop().unwrap()),
        }
    }

    pub fn omegas(&self, upto: usize) -> Result<Vec<Rational>> {
        (0..=upto).map(|k| self.omega(k)).collect()
    }

    pub fn to_json(&self) -> Value {
        match self {
            OmegaSpec::List(v) => json!({"kind": "list", "values": v.iter().map(rational::to_text).collect::<Vec<_>>()}),
            OmegaSpec::MnDelta { m, n, delta } => json!({"kind": "mn_delta", "m": m, "n": n, "delta": delta}),
            OmegaSpec::Trivial { n } => json!({"kind": "trivial", "N": n}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let int = |k: &str| -> Result<i64> {
            v.get(k).and_then(Value::as_i64).ok_or_else(|| Error::Parse(format!("omega JSON needs integer field {k:?}")))
        };
        match v.get("kind").and_then(Value::as_str) {
            Some("list") => {
                let arr = v.get("values").and_then(Value::as_array).ok_or_else(|| Error::Parse("list needs \"values\"".into()))?;
                let vals: Result<Vec<Rational>> = arr
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => rational::parse(s),
                        Value::Number(k) => k.as_i64().map(rational::int).ok_or_else(|| Error::Parse("bad number".into())),
                        _ => Err(Error::Parse("omega values are strings or integers".into())),
                    })
                    .collect();
                Ok(OmegaSpec::List(vals?))
            }
            Some("mn_delta") => Ok(OmegaSpec::MnDelta { m: int("m")?, n: int("n")?, delta: int("delta")? }),
            Some("trivial") => Ok(OmegaSpec::Trivial { n: int("N")? }),
            _ => Err(Error::Parse("omega JSON kind must be list, mn_delta or trivial".into())),
        }
    }
}

/// `omega_0..=omega_k` for the parabolic data: `omega_0 = m+n`,
/// `omega_1 = -delta m + (m+n)^2/2`, then
/// `omega_k = (b1+b2) omega_{k-1} - b1 b2 omega_{k-2}`.
pub fn mn_delta_omegas(m: i64, n: i64, delta: i64, k: usize) -> Vec<Rational> {
    let (b1, b2) = (rational::frac(-2 * delta + m + n, 2), rational::frac(n - m, 2));
    let sum = &b1 + &b2;
    let prod = &b1 * &b2;
    let mut out = vec![rational::int(m + n), rational::int(-delta * m) + rational::frac((m + n) * (m + n), 2)];
    while out.len() <= k {
        let l = out.len();
        let next = &sum * &out[l - 1] - &prod * &out[l - 2];
        out.push(next);
    }
    out.truncate(k + 1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    #[test]
    fn recursion_values() {
        assert_eq!(mn_delta_omegas(1, 1, 0, 6), vec![int(2); 7]);
        assert_eq!(mn_delta_omegas(2, 2, 0, 2), vec![int(4), int(8), int(16)]);
        assert_eq!(OmegaSpec::Trivial { n: 2 }.omegas(3).unwrap(), vec![int(2); 4]);
        assert_eq!(OmegaSpec::List(vec![int(4)]).omega(1), Err(Error::OmegaRange(1)));
    }

    #[test]
    fn json_forms() {
        for s in [
            r#"{"kind":"list","values":["4","8","16"]}"#,
            r#"{"kind":"mn_delta","m":2,"n":2,"delta":0}"#,
            r#"{"kind":"trivial","N":3}"#,
        ] {
            let v: Value = serde_json::from_str(s).unwrap();
            let o = OmegaSpec::from_json(&v).unwrap();
            assert_eq!(o.to_json(), v);
        }
    }
}
