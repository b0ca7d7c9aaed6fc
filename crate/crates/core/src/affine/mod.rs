//! The degenerate affine category: multiplication, reduction to regular
//! monomials, the bubble series and relation checks.

mod engine;
mod omega;
mod wseries;

pub use engine::{monomial_word, AffineEngine, Slide};
pub use omega::{mn_delta_omegas, OmegaSpec};
pub use wseries::{w_coeff, w_series};

use crate::diagram::{DecoratedElement, OrSeq};
use crate::error::{Error, Result};
use crate::relations::{instances_for, RelationInstance};

/// Evaluate one side of a relation instance.
pub fn eval_side(engine: &AffineEngine, inst: &RelationInstance, lhs: bool) -> Result<DecoratedElement> {
    let side = if lhs { &inst.lhs } else { &inst.rhs };
    let mut out = DecoratedElement::zero(inst.source.clone(), inst.target.clone());
    for (c, w) in side {
        out.add_scaled(&engine.word_element(&inst.source, w)?, c);
    }
    Ok(out)
}

/// True iff every instance of the relation on `a` reduces to zero.
pub fn check_relation(engine: &AffineEngine, a: &OrSeq, id: &str, kmax: usize) -> Result<bool> {
    let insts = instances_for(a, id, engine.omega(), kmax)?;
    if insts.is_empty() {
        return Err(Error::Precondition(format!("relation {id} has no instance on {a}")));
    }
    for inst in &insts {
        let d = eval_side(engine, inst, true)?.sub(&eval_side(engine, inst, false)?)?;
        if !engine.reduce(&d)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
