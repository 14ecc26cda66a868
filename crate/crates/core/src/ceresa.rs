//! Pointed and unpointed tropical Ceresa classes and the Ceresa–Zharkov
//! class `w(Γ)`.

use std::fmt;

use num_traits::Zero;

use crate::abel_jacobi::{aj_representative, Divisor};
use crate::error::{Error, Result};
use crate::graph::{sgn_pointed, sgn_unpointed, Point};
use crate::jacobian::{monodromy_phi, wedge_with_h10, JacobianData, TensorElement, WedgeIndex};
use crate::linalg::{QuotientStructure, Rat, TorsionOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassQuotient {
    /// `JH_{2,1}`
    Pointed,
    /// `JH̄_{2,1}`
    Unpointed,
}

impl fmt::Display for ClassQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassQuotient::Pointed => "JH_{2,1}",
            ClassQuotient::Unpointed => "JHbar_{2,1}",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeresaResult {
    pub representative: TensorElement,
    pub reduced_class: Vec<Rat>,
    pub torsion_order: TorsionOrder,
    pub quotient: ClassQuotient,
}

/// `Σ_{e ∈ F, ε ∈ F^c} s(e, ε) ℓ(e) a_ε ⊗ (b_ε ∧ b_e)`.
pub fn sign_sum(jd: &JacobianData, sign: impl Fn(usize, usize) -> Result<i32>) -> Result<TensorElement> {
    let g = jd.genus();
    let graph = jd.graph();
    let tree = jd.tree();
    let index = WedgeIndex::new(g, 2, 1);
    let mut out = TensorElement::zero(g, 2, 1);
    for &e in tree.tree_edges() {
        let be = jd.tangent(e);
        for (k, &eps) in tree.cotree_edges().iter().enumerate() {
            let s = sign(e, eps)?;
            if s == 0 {
                continue;
            }
            let coeff = &graph.edge(e).length * Rat::from_integer(s.into());
            let a = jd.cycle_vector(k);
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (m, bm) in be.iter().enumerate() {
                    if bm.is_zero() || m == k {
                        continue;
                    }
                    let t = &coeff * ai * bm;
                    if k < m {
                        out.add_term(&index, &[i], &[k, m], &t);
                    } else {
                        out.add_term(&index, &[i], &[m, k], &-t);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check_vertex(jd: &JacobianData, flat: usize) -> Result<()> {
    if flat < jd.graph().vertex_count() {
        Ok(())
    } else {
        Err(Error::InvalidPoint(format!("basepoint vertex {flat} out of range")))
    }
}

/// Representative of `v_♭(Γ)` in `H_{2,1}`.
pub fn pointed_representative(jd: &JacobianData, flat: usize) -> Result<TensorElement> {
    check_vertex(jd, flat)?;
    sign_sum(jd, |e, eps| sgn_pointed(jd.graph(), jd.tree(), flat, e, eps))
}

/// Representative of `v̄(Γ)` in `H_{2,1}`.
pub fn unpointed_representative(jd: &JacobianData) -> Result<TensorElement> {
    sign_sum(jd, |e, eps| sgn_unpointed(jd.graph(), jd.tree(), e, eps))
}

fn finish(rep: TensorElement, q: &QuotientStructure, quotient: ClassQuotient) -> Result<CeresaResult> {
    let reduced_class = q.reduce(rep.coords())?;
    let torsion_order = q.torsion_order(rep.coords())?;
    Ok(CeresaResult { representative: rep, reduced_class, torsion_order, quotient })
}

/// `v_♭(Γ)` in `JH_{2,1}`. For genus below 2 the class space is zero.
pub fn ceresa_pointed(jd: &JacobianData, flat: usize) -> Result<CeresaResult> {
    let rep = pointed_representative(jd, flat)?;
    finish(rep, &jd.jh_quotient(2, 1)?, ClassQuotient::Pointed)
}

/// `v̄(Γ)` in `JH̄_{2,1}`.
pub fn ceresa_unpointed(jd: &JacobianData) -> Result<CeresaResult> {
    let rep = unpointed_representative(jd)?;
    finish(rep, &jd.jhbar_quotient()?, ClassQuotient::Unpointed)
}

/// `v_♭(Γ)` reduced in `JH̄_{2,1}` instead of `JH_{2,1}`.
pub fn pointed_in_jhbar(jd: &JacobianData, flat: usize) -> Result<CeresaResult> {
    let rep = pointed_representative(jd, flat)?;
    finish(rep, &jd.jhbar_quotient()?, ClassQuotient::Unpointed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasepointCheck {
    /// `v_♭ - v_♭'`
    pub lhs: TensorElement,
    /// `-2 AJ(♭ - ♭') ∧ ω`
    pub rhs: TensorElement,
    pub holds: bool,
}

/// Compares `v_♭ - v_♭'` with `-2 AJ(♭ - ♭') ∧ ω` in `JH_{2,1}`.
pub fn basepoint_dependence_check(jd: &JacobianData, flat: usize, other: usize) -> Result<BasepointCheck> {
    let lhs = &pointed_representative(jd, flat)? - &pointed_representative(jd, other)?;
    let aj = aj_representative(jd, &Divisor::difference(Point::Vertex(flat), Point::Vertex(other)))?;
    let rhs = wedge_with_h10(&aj, &jd.omega())?.scale(&Rat::from_integer((-2).into()));
    let holds = jd.jh_quotient(2, 1)?.is_zero_class((&lhs - &rhs).coords())?;
    Ok(BasepointCheck { lhs, rhs, holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WClassResult {
    /// `φ(v_♭)` in `H_{3,0} = ∧^3`.
    pub representative: TensorElement,
    pub reduced_class: Vec<Rat>,
    pub nonzero: bool,
}

/// `w(Γ) = N(v_♭(Γ))` in `Q_{3,0}`. For genus below 3 the space is zero.
pub fn ceresa_w(jd: &JacobianData, flat: usize) -> Result<WClassResult> {
    let representative = monodromy_phi(&pointed_representative(jd, flat)?)?;
    let reduced_class = jd.q_quotient(3, 0)?.reduce(representative.coords())?;
    let nonzero = reduced_class.iter().any(|x| !x.is_zero());
    Ok(WClassResult { representative, reduced_class, nonzero })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Pointed(usize),
    Unpointed,
}

/// Order of the pointed or unpointed class.
pub fn torsion(jd: &JacobianData, which: Which) -> Result<TorsionOrder> {
    Ok(match which {
        Which::Pointed(flat) => ceresa_pointed(jd, flat)?.torsion_order,
        Which::Unpointed => ceresa_unpointed(jd)?.torsion_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::rat;

    #[test]
    fn genus_one_is_zero() {
        let jd = JacobianData::with_default_tree(&fixtures::loop_graph(rat(3)));
        let r = ceresa_pointed(&jd, 0).unwrap();
        assert!(r.representative.is_zero());
        assert_eq!(r.torsion_order, TorsionOrder::Finite(1.into()));
        assert!(!ceresa_w(&jd, 0).unwrap().nonzero);
    }

    #[test]
    fn same_basepoint_gives_zero_sides() {
        let jd = JacobianData::with_default_tree(&fixtures::k4(&fixtures::ones(6)));
        let c = basepoint_dependence_check(&jd, 2, 2).unwrap();
        assert!(c.lhs.is_zero() && c.rhs.is_zero() && c.holds);
    }

    #[test]
    fn bad_basepoint() {
        let jd = JacobianData::with_default_tree(&fixtures::k4(&fixtures::ones(6)));
        assert!(ceresa_pointed(&jd, 9).is_err());
    }
}
