//! The tropical Abel–Jacobi map on degree-zero divisors.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{MetricGraph, Point};
use crate::jacobian::JacobianData;
use crate::linalg::{QuotientStructure, Rat, TorsionOrder};

/// A formal integer combination of points. Repeated points are merged and
/// zero multiplicities dropped; the order of first appearance is kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    terms: Vec<(Point, i64)>,
}

impl Divisor {
    pub fn new(terms: impl IntoIterator<Item = (Point, i64)>) -> Self {
        let mut d = Divisor::default();
        for (p, m) in terms {
            d.add_point(p, m);
        }
        d
    }

    pub fn point(p: Point) -> Self {
        Divisor::new([(p, 1)])
    }

    /// `[p] - [q]`.
    pub fn difference(p: Point, q: Point) -> Self {
        Divisor::new([(p, 1), (q, -1)])
    }

    pub fn add_point(&mut self, p: Point, m: i64) {
        match self.terms.iter_mut().position(|(q, _)| *q == p) {
            Some(i) => {
                self.terms[i].1 += m;
                if self.terms[i].1 == 0 {
                    self.terms.remove(i);
                }
            }
            None if m != 0 => self.terms.push((p, m)),
            None => {}
        }
    }

    pub fn terms(&self) -> &[(Point, i64)] {
        &self.terms
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(_, m)| m).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, m) in &other.terms {
            d.add_point(p.clone(), *m);
        }
        d
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        Divisor::new(self.terms.iter().map(|(p, m)| (p.clone(), m * k)))
    }
}

/// Image of `p - root` in `b`-coordinates, integrating along the tree.
pub fn point_position(jd: &JacobianData, p: &Point) -> Result<Vec<Rat>> {
    let g = jd.graph();
    g.check_point(p)?;
    let (vertex, extra) = match p {
        Point::Vertex(v) => (*v, None),
        Point::OnEdge { edge, offset } => (g.edge(*edge).src, Some((*edge, offset))),
    };
    let mut x = vec![Rat::zero(); jd.genus()];
    let mut add = |e: usize, t: Rat| {
        for (xi, bi) in x.iter_mut().zip(jd.tangent(e)) {
            *xi += &t * bi;
        }
    };
    for (e, s) in jd.tree().tree_path(g, 0, vertex) {
        add(e, &g.edge(e).length * Rat::from_integer(s.into()));
    }
    if let Some((e, offset)) = extra {
        add(e, offset.clone());
    }
    Ok(x)
}

/// A representative of `AJ(D)` in `H_{1,0}`.
pub fn aj_representative(jd: &JacobianData, d: &Divisor) -> Result<Vec<Rat>> {
    if d.degree() != 0 {
        return Err(Error::NonzeroDegree(d.degree()));
    }
    let mut x = vec![Rat::zero(); jd.genus()];
    for (p, m) in d.terms() {
        let m = Rat::from_integer((*m).into());
        for (xi, pi) in x.iter_mut().zip(point_position(jd, p)?) {
            *xi += &m * pi;
        }
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AjResult {
    pub representative: Vec<Rat>,
    /// Canonical representative in `JH_{1,0}`.
    pub class: Vec<Rat>,
    pub torsion_order: TorsionOrder,
}

/// `AJ(D)` with its class in `JH_{1,0} = Jac(Γ)` and its order.
pub fn aj(jd: &JacobianData, d: &Divisor) -> Result<AjResult> {
    aj_in(jd, &jd.jh_quotient(1, 0)?, d)
}

/// As [`aj`], reusing a precomputed `JH_{1,0}`.
pub fn aj_in(jd: &JacobianData, jh10: &QuotientStructure, d: &Divisor) -> Result<AjResult> {
    let representative = aj_representative(jd, d)?;
    let class = jh10.reduce(&representative)?;
    let torsion_order = jh10.torsion_order(&representative)?;
    Ok(AjResult { representative, class, torsion_order })
}

pub fn aj_torsion(jd: &JacobianData, d: &Divisor) -> Result<TorsionOrder> {
    Ok(aj(jd, d)?.torsion_order)
}

/// `[a] + [c] - 2[b]` on edge `e`: the divisor of the tent function that
/// rises with slope 1 on `[a, b]` and falls with slope 1 on `[b, c]`.
pub fn tent_divisor(g: &MetricGraph, e: usize, a: &Rat, b: &Rat, c: &Rat) -> Result<Divisor> {
    if e >= g.edge_count() {
        return Err(Error::InvalidPoint(format!("edge index {e} out of range")));
    }
    let l = &g.edge(e).length;
    if !(a.is_positive() && a < b && b < c && c < l) {
        return Err(Error::InvalidPoint("tent offsets must satisfy 0 < a < b < c < length".into()));
    }
    if b - a != c - b {
        return Err(Error::InvalidPoint("tent half-widths differ".into()));
    }
    let at = |t: &Rat| Point::OnEdge { edge: e, offset: t.clone() };
    Ok(Divisor::new([(at(a), 1), (at(c), 1), (at(b), -2)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{rat, ratio};

    #[test]
    fn divisor_merging() {
        let p = Point::Vertex(0);
        let q = Point::OnEdge { edge: 0, offset: ratio(1, 2) };
        let d = Divisor::new([(p.clone(), 1), (q.clone(), -1), (p.clone(), 2)]);
        assert_eq!(d.terms(), &[(p.clone(), 3), (q.clone(), -1)]);
        assert_eq!(d.degree(), 2);
        assert!(Divisor::difference(p.clone(), p).is_zero());
    }

    #[test]
    fn loop_values() {
        let jd = JacobianData::with_default_tree(&fixtures::loop_graph(rat(1)));
        let d = Divisor::difference(Point::OnEdge { edge: 0, offset: ratio(1, 3) }, Point::Vertex(0));
        let r = aj(&jd, &d).unwrap();
        assert_eq!(r.class, vec![ratio(1, 3)]);
        assert_eq!(r.torsion_order, TorsionOrder::Finite(3.into()));
        let jd = JacobianData::with_default_tree(&fixtures::loop_graph(rat(5)));
        let d = Divisor::difference(Point::OnEdge { edge: 0, offset: rat(4) }, Point::Vertex(0));
        assert_eq!(aj(&jd, &d).unwrap().class, vec![rat(4)]);
        assert!(aj(&jd, &Divisor::default()).unwrap().class.iter().all(Zero::is_zero));
    }

    #[test]
    fn errors() {
        let g = fixtures::loop_graph(rat(1));
        let jd = JacobianData::with_default_tree(&g);
        assert_eq!(aj(&jd, &Divisor::point(Point::Vertex(0))), Err(Error::NonzeroDegree(1)));
        let off = Divisor::difference(Point::OnEdge { edge: 3, offset: ratio(1, 2) }, Point::Vertex(0));
        assert!(aj(&jd, &off).is_err());
        assert!(tent_divisor(&g, 0, &ratio(1, 4), &ratio(1, 2), &ratio(2, 3)).is_err());
        assert!(tent_divisor(&g, 0, &ratio(1, 4), &ratio(1, 2), &rat(1)).is_err());
        assert_eq!(tent_divisor(&g, 0, &ratio(1, 4), &ratio(1, 2), &ratio(3, 4)).unwrap().degree(), 0);
    }
}
