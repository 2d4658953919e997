//! Finite subtrees of the Berkovich line, piecewise-affine functions on them,
//! and their Laplacians.
//!
//! A skeleton is rooted at its top vertex; every other vertex has a unique
//! parent (the smallest vertex strictly above it) and the edge to its parent is
//! the segment of discs `ζ_{a,r}` with `a` the child's center and `r` between
//! the two log-radii. Functions are affine in `r` on each edge. Edges ending at
//! a classical point or at infinity are infinitely long; the affine data is
//! still finite and values at such ends are limits.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::berk::BerkPoint;
use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::poly::{envelope, envelope_breakpoints, Poly};
use crate::valfield::{ExtRat, LogAbs};

/// Log-radius with infinity at `+inf`.
pub fn radius_of(x: &BerkPoint) -> LogAbs {
    match x {
        BerkPoint::Infinity => ExtRat::PosInf,
        BerkPoint::Finite(d) => d.radius().clone(),
    }
}

/// A radius strictly inside `(lo, hi)`.
fn interior_radius(lo: &LogAbs, hi: &LogAbs) -> BigRational {
    let one = BigRational::from_integer(1.into());
    match (lo.finite(), hi.finite()) {
        (Some(l), Some(h)) => (l + h) / BigRational::from_integer(2.into()),
        (None, Some(h)) => h - one,
        (Some(l), None) => l + one,
        (None, None) => BigRational::zero(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub child: usize,
    pub parent: usize,
}

/// Where a point sits on a skeleton. Edges are named by their child vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Vertex(usize),
    Edge { child: usize, radius: BigRational },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Skeleton {
    vertices: Vec<BerkPoint>,
    parent: Vec<Option<usize>>,
}

impl Skeleton {
    /// Smallest subtree containing `points`: the points together with all
    /// their pairwise joins.
    pub fn build_hull(points: &[BerkPoint]) -> Result<Skeleton> {
        if points.is_empty() {
            return Err(Error::EmptyRegion);
        }
        let mut base = points.to_vec();
        base.sort();
        base.dedup();
        let mut vertices = base.clone();
        for (i, x) in base.iter().enumerate() {
            for y in &base[i + 1..] {
                vertices.push(x.join(y));
            }
        }
        vertices.sort();
        vertices.dedup();
        let parent = (0..vertices.len())
            .map(|i| {
                let v = &vertices[i];
                (0..vertices.len())
                    .filter(|&j| j != i && v.leq(&vertices[j]))
                    .min_by(|&a, &b| radius_of(&vertices[a]).cmp(&radius_of(&vertices[b])))
            })
            .collect();
        Ok(Skeleton { vertices, parent })
    }

    /// Same tree with extra vertices; points off the tree enlarge it.
    pub fn refine(&self, points: &[BerkPoint]) -> Skeleton {
        if points.is_empty() {
            return self.clone();
        }
        let mut all = self.vertices.clone();
        all.extend_from_slice(points);
        Self::build_hull(&all).expect("nonempty")
    }

    /// Vertices in their canonical order.
    pub fn vertices(&self) -> &[BerkPoint] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &BerkPoint {
        &self.vertices[i]
    }

    pub fn index_of(&self, x: &BerkPoint) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn children(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(move |&c| self.parent[c] == Some(i))
    }

    pub fn top(&self) -> usize {
        self.parent
            .iter()
            .position(|p| p.is_none())
            .expect("a finite tree has a top vertex")
    }

    pub fn top_vertex(&self) -> &BerkPoint {
        &self.vertices[self.top()]
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(child, p)| p.map(|parent| Edge { child, parent }))
    }

    /// Hyperbolic length of the edge above `child`; infinite when it touches a
    /// classical point or infinity.
    pub fn edge_length(&self, child: usize) -> LogAbs {
        let parent = self.parent[child].expect("not the top vertex");
        radius_of(&self.vertices[parent]) - radius_of(&self.vertices[child])
    }

    /// Center used to parametrize the edge above `child`.
    pub fn edge_center(&self, child: usize) -> &BigRational {
        self.vertices[child]
            .center()
            .expect("infinity has no parent")
    }

    pub fn point_on_edge(&self, child: usize, radius: &BigRational) -> BerkPoint {
        let ctx = self.vertices[child].ctx().expect("finite child");
        BerkPoint::disc_rat(ctx, self.edge_center(child).clone(), radius.clone())
    }

    /// Endpoint log-radii `(lower, upper)` of the edge above `child`.
    pub fn edge_span(&self, child: usize) -> (LogAbs, LogAbs) {
        let parent = self.parent[child].expect("not the top vertex");
        (
            radius_of(&self.vertices[child]),
            radius_of(&self.vertices[parent]),
        )
    }

    pub fn locate(&self, x: &BerkPoint) -> Option<Location> {
        if let Some(i) = self.index_of(x) {
            return Some(Location::Vertex(i));
        }
        self.edges().find_map(|e| {
            (self.vertices[e.child].leq(x) && x.leq(&self.vertices[e.parent])).then(|| {
                Location::Edge {
                    child: e.child,
                    radius: x.finite_radius().expect("interior of an edge").clone(),
                }
            })
        })
    }

    pub fn contains(&self, x: &BerkPoint) -> bool {
        self.locate(x).is_some()
    }

    /// True when both skeletons consist of the same set of points.
    pub fn spans_same_tree(&self, other: &Skeleton) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
            && other.vertices.iter().all(|v| self.contains(v))
    }

    /// The point of the skeleton nearest to `x` along the tree.
    pub fn retract(&self, x: &BerkPoint) -> BerkPoint {
        let top = self.top_vertex();
        if !x.leq(top) {
            return top.clone();
        }
        let BerkPoint::Finite(dx) = x else {
            return top.clone();
        };
        let mut best = top.clone();
        for e in self.edges() {
            let (c, q) = (&self.vertices[e.child], &self.vertices[e.parent]);
            if !x.leq(q) {
                continue;
            }
            let center = self.edge_center(e.child);
            let r = radius_of(c)
                .max_with(dx.radius().clone())
                .max_with(dx.ctx().logabs(&(center - dx.center())));
            if r <= radius_of(q) {
                let candidate = BerkPoint::disc(dx.ctx(), center.clone(), r);
                if candidate.leq(&best) {
                    best = candidate;
                }
            }
        }
        best
    }
}

/// `intercept + slope·r` on one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub intercept: BigRational,
    pub slope: BigRational,
}

impl Affine {
    pub fn zero() -> Self {
        Affine {
            intercept: BigRational::zero(),
            slope: BigRational::zero(),
        }
    }

    /// Value at `r`, or the limit when `r` is infinite.
    pub fn at(&self, r: &ExtRat) -> ExtRat {
        match r {
            ExtRat::Finite(r) => ExtRat::Finite(&self.intercept + &self.slope * r),
            _ if self.slope.is_zero() => ExtRat::Finite(self.intercept.clone()),
            ExtRat::PosInf if self.slope.is_positive() => ExtRat::PosInf,
            ExtRat::PosInf => ExtRat::NegInf,
            _ if self.slope.is_positive() => ExtRat::NegInf,
            _ => ExtRat::PosInf,
        }
    }

    fn scale(&self, c: &BigRational) -> Affine {
        Affine {
            intercept: &self.intercept * c,
            slope: &self.slope * c,
        }
    }

    fn add(&self, other: &Affine) -> Affine {
        Affine {
            intercept: &self.intercept + &other.intercept,
            slope: &self.slope + &other.slope,
        }
    }
}

/// A continuous function on a skeleton, affine in the radius coordinate on
/// every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunc {
    skel: Skeleton,
    pieces: Vec<Option<Affine>>,
    values: Vec<ExtRat>,
}

impl PLFunc {
    /// Vertex values are read off the pieces; `isolated` is used only when
    /// the skeleton is a single vertex.
    pub fn from_pieces(skel: Skeleton, pieces: Vec<Option<Affine>>, isolated: ExtRat) -> PLFunc {
        assert_eq!(pieces.len(), skel.vertices.len());
        let values = (0..skel.vertices.len())
            .map(|i| {
                let r = radius_of(&skel.vertices[i]);
                if let Some(a) = &pieces[i] {
                    a.at(&r)
                } else if let Some(c) = skel.children(i).next() {
                    pieces[c].as_ref().expect("child edge").at(&r)
                } else {
                    isolated.clone()
                }
            })
            .collect();
        PLFunc {
            skel,
            pieces,
            values,
        }
    }

    pub fn constant(skel: &Skeleton, c: BigRational) -> PLFunc {
        let pieces = (0..skel.vertices.len())
            .map(|i| {
                skel.parent[i].map(|_| Affine {
                    intercept: c.clone(),
                    slope: BigRational::zero(),
                })
            })
            .collect();
        Self::from_pieces(skel.clone(), pieces, ExtRat::Finite(c))
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skel
    }

    pub fn value_at_vertex(&self, i: usize) -> &ExtRat {
        &self.values[i]
    }

    /// Affine data on the edge above `child`.
    pub fn piece(&self, child: usize) -> Option<&Affine> {
        self.pieces[child].as_ref()
    }

    /// Upward slope on the edge above `child`.
    pub fn slope(&self, child: usize) -> &BigRational {
        &self.pieces[child]
            .as_ref()
            .expect("not the top vertex")
            .slope
    }

    /// `None` off the skeleton.
    pub fn evaluate(&self, x: &BerkPoint) -> Option<ExtRat> {
        match self.skel.locate(x)? {
            Location::Vertex(i) => Some(self.values[i].clone()),
            Location::Edge { child, radius } => {
                Some(self.pieces[child].as_ref()?.at(&ExtRat::Finite(radius)))
            }
        }
    }

    fn isolated_value(&self) -> ExtRat {
        self.values[0].clone()
    }

    /// The same function on a finer skeleton spanning the same tree.
    pub fn refine_to(&self, finer: &Skeleton) -> PLFunc {
        if finer == &self.skel {
            return self.clone();
        }
        let pieces = (0..finer.vertices.len())
            .map(|i| {
                finer.parent[i]?;
                let coarse = match self.skel.locate(&finer.vertices[i]) {
                    Some(Location::Vertex(j)) => j,
                    Some(Location::Edge { child, .. }) => child,
                    None => panic!("refinement leaves the tree"),
                };
                Some(
                    self.pieces[coarse]
                        .clone()
                        .expect("edge of the coarse tree"),
                )
            })
            .collect();
        PLFunc::from_pieces(finer.clone(), pieces, self.isolated_value())
    }

    fn common_refinement(&self, other: &PLFunc) -> Result<(PLFunc, PLFunc)> {
        if !self.skel.spans_same_tree(&other.skel) {
            return Err(Error::SkeletonMismatch);
        }
        let joint = self.skel.refine(&other.skel.vertices);
        Ok((self.refine_to(&joint), other.refine_to(&joint)))
    }

    pub fn scale(&self, c: &BigRational) -> PLFunc {
        let pieces = self
            .pieces
            .iter()
            .map(|p| p.as_ref().map(|a| a.scale(c)))
            .collect();
        PLFunc::from_pieces(self.skel.clone(), pieces, self.isolated_value().scale(c))
    }

    pub fn add(&self, other: &PLFunc) -> Result<PLFunc> {
        let (f, g) = self.common_refinement(other)?;
        let pieces = f
            .pieces
            .iter()
            .zip(&g.pieces)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.add(b)),
                _ => None,
            })
            .collect();
        let isolated = f
            .isolated_value()
            .checked_add(&g.isolated_value())
            .unwrap_or(ExtRat::zero());
        Ok(PLFunc::from_pieces(f.skel, pieces, isolated))
    }

    pub fn sub(&self, other: &PLFunc) -> Result<PLFunc> {
        self.add(&other.scale(&-BigRational::from_integer(1.into())))
    }

    /// `max(F, 0)`, with a vertex inserted at every zero crossing.
    pub fn max0(&self) -> PLFunc {
        let mut crossings = vec![];
        for e in self.skel.edges() {
            let a = self.pieces[e.child].as_ref().expect("edge");
            if a.slope.is_zero() {
                continue;
            }
            let r = -&a.intercept / &a.slope;
            let (lo, hi) = self.skel.edge_span(e.child);
            if lo.cmp_rat(&r).is_lt() && hi.cmp_rat(&r).is_gt() {
                crossings.push(self.skel.point_on_edge(e.child, &r));
            }
        }
        let f = self.refine_to(&self.skel.refine(&crossings));
        let pieces = (0..f.skel.vertices.len())
            .map(|i| {
                let a = f.pieces[i].as_ref()?;
                let (lo, hi) = f.skel.edge_span(i);
                let probe = &a.intercept + &a.slope * interior_radius(&lo, &hi);
                Some(if probe.is_positive() {
                    a.clone()
                } else {
                    Affine::zero()
                })
            })
            .collect();
        let isolated = f.isolated_value().pos_part();
        PLFunc::from_pieces(f.skel, pieces, isolated)
    }

    /// Pointwise maximum, as `G + max(F - G, 0)`.
    pub fn max(&self, other: &PLFunc) -> Result<PLFunc> {
        other.add(&self.sub(other)?.max0())
    }

    /// Atom at each vertex: upward slopes of the child edges minus the
    /// upward slope of the parent edge. Zero atoms are dropped.
    pub fn laplacian(&self) -> Measure {
        let mut m = Measure::new();
        for (i, v) in self.skel.vertices.iter().enumerate() {
            let mut w: BigRational = self.skel.children(i).map(|c| self.slope(c)).sum();
            if let Some(a) = &self.pieces[i] {
                w -= &a.slope;
            }
            m.add_atom(v.clone(), w);
        }
        m
    }
}

/// `log|g|` on the skeleton, refined at every corner of the Newton envelope.
pub fn pl_from_poly(g: &Poly, skel: &Skeleton) -> Result<PLFunc> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for ctx in skel.vertices.iter().filter_map(|v| v.ctx()) {
        if ctx != g.ctx() {
            return Err(Error::CtxMismatch(g.ctx().p(), ctx.p()));
        }
    }
    let mut corners = vec![];
    for e in skel.edges() {
        let terms = g.log_terms(skel.edge_center(e.child));
        let (lo, hi) = skel.edge_span(e.child);
        for r in envelope_breakpoints(&terms, &lo, &hi) {
            corners.push(skel.point_on_edge(e.child, &r));
        }
    }
    let refined = skel.refine(&corners);
    let pieces = (0..refined.vertices.len())
        .map(|i| {
            refined.parent[i]?;
            let terms = g.log_terms(refined.edge_center(i));
            let (lo, hi) = refined.edge_span(i);
            let k = envelope(&terms, &interior_radius(&lo, &hi)).max_index;
            Some(Affine {
                intercept: terms[k].finite().expect("active term is finite").clone(),
                slope: BigRational::from_integer(k.into()),
            })
        })
        .collect();
    let isolated = match &refined.vertices[0] {
        BerkPoint::Infinity if g.degree() > Some(0) => ExtRat::PosInf,
        BerkPoint::Infinity => g.ctx().logabs(&g.coeff(0)),
        x => g.eval_logabs(x)?,
    };
    Ok(PLFunc::from_pieces(refined, pieces, isolated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berk::Direction;
    use crate::poly::Var;
    use crate::valfield::{int, rat, FieldCtx};
    use proptest::prelude::*;

    fn k(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    fn pt(p: u64, a: i64) -> BerkPoint {
        BerkPoint::classical(k(p), int(a))
    }

    fn z(p: u64, a: i64, r: BigRational) -> BerkPoint {
        BerkPoint::disc_rat(k(p), int(a), r)
    }

    fn axis(p: u64) -> Skeleton {
        Skeleton::build_hull(&[pt(p, 0), BerkPoint::Infinity]).unwrap()
    }

    #[test]
    fn hull_examples() {
        let s = axis(3);
        assert_eq!(s.vertices(), &[pt(3, 0), BerkPoint::Infinity]);
        assert_eq!(s.edge_length(0), ExtRat::PosInf);

        let s = Skeleton::build_hull(&[pt(3, 0), pt(3, 1), BerkPoint::Infinity]).unwrap();
        assert!(s.index_of(&BerkPoint::gauss(k(3))).is_some());
        assert_eq!(s.vertices().len(), 4);

        let p = 5;
        let s = Skeleton::build_hull(&[pt(p, 0), pt(p, 5), pt(p, 1)]).unwrap();
        let inner = z(p, 0, int(-1));
        let gauss = BerkPoint::gauss(k(p));
        let mut expected = vec![pt(p, 0), pt(p, 5), pt(p, 1), inner.clone(), gauss.clone()];
        expected.sort();
        assert_eq!(s.vertices(), expected.as_slice());
        let i = s.index_of(&inner).unwrap();
        assert_eq!(s.parent(i), s.index_of(&gauss));
        assert_eq!(s.edge_length(i), ExtRat::from_int(1));
        assert_eq!(s.top_vertex(), &gauss);

        let again = Skeleton::build_hull(s.vertices()).unwrap();
        assert_eq!(again, s);
        assert_eq!(Skeleton::build_hull(&[]), Err(Error::EmptyRegion));
    }

    #[test]
    fn retract_examples() {
        let p = 3;
        let s = axis(p);
        assert_eq!(s.retract(&pt(p, 1)), BerkPoint::gauss(k(p)));
        assert_eq!(s.retract(&z(p, 0, int(-4))), z(p, 0, int(-4)));
        assert_eq!(s.retract(&pt(p, 0)), pt(p, 0));
        assert_eq!(s.retract(&BerkPoint::Infinity), BerkPoint::Infinity);
        assert_eq!(s.retract(&z(p, 3, int(-3))), z(p, 0, int(-1)));
        let finite = Skeleton::build_hull(&[pt(p, 0), BerkPoint::gauss(k(p))]).unwrap();
        assert_eq!(finite.retract(&BerkPoint::Infinity), BerkPoint::gauss(k(p)));
        assert_eq!(finite.retract(&pt(p, 2)), BerkPoint::gauss(k(p)));
    }

    #[test]
    fn pl_from_poly_examples() {
        let kk = k(3);
        let s = axis(3);
        let f = pl_from_poly(&Poly::x(kk, Var::Z), &s).unwrap();
        assert_eq!(f.skeleton(), &s);
        assert_eq!(f.slope(0), &int(1));
        assert_eq!(
            f.evaluate(&z(3, 0, rat(7, 2))),
            Some(ExtRat::Finite(rat(7, 2)))
        );

        let g = Poly::from_ints(kk, Var::T, &[0, 1, 1]);
        let f = pl_from_poly(&g, &s).unwrap();
        let gauss = BerkPoint::gauss(kk);
        let i = f.skeleton().index_of(&gauss).unwrap();
        assert_eq!(f.skeleton().vertices().len(), 3);
        assert_eq!(f.slope(0), &int(1));
        assert_eq!(f.slope(i), &int(2));

        for p in [3u64, 5] {
            let kk = k(p);
            let g = Poly::from_roots(kk, Var::Z, &[int(1), int(p as i64)]);
            let s =
                Skeleton::build_hull(&[pt(p, 0), pt(p, 1), pt(p, p as i64), BerkPoint::Infinity])
                    .unwrap();
            let f = pl_from_poly(&g, &s).unwrap();
            let fs = f.skeleton();
            for (i, v) in fs.vertices().iter().enumerate() {
                if v.is_classical() {
                    continue;
                }
                let up = g
                    .directional_slope(&Direction::up(v.clone()).unwrap())
                    .unwrap();
                assert_eq!(f.slope(i), &int(up));
                for c in fs.children(i) {
                    let d = Direction::new(v.clone(), fs.vertex(c).clone()).unwrap();
                    assert_eq!(-f.slope(c), int(g.directional_slope(&d).unwrap()));
                }
            }
            let lap = f.laplacian();
            assert_eq!(
                lap,
                Measure::from_atoms([
                    (BerkPoint::Infinity, int(2)),
                    (pt(p, 1), int(-1)),
                    (pt(p, p as i64), int(-1)),
                ])
            );
        }
    }

    #[test]
    fn combine_examples() {
        let kk = k(3);
        let s = axis(3);
        let f = pl_from_poly(&Poly::x(kk, Var::Z), &s).unwrap();
        let h = f.max0();
        assert_eq!(h.evaluate(&z(3, 0, int(-2))), Some(ExtRat::zero()));
        assert_eq!(h.evaluate(&z(3, 0, int(2))), Some(ExtRat::from_int(2)));
        assert!(h.skeleton().index_of(&BerkPoint::gauss(kk)).is_some());
        assert_eq!(
            h.laplacian(),
            Measure::from_atoms([
                (BerkPoint::gauss(kk), int(-1)),
                (BerkPoint::Infinity, int(1)),
            ])
        );
        assert_eq!(f.scale(&rat(1, 2)).slope(0), &rat(1, 2));
        let zero = f.sub(&f).unwrap();
        assert!(zero.laplacian().is_empty());
        assert_eq!(zero.value_at_vertex(1), &ExtRat::zero());
        assert!(PLFunc::constant(&s, int(5)).laplacian().is_empty());

        let other = Skeleton::build_hull(&[pt(3, 1), BerkPoint::Infinity]).unwrap();
        let g = PLFunc::constant(&other, int(0));
        assert_eq!(f.add(&g), Err(Error::SkeletonMismatch));
    }

    fn arb_roots() -> impl Strategy<Value = Vec<BigRational>> {
        prop::collection::vec((-20i64..20, 1i64..4).prop_map(|(n, d)| rat(n, d)), 1..5)
    }

    fn root_skeleton(p: u64, roots: &[BigRational]) -> Skeleton {
        let mut pts: Vec<BerkPoint> = roots
            .iter()
            .map(|r| BerkPoint::classical(k(p), r.clone()))
            .collect();
        pts.push(BerkPoint::Infinity);
        Skeleton::build_hull(&pts).unwrap()
    }

    proptest! {
        #[test]
        fn laplacian_of_log_abs(roots in arb_roots(), extra in arb_roots()) {
            let kk = k(3);
            let g = Poly::from_roots(kk, Var::Z, &roots);
            let mut pts = roots.clone();
            pts.extend(extra);
            let f = pl_from_poly(&g, &root_skeleton(3, &pts)).unwrap();
            let lap = f.laplacian();
            prop_assert_eq!(lap.mass_at(&BerkPoint::Infinity), int(roots.len() as i64));
            let negative: BigRational = lap.atoms().map(|(_, w)| w.clone()).filter(|w| w.is_negative()).sum();
            prop_assert_eq!(negative, int(-(roots.len() as i64)));
            prop_assert!(lap.total_mass().is_zero());
        }

        #[test]
        fn laplacian_is_linear(a in arb_roots(), b in arb_roots(), c in -5i64..5) {
            let kk = k(3);
            let mut pts = a.clone();
            pts.extend(b.iter().cloned());
            let s = root_skeleton(3, &pts);
            let f = pl_from_poly(&Poly::from_roots(kk, Var::Z, &a), &s).unwrap().max0();
            let g = pl_from_poly(&Poly::from_roots(kk, Var::Z, &b), &s).unwrap();
            let sum = f.add(&g).unwrap();
            prop_assert_eq!(sum.laplacian(), f.laplacian().add(&g.laplacian()));
            prop_assert_eq!(f.scale(&int(c)).laplacian(), f.laplacian().scale(&int(c)));
        }

        #[test]
        fn pl_matches_direct_evaluation(roots in arb_roots(), samples in prop::collection::vec((0usize..64, -40i64..40), 100)) {
            let kk = k(5);
            let g = Poly::from_roots(kk, Var::Z, &roots).scale(&rat(7, 25));
            let f = pl_from_poly(&g, &root_skeleton(5, &roots)).unwrap();
            let s = f.skeleton();
            let edges: Vec<Edge> = s.edges().collect();
            for (e, r) in samples {
                let e = edges[e % edges.len()];
                let (lo, hi) = s.edge_span(e.child);
                let r = rat(r, 4);
                if lo.cmp_rat(&r).is_lt() && hi.cmp_rat(&r).is_gt() {
                    let x = s.point_on_edge(e.child, &r);
                    prop_assert_eq!(f.evaluate(&x).unwrap(), g.eval_logabs(&x).unwrap());
                }
            }
        }

        #[test]
        fn hull_is_monotone(a in arb_roots(), b in arb_roots()) {
            let s = root_skeleton(3, &a);
            let mut both = a.clone();
            both.extend(b);
            let t = root_skeleton(3, &both);
            for v in s.vertices() {
                prop_assert!(t.index_of(v).is_some());
            }
            for v in s.vertices() {
                prop_assert_eq!(s.retract(v), v.clone());
            }
        }
    }
}
