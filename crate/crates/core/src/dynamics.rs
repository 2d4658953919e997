//! One-parameter families of polynomials with a marked point: iteration of the
//! marked orbit, the escape-rate (Green) approximants on parameter space,
//! their Laplacians, pullbacks of Dirac masses, and boundedness tests.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::berk::BerkPoint;
use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::measure::Measure;
use crate::poly::{envelope_breakpoints, DegreeBudget, Poly, Var};
use crate::skeleton::{pl_from_poly, PLFunc, Skeleton};
use crate::valfield::{ExtRat, FieldCtx, LogAbs};

/// `f_t(z) = Σ a_i(t) z^i` with constant nonzero `a_d` and `d >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamily {
    ctx: FieldCtx,
    coeffs: Vec<Poly>,
}

impl PolyFamily {
    /// `coeffs[i]` is `a_i(t)`; the degree is `coeffs.len() - 1`.
    pub fn new(ctx: FieldCtx, coeffs: Vec<Poly>) -> Result<Self> {
        for a in &coeffs {
            if a.ctx() != ctx {
                return Err(Error::CtxMismatch(ctx.p(), a.ctx().p()));
            }
            if a.var() != Var::T {
                return Err(Error::VarMismatch(Var::T.letter(), a.var().letter()));
            }
        }
        if coeffs.len() < 3 {
            return Err(Error::InvalidFamily("degree must be at least 2".into()));
        }
        let lead = coeffs.last().expect("nonempty");
        if lead.is_zero() || !lead.is_constant() {
            return Err(Error::NonConstantLeadingCoeff);
        }
        Ok(PolyFamily { ctx, coeffs })
    }

    /// `z^2 + t`.
    pub fn quadratic(ctx: FieldCtx) -> Self {
        Self::new(
            ctx,
            vec![
                Poly::x(ctx, Var::T),
                Poly::zero(ctx, Var::T),
                Poly::from_ints(ctx, Var::T, &[1]),
            ],
        )
        .expect("valid family")
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs[self.degree()].coeff(0)
    }

    /// `f_t(z(t))` for a polynomial `z(t)`.
    pub fn apply(&self, z: &Poly, budget: DegreeBudget) -> Result<Poly> {
        let mut acc = self.coeffs[self.degree()].clone();
        for a in self.coeffs[..self.degree()].iter().rev() {
            acc = acc.mul_with_budget(z, budget)?.add(a)?;
        }
        Ok(acc)
    }

    /// `f_t(z)` for numbers `t` and `z`.
    pub fn eval(&self, t: &BigRational, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * z + a.eval(t);
        }
        acc
    }

    fn d_inverse_power(&self, n: usize) -> BigRational {
        let d = BigRational::from_integer(self.degree().into());
        let mut out = BigRational::one();
        for _ in 0..n {
            out /= &d;
        }
        out
    }
}

impl fmt::Display for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| match i {
                0 => format!("({a})"),
                1 => format!("({a})*z"),
                _ => format!("({a})*z^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// The marked point `c(t)`, a polynomial in the parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPoint(pub Poly);

impl MarkedPoint {
    pub fn zero(ctx: FieldCtx) -> Self {
        MarkedPoint(Poly::zero(ctx, Var::T))
    }
}

/// `c_n(t) = f_t^n(c(t))`.
pub fn iterate_marked(fam: &PolyFamily, c: &MarkedPoint, n: usize) -> Result<Poly> {
    Ok(marked_orbit(fam, c, n, DegreeBudget::default())?
        .pop()
        .expect("orbit contains c_0"))
}

/// `[c_0, ..., c_n]`.
pub fn marked_orbit(
    fam: &PolyFamily,
    c: &MarkedPoint,
    n: usize,
    budget: DegreeBudget,
) -> Result<Vec<Poly>> {
    if c.0.var() != Var::T {
        return Err(Error::VarMismatch(Var::T.letter(), c.0.var().letter()));
    }
    let mut orbit = vec![c.0.clone()];
    for _ in 0..n {
        let next = fam.apply(orbit.last().expect("nonempty"), budget)?;
        orbit.push(next);
    }
    Ok(orbit)
}

/// `h^{(n)}(t) = d^{-n} max(0, log|c_n(t)|)` at a finite point.
pub fn green_value(
    fam: &PolyFamily,
    c: &MarkedPoint,
    n: usize,
    t: &BerkPoint,
) -> Result<BigRational> {
    let cn = iterate_marked(fam, c, n)?;
    let v = cn.eval_logabs(t)?.pos_part();
    Ok(v.finite().expect("finite at a finite point") * fam.d_inverse_power(n))
}

/// `h^{(n)}` as a function on `skel`.
pub fn green_function(
    fam: &PolyFamily,
    c: &MarkedPoint,
    n: usize,
    skel: &Skeleton,
) -> Result<PLFunc> {
    let cn = iterate_marked(fam, c, n)?;
    scaled_positive_log(&cn, &fam.d_inverse_power(n), skel)
}

/// `max(0, s·log|g|)` on `skel`, with the zero polynomial read as `0`.
fn scaled_positive_log(g: &Poly, s: &BigRational, skel: &Skeleton) -> Result<PLFunc> {
    if g.is_zero() {
        return Ok(PLFunc::constant(skel, BigRational::zero()));
    }
    Ok(pl_from_poly(g, skel)?.scale(s).max0())
}

/// A constant `C` with `|h^{(n+1)} - h^{(n)}| <= C d^{-n}` on `region` for
/// every `n >= 0`.
///
/// With `A_i = log|a_i|` and `B = max_i sup A_i` over the region, the bound is
/// `max(B⁺, K/d)` where `K = max(B⁺, -A_d, d·T)` and
/// `T = max(0, max_{i<d} (sup A_i - A_d)/(d - i))`. When `a_d` is a unit this
/// is just `B⁺`. Each `A_i` is convex along edges, so its sup over the region
/// is attained at a vertex.
pub fn green_tail_bound(fam: &PolyFamily, region: &Skeleton) -> Result<BigRational> {
    let d = fam.degree();
    let mut sups: Vec<LogAbs> = vec![ExtRat::NegInf; d + 1];
    for (i, a) in fam.coeffs.iter().enumerate() {
        for v in region.vertices() {
            let value = match v {
                BerkPoint::Infinity if a.is_constant() => fam.ctx.logabs(&a.coeff(0)),
                BerkPoint::Infinity => return Err(Error::UnboundedRegion),
                x => a.eval_logabs(x)?,
            };
            sups[i] = sups[i].clone().max_with(value);
        }
    }
    let lead = fam.ctx.logabs(&fam.leading());
    let lead = lead.finite().expect("nonzero leading coefficient").clone();
    let b_plus = sups
        .iter()
        .fold(ExtRat::NegInf, |m, s| m.max_with(s.clone()))
        .pos_part()
        .finite()
        .cloned()
        .expect("bounded above");
    let mut t = BigRational::zero();
    for (i, s) in sups[..d].iter().enumerate() {
        if let Some(s) = s.finite() {
            let slope = (s - &lead) / BigRational::from_integer((d - i).into());
            if slope > t {
                t = slope;
            }
        }
    }
    let dd = BigRational::from_integer(d.into());
    let k = b_plus.clone().max(-lead).max(&dd * t);
    Ok(b_plus.max(k / dd))
}

fn require_infinity(skel: &Skeleton) -> Result<()> {
    if skel.index_of(&BerkPoint::Infinity).is_none() {
        return Err(Error::MissingInfinity);
    }
    Ok(())
}

/// `g^*δ_ζ` retracted to `skel`, as
/// `deg(g)·δ_∞ - Δ max(log|g - a| - ρ, 0)` for `ζ = ζ_{a,ρ}`.
pub fn pullback_dirac(g: &Poly, zeta: &BerkPoint, skel: &Skeleton) -> Result<Measure> {
    let (a, rho) = match zeta {
        BerkPoint::Finite(d) => match d.radius() {
            ExtRat::Finite(r) => (d.center().clone(), r.clone()),
            _ => return Err(Error::TypeOneTarget),
        },
        BerkPoint::Infinity => return Err(Error::TypeOneTarget),
    };
    let deg = match g.degree() {
        Some(k) if k > 0 => k,
        _ => return Err(Error::ConstantPolynomial),
    };
    require_infinity(skel)?;
    let shifted = g.add_constant(&-a);
    let f = pl_from_poly(&shifted, skel)?;
    let offset = PLFunc::constant(f.skeleton(), rho);
    let h = f.sub(&offset)?.max0();
    let mut m = h.laplacian().scale(&-BigRational::one());
    m.add_atom(BerkPoint::Infinity, BigRational::from_integer(deg.into()));
    Ok(m)
}

/// `μ_n = d^{-n} deg(c_n) δ_∞ - Δ h^{(n)}` on `skel`, which must contain
/// infinity. Atoms off the skeleton appear at their retractions.
pub fn activity_measure_approx(
    fam: &PolyFamily,
    c: &MarkedPoint,
    n: usize,
    skel: &Skeleton,
) -> Result<Measure> {
    require_infinity(skel)?;
    let cn = iterate_marked(fam, c, n)?;
    let deg = match cn.degree() {
        Some(k) if k > 0 => k,
        _ => return Err(Error::ConstantMarkedOrbit),
    };
    let s = fam.d_inverse_power(n);
    let h = scaled_positive_log(&cn, &s, skel)?;
    let mut m = h.laplacian().scale(&-BigRational::one());
    m.add_atom(
        BerkPoint::Infinity,
        s * BigRational::from_integer(deg.into()),
    );
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EscapeResult {
    /// `c_n(t)` left the escape radius, so the orbit is unbounded.
    EscapedAt(usize),
    /// `f_t` and `c(t)` have integral coefficients and a unit leading term.
    GoodReductionBounded,
    /// Neither certificate was found within the iteration budget.
    BoundedSoFar(usize),
}

/// Log-radius beyond which `|f_t(z)| = |a_d||z|^d > |z|`:
/// `max(0, max_{i<d} (A_i - A_d)/(d - i), -A_d/(d - 1))`.
pub fn escape_log_radius(fam: &PolyFamily, t: &BigRational) -> BigRational {
    let d = fam.degree();
    let lead = fam.ctx.logabs(&fam.leading());
    let lead = lead.finite().expect("nonzero leading coefficient").clone();
    let mut r = (-&lead / BigRational::from_integer((d - 1).into())).max(BigRational::zero());
    for (i, a) in fam.coeffs[..d].iter().enumerate() {
        if let Some(ai) = fam.ctx.logabs(&a.eval(t)).finite() {
            r = r.max((ai - &lead) / BigRational::from_integer((d - i).into()));
        }
    }
    r
}

/// Boundedness of the marked orbit at a classical parameter.
pub fn mandelbrot_test(
    fam: &PolyFamily,
    c: &MarkedPoint,
    t: &BerkPoint,
    max_iter: usize,
) -> Result<EscapeResult> {
    let tv = match t {
        BerkPoint::Finite(d) if d.radius() == &ExtRat::NegInf => d.center().clone(),
        _ => return Err(Error::NotTypeOne),
    };
    let ctx = fam.ctx;
    let z0 = c.0.eval(&tv);
    let unit_lead = ctx.logabs(&fam.leading()) == ExtRat::zero();
    let integral = fam
        .coeffs
        .iter()
        .all(|a| ctx.logabs(&a.eval(&tv)) <= ExtRat::zero());
    if unit_lead && integral && ctx.logabs(&z0) <= ExtRat::zero() {
        return Ok(EscapeResult::GoodReductionBounded);
    }
    let radius = escape_log_radius(fam, &tv);
    let mut z = z0;
    for n in 0..=max_iter {
        if ctx.logabs(&z).cmp_rat(&radius).is_gt() {
            return Ok(EscapeResult::EscapedAt(n));
        }
        if n < max_iter {
            z = fam.eval(&tv, &z);
        }
    }
    Ok(EscapeResult::BoundedSoFar(max_iter))
}

/// Level-`n` split of a skeleton into `h^{(n)} = 0` and `h^{(n)} > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundednessProfile {
    pub n: usize,
    pub green: PLFunc,
    pub zero_vertices: Vec<BerkPoint>,
    pub escape_vertices: Vec<BerkPoint>,
    /// Points of the zero locus adjacent to the escape locus.
    pub boundary: Vec<BerkPoint>,
    /// Tail bound on the hull of the zero locus; `None` when unbounded.
    pub tail_bound_on_zero: Option<BigRational>,
    /// True when the tail bound vanishes on the zero locus, so that the limit
    /// Green function vanishes there as well.
    pub exact: bool,
}

pub fn boundedness_profile(
    fam: &PolyFamily,
    c: &MarkedPoint,
    skel: &Skeleton,
    n: usize,
) -> Result<BoundednessProfile> {
    let green = green_function(fam, c, n, skel)?;
    let s = green.skeleton();
    let is_zero = |i: usize| green.value_at_vertex(i) == &ExtRat::zero();
    let mut zero_vertices = vec![];
    let mut escape_vertices = vec![];
    let mut boundary = vec![];
    for (i, v) in s.vertices().iter().enumerate() {
        if !is_zero(i) {
            escape_vertices.push(v.clone());
            continue;
        }
        zero_vertices.push(v.clone());
        let up = green.piece(i).is_some_and(|a| !a.slope.is_zero());
        let down = s.children(i).any(|ch| !green.slope(ch).is_zero());
        if up || down {
            boundary.push(v.clone());
        }
    }
    let tail_bound_on_zero = if zero_vertices.is_empty() {
        Some(BigRational::zero())
    } else {
        match green_tail_bound(fam, &Skeleton::build_hull(&zero_vertices)?) {
            Ok(b) => Some(b),
            Err(Error::UnboundedRegion) => None,
            Err(e) => return Err(e),
        }
    };
    let exact = tail_bound_on_zero.as_ref().is_some_and(|b| b.is_zero());
    Ok(BoundednessProfile {
        n,
        green,
        zero_vertices,
        escape_vertices,
        boundary,
        tail_bound_on_zero,
        exact,
    })
}

/// A subset of a skeleton: the skeleton with some boundary points removed,
/// e.g. a half-open segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub hull: Skeleton,
    pub excluded: Vec<BerkPoint>,
}

impl Region {
    pub fn closed(hull: Skeleton) -> Self {
        Region {
            hull,
            excluded: vec![],
        }
    }

    pub fn contains(&self, x: &BerkPoint) -> bool {
        self.hull.contains(x) && !self.excluded.contains(x)
    }
}

/// True iff the level-`n` activity measure, computed on the hull of the
/// region and infinity, puts no mass on the region.
pub fn passivity_indicator(
    fam: &PolyFamily,
    c: &MarkedPoint,
    region: &Region,
    n: usize,
) -> Result<bool> {
    let mut pts = region.hull.vertices().to_vec();
    pts.push(BerkPoint::Infinity);
    let skel = Skeleton::build_hull(&pts)?;
    let mu = match activity_measure_approx(fam, c, n, &skel) {
        Ok(m) => m,
        Err(Error::ConstantMarkedOrbit) => return Ok(true),
        Err(e) => return Err(e),
    };
    let mass: BigRational = mu
        .atoms()
        .filter(|(x, _)| region.contains(x))
        .map(|(_, w)| w.clone())
        .sum();
    Ok(mass.is_zero())
}

/// Roots of the resultant with absolute value `p^logabs`, with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroLocusSegment {
    pub logabs: LogAbs,
    pub count: usize,
}

/// A homogeneous lift `(X, Y) ↦ (P_t(X,Y), Q_t(X,Y))` of a family of degree
/// `d` in the coordinate `z = Y/X`, with a marked lift
/// `C(t) = (X_0(t), Y_0(t))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFamilyLift {
    ctx: FieldCtx,
    degree: usize,
    /// `p[j]` is the coefficient of `X^{d-j} Y^j` in `P`.
    p: Vec<Poly>,
    q: Vec<Poly>,
    marked: (Poly, Poly),
    resultant: Poly,
    resultant_zeros: Vec<ZeroLocusSegment>,
}

impl RationalFamilyLift {
    pub fn new(ctx: FieldCtx, p: Vec<Poly>, q: Vec<Poly>, marked: (Poly, Poly)) -> Result<Self> {
        if p.len() != q.len() || p.len() < 3 {
            return Err(Error::InvalidFamily(
                "P and Q must be forms of the same degree d >= 2".into(),
            ));
        }
        for a in p.iter().chain(&q).chain([&marked.0, &marked.1]) {
            if a.ctx() != ctx {
                return Err(Error::CtxMismatch(ctx.p(), a.ctx().p()));
            }
            if a.var() != Var::T {
                return Err(Error::VarMismatch(Var::T.letter(), a.var().letter()));
            }
        }
        let degree = p.len() - 1;
        let resultant = homogeneous_resultant(ctx, &p, &q);
        if resultant.is_zero() {
            return Err(Error::ResultantIdenticallyZero);
        }
        let resultant_zeros = zero_locus(&resultant);
        Ok(RationalFamilyLift {
            ctx,
            degree,
            p,
            q,
            marked,
            resultant,
            resultant_zeros,
        })
    }

    /// The lift `P = X^d`, `Q = Σ a_i X^{d-i} Y^i` of a polynomial family,
    /// marked by `(1, c(t))`.
    pub fn from_polynomial(fam: &PolyFamily, c: &MarkedPoint) -> Result<Self> {
        let d = fam.degree();
        let ctx = fam.ctx;
        let mut p = vec![Poly::zero(ctx, Var::T); d + 1];
        p[0] = Poly::from_ints(ctx, Var::T, &[1]);
        let q = fam.coeffs.clone();
        let marked = (Poly::from_ints(ctx, Var::T, &[1]), c.0.clone());
        Self::new(ctx, p, q, marked)
    }

    /// The same family with the marked lift multiplied by `phi`.
    pub fn rescale_marked(&self, phi: &Poly) -> Result<Self> {
        let mut out = self.clone();
        out.marked = (self.marked.0.mul(phi)?, self.marked.1.mul(phi)?);
        Ok(out)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn resultant(&self) -> &Poly {
        &self.resultant
    }

    pub fn resultant_zeros(&self) -> &[ZeroLocusSegment] {
        &self.resultant_zeros
    }

    /// Human-readable note on where the resultant vanishes.
    pub fn warning(&self) -> Option<String> {
        if self.resultant.is_constant() {
            return None;
        }
        let parts: Vec<String> = self
            .resultant_zeros
            .iter()
            .map(|s| format!("{} root(s) with log|t| = {}", s.count, s.logabs))
            .collect();
        Some(format!(
            "resultant {} vanishes at: {}",
            self.resultant,
            parts.join("; ")
        ))
    }

    fn eval_form(&self, form: &[Poly], x: &Poly, y: &Poly, budget: DegreeBudget) -> Result<Poly> {
        let d = self.degree;
        let mut total = Poly::zero(self.ctx, Var::T);
        for (j, a) in form.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = a
                .mul_with_budget(&x.pow((d - j) as u32, budget)?, budget)?
                .mul_with_budget(&y.pow(j as u32, budget)?, budget)?;
            total = total.add(&term)?;
        }
        Ok(total)
    }

    /// `(X_n(t), Y_n(t))`, the `n`-th iterate of the lift on the marked lift.
    pub fn iterate(&self, n: usize) -> Result<(Poly, Poly)> {
        let budget = DegreeBudget::default();
        let (mut x, mut y) = self.marked.clone();
        for _ in 0..n {
            let nx = self.eval_form(&self.p, &x, &y, budget)?;
            let ny = self.eval_form(&self.q, &x, &y, budget)?;
            x = nx;
            y = ny;
        }
        Ok((x, y))
    }
}

/// Resultant of the binary forms `Σ p_j X^{d-j} Y^j` and `Σ q_j X^{d-j} Y^j`
/// as a polynomial in `t`: the Sylvester determinant is evaluated at enough
/// integer values of `t` and interpolated.
fn homogeneous_resultant(ctx: FieldCtx, p: &[Poly], q: &[Poly]) -> Poly {
    let d = p.len() - 1;
    let max_deg = |f: &[Poly]| f.iter().filter_map(|a| a.degree()).max().unwrap_or(0);
    let bound = d * (max_deg(p) + max_deg(q));
    let sylvester = |t: &BigRational| {
        let pv: Vec<BigRational> = p.iter().rev().map(|a| a.eval(t)).collect();
        let qv: Vec<BigRational> = q.iter().rev().map(|a| a.eval(t)).collect();
        let mut m = vec![vec![BigRational::zero(); 2 * d]; 2 * d];
        for r in 0..d {
            for (k, v) in pv.iter().enumerate() {
                m[r][r + k] = v.clone();
            }
            for (k, v) in qv.iter().enumerate() {
                m[d + r][r + k] = v.clone();
            }
        }
        determinant(m)
    };
    let xs: Vec<BigRational> = (0..=bound)
        .map(|i| BigRational::from_integer(i.into()))
        .collect();
    let ys: Vec<BigRational> = xs.iter().map(sylvester).collect();
    interpolate(ctx, &xs, &ys)
}

/// Newton divided differences, expanded to monomial coefficients.
fn interpolate(ctx: FieldCtx, xs: &[BigRational], ys: &[BigRational]) -> Poly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = Poly::zero(ctx, Var::T);
    for i in (0..n).rev() {
        let lin = Poly::new(ctx, Var::T, vec![-xs[i].clone(), BigRational::one()]);
        acc = acc
            .mul(&lin)
            .expect("degree within budget")
            .add_constant(&coef[i]);
    }
    acc
}

/// Absolute values of the roots of `g`, read off its Newton polygon at 0.
fn zero_locus(g: &Poly) -> Vec<ZeroLocusSegment> {
    let terms = g.log_terms(&BigRational::zero());
    let low = terms.iter().position(|t| t.is_finite()).unwrap_or(0);
    let mut out = vec![];
    if low > 0 {
        out.push(ZeroLocusSegment {
            logabs: ExtRat::NegInf,
            count: low,
        });
    }
    let breaks = envelope_breakpoints(&terms, &ExtRat::NegInf, &ExtRat::PosInf);
    let mut prev = low;
    for r in breaks {
        let idx = crate::poly::envelope(&terms, &r);
        // The slope of log|g| along the axis jumps at r by the number of roots
        // with log|t| = r.
        out.push(ZeroLocusSegment {
            logabs: ExtRat::Finite(r),
            count: idx.max_index - prev,
        });
        prev = idx.max_index;
    }
    out
}

/// `d^{-n} max(log|X_n(t)|, log|Y_n(t)|)` at a finite point where the
/// resultant does not vanish.
pub fn green_value_rational(
    lift: &RationalFamilyLift,
    n: usize,
    t: &BerkPoint,
) -> Result<BigRational> {
    if lift.resultant.eval_logabs(t)? == ExtRat::NegInf {
        return Err(Error::ResultantVanishes);
    }
    let (x, y) = lift.iterate(n)?;
    let v = x.eval_logabs(t)?.max_with(y.eval_logabs(t)?);
    let v = v.finite().cloned().ok_or(Error::ResultantVanishes)?;
    let d = BigRational::from_integer(lift.degree.into());
    Ok(v / num_traits::pow(d, n))
}

/// The level-`n` Green function of a lift as a function on `skel`.
pub fn green_function_rational(
    lift: &RationalFamilyLift,
    n: usize,
    skel: &Skeleton,
) -> Result<PLFunc> {
    let (x, y) = lift.iterate(n)?;
    let s = BigRational::one() / num_traits::pow(BigRational::from_integer(lift.degree.into()), n);
    let f = match (x.is_zero(), y.is_zero()) {
        (true, true) => return Err(Error::ResultantVanishes),
        (false, true) => pl_from_poly(&x, skel)?,
        (true, false) => pl_from_poly(&y, skel)?,
        (false, false) => pl_from_poly(&x, skel)?.max(&pl_from_poly(&y, skel)?)?,
    };
    Ok(f.scale(&s))
}
