//! Points of the Berkovich projective line of types 1, 2 and 3, the
//! containment order, joins, and the Hsia-type kernels.
//!
//! A finite point is a closed disc `ζ_{a,ρ}` given by a center and a
//! log-radius `ρ` (base p); `ρ = -inf` is the classical point `a`. Centers are
//! not unique, so every constructor replaces the center by a canonical
//! representative of the disc. Structural equality, hashing and ordering are
//! therefore semantic: two values compare equal iff they are the same disc.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::valfield::{format_rational, ExtRat, FieldCtx, LogAbs};

/// Point type. The point at infinity is classical.
///
/// Types 2 and 3 are distinguished relative to the value group Z of the
/// backend field; over an algebraically closed complete field the value group
/// is dense and the distinction would be drawn differently. Nothing computed
/// here depends on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointType {
    One,
    Two,
    Three,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Disc {
    ctx: FieldCtx,
    center: BigRational,
    radius: LogAbs,
}

impl Disc {
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn center(&self) -> &BigRational {
        &self.center
    }

    /// Log-radius, `-inf` for a classical point.
    pub fn radius(&self) -> &LogAbs {
        &self.radius
    }
}

/// A point of the Berkovich projective line. `Infinity` is the maximum of the
/// containment order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BerkPoint {
    Finite(Disc),
    Infinity,
}

const CANON_SEARCH_CAP: u64 = 100_000;

/// Minimal-height representative of the disc `{z : logabs(z - a) <= ρ}`.
///
/// Height is `|numerator| + denominator`; ties go to the numerically smaller
/// value. The search enumerates denominators and, for each, the balanced
/// residue numerator, which depends only on the disc and not on `a`. Past
/// `CANON_SEARCH_CAP` denominators the best candidate so far is returned,
/// which is still a function of the disc alone.
fn canonical_center(ctx: FieldCtx, a: &BigRational, radius: &LogAbs) -> BigRational {
    let rho = match radius {
        ExtRat::NegInf => return a.clone(),
        ExtRat::Finite(r) => r,
        ExtRat::PosInf => unreachable!("infinite radius handled by caller"),
    };
    // Membership: v(z - a) >= k.
    let k = (-rho)
        .ceil()
        .to_integer()
        .to_i64()
        .expect("log-radius out of range");
    let v = match ctx.valuation(a) {
        None => return BigRational::zero(),
        Some(v) if v >= k => return BigRational::zero(),
        Some(v) => v,
    };
    let p = ctx.p_big();
    let e_min = 0i64.max(-v).max(1 - k);
    let q = num_traits::pow(p.clone(), e_min as usize);
    let mut best: Option<(BigInt, BigRational)> = None;
    let mut j = BigInt::one();
    let mut steps = 0u64;
    loop {
        let d = &q * &j;
        if let Some((h, _)) = &best {
            if &d + BigInt::one() > *h || steps >= CANON_SEARCH_CAP {
                break;
            }
        }
        steps += 1;
        let e = e_min + ctx.int_valuation(&j);
        let m = k + e;
        let modulus = num_traits::pow(p.clone(), m as usize);
        let ad = a * BigRational::from_integer(d.clone());
        let inv = ad.denom().extended_gcd(&modulus).x.mod_floor(&modulus);
        let res = (ad.numer() * inv).mod_floor(&modulus);
        let alt = &res - &modulus;
        let mut cands = vec![];
        match res.abs().cmp(&alt.abs()) {
            std::cmp::Ordering::Less => cands.push(res),
            std::cmp::Ordering::Greater => cands.push(alt),
            std::cmp::Ordering::Equal => {
                cands.push(res);
                cands.push(alt);
            }
        }
        for n in cands {
            let val = BigRational::new(n, d.clone());
            let h = val.numer().abs() + val.denom();
            let better = match &best {
                None => true,
                Some((bh, bv)) => h < *bh || (h == *bh && val < *bv),
            };
            if better {
                best = Some((h, val));
            }
        }
        j += 1;
    }
    best.expect("search visits at least one denominator").1
}

fn same_ctx(a: FieldCtx, b: FieldCtx) {
    assert_eq!(a, b, "Berkovich points over different primes");
}

fn check_ctx(a: FieldCtx, b: FieldCtx) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::CtxMismatch(a.p(), b.p()))
    }
}

impl BerkPoint {
    /// The disc point `ζ_{a,p^ρ}`; `ρ = -inf` gives the classical point and
    /// `ρ = +inf` the point at infinity.
    pub fn disc(ctx: FieldCtx, center: BigRational, radius: LogAbs) -> BerkPoint {
        if radius == ExtRat::PosInf {
            return BerkPoint::Infinity;
        }
        let center = canonical_center(ctx, &center, &radius);
        BerkPoint::Finite(Disc {
            ctx,
            center,
            radius,
        })
    }

    pub fn disc_rat(ctx: FieldCtx, center: BigRational, radius: BigRational) -> BerkPoint {
        Self::disc(ctx, center, ExtRat::Finite(radius))
    }

    pub fn classical(ctx: FieldCtx, a: BigRational) -> BerkPoint {
        Self::disc(ctx, a, ExtRat::NegInf)
    }

    /// The Gauss point `ζ_{0,1}` (log-radius 0).
    pub fn gauss(ctx: FieldCtx) -> BerkPoint {
        Self::disc(ctx, BigRational::zero(), ExtRat::zero())
    }

    pub fn as_disc(&self) -> Option<&Disc> {
        match self {
            BerkPoint::Finite(d) => Some(d),
            BerkPoint::Infinity => None,
        }
    }

    pub fn ctx(&self) -> Option<FieldCtx> {
        self.as_disc().map(|d| d.ctx)
    }

    pub fn center(&self) -> Option<&BigRational> {
        self.as_disc().map(|d| &d.center)
    }

    /// Log-radius; `None` for infinity.
    pub fn radius(&self) -> Option<&LogAbs> {
        self.as_disc().map(|d| &d.radius)
    }

    /// Finite log-radius of a type-2 or type-3 point.
    pub fn finite_radius(&self) -> Option<&BigRational> {
        self.radius().and_then(|r| r.finite())
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BerkPoint::Infinity)
    }

    pub fn point_type(&self) -> PointType {
        match self.radius() {
            None | Some(ExtRat::NegInf) => PointType::One,
            Some(r) if r.is_integer() => PointType::Two,
            Some(_) => PointType::Three,
        }
    }

    pub fn is_classical(&self) -> bool {
        self.point_type() == PointType::One
    }

    /// Disc containment; infinity is the maximum.
    pub fn leq(&self, other: &BerkPoint) -> bool {
        match (self, other) {
            (_, BerkPoint::Infinity) => true,
            (BerkPoint::Infinity, _) => false,
            (BerkPoint::Finite(x), BerkPoint::Finite(y)) => {
                same_ctx(x.ctx, y.ctx);
                x.radius <= y.radius && x.ctx.logabs(&(&x.center - &y.center)) <= y.radius
            }
        }
    }

    /// Smallest point above both arguments.
    pub fn join(&self, other: &BerkPoint) -> BerkPoint {
        match (self, other) {
            (BerkPoint::Infinity, _) | (_, BerkPoint::Infinity) => BerkPoint::Infinity,
            (BerkPoint::Finite(x), BerkPoint::Finite(y)) => {
                same_ctx(x.ctx, y.ctx);
                let r = x
                    .ctx
                    .logabs(&(&x.center - &y.center))
                    .max_with(x.radius.clone())
                    .max_with(y.radius.clone());
                BerkPoint::disc(x.ctx, x.center.clone(), r)
            }
        }
    }

    /// `log|x|` extended to discs: the log-radius of the join with 0.
    pub fn log_abs(&self) -> Result<LogAbs> {
        let d = self.as_disc().ok_or(Error::InfinityNotAllowed)?;
        Ok(d.ctx.logabs(&d.center).max_with(d.radius.clone()))
    }
}

/// `log δ(x,y)_∞`: the log-diameter of the smallest disc containing both.
pub fn hsia_inf(x: &BerkPoint, y: &BerkPoint) -> Result<LogAbs> {
    let (dx, dy) = match (x, y) {
        (BerkPoint::Finite(dx), BerkPoint::Finite(dy)) => (dx, dy),
        _ => return Err(Error::InfinityNotAllowed),
    };
    check_ctx(dx.ctx, dy.ctx)?;
    Ok(dx
        .ctx
        .logabs(&(&dx.center - &dy.center))
        .max_with(dx.radius.clone())
        .max_with(dy.radius.clone()))
}

/// `log δ(x,y)_{ζ_{0,1}}`, the spherical kernel. Always `<= 0`.
pub fn spherical(x: &BerkPoint, y: &BerkPoint) -> Result<LogAbs> {
    match (x, y) {
        (BerkPoint::Infinity, BerkPoint::Infinity) => Ok(ExtRat::NegInf),
        (BerkPoint::Infinity, f) | (f, BerkPoint::Infinity) => Ok(-f.log_abs()?.pos_part()),
        (f, g) => {
            let h = hsia_inf(f, g)?;
            Ok(h - f.log_abs()?.pos_part() - g.log_abs()?.pos_part())
        }
    }
}

/// Generalized Hsia kernel `log δ(x,y)_ζ`, normalized so that `ζ = ∞`
/// reproduces [`hsia_inf`] exactly.
pub fn generalized_hsia(x: &BerkPoint, y: &BerkPoint, zeta: &BerkPoint) -> Result<LogAbs> {
    if zeta.is_classical() && (zeta == x || zeta == y) {
        return Err(Error::KernelPole);
    }
    let sxy = spherical(x, y)?;
    let sxz = spherical(x, zeta)?;
    let syz = spherical(y, zeta)?;
    Ok(sxy - sxz - syz)
}

/// Hyperbolic path length between two type-2/3 points.
pub fn path_length(x: &BerkPoint, y: &BerkPoint) -> Result<BigRational> {
    let (rx, ry) = match (x.radius(), y.radius()) {
        (Some(rx), Some(ry)) => (rx, ry),
        _ => return Err(Error::InfinityNotAllowed),
    };
    let (rx, ry) = match (rx.finite(), ry.finite()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::TypeOnePoint),
    };
    let j = hsia_inf(x, y)?;
    let j = j
        .finite()
        .expect("join of non-classical points is non-classical");
    Ok(j * BigRational::from_integer(2.into()) - rx - ry)
}

/// A tangent direction at a type-2/3 point: the component of the complement
/// of `at` that contains `toward`.
#[derive(Debug, Clone)]
pub struct Direction {
    at: BerkPoint,
    toward: BerkPoint,
}

impl Direction {
    pub fn new(at: BerkPoint, toward: BerkPoint) -> Result<Self> {
        if at.is_classical() {
            return Err(Error::TypeOnePoint);
        }
        if at == toward {
            return Err(Error::Parse("direction toward its own base point".into()));
        }
        if let (Some(a), Some(b)) = (at.ctx(), toward.ctx()) {
            check_ctx(a, b)?;
        }
        Ok(Direction { at, toward })
    }

    /// Direction from `at` toward infinity.
    pub fn up(at: BerkPoint) -> Result<Self> {
        Self::new(at, BerkPoint::Infinity)
    }

    pub fn at(&self) -> &BerkPoint {
        &self.at
    }

    pub fn toward(&self) -> &BerkPoint {
        &self.toward
    }

    /// True for the unique direction containing infinity.
    pub fn is_up(&self) -> bool {
        !self.toward.leq(&self.at)
    }

    fn at_radius(&self) -> &BigRational {
        self.at.finite_radius().expect("validated at construction")
    }

    /// A point at hyperbolic distance `s > 0` from the base, inside this
    /// direction.
    pub fn point_at(&self, s: &BigRational) -> BerkPoint {
        let d = self.at.as_disc().expect("validated at construction");
        if self.is_up() {
            BerkPoint::disc_rat(d.ctx, d.center.clone(), self.at_radius() + s)
        } else {
            let b = self.toward.center().expect("finite below a finite point");
            BerkPoint::disc_rat(d.ctx, b.clone(), self.at_radius() - s)
        }
    }
}

impl PartialEq for Direction {
    fn eq(&self, other: &Self) -> bool {
        if self.at != other.at {
            return false;
        }
        match (self.is_up(), other.is_up()) {
            (true, true) => true,
            (false, false) => {
                let ctx = self.at.ctx().expect("finite base");
                let b1 = self.toward.center().expect("finite");
                let b2 = other.toward.center().expect("finite");
                ctx.logabs(&(b1 - b2)).cmp_rat(self.at_radius()) == std::cmp::Ordering::Less
            }
            _ => false,
        }
    }
}

impl Eq for Direction {}

fn radius_label(ctx: FieldCtx, r: &BigRational) -> String {
    if r.is_integer() {
        let k = r.to_integer().to_i64().expect("radius out of range");
        format_rational(&ctx.pow(k))
    } else {
        format!("{}^({})", ctx.p(), format_rational(r))
    }
}

impl fmt::Display for BerkPoint {
    /// `ζ_{a,r}` with the radius `r = p^ρ` printed exactly, `a` for a
    /// classical point and `∞` for infinity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BerkPoint::Infinity => f.write_str("∞"),
            BerkPoint::Finite(d) => match &d.radius {
                ExtRat::Finite(r) => write!(
                    f,
                    "ζ_{{{},{}}}",
                    format_rational(&d.center),
                    radius_label(d.ctx, r)
                ),
                _ => f.write_str(&format_rational(&d.center)),
            },
        }
    }
}
