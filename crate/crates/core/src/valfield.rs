//! Exact arithmetic in Q with the p-adic valuation.
//!
//! Absolute values are always handled in logarithmic coordinates with base p:
//! `logabs(x) = -v_p(x)`, so `|x| = p^logabs(x)`. Converting to natural-log
//! units multiplies every quantity by `ln p`; all identities are homogeneous
//! so nothing else changes.
//!
//! The backend field is Q, whose value group is Z. Radii of Berkovich points
//! are free rational parameters, so type-3 points stay representable even
//! though no element of Q has a non-integral `logabs`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: Q with the valuation attached to a fixed prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldCtx {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldCtx { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn p_big(&self) -> BigInt {
        BigInt::from(self.p)
    }

    pub fn elem(&self, value: BigRational) -> KElem {
        KElem { value, ctx: *self }
    }

    pub fn int(&self, n: i64) -> KElem {
        self.elem(BigRational::from_integer(n.into()))
    }

    /// `v_p` of a nonzero integer.
    pub fn int_valuation(&self, n: &BigInt) -> i64 {
        debug_assert!(!n.is_zero());
        let p = self.p_big();
        let mut n = n.abs();
        let mut v = 0;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    }

    /// `v_p(x)`, with `None` standing for `+inf` (x = 0).
    pub fn valuation(&self, x: &BigRational) -> Option<i64> {
        if x.is_zero() {
            None
        } else {
            Some(self.int_valuation(x.numer()) - self.int_valuation(x.denom()))
        }
    }

    /// `-v_p(x)`; `-inf` for zero.
    pub fn logabs(&self, x: &BigRational) -> ExtRat {
        match self.valuation(x) {
            None => ExtRat::NegInf,
            Some(v) => ExtRat::from_int(-v),
        }
    }

    /// The unit part `x / p^{v(x)}` and `v(x)` of a nonzero rational.
    pub fn split_unit(&self, x: &BigRational) -> (BigRational, i64) {
        let v = self.valuation(x).expect("split_unit of zero");
        (x / pow_p(self.p, v), v)
    }

    /// `p^k` as a rational (k may be negative).
    pub fn pow(&self, k: i64) -> BigRational {
        pow_p(self.p, k)
    }
}

pub(crate) fn pow_p(p: u64, k: i64) -> BigRational {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// An element of the coefficient field, tagged with its prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KElem {
    value: BigRational,
    ctx: FieldCtx,
}

impl KElem {
    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn into_value(self) -> BigRational {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.ctx.valuation(&self.value)
    }

    pub fn logabs(&self) -> ExtRat {
        self.ctx.logabs(&self.value)
    }

    fn same_ctx(&self, other: &KElem) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::CtxMismatch(self.ctx.p, other.ctx.p))
        }
    }

    pub fn add(&self, other: &KElem) -> Result<KElem> {
        self.same_ctx(other)?;
        Ok(self.ctx.elem(&self.value + &other.value))
    }

    pub fn sub(&self, other: &KElem) -> Result<KElem> {
        self.same_ctx(other)?;
        Ok(self.ctx.elem(&self.value - &other.value))
    }

    pub fn mul(&self, other: &KElem) -> Result<KElem> {
        self.same_ctx(other)?;
        Ok(self.ctx.elem(&self.value * &other.value))
    }

    pub fn div(&self, other: &KElem) -> Result<KElem> {
        self.same_ctx(other)?;
        if other.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.ctx.elem(&self.value / &other.value))
    }

    pub fn pow(&self, k: i32) -> Result<KElem> {
        if k < 0 && self.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.ctx.elem(num_traits::Pow::pow(&self.value, k)))
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.value))
    }
}

/// A rational number extended by `-inf` and `+inf`.
///
/// Used for log-absolute-values and log-radii (never `+inf` there) and for
/// energies and kernel values. The derived order puts `NegInf` below every
/// finite value and `PosInf` above.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRat {
    NegInf,
    Finite(BigRational),
    PosInf,
}

/// Log-absolute-value in base-p units.
pub type LogAbs = ExtRat;

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtRat::Finite(BigRational::from_integer(n.into()))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRat::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    /// Multiplication by a finite rational scalar; `0 * inf = 0`.
    pub fn scale(&self, c: &BigRational) -> ExtRat {
        if c.is_zero() {
            return ExtRat::zero();
        }
        match self {
            ExtRat::Finite(r) => ExtRat::Finite(r * c),
            ExtRat::NegInf if c.is_positive() => ExtRat::NegInf,
            ExtRat::NegInf => ExtRat::PosInf,
            ExtRat::PosInf if c.is_positive() => ExtRat::PosInf,
            ExtRat::PosInf => ExtRat::NegInf,
        }
    }

    /// Sum, or `None` for the indeterminate `inf - inf`.
    pub fn checked_add(&self, other: &ExtRat) -> Option<ExtRat> {
        use ExtRat::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
            (NegInf, PosInf) | (PosInf, NegInf) => None,
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (PosInf, _) | (_, PosInf) => Some(PosInf),
        }
    }

    pub fn add_rat(&self, r: &BigRational) -> ExtRat {
        match self {
            ExtRat::Finite(a) => ExtRat::Finite(a + r),
            other => other.clone(),
        }
    }

    pub fn max_with(self, other: ExtRat) -> ExtRat {
        std::cmp::max(self, other)
    }

    /// `max(0, self)` as a finite value if possible.
    pub fn pos_part(&self) -> ExtRat {
        match self {
            ExtRat::NegInf => ExtRat::zero(),
            ExtRat::Finite(r) if r.is_negative() => ExtRat::zero(),
            other => other.clone(),
        }
    }

    pub fn cmp_rat(&self, r: &BigRational) -> Ordering {
        match self {
            ExtRat::NegInf => Ordering::Less,
            ExtRat::PosInf => Ordering::Greater,
            ExtRat::Finite(a) => a.cmp(r),
        }
    }

    /// Integer part test used for type classification.
    pub fn is_integer(&self) -> bool {
        matches!(self, ExtRat::Finite(r) if r.is_integer())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRat::NegInf => f64::NEG_INFINITY,
            ExtRat::PosInf => f64::INFINITY,
            ExtRat::Finite(r) => rational_to_f64(r),
        }
    }
}

impl From<BigRational> for ExtRat {
    fn from(r: BigRational) -> Self {
        ExtRat::Finite(r)
    }
}

impl Add for ExtRat {
    type Output = ExtRat;

    /// Panics on `inf + (-inf)`; callers rule that case out beforehand.
    fn add(self, other: ExtRat) -> ExtRat {
        self.checked_add(&other)
            .expect("indeterminate sum inf + (-inf)")
    }
}

impl Neg for ExtRat {
    type Output = ExtRat;

    fn neg(self) -> ExtRat {
        match self {
            ExtRat::NegInf => ExtRat::PosInf,
            ExtRat::PosInf => ExtRat::NegInf,
            ExtRat::Finite(r) => ExtRat::Finite(-r),
        }
    }
}

impl Sub for ExtRat {
    type Output = ExtRat;

    fn sub(self, other: ExtRat) -> ExtRat {
        self + (-other)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => f.write_str("-inf"),
            ExtRat::PosInf => f.write_str("inf"),
            ExtRat::Finite(r) => f.write_str(&format_rational(r)),
        }
    }
}

/// Canonical `a/b` or `a` form, lowest terms with `b > 0`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Parses a rational or one of the literals `inf`, `-inf`.
pub fn parse_ext(s: &str) -> Result<ExtRat> {
    match s.trim() {
        "inf" | "+inf" => Ok(ExtRat::PosInf),
        "-inf" => Ok(ExtRat::NegInf),
        other => parse_rational(other).map(ExtRat::Finite),
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(ctx(3).valuation(&rat(9, 2)), Some(2));
        assert_eq!(ctx(2).valuation(&int(0)), None);
        assert_eq!(ctx(2).valuation(&int(12)), Some(2));
    }

    #[test]
    fn logabs_examples() {
        assert_eq!(ctx(3).logabs(&rat(1, 3)), ExtRat::from_int(1));
        assert_eq!(ctx(5).logabs(&int(7)), ExtRat::from_int(0));
        assert_eq!(ctx(2).logabs(&int(4)), ExtRat::from_int(-2));
        assert_eq!(ctx(2).logabs(&int(0)), ExtRat::NegInf);
    }

    #[test]
    fn field_op_examples() {
        let k = ctx(3);
        let half = k.elem(rat(1, 2));
        assert_eq!(half.add(&half).unwrap(), k.int(1));
        assert_eq!(k.int(3).mul(&k.elem(rat(1, 3))).unwrap(), k.int(1));
        assert_eq!(
            k.int(9).add(&k.int(1)).unwrap().logabs(),
            ExtRat::from_int(0)
        );
        assert_eq!(k.int(1).div(&k.int(0)), Err(Error::DivisionByZero));
        assert_eq!(k.int(1).add(&ctx(5).int(1)), Err(Error::CtxMismatch(3, 5)));
        assert_eq!(k.int(3).pow(-2).unwrap(), k.elem(rat(1, 9)));
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(FieldCtx::new(6), Err(Error::NotPrime(6)));
        assert_eq!(FieldCtx::new(1), Err(Error::NotPrime(1)));
        assert!(FieldCtx::new(2).is_ok());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(format_rational(&rat(-4, 6)), "-2/3");
        assert_eq!(format_rational(&rat(3, -1)), "-3");
        assert_eq!(ExtRat::NegInf.to_string(), "-inf");
        assert_eq!(ExtRat::PosInf.to_string(), "inf");
        assert_eq!(parse_ext("-inf").unwrap(), ExtRat::NegInf);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn ext_order() {
        assert!(ExtRat::NegInf < ExtRat::from_int(-1000));
        assert!(ExtRat::from_int(1000) < ExtRat::PosInf);
        assert_eq!(ExtRat::NegInf.scale(&int(-2)), ExtRat::PosInf);
        assert_eq!(ExtRat::PosInf.checked_add(&ExtRat::NegInf), None);
    }

    fn arb_rat() -> impl Strategy<Value = BigRational> {
        (-2000i64..2000, 1i64..2000).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn logabs_is_multiplicative(x in arb_rat(), y in arb_rat(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let k = ctx(p);
            let lhs = k.logabs(&(&x * &y));
            let rhs = k.logabs(&x).checked_add(&k.logabs(&y)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ultrametric(x in arb_rat(), y in arb_rat(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let k = ctx(p);
            let (lx, ly) = (k.logabs(&x), k.logabs(&y));
            let ls = k.logabs(&(&x + &y));
            let m = lx.clone().max_with(ly.clone());
            if lx != ly {
                prop_assert_eq!(ls, m);
            } else {
                prop_assert!(ls <= m);
            }
        }

        #[test]
        fn valuation_is_homomorphism(x in arb_rat(), y in arb_rat()) {
            prop_assume!(!x.is_zero() && !y.is_zero());
            let k = ctx(3);
            let vx = k.valuation(&x).unwrap();
            let vy = k.valuation(&y).unwrap();
            prop_assert_eq!(k.valuation(&(&x / &y)), Some(vx - vy));
        }
    }
}
