//! Univariate polynomials over Q, and their absolute values at Berkovich
//! points via Newton polygons of Taylor coefficients.
//!
//! `|g|` at `ζ_{a,ρ}` is `max_i |g_i^{(a)}| p^{iρ}` where `g_i^{(a)}` are the
//! Taylor coefficients at `a`. Root counts in discs are read off the
//! maximizing indices, so no factorization is ever performed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::berk::{BerkPoint, Direction};
use crate::error::{Error, Result};
use crate::valfield::{format_rational, parse_rational, ExtRat, FieldCtx, LogAbs};

/// Variable tag: `z` for the dynamical variable, `t` for the parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    T,
}

impl Var {
    pub fn letter(self) -> char {
        match self {
            Var::Z => 'z',
            Var::T => 't',
        }
    }
}

/// Maximum degree an operation may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeBudget(pub usize);

impl Default for DegreeBudget {
    fn default() -> Self {
        DegreeBudget(4096)
    }
}

impl DegreeBudget {
    pub fn check(self, degree: usize) -> Result<()> {
        if degree > self.0 {
            Err(Error::DegreeBudgetExceeded {
                degree,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// Dense polynomial, coefficients in ascending degree; trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: FieldCtx,
    var: Var,
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(ctx: FieldCtx, var: Var, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { ctx, var, coeffs }
    }

    pub fn zero(ctx: FieldCtx, var: Var) -> Self {
        Self::new(ctx, var, vec![])
    }

    pub fn constant(ctx: FieldCtx, var: Var, c: BigRational) -> Self {
        Self::new(ctx, var, vec![c])
    }

    /// The variable itself.
    pub fn x(ctx: FieldCtx, var: Var) -> Self {
        Self::new(ctx, var, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_ints(ctx: FieldCtx, var: Var, coeffs: &[i64]) -> Self {
        Self::new(
            ctx,
            var,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `∏ (x - r)` over the given roots.
    pub fn from_roots(ctx: FieldCtx, var: Var, roots: &[BigRational]) -> Self {
        let mut acc = Self::constant(ctx, var, BigRational::one());
        for r in roots {
            let lin = Self::new(ctx, var, vec![-r.clone(), BigRational::one()]);
            acc = acc.mul_unchecked(&lin);
        }
        acc
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    fn compatible(&self, other: &Poly) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch(self.ctx.p(), other.ctx.p()));
        }
        if self.var != other.var {
            return Err(Error::VarMismatch(self.var.letter(), other.var.letter()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(Poly::new(self.ctx, self.var, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(
            self.ctx,
            self.var,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn add_constant(&self, c: &BigRational) -> Poly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        coeffs[0] += c;
        Poly::new(self.ctx, self.var, coeffs)
    }

    /// Integer coefficients `n_i` and a denominator `D` with `c_i = n_i / D`.
    fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        (nums, denom)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ctx, self.var);
        }
        let (a, da) = self.integer_form();
        let (b, db) = other.integer_form();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let denom = da * db;
        let coeffs = out
            .into_iter()
            .map(|n| BigRational::new(n, denom.clone()))
            .collect();
        Poly::new(self.ctx, self.var, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.mul_with_budget(other, DegreeBudget::default())
    }

    pub fn mul_with_budget(&self, other: &Poly, budget: DegreeBudget) -> Result<Poly> {
        self.compatible(other)?;
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            budget.check(a + b)?;
        }
        Ok(self.mul_unchecked(other))
    }

    pub fn pow(&self, k: u32, budget: DegreeBudget) -> Result<Poly> {
        if let Some(d) = self.degree() {
            budget.check(d * k as usize)?;
        }
        let mut acc = Poly::constant(self.ctx, self.var, BigRational::one());
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        Ok(acc)
    }

    /// `self(inner(x))` by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        self.compose_with_budget(inner, DegreeBudget::default())
    }

    pub fn compose_with_budget(&self, inner: &Poly, budget: DegreeBudget) -> Result<Poly> {
        self.compatible(inner)?;
        if let (Some(a), Some(b)) = (self.degree(), inner.degree()) {
            budget.check(a * b)?;
        }
        let mut acc = Poly::zero(self.ctx, self.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(inner).add_constant(c);
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let Some(d) = self.degree() else {
            return BigRational::zero();
        };
        let (nums, denom) = self.integer_form();
        let (u, v) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut vpow = BigInt::one();
        for n in nums.iter().rev() {
            acc = acc * u + n * &vpow;
            vpow *= v;
        }
        BigRational::new(acc, denom * num_traits::pow(v.clone(), d))
    }

    /// Taylor coefficients at `a`: `g(x) = Σ c_i (x - a)^i`.
    pub fn taylor_recenter(&self, a: &BigRational) -> Vec<BigRational> {
        if a.is_zero() || self.coeffs.len() < 2 {
            return self.coeffs.clone();
        }
        // Work over the integers: with a = u/v and D the common denominator,
        // sum e_j (u + z)^j = D v^(n-1) g(a + z/v) where e_j = D c_j v^(n-1-j).
        let n = self.coeffs.len();
        let (nums, denom) = self.integer_form();
        let (u, v) = (a.numer(), a.denom());
        let mut vpow = vec![BigInt::one(); n];
        for k in 1..n {
            vpow[k] = &vpow[k - 1] * v;
        }
        let mut e: Vec<BigInt> = nums
            .into_iter()
            .enumerate()
            .map(|(j, c)| c * &vpow[n - 1 - j])
            .collect();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &e[j + 1] * u;
                e[j] += t;
            }
        }
        e.into_iter()
            .enumerate()
            .map(|(k, f)| BigRational::new(f, &denom * &vpow[n - 1 - k]))
            .collect()
    }

    /// `logabs` of each Taylor coefficient at `a`.
    pub fn log_terms(&self, a: &BigRational) -> Vec<LogAbs> {
        self.taylor_recenter(a)
            .iter()
            .map(|c| self.ctx.logabs(c))
            .collect()
    }

    /// `log|g(x)|` at a finite Berkovich point.
    pub fn eval_logabs(&self, x: &BerkPoint) -> Result<LogAbs> {
        let d = x.as_disc().ok_or(Error::InfinityNotAllowed)?;
        if d.ctx() != self.ctx {
            return Err(Error::CtxMismatch(self.ctx.p(), d.ctx().p()));
        }
        match d.radius() {
            ExtRat::Finite(r) => Ok(envelope(&self.log_terms(d.center()), r).value),
            _ => Ok(self.ctx.logabs(&self.eval(d.center()))),
        }
    }

    /// Roots (over an algebraic closure, with multiplicity) in the closed disc
    /// `logabs(x - a) <= ρ`.
    pub fn count_roots_closed(&self, a: &BigRational, rho: &BigRational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(envelope(&self.log_terms(a), rho).max_index)
    }

    /// Roots in the open disc `logabs(x - a) < ρ`.
    pub fn count_roots_open(&self, a: &BigRational, rho: &BigRational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(envelope(&self.log_terms(a), rho).min_index)
    }

    /// Slope of `log|g|` leaving the base point of `dir`, per unit of
    /// hyperbolic length.
    pub fn directional_slope(&self, dir: &Direction) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let at = dir.at();
        let rho = at.finite_radius().ok_or(Error::TypeOnePoint)?;
        if dir.is_up() {
            let a = at.center().expect("finite base");
            Ok(self.count_roots_closed(a, rho)? as i64)
        } else {
            let b = dir.toward().center().expect("finite below a finite point");
            Ok(-(self.count_roots_open(b, rho)? as i64))
        }
    }

    /// Parses `c_k*x^k + ... + c_0`. The variable may be written as its own
    /// letter or as `x`; `*` between coefficient and variable is optional.
    pub fn parse(ctx: FieldCtx, var: Var, s: &str) -> Result<Poly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = vec![];
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigRational> = vec![];
        for term in terms {
            let (c, e) = parse_term(&term, var)?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigRational::zero());
            }
            coeffs[e] += c;
        }
        Ok(Poly::new(ctx, var, coeffs))
    }
}

fn parse_term(term: &str, var: Var) -> Result<(BigRational, usize)> {
    let bad = || Error::Parse(format!("invalid polynomial term {term:?}"));
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-BigRational::one(), &term[1..]),
        Some(b'+') => (BigRational::one(), &term[1..]),
        _ => (BigRational::one(), term),
    };
    let pos = body.find(|c: char| c == var.letter() || c == 'x');
    let (coef_str, var_part) = match pos {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let coef_str = coef_str.strip_suffix('*').unwrap_or(coef_str);
    let coef = if coef_str.is_empty() {
        if var_part.is_none() {
            return Err(bad());
        }
        BigRational::one()
    } else {
        parse_rational(coef_str).map_err(|_| bad())?
    };
    let exp = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .and_then(|e| e.parse::<usize>().ok())
            .ok_or_else(bad)?,
    };
    Ok((sign * coef, exp))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let x = self.var.letter();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => x.to_string(),
                _ => format!("{x}^{i}"),
            };
            if i == 0 {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), mono)?;
            }
        }
        Ok(())
    }
}

/// Value and extreme maximizing indices of `max_i (terms[i] + i·r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopePoint {
    pub value: LogAbs,
    pub min_index: usize,
    pub max_index: usize,
}

pub fn envelope(terms: &[LogAbs], r: &BigRational) -> EnvelopePoint {
    let mut best = EnvelopePoint {
        value: ExtRat::NegInf,
        min_index: 0,
        max_index: 0,
    };
    for (i, t) in terms.iter().enumerate() {
        let Some(t) = t.finite() else { continue };
        let v = ExtRat::Finite(t + r * BigRational::from_integer(i.into()));
        if v > best.value {
            best = EnvelopePoint {
                value: v,
                min_index: i,
                max_index: i,
            };
        } else if v == best.value {
            best.max_index = i;
        }
    }
    best
}

/// Breakpoints of the upper envelope of the lines `terms[i] + i·r` strictly
/// inside `(lo, hi)` (either bound may be infinite), in increasing order.
pub fn envelope_breakpoints(terms: &[LogAbs], lo: &LogAbs, hi: &LogAbs) -> Vec<BigRational> {
    let lines: Vec<(usize, BigRational)> = terms
        .iter()
        .enumerate()
        .filter_map(|(i, t)| t.finite().map(|t| (i, t.clone())))
        .collect();
    if lines.len() < 2 {
        return vec![];
    }
    // Upper hull by increasing slope; sweeping r upward the active index only
    // grows, so walk from the active line to the next via the smallest
    // crossing.
    let mut out = vec![];
    let mut cur = {
        // Active index just above `lo`.
        let probe = match lo {
            ExtRat::Finite(l) => EnvelopeProbe::At(l.clone()),
            _ => EnvelopeProbe::MinusInfinity,
        };
        match probe {
            EnvelopeProbe::MinusInfinity => lines[0].0,
            EnvelopeProbe::At(l) => envelope(terms, &l).max_index,
        }
    };
    loop {
        let (ci, ct) = lines.iter().find(|(i, _)| *i == cur).cloned().unwrap();
        let mut next: Option<(BigRational, usize)> = None;
        for (j, tj) in lines.iter().filter(|(j, _)| *j > ci) {
            // ct + ci r = tj + j r  =>  r = (ct - tj) / (j - ci)
            let r = (&ct - tj) / BigRational::from_integer((j - ci).into());
            let better = match &next {
                None => true,
                Some((nr, nj)) => r < *nr || (r == *nr && j > nj),
            };
            if better {
                next = Some((r, *j));
            }
        }
        let Some((r, j)) = next else { break };
        if lo.cmp_rat(&r) != std::cmp::Ordering::Less {
            // Crossing at or below lo: jump without recording.
            cur = j;
            continue;
        }
        if hi.cmp_rat(&r) != std::cmp::Ordering::Greater {
            break;
        }
        out.push(r);
        cur = j;
    }
    out
}

enum EnvelopeProbe {
    MinusInfinity,
    At(BigRational),
}
