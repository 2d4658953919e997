//! Energies, equilibrium measures, potentials and Arakelov–Green functions for
//! atomic measures.
//!
//! A compact region is a finite union of closed discs and classical points.
//! The equilibrium measure of such a region lives on the boundary points of
//! its maximal discs, so the minimization is a finite quadratic program over
//! the simplex, solved exactly.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::berk::{generalized_hsia, BerkPoint};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::measure::Measure;
use crate::skeleton::{radius_of, Affine, PLFunc, Skeleton};
use crate::valfield::{ExtRat, FieldCtx};

/// Union of the closed discs `{x <= piece}` over the pieces. Pieces are
/// pairwise incomparable and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactRegion {
    ctx: FieldCtx,
    pieces: Vec<BerkPoint>,
}

impl CompactRegion {
    /// Closed discs `(center, log-radius)` together with classical points.
    pub fn new(
        ctx: FieldCtx,
        discs: &[(BigRational, BigRational)],
        points: &[BigRational],
    ) -> Result<Self> {
        let mut all: Vec<BerkPoint> = discs
            .iter()
            .map(|(a, r)| BerkPoint::disc_rat(ctx, a.clone(), r.clone()))
            .collect();
        all.extend(points.iter().map(|a| BerkPoint::classical(ctx, a.clone())));
        Self::from_points(ctx, all)
    }

    /// Each point stands for the closed disc below it.
    pub fn from_points(ctx: FieldCtx, points: Vec<BerkPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyRegion);
        }
        for x in &points {
            match x.ctx() {
                None => return Err(Error::InfinityNotAllowed),
                Some(c) if c != ctx => return Err(Error::CtxMismatch(ctx.p(), c.p())),
                _ => {}
            }
        }
        let mut pieces: Vec<BerkPoint> = points
            .iter()
            .filter(|x| !points.iter().any(|y| y != *x && x.leq(y)))
            .cloned()
            .collect();
        pieces.sort();
        pieces.dedup();
        Ok(CompactRegion { ctx, pieces })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    /// Maximal discs; their boundary points carry the equilibrium measure.
    pub fn pieces(&self) -> &[BerkPoint] {
        &self.pieces
    }

    pub fn contains(&self, x: &BerkPoint) -> bool {
        self.pieces.iter().any(|d| x.leq(d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyReport {
    /// Robin constant in base-p log units.
    pub robin: ExtRat,
    pub capacity_log: ExtRat,
    pub minimizer: Measure,
    /// The boundary points the minimization ranged over.
    pub candidates: Vec<BerkPoint>,
    pub base: BerkPoint,
}

fn kernel(x: &BerkPoint, y: &BerkPoint, zeta: &BerkPoint) -> Result<ExtRat> {
    Ok(-generalized_hsia(x, y, zeta)?)
}

/// `I_ζ(μ) = ∬ -log δ(x,y)_ζ dμ dμ`; `+inf` when a classical atom carries
/// mass.
pub fn energy(mu: &Measure, zeta: &BerkPoint) -> Result<ExtRat> {
    let atoms: Vec<(&BerkPoint, &BigRational)> = mu.atoms().collect();
    let mut total = ExtRat::zero();
    for (x, wx) in &atoms {
        for (y, wy) in &atoms {
            let term = kernel(x, y, zeta)?.scale(&(*wx * *wy));
            total = total.checked_add(&term).ok_or(Error::KernelPole)?;
        }
    }
    Ok(total)
}

fn kernel_matrix(points: &[BerkPoint], zeta: &BerkPoint) -> Result<Matrix> {
    points
        .iter()
        .map(|x| {
            points
                .iter()
                .map(|y| {
                    kernel(x, y, zeta)?
                        .finite()
                        .cloned()
                        .ok_or(Error::KernelPole)
                })
                .collect()
        })
        .collect()
}

/// Minimizes `wᵀGw` over the simplex spanned by `active`: solves
/// `G_S w = λ·1, Σ w = 1`.
fn stationary_point(g: &Matrix, active: &[usize]) -> Result<(Vec<BigRational>, BigRational)> {
    let n = active.len();
    let mut a: Matrix = active
        .iter()
        .map(|&i| {
            let mut row: Vec<BigRational> = active.iter().map(|&j| g[i][j].clone()).collect();
            row.push(-BigRational::one());
            row
        })
        .collect();
    let mut last = vec![BigRational::one(); n];
    last.push(BigRational::zero());
    a.push(last);
    let mut b = vec![BigRational::zero(); n];
    b.push(BigRational::one());
    let mut x = solve(a, b)?;
    let lambda = x.pop().expect("multiplier");
    Ok((x, lambda))
}

/// Equilibrium measure, Robin constant and capacity of `region` relative to
/// `zeta`.
pub fn equilibrium(region: &CompactRegion, zeta: &BerkPoint) -> Result<EnergyReport> {
    if region.contains(zeta) {
        return Err(Error::BaseInRegion);
    }
    let candidates: Vec<BerkPoint> = region
        .pieces()
        .iter()
        .filter(|x| !x.is_classical())
        .cloned()
        .collect();
    if candidates.is_empty() {
        return Err(Error::ZeroCapacity);
    }
    let g = kernel_matrix(&candidates, zeta)?;
    let n = candidates.len();
    let mut active: Vec<usize> = (0..n).collect();
    // Each pass either removes a negative weight or re-adds a violated
    // constraint; the bound only guards against cycling from a bug.
    for _ in 0..(4 * n * n + 8) {
        let (w, lambda) = stationary_point(&g, &active)?;
        if let Some((k, _)) = w
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_negative())
            .min_by(|a, b| a.1.cmp(b.1))
        {
            active.remove(k);
            continue;
        }
        let potential =
            |j: usize| -> BigRational { active.iter().zip(&w).map(|(&i, wi)| &g[j][i] * wi).sum() };
        let violated = (0..n)
            .filter(|j| !active.contains(j))
            .map(|j| (j, potential(j)))
            .filter(|(_, v)| v < &lambda)
            .min_by(|a, b| a.1.cmp(&b.1));
        if let Some((j, _)) = violated {
            active.push(j);
            active.sort_unstable();
            continue;
        }
        let minimizer = Measure::from_atoms(
            active
                .iter()
                .zip(w)
                .map(|(&i, wi)| (candidates[i].clone(), wi)),
        );
        return Ok(EnergyReport {
            robin: ExtRat::Finite(lambda.clone()),
            capacity_log: ExtRat::Finite(-lambda),
            minimizer,
            candidates,
            base: zeta.clone(),
        });
    }
    Err(Error::Singular)
}

/// The potential `u` on `skel` with `Δu = δ_ζ - μ` and `u(ζ) = 0`. The
/// skeleton is refined so that `ζ` and every atom are vertices.
pub fn potential_fn(mu: &Measure, zeta: &BerkPoint, skel: &Skeleton) -> Result<PLFunc> {
    if !mu.is_probability() {
        return Err(Error::NotProbability);
    }
    if zeta.is_classical() || !skel.contains(zeta) {
        return Err(Error::TypeOneBasePoint);
    }
    let support = mu.support();
    if support.iter().any(|x| !skel.contains(x)) {
        return Err(Error::AtomOffSkeleton);
    }
    let mut marks = support.clone();
    marks.push(zeta.clone());
    let s = skel.refine(&marks);
    let n = s.vertices().len();
    let slope = |c: usize| -> BigRational {
        let v = s.vertex(c);
        let below: BigRational = mu
            .atoms()
            .filter(|(x, _)| x.leq(v))
            .map(|(_, w)| w.clone())
            .sum();
        if zeta.leq(v) {
            below - BigRational::one()
        } else {
            below
        }
    };
    // Values at vertices of finite radius, spreading out from ζ.
    let mut value: Vec<Option<BigRational>> = vec![None; n];
    let root = s.index_of(zeta).expect("inserted");
    value[root] = Some(BigRational::zero());
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        let uv = value[v].clone().expect("visited");
        let rv = radius_of(s.vertex(v));
        let mut neighbours: Vec<(usize, BigRational, bool)> =
            s.children(v).map(|c| (c, slope(c), false)).collect();
        if let Some(q) = s.parent(v) {
            neighbours.push((q, slope(v), true));
        }
        for (w, sl, upward) in neighbours {
            if value[w].is_some() {
                continue;
            }
            let (Some(rw), Some(rv)) = (radius_of(s.vertex(w)).finite().cloned(), rv.finite())
            else {
                continue;
            };
            let delta = if upward { &rw - rv } else { rv - &rw };
            let step = &sl * delta;
            value[w] = Some(if upward { &uv + step } else { &uv - step });
            stack.push(w);
        }
    }
    let pieces = (0..n)
        .map(|c| {
            s.parent(c)?;
            let sl = slope(c);
            let (anchor, r) = match (radius_of(s.vertex(c)).finite(), &value[c]) {
                (Some(r), Some(u)) => (u.clone(), r.clone()),
                _ => {
                    let q = s.parent(c).expect("edge");
                    let r = radius_of(s.vertex(q))
                        .finite()
                        .cloned()
                        .expect("an edge has a finite end");
                    (value[q].clone().expect("reached"), r)
                }
            };
            Some(Affine {
                intercept: anchor - &sl * r,
                slope: sl,
            })
        })
        .collect();
    Ok(PLFunc::from_pieces(s, pieces, ExtRat::zero()))
}

/// `g_μ(x,y) = ∫ -log δ(x,y)_ζ dμ(ζ) + C`, normalized by `∬ g_μ dμ dμ = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArakelovGreen {
    mu: Measure,
    constant: BigRational,
}

impl ArakelovGreen {
    /// `μ` must be a probability measure without classical atoms.
    pub fn new(mu: &Measure) -> Result<Self> {
        if !mu.is_probability() {
            return Err(Error::NotProbability);
        }
        if mu.atoms().any(|(x, _)| x.is_classical()) {
            return Err(Error::TypeOnePoint);
        }
        let mut g = ArakelovGreen {
            mu: mu.clone(),
            constant: BigRational::zero(),
        };
        let raw = g.energy(mu)?;
        g.constant = -raw.finite().cloned().ok_or(Error::KernelPole)?;
        Ok(g)
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    pub fn measure(&self) -> &Measure {
        &self.mu
    }

    /// `+inf` on the diagonal at a classical point.
    pub fn eval(&self, x: &BerkPoint, y: &BerkPoint) -> Result<ExtRat> {
        let mut total = ExtRat::Finite(self.constant.clone());
        for (z, w) in self.mu.atoms() {
            total = total + kernel(x, y, z)?.scale(w);
        }
        Ok(total)
    }

    /// `I_μ(ρ) = ∬ g_μ dρ dρ`.
    pub fn energy(&self, rho: &Measure) -> Result<ExtRat> {
        let atoms: Vec<(&BerkPoint, &BigRational)> = rho.atoms().collect();
        let mut total = ExtRat::zero();
        for (x, wx) in &atoms {
            for (y, wy) in &atoms {
                let term = self.eval(x, y)?.scale(&(*wx * *wy));
                total = total.checked_add(&term).ok_or(Error::KernelPole)?;
            }
        }
        Ok(total)
    }
}

/// A random probability measure on `points` with small integer weights.
pub fn random_probability<R: Rng>(points: &[BerkPoint], rng: &mut R) -> Measure {
    loop {
        let weights: Vec<i64> = points.iter().map(|_| rng.gen_range(0..=6)).collect();
        let total: i64 = weights.iter().sum();
        if total == 0 {
            continue;
        }
        return Measure::from_atoms(
            points
                .iter()
                .zip(weights)
                .map(|(x, w)| (x.clone(), BigRational::new(w.into(), total.into()))),
        );
    }
}

/// `μ + ε(δ_x - δ_y)` for random candidates and a random admissible `ε`.
fn random_perturbation<R: Rng>(mu: &Measure, points: &[BerkPoint], rng: &mut R) -> Measure {
    let x = &points[rng.gen_range(0..points.len())];
    let y = &points[rng.gen_range(0..points.len())];
    let room = mu.mass_at(y);
    let eps = if room.is_positive() {
        room * BigRational::new(rng.gen_range(1..=8).into(), 8.into())
    } else {
        BigRational::zero()
    };
    let mut rho = mu.clone();
    rho.add_atom(x.clone(), eps.clone());
    rho.add_atom(y.clone(), -eps);
    rho
}

/// Energy-minimizing principle on the candidate set of an equilibrium
/// computation. For `trials` random probability measures `ρ` (random draws
/// and perturbations of `μ`) checks both `I_μ(μ) <= I_μ(ρ)` for the
/// Arakelov–Green energy and `I_ζ(μ) <= I_ζ(ρ)`, strictly when `ρ ≠ μ`.
pub fn emp_check<R: Rng>(
    mu: &Measure,
    candidates: &[BerkPoint],
    zeta: &BerkPoint,
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    let green = ArakelovGreen::new(mu)?;
    let own = green.energy(mu)?;
    let base = energy(mu, zeta)?;
    for t in 0..trials {
        let rho = if t % 2 == 0 {
            random_probability(candidates, rng)
        } else {
            random_perturbation(mu, candidates, rng)
        };
        let e_green = green.energy(&rho)?;
        let e_base = energy(&rho, zeta)?;
        let ok = if rho == *mu {
            e_green == own && e_base == base
        } else {
            e_green > own && e_base > base
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
