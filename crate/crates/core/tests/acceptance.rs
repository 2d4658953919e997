//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails other than those listed in
//! `KNOWN_UNATTAINABLE`, which must fail in exactly the documented way.

use std::time::{Duration, Instant};

use berkdyn::dynamics::{
    activity_measure_approx, boundedness_profile, green_function_rational, green_tail_bound,
    green_value, iterate_marked, pullback_dirac, MarkedPoint, PolyFamily, RationalFamilyLift,
};
use berkdyn::potential::{emp_check, equilibrium, potential_fn, random_probability, CompactRegion};
use berkdyn::skeleton::PLFunc;
use berkdyn::valfield::{int, rat};
use berkdyn::{BerkPoint, FieldCtx, Measure, Poly, Skeleton, Var};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIXTURE_RUNTIME: Duration = Duration::from_secs(5);
const NEWTON_RUNTIME: Duration = Duration::from_secs(10);

/// Criteria whose literal statement is false for the exact objects involved.
const KNOWN_UNATTAINABLE: &[u32] = &[8];

type Criterion = (u32, &'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

fn ctx(p: u64) -> FieldCtx {
    FieldCtx::new(p).unwrap()
}

fn classical(k: FieldCtx, x: BigRational) -> BerkPoint {
    BerkPoint::classical(k, x)
}

fn zeta(k: FieldCtx, a: BigRational, r: i64) -> BerkPoint {
    BerkPoint::disc_rat(k, a, int(r))
}

fn gauss_dirac(k: FieldCtx) -> Measure {
    Measure::dirac(BerkPoint::gauss(k))
}

fn hull(points: &[BerkPoint]) -> Skeleton {
    Skeleton::build_hull(points).unwrap()
}

fn zero_to_infinity(k: FieldCtx) -> Skeleton {
    hull(&[classical(k, int(0)), BerkPoint::Infinity])
}

fn t_poly(k: FieldCtx, coeffs: &[i64]) -> Poly {
    Poly::from_ints(k, Var::T, coeffs)
}

struct Fixture {
    name: &'static str,
    fam: PolyFamily,
    marked: MarkedPoint,
}

fn fixtures() -> Vec<Fixture> {
    let q3 = ctx(3);
    let q2 = ctx(2);
    let q5 = ctx(5);
    vec![
        Fixture {
            name: "z^2+t, p=3",
            fam: PolyFamily::quadratic(q3),
            marked: MarkedPoint::zero(q3),
        },
        Fixture {
            name: "z^2+t, p=2",
            fam: PolyFamily::quadratic(q2),
            marked: MarkedPoint::zero(q2),
        },
        Fixture {
            name: "z^3+tz+t, p=5",
            fam: PolyFamily::new(
                q5,
                vec![
                    t_poly(q5, &[0, 1]),
                    t_poly(q5, &[0, 1]),
                    t_poly(q5, &[0]),
                    t_poly(q5, &[1]),
                ],
            )
            .unwrap(),
            marked: MarkedPoint::zero(q5),
        },
        Fixture {
            name: "3z^2+t, p=3",
            fam: PolyFamily::new(
                q3,
                vec![t_poly(q3, &[0, 1]), t_poly(q3, &[0]), t_poly(q3, &[3])],
            )
            .unwrap(),
            marked: MarkedPoint::zero(q3),
        },
    ]
}

fn finite_skeletons(k: FieldCtx) -> Vec<Skeleton> {
    let p = int(k.p() as i64);
    vec![
        hull(&[classical(k, int(0)), BerkPoint::gauss(k)]),
        hull(&[
            classical(k, int(0)),
            classical(k, int(1)),
            classical(k, p.recip()),
            zeta(k, int(0), 2),
        ]),
        hull(&[
            classical(k, p.clone()),
            zeta(k, int(1), -1),
            zeta(k, int(0), 1),
        ]),
    ]
}

fn infinite_skeletons(k: FieldCtx) -> Vec<Skeleton> {
    let p = int(k.p() as i64);
    vec![
        zero_to_infinity(k),
        hull(&[
            classical(k, int(0)),
            classical(k, int(1)),
            classical(k, p),
            BerkPoint::Infinity,
        ]),
    ]
}

fn c1_quadratic_fixture() -> Verdict {
    let k = ctx(3);
    let fam = PolyFamily::quadratic(k);
    let c = MarkedPoint::zero(k);
    let skel = zero_to_infinity(k);
    let start = Instant::now();
    let expected = Measure::from_atoms([(BerkPoint::gauss(k), rat(1, 2))]);
    for n in 1..=6 {
        let mu = match activity_measure_approx(&fam, &c, n, &skel) {
            Ok(mu) => mu,
            Err(e) => return Verdict::new(false, format!("n={n}: {e}")),
        };
        if mu != expected {
            return Verdict::new(false, format!("n={n}: got {mu}"));
        }
        let deg = iterate_marked(&fam, &c, n).unwrap().degree().unwrap();
        if BigRational::new(BigInt::from(deg), BigInt::from(2).pow(n as u32)) != rat(1, 2) {
            return Verdict::new(false, format!("n={n}: deg(c_n) = {deg}"));
        }
    }
    let elapsed = start.elapsed();
    Verdict::new(
        elapsed < FIXTURE_RUNTIME,
        format!("μ_n = 1/2·δ[ζ_{{0,1}}] for n = 1..6 in {elapsed:.2?}"),
    )
}

fn c2_escape_exponent() -> Verdict {
    let k = ctx(3);
    let fam = PolyFamily::quadratic(k);
    let c = MarkedPoint::zero(k);
    for t in [rat(1, 3), rat(2, 3), rat(-7, 3), rat(5, 3)] {
        let x = classical(k, t.clone());
        for n in 1..=6 {
            let g = green_value(&fam, &c, n, &x).unwrap();
            if g != rat(1, 2) {
                return Verdict::new(false, format!("t={t}, n={n}: {g}"));
            }
        }
    }
    Verdict::new(
        true,
        "green_value = 1/2 at four parameters with |t| = 3, n = 1..6",
    )
}

fn c3_laplacian_vector() -> Verdict {
    let k = ctx(3);
    let skel = zero_to_infinity(k);
    let rho = berkdyn::skeleton::pl_from_poly(&t_poly(k, &[0, 1]), &skel).unwrap();
    let lap = rho.max0().laplacian();
    let expected = Measure::from_atoms([
        (BerkPoint::gauss(k), int(-1)),
        (BerkPoint::Infinity, int(1)),
    ]);
    Verdict::new(lap == expected, format!("Δ max(0, ρ) = {lap}"))
}

fn c4_activity_is_equilibrium() -> Verdict {
    for p in [3, 2] {
        let k = ctx(p);
        let fam = PolyFamily::quadratic(k);
        let c = MarkedPoint::zero(k);
        let skel = zero_to_infinity(k);
        let disc = CompactRegion::new(k, &[(int(0), int(0))], &[]).unwrap();
        let eq = equilibrium(&disc, &BerkPoint::Infinity).unwrap();
        if eq.minimizer != gauss_dirac(k) {
            return Verdict::new(false, format!("p={p}: equilibrium {}", eq.minimizer));
        }
        for n in 1..=5 {
            let mu = activity_measure_approx(&fam, &c, n, &skel).unwrap();
            let normalized = mu.normalized().unwrap();
            if normalized != eq.minimizer {
                return Verdict::new(false, format!("p={p}, n={n}: {normalized}"));
            }
            let prof = boundedness_profile(&fam, &c, &skel, n).unwrap();
            if prof.boundary != normalized.support() {
                return Verdict::new(false, format!("p={p}, n={n}: boundary {:?}", prof.boundary));
            }
        }
    }
    Verdict::new(
        true,
        "normalized μ_n = δ[ζ_{0,1}] = equilibrium of D(0,1), boundary = support, p = 3 and 2",
    )
}

/// Valuation computed by repeated division, independent of the library.
fn valuation(p: u64, x: &BigRational) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let strip = |mut n: BigInt| {
        let mut v = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        v
    };
    Some(strip(x.numer().abs()) - strip(x.denom().abs()))
}

fn random_rational<R: Rng>(p: u64, rng: &mut R) -> BigRational {
    let unit = |rng: &mut R| loop {
        let u: i64 = rng.gen_range(1..40);
        if u % p as i64 != 0 {
            return u;
        }
    };
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let a = BigRational::new((sign * unit(rng)).into(), unit(rng).into());
    let e: i32 = rng.gen_range(-3..=3);
    let pe = BigRational::from_integer(BigInt::from(p).pow(e.unsigned_abs()));
    if e >= 0 {
        a * pe
    } else {
        a / pe
    }
}

fn c5_newton_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let start = Instant::now();
    let mut checks = 0;
    for case in 0..200 {
        let p = *[2u64, 3, 5, 7].choose(&mut rng).unwrap();
        let k = ctx(p);
        let nroots = rng.gen_range(1..=6);
        let mut roots: Vec<BigRational> =
            (0..nroots).map(|_| random_rational(p, &mut rng)).collect();
        if rng.gen_bool(0.3) {
            roots.push(roots[0].clone());
        }
        let lead = random_rational(p, &mut rng);
        let f = Poly::from_roots(k, Var::Z, &roots).scale(&lead);
        for _ in 0..5 {
            let a = if rng.gen_bool(0.5) {
                roots.choose(&mut rng).unwrap() + random_rational(p, &mut rng)
            } else {
                random_rational(p, &mut rng)
            };
            let rho = BigRational::new(rng.gen_range(-8..=8).into(), rng.gen_range(1..=2).into());
            let dist = |r: &BigRational| {
                valuation(p, &(r - &a)).map(|v| BigRational::from_integer((-v).into()))
            };
            let closed = roots
                .iter()
                .filter(|r| dist(r).is_none_or(|d| d <= rho))
                .count();
            let open = roots
                .iter()
                .filter(|r| dist(r).is_none_or(|d| d < rho))
                .count();
            let got = (
                f.count_roots_closed(&a, &rho).unwrap(),
                f.count_roots_open(&a, &rho).unwrap(),
            );
            if got != (closed, open) {
                return Verdict::new(
                    false,
                    format!(
                        "case {case}: f = {f}, a = {a}, ρ = {rho}: got {got:?}, expected {:?}",
                        (closed, open)
                    ),
                );
            }
            checks += 1;
        }
    }
    let elapsed = start.elapsed();
    Verdict::new(
        elapsed < NEWTON_RUNTIME,
        format!("{checks} (center, ρ) pairs on 200 polynomials in {elapsed:.2?}"),
    )
}

fn random_point<R: Rng>(k: FieldCtx, rng: &mut R) -> BerkPoint {
    let a = random_rational(k.p(), rng);
    match rng.gen_range(0..4) {
        0 => classical(k, a),
        1 => BerkPoint::disc_rat(
            k,
            a,
            BigRational::new(rng.gen_range(-6..=6).into(), 2.into()),
        ),
        _ => zeta(k, a, rng.gen_range(-3..=3)),
    }
}

fn c6_potential_roundtrip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..50 {
        let k = ctx(*[2u64, 3, 5].choose(&mut rng).unwrap());
        let mut pts: Vec<BerkPoint> = (0..rng.gen_range(2..=6))
            .map(|_| random_point(k, &mut rng))
            .collect();
        if rng.gen_bool(0.5) {
            pts.push(BerkPoint::Infinity);
        }
        let skel = hull(&pts);
        let verts = skel.vertices().to_vec();
        let bases: Vec<BerkPoint> = verts
            .iter()
            .filter(|x| !x.is_classical())
            .cloned()
            .collect();
        let zeta = match bases.choose(&mut rng) {
            Some(z) => z.clone(),
            None => continue,
        };
        let size = rng.gen_range(1..=verts.len());
        let support: Vec<BerkPoint> = verts.choose_multiple(&mut rng, size).cloned().collect();
        let mu = random_probability(&support, &mut rng);
        let u = match potential_fn(&mu, &zeta, &skel) {
            Ok(u) => u,
            Err(e) => return Verdict::new(false, format!("case {case}: {e}")),
        };
        let expected = Measure::dirac(zeta.clone()).sub(&mu);
        if u.laplacian() != expected {
            return Verdict::new(
                false,
                format!("case {case}: Δu = {}, expected {expected}", u.laplacian()),
            );
        }
    }
    Verdict::new(true, "Δ u_{ζ,μ} = δ_ζ − μ on 50 random skeletons")
}

fn c7_energy_minimizing() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut total = 0;
    for case in 0..20 {
        let k = ctx(*[2u64, 3, 5].choose(&mut rng).unwrap());
        let discs: Vec<(BigRational, BigRational)> = (0..rng.gen_range(1..=4))
            .map(|_| (random_rational(k.p(), &mut rng), int(rng.gen_range(-3..=1))))
            .collect();
        let region = CompactRegion::new(k, &discs, &[]).unwrap();
        let base = if case % 4 == 3 {
            zeta(k, random_rational(k.p(), &mut rng), 4)
        } else {
            BerkPoint::Infinity
        };
        let base = if region.contains(&base) {
            BerkPoint::Infinity
        } else {
            base
        };
        let report = match equilibrium(&region, &base) {
            Ok(r) => r,
            Err(e) => return Verdict::new(false, format!("case {case}: {e}")),
        };
        match emp_check(&report.minimizer, &report.candidates, &base, 100, &mut rng) {
            Ok(true) => total += 100,
            Ok(false) => {
                return Verdict::new(
                    false,
                    format!("case {case}: a competitor beat {}", report.minimizer),
                )
            }
            Err(e) => return Verdict::new(false, format!("case {case}: {e}")),
        }
    }
    Verdict::new(
        true,
        format!("{total} strict comparisons over 20 random disc unions"),
    )
}

fn support_labels(m: &Measure) -> String {
    m.support()
        .iter()
        .map(BerkPoint::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn d_inverse_power(d: usize, n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(d).pow(n as u32))
}

/// Part (a) must hold; part (b) is reported as computed.
fn c8_equidistribution() -> Verdict {
    for fx in fixtures() {
        let k = fx.fam.ctx();
        for skel in infinite_skeletons(k) {
            for n in 1..=4 {
                let mu = activity_measure_approx(&fx.fam, &fx.marked, n, &skel).unwrap();
                let cn = iterate_marked(&fx.fam, &fx.marked, n).unwrap();
                let pb = pullback_dirac(&cn, &BerkPoint::gauss(k), &skel).unwrap();
                if mu != pb.scale(&d_inverse_power(fx.fam.degree(), n)) {
                    return Verdict::new(
                        false,
                        format!("{}: n={n}: μ_n = {mu}, d^-n pullback = {pb}", fx.name),
                    );
                }
            }
        }
    }
    let k = ctx(3);
    let fam = PolyFamily::quadratic(k);
    let c = MarkedPoint::zero(k);
    let skel = zero_to_infinity(k);
    let mut stray = vec![];
    for n in 2..=5 {
        let cn = iterate_marked(&fam, &c, n).unwrap();
        for rho in [-1, 0, 1] {
            let pb = pullback_dirac(&cn, &zeta(k, int(0), rho), &skel).unwrap();
            let pb = pb.normalized().unwrap();
            if pb.support() != vec![BerkPoint::gauss(k)] {
                stray.push(format!("n={n}, ρ={rho}: {{{}}}", support_labels(&pb)));
            }
        }
    }
    if stray.is_empty() {
        Verdict::new(true, "μ_n = d^-n pullback on all fixtures; supports agree")
    } else {
        Verdict::new(
            false,
            format!(
                "μ_n = d^-n pullback holds on all fixtures, but the supports differ: {}",
                stray[..3.min(stray.len())].join("; ")
            ),
        )
    }
}

/// The documented failure mode of criterion 8.
fn c8_fails_as_documented() -> bool {
    let k = ctx(3);
    let fam = PolyFamily::quadratic(k);
    let c = MarkedPoint::zero(k);
    let skel = zero_to_infinity(k);
    (2..=5).all(|n| {
        let cn = iterate_marked(&fam, &c, n).unwrap();
        let half = 1i64 << (n - 1);
        let at = |rho| pullback_dirac(&cn, &zeta(k, int(0), rho), &skel).unwrap();
        let above =
            Measure::from_atoms([(BerkPoint::disc_rat(k, int(0), rat(1, half)), int(half))]);
        let below = Measure::from_atoms([
            (zeta(k, int(0), -1), int(1)),
            (BerkPoint::gauss(k), int(half - 1)),
        ]);
        at(0) == Measure::from_atoms([(BerkPoint::gauss(k), int(half))])
            && at(1) == above
            && at(-1) == below
    })
}

fn c9_geometric_convergence() -> Verdict {
    let mut checks = 0;
    for fx in fixtures() {
        let k = fx.fam.ctx();
        let d = fx.fam.degree();
        for skel in finite_skeletons(k) {
            let bound = green_tail_bound(&fx.fam, &skel).unwrap();
            for x in skel.vertices() {
                let g: Vec<BigRational> = (1..=6)
                    .map(|n| green_value(&fx.fam, &fx.marked, n, x).unwrap())
                    .collect();
                for n in 1..=5 {
                    let gap = (&g[n] - &g[n - 1]).abs();
                    if gap > &bound * d_inverse_power(d, n) {
                        return Verdict::new(
                            false,
                            format!("{} at {x}, n={n}: gap {gap} > {bound}·{d}^-{n}", fx.name),
                        );
                    }
                    checks += 1;
                }
            }
        }
    }
    Verdict::new(true, format!("{checks} vertex levels within C·d^-n"))
}

fn green_levels(lift: &RationalFamilyLift, skel: &Skeleton, upto: usize) -> Vec<PLFunc> {
    (1..=upto)
        .map(|n| green_function_rational(lift, n, skel).unwrap())
        .collect()
}

fn c10_lift_independence() -> Verdict {
    let mut compared = 0;
    for fx in fixtures() {
        let k = fx.fam.ctx();
        let p = int(k.p() as i64);
        let lift = RationalFamilyLift::from_polynomial(&fx.fam, &fx.marked).unwrap();
        let unit = Poly::new(k, Var::T, vec![int(1), p.clone()]);
        let constant = Poly::constant(k, Var::T, p.clone());
        let unit_disc = hull(&[classical(k, int(0)), BerkPoint::gauss(k)]);
        let cases = [
            (unit, vec![unit_disc.clone()]),
            (constant, vec![unit_disc, finite_skeletons(k)[1].clone()]),
        ];
        for (phi, skels) in cases {
            let scaled = lift.rescale_marked(&phi).unwrap();
            for skel in skels {
                let a = green_levels(&lift, &skel, 4);
                let b = green_levels(&scaled, &skel, 4);
                for n in 0..3 {
                    let da = a[n + 1].sub(&a[n]).unwrap();
                    let db = b[n + 1].sub(&b[n]).unwrap();
                    if da != db {
                        return Verdict::new(
                            false,
                            format!(
                                "{}: φ = {phi}: differences at level {} differ",
                                fx.name,
                                n + 1
                            ),
                        );
                    }
                    if a[n].laplacian() != b[n].laplacian() {
                        return Verdict::new(
                            false,
                            format!(
                                "{}: φ = {phi}: Laplacians at level {} differ",
                                fx.name,
                                n + 1
                            ),
                        );
                    }
                    compared += 1;
                }
            }
        }
    }
    Verdict::new(
        true,
        format!("{compared} level comparisons under φ = 1 + p·t and φ = p"),
    )
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "quadratic fixture activity measure",
            c1_quadratic_fixture,
        ),
        (2, "escape exponent", c2_escape_exponent),
        (3, "Laplacian test vector", c3_laplacian_vector),
        (
            4,
            "activity measure equals equilibrium",
            c4_activity_is_equilibrium,
        ),
        (5, "Newton polygon root counts", c5_newton_oracle),
        (6, "potential round trip", c6_potential_roundtrip),
        (7, "energy-minimizing principle", c7_energy_minimizing),
        (8, "equidistribution consistency", c8_equidistribution),
        (9, "geometric convergence", c9_geometric_convergence),
        (10, "lift independence", c10_lift_independence),
    ];
    let mut unexpected = vec![];
    for (id, name, check) in criteria {
        let start = Instant::now();
        let v = check();
        let ms = start.elapsed().as_millis();
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} [{name}]: {status} ({}) [{ms} ms]",
            v.detail
        );
        let known = KNOWN_UNATTAINABLE.contains(&id);
        if known && !v.pass && !(id == 8 && c8_fails_as_documented()) {
            unexpected.push(format!("criterion {id} fails differently than documented"));
        }
        if !v.pass && !known {
            unexpected.push(format!("criterion {id} failed"));
        }
        if v.pass && known {
            println!("  note: criterion {id} is listed as unattainable but passed");
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all attainable criteria pass");
    } else {
        for u in &unexpected {
            println!("acceptance: {u}");
        }
        std::process::exit(1);
    }
}
