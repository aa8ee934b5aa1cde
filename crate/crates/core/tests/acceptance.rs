//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wpcount::arith::zeta;
use wpcount::counting::{
    bounds_evaluators, count_points_height, count_points_size, numberfield_leading_constant,
    rational_leading_constant, schanuel_constant, sparsity_factor, FieldInvariants, SizeMethod, DEFAULT_BUDGET,
};
use wpcount::lift::{lift_bruteforce_oracle, lift_check, orbit_count_oracle, veronese_degree, DEFAULT_ORBIT_BUDGET};
use wpcount::space::{normalize, size, veronese, weighted_height, wgcd};
use wpcount::{BoundedReal, ExactHeight, ProjectivePoint, WeightSystem, WeightedPoint};

type Check = Result<String, String>;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ws(w: &[u64]) -> WeightSystem {
    WeightSystem::new(w).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tol() -> BigRational {
    rat(1, 1_000_000_000)
}

/// 2/ζ(3), checked against Apéry's constant to 24 digits.
fn two_over_zeta3() -> Result<BoundedReal, String> {
    let z = zeta(3, &rat(1, 10i64.pow(15))).map_err(|e| e.to_string())?;
    let apery_lo = BigRational::new("1202056903159594285399737".parse().unwrap(), BigInt::from(10).pow(24));
    let apery_hi = &apery_lo + BigRational::new(BigInt::one(), BigInt::from(10).pow(24));
    ensure(z.overlaps(&BoundedReal::new(apery_lo, apery_hi).unwrap()), || format!("zeta(3) = {z}"))?;
    BoundedReal::from_integer(2).div(&z).map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let w = ws(&[1, 2]);
    let c = two_over_zeta3()?;
    let report = rational_leading_constant(&w, &tol()).map_err(|e| e.to_string())?;
    ensure(report.constant.overlaps(&c), || format!("constant {} vs 2/zeta(3) {c}", report.constant))?;
    ensure(report.exponent == int(3) && report.error_exponent == int(2), || "exponents".into())?;
    let mut notes = Vec::new();
    for (x, pct) in [(250i64, 5i64), (500, 3), (1000, 2), (2000, 1)] {
        let n = count_points_size(&w, &int(x), SizeMethod::Fast, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let pred = c.scale(&int(x.pow(3)));
        let ratio = BoundedReal::exact(BigRational::from_integer(BigInt::from(n))).div(&pred).map_err(|e| e.to_string())?;
        let band = BoundedReal::new(int(1) - rat(pct, 100), int(1) + rat(pct, 100)).unwrap();
        ensure(ratio.is_within(&band), || format!("X={x}: ratio {ratio} outside {pct}%"))?;
        notes.push(format!("X={x} ratio {}", ratio.mid_string(5)));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{} in {:.2?}", notes.join(", "), elapsed))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for (w, max_x) in [(vec![1, 2], 30), (vec![2, 3], 30), (vec![1, 1, 2], 30), (vec![2, 4, 6, 10], 3)] {
        let w = ws(&w);
        for x in 1..=max_x {
            let x = int(x);
            let d = count_points_size(&w, &x, SizeMethod::Direct, DEFAULT_BUDGET).map_err(|e| format!("{w} X={x}: {e}"))?;
            let f = count_points_size(&w, &x, SizeMethod::Fast, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(d == f, || format!("{w} X={x}: direct {d} fast {f}"))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} (system, X) pairs equal in {elapsed:.2?}"))
}

fn criterion_3() -> Check {
    let cases: [(&[u64], Option<u128>); 10] = [
        (&[1, 1, 2], Some(2)),
        (&[2, 3], Some(1)),
        (&[2, 4, 6, 10], Some(900)),
        (&[1, 2], None),
        (&[1, 1, 1], None),
        (&[1, 2, 3], None),
        (&[2, 3, 5], None),
        (&[1, 4, 2], None),
        (&[3, 4], None),
        (&[6, 10, 15], None),
    ];
    for (w, expected) in cases {
        let s = ws(w);
        // q^n d / prod q_i, computed here from the raw weights
        let q = w.iter().fold(1u128, |a, &x| a.lcm(&(x as u128)));
        let d = w.iter().fold(0u128, |a, &x| a.gcd(&(x as u128)));
        let formula = q.pow(w.len() as u32 - 1) * d / w.iter().map(|&x| x as u128).product::<u128>();
        let deg = veronese_degree(&s).map_err(|e| e.to_string())?;
        let orbits = orbit_count_oracle(&s, DEFAULT_ORBIT_BUDGET).map_err(|e| e.to_string())?;
        ensure(deg == formula && orbits == formula, || format!("{s}: degree {deg}, orbits {orbits}, formula {formula}"))?;
        if let Some(e) = expected {
            ensure(deg == e, || format!("{s}: degree {deg}, expected {e}"))?;
        }
    }
    Ok("ten systems agree".into())
}

/// Weil height of `[x_i^{n_i}]`, computed without the library's helpers.
fn image_height(p: &[BigRational], exps: &[u64]) -> BigInt {
    let powers: Vec<BigRational> = p.iter().zip(exps).map(|(x, &n)| num_traits::pow(x.clone(), n as usize)).collect();
    let den = powers.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let ints: Vec<BigInt> = powers.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    ints.iter().map(|x| (x / &g).abs()).max().unwrap()
}

fn criterion_4() -> Check {
    let w = ws(&[2, 4, 6, 10]);
    let p = WeightedPoint::from_integers(&w, &[9, 81, 729, 59049]).unwrap();
    let g = wgcd(&p).map_err(|e| e.to_string())?;
    ensure(g.to_rational() == int(3), || format!("wgcd {}", g.to_rational()))?;
    let n = normalize(&p).map_err(|e| e.to_string())?;
    ensure(n.coords().iter().all(|c| c.is_one()), || format!("normalized {n}"))?;
    ensure(weighted_height(&p).unwrap() == ExactHeight::one(), || "height of [9:81:729:59049]".into())?;
    ensure(size(&p).unwrap() == ExactHeight::one(), || "size of [9:81:729:59049]".into())?;
    let p2 = WeightedPoint::new(&w, vec![int(1), rat(1, 3), int(1), int(1)]).unwrap();
    let h2 = weighted_height(&p2).unwrap();
    ensure(h2 == ExactHeight::new(int(3), 4).unwrap(), || format!("height of [1:1/3:1:1] is {h2}"))?;

    let systems: [&[u64]; 5] = [&[1, 2], &[2, 3], &[1, 1, 2], &[1, 4, 2], &[2, 4, 6, 10]];
    let mut rng = ChaCha8Rng::seed_from_u64(20261018);
    for sys in systems {
        let s = ws(sys);
        for _ in 0..10_000 {
            let coords: Vec<BigRational> = (0..s.arity())
                .map(|_| {
                    if rng.gen_ratio(1, 8) {
                        BigRational::zero()
                    } else {
                        rat(rng.gen_range(-60..=60), rng.gen_range(1..=40))
                    }
                })
                .collect();
            if coords.iter().all(Zero::is_zero) {
                continue;
            }
            let p = WeightedPoint::new(&s, coords.clone()).unwrap();
            let h = weighted_height(&p).map_err(|e| e.to_string())?;
            let lhs = h.pow_to_rational(s.lcm() as u32).ok_or("height power is not rational")?;
            let rhs = BigRational::from_integer(image_height(&coords, s.exponents()));
            ensure(lhs == rhs, || format!("{s} {p}: h^q = {lhs}, H(phi) = {rhs}"))?;
        }
    }
    Ok("fixtures hold; h^q = H(phi) on 5 x 10^4 random points".into())
}

/// Canonical projective points with coordinates in `[-b, b]`.
fn projective_box(arity: usize, b: i64) -> Vec<ProjectivePoint> {
    let mut out = Vec::new();
    let mut t = vec![-b; arity];
    loop {
        let first = t.iter().find(|c| **c != 0);
        let g = t.iter().fold(0i64, |a, c| a.gcd(c));
        if first.is_some_and(|c| *c > 0) && g == 1 {
            out.push(ProjectivePoint::from_integers(t.iter().map(|&c| BigInt::from(c)).collect()).unwrap());
        }
        let mut k = 0;
        while k < arity && t[k] == b {
            t[k] = -b;
            k += 1;
        }
        if k == arity {
            return out;
        }
        t[k] += 1;
    }
}

fn criterion_5() -> Check {
    let mut total = 0;
    for sys in [&[1u64, 2][..], &[2, 3], &[1, 1, 2], &[1, 4, 2]] {
        let s = ws(sys);
        for y in projective_box(s.arity(), 10) {
            let a = lift_check(&y, &s).map_err(|e| e.to_string())?;
            let b = lift_bruteforce_oracle(&y, &s, 6).map_err(|e| e.to_string())?;
            ensure(a.liftable == b.liftable, || format!("{s} {y}: check {} oracle {}", a.liftable, b.liftable))?;
            ensure(a.verify(&y, &s), || format!("{s} {y}: result does not verify"))?;
            total += 1;
        }
    }
    let s = ws(&[2, 3]);
    let y = ProjectivePoint::from_integers(vec![1.into(), 2.into()]).unwrap();
    let r = lift_check(&y, &s).unwrap();
    let wit = r.witness.as_ref().ok_or("no witness for [1:2]")?;
    ensure(r.liftable && veronese(wit).unwrap() == y && r.verify(&y, &s), || "[1:2] witness".into())?;
    let s = ws(&[1, 1, 2]);
    let y = ProjectivePoint::from_integers(vec![1.into(), 2.into(), 1.into()]).unwrap();
    let r = lift_check(&y, &s).unwrap();
    ensure(!r.liftable && r.obstruction.is_some() && r.verify(&y, &s), || "[1:2:1] certificate".into())?;
    Ok(format!("{total} points agree; witness {wit} for [1:2] over (2,3); [1:2:1] over (1,1,2) obstructed"))
}

/// Points of classical projective space by exact height, from primitive
/// integer tuples modulo sign.
fn classical_histogram(arity: usize, max: i64) -> Vec<u128> {
    let mut hist = vec![0u128; max as usize + 1];
    let mut t = vec![-max; arity];
    loop {
        if t.iter().fold(0i64, |a, c| a.gcd(c)) == 1 {
            hist[t.iter().map(|c| c.abs()).max().unwrap() as usize] += 1;
        }
        let mut k = 0;
        while k < arity && t[k] == max {
            t[k] = -max;
            k += 1;
        }
        if k == arity {
            break;
        }
        t[k] += 1;
    }
    hist.iter().map(|c| c / 2).collect()
}

fn criterion_6() -> Check {
    let mut counts = HashMap::new();
    for n in [1usize, 2] {
        let s = ws(&vec![1; n + 1]);
        let hist = classical_histogram(n + 1, 50);
        let mut cumulative = 0u128;
        for x in 1..=50i64 {
            cumulative += hist[x as usize];
            let xr = int(x);
            let fast = count_points_size(&s, &xr, SizeMethod::Fast, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let direct = count_points_size(&s, &xr, SizeMethod::Direct, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let height = count_points_height(&s, &xr, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(fast == cumulative && direct == cumulative && height == cumulative, || {
                format!("n={n} X={x}: enumerator {cumulative}, fast {fast}, direct {direct}, height {height}")
            })?;
        }
        counts.insert(n, cumulative);
        let sch = schanuel_constant(n as u32, &FieldInvariants::rationals(), &tol()).map_err(|e| e.to_string())?;
        let r = rational_leading_constant(&s, &tol()).map_err(|e| e.to_string())?.constant;
        ensure(sch.overlaps(&r), || format!("n={n}: Schanuel {sch} vs {r}"))?;
    }
    Ok(format!("P^1 has {} points and P^2 has {} points of height <= 50", counts[&1], counts[&2]))
}

fn criterion_7() -> Check {
    for q in 1..=100 {
        let f = sparsity_factor(q, 1, 1).map_err(|e| e.to_string())?;
        ensure(f.is_one(), || format!("sparsity_factor({q},1,1) = {f}"))?;
    }
    let tuples: [(u64, u64, u64, u64); 5] = [(1, 1, 1, 3), (1, 2, 1, 4), (1, 3, 2, 5), (2, 4, 1, 7), (3, 6, 3, 22)];
    for (g, e, m, qt) in tuples {
        let b = bounds_evaluators(g, e, m, qt, e + 1).map_err(|e| e.to_string())?;
        let (gi, ei, mi) = (g as i64, e as i64, m as i64);
        let expect = int(mi) * (int(gi * gi + gi + ei) + rat(ei * ei, gi));
        ensure(b.gamma == expect, || format!("gamma at {:?}: {}", (g, e, m, qt), b.gamma))?;
        let g1 = bounds_evaluators(1, e, m, qt, e + 1).map_err(|e| e.to_string())?;
        ensure(g1.gamma == int(mi * (ei * ei + ei + 2)), || format!("gamma_1 at e={e}, m={m}: {}", g1.gamma))?;
    }
    let w = ws(&[1, 2]);
    let nf = numberfield_leading_constant(&w, &FieldInvariants::rationals(), &tol()).map_err(|e| e.to_string())?;
    let c = two_over_zeta3()?;
    ensure(nf.constant.overlaps(&c), || format!("number field constant {} vs {c}", nf.constant))?;
    Ok(format!("number field constant at Q = {}", nf.constant))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("1 leading constant at desk scale", criterion_1),
        ("2 direct equals fast", criterion_2),
        ("3 Veronese degree by orbit counting", criterion_3),
        ("4 height fixtures and h^q = H(phi)", criterion_4),
        ("5 lift decision against brute force", criterion_5),
        ("6 classical specialization", criterion_6),
        ("7 constant evaluators", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {name}: PASS ({detail}) [{:.2?}]", start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail}) [{:.2?}]", start.elapsed());
            }
        }
    }
    println!("acceptance: {}/7 passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
