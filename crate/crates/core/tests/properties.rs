use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use wpcount::counting::{count_box, count_points_height, count_primitive_fast, count_size_fast, DEFAULT_BUDGET};
use wpcount::lift::sparsity_scan;
use wpcount::space::{
    canonicalize, normalize, size, veronese, weighted_height, weighted_height_via_veronese, weil_height, wgcd,
};
use wpcount::{ExactHeight, WeightSystem, WeightedPoint};

const SYSTEMS: [&[u64]; 8] = [&[1, 2], &[2, 3], &[1, 1, 2], &[1, 4, 2], &[2, 4], &[1, 2, 3], &[2, 4, 6, 10], &[1, 1]];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn system() -> impl Strategy<Value = WeightSystem> {
    prop::sample::select(SYSTEMS.to_vec()).prop_map(|w| WeightSystem::new(w).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=30).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

fn coord() -> impl Strategy<Value = BigRational> {
    prop_oneof![1 => Just(BigRational::zero()), 6 => nonzero_rational()]
}

fn point() -> impl Strategy<Value = WeightedPoint> {
    system()
        .prop_flat_map(|ws| {
            let n = ws.arity();
            (Just(ws), prop::collection::vec(coord(), n))
        })
        .prop_filter("not all zero", |(_, c)| c.iter().any(|x| !x.is_zero()))
        .prop_map(|(ws, c)| WeightedPoint::new(&ws, c).unwrap())
}

fn integral_point(max: i64) -> impl Strategy<Value = WeightedPoint> {
    system()
        .prop_flat_map(move |ws| {
            let n = ws.arity();
            (Just(ws), prop::collection::vec(-max..=max, n))
        })
        .prop_filter("not all zero", |(_, c)| c.iter().any(|x| *x != 0))
        .prop_map(|(ws, c)| WeightedPoint::from_integers(&ws, &c).unwrap())
}

/// Rational `w`-th roots of `r`.
fn rational_roots(r: &BigRational, w: u64) -> Vec<BigRational> {
    if r.is_zero() {
        return vec![BigRational::zero()];
    }
    if r.is_negative() && w % 2 == 0 {
        return vec![];
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let c = n.abs().nth_root(w as u32);
        (num_traits::pow(c.clone(), w as usize) == n.abs()).then_some(c)
    };
    let (Some(a), Some(b)) = (root(r.numer()), root(r.denom())) else { return vec![] };
    let base = BigRational::new(a, b);
    if w % 2 == 0 {
        vec![base.clone(), -base]
    } else if r.is_negative() {
        vec![-base]
    } else {
        vec![base]
    }
}

/// Searches for `λ` with `λ^{q_i} a_i = b_i` for all `i`.
fn brute_equivalent(a: &WeightedPoint, b: &WeightedPoint) -> bool {
    let ws = a.system();
    if a.support() != b.support() {
        return false;
    }
    let i = a.support()[0];
    rational_roots(&(b.coord(i) / a.coord(i)), ws.weight(i)).into_iter().any(|lam| {
        (0..ws.arity()).all(|j| a.coord(j) * num_traits::pow(lam.clone(), ws.weight(j) as usize) == *b.coord(j))
    })
}

fn pairwise_coprime(v: &[u64]) -> bool {
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i].gcd(&v[j]) == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invariants_survive_scaling(p in point(), lam in nonzero_rational()) {
        let q = p.scale(&lam).unwrap();
        prop_assert_eq!(weighted_height(&q).unwrap(), weighted_height(&p).unwrap());
        prop_assert_eq!(size(&q).unwrap(), size(&p).unwrap());
        prop_assert_eq!(canonicalize(&q).unwrap(), canonicalize(&p).unwrap());
        prop_assert_eq!(veronese(&q).unwrap(), veronese(&p).unwrap());
    }

    #[test]
    fn height_at_least_one(p in point()) {
        prop_assert!(weighted_height(&p).unwrap() >= ExactHeight::one());
    }

    #[test]
    fn height_power_is_image_height(p in point()) {
        let h = weighted_height(&p).unwrap();
        let via = weighted_height_via_veronese(&p).unwrap();
        prop_assert_eq!(&h, &via);
        let q = p.system().lcm() as u32;
        let weil = weil_height(&veronese(&p).unwrap());
        prop_assert_eq!(h.pow_to_rational(q), weil.pow_to_rational(1));
    }

    #[test]
    fn normalization_is_idempotent(p in point()) {
        let n = normalize(&p).unwrap();
        prop_assert!(wgcd(&n).unwrap().is_one());
        prop_assert!(n.integer_coords().is_some());
        prop_assert_eq!(normalize(&n).unwrap(), n.clone());
        let c = canonicalize(&p).unwrap();
        prop_assert_eq!(canonicalize(&c).unwrap(), c.clone());
        prop_assert!(c.is_normalized());
    }

    #[test]
    fn canonical_forms_decide_equivalence(
        (a, b) in system().prop_flat_map(|ws| {
            let n = ws.arity();
            (Just(ws), prop::collection::vec(-20i64..=20, n), prop::collection::vec(-20i64..=20, n), any::<bool>(), nonzero_rational())
        })
        .prop_filter("nonzero", |(_, x, y, _, _)| x.iter().any(|v| *v != 0) && y.iter().any(|v| *v != 0))
        .prop_map(|(ws, x, y, related, lam)| {
            let a = WeightedPoint::from_integers(&ws, &x).unwrap();
            let b = if related { a.scale(&lam).unwrap() } else { WeightedPoint::from_integers(&ws, &y).unwrap() };
            (a, b)
        })
    ) {
        let same = canonicalize(&a).unwrap() == canonicalize(&b).unwrap();
        prop_assert_eq!(same, brute_equivalent(&a, &b));
    }

    #[test]
    fn height_bounded_by_size_on_integral_points(p in integral_point(30)) {
        let n = normalize(&p).unwrap();
        let h = weighted_height(&n).unwrap();
        let s = size(&n).unwrap();
        prop_assert!(h <= s);
        let g = n.integer_coords().unwrap().iter().fold(BigInt::zero(), |a, x| a.gcd(x));
        if g.is_one() {
            prop_assert_eq!(h, s);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn density_one_iff_exponents_coprime(w in prop::collection::vec(1u64..=6, 2..=3), b in 2u64..=3) {
        let ws = WeightSystem::new(&w).unwrap();
        let r = sparsity_scan(&ws, b, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(r.liftable == r.total, pairwise_coprime(ws.exponents()));
    }

    #[test]
    fn sparsity_counts_grow_with_bound(w in prop::collection::vec(1u64..=6, 2..=3), b in 1u64..=4) {
        let ws = WeightSystem::new(&w).unwrap();
        let small = sparsity_scan(&ws, b, DEFAULT_BUDGET).unwrap();
        let large = sparsity_scan(&ws, b + 1, DEFAULT_BUDGET).unwrap();
        prop_assert!(small.total <= large.total && small.liftable <= large.liftable);
        prop_assert!(small.liftable <= small.total);
    }

    #[test]
    fn box_splits_by_weighted_divisor(ws in system(), x in 1i64..=12, frac in 0i64..4) {
        // every nonzero tuple is d^{q_i} times a primitive one, for one d
        let x = BigRational::from_integer(x.into()) + rat(frac, 4);
        let top = x.to_integer().try_into().unwrap_or(0u64);
        let mut sum = 0u128;
        for d in 1..=top {
            sum += count_primitive_fast(&ws, &(&x / BigInt::from(d))).unwrap();
        }
        prop_assert_eq!(sum, count_box(&ws, &x).unwrap());
    }

    #[test]
    fn orbit_count_by_burnside(ws in system(), x in 1i64..=3) {
        let bound: Vec<i64> = ws.weights().iter().map(|&w| x.pow(w as u32)).collect();
        prop_assume!(bound.iter().map(|b| 2 * b + 1).product::<i64>() <= 200_000);
        let mut prim = 0u128;
        let mut fixed = 0u128;
        let mut t: Vec<i64> = bound.iter().map(|b| -b).collect();
        'outer: loop {
            if t.iter().any(|c| *c != 0) {
                let p = WeightedPoint::from_integers(&ws, &t).unwrap();
                if wgcd(&p).unwrap().is_one() {
                    prim += 1;
                    if p.scale(&rat(-1, 1)).unwrap() == p {
                        fixed += 1;
                    }
                }
            }
            for k in 0..t.len() {
                if t[k] < bound[k] {
                    t[k] += 1;
                    continue 'outer;
                }
                t[k] = -bound[k];
            }
            break;
        }
        let xr = BigRational::from_integer(x.into());
        prop_assert_eq!(count_primitive_fast(&ws, &xr).unwrap(), prim);
        prop_assert_eq!(count_size_fast(&ws, &xr).unwrap(), (prim + fixed) / 2);
    }

    #[test]
    fn counts_grow_with_bound(ws in system(), x in 1i64..=40, step in 1i64..=8) {
        let a = BigRational::from_integer(x.into());
        let b = &a + rat(step, 4);
        prop_assert!(count_size_fast(&ws, &a).unwrap() <= count_size_fast(&ws, &b).unwrap());
        if ws.lcm() <= 2 && x <= 6 {
            prop_assert!(count_points_height(&ws, &a, DEFAULT_BUDGET).unwrap()
                <= count_points_height(&ws, &b, DEFAULT_BUDGET).unwrap());
        }
    }
}
