mod common;

use common::*;
use plreal::density::{density, diffquot_density};
use plreal::format::{read_is, read_pl, write_is, write_pl};
use plreal::rat::{int, rat};
use plreal::{AffinePair, Interval, Rat};
use proptest::prelude::*;

fn window(r: &mut rand_chacha::ChaCha8Rng) -> Interval {
    let p = grid_points(r, &int(0), &int(1), 97, 2);
    Interval::new(p[0].clone(), p[1].clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eval_hits_every_knot(seed in any::<u64>(), n in 2usize..20) {
        let mut r = rng(seed);
        let k = random_knots(&mut r, n, 64);
        let g = pl(&k);
        for (x, y) in &k {
            prop_assert_eq!(&g.eval(x).unwrap(), y);
        }
    }

    #[test]
    fn level_sets_partition_the_window(seed in any::<u64>(), n in 2usize..16, num in -24i64..24) {
        let mut r = rng(seed);
        let g = pl(&random_knots(&mut r, n, 64));
        let i = window(&mut r);
        let y = rat(num, 4) + rat(1, 13);
        let above = g.superlevel(&y, &i).unwrap();
        let below = g.sublevel_closed(&y, &i).unwrap();
        prop_assert_eq!(above.measure() + below.measure(), i.length());
        prop_assert_eq!(above.intersect(&below).measure(), int(0));
    }

    #[test]
    fn superlevel_sets_shrink_as_level_rises(seed in any::<u64>(), n in 2usize..16, a in -24i64..24, b in -24i64..24) {
        let mut r = rng(seed);
        let g = pl(&random_knots(&mut r, n, 64));
        let i = Interval::unit();
        let (lo, hi) = (rat(a.min(b), 4), rat(a.max(b), 4));
        let big = g.superlevel(&lo, &i).unwrap();
        let small = g.superlevel(&hi, &i).unwrap();
        prop_assert!(small.is_subset_of(&big));
        prop_assert!(small.measure() <= big.measure());
    }

    #[test]
    fn superlevel_matches_segment_scan(seed in any::<u64>(), n in 2usize..20, num in -96i64..96) {
        let mut r = rng(seed);
        let k = random_knots(&mut r, n, 64);
        let g = pl(&k);
        let i = window(&mut r);
        let y = rat(num, 16);
        let want = superlevel_oracle(&k, &y, i.lo(), i.hi());
        let got = g.superlevel(&y, &i).unwrap();
        prop_assert_eq!(got.clone(), to_set(&want));
        let total: Rat = want.iter().map(|(a, b)| b - a).sum();
        prop_assert_eq!(got.measure(), total);
    }

    #[test]
    fn diffquot_density_is_affine_invariant(
        seed in any::<u64>(), n in 3usize..14,
        ts in 1i64..9, tsh in -5i64..5, ss in 1i64..9, ssh in -5i64..5,
    ) {
        let mut r = rng(seed);
        let g = pl(&random_knots(&mut r, n, 32));
        let i = window(&mut r);
        let x0 = grid_points(&mut r, i.lo(), i.hi(), 4096, 1).pop().unwrap_or_else(|| i.midpoint());
        let pair = AffinePair::new(rat(ts, 3), rat(tsh, 7), rat(ss, 5), rat(ssh, 2)).unwrap();
        let moved = g.affine_transform(&pair).unwrap();
        let before = diffquot_density(&g, &x0, &i).unwrap();
        let after = diffquot_density(&moved, &pair.t(&x0), &pair.t_interval(&i)).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn set_measure_is_modular(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (pa, pb) = (random_parts(&mut r, 10, 128), random_parts(&mut r, 10, 128));
        let (a, b) = (to_set(&pa), to_set(&pb));
        prop_assert_eq!(a.union(&b).measure() + a.intersect(&b).measure(), a.measure() + b.measure());
        let i = window(&mut r);
        prop_assert_eq!(a.measure_in(&i), meas(&pa, i.lo(), i.hi()));
        prop_assert_eq!(density(&a, &i).unwrap(), meas(&pa, i.lo(), i.hi()) / i.length());
        let comp = a.complement_in(&i);
        prop_assert_eq!(comp.measure() + a.measure_in(&i), i.length());
    }

    #[test]
    fn text_formats_round_trip(seed in any::<u64>(), n in 2usize..20) {
        let mut r = rng(seed);
        let g = pl(&random_knots(&mut r, n, 1000));
        let text = write_pl(&g);
        let back = read_pl(&text).unwrap();
        prop_assert_eq!(write_pl(&back), text);
        let s = to_set(&random_parts(&mut r, 10, 997));
        let text = write_is(&s);
        prop_assert_eq!(read_is(&text).unwrap(), s);
    }
}

#[test]
fn eval_outside_domain_is_an_error() {
    let g = pl(&[(int(0), int(0)), (int(1), int(1))]);
    assert!(g.eval(&rat(3, 2)).is_err());
    assert!(g.eval(&rat(-1, 2)).is_err());
}

#[test]
fn superlevel_crossings_agree_with_bisection() {
    let mut r = rng(7);
    for _ in 0..50 {
        let k = random_knots(&mut r, 12, 64);
        let g = pl(&k);
        let y = rat(1, 3);
        for p in g.superlevel(&y, &Interval::unit()).unwrap().parts() {
            for end in [p.lo(), p.hi()] {
                if *end == int(0) || *end == int(1) {
                    continue;
                }
                let (mut lo, mut hi) = (f(end) - 1e-3, f(end) + 1e-3);
                let h = |x: f64| f(&eval_knots(&k, &Rat::from_float(x.clamp(0.0, 1.0)).unwrap())) - 1.0 / 3.0;
                if h(lo).signum() == h(hi).signum() {
                    continue;
                }
                for _ in 0..60 {
                    let m = 0.5 * (lo + hi);
                    if h(m).signum() == h(lo).signum() {
                        lo = m;
                    } else {
                        hi = m;
                    }
                }
                assert!((lo - f(end)).abs() < 1e-9, "crossing {end} vs bisection {lo}");
            }
        }
    }
}
