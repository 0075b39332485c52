mod common;

use common::*;
use plreal::game::{
    dq_spot_check, p1_move, p2_move, simulate, simulate_with, verify_limit_scales, Adversary, Ball, GameTranscript,
    Role, DEFAULT_KNOT_CAP,
};
use plreal::rat::{int, rat};
use plreal::{PLFunction, Rat};

/// `sup |f - g|` from both knot lists, without the library's combinators.
fn sup_gap(f: &PLFunction, g: &PLFunction) -> Rat {
    let fk: Vec<(Rat, Rat)> = f.knots().iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    let gk: Vec<(Rat, Rat)> = g.knots().iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    fk.iter()
        .chain(gk.iter())
        .map(|(x, _)| {
            let d = eval_knots(&fk, x) - eval_knots(&gk, x);
            if d < int(0) {
                -d
            } else {
                d
            }
        })
        .max()
        .unwrap()
}

#[test]
fn simulation_is_deterministic() {
    for seed in [1, 42] {
        let a = simulate(1, seed).unwrap();
        let b = simulate(1, seed).unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }
    assert_ne!(simulate(1, 1).unwrap().to_text(), simulate(1, 2).unwrap().to_text());
}

#[test]
fn balls_nest_by_independent_distance() {
    for seed in 0..4 {
        let t = simulate(1, seed).unwrap();
        let mut prev = &t.start;
        for play in &t.plays {
            assert!(sup_gap(&prev.center, &play.ball.center) + &play.ball.radius < prev.radius);
            prev = &play.ball;
        }
        assert_eq!(t.plays.iter().map(|p| p.role).collect::<Vec<_>>(), [Role::P1, Role::P2]);
    }
}

#[test]
fn p2_parameters_and_scales_hold() {
    for (seed, adv) in [(3, Adversary::Random), (4, Adversary::TowardMonotone)] {
        let t = simulate_with(1, seed, adv, DEFAULT_KNOT_CAP).unwrap();
        let p = t.plays[1].params.as_ref().unwrap();
        assert!(&p.mu - &p.delta * int(2) > int(0));
        assert!(&p.eta - &p.delta * int(2) > int(0));
        assert!(p.alpha > int(0));
        let check = verify_limit_scales(&t, 20).unwrap();
        assert!(check.all_hold(), "{check:?}");
        assert!(check.records.iter().all(|r| r.density > r.alpha));
    }
}

#[test]
fn dq_spot_checks_pass() {
    let t = simulate(1, 9).unwrap();
    let play = &t.plays[1];
    let p = play.params.as_ref().unwrap();
    assert_eq!(dq_spot_check(&play.ball.center, p, 5, 40).unwrap(), 40);
}

/// Knots of `g` covering `[lo, hi]`, including the bracketing neighbours.
fn knots_over(g: &[(Rat, Rat)], lo: &Rat, hi: &Rat) -> Vec<(Rat, Rat)> {
    let a = g.iter().rposition(|(x, _)| x <= lo).unwrap();
    let b = g.iter().position(|(x, _)| x >= hi).unwrap();
    g[a..=b].to_vec()
}

#[test]
fn recorded_densities_match_a_level_set_oracle() {
    let t = simulate(1, 10).unwrap();
    let play = &t.plays[1];
    let p = play.params.as_ref().unwrap();
    let g: Vec<(Rat, Rat)> = play.ball.center.knots().iter().map(|k| (k.x.clone(), k.y.clone())).collect();
    let check = verify_limit_scales(&t, 10).unwrap();
    assert_eq!(check.records.len(), 10);
    for r in &check.records {
        let (lo, hi) = (r.cell.lo(), r.cell.hi());
        let local = knots_over(&g, lo, hi);
        let y0 = eval_knots(&local, &r.x0);
        let mut mass = int(0);
        let right = &r.x0 + &p.eta;
        if &right < hi {
            let from = if &right > lo { right } else { lo.clone() };
            mass += meas(&superlevel_oracle(&local, &(&y0 + &p.mu), &from, hi), &from, hi);
        }
        let left = &r.x0 - &p.eta;
        if &left > lo {
            let to = if &left < hi { left } else { hi.clone() };
            let above = superlevel_oracle(&local, &(&y0 - &p.mu), lo, &to);
            mass += (&to - lo) - meas(&above, lo, &to);
        }
        assert_eq!(r.density, mass / r.cell.length());
        assert_eq!(r.margin, &p.mu - &p.delta * int(2));
    }
}

#[test]
fn p1_moves_stay_inside() {
    let b = Ball::unit();
    for seed in 0..20 {
        let m = p1_move(&b, Adversary::Random, seed).unwrap();
        assert!(sup_gap(&b.center, &m.center) + &m.radius < b.radius);
        assert_eq!(m.radius, rat(1, 4));
    }
}

#[test]
fn p2_move_on_a_simple_ball() {
    let b = Ball::new(pl(&[(int(0), int(0)), (int(1), rat(1, 8))]), rat(1, 4)).unwrap();
    let (next, params) = p2_move(&b, DEFAULT_KNOT_CAP).unwrap();
    assert!(sup_gap(&b.center, &next.center) + &next.radius < b.radius);
    assert!(params.partition_covers_unit());
}

#[test]
fn transcript_text_round_trips() {
    let t = simulate(1, 17).unwrap();
    let text = t.to_text();
    let back = GameTranscript::from_text(&text).unwrap();
    assert_eq!(back, t);
    assert_eq!(back.to_text(), text);
    assert!(GameTranscript::from_text(&text.replacen("GAME v1", "GAME v2", 1)).is_err());
}
