//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails. All comparisons are exact.

mod common;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use tilt_core::bounds::{bounds_consistency, c3_max, e_max, WitnessKind};
use tilt_core::chern::{chi_rr, delta, from_chern_classes, standard, to_chern_classes, twist};
use tilt_core::moduli::{
    maximal_moduli, series_bundle_rank, series_chern, series_dim, series_dim_rr, MaximalModuli, Series,
    SeriesParams,
};
use tilt_core::rational::{binom, int, q, to_i64};
use tilt_core::tilt::{big_w, numerical_wall, radius_bound, semicircles_cross, w_wall};
use tilt_core::walls::{enumerate_walls, exceptional_decomposition, verify_all, BetaWindow, Decomposition};
use tilt_core::{ChernCharacter, ChernClasses, Rational, TiltPoint, Truncation, VarietyId};

type Outcome = Result<(), String>;
type RationalMap = fn(&Rational) -> Rational;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const X2: VarietyId = VarietyId::X2;

fn x2(r: i64, c: i64, d: Rational, e: Rational) -> ChernCharacter {
    ChernCharacter::new(X2, r, c, d, e).unwrap()
}

fn bound_tables() -> Outcome {
    for c1 in [-1, 0] {
        for c2 in 0..=60i64 {
            let got = c3_max(X2, c1, c2, false).map_err(|e| e.to_string())?.c3_max;
            let sq = c2 * c2;
            let want = match (c1, c2 % 2 == 0) {
                (0, _) if c2 == 1 => int(-1),
                (_, true) => q(sq, 2),
                (-1, false) => q(sq - 1, 2),
                _ => q(sq + 1, 2),
            };
            ensure!(got == want, "c3_max({c1}, {c2}) = {got}, expected {want}");
        }
    }
    let specials = [(-1, 1, 0), (0, 0, 0), (-1, 2, 2), (0, 1, -1), (0, 4, 8)];
    for (c1, c2, v) in specials {
        let got = c3_max(X2, c1, c2, false).unwrap().c3_max;
        ensure!(got == int(v), "special ({c1}, {c2}) -> {got}, expected {v}");
    }
    Ok(())
}

fn consistency() -> Outcome {
    for c1 in [-1, 0] {
        for row in bounds_consistency(c1, 0..=60).map_err(|e| e.to_string())? {
            ensure!(row.agree != Some(false), "c1 = {c1}, c2 = {}: e and c3 bounds disagree", row.c2);
        }
    }
    // The four identities are quadratic in d, so agreement at three points
    // proves them. Conversion: c2 = 2(c^2/2 - d), c3 = 2e - 2c^3/3 + c c2.
    let cases: [(i64, bool, RationalMap, RationalMap); 4] = [
        (-1, true, |d| d * d - int(2) * d + q(1, 6), |c2| (c2 * c2 - int(1)) / int(2)),
        (-1, false, |d| d * d - int(2) * d + q(5, 12), |c2| c2 * c2 / int(2)),
        (0, true, |d| d * d, |c2| c2 * c2 / int(2)),
        (0, false, |d| d * d + q(1, 4), |c2| (c2 * c2 + int(1)) / int(2)),
    ];
    for (c, integral, e_of, rhs) in cases {
        for k in [-7i64, -4, -2] {
            let d = if integral { int(k) } else { int(k) - q(1, 2) };
            let cc = int(c);
            let c2 = int(2) * (&cc * &cc / int(2) - &d);
            let c3 = int(2) * e_of(&d) - int(2) * &cc * &cc * &cc / int(3) + &cc * &c2;
            ensure!(c3 == rhs(&c2), "identity fails for c = {c}, d = {d}");
            let bound = e_max(c, &d).map_err(|e| e.to_string())?;
            ensure!(bound.e_max == e_of(&d), "e_max({c}, {d}) = {}", bound.e_max);
        }
    }
    Ok(())
}

fn wall_values() -> Outcome {
    let p = TiltPoint::new(int(0), int(-1)).unwrap();
    for k in -30..=30 {
        let e = q(k, 6);
        let a = big_w(&x2(2, 0, int(-2), e.clone()), &p, false).unwrap();
        ensure!(a == int(24) - int(6) * &e, "W(2,0,-2,{e}) = {a}");
        let b = big_w(&x2(2, 0, q(-3, 2), e.clone()), &p, false).unwrap();
        ensure!(b == int(15) - int(6) * &e, "W(2,0,-3/2,{e}) = {b}");
    }
    let p = TiltPoint::new(int(0), q(-3, 2)).unwrap();
    let w = big_w(&x2(2, -1, q(-1, 2), q(5, 3)), &p, false).unwrap();
    ensure!(w == q(-3, 4), "W(2,-1,-1/2,5/3) at beta = -3/2 is {w}");
    Ok(())
}

fn wall_coincidence() -> Outcome {
    let a = numerical_wall(&Truncation::ints(2, 0, int(-2)), &Truncation::ints(2, -2, int(1)));
    let b = w_wall(&x2(2, 0, int(-2), int(4)));
    let want = (q(-3, 2), q(1, 4));
    let got_a = a.circle().map(|(s, r)| (s.clone(), r.clone()));
    let got_b = b.circle().map(|(s, r)| (s.clone(), r.clone()));
    ensure!(got_a == Some(want.clone()), "numerical wall {got_a:?}");
    ensure!(got_b == Some(want), "W-wall {got_b:?}");
    Ok(())
}

/// Walls of v found by a plain box scan. The wall of w is recovered from the
/// alpha = 0 section nu_v(beta) = nu_w(beta), which after clearing denominators
/// is a quadratic in beta; its coefficients are fitted from three values.
fn oracle_walls(v: &ChernCharacter, window: &BetaWindow, min_r2: &Rational) -> BTreeSet<(Rational, Rational)> {
    let (rv, cv, dv) = (int(v.r), int(v.c), v.d.clone());
    let f = |w: &(Rational, Rational, Rational), b: &Rational| {
        let num = |r: &Rational, c: &Rational, d: &Rational| d - b * c + b * b * r / int(2);
        let den = |r: &Rational, c: &Rational| c - b * r;
        num(&rv, &cv, &dv) * den(&w.0, &w.1) - num(&w.0, &w.1, &w.2) * den(&rv, &cv)
    };
    let disc = |r: &Rational, c: &Rational, d: &Rational| c * c - int(2) * r * d;
    let mut out = BTreeSet::new();
    for r in 0..=4i64 {
        for c in -12..=8i64 {
            for d2 in -60..=60i64 {
                let w = (int(r), int(c), q(d2, 2));
                let u = (&rv - &w.0, &cv - &w.1, &dv - &w.2);
                let (y0, y1, ym) = (f(&w, &int(0)), f(&w, &int(1)), f(&w, &int(-1)));
                let a = (&y1 + &ym) / int(2) - &y0;
                let b = (&y1 - &ym) / int(2);
                if a.is_zero() {
                    continue;
                }
                let s = -&b / (int(2) * &a);
                let r2 = &s * &s - &y0 / &a;
                if !r2.is_positive() || r2 < *min_r2 {
                    continue;
                }
                if disc(&w.0, &w.1, &w.2).is_negative() || disc(&u.0, &u.1, &u.2).is_negative() {
                    continue;
                }
                // ch1^beta of w and of v - w nonnegative over the whole wall
                let pos = |x: &(Rational, Rational, Rational)| {
                    let at = &x.1 - &s * &x.0;
                    !at.is_negative() && &at * &at >= &x.0 * &x.0 * &r2
                };
                if !pos(&w) || !pos(&u) {
                    continue;
                }
                // open span meets the window
                let gap_hi = &s - &window.hi;
                let gap_lo = &window.lo - &s;
                let meets = |g: &Rational| g.is_negative() || g * g < r2;
                if meets(&gap_hi) && meets(&gap_lo) {
                    out.insert((s, r2));
                }
            }
        }
    }
    out
}

fn enumeration() -> Outcome {
    let reports = verify_all(-5).map_err(|e| e.to_string())?;
    let mut cases = BTreeSet::new();
    for r in &reports {
        ensure!(r.exhaustive, "{} (d = {}) not exhaustive", r.case, r.d);
        ensure!(r.ok, "{} (d = {}): {:?}", r.case, r.d, r.witnesses.iter().filter(|w| !w.found).map(|w| &w.detail).collect::<Vec<_>>());
        cases.insert(r.case.clone());
    }
    ensure!(cases.len() == 10, "only {} distinct cases covered", cases.len());
    let c2_4 = reports.iter().find(|r| r.c == 0 && r.d == int(-2)).unwrap();
    let kinds: Vec<_> = c2_4.witnesses.iter().map(|w| (w.witness.kind, w.found)).collect();
    ensure!(
        kinds == vec![(WitnessKind::Semicircle, true); 3],
        "witnesses for (0,-2): {kinds:?}"
    );
    let v = x2(2, 0, int(-2), int(4));
    let window = BetaWindow::new(int(-2), q(-1, 2));
    let min = q(1, 100);
    let found: BTreeSet<_> = enumerate_walls(&v, 4, &window, &min)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|c| {
            let (s, r2) = c.wall.circle().unwrap();
            (s.clone(), r2.clone())
        })
        .collect();
    let oracle = oracle_walls(&v, &window, &min);
    ensure!(found == oracle, "enumerated {found:?}, oracle {oracle:?}");
    Ok(())
}

fn decomposition() -> Outcome {
    let got = exceptional_decomposition(&standard::spinor(0)).map_err(|e| format!("{e:?}"))?;
    ensure!(got == Decomposition { a: 0, b: -1, c: -4, d: 0 }, "ch(S) -> {got:?}");
    Ok(())
}

fn moduli_dimensions() -> Outcome {
    let c2_of = |p: &SeriesParams| to_chern_classes(&series_chern(p).unwrap()).unwrap().c2;
    for p in 2..=10 {
        let s = SeriesParams::new(Series::A, X2, 1, -p).unwrap();
        let c2 = c2_of(&s);
        let dim = series_dim(&s).unwrap();
        ensure!(2 * dim == (c2 + 2) * (c2 + 2), "A, p = {p}: dim {dim}, c2 {c2}");
    }
    for p in 1..=10 {
        let m = -p;
        let s = SeriesParams::new(Series::B, X2, 1, m).unwrap();
        let (c2, dim) = (c2_of(&s), series_dim(&s).unwrap());
        ensure!(dim == 2 * m * m - 6 * m + 4, "B, m = {m}: dim {dim}");
        ensure!(c2 == 2 * p + 1 && 2 * dim == (c2 + 1) * (c2 + 3), "B, m = {m}: c2 {c2}");
    }
    for p in 1..=10 {
        let s = SeriesParams::new(Series::C, X2, 1, -p).unwrap();
        let (c2, dim) = (c2_of(&s), series_dim(&s).unwrap());
        ensure!(2 * dim == c2 * c2 + 4 * c2 + 9, "C, m = {}: dim {dim}, c2 {c2}", -p);
    }
    for p in 3..=10 {
        let s = SeriesParams::new(Series::D, X2, 1, 1 - p).unwrap();
        let (c2, dim) = (c2_of(&s), series_dim(&s).unwrap());
        ensure!(2 * dim == c2 * c2 + 4 * c2 + 8, "D, m = {}: dim {dim}, c2 {c2}", 1 - p);
    }
    let d = SeriesParams::new(Series::D, X2, 1, -1).unwrap();
    ensure!(series_dim(&d).unwrap() == 20, "D, m = -1: dim {}", series_dim(&d).unwrap());
    ensure!(series_bundle_rank(&d) == Some(17), "D, m = -1: rank {:?}", series_bundle_rank(&d));

    let dims: Vec<i64> = [(-1, 2), (0, 2)].iter().map(|(a, b)| maximal_moduli(X2, *a, *b).unwrap().dim()).collect();
    ensure!(dims == vec![6, 9], "special dimensions {dims:?}");
    let MaximalModuli::Special(s) = maximal_moduli(X2, 0, 4).unwrap() else { return Err("(0,4) not special".into()) };
    let comp: Vec<(String, i64)> = s.components.iter().map(|c| (c.name.clone(), c.dim)).collect();
    ensure!(comp == vec![("M1".into(), 20), ("M2".into(), 21)], "(0,4) components {comp:?}");
    for (c1, c2) in [(-1, 1), (0, 0)] {
        let m = maximal_moduli(X2, c1, c2).unwrap();
        ensure!(m.dim() == 0, "({c1}, {c2}) is not a point");
    }

    // P3, k = n = 1, m = -2: a = k - m - n = 2, b = -m - n = 1
    let s = SeriesParams::new(Series::A, VarietyId::P3, 1, -2).unwrap();
    let c = |a: i64, b: i64| to_i64(&Rational::from_integer(binom(a, b))).unwrap();
    let direct = 2 * c(5, 3) - 2 * c(4, 3) + c(4, 3) - 5;
    ensure!(direct == 11, "hand evaluation gives {direct}");
    ensure!(series_dim(&s).unwrap() == 11 && series_dim_rr(&s).unwrap() == 11, "P3 series A dim");
    Ok(())
}

fn fibration_law() -> Outcome {
    let mut n = 0;
    for c1 in [-1, 0] {
        for c2 in 0..=60 {
            match maximal_moduli(X2, c1, c2) {
                Ok(MaximalModuli::Generic(g)) => {
                    ensure!(g.fibration_law_holds(), "({c1}, {c2}): {g:?}");
                    n += 1;
                }
                Ok(MaximalModuli::Special(s)) => {
                    for comp in &s.components {
                        if let Some(ok) = comp.fibration_law_holds() {
                            ensure!(ok, "({c1}, {c2}) component {}", comp.name);
                            n += 1;
                        }
                    }
                }
                Err(_) => {}
            }
        }
    }
    ensure!(n >= 110, "only {n} descriptors checked");
    Ok(())
}

fn run_prop<S: Strategy>(s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner.run(&s, f).map_err(|e| e.to_string())
}

fn property_suites() -> Outcome {
    let variety = prop_oneof![Just(VarietyId::P3), Just(X2), Just(VarietyId::X4), Just(VarietyId::X5)];
    run_prop((variety.clone(), -6i64..=6, -60i64..=60, -200i64..=200, 0i64..=6), |(variety, c1, c2, c3, r)| {
        let cl = ChernClasses { variety, c1, c2, c3 };
        let v = from_chern_classes(&cl, r).unwrap();
        prop_assert_eq!(to_chern_classes(&v).unwrap(), cl);
        Ok(())
    })
    .map_err(|e| format!("round trip: {e}"))?;

    let character = (variety.clone(), -6i64..=6, -8i64..=8, -40i64..=40, -60i64..=60)
        .prop_map(|(x, r, c, d, e)| ChernCharacter::new(x, r, c, q(d, x.data().d_step()), q(e, 6)).unwrap());
    let beta = (-20i64..=20, 1i64..=6).prop_map(|(n, d)| q(n, d));
    run_prop((character.clone(), beta.clone(), beta.clone()), |(v, b1, b2)| {
        prop_assert_eq!(twist(&v, &b1).twist(&b2), twist(&v, &(&b1 + &b2)));
        Ok(())
    })
    .map_err(|e| format!("twist additivity: {e}"))?;

    run_prop((character, beta), |(v, b)| {
        let t = twist(&v, &b);
        prop_assert_eq!(&t.c * &t.c - int(2) * &t.r * &t.d, delta(&v));
        Ok(())
    })
    .map_err(|e| format!("delta invariance: {e}"))?;

    let quadric_v = (1i64..=3, -3i64..=3, -8i64..=0, -30i64..=30)
        .prop_map(|(r, c, d, e)| x2(r, c, q(d, 2), q(e, 6)))
        .prop_filter("Delta >= 0", |v| !delta(v).is_negative());
    let trunc = (-4i64..=4, -6i64..=6, -12i64..=12).prop_map(|(r, c, d)| Truncation::ints(r, c, q(d, 2)));
    run_prop((quadric_v.clone(), trunc.clone(), trunc), |(v, w1, w2)| {
        let vt = Truncation::from(&v);
        prop_assert!(!semicircles_cross(&numerical_wall(&vt, &w1), &numerical_wall(&vt, &w2)));
        Ok(())
    })
    .map_err(|e| format!("non-crossing: {e}"))?;

    run_prop((quadric_v, 0i64..=4, 0i64..=3), |(v, lo, width)| {
        let mu = q(v.c, v.r);
        let win = BetaWindow::new(&mu - q(lo + width, 2), &mu - q(lo, 2));
        let vt = Truncation::from(&v);
        for c in enumerate_walls(&v, 3, &win, &int(0)).unwrap() {
            let r2 = c.wall.circle().unwrap().1.clone();
            for f in [c.w.clone(), c.complement()] {
                if f.r > vt.r {
                    let bound = radius_bound(&vt, to_i64(&f.r).unwrap()).unwrap();
                    prop_assert!(r2 <= bound);
                }
            }
        }
        Ok(())
    })
    .map_err(|e| format!("radius bound: {e}"))?;

    run_prop(variety.clone(), |x| {
        prop_assert_eq!(chi_rr(&standard::line_bundle(x, 0)), int(1));
        Ok(())
    })
    .map_err(|e| format!("chi(O): {e}"))?;

    run_prop((variety, 1i64..=8, 1i64..=12), |(x, k, depth)| {
        let n = (k + 1) / 2;
        let p = SeriesParams::new(Series::A, x, k, -n - depth).unwrap();
        let cl = to_chern_classes(&series_chern(&p).unwrap()).unwrap();
        let deg = int(x.degree());
        let (c2, c3) = (int(cl.c2) / &deg, int(cl.c3) / &deg);
        if k % 2 == 0 {
            prop_assert!(c3 < q(4, k) * &c2 * &c2);
        } else if k > 1 {
            prop_assert!(c3 < q(4 * k, (k - 1) * (k - 1)) * &c2 * &c2);
        }
        Ok(())
    })
    .map_err(|e| format!("c3 inequality for series A: {e}"))
}

fn golden_files() -> Outcome {
    for (name, args, code) in common::FIXTURES {
        common::check(name, args, *code)?;
    }
    let (code, _, err) = common::run(&["verify", "--lemma", "all"]);
    ensure!(code == 0, "verify all exited {code}: {err}");
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("bound tables", bound_tables),
        ("e and c3 bound consistency", consistency),
        ("W values", wall_values),
        ("wall coincidence", wall_coincidence),
        ("destabilizer enumeration", enumeration),
        ("exceptional decomposition", decomposition),
        ("moduli dimensions", moduli_dimensions),
        ("fibration law", fibration_law),
        ("property suites", property_suites),
        ("CLI golden files", golden_files),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("[PASS] {:>2} {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
