//! Enumeration of numerical destabilizers and the quadric's exceptional
//! decomposition.
//!
//! For fixed v and 0 <= r_w <= rank_max the candidates w = (r_w, c_w, d_w) are
//! finite: c_w is trapped by 0 <= ch1^beta(w) <= ch1^beta(v) at some beta of the
//! window, and d_w by the three linear conditions Delta(w) >= 0,
//! Delta(v - w) >= 0 and Delta(w) + Delta(v - w) <= Delta(v). The coefficient of
//! d_w in those is 2r_w, -2(r_v - r_w) and 2(r_v - 2r_w), so both sides are
//! bounded unless r_v = r_w = 0, where no semicircle exists anyway.

use crate::bounds::{e_max, WitnessKind, WitnessTriple};
use crate::chern::{delta, standard, twist, ChernCharacter};
use crate::error::{Error, Result};
use crate::rational::{ceil_i64, floor_i64, int, is_integer, q, serde_q, to_i64, Rational};
use crate::tilt::{circle_data, numerical_wall, radius_bound, Truncation, Wall};
use crate::varieties::{get_variety, VarietyId};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BetaWindow {
    #[serde(with = "serde_q")]
    pub lo: Rational,
    #[serde(with = "serde_q")]
    pub hi: Rational,
}

impl BetaWindow {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        BetaWindow { lo, hi }
    }

    pub fn point(b: Rational) -> Self {
        BetaWindow { lo: b.clone(), hi: b }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// Whether the open span (s - rho, s + rho) meets the window.
    pub fn meets(&self, s: &Rational, r2: &Rational) -> bool {
        let below = |x: Rational| !x.is_positive() && !x.is_zero() || &x * &x < *r2;
        // s - rho < hi and lo < s + rho
        below(s - &self.hi) && below(&self.lo - s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// Reported w is the subobject, v - w the quotient (v - w is out of the rank range).
    Sub,
    /// Reported w is the quotient.
    Quotient,
    /// Both w and v - w are in the rank range; the pair is reported once.
    Either,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabilizerCandidate {
    pub w: Truncation,
    pub wall: Wall,
    pub side: Side,
    pub satisfied_constraints: Vec<String>,
}

impl DestabilizerCandidate {
    pub fn complement(&self) -> Truncation {
        self.wall.v.sub(&self.w)
    }

    /// True when t is w or v - w.
    pub fn involves(&self, t: &Truncation) -> bool {
        self.w == *t || self.complement() == *t
    }
}

/// Walls grouped by (center, radius^2) with all their witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallGroup {
    #[serde(with = "serde_q")]
    pub center: Rational,
    #[serde(with = "serde_q")]
    pub radius_sq: Rational,
    pub witnesses: Vec<Truncation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scan {
    pub candidates: Vec<DestabilizerCandidate>,
    /// Every (r_w, c_w) cell had a bounded d_w interval.
    pub exhaustive: bool,
}

struct Ctx<'a> {
    v: Truncation,
    delta_v: Rational,
    rank_max: i64,
    window: &'a BetaWindow,
    min_r2: &'a Rational,
    step: i64,
}

/// f(beta) = a - b beta is >= 0 on [s - rho, s + rho].
fn nonneg_on_span(a: &Rational, b: &Rational, s: &Rational, r2: &Rational) -> bool {
    let f = a - b * s;
    !f.is_negative() && &f * &f >= b * b * r2
}

fn in_rank_range(r: &Rational, rank_max: i64) -> bool {
    !r.is_negative() && *r <= int(rank_max)
}

/// Preferred member of the pair {w, v - w}: larger rank, then smaller (c, d).
fn preferred(w: &Truncation, u: &Truncation) -> bool {
    match w.r.cmp(&u.r) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => (&w.c, &w.d) <= (&u.c, &u.d),
    }
}

impl Ctx<'_> {
    fn check(&self, w: &Truncation) -> Option<DestabilizerCandidate> {
        let v = &self.v;
        let u = v.sub(w);
        let wall = numerical_wall(v, w);
        let (s, r2) = wall.circle()?;
        if r2 < self.min_r2 || !self.window.meets(s, r2) {
            return None;
        }
        if !nonneg_on_span(&w.c, &w.r, s, r2) || !nonneg_on_span(&u.c, &u.r, s, r2) {
            return None;
        }
        let (dw, du) = (w.delta(), u.delta());
        if dw.is_negative() || du.is_negative() || &dw + &du > self.delta_v {
            return None;
        }
        let side = if in_rank_range(&u.r, self.rank_max) {
            if !preferred(w, &u) {
                return None;
            }
            Side::Either
        } else {
            Side::Sub
        };
        let mut tags = vec![
            "delta-sub".to_string(),
            "delta-quotient".to_string(),
            "delta-sum".to_string(),
            "tilt-positive".to_string(),
            "meets-window".to_string(),
        ];
        let rw = to_i64(&w.r).expect("integral rank");
        if !v.r.is_negative() && int(rw) > v.r {
            let b = radius_bound(v, rw).expect("rank hypothesis checked");
            if r2 <= &b {
                tags.push("radius-bound".into());
            }
        }
        Some(DestabilizerCandidate { w: w.clone(), wall, side, satisfied_constraints: tags })
    }

    /// Candidates with rank r_w; the flag reports a bounded d_w range in every cell.
    fn scan_rank(&self, rw: i64) -> (Vec<DestabilizerCandidate>, bool) {
        let v = &self.v;
        let r = int(rw);
        let ru = &v.r - &r;
        if r.is_zero() && ru.is_zero() {
            return (vec![], true);
        }
        let (b0, b1) = (&self.window.lo, &self.window.hi);
        let c_lo = ceil_i64(&(b0 * &r).min(b1 * &r));
        let c_hi_q = (&v.c - b0 * &ru).max(&v.c - b1 * &ru);
        let c_hi = floor_i64(&c_hi_q);
        let mut out = Vec::new();
        let mut bounded = true;
        for cw in c_lo..=c_hi {
            let c = int(cw);
            let cu = &v.c - &c;
            // a * d_w <= b
            let cons = [
                (int(2) * &r, &c * &c),
                (int(-2) * &ru, &cu * &cu - int(2) * &ru * &v.d),
                (
                    int(2) * (&ru - &r),
                    &self.delta_v - &c * &c - &cu * &cu + int(2) * &ru * &v.d,
                ),
            ];
            let mut lo: Option<Rational> = None;
            let mut hi: Option<Rational> = None;
            let mut feasible = true;
            for (a, b) in cons {
                if a.is_zero() {
                    feasible &= !b.is_negative();
                } else if a.is_positive() {
                    let x = b / a;
                    hi = Some(match hi {
                        Some(h) if h < x => h,
                        _ => x,
                    });
                } else {
                    let x = b / a;
                    lo = Some(match lo {
                        Some(l) if l > x => l,
                        _ => x,
                    });
                }
            }
            if !feasible {
                continue;
            }
            let (Some(lo), Some(hi)) = (lo, hi) else {
                bounded = false;
                continue;
            };
            let st = int(self.step);
            let (k0, k1) = (ceil_i64(&(&lo * &st)), floor_i64(&(&hi * &st)));
            for k in k0..=k1 {
                let w = Truncation::new(r.clone(), c.clone(), q(k, self.step));
                if let Some(cand) = self.check(&w) {
                    out.push(cand);
                }
            }
        }
        (out, bounded)
    }
}

fn order(a: &DestabilizerCandidate, b: &DestabilizerCandidate) -> std::cmp::Ordering {
    let ra = a.wall.radius_sq.as_ref();
    let rb = b.wall.radius_sq.as_ref();
    rb.cmp(&ra).then_with(|| a.w.cmp(&b.w))
}

/// Full scan; see the module docs for why the grid is finite.
pub fn scan_walls(
    v: &ChernCharacter,
    rank_max: i64,
    window: &BetaWindow,
    min_radius_sq: &Rational,
) -> Result<Scan> {
    let dv = delta(v);
    if dv.is_negative() {
        return Err(Error::Domain(format!(
            "Delta(v) = {dv} < 0: no tilt-semistable object has this class"
        )));
    }
    if rank_max < 1 {
        return Err(Error::Domain(format!("rank_max must be at least 1, got {rank_max}")));
    }
    if min_radius_sq.is_negative() {
        return Err(Error::Domain("min_radius_sq must be nonnegative".into()));
    }
    if window.is_empty() {
        return Ok(Scan { candidates: vec![], exhaustive: true });
    }
    let ctx = Ctx {
        v: Truncation::from(v),
        delta_v: dv,
        rank_max,
        window,
        min_r2: min_radius_sq,
        step: get_variety(v.variety).d_step(),
    };
    let parts: Vec<(Vec<DestabilizerCandidate>, bool)> =
        (0..=rank_max).into_par_iter().map(|rw| ctx.scan_rank(rw)).collect();
    let exhaustive = parts.iter().all(|p| p.1);
    let mut candidates: Vec<DestabilizerCandidate> = parts.into_iter().flat_map(|p| p.0).collect();
    candidates.sort_by(order);
    Ok(Scan { candidates, exhaustive })
}

pub fn enumerate_walls(
    v: &ChernCharacter,
    rank_max: i64,
    window: &BetaWindow,
    min_radius_sq: &Rational,
) -> Result<Vec<DestabilizerCandidate>> {
    Ok(scan_walls(v, rank_max, window, min_radius_sq)?.candidates)
}

/// Collapses candidates on the same wall.
pub fn group_walls(cands: &[DestabilizerCandidate]) -> Vec<WallGroup> {
    let mut groups: Vec<WallGroup> = Vec::new();
    for c in cands {
        let (s, r2) = c.wall.circle().expect("candidates are semicircles");
        match groups.iter_mut().find(|g| g.center == *s && g.radius_sq == *r2) {
            Some(g) => g.witnesses.push(c.w.clone()),
            None => groups.push(WallGroup {
                center: s.clone(),
                radius_sq: r2.clone(),
                witnesses: vec![c.w.clone()],
            }),
        }
    }
    groups
}

/// Integer solution of ch(x) = -a ch O(-1) + b ch S(-1) - c ch O + d ch O(1),
/// i.e. the class of x against O(-1)[3], S(-1)[2], O[1], O(1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "failure", content = "solution")]
pub enum DecompositionFailure {
    NotOnQuadric,
    /// The rational solution has a non-integral entry.
    NonIntegral(Vec<String>),
    /// Integral, but entries of both signs.
    NotSignCoherent(Decomposition),
}

fn solve4(m: [[Rational; 4]; 4], rhs: [Rational; 4]) -> [Rational; 4] {
    // Gauss-Jordan on the augmented matrix; the collection is a basis, so the
    // system is always regular.
    let mut a: Vec<Vec<Rational>> =
        (0..4).map(|i| m[i].iter().cloned().chain([rhs[i].clone()]).collect()).collect();
    for col in 0..4 {
        let piv = (col..4).find(|&r| !a[r][col].is_zero()).expect("regular system");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(row.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    [a[0][4].clone(), a[1][4].clone(), a[2][4].clone(), a[3][4].clone()]
}

pub fn exceptional_decomposition(
    v: &ChernCharacter,
) -> std::result::Result<Decomposition, DecompositionFailure> {
    if v.variety != VarietyId::X2 {
        return Err(DecompositionFailure::NotOnQuadric);
    }
    let x = VarietyId::X2;
    let gens = [
        -standard::line_bundle(x, -1),
        standard::spinor(-1),
        -standard::line_bundle(x, 0),
        standard::line_bundle(x, 1),
    ];
    let col = |g: &ChernCharacter| [int(g.r), int(g.c), g.d.clone(), g.e.clone()];
    let cols: Vec<[Rational; 4]> = gens.iter().map(col).collect();
    let m: [[Rational; 4]; 4] =
        std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()));
    let sol = solve4(m, col(v));
    if sol.iter().any(|s| !is_integer(s)) {
        return Err(DecompositionFailure::NonIntegral(sol.iter().map(|s| s.to_string()).collect()));
    }
    let n: Vec<i64> = sol.iter().map(|s| to_i64(s).expect("small integer")).collect();
    let dec = Decomposition { a: n[0], b: n[1], c: n[2], d: n[3] };
    let coherent = n.iter().all(|&k| k >= 0) || n.iter().all(|&k| k <= 0);
    if coherent {
        Ok(dec)
    } else {
        Err(DecompositionFailure::NotSignCoherent(dec))
    }
}

/// Decomposition of E(1), the form used when E sits at the point (alpha, beta)
/// right of -1.
pub fn exceptional_decomposition_twisted(
    v: &ChernCharacter,
) -> std::result::Result<Decomposition, DecompositionFailure> {
    let w = twist(v, &int(-1)).to_character().expect("integral twist");
    exceptional_decomposition(&w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub witness: WitnessTriple,
    pub found: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub c: i64,
    #[serde(with = "serde_q")]
    pub d: Rational,
    #[serde(with = "serde_q")]
    pub e_max: Rational,
    pub case: String,
    pub window: BetaWindow,
    pub rank_max: i64,
    pub destabilizers: Vec<DestabilizerCandidate>,
    pub witnesses: Vec<WitnessCheck>,
    pub exhaustive: bool,
    pub ok: bool,
}

/// Short name of the case of the e-bound table that (c, d) falls in.
pub fn case_name(c: i64, d: &Rational) -> String {
    let half = q(1, 2);
    let s = if d.is_zero() {
        "d = 0".to_string()
    } else if *d == -&half {
        "d = -1/2".to_string()
    } else if c == 0 && *d == int(-1) {
        "d = -1".to_string()
    } else if c == 0 && *d == int(-2) {
        "d = -2".to_string()
    } else if is_integer(d) {
        if c == 0 { "integer d <= -3" } else { "integer d <= -1" }.to_string()
    } else {
        "non-integer d <= -3/2".to_string()
    };
    format!("c = {c}, {s}")
}

/// Window used for the case (c, d): the lines beta = -1 (c = 0) and
/// beta = -3/2 (c = -1) that the case analysis works on, widened for c = 0 to
/// [-3/2, -1] so that the O(-1)^4 wall, which ends at beta = -1, is met.
pub fn case_window(c: i64) -> BetaWindow {
    if c == 0 {
        BetaWindow::new(q(-3, 2), int(-1))
    } else {
        BetaWindow::point(q(-3, 2))
    }
}

pub const CASE_RANK_MAX: i64 = 4;

pub fn verify_bound_case(c: i64, d: &Rational) -> Result<CaseReport> {
    let bound = e_max(c, d)?;
    let v = ChernCharacter::new(VarietyId::X2, 2, c, d.clone(), bound.e_max.clone())?;
    let window = case_window(c);
    let scan = scan_walls(&v, CASE_RANK_MAX, &window, &Rational::zero())?;
    let vt = Truncation::from(&v);
    let mut checks = Vec::new();
    for t in &bound.witnesses {
        let w = t.sub_truncation();
        let (found, detail) = match t.kind {
            WitnessKind::Semicircle => {
                let hit = scan.candidates.iter().find(|k| k.involves(&w));
                match hit {
                    Some(k) => {
                        let (s, r2) = k.wall.circle().expect("semicircle");
                        (true, format!("wall center {s}, radius^2 {r2}"))
                    }
                    None => (false, format!("no enumerated wall involves {w}")),
                }
            }
            WitnessKind::PointWall => {
                let c0 = window.hi.clone();
                match circle_data(&vt, &w) {
                    Some((s, r2)) if r2.is_zero() && s == c0 && !w.delta().is_negative() => {
                        (true, format!("wall collapses to the point beta = {s}"))
                    }
                    other => (false, format!("expected a point wall at {c0}, got {other:?}")),
                }
            }
            WitnessKind::Isomorphic => {
                let dec = exceptional_decomposition(&v);
                let single = matches!(&dec, Ok(x) if [x.a, x.b, x.c, x.d].iter().filter(|k| **k != 0).count() == 1);
                let ok = t.sub == v && single && scan.candidates.is_empty();
                (ok, format!("decomposition {dec:?}, {} semicircular walls", scan.candidates.len()))
            }
        };
        checks.push(WitnessCheck { witness: t.clone(), found, detail });
    }
    let ok = scan.exhaustive && checks.iter().all(|k| k.found);
    Ok(CaseReport {
        c,
        d: d.clone(),
        e_max: bound.e_max,
        case: case_name(c, d),
        window,
        rank_max: CASE_RANK_MAX,
        destabilizers: scan.candidates,
        witnesses: checks,
        exhaustive: scan.exhaustive,
        ok,
    })
}

/// All cases of the e-bound table, each integral or half-integral d from 0
/// down to `d_min`.
pub fn verify_all(d_min: i64) -> Result<Vec<CaseReport>> {
    let mut out = Vec::new();
    for c in [-1, 0] {
        for k in 0..=(-2 * d_min) {
            out.push(verify_bound_case(c, &q(-k, 2))?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2(r: i64, c: i64, d: Rational, e: Rational) -> ChernCharacter {
        ChernCharacter::new(VarietyId::X2, r, c, d, e).unwrap()
    }

    #[test]
    fn decomposition_of_spinor() {
        let s = standard::spinor(0);
        assert_eq!(exceptional_decomposition(&s).unwrap(), Decomposition { a: 0, b: -1, c: -4, d: 0 });
        let s1 = standard::spinor(-1);
        assert_eq!(
            exceptional_decomposition_twisted(&s1).unwrap(),
            Decomposition { a: 0, b: -1, c: -4, d: 0 }
        );
        let o = standard::line_bundle(VarietyId::X2, -1);
        assert_eq!(exceptional_decomposition(&o).unwrap(), Decomposition { a: -1, b: 0, c: 0, d: 0 });
        let o2 = x2(2, 0, int(0), int(0));
        assert_eq!(exceptional_decomposition(&o2).unwrap(), Decomposition { a: 0, b: 0, c: -2, d: 0 });
    }

    #[test]
    fn decomposition_failures() {
        let v = x2(1, 0, int(0), int(0)) + standard::line_bundle(VarietyId::X2, 1);
        assert!(matches!(exceptional_decomposition(&v), Err(DecompositionFailure::NotSignCoherent(_))));
        let l = standard::line_bundle(VarietyId::P3, 0);
        assert_eq!(exceptional_decomposition(&l), Err(DecompositionFailure::NotOnQuadric));
    }

    #[test]
    fn window_meets() {
        let w = BetaWindow::new(int(-2), q(-1, 2));
        assert!(w.meets(&q(-3, 2), &q(1, 4)));
        // span (-1, 0) touches the window only if -1 < -1/2
        assert!(w.meets(&q(-1, 2), &q(1, 4)));
        // span (0, 1) misses
        assert!(!w.meets(&q(1, 2), &q(1, 4)));
        // span (-5/2, -2) is open at -2
        assert!(!w.meets(&q(-9, 4), &q(1, 16)));
        assert!(BetaWindow::new(int(1), int(0)).is_empty());
    }

    #[test]
    fn line_bundle_has_no_walls() {
        let o = standard::line_bundle(VarietyId::X2, 0);
        let w = BetaWindow::new(int(-4), int(4));
        assert!(enumerate_walls(&o, 4, &w, &q(1, 100)).unwrap().is_empty());
    }

    #[test]
    fn c2_four_walls() {
        let v = x2(2, 0, int(-2), int(4));
        let w = BetaWindow::new(int(-2), q(-1, 2));
        let c = enumerate_walls(&v, 4, &w, &Rational::zero()).unwrap();
        let has = |t: Truncation| c.iter().any(|k| k.involves(&t));
        assert!(has(Truncation::ints(2, -1, int(0))));
        assert!(has(Truncation::ints(0, 1, int(-2))));
        assert!(has(Truncation::ints(4, -4, int(2))));
        assert!(matches!(enumerate_walls(&x2(1, 0, int(1), int(0)), 4, &w, &int(0)), Err(Error::Domain(_))));
        let e = BetaWindow::new(int(0), int(-1));
        assert!(enumerate_walls(&v, 4, &e, &int(0)).unwrap().is_empty());
    }

    #[test]
    fn every_case_verifies() {
        for r in verify_all(-5).unwrap() {
            assert!(r.ok, "{} d={}: {:?}", r.case, r.d, r.witnesses);
        }
    }
}
