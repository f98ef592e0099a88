//! Tilt slopes, lambda slopes and numerical walls in the (alpha, beta) half-plane.
//!
//! Walls are stored as (center, radius^2) so that everything stays rational.

use crate::chern::{delta, twist, ChernCharacter, Slope};
use crate::error::{Error, Result};
use crate::rational::{int, serde_q, Rational};
use crate::varieties::{get_variety, VarietyId};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Point of the upper half-plane; alpha = 0 is allowed as a boundary limit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TiltPoint {
    #[serde(with = "serde_q")]
    pub alpha: Rational,
    #[serde(with = "serde_q")]
    pub beta: Rational,
}

impl TiltPoint {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::Domain(format!("alpha = {alpha} is negative")));
        }
        Ok(TiltPoint { alpha, beta })
    }
}

/// ch<=2 data (r, c, d) in normalized coordinates. Entries may be rational,
/// e.g. the auxiliary class (2c, 4d, 6e/degree) of the W-wall.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Truncation {
    #[serde(with = "serde_q")]
    pub r: Rational,
    #[serde(with = "serde_q")]
    pub c: Rational,
    #[serde(with = "serde_q")]
    pub d: Rational,
}

impl Truncation {
    pub fn new(r: Rational, c: Rational, d: Rational) -> Self {
        Truncation { r, c, d }
    }

    pub fn ints(r: i64, c: i64, d: Rational) -> Self {
        Truncation { r: int(r), c: int(c), d }
    }

    pub fn delta(&self) -> Rational {
        &self.c * &self.c - int(2) * &self.r * &self.d
    }

    pub fn sub(&self, o: &Truncation) -> Truncation {
        Truncation { r: &self.r - &o.r, c: &self.c - &o.c, d: &self.d - &o.d }
    }

    pub fn scale(&self, k: &Rational) -> Truncation {
        Truncation { r: &self.r * k, c: &self.c * k, d: &self.d * k }
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// H^2 ch1^beta in units of degree.
    pub fn ch1_at(&self, beta: &Rational) -> Rational {
        &self.c - beta * &self.r
    }

    /// Proportional, i.e. identical tilt slopes everywhere.
    pub fn proportional(&self, o: &Truncation) -> bool {
        let (p, q, r) = cross(self, o);
        p.is_zero() && q.is_zero() && r.is_zero()
    }
}

impl From<&ChernCharacter> for Truncation {
    fn from(v: &ChernCharacter) -> Self {
        Truncation::ints(v.r, v.c, v.d.clone())
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.c, self.d)
    }
}

pub fn nu(v: &Truncation, p: &TiltPoint) -> Slope {
    nu_sq(v, &(&p.alpha * &p.alpha), &p.beta)
}

/// nu depends on alpha only through alpha^2, which stays rational on walls.
pub fn nu_sq(v: &Truncation, alpha_sq: &Rational, beta: &Rational) -> Slope {
    let num = &v.d - beta * &v.c + (beta * beta - alpha_sq) / int(2) * &v.r;
    Slope::ratio(num, v.ch1_at(beta))
}

/// Generalized Bogomolov-Gieseker form
/// W = alpha^2 Delta + 4 (ch2^beta)^2 - 6 ch1^beta ch3^beta / degree.
/// On the quadric this is (alpha^2+beta^2)(c^2-2rd) + (3re-2cd)beta + 4d^2 - 3ce.
///
/// The inequality W >= 0 is established on P3 and the quadric; elsewhere the
/// caller must opt in with `assume_bmt`.
pub fn big_w(v: &ChernCharacter, p: &TiltPoint, assume_bmt: bool) -> Result<Rational> {
    big_w_sq(v, &(&p.alpha * &p.alpha), &p.beta, assume_bmt)
}

pub fn big_w_sq(v: &ChernCharacter, alpha_sq: &Rational, beta: &Rational, assume_bmt: bool) -> Result<Rational> {
    if alpha_sq.is_negative() {
        return Err(Error::Domain(format!("alpha^2 = {alpha_sq} is negative")));
    }
    if !assume_bmt && !matches!(v.variety, VarietyId::P3 | VarietyId::X2) {
        return Err(Error::Domain(format!(
            "the W inequality is only established on P3 and X2, not {}; pass assume_bmt to evaluate anyway",
            v.variety
        )));
    }
    let deg = int(get_variety(v.variety).degree);
    let t = twist(v, beta);
    Ok(alpha_sq * delta(v) + int(4) * &t.d * &t.d - int(6) * &t.c * &t.e / deg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallKind {
    Semicircle,
    Vertical,
    DegenerateEverywhere,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wall {
    pub kind: WallKind,
    /// Center for semicircles, the beta value for vertical walls.
    #[serde(with = "serde_q::opt")]
    pub center: Option<Rational>,
    #[serde(with = "serde_q::opt")]
    pub radius_sq: Option<Rational>,
    pub v: Truncation,
    pub w: Truncation,
}

impl Wall {
    pub fn is_semicircle(&self) -> bool {
        self.kind == WallKind::Semicircle
    }

    /// (center, radius^2) of a semicircle.
    pub fn circle(&self) -> Option<(&Rational, &Rational)> {
        match (&self.kind, &self.center, &self.radius_sq) {
            (WallKind::Semicircle, Some(s), Some(r)) => Some((s, r)),
            _ => None,
        }
    }

    /// Whether beta lies strictly inside the span (s - rho, s + rho).
    pub fn spans(&self, beta: &Rational) -> bool {
        match self.circle() {
            Some((s, r2)) => {
                let x = beta - s;
                &x * &x < *r2
            }
            None => false,
        }
    }

    /// alpha^2 of the point of the wall above beta, if beta is in the span.
    pub fn alpha_sq_at(&self, beta: &Rational) -> Option<Rational> {
        let (s, r2) = self.circle()?;
        let x = beta - s;
        let a2 = r2 - &x * &x;
        a2.is_positive().then_some(a2)
    }
}

/// The antisymmetric coordinates (P, Q, R) of a pair. The wall equation is
/// P (alpha^2 + beta^2) + 2 Q beta - 2 R = 0.
pub fn cross(v: &Truncation, w: &Truncation) -> (Rational, Rational, Rational) {
    (
        &v.r * &w.c - &w.r * &v.c,
        &v.d * &w.r - &w.d * &v.r,
        &v.d * &w.c - &w.d * &v.c,
    )
}

/// Raw circle data (center, radius^2) when P != 0, regardless of sign.
pub fn circle_data(v: &Truncation, w: &Truncation) -> Option<(Rational, Rational)> {
    let (p, q, r) = cross(v, w);
    if p.is_zero() {
        return None;
    }
    let s = -&q / &p;
    let r2 = &s * &s + int(2) * r / p;
    Some((s, r2))
}

pub fn numerical_wall(v: &Truncation, w: &Truncation) -> Wall {
    let (p, q, r) = cross(v, w);
    let mk = |kind, center, radius_sq| Wall { kind, center, radius_sq, v: v.clone(), w: w.clone() };
    if !p.is_zero() {
        let (s, r2) = circle_data(v, w).expect("P is nonzero");
        if r2.is_positive() {
            mk(WallKind::Semicircle, Some(s), Some(r2))
        } else {
            mk(WallKind::Empty, None, None)
        }
    } else if !q.is_zero() {
        mk(WallKind::Vertical, Some(r / q), None)
    } else if r.is_zero() {
        mk(WallKind::DegenerateEverywhere, None, None)
    } else {
        mk(WallKind::Empty, None, None)
    }
}

/// The vertical wall beta = c/r of v, where ch1^beta(v) = 0.
pub fn vertical_wall(v: &Truncation) -> Option<Rational> {
    (!v.r.is_zero()).then(|| &v.c / &v.r)
}

/// The wall W(v) = 0, which is the numerical wall of (r, c, d) against
/// (2c, 4d, 6e/degree); on the quadric the second class is (2c, 4d, 3e).
pub fn w_wall(v: &ChernCharacter) -> Wall {
    let deg = int(get_variety(v.variety).degree);
    let aux = Truncation::new(int(2 * v.c), int(4) * &v.d, int(6) * &v.e / deg);
    numerical_wall(&Truncation::from(v), &aux)
}

/// alpha^2 = beta^2 + 2(d - beta c)/r on the hyperbola nu = 0, when positive.
pub fn nu_zero_alpha_sq(v: &Truncation, beta: &Rational) -> Option<Rational> {
    if v.r.is_zero() {
        return None;
    }
    let a2 = beta * beta + int(2) * (&v.d - beta * &v.c) / &v.r;
    a2.is_positive().then_some(a2)
}

/// lambda = (ch3^beta - s alpha^2 H^2 ch1^beta) / (H ch2^beta - alpha^2/2 H^3 ch0).
pub fn lambda_slope(v: &ChernCharacter, p: &TiltPoint, s: &Rational) -> Result<Slope> {
    if !s.is_positive() {
        return Err(Error::Domain(format!("s = {s} must be positive")));
    }
    let deg = int(get_variety(v.variety).degree);
    let t = twist(v, &p.beta);
    let a2 = &p.alpha * &p.alpha;
    let num = &t.e - s * &a2 * &deg * &t.c;
    let den = &deg * &t.d - &a2 * &deg * &t.r / int(2);
    Ok(Slope::ratio(num, den))
}

/// Upper bound for radius^2 of a wall induced by a sub or quotient of rank
/// rank_f > ch0(v) >= 0, namely Delta / (4 rank_f (rank_f - r)).
pub fn radius_bound(v: &Truncation, rank_f: i64) -> Result<Rational> {
    let r = &v.r;
    if r.is_negative() || int(rank_f) <= *r {
        return Err(Error::Domain(format!(
            "radius bound needs rank_f > ch0 >= 0, got rank_f = {rank_f}, ch0 = {r}"
        )));
    }
    let rf = int(rank_f);
    Ok(v.delta() / (int(4) * &rf * (&rf - r)))
}

/// Whether two semicircles meet at a point with alpha > 0 without coinciding.
pub fn semicircles_cross(a: &Wall, b: &Wall) -> bool {
    let (Some((s1, r1)), Some((s2, r2))) = (a.circle(), b.circle()) else {
        return false;
    };
    if s1 == s2 {
        return false;
    }
    // (beta - s1)^2 - (beta - s2)^2 = r1 - r2 is linear in beta
    let beta = (r1 - r2 + s2 * s2 - s1 * s1) / (int(2) * (s2 - s1));
    let x = &beta - s1;
    (r1 - &x * &x).is_positive()
}
