//! Maximal third Chern class bounds for rank-two objects.
//!
//! On the quadric the bound is first stated on ch3 of a tilt-semistable object
//! with ch = (2, c, d, e), c in {-1, 0}, and then translated to c3. On P3 the
//! classical reflexive bounds apply; on X4 and X5 bounds are only known for
//! stable reflexive sheaves of general type with c1 = 0.

use crate::chern::{from_chern_classes, standard, to_chern_classes, ChernCharacter, ChernClasses};
use crate::error::{Error, Result};
use crate::rational::{floor_i64, int, is_integer, q, serde_q, Rational};
use crate::tilt::Truncation;
use crate::varieties::VarietyId;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    P3Reflexive,
    Quadric,
    GeneralTypeX4,
    GeneralTypeX5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// The object itself is the named exceptional sum; no semicircular wall.
    Isomorphic,
    /// Destabilized along a semicircular numerical wall.
    Semicircle,
    /// The wall shrinks to a point on the beta axis.
    PointWall,
}

/// A named destabilizing triple 0 -> sub -> E -> quotient -> 0. Shifted
/// quotients carry negated characters, so sub + quotient = ch(E).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTriple {
    pub label: String,
    pub kind: WitnessKind,
    pub sub: ChernCharacter,
    pub quotient: ChernCharacter,
}

impl WitnessTriple {
    pub fn sub_truncation(&self) -> Truncation {
        Truncation::from(&self.sub)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundResult {
    pub variety: VarietyId,
    pub c1: i64,
    pub c2: i64,
    /// Integral bound on c3.
    #[serde(with = "serde_q")]
    pub c3_max: Rational,
    /// Unrounded bound, when it differs from `c3_max`.
    #[serde(with = "serde_q::opt")]
    pub c3_max_raw: Option<Rational>,
    /// ch3 coefficient of the extremal rank-two character.
    #[serde(with = "serde_q")]
    pub e_max: Rational,
    pub regime: Regime,
    pub witnesses: Vec<WitnessTriple>,
    pub caveats: Vec<String>,
}

fn x2() -> VarietyId {
    VarietyId::X2
}

fn o(n: i64) -> ChernCharacter {
    standard::line_bundle(x2(), n)
}

fn triple(label: String, kind: WitnessKind, sub: ChernCharacter, v: &ChernCharacter) -> WitnessTriple {
    let quotient = v - &sub;
    WitnessTriple { label, kind, sub, quotient }
}

/// Bound on e for a tilt-semistable object with ch = (2, c, d, e) on the quadric.
pub fn e_max(c: i64, d: &Rational) -> Result<BoundResult> {
    if c != -1 && c != 0 {
        return Err(Error::Domain(format!("c must be -1 or 0, got {c}")));
    }
    if d.is_positive() {
        return Err(Error::Domain(format!("with c = {c} semistability forces d <= 0, got d = {d}")));
    }
    if !is_integer(&(d * int(2))) {
        return Err(Error::Integrality(format!("d = {d} is not in (1/2)Z")));
    }
    let d2 = d * d;
    let integral = is_integer(d);
    let e = match (c, integral) {
        (-1, _) if d.is_zero() => q(1, 6),
        (-1, _) if *d == q(-1, 2) => q(5, 3),
        (-1, true) => &d2 - int(2) * d + q(1, 6),
        (-1, false) => &d2 - int(2) * d + q(5, 12),
        (0, _) if d.is_zero() => int(0),
        (0, _) if *d == q(-1, 2) => q(-1, 2),
        (0, _) if *d == int(-1) => int(1),
        (0, false) => &d2 + q(1, 4),
        (0, true) => d2.clone(),
        _ => unreachable!(),
    };
    let v = ChernCharacter::new(x2(), 2, c, d.clone(), e.clone())?;
    let cl = to_chern_classes(&v)?;
    let half = q(1, 2);
    let mut w = Vec::new();
    use WitnessKind::*;
    match (c, integral) {
        (-1, _) if d.is_zero() => {
            w.push(triple("E = S(-1)".into(), Isomorphic, v.clone(), &v));
        }
        (-1, _) if *d == -&half => {
            w.push(triple("0 -> O(-1)^3 -> E -> O(-2)[1] -> 0".into(), Semicircle, o(-1).scale(3), &v));
        }
        (-1, true) => {
            let label = format!("0 -> O(-1)^2 -> E -> I_{{l,Q2}}({d}) -> 0");
            w.push(triple(label, Semicircle, o(-1).scale(2), &v));
        }
        (-1, false) => {
            let label = format!("0 -> O(-1)^2 -> E -> O_Q2({}) -> 0", d - &half);
            w.push(triple(label, Semicircle, o(-1).scale(2), &v));
        }
        (0, _) if d.is_zero() => {
            w.push(triple("E = O^2".into(), Isomorphic, v.clone(), &v));
        }
        (0, _) if *d == -&half => {}
        (0, _) if *d == int(-1) => {
            w.push(triple("0 -> O(-1)^6 -> E -> S(-2)^2[1] -> 0".into(), PointWall, o(-1).scale(6), &v));
        }
        (0, false) => {
            let label = format!("0 -> S(-1) -> E -> O_Q2({}) -> 0", d + &half);
            w.push(triple(label, Semicircle, standard::spinor(-1), &v));
        }
        (0, true) if *d == int(-2) => {
            let i = standard::line_ideal_in_hyperplane(x2(), -1);
            w.push(triple("0 -> S(-1) -> E -> I_{l,Q2}(-1) -> 0".into(), Semicircle, standard::spinor(-1), &v));
            w.push(triple("0 -> I_{l,Q2}(-1) -> E -> S(-1) -> 0".into(), Semicircle, i, &v));
            w.push(triple("0 -> O(-1)^4 -> E -> O(-2)^2[1] -> 0".into(), Semicircle, o(-1).scale(4), &v));
        }
        (0, true) => {
            let label = format!("0 -> S(-1) -> E -> I_{{l,Q2}}({}) -> 0", d + int(1));
            w.push(triple(label, Semicircle, standard::spinor(-1), &v));
        }
        _ => unreachable!(),
    }
    Ok(BoundResult {
        variety: x2(),
        c1: c,
        c2: cl.c2,
        c3_max: int(cl.c3),
        c3_max_raw: None,
        e_max: e,
        regime: Regime::Quadric,
        witnesses: w,
        caveats: vec![],
    })
}

/// Largest c3 of a rank-two sheaf with the given c1, c2.
///
/// X4 and X5 bounds hold only for stable reflexive sheaves of general type with
/// c1 = 0 and c2 > 0; `general_type` must be set to acknowledge this.
pub fn c3_max(variety: VarietyId, c1: i64, c2: i64, general_type: bool) -> Result<BoundResult> {
    if c1 != -1 && c1 != 0 {
        return Err(Error::Domain(format!("c1 must be -1 or 0, got {c1}")));
    }
    if c2 < 0 {
        return Err(Error::Domain(format!("c2 must be nonnegative, got {c2}")));
    }
    let mut caveats = Vec::new();
    let mut raw = None;
    let mut witnesses = Vec::new();
    let (c3, regime) = match variety {
        VarietyId::X2 => {
            let even = c2 % 2 == 0;
            let c3 = match (c1, even) {
                (0, false) if c2 == 1 => {
                    caveats.push(
                        "attainment by a Gieseker-semistable sheaf is not known for (c1, c2) = (0, 1)".into(),
                    );
                    int(-1)
                }
                (_, true) => q(c2 * c2, 2),
                (-1, false) => q(c2 * c2 - 1, 2),
                (_, false) => q(c2 * c2 + 1, 2),
            };
            let d = q(c1 * c1 - c2, 2);
            if d.is_positive() {
                caveats.push(format!("vacuous: ch2 = {d} > 0 admits no semistable object"));
            } else {
                witnesses = e_max(c1, &d)?.witnesses;
            }
            (c3, Regime::Quadric)
        }
        VarietyId::P3 => {
            let c3 = match c1 {
                0 if c2 == 0 => {
                    caveats.push("c2 = 0 forces E = O^2".into());
                    int(0)
                }
                0 => int(c2 * c2 - c2 + 2),
                _ => int(c2 * c2),
            };
            (c3, Regime::P3Reflexive)
        }
        VarietyId::X4 | VarietyId::X5 => {
            if !general_type {
                return Err(Error::Domain(format!(
                    "bounds on {variety} are proved only for stable reflexive sheaves of general type; set the general-type flag"
                )));
            }
            if c1 != 0 {
                return Err(Error::Domain(format!("c1 = {c1} is unsupported on {variety}; only c1 = 0 is covered")));
            }
            if c2 <= 0 {
                return Err(Error::Domain(format!("general-type bound needs c2 > 0 on {variety}")));
            }
            if variety == VarietyId::X4 {
                (int(c2 * c2 - c2 + 2), Regime::GeneralTypeX4)
            } else {
                let mut b = q(2 * c2 * c2, 9);
                if c2 % 2 != 0 {
                    b += q(1, 2);
                }
                let fl = int(floor_i64(&b));
                if fl != b {
                    raw = Some(b);
                }
                (fl, Regime::GeneralTypeX5)
            }
        }
    };
    let c3i = crate::rational::to_i64(&c3).expect("c3 bound is integral");
    let cl = ChernClasses { variety, c1, c2, c3: c3i };
    let e = from_chern_classes(&cl, 2)?.e;
    Ok(BoundResult { variety, c1, c2, c3_max: c3, c3_max_raw: raw, e_max: e, regime, witnesses, caveats })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyRow {
    pub c2: i64,
    #[serde(with = "serde_q")]
    pub d: Rational,
    #[serde(with = "serde_q::opt")]
    pub e_max: Option<Rational>,
    /// c3 obtained by converting e_max.
    pub c3_from_e: Option<i64>,
    #[serde(with = "serde_q")]
    pub c3_max: Rational,
    /// None when the case is vacuous (d > 0).
    pub agree: Option<bool>,
}

/// Compares the ch3-level bound, converted to c3, against the c3-level bound
/// on the quadric for every c2 in the range.
pub fn bounds_consistency(c1: i64, c2_range: std::ops::RangeInclusive<i64>) -> Result<Vec<ConsistencyRow>> {
    if c1 != -1 && c1 != 0 {
        return Err(Error::Domain(format!("c1 must be -1 or 0, got {c1}")));
    }
    let mut rows = Vec::new();
    for c2 in c2_range {
        let b = c3_max(x2(), c1, c2, false)?;
        let d = q(c1 * c1 - c2, 2);
        let row = if d.is_positive() {
            ConsistencyRow { c2, d, e_max: None, c3_from_e: None, c3_max: b.c3_max, agree: None }
        } else {
            let em = e_max(c1, &d)?;
            let v = ChernCharacter::new(x2(), 2, c1, d.clone(), em.e_max.clone())?;
            let c3 = to_chern_classes(&v)?.c3;
            let agree = int(c3) == b.c3_max && em.e_max == b.e_max;
            ConsistencyRow { c2, d, e_max: Some(em.e_max), c3_from_e: Some(c3), c3_max: b.c3_max, agree: Some(agree) }
        };
        rows.push(row);
    }
    Ok(rows)
}
