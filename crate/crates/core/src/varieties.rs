//! Numerical data of the four Fano threefolds.
//!
//! Classes live in the basis (1, H, H^2, [pt]) for characters and (1, H, [l], [pt])
//! for Chern classes, with H^2 = degree*[l] and H^3 = degree*[pt].
//!
//! The Todd class is td = 1 + c1/2 + (c1^2 + c2)/12 + chi(O)[pt] with c1 = iH.
//! The only input beyond degree and index is c2(T).H, which follows from
//! c1 c2 = 24 chi(O) = 24, i.e. c2(T).H = 24/i. Hence the H^2 coefficient is
//! (i^2 + 24/(i*degree))/12, giving 13/12 on the quadric and 11/6 on P3.

use crate::error::{Error, Result};
use crate::rational::{int, q, Rational};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarietyId {
    P3,
    X2,
    X4,
    X5,
}

impl VarietyId {
    pub const ALL: [VarietyId; 4] = [VarietyId::P3, VarietyId::X2, VarietyId::X4, VarietyId::X5];

    pub fn data(self) -> &'static VarietyData {
        get_variety(self)
    }

    pub fn degree(self) -> i64 {
        self.data().degree
    }

    pub fn index(self) -> i64 {
        self.data().index
    }
}

impl fmt::Display for VarietyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VarietyId::P3 => "P3",
            VarietyId::X2 => "X2",
            VarietyId::X4 => "X4",
            VarietyId::X5 => "X5",
        };
        f.write_str(s)
    }
}

impl FromStr for VarietyId {
    type Err = Error;

    /// `X1` is accepted as an alias of `P3` (degree-one member of the series).
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "P3" | "X1" => Ok(VarietyId::P3),
            "X2" | "Q" => Ok(VarietyId::X2),
            "X4" => Ok(VarietyId::X4),
            "X5" => Ok(VarietyId::X5),
            _ => Err(Error::UnknownVariety(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyData {
    pub id: VarietyId,
    /// H^3.
    pub degree: i64,
    /// Fano index, omega = O(-index).
    pub index: i64,
    /// td(T) in the basis (1, H, H^2, [pt]).
    pub todd: [Rational; 4],
    /// c2(T).H as a number; equals 24/index.
    pub c2_tangent_h: Rational,
}

impl VarietyData {
    fn build(id: VarietyId, degree: i64, index: i64) -> Self {
        let c2h = q(24, index);
        let t2 = (int(index * index) + &c2h / int(degree)) / int(12);
        VarietyData {
            id,
            degree,
            index,
            todd: [int(1), q(index, 2), t2, int(1)],
            c2_tangent_h: c2h,
        }
    }

    /// Denominator step of ch2 coefficients: d lies in (1/step)Z.
    pub fn d_step(&self) -> i64 {
        num_integer::lcm(2, self.degree)
    }
}

pub fn get_variety(id: VarietyId) -> &'static VarietyData {
    static TABLE: OnceLock<[VarietyData; 4]> = OnceLock::new();
    let t = TABLE.get_or_init(|| {
        [
            VarietyData::build(VarietyId::P3, 1, 4),
            VarietyData::build(VarietyId::X2, 2, 3),
            VarietyData::build(VarietyId::X4, 4, 2),
            VarietyData::build(VarietyId::X5, 5, 2),
        ]
    });
    match id {
        VarietyId::P3 => &t[0],
        VarietyId::X2 => &t[1],
        VarietyId::X4 => &t[2],
        VarietyId::X5 => &t[3],
    }
}

pub fn get_variety_by_name(name: &str) -> Result<&'static VarietyData> {
    Ok(get_variety(name.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        let x2 = get_variety(VarietyId::X2);
        assert_eq!((x2.degree, x2.index), (2, 3));
        assert_eq!(x2.todd, [int(1), q(3, 2), q(13, 12), int(1)]);
        assert_eq!(get_variety(VarietyId::P3).todd[2], q(11, 6));
        assert_eq!(get_variety(VarietyId::X4).todd[2], q(7, 12));
        assert_eq!(get_variety(VarietyId::X5).todd[2], q(8, 15));
        assert_eq!((VarietyId::X5.degree(), VarietyId::X5.index()), (5, 2));
        assert_eq!((VarietyId::P3.degree(), VarietyId::P3.index()), (1, 4));
    }

    #[test]
    fn names() {
        assert_eq!("x1".parse::<VarietyId>().unwrap(), VarietyId::P3);
        assert!(matches!("X3".parse::<VarietyId>(), Err(Error::UnknownVariety(_))));
        assert_eq!(VarietyId::X4.to_string(), "X4");
    }

    #[test]
    fn steps() {
        let s: Vec<i64> = VarietyId::ALL.iter().map(|v| v.data().d_step()).collect();
        assert_eq!(s, vec![2, 2, 4, 10]);
    }
}
