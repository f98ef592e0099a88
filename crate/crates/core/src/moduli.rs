//! Extension series of rank-two sheaves and the moduli components they sweep.
//!
//! Series (sub, quotient), with S a surface in |O(k)|:
//!   A: O(-n)^2 by O_S(m), all four varieties, n = ceil(k/2), m + n < 0
//!   B: O(-1)^2 by I_{l,S}(m), quadric, k = n = 1, m < 0
//!   C: S(-n) by O_S(m), quadric, n = floor(k/2) + 1, m <= -n
//!   D: S(-1) by I_{l,S}(m), quadric, k = n = 1, m <= -1
//!   F: F(-n) by O_S(m) on P3, X4, X5, n = floor(k/2) + 1, m < -n
//! Here S(-1) is the spinor bundle and F the rank-two sheaf with
//! (c1, c2, c3) = (1, 1, 1) on P3 and (1, 2, 0) on X4, X5.

use crate::bounds::c3_max;
use crate::chern::{
    chi_rr, euler_pairing, from_chern_classes, standard, to_chern_classes, ChernCharacter, ChernClasses,
};
use crate::error::{Error, Result};
use crate::rational::{binom, int, q, to_i64, Rational};
use crate::varieties::VarietyId;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    F,
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Series::A),
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            "F" | "f" => Ok(Series::F),
            _ => Err(Error::Parse(format!("unknown series `{s}` (expected A, B, C, D or F)"))),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeriesParams {
    pub series: Series,
    pub variety: VarietyId,
    pub k: i64,
    pub m: i64,
    pub n: i64,
}

impl SeriesParams {
    /// Fills in n from k as the series requires, then validates.
    pub fn new(series: Series, variety: VarietyId, k: i64, m: i64) -> Result<Self> {
        let n = match series {
            Series::A => (k + 1).div_euclid(2),
            Series::B | Series::D => 1,
            Series::C | Series::F => k.div_euclid(2) + 1,
        };
        let p = SeriesParams { series, variety, k, m, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let SeriesParams { series, variety, k, m, n } = *self;
        let bad = |why: String| Err(Error::Domain(format!("series {series}: {why}")));
        if k < 1 {
            return bad(format!("k = {k} must be positive"));
        }
        let quadric_only = matches!(series, Series::B | Series::C | Series::D);
        if quadric_only && variety != VarietyId::X2 {
            return bad(format!("defined on X2 only, got {variety}"));
        }
        if series == Series::F && variety == VarietyId::X2 {
            return bad("defined on P3, X4, X5 only".into());
        }
        match series {
            Series::A => {
                if n != (k + 1).div_euclid(2) {
                    return bad(format!("n must be ceil(k/2) = {}", (k + 1).div_euclid(2)));
                }
                if m + n >= 0 {
                    return bad(format!("needs m + n < 0, got m = {m}, n = {n}"));
                }
            }
            Series::B | Series::D => {
                if k != 1 || n != 1 {
                    return bad("needs k = n = 1".into());
                }
                let ok = if series == Series::B { m < 0 } else { m <= -1 };
                if !ok {
                    return bad(format!("needs m <= -1, got {m}"));
                }
            }
            Series::C | Series::F => {
                let want = k.div_euclid(2) + 1;
                if n != want {
                    return bad(format!("n must be floor(k/2) + 1 = {want}"));
                }
                let ok = if series == Series::C { m <= -n } else { m < -n };
                if !ok {
                    let rel = if series == Series::C { "<=" } else { "<" };
                    return bad(format!("needs m {rel} -n = {}, got {m}", -n));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SeriesParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{} k={} m={} n={}", self.series, self.variety, self.k, self.m, self.n)
    }
}

/// The rank-two sheaf F of series F.
pub fn series_f_sheaf(variety: VarietyId) -> Result<ChernCharacter> {
    let (c2, c3) = match variety {
        VarietyId::P3 => (1, 1),
        VarietyId::X4 | VarietyId::X5 => (2, 0),
        VarietyId::X2 => return Err(Error::Domain("series F is not defined on X2".into())),
    };
    from_chern_classes(&ChernClasses { variety, c1: 1, c2, c3 }, 2)
}

/// Dimension of the base W of series F: P3, a genus-two curve, a point.
pub fn series_f_base_dim(variety: VarietyId) -> i64 {
    match variety {
        VarietyId::P3 => 3,
        VarietyId::X4 => 1,
        _ => 0,
    }
}

fn sub_and_quotient(p: &SeriesParams) -> Result<(ChernCharacter, ChernCharacter)> {
    p.validate()?;
    let x = p.variety;
    let (k, m, n) = (p.k, p.m, p.n);
    Ok(match p.series {
        Series::A => (standard::line_bundle(x, -n).scale(2), standard::surface(x, k, m)),
        Series::B => (standard::line_bundle(x, -1).scale(2), standard::line_ideal_in_hyperplane(x, m)),
        Series::C => (standard::spinor(-n), standard::surface(x, k, m)),
        Series::D => (standard::spinor(-1), standard::line_ideal_in_hyperplane(x, m)),
        Series::F => (series_f_sheaf(x)?.tensor_line(-n), standard::surface(x, k, m)),
    })
}

/// ch(E) = ch(sub) + ch(quotient).
pub fn series_chern(p: &SeriesParams) -> Result<ChernCharacter> {
    let (s, t) = sub_and_quotient(p)?;
    Ok(&s + &t)
}

/// Closed-form Chern classes of series A:
///   c1 = k - 2n,
///   c2 = (k^2/4 - km) H^2 for even k, ((k-1)^2/4 - km) H^2 for odd k,
///   c3 = k (k - 2m)^2/4 H^3 for even k, k (k - 2m - 1)^2/4 H^3 for odd k.
pub fn series_a_closed_form(variety: VarietyId, k: i64, m: i64) -> ChernClasses {
    let deg = variety.degree();
    let n = (k + 1).div_euclid(2);
    let (c2, c3) = if k % 2 == 0 {
        (q(k * k, 4) - int(k * m), q(k * (k - 2 * m) * (k - 2 * m), 4))
    } else {
        (q((k - 1) * (k - 1), 4) - int(k * m), q(k * (k - 2 * m - 1) * (k - 2 * m - 1), 4))
    };
    let f = |x: Rational| to_i64(&(x * int(deg))).expect("integral class");
    ChernClasses { variety, c1: k - 2 * n, c2: f(c2), c3: f(c3) }
}

/// dim |O(k)| = chi(O(k)) - 1; higher cohomology of O(k) vanishes for k >= 0.
pub fn linear_system_dim(variety: VarietyId, k: i64) -> i64 {
    to_i64(&chi_rr(&standard::line_bundle(variety, k))).expect("integral") - 1
}

fn c(a: i64, b: i64) -> Rational {
    Rational::from_integer(binom(a, b))
}

fn cubic(x: i64, a3: Rational, a2: Rational, a1: Rational) -> Rational {
    let x = int(x);
    a3 * &x * &x * &x + a2 * &x * &x + a1 * &x
}

/// Dimension of the moduli component swept by the series, by closed formula.
pub fn series_dim(p: &SeriesParams) -> Result<i64> {
    p.validate()?;
    let (k, m, n) = (p.k, p.m, p.n);
    let a = k - m - n;
    let b = -m - n;
    let v = match (p.series, p.variety) {
        (Series::A, VarietyId::P3) => {
            int(2) * c(a + 3, 3) - int(2) * c(b + 3, 3) + c(k + 3, 3) - int(5)
        }
        (Series::A, VarietyId::X2) => {
            int(2) * (c(a + 4, 4) - c(a + 2, 4) - c(b + 4, 4) + c(b + 2, 4)) + c(k + 4, 4)
                - c(k + 2, 4)
                - int(5)
        }
        (Series::A, VarietyId::X4) => {
            let t = |x: i64| int(2) * c(x + 5, 5) - int(4) * c(x + 3, 5) + int(2) * c(x + 1, 5);
            t(a) - t(b) + c(k + 5, 5) - int(2) * c(k + 3, 5) + c(k + 1, 5) - int(5)
        }
        (Series::A, VarietyId::X5) => {
            let t = |x| cubic(x, q(5, 3), int(5), q(16, 3));
            t(a) - t(b) + cubic(k, q(5, 6), q(5, 2), q(8, 3)) - int(4)
        }
        (Series::B, _) => int(2 * m * m - 6 * m + 4),
        (Series::C, _) => {
            int(4) * c(a + 3, 3) - int(4) * c(b + 3, 3) + c(k + 4, 4) - c(k + 2, 4) - int(2)
        }
        (Series::D, _) => int(2 * m * m - 8 * m + 10),
        (Series::F, VarietyId::P3) => {
            c(k + 3, 3) + int(3) * c(b + k + 3, 3) - c(b + k + 2, 3) - int(3) * c(b + 3, 3)
                + c(b + 2, 3)
                + int(1)
        }
        (Series::F, VarietyId::X4) => {
            int(4) * (c(a + 4, 4) - c(a + 2, 4) - c(b + 4, 4) + c(b + 2, 4))
                + cubic(k, q(2, 3), int(2), q(7, 3))
        }
        (Series::F, VarietyId::X5) => {
            // in a and b, so that it agrees with series_dim_rr at every (k, m)
            let t = |x| cubic(x, q(5, 3), q(15, 2), q(65, 6));
            t(a) - t(b) + cubic(k, q(5, 6), q(5, 2), q(8, 3)) - int(1)
        }
        (s, x) => return Err(Error::Domain(format!("no dimension formula for series {s} on {x}"))),
    };
    to_i64(&v).ok_or_else(|| Error::Domain(format!("dimension {v} is not an integer")))
}

/// Same dimension from Riemann-Roch: ext^1 between quotient and sub is -chi
/// (the other Ext groups vanish in the range of the series), and the component
/// is a Grassmann or projective bundle of extensions over the parameter space.
pub fn series_dim_rr(p: &SeriesParams) -> Result<i64> {
    let (s, t) = sub_and_quotient(p)?;
    let x = p.variety;
    let nk = linear_system_dim(x, p.k);
    let g = 4;
    let v = match p.series {
        Series::A => {
            let ext = -euler_pairing(&t, &standard::line_bundle(x, -p.n))?;
            int(2) * ext - int(4) + int(nk)
        }
        Series::B => {
            let ext = -euler_pairing(&t, &standard::line_bundle(x, -1))?;
            int(g) + int(2) * (ext - int(2))
        }
        Series::C => -euler_pairing(&t, &s)? - int(1) + int(nk),
        Series::D => -euler_pairing(&t, &s)? + int(g - 1),
        Series::F => -euler_pairing(&t, &s)? + int(series_f_base_dim(x)) + int(nk) - int(1),
    };
    to_i64(&v).ok_or_else(|| Error::Domain(format!("dimension {v} is not an integer")))
}

/// Rank of the extension bundle, where a closed form is known: the maximal-c3
/// configurations on the quadric (series A and C with k = 1, series B and D).
pub fn series_bundle_rank(p: &SeriesParams) -> Option<i64> {
    p.validate().ok()?;
    let c2 = to_chern_classes(&series_chern(p).ok()?).ok()?.c2;
    match p.series {
        Series::A if p.variety == VarietyId::X2 && p.k == 1 => Some((c2 + 2) * (c2 + 2) / 4),
        Series::B => Some((c2 + 1) * (c2 + 3) / 4),
        Series::C if p.k == 1 => Some((c2 + 1) * (c2 + 3) / 2),
        Series::D => Some(2 * p.m * p.m - 8 * p.m + 7),
        _ => None,
    }
}

/// Ext^2(E, E) = 0 for a general extension of series A iff k < i and m > k - n - i.
pub fn ext2_vanishes(p: &SeriesParams) -> Result<bool> {
    p.validate()?;
    if p.series != Series::A {
        return Err(Error::Domain(format!("the Ext^2 criterion is stated for series A only, not {}", p.series)));
    }
    let i = p.variety.index();
    Ok(p.k < i && p.m > p.k - p.n - i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fibration {
    /// Bundle of 2-dimensional quotients.
    GrassmannizationRank2,
    /// Bundle of 1-dimensional quotients.
    Projectivization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    /// P^N = |O(1)| on the quadric, N = 4.
    PN,
    /// Gr(2, 4), parametrizing lines on hyperplane sections.
    G,
    /// W x P^N for series F.
    WxPN,
    Point,
}

/// Dimension of the total space over a base of dimension `base_dim`.
pub fn fibration_dim(f: Fibration, base_dim: i64, rank: i64) -> i64 {
    match f {
        Fibration::GrassmannizationRank2 => base_dim + 2 * (rank - 2),
        Fibration::Projectivization => base_dim + rank - 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliDescriptor {
    pub variety: VarietyId,
    pub c1: i64,
    pub c2: i64,
    pub c3_max: i64,
    pub dim: i64,
    pub fibration: Fibration,
    pub base: Base,
    pub base_dim: i64,
    pub bundle_rank: i64,
    pub fine: bool,
    pub smooth: bool,
    pub rational: bool,
    pub series: SeriesParams,
    pub reference: String,
}

impl ModuliDescriptor {
    pub fn fibration_law_holds(&self) -> bool {
        fibration_dim(self.fibration, self.base_dim, self.bundle_rank) == self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliComponent {
    pub name: String,
    pub dim: i64,
    pub fibration: Option<Fibration>,
    pub base: Option<Base>,
    pub base_dim: Option<i64>,
    pub bundle_rank: Option<i64>,
    /// Dimension of the closed locus of polystable sheaves, along which the
    /// moduli scheme is singular.
    pub polystable_locus_dim: Option<i64>,
    pub all_stable: Option<bool>,
}

impl ModuliComponent {
    /// None when the component carries no bundle structure.
    pub fn fibration_law_holds(&self) -> Option<bool> {
        Some(fibration_dim(self.fibration?, self.base_dim?, self.bundle_rank?) == self.dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialCase {
    pub variety: VarietyId,
    pub c1: i64,
    pub c2: i64,
    pub c3_max: i64,
    pub description: String,
    pub dim: i64,
    pub irreducible: bool,
    pub smooth: Option<bool>,
    pub components: Vec<ModuliComponent>,
    pub reference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum MaximalModuli {
    Generic(ModuliDescriptor),
    Special(SpecialCase),
}

impl MaximalModuli {
    pub fn dim(&self) -> i64 {
        match self {
            MaximalModuli::Generic(d) => d.dim,
            MaximalModuli::Special(s) => s.dim,
        }
    }
}

fn special(c1: i64, c2: i64) -> Option<SpecialCase> {
    let comp = |name: &str, dim, fib, base, base_dim, rank, sing, stable| ModuliComponent {
        name: name.into(),
        dim,
        fibration: fib,
        base,
        base_dim,
        bundle_rank: rank,
        polystable_locus_dim: sing,
        all_stable: stable,
    };
    let mk = |c3: i64, description: &str, dim, smooth, components, reference: &str| SpecialCase {
        variety: VarietyId::X2,
        c1,
        c2,
        c3_max: c3,
        description: description.into(),
        dim,
        irreducible: true,
        smooth,
        components,
        reference: reference.into(),
    };
    Some(match (c1, c2) {
        (-1, 1) => mk(0, "a single point [S(-1)]", 0, Some(true), vec![], "special cases of maximal c3, c2 = 1"),
        (0, 0) => mk(0, "a single point [O^2]", 0, Some(true), vec![], "special cases of maximal c3, c2 = 0"),
        (-1, 2) => mk(
            2,
            "Gr(2,5)",
            6,
            Some(true),
            vec![comp("Gr(2,5)", 6, Some(Fibration::GrassmannizationRank2), Some(Base::Point), Some(0), Some(5), None, Some(true))],
            "special cases of maximal c3, c1 = -1, c2 = 2",
        ),
        (0, 2) => mk(
            2,
            "irreducible of dimension 9, singular at polystable points",
            9,
            Some(false),
            vec![],
            "special cases of maximal c3, c1 = 0, c2 = 2",
        ),
        (0, 4) => mk(
            8,
            "irreducible, the closure of M2, containing M1",
            21,
            Some(false),
            vec![
                comp("M1", 20, Some(Fibration::Projectivization), Some(Base::G), Some(4), Some(17), None, Some(true)),
                comp("M2", 21, None, None, None, None, Some(12), Some(false)),
            ],
            "maximal c3 with c1 = 0, c2 = 4",
        ),
        _ => return None,
    })
}

/// Moduli space of semistable rank-two sheaves with maximal c3 on the quadric.
pub fn maximal_moduli(variety: VarietyId, c1: i64, c2: i64) -> Result<MaximalModuli> {
    if variety != VarietyId::X2 {
        return Err(Error::Domain(format!("maximal moduli are classified on X2 only, not {variety}")));
    }
    if c1 != -1 && c1 != 0 {
        return Err(Error::Domain(format!("c1 must be -1 or 0, got {c1}")));
    }
    if c2 < 0 {
        return Err(Error::Domain(format!("c2 must be nonnegative, got {c2}")));
    }
    if let Some(s) = special(c1, c2) {
        return Ok(MaximalModuli::Special(s));
    }
    let p = c2 / 2;
    let x = VarietyId::X2;
    let (params, fibration, base, reference) = match (c1, c2 % 2 == 0) {
        (-1, true) if c2 >= 4 => (
            SeriesParams::new(Series::A, x, 1, -p)?,
            Fibration::GrassmannizationRank2,
            Base::PN,
            "maximal c3, c1 = -1, even c2 >= 4",
        ),
        (-1, false) if c2 >= 3 => (
            SeriesParams::new(Series::B, x, 1, -p)?,
            Fibration::GrassmannizationRank2,
            Base::G,
            "maximal c3, c1 = -1, odd c2 >= 3",
        ),
        (0, false) if c2 >= 3 => (
            SeriesParams::new(Series::C, x, 1, -p)?,
            Fibration::Projectivization,
            Base::PN,
            "maximal c3, c1 = 0, odd c2 >= 3",
        ),
        (0, true) if c2 >= 6 => (
            SeriesParams::new(Series::D, x, 1, 1 - p)?,
            Fibration::Projectivization,
            Base::G,
            "maximal c3, c1 = 0, even c2 >= 6",
        ),
        _ => {
            return Err(Error::Domain(format!(
                "(c1, c2) = ({c1}, {c2}) has no classified maximal-c3 moduli space"
            )))
        }
    };
    let bound = c3_max(x, c1, c2, false)?;
    Ok(MaximalModuli::Generic(ModuliDescriptor {
        variety: x,
        c1,
        c2,
        c3_max: to_i64(&bound.c3_max).expect("integral"),
        dim: series_dim(&params)?,
        fibration,
        base,
        base_dim: 4,
        bundle_rank: series_bundle_rank(&params).expect("maximal configurations have a rank"),
        fine: true,
        smooth: true,
        rational: true,
        series: params,
        reference: reference.into(),
    }))
}
