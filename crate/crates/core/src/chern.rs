//! Chern characters, Chern classes, Riemann-Roch and Hilbert polynomials.
//!
//! A character is v = (r, c, d, e) meaning ch = (r, cH, dH^2, e[pt]).
//! Chern classes are (c1, c2, c3) against (H, [l], [pt]), where
//!
//!   c2 = degree*(c^2/2 - d),   c3 = 2e - degree*c^3/3 + c*c2,
//!
//! which on the quadric reads c2 = c^2 - 2d, c3 = 2e + c^3/3 - 2cd.

use crate::error::{Error, Result};
use crate::rational::{int, is_integer, serde_q, to_i64, Rational};
use crate::varieties::{get_variety, VarietyId};
use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChernCharacter {
    pub variety: VarietyId,
    pub r: i64,
    pub c: i64,
    #[serde(with = "serde_q")]
    pub d: Rational,
    #[serde(with = "serde_q")]
    pub e: Rational,
}

/// Unconstrained quadruple, the result of a twist by a non-integral beta.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Twisted {
    pub variety: VarietyId,
    #[serde(with = "serde_q")]
    pub r: Rational,
    #[serde(with = "serde_q")]
    pub c: Rational,
    #[serde(with = "serde_q")]
    pub d: Rational,
    #[serde(with = "serde_q")]
    pub e: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChernClasses {
    pub variety: VarietyId,
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
}

impl ChernCharacter {
    /// Validated constructor: d must lie in the ch2 lattice of the variety
    /// (1/2 Z on P3 and X2, 1/4 Z on X4, 1/10 Z on X5) and 6e must be integral.
    pub fn new(variety: VarietyId, r: i64, c: i64, d: Rational, e: Rational) -> Result<Self> {
        let v = ChernCharacter { variety, r, c, d, e };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        let step = get_variety(self.variety).d_step();
        if !is_integer(&(&self.d * int(step))) {
            return Err(Error::Integrality(format!(
                "ch2 coefficient {} on {} is not in (1/{step})Z",
                self.d, self.variety
            )));
        }
        if !is_integer(&(&self.e * int(6))) {
            return Err(Error::Integrality(format!(
                "ch3 coefficient {} is not in (1/6)Z",
                self.e
            )));
        }
        Ok(())
    }

    pub fn zero(variety: VarietyId) -> Self {
        ChernCharacter { variety, r: 0, c: 0, d: Rational::zero(), e: Rational::zero() }
    }

    pub fn as_twisted(&self) -> Twisted {
        Twisted {
            variety: self.variety,
            r: int(self.r),
            c: int(self.c),
            d: self.d.clone(),
            e: self.e.clone(),
        }
    }

    /// ch(E(t)) for an integer t.
    pub fn tensor_line(&self, t: i64) -> ChernCharacter {
        twist(self, &int(-t)).to_character().expect("integral twist stays integral")
    }

    pub fn scale(&self, k: i64) -> ChernCharacter {
        ChernCharacter {
            variety: self.variety,
            r: self.r * k,
            c: self.c * k,
            d: &self.d * int(k),
            e: &self.e * int(k),
        }
    }

    pub fn checked_add(&self, o: &ChernCharacter) -> Result<ChernCharacter> {
        same_variety(self.variety, o.variety)?;
        Ok(ChernCharacter {
            variety: self.variety,
            r: self.r + o.r,
            c: self.c + o.c,
            d: &self.d + &o.d,
            e: &self.e + &o.e,
        })
    }

    pub fn degree(&self) -> i64 {
        get_variety(self.variety).degree
    }
}

fn same_variety(a: VarietyId, b: VarietyId) -> Result<()> {
    if a != b {
        return Err(Error::Domain(format!("characters live on different varieties ({a}, {b})")));
    }
    Ok(())
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})@{}", self.r, self.c, self.d, self.e, self.variety)
    }
}

impl Add for &ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, o: &ChernCharacter) -> ChernCharacter {
        self.checked_add(o).expect("adding characters of different varieties")
    }
}

impl Add for ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, o: ChernCharacter) -> ChernCharacter {
        &self + &o
    }
}

impl Neg for &ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        self.scale(-1)
    }
}

impl Neg for ChernCharacter {
    type Output = ChernCharacter;
    fn neg(self) -> ChernCharacter {
        self.scale(-1)
    }
}

impl Sub for &ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, o: &ChernCharacter) -> ChernCharacter {
        self + &(-o)
    }
}

impl Sub for ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, o: ChernCharacter) -> ChernCharacter {
        &self - &o
    }
}

impl Mul<ChernCharacter> for i64 {
    type Output = ChernCharacter;
    fn mul(self, v: ChernCharacter) -> ChernCharacter {
        v.scale(self)
    }
}

impl Twisted {
    pub fn twist(&self, beta: &Rational) -> Twisted {
        let deg = int(get_variety(self.variety).degree);
        let b2 = beta * beta;
        let b3 = &b2 * beta;
        Twisted {
            variety: self.variety,
            r: self.r.clone(),
            c: &self.c - beta * &self.r,
            d: &self.d - beta * &self.c + &b2 * &self.r / int(2),
            e: &self.e
                - deg * (beta * &self.d - &b2 * &self.c / int(2) + &b3 * &self.r / int(6)),
        }
    }

    /// Back to a validated character when every entry is in range.
    pub fn to_character(&self) -> Result<ChernCharacter> {
        let r = to_i64(&self.r)
            .ok_or_else(|| Error::Integrality(format!("rank {} is not an integer", self.r)))?;
        let c = to_i64(&self.c)
            .ok_or_else(|| Error::Integrality(format!("ch1 {} is not an integer", self.c)))?;
        ChernCharacter::new(self.variety, r, c, self.d.clone(), self.e.clone())
    }
}

/// e^{-beta H} ch(v). For integral beta this is ch(v(-beta)).
pub fn twist(v: &ChernCharacter, beta: &Rational) -> Twisted {
    v.as_twisted().twist(beta)
}

pub fn to_chern_classes(v: &ChernCharacter) -> Result<ChernClasses> {
    let deg = int(v.degree());
    let c = int(v.c);
    let c2 = &deg * (&c * &c / int(2) - &v.d);
    let c3 = int(2) * &v.e - &deg * &c * &c * &c / int(3) + &c * &c2;
    let c2i = to_i64(&c2)
        .ok_or_else(|| Error::Integrality(format!("c2 = {c2} is not an integer for {v}")))?;
    let c3i = to_i64(&c3)
        .ok_or_else(|| Error::Integrality(format!("c3 = {c3} is not an integer for {v}")))?;
    Ok(ChernClasses { variety: v.variety, c1: v.c, c2: c2i, c3: c3i })
}

pub fn from_chern_classes(cl: &ChernClasses, rank: i64) -> Result<ChernCharacter> {
    if rank < 0 {
        return Err(Error::Domain(format!("rank {rank} is negative")));
    }
    let deg = int(get_variety(cl.variety).degree);
    let c = int(cl.c1);
    let c2 = int(cl.c2);
    let d = &c * &c / int(2) - &c2 / &deg;
    let e = (&deg * &c * &c * &c - int(3) * &c * &c2 + int(3) * int(cl.c3)) / int(6);
    ChernCharacter::new(cl.variety, rank, cl.c1, d, e)
}

/// Bogomolov discriminant c^2 - 2rd in the normalized basis.
pub fn delta(v: &ChernCharacter) -> Rational {
    int(v.c * v.c) - int(2 * v.r) * &v.d
}

/// Slope value, with the convention that division by zero gives +infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(Rational),
    PlusInfinity,
}

impl Slope {
    pub fn ratio(num: Rational, den: Rational) -> Slope {
        if den.is_zero() {
            Slope::PlusInfinity
        } else {
            Slope::Finite(num / den)
        }
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Slope::Finite(x) => Some(x),
            Slope::PlusInfinity => None,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(x) => write!(f, "{x}"),
            Slope::PlusInfinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn slope_mu(v: &ChernCharacter) -> Slope {
    Slope::ratio(int(v.c), int(v.r))
}

/// The [pt] coefficient of ch.td, i.e. chi(v).
pub fn chi_rr(v: &ChernCharacter) -> Rational {
    chi_quad(&v.as_twisted())
}

pub fn chi_quad(v: &Twisted) -> Rational {
    let x = get_variety(v.variety);
    let t = &x.todd;
    let deg = int(x.degree);
    &v.r * &t[3] + &deg * (&v.c * &t[2] + &v.d * &t[1]) + &v.e
}

/// ch(v)^dual: signs flip in odd degrees.
pub fn dual(v: &ChernCharacter) -> ChernCharacter {
    ChernCharacter { variety: v.variety, r: v.r, c: -v.c, d: v.d.clone(), e: -v.e.clone() }
}

fn product(a: &Twisted, b: &Twisted) -> Twisted {
    let deg = int(get_variety(a.variety).degree);
    Twisted {
        variety: a.variety,
        r: &a.r * &b.r,
        c: &a.r * &b.c + &a.c * &b.r,
        d: &a.r * &b.d + &a.c * &b.c + &a.d * &b.r,
        e: &a.r * &b.e + &a.e * &b.r + deg * (&a.c * &b.d + &a.d * &b.c),
    }
}

/// Euler pairing chi(A, B) = sum (-1)^i ext^i(A, B).
pub fn euler_pairing(a: &ChernCharacter, b: &ChernCharacter) -> Result<Rational> {
    same_variety(a.variety, b.variety)?;
    Ok(chi_quad(&product(&dual(a).as_twisted(), &b.as_twisted())))
}

/// Reading of a twisted quadruple (r, c, d, e') at beta in which e' is the
/// twisted ch3; the returned value is chi of the untwisted object.
pub fn chi_twisted_reading(tw: &Twisted, beta: &Rational) -> Rational {
    chi_quad(&tw.twist(&-beta))
}

/// Alternative reading in which the ch3 slot already holds the untwisted ch3
/// and only the truncation is twisted.
pub fn chi_untwisted_reading(tw: &Twisted, beta: &Rational) -> Rational {
    let mut v = tw.twist(&-beta);
    v.e = tw.e.clone();
    chi_quad(&v)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubicPolynomial {
    #[serde(with = "serde_q")]
    pub a3: Rational,
    #[serde(with = "serde_q")]
    pub a2: Rational,
    #[serde(with = "serde_q")]
    pub a1: Rational,
    #[serde(with = "serde_q")]
    pub a0: Rational,
}

impl CubicPolynomial {
    pub fn new(a3: Rational, a2: Rational, a1: Rational, a0: Rational) -> Self {
        CubicPolynomial { a3, a2, a1, a0 }
    }

    pub fn eval(&self, m: &Rational) -> Rational {
        ((&self.a3 * m + &self.a2) * m + &self.a1) * m + &self.a0
    }

    /// Coefficients from the top down.
    pub fn coeffs(&self) -> [&Rational; 4] {
        [&self.a3, &self.a2, &self.a1, &self.a0]
    }

    /// Degree, or -1 for the zero polynomial.
    pub fn degree(&self) -> i32 {
        let c = self.coeffs();
        for (i, a) in c.iter().enumerate() {
            if !a.is_zero() {
                return 3 - i as i32;
            }
        }
        -1
    }

    /// P2 = a3 m^2 + a2 m + a1.
    pub fn truncated(&self) -> [Rational; 3] {
        [self.a3.clone(), self.a2.clone(), self.a1.clone()]
    }
}

pub fn hilbert_poly(v: &ChernCharacter) -> CubicPolynomial {
    let x = get_variety(v.variety);
    let t = &x.todd;
    let deg = int(x.degree);
    let (r, c) = (int(v.r), int(v.c));
    CubicPolynomial {
        a3: &deg * &r / int(6),
        a2: &deg * (&r * &t[1] / int(2) + &c / int(2)),
        a1: &deg * (&r * &t[2] + &c * &t[1] + &v.d),
        a0: &r * &t[3] + &deg * (&c * &t[2] + &v.d * &t[1]) + &v.e,
    }
}

/// Order on Hilbert polynomials: lower degree is greater; at equal degree the
/// leading-coefficient-normalized polynomials are compared for m >> 0, which is
/// the lexicographic order of their normalized coefficients.
pub fn poly_compare(f: &CubicPolynomial, g: &CubicPolynomial) -> Result<Ordering> {
    let (df, dg) = (f.degree(), g.degree());
    if df < 0 && dg < 0 {
        return Err(Error::Domain("cannot compare two zero polynomials".into()));
    }
    if df != dg {
        return Ok(dg.cmp(&df));
    }
    let lead = |p: &CubicPolynomial| p.coeffs()[(3 - df) as usize].clone();
    let (lf, lg) = (lead(f), lead(g));
    for i in (3 - df) as usize + 1..4 {
        let a = f.coeffs()[i] / &lf;
        let b = g.coeffs()[i] / &lg;
        match a.cmp(&b) {
            Ordering::Equal => continue,
            o => return Ok(o),
        }
    }
    Ok(Ordering::Equal)
}

/// Standard characters used as witnesses and as series building blocks.
pub mod standard {
    use super::*;

    /// ch(O(n)).
    pub fn line_bundle(x: VarietyId, n: i64) -> ChernCharacter {
        let deg = get_variety(x).degree;
        ChernCharacter {
            variety: x,
            r: 1,
            c: n,
            d: int(n * n) / int(2),
            e: int(n * n * n * deg) / int(6),
        }
    }

    /// ch(S(n)) on the quadric, where S is the spinor bundle with det S = O(1),
    /// so ch(S(-1)) = (2, -1, 0, 1/6).
    pub fn spinor(n: i64) -> ChernCharacter {
        let s_minus_1 = ChernCharacter {
            variety: VarietyId::X2,
            r: 2,
            c: -1,
            d: Rational::zero(),
            e: crate::rational::q(1, 6),
        };
        s_minus_1.tensor_line(n + 1)
    }

    /// ch(O_S(m)) for a surface S in |O(k)|.
    pub fn surface(x: VarietyId, k: i64, m: i64) -> ChernCharacter {
        &line_bundle(x, m) - &line_bundle(x, m - k)
    }

    /// ch(O_l(m)) for a line l: ch2 = [l] and chi(O_l(m)) = m + 1.
    pub fn line(x: VarietyId, m: i64) -> ChernCharacter {
        let data = get_variety(x);
        let l = ChernCharacter {
            variety: x,
            r: 0,
            c: 0,
            d: crate::rational::q(1, data.degree),
            e: int(1) - crate::rational::q(data.index, 2),
        };
        l.tensor_line(m)
    }

    /// ch(I_{l,S}(m)) for a line l on a hyperplane section S.
    pub fn line_ideal_in_hyperplane(x: VarietyId, m: i64) -> ChernCharacter {
        &surface(x, 1, m) - &line(x, m)
    }
}
