//! Weierstrass models over `F4[t]`, places of `P¹`, fibers and sections.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::f4::F4;
use super::poly::Poly;
use super::ratfn::RatFn;
use super::GenusOneError;
use crate::lattices::AdeTag;

/// Kodaira symbol of a fiber. `I(0)` is a smooth fiber.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Kodaira {
    I(usize),
    IStar(usize),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl Kodaira {
    /// Number of irreducible components.
    pub fn components(self) -> usize {
        match self {
            Kodaira::I(0) => 1,
            Kodaira::I(n) => n,
            Kodaira::IStar(n) => n + 5,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, Kodaira::I(n) if n > 0)
    }

    pub fn is_additive(self) -> bool {
        !matches!(self, Kodaira::I(_))
    }

    /// Topological Euler number of the fiber.
    pub fn euler(self) -> usize {
        match self {
            Kodaira::I(n) => n,
            k => k.components() + 1,
        }
    }

    /// Root lattice spanned by the components missing the zero section.
    pub fn root_lattice(self) -> Option<AdeTag> {
        match self {
            Kodaira::I(n) if n >= 2 => Some(AdeTag::A(n - 1)),
            Kodaira::III => Some(AdeTag::A(1)),
            Kodaira::IV => Some(AdeTag::A(2)),
            Kodaira::IStar(n) => Some(AdeTag::D(n + 4)),
            Kodaira::IVStar => Some(AdeTag::E(6)),
            Kodaira::IIIStar => Some(AdeTag::E(7)),
            Kodaira::IIStar => Some(AdeTag::E(8)),
            _ => None,
        }
    }

    pub fn dynkin_rank(self) -> usize {
        self.root_lattice().map_or(0, AdeTag::rank)
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::IIStar => f.write_str("II*"),
            Kodaira::IIIStar => f.write_str("III*"),
            Kodaira::IVStar => f.write_str("IV*"),
        }
    }
}

impl FromStr for Kodaira {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Ok(match s {
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "II*" => Kodaira::IIStar,
            "III*" => Kodaira::IIIStar,
            "IV*" => Kodaira::IVStar,
            _ => {
                let rest = s
                    .strip_prefix('I')
                    .ok_or_else(|| format!("bad Kodaira symbol {s:?}"))?;
                let (digits, star) = match rest.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                let n: usize = digits
                    .parse()
                    .map_err(|_| format!("bad Kodaira symbol {s:?}"))?;
                if star {
                    Kodaira::IStar(n)
                } else {
                    Kodaira::I(n)
                }
            }
        })
    }
}

impl Serialize for Kodaira {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Kodaira {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A closed point of `P¹` over `F4`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Place {
    /// Zero locus of a monic irreducible polynomial.
    Finite(Poly),
    Infinity,
}

impl Place {
    /// The rational place `t = c`.
    pub fn at(c: F4) -> Place {
        Place::Finite(Poly::linear(c))
    }

    /// The point of `P¹(F4)` if the place is rational.
    pub fn rational_point(&self) -> Option<Option<F4>> {
        match self {
            Place::Infinity => Some(None),
            Place::Finite(f) if f.degree() == Some(1) => Some(Some(f.coeff(0))),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(f) => f.degree().unwrap_or(0),
        }
    }

    /// All five rational places, `0, 1, ϱ, ϱ², ∞`.
    pub fn rational_places() -> Vec<Place> {
        let mut v: Vec<Place> = F4::ALL.iter().map(|&c| Place::at(c)).collect();
        v.push(Place::Infinity);
        v
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rational_point() {
            Some(None) => f.write_str("∞"),
            Some(Some(c)) => write!(f, "{c}"),
            None => match self {
                Place::Finite(p) => write!(f, "({p})"),
                Place::Infinity => unreachable!(),
            },
        }
    }
}

impl FromStr for Place {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "∞" | "inf" | "oo" => Ok(Place::Infinity),
            other => Ok(Place::at(other.parse::<F4>()?)),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Local data of one singular fiber.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiberData {
    pub place: Place,
    pub kodaira: Kodaira,
    /// Number of components.
    pub m: usize,
    /// Order of the (quasi-)discriminant of the local minimal model.
    pub v_delta: usize,
    /// Wild part of the conductor; always 0 for quasi-elliptic fibers.
    pub delta_wild: usize,
    pub dynkin_rank: usize,
}

/// A Weierstrass equation `y² + a1xy + a3y = x³ + a2x² + a4x + a6`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeierstrassModel {
    pub label: Option<String>,
    pub a: [Poly; 5],
}

/// Weights of `a1, a2, a3, a4, a6`.
pub const WEIGHTS: [usize; 5] = [1, 2, 3, 4, 6];

impl WeierstrassModel {
    pub fn new(a: [Poly; 5]) -> WeierstrassModel {
        WeierstrassModel { label: None, a }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Degree bounds of a K3 surface: `deg a_i ≤ 2i`.
    pub fn check_k3_bounds(&self) -> Result<(), GenusOneError> {
        for (i, w) in WEIGHTS.iter().enumerate() {
            if self.a[i].degree().is_some_and(|d| d > 2 * w) {
                return Err(GenusOneError::Model(format!(
                    "deg a{w} = {} exceeds {}",
                    self.a[i].degree().unwrap(),
                    2 * w
                )));
            }
        }
        Ok(())
    }

    pub fn a1(&self) -> &Poly {
        &self.a[0]
    }
    pub fn a2(&self) -> &Poly {
        &self.a[1]
    }
    pub fn a3(&self) -> &Poly {
        &self.a[2]
    }
    pub fn a4(&self) -> &Poly {
        &self.a[3]
    }
    pub fn a6(&self) -> &Poly {
        &self.a[4]
    }

    pub fn is_quasi_elliptic(&self) -> bool {
        self.a1().is_zero() && self.a3().is_zero()
    }

    // The b-invariants and the discriminant, reduced modulo 2.

    pub fn b2(&self) -> Poly {
        self.a1().square()
    }

    pub fn b4(&self) -> Poly {
        self.a1() * self.a3()
    }

    pub fn b6(&self) -> Poly {
        self.a3().square()
    }

    pub fn b8(&self) -> Poly {
        let (a1, a2, a3, a4, a6) = (self.a1(), self.a2(), self.a3(), self.a4(), self.a6());
        &(&(&a1.square() * a6) + &(&(a1 * a3) * a4)) + &(&(a2 * &a3.square()) + &a4.square())
    }

    pub fn discriminant(&self) -> Poly {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        &(&(&b2.square() * &b8) + &b6.square()) + &(&(&b2 * &b4) * &b6)
    }

    /// The model with `t` replaced by `t + c`.
    pub fn translate(&self, c: F4) -> WeierstrassModel {
        WeierstrassModel {
            label: self.label.clone(),
            a: self.a.clone().map(|p| p.translate(c)),
        }
    }

    /// The chart at infinity, `ã_i(s) = s^{2i} a_i(1/s)`.
    pub fn at_infinity(&self) -> WeierstrassModel {
        let mut a = self.a.clone();
        for (i, w) in WEIGHTS.iter().enumerate() {
            a[i] = self.a[i].reverse(2 * w);
        }
        WeierstrassModel {
            label: self.label.clone(),
            a,
        }
    }

    /// The model in which the given rational place sits at `t = 0`.
    pub fn chart_at(&self, place: &Place) -> Result<WeierstrassModel, GenusOneError> {
        match place.rational_point() {
            Some(Some(c)) => Ok(self.translate(c)),
            Some(None) => Ok(self.at_infinity()),
            None => Err(GenusOneError::Place(format!(
                "place {place} is not rational over F4"
            ))),
        }
    }

    /// Apply `x = x' + r, y = y' + s x' + t`.
    pub fn rst(&self, r: &Poly, s: &Poly, t: &Poly) -> WeierstrassModel {
        let [a1, a2, a3, a4, a6] = &self.a;
        let rs = r * s;
        let na2 = &(&(a2 + &(s * a1)) + r) + &s.square();
        let na3 = a3 + &(r * a1);
        let na4 = &(&(a4 + &(s * a3)) + &(&(t + &rs) * a1)) + &r.square();
        let na6 = &(&(&(a6 + &(r * a4)) + &(&r.square() * a2)) + &(&r.pow(3) + &(t * a3)))
            + &(&t.square() + &(&(r * t) * a1));
        WeierstrassModel {
            label: self.label.clone(),
            a: [a1.clone(), na2, na3, na4, na6],
        }
    }

    /// Divide each `a_i` by `t^{i}`; `None` unless every division is exact.
    pub fn rescale(&self) -> Option<WeierstrassModel> {
        let mut a = self.a.clone();
        for (i, w) in WEIGHTS.iter().enumerate() {
            a[i] = self.a[i].unshift(*w)?;
        }
        Some(WeierstrassModel {
            label: self.label.clone(),
            a,
        })
    }

    pub fn coefficient_strings(&self) -> Vec<String> {
        self.a.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coefficient_strings().join(", "))
    }
}

/// A section of the fibration: the zero section or an affine point over `F4(t)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SectionPt {
    O,
    Affine(RatFn, RatFn),
}

impl SectionPt {
    pub fn new(x: RatFn, y: RatFn) -> SectionPt {
        SectionPt::Affine(x, y)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SectionPt::O)
    }

    pub fn x(&self) -> Option<&RatFn> {
        match self {
            SectionPt::O => None,
            SectionPt::Affine(x, _) => Some(x),
        }
    }

    /// Transport to the chart of a rational place.
    pub fn chart_at(&self, place: &Place) -> Result<SectionPt, GenusOneError> {
        let SectionPt::Affine(x, y) = self else {
            return Ok(SectionPt::O);
        };
        match place.rational_point() {
            Some(Some(c)) => Ok(SectionPt::Affine(x.translate(c), y.translate(c))),
            Some(None) => Ok(SectionPt::Affine(x.at_infinity(4), y.at_infinity(6))),
            None => Err(GenusOneError::Place(format!(
                "place {place} is not rational over F4"
            ))),
        }
    }
}

impl fmt::Display for SectionPt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionPt::O => f.write_str("O"),
            SectionPt::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// A change of coordinates `x = u²x' + r`, `y = u³y' + s u²x' + t` with `u = t^k`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Transform {
    pub u_pow: usize,
    pub r: Poly,
    pub s: Poly,
    pub t: Poly,
}

impl Transform {
    pub fn identity() -> Transform {
        Transform::default()
    }

    /// `self` followed by `(u = t^k2, r2, s2, t2)` in the new coordinates.
    pub fn then(&self, k2: usize, r2: &Poly, s2: &Poly, t2: &Poly) -> Transform {
        let u1 = self.u_pow;
        Transform {
            u_pow: u1 + k2,
            r: &self.r + &r2.shift(2 * u1),
            s: &self.s + &s2.shift(u1),
            t: &(&self.t + &t2.shift(3 * u1)) + &(&self.s * r2).shift(2 * u1),
        }
    }

    /// Image of a section in the new coordinates.
    pub fn apply(&self, p: &SectionPt) -> SectionPt {
        let SectionPt::Affine(x, y) = p else {
            return SectionPt::O;
        };
        let k = self.u_pow as i64;
        let xr = x - &RatFn::from(self.r.clone());
        let xn = xr.mul_t_pow(-2 * k);
        let sx = &RatFn::from(self.s.clone()) * &xr;
        let yn = (&(y - &sx) - &RatFn::from(self.t.clone())).mul_t_pow(-3 * k);
        SectionPt::Affine(xn, yn)
    }
}

fn ratfn(p: &Poly) -> RatFn {
    RatFn::from(p.clone())
}

/// Identity check of the Weierstrass equation in `F4(t)`.
pub fn on_model(w: &WeierstrassModel, p: &SectionPt) -> bool {
    let SectionPt::Affine(x, y) = p else {
        return true;
    };
    let [a1, a2, a3, a4, a6] = w.a.each_ref().map(ratfn);
    let lhs = &(&y.square() + &(&(&a1 * x) * y)) + &(&a3 * y);
    let rhs = &(&(&x.pow(3) + &(&a2 * &x.square())) + &(&a4 * x)) + &a6;
    lhs == rhs
}

pub fn negate(w: &WeierstrassModel, p: &SectionPt) -> SectionPt {
    match p {
        SectionPt::O => SectionPt::O,
        SectionPt::Affine(x, y) => {
            let ny = &(y + &(&ratfn(w.a1()) * x)) + &ratfn(w.a3());
            SectionPt::Affine(x.clone(), ny)
        }
    }
}

/// Chord-and-tangent addition.
pub fn add(w: &WeierstrassModel, p: &SectionPt, q: &SectionPt) -> SectionPt {
    let (x1, y1, x2, y2) = match (p, q) {
        (SectionPt::O, _) => return q.clone(),
        (_, SectionPt::O) => return p.clone(),
        (SectionPt::Affine(x1, y1), SectionPt::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let [a1, a2, a3, a4, a6] = w.a.each_ref().map(ratfn);
    let (lambda, nu) = if x1 != x2 {
        let dx = x2 - x1;
        let l = &(y2 - y1) / &dx;
        let n = &(&(y1 * x2) - &(y2 * x1)) / &dx;
        (l, n)
    } else {
        if *y2 == negate(w, p).into_y() {
            return SectionPt::O;
        }
        let den = &(&(y1 + y1) + &(&a1 * x1)) + &a3;
        if den.is_zero() {
            return SectionPt::O;
        }
        // 3x² + 2a2x + a4 − a1y and −x³ + a4x + 2a6 − a3y, reduced mod 2
        let num_l = &(&x1.square() + &a4) + &(&a1 * y1);
        let num_n = &(&(&x1.pow(3) + &(&a4 * x1)) + &(&a3 * y1)) + &(&a6 + &a6);
        (&num_l / &den, &num_n / &den)
    };
    let x3 = &(&(&(&lambda.square() + &(&a1 * &lambda)) - &a2) - x1) - x2;
    let y3 = &(&(&(&lambda + &a1) * &x3) + &nu) + &a3;
    SectionPt::Affine(x3, y3)
}

impl SectionPt {
    fn into_y(self) -> RatFn {
        match self {
            SectionPt::Affine(_, y) => y,
            SectionPt::O => RatFn::zero(),
        }
    }
}

/// `n·P` by double-and-add.
pub fn multiply(w: &WeierstrassModel, p: &SectionPt, n: u64) -> SectionPt {
    let mut acc = SectionPt::O;
    let mut base = p.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = add(w, &acc, &base);
        }
        base = add(w, &base, &base);
        k >>= 1;
    }
    acc
}

/// Least `n ≤ bound` with `nP = O`.
pub fn order_of(w: &WeierstrassModel, p: &SectionPt, bound: u64) -> Result<u64, GenusOneError> {
    if !on_model(w, p) {
        return Err(GenusOneError::OffCurve(p.to_string()));
    }
    let mut acc = p.clone();
    for n in 1..=bound {
        if acc.is_zero() {
            return Ok(n);
        }
        acc = add(w, &acc, p);
    }
    Err(GenusOneError::OrderBound(bound))
}

/// Default bound for torsion-order searches.
pub const ORDER_BOUND: u64 = 12;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genusone::expr::{parse_poly, parse_ratfn};

    fn model(c: [&str; 5]) -> WeierstrassModel {
        WeierstrassModel::new(c.map(|s| parse_poly(s).unwrap()))
    }

    fn pt(x: &str, y: &str) -> SectionPt {
        SectionPt::new(parse_ratfn(x).unwrap(), parse_ratfn(y).unwrap())
    }

    #[test]
    fn kodaira_round_trip() {
        for k in [
            Kodaira::I(0),
            Kodaira::I(10),
            Kodaira::IStar(16),
            Kodaira::II,
            Kodaira::IIIStar,
            Kodaira::IVStar,
        ] {
            assert_eq!(k.to_string().parse::<Kodaira>().unwrap(), k);
        }
        assert_eq!(Kodaira::IStar(1).euler(), 7);
        assert_eq!(Kodaira::IIStar.dynkin_rank(), 8);
        assert_eq!(Kodaira::I(1).dynkin_rank(), 0);
    }

    #[test]
    fn order_ten_section() {
        let w = model(["t^2+1", "t^2", "t^2", "0", "0"]);
        let p = pt("t", "t");
        assert!(on_model(&w, &p));
        assert_eq!(order_of(&w, &p, ORDER_BOUND).unwrap(), 10);
        assert_eq!(order_of(&w, &SectionPt::O, ORDER_BOUND).unwrap(), 1);
        assert!(order_of(&w, &pt("t", "1"), ORDER_BOUND).is_err());
    }

    #[test]
    fn coordinate_changes_preserve_points() {
        let w = model(["t^2+1", "t^2", "t^2", "0", "0"]);
        let p = pt("t", "t");
        let tr = Transform::identity().then(
            0,
            &parse_poly("t+ϱ").unwrap(),
            &parse_poly("t^2").unwrap(),
            &parse_poly("1").unwrap(),
        );
        let w2 = w.rst(&tr.r, &tr.s, &tr.t);
        assert!(on_model(&w2, &tr.apply(&p)));
        assert_eq!(w2.discriminant(), w.discriminant());
        let inf = w.at_infinity();
        assert!(on_model(&inf, &p.chart_at(&Place::Infinity).unwrap()));
        let w3 = w.translate(F4::RHO);
        assert!(on_model(&w3, &p.chart_at(&Place::at(F4::RHO)).unwrap()));
    }

    #[test]
    fn composed_transforms() {
        let w = model(["t", "t^2+1", "t^3", "t", "t^5+t"]);
        let r1 = parse_poly("t^4").unwrap();
        let s1 = parse_poly("t^2").unwrap();
        let t1 = parse_poly("t^6").unwrap();
        let w1 = w.rst(&r1, &s1, &t1);
        let r2 = parse_poly("ϱ").unwrap();
        let s2 = parse_poly("t").unwrap();
        let t2 = parse_poly("t+1").unwrap();
        let w2 = w1.rst(&r2, &s2, &t2);
        let tr = Transform::identity()
            .then(0, &r1, &s1, &t1)
            .then(0, &r2, &s2, &t2);
        assert_eq!(w.rst(&tr.r, &tr.s, &tr.t), w2);
    }
}
