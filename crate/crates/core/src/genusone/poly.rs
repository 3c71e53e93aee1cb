//! Dense univariate polynomials over `F4` in the variable `t`.

#![allow(clippy::suspicious_arithmetic_impl)]

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::f4::F4;

/// Coefficients from low to high degree, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Poly(Vec<F4>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![F4::ONE])
    }

    pub fn constant(c: F4) -> Poly {
        Poly::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Poly {
        Poly::monomial(F4::ONE, 1)
    }

    pub fn monomial(c: F4, deg: usize) -> Poly {
        let mut v = vec![F4::ZERO; deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    /// `t + c`.
    pub fn linear(c: F4) -> Poly {
        Poly::new(vec![c, F4::ONE])
    }

    pub fn new(mut coeffs: Vec<F4>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[F4] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> F4 {
        self.0.get(i).copied().unwrap_or(F4::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [F4::ONE]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> F4 {
        self.0.last().copied().unwrap_or(F4::ZERO)
    }

    pub fn scale(&self, c: F4) -> Poly {
        Poly::new(self.0.iter().map(|&a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.lead().inv() {
            Some(i) => self.scale(i),
            None => Poly::zero(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![F4::ZERO; k];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    /// Exact division by `t^k`; `None` when `t^k` does not divide.
    pub fn unshift(&self, k: usize) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.val0() < k {
            return None;
        }
        Some(Poly(self.0[k..].to_vec()))
    }

    /// Order of vanishing at `t = 0` (`usize::MAX` for zero).
    pub fn val0(&self) -> usize {
        self.0
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(usize::MAX)
    }

    pub fn eval(&self, x: F4) -> F4 {
        self.0.iter().rev().fold(F4::ZERO, |acc, &c| acc * x + c)
    }

    /// `p(t + c)`.
    pub fn translate(&self, c: F4) -> Poly {
        let lin = Poly::linear(c);
        self.0
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &a| &(&acc * &lin) + &Poly::constant(a))
    }

    /// `t^k p(1/t)`; requires `k ≥ deg p`.
    pub fn reverse(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let d = self.degree().unwrap_or(0);
        assert!(k >= d, "reverse: degree {d} exceeds {k}");
        let mut v = vec![F4::ZERO; k + 1];
        for (i, &c) in self.0.iter().enumerate() {
            v[k - i] = c;
        }
        Poly::new(v)
    }

    /// Formal derivative; in characteristic 2 the even-degree terms drop out.
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| if i % 2 == 1 { c } else { F4::ZERO })
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn square(&self) -> Poly {
        let mut v = vec![F4::ZERO; self.0.len() * 2];
        for (i, &c) in self.0.iter().enumerate() {
            v[2 * i] = c.square();
        }
        Poly::new(v)
    }

    /// Square root if the polynomial is a polynomial in `t²`.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.0.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::new(
            self.0.iter().step_by(2).map(|c| c.sqrt()).collect(),
        ))
    }

    pub fn is_square(&self) -> bool {
        self.0.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Split into even and odd parts: `p = e + o` with only even, resp. odd exponents.
    pub fn even_odd(&self) -> (Poly, Poly) {
        let mut e = vec![F4::ZERO; self.0.len()];
        let mut o = vec![F4::ZERO; self.0.len()];
        for (i, &c) in self.0.iter().enumerate() {
            if i % 2 == 0 {
                e[i] = c;
            } else {
                o[i] = c;
            }
        }
        (Poly::new(e), Poly::new(o))
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.lead().inv().unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![F4::ZERO; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd] * inv;
            q[i] = c;
            if !c.is_zero() {
                for (j, &b) in d.0.iter().enumerate() {
                    r[i + j] += c * b;
                }
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of the irreducible `f` in `self` (`usize::MAX` for zero).
    pub fn multiplicity(&self, f: &Poly) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut n = 0;
        let mut p = self.clone();
        while let Some(q) = p.div_exact(f) {
            p = q;
            n += 1;
        }
        n
    }

    /// Roots in `F4` with multiplicities.
    pub fn roots(&self) -> Vec<(F4, usize)> {
        F4::ALL
            .iter()
            .filter_map(|&c| {
                let m = self.multiplicity(&Poly::linear(c));
                (m > 0).then_some((c, m))
            })
            .collect()
    }

    /// Factorization into monic irreducibles with multiplicities, by trial
    /// division in increasing degree; the leading coefficient is dropped.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut p = self.monic();
        let mut deg = 1;
        while p.degree().is_some_and(|d| d >= 2 * deg) {
            for f in monic_of_degree(deg) {
                let m = p.multiplicity(&f);
                if m > 0 {
                    for _ in 0..m {
                        p = p.div_exact(&f).unwrap();
                    }
                    out.push((f, m));
                }
            }
            deg += 1;
        }
        if p.degree().is_some_and(|d| d > 0) {
            match out.iter_mut().find(|(f, _)| *f == p) {
                Some(e) => e.1 += 1,
                None => out.push((p, 1)),
            }
        }
        out.sort();
        out
    }
}

/// All monic polynomials of the given degree, in a fixed order.
pub fn monic_of_degree(deg: usize) -> impl Iterator<Item = Poly> {
    (0..4u64.pow(deg as u32)).map(move |code| {
        let mut v: Vec<F4> = (0..deg)
            .map(|i| F4::from_bits(((code >> (2 * i)) & 3) as u8))
            .collect();
        v.push(F4::ONE);
        Poly(v)
    })
}

/// All polynomials of degree at most `deg` (including zero).
pub fn all_up_to_degree(deg: usize) -> impl Iterator<Item = Poly> {
    (0..4u64.pow(deg as u32 + 1)).map(move |code| {
        Poly::new(
            (0..=deg)
                .map(|i| F4::from_bits(((code >> (2 * i)) & 3) as u8))
                .collect(),
        )
    })
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + o
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.clone()
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![F4::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<F4> for Poly {
    fn from(c: F4) -> Poly {
        Poly::constant(c)
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for Poly {
    /// Highest degree first, e.g. `t⁶+ϱt²+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t{}", superscript(i)),
            };
            terms.push(match (c == F4::ONE, var.is_empty()) {
                (_, true) => c.to_string(),
                (true, false) => var,
                (false, false) => format!("{c}{var}"),
            });
        }
        f.write_str(&terms.join("+"))
    }
}
