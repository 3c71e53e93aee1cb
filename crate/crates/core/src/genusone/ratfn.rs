//! Rational functions in `t` over `F4`, kept in lowest terms with a monic denominator.

#![allow(clippy::suspicious_arithmetic_impl)]

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::f4::F4;
use super::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> RatFn {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, mut d) = (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap());
        let lc = d.lead().inv().unwrap();
        n = n.scale(lc);
        d = d.scale(lc);
        RatFn { num: n, den: d }
    }

    pub fn zero() -> RatFn {
        RatFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFn {
        RatFn::from(Poly::one())
    }

    pub fn t() -> RatFn {
        RatFn::from(Poly::t())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn inv(&self) -> Option<RatFn> {
        (!self.is_zero()).then(|| RatFn::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> RatFn {
        RatFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn square(&self) -> RatFn {
        RatFn {
            num: self.num.square(),
            den: self.den.square(),
        }
    }

    /// Square root when numerator and denominator are polynomials in `t²`.
    pub fn sqrt(&self) -> Option<RatFn> {
        Some(RatFn {
            num: self.num.sqrt()?,
            den: self.den.sqrt()?,
        })
    }

    /// Valuation at `t = 0` (`i64::MAX` for zero).
    pub fn val0(&self) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.num.val0() as i64 - self.den.val0() as i64
    }

    /// Valuation at the place of the monic irreducible `f`.
    pub fn val_at(&self, f: &Poly) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.num.multiplicity(f) as i64 - self.den.multiplicity(f) as i64
    }

    /// Valuation at `t = ∞`.
    pub fn val_inf(&self) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64
    }

    /// Value at `t = c`; `None` at a pole.
    pub fn eval(&self, c: F4) -> Option<F4> {
        let d = self.den.eval(c);
        (!d.is_zero()).then(|| self.num.eval(c) / d)
    }

    /// `f(t + c)`.
    pub fn translate(&self, c: F4) -> RatFn {
        RatFn::new(self.num.translate(c), self.den.translate(c))
    }

    /// `t^k f(1/t)`, the coordinate change to the chart at infinity for a
    /// quantity of weight `k`.
    pub fn at_infinity(&self, k: i64) -> RatFn {
        if self.is_zero() {
            return RatFn::zero();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let base = RatFn::new(self.num.reverse(dn), self.den.reverse(dd));
        base.mul_t_pow(k + dd as i64 - dn as i64)
    }

    /// Multiply by `t^e` for any integer `e`.
    pub fn mul_t_pow(&self, e: i64) -> RatFn {
        if e >= 0 {
            RatFn::new(self.num.shift(e as usize), self.den.clone())
        } else {
            RatFn::new(self.num.clone(), self.den.shift((-e) as usize))
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> RatFn {
        let n = &(&self.num.derivative() * &self.den) + &(&self.num * &self.den.derivative());
        RatFn::new(n, self.den.square())
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> RatFn {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }
}

impl From<F4> for RatFn {
    fn from(c: F4) -> RatFn {
        RatFn::from(Poly::constant(c))
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone());
        }
        RatFn::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self + o
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        self.clone()
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, o: &RatFn) -> RatFn {
        assert!(!o.is_zero(), "rational function division by zero");
        RatFn::new(&self.num * &o.den, &self.den * &o.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, o: RatFn) -> RatFn {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if s.contains('+') {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        let t = RatFn::t();
        let one = RatFn::one();
        let a = &(&t + &one) / &(&t.square() + &one);
        assert_eq!(a.den(), &Poly::linear(F4::ONE));
        assert!(a.num().is_one());
        assert_eq!(&a * &(&t + &one), one);
    }

    #[test]
    fn infinity_chart() {
        // t^2 / (t+1)^2 with weight 4 → s^4 · (1/s^2)/(1/s+1)^2 = s^4/(1+s)^2
        let t = RatFn::t();
        let x = &t.square() / &(&t + &RatFn::one()).square();
        let y = x.at_infinity(4);
        assert_eq!(
            y,
            &RatFn::t().pow(4) / &(&RatFn::t() + &RatFn::one()).square()
        );
        assert_eq!(x.val_inf(), 0);
        assert_eq!(x.val0(), 2);
    }

    #[test]
    fn square_roots() {
        let t = RatFn::t();
        let x = &(&t + &RatFn::from(F4::RHO)) / &t.pow(3);
        assert_eq!(x.square().sqrt(), Some(x.clone()));
        assert_eq!(x.sqrt(), None);
        assert!(x.square().derivative().is_zero());
    }
}
