//! The field with four elements, `F4 = F2(ϱ)` with `ϱ² = ϱ + 1`.

#![allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};
use std::str::FromStr;

/// An element `b0 + b1·ϱ`, stored as the bit pair `b0 | b1 << 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct F4(u8);

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);
    pub const RHO: F4 = F4(2);
    pub const RHO2: F4 = F4(3);
    pub const ALL: [F4; 4] = [F4::ZERO, F4::ONE, F4::RHO, F4::RHO2];
    pub const NONZERO: [F4; 3] = [F4::ONE, F4::RHO, F4::RHO2];

    pub fn from_bits(bits: u8) -> F4 {
        F4(bits & 3)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn square(self) -> F4 {
        self * self
    }

    /// The unique square root; Frobenius has order 2 on `F4`, so it is `x²`.
    pub fn sqrt(self) -> F4 {
        self.square()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<F4> {
        match self.0 {
            0 => None,
            1 => Some(F4::ONE),
            2 => Some(F4::RHO2),
            _ => Some(F4::RHO),
        }
    }

    pub fn pow(self, mut e: u64) -> F4 {
        let mut base = self;
        let mut acc = F4::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for F4 {
    type Output = F4;
    fn add(self, o: F4) -> F4 {
        F4(self.0 ^ o.0)
    }
}

impl Sub for F4 {
    type Output = F4;
    fn sub(self, o: F4) -> F4 {
        F4(self.0 ^ o.0)
    }
}

impl Neg for F4 {
    type Output = F4;
    fn neg(self) -> F4 {
        self
    }
}

impl AddAssign for F4 {
    fn add_assign(&mut self, o: F4) {
        self.0 ^= o.0;
    }
}

impl Mul for F4 {
    type Output = F4;
    fn mul(self, o: F4) -> F4 {
        let (a0, a1) = (self.0 & 1, self.0 >> 1);
        let (b0, b1) = (o.0 & 1, o.0 >> 1);
        let c0 = (a0 & b0) ^ (a1 & b1);
        let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
        F4(c0 | c1 << 1)
    }
}

impl MulAssign for F4 {
    fn mul_assign(&mut self, o: F4) {
        *self = *self * o;
    }
}

impl Div for F4 {
    type Output = F4;
    fn div(self, o: F4) -> F4 {
        self * o.inv().expect("division by zero in F4")
    }
}

impl fmt::Display for F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "ϱ",
            _ => "ϱ²",
        })
    }
}

impl FromStr for F4 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(F4::ZERO),
            "1" => Ok(F4::ONE),
            "ϱ" | "r" | "rho" => Ok(F4::RHO),
            "ϱ²" | "ϱ^2" | "r^2" | "rho^2" | "ϱ+1" | "r+1" => Ok(F4::RHO2),
            other => Err(format!("not an element of F4: {other}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for a in F4::ALL {
            assert_eq!(a + a, F4::ZERO);
            assert_eq!(a * F4::ONE, a);
            assert_eq!(a.pow(4), a);
            assert_eq!(a.sqrt().square(), a);
            if let Some(i) = a.inv() {
                assert_eq!(a * i, F4::ONE);
            }
            for b in F4::ALL {
                assert_eq!(a * b, b * a);
                for c in F4::ALL {
                    assert_eq!(a * (b + c), a * b + a * c);
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
        assert_eq!(F4::RHO * F4::RHO, F4::RHO + F4::ONE);
        assert_eq!(F4::RHO * F4::RHO + F4::RHO + F4::ONE, F4::ZERO);
    }

    #[test]
    fn squaring_is_a_bijection() {
        let mut sq: Vec<F4> = F4::ALL.iter().map(|x| x.square()).collect();
        sq.sort();
        assert_eq!(sq, F4::ALL.to_vec());
    }

    #[test]
    fn display_round_trip() {
        for a in F4::ALL {
            assert_eq!(a.to_string().parse::<F4>().unwrap(), a);
        }
    }
}
