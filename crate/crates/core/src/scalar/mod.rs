//! Exact scalars: rationals and cyclotomic field elements.

mod cyclotomic;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use rational::Rational;

use std::fmt::Debug;

/// Field operations shared by every scalar the algebra engine works over.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + From<Rational> + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;
    /// Lift into Q(ζ_N) for comparisons across scalar kinds.
    fn to_cyclotomic(&self) -> Cyclotomic;

    fn add_in_place(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self = self.plus(&a.times(b));
        }
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        self.recip()
    }
    fn scaled(&self, r: &Rational) -> Self {
        self * r
    }
    fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::from_rational(self.clone())
    }
    fn add_in_place(&mut self, other: &Self) {
        *self += other;
    }
}

impl Scalar for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero(1)
    }
    fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Self {
        self.inv()
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn to_cyclotomic(&self) -> Cyclotomic {
        self.clone()
    }
}

/// Shorthand for a rational literal.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}
