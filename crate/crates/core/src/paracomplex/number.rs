//! Para-complex (split-complex) numbers `x + e y` with `e² = 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::ParaError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ParaComplex<T> {
    pub re: T,
    pub im: T,
}

impl<T> ParaComplex<T> {
    pub const fn new(re: T, im: T) -> Self {
        Self { re, im }
    }
}

impl<T: Clone + Zero + One + Sub<Output = T> + Neg<Output = T>> ParaComplex<T> {
    /// The unit `e`.
    pub fn e() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn real(x: T) -> Self {
        Self::new(x, T::zero())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `z z̄ = x² - y²`.
    pub fn norm_sq(&self) -> T {
        self.re.clone() * self.re.clone() - self.im.clone() * self.im.clone()
    }

    pub fn is_null(&self) -> bool {
        self.norm_sq().is_zero()
    }

    /// Components on the idempotents `e± = (1 ± e)/2`: `(x + y, x - y)`.
    pub fn to_idempotent(&self) -> (T, T) {
        (self.re.clone() + self.im.clone(), self.re.clone() - self.im.clone())
    }
}

impl<T> ParaComplex<T>
where
    T: Clone + Zero + One + Sub<Output = T> + Neg<Output = T> + std::ops::Div<Output = T> + fmt::Display + PartialOrd,
{
    pub fn from_idempotent(plus: T, minus: T) -> Self {
        let two = T::one() + T::one();
        Self::new((plus.clone() + minus.clone()) / two.clone(), (plus - minus) / two)
    }

    pub fn inv(&self) -> Result<Self, ParaError> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(ParaError::NullCone(self.to_string()));
        }
        let c = self.conj();
        Ok(Self::new(c.re / n.clone(), c.im / n))
    }
}

impl<T: Add<Output = T>> Add for ParaComplex<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl<T: Sub<Output = T>> Sub for ParaComplex<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl<T: Neg<Output = T>> Neg for ParaComplex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl<T: Clone + Add<Output = T> + Mul<Output = T>> Mul for ParaComplex<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (x, y, a, b) = (self.re, self.im, o.re, o.im);
        Self::new(x.clone() * a.clone() + y.clone() * b.clone(), x * b + y * a)
    }
}

impl<T: Clone + Zero> Zero for ParaComplex<T> {
    fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>> One for ParaComplex<T> {
    fn one() -> Self {
        Self::new(T::one(), T::zero())
    }
}

impl<T: fmt::Display + Zero + PartialOrd + Clone + Neg<Output = T>> fmt::Display for ParaComplex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < T::zero() {
            write!(f, "{}-{}e", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}e", self.re, self.im)
        }
    }
}

pub fn pc_mul<T: Clone + Add<Output = T> + Mul<Output = T>>(z: &ParaComplex<T>, w: &ParaComplex<T>) -> ParaComplex<T> {
    z.clone() * w.clone()
}

pub fn pc_conj<T: Clone + Zero + One + Sub<Output = T> + Neg<Output = T>>(z: &ParaComplex<T>) -> ParaComplex<T> {
    z.conj()
}

pub fn pc_inv<T>(z: &ParaComplex<T>) -> Result<ParaComplex<T>, ParaError>
where
    T: Clone + Zero + One + Sub<Output = T> + Neg<Output = T> + std::ops::Div<Output = T> + fmt::Display + PartialOrd,
{
    z.inv()
}
