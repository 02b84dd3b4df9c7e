//! Quaternions with rational components.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::rational::Rational;

/// Imaginary or real unit of the quaternion algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    One,
    I,
    J,
    K,
}

impl Unit {
    pub const ALL: [Unit; 4] = [Unit::One, Unit::I, Unit::J, Unit::K];
    pub const IMAGINARY: [Unit; 3] = [Unit::I, Unit::J, Unit::K];

    /// Component index in `(re, i, j, k)`.
    pub fn index(self) -> usize {
        match self {
            Unit::One => 0,
            Unit::I => 1,
            Unit::J => 2,
            Unit::K => 3,
        }
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Unit::One => "",
            Unit::I => "i",
            Unit::J => "j",
            Unit::K => "k",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub re: Rational,
    pub i: Rational,
    pub j: Rational,
    pub k: Rational,
}

impl Quaternion {
    pub fn new(re: Rational, i: Rational, j: Rational, k: Rational) -> Self {
        Quaternion { re, i, j, k }
    }

    pub fn zero() -> Self {
        Quaternion::default()
    }

    pub fn one() -> Self {
        Quaternion::real(Rational::one())
    }

    pub fn real(re: Rational) -> Self {
        Quaternion { re, ..Default::default() }
    }

    /// `c · u` for a unit `u`.
    pub fn unit(u: Unit, c: Rational) -> Self {
        let mut q = Quaternion::zero();
        *q.component_mut(u) = c;
        q
    }

    pub fn component(&self, u: Unit) -> &Rational {
        match u {
            Unit::One => &self.re,
            Unit::I => &self.i,
            Unit::J => &self.j,
            Unit::K => &self.k,
        }
    }

    pub fn component_mut(&mut self, u: Unit) -> &mut Rational {
        match u {
            Unit::One => &mut self.re,
            Unit::I => &mut self.i,
            Unit::J => &mut self.j,
            Unit::K => &mut self.k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.re.clone(), -&self.i, -&self.j, -&self.k)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Quaternion::new(&self.re * c, &self.i * c, &self.j * c, &self.k * c)
    }
}

/// Hamilton product.
pub fn quat_mul(p: &Quaternion, q: &Quaternion) -> Quaternion {
    if p.is_zero() || q.is_zero() {
        return Quaternion::zero();
    }
    if p.is_real() && q.is_real() {
        return Quaternion::real(&p.re * &q.re);
    }
    let (a1, b1, c1, d1) = (&p.re, &p.i, &p.j, &p.k);
    let (a2, b2, c2, d2) = (&q.re, &q.i, &q.j, &q.k);
    Quaternion {
        re: a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        i: a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        j: a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        k: a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        quat_mul(self, rhs)
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(&self.re + &rhs.re, &self.i + &rhs.i, &self.j + &rhs.j, &self.k + &rhs.k)
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(&self.re - &rhs.re, &self.i - &rhs.i, &self.j - &rhs.j, &self.k - &rhs.k)
    }
}

impl AddAssign<&Quaternion> for Quaternion {
    fn add_assign(&mut self, rhs: &Quaternion) {
        self.re += &rhs.re;
        self.i += &rhs.i;
        self.j += &rhs.j;
        self.k += &rhs.k;
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.re, -&self.i, -&self.j, -&self.k)
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i + {}j + {}k)", self.re, self.i, self.j, self.k)
    }
}
