use serde::{Deserialize, Serialize};

use super::PolyError;

/// Element of a prime field, stored as its canonical representative in `0..q`.
pub type Elem = u32;

/// The prime field F_q. Elements are plain `u32` residues; all arithmetic goes
/// through the field so the modulus is never implicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    /// Smallest modulus accepted; keeps cubic interpolation nodes distinct.
    pub const MIN_MODULUS: u32 = 5;

    pub fn new(q: u32) -> Result<Self, PolyError> {
        if !(Self::MIN_MODULUS..1 << 31).contains(&q) || !is_prime(q) {
            return Err(PolyError::InvalidModulus(q));
        }
        Ok(Self { q })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.q
    }

    #[inline]
    pub fn order(self) -> u64 {
        self.q as u64
    }

    #[inline]
    pub fn add(self, a: Elem, b: Elem) -> Elem {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: Elem, b: Elem) -> Elem {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(self, a: Elem) -> Elem {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: Elem, b: Elem) -> Elem {
        ((a as u64 * b as u64) % self.q as u64) as Elem
    }

    pub fn pow(self, mut base: Elem, mut exp: u64) -> Elem {
        let mut acc = 1 % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, (self.q - 2) as u64))
        }
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn from_i64(self, v: i64) -> Elem {
        v.rem_euclid(self.q as i64) as Elem
    }

    /// Reduces an unsigned value into the field.
    #[inline]
    pub fn reduce(self, v: u64) -> Elem {
        (v % self.q as u64) as Elem
    }

    /// Signed representative in `(-q/2, q/2]`, handy for printing.
    pub fn centered(self, a: Elem) -> i64 {
        if a > self.q / 2 {
            a as i64 - self.q as i64
        } else {
            a as i64
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.q)
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(self, rng: &mut R) -> Elem {
        rng.gen_range(1..self.q)
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = PolyError;

    fn try_from(q: u32) -> Result<Self, Self::Error> {
        PrimeField::new(q)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.q
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(100).is_err());
        assert!(PrimeField::new(101).is_ok());
        assert!(PrimeField::new(131).is_ok());
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
        assert_eq!(f.from_i64(-1), 100);
        assert_eq!(f.centered(100), -1);
    }
}
