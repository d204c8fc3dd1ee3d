use super::LinalgError;

/// The residue ring Z/p^e.
///
/// Every ring the crate works over is local, so an element is either a unit
/// or divisible by `p`, and ideals form the chain `(1) ⊃ (p) ⊃ … ⊃ (p^e) = 0`.
/// Elimination pivots on the element of least `p`-adic valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    modulus: u32,
    prime: u32,
    exponent: u32,
    mask: Option<u32>,
}

impl Ring {
    pub const MAX_MODULUS: u32 = 1 << 16;

    pub fn new(modulus: u32) -> Result<Self, LinalgError> {
        if !(2..=Self::MAX_MODULUS).contains(&modulus) {
            return Err(LinalgError::UnsupportedModulus(modulus));
        }
        let prime = (2..=modulus).find(|d| modulus % d == 0).unwrap();
        let mut rest = modulus;
        let mut exponent = 0;
        while rest % prime == 0 {
            rest /= prime;
            exponent += 1;
        }
        if rest != 1 {
            return Err(LinalgError::UnsupportedModulus(modulus));
        }
        let mask = modulus.is_power_of_two().then_some(modulus - 1);
        Ok(Ring {
            modulus,
            prime,
            exponent,
            mask,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u32 {
        (x % self.modulus as u64) as u32
    }

    /// Reduces a signed integer into `[0, modulus)`.
    #[inline]
    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.modulus as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 + b as u64)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 + (self.modulus - b) as u64)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    /// `p`-adic valuation; zero has valuation `e`.
    pub fn valuation(&self, mut a: u32) -> u32 {
        if a == 0 {
            return self.exponent;
        }
        let mut v = 0;
        while a % self.prime == 0 {
            a /= self.prime;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, a: u32) -> bool {
        a % self.prime != 0
    }

    /// `p^k` as a residue (zero once `k >= e`).
    pub fn prime_power(&self, k: u32) -> u32 {
        if k >= self.exponent {
            0
        } else {
            self.prime.pow(k)
        }
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        if !self.is_unit(a) {
            return None;
        }
        // extended Euclid on (a, m)
        let (mut old_r, mut r) = (a as i64, self.modulus as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        Some(self.from_i64(old_s))
    }

    /// Splits a nonzero `a` as `p^v · u` and returns `(v, u^{-1})`.
    pub fn normalizer(&self, a: u32) -> (u32, u32) {
        debug_assert!(a != 0);
        let v = self.valuation(a);
        let unit = a / self.prime.pow(v);
        (v, self.inverse(unit).expect("cofactor is a unit"))
    }

    /// `dst -= c · src`, entrywise.
    #[inline]
    pub fn sub_mul(&self, dst: &mut [u32], src: &[u32], c: u32) {
        if c == 0 {
            return;
        }
        match self.mask {
            Some(mask) => {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = d.wrapping_sub(c.wrapping_mul(*s)) & mask;
                }
            }
            None => {
                let m = self.modulus as u64;
                for (d, s) in dst.iter_mut().zip(src) {
                    let t = (c as u64 * *s as u64) % m;
                    *d = ((*d as u64 + m - t) % m) as u32;
                }
            }
        }
    }

    /// `dst += c · src`, entrywise.
    #[inline]
    pub fn add_mul(&self, dst: &mut [u32], src: &[u32], c: u32) {
        self.sub_mul(dst, src, self.neg(c % self.modulus));
    }

    #[inline]
    pub fn scale(&self, v: &mut [u32], c: u32) {
        match self.mask {
            Some(mask) => v.iter_mut().for_each(|x| *x = x.wrapping_mul(c) & mask),
            None => v.iter_mut().for_each(|x| *x = self.mul(*x, c)),
        }
    }

    /// The order of `a` in the additive group of the ring.
    pub fn additive_order(&self, a: u32) -> u32 {
        self.prime.pow(self.exponent - self.valuation(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Ring::new(6).is_err());
        assert!(Ring::new(1).is_err());
        assert!(Ring::new(0).is_err());
        let r = Ring::new(9).unwrap();
        assert_eq!((r.prime(), r.exponent()), (3, 2));
    }

    #[test]
    fn z4_arithmetic() {
        let r = Ring::new(4).unwrap();
        assert_eq!(r.valuation(2), 1);
        assert_eq!(r.valuation(0), 2);
        assert_eq!(r.inverse(3), Some(3));
        assert_eq!(r.inverse(2), None);
        assert_eq!(r.normalizer(2), (1, 1));
        assert_eq!(r.neg(1), 3);
        assert_eq!(r.additive_order(2), 2);
        assert_eq!(r.additive_order(1), 4);
        assert_eq!(r.additive_order(0), 1);
        let mut v = vec![1, 2, 3];
        r.sub_mul(&mut v, &[1, 1, 1], 3);
        assert_eq!(v, vec![2, 3, 0]);
    }

    #[test]
    fn odd_modulus_row_ops() {
        let r = Ring::new(9).unwrap();
        let mut v = vec![1, 5, 8];
        r.sub_mul(&mut v, &[2, 2, 2], 4);
        assert_eq!(v, vec![2, 6, 0]);
        let (v, inv) = r.normalizer(6);
        assert_eq!(v, 1);
        assert_eq!(r.mul(6, inv), 3);
    }
}
