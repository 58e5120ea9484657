//! Word-sized modular arithmetic: powers, inverses, Tonelli-Shanks, and the
//! residue fields `F_p` / `F_p[t]/(t^2 - d)` used for symbol evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// Inverse modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn reduce_i128(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

pub fn reduce_big(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

/// Euler criterion; `p` an odd prime. Returns `0` when `p | a`.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Smallest positive quadratic non-residue modulo an odd prime.
pub fn smallest_non_residue(p: u64) -> u64 {
    (2..p).find(|&c| legendre(c, p) == -1).expect("odd prime has a non-residue")
}

/// Tonelli-Shanks square root modulo an odd prime. Returns the smaller root.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        let mut s = 0;
        let mut t = p - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = smallest_non_residue(p);
        let mut m = s;
        let mut c = pow_mod(z, t, p);
        let mut x = pow_mod(a, t.div_ceil(2), p);
        let mut b = pow_mod(a, t, p);
        while b != 1 {
            let mut i = 0;
            let mut b2 = b;
            while b2 != 1 {
                b2 = mul_mod(b2, b2, p);
                i += 1;
            }
            let mut d = c;
            for _ in 0..m - i - 1 {
                d = mul_mod(d, d, p);
            }
            x = mul_mod(x, d, p);
            c = mul_mod(d, d, p);
            b = mul_mod(b, c, p);
            m = i;
        }
        x
    };
    Some(r.min(p - r))
}

/// Canonical square root of `-1` modulo `p = 1 mod 4`: the numerically smaller root.
pub fn sqrt_minus_one(p: u64) -> Option<u64> {
    if p % 4 != 1 {
        return None;
    }
    let c = smallest_non_residue(p);
    let r = pow_mod(c, (p - 1) / 4, p);
    Some(r.min(p - r))
}

/// Residue field of a prime ideal: `F_p` (`d = None`) or `F_p[t]/(t^2 - d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueField {
    pub p: u64,
    pub d: Option<u64>,
}

/// `a + b*t`; `b = 0` in the prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ResidueFieldElement {
    pub a: u64,
    pub b: u64,
}

impl ResidueFieldElement {
    pub const ZERO: ResidueFieldElement = ResidueFieldElement { a: 0, b: 0 };

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl ResidueField {
    pub fn prime(p: u64) -> Self {
        ResidueField { p, d: None }
    }

    pub fn quadratic(p: u64) -> Self {
        ResidueField { p, d: Some(smallest_non_residue(p)) }
    }

    pub fn degree(&self) -> u32 {
        if self.d.is_some() {
            2
        } else {
            1
        }
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree())
    }

    pub fn from_u64(&self, a: u64) -> ResidueFieldElement {
        ResidueFieldElement { a: a % self.p, b: 0 }
    }

    pub fn one(&self) -> ResidueFieldElement {
        self.from_u64(1)
    }

    pub fn add(&self, x: ResidueFieldElement, y: ResidueFieldElement) -> ResidueFieldElement {
        let p = self.p;
        ResidueFieldElement { a: (x.a + y.a) % p, b: (x.b + y.b) % p }
    }

    pub fn neg(&self, x: ResidueFieldElement) -> ResidueFieldElement {
        let p = self.p;
        ResidueFieldElement { a: (p - x.a) % p, b: (p - x.b) % p }
    }

    pub fn mul(&self, x: ResidueFieldElement, y: ResidueFieldElement) -> ResidueFieldElement {
        let p = self.p;
        match self.d {
            None => ResidueFieldElement { a: mul_mod(x.a, y.a, p), b: 0 },
            Some(d) => {
                let bb = mul_mod(mul_mod(x.b, y.b, p), d, p);
                ResidueFieldElement {
                    a: (mul_mod(x.a, y.a, p) + bb) % p,
                    b: (mul_mod(x.a, y.b, p) + mul_mod(x.b, y.a, p)) % p,
                }
            }
        }
    }

    pub fn pow(&self, x: ResidueFieldElement, mut e: u128) -> ResidueFieldElement {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius `x -> x^p`, i.e. `t -> -t`.
    pub fn frobenius(&self, x: ResidueFieldElement) -> ResidueFieldElement {
        ResidueFieldElement { a: x.a, b: (self.p - x.b) % self.p }
    }

    /// A square root of an element of the prime field, which always exists in the quadratic extension.
    pub fn sqrt_of_base(&self, n: u64) -> Option<ResidueFieldElement> {
        let p = self.p;
        if let Some(r) = sqrt_mod(n, p) {
            return Some(ResidueFieldElement { a: r, b: 0 });
        }
        let d = self.d?;
        // n/d is a square because both are non-residues.
        let r = sqrt_mod(mul_mod(n % p, inv_mod(d, p), p), p)?;
        Some(ResidueFieldElement { a: 0, b: r })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tonelli_shanks_small_primes() {
        for p in [5u64, 13, 17, 29, 41, 97, 193, 257, 65537, 1_000_033] {
            for a in 1..60u64.min(p) {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a % p),
                    None => assert_eq!(legendre(a, p), -1),
                }
            }
        }
    }

    #[test]
    fn sqrt_minus_one_is_smaller_root() {
        assert_eq!(sqrt_minus_one(13), Some(5));
        assert_eq!(sqrt_minus_one(5), Some(2));
        assert_eq!(sqrt_minus_one(7), None);
    }

    #[test]
    fn quadratic_field_axioms() {
        let f = ResidueField::quadratic(11);
        assert_eq!(f.d, Some(2));
        let x = ResidueFieldElement { a: 3, b: 7 };
        assert_eq!(f.pow(x, f.order() - 1), f.one());
        let r = f.sqrt_of_base(2).unwrap();
        assert_eq!(f.mul(r, r), f.from_u64(2));
        assert_eq!(f.pow(x, 11), f.frobenius(x));
    }
}
