//! Jacobi symbols, rational quartic symbols, and quadratic/quartic power residue
//! symbols in `O_{M_q}`, together with the lowering identities that relate
//! quartic symbols in `M_q` to quadratic symbols in its subfields.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ideals::{factor_ideal, factor_principal, ideal_sum_coprime, primes_above, Factorization, IdealLattice, PrimeIdeal};
use crate::modular::{legendre, pow_mod, reduce_big, reduce_i128, sqrt_minus_one};
use crate::ring::{MqElement, QContext, QuadElement, Subfield};

/// A value in `{0} u {1, i, -1, -i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolValue {
    Zero,
    One,
    MinusOne,
    I,
    MinusI,
}

impl SymbolValue {
    /// `i^k`.
    pub fn from_power(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => SymbolValue::One,
            1 => SymbolValue::I,
            2 => SymbolValue::MinusOne,
            _ => SymbolValue::MinusI,
        }
    }

    pub fn from_sign(s: i8) -> Self {
        match s {
            0 => SymbolValue::Zero,
            s if s > 0 => SymbolValue::One,
            _ => SymbolValue::MinusOne,
        }
    }

    /// Exponent `k` with `self = i^k`, or `None` for zero.
    pub fn power(self) -> Option<i64> {
        match self {
            SymbolValue::Zero => None,
            SymbolValue::One => Some(0),
            SymbolValue::I => Some(1),
            SymbolValue::MinusOne => Some(2),
            SymbolValue::MinusI => Some(3),
        }
    }

    pub fn is_zero(self) -> bool {
        self == SymbolValue::Zero
    }

    pub fn inverse(self) -> Option<Self> {
        self.power().map(|k| SymbolValue::from_power(-k))
    }

    pub fn pow(self, e: u64) -> Self {
        match self.power() {
            None if e == 0 => SymbolValue::One,
            None => SymbolValue::Zero,
            Some(k) => SymbolValue::from_power(k * (e % 4) as i64),
        }
    }

    /// Real value for `0, 1, -1`; `None` for `i` and `-i`.
    pub fn as_sign(self) -> Option<i8> {
        match self {
            SymbolValue::Zero => Some(0),
            SymbolValue::One => Some(1),
            SymbolValue::MinusOne => Some(-1),
            _ => None,
        }
    }

    /// Twice the value as a Gaussian integer `(re, im)`.
    pub fn as_gaussian(self) -> (i64, i64) {
        match self {
            SymbolValue::Zero => (0, 0),
            SymbolValue::One => (1, 0),
            SymbolValue::MinusOne => (-1, 0),
            SymbolValue::I => (0, 1),
            SymbolValue::MinusI => (0, -1),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for SymbolValue {
    type Output = SymbolValue;
    fn mul(self, o: SymbolValue) -> SymbolValue {
        match (self.power(), o.power()) {
            (Some(a), Some(b)) => SymbolValue::from_power(a + b),
            _ => SymbolValue::Zero,
        }
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SymbolValue::Zero => "0",
            SymbolValue::One => "1",
            SymbolValue::MinusOne => "-1",
            SymbolValue::I => "i",
            SymbolValue::MinusI => "-i",
        };
        f.write_str(s)
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i128, n: i128) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("Jacobi symbol needs odd positive modulus, got {n}")));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// Rational quartic symbol `(a/p)_4` with `i` read as the smaller square root of `-1` mod `p`.
pub fn quartic_rational(a: i128, p: u64) -> Result<SymbolValue> {
    let s_i = sqrt_minus_one(p).ok_or_else(|| Error::InvalidArgument(format!("{p} is not 1 mod 4")))?;
    quartic_rational_with(a, p, s_i)
}

/// Rational quartic symbol with an explicit image `s_i` of `i`.
pub fn quartic_rational_with(a: i128, p: u64, s_i: u64) -> Result<SymbolValue> {
    if p % 4 != 1 {
        return Err(Error::InvalidArgument(format!("{p} is not 1 mod 4")));
    }
    let a = reduce_i128(a, p);
    if a == 0 {
        return Ok(SymbolValue::Zero);
    }
    let y = pow_mod(a, (p - 1) / 4, p);
    match y {
        1 => Ok(SymbolValue::One),
        y if y == p - 1 => Ok(SymbolValue::MinusOne),
        y if y == s_i => Ok(SymbolValue::I),
        y if y == p - s_i => Ok(SymbolValue::MinusI),
        _ => Err(Error::InvalidArgument(format!("{p} is not prime or {s_i} is not a root of -1"))),
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 2 || n == 4 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("symbol order must be 2 or 4, got {n}")))
    }
}

/// `n`-th power residue symbol at a prime: the `n`-th root of unity congruent to `a^((N P - 1)/n)`.
pub fn power_residue_prime(a: &MqElement, prime: &PrimeIdeal, n: u32) -> Result<SymbolValue> {
    check_n(n)?;
    let field = &prime.field;
    let x = prime.reduce(a);
    if x.is_zero() {
        return Ok(SymbolValue::Zero);
    }
    let y = field.pow(x, (prime.norm() - 1) / n as u128);
    let one = field.one();
    if y == one {
        return Ok(SymbolValue::One);
    }
    if y == field.neg(one) {
        return Ok(SymbolValue::MinusOne);
    }
    if n == 4 {
        if y == prime.s_i {
            return Ok(SymbolValue::I);
        }
        if y == field.neg(prime.s_i) {
            return Ok(SymbolValue::MinusI);
        }
    }
    Err(Error::Internal { q: 0, p: prime.p, msg: "power residue is not a root of unity".into() })
}

/// Symbol at a factored ideal: product of the prime symbols raised to the exponents.
pub fn power_residue_factored(a: &MqElement, fac: &Factorization, n: u32) -> Result<SymbolValue> {
    check_n(n)?;
    let mut acc = SymbolValue::One;
    for (prime, e) in fac {
        acc = acc * power_residue_prime(a, prime, n)?.pow(*e as u64);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `(a / b O)_n` for an element `b` prime to `2q`.
pub fn power_residue(ctx: &QContext, a: &MqElement, b: &MqElement, n: u32) -> Result<SymbolValue> {
    power_residue_factored(a, &factor_principal(ctx, b)?, n)
}

/// `(a / I)_n` for an ideal `I` prime to `2q`.
pub fn power_residue_ideal(ctx: &QContext, a: &MqElement, ideal: &IdealLattice, n: u32) -> Result<SymbolValue> {
    power_residue_factored(a, &factor_ideal(ctx, ideal)?, n)
}

/// `(a/b)_4 / (b/a)_4` for coprime odd `a`, `b` prime to `q`.
pub fn reciprocity_ratio(ctx: &QContext, a: &MqElement, b: &MqElement) -> Result<SymbolValue> {
    let fa = factor_principal(ctx, a)?;
    let fb = factor_principal(ctx, b)?;
    let ia = IdealLattice::from_generators(ctx, std::slice::from_ref(a))?;
    let ib = IdealLattice::from_generators(ctx, std::slice::from_ref(b))?;
    if !ideal_sum_coprime(&ia, &ib) {
        return Err(Error::NotCoprime);
    }
    let ab = power_residue_factored(a, &fb, 4)?;
    let ba = power_residue_factored(b, &fa, 4)?;
    Ok(ab * ba.inverse().expect("coprime arguments give a unit"))
}

/// A prime `P_K` of a quadratic subfield `K`, carried as its extension `P_K O_{M_q}`.
#[derive(Clone, Debug)]
pub struct SubfieldPrime {
    pub sub: Subfield,
    pub p: u64,
    /// Root of `t^2 = -1, q, -q` mod `p` for a degree-one prime; `None` when `p` is inert in `K`.
    pub root: Option<u64>,
    pub extended: IdealLattice,
}

impl SubfieldPrime {
    pub fn new(ctx: &QContext, sub: Subfield, p: u64, root: Option<u64>) -> Result<Self> {
        if p.is_multiple_of(2) || p.is_multiple_of(ctx.q) {
            return Err(Error::Ramified(p));
        }
        let (t, square) = match sub {
            Subfield::Gauss => (MqElement::i(), -1i128),
            Subfield::Real => (MqElement::sqrt_q(), ctx.q as i128),
            Subfield::Imag => (MqElement::new(-1, 0, 2, 0), -(ctx.q as i128)),
        };
        let extended = match root {
            Some(r) => {
                if reduce_i128(r as i128 * r as i128 - square, p) != 0 {
                    return Err(Error::InvalidArgument(format!("{r} is not a root of t^2 = {square} mod {p}")));
                }
                let gen = &t - &MqElement::from_int(r);
                IdealLattice::from_generators(ctx, &[MqElement::from_int(p), gen])?
            }
            None => {
                if legendre(reduce_i128(square, p), p) == 1 {
                    return Err(Error::InvalidArgument(format!("{p} is not inert in the subfield")));
                }
                IdealLattice::from_generators(ctx, &[MqElement::from_int(p)])?
            }
        };
        Ok(SubfieldPrime { sub, p, root, extended })
    }

    /// Primes of `M_q` dividing `P_K O_{M_q}`.
    pub fn primes_of_m(&self, ctx: &QContext) -> Result<Vec<PrimeIdeal>> {
        Ok(primes_above(ctx, self.p)?.into_iter().filter(|pr| pr.lattice.contains_ideal(&self.extended)).collect())
    }
}

/// Given `b` with `b = psi(b)` modulo `P_K O_{M_q}`, returns `b'` in `O_K` congruent to `b`.
pub fn descend_to_subfield(ctx: &QContext, b: &MqElement, prime: &SubfieldPrime) -> Result<QuadElement> {
    let psi = prime.sub.relative_generator();
    let conj = ctx.galois_apply(psi, b);
    if !prime.extended.contains(&(b - &conj)) {
        return Err(Error::Precondition("element is not fixed by the relative automorphism modulo the prime".into()));
    }
    // (b + psi(b)) lies in O_K and is 2b mod P; scale by the inverse of 2 mod p.
    let half = BigInt::from(prime.p.div_ceil(2));
    let t = (b + &conj).scale(&half);
    let pb = BigInt::from(prime.p);
    QuadElement::from_mq(prime.sub, &t)
        .map(|x| QuadElement::new(x.field, x.a.mod_floor(&pb), x.b.mod_floor(&pb)))
        .ok_or_else(|| Error::Internal { q: ctx.q, p: prime.p, msg: "trace left the subfield".into() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoweringMode {
    Split,
    Inert,
}

/// Compares `(alpha / P_K O_{M_q})_4` with the quadratic symbol `(alpha / P_K)_2` in `Z[i]`
/// (raised to `(p+1)/2` when `P_K` is inert in `M_q`) for each sample `alpha` in `Z[i]`.
/// `P_K = (p, i - s_i)` with `p = 1 mod 4`.
pub fn lowering_check(ctx: &QContext, p: u64, s_i: u64, mode: LoweringMode, samples: &[QuadElement]) -> Result<bool> {
    if p % 4 != 1 {
        return Err(Error::InvalidArgument(format!("{p} has no degree-one prime in Z[i]")));
    }
    let prime = SubfieldPrime::new(ctx, Subfield::Gauss, p, Some(s_i))?;
    let actual = if legendre(ctx.q % p, p) == 1 { LoweringMode::Split } else { LoweringMode::Inert };
    if actual != mode {
        return Err(Error::InvalidArgument(format!("prime above {p} is {actual:?} in M_q, not {mode:?}")));
    }
    let upstairs = prime.primes_of_m(ctx)?;
    let expected_primes = match mode {
        LoweringMode::Split => 2,
        LoweringMode::Inert => 1,
    };
    if upstairs.len() != expected_primes {
        return Err(Error::Internal { q: ctx.q, p, msg: "unexpected splitting of Gaussian prime".into() });
    }
    for alpha in samples {
        if alpha.field != Subfield::Gauss {
            return Err(Error::InvalidArgument("samples must lie in Z[i]".into()));
        }
        let x = alpha.to_mq();
        let mut lhs = SymbolValue::One;
        for pr in &upstairs {
            lhs = lhs * power_residue_prime(&x, pr, 4)?;
        }
        let residue = (reduce_big(&alpha.a, p) as u128 + reduce_big(&alpha.b, p) as u128 * s_i as u128) % p as u128;
        let quad = SymbolValue::from_sign(legendre(residue as u64, p));
        let rhs = match mode {
            LoweringMode::Split => quad,
            LoweringMode::Inert => quad.pow(p.div_ceil(2)),
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a degree-one prime `P_K` of `Z[sqrt(q)]` that splits in `M_q` (the relative
/// automorphism moves `i`): `(alpha / P_K O_{M_q})_4 = 1` for `alpha` in `O_K` prime to `P_K`.
pub fn lowering_check_nonfixing(ctx: &QContext, p: u64, s_q: u64, samples: &[QuadElement]) -> Result<bool> {
    let prime = SubfieldPrime::new(ctx, Subfield::Real, p, Some(s_q))?;
    let upstairs = prime.primes_of_m(ctx)?;
    if upstairs.len() != 2 {
        return Err(Error::InvalidArgument(format!("prime above {p} does not split in M_q")));
    }
    for alpha in samples {
        let x = alpha.to_mq();
        if prime.extended.contains(&x) || upstairs.iter().any(|pr| pr.contains(&x)) {
            continue;
        }
        let mut lhs = SymbolValue::One;
        for pr in &upstairs {
            lhs = lhs * power_residue_prime(&x, pr, 4)?;
        }
        if lhs != SymbolValue::One {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::find_generator;

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(2, 13).unwrap(), -1);
        assert_eq!(jacobi(1, 15).unwrap(), 1);
        assert_eq!(jacobi(3, 9).unwrap(), 0);
        assert!(jacobi(3, 10).is_err());
        assert!(jacobi(3, -7).is_err());
        // brute-force agreement with Euler's criterion on primes
        for p in [3u64, 5, 7, 11, 13, 101, 1009] {
            for a in -50i128..50 {
                assert_eq!(jacobi(a, p as i128).unwrap(), legendre(reduce_i128(a, p), p));
            }
        }
    }

    #[test]
    fn quartic_examples() {
        assert_eq!(quartic_rational(-3, 13).unwrap(), SymbolValue::MinusOne);
        assert_eq!(quartic_rational(-3, 61).unwrap(), SymbolValue::One);
        assert_eq!(quartic_rational(13, 61).unwrap(), SymbolValue::One);
        assert_eq!(quartic_rational(13, 157).unwrap(), SymbolValue::MinusOne);
        assert_eq!(quartic_rational(26, 13).unwrap(), SymbolValue::Zero);
        assert!(quartic_rational(2, 7).is_err());
    }

    #[test]
    fn symbol_value_algebra() {
        use SymbolValue::*;
        assert_eq!(I * I, MinusOne);
        assert_eq!(I * MinusI, One);
        assert_eq!(I.inverse(), Some(MinusI));
        assert_eq!(Zero * I, Zero);
        assert_eq!(MinusI.pow(2), MinusOne);
        assert_eq!(Zero.inverse(), None);
    }

    #[test]
    fn prime_symbol_matches_rational() {
        let ctx = QContext::new(3).unwrap();
        let primes = primes_above(&ctx, 13).unwrap();
        for pr in &primes {
            let s = power_residue_prime(&MqElement::from_int(-3), pr, 4).unwrap();
            assert_eq!(s, SymbolValue::MinusOne);
            assert_eq!(power_residue_prime(&MqElement::one(), pr, 2).unwrap(), SymbolValue::One);
            let w = find_generator(&ctx, pr).unwrap();
            assert_eq!(power_residue_prime(&w, pr, 4).unwrap(), SymbolValue::Zero);
            assert_eq!(power_residue(&ctx, &MqElement::from_int(-3), &w, 4).unwrap(), s);
        }
    }

    #[test]
    fn lowering_q3_p13() {
        let ctx = QContext::new(3).unwrap();
        let samples: Vec<QuadElement> =
            [(2, 0), (3, 0), (1, 1), (5, 2), (13, 0)].iter().map(|&(a, b)| QuadElement::new(Subfield::Gauss, a, b)).collect();
        for s_i in [5, 8] {
            assert!(lowering_check(&ctx, 13, s_i, LoweringMode::Split, &samples).unwrap());
        }
        assert!(lowering_check(&ctx, 13, 5, LoweringMode::Inert, &samples).is_err());
        // 5: (3/5) = -1, so the Gaussian primes above 5 stay inert in M_3.
        assert!(lowering_check(&ctx, 5, 2, LoweringMode::Inert, &samples).unwrap());
    }

    #[test]
    fn descend_examples() {
        let ctx = QContext::new(7).unwrap();
        let prime = SubfieldPrime::new(&ctx, Subfield::Real, 29, Some(6)).unwrap();
        let beta0 = QuadElement::new(Subfield::Real, 4, 3);
        assert_eq!(descend_to_subfield(&ctx, &beta0.to_mq(), &prime).unwrap(), beta0);
        let b = &beta0.to_mq() + &MqElement::new(1, 2, 3, 4).scale(&BigInt::from(29));
        assert_eq!(descend_to_subfield(&ctx, &b, &prime).unwrap(), beta0);
        assert!(descend_to_subfield(&ctx, &MqElement::i(), &prime).is_err());
    }
}
