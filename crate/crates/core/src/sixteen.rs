//! The 16-rank criterion for `h(-qp)`.
//!
//! Rational route: `(-q/p)` decides `4 | h`, `(-q/p)_4` decides `8 | h`, and with
//! `p = u^2 - q v^2`, `u = 1 mod 4`, the comparison `(u/p)_4 = (2/u)` decides `16 | h`.
//!
//! Ring route: the symbol `[w]`, the indicator `s(w)` and the sequence value `a(w)`
//! evaluated at a generator `w` of a prime of `M_q` above `p`.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ideals::{ideal_sum_coprime, IdealLattice};
use crate::modular::{is_prime, reduce_big, sqrt_mod};
use crate::ring::{GaloisElement, MqElement, QContext, Subfield, UnitBase};
use crate::symbols::{jacobi, power_residue, quartic_rational, SymbolValue};

/// One line of the criterion table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpRecord {
    pub q: u64,
    pub p: u64,
    /// `(-q/p)`.
    pub chi: i8,
    /// `(-q/p)_4`, present when `chi = 1`.
    pub chi4: Option<i8>,
    /// Normalized solution of `p = u^2 - q v^2`, present when `chi = 1`.
    pub u: Option<BigInt>,
    pub v: Option<BigInt>,
    pub e: i8,
    /// Class number from form counting, when the oracle ran.
    pub h: Option<u64>,
    pub agree: Option<bool>,
}

impl EpRecord {
    /// `v_2(h)` when `h` is known.
    pub fn v2h(&self) -> Option<u32> {
        self.h.map(|h| h.trailing_zeros())
    }

    /// Records `h` and whether `chi`, `chi4` and `e` match its 2-adic valuation.
    pub fn attach_oracle(&mut self, h: u64) {
        self.h = Some(h);
        self.agree = Some(self.consistent_with(h));
    }

    pub fn consistent_with(&self, h: u64) -> bool {
        let k = h.trailing_zeros().min(4);
        let expected_e = match k {
            4 => 1,
            3 => -1,
            _ => 0,
        };
        (k >= 2) == (self.chi == 1) && (k >= 3) == (self.chi4 == Some(1)) && self.e == expected_e
    }
}

fn isqrt_i128(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Reduction representative of `b` modulo `2|a|` for forms of discriminant `d`, `s = floor(sqrt(d))`.
fn rho_residue(b: i128, a: i128, s: i128) -> i128 {
    let m = 2 * a.abs();
    if a.abs() <= s {
        s - (s - b).rem_euclid(m)
    } else {
        let r = b.rem_euclid(m);
        if r > a.abs() {
            r - m
        } else {
            r
        }
    }
}

/// Some `(u, v)` with `u^2 - q v^2 = p`, found by reducing `<p, 2r, (r^2 - q)/p>`
/// (`r^2 = q mod p`) to the principal form and carrying `(1, 0)` along.
fn rho_solution(p: u64, q: u64) -> Result<(i128, i128)> {
    let r = sqrt_mod(q % p, p).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a square mod {p}")))?;
    let (pi, qi, ri) = (p as i128, q as i128, r as i128);
    let d = 4 * qi;
    let s = isqrt_i128(d);
    let (mut a, mut b, mut c) = (pi, 2 * ri, (ri * ri - qi) / pi);
    // f_original(M x) = f_current(x)
    let (mut m00, mut m01, mut m10, mut m11) = (1i128, 0i128, 0i128, 1i128);
    let mut steps = 0;
    while a != 1 {
        steps += 1;
        if steps > 100_000 {
            return Err(Error::Internal { q, p, msg: "form reduction did not reach the principal form".into() });
        }
        let b2 = rho_residue(-b, c, s);
        let t = (b2 + b) / (2 * c);
        let c2 = (b2 * b2 - d) / (4 * c);
        (a, b, c) = (c, b2, c2);
        (m00, m01, m10, m11) = (m01, m01 * t - m00, m11, m11 * t - m10);
    }
    let (x, y) = (m11, -m10);
    let u = x + (b / 2) * y;
    let v = y;
    if u * u - qi * v * v != pi {
        return Err(Error::Internal { q, p, msg: format!("bad norm solution ({u}, {v})") });
    }
    Ok((u, v))
}

/// `(u + v sqrt(q)) (a + b sqrt(q))`.
fn real_mul(q: &BigInt, (u, v): (&BigInt, &BigInt), (a, b): (&BigInt, &BigInt)) -> (BigInt, BigInt) {
    (u * a + q * v * b, u * b + v * a)
}

/// Solution of `p = u^2 - q v^2` with `u > 0` minimal and `v >= 0`.
pub fn solve_norm_equation(ctx: &QContext, p: u64) -> Result<(BigInt, BigInt)> {
    let q = ctx.q;
    if p % 4 != 1 || !is_prime(p) || p == q {
        return Err(Error::InvalidArgument(format!("{p} is not a prime = 1 mod 4 distinct from {q}")));
    }
    if jacobi(q as i128, p as i128)? != 1 {
        return Err(Error::InvalidArgument(format!("({q}/{p}) != 1")));
    }
    let (u, v) = rho_solution(p, q)?;
    let qb = BigInt::from(q);
    let (a1, b1) = (&ctx.real_unit.0, ctx.real_unit.1.abs());
    let eta_inv = (a1.clone(), -b1);
    let (mut u, mut v) = (BigInt::from(u), BigInt::from(v));
    if u.is_negative() {
        (u, v) = (-u, -v);
    }
    loop {
        v = v.abs();
        let (u2, v2) = real_mul(&qb, (&u, &v), (&eta_inv.0, &eta_inv.1));
        if u2 >= u {
            break;
        }
        (u, v) = (u2, v2);
    }
    Ok((u, v.abs()))
}

/// Multiplies `u + v sqrt(q)` by the power of `eps*sigma(eps)` in `{0, 1, 2, 3}` that
/// makes `u = 1 mod 4`, then takes `v >= 0`.
pub fn normalize_u(ctx: &QContext, (u, v): (&BigInt, &BigInt)) -> Result<(BigInt, BigInt)> {
    let qb = BigInt::from(ctx.q);
    let (mut u, mut v) = if u.is_negative() { (-u, -v) } else { (u.clone(), v.clone()) };
    let (a1, b1) = (&ctx.real_unit.0, &ctx.real_unit.1);
    let four = BigInt::from(4);
    for _ in 0..4 {
        if u.mod_floor(&four).is_one() {
            return Ok((u, v.abs()));
        }
        (u, v) = real_mul(&qb, (&u, &v), (a1, b1));
    }
    Err(Error::Internal { q: ctx.q, p: 0, msg: format!("no unit multiple of ({u}, {v}) has u = 1 mod 4") })
}

/// `(2/u)` for odd positive `u`; zero for even `u`.
pub fn two_over(u: &BigInt) -> i8 {
    match u.mod_floor(&BigInt::from(8)).to_u8().unwrap() {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// Criterion record for `p` (oracle fields left empty).
pub fn ep_record(ctx: &QContext, p: u64) -> Result<EpRecord> {
    let q = ctx.q;
    if p % 4 != 1 || p == q || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not a prime = 1 mod 4 distinct from {q}")));
    }
    let minus_q = -(q as i128);
    let chi = jacobi(minus_q, p as i128)?;
    let mut rec = EpRecord { q, p, chi, chi4: None, u: None, v: None, e: 0, h: None, agree: None };
    if chi != 1 {
        return Ok(rec);
    }
    let chi4 = quartic_rational(minus_q, p)?
        .as_sign()
        .ok_or_else(|| Error::Internal { q, p, msg: "(-q/p)_4 is not real although (-q/p) = 1".into() })?;
    rec.chi4 = Some(chi4);
    let (u0, v0) = solve_norm_equation(ctx, p)?;
    let (u, v) = normalize_u(ctx, (&u0, &v0))?;
    if chi4 == 1 {
        let ur = reduce_big(&u, p) as i128;
        if jacobi(ur, p as i128)? != 1 {
            return Err(Error::Internal { q, p, msg: format!("(u/p) = -1 for u = {u}") });
        }
        let quartic = quartic_rational(ur, p)?.as_sign().expect("(u/p) = 1");
        rec.e = if quartic == two_over(&u) { 1 } else { -1 };
    }
    rec.u = Some(u);
    rec.v = Some(v);
    Ok(rec)
}

/// `e_p`: `+1` if `16 | h(-qp)`, `-1` if `8 || h(-qp)`, `0` if `8` does not divide it.
pub fn e_p(ctx: &QContext, p: u64) -> Result<i8> {
    Ok(ep_record(ctx, p)?.e)
}

/// `u(w sigma(w))`.
pub fn u_of(ctx: &QContext, w: &MqElement) -> BigInt {
    ctx.u_part(&ctx.norm_to_subfield(w, Subfield::Real))
}

/// `s(w)`: 1 when `u(w sigma(w)) = 1 mod 4`.
pub fn s_indicator(ctx: &QContext, w: &MqElement) -> u8 {
    u8::from(u_of(ctx, w).mod_floor(&BigInt::from(4)).is_one())
}

fn coprime_to_2q(ctx: &QContext, w: &MqElement) -> bool {
    let n = ctx.norm_to_q(w);
    n.is_odd() && !(&n % BigInt::from(ctx.q)).is_zero()
}

/// `[w] = (u / w)_4 (2 / u)` with `u = u(w sigma(w))`; zero when `u` is even.
pub fn bracket(ctx: &QContext, w: &MqElement) -> Result<SymbolValue> {
    if !coprime_to_2q(ctx, w) {
        return Err(Error::NotCoprime);
    }
    let u = u_of(ctx, w);
    let two = two_over(&u);
    if two == 0 {
        return Ok(SymbolValue::Zero);
    }
    Ok(power_residue(ctx, &MqElement::from_int(u), w, 4)? * SymbolValue::from_sign(two))
}

/// An element of `Z[i][1/2]` with denominator at most 2, stored doubled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct HalfGaussian {
    pub re2: i64,
    pub im2: i64,
}

impl HalfGaussian {
    pub const ZERO: HalfGaussian = HalfGaussian { re2: 0, im2: 0 };

    pub fn from_sign(s: i8) -> Self {
        HalfGaussian { re2: 2 * s as i64, im2: 0 }
    }

    pub fn from_symbol(s: SymbolValue) -> Self {
        let (re, im) = s.as_gaussian();
        HalfGaussian { re2: 2 * re, im2: 2 * im }
    }

    /// The value as a sign when it is one of `-1, 0, 1`.
    pub fn as_sign(&self) -> Option<i8> {
        (self.im2 == 0 && self.re2.abs() <= 2 && self.re2 % 2 == 0).then_some((self.re2 / 2) as i8)
    }
}

impl Add for HalfGaussian {
    type Output = HalfGaussian;
    fn add(self, o: HalfGaussian) -> HalfGaussian {
        HalfGaussian { re2: self.re2 + o.re2, im2: self.im2 + o.im2 }
    }
}

impl Mul for HalfGaussian {
    type Output = HalfGaussian;
    fn mul(self, o: HalfGaussian) -> HalfGaussian {
        let re4 = self.re2 * o.re2 - self.im2 * o.im2;
        let im4 = self.re2 * o.im2 + self.im2 * o.re2;
        debug_assert!(re4 % 2 == 0 && im4 % 2 == 0, "product leaves Z[i][1/2] with denominator 2");
        HalfGaussian { re2: re4 / 2, im2: im4 / 2 }
    }
}

impl fmt::Display for HalfGaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |x: i64| if x % 2 == 0 { format!("{}", x / 2) } else { format!("{x}/2") };
        match (self.re2, self.im2) {
            (r, 0) => f.write_str(&part(r)),
            (0, i) => write!(f, "{}i", part(i)),
            (r, i) if i < 0 => write!(f, "{}-{}i", part(r), part(-i)),
            (r, i) => write!(f, "{}+{}i", part(r), part(i)),
        }
    }
}

/// `a(w) = sum_{i<4} s(eps^i w) [eps^i w] (1 + (-q / eps^i w)_4) / 2`, and `0` when
/// `(w)` shares a prime with `2q`. Depends only on the ideal `(w)`.
pub fn a_ideal(ctx: &QContext, w: &MqElement) -> Result<HalfGaussian> {
    if !coprime_to_2q(ctx, w) {
        return Ok(HalfGaussian::ZERO);
    }
    let minus_q = MqElement::from_int(-(ctx.q as i64));
    let chi4 = power_residue(ctx, &minus_q, w, 4)?;
    let half = HalfGaussian { re2: 1, im2: 0 };
    let weight = half * (HalfGaussian::from_sign(1) + HalfGaussian::from_symbol(chi4));
    if weight == HalfGaussian::ZERO {
        return Ok(HalfGaussian::ZERO);
    }
    let mut acc = HalfGaussian::ZERO;
    let mut x = w.clone();
    for _ in 0..4 {
        if s_indicator(ctx, &x) == 1 {
            acc = acc + HalfGaussian::from_symbol(bracket(ctx, &x)?) * weight;
        }
        x = ctx.mul(&ctx.eps, &x);
    }
    Ok(acc)
}

/// `Q_2(w, z) = (2/u(w sigma w)) (2/u(z sigma z)) (2/u(wz sigma(wz)))`.
pub fn q2_factor(ctx: &QContext, w: &MqElement, z: &MqElement) -> i8 {
    let wz = ctx.mul(w, z);
    two_over(&u_of(ctx, w)) * two_over(&u_of(ctx, z)) * two_over(&u_of(ctx, &wz))
}

/// Outcome of comparing `[wz]` with `[w][z](z / tau(w))_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistedRatio {
    Mu(SymbolValue),
    /// Some factor vanished, so the ratio is undefined.
    Degenerate,
}

/// `mu_3 = [wz] / ([w][z](z / tau(w))_2)`.
pub fn twisted_ratio(ctx: &QContext, w: &MqElement, z: &MqElement) -> Result<TwistedRatio> {
    let wz = ctx.mul(w, z);
    for x in [w, z, &wz] {
        if !coprime_to_2q(ctx, x) {
            return Err(Error::NotCoprime);
        }
    }
    let ts_w = ctx.galois_apply(GaloisElement::Tau.compose(GaloisElement::Sigma), w);
    let iz = IdealLattice::from_generators(ctx, std::slice::from_ref(z))?;
    let iw = IdealLattice::from_generators(ctx, &[ts_w])?;
    if !ideal_sum_coprime(&iz, &iw) {
        return Ok(TwistedRatio::Degenerate);
    }
    let tau_w = ctx.galois_apply(GaloisElement::Tau, w);
    let rhs = bracket(ctx, w)? * bracket(ctx, z)? * power_residue(ctx, z, &tau_w, 2)?;
    let lhs = bracket(ctx, &wz)?;
    match (lhs.is_zero(), rhs.inverse()) {
        (false, Some(inv)) => Ok(TwistedRatio::Mu(lhs * inv)),
        _ => Ok(TwistedRatio::Degenerate),
    }
}

/// `(eps sigma(eps))^4 = A + B sqrt(q)` against the published `(2A, 2qB)`.
pub fn unit_coeff_check(ctx: &QContext) -> bool {
    let (a, b) = &ctx.coeff_ab;
    let two = BigInt::from(2);
    (&two * a, &two * BigInt::from(ctx.q) * b) == ctx.published_row
}

/// Every `(u, v) mod 4` orbit under the published map has length 4 (or is fixed at
/// `(0, 0)`), and the orbits through a `u` that can occur in `u^2 - q v^2 = 1 mod 4`
/// contain exactly one `u = 1 mod 4`.
pub fn orbit_check(ctx: &QContext) -> bool {
    let published = ctx.orbit_matrix.map(|row| row.map(|x| x.rem_euclid(4)));
    if published != ctx.derived_orbit_matrix() {
        return false;
    }
    let q = ctx.q as i64;
    for u in 0..4 {
        for v in 0..4 {
            if (u * u - q * v * v).rem_euclid(4) != 1 {
                continue;
            }
            let mut orbit = vec![(u, v)];
            let mut x = ctx.orbit_step((u, v));
            while x != (u, v) {
                orbit.push(x);
                x = ctx.orbit_step(x);
                if orbit.len() > 4 {
                    return false;
                }
            }
            if orbit.len() != 4 || orbit.iter().filter(|(a, _)| *a == 1).count() != 1 {
                return false;
            }
        }
    }
    true
}

/// `a(P) = e_p` at a degree-one prime `P` over `p` with generator `w`.
pub fn prop31_check(ctx: &QContext, w: &MqElement) -> Result<bool> {
    let n = ctx.norm_to_q(w);
    let p = n.to_u64().filter(|&p| is_prime(p)).ok_or_else(|| Error::Precondition(format!("N(w) = {n} is not a prime")))?;
    if p % 4 != 1 || jacobi(-(ctx.q as i128), p as i128)? != 1 {
        return Err(Error::Precondition(format!("p = {p} must be 1 mod 4 with (-q/p) = 1")));
    }
    Ok(a_ideal(ctx, w)? == HalfGaussian::from_sign(e_p(ctx, p)?))
}

/// `nu^k eps^j w`, the generators of `(w)` visited by the invariance checks.
pub fn unit_multiple(ctx: &QContext, w: &MqElement, nu_k: i64, eps_j: i64) -> MqElement {
    let u = ctx.mul(&ctx.unit_power(UnitBase::Nu, nu_k), &ctx.unit_power(UnitBase::Eps, eps_j));
    ctx.mul(&u, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::class_number;
    use crate::ideals::{find_generator, generator_candidates, primes_above};

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn brute_force_solution(p: u64, q: u64) -> (i64, i64) {
        (0..)
            .find_map(|v: i64| {
                let n = p as i64 + q as i64 * v * v;
                let u = (n as f64).sqrt().round() as i64;
                (u * u == n).then_some((u, v))
            })
            .unwrap()
    }

    #[test]
    fn norm_equation_examples() {
        let c = QContext::new(3).unwrap();
        // 16 - 3 = 13 is the minimal solution; the unit step gives 25 - 12 = 13.
        assert_eq!(solve_norm_equation(&c, 13).unwrap(), (big(4), big(1)));
        assert_eq!(normalize_u(&c, (&big(4), &big(1))).unwrap(), (big(5), big(2)));
        assert_eq!(solve_norm_equation(&c, 61).unwrap(), (big(8), big(1)));
        assert_eq!(solve_norm_equation(&c, 157).unwrap(), (big(13), big(2)));
        assert!(solve_norm_equation(&c, 17).is_err());
    }

    #[test]
    fn norm_equation_matches_brute_force() {
        for c in QContext::all() {
            for p in (5..3000u64).filter(|&p| p % 4 == 1 && is_prime(p) && p != c.q) {
                if jacobi(c.q as i128, p as i128).unwrap() != 1 {
                    continue;
                }
                let (u, v) = solve_norm_equation(&c, p).unwrap();
                assert_eq!(&u * &u - BigInt::from(c.q) * &v * &v, BigInt::from(p));
                // Brute force only finds the minimal u when the unit is small.
                if c.q <= 11 {
                    let (bu, bv) = brute_force_solution(p, c.q);
                    assert_eq!((u, v), (big(bu), big(bv)), "q={}, p={p}", c.q);
                }
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let c = QContext::new(3).unwrap();
        assert_eq!(normalize_u(&c, (&big(8), &big(1))).unwrap(), (big(13), big(6)));
        assert_eq!(normalize_u(&c, (&big(5), &big(2))).unwrap(), (big(5), big(2)));
        assert_eq!(normalize_u(&c, (&big(13), &big(2))).unwrap(), (big(13), big(2)));
    }

    #[test]
    fn orbit_examples() {
        let c3 = QContext::new(3).unwrap();
        assert_eq!(c3.orbit_step((0, 1)), (1, 2));
        let c7 = QContext::new(7).unwrap();
        assert_eq!(c7.orbit_step((1, 0)), (0, 3));
        for c in QContext::all() {
            assert!(orbit_check(&c), "q={}", c.q);
        }
    }

    #[test]
    fn e_p_examples() {
        let c = QContext::new(3).unwrap();
        assert_eq!(e_p(&c, 13).unwrap(), 0);
        assert_eq!(e_p(&c, 61).unwrap(), -1);
        assert_eq!(e_p(&c, 157).unwrap(), 1);
        let r = ep_record(&c, 61).unwrap();
        assert_eq!((r.chi, r.chi4), (1, Some(1)));
        assert_eq!((r.u, r.v), (Some(big(13)), Some(big(6))));
        assert!(e_p(&c, 3).is_err());
        assert!(e_p(&c, 7).is_err());
    }

    #[test]
    fn e_p_matches_class_numbers() {
        for c in QContext::all() {
            for p in (5..1500u64).filter(|&p| p % 4 == 1 && is_prime(p) && p != c.q) {
                let mut r = ep_record(&c, p).unwrap();
                r.attach_oracle(class_number(-((c.q * p) as i64)).unwrap());
                assert_eq!(r.agree, Some(true), "{r:?}");
            }
        }
    }

    #[test]
    fn unit_rows() {
        for c in QContext::all() {
            assert!(unit_coeff_check(&c), "q={}", c.q);
        }
        let c = QContext::new(3).unwrap();
        assert_eq!(c.coeff_ab, (big(97), big(-56)));
    }

    #[test]
    fn ring_route_spot_values() {
        let c = QContext::new(3).unwrap();
        for (p, e) in [(13u64, 0i8), (61, -1), (157, 1)] {
            for prime in primes_above(&c, p).unwrap() {
                let w = find_generator(&c, &prime).unwrap();
                assert_eq!(a_ideal(&c, &w).unwrap(), HalfGaussian::from_sign(e), "p={p}");
                assert!(prop31_check(&c, &w).unwrap());
                let total: u8 = (0..4).map(|j| s_indicator(&c, &unit_multiple(&c, &w, 0, j))).sum();
                assert_eq!(total, 1);
                if p == 157 {
                    let w1 = (0..4).map(|j| unit_multiple(&c, &w, 0, j)).find(|x| s_indicator(&c, x) == 1).unwrap();
                    assert_eq!(bracket(&c, &w1).unwrap(), SymbolValue::One);
                }
            }
        }
    }

    #[test]
    fn bracket_unit_invariance() {
        for c in QContext::all() {
            let primes: Vec<u64> = (5..2000u64).filter(|&p| is_prime(p) && crate::ideals::is_split_completely(&c, p)).take(4).collect();
            for p in primes {
                let prime = &primes_above(&c, p).unwrap()[0];
                let w = find_generator(&c, prime).unwrap();
                let b = bracket(&c, &w).unwrap();
                assert_eq!(bracket(&c, &unit_multiple(&c, &w, 0, 4)).unwrap(), b);
                assert_eq!(bracket(&c, &unit_multiple(&c, &w, 1, 0)).unwrap(), b);
                let a = a_ideal(&c, &w).unwrap();
                for other in generator_candidates(&c, prime).unwrap() {
                    assert_eq!(a_ideal(&c, &other).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn non_coprime_ideal_gives_zero() {
        let c = QContext::new(3).unwrap();
        assert_eq!(a_ideal(&c, &MqElement::from_int(2)).unwrap(), HalfGaussian::ZERO);
        assert_eq!(a_ideal(&c, &MqElement::sqrt_q()).unwrap(), HalfGaussian::ZERO);
    }

    #[test]
    fn half_gaussian_display() {
        assert_eq!(HalfGaussian::from_sign(-1).to_string(), "-1");
        assert_eq!(HalfGaussian { re2: 1, im2: -1 }.to_string(), "1/2-1/2i");
        assert_eq!(HalfGaussian { re2: 0, im2: 2 }.to_string(), "1i");
    }

    #[test]
    fn q2_squares() {
        let c = QContext::new(7).unwrap();
        let w = MqElement::new(3, 2, 0, 0);
        let uw = u_of(&c, &w);
        let v = q2_factor(&c, &w, &w);
        assert_eq!(v, two_over(&uw).pow(2) * two_over(&u_of(&c, &c.mul(&w, &w))));
    }
}
