//! Exact arithmetic in the ring of integers of `M_q = Q(i, sqrt(q))`.
//!
//! Elements are stored over the integral basis `{1, i, w, i*w}` with
//! `w = (1 + i*sqrt(q)) / 2`. Writing an element as `A + B*w` with
//! `A, B` Gaussian integers, multiplication only needs the relation
//! `w^2 = w - (q+1)/4`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The seven primes `q = 3 mod 4` for which `Q(i, sqrt(q))` has class number one.
pub const SUPPORTED_Q: [u64; 7] = [3, 7, 11, 19, 43, 67, 163];

/// Algebraic integer `c0 + c1*i + c2*w + c3*i*w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MqElement {
    pub coords: [BigInt; 4],
}

impl MqElement {
    pub fn new(c0: impl Into<BigInt>, c1: impl Into<BigInt>, c2: impl Into<BigInt>, c3: impl Into<BigInt>) -> Self {
        MqElement { coords: [c0.into(), c1.into(), c2.into(), c3.into()] }
    }

    pub fn from_coords(coords: [BigInt; 4]) -> Self {
        MqElement { coords }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        MqElement::new(n, 0, 0, 0)
    }

    pub fn zero() -> Self {
        MqElement::from_int(0)
    }

    pub fn one() -> Self {
        MqElement::from_int(1)
    }

    pub fn i() -> Self {
        MqElement::new(0, 1, 0, 0)
    }

    pub fn omega() -> Self {
        MqElement::new(0, 0, 1, 0)
    }

    /// `sqrt(q) = i - 2*i*w`.
    pub fn sqrt_q() -> Self {
        MqElement::new(0, 1, 0, -2)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        MqElement { coords: self.coords.clone().map(|c| c * k) }
    }

    /// Exact division of every coordinate by `k`; `None` if some coordinate is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        let mut out = self.coords.clone();
        for c in out.iter_mut() {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            *c = q;
        }
        Some(MqElement { coords: out })
    }

    /// Coordinates reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        MqElement { coords: self.coords.clone().map(|c| c.mod_floor(m)) }
    }

    pub fn to_i128(&self) -> Option<[i128; 4]> {
        Some([
            self.coords[0].to_i128()?,
            self.coords[1].to_i128()?,
            self.coords[2].to_i128()?,
            self.coords[3].to_i128()?,
        ])
    }

    pub fn from_i128(c: [i128; 4]) -> Self {
        MqElement::new(c[0], c[1], c[2], c[3])
    }

    fn split(&self) -> (Gauss, Gauss) {
        let [c0, c1, c2, c3] = &self.coords;
        (Gauss(c0.clone(), c1.clone()), Gauss(c2.clone(), c3.clone()))
    }

    fn join(a: Gauss, b: Gauss) -> Self {
        MqElement { coords: [a.0, a.1, b.0, b.1] }
    }
}

impl fmt::Debug for MqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2, c3] = &self.coords;
        write!(f, "({c0}, {c1}, {c2}, {c3})")
    }
}

impl fmt::Display for MqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "w", "iw"];
        let mut first = true;
        for (c, name) in self.coords.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (name, mag.is_one()) {
                ("", _) => mag.to_string(),
                (n, true) => n.to_string(),
                (n, false) => format!("{mag}{n}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Gaussian integer helper used inside multiplication and the Galois action.
#[derive(Clone)]
struct Gauss(BigInt, BigInt);

impl Gauss {
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn add(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss(&self.0 - &o.0, &self.1 - &o.1)
    }
    fn conj(&self) -> Gauss {
        Gauss(self.0.clone(), -&self.1)
    }
    fn neg(&self) -> Gauss {
        Gauss(-&self.0, -&self.1)
    }
}

impl Add for &MqElement {
    type Output = MqElement;
    fn add(self, o: &MqElement) -> MqElement {
        let mut c = self.coords.clone();
        for (x, y) in c.iter_mut().zip(&o.coords) {
            *x += y;
        }
        MqElement { coords: c }
    }
}

impl Sub for &MqElement {
    type Output = MqElement;
    fn sub(self, o: &MqElement) -> MqElement {
        let mut c = self.coords.clone();
        for (x, y) in c.iter_mut().zip(&o.coords) {
            *x -= y;
        }
        MqElement { coords: c }
    }
}

impl Neg for &MqElement {
    type Output = MqElement;
    fn neg(self) -> MqElement {
        MqElement { coords: self.coords.clone().map(|c| -c) }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MqElement {
            type Output = MqElement;
            fn $m(self, o: MqElement) -> MqElement {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);

/// Galois group of `M_q/Q`. `Sigma` fixes `sqrt(q)` (complex conjugation),
/// `Tau` fixes `i`, `SigmaTau` fixes `sqrt(-q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaloisElement {
    Id,
    Sigma,
    Tau,
    SigmaTau,
}

impl GaloisElement {
    pub const ALL: [GaloisElement; 4] =
        [GaloisElement::Id, GaloisElement::Sigma, GaloisElement::Tau, GaloisElement::SigmaTau];

    fn bits(self) -> u8 {
        match self {
            GaloisElement::Id => 0,
            GaloisElement::Sigma => 1,
            GaloisElement::Tau => 2,
            GaloisElement::SigmaTau => 3,
        }
    }

    fn from_bits(b: u8) -> Self {
        match b & 3 {
            0 => GaloisElement::Id,
            1 => GaloisElement::Sigma,
            2 => GaloisElement::Tau,
            _ => GaloisElement::SigmaTau,
        }
    }

    /// Group law of the Klein four group.
    pub fn compose(self, other: GaloisElement) -> GaloisElement {
        GaloisElement::from_bits(self.bits() ^ other.bits())
    }
}

/// The three quadratic subfields of `M_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subfield {
    /// `Z[i]`
    Gauss,
    /// `Z[sqrt(q)]`
    Real,
    /// `Z[(1 + sqrt(-q))/2]`
    Imag,
}

impl Subfield {
    pub const ALL: [Subfield; 3] = [Subfield::Gauss, Subfield::Real, Subfield::Imag];

    /// Generator of `Gal(M_q / subfield)`.
    pub fn relative_generator(self) -> GaloisElement {
        match self {
            Subfield::Gauss => GaloisElement::Tau,
            Subfield::Real => GaloisElement::Sigma,
            Subfield::Imag => GaloisElement::SigmaTau,
        }
    }
}

/// Element `a + b*t` of a quadratic subfield, `t` being `i`, `sqrt(q)` or `(1+sqrt(-q))/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub field: Subfield,
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadElement {
    pub fn new(field: Subfield, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadElement { field, a: a.into(), b: b.into() }
    }

    pub fn to_mq(&self) -> MqElement {
        let (a, b) = (self.a.clone(), self.b.clone());
        match self.field {
            Subfield::Gauss => MqElement::from_coords([a, b, BigInt::zero(), BigInt::zero()]),
            Subfield::Real => {
                let m = BigInt::from(-2) * &b;
                MqElement::from_coords([a, b, BigInt::zero(), m])
            }
            Subfield::Imag => MqElement::from_coords([a, BigInt::zero(), b, BigInt::zero()]),
        }
    }

    /// Inverse of [`QuadElement::to_mq`]; `None` when `x` does not lie in the subfield.
    pub fn from_mq(field: Subfield, x: &MqElement) -> Option<Self> {
        let [c0, c1, c2, c3] = &x.coords;
        match field {
            Subfield::Gauss => (c2.is_zero() && c3.is_zero()).then(|| QuadElement::new(field, c0.clone(), c1.clone())),
            Subfield::Real => (c2.is_zero() && *c3 == BigInt::from(-2) * c1)
                .then(|| QuadElement::new(field, c0.clone(), c1.clone())),
            Subfield::Imag => (c1.is_zero() && c3.is_zero()).then(|| QuadElement::new(field, c0.clone(), c2.clone())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitBase {
    Nu,
    Eps,
}

/// Published data for one `q`: the unit `eps_q = (1 + s*i)(a*sqrt(q) + b)/2`,
/// the orbit map of `eps*sigma(eps)` on `(u, v) mod 4`, and the row
/// `2u(eps^4 w sigma(eps^4 w)) = cu*u + cv*v`.
struct UnitTable {
    q: u64,
    /// `None` for `q = 3` where `eps = zeta_12 - 1`.
    half_form: Option<(i64, i64, i64)>,
    eps_coords: [i64; 4],
    orbit: [[i64; 2]; 2],
    row: (&'static str, &'static str),
}

const UNIT_TABLES: [UnitTable; 7] = [
    UnitTable {
        q: 3,
        half_form: None,
        eps_coords: [-1, 1, 0, -1],
        orbit: [[2, -3], [-1, 2]],
        row: ("194", "-336"),
    },
    UnitTable {
        q: 7,
        half_form: Some((-1, 1, 3)),
        eps_coords: [2, -1, -1, -1],
        orbit: [[0, 1], [3, 0]],
        row: ("64514", "170688"),
    },
    UnitTable {
        q: 11,
        half_form: Some((-1, 1, 3)),
        eps_coords: [2, -1, -1, -1],
        orbit: [[2, -3], [-1, 2]],
        row: ("158402", "525360"),
    },
    UnitTable {
        q: 19,
        half_form: Some((1, 3, 13)),
        eps_coords: [5, 8, 3, -3],
        orbit: [[2, -3], [-1, 2]],
        row: ("13362897602", "58247520240"),
    },
    UnitTable {
        q: 43,
        half_form: Some((1, 9, -59)),
        eps_coords: [-34, -25, 9, -9],
        orbit: [[2, 3], [1, 2]],
        row: ("2351987525322434", "-15423013607227056"),
    },
    UnitTable {
        q: 67,
        half_form: Some((1, 27, -221)),
        eps_coords: [-124, -97, 27, -27],
        orbit: [[2, 3], [1, 2]],
        row: ("91052891016584133314", "-745300033869597034608"),
    },
    UnitTable {
        q: 163,
        half_form: Some((-1, 627, 8005)),
        eps_coords: [4316, -3689, -627, -627],
        orbit: [[2, -3], [-1, 2]],
        row: ("269780589805913908506459977860802", "3444327998561165640260096561357040"),
    },
];

/// Everything fixed once `q` is chosen.
#[derive(Clone, Debug)]
pub struct QContext {
    pub q: u64,
    /// `n_q = 2q`.
    pub n_q: u64,
    /// `(q + 1) / 4`, so that `w^2 = w - m`.
    pub m: BigInt,
    /// Torsion generator: `zeta_12` for `q = 3`, `i` otherwise.
    pub nu: MqElement,
    pub eps: MqElement,
    pub torsion_order: u32,
    /// Published action of `eps*sigma(eps)` on `(u, v) mod 4`, as `(u, v) -> M (u, v)`.
    pub orbit_matrix: [[i64; 2]; 2],
    /// `eps*sigma(eps) = a1 + b1*sqrt(q)`.
    pub real_unit: (BigInt, BigInt),
    /// `(eps*sigma(eps))^4 = A + B*sqrt(q)`.
    pub coeff_ab: (BigInt, BigInt),
    /// Published row `(2A, 2qB)`.
    pub published_row: (BigInt, BigInt),
    half_form: Option<(i64, i64, i64)>,
}

impl QContext {
    /// Builds the context and runs the startup self-checks: the unit constants are
    /// re-derived from their closed form, `eps` has norm one, and the basis is the maximal order.
    pub fn new(q: u64) -> Result<Self> {
        let table = UNIT_TABLES.iter().find(|t| t.q == q).ok_or(Error::UnsupportedQ(q))?;
        let eps = MqElement::new(table.eps_coords[0], table.eps_coords[1], table.eps_coords[2], table.eps_coords[3]);
        let (nu, torsion_order) = if q == 3 {
            // zeta_12 = (sqrt(3) + i)/2 = i - i*w
            (MqElement::new(0, 1, 0, -1), 12)
        } else {
            (MqElement::i(), 4)
        };
        let zero = BigInt::zero();
        let mut ctx = QContext {
            q,
            n_q: 2 * q,
            m: BigInt::from((q + 1) / 4),
            nu,
            eps,
            torsion_order,
            orbit_matrix: table.orbit,
            real_unit: (zero.clone(), zero.clone()),
            coeff_ab: (zero.clone(), zero),
            published_row: (table.row.0.parse().unwrap(), table.row.1.parse().unwrap()),
            half_form: table.half_form,
        };
        if ctx.derive_eps() != ctx.eps {
            return Err(Error::SelfCheck(format!("unit constant for q={q} does not match its closed form")));
        }
        if !ctx.norm_to_q(&ctx.eps).is_one() {
            return Err(Error::SelfCheck(format!("eps_{q} is not a unit")));
        }
        let es = ctx.norm_to_subfield(&ctx.eps, Subfield::Real);
        ctx.real_unit = (es.a.clone(), es.b.clone());
        let e2 = ctx.mul(&es.to_mq(), &es.to_mq());
        let e4 = ctx.mul(&e2, &e2);
        let e4 = QuadElement::from_mq(Subfield::Real, &e4).expect("real unit power stays real");
        ctx.coeff_ab = (e4.a, e4.b);
        if !ctx.order_discriminant_check() {
            return Err(Error::SelfCheck(format!("trace discriminant mismatch for q={q}")));
        }
        Ok(ctx)
    }

    /// Contexts for all seven supported `q`.
    pub fn all() -> Vec<QContext> {
        SUPPORTED_Q.iter().map(|&q| QContext::new(q).expect("supported q")).collect()
    }

    /// Recomputes `eps_q` from its closed form.
    pub fn derive_eps(&self) -> MqElement {
        match self.half_form {
            None => &MqElement::new(0, 1, 0, -1) - &MqElement::one(),
            Some((s, a, b)) => {
                let inner = &MqElement::from_int(b) + &MqElement::sqrt_q().scale(&BigInt::from(a));
                let twice = self.mul(&MqElement::new(1, s, 0, 0), &inner);
                twice.div_exact(&BigInt::from(2)).expect("eps closed form is integral")
            }
        }
    }

    pub fn mul(&self, x: &MqElement, y: &MqElement) -> MqElement {
        let (a, b) = x.split();
        let (c, d) = y.split();
        let bd = b.mul(&d);
        let rational = a.mul(&c).sub(&Gauss(&bd.0 * &self.m, &bd.1 * &self.m));
        let omega = a.mul(&d).add(&b.mul(&c)).add(&bd);
        MqElement::join(rational, omega)
    }

    pub fn pow(&self, x: &MqElement, mut k: u64) -> MqElement {
        let mut base = x.clone();
        let mut acc = MqElement::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn galois_apply(&self, g: GaloisElement, x: &MqElement) -> MqElement {
        let (a, b) = x.split();
        match g {
            GaloisElement::Id => x.clone(),
            // i -> -i, w -> 1 - w
            GaloisElement::Sigma => {
                let (ac, bc) = (a.conj(), b.conj());
                MqElement::join(ac.add(&bc), bc.neg())
            }
            // i -> i, w -> 1 - w
            GaloisElement::Tau => MqElement::join(a.add(&b), b.neg()),
            // i -> -i, w -> w
            GaloisElement::SigmaTau => MqElement::join(a.conj(), b.conj()),
        }
    }

    pub fn norm_to_subfield(&self, x: &MqElement, sub: Subfield) -> QuadElement {
        let y = self.mul(x, &self.galois_apply(sub.relative_generator(), x));
        QuadElement::from_mq(sub, &y).expect("relative norm lies in the subfield")
    }

    /// Absolute norm, always non-negative.
    pub fn norm_to_q(&self, x: &MqElement) -> BigInt {
        let r = self.norm_to_subfield(x, Subfield::Real);
        &r.a * &r.a - BigInt::from(self.q) * &r.b * &r.b
    }

    pub fn trace(&self, x: &MqElement) -> BigInt {
        let s = GaloisElement::ALL
            .iter()
            .fold(MqElement::zero(), |acc, &g| &acc + &self.galois_apply(g, x));
        debug_assert!(s.coords[1..].iter().all(Zero::is_zero));
        s.coords[0].clone()
    }

    /// `k`-th power of `nu` or `eps`; negative `k` uses the conjugate-product inverse.
    pub fn unit_power(&self, base: UnitBase, k: i64) -> MqElement {
        let unit = match base {
            UnitBase::Nu => &self.nu,
            UnitBase::Eps => &self.eps,
        };
        if k >= 0 {
            self.pow(unit, k as u64)
        } else {
            self.pow(&self.unit_inverse(unit), k.unsigned_abs())
        }
    }

    /// Inverse of a unit as the product of its three non-trivial conjugates (the norm is one).
    pub fn unit_inverse(&self, unit: &MqElement) -> MqElement {
        let mut acc = MqElement::one();
        for g in [GaloisElement::Sigma, GaloisElement::Tau, GaloisElement::SigmaTau] {
            acc = self.mul(&acc, &self.galois_apply(g, unit));
        }
        debug_assert!(self.norm_to_q(unit).is_one());
        acc
    }

    /// `u(alpha)`: rational coordinate of `alpha = u + v*sqrt(q)`.
    pub fn u_part(&self, a: &QuadElement) -> BigInt {
        debug_assert_eq!(a.field, Subfield::Real);
        a.a.clone()
    }

    /// Trace-form discriminant of `{1, i, w, iw}`; equals `16 q^2` exactly when the basis spans the maximal order.
    pub fn trace_discriminant(&self) -> BigInt {
        let basis = [MqElement::one(), MqElement::i(), MqElement::omega(), MqElement::new(0, 0, 0, 1)];
        let gram: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| self.trace(&self.mul(x, y))).collect())
            .collect();
        determinant(gram)
    }

    pub fn order_discriminant_check(&self) -> bool {
        let q = BigInt::from(self.q);
        self.trace_discriminant().abs() == BigInt::from(16) * &q * &q
    }

    /// Image of `(u, v)` under the published orbit map, reduced into `[0, 4)`.
    pub fn orbit_step(&self, (u, v): (i64, i64)) -> (i64, i64) {
        let m = self.orbit_matrix;
        ((m[0][0] * u + m[0][1] * v).rem_euclid(4), (m[1][0] * u + m[1][1] * v).rem_euclid(4))
    }

    /// The orbit map as derived from `eps*sigma(eps) = a1 + b1*sqrt(q)`:
    /// `(u, v) -> (a1*u + q*b1*v, b1*u + a1*v) mod 4`.
    pub fn derived_orbit_matrix(&self) -> [[i64; 2]; 2] {
        let four = BigInt::from(4);
        let r = |x: &BigInt| x.mod_floor(&four).to_i64().unwrap();
        let (a1, b1) = &self.real_unit;
        let qb1 = b1 * BigInt::from(self.q);
        [[r(a1), r(&qb1)], [r(b1), r(a1)]]
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub(crate) fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: u64) -> QContext {
        QContext::new(q).unwrap()
    }

    #[test]
    fn basis_products() {
        for c in QContext::all() {
            let a = MqElement::new(3, -2, 5, 7);
            assert_eq!(c.mul(&MqElement::one(), &a), a);
            assert_eq!(c.mul(&MqElement::i(), &MqElement::i()), MqElement::from_int(-1));
            let m = BigInt::from((c.q + 1) / 4);
            assert_eq!(c.mul(&MqElement::omega(), &MqElement::omega()), MqElement::from_coords([-m, 0.into(), 1.into(), 0.into()]));
        }
        // w^2 = w - 1 for q = 3
        assert_eq!(ctx(3).mul(&MqElement::omega(), &MqElement::omega()), MqElement::new(-1, 0, 1, 0));
    }

    #[test]
    fn sqrt_q_squares_to_q() {
        for c in QContext::all() {
            let s = MqElement::sqrt_q();
            assert_eq!(c.mul(&s, &s), MqElement::from_int(c.q));
        }
    }

    #[test]
    fn galois_examples() {
        let c = ctx(7);
        assert_eq!(c.galois_apply(GaloisElement::Sigma, &MqElement::i()), MqElement::new(0, -1, 0, 0));
        assert_eq!(c.galois_apply(GaloisElement::Tau, &MqElement::sqrt_q()), -&MqElement::sqrt_q());
        assert_eq!(c.galois_apply(GaloisElement::Sigma, &MqElement::sqrt_q()), MqElement::sqrt_q());
        assert_eq!(c.galois_apply(GaloisElement::Tau, &MqElement::i()), MqElement::i());
        // sigma*tau fixes i*sqrt(q) = 2w - 1, hence w.
        assert_eq!(c.galois_apply(GaloisElement::SigmaTau, &MqElement::omega()), MqElement::omega());
        assert_eq!(c.galois_apply(GaloisElement::Sigma, &MqElement::omega()), MqElement::new(1, 0, -1, 0));
    }

    #[test]
    fn norm_examples() {
        for c in QContext::all() {
            for sub in Subfield::ALL {
                let n = c.norm_to_subfield(&MqElement::one(), sub);
                assert_eq!(n.to_mq(), MqElement::one());
            }
            assert_eq!(c.norm_to_subfield(&MqElement::i(), Subfield::Gauss).to_mq(), MqElement::from_int(-1));
            assert!(c.norm_to_q(&c.eps).is_one());
            assert!(c.norm_to_q(&MqElement::one()).is_one());
        }
    }

    #[test]
    fn eps_examples() {
        assert_eq!(ctx(3).unit_power(UnitBase::Eps, 1), MqElement::new(-1, 1, 0, -1));
        assert_eq!(ctx(7).unit_power(UnitBase::Eps, 1), MqElement::new(2, -1, -1, -1));
        for c in QContext::all() {
            assert!(c.unit_power(UnitBase::Nu, c.torsion_order as i64).is_one());
            for k in 1..c.torsion_order {
                assert!(!c.unit_power(UnitBase::Nu, k as i64).is_one());
            }
            let e = c.unit_power(UnitBase::Eps, 3);
            let ei = c.unit_power(UnitBase::Eps, -3);
            assert!(c.mul(&e, &ei).is_one());
        }
    }

    #[test]
    fn real_units_match_closed_forms() {
        let c = ctx(3);
        assert_eq!(c.real_unit, (BigInt::from(2), BigInt::from(-1)));
        assert_eq!(c.coeff_ab, (BigInt::from(97), BigInt::from(-56)));
        let c = ctx(7);
        assert_eq!(c.real_unit, (BigInt::from(8), BigInt::from(3)));
        assert_eq!(c.coeff_ab, (BigInt::from(32257), BigInt::from(12192)));
    }

    #[test]
    fn discriminants() {
        assert_eq!(ctx(3).trace_discriminant().abs(), BigInt::from(144));
        assert_eq!(ctx(7).trace_discriminant().abs(), BigInt::from(784));
        assert_eq!(ctx(163).trace_discriminant().abs(), BigInt::from(16 * 163 * 163));
    }

    #[test]
    fn quad_roundtrip() {
        for sub in Subfield::ALL {
            let x = QuadElement::new(sub, 5, -3);
            assert_eq!(QuadElement::from_mq(sub, &x.to_mq()), Some(x));
        }
        assert_eq!(QuadElement::from_mq(Subfield::Real, &MqElement::i()), None);
    }

    #[test]
    fn orbit_map_matches_unit() {
        for c in QContext::all() {
            let derived = c.derived_orbit_matrix();
            for (row_d, row_p) in derived.iter().zip(c.orbit_matrix) {
                for (x, y) in row_d.iter().zip(row_p) {
                    assert_eq!(x.rem_euclid(4), y.rem_euclid(4), "q={}", c.q);
                }
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(MqElement::new(2, -1, 0, 1).to_string(), "2 - i + iw");
        assert_eq!(MqElement::zero().to_string(), "0");
    }
}
