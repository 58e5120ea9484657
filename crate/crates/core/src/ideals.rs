//! Ideals of `O_{M_q}` as integer lattices in Hermite normal form, prime ideals
//! above odd unramified rational primes, valuations and factorization of principal ideals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice;
use crate::modular::{inv_mod, legendre, mul_mod, reduce_big, sqrt_mod, ResidueField, ResidueFieldElement};
use crate::ring::{MqElement, QContext};

/// Upper-triangular basis (rows) of a full-rank sublattice of `Z^4`, in the coordinates of `{1, i, w, iw}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealLattice {
    pub hnf: [[BigInt; 4]; 4],
}

impl IdealLattice {
    /// HNF of the lattice spanned by `rows`. Errors if the rows do not span a rank-4 lattice.
    pub fn from_rows(rows: Vec<[BigInt; 4]>) -> Result<Self> {
        let mut work: Vec<[BigInt; 4]> = rows.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
        let mut hnf: Vec<[BigInt; 4]> = Vec::with_capacity(4);
        for col in 0..4 {
            loop {
                let nonzero: Vec<usize> = (0..work.len()).filter(|&i| !work[i][col].is_zero()).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let piv = *nonzero.iter().min_by_key(|&&i| work[i][col].abs()).unwrap();
                let pivot_row = work[piv].clone();
                for &i in &nonzero {
                    if i == piv {
                        continue;
                    }
                    let f = work[i][col].div_floor(&pivot_row[col]);
                    for c in col..4 {
                        let t = &f * &pivot_row[c];
                        work[i][c] -= t;
                    }
                }
            }
            let Some(idx) = (0..work.len()).find(|&i| !work[i][col].is_zero()) else {
                return Err(Error::InvalidArgument("ideal lattice is not of full rank".into()));
            };
            let mut row = work.swap_remove(idx);
            if row[col].is_negative() {
                for c in row.iter_mut() {
                    *c = -c.clone();
                }
            }
            hnf.push(row);
            work.retain(|r| r.iter().any(|c| !c.is_zero()));
        }
        // Reduce entries above each pivot into [0, pivot).
        for k in 0..4 {
            for j in 0..k {
                let f = hnf[j][k].div_floor(&hnf[k][k]);
                if !f.is_zero() {
                    let pivot = hnf[k].clone();
                    for c in k..4 {
                        let t = &f * &pivot[c];
                        hnf[j][c] -= t;
                    }
                }
            }
        }
        Ok(IdealLattice { hnf: hnf.try_into().expect("four pivots") })
    }

    /// The principal ideal `(g_1, ..., g_k)` generated by elements.
    pub fn from_generators(ctx: &QContext, gens: &[MqElement]) -> Result<Self> {
        let basis = integral_basis();
        let mut rows = Vec::with_capacity(4 * gens.len());
        for g in gens {
            for b in &basis {
                rows.push(ctx.mul(g, b).coords);
            }
        }
        IdealLattice::from_rows(rows)
    }

    pub fn unit() -> Self {
        let one = BigInt::one;
        let z = BigInt::zero;
        IdealLattice { hnf: [[one(), z(), z(), z()], [z(), one(), z(), z()], [z(), z(), one(), z()], [z(), z(), z(), one()]] }
    }

    /// Index in `O_{M_q}`, i.e. the absolute norm.
    pub fn norm(&self) -> BigInt {
        (0..4).map(|k| self.hnf[k][k].clone()).product()
    }

    pub fn rows(&self) -> impl Iterator<Item = MqElement> + '_ {
        self.hnf.iter().map(|r| MqElement::from_coords(r.clone()))
    }

    /// Exact membership by back-substitution along the triangular basis.
    pub fn contains(&self, x: &MqElement) -> bool {
        let mut rest = x.coords.clone();
        for k in 0..4 {
            let (c, r) = rest[k].div_rem(&self.hnf[k][k]);
            if !r.is_zero() {
                return false;
            }
            if !c.is_zero() {
                for (r, h) in rest.iter_mut().zip(&self.hnf[k]).skip(k) {
                    *r -= &c * h;
                }
            }
        }
        true
    }

    pub fn contains_ideal(&self, other: &IdealLattice) -> bool {
        other.rows().all(|r| self.contains(&r))
    }

    pub fn sum(&self, other: &IdealLattice) -> IdealLattice {
        let rows = self.hnf.iter().chain(other.hnf.iter()).cloned().collect();
        IdealLattice::from_rows(rows).expect("sum of full-rank lattices")
    }

    pub fn product(&self, ctx: &QContext, other: &IdealLattice) -> IdealLattice {
        let mut rows = Vec::with_capacity(16);
        for a in self.rows() {
            for b in other.rows() {
                rows.push(ctx.mul(&a, &b).coords);
            }
        }
        IdealLattice::from_rows(rows).expect("product of full-rank lattices")
    }
}

pub fn integral_basis() -> [MqElement; 4] {
    [MqElement::one(), MqElement::i(), MqElement::omega(), MqElement::new(0, 0, 0, 1)]
}

/// `true` iff `A + B = (1)`.
pub fn ideal_sum_coprime(a: &IdealLattice, b: &IdealLattice) -> bool {
    a.sum(b).norm().is_one()
}

/// A prime of `O_{M_q}` above an odd prime `p` not dividing `q`, given by the
/// images of `i` and `sqrt(q)` under its reduction map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub p: u64,
    pub f: u32,
    pub field: ResidueField,
    pub s_i: ResidueFieldElement,
    pub s_q: ResidueFieldElement,
    pub s_omega: ResidueFieldElement,
    pub lattice: IdealLattice,
}

impl PrimeIdeal {
    fn new(field: ResidueField, s_i: ResidueFieldElement, s_q: ResidueFieldElement) -> Self {
        let p = field.p;
        let half = inv_mod(2, p);
        let s_omega = field.mul(field.add(field.one(), field.mul(s_i, s_q)), field.from_u64(half));
        let images = [field.one(), s_i, s_omega, field.mul(s_i, s_omega)];
        let lattice = kernel_lattice(&images, field);
        PrimeIdeal { p, f: field.degree(), field, s_i, s_q, s_omega, lattice }
    }

    /// `p^f`.
    pub fn norm(&self) -> u128 {
        self.field.order()
    }

    /// Reduction map `O_{M_q} -> O/P`.
    pub fn reduce(&self, a: &MqElement) -> ResidueFieldElement {
        let f = &self.field;
        let [c0, c1, c2, c3] = &a.coords;
        let p = self.p;
        let mut acc = f.from_u64(reduce_big(c0, p));
        for (c, img) in [(c1, self.s_i), (c2, self.s_omega), (c3, f.mul(self.s_i, self.s_omega))] {
            let c = reduce_big(c, p);
            if c != 0 {
                acc = f.add(acc, f.mul(f.from_u64(c), img));
            }
        }
        acc
    }

    pub fn reduce_int(&self, n: i128) -> ResidueFieldElement {
        self.field.from_u64(n.rem_euclid(self.p as i128) as u64)
    }

    pub fn contains(&self, a: &MqElement) -> bool {
        self.reduce(a).is_zero()
    }
}

/// Kernel of `Z^4 -> residue field`, `e_j -> images[j]`, as an HNF lattice.
fn kernel_lattice(images: &[ResidueFieldElement; 4], field: ResidueField) -> IdealLattice {
    let p = field.p;
    let pb = BigInt::from(p);
    let unit = |j: usize| {
        let mut r: [BigInt; 4] = Default::default();
        r[j] = BigInt::one();
        r
    };
    let mut rows: Vec<[BigInt; 4]> = (0..4)
        .map(|j| {
            let mut r = unit(j);
            r[j] = pb.clone();
            r
        })
        .collect();
    // images[0] = 1. Choose a second basis vector of the residue field over F_p if needed.
    let pivot = if field.degree() == 2 { (1..4).find(|&j| images[j].b != 0) } else { None };
    for k in 1..4 {
        if Some(k) == pivot {
            continue;
        }
        let (alpha, beta) = match pivot {
            None => (images[k].a, 0),
            Some(j) => {
                let beta = mul_mod(images[k].b, inv_mod(images[j].b, p), p);
                let alpha = (images[k].a + p - mul_mod(beta, images[j].a, p)) % p;
                (alpha, beta)
            }
        };
        let mut r = unit(k);
        r[0] = -BigInt::from(alpha);
        if let Some(j) = pivot {
            r[j] = -BigInt::from(beta);
        }
        rows.push(r);
    }
    IdealLattice::from_rows(rows).expect("kernel lattice has full rank")
}

fn check_unramified(ctx: &QContext, p: u64) -> Result<()> {
    if p.is_multiple_of(2) || p.is_multiple_of(ctx.q) || p < 3 {
        return Err(Error::Ramified(p));
    }
    Ok(())
}

/// All primes of `O_{M_q}` above the odd prime `p`, `p != q`.
///
/// Four primes of degree one when `-1` and `q` are both squares mod `p`,
/// otherwise two primes of degree two.
pub fn primes_above(ctx: &QContext, p: u64) -> Result<Vec<PrimeIdeal>> {
    check_unramified(ctx, p)?;
    let q = ctx.q % p;
    let minus_one = p - 1;
    match (sqrt_mod(minus_one, p), sqrt_mod(q, p)) {
        (Some(ri), Some(rq)) => {
            let field = ResidueField::prime(p);
            let mut out = Vec::with_capacity(4);
            for si in [ri, p - ri] {
                for sq in [rq, p - rq] {
                    out.push(PrimeIdeal::new(field, field.from_u64(si), field.from_u64(sq)));
                }
            }
            Ok(out)
        }
        _ => {
            let field = ResidueField::quadratic(p);
            let ri = field.sqrt_of_base(minus_one).expect("square root in F_p^2");
            let rq = field.sqrt_of_base(q).expect("square root in F_p^2");
            let mut seen: Vec<(ResidueFieldElement, ResidueFieldElement)> = Vec::new();
            let mut out = Vec::with_capacity(2);
            for si in [ri, field.neg(ri)] {
                for sq in [rq, field.neg(rq)] {
                    if seen.contains(&(si, sq)) {
                        continue;
                    }
                    seen.push((si, sq));
                    seen.push((field.frobenius(si), field.frobenius(sq)));
                    out.push(PrimeIdeal::new(field, si, sq));
                }
            }
            debug_assert_eq!(out.len(), 2);
            Ok(out)
        }
    }
}

pub fn residue_reduce(a: &MqElement, prime: &PrimeIdeal) -> ResidueFieldElement {
    prime.reduce(a)
}

/// `k`-th power of a prime ideal.
pub fn prime_power(ctx: &QContext, prime: &PrimeIdeal, k: u32) -> IdealLattice {
    let mut acc = IdealLattice::unit();
    for _ in 0..k {
        acc = acc.product(ctx, &prime.lattice);
    }
    acc
}

/// Largest `k` with `a` in `P^k`.
pub fn valuation(ctx: &QContext, a: &MqElement, prime: &PrimeIdeal) -> Result<u32> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("valuation of zero".into()));
    }
    if !prime.contains(a) {
        return Ok(0);
    }
    let mut k = 1;
    let mut power = prime.lattice.clone();
    loop {
        power = power.product(ctx, &prime.lattice);
        if !power.contains(a) {
            return Ok(k);
        }
        k += 1;
    }
}

/// Largest `k` with `I` contained in `P^k`.
pub fn ideal_valuation(ctx: &QContext, ideal: &IdealLattice, prime: &PrimeIdeal) -> u32 {
    let mut k = 0;
    let mut power = IdealLattice::unit();
    loop {
        let next = power.product(ctx, &prime.lattice);
        if !next.contains_ideal(ideal) {
            return k;
        }
        power = next;
        k += 1;
    }
}

/// Prime factorization of an ideal as `(P, exponent)` pairs, ordered by `p`.
pub type Factorization = Vec<(PrimeIdeal, u32)>;

fn factor_integer(n: &BigInt) -> Result<BTreeMap<u128, usize>> {
    let n = n.abs().to_u128().ok_or_else(|| Error::InvalidArgument(format!("norm {n} too large to factor")))?;
    if n == 0 {
        return Err(Error::InvalidArgument("zero has no factorization".into()));
    }
    Ok(num_prime::nt_funcs::factorize128(n))
}

fn factor_with(
    ctx: &QContext,
    norm: &BigInt,
    contained_in: impl Fn(&PrimeIdeal) -> bool,
    exact_valuation: impl Fn(&PrimeIdeal) -> u32,
) -> Result<Factorization> {
    let mut out = Vec::new();
    for (ell, e) in factor_integer(norm)? {
        let ell = u64::try_from(ell).map_err(|_| Error::InvalidArgument("prime factor exceeds 64 bits".into()))?;
        if ell == 2 || ell == ctx.q {
            return Err(Error::Ramified(ell));
        }
        let primes = primes_above(ctx, ell)?;
        let containing: Vec<&PrimeIdeal> = primes.iter().filter(|p| contained_in(p)).collect();
        let f_sum: usize = containing.iter().map(|p| p.f as usize).sum();
        if f_sum == e {
            // every containing prime occurs exactly once
            out.extend(containing.into_iter().map(|p| (p.clone(), 1)));
        } else {
            for pr in containing {
                let k = exact_valuation(pr);
                out.push((pr.clone(), k));
            }
        }
    }
    let check: u128 = out.iter().map(|(p, k)| p.norm().pow(*k)).product();
    debug_assert_eq!(BigInt::from(check), norm.abs());
    Ok(out)
}

/// Factorization of `(a)` for `a` with norm prime to `2q`.
pub fn factor_principal(ctx: &QContext, a: &MqElement) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let n = ctx.norm_to_q(a);
    if n.is_even() {
        return Err(Error::Ramified(2));
    }
    if (&n % BigInt::from(ctx.q)).is_zero() {
        return Err(Error::Ramified(ctx.q));
    }
    factor_with(ctx, &n, |p| p.contains(a), |p| valuation(ctx, a, p).expect("nonzero"))
}

/// Factorization of an arbitrary ideal prime to `2q`.
pub fn factor_ideal(ctx: &QContext, ideal: &IdealLattice) -> Result<Factorization> {
    let n = ideal.norm();
    if n.is_even() {
        return Err(Error::Ramified(2));
    }
    if (&n % BigInt::from(ctx.q)).is_zero() {
        return Err(Error::Ramified(ctx.q));
    }
    factor_with(ctx, &n, |p| p.lattice.contains_ideal(ideal), |p| ideal_valuation(ctx, ideal, p))
}

/// A generator `w` of a prime, `(w) = P` and `N(w) = N(P)`.
pub fn find_generator(ctx: &QContext, prime: &PrimeIdeal) -> Result<MqElement> {
    generator_candidates(ctx, prime)?.into_iter().next().ok_or(Error::GeneratorNotFound(prime.p))
}

/// All generators met during the short-vector search, in search order without duplicates.
///
/// The lattice `P` is embedded in `R^4` by the two complex embeddings with weights
/// `lambda` and `1/lambda`. Elements of `P` have weighted length at least `2 sqrt(N(x))`
/// and non-generators have `N(x) >= 2 N(P)`, so a radius below `2 sqrt(2 N(P))` only admits generators; sweeping `lambda` over a
/// geometric grid fine enough relative to the fundamental unit guarantees some
/// generator falls inside. Every candidate is confirmed with exact integer arithmetic.
pub fn generator_candidates(ctx: &QContext, prime: &PrimeIdeal) -> Result<Vec<MqElement>> {
    let p = prime.p;
    let norm = prime.norm();
    let basis: Vec<[i128; 4]> = prime
        .lattice
        .hnf
        .iter()
        .map(|r| r.clone().map(|c| c.to_i128().expect("HNF entries bounded by N(P)")))
        .collect();
    let eta = {
        let (a1, b1) = &ctx.real_unit;
        let v = a1.to_f64().unwrap() + b1.to_f64().unwrap() * (ctx.q as f64).sqrt();
        v.max(1.0 / v)
    };
    let steps = (eta.ln() / 4f64.ln()).ceil().max(1.0) as usize;
    let target = BigInt::from(norm);
    let mut found: Vec<MqElement> = Vec::new();
    let mut radius = 2.6 * (norm as f64).sqrt();
    for _attempt in 0..4 {
        for j in 0..steps {
            let lambda = eta.powf(j as f64 / steps as f64);
            let emb = lattice::Embedding::new(ctx.q, lambda);
            let reduced = lattice::lll(&basis, &emb);
            for v in lattice::enumerate_short(&reduced, &emb, radius) {
                let x = MqElement::from_i128(v);
                if ctx.norm_to_q(&x) == target && prime.contains(&x) && !found.contains(&x) {
                    found.push(x);
                }
            }
        }
        if !found.is_empty() {
            return Ok(found);
        }
        radius *= 2.0;
    }
    Err(Error::GeneratorNotFound(p))
}

/// Residue image of `i` when it lies in `F_p`.
pub fn image_of_i(prime: &PrimeIdeal) -> Option<u64> {
    (prime.s_i.b == 0).then_some(prime.s_i.a)
}

/// `p` splits completely in `M_q`.
pub fn is_split_completely(ctx: &QContext, p: u64) -> bool {
    p % 2 == 1 && !p.is_multiple_of(ctx.q) && legendre(p - 1, p) == 1 && legendre(ctx.q % p, p) == 1
}
