//! Class numbers of imaginary quadratic fields by counting reduced binary
//! quadratic forms. This is the reference oracle for the 2-part of `h(-qp)`
//! and shares no code with the symbol machinery.

use serde::Serialize;

use crate::error::{Error, Result};

/// `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadraticForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        if a <= 0 || b.abs() > a || a > c {
            return false;
        }
        !((b.abs() == a || a == c) && b < 0)
    }

    /// Ambiguous forms are those equivalent to their inverse; among reduced forms these are
    /// `b = 0`, `b = a` or `a = c`.
    pub fn is_ambiguous(&self) -> bool {
        self.b == 0 || self.b == self.a || self.a == self.c
    }
}

fn is_squarefree(mut n: u64) -> bool {
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// Accepts negative fundamental discriminants only.
pub fn check_fundamental(d: i64) -> Result<()> {
    if d >= 0 {
        return Err(Error::InvalidArgument(format!("discriminant {d} is not negative")));
    }
    let n = d.unsigned_abs();
    let ok = match d.rem_euclid(16) {
        r if r % 4 == 1 => is_squarefree(n),
        8 | 12 => is_squarefree(n / 4),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{d} is not a fundamental discriminant")))
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Calls `f` on every reduced form of discriminant `d`, walking `b >= 0` only and
/// emitting `(a, -b, c)` alongside `(a, b, c)` off the boundary.
fn for_each_reduced(d: i64, mut f: impl FnMut(QuadraticForm)) {
    let n = d.unsigned_abs();
    let b_max = isqrt(n / 3);
    let mut b = n % 2;
    while b <= b_max {
        let ac = (b * b + n) / 4;
        let a_max = isqrt(ac);
        for a in b.max(1)..=a_max {
            if !ac.is_multiple_of(a) {
                continue;
            }
            let form = QuadraticForm::new(a as i64, b as i64, (ac / a) as i64);
            f(form);
            if !(b == 0 || a == b || form.a == form.c) {
                f(QuadraticForm::new(form.a, -form.b, form.c));
            }
        }
        b += 2;
    }
}

/// All reduced forms of discriminant `d`, ordered by `(|b|, a)` then sign of `b`.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadraticForm>> {
    check_fundamental(d)?;
    let mut out = Vec::new();
    for_each_reduced(d, |f| out.push(f));
    Ok(out)
}

/// `h(d)` for a negative fundamental discriminant.
pub fn class_number(d: i64) -> Result<u64> {
    check_fundamental(d)?;
    let mut h = 0;
    for_each_reduced(d, |_| h += 1);
    Ok(h)
}

/// Same count, but every `b` in `[-a, a]` is tried and the reduction test decides the
/// boundary cases. Slower; kept as a cross-check of the boundary convention.
pub fn class_number_symmetric(d: i64) -> Result<u64> {
    check_fundamental(d)?;
    let n = d.unsigned_abs() as i64;
    let b_max = isqrt(n as u64 / 3) as i64;
    let mut h = 0;
    for b in -b_max..=b_max {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let ac = (b * b + n) / 4;
        let mut a = b.abs().max(1);
        while a * a <= ac {
            if ac % a == 0 && QuadraticForm::new(a, b, ac / a).is_reduced() {
                h += 1;
            }
            a += 1;
        }
    }
    Ok(h)
}

/// Number of reduced ambiguous forms, i.e. `|Cl(d)[2]|`.
pub fn ambiguous_count(d: i64) -> Result<u64> {
    check_fundamental(d)?;
    let mut k = 0;
    for_each_reduced(d, |f| {
        if f.is_ambiguous() {
            k += 1;
        }
    });
    Ok(k)
}

/// The 2-part of `h(-qp)` truncated at 16.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoPartProfile {
    pub h: u64,
    /// Largest `k <= 4` with `2^k | h`.
    pub k_max: u32,
}

impl TwoPartProfile {
    pub fn divisible_by(&self, k: u32) -> bool {
        self.k_max >= k
    }
}

pub fn two_part_profile(q: u64, p: u64) -> Result<TwoPartProfile> {
    if p % 4 != 1 || p == q {
        return Err(Error::InvalidArgument(format!("need p = 1 mod 4 and p != q, got p={p}, q={q}")));
    }
    let d = -((q * p) as i64);
    let h = class_number(d)?;
    Ok(TwoPartProfile { h, k_max: h.trailing_zeros().min(4) })
}
