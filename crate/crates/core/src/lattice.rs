//! LLL reduction and Fincke-Pohst enumeration for rank-4 sublattices of `O_{M_q}`
//! under a weighted Minkowski embedding. Floating point only orders candidates;
//! callers verify everything exactly.

/// `x -> (sqrt(l) Re phi1(x), sqrt(l) Im phi1(x), Re phi2(x)/sqrt(l), Im phi2(x)/sqrt(l))`
/// where `phi1` sends `sqrt(q)` to the positive root and `phi2 = phi1 o tau`.
#[derive(Clone, Copy, Debug)]
pub struct Embedding {
    half_sqrt_q: f64,
    w1: f64,
    w2: f64,
}

impl Embedding {
    pub fn new(q: u64, lambda: f64) -> Self {
        Embedding { half_sqrt_q: (q as f64).sqrt() / 2.0, w1: lambda.sqrt(), w2: 1.0 / lambda.sqrt() }
    }

    pub fn apply(&self, c: &[i128; 4]) -> [f64; 4] {
        let [c0, c1, c2, c3] = c.map(|x| x as f64);
        let h = self.half_sqrt_q;
        [
            self.w1 * (c0 + 0.5 * c2 - h * c3),
            self.w1 * (c1 + h * c2 + 0.5 * c3),
            self.w2 * (c0 + 0.5 * c2 + h * c3),
            self.w2 * (c1 - h * c2 + 0.5 * c3),
        ]
    }

    pub fn length_sq(&self, c: &[i128; 4]) -> f64 {
        self.apply(c).iter().map(|x| x * x).sum()
    }
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct GramSchmidt {
    mu: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

fn gram_schmidt(basis: &[[i128; 4]], emb: &Embedding) -> GramSchmidt {
    let n = basis.len();
    let real: Vec<[f64; 4]> = basis.iter().map(|b| emb.apply(b)).collect();
    let mut star: Vec<[f64; 4]> = Vec::with_capacity(n);
    let mut mu = vec![vec![0.0; n]; n];
    let mut norms = vec![0.0; n];
    for i in 0..n {
        let mut v = real[i];
        for j in 0..i {
            mu[i][j] = dot(&real[i], &star[j]) / norms[j];
            for k in 0..4 {
                v[k] -= mu[i][j] * star[j][k];
            }
        }
        norms[i] = dot(&v, &v);
        star.push(v);
    }
    GramSchmidt { mu, norms }
}

/// LLL with `delta = 0.99`. The basis is kept in exact integer coordinates and the
/// Gram-Schmidt data is recomputed from them, so rounding never drifts the lattice.
pub fn lll(basis: &[[i128; 4]], emb: &Embedding) -> Vec<[i128; 4]> {
    let mut b = basis.to_vec();
    let n = b.len();
    let mut k = 1;
    let mut guard = 0;
    while k < n && guard < 10_000 {
        guard += 1;
        for j in (0..k).rev() {
            let gs = gram_schmidt(&b, emb);
            let r = gs.mu[k][j].round();
            if r != 0.0 {
                let r = r as i128;
                let bj = b[j];
                for (x, y) in b[k].iter_mut().zip(bj) {
                    *x -= r * y;
                }
            }
        }
        let gs = gram_schmidt(&b, emb);
        let mu = gs.mu[k][k - 1];
        if gs.norms[k] >= (0.99 - mu * mu) * gs.norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// All nonzero lattice vectors (as integer coordinates) with weighted squared length at most `bound`.
pub fn enumerate_short(basis: &[[i128; 4]], emb: &Embedding, bound: f64) -> Vec<[i128; 4]> {
    let n = basis.len();
    let gs = gram_schmidt(basis, emb);
    let mut out: Vec<(f64, [i128; 4])> = Vec::new();
    let mut x = vec![0i64; n];
    let slack = bound * (1.0 + 1e-9);
    enum_level(n - 1, 0.0, &gs, &mut x, slack, &mut |coeffs| {
        if coeffs.iter().all(|&c| c == 0) {
            return;
        }
        let mut v = [0i128; 4];
        for (c, row) in coeffs.iter().zip(basis) {
            for k in 0..4 {
                v[k] += *c as i128 * row[k];
            }
        }
        let len = emb.length_sq(&v);
        if len <= slack {
            out.push((len, v));
        }
    });
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    out.into_iter().map(|(_, v)| v).collect()
}

fn enum_level(level: usize, partial: f64, gs: &GramSchmidt, x: &mut [i64], bound: f64, sink: &mut impl FnMut(&[i64])) {
    let n = x.len();
    let center: f64 = -(level + 1..n).map(|j| x[j] as f64 * gs.mu[j][level]).sum::<f64>();
    let room = (bound - partial) / gs.norms[level];
    if room < 0.0 {
        return;
    }
    let r = room.sqrt();
    let lo = (center - r).ceil() as i64;
    let hi = (center + r).floor() as i64;
    for v in lo..=hi {
        x[level] = v;
        let d = v as f64 - center;
        let next = partial + d * d * gs.norms[level];
        if next > bound {
            continue;
        }
        if level == 0 {
            sink(x);
        } else {
            enum_level(level - 1, next, gs, x, bound, sink);
        }
    }
    x[level] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_finds_units_of_unit_lattice() {
        let basis = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        let emb = Embedding::new(3, 1.0);
        let red = lll(&basis, &emb);
        // Roots of unity have weighted length 2 at lambda = 1; q = 3 has twelve of them.
        let short = enumerate_short(&red, &emb, 2.0);
        assert_eq!(short.len(), 12);
    }

    #[test]
    fn lll_preserves_lattice_volume() {
        let basis = [[13, 0, 0, 0], [8, 1, 0, 0], [9, 0, 1, 0], [7, 0, 0, 1]];
        let emb = Embedding::new(3, 1.0);
        let red = lll(&basis, &emb);
        let vol = |b: &[[i128; 4]]| gram_schmidt(b, &emb).norms.iter().product::<f64>();
        assert!((vol(&basis) - vol(&red)).abs() / vol(&basis) < 1e-9);
    }
}
