//! Naive polynomial arithmetic used to recompute expected values by direct
//! expansion. Nothing here calls into the library's series code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use equiloc::series::{Rational, Series};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Mono = [u32; 3];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(pub BTreeMap<Mono, Rational>);

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn deg(m: &Mono) -> u32 {
    m[0] + m[1] + m[2]
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.push([0, 0, 0], c);
        p
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn var(v: usize) -> Self {
        let mut m = [0; 3];
        m[v] = 1;
        Poly::term(r(1), m)
    }

    pub fn term(c: Rational, m: Mono) -> Self {
        let mut p = Poly::zero();
        p.push(m, c);
        p
    }

    pub fn push(&mut self, m: Mono, c: Rational) {
        let e = self.0.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn from_series(s: &Series) -> Self {
        let mut p = Poly::zero();
        for (m, c) in s.terms() {
            p.push(*m, c.clone());
        }
        p
    }

    pub fn to_series(&self) -> Series {
        Series::from_terms(self.0.iter().map(|(m, c)| (*m, c.clone())), equiloc::series::Precision::Exact)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> Rational {
        self.0.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn order(&self) -> Option<u32> {
        self.0.keys().map(deg).min()
    }

    pub fn truncate(&self, cap: u32) -> Poly {
        Poly(self.0.iter().filter(|(m, _)| deg(m) < cap).map(|(m, c)| (*m, c.clone())).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &o.0 {
            p.push(*m, c.clone());
        }
        p
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut p = Poly::zero();
        for (m, a) in &self.0 {
            p.push(*m, a * c);
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&r(-1)))
    }

    /// Product keeping only terms of degree below `cap`.
    pub fn mul_cap(&self, o: &Poly, cap: u32) -> Poly {
        let mut p = Poly::zero();
        for (ma, a) in &self.0 {
            for (mb, b) in &o.0 {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                if deg(&m) < cap {
                    p.push(m, a * b);
                }
            }
        }
        p
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        self.mul_cap(o, u32::MAX)
    }

    pub fn pow_cap(&self, e: u32, cap: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul_cap(self, cap))
    }

    pub fn pow(&self, e: u32) -> Poly {
        self.pow_cap(e, u32::MAX)
    }

    /// `self(images)` with every intermediate truncated below `cap`.
    pub fn subst(&self, images: &[Poly; 3], cap: u32) -> Poly {
        let mut powers: [Vec<Poly>; 3] = Default::default();
        for v in 0..3 {
            let top = self.0.keys().map(|m| m[v]).max().unwrap_or(0);
            powers[v].push(Poly::one());
            for k in 1..=top as usize {
                let next = powers[v][k - 1].mul_cap(&images[v], cap);
                powers[v].push(next);
            }
        }
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            let t = powers[0][m[0] as usize]
                .mul_cap(&powers[1][m[1] as usize], cap)
                .mul_cap(&powers[2][m[2] as usize], cap)
                .scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Exact division by `v^e`, if every term allows it.
    pub fn div_var(&self, v: usize, e: u32) -> Option<Poly> {
        let mut p = Poly::zero();
        for (m, c) in &self.0 {
            if m[v] < e {
                return None;
            }
            let mut m2 = *m;
            m2[v] -= e;
            p.push(m2, c.clone());
        }
        Some(p)
    }

    /// Coefficient of `v^k`, as a polynomial in the other variables.
    pub fn coeff_in(&self, v: usize, k: u32) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.0 {
            if m[v] == k {
                let mut m2 = *m;
                m2[v] = 0;
                p.push(m2, c.clone());
            }
        }
        p
    }

    pub fn min_exponent(&self, v: usize) -> Option<u32> {
        self.0.keys().map(|m| m[v]).min()
    }

    pub fn agrees_below(&self, o: &Poly, cap: u32) -> bool {
        self.truncate(cap) == o.truncate(cap)
    }
}

/// Chart images of a quadratic transform at a direction whose coordinate
/// `e` is 1: `e -> e`, `v -> e (v + d_v)`.
pub fn quadratic_chart(d: [Rational; 3], e: usize) -> [Poly; 3] {
    std::array::from_fn(|v| {
        if v == e {
            Poly::var(e)
        } else {
            Poly::var(e).mul(&Poly::var(v).add(&Poly::constant(d[v].clone())))
        }
    })
}

/// `(X, Y, X (Z + alpha))`.
pub fn monoidal_chart(alpha: Rational) -> [Poly; 3] {
    [Poly::var(0), Poly::var(1), Poly::var(0).mul(&Poly::var(2).add(&Poly::constant(alpha)))]
}

/// Strict transform of `f` of order `n` under a chart whose exceptional
/// variable is `e`.
pub fn strict_transform(f: &Poly, chart: &[Poly; 3], e: usize, n: u32, cap: u32) -> Option<Poly> {
    f.subst(chart, cap + n).div_var(e, n).map(|p| p.truncate(cap))
}

/// `h` with `g = c (V - h)` and `h` free of `V`, if `g` has that shape.
pub fn solve_for(g: &Poly, v: usize) -> Option<Poly> {
    let mut lin = [0; 3];
    lin[v] = 1;
    let c = g.coeff(lin);
    if c.is_zero() || g.0.keys().any(|m| m[v] > 1 || (m[v] == 1 && deg(m) > 1)) {
        return None;
    }
    Some(g.coeff_in(v, 0).scale(&(-Rational::one() / c)))
}

/// Curve `V - h(W)` written as the variable `V` and `h`, trying `Y` first.
pub fn solve_linear(g: &Poly) -> Option<(usize, Poly)> {
    [1, 0].into_iter().find_map(|v| solve_for(g, v).map(|h| (v, h)))
}

/// `G^{n-k} | a_k` for the curve `(Z, V - h(W))`, decided below `cap` by
/// moving the curve to `V = 0` and reading off `V`-exponents.
pub fn equimultiple_along(coeffs: &[Poly], n: u32, v: usize, h: &Poly, cap: u32) -> bool {
    let mut images = [Poly::var(0), Poly::var(1), Poly::var(2)];
    images[v] = Poly::var(v).add(h);
    coeffs.iter().enumerate().all(|(k, a)| {
        let moved = a.subst(&images, cap).truncate(cap);
        moved.min_exponent(v).map_or(true, |e| e >= n - k as u32)
    })
}

/// `a_0 .. a_{n-2}` of a surface, as polynomials.
pub fn coefficients(s: &equiloc::surface::WeierstrassSurface) -> Vec<Poly> {
    s.coeffs().iter().map(Poly::from_series).collect()
}

pub fn small_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let d = rng.gen_range(1..=3);
    q(rng.gen_range(-bound * d..=bound * d), d)
}

pub fn nonzero_int(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return r(c);
        }
    }
}
