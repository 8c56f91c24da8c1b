//! Dense polynomials over the prime field F_p, used as the integers of
//! F_p(t) and as the carrier for residue-field extensions.
//!
//! Coefficients are stored in ascending degree order, reduced mod p, with no
//! trailing zeros; the empty vector is the zero polynomial.

use crate::ring::Ring;
use num_bigint::BigUint;
use num_traits::One;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    c: Vec<u64>,
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on i128
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (p as i128, (a % p) as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    assert!(r == 1, "not invertible mod p");
    (t.rem_euclid(p as i128)) as u64
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        FpPoly::new(p, coeffs.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(p, 1)
    }

    pub fn constant(p: u64, a: u64) -> Self {
        FpPoly::new(p, vec![a])
    }

    /// The generator t.
    pub fn gen(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().expect("leading coefficient of zero")
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc() == 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.c.len().max(rhs.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push((self.coeff(i) + rhs.coeff(i)) % self.p);
        }
        FpPoly::new(self.p, out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.c.len().max(rhs.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push((self.coeff(i) + self.p - rhs.coeff(i)) % self.p);
        }
        FpPoly::new(self.p, out)
    }

    pub fn neg(&self) -> Self {
        FpPoly::new(self.p, self.c.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                let t = (a as u128 * b as u128 + out[i + j] as u128) % self.p as u128;
                out[i + j] = t as u64;
            }
        }
        FpPoly::new(self.p, out)
    }

    pub fn scale(&self, a: u64) -> Self {
        let a = a % self.p;
        FpPoly::new(
            self.p,
            self.c
                .iter()
                .map(|&x| ((x as u128 * a as u128) % self.p as u128) as u64)
                .collect(),
        )
    }

    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        debug_assert_eq!(self.p, rhs.p);
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.c.len() < rhs.c.len() {
            return (FpPoly::zero(self.p), self.clone());
        }
        let p = self.p;
        let lcinv = mod_inv(rhs.lc(), p);
        let mut rem = self.c.clone();
        let dq = self.c.len() - rhs.c.len();
        let mut quot = vec![0u64; dq + 1];
        for k in (0..=dq).rev() {
            let top = rem[k + rhs.c.len() - 1];
            if top == 0 {
                continue;
            }
            let q = (top as u128 * lcinv as u128 % p as u128) as u64;
            quot[k] = q;
            for (j, &b) in rhs.c.iter().enumerate() {
                let sub = (q as u128 * b as u128) % p as u128;
                rem[k + j] = ((rem[k + j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        self.scale(mod_inv(self.lc(), self.p))
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        FpPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| ((a as u128 * (i as u128 % self.p as u128)) % self.p as u128) as u64)
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        let x = x as u128 % p;
        let mut acc: u128 = 0;
        for &a in self.c.iter().rev() {
            acc = (acc * x + a as u128) % p;
        }
        acc as u64
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = FpPoly::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let base = self.div_rem(m).1;
        if base.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut acc = FpPoly::one(self.p);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).div_rem(m).1;
            if e.bit(i) {
                acc = acc.mul(&base).div_rem(m).1;
            }
        }
        acc
    }

    /// Coefficient-wise p-th root; the identity on F_p coefficients, so this
    /// only reindexes exponents. Returns `None` if some exponent is not a
    /// multiple of p.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.p as usize;
        if self
            .c
            .iter()
            .enumerate()
            .any(|(i, &a)| i % p != 0 && a != 0)
        {
            return None;
        }
        Some(FpPoly::new(self.p, self.c.iter().step_by(p).copied().collect()))
    }

    /// Squarefree part (the radical), monic. Complete over F_p since the
    /// field is perfect.
    pub fn squarefree_part(&self) -> Self {
        assert!(!self.is_zero());
        if self.is_constant() {
            return FpPoly::one(self.p);
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.pth_root().expect("perfect field").squarefree_part();
        }
        let g = self.gcd(&d);
        let w = self.div_rem(&g).0;
        if g.is_constant() {
            return w.monic();
        }
        let mut y = g;
        loop {
            let c = y.gcd(&w);
            if c.is_constant() {
                break;
            }
            y = y.div_rem(&c).0;
        }
        if y.is_constant() {
            return w.monic();
        }
        w.mul(&y.squarefree_part()).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero()
            && (self.is_constant() || self.squarefree_part().degree() == self.degree())
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree at most deg/2.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(d) => {
                for k in 1..=d / 2 {
                    let mut divisor = vec![0u64; k + 1];
                    divisor[k] = 1;
                    if self.any_monic_divisor(&mut divisor, 0) {
                        return false;
                    }
                }
                true
            }
        }
    }

    fn any_monic_divisor(&self, divisor: &mut Vec<u64>, pos: usize) -> bool {
        if pos + 1 == divisor.len() {
            let cand = FpPoly::new(self.p, divisor.clone());
            return cand.divides(self);
        }
        for a in 0..self.p {
            divisor[pos] = a;
            if self.any_monic_divisor(divisor, pos + 1) {
                return true;
            }
        }
        divisor[pos] = 0;
        false
    }

    /// Full factorization into monic irreducibles with multiplicities,
    /// together with the unit (leading coefficient). Factors are returned in
    /// canonical order.
    pub fn factor(&self) -> (u64, Vec<(FpPoly, u32)>) {
        assert!(!self.is_zero());
        let unit = self.lc();
        let mut f = self.monic();
        let mut out: Vec<(FpPoly, u32)> = Vec::new();
        while f.degree().map_or(false, |d| d >= 1) {
            let rad = f.squarefree_part();
            for g in rad.factor_squarefree() {
                let mut e = 0u32;
                loop {
                    let (q, r) = f.div_rem(&g);
                    if !r.is_zero() {
                        break;
                    }
                    f = q;
                    e += 1;
                }
                debug_assert!(e >= 1);
                out.push((g, e));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        (unit, out)
    }

    /// Factors a monic squarefree polynomial by distinct-degree splitting
    /// followed by Cantor-Zassenhaus (trial division for p = 2).
    fn factor_squarefree(&self) -> Vec<FpPoly> {
        let mut out = Vec::new();
        let p = self.p;
        if self.is_constant() {
            return out;
        }
        if p == 2 {
            // desk-scale trial division in ascending (degree, lex) order
            let mut f = self.clone();
            let mut k = 1usize;
            while f.degree().map_or(false, |d| d >= 1) {
                if 2 * k > f.degree().unwrap() {
                    out.push(f);
                    break;
                }
                for mask in 0..(1u64 << k) {
                    let mut coeffs: Vec<u64> = (0..k).map(|i| (mask >> i) & 1).collect();
                    coeffs.push(1);
                    let cand = FpPoly::new(p, coeffs);
                    if cand.divides(&f) && cand.is_irreducible() {
                        f = f.div_rem(&cand).0;
                        out.push(cand);
                    }
                }
                k += 1;
            }
            return out;
        }
        // distinct-degree
        let x = FpPoly::gen(p);
        let mut f = self.clone();
        let mut h = x.clone();
        let mut d = 0usize;
        while f.degree().map_or(false, |df| df >= 1) {
            d += 1;
            if 2 * d > f.degree().unwrap() {
                out.push(f.clone());
                break;
            }
            h = h.pow_mod(&BigUint::from(p), &f);
            let g = h.sub(&x).gcd(&f);
            if g.degree().map_or(false, |dg| dg >= 1) {
                Self::equal_degree_split(&g, d, &mut out);
                f = f.div_rem(&g).0;
                h = h.div_rem(&f).1;
            }
        }
        out
    }

    /// Cantor-Zassenhaus equal-degree splitting, odd p. Uses a deterministic
    /// sequence of split candidates so factorizations are reproducible.
    fn equal_degree_split(g: &FpPoly, d: usize, out: &mut Vec<FpPoly>) {
        let p = g.p;
        if g.degree() == Some(d) {
            out.push(g.monic());
            return;
        }
        let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
        let mut seed = 0x9e3779b97f4a7c15u64 ^ (d as u64);
        loop {
            // pseudo-random polynomial of degree < deg g
            let deg = g.degree().unwrap();
            let mut coeffs = Vec::with_capacity(deg);
            for _ in 0..deg {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                coeffs.push((seed >> 16) % p);
            }
            let r = FpPoly::new(p, coeffs);
            if r.is_zero() {
                continue;
            }
            let s = r.pow_mod(&e, g).sub(&FpPoly::one(p));
            let h = s.gcd(g);
            if let Some(dh) = h.degree() {
                if dh >= 1 && dh < g.degree().unwrap() {
                    Self::equal_degree_split(&h, d, out);
                    Self::equal_degree_split(&g.div_rem(&h).0, d, out);
                    return;
                }
            }
        }
    }

    /// Extended Euclid: returns (g, u, v) with u*self + v*rhs = g, g monic.
    pub fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
            (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = mod_inv(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse modulo `m`, when self is coprime to m.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, u, _) = self.ext_gcd(m);
        if g.is_one() {
            Some(u.div_rem(m).1)
        } else {
            None
        }
    }

    /// Fast irreducibility test (Rabin): x^{p^k} = x mod f and
    /// gcd(x^{p^{k/q}} - x, f) = 1 for every prime q dividing k.
    pub fn is_irreducible_fast(&self) -> bool {
        let Some(k) = self.degree() else { return false };
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let p = BigUint::from(self.p);
        let x = FpPoly::gen(self.p);
        let xq = x.pow_mod(&p.pow(k as u32), self);
        if xq != x.div_rem(self).1 {
            return false;
        }
        let mut primes = Vec::new();
        let mut n = k;
        let mut q = 2;
        while q * q <= n {
            if n % q == 0 {
                primes.push(q);
                while n % q == 0 {
                    n /= q;
                }
            }
            q += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        for q in primes {
            let xe = x.pow_mod(&p.pow((k / q) as u32), self);
            if !xe.sub(&x).gcd(self).is_one() {
                return false;
            }
        }
        true
    }

    /// Deterministically finds a monic irreducible of degree k over F_p.
    pub fn find_irreducible(p: u64, k: usize) -> FpPoly {
        assert!(k >= 1);
        if k == 1 {
            return FpPoly::gen(p);
        }
        let mut seed = 0x853c49e6748fea9bu64 ^ ((p as u64) << 8) ^ k as u64;
        loop {
            let mut coeffs = Vec::with_capacity(k + 1);
            for _ in 0..k {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                coeffs.push((seed >> 16) % p);
            }
            coeffs.push(1);
            let f = FpPoly::new(p, coeffs);
            if f.degree() == Some(k) && f.is_irreducible_fast() {
                return f;
            }
        }
    }
}

impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        // degree first, then coefficients from the top down
        let da = self.c.len();
        let db = other.c.len();
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..da).rev() {
            match self.c[i].cmp(&other.c[i]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                1 => {
                    if a == 1 {
                        write!(f, "t")?
                    } else {
                        write!(f, "{a}*t")?
                    }
                }
                _ => {
                    if a == 1 {
                        write!(f, "t^{i}")?
                    } else {
                        write!(f, "{a}*t^{i}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl Ring for FpPoly {
    fn add(&self, rhs: &Self) -> Self {
        FpPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        FpPoly::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        FpPoly::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        FpPoly::mul(self, rhs)
    }
    fn is_zero(&self) -> bool {
        FpPoly::is_zero(self)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_signed(p, c)
    }

    #[test]
    fn arithmetic_and_gcd() {
        let a = fp(5, &[1, 0, 1]); // 1 + t^2
        let b = fp(5, &[1, 1]); // 1 + t
        let prod = a.mul(&b);
        assert_eq!(prod.div_rem(&b).0, a);
        assert!(prod.div_rem(&b).1.is_zero());
        assert_eq!(prod.gcd(&b), b.monic());
        assert_eq!(fp(5, &[2]).eval(3), 2);
        assert_eq!(fp(5, &[0, 1, 1]).eval(3), (3 + 9) % 5);
    }

    #[test]
    fn irreducibility_trial_division() {
        assert!(fp(3, &[1, 0, 1]).is_irreducible()); // t^2+1 over F_3
        assert!(!fp(5, &[1, 0, 1]).is_irreducible()); // t^2+1 = (t+2)(t+3) over F_5
        assert!(fp(2, &[1, 1, 1]).is_irreducible()); // t^2+t+1 over F_2
        assert!(!fp(7, &[0, 1, 1]).is_irreducible()); // t(t+1)
        assert!(fp(7, &[3]).is_irreducible() == false);
    }

    #[test]
    fn factor_recovers_product() {
        let f = fp(3, &[1, 0, 1]).mul(&fp(3, &[2, 1])).mul(&fp(3, &[2, 1])).scale(2);
        let (unit, factors) = f.factor();
        assert_eq!(unit, 2);
        let mut rebuilt = FpPoly::constant(3, unit);
        for (g, e) in &factors {
            assert!(g.is_monic() && g.is_irreducible());
            for _ in 0..*e {
                rebuilt = rebuilt.mul(g);
            }
        }
        assert_eq!(rebuilt, f);
        // multiplicities: (t+2)^2 appears
        assert!(factors.iter().any(|(g, e)| *e == 2 && g.degree() == Some(1)));
    }

    #[test]
    fn squarefree_part_handles_pth_powers() {
        // t^3 over F_3 -> t
        assert_eq!(fp(3, &[0, 0, 0, 1]).squarefree_part(), fp(3, &[0, 1]));
        // (t^2+1)^3 * (t+1) over F_3
        let f = fp(3, &[1, 0, 1]).pow(3).mul(&fp(3, &[1, 1]));
        let s = f.squarefree_part();
        assert_eq!(s, fp(3, &[1, 0, 1]).mul(&fp(3, &[1, 1])).monic());
    }

    #[test]
    fn fast_irreducibility_agrees_with_trial_division() {
        for p in [3u64, 5, 7] {
            for c0 in 0..p {
                for c1 in 0..p {
                    for c2 in 0..p {
                        let f = FpPoly::new(p, vec![c0, c1, c2, 1]);
                        assert_eq!(f.is_irreducible(), f.is_irreducible_fast(), "{f} mod {p}");
                    }
                }
            }
        }
        let f = FpPoly::find_irreducible(5, 12);
        assert_eq!(f.degree(), Some(12));
        assert!(f.is_irreducible_fast());
    }
}
