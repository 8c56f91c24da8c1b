//! Integer primality and factorization at desk scale: a small sieve for
//! trial division, Miller-Rabin, and Brent's variant of Pollard rho for the
//! stragglers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::OnceLock;

const SIEVE_LIMIT: u64 = 100_000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut is_comp = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !is_comp[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    is_comp[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Miller-Rabin. Deterministic for inputs below 3.3e24 via the standard
/// 12-base set; larger inputs additionally get a fixed batch of pseudo-random
/// bases, which at this crate's scale is decisive.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % bp).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut bases: Vec<BigUint> = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .map(|&b| BigUint::from(b))
        .collect();
    if n.bits() > 82 {
        let mut x = 0x2545f4914f6cdd1du64;
        for _ in 0..20 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            bases.push(BigUint::from(x % 0xffff_ffff + 2));
        }
    }
    'base: for a in bases {
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    // n is odd, composite, and has no factor below the sieve limit
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let mut c = BigUint::from(1u32);
    loop {
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = one.clone();
        let mut saved = two.clone();
        let m = 64u32;
        let mut r = 1u32;
        while d.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0;
            while k < r && d.is_one() {
                saved = y.clone();
                let mut q = one.clone();
                for _ in 0..m.min(r - k) {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    if !diff.is_zero() {
                        q = (q * diff) % n;
                    }
                }
                d = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if d == *n {
            // backtrack
            d = one.clone();
            let mut ys = saved;
            while d.is_one() {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                if diff.is_zero() {
                    break;
                }
                d = diff.gcd(n);
            }
        }
        if !d.is_one() && d != *n {
            return d;
        }
        c += 1u32;
    }
}

/// Prime factorization of a positive integer.
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, u32> {
    assert!(!n.is_zero(), "factor of zero");
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        if rest.is_one() {
            return out;
        }
        let bp = BigUint::from(p);
        while (&rest % &bp).is_zero() {
            *out.entry(bp.clone()).or_insert(0) += 1;
            rest /= &bp;
        }
        if &bp * &bp > rest {
            break;
        }
    }
    if rest.is_one() {
        return out;
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

/// Divides out every factor of `p` from `n`, returning (multiplicity, rest).
pub fn strip_factor(n: &BigUint, p: &BigUint) -> (u32, BigUint) {
    assert!(p > &BigUint::one());
    let mut e = 0;
    let mut rest = n.clone();
    if rest.is_zero() {
        return (0, rest);
    }
    while (&rest % p).is_zero() {
        rest /= p;
        e += 1;
    }
    (e, rest)
}
