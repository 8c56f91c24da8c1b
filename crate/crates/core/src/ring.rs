//! Ring and field abstractions shared by the exact kernels, together with the
//! fraction-free linear algebra (Bareiss elimination, Sylvester resultants)
//! and a generic dense univariate polynomial.
//!
//! Elements carry their own context (a modulus, a characteristic), so the
//! traits expose instance methods instead of associated constants.

use std::fmt::Debug;

/// Operations of a commutative ring in which the divisions produced by
/// fraction-free elimination are exact.
pub trait Ring: Clone + PartialEq + Debug {
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// Division known by the caller to be exact. Panics otherwise.
    fn exact_div(&self, rhs: &Self) -> Self;
}

/// Field operations plus the characteristic-p hooks needed by squarefree
/// decomposition.
pub trait Coeff: Ring {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn inv(&self) -> Self;
    /// Small positive characteristic, if any. `None` means characteristic
    /// zero or large enough that no p-th-power collapse can occur at the
    /// degrees in play.
    fn char_hint(&self) -> Option<u64>;
    /// p-th root in the field, when one exists.
    fn pth_root(&self) -> Option<Self>;
    /// Multiplication by a small natural number (for derivatives).
    fn mul_usize(&self, n: usize) -> Self;
}

/// Determinant by Bareiss fraction-free elimination. Returns the exact
/// determinant of a square matrix over any `Ring`.
pub fn det_bareiss<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix required");
    let mut negate = false;
    let mut prev: Option<R> = None;
    for k in 0..n - 1 {
        let pivot = (k..n).find(|&i| !m[i][k].is_zero());
        let Some(pr) = pivot else {
            return m[0][0].sub(&m[0][0]);
        };
        if pr != k {
            m.swap(k, pr);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = match &prev {
                    None => t,
                    Some(p) => t.exact_div(p),
                };
            }
        }
        prev = Some(m[k][k].clone());
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Resultant of two coefficient sequences given in descending order
/// (index 0 holds the top coefficient; the formal degree is `len - 1`).
///
/// Convention: the Sylvester matrix has the coefficients of `f` in the first
/// `deg g` rows, then the coefficients of `g`.
pub fn resultant_slices<R: Ring>(f: &[R], g: &[R]) -> R {
    assert!(!f.is_empty() && !g.is_empty());
    let df = f.len() - 1;
    let dg = g.len() - 1;
    if df == 0 && dg == 0 {
        // Res of two constants is 1.
        return f[0].exact_div(&f[0]);
    }
    if df == 0 {
        return ring_pow(&f[0], dg);
    }
    if dg == 0 {
        return ring_pow(&g[0], df);
    }
    let n = df + dg;
    let zero = f[0].sub(&f[0]);
    let mut m = vec![vec![zero; n]; n];
    for i in 0..dg {
        for (j, c) in f.iter().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..df {
        for (j, c) in g.iter().enumerate() {
            m[dg + i][i + j] = c.clone();
        }
    }
    det_bareiss(m)
}

fn ring_pow<R: Ring>(x: &R, e: usize) -> R {
    assert!(e >= 1);
    let mut acc = x.clone();
    for _ in 1..e {
        acc = acc.mul(x);
    }
    acc
}

/// Dense univariate polynomial with ascending coefficients over a field.
/// The empty vector is the zero polynomial; otherwise the top coefficient is
/// nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Coeff> {
    pub coeffs: Vec<F>,
}

impl<F: Coeff> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lc(&self) -> &F {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, i: usize, ctx: &F) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let ctx = &self.coeffs[0];
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i, ctx).add(&rhs.coeff(i, ctx)));
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.coeffs.len() < rhs.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let ctx = self.coeffs[0].zero();
        let lcinv = rhs.lc().inv();
        let mut rem = self.coeffs.clone();
        let dq = self.coeffs.len() - rhs.coeffs.len();
        let mut quot = vec![ctx; dq + 1];
        for k in (0..=dq).rev() {
            let top = rem[k + rhs.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = top.mul(&lcinv);
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&q.mul(b));
            }
            quot[k] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd (1 for coprime inputs, 0 only if both are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_usize(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        if self.is_zero() {
            return x.zero();
        }
        let mut acc = self.coeffs.last().unwrap().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Writes `self` as `h(z^p)` when every exponent is a multiple of p.
    pub fn deflate(&self, p: usize) -> Option<Self> {
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % p != 0 && !c.is_zero())
        {
            return None;
        }
        Some(Poly::new(
            self.coeffs.iter().step_by(p).cloned().collect(),
        ))
    }

    /// Substitutes `z^p` for `z`.
    pub fn inflate(&self, p: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero();
        let mut out = vec![zero; (self.coeffs.len() - 1) * p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * p] = c.clone();
        }
        Poly::new(out)
    }

    /// Coefficient-wise p-th root, when every coefficient has one.
    pub fn coeff_pth_root(&self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.pth_root()?);
        }
        Some(Poly::new(out))
    }

    /// Modular exponentiation `self^e mod m` with a big-integer exponent.
    pub fn pow_mod(&self, e: &num_bigint::BigUint, m: &Self) -> Self {
        use num_traits::Zero as _;
        let (_, base) = self.div_rem(m);
        if base.is_zero() {
            assert!(!e.is_zero(), "0^0 in pow_mod");
            return Poly::zero();
        }
        let mut acc = Poly::constant(base.coeffs[0].one());
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).div_rem(m).1;
            if e.bit(i) {
                acc = acc.mul(&base).div_rem(m).1;
            }
        }
        acc
    }
}

impl<F: Coeff> Ring for Poly<F> {
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        assert!(Poly::is_zero(&r), "inexact polynomial division");
        q
    }
}

/// Squarefree part of a nonzero polynomial over a field, valid in any
/// characteristic provided the required coefficient p-th roots exist
/// (automatic over perfect fields; over F_p(t) the degrees handled by this
/// crate keep every inseparable case out of range). Output is monic.
pub fn squarefree_part<F: Coeff>(g: &Poly<F>) -> Poly<F> {
    assert!(!g.is_zero());
    if g.coeffs.len() == 1 {
        return Poly::constant(g.coeffs[0].one());
    }
    let gp = g.derivative();
    if gp.is_zero() {
        let p = g.coeffs[0]
            .char_hint()
            .expect("vanishing derivative of nonconstant polynomial in characteristic zero")
            as usize;
        let h = g.deflate(p).expect("derivative-free polynomial must deflate");
        if let Some(hr) = h.coeff_pth_root() {
            return squarefree_part(&hr);
        }
        // Mixed case: rad(g) = rad(s(z^p)) for s = rad(h). Unreachable under
        // the characteristic bounds enforced by the callers; fall back to the
        // best K-rational answer.
        let s = squarefree_part(&h);
        if let Some(sr) = s.coeff_pth_root() {
            return squarefree_part(&sr);
        }
        return s.inflate(p).monic();
    }
    let d = g.gcd(&gp);
    let w = g.div_rem(&d).0;
    if d.degree() == Some(0) {
        return w.monic();
    }
    // Strip from d every factor shared with w; what remains carries only
    // exponents divisible by the characteristic.
    let mut y = d;
    loop {
        let c = y.gcd(&w);
        if c.degree() == Some(0) {
            break;
        }
        y = y.div_rem(&c).0;
    }
    if y.degree() == Some(0) {
        return w.monic();
    }
    w.mul(&squarefree_part(&y)).monic()
}

impl Ring for num_bigint::BigInt {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        use num_integer::Integer;
        let (q, r) = Integer::div_rem(self, rhs);
        assert!(Ring::is_zero(&r), "inexact division in Bareiss step");
        q
    }
}

impl Ring for i128 {
    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(*rhs).expect("i128 overflow")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(*rhs).expect("i128 overflow")
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(*rhs).expect("i128 overflow")
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self % rhs, 0, "inexact division in Bareiss step");
        self / rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn bareiss_matches_known_determinants() {
        let m = vec![vec![bi(1), bi(2)], vec![bi(3), bi(4)]];
        assert_eq!(det_bareiss(m), bi(-2));
        let m = vec![
            vec![bi(2), bi(0), bi(1)],
            vec![bi(1), bi(1), bi(0)],
            vec![bi(0), bi(3), bi(4)],
        ];
        // det = 2*(4-0) - 0 + 1*(3-0) = 11
        assert_eq!(det_bareiss(m), bi(11));
        let singular = vec![
            vec![bi(1), bi(2), bi(3)],
            vec![bi(2), bi(4), bi(6)],
            vec![bi(7), bi(8), bi(9)],
        ];
        assert_eq!(det_bareiss(singular), bi(0));
    }

    #[test]
    fn resultant_of_split_linear_products() {
        // Oracle: Res(prod (x - a_i), prod (x - b_j)) = prod (a_i - b_j) for
        // monic inputs, up to the fixed convention sign. Build descending
        // coefficient sequences by expansion and compare.
        let expand = |roots: &[i64]| -> Vec<BigInt> {
            // descending coefficients of prod (x - r)
            let mut asc = vec![bi(1)];
            for &r in roots {
                let mut next = vec![bi(0); asc.len() + 1];
                for (i, c) in asc.iter().enumerate() {
                    next[i + 1] = &next[i + 1] + c;
                    next[i] = &next[i] - c * bi(r);
                }
                asc = next;
            }
            asc.reverse();
            asc
        };
        for (av, bv) in [
            (vec![1i64, 2], vec![3i64, 5]),
            (vec![0, -1, 4], vec![2, 7]),
            (vec![3], vec![-2, -5, 1]),
        ] {
            let f = expand(&av);
            let g = expand(&bv);
            let mut want = bi(1);
            for &a in &av {
                for &b in &bv {
                    want = want * bi(a - b);
                }
            }
            assert_eq!(resultant_slices(&f, &g), want);
        }
    }

    #[test]
    fn resultant_detects_shared_roots() {
        // (x-1)(x-2) and (x-2)(x-5) share x=2
        let f = vec![bi(1), bi(-3), bi(2)];
        let g = vec![bi(1), bi(-7), bi(10)];
        assert!(Ring::is_zero(&resultant_slices(&f, &g)));
    }
}
