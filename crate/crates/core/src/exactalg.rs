//! Exact arithmetic over Q, F_p, F_p[t] and F_p(t): field elements in
//! canonical form, places with valuations, and residue-field reduction.

use crate::factor::{self, strip_factor};
use crate::fppoly::FpPoly;
use crate::ring::{Coeff, Ring};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("negative valuation at the reduction place")]
    NegativeValuation,
    #[error("not a prime: {0}")]
    NotPrime(String),
    #[error("not a monic irreducible polynomial: {0}")]
    NotIrreducible(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// The coefficient field: Q or the rational function field F_p(t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    FunctionField { p: u64 },
}

impl BaseField {
    pub fn function_field(p: u64) -> Result<Self, ExactError> {
        if p < 2 || !factor::is_prime(&BigUint::from(p)) {
            return Err(ExactError::NotPrime(p.to_string()));
        }
        Ok(BaseField::FunctionField { p })
    }

    pub fn char(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::FunctionField { p } => *p,
        }
    }
}

/// Reduced fraction over F_p[t]; the denominator is monic and coprime to the
/// numerator, and the zero element has denominator 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FnElem {
    pub p: u64,
    num: FpPoly,
    den: FpPoly,
}

impl FnElem {
    fn reduce(p: u64, num: FpPoly, den: FpPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in F_p(t)");
        if num.is_zero() {
            return FnElem {
                p,
                num,
                den: FpPoly::one(p),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        // monic denominator
        let lc = den.lc();
        if lc == 1 {
            FnElem { p, num, den }
        } else {
            FnElem {
                p,
                num: scale_by_inv(num, lc),
                den: den.monic(),
            }
        }
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }
}

fn scale_by_inv(f: FpPoly, c: u64) -> FpPoly {
    // multiply by c^{-1} mod p
    let p = f.p;
    let mut inv = 1u64;
    let mut base = c % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            inv = ((inv as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    f.scale(inv)
}

/// An exact element of Q or of F_p(t), stored in lowest terms with the
/// canonical denominator normalization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rat(BigRational),
    Fn(FnElem),
}

impl FieldElement {
    pub fn base(&self) -> BaseField {
        match self {
            FieldElement::Rat(_) => BaseField::Rationals,
            FieldElement::Fn(f) => BaseField::FunctionField { p: f.p },
        }
    }

    pub fn zero_in(base: BaseField) -> Self {
        match base {
            BaseField::Rationals => FieldElement::Rat(BigRational::zero()),
            BaseField::FunctionField { p } => FieldElement::Fn(FnElem {
                p,
                num: FpPoly::zero(p),
                den: FpPoly::one(p),
            }),
        }
    }

    pub fn one_in(base: BaseField) -> Self {
        FieldElement::from_i64(base, 1)
    }

    pub fn from_i64(base: BaseField, n: i64) -> Self {
        match base {
            BaseField::Rationals => FieldElement::Rat(BigRational::from(BigInt::from(n))),
            BaseField::FunctionField { p } => {
                FieldElement::from_fppoly(FpPoly::from_signed(p, &[n]))
            }
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        FieldElement::Rat(BigRational::from(n))
    }

    pub fn from_ratio(num: BigInt, den: BigInt) -> Self {
        assert!(!num_traits::Zero::is_zero(&den));
        FieldElement::Rat(BigRational::new(num, den))
    }

    pub fn from_fppoly(f: FpPoly) -> Self {
        let p = f.p;
        FieldElement::Fn(FnElem {
            p,
            num: f,
            den: FpPoly::one(p),
        })
    }

    pub fn fn_ratio(num: FpPoly, den: FpPoly) -> Self {
        let p = num.p;
        FieldElement::Fn(FnElem::reduce(p, num, den))
    }

    pub fn as_rat(&self) -> &BigRational {
        match self {
            FieldElement::Rat(r) => r,
            _ => panic!("expected a rational"),
        }
    }

    pub fn as_fn(&self) -> &FnElem {
        match self {
            FieldElement::Fn(f) => f,
            _ => panic!("expected a function-field element"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_zero(),
            FieldElement::Fn(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_one(),
            FieldElement::Fn(f) => f.num.is_one() && f.den.is_one(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a + b),
            (FieldElement::Fn(a), FieldElement::Fn(b)) => {
                debug_assert_eq!(a.p, b.p);
                let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
                let den = a.den.mul(&b.den);
                FieldElement::Fn(FnElem::reduce(a.p, num, den))
            }
            _ => panic!("mixed base fields"),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Rat(a) => FieldElement::Rat(-a),
            FieldElement::Fn(a) => FieldElement::Fn(FnElem {
                p: a.p,
                num: a.num.neg(),
                den: a.den.clone(),
            }),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a * b),
            (FieldElement::Fn(a), FieldElement::Fn(b)) => {
                debug_assert_eq!(a.p, b.p);
                FieldElement::Fn(FnElem::reduce(
                    a.p,
                    a.num.mul(&b.num),
                    a.den.mul(&b.den),
                ))
            }
            _ => panic!("mixed base fields"),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        match (self, rhs) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a / b),
            (FieldElement::Fn(a), FieldElement::Fn(b)) => FieldElement::Fn(FnElem::reduce(
                a.p,
                a.num.mul(&b.den),
                a.den.mul(&b.num),
            )),
            _ => panic!("mixed base fields"),
        }
    }

    pub fn inv(&self) -> Self {
        FieldElement::one_in(self.base()).div(self)
    }

    pub fn pow_i64(&self, e: i64) -> Self {
        if e == 0 {
            return FieldElement::one_in(self.base());
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = FieldElement::one_in(self.base());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// d/dt, for function-field elements.
    pub fn t_derivative(&self) -> Self {
        match self {
            FieldElement::Fn(f) => {
                let num = f.num.derivative().mul(&f.den).sub(&f.num.mul(&f.den.derivative()));
                let den = f.den.mul(&f.den);
                FieldElement::Fn(FnElem::reduce(f.p, num, den))
            }
            _ => panic!("t-derivative of a rational number"),
        }
    }

    /// Whether the element lies in (K^x)^p for K = F_p(t).
    pub fn is_pth_power(&self) -> bool {
        match self {
            FieldElement::Fn(f) => {
                !f.num.is_zero() && f.num.pth_root().is_some() && f.den.pth_root().is_some()
            }
            _ => panic!("p-th power test over Q"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Fn(e) => {
                if e.den.is_one() {
                    write!(f, "{}", e.num)
                } else {
                    write!(f, "({})/({})", e.num, e.den)
                }
            }
        }
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => a.cmp(b),
            (FieldElement::Fn(a), FieldElement::Fn(b)) => {
                a.den.cmp(&b.den).then_with(|| a.num.cmp(&b.num))
            }
            (FieldElement::Rat(_), FieldElement::Fn(_)) => Ordering::Less,
            (FieldElement::Fn(_), FieldElement::Rat(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ring for FieldElement {
    fn add(&self, rhs: &Self) -> Self {
        FieldElement::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        FieldElement::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        FieldElement::mul(self, rhs)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        FieldElement::div(self, rhs)
    }
}

impl Coeff for FieldElement {
    fn zero(&self) -> Self {
        FieldElement::zero_in(self.base())
    }
    fn one(&self) -> Self {
        FieldElement::one_in(self.base())
    }
    fn inv(&self) -> Self {
        FieldElement::inv(self)
    }
    fn char_hint(&self) -> Option<u64> {
        match self {
            FieldElement::Rat(_) => None,
            FieldElement::Fn(f) => Some(f.p),
        }
    }
    fn pth_root(&self) -> Option<Self> {
        match self {
            FieldElement::Rat(_) => None,
            FieldElement::Fn(f) => {
                if f.num.is_zero() {
                    return Some(self.clone());
                }
                let num = f.num.pth_root()?;
                let den = f.den.pth_root()?;
                Some(FieldElement::Fn(FnElem::reduce(f.p, num, den)))
            }
        }
    }
    fn mul_usize(&self, n: usize) -> Self {
        match self {
            FieldElement::Rat(r) => FieldElement::Rat(r * BigInt::from(n)),
            FieldElement::Fn(f) => {
                let c = FpPoly::constant(f.p, (n as u128 % f.p as u128) as u64);
                FieldElement::Fn(FnElem::reduce(f.p, f.num.mul(&c), f.den.clone()))
            }
        }
    }
}

/// A non-archimedean place: a prime of Q, or a monic irreducible of F_p[t],
/// or the degree place of F_p(t).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Prime(BigUint),
    FnFinite(FpPoly),
    FnInfinity { p: u64 },
}

impl Place {
    pub fn prime(p: BigUint) -> Result<Self, ExactError> {
        if factor::is_prime(&p) {
            Ok(Place::Prime(p))
        } else {
            Err(ExactError::NotPrime(p.to_string()))
        }
    }

    pub fn prime_u64(p: u64) -> Result<Self, ExactError> {
        Place::prime(BigUint::from(p))
    }

    pub fn fn_finite(pi: FpPoly) -> Result<Self, ExactError> {
        if pi.is_monic() && pi.is_irreducible() {
            Ok(Place::FnFinite(pi))
        } else {
            Err(ExactError::NotIrreducible(pi.to_string()))
        }
    }

    pub fn fn_infinity(p: u64) -> Self {
        Place::FnInfinity { p }
    }

    pub fn base(&self) -> BaseField {
        match self {
            Place::Prime(_) => BaseField::Rationals,
            Place::FnFinite(pi) => BaseField::FunctionField { p: pi.p },
            Place::FnInfinity { p } => BaseField::FunctionField { p: *p },
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::FnFinite(pi) => write!(f, "{pi}"),
            Place::FnInfinity { .. } => write!(f, "inf"),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        use Place::*;
        match (self, other) {
            (Prime(a), Prime(b)) => a.cmp(b),
            (FnFinite(a), FnFinite(b)) => a.cmp(b),
            (FnInfinity { .. }, FnInfinity { .. }) => Ordering::Equal,
            (FnFinite(_), FnInfinity { .. }) => Ordering::Less,
            (FnInfinity { .. }, FnFinite(_)) => Ordering::Greater,
            (Prime(_), _) => Ordering::Less,
            (_, Prime(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Value of a discrete valuation: an integer, or +infinity at zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_zero(&self) -> bool {
        matches!(self, Valuation::Finite(0))
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(n) => Some(*n),
            Valuation::Infinity => None,
        }
    }
}

/// ord_v(x); +infinity exactly at x = 0. At the infinite place of F_p(t),
/// ord(f/g) = deg g - deg f.
pub fn valuation(x: &FieldElement, v: &Place) -> Valuation {
    assert_eq!(x.base(), v.base(), "element and place from different fields");
    if x.is_zero() {
        return Valuation::Infinity;
    }
    match (x, v) {
        (FieldElement::Rat(r), Place::Prime(p)) => {
            let (en, _) = strip_factor(r.numer().magnitude(), p);
            let (ed, _) = strip_factor(r.denom().magnitude(), p);
            Valuation::Finite(en as i64 - ed as i64)
        }
        (FieldElement::Fn(f), Place::FnFinite(pi)) => {
            let mut en = 0i64;
            let mut n = f.num().clone();
            loop {
                let (q, r) = n.div_rem(pi);
                if !r.is_zero() {
                    break;
                }
                n = q;
                en += 1;
            }
            let mut ed = 0i64;
            let mut d = f.den().clone();
            loop {
                let (q, r) = d.div_rem(pi);
                if !r.is_zero() {
                    break;
                }
                d = q;
                ed += 1;
            }
            Valuation::Finite(en - ed)
        }
        (FieldElement::Fn(f), Place::FnInfinity { .. }) => Valuation::Finite(
            f.den().degree().unwrap() as i64 - f.num().degree().unwrap() as i64,
        ),
        _ => unreachable!(),
    }
}

/// Residue field context: F_p for a prime of Q, or F_p[t]/(m) presented by a
/// monic modulus m (which also realizes abstract extensions F_{p^k}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueCtx {
    PrimeBig(BigUint),
    Ext { p: u64, modulus: FpPoly },
}

impl ResidueCtx {
    pub fn of_place(v: &Place) -> Arc<ResidueCtx> {
        match v {
            Place::Prime(p) => Arc::new(ResidueCtx::PrimeBig(p.clone())),
            Place::FnFinite(pi) => Arc::new(ResidueCtx::Ext {
                p: pi.p,
                modulus: pi.clone(),
            }),
            Place::FnInfinity { p } => Arc::new(ResidueCtx::Ext {
                p: *p,
                modulus: FpPoly::gen(*p),
            }),
        }
    }

    pub fn extension(p: u64, degree: usize) -> Arc<ResidueCtx> {
        Arc::new(ResidueCtx::Ext {
            p,
            modulus: FpPoly::find_irreducible(p, degree),
        })
    }

    pub fn char_big(&self) -> BigUint {
        match self {
            ResidueCtx::PrimeBig(p) => p.clone(),
            ResidueCtx::Ext { p, .. } => BigUint::from(*p),
        }
    }

    /// Field size p^k.
    pub fn order(&self) -> BigUint {
        match self {
            ResidueCtx::PrimeBig(p) => p.clone(),
            ResidueCtx::Ext { p, modulus } => {
                BigUint::from(*p).pow(modulus.degree().unwrap() as u32)
            }
        }
    }
}

#[derive(Clone, Debug)]
enum ResidueVal {
    Big(BigUint),
    Poly(FpPoly),
}

/// An element of a residue field, in canonical reduced form.
#[derive(Clone, Debug)]
pub struct ResidueElement {
    ctx: Arc<ResidueCtx>,
    val: ResidueVal,
}

impl PartialEq for ResidueElement {
    fn eq(&self, other: &Self) -> bool {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) && *self.ctx != *other.ctx {
            return false;
        }
        match (&self.val, &other.val) {
            (ResidueVal::Big(a), ResidueVal::Big(b)) => a == b,
            (ResidueVal::Poly(a), ResidueVal::Poly(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for ResidueElement {}

impl ResidueElement {
    pub fn zero_of(ctx: &Arc<ResidueCtx>) -> Self {
        let val = match &**ctx {
            ResidueCtx::PrimeBig(_) => ResidueVal::Big(BigUint::zero()),
            ResidueCtx::Ext { p, .. } => ResidueVal::Poly(FpPoly::zero(*p)),
        };
        ResidueElement {
            ctx: ctx.clone(),
            val,
        }
    }

    pub fn one_of(ctx: &Arc<ResidueCtx>) -> Self {
        let val = match &**ctx {
            ResidueCtx::PrimeBig(_) => ResidueVal::Big(BigUint::one()),
            ResidueCtx::Ext { p, .. } => ResidueVal::Poly(FpPoly::one(*p)),
        };
        ResidueElement {
            ctx: ctx.clone(),
            val,
        }
    }

    pub fn from_int(ctx: &Arc<ResidueCtx>, n: &BigInt) -> Self {
        match &**ctx {
            ResidueCtx::PrimeBig(p) => {
                let m = BigInt::from(p.clone());
                let r = ((n % &m) + &m) % &m;
                ResidueElement {
                    ctx: ctx.clone(),
                    val: ResidueVal::Big(r.magnitude().clone()),
                }
            }
            ResidueCtx::Ext { p, .. } => {
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                let c = r.to_u64_digits().1.first().copied().unwrap_or(0);
                ResidueElement {
                    ctx: ctx.clone(),
                    val: ResidueVal::Poly(FpPoly::constant(*p, c)),
                }
            }
        }
    }

    pub fn from_poly(ctx: &Arc<ResidueCtx>, f: &FpPoly) -> Self {
        match &**ctx {
            ResidueCtx::Ext { modulus, .. } => ResidueElement {
                ctx: ctx.clone(),
                val: ResidueVal::Poly(f.div_rem(modulus).1),
            },
            _ => panic!("polynomial value in a prime residue field"),
        }
    }

    pub fn ctx(&self) -> &Arc<ResidueCtx> {
        &self.ctx
    }

    pub fn as_poly(&self) -> &FpPoly {
        match &self.val {
            ResidueVal::Poly(f) => f,
            _ => panic!("not a polynomial residue"),
        }
    }

    pub fn as_big(&self) -> &BigUint {
        match &self.val {
            ResidueVal::Big(b) => b,
            _ => panic!("not a prime-field residue"),
        }
    }

    fn lift2<F, G>(&self, rhs: &Self, f: F, g: G) -> Self
    where
        F: FnOnce(&BigUint, &BigUint, &BigUint) -> BigUint,
        G: FnOnce(&FpPoly, &FpPoly, &FpPoly) -> FpPoly,
    {
        debug_assert_eq!(*self.ctx, *rhs.ctx, "mixed residue fields");
        match (&*self.ctx, &self.val, &rhs.val) {
            (ResidueCtx::PrimeBig(p), ResidueVal::Big(a), ResidueVal::Big(b)) => ResidueElement {
                ctx: self.ctx.clone(),
                val: ResidueVal::Big(f(a, b, p)),
            },
            (ResidueCtx::Ext { modulus, .. }, ResidueVal::Poly(a), ResidueVal::Poly(b)) => {
                ResidueElement {
                    ctx: self.ctx.clone(),
                    val: ResidueVal::Poly(g(a, b, modulus)),
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.lift2(
            rhs,
            |a, b, p| (a + b) % p,
            |a, b, m| a.add(b).div_rem(m).1,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.lift2(
            rhs,
            |a, b, p| ((a + p) - b) % p,
            |a, b, m| a.sub(b).div_rem(m).1,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.lift2(
            rhs,
            |a, b, p| (a * b) % p,
            |a, b, m| a.mul(b).div_rem(m).1,
        )
    }

    pub fn neg(&self) -> Self {
        ResidueElement::zero_of(&self.ctx).sub(self)
    }

    pub fn is_zero(&self) -> bool {
        match &self.val {
            ResidueVal::Big(b) => b.is_zero(),
            ResidueVal::Poly(f) => f.is_zero(),
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero residue");
        match (&*self.ctx, &self.val) {
            (ResidueCtx::PrimeBig(p), ResidueVal::Big(a)) => {
                let e = p - BigUint::from(2u32);
                ResidueElement {
                    ctx: self.ctx.clone(),
                    val: ResidueVal::Big(a.modpow(&e, p)),
                }
            }
            (ResidueCtx::Ext { modulus, .. }, ResidueVal::Poly(a)) => ResidueElement {
                ctx: self.ctx.clone(),
                val: ResidueVal::Poly(
                    a.inverse_mod(modulus).expect("residue modulus not irreducible"),
                ),
            },
            _ => unreachable!(),
        }
    }

    /// The p-th root, which always exists in a finite field.
    pub fn frobenius_inverse(&self) -> Self {
        match (&*self.ctx, &self.val) {
            (ResidueCtx::PrimeBig(_), _) => self.clone(),
            (ResidueCtx::Ext { p, modulus }, ResidueVal::Poly(a)) => {
                let k = modulus.degree().unwrap();
                if k == 1 {
                    return self.clone();
                }
                let e = BigUint::from(*p).pow((k - 1) as u32);
                ResidueElement {
                    ctx: self.ctx.clone(),
                    val: ResidueVal::Poly(a.pow_mod(&e, modulus)),
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        match (&*self.ctx, &self.val) {
            (ResidueCtx::PrimeBig(p), ResidueVal::Big(a)) => ResidueElement {
                ctx: self.ctx.clone(),
                val: ResidueVal::Big(a.modpow(e, p)),
            },
            (ResidueCtx::Ext { modulus, .. }, ResidueVal::Poly(a)) => ResidueElement {
                ctx: self.ctx.clone(),
                val: ResidueVal::Poly(a.pow_mod(e, modulus)),
            },
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.val {
            ResidueVal::Big(b) => write!(f, "{b}"),
            ResidueVal::Poly(q) => write!(f, "{q}"),
        }
    }
}

impl Ring for ResidueElement {
    fn add(&self, rhs: &Self) -> Self {
        ResidueElement::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        ResidueElement::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        ResidueElement::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        ResidueElement::mul(self, rhs)
    }
    fn is_zero(&self) -> bool {
        ResidueElement::is_zero(self)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
}

impl Coeff for ResidueElement {
    fn zero(&self) -> Self {
        ResidueElement::zero_of(&self.ctx)
    }
    fn one(&self) -> Self {
        ResidueElement::one_of(&self.ctx)
    }
    fn inv(&self) -> Self {
        ResidueElement::inv(self)
    }
    fn char_hint(&self) -> Option<u64> {
        match &*self.ctx {
            ResidueCtx::PrimeBig(p) => u64::try_from(p).ok(),
            ResidueCtx::Ext { p, .. } => Some(*p),
        }
    }
    fn pth_root(&self) -> Option<Self> {
        Some(self.frobenius_inverse())
    }
    fn mul_usize(&self, n: usize) -> Self {
        let ctx = &self.ctx;
        let k = ResidueElement::from_int(ctx, &BigInt::from(n));
        self.mul(&k)
    }
}

/// Canonical image of a v-integral element in the residue field kappa(v).
pub fn reduce_at(x: &FieldElement, v: &Place) -> Result<ResidueElement, ExactError> {
    assert_eq!(x.base(), v.base(), "element and place from different fields");
    match valuation(x, v) {
        Valuation::Finite(n) if n < 0 => return Err(ExactError::NegativeValuation),
        _ => {}
    }
    let ctx = ResidueCtx::of_place(v);
    if x.is_zero() {
        return Ok(ResidueElement::zero_of(&ctx));
    }
    match (x, v) {
        (FieldElement::Rat(r), Place::Prime(_)) => {
            let num = ResidueElement::from_int(&ctx, r.numer());
            let den = ResidueElement::from_int(&ctx, r.denom());
            Ok(num.mul(&den.inv()))
        }
        (FieldElement::Fn(f), Place::FnFinite(_)) => {
            let num = ResidueElement::from_poly(&ctx, f.num());
            let den = ResidueElement::from_poly(&ctx, f.den());
            Ok(num.mul(&den.inv()))
        }
        (FieldElement::Fn(f), Place::FnInfinity { p }) => {
            let dn = f.num().degree().unwrap();
            let dd = f.den().degree().unwrap();
            if dn < dd {
                return Ok(ResidueElement::zero_of(&ctx));
            }
            // dn == dd here; the image is the ratio of leading coefficients
            let num = ResidueElement::from_poly(&ctx, &FpPoly::constant(*p, f.num().lc()));
            let den = ResidueElement::from_poly(&ctx, &FpPoly::constant(*p, f.den().lc()));
            Ok(num.mul(&den.inv()))
        }
        _ => unreachable!(),
    }
}

/// All S-units with exponent vector bounded by `bound`: over Q the elements
/// +-prod p^e, over F_p(t) the elements c * prod pi^e with c in F_p^x. The
/// infinite place contributes no generator.
pub fn s_ring_units(base: BaseField, places: &[Place], bound: u32) -> Vec<FieldElement> {
    let mut gens: Vec<&Place> = places
        .iter()
        .filter(|v| !matches!(v, Place::FnInfinity { .. }))
        .collect();
    gens.sort();
    gens.dedup();
    let k = gens.len();
    let mut out = Vec::new();
    let mut exps = vec![-(bound as i64); k];
    loop {
        let mut val = FieldElement::one_in(base);
        for (i, g) in gens.iter().enumerate() {
            let base_el = match g {
                Place::Prime(p) => FieldElement::from_bigint(BigInt::from_biguint(
                    Sign::Plus,
                    (*p).clone(),
                )),
                Place::FnFinite(pi) => FieldElement::from_fppoly(pi.clone()),
                Place::FnInfinity { .. } => unreachable!(),
            };
            val = val.mul(&base_el.pow_i64(exps[i]));
        }
        match base {
            BaseField::Rationals => {
                out.push(val.clone());
                out.push(val.neg());
            }
            BaseField::FunctionField { p } => {
                for c in 1..p {
                    let cc = FieldElement::from_i64(base, c as i64);
                    out.push(val.mul(&cc));
                }
            }
        }
        // next exponent vector
        let mut i = 0;
        loop {
            if i == k {
                out.sort();
                out.dedup();
                return out;
            }
            exps[i] += 1;
            if exps[i] <= bound as i64 {
                break;
            }
            exps[i] = -(bound as i64);
            i += 1;
        }
    }
}

/// The places in the support of x: finite places with nonzero valuation,
/// plus the infinite place of F_p(t) when its valuation is nonzero.
pub fn support(x: &FieldElement) -> Vec<Place> {
    assert!(!x.is_zero(), "support of zero");
    let mut out = Vec::new();
    match x {
        FieldElement::Rat(r) => {
            for (p, _) in factor::factor(r.numer().magnitude()) {
                if !p.is_one() {
                    out.push(Place::Prime(p));
                }
            }
            for (p, _) in factor::factor(r.denom().magnitude()) {
                out.push(Place::Prime(p));
            }
        }
        FieldElement::Fn(f) => {
            if !f.num().is_constant() {
                for (pi, _) in f.num().factor().1 {
                    out.push(Place::FnFinite(pi));
                }
            }
            if !f.den().is_constant() {
                for (pi, _) in f.den().factor().1 {
                    out.push(Place::FnFinite(pi));
                }
            }
            if f.num().degree() != f.den().degree() {
                out.push(Place::FnInfinity { p: f.p });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldElement::from_ratio(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn valuation_examples() {
        let p2 = Place::prime_u64(2).unwrap();
        let p3 = Place::prime_u64(3).unwrap();
        assert_eq!(valuation(&q(12, 1), &p2), Valuation::Finite(2));
        assert_eq!(valuation(&q(1, 9), &p3), Valuation::Finite(-2));
        assert_eq!(valuation(&q(0, 1), &p2), Valuation::Infinity);
        // t^2 + t at the infinite place of F_5(t)
        let x = FieldElement::from_fppoly(FpPoly::from_signed(5, &[0, 1, 1]));
        let vinf = Place::fn_infinity(5);
        assert_eq!(valuation(&x, &vinf), Valuation::Finite(-2));
    }

    #[test]
    fn valuation_is_additive() {
        let p3 = Place::prime_u64(3).unwrap();
        let samples = [q(6, 5), q(-9, 2), q(7, 27), q(15, 4), q(1, 3)];
        for a in &samples {
            for b in &samples {
                let va = valuation(a, &p3).finite().unwrap();
                let vb = valuation(b, &p3).finite().unwrap();
                let vab = valuation(&a.mul(b), &p3).finite().unwrap();
                assert_eq!(vab, va + vb);
                // ultrametric
                let s = a.add(b);
                if !s.is_zero() {
                    let vs = valuation(&s, &p3).finite().unwrap();
                    assert!(vs >= va.min(vb));
                    if va != vb {
                        assert_eq!(vs, va.min(vb));
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let p5 = Place::prime_u64(5).unwrap();
        let r = reduce_at(&q(7, 1), &p5).unwrap();
        assert_eq!(r.as_big(), &BigUint::from(2u32));
        assert!(matches!(
            reduce_at(&q(1, 5), &p5),
            Err(ExactError::NegativeValuation)
        ));
        // t^2+1 at (t-1) over F_3(t) -> 2
        let x = FieldElement::from_fppoly(FpPoly::from_signed(3, &[1, 0, 1]));
        let v = Place::fn_finite(FpPoly::from_signed(3, &[-1, 1])).unwrap();
        let r = reduce_at(&x, &v).unwrap();
        assert_eq!(r.as_poly(), &FpPoly::constant(3, 2));
        // reduction is multiplicative on integral inputs
        let a = q(14, 3);
        let b = q(8, 9);
        let lhs = reduce_at(&a.mul(&b), &p5).unwrap();
        let rhs = reduce_at(&a, &p5).unwrap().mul(&reduce_at(&b, &p5).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_at_infinity() {
        let vinf = Place::fn_infinity(3);
        // (t^2+1)/(2t^2+t) -> 1/2 = 2 in F_3
        let x = FieldElement::fn_ratio(
            FpPoly::from_signed(3, &[1, 0, 1]),
            FpPoly::from_signed(3, &[0, 1, 2]),
        );
        let r = reduce_at(&x, &vinf).unwrap();
        assert_eq!(r.as_poly(), &FpPoly::constant(3, 2));
        // 1/t -> 0
        let y = FieldElement::fn_ratio(FpPoly::one(3), FpPoly::gen(3));
        assert!(reduce_at(&y, &vinf).unwrap().is_zero());
        // t has negative valuation
        let t = FieldElement::from_fppoly(FpPoly::gen(3));
        assert!(matches!(
            reduce_at(&t, &vinf),
            Err(ExactError::NegativeValuation)
        ));
    }

    #[test]
    fn s_units_examples() {
        let p2 = Place::prime_u64(2).unwrap();
        let us = s_ring_units(BaseField::Rationals, &[p2], 1);
        let expect: Vec<FieldElement> =
            vec![q(1, 1), q(-1, 1), q(2, 1), q(-2, 1), q(1, 2), q(-1, 2)];
        let mut expect = expect;
        expect.sort();
        assert_eq!(us, expect);

        let none = s_ring_units(BaseField::Rationals, &[], 7);
        assert_eq!(none.len(), 2);

        let ff = BaseField::function_field(5).unwrap();
        let consts = s_ring_units(ff, &[], 3);
        assert_eq!(consts.len(), 4);
        assert!(consts.iter().all(|c| !c.is_zero()));
    }

    #[test]
    fn product_formula_over_q() {
        // prod_p p^{ord_p(x)} = |x| for rationals
        for x in [q(12, 35), q(-81, 10), q(7, 1), q(1, 1)] {
            let mut prod = BigRational::one();
            for v in support(&x) {
                if let Place::Prime(p) = &v {
                    let e = valuation(&x, &v).finite().unwrap();
                    let pr = BigRational::from(BigInt::from_biguint(Sign::Plus, p.clone()));
                    for _ in 0..e.abs() {
                        if e > 0 {
                            prod *= &pr;
                        } else {
                            prod /= &pr;
                        }
                    }
                }
            }
            assert_eq!(prod, x.as_rat().abs());
        }
    }

    #[test]
    fn support_over_fn_field() {
        // t/(t^2-1) over F_5: support {t, t+1, t-1 (=t+4), inf}
        let x = FieldElement::fn_ratio(
            FpPoly::gen(5),
            FpPoly::from_signed(5, &[-1, 0, 1]),
        );
        let s = support(&x);
        assert_eq!(s.len(), 4);
        assert!(s.iter().any(|v| matches!(v, Place::FnInfinity { .. })));
    }
}
