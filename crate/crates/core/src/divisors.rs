//! Point configurations and reduced effective divisors on P^1: brackets and
//! cross-ratios, moduli coordinates, PGL2 normalization and equivalence,
//! good reduction of divisors, and the exponent-bounded S-unit equation.

use crate::exactalg::{s_ring_units, BaseField, FieldElement, Place, ResidueCtx, ResidueElement};
use crate::factor;
use crate::forms::{
    primitive_model, radical, reduce_form_at, residue_squarefree, v_normalize, BinaryForm, Form,
    FormsError, GroupElement,
};
use crate::fppoly::FpPoly;
use crate::ring::Poly;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::One;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DivisorError {
    #[error("repeated index in a cross-ratio")]
    RepeatedIndex,
    #[error("tuple points must be pairwise distinct")]
    PointsNotDistinct,
    #[error("too few points")]
    TooFewPoints,
    #[error("degree mismatch")]
    DegreeMismatch,
    #[error("the form is not squarefree")]
    NotSquarefree,
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// A point of P^1(K) as a primitive coordinate pair in canonical form (first
/// nonzero coordinate positive over Q, monic over F_p(t)).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    x: FieldElement,
    y: FieldElement,
}

impl ProjPoint {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        assert!(!(x.is_zero() && y.is_zero()), "the zero pair is not a point");
        let prim = primitive_model(&Form::new(vec![x, y])).expect("nonzero pair");
        ProjPoint {
            x: prim.coeff(0).clone(),
            y: prim.coeff(1).clone(),
        }
    }

    pub fn from_affine(z: FieldElement) -> Self {
        let one = FieldElement::one_in(z.base());
        ProjPoint::new(z, one)
    }

    pub fn infinity(base: BaseField) -> Self {
        ProjPoint::new(FieldElement::one_in(base), FieldElement::zero_in(base))
    }

    pub fn base(&self) -> BaseField {
        self.x.base()
    }

    pub fn coords(&self) -> (&FieldElement, &FieldElement) {
        (&self.x, &self.y)
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// The linear form vanishing at this point.
    pub fn linear_form(&self) -> BinaryForm {
        Form::new(vec![self.y.clone(), self.x.neg()])
    }

    pub fn bracket(&self, other: &Self) -> FieldElement {
        self.x.mul(&other.y).sub(&other.x.mul(&self.y))
    }

    pub fn apply(&self, g: &GroupElement) -> Self {
        let nx = g.m[0][0].mul(&self.x).add(&g.m[0][1].mul(&self.y));
        let ny = g.m[1][0].mul(&self.x).add(&g.m[1][1].mul(&self.y));
        ProjPoint::new(nx, ny)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.x.div(&self.y))
        }
    }
}

/// An ordered tuple of at least three pairwise distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointTuple {
    points: Vec<ProjPoint>,
}

impl PointTuple {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self, DivisorError> {
        if points.len() < 3 {
            return Err(DivisorError::TooFewPoints);
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].bracket(&points[j]).is_zero() {
                    return Err(DivisorError::PointsNotDistinct);
                }
            }
        }
        Ok(PointTuple { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn base(&self) -> BaseField {
        self.points[0].base()
    }

    /// [ij] = alpha_i beta_j - alpha_j beta_i; antisymmetric.
    pub fn bracket(&self, i: usize, j: usize) -> FieldElement {
        self.points[i].bracket(&self.points[j])
    }

    /// [ijkl] = [ik][jl] / ([il][jk]).
    pub fn cross_ratio(
        &self,
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    ) -> Result<FieldElement, DivisorError> {
        let idx = [i, j, k, l];
        for a in 0..4 {
            for b in a + 1..4 {
                if idx[a] == idx[b] {
                    return Err(DivisorError::RepeatedIndex);
                }
            }
        }
        let num = self.bracket(i, k).mul(&self.bracket(j, l));
        let den = self.bracket(i, l).mul(&self.bracket(j, k));
        Ok(num.div(&den))
    }

    /// The moduli coordinates ([123i])_i, zero-indexed as ([012i])_{i>=3}.
    pub fn moduli_point(&self) -> Result<Vec<FieldElement>, DivisorError> {
        if self.len() < 4 {
            return Err(DivisorError::TooFewPoints);
        }
        (3..self.len())
            .map(|i| self.cross_ratio(0, 1, 2, i))
            .collect()
    }

    /// The unique gamma in PGL2(K) sending the first three points to
    /// (0, 1, infinity), together with the transformed tuple.
    pub fn normalize_three(&self) -> (GroupElement, PointTuple) {
        let (x0, y0) = self.points[0].coords();
        let (x2, y2) = self.points[2].coords();
        let b12 = self.bracket(1, 2);
        let b10 = self.bracket(1, 0);
        let row0 = [b12.mul(y0), b12.mul(&x0.neg())];
        let row1 = [b10.mul(y2), b10.mul(&x2.neg())];
        let g = GroupElement::from_matrix([row0, row1]).expect("distinct points");
        let moved = PointTuple {
            points: self.points.iter().map(|p| p.apply(&g)).collect(),
        };
        (g, moved)
    }

    pub fn apply(&self, g: &GroupElement) -> PointTuple {
        PointTuple {
            points: self.points.iter().map(|p| p.apply(g)).collect(),
        }
    }
}

/// The sorted multiset of cross-ratios over all ordered 4-tuples of distinct
/// points; a conjugation invariant of the underlying point set.
pub fn cross_ratio_multiset(points: &[ProjPoint]) -> Vec<String> {
    let n = points.len();
    let mut out = Vec::new();
    if n < 4 {
        return out;
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if i == j || i == k || i == l || j == k || j == l || k == l {
                        continue;
                    }
                    let num = points[i]
                        .bracket(&points[k])
                        .mul(&points[j].bracket(&points[l]));
                    let den = points[i]
                        .bracket(&points[l])
                        .mul(&points[j].bracket(&points[k]));
                    out.push(num.div(&den).to_string());
                }
            }
        }
    }
    out.sort();
    out
}

/// A reduced effective divisor on P^1_K: a squarefree form up to scalar,
/// kept as its primitive representative, with its K-rational splitting data.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDivisor {
    form: BinaryForm,
    roots: Option<Vec<ProjPoint>>,
    splitting_degree_bound: u64,
}

impl ReducedDivisor {
    pub fn from_form(form: &BinaryForm) -> Result<Self, DivisorError> {
        if form.is_zero() {
            return Err(DivisorError::Forms(FormsError::ZeroForm));
        }
        let prim = primitive_model(form)?;
        let rad = radical(&prim)?;
        if rad.degree() != prim.degree() {
            return Err(DivisorError::NotSquarefree);
        }
        let roots = rational_roots(&prim);
        let n = prim.degree();
        let (roots, bound) = if roots.len() == n {
            (Some(roots), 1)
        } else {
            // crude factorial bound from the non-rational part
            let residual = (n - roots.len()) as u64;
            let mut b = 1u64;
            for i in 2..=residual {
                b = b.saturating_mul(i);
            }
            (None, b.max(2))
        };
        Ok(ReducedDivisor {
            form: prim,
            roots,
            splitting_degree_bound: bound,
        })
    }

    pub fn from_points(points: &[ProjPoint]) -> Result<Self, DivisorError> {
        if points.is_empty() {
            return Err(DivisorError::TooFewPoints);
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].bracket(&points[j]).is_zero() {
                    return Err(DivisorError::PointsNotDistinct);
                }
            }
        }
        let mut form = points[0].linear_form();
        for p in &points[1..] {
            form = form.mul(&p.linear_form());
        }
        ReducedDivisor::from_form(&form)
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn base(&self) -> BaseField {
        self.form.coeff(0).base()
    }

    /// True when every point of the divisor is K-rational.
    pub fn split(&self) -> bool {
        self.roots.is_some()
    }

    pub fn roots(&self) -> Option<&[ProjPoint]> {
        self.roots.as_deref()
    }

    /// An upper bound for the splitting degree (exactly 1 when split).
    pub fn splitting_degree_bound(&self) -> u64 {
        self.splitting_degree_bound
    }
}

fn divisors_of_big(n: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for (p, e) in factor::factor(n) {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out
}

/// All K-rational roots of a primitive squarefree form, in canonical order.
fn rational_roots(form: &BinaryForm) -> Vec<ProjPoint> {
    let base = form.coeff(0).base();
    let d = form.degree();
    let mut out = Vec::new();
    let zero = FieldElement::zero_in(base);
    let one = FieldElement::one_in(base);
    if form.coeff(0).is_zero() {
        out.push(ProjPoint::infinity(base));
    }
    if form.coeff(d).is_zero() {
        out.push(ProjPoint::new(zero, one.clone()));
    }
    let coeffs: Vec<&FieldElement> = form.coeffs().iter().collect();
    let mut lo = 0;
    while coeffs[lo].is_zero() {
        lo += 1;
    }
    let mut hi = d;
    while coeffs[hi].is_zero() {
        hi -= 1;
    }
    if lo == hi {
        out.sort();
        return out;
    }
    match base {
        BaseField::Rationals => {
            // rational root test on the dehomogenization
            let lead = coeffs[lo].as_rat().numer().magnitude();
            let tail = coeffs[hi].as_rat().numer().magnitude();
            let lead_divs = divisors_of_big(lead);
            let tail_divs = divisors_of_big(tail);
            for a in &tail_divs {
                for b in &lead_divs {
                    if a.gcd(b) != BigUint::one() {
                        continue;
                    }
                    for sign in [Sign::Plus, Sign::Minus] {
                        let x = FieldElement::from_ratio(
                            BigInt::from_biguint(sign, a.clone()),
                            BigInt::from_biguint(Sign::Plus, b.clone()),
                        );
                        if form.eval(&x, &one).is_zero() {
                            let pt = ProjPoint::from_affine(x);
                            if !out.contains(&pt) {
                                out.push(pt);
                            }
                        }
                    }
                }
            }
        }
        BaseField::FunctionField { p } => {
            let lead = coeffs[lo].as_fn().num();
            let tail = coeffs[hi].as_fn().num();
            let monic_divs = |f: &FpPoly| -> Vec<FpPoly> {
                let mut divs = vec![FpPoly::one(p)];
                for (q, e) in f.factor().1 {
                    let mut next = Vec::new();
                    for dv in &divs {
                        let mut qk = FpPoly::one(p);
                        for _ in 0..=e {
                            next.push(dv.mul(&qk));
                            qk = qk.mul(&q);
                        }
                    }
                    divs = next;
                }
                divs
            };
            for a in &monic_divs(tail) {
                for b in &monic_divs(lead) {
                    if !a.gcd(b).is_one() {
                        continue;
                    }
                    for c in 1..p {
                        let x = FieldElement::fn_ratio(a.scale(c), b.clone());
                        if form.eval(&x, &one).is_zero() {
                            let pt = ProjPoint::from_affine(x);
                            if !out.contains(&pt) {
                                out.push(pt);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    NotEquivalent,
    Inconclusive,
}

/// PGL2(K)-equivalence of reduced divisors. Split pairs are decided exactly
/// by triple normalization; non-split pairs are compared through a sound
/// necessary-condition fingerprint and may come back inconclusive.
pub fn divisors_equivalent(
    d1: &ReducedDivisor,
    d2: &ReducedDivisor,
) -> Result<Equivalence, DivisorError> {
    if d1.degree() != d2.degree() || d1.degree() < 3 {
        return Err(DivisorError::DegreeMismatch);
    }
    match (d1.roots(), d2.roots()) {
        (Some(r1), Some(r2)) => {
            // one fixed triple of d1 against every ordered triple of d2
            let t1 = PointTuple::new(r1.to_vec())?;
            let (_, moved1) = t1.normalize_three();
            let mut set1: Vec<ProjPoint> = moved1.points().to_vec();
            set1.sort();
            let n = r2.len();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if i == j || j == k || i == k {
                            continue;
                        }
                        let mut perm = vec![r2[i].clone(), r2[j].clone(), r2[k].clone()];
                        for (l, pt) in r2.iter().enumerate() {
                            if l != i && l != j && l != k {
                                perm.push(pt.clone());
                            }
                        }
                        let t2 = PointTuple::new(perm)?;
                        let (_, moved2) = t2.normalize_three();
                        let mut set2: Vec<ProjPoint> = moved2.points().to_vec();
                        set2.sort();
                        if set1 == set2 {
                            return Ok(Equivalence::Equivalent);
                        }
                    }
                }
            }
            Ok(Equivalence::NotEquivalent)
        }
        (Some(_), None) | (None, Some(_)) => {
            // a K-equivalence matches K-rational points with K-rational ones
            Ok(Equivalence::NotEquivalent)
        }
        (None, None) => nonsplit_fingerprint_compare(d1, d2),
    }
}

/// Compares the 4-subset cross-ratio multisets of the two root sets at up to
/// three places of common good reduction, computed in the splitting field of
/// the reductions. A difference refutes equivalence; agreement is
/// inconclusive.
fn nonsplit_fingerprint_compare(
    d1: &ReducedDivisor,
    d2: &ReducedDivisor,
) -> Result<Equivalence, DivisorError> {
    let base = d1.base();
    let mut candidates: Vec<Place> = Vec::new();
    match base {
        BaseField::Rationals => {
            for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
                candidates.push(Place::prime_u64(p).unwrap());
            }
        }
        BaseField::FunctionField { p } => {
            for c in 0..p {
                candidates
                    .push(Place::fn_finite(FpPoly::from_signed(p, &[-(c as i64), 1])).unwrap());
            }
        }
    }
    let mut compared = 0;
    for v in candidates {
        if compared >= 3 {
            break;
        }
        let f1 = match reduction_fingerprint(d1, &v) {
            Some(f) => f,
            None => continue,
        };
        let f2 = match reduction_fingerprint(d2, &v) {
            Some(f) => f,
            None => continue,
        };
        if f1 != f2 {
            return Ok(Equivalence::NotEquivalent);
        }
        compared += 1;
    }
    Ok(Equivalence::Inconclusive)
}

/// The sorted cross-ratio multiset of the reduction at a place of good
/// reduction, with the reduced roots realized in a common finite extension;
/// `None` at places of bad reduction or tiny residue characteristic.
fn reduction_fingerprint(d: &ReducedDivisor, v: &Place) -> Option<Vec<String>> {
    let p = match v {
        Place::Prime(p) => u64::try_from(p).ok()?,
        Place::FnFinite(pi) if pi.degree() == Some(1) => pi.p,
        _ => return None,
    };
    if p < 3 {
        return None;
    }
    let vform = v_normalize(d.form(), v).ok()?;
    let red = reduce_form_at(&vform, v).ok()?;
    if !residue_squarefree(&red) {
        return None;
    }
    let coeffs: Vec<u64> = red
        .coeffs()
        .iter()
        .map(|c| match v {
            Place::Prime(_) => u64::try_from(c.as_big()).expect("small residue"),
            _ => c.as_poly().coeff(0),
        })
        .collect();
    let poly = FpPoly::new(p, coeffs.iter().rev().copied().collect());
    let has_inf = coeffs[0] == 0;
    let (_, factors) = poly.factor();
    let mut k = 1usize;
    for (q, _) in &factors {
        k = num_integer::lcm(k, q.degree().unwrap());
    }
    let ctx = ResidueCtx::extension(p, k.max(2));
    let mut roots: Vec<ResidueElement> = Vec::new();
    for (q, _) in &factors {
        roots.extend(roots_in_extension(q, &ctx));
    }
    debug_assert_eq!(roots.len() + usize::from(has_inf), red.degree());
    let one = ResidueElement::one_of(&ctx);
    let zero = ResidueElement::zero_of(&ctx);
    let mut proj: Vec<(ResidueElement, ResidueElement)> =
        roots.into_iter().map(|r| (r, one.clone())).collect();
    if has_inf {
        proj.push((one, zero));
    }
    let n = proj.len();
    if n < 4 {
        return Some(vec![format!("deg{n}")]);
    }
    let bracket = |a: &(ResidueElement, ResidueElement), b: &(ResidueElement, ResidueElement)| {
        a.0.mul(&b.1).sub(&b.0.mul(&a.1))
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for kk in 0..n {
                for l in 0..n {
                    if i == j || i == kk || i == l || j == kk || j == l || kk == l {
                        continue;
                    }
                    let num = bracket(&proj[i], &proj[kk]).mul(&bracket(&proj[j], &proj[l]));
                    let den = bracket(&proj[i], &proj[l]).mul(&bracket(&proj[j], &proj[kk]));
                    out.push(num.mul(&den.inv()).to_string());
                }
            }
        }
    }
    out.sort();
    Some(out)
}

/// All roots of a monic irreducible q over F_p inside the extension field
/// presented by `ctx` (of degree a multiple of deg q), by equal-degree
/// splitting with a deterministic candidate sequence.
fn roots_in_extension(q: &FpPoly, ctx: &Arc<ResidueCtx>) -> Vec<ResidueElement> {
    let p = q.p;
    let one = ResidueElement::one_of(ctx);
    let lifted = Poly::new(
        q.coeffs()
            .iter()
            .map(|&c| ResidueElement::from_poly(ctx, &FpPoly::constant(p, c)))
            .collect::<Vec<_>>(),
    );
    let mut stack = vec![lifted];
    let mut out = Vec::new();
    let order = ctx.order();
    let e = (&order - BigUint::one()) / BigUint::from(2u32);
    let mut counter = 1u64;
    while let Some(g) = stack.pop() {
        let dg = g.degree().unwrap();
        if dg == 0 {
            continue;
        }
        if dg == 1 {
            out.push(g.coeffs[0].neg().mul(&g.coeffs[1].inv()));
            continue;
        }
        loop {
            counter += 1;
            let delta = ResidueElement::from_poly(
                ctx,
                &FpPoly::new(
                    p,
                    (0..8)
                        .map(|i| (counter.wrapping_mul(0x9e3779b9).rotate_left(i * 7)) % p)
                        .collect(),
                ),
            );
            let cand = Poly::new(vec![delta, one.clone()]);
            let s = cand.pow_mod(&e, &g).sub(&Poly::constant(one.clone()));
            let h = s.gcd(&g);
            if let Some(dh) = h.degree() {
                if dh >= 1 && dh < dg {
                    let rest = g.div_rem(&h).0;
                    stack.push(h);
                    stack.push(rest);
                    break;
                }
            }
        }
    }
    out.sort_by_key(|r| r.to_string());
    out
}

/// Good reduction of a reduced divisor at v: the reduction of the primitive
/// form stays squarefree of unchanged degree (the binary-form formulation
/// accounts for collisions at infinity).
pub fn divisor_good_reduction_at(d: &ReducedDivisor, v: &Place) -> Result<bool, DivisorError> {
    let vform = v_normalize(d.form(), v)?;
    let red = reduce_form_at(&vform, v)?;
    Ok(residue_squarefree(&red))
}

/// A solution (u, v) of u + v = 1 in S-units. Over function fields
/// `exceptional` marks pairs lying in (K^x)^p, the subset excluded by the
/// unit-equation finiteness statement.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitPair {
    pub u: FieldElement,
    pub v: FieldElement,
    pub exceptional: bool,
}

/// Exhaustive solution of u + v = 1 over the exponent-bounded S-units.
pub fn solve_unit_equation(base: BaseField, places: &[Place], bound: u32) -> Vec<UnitPair> {
    let units = s_ring_units(base, places, bound);
    let one = FieldElement::one_in(base);
    let mut out = Vec::new();
    for u in &units {
        let v = one.sub(u);
        if v.is_zero() || !is_s_unit(&v, places) {
            continue;
        }
        let exceptional = match base {
            BaseField::Rationals => false,
            BaseField::FunctionField { .. } => u.is_pth_power() && v.is_pth_power(),
        };
        out.push(UnitPair {
            u: u.clone(),
            v,
            exceptional,
        });
    }
    out.sort_by(|a, b| (&a.u, &a.v).cmp(&(&b.u, &b.v)));
    out
}

/// S-unit test by stripping the places of S from numerator and denominator.
/// Over F_p(t) the infinite place is counted as belonging to S, matching the
/// generator convention of `s_ring_units`.
pub fn is_s_unit(x: &FieldElement, places: &[Place]) -> bool {
    if x.is_zero() {
        return false;
    }
    match x {
        FieldElement::Rat(r) => {
            let mut num = r.numer().magnitude().clone();
            let mut den = r.denom().magnitude().clone();
            for v in places {
                if let Place::Prime(p) = v {
                    num = factor::strip_factor(&num, p).1;
                    den = factor::strip_factor(&den, p).1;
                }
            }
            num.is_one() && den.is_one()
        }
        FieldElement::Fn(f) => {
            let mut num = f.num().clone();
            let mut den = f.den().clone();
            for v in places {
                if let Place::FnFinite(pi) = v {
                    loop {
                        let (q, r) = num.div_rem(pi);
                        if !r.is_zero() {
                            break;
                        }
                        num = q;
                    }
                    loop {
                        let (q, r) = den.div_rem(pi);
                        if !r.is_zero() {
                            break;
                        }
                        den = q;
                    }
                }
            }
            num.is_constant() && den.is_constant()
        }
    }
}

/// All lambda with {0, 1, infinity, lambda} of good reduction outside S:
/// lambda and 1 - lambda must both be S-units. Every returned value is
/// re-verified against the divisor reduction test at 20 places outside S.
pub fn enumerate_gr_lambdas(
    base: BaseField,
    places: &[Place],
    bound: u32,
) -> Result<Vec<FieldElement>, DivisorError> {
    let sols = solve_unit_equation(base, places, bound);
    let mut lambdas: Vec<FieldElement> = sols.into_iter().map(|s| s.u).collect();
    lambdas.sort();
    lambdas.dedup();
    let sample = sample_places_outside(base, places, 20);
    for l in &lambdas {
        let zero = FieldElement::zero_in(base);
        let one = FieldElement::one_in(base);
        let d = ReducedDivisor::from_points(&[
            ProjPoint::from_affine(zero),
            ProjPoint::from_affine(one),
            ProjPoint::infinity(base),
            ProjPoint::from_affine(l.clone()),
        ])?;
        for v in &sample {
            assert!(
                divisor_good_reduction_at(&d, v)?,
                "lambda {l} fails good reduction at {v}"
            );
        }
    }
    Ok(lambdas)
}

/// The first `count` finite places not in `avoid`, in canonical order.
pub fn sample_places_outside(base: BaseField, avoid: &[Place], count: usize) -> Vec<Place> {
    let mut out = Vec::new();
    match base {
        BaseField::Rationals => {
            let mut n = BigUint::from(2u32);
            while out.len() < count {
                if factor::is_prime(&n) {
                    let v = Place::Prime(n.clone());
                    if !avoid.contains(&v) {
                        out.push(v);
                    }
                }
                n += 1u32;
            }
        }
        BaseField::FunctionField { p } => {
            let mut deg = 1usize;
            'outer: loop {
                let mut counter = vec![0u64; deg];
                loop {
                    let mut coeffs = counter.clone();
                    coeffs.push(1);
                    let f = FpPoly::new(p, coeffs);
                    if f.is_irreducible() {
                        let v = Place::FnFinite(f);
                        if !avoid.contains(&v) {
                            out.push(v);
                            if out.len() >= count {
                                break 'outer;
                            }
                        }
                    }
                    let mut i = 0;
                    loop {
                        if i == deg {
                            break;
                        }
                        counter[i] += 1;
                        if counter[i] < p {
                            break;
                        }
                        counter[i] = 0;
                        i += 1;
                    }
                    if counter.iter().all(|&x| x == 0) {
                        break;
                    }
                }
                deg += 1;
            }
        }
    }
    out
}
