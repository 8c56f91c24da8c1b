//! Homogeneous binary forms: resultants and discriminants by Sylvester
//! determinant, Wronskians, the Gm x GL2 action, radicals, primitive integral
//! models, and coefficient-wise reduction at a place.

use crate::exactalg::{
    reduce_at, valuation, BaseField, ExactError, FieldElement, Place, ResidueElement, Valuation,
};
use crate::fppoly::FpPoly;
use crate::ring::{resultant_slices, squarefree_part, Coeff, Poly};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("zero form where a nonzero form is required")]
    ZeroForm,
    #[error("degree too small")]
    DegreeTooSmall,
    #[error("degree mismatch")]
    DegreeMismatch,
    #[error("form is not primitive and v-integral")]
    NotPrimitive,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A homogeneous form of fixed formal degree in (x0, x1). `coeffs[i]` is the
/// coefficient of x0^(d-i) x1^i; the all-zero vector is the zero form of that
/// degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form<F> {
    coeffs: Vec<F>,
}

pub type BinaryForm = Form<FieldElement>;
pub type ResidueForm = Form<ResidueElement>;

impl<F: Coeff> Form<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        Form { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &F {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn ctx(&self) -> &F {
        &self.coeffs[0]
    }

    pub fn eval(&self, x0: &F, x1: &F) -> F {
        let d = self.degree();
        let mut pow0 = Vec::with_capacity(d + 1);
        let mut p0 = self.ctx().one();
        for _ in 0..=d {
            pow0.push(p0.clone());
            p0 = p0.mul(x0);
        }
        let mut acc = self.ctx().zero();
        let mut p1 = self.ctx().one();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&pow0[d - i]).mul(&p1));
            p1 = p1.mul(x1);
        }
        acc
    }

    pub fn scale(&self, c: &F) -> Self {
        Form {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Form {
            coeffs: self.coeffs.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in form sum");
        Form {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let zero = self.ctx().zero();
        let mut out = vec![zero; self.degree() + rhs.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Form { coeffs: out }
    }

    /// d/dx0; a form of formal degree d-1.
    pub fn derivative_x0(&self) -> Self {
        let d = self.degree();
        assert!(d >= 1);
        Form {
            coeffs: (0..d).map(|i| self.coeffs[i].mul_usize(d - i)).collect(),
        }
    }

    /// d/dx1; a form of formal degree d-1.
    pub fn derivative_x1(&self) -> Self {
        let d = self.degree();
        assert!(d >= 1);
        Form {
            coeffs: (1..=d).map(|i| self.coeffs[i].mul_usize(i)).collect(),
        }
    }

    pub fn times_x0(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.push(self.ctx().zero());
        Form { coeffs: c }
    }

    pub fn times_x1(&self) -> Self {
        let mut c = vec![self.ctx().zero()];
        c.extend(self.coeffs.iter().cloned());
        Form { coeffs: c }
    }

    /// Substitutes (a*x0 + b*x1, c*x0 + d*x1) for (x0, x1).
    pub fn substitute_linear(&self, a: &F, b: &F, c: &F, d: &F) -> Self {
        let deg = self.degree();
        let lin0 = Form::new(vec![a.clone(), b.clone()]);
        let lin1 = Form::new(vec![c.clone(), d.clone()]);
        let one = Form::new(vec![self.ctx().one()]);
        let mut pow0 = vec![one.clone()];
        let mut pow1 = vec![one];
        for i in 1..=deg {
            pow0.push(pow0[i - 1].mul(&lin0));
            pow1.push(pow1[i - 1].mul(&lin1));
        }
        let zero = self.ctx().zero();
        let mut out = Form {
            coeffs: vec![zero; deg + 1],
        };
        for (i, cf) in self.coeffs.iter().enumerate() {
            if cf.is_zero() {
                continue;
            }
            let term = pow0[deg - i].mul(&pow1[i]).scale(cf);
            debug_assert_eq!(term.degree(), deg);
            out = out.add(&term);
        }
        out
    }

    /// Proportionality up to a nonzero scalar.
    pub fn proportional_to(&self, rhs: &Self) -> bool {
        if self.degree() != rhs.degree() {
            return false;
        }
        let i = match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => i,
            None => return rhs.is_zero(),
        };
        if rhs.coeffs[i].is_zero() {
            return false;
        }
        let r = rhs.coeffs[i].mul(&self.coeffs[i].inv());
        self.scale(&r) == *rhs
    }
}

impl BinaryForm {
    pub fn from_ints(base: BaseField, c: &[i64]) -> Self {
        Form::new(c.iter().map(|&x| FieldElement::from_i64(base, x)).collect())
    }

    pub fn base(&self) -> BaseField {
        self.coeffs[0].base()
    }
}

/// The Sylvester-determinant resultant of two nonzero forms, with the
/// coefficients of `f` occupying the first deg(g) rows.
pub fn resultant<F: Coeff>(f: &Form<F>, g: &Form<F>) -> Result<F, FormsError> {
    if f.is_zero() || g.is_zero() {
        return Err(FormsError::ZeroForm);
    }
    Ok(resultant_slices(f.coeffs(), g.coeffs()))
}

/// Res(dG/dx0, dG/dx1) under the fixed Sylvester convention. Zero exactly
/// when G has a repeated root over the closure; in characteristic p both
/// partials may vanish identically, which also reports zero (inseparable).
pub fn discriminant<F: Coeff>(g: &Form<F>) -> Result<F, FormsError> {
    if g.is_zero() {
        return Err(FormsError::ZeroForm);
    }
    if g.degree() < 2 {
        return Err(FormsError::DegreeTooSmall);
    }
    let g0 = g.derivative_x0();
    let g1 = g.derivative_x1();
    if g0.is_zero() && g1.is_zero() {
        return Ok(g.ctx().zero());
    }
    Ok(resultant_slices(g0.coeffs(), g1.coeffs()))
}

/// The classically normalized discriminant: the raw convention divided by
/// (-1)^(m(m-1)/2) m^(m-2). Requires m invertible in the field.
pub fn discriminant_classical<F: Coeff>(g: &Form<F>) -> Result<F, FormsError> {
    let m = g.degree();
    let raw = discriminant(g)?;
    let one = g.ctx().one();
    let mut scale = one.clone();
    for _ in 0..m.saturating_sub(2) {
        scale = scale.mul(&one.mul_usize(m));
    }
    let mut out = raw.mul(&scale.inv());
    if (m * (m - 1) / 2) % 2 == 1 {
        out = out.neg();
    }
    Ok(out)
}

/// det(dF_i/dx_j); degree 2d-2, or the zero form in characteristic p when
/// the pair is inseparable.
pub fn wronskian<F: Coeff>(f0: &Form<F>, f1: &Form<F>) -> Result<Form<F>, FormsError> {
    if f0.degree() != f1.degree() {
        return Err(FormsError::DegreeMismatch);
    }
    if f0.degree() < 1 {
        return Err(FormsError::DegreeTooSmall);
    }
    let a = f0.derivative_x0().mul(&f1.derivative_x1());
    let b = f0.derivative_x1().mul(&f1.derivative_x0());
    Ok(a.sub(&b))
}

/// A group element (alpha, Gamma) of Gm x GL2.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub alpha: FieldElement,
    pub m: [[FieldElement; 2]; 2],
}

impl GroupElement {
    pub fn new(alpha: FieldElement, m: [[FieldElement; 2]; 2]) -> Result<Self, FormsError> {
        let g = GroupElement { alpha, m };
        if g.alpha.is_zero() || g.det().is_zero() {
            return Err(FormsError::ZeroForm);
        }
        Ok(g)
    }

    pub fn identity(base: BaseField) -> Self {
        let one = FieldElement::one_in(base);
        let zero = FieldElement::zero_in(base);
        GroupElement {
            alpha: one.clone(),
            m: [[one.clone(), zero.clone()], [zero, one]],
        }
    }

    pub fn from_matrix(m: [[FieldElement; 2]; 2]) -> Result<Self, FormsError> {
        let base = m[0][0].base();
        GroupElement::new(FieldElement::one_in(base), m)
    }

    pub fn from_int_matrix(base: BaseField, m: [[i64; 2]; 2]) -> Result<Self, FormsError> {
        let f = |x: i64| FieldElement::from_i64(base, x);
        GroupElement::from_matrix([[f(m[0][0]), f(m[0][1])], [f(m[1][0]), f(m[1][1])]])
    }

    pub fn det(&self) -> FieldElement {
        self.m[0][0]
            .mul(&self.m[1][1])
            .sub(&self.m[0][1].mul(&self.m[1][0]))
    }
}

/// The action F^(alpha, Gamma) = [alpha F0^Gamma, alpha F1^Gamma] with
/// [F0^Gamma, F1^Gamma] = Gamma o [F0, F1] o Gamma^adj. Composition order:
/// acting by Gamma2 then Gamma1 equals acting by Gamma1*Gamma2.
pub fn act(pair: &(BinaryForm, BinaryForm), g: &GroupElement) -> (BinaryForm, BinaryForm) {
    let (f0, f1) = pair;
    assert_eq!(f0.degree(), f1.degree(), "unequal degrees in map pair");
    let [[a, b], [c, d]] = &g.m;
    // adjugate substitution on the inside
    let g0 = f0.substitute_linear(d, &b.neg(), &c.neg(), a);
    let g1 = f1.substitute_linear(d, &b.neg(), &c.neg(), a);
    // the linear action of Gamma on the outside, scaled by alpha
    let h0 = g0.scale(a).add(&g1.scale(b)).scale(&g.alpha);
    let h1 = g0.scale(c).add(&g1.scale(d)).scale(&g.alpha);
    (h0, h1)
}

/// Strips x0- and x1-multiplicities: G = x1^e1 * x0^e0 * core with core
/// having nonzero end coefficients.
pub(crate) fn strip_monomials<F: Coeff>(g: &Form<F>) -> (usize, usize, Vec<F>) {
    let mut c = g.coeffs().to_vec();
    let mut e1 = 0;
    while c.first().map_or(false, |x| x.is_zero()) {
        c.remove(0);
        e1 += 1;
    }
    let mut e0 = 0;
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
        e0 += 1;
    }
    (e1, e0, c)
}

/// The squarefree part of a nonzero form, first nonzero coefficient
/// normalized to 1. In characteristic p, p-th-power factors are extracted by
/// root-taking in the coefficient field.
pub fn radical<F: Coeff>(g: &Form<F>) -> Result<Form<F>, FormsError> {
    if g.is_zero() {
        return Err(FormsError::ZeroForm);
    }
    let (e1, e0, core) = strip_monomials(g);
    // read ascending in z, where a root z corresponds to the point [z : 1]
    let asc: Vec<F> = core.iter().rev().cloned().collect();
    let sf = squarefree_part(&Poly::new(asc));
    let mut coeffs: Vec<F> = sf.coeffs.iter().rev().cloned().collect();
    if coeffs.is_empty() {
        coeffs.push(g.ctx().one());
    }
    let mut out = Form { coeffs };
    if e0 > 0 {
        out = out.times_x0();
    }
    if e1 > 0 {
        out = out.times_x1();
    }
    let i = out.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let inv = out.coeffs[i].inv();
    Ok(out.scale(&inv))
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b / a.gcd(b)).abs()
}

/// The scalar c with G = c * primitive_model(G): over Q the rational content
/// with the sign of the first nonzero coefficient, over F_p(t) the F_p[t]
/// content normalized so the primitive part has monic first coefficient.
pub fn content(g: &BinaryForm) -> Result<FieldElement, FormsError> {
    if g.is_zero() {
        return Err(FormsError::ZeroForm);
    }
    match g.coeffs[0].base() {
        BaseField::Rationals => {
            let mut den = BigInt::one();
            for c in g.coeffs() {
                den = lcm_big(&den, c.as_rat().denom());
            }
            let mut num = BigInt::zero();
            for c in g.coeffs() {
                let v = c.as_rat() * num_rational::BigRational::from(den.clone());
                debug_assert!(v.denom().is_one());
                num = num.gcd(v.numer());
            }
            let first = g.coeffs().iter().find(|c| !c.is_zero()).unwrap().as_rat();
            if first.numer().sign() == Sign::Minus {
                num = -num;
            }
            Ok(FieldElement::from_ratio(num, den))
        }
        BaseField::FunctionField { p } => {
            let mut den = FpPoly::one(p);
            for c in g.coeffs() {
                let d = c.as_fn().den();
                den = den.mul(&d.div_rem(&den.gcd(d)).0);
            }
            let mut num = FpPoly::zero(p);
            let denf = FieldElement::from_fppoly(den.clone());
            for c in g.coeffs() {
                let v = c.mul(&denf);
                let vf = v.as_fn();
                debug_assert!(vf.den().is_one());
                num = num.gcd(vf.num());
            }
            // unit normalization so the primitive first coefficient is monic
            let first = g.coeffs().iter().find(|c| !c.is_zero()).unwrap();
            let lead = first.mul(&denf);
            let unit = lead.as_fn().num().lc();
            num = num.scale(unit);
            Ok(FieldElement::fn_ratio(num, den))
        }
    }
}

/// The unique primitive integral representative of a nonzero form.
pub fn primitive_model(g: &BinaryForm) -> Result<BinaryForm, FormsError> {
    let c = content(g)?;
    Ok(g.scale(&c.inv()))
}

/// Scales a nonzero form so its minimum coefficient valuation at v is zero.
pub fn v_normalize(g: &BinaryForm, v: &Place) -> Result<BinaryForm, FormsError> {
    if g.is_zero() {
        return Err(FormsError::ZeroForm);
    }
    let min = g
        .coeffs()
        .iter()
        .filter_map(|c| valuation(c, v).finite())
        .min()
        .unwrap();
    if min == 0 {
        return Ok(g.clone());
    }
    let uni = uniformizer(v);
    Ok(g.scale(&uni.pow_i64(-min)))
}

pub fn uniformizer(v: &Place) -> FieldElement {
    match v {
        Place::Prime(p) => FieldElement::from_bigint(BigInt::from_biguint(Sign::Plus, p.clone())),
        Place::FnFinite(pi) => FieldElement::from_fppoly(pi.clone()),
        Place::FnInfinity { p } => FieldElement::fn_ratio(FpPoly::one(*p), FpPoly::gen(*p)),
    }
}

/// Coefficient-wise reduction of a nonzero v-primitive form; the result is a
/// nonzero form of the same formal degree.
pub fn reduce_form_at(g: &BinaryForm, v: &Place) -> Result<ResidueForm, FormsError> {
    if g.is_zero() {
        return Err(FormsError::ZeroForm);
    }
    let mut min = None;
    for c in g.coeffs() {
        if let Valuation::Finite(n) = valuation(c, v) {
            min = Some(min.map_or(n, |m: i64| m.min(n)));
        }
    }
    if min != Some(0) {
        return Err(FormsError::NotPrimitive);
    }
    let mut out = Vec::with_capacity(g.coeffs().len());
    for c in g.coeffs() {
        out.push(reduce_at(c, v)?);
    }
    Ok(Form::new(out))
}

/// Coefficient-wise reduction of a v-integral form, zero result allowed.
pub fn reduce_integral_form_at(g: &BinaryForm, v: &Place) -> Result<ResidueForm, FormsError> {
    let mut out = Vec::with_capacity(g.coeffs().len());
    for c in g.coeffs() {
        out.push(reduce_at(c, v)?);
    }
    Ok(Form::new(out))
}

/// Whether a residue form is squarefree (of unchanged degree, which for
/// forms is automatic).
pub fn residue_squarefree(g: &ResidueForm) -> bool {
    if g.is_zero() {
        return false;
    }
    radical(g).map(|r| r.degree() == g.degree()).unwrap_or(false)
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let mono = match (d - i, i) {
                (0, 0) => String::new(),
                (a, 0) if a == 1 => "x0".to_string(),
                (a, 0) => format!("x0^{a}"),
                (0, b) if b == 1 => "x1".to_string(),
                (0, b) => format!("x1^{b}"),
                (a, b) => {
                    let l = if a == 1 { "x0".into() } else { format!("x0^{a}") };
                    let r = if b == 1 { "x1".into() } else { format!("x1^{b}") };
                    format!("{l}*{r}")
                }
            };
            if mono.is_empty() {
                write!(out, "{c}")?;
            } else if c.is_one() {
                write!(out, "{mono}")?;
            } else {
                write!(out, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ResidueCtx;
    use std::collections::BTreeMap;

    fn qi(n: i64) -> FieldElement {
        FieldElement::from_i64(BaseField::Rationals, n)
    }

    fn qform(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(BaseField::Rationals, c)
    }

    fn fform(p: u64, c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(BaseField::FunctionField { p }, c)
    }

    /// Test-only polynomial in the variables (a, c, d, f), the independent
    /// symbolic oracle for the diagonal-quadratic resultant.
    #[derive(Clone, Debug, PartialEq, Default)]
    struct Sym(BTreeMap<[u8; 4], i64>);

    impl Sym {
        fn var(i: usize) -> Sym {
            let mut e = [0u8; 4];
            e[i] = 1;
            Sym(BTreeMap::from([(e, 1)]))
        }
        fn add(&self, rhs: &Sym) -> Sym {
            let mut out = self.0.clone();
            for (e, c) in &rhs.0 {
                *out.entry(*e).or_insert(0) += c;
            }
            out.retain(|_, c| *c != 0);
            Sym(out)
        }
        fn neg(&self) -> Sym {
            Sym(self.0.iter().map(|(e, c)| (*e, -c)).collect())
        }
        fn mul(&self, rhs: &Sym) -> Sym {
            let mut out: BTreeMap<[u8; 4], i64> = BTreeMap::new();
            for (e1, c1) in &self.0 {
                for (e2, c2) in &rhs.0 {
                    let mut e = *e1;
                    for k in 0..4 {
                        e[k] += e2[k];
                    }
                    *out.entry(e).or_insert(0) += c1 * c2;
                }
            }
            out.retain(|_, c| *c != 0);
            Sym(out)
        }
        /// Cofactor-expansion determinant, independent of the Bareiss path.
        fn det(m: &[Vec<Sym>]) -> Sym {
            let n = m.len();
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = Sym::default();
            for j in 0..n {
                let mut minor = Vec::new();
                for r in m.iter().skip(1) {
                    let mut row = Vec::new();
                    for (k, v) in r.iter().enumerate() {
                        if k != j {
                            row.push(v.clone());
                        }
                    }
                    minor.push(row);
                }
                let t = m[0][j].mul(&Sym::det(&minor));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.add(&t.neg()) };
            }
            acc
        }
    }

    #[test]
    fn resultant_basic_examples() {
        let x0 = qform(&[1, 0]);
        let x1 = qform(&[0, 1]);
        assert_eq!(resultant(&x0, &x1).unwrap(), qi(1));
        let f = qform(&[1, 2, 3]);
        assert!(resultant(&f, &f).unwrap().is_zero());
        assert!(matches!(
            resultant(&qform(&[0, 0]), &x1),
            Err(FormsError::ZeroForm)
        ));
    }

    #[test]
    fn diagonal_quadratic_resultant_against_symbolic_oracle() {
        // Oracle: expand the 4x4 Sylvester determinant of
        // (a*x0^2 + c*x1^2, d*x0^2 + f*x1^2) by cofactors over Z[a,c,d,f].
        let (a, c, d, f) = (Sym::var(0), Sym::var(1), Sym::var(2), Sym::var(3));
        let zero = Sym::default();
        let m = vec![
            vec![a.clone(), zero.clone(), c.clone(), zero.clone()],
            vec![zero.clone(), a.clone(), zero.clone(), c.clone()],
            vec![d.clone(), zero.clone(), f.clone(), zero.clone()],
            vec![zero.clone(), d.clone(), zero.clone(), f.clone()],
        ];
        let det = Sym::det(&m);
        // (af - cd)^2, settling the labeling question: under this Sylvester
        // convention the diagonal pair [a:c | d:f] has resultant (af-cd)^2.
        let af_cd = a.mul(&f).add(&c.mul(&d).neg());
        assert_eq!(det, af_cd.mul(&af_cd));
        // and the implementation agrees with the oracle on numeric samples
        for (av, cv, dv, fv) in [(1i64, 2, 3, 4), (2, -1, 5, 7), (-3, 2, 1, -6)] {
            let lhs = resultant(&qform(&[av, 0, cv]), &qform(&[dv, 0, fv])).unwrap();
            let want = av * fv - cv * dv;
            assert_eq!(lhs, qi(want * want));
        }
    }

    #[test]
    fn resultant_is_multiplicative() {
        let samples = [
            qform(&[1, 2]),
            qform(&[3, -1, 2]),
            qform(&[1, 0, 0, 5]),
            qform(&[2, 1]),
        ];
        for f in &samples {
            for g in &samples {
                for h in &samples {
                    let lhs = resultant(f, &g.mul(h)).unwrap();
                    let rhs = resultant(f, g).unwrap().mul(&resultant(f, h).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        assert!(discriminant(&qform(&[1, 0, 0])).unwrap().is_zero()); // x0^2
        let four_points = qform(&[0, 1, 0, -1, 0]); // x0*x1*(x0-x1)*(x0+x1)
        assert!(!discriminant(&four_points).unwrap().is_zero());
        assert!(discriminant(&qform(&[0, 0, 1, 0, 0])).unwrap().is_zero()); // x0^2*x1^2
        assert!(matches!(
            discriminant(&qform(&[1, 1])),
            Err(FormsError::DegreeTooSmall)
        ));
    }

    #[test]
    fn discriminant_zero_iff_repeated_root_small_fields_exhaustive() {
        // All monic forms (top coefficient 1) of degree 2..=4 over F_p,
        // p <= 13: disc = 0 iff gcd(G, dG/dx0, dG/dx1) is nonconstant iff
        // the distinct-root count over the closure drops. The Sylvester
        // convention carries the factor m^(m-2), so degrees divisible by p
        // are excluded (the census hypothesis p > 2d-2 keeps that factor a
        // unit in every reduction this crate performs).
        for p in [2u64, 3, 5, 7, 11, 13] {
            let base = BaseField::FunctionField { p };
            for deg in 2usize..=4 {
                if deg >= 3 && deg as u64 % p == 0 {
                    continue;
                }
                let mut counter = vec![0u64; deg];
                loop {
                    let mut cs: Vec<i64> = vec![1];
                    cs.extend(counter.iter().map(|&x| x as i64));
                    let g = BinaryForm::from_ints(base, &cs);
                    let disc = discriminant(&g).unwrap();
                    // independent root-multiplicity oracle: factor the
                    // dehomogenized polynomial; the x1-multiplicity is the
                    // degree drop
                    let poly = FpPoly::new(p, cs.iter().rev().map(|&x| x as u64).collect());
                    let (_, factors) = poly.factor();
                    let mut repeated = factors.iter().any(|(_, e)| *e > 1);
                    if deg - poly.degree().unwrap() > 1 {
                        repeated = true;
                    }
                    let gcd_nonconst = {
                        let g0 = g.derivative_x0();
                        let g1 = g.derivative_x1();
                        if g0.is_zero() && g1.is_zero() {
                            true
                        } else {
                            let r = radical(&g).unwrap();
                            r.degree() < g.degree()
                        }
                    };
                    assert_eq!(disc.is_zero(), repeated, "disc vs roots at p={p} {cs:?}");
                    assert_eq!(disc.is_zero(), gcd_nonconst, "disc vs gcd at p={p} {cs:?}");
                    // advance counter
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
            }
        }
    }

    #[test]
    fn wronskian_examples() {
        let w = wronskian(&qform(&[1, 0, 0]), &qform(&[0, 0, 1])).unwrap();
        assert_eq!(w, qform(&[0, 4, 0])); // 4*x0*x1
        let w = wronskian(&qform(&[1, 0, 0]), &qform(&[0, 1, 0])).unwrap();
        assert_eq!(w, qform(&[2, 0, 0])); // 2*x0^2
        let w3 = wronskian(&fform(3, &[1, 0, 0, 0]), &fform(3, &[0, 0, 0, 1])).unwrap();
        assert!(w3.is_zero()); // inseparable in characteristic 3
        assert!(matches!(
            wronskian(&qform(&[1, 0]), &qform(&[1, 0, 0])),
            Err(FormsError::DegreeMismatch)
        ));
    }

    #[test]
    fn action_examples() {
        let base = BaseField::Rationals;
        let pair = (qform(&[1, 0, 0]), qform(&[0, 0, 1]));
        let id = GroupElement::identity(base);
        assert_eq!(act(&pair, &id), pair);
        // pure scalar
        let two = GroupElement::new(
            qi(2),
            [[qi(1), qi(0)], [qi(0), qi(1)]],
        )
        .unwrap();
        let (h0, h1) = act(&pair, &two);
        assert_eq!(h0, pair.0.scale(&qi(2)));
        assert_eq!(h1, pair.1.scale(&qi(2)));
        // conjugating z -> z^2 by the swap z -> 1/z fixes it
        let swap = GroupElement::from_int_matrix(base, [[0, 1], [1, 0]]).unwrap();
        let (h0, h1) = act(&pair, &swap);
        assert!(h0.proportional_to(&pair.0));
        assert!(h1.proportional_to(&pair.1));
        let r = resultant(&h0, &h1).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn radical_examples() {
        // x0^2*x1 -> x0*x1
        let r = radical(&qform(&[0, 1, 0, 0])).unwrap();
        assert_eq!(r, qform(&[0, 1, 0]));
        // squarefree fixed point
        let g = qform(&[1, 1, -2]);
        assert!(radical(&g).unwrap().proportional_to(&g));
        // x0^3 over F_3 -> x0 (p-th power extraction)
        let r = radical(&fform(3, &[1, 0, 0, 0])).unwrap();
        assert_eq!(r, fform(3, &[1, 0]));
    }

    #[test]
    fn radical_has_same_root_set_exhaustive_small_fields() {
        // over F_p realize roots through factorization: the radical must be
        // squarefree with exactly the distinct irreducible factors of G
        for p in [2u64, 3, 5] {
            let base = BaseField::FunctionField { p };
            for deg in 1usize..=4 {
                let mut counter = vec![0u64; deg + 1];
                loop {
                    let cs: Vec<i64> = counter.iter().map(|&x| x as i64).collect();
                    let g = BinaryForm::from_ints(base, &cs);
                    if !g.is_zero() {
                        let r = radical(&g).unwrap();
                        // dehomogenize both and compare distinct factors
                        let gp = FpPoly::new(p, cs.iter().rev().map(|&x| x as u64).collect());
                        let rp = FpPoly::new(
                            p,
                            r.coeffs()
                                .iter()
                                .rev()
                                .map(|c| c.as_fn().num().coeff(0))
                                .collect(),
                        );
                        let want: Vec<FpPoly> =
                            gp.factor().1.into_iter().map(|(q, _)| q).collect();
                        let got: Vec<FpPoly> = if rp.is_zero() {
                            Vec::new()
                        } else {
                            rp.factor().1.into_iter().map(|(q, e)| {
                                assert_eq!(e, 1, "radical not squarefree");
                                q
                            }).collect()
                        };
                        assert_eq!(got, want, "p={p} cs={cs:?}");
                        // x1-part: degree drop in the dehomogenization
                        let g_drop = g.degree() - gp.degree().unwrap_or(0);
                        let r_drop = r.degree() - rp.degree().unwrap_or(0);
                        assert_eq!(r_drop, usize::from(g_drop > 0));
                    }
                    let mut i = 0;
                    loop {
                        if i == deg + 1 {
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
            }
        }
    }

    #[test]
    fn primitive_model_examples() {
        // (1/2)x0^2 + (3/2)x1^2 -> x0^2 + 3 x1^2
        let g = Form::new(vec![
            FieldElement::from_ratio(BigInt::from(1), BigInt::from(2)),
            qi(0),
            FieldElement::from_ratio(BigInt::from(3), BigInt::from(2)),
        ]);
        assert_eq!(primitive_model(&g).unwrap(), qform(&[1, 0, 3]));
        // 6x0 + 9x1 -> 2x0 + 3x1
        assert_eq!(primitive_model(&qform(&[6, 9])).unwrap(), qform(&[2, 3]));
        // -4x0 - 6x1 -> 2x0 + 3x1 (sign normalization)
        assert_eq!(primitive_model(&qform(&[-4, -6])).unwrap(), qform(&[2, 3]));
        // over F_3(t): t*x0 + t^2*x1 -> x0 + t*x1
        let t = FieldElement::from_fppoly(FpPoly::gen(3));
        let g = Form::new(vec![t.clone(), t.mul(&t)]);
        let want = Form::new(vec![FieldElement::one_in(t.base()), t.clone()]);
        assert_eq!(primitive_model(&g).unwrap(), want);
    }

    #[test]
    fn reduce_form_examples() {
        let p3 = Place::prime_u64(3).unwrap();
        let r = reduce_form_at(&qform(&[1, 0, 3]), &p3).unwrap();
        assert!(!r.coeff(0).is_zero());
        assert!(r.coeff(2).is_zero());
        let p5 = Place::prime_u64(5).unwrap();
        let r = reduce_form_at(&qform(&[2, 3]), &p5).unwrap();
        assert!(!r.coeff(0).is_zero() && !r.coeff(1).is_zero());
        // x0 - t*x1 at (t-1) over F_3 -> x0 - x1
        let t = FieldElement::from_fppoly(FpPoly::gen(3));
        let g = Form::new(vec![FieldElement::one_in(t.base()), t.neg()]);
        let v = Place::fn_finite(FpPoly::from_signed(3, &[-1, 1])).unwrap();
        let r = reduce_form_at(&g, &v).unwrap();
        assert_eq!(r.coeff(1), &r.coeff(0).neg());
        // non-primitive input rejected
        assert!(matches!(
            reduce_form_at(&qform(&[3, 9]), &p3),
            Err(FormsError::NotPrimitive)
        ));
    }

    #[test]
    fn reduce_then_resultant_commutes() {
        let p7 = Place::prime_u64(7).unwrap();
        let pairs = [
            (qform(&[1, 2, 3]), qform(&[2, -1, 5])),
            (qform(&[1, 0, -4]), qform(&[3, 1])),
            (qform(&[2, 3, 0, 1]), qform(&[1, 1, 1])),
        ];
        for (f, g) in &pairs {
            let rf = reduce_form_at(f, &p7).unwrap();
            let rg = reduce_form_at(g, &p7).unwrap();
            let lhs = resultant_slices(rf.coeffs(), rg.coeffs());
            let res = resultant(f, g).unwrap();
            let ctx = ResidueCtx::of_place(&p7);
            let rhs = ResidueElement::from_int(&ctx, res.as_rat().numer());
            assert_eq!(lhs, rhs);
        }
    }
}
