//! Rational self-maps of P^1: critical data, the differential discriminant,
//! good-reduction and differential-good-reduction tests, conjugation,
//! multiplier invariants, relative invariance, and admissibility witnesses.

use crate::exactalg::{valuation, BaseField, FieldElement, Place};
use crate::forms::{
    self, act, discriminant, primitive_model, radical, reduce_form_at, resultant,
    residue_squarefree, v_normalize, wronskian, BinaryForm, Form, FormsError, GroupElement,
};
use crate::fppoly::FpPoly;
use crate::ring::{resultant_slices, Coeff, Poly};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("component degrees differ")]
    DegreeMismatch,
    #[error("degree must be at least 2")]
    DegreeTooSmall,
    #[error("resultant vanishes: the pair does not define a morphism")]
    DegenerateMap,
    #[error("inseparable map: the Wronskian vanishes identically")]
    InseparableMap,
    #[error("map is not differentially separated")]
    NotDifferentiallySeparated,
    #[error("fixed-point form is degenerate")]
    DegenerateFixedPoints,
    #[error("relative-invariance exponents disagree between trials")]
    InconsistentExponents,
    #[error("operation requires a function-field base")]
    NotFunctionField,
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// A rational map [F0 : F1] of degree d >= 2 with nonzero resultant, stored
/// as the unique jointly primitive model (integral coefficients, unit
/// content across both forms, canonical leading normalization).
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMapModel {
    f0: BinaryForm,
    f1: BinaryForm,
    res: FieldElement,
}

/// Wronskian, branch form, critical form and radical, with distinct-point
/// counts.
#[derive(Clone, Debug)]
pub struct CriticalData {
    pub wronskian: BinaryForm,
    pub branch: BinaryForm,
    pub critical_form: BinaryForm,
    pub critical_radical: BinaryForm,
    pub ram_point_count: usize,
    pub branch_point_count: usize,
    pub critical_point_count: usize,
}

/// The differential discriminant and its radical-level variant.
#[derive(Clone, Debug)]
pub struct DdiffReport {
    pub delta_diff: FieldElement,
    pub delta_diff_reduced: FieldElement,
    pub differentially_separated: bool,
}

/// Elementary symmetric functions of the fixed-point multipliers, plus the
/// degree-2 invariants of the closed formula.
#[derive(Clone, Debug)]
pub struct MultiplierInvariants {
    pub sigma: Vec<FieldElement>,
    pub rho: FieldElement,
    pub tau1: Option<FieldElement>,
    pub theta1: Option<FieldElement>,
    pub theta2: Option<FieldElement>,
    pub degenerate_fixed_points: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DgrMethod {
    Valuation,
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdmissibilityWitness {
    WitnessedAdmissible,
    IsotrivialitySuspected,
}

/// Verdict of the model-level test together with an optional bounded search
/// over integral conjugations.
#[derive(Clone, Debug)]
pub struct DgrSearchReport {
    pub model_level: bool,
    pub search_bound: i64,
    pub search_level: bool,
    pub witness: Option<[[i64; 2]; 2]>,
}

impl RationalMapModel {
    pub fn new(f0: BinaryForm, f1: BinaryForm) -> Result<Self, MapError> {
        if f0.degree() != f1.degree() {
            return Err(MapError::DegreeMismatch);
        }
        if f0.degree() < 2 {
            return Err(MapError::DegreeTooSmall);
        }
        if f0.is_zero() || f1.is_zero() {
            return Err(MapError::DegenerateMap);
        }
        let (f0, f1) = joint_primitive(&f0, &f1)?;
        let res = resultant(&f0, &f1)?;
        if res.is_zero() {
            return Err(MapError::DegenerateMap);
        }
        Ok(RationalMapModel { f0, f1, res })
    }

    pub fn from_int_coeffs(base: BaseField, f0: &[i64], f1: &[i64]) -> Result<Self, MapError> {
        RationalMapModel::new(
            BinaryForm::from_ints(base, f0),
            BinaryForm::from_ints(base, f1),
        )
    }

    pub fn degree(&self) -> usize {
        self.f0.degree()
    }

    pub fn base(&self) -> BaseField {
        self.f0.coeff(0).base()
    }

    pub fn forms(&self) -> (&BinaryForm, &BinaryForm) {
        (&self.f0, &self.f1)
    }

    /// The cached resultant of the primitive model.
    pub fn resultant(&self) -> &FieldElement {
        &self.res
    }

    /// Image of a projective point.
    pub fn apply(&self, x0: &FieldElement, x1: &FieldElement) -> (FieldElement, FieldElement) {
        (self.f0.eval(x0, x1), self.f1.eval(x0, x1))
    }

    /// The bihomogeneous graph form g = y1 F0 - y0 F1 of bidegree (d, 1).
    pub fn graph_form(&self) -> GraphForm {
        GraphForm {
            f0: self.f0.clone(),
            f1: self.f1.clone(),
        }
    }

    /// x1 F0 - x0 F1, the degree d+1 form cutting out the fixed points.
    pub fn fixed_point_form(&self) -> BinaryForm {
        self.f0.times_x1().sub(&self.f1.times_x0())
    }

    pub fn wronskian(&self) -> BinaryForm {
        wronskian(&self.f0, &self.f1).expect("degrees agree")
    }

    /// Res_x(y1 F0 - y0 F1, w_F): the branch form, of degree 2d-2 in
    /// (y0, y1).
    pub fn branch_form(&self) -> Result<BinaryForm, MapError> {
        let w = self.wronskian();
        if w.is_zero() {
            return Err(MapError::InseparableMap);
        }
        Ok(pair_branch_form(&self.f0, &self.f1, &w))
    }

    pub fn critical_data(&self) -> Result<CriticalData, MapError> {
        let w = self.wronskian();
        if w.is_zero() {
            return Err(MapError::InseparableMap);
        }
        let b = pair_branch_form(&self.f0, &self.f1, &w);
        let critical_form = b.mul(&w);
        let critical_radical = primitive_model(&radical(&critical_form)?)?;
        let ram = radical(&w)?.degree();
        let br = radical(&b)?.degree();
        let crit = critical_radical.degree();
        debug_assert!(crit <= 4 * self.degree() - 4);
        Ok(CriticalData {
            wronskian: w,
            branch: b,
            critical_form,
            critical_radical,
            ram_point_count: ram,
            branch_point_count: br,
            critical_point_count: crit,
        })
    }

    pub fn differential_discriminant(&self) -> Result<DdiffReport, MapError> {
        let data = self.critical_data()?;
        let delta_diff = discriminant(&data.critical_form)?;
        let delta_diff_reduced = if data.critical_radical.degree() >= 2 {
            discriminant(&data.critical_radical)?
        } else {
            // a single critical point can never collide with itself
            FieldElement::one_in(self.base())
        };
        Ok(DdiffReport {
            differentially_separated: !delta_diff.is_zero(),
            delta_diff,
            delta_diff_reduced,
        })
    }

    /// Jointly v-normalized forms (minimum coefficient valuation zero across
    /// the pair). For finite places the stored model already is.
    pub fn v_model(&self, v: &Place) -> (BinaryForm, BinaryForm) {
        let min = self
            .f0
            .coeffs()
            .iter()
            .chain(self.f1.coeffs())
            .filter_map(|c| valuation(c, v).finite())
            .min()
            .expect("nonzero model");
        if min == 0 {
            return (self.f0.clone(), self.f1.clone());
        }
        let s = forms::uniformizer(v).pow_i64(-min);
        (self.f0.scale(&s), self.f1.scale(&s))
    }

    /// Model-level good reduction: the resultant of the v-normalized model
    /// is a v-unit.
    pub fn good_reduction_at(&self, v: &Place) -> bool {
        let (g0, g1) = self.v_model(v);
        let r = resultant(&g0, &g1).expect("nonzero forms");
        valuation(&r, v).is_zero()
    }

    /// Differential good reduction at v, model-level. `Direct` tests the
    /// three defining clauses; `Valuation` tests ord_v of the differential
    /// discriminant and requires a differentially separated map.
    pub fn dgr_at(&self, v: &Place, method: DgrMethod) -> Result<bool, MapError> {
        let w = self.wronskian();
        if w.is_zero() {
            return Err(MapError::InseparableMap);
        }
        match method {
            DgrMethod::Valuation => {
                let (g0, g1) = self.v_model(v);
                let dd = pair_ddiff(&g0, &g1)?;
                if dd.is_zero() {
                    return Err(MapError::NotDifferentiallySeparated);
                }
                Ok(valuation(&dd, v).is_zero())
            }
            DgrMethod::Direct => {
                if !self.good_reduction_at(v) {
                    return Ok(false);
                }
                // separability of the reduced map: the reduction of w_F of
                // the v-model must not vanish
                let (g0, g1) = self.v_model(v);
                let wv = wronskian(&g0, &g1)?;
                let wred = forms::reduce_integral_form_at(&wv, v)?;
                if wred.is_zero() {
                    return Ok(false);
                }
                // the critical locus stays etale: the reduced critical
                // radical is squarefree of unchanged degree
                let data = self.critical_data()?;
                let rv = v_normalize(&data.critical_radical, v)?;
                let rred = reduce_form_at(&rv, v)?;
                Ok(residue_squarefree(&rred))
            }
        }
    }

    /// A scalar whose support contains every place where the reduction of
    /// the (primitive squarefree) form acquires a repeated point, free of
    /// the degree-dependent constants of the Sylvester discriminant
    /// convention: Res(core, core') covers collisions among the affine
    /// roots and with the point at infinity, and the constant coefficient
    /// covers collisions with the zero point.
    pub(crate) fn collision_scalar(r: &BinaryForm) -> FieldElement {
        let base = r.coeff(0).base();
        let one = FieldElement::one_in(base);
        let (_, e0, core) = forms::strip_monomials(r);
        if core.len() <= 1 {
            return one;
        }
        let n = core.len() - 1;
        let deriv: Vec<FieldElement> = (0..n).map(|i| core[i].mul_usize(n - i)).collect();
        let mut out = if deriv.iter().all(|c| c.is_zero()) {
            // inseparable core: out of range under the characteristic
            // hypotheses; fall back to every nonzero coefficient
            debug_assert!(false, "inseparable critical radical");
            core.iter()
                .filter(|c| !c.is_zero())
                .fold(one.clone(), |acc, c| acc.mul(c))
        } else {
            resultant_slices(&core, &deriv)
        };
        if e0 > 0 {
            out = out.mul(&core[n]);
        }
        out
    }

    /// The finite set of places where the direct test fails: the support of
    /// resultant * wronskian-content * collision-scalar, filtered by the
    /// direct test, plus the infinite place over function fields.
    pub fn bad_places(&self) -> Result<Vec<Place>, MapError> {
        let data = self.critical_data()?;
        let wcontent = forms::content(&data.wronskian)?;
        let n = self
            .res
            .mul(&wcontent)
            .mul(&Self::collision_scalar(&data.critical_radical));
        let mut candidates = crate::exactalg::support(&n);
        if let BaseField::FunctionField { p } = self.base() {
            candidates.push(Place::fn_infinity(p));
        }
        candidates.sort();
        candidates.dedup();
        let mut out = Vec::new();
        for v in candidates {
            if !self.dgr_at(&v, DgrMethod::Direct)? {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Conjugation f -> gamma o f o gamma^{-1} through the adjugate action;
    /// the scalar part of `gamma` is ignored. Dynamics-preserving.
    pub fn conjugate(&self, gamma: &GroupElement) -> Result<Self, MapError> {
        let g = GroupElement::new(FieldElement::one_in(self.base()), gamma.m.clone())?;
        let (h0, h1) = act(&(self.f0.clone(), self.f1.clone()), &g);
        RationalMapModel::new(h0, h1)
    }

    /// Exact elementary symmetric functions of the d+1 fixed-point
    /// multipliers, computed by resultant elimination without any root
    /// extraction. For degree 2 the invariants rho, tau1, theta1, theta2 of
    /// the closed discriminant formula are included.
    pub fn multiplier_invariants(&self) -> Result<MultiplierInvariants, MapError> {
        let phi = self.fixed_point_form();
        assert!(!phi.is_zero(), "fixed-point form of a morphism is nonzero");
        // repeated fixed points, detected through the radical so that the
        // test stays meaningful in every characteristic
        let degenerate = radical(&phi)?.degree() < phi.degree();
        if degenerate && matches!(self.base(), BaseField::FunctionField { .. }) {
            return Err(MapError::DegenerateFixedPoints);
        }
        // move every fixed point into the affine chart
        let work = if !phi.coeff(0).is_zero() {
            self.clone()
        } else {
            let q = self.non_fixed_affine_value(&phi);
            let mat = GroupElement::from_matrix([
                [
                    FieldElement::zero_in(self.base()),
                    FieldElement::one_in(self.base()),
                ],
                [FieldElement::one_in(self.base()), q.neg()],
            ])?;
            self.conjugate(&mat)?
        };
        let sigma = work.sigma_affine();
        let rho = self.res.clone();
        let (tau1, theta1, theta2) = if self.degree() == 2 {
            let tau1 = sigma[0].mul(&rho);
            let two_rho = rho.mul_usize(2);
            let six_rho = rho.mul_usize(6);
            (
                Some(tau1.clone()),
                Some(tau1.sub(&two_rho)),
                Some(tau1.add(&six_rho)),
            )
        } else {
            (None, None, None)
        };
        Ok(MultiplierInvariants {
            sigma,
            rho,
            tau1,
            theta1,
            theta2,
            degenerate_fixed_points: degenerate,
        })
    }

    fn non_fixed_affine_value(&self, phi: &BinaryForm) -> FieldElement {
        let base = self.base();
        let one = FieldElement::one_in(base);
        let mut candidates: Vec<FieldElement> = Vec::new();
        match base {
            BaseField::Rationals => {
                for k in 0..=(self.degree() as i64 + 2) {
                    candidates.push(FieldElement::from_i64(base, k));
                }
            }
            BaseField::FunctionField { p } => {
                for k in 0..p.min(self.degree() as u64 + 2) {
                    candidates.push(FieldElement::from_i64(base, k as i64));
                }
                let t = FieldElement::from_fppoly(FpPoly::gen(p));
                let mut shift = t.clone();
                for _ in 0..=(self.degree() + 2) {
                    candidates.push(shift.clone());
                    shift = shift.add(&t);
                }
            }
        }
        for q in candidates {
            if !phi.eval(&q, &one).is_zero() {
                return q;
            }
        }
        unreachable!("fewer fixed points than candidates");
    }

    /// Multiplier characteristic polynomial for a model with no fixed point
    /// at infinity, as ratios of resultants.
    fn sigma_affine(&self) -> Vec<FieldElement> {
        let d = self.degree();
        let zero = FieldElement::zero_in(self.base());
        // ascending univariate coefficients
        let n_poly = Poly::new(self.f0.coeffs().iter().rev().cloned().collect::<Vec<_>>());
        let d_poly = Poly::new(self.f1.coeffs().iter().rev().cloned().collect::<Vec<_>>());
        debug_assert_eq!(d_poly.degree(), Some(d), "pole at infinity after move");
        // phi = N - z D, degree exactly d+1
        let mut shifted = vec![zero.clone()];
        shifted.extend(d_poly.coeffs.iter().cloned());
        let phi = n_poly.sub(&Poly::new(shifted));
        debug_assert_eq!(phi.degree(), Some(d + 1));
        let e_poly = n_poly
            .derivative()
            .mul(&d_poly)
            .sub(&n_poly.mul(&d_poly.derivative()));
        let d2 = d_poly.mul(&d_poly);
        // descending coefficient sequences over K[w]
        let phi_desc: Vec<Poly<FieldElement>> = (0..=(d + 1))
            .map(|i| Poly::constant(phi.coeff(d + 1 - i, &zero)))
            .collect();
        let big_desc: Vec<Poly<FieldElement>> = (0..=(2 * d))
            .map(|i| {
                let j = 2 * d - i;
                Poly::new(vec![e_poly.coeff(j, &zero).neg(), d2.coeff(j, &zero)])
            })
            .collect();
        let r = resultant_slices(&phi_desc, &big_desc);
        // r is a polynomial of degree d+1 in w with leading coefficient
        // Res(phi, D^2) != 0
        let top = r.coeff(d + 1, &zero);
        debug_assert!(!top.is_zero());
        let mut sigma = Vec::with_capacity(d + 1);
        let mut sign = true; // (-1)^i for i = 1
        for i in 1..=(d + 1) {
            let c = r.coeff(d + 1 - i, &zero).mul(&top.inv());
            sigma.push(if sign { c.neg() } else { c });
            sign = !sign;
        }
        sigma
    }

    /// Sufficient non-isotriviality witness over F_p(t): some multiplier
    /// invariant has nonzero t-derivative.
    pub fn admissibility_witness(&self) -> Result<AdmissibilityWitness, MapError> {
        if !matches!(self.base(), BaseField::FunctionField { .. }) {
            return Err(MapError::NotFunctionField);
        }
        let inv = self.multiplier_invariants()?;
        for s in &inv.sigma {
            if !s.t_derivative().is_zero() {
                return Ok(AdmissibilityWitness::WitnessedAdmissible);
            }
        }
        Ok(AdmissibilityWitness::IsotrivialitySuspected)
    }

    /// Model-level test plus a bounded search over conjugations by integral
    /// matrices with entries in [-bound, bound].
    pub fn dgr_with_search(
        &self,
        v: &Place,
        method: DgrMethod,
        bound: i64,
    ) -> Result<DgrSearchReport, MapError> {
        let model_level = self.dgr_at(v, method)?;
        if model_level {
            return Ok(DgrSearchReport {
                model_level,
                search_bound: bound,
                search_level: true,
                witness: None,
            });
        }
        let base = self.base();
        let range = -bound..=bound;
        for a in range.clone() {
            for b in range.clone() {
                for c in range.clone() {
                    for d in range.clone() {
                        if a * d - b * c == 0 {
                            continue;
                        }
                        let gamma =
                            GroupElement::from_int_matrix(base, [[a, b], [c, d]])?;
                        let conj = self.conjugate(&gamma)?;
                        if conj.dgr_at(v, method)? {
                            return Ok(DgrSearchReport {
                                model_level,
                                search_bound: bound,
                                search_level: true,
                                witness: Some([[a, b], [c, d]]),
                            });
                        }
                    }
                }
            }
        }
        Ok(DgrSearchReport {
            model_level,
            search_bound: bound,
            search_level: false,
            witness: None,
        })
    }

    pub fn to_display_string(&self) -> String {
        format!("[{} : {}]", self.f0, self.f1)
    }
}

/// The graph form y1 F0(x0,x1) - y0 F1(x0,x1).
#[derive(Clone, Debug)]
pub struct GraphForm {
    f0: BinaryForm,
    f1: BinaryForm,
}

impl GraphForm {
    pub fn bidegree(&self) -> (usize, usize) {
        (self.f0.degree(), 1)
    }

    pub fn eval(
        &self,
        x: (&FieldElement, &FieldElement),
        y: (&FieldElement, &FieldElement),
    ) -> FieldElement {
        y.1.mul(&self.f0.eval(x.0, x.1))
            .sub(&y.0.mul(&self.f1.eval(x.0, x.1)))
    }
}

/// Joint primitive normalization of a pair under one common scalar.
fn joint_primitive(
    f0: &BinaryForm,
    f1: &BinaryForm,
) -> Result<(BinaryForm, BinaryForm), MapError> {
    let mut all = f0.coeffs().to_vec();
    all.extend(f1.coeffs().iter().cloned());
    let joint = Form::new(all);
    let c = forms::content(&joint)?;
    let inv = c.inv();
    Ok((f0.scale(&inv), f1.scale(&inv)))
}

/// Branch form of a raw pair given its Wronskian, by a Sylvester determinant
/// over K[s] at y = (s, 1), then rehomogenized.
pub fn pair_branch_form(f0: &BinaryForm, f1: &BinaryForm, w: &BinaryForm) -> BinaryForm {
    let d = f0.degree();
    let m = 2 * d - 2;
    let zero = FieldElement::zero_in(f0.coeff(0).base());
    // G_s = F0 - s F1 with coefficients linear in s
    let g_desc: Vec<Poly<FieldElement>> = (0..=d)
        .map(|i| Poly::new(vec![f0.coeff(i).clone(), f1.coeff(i).neg()]))
        .collect();
    let w_desc: Vec<Poly<FieldElement>> = w
        .coeffs()
        .iter()
        .map(|c| Poly::constant(c.clone()))
        .collect();
    let q = resultant_slices(&g_desc, &w_desc);
    // coefficient of y0^(m-i) y1^i is q_{m-i}
    BinaryForm::new((0..=m).map(|i| q.coeff(m - i, &zero)).collect())
}

/// Raw differential discriminant disc(b_F w_F) of a pair, without any model
/// normalization (the object satisfying the closed formulas).
pub fn pair_ddiff(f0: &BinaryForm, f1: &BinaryForm) -> Result<FieldElement, MapError> {
    let w = wronskian(f0, f1)?;
    if w.is_zero() {
        return Err(MapError::InseparableMap);
    }
    let b = pair_branch_form(f0, f1, &w);
    Ok(discriminant(&b.mul(&w))?)
}

/// Empirically determines the exponent pair (n, m) in the relative
/// invariance of the differential discriminant under (alpha, Gamma), and
/// verifies its constancy over the requested number of trials.
pub fn verify_relative_invariance(
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<(i64, i64), MapError> {
    assert!(d >= 2 && trials >= 1);
    let base = BaseField::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample_pair = |rng: &mut ChaCha8Rng| -> (BinaryForm, BinaryForm) {
        loop {
            let f0 = BinaryForm::from_ints(
                base,
                &(0..=d).map(|_| rng.gen_range(-9..=9)).collect::<Vec<i64>>(),
            );
            let f1 = BinaryForm::from_ints(
                base,
                &(0..=d).map(|_| rng.gen_range(-9..=9)).collect::<Vec<i64>>(),
            );
            if f0.is_zero() || f1.is_zero() {
                continue;
            }
            if resultant(&f0, &f1).map(|r| r.is_zero()).unwrap_or(true) {
                continue;
            }
            match pair_ddiff(&f0, &f1) {
                Ok(dd) if !dd.is_zero() => return (f0, f1),
                _ => continue,
            }
        }
    };
    let two = FieldElement::from_i64(base, 2);
    let ord2 = |x: &FieldElement| -> i64 {
        valuation(x, &Place::prime_u64(2).unwrap())
            .finite()
            .unwrap()
    };
    let ord3 = |x: &FieldElement| -> i64 {
        valuation(x, &Place::prime_u64(3).unwrap())
            .finite()
            .unwrap()
    };
    // pin n by pure scalars alpha = 2
    let mut n: Option<i64> = None;
    for _ in 0..3 {
        let (f0, f1) = sample_pair(&mut rng);
        let g = GroupElement::new(
            two.clone(),
            GroupElement::identity(base).m,
        )?;
        let (h0, h1) = act(&(f0.clone(), f1.clone()), &g);
        let ratio = pair_ddiff(&h0, &h1)?.div(&pair_ddiff(&f0, &f1)?);
        let e = ord2(&ratio);
        if ratio != two.pow_i64(e) {
            return Err(MapError::InconsistentExponents);
        }
        match n {
            None => n = Some(e),
            Some(prev) if prev != e => return Err(MapError::InconsistentExponents),
            _ => {}
        }
    }
    // pin m by determinant-3 matrices
    let mut m: Option<i64> = None;
    for trial in 0..3 {
        let (f0, f1) = sample_pair(&mut rng);
        let mat = match trial % 3 {
            0 => [[3, 0], [0, 1]],
            1 => [[1, 2], [1, 5]],
            _ => [[3, 1], [0, 1]],
        };
        debug_assert_eq!(mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0], 3);
        let g = GroupElement::from_int_matrix(base, mat)?;
        let (h0, h1) = act(&(f0.clone(), f1.clone()), &g);
        let ratio = pair_ddiff(&h0, &h1)?.div(&pair_ddiff(&f0, &f1)?);
        let e = ord3(&ratio);
        let three = FieldElement::from_i64(base, 3);
        if ratio != three.pow_i64(e) {
            return Err(MapError::InconsistentExponents);
        }
        match m {
            None => m = Some(e),
            Some(prev) if prev != e => return Err(MapError::InconsistentExponents),
            _ => {}
        }
    }
    let (n, m) = (n.unwrap(), m.unwrap());
    // mixed random trials must satisfy the law exactly
    for _ in 0..trials {
        let (f0, f1) = sample_pair(&mut rng);
        let a_exp: i64 = rng.gen_range(1..=2);
        let alpha = two.pow_i64(a_exp);
        let mat = loop {
            let mat: [[i64; 2]; 2] = [
                [rng.gen_range(-4..=4), rng.gen_range(-4..=4)],
                [rng.gen_range(-4..=4), rng.gen_range(-4..=4)],
            ];
            if mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0] != 0 {
                break mat;
            }
        };
        let g = GroupElement::new(
            alpha.clone(),
            GroupElement::from_int_matrix(base, mat)?.m,
        )?;
        let det = g.det();
        let (h0, h1) = act(&(f0.clone(), f1.clone()), &g);
        let lhs = pair_ddiff(&h0, &h1)?;
        let rhs = alpha
            .pow_i64(n)
            .mul(&det.pow_i64(m))
            .mul(&pair_ddiff(&f0, &f1)?);
        if lhs != rhs {
            return Err(MapError::InconsistentExponents);
        }
    }
    Ok((n, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{ResidueCtx, ResidueElement};

    fn qmap(f0: &[i64], f1: &[i64]) -> RationalMapModel {
        RationalMapModel::from_int_coeffs(BaseField::Rationals, f0, f1).unwrap()
    }

    fn qi(n: i64) -> FieldElement {
        FieldElement::from_i64(BaseField::Rationals, n)
    }

    fn pl(p: u64) -> Place {
        Place::prime_u64(p).unwrap()
    }

    #[test]
    fn graph_and_fixed_point_form() {
        let f = qmap(&[1, 0, 0], &[0, 0, 1]); // z^2
        let g = f.graph_form();
        assert_eq!(g.bidegree(), (2, 1));
        // g([1:1], [1:1]) = F0(1,1) - F1(1,1) = 0 (the point z=1 is fixed)
        let one = qi(1);
        assert!(g.eval((&one, &one), (&one, &one)).is_zero());
        // fixed-point form = x0^2 x1 - x0 x1^2 = x0 x1 (x0 - x1)
        let phi = f.fixed_point_form();
        assert_eq!(
            phi,
            BinaryForm::from_ints(BaseField::Rationals, &[0, 1, -1, 0])
        );
        // zeros exactly at 0, infinity, 1
        let zero = qi(0);
        assert!(phi.eval(&zero, &one).is_zero());
        assert!(phi.eval(&one, &zero).is_zero());
        assert!(phi.eval(&one, &one).is_zero());
        assert!(!phi.eval(&qi(2), &one).is_zero());
    }

    #[test]
    fn branch_form_of_squaring_map() {
        let f = qmap(&[1, 0, 0], &[0, 0, 1]);
        let b = f.branch_form().unwrap();
        assert_eq!(b.degree(), 2);
        // proportional to y0 y1: branch points are 0 and infinity
        assert!(b.proportional_to(&BinaryForm::from_ints(BaseField::Rationals, &[0, 1, 0])));
    }

    #[test]
    fn branch_form_of_diagonal_quadratic() {
        // [a x0^2 + c x1^2 : d x0^2 + f x1^2] has branch points [c:f], [a:d]
        for (a, c, d, f) in [(1i64, 2, 3, 4), (2, -1, 1, 3)] {
            let map = qmap(&[a, 0, c], &[d, 0, f]);
            let b = map.branch_form().unwrap();
            assert_eq!(b.degree(), 2);
            assert!(b.eval(&qi(c), &qi(f)).is_zero());
            assert!(b.eval(&qi(a), &qi(d)).is_zero());
        }
    }

    #[test]
    fn critical_data_squaring_map() {
        let f = qmap(&[1, 0, 0], &[0, 0, 1]);
        let data = f.critical_data().unwrap();
        assert_eq!(data.ram_point_count, 2);
        assert_eq!(data.branch_point_count, 2);
        assert_eq!(data.critical_point_count, 2);
        // delta_diff vanishes on repeated critical points
        let dd = f.differential_discriminant().unwrap();
        assert!(dd.delta_diff.is_zero());
        assert!(!dd.differentially_separated);
    }

    #[test]
    fn generic_quadratic_is_differentially_separated() {
        // z^2 + 1 has critical points 0, inf and branch points 1, inf...
        // that one is a polynomial (inf fixed critical), so use a generic one
        let f = qmap(&[1, 1, 1], &[2, 0, 1]);
        let data = f.critical_data().unwrap();
        assert_eq!(data.critical_point_count, 4);
        let dd = f.differential_discriminant().unwrap();
        assert!(dd.differentially_separated);
    }

    #[test]
    fn good_reduction_examples() {
        let f = qmap(&[1, 0, 0], &[0, 0, 1]);
        for p in [2u64, 3, 5, 97] {
            assert!(f.good_reduction_at(&pl(p)));
        }
        let g = qmap(&[2, 0, 0], &[0, 0, 1]); // resultant 4
        assert!(!g.good_reduction_at(&pl(2)));
        assert!(g.good_reduction_at(&pl(3)));
    }

    #[test]
    fn dgr_direct_examples() {
        // f(z) = (z^2 - 1)/(2z): critical radical x0^2 + x1^2
        let f = qmap(&[1, 0, -1], &[0, 2, 0]);
        let data = f.critical_data().unwrap();
        assert!(data
            .critical_radical
            .proportional_to(&BinaryForm::from_ints(BaseField::Rationals, &[1, 0, 1])));
        assert!(!f.dgr_at(&pl(2), DgrMethod::Direct).unwrap());
        assert!(f.dgr_at(&pl(5), DgrMethod::Direct).unwrap());
        // z^3 in characteristic 3 reduces inseparably
        let g = qmap(&[1, 0, 0, 0], &[0, 0, 0, 1]);
        assert!(!g.dgr_at(&pl(3), DgrMethod::Direct).unwrap());
        assert!(g.dgr_at(&pl(5), DgrMethod::Direct).unwrap());
    }

    #[test]
    fn bad_places_examples() {
        let f = qmap(&[1, 0, -1], &[0, 2, 0]);
        let bads = f.bad_places().unwrap();
        assert_eq!(bads, vec![pl(2)]);
        // the squaring map is inseparable mod 2 (w = 4 x0 x1), so 2 is bad
        let sq = qmap(&[1, 0, 0], &[0, 0, 1]);
        assert_eq!(sq.bad_places().unwrap(), vec![pl(2)]);
        // and the direct test confirms D.G.R. at every odd prime sampled
        for p in [3u64, 5, 7, 11, 13, 97] {
            assert!(sq.dgr_at(&pl(p), DgrMethod::Direct).unwrap());
        }
    }

    #[test]
    fn conjugation_preserves_multipliers() {
        let f = qmap(&[1, 1, 1], &[2, 0, 1]);
        let id = GroupElement::identity(BaseField::Rationals);
        assert_eq!(f.conjugate(&id).unwrap(), f);
        let base_inv = f.multiplier_invariants().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 20 {
            let mat: [[i64; 2]; 2] = [
                [rng.gen_range(-5..=5), rng.gen_range(-5..=5)],
                [rng.gen_range(-5..=5), rng.gen_range(-5..=5)],
            ];
            if mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0] == 0 {
                continue;
            }
            let gamma = GroupElement::from_int_matrix(BaseField::Rationals, mat).unwrap();
            let inv = f.conjugate(&gamma).unwrap().multiplier_invariants().unwrap();
            assert_eq!(inv.sigma, base_inv.sigma);
            checked += 1;
        }
        // the swap fixes the squaring map
        let sq = qmap(&[1, 0, 0], &[0, 0, 1]);
        let swap = GroupElement::from_int_matrix(BaseField::Rationals, [[0, 1], [1, 0]]).unwrap();
        assert_eq!(sq.conjugate(&swap).unwrap(), sq);
    }

    #[test]
    fn multiplier_examples() {
        // z^2: multipliers {0, 0, 2} at {0, inf, 1}
        let sq = qmap(&[1, 0, 0], &[0, 0, 1]);
        let inv = sq.multiplier_invariants().unwrap();
        assert_eq!(inv.sigma, vec![qi(2), qi(0), qi(0)]);
        assert!(!inv.degenerate_fixed_points);
        // z^2 - z: fixed points {0, 2, inf}, multipliers {-1, 3, 0}
        let f = qmap(&[1, -1, 0], &[0, 0, 1]);
        let inv = f.multiplier_invariants().unwrap();
        assert_eq!(inv.sigma, vec![qi(2), qi(-3), qi(0)]);
        // theta identities hold structurally
        let g = qmap(&[1, 1, 1], &[2, 0, 1]);
        let inv = g.multiplier_invariants().unwrap();
        let tau1 = inv.tau1.clone().unwrap();
        let rho = inv.rho.clone();
        assert_eq!(inv.theta1.clone().unwrap(), tau1.sub(&rho.mul_usize(2)));
        assert_eq!(inv.theta2.clone().unwrap(), tau1.add(&rho.mul_usize(6)));
    }

    #[test]
    fn quadratic_ddiff_closed_formula_spot_check() {
        // delta_diff = c * rho^8 theta1^2 theta2^2 with one convention
        // constant across samples
        let samples = [
            qmap(&[1, 1, 1], &[2, 0, 1]),
            qmap(&[1, -2, 3], &[1, 1, 0]),
            qmap(&[2, 1, -1], &[0, 1, 2]),
        ];
        let mut constant: Option<FieldElement> = None;
        for f in &samples {
            let dd = f.differential_discriminant().unwrap();
            let inv = f.multiplier_invariants().unwrap();
            let rhs = inv
                .rho
                .pow_i64(8)
                .mul(&inv.theta1.unwrap().pow_i64(2))
                .mul(&inv.theta2.unwrap().pow_i64(2));
            assert!(!rhs.is_zero());
            let c = dd.delta_diff.div(&rhs);
            match &constant {
                None => constant = Some(c),
                Some(prev) => assert_eq!(prev, &c),
            }
        }
    }

    #[test]
    fn relative_invariance_degree_two() {
        let (n, m) = verify_relative_invariance(2, 5, 42).unwrap();
        // the alpha-weight equals the coefficient degree of delta_diff
        assert_eq!(n, 48);
        assert!(m != 0);
    }

    #[test]
    fn admissibility_examples() {
        let ff = BaseField::function_field(5).unwrap();
        // z^2 over F_5(t): constant invariants
        let f = RationalMapModel::from_int_coeffs(ff, &[1, 0, 0], &[0, 0, 1]).unwrap();
        assert_eq!(
            f.admissibility_witness().unwrap(),
            AdmissibilityWitness::IsotrivialitySuspected
        );
        // z^2 + t: sigma depends on t
        let t = FieldElement::from_fppoly(FpPoly::gen(5));
        let one = FieldElement::one_in(ff);
        let zero = FieldElement::zero_in(ff);
        let f0 = BinaryForm::new(vec![one.clone(), zero.clone(), t.clone()]);
        let f1 = BinaryForm::new(vec![zero.clone(), zero.clone(), one.clone()]);
        let g = RationalMapModel::new(f0, f1).unwrap();
        assert_eq!(
            g.admissibility_witness().unwrap(),
            AdmissibilityWitness::WitnessedAdmissible
        );
        // z^2 + t^5: every invariant is a 5th power
        let t5 = t.pow_i64(5);
        let f0 = BinaryForm::new(vec![one.clone(), zero.clone(), t5]);
        let f1 = BinaryForm::new(vec![zero.clone(), zero.clone(), one.clone()]);
        let h = RationalMapModel::new(f0, f1).unwrap();
        assert_eq!(
            h.admissibility_witness().unwrap(),
            AdmissibilityWitness::IsotrivialitySuspected
        );
    }

    #[test]
    fn branch_is_image_of_ramification_over_small_fields() {
        // for maps with constant coefficients over F_p(t), realize the
        // closure as F_{p^k} and check the root sets pointwise
        for p in [5u64, 7, 13] {
            let base = BaseField::function_field(p).unwrap();
            let maps = [
                RationalMapModel::from_int_coeffs(base, &[1, 1, 1], &[2, 0, 1]),
                RationalMapModel::from_int_coeffs(base, &[1, 0, -1], &[0, 2, 0]),
                RationalMapModel::from_int_coeffs(base, &[0, 1, 2], &[1, 0, 1]),
            ];
            for f in maps.into_iter().flatten() {
                let data = match f.critical_data() {
                    Ok(d) => d,
                    Err(_) => continue,
                };
                let k = 2; // roots of degree-2 forms live in F_{p^2}
                let ctx = ResidueCtx::extension(p, k);
                let to_res = |c: &FieldElement| {
                    ResidueElement::from_poly(&ctx, c.as_fn().num())
                        .mul(&ResidueElement::from_poly(&ctx, c.as_fn().den()).inv())
                };
                let wred: Vec<ResidueElement> =
                    data.wronskian.coeffs().iter().map(&to_res).collect();
                let bred: Vec<ResidueElement> =
                    data.branch.coeffs().iter().map(&to_res).collect();
                let f0red: Vec<ResidueElement> = f.forms().0.coeffs().iter().map(&to_res).collect();
                let f1red: Vec<ResidueElement> = f.forms().1.coeffs().iter().map(&to_res).collect();
                let wform = Form::new(wred);
                let bform = Form::new(bred);
                let f0form = Form::new(f0red);
                let f1form = Form::new(f1red);
                // enumerate P^1(F_{p^2})
                let mut points = Vec::new();
                let one = ResidueElement::one_of(&ctx);
                for a in 0..p {
                    for b in 0..p {
                        let z = ResidueElement::from_poly(
                            &ctx,
                            &FpPoly::new(p, vec![a, b]),
                        );
                        points.push((z, one.clone()));
                    }
                }
                points.push((one.clone(), ResidueElement::zero_of(&ctx)));
                let wroots: Vec<_> = points
                    .iter()
                    .filter(|(x, y)| wform.eval(x, y).is_zero())
                    .collect();
                let broots: Vec<_> = points
                    .iter()
                    .filter(|(x, y)| bform.eval(x, y).is_zero())
                    .collect();
                // every image of a ramification point is a branch root
                for (x, y) in &wroots {
                    let ix = f0form.eval(x, y);
                    let iy = f1form.eval(x, y);
                    assert!(bform.eval(&ix, &iy).is_zero());
                }
                // and every branch root arises this way
                for (bx, by) in &broots {
                    let mut hit = false;
                    for (x, y) in &wroots {
                        let ix = f0form.eval(x, y);
                        let iy = f1form.eval(x, y);
                        // projective equality
                        if ix.mul(by).sub(&iy.mul(bx)).is_zero() {
                            hit = true;
                            break;
                        }
                    }
                    assert!(hit, "branch root with no ramification preimage");
                }
            }
        }
    }

    #[test]
    fn dgr_search_reports_levels() {
        let f = qmap(&[1, 0, -1], &[0, 2, 0]);
        let rep = f.dgr_with_search(&pl(5), DgrMethod::Direct, 1).unwrap();
        assert!(rep.model_level && rep.search_level);
        let rep2 = f.dgr_with_search(&pl(2), DgrMethod::Direct, 1).unwrap();
        assert!(!rep2.model_level);
    }
}
