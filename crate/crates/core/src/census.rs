//! Height-bounded census of rational maps with prescribed bad places,
//! classification by conjugation-invariant fingerprints, stabilization
//! evidence, the two-ramification-point infinite family, and the bounded
//! rigidity search.
//!
//! The sweep is deterministic: coefficient boxes are enumerated in
//! lexicographic order, workers own contiguous chunks, and results are
//! concatenated in chunk order, so output is byte-identical for any worker
//! count.

use crate::divisors::{cross_ratio_multiset, is_s_unit, ReducedDivisor};
use crate::exactalg::{BaseField, FieldElement, Place};
use crate::forms::{self, BinaryForm, Form, FormsError};
use crate::fppoly::FpPoly;
use crate::ratmap::{
    AdmissibilityWitness, DgrMethod, MapError, RationalMapModel,
};
use crate::ring::resultant_slices;
use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Divisor(#[from] crate::divisors::DivisorError),
}

/// Configuration of a census sweep.
#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub base: BaseField,
    pub degree: usize,
    pub height: u32,
    pub s: Vec<Place>,
    /// Keep only maps with at least 3 distinct ramification points.
    pub mstar: bool,
    /// Keep only differentially separated maps.
    pub dsep: bool,
    /// Keep only maps carrying an admissibility witness (function fields).
    pub admissible: bool,
    pub jobs: usize,
}

impl CensusConfig {
    pub fn validate(&self) -> Result<(), CensusError> {
        if self.degree < 2 {
            return Err(CensusError::Precondition("degree must be >= 2".into()));
        }
        if self.height < 1 {
            return Err(CensusError::Precondition("height must be >= 1".into()));
        }
        if let BaseField::FunctionField { p } = self.base {
            if p <= 2 * self.degree as u64 - 2 {
                return Err(CensusError::Precondition(format!(
                    "characteristic {p} must exceed 2d-2 = {}",
                    2 * self.degree - 2
                )));
            }
        }
        for v in &self.s {
            if v.base() != self.base {
                return Err(CensusError::Precondition(
                    "place set and base field disagree".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Conjugation-invariant fingerprint of a census entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    /// sigma_1 .. sigma_{d+1}, absent for degenerate fixed points in
    /// characteristic p.
    pub sigma: Option<Vec<String>>,
    pub critical_points: usize,
    /// Sorted 4-tuple cross-ratio multiset of the critical radical when it
    /// splits over K.
    pub critical_cross_ratios: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub differentially_separated: bool,
    pub degenerate_fixed_points: bool,
    pub admissible_witness: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRecord {
    pub model: String,
    pub degree: usize,
    pub bad_places: Vec<String>,
    pub fingerprint: Fingerprint,
    pub flags: Flags,
}

fn i128_resultant_is_safe(n: usize, height: u32) -> bool {
    let n = n as f64;
    let h = (height.max(1) as f64).log2();
    n * (0.5 * n.log2() + h) < 120.0
}

/// Runs the sweep and returns records in canonical (lexicographic) order.
pub fn census_run(cfg: &CensusConfig) -> Result<Vec<CensusRecord>, CensusError> {
    cfg.validate()?;
    match cfg.base {
        BaseField::Rationals => census_run_q(cfg),
        BaseField::FunctionField { .. } => census_run_fn(cfg),
    }
}

fn census_run_q(cfg: &CensusConfig) -> Result<Vec<CensusRecord>, CensusError> {
    let d = cfg.degree;
    let ncoef = 2 * d + 2;
    let h = cfg.height as i64;
    let radix = (2 * h + 1) as u128;
    let total: u128 = radix.pow(ncoef as u32);
    let jobs = cfg.jobs.max(1).min(64) as u128;
    let s_primes: Vec<BigUint> = cfg
        .s
        .iter()
        .filter_map(|v| match v {
            Place::Prime(p) => Some(p.clone()),
            _ => None,
        })
        .collect();
    let use_i128 = i128_resultant_is_safe(2 * d, cfg.height);
    let worker = |lo: u128, hi: u128| -> Result<Vec<CensusRecord>, CensusError> {
        let mut out = Vec::new();
        let mut coeffs = vec![0i64; ncoef];
        for idx in lo..hi {
            // decode digits, most significant first
            let mut rest = idx;
            for k in (0..ncoef).rev() {
                coeffs[k] = (rest % radix) as i64 - h;
                rest /= radix;
            }
            if let Some(rec) = census_candidate_q(cfg, &coeffs, &s_primes, use_i128)? {
                out.push(rec);
            }
        }
        Ok(out)
    };
    if jobs <= 1 {
        return worker(0, total);
    }
    let chunk = total / jobs + 1;
    let mut results: Vec<Result<Vec<CensusRecord>, CensusError>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for j in 0..jobs {
            let lo = j * chunk;
            let hi = ((j + 1) * chunk).min(total);
            if lo >= hi {
                continue;
            }
            handles.push(scope.spawn(move || worker(lo, hi)));
        }
        for hdl in handles {
            results.push(hdl.join().expect("census worker panicked"));
        }
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn census_candidate_q(
    cfg: &CensusConfig,
    coeffs: &[i64],
    s_primes: &[BigUint],
    use_i128: bool,
) -> Result<Option<CensusRecord>, CensusError> {
    let d = cfg.degree;
    // canonical representative: first nonzero coefficient positive
    match coeffs.iter().find(|&&c| c != 0) {
        None => return Ok(None),
        Some(&c) if c < 0 => return Ok(None),
        _ => {}
    }
    // jointly primitive
    let mut g = 0i64;
    for &c in coeffs {
        g = gcd_i64(g, c);
    }
    if g != 1 {
        return Ok(None);
    }
    let (f0c, f1c) = coeffs.split_at(d + 1);
    if f0c.iter().all(|&c| c == 0) || f1c.iter().all(|&c| c == 0) {
        return Ok(None);
    }
    // resultant filter with S-support test
    let res_big: BigInt = if use_i128 {
        let a: Vec<i128> = f0c.iter().map(|&c| c as i128).collect();
        let b: Vec<i128> = f1c.iter().map(|&c| c as i128).collect();
        BigInt::from(resultant_slices(&a, &b))
    } else {
        let a: Vec<BigInt> = f0c.iter().map(|&c| BigInt::from(c)).collect();
        let b: Vec<BigInt> = f1c.iter().map(|&c| BigInt::from(c)).collect();
        resultant_slices(&a, &b)
    };
    if num_traits::Zero::is_zero(&res_big) {
        return Ok(None);
    }
    let mut stripped = res_big.magnitude().clone();
    for p in s_primes {
        stripped = crate::factor::strip_factor(&stripped, p).1;
    }
    if !num_traits::One::is_one(&stripped) {
        return Ok(None);
    }
    // exact stage
    let model = RationalMapModel::from_int_coeffs(BaseField::Rationals, f0c, f1c)?;
    finish_candidate(cfg, model)
}

fn census_run_fn(cfg: &CensusConfig) -> Result<Vec<CensusRecord>, CensusError> {
    let d = cfg.degree;
    let p = match cfg.base {
        BaseField::FunctionField { p } => p,
        _ => unreachable!(),
    };
    let ncoef = 2 * d + 2;
    let per_coef: u128 = (p as u128).pow(cfg.height + 1);
    let total: u128 = per_coef.pow(ncoef as u32);
    let jobs = cfg.jobs.max(1).min(64) as u128;
    let s_finite: Vec<FpPoly> = cfg
        .s
        .iter()
        .filter_map(|v| match v {
            Place::FnFinite(pi) => Some(pi.clone()),
            _ => None,
        })
        .collect();
    let inf_in_s = cfg.s.iter().any(|v| matches!(v, Place::FnInfinity { .. }));
    let worker = |lo: u128, hi: u128| -> Result<Vec<CensusRecord>, CensusError> {
        let mut out = Vec::new();
        for idx in lo..hi {
            let mut rest = idx;
            let mut polys: Vec<FpPoly> = vec![FpPoly::zero(p); ncoef];
            for k in (0..ncoef).rev() {
                let code = (rest % per_coef) as u64;
                rest /= per_coef;
                let mut digits = Vec::with_capacity(cfg.height as usize + 1);
                let mut c = code;
                for _ in 0..=cfg.height {
                    digits.push(c % p);
                    c /= p;
                }
                polys[k] = FpPoly::new(p, digits);
            }
            if let Some(rec) = census_candidate_fn(cfg, &polys, &s_finite, inf_in_s)? {
                out.push(rec);
            }
        }
        Ok(out)
    };
    if jobs <= 1 {
        return worker(0, total);
    }
    let chunk = total / jobs + 1;
    let mut results: Vec<Result<Vec<CensusRecord>, CensusError>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for j in 0..jobs {
            let lo = j * chunk;
            let hi = ((j + 1) * chunk).min(total);
            if lo >= hi {
                continue;
            }
            handles.push(scope.spawn(move || worker(lo, hi)));
        }
        for hdl in handles {
            results.push(hdl.join().expect("census worker panicked"));
        }
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn census_candidate_fn(
    cfg: &CensusConfig,
    polys: &[FpPoly],
    s_finite: &[FpPoly],
    inf_in_s: bool,
) -> Result<Option<CensusRecord>, CensusError> {
    let d = cfg.degree;
    let p = polys[0].p;
    // canonical representative: first nonzero coefficient monic
    match polys.iter().find(|c| !c.is_zero()) {
        None => return Ok(None),
        Some(c) if c.lc() != 1 => return Ok(None),
        _ => {}
    }
    // jointly primitive over F_p[t]
    let mut g = FpPoly::zero(p);
    for c in polys {
        g = g.gcd(c);
    }
    if !g.is_constant() {
        return Ok(None);
    }
    let (f0c, f1c) = polys.split_at(d + 1);
    if f0c.iter().all(|c| c.is_zero()) || f1c.iter().all(|c| c.is_zero()) {
        return Ok(None);
    }
    let res = resultant_slices(f0c, f1c);
    if res.is_zero() {
        return Ok(None);
    }
    let mut stripped = res;
    for pi in s_finite {
        loop {
            let (q, r) = stripped.div_rem(pi);
            if !r.is_zero() {
                break;
            }
            stripped = q;
        }
    }
    if !stripped.is_constant() {
        return Ok(None);
    }
    let to_field = |c: &FpPoly| FieldElement::from_fppoly(c.clone());
    let f0 = Form::new(f0c.iter().map(to_field).collect::<Vec<_>>());
    let f1 = Form::new(f1c.iter().map(to_field).collect::<Vec<_>>());
    let model = match RationalMapModel::new(f0, f1) {
        Ok(m) => m,
        Err(MapError::DegenerateMap) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    // inseparable pairs carry no critical data and are out of scope
    if model.wronskian().is_zero() {
        return Ok(None);
    }
    if !inf_in_s && !model.dgr_at(&Place::fn_infinity(p), DgrMethod::Direct)? {
        return Ok(None);
    }
    finish_candidate(cfg, model)
}

/// Shared exact stage: filters, the bad-place test against S, and record
/// assembly.
fn finish_candidate(
    cfg: &CensusConfig,
    model: RationalMapModel,
) -> Result<Option<CensusRecord>, CensusError> {
    let data = match model.critical_data() {
        Ok(d) => d,
        Err(MapError::InseparableMap) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    if cfg.mstar && data.ram_point_count < 3 {
        return Ok(None);
    }
    let dd = model.differential_discriminant()?;
    if cfg.dsep && !dd.differentially_separated {
        return Ok(None);
    }
    // the support of this scalar contains every finite bad place; when it
    // is an S-unit the map is kept outright, otherwise the direct test
    // decides at each leftover place outside S
    let wcontent = forms::content(&data.wronskian)?;
    let coll = RationalMapModel::collision_scalar(&data.critical_radical);
    let n = model.resultant().mul(&wcontent).mul(&coll);
    if !is_s_unit(&n, &cfg.s) {
        for v in crate::exactalg::support(&n) {
            if cfg.s.contains(&v) {
                continue;
            }
            if !model.dgr_at(&v, DgrMethod::Direct)? {
                return Ok(None);
            }
        }
    }
    let mut bad = Vec::new();
    for v in &cfg.s {
        if !model.dgr_at(v, DgrMethod::Direct)? {
            bad.push(v.to_string());
        }
    }
    let (sigma, degenerate) = match model.multiplier_invariants() {
        Ok(inv) => (
            Some(inv.sigma.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
            inv.degenerate_fixed_points,
        ),
        Err(MapError::DegenerateFixedPoints) => (None, true),
        Err(e) => return Err(e.into()),
    };
    let critical_cross_ratios = match ReducedDivisor::from_form(&data.critical_radical) {
        Ok(div) if div.split() => Some(cross_ratio_multiset(div.roots().unwrap())),
        _ => None,
    };
    let admissible_witness = match model.base() {
        BaseField::Rationals => None,
        BaseField::FunctionField { .. } => match model.admissibility_witness() {
            Ok(w) => Some(w == AdmissibilityWitness::WitnessedAdmissible),
            Err(MapError::DegenerateFixedPoints) => Some(false),
            Err(e) => return Err(e.into()),
        },
    };
    if cfg.admissible && admissible_witness != Some(true) {
        return Ok(None);
    }
    Ok(Some(CensusRecord {
        model: model.to_display_string(),
        degree: cfg.degree,
        bad_places: bad,
        fingerprint: Fingerprint {
            sigma,
            critical_points: data.critical_point_count,
            critical_cross_ratios,
        },
        flags: Flags {
            differentially_separated: dd.differentially_separated,
            degenerate_fixed_points: degenerate,
            admissible_witness,
        },
    }))
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Stabilization evidence: the fingerprint sets of two sweeps of consecutive
/// heights, with the set difference and the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizationReport {
    pub height_low: u32,
    pub height_high: u32,
    pub records_low: usize,
    pub records_high: usize,
    pub fingerprints_low: usize,
    pub fingerprints_high: usize,
    pub new_fingerprints: Vec<Fingerprint>,
    pub stable: bool,
}

pub fn stabilization_report(
    cfg: &CensusConfig,
    height_low: u32,
    height_high: u32,
) -> Result<StabilizationReport, CensusError> {
    assert!(height_low < height_high);
    let mut cfg_low = cfg.clone();
    cfg_low.height = height_low;
    let mut cfg_high = cfg.clone();
    cfg_high.height = height_high;
    let rec_low = census_run(&cfg_low)?;
    let rec_high = census_run(&cfg_high)?;
    let set_low: std::collections::BTreeSet<Fingerprint> =
        rec_low.iter().map(|r| r.fingerprint.clone()).collect();
    let set_high: std::collections::BTreeSet<Fingerprint> =
        rec_high.iter().map(|r| r.fingerprint.clone()).collect();
    let new_fingerprints: Vec<Fingerprint> =
        set_high.difference(&set_low).cloned().collect();
    Ok(StabilizationReport {
        height_low,
        height_high,
        records_low: rec_low.len(),
        records_high: rec_high.len(),
        fingerprints_low: set_low.len(),
        fingerprints_high: set_high.len(),
        stable: new_fingerprints.is_empty(),
        new_fingerprints,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyEntry {
    pub k: u32,
    pub model: String,
    pub bad_places: Vec<String>,
    pub sigma: Vec<String>,
    pub ram_point_count: usize,
}

/// The family F_k = [-2^k x0^2 + x1^2 : 2^k x0^2 + x1^2] of degree-2 maps
/// with two ramification points, pairwise non-conjugate, each with
/// differential good reduction at every odd prime. On this family sigma_1
/// is constantly -2; the second symmetric multiplier function separates the
/// members, which is what pairwise non-conjugacy needs.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub entries: Vec<FamilyEntry>,
    pub sigma_tuples_pairwise_distinct: bool,
    pub sigma2_pairwise_distinct: bool,
    pub bad_sets_within_two: bool,
    pub dgr_at_all_odd_primes: bool,
}

pub fn infinite_family_demo(k_max: u32) -> Result<FamilyReport, CensusError> {
    assert!(k_max >= 2);
    let base = BaseField::Rationals;
    let two = Place::prime_u64(2).unwrap();
    let mut entries = Vec::new();
    let mut sigmas: Vec<Vec<FieldElement>> = Vec::new();
    let mut bad_ok = true;
    for k in 1..=k_max {
        let pow = FieldElement::from_i64(base, 2).pow_i64(k as i64);
        let one = FieldElement::one_in(base);
        let zero = FieldElement::zero_in(base);
        let f0 = Form::new(vec![pow.neg(), zero.clone(), one.clone()]);
        let f1 = Form::new(vec![pow.clone(), zero.clone(), one.clone()]);
        let model = RationalMapModel::new(f0, f1)?;
        let bads = model.bad_places()?;
        if !bads.iter().all(|v| v == &two) {
            bad_ok = false;
        }
        let data = model.critical_data()?;
        let inv = model.multiplier_invariants()?;
        sigmas.push(inv.sigma.clone());
        entries.push(FamilyEntry {
            k,
            model: model.to_display_string(),
            bad_places: bads.iter().map(|v| v.to_string()).collect(),
            sigma: inv.sigma.iter().map(|s| s.to_string()).collect(),
            ram_point_count: data.ram_point_count,
        });
    }
    let mut tuples_distinct = true;
    let mut sigma2_distinct = true;
    for i in 0..sigmas.len() {
        for j in i + 1..sigmas.len() {
            if sigmas[i] == sigmas[j] {
                tuples_distinct = false;
            }
            if sigmas[i][1] == sigmas[j][1] {
                sigma2_distinct = false;
            }
        }
    }
    // D.G.R. at every odd prime is exactly bad set within {2}
    Ok(FamilyReport {
        entries,
        sigma_tuples_pairwise_distinct: tuples_distinct,
        sigma2_pairwise_distinct: sigma2_distinct,
        bad_sets_within_two: bad_ok,
        dgr_at_all_odd_primes: bad_ok,
    })
}

/// Exhaustive search for maps of degree d and height at most H whose
/// ramification and branch points all lie inside the split divisor Y, with
/// at least 3 distinct ramification points.
pub fn rigidity_search(
    y: &ReducedDivisor,
    degree: usize,
    height: u32,
) -> Result<Vec<RationalMapModel>, CensusError> {
    if degree < 3 {
        return Err(CensusError::Precondition("rigidity needs degree >= 3".into()));
    }
    if !y.split() {
        return Err(CensusError::Precondition(
            "the target divisor must split over K".into(),
        ));
    }
    if !matches!(y.base(), BaseField::Rationals) {
        return Err(CensusError::Precondition(
            "the rigidity sweep runs over Q".into(),
        ));
    }
    // Y as integral linear forms (beta*x0 - alpha*x1)
    let mut lines: Vec<(i64, i64)> = Vec::new();
    for pt in y.roots().unwrap() {
        let (x, yc) = pt.coords();
        let xi = i64::try_from(x.as_rat().numer()).map_err(|_| {
            CensusError::Precondition("divisor coordinates exceed the sweep range".into())
        })?;
        let yi = i64::try_from(yc.as_rat().numer()).map_err(|_| {
            CensusError::Precondition("divisor coordinates exceed the sweep range".into())
        })?;
        lines.push((yi, -xi));
    }
    let d = degree;
    let ncoef = 2 * d + 2;
    let h = height as i64;
    let radix = (2 * h + 1) as u128;
    let total: u128 = radix.pow(ncoef as u32);
    let yform = {
        let mut f = y.roots().unwrap()[0].linear_form();
        for p in &y.roots().unwrap()[1..] {
            f = f.mul(&p.linear_form());
        }
        f
    };
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; ncoef];
    for idx in 0..total {
        let mut rest = idx;
        for k in (0..ncoef).rev() {
            coeffs[k] = (rest % radix) as i64 - h;
            rest /= radix;
        }
        match coeffs.iter().find(|&&c| c != 0) {
            None => continue,
            Some(&c) if c < 0 => continue,
            _ => {}
        }
        let mut g = 0i64;
        for &c in &coeffs {
            g = gcd_i64(g, c);
        }
        if g != 1 {
            continue;
        }
        let (f0c, f1c) = coeffs.split_at(d + 1);
        // cheap filter: the Wronskian must vanish only on Y, at >= 3 points
        let w = wronskian_i128(f0c, f1c);
        if w.iter().all(|&c| c == 0) {
            continue;
        }
        let (hits, remainder_constant) = divide_out_lines(&w, &lines);
        if !remainder_constant || hits < 3 {
            continue;
        }
        let a: Vec<i128> = f0c.iter().map(|&c| c as i128).collect();
        let b: Vec<i128> = f1c.iter().map(|&c| c as i128).collect();
        if resultant_slices(&a, &b) == 0 {
            continue;
        }
        // exact stage: branch roots inside Y as well
        let model = RationalMapModel::from_int_coeffs(BaseField::Rationals, f0c, f1c)?;
        let data = model.critical_data()?;
        if data.ram_point_count < 3 {
            continue;
        }
        let bw = forms::radical(&data.branch)?;
        if !form_divides(&bw, &yform) {
            continue;
        }
        // postcondition recheck on the assembled critical radical
        let crit = forms::radical(&data.critical_form)?;
        assert!(form_divides(&crit, &yform));
        out.push(model);
    }
    Ok(out)
}

/// Wronskian coefficients of an integral pair, descending convention.
fn wronskian_i128(f0: &[i64], f1: &[i64]) -> Vec<i128> {
    let d = f0.len() - 1;
    // derivative wrt x0: coefficient i of the result is (d-i) c_i
    let dx0 = |f: &[i64]| -> Vec<i128> {
        (0..d).map(|i| (d - i) as i128 * f[i] as i128).collect()
    };
    let dx1 = |f: &[i64]| -> Vec<i128> {
        (1..=d).map(|i| i as i128 * f[i] as i128).collect()
    };
    let mul = |a: &[i128], b: &[i128]| -> Vec<i128> {
        let mut out = vec![0i128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let lhs = mul(&dx0(f0), &dx1(f1));
    let rhs = mul(&dx1(f0), &dx0(f1));
    lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect()
}

/// Divides the descending coefficient sequence by each primitive line
/// (b*x0 - a*x1) as often as possible; returns the number of distinct lines
/// dividing at least once and whether the remainder is a constant form.
fn divide_out_lines(w: &[i128], lines: &[(i64, i64)]) -> (usize, bool) {
    let mut cur: Vec<i128> = w.to_vec();
    // strip leading/trailing zeros as x1 / x0 powers; track them so that the
    // special points [1:0] and [0:1] count when they belong to Y
    let mut hits = 0usize;
    for &(b, ma) in lines {
        // line b*x0 - a*x1 with ma = -a
        let mut divided = false;
        loop {
            match divide_once(&cur, b as i128, ma as i128) {
                Some(next) => {
                    cur = next;
                    divided = true;
                }
                None => break,
            }
        }
        if divided {
            hits += 1;
        }
    }
    // roots lie inside Y exactly when the fully divided remainder is a
    // constant form
    (hits, cur.len() == 1)
}

/// One exact division of a descending form sequence by b*x0 + c*x1, if
/// divisible.
fn divide_once(f: &[i128], b: i128, c: i128) -> Option<Vec<i128>> {
    if f.len() < 2 {
        return None;
    }
    let n = f.len() - 1;
    let mut q = vec![0i128; n];
    if b != 0 {
        // synthetic division treating x0 as the main variable
        let mut rem = f[0];
        for i in 0..n {
            if rem % b != 0 {
                return None;
            }
            q[i] = rem / b;
            rem = f[i + 1] - q[i] * c;
        }
        if rem != 0 {
            return None;
        }
        Some(q)
    } else {
        // dividing by c*x1
        if f[0] != 0 {
            return None;
        }
        for i in 0..n {
            if f[i + 1] % c != 0 {
                return None;
            }
            q[i] = f[i + 1] / c;
        }
        Some(q)
    }
}

/// Form divisibility over the coefficient field, with the x0-multiplicity
/// bookkeeping of the homogeneous setting.
pub fn form_divides(f: &BinaryForm, g: &BinaryForm) -> bool {
    use crate::ring::Poly;
    if f.is_zero() || g.is_zero() {
        return g.is_zero();
    }
    // ascending in x1
    let fp = Poly::new(f.coeffs().to_vec());
    let gp = Poly::new(g.coeffs().to_vec());
    let fdrop = f.degree() - fp.degree().unwrap();
    let gdrop = g.degree() - gp.degree().unwrap();
    if fdrop > gdrop {
        return false;
    }
    gp.div_rem(&fp).1.is_zero()
}
