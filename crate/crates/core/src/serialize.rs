//! JSON schema (version 1) for the exact values exchanged by the CLI.
//!
//! Rational coefficients are carried as decimal strings so arbitrary
//! precision survives the round trip.

use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::chars::{AddChar, MultChar};
use crate::cyclo::CycNum;
use crate::dmatrix::CoeffMatrix;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, PadicNum};
use crate::ratfun::RatFun;
use crate::schwartz::{SchwartzFn, SchwartzTerm};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CycJson {
    pub n: u64,
    /// terms [k, numerator, denominator] with value sum_k (num/den) zeta_n^k
    pub terms: Vec<(u64, String, String)>,
}

pub fn cyc_to_json(c: &CycNum) -> CycJson {
    CycJson {
        n: c.order(),
        terms: c
            .terms_single_exponent()
            .into_iter()
            .map(|(k, r)| (k, r.numer().to_string(), r.denom().to_string()))
            .collect(),
    }
}

pub fn cyc_from_json(j: &CycJson) -> Result<CycNum> {
    let mut terms = Vec::with_capacity(j.terms.len());
    for (k, num, den) in &j.terms {
        let n = BigInt::from_str(num)
            .map_err(|e| Error::InvalidParams(format!("bad numerator: {e}")))?;
        let d = BigInt::from_str(den)
            .map_err(|e| Error::InvalidParams(format!("bad denominator: {e}")))?;
        if d == BigInt::from(0) {
            return Err(Error::DivisionByZero("parsed coefficient"));
        }
        terms.push((*k as i64, BigRational::new(n, d)));
    }
    Ok(CycNum::from_single_exponents(j.n, &terms))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RatFunJson {
    pub q: u64,
    pub monomial_exp: i64,
    pub num_coeffs: Vec<CycJson>,
    pub den_coeffs: Vec<CycJson>,
}

pub fn ratfun_to_json(f: &RatFun) -> RatFunJson {
    RatFunJson {
        q: f.q(),
        monomial_exp: f.mono_exp(),
        num_coeffs: f.num_coeffs().iter().map(cyc_to_json).collect(),
        den_coeffs: f.den_coeffs().iter().map(cyc_to_json).collect(),
    }
}

pub fn ratfun_from_json(j: &RatFunJson) -> Result<RatFun> {
    let num = j
        .num_coeffs
        .iter()
        .map(cyc_from_json)
        .collect::<Result<Vec<_>>>()?;
    let den = j
        .den_coeffs
        .iter()
        .map(cyc_from_json)
        .collect::<Result<Vec<_>>>()?;
    if den.is_empty() {
        return Err(Error::InvalidParams("empty denominator".into()));
    }
    Ok(RatFun::new(j.q, j.monomial_exp, num, den))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldCtxJson {
    pub p: u64,
    pub n: u32,
    pub g: u64,
    pub u0: u64,
    pub uniformizer_unit: u64,
}

pub fn ctx_to_json(ctx: &FieldCtx) -> FieldCtxJson {
    FieldCtxJson {
        p: ctx.p,
        n: ctx.n,
        g: ctx.g,
        u0: ctx.u0,
        uniformizer_unit: ctx.pi_unit,
    }
}

pub fn ctx_from_json(j: &FieldCtxJson) -> Result<FieldCtx> {
    let ctx = FieldCtx::new(j.p, j.n)?;
    if ctx.g != j.g || ctx.u0 != j.u0 {
        return Err(Error::InvalidParams(
            "serialized generator data does not match the canonical choice".into(),
        ));
    }
    Ok(ctx.with_pi_unit(j.uniformizer_unit))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MultCharJson {
    pub e: u32,
    pub unit_part_exponent: u64,
    pub value_at_pi: CycJson,
}

pub fn mult_char_to_json(chi: &MultChar) -> MultCharJson {
    MultCharJson {
        e: chi.conductor(),
        unit_part_exponent: chi.unit_exp(),
        value_at_pi: cyc_to_json(chi.at_pi()),
    }
}

pub fn mult_char_from_json(p: u64, j: &MultCharJson) -> Result<MultChar> {
    MultChar::new(p, j.e, j.unit_part_exponent, cyc_from_json(&j.value_at_pi)?)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AddCharJson {
    pub twist_valuation: i64,
    pub twist_unit: u64,
    pub twist_prec: u32,
}

pub fn add_char_to_json(psi: &AddChar) -> AddCharJson {
    let t = psi.twist();
    AddCharJson {
        twist_valuation: t.valuation().expect("twist is nonzero"),
        twist_unit: t.unit_mod(t.precision().unwrap_or(1)).expect("unit"),
        twist_prec: t.precision().unwrap_or(1),
    }
}

pub fn add_char_from_json(p: u64, j: &AddCharJson) -> Result<AddChar> {
    let base = AddChar::base(p, j.twist_prec);
    base.twisted(&PadicNum::from_unit_and_val(
        p,
        j.twist_unit,
        j.twist_valuation,
        j.twist_prec,
    ))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SchwartzTermJson {
    pub coeff: CycJson,
    pub center_val: i64,
    /// 0 encodes center 0 (ball term)
    pub center_unit: u64,
    pub level: i64,
}

pub fn schwartz_to_json(phi: &SchwartzFn) -> Result<Vec<SchwartzTermJson>> {
    phi.terms
        .iter()
        .map(|t| {
            if t.modulation.is_some() {
                return Err(Error::InvalidParams(
                    "modulated terms are internal and not serialized".into(),
                ));
            }
            let (cv, cu) = match &t.center {
                None => (0, 0),
                Some(c) => (c.valuation()?, c.unit_mod(c.precision().unwrap_or(1))?),
            };
            Ok(SchwartzTermJson {
                coeff: cyc_to_json(&t.coeff),
                center_val: cv,
                center_unit: cu,
                level: t.level,
            })
        })
        .collect()
}

pub fn schwartz_from_json(p: u64, prec: u32, terms: &[SchwartzTermJson]) -> Result<SchwartzFn> {
    let parsed = terms
        .iter()
        .map(|t| {
            Ok(SchwartzTerm {
                coeff: cyc_from_json(&t.coeff)?,
                center: if t.center_unit == 0 {
                    None
                } else {
                    Some(PadicNum::from_unit_and_val(p, t.center_unit, t.center_val, prec))
                },
                level: t.level,
                modulation: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SchwartzFn::new(p, parsed))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffMatrixJson {
    pub d: u32,
    pub chi_case: String,
    pub entries: Vec<Vec<RatFunJson>>,
}

pub fn coeff_matrix_to_json(m: &CoeffMatrix, chi_case: &str) -> CoeffMatrixJson {
    CoeffMatrixJson {
        d: m.d,
        chi_case: chi_case.to_string(),
        entries: m
            .entries
            .iter()
            .map(|row| row.iter().map(ratfun_to_json).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    #[test]
    fn cyc_roundtrip() {
        let z = CycNum::root_of_unity(12, 7)
            .scale(&rat(-3, 7))
            .add(&CycNum::from_rat(rat(22, 5)));
        let back = cyc_from_json(&cyc_to_json(&z)).unwrap();
        assert_eq!(z, back);
    }

    #[test]
    fn ratfun_roundtrip() {
        let f = RatFun::geometric_tail(5, CycNum::root_of_unity(8, 3), -2, CycNum::from_int(2), 3);
        let j = ratfun_to_json(&f);
        let back = ratfun_from_json(&j).unwrap();
        assert_eq!(f, back);
        // serde round trip through text
        let s = serde_json::to_string(&j).unwrap();
        let j2: RatFunJson = serde_json::from_str(&s).unwrap();
        assert_eq!(ratfun_from_json(&j2).unwrap(), f);
    }

    #[test]
    fn char_and_ctx_roundtrip() {
        let ctx = FieldCtx::new(13, 4).unwrap().with_pi_unit(2);
        let back = ctx_from_json(&ctx_to_json(&ctx)).unwrap();
        assert_eq!(ctx, back);
        let chi = MultChar::new(13, 2, 7, CycNum::root_of_unity(8, 5)).unwrap();
        let cback = mult_char_from_json(13, &mult_char_to_json(&chi)).unwrap();
        assert_eq!(chi, cback);
        let psi = AddChar::base(13, 10)
            .twisted(&PadicNum::from_ratio(13, 2, 13, 10).unwrap())
            .unwrap();
        let pback = add_char_from_json(13, &add_char_to_json(&psi)).unwrap();
        assert_eq!(pback.conductor(), 1);
        assert!(pback
            .twist()
            .eq_checked(psi.twist())
            .unwrap());
    }

    #[test]
    fn schwartz_roundtrip() {
        let ctx = FieldCtx::new(5, 2).unwrap();
        let phi = SchwartzFn::coset(5, CycNum::root_of_unity(4, 1), ctx.from_int(2), 3)
            .add(&SchwartzFn::ball(5, -1));
        let j = schwartz_to_json(&phi).unwrap();
        let back = schwartz_from_json(5, ctx.prec, &j).unwrap();
        for x in [ctx.from_int(2), ctx.from_int(7), ctx.from_int(0), ctx.from_ratio(1, 5).unwrap()] {
            assert_eq!(phi.eval(&x).unwrap(), back.eval(&x).unwrap());
        }
    }
}
