//! The Plancherel measure of genuine principal series and the
//! reducibility decision at s = 0.

use crate::chars::{AddChar, MultChar};
use crate::cyclo::CycNum;
use crate::dmatrix::{classify_chi, dmatrix, CoeffMatrix, DMethod};
use crate::error::{Error, Result};
use crate::factors::lfactor_at;
use crate::field::FieldCtx;
use crate::cover::equivalent_inducing_data;
use crate::nt;
use crate::ratfun::{RatFun, Subst};

pub fn whittaker_dimension(n: u32) -> u32 {
    n / nt::gcd(n as u64, 2) as u32
}

/// mu^{-1}(tau, s) by the closed formula
///   q^{e(chi^n, psi)} L(ns, chi^n) L(-ns, chi^{-n})
///     / ( L(1-ns, chi^{-n}) L(1+ns, chi^n) ).
pub fn plancherel_formula(
    ctx: &FieldCtx,
    chi: &MultChar,
    psi: &AddChar,
) -> Result<RatFun> {
    let q = ctx.p;
    let n = ctx.n as i64;
    let chi_n = chi.pow(n)?;
    let chi_mn = chi.pow(-n)?;
    let e = psi.conductor() - chi_n.conductor() as i64;
    let num = lfactor_at(q, &chi_n, n, 0).mul(&lfactor_at(q, &chi_mn, -n, 0));
    let den = lfactor_at(q, &chi_mn, -n, 2).mul(&lfactor_at(q, &chi_n, n, 2));
    let scale = CycNum::from_rat(
        crate::cyclo::Rat::from_integer(num::BigInt::from(q)).pow(e as i32),
    );
    num.div(&den).map(|f| f.scale(&scale))
}

/// The method used for each of the two coefficient matrices in the
/// matrix route.
fn method_for(ctx: &FieldCtx, chi: &MultChar, requested: DMethod) -> Result<DMethod> {
    if requested != DMethod::Closed {
        return Ok(requested);
    }
    Ok(match classify_chi(ctx, chi)? {
        Some(_) => DMethod::Closed,
        // the inverse of eta_pi is not canonical; fall back to the
        // coefficient-family assembly, which covers every character
        None => DMethod::Theta,
    })
}

pub struct MatrixRoute {
    pub product_scalar: RatFun,
    pub mu_inv: RatFun,
    pub d1: CoeffMatrix,
    pub d2: CoeffMatrix,
}

/// mu^{-1} through D(chi, s, psi) D(chi^{-1}, -s, psi) = scalar * Id with
/// scalar = chi(-1) q^{-e(chi^n)} L-ratio (for spherical psi).
pub fn plancherel_matrices(
    ctx: &FieldCtx,
    chi: &MultChar,
    psi: &AddChar,
    method: DMethod,
) -> Result<MatrixRoute> {
    if psi.conductor() != 0 {
        return Err(Error::InvalidParams(
            "matrix route assumes spherical psi".into(),
        ));
    }
    let chi_inv = chi.inv()?;
    let d1 = dmatrix(ctx, chi, psi, method_for(ctx, chi, method)?)?;
    let d2 = dmatrix(ctx, &chi_inv, psi, method_for(ctx, &chi_inv, method)?)?
        .substitute(Subst::Negate)?;
    let prod = d1.mul(&d2);
    let scalar = prod.as_scalar()?;
    // mu^{-1} = q^{e(psi)} chi(-1) * scalar, with e(psi) = 0 here
    let mu_inv = scalar.scale(&chi.at_minus_one());
    Ok(MatrixRoute {
        product_scalar: scalar,
        mu_inv,
        d1,
        d2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reducibility {
    pub reducible: bool,
    /// predicate route: n odd and the central-character projection is a
    /// nontrivial quadratic character
    pub predicate: bool,
    /// analytic route data
    pub self_associate: Option<u32>,
    pub pole_at_zero: bool,
    pub reason: String,
}

/// Reducibility of the unitary principal series at s = 0, decided by two
/// independent routes which must agree.
pub fn reducible_at_zero(ctx: &FieldCtx, chi: &MultChar, psi: &AddChar) -> Result<Reducibility> {
    if !chi.is_unitary() {
        return Err(Error::InvalidParams(
            "reducibility criterion applies to unitary inducing data".into(),
        ));
    }
    let n = ctx.n;
    let predicate = n % 2 == 1
        && chi.pow(2 * n as i64)?.is_trivial()
        && !chi.pow(n as i64)?.is_trivial();
    let self_associate = equivalent_inducing_data(ctx, chi, &chi.inv()?)?;
    let mu_inv = plancherel_formula(ctx, chi, psi)?;
    let pole_at_zero = mu_inv.has_pole_at_one()?;
    let analytic = self_associate.is_some() && !pole_at_zero;
    if predicate != analytic {
        return Err(Error::RouteDisagreement(format!(
            "predicate = {predicate}, analytic = {analytic} (self-associate: {self_associate:?}, pole: {pole_at_zero})"
        )));
    }
    let reason = if predicate {
        "n odd with nontrivial quadratic central-character projection; \
         tau self-associate and mu^{-1} analytic at s = 0"
            .to_string()
    } else if self_associate.is_none() {
        "tau is not self-associate".to_string()
    } else {
        "mu^{-1} has a pole at s = 0".to_string()
    };
    Ok(Reducibility {
        reducible: predicate,
        predicate,
        self_associate,
        pole_at_zero,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(whittaker_dimension(1), 1);
        assert_eq!(whittaker_dimension(2), 1);
        assert_eq!(whittaker_dimension(3), 3);
        assert_eq!(whittaker_dimension(12), 6);
    }

    #[test]
    fn formula_pole_structure() {
        let ctx = FieldCtx::new(7, 3).unwrap();
        let psi = AddChar::unramified(&ctx);
        // chi^n = 1: pole at s = 0
        let chi = MultChar::trivial(7);
        let mu = plancherel_formula(&ctx, &chi, &psi).unwrap();
        assert!(mu.has_pole_at_one().unwrap());
        // chi^n ramified: mu^{-1} is the constant q^{e(chi^n, psi)}
        let chi_r = MultChar::new(7, 1, 1, CycNum::one()).unwrap();
        assert!(chi_r.pow(3).unwrap().conductor() > 0);
        let mu_r = plancherel_formula(&ctx, &chi_r, &psi).unwrap();
        let c = mu_r.is_constant().unwrap().unwrap();
        assert_eq!(c, CycNum::from_rat(crate::cyclo::rat(1, 7)));
        // unramified chi and psi: prefactor q^{e(chi^n, psi)} = 1
        let chi_u = MultChar::unramified(7, CycNum::root_of_unity(4, 1)).unwrap();
        let mu_u = plancherel_formula(&ctx, &chi_u, &psi).unwrap();
        assert!(!mu_u.has_pole_at_one().unwrap());
    }

    #[test]
    fn matrix_route_small() {
        let ctx = FieldCtx::new(5, 2).unwrap();
        let psi = AddChar::unramified(&ctx);
        let chi = MultChar::trivial(5);
        let route = plancherel_matrices(&ctx, &chi, &psi, DMethod::Closed).unwrap();
        let formula = plancherel_formula(&ctx, &chi, &psi).unwrap();
        assert_eq!(route.mu_inv, formula);
    }

    #[test]
    fn reducibility_examples() {
        // n = 3, p = 7: quadratic chi with chi^3 != 1 on the right quotient
        let ctx = FieldCtx::new(7, 3).unwrap();
        let psi = AddChar::unramified(&ctx);
        let quad = MultChar::quadratic_unit_char(7);
        let verdict = reducible_at_zero(&ctx, &quad, &psi).unwrap();
        assert!(verdict.reducible);
        // trivial character: mu^{-1} poles at 0, irreducible
        let triv = reducible_at_zero(&ctx, &MultChar::trivial(7), &psi).unwrap();
        assert!(!triv.reducible);
        // n even: eta_pi is self-associate yet irreducible
        let ctx2 = FieldCtx::new(5, 2).unwrap();
        let psi2 = AddChar::unramified(&ctx2);
        let eta = crate::hilbert::eta_pi_pow(&ctx2, 1).unwrap();
        let v2 = reducible_at_zero(&ctx2, &eta, &psi2).unwrap();
        assert!(!v2.reducible);
        assert!(v2.self_associate.is_some());
        assert!(v2.pole_at_zero);
        // n = 1: classical principal series, quadratic nontrivial -> reducible
        let ctx1 = FieldCtx::new(7, 1).unwrap();
        let psi1 = AddChar::unramified(&ctx1);
        let v1 = reducible_at_zero(&ctx1, &MultChar::quadratic_unit_char(7), &psi1).unwrap();
        assert!(v1.reducible);
        let v1t = reducible_at_zero(&ctx1, &MultChar::trivial(7), &psi1).unwrap();
        assert!(!v1t.reducible);
        // unramified order-4 at pi with n = 1: not self-associate... but
        // chi^2 != 1 so not reducible either way
        let chi4 = MultChar::unramified(7, CycNum::root_of_unity(4, 1)).unwrap();
        let v4 = reducible_at_zero(&ctx1, &chi4, &psi1).unwrap();
        assert!(!v4.reducible);
        // non-unitary data rejected
        let bad = MultChar::unramified(7, CycNum::from_int(2)).unwrap();
        assert!(reducible_at_zero(&ctx1, &bad, &psi1).is_err());
    }
}
