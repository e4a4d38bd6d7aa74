//! The d x d local coefficient matrix D(chi_{pi,psi}, s, psi') in the
//! basis of Whittaker functionals indexed by s(pi^i), i = 0..d-1.
//!
//! Three independent routes produce each entry tau(i, j):
//!   - `Integral`: the exact shell-sum evaluation of the defining integral,
//!     valid for every chi;
//!   - `Theta`: assembly from the functional-equation coefficient families,
//!     valid for every chi (and for any uniformizer normalization the
//!     standing assumptions allow);
//!   - `Closed`: the explicit case formulas, valid for the canonical chi
//!     (trivial, eta_pi when n is even, or chi^n ramified).
//! Route agreement is the executable audit of the closed formulas.

use crate::chars::{AddChar, MultChar};
use crate::cyclo::{rat, CycNum};
use crate::error::{Error, Result};
use crate::factors::{epsilon_factor, lfactor_at, theta_family, theta_tilde_family};
use crate::field::FieldCtx;
use crate::hilbert::eta_pi_pow;
use crate::ratfun::{RatFun, Subst};
use crate::weil;
use crate::zeta::{shell_sum, ShellParams, WeilArg, WeilPart};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DMethod {
    Closed,
    Integral,
    Theta,
}

/// Canonical character cases of the explicit formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiCase {
    Trivial,
    EtaPi,
    PowerRamified,
}

pub fn classify_chi(ctx: &FieldCtx, chi: &MultChar) -> Result<Option<ChiCase>> {
    if chi.is_trivial() {
        return Ok(Some(ChiCase::Trivial));
    }
    if chi.pow(ctx.n as i64)?.conductor() > 0 {
        return Ok(Some(ChiCase::PowerRamified));
    }
    if ctx.n % 2 == 0 && *chi == eta_pi_pow(ctx, 1)? {
        return Ok(Some(ChiCase::EtaPi));
    }
    Ok(None)
}

/// d x d matrix of rational functions with its defining data.
#[derive(Debug, Clone)]
pub struct CoeffMatrix {
    pub d: u32,
    pub chi: MultChar,
    pub n: u32,
    pub entries: Vec<Vec<RatFun>>,
}

impl CoeffMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &RatFun {
        &self.entries[i][j]
    }

    /// Matrix product (same dimensions).
    pub fn mul(&self, other: &CoeffMatrix) -> CoeffMatrix {
        let d = self.d as usize;
        let q = self.entries[0][0].q();
        let mut entries = vec![vec![RatFun::zero(q); d]; d];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = RatFun::zero(q);
                for k in 0..d {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
                *slot = acc;
            }
        }
        CoeffMatrix {
            d: self.d,
            chi: self.chi.clone(),
            n: self.n,
            entries,
        }
    }

    /// Substitute a rule in every entry.
    pub fn substitute(&self, rule: Subst) -> Result<CoeffMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.substitute(rule)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CoeffMatrix {
            d: self.d,
            chi: self.chi.clone(),
            n: self.n,
            entries,
        })
    }

    /// The scalar c with self = c * Id, if the matrix is exactly scalar.
    pub fn as_scalar(&self) -> Result<RatFun> {
        let d = self.d as usize;
        for i in 0..d {
            for j in 0..d {
                if i != j && !self.entries[i][j].is_zero() {
                    return Err(Error::NotScalar(
                        "off-diagonal entry is nonzero",
                    ));
                }
            }
        }
        for i in 1..d {
            if self.entries[i][i] != self.entries[0][0] {
                return Err(Error::NotScalar("diagonal entries differ"));
            }
        }
        Ok(self.entries[0][0].clone())
    }
}

/// Guard for the standing normalizations of the explicit formulas:
/// psi spherical, and gamma_psi(pi) = 1 when 4 | n.
fn check_normalization(ctx: &FieldCtx, psi: &AddChar) -> Result<()> {
    if psi.conductor() != 0 {
        return Err(Error::InvalidParams(
            "coefficient matrix formulas assume an unramified psi".into(),
        ));
    }
    if ctx.n % 4 == 0 {
        let g = weil::weil_index(ctx, &ctx.uniformizer(), psi)?;
        if !g.is_one() {
            return Err(Error::InvalidParams(
                "4 | n requires the normalized uniformizer with gamma_psi(pi) = 1".into(),
            ));
        }
    }
    Ok(())
}

/// tau(i, j) by exact evaluation of the defining integral.
pub fn tau_entry_integral(
    ctx: &FieldCtx,
    i: u32,
    j: u32,
    chi: &MultChar,
    psi: &AddChar,
    psi_prime: &AddChar,
) -> Result<RatFun> {
    let d = ctx.d;
    if i >= d || j >= d {
        return Err(Error::OutOfRange("matrix index", i.max(j) as i64));
    }
    let q = ctx.p;
    let ij = (i + j) as i64;
    let chi_total = chi.mul(&eta_pi_pow(ctx, i as i64 - j as i64)?)?;
    let weil = if ctx.n % 2 == 0 {
        Some(WeilPart {
            psi,
            arg: WeilArg::BetaPi { k0: ij },
        })
    } else {
        None
    };
    let body = shell_sum(&ShellParams {
        ctx,
        chi: &chi_total,
        additive: Some(psi_prime.twist()),
        weil,
        step: d,
        residue: ij,
        v_min: None,
        measure_halves: psi_prime.conductor(),
    })?;
    // q^{j-i} (chi(pi) X)^{-i-j}
    let pref_c = chi
        .at_pi()
        .pow(-ij)?
        .scale(&rat(1, 1))
        .mul(&CycNum::from_rat(rat_pow(q, j as i64 - i as i64)));
    let prefactor = RatFun::monomial(q, pref_c, -ij);
    Ok(prefactor.mul(&body))
}

/// tau(i, j) assembled from the functional-equation coefficients.
pub fn tau_entry_theta(
    ctx: &FieldCtx,
    i: u32,
    j: u32,
    chi: &MultChar,
    psi: &AddChar,
) -> Result<RatFun> {
    check_normalization(ctx, psi)?;
    let d = ctx.d;
    let n = ctx.n;
    if i >= d || j >= d {
        return Err(Error::OutOfRange("matrix index", i.max(j) as i64));
    }
    let q = ctx.p;
    let ij = (i + j) as i64;
    let imj = i as i64 - j as i64;
    let pref_c = chi
        .at_pi()
        .pow(-ij)?
        .mul(&CycNum::from_rat(rat_pow(q, j as i64 - i as i64)));
    let prefactor = RatFun::monomial(q, pref_c, -ij);
    if n % 2 == 1 {
        let chi_p = chi.mul(&eta_pi_pow(ctx, imj)?)?;
        let fam = theta_family(ctx, &chi_p, psi, n)?;
        let m = (ij + chi_p.conductor() as i64 - psi.conductor()).rem_euclid(n as i64) as usize;
        Ok(prefactor.mul(&fam[m]))
    } else {
        let alpha = if n % 4 == 0 { 1i64 } else { 0 };
        let chi_a = chi.mul(&eta_pi_pow(ctx, (d as i64 + 1) * imj)?)?;
        let chi_b = chi.mul(&eta_pi_pow(ctx, (d as i64 + 1) * imj + d as i64 * alpha)?)?;
        let e2 = chi.pow(2)?.mul(&eta_pi_pow(ctx, 2 * imj)?)?.conductor() as i64;
        let fam_a = theta_tilde_family(ctx, &chi_a, psi, n)?;
        let fam_b = theta_tilde_family(ctx, &chi_b, psi, n)?;
        let m1 = (e2 + ij - psi.conductor()).rem_euclid(n as i64) as usize;
        let m2 = (e2 + d as i64 + ij - psi.conductor()).rem_euclid(n as i64) as usize;
        Ok(prefactor.mul(&fam_a[m1].add(&fam_b[m2])))
    }
}

/// tau(i, j) from the printed case formulas (canonical chi only).
pub fn tau_entry_closed(
    ctx: &FieldCtx,
    i: u32,
    j: u32,
    chi: &MultChar,
    psi: &AddChar,
) -> Result<RatFun> {
    check_normalization(ctx, psi)?;
    let d = ctx.d as i64;
    let n = ctx.n as i64;
    if (i as i64) >= d || (j as i64) >= d {
        return Err(Error::OutOfRange("matrix index", i.max(j) as i64));
    }
    let case = classify_chi(ctx, chi)?.ok_or(Error::NonCanonicalCharacter(
        "reduce via equivalent inducing data or use the integral method",
    ))?;
    let q = ctx.p;
    let (i, j) = (i as i64, j as i64);
    let one = CycNum::one();
    if n % 2 == 1 {
        match case {
            ChiCase::Trivial => {
                let l_ns = lfactor_at(q, chi, n, 0);
                if i == j {
                    let two_j = 2 * j;
                    if two_j < n - 1 {
                        Ok(l_ns.scale(&vol(q)))
                    } else if two_j == n - 1 {
                        let l_dual = lfactor_at(q, chi, -n, 2);
                        l_ns.div(&l_dual)
                    } else {
                        Ok(l_ns.scale(&vol(q)).mul(&RatFun::monomial(q, one, -n)))
                    }
                } else if i + j == n - 1 {
                    let eps = epsilon_factor(ctx, &eta_pi_pow(ctx, i - j)?, psi)?.inv()?;
                    let pref = RatFun::monomial(
                        q,
                        CycNum::from_rat(rat_pow(q, j - i)),
                        -(n - 1),
                    );
                    Ok(pref.mul(&eps))
                } else {
                    Ok(RatFun::zero(q))
                }
            }
            ChiCase::PowerRamified => {
                if (i + j + chi.conductor() as i64).rem_euclid(n) != 0 {
                    return Ok(RatFun::zero(q));
                }
                let eps = epsilon_factor(ctx, &chi.mul(&eta_pi_pow(ctx, i - j)?)?, psi)?.inv()?;
                let c = chi
                    .at_minus_one()
                    .mul(&chi.at_pi().pow(-(i + j))?)
                    .scale(&rat_pow(q, j - i));
                Ok(RatFun::monomial(q, c, -(i + j)).mul(&eps))
            }
            ChiCase::EtaPi => unreachable!("eta_pi only arises for even n"),
        }
    } else {
        let psi2 = psi.double_arg();
        match case {
            ChiCase::Trivial => {
                let l_ns = lfactor_at(q, chi, n, 0);
                if i == j {
                    if d % 2 == 1 && j == (d - 1) / 2 {
                        // L(ns,1) L((1-ns)/2, 1) / (L(1-ns,1) L((1+ns)/2, 1))
                        let num = l_ns.mul(&lfactor_at(q, chi, -d, 1));
                        let den = lfactor_at(q, chi, -n, 2).mul(&lfactor_at(q, chi, d, 1));
                        num.div(&den)
                    } else {
                        Ok(l_ns.scale(&vol(q)))
                    }
                } else if i + j == d - 1 {
                    let e2 = epsilon_factor(ctx, &eta_pi_pow(ctx, 2 * (i - j))?, &psi2)?
                        .substitute(Subst::Double)?
                        .inv()?;
                    let e1 = epsilon_factor(ctx, &eta_pi_pow(ctx, i - j)?, psi)?
                        .substitute(Subst::PlusHalf)?;
                    let pref =
                        RatFun::monomial(q, CycNum::from_rat(rat_pow(q, j - i)), -(d - 1));
                    Ok(pref.mul(&e2).mul(&e1))
                } else {
                    Ok(RatFun::zero(q))
                }
            }
            ChiCase::EtaPi => {
                let l_ns = lfactor_at(q, &MultChar::trivial(q), n, 0);
                if (j - i).rem_euclid(d) == 1 || d == 1 {
                    // q^{(s+1)(j-i)} eps(s + 1/2, eta^d, psi) L(ns, 1) ...
                    let e1 = epsilon_factor(ctx, &eta_pi_pow(ctx, d)?, psi)?
                        .substitute(Subst::PlusHalf)?;
                    let pref = RatFun::monomial(
                        q,
                        CycNum::from_rat(rat_pow(q, j - i)),
                        -(j - i),
                    );
                    let body = if (i, j) == (d - 1, 0) {
                        l_ns.div(&lfactor_at(q, &MultChar::trivial(q), -n, 2))?
                    } else {
                        l_ns.scale(&vol(q))
                    };
                    Ok(pref.mul(&e1).mul(&body))
                } else if i + j == d - 1 {
                    let e1 = epsilon_factor(ctx, &eta_pi_pow(ctx, i - j + 1)?, psi)?
                        .substitute(Subst::PlusHalf)?;
                    let e2 = epsilon_factor(ctx, &eta_pi_pow(ctx, 2 * (i - j + 1))?, &psi2)?
                        .substitute(Subst::Double)?
                        .inv()?;
                    let pref =
                        RatFun::monomial(q, CycNum::from_rat(rat_pow(q, j - i)), -(d - 1));
                    Ok(pref.mul(&e1).mul(&e2))
                } else {
                    Ok(RatFun::zero(q))
                }
            }
            ChiCase::PowerRamified => {
                if (i + j + chi.conductor() as i64).rem_euclid(d) != 0 {
                    return Ok(RatFun::zero(q));
                }
                let alpha = if n % 4 == 0 { 1i64 } else { 0 };
                let e2 = epsilon_factor(
                    ctx,
                    &chi.pow(2)?.mul(&eta_pi_pow(ctx, 2 * (i - j))?)?,
                    &psi2,
                )?
                .substitute(Subst::Double)?
                .inv()?;
                let eta_exp = (d + 1) * (i - j) + alpha * (chi.conductor() as i64 + i + j);
                let e1 = epsilon_factor(ctx, &chi.mul(&eta_pi_pow(ctx, eta_exp)?)?, psi)?
                    .substitute(Subst::PlusHalf)?;
                let c = chi
                    .at_minus_one()
                    .mul(&chi.at_pi().pow(-(i + j))?)
                    .scale(&rat_pow(q, j - i));
                Ok(RatFun::monomial(q, c, -(i + j)).mul(&e2).mul(&e1))
            }
        }
    }
}

fn vol(q: u64) -> CycNum {
    CycNum::from_rat(rat((q - 1) as i64, q as i64))
}

fn rat_pow(p: u64, k: i64) -> crate::cyclo::Rat {
    crate::cyclo::Rat::from_integer(num::BigInt::from(p)).pow(k as i32)
}

/// Assemble D(chi_{pi,psi}, s, psi) by the chosen method (psi' = psi).
pub fn dmatrix(
    ctx: &FieldCtx,
    chi: &MultChar,
    psi: &AddChar,
    method: DMethod,
) -> Result<CoeffMatrix> {
    let d = ctx.d;
    let mut entries = Vec::with_capacity(d as usize);
    for i in 0..d {
        let mut row = Vec::with_capacity(d as usize);
        for j in 0..d {
            let e = match method {
                DMethod::Closed => tau_entry_closed(ctx, i, j, chi, psi)?,
                DMethod::Integral => tau_entry_integral(ctx, i, j, chi, psi, psi)?,
                DMethod::Theta => tau_entry_theta(ctx, i, j, chi, psi)?,
            };
            row.push(e);
        }
        entries.push(row);
    }
    Ok(CoeffMatrix {
        d,
        chi: chi.clone(),
        n: ctx.n,
        entries,
    })
}

/// A canonical context for the explicit formulas: normalizes the
/// uniformizer when 4 | n so gamma_psi(pi) = 1.
pub fn canonical_ctx(ctx: &FieldCtx, psi: &AddChar) -> Result<FieldCtx> {
    let (c, _) = weil::normalize_uniformizer(ctx, psi)?;
    Ok(c)
}
