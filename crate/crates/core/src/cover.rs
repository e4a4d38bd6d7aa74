//! The n-fold cover of SL2(F): Kubota cocycle multiplication, genuine
//! characters of the maximal abelian subgroup of the torus cover, and the
//! equivalence of inducing data.

use crate::chars::{AddChar, MultChar};
use crate::cyclo::CycNum;
use crate::error::Result;
use crate::field::{FieldCtx, PadicNum};
use crate::hilbert::{eta_pi_pow, hilbert_exp, xi_splitting};
use crate::ratfun::RatFun;

pub type Mat2 = [[PadicNum; 2]; 2];

/// Element (g, zeta_n^eps) of the cover.
#[derive(Debug, Clone)]
pub struct CoverElement {
    pub mat: Mat2,
    /// exponent of zeta_n
    pub eps: u64,
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let entry = |i: usize, j: usize| -> PadicNum {
        a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]))
    };
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// The Kubota coordinate x(g): lower-left entry when nonzero, else
/// lower-right.
pub fn x_coord(g: &Mat2) -> Result<PadicNum> {
    match g[1][0].is_zero() {
        Ok(false) => Ok(g[1][0].clone()),
        Ok(true) => Ok(g[1][1].clone()),
        Err(e) => Err(e),
    }
}

/// c(g1, g2) as an exponent of zeta_n.
pub fn kubota_cocycle_exp(ctx: &FieldCtx, g1: &Mat2, g2: &Mat2) -> Result<u64> {
    let prod = mat_mul(g1, g2);
    let xp = x_coord(&prod)?;
    let a = xp.div(&x_coord(g1)?)?;
    let b = xp.div(&x_coord(g2)?)?;
    hilbert_exp(ctx, &a, &b)
}

pub fn kubota_cocycle(ctx: &FieldCtx, g1: &Mat2, g2: &Mat2) -> Result<CycNum> {
    Ok(CycNum::root_of_unity(
        ctx.n as u64,
        kubota_cocycle_exp(ctx, g1, g2)? as i64,
    ))
}

/// Product in the cover: (g1, e1)(g2, e2) = (g1 g2, c(g1,g2) e1 e2).
pub fn cover_mul(ctx: &FieldCtx, a: &CoverElement, b: &CoverElement) -> Result<CoverElement> {
    let c = kubota_cocycle_exp(ctx, &a.mat, &b.mat)?;
    Ok(CoverElement {
        mat: mat_mul(&a.mat, &b.mat),
        eps: (a.eps + b.eps + c) % ctx.n as u64,
    })
}

pub fn elem_n(ctx: &FieldCtx, x: &PadicNum) -> CoverElement {
    let one = PadicNum::one(ctx.p, ctx.prec);
    let zero = PadicNum::zero(ctx.p);
    CoverElement {
        mat: [[one.clone(), x.clone()], [zero, one]],
        eps: 0,
    }
}

pub fn elem_h(ctx: &FieldCtx, a: &PadicNum) -> Result<CoverElement> {
    let zero = PadicNum::zero(ctx.p);
    Ok(CoverElement {
        mat: [[a.clone(), zero.clone()], [zero, a.inv()?]],
        eps: 0,
    })
}

pub fn elem_w(ctx: &FieldCtx) -> CoverElement {
    let one = PadicNum::one(ctx.p, ctx.prec);
    let zero = PadicNum::zero(ctx.p);
    CoverElement {
        mat: [[zero.clone(), one.clone()], [one.neg(), zero]],
        eps: 0,
    }
}

/// Value of the genuine character chi_{pi,psi} at (h(a), zeta_n^eps):
/// zeta_n^eps chi(a) xi_{psi,pi}(a), defined for a in F*_d.
pub fn genuine_char_eval(
    ctx: &FieldCtx,
    psi: &AddChar,
    chi: &MultChar,
    a: &PadicNum,
    eps: u64,
) -> Result<CycNum> {
    let xi = xi_splitting(ctx, psi, a)?;
    let root = CycNum::root_of_unity(ctx.n as u64, eps as i64);
    Ok(root.mul(&chi.eval(ctx, a)?).mul(&xi))
}

/// The s-twisted value: genuine value times |a|^s = X^{v(a)}.
pub fn genuine_char_eval_s(
    ctx: &FieldCtx,
    psi: &AddChar,
    chi: &MultChar,
    a: &PadicNum,
    eps: u64,
) -> Result<RatFun> {
    let c = genuine_char_eval(ctx, psi, chi, a, eps)?;
    Ok(RatFun::monomial(ctx.p, c, a.valuation()?))
}

/// Whether chi' = chi eta_pi^{2m} on F*_d for some m in 0..d, with the
/// witness.  Characters of F*_d are compared through their unit parts and
/// values at pi^d.
pub fn equivalent_inducing_data(
    ctx: &FieldCtx,
    chi: &MultChar,
    chi_prime: &MultChar,
) -> Result<Option<u32>> {
    let d = ctx.d;
    for m in 0..d {
        let twist = eta_pi_pow(ctx, 2 * m as i64)?;
        let cand = chi.mul(&twist)?;
        if cand.same_unit_part(chi_prime) {
            let lhs = cand.at_pi().pow(d as i64)?;
            let rhs = chi_prime.at_pi().pow(d as i64)?;
            if lhs == rhs {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nt;

    #[test]
    fn torus_cocycle_is_reversed_symbol() {
        // c(h(a), h(b)) = (b, a), exhaustively over unit-times-power reps
        let ctx = FieldCtx::new(7, 3).unwrap();
        for ua in 1..7u64 {
            for va in -2i64..=2 {
                for ub in [1u64, 3] {
                    for vb in -1i64..=2 {
                        let a = ctx.unit_times_pi_pow(ua, va);
                        let b = ctx.unit_times_pi_pow(ub, vb);
                        let ha = elem_h(&ctx, &a).unwrap();
                        let hb = elem_h(&ctx, &b).unwrap();
                        let c = kubota_cocycle_exp(&ctx, &ha.mat, &hb.mat).unwrap();
                        let expect = hilbert_exp(&ctx, &b, &a).unwrap();
                        assert_eq!(c, expect, "a={ua}p^{va}, b={ub}p^{vb}");
                    }
                }
            }
        }
    }

    #[test]
    fn unipotent_cocycle_trivial() {
        let ctx = FieldCtx::new(7, 3).unwrap();
        for (x, y) in [(1i64, 2i64), (3, -1), (7, 5), (0, 4)] {
            let nx = elem_n(&ctx, &ctx.from_int(x));
            let ny = elem_n(&ctx, &ctx.from_int(y));
            assert_eq!(kubota_cocycle_exp(&ctx, &nx.mat, &ny.mat).unwrap(), 0);
        }
    }

    #[test]
    fn two_cocycle_identity_random() {
        // c(g1,g2) c(g1 g2, g3) = c(g1, g2 g3) c(g2, g3) on seeded triples
        let ctx = FieldCtx::new(7, 3).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let rand_elem = |next: &mut dyn FnMut() -> u64| -> CoverElement {
            let choice = next() % 3;
            let t = (next() % 13) as i64 - 6;
            match choice {
                0 => elem_n(&ctx, &ctx.from_int(t)),
                1 => {
                    let u = 1 + next() % 6;
                    let v = (next() % 5) as i64 - 2;
                    elem_h(&ctx, &ctx.unit_times_pi_pow(u, v)).unwrap()
                }
                _ => elem_w(&ctx),
            }
        };
        for trial in 0..100 {
            let g1 = rand_elem(&mut next);
            let g2 = rand_elem(&mut next);
            let g3 = rand_elem(&mut next);
            // build composites, retrying the trial on precision loss from
            // pathological cancellations (exact inputs make this rare)
            let lhs = (|| -> Result<u64> {
                let c12 = kubota_cocycle_exp(&ctx, &g1.mat, &g2.mat)?;
                let g12 = mat_mul(&g1.mat, &g2.mat);
                Ok((c12 + kubota_cocycle_exp(&ctx, &g12, &g3.mat)?) % 3)
            })();
            let rhs = (|| -> Result<u64> {
                let c23 = kubota_cocycle_exp(&ctx, &g2.mat, &g3.mat)?;
                let g23 = mat_mul(&g2.mat, &g3.mat);
                Ok((c23 + kubota_cocycle_exp(&ctx, &g1.mat, &g23)?) % 3)
            })();
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => assert_eq!(l, r, "trial {trial}"),
                _ => panic!("precision loss on exact inputs at trial {trial}"),
            }
        }
    }

    #[test]
    fn cover_mul_matches_cocycle() {
        let ctx = FieldCtx::new(7, 3).unwrap();
        let a = elem_h(&ctx, &ctx.from_int(3)).unwrap();
        let b = elem_h(&ctx, &ctx.uniformizer()).unwrap();
        let ab = cover_mul(&ctx, &a, &b).unwrap();
        let c = kubota_cocycle_exp(&ctx, &a.mat, &b.mat).unwrap();
        assert_eq!(ab.eps, c);
    }

    #[test]
    fn genuine_character_epsilon_linearity() {
        let ctx = FieldCtx::new(13, 4).unwrap();
        let psi = AddChar::unramified(&ctx);
        let chi = MultChar::new(13, 1, 3, CycNum::root_of_unity(8, 1)).unwrap();
        let a = ctx.unit_times_pi_pow(2, 2); // v = 2 = d: in F*_d
        let v0 = genuine_char_eval(&ctx, &psi, &chi, &a, 0).unwrap();
        let v1 = genuine_char_eval(&ctx, &psi, &chi, &a, 1).unwrap();
        assert_eq!(v1, v0.mul(&CycNum::root_of_unity(4, 1)));
    }

    #[test]
    fn genuine_character_odd_cover_is_plain() {
        // n odd: xi = 1, so the value at (h(a), 1) is chi(a)
        let ctx = FieldCtx::new(7, 3).unwrap();
        let psi = AddChar::unramified(&ctx);
        let chi = MultChar::new(7, 1, 2, CycNum::root_of_unity(6, 1)).unwrap();
        for (u, v) in [(1u64, 0i64), (3, 3), (2, -3), (5, 6)] {
            let a = ctx.unit_times_pi_pow(u, v);
            let got = genuine_char_eval(&ctx, &psi, &chi, &a, 0).unwrap();
            assert_eq!(got, chi.eval(&ctx, &a).unwrap());
        }
    }

    #[test]
    fn genuine_character_property_on_cover() {
        // multiplicativity on the abelian cover of the torus: the value of
        // the product element (with its cocycle root) is the product of
        // values; checked on pairs in F*_d at (p,n) = (13,4)
        let ctx = FieldCtx::new(13, 4).unwrap();
        let psi = AddChar::unramified(&ctx);
        let chi = MultChar::new(13, 1, 6, CycNum::root_of_unity(8, 3)).unwrap();
        let mut samples = Vec::new();
        for u in [1u64, 2, 5, 6] {
            for v in [-2i64, 0, 2, 4] {
                samples.push(ctx.unit_times_pi_pow(u, v));
            }
        }
        let mut pairs = 0;
        for a in &samples {
            for b in &samples {
                let ha = elem_h(&ctx, a).unwrap();
                let hb = elem_h(&ctx, b).unwrap();
                let hab = cover_mul(&ctx, &ha, &hb).unwrap();
                let ab = a.mul(b);
                let lhs = genuine_char_eval(&ctx, &psi, &chi, &ab, hab.eps).unwrap();
                let rhs = genuine_char_eval(&ctx, &psi, &chi, a, 0)
                    .unwrap()
                    .mul(&genuine_char_eval(&ctx, &psi, &chi, b, 0).unwrap());
                assert_eq!(lhs, rhs, "a = {a:?}, b = {b:?}");
                pairs += 1;
                if pairs >= 20 {
                    return;
                }
            }
        }
    }

    #[test]
    fn inducing_data_equivalence() {
        let ctx = FieldCtx::new(7, 3).unwrap();
        let chi = MultChar::new(7, 1, 2, CycNum::root_of_unity(6, 1)).unwrap();
        // chi' = chi: m = 0
        assert_eq!(equivalent_inducing_data(&ctx, &chi, &chi).unwrap(), Some(0));
        // chi' = chi eta^2: m = 1
        let chi2 = chi.mul(&eta_pi_pow(&ctx, 2).unwrap()).unwrap();
        assert_eq!(equivalent_inducing_data(&ctx, &chi, &chi2).unwrap(), Some(1));
        // trivial vs a character with nontrivial cube: inequivalent
        let z7 = CycNum::root_of_unity(7 - 1, 1);
        let hard = MultChar::new(7, 1, 1, z7).unwrap();
        assert!(!hard.pow(3).unwrap().is_trivial());
        assert_eq!(
            equivalent_inducing_data(&ctx, &MultChar::trivial(7), &hard).unwrap(),
            None
        );
        let _ = nt::gcd(1, 1);
    }
}
