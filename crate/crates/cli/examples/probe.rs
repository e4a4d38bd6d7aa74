use padic_lf_core::dmatrix::{canonical_ctx, tau_entry_closed, tau_entry_integral, tau_entry_theta};
use padic_lf_core::{AddChar, FieldCtx, MultChar};

fn main() {
    let base = FieldCtx::new(13, 4).unwrap();
    let psi = AddChar::unramified(&base);
    let ctx = canonical_ctx(&base, &psi).unwrap();
    println!("pi_unit = {}", ctx.pi_unit);
    let chi = MultChar::trivial(13);
    for (i, j) in [(0u32, 1u32), (1, 0)] {
        let c = tau_entry_closed(&ctx, i, j, &chi, &psi).unwrap();
        let t = tau_entry_theta(&ctx, i, j, &chi, &psi).unwrap();
        let g = tau_entry_integral(&ctx, i, j, &chi, &psi, &psi).unwrap();
        println!("({i},{j}) closed  = {c}");
        println!("({i},{j}) theta   = {t}");
        println!("({i},{j}) integral= {g}");
        let ratio = c.div(&t).unwrap().reduced().unwrap();
        println!("({i},{j}) closed/theta = {ratio}");
    }
}
