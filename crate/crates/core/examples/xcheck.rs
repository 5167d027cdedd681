use thermalscatter::specfun::*;
fn main() {
    for s in [0.5f64, 1.0, 2.0, 5.0, 7.9, 8.1, 12.0, 20.0, 50.0] {
        let kv = kelvin_all(s).unwrap();
        println!("kelvin {s}: {:.15e} {:.15e} {:.15e} {:.15e}", kv.ber, kv.bei, kv.ker, kv.kei);
    }
    for x in [0.5f64, 2.0, 5.0, 8.0, 20.0, 50.0, 120.0] {
        println!("j0 {x}: {:.15e}", bessel_j0(x).unwrap().value);
    }
    for x in [0.25f64, 0.5, 1.25, 3.7, 10.0] {
        println!("gamma {x}: {:.15e}", gamma_fn(x).unwrap().value);
    }
    let r = constants_report();
    println!("M = {:.10} at {:.4}; C_M = {:.10} at {:.4}; C_N = {:.10} at {:.4}",
        r.m_j0, r.m_j0_arg, r.c_m, r.c_m_arg, r.c_n, r.c_n_arg);
    use num_complex::Complex64;
    for (r_, p) in [(3.0, 0.7), (9.5, -0.6), (15.0, 2.2), (30.0, -0.3)] {
        let i0 = modified_bessel_ray(ModifiedBesselKind::I0, r_, p).unwrap().value;
        let k0 = modified_bessel_ray(ModifiedBesselKind::K0, r_, p).unwrap().value;
        println!("ray {r_} {p}: I0 = {:.14e} {:.14e}  K0 = {:.14e} {:.14e}", i0.re, i0.im, k0.re, k0.im);
        let _ = Complex64::new(0.0,0.0);
    }
}
