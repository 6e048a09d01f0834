use bvft_core::testfns::registry_get;
use bvft_core::verify::*;
use std::collections::BTreeMap;
use std::time::Instant;

fn main() {
    let vc = VerifyConfig::default();
    for id in ["exp", "triangle", "gaussian"] {
        let f = registry_get(id, &BTreeMap::new()).unwrap();
        let g = OddFunction::from_fprime(&f);

        let t0 = Instant::now();
        let a = l1_fprime(&f, &vc).unwrap();
        println!("{id} l1_fprime      {:10.6} err {:.1e} {} evals {:>10}  {:?}", a.value, a.abs_error_estimate, a.status, a.evaluations, t0.elapsed());

        let t0 = Instant::now();
        let a = l1_t_fprime(&f, &vc).unwrap();
        println!("{id} l1_t_fprime    {:10.6} err {:.1e} {} evals {:>10}  {:?}", a.value, a.abs_error_estimate, a.status, a.evaluations, t0.elapsed());

        let t0 = Instant::now();
        let a = l1_ft_cosine(&f, &vc).unwrap();
        println!("{id} l1_ft_cosine   {:10.6} err {:.1e} {} evals {:>10}  {:?}", a.value, a.abs_error_estimate, a.status, a.evaluations, t0.elapsed());

        let t0 = Instant::now();
        let a = q0_integral(&g, &vc).unwrap();
        println!("{id} q0             {:10.6} err {:.1e} {} evals {:>10}  {:?}", a.value, a.abs_error_estimate, a.status, a.evaluations, t0.elapsed());

        let t0 = Instant::now();
        let a = l1_hilbert_odd(&g, &vc).unwrap();
        println!("{id} l1_hilbert_odd {:10.6} err {:.1e} {} evals {:>10}  {:?}", a.value, a.abs_error_estimate, a.status, a.evaluations, t0.elapsed());

        let t0 = Instant::now();
        let a = l1_h0_script_t(&g, &vc).unwrap();
        println!("{id} l1_h0_script_t {:10.6} err {:.1e} {} evals {:>10}  {:?}", a.value, a.abs_error_estimate, a.status, a.evaluations, t0.elapsed());

        let t0 = Instant::now();
        let r = check_fubini(&f, &vc).unwrap();
        println!("{id} fubini residual {:.2e}  {:?}", r.relative_residual, t0.elapsed());
    }
}
