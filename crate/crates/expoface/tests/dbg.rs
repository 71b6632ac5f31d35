#[test]
fn dbg_jacobi_sweeps() {
    use expoface::scalar::*;
    use nalgebra::ComplexField;
    let mut g = ComplexGaussian::new(17);
    let m: CMatrix<f64> = g.matrix(4, 4);
    // replicate one_sided_jacobi with instrumentation
    let c = m.ncols();
    let mut w = m.clone();
    let eps = f64::EPSILON * 8.0;
    for sweep in 0..60 {
        let mut rotated = 0;
        let mut max_rel: f64 = 0.0;
        for p in 0..c - 1 {
            for q in p + 1..c {
                let wp = w.column(p).into_owned();
                let wq = w.column(q).into_owned();
                let alpha = wp.norm_squared();
                let beta = wq.norm_squared();
                let gamma = (wp.adjoint() * &wq)[(0, 0)];
                let scale = (alpha * beta).sqrt();
                max_rel = max_rel.max(gamma.modulus() / scale);
                if scale <= 0.0 || gamma.modulus() <= eps * scale {
                    continue;
                }
                rotated += 1;
                // closed-form 2x2 eigvecs
                let a = alpha; let b = beta;
                let mean = 0.5 * (a + b);
                let diff = 0.5 * (a - b);
                let disc = (diff * diff + gamma.modulus_squared()).sqrt();
                let lp = mean + disc;
                let wgt = lp - a;
                let norm = (gamma.modulus_squared() + wgt * wgt).sqrt();
                if norm <= 0.0 { continue; }
                let inv = cx::<f64>(1.0 / norm, 0.0);
                let r00 = gamma * inv; let r01 = cx::<f64>(-wgt, 0.0) * inv;
                let r10 = cx::<f64>(wgt, 0.0) * inv; let r11 = gamma.conj() * inv;
                w.set_column(p, &(&wp * r00 + &wq * r10));
                w.set_column(q, &(&wp * r01 + &wq * r11));
            }
        }
        println!("sweep {sweep}: rotations {rotated}, max_rel_gram {max_rel:e}");
        if rotated == 0 { break; }
    }
}
