//! Restarted GMRES with right preconditioning.

#[derive(Debug, Clone, Copy)]
pub(crate) struct GmresOutcome {
    pub relative_residual: f64,
}

/// Solve `A x = b` starting from `x = 0`; `precond` applies an approximate
/// inverse of `A`. Returns after `max_iters` inner steps at most.
pub(crate) fn gmres(
    apply: &dyn Fn(&[f64], &mut [f64]),
    precond: &dyn Fn(&[f64], &mut [f64]),
    b: &[f64],
    x: &mut [f64],
    tol: f64,
    restart: usize,
    max_iters: usize,
) -> GmresOutcome {
    let n = b.len();
    let bnorm = norm(b);
    x.iter_mut().for_each(|v| *v = 0.0);
    if bnorm == 0.0 {
        return GmresOutcome { relative_residual: 0.0 };
    }
    let mut total = 0;
    let mut tmp = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut r = b.to_vec();
    loop {
        let beta = norm(&r);
        let rel = beta / bnorm;
        if rel <= tol || total >= max_iters {
            return GmresOutcome { relative_residual: rel };
        }
        let m = restart.min(max_iters - total).max(1);
        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        let mut hess = vec![vec![0.0; m]; m + 1];
        let (mut cs, mut sn) = (vec![0.0; m], vec![0.0; m]);
        let mut g = vec![0.0; m + 1];
        g[0] = beta;
        let mut k_used = 0;
        for k in 0..m {
            precond(&basis[k], &mut z);
            apply(&z, &mut tmp);
            // Modified Gram–Schmidt, applied twice for robustness.
            for _ in 0..2 {
                for (j, v) in basis.iter().enumerate() {
                    let hij = dot(&tmp, v);
                    hess[j][k] += hij;
                    tmp.iter_mut().zip(v).for_each(|(t, vi)| *t -= hij * vi);
                }
            }
            let hn = norm(&tmp);
            hess[k + 1][k] = hn;
            for j in 0..k {
                let t = cs[j] * hess[j][k] + sn[j] * hess[j + 1][k];
                hess[j + 1][k] = -sn[j] * hess[j][k] + cs[j] * hess[j + 1][k];
                hess[j][k] = t;
            }
            let d = hess[k][k].hypot(hess[k + 1][k]);
            if d == 0.0 {
                k_used = k;
                break;
            }
            cs[k] = hess[k][k] / d;
            sn[k] = hess[k + 1][k] / d;
            hess[k][k] = d;
            hess[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] *= cs[k];
            total += 1;
            k_used = k + 1;
            let done = g[k + 1].abs() / bnorm <= tol;
            if hn > 0.0 && !done {
                basis.push(tmp.iter().map(|v| v / hn).collect());
            } else {
                break;
            }
        }
        // Back substitution for the Krylov coefficients.
        let mut y = vec![0.0; k_used];
        for i in (0..k_used).rev() {
            let mut s = g[i];
            for j in i + 1..k_used {
                s -= hess[i][j] * y[j];
            }
            y[i] = s / hess[i][i];
        }
        let mut dx = vec![0.0; n];
        for (j, yj) in y.iter().enumerate() {
            dx.iter_mut().zip(&basis[j]).for_each(|(d, v)| *d += yj * v);
        }
        precond(&dx, &mut z);
        x.iter_mut().zip(&z).for_each(|(a, b)| *a += b);
        apply(x, &mut tmp);
        r.iter_mut().zip(b).zip(&tmp).for_each(|((ri, bi), ti)| *ri = bi - ti);
        if k_used == 0 {
            let rel = norm(&r) / bnorm;
            return GmresOutcome { relative_residual: rel };
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
