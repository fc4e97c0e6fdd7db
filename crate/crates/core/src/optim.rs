//! Small derivative-free optimizers used throughout the crate.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum of `f` on `[a, b]`.
///
/// Returns the best point seen (including the two endpoints) and its value.
/// Only guaranteed to find the global maximum for unimodal `f`.
pub fn golden_section_max<F>(f: F, mut a: f64, mut b: f64, tol: f64, max_iter: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut best = (a, f(a));
    let fb = f(b);
    if fb > best.1 {
        best = (b, fb);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        for (x, fx) in [(c, fc), (d, fd)] {
            if fx > best.1 {
                best = (x, fx);
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug)]
pub struct NelderMeadOptions {
    pub max_iters: usize,
    /// Stop once the best value drops to this level.
    pub f_target: f64,
    /// Stop once every simplex edge is shorter than this.
    pub x_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            max_iters: 2000,
            f_target: 0.0,
            x_tol: 1e-14,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Nelder-Mead simplex minimization with standard coefficients.
///
/// The initial simplex is `x0` plus `x0 + steps[i]·e_i`.
pub fn nelder_mead<F>(f: F, x0: &[f64], steps: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    assert_eq!(steps.len(), n, "one step per coordinate");
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += steps[i];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut evaluations = n + 1;
    let mut iterations = 0;

    let along = |from: &[f64], to: &[f64], t: f64| -> Vec<f64> {
        from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
    };

    while iterations < opts.max_iters {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if values[0] <= opts.f_target {
            break;
        }
        let size = simplex[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if size <= opts.x_tol {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let reflected = along(&centroid, &worst, -alpha);
        let f_r = f(&reflected);
        evaluations += 1;

        if f_r < values[0] {
            let expanded = along(&centroid, &worst, -gamma);
            let f_e = f(&expanded);
            evaluations += 1;
            if f_e < f_r {
                simplex[n] = expanded;
                values[n] = f_e;
            } else {
                simplex[n] = reflected;
                values[n] = f_r;
            }
            continue;
        }
        if f_r < values[n - 1] {
            simplex[n] = reflected;
            values[n] = f_r;
            continue;
        }
        let (contracted, f_c) = if f_r < values[n] {
            let c = along(&centroid, &reflected, rho);
            let fc = f(&c);
            (c, fc)
        } else {
            let c = along(&centroid, &worst, rho);
            let fc = f(&c);
            (c, fc)
        };
        evaluations += 1;
        if f_c < values[n].min(f_r) {
            simplex[n] = contracted;
            values[n] = f_c;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=n {
            simplex[i] = along(&best, &simplex[i], sigma);
            values[i] = f(&simplex[i]);
        }
        evaluations += n;
    }

    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    NelderMeadResult {
        x: simplex[best].clone(),
        value: values[best],
        iterations,
        evaluations,
    }
}

/// Compass (pattern) search minimizing `f` over the plane, starting at
/// `(x, y)` with step `step`, halving on failure until `step < min_step`.
/// `f` may return `None` for infeasible points, which are never accepted.
pub fn compass_search<F>(f: F, start: (f64, f64), f_start: f64, step: f64, min_step: f64) -> ((f64, f64), f64)
where
    F: Fn(f64, f64) -> Option<f64>,
{
    let mut best = (start, f_start);
    let mut h = step;
    let mut guard = 0;
    while h >= min_step && guard < 10_000 {
        guard += 1;
        let (x, y) = best.0;
        let mut improved = false;
        for (dx, dy) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            if let Some(v) = f(x + dx, y + dy) {
                if v < best.1 {
                    best = ((x + dx, y + dy), v);
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    best
}
