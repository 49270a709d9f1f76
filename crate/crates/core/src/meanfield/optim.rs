//! Derivative-free local minimization with box constraints.

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub max_evals: usize,
    /// Stop once simplex vertices and values agree to this tolerance.
    pub tol: f64,
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_evals: 20_000,
            tol: 1e-12,
            initial_step: 0.2,
        }
    }
}

fn clamp(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *v = v.clamp(lo, hi);
    }
}

/// Nelder-Mead on `f` with every trial point clamped into `bounds`.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    bounds: &[(f64, f64)],
    opts: NelderMeadOptions,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut start = x0.to_vec();
    clamp(&mut start, bounds);
    let mut simplex: Vec<Vec<f64>> = vec![start.clone()];
    for i in 0..n {
        let mut v = start.clone();
        let (lo, hi) = bounds[i];
        v[i] += if v[i] + opts.initial_step <= hi {
            opts.initial_step
        } else {
            -opts.initial_step.min(v[i] - lo).max(1e-3)
        };
        clamp(&mut v, bounds);
        simplex.push(v);
    }
    let mut vals: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut evals = n + 1;
    let eval = |v: &mut Vec<f64>, evals: &mut usize| {
        clamp(v, bounds);
        *evals += 1;
        f(v)
    };
    while evals < opts.max_evals {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();
        let spread_f = (vals[n] - vals[0]).abs();
        let spread_x = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread_f <= opts.tol * (1.0 + vals[0].abs()) && spread_x <= opts.tol.sqrt() * 1e-2 {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let mut xr = along(-1.0);
        let fr = eval(&mut xr, &mut evals);
        if fr < vals[0] {
            let mut xe = along(-2.0);
            let fe = eval(&mut xe, &mut evals);
            if fe < fr {
                simplex[n] = xe;
                vals[n] = fe;
            } else {
                simplex[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            simplex[n] = xr;
            vals[n] = fr;
        } else {
            let (mut xc, t) = if fr < vals[n] {
                (along(-0.5), fr)
            } else {
                (along(0.5), vals[n])
            };
            let fc = eval(&mut xc, &mut evals);
            if fc < t {
                simplex[n] = xc;
                vals[n] = fc;
            } else {
                let best = simplex[0].clone();
                for i in 1..=n {
                    let mut v: Vec<f64> = simplex[i]
                        .iter()
                        .zip(&best)
                        .map(|(a, b)| b + 0.5 * (a - b))
                        .collect();
                    vals[i] = eval(&mut v, &mut evals);
                    simplex[i] = v;
                }
            }
        }
    }
    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    (simplex[best].clone(), vals[best])
}

/// Repeated Nelder-Mead from every start, restarting each run from its own
/// result until it stops improving. Returns the best point overall.
pub fn multi_start<F: Fn(&[f64]) -> f64>(
    f: F,
    starts: &[Vec<f64>],
    bounds: &[(f64, f64)],
    opts: NelderMeadOptions,
) -> (Vec<f64>, f64) {
    let mut best = (Vec::new(), f64::INFINITY);
    for s in starts {
        let (mut x, mut fx) = nelder_mead(&f, s, bounds, opts);
        for _ in 0..4 {
            let small = NelderMeadOptions {
                initial_step: opts.initial_step * 0.05,
                ..opts
            };
            let (x2, f2) = nelder_mead(&f, &x, bounds, small);
            if f2 >= fx - 1e-15 * fx.abs().max(1.0) {
                break;
            }
            x = x2;
            fx = f2;
        }
        if fx < best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Uniform lattice of `per_axis` points per dimension inside `bounds`
/// (cell centres), in row-major order.
pub fn start_lattice(bounds: &[(f64, f64)], per_axis: &[usize]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for (&(lo, hi), &m) in bounds.iter().zip(per_axis) {
        let mut next = Vec::new();
        for prefix in &out {
            for i in 0..m {
                let mut p = prefix.clone();
                p.push(lo + (hi - lo) * (i as f64 + 0.5) / m as f64);
                next.push(p);
            }
        }
        out = next;
    }
    out
}
