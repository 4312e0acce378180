//! Nelder–Mead simplex minimisation.

use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Stop when the spread of objective values over the simplex and its
    /// diameter both fall below this.
    pub tol: f64,
    pub max_evals: usize,
    /// Edge length of the initial (and every restarted) simplex.
    pub initial_step: f64,
    /// Restarts from the incumbent until a restart improves by less than `tol`.
    pub max_restarts: usize,
    /// Scale the expansion, contraction and shrink coefficients with the
    /// dimension, which keeps the simplex from collapsing in higher dimensions.
    pub adaptive: bool,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_evals: 100_000, initial_step: 0.1, max_restarts: 50, adaptive: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

#[derive(Clone, Copy)]
struct Coefficients {
    alpha: f64,
    gamma: f64,
    rho: f64,
    sigma: f64,
}

impl Coefficients {
    fn new(dim: usize, adaptive: bool) -> Self {
        if adaptive && dim > 1 {
            let n = dim as f64;
            Self { alpha: 1.0, gamma: 1.0 + 2.0 / n, rho: 0.75 - 0.5 / n, sigma: 1.0 - 1.0 / n }
        } else {
            Self { alpha: 1.0, gamma: 2.0, rho: 0.5, sigma: 0.5 }
        }
    }
}

fn combine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b - a)
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

fn run_simplex<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    step: f64,
    tol: f64,
    budget: usize,
    c: Coefficients,
) -> Minimum {
    let n = x0.len();
    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let v0 = eval(x0, &mut evals);
    simplex.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = eval(&x, &mut evals);
        simplex.push((x, v));
    }
    while evals < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread <= tol && diameter <= tol {
            break;
        }
        let mut centroid = alloc::vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let reflected = combine(&centroid, &worst.0, -c.alpha);
        let fr = eval(&reflected, &mut evals);
        if fr < simplex[0].1 {
            let expanded = combine(&centroid, &worst.0, -c.gamma);
            let fe = eval(&expanded, &mut evals);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let (target, ft) = if fr < worst.1 { (&reflected, fr) } else { (&worst.0, worst.1) };
            let contracted = combine(&centroid, target, c.rho);
            let fc = eval(&contracted, &mut evals);
            if fc < ft {
                simplex[n] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for item in simplex.iter_mut().skip(1) {
                    let x = combine(&best, &item.0, c.sigma);
                    let v = eval(&x, &mut evals);
                    *item = (x, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value, evals }
}

/// Minimises `f` from `x0`, restarting the simplex around the incumbent
/// until restarts stop paying off or the evaluation budget runs out.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> Minimum {
    let c = Coefficients::new(x0.len(), opts.adaptive);
    let mut best = run_simplex(&mut f, x0, opts.initial_step, opts.tol, opts.max_evals, c);
    let mut evals = best.evals;
    let mut step = opts.initial_step;
    for _ in 0..opts.max_restarts {
        if evals >= opts.max_evals {
            break;
        }
        let next = run_simplex(&mut f, &best.x, step, opts.tol, opts.max_evals - evals, c);
        evals += next.evals;
        let gain = best.value - next.value;
        if next.value < best.value {
            best = Minimum { evals, ..next };
        }
        if gain <= opts.tol {
            // A fresh, smaller simplex sometimes slips past a kink.
            step *= 0.1;
            if step < opts.tol {
                break;
            }
        }
    }
    best.evals = evals;
    best
}
