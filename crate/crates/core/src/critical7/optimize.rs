//! Box-constrained multistart Nelder–Mead.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultistartConfig {
    /// Grid points per box dimension.
    pub grid: usize,
    /// Number of best grid points refined by Nelder–Mead.
    pub starts: usize,
    /// Simplex diameter at which a run stops.
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for MultistartConfig {
    fn default() -> Self {
        MultistartConfig {
            grid: 64,
            starts: 32,
            xtol: 1e-12,
            max_iter: 4000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
}

fn clamp_box(x: &mut [f64]) {
    for v in x {
        *v = v.clamp(0.0, 1.0);
    }
}

/// Nelder–Mead on `[0,1]^n`; trial points are clamped to the box.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    step: f64,
    xtol: f64,
    max_iter: usize,
) -> Minimum {
    let n = x0.len();
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += if p[i] + step <= 1.0 { step } else { -step };
        clamp_box(&mut p);
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| eval(p)).collect();

    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let diameter = simplex[1..]
            .iter()
            .map(|p| p.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if diameter < xtol {
            break;
        }

        let mut centroid = vec![0.0; n];
        for p in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / n as f64;
            }
        }
        let towards = |coef: f64| {
            let mut p: Vec<f64> = centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + coef * (w - c))
                .collect();
            clamp_box(&mut p);
            p
        };

        let reflected = towards(-1.0);
        let fr = eval(&reflected);
        if fr < values[0] {
            let expanded = towards(-2.0);
            let fe = eval(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[n] {
            let p = towards(-0.5);
            let v = eval(&p);
            (p, v)
        } else {
            let p = towards(0.5);
            let v = eval(&p);
            (p, v)
        };
        if fc < values[n].min(fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        for i in 1..=n {
            let shrunk: Vec<f64> = simplex[0]
                .iter()
                .zip(&simplex[i])
                .map(|(b, p)| b + 0.5 * (p - b))
                .collect();
            values[i] = eval(&shrunk);
            simplex[i] = shrunk;
        }
    }
    let best = (0..=n)
        .min_by(|&i, &j| values[i].total_cmp(&values[j]))
        .expect("nonempty simplex");
    Minimum {
        x: simplex[best].clone(),
        value: values[best],
    }
}

/// Global minimum of `f` over `[0,1]^n`: a uniform grid seeds the best
/// `starts` points for local Nelder–Mead runs.
pub fn multistart<F: Fn(&[f64]) -> f64>(f: &F, n: usize, cfg: &MultistartConfig) -> Minimum {
    let g = cfg.grid.max(2);
    let total = g.pow(n as u32);
    let mut seeds: Vec<(f64, usize)> = Vec::with_capacity(total);
    let mut point = vec![0.0; n];
    for idx in 0..total {
        let mut rest = idx;
        for p in point.iter_mut() {
            *p = (rest % g) as f64 / (g - 1) as f64;
            rest /= g;
        }
        let v = f(&point);
        if !v.is_nan() {
            seeds.push((v, idx));
        }
    }
    let keep = cfg.starts.min(seeds.len()).max(1);
    seeds.select_nth_unstable_by(keep - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    seeds.truncate(keep);
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let step = 1.0 / (g - 1) as f64;
    let mut best: Option<Minimum> = None;
    for &(value, idx) in &seeds {
        let mut rest = idx;
        let x0: Vec<f64> = (0..n)
            .map(|_| {
                let c = (rest % g) as f64 / (g - 1) as f64;
                rest /= g;
                c
            })
            .collect();
        let mut run = nelder_mead(f, &x0, step, cfg.xtol, cfg.max_iter);
        if value < run.value {
            run = Minimum { x: x0, value };
        }
        if best.as_ref().is_none_or(|b| run.value < b.value) {
            best = Some(run);
        }
    }
    best.expect("at least one seed")
}
