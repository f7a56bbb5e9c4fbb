//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use statrs::distribution::{ContinuousCDF, StudentsT};
use symlife::life::LifeGrid;

pub fn wrap(i: usize, d: isize, n: usize) -> usize {
    (i as isize + d).rem_euclid(n as isize) as usize
}

/// Plain B3/S23 on a torus, cell by cell.
pub fn life_step(g: &LifeGrid) -> LifeGrid {
    let (w, h) = (g.width, g.height);
    let mut cells = vec![false; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut n = 0;
            for dy in -1..=1 {
                for dx in -1..=1 {
                    if (dx, dy) != (0, 0) && g.get(wrap(x, dx, w), wrap(y, dy, h)) {
                        n += 1;
                    }
                }
            }
            let alive = g.get(x, y);
            cells[y * w + x] = n == 3 || (alive && n == 2);
        }
    }
    LifeGrid { width: w, height: h, cells }
}

fn two_tailed(t: f64, df: f64) -> f64 {
    let dist = StudentsT::new(0.0, 1.0, df).unwrap();
    2.0 * dist.cdf(-t.abs())
}

fn moments(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, v)
}

/// (t, df, p) of the two-tailed Welch test.
pub fn welch_reference(a: &[f64], b: &[f64]) -> (f64, f64, f64) {
    let (ma, va) = moments(a);
    let (mb, vb) = moments(b);
    let (sa, sb) = (va / a.len() as f64, vb / b.len() as f64);
    let t = (ma - mb) / (sa + sb).sqrt();
    let df = (sa + sb).powi(2) / (sa * sa / (a.len() - 1) as f64 + sb * sb / (b.len() - 1) as f64);
    (t, df, two_tailed(t, df))
}

/// (r, t, p) of the Pearson correlation test.
pub fn pearson_reference(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let (mx, vx) = moments(x);
    let (my, vy) = moments(y);
    let cov = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>() / (n - 1.0);
    let r = cov / (vx * vy).sqrt();
    let df = n - 2.0;
    let t = r * (df / (1.0 - r * r)).sqrt();
    (r, t, two_tailed(t, df))
}
