//! Operation-count benchmark: structured factors versus dense elimination.

use std::time::Instant;

use serde::Serialize;
use vanderkit_core::factor::{factor_d, factor_l, factor_w};
use vanderkit_core::oracle::gauss_jordan_invert;
use vanderkit_core::vander::build_vandermonde;
use vanderkit_core::{Result, Scalar, Spectrum};

use crate::counted::{measure, Counted};

/// Allowed relative deviation of any sweep point from the fitted `c·N^p`.
pub const FIT_TOLERANCE: f64 = 0.25;

pub const DEFAULT_SIZES: [usize; 5] = [4, 8, 16, 32, 64];

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub structured_ops: u64,
    pub dense_ops: u64,
    pub structured_per_n2: f64,
    pub dense_per_n3: f64,
    pub structured_us: u128,
    pub dense_us: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerFit {
    pub exponent: u32,
    pub coefficient: f64,
    pub max_relative_deviation: f64,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub structured_fit: PowerFit,
    pub dense_fit: PowerFit,
}

/// Fits `count ≈ c·N^exponent` with `c` the geometric mean of `count / N^exponent`.
pub fn fit_power(points: &[(usize, u64)], exponent: u32) -> PowerFit {
    let ratios: Vec<f64> = points
        .iter()
        .map(|&(n, count)| count as f64 / (n as f64).powi(exponent as i32))
        .collect();
    let coefficient = if ratios.is_empty() {
        0.0
    } else {
        (ratios.iter().map(|r| r.ln()).sum::<f64>() / ratios.len() as f64).exp()
    };
    let max_relative_deviation = ratios
        .iter()
        .map(|r| (r / coefficient - 1.0).abs())
        .fold(0.0, f64::max);
    PowerFit {
        exponent,
        coefficient,
        max_relative_deviation,
        within_tolerance: max_relative_deviation <= FIT_TOLERANCE,
    }
}

/// Chebyshev points of the first kind on [−1, 1]: distinct and well spread.
pub fn chebyshev_nodes(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| ((2 * k + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos())
        .collect()
}

/// Multiplications spent in `factor_d`, `factor_w`, and `factor_l`.
pub fn structured_ops<S: Scalar>(nodes: &[S]) -> Result<u64> {
    let s = Spectrum::simple(nodes.iter().cloned().map(Counted).collect())?;
    let (res, ops) = measure(|| -> Result<()> {
        factor_d(&s)?;
        factor_w(&s)?;
        factor_l(&s)?;
        Ok(())
    });
    res.map(|_| ops)
}

/// Multiplications spent inverting the Vandermonde matrix by Gauss–Jordan.
pub fn dense_ops<S: Scalar>(nodes: &[S]) -> Result<u64> {
    let s = Spectrum::simple(nodes.iter().cloned().map(Counted).collect())?;
    let v = build_vandermonde(&s)?.matrix;
    let (res, ops) = measure(|| gauss_jordan_invert(&v));
    res.map(|_| ops)
}

fn bench_one<S: Scalar>(n: usize, nodes: &[S]) -> Result<BenchRow> {
    let start = Instant::now();
    let structured = structured_ops(nodes)?;
    let structured_us = start.elapsed().as_micros();
    let start = Instant::now();
    let dense = dense_ops(nodes)?;
    let dense_us = start.elapsed().as_micros();
    let nf = n as f64;
    Ok(BenchRow {
        n,
        structured_ops: structured,
        dense_ops: dense,
        structured_per_n2: structured as f64 / (nf * nf),
        dense_per_n3: dense as f64 / (nf * nf * nf),
        structured_us,
        dense_us,
    })
}

/// Runs every size on its own thread; each thread has its own counter.
pub fn run_bench<S: Scalar + Send + Sync>(
    sizes: &[usize],
    nodes_for: impl Fn(usize) -> Vec<S> + Sync,
) -> Result<BenchReport> {
    let rows = std::thread::scope(|scope| {
        let handles: Vec<_> = sizes
            .iter()
            .map(|&n| {
                let nodes_for = &nodes_for;
                scope.spawn(move || bench_one(n, &nodes_for(n)))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("bench worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let structured_points: Vec<_> = rows.iter().map(|r| (r.n, r.structured_ops)).collect();
    let dense_points: Vec<_> = rows.iter().map(|r| (r.n, r.dense_ops)).collect();
    Ok(BenchReport {
        structured_fit: fit_power(&structured_points, 2),
        dense_fit: fit_power(&dense_points, 3),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_count_is_two_n_times_n_minus_one() {
        // D: N(N-1); W and L: N(N-1)/2 each
        for n in [1usize, 2, 5, 9] {
            let nodes = chebyshev_nodes(n);
            assert_eq!(structured_ops(&nodes).unwrap(), (2 * n * (n - 1)) as u64);
        }
    }

    #[test]
    fn exact_power_law_fits_perfectly() {
        let pts: Vec<_> = [4usize, 8, 16].iter().map(|&n| (n, 3 * (n * n) as u64)).collect();
        let fit = fit_power(&pts, 2);
        assert!((fit.coefficient - 3.0).abs() < 1e-12);
        assert!(fit.max_relative_deviation < 1e-12);
        assert!(fit.within_tolerance);
        let cubic = fit_power(&pts, 3);
        assert!(!cubic.within_tolerance);
    }

    #[test]
    fn chebyshev_nodes_are_distinct() {
        assert!(Spectrum::simple(chebyshev_nodes(64)).is_ok());
    }
}
