//! Binned empirical spectral distribution with semicircle and Gaussian
//! reference masses.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use super::SpectrumResult;

/// One histogram bin of `λ/√d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub left: f64,
    pub right: f64,
    pub mass: f64,
    pub semicircle_ref: f64,
    pub gaussian_ref: f64,
    /// Semicircle mass under the `2/(4π²)` density constant.
    pub semicircle_printed_ref: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    /// Mean degree `d` used to scale the eigenvalues.
    pub degree: f64,
    pub bins: Vec<HistogramBin>,
}

impl Histogram {
    pub fn total_mass(&self) -> f64 {
        self.bins.iter().map(|b| b.mass).sum()
    }

    /// L¹ distance between the empirical and semicircle bin masses.
    pub fn l1_semicircle(&self) -> f64 {
        self.bins.iter().map(|b| (b.mass - b.semicircle_ref).abs()).sum()
    }

    /// L¹ distance between the empirical and standard Gaussian bin masses.
    pub fn l1_gaussian(&self) -> f64 {
        self.bins.iter().map(|b| (b.mass - b.gaussian_ref).abs()).sum()
    }
}

/// Cumulative distribution of the semicircle law on `[−2, 2]`.
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        return 0.0;
    }
    if x >= 2.0 {
        return 1.0;
    }
    0.5 + x * libm::sqrt(4.0 - x * x) / (4.0 * PI) + libm::asin(x / 2.0) / PI
}

/// Standard normal cumulative distribution.
pub fn gaussian_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / SQRT_2))
}

/// Histogram of `λ/√d` over `[−(d+1)/√d, (d+1)/√d]` in `bins` equal bins,
/// where `d` is the mean degree recovered from `Σλ² / N`.
///
/// With `bins = d + 1` each bin is centered on one atom `(d − 2j)/√d` of the
/// hypercube spectrum. Reference masses are exact bin integrals of the
/// reference laws, with the Gaussian tails folded into the end bins.
pub fn empirical_histogram(spectrum: &SpectrumResult, bins: usize) -> Histogram {
    let bins = bins.max(1);
    let count = spectrum.len().max(1) as f64;
    let degree = spectrum.sum_of_squares() / count;
    let scale = libm::sqrt(degree.max(f64::MIN_POSITIVE));
    let reach = (degree + 1.0) / scale;
    let width = 2.0 * reach / bins as f64;
    let mut out: Vec<HistogramBin> = (0..bins)
        .map(|i| {
            let left = -reach + i as f64 * width;
            let right = if i + 1 == bins { reach } else { left + width };
            let lo = if i == 0 { f64::NEG_INFINITY } else { left };
            let hi = if i + 1 == bins { f64::INFINITY } else { right };
            let semicircle = semicircle_cdf(hi) - semicircle_cdf(lo);
            HistogramBin {
                left,
                right,
                mass: 0.0,
                semicircle_ref: semicircle,
                gaussian_ref: gaussian_cdf(hi) - gaussian_cdf(lo),
                semicircle_printed_ref: semicircle / PI,
            }
        })
        .collect();
    for &lambda in &spectrum.eigenvalues {
        let x = lambda / scale;
        let i = libm::floor((x + reach) / width);
        let i = if i < 0.0 { 0 } else { (i as usize).min(bins - 1) };
        out[i].mass += 1.0 / count;
    }
    Histogram { degree, bins: out }
}
