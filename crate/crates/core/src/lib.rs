//! Frobenius statistics of genus 1 and 2 hyperelliptic curves over Q and the
//! Sato-Tate groups that predict them.
//!
//! The crate is organized bottom-up:
//!
//! - [`arith`]: primes, quadratic characters of `F_p` and `F_{p^2}`, polynomials mod `p`.
//! - [`counting`]: point counts of `y^2 = f(x)` by character sums.
//! - [`lpoly`]: L-polynomials assembled from point counts, normalization, Weil checks.
//! - [`haar`]: the Sato-Tate catalog with exact Weyl-integration moments and samplers.
//! - [`stats`]: empirical moments, point-mass densities, histograms and classification.
//! - [`birch`]: fixed-prime moments of the Frobenius trace over all Weierstrass curves.
//! - [`chebotarev`]: factorization shapes against cycle types of a permutation group.
//! - [`scan`]: the per-prime pipeline producing [`stats::ScanRecord`]s.
//!
//! Data-parallel loops go through [`exec::Exec`], which uses rayon when the
//! `parallel` feature is enabled and runs sequentially otherwise.

pub mod arith;
pub mod birch;
pub mod chebotarev;
pub mod counting;
mod error;
pub mod exec;
pub mod haar;
pub mod lpoly;
pub mod scan;
pub mod stats;

pub use error::{Error, Result};
