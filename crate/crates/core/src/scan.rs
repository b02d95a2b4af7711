//! Per-prime pipeline: point counts, L-polynomial, Weil check, record.

use crate::arith::character_table;
use crate::counting::{count_points_with, good_primes, HyperellipticCurve};
use crate::exec::Exec;
use crate::lpoly::lpoly_from_counts;
use crate::stats::ScanRecord;
use crate::Result;

/// Record for one good prime.
pub fn scan_prime(curve: &HyperellipticCurve, p: u64) -> Result<ScanRecord> {
    let table = character_table(p)?;
    let n1 = count_points_with(curve, &table, 1)?;
    let n2 = match curve.genus() {
        2 => Some(count_points_with(curve, &table, 2)?),
        _ => None,
    };
    let lp = lpoly_from_counts(curve.genus(), p, n1 as i64, n2.map(|n| n as i64))?;
    Ok(ScanRecord::new(&lp, n1, n2))
}

/// Records for all good primes `p <= bound`, ascending. Any count that
/// violates the Weil bound aborts the scan.
pub fn scan_curve(curve: &HyperellipticCurve, bound: u64, exec: Exec) -> Result<Vec<ScanRecord>> {
    let primes = good_primes(curve, bound);
    exec.map(&primes, |&p| scan_prime(curve, p))
        .into_iter()
        .collect()
}
