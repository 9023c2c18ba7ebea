//! Vector majorisation predicates and the water-filling construction of
//! an intermediate vector z with z ≺ y and z ≤ x.
//!
//! Conventions: `x ≺_w y` (weak submajorisation) compares descending
//! partial sums, `x ≺^w y` (weak supermajorisation) compares ascending
//! partial sums, and `x ≺ y` adds equality of totals to submajorisation.

use crate::error::{Error, Result};

/// An ordered list of strictly positive reals.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveVector(Vec<f64>);

impl PositiveVector {
    /// Validates positivity and non-emptiness.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Dimension("vector must have length >= 1".into()));
        }
        for (i, &v) in entries.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Constraint {
                    index: i,
                    message: format!("entry {v} is not strictly positive and finite"),
                });
            }
        }
        Ok(Self(entries))
    }

    pub fn from_slice(entries: &[f64]) -> Result<Self> {
        Self::new(entries.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Default slack used by callers that do not pass one explicitly:
    /// 1e-12 × max(1, Σ|y|), scale-safe at equality boundaries.
    pub fn default_slack(&self) -> f64 {
        1e-12 * self.0.iter().map(|v| v.abs()).sum::<f64>().max(1.0)
    }
}

impl std::ops::Index<usize> for PositiveVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Outcome of a majorisation test with diagnostics.
///
/// When `holds` is false, `first_violation_k` is the smallest prefix
/// length k at which the defining partial-sum inequality fails, and the
/// two partial sums are those measured at that k. When it holds, the
/// partial sums are the full sums of both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct MajorisationVerdict {
    pub holds: bool,
    pub first_violation_k: Option<usize>,
    pub lhs_partial_sum: f64,
    pub rhs_partial_sum: f64,
}

impl MajorisationVerdict {
    fn pass(lhs: f64, rhs: f64) -> Self {
        Self {
            holds: true,
            first_violation_k: None,
            lhs_partial_sum: lhs,
            rhs_partial_sum: rhs,
        }
    }

    fn fail(k: usize, lhs: f64, rhs: f64) -> Self {
        Self {
            holds: false,
            first_violation_k: Some(k),
            lhs_partial_sum: lhs,
            rhs_partial_sum: rhs,
        }
    }
}

fn check_lengths(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "vectors have different lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

/// Stable descending sort; ties keep their original relative order.
fn sorted_descending(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Stable ascending sort.
fn sorted_ascending(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    s
}

// Raw-slice predicates. Majorisation is well defined for arbitrary real
// vectors; the horn module needs that generality, so the arithmetic
// lives here and the public PositiveVector operations delegate.

pub(crate) fn weakly_submajorized_raw(x: &[f64], y: &[f64], slack: f64) -> MajorisationVerdict {
    let xd = sorted_descending(x);
    let yd = sorted_descending(y);
    let (mut sx, mut sy) = (0.0, 0.0);
    for k in 0..xd.len() {
        sx += xd[k];
        sy += yd[k];
        if sx > sy + slack {
            return MajorisationVerdict::fail(k + 1, sx, sy);
        }
    }
    MajorisationVerdict::pass(sx, sy)
}

pub(crate) fn weakly_supermajorized_raw(x: &[f64], y: &[f64], slack: f64) -> MajorisationVerdict {
    let xa = sorted_ascending(x);
    let ya = sorted_ascending(y);
    let (mut sx, mut sy) = (0.0, 0.0);
    for k in 0..xa.len() {
        sx += xa[k];
        sy += ya[k];
        if sx < sy - slack {
            return MajorisationVerdict::fail(k + 1, sx, sy);
        }
    }
    MajorisationVerdict::pass(sx, sy)
}

pub(crate) fn majorized_raw(x: &[f64], y: &[f64], slack: f64) -> MajorisationVerdict {
    let sub = weakly_submajorized_raw(x, y, slack);
    if !sub.holds {
        return sub;
    }
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    if (sx - sy).abs() > slack {
        return MajorisationVerdict::fail(x.len(), sx, sy);
    }
    MajorisationVerdict::pass(sx, sy)
}

/// Returns the entries of `x` rearranged in non-increasing order (x^↓).
pub fn sort_descending(x: &PositiveVector) -> PositiveVector {
    PositiveVector(sorted_descending(x.entries()))
}

/// Returns the entries of `x` rearranged in non-decreasing order (x^↑).
pub fn sort_ascending(x: &PositiveVector) -> PositiveVector {
    PositiveVector(sorted_ascending(x.entries()))
}

/// x ≺_w y: every descending partial sum of x is ≤ that of y (+ slack).
pub fn is_weakly_submajorized(
    x: &PositiveVector,
    y: &PositiveVector,
    slack: f64,
) -> Result<MajorisationVerdict> {
    check_lengths(x.entries(), y.entries())?;
    Ok(weakly_submajorized_raw(x.entries(), y.entries(), slack))
}

/// x ≺^w y: every ascending partial sum of x is ≥ that of y (− slack).
pub fn is_weakly_supermajorized(
    x: &PositiveVector,
    y: &PositiveVector,
    slack: f64,
) -> Result<MajorisationVerdict> {
    check_lengths(x.entries(), y.entries())?;
    Ok(weakly_supermajorized_raw(x.entries(), y.entries(), slack))
}

/// x ≺ y: weak submajorisation plus |Σx − Σy| ≤ slack.
pub fn is_majorized(
    x: &PositiveVector,
    y: &PositiveVector,
    slack: f64,
) -> Result<MajorisationVerdict> {
    check_lengths(x.entries(), y.entries())?;
    Ok(majorized_raw(x.entries(), y.entries(), slack))
}

/// Membership in Σ_y = {x : x ≺^w y}, the union of positive-orthant
/// translates over the permutohedron of y.
pub fn is_in_sigma(x: &PositiveVector, y: &PositiveVector) -> Result<bool> {
    Ok(is_weakly_supermajorized(x, y, y.default_slack())?.holds)
}

/// Water-filling: given x ≺^w y, returns z with z ≺ y and z ≤ x.
///
/// z_i = min(x_i, t) in the original order of x, with the level t fixed
/// by Σ_i min(x_i, t) = Σ_i y_i. The level is found exactly by sorting
/// x and solving the segment equation in closed form, not by bisection.
pub fn waterfill_intermediate(x: &PositiveVector, y: &PositiveVector) -> Result<PositiveVector> {
    check_lengths(x.entries(), y.entries())?;
    let verdict = weakly_supermajorized_raw(x.entries(), y.entries(), y.default_slack());
    if !verdict.holds {
        let k = verdict.first_violation_k.unwrap();
        return Err(Error::Constraint {
            index: k,
            message: format!(
                "x is not weakly supermajorised by y: bottom-{k} sums {} < {}",
                verdict.lhs_partial_sum, verdict.rhs_partial_sum
            ),
        });
    }

    let n = x.len();
    let xa = sorted_ascending(x.entries());
    let target = y.sum();

    // On segment j (x^↑_j ≤ t ≤ x^↑_{j+1}) the clamp sum is
    // prefix_j + (n−j)·t; scan segments for the one containing the level.
    let mut prefix = 0.0;
    let mut level = xa[n - 1];
    for j in 0..n {
        let t = (target - prefix) / (n - j) as f64;
        let seg_hi = xa[j];
        if t <= seg_hi || j == n - 1 {
            level = t.min(seg_hi);
            break;
        }
        prefix += seg_hi;
    }

    let z: Vec<f64> = x.entries().iter().map(|&xi| xi.min(level)).collect();
    PositiveVector::new(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[f64]) -> PositiveVector {
        PositiveVector::from_slice(v).unwrap()
    }

    #[test]
    fn sorts_descending_and_ascending() {
        assert_eq!(sort_descending(&pv(&[1.0, 3.0, 2.0])).entries(), &[3.0, 2.0, 1.0]);
        assert_eq!(sort_descending(&pv(&[5.0, 5.0])).entries(), &[5.0, 5.0]);
        assert_eq!(sort_descending(&pv(&[7.0])).entries(), &[7.0]);
        assert_eq!(sort_ascending(&pv(&[1.0, 3.0, 2.0])).entries(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn rejects_invalid_vectors() {
        assert!(PositiveVector::new(vec![]).is_err());
        assert!(PositiveVector::new(vec![1.0, 0.0]).is_err());
        assert!(PositiveVector::new(vec![1.0, -2.0]).is_err());
        assert!(PositiveVector::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn weak_submajorisation_examples() {
        let v = is_weakly_submajorized(&pv(&[1.0, 3.0]), &pv(&[2.0, 4.0]), 0.0).unwrap();
        assert!(v.holds);

        // 5+5 = 10 > 9 = 6+3 at k=2
        let v = is_weakly_submajorized(&pv(&[5.0, 5.0]), &pv(&[6.0, 3.0]), 0.0).unwrap();
        assert!(!v.holds);
        assert_eq!(v.first_violation_k, Some(2));
        assert_eq!(v.lhs_partial_sum, 10.0);
        assert_eq!(v.rhs_partial_sum, 9.0);

        let v = is_weakly_submajorized(&pv(&[2.0, 2.0]), &pv(&[2.0, 2.0]), 0.0).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn weak_supermajorisation_examples() {
        assert!(is_weakly_supermajorized(&pv(&[2.0, 4.0]), &pv(&[1.0, 3.0]), 0.0).unwrap().holds);

        // ascending sums: 5 < 5? no; 10 < 11 at k=2
        let v = is_weakly_supermajorized(&pv(&[5.0, 5.0]), &pv(&[6.0, 5.0]), 0.0).unwrap();
        assert!(!v.holds);
        assert_eq!(v.first_violation_k, Some(2));

        // hand oracle: sorted partial sums 2>=1, 4>=2, 104>=12
        let v =
            is_weakly_supermajorized(&pv(&[2.0, 2.0, 100.0]), &pv(&[10.0, 1.0, 1.0]), 0.0).unwrap();
        assert!(v.holds);
    }

    #[test]
    fn majorisation_examples() {
        assert!(is_majorized(&pv(&[2.0, 2.0]), &pv(&[3.0, 1.0]), 0.0).unwrap().holds);
        assert!(!is_majorized(&pv(&[3.0, 1.0]), &pv(&[2.0, 2.0]), 0.0).unwrap().holds);
        // 8<=10, 10<=11, 12=12
        assert!(is_majorized(&pv(&[2.0, 2.0, 8.0]), &pv(&[10.0, 1.0, 1.0]), 0.0).unwrap().holds);
    }

    #[test]
    fn majorisation_total_sum_violation_reports_k_n() {
        let v = is_majorized(&pv(&[1.0, 1.0]), &pv(&[3.0, 1.0]), 0.0).unwrap();
        assert!(!v.holds);
        assert_eq!(v.first_violation_k, Some(2));
    }

    #[test]
    fn length_mismatch_is_dimension_error() {
        assert!(matches!(
            is_majorized(&pv(&[1.0]), &pv(&[1.0, 2.0]), 0.0),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn waterfill_examples() {
        // Σx = Σy forces z = x
        let z = waterfill_intermediate(&pv(&[2.0, 2.0]), &pv(&[1.0, 3.0])).unwrap();
        assert_eq!(z.entries(), &[2.0, 2.0]);

        // solve 2+2+t = 12 for t = 8
        let z = waterfill_intermediate(&pv(&[2.0, 2.0, 100.0]), &pv(&[10.0, 1.0, 1.0])).unwrap();
        assert_eq!(z.entries(), &[2.0, 2.0, 8.0]);
        let y = pv(&[10.0, 1.0, 1.0]);
        assert!(is_majorized(&z, &y, y.default_slack()).unwrap().holds);

        // n = 1: t = Σy
        let z = waterfill_intermediate(&pv(&[2.0]), &pv(&[1.0])).unwrap();
        assert_eq!(z.entries(), &[1.0]);
    }

    #[test]
    fn waterfill_keeps_original_order() {
        let x = pv(&[100.0, 2.0, 2.0]);
        let z = waterfill_intermediate(&x, &pv(&[10.0, 1.0, 1.0])).unwrap();
        assert_eq!(z.entries(), &[8.0, 2.0, 2.0]);
    }

    #[test]
    fn waterfill_rejects_bad_precondition() {
        let err = waterfill_intermediate(&pv(&[0.5, 0.5]), &pv(&[3.0, 1.0])).unwrap_err();
        match err {
            Error::Constraint { index, .. } => assert_eq!(index, 1),
            other => panic!("expected constraint error, got {other:?}"),
        }
    }

    #[test]
    fn sigma_membership_examples() {
        let y = pv(&[3.0, 1.0]);
        assert!(is_in_sigma(&y, &y).unwrap());
        assert!(is_in_sigma(&pv(&[100.0, 100.0]), &y).unwrap());
        assert!(!is_in_sigma(&pv(&[0.5, 0.5]), &y).unwrap());
    }

    #[test]
    fn reflexivity_and_fixed_point() {
        let x = pv(&[3.0, 1.0, 2.5]);
        assert!(is_majorized(&x, &x, 0.0).unwrap().holds);
        let z = waterfill_intermediate(&x, &x).unwrap();
        for (a, b) in z.entries().iter().zip(x.entries()) {
            assert!((a - b).abs() <= 1e-15 * b.abs());
        }
    }
}
