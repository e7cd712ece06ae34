use crate::error::{Error, Result};

/// Checks `sum a / sum b <= max over parts of (sum_part a) / (sum_part b)`
/// for pairs `(a_i >= 0, b_i > 0)` and a partition of the indices into
/// parts of one or two elements.
///
/// The inequality always holds; the check serves as an oracle. Comparison
/// uses a relative slack of `1e-12`.
pub fn mediant_partition_check(pairs: &[(f64, f64)], partition: &[Vec<usize>]) -> Result<bool> {
    if pairs.is_empty() {
        return Err(Error::BadParameter("no pairs".into()));
    }
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if !(a >= 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
            return Err(Error::BadParameter(format!(
                "pair {i} = ({a}, {b}) needs a >= 0 and b > 0"
            )));
        }
    }
    let mut seen = vec![false; pairs.len()];
    for part in partition {
        if part.is_empty() || part.len() > 2 {
            return Err(Error::BadParameter(format!(
                "parts hold one or two indices, got {part:?}"
            )));
        }
        for &i in part {
            if i >= pairs.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::BadParameter(format!(
                    "index {i} is out of range or repeated"
                )));
            }
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::BadParameter(format!(
            "index {missing} is not covered"
        )));
    }

    let (sum_a, sum_b) = pairs
        .iter()
        .fold((0.0, 0.0), |(sa, sb), &(a, b)| (sa + a, sb + b));
    let best = partition
        .iter()
        .map(|part| {
            let a: f64 = part.iter().map(|&i| pairs[i].0).sum();
            let b: f64 = part.iter().map(|&i| pairs[i].1).sum();
            a / b
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let total = sum_a / sum_b;
    Ok(total <= best + 1e-12 * best.abs().max(total.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_parts() {
        let pairs = [(1.0, 2.0), (3.0, 1.0)];
        assert!(mediant_partition_check(&pairs, &[vec![0], vec![1]]).unwrap());
    }

    #[test]
    fn equal_pairs_give_equality() {
        let pairs = [(0.3, 0.7); 5];
        let partition = [vec![0, 1], vec![2, 3], vec![4]];
        assert!(mediant_partition_check(&pairs, &partition).unwrap());
    }

    #[test]
    fn malformed_partitions_are_rejected() {
        let pairs = [(1.0, 1.0), (2.0, 1.0), (3.0, 1.0)];
        assert!(mediant_partition_check(&pairs, &[vec![0, 1, 2]]).is_err());
        assert!(mediant_partition_check(&pairs, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(mediant_partition_check(&pairs, &[vec![0, 1]]).is_err());
        assert!(mediant_partition_check(&[(1.0, 0.0)], &[vec![0]]).is_err());
    }
}
