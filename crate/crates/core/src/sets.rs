//! Rapidity-set helpers: distinctness checks and two-part partitions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Field;

/// Reject repeated entries inside one rapidity set.
pub fn check_distinct<F: Field>(name: &str, xs: &[F]) -> Result<()> {
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] == xs[j] {
                return Err(Error::DuplicateRapidity(format!("{name}[{i}] = {name}[{j}] = {}", xs[i])));
            }
        }
    }
    Ok(())
}

pub fn check_len<T>(name: &str, xs: &[T], n: usize) -> Result<()> {
    if xs.len() != n {
        return Err(Error::SizeMismatch(format!("{name} has {} entries, expected {n}", xs.len())));
    }
    Ok(())
}

/// A split of the index set `0..n` into `part_i` and its complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSplit {
    pub set_id: String,
    pub part_i: Vec<usize>,
    pub part_ii: Vec<usize>,
}

impl PartitionSplit {
    pub fn pick<T: Clone>(&self, xs: &[T]) -> (Vec<T>, Vec<T>) {
        (
            self.part_i.iter().map(|&k| xs[k].clone()).collect(),
            self.part_ii.iter().map(|&k| xs[k].clone()).collect(),
        )
    }
}

/// All `2^n` splits of `0..n`, ordered by ascending bitmask of part I.
pub fn splits(set_id: &str, n: usize) -> Vec<PartitionSplit> {
    (0u64..1 << n)
        .map(|mask| {
            let (part_i, part_ii) = (0..n).partition(|&k| mask >> k & 1 == 1);
            PartitionSplit { set_id: set_id.to_string(), part_i, part_ii }
        })
        .collect()
}

/// Splits with `|part_I| = k`, in ascending bitmask order.
pub fn splits_of_size(set_id: &str, n: usize, k: usize) -> Vec<PartitionSplit> {
    splits(set_id, n).into_iter().filter(|s| s.part_i.len() == k).collect()
}

/// `(-1)^k` in any field.
pub fn sign<F: Field>(k: usize) -> F {
    if k.is_multiple_of(2) {
        F::one()
    } else {
        -F::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rat;

    #[test]
    fn split_order_and_count() {
        let s = splits("x", 3);
        assert_eq!(s.len(), 8);
        assert_eq!(s[0].part_i, Vec::<usize>::new());
        assert_eq!(s[1].part_i, vec![0]);
        assert_eq!(s[3].part_i, vec![0, 1]);
        assert_eq!(s[5].part_ii, vec![1]);
        assert_eq!(splits_of_size("x", 4, 2).len(), 6);
    }

    #[test]
    fn distinctness() {
        assert!(check_distinct("l", &[Rat::int(1), Rat::int(2)]).is_ok());
        assert!(matches!(check_distinct("l", &[Rat::int(1), Rat::int(1)]), Err(Error::DuplicateRapidity(_))));
    }
}
