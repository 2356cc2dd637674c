//! Integer partitions and the counting formulas for conjugacy classes.

use std::fmt;

use crate::error::{Error, Result};

/// An integer partition, stored with its parts weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds the canonical (sorted) partition from parts in any order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty list of parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "non-positive part in {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// The partition `(d, 1^(n-d))`, the cycle type of a `d`-cycle in `S_n`.
    pub fn hook_cycle(d: u32, n: u32) -> Result<Self> {
        if d == 0 || d > n {
            return Err(Error::InvalidPartition(format!(
                "no {d}-cycle type in S_{n}"
            )));
        }
        let mut parts = vec![d];
        parts.extend(std::iter::repeat_n(1, (n - d) as usize));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Exponent view `1^{k_1} 2^{k_2} ...`: pairs `(i, k_i)` with `k_i > 0`,
    /// largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `k_i`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    /// Exponent notation such as `2 1^2` or `1^3`.
    pub fn exponent_notation(&self) -> String {
        self.multiplicities()
            .into_iter()
            .map(|(p, k)| {
                if k == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `z_λ = Π_i i^{k_i} k_i!`, the order of the centralizer of any
    /// permutation of this type.
    pub fn z(&self) -> u128 {
        self.multiplicities()
            .into_iter()
            .map(|(i, k)| (i as u128).pow(k) * factorial(k))
            .product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of permutations of `S_n` with cycle type `lambda`, i.e. `n!/z_λ`.
pub fn class_size(lambda: &Partition, n: u32) -> Result<u128> {
    if lambda.weight() != n {
        return Err(Error::WeightMismatch {
            partition: lambda.to_string(),
            weight: lambda.weight(),
            expected: n,
        });
    }
    Ok(factorial(n) / lambda.z())
}

/// Number of `d`-cycles in `S_n`: `(1/d) C(n,d) d!`, and 0 when `d > n`.
pub fn count_d_cycles(n: u32, d: u32) -> u128 {
    if d == 0 || d > n {
        return 0;
    }
    binomial(n, d) * factorial(d) / d as u128
}

/// All partitions of `n`, in reverse lexicographic order (`(n)` first,
/// `(1^n)` last). Empty for `n = 0`.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn make_partition_sorts() {
        assert_eq!(part(&[1, 2, 1]).parts(), &[2, 1, 1]);
        assert_eq!(part(&[3]).parts(), &[3]);
        assert_eq!(part(&[2, 2]).parts(), &[2, 2]);
        assert_eq!(part(&[1, 2, 1]).weight(), 4);
    }

    #[test]
    fn make_partition_rejects_bad_input() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(&part(&[1, 1]), 2).unwrap(), 1);
        // brute force over S_4 (see tests/combinat_bruteforce.rs)
        assert_eq!(class_size(&part(&[2, 1, 1]), 4).unwrap(), 6);
        assert_eq!(class_size(&part(&[3]), 3).unwrap(), 2);
        assert!(class_size(&part(&[3]), 4).is_err());
    }

    #[test]
    fn d_cycle_counts() {
        assert_eq!(count_d_cycles(3, 3), 2);
        assert_eq!(count_d_cycles(4, 2), 6);
        assert_eq!(count_d_cycles(5, 3), 20);
        assert_eq!(count_d_cycles(2, 3), 0);
    }

    #[test]
    fn exponent_view() {
        let p = part(&[2, 1, 1]);
        assert_eq!(p.multiplicities(), vec![(2, 1), (1, 2)]);
        assert_eq!(p.exponent_notation(), "2 1^2");
        assert_eq!(part(&[1, 1, 1]).exponent_notation(), "1^3");
        assert_eq!(p.multiplicity(1), 2);
        assert_eq!(p.to_string(), "(2,1,1)");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(
            partitions(3),
            vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]
        );
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=8 {
            let total: u128 = partitions(n)
                .iter()
                .map(|l| class_size(l, n).unwrap())
                .sum();
            assert_eq!(total, factorial(n));
        }
    }
}
