//! Integer partitions with a fixed Ferrers convention: cell `(i, j)` belongs
//! to `λ` iff `0 <= j < λ[i]` (row `i`, column `j`).

use std::fmt;

use serde::{Deserialize, Serialize};

/// A weakly decreasing sequence of positive parts. Serializes as `[3,1]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Accepts parts in any order; zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Length of row `i` (zero past the last row).
    pub fn row(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Ferrers membership of cell `(i, j)`.
    pub fn contains(&self, i: u32, j: u32) -> bool {
        j < self.row(i as usize)
    }

    /// Largest of the row count and the first row length.
    pub fn extent(&self) -> u32 {
        self.row(0).max(self.0.len() as u32)
    }

    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i as u32, j)))
    }

    /// Transpose of the Ferrers diagram.
    pub fn conjugate(&self) -> Self {
        let width = self.row(0);
        Partition(
            (0..width)
                .map(|j| self.0.iter().take_while(|&&r| r > j).count() as u32)
                .collect(),
        )
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = String;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        if parts.contains(&0) {
            return Err("partition parts must be positive".into());
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err("partition parts must be weakly decreasing".into());
        }
        Ok(Partition(parts))
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first,
/// `(1,...,1)` last.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// p(n) via Euler's pentagonal recurrence.
    fn partition_numbers(max: usize) -> Vec<u64> {
        let mut p = vec![0i64; max + 1];
        p[0] = 1;
        for n in 1..=max {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[n] += sign * p[n - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= n {
                    p[n] += sign * p[n - g2];
                }
                k += 1;
            }
        }
        p.into_iter().map(|v| v as u64).collect()
    }

    #[test]
    fn partitions_of_zero_is_empty_partition() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
    }

    #[test]
    fn partitions_of_four_in_order() {
        let expect: Vec<Partition> = [
            vec![4],
            vec![3, 1],
            vec![2, 2],
            vec![2, 1, 1],
            vec![1, 1, 1, 1],
        ]
        .into_iter()
        .map(Partition)
        .collect();
        assert_eq!(partitions_of(4), expect);
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        let p = partition_numbers(20);
        assert_eq!(p[8], 22);
        for n in 0..=20u32 {
            let parts = partitions_of(n);
            assert_eq!(parts.len() as u64, p[n as usize], "n = {n}");
            assert!(parts.iter().all(|l| l.size() == n));
            assert!(
                parts.windows(2).all(|w| w[0] > w[1]),
                "not reverse-lex at n = {n}"
            );
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(Partition::new(vec![1]).conjugate(), Partition::new(vec![1]));
        assert_eq!(
            Partition::new(vec![3, 1]).conjugate(),
            Partition::new(vec![2, 1, 1])
        );
        for n in 0..=8 {
            for l in partitions_of(n) {
                let c = l.conjugate();
                assert_eq!(c.size(), l.size());
                assert_eq!(c.conjugate(), l);
                for (i, j) in l.cells() {
                    assert!(c.contains(j, i));
                }
            }
        }
    }

    #[test]
    fn json_is_array_of_parts() {
        let l = Partition::new(vec![1, 3]);
        assert_eq!(serde_json::to_string(&l).unwrap(), "[3,1]");
        let back: Partition = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
        assert!(serde_json::from_str::<Partition>("[2,0]").is_err());
    }
}
