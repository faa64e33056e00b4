//! Value distributions `N[v] = #{x in F_p : f(x) = v}`.

use crate::field_poly::PolyModP;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueDist {
    p: u64,
    counts: Vec<u32>,
}

impl ValueDist {
    pub fn from_counts(p: u64, counts: Vec<u32>) -> Self {
        assert_eq!(counts.len() as u64, p, "one count per residue");
        Self { p, counts }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// `sum_v N[v]^2 = #{(x, y) : f(x) = f(y)}`.
    pub fn collisions(&self) -> u64 {
        self.counts.iter().map(|&c| (c as u64) * (c as u64)).sum()
    }

    pub fn max_fiber(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }
}

/// Tallies `f(x)` over `F_p`, stepping through the values with forward
/// differences so each point costs `d` modular additions.
pub fn value_distribution(f: &PolyModP) -> ValueDist {
    let k = f.field();
    let p = k.modulus();
    let d = f.degree().unwrap_or(0);
    let mut counts = vec![0u32; p as usize];
    // diffs[i] = Delta^i f(x) at the current x.
    let mut diffs: Vec<u64> = (0..=d as u64).map(|x| f.eval(x % p)).collect();
    for i in 1..=d {
        for j in (i..=d).rev() {
            diffs[j] = k.sub(diffs[j], diffs[j - 1]);
        }
    }
    for _ in 0..p {
        counts[diffs[0] as usize] += 1;
        for j in 0..d {
            diffs[j] = k.add(diffs[j], diffs[j + 1]);
        }
    }
    ValueDist { p, counts }
}
