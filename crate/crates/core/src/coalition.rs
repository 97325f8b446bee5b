//! Coalitions as bitmasks over player positions.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{BitAnd, BitOr, Sub};

/// Hard cap on the number of players; a full game table has `2^n - 1` entries.
pub const MAX_PLAYERS: usize = 24;

/// A set of player positions (0-based). Bit `i` set means player `i` is a member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The grand coalition over `n` players.
    pub fn grand(n: usize) -> Self {
        debug_assert!(n <= MAX_PLAYERS);
        Self(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        Self(1 << i)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        members.into_iter().fold(Self::EMPTY, |acc, i| acc.with(i))
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub const fn with(self, i: usize) -> Self {
        Self(self.0 | (1 << i))
    }

    pub const fn without(self, i: usize) -> Self {
        Self(self.0 & !(1 << i))
    }

    pub const fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member positions in ascending order.
    pub fn members(self) -> Members {
        Members(self.0)
    }

    /// Position of member `i` within the ascending member list.
    pub fn rank_of(self, i: usize) -> Option<usize> {
        if self.contains(i) {
            Some((self.0 & ((1u32 << i) - 1)).count_ones() as usize)
        } else {
            None
        }
    }

    /// All subsets of `self` including the empty set and `self`, in
    /// decreasing bit order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(self.0),
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// Comma-joined 1-based member indices, e.g. `1,3`. This is also the key
/// format of game files.
impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

impl BitOr for Coalition {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        Self(self.0 | rhs.0)
    }
}

impl BitAnd for Coalition {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        Self(self.0 & rhs.0)
    }
}

impl Sub for Coalition {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 & !rhs.0)
    }
}

pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

pub struct Subsets {
    universe: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.universe)
        };
        Some(Coalition(cur))
    }
}

/// Every nonempty coalition of `n` players, ordered by size and then
/// lexicographically by sorted member list: for `n = 3` this is
/// `{1} {2} {3} {1,2} {1,3} {2,3} {1,2,3}`.
pub fn coalitions(n: usize) -> impl Iterator<Item = Coalition> {
    assert!(n <= MAX_PLAYERS, "at most {MAX_PLAYERS} players");
    (1..=n).flat_map(move |k| Combinations::new(n, k))
}

/// Same order as [`coalitions`] but restricted to subsets of `within`.
pub fn sub_coalitions(within: Coalition) -> impl Iterator<Item = Coalition> {
    let members: Vec<usize> = within.members().collect();
    let m = members.len();
    coalitions(m).map(move |local| Coalition::from_members(local.members().map(|j| members[j])))
}

/// k-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        if self.done {
            return None;
        }
        let out = Coalition::from_members(self.idx.iter().copied());
        let k = self.idx.len();
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if self.idx[pos] < self.n - k + pos {
                self.idx[pos] += 1;
                for j in pos + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(out);
            }
        }
        self.done = true;
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn render(n: usize) -> Vec<alloc::string::String> {
        coalitions(n).map(|c| format!("{c:?}")).collect()
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(render(1), ["{1}"]);
        assert_eq!(render(2), ["{1}", "{2}", "{1,2}"]);
        assert_eq!(
            render(3),
            ["{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
        assert_eq!(coalitions(4).count(), 15);
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        for n in 1..=10 {
            let mut seen: Vec<u32> = coalitions(n).map(Coalition::bits).collect();
            assert_eq!(seen.len(), (1 << n) - 1);
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), (1 << n) - 1);
            assert!(seen.iter().all(|&b| b != 0 && b < 1 << n));
        }
    }

    #[test]
    fn sub_coalitions_follow_global_order() {
        let within = Coalition::from_members([0, 2, 3]);
        let got: Vec<_> = sub_coalitions(within).map(|c| format!("{c:?}")).collect();
        assert_eq!(got, ["{1}", "{3}", "{4}", "{1,3}", "{1,4}", "{3,4}", "{1,3,4}"]);
    }

    #[test]
    fn subsets_and_rank() {
        let c = Coalition::from_members([1, 3]);
        let subs: Vec<u32> = c.subsets().map(Coalition::bits).collect();
        assert_eq!(subs, [0b1010, 0b1000, 0b0010, 0]);
        assert_eq!(c.rank_of(3), Some(1));
        assert_eq!(c.rank_of(1), Some(0));
        assert_eq!(c.rank_of(0), None);
        assert_eq!(format!("{c}"), "2,4");
    }
}
