//! Minimal hitting sets (transversals) of small set families.
//!
//! Sets are bitmasks over at most 63 elements. Enumeration goes by
//! increasing size and skips supersets of transversals already found, so the
//! result is exactly the antichain of minimal ones.

/// Does `set` meet every member of `family`?
pub fn hits(set: u64, family: &[u64]) -> bool {
    family.iter().all(|&f| f & set != 0)
}

/// Next larger mask with the same popcount (Gosper's hack).
fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// All minimal transversals of `family` over the ground set `0..n`, sorted
/// lexicographically as index lists. Empty when some member is empty.
pub fn minimal_hitting_sets(n: usize, family: &[u64]) -> Vec<u64> {
    assert!(n < 64, "ground set too large");
    if family.contains(&0) {
        return Vec::new();
    }
    if family.is_empty() {
        return vec![0];
    }
    let mut found: Vec<u64> = Vec::new();
    for k in 1..=n {
        let mut mask: u64 = (1u64 << k) - 1;
        while mask < (1u64 << n) {
            if !found.iter().any(|&h| h & mask == h) && hits(mask, family) {
                found.push(mask);
            }
            mask = next_same_popcount(mask);
        }
    }
    found.sort_by_key(|&m| to_indices(m));
    found
}

pub fn to_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn from_indices(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}
