//! Subset-as-bitmask helpers shared by every system.

/// Removes bit `e` and shifts the higher bits down.
pub fn remove_bit(mask: u32, e: usize) -> u32 {
    let low = mask & ((1u32 << e) - 1);
    let high = (mask >> (e + 1)) << e;
    low | high
}

/// Inverse of [`remove_bit`]: opens a zero at position `e`.
pub fn insert_zero(mask: u32, e: usize) -> u32 {
    let low = mask & ((1u32 << e) - 1);
    let high = (mask >> e) << (e + 1);
    low | high
}

pub fn popcount(mask: u32) -> i64 {
    mask.count_ones() as i64
}

pub fn elements(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

pub fn from_elements(elems: &[usize]) -> u32 {
    elems.iter().fold(0, |m, &e| m | 1 << e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remove_insert_roundtrip() {
        for m in 0..64u32 {
            for e in 0..6 {
                let r = remove_bit(m, e);
                assert_eq!(remove_bit(insert_zero(r, e), e), r);
                if m >> e & 1 == 0 {
                    assert_eq!(insert_zero(r, e), m);
                }
            }
        }
    }
}
