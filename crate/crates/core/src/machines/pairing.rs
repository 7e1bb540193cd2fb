//! Cantor pairing `⟨a, b⟩ = (a+b)(a+b+1)/2 + b`.

use num_bigint::BigUint;
use num_traits::One;

/// `⟨a, b⟩`, or `None` on overflow.
pub fn pair(a: u64, b: u64) -> Option<u64> {
    let s = a as u128 + b as u128;
    let z = s.checked_mul(s + 1)? / 2 + b as u128;
    u64::try_from(z).ok()
}

pub fn unpair(z: u64) -> (u64, u64) {
    let z = z as u128;
    // s = largest with s(s+1)/2 <= z
    let s = ((8 * z + 1).isqrt() - 1) / 2;
    let b = z - s * (s + 1) / 2;
    ((s - b) as u64, b as u64)
}

pub fn pair_big(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    ((&s * (&s + 1u32)) >> 1u32) + b
}

pub fn unpair_big(z: &BigUint) -> (BigUint, BigUint) {
    let s = ((z * 8u32 + 1u32).sqrt() - BigUint::one()) >> 1u32;
    let b = z - ((&s * (&s + 1u32)) >> 1u32);
    (&s - &b, b)
}
