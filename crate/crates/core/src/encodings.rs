//! Rogers' pairing function `τ`, its left-nested k-ary extension and the
//! sequence-prefix code `⟨S(0),...,S(n)⟩ = τ^{n+2}(n, S(0), ..., S(n))`.
//!
//! `τ(x, y) = ((x + y)(x + y + 1)) / 2 + x`, which enumerates pairs diagonal by
//! diagonal (increasing `x + y`), and within a diagonal by increasing `x`.

use num_traits::{One, Zero};

use crate::{Error, Nat, Result};

/// `τ(x, y) = ½(x² + 2xy + y² + 3x + y)`.
pub fn tau(x: &Nat, y: &Nat) -> Nat {
    let d = x + y;
    let triangle = (&d * (&d + 1u32)) >> 1;
    triangle + x
}

/// Inverse of [`tau`]: the unique `(x, y)` with `tau(x, y) == z`.
pub fn tau_inv(z: &Nat) -> (Nat, Nat) {
    // Diagonal d is the largest integer with d(d+1)/2 <= z.
    let disc: Nat = (z << 3) + 1u32;
    let d: Nat = (disc.sqrt() - 1u32) >> 1;
    let triangle = (&d * (&d + 1u32)) >> 1;
    let x = z - triangle;
    let y = &d - &x;
    (x, y)
}

/// `τ^k(x_1, ..., x_k)`, folded from the left; `τ^1(x) = x`.
pub fn tau_k(values: &[Nat]) -> Result<Nat> {
    let (first, rest) = values.split_first().ok_or(Error::EmptyList)?;
    Ok(rest.iter().fold(first.clone(), |acc, v| tau(&acc, v)))
}

/// Inverse of [`tau_k`] for a fixed arity `k`.
pub fn tau_k_inv(code: &Nat, k: usize) -> Result<Vec<Nat>> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let mut out = Vec::with_capacity(k);
    let mut rest = code.clone();
    for _ in 1..k {
        let (inner, last) = tau_inv(&rest);
        out.push(last);
        rest = inner;
    }
    out.push(rest);
    out.reverse();
    Ok(out)
}

/// Prefix code `⟨S(0),...,S(n)⟩ = τ^{n+2}(n, S(0), ..., S(n))`.
pub fn encode_prefix(values: &[Nat]) -> Result<Nat> {
    if values.is_empty() {
        return Err(Error::EmptyList);
    }
    let n = Nat::from(values.len() - 1);
    Ok(values.iter().fold(n, |acc, v| tau(&acc, v)))
}

/// Inverse of [`encode_prefix`].
///
/// Components are peeled off the outside of the nest until the remainder equals
/// the number of peeled elements minus one, which is the length header. Codes
/// that are not in the image of `encode_prefix` decode to the one-element
/// prefix `[code]`, so the function is total.
pub fn decode_prefix(code: &Nat) -> Vec<Nat> {
    let mut peeled = Vec::new();
    let mut rest = code.clone();
    loop {
        let (inner, last) = tau_inv(&rest);
        peeled.push(last);
        rest = inner;
        // `rest` never increases while `peeled.len()` grows by one each round.
        let header = Nat::from(peeled.len() - 1);
        match rest.cmp(&header) {
            std::cmp::Ordering::Equal => {
                peeled.reverse();
                return peeled;
            }
            std::cmp::Ordering::Less => return vec![code.clone()],
            std::cmp::Ordering::Greater => {}
        }
    }
}

/// Number of binary digits of `x`, counting `0` as one digit.
pub fn bit_len(x: &Nat) -> u64 {
    x.bits().max(1)
}

/// Canonical binary digits of `x`, most significant first; `0` is `[false]`.
pub fn binary_digits(x: &Nat) -> Vec<bool> {
    if x.is_zero() {
        return vec![false];
    }
    let n = x.bits();
    (0..n).rev().map(|i| x.bit(i)).collect()
}

/// Reads a most-significant-first bit string as a number; empty is `0`.
pub fn from_binary_digits(bits: &[bool]) -> Nat {
    let mut acc = Nat::zero();
    for &b in bits {
        acc <<= 1u8;
        if b {
            acc += Nat::one();
        }
    }
    acc
}
