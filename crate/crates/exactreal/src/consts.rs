//! Cached enclosures of the handful of constants the kernels need.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dyadic::Dir;
use crate::interval::DyadicInterval;
use crate::rational::{rat_to_dyadic, Rational};

fn cache() -> &'static Mutex<HashMap<(u8, u32), DyadicInterval>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, u32), DyadicInterval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn bucket(bits: u32) -> u32 {
    (bits + 31) / 32 * 32
}

/// `atan(1/q)` as an exact rational partial sum plus a tail bound, for the
/// Machin evaluation of pi. Alternating series, so the truncation error is
/// bounded by the first omitted term.
fn atan_inv(q: i64, bits: u32) -> (Rational, Rational) {
    let q2 = BigInt::from(q) * BigInt::from(q);
    let mut power = BigInt::from(q); // q^(2i+1)
    let mut sum = Rational::zero();
    let mut i: i64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * i + 1) * &power);
        if term < Rational::new(BigInt::one(), BigInt::one() << (bits + 4) as usize) {
            return (sum, term);
        }
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &q2;
        i += 1;
    }
}

/// Enclosure of pi with width at most `2^(1-bits)`.
pub fn pi(bits: u32) -> DyadicInterval {
    let bits = bucket(bits);
    if let Some(v) = cache().lock().unwrap().get(&(0, bits)) {
        return *v;
    }
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    let (a5, t5) = atan_inv(5, bits + 6);
    let (a239, t239) = atan_inv(239, bits + 6);
    let mid = Rational::from(BigInt::from(16)) * a5 - Rational::from(BigInt::from(4)) * a239;
    let err = Rational::from(BigInt::from(16)) * t5 + Rational::from(BigInt::from(4)) * t239;
    let lo = rat_to_dyadic(&(&mid - &err), -i64::from(bits) - 2, Dir::Down).unwrap();
    let hi = rat_to_dyadic(&(&mid + &err), -i64::from(bits) - 2, Dir::Up).unwrap();
    let v = DyadicInterval::new(lo, hi).unwrap();
    cache().lock().unwrap().insert((0, bits), v);
    v
}

/// Enclosure of ln 2 with width at most `2^(1-bits)`.
pub fn ln2(bits: u32) -> DyadicInterval {
    let bits = bucket(bits);
    if let Some(v) = cache().lock().unwrap().get(&(1, bits)) {
        return *v;
    }
    // ln 2 = 2 atanh(1/3) = 2 sum 1/((2i+1) 3^(2i+1)); positive terms with
    // ratio < 1/9, so the tail after a term is < (9/8) of the next term.
    let mut power = BigInt::from(3);
    let mut sum = Rational::zero();
    let mut i: i64 = 0;
    let cutoff = Rational::new(BigInt::one(), BigInt::one() << (bits + 6) as usize);
    let tail;
    loop {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * i + 1) * &power);
        if term < cutoff {
            tail = term * Rational::new(BigInt::from(9), BigInt::from(8));
            break;
        }
        sum += term;
        power *= BigInt::from(9);
        i += 1;
    }
    let mid = Rational::from(BigInt::from(2)) * sum;
    let err = Rational::from(BigInt::from(2)) * tail;
    let lo = rat_to_dyadic(&mid, -i64::from(bits) - 2, Dir::Down).unwrap();
    let hi = rat_to_dyadic(&(&mid + &err), -i64::from(bits) - 2, Dir::Up).unwrap();
    let v = DyadicInterval::new(lo, hi).unwrap();
    cache().lock().unwrap().insert((1, bits), v);
    v
}
