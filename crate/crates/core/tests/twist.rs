use lmov_core::twist::{b_minus, b_plus, congruence_difference};
use num_bigint::BigInt;

#[test]
fn integral_over_range() {
    for p in (-6..=6).filter(|&p| p <= -1 || p >= 2) {
        for r in 1..=40 {
            b_minus(p, r).unwrap();
            b_plus(p, r).unwrap();
        }
    }
}

#[test]
fn b_minus_independent_of_p_within_regime() {
    for r in 1..=15 {
        assert_eq!(b_minus(-1, r).unwrap(), b_minus(-6, r).unwrap());
        assert_eq!(b_minus(2, r).unwrap(), b_minus(6, r).unwrap());
    }
}

#[test]
fn prime_r_closed_form() {
    // r prime: b^- = -(binom(3r-1, r-1) - 1) / r^2 for p <= -1
    for r in [2u32, 3, 5, 7, 11] {
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        let rr = i64::from(r);
        for i in 0..rr - 1 {
            num *= 3 * rr - 1 - i;
            den *= i + 1;
        }
        let binom: BigInt = num / den;
        let expect = -((binom - BigInt::from(1)) / BigInt::from(rr * rr));
        assert_eq!(b_minus(-2, r).unwrap(), expect);
    }
}

#[test]
fn congruence_sample() {
    // 3 - (-1): divisible by 2^2
    assert_eq!(congruence_difference(2, 2, 2), BigInt::from(4));
    assert_eq!(congruence_difference(2, 4, 2) % 16, BigInt::from(0));
}
