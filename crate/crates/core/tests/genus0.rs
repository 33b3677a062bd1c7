use lmov_core::arith::{rat, rat_frac};
use lmov_core::genus0::{
    annulus_c, annulus_n, annulus_top_closed, disc_n, disc_series_check, disc_table,
    multihole_cover_sum, multihole_k, multihole_table,
};
use lmov_core::partition::partitions_of;

#[test]
fn disc_integral_moderate() {
    for tau in -4..=4 {
        assert!(disc_table(tau, 20).unwrap().is_integral());
    }
    // at framing zero only winding one contributes
    assert_eq!(disc_n(1, 0, 0).unwrap(), 1.into());
    assert_eq!(disc_n(1, 1, 0).unwrap(), (-1).into());
    for m in 2..=12 {
        for l in 0..=m {
            assert_eq!(disc_n(m, l, 0).unwrap(), 0.into(), "m={m} l={l}");
        }
    }
}

#[test]
fn disc_series_matches() {
    for tau in [-3, 1, 2] {
        assert!(disc_series_check(tau, 8).unwrap().passed());
    }
}

#[test]
fn annulus_top_and_n11() {
    for tau in -3..=3 {
        for (m1, m2) in [(1, 1), (1, 2), (2, 3), (3, 3)] {
            let c = annulus_c(m1, m2, tau).unwrap();
            let top = c.get(&(m1 + m2)).cloned().unwrap_or_else(|| rat(0));
            assert_eq!(top, annulus_top_closed(m1, m2, tau), "({m1},{m2}) tau {tau}");
        }
        assert_eq!(annulus_n(1, 1, 2, tau).unwrap(), rat_frac(tau * (tau + 1), 2));
    }
}

#[test]
fn multihole_covers() {
    for tau in -3..=3 {
        let t = multihole_table(tau, 8).unwrap();
        assert!(t.is_integral());
        for n in 3..=8 {
            for p in partitions_of(n).into_iter().filter(|p| p.len() >= 3) {
                assert_eq!(multihole_cover_sum(&p, tau).unwrap(), multihole_k(&p, tau).unwrap());
            }
        }
    }
}
