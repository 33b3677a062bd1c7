use lmov_core::onehole::{cal_z_cleared, cal_z_gaussian, g_mu_general, lmov_one_hole};
use lmov_core::partition::{partitions_of, Partition};

#[test]
fn one_hole_integral_grid() {
    for tau in -3..=3 {
        for m in 1..=6 {
            let t = lmov_one_hole(m, tau).unwrap_or_else(|e| panic!("m={m} tau={tau}: {e}"));
            assert!(t.entries.is_integral());
            // the zero-framed unknot only has winding one
            assert_eq!(t.entries.is_empty(), tau == 0 && m > 1, "m={m} tau={tau}");
        }
    }
}

#[test]
fn gaussian_closed_form() {
    for tau in 1..=4i64 {
        for m in 1..=6u32 {
            let sgn = if (i64::from(m) * tau) % 2 == 0 { 1 } else { -1 };
            let lhs = cal_z_cleared(m, tau).unwrap().scale(&lmov_core::arith::rat(sgn));
            assert_eq!(lhs, cal_z_gaussian(m, tau).unwrap(), "m={m} tau={tau}");
        }
    }
}

#[test]
fn general_partitions_small() {
    for tau in -2..=2 {
        for n in 1..=4 {
            for mu in partitions_of(n) {
                let g = g_mu_general(&mu, tau).unwrap();
                assert!(g.holds(), "mu={mu} tau={tau}: {:?}", g.issue);
            }
        }
    }
    let g = g_mu_general(&Partition::new(vec![2, 2, 1]).unwrap(), 1).unwrap();
    assert!(g.holds(), "{:?}", g.issue);
}
