use lmov_core::gwdt::{dt_extract, gwdt_check, ooguri_vafa, ov_dt_correspondence, ov_reconstruct};
use num_bigint::BigInt;

#[test]
fn gwdt_identity_range() {
    for tau in -5..=-1 {
        let r = gwdt_check(tau, 12).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn ov_grid() {
    for tau in -5..=5 {
        let t = ooguri_vafa(tau, 8).unwrap();
        assert!(t.violations.is_empty(), "tau={tau}: {:?}", t.violations);
        assert_eq!(t.rows.len(), 8);
        assert_eq!(t.get(1, 0), BigInt::from(if tau % 2 == 0 { 1 } else { -1 }));
        let r = ov_reconstruct(&t, 8, 20);
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn dt_grid() {
    for m in 1..=5 {
        let t = dt_extract(m, 6).unwrap();
        assert_eq!(t.get(1, 0), BigInt::from(1));
        if m == 1 {
            for row in t.rows.values() {
                assert!(row.len() <= 1);
            }
        }
    }
}

#[test]
fn ov_dt_index_shift() {
    for tau in -4..=-1 {
        let ov = ooguri_vafa(tau, 6).unwrap();
        let dt = dt_extract((-tau) as u32, 6).unwrap();
        assert!(ov_dt_correspondence(&ov, &dt).is_empty(), "tau={tau}");
    }
}
