//! Quick per-entry checks of the verification engine.

use apery_core::ledger::{verify, IdentityId, Status, VerifyOptions};
use apery_core::numerics::make_context;
use apery_core::special::Constants;

#[test]
fn xcos_passes_at_30_digits() {
    let ctx = make_context(30).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    let r = verify(IdentityId::Xcos, &ctx, &consts, &VerifyOptions::default());
    assert_eq!(r.status, Status::Pass, "{r:?}");
    assert!(r.digits_agreed >= 30, "{r:?}");
}

#[test]
fn atan3_passes() {
    let ctx = make_context(30).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    let r = verify(IdentityId::Atan3, &ctx, &consts, &VerifyOptions::default());
    assert_eq!(r.status, Status::Pass, "{r:?}");
}

#[test]
fn l4_k_single_member_reduces_to_xcos() {
    let ctx = make_context(25).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    let opts = VerifyOptions {
        k: Some(1),
        ..Default::default()
    };
    let r = verify(IdentityId::L4K, &ctx, &consts, &opts);
    assert_eq!(r.status, Status::Pass, "{r:?}");
    let x = verify(IdentityId::Xcos, &ctx, &consts, &VerifyOptions::default());
    assert_eq!(r.rhs_value, x.rhs_value);
}

#[test]
fn l2_iii_and_l3_ii_pass() {
    let ctx = make_context(30).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    for id in [IdentityId::L2III, IdentityId::L3II, IdentityId::L3I] {
        let r = verify(id, &ctx, &consts, &VerifyOptions::default());
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert!(r.digits_agreed >= 30, "{r:?}");
    }
}

#[test]
fn thm_i_relational_route_with_witness() {
    let ctx = make_context(30).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    let r = verify(IdentityId::ThmI, &ctx, &consts, &VerifyOptions::default());
    assert_eq!(r.status, Status::Pass, "{r:?}");
    assert!(r.digits_agreed >= 30, "{r:?}");
    assert!(r.method.contains("witness"), "{}", r.method);
}

#[test]
fn out_of_range_member_is_rejected() {
    let ctx = make_context(10).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    let opts = VerifyOptions {
        k: Some(99),
        ..Default::default()
    };
    let r = verify(IdentityId::L4K, &ctx, &consts, &opts);
    assert_eq!(r.status, Status::NonConverged);
    assert!(r.method.contains("outside"), "{}", r.method);
}
