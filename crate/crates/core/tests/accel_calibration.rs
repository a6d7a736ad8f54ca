//! Diagnostic table for the extrapolation schemes; run with
//! `cargo test --test accel_calibration -- --ignored --nocapture`.

use apery_core::ledger::{closed_form_l1_iv, closed_form_thm_i, closed_form_thm_ii};
use apery_core::numerics::{make_context, ratio_i64};
use apery_core::series::{accelerate, sum_direct, SeriesId};
use apery_core::special::{closed_form_value, ClosedForm, Constants, ConstantSymbol};

fn truth(id: SeriesId, consts: &Constants) -> apery_core::BigReal {
    let cf = match id {
        SeriesId::L1III => ClosedForm::new(vec![(ratio_i64(3, 1), ConstantSymbol::Zeta2)]),
        SeriesId::L1IV => closed_form_l1_iv(),
        SeriesId::ThmI => closed_form_thm_i(),
        SeriesId::ThmII => closed_form_thm_ii(),
    };
    closed_form_value(&cf, consts)
}

#[test]
#[ignore]
fn calibration_table() {
    let ctx = make_context(30).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    for (id, n) in [
        (SeriesId::L1III, 2_000u64),
        (SeriesId::L1III, 20_000),
        (SeriesId::L1IV, 20_000),
        (SeriesId::ThmI, 20_000),
        (SeriesId::ThmII, 20_000),
    ] {
        let t0 = std::time::Instant::now();
        let ps = sum_direct(id, n, &ctx).unwrap();
        let t_sum = t0.elapsed().as_secs_f64();
        let t0 = std::time::Instant::now();
        let acc = accelerate(&ps, id.spec().tail, &ctx).unwrap();
        let t_acc = t0.elapsed().as_secs_f64();
        let want = truth(id, &consts);
        let err = acc.value.sub(&want).abs();
        println!(
            "{:<7} N={:<6} method={:<22} err={}  gauge={}  sum={:.2}s accel={:.2}s",
            id.name(),
            n,
            acc.method.name(),
            err.to_sci_string(3),
            acc.error_gauge.to_sci_string(3),
            t_sum,
            t_acc
        );
    }
}
