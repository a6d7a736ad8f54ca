//! Cross-cutting invariants: exactness, scheme stability, and the
//! relation-finder's algebraic properties.

use apery_core::numerics::{make_context, ratio_i64, BigComplex, BigRational, BigReal};
use apery_core::quad::{EvalPoint, IntegrandSpec, Integrator, SingularityClass};
use apery_core::relation::{pslq, RelationProblem, RelationStatus};
use apery_core::special::Constants;
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Exact rational chains are independent of evaluation order.
    #[test]
    fn rational_sum_order_independent(
        nums in prop::collection::vec((-50i64..50, 1i64..50), 2..12),
        seed in 0u64..u64::MAX,
    ) {
        let rats: Vec<BigRational> = nums.iter().map(|&(p, q)| ratio_i64(p, q)).collect();
        let forward: BigRational = rats.iter().cloned().fold(ratio_i64(0, 1), |a, b| a + b);
        // a seeded shuffle
        let mut perm: Vec<usize> = (0..rats.len()).collect();
        let mut state = seed | 1;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let shuffled: BigRational = perm.iter().map(|&i| rats[i].clone()).fold(ratio_i64(0, 1), |a, b| a + b);
        prop_assert_eq!(forward, shuffled);
    }

    /// Decimal serialization round-trips through the parser.
    #[test]
    fn decimal_roundtrip(p in 1u64..1_000_000, q in 1u64..1_000_000, neg in any::<bool>()) {
        use apery_core::numerics::decimal;
        let bits = 192;
        let mut x = BigReal::from_u64_ratio(p, q, bits);
        if neg {
            x = x.neg();
        }
        let s = x.to_sci_string(25);
        let d = decimal::parse_sci(&s).unwrap().unwrap();
        prop_assert_eq!(d.negative, neg);
        // re-rendering the parsed decimal gives the same leading digits
        let s2 = x.to_sci_string(25);
        prop_assert_eq!(s, s2);
    }

    /// Im ln((1-x)/(1-ix)) equals arctan x on (-1, 1).
    #[test]
    fn branch_consistency_on_real_axis(p in -99i64..100) {
        prop_assume!(p != 0);
        let ctx = make_context(25).unwrap();
        let bits = ctx.working_bits();
        let x = BigReal::from_i64(p, bits).div_u64(100);
        let one = BigComplex::from_real(BigReal::one(bits));
        let z = BigComplex::from_real(x.clone());
        let iz = BigComplex::new(z.im.neg(), z.re.clone());
        let l = one.sub(&z).div(&one.sub(&iz)).unwrap().ln(ctx.pi()).unwrap();
        prop_assert!(l.im.sub(&x.atan()).abs() < ctx.target_tolerance());
    }
}

#[test]
fn quadrature_level_differences_shrink_geometrically() {
    // once past the warm-up levels, inter-level differences fall by at
    // least a constant factor for catalog-style integrands
    let ctx = make_context(30).unwrap();
    let mut quad = Integrator::new(&ctx);
    let bits = ctx.working_bits();
    let zero = BigReal::zero(bits);
    let one = BigReal::one(bits);
    let half_pi = ctx.pi().scale2(-1);

    let floor = ctx.pow10_neg(34);
    let runs: Vec<(&str, Vec<BigReal>)> = vec![
        (
            "x^2 cos x",
            quad.integrate(&IntegrandSpec::new(
                |p: &EvalPoint| Ok(p.x.mul(&p.x).mul(&p.dist_b.sin())),
                zero.clone(),
                half_pi.clone(),
                SingularityClass::Smooth,
            ))
            .unwrap()
            .level_diffs,
        ),
        (
            "arctan^3/(1+x^2)",
            quad.integrate(&IntegrandSpec::new(
                |p: &EvalPoint| {
                    let den = BigReal::one(p.x.precision_bits()).add(&p.x.mul(&p.x));
                    Ok(p.x.atan().powi(3).div(&den))
                },
                zero.clone(),
                one.clone(),
                SingularityClass::Smooth,
            ))
            .unwrap()
            .level_diffs,
        ),
        (
            "x ln^2(1-x)",
            quad.integrate(&IntegrandSpec::new(
                |p: &EvalPoint| {
                    let l = p.dist_b.ln()?;
                    Ok(p.x.mul(&l).mul(&l))
                },
                zero,
                one,
                SingularityClass::LogEndpoint,
            ))
            .unwrap()
            .level_diffs,
        ),
    ];
    for (name, diffs) in runs {
        // diffs[i] is |T_(i+1) - T_i|; look past level 4
        for i in 4..diffs.len() {
            if diffs[i - 1] < floor || diffs[i].is_zero() {
                continue;
            }
            assert!(
                diffs[i] < diffs[i - 1].scale2(-1),
                "{name}: level {} difference {} did not halve from {}",
                i + 1,
                diffs[i].to_sci_string(3),
                diffs[i - 1].to_sci_string(3)
            );
        }
    }
}

#[test]
fn pslq_scale_invariance() {
    // a common positive factor leaves the normalized relation unchanged
    let ctx = make_context(60).unwrap();
    let z2 = apery_core::special::zeta_int(2, &ctx).unwrap();
    let z4 = apery_core::special::zeta_int(4, &ctx).unwrap();
    let base = vec![z4, z2.mul(&z2)];
    let labels = vec!["a".to_string(), "b".to_string()];
    let reference = pslq(
        &RelationProblem::new(base.clone(), labels.clone(), 20).unwrap(),
        &ctx,
    )
    .unwrap();
    assert_eq!(reference.coefficients, vec![BigInt::from(5), BigInt::from(-2)]);
    for (p, q) in [(37u64, 10u64), (1, 7), (123456, 1)] {
        let f = BigReal::from_u64_ratio(p, q, ctx.working_bits());
        let scaled: Vec<BigReal> = base.iter().map(|v| v.mul(&f)).collect();
        let r = pslq(
            &RelationProblem::new(scaled, labels.clone(), 20).unwrap(),
            &ctx,
        )
        .unwrap();
        assert_eq!(r.coefficients, reference.coefficients, "factor {p}/{q}");
    }
}

#[test]
fn pslq_connects_the_weightless_series_to_zeta_two() {
    // [Σ 4^k/(k²C), ζ(2)] relate as (1, -3)
    let ctx = make_context(60).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    let mut ev = apery_core::ledger::Evaluator::new(&ctx, &consts);
    let (s, _) = ev.series_value(apery_core::series::SeriesId::L1III).unwrap();
    let z2 = consts.value(apery_core::special::ConstantSymbol::Zeta2).clone();
    let p = RelationProblem::new(vec![s, z2], vec!["S".into(), "ZETA2".into()], 20).unwrap();
    let r = pslq(&p, &ctx).unwrap();
    assert_eq!(r.status, RelationStatus::Found);
    assert_eq!(r.coefficients, vec![BigInt::from(1), BigInt::from(-3)]);
}

#[test]
fn pslq_permutation_equivariance() {
    let ctx = make_context(60).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    use apery_core::special::ConstantSymbol::*;
    let vals: Vec<BigReal> = [Zeta4, GSq, Li4Half]
        .iter()
        .map(|&s| consts.value(s).clone())
        .collect();
    // relation among [ζ(4), ζ(2)², anything] — use a crafted combination:
    // v = 3ζ(4) - 2G² so that [v, ζ(4), G²] has relation (1, -3, 2)
    let v = vals[0].mul_u64(3).sub(&consts.value(GSq).mul_u64(2));
    let a = vec![v, vals[0].clone(), consts.value(GSq).clone()];
    let labels: Vec<String> = (0..3).map(|i| format!("v{i}")).collect();
    let r0 = pslq(&RelationProblem::new(a.clone(), labels.clone(), 20).unwrap(), &ctx).unwrap();
    assert_eq!(
        r0.coefficients,
        vec![BigInt::from(1), BigInt::from(-3), BigInt::from(2)]
    );
    // permute (2, 0, 1)
    let b = vec![a[2].clone(), a[0].clone(), a[1].clone()];
    let r1 = pslq(&RelationProblem::new(b, labels, 20).unwrap(), &ctx).unwrap();
    assert_eq!(
        r1.coefficients,
        vec![BigInt::from(2), BigInt::from(1), BigInt::from(-3)]
    );
}

#[test]
fn pslq_no_false_relation_after_perturbation() {
    // perturb genuinely related values by ~1e-10; no relation with norm
    // below 2^10 may be reported at 60 digits
    let ctx = make_context(60).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    use apery_core::special::ConstantSymbol::*;
    let bits = ctx.working_bits();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut values = Vec::new();
    for s in [GSq, Zeta4, Li4Half, Ln2SqZeta2, Ln2P4] {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let jitter = BigReal::from_u64(state >> 40, bits)
            .div(&BigReal::from_u64(1 << 24, bits))
            .mul(&ctx.pow10_neg(10));
        values.push(consts.value(s).add(&jitter));
    }
    let labels: Vec<String> = (0..values.len()).map(|i| format!("v{i}")).collect();
    let r = pslq(&RelationProblem::new(values, labels, 10).unwrap(), &ctx).unwrap();
    assert_eq!(r.status, RelationStatus::NoneWithinBound);
}

#[test]
fn verify_all_is_deterministic_across_parallelism() {
    use apery_core::ledger::{verify_all, VerifyOptions};
    let ctx = make_context(20).unwrap();
    let consts = Constants::compute(&ctx).unwrap();
    let a = verify_all(&ctx, &consts, 1, &VerifyOptions::default());
    let b = verify_all(&ctx, &consts, 8, &VerifyOptions::default());
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.id, y.id);
        assert_eq!(x.status, y.status);
        assert_eq!(x.lhs_value, y.lhs_value);
        assert_eq!(x.rhs_value, y.rhs_value);
        assert_eq!(x.abs_residual, y.abs_residual);
        assert_eq!(x.digits_agreed, y.digits_agreed);
        assert_eq!(x.work, y.work);
        assert_eq!(x.method, y.method);
        // elapsed_seconds is excluded from the determinism contract
    }
}
