use hsc_core::harness::{verify, Claim, CodeContext, VerifyOptions};

#[test]
fn lambda_codes_are_nested() {
    let ctx = CodeContext::new(4, 0).unwrap();
    let sub = ctx.subcode().unwrap();
    let mut prev = ctx.functional.clone();
    for row in sub.generator() {
        assert!(prev.contains(row));
    }
    for lambda in 2..4 {
        let next = ctx.lambda_code(lambda).unwrap();
        for row in prev.generator() {
            assert!(next.contains(row));
        }
        prev = next;
    }
}

#[test]
fn dimensions_follow_riemann_roch() {
    for q in [3u64, 4] {
        let ctx = CodeContext::new(q, 0).unwrap();
        let g = q * (q - 1) / 2;
        for lambda in 1..q as u32 {
            let deg = lambda as u64 * (q * q - q + 1);
            let code = ctx.lambda_code(lambda).unwrap();
            assert_eq!(code.k() as u64, deg + 1 - g, "q={q} λ={lambda}");
        }
    }
}

#[test]
fn other_curves_give_equivalent_parameters() {
    let a = CodeContext::new(3, 0).unwrap();
    let b = CodeContext::new(3, 5).unwrap();
    assert_eq!(a.functional.k(), b.functional.k());
    assert_eq!(a.subcode().unwrap().k(), b.subcode().unwrap().k());
}

#[test]
fn reports_are_reproducible() {
    let run = || {
        let reps = verify(&Claim::parse("all", 3).unwrap(), 3, &VerifyOptions::default()).unwrap();
        reps.into_iter().map(|r| (r.claim, r.status, r.expected, r.computed)).collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}

#[test]
fn bad_curve_index_is_rejected() {
    assert!(CodeContext::new(3, 13).is_err());
}
