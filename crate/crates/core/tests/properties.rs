use std::sync::OnceLock;

use proptest::prelude::*;

use hsc_core::codes::{dot, weight};
use hsc_core::harness::CodeContext;

fn ctx3() -> &'static CodeContext {
    static C: OnceLock<CodeContext> = OnceLock::new();
    C.get_or_init(|| CodeContext::new(3, 0).unwrap())
}

fn message(k: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..9, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn small_field_embeds_as_a_ring_map(a in 0u8..9, b in 0u8..9) {
        let ctx = ctx3();
        let (f, sf) = (ctx.geo.tower(), &ctx.sf);
        prop_assert_eq!(sf.to_tower(sf.add_elems(a, b)), f.add(sf.to_tower(a), sf.to_tower(b)));
        prop_assert_eq!(sf.to_tower(sf.mul_elems(a, b)), f.mul(sf.to_tower(a), sf.to_tower(b)));
        prop_assert_eq!(sf.from_tower(f, sf.to_tower(a)), Some(a));
    }

    #[test]
    fn functional_codewords_are_heavy(m in message(5)) {
        let code = &ctx3().functional;
        let w = weight(&code.encode(&m));
        prop_assert!(w == 0 || w >= 14);
    }

    #[test]
    fn block_shift_preserves_codewords(m in message(5)) {
        let ctx = ctx3();
        let c = ctx.functional.encode(&m);
        let b = ctx.dom.block_len();
        let shifted: Vec<u8> = (0..c.len()).map(|i| c[(i / b) * b + (i % b + b - 1) % b]).collect();
        prop_assert!(ctx.functional.contains(&shifted));
    }

    #[test]
    fn differential_is_orthogonal(m in message(5), h in message(16)) {
        let ctx = ctx3();
        let dual = ctx.differential();
        let a = ctx.functional.encode(&m);
        let b = dual.encode(&h);
        prop_assert_eq!(dot(&ctx.sf, &a, &b), 0);
    }

    #[test]
    fn singer_generator_preserves_the_unital(i in 0usize..91) {
        let ctx = ctx3();
        let f = ctx.geo.tower();
        let curve = ctx.geo.curve(0);
        let p = ctx.geo.plane().point(i);
        let on = curve.form.eval(f, p.coords()).is_zero();
        let image = ctx.geo.singer().b.apply(f, &p);
        prop_assert_eq!(on, curve.form.eval(f, image.coords()).is_zero());
    }
}
