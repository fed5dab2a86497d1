use cubicq_core::etaq::Character;
use cubicq_core::hecke::{apply_tp, HeckeContext};
use cubicq_core::qfuncs::{expand_fproduct, FProduct};
use cubicq_core::{CoefficientRing, TruncatedSeries};
use proptest::prelude::*;

const Z: CoefficientRing = CoefficientRing::ExactInteger;

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-10_000i64..=10_000, len)
}

fn unit_coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    coeffs(len).prop_map(|mut v| {
        v[0] = 1;
        v
    })
}

fn exact(v: &[i64]) -> TruncatedSeries {
    TruncatedSeries::from_i64s(Z, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_is_a_ring_homomorphism(a in unit_coeffs(300), b in coeffs(300), m in prop::sample::select(vec![4u64, 8, 43, 49])) {
        let ring = CoefficientRing::modulo(m).unwrap();
        let (a, b) = (exact(&a), exact(&b));
        let (ra, rb) = (a.reduce(ring).unwrap(), b.reduce(ring).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().reduce(ring).unwrap(), ra.add(&rb).unwrap());
        prop_assert_eq!(a.sub(&b).unwrap().reduce(ring).unwrap(), ra.sub(&rb).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().reduce(ring).unwrap(), ra.mul(&rb).unwrap());
        prop_assert_eq!(a.invert().unwrap().reduce(ring).unwrap(), ra.invert().unwrap());
    }

    #[test]
    fn multiplication_commutes_and_associates(a in coeffs(200), b in coeffs(200), c in coeffs(200)) {
        let (a, b, c) = (exact(&a), exact(&b), exact(&c));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let ring = CoefficientRing::Mod(961);
        let (a, b, c) = (a.reduce(ring).unwrap(), b.reduce(ring).unwrap(), c.reduce(ring).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(a in unit_coeffs(200), m in prop::sample::select(vec![0u64, 2, 9, 43, 2209])) {
        let ring = if m == 0 { Z } else { CoefficientRing::modulo(m).unwrap() };
        let a = exact(&a).reduce(ring).unwrap();
        let inv = a.invert().unwrap();
        let one = TruncatedSeries::one(ring, 200);
        prop_assert_eq!(a.mul(&inv).unwrap(), one.clone());
        prop_assert_eq!(inv.mul(&a).unwrap(), one);
    }

    #[test]
    fn hecke_is_linear(a in coeffs(430), b in coeffs(430), s in -50i64..50) {
        let ring = CoefficientRing::Mod(43);
        let ctx = HeckeContext::new(43, 3, Character::trivial(), ring).unwrap();
        let (a, b) = (exact(&a).reduce(ring).unwrap(), exact(&b).reduce(ring).unwrap());
        let lhs = apply_tp(&ctx, &a.add(&b.scale(&s.into())).unwrap()).unwrap();
        let rhs = apply_tp(&ctx, &a).unwrap().add(&apply_tp(&ctx, &b).unwrap().scale(&s.into())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hecke_pulls_out_pth_powers_mod_p(g in coeffs(20), h in coeffs(430)) {
        // modulo p and weight ≥ 2, (g(q^p) h) | T_p = g · (h | T_p)
        let ring = CoefficientRing::Mod(43);
        let ctx = HeckeContext::new(43, 4, Character::trivial(), ring).unwrap();
        let g = exact(&g).reduce(ring).unwrap();
        let h = exact(&h).reduce(ring).unwrap();
        let lhs = apply_tp(&ctx, &g.dilate_to(43, 430).mul(&h).unwrap()).unwrap();
        let rhs = g.truncate(10).mul(&apply_tp(&ctx, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn freshman_dream() {
    for (m, p, k) in [(1u64, 2u64, 3u32), (1, 3, 2), (2, 3, 1), (1, 7, 2)] {
        let pk = p.pow(k);
        let ring = CoefficientRing::modulo(pk).unwrap();
        let lhs = expand_fproduct(&FProduct::new([(m, pk as i64)]), Z, 250).reduce(ring).unwrap();
        let rhs = expand_fproduct(&FProduct::new([(m * p, p.pow(k - 1) as i64)]), Z, 250).reduce(ring).unwrap();
        assert_eq!(lhs, rhs, "m={m} p={p} k={k}");
        // the modular expander rewrites with the same congruence; it must agree
        assert_eq!(expand_fproduct(&FProduct::new([(m, pk as i64)]), ring, 250), lhs);
    }
}
