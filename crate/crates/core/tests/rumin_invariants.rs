use proptest::prelude::*;
use rumin_core::sampling::{random_e0_section, random_form, rng};
use rumin_core::{q, RuminComplex};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_c_commutes_with_dilations(seed in any::<u64>(), n in 1usize..=2, h in 0usize..5, num in 1i64..6, den in 1i64..4) {
        let rc = RuminComplex::get(n);
        let h = h % (2 * n + 1);
        let g = random_e0_section(&mut rng(seed), rc, h, 3);
        let l = q(num, den);
        let lhs = rc.d_c(&g.dilation_pullback(&l).unwrap()).unwrap();
        let rhs = rc.d_c(&g).unwrap().dilation_pullback(&l).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_c_lands_in_e0(seed in any::<u64>(), n in 1usize..=2, h in 0usize..5) {
        let rc = RuminComplex::get(n);
        let h = h % (2 * n + 1);
        let out = rc.d_c(&random_e0_section(&mut rng(seed), rc, h, 3)).unwrap();
        prop_assert!(rc.is_e0_section(&out).unwrap());
    }

    #[test]
    fn pi_e_is_homotopic_to_identity(seed in any::<u64>(), n in 1usize..=2, h in 0usize..6) {
        // Π_E = Id − d₀⁻¹d − dd₀⁻¹ (no second term in degree 0), so α − Π_E α is d₀⁻¹dα + d d₀⁻¹α
        let rc = RuminComplex::get(n);
        let h = h % (2 * n + 2);
        let a = random_form(&mut rng(seed), n, h, 3);
        let diff = &a - &rc.pi_e(&a).unwrap();
        let mut expected = rc.apply_d0_pinv(&rc.exterior_d(&a)).unwrap();
        if h > 0 {
            expected = &expected + &rc.exterior_d(&rc.apply_d0_pinv(&a).unwrap());
        }
        prop_assert_eq!(diff, expected);
    }

    #[test]
    fn d_c_agrees_with_d_on_e(seed in any::<u64>(), n in 1usize..=2, h in 0usize..5) {
        // d_c = Π_E₀ d Π_E and Π_E γ ∈ E, so Π_E d_c γ = d Π_E γ
        let rc = RuminComplex::get(n);
        let h = h % (2 * n + 1);
        let g = random_e0_section(&mut rng(seed), rc, h, 2);
        let lhs = rc.pi_e(&rc.d_c(&g).unwrap()).unwrap();
        let rhs = rc.exterior_d(&rc.pi_e(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn dimension_tables_are_symmetric() {
    for n in 1..=4 {
        let t = RuminComplex::get(n).dimension_table().unwrap();
        let top = 2 * n + 1;
        for h in 0..=top {
            assert_eq!(t[h].dim_e0, t[top - h].dim_e0, "n={n} h={h}");
            assert_eq!(t[h].e0_weight + t[top - h].e0_weight, 2 * n + 2);
        }
    }
}
