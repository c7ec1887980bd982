use motivic_ext::cobar::CobarEngine;
use motivic_ext::ext::{Calculator, UctOracle, Window};
use motivic_ext::fplinalg::{rank, FpMatrix};
use motivic_ext::ranges::{coarse_bound, odd_p_bound};
use motivic_ext::steenrod::{
    classical_monomials_of_total, coproduct, monomial_bidegree, AlgebraParams, Monomial, Side,
};
use motivic_ext::{Bidegree, Tridegree};
use num_rational::Ratio;
use proptest::prelude::*;

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Classical), Just(Side::Real), Just(Side::C2)]
}

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(5), Just(7)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_is_zero(side in side(), p in prime(), f in 0u32..4, total in 0i64..20, n in -14i64..14) {
        let engine = CobarEngine::new(p, 20).unwrap();
        let deg = Bidegree::new(total - n, n);
        let d0 = engine.differential(side, Tridegree { f, deg }).unwrap();
        let d1 = engine.differential(side, Tridegree { f: f + 1, deg }).unwrap();
        prop_assert!(d1.mul(&d0).unwrap().is_zero());
    }

    #[test]
    fn comparison_is_injective(p in prime(), f in 0u32..5, total in 0i64..20, n in -14i64..14) {
        let engine = CobarEngine::new(p, 20).unwrap();
        let t = Tridegree { f, deg: Bidegree::new(total - n, n) };
        let c = engine.comparison(t).unwrap();
        prop_assert_eq!(rank(&c), c.cols());
        prop_assert_eq!(c.rows() - c.cols(), engine.cokernel(t).unwrap().len());
    }

    #[test]
    fn coproduct_counit(p in prime(), total in 1i64..40, pick in any::<prop::sample::Index>(), theta in -2i64..3) {
        let monos = classical_monomials_of_total(p, total);
        prop_assume!(!monos.is_empty());
        let m = pick.get(&monos).with_theta(theta);
        let params = AlgebraParams::new(p, Side::C2).unwrap();
        let psi = coproduct(&params, &m);
        let left: Vec<_> = psi.iter().filter(|t| t.1.is_unit()).collect();
        prop_assert_eq!(left.len(), 1);
        prop_assert_eq!(&left[0].0, &m);
        let right: Vec<_> = psi.iter().filter(|t| t.0.without_theta().is_unit()).collect();
        prop_assert_eq!(right.len(), 1);
        prop_assert_eq!(right[0].1.with_theta(theta), m);
    }

    #[test]
    fn coarse_bound_holds(p in prime(), total in 0i64..120, pick in any::<prop::sample::Index>()) {
        let monos = classical_monomials_of_total(p, total);
        prop_assume!(!monos.is_empty());
        let params = AlgebraParams::new(p, Side::Classical).unwrap();
        let d = monomial_bidegree(&params, pick.get(&monos));
        prop_assert!(Ratio::from_integer(d.m) <= coarse_bound(p, d.n));
    }

    #[test]
    fn ext_range_on_random_cells(f in 0u32..4, total in 0i64..16, n in -12i64..12) {
        let calc = Calculator::new(3, 16).unwrap();
        let t = Tridegree { f, deg: Bidegree::new(total - n, n) };
        let c = calc.ext_comparison(t).unwrap();
        let stem = t.deg.m - i64::from(f);
        let bound = odd_p_bound(3, n);
        if stem > bound {
            prop_assert!(c.verdict.is_iso(), "{} at {}", c.verdict, t);
        }
        if stem == bound {
            prop_assert!(c.verdict.is_injective());
        }
        prop_assert!(c.map_rank <= c.source_dim.min(c.target_dim));
    }

    #[test]
    fn direct_ext_matches_uct(side in side(), f in 0u32..4, total in 0i64..16, n in -12i64..12) {
        let calc = Calculator::new(3, 16).unwrap();
        let oracle = UctOracle::new(3, 16).unwrap();
        let t = Tridegree { f, deg: Bidegree::new(total - n, n) };
        prop_assert_eq!(calc.ext_cell(side, t).unwrap().dimension, oracle.dimension(side, t).unwrap());
    }
}

#[test]
fn ext_representatives_are_cocycles() {
    let engine = CobarEngine::new(3, 14).unwrap();
    let calc = Calculator::new(3, 14).unwrap();
    let chart = calc.chart(Side::C2, &Window::new(3, 14, -10, 10)).unwrap();
    for cell in chart.nonzero_cells() {
        let t = cell.tridegree;
        let basis = engine.basis(Side::C2, t).unwrap().basis;
        let d = engine.differential(Side::C2, t).unwrap();
        for rep in &cell.basis {
            let triplets = rep.iter().map(|(w, c)| (basis.iter().position(|b| b == w).unwrap() as u32, 0, i64::from(*c)));
            let v = FpMatrix::from_triplets(3, basis.len(), 1, triplets).unwrap();
            assert!(d.mul(&v).unwrap().is_zero(), "{t}");
        }
    }
}

#[test]
fn unit_is_a_permanent_class() {
    let cell = Calculator::new(3, 0).unwrap().ext_cell(Side::Real, Tridegree::new(0, 0, 0)).unwrap();
    assert_eq!(cell.basis[0][0].0.factors(), &[] as &[Monomial]);
}
