use exactkit_core::calculus::factorize;
use exactkit_core::category::PointedCategory;
use exactkit_core::cmon::{all_comm_monoids, cmon_congruence, cmon_saturation, talg_congruence_generate, FinCommMonoid};
use exactkit_core::concrete::Hom;
use exactkit_core::linalg::{q, Matrix, Q};
use exactkit_core::monadcalc::{sample_member, substitute, MonadTag};
use exactkit_core::polynorm::{operator_norm, random_map, random_space};
use exactkit_core::psets::{pset_category, FinPointedSet, PointedMap};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn monoids() -> &'static [FinCommMonoid] {
    static ALL: OnceLock<Vec<FinCommMonoid>> = OnceLock::new();
    ALL.get_or_init(|| (1..=4).flat_map(all_comm_monoids).collect())
}

fn subset(y: &FinCommMonoid, mask: u32) -> Vec<usize> {
    y.generated(&(0..y.order()).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
}

fn pointed_map() -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(a, b)| {
        proptest::collection::vec(0..b, a - 1).prop_map(move |rest| {
            let mut t = vec![0];
            t.extend(rest);
            (a, b, t)
        })
    })
}

proptest! {
    #[test]
    fn congruence_is_monotone(idx in 0..monoids().len(), m1 in 0u32..16, m2 in 0u32..16) {
        let y = &monoids()[idx];
        let small = subset(y, m1);
        let large = subset(y, m1 | m2);
        let ps = cmon_congruence(y, &small).unwrap();
        let pl = cmon_congruence(y, &large).unwrap();
        prop_assert!(ps.refines(&pl));
    }

    #[test]
    fn saturation_is_a_closure(idx in 0..monoids().len(), mask in 0u32..16) {
        let y = &monoids()[idx];
        let x = subset(y, mask);
        let sat = cmon_saturation(y, &x).unwrap();
        prop_assert!(x.iter().all(|a| sat.contains(a)));
        prop_assert_eq!(cmon_saturation(y, &sat).unwrap(), sat);
    }

    #[test]
    fn generated_congruence_is_idempotent(idx in 0..monoids().len(), pairs in proptest::collection::vec((0usize..4, 0usize..4), 0..4)) {
        let y = &monoids()[idx];
        let n = y.order();
        let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let alg = y.as_algebra();
        let p = talg_congruence_generate(&alg, &pairs);
        prop_assert!(alg.is_congruence(&p));
        prop_assert!(pairs.iter().all(|&(a, b)| p.same(a, b)));
        let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| p.same(a, b)).collect();
        prop_assert_eq!(talg_congruence_generate(&alg, &all), p);
    }

    #[test]
    fn factorization_recomposes((a, b, t) in pointed_map()) {
        let cat = pset_category(false);
        let f = Hom::new(FinPointedSet::of_size(a), FinPointedSet::of_size(b), PointedMap::new(t).unwrap());
        let fac = factorize(&cat, &f).unwrap();
        prop_assert_eq!(cat.compose(&fac.im, &cat.compose(&fac.mid, &fac.coim)), f.clone());
        prop_assert!(cat.is_epi(&fac.coim));
        prop_assert!(cat.is_mono(&fac.im));
        prop_assert_eq!(cat.is_iso(&fac.mid), f.map.is_strict());
    }

    #[test]
    fn gauge_is_a_norm(seed in any::<u64>(), dim in 1usize..=3, a in proptest::collection::vec(-5i64..=5, 3), b in proptest::collection::vec(-5i64..=5, 3), c in -4i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_space(&mut rng, dim);
        let u: Vec<Q> = a[..dim].iter().map(|&v| q(v)).collect();
        let v: Vec<Q> = b[..dim].iter().map(|&v| q(v)).collect();
        let sum: Vec<Q> = u.iter().zip(&v).map(|(s, t)| s + t).collect();
        let scaled: Vec<Q> = u.iter().map(|s| s * q(c)).collect();
        prop_assert!(x.norm(&sum) <= x.norm(&u) + x.norm(&v));
        prop_assert_eq!(x.norm(&scaled), x.norm(&u) * q(c).abs());
        prop_assert_eq!(x.norm(&u).is_zero(), u.iter().all(Zero::is_zero));
    }

    #[test]
    fn bounded_maps_compose(seed in any::<u64>(), dims in (0usize..=2, 0usize..=2, 0usize..=2)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (random_space(&mut rng, dims.0), random_space(&mut rng, dims.1), random_space(&mut rng, dims.2));
        let f = random_map(&mut rng, &x, &y);
        let g = random_map(&mut rng, &y, &z);
        let gf: Matrix = g.matrix.mul(&f.matrix);
        let bound = operator_norm(&g.matrix, &y, &z) * operator_norm(&f.matrix, &x, &y);
        prop_assert!(operator_norm(&gf, &x, &z) <= bound);
        prop_assert!(bound <= q(1));
    }

    #[test]
    fn substitution_is_associative(seed in any::<u64>(), tag_idx in 0usize..3, m in 0usize..=3, k in 0usize..=3, n in 0usize..=3) {
        let tag = [MonadTag::Zinf, MonadTag::Dstar, MonadTag::D][tag_idx].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng, arity: usize, count: usize| -> Option<Vec<_>> {
            (0..count).map(|_| sample_member(&tag, arity, rng)).collect()
        };
        let (Some(s), Some(t), Some(u)) = (draw(&mut rng, m, 1), draw(&mut rng, k, m), draw(&mut rng, n, k)) else {
            return Ok(());
        };
        prop_assume!(m > 0 && k > 0);
        let tu: Vec<_> = t.iter().map(|ti| substitute(ti, &u).unwrap()).collect();
        let lhs = substitute(&s[0], &tu).unwrap();
        let rhs = substitute(&substitute(&s[0], &t).unwrap(), &u).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
