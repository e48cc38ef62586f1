use std::sync::OnceLock;

use proptest::prelude::*;

use classbound_core::bounds::{check_lemd4_thresholds, eval_lemd2_bounds, lemd2_a1, lemd2_a2, BoundParams};
use classbound_core::fixed::{coset_conjugation_orbits, fixed_classes_avg_oracle, FixedClassEngine, AVG_ORACLE_CAP};
use classbound_core::gf::affine::{brute_force_classes, cross_check, structured_classes};
use classbound_core::gf::checks::verify_leme1;
use classbound_core::gf::dual::{dual_orbits, vector_orbits};
use classbound_core::gf::lgroup::five_complement_gl25;
use classbound_core::gf::matgroup::gl25;
use classbound_core::gf::{AffineGroup, MatrixGroup};
use classbound_core::group::normal_closure;
use classbound_core::lemmas::k;
use classbound_core::{conjugacy_classes, fingerprint, FiniteGroup, Group, Permutation, Relation, Subgroup, DEFAULT_CAP};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

/// A group on 3 to 6 points generated by one or two random permutations.
fn perm_group() -> impl Strategy<Value = FiniteGroup> {
    (3usize..=6).prop_flat_map(|d| prop::collection::vec(perm(d), 1..=2).prop_map(move |gens| FiniteGroup::from_generators("random", d, &gens, DEFAULT_CAP).unwrap()))
}

fn l() -> &'static MatrixGroup {
    static L: OnceLock<MatrixGroup> = OnceLock::new();
    L.get_or_init(|| five_complement_gl25().unwrap())
}

fn gl() -> &'static MatrixGroup {
    static GL: OnceLock<MatrixGroup> = OnceLock::new();
    GL.get_or_init(gl25)
}

fn subgroup_of(ambient: &MatrixGroup, picks: &[u32]) -> MatrixGroup {
    let gens: Vec<u32> = picks.iter().map(|&p| p % ambient.order() as u32).collect();
    ambient.sub(&Subgroup::generated(ambient, &gens), "U")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_sizes_partition_the_group(g in perm_group()) {
        let cs = conjugacy_classes(&g);
        prop_assert_eq!(cs.classes().iter().map(|c| c.size).sum::<usize>(), g.order());
        for x in 0..g.order() as u32 {
            let h = cs.conjugator(x);
            prop_assert_eq!(g.conj(cs.rep_of(x), h), x);
        }
    }

    #[test]
    fn fixed_class_oracles_agree(g in perm_group(), a in any::<u32>(), b in any::<u32>()) {
        let n = normal_closure(&g, &[a % g.order() as u32]);
        let x = b % g.order() as u32;
        let direct = FixedClassEngine::new(&g, &n).count(x).unwrap();
        let avg = fixed_classes_avg_oracle(&g, &n, x, AVG_ORACLE_CAP).unwrap();
        let orbits = coset_conjugation_orbits(&g, &n, x).unwrap().len();
        prop_assert_eq!(direct, avg);
        prop_assert_eq!(direct, orbits);
    }

    #[test]
    fn fixed_count_is_a_class_function(g in perm_group(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let ord = g.order() as u32;
        let n = normal_closure(&g, &[a % ord]);
        let (x, h) = (b % ord, c % ord);
        let engine = FixedClassEngine::new(&g, &n);
        prop_assert_eq!(engine.count(x).unwrap(), engine.count(g.conj(x, h)).unwrap());
        let nx = n.members().iter().map(|&m| g.mul(m, x)).min().unwrap();
        prop_assert_eq!(engine.count(x).unwrap(), engine.count(nx).unwrap());
    }

    #[test]
    fn conjugate_subgroups_look_alike(g in perm_group(), a in any::<u32>(), c in any::<u32>()) {
        let ord = g.order() as u32;
        let u = Subgroup::generated(&g, &[a % ord]);
        let v = u.conjugate(&g, c % ord);
        prop_assert_eq!(u.order(), v.order());
        prop_assert_eq!(k(&u.view(&g)), k(&v.view(&g)));
        prop_assert_eq!(fingerprint(&u.view(&g)), fingerprint(&v.view(&g)));
    }

    #[test]
    fn structured_matches_brute_force(picks in prop::collection::vec(any::<u32>(), 1..=3)) {
        let u = subgroup_of(l(), &picks);
        let aff = AffineGroup::new(&u).unwrap();
        prop_assert!(cross_check(&aff).unwrap());
        prop_assert_eq!(structured_classes(&aff).unwrap().len(), brute_force_classes(&aff).unwrap().len());
    }

    #[test]
    fn dual_and_vector_orbits_agree(picks in prop::collection::vec(any::<u32>(), 1..=2), from_l in any::<bool>()) {
        let u = subgroup_of(if from_l { l() } else { gl() }, &picks);
        prop_assert_eq!(dual_orbits(&u, 0, 2).unwrap().len(), vector_orbits(&u, 0, 2).unwrap().len());
    }

    #[test]
    fn leme1_without_complement_is_k(picks in prop::collection::vec(any::<u32>(), 1..=2)) {
        let u = subgroup_of(l(), &picks);
        let r = verify_leme1(&u, 2, "U").unwrap();
        prop_assert!(r.holds);
        prop_assert_eq!(r.relation, Relation::Eq);
        prop_assert_eq!(r.extras.get("vector_version").cloned(), Some(true.into()));
    }

    #[test]
    fn lemd2_bounds_grow(v1 in 4.0f64..1e4, dv in 0.0f64..1e3, b in 1.0f64..6.0, p in 2u32..=7) {
        prop_assert!(lemd2_a1(v1, b) <= lemd2_a1(v1 + dv, b));
        prop_assert!(lemd2_a2(v1, b, p) <= lemd2_a2(v1 + dv, b, p) * (1.0 + 1e-12));
        let params = BoundParams { p, n: p, f: 1, v1, b, ..Default::default() };
        let more = BoundParams { n: p + 1, ..params.clone() };
        let (a1, a2) = eval_lemd2_bounds(&params).unwrap();
        let (b1, b2) = eval_lemd2_bounds(&more).unwrap();
        prop_assert!(a1 <= b1 && a2 <= b2);
    }

    #[test]
    fn lemd4_margin_grows_with_w(e in 20u32..100) {
        let lo = check_lemd4_thresholds(1u128 << e, 2, 1.0).unwrap();
        let hi = check_lemd4_thresholds(1u128 << (e + 1), 2, 1.0).unwrap();
        prop_assert!(lo[1].rhs <= hi[1].rhs);
        prop_assert!(!lo[2].holds || hi[2].holds);
    }
}
