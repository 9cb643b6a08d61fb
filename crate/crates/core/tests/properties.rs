use std::sync::Arc;

use proptest::prelude::*;

use nimrep_core::algebra::{admissible_base_points, algebra_object, expected_algebra_fp_dim};
use nimrep_core::classify::{
    canonical_form, coset_nimrep, is_perfect_square, neargroup_one_orbit, neargroup_to_nimrep, neargroup_two_orbit,
};
use nimrep_core::fusion::{fp_dims, group_ring, near_group_ring, ring_from_tensor};
use nimrep_core::groups::{all_subgroups, builtin_group, FiniteGroup};
use nimrep_core::json;
use nimrep_core::modular::{catalog, exponent_of_invariant, exponent_of_nimrep, modular_invariants};
use nimrep_core::nimrep::{are_equivalent, direct_sum, regular_nimrep};

fn group_spec() -> impl Strategy<Value = String> {
    prop_oneof![
        (1usize..=12).prop_map(|n| format!("Z_{n}")),
        (2usize..=4, 2usize..=4).prop_map(|(a, b)| format!("Z_{a} x Z_{b}")),
        (3usize..=6).prop_map(|n| format!("D_{n}")),
    ]
}

fn group() -> impl Strategy<Value = FiniteGroup> {
    group_spec().prop_map(|s| builtin_group(&s).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_rings_are_valid_with_unit_dims(g in group()) {
        let r = group_ring(&g);
        prop_assert!(ring_from_tensor(r.names().to_vec(), r.unit(), r.duals().to_vec(), r.tensor()).is_ok());
        let d = fp_dims(&r).unwrap();
        prop_assert!(d.dims.iter().all(|x| (x - 1.0).abs() < 1e-9));
    }

    #[test]
    fn near_group_x_dimension(g in group(), alpha in 0u32..12) {
        let r = near_group_ring(&g, alpha);
        let d = fp_dims(&r).unwrap();
        let n = g.order() as f64;
        let a = alpha as f64;
        let expected = (a + (a * a + 4.0 * n).sqrt()) / 2.0;
        prop_assert!((d.dims[g.order()] - expected).abs() < 1e-6);
    }

    #[test]
    fn coset_reps_have_subgroup_algebras(g in group(), pick in any::<prop::sample::Index>()) {
        let subs = all_subgroups(&g);
        let h = &subs[pick.index(subs.len())];
        let ring = Arc::new(group_ring(&g));
        let n = coset_nimrep(&g, ring, h);
        prop_assert_eq!(n.dim(), h.index_in(&g));
        prop_assert!(n.is_irreducible());
        let bp = admissible_base_points(&n);
        prop_assert_eq!(bp.len(), n.dim());
        let a = algebra_object(&n, 0).unwrap();
        let expected: Vec<u32> = (0..g.order()).map(|x| u32::from(h.contains(x))).collect();
        prop_assert_eq!(&a.multiplicities, &expected);
        prop_assert!((a.fp_dim().unwrap() - expected_algebra_fp_dim(&n, 0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn basis_permutation_preserves_class(g in group(), pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let subs = all_subgroups(&g);
        let h = &subs[pick.index(subs.len())];
        let n = coset_nimrep(&g, Arc::new(group_ring(&g)), h);
        let d = n.dim();
        // deterministic shuffle from the seed
        let mut perm: Vec<usize> = (0..d).collect();
        let mut s = seed;
        for i in (1..d).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let m = n.permute_basis(&perm);
        prop_assert_eq!(canonical_form(&n).0, canonical_form(&m).0);
        let sigma = are_equivalent(&n, &m).expect("equivalent");
        for (a, b) in n.mats().iter().zip(m.mats()) {
            for l in 0..d {
                for k in 0..d {
                    prop_assert_eq!(b[(sigma[l], sigma[k])], a[(l, k)]);
                }
            }
        }
    }

    #[test]
    fn permuted_rings_round_trip(g in group(), seed in any::<u64>()) {
        let r = near_group_ring(&g, (seed % 5) as u32);
        let n = r.rank();
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = r.permuted(&order).unwrap();
        let mut inverse = vec![0; n];
        for (t, &o) in order.iter().enumerate() {
            inverse[o] = t;
        }
        prop_assert_eq!(p.permuted(&inverse).unwrap(), r);
    }

    #[test]
    fn near_group_closed_forms_are_valid(n in 1usize..=24, alpha in 0u32..=12) {
        let g = builtin_group(&format!("Z_{n}")).unwrap();
        let mut sols = neargroup_one_orbit(&g, alpha);
        sols.extend(neargroup_two_orbit(&g, alpha));
        for s in sols {
            prop_assert!(s.satisfies_cbc());
            let disc = (alpha as u64).pow(2) + 4 * n as u64;
            if s.p() % 2 == 1 {
                prop_assert!(is_perfect_square(disc));
            }
            let nim = neargroup_to_nimrep(&s).unwrap();
            prop_assert_eq!(nim.dim() as u64, s.indices().iter().sum::<u64>());
        }
    }

    #[test]
    fn json_round_trip(g in group(), alpha in 0u32..4) {
        let r = near_group_ring(&g, alpha);
        prop_assert_eq!(json::ring_from_json(&json::ring_to_json(&r)).unwrap(), r.clone());
        let n = regular_nimrep(Arc::new(r));
        prop_assert_eq!(json::nimrep_from_json(&json::nimrep_to_json(&n)).unwrap(), n);
        prop_assert_eq!(json::group_from_json(&json::group_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn exponents_add_under_direct_sum(entry in 0usize..10, perm_seed in permutation(4)) {
        let md = &catalog()[entry];
        let n = regular_nimrep(md.ring.clone());
        let e = exponent_of_nimrep(md, &n).unwrap();
        prop_assert_eq!(e.size() as usize, n.dim());
        let sum = direct_sum(&n, &n).unwrap();
        let d = sum.dim();
        let perm: Vec<usize> = (0..d).map(|i| (i + perm_seed[0]) % d).collect();
        let e2 = exponent_of_nimrep(md, &sum.permute_basis(&perm)).unwrap();
        prop_assert!(e2.mult.iter().zip(&e.mult).all(|(a, b)| *a == 2 * b));
    }
}

#[test]
fn invariants_always_include_identity_and_commute() {
    for md in catalog() {
        let inv = modular_invariants(&md, 4).unwrap();
        assert!(inv.iter().any(|z| z.is_identity()), "{}", md.name);
        let n = md.rank();
        for z in &inv {
            assert_eq!(z.z[0][0], 1);
            for a in 0..n {
                for b in 0..n {
                    let zs: num_complex::Complex64 = (0..n).map(|k| md.s[(k, b)] * z.z[a][k] as f64).sum();
                    let sz: num_complex::Complex64 = (0..n).map(|k| md.s[(a, k)] * z.z[k][b] as f64).sum();
                    assert!((zs - sz).norm() < 1e-9);
                    assert!(z.z[a][b] == 0 || (md.t[a] - md.t[b]).norm() < 1e-9);
                }
            }
            let e = exponent_of_invariant(z);
            assert_eq!(e.mult[0], 1);
        }
    }
}
