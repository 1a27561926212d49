use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supertree::construct::random_supertree;
use supertree::iso::{are_isomorphic, are_isomorphic_by_search};
use supertree::matching::{matching_polynomial, matching_polynomial_oracle};
use supertree::spectra::{matching_energy, spectral_radius};
use supertree::UniformHypergraph;

const TOL: f64 = 1e-10;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

fn tree(r: usize, m: usize, seed: u64) -> UniformHypergraph {
    random_supertree(r, m, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn shuffled(h: &UniformHypergraph, seed: u64) -> UniformHypergraph {
    let mut perm: Vec<usize> = (0..h.n()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    h.relabel(&perm).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn recurrence_matches_enumeration(r in 2usize..=4, m in 1usize..=6, seed: u64) {
        let h = tree(r, m, seed);
        prop_assert_eq!(matching_polynomial(&h), matching_polynomial_oracle(&h));
    }

    #[test]
    fn relabeling_preserves_everything(r in 2usize..=4, m in 1usize..=6, seed: u64, s2: u64) {
        let h = tree(r, m, seed);
        let g = shuffled(&h, s2);
        prop_assert_eq!(matching_polynomial(&h), matching_polynomial(&g));
        prop_assert!(are_isomorphic(&h, &g));
        prop_assert!(close(spectral_radius(&h, TOL).unwrap(), spectral_radius(&g, TOL).unwrap()));
        prop_assert!(close(matching_energy(&h, TOL).unwrap(), matching_energy(&g, TOL).unwrap()));
    }

    #[test]
    fn isomorphism_tests_agree(r in 2usize..=3, m in 1usize..=5, s1: u64, s2: u64) {
        let g = tree(r, m, s1);
        let h = tree(r, m, s2);
        prop_assert_eq!(are_isomorphic(&g, &h), are_isomorphic_by_search(&g, &h));
        if are_isomorphic(&g, &h) {
            prop_assert_eq!(matching_polynomial(&g), matching_polynomial(&h));
        }
    }

    #[test]
    fn disjoint_union_rules(r in 2usize..=4, m1 in 1usize..=5, m2 in 1usize..=5, s1: u64, s2: u64) {
        let g = tree(r, m1, s1);
        let h = tree(r, m2, s2);
        let u = g.disjoint_union(&h).unwrap();
        prop_assert_eq!(
            matching_polynomial(&u),
            &matching_polynomial(&g) * &matching_polynomial(&h)
        );
        let rho = spectral_radius(&g, TOL).unwrap().max(spectral_radius(&h, TOL).unwrap());
        prop_assert!(close(spectral_radius(&u, TOL).unwrap(), rho));
        let me = matching_energy(&g, TOL).unwrap() + matching_energy(&h, TOL).unwrap();
        prop_assert!(close(matching_energy(&u, TOL).unwrap(), me));
    }

    #[test]
    fn isolated_vertices_only_shift_phi(r in 2usize..=4, m in 1usize..=5, k in 1usize..=3, seed: u64) {
        let h = tree(r, m, seed);
        let padded = h.with_isolated(k);
        let phi = matching_polynomial(&h);
        let padded_phi = matching_polynomial(&padded);
        prop_assert_eq!(padded_phi.degree(), phi.degree().map(|d| d + k));
        prop_assert!(close(spectral_radius(&h, TOL).unwrap(), spectral_radius(&padded, TOL).unwrap()));
        prop_assert!(close(matching_energy(&h, TOL).unwrap(), matching_energy(&padded, TOL).unwrap()));
    }
}
