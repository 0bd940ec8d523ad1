mod common;

use knot818::alexander::burau_reduced;
use knot818::braid::{closure_diagram, writhe, VertexRule};
use knot818::traversal::{traverse, StartSpec};
use knot818::{
    alexander_from_braid, apply_symmetry, canonical_818, cyclic_equivalent, emit_extended_gauss,
    enumerate_all, gauss_to_dt, normalize_alexander, parse_extended_gauss, validate_word,
    BraidWord, LaurentPoly, SymmetryOp, VisitRole,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..4, prop::collection::vec(-20i64..20, 0..6))
        .prop_map(|(min, coeffs)| LaurentPoly::from_i64s(min, &coeffs))
}

fn braid(strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let n = strands as i32 - 1;
    prop::collection::vec((1..=n, any::<bool>()), 0..max_len).prop_map(move |ls| {
        BraidWord::new(
            strands,
            ls.into_iter()
                .map(|(i, inv)| if inv { -i } else { i })
                .collect(),
        )
        .unwrap()
    })
}

fn knot_braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4)
        .prop_flat_map(|n| braid(n, 9))
        .prop_filter("closure is a knot", |b| {
            !b.letters().is_empty() && b.closure_components() == 1
        })
}

fn symmetry_op() -> impl Strategy<Value = SymmetryOp> {
    (0i32..4, any::<bool>()).prop_map(|(r, m)| SymmetryOp::new(r, m))
}

fn word_from_seed(seed: u64) -> knot818::DiagramWord {
    common::random_valid_word(&mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.invert_variable().invert_variable(), a.clone());
    }

    #[test]
    fn exact_division_undoes_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn burau_is_a_homomorphism(u in braid(4, 6), v in braid(4, 6)) {
        let mut uv = u.letters().to_vec();
        uv.extend_from_slice(v.letters());
        let uv = BraidWord::new(4, uv).unwrap();
        prop_assert_eq!(burau_reduced(&uv), burau_reduced(&u).mul(&burau_reduced(&v)));
    }

    #[test]
    fn alexander_is_symmetric_and_unit_at_one(b in knot_braid()) {
        let delta = alexander_from_braid(&b).unwrap();
        prop_assert_eq!(normalize_alexander(&delta.invert_variable()).unwrap(), delta.clone());
        let at_one = delta.evaluate_int(1).unwrap();
        prop_assert!(at_one.numer().magnitude() == &1u32.into() && at_one.denom() == &1.into());
    }

    #[test]
    fn writhe_matches_exponent_sum(b in knot_braid()) {
        let d = closure_diagram(&b, VertexRule::Omitted).unwrap();
        prop_assert_eq!(writhe(&d.crossings), b.exponent_sum());
    }

    #[test]
    fn gauss_round_trip_and_dt(seed in any::<u64>()) {
        let w = word_from_seed(seed);
        prop_assert!(validate_word(&w).is_empty());
        prop_assert_eq!(parse_extended_gauss(&emit_extended_gauss(&w)).unwrap(), w.clone());
        prop_assert!(gauss_to_dt(&w).unwrap().is_even_permutation_code());
    }

    #[test]
    fn symmetry_ops_form_a_group(a in symmetry_op(), b in symmetry_op(), seed in any::<u64>()) {
        let w = word_from_seed(seed);
        let ab = apply_symmetry(&apply_symmetry(&w, b), a);
        prop_assert_eq!(apply_symmetry(&w, a.compose(b)), ab);
        prop_assert_eq!(apply_symmetry(&apply_symmetry(&w, a), a.inverse()), w);
    }

    #[test]
    fn witness_maps_and_inverts(seed in any::<u64>(), quarter in 0i32..4, k in 0usize..20, rev in any::<bool>()) {
        // reflection swaps roles, which no relabelling can undo
        let w = word_from_seed(seed);
        let mut target = apply_symmetry(&w, SymmetryOp::new(quarter, false)).rotated(k);
        if rev {
            target = target.reversed();
        }
        let wit = cyclic_equivalent(&w, &target).expect("symmetric image is equivalent");
        prop_assert_eq!(wit.apply(&w), target.clone());
        prop_assert_eq!(wit.inverse(w.len()).apply(&target), w);
    }

    #[test]
    fn traversal_is_equivariant(op in symmetry_op(), which in 0usize..40) {
        let w = canonical_818();
        let spec = enumerate_all(&w).unwrap().states[which].spec;
        let direct = traverse(&apply_symmetry(&w, op), &spec.mapped(op)).unwrap();
        prop_assert_eq!(direct, traverse(&w, &spec).unwrap().relabeled(op));
    }
}

#[test]
fn every_start_is_a_permutation_starting_at_one() {
    let w = canonical_818();
    for s in enumerate_all(&w).unwrap().states {
        assert!(s.table.is_permutation(), "{}", s.label());
        let role = s.spec.entry_role().unwrap_or(VisitRole::Through);
        assert_eq!(s.table.value(s.spec.site(), role), Some(1), "{}", s.label());
    }
}

#[test]
fn value_gap_matches_word_gap() {
    let w = canonical_818();
    for s in enumerate_all(&w).unwrap().states {
        for site in w.sites().into_iter().filter(|s| !s.is_branch()) {
            let pos = w.positions_of(site);
            let g = pos[1].abs_diff(pos[0]);
            let over = s.table.value(site, VisitRole::Over).unwrap();
            let under = s.table.value(site, VisitRole::Under).unwrap();
            let d = over.abs_diff(under) as usize;
            assert!(d == g || d == 20 - g, "{} at {site}: {d} vs {g}", s.label());
        }
    }
}

#[test]
fn crossing_roles_alternate_in_value_order() {
    let w = canonical_818();
    for s in enumerate_all(&w).unwrap().states {
        let mut by_value: Vec<(u32, VisitRole)> = Vec::new();
        for site in w.sites() {
            for role in [VisitRole::Over, VisitRole::Under] {
                if let Some(v) = s.table.value(site, role) {
                    by_value.push((v, role));
                }
            }
        }
        by_value.sort();
        assert_eq!(by_value.len(), 16);
        for pair in by_value.windows(2) {
            assert_ne!(pair[0].1, pair[1].1, "{}", s.label());
        }
    }
}

#[test]
fn start_mapping_round_trips() {
    let w = canonical_818();
    for s in enumerate_all(&w).unwrap().states {
        for op in SymmetryOp::all() {
            let back: StartSpec = s.spec.mapped(op).mapped(op.inverse());
            assert_eq!(back, s.spec);
        }
    }
}
