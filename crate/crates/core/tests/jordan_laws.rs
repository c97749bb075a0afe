use cmdegen_core::jordan::*;
use cmdegen_core::laws::*;
use cmdegen_core::witness::SearchOptions;

fn assert_none(what: &str, v: Vec<String>) {
    assert!(v.is_empty(), "{what}: {} violations, first {:?}", v.len(), v.first());
}

// Validation of the padding bound: beyond the minimal padding, extra free
// summands never change the answer.
#[test]
fn minimal_padding_suffices() {
    assert_none("padding", padding_bound_violations(4, 10));
}

#[test]
fn stable_order_is_a_partial_order() {
    assert_none("axioms", order_axiom_violations(4, 10));
}

#[test]
fn shift_preserves_order() {
    assert_none("shift", shift_violations(4, 8));
}

#[test]
fn summands_move_across_with_a_shift() {
    assert_none("cancellation", cancellation_violations(3, 8));
}

#[test]
fn zero_degenerates_to_x_plus_shift() {
    assert_none("zero", zero_degenerates_violations(4, 6));
}

#[test]
fn extensions_degenerate_to_direct_sums() {
    assert_none("extensions", extension_violations(3, 6).unwrap());
}

#[test]
fn rank_order_matches_search_for_n_up_to_2() {
    assert_none("oracle", oracle_disagreements(2, 6, &SearchOptions::default()).unwrap());
}

#[test]
fn hasse_covers_are_transitive_reduction() {
    for n in 1..=4 {
        for size in 0..=7 {
            for stable in [false, true] {
                let h = hasse(n, size, stable).unwrap();
                let le = |p: &Partition, q: &Partition| {
                    if stable {
                        stable_deg_order(p, q).unwrap()
                    } else {
                        deg_order(p, q).unwrap()
                    }
                };
                for &(a, b) in &h.covers {
                    assert!(le(&h.nodes[a], &h.nodes[b]));
                    assert_ne!(a, b);
                }
                // every relation is a chain of covers
                let k = h.nodes.len();
                let mut reach = vec![vec![false; k]; k];
                for i in 0..k {
                    reach[i][i] = true;
                }
                for &(a, b) in &h.covers {
                    reach[a][b] = true;
                }
                for m in 0..k {
                    for i in 0..k {
                        for j in 0..k {
                            if reach[i][m] && reach[m][j] {
                                reach[i][j] = true;
                            }
                        }
                    }
                }
                for i in 0..k {
                    for j in 0..k {
                        assert_eq!(reach[i][j], le(&h.nodes[i], &h.nodes[j]), "n={n} size={size}");
                    }
                }
            }
        }
    }
}

#[test]
fn knorrer_poset_matches_stable_hasse() {
    for n in 1..=4 {
        for size in 0..=8 {
            let h = hasse(n, size, true).unwrap().to_digraph(|p| p.to_string());
            let k = knorrer_poset(n, size).unwrap();
            let back = |label: &str| -> String { partition_label_from_knorrer(label) };
            assert!(k.isomorphic_under(&h, back), "n={n} size={size}");
        }
    }
}
