use std::collections::BTreeSet;

use cocycle_core::building::{
    act_on_chamber, chamber_distance, chambers_within, enumerate_stabilizer, sgn, simplex_stabilizer,
    stable_chamber, vertex_class_equal, vertex_matrix, weyl_act, weyl_elements,
};
use cocycle_core::{Chamber, GaloisField, RationalFunctionField, Vertex};

fn is_power_of(n: usize, q: usize) -> bool {
    let mut n = n;
    while n.is_multiple_of(q) {
        n /= q;
    }
    n == 1
}

#[test]
fn stabilizer_orders_are_powers_of_q() {
    for (q, radius) in [(2u32, 6usize), (3, 4)] {
        let f = GaloisField::new(q).unwrap();
        for (c, _) in chambers_within(radius) {
            let n = enumerate_stabilizer(&simplex_stabilizer(c.vertices()).unwrap(), &f).len();
            assert!(is_power_of(n, q as usize), "q={q} {c}: {n}");
        }
    }
}

#[test]
fn neighbors_have_opposite_signs() {
    for (c, _) in chambers_within(6) {
        for n in c.neighbors() {
            assert_eq!(sgn(&c) * sgn(&n), -1, "{c} vs {n}");
        }
    }
}

/// `{[j,k], [j,k-1], [j-1,k-1]}`.
fn positive_shape(j: i64, k: i64) -> Chamber {
    Chamber::new(Vertex::new(j, k), Vertex::new(j, k - 1), Vertex::new(j - 1, k - 1)).unwrap()
}

#[test]
fn same_sign_positive_chambers_follow_closed_form() {
    let s0 = stable_chamber();
    let mut checked = 0;
    for (c, d) in chambers_within(6) {
        for v in c.vertices() {
            let (j, k) = (v.j, v.k);
            if positive_shape(j, k) == c && j * k >= 0 {
                assert_eq!(d, 2 * j.abs().max(k.abs()) as usize, "{c}");
                assert_eq!(chamber_distance(&c, &s0), d);
                checked += 1;
            }
        }
    }
    assert!(checked > 10);
}

#[test]
fn weyl_action_composes() {
    let w = weyl_elements();
    for s in &w {
        for t in &w {
            for j in -3..=3 {
                for k in -3..=3 {
                    let v = Vertex::new(j, k);
                    assert_eq!(weyl_act(&s.compose(t), &v), weyl_act(s, &weyl_act(t, &v)));
                }
            }
        }
    }
}

#[test]
fn weyl_orbits_match_displayed_orbit() {
    for j in -4..=4i64 {
        for k in -4..=4i64 {
            let v = Vertex::new(j, k);
            let got: BTreeSet<Vertex> = weyl_elements().iter().map(|s| weyl_act(s, &v)).collect();
            let expected: BTreeSet<Vertex> = [(j, k), (-j, k - j), (k - j, -j), (k, j), (-k, j - k), (j - k, -k)]
                .into_iter()
                .map(|(a, b)| Vertex::new(a, b))
                .collect();
            assert_eq!(got, expected, "[{j},{k}]");
        }
    }
}

#[test]
fn enumerated_stabilizers_fix_their_chambers() {
    for q in [2u32, 3] {
        let f = GaloisField::new(q).unwrap();
        let kf = RationalFunctionField::new(f.clone());
        for (c, _) in chambers_within(3) {
            let classes = c.vertices().map(|v| vertex_matrix(&kf, &v));
            for g in enumerate_stabilizer(&simplex_stabilizer(c.vertices()).unwrap(), &f) {
                let moved = act_on_chamber(&kf, &g, &c);
                for (a, b) in moved.iter().zip(&classes) {
                    assert!(vertex_class_equal(&kf, a, b), "q={q} {c}");
                }
            }
        }
    }
}

#[test]
fn stable_chamber_is_the_only_trivial_one_nearby() {
    let f = GaloisField::new(2).unwrap();
    let trivial: Vec<Chamber> = chambers_within(5)
        .into_iter()
        .map(|(c, _)| c)
        .filter(|c| enumerate_stabilizer(&simplex_stabilizer(c.vertices()).unwrap(), &f).len() == 1)
        .collect();
    assert_eq!(trivial, vec![stable_chamber()]);
}
