mod common;

use common::{k3, rng, s3_system, z3z4z2};
use rand::Rng;
use whitefact_core::{sample, FactorSystem, TreeVertex};

fn check_ball_against_geodesics(s: &FactorSystem, radius: usize) {
    let o = s.u_vertex(s.one());
    let ball = s.bfs_ball(&o, radius).unwrap();
    for (i, p) in ball.vertices.iter().enumerate() {
        let dist = ball.distances_from(i);
        for (j, q) in ball.vertices.iter().enumerate() {
            let path = s.geodesic(p, q);
            assert_eq!(path.len() - 1, dist[j], "{p} -> {q}");
            assert_eq!(s.distance(p, q), dist[j]);
            assert_eq!(path.first(), Some(p));
            assert_eq!(path.last(), Some(q));
            for pair in path.windows(2) {
                assert!(s.neighbours(&pair[0]).unwrap().contains(&pair[1]));
                assert_ne!(pair[0].is_u(), pair[1].is_u());
            }
        }
    }
}

#[test]
fn geodesics_match_bfs_distances() {
    check_ball_against_geodesics(&k3(), 5);
    check_ball_against_geodesics(&z3z4z2(), 4);
    check_ball_against_geodesics(&s3_system(), 3);
}

#[test]
fn ball_sizes() {
    // Around U·ε the ball of K3 grows by 3 and then doubles every two
    // layers.
    let s = k3();
    let o = s.u_vertex(s.one());
    let sizes: Vec<usize> = (0..=6).map(|r| s.bfs_ball(&o, r).unwrap().vertices.len()).collect();
    assert_eq!(sizes, vec![1, 4, 7, 13, 19, 31, 43]);
}

#[test]
fn canonical_form_names_cosets() {
    // Two C-labels name the same coset iff g g'^-1 ∈ G_i.
    let s = z3z4z2();
    let words = s.words_up_to(2).unwrap();
    for i in 0..s.rank() {
        for g in &words {
            let v = s.c_vertex(i, g);
            assert_eq!(s.v_canon(&v), v);
            for h in &words {
                let same = s.mul(g, &s.inv(h)).as_letter().is_some_and(|e| e.is_none_or(|e| e.factor() == i));
                assert_eq!(s.c_vertex(i, h) == v, same);
            }
        }
    }
}

#[test]
fn action_is_a_right_action() {
    let s = z3z4z2();
    let mut r = rng(1);
    for _ in 0..300 {
        let v = if r.gen_bool(0.5) {
            s.u_vertex(sample::word(&s, &mut r, 3, None))
        } else {
            s.c_vertex(r.gen_range(0..3), &sample::word(&s, &mut r, 3, None))
        };
        let (g, h) = (sample::word(&s, &mut r, 3, None), sample::word(&s, &mut r, 2, None));
        assert_eq!(s.v_act(&v, &s.one()), v);
        assert_eq!(s.v_act(&s.v_act(&v, &g), &h), s.v_act(&v, &s.mul(&g, &h)));
        // The action is an isometry.
        let w = s.u_vertex(sample::word(&s, &mut r, 2, None));
        assert_eq!(s.distance(&v, &w), s.distance(&s.v_act(&v, &g), &s.v_act(&w, &g)));
    }
}

#[test]
fn conjugate_translates_have_midpoints() {
    // For h ∈ G_k^{g_k} non-trivial with G_k^{g_k} ≠ G_j^{g_j}, the vertex
    // G_k·g_k is the midpoint of [G_j·g_j, G_j·g_j·h].
    for s in [k3(), z3z4z2(), s3_system()] {
        let mut r = rng(2);
        let mut done = 0;
        while done < 200 {
            let j = r.gen_range(0..s.rank());
            let k = r.gen_range(0..s.rank());
            let lj = r.gen_range(0..=5);
            let lk = r.gen_range(0..=5);
            let p = s.c_vertex(j, &sample::word(&s, &mut r, lj, Some(j)));
            let mid = s.c_vertex(k, &sample::word(&s, &mut r, lk, Some(k)));
            if p == mid {
                continue;
            }
            let b = s.letter(&sample::element(&s, &mut r, k));
            let h = s.conj(&b, mid.rep());
            let path = s.geodesic(&p, &s.v_act(&p, &h));
            assert_eq!(path.len() % 2, 1);
            assert_eq!(path[path.len() / 2], mid);
            done += 1;
        }
    }
}

#[test]
fn adjacent_vertices_and_stabilisers() {
    // U·x and U·y adjacent to G_i·g give x^-1 y ∈ Stab(G_i·g), and
    // h fixes G_i·g exactly when g h g^-1 ∈ G_i.
    let s = z3z4z2();
    let mut r = rng(3);
    for _ in 0..300 {
        let i = r.gen_range(0..s.rank());
        let v = s.c_vertex(i, &sample::word(&s, &mut r, 4, None));
        let ns = s.neighbours(&v).unwrap();
        let x = ns[r.gen_range(0..ns.len())].rep().clone();
        let y = ns[r.gen_range(0..ns.len())].rep().clone();
        assert!(s.stabilises(&v, &s.mul(&s.inv(&x), &y)));
        let len = r.gen_range(0..4);
        let h = sample::word(&s, &mut r, len, None);
        let conj = s.mul_all(&[v.rep(), &h, &s.inv(v.rep())]);
        let in_gi = conj.as_letter().is_some_and(|e| e.is_none_or(|e| e.factor() == i));
        assert_eq!(s.stabilises(&v, &h), in_gi);
    }
}

#[test]
fn lies_between_matches_distances() {
    // x is on [p, q] iff d(p, x) + d(x, q) = d(p, q).
    let s = k3();
    let ball = s.bfs_ball(&s.u_vertex(s.one()), 4).unwrap();
    let vs: Vec<&TreeVertex> = ball.vertices.iter().step_by(3).collect();
    for p in &vs {
        for q in &vs {
            for x in &vs {
                let additive = s.distance(p, x) + s.distance(x, q) == s.distance(p, q);
                assert_eq!(s.lies_between(x, p, q), additive);
            }
        }
    }
}
