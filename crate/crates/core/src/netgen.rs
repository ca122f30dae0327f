//! Seeded random generators for the property and acceptance suites.
//!
//! All generators take a caller-provided RNG so identical seeds reproduce
//! identical networks byte for byte.

use rand::rngs::StdRng;
use rand::Rng;

use crate::field::Scalar;
use crate::tensor::{Func, Gadget};

/// Small exact scalars: integers, halves and low-order roots of unity.
pub fn random_scalar(rng: &mut StdRng) -> Scalar {
    match rng.random_range(0..8u32) {
        0 => Scalar::zero(),
        1 => Scalar::one(),
        2 => Scalar::from_int(-1),
        3 => Scalar::from_int(rng.random_range(2i64..5)),
        4 => Scalar::i(),
        5 => Scalar::from_ratio(1, 2),
        6 => Scalar::from_int(rng.random_range(1i64..4)).mul(&Scalar::i()),
        _ => Scalar::zeta(3, rng.random_range(1i64..3)),
    }
}

fn random_func(rng: &mut StdRng, arity: usize) -> Func {
    loop {
        let values: Vec<Scalar> = (0..1usize << arity).map(|_| random_scalar(rng)).collect();
        let f = Func::new(arity, values);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random closed network with the given vertex and edge budget; arities
/// follow from the random slot pairing (including self-loops) and are
/// capped at four to keep tables small.
pub fn random_closed_network(rng: &mut StdRng, max_vertices: usize, max_edges: usize) -> Gadget {
    const MAX_ARITY: usize = 4;
    let ne = rng.random_range(1..=max_edges);
    let min_vertices = (2 * ne).div_ceil(MAX_ARITY);
    let nv = rng.random_range(min_vertices.max(1)..=max_vertices.max(min_vertices));
    let mut slots_per_vertex = vec![0usize; nv];
    for _ in 0..2 * ne {
        loop {
            let v = rng.random_range(0..nv);
            if slots_per_vertex[v] < MAX_ARITY {
                slots_per_vertex[v] += 1;
                break;
            }
        }
    }
    let mut endpoints: Vec<(usize, usize)> = Vec::new();
    for (v, &k) in slots_per_vertex.iter().enumerate() {
        for s in 0..k {
            endpoints.push((v, s));
        }
    }
    // random pairing of all endpoints
    let mut edges = Vec::new();
    while !endpoints.is_empty() {
        let a = endpoints.swap_remove(0);
        let b = endpoints.swap_remove(rng.random_range(0..endpoints.len()));
        edges.push((a, b));
    }
    let vertices: Vec<Func> = slots_per_vertex
        .iter()
        .map(|&k| random_func(rng, k))
        .collect();
    Gadget::new(vertices, edges, Vec::new()).expect("generated network is structurally valid")
}

/// A random closed network whose vertices carry functions drawn from the
/// pool; slot counts follow the drawn arities.
pub fn random_closed_network_over(rng: &mut StdRng, pool: &[Func], max_vertices: usize) -> Gadget {
    assert!(!pool.is_empty());
    let upper = max_vertices.max(2);
    loop {
        let nv = rng.random_range(1..=upper);
        let picks: Vec<usize> = (0..nv).map(|_| rng.random_range(0..pool.len())).collect();
        let total: usize = picks.iter().map(|&i| pool[i].arity()).sum();
        if total == 0 || !total.is_multiple_of(2) {
            continue;
        }
        let mut endpoints: Vec<(usize, usize)> = Vec::new();
        for (v, &i) in picks.iter().enumerate() {
            for s in 0..pool[i].arity() {
                endpoints.push((v, s));
            }
        }
        let mut edges = Vec::new();
        while !endpoints.is_empty() {
            let a = endpoints.swap_remove(0);
            let b = endpoints.swap_remove(rng.random_range(0..endpoints.len()));
            edges.push((a, b));
        }
        let vertices: Vec<Func> = picks.iter().map(|&i| pool[i].clone()).collect();
        return Gadget::new(vertices, edges, Vec::new()).expect("pool network is valid");
    }
}

/// A random closed bipartite network with `edges` cross edges and side tags.
pub fn random_bipartite_network(rng: &mut StdRng, max_edges: usize) -> (Gadget, Vec<u8>) {
    let ne = rng.random_range(1..=max_edges);
    let n0 = rng.random_range(1..=ne);
    let n1 = rng.random_range(1..=ne);
    let mut slots0 = vec![0usize; n0];
    let mut slots1 = vec![0usize; n1];
    for _ in 0..ne {
        slots0[rng.random_range(0..n0)] += 1;
        slots1[rng.random_range(0..n1)] += 1;
    }
    // drop arity-0 vertices to keep sides meaningful
    let slots0: Vec<usize> = slots0.into_iter().filter(|&k| k > 0).collect();
    let slots1: Vec<usize> = slots1.into_iter().filter(|&k| k > 0).collect();
    let mut left: Vec<(usize, usize)> = Vec::new();
    for (v, &k) in slots0.iter().enumerate() {
        for s in 0..k {
            left.push((v, s));
        }
    }
    let offset = slots0.len();
    let mut right: Vec<(usize, usize)> = Vec::new();
    for (v, &k) in slots1.iter().enumerate() {
        for s in 0..k {
            right.push((v + offset, s));
        }
    }
    let mut edges = Vec::new();
    while !left.is_empty() {
        let a = left.swap_remove(0);
        let b = right.swap_remove(rng.random_range(0..right.len()));
        edges.push((a, b));
    }
    let mut vertices: Vec<Func> = Vec::new();
    let mut sides: Vec<u8> = Vec::new();
    for &k in &slots0 {
        vertices.push(random_func(rng, k));
        sides.push(0);
    }
    for &k in &slots1 {
        vertices.push(random_func(rng, k));
        sides.push(1);
    }
    let g = Gadget::new(vertices, edges, Vec::new()).expect("bipartite network is valid");
    (g, sides)
}

/// A disjoint union of alternating even cycles of disequality vertices.
/// Even positions act as the wire side, odd positions as the function side;
/// every plain edge is stored (wire endpoint, function endpoint). Returns
/// the network and the list of edge-index pairs eligible for the
/// recombination check (edges attached to distinct wire vertices).
pub fn random_disequality_cycles(rng: &mut StdRng, max_cycles: usize) -> (Gadget, Vec<(usize, usize)>) {
    let cycles = rng.random_range(1..=max_cycles);
    let mut vertices: Vec<Func> = Vec::new();
    let mut edges: Vec<((usize, usize), (usize, usize))> = Vec::new();
    let mut wire_of_edge: Vec<usize> = Vec::new();
    for _ in 0..cycles {
        let half = rng.random_range(1..=3usize); // cycle length 2 * half
        let base = vertices.len();
        let len = 2 * half;
        for _ in 0..len {
            vertices.push(Func::disequality2());
        }
        for k in 0..len {
            let a = base + k;
            let b = base + (k + 1) % len;
            // orient each edge as (wire vertex, function vertex): even
            // offsets are wires
            let (w, f, ws, fs) = if k % 2 == 0 {
                (a, b, 1, 0)
            } else {
                (b, a, 0, 1)
            };
            edges.push(((w, ws), (f, fs)));
            wire_of_edge.push(w);
        }
    }
    let g = Gadget::new(vertices, edges, Vec::new()).expect("cycle network is valid");
    let mut eligible = Vec::new();
    for i in 0..g.edges.len() {
        for j in i + 1..g.edges.len() {
            if wire_of_edge[i] != wire_of_edge[j] {
                eligible.push((i, j));
            }
        }
    }
    (g, eligible)
}
