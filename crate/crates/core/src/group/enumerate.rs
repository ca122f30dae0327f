//! Budget-bounded enumeration of realizable binary functions.
//!
//! The closure is built from three construction rules, iterated to a
//! fixpoint:
//!
//! 1. one vertex of the function set with an ordered pair of slots left
//!    external and the remaining slots matched into pairs, each pair closed
//!    either by a direct edge or by splicing an already-realized binary;
//! 2. the same over two vertices of the set, with the matching allowed to
//!    run across them;
//! 3. serial composition of two realized binaries (matrix product).
//!
//! Every realized binary carries a witness gadget over the original set
//! (spliced binaries are inlined by their own witnesses), so the vertex
//! count of the witness is the realization cost. Constructions whose cost
//! would exceed the budget are skipped and the result is marked truncated.
//! Emitted functions are nonzero and deduplicated projectively; the set is
//! kept transpose-closed since reversing the two external slots is free.

use crate::error::{Error, Result};
use crate::tensor::{Endpoint, Func, Gadget};

/// A realizable binary with a witness gadget over the original set.
#[derive(Clone)]
pub struct RealizedBinary {
    /// Projectively canonical table (first nonzero value is 1).
    pub func: Func,
    pub witness: Gadget,
    /// Vertex count of the witness.
    pub cost: usize,
}

pub struct EnumResult {
    pub binaries: Vec<RealizedBinary>,
    pub budget: usize,
    /// Some admissible construction was skipped only because of the budget.
    pub truncated: bool,
}

/// All perfect matchings of the given items (as index pairs into `items`).
fn perfect_matchings<T: Copy>(items: &[T]) -> Vec<Vec<(T, T)>> {
    if !items.len().is_multiple_of(2) {
        return Vec::new();
    }
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let first = items[0];
    for k in 1..items.len() {
        let partner = items[k];
        let rest: Vec<T> = items[1..]
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k - 1)
            .map(|(_, &t)| t)
            .collect();
        for mut sub in perfect_matchings(&rest) {
            sub.insert(0, (first, partner));
            out.push(sub);
        }
    }
    out
}

struct Builder {
    budget: usize,
    binaries: Vec<RealizedBinary>,
    truncated: bool,
}

impl Builder {
    /// Inserts a candidate (and its transpose) if nonzero and new.
    fn insert(&mut self, func: Func, witness: Gadget) -> bool {
        let Some((canon, _)) = func.projective_normal() else {
            return false; // zero functions do not affect anything
        };
        if self.binaries.iter().any(|b| b.func == canon) {
            return false;
        }
        let cost = witness.vertices.len();
        debug_assert!(cost <= self.budget);
        // reversing the external order is free, so keep the set
        // transpose-closed
        let transpose = canon.permute_vars(&[1, 0]);
        let mut w_t = witness.clone();
        w_t.external.swap(0, 1);
        self.binaries.push(RealizedBinary { func: canon, witness, cost });
        if let Some((t_canon, _)) = transpose.projective_normal() {
            if !self.binaries.iter().any(|b| b.func == t_canon) {
                self.binaries.push(RealizedBinary { func: t_canon, witness: w_t, cost });
            }
        }
        true
    }

    /// Closes the matched slot pairs of a partially-built gadget, splicing
    /// realized binaries from the snapshot where the link assignment says
    /// so, then contracts and inserts. Recursive over the pairs so that the
    /// budget prunes early.
    #[allow(clippy::too_many_arguments)]
    fn close_pairs(
        &mut self,
        snapshot_len: usize,
        base_vertices: &[Func],
        base_edges: &[(Endpoint, Endpoint)],
        external: &[Endpoint; 2],
        pairs: &[(Endpoint, Endpoint)],
        pair_idx: usize,
        cost_so_far: usize,
    ) -> bool {
        if pair_idx == pairs.len() {
            let gadget = match Gadget::new(
                base_vertices.to_vec(),
                base_edges.to_vec(),
                external.to_vec(),
            ) {
                Ok(g) => g,
                Err(_) => return false,
            };
            let func = match gadget.gadget_function() {
                Ok(f) => f,
                Err(_) => return false,
            };
            return self.insert(func, gadget);
        }
        let (u, v) = pairs[pair_idx];
        let mut any = false;
        // direct edge
        {
            let mut edges = base_edges.to_vec();
            edges.push((u, v));
            any |= self.close_pairs(
                snapshot_len,
                base_vertices,
                &edges,
                external,
                pairs,
                pair_idx + 1,
                cost_so_far,
            );
        }
        // splice a realized binary (inlining its witness keeps the gadget
        // grounded in the original set)
        for bi in 0..snapshot_len {
            let b = self.binaries[bi].clone();
            let new_cost = cost_so_far + b.cost;
            if new_cost > self.budget {
                self.truncated = true;
                continue;
            }
            let offset = base_vertices.len();
            let mut vertices = base_vertices.to_vec();
            vertices.extend(b.witness.vertices.iter().cloned());
            let mut edges = base_edges.to_vec();
            edges.extend(
                b.witness
                    .edges
                    .iter()
                    .map(|&((v1, s1), (v2, s2))| ((v1 + offset, s1), (v2 + offset, s2))),
            );
            let (e0, e1) = (b.witness.external[0], b.witness.external[1]);
            edges.push((u, (e0.0 + offset, e0.1)));
            edges.push(((e1.0 + offset, e1.1), v));
            any |= self.close_pairs(
                snapshot_len,
                &vertices,
                &edges,
                external,
                pairs,
                pair_idx + 1,
                new_cost,
            );
        }
        any
    }

    /// All closures of `base_vertices` (one or two set functions) with every
    /// external slot pair and every matching of the rest. Transposes are
    /// added on insertion, so unordered external pairs suffice. The total
    /// slot count is capped to keep the matching scan at desk scale.
    fn atoms(&mut self, snapshot_len: usize, base_vertices: &[Func]) -> bool {
        const MAX_ATOM_SLOTS: usize = 8;
        let base_cost = base_vertices.len();
        if base_cost > self.budget {
            self.truncated = true;
            return false;
        }
        let slots: Vec<Endpoint> = base_vertices
            .iter()
            .enumerate()
            .flat_map(|(v, f)| (0..f.arity()).map(move |s| (v, s)))
            .collect();
        if slots.len() < 2 || !(slots.len() - 2).is_multiple_of(2) {
            return false;
        }
        if slots.len() > MAX_ATOM_SLOTS {
            self.truncated = true;
            return false;
        }
        let mut any = false;
        for (i0, &e0) in slots.iter().enumerate() {
            for &e1 in slots.iter().skip(i0 + 1) {
                let rest: Vec<Endpoint> =
                    slots.iter().copied().filter(|&s| s != e0 && s != e1).collect();
                for matching in perfect_matchings(&rest) {
                    any |= self.close_pairs(
                        snapshot_len,
                        base_vertices,
                        &[],
                        &[e0, e1],
                        &matching,
                        0,
                        base_cost,
                    );
                }
            }
        }
        any
    }

    /// Serial composition of two realized binaries from the snapshot.
    fn serial(&mut self, snapshot_len: usize) -> bool {
        let mut any = false;
        for ai in 0..snapshot_len {
            for bi in 0..snapshot_len {
                let (a, b) = (self.binaries[ai].clone(), self.binaries[bi].clone());
                let cost = a.cost + b.cost;
                if cost > self.budget {
                    self.truncated = true;
                    continue;
                }
                let product = Func::from_matrix2(&a.func.reshape(&[0]).mul(&b.func.reshape(&[0])));
                if product.is_zero() {
                    continue;
                }
                // early dedup before building the witness
                let canon = product.projective_normal().unwrap().0;
                if self.binaries.iter().any(|x| x.func == canon) {
                    continue;
                }
                let offset = a.witness.vertices.len();
                let mut vertices = a.witness.vertices.clone();
                vertices.extend(b.witness.vertices.iter().cloned());
                let mut edges = a.witness.edges.clone();
                edges.extend(
                    b.witness
                        .edges
                        .iter()
                        .map(|&((v1, s1), (v2, s2))| ((v1 + offset, s1), (v2 + offset, s2))),
                );
                let b0 = b.witness.external[0];
                edges.push((a.witness.external[1], (b0.0 + offset, b0.1)));
                let b1 = b.witness.external[1];
                let external = vec![a.witness.external[0], (b1.0 + offset, b1.1)];
                let witness = match Gadget::new(vertices, edges, external) {
                    Ok(g) => g,
                    Err(_) => continue,
                };
                any |= self.insert(product, witness);
            }
        }
        any
    }
}

/// Breadth-first closure of the construction rules up to the vertex budget.
pub fn enumerate_binaries(fset: &[Func], budget: usize) -> Result<EnumResult> {
    if budget < 1 {
        return Err(Error::Precondition("budget must be at least 1".into()));
    }
    let mut builder = Builder { budget, binaries: Vec::new(), truncated: false };
    loop {
        let snapshot = builder.binaries.len();
        let mut changed = false;
        for f in fset {
            changed |= builder.atoms(snapshot, std::slice::from_ref(f));
        }
        for (i, f) in fset.iter().enumerate() {
            for g in fset.iter().skip(i) {
                if f.arity() + g.arity() >= 2 {
                    changed |= builder.atoms(snapshot, &[f.clone(), g.clone()]);
                }
            }
        }
        changed |= builder.serial(snapshot);
        if !changed && builder.binaries.len() == snapshot {
            break;
        }
    }
    Ok(EnumResult { binaries: builder.binaries, budget, truncated: builder.truncated })
}
