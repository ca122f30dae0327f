//! Function tables, graph gadgets and exact contraction.
//!
//! A [`Func`] is an arity-d function on Boolean inputs stored as a table of
//! 2^d scalars; index bits are big-endian, the first variable is the most
//! significant bit. A [`Gadget`] is a multigraph whose vertices carry
//! functions: internal edges identify the two incident slots, external edges
//! are the open variables in a fixed order. The value of a closed gadget is
//! the sum over all edge assignments of the product of vertex values.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::ScalarMatrix;

/// An arity-d function {0,1}^d -> Q(zeta_n), dense table of 2^d values.
#[derive(Clone, PartialEq, Eq)]
pub struct Func {
    arity: usize,
    values: Vec<Scalar>,
}

impl Func {
    pub fn new(arity: usize, values: Vec<Scalar>) -> Self {
        assert_eq!(values.len(), 1usize << arity, "table length must be 2^arity");
        Func { arity, values }
    }

    pub fn constant(value: Scalar) -> Self {
        Func { arity: 0, values: vec![value] }
    }

    pub fn zero(arity: usize) -> Self {
        Func { arity, values: vec![Scalar::zero(); 1 << arity] }
    }

    /// Equality on k variables: 1 on the all-zero and all-one inputs.
    pub fn equality(k: usize) -> Self {
        let mut f = Func::zero(k);
        f.values[0] = Scalar::one();
        let last = (1usize << k) - 1;
        f.values[last] = Scalar::one();
        f
    }

    /// Binary disequality.
    pub fn disequality2() -> Self {
        Func::new(2, vec![0.into(), 1.into(), 1.into(), 0.into()])
    }

    /// The unary point functions (1, 0) and (0, 1).
    pub fn delta0() -> Self {
        Func::new(1, vec![1.into(), 0.into()])
    }

    pub fn delta1() -> Self {
        Func::new(1, vec![0.into(), 1.into()])
    }

    /// Symmetric function from the value list [f_0, ..., f_d], where f_w is
    /// the value on inputs of Hamming weight w.
    pub fn symmetric(values_by_weight: &[Scalar]) -> Self {
        let d = values_by_weight.len() - 1;
        let table = (0..1usize << d)
            .map(|a| values_by_weight[a.count_ones() as usize].clone())
            .collect();
        Func::new(d, table)
    }

    /// Binary function from a 2x2 matrix, rows indexed by the first variable.
    pub fn from_matrix2(m: &ScalarMatrix) -> Self {
        assert_eq!((m.rows(), m.cols()), (2, 2));
        Func::new(
            2,
            vec![
                m.get(0, 0).clone(),
                m.get(0, 1).clone(),
                m.get(1, 0).clone(),
                m.get(1, 1).clone(),
            ],
        )
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn get(&self, assignment: usize) -> &Scalar {
        &self.values[assignment]
    }

    pub fn set(&mut self, assignment: usize, v: Scalar) {
        self.values[assignment] = v;
    }

    /// Bit of variable `var` in `assignment` (variable 0 is the most
    /// significant bit).
    pub fn bit(&self, assignment: usize, var: usize) -> usize {
        (assignment >> (self.arity - 1 - var)) & 1
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Assignments with nonzero value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&a| !self.values[a].is_zero()).collect()
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Func {
        Func {
            arity: self.arity,
            values: self.values.iter().map(|v| v.mul(s)).collect(),
        }
    }

    pub fn add(&self, other: &Func) -> Func {
        assert_eq!(self.arity, other.arity);
        Func {
            arity: self.arity,
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    /// Tensor product with this function's variables first.
    pub fn tensor_product(&self, other: &Func) -> Func {
        let d = self.arity + other.arity;
        let mut values = Vec::with_capacity(1 << d);
        for a in &self.values {
            for b in &other.values {
                values.push(a.mul(b));
            }
        }
        Func { arity: d, values }
    }

    /// Reorders variables: the p-th variable of the result is the
    /// `new_to_old[p]`-th variable of the original.
    pub fn permute_vars(&self, new_to_old: &[usize]) -> Func {
        assert_eq!(new_to_old.len(), self.arity);
        let d = self.arity;
        let values = (0..1usize << d)
            .map(|a| {
                let mut old = 0usize;
                for (p, &o) in new_to_old.iter().enumerate() {
                    let bit = (a >> (d - 1 - p)) & 1;
                    old |= bit << (d - 1 - o);
                }
                self.values[old].clone()
            })
            .collect();
        Func { arity: d, values }
    }

    /// Pins the given variables to constants; remaining variables keep their
    /// relative order.
    pub fn pin(&self, assignment: &[(usize, usize)]) -> Func {
        for &(v, b) in assignment {
            assert!(v < self.arity && b < 2);
        }
        let mut pinned = vec![None; self.arity];
        for &(v, b) in assignment {
            assert!(pinned[v].is_none(), "duplicate pinned variable");
            pinned[v] = Some(b);
        }
        let free: Vec<usize> = (0..self.arity).filter(|&v| pinned[v].is_none()).collect();
        let d = free.len();
        let mut values = Vec::with_capacity(1 << d);
        for a in 0..1usize << d {
            let mut idx = 0usize;
            for (p, &v) in free.iter().enumerate() {
                let bit = (a >> (d - 1 - p)) & 1;
                idx |= bit << (self.arity - 1 - v);
            }
            for (v, pb) in pinned.iter().enumerate() {
                if let Some(b) = pb {
                    idx |= b << (self.arity - 1 - v);
                }
            }
            values.push(self.values[idx].clone());
        }
        Func { arity: d, values }
    }

    /// Contracts variables u and v through the binary function `link`:
    /// sum over e1, e2 of link(e1, e2) * F(.., u=e1, .., v=e2, ..).
    /// The identity link (binary equality) realizes a plain self-loop.
    pub fn self_loop(&self, u: usize, v: usize, link: &Func) -> Func {
        assert!(u != v && u < self.arity && v < self.arity);
        assert_eq!(link.arity, 2);
        let free: Vec<usize> = (0..self.arity).filter(|&w| w != u && w != v).collect();
        let d = free.len();
        let mut values = Vec::with_capacity(1 << d);
        for a in 0..1usize << d {
            let mut base = 0usize;
            for (p, &w) in free.iter().enumerate() {
                let bit = (a >> (d - 1 - p)) & 1;
                base |= bit << (self.arity - 1 - w);
            }
            let mut acc = Scalar::zero();
            for e1 in 0..2usize {
                for e2 in 0..2usize {
                    let l = link.get(e1 << 1 | e2);
                    if l.is_zero() {
                        continue;
                    }
                    let idx = base
                        | (e1 << (self.arity - 1 - u))
                        | (e2 << (self.arity - 1 - v));
                    acc = acc.add(&l.mul(&self.values[idx]));
                }
            }
            values.push(acc);
        }
        Func { arity: d, values }
    }

    /// Matrix view with the given variables as row index (in the order
    /// given, first is most significant) and the remaining variables as the
    /// column index in ascending order.
    pub fn reshape(&self, row_vars: &[usize]) -> ScalarMatrix {
        let col_vars: Vec<usize> = (0..self.arity).filter(|v| !row_vars.contains(v)).collect();
        let (rn, cn) = (row_vars.len(), col_vars.len());
        let mut m = ScalarMatrix::zero(1 << rn, 1 << cn);
        for r in 0..1usize << rn {
            for c in 0..1usize << cn {
                let mut idx = 0usize;
                for (p, &v) in row_vars.iter().enumerate() {
                    idx |= ((r >> (rn - 1 - p)) & 1) << (self.arity - 1 - v);
                }
                for (p, &v) in col_vars.iter().enumerate() {
                    idx |= ((c >> (cn - 1 - p)) & 1) << (self.arity - 1 - v);
                }
                m.set(r, c, self.values[idx].clone());
            }
        }
        m
    }

    /// Proportionality: returns c with other = c * self.
    pub fn proportional_to(&self, other: &Func) -> Option<Scalar> {
        if self.arity != other.arity {
            return None;
        }
        let first = self.values.iter().position(|v| !v.is_zero());
        let Some(k) = first else {
            return other.is_zero().then(Scalar::one);
        };
        if other.values[k].is_zero() {
            return None;
        }
        let c = other.values[k].div(&self.values[k]).unwrap();
        for (a, b) in self.values.iter().zip(other.values.iter()) {
            if a.mul(&c) != *b {
                return None;
            }
        }
        Some(c)
    }

    /// Scales so that the first nonzero value is 1; returns the scaled
    /// function and the original leading value. `None` for the zero function.
    pub fn projective_normal(&self) -> Option<(Func, Scalar)> {
        let k = self.values.iter().position(|v| !v.is_zero())?;
        let lead = self.values[k].clone();
        let inv = lead.inv().unwrap();
        Some((self.scalar_mul(&inv), lead))
    }
}

impl std::fmt::Debug for Func {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Func[{}](", self.arity)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Endpoint of an edge: (vertex index, slot index).
pub type Endpoint = (usize, usize);

/// A multigraph gadget. Each vertex carries a function whose arity equals
/// its slot count; every slot is used exactly once, either by an internal
/// edge endpoint or by an external edge.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub vertices: Vec<Func>,
    pub edges: Vec<(Endpoint, Endpoint)>,
    pub external: Vec<Endpoint>,
}

impl Gadget {
    pub fn new(
        vertices: Vec<Func>,
        edges: Vec<(Endpoint, Endpoint)>,
        external: Vec<Endpoint>,
    ) -> Result<Self> {
        let g = Gadget { vertices, edges, external };
        g.validate()?;
        Ok(g)
    }

    /// Checks the slot-usage invariants: slot indices in range, and every
    /// slot of every vertex used exactly once across edges and externals.
    pub fn validate(&self) -> Result<()> {
        let mut seen: Vec<Vec<usize>> =
            self.vertices.iter().map(|f| vec![0; f.arity()]).collect();
        let mut use_slot = |(v, s): Endpoint, what: &str| -> Result<()> {
            if v >= self.vertices.len() {
                return Err(Error::Validation(format!(
                    "{what}: vertex index {v} out of range"
                )));
            }
            if s >= self.vertices[v].arity() {
                return Err(Error::Validation(format!(
                    "{what}: slot {s} out of range for vertex {v} (arity {})",
                    self.vertices[v].arity()
                )));
            }
            seen[v][s] += 1;
            Ok(())
        };
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            use_slot(a, &format!("edge {i}"))?;
            use_slot(b, &format!("edge {i}"))?;
        }
        for (i, &x) in self.external.iter().enumerate() {
            use_slot(x, &format!("external {i}"))?;
        }
        for (v, slots) in seen.iter().enumerate() {
            for (s, &count) in slots.iter().enumerate() {
                if count != 1 {
                    return Err(Error::Validation(format!(
                        "vertex {v} slot {s} used {count} times (must be exactly once)"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_closed(&self) -> bool {
        self.external.is_empty()
    }

    /// Literal evaluation: the sum over all 2^|E| edge assignments of the
    /// product of vertex values, with external variables pinned from
    /// `ext_assignment`. This is the reference semantics; the contraction
    /// engine must agree with it exactly.
    pub fn value_literal(&self, ext_assignment: usize) -> Scalar {
        let ne = self.edges.len();
        let mut total = Scalar::zero();
        for mask in 0..1usize << ne {
            let mut slot_val: Vec<Vec<usize>> =
                self.vertices.iter().map(|f| vec![0; f.arity()]).collect();
            for (i, &((v1, s1), (v2, s2))) in self.edges.iter().enumerate() {
                let b = (mask >> i) & 1;
                slot_val[v1][s1] = b;
                slot_val[v2][s2] = b;
            }
            for (i, &(v, s)) in self.external.iter().enumerate() {
                let b = (ext_assignment >> (self.external.len() - 1 - i)) & 1;
                slot_val[v][s] = b;
            }
            let mut prod = Scalar::one();
            let mut zero = false;
            for (v, f) in self.vertices.iter().enumerate() {
                let mut idx = 0usize;
                for (s, &b) in slot_val[v].iter().enumerate() {
                    idx |= b << (f.arity() - 1 - s);
                }
                let val = f.get(idx);
                if val.is_zero() {
                    zero = true;
                    break;
                }
                prod = prod.mul(val);
            }
            if !zero {
                total = total.add(&prod);
            }
        }
        total
    }

    /// Value of a closed network by the literal 2^|E| sum.
    pub fn holant_value_literal(&self) -> Result<Scalar> {
        if !self.is_closed() {
            return Err(Error::Precondition("holant value requires a closed network".into()));
        }
        Ok(self.value_literal(0))
    }

    /// Value of a closed network via greedy pairwise contraction. Agrees
    /// exactly with `holant_value_literal`.
    pub fn holant_value(&self) -> Result<Scalar> {
        if !self.is_closed() {
            return Err(Error::Precondition("holant value requires a closed network".into()));
        }
        let f = self.gadget_function()?;
        Ok(f.get(0).clone())
    }

    /// Contracts the whole gadget to the function of its external variables,
    /// in external order. A closed gadget yields an arity-0 function whose
    /// single value is the network value.
    pub fn gadget_function(&self) -> Result<Func> {
        self.validate()?;
        #[derive(Clone, Copy, PartialEq)]
        enum Slot {
            Ext(usize),
            Edge(usize),
        }
        struct Node {
            func: Func,
            slots: Vec<Slot>,
        }

        let mut nodes: Vec<Node> = self
            .vertices
            .iter()
            .map(|f| Node { func: f.clone(), slots: vec![Slot::Ext(usize::MAX); f.arity()] })
            .collect();
        for (i, &((v1, s1), (v2, s2))) in self.edges.iter().enumerate() {
            nodes[v1].slots[s1] = Slot::Edge(i);
            nodes[v2].slots[s2] = Slot::Edge(i);
        }
        for (i, &(v, s)) in self.external.iter().enumerate() {
            nodes[v].slots[s] = Slot::Ext(i);
        }

        let eq2 = Func::equality(2);
        // eliminate internal self-loops on a single node
        let eliminate_loops = |node: &mut Node| {
            loop {
                let mut pair = None;
                'outer: for a in 0..node.slots.len() {
                    if let Slot::Edge(e) = node.slots[a] {
                        for b in a + 1..node.slots.len() {
                            if node.slots[b] == Slot::Edge(e) {
                                pair = Some((a, b));
                                break 'outer;
                            }
                        }
                    }
                }
                let Some((a, b)) = pair else { break };
                node.func = node.func.self_loop(a, b, &eq2);
                node.slots.remove(b);
                node.slots.remove(a);
            }
        };
        for node in nodes.iter_mut() {
            eliminate_loops(node);
        }

        let mut live: Vec<usize> = (0..nodes.len()).collect();
        while live.len() > 1 {
            // greedy: merge the pair with the smallest resulting slot count,
            // ties broken by lowest index pair
            let mut best: Option<(usize, usize, usize)> = None;
            for (ai, &a) in live.iter().enumerate() {
                for &b in live.iter().skip(ai + 1) {
                    let shared = nodes[a]
                        .slots
                        .iter()
                        .filter(|s| matches!(s, Slot::Edge(e) if nodes[b].slots.contains(&Slot::Edge(*e))))
                        .count();
                    let cost = nodes[a].slots.len() + nodes[b].slots.len() - 2 * shared;
                    let better = match best {
                        None => true,
                        Some((bc, ba, bb)) => cost < bc || (cost == bc && (a, b) < (ba, bb)),
                    };
                    if better {
                        best = Some((cost, a, b));
                    }
                }
            }
            let (_, a, b) = best.unwrap();
            let nb = nodes[b].func.clone();
            let sb = nodes[b].slots.clone();
            nodes[a].func = nodes[a].func.tensor_product(&nb);
            nodes[a].slots.extend(sb);
            eliminate_loops(&mut nodes[a]);
            live.retain(|&x| x != b);
        }

        let root = live[0];
        let node = &nodes[root];
        // all remaining slots are externals; permute into external order
        let d = node.slots.len();
        if d != self.external.len() {
            return Err(Error::Validation("internal contraction bookkeeping error".into()));
        }
        let mut new_to_old = vec![0usize; d];
        for (p, s) in node.slots.iter().enumerate() {
            match s {
                Slot::Ext(r) => new_to_old[*r] = p,
                Slot::Edge(_) => {
                    return Err(Error::Validation("dangling internal edge".into()));
                }
            }
        }
        Ok(node.func.permute_vars(&new_to_old))
    }

    /// Replaces the vertex subset `subset` by a single vertex carrying the
    /// function of the induced sub-gadget. Cut edges become the new vertex's
    /// first slots (in edge order); externals attached to the subset follow.
    /// The gadget function (and hence the value) is unchanged.
    pub fn contract_subgadget(&self, subset: &[usize]) -> Result<Gadget> {
        let mut in_sub = vec![false; self.vertices.len()];
        for &v in subset {
            if v >= self.vertices.len() {
                return Err(Error::Precondition(format!("vertex {v} out of range")));
            }
            in_sub[v] = true;
        }
        let count = in_sub.iter().filter(|&&b| b).count();
        if count == 0 {
            return Err(Error::Precondition("subset must be nonempty".into()));
        }

        let sub_vertices: Vec<usize> = (0..self.vertices.len()).filter(|&v| in_sub[v]).collect();
        let sub_index: Vec<Option<usize>> = {
            let mut m = vec![None; self.vertices.len()];
            for (i, &v) in sub_vertices.iter().enumerate() {
                m[v] = Some(i);
            }
            m
        };
        let keep_vertices: Vec<usize> = (0..self.vertices.len()).filter(|&v| !in_sub[v]).collect();
        let keep_index: Vec<Option<usize>> = {
            let mut m = vec![None; self.vertices.len()];
            for (i, &v) in keep_vertices.iter().enumerate() {
                m[v] = Some(i);
            }
            m
        };

        // build the induced sub-gadget; cut edges become its externals in
        // edge order, then the original externals that touch the subset
        let mut sub_edges = Vec::new();
        let mut cuts: Vec<Endpoint> = Vec::new(); // outside endpoints, aligned with sub external order
        let mut sub_external = Vec::new();
        for &((v1, s1), (v2, s2)) in &self.edges {
            match (in_sub[v1], in_sub[v2]) {
                (true, true) => sub_edges.push((
                    (sub_index[v1].unwrap(), s1),
                    (sub_index[v2].unwrap(), s2),
                )),
                (true, false) => {
                    sub_external.push((sub_index[v1].unwrap(), s1));
                    cuts.push((v2, s2));
                }
                (false, true) => {
                    sub_external.push((sub_index[v2].unwrap(), s2));
                    cuts.push((v1, s1));
                }
                (false, false) => {}
            }
        }
        let n_cuts = cuts.len();
        let mut sub_ext_ranks = Vec::new(); // original external rank carried by the new vertex
        for (r, &(v, s)) in self.external.iter().enumerate() {
            if in_sub[v] {
                sub_external.push((sub_index[v].unwrap(), s));
                sub_ext_ranks.push(r);
            }
        }
        let sub = Gadget::new(
            sub_vertices.iter().map(|&v| self.vertices[v].clone()).collect(),
            sub_edges,
            sub_external,
        )?;
        let f_sub = sub.gadget_function()?;

        // assemble the contracted gadget
        let new_vertex = keep_vertices.len();
        let mut vertices: Vec<Func> =
            keep_vertices.iter().map(|&v| self.vertices[v].clone()).collect();
        vertices.push(f_sub);
        let mut edges = Vec::new();
        for &((v1, s1), (v2, s2)) in &self.edges {
            if !in_sub[v1] && !in_sub[v2] {
                edges.push(((keep_index[v1].unwrap(), s1), (keep_index[v2].unwrap(), s2)));
            }
        }
        for (k, &(v, s)) in cuts.iter().enumerate() {
            edges.push(((keep_index[v].unwrap(), s), (new_vertex, k)));
        }
        let mut external = Vec::new();
        let mut sub_rank_pos = 0usize;
        for (r, &(v, s)) in self.external.iter().enumerate() {
            if in_sub[v] {
                debug_assert_eq!(sub_ext_ranks[sub_rank_pos], r);
                external.push((new_vertex, n_cuts + sub_rank_pos));
                sub_rank_pos += 1;
            } else {
                external.push((keep_index[v].unwrap(), s));
            }
        }
        Gadget::new(vertices, edges, external)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn tensor_product_examples() {
        let d0 = Func::delta0();
        let d1 = Func::delta1();
        let t = d0.tensor_product(&d1);
        assert_eq!(t.values(), &[s(0), s(1), s(0), s(0)]);

        let f = Func::disequality2();
        let one = Func::constant(Scalar::one());
        assert_eq!(f.tensor_product(&one), f);

        let t = f.tensor_product(&f);
        // support 0101, 0110, 1001, 1010
        let expected: Vec<usize> = vec![0b0101, 0b0110, 0b1001, 0b1010];
        assert_eq!(t.support(), expected);
    }

    #[test]
    fn reshape_equality_is_identity() {
        let eq = Func::equality(2);
        let m = eq.reshape(&[0]);
        assert_eq!(m, ScalarMatrix::identity(2));
    }

    #[test]
    fn reshape_regroupings_swap_named_entries() {
        // arity-4 function with the even-support shape
        // rows (x1,x2): [s 0 0 e; 0 a c 0; 0 d b 0; f 0 0 t]
        let (sv, e, a, c, d, b, f, t) = (s(2), s(3), s(5), s(7), s(11), s(13), s(17), s(19));
        let mut q = Func::zero(4);
        q.set(0b0000, sv.clone());
        q.set(0b0011, e.clone());
        q.set(0b0101, a.clone());
        q.set(0b0110, c.clone());
        q.set(0b1001, d.clone());
        q.set(0b1010, b.clone());
        q.set(0b1100, f.clone());
        q.set(0b1111, t.clone());

        let m12 = q.reshape(&[0, 1]);
        assert_eq!(m12.get(0, 0), &sv);
        assert_eq!(m12.get(0, 3), &e);
        assert_eq!(m12.get(1, 1), &a);
        assert_eq!(m12.get(1, 2), &c);
        assert_eq!(m12.get(2, 1), &d);
        assert_eq!(m12.get(2, 2), &b);
        assert_eq!(m12.get(3, 0), &f);
        assert_eq!(m12.get(3, 3), &t);

        // regrouping rows (x1,x3): corners s, a, b, t
        let m13 = q.reshape(&[0, 2]);
        assert_eq!(m13.get(0, 0), &sv);
        assert_eq!(m13.get(0, 3), &a);
        assert_eq!(m13.get(1, 1), &e);
        assert_eq!(m13.get(1, 2), &c);
        assert_eq!(m13.get(2, 1), &d);
        assert_eq!(m13.get(2, 2), &f);
        assert_eq!(m13.get(3, 0), &b);
        assert_eq!(m13.get(3, 3), &t);

        // regrouping rows (x1,x4): corners s, c, d, t
        let m14 = q.reshape(&[0, 3]);
        assert_eq!(m14.get(0, 0), &sv);
        assert_eq!(m14.get(0, 3), &c);
        assert_eq!(m14.get(1, 1), &e);
        assert_eq!(m14.get(1, 2), &a);
        assert_eq!(m14.get(2, 1), &b);
        assert_eq!(m14.get(2, 2), &f);
        assert_eq!(m14.get(3, 0), &d);
        assert_eq!(m14.get(3, 3), &t);
    }

    #[test]
    fn pin_examples() {
        let neq = Func::disequality2();
        assert_eq!(neq.pin(&[(0, 0)]), Func::delta1());

        let eq4 = Func::equality(4);
        let p = eq4.pin(&[(0, 1)]);
        // value 1 only at 111
        assert_eq!(p.support(), vec![0b111]);

        // the genuine arity-4 shape with a = 1, b = i and zero corners
        let mut q = Func::zero(4);
        q.set(0b0101, Scalar::one());
        q.set(0b0110, Scalar::i());
        q.set(0b1001, Scalar::i());
        q.set(0b1010, Scalar::one());
        assert!(q.pin(&[(0, 0), (1, 0)]).is_zero());
    }

    #[test]
    fn pin_commutes_on_disjoint_assignments() {
        let mut f = Func::zero(4);
        for (i, v) in [3, 0, 1, 7, 2, 9, 4, 5, 0, 1, 2, 3, 8, 6, 5, 4].iter().enumerate() {
            f.set(i, s(*v));
        }
        let a = f.pin(&[(0, 1)]).pin(&[(1, 0)]); // var 2 of original is var 1 after pinning var 0
        let b = f.pin(&[(0, 1), (2, 0)]);
        assert_eq!(a, b);
    }

    #[test]
    fn self_loop_examples() {
        let eq4 = Func::equality(4);
        let eq2 = Func::equality(2);
        assert_eq!(eq4.self_loop(0, 1, &eq2), eq2);

        // disequality link on a disequality pair counts the two matchings
        let neq = Func::disequality2();
        let c = neq.self_loop(0, 1, &neq);
        assert_eq!(c, Func::constant(s(2)));

        // disequality self-loop on the even arity-4 shape picks out a+b, c+d
        let mut q = Func::zero(4);
        let (e, a, b, cc, d, g) = (s(3), s(5), s(13), s(7), s(11), s(23));
        q.set(0b0001, e.clone());
        q.set(0b0100, a.clone());
        q.set(0b1000, b.clone());
        q.set(0b0111, cc.clone());
        q.set(0b1011, d.clone());
        q.set(0b1110, g.clone());
        let r = q.self_loop(0, 1, &neq);
        // r(x3,x4) = q(01 x3 x4) + q(10 x3 x4)
        assert_eq!(r.get(0b00), &a.add(&b));
        assert_eq!(r.get(0b11), &cc.add(&d));
    }

    #[test]
    fn holant_simple_networks() {
        // single equality vertex with a self-loop: value 2
        let g = Gadget::new(vec![Func::equality(2)], vec![((0, 0), (0, 1))], vec![]).unwrap();
        assert_eq!(g.holant_value_literal().unwrap(), s(2));
        assert_eq!(g.holant_value().unwrap(), s(2));

        // triangle of disequalities: value 0
        let neq = Func::disequality2();
        let g = Gadget::new(
            vec![neq.clone(), neq.clone(), neq.clone()],
            vec![((0, 1), (1, 0)), ((1, 1), (2, 0)), ((2, 1), (0, 0))],
            vec![],
        )
        .unwrap();
        assert_eq!(g.holant_value_literal().unwrap(), s(0));
        assert_eq!(g.holant_value().unwrap(), s(0));

        // two disequality vertices joined by parallel edges: value 2
        let g = Gadget::new(
            vec![neq.clone(), neq],
            vec![((0, 0), (1, 0)), ((0, 1), (1, 1))],
            vec![],
        )
        .unwrap();
        assert_eq!(g.holant_value_literal().unwrap(), s(2));
        assert_eq!(g.holant_value().unwrap(), s(2));
    }

    #[test]
    fn gadget_function_examples() {
        let neq = Func::disequality2();
        // chain of two disequalities = equality
        let g = Gadget::new(
            vec![neq.clone(), neq.clone()],
            vec![((0, 1), (1, 0))],
            vec![(0, 0), (1, 1)],
        )
        .unwrap();
        assert_eq!(g.gadget_function().unwrap(), Func::equality(2));

        // single equality vertex, both slots external
        let g = Gadget::new(vec![Func::equality(2)], vec![], vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.gadget_function().unwrap(), Func::equality(2));
    }

    #[test]
    fn gadget_chain_is_matrix_power() {
        // chain of k copies of a binary function composes as matrix product
        let b = Func::new(2, vec![s(1), s(1), s(0), s(1)]);
        let k = 4;
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for i in 0..k {
            vertices.push(b.clone());
            if i > 0 {
                edges.push(((i - 1, 1), (i, 0)));
            }
        }
        let g = Gadget::new(vertices, edges, vec![(0, 0), (k - 1, 1)]).unwrap();
        let chain = g.gadget_function().unwrap();
        let m = b.reshape(&[0]).pow(k as u64);
        assert_eq!(chain.reshape(&[0]), m);
        assert_eq!(m.get(0, 1), &s(k as i64));
    }

    #[test]
    fn contract_subgadget_preserves_value() {
        let neq = Func::disequality2();
        let g = Gadget::new(
            vec![neq.clone(), neq.clone(), neq.clone()],
            vec![((0, 1), (1, 0)), ((1, 1), (2, 0)), ((2, 1), (0, 0))],
            vec![],
        )
        .unwrap();
        let c = g.contract_subgadget(&[1]).unwrap();
        assert_eq!(c.vertices.len(), 3); // two kept + merged vertex
        assert_eq!(c.holant_value().unwrap(), g.holant_value().unwrap());

        let c2 = g.contract_subgadget(&[0, 2]).unwrap();
        assert_eq!(c2.holant_value().unwrap(), s(0));
    }

    #[test]
    fn contract_subgadget_keeps_external_order() {
        let neq = Func::disequality2();
        let eq = Func::equality(2);
        let g = Gadget::new(
            vec![neq.clone(), eq.clone(), neq.clone()],
            vec![((0, 1), (1, 0)), ((1, 1), (2, 0))],
            vec![(0, 0), (2, 1)],
        )
        .unwrap();
        let f0 = g.gadget_function().unwrap();
        for subset in [vec![0usize], vec![1], vec![2], vec![0, 1], vec![1, 2]] {
            let c = g.contract_subgadget(&subset).unwrap();
            assert_eq!(c.gadget_function().unwrap(), f0, "subset {subset:?}");
        }
    }

    #[test]
    fn disconnected_components_multiply() {
        let eq = Func::equality(2);
        let single = |_: ()| {
            Gadget::new(vec![eq.clone()], vec![((0, 0), (0, 1))], vec![]).unwrap()
        };
        let g1 = single(());
        // two disjoint copies in one gadget
        let g2 = Gadget::new(
            vec![eq.clone(), eq.clone()],
            vec![((0, 0), (0, 1)), ((1, 0), (1, 1))],
            vec![],
        )
        .unwrap();
        assert_eq!(g1.holant_value().unwrap(), s(2));
        assert_eq!(g2.holant_value().unwrap(), s(4));
        assert_eq!(g2.holant_value_literal().unwrap(), s(4));
    }

    #[test]
    fn validation_rejects_bad_gadgets() {
        let eq = Func::equality(2);
        // slot used twice
        assert!(Gadget::new(
            vec![eq.clone()],
            vec![((0, 0), (0, 0))],
            vec![]
        )
        .is_err());
        // slot unused
        assert!(Gadget::new(vec![eq.clone()], vec![], vec![(0, 0)]).is_err());
        // out of range
        assert!(Gadget::new(vec![eq], vec![], vec![(0, 0), (0, 5)]).is_err());
    }

    #[test]
    fn planner_matches_literal_sum_up_to_twelve_edges() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        for _ in 0..30 {
            let g = crate::netgen::random_closed_network(&mut rng, 6, 12);
            assert!(g.edges.len() <= 12);
            assert_eq!(
                g.holant_value().unwrap(),
                g.holant_value_literal().unwrap(),
                "greedy contraction must agree with the literal sum"
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn permute_round_trip(d in 1usize..5, seed in any::<u64>()) {
            use rand::{SeedableRng, seq::SliceRandom};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..d).collect();
            perm.shuffle(&mut rng);
            let mut inv = vec![0usize; d];
            for (p, &o) in perm.iter().enumerate() { inv[o] = p; }
            let f = Func::new(d, (0..1usize << d).map(|x| s(x as i64)).collect());
            prop_assert_eq!(f.permute_vars(&perm).permute_vars(&inv), f);
        }
    }
}
