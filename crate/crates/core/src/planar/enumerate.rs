//! Depth-first generation of rooted planar fat graphs.
//!
//! A boundary is the ordered list of unmatched half-edges around the
//! face that is still open. Its first half-edge either pairs with another
//! half-edge of the same boundary, splitting it in two, or attaches to a
//! fresh vertex whose remaining three half-edges replace it. Every
//! labeled Wick pairing of a connected diagram is reached exactly once per
//! ordering of its vertices by first appearance, which absorbs the
//! `1/(k₁!k₂!)`. Only two of the four attaching half-edges are tried: a
//! half-turn maps each vertex to itself, so the other two give identical
//! weights and are accounted for by a factor 2.
//!
//! The depth-first search only proposes planar gluings, but every leaf is
//! still checked: a leaf contributes only if its Euler characteristic
//! `V − E + F` equals 2, i.e. its power of `N` is the leading one.

use super::word::VertexType;
use rayon::prelude::*;

/// Which diagrams a count keeps.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Filter {
    All,
    /// Connected once the observable vertex is removed (each leg counts
    /// as its own node).
    LegConnected,
    /// Two-leg diagrams with no internal edge separating the two legs.
    OnePI,
}

/// What sits at the root of the enumeration.
#[derive(Clone, Debug)]
pub(crate) struct Root {
    /// Color variable of each root half-edge.
    pub leg_vars: Vec<usize>,
    /// Variables `0..fixed` are distinct external colors.
    pub fixed: usize,
    /// Variables used by the root; vertex variables follow.
    pub vars: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Enumerator {
    pub root: Root,
    /// Maximum number of non-root vertices.
    pub max_vertices: usize,
    pub allowed: Vec<VertexType>,
    pub filter: Filter,
}

/// Leaf counts indexed by `(k₁, k₂, color loops)` of non-root vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Tally {
    pub dim: usize,
    pub colors: usize,
    pub counts: Vec<u64>,
    /// Leaves rejected by the Euler characteristic check.
    pub nonplanar: u64,
}

impl Tally {
    fn new(dim: usize, colors: usize) -> Self {
        Tally { dim, colors, counts: vec![0; dim * dim * colors], nonplanar: 0 }
    }

    pub fn get(&self, k1: usize, k2: usize, c: usize) -> u64 {
        self.counts[(k1 * self.dim + k2) * self.colors + c]
    }

    fn bump(&mut self, k1: usize, k2: usize, c: usize) {
        self.counts[(k1 * self.dim + k2) * self.colors + c] += 1;
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.nonplanar += other.nonplanar;
        self
    }
}

#[derive(Clone)]
struct State {
    partner: Vec<u32>,
    types: Vec<VertexType>,
    stack: Vec<Vec<u32>>,
}

const UNPAIRED: u32 = u32::MAX;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

impl Enumerator {
    fn legs(&self) -> usize {
        self.root.leg_vars.len()
    }

    fn initial(&self) -> State {
        let legs = self.legs();
        let total = legs + 4 * self.max_vertices;
        let mut stack = Vec::new();
        if legs > 0 {
            stack.push((0..legs as u32).collect());
        }
        State { partner: vec![UNPAIRED; total], types: Vec::new(), stack }
    }

    pub fn run(&self) -> Tally {
        let colors = self.root.vars + 2 * self.max_vertices + 1;
        let dim = self.max_vertices + 1;
        let fresh = || Tally::new(dim, colors);
        let mut tasks = vec![self.initial()];
        let mut tally = fresh();
        // Split the tree a few levels deep for parallelism; the exact
        // integer reduction makes the result independent of scheduling.
        for _ in 0..3 {
            let mut next = Vec::new();
            for st in tasks {
                self.children(st, &mut next, &mut tally);
            }
            tasks = next;
        }
        tasks
            .into_par_iter()
            .map(|mut st| {
                let mut t = fresh();
                self.dfs(&mut st, &mut t);
                t
            })
            .reduce(fresh, Tally::merge)
            .merge(tally)
    }

    /// Expand one decision, cloning states; leaves are tallied directly.
    fn children(&self, mut st: State, out: &mut Vec<State>, tally: &mut Tally) {
        let Some(b) = st.stack.pop() else {
            self.leaf(&st, tally);
            return;
        };
        let r = b[0] as usize;
        for j in (1..b.len()).step_by(2) {
            let mut c = st.clone();
            let s = b[j] as usize;
            c.partner[r] = s as u32;
            c.partner[s] = r as u32;
            push_split(&mut c.stack, &b, j);
            out.push(c);
        }
        if st.types.len() < self.max_vertices {
            for &ty in &self.allowed {
                for slot in 0..2 {
                    let mut c = st.clone();
                    self.attach(&mut c, &b, ty, slot);
                    out.push(c);
                }
            }
        }
    }

    fn attach(&self, st: &mut State, b: &[u32], ty: VertexType, slot: usize) {
        let r = b[0] as usize;
        let base = self.legs() + 4 * st.types.len();
        st.types.push(ty);
        let h = base + slot;
        st.partner[r] = h as u32;
        st.partner[h] = r as u32;
        let mut nb = Vec::with_capacity(b.len() + 2);
        for d in 1..4 {
            nb.push((base + (slot + d) % 4) as u32);
        }
        nb.extend_from_slice(&b[1..]);
        st.stack.push(nb);
    }

    fn dfs(&self, st: &mut State, tally: &mut Tally) {
        let Some(b) = st.stack.pop() else {
            self.leaf(st, tally);
            return;
        };
        let r = b[0] as usize;
        for j in (1..b.len()).step_by(2) {
            let s = b[j] as usize;
            st.partner[r] = s as u32;
            st.partner[s] = r as u32;
            let depth = st.stack.len();
            push_split(&mut st.stack, &b, j);
            self.dfs(st, tally);
            st.stack.truncate(depth);
            st.partner[s] = UNPAIRED;
        }
        if st.types.len() < self.max_vertices {
            for &ty in &self.allowed {
                for slot in 0..2 {
                    let depth = st.stack.len();
                    self.attach(st, &b, ty, slot);
                    self.dfs(st, tally);
                    st.stack.truncate(depth);
                    let base = self.legs() + 4 * (st.types.len() - 1);
                    st.partner[base + slot] = UNPAIRED;
                    st.types.pop();
                }
            }
        }
        st.partner[r] = UNPAIRED;
        st.stack.push(b);
    }

    fn owner(&self, h: usize) -> usize {
        let legs = self.legs();
        if h < legs {
            0
        } else {
            1 + (h - legs) / 4
        }
    }

    fn var(&self, st: &State, h: usize) -> usize {
        let legs = self.legs();
        if h < legs {
            self.root.leg_vars[h]
        } else {
            let v = (h - legs) / 4;
            self.root.vars + 2 * v + st.types[v].pattern()[(h - legs) % 4]
        }
    }

    /// Next half-edge counterclockwise around the same vertex.
    fn rotate(&self, h: usize) -> usize {
        let legs = self.legs();
        if h < legs {
            (h + 1) % legs
        } else {
            let base = h - (h - legs) % 4;
            base + ((h - legs) % 4 + 1) % 4
        }
    }

    fn leaf(&self, st: &State, tally: &mut Tally) {
        let k = st.types.len();
        let total = self.legs() + 4 * k;
        let partner = &st.partner[..total];

        // Euler characteristic: faces are the cycles of rotate ∘ partner.
        let mut seen = vec![false; total];
        let mut faces = 0usize;
        for h0 in 0..total {
            if seen[h0] {
                continue;
            }
            faces += 1;
            let mut h = h0;
            while !seen[h] {
                seen[h] = true;
                h = self.rotate(partner[h] as usize);
            }
        }
        let vertices = k + 1;
        let edges = total / 2;
        if vertices + faces != edges + 2 {
            tally.nonplanar += 1;
            return;
        }

        if !self.passes_filter(st, k) {
            return;
        }

        // Color loops: components of the color variables under propagator
        // deltas; a component holding two external colors vanishes.
        let nvars = self.root.vars + 2 * k;
        let mut uf = UnionFind::new(nvars);
        for h in 0..total {
            let p = partner[h] as usize;
            if h < p {
                uf.union(self.var(st, h), self.var(st, p));
            }
        }
        let mut has_fixed = vec![false; nvars];
        for f in 0..self.root.fixed {
            let r = uf.find(f);
            if has_fixed[r] {
                return;
            }
            has_fixed[r] = true;
        }
        let mut loops = 0;
        for v in 0..nvars {
            if uf.find(v) == v && !has_fixed[v] {
                loops += 1;
            }
        }
        let k1 = st.types.iter().filter(|&&t| t == VertexType::Crossing).count();
        tally.bump(k1, k - k1, loops);
    }

    fn passes_filter(&self, st: &State, k: usize) -> bool {
        let legs = self.legs();
        let total = legs + 4 * k;
        match self.filter {
            Filter::All => true,
            Filter::LegConnected => {
                // Nodes: each root leg separately, then the vertices.
                let node = |h: usize| if h < legs { h } else { legs + (h - legs) / 4 };
                let mut uf = UnionFind::new(legs + k);
                for h in 0..total {
                    uf.union(node(h), node(st.partner[h] as usize));
                }
                let r = uf.find(0);
                (1..legs + k).all(|x| uf.find(x) == r)
            }
            Filter::OnePI => {
                if legs != 2 || k == 0 {
                    return false;
                }
                let u = self.owner(st.partner[0] as usize);
                let w = self.owner(st.partner[1] as usize);
                let internal: Vec<(usize, usize)> = (legs..total)
                    .filter_map(|h| {
                        let p = st.partner[h] as usize;
                        (p >= legs && h < p).then(|| (self.owner(h), self.owner(p)))
                    })
                    .collect();
                (0..internal.len()).all(|cut| {
                    let mut uf = UnionFind::new(k + 1);
                    for (i, &(a, b)) in internal.iter().enumerate() {
                        if i != cut {
                            uf.union(a, b);
                        }
                    }
                    uf.find(u) == uf.find(w)
                })
            }
        }
    }
}

/// Replace boundary `b` by the two arcs left after pairing `b[0]` with `b[j]`.
fn push_split(stack: &mut Vec<Vec<u32>>, b: &[u32], j: usize) {
    if j + 1 < b.len() {
        stack.push(b[j + 1..].to_vec());
    }
    if j > 1 {
        stack.push(b[1..j].to_vec());
    }
}
