//! Fixed-shape rule sides with one phase parameter, and embedding search for them.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{Diagram, Endpoint, VertexId, VertexKind, Wire};
use crate::phase::Phase;

/// `a·α + c`, with `a ∈ {-1, 0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct PExpr {
    pub a: i64,
    pub c: Phase,
}

impl PExpr {
    pub const fn konst(c: Phase) -> PExpr {
        PExpr { a: 0, c }
    }

    pub const ZERO: PExpr = PExpr::konst(Phase::ZERO);

    pub fn alpha_plus(c: Phase) -> PExpr {
        PExpr { a: 1, c }
    }

    pub fn minus_alpha() -> PExpr {
        PExpr { a: -1, c: Phase::ZERO }
    }

    pub fn eval(self, alpha: Phase) -> Phase {
        alpha * self.a + self.c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PKind {
    Z(PExpr),
    X(PExpr),
    H,
}

impl PKind {
    fn eval(self, alpha: Phase) -> VertexKind {
        match self {
            PKind::Z(e) => VertexKind::Z(e.eval(alpha)),
            PKind::X(e) => VertexKind::X(e.eval(alpha)),
            PKind::H => VertexKind::H,
        }
    }

    fn swapped(self) -> PKind {
        match self {
            PKind::Z(e) => PKind::X(e),
            PKind::X(e) => PKind::Z(e),
            PKind::H => PKind::H,
        }
    }

    fn uses_alpha(self) -> bool {
        matches!(self, PKind::Z(e) | PKind::X(e) if e.a != 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum PEnd {
    V(usize),
    In(usize),
    Out(usize),
}

/// A diagram template. Vertices are numbered in insertion order.
#[derive(Clone, Debug)]
pub(crate) struct Pat {
    pub ni: usize,
    pub no: usize,
    pub verts: Vec<PKind>,
    pub wires: Vec<(PEnd, PEnd)>,
}

impl Pat {
    pub fn new(ni: usize, no: usize) -> Pat {
        Pat { ni, no, verts: Vec::new(), wires: Vec::new() }
    }

    pub fn v(&mut self, k: PKind) -> PEnd {
        self.verts.push(k);
        PEnd::V(self.verts.len() - 1)
    }

    pub fn w(&mut self, a: PEnd, b: PEnd) {
        self.wires.push((a, b));
    }

    pub fn ws(&mut self, a: PEnd, b: PEnd, n: usize) {
        for _ in 0..n {
            self.w(a, b);
        }
    }

    /// Appends `Z(0)–X(0)` joined by `wires` wires.
    pub fn zx_pair(&mut self, wires: usize) {
        let z = self.v(PKind::Z(PExpr::ZERO));
        let x = self.v(PKind::X(PExpr::ZERO));
        self.ws(z, x, wires);
    }

    /// Appends `√2^e` as copies of the one-wire or three-wire pair.
    pub fn sqrt2_pow(&mut self, e: i32) {
        for _ in 0..e.unsigned_abs() {
            self.zx_pair(if e > 0 { 1 } else { 3 });
        }
    }

    pub fn ports(&self) -> usize {
        self.ni + self.no
    }

    /// Position of a port in the leg list: inputs first, then outputs.
    fn port_slot(&self, e: PEnd) -> Option<usize> {
        match e {
            PEnd::In(i) => Some(i),
            PEnd::Out(j) => Some(self.ni + j),
            PEnd::V(_) => None,
        }
    }

    pub fn uses_alpha(&self) -> bool {
        self.verts.iter().any(|k| k.uses_alpha())
    }

    pub fn colour_swapped(&self) -> Pat {
        Pat { verts: self.verts.iter().map(|k| k.swapped()).collect(), ..self.clone() }
    }

    pub fn flipped(&self) -> Pat {
        let f = |e: PEnd| match e {
            PEnd::In(i) => PEnd::Out(i),
            PEnd::Out(i) => PEnd::In(i),
            e => e,
        };
        Pat {
            ni: self.no,
            no: self.ni,
            verts: self.verts.clone(),
            wires: self.wires.iter().map(|&(a, b)| (f(a), f(b))).collect(),
        }
    }

    pub fn instantiate(&self, alpha: Phase) -> Diagram {
        let mut d = Diagram::with_boundary(self.ni, self.no);
        let ids: Vec<VertexId> = self.verts.iter().map(|k| d.add_vertex(k.eval(alpha))).collect();
        let e = |p: PEnd| match p {
            PEnd::V(i) => Endpoint::Vertex(ids[i]),
            PEnd::In(i) => Endpoint::Input(i),
            PEnd::Out(j) => Endpoint::Output(j),
        };
        for &(a, b) in &self.wires {
            d.add_wire(e(a), e(b));
        }
        d
    }
}

/// An occurrence of a pattern inside a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Embedding {
    /// Image of each pattern vertex.
    pub image: Vec<VertexId>,
    /// Diagram wires standing in for vertex-free pattern wires, one per such wire.
    pub cut: Vec<Wire>,
    /// For each pattern port (inputs, then outputs), the diagram endpoint it is glued to.
    pub legs: Vec<Endpoint>,
    pub alpha: Option<Phase>,
}

fn bind(kind: PKind, actual: VertexKind, alpha: Option<Phase>) -> Option<Option<Phase>> {
    let (e, p) = match (kind, actual) {
        (PKind::Z(e), VertexKind::Z(p)) | (PKind::X(e), VertexKind::X(p)) => (e, p),
        (PKind::H, VertexKind::H) => return Some(alpha),
        _ => return None,
    };
    match (e.a, alpha) {
        (0, _) => (p == e.c).then_some(alpha),
        (_, Some(a)) => (p == e.eval(a)).then_some(alpha),
        (k, None) => Some(Some((p - e.c) * k)),
    }
}

struct Shape {
    degree: Vec<usize>,
    loops: Vec<usize>,
    mult: Vec<Vec<usize>>,
    /// Ports attached to each vertex, in slot order.
    ports_at: Vec<Vec<usize>>,
    /// Vertex-free pattern wires as slot pairs.
    bare: Vec<(usize, usize)>,
}

fn shape(p: &Pat) -> Shape {
    let n = p.verts.len();
    let mut s = Shape {
        degree: vec![0; n],
        loops: vec![0; n],
        mult: vec![vec![0; n]; n],
        ports_at: vec![Vec::new(); n],
        bare: Vec::new(),
    };
    for &(a, b) in &p.wires {
        match (a, b) {
            (PEnd::V(i), PEnd::V(j)) if i == j => {
                s.loops[i] += 1;
                s.degree[i] += 2;
            }
            (PEnd::V(i), PEnd::V(j)) => {
                s.mult[i][j] += 1;
                s.mult[j][i] += 1;
                s.degree[i] += 1;
                s.degree[j] += 1;
            }
            (PEnd::V(i), q) | (q, PEnd::V(i)) => {
                s.degree[i] += 1;
                s.ports_at[i].push(p.port_slot(q).unwrap());
            }
            (q, r) => s.bare.push((p.port_slot(q).unwrap(), p.port_slot(r).unwrap())),
        }
    }
    for l in &mut s.ports_at {
        l.sort();
    }
    s
}

/// Vertex visiting order: each vertex after one of its neighbours where possible.
fn visit_order(s: &Shape) -> Vec<usize> {
    let n = s.degree.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for j in 0..n {
                if s.mult[i][j] > 0 && !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    order
}

/// All embeddings of `p` into `d`, deduplicated by (image set, cut wires), sorted.
pub(crate) fn find_embeddings(d: &Diagram, p: &Pat, alpha: Option<Phase>) -> Vec<Embedding> {
    let s = shape(p);
    let order = visit_order(&s);
    let n = p.verts.len();
    let mut found: BTreeMap<(Vec<VertexId>, Vec<Wire>), Embedding> = BTreeMap::new();
    let mut assign: Vec<Option<VertexId>> = vec![None; n];
    let all = d.vertex_ids();
    search(d, p, &s, &order, 0, &mut assign, alpha, &all, &mut |assign, alpha| {
        let image: Vec<VertexId> = assign.iter().map(|v| v.unwrap()).collect();
        let img_set: BTreeSet<VertexId> = image.iter().copied().collect();
        let mut legs = vec![Endpoint::Input(usize::MAX); p.ports()];
        for (i, &v) in image.iter().enumerate() {
            let e = Endpoint::Vertex(v);
            let mut ext: Vec<Endpoint> = d
                .wires()
                .iter()
                .filter(|w| w.touches(e) && !w.is_self_loop())
                .map(|w| w.other(e))
                .filter(|o| o.vertex().map_or(true, |x| !img_set.contains(&x)))
                .collect();
            ext.sort();
            debug_assert_eq!(ext.len(), s.ports_at[i].len());
            for (&slot, far) in s.ports_at[i].iter().zip(ext) {
                legs[slot] = far;
            }
        }
        // choose diagram wires for the vertex-free pattern wires
        let free: Vec<Wire> = d
            .wires()
            .iter()
            .filter(|w| [w.0, w.1].iter().all(|e| e.vertex().map_or(true, |x| !img_set.contains(&x))))
            .copied()
            .collect();
        let mut choose = |cut: Vec<Wire>| {
            let mut legs = legs.clone();
            for (&(a, b), w) in s.bare.iter().zip(&cut) {
                legs[a] = w.0;
                legs[b] = w.1;
            }
            let mut key_img = image.clone();
            key_img.sort();
            let mut key_cut = cut.clone();
            key_cut.sort();
            found.entry((key_img, key_cut)).or_insert(Embedding { image: image.clone(), cut, legs, alpha });
        };
        match s.bare.len() {
            0 => choose(Vec::new()),
            1 => {
                let mut last = None;
                for &w in &free {
                    if last != Some(w) {
                        choose(vec![w]);
                        last = Some(w);
                    }
                }
            }
            _ => {
                for combo in distinct_tuples(&free, s.bare.len()) {
                    choose(combo);
                }
            }
        }
    });
    found.into_values().collect()
}

/// Ordered tuples of distinct positions in `ws`, deduplicated by wire values.
fn distinct_tuples(ws: &[Wire], k: usize) -> Vec<Vec<Wire>> {
    fn go(ws: &[Wire], k: usize, used: &mut Vec<bool>, cur: &mut Vec<Wire>, out: &mut BTreeSet<Vec<Wire>>) {
        if cur.len() == k {
            out.insert(cur.clone());
            return;
        }
        for i in 0..ws.len() {
            if !used[i] {
                used[i] = true;
                cur.push(ws[i]);
                go(ws, k, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    go(ws, k, &mut vec![false; ws.len()], &mut Vec::new(), &mut out);
    out.into_iter().collect()
}

#[allow(clippy::too_many_arguments)]
fn search(
    d: &Diagram,
    p: &Pat,
    s: &Shape,
    order: &[usize],
    depth: usize,
    assign: &mut Vec<Option<VertexId>>,
    alpha: Option<Phase>,
    all: &[VertexId],
    emit: &mut dyn FnMut(&[Option<VertexId>], Option<Phase>),
) {
    let Some(&i) = order.get(depth) else {
        emit(assign, alpha);
        return;
    };
    let anchor = (0..p.verts.len()).find(|&j| s.mult[i][j] > 0 && assign[j].is_some());
    let cands: Vec<VertexId> = match anchor {
        Some(j) => d.neighbours(assign[j].unwrap()),
        None => all.to_vec(),
    };
    for v in cands {
        if assign.contains(&Some(v)) {
            continue;
        }
        let Some(kind) = d.kind(v) else { continue };
        let Some(a2) = bind(p.verts[i], kind, alpha) else { continue };
        if d.degree(v) != s.degree[i] || d.self_loops(v) != s.loops[i] {
            continue;
        }
        let ok = (0..p.verts.len()).all(|j| match assign[j] {
            Some(u) if j != i => d.multiplicity(v, u) == s.mult[i][j],
            _ => true,
        });
        if !ok {
            continue;
        }
        assign[i] = Some(v);
        search(d, p, s, order, depth + 1, assign, a2, all, emit);
        assign[i] = None;
    }
}

/// Replaces the embedded occurrence with `rhs` (same boundary), returning the new diagram.
pub(crate) fn replace(d: &Diagram, emb: &Embedding, rhs: &Diagram) -> Diagram {
    let mut out = d.clone();
    for &v in &emb.image {
        out.remove_vertex(v);
    }
    for w in &emb.cut {
        out.remove_wire(w.0, w.1);
    }
    let ni = rhs.n_inputs();
    let mut ids = BTreeMap::new();
    for (v, k) in rhs.vertices() {
        ids.insert(v, out.add_vertex(k));
    }
    let map = |e: Endpoint| match e {
        Endpoint::Vertex(v) => Endpoint::Vertex(ids[&v]),
        Endpoint::Input(i) => emb.legs[i],
        Endpoint::Output(j) => emb.legs[ni + j],
    };
    for w in rhs.wires() {
        out.add_wire(map(w.0), map(w.1));
    }
    out.add_loops(rhs.loops());
    out
}
