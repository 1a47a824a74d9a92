#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zx_core::diagram::make_generator;
use zx_core::rules::{find_matches, rule_catalog, Anchor, Direction, Rule, RuleInstance};
use zx_core::semantics::{evaluate, ExactMatrix, Matrix};
use zx_core::twins::MergeCase;
use zx_core::{Colour, Diagram, Endpoint, Generator, Phase, VertexId, VertexKind};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A multiple of π/4, biased towards 0 and π so that rule patterns actually occur.
pub fn phase(r: &mut impl Rng) -> Phase {
    match r.gen_range(0..4) {
        0 => Phase::ZERO,
        1 => Phase::PI,
        _ => Phase::new(r.gen_range(0..8), 4),
    }
}

pub fn spider(r: &mut impl Rng) -> VertexKind {
    let c = if r.gen_bool(0.5) { Colour::Z } else { Colour::X };
    VertexKind::spider(c, phase(r))
}

/// A valid diagram with at most `max_vertices` vertices (spiders, plus Hadamards
/// subdividing wires) and at most two inputs and two outputs.
pub fn random_diagram(r: &mut impl Rng, max_vertices: usize) -> Diagram {
    let (ni, no) = (r.gen_range(0..=2), r.gen_range(0..=2));
    let mut d = Diagram::with_boundary(ni, no);
    let ns = r.gen_range(1..=max_vertices.max(1));
    let vs: Vec<VertexId> = (0..ns).map(|_| d.add_vertex(spider(r))).collect();
    let mut budget = max_vertices - ns;
    let mut ports: Vec<Endpoint> = (0..ni).map(Endpoint::Input).chain((0..no).map(Endpoint::Output)).collect();
    ports.shuffle(r);
    while let Some(p) = ports.pop() {
        if !ports.is_empty() && r.gen_bool(0.1) {
            let q = ports.pop().unwrap();
            d.add_wire(p, q);
        } else {
            d.add_wire(p, *vs.choose(r).unwrap());
        }
    }
    for _ in 0..r.gen_range(0..=ns + 2) {
        let (a, b) = (*vs.choose(r).unwrap(), *vs.choose(r).unwrap());
        if a == b && !r.gen_bool(0.2) {
            continue;
        }
        if a != b && budget > 0 && r.gen_bool(0.25) {
            let h = d.add_vertex(VertexKind::H);
            d.add_wire(a, h);
            d.add_wire(h, b);
            budget -= 1;
        } else {
            d.add_wire(a, b);
        }
    }
    d.validate().expect("generator builds valid diagrams");
    d
}

/// One random generator with at most two legs on each side and `n` inputs if given.
pub fn random_generator(r: &mut impl Rng, inputs: Option<usize>) -> (Generator, usize, usize) {
    loop {
        let pick = match r.gen_range(0..8) {
            0 | 1 => (Generator::Z(phase(r)), r.gen_range(0..=2), r.gen_range(0..=2)),
            2 | 3 => (Generator::X(phase(r)), r.gen_range(0..=2), r.gen_range(0..=2)),
            4 => (Generator::H, 1, 1),
            5 => (Generator::Identity, 1, 1),
            6 => (Generator::Swap, 2, 2),
            _ => [(Generator::Cup, 2, 0), (Generator::Cap, 0, 2), (Generator::Empty, 0, 0)][r.gen_range(0..3)],
        };
        if inputs.map_or(true, |n| pick.1 == n) {
            return pick;
        }
    }
}

/// A word: layers of tensored generators, composed in sequence.
#[derive(Clone, Debug)]
pub struct Word {
    pub width_in: usize,
    pub layers: Vec<Vec<(Generator, usize, usize)>>,
}

impl Word {
    pub fn random(r: &mut impl Rng, max_layers: usize, max_width: usize) -> Word {
        let width_in = r.gen_range(0..=max_width.min(3));
        let mut width = width_in;
        let mut layers = Vec::new();
        for _ in 0..r.gen_range(1..=max_layers) {
            let mut layer = Vec::new();
            let mut left = width;
            let mut out = 0;
            while left > 0 {
                let n = r.gen_range(1..=left.min(2));
                let g = random_generator(r, Some(n));
                left -= n;
                out += g.2;
                layer.push(g);
            }
            if out < max_width && r.gen_bool(0.3) {
                let g = random_generator(r, Some(0));
                out += g.2;
                layer.push(g);
            }
            if out > max_width {
                break;
            }
            layer.shuffle(r);
            width = out;
            layers.push(layer);
        }
        if layers.is_empty() {
            layers.push((0..width_in).map(|_| (Generator::Identity, 1, 1)).collect());
        }
        Word { width_in, layers }
    }

    pub fn diagram(&self) -> Diagram {
        let mut d = identity(self.width_in);
        for layer in &self.layers {
            let parts: Vec<Diagram> =
                layer.iter().map(|&(g, n, m)| make_generator(g, n, m).unwrap()).collect();
            d = d.then(&zx_core::diagram::tensor_all(&parts)).unwrap();
        }
        d
    }

    /// The same word evaluated generator by generator and assembled with kron and matmul.
    pub fn matrix(&self) -> ExactMatrix {
        let mut m: ExactMatrix = Matrix::identity(1 << self.width_in);
        for layer in &self.layers {
            let mut lm: ExactMatrix = Matrix::identity(1);
            for &(g, n, k) in layer {
                lm = lm.kron(&evaluate(&make_generator(g, n, k).unwrap()).unwrap());
            }
            m = lm.matmul(&m).unwrap();
        }
        m
    }
}

pub fn identity(n: usize) -> Diagram {
    let mut d = Diagram::with_boundary(n, n);
    for i in 0..n {
        d.add_wire(Endpoint::Input(i), Endpoint::Output(i));
    }
    d
}

/// Rebuilds `d` with vertex ids sent through a random injective map and wires shuffled.
pub fn relabel(r: &mut impl Rng, d: &Diagram) -> Diagram {
    let mut ids: Vec<u32> = (0..(d.num_vertices() as u32 * 3 + 5)).collect();
    ids.shuffle(r);
    let map: std::collections::BTreeMap<VertexId, VertexId> =
        d.vertex_ids().into_iter().zip(ids).map(|(v, n)| (v, VertexId(n))).collect();
    let mut out = Diagram::with_boundary(d.n_inputs(), d.n_outputs());
    for (v, k) in d.vertices() {
        out.add_vertex_with_id(map[&v], k).unwrap();
    }
    let f = |e: Endpoint| match e {
        Endpoint::Vertex(v) => Endpoint::Vertex(map[&v]),
        e => e,
    };
    let mut ws: Vec<_> = d.wires().to_vec();
    ws.shuffle(r);
    for w in ws {
        if r.gen_bool(0.5) {
            out.add_wire(f(w.1), f(w.0));
        } else {
            out.add_wire(f(w.0), f(w.1));
        }
    }
    out.add_loops(d.loops());
    out
}

/// Injective maps from `pat`'s vertices into `d` that preserve kinds, degrees, self-loops
/// and every pairwise multiplicity; returns the image sets.
pub fn brute_force(d: &Diagram, pat: &Diagram) -> BTreeSet<Vec<VertexId>> {
    let pv = pat.vertex_ids();
    let dv = d.vertex_ids();
    let mut out = BTreeSet::new();
    let mut assign: Vec<VertexId> = Vec::new();
    fn go(
        d: &Diagram,
        pat: &Diagram,
        pv: &[VertexId],
        dv: &[VertexId],
        assign: &mut Vec<VertexId>,
        out: &mut BTreeSet<Vec<VertexId>>,
    ) {
        let i = assign.len();
        if i == pv.len() {
            for a in 0..pv.len() {
                for b in a + 1..pv.len() {
                    if pat.multiplicity(pv[a], pv[b]) != d.multiplicity(assign[a], assign[b]) {
                        return;
                    }
                }
            }
            let mut img = assign.clone();
            img.sort();
            out.insert(img);
            return;
        }
        for &v in dv {
            if assign.contains(&v)
                || d.kind(v) != pat.kind(pv[i])
                || d.degree(v) != pat.degree(pv[i])
                || d.self_loops(v) != pat.self_loops(pv[i])
            {
                continue;
            }
            assign.push(v);
            go(d, pat, pv, dv, assign, out);
            assign.pop();
        }
    }
    go(d, pat, &pv, &dv, &mut assign, &mut out);
    out
}

pub fn has_bare_wire(p: &Diagram) -> bool {
    p.wires().iter().any(|w| w.0.is_boundary() && w.1.is_boundary())
}

pub fn matcher_agrees(d: &Diagram) -> Result<(), String> {
    let grid = Phase::dyadic_grid(2);
    for rule in fixed_shape_rules() {
        for dir in [Direction::LR, Direction::RL] {
            let mut want = BTreeSet::new();
            let mut bare = false;
            for n in 0..=max_degree(d) {
                for &a in &grid {
                    let Some((l, r)) = rule.instantiate(n, a) else { continue };
                    let pat = if dir == Direction::LR { l } else { r };
                    if has_bare_wire(&pat) || pat.num_vertices() == 0 {
                        bare = true;
                        continue;
                    }
                    want.extend(brute_force(d, &pat));
                }
            }
            if bare {
                continue;
            }
            let got: BTreeSet<Vec<VertexId>> = find_matches(d, &RuleInstance::new(rule, dir))
                .into_iter()
                .map(|m| m.anchors.iter().filter_map(|a| if let Anchor::Vertex(v) = a { Some(*v) } else { None }).collect())
                .collect();
            if got != want {
                return Err(format!("{rule} {dir:?} on {d:?}: matcher {got:?}, brute force {want:?}"));
            }
        }
    }
    Ok(())
}


/// Plants an antiphase pair of colour `c` into a random diagram so that it lands in `case`.
pub fn plant(r: &mut impl Rng, case: MergeCase) -> (Diagram, VertexId, VertexId) {
    let mut d = random_diagram(r, 4);
    let c = if r.gen_bool(0.5) { Colour::Z } else { Colour::X };
    let a = phase(r);
    let u = d.add_vertex(VertexKind::spider(c, a));
    let v = d.add_vertex(VertexKind::spider(c, a + Phase::PI));
    let spiders_of = |d: &Diagram, col: Colour| -> Vec<VertexId> {
        d.vertex_ids().into_iter().filter(|&w| w != u && w != v && d.kind(w).unwrap().colour() == Some(col)).collect()
    };
    let mut others = spiders_of(&d, c.other());
    if others.is_empty() || r.gen_bool(0.3) {
        let w = d.add_vertex(VertexKind::spider(c.other(), phase(r)));
        if r.gen_bool(0.5) {
            let x = *d.vertex_ids().choose(r).unwrap();
            if d.kind(x) != Some(VertexKind::H) && x != u && x != v {
                d.add_wire(w, x);
            }
        }
        others.push(w);
    }
    others.shuffle(r);
    let n_out = r.gen_range(usize::from(case == MergeCase::Bialgebra)..=others.len().min(3));
    for &w in &others[..n_out] {
        let m = r.gen_range(1..=2);
        d.add_wires(u, w, m);
        d.add_wires(v, w, m);
    }
    match case {
        MergeCase::Fusion => {
            if r.gen_bool(0.5) {
                d.add_wires(u, v, r.gen_range(1..=2));
            } else {
                let mut same = spiders_of(&d, c);
                if same.is_empty() || r.gen_bool(0.3) {
                    same.push(d.add_vertex(VertexKind::spider(c, phase(r))));
                }
                let g = *same.choose(r).unwrap();
                d.add_wire(u, g);
                d.add_wire(v, g);
            }
        }
        MergeCase::Hadamard => {
            let h = d.add_vertex(VertexKind::H);
            d.add_wire(u, h);
            d.add_wire(h, v);
        }
        MergeCase::Bialgebra => {}
    }
    for t in [u, v] {
        if r.gen_bool(0.15) {
            d.add_wire(t, t);
        }
    }
    d.validate().unwrap();
    (d, u, v)
}


pub fn fixed_shape_rules() -> Vec<Rule> {
    rule_catalog().rules().iter().copied().filter(|r| !r.name.is_procedural()).collect()
}

pub fn max_degree(d: &Diagram) -> usize {
    d.vertex_ids().into_iter().map(|v| d.degree(v)).max().unwrap_or(0)
}
