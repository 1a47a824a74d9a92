//! Dense tensor-network contraction over a diagram.
//!
//! Every wire is a summed index of dimension 2. A tensor's flat index puts its first leg in
//! the most significant bit. Each tensor carries an exponent `s` for a `(1/√2)^s` factor.

use std::collections::BTreeSet;

use super::elem::Elem;
use crate::diagram::{Diagram, Endpoint, VertexKind};
use crate::error::{Result, ZxError};

/// Largest rank an intermediate tensor may reach.
pub(crate) const MAX_RANK: usize = 24;

#[derive(Clone, Debug)]
pub(crate) struct Tensor<E> {
    labels: Vec<usize>,
    data: Vec<E>,
    s: u32,
}

impl<E: Elem> Tensor<E> {
    fn scalar(x: E, s: u32) -> Self {
        Tensor { labels: vec![], data: vec![x], s }
    }

    fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Sums over the diagonal of every label that occurs twice.
    fn trace_repeated(mut self) -> Self {
        loop {
            let dup = (0..self.labels.len())
                .find_map(|i| (i + 1..self.labels.len()).find(|&j| self.labels[j] == self.labels[i]).map(|j| (i, j)));
            let Some((i, j)) = dup else { return self };
            let r = self.labels.len();
            let (bi, bj) = (r - 1 - i, r - 1 - j);
            let mut labels = self.labels.clone();
            labels.remove(j);
            labels.remove(i);
            let mut data = vec![E::zero(); 1 << (r - 2)];
            for (idx, x) in self.data.iter().enumerate() {
                if x.is_zero() || ((idx >> bi) & 1) != ((idx >> bj) & 1) {
                    continue;
                }
                data[remove_bits(idx, bi, bj)].add_assign(x);
            }
            self = Tensor { labels, data, s: self.s };
        }
    }

    /// Reorders legs to `order`, which must be a permutation of the current labels.
    fn permuted(&self, order: &[usize]) -> Self {
        if order == self.labels.as_slice() {
            return self.clone();
        }
        let r = self.rank();
        let pos: Vec<usize> =
            order.iter().map(|l| self.labels.iter().position(|x| x == l).expect("label present")).collect();
        let mut data = vec![E::zero(); self.data.len()];
        for (new_idx, slot) in data.iter_mut().enumerate() {
            let mut old = 0usize;
            for (k, &p) in pos.iter().enumerate() {
                let bit = (new_idx >> (r - 1 - k)) & 1;
                old |= bit << (r - 1 - p);
            }
            *slot = self.data[old].clone();
        }
        Tensor { labels: order.to_vec(), data, s: self.s }
    }
}

fn remove_bits(idx: usize, b1: usize, b2: usize) -> usize {
    let (hi, lo) = if b1 > b2 { (b1, b2) } else { (b2, b1) };
    let low = idx & ((1 << lo) - 1);
    let mid = (idx >> (lo + 1)) & ((1 << (hi - lo - 1)) - 1);
    let high = idx >> (hi + 1);
    low | (mid << lo) | (high << (hi - 1))
}

fn contract<E: Elem>(a: &Tensor<E>, b: &Tensor<E>) -> Tensor<E> {
    let sb: BTreeSet<usize> = b.labels.iter().copied().collect();
    let shared: Vec<usize> = a.labels.iter().copied().filter(|l| sb.contains(l)).collect();
    let sh: BTreeSet<usize> = shared.iter().copied().collect();
    let fa: Vec<usize> = a.labels.iter().copied().filter(|l| !sh.contains(l)).collect();
    let fb: Vec<usize> = b.labels.iter().copied().filter(|l| !sh.contains(l)).collect();
    let am = a.permuted(&[fa.clone(), shared.clone()].concat());
    let bm = b.permuted(&[shared.clone(), fb.clone()].concat());
    let (na, ns, nb) = (1usize << fa.len(), 1usize << shared.len(), 1usize << fb.len());
    let mut out = vec![E::zero(); na * nb];
    for i in 0..na {
        let row = &mut out[i * nb..(i + 1) * nb];
        for k in 0..ns {
            let x = &am.data[i * ns + k];
            if x.is_zero() {
                continue;
            }
            for (j, slot) in row.iter_mut().enumerate() {
                let y = &bm.data[k * nb + j];
                if !y.is_zero() {
                    slot.add_assign(&x.mul(y));
                }
            }
        }
    }
    Tensor { labels: [fa, fb].concat(), data: out, s: a.s + b.s }
}

/// The tensor of a vertex with `n` legs.
fn vertex_tensor<E: Elem>(kind: VertexKind, labels: Vec<usize>) -> Tensor<E> {
    let n = labels.len();
    let size = 1usize << n;
    match kind {
        VertexKind::Z(p) => {
            let mut data = vec![E::zero(); size];
            if n == 0 {
                let mut x = E::one();
                x.add_assign(&E::root(p));
                data[0] = x;
            } else {
                data[0] = E::one();
                data[size - 1] = E::root(p);
            }
            Tensor { labels, data, s: 0 }
        }
        // H^{⊗n} applied to the Z tensor: 2^{-n/2} (1 + e^{iα} (-1)^{|x|})
        VertexKind::X(p) => {
            let r = E::root(p);
            let (mut even, odd) = (E::one(), {
                let mut o = E::one();
                o.add_assign(&r.neg());
                o
            });
            even.add_assign(&r);
            let data = (0..size).map(|x| if x.count_ones() % 2 == 0 { even.clone() } else { odd.clone() }).collect();
            Tensor { labels, data, s: n as u32 }
        }
        VertexKind::H => {
            let data = (0..size).map(|x| if x == size - 1 && n == 2 { E::int(-1) } else { E::one() }).collect();
            Tensor { labels, data, s: 1 }
        }
    }
}

/// Result of contracting a whole diagram: row-major entries over outputs × inputs and the
/// common `(1/√2)^s` factor.
pub(crate) struct Contracted<E> {
    pub data: Vec<E>,
    pub s: u32,
}

/// X tensors are dense, Z tensors have two nonzero entries. A diagram with more X than Z
/// spiders is contracted as its colour swap, and a Hadamard is then applied on every open
/// leg, which recovers the same interpretation.
fn prefers_swap(d: &Diagram) -> bool {
    let (mut z, mut x) = (0, 0);
    for (_, k) in d.vertices() {
        match k {
            VertexKind::Z(_) => z += 1,
            VertexKind::X(_) => x += 1,
            VertexKind::H => {}
        }
    }
    x > z
}

/// `H` on every leg, in place; adds one `1/√2` per leg.
fn hadamard_all<E: Elem>(t: &mut Tensor<E>) {
    let n = t.rank();
    for bit in 0..n {
        let m = 1usize << bit;
        for idx in 0..t.data.len() {
            if idx & m == 0 {
                let (x, y) = (t.data[idx].clone(), t.data[idx | m].clone());
                let mut sum = x.clone();
                sum.add_assign(&y);
                let mut diff = x;
                diff.add_assign(&y.neg());
                t.data[idx] = sum;
                t.data[idx | m] = diff;
            }
        }
    }
    t.s += n as u32;
}

pub(crate) fn contract_diagram<E: Elem>(d: &Diagram) -> Result<Contracted<E>> {
    let swap = prefers_swap(d);
    let swapped = if swap { Some(d.colour_swapped()) } else { None };
    let d = swapped.as_ref().unwrap_or(d);
    let (ni, no) = (d.n_inputs(), d.n_outputs());
    let mut next_label = 0usize;
    let mut fresh = || {
        next_label += 1;
        next_label - 1
    };
    let mut port_label: Vec<Option<usize>> = vec![None; ni + no];
    let port_slot = |e: Endpoint| match e {
        Endpoint::Output(j) => Some(j),
        Endpoint::Input(i) => Some(no + i),
        Endpoint::Vertex(_) => None,
    };
    let mut legs: std::collections::BTreeMap<_, Vec<usize>> =
        d.vertex_ids().into_iter().map(|v| (v, Vec::new())).collect();
    let mut tensors: Vec<Tensor<E>> = Vec::new();
    for w in d.wires() {
        match (port_slot(w.0), port_slot(w.1)) {
            (Some(a), Some(b)) => {
                let (la, lb) = (fresh(), fresh());
                port_label[a] = Some(la);
                port_label[b] = Some(lb);
                let data = vec![E::one(), E::zero(), E::zero(), E::one()];
                tensors.push(Tensor { labels: vec![la, lb], data, s: 0 });
            }
            (pa, pb) => {
                let l = fresh();
                for (e, p) in [(w.0, pa), (w.1, pb)] {
                    match (e, p) {
                        (Endpoint::Vertex(v), _) => legs.get_mut(&v).expect("valid diagram").push(l),
                        (_, Some(slot)) => port_label[slot] = Some(l),
                        _ => unreachable!(),
                    }
                }
            }
        }
    }
    for (v, ls) in legs {
        let kind = d.kind(v).expect("vertex exists");
        tensors.push(vertex_tensor::<E>(kind, ls).trace_repeated());
    }
    if d.loops() > 0 {
        tensors.push(Tensor::scalar(E::int(1i64 << d.loops().min(62)), 0));
    }
    let open: Vec<usize> = port_label
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| ZxError::InvalidDiagram(format!("boundary slot {i} is not wired"))))
        .collect::<Result<_>>()?;

    let result = contract_all(tensors)?;
    let mut result = result.permuted(&open);
    if swap {
        hadamard_all(&mut result);
    }
    Ok(Contracted { data: result.data, s: result.s })
}

/// Label set as a bitset.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn of(labels: &[usize], words: usize) -> Bits {
        let mut b = vec![0u64; words];
        for &l in labels {
            b[l / 64] ^= 1 << (l % 64);
        }
        Bits(b)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn shared(&self, o: &Bits) -> usize {
        self.0.iter().zip(&o.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn xor(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a ^ b).collect())
    }
}

/// A pairwise contraction order, with its predicted work.
struct Plan {
    pairs: Vec<(usize, usize)>,
    work: f64,
    max_rank: usize,
}

/// Greedy order. `strategy` picks the score: 0 smallest result rank, 1 largest drop in
/// stored entries; `salt` breaks ties.
fn plan(mut sets: Vec<Bits>, strategy: u8, salt: u64) -> Plan {
    let mut lens: Vec<usize> = sets.iter().map(Bits::len).collect();
    let mut pairs = Vec::new();
    let (mut work, mut max_rank) = (0.0, 0);
    let mix = |i: usize, j: usize| {
        let mut h = (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (j as u64).wrapping_add(salt);
        h ^= h >> 29;
        h.wrapping_mul(0xBF58_476D_1CE4_E5B9) >> 40
    };
    while sets.len() > 1 {
        let mut best: Option<((i64, usize, u64), usize, usize)> = None;
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let shared = sets[i].shared(&sets[j]);
                if shared == 0 {
                    continue;
                }
                let (li, lj) = (lens[i], lens[j]);
                let rank = li + lj - 2 * shared;
                let cost = li + lj - shared;
                let primary = match strategy {
                    0 => rank as i64,
                    _ => (1i64 << rank.min(62)) - (1i64 << li.min(62)) - (1i64 << lj.min(62)),
                };
                let key = (primary, cost, if salt == 0 { 0 } else { mix(i, j) });
                if best.as_ref().map_or(true, |b| key < b.0) {
                    best = Some((key, i, j));
                }
            }
        }
        let (i, j) = match best {
            Some((_, i, j)) => (i, j),
            None => {
                // disconnected pieces: outer product of the two smallest
                let mut idx: Vec<usize> = (0..sets.len()).collect();
                idx.sort_by_key(|&k| lens[k]);
                (idx[0].min(idx[1]), idx[0].max(idx[1]))
            }
        };
        let shared = sets[i].shared(&sets[j]);
        let merged = sets[i].xor(&sets[j]);
        let rank = lens[i] + lens[j] - 2 * shared;
        work += ((lens[i] + lens[j] - shared) as f64).exp2();
        max_rank = max_rank.max(rank);
        pairs.push((i, j));
        lens.swap_remove(j);
        lens.swap_remove(i);
        sets.swap_remove(j);
        sets.swap_remove(i);
        sets.push(merged);
        lens.push(rank);
    }
    Plan { pairs, work, max_rank }
}

fn contract_all<E: Elem>(mut ts: Vec<Tensor<E>>) -> Result<Tensor<E>> {
    if ts.is_empty() {
        return Ok(Tensor::scalar(E::one(), 0));
    }
    let words = ts.iter().flat_map(|t| t.labels.iter()).max().map_or(1, |m| m / 64 + 1);
    let sets: Vec<Bits> = ts.iter().map(|t| Bits::of(&t.labels, words)).collect();
    let tries: &[(u8, u64)] = if ts.len() > 12 { &[(0, 0), (1, 0), (0, 1), (1, 1)] } else { &[(0, 0)] };
    let best = tries
        .iter()
        .map(|&(st, salt)| plan(sets.clone(), st, salt))
        .min_by(|a, b| {
            (a.max_rank > MAX_RANK, a.work).partial_cmp(&(b.max_rank > MAX_RANK, b.work)).expect("finite work")
        })
        .expect("at least one plan");
    if best.max_rank > MAX_RANK {
        return Err(ZxError::ContractionTooLarge { rank: best.max_rank, limit: MAX_RANK });
    }
    for (i, j) in best.pairs {
        let b = ts.swap_remove(j);
        let a = ts.swap_remove(i);
        ts.push(contract(&a, &b));
    }
    Ok(ts.pop().expect("one tensor left"))
}
