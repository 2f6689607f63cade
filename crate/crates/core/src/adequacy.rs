//! Planar-diagram codes, A/B state graphs and adequacy, doubled diagrams,
//! and Turaev-genus arithmetic for the inadequacy tests.
//!
//! PD convention: `X(a,b,c,d)` lists the four edge labels counterclockwise,
//! starting at the incoming under-strand, so the under strand runs `a -> c`.
//! The crossing is positive iff the over strand runs `d -> b`. The
//! A-smoothing joins `a-b` and `c-d`; the B-smoothing joins `a-d` and `b-c`.
//! Orientation of components that never pass under a crossing follows
//! increasing labels.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degrees::{Extreme, QuasiPoly};
use crate::knots::KnotExpr;
use crate::laurent::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdequacyError {
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("quasi-polynomial has parity-dependent {0} coefficient")]
    NonUniform(&'static str),
}

type Slot = (usize, u8);
const UNSET: Slot = (usize::MAX, 0);

/// A diagram as a 4-valent graph: crossing slots ordered counterclockwise,
/// slots 0 and 2 on the under strand.
#[derive(Debug, Clone)]
struct Net {
    link: Vec<[Slot; 4]>,
    free_loops: u32,
}

struct Traversal {
    incoming: Vec<[bool; 4]>,
    labels: Vec<[u32; 4]>,
    components: usize,
}

impl Net {
    fn new(free_loops: u32) -> Net {
        Net { link: Vec::new(), free_loops }
    }

    fn add(&mut self) -> usize {
        self.link.push([UNSET; 4]);
        self.link.len() - 1
    }

    fn connect(&mut self, a: Slot, b: Slot) {
        self.link[a.0][a.1 as usize] = b;
        self.link[b.0][b.1 as usize] = a;
    }

    /// Orients and labels every component. Each component starts at the first
    /// hint (or, failing that, the first slot) it contains, entering there.
    fn traverse(&self, hints: &[Slot]) -> Traversal {
        let n = self.link.len();
        let mut seen = vec![[None::<bool>; 4]; n];
        let mut labels = vec![[0u32; 4]; n];
        let mut next = 1u32;
        let mut components = self.free_loops as usize;
        let defaults = (0..n).flat_map(|x| (0..4u8).map(move |p| (x, p)));
        for start in hints.iter().copied().chain(defaults) {
            if seen[start.0][start.1 as usize].is_some() {
                continue;
            }
            components += 1;
            let (mut x, mut p) = start;
            loop {
                let o = (p + 2) % 4;
                seen[x][p as usize] = Some(true);
                seen[x][o as usize] = Some(false);
                let (y, t) = self.link[x][o as usize];
                debug_assert!(y != usize::MAX, "dangling slot");
                labels[x][o as usize] = next;
                labels[y][t as usize] = next;
                next += 1;
                if (y, t) == start {
                    break;
                }
                (x, p) = (y, t);
            }
        }
        let incoming = seen.iter().map(|s| s.map(|v| v == Some(true))).collect();
        Traversal { incoming, labels, components }
    }

    fn to_pd(&self, hints: &[Slot]) -> PDDiagram {
        let t = self.traverse(hints);
        let crossings = t
            .labels
            .iter()
            .zip(&t.incoming)
            .map(|(l, inc)| if inc[0] { *l } else { [l[2], l[3], l[0], l[1]] })
            .collect();
        PDDiagram { crossings, free_loops: self.free_loops }
    }
}

/// Planar-diagram code. A diagram without crossings is a union of
/// `free_loops` unknotted circles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PDDiagram {
    crossings: Vec<[u32; 4]>,
    free_loops: u32,
}

impl PDDiagram {
    pub fn new(crossings: Vec<[u32; 4]>, free_loops: u32) -> Result<PDDiagram, AdequacyError> {
        let d = PDDiagram { crossings, free_loops };
        d.net()?;
        Ok(d)
    }

    /// The 0-crossing unknot.
    pub fn unknot() -> PDDiagram {
        PDDiagram { crossings: Vec::new(), free_loops: 1 }
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Validated net, with hints reproducing the PD orientation.
    fn net(&self) -> Result<(Net, Vec<Slot>), AdequacyError> {
        let bad = |m: String| Err(AdequacyError::MalformedDiagram(m));
        if self.crossings.is_empty() {
            if self.free_loops == 0 {
                return bad("empty diagram".into());
            }
            return Ok((Net::new(self.free_loops), Vec::new()));
        }
        if self.free_loops > 0 {
            return bad("free loops alongside crossings make the diagram disconnected".into());
        }
        let mut ends: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            for (p, &l) in x.iter().enumerate() {
                if l == 0 {
                    return bad(format!("crossing {i}: labels must be positive"));
                }
                ends.entry(l).or_default().push((i, p as u8));
            }
        }
        let mut net = Net::new(0);
        for _ in &self.crossings {
            net.add();
        }
        let mut uf = UnionFind::<usize>::new(self.crossings.len());
        for (l, e) in &ends {
            if e.len() != 2 {
                return bad(format!("label {l} occurs {} times", e.len()));
            }
            net.connect(e[0], e[1]);
            uf.union(e[0].0, e[1].0);
        }
        if (1..self.crossings.len()).any(|i| !uf.equiv(0, i)) {
            return bad("diagram is not connected".into());
        }
        let mut hints: Vec<Slot> = (0..self.crossings.len()).map(|i| (i, 0)).collect();
        for (i, &[_, b, _, d]) in self.crossings.iter().enumerate() {
            hints.push(if b == d + 1 || d > b + 1 { (i, 3) } else { (i, 1) });
        }
        let t = net.traverse(&hints);
        if let Some(i) = t.incoming.iter().position(|inc| !inc[0]) {
            return bad(format!("crossing {i}: under strand orientation is inconsistent"));
        }
        Ok((net, hints))
    }

    fn oriented(&self) -> (Net, Vec<Slot>, Traversal) {
        let (net, hints) = self.net().expect("validated diagram");
        let t = net.traverse(&hints);
        (net, hints, t)
    }

    /// +1 or -1 per crossing.
    pub fn signs(&self) -> Vec<i8> {
        let (_, _, t) = self.oriented();
        t.incoming.iter().map(|inc| if inc[3] { 1 } else { -1 }).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs().iter().map(|&s| s as i64).sum()
    }

    pub fn components(&self) -> usize {
        self.oriented().2.components
    }

    /// Every crossing switched; labels are kept.
    pub fn mirror(&self) -> PDDiagram {
        let crossings = self
            .crossings
            .iter()
            .zip(self.signs())
            .map(|(&[a, b, c, d], s)| if s > 0 { [d, a, b, c] } else { [b, c, d, a] })
            .collect();
        PDDiagram { crossings, free_loops: self.free_loops }
    }

    /// Closure of a braid on `strands` strands; `k` stands for σ_k and `-k`
    /// for its inverse, strands running upward.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PDDiagram, AdequacyError> {
        if strands == 0 {
            return Err(AdequacyError::MalformedDiagram("braid needs a strand".into()));
        }
        let mut net = Net::new(0);
        let mut bottom = vec![None::<Slot>; strands];
        let mut top = vec![None::<Slot>; strands];
        let mut hints = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(AdequacyError::MalformedDiagram(format!("generator {g} out of range")));
            }
            let x = net.add();
            hints.push((x, 0));
            // (SW, SE, NW, NE) slots
            let (sw, se, nw, ne) = if g > 0 { (3, 0, 2, 1) } else { (0, 1, 3, 2) };
            for (pos, slot) in [(i - 1, sw), (i, se)] {
                match top[pos] {
                    Some(s) => net.connect(s, (x, slot)),
                    None => bottom[pos] = Some((x, slot)),
                }
            }
            top[i - 1] = Some((x, nw));
            top[i] = Some((x, ne));
        }
        let mut free = 0;
        for (t, b) in top.into_iter().zip(bottom) {
            match (t, b) {
                (Some(t), Some(b)) => net.connect(t, b),
                _ => free += 1,
            }
        }
        net.free_loops = free;
        let d = net.to_pd(&hints);
        d.net()?;
        Ok(d)
    }

    /// The same diagram with a Reidemeister-I kink on the edge labelled
    /// `label`.
    pub fn with_kink(&self, label: u32, positive: bool) -> Result<PDDiagram, AdequacyError> {
        let (mut net, mut hints, t) = self.oriented();
        let out = (0..net.link.len())
            .flat_map(|x| (0..4u8).map(move |p| (x, p)))
            .find(|&(x, p)| t.labels[x][p as usize] == label && !t.incoming[x][p as usize])
            .ok_or_else(|| AdequacyError::MalformedDiagram(format!("no edge labelled {label}")))?;
        let head = net.link[out.0][out.1 as usize];
        let k = net.add();
        // under W -> E, loop back to N (positive) or S, leave through the other
        let (lp, exit) = if positive { (3, 1) } else { (1, 3) };
        net.connect(out, (k, 0));
        net.connect((k, 2), (k, lp));
        net.connect((k, exit), head);
        hints.push((k, 0));
        Ok(net.to_pd(&hints))
    }
}

impl fmt::Display for PDDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.crossings.iter().map(|[a, b, c, d]| format!("X({a},{b},{c},{d})")).collect();
        parts.extend((0..self.free_loops).map(|_| "O".to_string()));
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for PDDiagram {
    type Err = AdequacyError;

    /// `X(a,b,c,d),...`; square brackets are accepted, `O` is a free loop and
    /// the empty string is the unknot.
    fn from_str(s: &str) -> Result<PDDiagram, AdequacyError> {
        let bad = |m: String| AdequacyError::MalformedDiagram(m);
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Ok(PDDiagram::unknot());
        }
        let mut crossings = Vec::new();
        let mut free_loops = 0;
        let mut rest = text.as_str();
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('O') {
                free_loops += 1;
                rest = r;
            } else {
                let r = rest.strip_prefix('X').ok_or_else(|| bad(format!("expected X(...) at {rest:?}")))?;
                let close = match r.chars().next() {
                    Some('(') => ')',
                    Some('[') => ']',
                    _ => return Err(bad(format!("expected ( or [ at {r:?}"))),
                };
                let end = r.find(close).ok_or_else(|| bad("unterminated crossing".into()))?;
                let labels: Vec<u32> = r[1..end]
                    .split(',')
                    .map(|t| t.parse::<u32>().map_err(|_| bad(format!("bad label {t:?}"))))
                    .collect::<Result<_, _>>()?;
                let x: [u32; 4] = labels.try_into().map_err(|_| bad("crossing needs four labels".into()))?;
                crossings.push(x);
                rest = &r[end + 1..];
            }
            if let Some(r) = rest.strip_prefix(',') {
                if r.is_empty() {
                    return Err(bad("trailing comma".into()));
                }
                rest = r;
            } else if !rest.is_empty() {
                return Err(bad(format!("expected , at {rest:?}")));
            }
        }
        PDDiagram::new(crossings, free_loops)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Smoothing {
    A,
    B,
}

/// State circles as sorted edge-label lists; free loops appear as empty lists.
pub fn resolve(d: &PDDiagram, state: &[Smoothing]) -> Result<Vec<Vec<u32>>, AdequacyError> {
    let (uf, net) = state_union(d, state)?;
    let mut circles: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (i, x) in d.crossings.iter().enumerate() {
        for p in 0..4 {
            circles.entry(uf.find(4 * i + p)).or_default().push(x[p]);
        }
    }
    let mut out: Vec<Vec<u32>> = circles
        .into_values()
        .map(|mut v| {
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    out.sort();
    out.extend((0..net.free_loops).map(|_| Vec::new()));
    Ok(out)
}

fn state_union(d: &PDDiagram, state: &[Smoothing]) -> Result<(UnionFind<usize>, Net), AdequacyError> {
    if state.len() != d.crossings.len() {
        return Err(AdequacyError::MalformedDiagram(format!(
            "state has {} entries for {} crossings",
            state.len(),
            d.crossings.len()
        )));
    }
    let (net, _) = d.net()?;
    let mut uf = UnionFind::new(4 * net.link.len());
    for (i, l) in net.link.iter().enumerate() {
        for (p, &(j, t)) in l.iter().enumerate() {
            uf.union(4 * i + p, 4 * j + t as usize);
        }
        let (u, v) = match state[i] {
            Smoothing::A => ((0, 1), (2, 3)),
            Smoothing::B => ((0, 3), (1, 2)),
        };
        uf.union(4 * i + u.0, 4 * i + u.1);
        uf.union(4 * i + v.0, 4 * i + v.1);
    }
    Ok((uf, net))
}

/// Circles as vertices, one edge per crossing joining the two arcs of its
/// smoothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateGraph {
    pub circles: usize,
    pub edges: Vec<(usize, usize)>,
}

impl StateGraph {
    /// Crossings whose edge is a loop.
    pub fn loop_edges(&self) -> Vec<usize> {
        self.edges.iter().enumerate().filter(|(_, (u, v))| u == v).map(|(i, _)| i).collect()
    }
}

pub fn state_graph(d: &PDDiagram, state: &[Smoothing]) -> Result<StateGraph, AdequacyError> {
    let (uf, net) = state_union(d, state)?;
    let mut index = BTreeMap::new();
    for s in 0..4 * net.link.len() {
        let r = uf.find(s);
        let k = index.len();
        index.entry(r).or_insert(k);
    }
    let edges = (0..net.link.len()).map(|i| (index[&uf.find(4 * i)], index[&uf.find(4 * i + 2)])).collect();
    Ok(StateGraph { circles: index.len() + net.free_loops as usize, edges })
}

pub fn all_state(d: &PDDiagram, s: Smoothing) -> Vec<Smoothing> {
    vec![s; d.crossing_count()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdequacyVerdict {
    pub a_adequate: bool,
    pub b_adequate: bool,
    /// Crossings giving loop edges in the all-A graph.
    pub a_witnesses: Vec<usize>,
    pub b_witnesses: Vec<usize>,
}

pub fn adequacy_verdict(d: &PDDiagram) -> Result<AdequacyVerdict, AdequacyError> {
    let a = state_graph(d, &all_state(d, Smoothing::A))?.loop_edges();
    let b = state_graph(d, &all_state(d, Smoothing::B))?.loop_edges();
    Ok(AdequacyVerdict { a_adequate: a.is_empty(), b_adequate: b.is_empty(), a_witnesses: a, b_witnesses: b })
}

/// Slots of the crossings replacing crossing `x` in the doubled diagram,
/// indexed by original slot and side. Sub-crossings 0..4 sit at
/// (-,+), (+,+), (-,-), (+,-) with the under strand running east.
fn double_slot(x: usize, s: u8, left: bool, positive: bool) -> Slot {
    let q = match (s, positive, left) {
        (0, _, true) => 0,
        (0, _, false) => 2,
        (2, _, true) => 1,
        (2, _, false) => 3,
        (3, true, true) | (3, false, false) => 1,
        (3, true, false) | (3, false, true) => 0,
        (1, true, true) | (1, false, false) => 3,
        _ => 2,
    };
    (4 * x + q, s)
}

fn double_net(net: &Net, inc: &[[bool; 4]]) -> (Net, Vec<Slot>) {
    let n = net.link.len();
    let mut d = Net::new(2 * net.free_loops);
    let mut hints = Vec::with_capacity(2 * n);
    for x in 0..n {
        for _ in 0..4 {
            d.add();
        }
        let b = 4 * x;
        d.connect((b, 2), (b + 1, 0));
        d.connect((b + 2, 2), (b + 3, 0));
        d.connect((b + 1, 1), (b + 3, 3));
        d.connect((b, 1), (b + 2, 3));
        hints.push((b, 0));
        hints.push((b + 2, 0));
    }
    for x in 0..n {
        for s in 0..4u8 {
            let (y, t) = net.link[x][s as usize];
            if (x, s) < (y, t) {
                for left in [true, false] {
                    d.connect(double_slot(x, s, left, inc[x][3]), double_slot(y, t, left, inc[y][3]));
                }
            }
        }
    }
    (d, hints)
}

/// Blackboard-framed 2-parallel, both copies oriented alike.
pub fn parallel_double(d: &PDDiagram) -> Result<PDDiagram, AdequacyError> {
    let (net, hints) = d.net()?;
    let t = net.traverse(&hints);
    let (dn, dh) = double_net(&net, &t.incoming);
    Ok(dn.to_pd(&dh))
}

/// Blackboard-framed double with a negative clasp on the lowest-labelled edge.
pub fn whitehead_diagram(d: &PDDiagram) -> Result<PDDiagram, AdequacyError> {
    twisted_whitehead_diagram(d, 0)
}

/// Negative-clasp double with framing corrected to zero by `writhe` full
/// twists.
pub fn untwisted_whitehead_diagram(d: &PDDiagram) -> Result<PDDiagram, AdequacyError> {
    twisted_whitehead_diagram(d, d.writhe())
}

/// Negative-clasp double whose blackboard framing is lowered by `twists`
/// full twists of the parallel strands, inserted next to the clasp.
pub fn twisted_whitehead_diagram(d: &PDDiagram, twists: i64) -> Result<PDDiagram, AdequacyError> {
    let (net, hints) = d.net()?;
    let t = net.traverse(&hints);
    if t.components != 1 {
        return Err(AdequacyError::MalformedDiagram("Whitehead double needs a knot diagram".into()));
    }
    let (mut dn, _) = double_net(&net, &t.incoming);
    // (west end, east end) of the top (left) and bottom strands
    let ends = if net.link.is_empty() {
        None
    } else {
        let (x, s) = (0..net.link.len())
            .flat_map(|x| (0..4u8).map(move |p| (x, p)))
            .find(|&(x, p)| t.labels[x][p as usize] == 1 && !t.incoming[x][p as usize])
            .expect("edge 1 exists");
        let (y, u) = net.link[x][s as usize];
        let side = |left| (double_slot(x, s, left, t.incoming[x][3]), double_slot(y, u, left, t.incoming[y][3]));
        Some((side(true), side(false)))
    };
    dn.free_loops = 0;
    let (mut top, mut bot) = match ends {
        Some(((lw, _), (rw, _))) => (lw, rw),
        None => (UNSET, UNSET),
    };
    let mut west = None;
    for _ in 0..2 * twists.unsigned_abs() {
        let c = dn.add();
        // slots (NW, SW, SE, NE)
        let (nw, sw, se, ne) = if twists > 0 { (0, 1, 2, 3) } else { (3, 0, 1, 2) };
        if top == UNSET {
            west = Some(((c, nw), (c, sw)));
        } else {
            dn.connect(top, (c, nw));
            dn.connect(bot, (c, sw));
        }
        top = (c, ne);
        bot = (c, se);
    }
    let tc = dn.add();
    let bc = dn.add();
    if top == UNSET {
        west = Some(((tc, 0), (bc, 3)));
    } else {
        dn.connect(top, (tc, 0));
        dn.connect(bot, (bc, 3));
    }
    dn.connect((tc, 1), (bc, 2));
    dn.connect((tc, 2), (bc, 1));
    let (le, re) = match ends {
        Some(((_, le), (_, re))) => (le, re),
        None => west.expect("clasp exists"),
    };
    dn.connect((tc, 3), le);
    dn.connect((bc, 0), re);
    Ok(dn.to_pd(&[]))
}

mod q_str {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuraevData {
    #[serde(with = "q_str")]
    pub c: Q,
    #[serde(with = "q_str")]
    pub g_t: Q,
    /// `δ` and `δ*` share their quadratic part, so `c = 0`.
    pub degenerate: bool,
}

/// Crossing number and Turaev genus forced by `δ - δ* = (c/2) n² + (1 - g_T - c/2) n + ...`
/// if the knot were adequate.
pub fn turaev_if_adequate(delta: &QuasiPoly, delta_star: &QuasiPoly) -> Result<TuraevData, AdequacyError> {
    let (a, b) = delta.uniform_ab().ok_or(AdequacyError::NonUniform("max-degree"))?;
    let (a_s, b_s) = delta_star.uniform_ab().ok_or(AdequacyError::NonUniform("min-degree"))?;
    let c = (a - a_s) * 2;
    let g_t = Q::from_integer(1) - c / 2 - (b - b_s);
    Ok(TuraevData { c, g_t, degenerate: c == Q::from_integer(0) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfIntegrality {
    pub extreme: Extreme,
    pub quadratic: Vec<String>,
    pub in_half_integers: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuraevCheck {
    #[serde(flatten)]
    pub data: TuraevData,
    pub contradiction: bool,
    /// Cited fact, not computed: no Whitehead double of a nontrivial knot has
    /// Turaev genus one.
    pub assumes_doubles_not_turaev_genus_one: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    #[serde(rename = "inadequate")]
    Inadequate,
    #[serde(rename = "not adequate")]
    NotAdequate,
    #[serde(rename = "no contradiction")]
    NoContradiction,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::Inadequate => "inadequate",
            Conclusion::NotAdequate => "not adequate",
            Conclusion::NoContradiction => "no contradiction",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InadequacyReport {
    pub half_integrality: Vec<HalfIntegrality>,
    pub turaev: Option<TuraevCheck>,
    pub conclusion: Conclusion,
}

/// Negative Whitehead double `W_1^0` of a negative torus knot.
fn is_negative_torus_double(k: &KnotExpr) -> bool {
    match k {
        KnotExpr::Whitehead { omega: 1, tau: 0, companion } => {
            matches!(companion.as_ref(), KnotExpr::Mirror(t) if matches!(t.as_ref(), KnotExpr::Torus(..)))
        }
        _ => false,
    }
}

/// Adequacy obstructions from the fitted max/min degree quasi-polynomials
/// `delta`, `delta_star` of `J_{K,n}`.
pub fn inadequacy_tests(knot: &KnotExpr, delta: &QuasiPoly, delta_star: &QuasiPoly) -> InadequacyReport {
    let half = |extreme, qp: &QuasiPoly| {
        let quadratic: Vec<Q> = qp.coeffs().iter().map(|c| c[0]).collect();
        HalfIntegrality {
            extreme,
            in_half_integers: quadratic.iter().all(|a| (a * 2).is_integer()),
            quadratic: quadratic.iter().map(|a| a.to_string()).collect(),
        }
    };
    let half_integrality = vec![half(Extreme::Max, delta), half(Extreme::Min, delta_star)];
    let turaev = if is_negative_torus_double(knot) {
        turaev_if_adequate(delta, delta_star).ok().map(|data| TuraevCheck {
            contradiction: data.g_t == Q::from_integer(1),
            data,
            assumes_doubles_not_turaev_genus_one: true,
        })
    } else {
        None
    };
    let conclusion = if half_integrality.iter().any(|h| !h.in_half_integers) {
        Conclusion::Inadequate
    } else if turaev.as_ref().is_some_and(|t| t.contradiction) {
        Conclusion::NotAdequate
    } else {
        Conclusion::NoContradiction
    };
    InadequacyReport { half_integrality, turaev, conclusion }
}
