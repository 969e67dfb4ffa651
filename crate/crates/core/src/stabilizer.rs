//! Stabilizer machinery for the flag action: cell-conjugate builders,
//! the per-tiling generator catalogs, enclosed-cell analysis and peeling
//! of closed walks, conjugator independence, and the witnesses showing
//! the stabilizer of a uniform tiling has no finite generating set.

use crate::exact::{orient, winding_number, Pt};
use crate::tiling::{Flag, FlagSystem, TilingId, Walk};
use crate::word::{parse_word, Letter, Word};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StabilizerError {
    #[error("catalog applies to uniform tilings only")]
    CatalogOnlyUniform,
    #[error("catalog word {0} does not stabilize the base flag under either reading")]
    CatalogInvalid(String),
    #[error("walk is not closed at the base flag")]
    NonClosedWalk,
    #[error("word does not stabilize the base flag")]
    NotStabilizer,
    #[error("peeling budget exhausted with residual of length {0}")]
    PeelBudget(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// The three kinds of cells of the flag graph's planar embedding: the
/// 2q-gon around a vertex, the 4-gon around an edge midpoint, and the
/// 2p-gon around a face center.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum CellKind {
    Vertex,
    Edge,
    Face,
}

impl CellKind {
    /// The alternating labels of the cell's boundary cycle.
    pub fn letters(self) -> (Letter, Letter) {
        match self {
            CellKind::Vertex => (Letter::B, Letter::C),
            CellKind::Edge => (Letter::A, Letter::C),
            CellKind::Face => (Letter::A, Letter::B),
        }
    }

    /// The two cell kinds sharing a flag-graph edge of the given label.
    pub fn pair_for_label(l: Letter) -> (CellKind, CellKind) {
        match l {
            Letter::A => (CellKind::Face, CellKind::Edge),
            Letter::B => (CellKind::Face, CellKind::Vertex),
            Letter::C => (CellKind::Vertex, CellKind::Edge),
        }
    }

    /// Index into a flag's embedded triangle of this cell's shared point.
    fn tri_index(self) -> usize {
        match self {
            CellKind::Vertex => 0,
            CellKind::Edge => 1,
            CellKind::Face => 2,
        }
    }
}

/// A cell of the flag graph, identified by its canonical anchor flag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct CellRef {
    pub kind: CellKind,
    pub anchor: Flag,
    /// Half the boundary length: vertex degree, 2, or face co-degree.
    pub size: u32,
}

fn flag_key(f: Flag) -> ((i64, i64), u32) {
    (f.cell, f.class)
}

/// The cell of the given kind containing a flag; the anchor is the least
/// boundary flag in (cell, class) order.
pub fn cell_of(sys: &FlagSystem, f: Flag, kind: CellKind) -> CellRef {
    let size = match kind {
        CellKind::Vertex => sys.vertex_degree(),
        CellKind::Edge => 2,
        CellKind::Face => sys.co_degree(f.class),
    };
    let (l1, l2) = kind.letters();
    let mut anchor = f;
    let mut g = f;
    for step in 0..2 * size {
        let l = if step % 2 == 0 { l1 } else { l2 };
        g = sys.adjacent(g, l);
        if flag_key(g) < flag_key(anchor) {
            anchor = g;
        }
    }
    debug_assert_eq!(g, f, "cell boundary must close");
    CellRef { kind, anchor, size }
}

/// Boundary flags of a cell in cycle order, starting at the anchor.
pub fn cell_boundary(sys: &FlagSystem, cell: &CellRef) -> Vec<Flag> {
    let (l1, l2) = cell.kind.letters();
    let mut out = Vec::with_capacity(2 * cell.size as usize);
    let mut g = cell.anchor;
    for step in 0..2 * cell.size {
        out.push(g);
        let l = if step % 2 == 0 { l1 } else { l2 };
        g = sys.adjacent(g, l);
    }
    out
}

/// The representative point of a cell: the tiling vertex, edge midpoint
/// or face center it surrounds.
pub fn cell_rep_point(sys: &FlagSystem, cell: &CellRef) -> Pt {
    sys.embed(cell.anchor)[cell.kind.tri_index()]
}

/// Which cell kind lies on the left of each directed flag-graph edge,
/// precomputed per (class, label).
pub struct CellSides {
    left: Vec<[CellKind; 3]>,
}

impl CellSides {
    pub fn new(sys: &FlagSystem) -> CellSides {
        let mut left = Vec::with_capacity(sys.class_count());
        for class in 0..sys.class_count() as u32 {
            let f = Flag::new(class, (0, 0));
            let cf = sys.centroid(f);
            let mut row = [CellKind::Face; 3];
            for l in Letter::ALL {
                let g = sys.adjacent(f, l);
                let cg = sys.centroid(g);
                let (k1, k2) = CellKind::pair_for_label(l);
                let p1 = sys.embed(f)[k1.tri_index()];
                let p2 = sys.embed(f)[k2.tri_index()];
                let s1 = orient(&cf, &cg, &p1);
                let s2 = orient(&cf, &cg, &p2);
                assert!(s1 * s2 < 0, "cell representatives must flank the edge");
                row[l.index()] = if s1 > 0 { k1 } else { k2 };
            }
            left.push(row);
        }
        CellSides { left }
    }

    /// Kind of the cell on the left of the directed edge f -> f^l.
    pub fn left_kind(&self, f: Flag, l: Letter) -> CellKind {
        self.left[f.class as usize][l.index()]
    }
}

/// Winding numbers of a closed walk around every cell, nonzero entries
/// only, sorted by the cell representative point.
///
/// Winding is computed combinatorially: the net signed traversal of each
/// flag-graph edge determines the jump between the two cells it separates,
/// and a breadth-first sweep from a far-outside cell (winding 0)
/// propagates the values.
pub fn enclosed_cells(sys: &FlagSystem, w: &Word) -> Result<Vec<(CellRef, i64)>, StabilizerError> {
    let walk = sys.walk_of(sys.base_flag(), w);
    if !walk.is_closed() {
        return Err(StabilizerError::NonClosedWalk);
    }
    let sides = CellSides::new(sys);
    Ok(enclosed_of_walk(sys, &sides, &walk))
}

pub(crate) fn enclosed_of_walk(
    sys: &FlagSystem,
    sides: &CellSides,
    walk: &Walk,
) -> Vec<(CellRef, i64)> {
    if walk.is_empty() {
        return Vec::new();
    }
    // Net signed traversals per undirected edge, keyed by the lesser
    // endpoint; positive = traversed from lesser to greater endpoint.
    let mut tally: HashMap<(Flag, usize), i64> = HashMap::new();
    for (i, &l) in walk.labels.iter().enumerate() {
        let (f, g) = (walk.flags[i], walk.flags[i + 1]);
        let (key, dir) = if flag_key(f) <= flag_key(g) {
            ((f, l.index()), 1)
        } else {
            ((g, l.index()), -1)
        };
        *tally.entry(key).or_insert(0) += dir;
    }
    // Region of interest: lattice cells near the walk, with margin.
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for f in &walk.flags {
        lo_x = lo_x.min(f.cell.0);
        hi_x = hi_x.max(f.cell.0);
        lo_y = lo_y.min(f.cell.1);
        hi_y = hi_y.max(f.cell.1);
    }
    let in_region = |c: &CellRef| {
        c.anchor.cell.0 >= lo_x - 3
            && c.anchor.cell.0 <= hi_x + 3
            && c.anchor.cell.1 >= lo_y - 3
            && c.anchor.cell.1 <= hi_y + 3
    };
    // Start outside everything: winding 0 there.
    let start = cell_of(sys, Flag::new(0, (lo_x - 3, lo_y - 3)), CellKind::Vertex);
    let mut omega: BTreeMap<CellRef, i64> = BTreeMap::new();
    omega.insert(start, 0);
    let mut queue = VecDeque::from([start]);
    while let Some(cell) = queue.pop_front() {
        let w_here = omega[&cell];
        let boundary = cell_boundary(sys, &cell);
        let (l1, l2) = cell.kind.letters();
        for (i, &u) in boundary.iter().enumerate() {
            let l = if i % 2 == 0 { l1 } else { l2 };
            let v = sys.adjacent(u, l);
            // Net traversal in direction u -> v.
            let net = if flag_key(u) <= flag_key(v) {
                tally.get(&(u, l.index())).copied().unwrap_or(0)
            } else {
                -tally.get(&(v, l.index())).copied().unwrap_or(0)
            };
            let (k1, k2) = CellKind::pair_for_label(l);
            let other_kind = if cell.kind == k1 { k2 } else { k1 };
            let neighbor = cell_of(sys, u, other_kind);
            // omega(left) - omega(right) = net traversal along u -> v.
            let w_next = if sides.left_kind(u, l) == cell.kind {
                w_here - net
            } else {
                w_here + net
            };
            if let Some(&known) = omega.get(&neighbor) {
                assert_eq!(known, w_next, "inconsistent winding propagation");
            } else if in_region(&neighbor) {
                omega.insert(neighbor, w_next);
                queue.push_back(neighbor);
            }
        }
    }
    let mut out: Vec<(CellRef, i64)> = omega.into_iter().filter(|&(_, w)| w != 0).collect();
    out.sort_by(|a, b| {
        cell_rep_point(sys, &a.0)
            .cmp(&cell_rep_point(sys, &b.0))
            .then(a.0.cmp(&b.0))
    });
    out
}

/// Boundary loop word of a cell starting at flag `z` on the cell, with
/// prescribed winding (+1 or -1) around the cell's representative point.
fn cell_loop_at(sys: &FlagSystem, cell: &CellRef, z: Flag, want: i64) -> Word {
    let (l1, l2) = cell.kind.letters();
    let mut letters = Vec::with_capacity(2 * cell.size as usize);
    for step in 0..2 * cell.size {
        letters.push(if step % 2 == 0 { l1 } else { l2 });
    }
    let w = Word::from_letters(letters);
    let walk = sys.walk_of(z, &w);
    let polygon: Vec<Pt> = walk.flags[..walk.flags.len() - 1]
        .iter()
        .map(|&f| sys.centroid(f))
        .collect();
    let rep = cell_rep_point(sys, cell);
    let turn = winding_number(&polygon, &rep);
    assert!(turn == 1 || turn == -1, "cell loop must wind exactly once");
    if turn == want {
        w
    } else {
        w.inverse()
    }
}

/// W_f: the conjugate of the face loop (ρ0ρ1)^{p_f} by the path w, where
/// p_f is the co-degree of the face of the flag w reaches from Φ. The
/// outbound path is applied first, so the result always fixes Φ.
pub fn make_wf(sys: &FlagSystem, w: &Word) -> Word {
    let psi = sys.apply_word(sys.base_flag(), w);
    let p = sys.co_degree(psi.class);
    w.concat(&Word::lit("ab").pow(p as i64)).concat(&w.inverse())
}

/// W_v: the conjugate of the vertex loop (ρ1ρ2)^{q_v} by the path w.
pub fn make_wv(sys: &FlagSystem, w: &Word) -> Word {
    let q = sys.vertex_degree();
    w.concat(&Word::lit("bc").pow(q as i64)).concat(&w.inverse())
}

/// Raw catalog words per uniform tiling, as cell-word/conjugator pairs
/// plus the two translation words.
pub struct CatalogData {
    pub alphas: &'static [(&'static str, &'static str)],
    pub beta: &'static str,
    pub gamma: &'static str,
}

pub fn catalog_data(id: TilingId) -> Option<&'static CatalogData> {
    match id {
        TilingId::TriHexagonal => Some(&CatalogData {
            alphas: &[("(ab)^3", "c"), ("(ab)^3", "cb")],
            beta: "ababacbc",
            gamma: "abcbabcb",
        }),
        TilingId::TruncatedSquare => Some(&CatalogData {
            alphas: &[("(ab)^4", "cb")],
            beta: "ababcbab",
            gamma: "cbababab",
        }),
        TilingId::TruncatedHexagonal => Some(&CatalogData {
            alphas: &[("(ab)^3", "cb"), ("(ab)^3", "cbabab")],
            beta: "(bcba)^2(ba)^2",
            gamma: "(ba)^2(bcba)^2",
        }),
        TilingId::RhombiTriHexagonal => Some(&CatalogData {
            alphas: &[
                ("(ab)^3", ""),
                ("(ab)^4", "cba"),
                ("(ab)^4", "cb"),
                ("(ab)^4", "c"),
                ("(ab)^6", "cbc"),
                ("(ab)^3", "cbabc"),
            ],
            beta: "cbabcbcbabcbab",
            gamma: "caba(bc)^2babcab",
        }),
        TilingId::ElongatedTriangular => Some(&CatalogData {
            alphas: &[("(ab)^4", ""), ("(ab)^3", "c"), ("(ab)^3", "cbc")],
            beta: "abcb",
            gamma: "cbab(cb)^2ab",
        }),
        TilingId::SnubSquare => Some(&CatalogData {
            alphas: &[
                ("(ab)^4", ""),
                ("(ab)^3", "c"),
                ("(ab)^4", "cbc"),
                ("(ab)^3", "cbcbc"),
                ("(ab)^3", "cb"),
                ("(ab)^3", "cbac"),
            ],
            beta: "abcbabcbcb",
            gamma: "cabcbacbcbabcb",
        }),
        TilingId::TruncatedTriHexagonal => Some(&CatalogData {
            alphas: &[
                ("(ab)^4", "cbabab"),
                ("(ab)^6", "cbab"),
                ("(ab)^4", "cb"),
                ("(ab)^6", "c"),
                ("(ab)^4", "cba"),
            ],
            beta: "(ab)^3(cbab)^2ab",
            gamma: "(ab)^5cbabcb",
        }),
        TilingId::SnubTriHexagonal => Some(&CatalogData {
            alphas: &[
                ("(ab)^3", ""),
                ("(ab)^3", "cbacbc"),
                ("(ab)^3", "cbc"),
                ("(ab)^3", "cbcb"),
                ("(ab)^3", "cb"),
                ("(ab)^3", "cba"),
                ("(ab)^3", "cbcba"),
                ("(ab)^3", "cbca"),
            ],
            beta: "ab(cb)^3(abcb)^2cb",
            gamma: "ca(ba)^2(bc)^2ab",
        }),
        _ => None,
    }
}

/// How a printed conjugate g^w was realized against the flag action.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Reading {
    /// Outbound path is w⁻¹, the literal expansion of g^w = w⁻¹gw.
    Literal,
    /// Outbound path is w itself.
    Outbound,
}

/// One stabilizer generator: outbound path u, cell loop g, and the
/// realized flat word u·g·u⁻¹ (outbound applied first).
#[derive(Clone, Debug)]
pub struct Alpha {
    pub outbound: Word,
    pub cell_word: Word,
    pub reading: Reading,
    pub realized: Word,
}

/// The validated generator catalog of a uniform tiling.
#[derive(Clone, Debug)]
pub struct GeneratorCatalog {
    pub tiling: TilingId,
    pub alphas: Vec<Alpha>,
    pub beta: Word,
    pub gamma: Word,
}

/// Loads and validates the catalog of a uniform tiling: every α must fix
/// the base flag under one of the two conjugation readings, and β, γ must
/// act as the two unit lattice translations.
pub fn catalog(sys: &FlagSystem) -> Result<GeneratorCatalog, StabilizerError> {
    let data = catalog_data(sys.id()).ok_or(StabilizerError::CatalogOnlyUniform)?;
    let base = sys.base_flag();
    let mut alphas = Vec::new();
    for (cell_expr, conj_expr) in data.alphas {
        let cell = parse_word(cell_expr).expect("catalog cell word");
        let conj = parse_word(conj_expr).expect("catalog conjugator");
        let mut resolved = None;
        for (reading, outbound) in [
            (Reading::Literal, conj.inverse()),
            (Reading::Outbound, conj.clone()),
        ] {
            let realized = outbound.concat(&cell).concat(&outbound.inverse());
            if sys.apply_word(base, &realized) == base {
                resolved = Some(Alpha {
                    outbound,
                    cell_word: cell.clone(),
                    reading,
                    realized,
                });
                break;
            }
        }
        let alpha = resolved.ok_or_else(|| {
            StabilizerError::CatalogInvalid(format!("({cell_expr})^({conj_expr})"))
        })?;
        alphas.push(alpha);
    }
    let beta = parse_word(data.beta).expect("catalog beta");
    let gamma = parse_word(data.gamma).expect("catalog gamma");
    for (name, w, cell) in [("beta", &beta, (1, 0)), ("gamma", &gamma, (0, 1))] {
        let img = sys.apply_word(base, w);
        if img != Flag::new(base.class, cell) {
            return Err(StabilizerError::CatalogInvalid(format!(
                "{name} must translate the base flag by the {cell:?} lattice step, got {img}"
            )));
        }
    }
    Ok(GeneratorCatalog {
        tiling: sys.id(),
        alphas,
        beta,
        gamma,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub tiling: String,
    pub checks: Vec<CheckEntry>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Verifies the catalog claim over a window of translation conjugates:
/// every α_i^(β^j γ^k) with |j|, |k| <= range fixes the base flag, and
/// β, γ act as independent lattice translations on base-class flags.
pub fn verify_catalog(
    sys: &FlagSystem,
    cat: &GeneratorCatalog,
    range: i64,
) -> VerifyReport {
    let base = sys.base_flag();
    let mut checks = Vec::new();
    for (i, alpha) in cat.alphas.iter().enumerate() {
        let mut pass = true;
        let mut detail = format!("{} conjugates", (2 * range + 1) * (2 * range + 1));
        'sweep: for j in -range..=range {
            for k in -range..=range {
                let t = cat.beta.pow(j).concat(&cat.gamma.pow(k));
                let conjugated = alpha.realized.conjugate(&t);
                if sys.apply_word(base, &conjugated) != base {
                    pass = false;
                    detail = format!("failed at j={j} k={k}: {conjugated}");
                    break 'sweep;
                }
            }
        }
        checks.push(CheckEntry {
            name: format!("alpha_{i}_sweep"),
            pass,
            detail,
        });
    }
    // Translation behavior on base-class flags away from the origin.
    for (name, w, step) in [
        ("beta_translation", &cat.beta, (1i64, 0i64)),
        ("gamma_translation", &cat.gamma, (0i64, 1i64)),
    ] {
        let mut pass = true;
        let mut detail = "unit lattice step on base-class flags".to_string();
        for cell in [(0, 0), (2, 5), (-3, 1), (7, -4)] {
            let f = Flag::new(base.class, cell);
            let img = sys.apply_word(f, w);
            let expect = Flag::new(base.class, (cell.0 + step.0, cell.1 + step.1));
            if img != expect {
                pass = false;
                detail = format!("at cell {cell:?}: got {img}, expected {expect}");
                break;
            }
        }
        checks.push(CheckEntry {
            name: name.to_string(),
            pass,
            detail,
        });
    }
    let (t1, t2) = sys.lattice_basis();
    checks.push(CheckEntry {
        name: "translation_independence".to_string(),
        pass: t1.cross(&t2).sign() != 0,
        detail: "cross product of embedded translation vectors".to_string(),
    });
    VerifyReport {
        tiling: sys.id().name().to_string(),
        checks,
    }
}

/// Decomposes a stabilizer word into cell-boundary conjugates.
///
/// While the walk encloses cells, the enclosed cell with the least
/// representative point among those meeting the walk is peeled off: the
/// emitted factor is the cell loop at the first walk flag on that cell,
/// conjugated by the walk prefix, oriented to cancel one unit of winding.
/// A residual that winds around nothing but is not yet trivial is split
/// at its first repeated flag and the pieces are processed recursively.
/// The emitted factors multiply, in order, to the original word up to
/// free reduction, and each factor fixes the base flag.
pub fn peel(sys: &FlagSystem, w: &Word) -> Result<Vec<(CellRef, Word)>, StabilizerError> {
    let base = sys.base_flag();
    if sys.apply_word(base, w) != base {
        return Err(StabilizerError::NotStabilizer);
    }
    let sides = CellSides::new(sys);
    let mut out = Vec::new();
    let mut budget = 10_000usize + 100 * w.len();
    peel_rec(sys, &sides, w.free_reduce(), &mut out, &mut budget)?;
    Ok(out)
}

fn peel_rec(
    sys: &FlagSystem,
    sides: &CellSides,
    mut w: Word,
    out: &mut Vec<(CellRef, Word)>,
    budget: &mut usize,
) -> Result<(), StabilizerError> {
    let base = sys.base_flag();
    loop {
        w = w.free_reduce();
        if w.is_empty() {
            return Ok(());
        }
        if *budget == 0 {
            return Err(StabilizerError::PeelBudget(w.len()));
        }
        *budget -= 1;
        let walk = sys.walk_of(base, &w);
        let enclosed = enclosed_of_walk(sys, sides, &walk);
        if !enclosed.is_empty() {
            let walk_flags: HashSet<Flag> = walk.flags.iter().copied().collect();
            let pick = enclosed
                .iter()
                .find(|(cell, _)| {
                    cell_boundary(sys, cell).iter().any(|f| walk_flags.contains(f))
                })
                .expect("an enclosed cell must meet the walk");
            let (cell, wind) = (pick.0, pick.1);
            let (zi, z) = walk
                .flags
                .iter()
                .enumerate()
                .find(|(_, f)| cell_boundary(sys, &cell).contains(f))
                .map(|(i, &f)| (i, f))
                .unwrap();
            let prefix = w.subword(0..zi);
            let s = if wind > 0 { 1 } else { -1 };
            let loop_word = cell_loop_at(sys, &cell, z, s);
            let factor = prefix.concat(&loop_word).concat(&prefix.inverse());
            out.push((cell, factor.clone()));
            w = factor.inverse().concat(&w);
        } else {
            // Winding-free but nontrivial: split at the first repeated flag.
            let n = walk.len();
            let mut seen: HashMap<Flag, usize> = HashMap::new();
            seen.insert(walk.flags[0], 0);
            let mut split = None;
            for k in 1..n {
                if let Some(&j) = seen.get(&walk.flags[k]) {
                    split = Some((j, k));
                    break;
                }
                seen.insert(walk.flags[k], k);
            }
            let (j, k) = split.expect("a reduced winding-free walk must repeat a flag");
            let w1 = w.subword(0..j);
            let w2 = w.subword(j..k);
            let w3 = w.subword(k..n);
            let hat = w1.concat(&w2).concat(&w1.inverse());
            peel_rec(sys, sides, hat, out, budget)?;
            w = w1.concat(&w3);
        }
    }
}

/// Lemma check: if two paths land on the same face (i = 0) or the same
/// vertex (i = 1), a cell-loop conjugate along the first path stabilizing
/// Φ forces the conjugate along the second path to stabilize Φ as well.
pub fn lemma_conjugator_independence(
    sys: &FlagSystem,
    w: &Word,
    w2: &Word,
    i: usize,
) -> Result<bool, StabilizerError> {
    let kind = match i {
        0 => CellKind::Face,
        1 => CellKind::Vertex,
        _ => {
            return Err(StabilizerError::Precondition(
                "index must be 0 (face) or 1 (vertex)".into(),
            ))
        }
    };
    let base = sys.base_flag();
    let p1 = sys.apply_word(base, w);
    let p2 = sys.apply_word(base, w2);
    let c1 = cell_of(sys, p1, kind);
    let c2 = cell_of(sys, p2, kind);
    if c1 != c2 {
        return Err(StabilizerError::Precondition(format!(
            "paths end on different {kind:?} cells"
        )));
    }
    let (l1, l2) = kind.letters();
    let loop_word = Word::from_letters([l1, l2]).pow(c1.size as i64);
    let x1 = w.concat(&loop_word).concat(&w.inverse());
    if sys.apply_word(base, &x1) != base {
        return Err(StabilizerError::Precondition(
            "first conjugate does not stabilize the base flag".into(),
        ));
    }
    let x2 = w2.concat(&loop_word).concat(&w2.inverse());
    Ok(sys.apply_word(base, &x2) == base)
}

/// Breadth-first data over the infinite flag graph from the base flag,
/// out to a fixed distance horizon. Exploration order is deterministic:
/// FIFO queue, labels 0, 1, 2.
pub struct BfsTree {
    pub dist: HashMap<Flag, u32>,
    parent: HashMap<Flag, (Flag, Letter)>,
    pub horizon: u32,
}

impl BfsTree {
    pub fn explore(sys: &FlagSystem, horizon: u32) -> BfsTree {
        let base = sys.base_flag();
        let mut dist = HashMap::new();
        let mut parent = HashMap::new();
        let mut queue = VecDeque::from([base]);
        dist.insert(base, 0u32);
        while let Some(f) = queue.pop_front() {
            let d = dist[&f];
            if d == horizon {
                continue;
            }
            for l in Letter::ALL {
                let g = sys.adjacent(f, l);
                if !dist.contains_key(&g) {
                    dist.insert(g, d + 1);
                    parent.insert(g, (f, l));
                    queue.push_back(g);
                }
            }
        }
        BfsTree {
            dist,
            parent,
            horizon,
        }
    }

    /// The tree word from the base flag to `f`.
    pub fn word_to(&self, mut f: Flag) -> Option<Word> {
        let mut letters = Vec::new();
        while let Some(&(p, l)) = self.parent.get(&f) {
            letters.push(l);
            f = p;
        }
        if self.dist.get(&f) == Some(&0) {
            letters.reverse();
            Some(Word::from_letters(letters))
        } else {
            None
        }
    }
}

/// A witness that the stabilizer needs generators supported beyond any
/// fixed distance: a cell-loop conjugate around a short face far away.
pub struct WitnessReport {
    pub sigma: Word,
    pub face: CellRef,
    pub max_distance: u32,
}

/// Builds the witness word σ for distance bound `d`: the nearest face of
/// minimal co-degree all of whose flags lie beyond the d-ball, reached by
/// its breadth-first tree path. σ fixes Φ and its walk leaves the d-ball.
pub fn infinite_witness(sys: &FlagSystem, d: u32) -> Result<WitnessReport, StabilizerError> {
    if sys.id().is_regular() {
        return Err(StabilizerError::Precondition(
            "witness construction applies to uniform tilings only".into(),
        ));
    }
    let min_codeg = (0..sys.class_count() as u32)
        .map(|c| sys.co_degree(c))
        .min()
        .unwrap();
    assert!(
        min_codeg < sys.cover().0,
        "short faces must be proper in the cover"
    );
    let horizon = d + 4 * min_codeg + 6;
    let bfs = BfsTree::explore(sys, horizon);
    // Candidate faces: all boundary flags beyond the d-ball. Undiscovered
    // flags are beyond the horizon >= d, hence fine.
    let mut best: Option<(u32, CellRef, Flag)> = None;
    for (&f, &df) in &bfs.dist {
        if sys.co_degree(f.class) != min_codeg || df > horizon.saturating_sub(2 * min_codeg) {
            continue;
        }
        let cell = cell_of(sys, f, CellKind::Face);
        let boundary = cell_boundary(sys, &cell);
        let dists: Vec<Option<u32>> = boundary.iter().map(|g| bfs.dist.get(g).copied()).collect();
        if dists.iter().any(|x| matches!(x, Some(dd) if *dd <= d)) {
            continue;
        }
        // Entry flag: least distance, ties by flag order.
        let entry = boundary
            .iter()
            .filter_map(|&g| bfs.dist.get(&g).map(|&dd| (dd, flag_key(g), g)))
            .min()
            .map(|(dd, _, g)| (dd, g));
        let Some((dd, entry_flag)) = entry else {
            continue;
        };
        let candidate = (dd, cell, entry_flag);
        best = Some(match best {
            None => candidate,
            Some(cur) => {
                if (candidate.0, flag_key(candidate.1.anchor)) < (cur.0, flag_key(cur.1.anchor)) {
                    candidate
                } else {
                    cur
                }
            }
        });
    }
    let (_, cell, entry) = best.expect("a fully-outside short face must exist within the horizon");
    let path = bfs.word_to(entry).expect("entry flag must be in the tree");
    let loop_word = Word::lit("ab").pow(cell.size as i64);
    let sigma = path.concat(&loop_word).concat(&path.inverse());
    let base = sys.base_flag();
    debug_assert_eq!(sys.apply_word(base, &sigma), base);
    let walk = sys.walk_of(base, &sigma);
    let max_distance = walk
        .flags
        .iter()
        .map(|f| bfs.dist.get(f).copied().expect("walk stays inside horizon"))
        .max()
        .unwrap();
    Ok(WitnessReport {
        sigma,
        face: cell,
        max_distance,
    })
}
