//! Geometric construction of the eleven tilings and their flag tables.
//!
//! Each tiling is rebuilt from scratch at desk scale: a seed lists the
//! translation lattice and the exact vertex positions of one fundamental
//! cell; edges are the unit-distance pairs; faces come from tracing the
//! rotation system. Flags are incident (vertex, edge, face) triples and
//! i-adjacency is computed from the incidence structure, then everything
//! is quotiented by the translation lattice.
//!
//! For a uniform tiling the builder then searches the base-flag
//! candidates allowed by its catalog description, keeps the first one
//! for which every catalog generator validates under the flag action,
//! and re-quotients by the lattice spanned by the translations of the
//! catalog words β and γ. The resulting tables are what `FlagSystem::build`
//! loads from static data; `flagwalk export` re-runs this construction.

use crate::exact::{angle_cmp, Ext, Pt};
use crate::stabilizer::{catalog_data, CatalogData};
use crate::tiling::{emit_all_tables, Flag, FlagSystem, TilingId};
use crate::word::{parse_word, Word};
use std::collections::{BTreeMap, BTreeSet};

/// Fundamental-cell data for one tiling: lattice basis, vertex positions,
/// and the cover type {p, q}.
pub struct Seed {
    pub t1: Pt,
    pub t2: Pt,
    pub verts: Vec<Pt>,
    pub cover: (u32, u32),
}

fn pt(x: Ext, y: Ext) -> Pt {
    Pt::new(x, y)
}

/// Exact seed geometry, edge length 1 throughout.
pub fn seed(id: TilingId) -> Seed {
    let q = Ext::quad;
    match id {
        TilingId::Triangular => Seed {
            t1: pt(q(1, 0, 0, 0, 1), q(0, 0, 0, 0, 1)),
            t2: pt(q(1, 0, 0, 0, 2), q(0, 0, 1, 0, 2)),
            verts: vec![pt(q(0, 0, 0, 0, 1), q(0, 0, 0, 0, 1))],
            cover: (3, 6),
        },
        TilingId::Square => Seed {
            t1: pt(q(1, 0, 0, 0, 1), q(0, 0, 0, 0, 1)),
            t2: pt(q(0, 0, 0, 0, 1), q(1, 0, 0, 0, 1)),
            verts: vec![pt(q(0, 0, 0, 0, 1), q(0, 0, 0, 0, 1))],
            cover: (4, 4),
        },
        TilingId::Hexagonal => Seed {
            t1: pt(q(0, 0, 1, 0, 1), q(0, 0, 0, 0, 1)),
            t2: pt(q(0, 0, 1, 0, 2), q(3, 0, 0, 0, 2)),
            verts: vec![
                pt(q(0, 0, 0, 0, 1), q(0, 0, 0, 0, 1)),
                pt(q(0, 0, 1, 0, 2), q(1, 0, 0, 0, 2)),
            ],
            cover: (6, 3),
        },
        TilingId::TriHexagonal => Seed {
            t1: pt(q(2, 0, 0, 0, 1), q(0, 0, 0, 0, 1)),
            t2: pt(q(1, 0, 0, 0, 1), q(0, 0, 1, 0, 1)),
            verts: vec![
                pt(q(1, 0, 0, 0, 1), q(0, 0, 0, 0, 1)),
                pt(q(1, 0, 0, 0, 2), q(0, 0, 1, 0, 2)),
                pt(q(-1, 0, 0, 0, 2), q(0, 0, 1, 0, 2)),
            ],
            cover: (6, 4),
        },
        TilingId::TruncatedSquare => Seed {
            t1: pt(q(1, 1, 0, 0, 1), q(0, 0, 0, 0, 1)),
            t2: pt(q(0, 0, 0, 0, 1), q(1, 1, 0, 0, 1)),
            verts: vec![
                pt(q(1, 1, 0, 0, 2), q(1, 0, 0, 0, 2)),
                pt(q(1, 1, 0, 0, 2), q(-1, 0, 0, 0, 2)),
                pt(q(1, 0, 0, 0, 2), q(1, 1, 0, 0, 2)),
                pt(q(-1, 0, 0, 0, 2), q(1, 1, 0, 0, 2)),
            ],
            cover: (8, 3),
        },
        TilingId::TruncatedHexagonal => Seed {
            t1: pt(q(3, 0, 2, 0, 1), q(0, 0, 0, 0, 1)),
            t2: pt(q(3, 0, 2, 0, 2), q(6, 0, 3, 0, 2)),
            verts: vec![
                // Around the degree-3 lattice point at the origin.
                pt(q(0, 0, 1, 0, 2), q(1, 0, 0, 0, 2)),
                pt(q(0, 0, -1, 0, 2), q(1, 0, 0, 0, 2)),
                pt(q(0, 0, 0, 0, 1), q(-1, 0, 0, 0, 1)),
                // Around its neighbor at (3 + 2√3, 2 + √3)/2.
                pt(q(3, 0, 1, 0, 2), q(1, 0, 1, 0, 2)),
                pt(q(3, 0, 3, 0, 2), q(1, 0, 1, 0, 2)),
                pt(q(3, 0, 2, 0, 2), q(4, 0, 1, 0, 2)),
            ],
            cover: (12, 3),
        },
        TilingId::RhombiTriHexagonal => Seed {
            t1: pt(q(1, 0, 1, 0, 1), q(0, 0, 0, 0, 1)),
            t2: pt(q(1, 0, 1, 0, 2), q(3, 0, 1, 0, 2)),
            verts: vec![
                pt(q(0, 0, 1, 0, 2), q(1, 0, 0, 0, 2)),
                pt(q(0, 0, 0, 0, 1), q(1, 0, 0, 0, 1)),
                pt(q(0, 0, -1, 0, 2), q(1, 0, 0, 0, 2)),
                pt(q(0, 0, -1, 0, 2), q(-1, 0, 0, 0, 2)),
                pt(q(0, 0, 0, 0, 1), q(-1, 0, 0, 0, 1)),
                pt(q(0, 0, 1, 0, 2), q(-1, 0, 0, 0, 2)),
            ],
            cover: (12, 4),
        },
        TilingId::ElongatedTriangular => Seed {
            t1: pt(q(1, 0, 0, 0, 1), q(0, 0, 0, 0, 1)),
            t2: pt(q(1, 0, 0, 0, 2), q(2, 0, 1, 0, 2)),
            verts: vec![
                pt(q(0, 0, 0, 0, 1), q(0, 0, 0, 0, 1)),
                pt(q(0, 0, 0, 0, 1), q(1, 0, 0, 0, 1)),
            ],
            cover: (12, 5),
        },
        TilingId::SnubSquare => Seed {
            t1: pt(q(0, 1, 0, 1, 2), q(0, 0, 0, 0, 1)),
            t2: pt(q(0, 0, 0, 0, 1), q(0, 1, 0, 1, 2)),
            verts: vec![
                pt(q(0, 1, 0, 0, 4), q(0, 0, 0, 1, 4)),
                pt(q(0, 0, 0, -1, 4), q(0, 1, 0, 0, 4)),
                pt(q(0, -1, 0, 0, 4), q(0, 0, 0, -1, 4)),
                pt(q(0, 0, 0, 1, 4), q(0, -1, 0, 0, 4)),
            ],
            cover: (12, 5),
        },
        TilingId::TruncatedTriHexagonal => Seed {
            t1: pt(q(3, 0, 1, 0, 1), q(0, 0, 0, 0, 1)),
            t2: pt(q(3, 0, 1, 0, 2), q(3, 0, 3, 0, 2)),
            verts: vec![
                pt(q(2, 0, 1, 0, 2), q(1, 0, 0, 0, 2)),
                pt(q(1, 0, 1, 0, 2), q(1, 0, 1, 0, 2)),
                pt(q(1, 0, 0, 0, 2), q(2, 0, 1, 0, 2)),
                pt(q(-1, 0, 0, 0, 2), q(2, 0, 1, 0, 2)),
                pt(q(-1, 0, -1, 0, 2), q(1, 0, 1, 0, 2)),
                pt(q(-2, 0, -1, 0, 2), q(1, 0, 0, 0, 2)),
                pt(q(-2, 0, -1, 0, 2), q(-1, 0, 0, 0, 2)),
                pt(q(-1, 0, -1, 0, 2), q(-1, 0, -1, 0, 2)),
                pt(q(-1, 0, 0, 0, 2), q(-2, 0, -1, 0, 2)),
                pt(q(1, 0, 0, 0, 2), q(-2, 0, -1, 0, 2)),
                pt(q(1, 0, 1, 0, 2), q(-1, 0, -1, 0, 2)),
                pt(q(2, 0, 1, 0, 2), q(-1, 0, 0, 0, 2)),
            ],
            cover: (12, 3),
        },
        TilingId::SnubTriHexagonal => Seed {
            // Unit triangular lattice minus the index-7 sublattice spanned
            // by (5/2, √3/2) and (1/2, 3√3/2); one fixed handedness.
            t1: pt(q(5, 0, 0, 0, 2), q(0, 0, 1, 0, 2)),
            t2: pt(q(1, 0, 0, 0, 2), q(0, 0, 3, 0, 2)),
            verts: vec![
                pt(q(1, 0, 0, 0, 1), q(0, 0, 0, 0, 1)),
                pt(q(-1, 0, 0, 0, 1), q(0, 0, 0, 0, 1)),
                pt(q(1, 0, 0, 0, 2), q(0, 0, 1, 0, 2)),
                pt(q(-1, 0, 0, 0, 2), q(0, 0, 1, 0, 2)),
                pt(q(1, 0, 0, 0, 2), q(0, 0, -1, 0, 2)),
                pt(q(-1, 0, 0, 0, 2), q(0, 0, -1, 0, 2)),
            ],
            cover: (6, 5),
        },
    }
}

/// A finite exact patch of a tiling: vertices, unit edges, traced faces.
pub struct Geometry {
    pub pos: Vec<Pt>,
    /// Rotation system: neighbors of each vertex sorted counterclockwise.
    pub nbrs: Vec<Vec<usize>>,
    /// Interior faces as CCW vertex cycles.
    pub faces: Vec<Vec<usize>>,
    /// Directed edge (u, v) -> index of the face with that edge on its
    /// CCW boundary. Both directions present only for interior edges.
    pub face_of: BTreeMap<(usize, usize), usize>,
}

/// Builds the unit-distance geometry over a (2k+1)² window of cells.
pub fn construct(seed: &Seed, k: i64) -> Geometry {
    // Replicate and deduplicate vertices.
    let mut vert_ix: BTreeMap<Pt, usize> = BTreeMap::new();
    let mut pos: Vec<Pt> = Vec::new();
    for i in -k..=k {
        for j in -k..=k {
            let shift = seed.t1.scale_int(i) + seed.t2.scale_int(j);
            for v in &seed.verts {
                let p = *v + shift;
                vert_ix.entry(p).or_insert_with(|| {
                    pos.push(p);
                    pos.len() - 1
                });
            }
        }
    }
    // Unit-distance edges via a coarse float grid, confirmed exactly.
    let mut grid: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, p) in pos.iter().enumerate() {
        let (x, y) = p.to_f64();
        grid.entry((x.floor() as i64, y.floor() as i64)).or_default().push(i);
    }
    let one = Ext::one();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); pos.len()];
    for (i, p) in pos.iter().enumerate() {
        let (x, y) = p.to_f64();
        let (gx, gy) = (x.floor() as i64, y.floor() as i64);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = grid.get(&(gx + dx, gy + dy)) else {
                    continue;
                };
                for &j in bucket {
                    if j <= i {
                        continue;
                    }
                    let (qx, qy) = pos[j].to_f64();
                    let d2 = (qx - x) * (qx - x) + (qy - y) * (qy - y);
                    if (d2 - 1.0).abs() < 1e-6 && p.dist2(&pos[j]) == one {
                        nbrs[i].push(j);
                        nbrs[j].push(i);
                    }
                }
            }
        }
    }
    for v in 0..pos.len() {
        let origin = pos[v];
        nbrs[v].sort_by(|&a, &b| angle_cmp(&(pos[a] - origin), &(pos[b] - origin)));
    }
    // Trace faces: interior faces are CCW cycles all of whose vertices
    // have the full degree q.
    let q_full = seed.cover.1 as usize;
    let mut face_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let next_in_face = |u: usize, v: usize| -> (usize, usize) {
        let ring = &nbrs[v];
        let idx = ring.iter().position(|&x| x == u).unwrap();
        let w = ring[(idx + ring.len() - 1) % ring.len()];
        (v, w)
    };
    for u in 0..pos.len() {
        for vi in 0..nbrs[u].len() {
            let v = nbrs[u][vi];
            if visited.contains(&(u, v)) {
                continue;
            }
            let mut cycle: Vec<(usize, usize)> = Vec::new();
            let mut cur = (u, v);
            let mut ok = true;
            loop {
                cycle.push(cur);
                visited.insert(cur);
                cur = next_in_face(cur.0, cur.1);
                if cycle.len() > 24 {
                    ok = false; // boundary artifact, not a polygon
                    while cur != (u, v) {
                        visited.insert(cur);
                        cycle.push(cur);
                        cur = next_in_face(cur.0, cur.1);
                        if cycle.len() > 100_000 {
                            panic!("face trace runaway");
                        }
                    }
                    break;
                }
                if cur == (u, v) {
                    break;
                }
            }
            if !ok {
                continue;
            }
            let verts: Vec<usize> = cycle.iter().map(|&(a, _)| a).collect();
            if verts.iter().any(|&w| nbrs[w].len() != q_full) {
                continue;
            }
            // CCW check: positive signed area.
            let mut area2 = Ext::zero();
            for i in 0..verts.len() {
                let a = pos[verts[i]];
                let b = pos[verts[(i + 1) % verts.len()]];
                area2 = area2 + a.cross(&b);
            }
            if area2.sign() <= 0 {
                continue;
            }
            let fid = faces.len();
            for &(a, b) in &cycle {
                face_of.insert((a, b), fid);
            }
            faces.push(verts);
        }
    }
    Geometry {
        pos,
        nbrs,
        faces,
        face_of,
    }
}

/// A geometric flag: vertex, other endpoint of its edge, face index.
pub type FlagKey = (usize, usize, usize);

impl Geometry {
    fn face_centroid(&self, f: usize) -> Pt {
        let verts = &self.faces[f];
        let mut s = Pt::zero();
        for &v in verts {
            s = s + self.pos[v];
        }
        let inv = Ext::frac(1, verts.len() as i64);
        Pt::new(s.x * inv, s.y * inv)
    }

    fn flag_points(&self, key: FlagKey) -> [Pt; 3] {
        let (v, u, f) = key;
        let half = Ext::frac(1, 2);
        let mid = Pt::new(
            (self.pos[v].x + self.pos[u].x) * half,
            (self.pos[v].y + self.pos[u].y) * half,
        );
        [self.pos[v], mid, self.face_centroid(f)]
    }

    fn flag_centroid(&self, key: FlagKey) -> Pt {
        let [a, b, c] = self.flag_points(key);
        let third = Ext::frac(1, 3);
        let s = a + b + c;
        Pt::new(s.x * third, s.y * third)
    }

    /// 0-, 1-, 2-adjacent geometric flags. Returns None near the window
    /// boundary where the neighbor face is missing.
    fn adjacent(&self, key: FlagKey, label: usize) -> Option<FlagKey> {
        let (v, u, f) = key;
        match label {
            0 => Some((u, v, f)),
            1 => {
                let cyc = &self.faces[f];
                let n = cyc.len();
                let i = cyc.iter().position(|&x| x == v)?;
                let prev = cyc[(i + n - 1) % n];
                let next = cyc[(i + 1) % n];
                let other = if u == prev {
                    next
                } else if u == next {
                    prev
                } else {
                    return None;
                };
                Some((v, other, f))
            }
            2 => {
                let f1 = self.face_of.get(&(u, v));
                let f2 = self.face_of.get(&(v, u));
                let other = match (f1, f2) {
                    (Some(&a), Some(&b)) if a == f => Some(b),
                    (Some(&a), Some(&b)) if b == f => Some(a),
                    _ => None,
                }?;
                Some((v, u, other))
            }
            _ => unreachable!(),
        }
    }
}

/// Quotient of a geometry by a lattice: flag classes with adjacency
/// offsets, embeddings at the origin cell, and face orbits.
pub struct Quotient {
    pub adj: Vec<[(u32, i64, i64); 3]>,
    pub tri: Vec<[Pt; 3]>,
    pub face_orbit: Vec<(u32, u32)>,
    pub class_keys: Vec<FlagKey>,
    frac_to_class: BTreeMap<(Ext, Ext), u32>,
    l1: Pt,
    l2: Pt,
}

impl Quotient {
    /// Lattice coordinates of a point: p = s·l1 + t·l2.
    fn lattice_coords(&self, p: &Pt) -> (Ext, Ext) {
        let den = self.l1.cross(&self.l2);
        (p.cross(&self.l2) / den, self.l1.cross(p) / den)
    }

    /// Locates a geometric flag in the quotient.
    pub fn locate(&self, geo: &Geometry, key: FlagKey) -> Option<Flag> {
        self.locate_point(&geo.flag_centroid(key))
    }

    /// Locates a flag by the exact centroid of its flag triangle.
    pub fn locate_point(&self, p: &Pt) -> Option<Flag> {
        let (s, t) = self.lattice_coords(p);
        let cell = (s.floor(), t.floor());
        let frac = (s - Ext::from_int(cell.0), t - Ext::from_int(cell.1));
        let class = *self.frac_to_class.get(&frac)?;
        Some(Flag::new(class, cell))
    }
}

/// Quotients the geometry by the lattice spanned by l1, l2.
pub fn quotient(geo: &Geometry, l1: Pt, l2: Pt) -> Quotient {
    let mut q = Quotient {
        adj: Vec::new(),
        tri: Vec::new(),
        face_orbit: Vec::new(),
        class_keys: Vec::new(),
        frac_to_class: BTreeMap::new(),
        l1,
        l2,
    };
    // Enumerate every geometric flag of every interior face; keep those in
    // the origin cell as class representatives, ordered by fractional
    // lattice position.
    let mut reps: Vec<((Ext, Ext), FlagKey)> = Vec::new();
    for (fid, cyc) in geo.faces.iter().enumerate() {
        let n = cyc.len();
        for i in 0..n {
            let v = cyc[i];
            for u in [cyc[(i + n - 1) % n], cyc[(i + 1) % n]] {
                let key = (v, u, fid);
                let (s, t) = q.lattice_coords(&geo.flag_centroid(key));
                if s.sign() >= 0
                    && t.sign() >= 0
                    && (s - Ext::one()).sign() < 0
                    && (t - Ext::one()).sign() < 0
                {
                    reps.push(((s, t), key));
                }
            }
        }
    }
    reps.sort_by(|a, b| a.0.cmp(&b.0));
    for pair in reps.windows(2) {
        assert!(pair[0].0 != pair[1].0, "duplicate flag class in quotient");
    }
    for (i, (frac, key)) in reps.iter().enumerate() {
        q.frac_to_class.insert(frac.clone(), i as u32);
        q.class_keys.push(*key);
    }
    // Adjacency rows and embeddings.
    let mut face_orbit_ids: BTreeMap<(Ext, Ext), u32> = BTreeMap::new();
    let mut pending_orbits: Vec<(Ext, Ext)> = Vec::new();
    for key in &q.class_keys {
        let (s, t) = q.lattice_coords(&geo.face_centroid(key.2));
        let frac = (s - Ext::from_int(s.floor()), t - Ext::from_int(t.floor()));
        pending_orbits.push(frac);
    }
    {
        let mut sorted: Vec<(Ext, Ext)> = pending_orbits.clone();
        sorted.sort();
        sorted.dedup();
        for (i, f) in sorted.into_iter().enumerate() {
            face_orbit_ids.insert(f, i as u32);
        }
    }
    for (ci, key) in q.class_keys.iter().enumerate() {
        let mut row = [(0u32, 0i64, 0i64); 3];
        for label in 0..3 {
            let nk = geo
                .adjacent(*key, label)
                .unwrap_or_else(|| panic!("window too small: class {ci} label {label}"));
            let nf = q
                .locate(geo, nk)
                .unwrap_or_else(|| panic!("window too small: neighbor of class {ci} unresolved"));
            row[label] = (nf.class, nf.cell.0, nf.cell.1);
        }
        q.adj.push(row);
        q.tri.push(geo.flag_points(*key));
        let orbit = face_orbit_ids[&pending_orbits[ci]];
        q.face_orbit.push((orbit, geo.faces[key.2].len() as u32));
    }
    q
}

fn assemble(id: TilingId, seed: &Seed, q: Quotient, base_class: u32) -> FlagSystem {
    FlagSystem {
        id,
        base_class,
        cover: seed.cover,
        vertex_degree: seed.cover.1,
        adj: q.adj,
        tri: q.tri,
        face_orbit: q.face_orbit,
        t1: q.l1,
        t2: q.l2,
    }
}

/// Whether a class matches the textual base-flag description of the
/// tiling's catalog (face sizes of the flag and of its 2-adjacent flag,
/// plus the extra condition the snub square catalog imposes).
fn base_candidate(sys: &FlagSystem, class: u32) -> bool {
    let own = sys.co_degree(class);
    let other = {
        let g = sys.adjacent(Flag::new(class, (0, 0)), crate::word::Letter::C);
        sys.co_degree(g.class)
    };
    match sys.id() {
        TilingId::TriHexagonal => own == 6,
        TilingId::TruncatedSquare => own == 8 && other == 8,
        TilingId::TruncatedHexagonal => own == 12 && other == 12,
        TilingId::RhombiTriHexagonal => own == 3 && other == 4,
        TilingId::ElongatedTriangular => own == 4 && other == 3,
        TilingId::SnubSquare => {
            let cbc = sys.apply_word(Flag::new(class, (0, 0)), &Word::lit("cbc"));
            own == 4 && sys.co_degree(cbc.class) == 4
        }
        TilingId::TruncatedTriHexagonal => own == 12 && other == 6,
        TilingId::SnubTriHexagonal => own == 3 && other == 6,
        _ => false,
    }
}

/// Result of validating the catalog words at a candidate base class.
struct CatalogFit {
    beta_cell: (i64, i64),
    gamma_cell: (i64, i64),
}

/// Tries to realize every catalog generator as a stabilizer element of
/// the candidate flag. Each conjugated word is read both ways (conjugator
/// inverted first, as the exponent notation literally expands, or taken
/// verbatim as the outbound path); the reading that fixes the flag wins.
fn validate_catalog(sys: &FlagSystem, class: u32, data: &CatalogData) -> Option<CatalogFit> {
    let flag = Flag::new(class, (0, 0));
    for (cell_expr, conj_expr) in data.alphas {
        let cell = parse_word(cell_expr).expect("catalog cell word");
        let conj = parse_word(conj_expr).expect("catalog conjugator");
        let ok = [conj.inverse(), conj.clone()].iter().any(|outbound| {
            let realized = outbound.concat(&cell).concat(&outbound.inverse());
            sys.apply_word(flag, &realized) == flag
        });
        if !ok {
            return None;
        }
    }
    let beta = parse_word(data.beta).expect("catalog beta");
    let gamma = parse_word(data.gamma).expect("catalog gamma");
    let b = sys.apply_word(flag, &beta);
    let g = sys.apply_word(flag, &gamma);
    if b.class != class || g.class != class {
        return None;
    }
    let det = b.cell.0 * g.cell.1 - b.cell.1 * g.cell.0;
    if det == 0 {
        return None;
    }
    Some(CatalogFit {
        beta_cell: b.cell,
        gamma_cell: g.cell,
    })
}

/// Full geometric build of one tiling: primitive quotient, base-flag
/// search, and re-quotient by the catalog lattice for uniform tilings.
pub fn build_from_geometry(id: TilingId) -> FlagSystem {
    let sd = seed(id);
    let geo = construct(&sd, 3);
    let q0 = quotient(&geo, sd.t1, sd.t2);
    for key in &q0.class_keys {
        assert_eq!(
            geo.nbrs[key.0].len() as u32,
            sd.cover.1,
            "vertex degree mismatch in {}",
            id.name()
        );
    }
    if id.is_regular() {
        let sys = assemble(id, &sd, q0, 0);
        sys.validate().expect("regular tiling tables invalid");
        return sys;
    }
    let data = catalog_data(id).expect("uniform tiling has catalog data");
    let class_keys = q0.class_keys.clone();
    let sys0 = assemble(id, &sd, q0, 0);
    let mut found: Option<(u32, CatalogFit)> = None;
    for class in 0..sys0.class_count() as u32 {
        if !base_candidate(&sys0, class) {
            continue;
        }
        if let Some(fit) = validate_catalog(&sys0, class, data) {
            found = Some((class, fit));
            break;
        }
    }
    let (base0, fit) = found.unwrap_or_else(|| {
        panic!("no base flag of {} validates its catalog", id.name())
    });
    let base_centroid = geo.flag_centroid(class_keys[base0 as usize]);
    // Lattice spanned by the β and γ translations.
    let l1 = sd.t1.scale_int(fit.beta_cell.0) + sd.t2.scale_int(fit.beta_cell.1);
    let l2 = sd.t1.scale_int(fit.gamma_cell.0) + sd.t2.scale_int(fit.gamma_cell.1);
    let span = fit.beta_cell.0.abs()
        + fit.beta_cell.1.abs()
        + fit.gamma_cell.0.abs()
        + fit.gamma_cell.1.abs();
    let k = 3.max(span + 2);
    let geo2 = if k > 3 { construct(&sd, k) } else { geo };
    let qf = quotient(&geo2, l1, l2);
    let base = qf
        .locate_point(&base_centroid)
        .unwrap_or_else(|| panic!("base flag of {} lost in re-quotient", id.name()));
    let sys = assemble(id, &sd, qf, base.class);
    sys.validate().expect("uniform tiling tables invalid");
    // The catalog lattice makes β and γ the unit steps; re-check.
    let fit2 = validate_catalog(&sys, base.class, data)
        .expect("catalog no longer validates after re-quotient");
    assert_eq!(fit2.beta_cell, (1, 0), "beta must be the first unit step");
    assert_eq!(fit2.gamma_cell, (0, 1), "gamma must be the second unit step");
    sys
}

/// Rebuilds every tiling from geometry and emits the static table text.
pub fn regenerate_tables() -> String {
    let mut map = BTreeMap::new();
    for id in TilingId::ALL {
        map.insert(id, build_from_geometry(id));
    }
    emit_all_tables(&map)
}

#[cfg(test)]
mod debug_tests {
    use super::*;
    use crate::word::Letter;

    #[test]
    fn debug_trihex() {
        let id = TilingId::TriHexagonal;
        let sd = seed(id);
        let geo = construct(&sd, 3);
        println!("verts={} faces={}", geo.pos.len(), geo.faces.len());
        let mut sizes = BTreeMap::new();
        for f in &geo.faces {
            *sizes.entry(f.len()).or_insert(0usize) += 1;
        }
        println!("face sizes: {sizes:?}");
        let q0 = quotient(&geo, sd.t1, sd.t2);
        println!("classes={}", q0.adj.len());
        let sys0 = assemble(id, &sd, q0, 0);
        sys0.validate().unwrap();
        println!("validation ok");
        let data = catalog_data(id).unwrap();
        for class in 0..sys0.class_count() as u32 {
            if !base_candidate(&sys0, class) {
                continue;
            }
            let flag = Flag::new(class, (0, 0));
            let mut line = format!("cand {class}: ");
            for (cell_expr, conj_expr) in data.alphas {
                let cell = parse_word(cell_expr).unwrap();
                let conj = parse_word(conj_expr).unwrap();
                let lit = conj.inverse().concat(&cell).concat(&conj);
                let out = conj.concat(&cell).concat(&conj.inverse());
                line += &format!(
                    "[lit:{} out:{}] ",
                    sys0.apply_word(flag, &lit) == flag,
                    sys0.apply_word(flag, &out) == flag
                );
            }
            let beta = parse_word(data.beta).unwrap();
            let gamma = parse_word(data.gamma).unwrap();
            let b = sys0.apply_word(flag, &beta);
            let g = sys0.apply_word(flag, &gamma);
            line += &format!("beta->{b} gamma->{g}");
            println!("{line}");
        }
        let base = Flag::new(0, (0, 0));
        for l in Letter::ALL {
            println!("adj 0 {} -> {}", l.index(), sys0.adjacent(base, l));
        }
    }
}
