//! The eleven vertex-transitive tilings as lattice-periodic flag systems.
//!
//! A flag is a (vertex, edge, face) incidence triple. Per tiling we store
//! one adjacency table row per flag class (flags modulo the translation
//! lattice) together with an exact planar embedding. The lattice basis of
//! a uniform tiling is the pair of translations induced by its catalog
//! words β and γ, so those words act as the unit lattice steps; regular
//! tilings use their standard unit translations.

use crate::exact::{orient, Ext, Pt};
use crate::word::{Letter, Word};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Names of the eleven edge-to-edge vertex-transitive tilings.
/// The first eight are the uniform (non-regular) tilings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum TilingId {
    TriHexagonal,          // 3.6.3.6
    TruncatedSquare,       // 4.8.8
    TruncatedHexagonal,    // 3.12.12
    RhombiTriHexagonal,    // 3.4.6.4
    ElongatedTriangular,   // 3.3.3.4.4
    SnubSquare,            // 3.3.4.3.4
    TruncatedTriHexagonal, // 4.6.12
    SnubTriHexagonal,      // 3.3.3.3.6
    Triangular,            // 3^6
    Square,                // 4^4
    Hexagonal,             // 6^3
}

impl TilingId {
    pub const ALL: [TilingId; 11] = [
        TilingId::TriHexagonal,
        TilingId::TruncatedSquare,
        TilingId::TruncatedHexagonal,
        TilingId::RhombiTriHexagonal,
        TilingId::ElongatedTriangular,
        TilingId::SnubSquare,
        TilingId::TruncatedTriHexagonal,
        TilingId::SnubTriHexagonal,
        TilingId::Triangular,
        TilingId::Square,
        TilingId::Hexagonal,
    ];

    pub const UNIFORM: [TilingId; 8] = [
        TilingId::TriHexagonal,
        TilingId::TruncatedSquare,
        TilingId::TruncatedHexagonal,
        TilingId::RhombiTriHexagonal,
        TilingId::ElongatedTriangular,
        TilingId::SnubSquare,
        TilingId::TruncatedTriHexagonal,
        TilingId::SnubTriHexagonal,
    ];

    pub const REGULAR: [TilingId; 3] =
        [TilingId::Triangular, TilingId::Square, TilingId::Hexagonal];

    /// Vertex-configuration name, e.g. "3.6.3.6" or "4^4".
    pub fn name(self) -> &'static str {
        match self {
            TilingId::TriHexagonal => "3.6.3.6",
            TilingId::TruncatedSquare => "4.8.8",
            TilingId::TruncatedHexagonal => "3.12.12",
            TilingId::RhombiTriHexagonal => "3.4.6.4",
            TilingId::ElongatedTriangular => "3.3.3.4.4",
            TilingId::SnubSquare => "3.3.4.3.4",
            TilingId::TruncatedTriHexagonal => "4.6.12",
            TilingId::SnubTriHexagonal => "3.3.3.3.6",
            TilingId::Triangular => "3^6",
            TilingId::Square => "4^4",
            TilingId::Hexagonal => "6^3",
        }
    }

    pub fn from_name(s: &str) -> Option<TilingId> {
        let s = s.trim();
        for id in TilingId::ALL {
            if id.name() == s {
                return Some(id);
            }
        }
        // Expanded aliases for the regular tilings.
        match s {
            "3.3.3.3.3.3" => Some(TilingId::Triangular),
            "4.4.4.4" => Some(TilingId::Square),
            "6.6.6" => Some(TilingId::Hexagonal),
            _ => None,
        }
    }

    pub fn is_regular(self) -> bool {
        TilingId::REGULAR.contains(&self)
    }

    pub fn is_uniform(self) -> bool {
        !self.is_regular()
    }
}

impl fmt::Display for TilingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A flag: class index plus lattice cell.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Flag {
    pub class: u32,
    pub cell: (i64, i64),
}

impl Flag {
    pub fn new(class: u32, cell: (i64, i64)) -> Flag {
        Flag { class, cell }
    }

    pub fn translated(self, d: (i64, i64)) -> Flag {
        Flag::new(self.class, (self.cell.0 + d.0, self.cell.1 + d.1))
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@({},{})", self.class, self.cell.0, self.cell.1)
    }
}

/// An alternating sequence of flags and edge labels.
#[derive(Clone, Debug)]
pub struct Walk {
    pub flags: Vec<Flag>,
    pub labels: Vec<Letter>,
}

impl Walk {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn start(&self) -> Flag {
        self.flags[0]
    }

    pub fn end(&self) -> Flag {
        *self.flags.last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }
}

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("table parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("tiling {0} not present in table data")]
    Missing(&'static str),
    #[error("invariant violated for {tiling}: {msg}")]
    Invariant { tiling: &'static str, msg: String },
}

/// A tiling's flags modulo its translation lattice, with exact embedding.
#[derive(Clone)]
pub struct FlagSystem {
    pub(crate) id: TilingId,
    pub(crate) base_class: u32,
    pub(crate) cover: (u32, u32),
    pub(crate) vertex_degree: u32,
    /// Per class and label: (neighbor class, lattice offset).
    pub(crate) adj: Vec<[(u32, i64, i64); 3]>,
    /// Per class: vertex point, edge midpoint, face centroid at cell (0,0).
    pub(crate) tri: Vec<[Pt; 3]>,
    /// Per class: (face orbit id, face co-degree).
    pub(crate) face_orbit: Vec<(u32, u32)>,
    pub(crate) t1: Pt,
    pub(crate) t2: Pt,
}

impl FlagSystem {
    /// Loads the flag system from the static tables. The tables were
    /// generated by the geometric builder (`flagwalk export` regenerates
    /// and re-verifies them) and are validated again here.
    pub fn build(id: TilingId) -> FlagSystem {
        let sys = parse_tables(EMBEDDED_TABLES)
            .unwrap_or_else(|e| panic!("embedded tables corrupt: {e}"))
            .remove(&id)
            .unwrap_or_else(|| panic!("embedded tables missing {}", id.name()));
        sys.validate().expect("embedded tables fail validation");
        sys
    }

    pub fn id(&self) -> TilingId {
        self.id
    }

    pub fn class_count(&self) -> usize {
        self.adj.len()
    }

    pub fn base_flag(&self) -> Flag {
        Flag::new(self.base_class, (0, 0))
    }

    pub fn cover(&self) -> (u32, u32) {
        self.cover
    }

    pub fn vertex_degree(&self) -> u32 {
        self.vertex_degree
    }

    /// (face orbit id, co-degree) of the face of a flag class.
    pub fn face_orbit(&self, class: u32) -> (u32, u32) {
        self.face_orbit[class as usize]
    }

    pub fn co_degree(&self, class: u32) -> u32 {
        self.face_orbit[class as usize].1
    }

    pub fn lattice_basis(&self) -> (Pt, Pt) {
        (self.t1.clone(), self.t2.clone())
    }

    /// The i-adjacent flag.
    pub fn adjacent(&self, f: Flag, i: Letter) -> Flag {
        let (c, dx, dy) = self.adj[f.class as usize][i.index()];
        Flag::new(c, (f.cell.0 + dx, f.cell.1 + dy))
    }

    /// Applies a word to a flag, first letter first.
    pub fn apply_word(&self, f: Flag, w: &Word) -> Flag {
        w.letters().iter().fold(f, |g, &l| self.adjacent(g, l))
    }

    /// Whether a word fixes the base flag.
    pub fn fixes_base(&self, w: &Word) -> bool {
        self.apply_word(self.base_flag(), w) == self.base_flag()
    }

    /// The walk determined by a word starting at `start`.
    pub fn walk_of(&self, start: Flag, w: &Word) -> Walk {
        let mut flags = Vec::with_capacity(w.len() + 1);
        flags.push(start);
        let mut cur = start;
        for &l in w.letters() {
            cur = self.adjacent(cur, l);
            flags.push(cur);
        }
        Walk {
            flags,
            labels: w.letters().to_vec(),
        }
    }

    fn lattice_shift(&self, cell: (i64, i64)) -> Pt {
        self.t1.scale_int(cell.0) + self.t2.scale_int(cell.1)
    }

    /// The flag triangle (vertex, edge midpoint, face centroid) of a flag.
    pub fn embed(&self, f: Flag) -> [Pt; 3] {
        let shift = self.lattice_shift(f.cell);
        let t = &self.tri[f.class as usize];
        [t[0] + shift, t[1] + shift, t[2] + shift]
    }

    /// Centroid of the flag triangle; flags embed to distinct centroids.
    pub fn centroid(&self, f: Flag) -> Pt {
        let [v, e, c] = self.embed(f);
        let third = Ext::frac(1, 3);
        let p = v + e + c;
        Pt::new(p.x * third, p.y * third)
    }

    /// Checks every structural invariant of the table data.
    pub fn validate(&self) -> Result<(), TilingError> {
        let fail = |msg: String| {
            Err(TilingError::Invariant {
                tiling: self.id.name(),
                msg,
            })
        };
        let n = self.class_count();
        if n == 0 || self.tri.len() != n || self.face_orbit.len() != n {
            return fail("inconsistent table lengths".into());
        }
        if self.base_class as usize >= n {
            return fail("base class out of range".into());
        }
        if self.t1.cross(&self.t2).sign() == 0 {
            return fail("degenerate lattice basis".into());
        }
        let (p, q) = self.cover;
        for c in 0..n as u32 {
            let f = Flag::new(c, (0, 0));
            // Involution (diamond condition) with exact offset cancellation.
            for l in Letter::ALL {
                let g = self.adjacent(f, l);
                if self.adjacent(g, l) != f {
                    return fail(format!("label {} not an involution at class {c}", l.index()));
                }
                if g == f {
                    return fail(format!("class {c} fixed by label {}", l.index()));
                }
            }
            // Pairwise distinct neighbors.
            let nb: Vec<Flag> = Letter::ALL.iter().map(|&l| self.adjacent(f, l)).collect();
            if nb[0] == nb[1] || nb[0] == nb[2] || nb[1] == nb[2] {
                return fail(format!("coincident neighbors at class {c}"));
            }
            // Defining relations of the cover act trivially.
            let r0r2 = Word::lit("ac").pow(2);
            let r0r1 = Word::lit("ab").pow(p as i64);
            let r1r2 = Word::lit("bc").pow(q as i64);
            for (name, w) in [("(r0 r2)^2", &r0r2), ("(r0 r1)^p", &r0r1), ("(r1 r2)^q", &r1r2)]
            {
                if self.apply_word(f, w) != f {
                    return fail(format!("{name} does not fix class {c}"));
                }
            }
            // Face co-degree divides p; vertex degree divides q.
            let (_, codeg) = self.face_orbit[c as usize];
            if codeg == 0 || p % codeg != 0 {
                return fail(format!("co-degree {codeg} of class {c} does not divide p={p}"));
            }
            if self.vertex_degree == 0 || q % self.vertex_degree != 0 {
                return fail(format!("vertex degree {} does not divide q={q}", self.vertex_degree));
            }
            // Nondegenerate flag triangle.
            let t = &self.tri[c as usize];
            if orient(&t[0], &t[1], &t[2]) == 0 {
                return fail(format!("degenerate flag triangle at class {c}"));
            }
        }
        // Face-cell consistency: walking (ab) around the face keeps the
        // face orbit and closes after exactly 2·co-degree steps.
        for c in 0..n as u32 {
            let start = Flag::new(c, (0, 0));
            let (orbit, codeg) = self.face_orbit[c as usize];
            let mut g = start;
            for step in 0..2 * codeg {
                let l = if step % 2 == 0 { Letter::A } else { Letter::B };
                g = self.adjacent(g, l);
                if self.face_orbit[g.class as usize] != (orbit, codeg) {
                    return fail(format!("face cycle of class {c} changes orbit"));
                }
                if step + 1 < 2 * codeg && g == start {
                    return fail(format!("face cycle of class {c} closes early"));
                }
            }
            if g != start {
                return fail(format!("face cycle of class {c} does not close"));
            }
        }
        Ok(())
    }

    /// Serializes this system in the static table format.
    pub fn emit_table(&self) -> String {
        let mut out = String::new();
        let pt = |p: &Pt| format!("{} {}", p.x.table_repr(), p.y.table_repr());
        out.push_str(&format!("tiling {}\n", self.id.name()));
        out.push_str(&format!("classes {}\n", self.class_count()));
        out.push_str(&format!("base {}\n", self.base_class));
        out.push_str(&format!("cover {} {}\n", self.cover.0, self.cover.1));
        out.push_str(&format!("degree {}\n", self.vertex_degree));
        out.push_str(&format!("t1 {}\n", pt(&self.t1)));
        out.push_str(&format!("t2 {}\n", pt(&self.t2)));
        for c in 0..self.class_count() {
            out.push_str(&format!("class {c}\n"));
            let a = &self.adj[c];
            out.push_str(&format!(
                "adj {} {} {} {} {} {} {} {} {}\n",
                a[0].0, a[0].1, a[0].2, a[1].0, a[1].1, a[1].2, a[2].0, a[2].1, a[2].2
            ));
            let fo = self.face_orbit[c];
            out.push_str(&format!("faceorbit {} {}\n", fo.0, fo.1));
            out.push_str(&format!("vertex {}\n", pt(&self.tri[c][0])));
            out.push_str(&format!("edge {}\n", pt(&self.tri[c][1])));
            out.push_str(&format!("face {}\n", pt(&self.tri[c][2])));
        }
        out.push_str("end\n");
        out
    }
}

static EMBEDDED_TABLES: &str = include_str!("../data/tables.txt");

/// Emits the header plus every tiling's table in canonical order.
pub fn emit_all_tables(systems: &BTreeMap<TilingId, FlagSystem>) -> String {
    let mut out = String::from("flagwalk tables v1\n");
    for id in TilingId::ALL {
        if let Some(sys) = systems.get(&id) {
            out.push_str(&sys.emit_table());
        }
    }
    out
}

/// Parses the static table text into one flag system per tiling.
pub fn parse_tables(text: &str) -> Result<BTreeMap<TilingId, FlagSystem>, TilingError> {
    let mut out = BTreeMap::new();
    let mut lines = text.lines().enumerate().peekable();
    let perr = |line: usize, msg: &str| TilingError::Parse {
        line: line + 1,
        msg: msg.to_string(),
    };
    // Header.
    match lines.next() {
        Some((_, l)) if l.trim() == "flagwalk tables v1" => {}
        Some((i, _)) => return Err(perr(i, "bad header")),
        None => return Err(perr(0, "empty table file")),
    }
    while let Some(&(i, line)) = lines.peek() {
        let line = line.trim();
        if line.is_empty() {
            lines.next();
            continue;
        }
        let name = line
            .strip_prefix("tiling ")
            .ok_or_else(|| perr(i, "expected 'tiling <name>'"))?;
        let id = TilingId::from_name(name).ok_or_else(|| perr(i, "unknown tiling name"))?;
        lines.next();
        let sys = parse_one(&mut lines, id)?;
        out.insert(id, sys);
    }
    Ok(out)
}

fn parse_one(
    lines: &mut std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'_>>>,
    id: TilingId,
) -> Result<FlagSystem, TilingError> {
    let perr = |line: usize, msg: &str| TilingError::Parse {
        line: line + 1,
        msg: msg.to_string(),
    };
    let mut next_tokens = |expect: &str| -> Result<(usize, Vec<String>), TilingError> {
        let (i, l) = lines
            .next()
            .ok_or_else(|| perr(usize::MAX - 1, "unexpected end of tables"))?;
        let toks: Vec<String> = l.split_whitespace().map(str::to_string).collect();
        if toks.is_empty() || toks[0] != expect {
            return Err(perr(i, &format!("expected '{expect}' line")));
        }
        Ok((i, toks))
    };
    let parse_pt = |i: usize, toks: &[String]| -> Result<Pt, TilingError> {
        if toks.len() != 8 {
            return Err(perr(i, "point needs 8 tokens"));
        }
        let refs: Vec<&str> = toks.iter().map(String::as_str).collect();
        let x = Ext::from_table_repr(&refs[0..4]).ok_or_else(|| perr(i, "bad coordinate"))?;
        let y = Ext::from_table_repr(&refs[4..8]).ok_or_else(|| perr(i, "bad coordinate"))?;
        Ok(Pt::new(x, y))
    };

    let (i, toks) = next_tokens("classes")?;
    let n: usize = toks
        .get(1)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(i, "bad class count"))?;
    let (i, toks) = next_tokens("base")?;
    let base: u32 = toks
        .get(1)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(i, "bad base class"))?;
    let (i, toks) = next_tokens("cover")?;
    let cover: (u32, u32) = (
        toks.get(1)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| perr(i, "bad cover"))?,
        toks.get(2)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| perr(i, "bad cover"))?,
    );
    let (i, toks) = next_tokens("degree")?;
    let degree: u32 = toks
        .get(1)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(i, "bad degree"))?;
    let (i, toks) = next_tokens("t1")?;
    let t1 = parse_pt(i, &toks[1..])?;
    let (i, toks) = next_tokens("t2")?;
    let t2 = parse_pt(i, &toks[1..])?;

    let mut adj = Vec::with_capacity(n);
    let mut tri = Vec::with_capacity(n);
    let mut face_orbit = Vec::with_capacity(n);
    for c in 0..n {
        let (i, toks) = next_tokens("class")?;
        if toks.get(1).map(String::as_str) != Some(format!("{c}").as_str()) {
            return Err(perr(i, "class index out of order"));
        }
        let (i, toks) = next_tokens("adj")?;
        if toks.len() != 10 {
            return Err(perr(i, "adj needs 9 numbers"));
        }
        let num = |k: usize| -> Result<i64, TilingError> {
            toks[k].parse().map_err(|_| perr(i, "bad adj entry"))
        };
        let mut row = [(0u32, 0i64, 0i64); 3];
        for l in 0..3 {
            row[l] = (num(1 + 3 * l)? as u32, num(2 + 3 * l)?, num(3 + 3 * l)?);
        }
        adj.push(row);
        let (i, toks) = next_tokens("faceorbit")?;
        let orbit: u32 = toks
            .get(1)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| perr(i, "bad face orbit"))?;
        let codeg: u32 = toks
            .get(2)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| perr(i, "bad co-degree"))?;
        face_orbit.push((orbit, codeg));
        let (i, toks) = next_tokens("vertex")?;
        let v = parse_pt(i, &toks[1..])?;
        let (i, toks) = next_tokens("edge")?;
        let e = parse_pt(i, &toks[1..])?;
        let (i, toks) = next_tokens("face")?;
        let f = parse_pt(i, &toks[1..])?;
        tri.push([v, e, f]);
    }
    let (_, _) = next_tokens("end")?;
    Ok(FlagSystem {
        id,
        base_class: base,
        cover,
        vertex_degree: degree,
        adj,
        tri,
        face_orbit,
        t1,
        t2,
    })
}
