//! Finite windows onto the flag graph: spanning trees rooted at the base
//! flag and generating sets read off the cotree edges.
//!
//! A patch holds every flag whose lattice cell lies in [-R, R]² and the
//! induced edges. Walks that would leave the window are still meaningful
//! on the infinite flag system; only tree and cotree extraction is
//! window-bound.

use crate::tiling::{Flag, FlagSystem};
use crate::word::{Letter, Word};
use serde::Serialize;
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PatchError {
    #[error("patch is disconnected: flag {0} unreachable from the base flag")]
    Disconnected(Flag),
    #[error("walk leaves the patch at flag {0}")]
    WalkLeavesPatch(Flag),
    #[error("walk is not closed at the base flag")]
    NotClosed,
}

fn flag_key(f: Flag) -> ((i64, i64), u32) {
    (f.cell, f.class)
}

/// All flags with lattice cell in [-R, R]² and the edges between them.
pub struct Patch<'a> {
    sys: &'a FlagSystem,
    radius: i64,
}

impl<'a> Patch<'a> {
    pub fn new(sys: &'a FlagSystem, radius: i64) -> Patch<'a> {
        assert!(radius >= 0);
        Patch { sys, radius }
    }

    pub fn system(&self) -> &FlagSystem {
        self.sys
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn contains(&self, f: Flag) -> bool {
        f.cell.0.abs() <= self.radius && f.cell.1.abs() <= self.radius
    }

    pub fn flag_count(&self) -> usize {
        let w = (2 * self.radius + 1) as usize;
        self.sys.class_count() * w * w
    }

    /// Flags in (cell lexicographic, class) order.
    pub fn flags(&self) -> impl Iterator<Item = Flag> + '_ {
        let r = self.radius;
        (-r..=r).flat_map(move |x| {
            (-r..=r).flat_map(move |y| {
                (0..self.sys.class_count() as u32).map(move |c| Flag::new(c, (x, y)))
            })
        })
    }

    /// Induced edges, each once, lesser endpoint first.
    pub fn edges(&self) -> Vec<(Flag, Flag, Letter)> {
        let mut out = Vec::new();
        for f in self.flags() {
            for l in Letter::ALL {
                let g = self.sys.adjacent(f, l);
                if self.contains(g) && flag_key(f) < flag_key(g) {
                    out.push((f, g, l));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }
}

/// BFS spanning tree of a patch rooted at the base flag. Deterministic:
/// FIFO queue, neighbors explored in label order 0, 1, 2.
pub struct SpanningTree {
    root: Flag,
    parent: HashMap<Flag, (Flag, Letter)>,
    depth: HashMap<Flag, u32>,
}

pub fn spanning_tree(patch: &Patch) -> Result<SpanningTree, PatchError> {
    let sys = patch.system();
    let root = sys.base_flag();
    assert!(patch.contains(root));
    let mut parent = HashMap::new();
    let mut depth = HashMap::new();
    depth.insert(root, 0u32);
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        let d = depth[&f];
        for l in Letter::ALL {
            let g = sys.adjacent(f, l);
            if patch.contains(g) && !depth.contains_key(&g) {
                depth.insert(g, d + 1);
                parent.insert(g, (f, l));
                queue.push_back(g);
            }
        }
    }
    if depth.len() != patch.flag_count() {
        let missing = patch
            .flags()
            .find(|f| !depth.contains_key(f))
            .expect("count mismatch implies a missing flag");
        return Err(PatchError::Disconnected(missing));
    }
    Ok(SpanningTree {
        root,
        parent,
        depth,
    })
}

impl SpanningTree {
    pub fn root(&self) -> Flag {
        self.root
    }

    pub fn edge_count(&self) -> usize {
        self.parent.len()
    }

    /// BFS depth, which equals the graph distance to the root.
    pub fn depth(&self, f: Flag) -> Option<u32> {
        self.depth.get(&f).copied()
    }

    /// The word walking from the root along tree edges to `f`.
    pub fn tree_word(&self, f: Flag) -> Word {
        let mut letters = Vec::new();
        let mut cur = f;
        while let Some(&(p, l)) = self.parent.get(&cur) {
            letters.push(l);
            cur = p;
        }
        assert_eq!(cur, self.root, "flag outside the spanning tree");
        letters.reverse();
        Word::from_letters(letters)
    }

    pub fn is_tree_edge(&self, f: Flag, g: Flag) -> bool {
        matches!(self.parent.get(&g), Some(&(p, _)) if p == f)
            || matches!(self.parent.get(&f), Some(&(p, _)) if p == g)
    }
}

/// A stabilizer generator read off one cotree edge.
#[derive(Clone, Debug, Serialize)]
pub struct CotreeGenerator {
    pub edge: (Flag, Flag, Letter),
    #[serde(serialize_with = "serialize_word")]
    pub word: Word,
}

fn serialize_word<S: serde::Serializer>(w: &Word, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

/// One generator per non-tree edge (Ψ, Υ, i): the closed walk
/// tree_word(Ψ) · i · tree_word(Υ)⁻¹. Every generator fixes the root.
pub fn cotree_generators(patch: &Patch, tree: &SpanningTree) -> Vec<CotreeGenerator> {
    let mut out = Vec::new();
    for (f, g, l) in patch.edges() {
        if tree.is_tree_edge(f, g) {
            continue;
        }
        let mut word = tree.tree_word(f);
        word.push(l);
        out.push(CotreeGenerator {
            edge: (f, g, l),
            word: word.concat(&tree.tree_word(g).inverse()),
        });
    }
    out
}

/// Splits a closed patch walk into cotree-edge factors, in traversal
/// order. The concatenation of the factors free-reduces to the same word
/// as the input.
pub fn decompose_in_patch(
    patch: &Patch,
    tree: &SpanningTree,
    w: &Word,
) -> Result<Vec<CotreeGenerator>, PatchError> {
    let sys = patch.system();
    let mut cur = sys.base_flag();
    let mut out = Vec::new();
    for &l in w.letters() {
        let next = sys.adjacent(cur, l);
        if !patch.contains(next) {
            return Err(PatchError::WalkLeavesPatch(next));
        }
        if !tree.is_tree_edge(cur, next) {
            let mut word = tree.tree_word(cur);
            word.push(l);
            out.push(CotreeGenerator {
                edge: (cur, next, l),
                word: word.concat(&tree.tree_word(next).inverse()),
            });
        }
        cur = next;
    }
    if cur != sys.base_flag() {
        return Err(PatchError::NotClosed);
    }
    Ok(out)
}
