//! Legal window languages: every box-shaped patch that occurs in some
//! iterated substitution of a single tile, and border-forcing probes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{box_points, sub_box, volume};
use crate::substitution::{LatticePatch, SubstitutionRule};

/// Legal windows grouped by shape, each group sorted lexicographically.
///
/// Global ids order windows by (extents, colors).
#[derive(Clone, Debug)]
pub struct WindowLanguage {
    pub dim: usize,
    shapes: BTreeMap<Vec<usize>, Vec<Vec<u32>>>,
    lookup: BTreeMap<Vec<usize>, HashMap<Vec<u32>, usize>>,
    /// Closure rounds needed before the 2^d windows stabilized.
    pub rounds: usize,
}

#[derive(Serialize)]
pub struct WindowRecord<'a> {
    pub extents: &'a [usize],
    pub colors: &'a [u32],
    pub id: usize,
}

impl WindowLanguage {
    fn from_sets(dim: usize, sets: BTreeMap<Vec<usize>, BTreeSet<Vec<u32>>>, rounds: usize) -> Self {
        let shapes: BTreeMap<_, Vec<_>> =
            sets.into_iter().map(|(s, w)| (s, w.into_iter().collect())).collect();
        let lookup = shapes
            .iter()
            .map(|(s, ws)| (s.clone(), ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()))
            .collect();
        WindowLanguage { dim, shapes, lookup, rounds }
    }

    /// Windows of one shape, sorted.
    pub fn windows(&self, shape: &[usize]) -> Result<&[Vec<u32>]> {
        self.shapes.get(shape).map(Vec::as_slice).ok_or_else(|| Error::MissingShape(shape.to_vec()))
    }

    /// Position of `colors` within the windows of `shape`.
    pub fn index_of(&self, shape: &[usize], colors: &[u32]) -> Option<usize> {
        self.lookup.get(shape)?.get(colors).copied()
    }

    pub fn contains(&self, shape: &[usize], colors: &[u32]) -> bool {
        self.index_of(shape, colors).is_some()
    }

    pub fn shapes(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.shapes.keys()
    }

    pub fn count(&self, shape: &[usize]) -> usize {
        self.shapes.get(shape).map_or(0, Vec::len)
    }

    /// Every window with its global id, in id order.
    pub fn records(&self) -> Vec<WindowRecord<'_>> {
        self.shapes
            .iter()
            .flat_map(|(s, ws)| ws.iter().map(move |w| (s, w)))
            .enumerate()
            .map(|(id, (s, w))| WindowRecord { extents: s, colors: w, id })
            .collect()
    }

    /// JSON list of `{extents, colors, id}`.
    pub fn dump_json(&self) -> String {
        serde_json::to_string(&self.records()).expect("window dump serializes")
    }
}

/// All distinct windows of `shape` inside `patch`.
fn scan(patch: &LatticePatch, shape: &[usize], out: &mut BTreeSet<Vec<u32>>) {
    let span: Vec<usize> = patch.extents.iter().zip(shape).map(|(e, s)| e + 1 - s).collect();
    for off in box_points(&span) {
        out.insert(sub_box(&patch.colors, &patch.extents, &off, shape));
    }
}

/// Enumerates the legal windows of the requested shapes.
///
/// The 2^d windows are closed first: seeded from single substituted tiles,
/// then every new window is substituted and rescanned until nothing new
/// appears. Since any window with extents at most λ+1 lies inside the
/// substitution of some legal 2^d window, a final scan of those
/// substitutions yields every other requested shape.
pub fn enumerate_legal_windows(rule: &SubstitutionRule, shapes: &[Vec<usize>]) -> Result<WindowLanguage> {
    let d = rule.dim;
    for s in shapes {
        if s.len() != d {
            return Err(Error::WrongDimension { expected: d, found: s.len() });
        }
        if s.iter().any(|&e| e == 0 || e > rule.expansion + 1) {
            return Err(Error::Schema(format!(
                "window extents {s:?} must lie between 1 and expansion + 1"
            )));
        }
    }
    let cube = vec![2usize; d];
    let mut known: BTreeSet<Vec<u32>> = BTreeSet::new();
    for c in 0..rule.colors as u32 {
        scan(&rule.substitute_patch(&LatticePatch::tile(d, c), 1), &cube, &mut known);
    }
    let mut frontier: Vec<Vec<u32>> = known.iter().cloned().collect();
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        let found: Vec<BTreeSet<Vec<u32>>> = frontier
            .par_iter()
            .map(|w| {
                let mut s = BTreeSet::new();
                scan(&rule.substitute_once(&cube, w), &cube, &mut s);
                s
            })
            .collect();
        frontier.clear();
        for set in found {
            for w in set {
                if known.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
    }
    let mut sets: BTreeMap<Vec<usize>, BTreeSet<Vec<u32>>> = BTreeMap::new();
    let others: Vec<&Vec<usize>> = shapes.iter().filter(|s| **s != cube).collect();
    if !others.is_empty() {
        let parts: Vec<BTreeMap<Vec<usize>, BTreeSet<Vec<u32>>>> = known
            .par_iter()
            .map(|w| {
                let sub = rule.substitute_once(&cube, w);
                let mut m = BTreeMap::new();
                for s in &others {
                    scan(&sub, s, m.entry((*s).clone()).or_default());
                }
                m
            })
            .collect();
        for m in parts {
            for (s, ws) in m {
                sets.entry(s).or_default().extend(ws);
            }
        }
    }
    sets.insert(cube, known);
    Ok(WindowLanguage::from_sets(d, sets, rounds))
}

/// All shapes with extents in {1, 2}: the windows that index cells of the
/// dual complex.
pub fn unit_shapes(d: usize) -> Vec<Vec<usize>> {
    box_points(&vec![2; d]).map(|p| p.iter().map(|x| x + 1).collect()).collect()
}

/// Result of probing whether level-k supertiles determine their collar.
#[derive(Clone, Debug, Serialize)]
pub struct BorderProbe {
    /// Smallest level at which every supertile type has a unique collar.
    pub forced_at: Option<usize>,
    pub max_level: usize,
    /// When not forced: a color and two legal 3^d neighbourhoods of it whose
    /// level-`max_level` supertiles carry different collars.
    pub witness: Option<BorderWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BorderWitness {
    pub color: u32,
    pub first: Vec<u32>,
    pub second: Vec<u32>,
}

/// Tests border forcing level by level up to `max_level`.
///
/// At level k, the collar of a supertile σ^k(c) is the one-tile-thick
/// shell around it inside σ^k of the legal 3^d window centred on c. The
/// rule forces the border at level k when each color has a single collar.
pub fn border_forcing_probe(rule: &SubstitutionRule, max_level: usize) -> Result<BorderProbe> {
    let d = rule.dim;
    let three = vec![3usize; d];
    let lang = enumerate_legal_windows(rule, std::slice::from_ref(&three))?;
    let windows = lang.windows(&three)?;
    let centre = crate::grid::flat_index(&vec![1; d], &three);
    let mut witness = None;
    for k in 1..=max_level {
        let side = rule.expansion.pow(k as u32);
        let shell_shape = vec![side + 2; d];
        let offset = vec![side - 1; d];
        let mut seen: HashMap<u32, (Vec<u32>, &Vec<u32>)> = HashMap::new();
        let mut clash = None;
        for w in windows {
            let big = rule.substitute_patch(&LatticePatch::new(three.clone(), w.clone()), k);
            let shell = sub_box(&big.colors, &big.extents, &offset, &shell_shape);
            let c = w[centre];
            match seen.get(&c) {
                Some((s, first)) if *s != shell => {
                    clash = Some(BorderWitness { color: c, first: (*first).clone(), second: w.clone() });
                    break;
                }
                Some(_) => {}
                None => {
                    seen.insert(c, (shell, w));
                }
            }
        }
        match clash {
            None => return Ok(BorderProbe { forced_at: Some(k), max_level, witness: None }),
            Some(wit) => witness = Some(wit),
        }
    }
    debug_assert!(volume(&three) > 0);
    Ok(BorderProbe { forced_at: None, max_level, witness })
}
