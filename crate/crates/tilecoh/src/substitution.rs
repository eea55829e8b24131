//! Cubical substitution rules: parsing, validation, iteration, products,
//! window-derived rules and color-involution quotients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{box_points, flat_index, volume};
use crate::linalg::IntMatrix;
use crate::patches::WindowLanguage;

/// A substitution on `colors` unit d-cubes, each replaced by a λ×…×λ block.
///
/// `table[c]` lists the block of color `c` in flat order (axis 0 slowest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionRule {
    pub name: String,
    pub dim: usize,
    pub expansion: usize,
    pub colors: usize,
    pub table: Vec<Vec<u32>>,
    /// User assertion that the rule forces the border; `None` if unstated.
    pub forces_border: Option<bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    name: String,
    dimension: usize,
    expansion: usize,
    colors: usize,
    table: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    forces_border: Option<bool>,
}

/// A box of colored tiles, flattened like the rule table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePatch {
    pub extents: Vec<usize>,
    pub colors: Vec<u32>,
}

impl LatticePatch {
    pub fn new(extents: Vec<usize>, colors: Vec<u32>) -> Self {
        assert_eq!(volume(&extents), colors.len(), "patch size mismatch");
        LatticePatch { extents, colors }
    }

    pub fn tile(dim: usize, color: u32) -> Self {
        LatticePatch { extents: vec![1; dim], colors: vec![color] }
    }
}

/// A color permutation of order at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorInvolution {
    pub perm: Vec<u32>,
}

impl ColorInvolution {
    pub fn new(perm: Vec<u32>) -> Result<Self> {
        let n = perm.len();
        for (i, &p) in perm.iter().enumerate() {
            if p as usize >= n || perm[p as usize] as usize != i {
                return Err(Error::IncompatibleInvolution(format!(
                    "color map is not an involution at {i}"
                )));
            }
        }
        Ok(ColorInvolution { perm })
    }

    pub fn identity(n: usize) -> Self {
        ColorInvolution { perm: (0..n as u32).collect() }
    }

    pub fn apply(&self, c: u32) -> u32 {
        self.perm[c as usize]
    }
}

/// Outcome of [`SubstitutionRule::primitivity`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Primitivity {
    pub primitive: bool,
    /// Smallest k with S^k strictly positive.
    pub exponent: Option<usize>,
}

impl SubstitutionRule {
    pub fn new(name: &str, dim: usize, expansion: usize, table: Vec<Vec<u32>>) -> Result<Self> {
        let rule = SubstitutionRule {
            name: name.to_string(),
            dim,
            expansion,
            colors: table.len(),
            table,
            forces_border: None,
        };
        rule.validate()?;
        Ok(rule)
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Schema("dimension must be at least 1".into()));
        }
        if self.expansion < 2 {
            return Err(Error::Schema("expansion must be at least 2".into()));
        }
        if self.colors == 0 || self.table.len() != self.colors {
            return Err(Error::Schema(format!(
                "table has {} rows but colors = {}",
                self.table.len(),
                self.colors
            )));
        }
        let block = self.block_size();
        for (r, row) in self.table.iter().enumerate() {
            if row.len() != block {
                return Err(Error::Length { row: r, found: row.len(), expected: block });
            }
            if let Some(&bad) = row.iter().find(|&&c| c as usize >= self.colors) {
                return Err(Error::Range { row: r, value: bad as i64, colors: self.colors });
            }
        }
        Ok(())
    }

    /// Parses the rule JSON format.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RuleDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let mut table = Vec::with_capacity(doc.table.len());
        for (r, row) in doc.table.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for &v in row {
                if v < 0 || v as u64 >= doc.colors as u64 {
                    return Err(Error::Range { row: r, value: v, colors: doc.colors });
                }
                out.push(v as u32);
            }
            table.push(out);
        }
        let rule = SubstitutionRule {
            name: doc.name,
            dim: doc.dimension,
            expansion: doc.expansion,
            colors: doc.colors,
            table,
            forces_border: doc.forces_border,
        };
        rule.validate()?;
        Ok(rule)
    }

    pub fn to_json(&self) -> String {
        let doc = RuleDoc {
            name: self.name.clone(),
            dimension: self.dim,
            expansion: self.expansion,
            colors: self.colors,
            table: self.table.iter().map(|r| r.iter().map(|&c| c as i64).collect()).collect(),
            forces_border: self.forces_border,
        };
        serde_json::to_string_pretty(&doc).expect("rule serialization cannot fail")
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// λ^d, the number of tiles in one substituted block.
    pub fn block_size(&self) -> usize {
        self.expansion.pow(self.dim as u32)
    }

    pub fn block_extents(&self) -> Vec<usize> {
        vec![self.expansion; self.dim]
    }

    /// S[i][j] = occurrences of color i in the block of color j.
    pub fn substitution_matrix(&self) -> IntMatrix {
        let trip = self
            .table
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().map(move |&i| (i as usize, j, BigInt::from(1))));
        IntMatrix::from_triplets(self.colors, self.colors, trip)
    }

    /// Decides primitivity from the support graph (strong connectivity plus
    /// aperiodicity), then finds the exponent by boolean powering, which
    /// terminates within Wielandt's bound (m−1)²+1.
    pub fn primitivity(&self) -> Primitivity {
        let m = self.colors;
        // edge j -> i when color i occurs in the block of color j
        let mut adj = vec![vec![false; m]; m];
        for (j, row) in self.table.iter().enumerate() {
            for &i in row {
                adj[j][i as usize] = true;
            }
        }
        let reach = |start: usize, forward: bool| -> Vec<Option<usize>> {
            let mut dist = vec![None; m];
            dist[start] = Some(0);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for y in 0..m {
                    let edge = if forward { adj[x][y] } else { adj[y][x] };
                    if edge && dist[y].is_none() {
                        dist[y] = Some(dist[x].unwrap() + 1);
                        queue.push_back(y);
                    }
                }
            }
            dist
        };
        let fwd = reach(0, true);
        let bwd = reach(0, false);
        if fwd.iter().chain(&bwd).any(Option::is_none) {
            return Primitivity { primitive: false, exponent: None };
        }
        // Period = gcd over edges (x,y) of level(x) + 1 − level(y).
        let mut period = 0usize;
        for x in 0..m {
            for y in 0..m {
                if adj[x][y] {
                    let diff = (fwd[x].unwrap() + 1).abs_diff(fwd[y].unwrap());
                    period = num_integer::gcd(period, diff);
                }
            }
        }
        if period != 1 {
            return Primitivity { primitive: false, exponent: None };
        }
        let mut power = adj.clone();
        let mut k = 1;
        while !power.iter().all(|r| r.iter().all(|&b| b)) {
            let mut next = vec![vec![false; m]; m];
            for x in 0..m {
                for z in 0..m {
                    if power[x][z] {
                        for y in 0..m {
                            if adj[z][y] {
                                next[x][y] = true;
                            }
                        }
                    }
                }
            }
            power = next;
            k += 1;
        }
        Primitivity { primitive: true, exponent: Some(k) }
    }

    /// Applies the substitution `k` times to a patch.
    pub fn substitute_patch(&self, patch: &LatticePatch, k: usize) -> LatticePatch {
        let mut cur = patch.clone();
        for _ in 0..k {
            cur = self.substitute_once(&cur.extents, &cur.colors);
        }
        cur
    }

    pub(crate) fn substitute_once(&self, extents: &[usize], colors: &[u32]) -> LatticePatch {
        let l = self.expansion;
        let next: Vec<usize> = extents.iter().map(|e| e * l).collect();
        let mut out = vec![0u32; volume(&next)];
        let block = self.block_extents();
        let block_pts: Vec<Vec<usize>> = box_points(&block).collect();
        let mut target = vec![0usize; self.dim];
        for (idx, pos) in box_points(extents).enumerate() {
            let row = &self.table[colors[idx] as usize];
            for (b, q) in block_pts.iter().enumerate() {
                for a in 0..self.dim {
                    target[a] = pos[a] * l + q[a];
                }
                out[flat_index(&target, &next)] = row[b];
            }
        }
        LatticePatch { extents: next, colors: out }
    }

    /// Product rule on the product space: axes of `a` first, then those of `b`;
    /// color `(i, j)` is encoded as `i·b.colors + j`.
    pub fn product(a: &SubstitutionRule, b: &SubstitutionRule) -> Result<SubstitutionRule> {
        if a.expansion != b.expansion {
            return Err(Error::ExpansionMismatch(a.expansion, b.expansion));
        }
        let mb = b.colors as u32;
        let mut table = Vec::with_capacity(a.colors * b.colors);
        for ra in &a.table {
            for rb in &b.table {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for &p in ra {
                    for &q in rb {
                        row.push(p * mb + q);
                    }
                }
                table.push(row);
            }
        }
        let mut rule = SubstitutionRule::new(
            &format!("{}x{}", a.name, b.name),
            a.dim + b.dim,
            a.expansion,
            table,
        )?;
        rule.forces_border = match (a.forces_border, b.forces_border) {
            (Some(x), Some(y)) => Some(x && y),
            _ => None,
        };
        Ok(rule)
    }

    /// The rule on legal 2^d windows ("half-collared" tiles): the block of a
    /// window lists the windows of its substituted patch at offset `anchor + p`.
    pub fn derive_window_rule(&self, language: &WindowLanguage, anchor: usize) -> Result<SubstitutionRule> {
        let shape = vec![2; self.dim];
        let windows = language.windows(&shape)?;
        let l = self.expansion;
        assert!(anchor < l, "anchor offset must be below the expansion");
        let block = self.block_extents();
        let mut table = Vec::with_capacity(windows.len());
        for w in windows {
            let sub = self.substitute_once(&shape, w);
            let mut row = Vec::with_capacity(self.block_size());
            for p in box_points(&block) {
                let off: Vec<usize> = p.iter().map(|x| x + anchor).collect();
                let child = crate::grid::sub_box(&sub.colors, &sub.extents, &off, &shape);
                let id = language
                    .index_of(&shape, &child)
                    .ok_or_else(|| Error::IllegalFace(format!("{child:?}")))?;
                row.push(id as u32);
            }
            table.push(row);
        }
        let mut rule = SubstitutionRule::new(&format!("{}-windows", self.name), self.dim, l, table)?;
        rule.forces_border = None;
        Ok(rule)
    }

    /// The involution a color involution induces on legal 2^d windows, i.e.
    /// on the colors of [`Self::derive_window_rule`].
    pub fn induced_window_involution(&self, language: &WindowLanguage, g: &ColorInvolution) -> Result<ColorInvolution> {
        if g.perm.len() != self.colors {
            return Err(Error::IncompatibleInvolution(format!(
                "involution has {} entries, rule has {} colors",
                g.perm.len(),
                self.colors
            )));
        }
        let shape = vec![2; self.dim];
        let windows = language.windows(&shape)?;
        let perm = windows
            .iter()
            .map(|w| {
                let image: Vec<u32> = w.iter().map(|&c| g.apply(c)).collect();
                language
                    .index_of(&shape, &image)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::IncompatibleInvolution("image of a legal window is not legal".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        ColorInvolution::new(perm)
    }

    /// Quotient by a compatible color involution: colors become orbits,
    /// numbered by their smallest member.
    pub fn quotient_by_involution(&self, g: &ColorInvolution) -> Result<SubstitutionRule> {
        if g.perm.len() != self.colors {
            return Err(Error::IncompatibleInvolution(format!(
                "involution acts on {} colors, rule has {}",
                g.perm.len(),
                self.colors
            )));
        }
        for (i, row) in self.table.iter().enumerate() {
            let image = &self.table[g.apply(i as u32) as usize];
            if row.iter().zip(image).any(|(&x, &y)| g.apply(x) != y) {
                return Err(Error::IncompatibleInvolution(format!(
                    "block of color {i} is not carried to the block of color {}",
                    g.apply(i as u32)
                )));
            }
        }
        let mut orbit_of = vec![0u32; self.colors];
        let mut reps = Vec::new();
        let mut index: BTreeMap<u32, u32> = BTreeMap::new();
        for c in 0..self.colors as u32 {
            let rep = c.min(g.apply(c));
            let next = index.len() as u32;
            let id = *index.entry(rep).or_insert_with(|| {
                reps.push(rep);
                next
            });
            orbit_of[c as usize] = id;
        }
        let table = reps
            .iter()
            .map(|&r| self.table[r as usize].iter().map(|&x| orbit_of[x as usize]).collect())
            .collect();
        let mut rule = SubstitutionRule::new(&format!("{}-quotient", self.name), self.dim, self.expansion, table)?;
        rule.forces_border = self.forces_border;
        Ok(rule)
    }

    /// Orbit index of each color under `g`, as used by [`Self::quotient_by_involution`].
    pub fn orbit_map(colors: usize, g: &ColorInvolution) -> Vec<u32> {
        let mut index: BTreeMap<u32, u32> = BTreeMap::new();
        (0..colors as u32)
            .map(|c| {
                let rep = c.min(g.apply(c));
                let next = index.len() as u32;
                *index.entry(rep).or_insert(next)
            })
            .collect()
    }
}

/// The d-dimensional chair rule on 2^d colors.
pub fn chair(d: usize) -> SubstitutionRule {
    let n = 1u32 << d;
    let table = (0..n)
        .map(|i| (0..n).map(|j| if i == (n - 1) - j { (n - 1) - j } else { j }).collect())
        .collect();
    SubstitutionRule::new(&format!("chair-{d}"), d, 2, table).expect("chair rule is valid")
}

/// The rule with a single color in dimension `d`; its tiling space is the d-torus.
pub fn one_color(d: usize, expansion: usize) -> SubstitutionRule {
    let mut r = SubstitutionRule::new(
        &format!("one-color-{d}d"),
        d,
        expansion,
        vec![vec![0; expansion.pow(d as u32)]],
    )
    .expect("one-color rule is valid");
    r.forces_border = Some(true);
    r
}
