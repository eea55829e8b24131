//! The uncollared AP complex: prototile cubes glued along every face pair
//! that meets inside some legal 2^d window.

use std::collections::BTreeMap;

use super::{matrices_from_children, Cell, CellComplex, CellIndex, CellLabel, CellMap, Geometry, Model, Role};
use crate::error::{Error, Result};
use crate::grid::{box_points, flat_index};
use crate::patches::WindowLanguage;
use crate::substitution::SubstitutionRule;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller id as root so class representatives are canonical
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

fn role_code(r: Role) -> usize {
    match r {
        Role::Spanned => 0,
        Role::Low => 1,
        Role::High => 2,
    }
}

fn local_id(color: u32, roles: &[Role]) -> usize {
    roles.iter().fold(color as usize, |acc, &r| acc * 3 + role_code(r))
}

fn roles_of(mut id: usize, d: usize) -> (u32, Vec<Role>) {
    let mut roles = vec![Role::Spanned; d];
    for a in (0..d).rev() {
        roles[a] = [Role::Spanned, Role::Low, Role::High][id % 3];
        id /= 3;
    }
    (id as u32, roles)
}

/// Lookup from local faces to cells, kept for building cell involutions.
#[derive(Clone, Debug)]
pub(crate) struct FaceClasses {
    pub class_of: Vec<(usize, usize)>,
}

impl FaceClasses {
    pub fn cell(&self, color: u32, roles: &[Role]) -> (usize, usize) {
        self.class_of[local_id(color, roles)]
    }
}

/// Builds the uncollared AP complex and its chain map.
///
/// The model is only faithful when the rule forces the border; the caller
/// must pass `border_asserted` (from the rule file or an explicit override).
pub fn build_ap_uncollared(
    rule: &SubstitutionRule,
    language: &WindowLanguage,
    border_asserted: bool,
) -> Result<(CellComplex, CellMap)> {
    build_ap_with_classes(rule, language, border_asserted).map(|(c, m, _)| (c, m))
}

pub(crate) fn build_ap_with_classes(
    rule: &SubstitutionRule,
    language: &WindowLanguage,
    border_asserted: bool,
) -> Result<(CellComplex, CellMap, FaceClasses)> {
    if !border_asserted {
        return Err(Error::BorderNotAsserted);
    }
    let d = rule.dim;
    let l = rule.expansion;
    let n_local = rule.colors * 3usize.pow(d as u32);
    let mut uf = UnionFind((0..n_local).collect());
    let cube = vec![2usize; d];
    // per axis: a geometric face is spanned over [b, b+1] (b ∈ {0,1}) or
    // sits at coordinate v ∈ {0,1,2}; encoded as 0,1 and 2,3,4
    let choices = vec![5usize; d];
    let geometric: Vec<Vec<usize>> = box_points(&choices).collect();
    for w in language.windows(&cube)? {
        for g in &geometric {
            // tiles of the window containing this face, with their local roles
            let mut options: Vec<Vec<(usize, Role)>> = Vec::with_capacity(d);
            for &ch in g {
                options.push(match ch {
                    0 | 1 => vec![(ch, Role::Spanned)],
                    2 => vec![(0, Role::Low)],
                    3 => vec![(1, Role::Low), (0, Role::High)],
                    _ => vec![(1, Role::High)],
                });
            }
            let sizes: Vec<usize> = options.iter().map(Vec::len).collect();
            let mut first = None;
            for pick in box_points(&sizes) {
                let pos: Vec<usize> = (0..d).map(|a| options[a][pick[a]].0).collect();
                let roles: Vec<Role> = (0..d).map(|a| options[a][pick[a]].1).collect();
                let id = local_id(w[flat_index(&pos, &cube)], &roles);
                match first {
                    None => first = Some(id),
                    Some(f) => uf.union(f, id),
                }
            }
        }
    }
    // classes ordered by their smallest member, split by dimension
    let mut reps: BTreeMap<usize, ()> = BTreeMap::new();
    for id in 0..n_local {
        let r = uf.find(id);
        reps.insert(r, ());
    }
    let mut class_of = vec![(0usize, 0usize); n_local];
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); d + 1];
    let mut index_of_rep: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &r in reps.keys() {
        let (color, roles) = roles_of(r, d);
        let axes: Vec<usize> = (0..d).filter(|&a| roles[a] == Role::Spanned).collect();
        let q = axes.len();
        index_of_rep.insert(r, (q, cells[q].len()));
        cells[q].push(Cell { label: CellLabel::Face { color, roles }, axes });
    }
    for (id, slot) in class_of.iter_mut().enumerate() {
        *slot = index_of_rep[&uf.find(id)];
    }
    let classes = FaceClasses { class_of };

    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); d + 1];
    let mut children: Vec<Vec<Vec<usize>>> = vec![Vec::new(); d + 1];
    for q in 0..=d {
        for cell in &cells[q] {
            let CellLabel::Face { color, roles } = &cell.label else { unreachable!() };
            let mut fs = Vec::with_capacity(2 * q);
            for &a in &cell.axes {
                for side in [Role::Low, Role::High] {
                    let mut r = roles.clone();
                    r[a] = side;
                    fs.push(classes.cell(*color, &r).1);
                }
            }
            faces[q].push(fs);
            // children: the same face of each child tile along the inflated face
            let row = &rule.table[*color as usize];
            let block = vec![l; d];
            let ch: Vec<usize> = box_points(&vec![l; q])
                .map(|t| {
                    let mut pos = vec![0usize; d];
                    let mut k = 0;
                    for a in 0..d {
                        pos[a] = match roles[a] {
                            Role::Spanned => {
                                k += 1;
                                t[k - 1]
                            }
                            Role::Low => 0,
                            Role::High => l - 1,
                        };
                    }
                    classes.cell(row[flat_index(&pos, &block)], roles).1
                })
                .collect();
            children[q].push(ch);
        }
    }
    let counts: Vec<usize> = cells.iter().map(Vec::len).collect();
    let boundary = CellComplex::boundaries_from_faces(Geometry::Cubical, &faces, &counts);
    let complex = CellComplex {
        model: Model::ApUncollared,
        geometry: Geometry::Cubical,
        dim: d,
        cells,
        faces,
        boundary,
        faces_exact: true,
        index: CellIndex::Faces(classes.clone()),
    };
    let map = CellMap { matrices: matrices_from_children(&children), children: Some(children), expansion: l, anchor: None };
    super::check_chain_map(&complex, &map)?;
    Ok((complex, map, classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::builtin;
    use crate::patches::enumerate_legal_windows;

    fn ap(rule: &SubstitutionRule) -> (CellComplex, CellMap) {
        let lang = enumerate_legal_windows(rule, &[]).unwrap();
        build_ap_uncollared(rule, &lang, true).unwrap()
    }

    #[test]
    fn circle() {
        let (c, m) = ap(&crate::substitution::one_color(1, 3));
        assert_eq!(c.counts(), vec![1, 1]);
        assert_eq!(m.matrices[1].to_i64().unwrap(), vec![vec![3]]);
    }

    #[test]
    fn requires_border_assertion() {
        let r = builtin("chair-2").unwrap();
        let lang = enumerate_legal_windows(&r, &[]).unwrap();
        assert!(matches!(build_ap_uncollared(&r, &lang, false), Err(Error::BorderNotAsserted)));
    }

    #[test]
    fn equivariant_rule_has_torus_skeleton() {
        let (c, m) = ap(&builtin("equivariant-4d").unwrap());
        assert_eq!(c.counts(), vec![1, 4, 6, 4, 2]);
        assert!(c.boundary.iter().all(|b| b.is_zero()));
        let mut top = m.matrices[4].to_i64().unwrap();
        top.sort();
        assert_eq!(top, vec![vec![1, 0], vec![80, 81]]);
    }

    #[test]
    fn local_id_round_trip() {
        let roles = vec![Role::High, Role::Spanned, Role::Low];
        assert_eq!(roles_of(local_id(5, &roles), 3), (5, roles));
    }
}
