//! Reguli, linear congruences and the line structure of the hwise-fixed
//! 5-spaces.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{FixedGeometry, LineClass};
use crate::error::{GeomError, Result};
use crate::pg::{ProjSpace, Subspace};
use crate::reduction::ReductionContext;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CongruenceKind {
    Elliptic,
    Parabolic { axis: Vec<usize> },
    Hyperbolic { axes: [Vec<usize>; 2] },
}

impl CongruenceKind {
    pub fn name(&self) -> &'static str {
        match self {
            CongruenceKind::Elliptic => "elliptic",
            CongruenceKind::Parabolic { .. } => "parabolic",
            CongruenceKind::Hyperbolic { .. } => "hyperbolic",
        }
    }
}

fn meets(space: &ProjSpace, a: &Subspace, b: &Subspace) -> bool {
    !space.meet(a, b).unwrap().is_empty()
}

/// All lines meeting every line of `lines` (at least three pairwise
/// disjoint lines spanning a 3-space).
pub fn transversals(space: &ProjSpace, lines: &[Subspace]) -> Vec<Subspace> {
    let [l0, l1, l2] = [&lines[0], &lines[1], &lines[2]];
    let mut out = BTreeSet::new();
    for x in space.points_of(l0) {
        let px = space.point_subspace(x);
        if space.contains(l1, &px) || space.contains(l2, &px) {
            continue;
        }
        let a = space.span(&[&px, l1]).unwrap();
        let b = space.span(&[&px, l2]).unwrap();
        let m = space.meet(&a, &b).unwrap();
        if m.rank() == 2 && lines.iter().all(|l| meets(space, &m, l)) {
            out.insert(m);
        }
    }
    out.into_iter().collect()
}

/// If the q+1 given lines form a regulus, returns its opposite regulus.
pub fn verify_regulus(space: &ProjSpace, lines: &[Subspace]) -> Option<Vec<Subspace>> {
    let q = space.field().order() as usize;
    if lines.len() != q + 1 || lines.iter().any(|l| l.rank() != 2) {
        return None;
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if meets(space, &lines[i], &lines[j]) {
                return None;
            }
        }
    }
    let refs: Vec<&Subspace> = lines.iter().collect();
    if space.span(&refs).unwrap().rank() != 4 {
        return None;
    }
    let t = transversals(space, lines);
    (t.len() == q + 1).then_some(t)
}

/// The regulus through three pairwise disjoint lines of a 3-space.
pub fn regulus_through(space: &ProjSpace, lines: [&Subspace; 3]) -> Option<Vec<Subspace>> {
    let q = space.field().order() as usize;
    let t = transversals(space, &lines.map(|l| l.clone()));
    if t.len() != q + 1 {
        return None;
    }
    let r = transversals(space, &t[..3]);
    (r.len() == q + 1).then_some(r)
}

/// The lines of a set of fixed-line indices.
fn spaces(geo: &FixedGeometry, idx: &[usize]) -> Vec<Subspace> {
    idx.iter().map(|&i| geo.lines[i].space.clone()).collect()
}

/// Classifies the fixed-I and fixed-II lines in the 3-space `sigma3`.
pub fn congruence_classify<R: Rng>(
    ctx: &ReductionContext,
    geo: &FixedGeometry,
    sigma3: &Subspace,
    regularity_samples: usize,
    rng: &mut R,
) -> Result<CongruenceKind> {
    let pg8 = ctx.pg8();
    let q = ctx.q() as usize;
    let fail = |why: String| GeomError::Unclassifiable { what: "linear congruence", detail: why };
    if sigma3.rank() != 4 {
        return Err(GeomError::Hypothesis(format!("expected a 3-space, got rank {}", sigma3.rank())));
    }
    let pts = pg8.points_of(sigma3);
    let inside = geo.lines_in(&pts);
    let axes: Vec<usize> = inside.iter().copied().filter(|&i| geo.lines[i].class == LineClass::PtwiseFixed).collect();
    let fam: Vec<usize> = inside.iter().copied().filter(|&i| geo.lines[i].class != LineClass::PtwiseFixed).collect();
    let fam_set: HashSet<Subspace> = spaces(geo, &fam).into_iter().collect();

    match axes.len() {
        0 => {
            if fam.len() != q * q + 1 {
                return Err(fail(format!("{} lines, not a spread", fam.len())));
            }
            let covered: BTreeSet<usize> = fam.iter().flat_map(|&i| geo.lines[i].points.iter().copied()).collect();
            if covered.len() != pts.len() || fam.len() * (q + 1) != pts.len() {
                return Err(fail("lines do not partition the 3-space".into()));
            }
            for _ in 0..regularity_samples {
                let pick: Vec<&usize> = fam.choose_multiple(rng, 3).collect();
                let ls = [pick[0], pick[1], pick[2]].map(|&i| &geo.lines[i].space);
                let reg = regulus_through(&pg8, ls).ok_or_else(|| fail("no regulus through three lines".into()))?;
                if !reg.iter().all(|l| fam_set.contains(l)) {
                    return Err(fail("spread is not regular".into()));
                }
            }
            Ok(CongruenceKind::Elliptic)
        }
        1 => {
            let axis = &geo.lines[axes[0]];
            if fam.len() + 1 != q * q + q + 1 {
                return Err(fail(format!("{} lines besides the axis", fam.len())));
            }
            for &i in &fam {
                if !meets(&pg8, &geo.lines[i].space, &axis.space) {
                    return Err(fail("a line misses the axis".into()));
                }
            }
            for (a, &i) in fam.iter().enumerate() {
                for &j in &fam[a + 1..] {
                    let m = pg8.meet(&geo.lines[i].space, &geo.lines[j].space)?;
                    if !m.is_empty() && !pg8.contains(&axis.space, &m) {
                        return Err(fail("two lines meet off the axis".into()));
                    }
                }
            }
            let fixed_i: Vec<usize> = fam.iter().copied().filter(|&i| geo.lines[i].class == LineClass::FixedI).collect();
            if verify_regulus(&pg8, &spaces(geo, &fixed_i)).is_none() {
                return Err(fail("no regulus among the lines".into()));
            }
            Ok(CongruenceKind::Parabolic { axis: axis.points.clone() })
        }
        2 => {
            let (a, b) = (&geo.lines[axes[0]], &geo.lines[axes[1]]);
            if meets(&pg8, &a.space, &b.space) {
                return Err(fail("axes meet".into()));
            }
            let mut joining = HashSet::new();
            for &x in &a.points {
                for &y in &b.points {
                    joining.insert(pg8.subspace_of_points(&[x, y]));
                }
            }
            if joining.len() != (q + 1) * (q + 1) || joining != fam_set {
                return Err(fail("lines are not those meeting both axes".into()));
            }
            Ok(CongruenceKind::Hyperbolic { axes: [a.points.clone(), b.points.clone()] })
        }
        k => Err(fail(format!("{k} pointwise fixed lines"))),
    }
}

/// Structure of the fixed lines inside an H-space of a type I line:
/// how many fixed-I lines, how they split into reguli, and how many
/// pointwise fixed lines each opposite regulus contains.
#[derive(Clone, Debug, Serialize)]
pub struct ReguliReport {
    pub fixed_i_lines: usize,
    pub reguli: usize,
    pub ptwise_in_opposite: Vec<usize>,
    /// For g = 3: whether the three reguli pairwise share exactly the points of a pointwise fixed line.
    pub pairwise_meet_in_ptwise_line: Option<bool>,
}

pub fn reguli_in_h_space(ctx: &ReductionContext, geo: &FixedGeometry, h_points: &[usize]) -> Result<ReguliReport> {
    let pg8 = ctx.pg8();
    let inside = geo.lines_in(h_points);
    let fixed_i: Vec<usize> = inside.iter().copied().filter(|&i| geo.lines[i].class == LineClass::FixedI).collect();
    let ptwise: HashSet<Subspace> = inside
        .iter()
        .filter(|&&i| geo.lines[i].class == LineClass::PtwiseFixed)
        .map(|&i| geo.lines[i].space.clone())
        .collect();
    // group by hwise-fixed 5-space
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &i in &fixed_i {
        let owner = geo
            .hwise_spaces
            .iter()
            .position(|h| pg8.contains(h, &geo.lines[i].space))
            .ok_or_else(|| GeomError::Invariant("fixed-I-line outside every hwise-fixed 5-space".into()))?;
        groups.entry(owner).or_default().push(i);
    }
    let mut ptwise_in_opposite = Vec::new();
    let mut point_sets = Vec::new();
    for idx in groups.values() {
        let opp = verify_regulus(&pg8, &spaces(geo, idx))
            .ok_or_else(|| GeomError::Invariant("fixed-I-lines do not form a regulus".into()))?;
        ptwise_in_opposite.push(opp.iter().filter(|l| ptwise.contains(l)).count());
        let pts: BTreeSet<usize> = idx.iter().flat_map(|&i| geo.lines[i].points.iter().copied()).collect();
        point_sets.push(pts);
    }
    let pairwise = (groups.len() == 3).then(|| {
        (0..3).all(|a| {
            (a + 1..3).all(|b| {
                let common: Vec<usize> = point_sets[a].intersection(&point_sets[b]).copied().collect();
                let ls = geo.lines_in(&common);
                ls.len() == 1
                    && geo.lines[ls[0]].class == LineClass::PtwiseFixed
                    && geo.lines[ls[0]].points == common
            })
        })
    });
    Ok(ReguliReport {
        fixed_i_lines: fixed_i.len(),
        reguli: groups.len(),
        ptwise_in_opposite,
        pairwise_meet_in_ptwise_line: pairwise,
    })
}

/// Checks the shape of the fixed-I and fixed-II lines inside a hwise-fixed
/// 5-space, which depends on q mod 3. Returns a description of the first
/// failure, if any.
pub fn verify_pifix_line_structure<R: Rng>(
    ctx: &ReductionContext,
    geo: &FixedGeometry,
    pifix: &Subspace,
    regularity_samples: usize,
    rng: &mut R,
) -> std::result::Result<usize, String> {
    let pg8 = ctx.pg8();
    let q = ctx.q() as usize;
    let pts = pg8.points_of(pifix);
    let fam: Vec<usize> = geo
        .lines_in(&pts)
        .into_iter()
        .filter(|&i| geo.lines[i].class != LineClass::PtwiseFixed)
        .collect();
    let inner: Vec<&Subspace> = geo.ptwise_planes.iter().filter(|p| pg8.contains(pifix, p)).collect();
    match ctx.params.n {
        -1 => {
            let want = q * q * q * q + q * q + 1;
            if fam.len() != want {
                return Err(format!("{} lines, expected {want}", fam.len()));
            }
            let covered: BTreeSet<usize> = fam.iter().flat_map(|&i| geo.lines[i].points.iter().copied()).collect();
            if covered.len() != pts.len() || fam.len() * (q + 1) != pts.len() {
                return Err("lines do not partition the 5-space".into());
            }
            let set: HashSet<Subspace> = spaces(geo, &fam).into_iter().collect();
            for _ in 0..regularity_samples {
                let pick: Vec<&usize> = fam.choose_multiple(rng, 2).collect();
                let (a, b) = (&geo.lines[*pick[0]], &geo.lines[*pick[1]]);
                let solid = pg8.span(&[&a.space, &b.space]).unwrap();
                let solid_pts = pg8.points_of(&solid);
                let in_solid: Vec<usize> = fam
                    .iter()
                    .copied()
                    .filter(|&i| super::contains_all(&solid_pts, &geo.lines[i].points))
                    .collect();
                if in_solid.len() != q * q + 1 {
                    return Err("a 3-space spanned by two lines is not partitioned".into());
                }
                let third = in_solid.iter().find(|&&i| i != *pick[0] && i != *pick[1]).unwrap();
                let reg = regulus_through(&pg8, [&a.space, &b.space, &geo.lines[*third].space])
                    .ok_or("no regulus through three lines")?;
                if !reg.iter().all(|l| set.contains(l)) {
                    return Err("spread is not regular".into());
                }
            }
            Ok(fam.len())
        }
        0 => {
            let plane = inner.first().ok_or("no pointwise fixed plane inside")?;
            let mut by_solid: BTreeMap<Subspace, Vec<usize>> = BTreeMap::new();
            for &i in &fam {
                let l = &geo.lines[i];
                if pg8.meet(&l.space, plane).unwrap().is_empty() {
                    return Err("a line misses the pointwise fixed plane".into());
                }
                by_solid.entry(pg8.span(&[&l.space, plane]).unwrap()).or_default().push(i);
            }
            if by_solid.len() != q * q + q + 1 {
                return Err(format!("{} solids through the fixed plane carry lines", by_solid.len()));
            }
            for ls in by_solid.values() {
                if ls.len() != q * q {
                    return Err(format!("a solid holds {} lines", ls.len()));
                }
                let mut common: BTreeSet<usize> = geo.lines[ls[0]].points.iter().copied().collect();
                for &i in &ls[1..] {
                    let p: BTreeSet<usize> = geo.lines[i].points.iter().copied().collect();
                    common = common.intersection(&p).copied().collect();
                }
                if common.len() != 1 {
                    return Err("lines of a solid have no common vertex".into());
                }
            }
            Ok(fam.len())
        }
        _ => {
            if inner.len() != 2 {
                return Err(format!("{} pointwise fixed planes inside", inner.len()));
            }
            let mut joining = HashSet::new();
            for x in pg8.points_of(inner[0]) {
                for y in pg8.points_of(inner[1]) {
                    joining.insert(pg8.subspace_of_points(&[x, y]));
                }
            }
            let set: HashSet<Subspace> = spaces(geo, &fam).into_iter().collect();
            if set != joining {
                return Err("lines are not those joining the two fixed planes".into());
            }
            Ok(fam.len())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::linalg;

    fn all_lines(s: &ProjSpace) -> Vec<Subspace> {
        let whole = s.subspace(linalg::identity(4)).unwrap();
        s.subspaces_of(&whole, 1)
    }

    /// Oracle: brute force over all lines of PG(3,q).
    fn brute_transversals(s: &ProjSpace, lines: &[Subspace]) -> Vec<Subspace> {
        all_lines(s)
            .into_iter()
            .filter(|t| lines.iter().all(|l| !s.meet(t, l).unwrap().is_empty()))
            .collect()
    }

    #[test]
    fn transversals_match_brute_force() {
        let f = Field::prime(3).unwrap();
        let s = ProjSpace::new(&f, 3);
        // a regulus: lines {(1,0,t,0),(0,1,0,t)}-style from the hyperbolic quadric x0x3 = x1x2
        let l0 = s.subspace(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let l1 = s.subspace(vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        let l2 = s.subspace(vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).unwrap();
        let mut t = transversals(&s, &[l0.clone(), l1.clone(), l2.clone()]);
        let mut b = brute_transversals(&s, &[l0.clone(), l1.clone(), l2.clone()]);
        t.sort();
        b.sort();
        assert_eq!(t, b);
        assert_eq!(t.len(), 4);
        let reg = regulus_through(&s, [&l0, &l1, &l2]).unwrap();
        assert_eq!(reg.len(), 4);
        assert_eq!(verify_regulus(&s, &reg).unwrap().len(), 4);
    }

    #[test]
    fn non_regulus_is_rejected() {
        // four pairwise disjoint lines, the fourth off the regulus of the first three
        let f = Field::prime(3).unwrap();
        let s = ProjSpace::new(&f, 3);
        let l0 = s.subspace(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let l1 = s.subspace(vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        let l2 = s.subspace(vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).unwrap();
        let reg: HashSet<Subspace> = regulus_through(&s, [&l0, &l1, &l2]).unwrap().into_iter().collect();
        let extra = all_lines(&s)
            .into_iter()
            .find(|l| {
                !reg.contains(l)
                    && [&l0, &l1, &l2].iter().all(|m| s.meet(l, m).unwrap().is_empty())
            })
            .unwrap();
        let set = vec![l0, l1, l2, extra];
        assert_ne!(brute_transversals(&s, &set).len(), 4);
        assert!(verify_regulus(&s, &set).is_none());
    }
}
