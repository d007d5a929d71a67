//! σ-fixed points, lines, planes and hyperplane-wise fixed 5-spaces of PG(8,q).
//!
//! Lines and planes are found from orbit spans rather than by scanning all
//! subspaces of PG(8,q):
//! - a fixed line is either pointwise fixed (then it lies in an eigenspace
//!   of M) or it is `⟨P, Pσ⟩` for a non-fixed point P on it;
//! - a fixed plane with a point P spanning a triangle with its orbit is
//!   `⟨P, Pσ, Pσ²⟩`; a fixed plane without such a point carries an axis of
//!   fixed points and is spanned by that axis and one more fixed line.

pub mod census;
pub mod congruence;
pub mod segre;
pub mod structure;

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::linalg;
use crate::pg::{PointId, Subspace};
use crate::reduction::{PointType2, PointType8, ReductionContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LineClass {
    PtwiseFixed,
    FixedI,
    FixedII,
}

impl LineClass {
    pub const ALL: [LineClass; 3] = [LineClass::PtwiseFixed, LineClass::FixedI, LineClass::FixedII];

    pub fn label(self) -> &'static str {
        match self {
            LineClass::PtwiseFixed => "ptwise-fixed line",
            LineClass::FixedI => "fixed-I-line",
            LineClass::FixedII => "fixed-II-line",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PlaneClass {
    PtwiseFixed,
    SplaneI,
    FixedII1,
    FixedII2,
    FixedIII,
    H1,
    H2,
}

impl PlaneClass {
    pub const ALL: [PlaneClass; 7] = [
        PlaneClass::PtwiseFixed,
        PlaneClass::SplaneI,
        PlaneClass::FixedII1,
        PlaneClass::FixedII2,
        PlaneClass::FixedIII,
        PlaneClass::H1,
        PlaneClass::H2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PlaneClass::PtwiseFixed => "ptwise-fixed plane",
            PlaneClass::SplaneI => "S_I-plane",
            PlaneClass::FixedII1 => "fixed-II1-plane",
            PlaneClass::FixedII2 => "fixed-II2-plane",
            PlaneClass::FixedIII => "fixed-III-plane",
            PlaneClass::H1 => "h1-plane",
            PlaneClass::H2 => "h2-plane",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FixedLine {
    pub space: Subspace,
    pub class: LineClass,
    /// Sorted point ids.
    pub points: Vec<PointId>,
}

#[derive(Clone, Debug)]
pub struct FixedPlane {
    pub space: Subspace,
    pub class: PlaneClass,
    pub points: Vec<PointId>,
    /// Indices into [`FixedGeometry::lines`] of the fixed lines inside.
    pub lines: Vec<usize>,
}

/// Every σ-fixed point, line and plane, the pointwise fixed planes and the
/// hyperplane-wise fixed 5-spaces.
pub struct FixedGeometry {
    pub fixed_points: Vec<PointId>,
    pub ptwise_planes: Vec<Subspace>,
    pub hwise_spaces: Vec<Subspace>,
    pub lines: Vec<FixedLine>,
    pub planes: Vec<FixedPlane>,
    lines_through: HashMap<PointId, Vec<u32>>,
}

/// Sorted membership test.
pub fn contains_all(sorted: &[PointId], items: &[PointId]) -> bool {
    items.iter().all(|x| sorted.binary_search(x).is_ok())
}

fn transpose(m: &[Vec<u32>]) -> Vec<Vec<u32>> {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Cube roots of unity in GF(q).
pub fn cube_roots_of_unity(ctx: &ReductionContext) -> Vec<u32> {
    let f = &ctx.tower.sub;
    (1..f.order()).filter(|&x| f.pow(x, 3) == 1).collect()
}

fn shifted(ctx: &ReductionContext, lambda: u32) -> Vec<Vec<u32>> {
    let f = &ctx.tower.sub;
    let mut x = ctx.sigma.matrix.clone();
    for (i, row) in x.iter_mut().enumerate() {
        row[i] = f.sub(row[i], lambda);
    }
    x
}

/// The pointwise fixed planes, as left eigenspaces `{v : vM = λv}`.
pub fn ptwise_fixed_planes(ctx: &ReductionContext) -> Result<Vec<Subspace>> {
    let pg8 = ctx.pg8();
    let mut out = Vec::new();
    for lambda in cube_roots_of_unity(ctx) {
        let x = shifted(ctx, lambda);
        let rows = linalg::nullspace(pg8.field(), &transpose(&x), 9);
        if !rows.is_empty() {
            out.push(pg8.subspace(rows)?);
        }
    }
    Ok(out)
}

/// The hyperplane-wise fixed 5-spaces. A hyperplane with coordinates h is
/// fixed iff `Mh ∝ h`, so every hyperplane through a subspace is fixed iff
/// its annihilator consists of right eigenvectors.
pub fn hwise_fixed_5spaces(ctx: &ReductionContext) -> Result<Vec<Subspace>> {
    let pg8 = ctx.pg8();
    let mut out = Vec::new();
    for mu in cube_roots_of_unity(ctx) {
        let eig = linalg::nullspace(pg8.field(), &shifted(ctx, mu), 9);
        if !eig.is_empty() {
            out.push(pg8.annihilator(&pg8.subspace(eig)?));
        }
    }
    Ok(out)
}

fn classify_line(ctx: &ReductionContext, points: &[PointId]) -> Result<LineClass> {
    let mut counts = [0usize; 6];
    for &x in points {
        counts[ctx.type8(x).index()] += 1;
    }
    let q = ctx.params.q as usize;
    let fixed = (ctx.params.n + 1) as usize;
    let moved = q - fixed + 1;
    match counts {
        [c, 0, 0, 0, 0, 0] if c == q + 1 => Ok(LineClass::PtwiseFixed),
        [f, i, 0, 0, 0, 0] if f == fixed && i == moved => Ok(LineClass::FixedI),
        [f, 0, 0, i, 0, 0] if f == fixed && i == moved => Ok(LineClass::FixedII),
        _ => Err(GeomError::Unclassifiable {
            what: "fixed line",
            detail: format!("composition {counts:?}"),
        }),
    }
}

impl FixedGeometry {
    pub fn enumerate(ctx: &ReductionContext) -> Result<Self> {
        let pg8 = ctx.pg8();
        let n8 = pg8.num_points();
        let fixed_points: Vec<PointId> = (0..n8).filter(|&x| ctx.sigma_of(x) == x).collect();

        let ptwise_planes = ptwise_fixed_planes(ctx)?;
        let mut union: Vec<PointId> = ptwise_planes.iter().flat_map(|p| pg8.points_of(p)).collect();
        union.sort_unstable();
        if union != fixed_points {
            return Err(GeomError::Invariant(
                "fixed points are not the union of the eigenspace planes".into(),
            ));
        }
        let hwise_spaces = hwise_fixed_5spaces(ctx)?;

        // lines
        let mut seen: HashSet<Subspace> = HashSet::new();
        let mut lines = Vec::new();
        let mut add_line = |space: Subspace, lines: &mut Vec<FixedLine>| -> Result<()> {
            if seen.contains(&space) {
                return Ok(());
            }
            if ctx.apply_sigma_sub(&space) != space {
                return Err(GeomError::Invariant("orbit span is not σ-invariant".into()));
            }
            let points = pg8.points_of(&space);
            let class = classify_line(ctx, &points)?;
            seen.insert(space.clone());
            lines.push(FixedLine { space, class, points });
            Ok(())
        };
        for plane in &ptwise_planes {
            for l in pg8.subspaces_of(plane, 1) {
                add_line(l, &mut lines)?;
            }
        }
        for x in 0..n8 {
            if matches!(ctx.type8(x), PointType8::IColinear | PointType8::IIColinear) {
                let l = pg8.subspace_of_points(&[x, ctx.sigma_of(x)]);
                add_line(l, &mut lines)?;
            }
        }
        let mut lines_through: HashMap<PointId, Vec<u32>> = HashMap::new();
        for (i, l) in lines.iter().enumerate() {
            for &x in &l.points {
                lines_through.entry(x).or_default().push(i as u32);
            }
        }

        let mut geo = FixedGeometry {
            fixed_points,
            ptwise_planes,
            hwise_spaces,
            lines,
            planes: Vec::new(),
            lines_through,
        };
        geo.planes = geo.enumerate_planes(ctx)?;
        Ok(geo)
    }

    fn enumerate_planes(&self, ctx: &ReductionContext) -> Result<Vec<FixedPlane>> {
        let pg8 = ctx.pg8();
        let mut spaces: Vec<(Subspace, Vec<PointId>)> = Vec::new();
        let mut seen: HashSet<Subspace> = HashSet::new();
        for p in &self.ptwise_planes {
            seen.insert(p.clone());
            spaces.push((p.clone(), pg8.points_of(p)));
        }
        // planes through triangle points; each such point lies in exactly one fixed plane
        let n8 = pg8.num_points();
        let mut covered = vec![false; n8];
        for x in 0..n8 {
            let t = ctx.type8(x);
            if covered[x]
                || !matches!(t, PointType8::ITriangle | PointType8::IITriangle | PointType8::IIITriangle)
            {
                continue;
            }
            let s1 = ctx.sigma_of(x);
            let plane = pg8.subspace_of_points(&[x, s1, ctx.sigma_of(s1)]);
            let points = pg8.points_of(&plane);
            for &y in &points {
                if matches!(
                    ctx.type8(y),
                    PointType8::ITriangle | PointType8::IITriangle | PointType8::IIITriangle
                ) {
                    if covered[y] {
                        return Err(GeomError::Invariant(format!(
                            "point {y} lies in two fixed planes"
                        )));
                    }
                    covered[y] = true;
                }
            }
            seen.insert(plane.clone());
            spaces.push((plane, points));
        }
        // planes with an axis: a pointwise fixed line plus a fixed line meeting it
        for (li, l) in self.lines.iter().enumerate() {
            if l.class != LineClass::PtwiseFixed {
                continue;
            }
            for &x in &l.points {
                for &mi in &self.lines_through[&x] {
                    let mi = mi as usize;
                    if mi == li || self.lines[mi].class == LineClass::PtwiseFixed {
                        continue;
                    }
                    let plane = pg8.span(&[&l.space, &self.lines[mi].space])?;
                    if seen.insert(plane.clone()) {
                        let points = pg8.points_of(&plane);
                        spaces.push((plane, points));
                    }
                }
            }
        }

        let mut planes = Vec::with_capacity(spaces.len());
        for (space, points) in spaces {
            if ctx.apply_sigma_sub(&space) != space {
                return Err(GeomError::Invariant("candidate plane is not σ-invariant".into()));
            }
            let lines = self.lines_in(&points);
            let class = self.classify_plane(ctx, &points, &lines)?;
            planes.push(FixedPlane { space, class, points, lines });
        }
        Ok(planes)
    }

    fn classify_plane(&self, ctx: &ReductionContext, points: &[PointId], lines: &[usize]) -> Result<PlaneClass> {
        let mut counts = [0usize; 6];
        for &x in points {
            counts[ctx.type8(x).index()] += 1;
        }
        let splanes = ctx.b_image(points);
        let has_fixed_i = lines.iter().any(|&i| self.lines[i].class == LineClass::FixedI);
        let class = if counts[0] == points.len() {
            PlaneClass::PtwiseFixed
        } else if splanes.len() == 1 && ctx.type2(*splanes.iter().next().unwrap()) == PointType2::I {
            PlaneClass::SplaneI
        } else if counts[PointType8::IIITriangle.index()] > 0 {
            PlaneClass::FixedIII
        } else if counts[PointType8::IITriangle.index()] > 0 {
            if has_fixed_i {
                PlaneClass::FixedII1
            } else {
                PlaneClass::FixedII2
            }
        } else if counts[PointType8::ITriangle.index()] == 0 {
            if counts[PointType8::IColinear.index()] > 0 {
                PlaneClass::H1
            } else {
                PlaneClass::H2
            }
        } else {
            return Err(GeomError::Unclassifiable {
                what: "fixed plane",
                detail: format!("composition {counts:?}"),
            });
        };
        Ok(class)
    }

    /// Indices of fixed lines all of whose points lie in the sorted set.
    pub fn lines_in(&self, sorted: &[PointId]) -> Vec<usize> {
        let mut found = BTreeSet::new();
        for x in sorted {
            if let Some(ls) = self.lines_through.get(x) {
                for &i in ls {
                    found.insert(i as usize);
                }
            }
        }
        found
            .into_iter()
            .filter(|&i| contains_all(sorted, &self.lines[i].points))
            .collect()
    }

    /// Fixed lines through a point.
    pub fn lines_through(&self, x: PointId) -> Vec<usize> {
        self.lines_through.get(&x).map_or(Vec::new(), |v| v.iter().map(|&i| i as usize).collect())
    }

    /// Counts of (ptwise-fixed, fixed-I, fixed-II) lines among indices.
    pub fn line_profile(&self, idx: &[usize]) -> [usize; 3] {
        let mut c = [0; 3];
        for &i in idx {
            c[self.lines[i].class as usize] += 1;
        }
        c
    }

    pub fn lines_of(&self, class: LineClass) -> impl Iterator<Item = &FixedLine> {
        self.lines.iter().filter(move |l| l.class == class)
    }

    pub fn planes_of(&self, class: PlaneClass) -> impl Iterator<Item = &FixedPlane> {
        self.planes.iter().filter(move |p| p.class == class)
    }

    pub fn line_count(&self, class: LineClass) -> usize {
        self.lines_of(class).count()
    }

    pub fn plane_count(&self, class: PlaneClass) -> usize {
        self.planes_of(class).count()
    }
}

/// Counts of the six point types in a point set, in [`PointType8::ALL`] order.
pub fn composition(ctx: &ReductionContext, points: &[PointId]) -> [usize; 6] {
    let mut c = [0; 6];
    for &x in points {
        c[ctx.type8(x).index()] += 1;
    }
    c
}

/// Checks the intersection pattern of a hyperplane-wise fixed 5-space with
/// the spread: a fixed-I-line in every type I S-plane, one II: point in
/// every type II S-plane and nothing in type III S-planes.
pub fn check_hwise_spread_pattern(
    ctx: &ReductionContext,
    geo: &FixedGeometry,
    space: &Subspace,
) -> std::result::Result<(), String> {
    let pg8 = ctx.pg8();
    let points = pg8.points_of(space);
    let mut per_plane: HashMap<PointId, Vec<PointId>> = HashMap::new();
    for &x in &points {
        per_plane.entry(ctx.splane_of(x)).or_default().push(x);
    }
    let q = ctx.q() as usize;
    for p in 0..ctx.pg2().num_points() {
        let pts = per_plane.get(&p).map_or(&[][..], |v| v.as_slice());
        match ctx.type2(p) {
            PointType2::I => {
                let line = geo.lines_in(pts);
                if pts.len() != q + 1
                    || line.len() != 1
                    || geo.lines[line[0]].class != LineClass::FixedI
                {
                    return Err(format!("type I S-plane {p}: meets in {} points", pts.len()));
                }
            }
            PointType2::II => {
                if pts.len() != 1 || ctx.type8(pts[0]) != PointType8::IIColinear {
                    return Err(format!("type II S-plane {p}: meets in {} points", pts.len()));
                }
            }
            PointType2::III => {
                if !pts.is_empty() {
                    return Err(format!("type III S-plane {p} is met"));
                }
            }
        }
    }
    Ok(())
}

/// Every hyperplane through the space is σ-fixed.
pub fn is_hwise_fixed(ctx: &ReductionContext, space: &Subspace) -> bool {
    let pg8 = ctx.pg8();
    let f = pg8.field();
    let ann = pg8.annihilator(space);
    pg8.points_of(&ann).into_iter().all(|h| {
        let hv = pg8.coords(h);
        let img = linalg::mat_vec(f, &ctx.sigma.matrix, &hv);
        pg8.id_of(&img).ok() == Some(h)
    })
}
