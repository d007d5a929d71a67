//! The linear set of every class of σ-fixed subspace, compared against its
//! expected shape, and the σ-fixed ruling planes over φ-fixed subplanes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{classify_linear_set, common_line, fixed_ruling_planes, linear_set, LinearSet, LinearSetKind};
use crate::error::Result;
use crate::fixed::census::Sampling;
use crate::fixed::{FixedGeometry, LineClass, PlaneClass};
use crate::pg::{PointId, Subspace};
use crate::reduction::{LineType2, PointType2, ReductionContext};

/// The observable shape of a linear set. `None` fields are not constrained
/// by the expectation they belong to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Shape {
    pub kind: &'static str,
    pub size: usize,
    pub types: Option<[usize; 3]>,
    pub on_type_i_line: Option<bool>,
    pub head_type_i: Option<bool>,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} of {} points", self.kind, self.size)?;
        if let Some([a, b, c]) = self.types {
            write!(f, " (I/II/III = {a}/{b}/{c})")?;
        }
        if self.on_type_i_line == Some(true) {
            write!(f, " on a Type-I line")?;
        }
        match self.head_type_i {
            Some(true) => write!(f, ", Type-I head"),
            Some(false) => write!(f, ", head not Type-I"),
            None => Ok(()),
        }
    }
}

impl Shape {
    fn expect(kind: &'static str, types: [usize; 3], on_type_i_line: Option<bool>, head_type_i: Option<bool>) -> Self {
        Shape { kind, size: types.iter().sum(), types: Some(types), on_type_i_line, head_type_i }
    }

    /// The shape of `ls`, reporting only the fields that `like` constrains.
    fn observe(ctx: &ReductionContext, ls: &LinearSet, like: &Shape) -> Self {
        let kind = classify_linear_set(ctx, ls);
        let head = match kind {
            LinearSetKind::Club { head } => Some(ctx.type2(head) == PointType2::I),
            _ => None,
        };
        Shape {
            kind: kind.name(),
            size: ls.points.len(),
            types: like.types.map(|_| ls.type_profile(ctx)),
            on_type_i_line: like.on_type_i_line.map(|_| on_type_i_line(ctx, &ls.points)),
            head_type_i: like.head_type_i.and(head),
        }
    }
}

fn on_type_i_line(ctx: &ReductionContext, points: &[PointId]) -> bool {
    common_line(ctx, points).is_some_and(|l| matches!(ctx.line_type(l), Ok(LineType2::I)))
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub row: String,
    pub expected: Shape,
    pub observed: Vec<Shape>,
    pub checked: usize,
    /// Weight distributions seen, as `weight -> number of points`.
    pub weights: Vec<BTreeMap<u32, usize>>,
    pub weight_identity_violations: usize,
    pub pass: bool,
}

fn check_row(ctx: &ReductionContext, row: &str, expected: Shape, sources: &[&Subspace]) -> Result<TableRow> {
    let q = ctx.q();
    let mut observed = BTreeSet::new();
    let mut weights = BTreeSet::new();
    let mut violations = 0;
    for s in sources {
        let ls = linear_set(ctx, s)?;
        if !ls.weight_identity_holds(q) {
            violations += 1;
        }
        weights.insert(ls.weight_distribution());
        observed.insert(Shape::observe(ctx, &ls, &expected));
    }
    let observed: Vec<Shape> = observed.into_iter().collect();
    let pass = !sources.is_empty() && observed.iter().all(|o| *o == expected) && violations == 0;
    Ok(TableRow {
        row: row.to_string(),
        expected,
        observed,
        checked: sources.len(),
        weights: weights.into_iter().collect(),
        weight_identity_violations: violations,
        pass,
    })
}

fn pick<'a>(items: Vec<&'a Subspace>, sampling: Sampling, salt: u64) -> Vec<&'a Subspace> {
    sampling.pick(items.len(), salt).into_iter().map(|i| items[i]).collect()
}

/// One row per class of σ-fixed subspace present at this q. Classes with no
/// members are omitted.
pub fn linear_set_table(ctx: &ReductionContext, geo: &FixedGeometry, sampling: Sampling) -> Result<Vec<TableRow>> {
    let p = ctx.params;
    let (q, n, g) = (p.q as usize, p.n, p.g as usize);
    let v = q * q + q + 1;
    let np1 = (n + 1) as usize;
    let qn = (p.q - n) as usize;
    let pg8 = ctx.pg8();
    let mut rows = Vec::new();
    let mut salt = 100;
    let mut add = |row: &str, expected: Shape, items: Vec<&Subspace>, rows: &mut Vec<TableRow>| -> Result<()> {
        salt += 1;
        if !items.is_empty() {
            rows.push(check_row(ctx, row, expected, &pick(items, sampling, salt))?);
        }
        Ok(())
    };

    let points: Vec<Subspace> = geo.fixed_points.iter().map(|&x| pg8.point_subspace(x)).collect();
    add("fixed point", Shape::expect("single point", [1, 0, 0], None, None), points.iter().collect(), &mut rows)?;
    let lines = |c: LineClass| geo.lines_of(c).map(|l| &l.space).collect::<Vec<_>>();
    add(
        "ptwise-fixed line",
        Shape::expect("F_q-line", [q + 1, 0, 0], None, None),
        lines(LineClass::PtwiseFixed),
        &mut rows,
    )?;
    add("fixed-I-line", Shape::expect("single point", [1, 0, 0], None, None), lines(LineClass::FixedI), &mut rows)?;
    add(
        "fixed-II-line",
        Shape::expect("F_q-line", [np1, qn, 0], Some(true), None),
        lines(LineClass::FixedII),
        &mut rows,
    )?;

    let planes = |c: PlaneClass| geo.planes_of(c).map(|pl| &pl.space).collect::<Vec<_>>();
    add(
        "ptwise-fixed plane",
        Shape::expect("F_q-plane", [v, 0, 0], None, None),
        planes(PlaneClass::PtwiseFixed),
        &mut rows,
    )?;
    add("S_I-plane", Shape::expect("single point", [1, 0, 0], None, None), planes(PlaneClass::SplaneI), &mut rows)?;
    let gn = (p.g - n) as usize;
    add(
        "fixed-II1-plane",
        Shape::expect("club", [gn, q * q + 1 - gn, 0], Some(true), Some(true)),
        planes(PlaneClass::FixedII1),
        &mut rows,
    )?;
    add(
        "fixed-II2-plane",
        Shape::expect("scattered", [g, v - g, 0], Some(true), None),
        planes(PlaneClass::FixedII2),
        &mut rows,
    )?;
    add(
        "fixed-III-plane",
        Shape::expect("F_q-plane", [g, g * qn, v - g * (qn + 1)], None, None),
        planes(PlaneClass::FixedIII),
        &mut rows,
    )?;
    add(
        "h1-plane",
        Shape::expect("club", [q + 1, q * q - q, 0], Some(true), Some(true)),
        planes(PlaneClass::H1),
        &mut rows,
    )?;
    let (h2_in, h2_out): (Vec<_>, Vec<_>) = geo
        .planes_of(PlaneClass::H2)
        .partition(|pl| on_type_i_line(ctx, &ctx.b_image(&pl.points).into_iter().collect::<Vec<_>>()));
    let h2_in: Vec<&Subspace> = h2_in.into_iter().map(|pl| &pl.space).collect();
    let h2_out: Vec<&Subspace> = h2_out.into_iter().map(|pl| &pl.space).collect();
    add(
        "h2-plane in an H_I-5-space",
        Shape { kind: "scattered", size: v, types: None, on_type_i_line: Some(true), head_type_i: None },
        h2_in,
        &mut rows,
    )?;
    add(
        "h2-plane outside every H_I-5-space",
        Shape::expect("F_q-plane", [(p.q + 1 + n) as usize, (p.q * p.q - n) as usize, 0], None, None),
        h2_out,
        &mut rows,
    )?;
    add(
        "hwise-fixed 5-space",
        Shape::expect("rank 6, all type I and II points", [v, v * (q * q * q - q), 0], None, None),
        geo.hwise_spaces.iter().collect(),
        &mut rows,
    )?;
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct SubplaneRow {
    pub source: String,
    pub checked: usize,
    /// Number of σ-fixed ruling planes seen for each subplane.
    pub fixed_ruling_planes: Vec<usize>,
    pub expected: usize,
    /// The fixed ruling plane is the source subspace itself (when unique).
    pub source_is_fixed_ruling_plane: bool,
    pub pass: bool,
}

/// For each φ-fixed F_q-subplane arising as B(Π) of a σ-fixed plane Π, the
/// σ-fixed planes of the opposite ruling of its Segre variety. Every such
/// subplane carries Type-I points, so g of them are expected.
pub fn subplane_ruling_rows(ctx: &ReductionContext, geo: &FixedGeometry, sampling: Sampling) -> Result<Vec<SubplaneRow>> {
    let g = ctx.params.g as usize;
    let mut rows = Vec::new();
    for (salt, class) in [(201, PlaneClass::PtwiseFixed), (202, PlaneClass::FixedIII), (203, PlaneClass::H2)] {
        let all: Vec<&Subspace> = geo.planes_of(class).map(|pl| &pl.space).collect();
        let mut counts = Vec::new();
        let mut is_source = true;
        for s in pick(all, sampling, salt) {
            let ls = linear_set(ctx, s)?;
            if classify_linear_set(ctx, &ls) != LinearSetKind::FqSubplane {
                continue;
            }
            let (report, fixed) = fixed_ruling_planes(ctx, &ls.points)?;
            counts.push(report.sigma_fixed);
            if g == 1 {
                is_source &= fixed.len() == 1 && fixed[0] == *s;
            } else {
                is_source &= fixed.contains(s);
            }
        }
        if counts.is_empty() {
            continue;
        }
        let pass = counts.iter().all(|&c| c == g) && is_source;
        rows.push(SubplaneRow {
            source: class.label().to_string(),
            checked: counts.len(),
            fixed_ruling_planes: counts.into_iter().collect::<BTreeSet<_>>().into_iter().collect(),
            expected: g,
            source_is_fixed_ruling_plane: is_source,
            pass,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::PhiVariant;

    #[test]
    fn every_row_matches_at_q3() {
        let ctx = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        let geo = FixedGeometry::enumerate(&ctx).unwrap();
        let rows = linear_set_table(&ctx, &geo, Sampling::Exhaustive).unwrap();
        for r in &rows {
            assert!(r.pass, "{}: expected {}, saw {:?}", r.row, r.expected, r.observed.iter().map(|o| o.to_string()).collect::<Vec<_>>());
        }
        let names: Vec<&str> = rows.iter().map(|r| r.row.as_str()).collect();
        assert!(names.contains(&"h1-plane") && names.contains(&"fixed-II2-plane"));
        for r in subplane_ruling_rows(&ctx, &geo, Sampling::Exhaustive).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }
}
