//! The Figueroa plane FIG(q³): the points of PG(2,q³), the Type I and II
//! lines kept, and every Type III line replaced by a Fig-block.

pub mod conic;
pub mod scroll;

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::pg::PointId;
use crate::reduction::{LineType2, Pg2Incidence, PointType2, ReductionContext};

/// Types of all lines of PG(2,q³), indexed by dual coordinate id.
pub fn line_types(ctx: &ReductionContext, inc: &Pg2Incidence) -> Vec<LineType2> {
    let q = ctx.q() as usize;
    inc.lines
        .iter()
        .map(|pts| match pts.iter().filter(|&&p| ctx.type2(p as usize) == PointType2::I).count() {
            0 => LineType2::III,
            1 => LineType2::II,
            k => {
                debug_assert_eq!(k, q + 1);
                LineType2::I
            }
        })
        .collect()
}

/// `ℓ^φ ∩ ℓ^φ²` for a Type III line ℓ.
pub fn line_to_point(ctx: &ReductionContext, l: PointId) -> Result<PointId> {
    let l1 = ctx.phi_line(l);
    ctx.meet_lines(l1, ctx.phi_line(l1))
}

/// The line `Ḡ^φ Ḡ^φ²` for a Type III point Ḡ.
pub fn point_to_line(ctx: &ReductionContext, g: PointId) -> Result<PointId> {
    let g1 = ctx.phi_of(g);
    ctx.line_through(g1, ctx.phi_of(g1))
}

fn require_type_iii(ctx: &ReductionContext, g: PointId) -> Result<()> {
    if ctx.type2(g) != PointType2::III {
        return Err(GeomError::Hypothesis(format!("point {g} is not a Type III point")));
    }
    Ok(())
}

/// The Type II points of the line `Ḡ^φ Ḡ^φ²`.
pub fn e_set(ctx: &ReductionContext, g: PointId) -> Result<Vec<PointId>> {
    require_type_iii(ctx, g)?;
    let m = point_to_line(ctx, g)?;
    Ok(ctx.line_points(m).into_iter().filter(|&p| ctx.type2(p) == PointType2::II).collect())
}

/// `{ℓ^φ ∩ ℓ^φ² : ℓ a Type III line through Ḡ}`, sorted.
pub fn f_set(ctx: &ReductionContext, inc: &Pg2Incidence, types: &[LineType2], g: PointId) -> Result<Vec<PointId>> {
    require_type_iii(ctx, g)?;
    let mut out = inc.point_lines[g]
        .iter()
        .filter(|&&l| types[l as usize] == LineType2::III)
        .map(|&l| line_to_point(ctx, l as usize))
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FigBlock {
    pub g_point: PointId,
    /// The Type III line `Ḡ^φ Ḡ^φ²` this block replaces.
    pub line: PointId,
    pub e: Vec<PointId>,
    pub f: Vec<PointId>,
    /// Sorted union of `e` and `f`.
    pub points: Vec<PointId>,
}

pub fn fig_block(ctx: &ReductionContext, inc: &Pg2Incidence, types: &[LineType2], g: PointId) -> Result<FigBlock> {
    let e = e_set(ctx, g)?;
    let f = f_set(ctx, inc, types, g)?;
    let mut points: Vec<PointId> = e.iter().chain(&f).copied().collect();
    points.sort_unstable();
    points.dedup();
    Ok(FigBlock { g_point: g, line: point_to_line(ctx, g)?, e, f, points })
}

/// Facts about one block checked against its defining line.
#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub e_size: usize,
    pub f_size: usize,
    pub block_size: usize,
    pub e_f_disjoint: bool,
    pub f_all_type_iii: bool,
    pub g_outside: bool,
    pub orbit_inside_f: bool,
    /// Points shared by the block and the line `Ḡ^φ Ḡ^φ²`.
    pub shared_with_line: usize,
    /// The shared points are exactly `𝓔 ∪ {Ḡ^φ, Ḡ^φ²}`.
    pub shared_is_e_and_orbit: bool,
}

pub fn block_report(ctx: &ReductionContext, b: &FigBlock) -> BlockReport {
    let g1 = ctx.phi_of(b.g_point);
    let g2 = ctx.phi_of(g1);
    let fs: HashSet<PointId> = b.f.iter().copied().collect();
    let line: Vec<PointId> = ctx.line_points(b.line);
    let shared: Vec<PointId> = line.iter().copied().filter(|p| b.points.binary_search(p).is_ok()).collect();
    let mut expect: Vec<PointId> = b.e.iter().copied().chain([g1, g2]).collect();
    expect.sort_unstable();
    BlockReport {
        e_size: b.e.len(),
        f_size: b.f.len(),
        block_size: b.points.len(),
        e_f_disjoint: b.e.iter().all(|p| !fs.contains(p)),
        f_all_type_iii: b.f.iter().all(|&p| ctx.type2(p) == PointType2::III),
        g_outside: b.points.binary_search(&b.g_point).is_err(),
        orbit_inside_f: fs.contains(&g1) && fs.contains(&g2),
        shared_with_line: shared.len(),
        shared_is_e_and_orbit: shared == expect,
    }
}

/// A finite incidence structure with lines stored as sorted point lists.
pub struct IncidencePlane {
    pub num_points: usize,
    pub lines: Vec<Vec<u32>>,
    pub point_lines: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub points: usize,
    pub lines: usize,
    pub line_sizes: Vec<usize>,
    pub point_degrees: Vec<usize>,
    /// Every two distinct points lie on exactly one line.
    pub points_axiom: bool,
    /// Every two distinct lines meet in exactly one point.
    pub lines_axiom: bool,
    pub witness: Option<String>,
}

impl AxiomReport {
    pub fn is_plane_of_order(&self, n: usize) -> bool {
        self.points == n * n + n + 1
            && self.lines == self.points
            && self.line_sizes == [n + 1]
            && self.point_degrees == [n + 1]
            && self.points_axiom
            && self.lines_axiom
    }
}

impl IncidencePlane {
    pub fn new(num_points: usize, lines: Vec<Vec<u32>>) -> Self {
        let mut point_lines = vec![Vec::new(); num_points];
        for (i, l) in lines.iter().enumerate() {
            for &p in l {
                point_lines[p as usize].push(i as u32);
            }
        }
        IncidencePlane { num_points, lines, point_lines }
    }

    /// Checks both axioms by counting, for each element, how often every
    /// other element is reached through a common neighbour.
    pub fn verify_axioms(&self) -> AxiomReport {
        let mut sizes: Vec<usize> = self.lines.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let mut degrees: Vec<usize> = self.point_lines.iter().map(Vec::len).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let (points_axiom, w1) = pair_check(&self.point_lines, &self.lines, self.num_points, "points");
        let (lines_axiom, w2) = pair_check(&self.lines, &self.point_lines, self.lines.len(), "lines");
        AxiomReport {
            points: self.num_points,
            lines: self.lines.len(),
            line_sizes: sizes,
            point_degrees: degrees,
            points_axiom,
            lines_axiom,
            witness: w1.or(w2),
        }
    }
}

/// For every `a`, every other element must be reached exactly once via `up[a]` then `down`.
fn pair_check(up: &[Vec<u32>], down: &[Vec<u32>], n: usize, what: &str) -> (bool, Option<String>) {
    let mut cnt = vec![0u32; n];
    for (a, mids) in up.iter().enumerate() {
        cnt.iter_mut().for_each(|c| *c = 0);
        for &m in mids {
            for &b in &down[m as usize] {
                cnt[b as usize] += 1;
            }
        }
        if let Some(b) = (0..n).find(|&b| b != a && cnt[b] != 1) {
            return (false, Some(format!("{what} {a} and {b} share {} elements", cnt[b])));
        }
    }
    (true, None)
}

/// FIG(q³) together with the bookkeeping needed to compare it with PG(2,q³).
pub struct Figueroa {
    pub plane: IncidencePlane,
    /// Numbers of kept Type I lines, kept Type II lines and Fig-blocks.
    pub tally: [usize; 3],
    /// Fig-blocks whose point set is not a line of PG(2,q³).
    pub blocks_not_pg_lines: usize,
    /// Distinct Fig-blocks (the map from Type III lines is injective iff this equals `tally[2]`).
    pub distinct_blocks: usize,
}

pub fn build_figueroa(ctx: &ReductionContext) -> Result<Figueroa> {
    let inc = Pg2Incidence::new(ctx);
    let types = line_types(ctx, &inc);
    let mut lines = Vec::with_capacity(inc.lines.len());
    let mut tally = [0usize; 3];
    let pg_lines: HashSet<&[u32]> = inc.lines.iter().map(Vec::as_slice).collect();
    let mut blocks = HashSet::new();
    let mut not_pg = 0;
    for (l, pts) in inc.lines.iter().enumerate() {
        match types[l] {
            LineType2::I => {
                tally[0] += 1;
                lines.push(pts.clone());
            }
            LineType2::II => {
                tally[1] += 1;
                lines.push(pts.clone());
            }
            LineType2::III => {
                tally[2] += 1;
                let g = line_to_point(ctx, l)?;
                if point_to_line(ctx, g)? != l {
                    return Err(GeomError::Invariant(format!("line {l} is not recovered from its point {g}")));
                }
                let block: Vec<u32> = fig_block(ctx, &inc, &types, g)?.points.iter().map(|&p| p as u32).collect();
                if !pg_lines.contains(block.as_slice()) {
                    not_pg += 1;
                }
                blocks.insert(block.clone());
                lines.push(block);
            }
        }
    }
    let distinct_blocks = blocks.len();
    Ok(Figueroa {
        plane: IncidencePlane::new(inc.lines.len(), lines),
        tally,
        blocks_not_pg_lines: not_pg,
        distinct_blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::PhiVariant;

    #[test]
    fn blocks_at_q3() {
        let ctx = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        let inc = Pg2Incidence::new(&ctx);
        let types = line_types(&ctx, &inc);
        let g = (0..757).find(|&p| ctx.type2(p) == PointType2::III).unwrap();
        let b = fig_block(&ctx, &inc, &types, g).unwrap();
        let r = block_report(&ctx, &b);
        assert_eq!((r.e_size, r.f_size, r.block_size), (13, 15, 28));
        assert!(r.e_f_disjoint && r.f_all_type_iii && r.g_outside && r.orbit_inside_f);
        assert_eq!(r.shared_with_line, 15);
        assert!(r.shared_is_e_and_orbit);
        assert!(e_set(&ctx, 0).is_err() || ctx.type2(0) == PointType2::III);
    }

    #[test]
    fn pg_plane_passes_and_broken_plane_fails() {
        let ctx = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        let inc = Pg2Incidence::new(&ctx);
        let pg = IncidencePlane::new(757, inc.lines.clone());
        assert!(pg.verify_axioms().is_plane_of_order(27));
        let mut lines = inc.lines.clone();
        lines[5] = lines[6].clone();
        let bad = IncidencePlane::new(757, lines).verify_axioms();
        assert!(!bad.points_axiom && bad.witness.is_some());
    }

    #[test]
    fn figueroa_q3_is_a_plane() {
        let ctx = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        let fig = build_figueroa(&ctx).unwrap();
        assert_eq!(fig.tally, [13, 312, 432]);
        assert_eq!(fig.distinct_blocks, 432);
        assert!(fig.blocks_not_pg_lines >= 1);
        assert!(fig.plane.verify_axioms().is_plane_of_order(27));
    }
}
