//! Structural facts about the fixed points, the pointwise and hyperplane-wise
//! fixed spaces, and how a hyperplane-wise fixed 5-space meets the ℍ-5-spaces.

use std::collections::BTreeSet;

use serde::Serialize;

use super::census::Sampling;
use super::congruence::verify_regulus;
use super::{composition, FixedGeometry, LineClass};
use crate::error::Result;
use crate::linsets::common_line;
use crate::pg::{PointId, Subspace};
use crate::reduction::{LineType2, PointType2, PointType8, ReductionContext};

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub fixed_points: usize,
    pub expected_fixed_points: usize,
    pub ptwise_planes: usize,
    /// The pointwise fixed planes are pairwise disjoint and each meets every S_I-plane in one point.
    pub ptwise_planes_are_ruling_planes: bool,
    pub each_s_i_plane_has_g_fixed_points: bool,
    pub hwise_spaces: usize,
    /// Each hwise space contains n+1 pointwise fixed planes and misses the others.
    pub hwise_vs_ptwise: bool,
    /// With three hwise spaces: pairwise meets are pointwise fixed planes, no common point.
    pub hwise_pairwise: Option<bool>,
    /// Every I: and II: point lies in exactly one hwise space.
    pub colinear_points_in_unique_hwise: bool,
    /// Every fixed-I and fixed-II line lies in exactly one hwise space.
    pub fixed_lines_in_unique_hwise: bool,
    pub fixed_i_lines_in_s_i_planes: bool,
    /// Each fixed-II line lies in a unique ℍ-5-space and it has Type I.
    pub fixed_ii_lines_in_h_i: bool,
}

impl StructureReport {
    pub fn pass(&self, g: usize) -> bool {
        self.fixed_points == self.expected_fixed_points
            && self.ptwise_planes == g
            && self.ptwise_planes_are_ruling_planes
            && self.each_s_i_plane_has_g_fixed_points
            && self.hwise_spaces == g
            && self.hwise_vs_ptwise
            && self.hwise_pairwise != Some(false)
            && self.colinear_points_in_unique_hwise
            && self.fixed_lines_in_unique_hwise
            && self.fixed_i_lines_in_s_i_planes
            && self.fixed_ii_lines_in_h_i
    }
}

fn membership(ctx: &ReductionContext, spaces: &[Subspace]) -> Vec<u8> {
    let pg8 = ctx.pg8();
    let mut m = vec![0u8; pg8.num_points()];
    for s in spaces {
        for x in pg8.points_of(s) {
            m[x] += 1;
        }
    }
    m
}

pub fn structure_report(ctx: &ReductionContext, geo: &FixedGeometry) -> Result<StructureReport> {
    let p = ctx.params;
    let (q, n, g) = (p.q as usize, p.n, p.g as usize);
    let v = q * q + q + 1;
    let pg8 = ctx.pg8();
    let s_i: Vec<PointId> = ctx.type_i_points();

    let ptwise_pts: Vec<Vec<PointId>> = geo.ptwise_planes.iter().map(|s| pg8.points_of(s)).collect();
    let in_ptwise = membership(ctx, &geo.ptwise_planes);
    let ruling = in_ptwise.iter().all(|&c| c <= 1)
        && ptwise_pts.iter().all(|pts| {
            let hit: BTreeSet<PointId> = pts.iter().map(|&x| ctx.splane_of(x)).collect();
            pts.len() == v && hit.len() == v && hit.iter().all(|&h| ctx.type2(h) == PointType2::I)
        });
    let s_i_g = s_i.iter().all(|&sp| {
        pg8.points_of(ctx.splane(sp)).iter().filter(|&&x| ctx.sigma_of(x) == x).count() == g
    });

    let in_hwise = membership(ctx, &geo.hwise_spaces);
    let hwise_vs_ptwise = geo.hwise_spaces.iter().all(|h| {
        let inside = geo.ptwise_planes.iter().filter(|f| pg8.contains(h, f)).count();
        let disjoint = geo.ptwise_planes.iter().filter(|f| pg8.meet(h, f).map_or(false, |m| m.is_empty())).count();
        inside as i64 == n + 1 && disjoint as i64 == g as i64 - (n + 1)
    });
    let hwise_pairwise = (g == 3).then(|| {
        let hs = &geo.hwise_spaces;
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let pair_ok = pairs.iter().all(|&(a, b)| {
            pg8.meet(&hs[a], &hs[b]).map_or(false, |m| geo.ptwise_planes.contains(&m))
        });
        pair_ok && in_hwise.iter().all(|&c| c < 3)
    });

    let colinear = (0..pg8.num_points())
        .filter(|&x| matches!(ctx.type8(x), PointType8::IColinear | PointType8::IIColinear))
        .all(|x| in_hwise[x] == 1);
    let unique_hwise_lines = geo.lines.iter().filter(|l| l.class != LineClass::PtwiseFixed).all(|l| {
        let common = geo.hwise_spaces.iter().filter(|h| l.points.iter().all(|&x| pg8.contains_point(h, x))).count();
        common == 1
    });
    let fixed_i_in_s_i = geo.lines_of(LineClass::FixedI).all(|l| {
        let planes = ctx.b_image(&l.points);
        planes.len() == 1 && ctx.type2(*planes.iter().next().unwrap()) == PointType2::I
    });
    let fixed_ii_in_h_i = geo.lines_of(LineClass::FixedII).all(|l| {
        let b: Vec<PointId> = ctx.b_image(&l.points).into_iter().collect();
        b.len() >= 2 && common_line(ctx, &b).map_or(false, |m| ctx.line_type(m).ok() == Some(LineType2::I))
    });

    Ok(StructureReport {
        fixed_points: geo.fixed_points.len(),
        expected_fixed_points: g * v,
        ptwise_planes: geo.ptwise_planes.len(),
        ptwise_planes_are_ruling_planes: ruling,
        each_s_i_plane_has_g_fixed_points: s_i_g,
        hwise_spaces: geo.hwise_spaces.len(),
        hwise_vs_ptwise,
        hwise_pairwise,
        colinear_points_in_unique_hwise: colinear,
        fixed_lines_in_unique_hwise: unique_hwise_lines,
        fixed_i_lines_in_s_i_planes: fixed_i_in_s_i,
        fixed_ii_lines_in_h_i: fixed_ii_in_h_i,
    })
}

/// How a hwise space meets the ℍ-5-spaces of one line type.
#[derive(Clone, Debug, Serialize)]
pub struct MeetRow {
    pub line_type: LineType2,
    pub expected_rank: usize,
    pub expected_points: [usize; 6],
    pub expected_lines: [usize; 3],
    pub checked: usize,
    /// Distinct (rank, composition, fixed-line profile) triples seen.
    pub observed: Vec<(usize, [usize; 6], [usize; 3])>,
    /// For ℍ_I: the fixed-I lines of the meet form a regulus.
    pub regulus: Option<bool>,
    pub pass: bool,
}

pub fn hwise_meets(ctx: &ReductionContext, geo: &FixedGeometry, sampling: Sampling) -> Result<Vec<MeetRow>> {
    let p = ctx.params;
    let (q, n) = (p.q as usize, p.n);
    let n1 = (n + 1) as usize;
    let qn = (p.q - n) as usize;
    let pg8 = ctx.pg8();
    let mut by_type: [Vec<PointId>; 3] = Default::default();
    for l in 0..ctx.pg2().num_points() {
        by_type[ctx.line_type(l)? as usize].push(l);
    }
    let specs = [
        (LineType2::I, 4, [(q + 1) * n1, (q + 1) * qn, 0, q * q * q - q, 0, 0], [n1, q + 1, (q * q * q - q) / qn]),
        (LineType2::II, 3, [n1, qn, 0, q * q, 0, 0], [0, 1, 0]),
        (LineType2::III, 3, [0, 0, 0, q * q + q + 1, 0, 0], [0, 0, 0]),
    ];
    let mut rows = Vec::new();
    for (k, (lt, rank, pts, lines)) in specs.into_iter().enumerate() {
        let mut observed = BTreeSet::new();
        let mut regulus = (lt == LineType2::I).then_some(true);
        let mut checked = 0;
        for (hi, h) in geo.hwise_spaces.iter().enumerate() {
            for i in sampling.pick(by_type[k].len(), 0x6d65_6574 + (hi * 3 + k) as u64) {
                let m = pg8.meet(h, &ctx.h_space(by_type[k][i]))?;
                let mp = pg8.points_of(&m);
                let idx = geo.lines_in(&mp);
                if let Some(r) = regulus.as_mut() {
                    let fi: Vec<Subspace> = idx
                        .iter()
                        .filter(|&&j| geo.lines[j].class == LineClass::FixedI)
                        .map(|&j| geo.lines[j].space.clone())
                        .collect();
                    *r &= verify_regulus(&pg8, &fi).is_some();
                }
                observed.insert((m.rank(), composition(ctx, &mp), geo.line_profile(&idx)));
                checked += 1;
            }
        }
        let pass = observed.len() == 1 && observed.contains(&(rank, pts, lines)) && regulus != Some(false);
        rows.push(MeetRow {
            line_type: lt,
            expected_rank: rank,
            expected_points: pts,
            expected_lines: lines,
            checked,
            observed: observed.into_iter().collect(),
            regulus,
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
    fn structure_and_meets() {
        for (q, sampling) in [(3u32, Sampling::Exhaustive), (4, Sampling::Sample { count: 8, seed: 1 })] {
            let ctx = ReductionContext::new(q, PhiVariant::Phi1).unwrap();
            let geo = FixedGeometry::enumerate(&ctx).unwrap();
            let r = structure_report(&ctx, &geo).unwrap();
            assert!(r.pass(ctx.params.g as usize), "{r:?}");
            for row in hwise_meets(&ctx, &geo, sampling).unwrap() {
                assert!(row.pass, "{row:?}");
            }
        }
    }
}
