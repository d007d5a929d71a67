//! Segre varieties carried by the fixed subspaces: the ruling planes of the
//! type I S-planes, and the fixed-III-planes through an S_III-plane.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{FixedGeometry, LineClass};
use crate::error::{GeomError, Result};
use crate::pg::{PointId, Subspace};
use crate::reduction::{PointType2, PointType8, ReductionContext};

/// The second ruling system of the Segre variety whose first system is
/// the type I S-planes: `R_t = {Θ(tx, tx^q, tx^q²) : x ∈ GF(q³)}` for t
/// modulo GF(q)*.
pub fn p2q_ruling_planes(ctx: &ReductionContext) -> Vec<Subspace> {
    let t = &ctx.tower;
    let pg8 = ctx.pg8();
    let basis = [1, t.tau(), t.top.mul(t.tau(), t.tau())];
    (0..ctx.params.v() as u64)
        .map(|i| {
            let s = t.top.exp(i);
            let rows = basis
                .iter()
                .map(|&x| {
                    let v = [
                        t.top.mul(s, x),
                        t.top.mul(s, t.frobenius(x, 1)),
                        t.top.mul(s, t.frobenius(x, 2)),
                    ];
                    ctx.big_theta(&v)
                })
                .collect();
            pg8.subspace(rows).unwrap()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RulingReport {
    pub ruling_planes_total: usize,
    pub ruling_planes_pairwise_disjoint: bool,
    pub each_meets_every_si_plane_once: bool,
    pub fixed_i_lines: usize,
    pub transversal_planes: usize,
    pub transversals_pairwise_disjoint: bool,
    pub each_line_meets_each_transversal_once: bool,
    pub transversals_cover_lines: bool,
    pub ptwise_fixed_transversals: usize,
}

/// The fixed-I-lines of a hwise-fixed 5-space against the ruling planes of
/// the type I S-planes.
pub fn pifix_ruling_structure(ctx: &ReductionContext, geo: &FixedGeometry, pifix: &Subspace) -> RulingReport {
    let pg8 = ctx.pg8();
    let rulings = p2q_ruling_planes(ctx);
    let ruling_pts: Vec<Vec<PointId>> = rulings.iter().map(|r| pg8.points_of(r)).collect();
    let mut seen = HashSet::new();
    let disjoint = ruling_pts.iter().flatten().all(|x| seen.insert(*x));
    let si: Vec<PointId> = (0..ctx.pg2().num_points()).filter(|&p| ctx.type2(p) == PointType2::I).collect();
    let meets_once = ruling_pts.iter().all(|pts| {
        let b = ctx.b_image(pts);
        pts.len() == si.len() && b.len() == si.len() && si.iter().all(|p| b.contains(p))
    });

    let pts = pg8.points_of(pifix);
    let lines: Vec<usize> = geo
        .lines_in(&pts)
        .into_iter()
        .filter(|&i| geo.lines[i].class == LineClass::FixedI)
        .collect();
    let trans: Vec<usize> = (0..rulings.len()).filter(|&i| pg8.contains(pifix, &rulings[i])).collect();
    let mut seen = HashSet::new();
    let t_disjoint = trans.iter().flat_map(|&i| &ruling_pts[i]).all(|x| seen.insert(*x));
    let each_once = lines.iter().all(|&l| {
        trans.iter().all(|&t| {
            geo.lines[l].points.iter().filter(|x| ruling_pts[t].binary_search(x).is_ok()).count() == 1
        })
    });
    let line_pts: BTreeSet<PointId> = lines.iter().flat_map(|&l| geo.lines[l].points.iter().copied()).collect();
    let t_pts: BTreeSet<PointId> = trans.iter().flat_map(|&t| ruling_pts[t].iter().copied()).collect();
    let ptwise = trans
        .iter()
        .filter(|&&t| geo.ptwise_planes.contains(&rulings[t]))
        .count();
    RulingReport {
        ruling_planes_total: rulings.len(),
        ruling_planes_pairwise_disjoint: disjoint,
        each_meets_every_si_plane_once: meets_once,
        fixed_i_lines: lines.len(),
        transversal_planes: trans.len(),
        transversals_pairwise_disjoint: t_disjoint,
        each_line_meets_each_transversal_once: each_once,
        transversals_cover_lines: line_pts == t_pts,
        ptwise_fixed_transversals: ptwise,
    }
}

/// `𝔾 = {⟨G, Gσ, Gσ²⟩ : G ∈ γ}` for an S_III-plane γ.
pub fn g_planes(ctx: &ReductionContext, gamma_point: PointId) -> Result<Vec<Subspace>> {
    if ctx.type2(gamma_point) != PointType2::III {
        return Err(GeomError::Hypothesis("γ must be an S_III-plane".into()));
    }
    let pg8 = ctx.pg8();
    let pts = pg8.points_of(ctx.splane(gamma_point));
    Ok(pts
        .into_iter()
        .map(|g| {
            let g1 = ctx.sigma_of(g);
            pg8.subspace_of_points(&[g, g1, ctx.sigma_of(g1)])
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct GReport {
    pub planes: usize,
    pub all_fixed_iii: bool,
    pub pairwise_disjoint: bool,
    pub each_meets_gamma_orbit_once: bool,
    pub each_meets_ptwise_planes_once: bool,
    pub distinct_points_on_ptwise_planes: bool,
}

pub fn verify_g_planes(ctx: &ReductionContext, geo: &FixedGeometry, gamma_point: PointId) -> Result<GReport> {
    let pg8 = ctx.pg8();
    let planes = g_planes(ctx, gamma_point)?;
    let pts: Vec<Vec<PointId>> = planes.iter().map(|p| pg8.points_of(p)).collect();
    let all_fixed_iii = planes.iter().zip(&pts).all(|(p, ps)| {
        ctx.apply_sigma_sub(p) == *p && ps.iter().any(|&x| ctx.type8(x) == PointType8::IIITriangle)
    });
    let mut seen = HashSet::new();
    let disjoint = pts.iter().flatten().all(|x| seen.insert(*x));
    let gamma = ctx.splane(gamma_point).clone();
    let g1 = ctx.apply_sigma_sub(&gamma);
    let g2 = ctx.apply_sigma_sub(&g1);
    let once = |a: &Subspace, b: &Subspace| pg8.meet(a, b).map(|m| m.rank() == 1).unwrap_or(false);
    let orbit = planes.iter().all(|p| [&gamma, &g1, &g2].iter().all(|g| once(p, g)));
    let ptw = planes.iter().all(|p| geo.ptwise_planes.iter().all(|f| once(p, f)));
    let distinct = geo.ptwise_planes.iter().all(|f| {
        let m: HashSet<Subspace> = planes.iter().map(|p| pg8.meet(p, f).unwrap()).collect();
        m.len() == planes.len()
    });
    Ok(GReport {
        planes: planes.len(),
        all_fixed_iii,
        pairwise_disjoint: disjoint,
        each_meets_gamma_orbit_once: orbit,
        each_meets_ptwise_planes_once: ptw,
        distinct_points_on_ptwise_planes: distinct,
    })
}
