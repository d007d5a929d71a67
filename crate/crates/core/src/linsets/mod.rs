//! Linear sets B(Π) of PG(2,q³) coming from σ-fixed subspaces Π of PG(8,q).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::linalg;
use crate::pg::{PointId, Subspace};
use crate::reduction::{PointType2, ReductionContext};

pub mod table;

#[derive(Clone, Debug)]
pub struct LinearSet {
    pub source: Subspace,
    pub rank: usize,
    /// Sorted PG(2,q³) point ids.
    pub points: Vec<PointId>,
    /// `dim(Π ∩ ⟦P⟧) + 1` for each point.
    pub weights: BTreeMap<PointId, u32>,
}

impl LinearSet {
    /// `Σ (q^w − 1)/(q − 1) = (q^rank − 1)/(q − 1)`.
    pub fn weight_identity_holds(&self, q: u32) -> bool {
        let q = q as u64;
        let theta = |r: u32| (q.pow(r) - 1) / (q - 1);
        self.weights.values().map(|&w| theta(w)).sum::<u64>() == theta(self.rank as u32)
    }

    /// Numbers of type I, II and III points.
    pub fn type_profile(&self, ctx: &ReductionContext) -> [usize; 3] {
        let mut c = [0; 3];
        for &p in &self.points {
            c[ctx.type2(p) as usize] += 1;
        }
        c
    }

    /// Number of points of each weight, indexed by weight.
    pub fn weight_distribution(&self) -> BTreeMap<u32, usize> {
        let mut d = BTreeMap::new();
        for &w in self.weights.values() {
            *d.entry(w).or_default() += 1;
        }
        d
    }
}

pub fn linear_set(ctx: &ReductionContext, source: &Subspace) -> Result<LinearSet> {
    if source.is_empty() {
        return Err(GeomError::Degenerate("empty subspace".into()));
    }
    let pg8 = ctx.pg8();
    let points: Vec<PointId> = ctx.b_image(&pg8.points_of(source)).into_iter().collect();
    let mut weights = BTreeMap::new();
    for &p in &points {
        let m = pg8.meet(source, ctx.splane(p))?;
        weights.insert(p, m.rank() as u32);
    }
    Ok(LinearSet { source: source.clone(), rank: source.rank(), points, weights })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LinearSetKind {
    SinglePoint,
    FqLine,
    FqSubplane,
    Club { head: PointId },
    Scattered,
    Rank6AllTypeIandII,
    Other,
}

impl LinearSetKind {
    pub fn name(&self) -> &'static str {
        match self {
            LinearSetKind::SinglePoint => "single point",
            LinearSetKind::FqLine => "F_q-line",
            LinearSetKind::FqSubplane => "F_q-plane",
            LinearSetKind::Club { .. } => "club",
            LinearSetKind::Scattered => "scattered",
            LinearSetKind::Rank6AllTypeIandII => "rank 6, all type I and II points",
            LinearSetKind::Other => "other",
        }
    }
}

/// Whether all points lie on one line of PG(2,q³); returns that line.
pub fn common_line(ctx: &ReductionContext, points: &[PointId]) -> Option<PointId> {
    if points.len() < 2 {
        return None;
    }
    let l = ctx.line_through(points[0], points[1]).ok()?;
    points.iter().all(|&p| ctx.on_line(p, l)).then_some(l)
}

fn scaled_frame(ctx: &ReductionContext, basis: &[Vec<u32>], unit: &[u32]) -> Option<Vec<Vec<u32>>> {
    let f = &ctx.tower.top;
    let k = basis.len();
    // solve unit = Σ c_i basis_i using the columns restricted to an invertible minor
    let mut aug: Vec<Vec<u32>> = (0..3)
        .map(|j| {
            let mut r: Vec<u32> = basis.iter().map(|b| b[j]).collect();
            r.push(unit[j]);
            r
        })
        .collect();
    let piv = linalg::rref(f, &mut aug);
    if piv.len() != k || piv.contains(&k) {
        return None;
    }
    let c: Vec<u32> = (0..k).map(|i| aug[i][k]).collect();
    if c.contains(&0) {
        return None;
    }
    Some(basis.iter().zip(&c).map(|(b, &ci)| b.iter().map(|&x| f.mul(x, ci)).collect()).collect())
}

/// Points `Σ α_i w_i` with `α_i ∈ GF(q)` not all zero.
fn span_over_subfield(ctx: &ReductionContext, frame: &[Vec<u32>]) -> BTreeSet<PointId> {
    let pg2 = ctx.pg2();
    let f = &ctx.tower.top;
    let sub = ProjCoeffs::new(ctx.q(), frame.len());
    sub.map(|alpha| {
        let mut v = vec![0u32; 3];
        for (a, w) in alpha.iter().zip(frame) {
            for j in 0..3 {
                v[j] = f.add(v[j], f.mul(*a, w[j]));
            }
        }
        pg2.id_of(&v).unwrap()
    })
    .collect()
}

/// Normalised coefficient vectors over GF(q) (encodings `0..q`).
struct ProjCoeffs {
    q: u32,
    cur: Vec<u32>,
    done: bool,
}

impl ProjCoeffs {
    fn new(q: u32, len: usize) -> Self {
        let mut cur = vec![0; len];
        cur[len - 1] = 1;
        ProjCoeffs { q, cur, done: false }
    }
}

impl Iterator for ProjCoeffs {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        // advance: increment trailing digits after the leading 1; move the lead left when exhausted
        let lead = self.cur.iter().position(|&x| x != 0).unwrap();
        let mut i = self.cur.len() - 1;
        loop {
            if i == lead {
                if lead == 0 {
                    self.done = true;
                } else {
                    self.cur.iter_mut().for_each(|x| *x = 0);
                    self.cur[lead - 1] = 1;
                }
                break;
            }
            self.cur[i] += 1;
            if self.cur[i] < self.q {
                break;
            }
            self.cur[i] = 0;
            i -= 1;
        }
        Some(out)
    }
}

/// A frame `w0, w1, w2` whose GF(q)-span is the given point set, if the set
/// is an F_q-subplane of PG(2,q³).
pub fn subplane_frame(ctx: &ReductionContext, points: &[PointId]) -> Option<Vec<Vec<u32>>> {
    let q = ctx.q() as usize;
    if points.len() != q * q + q + 1 {
        return None;
    }
    let pg2 = ctx.pg2();
    let v0 = pg2.coords(points[0]);
    let v1 = pg2.coords(points[1]);
    let l01 = ctx.line_through(points[0], points[1]).ok()?;
    let &p2 = points.iter().find(|&&p| !ctx.on_line(p, l01))?;
    let v2 = pg2.coords(p2);
    let l02 = ctx.line_through(points[0], p2).ok()?;
    let l12 = ctx.line_through(points[1], p2).ok()?;
    let &p3 = points
        .iter()
        .find(|&&p| !ctx.on_line(p, l01) && !ctx.on_line(p, l02) && !ctx.on_line(p, l12))?;
    let frame = scaled_frame(ctx, &[v0, v1, v2], &pg2.coords(p3))?;
    let gen = span_over_subfield(ctx, &frame);
    (gen.len() == points.len() && gen.iter().zip(points).all(|(a, b)| a == b)).then_some(frame)
}

/// Whether the point set is an F_q-subline of a line of PG(2,q³).
pub fn is_fq_subline(ctx: &ReductionContext, points: &[PointId]) -> bool {
    let q = ctx.q() as usize;
    if points.len() != q + 1 || common_line(ctx, points).is_none() {
        return false;
    }
    let pg2 = ctx.pg2();
    let Some(frame) = scaled_frame(ctx, &[pg2.coords(points[0]), pg2.coords(points[1])], &pg2.coords(points[2])) else {
        return false;
    };
    let gen = span_over_subfield(ctx, &frame);
    gen.len() == points.len() && gen.iter().zip(points).all(|(a, b)| a == b)
}

pub fn classify_linear_set(ctx: &ReductionContext, ls: &LinearSet) -> LinearSetKind {
    let q = ctx.q() as usize;
    let v = q * q + q + 1;
    let dist = ls.weight_distribution();
    let all_weight_one = dist.len() == 1 && dist.contains_key(&1);
    if ls.points.len() == 1 {
        return LinearSetKind::SinglePoint;
    }
    match ls.rank {
        2 if all_weight_one && is_fq_subline(ctx, &ls.points) => LinearSetKind::FqLine,
        3 => {
            let collinear = common_line(ctx, &ls.points).is_some();
            if collinear && ls.points.len() == q * q + 1 && dist.get(&2) == Some(&1) && dist.get(&1) == Some(&(q * q)) {
                let head = *ls.weights.iter().find(|(_, &w)| w == 2).unwrap().0;
                LinearSetKind::Club { head }
            } else if collinear && all_weight_one && ls.points.len() == v {
                LinearSetKind::Scattered
            } else if !collinear && all_weight_one && subplane_frame(ctx, &ls.points).is_some() {
                LinearSetKind::FqSubplane
            } else {
                LinearSetKind::Other
            }
        }
        6 => {
            let want: Vec<PointId> = (0..ctx.pg2().num_points())
                .filter(|&p| ctx.type2(p) != PointType2::III)
                .collect();
            if ls.points == want {
                LinearSetKind::Rank6AllTypeIandII
            } else {
                LinearSetKind::Other
            }
        }
        _ => LinearSetKind::Other,
    }
}

/// The planes `R_λ = ⟨Θ(λw0), Θ(λw1), Θ(λw2)⟩` of the ruling system of the
/// Segre variety ⟦ℬ⟧ opposite to its S-planes, for a frame of the subplane ℬ̄.
pub fn ruling_planes(ctx: &ReductionContext, frame: &[Vec<u32>]) -> Vec<Subspace> {
    let pg8 = ctx.pg8();
    let f = &ctx.tower.top;
    (0..ctx.params.v() as u64)
        .map(|i| {
            let l = f.exp(i);
            let rows = frame
                .iter()
                .map(|w| ctx.big_theta(&w.iter().map(|&x| f.mul(l, x)).collect::<Vec<_>>()))
                .collect();
            pg8.subspace(rows).unwrap()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SubplaneRulingReport {
    pub ruling_planes: usize,
    /// Every ruling plane maps onto the subplane under B.
    pub all_cover_subplane: bool,
    pub sigma_fixed: usize,
    pub type_i_points: usize,
}

/// Counts the σ-fixed planes in the ruling system of ⟦ℬ⟧ for a φ-fixed
/// F_q-subplane ℬ̄.
pub fn fixed_ruling_planes(ctx: &ReductionContext, subplane: &[PointId]) -> Result<(SubplaneRulingReport, Vec<Subspace>)> {
    let frame = subplane_frame(ctx, subplane).ok_or_else(|| GeomError::Hypothesis("not an F_q-subplane".into()))?;
    let image: BTreeSet<PointId> = subplane.iter().map(|&p| ctx.phi_of(p)).collect();
    if !image.iter().eq(subplane.iter()) {
        return Err(GeomError::Hypothesis("subplane is not φ-fixed".into()));
    }
    let planes = ruling_planes(ctx, &frame);
    let pg8 = ctx.pg8();
    let all_cover = planes.iter().all(|r| ctx.b_image(&pg8.points_of(r)).iter().eq(subplane.iter()));
    let fixed: Vec<Subspace> = planes.iter().filter(|r| ctx.apply_sigma_sub(r) == **r).cloned().collect();
    let type_i = subplane.iter().filter(|&&p| ctx.type2(p) == PointType2::I).count();
    Ok((
        SubplaneRulingReport { ruling_planes: planes.len(), all_cover_subplane: all_cover, sigma_fixed: fixed.len(), type_i_points: type_i },
        fixed,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::PhiVariant;

    #[test]
    fn projective_coefficients_enumerate_pg2() {
        let all: Vec<Vec<u32>> = ProjCoeffs::new(3, 3).collect();
        assert_eq!(all.len(), 13);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 13);
        assert_eq!(ProjCoeffs::new(4, 2).count(), 5);
    }

    #[test]
    fn single_point_has_weight_one() {
        let ctx = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        let pt = ctx.pg8().point_subspace(1234);
        let ls = linear_set(&ctx, &pt).unwrap();
        assert_eq!(ls.points, vec![ctx.splane_of(1234)]);
        assert_eq!(ls.weights.values().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(classify_linear_set(&ctx, &ls), LinearSetKind::SinglePoint);
    }

    #[test]
    fn baer_style_subplane_is_recognised() {
        // oracle: the points with all coordinates in GF(q) form an F_q-subplane
        let ctx = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        let pg2 = ctx.pg2();
        let mut pts: Vec<PointId> = (0..pg2.num_points())
            .filter(|&p| pg2.coords(p).iter().all(|&x| x < 3))
            .collect();
        pts.sort_unstable();
        assert_eq!(pts.len(), 13);
        assert!(subplane_frame(&ctx, &pts).is_some());
        // replacing one point breaks it
        let mut broken = pts.clone();
        broken[12] = pg2.id_of(&[1, 5, 7]).unwrap();
        broken.sort_unstable();
        assert!(subplane_frame(&ctx, &broken).is_none());
    }

    #[test]
    fn weight_identity_on_random_subspaces() {
        use rand::{Rng, SeedableRng};
        let ctx = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        let pg8 = ctx.pg8();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let k = rng.gen_range(1..=6);
            let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..9).map(|_| rng.gen_range(0..3)).collect()).collect();
            let s = pg8.subspace(rows).unwrap();
            if s.is_empty() {
                continue;
            }
            let ls = linear_set(&ctx, &s).unwrap();
            assert!(ls.weight_identity_holds(3));
        }
    }
}
