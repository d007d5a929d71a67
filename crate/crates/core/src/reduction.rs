//! The field reduction of PG(2,q³) into PG(8,q), the Desarguesian spread
//! of S-planes, the order-3 collineation φ of PG(2,q³) and the induced
//! collineation σ of PG(8,q).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::gf::{FieldTower, Params};
use crate::linalg::{self, Matrix};
use crate::pg::{Collineation, PointId, ProjSpace, Subspace};

/// Which order-3 collineation of PG(2,q³) to reduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum PhiVariant {
    /// `(x,y,z) ↦ (z^q, x^q, y^q)`.
    #[default]
    Phi1,
    /// The square of the above, `(x,y,z) ↦ (y^q², z^q², x^q²)`.
    Phi1Squared,
    /// `(x,y,z) ↦ (x^q, y^q, z^q)`, fixing the subplane over GF(q) pointwise.
    Diagonal,
}

/// Type of a point of PG(2,q³) under φ: fixed, on a fixed line of its
/// orbit, or spanning a triangle with its orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PointType2 {
    I,
    II,
    III,
}

/// Lines of PG(2,q³) by how many φ-fixed points they carry: q+1, 1 or 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LineType2 {
    I,
    II,
    III,
}

/// Type of a point of PG(8,q): the type of its S-plane together with
/// whether the point is σ-fixed, collinear with its σ-orbit (`:`) or
/// spans a triangle with it (`..`). Fixed points all lie in type I S-planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PointType8 {
    IFixed,
    IColinear,
    ITriangle,
    IIColinear,
    IITriangle,
    IIITriangle,
}

impl PointType8 {
    pub const ALL: [PointType8; 6] = [
        PointType8::IFixed,
        PointType8::IColinear,
        PointType8::ITriangle,
        PointType8::IIColinear,
        PointType8::IITriangle,
        PointType8::IIITriangle,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PointType8::IFixed => "fixed",
            PointType8::IColinear => "I:",
            PointType8::ITriangle => "I..",
            PointType8::IIColinear => "II:",
            PointType8::IITriangle => "II..",
            PointType8::IIITriangle => "III..",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn plane_type(self) -> PointType2 {
        match self {
            PointType8::IFixed | PointType8::IColinear | PointType8::ITriangle => PointType2::I,
            PointType8::IIColinear | PointType8::IITriangle => PointType2::II,
            PointType8::IIITriangle => PointType2::III,
        }
    }
}

/// Everything derived from a choice of q and φ, computed once.
pub struct ReductionContext {
    pub tower: FieldTower,
    pub params: Params,
    pub variant: PhiVariant,
    /// φ acting on PG(2,q³).
    pub phi: Collineation,
    /// σ acting on PG(8,q) by `v ↦ v·M`.
    pub sigma: Collineation,
    splane_of: Vec<u32>,
    spread: Vec<Subspace>,
    sigma_perm: Vec<u32>,
    type2: Vec<PointType2>,
    type8: Vec<PointType8>,
}

impl ReductionContext {
    pub fn new(q: u32, variant: PhiVariant) -> Result<Self> {
        Self::from_tower(FieldTower::new(q)?, variant)
    }

    pub fn from_tower(tower: FieldTower, variant: PhiVariant) -> Result<Self> {
        let q = tower.q;
        let params = tower.params();
        let top = &tower.top;
        let sub = &tower.sub;

        let mut perm = vec![vec![0u32; 3]; 3];
        perm[2][0] = 1;
        perm[0][1] = 1;
        perm[1][2] = 1;
        let phi1 = Collineation::new(top, perm, 1, q)?;

        let a = tower.frobenius_matrix();
        let mut m = vec![vec![0u32; 9]; 9];
        for (br, bc) in [(0, 1), (1, 2), (2, 0)] {
            for i in 0..3 {
                for j in 0..3 {
                    m[3 * br + i][3 * bc + j] = a[i][j];
                }
            }
        }
        let sigma1 = Collineation::linear(sub, m)?;
        let (phi, sigma) = match variant {
            PhiVariant::Phi1 => (phi1, sigma1),
            PhiVariant::Phi1Squared => (phi1.then(top, &phi1)?, sigma1.then(sub, &sigma1)?),
            PhiVariant::Diagonal => {
                let mut d = vec![vec![0u32; 9]; 9];
                for b in 0..3 {
                    for i in 0..3 {
                        for j in 0..3 {
                            d[3 * b + i][3 * b + j] = a[i][j];
                        }
                    }
                }
                (
                    Collineation::new(top, linalg::identity(3), 1, q)?,
                    Collineation::linear(sub, d)?,
                )
            }
        };

        let pg2 = ProjSpace::new(top, 2);
        let pg8 = ProjSpace::new(sub, 8);
        let n8 = pg8.num_points();
        let n2 = pg2.num_points();
        let v = params.v() as u64;

        let mut splane_of = vec![u32::MAX; n8];
        let mut spread = Vec::with_capacity(n2);
        let mut c = [0u32; 3];
        let reduce = |c: &[u32; 3], lambda: u32| -> Vec<u32> {
            c.iter().flat_map(|&x| tower.theta(top.mul(lambda, x))).collect()
        };
        for p in 0..n2 {
            pg2.coords_into(p, &mut c);
            for i in 0..v {
                let id = pg8.id_of(&reduce(&c, top.exp(i)))?;
                if splane_of[id] != u32::MAX {
                    return Err(GeomError::Invariant(format!("point {id} lies in two S-planes")));
                }
                splane_of[id] = p as u32;
            }
            let rows = (0..3).map(|i| reduce(&c, top.exp(i))).collect();
            spread.push(pg8.subspace(rows)?);
        }
        if splane_of.iter().any(|&s| s == u32::MAX) {
            return Err(GeomError::Invariant("S-planes do not cover PG(8,q)".into()));
        }

        let mut type2 = Vec::with_capacity(n2);
        for p in 0..n2 {
            let v0 = pg2.coords(p);
            let v1 = phi.apply_vec(top, &v0);
            let v2 = phi.apply_vec(top, &v1);
            let t = if pg2.id_of(&v1)? == p {
                PointType2::I
            } else {
                let rows = [v0, v1, v2].map(|r| [r[0], r[1], r[2]]);
                if linalg::det3(top, &rows) == 0 {
                    PointType2::II
                } else {
                    PointType2::III
                }
            };
            type2.push(t);
        }

        let mut sigma_perm = vec![0u32; n8];
        let mut buf = vec![0u32; 9];
        for (id, slot) in sigma_perm.iter_mut().enumerate() {
            pg8.coords_into(id, &mut buf);
            *slot = pg8.id_of(&linalg::vec_mat(sub, &buf, &sigma.matrix))? as u32;
        }

        let mut type8 = Vec::with_capacity(n8);
        for id in 0..n8 {
            let s1 = sigma_perm[id] as usize;
            let plane = type2[splane_of[id] as usize];
            let t = if s1 == id {
                match plane {
                    PointType2::I => PointType8::IFixed,
                    _ => {
                        return Err(GeomError::Unclassifiable {
                            what: "PG(8,q) point",
                            detail: format!("fixed point {id} outside a type I S-plane"),
                        })
                    }
                }
            } else {
                let s2 = sigma_perm[s1] as usize;
                let r = linalg::rank(sub, &[pg8.coords(id), pg8.coords(s1), pg8.coords(s2)]);
                match (plane, r) {
                    (PointType2::I, 2) => PointType8::IColinear,
                    (PointType2::I, 3) => PointType8::ITriangle,
                    (PointType2::II, 2) => PointType8::IIColinear,
                    (PointType2::II, 3) => PointType8::IITriangle,
                    (PointType2::III, 3) => PointType8::IIITriangle,
                    _ => {
                        return Err(GeomError::Unclassifiable {
                            what: "PG(8,q) point",
                            detail: format!("point {id}: {plane:?} S-plane, orbit rank {r}"),
                        })
                    }
                }
            };
            type8.push(t);
        }

        let ctx = ReductionContext {
            tower,
            params,
            variant,
            phi,
            sigma,
            splane_of,
            spread,
            sigma_perm,
            type2,
            type8,
        };
        // σ is induced by φ: it permutes S-planes exactly as φ permutes points
        for id in 0..n8 {
            let img = ctx.splane_of[ctx.sigma_perm[id] as usize] as usize;
            if img != ctx.phi.apply(&ctx.pg2(), ctx.splane_of[id] as usize) {
                return Err(GeomError::Invariant("σ does not preserve the spread".into()));
            }
        }
        Ok(ctx)
    }

    pub fn q(&self) -> u32 {
        self.tower.q
    }

    pub fn pg2(&self) -> ProjSpace<'_> {
        ProjSpace::new(&self.tower.top, 2)
    }

    pub fn pg8(&self) -> ProjSpace<'_> {
        ProjSpace::new(&self.tower.sub, 8)
    }

    /// `Θ(x,y,z) = (θx, θy, θz)`.
    pub fn big_theta(&self, v: &[u32]) -> Vec<u32> {
        v.iter().flat_map(|&x| self.tower.theta(x)).collect()
    }

    pub fn big_theta_inv(&self, w: &[u32]) -> Vec<u32> {
        w.chunks(3).map(|c| self.tower.theta_inv([c[0], c[1], c[2]])).collect()
    }

    /// The S-plane ⟦P⟧ of a point of PG(2,q³).
    pub fn splane(&self, p: PointId) -> &Subspace {
        &self.spread[p]
    }

    pub fn spread(&self) -> &[Subspace] {
        &self.spread
    }

    /// The point P of PG(2,q³) with `x ∈ ⟦P⟧`.
    pub fn splane_of(&self, x: PointId) -> PointId {
        self.splane_of[x] as usize
    }

    pub fn sigma_of(&self, x: PointId) -> PointId {
        self.sigma_perm[x] as usize
    }

    pub fn sigma_perm(&self) -> &[u32] {
        &self.sigma_perm
    }

    pub fn phi_of(&self, p: PointId) -> PointId {
        self.phi.apply(&self.pg2(), p)
    }

    pub fn type2(&self, p: PointId) -> PointType2 {
        self.type2[p]
    }

    pub fn type8(&self, x: PointId) -> PointType8 {
        self.type8[x]
    }

    pub fn types8(&self) -> &[PointType8] {
        &self.type8
    }

    /// Points of PG(2,q³) fixed by φ.
    pub fn type_i_points(&self) -> Vec<PointId> {
        (0..self.type2.len()).filter(|&p| self.type2[p] == PointType2::I).collect()
    }

    /// `B(X)`: the points of PG(2,q³) whose S-planes meet the point set X.
    pub fn b_image(&self, points: &[PointId]) -> BTreeSet<PointId> {
        points.iter().map(|&x| self.splane_of(x)).collect()
    }

    pub fn apply_sigma_sub(&self, s: &Subspace) -> Subspace {
        self.sigma.apply_sub(&self.pg8(), s)
    }

    /// `M^k` as a matrix.
    pub fn sigma_power(&self, k: u32) -> Matrix {
        let f = &self.tower.sub;
        let mut m = linalg::identity(9);
        for _ in 0..k {
            m = linalg::mat_mul(f, &m, &self.sigma.matrix);
        }
        m
    }

    /// Dual coordinates of the line through two distinct points of PG(2,q³).
    pub fn line_through(&self, a: PointId, b: PointId) -> Result<PointId> {
        let s = self.pg2();
        let l = linalg::cross(s.field(), &s.coords(a), &s.coords(b));
        s.id_of(&l).map_err(|_| GeomError::Degenerate("coincident points".into()))
    }

    pub fn meet_lines(&self, l: PointId, m: PointId) -> Result<PointId> {
        self.line_through(l, m)
    }

    pub fn on_line(&self, p: PointId, l: PointId) -> bool {
        let s = self.pg2();
        linalg::dot(s.field(), &s.coords(p), &s.coords(l)) == 0
    }

    pub fn line_points(&self, l: PointId) -> Vec<PointId> {
        let s = self.pg2();
        let basis = linalg::nullspace(s.field(), &[s.coords(l)], 3);
        s.points_of(&s.subspace(basis).unwrap())
    }

    pub fn line_type(&self, l: PointId) -> Result<LineType2> {
        let k = self.line_points(l).into_iter().filter(|&p| self.type2[p] == PointType2::I).count();
        let q = self.q() as usize;
        match k {
            k if k == q + 1 => Ok(LineType2::I),
            1 => Ok(LineType2::II),
            0 => Ok(LineType2::III),
            _ => Err(GeomError::Unclassifiable {
                what: "PG(2,q³) line",
                detail: format!("line {l} has {k} fixed points"),
            }),
        }
    }

    /// φ applied to a line in dual coordinates.
    pub fn phi_line(&self, l: PointId) -> PointId {
        self.phi.apply_dual(&self.pg2(), l)
    }

    /// The 5-space ⟦ℓ⟧ for a line ℓ of PG(2,q³).
    pub fn h_space(&self, l: PointId) -> Subspace {
        let pts = self.line_points(l);
        self.pg8().span(&[self.splane(pts[0]), self.splane(pts[1])]).unwrap()
    }
}

/// Point/line incidence of PG(2,q³), lines indexed by dual-coordinate id.
pub struct Pg2Incidence {
    pub lines: Vec<Vec<u32>>,
    pub point_lines: Vec<Vec<u32>>,
}

impl Pg2Incidence {
    pub fn new(ctx: &ReductionContext) -> Self {
        let n = ctx.pg2().num_points();
        let mut lines = Vec::with_capacity(n);
        let mut point_lines = vec![Vec::new(); n];
        for l in 0..n {
            let pts: Vec<u32> = ctx.line_points(l).into_iter().map(|p| p as u32).collect();
            for &p in &pts {
                point_lines[p as usize].push(l as u32);
            }
            lines.push(pts);
        }
        Pg2Incidence { lines, point_lines }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_identity_on_all_points() {
        let ctx = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        let pg2 = ctx.pg2();
        let pg8 = ctx.pg8();
        let top = &ctx.tower.top;
        for p in 0..pg2.num_points() {
            let v = pg2.coords(p);
            let w = ctx.big_theta(&v);
            let img = linalg::vec_mat(&ctx.tower.sub, &w, &ctx.sigma.matrix);
            let q = ctx.q() as u64;
            let expected = [top.pow(v[2], q), top.pow(v[0], q), top.pow(v[1], q)];
            assert_eq!(img, ctx.big_theta(&expected));
            assert_eq!(ctx.big_theta_inv(&w), v);
            assert_eq!(ctx.splane_of(pg8.id_of(&w).unwrap()), p);
        }
    }

    #[test]
    fn sigma_has_order_three() {
        for q in [3, 4] {
            let ctx = ReductionContext::new(q, PhiVariant::Phi1).unwrap();
            assert_eq!(ctx.sigma_power(3), linalg::identity(9));
            assert_ne!(ctx.sigma_power(1), linalg::identity(9));
        }
    }

    #[test]
    fn spread_planes_have_right_size() {
        let ctx = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        let pg8 = ctx.pg8();
        for p in [0, 17, 500] {
            let pts = pg8.points_of(ctx.splane(p));
            assert_eq!(pts.len(), 13);
            assert!(pts.iter().all(|&x| ctx.splane_of(x) == p));
        }
    }

    #[test]
    fn type_counts_in_pg2() {
        // oracle: orbit sizes and collinearity computed by direct formula (z^q, x^q, y^q)
        for q in [3u32, 4, 5] {
            let ctx = ReductionContext::new(q, PhiVariant::Phi1).unwrap();
            let pg2 = ctx.pg2();
            let top = &ctx.tower.top;
            let phi = |v: &[u32]| {
                let e = q as u64;
                vec![top.pow(v[2], e), top.pow(v[0], e), top.pow(v[1], e)]
            };
            let mut counts = [0usize; 3];
            for p in 0..pg2.num_points() {
                let v0 = pg2.coords(p);
                let v1 = phi(&v0);
                let v2 = phi(&v1);
                let t = if pg2.id_of(&v1).unwrap() == p {
                    0
                } else if linalg::rank(top, &[v0, v1, v2]) == 2 {
                    1
                } else {
                    2
                };
                assert_eq!(ctx.type2(p) as usize, t);
                counts[t] += 1;
            }
            let qq = q as usize;
            let v = qq * qq + qq + 1;
            assert_eq!(counts, [v, v * (qq * qq * qq - qq), qq * qq * qq * (qq - 1) * (qq - 1) * (qq + 1)]);
        }
    }

    #[test]
    fn phi_squared_variant_is_consistent() {
        let ctx = ReductionContext::new(3, PhiVariant::Phi1Squared).unwrap();
        let base = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        for p in 0..ctx.pg2().num_points() {
            assert_eq!(ctx.phi_of(p), base.phi_of(base.phi_of(p)));
            assert_eq!(ctx.type2(p), base.type2(p));
        }
        for x in 0..ctx.pg8().num_points() {
            assert_eq!(ctx.sigma_of(x), base.sigma_of(base.sigma_of(x)));
        }
    }

    #[test]
    fn diagonal_variant_fixes_the_rational_subplane() {
        for q in [3u32, 4] {
            let ctx = ReductionContext::new(q, PhiVariant::Diagonal).unwrap();
            let base = ReductionContext::new(q, PhiVariant::Phi1).unwrap();
            let pg2 = ctx.pg2();
            for p in 0..pg2.num_points() {
                let rational = pg2.coords(p).iter().all(|&x| ctx.tower.in_subfield(x));
                assert_eq!(ctx.type2(p) == PointType2::I, rational);
            }
            let tally = |c: &ReductionContext| {
                let mut t = [0usize; 6];
                c.types8().iter().for_each(|x| t[x.index()] += 1);
                t
            };
            assert_eq!(tally(&ctx), tally(&base));
        }
    }

    #[test]
    fn lines_and_their_phi_images() {
        let ctx = ReductionContext::new(3, PhiVariant::Phi1).unwrap();
        for l in (0..757).step_by(37) {
            let pts = ctx.line_points(l);
            assert_eq!(pts.len(), 28);
            let img: BTreeSet<_> = pts.iter().map(|&p| ctx.phi_of(p)).collect();
            let want: BTreeSet<_> = ctx.line_points(ctx.phi_line(l)).into_iter().collect();
            assert_eq!(img, want);
            assert_eq!(ctx.line_through(pts[0], pts[5]).unwrap(), l);
        }
    }
}
