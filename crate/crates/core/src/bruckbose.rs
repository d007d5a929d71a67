//! The Bruck–Bose model of PG(2,q³) in PG(6,q) with the line at infinity
//! `z = 0` of Type I, for the collineation `φ: (x,y,z) ↦ (x^q, y^q, z^q)`.
//!
//! The affine point `(x, y, 1)` is `(θx, θy, 1)`; the point at infinity
//! `(x, y, 0)` is the spread plane `{(θ(tx), θ(ty), 0) : t ∈ GF(q³)}` of the
//! hyperplane Σ∞ given by the last coordinate. φ acts as `diag(A, A, 1)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::fixed::congruence::regulus_through;
use crate::linalg::{self, Matrix};
use crate::pg::{Collineation, PointId, ProjSpace, Subspace};
use crate::reduction::{LineType2, PhiVariant, PointType2, ReductionContext};

/// Coordinate positions: `x₀..x₂ = 0..2`, `y₀..y₂ = 3..5`, `z = 6`.
const X1: usize = 1;
const X2: usize = 2;
const Y1: usize = 4;
const Y2: usize = 5;

pub struct BruckBose {
    /// The PG(8,q) reduction for the same φ, used for point types and the slicing check.
    pub ctx: ReductionContext,
    pub phi: Collineation,
    /// PG(2,q³) point of each PG(6,q) point: the affine point, or the point at infinity whose spread plane contains it.
    pg2_of: Vec<u32>,
    phi_perm: Vec<u32>,
    /// The line at infinity `z = 0` as a dual coordinate id.
    pub line_at_infinity: PointId,
}

impl BruckBose {
    pub fn new(q: u32) -> Result<Self> {
        let ctx = ReductionContext::new(q, PhiVariant::Diagonal)?;
        let sub = &ctx.tower.sub;
        let a = ctx.tower.frobenius_matrix();
        let mut d = vec![vec![0u32; 7]; 7];
        for b in 0..2 {
            for i in 0..3 {
                for j in 0..3 {
                    d[3 * b + i][3 * b + j] = a[i][j];
                }
            }
        }
        d[6][6] = 1;
        let phi = Collineation::linear(sub, d)?;
        let pg6 = ProjSpace::new(sub, 6);
        let pg2 = ctx.pg2();
        let top = &ctx.tower.top;
        let mut pg2_of = Vec::with_capacity(pg6.num_points());
        let mut phi_perm = Vec::with_capacity(pg6.num_points());
        for id in 0..pg6.num_points() {
            let v = pg6.coords(id);
            let x = ctx.tower.theta_inv([v[0], v[1], v[2]]);
            let y = ctx.tower.theta_inv([v[3], v[4], v[5]]);
            // the last coordinate is 0 or, after normalisation of an affine point, possibly not 1
            let p = if v[6] == 0 {
                pg2.id_of(&[x, y, 0])?
            } else {
                let s = top.inv(v[6])?;
                pg2.id_of(&[top.mul(x, s), top.mul(y, s), 1])?
            };
            pg2_of.push(p as u32);
            phi_perm.push(phi.apply(&pg6, id) as u32);
        }
        let line_at_infinity = pg2.id_of(&[0, 0, 1])?;
        Ok(BruckBose { ctx, phi, pg2_of, phi_perm, line_at_infinity })
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    pub fn pg6(&self) -> ProjSpace<'_> {
        ProjSpace::new(&self.ctx.tower.sub, 6)
    }

    pub fn is_affine(&self, id: PointId) -> bool {
        self.pg6().coords(id)[6] != 0
    }

    pub fn pg2_of(&self, id: PointId) -> PointId {
        self.pg2_of[id] as usize
    }

    pub fn phi_of(&self, id: PointId) -> PointId {
        self.phi_perm[id] as usize
    }

    /// `(θx, θy, 1)`.
    pub fn affine_point(&self, x: u32, y: u32) -> PointId {
        let t = &self.ctx.tower;
        let v: Vec<u32> = t.theta(x).into_iter().chain(t.theta(y)).chain([1]).collect();
        self.pg6().id_of(&v).unwrap()
    }

    /// The PG(6,q) point of an affine PG(2,q³) point.
    pub fn affine_of_pg2(&self, p: PointId) -> Option<PointId> {
        let c = self.ctx.pg2().coords(p);
        let top = &self.ctx.tower.top;
        let s = top.inv(c[2]).ok()?;
        Some(self.affine_point(top.mul(c[0], s), top.mul(c[1], s)))
    }

    /// The spread plane of Σ∞ for a point of PG(2,q³) on `z = 0`.
    pub fn spread_plane(&self, p: PointId) -> Result<Subspace> {
        let c = self.ctx.pg2().coords(p);
        if c[2] != 0 {
            return Err(GeomError::Degenerate(format!("point {p} is not at infinity")));
        }
        let t = &self.ctx.tower;
        let top = &t.top;
        let rows = (0..3)
            .map(|i| {
                let s = top.exp(i);
                t.theta(top.mul(s, c[0])).into_iter().chain(t.theta(top.mul(s, c[1]))).chain([0]).collect()
            })
            .collect();
        self.pg6().subspace(rows)
    }

    pub fn sigma_inf(&self) -> Subspace {
        self.pg6().subspace(linalg::identity(7)[..6].to_vec()).unwrap()
    }

    /// `{(a,0,0,b,0,0,c)}`.
    pub fn pi_fix(&self) -> Subspace {
        let mut rows = vec![vec![0u32; 7]; 3];
        rows[0][0] = 1;
        rows[1][3] = 1;
        rows[2][6] = 1;
        self.pg6().subspace(rows).unwrap()
    }

    pub fn type2(&self, id: PointId) -> PointType2 {
        self.ctx.type2(self.pg2_of(id))
    }

    /// Rank of `{X, Xφ, Xφ²}`: 1 for fixed points, 2 or 3 otherwise.
    pub fn orbit_rank(&self, id: PointId) -> usize {
        let s = self.pg6();
        let a = self.phi_of(id);
        if a == id {
            return 1;
        }
        linalg::rank(s.field(), &[s.coords(id), s.coords(a), s.coords(self.phi_of(a))])
    }

    pub fn phi_line_fixed(&self, l: &Subspace) -> bool {
        self.phi.apply_sub(&self.pg6(), l) == *l
    }

    /// `x y^q + x^q y^{q²} + x^{q²} y − (x y^{q²} + x^q y + x^{q²} y^q)`.
    pub fn f_eval(&self, x: u32, y: u32) -> u32 {
        let t = &self.ctx.tower;
        let top = &t.top;
        let xs = [x, t.frobenius(x, 1), t.frobenius(x, 2)];
        let ys = [y, t.frobenius(y, 1), t.frobenius(y, 2)];
        let mut f = 0;
        for i in 0..3 {
            f = top.add(f, top.mul(xs[i], ys[(i + 1) % 3]));
            f = top.sub(f, top.mul(xs[i], ys[(i + 2) % 3]));
        }
        f
    }

    /// The constant with `f(x,y) = (x₁y₂ − x₂y₁)·βc`, evaluated at `x = τ, y = τ²`.
    pub fn beta_c(&self) -> u32 {
        let tau = self.ctx.tower.tau();
        self.f_eval(tau, self.ctx.tower.top.mul(tau, tau))
    }

    /// `Q = x₁y₂ − x₂y₁`.
    pub fn quadric(&self, v: &[u32]) -> u32 {
        let f = &self.ctx.tower.sub;
        f.sub(f.mul(v[X1], v[Y2]), f.mul(v[X2], v[Y1]))
    }

    /// The polar form `Q(u+v) − Q(u) − Q(v)`.
    pub fn polar(&self, u: &[u32], v: &[u32]) -> u32 {
        let f = &self.ctx.tower.sub;
        let a = f.add(f.mul(u[X1], v[Y2]), f.mul(v[X1], u[Y2]));
        let b = f.add(f.mul(u[X2], v[Y1]), f.mul(v[X2], u[Y1]));
        f.sub(a, b)
    }

    /// Points of Q in a subspace and the singular points of Q restricted to it.
    pub fn section(&self, s: &Subspace) -> QuadricSection {
        let pg6 = self.pg6();
        let mut points = Vec::new();
        let mut singular = Vec::new();
        for x in pg6.points_of(s) {
            let v = pg6.coords(x);
            if self.quadric(&v) == 0 {
                points.push(x);
                if s.rows().iter().all(|r| self.polar(&v, r) == 0) {
                    singular.push(x);
                }
            }
        }
        QuadricSection { points, singular }
    }
}

#[derive(Clone, Debug)]
pub struct QuadricSection {
    pub points: Vec<PointId>,
    pub singular: Vec<PointId>,
}

impl QuadricSection {
    pub fn is_conic(&self, q: usize) -> bool {
        self.singular.is_empty() && self.points.len() == q + 1
    }

    pub fn is_hyperbolic(&self, q: usize) -> bool {
        self.singular.is_empty() && self.points.len() == (q + 1) * (q + 1)
    }

    pub fn is_cone_with_vertex(&self, q: usize, vertex: PointId) -> bool {
        self.singular == [vertex] && self.points.len() == q * q + q + 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadricReport {
    pub pairs: usize,
    pub f_in_subfield: bool,
    pub beta_c: u32,
    pub factorization_holds: bool,
    pub affine_quadric_points: usize,
    pub affine_type_i_ii_points: usize,
    pub sets_equal: bool,
    /// `|Q| − |Q ∩ Σ∞|` matches the cone counts `q²+q+1 + q³(q+1)²` and `q+1 + q²(q+1)²`.
    pub cone_count_consistent: bool,
    pub singular_points: usize,
    pub singular_is_pi_fix: bool,
    pub base_points: usize,
    pub base_hyperbolic: bool,
}

impl QuadricReport {
    pub fn pass(&self) -> bool {
        self.f_in_subfield
            && self.beta_c != 0
            && self.factorization_holds
            && self.sets_equal
            && self.cone_count_consistent
            && self.singular_is_pi_fix
            && self.base_hyperbolic
    }
}

pub fn verify_quadric(bb: &BruckBose) -> QuadricReport {
    let t = &bb.ctx.tower;
    let sub = &t.sub;
    let top = &t.top;
    let q = bb.q() as usize;
    let pg6 = bb.pg6();
    let beta_c = bb.beta_c();
    let (mut in_sub, mut fact) = (true, true);
    let mut from_f = BTreeSet::new();
    let mut from_types = BTreeSet::new();
    for x in 0..top.order() {
        let tx = t.theta(x);
        for y in 0..top.order() {
            let ty = t.theta(y);
            let f = bb.f_eval(x, y);
            in_sub &= t.in_subfield(f);
            let det = sub.sub(sub.mul(tx[1], ty[2]), sub.mul(tx[2], ty[1]));
            fact &= f == sub.mul(det, beta_c);
            let id = bb.affine_point(x, y);
            if f == 0 {
                from_f.insert(id);
            }
            if bb.type2(id) != PointType2::III {
                from_types.insert(id);
            }
        }
    }
    let all = pg6.subspace(linalg::identity(7)).unwrap();
    let whole = bb.section(&all);
    let affine_q: BTreeSet<PointId> = whole.points.iter().copied().filter(|&x| bb.is_affine(x)).collect();
    let at_inf = whole.points.len() - affine_q.len();
    let (q3, v) = (q * q * q, q * q + q + 1);
    let cone_ok = whole.points.len() == v + q3 * (q + 1) * (q + 1) && at_inf == q + 1 + q * q * (q + 1) * (q + 1);
    let pifix = pg6.points_of(&bb.pi_fix());
    let mut base_rows = vec![vec![0u32; 7]; 4];
    for (r, c) in base_rows.iter_mut().zip([1, 2, 4, 5]) {
        r[c] = 1;
    }
    let base = bb.section(&pg6.subspace(base_rows).unwrap());
    QuadricReport {
        pairs: (top.order() * top.order()) as usize,
        f_in_subfield: in_sub,
        beta_c,
        factorization_holds: fact,
        affine_quadric_points: affine_q.len(),
        affine_type_i_ii_points: from_types.len(),
        sets_equal: affine_q == from_types && from_f == from_types,
        cone_count_consistent: cone_ok,
        singular_points: whole.singular.len(),
        singular_is_pi_fix: whole.singular == pifix,
        base_points: base.points.len(),
        base_hyperbolic: base.is_hyperbolic(q),
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Clause {
    pub checked: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Clause {
    fn start() -> Self {
        Clause { checked: 0, pass: true, witness: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.pass {
            self.pass = false;
            self.witness = Some(what());
        }
    }
}

/// The four clauses on how Q meets Σ∞ and the 3-spaces of affine lines.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub clauses: [Clause; 4],
}

pub fn verify_intersections(bb: &BruckBose) -> Result<IntersectionReport> {
    let ctx = &bb.ctx;
    let q = bb.q() as usize;
    let pg6 = bb.pg6();
    let mut c = [Clause::start(), Clause::start(), Clause::start(), Clause::start()];
    let inf_points = ctx.line_points(bb.line_at_infinity);
    for &p in &inf_points {
        let plane = bb.spread_plane(p)?;
        let s = bb.section(&plane);
        match ctx.type2(p) {
            PointType2::I => c[0].record(s.points.len() == q * q + q + 1, || format!("S_I plane {p}")),
            PointType2::II => c[0].record(s.is_conic(q), || format!("S_II plane {p}")),
            PointType2::III => c[0].record(false, || format!("Type III point {p} at infinity")),
        }
    }
    for l in 0..ctx.pg2().num_points() {
        if l == bb.line_at_infinity {
            continue;
        }
        let pts = ctx.line_points(l);
        let p_inf = *pts.iter().find(|&&p| ctx.pg2().coords(p)[2] == 0).unwrap();
        let mut affine: Vec<PointId> = pts.iter().filter_map(|&p| bb.affine_of_pg2(p)).collect();
        affine.sort_unstable();
        let of = |t: PointType2| -> Vec<PointId> { affine.iter().copied().filter(|&x| bb.type2(x) == t).collect() };
        let (ones, twos) = (of(PointType2::I), of(PointType2::II));
        let sigma3 = pg6.span(&[&bb.spread_plane(p_inf)?, &pg6.point_subspace(affine[0])])?;
        let affine_section = |s: &QuadricSection| -> Vec<PointId> {
            s.points.iter().copied().filter(|&x| bb.is_affine(x)).collect()
        };
        let mut i_ii: Vec<PointId> = ones.iter().chain(&twos).copied().collect();
        i_ii.sort_unstable();
        match (ctx.type2(p_inf), ctx.line_type(l)?) {
            (PointType2::I, LineType2::II) => {
                let span = pg6.subspace_of_points(&twos);
                let aff_span: Vec<PointId> = pg6.points_of(&span).into_iter().filter(|&x| bb.is_affine(x)).collect();
                let ok = ones.is_empty() && twos.len() == q * q && span.rank() == 3 && aff_span == twos;
                c[1].record(ok, || format!("line {l}: {} II points", twos.len()));
            }
            (PointType2::II, LineType2::II) => {
                let s = bb.section(&sigma3);
                let ok = ones.len() == 1
                    && twos.len() == q * q - 1
                    && s.is_cone_with_vertex(q, ones[0])
                    && affine_section(&s) == i_ii;
                c[2].record(ok, || format!("line {l}: {} I and {} II points", ones.len(), twos.len()));
            }
            (PointType2::II, LineType2::III) => {
                let s = bb.section(&sigma3);
                let ok = ones.is_empty() && twos.len() == q * q + q && s.is_hyperbolic(q) && affine_section(&s) == twos;
                c[3].record(ok, || format!("line {l}: {} II points", twos.len()));
            }
            _ => {}
        }
    }
    Ok(IntersectionReport { clauses: c })
}

/// φ-fixed structure of PG(6,q) and of Σ∞.
#[derive(Clone, Debug, Serialize)]
pub struct FixedReport {
    pub fixed_points: usize,
    pub expected_fixed_points: usize,
    pub pi_fix_pointwise_fixed: bool,
    /// Fixed points off π_fix lie in Σ∞ and form g−1 lines.
    pub extra_lines: Option<usize>,
    /// Fixed, I: and II: points of Σ∞ against `g(q+1)`, `g(q+1)(q−n)`, `g(q³−q)`.
    pub inf_points: [usize; 3],
    pub inf_points_expected: [usize; 3],
    /// Pointwise fixed, fixed-I and fixed-II lines of Σ∞.
    pub inf_lines: [usize; 3],
    pub inf_lines_expected: [usize; 3],
    pub fixed_i_lines_form_g_reguli: bool,
    /// Affine fixed lines that are not pointwise fixed.
    pub affine_fixed_ii_lines: usize,
    /// Every line of the pencil construction (lines through `m ∩ ℓ` in `⟨m, ℓ⟩`) is φ-fixed.
    pub pencil_lines_fixed: bool,
    /// The affine fixed lines are exactly the lines of the pencil construction.
    pub affine_lines_match_pencils: bool,
    /// The affine fixed lines are exactly the joins of a fixed point of Σ∞ off π_fix with an affine point of π_fix.
    pub affine_lines_match_eigen_joins: bool,
}

impl FixedReport {
    pub fn pass(&self, n: i64) -> bool {
        self.fixed_points == self.expected_fixed_points
            && self.pi_fix_pointwise_fixed
            && self.extra_lines.is_some()
            && self.inf_points == self.inf_points_expected
            && self.inf_lines == self.inf_lines_expected
            && self.fixed_i_lines_form_g_reguli
            && (self.affine_fixed_ii_lines > 0) == (n != -1)
    }

    /// The affine fixed lines arise from the pencil construction.
    pub fn pencil_pass(&self) -> bool {
        self.pencil_lines_fixed && self.affine_lines_match_pencils
    }
}

/// Splits lines into reguli greedily; true iff all lines are used.
fn partition_into_reguli(space: &ProjSpace, lines: &[Subspace], count: usize) -> bool {
    let mut left: Vec<Subspace> = lines.to_vec();
    let mut found = 0;
    while !left.is_empty() {
        let mut taken = None;
        'search: for j in 1..left.len() {
            for k in j + 1..left.len() {
                if let Some(r) = regulus_through(space, [&left[0], &left[j], &left[k]]) {
                    if r.iter().all(|x| left.contains(x)) {
                        taken = Some(r);
                        break 'search;
                    }
                }
            }
        }
        match taken {
            Some(r) => {
                left.retain(|x| !r.contains(x));
                found += 1;
            }
            None => return false,
        }
    }
    found == count
}

pub fn verify_fixed(bb: &BruckBose) -> Result<FixedReport> {
    let p = bb.ctx.params;
    let (q, g) = (p.q as usize, p.g as usize);
    let pg6 = bb.pg6();
    let n6 = pg6.num_points();
    let fixed: Vec<PointId> = (0..n6).filter(|&x| bb.phi_of(x) == x).collect();
    let pifix = bb.pi_fix();
    let pifix_pts = pg6.points_of(&pifix);
    let extra: Vec<PointId> = fixed.iter().copied().filter(|x| pifix_pts.binary_search(x).is_err()).collect();
    let extra_lines = extra_line_count(&pg6, bb, &extra);

    let sinf = bb.sigma_inf();
    let inf: Vec<PointId> = pg6.points_of(&sinf);
    let mut counts = [0usize; 3];
    let mut orbit_lines: BTreeSet<(PointType2, Subspace)> = BTreeSet::new();
    for &x in &inf {
        match (bb.orbit_rank(x), bb.type2(x)) {
            (1, _) => counts[0] += 1,
            (2, t) => {
                counts[if t == PointType2::I { 1 } else { 2 }] += 1;
                orbit_lines.insert((t, pg6.subspace_of_points(&[x, bb.phi_of(x)])));
            }
            _ => {}
        }
    }
    let fixed_inf: Vec<PointId> = inf.iter().copied().filter(|&x| bb.phi_of(x) == x).collect();
    let mut ptwise = BTreeSet::new();
    for (i, &a) in fixed_inf.iter().enumerate() {
        for &b in &fixed_inf[i + 1..] {
            let l = pg6.subspace_of_points(&[a, b]);
            if pg6.points_of(&l).iter().all(|&x| bb.phi_of(x) == x) {
                ptwise.insert(l);
            }
        }
    }
    let fixed_i: Vec<Subspace> =
        orbit_lines.iter().filter(|(t, _)| *t == PointType2::I).map(|(_, l)| l.clone()).collect();
    let n_ii = orbit_lines.len() - fixed_i.len();
    let reguli = partition_into_reguli(&pg6, &fixed_i, g);

    // affine fixed lines through points collinear with their orbit
    let mut affine_lines = BTreeSet::new();
    for x in 0..n6 {
        if bb.is_affine(x) && bb.orbit_rank(x) == 2 {
            affine_lines.insert(pg6.subspace_of_points(&[x, bb.phi_of(x)]));
        }
    }
    let mut pencil = BTreeSet::new();
    for m in &fixed_i {
        let meet = pg6.meet(m, &pifix)?;
        if meet.rank() != 1 {
            continue;
        }
        let centre = pg6.id_of(&meet.rows()[0])?;
        for y in &pifix_pts {
            if !bb.is_affine(*y) {
                continue;
            }
            let l = pg6.subspace_of_points(&[centre, *y]);
            let plane = pg6.span(&[m, &l])?;
            for z in pg6.points_of(&plane) {
                if z == centre {
                    continue;
                }
                let k = pg6.subspace_of_points(&[centre, z]);
                if k != *m && k != l {
                    pencil.insert(k);
                }
            }
        }
    }
    let pencil_fixed = pencil.iter().all(|l| bb.phi_line_fixed(l));
    let mut joins = BTreeSet::new();
    for &w in &extra {
        for &y in &pifix_pts {
            if bb.is_affine(y) {
                joins.insert(pg6.subspace_of_points(&[w, y]));
            }
        }
    }
    let qn = (p.q - p.n) as usize;
    Ok(FixedReport {
        fixed_points: fixed.len(),
        expected_fixed_points: q * q + g * q + g,
        pi_fix_pointwise_fixed: pifix_pts.iter().all(|&x| bb.phi_of(x) == x),
        extra_lines,
        inf_points: counts,
        inf_points_expected: [g * (q + 1), g * (q + 1) * qn, g * (q * q * q - q)],
        inf_lines: [ptwise.len(), fixed_i.len(), n_ii],
        inf_lines_expected: [g, g * (q + 1), g * (q * q * q - q) / qn],
        fixed_i_lines_form_g_reguli: reguli,
        affine_fixed_ii_lines: affine_lines.len(),
        pencil_lines_fixed: pencil_fixed,
        affine_lines_match_pencils: affine_lines == pencil,
        affine_lines_match_eigen_joins: g == 3 && affine_lines == joins,
    })
}

/// Number of lines formed by the fixed points off π_fix if they all lie in Σ∞ and split into g−1 lines.
fn extra_line_count(pg6: &ProjSpace, bb: &BruckBose, extra: &[PointId]) -> Option<usize> {
    if extra.iter().any(|&x| bb.is_affine(x)) {
        return None;
    }
    let q = bb.q() as usize;
    let mut lines = BTreeSet::new();
    for &a in extra {
        for &b in extra {
            if a < b {
                let l = pg6.subspace_of_points(&[a, b]);
                if pg6.points_of(&l).iter().all(|x| extra.contains(x)) {
                    lines.insert(l);
                }
            }
        }
    }
    let covered: BTreeSet<PointId> = lines.iter().flat_map(|l| pg6.points_of(l)).collect();
    let g = bb.ctx.params.g as usize;
    (lines.len() == g - 1 && covered.len() == extra.len() && extra.len() == (g - 1) * (q + 1)).then_some(lines.len())
}

/// Agreement of this model with the slice of the PG(8,q) model by a 6-space through `⟦z = 0⟧`.
#[derive(Clone, Debug, Serialize)]
pub struct SliceReport {
    pub affine_points_agree: bool,
    pub spread_planes_agree: bool,
    pub collineations_agree: bool,
}

impl SliceReport {
    pub fn pass(&self) -> bool {
        self.affine_points_agree && self.spread_planes_agree && self.collineations_agree
    }
}

pub fn verify_slice(bb: &BruckBose) -> Result<SliceReport> {
    let ctx = &bb.ctx;
    let pg8 = ctx.pg8();
    let pg6 = bb.pg6();
    let f = &ctx.tower.sub;
    let inf = ctx.h_space(bb.line_at_infinity);
    let mut e = vec![0u32; 9];
    e[6] = 1;
    let pi6 = pg8.span(&[&inf, &pg8.subspace(vec![e])?])?;
    let truncate = |v: &[u32]| -> Vec<u32> { v[..7].to_vec() };
    let pad = |v: &[u32]| -> Vec<u32> { v.iter().copied().chain([0, 0]).collect() };
    let mut points_ok = true;
    let mut planes_ok = true;
    for p in 0..ctx.pg2().num_points() {
        let sp = ctx.splane(p);
        match bb.affine_of_pg2(p) {
            Some(x) => {
                let m = pg8.meet(sp, &pi6)?;
                points_ok &= m.rank() == 1 && pg6.id_of(&truncate(&m.rows()[0]))? == x;
            }
            None => {
                let rows: Matrix = sp.rows().iter().map(|r| truncate(r)).collect();
                planes_ok &= pg8.contains(&inf, sp) && pg6.subspace(rows)? == bb.spread_plane(p)?;
            }
        }
    }
    let mut coll_ok = true;
    for x in 0..pg6.num_points() {
        let img = ctx.sigma.apply_vec(f, &pad(&pg6.coords(x)));
        coll_ok &= img[7] == 0 && img[8] == 0 && pg6.id_of(&truncate(&img))? == bb.phi_of(x);
    }
    Ok(SliceReport { affine_points_agree: points_ok, spread_planes_agree: planes_ok, collineations_agree: coll_ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_vanishes_on_rational_pairs() {
        let bb = BruckBose::new(3).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(bb.f_eval(x, y), 0);
            }
        }
        assert_ne!(bb.beta_c(), 0);
    }

    #[test]
    fn f_is_the_orbit_determinant() {
        // oracle: the 3x3 determinant of (x,y,1) and its Frobenius images
        let bb = BruckBose::new(4).unwrap();
        let t = &bb.ctx.tower;
        for x in (0..64).step_by(5) {
            for y in (0..64).step_by(3) {
                let row = |i: u32| [t.frobenius(x, i), t.frobenius(y, i), 1];
                let d = linalg::det3(&t.top, &[row(0), row(1), row(2)]);
                assert_eq!(bb.f_eval(x, y), d);
            }
        }
    }

    #[test]
    fn quadric_at_q3() {
        let bb = BruckBose::new(3).unwrap();
        let r = verify_quadric(&bb);
        assert_eq!(r.affine_quadric_points, 297);
        assert_eq!(r.singular_points, 13);
        assert_eq!(r.base_points, 16);
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn intersections_at_q3() {
        let bb = BruckBose::new(3).unwrap();
        let r = verify_intersections(&bb).unwrap();
        for c in &r.clauses {
            assert!(c.pass && c.checked > 0, "{c:?}");
        }
    }

    #[test]
    fn fixed_structure_and_slice() {
        for q in [3u32, 4] {
            let bb = BruckBose::new(q).unwrap();
            let r = verify_fixed(&bb).unwrap();
            assert!(r.pass(bb.ctx.params.n), "{r:?}");
            assert!(verify_slice(&bb).unwrap().pass());
            if q == 3 {
                assert!(r.pencil_pass());
            } else {
                // with three eigenvalues the pencil lines through m ∩ ℓ are not fixed;
                // the fixed ones join the second fixed point of m to the points of ℓ
                assert!(!r.pencil_lines_fixed && r.affine_lines_match_eigen_joins);
                assert_eq!(r.affine_fixed_ii_lines, 2 * (q as usize + 1) * (q * q) as usize);
            }
        }
    }

    #[test]
    fn no_affine_fixed_ii_lines_at_q5() {
        let bb = BruckBose::new(5).unwrap();
        let r = verify_fixed(&bb).unwrap();
        assert_eq!(r.affine_fixed_ii_lines, 0);
        assert!(r.pass(bb.ctx.params.n), "{r:?}");
    }
}
