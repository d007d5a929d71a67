//! Randomised and exhaustive structural properties of the reduction context:
//! the spread, the order of σ, orbit sizes, linear-set weights and reguli.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fixed::congruence::{regulus_through, transversals};
use crate::linsets::linear_set;
use crate::pg::{ProjSpace, Subspace};
use crate::reduction::ReductionContext;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub checked: usize,
    pub violations: usize,
}

impl PropertyCheck {
    pub fn pass(&self) -> bool {
        self.checked > 0 && self.violations == 0
    }
}

/// Every point of PG(8,q) lies in exactly one S-plane.
fn spread_partition(ctx: &ReductionContext) -> PropertyCheck {
    let pg8 = ctx.pg8();
    let mut hits = vec![0u8; pg8.num_points()];
    let mut violations = 0;
    for p in 0..ctx.pg2().num_points() {
        for x in pg8.points_of(ctx.splane(p)) {
            hits[x] = hits[x].saturating_add(1);
            if ctx.splane_of(x) != p {
                violations += 1;
            }
        }
    }
    violations += hits.iter().filter(|&&h| h != 1).count();
    PropertyCheck { name: "the S-planes partition the points", checked: hits.len(), violations }
}

/// σ³ is scalar and fixes every point.
fn sigma_order_three(ctx: &ReductionContext) -> PropertyCheck {
    let m = ctx.sigma_power(3);
    let c = m[0][0];
    let scalar = c != 0 && (0..9).all(|i| (0..9).all(|j| m[i][j] == if i == j { c } else { 0 }));
    let perm = ctx.sigma_perm();
    let moved = (0..perm.len()).filter(|&x| perm[perm[perm[x] as usize] as usize] as usize != x).count();
    PropertyCheck { name: "σ³ is the identity", checked: perm.len() + 1, violations: moved + usize::from(!scalar) }
}

/// Every σ-orbit on points has size 1 or 3, and every φ-orbit likewise.
fn orbit_sizes(ctx: &ReductionContext) -> PropertyCheck {
    let size = |x: usize, f: &dyn Fn(usize) -> usize| {
        let (a, b) = (f(x), f(f(x)));
        if a == x { 1 } else if b == x { 2 } else { 3 }
    };
    let s = |x| ctx.sigma_of(x);
    let p = |x| ctx.phi_of(x);
    let n8 = ctx.pg8().num_points();
    let n2 = ctx.pg2().num_points();
    let bad = (0..n8).filter(|&x| size(x, &s) == 2).count() + (0..n2).filter(|&x| size(x, &p) == 2).count();
    PropertyCheck { name: "orbits of σ and φ have size 1 or 3", checked: n8 + n2, violations: bad }
}

fn random_subspace(pg8: &ProjSpace, rank: usize, rng: &mut ChaCha8Rng) -> Subspace {
    let q = pg8.field().order();
    loop {
        let rows: Vec<Vec<u32>> = (0..rank).map(|_| (0..9).map(|_| rng.gen_range(0..q)).collect()).collect();
        if let Ok(s) = pg8.subspace(rows) {
            if s.rank() == rank {
                return s;
            }
        }
    }
}

fn weight_identity(ctx: &ReductionContext, samples: usize, rng: &mut ChaCha8Rng) -> Result<PropertyCheck> {
    let pg8 = ctx.pg8();
    let mut violations = 0;
    for i in 0..samples {
        let s = random_subspace(&pg8, 1 + i % 6, rng);
        if !linear_set(ctx, &s)?.weight_identity_holds(ctx.q()) {
            violations += 1;
        }
    }
    Ok(PropertyCheck { name: "weight identity of random linear sets", checked: samples, violations })
}

/// Three pairwise disjoint lines of a 3-space have exactly q+1 transversals,
/// and the regulus they determine has q+1 lines.
fn regulus_transversals(ctx: &ReductionContext, samples: usize, rng: &mut ChaCha8Rng) -> PropertyCheck {
    let pg8 = ctx.pg8();
    let q = ctx.q() as usize;
    let mut violations = 0;
    for _ in 0..samples {
        let solid = random_subspace(&pg8, 4, rng);
        let pts = pg8.points_of(&solid);
        let mut lines: Vec<Subspace> = Vec::new();
        while lines.len() < 3 {
            let a = pts[rng.gen_range(0..pts.len())];
            let b = pts[rng.gen_range(0..pts.len())];
            if a == b {
                continue;
            }
            let l = pg8.subspace_of_points(&[a, b]);
            if lines.iter().all(|m| pg8.meet(m, &l).unwrap().is_empty()) {
                lines.push(l);
            }
        }
        let t = transversals(&pg8, &lines);
        let reg = regulus_through(&pg8, [&lines[0], &lines[1], &lines[2]]);
        if t.len() != q + 1 || reg.map_or(true, |r| r.len() != q + 1) {
            violations += 1;
        }
    }
    PropertyCheck { name: "three skew lines have q+1 transversals", checked: samples, violations }
}

/// θ is GF(q)-linear and the S-plane of a point is spanned by its θ-images.
fn theta_linear(ctx: &ReductionContext, samples: usize, rng: &mut ChaCha8Rng) -> PropertyCheck {
    let top = &ctx.tower.top;
    let sub = &ctx.tower.sub;
    let pg8 = ctx.pg8();
    let mut violations = 0;
    for _ in 0..samples {
        let x: Vec<u32> = (0..3).map(|_| rng.gen_range(0..top.order())).collect();
        let y: Vec<u32> = (0..3).map(|_| rng.gen_range(0..top.order())).collect();
        let c = rng.gen_range(0..sub.order());
        let lhs = ctx.big_theta(&x.iter().zip(&y).map(|(&a, &b)| top.add(top.mul(c, a), b)).collect::<Vec<_>>());
        let tx = ctx.big_theta(&x);
        let ty = ctx.big_theta(&y);
        let rhs: Vec<u32> = tx.iter().zip(&ty).map(|(&a, &b)| sub.add(sub.mul(c, a), b)).collect();
        if lhs != rhs {
            violations += 1;
        }
        if x.iter().any(|&a| a != 0) {
            let p = ctx.pg2().id_of(&x).unwrap();
            if !pg8.contains_vec(ctx.splane(p), &tx) {
                violations += 1;
            }
        }
    }
    PropertyCheck { name: "θ is linear over GF(q)", checked: samples, violations }
}

pub fn property_checks(ctx: &ReductionContext, samples: usize, seed: u64) -> Result<Vec<PropertyCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(vec![
        spread_partition(ctx),
        sigma_order_three(ctx),
        orbit_sizes(ctx),
        theta_linear(ctx, samples, &mut rng),
        weight_identity(ctx, samples, &mut rng)?,
        regulus_transversals(ctx, samples, &mut rng),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::PhiVariant;

    #[test]
    fn all_properties_hold_at_q3_and_q4() {
        for q in [3, 4] {
            let ctx = ReductionContext::new(q, PhiVariant::Phi1).unwrap();
            for c in property_checks(&ctx, 20, 0).unwrap() {
                assert!(c.pass(), "q={q}: {c:?}");
            }
        }
    }
}
