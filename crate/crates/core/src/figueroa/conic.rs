//! Conics in a plane of a projective space, given by incidence and tangency.

use crate::error::{GeomError, Result};
use crate::linalg;
use crate::pg::{PointId, ProjSpace, Subspace};

/// A conic `a x² + b y² + c z² + d xy + e xz + f yz = 0` in plane
/// coordinates relative to the basis of its plane.
#[derive(Clone, Debug)]
pub struct Conic {
    pub coeffs: [u32; 6],
    /// Ambient ids of the rational points.
    pub points: Vec<PointId>,
}

fn monomials(s: &ProjSpace, v: &[u32]) -> Vec<u32> {
    let f = s.field();
    vec![
        f.mul(v[0], v[0]),
        f.mul(v[1], v[1]),
        f.mul(v[2], v[2]),
        f.mul(v[0], v[1]),
        f.mul(v[0], v[2]),
        f.mul(v[1], v[2]),
    ]
}

/// Coefficients of the polar form `Q(u+v) − Q(u) − Q(v)` as a linear form in the conic coefficients.
fn polar_row(s: &ProjSpace, u: &[u32], v: &[u32]) -> Vec<u32> {
    let f = s.field();
    let sym = |i: usize, j: usize| f.add(f.mul(u[i], v[j]), f.mul(u[j], v[i]));
    vec![sym(0, 0), sym(1, 1), sym(2, 2), sym(0, 1), sym(0, 2), sym(1, 2)]
}

pub fn eval(s: &ProjSpace, coeffs: &[u32; 6], v: &[u32]) -> u32 {
    linalg::dot(s.field(), coeffs, &monomials(s, v))
}

fn gradient(s: &ProjSpace, c: &[u32; 6], v: &[u32]) -> [u32; 3] {
    let f = s.field();
    let two = |x: u32| f.add(x, x);
    let lin = |a: u32, b: u32, x: u32, y: u32| f.add(f.mul(a, x), f.mul(b, y));
    [
        f.add(two(f.mul(c[0], v[0])), lin(c[3], c[4], v[1], v[2])),
        f.add(two(f.mul(c[1], v[1])), lin(c[3], c[5], v[0], v[2])),
        f.add(two(f.mul(c[2], v[2])), lin(c[4], c[5], v[0], v[1])),
    ]
}

fn local(s: &ProjSpace, plane: &Subspace, id: PointId) -> Result<Vec<u32>> {
    s.coords_in(plane, &s.coords(id))
        .ok_or_else(|| GeomError::Degenerate(format!("point {id} is not in the plane")))
}

/// Whether the rational points of the conic with these coefficients form a
/// non-degenerate conic: q+1 points, none singular, no three collinear.
pub fn is_nondegenerate(s: &ProjSpace, coeffs: &[u32; 6]) -> bool {
    let p2 = ProjSpace::new(s.field(), 2);
    let pts: Vec<Vec<u32>> = (0..p2.num_points())
        .map(|i| p2.coords(i))
        .filter(|v| eval(s, coeffs, v) == 0)
        .collect();
    let q = s.field().order() as usize;
    if pts.len() != q + 1 || pts.iter().any(|v| gradient(s, coeffs, v) == [0, 0, 0]) {
        return false;
    }
    no_three_collinear(s, &pts)
}

pub fn no_three_collinear(s: &ProjSpace, pts: &[Vec<u32>]) -> bool {
    let f = s.field();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let m = [&pts[i], &pts[j], &pts[k]].map(|v| [v[0], v[1], v[2]]);
                if linalg::det3(f, &m) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// The unique conic of `plane` through `p1, p2, p3` tangent to `t2` at `p2`
/// and to `t3` at `p3`. Tangency is imposed as a double root of the
/// restriction to the tangent line, which works in every characteristic.
pub fn conic_through(
    s: &ProjSpace,
    plane: &Subspace,
    [p1, p2, p3]: [PointId; 3],
    t2: &Subspace,
    t3: &Subspace,
) -> Result<Conic> {
    if plane.rank() != 3 || t2.rank() != 2 || t3.rank() != 2 {
        return Err(GeomError::Degenerate("expected a plane and two lines".into()));
    }
    let f = s.field();
    let v1 = local(s, plane, p1)?;
    let v2 = local(s, plane, p2)?;
    let v3 = local(s, plane, p3)?;
    let tri = [&v1, &v2, &v3].map(|v| [v[0], v[1], v[2]]);
    if linalg::det3(f, &tri) == 0 {
        return Err(GeomError::Degenerate("the three points are collinear".into()));
    }
    let on = |l: &Subspace, p: PointId| s.contains_point(l, p);
    if !on(t2, p2) || on(t2, p1) || on(t2, p3) || !on(t3, p3) || on(t3, p1) || on(t3, p2) {
        return Err(GeomError::Degenerate("tangent lines are not in general position".into()));
    }
    // a second point on each tangent line
    let other = |l: &Subspace, p: PointId| -> Result<Vec<u32>> {
        let r = l.rows().iter().find(|r| s.id_of(r).ok() != Some(p)).unwrap();
        s.coords_in(plane, r).ok_or_else(|| GeomError::Degenerate("tangent not in the plane".into()))
    };
    let r2 = other(t2, p2)?;
    let r3 = other(t3, p3)?;
    let eqs = vec![
        monomials(s, &v1),
        monomials(s, &v2),
        monomials(s, &v3),
        polar_row(s, &v2, &r2),
        polar_row(s, &v3, &r3),
    ];
    let sol = linalg::nullspace(f, &eqs, 6);
    if sol.len() != 1 {
        return Err(GeomError::Degenerate(format!("{}-dimensional family of conics", sol.len())));
    }
    let coeffs: [u32; 6] = sol[0].clone().try_into().unwrap();
    if !is_nondegenerate(s, &coeffs) {
        return Err(GeomError::Degenerate("the conic is degenerate".into()));
    }
    let p2s = ProjSpace::new(f, 2);
    let mut points: Vec<PointId> = (0..p2s.num_points())
        .map(|i| p2s.coords(i))
        .filter(|v| eval(s, &coeffs, v) == 0)
        .map(|v| s.id_of(&s.combine(plane, &v)).unwrap())
        .collect();
    points.sort_unstable();
    Ok(Conic { coeffs, points })
}

/// Dimension of the space of conic forms through the given points of a plane.
pub fn conics_through_points(s: &ProjSpace, plane: &Subspace, pts: &[PointId]) -> Result<usize> {
    let eqs = pts.iter().map(|&p| local(s, plane, p).map(|v| monomials(s, &v))).collect::<Result<Vec<_>>>()?;
    Ok(linalg::nullspace(s.field(), &eqs, 6).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use std::collections::BTreeSet;

    /// Oracle: scan every coefficient class for conics meeting the definition directly.
    fn brute_force(s: &ProjSpace, p: [PointId; 3], t2: &Subspace, t3: &Subspace) -> Vec<BTreeSet<PointId>> {
        let coeff_space = ProjSpace::new(s.field(), 5);
        let pts: Vec<Vec<u32>> = (0..s.num_points()).map(|i| s.coords(i)).collect();
        let mut found = Vec::new();
        for c in 0..coeff_space.num_points() {
            let c: [u32; 6] = coeff_space.coords(c).try_into().unwrap();
            let zero: BTreeSet<PointId> = (0..pts.len()).filter(|&i| eval(s, &c, &pts[i]) == 0).collect();
            let on = |l: &Subspace| -> BTreeSet<PointId> {
                zero.iter().copied().filter(|&i| s.contains_point(l, i)).collect()
            };
            let q = s.field().order() as usize;
            let zv: Vec<Vec<u32>> = zero.iter().map(|&i| pts[i].clone()).collect();
            if p.iter().all(|x| zero.contains(x))
                && on(t2) == BTreeSet::from([p[1]])
                && on(t3) == BTreeSet::from([p[2]])
                && zero.len() == q + 1
                && no_three_collinear(s, &zv)
            {
                found.push(zero);
            }
        }
        found
    }

    #[test]
    fn unique_conic_matches_exhaustive_search() {
        for p in [3u32, 5] {
            let f = Field::prime(p).unwrap();
            let s = ProjSpace::new(&f, 2);
            let whole = s.subspace(linalg::identity(3)).unwrap();
            let a = s.id_of(&[1, 1, 1]).unwrap();
            let b = s.id_of(&[0, 1, 0]).unwrap();
            let c = s.id_of(&[0, 0, 1]).unwrap();
            let e = s.id_of(&[1, 0, 0]).unwrap();
            let t2 = s.subspace_of_points(&[b, e]);
            let t3 = s.subspace_of_points(&[c, e]);
            let conic = conic_through(&s, &whole, [a, b, c], &t2, &t3).unwrap();
            assert_eq!(conic.points.len(), p as usize + 1);
            let oracle = brute_force(&s, [a, b, c], &t2, &t3);
            assert_eq!(oracle.len(), 1);
            assert_eq!(conic.points.iter().copied().collect::<BTreeSet<_>>(), oracle[0]);
            // x² = yz
            for &pt in &conic.points {
                let v = s.coords(pt);
                assert_eq!(f.mul(v[0], v[0]), f.mul(v[1], v[2]));
            }
        }
    }

    #[test]
    fn even_characteristic_tangency() {
        let t = crate::gf::FieldTower::new(4).unwrap();
        let s = ProjSpace::new(&t.sub, 2);
        let whole = s.subspace(linalg::identity(3)).unwrap();
        let [a, b, c, e] = [[1, 1, 1], [0, 1, 0], [0, 0, 1], [1, 0, 0]].map(|v| s.id_of(&v).unwrap());
        let t2 = s.subspace_of_points(&[b, e]);
        let t3 = s.subspace_of_points(&[c, e]);
        let conic = conic_through(&s, &whole, [a, b, c], &t2, &t3).unwrap();
        assert_eq!(conic.points.len(), 5);
        assert!(s.points_of(&t2).iter().filter(|x| conic.points.contains(x)).eq([b].iter()));
    }

    #[test]
    fn rejects_bad_tangents() {
        let f = Field::prime(3).unwrap();
        let s = ProjSpace::new(&f, 2);
        let whole = s.subspace(linalg::identity(3)).unwrap();
        let [a, b, c] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|v| s.id_of(&v).unwrap());
        let t2 = s.subspace_of_points(&[a, b]);
        let t3 = s.subspace_of_points(&[c, s.id_of(&[1, 1, 0]).unwrap()]);
        assert!(conic_through(&s, &whole, [a, b, c], &t2, &t3).is_err());
    }
}
