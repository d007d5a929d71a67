//! Projective spaces PG(n, F), their points, subspaces and collineations.
//!
//! Points are identified by an integer id equal to the rank of the
//! normalised coordinate vector (first nonzero coordinate 1) in
//! lexicographic order, coordinate 0 most significant.

use crate::error::{GeomError, Result};
use crate::gf::Field;
use crate::linalg::{self, Matrix};

pub type PointId = usize;

#[derive(Clone, Copy, Debug)]
pub struct ProjSpace<'f> {
    field: &'f Field,
    len: usize,
}

/// A subspace stored by its reduced row echelon basis, so equality is
/// equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    len: usize,
    rows: Matrix,
}

impl Subspace {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Projective dimension; the empty subspace has dimension -1.
    pub fn dim(&self) -> isize {
        self.rows.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.iter().position(|&x| x != 0).unwrap())
    }
}

impl<'f> ProjSpace<'f> {
    /// PG(dim, field).
    pub fn new(field: &'f Field, dim: usize) -> Self {
        ProjSpace { field, len: dim + 1 }
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.len - 1
    }

    pub fn vec_len(&self) -> usize {
        self.len
    }

    pub fn num_points(&self) -> usize {
        let q = self.field.order() as usize;
        (q.pow(self.len as u32) - 1) / (q - 1)
    }

    fn offset(&self, lead: usize) -> usize {
        let q = self.field.order() as usize;
        (q.pow((self.len - 1 - lead) as u32) - 1) / (q - 1)
    }

    /// Scales `v` in place so its first nonzero entry is 1.
    pub fn normalize_in_place(&self, v: &mut [u32]) -> Result<()> {
        let lead = v.iter().position(|&x| x != 0).ok_or(GeomError::ZeroVector)?;
        let s = self.field.inv_nz(v[lead]);
        if s != 1 {
            for x in v[lead..].iter_mut() {
                *x = self.field.mul(*x, s);
            }
        }
        Ok(())
    }

    pub fn normalize(&self, v: &[u32]) -> Result<Vec<u32>> {
        let mut w = v.to_vec();
        self.normalize_in_place(&mut w)?;
        Ok(w)
    }

    /// Id of the point spanned by a nonzero vector of any scaling.
    pub fn id_of(&self, v: &[u32]) -> Result<PointId> {
        if v.len() != self.len {
            return Err(GeomError::AmbientMismatch { left: v.len(), right: self.len });
        }
        let lead = v.iter().position(|&x| x != 0).ok_or(GeomError::ZeroVector)?;
        let s = self.field.inv_nz(v[lead]);
        let q = self.field.order() as usize;
        let mut value = 0usize;
        for &x in &v[lead + 1..] {
            value = value * q + self.field.mul(x, s) as usize;
        }
        Ok(self.offset(lead) + value)
    }

    pub fn coords_into(&self, id: PointId, out: &mut [u32]) {
        let q = self.field.order() as usize;
        let mut lead = self.len - 1;
        while self.offset(lead) + q.pow((self.len - 1 - lead) as u32) <= id {
            lead -= 1;
        }
        let mut value = id - self.offset(lead);
        out[..lead].fill(0);
        out[lead] = 1;
        for i in (lead + 1..self.len).rev() {
            out[i] = (value % q) as u32;
            value /= q;
        }
    }

    pub fn coords(&self, id: PointId) -> Vec<u32> {
        let mut v = vec![0; self.len];
        self.coords_into(id, &mut v);
        v
    }

    pub fn subspace(&self, rows: Vec<Vec<u32>>) -> Result<Subspace> {
        if let Some(r) = rows.iter().find(|r| r.len() != self.len) {
            return Err(GeomError::AmbientMismatch { left: r.len(), right: self.len });
        }
        let mut rows = rows;
        linalg::rref(self.field, &mut rows);
        Ok(Subspace { len: self.len, rows })
    }

    pub fn point_subspace(&self, id: PointId) -> Subspace {
        Subspace { len: self.len, rows: vec![self.coords(id)] }
    }

    pub fn subspace_of_points(&self, ids: &[PointId]) -> Subspace {
        let rows = ids.iter().map(|&i| self.coords(i)).collect();
        self.subspace(rows).expect("ids belong to this space")
    }

    fn check(&self, s: &Subspace) -> Result<()> {
        if s.len != self.len {
            return Err(GeomError::AmbientMismatch { left: s.len, right: self.len });
        }
        Ok(())
    }

    pub fn span(&self, parts: &[&Subspace]) -> Result<Subspace> {
        let mut rows = Vec::new();
        for s in parts {
            self.check(s)?;
            rows.extend(s.rows.iter().cloned());
        }
        self.subspace(rows)
    }

    /// The dual subspace `{h : s·h = 0 for all s ∈ S}` as a basis of hyperplane coordinates.
    pub fn annihilator(&self, s: &Subspace) -> Subspace {
        let mut rows = linalg::nullspace(self.field, &s.rows, self.len);
        linalg::rref(self.field, &mut rows);
        Subspace { len: self.len, rows }
    }

    pub fn meet(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check(a)?;
        self.check(b)?;
        let mut eqs = linalg::nullspace(self.field, &a.rows, self.len);
        eqs.extend(linalg::nullspace(self.field, &b.rows, self.len));
        let mut rows = linalg::nullspace(self.field, &eqs, self.len);
        linalg::rref(self.field, &mut rows);
        Ok(Subspace { len: self.len, rows })
    }

    /// Coefficients of `v` with respect to the basis of `s`, if `v ∈ s`.
    pub fn coords_in(&self, s: &Subspace, v: &[u32]) -> Option<Vec<u32>> {
        let c: Vec<u32> = s.pivots().map(|p| v[p]).collect();
        let back = self.combine(s, &c);
        (back == v).then_some(c)
    }

    /// `Σ c_i · basis_i`.
    pub fn combine(&self, s: &Subspace, c: &[u32]) -> Vec<u32> {
        linalg::vec_mat(self.field, c, &s.rows)
    }

    pub fn contains_vec(&self, s: &Subspace, v: &[u32]) -> bool {
        v.len() == self.len && self.coords_in(s, v).is_some()
    }

    pub fn contains_point(&self, s: &Subspace, id: PointId) -> bool {
        self.contains_vec(s, &self.coords(id))
    }

    /// Whether `inner ⊆ outer`.
    pub fn contains(&self, outer: &Subspace, inner: &Subspace) -> bool {
        inner.len == outer.len && inner.rows.iter().all(|r| self.contains_vec(outer, r))
    }

    /// Sorted ids of all points of `s`.
    pub fn points_of(&self, s: &Subspace) -> Vec<PointId> {
        if s.is_empty() {
            return Vec::new();
        }
        let local = ProjSpace::new(self.field, s.rank() - 1);
        let mut c = vec![0; s.rank()];
        let mut ids: Vec<PointId> = (0..local.num_points())
            .map(|i| {
                local.coords_into(i, &mut c);
                self.id_of(&self.combine(s, &c)).unwrap()
            })
            .collect();
        ids.sort_unstable();
        ids
    }

    /// Every k-dimensional subspace contained in `s`, each once.
    pub fn subspaces_of(&self, s: &Subspace, k: usize) -> Vec<Subspace> {
        let r = s.rank();
        if k + 1 > r {
            return Vec::new();
        }
        // enumerate RREF (k+1) x r coefficient matrices
        let mut out = Vec::new();
        let q = self.field.order();
        let mut pivots = Vec::new();
        fn choose(start: usize, r: usize, left: usize, cur: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
            if left == 0 {
                all.push(cur.clone());
                return;
            }
            for i in start..r {
                cur.push(i);
                choose(i + 1, r, left - 1, cur, all);
                cur.pop();
            }
        }
        choose(0, r, k + 1, &mut Vec::new(), &mut pivots);
        for piv in pivots {
            // free slots: row i, column c > piv[i], c not a pivot
            let free: Vec<(usize, usize)> = (0..=k)
                .flat_map(|i| ((piv[i] + 1)..r).filter(|c| !piv.contains(c)).map(move |c| (i, c)))
                .collect();
            let total = (q as usize).pow(free.len() as u32);
            for mut n in 0..total {
                let mut coef = vec![vec![0u32; r]; k + 1];
                for (i, &p) in piv.iter().enumerate() {
                    coef[i][p] = 1;
                }
                for &(i, c) in &free {
                    coef[i][c] = (n % q as usize) as u32;
                    n /= q as usize;
                }
                let rows = coef.iter().map(|c| self.combine(s, c)).collect();
                out.push(self.subspace(rows).unwrap());
            }
        }
        out
    }
}

/// A (semi)linear map `v ↦ v^(f) · matrix` on row vectors, where `f` is
/// the automorphism `x ↦ x^(base^frob_power)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collineation {
    pub matrix: Matrix,
    pub frob_power: u32,
    pub frob_base: u32,
    inverse: Matrix,
}

impl Collineation {
    pub fn new(field: &Field, matrix: Matrix, frob_power: u32, frob_base: u32) -> Result<Self> {
        let inverse = linalg::mat_inv(field, &matrix)?;
        Ok(Collineation { matrix, frob_power, frob_base, inverse })
    }

    pub fn linear(field: &Field, matrix: Matrix) -> Result<Self> {
        Self::new(field, matrix, 0, 1)
    }

    fn exponent(&self) -> u64 {
        (self.frob_base as u64).pow(self.frob_power)
    }

    fn twist(&self, field: &Field, v: &[u32]) -> Vec<u32> {
        let e = self.exponent();
        if e == 1 {
            v.to_vec()
        } else {
            v.iter().map(|&x| field.pow(x, e)).collect()
        }
    }

    pub fn apply_vec(&self, field: &Field, v: &[u32]) -> Vec<u32> {
        linalg::vec_mat(field, &self.twist(field, v), &self.matrix)
    }

    pub fn apply(&self, space: &ProjSpace, id: PointId) -> PointId {
        space.id_of(&self.apply_vec(space.field(), &space.coords(id))).unwrap()
    }

    pub fn apply_sub(&self, space: &ProjSpace, s: &Subspace) -> Subspace {
        let rows = s.rows.iter().map(|r| self.apply_vec(space.field(), r)).collect();
        space.subspace(rows).unwrap()
    }

    /// Image of a hyperplane given by column coordinates `h` (points `x` with `x·h = 0`).
    pub fn apply_dual_vec(&self, field: &Field, h: &[u32]) -> Vec<u32> {
        linalg::mat_vec(field, &self.inverse, &self.twist(field, h))
    }

    pub fn apply_dual(&self, space: &ProjSpace, id: PointId) -> PointId {
        space.id_of(&self.apply_dual_vec(space.field(), &space.coords(id))).unwrap()
    }

    /// `self` followed by `other`.
    pub fn then(&self, field: &Field, other: &Collineation) -> Result<Collineation> {
        let twisted: Matrix = self.matrix.iter().map(|r| other.twist(field, r)).collect();
        let matrix = linalg::mat_mul(field, &twisted, &other.matrix);
        let base = if self.frob_power == 0 { other.frob_base } else { self.frob_base };
        if self.frob_power > 0 && other.frob_power > 0 && self.frob_base != other.frob_base {
            return Err(GeomError::Degenerate("incompatible Frobenius bases".into()));
        }
        Collineation::new(field, matrix, self.frob_power + other.frob_power, base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldTower;
    use proptest::prelude::*;

    #[test]
    fn ids_are_lexicographic_ranks() {
        let f = Field::prime(3).unwrap();
        let s = ProjSpace::new(&f, 2);
        // oracle: list normalised vectors and sort
        let mut all = Vec::new();
        for a in 0..3u32 {
            for b in 0..3 {
                for c in 0..3 {
                    let v = vec![a, b, c];
                    if v.iter().any(|&x| x != 0) && s.normalize(&v).unwrap() == v {
                        all.push(v);
                    }
                }
            }
        }
        all.sort();
        assert_eq!(all.len(), s.num_points());
        for (i, v) in all.iter().enumerate() {
            assert_eq!(s.id_of(v).unwrap(), i);
            assert_eq!(&s.coords(i), v);
        }
    }

    #[test]
    fn point_counts() {
        let t = FieldTower::new(3).unwrap();
        assert_eq!(ProjSpace::new(&t.sub, 8).num_points(), 9841);
        assert_eq!(ProjSpace::new(&t.top, 2).num_points(), 757);
        let t = FieldTower::new(4).unwrap();
        assert_eq!(ProjSpace::new(&t.sub, 8).num_points(), 87381);
    }

    #[test]
    fn zero_vector_and_mismatch_are_errors() {
        let f = Field::prime(5).unwrap();
        let s = ProjSpace::new(&f, 3);
        assert_eq!(s.id_of(&[0, 0, 0, 0]), Err(GeomError::ZeroVector));
        assert!(matches!(s.id_of(&[1, 0]), Err(GeomError::AmbientMismatch { .. })));
        let other = ProjSpace::new(&f, 2).point_subspace(0);
        assert!(s.span(&[&other]).is_err());
    }

    #[test]
    fn subspace_enumeration_counts() {
        // Gaussian binomials: lines of PG(3,3) = 130, planes of PG(3,3) = 40
        let f = Field::prime(3).unwrap();
        let s = ProjSpace::new(&f, 3);
        let whole = s.subspace(linalg::identity(4)).unwrap();
        let lines = s.subspaces_of(&whole, 1);
        assert_eq!(lines.len(), 130);
        let mut uniq = lines.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 130);
        assert_eq!(s.subspaces_of(&whole, 2).len(), 40);
    }

    fn arb_rows(n: usize, len: usize, p: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
        prop::collection::vec(prop::collection::vec(0..p, len), 0..=n)
    }

    proptest! {
        #[test]
        fn dimension_formula(a in arb_rows(4, 6, 3), b in arb_rows(4, 6, 3)) {
            let f = Field::prime(3).unwrap();
            let s = ProjSpace::new(&f, 5);
            let sa = s.subspace(a).unwrap();
            let sb = s.subspace(b).unwrap();
            let join = s.span(&[&sa, &sb]).unwrap();
            let meet = s.meet(&sa, &sb).unwrap();
            prop_assert_eq!(sa.rank() + sb.rank(), join.rank() + meet.rank());
            prop_assert!(s.contains(&sa, &meet) && s.contains(&sb, &meet));
            prop_assert!(s.contains(&join, &sa) && s.contains(&join, &sb));
            // canonical form: rebuilding from its own rows is the identity
            prop_assert_eq!(&s.subspace(meet.rows().clone()).unwrap(), &meet);
            // point sets agree with membership
            let pa: std::collections::BTreeSet<_> = s.points_of(&sa).into_iter().collect();
            let pb: std::collections::BTreeSet<_> = s.points_of(&sb).into_iter().collect();
            let pm: std::collections::BTreeSet<_> = s.points_of(&meet).into_iter().collect();
            prop_assert_eq!(pm, pa.intersection(&pb).copied().collect());
        }

        #[test]
        fn id_round_trip(id in 0usize..9841) {
            let f = Field::prime(3).unwrap();
            let s = ProjSpace::new(&f, 8);
            prop_assert_eq!(s.id_of(&s.coords(id)).unwrap(), id);
        }
    }
}
