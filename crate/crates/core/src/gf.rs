//! Finite fields GF(p) ⊂ GF(q) ⊂ GF(q³) built from lookup tables.
//!
//! An element of an extension of degree `d` over a base field of order `b`
//! is encoded as the integer `c0 + c1*b + ... + c_{d-1}*b^{d-1}` where
//! `c_i` are base-field encodings. The class of the indeterminate therefore
//! has encoding `b`, and with the primitive polynomials chosen here it is
//! always a primitive element.

use crate::error::{GeomError, Result};
use serde::Serialize;

/// Largest order for which a full addition table is materialised.
const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Clone, Debug)]
pub struct Field {
    order: u32,
    characteristic: u32,
    /// Order of the field the digits of an encoding live in (equal to `order` for prime fields).
    digit_base: u32,
    digits: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    base: Option<Box<Field>>,
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(GeomError::NotPrime { p });
        }
        let n = p as usize;
        let mut add = vec![0; n * n];
        for a in 0..p {
            for b in 0..p {
                add[(a * p + b) as usize] = (a + b) % p;
            }
        }
        let neg = (0..p).map(|a| (p - a) % p).collect();
        let root = (1..p.max(2))
            .find(|&g| multiplicative_order_mod(g, p) == p - 1)
            .ok_or(GeomError::NotPrime { p })?;
        let mut exp = Vec::with_capacity(2 * n);
        let mut x = 1u32;
        for _ in 0..2 * (p - 1) {
            exp.push(x);
            x = x * root % p;
        }
        let (log, inv) = log_and_inverse(&exp, p);
        Ok(Field {
            order: p,
            characteristic: p,
            digit_base: p,
            digits: 1,
            add,
            neg,
            inv,
            exp,
            log,
            base: None,
        })
    }

    /// Builds `base[x]/(f)` where `f = x^d + poly[d-1] x^{d-1} + ... + poly[0]`.
    /// Returns `None` unless `f` is primitive.
    pub fn extension(base: &Field, poly: &[u32]) -> Option<Field> {
        let d = poly.len();
        let b = base.order;
        let order = b.checked_pow(d as u32)?;
        let n = order - 1;
        // multiplication by x on coefficient vectors
        let times_x = |coeffs: &mut Vec<u32>| {
            let top = coeffs[d - 1];
            for i in (1..d).rev() {
                coeffs[i] = base.sub(coeffs[i - 1], base.mul(top, poly[i]));
            }
            coeffs[0] = base.neg(base.mul(top, poly[0]));
        };
        let encode = |coeffs: &[u32]| coeffs.iter().rev().fold(0u32, |acc, &c| acc * b + c);
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut cur = vec![0u32; d];
        cur[0] = 1;
        for i in 0..n {
            let e = encode(&cur);
            if i > 0 && e == 1 {
                return None;
            }
            exp.push(e);
            times_x(&mut cur);
        }
        if encode(&cur) != 1 {
            return None;
        }
        for i in 0..n as usize {
            let e = exp[i];
            exp.push(e);
        }
        let (log, inv) = log_and_inverse(&exp, order);
        let mut field = Field {
            order,
            characteristic: base.characteristic,
            digit_base: b,
            digits: d,
            add: Vec::new(),
            neg: Vec::new(),
            inv,
            exp,
            log,
            base: Some(Box::new(base.clone())),
        };
        field.neg = (0..order).map(|a| field.digitwise(a, 0, |x, _| base.neg(x))).collect();
        if order <= ADD_TABLE_LIMIT {
            let mut add = vec![0; (order * order) as usize];
            for a in 0..order {
                for c in 0..order {
                    add[(a * order + c) as usize] = field.digitwise(a, c, |x, y| base.add(x, y));
                }
            }
            field.add = add;
        }
        Some(field)
    }

    fn digitwise(&self, a: u32, c: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
        let b = self.digit_base;
        let (mut a, mut c, mut out, mut scale) = (a, c, 0, 1);
        for _ in 0..self.digits {
            out += f(a % b, c % b) * scale;
            a /= b;
            c /= b;
            scale *= b;
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// The field the encoding digits belong to, if this is an extension.
    pub fn base(&self) -> Option<&Field> {
        self.base.as_deref()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.add.is_empty() {
            let base = self.base.as_ref().expect("large prime fields are unsupported");
            self.digitwise(a, b, |x, y| base.add(x, y))
        } else {
            self.add[(a * self.order + b) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            Err(GeomError::ZeroInverse)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    /// Inverse of a value already known to be nonzero.
    #[inline]
    pub(crate) fn inv_nz(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `g^i` for the primitive element `g` used to build the tables.
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % (self.order as u64 - 1)) as usize]
    }

    /// Discrete logarithm to the table generator, `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn primitive_element(&self) -> u32 {
        self.exp[1]
    }
}

fn log_and_inverse(exp: &[u32], order: u32) -> (Vec<u32>, Vec<u32>) {
    let n = order - 1;
    let mut log = vec![0; order as usize];
    for i in 0..n {
        log[exp[i as usize] as usize] = i;
    }
    let mut inv = vec![0; order as usize];
    for a in 1..order {
        inv[a as usize] = exp[((n - log[a as usize]) % n) as usize];
    }
    (log, inv)
}

fn multiplicative_order_mod(g: u32, p: u32) -> u32 {
    let mut x = g % p;
    let mut k = 1;
    while x != 1 {
        x = x * g % p;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Splits `q` as `p^k`, or fails if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Lexicographically smallest primitive monic polynomial of degree `d`
/// over `base`, comparing `(c0, c1, ...)` as integers. Returns the
/// coefficients together with the resulting extension field.
pub fn smallest_primitive(base: &Field, d: usize) -> Result<(Vec<u32>, Field)> {
    let b = base.order() as u64;
    let total = b.pow(d as u32);
    for n in 0..total {
        let mut coeffs = vec![0u32; d];
        let mut r = n;
        for i in (0..d).rev() {
            coeffs[i] = (r % b) as u32;
            r /= b;
        }
        if coeffs[0] == 0 {
            continue;
        }
        if let Some(f) = Field::extension(base, &coeffs) {
            return Ok((coeffs, f));
        }
    }
    Err(GeomError::NoPrimitivePolynomial {
        base: base.order(),
        degree: d,
    })
}

/// The three levels of the tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    Prime,
    Sub,
    Top,
}

/// An element tagged with the level it lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldElement {
    pub level: Level,
    pub value: u32,
}

/// Derived parameters of q: `n ∈ {-1,0,1}` with `q ≡ n (mod 3)`, and `g = n² + n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub q: i64,
    pub n: i64,
    pub g: i64,
}

impl Params {
    pub fn new(q: u32) -> Params {
        let q = q as i64;
        let n = match q % 3 {
            0 => 0,
            1 => 1,
            _ => -1,
        };
        Params { q, n, g: n * n + n + 1 }
    }

    /// `q² + q + 1`.
    pub fn v(&self) -> i64 {
        self.q * self.q + self.q + 1
    }
}

/// GF(p) ⊂ GF(q) ⊂ GF(q³) with the chosen defining polynomials.
#[derive(Clone, Debug)]
pub struct FieldTower {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    pub prime: Field,
    pub sub: Field,
    pub top: Field,
    pub base_poly: Vec<u32>,
    pub cubic_poly: Vec<u32>,
}

impl FieldTower {
    pub fn new(q: u32) -> Result<FieldTower> {
        let (p, k) = prime_power(q).ok_or(GeomError::InvalidOrder { q })?;
        if q <= 2 {
            return Err(GeomError::InvalidOrder { q });
        }
        let prime = Field::prime(p)?;
        let (base_poly, sub) = smallest_primitive(&prime, k as usize)?;
        let (cubic_poly, top) = smallest_primitive(&sub, 3)?;
        debug_assert_eq!(top.primitive_element(), q);
        Ok(FieldTower {
            p,
            k,
            q,
            prime,
            sub,
            top,
            base_poly,
            cubic_poly,
        })
    }

    pub fn params(&self) -> Params {
        Params::new(self.q)
    }

    /// The primitive element τ of GF(q³); its encoding is `q`.
    pub fn tau(&self) -> u32 {
        self.q
    }

    fn field(&self, level: Level) -> &Field {
        match level {
            Level::Prime => &self.prime,
            Level::Sub => &self.sub,
            Level::Top => &self.top,
        }
    }

    pub fn element(&self, level: Level, value: u32) -> Result<FieldElement> {
        if value >= self.field(level).order() {
            return Err(GeomError::LevelMismatch(format!(
                "{value} is not an element of a field of order {}",
                self.field(level).order()
            )));
        }
        Ok(FieldElement { level, value })
    }

    fn same_level(&self, a: FieldElement, b: FieldElement) -> Result<&Field> {
        if a.level != b.level {
            return Err(GeomError::LevelMismatch(format!("{:?} vs {:?}", a.level, b.level)));
        }
        Ok(self.field(a.level))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let f = self.same_level(a, b)?;
        Ok(FieldElement { level: a.level, value: f.add(a.value, b.value) })
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let f = self.same_level(a, b)?;
        Ok(FieldElement { level: a.level, value: f.mul(a.value, b.value) })
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        Ok(FieldElement { level: a.level, value: self.field(a.level).inv(a.value)? })
    }

    /// Coefficient vector of an element over the next level down.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        match a.level {
            Level::Prime => vec![a.value],
            Level::Sub => {
                let mut v = a.value;
                (0..self.k)
                    .map(|_| {
                        let c = v % self.p;
                        v /= self.p;
                        c
                    })
                    .collect()
            }
            Level::Top => self.theta(a.value).to_vec(),
        }
    }

    /// `x ↦ x^(q^i)` on GF(q³).
    pub fn frobenius(&self, x: u32, i: u32) -> u32 {
        self.top.pow(x, (self.q as u64).pow(i % 3))
    }

    /// Coordinates of `x ∈ GF(q³)` in the basis `1, τ, τ²`.
    #[inline]
    pub fn theta(&self, x: u32) -> [u32; 3] {
        let q = self.q;
        [x % q, (x / q) % q, x / (q * q)]
    }

    #[inline]
    pub fn theta_inv(&self, c: [u32; 3]) -> u32 {
        c[0] + self.q * (c[1] + self.q * c[2])
    }

    /// The 3×3 matrix `A` over GF(q) with `θ(x)·A = θ(x^q)`.
    pub fn frobenius_matrix(&self) -> [[u32; 3]; 3] {
        let tau = self.tau();
        [
            self.theta(1),
            self.theta(self.frobenius(tau, 1)),
            self.theta(self.frobenius(self.top.mul(tau, tau), 1)),
        ]
    }

    /// Whether `x ∈ GF(q³)` lies in the subfield GF(q).
    pub fn in_subfield(&self, x: u32) -> bool {
        x < self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Schoolbook polynomial arithmetic over GF(p) used as an independent oracle.
    fn polymul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let d = modulus.len();
        let mut prod = vec![0u32; 2 * d];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for i in (d..2 * d).rev() {
            let t = prod[i];
            if t == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..d {
                prod[i - d + j] = (prod[i - d + j] + p * p - t * modulus[j] % p) % p;
            }
        }
        prod.truncate(d);
        prod
    }

    fn digits(mut x: u32, b: u32, d: usize) -> Vec<u32> {
        (0..d)
            .map(|_| {
                let c = x % b;
                x /= b;
                c
            })
            .collect()
    }

    #[test]
    fn gf9_multiplication_matches_polynomial_oracle() {
        let tower = FieldTower::new(9).unwrap();
        assert_eq!(tower.base_poly, vec![2, 1]);
        let f = &tower.sub;
        for a in 0..9 {
            for b in 0..9 {
                let want = polymul_mod(&digits(a, 3, 2), &digits(b, 3, 2), &tower.base_poly, 3);
                assert_eq!(digits(f.mul(a, b), 3, 2), want, "{a}*{b}");
            }
        }
    }

    #[test]
    fn gf27_multiplication_matches_polynomial_oracle() {
        let tower = FieldTower::new(3).unwrap();
        let f = &tower.top;
        for a in 0..27 {
            for b in 0..27 {
                let want = polymul_mod(&digits(a, 3, 3), &digits(b, 3, 3), &tower.cubic_poly, 3);
                assert_eq!(digits(f.mul(a, b), 3, 3), want);
            }
        }
    }

    #[test]
    fn chosen_polynomials_are_the_smallest_primitive_ones() {
        // brute-force oracle: order of x computed by repeated polynomial multiplication
        for q in [3u32, 5, 7] {
            let tower = FieldTower::new(q).unwrap();
            let mut found = None;
            'outer: for n in 0..q.pow(3) {
                let c: Vec<u32> = {
                    let mut v = vec![0; 3];
                    let mut r = n;
                    for i in (0..3).rev() {
                        v[i] = r % q;
                        r /= q;
                    }
                    v
                };
                if c[0] == 0 {
                    continue;
                }
                let x = vec![0, 1, 0];
                let mut cur = x.clone();
                for _ in 1..q.pow(3) - 1 {
                    if cur == vec![1, 0, 0] {
                        continue 'outer;
                    }
                    cur = polymul_mod(&cur, &x, &c, q);
                }
                if cur == vec![1, 0, 0] {
                    found = Some(c);
                    break;
                }
            }
            assert_eq!(Some(tower.cubic_poly.clone()), found, "q={q}");
        }
    }

    #[test]
    fn tau_is_primitive_with_full_order() {
        for q in [3u32, 4, 5, 7, 8, 9] {
            let t = FieldTower::new(q).unwrap();
            let n = t.top.order() - 1;
            let mut x = 1;
            for i in 1..=n {
                x = t.top.mul(x, t.tau());
                assert!(x != 1 || i == n, "q={q}: tau has order {i}");
            }
            assert_eq!(x, 1);
        }
    }

    #[test]
    fn frobenius_matrix_satisfies_defining_relations() {
        for q in [3u32, 4, 5, 7, 8, 9] {
            let t = FieldTower::new(q).unwrap();
            let a = t.frobenius_matrix();
            let f = &t.sub;
            let apply = |v: [u32; 3]| {
                let mut out = [0; 3];
                for j in 0..3 {
                    for i in 0..3 {
                        out[j] = f.add(out[j], f.mul(v[i], a[i][j]));
                    }
                }
                out
            };
            for x in 0..t.top.order() {
                assert_eq!(apply(t.theta(x)), t.theta(t.frobenius(x, 1)));
                assert_eq!(apply(apply(apply(t.theta(x)))), t.theta(x));
            }
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(FieldTower::new(2).unwrap_err(), GeomError::InvalidOrder { q: 2 });
        assert!(FieldTower::new(6).is_err());
        assert!(FieldTower::new(1).is_err());
        assert_eq!(Field::prime(9).unwrap_err(), GeomError::NotPrime { p: 9 });
    }

    #[test]
    fn params_follow_residue() {
        assert_eq!(Params::new(3), Params { q: 3, n: 0, g: 1 });
        assert_eq!(Params::new(4), Params { q: 4, n: 1, g: 3 });
        assert_eq!(Params::new(5), Params { q: 5, n: -1, g: 1 });
    }

    #[test]
    fn typed_elements_check_levels() {
        let t = FieldTower::new(4).unwrap();
        let a = t.element(Level::Sub, 3).unwrap();
        let b = t.element(Level::Top, 3).unwrap();
        assert!(t.add(a, b).is_err());
        assert!(t.element(Level::Sub, 4).is_err());
        assert_eq!(t.coeffs(a), vec![1, 1]);
        assert_eq!(t.coeffs(t.element(Level::Top, 4 + 16 * 2).unwrap()), vec![0, 1, 2]);
        assert_eq!(t.inv(t.element(Level::Prime, 0).unwrap()), Err(GeomError::ZeroInverse));
    }
}
