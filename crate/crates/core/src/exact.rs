//! Exact arithmetic over the field Q(√2, √3).
//!
//! Every coordinate in the tiling embeddings lives in this field, so
//! incidence tests, lattice reduction and winding numbers never touch
//! floating point for a decision. Comparisons go through a fast f64
//! filter and fall back to an exact two-level sign computation.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

type Q = Ratio<i128>;

const SQRT2: f64 = std::f64::consts::SQRT_2;
const SQRT3: f64 = 1.732_050_807_568_877_3;
const SQRT6: f64 = 2.449_489_742_783_178;

/// A number a + b·√2 + c·√3 + d·√6 with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ext {
    a: Q,
    b: Q,
    c: Q,
    d: Q,
}

impl Ext {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        Ext { a, b, c, d }
    }

    pub fn zero() -> Self {
        Ext::from_int(0)
    }

    pub fn one() -> Self {
        Ext::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Ext::new(Q::from_integer(n as i128), Q::zero(), Q::zero(), Q::zero())
    }

    /// (a + b√2 + c√3 + d√6) / den, all entries integers.
    pub fn quad(a: i64, b: i64, c: i64, d: i64, den: i64) -> Self {
        assert!(den != 0);
        let den = den as i128;
        Ext::new(
            Q::new(a as i128, den),
            Q::new(b as i128, den),
            Q::new(c as i128, den),
            Q::new(d as i128, den),
        )
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Ext::quad(n, 0, 0, 0, d)
    }

    pub fn coeffs(&self) -> [Q; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        ratio_f64(self.a) + ratio_f64(self.b) * SQRT2 + ratio_f64(self.c) * SQRT3
            + ratio_f64(self.d) * SQRT6
    }

    /// Exact sign of the value: -1, 0 or 1.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        // f64 filter: if the approximate value is safely away from zero,
        // its sign is the true sign.
        let mag = ratio_f64(self.a).abs()
            + ratio_f64(self.b).abs() * SQRT2
            + ratio_f64(self.c).abs() * SQRT3
            + ratio_f64(self.d).abs() * SQRT6;
        let approx = self.to_f64();
        if approx.abs() > mag * 1e-12 && approx.is_finite() {
            return if approx > 0.0 { 1 } else { -1 };
        }
        self.sign_exact()
    }

    fn sign_exact(&self) -> i32 {
        // Clear denominators: the sign of A + B√2 + C√3 + D√6 over BigInt.
        let lcm = [self.a, self.b, self.c, self.d]
            .iter()
            .fold(1i128, |acc, r| num_integer::lcm(acc, *r.denom()));
        let big = |r: &Q| BigInt::from(r.numer() * (lcm / r.denom()));
        let (a, b, c, d) = (big(&self.a), big(&self.b), big(&self.c), big(&self.d));
        // View as u + v√3 with u = a + b√2, v = c + d√2.
        let su = sign_q2(&a, &b);
        let sv = sign_q2(&c, &d);
        match (su >= 0, sv >= 0, su <= 0, sv <= 0) {
            (true, true, _, _) if su != 0 || sv != 0 => 1,
            (_, _, true, true) if su != 0 || sv != 0 => -1,
            _ if su == 0 && sv == 0 => 0,
            _ => {
                // Mixed signs: compare u² with 3v² inside Q(√2).
                let p1 = &a * &a + 2 * &b * &b;
                let q1 = 2 * &a * &b;
                let p2 = 3 * (&c * &c + 2 * &d * &d);
                let q2 = 6 * &c * &d;
                let st = sign_q2(&(p1 - p2), &(q1 - q2));
                if su > 0 {
                    st
                } else {
                    -st
                }
            }
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Ext {
        assert!(!self.is_zero(), "division by zero in Q(sqrt2, sqrt3)");
        // x = u + v√3 with u, v in Q(√2); 1/x = (u - v√3) / (u² - 3v²).
        let u = (self.a, self.b);
        let v = (self.c, self.d);
        let p = u.0 * u.0 + Q::from_integer(2) * u.1 * u.1
            - Q::from_integer(3) * (v.0 * v.0 + Q::from_integer(2) * v.1 * v.1);
        let q = Q::from_integer(2) * u.0 * u.1 - Q::from_integer(6) * v.0 * v.1;
        // Invert p + q√2 inside Q(√2).
        let n = p * p - Q::from_integer(2) * q * q;
        assert!(!n.is_zero());
        let w0 = p / n;
        let w1 = -q / n;
        // (u - v√3)·(w0 + w1√2)
        let conj = Ext::new(u.0, u.1, -v.0, -v.1);
        conj * Ext::new(w0, w1, Q::zero(), Q::zero())
    }

    /// Largest integer n with n <= self.
    pub fn floor(&self) -> i64 {
        let mut n = self.to_f64().floor() as i64;
        while (self.clone() - Ext::from_int(n)).sign() < 0 {
            n -= 1;
        }
        while (self.clone() - Ext::from_int(n + 1)).sign() >= 0 {
            n += 1;
        }
        n
    }
}

impl Copy for Ext {}

/// Sign of p + q√2 for big integers p, q.
fn sign_q2(p: &BigInt, q: &BigInt) -> i32 {
    let sp = bigint_sign(p);
    let sq = bigint_sign(q);
    if sp >= 0 && sq >= 0 {
        return if sp == 0 && sq == 0 { 0 } else { 1 };
    }
    if sp <= 0 && sq <= 0 {
        return -1;
    }
    let t = p * p - 2 * q * q;
    let st = bigint_sign(&t);
    if sp > 0 {
        st
    } else {
        -st
    }
}

fn bigint_sign(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn ratio_f64(r: Q) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, o: Ext) -> Ext {
        Ext::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Ext {
    type Output = Ext;
    fn sub(self, o: Ext) -> Ext {
        Ext::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Ext {
    type Output = Ext;
    fn mul(self, o: Ext) -> Ext {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (o.a, o.b, o.c, o.d);
        let two = Q::from_integer(2);
        let three = Q::from_integer(3);
        let six = Q::from_integer(6);
        Ext::new(
            a1 * a2 + two * b1 * b2 + three * c1 * c2 + six * d1 * d2,
            a1 * b2 + b1 * a2 + three * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + two * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )
    }
}

impl Div for Ext {
    type Output = Ext;
    fn div(self, o: Ext) -> Ext {
        self * o.inv()
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Ext) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Ext) -> Ordering {
        match (self.clone() - other.clone()).sign() {
            x if x < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.table_repr())
    }
}

impl Ext {
    /// Table serialization: `a_n:a_d b_n:b_d c_n:c_d d_n:d_d`.
    pub fn table_repr(&self) -> String {
        let part = |r: &Q| format!("{}:{}", r.numer(), r.denom());
        format!(
            "{} {} {} {}",
            part(&self.a),
            part(&self.b),
            part(&self.c),
            part(&self.d)
        )
    }

    pub fn from_table_repr(parts: &[&str]) -> Option<Ext> {
        if parts.len() != 4 {
            return None;
        }
        let mut qs = [Q::zero(); 4];
        for (i, p) in parts.iter().enumerate() {
            let (n, d) = p.split_once(':')?;
            qs[i] = Q::new(n.parse().ok()?, d.parse().ok()?);
        }
        Some(Ext::new(qs[0], qs[1], qs[2], qs[3]))
    }
}

/// A point of the plane with exact coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pt {
    pub x: Ext,
    pub y: Ext,
}

impl Pt {
    pub fn new(x: Ext, y: Ext) -> Self {
        Pt { x, y }
    }

    pub fn zero() -> Self {
        Pt::new(Ext::zero(), Ext::zero())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    pub fn scale_int(&self, k: i64) -> Pt {
        let k = Ext::from_int(k);
        Pt::new(self.x * k, self.y * k)
    }

    pub fn cross(&self, o: &Pt) -> Ext {
        self.x * o.y - self.y * o.x
    }

    pub fn dist2(&self, o: &Pt) -> Ext {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        dx * dx + dy * dy
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        Pt::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        Pt::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        Pt::new(-self.x, -self.y)
    }
}

/// Orientation of the triangle (o, a, b): sign of (a-o) × (b-o).
pub fn orient(o: &Pt, a: &Pt, b: &Pt) -> i32 {
    (a.clone() - o.clone()).cross(&(b.clone() - o.clone())).sign()
}

/// Winding number of a closed polygon around `p`; `p` must not lie on it.
pub fn winding_number(polygon: &[Pt], p: &Pt) -> i64 {
    let mut w = 0i64;
    let n = polygon.len();
    for i in 0..n {
        let a = &polygon[i];
        let b = &polygon[(i + 1) % n];
        let ay = (a.y - p.y).sign();
        let by = (b.y - p.y).sign();
        if ay <= 0 && by > 0 {
            if orient(a, b, p) > 0 {
                w += 1;
            }
        } else if by <= 0 && ay > 0 && orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    w
}

/// Angular comparator for direction vectors, counterclockwise from +x.
/// Both vectors must be nonzero.
pub fn angle_cmp(u: &Pt, v: &Pt) -> Ordering {
    let half = |p: &Pt| -> u8 {
        // 0 for angle in [0, pi), 1 for [pi, 2pi)
        match p.y.sign() {
            s if s > 0 => 0,
            s if s < 0 => 1,
            _ => {
                if p.x.sign() > 0 {
                    0
                } else {
                    1
                }
            }
        }
    };
    let (hu, hv) = (half(u), half(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    // Same half-plane: u before v iff u × v > 0.
    match u.cross(v).sign() {
        s if s > 0 => Ordering::Less,
        0 => Ordering::Equal,
        _ => Ordering::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_identities() {
        let r2 = Ext::quad(0, 1, 0, 0, 1);
        let r3 = Ext::quad(0, 0, 1, 0, 1);
        let r6 = Ext::quad(0, 0, 0, 1, 1);
        assert_eq!(r2 * r2, Ext::from_int(2));
        assert_eq!(r3 * r3, Ext::from_int(3));
        assert_eq!(r6 * r6, Ext::from_int(6));
        assert_eq!(r2 * r3, r6);
        assert_eq!(r6 * r2, Ext::from_int(2) * r3);
    }

    #[test]
    fn exact_signs() {
        // √2 + √3 - √6 + 1 - something tiny-looking: 5√6 - 12 ≈ 0.247
        assert_eq!(Ext::quad(-12, 0, 0, 5, 1).sign(), 1);
        // 49 - 20√6 ≈ 0.0102
        assert_eq!(Ext::quad(49, 0, 0, -20, 1).sign(), 1);
        // (49 - 20√6)(49 + 20√6) = 2401 - 2400 = 1 > 0, and 49 < 20√6 squared... check negative case
        assert_eq!(Ext::quad(-49, 0, 0, 20, 1).sign(), -1);
        assert_eq!(Ext::quad(0, 0, 0, 0, 5).sign(), 0);
        // 1 + √2 - √3 - small: sign of 1 + √2 - √3 ≈ 0.68
        assert_eq!(Ext::quad(1, 1, -1, 0, 1).sign(), 1);
        // √2 + √3 vs √6 + 1/2: (√2+√3)² = 5+2√6, (√6+1/2)² = 6.25+√6 → 5+2√6-6.25-√6 = √6-1.25 > 0
        let lhs = Ext::quad(0, 1, 1, 0, 1);
        let rhs = Ext::quad(1, 0, 0, 2, 2);
        assert_eq!((lhs - rhs).sign(), 1);
    }

    #[test]
    fn inverse_and_floor() {
        let x = Ext::quad(1, 2, -1, 1, 3);
        assert_eq!(x * x.inv(), Ext::one());
        assert_eq!(Ext::quad(0, 0, 1, 0, 1).floor(), 1); // √3 ≈ 1.73
        assert_eq!(Ext::quad(0, 0, -1, 0, 1).floor(), -2);
        assert_eq!(Ext::from_int(4).floor(), 4);
        assert_eq!(Ext::frac(-7, 2).floor(), -4);
    }

    #[test]
    fn winding_square() {
        let sq = [
            Pt::new(Ext::from_int(0), Ext::from_int(0)),
            Pt::new(Ext::from_int(2), Ext::from_int(0)),
            Pt::new(Ext::from_int(2), Ext::from_int(2)),
            Pt::new(Ext::from_int(0), Ext::from_int(2)),
        ];
        let inside = Pt::new(Ext::from_int(1), Ext::from_int(1));
        let outside = Pt::new(Ext::from_int(3), Ext::from_int(1));
        assert_eq!(winding_number(&sq, &inside), 1);
        assert_eq!(winding_number(&sq, &outside), 0);
        let rev: Vec<_> = sq.iter().rev().cloned().collect();
        assert_eq!(winding_number(&rev, &inside), -1);
    }

    #[test]
    fn angle_order() {
        let e = |x: i64, y: i64| Pt::new(Ext::from_int(x), Ext::from_int(y));
        let mut dirs = vec![e(0, -1), e(1, 1), e(-1, 0), e(1, 0), e(0, 1), e(-1, -1)];
        dirs.sort_by(angle_cmp);
        assert_eq!(dirs, vec![e(1, 0), e(1, 1), e(0, 1), e(-1, 0), e(-1, -1), e(0, -1)]);
    }
}
