//! Double-double arithmetic for the affine frames that carry local solver
//! coordinates back to caller coordinates.

use libm::fma;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, fma(a, b, -p))
}

impl Dd {
    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[cfg(test)]
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    pub fn half(self) -> Dd {
        Dd { hi: self.hi * 0.5, lo: self.lo * 0.5 }
    }

    /// Nearest binary64 value.
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Largest binary64 value not above `self`.
    pub fn floor_f64(self) -> f64 {
        let r = self.to_f64();
        if Dd::from_f64(r).sub(self).hi > 0.0 {
            next_down(r)
        } else {
            r
        }
    }

    /// Smallest binary64 value not below `self`.
    pub fn ceil_f64(self) -> f64 {
        let r = self.to_f64();
        if Dd::from_f64(r).sub(self).hi < 0.0 {
            next_up(r)
        } else {
            r
        }
    }
}

pub(crate) fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

pub(crate) fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// One coordinate of an affine map `t -> center + half * t` from local
/// `[-1, 1]` to caller coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Axis {
    pub center: Dd,
    pub half: Dd,
}

impl Axis {
    pub fn from_interval(lo: f64, hi: f64) -> Self {
        let (s, e) = two_sum(hi, lo);
        let (d, f) = two_sum(hi, -lo);
        let (c, ce) = quick_two_sum(s, e);
        let (h, he) = quick_two_sum(d, f);
        Axis { center: Dd { hi: c, lo: ce }.half(), half: Dd { hi: h, lo: he }.half() }
    }

    /// Restrict to the local subinterval `t -> beta + alpha * t`.
    pub fn compose(&self, alpha: f64, beta: f64) -> Axis {
        Axis { center: self.center.add(self.half.mul_f64(beta)), half: self.half.mul_f64(alpha) }
    }

    pub fn map(&self, t: f64) -> Dd {
        self.center.add(self.half.mul_f64(t))
    }

    pub fn unmap(&self, x: f64) -> Dd {
        Dd::from_f64(x).sub(self.center).div(self.half)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_are_exact() {
        let a = Dd::from_f64(1.0 + f64::EPSILON);
        let p = a.mul(a);
        assert_eq!(p.hi, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(p.lo, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn division_roundtrip() {
        let a = Dd::from_f64(1.0);
        let b = Dd::from_f64(3.0);
        let q = a.div(b);
        let back = q.mul(b).sub(a);
        assert!(back.hi.abs() < 1e-31);
    }

    #[test]
    fn directed_rounding_brackets() {
        let third = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
        assert!(third.floor_f64() < third.ceil_f64());
        assert_eq!(Dd::from_f64(0.5).floor_f64(), 0.5);
        assert_eq!(Dd::from_f64(0.5).ceil_f64(), 0.5);
    }

    #[test]
    fn axis_compose_and_unmap() {
        let ax = Axis::from_interval(-10.0, 10.0 / 3.0);
        let sub = ax.compose(0.25, -0.5);
        let x = sub.map(0.3).to_f64();
        let back = sub.unmap(x).to_f64();
        assert!((back - 0.3).abs() < 1e-15);
    }
}
