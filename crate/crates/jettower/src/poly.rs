//! Exact polynomials in the hypersurface degree `d`, optionally linear in a
//! twist parameter `delta`, plus exact Lagrange interpolation.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::scalar::{self, Scalar};
use crate::{Error, Result};

/// Finitely supported map `(power of d, power of delta in {0,1}) -> Scalar`
/// with no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreePoly {
    coeffs: BTreeMap<(u32, u8), Scalar>,
}

impl DegreePoly {
    pub fn zero() -> Self {
        DegreePoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_coeff(0, 0, &c);
        p
    }

    pub fn from_coeffs<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u8), Scalar)>,
    {
        let mut p = Self::zero();
        for ((dp, gp), c) in iter {
            p.add_coeff(dp, gp, &c);
        }
        p
    }

    /// Monomial `c * d^dpow * delta^deltapow`.
    pub fn monomial(c: Scalar, dpow: u32, deltapow: u8) -> Self {
        let mut p = Self::zero();
        p.add_coeff(dpow, deltapow, &c);
        p
    }

    pub fn add_coeff(&mut self, dpow: u32, deltapow: u8, c: &Scalar) {
        assert!(deltapow <= 1, "delta powers above 1 are out of scope");
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((dpow, deltapow)).or_insert_with(scalar::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(dpow, deltapow));
        }
    }

    pub fn coefficient(&self, dpow: u32, deltapow: u8) -> Scalar {
        self.coeffs.get(&(dpow, deltapow)).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(u32, u8), &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `d`, `None` for the zero polynomial.
    pub fn degree_d(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(dp, _)| dp).max()
    }

    /// True when no `delta` appears.
    pub fn is_delta_free(&self) -> bool {
        self.coeffs.keys().all(|&(_, gp)| gp == 0)
    }

    /// The polynomial split as `(P, B)` with `self = P + delta * B`.
    pub fn split_delta(&self) -> (DegreePoly, DegreePoly) {
        let mut p = DegreePoly::zero();
        let mut b = DegreePoly::zero();
        for (&(dp, gp), c) in &self.coeffs {
            if gp == 0 {
                p.add_coeff(dp, 0, c);
            } else {
                b.add_coeff(dp, 0, c);
            }
        }
        (p, b)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(dp, gp), c) in &other.coeffs {
            out.add_coeff(dp, gp, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(&k, c)| (k, -c)).collect();
        DegreePoly { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect();
        DegreePoly { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&(d1, g1), c1) in &self.coeffs {
            for (&(d2, g2), c2) in &other.coeffs {
                if g1 + g2 > 1 {
                    return Err(Error::Unsupported(
                        "product would be quadratic in delta".into(),
                    ));
                }
                out.add_coeff(d1 + d2, g1 + g2, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Exact evaluation at `d` (delta must not appear).
    pub fn eval_d(&self, d: &Scalar) -> Scalar {
        assert!(self.is_delta_free(), "eval_d on a delta-dependent polynomial");
        self.eval(d, &scalar::zero())
    }

    /// Exact evaluation at `(d, delta)`.
    pub fn eval(&self, d: &Scalar, delta: &Scalar) -> Scalar {
        let mut acc = scalar::zero();
        for (&(dp, gp), c) in &self.coeffs {
            let mut term = c.clone();
            for _ in 0..dp {
                term *= d;
            }
            if gp == 1 {
                term *= delta;
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for DegreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut items: Vec<_> = self.coeffs.iter().collect();
        items.sort_by_key(|(&(dp, gp), _)| (std::cmp::Reverse(dp), gp));
        let mut first = true;
        for (&(dp, gp), c) in items {
            let (sign, mag) = if c < &scalar::zero() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut var = String::new();
            if dp == 1 {
                var.push('d');
            } else if dp > 1 {
                var.push_str(&format!("d^{dp}"));
            }
            if gp == 1 {
                if !var.is_empty() {
                    var.push('*');
                }
                var.push_str("delta");
            }
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == scalar::one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

/// Exact Lagrange interpolation through `points`, using the first
/// `degree_bound + 1` points; every surplus point must lie on the interpolant
/// or the call errors (this is how a wrong degree bound is detected).
pub fn interpolate(points: &[(Scalar, Scalar)], degree_bound: usize) -> Result<DegreePoly> {
    let need = degree_bound + 1;
    if points.len() < need {
        return Err(Error::InvalidInput(format!(
            "interpolation needs {need} points, got {}",
            points.len()
        )));
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].0 == points[j].0 {
                return Err(Error::InvalidInput("duplicate abscissa".into()));
            }
        }
    }
    let base = &points[..need];
    let mut acc = DegreePoly::zero();
    for (i, (xi, yi)) in base.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        // numerator polynomial prod_{j != i} (x - x_j), denominator scalar
        let mut num = DegreePoly::constant(scalar::one());
        let mut den = scalar::one();
        for (j, (xj, _)) in base.iter().enumerate() {
            if i == j {
                continue;
            }
            let lin = DegreePoly::from_coeffs([((1, 0), scalar::one()), ((0, 0), -xj)]);
            num = num.mul(&lin)?;
            den *= xi - xj;
        }
        acc = acc.add(&num.scale(&(yi / den)));
    }
    for (x, y) in &points[need..] {
        if &acc.eval_d(x) != y {
            return Err(Error::InconsistentInterpolation(format!(
                "surplus point ({x}, {y}) is off the degree-{degree_bound} interpolant"
            )));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn square_from_three_points() {
        let pts = vec![(int(0), int(0)), (int(1), int(1)), (int(2), int(4))];
        let p = interpolate(&pts, 2).unwrap();
        assert_eq!(p, DegreePoly::monomial(scalar::one(), 2, 0));
    }

    #[test]
    fn constant_from_two_points() {
        let pts = vec![(int(0), int(5)), (int(1), int(5))];
        let p = interpolate(&pts, 0).unwrap();
        assert_eq!(p, DegreePoly::constant(int(5)));
    }

    #[test]
    fn surplus_inconsistency_detected() {
        let pts = vec![(int(0), int(0)), (int(1), int(1)), (int(2), int(5))];
        assert!(matches!(
            interpolate(&pts, 1),
            Err(Error::InconsistentInterpolation(_))
        ));
    }

    #[test]
    fn eval_with_delta() {
        // 2d + 3*d*delta
        let p = DegreePoly::from_coeffs([((1, 0), int(2)), ((1, 1), int(3))]);
        assert_eq!(p.eval(&int(5), &int(2)), int(40));
        let (pure, lin) = p.split_delta();
        assert_eq!(pure, DegreePoly::monomial(int(2), 1, 0));
        assert_eq!(lin, DegreePoly::monomial(int(3), 1, 0));
    }
}
