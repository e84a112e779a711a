//! Weighted tautological line bundles on the tower, the nef recursions, the
//! algebraic-Morse-inequality quantity on the effective locus, degree
//! polynomial extraction, and the effective thresholds in the hypersurface
//! degree.

use crate::charclass::HypersurfaceData;
use crate::poly::DegreePoly;
use crate::ring::GradedClass;
use crate::scalar::{self, int, Scalar};
use crate::tower::Tower;
use crate::{Error, Result};

/// Weights of a line bundle `O(a_1, .., a_k) tensor O_X(h_twist) tensor
/// K_X^{delta_twist * delta}`: `u_weights[j-1]` multiplies `u_j`, the
/// `h_twist` multiplies the hyperplane class, and the `delta_twist` is the
/// rational multiple of `c_1(K_X) = -c_1` carried by the formal parameter
/// `delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTuple {
    pub u_weights: Vec<i64>,
    pub h_twist: i64,
    pub delta_twist: Scalar,
}

impl WeightTuple {
    pub fn new(u_weights: Vec<i64>, h_twist: i64) -> Self {
        WeightTuple { u_weights, h_twist, delta_twist: scalar::zero() }
    }

    pub fn with_delta(mut self, delta_twist: Scalar) -> Self {
        self.delta_twist = delta_twist;
        self
    }

    /// Partial sums `b_j = a_1 + ... + a_j`.
    pub fn to_b(&self) -> Vec<i64> {
        let mut acc = 0;
        self.u_weights
            .iter()
            .map(|a| {
                acc += a;
                acc
            })
            .collect()
    }

    /// True when every partial sum is nonnegative, i.e. the weighted bundle
    /// maps into a plain power of the top tautological bundle.
    pub fn is_effective(&self) -> bool {
        self.to_b().iter().all(|&b| b >= 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.u_weights.len() != other.u_weights.len() {
            return Err(Error::ContextMismatch("weight tuple lengths differ".into()));
        }
        Ok(WeightTuple {
            u_weights: self
                .u_weights
                .iter()
                .zip(&other.u_weights)
                .map(|(a, b)| a + b)
                .collect(),
            h_twist: self.h_twist + other.h_twist,
            delta_twist: &self.delta_twist + &other.delta_twist,
        })
    }

    /// The class on the two-level tower, split as `(delta-free part,
    /// coefficient of delta)`. Uses `u_1 = -a_1`, `u_2 = -d_1` and
    /// `c_1(K_X) = -c_1`.
    pub fn realize(&self, tower: &Tower, ordering: UOrdering) -> Result<(GradedClass, GradedClass)> {
        if self.u_weights.len() != 2 {
            return Err(Error::Unsupported("realization needs a two-level tuple".into()));
        }
        let (w1, w2) = match ordering {
            UOrdering::AsWritten => (self.u_weights[0], self.u_weights[1]),
            UOrdering::Swapped => (self.u_weights[1], self.u_weights[0]),
        };
        let h = GradedClass::generator(&tower.table, "h")?;
        let base = tower
            .u1()
            .scale(&int(w1))
            .add(&tower.u2().scale(&int(w2)))?
            .add(&h.scale(&int(self.h_twist)))?;
        let delta_part = tower.base.tangent.c(1).neg().scale(&self.delta_twist);
        Ok((base, delta_part))
    }
}

/// The two readings of a weight tuple against the tower levels: `(5, 1)` read
/// as `5u_1 + u_2` (as written) or as `u_1 + 5u_2` (swapped).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UOrdering {
    AsWritten,
    Swapped,
}

impl std::fmt::Display for UOrdering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UOrdering::AsWritten => write!(f, "weight a_j on u_j (as written)"),
            UOrdering::Swapped => write!(f, "weights reversed across levels"),
        }
    }
}

/// Which nef recursion to unroll.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NefVariant {
    /// `A_0 = O_X(2p)`, absolutely nef chain.
    A,
    /// `B_0 = O_X`, relatively nef chain.
    B,
}

/// Unroll the nef recursion
/// `L_k = O_{X_k}(p^2+1) tensor pullback(L_{k-1}^{p^2+2})` into the weight
/// tuple of `O_{X_k}(1) tensor pullback(L_{k-1})`, together with the twist
/// bound `2p(p^2+2)^{k-1}` that makes the B-variant nef.
pub fn nef_recursion(p: u32, k: u32, variant: NefVariant) -> Result<(WeightTuple, i64)> {
    if p == 0 || k == 0 {
        return Err(Error::InvalidInput("nef recursion needs p, k >= 1".into()));
    }
    let p2 = (p * p) as i64;
    // weights of L_{k-1} unrolled into the level weights of the result
    let mut u_weights = vec![0i64; k as usize];
    u_weights[(k - 1) as usize] = 1; // the O_{X_k}(1) factor
    let mut carry = 1i64; // multiplier accumulated from the tensor powers
    for j in (1..k).rev() {
        u_weights[(j - 1) as usize] = carry * (p2 + 1);
        carry *= p2 + 2;
    }
    let ell = 2 * p as i64 * (p2 + 2).pow(k - 1);
    let h_twist = match variant {
        NefVariant::A => 2 * p as i64 * carry,
        NefVariant::B => 0,
    };
    Ok((WeightTuple::new(u_weights, h_twist), ell))
}

/// Outcome of the Morse-quantity computation `F^8.Z - 8 F^7.G.Z` on the
/// effective locus of the two-level tower.
#[derive(Debug, Clone)]
pub struct MorseReport {
    pub f: WeightTuple,
    pub g: WeightTuple,
    pub ordering_used: UOrdering,
    /// Symbolic degree-3 base form of the delta-free part, in h, c1, c2, c3.
    pub chern_form: GradedClass,
    /// Symbolic degree-3 base form of the delta coefficient.
    pub chern_form_delta: GradedClass,
    /// The exact polynomial in `d` (and possibly `delta`).
    pub degree_poly: DegreePoly,
    /// Least degree past which the delta-free polynomial stays positive.
    pub threshold: Option<u32>,
}

/// Compute the Morse quantity on the symbolic tower: the intersection number
/// `(F^8 - 8 F^7 G) . Z_2` pushed to the base, as a degree-3 class in the
/// base generators, together with its polynomial in `d` after substituting
/// the hypersurface Chern formulas and the point rule.
pub fn morse_quantity(
    tower: &Tower,
    f: &WeightTuple,
    g: &WeightTuple,
    ordering: UOrdering,
) -> Result<MorseReport> {
    if tower.base.degree.is_some() {
        return Err(Error::Unsupported("morse_quantity runs on the symbolic tower".into()));
    }
    let (f_class, f_delta) = f.realize(tower, ordering)?;
    if !f_delta.is_zero() {
        return Err(Error::Unsupported("delta twists on F are out of scope".into()));
    }
    let (g_class, g_delta) = g.realize(tower, ordering)?;
    let z = tower.z2_class()?.z;

    let f7 = f_class.pow(7)?;
    let f8 = f7.mul(&f_class)?;
    let q0 = f8.sub(&f7.mul(&g_class)?.scale(&int(8)))?.mul(&z)?;
    let q1 = f7.mul(&g_delta)?.scale(&int(-8)).mul(&z)?;

    let chern_form = tower.push_to_base(&q0)?.component(3);
    let chern_form_delta = tower.push_to_base(&q1)?.component(3);

    let mut degree_poly = HypersurfaceData::symbolic_integral_poly(&chern_form)?;
    if !chern_form_delta.is_zero() {
        let delta_poly = HypersurfaceData::symbolic_integral_poly(&chern_form_delta)?;
        for (&(dp, gp), c) in delta_poly.coeffs() {
            if gp != 0 {
                return Err(Error::Unsupported("nested delta".into()));
            }
            degree_poly.add_coeff(dp, 1, c);
        }
    }

    let threshold = if degree_poly.is_delta_free() {
        threshold_search(&degree_poly).ok()
    } else {
        None
    };

    Ok(MorseReport {
        f: f.clone(),
        g: g.clone(),
        ordering_used: ordering,
        chern_form,
        chern_form_delta,
        degree_poly,
        threshold,
    })
}

/// Evaluate the Morse quantity on a numeric tower at integer degree `d`
/// (delta-free tuples), for cross-route checks against the symbolic form.
pub fn morse_quantity_numeric(
    d: i64,
    f: &WeightTuple,
    g: &WeightTuple,
    ordering: UOrdering,
) -> Result<Scalar> {
    let tower = Tower::numeric(d)?;
    let (f_class, _) = f.realize(&tower, ordering)?;
    let (g_class, g_delta) = g.realize(&tower, ordering)?;
    if !g_delta.is_zero() {
        return Err(Error::Unsupported("numeric route is delta-free".into()));
    }
    let z = tower.z2_class()?.z;
    let f7 = f_class.pow(7)?;
    let q = f7
        .mul(&f_class)?
        .sub(&f7.mul(&g_class)?.scale(&int(8)))?
        .mul(&z)?;
    tower.integrate_total_numeric(&q)
}

/// How far past a candidate threshold positivity is re-checked.
const THRESHOLD_WINDOW: i64 = 50;

/// Least integer `d >= 1` with `poly(d) > 0` that stays positive across the
/// following window. Errors when the polynomial is not eventually positive.
pub fn threshold_search(poly: &DegreePoly) -> Result<u32> {
    if !poly.is_delta_free() {
        return Err(Error::Unsupported("threshold search needs a delta-free polynomial".into()));
    }
    let lead = poly
        .degree_d()
        .map(|deg| poly.coefficient(deg, 0))
        .unwrap_or_else(scalar::zero);
    if !scalar::is_positive(&lead) {
        return Err(Error::Infeasible("polynomial is not eventually positive".into()));
    }
    let positive_at = |d: i64| scalar::is_positive(&poly.eval_d(&int(d)));
    let mut d: i64 = 1;
    loop {
        if positive_at(d) && (d..=d + THRESHOLD_WINDOW).all(positive_at) {
            return Ok(d as u32);
        }
        d += 1;
        if d > 1_000_000 {
            return Err(Error::Infeasible("no stable positive range found below 10^6".into()));
        }
    }
}

/// Feasibility at degree `d`: is there a `delta` with `delta (d-5) > 84`
/// (the vanishing-order condition `7 * 12m < delta m (d-5)`) and
/// `alpha(d, delta) > 0`? Since `alpha` is linear in `delta`, the sign of the
/// `delta`-coefficient `B(d)` decides: for `B(d) < 0` the supremum over
/// admissible `delta` is approached at `delta = 84/(d-5)`, so strict
/// positivity there is the criterion.
pub fn alpha_feasible_at(alpha: &DegreePoly, d: i64) -> Result<bool> {
    if d <= 5 {
        return Ok(false);
    }
    let (p, b) = alpha.split_delta();
    let bd = b.eval_d(&int(d));
    if scalar::is_positive(&bd) {
        return Ok(true);
    }
    if bd == scalar::zero() {
        return Ok(scalar::is_positive(&p.eval_d(&int(d))));
    }
    let boundary = scalar::frac(84, d - 5);
    Ok(scalar::is_positive(&alpha.eval(&int(d), &boundary)))
}

/// Least degree `d` from which on the feasibility of [`alpha_feasible_at`]
/// holds stably across the search window.
pub fn effective_bound(alpha: &DegreePoly) -> Result<u32> {
    if alpha.split_delta().1.is_zero() {
        return Err(Error::Infeasible("alpha carries no delta term".into()));
    }
    let mut d: i64 = 6;
    loop {
        let window_ok = {
            let mut ok = true;
            for dd in d..=d + THRESHOLD_WINDOW {
                if !alpha_feasible_at(alpha, dd)? {
                    ok = false;
                    break;
                }
            }
            ok
        };
        if window_ok {
            return Ok(d as u32);
        }
        d += 1;
        if d > 1_000_000 {
            return Err(Error::Infeasible("no stable feasible range below 10^6".into()));
        }
    }
}
