//! Chern-class / Chern-character / Todd-class calculus via Newton identities,
//! and the Chern data of a degree-d hypersurface in P^4.

use std::sync::Arc;

use crate::poly::DegreePoly;
use crate::ring::{GeneratorTable, GradedClass};
use crate::scalar::{self, int, Scalar};
use crate::{Error, Result};

/// A vector bundle presented by its rank and Chern classes `c_1..c_N`
/// (`chern[i]` is `c_{i+1}`, homogeneous of degree `i+1`).
#[derive(Debug, Clone, PartialEq)]
pub struct BundleData {
    pub rank: u32,
    pub chern: Vec<GradedClass>,
}

impl BundleData {
    pub fn new(rank: u32, chern: Vec<GradedClass>) -> Result<Self> {
        for (i, c) in chern.iter().enumerate() {
            if !c.is_zero() && c.homogeneous_degree() != Some(i as u32 + 1) {
                return Err(Error::DegreeMismatch(format!(
                    "c_{} is not homogeneous of degree {}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(BundleData { rank, chern })
    }

    /// Trivial bundle of the given rank.
    pub fn trivial(table: &Arc<GeneratorTable>, rank: u32, top: usize) -> Self {
        BundleData { rank, chern: vec![GradedClass::zero(table); top] }
    }

    pub fn c(&self, i: usize) -> &GradedClass {
        &self.chern[i - 1]
    }

    /// Total Chern class `1 + c_1 + ... + c_N`.
    pub fn total_chern(&self, table: &Arc<GeneratorTable>) -> Result<GradedClass> {
        let mut acc = GradedClass::one(table);
        for c in &self.chern {
            acc = acc.add(c)?;
        }
        Ok(acc)
    }

    /// Dual bundle: `c_i(E*) = (-1)^i c_i(E)`.
    pub fn dual(&self) -> Self {
        let chern = self
            .chern
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.neg() } else { c.clone() })
            .collect();
        BundleData { rank: self.rank, chern }
    }
}

/// Chern character truncated at degree `N`: `components[i]` is `ch_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernCharacter {
    pub components: Vec<GradedClass>,
}

impl ChernCharacter {
    pub fn ch(&self, i: usize) -> &GradedClass {
        &self.components[i]
    }

    pub fn top(&self) -> usize {
        self.components.len() - 1
    }

    /// Rank as a scalar (the degree-0 component).
    pub fn rank(&self) -> Scalar {
        let table = self.components[0].table();
        self.components[0].coefficient(&vec![0u8; table.len()])
    }
}

/// Newton-identity conversion Chern classes -> Chern character, truncated at
/// `top` (`ch_0 = rank`, `ch_1 = c_1`, `ch_2 = (c_1^2 - 2c_2)/2`, ...).
pub fn chern_to_ch(e: &BundleData, table: &Arc<GeneratorTable>, top: usize) -> Result<ChernCharacter> {
    let zero = GradedClass::zero(table);
    let c = |i: usize| -> GradedClass {
        if i == 0 {
            GradedClass::one(table)
        } else if i <= e.chern.len() {
            e.chern[i - 1].clone()
        } else {
            zero.clone()
        }
    };
    // Power sums via Newton: p_k = sum_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k.
    let mut p: Vec<GradedClass> = vec![GradedClass::zero(table)]; // p_0 unused
    for k in 1..=top {
        let mut acc = GradedClass::zero(table);
        for i in 1..k {
            let term = c(i).mul(&p[k - i])?;
            acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        let last = c(k).scale(&int(k as i64));
        acc = if k % 2 == 1 { acc.add(&last)? } else { acc.sub(&last)? };
        p.push(acc);
    }
    let mut components = vec![GradedClass::scalar(table, int(e.rank as i64))];
    let mut factorial = scalar::one();
    for k in 1..=top {
        factorial *= int(k as i64);
        components.push(p[k].scale(&(scalar::one() / &factorial)));
    }
    Ok(ChernCharacter { components })
}

/// Inverse conversion Chern character -> Chern classes (up to truncation).
/// Errors when `ch_0` is not a nonnegative integer multiple of the unit.
pub fn ch_to_chern(ch: &ChernCharacter, table: &Arc<GeneratorTable>) -> Result<BundleData> {
    let rank_scalar = ch.rank();
    let rank_check = ch.components[0].sub(&GradedClass::scalar(table, rank_scalar.clone()))?;
    if !rank_check.is_zero() {
        return Err(Error::InvalidInput("ch_0 must be a scalar multiple of the unit".into()));
    }
    let rank_int = scalar::as_integer(&rank_scalar)
        .ok_or_else(|| Error::InvalidInput("ch_0 is not an integer".into()))?;
    if rank_int < 0.into() {
        return Err(Error::InvalidInput("negative rank".into()));
    }
    let top = ch.top();
    // Recover power sums p_k = k! ch_k, then solve Newton for c_k.
    let mut p = vec![GradedClass::zero(table)];
    let mut factorial = scalar::one();
    for k in 1..=top {
        factorial *= int(k as i64);
        p.push(ch.components[k].scale(&factorial));
    }
    let mut c: Vec<GradedClass> = vec![GradedClass::one(table)];
    for k in 1..=top {
        // (-1)^{k-1} k c_k = p_k - sum_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i}
        let mut acc = p[k].clone();
        for i in 1..k {
            let term = c[i].mul(&p[k - i])?;
            acc = if i % 2 == 1 { acc.sub(&term)? } else { acc.add(&term)? };
        }
        let sign = if k % 2 == 1 { scalar::one() } else { -scalar::one() };
        c.push(acc.scale(&(sign / int(k as i64))));
    }
    BundleData::new(
        u32::try_from(rank_int).map_err(|_| Error::InvalidInput("rank overflow".into()))?,
        c[1..].to_vec(),
    )
}

/// Componentwise sum of characters (direct sum of bundles).
pub fn ch_sum(x: &ChernCharacter, y: &ChernCharacter) -> Result<ChernCharacter> {
    if x.top() != y.top() {
        return Err(Error::ContextMismatch("character truncations differ".into()));
    }
    let components = x
        .components
        .iter()
        .zip(&y.components)
        .map(|(a, b)| a.add(b))
        .collect::<Result<_>>()?;
    Ok(ChernCharacter { components })
}

pub fn ch_sub(x: &ChernCharacter, y: &ChernCharacter) -> Result<ChernCharacter> {
    if x.top() != y.top() {
        return Err(Error::ContextMismatch("character truncations differ".into()));
    }
    let components = x
        .components
        .iter()
        .zip(&y.components)
        .map(|(a, b)| a.sub(b))
        .collect::<Result<_>>()?;
    Ok(ChernCharacter { components })
}

/// Graded product of characters (tensor product of bundles).
pub fn ch_tensor(x: &ChernCharacter, y: &ChernCharacter) -> Result<ChernCharacter> {
    if x.top() != y.top() {
        return Err(Error::ContextMismatch("character truncations differ".into()));
    }
    let top = x.top();
    let table = x.components[0].table().clone();
    let mut components = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut acc = GradedClass::zero(&table);
        for i in 0..=k {
            acc = acc.add(&x.components[i].mul(&y.components[k - i])?)?;
        }
        components.push(acc);
    }
    Ok(ChernCharacter { components })
}

/// Dual character: flips the sign of the odd components.
pub fn ch_dual(x: &ChernCharacter) -> ChernCharacter {
    let components = x
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { c.neg() } else { c.clone() })
        .collect();
    ChernCharacter { components }
}

/// Todd class truncated at degree 3 (every integral in scope lands on a
/// threefold): `1 + c_1/2 + (c_1^2 + c_2)/12 + c_1 c_2/24`.
pub fn todd(e: &BundleData, table: &Arc<GeneratorTable>) -> Result<GradedClass> {
    let zero = GradedClass::zero(table);
    let c1 = e.chern.first().unwrap_or(&zero);
    let c2 = e.chern.get(1).unwrap_or(&zero);
    let mut acc = GradedClass::one(table);
    acc = acc.add(&c1.scale(&scalar::frac(1, 2)))?;
    let deg2 = c1.pow(2)?.add(c2)?.scale(&scalar::frac(1, 12));
    acc = acc.add(&deg2)?;
    let deg3 = c1.mul(c2)?.scale(&scalar::frac(1, 24));
    acc = acc.add(&deg3)?;
    Ok(acc)
}

/// Chern data of a degree-d hypersurface threefold in P^4, in either the
/// symbolic ring (independent generators h, c1, c2, c3) or the numeric ring
/// Q[h]/(h^4) with
/// `c1 = -(d-5)h`, `c2 = (d^2-5d+10)h^2`, `c3 = -(d^3-5d^2+10d-10)h^3` and
/// the point rule `h^3 = d`.
#[derive(Debug, Clone)]
pub struct HypersurfaceData {
    /// `None` in symbolic mode.
    pub degree: Option<Scalar>,
    pub table: Arc<GeneratorTable>,
    pub tangent: BundleData,
    pub hyperplane: GradedClass,
}

/// Generators of the symbolic base ring, level-0 part of a tower table.
pub const SYMBOLIC_BASE_GENS: [(&str, u32, u8); 4] =
    [("h", 1, 0), ("c1", 1, 0), ("c2", 2, 0), ("c3", 3, 0)];

impl HypersurfaceData {
    /// Symbolic mode over the given table (which must contain h, c1, c2, c3).
    pub fn symbolic(table: &Arc<GeneratorTable>) -> Result<Self> {
        let tangent = BundleData::new(
            3,
            vec![
                GradedClass::generator(table, "c1")?,
                GradedClass::generator(table, "c2")?,
                GradedClass::generator(table, "c3")?,
            ],
        )?;
        Ok(HypersurfaceData {
            degree: None,
            table: table.clone(),
            tangent,
            hyperplane: GradedClass::generator(table, "h")?,
        })
    }

    /// Numeric mode over a table containing h (degree 1, level 0).
    pub fn numeric(table: &Arc<GeneratorTable>, d: Scalar) -> Result<Self> {
        if d < scalar::one() {
            return Err(Error::InvalidInput("hypersurface degree must be >= 1".into()));
        }
        let h = GradedClass::generator(table, "h")?;
        let c1 = h.scale(&-(&d - int(5)));
        let c2 = h.pow(2)?.scale(&(&d * &d - int(5) * &d + int(10)));
        let c3 = h
            .pow(3)?
            .scale(&-(&d * &d * &d - int(5) * &d * &d + int(10) * &d - int(10)));
        Ok(HypersurfaceData {
            degree: Some(d),
            table: table.clone(),
            tangent: BundleData::new(3, vec![c1, c2, c3])?,
            hyperplane: h,
        })
    }

    /// Integrate a degree-3 class on the hypersurface: in numeric mode the
    /// coefficient of `h^3` times `d`; in symbolic mode this is not a scalar,
    /// use [`HypersurfaceData::substitute_numeric`] first.
    pub fn integrate(&self, x: &GradedClass) -> Result<Scalar> {
        let d = self
            .degree
            .clone()
            .ok_or_else(|| Error::Unsupported("integration needs numeric mode".into()))?;
        let mut m = vec![0u8; self.table.len()];
        let h_idx = self.table.index_of("h").expect("h generator");
        m[h_idx] = 3;
        for (mono, _) in x.terms() {
            if mono != &m {
                return Err(Error::DegreeMismatch(format!(
                    "integrand contains a non-h^3 monomial in numeric mode: {x}"
                )));
            }
        }
        Ok(x.coefficient(&m) * d)
    }

    /// Map a class of the symbolic base ring into the numeric ring of `target`
    /// by substituting the hypersurface Chern formulas.
    pub fn substitute_numeric(
        sym_class: &GradedClass,
        target: &HypersurfaceData,
    ) -> Result<GradedClass> {
        let src = sym_class.table().clone();
        let mut images = Vec::with_capacity(src.len());
        for name in src.names() {
            let img = match name.as_str() {
                "h" => target.hyperplane.clone(),
                "c1" => target.tangent.c(1).clone(),
                "c2" => target.tangent.c(2).clone(),
                "c3" => target.tangent.c(3).clone(),
                other => GradedClass::generator(&target.table, other)?,
            };
            images.push(img);
        }
        sym_class.substitute(&target.table, &images)
    }

    /// The d-polynomial obtained from a symbolic degree-3 base class by
    /// substituting the Chern formulas with `d` left as a variable, then
    /// applying the point rule `h^3 = d`. The class must be supported on the
    /// degree-3 monomials of {h, c1, c2, c3}.
    pub fn symbolic_integral_poly(sym_class: &GradedClass) -> Result<DegreePoly> {
        let table = sym_class.table().clone();
        let idx = |n: &str| {
            table
                .index_of(n)
                .ok_or_else(|| Error::InvalidInput(format!("missing generator {n}")))
        };
        let (h, c1, c2, c3) = (idx("h")?, idx("c1")?, idx("c2")?, idx("c3")?);
        // d-polynomials of h, c1/h, c2/h^2, c3/h^3 and of the point rule.
        let one = DegreePoly::constant(scalar::one());
        let d = DegreePoly::monomial(scalar::one(), 1, 0);
        let c1_of_d = d.sub(&DegreePoly::constant(int(5))).neg(); // -(d-5)
        let c2_of_d = d.mul(&d)?.sub(&d.scale(&int(5))).add(&DegreePoly::constant(int(10)));
        let c3_of_d = d
            .mul(&d)?
            .mul(&d)?
            .sub(&d.mul(&d)?.scale(&int(5)))
            .add(&d.scale(&int(10)))
            .sub(&DegreePoly::constant(int(10)))
            .neg();
        let mut acc = DegreePoly::zero();
        for (m, coeff) in sym_class.terms() {
            let deg: u32 = m[h] as u32 + m[c1] as u32 + 2 * m[c2] as u32 + 3 * m[c3] as u32;
            if deg != 3 {
                return Err(Error::DegreeMismatch(format!(
                    "symbolic integral expects a degree-3 base class, found degree {deg}"
                )));
            }
            if m.iter().enumerate().any(|(i, &e)| e > 0 && ![h, c1, c2, c3].contains(&i)) {
                return Err(Error::InvalidInput(
                    "symbolic integral expects a pure base class".into(),
                ));
            }
            let mut term = one.scale(coeff);
            for _ in 0..m[c1] {
                term = term.mul(&c1_of_d)?;
            }
            for _ in 0..m[c2] {
                term = term.mul(&c2_of_d)?;
            }
            for _ in 0..m[c3] {
                term = term.mul(&c3_of_d)?;
            }
            // every monomial now carries h^3 in total: point rule h^3 = d
            term = term.mul(&d)?;
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn sym_table() -> Arc<GeneratorTable> {
        GeneratorTable::new(&[("h", 1), ("c1", 1), ("c2", 2), ("c3", 3)], 9).unwrap()
    }

    fn num_table() -> Arc<GeneratorTable> {
        GeneratorTable::new(&[("h", 1)], 3).unwrap()
    }

    #[test]
    fn line_bundle_character_is_exponential() {
        // rank 1, c1 = L: ch = 1 + L + L^2/2 + L^3/6
        let t = GeneratorTable::new(&[("L", 1)], 3).unwrap();
        let l = GradedClass::generator(&t, "L").unwrap();
        let e = BundleData::new(1, vec![l.clone()]).unwrap();
        let ch = chern_to_ch(&e, &t, 3).unwrap();
        assert_eq!(ch.components[0], GradedClass::one(&t));
        assert_eq!(ch.components[1], l);
        assert_eq!(ch.components[2], l.pow(2).unwrap().scale(&frac(1, 2)));
        assert_eq!(ch.components[3], l.pow(3).unwrap().scale(&frac(1, 6)));
    }

    #[test]
    fn rank3_tangent_character() {
        // ch = 3 + c1 + (c1^2 - 2c2)/2 + (c1^3 - 3c1c2 + 3c3)/6
        let t = sym_table();
        let c1 = GradedClass::generator(&t, "c1").unwrap();
        let c2 = GradedClass::generator(&t, "c2").unwrap();
        let c3 = GradedClass::generator(&t, "c3").unwrap();
        let e = BundleData::new(3, vec![c1.clone(), c2.clone(), c3.clone()]).unwrap();
        let ch = chern_to_ch(&e, &t, 3).unwrap();
        assert_eq!(ch.components[0], GradedClass::scalar(&t, int(3)));
        assert_eq!(ch.components[1], c1);
        let ch2 = c1.pow(2).unwrap().sub(&c2.scale(&int(2))).unwrap().scale(&frac(1, 2));
        assert_eq!(ch.components[2], ch2);
        let ch3 = c1
            .pow(3)
            .unwrap()
            .sub(&c1.mul(&c2).unwrap().scale(&int(3)))
            .unwrap()
            .add(&c3.scale(&int(3)))
            .unwrap()
            .scale(&frac(1, 6));
        assert_eq!(ch.components[3], ch3);
    }

    #[test]
    fn rank2_subbundle_character_low_degrees() {
        // rank 2 with classes a1, a2: degree <= 2 part is 2 + a1 + a1^2/2 - a2
        let t = GeneratorTable::new(&[("a1", 1), ("a2", 2)], 4).unwrap();
        let a1 = GradedClass::generator(&t, "a1").unwrap();
        let a2 = GradedClass::generator(&t, "a2").unwrap();
        let e = BundleData::new(2, vec![a1.clone(), a2.clone()]).unwrap();
        let ch = chern_to_ch(&e, &t, 3).unwrap();
        assert_eq!(ch.components[1], a1);
        let ch2 = a1.pow(2).unwrap().scale(&frac(1, 2)).sub(&a2).unwrap();
        assert_eq!(ch.components[2], ch2);
        // ch3 = (a1^3 - 3 a1 a2)/6
        let ch3 = a1
            .pow(3)
            .unwrap()
            .sub(&a1.mul(&a2).unwrap().scale(&int(3)))
            .unwrap()
            .scale(&frac(1, 6));
        assert_eq!(ch.components[3], ch3);
    }

    #[test]
    fn roundtrip_chern_ch() {
        let t = sym_table();
        let c1 = GradedClass::generator(&t, "c1").unwrap();
        let c2 = GradedClass::generator(&t, "c2").unwrap();
        let c3 = GradedClass::generator(&t, "c3").unwrap();
        let h = GradedClass::generator(&t, "h").unwrap();
        let e = BundleData::new(
            4,
            vec![
                c1.scale(&int(2)).add(&h.scale(&int(3))).unwrap(),
                c2.scale(&int(-1)).add(&c1.pow(2).unwrap()).unwrap(),
                c3.add(&c1.mul(&c2).unwrap()).unwrap(),
            ],
        )
        .unwrap();
        let ch = chern_to_ch(&e, &t, 3).unwrap();
        let back = ch_to_chern(&ch, &t).unwrap();
        assert_eq!(back.rank, 4);
        for i in 0..3 {
            assert_eq!(back.chern[i], e.chern[i]);
        }
    }

    #[test]
    fn trivial_character_gives_trivial_bundle() {
        let t = sym_table();
        let ch = ChernCharacter {
            components: vec![
                GradedClass::one(&t),
                GradedClass::zero(&t),
                GradedClass::zero(&t),
                GradedClass::zero(&t),
            ],
        };
        let e = ch_to_chern(&ch, &t).unwrap();
        assert_eq!(e.rank, 1);
        assert!(e.chern.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn endomorphism_bundle_first_components() {
        let t = GeneratorTable::new(&[("a1", 1), ("a2", 2)], 4).unwrap();
        let a1 = GradedClass::generator(&t, "a1").unwrap();
        let a2 = GradedClass::generator(&t, "a2").unwrap();
        let s = BundleData::new(2, vec![a1, a2]).unwrap();
        let ch_s = chern_to_ch(&s, &t, 3).unwrap();
        let ch_end = ch_tensor(&ch_s, &ch_dual(&ch_s)).unwrap();
        assert_eq!(ch_end.components[0], GradedClass::scalar(&t, int(4)));
        assert!(ch_end.components[1].is_zero());
    }

    #[test]
    fn dual_is_an_involution() {
        let t = sym_table();
        let e = BundleData::new(
            3,
            vec![
                GradedClass::generator(&t, "c1").unwrap(),
                GradedClass::generator(&t, "c2").unwrap(),
                GradedClass::generator(&t, "c3").unwrap(),
            ],
        )
        .unwrap();
        let ch = chern_to_ch(&e, &t, 3).unwrap();
        let dd = ch_dual(&ch_dual(&ch));
        assert_eq!(dd, ch);
        for i in 0..=3 {
            let expect = if i % 2 == 1 { ch.components[i].neg() } else { ch.components[i].clone() };
            assert_eq!(ch_dual(&ch).components[i], expect);
        }
    }

    #[test]
    fn todd_of_trivial_is_one() {
        let t = sym_table();
        let e = BundleData::trivial(&t, 3, 3);
        assert_eq!(todd(&e, &t).unwrap(), GradedClass::one(&t));
    }

    #[test]
    fn todd_quintic_and_sextic() {
        // d = 5: c1 = 0, so td = 1 + c2/12.
        let t = num_table();
        let x5 = HypersurfaceData::numeric(&t, int(5)).unwrap();
        assert!(x5.tangent.c(1).is_zero());
        let td = todd(&x5.tangent, &t).unwrap();
        let expect = GradedClass::one(&t)
            .add(&x5.tangent.c(2).scale(&frac(1, 12)))
            .unwrap();
        assert_eq!(td, expect);
        // d = 6: td_3 = c1 c2 / 24 = (-h)(16h^2)/24 = -(2/3) h^3.
        let x6 = HypersurfaceData::numeric(&t, int(6)).unwrap();
        let td6 = todd(&x6.tangent, &t).unwrap();
        let h = GradedClass::generator(&t, "h").unwrap();
        assert_eq!(td6.component(3), h.pow(3).unwrap().scale(&frac(-2, 3)));
    }

    #[test]
    fn hypersurface_chern_data() {
        let t = num_table();
        let h = GradedClass::generator(&t, "h").unwrap();
        // d = 1 is P^3: c1 = 4h.
        let p3 = HypersurfaceData::numeric(&t, int(1)).unwrap();
        assert_eq!(p3.tangent.c(1), &h.scale(&int(4)));
        // d = 6: c1 = -h, c2 = 16h^2, c3 = -86h^3, Euler characteristic -516.
        let x6 = HypersurfaceData::numeric(&t, int(6)).unwrap();
        assert_eq!(x6.tangent.c(1), &h.neg());
        assert_eq!(x6.tangent.c(2), &h.pow(2).unwrap().scale(&int(16)));
        assert_eq!(x6.tangent.c(3), &h.pow(3).unwrap().scale(&int(-86)));
        assert_eq!(x6.integrate(x6.tangent.c(3)).unwrap(), int(-516));
        // Cross-check e(X_d) at d = 1, 2, 5 against classical values 4, 4, -200.
        for (d, e) in [(1, 4), (2, 4), (5, -200)] {
            let x = HypersurfaceData::numeric(&t, int(d)).unwrap();
            assert_eq!(x.integrate(x.tangent.c(3)).unwrap(), int(e));
        }
    }

    #[test]
    fn symbolic_point_rule_substitution() {
        // h^2 c1 at numeric d must integrate to -(d-5) d.
        let st = sym_table();
        let h = GradedClass::generator(&st, "h").unwrap();
        let c1 = GradedClass::generator(&st, "c1").unwrap();
        let cls = h.pow(2).unwrap().mul(&c1).unwrap();
        let p = HypersurfaceData::symbolic_integral_poly(&cls).unwrap();
        for d in [3i64, 6, 19] {
            assert_eq!(p.eval_d(&int(d)), int(-(d - 5) * d));
        }
        let nt = num_table();
        let x6 = HypersurfaceData::numeric(&nt, int(6)).unwrap();
        let img = HypersurfaceData::substitute_numeric(&cls, &x6).unwrap();
        assert_eq!(x6.integrate(&img).unwrap(), int(-6));
    }
}
