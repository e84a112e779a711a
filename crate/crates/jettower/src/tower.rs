//! The two-level Grassmannian tower over a hypersurface threefold:
//! level derivation (quotient classes, eliminated relations, rewrite rules
//! with structured completion), fiber integration, the induced bundle on
//! level 1, the effective-locus divisor class, and total integration down to
//! the base.

use std::sync::Arc;

use num_traits::Zero;

use crate::charclass::{
    ch_dual, ch_sub, ch_sum, ch_tensor, ch_to_chern, chern_to_ch, BundleData, HypersurfaceData,
};
use crate::ring::{normal_form, GeneratorTable, GradedClass, Monomial, RewriteRule};
use crate::scalar::{self, int, Scalar};
use crate::{Error, Result};

/// One Grassmannian-bundle floor of the tower.
#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub index: u8,
    pub p: u32,
    /// Rank of the bundle being Grassmannized.
    pub rank_v: u32,
    /// Indices (into the shared table) of this level's tautological
    /// sub-bundle classes, in degree order 1..p.
    pub sub_idx: Vec<usize>,
    /// Chern classes of the Grassmannized bundle, reduced.
    pub v: BundleData,
    /// Quotient-bundle classes b_1..b_{r-p}, solved recursively and reduced.
    pub quotient: Vec<GradedClass>,
    /// The p eliminated relations in degrees r-p+1..r, fully reduced against
    /// earlier rules of the same level (so the first is the printed-form
    /// eliminated relation).
    pub relations: Vec<GradedClass>,
    /// Rewrite rules of this level, including structured completion rules.
    pub rules: Vec<RewriteRule>,
    pub fiber_dim: u32,
    /// First Chern class of the level's tautological line bundle: u = -a_1.
    pub u: GradedClass,
    /// Free-module basis over the base: fiber monomials (full-table
    /// exponent vectors supported on `sub_idx`).
    pub basis: Vec<Monomial>,
    /// The unique basis monomial of fiber degree p(r-p).
    pub top_monomial: Monomial,
    /// Fiber integral of `top_monomial`.
    pub top_integral: Scalar,
}

impl TowerLevel {
    /// Number of basis monomials; must equal binom(rank_v, p).
    pub fn module_rank(&self) -> usize {
        self.basis.len()
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of standard Young tableaux of the p x q rectangle (hook lengths).
fn syt_rectangle(p: u64, q: u64) -> Scalar {
    let mut num = scalar::one();
    for i in 1..=(p * q) {
        num *= int(i as i64);
    }
    let mut den = scalar::one();
    for i in 0..p {
        for j in 0..q {
            let hook = (q - 1 - j) + (p - 1 - i) + 1;
            den *= int(hook as i64);
        }
    }
    num / den
}

/// Build one Grassmannian level G(p, V) over a base carrying `prior_rules`.
///
/// The quotient classes are solved by the recursion
/// `b_k = c_k(V) - sum_{i>=1} a_i b_{k-i}`; the vanishing of `b_j` for
/// `j = r-p+1..r` yields the eliminated relations, which are solved into
/// rewrite rules and closed under a structured completion so that the fiber
/// monomials reduce onto a free basis of rank binom(r, p).
pub fn grassmann_level(
    table: &Arc<GeneratorTable>,
    v: &BundleData,
    p: u32,
    sub_names: &[&str],
    prior_rules: &[RewriteRule],
    index: u8,
) -> Result<TowerLevel> {
    let r = v.rank;
    if p == 0 || p >= r || r > 6 || p > 3 {
        return Err(Error::Unsupported(format!(
            "G(p, V) supported for 1 <= p < rank <= 6, p <= 3; got p={p}, rank={r}"
        )));
    }
    if sub_names.len() != p as usize {
        return Err(Error::InvalidInput("need one sub-class name per 1..p".into()));
    }
    let q = r - p;
    let mut sub_idx = Vec::new();
    for (i, name) in sub_names.iter().enumerate() {
        let idx = table
            .index_of(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name}")))?;
        if table.degree_of(idx) != i as u32 + 1 {
            return Err(Error::InvalidInput(format!(
                "sub class {name} must have degree {}",
                i + 1
            )));
        }
        sub_idx.push(idx);
    }

    let sub_gen = |i: usize| -> GradedClass {
        let mut m = vec![0u8; table.len()];
        m[sub_idx[i]] = 1;
        GradedClass::from_terms(table, [(m, scalar::one())])
    };

    let mut all_rules: Vec<RewriteRule> = prior_rules.to_vec();

    // Quotient classes by recursion (reduced against prior rules only; they
    // contain no new-level generators beyond degree-1 products).
    let c_of = |k: u32| -> GradedClass {
        if k == 0 {
            GradedClass::one(table)
        } else if (k as usize) <= v.chern.len() {
            v.chern[k as usize - 1].clone()
        } else {
            GradedClass::zero(table)
        }
    };
    let mut b: Vec<GradedClass> = vec![GradedClass::one(table)];
    for k in 1..=r {
        let mut acc = c_of(k);
        for i in 1..=p.min(k) {
            let term = sub_gen(i as usize - 1).mul(&b[(k - i) as usize])?;
            acc = acc.sub(&term)?;
        }
        b.push(normal_form(&acc, &all_rules)?);
    }

    // Solve the p vanishing conditions into rules, in ascending degree.
    let is_pure_fiber = |m: &Monomial| -> bool {
        m.iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || sub_idx.contains(&i))
    };
    let fiber_expsum = |m: &Monomial| -> u32 { sub_idx.iter().map(|&i| m[i] as u32).sum() };

    let mut relations = Vec::new();
    // Returns the chosen leading coefficient so callers can store the
    // relation in monic form.
    let derive_rule = |rel: &GradedClass, all_rules: &mut Vec<RewriteRule>| -> Result<Scalar> {
        // Candidate leads: pure fiber monomials with scalar coefficient.
        let mut single_gen: Option<(Monomial, Scalar)> = None;
        let mut best_power: Option<(Monomial, Scalar, u32)> = None;
        for (m, c) in rel.terms() {
            if !is_pure_fiber(m) {
                continue;
            }
            let s = fiber_expsum(m);
            if s == 1 {
                // a single sub generator to the first power: elimination
                let gen_deg = table.monomial_degree(m);
                match &single_gen {
                    Some((prev, _)) if table.monomial_degree(prev) >= gen_deg => {}
                    _ => single_gen = Some((m.clone(), c.clone())),
                }
            }
            match &best_power {
                Some((prev, _, ps)) if *ps > s || (*ps == s && prev > m) => {}
                _ => best_power = Some((m.clone(), c.clone(), s)),
            }
        }
        let (lead, coeff) = single_gen
            .or(best_power.map(|(m, c, _)| (m, c)))
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "no solvable leading monomial in relation {rel}"
                ))
            })?;
        let lead_class = GradedClass::from_terms(table, [(lead.clone(), coeff.clone())]);
        let rest = rel.sub(&lead_class)?;
        let replacement = rest.scale(&(-scalar::one() / &coeff));
        all_rules.push(RewriteRule::new(table, lead, replacement)?);
        Ok(coeff)
    };

    for j in (q + 1)..=r {
        let rel = normal_form(&b[j as usize], &all_rules)?;
        if rel.is_zero() {
            return Err(Error::Unsupported(format!(
                "relation in degree {j} collapsed to zero"
            )));
        }
        let lead_coeff = derive_rule(&rel, &mut all_rules)?;
        relations.push(rel.scale(&(scalar::one() / lead_coeff)));
    }

    // Structured completion: products of relations with sub generators must
    // reduce to zero; a nonzero stuck normal form is a new relation.
    let mut guard = 0;
    loop {
        guard += 1;
        if guard > 64 {
            return Err(Error::NonTerminating("rule completion did not close".into()));
        }
        let mut added = false;
        let level_rules: Vec<GradedClass> = all_rules
            .iter()
            .filter(|ru| is_pure_fiber(ru.leading()))
            .map(|ru| ru.as_relation(table))
            .collect();
        'scan: for rel in &level_rules {
            for g in 0..p as usize {
                let prod = sub_gen(g).mul(rel)?;
                let nf = normal_form(&prod, &all_rules)?;
                if !nf.is_zero() {
                    derive_rule(&nf, &mut all_rules)?;
                    added = true;
                    break 'scan;
                }
            }
        }
        if !added {
            break;
        }
    }

    let new_rules: Vec<RewriteRule> = all_rules[prior_rules.len()..].to_vec();

    // Basis: irreducible fiber monomials, bounded by the fiber dimension.
    let fiber_dim = p * q;
    let mut basis = Vec::new();
    let mut stack = vec![vec![0u8; table.len()]];
    let mut seen = std::collections::BTreeSet::new();
    while let Some(m) = stack.pop() {
        if !seen.insert(m.clone()) {
            continue;
        }
        let deg = table.monomial_degree(&m);
        if deg > fiber_dim {
            continue;
        }
        let reducible = all_rules
            .iter()
            .any(|ru| ru.leading().iter().zip(&m).all(|(a, b)| a <= b));
        if reducible {
            continue;
        }
        basis.push(m.clone());
        for &i in &sub_idx {
            let mut next = m.clone();
            next[i] += 1;
            stack.push(next);
        }
    }
    basis.sort();
    let expected = binom(r as u64, p as u64) as usize;
    if basis.len() != expected {
        return Err(Error::Unsupported(format!(
            "free-module rank check failed: {} basis monomials, expected {expected}",
            basis.len()
        )));
    }
    let tops: Vec<&Monomial> = basis
        .iter()
        .filter(|m| table.monomial_degree(m) == fiber_dim)
        .collect();
    if tops.len() != 1 {
        return Err(Error::Unsupported(
            "expected a unique top-degree fiber basis monomial".into(),
        ));
    }
    let top_monomial = tops[0].clone();

    // Fiber integral of the top basis monomial: reduce a_1^{p q}, whose
    // absolute-Grassmannian integral is (-1)^{p q} times the number of
    // standard tableaux of the p x q rectangle, and divide by the
    // coefficient kappa of the top basis monomial in that normal form.
    let a1_pow = sub_gen(0).pow(fiber_dim)?;
    let nf = normal_form(&a1_pow, &all_rules)?;
    let kappa = nf.coefficient(&top_monomial);
    if kappa.is_zero() {
        return Err(Error::Unsupported(
            "top fiber power does not reach the top basis monomial".into(),
        ));
    }
    let sign = if fiber_dim % 2 == 0 { scalar::one() } else { -scalar::one() };
    let top_integral = sign * syt_rectangle(p as u64, q as u64) / kappa;

    let u = sub_gen(0).neg();
    let quotient = b[1..=q as usize].to_vec();

    Ok(TowerLevel {
        index,
        p,
        rank_v: r,
        sub_idx,
        v: v.clone(),
        quotient,
        relations,
        rules: new_rules,
        fiber_dim,
        u,
        basis,
        top_monomial,
        top_integral,
    })
}

/// Push a class down one level: linear over the base, kills components of
/// fiber degree below the fiber dimension, and sends the top Schubert-type
/// basis monomial to its fiber integral.
pub fn fiber_integrate(
    table: &Arc<GeneratorTable>,
    level: &TowerLevel,
    rules: &[RewriteRule],
    x: &GradedClass,
) -> Result<GradedClass> {
    let nf = normal_form(x, rules)?;
    let mut out = GradedClass::zero(table);
    for (m, c) in nf.terms() {
        let fiber_part: Vec<u8> = (0..table.len())
            .map(|i| if level.sub_idx.contains(&i) { m[i] } else { 0 })
            .collect();
        if fiber_part == level.top_monomial {
            let mut rest = m.clone();
            for &i in &level.sub_idx {
                rest[i] = 0;
            }
            out = out.add(&GradedClass::from_terms(
                table,
                [(rest, c * &level.top_integral)],
            ))?;
        } else if !level.basis.contains(&fiber_part) {
            return Err(Error::Unsupported(format!(
                "normal form left a non-basis fiber monomial in {nf}"
            )));
        }
    }
    Ok(out)
}

/// Closed-form dimension of the k-th level of the tower, starting from an
/// n-fold with a rank-r bundle: `n + p(r-p) + ... + p^k (r-p)`
/// (`n + k(r-1)` when p = 1).
pub fn dim_xk(n: u32, r: u32, p: u32, k: u32) -> u64 {
    let mut dim = n as u64;
    let mut pw = 1u64;
    for _ in 1..=k {
        pw *= p as u64;
        dim += pw * (r - p) as u64;
    }
    dim
}

/// Closed-form rank of the induced bundle at level k: `p^k (r-p) + p`.
pub fn rank_vk(r: u32, p: u32, k: u32) -> u64 {
    if k == 0 {
        return r as u64;
    }
    (p as u64).pow(k) * (r - p) as u64 + p as u64
}

/// Divisor class of the effective locus on level 2: `u_2 + u_1 + c_1`.
#[derive(Debug, Clone)]
pub struct EffectiveLocusClass {
    pub z: GradedClass,
}

/// The two-level tower over a hypersurface in P^4, with the shared generator
/// table, the rule set of both levels, and the induced rank-4 bundle.
#[derive(Debug, Clone)]
pub struct Tower {
    pub table: Arc<GeneratorTable>,
    pub base: HypersurfaceData,
    pub level1: TowerLevel,
    pub level2: TowerLevel,
    /// Chern classes of the induced bundle on level 1 (reduced form).
    pub v1: BundleData,
    /// Combined rule set of both levels.
    pub rules: Vec<RewriteRule>,
}

/// Generator layout shared by every tower run. Base level carries either
/// {h} (numeric mode) or {h, c1, c2, c3} (symbolic mode); levels 1 and 2
/// carry the tautological sub classes. Truncation is the ambient dimension
/// at each level: 3, 5, 9.
fn tower_table(symbolic: bool) -> Result<Arc<GeneratorTable>> {
    let mut gens: Vec<(&str, u32, u8)> = vec![("h", 1, 0)];
    if symbolic {
        gens.extend_from_slice(&[("c1", 1, 0), ("c2", 2, 0), ("c3", 3, 0)]);
    }
    gens.extend_from_slice(&[("a1", 1, 1), ("a2", 2, 1), ("d1", 1, 2), ("d2", 2, 2)]);
    GeneratorTable::with_levels(&gens, &[3, 5, 9])
}

/// Chern character route to the induced bundle:
/// `ch(V1) = ch(S1) + ch(V0 tensor S1*) - ch(S1 tensor S1*)`.
fn induced_bundle(
    table: &Arc<GeneratorTable>,
    v0: &BundleData,
    s1: &BundleData,
    top: usize,
) -> Result<BundleData> {
    let ch_s = chern_to_ch(s1, table, top)?;
    let ch_s_dual = ch_dual(&ch_s);
    let ch_v0 = chern_to_ch(v0, table, top)?;
    let ch = ch_sum(
        &ch_s,
        &ch_sub(&ch_tensor(&ch_v0, &ch_s_dual)?, &ch_tensor(&ch_s, &ch_s_dual)?)?,
    )?;
    ch_to_chern(&ch, table)
}

impl Tower {
    /// Build the full tower in symbolic mode (independent base generators
    /// h, c1, c2, c3).
    pub fn symbolic() -> Result<Self> {
        let table = tower_table(true)?;
        let base = HypersurfaceData::symbolic(&table)?;
        Self::build(table, base)
    }

    /// Build the full tower in numeric mode over Q[h]/(h^4) at degree `d`.
    pub fn numeric(d: i64) -> Result<Self> {
        let table = tower_table(false)?;
        let base = HypersurfaceData::numeric(&table, int(d))?;
        Self::build(table, base)
    }

    fn build(table: Arc<GeneratorTable>, base: HypersurfaceData) -> Result<Self> {
        let level1 = grassmann_level(&table, &base.tangent, 2, &["a1", "a2"], &[], 1)?;
        let v1_raw = induced_bundle(&table, &base.tangent, &level1_sub_bundle(&table)?, 4)?;
        let mut v1_chern = Vec::new();
        for c in &v1_raw.chern {
            v1_chern.push(normal_form(c, &level1.rules)?);
        }
        let v1 = BundleData::new(v1_raw.rank, v1_chern)?;
        let level2 = grassmann_level(&table, &v1, 2, &["d1", "d2"], &level1.rules, 2)?;
        let mut rules = level1.rules.clone();
        rules.extend(level2.rules.iter().cloned());
        Ok(Tower { table, base, level1, level2, v1, rules })
    }

    /// `u_1 = -a_1`.
    pub fn u1(&self) -> GradedClass {
        self.level1.u.clone()
    }

    /// `u_2 = -d_1`.
    pub fn u2(&self) -> GradedClass {
        self.level2.u.clone()
    }

    /// Effective-locus divisor class `Z_2 = u_2 + u_1 + c_1`.
    pub fn z2_class(&self) -> Result<EffectiveLocusClass> {
        let z = self
            .u2()
            .add(&self.u1())?
            .add(self.base.tangent.c(1))?;
        Ok(EffectiveLocusClass { z })
    }

    /// Reduce to normal form under the full rule set of the tower.
    pub fn reduce(&self, x: &GradedClass) -> Result<GradedClass> {
        normal_form(x, &self.rules)
    }

    /// Push a class from level 2 all the way to the base (two fiber
    /// integrations). Classes of total degree below 9 push to zero in the
    /// degree-3 component.
    pub fn push_to_base(&self, x: &GradedClass) -> Result<GradedClass> {
        let on_x1 = fiber_integrate(&self.table, &self.level2, &self.rules, x)?;
        fiber_integrate(&self.table, &self.level1, &self.rules, &on_x1)
    }

    /// Total integral over the 9-dimensional level-2 space, numeric mode:
    /// both fiber integrals followed by the point rule `h^3 = d`.
    pub fn integrate_total_numeric(&self, x: &GradedClass) -> Result<Scalar> {
        let on_base = self.push_to_base(x)?;
        self.base.integrate(&on_base.component(3))
    }

    /// Whitney check: `sum_i a_i b_{k-i} - c_k(V)` must reduce to zero for
    /// k = 1..r at the given level. Returns the offending k on failure.
    pub fn whitney_check(&self, level: &TowerLevel) -> Result<()> {
        let table = &self.table;
        let sub = |i: usize| -> GradedClass {
            let mut m = vec![0u8; table.len()];
            m[level.sub_idx[i]] = 1;
            GradedClass::from_terms(table, [(m, scalar::one())])
        };
        let b = |j: u32| -> GradedClass {
            if j == 0 {
                GradedClass::one(table)
            } else if (j as usize) <= level.quotient.len() {
                level.quotient[j as usize - 1].clone()
            } else {
                GradedClass::zero(table)
            }
        };
        for k in 1..=level.rank_v {
            let mut acc = b(k);
            for i in 1..=level.p.min(k) {
                acc = acc.add(&sub(i as usize - 1).mul(&b(k - i))?)?;
            }
            let ck = if (k as usize) <= level.v.chern.len() {
                level.v.chern[k as usize - 1].clone()
            } else {
                GradedClass::zero(table)
            };
            let diff = self.reduce(&acc.sub(&ck)?)?;
            if !diff.is_zero() {
                return Err(Error::Unsupported(format!(
                    "Whitney identity failed in degree {k} at level {}: {diff}",
                    level.index
                )));
            }
        }
        Ok(())
    }
}

fn level1_sub_bundle(table: &Arc<GeneratorTable>) -> Result<BundleData> {
    BundleData::new(
        2,
        vec![
            GradedClass::generator(table, "a1")?,
            GradedClass::generator(table, "a2")?,
        ],
    )
}

/// The induced-bundle Chern classes computed in a universal ring where the
/// base classes and both sub classes are independent generators with no
/// relations and no truncation below degree 8. This is the form suitable for
/// coefficient-level comparison against the closed-form displays.
pub fn v1_chern_universal() -> Result<(Arc<GeneratorTable>, BundleData)> {
    let table = GeneratorTable::new(
        &[("c1", 1), ("c2", 2), ("c3", 3), ("a1", 1), ("a2", 2)],
        8,
    )?;
    let v0 = BundleData::new(
        3,
        vec![
            GradedClass::generator(&table, "c1")?,
            GradedClass::generator(&table, "c2")?,
            GradedClass::generator(&table, "c3")?,
        ],
    )?;
    let s1 = BundleData::new(
        2,
        vec![
            GradedClass::generator(&table, "a1")?,
            GradedClass::generator(&table, "a2")?,
        ],
    )?;
    let v1 = induced_bundle(&table, &v0, &s1, 4)?;
    Ok((table, v1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    /// rel1 as printed: a1^3 - 2a1^2c1 + a1c1^2 + a1c2 - c1c2 + c3.
    fn expected_rel1(table: &Arc<GeneratorTable>) -> GradedClass {
        let g = |n: &str| GradedClass::generator(table, n).unwrap();
        let (a1, c1, c2, c3) = (g("a1"), g("c1"), g("c2"), g("c3"));
        a1.pow(3)
            .unwrap()
            .sub(&a1.pow(2).unwrap().mul(&c1).unwrap().scale(&int(2)))
            .unwrap()
            .add(&a1.mul(&c1.pow(2).unwrap()).unwrap())
            .unwrap()
            .add(&a1.mul(&c2).unwrap())
            .unwrap()
            .sub(&c1.mul(&c2).unwrap())
            .unwrap()
            .add(&c3)
            .unwrap()
    }

    #[test]
    fn level1_eliminated_relation_is_rel1() {
        let tower = Tower::symbolic().unwrap();
        // Relations in degrees 2, 3; the degree-3 one is the printed form.
        assert_eq!(tower.level1.relations.len(), 2);
        let rel = &tower.level1.relations[1];
        assert_eq!(rel, &expected_rel1(&tower.table));
    }

    #[test]
    fn level1_module_rank_and_whitney() {
        let tower = Tower::symbolic().unwrap();
        assert_eq!(tower.level1.module_rank(), 3);
        assert_eq!(tower.level2.module_rank(), 6);
        tower.whitney_check(&tower.level1).unwrap();
        tower.whitney_check(&tower.level2).unwrap();
    }

    #[test]
    fn rel1_reduces_to_zero() {
        let tower = Tower::symbolic().unwrap();
        let rel1 = expected_rel1(&tower.table);
        assert!(tower.reduce(&rel1).unwrap().is_zero());
    }

    #[test]
    fn projective_bundle_level_matches_classical_relation() {
        // G(1, V) for rank-3 V over the symbolic base: the single relation in
        // u = -a1 is the classical u^3 + c1 u^2 + c2 u + c3 = 0, and the fiber
        // integral of u^2 is 1.
        let table = GeneratorTable::with_levels(
            &[("h", 1, 0), ("c1", 1, 0), ("c2", 2, 0), ("c3", 3, 0), ("t", 1, 1)],
            &[3, 5],
        )
        .unwrap();
        let base = HypersurfaceData::symbolic(&table).unwrap();
        let level = grassmann_level(&table, &base.tangent, 1, &["t"], &[], 1).unwrap();
        assert_eq!(level.module_rank(), 3);
        // relation: a1^3 - c1 a1^2 + c2 a1 - c3 = 0, i.e. u^3 + c1u^2 + c2u + c3 = 0.
        let g = |n: &str| GradedClass::generator(&table, n).unwrap();
        let (t, c1, c2, c3) = (g("t"), g("c1"), g("c2"), g("c3"));
        let expect = t
            .pow(3)
            .unwrap()
            .sub(&t.pow(2).unwrap().mul(&c1).unwrap())
            .unwrap()
            .add(&t.mul(&c2).unwrap())
            .unwrap()
            .sub(&c3)
            .unwrap();
        assert_eq!(level.relations[0], expect);
        let u2 = level.u.pow(2).unwrap();
        let pushed = fiber_integrate(&table, &level, &level.rules, &u2).unwrap();
        assert_eq!(pushed, GradedClass::one(&table));
    }

    #[test]
    fn schubert_anchors() {
        let tower = Tower::symbolic().unwrap();
        let g = |n: &str| GradedClass::generator(&tower.table, n).unwrap();
        // level 1: integral of a1^2 is 1
        let a1sq = g("a1").pow(2).unwrap();
        let v = fiber_integrate(&tower.table, &tower.level1, &tower.rules, &a1sq).unwrap();
        assert_eq!(v, GradedClass::one(&tower.table));
        // level 2: integral of d2^2 is 1 and of d1^4 is 2
        let d2sq = g("d2").pow(2).unwrap();
        let v = fiber_integrate(&tower.table, &tower.level2, &tower.rules, &d2sq).unwrap();
        assert_eq!(v, GradedClass::one(&tower.table));
        let d1q = g("d1").pow(4).unwrap();
        let v = fiber_integrate(&tower.table, &tower.level2, &tower.rules, &d1q).unwrap();
        assert_eq!(v, GradedClass::scalar(&tower.table, int(2)));
    }

    #[test]
    fn normalization_anchor_integrals() {
        for d in [3i64, 5, 7] {
            let tower = Tower::numeric(d).unwrap();
            let h = GradedClass::generator(&tower.table, "h").unwrap();
            let u1 = tower.u1();
            let u2 = tower.u2();
            // integral over X1 of u1^2 h^3 = d: push only through level 1.
            let x = u1.pow(2).unwrap().mul(&h.pow(3).unwrap()).unwrap();
            let on_base =
                fiber_integrate(&tower.table, &tower.level1, &tower.rules, &x).unwrap();
            assert_eq!(tower.base.integrate(&on_base).unwrap(), int(d));
            // integral over X2 of u2^4 u1^2 h^3 = 2d.
            let y = u2
                .pow(4)
                .unwrap()
                .mul(&u1.pow(2).unwrap())
                .unwrap()
                .mul(&h.pow(3).unwrap())
                .unwrap();
            assert_eq!(tower.integrate_total_numeric(&y).unwrap(), int(2) * int(d));
        }
    }

    #[test]
    fn projection_formula() {
        // fiber integral of (pullback beta . gamma) = beta . fiber integral of gamma
        let tower = Tower::symbolic().unwrap();
        let g = |n: &str| GradedClass::generator(&tower.table, n).unwrap();
        let beta = g("h").add(&g("c1").scale(&int(3))).unwrap();
        let gamma = g("d2")
            .pow(2)
            .unwrap()
            .add(&g("d1").pow(3).unwrap().mul(&g("a1")).unwrap())
            .unwrap();
        let lhs = fiber_integrate(
            &tower.table,
            &tower.level2,
            &tower.rules,
            &beta.mul(&gamma).unwrap(),
        )
        .unwrap();
        let rhs = beta
            .mul(&fiber_integrate(&tower.table, &tower.level2, &tower.rules, &gamma).unwrap())
            .unwrap();
        assert_eq!(tower.reduce(&lhs).unwrap(), tower.reduce(&rhs).unwrap());
    }

    #[test]
    fn induced_bundle_universal_matches_displays() {
        let (table, v1) = v1_chern_universal().unwrap();
        assert_eq!(v1.rank, 4);
        let g = |n: &str| GradedClass::generator(&table, n).unwrap();
        let (c1, c2, a1) = (g("c1"), g("c2"), g("a1"));
        // c1(V1) = 2c1 - 2a1
        let e1 = c1.scale(&int(2)).sub(&a1.scale(&int(2))).unwrap();
        assert_eq!(v1.chern[0], e1);
        // c2(V1) = c1^2 - 3c1a1 + a1^2 + 2c2
        let e2 = c1
            .pow(2)
            .unwrap()
            .sub(&c1.mul(&a1).unwrap().scale(&int(3)))
            .unwrap()
            .add(&a1.pow(2).unwrap())
            .unwrap()
            .add(&c2.scale(&int(2)))
            .unwrap();
        assert_eq!(v1.chern[1], e2);
    }

    /// Independent oracle for the induced-bundle classes: specialize to an
    /// honest split situation S = <s1, s2> inside V0 = <s1, s2, x>, where the
    /// induced bundle is S + Hom(S, Q) with Chern roots
    /// {s1, s2, x - s1, x - s2}, and compare elementary symmetric values.
    #[test]
    fn induced_bundle_split_oracle() {
        let (table, v1) = v1_chern_universal().unwrap();
        let _ = table;
        let scalars = GeneratorTable::new(&[], 1).unwrap();
        for (s1, s2, x) in [(5i64, 7, 11), (1, 2, 3), (-3, 4, 9), (2, 2, 5)] {
            let roots = [s1, s2, x - s1, x - s2];
            let elem = |k: usize| -> Scalar {
                // elementary symmetric polynomial e_k of the four roots
                let mut acc = scalar::zero();
                let n = roots.len();
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize != k {
                        continue;
                    }
                    let mut prod = scalar::one();
                    for (i, r) in roots.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            prod *= int(*r);
                        }
                    }
                    acc += prod;
                }
                acc
            };
            // generator values: c's of V0 = <s1, s2, x>, a's of S = <s1, s2>
            let vals = [
                int(s1 + s2 + x),
                int(s1 * s2 + s1 * x + s2 * x),
                int(s1 * s2 * x),
                int(s1 + s2),
                int(s1 * s2),
            ];
            let images: Vec<GradedClass> = vals
                .iter()
                .map(|v| GradedClass::scalar(&scalars, v.clone()))
                .collect();
            for k in 1..=4usize {
                let got = v1.chern[k - 1].substitute(&scalars, &images).unwrap();
                assert_eq!(got, GradedClass::scalar(&scalars, elem(k)), "c_{k} mismatch");
            }
        }
    }

    #[test]
    fn printed_level2_relations_annihilate() {
        let tower = Tower::symbolic().unwrap();
        let table = &tower.table;
        let g = |n: &str| GradedClass::generator(table, n).unwrap();
        let d1 = g("d1");
        let d2 = g("d2");
        let f: Vec<GradedClass> = (0..4).map(|i| tower.v1.chern[i].clone()).collect();
        let (f1, f2, f3, f4) = (&f[0], &f[1], &f[2], &f[3]);
        let m = |list: &[(&GradedClass, u32)], k: i64| -> GradedClass {
            let mut acc = GradedClass::scalar(table, int(k));
            for (cls, e) in list {
                acc = acc.mul(&cls.pow(*e).unwrap()).unwrap();
            }
            acc
        };
        // degree-6 relation in d1 and the induced-bundle classes
        let rel2 = [
            m(&[(&d1, 6)], -1),
            m(&[(&d1, 5), (f1, 1)], 3),
            m(&[(&d1, 4), (f1, 2)], -3),
            m(&[(&d1, 4), (f2, 1)], -2),
            m(&[(&d1, 3), (f2, 1), (f1, 1)], 4),
            m(&[(&d1, 3), (f1, 3)], 1),
            m(&[(&d1, 2), (f3, 1), (f1, 1)], -1),
            m(&[(&d1, 2), (f2, 2)], -1),
            m(&[(&d1, 2), (f4, 1)], 4),
            m(&[(&d1, 2), (f1, 2), (f2, 1)], -2),
            m(&[(&d1, 1), (f3, 1), (f1, 2)], 1),
            m(&[(&d1, 1), (f4, 1), (f1, 1)], -4),
            m(&[(&d1, 1), (f2, 2), (f1, 1)], 1),
            m(&[(f3, 1), (f2, 1), (f1, 1)], -1),
            m(&[(f3, 2)], 1),
            m(&[(f4, 1), (f1, 2)], 1),
        ]
        .iter()
        .fold(GradedClass::zero(table), |acc, t| acc.add(t).unwrap());
        assert!(tower.reduce(&rel2).unwrap().is_zero());
        // degree-5 relation involving d2 as well
        let rel3 = [
            m(&[(&d1, 5)], -1),
            m(&[(f3, 1), (f2, 1)], -1),
            m(&[(f4, 1), (f1, 1)], 3),
            m(&[(f3, 1), (f1, 2)], 1),
            m(&[(&d2, 1), (f3, 1)], -2),
            m(&[(&d2, 1), (f1, 1), (f2, 1)], -2),
            m(&[(&d2, 1), (f1, 3)], -1),
            m(&[(&d2, 2), (f1, 1)], 5),
            m(&[(&d1, 1), (f4, 1)], 4),
            m(&[(&d1, 1), (f2, 2)], 1),
            m(&[(&d1, 1), (f3, 1), (f1, 1)], 1),
            m(&[(&d1, 1), (f2, 1), (f1, 2)], -1),
            m(&[(&d1, 1), (&d2, 1), (f2, 1)], -4),
            m(&[(&d1, 1), (&d2, 1), (f1, 2)], 4),
            m(&[(&d1, 2), (f3, 1)], 1),
            m(&[(&d1, 2), (f2, 1), (f1, 1)], -2),
            m(&[(&d1, 2), (f1, 3)], 1),
        ]
        .iter()
        .fold(GradedClass::zero(table), |acc, t| acc.add(t).unwrap());
        assert!(tower.reduce(&rel3).unwrap().is_zero());
    }

    #[test]
    fn z2_symbolic_and_numeric() {
        let tower = Tower::symbolic().unwrap();
        let g = |n: &str| GradedClass::generator(&tower.table, n).unwrap();
        let z = tower.z2_class().unwrap().z;
        let expect = g("d1").neg().sub(&g("a1")).unwrap().add(&g("c1")).unwrap();
        assert_eq!(z, expect);
        // d = 5: c1 = 0 so Z2 = u2 + u1.
        let t5 = Tower::numeric(5).unwrap();
        let z5 = t5.z2_class().unwrap().z;
        assert_eq!(z5, t5.u2().add(&t5.u1()).unwrap());
        // numeric d: Z2 = u2 + u1 - (d-5)h.
        let t7 = Tower::numeric(7).unwrap();
        let h = GradedClass::generator(&t7.table, "h").unwrap();
        let expect7 = t7
            .u2()
            .add(&t7.u1())
            .unwrap()
            .sub(&h.scale(&int(2)))
            .unwrap();
        assert_eq!(t7.z2_class().unwrap().z, expect7);
    }

    #[test]
    fn low_degree_classes_integrate_to_zero() {
        let tower = Tower::numeric(6).unwrap();
        let g = |n: &str| GradedClass::generator(&tower.table, n).unwrap();
        let x = g("d1").pow(4).unwrap().mul(&g("a1").pow(2).unwrap()).unwrap();
        // degree 6 < 9
        assert_eq!(tower.integrate_total_numeric(&x).unwrap(), scalar::zero());
    }

    #[test]
    fn dimension_and_rank_formulas() {
        assert_eq!(dim_xk(3, 3, 2, 2), 9);
        assert_eq!(rank_vk(3, 2, 2), 6);
        assert_eq!(dim_xk(3, 3, 2, 1), 5);
        assert_eq!(rank_vk(3, 2, 1), 4);
        // p = 1 specialization: n + k(r-1)
        assert_eq!(dim_xk(3, 3, 1, 2), 3 + 2 * 2);
        for k in 0..4 {
            assert_eq!(dim_xk(4, 3, 1, k), 4 + (k as u64) * 2);
        }
        // k = 0
        assert_eq!(dim_xk(3, 3, 2, 0), 3);
        assert_eq!(rank_vk(3, 2, 0), 3);
    }
}
