//! Truncated graded commutative polynomial algebra over exact rationals,
//! with rewrite-rule normal forms.
//!
//! A [`GeneratorTable`] fixes an ordered list of generators, each with a
//! positive degree and a level tag. Truncation is per level: a monomial
//! vanishes as soon as, for some level `l`, the total degree contributed by
//! generators of level `<= l` exceeds the dimension bound recorded for `l`.
//! A table with a single level is an ordinary truncated polynomial ring.
//!
//! [`GradedClass`] values are immutable after construction and all operations
//! are pure, so everything here is safe to share across threads.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::scalar::{self, Scalar};
use crate::{Error, Result};

/// Exponent vector; entry `i` is the exponent of generator `i`.
pub type Monomial = Vec<u8>;

/// Ordered set of ring generators with degrees, level tags and per-level
/// truncation bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    names: Vec<String>,
    degrees: Vec<u32>,
    levels: Vec<u8>,
    /// `level_dims[l]` bounds the total degree of the level-`<= l` part of a
    /// monomial; must be non-decreasing in `l`.
    level_dims: Vec<u32>,
}

impl GeneratorTable {
    /// Single-level table: plain truncation at `truncation`.
    pub fn new(gens: &[(&str, u32)], truncation: u32) -> Result<Arc<Self>> {
        let leveled: Vec<(&str, u32, u8)> = gens.iter().map(|&(n, d)| (n, d, 0)).collect();
        Self::with_levels(&leveled, &[truncation])
    }

    /// Multi-level table. `gens` are `(name, degree, level)`; `level_dims[l]`
    /// is the dimension bound for the level-`<= l` part.
    pub fn with_levels(gens: &[(&str, u32, u8)], level_dims: &[u32]) -> Result<Arc<Self>> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut levels = Vec::new();
        for &(name, degree, level) in gens {
            if degree == 0 {
                return Err(Error::InvalidInput(format!("generator {name} has degree 0")));
            }
            if names.iter().any(|n| n == name) {
                return Err(Error::InvalidInput(format!("duplicate generator {name}")));
            }
            if level as usize >= level_dims.len() {
                return Err(Error::InvalidInput(format!(
                    "generator {name} has level {level} but only {} level bounds given",
                    level_dims.len()
                )));
            }
            names.push(name.to_string());
            degrees.push(degree);
            levels.push(level);
        }
        if level_dims.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("level bounds must be non-decreasing".into()));
        }
        for i in 0..names.len() {
            if degrees[i] > level_dims[levels[i] as usize] {
                return Err(Error::InvalidInput(format!(
                    "generator {} of degree {} exceeds its level bound",
                    names[i], degrees[i]
                )));
            }
        }
        Ok(Arc::new(GeneratorTable { names, degrees, levels, level_dims: level_dims.to_vec() }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree_of(&self, idx: usize) -> u32 {
        self.degrees[idx]
    }

    pub fn level_of(&self, idx: usize) -> u8 {
        self.levels[idx]
    }

    /// Top truncation (dimension of the total space).
    pub fn truncation(&self) -> u32 {
        *self.level_dims.last().unwrap()
    }

    /// Total weighted degree of a monomial.
    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.iter()
            .zip(&self.degrees)
            .map(|(&e, &d)| e as u32 * d)
            .sum()
    }

    /// True when the monomial survives every per-level truncation bound.
    pub fn monomial_alive(&self, m: &Monomial) -> bool {
        for (l, &dim) in self.level_dims.iter().enumerate() {
            let deg: u32 = m
                .iter()
                .enumerate()
                .filter(|&(i, _)| self.levels[i] as usize <= l)
                .map(|(i, &e)| e as u32 * self.degrees[i])
                .sum();
            if deg > dim {
                return false;
            }
        }
        true
    }

    fn monomial_display(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Element of the truncated graded ring: a finite map from exponent vectors
/// to nonzero exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GradedClass {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        GradedClass { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::scalar(table, scalar::one())
    }

    pub fn scalar(table: &Arc<GeneratorTable>, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0u8; table.len()], c);
        }
        GradedClass { table: table.clone(), terms }
    }

    /// The generator with the given name, as a class.
    pub fn generator(table: &Arc<GeneratorTable>, name: &str) -> Result<Self> {
        let idx = table
            .index_of(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name}")))?;
        let mut m = vec![0u8; table.len()];
        m[idx] = 1;
        Ok(Self::from_terms(table, [(m, scalar::one())]))
    }

    /// Build from raw `(monomial, coefficient)` pairs; zeros and truncated
    /// monomials are pruned.
    pub fn from_terms<I>(table: &Arc<GeneratorTable>, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut out = Self::zero(table);
        for (m, c) in iter {
            out.add_term(&m, &c);
        }
        out
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(scalar::zero)
    }

    /// Coefficient of a monomial given by `(name, exponent)` pairs.
    pub fn coefficient_of(&self, gens: &[(&str, u8)]) -> Result<Scalar> {
        let mut m = vec![0u8; self.table.len()];
        for &(name, e) in gens {
            let idx = self
                .table
                .index_of(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name}")))?;
            m[idx] += e;
        }
        Ok(self.coefficient(&m))
    }

    fn add_term(&mut self, m: &Monomial, c: &Scalar) {
        if c.is_zero() || !self.table.monomial_alive(m) {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(m);
        }
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "generators {:?} vs {:?}",
                self.table.names(),
                other.table.names()
            )))
        }
    }

    /// Termwise sum. Errors when the two classes live over different tables.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        GradedClass { table: self.table.clone(), terms }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        GradedClass { table: self.table.clone(), terms }
    }

    /// Distributed product; monomials exceeding a truncation bound are dropped.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = Self::zero(&self.table);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                let mut overflow = false;
                for (a, &b) in m.iter_mut().zip(m2.iter()) {
                    let (s, o) = a.overflowing_add(b);
                    *a = s;
                    overflow |= o;
                }
                if overflow {
                    continue; // exponent > 255 is far beyond any truncation
                }
                out.add_term(&m, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Self::one(&self.table);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Total degree when homogeneous; `None` for 0 or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = self.table.monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(p) if p != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// The homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.table.monomial_degree(m) == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        GradedClass { table: self.table.clone(), terms }
    }

    /// Maximum total degree over the support (0 for the zero class).
    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| self.table.monomial_degree(m))
            .max()
            .unwrap_or(0)
    }

    /// Substitute each generator by a class in a (possibly different) target
    /// ring. `images[i]` is the image of generator `i`.
    pub fn substitute(&self, target: &Arc<GeneratorTable>, images: &[GradedClass]) -> Result<Self> {
        if images.len() != self.table.len() {
            return Err(Error::InvalidInput(
                "substitute: one image per generator required".into(),
            ));
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Self::scalar(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&images[i])?;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Sort by degree then exponent vector for a stable, readable order.
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(m, _)| (self.table.monomial_degree(m), (*m).clone()));
        let mut first = true;
        for (m, c) in items {
            let mono = self.table.monomial_display(m);
            let (sign, mag) = if c < &scalar::zero() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if mono == "1" {
                write!(f, "{}", mag)?;
            } else if mag == scalar::one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

/// A rewrite rule `leading -> replacement` between classes of equal degree.
#[derive(Debug, Clone)]
pub struct RewriteRule {
    leading: Monomial,
    replacement: GradedClass,
    degree: u32,
}

impl RewriteRule {
    /// Build a rule, checking degree consistency and that the leading
    /// monomial does not occur in (or divide a monomial of) the replacement;
    /// a degree-increasing replacement is rejected outright.
    pub fn new(table: &Arc<GeneratorTable>, leading: Monomial, replacement: GradedClass) -> Result<Self> {
        let degree = table.monomial_degree(&leading);
        for (m, _) in replacement.terms() {
            let d = table.monomial_degree(m);
            if d > degree {
                return Err(Error::NonTerminating(format!(
                    "replacement monomial of degree {d} exceeds leading degree {degree}"
                )));
            }
            if d != degree {
                return Err(Error::DegreeMismatch(
                    "rewrite replacement must be homogeneous of the leading degree".into(),
                ));
            }
            if divides(&leading, m) {
                return Err(Error::NonTerminating(
                    "leading monomial occurs in its own replacement".into(),
                ));
            }
        }
        Ok(RewriteRule { leading, replacement, degree })
    }

    pub fn leading(&self) -> &Monomial {
        &self.leading
    }

    pub fn replacement(&self) -> &GradedClass {
        &self.replacement
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The rule as the relation `leading - replacement` (which is 0 in the
    /// quotient ring).
    pub fn as_relation(&self, table: &Arc<GeneratorTable>) -> GradedClass {
        let lead = GradedClass::from_terms(table, [(self.leading.clone(), scalar::one())]);
        lead.sub(&self.replacement).expect("same table")
    }
}

fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

/// Reduce `x` to normal form: repeatedly rewrite the highest-degree term
/// whose monomial is divisible by some rule's leading monomial, until no rule
/// applies. The structured rule sets built in this crate terminate; a fuel
/// counter guards against a non-terminating set and reports it as an error.
pub fn normal_form(x: &GradedClass, rules: &[RewriteRule]) -> Result<GradedClass> {
    let table = x.table().clone();
    let mut cur = x.clone();
    let mut fuel: u64 = 2_000_000;
    loop {
        // Highest-degree offending monomial first; ties broken by the
        // BTreeMap order for determinism.
        let mut target: Option<(Monomial, usize)> = None;
        let mut target_deg = 0u32;
        for (m, _) in cur.terms() {
            for (ri, rule) in rules.iter().enumerate() {
                if divides(rule.leading(), m) {
                    let d = table.monomial_degree(m);
                    if target.is_none() || d > target_deg {
                        target = Some((m.clone(), ri));
                        target_deg = d;
                    }
                    break;
                }
            }
        }
        let Some((mono, ri)) = target else {
            return Ok(cur);
        };
        if fuel == 0 {
            return Err(Error::NonTerminating("rewrite fuel exhausted".into()));
        }
        fuel -= 1;
        let rule = &rules[ri];
        let coeff = cur.coefficient(&mono);
        let rest: Monomial = mono
            .iter()
            .zip(rule.leading().iter())
            .map(|(&a, &b)| a - b)
            .collect();
        // cur := cur - coeff*mono + coeff*rest*replacement
        let mut delta = GradedClass::from_terms(&table, [(mono.clone(), -&coeff)]);
        let rest_class = GradedClass::from_terms(&table, [(rest, coeff)]);
        delta = delta.add(&rest_class.mul(rule.replacement())?)?;
        cur = cur.add(&delta)?;
    }
}
