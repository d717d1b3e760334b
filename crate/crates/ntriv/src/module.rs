//! Finite unitary modules over a [`FiniteRing`]: construction, submodule
//! lattices, and the divisibility/associate/primitivity predicates used by
//! the homogeneity and factorization analyses.
//!
//! Module elements are carrier indices `0..order` with 0 the zero element.
//! The regular module keeps the ring's own indexing; explicit modules are
//! indexed mixed-radix over their declared cyclic factors (first factor
//! most significant).

use std::sync::Arc;

use serde::Serialize;

use crate::ring::{abelian_basis, Elem, FiniteRing};
use crate::{Error, Result};

/// How a module was built; drives element display.
#[derive(Debug, Clone)]
pub enum ModuleKind {
    /// The ring acting on itself; carrier indices coincide with ring indices.
    Regular,
    /// Declared cyclic factors with a supplied action.
    Explicit,
    /// Direct product of modules over the same ring.
    Product(Vec<Arc<FiniteModule>>),
    /// Carved out of another structure (e.g. a component `e·M` of a direct
    /// product decomposition); elements display as in the parent.
    Derived,
}

/// A finite unitary module over a finite commutative ring.
pub struct FiniteModule {
    label: String,
    ring: Arc<FiniteRing>,
    order: usize,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    /// `ring.order × order` table: `action[r*order + m] = r·m`.
    action: Vec<Elem>,
    /// Cyclic factor orders aligned with the carrier indexing (declared for
    /// explicit modules, derived from a basis otherwise).
    factors: Vec<usize>,
    /// Canonical invariant factors `d₁ ≥ d₂ ≥ …` with `dᵢ₊₁ | dᵢ`.
    invariant_factors: Vec<usize>,
    names: Vec<String>,
    kind: ModuleKind,
}

impl std::fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteModule")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteModule {
    // ------------------------------------------------------------------
    // Constructors
    // ------------------------------------------------------------------

    /// The ring as a module over itself; action is ring multiplication and
    /// element indices coincide with ring indices.
    pub fn regular(ring: &Arc<FiniteRing>) -> Result<Arc<FiniteModule>> {
        let order = ring.order();
        let add = table(order, |x, y| ring.add(x, y));
        let action = action_table(ring.order(), order, |r, m| ring.mul(r, m));
        let names = (0..order).map(|x| ring.fmt_el(x)).collect();
        Self::assemble(
            format!("{} (regular)", ring.label()),
            ring.clone(),
            order,
            add,
            action,
            names,
            ModuleKind::Regular,
        )
    }

    /// Module with carrier `Z_{d₁} × … × Z_{d_k}` (mixed-radix indexing,
    /// first factor most significant) and the given action table
    /// (`ring.order × order`, row-major by ring element).
    pub fn explicit(
        ring: &Arc<FiniteRing>,
        factors: &[usize],
        action: Vec<Elem>,
        label: impl Into<String>,
    ) -> Result<Arc<FiniteModule>> {
        if factors.is_empty() || factors.iter().any(|&d| d == 0) {
            return Err(Error::InvalidConstruction(
                "explicit module: factors must be nonzero".into(),
            ));
        }
        let order: usize = factors.iter().product();
        if action.len() != ring.order() * order {
            return Err(Error::InvalidConstruction(format!(
                "explicit module: action table has {} entries, expected {}",
                action.len(),
                ring.order() * order
            )));
        }
        let fs = factors.to_vec();
        let dec = |x: usize| mixed_decode(x, &fs);
        let add = table(order, |x, y| {
            let (a, b) = (dec(x), dec(y));
            mixed_encode(
                &a.iter().zip(&b).zip(&fs).map(|((u, v), d)| (u + v) % d).collect::<Vec<_>>(),
                &fs,
            )
        });
        let names = (0..order)
            .map(|x| {
                if fs.len() == 1 {
                    x.to_string()
                } else {
                    let c = dec(x);
                    format!("({})", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        Self::assemble(label.into(), ring.clone(), order, add, action, names, ModuleKind::Explicit)
    }

    /// Direct product of modules over the same ring; mixed-radix indexing,
    /// first module most significant.
    pub fn product(modules: &[Arc<FiniteModule>]) -> Result<Arc<FiniteModule>> {
        let first = modules
            .first()
            .ok_or_else(|| Error::InvalidConstruction("module product: empty factor list".into()))?;
        let ring = first.ring.clone();
        for m in modules {
            if !Arc::ptr_eq(&m.ring, &ring) {
                return Err(Error::AmbientMismatch(
                    "module product: factors over different rings".into(),
                ));
            }
        }
        let orders: Vec<usize> = modules.iter().map(|m| m.order).collect();
        let order: usize = orders.iter().product();
        let dec = |x: usize| mixed_decode(x, &orders);
        let add = table(order, |x, y| {
            let (a, b) = (dec(x), dec(y));
            mixed_encode(
                &modules.iter().enumerate().map(|(i, m)| m.add(a[i], b[i])).collect::<Vec<_>>(),
                &orders,
            )
        });
        let action = action_table(ring.order(), order, |r, x| {
            let a = dec(x);
            mixed_encode(
                &modules.iter().enumerate().map(|(i, m)| m.act(r, a[i])).collect::<Vec<_>>(),
                &orders,
            )
        });
        let names = (0..order)
            .map(|x| {
                let c = dec(x);
                format!(
                    "({})",
                    modules
                        .iter()
                        .enumerate()
                        .map(|(i, m)| m.fmt_el(c[i]))
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        let label = modules.iter().map(|m| m.label.clone()).collect::<Vec<_>>().join("x");
        Self::assemble(label, ring, order, add, action, names, ModuleKind::Product(modules.to_vec()))
    }

    /// Build from raw parts (used for derived carriers such as `e·M`
    /// components and localized modules). Validates all module axioms.
    pub(crate) fn from_parts(
        label: impl Into<String>,
        ring: Arc<FiniteRing>,
        order: usize,
        add: Vec<Elem>,
        action: Vec<Elem>,
        names: Vec<String>,
    ) -> Result<Arc<FiniteModule>> {
        Self::assemble(label.into(), ring, order, add, action, names, ModuleKind::Derived)
    }

    fn assemble(
        label: String,
        ring: Arc<FiniteRing>,
        order: usize,
        add: Vec<Elem>,
        action: Vec<Elem>,
        names: Vec<String>,
        kind: ModuleKind,
    ) -> Result<Arc<FiniteModule>> {
        if order == 0 {
            return Err(Error::InvalidConstruction("module carrier is empty".into()));
        }
        validate_module(&ring, order, &add, &action)?;
        let mut neg = vec![0; order];
        for x in 0..order {
            neg[x] = (0..order)
                .find(|&y| add[x * order + y] == 0)
                .expect("validated group has inverses");
        }
        let (factors, invariant_factors) = if order == 1 {
            (vec![1], vec![1])
        } else {
            let (_, orders) = abelian_basis(order, &add);
            (orders.clone(), orders)
        };
        let factors = match &kind {
            ModuleKind::Regular | ModuleKind::Derived | ModuleKind::Product(_) => factors,
            ModuleKind::Explicit => factors, // replaced by the caller below when declared
        };
        Ok(Arc::new(FiniteModule {
            label,
            ring,
            order,
            add,
            neg,
            action,
            factors,
            invariant_factors,
            names,
            kind,
        }))
    }

    // ------------------------------------------------------------------
    // Accessors and arithmetic
    // ------------------------------------------------------------------

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    /// Cyclic factor orders of the carrier group (declared or basis-derived).
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Canonical invariant factors of the underlying abelian group.
    pub fn invariant_factors(&self) -> &[usize] {
        &self.invariant_factors
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn is_zero_module(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x * self.order + y]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x]
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// Ring action `r·m`.
    #[inline]
    pub fn act(&self, r: Elem, m: Elem) -> Elem {
        self.action[r * self.order + m]
    }

    pub fn fmt_el(&self, x: Elem) -> String {
        self.names[x].clone()
    }

    // ------------------------------------------------------------------
    // Submodules
    // ------------------------------------------------------------------

    /// The cyclic submodule `Rx`.
    pub fn cyclic(self: &Arc<Self>, x: Elem) -> Submodule {
        let mut seen = vec![false; self.order];
        for r in 0..self.ring.order() {
            seen[self.act(r, x)] = true;
        }
        Submodule {
            module: self.clone(),
            generators: vec![x],
            elements: (0..self.order).filter(|&i| seen[i]).collect(),
        }
    }

    /// The submodule generated by a set of elements.
    pub fn span(self: &Arc<Self>, gens: &[Elem]) -> Submodule {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        for &g in gens {
            // sumset with the cyclic submodule Rg
            let cyc: Vec<Elem> = {
                let mut c = vec![false; self.order];
                for r in 0..self.ring.order() {
                    c[self.act(r, g)] = true;
                }
                (0..self.order).filter(|&i| c[i]).collect()
            };
            let current: Vec<Elem> = (0..self.order).filter(|&i| seen[i]).collect();
            for &a in &current {
                for &b in &cyc {
                    seen[self.add(a, b)] = true;
                }
            }
        }
        Submodule {
            module: self.clone(),
            generators: gens.to_vec(),
            elements: (0..self.order).filter(|&i| seen[i]).collect(),
        }
    }

    /// Every submodule, exactly once, in canonical order (size, then
    /// lexicographic element list). Seeds with the cyclic submodules and
    /// closes under pairwise sum.
    pub fn enumerate_submodules(self: &Arc<Self>, cap: usize) -> Result<Vec<Submodule>> {
        if self.order > cap {
            return Err(Error::CapExceeded(format!(
                "submodule enumeration: module order {} exceeds cap {cap}",
                self.order
            )));
        }
        let mut sets: Vec<Vec<Elem>> = Vec::new();
        let push = |s: Vec<Elem>, sets: &mut Vec<Vec<Elem>>| -> bool {
            if sets.contains(&s) {
                false
            } else {
                sets.push(s);
                true
            }
        };
        for x in 0..self.order {
            let c = self.cyclic(x).elements;
            push(c, &mut sets);
        }
        loop {
            let mut grew = false;
            let snapshot = sets.clone();
            for a in &snapshot {
                for b in &snapshot {
                    let mut seen = vec![false; self.order];
                    for &x in a {
                        for &y in b {
                            seen[self.add(x, y)] = true;
                        }
                    }
                    let s: Vec<Elem> = (0..self.order).filter(|&i| seen[i]).collect();
                    if push(s, &mut sets) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(sets
            .into_iter()
            .map(|elements| {
                let generators = elements.clone();
                Submodule {
                    module: self.clone(),
                    generators,
                    elements,
                }
            })
            .collect())
    }

    /// All maximal cyclic submodules containing `Rx`.
    pub fn maximal_cyclic_over(self: &Arc<Self>, x: Elem) -> Vec<Submodule> {
        let base = self.cyclic(x);
        // Distinct cyclic submodules containing Rx.
        let mut cyclics: Vec<(Vec<Elem>, Elem)> = Vec::new();
        for y in 0..self.order {
            let c = self.cyclic(y);
            if is_subset(&base.elements, &c.elements)
                && !cyclics.iter().any(|(e, _)| *e == c.elements)
            {
                cyclics.push((c.elements, y));
            }
        }
        let maximal: Vec<(Vec<Elem>, Elem)> = cyclics
            .iter()
            .filter(|(e, _)| {
                !cyclics
                    .iter()
                    .any(|(f, _)| f.len() > e.len() && is_subset(e, f))
            })
            .cloned()
            .collect();
        let mut out: Vec<Submodule> = maximal
            .into_iter()
            .map(|(elements, g)| Submodule {
                module: self.clone(),
                generators: vec![g],
                elements,
            })
            .collect();
        out.sort_by(|a, b| (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements)));
        out
    }

    // ------------------------------------------------------------------
    // Predicates
    // ------------------------------------------------------------------

    /// Scalars annihilating some nonzero element, excluding 0:
    /// `{r≠0 : ∃m≠0, rm=0}`.
    pub fn zero_divisors_on(&self) -> Vec<Elem> {
        (1..self.ring.order())
            .filter(|&r| (1..self.order).any(|m| self.act(r, m) == 0))
            .collect()
    }

    /// Same as [`Self::zero_divisors_on`] but including 0 whenever the
    /// module is nonzero — the form closed-form theorem statements use.
    pub fn zero_divisors_inclusive(&self) -> Vec<Elem> {
        (0..self.ring.order())
            .filter(|&r| (1..self.order).any(|m| self.act(r, m) == 0))
            .collect()
    }

    /// `rm = m` forces `m = 0` or `r` a unit; with a counterexample.
    pub fn is_presimplifiable(&self) -> (bool, Option<(Elem, Elem)>) {
        for r in 0..self.ring.order() {
            if self.ring.is_unit(r) {
                continue;
            }
            for m in 1..self.order {
                if self.act(r, m) == m {
                    return (false, Some((r, m)));
                }
            }
        }
        (true, None)
    }

    /// Whether `sM = M`.
    pub fn saturated_by(&self, s: Elem) -> bool {
        let mut seen = vec![false; self.order];
        for m in 0..self.order {
            seen[self.act(s, m)] = true;
        }
        seen.iter().all(|&b| b)
    }

    /// Whether `sM = M` for every regular `s ∈ R` (every non-zero-divisor of
    /// the ring). Over a domain this is the usual divisibility (`rM = M` for
    /// all `r ≠ 0`).
    pub fn is_divisible(&self) -> bool {
        let zd = self.ring.zero_divisors_inclusive();
        (0..self.ring.order())
            .filter(|r| !zd.contains(r))
            .all(|s| self.saturated_by(s))
    }

    /// Strongly associate as a module: `Rm = Rn` forces `m = un` for a unit.
    pub fn is_strongly_associate(&self) -> (bool, Option<(Elem, Elem)>) {
        for m in 0..self.order {
            for n in 0..self.order {
                let rel = self.relate(m, n);
                if rel.sim && !rel.approx {
                    return (false, Some((m, n)));
                }
            }
        }
        (true, None)
    }

    // ------------------------------------------------------------------
    // Element relations
    // ------------------------------------------------------------------

    /// Associate relations between two elements of this module.
    pub fn relate(&self, x: Elem, y: Elem) -> AssociateReport {
        let rx = self.cyclic_set(x);
        let ry = self.cyclic_set(y);
        let sim = rx == ry;
        let approx = (0..self.ring.order())
            .any(|u| self.ring.is_unit(u) && self.act(u, y) == x);
        let cong = sim
            && (x == 0 && y == 0
                || (0..self.ring.order()).all(|r| self.act(r, y) != x || self.ring.is_unit(r)));
        AssociateReport { sim, approx, cong }
    }

    fn cyclic_set(&self, x: Elem) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        for r in 0..self.ring.order() {
            seen[self.act(r, x)] = true;
        }
        seen
    }

    /// Primitivity profile of a single element.
    pub fn primitivity(self: &Arc<Self>, x: Elem) -> PrimitivityProfile {
        let rn = self.ring.order();
        // Primitive: Rx is a maximal cyclic submodule.
        let rx = self.cyclic_set(x);
        let mut primitive = true;
        for y in 0..self.order {
            let ry = self.cyclic_set(y);
            if rx != ry && subset_bits(&rx, &ry) {
                primitive = false;
                break;
            }
        }
        // x = af ⇒ x ≈ f (strongly) / x ≅ f (very strongly).
        let mut strongly = true;
        let mut very_strongly = true;
        'outer: for a in 0..rn {
            for f in 0..self.order {
                if self.act(a, f) == x {
                    let rel = self.relate(x, f);
                    if !rel.approx {
                        strongly = false;
                    }
                    if !rel.cong {
                        very_strongly = false;
                    }
                    if !strongly && !very_strongly {
                        break 'outer;
                    }
                }
            }
        }
        // Superprimitive: bx = af ⇒ a | b.
        let mut superprimitive = true;
        'sup: for a in 0..rn {
            let a_div: Vec<bool> = {
                let mut d = vec![false; rn];
                for c in 0..rn {
                    d[self.ring.mul(c, a)] = true;
                }
                d
            };
            for b in 0..rn {
                if a_div[b] {
                    continue;
                }
                let bx = self.act(b, x);
                if (0..self.order).any(|f| self.act(a, f) == bx) {
                    superprimitive = false;
                    break 'sup;
                }
            }
        }
        PrimitivityProfile {
            primitive,
            strongly_primitive: strongly,
            very_strongly_primitive: very_strongly,
            superprimitive,
        }
    }
}

/// Associate relations: `sim` (`∼`, equal cyclic submodules / principal
/// ideals), `approx` (`≈`, unit multiple), `cong` (`≅`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AssociateReport {
    pub sim: bool,
    pub approx: bool,
    pub cong: bool,
}

/// Primitivity flags of a module element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimitivityProfile {
    /// `Rx` is a maximal cyclic submodule.
    pub primitive: bool,
    /// `x = af` forces `x ≈ f`.
    pub strongly_primitive: bool,
    /// `x = af` forces `x ≅ f`.
    pub very_strongly_primitive: bool,
    /// `bx = af` forces `a | b`.
    pub superprimitive: bool,
}

/// A submodule: closed element set with the generators that produced it.
#[derive(Clone)]
pub struct Submodule {
    pub module: Arc<FiniteModule>,
    pub generators: Vec<Elem>,
    /// Sorted, deduplicated, closed under addition, negation, and action.
    pub elements: Vec<Elem>,
}

impl std::fmt::Debug for Submodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Submodule{:?}", self.elements)
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for Submodule {}

impl Submodule {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.module.order()
    }

    pub fn is_zero(&self) -> bool {
        self.elements == [0]
    }
}

fn is_subset(a: &[Elem], b: &[Elem]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn subset_bits(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

fn table(order: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Elem> {
    let mut t = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            t[x * order + y] = f(x, y);
        }
    }
    t
}

fn action_table(rn: usize, order: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Elem> {
    let mut t = vec![0; rn * order];
    for r in 0..rn {
        for m in 0..order {
            t[r * order + m] = f(r, m);
        }
    }
    t
}

pub(crate) fn mixed_decode(x: usize, radix: &[usize]) -> Vec<usize> {
    let mut rest = x;
    let mut out = vec![0; radix.len()];
    for (i, &d) in radix.iter().enumerate().rev() {
        out[i] = rest % d;
        rest /= d;
    }
    out
}

pub(crate) fn mixed_encode(coords: &[usize], radix: &[usize]) -> usize {
    coords
        .iter()
        .zip(radix)
        .fold(0, |acc, (&c, &d)| acc * d + c)
}

fn validate_module(ring: &FiniteRing, order: usize, add: &[Elem], action: &[Elem]) -> Result<()> {
    let rn = ring.order();
    for (name, t, len) in [("add", add, order * order), ("action", action, rn * order)] {
        if t.len() != len {
            return Err(Error::InvalidConstruction(format!(
                "module {name} table has {} entries, expected {len}",
                t.len()
            )));
        }
        if t.iter().any(|&v| v >= order) {
            return Err(Error::InvalidConstruction(format!(
                "module {name} table entry out of range"
            )));
        }
    }
    let addf = |x: usize, y: usize| add[x * order + y];
    let actf = |r: usize, m: usize| action[r * order + m];
    // Abelian group laws.
    for x in 0..order {
        if addf(x, 0) != x {
            return Err(Error::AxiomViolation {
                law: "module zero at index 0".into(),
                witness: format!("m={x}"),
            });
        }
        if (0..order).all(|y| addf(x, y) != 0) {
            return Err(Error::AxiomViolation {
                law: "module additive inverse exists".into(),
                witness: format!("m={x}"),
            });
        }
        for y in 0..order {
            if addf(x, y) != addf(y, x) {
                return Err(Error::AxiomViolation {
                    law: "module addition commutes".into(),
                    witness: format!("({x},{y})"),
                });
            }
            for z in 0..order {
                if addf(addf(x, y), z) != addf(x, addf(y, z)) {
                    return Err(Error::AxiomViolation {
                        law: "module addition associates".into(),
                        witness: format!("({x},{y},{z})"),
                    });
                }
            }
        }
    }
    // Action laws: r(m+m') = rm+rm'; (r+s)m = rm+sm; (rs)m = r(sm); 1m = m.
    for m in 0..order {
        if actf(ring.one(), m) != m {
            return Err(Error::AxiomViolation {
                law: "action is unitary (1·m = m)".into(),
                witness: format!("m={m}"),
            });
        }
    }
    for r in 0..rn {
        for m in 0..order {
            for m2 in 0..order {
                if actf(r, addf(m, m2)) != addf(actf(r, m), actf(r, m2)) {
                    return Err(Error::AxiomViolation {
                        law: "action distributes over module addition".into(),
                        witness: format!("(r={r},{m},{m2})"),
                    });
                }
            }
            for s in 0..rn {
                if actf(ring.add(r, s), m) != addf(actf(r, m), actf(s, m)) {
                    return Err(Error::AxiomViolation {
                        law: "action distributes over ring addition".into(),
                        witness: format!("(r={r},s={s},m={m})"),
                    });
                }
                if actf(ring.mul(r, s), m) != actf(r, actf(s, m)) {
                    return Err(Error::AxiomViolation {
                        law: "action respects ring multiplication".into(),
                        witness: format!("(r={r},s={s},m={m})"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// The field `GF(p^k)` viewed as a module over a subring of itself: the
/// carrier and addition of `big`, with scalars restricted to the image of
/// the subring embedding `r ↦ r` (indices must agree on the subring).
///
/// Convenience for towers like `F₂ ⊂ F₄` where the prime subfield occupies
/// indices `0..p` in both rings.
pub fn subring_module(
    small: &Arc<FiniteRing>,
    big: &Arc<FiniteRing>,
    label: impl Into<String>,
) -> Result<Arc<FiniteModule>> {
    // Verify the index-identity embedding is a unital ring homomorphism.
    for x in 0..small.order() {
        for y in 0..small.order() {
            let (a, m) = (small.add(x, y), small.mul(x, y));
            if a >= big.order() || big.add(x, y) != a || big.mul(x, y) != m {
                return Err(Error::InvalidConstruction(format!(
                    "subring_module: indices 0..{} of {} do not embed in {}",
                    small.order(),
                    small.label(),
                    big.label()
                )));
            }
        }
    }
    if small.one() != big.one() {
        return Err(Error::InvalidConstruction(
            "subring_module: embeddings must preserve 1".into(),
        ));
    }
    let order = big.order();
    let mut add = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            add[x * order + y] = big.add(x, y);
        }
    }
    let action = action_table(small.order(), order, |r, m| big.mul(r, m));
    let names = (0..order).map(|x| big.fmt_el(x)).collect();
    FiniteModule::from_parts(label, small.clone(), order, add, action, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_regular() -> Arc<FiniteModule> {
        FiniteModule::regular(&FiniteRing::zm(4).unwrap()).unwrap()
    }

    #[test]
    fn regular_action_is_ring_multiplication() {
        let m = z4_regular();
        assert_eq!(m.act(2, 3), 2);
        assert_eq!(m.act(3, 3), 1);
        assert_eq!(m.order(), 4);
        assert_eq!(m.invariant_factors(), &[4]);
    }

    #[test]
    fn cyclic_submodules_of_z4() {
        let m = z4_regular();
        assert_eq!(m.cyclic(1).elements, vec![0, 1, 2, 3]);
        assert_eq!(m.cyclic(2).elements, vec![0, 2]);
        assert_eq!(m.cyclic(0).elements, vec![0]);
    }

    #[test]
    fn f4_over_f2_has_five_submodules() {
        let f2 = FiniteRing::gf(2).unwrap();
        let f4 = FiniteRing::gf(4).unwrap();
        let m = subring_module(&f2, &f4, "F4 over F2").unwrap();
        let subs = m.enumerate_submodules(256).unwrap();
        // zero, three 1-dimensional subspaces, and the whole space
        assert_eq!(subs.len(), 5);
        assert_eq!(subs[0].elements, vec![0]);
        assert_eq!(subs[4].elements, vec![0, 1, 2, 3]);
        assert!(m.is_divisible());
    }

    #[test]
    fn z4_module_zero_divisors() {
        let m = z4_regular();
        assert_eq!(m.zero_divisors_on(), vec![2]);
        assert_eq!(m.zero_divisors_inclusive(), vec![0, 2]);
    }

    #[test]
    fn z6_regular_not_presimplifiable() {
        let m = FiniteModule::regular(&FiniteRing::zm(6).unwrap()).unwrap();
        let (ok, wit) = m.is_presimplifiable();
        assert!(!ok);
        assert_eq!(wit, Some((3, 3)));
    }

    #[test]
    fn explicit_componentwise_f2_squared() {
        let f2 = FiniteRing::gf(2).unwrap();
        // F2 × F2 with componentwise action: action table 2×4.
        let action = vec![0, 0, 0, 0, 0, 1, 2, 3];
        let m = FiniteModule::explicit(&f2, &[2, 2], action, "F2^2").unwrap();
        assert_eq!(m.order(), 4);
        assert_eq!(m.fmt_el(2), "(1,0)");
        assert_eq!(m.add(2, 1), 3);
        assert_eq!(m.add(3, 3), 0);
        // (1,0) is primitive: R(1,0) = {0,(1,0)} is maximal cyclic.
        let prof = m.primitivity(2);
        assert!(prof.primitive);
    }

    #[test]
    fn relations_in_regular_z4() {
        let m = z4_regular();
        let rel = m.relate(1, 3);
        assert!(rel.sim && rel.approx);
        let rel = m.relate(0, 0);
        assert!(rel.sim && rel.approx && rel.cong);
        let rel = m.relate(1, 2);
        assert!(!rel.sim);
    }

    #[test]
    fn maximal_cyclic_over_in_z4() {
        let m = z4_regular();
        let maxes = m.maximal_cyclic_over(2);
        // R·2 = {0,2} ⊂ R·1 = everything; the only maximal cyclic over it is R itself.
        assert_eq!(maxes.len(), 1);
        assert_eq!(maxes[0].elements, vec![0, 1, 2, 3]);
    }

    #[test]
    fn superprimitive_unit_generator() {
        // In the regular module Z4, 1 is superprimitive: b·1 = a·f ⇒ a | b.
        let m = z4_regular();
        let prof = m.primitivity(1);
        assert!(prof.superprimitive);
        assert!(prof.very_strongly_primitive);
        // 2 is not primitive (R·2 ⊂ R·1).
        assert!(!m.primitivity(2).primitive);
    }

    #[test]
    fn divisibility_over_z6() {
        // Regular Z6: regular elements are units {1,5}, so sM = M holds — divisible.
        let m = FiniteModule::regular(&FiniteRing::zm(6).unwrap()).unwrap();
        assert!(m.is_divisible());
        // Regular Z4: 1,3 are the regular elements; divisible too.
        assert!(z4_regular().is_divisible());
    }

    #[test]
    fn module_product_componentwise() {
        let r = FiniteRing::zm(2).unwrap();
        let a = FiniteModule::regular(&r).unwrap();
        let b = FiniteModule::regular(&r).unwrap();
        let p = FiniteModule::product(&[a, b]).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p.act(1, 3), 3);
        assert_eq!(p.add(2, 3), 1);
        assert_eq!(p.fmt_el(3), "(1,1)");
    }

    #[test]
    fn bad_action_rejected() {
        let r = FiniteRing::zm(2).unwrap();
        // Break unitarity: 1·m = 0.
        let action = vec![0, 0, 0, 0];
        assert!(FiniteModule::explicit(&r, &[2], action, "bad").is_err());
    }
}
