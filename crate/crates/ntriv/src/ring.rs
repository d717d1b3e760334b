//! Finite commutative rings with identity, stored as flat Cayley tables.
//!
//! Elements are carrier indices `0..order` with index 0 the additive
//! identity. Constructors cover the residue rings `Z_m`, Galois fields
//! `GF(p^k)`, finite direct products, quotients by an ideal, and raw tables.
//! Every constructor validates the ring axioms, exhaustively up to a
//! configurable order cap and by seeded random sampling beyond it.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Error, Result};

/// A ring element: an index into the carrier `0..order`.
pub type Elem = usize;

/// How a ring was built; drives element display and structural shortcuts
/// (e.g. the direct-product decomposition).
#[derive(Debug, Clone)]
pub enum RingKind {
    /// Residue ring `Z_m`; index `i` is the residue `i`.
    Zm { m: usize },
    /// Galois field `GF(p^k)`; index `Σ cᵢ pⁱ` is the polynomial `Σ cᵢ xⁱ`
    /// reduced modulo a fixed irreducible monic polynomial.
    Gf { p: usize, k: usize, modulus: Vec<usize> },
    /// Direct product; index is mixed-radix over the factors, first factor
    /// most significant.
    Product { factors: Vec<Arc<FiniteRing>> },
    /// Quotient of `base` by an ideal; index `i` is the coset whose least
    /// base element is `reps[i]`.
    Quotient {
        base: Arc<FiniteRing>,
        reps: Vec<Elem>,
        class_of: Vec<usize>,
    },
    /// Raw Cayley tables with no further structure.
    Tables,
}

/// Controls how much of the O(order³) axiom check runs at construction.
#[derive(Debug, Clone)]
pub struct ValidationPolicy {
    /// Orders at or below this are validated exhaustively.
    pub order_cap: usize,
    /// Number of random triples sampled beyond the cap.
    pub samples: usize,
    /// Seed for the sampling RNG (fixed for reproducibility).
    pub seed: u64,
}

impl Default for ValidationPolicy {
    fn default() -> Self {
        ValidationPolicy {
            order_cap: 4096,
            samples: 4096,
            seed: 0x00_5eed,
        }
    }
}

/// Outcome of construction-time validation.
#[derive(Debug, Clone, Serialize)]
pub struct Validation {
    /// True when every axiom was checked on every tuple.
    pub exhaustive: bool,
    /// Present when validation was sampled or skipped; explains why the
    /// guarantee is weaker than exhaustive.
    pub warning: Option<String>,
}

/// A finite commutative ring with identity.
///
/// Immutable after construction; all operations are pure table lookups, so
/// concurrent reads are safe. Wrap in [`Arc`] to share between modules and
/// extensions.
pub struct FiniteRing {
    label: String,
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    one: Elem,
    unit: Vec<bool>,
    kind: RingKind,
    validation: Validation,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteRing {
    // ------------------------------------------------------------------
    // Constructors
    // ------------------------------------------------------------------

    /// The residue ring `Z_m` (`m ≥ 2`); index `i` represents the residue `i`.
    pub fn zm(m: usize) -> Result<Arc<FiniteRing>> {
        if m < 2 {
            return Err(Error::InvalidConstruction(format!(
                "zm({m}): modulus must be at least 2 (the trivial ring is rejected)"
            )));
        }
        let add = table(m, |x, y| (x + y) % m);
        let mul = table(m, |x, y| (x * y) % m);
        Self::assemble(format!("Z{m}"), m, add, mul, RingKind::Zm { m }, &ValidationPolicy::default())
    }

    /// The Galois field `GF(q)` for a prime power `q = p^k`.
    ///
    /// Elements are polynomials over `Z_p` reduced modulo the first monic
    /// irreducible polynomial of degree `k` in coefficient-lexicographic
    /// order; index encoding is `Σ cᵢ pⁱ`, so the prime subfield occupies
    /// indices `0..p`.
    pub fn gf(q: usize) -> Result<Arc<FiniteRing>> {
        let (p, k) = prime_power(q).ok_or_else(|| {
            Error::InvalidConstruction(format!("gf({q}): order must be a prime power"))
        })?;
        if k == 1 {
            let r = Self::zm(p)?;
            // Rebuild under the Gf kind so the label and metadata say "field".
            return Self::assemble(
                format!("F{q}"),
                p,
                r.add.clone(),
                r.mul.clone(),
                RingKind::Gf { p, k, modulus: vec![0, 1] },
                &ValidationPolicy::default(),
            );
        }
        let modulus = first_irreducible(p, k);
        let add = table(q, |x, y| {
            let (a, b) = (digits(x, p, k), digits(y, p, k));
            undigits(&a.iter().zip(&b).map(|(u, v)| (u + v) % p).collect::<Vec<_>>(), p)
        });
        let mul = table(q, |x, y| {
            undigits(&poly_mulmod(&digits(x, p, k), &digits(y, p, k), &modulus, p), p)
        });
        Self::assemble(format!("F{q}"), q, add, mul, RingKind::Gf { p, k, modulus }, &ValidationPolicy::default())
    }

    /// Finite direct product of rings; index is mixed-radix over the
    /// factors, first factor most significant.
    pub fn product(factors: &[Arc<FiniteRing>]) -> Result<Arc<FiniteRing>> {
        if factors.is_empty() {
            return Err(Error::InvalidConstruction("product: need at least one factor".into()));
        }
        let order: usize = factors.iter().map(|f| f.order).product();
        let fs: Vec<Arc<FiniteRing>> = factors.to_vec();
        let dec = |x: usize| -> Vec<usize> {
            let mut rest = x;
            let mut out = vec![0; fs.len()];
            for (i, f) in fs.iter().enumerate().rev() {
                out[i] = rest % f.order;
                rest /= f.order;
            }
            out
        };
        let enc = |coords: &[usize]| -> usize {
            let mut out = 0;
            for (i, f) in fs.iter().enumerate() {
                out = out * f.order + coords[i];
            }
            out
        };
        let add = table(order, |x, y| {
            let (a, b) = (dec(x), dec(y));
            enc(&fs.iter().enumerate().map(|(i, f)| f.add(a[i], b[i])).collect::<Vec<_>>())
        });
        let mul = table(order, |x, y| {
            let (a, b) = (dec(x), dec(y));
            enc(&fs.iter().enumerate().map(|(i, f)| f.mul(a[i], b[i])).collect::<Vec<_>>())
        });
        let label = fs.iter().map(|f| f.label.clone()).collect::<Vec<_>>().join("x");
        Self::assemble(label, order, add, mul, RingKind::Product { factors: fs }, &ValidationPolicy::default())
    }

    /// Quotient of `base` by the ideal with the given element set.
    ///
    /// The set must be a proper ideal of `base` (additive subgroup absorbing
    /// multiplication, not containing 1). Cosets are indexed by their least
    /// element, in ascending order of that representative.
    pub fn quotient(base: &Arc<FiniteRing>, ideal: &[Elem]) -> Result<Arc<FiniteRing>> {
        let mut in_ideal = vec![false; base.order];
        for &x in ideal {
            if x >= base.order {
                return Err(Error::InvalidConstruction(format!(
                    "quotient: element {x} out of range for {}",
                    base.label
                )));
            }
            in_ideal[x] = true;
        }
        if !in_ideal[0] {
            return Err(Error::InvalidConstruction("quotient: ideal must contain 0".into()));
        }
        if in_ideal[base.one] {
            return Err(Error::InvalidConstruction("quotient: ideal is improper (contains 1)".into()));
        }
        for &x in ideal {
            for &y in ideal {
                if !in_ideal[base.add(x, y)] {
                    return Err(Error::InvalidConstruction(format!(
                        "quotient: set not closed under addition at ({x},{y})"
                    )));
                }
            }
            for r in 0..base.order {
                if !in_ideal[base.mul(r, x)] {
                    return Err(Error::InvalidConstruction(format!(
                        "quotient: set not absorbing at r={r}, x={x}"
                    )));
                }
            }
        }
        // Partition into cosets, keyed by least element.
        let mut class_of = vec![usize::MAX; base.order];
        let mut reps = Vec::new();
        for x in 0..base.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &i in ideal {
                class_of[base.add(x, i)] = id;
            }
        }
        let order = reps.len();
        let add = table(order, |x, y| class_of[base.add(reps[x], reps[y])]);
        let mul = table(order, |x, y| class_of[base.mul(reps[x], reps[y])]);
        if order < 2 {
            return Err(Error::InvalidConstruction("quotient: result is the trivial ring".into()));
        }
        let label = format!("{}/I{}", base.label, ideal.len());
        let base = base.clone();
        Self::assemble(label, order, add, mul, RingKind::Quotient { base, reps, class_of }, &ValidationPolicy::default())
    }

    /// Build from raw addition and multiplication tables (row-major,
    /// `order × order`), validating every ring axiom under `policy`.
    pub fn from_tables(
        label: impl Into<String>,
        order: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        policy: &ValidationPolicy,
    ) -> Result<Arc<FiniteRing>> {
        Self::assemble(label.into(), order, add, mul, RingKind::Tables, policy)
    }

    /// Build from tables whose ring axioms are already guaranteed by a
    /// validated construction (flattened extensions: the bilinearity,
    /// symmetry, and associativity of the product-map family imply the ring
    /// axioms of the convolution product, so re-running the O(order³) scan
    /// is redundant). Identity, negation, and table-range checks still run.
    pub(crate) fn from_tables_trusted(
        label: impl Into<String>,
        order: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        note: &str,
    ) -> Result<Arc<FiniteRing>> {
        let neg = find_negs(order, &add)?;
        let one = find_one(order, &mul)?;
        let unit = unit_table(order, &mul, one);
        Ok(Arc::new(FiniteRing {
            label: label.into(),
            order,
            add,
            mul,
            neg,
            one,
            unit,
            kind: RingKind::Tables,
            validation: Validation {
                exhaustive: false,
                warning: Some(format!("axioms guaranteed by construction: {note}")),
            },
        }))
    }

    fn assemble(
        label: String,
        order: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        kind: RingKind,
        policy: &ValidationPolicy,
    ) -> Result<Arc<FiniteRing>> {
        let validation = validate_tables(order, &add, &mul, policy)?;
        let neg = find_negs(order, &add)?;
        let one = find_one(order, &mul)?;
        let unit = unit_table(order, &mul, one);
        Ok(Arc::new(FiniteRing {
            label,
            order,
            add,
            mul,
            neg,
            one,
            unit,
            kind,
            validation,
        }))
    }

    // ------------------------------------------------------------------
    // Arithmetic and basic accessors
    // ------------------------------------------------------------------

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn validation(&self) -> &Validation {
        &self.validation
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x * self.order + y]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x]
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// `k · x` (repeated addition; `k` taken as a non-negative integer).
    pub fn smul(&self, k: usize, x: Elem) -> Elem {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.add(acc, x);
        }
        acc
    }

    #[inline]
    pub fn is_unit(&self, x: Elem) -> bool {
        self.unit[x]
    }

    /// Multiplicative inverse of a unit, if it is one.
    pub fn inv(&self, x: Elem) -> Option<Elem> {
        (0..self.order).find(|&y| self.mul(x, y) == self.one)
    }

    /// Additive order of `x` (least `k ≥ 1` with `k·x = 0`).
    pub fn additive_order(&self, x: Elem) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    /// The principal ideal `Rx = {rx : r ∈ R}` as a sorted element list.
    pub fn principal(&self, x: Elem) -> Vec<Elem> {
        let mut seen = vec![false; self.order];
        for r in 0..self.order {
            seen[self.mul(r, x)] = true;
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    /// Units as a sorted list.
    pub fn unit_list(&self) -> Vec<Elem> {
        (0..self.order).filter(|&x| self.unit[x]).collect()
    }

    /// Zero divisors in the inclusive sense: `{x : ∃y≠0, xy=0}`.
    /// Contains 0 for every (nontrivial) ring. The user-facing
    /// classification excludes 0; closed-form theorem checks use this set.
    pub fn zero_divisors_inclusive(&self) -> Vec<Elem> {
        (0..self.order)
            .filter(|&x| (1..self.order).any(|y| self.mul(x, y) == 0))
            .collect()
    }

    /// Nilpotent elements `{x : xᵏ = 0 for some k ≤ order}`.
    pub fn nilpotents(&self) -> Vec<Elem> {
        (0..self.order).filter(|&x| self.is_nilpotent(x)).collect()
    }

    pub fn is_nilpotent(&self, x: Elem) -> bool {
        let mut acc = x;
        for _ in 0..self.order {
            if acc == 0 {
                return true;
            }
            acc = self.mul(acc, x);
        }
        acc == 0
    }

    /// The Jacobson radical `{x : 1 − xy is a unit for every y}`, computed
    /// straight from that characterization (no ideal enumeration).
    pub fn jacobson_radical(&self) -> Vec<Elem> {
        (0..self.order)
            .filter(|&x| {
                (0..self.order).all(|y| self.unit[self.sub(self.one, self.mul(x, y))])
            })
            .collect()
    }

    /// Canonical display string for an element.
    pub fn fmt_el(&self, x: Elem) -> String {
        match &self.kind {
            RingKind::Zm { .. } | RingKind::Gf { .. } | RingKind::Tables => x.to_string(),
            RingKind::Product { factors } => {
                let coords = self.product_decode(x);
                let parts: Vec<String> = factors
                    .iter()
                    .zip(&coords)
                    .map(|(f, &c)| f.fmt_el(c))
                    .collect();
                format!("({})", parts.join(","))
            }
            RingKind::Quotient { base, reps, .. } => format!("[{}]", base.fmt_el(reps[x])),
        }
    }

    /// Decompose a product-ring index into per-factor indices.
    /// Returns a singleton for non-product rings.
    pub fn product_decode(&self, x: Elem) -> Vec<Elem> {
        match &self.kind {
            RingKind::Product { factors } => {
                let mut rest = x;
                let mut out = vec![0; factors.len()];
                for (i, f) in factors.iter().enumerate().rev() {
                    out[i] = rest % f.order;
                    rest /= f.order;
                }
                out
            }
            _ => vec![x],
        }
    }

    /// Inverse of [`product_decode`].
    pub fn product_encode(&self, coords: &[Elem]) -> Elem {
        match &self.kind {
            RingKind::Product { factors } => {
                let mut out = 0;
                for (i, f) in factors.iter().enumerate() {
                    out = out * f.order + coords[i];
                }
                out
            }
            _ => coords[0],
        }
    }

    // ------------------------------------------------------------------
    // Classification and predicates
    // ------------------------------------------------------------------

    /// Exhaustive element classification.
    pub fn classify(&self) -> RingClassification {
        let units = self.unit_list();
        let zero_divisors = self
            .zero_divisors_inclusive()
            .into_iter()
            .filter(|&x| x != 0)
            .collect();
        let idempotents = (0..self.order).filter(|&x| self.mul(x, x) == x).collect();
        let nilpotents = self.nilpotents();
        RingClassification {
            units,
            zero_divisors,
            idempotents,
            nilpotents,
        }
    }

    /// Exhaustive structural predicates.
    pub fn predicates(&self) -> RingPredicates {
        let cls = self.classify();
        let is_domain = cls.zero_divisors.is_empty();
        let is_field = cls.units.len() == self.order - 1;
        // A finite commutative ring is local exactly when its nonunits are
        // closed under addition (they then form the unique maximal ideal).
        // The ideal-lattice module cross-checks this against the enumerated
        // maximal ideals.
        let mut is_local = true;
        'outer: for x in 0..self.order {
            if self.unit[x] {
                continue;
            }
            for y in 0..self.order {
                if !self.unit[y] && self.unit[self.add(x, y)] {
                    is_local = false;
                    break 'outer;
                }
            }
        }
        let mut presimplifiable = true;
        let mut presimplifiable_witness = None;
        'pre: for a in 0..self.order {
            for b in 0..self.order {
                if self.mul(a, b) == a && a != 0 && !self.unit[b] {
                    presimplifiable = false;
                    presimplifiable_witness = Some((a, b));
                    break 'pre;
                }
            }
        }
        let (strongly_associate, strongly_associate_witness) = self.strongly_associate();
        RingPredicates {
            is_domain,
            is_field,
            is_local,
            is_presimplifiable: presimplifiable,
            presimplifiable_witness,
            is_strongly_associate: strongly_associate,
            strongly_associate_witness,
        }
    }

    /// Whether `⟨a⟩ = ⟨b⟩` always forces `a = ub` for a unit `u`; with a
    /// counterexample pair when it does not.
    fn strongly_associate(&self) -> (bool, Option<(Elem, Elem)>) {
        let mut groups: BTreeMap<Vec<Elem>, Vec<Elem>> = BTreeMap::new();
        for x in 0..self.order {
            groups.entry(self.principal(x)).or_default().push(x);
        }
        for members in groups.values() {
            for &a in members {
                // Orbit of a under unit multiplication.
                let mut orbit = vec![false; self.order];
                for u in 0..self.order {
                    if self.unit[u] {
                        orbit[self.mul(u, a)] = true;
                    }
                }
                for &b in members {
                    if !orbit[b] {
                        return (false, Some((b, a)));
                    }
                }
            }
        }
        (true, None)
    }

    /// Associate relations between two ring elements: `∼` (equal principal
    /// ideals), `≈` (unit multiple), `≅` (`∼` and, unless both are zero,
    /// every `r` with `a = rb` is a unit).
    pub fn associates(&self, a: Elem, b: Elem) -> (bool, bool, bool) {
        let sim = self.principal(a) == self.principal(b);
        let approx = (0..self.order).any(|u| self.unit[u] && self.mul(u, b) == a);
        let cong = sim
            && (a == 0 && b == 0
                || (0..self.order).all(|r| self.mul(r, b) != a || self.unit[r]));
        (sim, approx, cong)
    }
}

/// Exhaustive element classification of a ring.
///
/// `zero_divisors` excludes 0 (the reported set is `{x≠0 : ∃y≠0, xy=0}`);
/// the inclusive set used by closed-form theorem statements is available as
/// [`FiniteRing::zero_divisors_inclusive`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingClassification {
    pub units: Vec<Elem>,
    pub zero_divisors: Vec<Elem>,
    pub idempotents: Vec<Elem>,
    pub nilpotents: Vec<Elem>,
}

/// Structural predicates of a ring, with counterexample witnesses where a
/// universally quantified law fails.
#[derive(Debug, Clone, Serialize)]
pub struct RingPredicates {
    pub is_domain: bool,
    pub is_field: bool,
    pub is_local: bool,
    /// `ab = a` forces `a = 0` or `b` a unit.
    pub is_presimplifiable: bool,
    pub presimplifiable_witness: Option<(Elem, Elem)>,
    /// `⟨a⟩ = ⟨b⟩` forces `a = ub` for a unit `u`.
    pub is_strongly_associate: bool,
    pub strongly_associate_witness: Option<(Elem, Elem)>,
}

// ----------------------------------------------------------------------
// Table construction and validation helpers
// ----------------------------------------------------------------------

fn table(order: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Elem> {
    let mut t = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            t[x * order + y] = f(x, y);
        }
    }
    t
}

fn find_negs(order: usize, add: &[Elem]) -> Result<Vec<Elem>> {
    let mut neg = vec![usize::MAX; order];
    for x in 0..order {
        for y in 0..order {
            if add[x * order + y] == 0 {
                neg[x] = y;
                break;
            }
        }
        if neg[x] == usize::MAX {
            return Err(Error::AxiomViolation {
                law: "additive inverse exists".into(),
                witness: format!("x={x}"),
            });
        }
    }
    Ok(neg)
}

fn find_one(order: usize, mul: &[Elem]) -> Result<Elem> {
    for e in 0..order {
        if (0..order).all(|x| mul[e * order + x] == x && mul[x * order + e] == x) {
            if e == 0 {
                return Err(Error::InvalidConstruction(
                    "trivial ring rejected: 1 = 0".into(),
                ));
            }
            return Ok(e);
        }
    }
    Err(Error::AxiomViolation {
        law: "multiplicative identity exists".into(),
        witness: "no element acts as 1".into(),
    })
}

fn unit_table(order: usize, mul: &[Elem], one: Elem) -> Vec<bool> {
    let mut unit = vec![false; order];
    for x in 0..order {
        if (0..order).any(|y| mul[x * order + y] == one) {
            unit[x] = true;
        }
    }
    unit
}

fn validate_tables(
    order: usize,
    add: &[Elem],
    mul: &[Elem],
    policy: &ValidationPolicy,
) -> Result<Validation> {
    if order < 2 {
        return Err(Error::InvalidConstruction(
            "trivial ring rejected: order must be at least 2".into(),
        ));
    }
    if add.len() != order * order || mul.len() != order * order {
        return Err(Error::InvalidConstruction(format!(
            "table size mismatch: expected {}, got add={}, mul={}",
            order * order,
            add.len(),
            mul.len()
        )));
    }
    for (name, t) in [("add", add), ("mul", mul)] {
        if let Some(pos) = t.iter().position(|&v| v >= order) {
            return Err(Error::InvalidConstruction(format!(
                "{name} table entry out of range at ({},{})",
                pos / order,
                pos % order
            )));
        }
    }
    // Pairwise laws are always exhaustive (O(order²)).
    for x in 0..order {
        if add[x * order] != x {
            return Err(Error::AxiomViolation {
                law: "0 is the additive identity at index 0".into(),
                witness: format!("x={x}"),
            });
        }
        for y in 0..order {
            if add[x * order + y] != add[y * order + x] {
                return Err(Error::AxiomViolation {
                    law: "addition commutes".into(),
                    witness: format!("({x},{y})"),
                });
            }
            if mul[x * order + y] != mul[y * order + x] {
                return Err(Error::AxiomViolation {
                    law: "multiplication commutes".into(),
                    witness: format!("({x},{y})"),
                });
            }
        }
    }
    // Triple laws: exhaustive below the cap, sampled beyond.
    let check_triple = |x: usize, y: usize, z: usize| -> Result<()> {
        let a = add[add[x * order + y] * order + z];
        let b = add[x * order + add[y * order + z]];
        if a != b {
            return Err(Error::AxiomViolation {
                law: "addition associates".into(),
                witness: format!("({x},{y},{z})"),
            });
        }
        let a = mul[mul[x * order + y] * order + z];
        let b = mul[x * order + mul[y * order + z]];
        if a != b {
            return Err(Error::AxiomViolation {
                law: "multiplication associates".into(),
                witness: format!("({x},{y},{z})"),
            });
        }
        let a = mul[x * order + add[y * order + z]];
        let b = add[mul[x * order + y] * order + mul[x * order + z]];
        if a != b {
            return Err(Error::AxiomViolation {
                law: "multiplication distributes over addition".into(),
                witness: format!("({x},{y},{z})"),
            });
        }
        Ok(())
    };
    if order <= policy.order_cap {
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    check_triple(x, y, z)?;
                }
            }
        }
        Ok(Validation {
            exhaustive: true,
            warning: None,
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
        for _ in 0..policy.samples {
            let (x, y, z) = (
                rng.gen_range(0..order),
                rng.gen_range(0..order),
                rng.gen_range(0..order),
            );
            check_triple(x, y, z)?;
        }
        Ok(Validation {
            exhaustive: false,
            warning: Some(format!(
                "order {} exceeds the exhaustive cap {}; associativity and distributivity checked on {} random triples (seed {:#x})",
                order, policy.order_cap, policy.samples, policy.seed
            )),
        })
    }
}

// ----------------------------------------------------------------------
// Prime-power and polynomial helpers for GF(p^k)
// ----------------------------------------------------------------------

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

fn digits(x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    let mut rest = x;
    for d in out.iter_mut() {
        *d = rest % p;
        rest /= p;
    }
    out
}

fn undigits(coeffs: &[usize], p: usize) -> usize {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Coefficients of the first monic irreducible polynomial of degree `k`
/// over `Z_p`, little-endian including the leading 1.
fn first_irreducible(p: usize, k: usize) -> Vec<usize> {
    for code in 0..p.pow(k as u32) {
        let mut f = digits(code, p, k);
        f.push(1);
        if poly_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_p")
}

fn poly_irreducible(f: &[usize], p: usize) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` modulo monic `g`, coefficients mod `p` (little-endian).
fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p * p - (lead * gc) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mulmod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let mut prod = vec![0; a.len() + b.len() - 1];
    for (i, &ac) in a.iter().enumerate() {
        for (j, &bc) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ac * bc) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(modulus.len() - 1, 0);
    r
}

// ----------------------------------------------------------------------
// Abelian-group basis (used for module coordinates and isomorphism search)
// ----------------------------------------------------------------------

/// A basis of a finite abelian group given by its addition table: element
/// generators `gens` with orders `orders` such that every element is a
/// unique sum `Σ cᵢ·gensᵢ` with `0 ≤ cᵢ < ordersᵢ`.
pub(crate) fn abelian_basis(order: usize, add: &[Elem]) -> (Vec<Elem>, Vec<usize>) {
    let add_at = |x: usize, y: usize| add[x * order + y];
    let ord_of = |x: usize| {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = add_at(acc, x);
            k += 1;
        }
        k
    };
    let mut gens: Vec<Elem> = Vec::new();
    let mut orders: Vec<usize> = Vec::new();
    // coords[x] = coefficients of x over the current basis, when x lies in
    // the span; rebuilt after each extension.
    let mut span: Vec<Option<Vec<usize>>> = vec![None; order];
    span[0] = Some(Vec::new());
    let rebuild =
        |gens: &[Elem], orders: &[usize], span: &mut Vec<Option<Vec<usize>>>| {
            for s in span.iter_mut() {
                *s = None;
            }
            let mut coords = vec![0usize; gens.len()];
            loop {
                let mut x = 0;
                for (i, &c) in coords.iter().enumerate() {
                    for _ in 0..c {
                        x = add_at(x, gens[i]);
                    }
                }
                if span[x].is_none() {
                    span[x] = Some(coords.clone());
                }
                // Increment mixed-radix counter.
                let mut i = 0;
                loop {
                    if i == coords.len() {
                        return;
                    }
                    coords[i] += 1;
                    if coords[i] < orders[i] {
                        break;
                    }
                    coords[i] = 0;
                    i += 1;
                }
            }
        };
    rebuild(&gens, &orders, &mut span);
    while span.iter().filter(|s| s.is_some()).count() < order {
        // Element whose coset has maximal order in the quotient by the span;
        // smallest index on ties for determinism.
        let coset_order = |x: usize| {
            let mut acc = x;
            let mut k = 1;
            while span[acc].is_none() {
                acc = add_at(acc, x);
                k += 1;
            }
            // k is now the least multiple landing in the span; the coset
            // order is that k.
            k
        };
        let mut best = None;
        for x in 0..order {
            if span[x].is_some() {
                continue;
            }
            let k = coset_order(x);
            match best {
                None => best = Some((k, x)),
                Some((bk, _)) if k > bk => best = Some((k, x)),
                _ => {}
            }
        }
        let (d, g) = best.unwrap();
        // Adjust g so its group order equals its coset order: d·g lies in
        // the span, say d·g = Σ cᵢgᵢ; each cᵢ is divisible by d (because the
        // exponent of the quotient group divides each basis order here, the
        // greedy max-order choice guarantees it), so g' = g − Σ (cᵢ/d)·gᵢ
        // has exact order d and the same coset.
        let mut dg = 0;
        for _ in 0..d {
            dg = add_at(dg, g);
        }
        let coeffs = span[dg].clone().unwrap();
        let mut adjusted = g;
        let mut ok = true;
        for (i, &c) in coeffs.iter().enumerate() {
            if c % d != 0 {
                ok = false;
                break;
            }
            let t = c / d;
            // subtract t·gens[i]
            let mut sub = 0;
            for _ in 0..t {
                sub = add_at(sub, gens[i]);
            }
            // negation: (orders[i]·gensᵢ = 0) so -(t·gᵢ) = (ordᵢ−t)·gᵢ;
            // simpler: find additive inverse by scanning.
            let mut negsub = 0;
            while add_at(sub, negsub) != 0 {
                negsub += 1;
            }
            adjusted = add_at(adjusted, negsub);
        }
        let g_final = if ok && ord_of(adjusted) == d { adjusted } else { g };
        let d_final = ord_of(g_final);
        gens.push(g_final);
        orders.push(d_final);
        rebuild(&gens, &orders, &mut span);
    }
    (gens, orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zm_basics() {
        let r = FiniteRing::zm(4).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.mul(2, 2), 0);
        assert_eq!(r.add(3, 2), 1);
        assert_eq!(r.one(), 1);
        assert_eq!(r.neg(1), 3);
        assert!(r.validation().exhaustive);
    }

    #[test]
    fn trivial_ring_rejected() {
        assert!(FiniteRing::zm(1).is_err());
        assert!(FiniteRing::zm(0).is_err());
    }

    #[test]
    fn z6_classification() {
        let r = FiniteRing::zm(6).unwrap();
        let c = r.classify();
        assert_eq!(c.units, vec![1, 5]);
        assert_eq!(c.idempotents, vec![0, 1, 3, 4]);
        assert_eq!(c.zero_divisors, vec![2, 3, 4]);
        assert_eq!(c.nilpotents, vec![0]);
    }

    #[test]
    fn z4_classification() {
        let r = FiniteRing::zm(4).unwrap();
        let c = r.classify();
        assert_eq!(c.nilpotents, vec![0, 2]);
        assert_eq!(c.units, vec![1, 3]);
        assert_eq!(c.zero_divisors, vec![2]);
    }

    #[test]
    fn zp_units_are_all_nonzero() {
        for p in [2usize, 3, 5, 7, 11] {
            let r = FiniteRing::zm(p).unwrap();
            let c = r.classify();
            assert_eq!(c.units, (1..p).collect::<Vec<_>>());
            assert!(r.predicates().is_field);
        }
    }

    #[test]
    fn product_z2_z2_idempotents_and_zero_divisors() {
        let z2 = FiniteRing::zm(2).unwrap();
        let r = FiniteRing::product(&[z2.clone(), z2]).unwrap();
        let c = r.classify();
        // (0,0),(0,1),(1,0),(1,1) = indices 0,1,2,3; nontrivial idempotents (0,1),(1,0).
        assert_eq!(c.idempotents, vec![0, 1, 2, 3]);
        assert_eq!(c.zero_divisors, vec![1, 2]);
        assert_eq!(r.fmt_el(1), "(0,1)");
        assert_eq!(r.fmt_el(2), "(1,0)");
        assert_eq!(r.one(), 3);
    }

    #[test]
    fn quotient_z4_by_two_is_z2() {
        let z4 = FiniteRing::zm(4).unwrap();
        let q = FiniteRing::quotient(&z4, &[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.mul(1, 1), 1);
        assert_eq!(q.add(1, 1), 0);
    }

    #[test]
    fn quotient_rejects_improper_and_non_ideals() {
        let z4 = FiniteRing::zm(4).unwrap();
        assert!(FiniteRing::quotient(&z4, &[0, 1, 2, 3]).is_err()); // contains 1
        assert!(FiniteRing::quotient(&z4, &[0, 1]).is_err()); // not closed
    }

    #[test]
    fn gf4_multiplication() {
        let f4 = FiniteRing::gf(4).unwrap();
        assert_eq!(f4.order(), 4);
        // With modulus x²+x+1: x·x = x+1, x·(x+1) = 1, (x+1)² = x.
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.mul(2, 3), 1);
        assert_eq!(f4.mul(3, 3), 2);
        assert!(f4.predicates().is_field);
        // Prime subfield sits at indices {0,1}.
        assert_eq!(f4.mul(1, 2), 2);
        assert_eq!(f4.add(1, 1), 0);
    }

    #[test]
    fn gf_rejects_non_prime_powers() {
        assert!(FiniteRing::gf(6).is_err());
        assert!(FiniteRing::gf(12).is_err());
        assert!(FiniteRing::gf(8).is_ok());
        assert!(FiniteRing::gf(9).is_ok());
        assert!(FiniteRing::gf(27).is_ok());
    }

    #[test]
    fn z6_predicates() {
        let r = FiniteRing::zm(6).unwrap();
        let p = r.predicates();
        assert!(!p.is_presimplifiable);
        // First counterexample in scan order: 2·4 = 2 with 4 a nonunit.
        assert_eq!(p.presimplifiable_witness, Some((2, 4)));
        assert!(!p.is_domain);
        assert!(!p.is_local);
        assert!(p.is_strongly_associate);
    }

    #[test]
    fn z4_predicates() {
        let r = FiniteRing::zm(4).unwrap();
        let p = r.predicates();
        assert!(p.is_presimplifiable);
        assert!(p.is_local);
        assert!(!p.is_domain);
        assert!(p.is_strongly_associate);
    }

    #[test]
    fn from_tables_detects_axiom_violations() {
        // Break associativity of multiplication in a 3-element "ring".
        let add = vec![0, 1, 2, 1, 2, 0, 2, 0, 1];
        let mut mul = vec![0, 0, 0, 0, 1, 2, 0, 2, 1];
        let ok = FiniteRing::from_tables("Z3", 3, add.clone(), mul.clone(), &ValidationPolicy::default());
        assert!(ok.is_ok());
        mul[2 * 3 + 2] = 2; // now 2·2 = 2 but (2·2)·2 ≠ 2·(2·2) fails elsewhere
        let bad = FiniteRing::from_tables("bad", 3, add, mul, &ValidationPolicy::default());
        assert!(bad.is_err());
    }

    #[test]
    fn associates_in_z4() {
        let r = FiniteRing::zm(4).unwrap();
        let (sim, approx, cong) = r.associates(1, 3);
        assert!(sim && approx && cong);
        let (sim, approx, _) = r.associates(2, 2);
        assert!(sim && approx);
        let (sim, _, _) = r.associates(1, 2);
        assert!(!sim);
    }

    #[test]
    fn principal_ideals_of_z12() {
        let r = FiniteRing::zm(12).unwrap();
        assert_eq!(r.principal(4), vec![0, 4, 8]);
        assert_eq!(r.principal(2), vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(r.principal(5), (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn abelian_basis_shapes() {
        let z6 = FiniteRing::zm(6).unwrap();
        let (gens, orders) = abelian_basis(6, &z6.add);
        assert_eq!(orders, vec![6]);
        assert_eq!(z6.additive_order(gens[0]), 6);

        let z2 = FiniteRing::zm(2).unwrap();
        let z3 = FiniteRing::zm(3).unwrap();
        let p = FiniteRing::product(&[z2, z3]).unwrap();
        let (_, orders) = abelian_basis(6, &p.add);
        // Z2×Z3 is cyclic of order 6.
        assert_eq!(orders.iter().product::<usize>(), 6);
        assert_eq!(*orders.iter().max().unwrap(), 6);

        let f4 = FiniteRing::gf(4).unwrap();
        let (_, orders) = abelian_basis(4, &f4.add);
        assert_eq!(orders, vec![2, 2]);
    }
}
