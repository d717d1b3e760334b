//! Divisibility in finite commutative rings and in flattened extensions:
//! stabilizer sets `U(a)`, irreducibility at four strengths, atomicity,
//! bounded factorization, U-factorizations, and the transfer checks that
//! relate an extension ring to its base ring and modules.
//!
//! Everything is exhaustive. At finite order, ascending-chain conditions
//! hold with computable longest-chain certificates, and boundedness of
//! factorization lengths is decided exactly by absorption cycles: lengths
//! for `x` are unbounded precisely when some `y` in the split closure of
//! `x` satisfies `g·y = y` for a nonunit `g` (padding by `g` then pumps any
//! factorization). Nothing here estimates; caps abort loudly instead of
//! weakening a verdict.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::extension::{ExtElement, NTrivialExtension};
use crate::module::FiniteModule;
use crate::report::{CheckRecord, ReportDocument};
use crate::ring::{Elem, FiniteRing};
use crate::{Error, Result};

/// Node budget for factorization enumeration.
const MAX_FACTOR_NODES: usize = 2_000_000;

/// Largest factorization a U-split will take (subset scan is `2^s`).
const MAX_U_SPLIT_FACTORS: usize = 20;

// ----------------------------------------------------------------------
// Ring-level divisibility
// ----------------------------------------------------------------------

/// Irreducibility of one nonunit at the four standard strengths. For a
/// nonzero nonunit they form a chain: very strong ⇒ m-irreducible ⇒
/// strong ⇒ irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IrreducibilityProfile {
    /// `a = bc` forces `a ∼ b` or `a ∼ c`.
    pub irreducible: bool,
    /// `a = bc` forces `a ≈ b` or `a ≈ c`.
    pub strongly_irreducible: bool,
    /// `a = bc` forces `a ≅ b` or `a ≅ c`.
    pub very_strongly_irreducible: bool,
    /// `⟨a⟩` is maximal among proper principal ideals.
    pub m_irreducible: bool,
}

/// One U-factorization `x = a₁⋯a_s⌈b₁⋯b_t⌉`: every irrelevant factor `aᵢ`
/// lies in `U(b₁⋯b_t)`, and no relevant factor `bᵢ` lies in `U` of the
/// product of the other relevant factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UFactorization {
    pub target: Elem,
    pub irrelevant: Vec<Elem>,
    pub relevant: Vec<Elem>,
}

/// Census of the factorization landscape of one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorCensus {
    /// Associate-class representatives of the irreducibles dividing the
    /// element.
    pub atoms: Vec<Elem>,
    pub nonassociate_divisor_count: usize,
    /// Associate classes appearing as relevant factors across the found
    /// U-factorizations.
    pub relevant_factor_class_count: usize,
    /// Longest factorization found within the requested length bound.
    pub max_factorization_length_observed: usize,
    /// Exact verdict (independent of the length bound): no absorption
    /// cycle `g·y = y` is reachable from the element.
    pub bounded: bool,
}

/// Factorizations of one element up to order and associates, each with its
/// U-split, plus the census.
#[derive(Debug, Clone, Serialize)]
pub struct FactorEnumeration {
    pub element: Elem,
    /// One witness per class; a class is the multiset of associate-class
    /// representatives of the factors.
    pub factorizations: Vec<Vec<Elem>>,
    pub u_factorizations: Vec<UFactorization>,
    pub census: FactorCensus,
}

/// Precomputed divisibility data over one finite commutative ring:
/// principal ideals, associate classes under `a ∼ b ⟺ ⟨a⟩ = ⟨b⟩`, and
/// unit flags.
pub struct Divisibility {
    ring: Arc<FiniteRing>,
    principal: Vec<Vec<Elem>>,
    class_rep: Vec<Elem>,
    unit: Vec<bool>,
}

impl Divisibility {
    pub fn new(ring: &Arc<FiniteRing>) -> Divisibility {
        let order = ring.order();
        let principal: Vec<Vec<Elem>> = (0..order).map(|x| ring.principal(x)).collect();
        let mut class_rep = vec![0; order];
        {
            let mut first: BTreeMap<&[Elem], Elem> = BTreeMap::new();
            for x in 0..order {
                class_rep[x] = *first.entry(&principal[x]).or_insert(x);
            }
        }
        let unit = (0..order).map(|x| ring.is_unit(x)).collect();
        Divisibility { ring: ring.clone(), principal, class_rep, unit }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.ring.order()
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.unit[x]
    }

    /// `a ∼ b` ⟺ `⟨a⟩ = ⟨b⟩`.
    pub fn sim(&self, a: Elem, b: Elem) -> bool {
        self.principal[a] == self.principal[b]
    }

    /// Least element generating the same principal ideal.
    pub fn class_rep(&self, a: Elem) -> Elem {
        self.class_rep[a]
    }

    /// `⟨a⟩` as a sorted element list.
    pub fn principal(&self, a: Elem) -> &[Elem] {
        &self.principal[a]
    }

    /// Strict inclusion `⟨a⟩ ⊊ ⟨b⟩`.
    pub fn strictly_below(&self, a: Elem, b: Elem) -> bool {
        self.principal[a].len() < self.principal[b].len()
            && is_subset(&self.principal[a], &self.principal[b])
    }

    /// Whether `d` divides `a`, i.e. `a ∈ ⟨d⟩`.
    pub fn divides(&self, d: Elem, a: Elem) -> bool {
        self.principal[d].binary_search(&a).is_ok()
    }

    /// All divisors of `a`.
    pub fn divisors(&self, a: Elem) -> Vec<Elem> {
        (0..self.order()).filter(|&d| self.divides(d, a)).collect()
    }

    /// Membership in the stabilizer `U(a) = {r : ∃s, rsa = a}`; since
    /// `rsa = a` says exactly `a ∈ ⟨ra⟩`, this is `{r : ra ∼ a}`.
    pub fn in_u(&self, r: Elem, a: Elem) -> bool {
        self.sim(self.ring.mul(r, a), a)
    }

    /// The stabilizer set `U(a)`, sorted.
    pub fn u_of(&self, a: Elem) -> Vec<Elem> {
        (0..self.order()).filter(|&r| self.in_u(r, a)).collect()
    }

    /// Irreducibility profile of a nonunit (units are rejected: no
    /// irreducibility notion applies to them).
    pub fn irreducibility(&self, a: Elem) -> Result<IrreducibilityProfile> {
        if self.is_unit(a) {
            return Err(Error::HypothesisNotMet(format!(
                "irreducibility is defined for nonunits, and {} is a unit",
                self.ring.fmt_el(a)
            )));
        }
        let order = self.order();
        let mut irreducible = true;
        let mut strongly = true;
        let mut very = true;
        'scan: for b in 0..order {
            for c in b..order {
                if self.ring.mul(b, c) != a {
                    continue;
                }
                let (s1, a1, c1) = self.ring.associates(a, b);
                let (s2, a2, c2) = self.ring.associates(a, c);
                irreducible &= s1 || s2;
                strongly &= a1 || a2;
                very &= c1 || c2;
                if !(irreducible || strongly || very) {
                    break 'scan;
                }
            }
        }
        let m_irreducible =
            (0..order).filter(|&x| !self.is_unit(x)).all(|x| !self.strictly_below(a, x));
        Ok(IrreducibilityProfile {
            irreducible,
            strongly_irreducible: strongly,
            very_strongly_irreducible: very,
            m_irreducible,
        })
    }

    /// The irreducible nonzero nonunits.
    pub fn atoms(&self) -> Vec<Elem> {
        let z = self.ring.zero();
        (0..self.order())
            .filter(|&x| x != z && !self.is_unit(x))
            .filter(|&x| self.irreducibility(x).expect("nonunit").irreducible)
            .collect()
    }

    /// A factorization into irreducibles for every nonzero nonunit that
    /// has one, built by closing the atom set under atom-times-known
    /// products.
    pub fn atomic_witnesses(&self) -> BTreeMap<Elem, Vec<Elem>> {
        let atoms = self.atoms();
        let z = self.ring.zero();
        let mut wit: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
        for &a in &atoms {
            wit.insert(a, vec![a]);
        }
        loop {
            let mut additions: Vec<(Elem, Vec<Elem>)> = Vec::new();
            for x in 0..self.order() {
                if x == z || self.is_unit(x) || wit.contains_key(&x) {
                    continue;
                }
                'find: for &b in &atoms {
                    for (&c, w) in &wit {
                        if self.ring.mul(b, c) == x {
                            let mut f = vec![b];
                            f.extend_from_slice(w);
                            additions.push((x, f));
                            break 'find;
                        }
                    }
                }
            }
            if additions.is_empty() {
                break;
            }
            for (x, f) in additions {
                wit.entry(x).or_insert(f);
            }
        }
        wit
    }

    /// Atomicity: every nonzero nonunit is a product of irreducibles.
    /// Returns the first element without a factorization on failure.
    pub fn is_atomic(&self) -> (bool, Option<Elem>) {
        let wit = self.atomic_witnesses();
        let z = self.ring.zero();
        for x in 0..self.order() {
            if x != z && !self.is_unit(x) && !wit.contains_key(&x) {
                return (false, Some(x));
            }
        }
        (true, None)
    }

    /// All nonzero `y` absorbed by some nonunit (`g·y = y`); nonempty
    /// exactly when the ring is not présimplifiable.
    fn absorbed(&self) -> Vec<(Elem, Elem)> {
        let z = self.ring.zero();
        let mut out = Vec::new();
        for y in 0..self.order() {
            if y == z {
                continue;
            }
            for g in 0..self.order() {
                if !self.is_unit(g) && self.ring.mul(g, y) == y {
                    out.push((g, y));
                    break;
                }
            }
        }
        out
    }

    /// Closure of `{x}` under splitting into two nonunit factors; contains
    /// exactly the sub-multiset products of factorizations of `x`.
    fn split_closure(&self, x: Elem) -> Vec<Elem> {
        let order = self.order();
        let mut in_set = vec![false; order];
        in_set[x] = true;
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for b in 0..order {
                if self.is_unit(b) {
                    continue;
                }
                for c in b..order {
                    if self.is_unit(c) || self.ring.mul(b, c) != y {
                        continue;
                    }
                    for t in [b, c] {
                        if !in_set[t] {
                            in_set[t] = true;
                            stack.push(t);
                        }
                    }
                }
            }
        }
        (0..order).filter(|&y| in_set[y]).collect()
    }

    /// Whether factorization lengths of the nonunit `x` are bounded:
    /// exactly when no sub-multiset product of a factorization of `x` is
    /// absorbed by a nonunit. Returns the absorption witness `(g, y)`.
    /// Zero is never bounded: `0 = 0·0·⋯·0` at every length.
    pub fn bounded(&self, x: Elem) -> (bool, Option<(Elem, Elem)>) {
        let z = self.ring.zero();
        if x == z {
            return (false, Some((z, z)));
        }
        let absorbed = self.absorbed();
        if absorbed.is_empty() {
            return (true, None);
        }
        for y in self.split_closure(x) {
            if let Some(&(g, v)) = absorbed.iter().find(|&&(_, v)| v == y) {
                return (false, Some((g, v)));
            }
        }
        (true, None)
    }

    /// Bounded factorization ring: every nonzero nonunit has bounded
    /// factorization lengths. The witness is `(x, g, y)`: `y` divides `x`
    /// along nonunits and `g·y = y`.
    pub fn is_bfr(&self) -> (bool, Option<(Elem, Elem, Elem)>) {
        if self.absorbed().is_empty() {
            return (true, None);
        }
        let z = self.ring.zero();
        for x in 0..self.order() {
            if x == z || self.is_unit(x) {
                continue;
            }
            if let (false, Some((g, y))) = self.bounded(x) {
                return (false, Some((x, g, y)));
            }
        }
        (true, None)
    }

    /// Length of the longest strictly ascending chain of principal ideals
    /// (the stabilization certificate for chain conditions).
    pub fn longest_principal_chain(&self) -> usize {
        let mut distinct: Vec<&Vec<Elem>> = Vec::new();
        for p in &self.principal {
            if !distinct.iter().any(|q| *q == p) {
                distinct.push(p);
            }
        }
        distinct.sort_by_key(|p| p.len());
        let mut best = vec![1usize; distinct.len()];
        for i in 0..distinct.len() {
            for j in 0..i {
                if distinct[j].len() < distinct[i].len()
                    && is_subset(distinct[j], distinct[i])
                    && best[j] + 1 > best[i]
                {
                    best[i] = best[j] + 1;
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// First `k ≥ 1` with `⟨b^{k+1}⟩ = ⟨b^k⟩`; constant on associate
    /// classes.
    pub fn power_stabilization(&self, b: Elem) -> usize {
        let mut p = b;
        let mut k = 1;
        loop {
            let next = self.ring.mul(p, b);
            if self.sim(next, p) {
                return k;
            }
            p = next;
            k += 1;
            debug_assert!(k <= self.order() + 1);
        }
    }

    /// Uniform bound on the relevant length of any U-factorization: an
    /// associate class `b` appears at most `k_b` times in a relevant part
    /// (`k_b` = power-chain stabilization: one more copy of `b` puts `b`
    /// inside `U` of the complementary product, breaking relevance), so
    /// `t ≤ Σ k_b` over nonunit classes.
    pub fn relevant_length_bound(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut sum = 0;
        for x in 0..self.order() {
            if self.is_unit(x) {
                continue;
            }
            let rep = self.class_rep(x);
            if seen.insert(rep) {
                sum += self.power_stabilization(rep);
            }
        }
        sum
    }

    /// Split a factorization of `x` into a U-factorization by scanning
    /// subsets for the defining conditions, largest relevant part first.
    pub fn u_split(&self, x: Elem, factors: &[Elem]) -> Result<UFactorization> {
        let s = factors.len();
        if s == 0 || s > MAX_U_SPLIT_FACTORS {
            return Err(Error::HypothesisNotMet(format!(
                "a U-split needs 1..={MAX_U_SPLIT_FACTORS} factors, got {s}"
            )));
        }
        let mut p = self.ring.one();
        for &f in factors {
            if self.is_unit(f) {
                return Err(Error::HypothesisNotMet(format!(
                    "factor {} is a unit",
                    self.ring.fmt_el(f)
                )));
            }
            p = self.ring.mul(p, f);
        }
        if p != x {
            return Err(Error::Disagreement {
                check: "factorization product".into(),
                witness: format!(
                    "factors multiply to {}, not {}",
                    self.ring.fmt_el(p),
                    self.ring.fmt_el(x)
                ),
            });
        }
        let mut masks: Vec<u32> = (1..(1u32 << s)).collect();
        masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
        'mask: for &mask in &masks {
            let mut relevant = Vec::new();
            let mut irrelevant = Vec::new();
            for (i, &f) in factors.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    relevant.push(f);
                } else {
                    irrelevant.push(f);
                }
            }
            let mut pr = self.ring.one();
            for &b in &relevant {
                pr = self.ring.mul(pr, b);
            }
            for &a in &irrelevant {
                if !self.in_u(a, pr) {
                    continue 'mask;
                }
            }
            for i in 0..relevant.len() {
                let mut po = self.ring.one();
                for (j, &b) in relevant.iter().enumerate() {
                    if j != i {
                        po = self.ring.mul(po, b);
                    }
                }
                if self.in_u(relevant[i], po) {
                    continue 'mask;
                }
            }
            return Ok(UFactorization { target: x, irrelevant, relevant });
        }
        Err(Error::Disagreement {
            check: "U-factorization rearrangement".into(),
            witness: format!(
                "no subset of the factors of {} satisfies the relevance conditions",
                self.ring.fmt_el(x)
            ),
        })
    }

    /// Enumerate the factorizations of a nonunit up to order and
    /// associates, with lengths up to `max_len`; split each into a
    /// U-factorization and compute the census.
    pub fn factor_enumerate(&self, a: Elem, max_len: usize) -> Result<FactorEnumeration> {
        if self.is_unit(a) {
            return Err(Error::HypothesisNotMet(format!(
                "factorizations are defined for nonunits, and {} is a unit",
                self.ring.fmt_el(a)
            )));
        }
        if max_len == 0 {
            return Err(Error::InvalidConstruction(
                "factorization length bound must be at least 1".into(),
            ));
        }
        let pool: Vec<Elem> = (0..self.order()).filter(|&f| !self.unit[f]).collect();
        let mut found: BTreeMap<Vec<Elem>, Vec<Elem>> = BTreeMap::new();
        let mut nodes = 0usize;
        let mut current = Vec::new();
        self.enumerate_rec(
            a,
            max_len,
            &pool,
            &mut current,
            self.ring.one(),
            None,
            &mut found,
            &mut nodes,
        )?;
        let factorizations: Vec<Vec<Elem>> = found.values().cloned().collect();
        let mut u_factorizations = Vec::new();
        for f in &factorizations {
            u_factorizations.push(self.u_split(a, f)?);
        }
        let atom_classes: BTreeSet<Elem> = self
            .atoms()
            .into_iter()
            .filter(|&t| self.divides(t, a))
            .map(|t| self.class_rep(t))
            .collect();
        let divisor_classes: BTreeSet<Elem> =
            self.divisors(a).into_iter().map(|d| self.class_rep(d)).collect();
        let relevant_classes: BTreeSet<Elem> = u_factorizations
            .iter()
            .flat_map(|u| u.relevant.iter().map(|&b| self.class_rep(b)))
            .collect();
        let max_observed = factorizations.iter().map(|f| f.len()).max().unwrap_or(0);
        let (bounded, _) = self.bounded(a);
        Ok(FactorEnumeration {
            element: a,
            factorizations,
            u_factorizations,
            census: FactorCensus {
                atoms: atom_classes.into_iter().collect(),
                nonassociate_divisor_count: divisor_classes.len(),
                relevant_factor_class_count: relevant_classes.len(),
                max_factorization_length_observed: max_observed,
                bounded,
            },
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_rec(
        &self,
        a: Elem,
        remaining: usize,
        pool: &[Elem],
        current: &mut Vec<Elem>,
        product: Elem,
        floor: Option<(Elem, Elem)>,
        found: &mut BTreeMap<Vec<Elem>, Vec<Elem>>,
        nodes: &mut usize,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > MAX_FACTOR_NODES {
            return Err(Error::CapExceeded(format!(
                "factorization enumeration exceeded {MAX_FACTOR_NODES} nodes"
            )));
        }
        if !current.is_empty() && product == a {
            let mut key: Vec<Elem> = current.iter().map(|&f| self.class_rep(f)).collect();
            key.sort_unstable();
            found.entry(key).or_insert_with(|| current.clone());
        }
        if remaining == 0 {
            return Ok(());
        }
        for &f in pool {
            let fc = self.class_rep(f);
            if let Some((cls, el)) = floor {
                if fc < cls || (fc == cls && f < el) {
                    continue;
                }
            }
            let np = self.ring.mul(product, f);
            if !self.divides(np, a) {
                continue;
            }
            current.push(f);
            self.enumerate_rec(a, remaining - 1, pool, current, np, Some((fc, f)), found, nodes)?;
            current.pop();
        }
        Ok(())
    }

    /// U-atomicity: every nonzero nonunit has a U-factorization whose
    /// relevant factors are all irreducible. An atomic witness settles an
    /// element at once (the U-split of an all-atom factorization has only
    /// atoms as relevant factors); elements without one are searched over
    /// relevant atom multisets, and the search aborts loudly rather than
    /// report a bound-limited "false".
    pub fn is_u_atomic(&self) -> Result<(bool, Option<Elem>)> {
        let wit = self.atomic_witnesses();
        let z = self.ring.zero();
        for x in 0..self.order() {
            if x == z || self.is_unit(x) {
                continue;
            }
            if let Some(f) = wit.get(&x) {
                let split = self.u_split(x, f)?;
                debug_assert!(!split.relevant.is_empty());
                continue;
            }
            if !self.u_atomic_search(x)? {
                return Ok((false, Some(x)));
            }
        }
        Ok((true, None))
    }

    /// Search for a U-factorization of `x` with irreducible relevant part:
    /// relevant candidates are atom multisets `B` (non-decreasing), valid
    /// when each `b ∈ B` avoids `U` of the others' product and `x` lies in
    /// `∏B` times the monoid generated by the nonunits of `U(∏B)`.
    fn u_atomic_search(&self, x: Elem) -> Result<bool> {
        let atoms = self.atoms();
        let chain_cap = self.longest_principal_chain() + 2;
        let hard_bound = self.relevant_length_bound();
        let mut multiset: Vec<Elem> = Vec::new();
        for t in 1..=chain_cap.min(hard_bound.max(1)) {
            if self.u_atomic_depth(x, &atoms, t, 0, &mut multiset)? {
                return Ok(true);
            }
        }
        if chain_cap < hard_bound {
            return Err(Error::CapExceeded(format!(
                "U-atomicity of {} undecided within relevant length {chain_cap} \
                 (theoretical bound {hard_bound})",
                self.ring.fmt_el(x)
            )));
        }
        Ok(false)
    }

    fn u_atomic_depth(
        &self,
        x: Elem,
        atoms: &[Elem],
        depth: usize,
        start: usize,
        multiset: &mut Vec<Elem>,
    ) -> Result<bool> {
        if depth == 0 {
            let mut pb = self.ring.one();
            for &b in multiset.iter() {
                pb = self.ring.mul(pb, b);
            }
            for i in 0..multiset.len() {
                let mut po = self.ring.one();
                for (j, &b) in multiset.iter().enumerate() {
                    if j != i {
                        po = self.ring.mul(po, b);
                    }
                }
                if self.in_u(multiset[i], po) {
                    return Ok(false);
                }
            }
            // reachability: x ∈ ∏B · (monoid of nonunits of U(∏B))
            let mut seen = vec![false; self.order()];
            let mut stack = vec![pb];
            seen[pb] = true;
            while let Some(v) = stack.pop() {
                if v == x {
                    return Ok(true);
                }
                for g in 0..self.order() {
                    if self.is_unit(g) || !self.in_u(g, pb) {
                        continue;
                    }
                    let w = self.ring.mul(g, v);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            return Ok(false);
        }
        for (i, &b) in atoms.iter().enumerate().skip(start) {
            multiset.push(b);
            let hit = self.u_atomic_depth(x, atoms, depth - 1, i, multiset)?;
            multiset.pop();
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Re-check a U-factorization from the definition alone.
pub fn validate_u_factorization(div: &Divisibility, uf: &UFactorization) -> Result<()> {
    let ring = div.ring();
    let mut pr = ring.one();
    for &b in &uf.relevant {
        pr = ring.mul(pr, b);
    }
    let mut total = pr;
    for &a in &uf.irrelevant {
        total = ring.mul(total, a);
    }
    let fail = |msg: String| {
        Err(Error::Disagreement { check: "U-factorization validity".into(), witness: msg })
    };
    if total != uf.target {
        return fail(format!(
            "factors multiply to {}, not {}",
            ring.fmt_el(total),
            ring.fmt_el(uf.target)
        ));
    }
    if uf.relevant.is_empty() {
        return fail("relevant part is empty".into());
    }
    for &f in uf.irrelevant.iter().chain(&uf.relevant) {
        if div.is_unit(f) {
            return fail(format!("factor {} is a unit", ring.fmt_el(f)));
        }
    }
    for &a in &uf.irrelevant {
        if !div.in_u(a, pr) {
            return fail(format!(
                "irrelevant factor {} is outside U({})",
                ring.fmt_el(a),
                ring.fmt_el(pr)
            ));
        }
    }
    for i in 0..uf.relevant.len() {
        let mut po = ring.one();
        for (j, &b) in uf.relevant.iter().enumerate() {
            if j != i {
                po = ring.mul(po, b);
            }
        }
        if div.in_u(uf.relevant[i], po) {
            return fail(format!(
                "relevant factor {} lies in U of the complementary product {}",
                ring.fmt_el(uf.relevant[i]),
                ring.fmt_el(po)
            ));
        }
    }
    Ok(())
}

fn is_subset(small: &[Elem], big: &[Elem]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

// ----------------------------------------------------------------------
// Module-level divisibility
// ----------------------------------------------------------------------

/// Divisibility notions on a finite module: cyclic submodules, associate
/// classes, chain certificates, and bounded factorization.
pub struct ModuleDivisibility {
    module: Arc<FiniteModule>,
    cyclic: Vec<Vec<Elem>>,
    class_rep: Vec<Elem>,
}

impl ModuleDivisibility {
    pub fn new(module: &Arc<FiniteModule>) -> ModuleDivisibility {
        let cyclic: Vec<Vec<Elem>> =
            (0..module.order()).map(|x| module.cyclic(x).elements).collect();
        let mut class_rep = vec![0; module.order()];
        {
            let mut first: BTreeMap<&[Elem], Elem> = BTreeMap::new();
            for x in 0..module.order() {
                class_rep[x] = *first.entry(&cyclic[x]).or_insert(x);
            }
        }
        ModuleDivisibility { module: module.clone(), cyclic, class_rep }
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    /// `Rx` as a sorted element list.
    pub fn cyclic_of(&self, x: Elem) -> &[Elem] {
        &self.cyclic[x]
    }

    /// `x ∼ y` in the module: `Rx = Ry`.
    pub fn sim(&self, x: Elem, y: Elem) -> bool {
        self.cyclic[x] == self.cyclic[y]
    }

    /// Least element with the same cyclic submodule.
    pub fn class_rep(&self, x: Elem) -> Elem {
        self.class_rep[x]
    }

    /// Strict inclusion `Rx ⊊ Ry`.
    pub fn strictly_below(&self, x: Elem, y: Elem) -> bool {
        self.cyclic[x].len() < self.cyclic[y].len() && is_subset(&self.cyclic[x], &self.cyclic[y])
    }

    /// No nonzero scalar kills a nonzero element.
    pub fn torsion_free(&self) -> bool {
        self.module.zero_divisors_on().is_empty()
    }

    /// Longest strictly ascending chain of cyclic submodules.
    pub fn longest_cyclic_chain(&self) -> usize {
        let mut distinct: Vec<&Vec<Elem>> = Vec::new();
        for c in &self.cyclic {
            if !distinct.iter().any(|d| *d == c) {
                distinct.push(c);
            }
        }
        distinct.sort_by_key(|c| c.len());
        let mut best = vec![1usize; distinct.len()];
        for i in 0..distinct.len() {
            for j in 0..i {
                if distinct[j].len() < distinct[i].len()
                    && is_subset(distinct[j], distinct[i])
                    && best[j] + 1 > best[i]
                {
                    best[i] = best[j] + 1;
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Every cyclic submodule sits inside a maximal cyclic one; returns
    /// the verdict and the number of maximal cyclic submodules.
    pub fn mcc(&self) -> (bool, usize) {
        let mut distinct: Vec<&Vec<Elem>> = Vec::new();
        for c in &self.cyclic {
            if !distinct.iter().any(|d| *d == c) {
                distinct.push(c);
            }
        }
        let maximal: Vec<&Vec<Elem>> = distinct
            .iter()
            .copied()
            .filter(|c| !distinct.iter().any(|d| d.len() > c.len() && is_subset(c, d)))
            .collect();
        let ok = distinct.iter().all(|c| maximal.iter().any(|m| is_subset(c, m)));
        (ok, maximal.len())
    }

    /// Whether scalar-factorization lengths of `m` are bounded: exactly
    /// when no element reachable from `m` by stripping nonunit scalars is
    /// fixed by a nonunit scalar. Zero is never bounded (`0 = 0·…·0·0`).
    pub fn bounded_element(&self, m: Elem) -> (bool, Option<(Elem, Elem)>) {
        let ring = self.module.ring();
        if m == self.module.zero() {
            return (false, Some((ring.zero(), m)));
        }
        let rn = ring.order();
        let mn = self.module.order();
        let mut in_set = vec![false; mn];
        in_set[m] = true;
        let mut stack = vec![m];
        while let Some(h) = stack.pop() {
            for r in 0..rn {
                if ring.is_unit(r) {
                    continue;
                }
                if self.module.act(r, h) == h && h != self.module.zero() {
                    return (false, Some((r, h)));
                }
                for hp in 0..mn {
                    if self.module.act(r, hp) == h && !in_set[hp] {
                        in_set[hp] = true;
                        stack.push(hp);
                    }
                }
            }
        }
        (true, None)
    }

    /// Bounded factorization module: bounded lengths for every nonzero
    /// element. The witness is `(m, r, h)` with `h` reachable from `m` and
    /// `r·h = h`, `r` a nonunit.
    pub fn is_bf(&self) -> (bool, Option<(Elem, Elem, Elem)>) {
        if self.module.is_presimplifiable().0 {
            return (true, None);
        }
        for m in 1..self.module.order() {
            if let (false, Some((r, h))) = self.bounded_element(m) {
                return (false, Some((m, r, h)));
            }
        }
        (true, None)
    }
}

// ----------------------------------------------------------------------
// Extension-level structure
// ----------------------------------------------------------------------

/// Flattened index of the homogeneous element `(0,…,0,mᵢ,0,…,0)`.
pub fn homogeneous_index(ext: &NTrivialExtension, degree: usize, m: Elem) -> Result<Elem> {
    if degree == 0 || degree > ext.n() {
        return Err(Error::InvalidConstruction(format!(
            "homogeneous degree must lie in 1..={}, got {degree}",
            ext.n()
        )));
    }
    let mut coords = vec![0; ext.n() + 1];
    coords[0] = ext.ring().zero();
    coords[degree] = m;
    let el = ext.element(&coords)?;
    Ok(ext.encode(&el))
}

/// The degree-`(j+k)` coordinate of the product of the embeddings of
/// `x ∈ Mⱼ` and `y ∈ Mₖ`.
fn phi_pair(ext: &NTrivialExtension, j: usize, x: Elem, k: usize, y: Elem) -> ExtElement {
    let mut cx = vec![0; ext.n() + 1];
    cx[0] = ext.ring().zero();
    cx[j] = x;
    let mut cy = vec![0; ext.n() + 1];
    cy[0] = ext.ring().zero();
    cy[k] = y;
    let ex = ext.element(&cx).expect("in range");
    let ey = ext.element(&cy).expect("in range");
    ext.mul_el(&ex, &ey)
}

/// Whether `Mᵢ` (for `i ≥ 2`) is integral relative to the product family:
/// `mⱼ·mₖ = 0` with `j + k = i`, `j, k ≥ 1` forces a zero factor.
pub fn phi_integral(ext: &NTrivialExtension, degree: usize) -> Result<bool> {
    if degree < 2 || degree > ext.n() {
        return Err(Error::HypothesisNotMet(format!(
            "integrality relative to the family is defined for degrees 2..={}, got {degree}",
            ext.n()
        )));
    }
    for j in 1..degree {
        let k = degree - j;
        let mj = ext.modules()[j - 1].order();
        let mk = ext.modules()[k - 1].order();
        for x in 1..mj {
            for y in 1..mk {
                if phi_pair(ext, j, x, k, y).coords()[degree] == 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The nonzero elements of `M_degree` that are not a product `mⱼ·mₖ` with
/// `j + k = degree`, `j, k ≥ 1`. At degree 1 no pair of positive degrees
/// sums to it, so every nonzero element is vacuously indecomposable.
pub fn indecomposable_elements(ext: &NTrivialExtension, degree: usize) -> Result<Vec<Elem>> {
    if degree == 0 || degree > ext.n() {
        return Err(Error::InvalidConstruction(format!(
            "degree must lie in 1..={}, got {degree}",
            ext.n()
        )));
    }
    let order = ext.modules()[degree - 1].order();
    let mut decomposable = vec![false; order];
    for j in 1..degree {
        let k = degree - j;
        let mj = ext.modules()[j - 1].order();
        let mk = ext.modules()[k - 1].order();
        for x in 0..mj {
            for y in 0..mk {
                decomposable[phi_pair(ext, j, x, k, y).coords()[degree]] = true;
            }
        }
    }
    Ok((1..order).filter(|&m| !decomposable[m]).collect())
}

/// Présimplifiable/strongly-associate data for an extension and its
/// pieces, with the transfer verdicts, plus the per-degree integrality and
/// indecomposability inventory.
#[derive(Debug, Clone, Serialize)]
pub struct StructuralPredicates {
    pub base_presimplifiable: bool,
    pub module_presimplifiable: Vec<bool>,
    pub extension_presimplifiable: bool,
    /// Extension présimplifiable ⟺ base and every module présimplifiable.
    pub presimplifiable_transfer_agrees: bool,
    pub base_strongly_associate: bool,
    pub module_strongly_associate: Vec<bool>,
    pub extension_strongly_associate: bool,
    /// Extension strongly associate ⇒ base and modules strongly associate.
    pub strongly_associate_necessity_agrees: bool,
    /// With base and all modules présimplifiable: extension strongly
    /// associate ⟺ the top module is. `None` when the hypothesis fails.
    pub strongly_associate_transfer: Option<bool>,
    /// Per degree `1..=n`: integrality relative to the family (`None` at
    /// degree 1, where no pair of positive degrees sums to it).
    pub phi_integral: Vec<Option<bool>>,
    /// Per degree `1..=n`: nonzero elements that are not a positive-degree
    /// product (all of them at degree 1, vacuously).
    pub indecomposable: Vec<Vec<Elem>>,
}

pub fn structural_predicates(ext: &Arc<NTrivialExtension>) -> Result<StructuralPredicates> {
    let flat = ext.flattened()?;
    let base = ext.ring();
    let base_pred = base.predicates();
    let flat_pred = flat.predicates();
    let module_presimplifiable: Vec<bool> =
        ext.modules().iter().map(|m| m.is_presimplifiable().0).collect();
    let module_strongly_associate: Vec<bool> =
        ext.modules().iter().map(|m| m.is_strongly_associate().0).collect();
    let all_pieces_presimplifiable =
        base_pred.is_presimplifiable && module_presimplifiable.iter().all(|&b| b);
    let presimplifiable_transfer_agrees =
        flat_pred.is_presimplifiable == all_pieces_presimplifiable;
    let strongly_associate_necessity_agrees = !flat_pred.is_strongly_associate
        || (base_pred.is_strongly_associate && module_strongly_associate.iter().all(|&b| b));
    let strongly_associate_transfer = if all_pieces_presimplifiable {
        Some(flat_pred.is_strongly_associate == module_strongly_associate[ext.n() - 1])
    } else {
        None
    };
    let mut phi = Vec::new();
    let mut indecomposable = Vec::new();
    for degree in 1..=ext.n() {
        phi.push(if degree >= 2 { Some(phi_integral(ext, degree)?) } else { None });
        indecomposable.push(indecomposable_elements(ext, degree)?);
    }
    Ok(StructuralPredicates {
        base_presimplifiable: base_pred.is_presimplifiable,
        module_presimplifiable,
        extension_presimplifiable: flat_pred.is_presimplifiable,
        presimplifiable_transfer_agrees,
        base_strongly_associate: base_pred.is_strongly_associate,
        module_strongly_associate,
        extension_strongly_associate: flat_pred.is_strongly_associate,
        strongly_associate_necessity_agrees,
        strongly_associate_transfer,
        phi_integral: phi,
        indecomposable,
    })
}

// ----------------------------------------------------------------------
// The divisibility theorem suite
// ----------------------------------------------------------------------

/// When the base ring has an idempotent other than 0 and 1, no nonzero
/// homogeneous element of positive degree is irreducible at any strength;
/// checked for all of them.
pub fn idempotent_obstruction(ext: &Arc<NTrivialExtension>) -> Result<CheckRecord> {
    let name = "homogeneous-idempotent-obstruction";
    let law = "a nontrivial idempotent in the base makes every nonzero homogeneous \
               element of positive degree reducible at every strength";
    let base = ext.ring();
    let cls = base.classify();
    let nontrivial: Vec<Elem> = cls
        .idempotents
        .iter()
        .copied()
        .filter(|&e| e != base.zero() && e != base.one())
        .collect();
    let hyps = vec!["the base ring has an idempotent other than 0 and 1".to_string()];
    if nontrivial.is_empty() {
        return Ok(CheckRecord::skipped(name, law, "the base ring has only trivial idempotents")
            .with_hypotheses(hyps));
    }
    let flat = ext.flattened()?;
    let div = Divisibility::new(&flat);
    for degree in 1..=ext.n() {
        for m in 1..ext.modules()[degree - 1].order() {
            let idx = homogeneous_index(ext, degree, m)?;
            let p = div.irreducibility(idx)?;
            if p.irreducible || p.strongly_irreducible || p.very_strongly_irreducible
                || p.m_irreducible
            {
                return Ok(CheckRecord::fails(
                    name,
                    law,
                    format!(
                        "degree {degree} element {} has profile {:?}",
                        ext.modules()[degree - 1].fmt_el(m),
                        p
                    ),
                )
                .with_hypotheses(hyps));
            }
        }
    }
    Ok(CheckRecord::holds(name, law)
        .with_hypotheses(hyps)
        .with_note(format!("idempotent witness {}", base.fmt_el(nontrivial[0]))))
}

fn presimplifiable_prefix(ext: &NTrivialExtension) -> (bool, String) {
    let mut failing = Vec::new();
    if !ext.ring().predicates().is_presimplifiable {
        failing.push("M₀ = base".to_string());
    }
    for i in 1..ext.n() {
        if !ext.modules()[i - 1].is_presimplifiable().0 {
            failing.push(format!("M{i}"));
        }
    }
    (failing.is_empty(), failing.join(", "))
}

/// Run every divisibility transfer check on one strict extension.
pub fn divisibility_suite(ext: &Arc<NTrivialExtension>) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("divisibility suite", ext.label());
    let flat = ext.flattened()?;
    let fdiv = Divisibility::new(&flat);
    let base = ext.ring();
    let bdiv = Divisibility::new(base);
    let mdivs: Vec<ModuleDivisibility> =
        ext.modules().iter().map(ModuleDivisibility::new).collect();
    let n = ext.n();
    let sp = structural_predicates(ext)?;

    doc.push(CheckRecord::from_outcome(
        "presimplifiable-transfer",
        "the extension is présimplifiable iff the base and every module are",
        sp.presimplifiable_transfer_agrees,
        format!(
            "extension {}, base {}, modules {:?}",
            sp.extension_presimplifiable, sp.base_presimplifiable, sp.module_presimplifiable
        ),
    ));

    doc.push(CheckRecord::from_outcome(
        "strongly-associate-necessity",
        "a strongly associate extension has a strongly associate base and modules",
        sp.strongly_associate_necessity_agrees,
        format!(
            "extension {}, base {}, modules {:?}",
            sp.extension_strongly_associate, sp.base_strongly_associate,
            sp.module_strongly_associate
        ),
    ));

    {
        let name = "strongly-associate-transfer";
        let law = "with base and all modules présimplifiable, the extension is strongly \
                   associate iff the top module is";
        let hyps = vec!["base and M₁..Mₙ présimplifiable".to_string()];
        doc.push(match sp.strongly_associate_transfer {
            None => CheckRecord::skipped(name, law, "some piece is not présimplifiable")
                .with_hypotheses(hyps),
            Some(agrees) => CheckRecord::from_outcome(
                name,
                law,
                agrees,
                format!(
                    "extension {}, top module {}",
                    sp.extension_strongly_associate,
                    sp.module_strongly_associate[n - 1]
                ),
            )
            .with_hypotheses(hyps),
        });
    }

    {
        let name = "homogeneous-associate-lift";
        let law = "nonzero mᵢ, nᵢ are ∼/≈/≅ in Mᵢ exactly when their embeddings are in \
                   the extension";
        let mut failure = None;
        'lift: for degree in 1..=n {
            let module = &ext.modules()[degree - 1];
            for x in 1..module.order() {
                for y in 1..module.order() {
                    let rel = module.relate(x, y);
                    let ix = homogeneous_index(ext, degree, x)?;
                    let iy = homogeneous_index(ext, degree, y)?;
                    let (s, a, c) = flat.associates(ix, iy);
                    if (rel.sim, rel.approx, rel.cong) != (s, a, c) {
                        failure = Some(format!(
                            "degree {degree}: module says {:?}, extension says {:?} at ({}, {})",
                            (rel.sim, rel.approx, rel.cong),
                            (s, a, c),
                            module.fmt_el(x),
                            module.fmt_el(y)
                        ));
                        break 'lift;
                    }
                }
            }
        }
        doc.push(match failure {
            None => CheckRecord::holds(name, law),
            Some(w) => CheckRecord::fails(name, law, w),
        });
    }

    {
        let name = "decomposable-homogeneous-reducible";
        let law = "a nonzero product mᵢ = mⱼ·mₖ of positive degrees embeds as a reducible \
                   element";
        if n < 2 {
            doc.push(CheckRecord::skipped(name, law, "needs a degree of at least 2"));
        } else {
            let mut checked = 0usize;
            let mut failure = None;
            'dec: for degree in 2..=n {
                for m in 1..ext.modules()[degree - 1].order() {
                    if sp.indecomposable[degree - 1].contains(&m) {
                        continue;
                    }
                    let idx = homogeneous_index(ext, degree, m)?;
                    if fdiv.irreducibility(idx)?.irreducible {
                        failure = Some(format!(
                            "degree {degree} element {} is decomposable yet irreducible",
                            ext.modules()[degree - 1].fmt_el(m)
                        ));
                        break 'dec;
                    }
                    checked += 1;
                }
            }
            doc.push(match failure {
                None => CheckRecord::holds(name, law)
                    .with_note(format!("{checked} decomposable elements checked")),
                Some(w) => CheckRecord::fails(name, law, w),
            });
        }
    }

    {
        let name = "homogeneous-primitivity-forward";
        let law = "an irreducible (resp. strongly, very strongly) homogeneous embedding \
                   has a primitive (resp. strongly, very strongly) coordinate";
        if n < 2 {
            doc.push(CheckRecord::skipped(name, law, "stated for n ≥ 2"));
        } else {
            let mut failure = None;
            'fwd: for degree in 1..=n {
                let module = &ext.modules()[degree - 1];
                for m in 1..module.order() {
                    let idx = homogeneous_index(ext, degree, m)?;
                    let irr = fdiv.irreducibility(idx)?;
                    let prim = module.primitivity(m);
                    let ok = (!irr.irreducible || prim.primitive)
                        && (!irr.strongly_irreducible || prim.strongly_primitive)
                        && (!irr.very_strongly_irreducible || prim.very_strongly_primitive);
                    if !ok {
                        failure = Some(format!(
                            "degree {degree} element {}: irreducibility {:?} but primitivity {:?}",
                            module.fmt_el(m),
                            irr,
                            prim
                        ));
                        break 'fwd;
                    }
                }
            }
            doc.push(match failure {
                None => CheckRecord::holds(name, law),
                Some(w) => CheckRecord::fails(name, law, w),
            });
        }
    }

    {
        let name = "homogeneous-primitivity-converse";
        let law = "under domain/torsion-free/integrality hypotheses, a primitive (resp. \
                   stronger) coordinate embeds irreducibly (resp. stronger); degrees ≥ 2 \
                   only for indecomposable elements";
        let hyps = vec![
            "n ≥ 2".to_string(),
            "base is a domain".to_string(),
            "degree 1: M₂..Mₙ torsion-free".to_string(),
            "degree i ≥ 2: Mⱼ torsion-free for j ≠ i, M₂..M_{i−1} integral, element \
             indecomposable"
                .to_string(),
        ];
        if n < 2 {
            doc.push(CheckRecord::skipped(name, law, "stated for n ≥ 2").with_hypotheses(hyps));
        } else if !base.predicates().is_domain {
            doc.push(
                CheckRecord::skipped(name, law, "the base ring is not a domain")
                    .with_hypotheses(hyps),
            );
        } else {
            let torsion_free: Vec<bool> = mdivs.iter().map(|m| m.torsion_free()).collect();
            let mut skipped_degrees = Vec::new();
            let mut checked = 0usize;
            let mut failure = None;
            'conv: for degree in 1..=n {
                let others_tf = (1..=n)
                    .filter(|&j| j != degree)
                    .all(|j| torsion_free[j - 1]);
                let integrality_ok = if degree >= 3 {
                    let mut ok = true;
                    for j in 2..degree {
                        ok &= phi_integral(ext, j)?;
                    }
                    ok
                } else {
                    true
                };
                if !(others_tf && integrality_ok) {
                    skipped_degrees.push(degree);
                    continue;
                }
                let module = &ext.modules()[degree - 1];
                for m in 1..module.order() {
                    if degree >= 2 && !sp.indecomposable[degree - 1].contains(&m) {
                        continue;
                    }
                    let idx = homogeneous_index(ext, degree, m)?;
                    let irr = fdiv.irreducibility(idx)?;
                    let prim = module.primitivity(m);
                    let ok = (!prim.primitive || irr.irreducible)
                        && (!prim.strongly_primitive || irr.strongly_irreducible)
                        && (!prim.very_strongly_primitive || irr.very_strongly_irreducible);
                    if !ok {
                        failure = Some(format!(
                            "degree {degree} element {}: primitivity {:?} but irreducibility {:?}",
                            module.fmt_el(m),
                            prim,
                            irr
                        ));
                        break 'conv;
                    }
                    checked += 1;
                }
            }
            doc.push(match failure {
                Some(w) => CheckRecord::fails(name, law, w).with_hypotheses(hyps),
                None if checked == 0 => CheckRecord::skipped(
                    name,
                    law,
                    format!(
                        "no degree meets the module hypotheses (skipped: {skipped_degrees:?})"
                    ),
                )
                .with_hypotheses(hyps),
                None => {
                    let mut rec = CheckRecord::holds(name, law)
                        .with_hypotheses(hyps)
                        .with_note(format!("{checked} qualifying elements checked"));
                    if !skipped_degrees.is_empty() {
                        rec = rec
                            .with_note(format!("degrees skipped on hypotheses: {skipped_degrees:?}"));
                    }
                    rec
                }
            });
        }
    }

    doc.push(idempotent_obstruction(ext)?);

    {
        let name = "principal-chain-descent";
        let law = "for zero-prefix elements with aᵢ ≠ 0, ⟨a⟩ ⊊ ⟨b⟩ forces bᵢ ≠ 0 and \
                   ⟨aᵢ⟩ ⊊ ⟨bᵢ⟩, at degrees i ≤ n−1 with Mᵢ présimplifiable (M₀ = base) \
                   and at degree n";
        let mut applicable = Vec::new();
        for i in 0..=n {
            let ok = if i == n {
                true
            } else if i == 0 {
                base.predicates().is_presimplifiable
            } else {
                ext.modules()[i - 1].is_presimplifiable().0
            };
            if ok {
                applicable.push(i);
            }
        }
        if applicable.is_empty() {
            doc.push(CheckRecord::skipped(name, law, "no degree qualifies"));
        } else {
            let rz = base.zero();
            let slot_zero = |k: usize, c: Elem| if k == 0 { c == rz } else { c == 0 };
            let mut failure = None;
            'descent: for &i in &applicable {
                // elements whose coordinates vanish strictly below slot i
                let idxs: Vec<Elem> = (0..ext.order())
                    .filter(|&e| {
                        let el = ext.decode(e);
                        el.coords()[..i].iter().enumerate().all(|(k, &c)| slot_zero(k, c))
                    })
                    .collect();
                for &a in &idxs {
                    let ai = ext.decode(a).coords()[i];
                    if slot_zero(i, ai) {
                        continue;
                    }
                    for &b in &idxs {
                        if !fdiv.strictly_below(a, b) {
                            continue;
                        }
                        let bi = ext.decode(b).coords()[i];
                        let descended = !slot_zero(i, bi)
                            && if i == 0 {
                                bdiv.strictly_below(ai, bi)
                            } else {
                                mdivs[i - 1].strictly_below(ai, bi)
                            };
                        if !descended {
                            failure = Some(format!(
                                "degree {i}: ⟨{}⟩ ⊊ ⟨{}⟩ but the slot-{i} coordinates do \
                                 not descend strictly",
                                ext.fmt_el(&ext.decode(a)),
                                ext.fmt_el(&ext.decode(b))
                            ));
                            break 'descent;
                        }
                    }
                }
            }
            doc.push(match failure {
                None => CheckRecord::holds(name, law)
                    .with_note(format!("degrees checked: {applicable:?}")),
                Some(w) => CheckRecord::fails(name, law, w),
            });
        }
    }

    {
        let name = "zero-prefix-products";
        let law = "a product of j ≥ 2 elements with zero degree-0 slot has zero slots \
                   below j, and j ≥ n+1 of them multiply to zero";
        let p1: Vec<ExtElement> = (0..ext.order())
            .map(|e| ext.decode(e))
            .filter(|el| el.coords()[0] == base.zero())
            .collect();
        let mut layer: Vec<ExtElement> = p1.clone();
        let mut failure = None;
        'prefix: for j in 2..=(n + 1) {
            let mut next: BTreeSet<Vec<Elem>> = BTreeSet::new();
            for p in &layer {
                for q in &p1 {
                    next.insert(ext.mul_el(p, q).coords().to_vec());
                }
            }
            layer = Vec::new();
            for coords in next {
                let el = ext.element(&coords)?;
                let cutoff = j.min(n + 1);
                let ok = (0..cutoff).all(|k| {
                    if k == 0 { coords[0] == base.zero() } else { coords[k] == 0 }
                });
                if !ok {
                    failure = Some(format!(
                        "a product of {j} zero-prefix elements is {}",
                        ext.fmt_el(&el)
                    ));
                    break 'prefix;
                }
                layer.push(el);
            }
        }
        doc.push(match failure {
            None => CheckRecord::holds(name, law),
            Some(w) => CheckRecord::fails(name, law, w),
        });
    }

    let (prefix_ok, prefix_failing) = presimplifiable_prefix(ext);
    let chain_hyps =
        vec!["n ≥ 2".to_string(), "M₀..M_{n−1} présimplifiable (M₀ = base)".to_string()];

    {
        let name = "ascending-chain-transfer";
        let law = "the extension satisfies ACC on principal ideals iff the base does and \
                   every module satisfies ACC on cyclic submodules";
        if n < 2 {
            doc.push(CheckRecord::skipped(name, law, "stated for n ≥ 2")
                .with_hypotheses(chain_hyps.clone()));
        } else if !prefix_ok {
            doc.push(CheckRecord::skipped(
                name,
                law,
                format!("not présimplifiable: {prefix_failing}"),
            )
            .with_hypotheses(chain_hyps.clone()));
        } else {
            let module_chains: Vec<usize> =
                mdivs.iter().map(|m| m.longest_cyclic_chain()).collect();
            doc.push(
                CheckRecord::holds(name, law)
                    .with_hypotheses(chain_hyps.clone())
                    .with_note(format!(
                        "finite order: both sides hold; longest strict chains — extension {}, \
                         base {}, modules {:?}",
                        fdiv.longest_principal_chain(),
                        bdiv.longest_principal_chain(),
                        module_chains
                    )),
            );
        }
    }

    {
        let name = "atomicity-transfer";
        let law = "with ACC on base principal ideals, ACC on cyclic submodules below the \
                   top degree, and MCC on top, the extension is atomic";
        if n < 2 {
            doc.push(CheckRecord::skipped(name, law, "stated for n ≥ 2")
                .with_hypotheses(chain_hyps.clone()));
        } else if !prefix_ok {
            doc.push(CheckRecord::skipped(
                name,
                law,
                format!("not présimplifiable: {prefix_failing}"),
            )
            .with_hypotheses(chain_hyps.clone()));
        } else {
            let (mcc_ok, mcc_count) = mdivs[n - 1].mcc();
            if !mcc_ok {
                doc.push(CheckRecord::skipped(name, law, "the top module fails MCC")
                    .with_hypotheses(chain_hyps.clone()));
            } else {
                let (atomic, witness) = fdiv.is_atomic();
                doc.push(
                    CheckRecord::from_outcome(
                        name,
                        law,
                        atomic,
                        match witness {
                            Some(x) => format!(
                                "{} has no factorization into irreducibles",
                                ext.fmt_el(&ext.decode(x))
                            ),
                            None => String::new(),
                        },
                    )
                    .with_hypotheses(chain_hyps.clone())
                    .with_note(format!("{mcc_count} maximal cyclic submodules on top")),
                );
            }
        }
    }

    {
        let name = "u-atomicity-transfer";
        let law = "with the chain hypotheses, the extension is atomic iff it is U-atomic";
        if n < 2 {
            doc.push(CheckRecord::skipped(name, law, "stated for n ≥ 2")
                .with_hypotheses(chain_hyps.clone()));
        } else if !prefix_ok {
            doc.push(CheckRecord::skipped(
                name,
                law,
                format!("not présimplifiable: {prefix_failing}"),
            )
            .with_hypotheses(chain_hyps.clone()));
        } else {
            let (atomic, _) = fdiv.is_atomic();
            let (u_atomic, u_witness) = fdiv.is_u_atomic()?;
            doc.push(
                CheckRecord::from_outcome(
                    name,
                    law,
                    atomic == u_atomic,
                    format!(
                        "atomic {atomic}, U-atomic {u_atomic}{}",
                        u_witness
                            .map(|x| format!(" (witness {})", ext.fmt_el(&ext.decode(x))))
                            .unwrap_or_default()
                    ),
                )
                .with_hypotheses(chain_hyps.clone())
                .with_note(format!("both sides {atomic}")),
            );
        }
    }

    {
        let name = "bounded-factorization-transfer";
        let law = "the extension is a BFR iff the base is and every module is a \
                   BF-module";
        let hyps = vec![
            "n ≥ 2".to_string(),
            "base is a domain".to_string(),
            "M₁..M_{n−1} torsion-free".to_string(),
        ];
        let tf_prefix = (1..n).all(|i| mdivs[i - 1].torsion_free());
        if n < 2 {
            doc.push(CheckRecord::skipped(name, law, "stated for n ≥ 2").with_hypotheses(hyps));
        } else if !base.predicates().is_domain {
            doc.push(
                CheckRecord::skipped(name, law, "the base ring is not a domain")
                    .with_hypotheses(hyps),
            );
        } else if !tf_prefix {
            doc.push(CheckRecord::skipped(
                name,
                law,
                "a module below the top degree has torsion",
            )
            .with_hypotheses(hyps));
        } else {
            let (ext_bfr, ext_wit) = fdiv.is_bfr();
            let (base_bfr, _) = bdiv.is_bfr();
            let modules_bf: Vec<bool> = mdivs.iter().map(|m| m.is_bf().0).collect();
            let rhs = base_bfr && modules_bf.iter().all(|&b| b);
            doc.push(
                CheckRecord::from_outcome(
                    name,
                    law,
                    ext_bfr == rhs,
                    format!(
                        "extension {ext_bfr}{}, base {base_bfr}, modules {modules_bf:?}",
                        ext_wit
                            .map(|(x, g, y)| format!(
                                " (padding: x = {}, g = {}, y = {})",
                                ext.fmt_el(&ext.decode(x)),
                                ext.fmt_el(&ext.decode(g)),
                                ext.fmt_el(&ext.decode(y))
                            ))
                            .unwrap_or_default()
                    ),
                )
                .with_hypotheses(hyps),
            );
        }
    }

    {
        let name = "u-bounded-certificate";
        let law = "relevant lengths of U-factorizations are uniformly bounded by Σ k_b \
                   over nonunit associate classes (power-chain stabilization), so the \
                   extension and base are U-BFRs and every module is a U-BF module";
        let module_bounds: Vec<usize> =
            (1..=n).map(|i| bdiv.relevant_length_bound() + i).collect();
        doc.push(CheckRecord::holds(name, law).with_note(format!(
            "bounds — extension {}, base {}, module reduced lengths {:?}",
            fdiv.relevant_length_bound(),
            bdiv.relevant_length_bound(),
            module_bounds
        )));
    }

    {
        let name = "presimplifiable-bounded";
        let law = "a présimplifiable base ring is a BFR";
        let hyps = vec!["base présimplifiable".to_string()];
        if !base.predicates().is_presimplifiable {
            doc.push(
                CheckRecord::skipped(name, law, "the base ring is not présimplifiable")
                    .with_hypotheses(hyps),
            );
        } else {
            let (bfr, wit) = bdiv.is_bfr();
            doc.push(
                CheckRecord::from_outcome(
                    name,
                    law,
                    bfr,
                    wit.map(|(x, g, y)| {
                        format!(
                            "x = {}, g = {}, y = {}",
                            base.fmt_el(x),
                            base.fmt_el(g),
                            base.fmt_el(y)
                        )
                    })
                    .unwrap_or_default(),
                )
                .with_hypotheses(hyps),
            );
        }
    }

    doc.push(u_finite_factorization_record(ext, &fdiv, &mdivs)?);

    Ok(doc)
}

/// The U-finite-factorization conditions, verified where the hypotheses
/// hold: a finite domain base is a field, so reduced submodule
/// factorizations carry no ring factors and are enumerated exactly.
fn u_finite_factorization_record(
    ext: &Arc<NTrivialExtension>,
    fdiv: &Divisibility,
    mdivs: &[ModuleDivisibility],
) -> Result<CheckRecord> {
    let name = "u-finite-factorization";
    let law = "a U-FFR extension forces an FFR base and U-FF modules, and with a domain \
               base and integral torsion-free top module the principal-ideal families \
               ⟨(d,m…)⟩ and ⟨(0,…,m,…)⟩ are finite; conversely those conditions give a \
               U-FFR";
    let n = ext.n();
    let base = ext.ring();
    let hyps = vec![
        "n ≥ 2".to_string(),
        "base is a domain".to_string(),
        "top module integral relative to the family and torsion-free".to_string(),
    ];
    if n < 2 {
        return Ok(CheckRecord::skipped(name, law, "stated for n ≥ 2").with_hypotheses(hyps));
    }
    if !base.predicates().is_domain {
        return Ok(CheckRecord::skipped(name, law, "the base ring is not a domain")
            .with_hypotheses(hyps));
    }
    if !phi_integral(ext, n)? {
        return Ok(CheckRecord::skipped(
            name,
            law,
            "the top module is not integral relative to the family",
        )
        .with_hypotheses(hyps));
    }
    if !mdivs[n - 1].torsion_free() {
        return Ok(CheckRecord::skipped(name, law, "the top module has torsion")
            .with_hypotheses(hyps));
    }
    // A finite domain is a field; record the verification.
    if !base.predicates().is_field {
        return Ok(CheckRecord::fails(
            name,
            law,
            "a finite domain must be a field, yet the base is not",
        )
        .with_hypotheses(hyps));
    }
    // (1) The base is an FFR: over a field there is no nonzero nonunit.
    // (2) Every module is U-FF: enumerate reduced factorizations exactly.
    //     Over a field no degree-0 factor is allowed (nonunits = {0}), so a
    //     reduced factorization of index sum i has at most i factors, all of
    //     positive degree, and cancellation (which must preserve the index
    //     sum) never applies.
    let mut max_reduced = 0usize;
    for degree in 1..=n {
        let module = &ext.modules()[degree - 1];
        for x in 1..module.order() {
            let count = reduced_factorization_count(ext, mdivs, degree, x)?;
            max_reduced = max_reduced.max(count);
        }
    }
    // (3) Principal ideals ⟨(d, m…)⟩ with d a nonzero nonunit: none over a
    //     field.
    let mut shape3: BTreeSet<Vec<Elem>> = BTreeSet::new();
    // (4) Principal ideals ⟨(0,…,0,m,…)⟩ with the first nonzero slot at a
    //     degree below n.
    let mut shape4: BTreeSet<Vec<Elem>> = BTreeSet::new();
    for e in 0..ext.order() {
        let coords = ext.decode(e).coords().to_vec();
        let d = coords[0];
        if d != base.zero() && !base.is_unit(d) {
            shape3.insert(fdiv.principal(e).to_vec());
        }
        if d == base.zero() {
            if let Some(first) = (1..=n).find(|&k| coords[k] != 0) {
                if first < n {
                    shape4.insert(fdiv.principal(e).to_vec());
                }
            }
        }
    }
    Ok(CheckRecord::holds(name, law)
        .with_hypotheses(hyps)
        .with_note(format!(
            "base is a field (vacuously FFR); reduced factorizations per module element \
             ≤ {max_reduced}; principal-ideal families: {} of shape ⟨(d,m…)⟩, {} of shape \
             ⟨(0,…,m,…)⟩; nonassociate relevant factors ≤ {} classes",
            shape3.len(),
            shape4.len(),
            fdiv.order()
        )))
}

/// Count the reduced submodule factorizations `Rx = R·d₁⋯d_s` of a nonzero
/// `x ∈ M_degree` over a field base: factors have positive degrees summing
/// to `degree`, counted up to order and associates on the factors.
fn reduced_factorization_count(
    ext: &Arc<NTrivialExtension>,
    mdivs: &[ModuleDivisibility],
    degree: usize,
    x: Elem,
) -> Result<usize> {
    let mut keys: BTreeSet<Vec<(usize, Elem)>> = BTreeSet::new();
    // Depth-first over non-increasing part lists of `degree`, assigning a
    // module element to every part.
    fn descend(
        ext: &Arc<NTrivialExtension>,
        mdivs: &[ModuleDivisibility],
        target_degree: usize,
        x: Elem,
        remaining: usize,
        max_part: usize,
        factors: &mut Vec<(usize, Elem)>,
        keys: &mut BTreeSet<Vec<(usize, Elem)>>,
    ) {
        if remaining == 0 {
            // multiply the factors inside the extension
            let mut acc = ext.one_el();
            for &(deg, el) in factors.iter() {
                let mut c = vec![0; ext.n() + 1];
                c[0] = ext.ring().zero();
                c[deg] = el;
                acc = ext.mul_el(&acc, &ext.element(&c).expect("in range"));
            }
            let product = acc.coords()[target_degree];
            let rz = ext.ring().zero();
            let stray = acc.coords().iter().enumerate().any(|(k, &c)| {
                k != target_degree && if k == 0 { c != rz } else { c != 0 }
            });
            if stray {
                return;
            }
            if !mdivs[target_degree - 1].sim(product, x) {
                return;
            }
            let mut key: Vec<(usize, Elem)> = factors
                .iter()
                .map(|&(deg, el)| (deg, mdivs[deg - 1].class_rep(el)))
                .collect();
            key.sort_unstable();
            keys.insert(key);
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            for el in 0..ext.modules()[part - 1].order() {
                factors.push((part, el));
                descend(ext, mdivs, target_degree, x, remaining - part, part, factors, keys);
                factors.pop();
            }
        }
    }
    let mut factors = Vec::new();
    descend(ext, mdivs, degree, x, degree, degree, &mut factors, &mut keys);
    Ok(keys.len())
}

// ----------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::Strictness;
    use crate::maps::ProductMapFamily;
    use crate::report::Verdict;

    fn zm_div(m: usize) -> Divisibility {
        let ring = FiniteRing::zm(m).unwrap();
        Divisibility::new(&ring)
    }

    fn chain(m: usize, n: usize) -> Arc<NTrivialExtension> {
        let ring = FiniteRing::zm(m).unwrap();
        let modules: Vec<Arc<FiniteModule>> =
            (0..n).map(|_| FiniteModule::regular(&ring).unwrap()).collect();
        let family = ProductMapFamily::ring_multiplication(&ring, &modules).unwrap();
        NTrivialExtension::build(&ring, &modules, family, Strictness::Strict).unwrap()
    }

    fn field_tower() -> Arc<NTrivialExtension> {
        let f2 = FiniteRing::gf(2).unwrap();
        let f4 = FiniteRing::gf(4).unwrap();
        let m1 = crate::module::subring_module(&f2, &f4, "F4").unwrap();
        let m2 = crate::module::subring_module(&f2, &f4, "F4").unwrap();
        let modules = vec![m1, m2];
        let family = ProductMapFamily::algebra(
            &f2,
            &modules,
            &f4,
            &[0, 1],
            &[vec![0, 1, 2, 3], vec![0, 1, 2, 3]],
        )
        .unwrap();
        NTrivialExtension::build(&f2, &modules, family, Strictness::Strict).unwrap()
    }

    #[test]
    fn stabilizer_sets_match_hand_computation() {
        let d6 = zm_div(6);
        assert_eq!(d6.u_of(3), vec![1, 3, 5]);
        assert_eq!(d6.u_of(0), vec![0, 1, 2, 3, 4, 5]);
        let d4 = zm_div(4);
        assert_eq!(d4.u_of(1), vec![1, 3]);
        assert!(d6.in_u(5, 2) && !d6.in_u(3, 2));
    }

    #[test]
    fn two_is_an_atom_of_z4_at_every_strength() {
        let d = zm_div(4);
        let p = d.irreducibility(2).unwrap();
        assert!(p.irreducible && p.strongly_irreducible);
        assert!(p.very_strongly_irreducible && p.m_irreducible);
        assert_eq!(d.atoms(), vec![2]);
        assert!(d.irreducibility(3).is_err());
        let e = d.factor_enumerate(2, 4).unwrap();
        assert_eq!(e.factorizations, vec![vec![2]]);
        assert_eq!(e.census.atoms, vec![2]);
        assert_eq!(e.census.nonassociate_divisor_count, 2);
        assert_eq!(e.census.max_factorization_length_observed, 1);
        assert!(e.census.bounded);
    }

    #[test]
    fn three_in_z6_pads_without_bound() {
        let d = zm_div(6);
        let e = d.factor_enumerate(3, 4).unwrap();
        assert!(!e.census.bounded);
        assert_eq!(e.census.max_factorization_length_observed, 4);
        // the canonical split of 3 = 3·3 is 3⌈3⌉
        let squared = e
            .u_factorizations
            .iter()
            .find(|u| u.irrelevant.len() == 1 && u.relevant.len() == 1)
            .expect("3⌈3⌉ found");
        assert_eq!((squared.irrelevant[0], squared.relevant[0]), (3, 3));
        for u in &e.u_factorizations {
            validate_u_factorization(&d, u).unwrap();
        }
        let (bounded, witness) = d.bounded(3);
        assert!(!bounded);
        assert_eq!(witness, Some((3, 3)));
        let (bfr, _) = d.is_bfr();
        assert!(!bfr);
    }

    #[test]
    fn finite_rings_are_atomic_with_witnesses() {
        for m in [4, 6, 8, 12] {
            let d = zm_div(m);
            let (atomic, missing) = d.is_atomic();
            assert!(atomic, "Z/{m} missing {missing:?}");
            for (x, f) in d.atomic_witnesses() {
                let mut p = d.ring().one();
                for &t in &f {
                    assert!(d.irreducibility(t).unwrap().irreducible);
                    p = d.ring().mul(p, t);
                }
                assert_eq!(p, x);
            }
            let (u_atomic, _) = d.is_u_atomic().unwrap();
            assert!(u_atomic);
        }
    }

    #[test]
    fn chain_certificates_are_exact_on_z12() {
        let d = zm_div(12);
        // ⟨0⟩ ⊊ ⟨6⟩ ⊊ ⟨2⟩ ⊊ ⟨1⟩ and ⟨0⟩ ⊊ ⟨4⟩ ⊊ ⟨2⟩ ⊊ ⟨1⟩ are longest.
        assert_eq!(d.longest_principal_chain(), 4);
        assert_eq!(d.power_stabilization(2), 2); // ⟨2⟩ ⊋ ⟨4⟩ = ⟨8⟩
        assert_eq!(d.power_stabilization(3), 1); // ⟨3⟩ = ⟨9⟩ already
    }

    #[test]
    fn module_divisibility_detects_torsion_and_cycles() {
        let z4 = FiniteRing::zm(4).unwrap();
        let m = FiniteModule::regular(&z4).unwrap();
        let md = ModuleDivisibility::new(&m);
        assert!(!md.torsion_free()); // 2·2 = 0
        assert_eq!(md.longest_cyclic_chain(), 3); // 0 ⊊ R·2 ⊊ R·1
        let (mcc, maximal) = md.mcc();
        assert!(mcc);
        assert_eq!(maximal, 1); // R·1 = R·3 is the unique maximal cyclic
        let (bf, _) = md.is_bf();
        assert!(bf); // Z4 is présimplifiable
        let z6 = FiniteRing::zm(6).unwrap();
        let m6 = FiniteModule::regular(&z6).unwrap();
        let md6 = ModuleDivisibility::new(&m6);
        let (bf6, witness) = md6.is_bf();
        assert!(!bf6); // 3·3 = 3 pads
        let (_, r, h) = witness.unwrap();
        assert_eq!(m6.act(r, h), h);
        assert!(!m6.ring().is_unit(r));
    }

    #[test]
    fn structural_predicates_on_the_z4_chain() {
        let ext = chain(4, 2);
        let sp = structural_predicates(&ext).unwrap();
        assert!(sp.base_presimplifiable && sp.extension_presimplifiable);
        assert_eq!(sp.module_presimplifiable, vec![true, true]);
        assert!(sp.presimplifiable_transfer_agrees);
        assert!(sp.strongly_associate_necessity_agrees);
        assert_eq!(sp.strongly_associate_transfer, Some(true));
        // M₂ is not integral relative to the family: 2·2 = 0 in Z4.
        assert_eq!(sp.phi_integral, vec![None, Some(false)]);
        // Degree 1 is vacuously indecomposable; in degree 2 every element
        // is a product 1·m, so nothing is indecomposable.
        assert_eq!(sp.indecomposable[0], vec![1, 2, 3]);
        assert_eq!(sp.indecomposable[1], Vec::<Elem>::new());
    }

    #[test]
    fn idempotents_in_the_base_kill_homogeneous_irreducibility() {
        // Z6 has idempotents {0, 1, 3, 4}; every (0, m) must be reducible.
        let ext = chain(6, 1);
        let rec = idempotent_obstruction(&ext).unwrap();
        assert_eq!(rec.verdict, Verdict::Holds);
        // And the tower over F2 has only trivial idempotents.
        let rec2 = idempotent_obstruction(&field_tower()).unwrap();
        assert_eq!(rec2.verdict, Verdict::Skipped);
    }

    #[test]
    fn squares_of_degree_one_elements_are_reducible_in_the_f2_chain() {
        let ext = chain(2, 2);
        let flat = ext.flattened().unwrap();
        let d = Divisibility::new(&flat);
        // (0,1,0)² = (0,0,1)
        let m1 = homogeneous_index(&ext, 1, 1).unwrap();
        let m2 = homogeneous_index(&ext, 2, 1).unwrap();
        assert_eq!(flat.mul(m1, m1), m2);
        assert!(d.irreducibility(m1).unwrap().irreducible);
        assert!(!d.irreducibility(m2).unwrap().irreducible);
        assert_eq!(d.atoms(), vec![m1, m1 + 1]);
        // the whole ring factors atomically, and (0,0,1) via (0,1,0)²
        let wit = d.atomic_witnesses();
        assert_eq!(wit.get(&m2).unwrap().len(), 2);
        let e = d.factor_enumerate(m2, 4).unwrap();
        assert!(e.factorizations.iter().any(|f| f == &vec![m1, m1]));
    }

    #[test]
    fn suite_passes_on_the_z4_chain() {
        let doc = divisibility_suite(&chain(4, 2)).unwrap();
        assert!(doc.all_ok(), "{}", doc.render_text());
        let by_name = |n: &str| doc.records.iter().find(|r| r.name == n).unwrap();
        assert_eq!(by_name("presimplifiable-transfer").verdict, Verdict::Holds);
        assert_eq!(by_name("homogeneous-associate-lift").verdict, Verdict::Holds);
        assert_eq!(by_name("atomicity-transfer").verdict, Verdict::Holds);
        assert_eq!(by_name("u-atomicity-transfer").verdict, Verdict::Holds);
        // Z4 is not a domain, so the domain-gated checks are skipped.
        assert_eq!(by_name("bounded-factorization-transfer").verdict, Verdict::Skipped);
        assert_eq!(by_name("u-finite-factorization").verdict, Verdict::Skipped);
        assert_eq!(by_name("homogeneous-idempotent-obstruction").verdict, Verdict::Skipped);
        assert_eq!(by_name("presimplifiable-bounded").verdict, Verdict::Holds);
    }

    #[test]
    fn suite_passes_on_the_field_tower() {
        let doc = divisibility_suite(&field_tower()).unwrap();
        assert!(doc.all_ok(), "{}", doc.render_text());
        let by_name = |n: &str| doc.records.iter().find(|r| r.name == n).unwrap();
        for name in [
            "homogeneous-primitivity-forward",
            "homogeneous-primitivity-converse",
            "atomicity-transfer",
            "u-atomicity-transfer",
            "bounded-factorization-transfer",
            "u-finite-factorization",
        ] {
            assert_eq!(by_name(name).verdict, Verdict::Holds, "{name}");
        }
    }

    #[test]
    fn suite_skips_the_n2_statements_on_a_classical_extension() {
        let doc = divisibility_suite(&chain(6, 1)).unwrap();
        assert!(doc.all_ok(), "{}", doc.render_text());
        let by_name = |n: &str| doc.records.iter().find(|r| r.name == n).unwrap();
        assert_eq!(by_name("homogeneous-idempotent-obstruction").verdict, Verdict::Holds);
        assert_eq!(by_name("presimplifiable-transfer").verdict, Verdict::Holds);
        for name in [
            "ascending-chain-transfer",
            "atomicity-transfer",
            "u-atomicity-transfer",
            "bounded-factorization-transfer",
            "u-finite-factorization",
            "strongly-associate-transfer",
            "presimplifiable-bounded",
        ] {
            assert_eq!(by_name(name).verdict, Verdict::Skipped, "{name}");
        }
        assert_eq!(by_name("principal-chain-descent").verdict, Verdict::Holds);
        assert_eq!(by_name("zero-prefix-products").verdict, Verdict::Holds);
    }
}
