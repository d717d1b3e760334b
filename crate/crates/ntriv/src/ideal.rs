//! Ideals of finite rings: arithmetic, spectra, homogeneity over extensions,
//! and ring-theoretic property checks (chained, arithmetical, PIR, ...).

use std::collections::HashMap;
use std::sync::Arc;

use crate::extension::{ExtElement, NTrivialExtension};
use crate::module::Submodule;
use crate::ring::{Elem, FiniteRing};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Bit masks over element indices
// ---------------------------------------------------------------------------

fn mask_new(order: usize) -> Vec<u64> {
    vec![0u64; order.div_ceil(64)]
}

fn mask_set(mask: &mut [u64], i: usize) {
    mask[i / 64] |= 1 << (i % 64);
}

fn mask_get(mask: &[u64], i: usize) -> bool {
    mask[i / 64] >> (i % 64) & 1 == 1
}

fn mask_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x & !y == 0)
}

fn mask_of(order: usize, elems: &[Elem]) -> Vec<u64> {
    let mut m = mask_new(order);
    for &e in elems {
        mask_set(&mut m, e);
    }
    m
}

fn mask_elements(mask: &[u64], order: usize) -> Vec<Elem> {
    (0..order).filter(|&i| mask_get(mask, i)).collect()
}

/// Smallest additive subgroup containing all seeds, as a bit mask.
/// `add` must be a group operation on `0..order` with identity 0.
fn additive_span(
    order: usize,
    add: impl Fn(Elem, Elem) -> Elem,
    seeds: impl IntoIterator<Item = Elem>,
) -> Vec<u64> {
    let mut mask = mask_new(order);
    mask_set(&mut mask, 0);
    let mut members = vec![0usize];
    for g in seeds {
        if mask_get(&mask, g) {
            continue;
        }
        // Current span is a subgroup S; extend to S + ⟨g⟩ coset by coset.
        let snapshot = members.clone();
        let mut c = g;
        while !mask_get(&mask, c) {
            for &s in &snapshot {
                let v = add(s, c);
                if !mask_get(&mask, v) {
                    mask_set(&mut mask, v);
                    members.push(v);
                }
            }
            c = add(c, g);
        }
    }
    mask
}

// ---------------------------------------------------------------------------
// Ideal
// ---------------------------------------------------------------------------

/// An ideal of a finite commutative ring, stored as its full element set.
#[derive(Clone)]
pub struct Ideal {
    ambient: Arc<FiniteRing>,
    generators: Vec<Elem>,
    /// Sorted ascending; always contains 0.
    elements: Vec<Elem>,
    mask: Vec<u64>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal⟨{:?}⟩ ({} elements)", self.generators, self.elements.len())
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) && self.elements == other.elements
    }
}
impl Eq for Ideal {}

impl Ideal {
    /// The ideal generated by `gens`: the additive span of all `r·g`.
    pub fn generate(ring: &Arc<FiniteRing>, gens: &[Elem]) -> Result<Ideal> {
        if let Some(&g) = gens.iter().find(|&&g| g >= ring.order()) {
            return Err(Error::InvalidConstruction(format!(
                "generator {g} out of range for {}",
                ring.label()
            )));
        }
        let order = ring.order();
        let mask = additive_span(
            order,
            |x, y| ring.add(x, y),
            gens.iter().flat_map(|&g| (0..order).map(move |r| ring.mul(r, g))),
        );
        Ok(Ideal {
            ambient: ring.clone(),
            generators: gens.to_vec(),
            elements: mask_elements(&mask, order),
            mask,
        })
    }

    /// Wraps an explicit element set after verifying the ideal axioms.
    pub fn from_elements(ring: &Arc<FiniteRing>, elems: &[Elem]) -> Result<Ideal> {
        let order = ring.order();
        if let Some(&e) = elems.iter().find(|&&e| e >= order) {
            return Err(Error::InvalidConstruction(format!(
                "element {e} out of range for {}",
                ring.label()
            )));
        }
        let mask = mask_of(order, elems);
        let elements = mask_elements(&mask, order);
        if !mask_get(&mask, ring.zero()) {
            return Err(Error::InvalidConstruction("ideal must contain 0".into()));
        }
        for &a in &elements {
            for &b in &elements {
                if !mask_get(&mask, ring.add(a, b)) {
                    return Err(Error::InvalidConstruction(format!(
                        "set is not additively closed: {} + {} escapes",
                        ring.fmt_el(a),
                        ring.fmt_el(b)
                    )));
                }
            }
            for r in 0..order {
                if !mask_get(&mask, ring.mul(r, a)) {
                    return Err(Error::InvalidConstruction(format!(
                        "set is not absorbing: {}·{} escapes",
                        ring.fmt_el(r),
                        ring.fmt_el(a)
                    )));
                }
            }
        }
        Ok(Ideal { ambient: ring.clone(), generators: elements.clone(), elements, mask })
    }

    /// Internal constructor for sets that are ideals by construction.
    fn from_mask(ring: &Arc<FiniteRing>, generators: Vec<Elem>, mask: Vec<u64>) -> Ideal {
        let elements = mask_elements(&mask, ring.order());
        Ideal { ambient: ring.clone(), generators, elements, mask }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Ideal {
        let mut mask = mask_new(ring.order());
        mask_set(&mut mask, ring.zero());
        Ideal::from_mask(ring, vec![ring.zero()], mask)
    }

    pub fn whole(ring: &Arc<FiniteRing>) -> Ideal {
        let mask = mask_of(ring.order(), &(0..ring.order()).collect::<Vec<_>>());
        Ideal::from_mask(ring, vec![ring.one()], mask)
    }

    pub fn ambient(&self) -> &Arc<FiniteRing> {
        &self.ambient
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        mask_get(&self.mask, x)
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.ambient.order()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        !self.is_whole()
    }

    pub fn subset_of(&self, other: &Ideal) -> bool {
        mask_subset(&self.mask, &other.mask)
    }

    fn check_ambient(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(format!(
                "ideal over {} combined with ideal over {}",
                self.ambient.label(),
                other.ambient.label()
            )))
        }
    }

    /// `I + J`, computed coset by coset over the larger summand.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ambient(other)?;
        let (big, small) =
            if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut mask = big.mask.clone();
        for &b in &small.elements {
            if !mask_get(&mask, b) {
                for &a in &big.elements {
                    mask_set(&mut mask, self.ambient.add(a, b));
                }
            }
        }
        let mut gens = [self.generators.clone(), other.generators.clone()].concat();
        gens.sort_unstable();
        gens.dedup();
        Ok(Ideal::from_mask(&self.ambient, gens, mask))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ambient(other)?;
        let mask: Vec<u64> =
            self.mask.iter().zip(&other.mask).map(|(&a, &b)| a & b).collect();
        let gens = mask_elements(&mask, self.ambient.order());
        Ok(Ideal::from_mask(&self.ambient, gens, mask))
    }

    /// `I·J`: the additive span of all pairwise generator products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ambient(other)?;
        let ring = &self.ambient;
        let seeds = self
            .generators
            .iter()
            .flat_map(|&a| other.generators.iter().map(move |&b| (a, b)))
            .flat_map(|(a, b)| (0..ring.order()).map(move |r| ring.mul(r, ring.mul(a, b))));
        let mask = additive_span(ring.order(), |x, y| ring.add(x, y), seeds);
        let gens = mask_elements(&mask, ring.order());
        Ok(Ideal::from_mask(ring, gens, mask))
    }

    /// `(I : J) = {x : xJ ⊆ I}`, decided on the generators of `J`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ambient(other)?;
        let ring = &self.ambient;
        let mut mask = mask_new(ring.order());
        for x in 0..ring.order() {
            if other.generators.iter().all(|&g| self.contains(ring.mul(x, g))) {
                mask_set(&mut mask, x);
            }
        }
        let gens = mask_elements(&mask, ring.order());
        Ok(Ideal::from_mask(ring, gens, mask))
    }

    /// `√I = {x : xᵏ ∈ I for some k ≥ 1}`, by walking power orbits.
    pub fn radical(&self) -> Ideal {
        let ring = &self.ambient;
        let order = ring.order();
        let mut mask = mask_new(order);
        for x in 0..order {
            if ring.is_unit(x) && self.is_proper() {
                continue;
            }
            let mut seen: Vec<Elem> = Vec::new();
            let mut y = x;
            loop {
                if self.contains(y) {
                    mask_set(&mut mask, x);
                    break;
                }
                if seen.contains(&y) {
                    break;
                }
                seen.push(y);
                y = ring.mul(y, x);
            }
        }
        let gens = mask_elements(&mask, order);
        Ideal::from_mask(ring, gens, mask)
    }

    /// Is the set `{ab : a,b ∉ I}` disjoint from `I` (and `I` proper)?
    pub fn is_prime(&self) -> bool {
        if self.is_whole() {
            return false;
        }
        let ring = &self.ambient;
        // Primes contain every nilpotent; cheap rejection first.
        if ring.nilpotents().iter().any(|&x| !self.contains(x)) {
            return false;
        }
        let outside: Vec<Elem> =
            (0..ring.order()).filter(|&x| !self.contains(x)).collect();
        for (ai, &a) in outside.iter().enumerate() {
            for &b in &outside[ai..] {
                if self.contains(ring.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Some generator `g` with `⟨g⟩ = I`, if one exists.
    pub fn principal_generator(&self) -> Option<Elem> {
        let ring = &self.ambient;
        self.elements
            .iter()
            .copied()
            .find(|&g| ring.principal(g) == self.elements)
    }

    /// Short display such as `⟨2,3⟩ (4 elements)`.
    pub fn describe(&self) -> String {
        let gens = self
            .generators
            .iter()
            .take(6)
            .map(|&g| self.ambient.fmt_el(g))
            .collect::<Vec<_>>()
            .join(",");
        let ellipsis = if self.generators.len() > 6 { ",…" } else { "" };
        format!("⟨{gens}{ellipsis}⟩ ({} elements)", self.elements.len())
    }
}

// ---------------------------------------------------------------------------
// Ideal enumeration and spectra
// ---------------------------------------------------------------------------

/// All ideals: principal ideals closed under pairwise sums, sorted by
/// (size, element list). Fails with `CapExceeded` past `cap` ideals.
pub fn enumerate_ideals(ring: &Arc<FiniteRing>, cap: usize) -> Result<Vec<Ideal>> {
    let order = ring.order();
    let mut items: Vec<Ideal> = Vec::new();
    let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
    for g in 0..order {
        let elements = ring.principal(g);
        let mask = mask_of(order, &elements);
        if seen.insert(mask.clone(), ()).is_none() {
            items.push(Ideal {
                ambient: ring.clone(),
                generators: vec![g],
                elements,
                mask,
            });
            if items.len() > cap {
                return Err(Error::CapExceeded(format!(
                    "more than {cap} ideals in {}",
                    ring.label()
                )));
            }
        }
    }
    let mut i = 1;
    while i < items.len() {
        for j in 0..i {
            if mask_subset(&items[j].mask, &items[i].mask)
                || mask_subset(&items[i].mask, &items[j].mask)
            {
                continue;
            }
            let s = items[i].sum(&items[j])?;
            if seen.insert(s.mask.clone(), ()).is_none() {
                items.push(s);
                if items.len() > cap {
                    return Err(Error::CapExceeded(format!(
                        "more than {cap} ideals in {}",
                        ring.label()
                    )));
                }
            }
        }
        i += 1;
    }
    items.sort_by(|a, b| {
        (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements))
    });
    Ok(items)
}

/// Ideal lattice data of a finite ring: primes, maximals, radical ideals,
/// nilradical, Jacobson radical, Krull dimension.
pub struct Spectrum {
    pub ideals: Vec<Ideal>,
    /// Indices into `ideals`.
    pub primes: Vec<usize>,
    pub maximals: Vec<usize>,
    pub radicals: Vec<usize>,
    pub nilradical: usize,
    pub jacobson: usize,
    pub krull_dim: usize,
}

pub fn spectrum(ring: &Arc<FiniteRing>, cap: usize) -> Result<Spectrum> {
    let ideals = enumerate_ideals(ring, cap)?;
    let primes: Vec<usize> =
        (0..ideals.len()).filter(|&i| ideals[i].is_prime()).collect();
    let mut maximals = Vec::new();
    for i in 0..ideals.len() {
        if ideals[i].is_whole() {
            continue;
        }
        let covered = ideals.iter().enumerate().any(|(j, other)| {
            j != i
                && !other.is_whole()
                && ideals[i].subset_of(other)
                && other.len() > ideals[i].len()
        });
        if !covered {
            maximals.push(i);
        }
    }
    let radicals: Vec<usize> = (0..ideals.len())
        .filter(|&i| ideals[i].radical().elements == ideals[i].elements)
        .collect();
    let nil_set = ring.nilpotents();
    let jac_set = ring.jacobson_radical();
    let nilradical = ideals
        .iter()
        .position(|i| i.elements == nil_set)
        .ok_or_else(|| Error::Disagreement {
            check: "spectrum".into(),
            witness: "nilradical missing from the enumerated ideal set".into(),
        })?;
    let jacobson = ideals
        .iter()
        .position(|i| i.elements == jac_set)
        .ok_or_else(|| Error::Disagreement {
            check: "spectrum".into(),
            witness: "Jacobson radical missing from the enumerated ideal set".into(),
        })?;
    // Longest chain in the prime poset.
    let mut by_size = primes.clone();
    by_size.sort_by_key(|&i| ideals[i].len());
    let mut depth: HashMap<usize, usize> = HashMap::new();
    let mut krull_dim = 0;
    for (pos, &i) in by_size.iter().enumerate() {
        let mut best = 0;
        for &j in &by_size[..pos] {
            if ideals[j].len() < ideals[i].len() && ideals[j].subset_of(&ideals[i]) {
                best = best.max(depth[&j] + 1);
            }
        }
        depth.insert(i, best);
        krull_dim = krull_dim.max(best);
    }
    Ok(Spectrum { ideals, primes, maximals, radicals, nilradical, jacobson, krull_dim })
}

// ---------------------------------------------------------------------------
// Ideals over extensions: coordinate images, extension ideals, transfer
// ---------------------------------------------------------------------------

/// The image `Π_slot(J)` of an ideal over the flattened extension.
pub fn coordinate_image(
    ext: &Arc<NTrivialExtension>,
    j: &Ideal,
    slot: usize,
) -> Vec<Elem> {
    let mut seen = vec![false; ext.radix()[slot]];
    for &x in &j.elements {
        seen[ext.project(&ext.decode(x), slot)] = true;
    }
    (0..seen.len()).filter(|&i| seen[i]).collect()
}

/// `{x : Π₀(x) ∈ I}`, the ideal `I ⋉ M₁ ⋉ … ⋉ Mₙ` over the flattened ring.
pub fn full_module_ideal(ext: &Arc<NTrivialExtension>, i: &Ideal) -> Result<Ideal> {
    if !Arc::ptr_eq(i.ambient(), ext.ring()) {
        return Err(Error::AmbientMismatch(format!(
            "ideal over {}, extension base is {}",
            i.ambient().label(),
            ext.ring().label()
        )));
    }
    let flat = ext.flattened()?;
    let suffix: usize = ext.radix()[1..].iter().product();
    let mut mask = mask_new(flat.order());
    for &r in &i.elements {
        for t in r * suffix..(r + 1) * suffix {
            mask_set(&mut mask, t);
        }
    }
    Ok(Ideal::from_mask(&flat, mask_elements(&mask, flat.order()), mask))
}

/// `I ⋉ IM₁ ⋉ … ⋉ IMₙ`, built from the closed form and cross-checked
/// against the ideal generated by the lifted generators `(g, 0, …, 0)`.
pub fn extension_of_ideal(ext: &Arc<NTrivialExtension>, i: &Ideal) -> Result<Ideal> {
    if !Arc::ptr_eq(i.ambient(), ext.ring()) {
        return Err(Error::AmbientMismatch(format!(
            "ideal over {}, extension base is {}",
            i.ambient().label(),
            ext.ring().label()
        )));
    }
    let flat = ext.flattened()?;
    let n = ext.n();
    let mut slot_sets: Vec<Vec<Elem>> = vec![i.elements.clone()];
    for m in ext.modules() {
        let gens: Vec<Elem> = i
            .generators
            .iter()
            .flat_map(|&a| (0..m.order()).map(move |x| m.act(a, x)))
            .collect();
        slot_sets.push(m.span(&gens).elements);
    }
    let mut mask = mask_new(flat.order());
    let mut coords = vec![0usize; n + 1];
    fill_product_set(ext, &slot_sets, 0, &mut coords, &mut mask);
    let closed = Ideal::from_mask(&flat, i.generators.clone(), mask);
    let mut lifted = Vec::new();
    for &g in &i.generators {
        let mut c = vec![0usize; n + 1];
        c[0] = g;
        lifted.push(ext.encode(&ext.element(&c)?));
    }
    let generated = Ideal::generate(&flat, &lifted)?;
    if generated.elements != closed.elements {
        return Err(Error::Disagreement {
            check: "extension ideal".into(),
            witness: format!(
                "⟨lifted generators⟩ has {} elements, I⋉IM₁⋉…⋉IMₙ has {}",
                generated.len(),
                closed.len()
            ),
        });
    }
    Ok(generated)
}

/// Mixed-radix index (slot 0 most significant), matching the flattened
/// element numbering.
fn encode_coords(radix: &[usize], coords: &[usize]) -> usize {
    coords.iter().zip(radix).fold(0, |acc, (&c, &d)| acc * d + c)
}

fn fill_product_set(
    ext: &Arc<NTrivialExtension>,
    slot_sets: &[Vec<Elem>],
    slot: usize,
    coords: &mut Vec<usize>,
    mask: &mut [u64],
) {
    if slot == slot_sets.len() {
        mask_set(mask, encode_coords(ext.radix(), coords));
        return;
    }
    for &v in &slot_sets[slot] {
        coords[slot] = v;
        fill_product_set(ext, slot_sets, slot + 1, coords, mask);
    }
}

/// Prime/maximal/radical transfer between a strict extension and its base:
/// every such ideal upstairs is `P ⋉ₙ M` for the matching `P` downstairs,
/// the nilradical and Jacobson radical extend, Krull dimensions agree.
#[derive(Debug)]
pub struct SpectrumTransferReport {
    pub ideal_count: usize,
    pub ring_prime_count: usize,
    pub ext_prime_count: usize,
    pub primes_extended: bool,
    pub maximals_extended: bool,
    pub radicals_extended: bool,
    pub nilradical_matches: bool,
    pub jacobson_matches: bool,
    pub ring_krull: usize,
    pub ext_krull: usize,
    pub witness: Option<String>,
}

impl SpectrumTransferReport {
    pub fn all_ok(&self) -> bool {
        self.primes_extended
            && self.maximals_extended
            && self.radicals_extended
            && self.nilradical_matches
            && self.jacobson_matches
            && self.ring_prime_count == self.ext_prime_count
            && self.ring_krull == self.ext_krull
    }
}

pub fn spectrum_transfer_check(
    ext: &Arc<NTrivialExtension>,
    cap: usize,
) -> Result<(Spectrum, SpectrumTransferReport)> {
    fn check_class(
        ext: &Arc<NTrivialExtension>,
        up: &Spectrum,
        down: &Spectrum,
        upstairs: &[usize],
        downstairs: &[usize],
        what: &str,
        witness: &mut Option<String>,
    ) -> Result<bool> {
        let mut matched = vec![false; downstairs.len()];
        for &ui in upstairs {
            let j = &up.ideals[ui];
            let image = coordinate_image(ext, j, 0);
            let p = Ideal::from_elements(ext.ring(), &image)?;
            let extended = full_module_ideal(ext, &p)?;
            if extended.elements != j.elements {
                witness.get_or_insert(format!(
                    "{what} ideal {} is not Π₀-extended",
                    j.describe()
                ));
                return Ok(false);
            }
            match downstairs
                .iter()
                .position(|&di| down.ideals[di].elements == p.elements)
            {
                Some(pos) => matched[pos] = true,
                None => {
                    witness.get_or_insert(format!(
                        "Π₀ of {what} ideal {} is not {what} in {}",
                        j.describe(),
                        ext.ring().label()
                    ));
                    return Ok(false);
                }
            }
        }
        // The correspondence must also be onto.
        if let Some(pos) = matched.iter().position(|&b| !b) {
            witness.get_or_insert(format!(
                "{what} ideal {} of the base has no counterpart upstairs",
                down.ideals[downstairs[pos]].describe()
            ));
            return Ok(false);
        }
        Ok(true)
    }
    let flat = ext.flattened()?;
    let up = spectrum(&flat, cap)?;
    let down = spectrum(ext.ring(), cap)?;
    let mut witness = None;
    let primes_extended =
        check_class(ext, &up, &down, &up.primes, &down.primes, "prime", &mut witness)?;
    let maximals_extended = check_class(
        ext,
        &up,
        &down,
        &up.maximals,
        &down.maximals,
        "maximal",
        &mut witness,
    )?;
    let radicals_extended = check_class(
        ext,
        &up,
        &down,
        &up.radicals,
        &down.radicals,
        "radical",
        &mut witness,
    )?;
    let nil_ext = full_module_ideal(
        ext,
        &Ideal::from_elements(ext.ring(), &ext.ring().nilpotents())?,
    )?;
    let jac_ext = full_module_ideal(
        ext,
        &Ideal::from_elements(ext.ring(), &ext.ring().jacobson_radical())?,
    )?;
    let nilradical_matches = up.ideals[up.nilradical].elements == nil_ext.elements;
    let jacobson_matches = up.ideals[up.jacobson].elements == jac_ext.elements;
    if !nilradical_matches {
        witness.get_or_insert("nilradical is not Nil(R)⋉ₙM".into());
    }
    if !jacobson_matches {
        witness.get_or_insert("Jacobson radical is not J(R)⋉ₙM".into());
    }
    let report = SpectrumTransferReport {
        ideal_count: up.ideals.len(),
        ring_prime_count: down.primes.len(),
        ext_prime_count: up.primes.len(),
        primes_extended,
        maximals_extended,
        radicals_extended,
        nilradical_matches,
        jacobson_matches,
        ring_krull: down.krull_dim,
        ext_krull: up.krull_dim,
        witness,
    };
    Ok((up, report))
}

/// Quotient by an extension ideal: `(R⋉ₙM)/(I⋉ₙIM₁⋉…) ≅ (R/I)⋉ₙ(M₁/IM₁)⋉…`,
/// verified element by element against the rebuilt quotient extension.
#[derive(Debug)]
pub struct QuotientExtensionReport {
    pub ideal_size: usize,
    pub quotient_order: usize,
    pub iso_verified: bool,
    pub witness: Option<String>,
}

pub fn quotient_by_extension_ideal(
    ext: &Arc<NTrivialExtension>,
    i: &Ideal,
) -> Result<(Arc<NTrivialExtension>, QuotientExtensionReport)> {
    use crate::maps::ProductMapFamily;
    use crate::module::FiniteModule;
    use crate::ring::RingKind;

    let flat = ext.flattened()?;
    let j = extension_of_ideal(ext, i)?;
    let q1 = FiniteRing::quotient(&flat, &j.elements)?;
    let qring = FiniteRing::quotient(ext.ring(), &i.elements)?;
    let (_, q_class) = match qring.kind() {
        RingKind::Quotient { reps, class_of, .. } => (reps.clone(), class_of.clone()),
        _ => unreachable!("quotient ring has quotient kind"),
    };

    // Quotient modules Mᵢ/IMᵢ with coset representatives and verified tables.
    let mut qmodules = Vec::new();
    let mut class_maps: Vec<Vec<usize>> = Vec::new();
    for m in ext.modules() {
        let gens: Vec<Elem> = i
            .elements
            .iter()
            .flat_map(|&a| (0..m.order()).map(move |x| m.act(a, x)))
            .collect();
        let sub = m.span(&gens);
        let mut class_of = vec![usize::MAX; m.order()];
        let mut reps = Vec::new();
        for x in 0..m.order() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            for &d in &sub.elements {
                class_of[m.add(x, d)] = c;
            }
            reps.push(x);
        }
        let k = reps.len();
        let mut add = vec![0usize; k * k];
        for a in 0..k {
            for b in 0..k {
                add[a * k + b] = class_of[m.add(reps[a], reps[b])];
            }
        }
        let mut action = vec![0usize; qring.order() * k];
        for rq in 0..qring.order() {
            let r = match qring.kind() {
                RingKind::Quotient { reps, .. } => reps[rq],
                _ => unreachable!(),
            };
            for a in 0..k {
                action[rq * k + a] = class_of[m.act(r, reps[a])];
            }
        }
        // Well-definedness: the table must not depend on representatives.
        for x in 0..m.order() {
            for y in 0..m.order() {
                if class_of[m.add(x, y)] != add[class_of[x] * k + class_of[y]] {
                    return Err(Error::Disagreement {
                        check: "quotient module".into(),
                        witness: format!("addition on {} not constant on cosets", m.label()),
                    });
                }
            }
            for r in 0..ext.ring().order() {
                if class_of[m.act(r, x)] != action[q_class[r] * k + class_of[x]] {
                    return Err(Error::Disagreement {
                        check: "quotient module".into(),
                        witness: format!("action on {} not constant on cosets", m.label()),
                    });
                }
            }
        }
        let names = reps.iter().map(|&x| format!("[{}]", m.fmt_el(x))).collect();
        qmodules.push(FiniteModule::from_parts(
            format!("{} mod I", m.label()),
            qring.clone(),
            k,
            add,
            action,
            names,
        )?);
        class_maps.push(class_of);
    }

    // Quotient multiplication maps, verified constant on cosets.
    let mut tables = std::collections::BTreeMap::new();
    for ((a, b), _) in index_pairs_of(ext) {
        let (ma, mb) = (&ext.modules()[a - 1], &ext.modules()[b - 1]);
        let (ka, kb, kt) = (
            qmodules[a - 1].order(),
            qmodules[b - 1].order(),
            class_maps[a + b - 1].clone(),
        );
        let mut t = vec![usize::MAX; ka * kb];
        for x in 0..ma.order() {
            for y in 0..mb.order() {
                let cell =
                    &mut t[class_maps[a - 1][x] * kb + class_maps[b - 1][y]];
                let val = kt[ext.family().phi(a, b, x, y)];
                if *cell == usize::MAX {
                    *cell = val;
                } else if *cell != val {
                    return Err(Error::Disagreement {
                        check: "quotient maps".into(),
                        witness: format!(
                            "φ_{{{a},{b}}} not constant on cosets at ({x},{y})"
                        ),
                    });
                }
            }
        }
        tables.insert((a, b), t);
    }
    let family = ProductMapFamily::explicit(&qring, &qmodules, tables)?;
    let qext = NTrivialExtension::build(&qring, &qmodules, family, ext.strictness())?;

    // Map each class of the flattened quotient through coordinates and
    // compare the two ring structures.
    let (q1_reps, q1_class) = match q1.kind() {
        RingKind::Quotient { reps, class_of, .. } => (reps.clone(), class_of.clone()),
        _ => unreachable!("quotient ring has quotient kind"),
    };
    let qflat = qext.flattened()?;
    if q1.order() != qflat.order() {
        return Err(Error::Disagreement {
            check: "extension quotient".into(),
            witness: format!("orders differ: {} vs {}", q1.order(), qflat.order()),
        });
    }
    let to_q2 = |cls: usize| -> Result<usize> {
        let el = ext.decode(q1_reps[cls]);
        let mut coords = vec![q_class[el.coords()[0]]];
        for (d, &c) in el.coords()[1..].iter().enumerate() {
            coords.push(class_maps[d][c]);
        }
        Ok(qext.encode(&qext.element(&coords)?))
    };
    let images: Vec<usize> = (0..q1.order()).map(to_q2).collect::<Result<_>>()?;
    let mut seen = vec![false; qflat.order()];
    let mut iso_verified = true;
    let mut witness = None;
    for &im in &images {
        if seen[im] {
            iso_verified = false;
            witness = Some("coordinate map is not injective".into());
        }
        seen[im] = true;
    }
    if images[q1.one()] != qflat.one() {
        iso_verified = false;
        witness.get_or_insert("coordinate map misses the identity".into());
    }
    'outer: for x in 0..q1.order() {
        for y in 0..q1.order() {
            if images[q1.add(x, y)] != qflat.add(images[x], images[y])
                || images[q1.mul(x, y)] != qflat.mul(images[x], images[y])
            {
                iso_verified = false;
                witness.get_or_insert(format!(
                    "coordinate map breaks arithmetic at ({}, {})",
                    q1.fmt_el(x),
                    q1.fmt_el(y)
                ));
                break 'outer;
            }
        }
    }
    // Sanity: the canonical projection has the extension ideal as kernel.
    let kernel = (0..flat.order())
        .filter(|&x| q1_class[x] == q1_class[flat.zero()])
        .collect::<Vec<_>>();
    if kernel != j.elements {
        return Err(Error::Disagreement {
            check: "extension quotient".into(),
            witness: "projection kernel differs from the extension ideal".into(),
        });
    }
    let report = QuotientExtensionReport {
        ideal_size: j.len(),
        quotient_order: q1.order(),
        iso_verified,
        witness,
    };
    Ok((qext, report))
}

fn index_pairs_of(ext: &Arc<NTrivialExtension>) -> Vec<((usize, usize), ())> {
    let n = ext.n();
    let mut v = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i + j <= n {
                v.push(((i, j), ()));
            }
        }
    }
    v
}

// ---------------------------------------------------------------------------
// Homogeneity
// ---------------------------------------------------------------------------

/// Componentwise data `K ⋉ N₁ ⋉ … ⋉ Nₙ` of a (candidate) homogeneous ideal.
pub struct HomogeneousData {
    pub k: Ideal,
    pub slots: Vec<Submodule>,
}

impl HomogeneousData {
    pub fn size(&self) -> usize {
        self.k.len() * self.slots.iter().map(|s| s.len()).product::<usize>()
    }

    pub fn describe(&self) -> String {
        let mut parts = vec![format!("{{{}}}", join_elems(self.k.ambient(), &self.k.elements))];
        for s in &self.slots {
            if s.is_whole() {
                parts.push(format!("{}(all)", s.module.label()));
            } else {
                let names = s
                    .elements
                    .iter()
                    .map(|&x| s.module.fmt_el(x))
                    .collect::<Vec<_>>()
                    .join(",");
                parts.push(format!("{{{names}}}"));
            }
        }
        parts.join("⋉")
    }
}

fn join_elems(ring: &Arc<FiniteRing>, elems: &[Elem]) -> String {
    elems.iter().map(|&x| ring.fmt_el(x)).collect::<Vec<_>>().join(",")
}

/// Verifies the closure laws `K·Mᵢ ⊆ Nᵢ` and `φ(Nᵢ, Mⱼ) ⊆ N_{i+j}` that make
/// the product set an ideal.
pub fn verify_homogeneous_data(
    ext: &Arc<NTrivialExtension>,
    h: &HomogeneousData,
) -> Result<()> {
    let n = ext.n();
    for (idx, m) in ext.modules().iter().enumerate() {
        let ni = &h.slots[idx];
        for &a in h.k.elements() {
            for x in 0..m.order() {
                if !ni.contains(m.act(a, x)) {
                    return Err(Error::InvalidConstruction(format!(
                        "K·M{} escapes N{}: {}·{}",
                        idx + 1,
                        idx + 1,
                        ext.ring().fmt_el(a),
                        m.fmt_el(x)
                    )));
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i + j > n {
                continue;
            }
            let mj = &ext.modules()[j - 1];
            for &x in &h.slots[i - 1].elements {
                for y in 0..mj.order() {
                    if !h.slots[i + j - 1].contains(ext.family().phi(i, j, x, y)) {
                        return Err(Error::InvalidConstruction(format!(
                            "N{i}·M{j} escapes N{}",
                            i + j
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The product-set ideal `K ⋉ N₁ ⋉ … ⋉ Nₙ` over the flattened extension.
pub fn product_set_ideal(
    ext: &Arc<NTrivialExtension>,
    h: &HomogeneousData,
) -> Result<Ideal> {
    verify_homogeneous_data(ext, h)?;
    let flat = ext.flattened()?;
    let mut slot_sets = vec![h.k.elements().to_vec()];
    for s in &h.slots {
        slot_sets.push(s.elements.clone());
    }
    let mut mask = mask_new(flat.order());
    let mut coords = vec![0usize; ext.n() + 1];
    fill_product_set(ext, &slot_sets, 0, &mut coords, &mut mask);
    Ok(Ideal::from_mask(&flat, mask_elements(&mask, flat.order()), mask))
}

/// The coordinate hull `Π₀(J) ⋉ Π₁(J) ⋉ … ⋉ Πₙ(J)`.
pub fn coordinate_hull(
    ext: &Arc<NTrivialExtension>,
    j: &Ideal,
) -> Result<HomogeneousData> {
    let k = Ideal::from_elements(ext.ring(), &coordinate_image(ext, j, 0))?;
    let mut slots = Vec::new();
    for (idx, m) in ext.modules().iter().enumerate() {
        let image = coordinate_image(ext, j, idx + 1);
        let span = m.span(&image);
        if span.elements != image {
            return Err(Error::Disagreement {
                check: "coordinate hull".into(),
                witness: format!(
                    "Π{}(J) is not a submodule of {}",
                    idx + 1,
                    m.label()
                ),
            });
        }
        slots.push(span);
    }
    Ok(HomogeneousData { k, slots })
}

#[derive(Debug)]
pub struct HomogeneityReport {
    pub homogeneous: bool,
    pub ideal_size: usize,
    pub hull_size: usize,
    pub hull_description: String,
    /// `|J| = |K|·∏|Nᵢ|` decided the same way as set equality with the hull.
    pub size_product_matches: bool,
    /// A hull element outside `J` when not homogeneous.
    pub missing_witness: Option<ExtElement>,
}

/// Decides homogeneity of `J` by comparing it with its coordinate hull.
pub fn homogeneity(
    ext: &Arc<NTrivialExtension>,
    j: &Ideal,
) -> Result<(HomogeneityReport, HomogeneousData)> {
    let hull = coordinate_hull(ext, j)?;
    let hull_ideal = product_set_ideal(ext, &hull)?;
    if !j.subset_of(&hull_ideal) {
        return Err(Error::Disagreement {
            check: "homogeneity".into(),
            witness: "ideal escapes its own coordinate hull".into(),
        });
    }
    let homogeneous = j.elements == hull_ideal.elements;
    let by_size = j.len() == hull.size();
    if homogeneous != by_size {
        return Err(Error::Disagreement {
            check: "homogeneity".into(),
            witness: "size criterion disagrees with the hull comparison".into(),
        });
    }
    let missing_witness = if homogeneous {
        None
    } else {
        hull_ideal.elements.iter().copied().find(|&x| !j.contains(x)).map(|x| ext.decode(x))
    };
    let report = HomogeneityReport {
        homogeneous,
        ideal_size: j.len(),
        hull_size: hull_ideal.len(),
        hull_description: hull.describe(),
        size_product_matches: homogeneous == by_size,
        missing_witness,
    };
    Ok((report, hull))
}

#[derive(Debug)]
pub struct PrincipalFormReport {
    pub generator: String,
    pub ideal_size: usize,
    pub homogeneous: bool,
    /// Slot sizes of the closed form `aR ⋉ (Rm₁+aM₁) ⋉ (Rm₂+aM₂+m₁M₁) ⋉ …`.
    pub closed_form_sizes: Vec<usize>,
    pub closed_form_matches_hull: bool,
    pub verdicts_coincide: bool,
}

/// Tests a principal ideal `⟨(a, m₁, …, mₙ)⟩` against the closed form
/// `aR ⋉ (Rm₁ + aM₁) ⋉ (Rm₂ + aM₂ + m₁M₁) ⋉ …` and against its hull.
pub fn principal_form(
    ext: &Arc<NTrivialExtension>,
    x: &ExtElement,
) -> Result<PrincipalFormReport> {
    let flat = ext.flattened()?;
    let j = Ideal::generate(&flat, &[ext.encode(x)])?;
    let (report, hull) = homogeneity(ext, &j)?;
    let a = x.coords()[0];
    let k = Ideal::generate(ext.ring(), &[a])?;
    let mut slots = Vec::new();
    for t in 1..=ext.n() {
        let m = &ext.modules()[t - 1];
        let mut gens: Vec<Elem> =
            (0..ext.ring().order()).map(|r| m.act(r, x.coords()[t])).collect();
        gens.extend((0..m.order()).map(|y| m.act(a, y)));
        for i in 1..t {
            let jdeg = t - i;
            let mj = &ext.modules()[jdeg - 1];
            gens.extend(
                (0..mj.order()).map(|y| ext.family().phi(i, jdeg, x.coords()[i], y)),
            );
        }
        slots.push(m.span(&gens));
    }
    let closed = HomogeneousData { k, slots };
    let closed_ideal = product_set_ideal(ext, &closed)?;
    let hull_ideal = product_set_ideal(ext, &hull)?;
    let closed_form_matches_hull = closed_ideal.elements == hull_ideal.elements;
    let homog_by_closed_form = j.elements == closed_ideal.elements;
    Ok(PrincipalFormReport {
        generator: ext.fmt_el(x),
        ideal_size: j.len(),
        homogeneous: report.homogeneous,
        closed_form_sizes: std::iter::once(closed.k.len())
            .chain(closed.slots.iter().map(|s| s.len()))
            .collect(),
        closed_form_matches_hull,
        verdicts_coincide: report.homogeneous == homog_by_closed_form,
    })
}

// ---------------------------------------------------------------------------
// Componentwise formulas for sums/intersections/products/quotients
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct ArithFormulaReport {
    pub ideal_count: usize,
    pub homogeneous_count: usize,
    pub pairs_checked: usize,
    pub sum_ok: bool,
    pub intersection_ok: bool,
    pub product_ok: bool,
    pub colon_ok: bool,
    /// All four element-level results were themselves homogeneous.
    pub results_homogeneous: bool,
    /// `√J = √Π₀(J) ⋉ₙ M` held for every ideal, homogeneous or not.
    pub radical_ok: bool,
    pub witness: Option<String>,
}

impl ArithFormulaReport {
    pub fn all_ok(&self) -> bool {
        self.sum_ok
            && self.intersection_ok
            && self.product_ok
            && self.colon_ok
            && self.results_homogeneous
            && self.radical_ok
    }
}

/// Checks the componentwise formulas for sum, intersection, product and
/// colon on every ordered pair of homogeneous ideals, plus the radical
/// formula on every ideal.
pub fn homogeneous_arith_check(
    ext: &Arc<NTrivialExtension>,
    cap: usize,
) -> Result<ArithFormulaReport> {
    let flat = ext.flattened()?;
    let ideals = enumerate_ideals(&flat, cap)?;
    let mut homog: Vec<(Ideal, HomogeneousData)> = Vec::new();
    let mut radical_ok = true;
    let mut witness: Option<String> = None;
    for j in &ideals {
        let (rep, hull) = homogeneity(ext, j)?;
        if rep.homogeneous {
            homog.push((j.clone(), hull));
        }
        let closed_rad =
            full_module_ideal(ext, &Ideal::from_elements(ext.ring(), &coordinate_image(ext, j, 0))?.radical())?;
        if j.radical().elements != closed_rad.elements {
            radical_ok = false;
            witness.get_or_insert(format!("radical formula fails for {}", j.describe()));
        }
    }
    let ring = ext.ring();
    let (mut sum_ok, mut intersection_ok, mut product_ok, mut colon_ok) =
        (true, true, true, true);
    let mut results_homogeneous = true;
    let mut pairs_checked = 0;
    for (ia, ha) in &homog {
        for (ib, hb) in &homog {
            pairs_checked += 1;
            // Sum: componentwise sums.
            let formula = HomogeneousData {
                k: ha.k.sum(&hb.k)?,
                slots: (0..ext.n())
                    .map(|t| {
                        let m = &ext.modules()[t];
                        m.span(
                            &[ha.slots[t].elements.clone(), hb.slots[t].elements.clone()]
                                .concat(),
                        )
                    })
                    .collect(),
            };
            let lhs = ia.sum(ib)?;
            if !compare_formula(ext, &lhs, &formula, "sum", &mut sum_ok, &mut witness)? {
                results_homogeneous = false;
            }
            // Intersection: componentwise intersections.
            let formula = HomogeneousData {
                k: ha.k.intersect(&hb.k)?,
                slots: (0..ext.n())
                    .map(|t| {
                        let m = &ext.modules()[t];
                        m.span(
                            &ha.slots[t]
                                .elements
                                .iter()
                                .copied()
                                .filter(|&x| hb.slots[t].contains(x))
                                .collect::<Vec<_>>(),
                        )
                    })
                    .collect(),
            };
            let lhs = ia.intersect(ib)?;
            if !compare_formula(ext, &lhs, &formula, "intersection", &mut intersection_ok, &mut witness)? {
                results_homogeneous = false;
            }
            // Product: slot t collects I·N'ₜ + I'·Nₜ + Σ_{i+j=t} NᵢN'ⱼ.
            let formula = HomogeneousData {
                k: ha.k.product(&hb.k)?,
                slots: (0..ext.n())
                    .map(|t| {
                        let m = &ext.modules()[t];
                        let mut gens: Vec<Elem> = Vec::new();
                        for &a in ha.k.elements() {
                            for &y in &hb.slots[t].elements {
                                gens.push(m.act(a, y));
                            }
                        }
                        for &a in hb.k.elements() {
                            for &y in &ha.slots[t].elements {
                                gens.push(m.act(a, y));
                            }
                        }
                        for i in 1..t + 1 {
                            let jdeg = t + 1 - i;
                            for &x in &ha.slots[i - 1].elements {
                                for &y in &hb.slots[jdeg - 1].elements {
                                    gens.push(ext.family().phi(i, jdeg, x, y));
                                }
                            }
                        }
                        m.span(&gens)
                    })
                    .collect(),
            };
            let lhs = ia.product(ib)?;
            if !compare_formula(ext, &lhs, &formula, "product", &mut product_ok, &mut witness)? {
                results_homogeneous = false;
            }
            // Colon: slot i is ∩_j (N_{i+j} : N'ⱼ) with N₀ = I, N'₀ = I'.
            let k_elems: Vec<Elem> = (0..ring.order())
                .filter(|&r| {
                    hb.k.elements().iter().all(|&b| ha.k.contains(ring.mul(r, b)))
                        && (0..ext.n()).all(|t| {
                            let m = &ext.modules()[t];
                            hb.slots[t].elements.iter().all(|&y| ha.slots[t].contains(m.act(r, y)))
                        })
                })
                .collect();
            let slots: Vec<Submodule> = (1..=ext.n())
                .map(|i| {
                    let m = &ext.modules()[i - 1];
                    let members: Vec<Elem> = (0..m.order())
                        .filter(|&x| {
                            hb.k.elements().iter().all(|&b| ha.slots[i - 1].contains(m.act(b, x)))
                                && (1..=ext.n() - i).all(|jdeg| {
                                    hb.slots[jdeg - 1]
                                        .elements
                                        .iter()
                                        .all(|&y| ha.slots[i + jdeg - 1].contains(ext.family().phi(i, jdeg, x, y)))
                                })
                        })
                        .collect();
                    m.span(&members)
                })
                .collect();
            let formula = HomogeneousData { k: Ideal::from_elements(ring, &k_elems)?, slots };
            let lhs = ia.colon(ib)?;
            if !compare_formula(ext, &lhs, &formula, "colon", &mut colon_ok, &mut witness)? {
                results_homogeneous = false;
            }
        }
    }
    Ok(ArithFormulaReport {
        ideal_count: ideals.len(),
        homogeneous_count: homog.len(),
        pairs_checked,
        sum_ok,
        intersection_ok,
        product_ok,
        colon_ok,
        results_homogeneous,
        radical_ok,
        witness,
    })
}

/// Compares an element-level result with a componentwise formula; returns
/// whether the element-level result was itself homogeneous.
fn compare_formula(
    ext: &Arc<NTrivialExtension>,
    lhs: &Ideal,
    formula: &HomogeneousData,
    op: &str,
    ok: &mut bool,
    witness: &mut Option<String>,
) -> Result<bool> {
    let rhs = product_set_ideal(ext, formula)?;
    if lhs.elements != rhs.elements {
        *ok = false;
        witness.get_or_insert(format!(
            "componentwise {op} formula fails: element level has {} elements, formula {}",
            lhs.len(),
            rhs.len()
        ));
    }
    let (rep, _) = homogeneity(ext, lhs)?;
    if !rep.homogeneous {
        witness.get_or_insert(format!("{op} of homogeneous ideals is not homogeneous"));
    }
    Ok(rep.homogeneous)
}

// ---------------------------------------------------------------------------
// Homogeneity of ideal classes
// ---------------------------------------------------------------------------

/// Which family of ideals a class equivalence is about.
#[derive(Debug, Clone)]
pub enum ClassSelector {
    /// Ideals whose zeroth coordinate image meets the given set of regular
    /// elements.
    Pi0Meets(Vec<Elem>),
    /// Regular ideals: Π₀(J) meets `R − (Z(R) ∪ Z(M₁) ∪ … ∪ Z(Mₙ))`.
    Regular,
    /// Ideals with `Π₀(J) = 0` (for n = 2), or `Π₀(J) = 0 ≠ Π₁(J)` (n ≥ 3).
    Pi0Zero,
    /// Ideals with `Π₀(J) = … = Π_{j−1}(J) = 0 ≠ Πⱼ(J)`.
    PiPrefixZero(usize),
    /// Every ideal.
    All,
}

impl ClassSelector {
    pub fn name(&self) -> String {
        match self {
            ClassSelector::Pi0Meets(s) => format!("pi0_meets({} elements)", s.len()),
            ClassSelector::Regular => "regular".into(),
            ClassSelector::Pi0Zero => "pi0_zero".into(),
            ClassSelector::PiPrefixZero(j) => format!("pi_prefix_zero({j})"),
            ClassSelector::All => "all".into(),
        }
    }
}

#[derive(Debug)]
pub struct ClassCheckReport {
    pub selector: String,
    /// The equivalence being tested, in words.
    pub law: String,
    /// Hypotheses that were verified before testing the equivalence.
    pub hypotheses: Vec<String>,
    pub class_size: usize,
    pub all_homogeneous: bool,
    pub non_homogeneous_witness: Option<String>,
    pub module_condition: bool,
    pub module_condition_witness: Option<String>,
    pub equivalence_holds: bool,
    /// Whether every ideal in the class shows the predicted shape.
    pub form_ok: Option<bool>,
    pub form_witness: Option<String>,
    /// Comparability to the predicted pivot ideal, when the law states one.
    pub comparability_ok: Option<bool>,
}

/// Everything needed to test one class equivalence: membership predicate,
/// law text, verified hypotheses, the module condition with witness, and
/// the optional shape/comparability statements.
struct ClassSpec<'a> {
    pred: Box<dyn Fn(&Ideal) -> bool + 'a>,
    law: String,
    hypotheses: Vec<String>,
    condition: bool,
    condition_witness: Option<String>,
    form_target: Option<FormKind>,
    pivot: Option<Ideal>,
}

fn resolve_class<'a>(
    ext: &'a Arc<NTrivialExtension>,
    selector: &ClassSelector,
) -> Result<ClassSpec<'a>> {
    let n = ext.n();
    let ring = ext.ring();
    let mut hypotheses = Vec::new();
    match selector {
        ClassSelector::Pi0Meets(_) | ClassSelector::Regular => {
            let regular_in_ring: Vec<Elem> = {
                let zd = ring.zero_divisors_inclusive();
                (0..ring.order()).filter(|r| !zd.contains(r)).collect()
            };
            let s: Vec<Elem> = match selector {
                ClassSelector::Pi0Meets(s) => {
                    if s.is_empty() {
                        return Err(Error::HypothesisNotMet(
                            "the chosen set of regular elements is empty".into(),
                        ));
                    }
                    if let Some(&bad) = s.iter().find(|x| !regular_in_ring.contains(x)) {
                        return Err(Error::HypothesisNotMet(format!(
                            "{} is a zero divisor of {}; the class criterion needs regular elements",
                            ring.fmt_el(bad),
                            ring.label()
                        )));
                    }
                    hypotheses.push("chosen elements are regular in R".into());
                    s.clone()
                }
                _ => {
                    let mut bad: Vec<Elem> = ring.zero_divisors_inclusive();
                    for m in ext.modules() {
                        bad.extend(m.zero_divisors_inclusive());
                    }
                    hypotheses
                        .push("S = R − (Z(R) ∪ Z(M₁) ∪ … ∪ Z(Mₙ)) computed".into());
                    (0..ring.order()).filter(|r| !bad.contains(r)).collect()
                }
            };
            let mut condition = true;
            let mut condition_witness = None;
            'cond: for &sv in &s {
                for m in ext.modules() {
                    if !m.saturated_by(sv) {
                        condition = false;
                        condition_witness = Some(format!(
                            "s = {}: s·{} ≠ {}",
                            ring.fmt_el(sv),
                            m.label(),
                            m.label()
                        ));
                        break 'cond;
                    }
                }
            }
            let s_mask = mask_of(ring.order(), &s);
            Ok(ClassSpec {
                pred: Box::new(move |j: &Ideal| {
                    coordinate_image(ext, j, 0).iter().any(|&r| mask_get(&s_mask, r))
                }),
                law: "every ideal whose zeroth coordinate image meets S is \
                      homogeneous ⟺ sMᵢ = Mᵢ for every s ∈ S and every i"
                    .into(),
                hypotheses,
                condition,
                condition_witness,
                form_target: Some(FormKind::FullModules),
                pivot: None,
            })
        }
        ClassSelector::Pi0Zero => {
            if n < 2 {
                return Err(Error::HypothesisNotMet(
                    "the prefix-zero criterion needs n ≥ 2".into(),
                ));
            }
            let (ok, w) = ext.modules()[0].is_presimplifiable();
            if !ok {
                let (r, m) = w.unwrap();
                return Err(Error::HypothesisNotMet(format!(
                    "M₁ is not présimplifiable: {}·{} = {} with {} no unit",
                    ring.fmt_el(r),
                    ext.modules()[0].fmt_el(m),
                    ext.modules()[0].fmt_el(m),
                    ring.fmt_el(r)
                )));
            }
            hypotheses.push("M₁ is présimplifiable".into());
            for k in 2..n {
                let (ok, tuple) = ext.module_integral(1, k)?;
                if !ok {
                    return Err(Error::HypothesisNotMet(format!(
                        "M₁ is not {k}-integral: nonzero elements {:?} multiply to 0",
                        tuple.unwrap()
                    )));
                }
                hypotheses.push(format!("M₁ is {k}-integral"));
            }
            let (condition, condition_witness) = saturation_condition(ext, 1);
            if n == 2 {
                Ok(ClassSpec {
                    pred: Box::new(move |j: &Ideal| {
                        coordinate_image(ext, j, 0).len() == 1
                    }),
                    law: "every ideal with Π₀(J) = 0 is homogeneous ⟺ M₂ = m₁M₁ \
                          for every nonzero m₁ ⟺ every such ideal is comparable \
                          to 0⋉0⋉M₂"
                        .into(),
                    hypotheses,
                    condition,
                    condition_witness,
                    form_target: None,
                    pivot: Some(prefix_pivot(ext, 2)?),
                })
            } else {
                Ok(ClassSpec {
                    pred: Box::new(move |j: &Ideal| {
                        coordinate_image(ext, j, 0).len() == 1
                            && coordinate_image(ext, j, 1).len() > 1
                    }),
                    law: "every ideal with Π₀(J) = 0 ≠ Π₁(J) is homogeneous ⟺ \
                          Mₖ = m₁M_{k−1} for every k ≥ 2 and nonzero m₁"
                        .into(),
                    hypotheses,
                    condition,
                    condition_witness,
                    form_target: Some(FormKind::Prefix(1)),
                    pivot: None,
                })
            }
        }
        ClassSelector::PiPrefixZero(jdeg) => {
            let jdeg = *jdeg;
            if n < 2 || jdeg == 0 || jdeg > n {
                return Err(Error::HypothesisNotMet(format!(
                    "prefix degree {jdeg} needs 1 ≤ j ≤ n and n ≥ 2"
                )));
            }
            if jdeg < n {
                let (ok, w) = ext.modules()[jdeg - 1].is_presimplifiable();
                if !ok {
                    let (r, m) = w.unwrap();
                    return Err(Error::HypothesisNotMet(format!(
                        "M{jdeg} is not présimplifiable: {}·{} = {} with {} no unit",
                        ring.fmt_el(r),
                        ext.modules()[jdeg - 1].fmt_el(m),
                        ext.modules()[jdeg - 1].fmt_el(m),
                        ring.fmt_el(r)
                    )));
                }
                hypotheses.push(format!("M{jdeg} is présimplifiable"));
            }
            let (condition, condition_witness) = saturation_condition(ext, jdeg);
            Ok(ClassSpec {
                pred: Box::new(move |j: &Ideal| {
                    (0..jdeg).all(|i| coordinate_image(ext, j, i).len() == 1)
                        && coordinate_image(ext, j, jdeg).len() > 1
                }),
                law: format!(
                    "every ideal vanishing in degrees < {jdeg} and not in degree \
                     {jdeg} is homogeneous ⟺ Mₖ = m_{jdeg}·M_{{k−{jdeg}}} for \
                     every k > {jdeg} and nonzero m_{jdeg}"
                ),
                hypotheses,
                condition,
                condition_witness,
                form_target: Some(FormKind::Prefix(jdeg)),
                pivot: if jdeg == n - 1 { Some(prefix_pivot(ext, n)?) } else { None },
            })
        }
        ClassSelector::All => {
            if n < 2 {
                return Err(Error::HypothesisNotMet(
                    "the global criterion needs n ≥ 2".into(),
                ));
            }
            if !ring.predicates().is_domain {
                return Err(Error::HypothesisNotMet(format!(
                    "{} is not an integral domain",
                    ring.label()
                )));
            }
            hypotheses.push("R is an integral domain".into());
            for (idx, m) in ext.modules().iter().enumerate().take(n - 1) {
                if !m.zero_divisors_on().is_empty() {
                    return Err(Error::HypothesisNotMet(format!(
                        "M{} is not torsion-free",
                        idx + 1
                    )));
                }
                hypotheses.push(format!("M{} is torsion-free", idx + 1));
            }
            for k in 2..n {
                let (ok, tuple) = ext.module_integral(1, k)?;
                if !ok {
                    return Err(Error::HypothesisNotMet(format!(
                        "M₁ is not {k}-integral: nonzero elements {:?} multiply to 0",
                        tuple.unwrap()
                    )));
                }
                hypotheses.push(format!("M₁ is {k}-integral"));
            }
            let mut condition = ext.modules().iter().all(|m| m.is_divisible());
            let mut condition_witness =
                if condition { None } else { Some("some Mᵢ is not divisible".to_string()) };
            if condition {
                let (sat, w) = saturation_condition(ext, 1);
                condition = sat;
                condition_witness = w;
            }
            Ok(ClassSpec {
                pred: Box::new(|_: &Ideal| true),
                law: "every ideal is homogeneous ⟺ each Mᵢ is divisible and \
                      Mᵢ = m₁M_{i−1} for every i ≥ 2 and nonzero m₁"
                    .into(),
                hypotheses,
                condition,
                condition_witness,
                form_target: None,
                pivot: None,
            })
        }
    }
}

/// Tests, over a concrete extension, the equivalence “every ideal in the
/// class is homogeneous ⟺ the matching module condition holds”, refusing
/// when the hypotheses of the targeted statement fail. The shape and
/// comparability statements, when the law carries them, are reported as
/// further equivalences (their truth must match the module condition).
pub fn homogeneity_class_check(
    ext: &Arc<NTrivialExtension>,
    selector: &ClassSelector,
    cap: usize,
) -> Result<ClassCheckReport> {
    let flat = ext.flattened()?;
    let ideals = enumerate_ideals(&flat, cap)?;
    let spec = resolve_class(ext, selector)?;

    // Census of the class.
    let mut class_size = 0;
    let mut all_homogeneous = true;
    let mut non_homogeneous_witness = None;
    let mut all_shaped = spec.form_target.as_ref().map(|_| true);
    let mut form_witness = None;
    let mut all_comparable = spec.pivot.as_ref().map(|_| true);
    for j in &ideals {
        if !(spec.pred)(j) {
            continue;
        }
        class_size += 1;
        let (rep, hull) = homogeneity(ext, j)?;
        if !rep.homogeneous {
            all_homogeneous = false;
            non_homogeneous_witness.get_or_insert(format!(
                "{} has hull {} ({} vs {} elements)",
                j.describe(),
                rep.hull_description,
                rep.ideal_size,
                rep.hull_size
            ));
        }
        if let (Some(kind), Some(ok)) = (&spec.form_target, all_shaped.as_mut()) {
            if !matches_form(ext, j, &hull, rep.homogeneous, kind) {
                *ok = false;
                form_witness.get_or_insert(format!(
                    "{} is not of the predicted shape (hull {})",
                    j.describe(),
                    hull.describe()
                ));
            }
        }
        if let (Some(pivot), Some(ok)) = (&spec.pivot, all_comparable.as_mut()) {
            if !j.subset_of(pivot) && !pivot.subset_of(j) {
                *ok = false;
            }
        }
    }
    Ok(ClassCheckReport {
        selector: selector.name(),
        law: spec.law,
        hypotheses: spec.hypotheses,
        class_size,
        all_homogeneous,
        non_homogeneous_witness,
        module_condition: spec.condition,
        module_condition_witness: spec.condition_witness,
        equivalence_holds: all_homogeneous == spec.condition,
        form_ok: all_shaped.map(|s| s == spec.condition),
        form_witness,
        comparability_ok: all_comparable.map(|c| c == spec.condition),
    })
}

enum FormKind {
    /// `I ⋉ M₁ ⋉ … ⋉ Mₙ`.
    FullModules,
    /// `0 ⋉ … ⋉ 0 ⋉ N ⋉ M_{j+1} ⋉ … ⋉ Mₙ` with `N ⊆ Mⱼ`.
    Prefix(usize),
}

fn matches_form(
    ext: &Arc<NTrivialExtension>,
    j: &Ideal,
    hull: &HomogeneousData,
    homogeneous: bool,
    kind: &FormKind,
) -> bool {
    if !homogeneous {
        return false;
    }
    match kind {
        FormKind::FullModules => hull.slots.iter().all(|s| s.is_whole()),
        FormKind::Prefix(jdeg) => {
            (1..*jdeg).all(|i| hull.slots[i - 1].is_zero())
                && coordinate_image(ext, j, 0).len() == 1
                && hull.slots[*jdeg..].iter().all(|s| s.is_whole())
        }
    }
}

/// `0 ⋉ … ⋉ 0 ⋉ M_j ⋉ … ⋉ Mₙ` as an ideal of the flattened extension.
fn prefix_pivot(ext: &Arc<NTrivialExtension>, jdeg: usize) -> Result<Ideal> {
    let flat = ext.flattened()?;
    let mut slot_sets = vec![vec![0usize]];
    for (idx, m) in ext.modules().iter().enumerate() {
        if idx + 1 < jdeg {
            slot_sets.push(vec![0]);
        } else {
            slot_sets.push((0..m.order()).collect());
        }
    }
    let mut mask = mask_new(flat.order());
    let mut coords = vec![0usize; ext.n() + 1];
    fill_product_set(ext, &slot_sets, 0, &mut coords, &mut mask);
    Ok(Ideal::from_mask(&flat, mask_elements(&mask, flat.order()), mask))
}

/// The condition `Mₖ = mⱼ·M_{k−j}` for every `k ∈ {j+1..n}` and nonzero `mⱼ`.
fn saturation_condition(
    ext: &Arc<NTrivialExtension>,
    jdeg: usize,
) -> (bool, Option<String>) {
    let mj = &ext.modules()[jdeg - 1];
    for k in jdeg + 1..=ext.n() {
        let mk = &ext.modules()[k - 1];
        let lower = &ext.modules()[k - jdeg - 1];
        for e in 1..mj.order() {
            let mut seen = vec![false; mk.order()];
            for y in 0..lower.order() {
                seen[ext.family().phi(jdeg, k - jdeg, e, y)] = true;
            }
            if !seen.iter().all(|&b| b) {
                let hit = seen.iter().filter(|&&b| b).count();
                return (
                    false,
                    Some(format!(
                        "e = {} ∈ M{jdeg}: e·M{} covers {hit} of {} elements of M{k}",
                        mj.fmt_el(e),
                        k - jdeg,
                        mk.order()
                    )),
                );
            }
        }
    }
    (true, None)
}

/// Hypotheses under which the prefix shape census is a theorem: the base
/// ring is a field and every nonzero homogeneous element of positive degree
/// `i` carries `Mⱼ` onto `M_{i+j}` (as in a field tower `K ⋉ F ⋉ ⋯ ⋉ F`).
/// Returns a reason when they fail, `None` when they hold.
pub fn prefix_shape_hypotheses(ext: &Arc<NTrivialExtension>) -> Option<String> {
    let ring = ext.ring();
    if !ring.predicates().is_field {
        return Some(format!("{} is not a field", ring.label()));
    }
    let n = ext.n();
    for i in 1..=n {
        let mi = &ext.modules()[i - 1];
        for j in 1..=n.saturating_sub(i) {
            let mj = &ext.modules()[j - 1];
            let target = &ext.modules()[i + j - 1];
            for m in 1..mi.order() {
                let mut seen = vec![false; target.order()];
                for y in 0..mj.order() {
                    seen[ext.family().phi(i, j, m, y)] = true;
                }
                if seen.iter().any(|s| !s) {
                    return Some(format!(
                        "{} ∈ M{i} does not carry M{j} onto M{}",
                        mi.fmt_el(m),
                        i + j
                    ));
                }
            }
        }
    }
    None
}

/// Census used by the field-tower shape statement: every proper ideal is
/// `0 ⋉ … ⋉ 0 ⋉ N ⋉ M_{j+1} ⋉ … ⋉ Mₙ` for some degree `j` and `N ⊆ Mⱼ`.
#[derive(Debug)]
pub struct ShapeCensus {
    pub proper_ideals: usize,
    pub ok: bool,
    pub witness: Option<String>,
    pub shapes: Vec<String>,
}

pub fn proper_ideal_shape_census(
    ext: &Arc<NTrivialExtension>,
    cap: usize,
) -> Result<ShapeCensus> {
    let flat = ext.flattened()?;
    let ideals = enumerate_ideals(&flat, cap)?;
    let mut ok = true;
    let mut witness = None;
    let mut shapes = Vec::new();
    let mut proper = 0;
    for j in &ideals {
        if j.is_whole() {
            continue;
        }
        proper += 1;
        let (rep, hull) = homogeneity(ext, j)?;
        let shaped = if j.is_zero() {
            rep.homogeneous
        } else {
            let fully_below = match (1..=ext.n()).find(|&d| !hull.slots[d - 1].is_zero())
            {
                None => true,
                Some(d) => hull.slots[d..].iter().all(|s| s.is_whole()),
            };
            rep.homogeneous && coordinate_image(ext, j, 0).len() == 1 && fully_below
        };
        if !shaped {
            ok = false;
            witness.get_or_insert(format!(
                "{} (hull {}) breaks the prefix shape",
                j.describe(),
                hull.describe()
            ));
        }
        shapes.push(hull.describe());
    }
    Ok(ShapeCensus { proper_ideals: proper, ok, witness, shapes })
}

// ---------------------------------------------------------------------------
// Ring-theoretic properties
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct RingPropertyReport {
    pub label: String,
    pub ideal_count: usize,
    /// Finite rings satisfy both chain conditions; recorded, not searched.
    pub noetherian: bool,
    pub artinian: bool,
    pub chained: bool,
    pub chained_witness: Option<String>,
    pub arithmetical: bool,
    pub arithmetical_witness: Option<String>,
    pub pir: bool,
    pub pir_witness: Option<String>,
    /// Every proper ideal is a product of primes.
    pub zpi: bool,
    pub zpi_witness: Option<String>,
    /// Every proper principal ideal is a product of primes.
    pub pi_ring: bool,
    pub pi_witness: Option<String>,
}

/// Whether the enumerated ideal set is totally ordered by inclusion.
fn chained_only(ideals: &[Ideal]) -> (bool, Option<String>) {
    for (i, a) in ideals.iter().enumerate() {
        for b in &ideals[i + 1..] {
            if !a.subset_of(b) && !b.subset_of(a) {
                return (false, Some(format!("{} ⊥ {}", a.describe(), b.describe())));
            }
        }
    }
    (true, None)
}

pub fn ring_properties(ring: &Arc<FiniteRing>, cap: usize) -> Result<RingPropertyReport> {
    let spec = spectrum(ring, cap)?;
    let ideals = &spec.ideals;
    let (chained, chained_witness) = chained_only(ideals);

    // Arithmetical: chained after localizing at each maximal ideal.
    let mut arithmetical = true;
    let mut arithmetical_witness = None;
    for &mi in &spec.maximals {
        let complement: Vec<Elem> =
            (0..ring.order()).filter(|&x| !ideals[mi].contains(x)).collect();
        let loc = crate::localize::localize_ring(ring, &complement)?;
        let loc_ideals = enumerate_ideals(loc.ring(), cap)?;
        let (ok, w) = chained_only(&loc_ideals);
        if !ok {
            arithmetical = false;
            arithmetical_witness = Some(format!(
                "localization at {} is not chained: {}",
                ideals[mi].describe(),
                w.unwrap_or_default()
            ));
            break;
        }
    }

    let mut pir = true;
    let mut pir_witness = None;
    for i in ideals {
        if i.principal_generator().is_none() {
            pir = false;
            pir_witness = Some(format!("{} is not principal", i.describe()));
            break;
        }
    }

    // Close the set of prime products; every finite ring stabilizes.
    let prime_ideals: Vec<&Ideal> = spec.primes.iter().map(|&i| &ideals[i]).collect();
    let mut products: Vec<Ideal> = prime_ideals.iter().map(|p| (*p).clone()).collect();
    let mut seen: HashMap<Vec<u64>, ()> =
        products.iter().map(|p| (p.mask.clone(), ())).collect();
    let mut head = 0;
    while head < products.len() {
        for p in &prime_ideals {
            let next = products[head].product(p)?;
            if seen.insert(next.mask.clone(), ()).is_none() {
                products.push(next);
            }
        }
        head += 1;
    }
    let is_prime_product =
        |i: &Ideal| products.iter().any(|p| p.elements == i.elements);
    let mut zpi = true;
    let mut zpi_witness = None;
    let mut pi_ring = true;
    let mut pi_witness = None;
    for i in ideals {
        if i.is_whole() || is_prime_product(i) {
            continue;
        }
        if zpi {
            zpi = false;
            zpi_witness = Some(format!("{} is not a product of primes", i.describe()));
        }
        if pi_ring && i.principal_generator().is_some() {
            pi_ring = false;
            pi_witness = Some(format!(
                "principal ideal {} is not a product of primes",
                i.describe()
            ));
        }
    }
    Ok(RingPropertyReport {
        label: ring.label().to_string(),
        ideal_count: ideals.len(),
        noetherian: true,
        artinian: true,
        chained,
        chained_witness,
        arithmetical,
        arithmetical_witness,
        pir,
        pir_witness,
        zpi,
        zpi_witness,
        pi_ring,
        pi_witness,
    })
}

/// The four structural conditions equivalent to the extension being chained
/// (for n ≥ 2 with some nonzero module), checked independently.
#[derive(Debug)]
pub struct ChainedConditionsReport {
    pub valuation_domain: bool,
    pub modules_divisible: bool,
    /// For `1 ≤ i ≤ j ≤ n` with `Mᵢ, Mⱼ ≠ 0`: `M_{j−i} ≠ 0` and `eMᵢ = Mⱼ`
    /// for every nonzero `e ∈ M_{j−i}` (degree 0 means `e ∈ R`).
    pub transfer: bool,
    pub submodules_totally_ordered: bool,
    pub witness: Option<String>,
}

impl ChainedConditionsReport {
    pub fn all_hold(&self) -> bool {
        self.valuation_domain
            && self.modules_divisible
            && self.transfer
            && self.submodules_totally_ordered
    }
}

pub fn chained_conditions(
    ext: &Arc<NTrivialExtension>,
    cap: usize,
) -> Result<ChainedConditionsReport> {
    let ring = ext.ring();
    let mut witness = None;
    let ring_ideals = enumerate_ideals(ring, cap)?;
    let (ring_chained, w) = chained_only(&ring_ideals);
    let valuation_domain = ring.predicates().is_domain && ring_chained;
    if !valuation_domain {
        witness = Some(match w {
            Some(w) if ring.predicates().is_domain => format!("base ideals incomparable: {w}"),
            _ => format!("{} is not an integral domain", ring.label()),
        });
    }
    let modules_divisible = ext.modules().iter().all(|m| m.is_divisible());
    if !modules_divisible {
        witness.get_or_insert("some module is not divisible".into());
    }
    let mut transfer = true;
    'outer: for i in 1..=ext.n() {
        for j in i..=ext.n() {
            let (mi, mj) = (&ext.modules()[i - 1], &ext.modules()[j - 1]);
            if mi.order() == 1 || mj.order() == 1 {
                continue;
            }
            let between = j - i;
            let between_order =
                if between == 0 { ring.order() } else { ext.modules()[between - 1].order() };
            if between_order == 1 {
                transfer = false;
                witness.get_or_insert(format!(
                    "M{i} and M{j} are nonzero but M{between} vanishes"
                ));
                break 'outer;
            }
            for e in 1..between_order {
                let mut seen = vec![false; mj.order()];
                for x in 0..mi.order() {
                    let y = if between == 0 {
                        mi.act(e, x)
                    } else {
                        ext.family().phi(between, i, e, x)
                    };
                    seen[y] = true;
                }
                if !seen.iter().all(|&b| b) {
                    transfer = false;
                    witness.get_or_insert(format!(
                        "e in degree {between}: e·M{i} ≠ M{j}"
                    ));
                    break 'outer;
                }
            }
        }
    }
    let mut submodules_totally_ordered = true;
    for m in ext.modules() {
        let subs = m.enumerate_submodules(cap)?;
        for (i, a) in subs.iter().enumerate() {
            for b in &subs[i + 1..] {
                let a_in_b = a.elements.iter().all(|x| b.contains(*x));
                let b_in_a = b.elements.iter().all(|x| a.contains(*x));
                if !a_in_b && !b_in_a {
                    submodules_totally_ordered = false;
                    witness.get_or_insert(format!(
                        "incomparable submodules of {}",
                        m.label()
                    ));
                }
            }
        }
    }
    Ok(ChainedConditionsReport {
        valuation_domain,
        modules_divisible,
        transfer,
        submodules_totally_ordered,
        witness,
    })
}

/// The module-side structure equivalent to the extension inheriting
/// prime-factorization properties: each `Mᵢ` cyclic and `Ann(Mᵢ)` a product
/// of idempotent maximal ideals of `R`.
#[derive(Debug)]
pub struct CyclicAnnihilatorReport {
    pub modules_cyclic: Vec<bool>,
    pub annihilator_ok: Vec<bool>,
    pub condition: bool,
    pub witness: Option<String>,
}

pub fn cyclic_annihilator_structure(
    ext: &Arc<NTrivialExtension>,
    cap: usize,
) -> Result<CyclicAnnihilatorReport> {
    let ring = ext.ring();
    let spec = spectrum(ring, cap)?;
    let idempotent_maximals: Vec<&Ideal> = spec
        .maximals
        .iter()
        .map(|&i| &spec.ideals[i])
        .filter(|p| {
            p.product(p).map(|sq| sq.elements == p.elements).unwrap_or(false)
        })
        .collect();
    let mut modules_cyclic = Vec::new();
    let mut annihilator_ok = Vec::new();
    let mut witness = None;
    for (idx, m) in ext.modules().iter().enumerate() {
        let cyclic = (0..m.order()).any(|g| m.cyclic(g).is_whole());
        if !cyclic {
            witness.get_or_insert(format!("M{} is not cyclic", idx + 1));
        }
        modules_cyclic.push(cyclic);
        let ann: Vec<Elem> = (0..ring.order())
            .filter(|&r| (0..m.order()).all(|x| m.act(r, x) == m.zero()))
            .collect();
        let ann = Ideal::from_elements(ring, &ann)?;
        // Products of subsets of idempotent maximals (idempotency makes
        // repetitions redundant).
        let mut reachable = vec![Ideal::whole(ring)];
        for p in &idempotent_maximals {
            let more: Vec<Ideal> =
                reachable.iter().map(|q| q.product(p)).collect::<Result<_>>()?;
            reachable.extend(more);
        }
        let ok = reachable.iter().any(|q| q.elements == ann.elements);
        if !ok {
            witness.get_or_insert(format!(
                "Ann(M{}) = {} is not a product of idempotent maximal ideals",
                idx + 1,
                ann.describe()
            ));
        }
        annihilator_ok.push(ok);
    }
    let condition = modules_cyclic.iter().all(|&b| b) && annihilator_ok.iter().all(|&b| b);
    Ok(CyclicAnnihilatorReport { modules_cyclic, annihilator_ok, condition, witness })
}

/// Ring properties of the flattened extension together with the structural
/// cross-checks against the base ring and modules.
#[derive(Debug)]
pub struct ExtensionPropertyReport {
    pub flattened: RingPropertyReport,
    pub base: RingPropertyReport,
    pub chained_conditions: Option<ChainedConditionsReport>,
    pub chained_agrees: Option<bool>,
    pub cyclic_annihilator: CyclicAnnihilatorReport,
    pub pir_consistent: bool,
    pub zpi_consistent: bool,
    pub pi_consistent: bool,
}

impl ExtensionPropertyReport {
    pub fn consistent(&self) -> bool {
        self.chained_agrees.unwrap_or(true)
            && self.pir_consistent
            && self.zpi_consistent
            && self.pi_consistent
    }
}

pub fn extension_properties(
    ext: &Arc<NTrivialExtension>,
    cap: usize,
) -> Result<ExtensionPropertyReport> {
    let flat = ext.flattened()?;
    let flattened = ring_properties(&flat, cap)?;
    let base = ring_properties(ext.ring(), cap)?;
    let some_nonzero = ext.modules().iter().any(|m| m.order() > 1);
    let (chained_conditions, chained_agrees) = if ext.n() >= 2 && some_nonzero {
        let c = chained_conditions(ext, cap)?;
        let agrees = c.all_hold() == flattened.chained;
        (Some(c), Some(agrees))
    } else {
        (None, None)
    };
    let cyclic_annihilator = cyclic_annihilator_structure(ext, cap)?;
    let cond = cyclic_annihilator.condition;
    Ok(ExtensionPropertyReport {
        pir_consistent: flattened.pir == (base.pir && cond),
        zpi_consistent: flattened.zpi == (base.zpi && cond),
        pi_consistent: flattened.pi_ring == (base.pi_ring && cond),
        flattened,
        base,
        chained_conditions,
        chained_agrees,
        cyclic_annihilator,
    })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::ProductMapFamily;
    use crate::module::FiniteModule;
    use crate::ring::FiniteRing;
    use crate::Strictness;

    fn regular_chain(m: usize, n: usize) -> Arc<NTrivialExtension> {
        let ring = FiniteRing::zm(m).unwrap();
        let modules: Vec<_> =
            (0..n).map(|_| FiniteModule::regular(&ring).unwrap()).collect();
        let family = ProductMapFamily::ring_multiplication(&ring, &modules).unwrap();
        NTrivialExtension::build(&ring, &modules, family, Strictness::Strict).unwrap()
    }

    fn gf4_tower() -> Arc<NTrivialExtension> {
        let f2 = FiniteRing::gf(2).unwrap();
        let f4 = FiniteRing::gf(4).unwrap();
        let m = crate::module::subring_module(&f2, &f4, "F4 over F2").unwrap();
        let embed: Vec<Elem> = (0..4).collect();
        let family = ProductMapFamily::algebra(
            &f2,
            &[m.clone(), m.clone()],
            &f4,
            &[0, 1],
            &[embed.clone(), embed],
        )
        .unwrap();
        NTrivialExtension::build(&f2, &[m.clone(), m], family, Strictness::Strict)
            .unwrap()
    }

    /// `F₂ ⋉ F₂² ⋉ F₂²` with componentwise multiplication between degrees.
    fn componentwise_square_tower() -> Arc<NTrivialExtension> {
        let f2 = FiniteRing::gf(2).unwrap();
        let order = 4;
        let mut action = vec![0usize; 2 * order];
        for m in 0..order {
            action[order + m] = m;
        }
        let module =
            FiniteModule::explicit(&f2, &[2, 2], action, "F2xF2").unwrap();
        let mut table = vec![0usize; order * order];
        for x in 0..order {
            for y in 0..order {
                let (a, b) = (x >> 1 & 1, x & 1);
                let (c, d) = (y >> 1 & 1, y & 1);
                table[x * order + y] = (a & c) << 1 | (b & d);
            }
        }
        let mut tables = std::collections::BTreeMap::new();
        tables.insert((1usize, 1usize), table);
        let family =
            ProductMapFamily::explicit(&f2, &[module.clone(), module.clone()], tables)
                .unwrap();
        NTrivialExtension::build(
            &f2,
            &[module.clone(), module],
            family,
            Strictness::Strict,
        )
        .unwrap()
    }

    #[test]
    fn sum_of_principals_in_z12() {
        let z12 = FiniteRing::zm(12).unwrap();
        let four = Ideal::generate(&z12, &[4]).unwrap();
        let six = Ideal::generate(&z12, &[6]).unwrap();
        let two = Ideal::generate(&z12, &[2]).unwrap();
        assert_eq!(four.sum(&six).unwrap().elements(), two.elements());
    }

    #[test]
    fn radical_of_principal_in_z4_chain() {
        let ext = regular_chain(4, 2);
        let flat = ext.flattened().unwrap();
        let g = ext.encode(&ext.element(&[2, 0, 0]).unwrap());
        let j = Ideal::generate(&flat, &[g]).unwrap();
        let rad = j.radical();
        // √⟨(2,0,0)⟩ = {0,2} ⋉ Z4 ⋉ Z4.
        let expect = full_module_ideal(
            &ext,
            &Ideal::from_elements(ext.ring(), &[0, 2]).unwrap(),
        )
        .unwrap();
        assert_eq!(rad.elements(), expect.elements());
        assert_eq!(rad.len(), 32);
    }

    #[test]
    fn colon_of_zero_is_annihilator() {
        let ext = regular_chain(2, 1);
        let flat = ext.flattened().unwrap();
        let zero = Ideal::zero(&flat);
        let inner = prefix_pivot(&ext, 1).unwrap();
        let ann = zero.colon(&inner).unwrap();
        // (0 : 0⋉M) = 0⋉Z2 inside Z2⋉Z2.
        assert_eq!(ann.elements(), inner.elements());
        assert_eq!(ann.len(), 2);
    }

    #[test]
    fn ideal_enumeration_is_canonical_and_complete() {
        let z12 = FiniteRing::zm(12).unwrap();
        let ideals = enumerate_ideals(&z12, 64).unwrap();
        // One ideal per divisor of 12.
        assert_eq!(ideals.len(), 6);
        assert!(ideals.windows(2).all(|w| w[0].len() <= w[1].len()));
        let spec = spectrum(&z12, 64).unwrap();
        assert_eq!(spec.primes.len(), 2);
        assert_eq!(spec.maximals.len(), 2);
        assert_eq!(spec.krull_dim, 0);
    }

    #[test]
    fn nilradical_of_z6_chain_extends() {
        let ext = regular_chain(6, 1);
        let (spec, report) = spectrum_transfer_check(&ext, 256).unwrap();
        assert!(report.all_ok(), "witness: {:?}", report.witness);
        assert_eq!(report.ring_prime_count, 2);
        // Nil(Z6) = 0, so the nilradical upstairs is 0⋉Z6.
        let nil = &spec.ideals[spec.nilradical];
        assert_eq!(nil.len(), 6);
        assert!(nil.elements().iter().all(|&x| ext.project(&ext.decode(x), 0) == 0));
    }

    #[test]
    fn gf4_tower_has_one_maximal_ideal() {
        let ext = gf4_tower();
        let flat = ext.flattened().unwrap();
        let spec = spectrum(&flat, 256).unwrap();
        assert_eq!(spec.maximals.len(), 1);
        let m = &spec.ideals[spec.maximals[0]];
        // The unique maximal ideal is 0⋉F4⋉F4.
        assert_eq!(m.len(), 16);
        assert!(m.elements().iter().all(|&x| ext.project(&ext.decode(x), 0) == 0));
    }

    #[test]
    fn componentwise_generator_is_not_homogeneous() {
        let ext = componentwise_square_tower();
        let flat = ext.flattened().unwrap();
        // (0, (1,0), (0,1)): coordinates use high-bit-first encoding.
        let x = ext.element(&[0, 2, 1]).unwrap();
        let j = Ideal::generate(&flat, &[ext.encode(&x)]).unwrap();
        let (rep, _) = homogeneity(&ext, &j).unwrap();
        assert!(!rep.homogeneous);
        assert_eq!(rep.ideal_size, 4);
        assert_eq!(rep.hull_size, 8);
        // The paper-style witness (0,(1,0),(0,0)) lies in the hull, not in J.
        let w = ext.element(&[0, 2, 0]).unwrap();
        assert!(!j.contains(ext.encode(&w)));
        let hull = product_set_ideal(&ext, &coordinate_hull(&ext, &j).unwrap()).unwrap();
        assert!(hull.contains(ext.encode(&w)));
        // And the principal-form closed formula agrees with the hull.
        let pf = principal_form(&ext, &x).unwrap();
        assert!(!pf.homogeneous);
        assert!(pf.closed_form_matches_hull);
        assert!(pf.verdicts_coincide);
    }

    #[test]
    fn extension_ideal_is_homogeneous_and_quotient_splits() {
        let ext = regular_chain(4, 1);
        let i = Ideal::generate(ext.ring(), &[2]).unwrap();
        let j = extension_of_ideal(&ext, &i).unwrap();
        assert_eq!(j.len(), 4);
        let (rep, _) = homogeneity(&ext, &j).unwrap();
        assert!(rep.homogeneous);
        let (qext, report) = quotient_by_extension_ideal(&ext, &i).unwrap();
        assert!(report.iso_verified, "witness: {:?}", report.witness);
        assert_eq!(report.quotient_order, 4);
        assert_eq!(qext.ring().order(), 2);
    }

    #[test]
    fn arith_formulas_hold_on_gf4_tower() {
        let ext = gf4_tower();
        let report = homogeneous_arith_check(&ext, 512).unwrap();
        assert!(report.all_ok(), "witness: {:?}", report.witness);
        assert_eq!(report.ideal_count, report.homogeneous_count);
    }

    #[test]
    fn colon_by_whole_ring_returns_the_ideal() {
        let ext = regular_chain(4, 1);
        let flat = ext.flattened().unwrap();
        let whole = Ideal::whole(&flat);
        for g in 0..flat.order() {
            let j = Ideal::generate(&flat, &[g]).unwrap();
            assert_eq!(j.colon(&whole).unwrap().elements(), j.elements());
        }
    }

    #[test]
    fn regular_class_on_z4_with_z2_module() {
        // Z2 as a Z4-module: the action factors through Z4 → Z2.
        let z4 = FiniteRing::zm(4).unwrap();
        let action = vec![0, 0, 0, 1, 0, 0, 0, 1];
        let m = FiniteModule::explicit(&z4, &[2], action, "Z2 over Z4").unwrap();
        let family = ProductMapFamily::zero(&z4, &[m.clone()]).unwrap();
        let ext =
            NTrivialExtension::build(&z4, &[m], family, Strictness::Strict).unwrap();
        let report =
            homogeneity_class_check(&ext, &ClassSelector::Regular, 256).unwrap();
        assert!(report.module_condition, "{:?}", report.module_condition_witness);
        assert!(report.all_homogeneous, "{:?}", report.non_homogeneous_witness);
        assert!(report.equivalence_holds);
        assert_eq!(report.form_ok, Some(true));
    }

    #[test]
    fn prefix_zero_class_fails_both_ways_on_componentwise_tower() {
        let ext = componentwise_square_tower();
        let report =
            homogeneity_class_check(&ext, &ClassSelector::Pi0Zero, 512).unwrap();
        // Both sides fail, with the expected witnesses, so the equivalence holds.
        assert!(!report.all_homogeneous);
        assert!(!report.module_condition);
        assert!(report.equivalence_holds);
        let cw = report.module_condition_witness.unwrap();
        assert!(cw.contains("covers 2 of 4"), "unexpected witness: {cw}");
        assert_eq!(report.comparability_ok, Some(true));
    }

    #[test]
    fn global_class_holds_on_gf4_tower() {
        let ext = gf4_tower();
        let report = homogeneity_class_check(&ext, &ClassSelector::All, 512).unwrap();
        assert!(report.all_homogeneous);
        assert!(report.module_condition);
        assert!(report.equivalence_holds);
        let census = proper_ideal_shape_census(&ext, 512).unwrap();
        assert!(census.ok, "witness: {:?}", census.witness);
    }

    #[test]
    fn chained_and_factorization_properties() {
        // F2⋉F2 is chained; its ideals form the chain 0 ⊂ 0⋉F2 ⊂ whole.
        let ext = regular_chain(2, 1);
        let props = extension_properties(&ext, 256).unwrap();
        assert!(props.flattened.chained);
        assert!(props.flattened.zpi);
        assert!(props.consistent());

        // Z4⋉Z4 is not a PIR; ⟨2⟩⋉Z4 is a non-principal witness.
        let ext = regular_chain(4, 1);
        let props = extension_properties(&ext, 256).unwrap();
        assert!(!props.flattened.pir);
        assert!(props.consistent(), "cyclic/annihilator cross-check failed");
        let p = full_module_ideal(
            &ext,
            &Ideal::generate(ext.ring(), &[2]).unwrap(),
        )
        .unwrap();
        assert!(p.principal_generator().is_none());

        // Z6 itself: principal ideal ring and every ideal a product of primes.
        let z6 = FiniteRing::zm(6).unwrap();
        let props = ring_properties(&z6, 64).unwrap();
        assert!(props.pir && props.zpi && props.pi_ring);
    }

    #[test]
    fn chained_cross_check_on_towers() {
        // F2⋉F2⋉F2 (regular modules) is chained and satisfies the conditions.
        let ext = regular_chain(2, 2);
        let props = extension_properties(&ext, 256).unwrap();
        assert!(props.flattened.chained);
        assert_eq!(props.chained_agrees, Some(true));
        assert!(props.chained_conditions.unwrap().all_hold());

        // F2⋉F4⋉F4 is not chained: F4 has incomparable F2-submodules.
        let ext = gf4_tower();
        let props = extension_properties(&ext, 512).unwrap();
        assert!(!props.flattened.chained);
        assert_eq!(props.chained_agrees, Some(true));
        let c = props.chained_conditions.unwrap();
        assert!(!c.submodules_totally_ordered);
        assert!(c.valuation_domain && c.modules_divisible && c.transfer);
    }
}
