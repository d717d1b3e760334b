//! Localization of finite rings, modules, and n-trivial extensions at
//! multiplicative sets, built on pair classes with exhaustive verification.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::extension::NTrivialExtension;
use crate::maps::ProductMapFamily;
use crate::module::{mixed_encode, FiniteModule};
use crate::ring::{abelian_basis, Elem, FiniteRing, RingKind, ValidationPolicy};
use crate::{Error, Result};

/// Cap on `|carrier| · |S|`, the number of pairs a localization tracks.
const MAX_PAIRS: usize = 4_000_000;

/// Cap on basis-image tuples tried by the exhaustive isomorphism search.
const MAX_ISO_ATTEMPTS: usize = 2_000_000;

// ----------------------------------------------------------------------
// Multiplicative sets
// ----------------------------------------------------------------------

/// A multiplicatively closed subset of a finite ring containing 1.
#[derive(Debug, Clone)]
pub struct MultiplicativeSet {
    ring: Arc<FiniteRing>,
    elements: Vec<Elem>,
}

impl MultiplicativeSet {
    /// Smallest multiplicative set containing the seed and 1.
    pub fn closure(ring: &Arc<FiniteRing>, seed: &[Elem]) -> Result<MultiplicativeSet> {
        if seed.is_empty() {
            return Err(Error::InvalidConstruction(
                "multiplicative set needs a nonempty seed".into(),
            ));
        }
        let order = ring.order();
        if let Some(&bad) = seed.iter().find(|&&s| s >= order) {
            return Err(Error::InvalidConstruction(format!(
                "seed element {bad} is out of range for {}",
                ring.label()
            )));
        }
        let mut in_set = vec![false; order];
        let mut stack = vec![ring.one()];
        in_set[ring.one()] = true;
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                stack.push(s);
            }
        }
        let mut i = 0;
        while i < stack.len() {
            for j in 0..=i {
                let p = ring.mul(stack[i], stack[j]);
                if !in_set[p] {
                    in_set[p] = true;
                    stack.push(p);
                }
            }
            i += 1;
        }
        stack.sort_unstable();
        Ok(MultiplicativeSet {
            ring: ring.clone(),
            elements: stack,
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
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
        self.elements.binary_search(&x).is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(self.ring.zero())
    }
}

// ----------------------------------------------------------------------
// Localized rings
// ----------------------------------------------------------------------

/// `R_S` presented on equivalence classes of pairs `a/s` under
/// `(a,s) ~ (b,t) ⇔ ∃u∈S: u(at−bs) = 0`.
pub struct LocalizedRing {
    source: Arc<FiniteRing>,
    set: MultiplicativeSet,
    ring: Arc<FiniteRing>,
    s_index: Vec<usize>,
    class_of_pair: Vec<usize>,
    reps: Vec<(Elem, Elem)>,
    hom: Vec<Elem>,
    kernel: Vec<Elem>,
}

/// Result of localizing a ring: either a proper localization or, when
/// `0 ∈ S` was explicitly allowed, the one-class collapse (the zero ring,
/// which has no table representation here).
pub enum RingLocalization {
    Proper(LocalizedRing),
    Collapsed { set_size: usize },
}

/// Localize `R` at the multiplicative closure of `seed`; refuses `0 ∈ S`.
pub fn localize_ring(ring: &Arc<FiniteRing>, seed: &[Elem]) -> Result<LocalizedRing> {
    let set = MultiplicativeSet::closure(ring, seed)?;
    match localize_ring_at(ring, set, false)? {
        RingLocalization::Proper(l) => Ok(l),
        RingLocalization::Collapsed { .. } => unreachable!("collapse rejected without the flag"),
    }
}

/// Localize at a prepared set. With `allow_zero`, a set containing 0 yields
/// `Collapsed` instead of an error: every pair is then identified with 0/1.
pub fn localize_ring_at(
    ring: &Arc<FiniteRing>,
    set: MultiplicativeSet,
    allow_zero: bool,
) -> Result<RingLocalization> {
    if !Arc::ptr_eq(set.ring(), ring) {
        return Err(Error::AmbientMismatch(
            "multiplicative set lives over a different ring".into(),
        ));
    }
    if set.contains_zero() {
        if !allow_zero {
            return Err(Error::InvalidConstruction(
                "0 ∈ S collapses the localization to the zero ring; \
                 pass the zero flag to acknowledge"
                    .into(),
            ));
        }
        return Ok(RingLocalization::Collapsed {
            set_size: set.len(),
        });
    }
    Ok(RingLocalization::Proper(localize_at(ring, set)?))
}

fn localize_at(ring: &Arc<FiniteRing>, set: MultiplicativeSet) -> Result<LocalizedRing> {
    let order = ring.order();
    let s = set.elements().to_vec();
    let sc = s.len();
    if order * sc > MAX_PAIRS {
        return Err(Error::CapExceeded(format!(
            "localization would track {} pairs (cap {MAX_PAIRS})",
            order * sc
        )));
    }
    let mut s_index = vec![usize::MAX; order];
    for (i, &sv) in s.iter().enumerate() {
        s_index[sv] = i;
    }

    // (a,s) ~ (b,t) ⇔ at−bs ∈ K where K = {x : ux = 0 for some u ∈ S};
    // the two formulations are literally the same statement.
    let kernel: Vec<Elem> = (0..order)
        .filter(|&x| s.iter().any(|&u| ring.mul(u, x) == ring.zero()))
        .collect();
    let mut in_k = vec![false; order];
    for &x in &kernel {
        in_k[x] = true;
    }

    // Class discovery by representative scan. Comparing against the class
    // representative is sound because the relation is transitive: K is an
    // ideal on whose quotient every s ∈ S acts regularly.
    let mut class_of_pair = vec![usize::MAX; order * sc];
    let mut reps: Vec<(Elem, Elem)> = Vec::new();
    for a in 0..order {
        for (si, &sv) in s.iter().enumerate() {
            let mut cls = usize::MAX;
            for (c, &(b, t)) in reps.iter().enumerate() {
                if in_k[ring.sub(ring.mul(a, t), ring.mul(b, sv))] {
                    cls = c;
                    break;
                }
            }
            if cls == usize::MAX {
                cls = reps.len();
                reps.push((a, sv));
            }
            class_of_pair[a * sc + si] = cls;
        }
    }
    let k = reps.len();
    let pair_class = |a: Elem, sv: Elem| class_of_pair[a * sc + s_index[sv]];

    // Operations via representatives; then a one-sided constancy scan over
    // every pair. Both formulas are symmetric in their arguments, so
    // one-sided constancy pins the value on every pair of classes.
    let mut add = vec![0; k * k];
    let mut mul = vec![0; k * k];
    for (i, &(a, sv)) in reps.iter().enumerate() {
        for (j, &(b, t)) in reps.iter().enumerate() {
            let st = ring.mul(sv, t);
            add[i * k + j] = pair_class(ring.add(ring.mul(a, t), ring.mul(b, sv)), st);
            mul[i * k + j] = pair_class(ring.mul(a, b), st);
        }
    }
    for a in 0..order {
        for &sv in &s {
            let c = pair_class(a, sv);
            for (j, &(b, t)) in reps.iter().enumerate() {
                let st = ring.mul(sv, t);
                let sum = pair_class(ring.add(ring.mul(a, t), ring.mul(b, sv)), st);
                let prod = pair_class(ring.mul(a, b), st);
                if sum != add[c * k + j] || prod != mul[c * k + j] {
                    return Err(Error::Disagreement {
                        check: "localized operations well-defined".into(),
                        witness: format!(
                            "pair {}/{} against class {j}",
                            ring.fmt_el(a),
                            ring.fmt_el(sv)
                        ),
                    });
                }
            }
        }
    }

    let label = format!("({})_S", ring.label());
    let lring = FiniteRing::from_tables(label, k, add, mul, &ValidationPolicy::default())?;

    let hom: Vec<Elem> = (0..order).map(|x| pair_class(x, ring.one())).collect();
    for x in 0..order {
        for y in 0..order {
            if hom[ring.add(x, y)] != lring.add(hom[x], hom[y])
                || hom[ring.mul(x, y)] != lring.mul(hom[x], hom[y])
            {
                return Err(Error::Disagreement {
                    check: "canonical map is a ring homomorphism".into(),
                    witness: format!("({}, {})", ring.fmt_el(x), ring.fmt_el(y)),
                });
            }
        }
    }
    if hom[ring.one()] != lring.one() {
        return Err(Error::Disagreement {
            check: "canonical map sends 1 to 1".into(),
            witness: String::new(),
        });
    }
    for &sv in &s {
        if !lring.is_unit(hom[sv]) {
            return Err(Error::Disagreement {
                check: "canonical map inverts S".into(),
                witness: ring.fmt_el(sv),
            });
        }
    }
    for x in 0..order {
        if (hom[x] == hom[ring.zero()]) != in_k[x] {
            return Err(Error::Disagreement {
                check: "kernel of the canonical map".into(),
                witness: ring.fmt_el(x),
            });
        }
    }

    Ok(LocalizedRing {
        source: ring.clone(),
        set,
        ring: lring,
        s_index,
        class_of_pair,
        reps,
        hom,
        kernel,
    })
}

impl LocalizedRing {
    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn set(&self) -> &MultiplicativeSet {
        &self.set
    }

    /// The localization itself, as a plain finite ring on the classes.
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// `{x : ux = 0 for some u ∈ S}`, the kernel of the canonical map.
    pub fn kernel(&self) -> &[Elem] {
        &self.kernel
    }

    /// Canonical map `x ↦ x/1`.
    pub fn map(&self, x: Elem) -> Elem {
        self.hom[x]
    }

    /// Class of the pair `a/s`; `s` must lie in `S`.
    pub fn class_of(&self, a: Elem, s: Elem) -> Result<Elem> {
        if a >= self.source.order() || s >= self.source.order() || self.s_index[s] == usize::MAX {
            return Err(Error::InvalidConstruction(format!(
                "{a}/{s} is not a pair over S"
            )));
        }
        Ok(self.class_of_pair[a * self.set.len() + self.s_index[s]])
    }

    /// Display a class by its representative pair.
    pub fn describe_class(&self, c: Elem) -> String {
        let (a, s) = self.reps[c];
        format!("{}/{}", self.source.fmt_el(a), self.source.fmt_el(s))
    }

    /// True when the canonical map is already an isomorphism (e.g. when S
    /// consists of units).
    pub fn canonical_map_bijective(&self) -> bool {
        self.kernel == [self.source.zero()] && self.ring.order() == self.source.order()
    }
}

// ----------------------------------------------------------------------
// The kernel shortcut and universality, verified as theorems
// ----------------------------------------------------------------------

/// Outcome of checking `R_S ≅ R/K` for `K = {x : ∃u∈S, ux = 0}`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct KernelShortcutReport {
    pub kernel_size: usize,
    pub quotient_order: usize,
    pub localized_order: usize,
    pub s_images_regular: bool,
    pub iso_verified: bool,
}

/// Verify the finite-ring shortcut: the pair-class localization agrees with
/// the quotient by the kernel, where every image of `S` becomes regular
/// (hence a unit, by finiteness).
pub fn kernel_shortcut_check(loc: &LocalizedRing) -> Result<KernelShortcutReport> {
    let src = loc.source();
    let q = FiniteRing::quotient(src, loc.kernel())?;
    let qmap: Vec<usize> = match q.kind() {
        RingKind::Quotient { class_of, .. } => class_of.clone(),
        _ => unreachable!("quotient constructor returns a quotient kind"),
    };
    let s_images_regular = loc.set().elements().iter().all(|&sv| {
        let im = qmap[sv];
        (0..q.order()).all(|y| y == q.zero() || q.mul(im, y) != q.zero())
    });

    let mut report = KernelShortcutReport {
        kernel_size: loc.kernel().len(),
        quotient_order: q.order(),
        localized_order: loc.ring().order(),
        s_images_regular,
        iso_verified: false,
    };
    if q.order() != loc.ring().order() {
        return Ok(report);
    }
    // Induced correspondence: the class of x mod K ↦ the class of x/1.
    let mut to_loc = vec![usize::MAX; q.order()];
    for x in 0..src.order() {
        let (qc, lc) = (qmap[x], loc.map(x));
        if to_loc[qc] == usize::MAX {
            to_loc[qc] = lc;
        } else if to_loc[qc] != lc {
            return Ok(report);
        }
    }
    let mut seen = vec![false; q.order()];
    for &lc in &to_loc {
        if lc == usize::MAX || seen[lc] {
            return Ok(report);
        }
        seen[lc] = true;
    }
    let l = loc.ring();
    for x in 0..q.order() {
        for y in 0..q.order() {
            if to_loc[q.add(x, y)] != l.add(to_loc[x], to_loc[y])
                || to_loc[q.mul(x, y)] != l.mul(to_loc[x], to_loc[y])
            {
                return Ok(report);
            }
        }
    }
    report.iso_verified = to_loc[q.one()] == l.one();
    Ok(report)
}

/// Outcome of checking the universal property against quotient targets.
#[derive(Debug, Clone, serde::Serialize)]
pub struct UniversalityReport {
    pub quotients_checked: usize,
    pub inverting_targets: usize,
    pub all_factor_uniquely: bool,
    pub witness: Option<String>,
}

/// Check universality at desk scale: every projection `R → R/I` that inverts
/// `S` factors uniquely through the canonical map. (Surjective homs out of
/// `R` are quotient projections up to isomorphism, so quotients are the
/// candidate targets; the improper ideal gives the zero ring, through which
/// everything factors trivially.)
pub fn universality_check(loc: &LocalizedRing, cap: usize) -> Result<UniversalityReport> {
    let src = loc.source();
    let l = loc.ring();
    let mut report = UniversalityReport {
        quotients_checked: 0,
        inverting_targets: 0,
        all_factor_uniquely: true,
        witness: None,
    };

    // Uniqueness is forced by a/s = (a/1)·(s/1)⁻¹ in the localization.
    for a in 0..src.order() {
        for &sv in loc.set().elements() {
            let inv = l.inv(loc.map(sv)).expect("images of S are units");
            if loc.class_of(a, sv)? != l.mul(loc.map(a), inv) {
                report.all_factor_uniquely = false;
                report.witness = Some(format!(
                    "a/s ≠ (a/1)(s/1)⁻¹ at {}/{}",
                    src.fmt_el(a),
                    src.fmt_el(sv)
                ));
            }
        }
    }

    for ideal in crate::ideal::enumerate_ideals(src, cap)? {
        if ideal.is_whole() {
            continue;
        }
        let q = FiniteRing::quotient(src, ideal.elements())?;
        let g: Vec<usize> = match q.kind() {
            RingKind::Quotient { class_of, .. } => class_of.clone(),
            _ => unreachable!("quotient constructor returns a quotient kind"),
        };
        report.quotients_checked += 1;
        if !loc.set().elements().iter().all(|&sv| q.is_unit(g[sv])) {
            continue;
        }
        report.inverting_targets += 1;

        // The factoring map must be h(a/s) = g(a)·g(s)⁻¹: well-defined on
        // classes, a ring homomorphism, and h ∘ canonical = g.
        let mut h = vec![usize::MAX; l.order()];
        let mut ok = true;
        'pairs: for a in 0..src.order() {
            for &sv in loc.set().elements() {
                let c = loc.class_of(a, sv)?;
                let v = q.mul(g[a], q.inv(g[sv]).expect("inverting target"));
                if h[c] == usize::MAX {
                    h[c] = v;
                } else if h[c] != v {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            ok = h[l.one()] == q.one()
                && (0..l.order()).all(|x| {
                    (0..l.order()).all(|y| {
                        h[l.add(x, y)] == q.add(h[x], h[y]) && h[l.mul(x, y)] == q.mul(h[x], h[y])
                    })
                })
                && (0..src.order()).all(|x| h[loc.map(x)] == g[x]);
        }
        if !ok {
            report.all_factor_uniquely = false;
            report.witness = Some(format!(
                "projection onto R/{} does not factor",
                ideal.describe()
            ));
        }
    }
    Ok(report)
}

// ----------------------------------------------------------------------
// Localized modules
// ----------------------------------------------------------------------

/// `M_S` over `R_S`, presented on pair classes `m/s`.
pub struct LocalizedModule {
    source: Arc<FiniteModule>,
    module: Arc<FiniteModule>,
    s_elements: Vec<Elem>,
    s_index: Vec<usize>,
    class_of_pair: Vec<usize>,
    reps: Vec<(Elem, Elem)>,
    map: Vec<Elem>,
    kernel: Vec<Elem>,
}

/// Localize a module at the same multiplicative set as `loc`.
pub fn localize_module(
    loc: &LocalizedRing,
    module: &Arc<FiniteModule>,
) -> Result<LocalizedModule> {
    if !Arc::ptr_eq(module.ring(), loc.source()) {
        return Err(Error::AmbientMismatch(
            "module lives over a different ring than the localization".into(),
        ));
    }
    let ring = loc.source();
    let morder = module.order();
    let s = loc.set().elements().to_vec();
    let sc = s.len();
    if morder * sc > MAX_PAIRS {
        return Err(Error::CapExceeded(format!(
            "module localization would track {} pairs (cap {MAX_PAIRS})",
            morder * sc
        )));
    }
    let mut s_index = vec![usize::MAX; ring.order()];
    for (i, &sv) in s.iter().enumerate() {
        s_index[sv] = i;
    }

    let kernel: Vec<Elem> = (0..morder)
        .filter(|&x| s.iter().any(|&u| module.act(u, x) == module.zero()))
        .collect();
    let mut in_k = vec![false; morder];
    for &x in &kernel {
        in_k[x] = true;
    }

    let mut class_of_pair = vec![usize::MAX; morder * sc];
    let mut reps: Vec<(Elem, Elem)> = Vec::new();
    for x in 0..morder {
        for (si, &sv) in s.iter().enumerate() {
            let mut cls = usize::MAX;
            for (c, &(y, t)) in reps.iter().enumerate() {
                if in_k[module.sub(module.act(t, x), module.act(sv, y))] {
                    cls = c;
                    break;
                }
            }
            if cls == usize::MAX {
                cls = reps.len();
                reps.push((x, sv));
            }
            class_of_pair[x * sc + si] = cls;
        }
    }
    let k = reps.len();
    let pair_class = |x: Elem, sv: Elem| class_of_pair[x * sc + s_index[sv]];

    // Addition on classes and the R_S-action, via representatives.
    let mut add = vec![0; k * k];
    for (i, &(x, sv)) in reps.iter().enumerate() {
        for (j, &(y, t)) in reps.iter().enumerate() {
            add[i * k + j] = pair_class(
                module.add(module.act(t, x), module.act(sv, y)),
                ring.mul(sv, t),
            );
        }
    }
    let lorder = loc.ring().order();
    let mut action = vec![0; lorder * k];
    for rc in 0..lorder {
        let (a, w) = loc.reps[rc];
        for (mc, &(x, sv)) in reps.iter().enumerate() {
            action[rc * k + mc] = pair_class(module.act(a, x), ring.mul(w, sv));
        }
    }

    // One-sided constancy scans; both the addition formula's symmetry and
    // the scans over each action argument pin well-definedness everywhere.
    for x in 0..morder {
        for &sv in &s {
            let c = pair_class(x, sv);
            for (j, &(y, t)) in reps.iter().enumerate() {
                let sum = pair_class(
                    module.add(module.act(t, x), module.act(sv, y)),
                    ring.mul(sv, t),
                );
                if sum != add[c * k + j] {
                    return Err(Error::Disagreement {
                        check: "localized module addition well-defined".into(),
                        witness: format!("pair {}/{}", module.fmt_el(x), ring.fmt_el(sv)),
                    });
                }
            }
        }
    }
    for a in 0..ring.order() {
        for &w in &s {
            let rc = loc.class_of(a, w)?;
            for (mc, &(x, sv)) in reps.iter().enumerate() {
                if action[rc * k + mc] != pair_class(module.act(a, x), ring.mul(w, sv)) {
                    return Err(Error::Disagreement {
                        check: "localized action well-defined in the scalar".into(),
                        witness: format!("scalar {}/{}", ring.fmt_el(a), ring.fmt_el(w)),
                    });
                }
            }
        }
    }
    for x in 0..morder {
        for &sv in &s {
            let mc = pair_class(x, sv);
            for rc in 0..lorder {
                let (a, w) = loc.reps[rc];
                if action[rc * k + mc] != pair_class(module.act(a, x), ring.mul(w, sv)) {
                    return Err(Error::Disagreement {
                        check: "localized action well-defined in the vector".into(),
                        witness: format!("vector {}/{}", module.fmt_el(x), ring.fmt_el(sv)),
                    });
                }
            }
        }
    }

    let names: Vec<String> = reps
        .iter()
        .map(|&(x, sv)| format!("{}/{}", module.fmt_el(x), ring.fmt_el(sv)))
        .collect();
    let lmodule = FiniteModule::from_parts(
        format!("({})_S", module.label()),
        loc.ring().clone(),
        k,
        add,
        action,
        names,
    )?;

    let map: Vec<Elem> = (0..morder).map(|x| pair_class(x, ring.one())).collect();
    for x in 0..morder {
        for y in 0..morder {
            if map[module.add(x, y)] != lmodule.add(map[x], map[y]) {
                return Err(Error::Disagreement {
                    check: "canonical module map is additive".into(),
                    witness: format!("({}, {})", module.fmt_el(x), module.fmt_el(y)),
                });
            }
        }
        for r in 0..ring.order() {
            if map[module.act(r, x)] != lmodule.act(loc.map(r), map[x]) {
                return Err(Error::Disagreement {
                    check: "canonical module map respects the action".into(),
                    witness: format!("{}·{}", ring.fmt_el(r), module.fmt_el(x)),
                });
            }
        }
        if (map[x] == map[module.zero()]) != in_k[x] {
            return Err(Error::Disagreement {
                check: "kernel of the canonical module map".into(),
                witness: module.fmt_el(x),
            });
        }
    }

    Ok(LocalizedModule {
        source: module.clone(),
        module: lmodule,
        s_elements: s,
        s_index,
        class_of_pair,
        reps,
        map,
        kernel,
    })
}

impl LocalizedModule {
    pub fn source(&self) -> &Arc<FiniteModule> {
        &self.source
    }

    /// The localization itself, as a module over the localized ring.
    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    /// `{m : um = 0 for some u ∈ S}`, the kernel of the canonical map.
    pub fn kernel(&self) -> &[Elem] {
        &self.kernel
    }

    /// Canonical map `m ↦ m/1`.
    pub fn map(&self, m: Elem) -> Elem {
        self.map[m]
    }

    /// Class of the pair `m/s`; `s` must lie in `S`.
    pub fn class_of(&self, m: Elem, s: Elem) -> Result<Elem> {
        if m >= self.source.order()
            || s >= self.s_index.len()
            || self.s_index[s] == usize::MAX
        {
            return Err(Error::InvalidConstruction(format!(
                "{m}/{s} is not a module pair over S"
            )));
        }
        Ok(self.class_of_pair[m * self.s_elements.len() + self.s_index[s]])
    }
}

// ----------------------------------------------------------------------
// Extension localization
// ----------------------------------------------------------------------

/// Verification summary for one extension localization.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ExtensionLocalizationReport {
    pub upstairs_set_size: usize,
    pub side_a_order: usize,
    pub side_b_order: usize,
    pub explicit_map_used: bool,
    pub iso_verified: bool,
}

/// Both sides of an extension localization together with the verified
/// isomorphism between them.
pub struct ExtensionLocalization {
    side_a: LocalizedRing,
    base: LocalizedRing,
    modules: Vec<LocalizedModule>,
    localized: Arc<NTrivialExtension>,
    iso: Vec<usize>,
    report: ExtensionLocalizationReport,
}

impl ExtensionLocalization {
    /// The pair-class localization of the flattened extension at `S⋉ₙN`.
    pub fn side_a(&self) -> &LocalizedRing {
        &self.side_a
    }

    /// The base-ring localization `R_S`.
    pub fn base(&self) -> &LocalizedRing {
        &self.base
    }

    /// The localized modules `M_{i,S}`.
    pub fn modules(&self) -> &[LocalizedModule] {
        &self.modules
    }

    /// `R_S ⋉ₙ M_S`, assembled independently of side A.
    pub fn localized(&self) -> &Arc<NTrivialExtension> {
        &self.localized
    }

    /// Element map from side-A classes to flattened side-B indices.
    pub fn iso(&self) -> &[usize] {
        &self.iso
    }

    pub fn report(&self) -> &ExtensionLocalizationReport {
        &self.report
    }
}

/// Localize an extension at `S⋉ₙN` where `S` is the closure of `seed` and
/// `N_i` is spanned by `submodule_seeds[i-1]` (all of `M_i` when absent).
/// Builds `(R⋉ₙM)_{S⋉ₙN}` by pair classes, builds `R_S⋉ₙM_S` independently,
/// and verifies the explicit isomorphism `(m_i)/(s_i) ↦ (m'_i/S₀)` with
/// `(m'_i) = (m_i)·(s_i)~` and `S₀ = s₀^(2ⁿ)`, falling back to exhaustive
/// search only if that map fails.
pub fn localize_extension(
    ext: &Arc<NTrivialExtension>,
    seed: &[Elem],
    submodule_seeds: Option<&[Vec<Elem>]>,
) -> Result<ExtensionLocalization> {
    let ring = ext.ring();
    let n = ext.n();
    let set = MultiplicativeSet::closure(ring, seed)?;
    if set.contains_zero() {
        return Err(Error::InvalidConstruction(
            "0 ∈ S collapses the extension localization".into(),
        ));
    }

    let subs: Vec<Vec<Elem>> = match submodule_seeds {
        None => ext
            .modules()
            .iter()
            .map(|m| (0..m.order()).collect())
            .collect(),
        Some(seeds) => {
            if seeds.len() != n {
                return Err(Error::InvalidConstruction(format!(
                    "expected {n} submodule seeds, got {}",
                    seeds.len()
                )));
            }
            seeds
                .iter()
                .zip(ext.modules())
                .map(|(g, m)| m.span(g).elements.clone())
                .collect()
        }
    };

    // Hypothesis: N_i N_j ⊆ N_{i+j} for i, j ≥ 1 with i + j ≤ n.
    let fam = ext.family();
    for i in 1..n {
        for j in 1..n {
            if i + j > n {
                continue;
            }
            for &x in &subs[i - 1] {
                for &y in &subs[j - 1] {
                    let p = fam.phi(i, j, x, y);
                    if subs[i + j - 1].binary_search(&p).is_err() {
                        return Err(Error::HypothesisNotMet(format!(
                            "N{i}·N{j} ⊄ N{}: φ[{i},{j}]({}, {}) = {} escapes",
                            i + j,
                            ext.modules()[i - 1].fmt_el(x),
                            ext.modules()[j - 1].fmt_el(y),
                            ext.modules()[i + j - 1].fmt_el(p)
                        )));
                    }
                }
            }
        }
    }

    // The upstairs set S⋉ₙN on the flattened ring, then its closedness.
    let flat = ext.flattened()?;
    let radix = ext.radix().to_vec();
    let pools: Vec<&[Elem]> = std::iter::once(set.elements())
        .chain(subs.iter().map(|v| &v[..]))
        .collect();
    let mut upstairs: Vec<Elem> = Vec::new();
    let mut idx = vec![0usize; n + 1];
    'odometer: loop {
        let coords: Vec<Elem> = idx.iter().enumerate().map(|(k, &i)| pools[k][i]).collect();
        upstairs.push(mixed_encode(&coords, &radix));
        let mut k = n + 1;
        while k > 0 {
            k -= 1;
            idx[k] += 1;
            if idx[k] < pools[k].len() {
                continue 'odometer;
            }
            idx[k] = 0;
        }
        break;
    }
    upstairs.sort_unstable();
    let upset = MultiplicativeSet::closure(&flat, &upstairs)?;
    if upset.elements() != &upstairs[..] {
        return Err(Error::Disagreement {
            check: "S⋉ₙN multiplicatively closed".into(),
            witness: format!(
                "closure grew from {} to {} elements",
                upstairs.len(),
                upset.len()
            ),
        });
    }
    let upstairs_set_size = upstairs.len();
    let side_a = localize_at(&flat, upset)?;

    // Side B: R_S ⋉ₙ M_S from independently localized pieces.
    let base = localize_at(ring, set)?;
    let modules: Vec<LocalizedModule> = ext
        .modules()
        .iter()
        .map(|m| localize_module(&base, m))
        .collect::<Result<Vec<_>>>()?;
    let mut tables: BTreeMap<(usize, usize), Vec<Elem>> = BTreeMap::new();
    for i in 1..n {
        for j in 1..n {
            if i + j <= n {
                tables.insert((i, j), localized_phi_table(&base, &modules, fam, i, j)?);
            }
        }
    }
    let mod_arcs: Vec<Arc<FiniteModule>> =
        modules.iter().map(|lm| lm.module().clone()).collect();
    let family_s = ProductMapFamily::explicit(base.ring(), &mod_arcs, tables)?;
    let localized =
        NTrivialExtension::build(base.ring(), &mod_arcs, family_s, ext.strictness())?;

    // The explicit isomorphism, checked for constancy over every pair.
    let bflat = localized.flattened()?;
    let bradix = localized.radix().to_vec();
    let mut iso = vec![usize::MAX; side_a.ring().order()];
    let mut explicit_ok = true;
    'scan: for num in 0..flat.order() {
        for &den in side_a.set().elements() {
            let c = side_a.class_of(num, den)?;
            let num_el = ext.decode(num);
            let den_el = ext.decode(den);
            let prod = ext.mul_el(&num_el, &ext.tilde(&den_el)?);
            let s0 = ring.pow(den_el.coords()[0], 1usize << n);
            let mut bc = vec![0usize; n + 1];
            bc[0] = base.class_of(prod.coords()[0], s0)?;
            for d in 1..=n {
                bc[d] = modules[d - 1].class_of(prod.coords()[d], s0)?;
            }
            let target = mixed_encode(&bc, &bradix);
            if iso[c] == usize::MAX {
                iso[c] = target;
            } else if iso[c] != target {
                explicit_ok = false;
                break 'scan;
            }
        }
    }
    if explicit_ok {
        explicit_ok = verify_flat_iso(side_a.ring(), &bflat, &iso);
    }

    let mut explicit_map_used = explicit_ok;
    let mut iso_verified = explicit_ok;
    if !explicit_ok {
        match exhaustive_ring_iso(side_a.ring(), &bflat)? {
            Some(found) => {
                iso = found;
                explicit_map_used = false;
                iso_verified = true;
            }
            None => {
                return Err(Error::Disagreement {
                    check: "extension localization isomorphism".into(),
                    witness: "explicit map failed and exhaustive search found none".into(),
                });
            }
        }
    }

    let report = ExtensionLocalizationReport {
        upstairs_set_size,
        side_a_order: side_a.ring().order(),
        side_b_order: localized.order(),
        explicit_map_used,
        iso_verified,
    };
    Ok(ExtensionLocalization {
        side_a,
        base,
        modules,
        localized,
        iso,
        report,
    })
}

/// φ_S table for the pair (i, j): `(x/s)·(y/t) = φ(x,y)/(st)`, with
/// constancy scans over each argument.
fn localized_phi_table(
    base: &LocalizedRing,
    mods: &[LocalizedModule],
    fam: &ProductMapFamily,
    i: usize,
    j: usize,
) -> Result<Vec<Elem>> {
    let ring = base.source();
    let (mi, mj, mk) = (&mods[i - 1], &mods[j - 1], &mods[i + j - 1]);
    let (oi, oj) = (mi.module().order(), mj.module().order());
    let mut t = vec![0; oi * oj];
    for ci in 0..oi {
        let (x, sv) = mi.reps[ci];
        for cj in 0..oj {
            let (y, tv) = mj.reps[cj];
            t[ci * oj + cj] = mk.class_of(fam.phi(i, j, x, y), ring.mul(sv, tv))?;
        }
    }
    for x in 0..mi.source().order() {
        for &sv in base.set().elements() {
            let ci = mi.class_of(x, sv)?;
            for cj in 0..oj {
                let (y, tv) = mj.reps[cj];
                if t[ci * oj + cj] != mk.class_of(fam.phi(i, j, x, y), ring.mul(sv, tv))? {
                    return Err(Error::Disagreement {
                        check: "localized product map well-defined".into(),
                        witness: format!("φ[{i},{j}] at left pair {x}/{sv}"),
                    });
                }
            }
        }
    }
    for ci in 0..oi {
        let (x, sv) = mi.reps[ci];
        for y in 0..mj.source().order() {
            for &tv in base.set().elements() {
                let cj = mj.class_of(y, tv)?;
                if t[ci * oj + cj] != mk.class_of(fam.phi(i, j, x, y), ring.mul(sv, tv))? {
                    return Err(Error::Disagreement {
                        check: "localized product map well-defined".into(),
                        witness: format!("φ[{i},{j}] at right pair {y}/{tv}"),
                    });
                }
            }
        }
    }
    Ok(t)
}

/// Check that `f` is a ring isomorphism between two table rings.
fn verify_flat_iso(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>, f: &[usize]) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let mut seen = vec![false; b.order()];
    for &v in f {
        if v == usize::MAX || v >= b.order() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    if f[a.one()] != b.one() || f[a.zero()] != b.zero() {
        return false;
    }
    (0..a.order()).all(|x| {
        (0..a.order()).all(|y| {
            f[a.add(x, y)] == b.add(f[x], f[y]) && f[a.mul(x, y)] == b.mul(f[x], f[y])
        })
    })
}

/// Exhaustive isomorphism search between rings of equal order ≤ 256, by
/// mapping an additive basis onto candidates of equal additive order.
fn exhaustive_ring_iso(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> Result<Option<Vec<usize>>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    let order = a.order();
    if order > 256 {
        return Err(Error::CapExceeded(format!(
            "isomorphism search capped at order 256, got {order}"
        )));
    }
    let add_a: Vec<Elem> = (0..order * order).map(|p| a.add(p / order, p % order)).collect();
    let (gens, gorders) = abelian_basis(order, &add_a);
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let d = a.additive_order(g);
            (0..order).filter(|&h| b.additive_order(h) == d).collect()
        })
        .collect();
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }

    let mut attempts = 0usize;
    let mut pick = vec![0usize; gens.len()];
    'tuples: loop {
        attempts += 1;
        if attempts > MAX_ISO_ATTEMPTS {
            return Err(Error::CapExceeded(
                "isomorphism search attempt budget".into(),
            ));
        }
        let imgs: Vec<Elem> = pick.iter().enumerate().map(|(k, &i)| cands[k][i]).collect();
        if let Some(f) = basis_image_map(a, b, &gens, &gorders, &imgs) {
            if verify_flat_iso(a, b, &f) {
                return Ok(Some(f));
            }
        }
        let mut k = pick.len();
        while k > 0 {
            k -= 1;
            pick[k] += 1;
            if pick[k] < cands[k].len() {
                continue 'tuples;
            }
            pick[k] = 0;
        }
        return Ok(None);
    }
}

/// Extend generator images additively; `None` when the images are not
/// independent. Additivity holds by construction because each image has the
/// same additive order as its generator.
fn basis_image_map(
    a: &Arc<FiniteRing>,
    b: &Arc<FiniteRing>,
    gens: &[Elem],
    gorders: &[usize],
    imgs: &[Elem],
) -> Option<Vec<usize>> {
    let order = a.order();
    let mut f = vec![usize::MAX; order];
    let mut used = vec![false; order];
    let mut coeff = vec![0usize; gens.len()];
    'odometer: loop {
        let mut xa = a.zero();
        let mut xb = b.zero();
        for (k, &c) in coeff.iter().enumerate() {
            xa = a.add(xa, a.smul(c, gens[k]));
            xb = b.add(xb, b.smul(c, imgs[k]));
        }
        if f[xa] != usize::MAX || used[xb] {
            return None;
        }
        f[xa] = xb;
        used[xb] = true;
        let mut k = coeff.len();
        while k > 0 {
            k -= 1;
            coeff[k] += 1;
            if coeff[k] < gorders[k] {
                continue 'odometer;
            }
            coeff[k] = 0;
        }
        break;
    }
    Some(f)
}

// ----------------------------------------------------------------------
// Total quotient ring
// ----------------------------------------------------------------------

/// `T(R⋉ₙM)` data: the localization at `S = R − (Z(R) ∪ Z(M₁) ∪ … ∪ Z(Mₙ))`
/// plus the check that `S⋉ₙM` is exactly the set of regular elements.
pub struct TotalQuotientReport {
    pub downstairs_regular: Vec<Elem>,
    pub upstairs_matches_regular: bool,
    pub localization: ExtensionLocalization,
}

/// Build the total quotient ring of an extension.
pub fn total_quotient(ext: &Arc<NTrivialExtension>) -> Result<TotalQuotientReport> {
    let ring = ext.ring();
    let mut bad = vec![false; ring.order()];
    for &z in &ring.zero_divisors_inclusive() {
        bad[z] = true;
    }
    for m in ext.modules() {
        for &z in &m.zero_divisors_inclusive() {
            bad[z] = true;
        }
    }
    let s: Vec<Elem> = (0..ring.order()).filter(|&x| !bad[x]).collect();
    let localization = localize_extension(ext, &s, None)?;

    let flat = ext.flattened()?;
    let mut regular_mask = vec![true; flat.order()];
    for &z in &flat.zero_divisors_inclusive() {
        regular_mask[z] = false;
    }
    let regular: Vec<Elem> = (0..flat.order()).filter(|&x| regular_mask[x]).collect();
    let upstairs_matches_regular = localization.side_a().set().elements() == &regular[..];
    Ok(TotalQuotientReport {
        downstairs_regular: s,
        upstairs_matches_regular,
        localization,
    })
}

// ----------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::Strictness;
    use crate::module::FiniteModule;

    fn chain(m: usize, n: usize) -> Arc<NTrivialExtension> {
        let ring = FiniteRing::zm(m).unwrap();
        let mods: Vec<_> = (1..=n)
            .map(|i| FiniteModule::regular(&ring).unwrap())
            .collect();
        let fam = ProductMapFamily::ring_multiplication(&ring, &mods).unwrap();
        NTrivialExtension::build(&ring, &mods, fam, Strictness::Strict).unwrap()
    }

    #[test]
    fn closures_match_hand_computation() {
        let z12 = FiniteRing::zm(12).unwrap();
        assert_eq!(
            MultiplicativeSet::closure(&z12, &[2]).unwrap().elements(),
            &[1, 2, 4, 8]
        );
        assert_eq!(
            MultiplicativeSet::closure(&z12, &[1]).unwrap().elements(),
            &[1]
        );
        let z6 = FiniteRing::zm(6).unwrap();
        assert_eq!(
            MultiplicativeSet::closure(&z6, &[5]).unwrap().elements(),
            &[1, 5]
        );
    }

    #[test]
    fn zero_in_set_is_refused_without_the_flag() {
        let z6 = FiniteRing::zm(6).unwrap();
        let set = MultiplicativeSet::closure(&z6, &[2, 3]).unwrap();
        assert!(set.contains_zero());
        assert_eq!(set.len(), 5); // {0, 1, 2, 3, 4}
        assert!(localize_ring(&z6, &[2, 3]).is_err());
        match localize_ring_at(&z6, set, true).unwrap() {
            RingLocalization::Collapsed { set_size } => assert_eq!(set_size, 5),
            RingLocalization::Proper(_) => panic!("0 ∈ S must collapse"),
        }
    }

    #[test]
    fn z12_at_powers_of_two_is_the_field_with_three_elements() {
        let z12 = FiniteRing::zm(12).unwrap();
        let loc = localize_ring(&z12, &[2]).unwrap();
        assert_eq!(loc.kernel(), &[0, 3, 6, 9]);
        assert_eq!(loc.ring().order(), 3);
        assert!(loc.ring().predicates().is_field);

        let shortcut = kernel_shortcut_check(&loc).unwrap();
        assert!(shortcut.s_images_regular);
        assert!(shortcut.iso_verified);
        assert_eq!(shortcut.quotient_order, 3);

        let uni = universality_check(&loc, 64).unwrap();
        assert_eq!(uni.quotients_checked, 5);
        assert_eq!(uni.inverting_targets, 1);
        assert!(uni.all_factor_uniquely);
    }

    #[test]
    fn localizing_at_units_is_the_identity() {
        let z6 = FiniteRing::zm(6).unwrap();
        let loc = localize_ring(&z6, &[5]).unwrap();
        assert!(loc.canonical_map_bijective());
        assert_eq!(loc.ring().order(), 6);
        assert_eq!(loc.kernel(), &[0]);
    }

    #[test]
    fn localizing_z12_at_the_complement_of_a_prime_is_local() {
        let z12 = FiniteRing::zm(12).unwrap();
        // Complement of the prime ⟨2⟩ = {0,2,4,6,8,10}.
        let loc = localize_ring(&z12, &[1, 3, 5, 7, 9, 11]).unwrap();
        assert_eq!(loc.kernel(), &[0, 4, 8]);
        assert_eq!(loc.ring().order(), 4);
        assert!(loc.ring().predicates().is_local);
        // The maximal ideal downstairs is the image of ⟨2⟩.
        let spec = crate::ideal::spectrum(loc.ring(), 64).unwrap();
        assert_eq!(spec.maximals.len(), 1);
        let mut image: Vec<Elem> = [0, 2, 4, 6, 8, 10].iter().map(|&x| loc.map(x)).collect();
        image.sort_unstable();
        image.dedup();
        assert_eq!(spec.ideals[spec.maximals[0]].elements(), &image[..]);
    }

    #[test]
    fn module_localization_follows_the_ring() {
        let z12 = FiniteRing::zm(12).unwrap();
        let loc = localize_ring(&z12, &[2]).unwrap();
        let m = FiniteModule::regular(&z12).unwrap();
        let lm = localize_module(&loc, &m).unwrap();
        assert_eq!(lm.kernel(), &[0, 3, 6, 9]);
        assert_eq!(lm.module().order(), 3);
        assert_eq!(lm.class_of(1, 4).unwrap(), lm.map(1));
    }

    #[test]
    fn extension_localization_uses_the_explicit_map() {
        let ext = chain(12, 1);
        let out = localize_extension(&ext, &[2], None).unwrap();
        let r = out.report();
        assert_eq!(r.upstairs_set_size, 48);
        assert_eq!(r.side_a_order, 9);
        assert_eq!(r.side_b_order, 9);
        assert!(r.explicit_map_used);
        assert!(r.iso_verified);
        assert_eq!(out.localized().ring().order(), 3);
        assert_eq!(out.localized().modules()[0].order(), 3);
    }

    #[test]
    fn submodule_closure_hypothesis_is_enforced() {
        let ext = chain(4, 2);
        // N₁ = M₁ but N₂ = 0: then N₁N₁ = {0, 1·1, …} escapes N₂.
        let err = match localize_extension(&ext, &[1], Some(&[vec![1], vec![]])) {
            Err(e) => e,
            Ok(_) => panic!("closure violation was accepted"),
        };
        assert!(matches!(err, Error::HypothesisNotMet(_)));
    }

    #[test]
    fn total_quotient_of_z6_chain_is_the_identity() {
        let ext = chain(6, 1);
        let report = total_quotient(&ext).unwrap();
        assert_eq!(report.downstairs_regular, vec![1, 5]);
        assert!(report.upstairs_matches_regular);
        assert!(report.localization.report().iso_verified);
        assert_eq!(report.localization.report().side_a_order, 36);
        assert!(report.localization.side_a().canonical_map_bijective());
    }
}
