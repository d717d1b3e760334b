//! The n-trivial extension `R ⋉ₙ M = R ⊕ M₁ ⊕ … ⊕ Mₙ` with convolution
//! multiplication, plus the structural machinery attached to it: the
//! upper-triangular matrix view, truncation and inclusion homomorphisms,
//! the tilde involution used for localization, element classification
//! against componentwise formulas, monoid gradings, and the recognizers
//! for the truncated-polynomial and direct-product shapes.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::maps::{index_pairs, ProductMapFamily};
use crate::module::FiniteModule;
use crate::ring::{Elem, FiniteRing, RingKind};
use crate::{Error, Result};

/// Whether an extension must satisfy the full ring laws.
///
/// `Strict` extensions are honest commutative rings (the map family is
/// bilinear, symmetric, and associative). `Exploratory` extensions only
/// need bilinearity; they exist so that non-symmetric or non-associative
/// map families can still be multiplied out and inspected. Everything that
/// relies on ring structure refuses to run on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strictness {
    Strict,
    Exploratory,
}

/// An element `(m₀, m₁, …, mₙ)` with `m₀ ∈ R` and `mᵢ ∈ Mᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ExtElement {
    coords: Vec<Elem>,
}

impl ExtElement {
    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }
}

/// The extension ring `R ⋉ₙ M₁ ⋉ … ⋉ Mₙ`.
pub struct NTrivialExtension {
    ring: Arc<FiniteRing>,
    modules: Vec<Arc<FiniteModule>>,
    family: ProductMapFamily,
    strictness: Strictness,
    n: usize,
    order: usize,
    /// Mixed radix `[|R|, |M₁|, …, |Mₙ|]`, slot 0 most significant.
    radix: Vec<usize>,
    label: String,
    /// Degrees `i` with `Mᵢ = 0`, kept visible because most structure
    /// theorems assume nonzero modules.
    zero_module_degrees: Vec<usize>,
    flattened: OnceLock<Arc<FiniteRing>>,
}

impl std::fmt::Debug for NTrivialExtension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NTrivialExtension")
            .field("label", &self.label)
            .field("n", &self.n)
            .field("order", &self.order)
            .field("strictness", &self.strictness)
            .finish()
    }
}

impl NTrivialExtension {
    // ------------------------------------------------------------------
    // Construction
    // ------------------------------------------------------------------

    /// Assemble `R ⋉ₙ M` from a ring, the modules `M₁..Mₙ`, and a map
    /// family covering them. `Strict` demands a symmetric associative
    /// family (with the failing law's witness in the error); both modes
    /// demand bilinearity, without which the product would not even
    /// distribute over addition.
    pub fn build(
        ring: &Arc<FiniteRing>,
        modules: &[Arc<FiniteModule>],
        family: ProductMapFamily,
        strictness: Strictness,
    ) -> Result<Arc<NTrivialExtension>> {
        let n = modules.len();
        if n == 0 {
            return Err(Error::InvalidConstruction(
                "extension needs at least one module".into(),
            ));
        }
        if !Arc::ptr_eq(family.ring(), ring) || family.modules().len() != n {
            return Err(Error::AmbientMismatch(
                "extension: map family built over different components".into(),
            ));
        }
        for (m, fm) in modules.iter().zip(family.modules()) {
            if !Arc::ptr_eq(m, fm) {
                return Err(Error::AmbientMismatch(
                    "extension: map family built over different modules".into(),
                ));
            }
        }
        let v = family.validation();
        if !v.bilinear_ok {
            let w = &v.witnesses[0];
            return Err(Error::AxiomViolation {
                law: format!("product maps must be bilinear ({})", w.law),
                witness: format!(
                    "φ[{:?}] at {:?}: {} vs {}",
                    w.indices, w.elements, w.lhs, w.rhs
                ),
            });
        }
        if strictness == Strictness::Strict && !v.all_ok() {
            let w = &v.witnesses[0];
            return Err(Error::AxiomViolation {
                law: format!("strict extension requires {}", w.law),
                witness: format!(
                    "φ[{:?}] at {:?}: {} vs {}",
                    w.indices, w.elements, w.lhs, w.rhs
                ),
            });
        }
        let mut radix = vec![ring.order()];
        radix.extend(modules.iter().map(|m| m.order()));
        let order = radix.iter().product();
        let zero_module_degrees = modules
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_zero_module())
            .map(|(i, _)| i + 1)
            .collect();
        let mut parts = vec![ring.label().to_string()];
        parts.extend(modules.iter().map(|m| short_label(m)));
        let label = parts.join("⋉");
        Ok(Arc::new(NTrivialExtension {
            ring: ring.clone(),
            modules: modules.to_vec(),
            family,
            strictness,
            n,
            order,
            radix,
            label,
            zero_module_degrees,
            flattened: OnceLock::new(),
        }))
    }

    // ------------------------------------------------------------------
    // Accessors
    // ------------------------------------------------------------------

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn modules(&self) -> &[Arc<FiniteModule>] {
        &self.modules
    }

    pub fn family(&self) -> &ProductMapFamily {
        &self.family
    }

    pub fn strictness(&self) -> Strictness {
        self.strictness
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|R|·|M₁|·…·|Mₙ|`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn radix(&self) -> &[usize] {
        &self.radix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn zero_module_degrees(&self) -> &[usize] {
        &self.zero_module_degrees
    }

    fn require_strict(&self, op: &str) -> Result<()> {
        if self.strictness == Strictness::Strict {
            Ok(())
        } else {
            Err(Error::HypothesisNotMet(format!(
                "{op} requires a strict extension; this one is exploratory \
                 (its product maps are not a commutative-ring structure)"
            )))
        }
    }

    // ------------------------------------------------------------------
    // Elements and arithmetic
    // ------------------------------------------------------------------

    /// Element from per-slot indices, with range checking.
    pub fn element(&self, coords: &[Elem]) -> Result<ExtElement> {
        if coords.len() != self.n + 1 {
            return Err(Error::InvalidConstruction(format!(
                "element needs {} coordinates, got {}",
                self.n + 1,
                coords.len()
            )));
        }
        for (i, (&c, &d)) in coords.iter().zip(&self.radix).enumerate() {
            if c >= d {
                return Err(Error::InvalidConstruction(format!(
                    "coordinate {c} out of range for slot {i} (order {d})"
                )));
            }
        }
        Ok(ExtElement { coords: coords.to_vec() })
    }

    pub fn zero_el(&self) -> ExtElement {
        ExtElement { coords: vec![0; self.n + 1] }
    }

    pub fn one_el(&self) -> ExtElement {
        let mut coords = vec![0; self.n + 1];
        coords[0] = self.ring.one();
        ExtElement { coords }
    }

    /// Mixed-radix index of an element (slot 0 most significant).
    pub fn encode(&self, el: &ExtElement) -> usize {
        el.coords
            .iter()
            .zip(&self.radix)
            .fold(0, |acc, (&c, &d)| acc * d + c)
    }

    /// Element with the given mixed-radix index.
    pub fn decode(&self, idx: usize) -> ExtElement {
        let mut rest = idx;
        let mut coords = vec![0; self.n + 1];
        for (i, &d) in self.radix.iter().enumerate().rev() {
            coords[i] = rest % d;
            rest /= d;
        }
        ExtElement { coords }
    }

    pub fn add_el(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement { coords: self.add_coords(&a.coords, &b.coords) }
    }

    pub fn neg_el(&self, a: &ExtElement) -> ExtElement {
        let coords = (0..=self.n)
            .map(|i| {
                if i == 0 {
                    self.ring.neg(a.coords[0])
                } else {
                    self.modules[i - 1].neg(a.coords[i])
                }
            })
            .collect();
        ExtElement { coords }
    }

    pub fn sub_el(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        self.add_el(a, &self.neg_el(b))
    }

    /// Convolution product: slot `i` of the result is
    /// `Σ_{j+k=i} mⱼ·m′ₖ` with `M₀ = R` and the mixed products given by
    /// the ring action and the map family.
    pub fn mul_el(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement { coords: self.mul_coords(&a.coords, &b.coords) }
    }

    pub fn pow_el(&self, a: &ExtElement, k: usize) -> ExtElement {
        let mut acc = self.one_el();
        for _ in 0..k {
            acc = self.mul_el(&acc, a);
        }
        acc
    }

    pub fn fmt_el(&self, el: &ExtElement) -> String {
        let mut parts = vec![self.ring.fmt_el(el.coords[0])];
        for (i, m) in self.modules.iter().enumerate() {
            parts.push(m.fmt_el(el.coords[i + 1]));
        }
        format!("({})", parts.join(","))
    }

    fn add_coords(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        (0..=self.n)
            .map(|i| {
                if i == 0 {
                    self.ring.add(a[0], b[0])
                } else {
                    self.modules[i - 1].add(a[i], b[i])
                }
            })
            .collect()
    }

    fn mul_coords(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; self.n + 1];
        for i in 0..=self.n {
            let mut acc = 0;
            for j in 0..=i {
                let p = self.slot_mul(j, a[j], i - j, b[i - j]);
                acc = self.slot_add(i, acc, p);
            }
            out[i] = acc;
        }
        out
    }

    /// Product of a degree-`j` and a degree-`k` entry, landing in degree
    /// `j + k` (callers guarantee `j + k ≤ n`).
    #[inline]
    fn slot_mul(&self, j: usize, x: Elem, k: usize, y: Elem) -> Elem {
        match (j, k) {
            (0, 0) => self.ring.mul(x, y),
            (0, _) => self.modules[k - 1].act(x, y),
            (_, 0) => self.modules[j - 1].act(y, x),
            _ => self.family.phi(j, k, x, y),
        }
    }

    #[inline]
    fn slot_add(&self, i: usize, x: Elem, y: Elem) -> Elem {
        if i == 0 {
            self.ring.add(x, y)
        } else {
            self.modules[i - 1].add(x, y)
        }
    }

    // ------------------------------------------------------------------
    // Flattened ring
    // ------------------------------------------------------------------

    /// The extension as a plain [`FiniteRing`] over mixed-radix indices,
    /// built lazily. The triple-law scan is skipped: the map family's
    /// validated bilinearity/symmetry/associativity already forces the
    /// convolution product to be a commutative-ring structure.
    pub fn flattened(&self) -> Result<Arc<FiniteRing>> {
        self.require_strict("flattening to a ring")?;
        if let Some(r) = self.flattened.get() {
            return Ok(r.clone());
        }
        let decoded: Vec<Vec<Elem>> = (0..self.order).map(|i| self.decode(i).coords).collect();
        let mut add = vec![0; self.order * self.order];
        let mut mul = vec![0; self.order * self.order];
        for x in 0..self.order {
            for y in 0..self.order {
                let s = self.add_coords(&decoded[x], &decoded[y]);
                let p = self.mul_coords(&decoded[x], &decoded[y]);
                add[x * self.order + y] =
                    s.iter().zip(&self.radix).fold(0, |acc, (&c, &d)| acc * d + c);
                mul[x * self.order + y] =
                    p.iter().zip(&self.radix).fold(0, |acc, (&c, &d)| acc * d + c);
            }
        }
        let flat = FiniteRing::from_tables_trusted(
            self.label.clone(),
            self.order,
            add,
            mul,
            "componentwise laws plus a validated bilinear symmetric associative map family",
        )?;
        let _ = self.flattened.set(flat);
        Ok(self.flattened.get().expect("just set").clone())
    }

    // ------------------------------------------------------------------
    // Matrix view
    // ------------------------------------------------------------------

    /// Upper-triangular (n+1)×(n+1) view: row `r`, column `c` holds the
    /// degree-`(c−r)` coordinate, so every diagonal is constant.
    pub fn matrix_view(&self, el: &ExtElement) -> ToeplitzMatrix {
        let k = self.n + 1;
        let mut entries = vec![None; k * k];
        for r in 0..k {
            for c in r..k {
                entries[r * k + c] = Some(el.coords[c - r]);
            }
        }
        ToeplitzMatrix { n: self.n, entries }
    }

    /// Formal matrix product; entry `(r,c)` is `Σ_k A[r,k]·B[k,c]` with
    /// each term multiplied by degree.
    pub fn matrix_mul(&self, a: &ToeplitzMatrix, b: &ToeplitzMatrix) -> ToeplitzMatrix {
        let k = self.n + 1;
        let mut entries = vec![None; k * k];
        for r in 0..k {
            for c in r..k {
                let mut acc = 0;
                for m in r..=c {
                    let p = self.slot_mul(
                        m - r,
                        a.entry(r, m).expect("upper triangular"),
                        c - m,
                        b.entry(m, c).expect("upper triangular"),
                    );
                    acc = self.slot_add(c - r, acc, p);
                }
                entries[r * k + c] = Some(acc);
            }
        }
        ToeplitzMatrix { n: self.n, entries }
    }

    /// Recover an element from a matrix, verifying the diagonals really
    /// are constant.
    pub fn matrix_to_element(&self, m: &ToeplitzMatrix) -> Result<ExtElement> {
        let k = self.n + 1;
        let mut coords = vec![0; k];
        for d in 0..k {
            let v = m.entry(0, d).expect("upper triangular");
            for r in 0..k - d {
                if m.entry(r, r + d) != Some(v) {
                    return Err(Error::Disagreement {
                        check: "matrix diagonals constant".into(),
                        witness: format!("diagonal {d} differs at row {r}"),
                    });
                }
            }
            coords[d] = v;
        }
        Ok(ExtElement { coords })
    }

    /// Check that the matrix view turns convolution products into matrix
    /// products: exhaustive over all pairs when `order² ≤ cap`, otherwise
    /// a seeded sample of `cap` pairs.
    pub fn matrix_check(&self, cap: usize, seed: u64) -> MatrixCheckReport {
        let total = self.order.saturating_mul(self.order);
        let exhaustive = total <= cap;
        let mut pairs_checked = 0;
        let mut witness = None;
        let check = |x: usize, y: usize, witness: &mut Option<String>| -> bool {
            let (a, b) = (self.decode(x), self.decode(y));
            let lhs = self.matrix_mul(&self.matrix_view(&a), &self.matrix_view(&b));
            let direct = self.mul_el(&a, &b);
            match self.matrix_to_element(&lhs) {
                Ok(el) if el == direct => true,
                Ok(el) => {
                    *witness = Some(format!(
                        "matrix product of {} and {} gives {}, convolution gives {}",
                        self.fmt_el(&a),
                        self.fmt_el(&b),
                        self.fmt_el(&el),
                        self.fmt_el(&direct)
                    ));
                    false
                }
                Err(e) => {
                    *witness = Some(format!(
                        "matrix product of {} and {}: {e}",
                        self.fmt_el(&a),
                        self.fmt_el(&b)
                    ));
                    false
                }
            }
        };
        let mut ok = true;
        if exhaustive {
            'all: for x in 0..self.order {
                for y in 0..self.order {
                    pairs_checked += 1;
                    if !check(x, y, &mut witness) {
                        ok = false;
                        break 'all;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..cap {
                let x = rng.gen_range(0..self.order);
                let y = rng.gen_range(0..self.order);
                pairs_checked += 1;
                if !check(x, y, &mut witness) {
                    ok = false;
                    break;
                }
            }
        }
        MatrixCheckReport { ok, exhaustive, pairs_checked, witness }
    }

    // ------------------------------------------------------------------
    // Canonical homomorphisms
    // ------------------------------------------------------------------

    /// The truncation `π: R⋉ₙM → R⋉ₖM` dropping slots above `keep`,
    /// with the target extension and a verified homomorphism report
    /// (surjective; kernel `0⋉…⋉0⋉M_{keep+1}⋉…⋉Mₙ`).
    pub fn truncated(&self, keep: usize) -> Result<(Arc<NTrivialExtension>, HomReport)> {
        self.require_strict("truncation homomorphism")?;
        if keep == 0 || keep >= self.n {
            return Err(Error::InvalidConstruction(format!(
                "truncation keeps 1..{} slots, got {keep}",
                self.n - 1
            )));
        }
        let fam = self.family.restricted(keep)?;
        let target =
            NTrivialExtension::build(&self.ring, &self.modules[..keep], fam, Strictness::Strict)?;
        let pi = |el: &ExtElement| ExtElement { coords: el.coords[..=keep].to_vec() };

        let mut report = HomReport::named(format!("truncation to {}", target.label()));
        let expected_kernel: usize = self.radix[keep + 1..].iter().product();
        let mut kernel = 0;
        for x in 0..self.order {
            let el = self.decode(x);
            if pi(&el) == target.zero_el() {
                kernel += 1;
            }
        }
        report.kernel_size = kernel;
        if kernel != expected_kernel {
            report.ok = false;
            report.witness = Some(format!(
                "kernel has {kernel} elements, expected {expected_kernel}"
            ));
            return Ok((target, report));
        }
        // Surjective: every target element is hit by zero-padding.
        for t in 0..target.order() {
            let tl = target.decode(t);
            let mut coords = tl.coords().to_vec();
            coords.resize(self.n + 1, 0);
            if pi(&ExtElement { coords }) != tl {
                report.ok = false;
                report.surjective = false;
                report.witness = Some(format!("{} not hit", target.fmt_el(&tl)));
                return Ok((target, report));
            }
        }
        report.surjective = true;
        // Ring homomorphism, exhaustively or sampled.
        self.check_hom_pairs(&mut report, |x, y| {
            let (a, b) = (self.decode(x), self.decode(y));
            let add_ok = pi(&self.add_el(&a, &b)) == target.add_el(&pi(&a), &pi(&b));
            let mul_ok = pi(&self.mul_el(&a, &b)) == target.mul_el(&pi(&a), &pi(&b));
            if add_ok && mul_ok {
                None
            } else {
                Some(format!(
                    "truncation not a homomorphism at {} and {}",
                    self.fmt_el(&a),
                    self.fmt_el(&b)
                ))
            }
        });
        if pi(&self.one_el()) != target.one_el() {
            report.ok = false;
            report.witness = Some("truncation does not preserve 1".into());
        }
        Ok((target, report))
    }

    /// The inclusion `ι: R → R⋉ₙM`, `r ↦ (r,0,…,0)`, verified to be an
    /// injective ring homomorphism.
    pub fn iota_check(&self) -> Result<HomReport> {
        self.require_strict("inclusion homomorphism")?;
        let mut report = HomReport::named(format!("inclusion of {}", self.ring.label()));
        report.injective = true; // distinct r give distinct slot-0 coords
        report.kernel_size = 1;
        let iota = |r: Elem| {
            let mut coords = vec![0; self.n + 1];
            coords[0] = r;
            ExtElement { coords }
        };
        for r in 0..self.ring.order() {
            for s in 0..self.ring.order() {
                report.pairs_checked += 1;
                let add_ok =
                    iota(self.ring.add(r, s)) == self.add_el(&iota(r), &iota(s));
                let mul_ok =
                    iota(self.ring.mul(r, s)) == self.mul_el(&iota(r), &iota(s));
                if !add_ok || !mul_ok {
                    report.ok = false;
                    report.witness = Some(format!(
                        "inclusion not a homomorphism at {} and {}",
                        self.ring.fmt_el(r),
                        self.ring.fmt_el(s)
                    ));
                    return Ok(report);
                }
            }
        }
        report.exhaustive = true;
        if iota(self.ring.one()) != self.one_el() {
            report.ok = false;
            report.witness = Some("inclusion does not preserve 1".into());
        }
        Ok(report)
    }

    /// Coordinate projection `Π_i` (degree-`i` slot of an element).
    pub fn project(&self, el: &ExtElement, i: usize) -> Elem {
        el.coords[i]
    }

    fn check_hom_pairs(
        &self,
        report: &mut HomReport,
        check: impl Fn(usize, usize) -> Option<String>,
    ) {
        const PAIR_CAP: usize = 4_000_000;
        let total = self.order.saturating_mul(self.order);
        if total <= PAIR_CAP {
            report.exhaustive = true;
            for x in 0..self.order {
                for y in 0..self.order {
                    report.pairs_checked += 1;
                    if let Some(w) = check(x, y) {
                        report.ok = false;
                        report.witness = Some(w);
                        return;
                    }
                }
            }
        } else {
            report.exhaustive = false;
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..65_536 {
                let x = rng.gen_range(0..self.order);
                let y = rng.gen_range(0..self.order);
                report.pairs_checked += 1;
                if let Some(w) = check(x, y) {
                    report.ok = false;
                    report.witness = Some(w);
                    return;
                }
            }
        }
    }

    // ------------------------------------------------------------------
    // The tilde companion
    // ------------------------------------------------------------------

    /// The companion element `t` with `x·t = (m₀^{2ⁿ}, 0, …, 0)`: sweep
    /// degrees `k = 1..n`, each step multiplying by
    /// `(a, 0, …, 0, −yₖ, 0, …, 0)` where `a` is the current slot-0 value
    /// and `yₖ` the current degree-`k` coordinate. For `n = 1` this is
    /// `(m₀, −m₁)`.
    pub fn tilde(&self, el: &ExtElement) -> Result<ExtElement> {
        self.require_strict("tilde companion")?;
        let mut x = el.clone();
        let mut acc = self.one_el();
        for k in 1..=self.n {
            let mut t = vec![0; self.n + 1];
            t[0] = x.coords[0];
            t[k] = self.modules[k - 1].neg(x.coords[k]);
            let t = ExtElement { coords: t };
            x = self.mul_el(&x, &t);
            acc = self.mul_el(&acc, &t);
        }
        Ok(acc)
    }

    /// Verify `x·tilde(x) = (m₀^{2ⁿ}, 0, …, 0)` for every element.
    pub fn tilde_contract_check(&self) -> Result<(usize, Option<String>)> {
        self.require_strict("tilde contract")?;
        let mut checked = 0;
        for i in 0..self.order {
            let el = self.decode(i);
            let t = self.tilde(&el)?;
            let p = self.mul_el(&el, &t);
            let mut want = vec![0; self.n + 1];
            want[0] = self.ring.pow(el.coords[0], 1 << self.n);
            if p.coords != want {
                return Ok((
                    checked,
                    Some(format!(
                        "x = {}, x·tilde(x) = {} but expected ({},0,…)",
                        self.fmt_el(&el),
                        self.fmt_el(&p),
                        self.ring.fmt_el(want[0])
                    )),
                ));
            }
            checked += 1;
        }
        Ok((checked, None))
    }

    /// Whether every product of `j` nonzero elements of `Mᵢ` is nonzero.
    /// The iterated product of `j` degree-`i` elements lands in degree
    /// `i·j`, so the test needs `i·j ≤ n`. Returns the first offending
    /// tuple otherwise.
    pub fn module_integral(
        &self,
        i: usize,
        j: usize,
    ) -> Result<(bool, Option<Vec<String>>)> {
        self.require_strict("module integrality")?;
        if i == 0 || j < 2 || i * j > self.n {
            return Err(Error::HypothesisNotMet(format!(
                "module integrality needs 1 ≤ i, 2 ≤ j, i·j ≤ n; got i = {i}, j = {j}"
            )));
        }
        let m = &self.modules[i - 1];
        if m.order() <= 1 {
            return Ok((true, None));
        }
        let embed = |x: Elem| {
            let mut c = vec![0; self.n + 1];
            c[i] = x;
            ExtElement { coords: c }
        };
        let mut tuple = vec![1usize; j];
        loop {
            let mut acc = embed(tuple[0]);
            for &x in &tuple[1..] {
                acc = self.mul_el(&acc, &embed(x));
            }
            if acc.coords.iter().all(|&c| c == 0) {
                let witness = tuple.iter().map(|&x| m.fmt_el(x)).collect();
                return Ok((false, Some(witness)));
            }
            let mut k = j;
            loop {
                if k == 0 {
                    return Ok((true, None));
                }
                k -= 1;
                tuple[k] += 1;
                if tuple[k] < m.order() {
                    break;
                }
                tuple[k] = 1;
            }
        }
    }

    // ------------------------------------------------------------------
    // Classification
    // ------------------------------------------------------------------

    /// Units, zero divisors, idempotents, nilpotents, and the Jacobson
    /// radical, computed twice: brute force on the flattened ring, and by
    /// the componentwise descriptions
    ///
    /// - `U = U(R)⋉M`, `Id = Id(R)⋉0`, `Nil = Nil(R)⋉M`, `J = J(R)⋉M`,
    /// - `Z = (Z(R) ∪ Z(M₁) ∪ … ∪ Z(Mₙ))⋉M` (zero-divisor sets inclusive).
    ///
    /// Any mismatch is an error carrying the first differing element.
    pub fn classify(&self) -> Result<ExtensionClassification> {
        self.require_strict("classification")?;
        let flat = self.flattened()?;
        let cls = flat.classify();
        let brute = ClassifiedSets {
            units: cls.units,
            zero_divisors: cls.zero_divisors,
            idempotents: cls.idempotents,
            nilpotents: cls.nilpotents,
            jacobson: flat.jacobson_radical(),
        };

        let rn = self.ring.order();
        let in_set = |v: &[Elem]| {
            let mut b = vec![false; rn];
            for &x in v {
                b[x] = true;
            }
            b
        };
        let units_r = in_set(&self.ring.unit_list());
        let mut zd_r = in_set(&self.ring.zero_divisors_inclusive());
        for m in &self.modules {
            for r in m.zero_divisors_inclusive() {
                zd_r[r] = true;
            }
        }
        let idem_r: Vec<Elem> =
            (0..rn).filter(|&e| self.ring.mul(e, e) == e).collect();
        let nil_r = in_set(&self.ring.nilpotents());
        let jac_r = in_set(&self.ring.jacobson_radical());

        let mut closed = ClassifiedSets::default();
        for i in 0..self.order {
            let el = self.decode(i);
            let r0 = el.coords[0];
            if units_r[r0] {
                closed.units.push(i);
            }
            if zd_r[r0] && i != 0 {
                closed.zero_divisors.push(i);
            }
            if idem_r.contains(&r0) && el.coords[1..].iter().all(|&c| c == 0) {
                closed.idempotents.push(i);
            }
            if nil_r[r0] {
                closed.nilpotents.push(i);
            }
            if jac_r[r0] {
                closed.jacobson.push(i);
            }
        }

        for (name, a, b) in [
            ("units", &closed.units, &brute.units),
            ("zero divisors", &closed.zero_divisors, &brute.zero_divisors),
            ("idempotents", &closed.idempotents, &brute.idempotents),
            ("nilpotents", &closed.nilpotents, &brute.nilpotents),
            ("Jacobson radical", &closed.jacobson, &brute.jacobson),
        ] {
            if a != b {
                let diff = a
                    .iter()
                    .find(|x| !b.contains(x))
                    .or_else(|| b.iter().find(|x| !a.contains(x)))
                    .copied()
                    .expect("sets differ");
                return Err(Error::Disagreement {
                    check: format!("componentwise {name} formula"),
                    witness: format!(
                        "element {} classified differently",
                        self.fmt_el(&self.decode(diff))
                    ),
                });
            }
        }
        Ok(ExtensionClassification { closed, brute })
    }

    // ------------------------------------------------------------------
    // Gradings
    // ------------------------------------------------------------------

    /// Grade components `S₀ = R, Sₖ = Mₖ` (embedded), the closure check
    /// `S_α·S_β ⊆ S_{α⊕β}` for the chosen grade monoid, and the set of
    /// homogeneous elements (identical for all three monoids).
    pub fn grading(&self, monoid: GradingMonoid) -> Result<GradingReport> {
        self.require_strict("grading")?;
        let k = self.n + 1;
        // Component element lists (as extension elements).
        let mut components: Vec<Vec<ExtElement>> = Vec::with_capacity(k);
        for g in 0..k {
            let size = self.radix[g];
            let mut comp = Vec::with_capacity(size);
            for v in 0..size {
                let mut coords = vec![0; k];
                coords[g] = v;
                comp.push(ExtElement { coords });
            }
            components.push(comp);
        }
        let op = |a: usize, b: usize| -> usize {
            match monoid {
                GradingMonoid::N0Truncated => a + b,
                GradingMonoid::ZMod => (a + b) % k,
                GradingMonoid::Gamma => {
                    if a + b <= self.n {
                        a + b
                    } else {
                        0
                    }
                }
            }
        };
        let mut closure_ok = true;
        let mut witness = None;
        'outer: for ga in 0..k {
            for gb in 0..k {
                let target = op(ga, gb);
                for a in &components[ga] {
                    for b in &components[gb] {
                        let p = self.mul_el(a, b);
                        let ok = if target > self.n {
                            // beyond the top degree the component is 0
                            p == self.zero_el()
                        } else {
                            p.coords.iter().enumerate().all(|(i, &c)| i == target || c == 0)
                        };
                        if !ok {
                            closure_ok = false;
                            witness = Some(format!(
                                "{}·{} = {} is not in the degree-{target} component",
                                self.fmt_el(a),
                                self.fmt_el(b),
                                self.fmt_el(&p)
                            ));
                            break 'outer;
                        }
                    }
                }
            }
        }
        let mut homogeneous: Vec<usize> = components
            .iter()
            .flat_map(|comp| comp.iter().map(|el| self.encode(el)))
            .collect();
        homogeneous.sort_unstable();
        homogeneous.dedup();
        Ok(GradingReport {
            monoid,
            component_sizes: self.radix.clone(),
            closure_ok,
            witness,
            homogeneous,
        })
    }

    // ------------------------------------------------------------------
    // Structural isomorphisms
    // ------------------------------------------------------------------

    /// When every module is the regular module and every map is plain
    /// multiplication, the extension is `R[X]/(X^{n+1})`. Builds the
    /// truncated polynomial ring independently and compares the full
    /// addition and multiplication tables.
    pub fn poly_iso(&self) -> Result<PolyIsoReport> {
        self.require_strict("polynomial shape")?;
        let rn = self.ring.order();
        for (idx, m) in self.modules.iter().enumerate() {
            let regular = m.order() == rn
                && (0..rn).all(|r| (0..rn).all(|x| m.act(r, x) == self.ring.mul(r, x)));
            if !regular {
                return Err(Error::HypothesisNotMet(format!(
                    "polynomial shape needs every module to be the regular module; M_{} is not",
                    idx + 1
                )));
            }
        }
        for (i, j) in index_pairs(self.n) {
            for x in 0..rn {
                for y in 0..rn {
                    if self.family.phi(i, j, x, y) != self.ring.mul(x, y) {
                        return Err(Error::HypothesisNotMet(format!(
                            "polynomial shape needs multiplication maps; φ[{i},{j}] differs at ({x},{y})"
                        )));
                    }
                }
            }
        }
        let target = truncated_poly_ring(&self.ring, self.n)?;
        let flat = self.flattened()?;
        let mut pairs_checked = 0;
        for x in 0..self.order {
            for y in 0..self.order {
                pairs_checked += 1;
                if flat.add(x, y) != target.add(x, y) || flat.mul(x, y) != target.mul(x, y) {
                    return Ok(PolyIsoReport {
                        verified: false,
                        pairs_checked,
                        target_label: target.label().to_string(),
                        witness: Some(format!("tables differ at indices ({x},{y})")),
                    });
                }
            }
        }
        Ok(PolyIsoReport {
            verified: true,
            pairs_checked,
            target_label: target.label().to_string(),
            witness: None,
        })
    }

    /// When the base ring is a direct product `R₁ × … × Rₛ`, the extension
    /// splits as `∏ (Rⱼ ⋉ₙ eⱼM₁ ⋉ … ⋉ eⱼMₙ)` where `eⱼ` is the `j`-th
    /// primitive idempotent. Builds every component extension and verifies
    /// the componentwise map is a ring isomorphism, exhaustively.
    pub fn product_iso(&self) -> Result<ProductIsoReport> {
        self.require_strict("product decomposition")?;
        let factors = match self.ring.kind() {
            RingKind::Product { factors } => factors.clone(),
            _ => {
                return Err(Error::HypothesisNotMet(
                    "product decomposition needs a product base ring".into(),
                ))
            }
        };
        let s = factors.len();
        // Primitive idempotents e_j and component extensions.
        let mut comps: Vec<Arc<NTrivialExtension>> = Vec::with_capacity(s);
        let mut member_pos: Vec<Vec<Vec<usize>>> = Vec::with_capacity(s); // [j][i][parent elem] -> comp index
        for j in 0..s {
            let mut idem = vec![0; s];
            idem[j] = factors[j].one();
            let ej = self.ring.product_encode(&idem);
            let mut comp_modules = Vec::with_capacity(self.n);
            let mut pos_per_degree = Vec::with_capacity(self.n);
            for m in self.modules.iter() {
                let mut in_img = vec![false; m.order()];
                for x in 0..m.order() {
                    in_img[m.act(ej, x)] = true;
                }
                let carrier: Vec<Elem> = (0..m.order()).filter(|&x| in_img[x]).collect();
                let mut pos = vec![usize::MAX; m.order()];
                for (p, &x) in carrier.iter().enumerate() {
                    pos[x] = p;
                }
                let c = carrier.len();
                let mut add = vec![0; c * c];
                for a in 0..c {
                    for b in 0..c {
                        add[a * c + b] = pos[m.add(carrier[a], carrier[b])];
                    }
                }
                let mut action = vec![0; factors[j].order() * c];
                for rj in 0..factors[j].order() {
                    let mut lift = vec![0; s];
                    lift[j] = rj;
                    let r = self.ring.product_encode(&lift);
                    for a in 0..c {
                        action[rj * c + a] = pos[m.act(r, carrier[a])];
                    }
                }
                let names = carrier.iter().map(|&x| m.fmt_el(x)).collect();
                let cm = FiniteModule::from_parts(
                    format!("e{}·{}", j + 1, short_label(m)),
                    factors[j].clone(),
                    c,
                    add,
                    action,
                    names,
                )?;
                comp_modules.push(cm);
                pos_per_degree.push(pos);
            }
            // Component maps: restrict φ to the carved-out carriers.
            let mut tables = std::collections::BTreeMap::new();
            for (i, jj) in index_pairs(self.n) {
                let (ci, cj, ct) = (
                    comp_modules[i - 1].order(),
                    comp_modules[jj - 1].order(),
                    comp_modules[i + jj - 1].order(),
                );
                let mut t = vec![0; ci * cj];
                for a in 0..ci {
                    for b in 0..cj {
                        let xa = carrier_at(&pos_per_degree[i - 1], a);
                        let xb = carrier_at(&pos_per_degree[jj - 1], b);
                        let p = self.family.phi(i, jj, xa, xb);
                        let cp = pos_per_degree[i + jj - 1][p];
                        if cp == usize::MAX || cp >= ct {
                            return Err(Error::Disagreement {
                                check: "component maps close on e·M".into(),
                                witness: format!("φ[{i},{jj}] escapes the component at ({a},{b})"),
                            });
                        }
                        t[a * cj + b] = cp;
                    }
                }
                tables.insert((i, jj), t);
            }
            let fam = ProductMapFamily::explicit(&factors[j], &comp_modules, tables)?;
            let comp =
                NTrivialExtension::build(&factors[j], &comp_modules, fam, Strictness::Strict)?;
            comps.push(comp);
            member_pos.push(pos_per_degree);
        }
        // The componentwise map F(x)_j = (r_j, e_j·m_1, …, e_j·m_n).
        let split = |x: usize| -> Vec<usize> {
            let el = self.decode(x);
            let rparts = self.ring.product_decode(el.coords[0]);
            (0..s)
                .map(|j| {
                    let mut idem = vec![0; s];
                    idem[j] = factors[j].one();
                    let ej = self.ring.product_encode(&idem);
                    let mut coords = vec![rparts[j]];
                    for (i, m) in self.modules.iter().enumerate() {
                        coords.push(member_pos[j][i][m.act(ej, el.coords[i + 1])]);
                    }
                    comps[j].encode(&ExtElement { coords })
                })
                .collect()
        };
        // Bijection.
        let mut seen = std::collections::HashSet::new();
        for x in 0..self.order {
            if !seen.insert(split(x)) {
                return Ok(ProductIsoReport {
                    verified: false,
                    component_labels: comps.iter().map(|c| c.label().to_string()).collect(),
                    pairs_checked: 0,
                    witness: Some(format!("componentwise map not injective at index {x}")),
                });
            }
        }
        let comp_total: usize = comps.iter().map(|c| c.order()).product();
        if comp_total != self.order {
            return Ok(ProductIsoReport {
                verified: false,
                component_labels: comps.iter().map(|c| c.label().to_string()).collect(),
                pairs_checked: 0,
                witness: Some(format!(
                    "component orders multiply to {comp_total}, expected {}",
                    self.order
                )),
            });
        }
        // Ring homomorphism, exhaustively.
        let mut pairs_checked = 0;
        for x in 0..self.order {
            let fx = split(x);
            for y in 0..self.order {
                let fy = split(y);
                pairs_checked += 1;
                let fs = split(self.encode(&self.add_el(&self.decode(x), &self.decode(y))));
                let fp = split(self.encode(&self.mul_el(&self.decode(x), &self.decode(y))));
                for j in 0..s {
                    let a = comps[j].decode(fx[j]);
                    let b = comps[j].decode(fy[j]);
                    if comps[j].encode(&comps[j].add_el(&a, &b)) != fs[j]
                        || comps[j].encode(&comps[j].mul_el(&a, &b)) != fp[j]
                    {
                        return Ok(ProductIsoReport {
                            verified: false,
                            component_labels: comps
                                .iter()
                                .map(|c| c.label().to_string())
                                .collect(),
                            pairs_checked,
                            witness: Some(format!(
                                "component {j} disagrees at indices ({x},{y})"
                            )),
                        });
                    }
                }
            }
        }
        Ok(ProductIsoReport {
            verified: true,
            component_labels: comps.iter().map(|c| c.label().to_string()).collect(),
            pairs_checked,
            witness: None,
        })
    }
}

fn carrier_at(pos: &[usize], comp_index: usize) -> Elem {
    pos.iter()
        .position(|&p| p == comp_index)
        .expect("component index in range")
}

/// Short display name for a module (regular modules read as their ring).
fn short_label(m: &Arc<FiniteModule>) -> String {
    match m.kind() {
        crate::module::ModuleKind::Regular => m.ring().label().to_string(),
        _ => m.label().to_string(),
    }
}

/// The ring `R[X]/(X^{k+1})` over index tuples of coefficients
/// (constant term most significant), built by direct truncated polynomial
/// arithmetic.
pub fn truncated_poly_ring(ring: &Arc<FiniteRing>, k: usize) -> Result<Arc<FiniteRing>> {
    let rn = ring.order();
    let width = k + 1;
    let order = rn.pow(width as u32);
    let decode = |x: usize| {
        let mut rest = x;
        let mut c = vec![0; width];
        for i in (0..width).rev() {
            c[i] = rest % rn;
            rest /= rn;
        }
        c
    };
    let encode = |c: &[Elem]| c.iter().fold(0, |acc, &v| acc * rn + v);
    let mut add = vec![0; order * order];
    let mut mul = vec![0; order * order];
    for x in 0..order {
        let a = decode(x);
        for y in 0..order {
            let b = decode(y);
            let sum: Vec<Elem> = (0..width).map(|i| ring.add(a[i], b[i])).collect();
            let mut prod = vec![0; width];
            for i in 0..width {
                for j in 0..width - i {
                    prod[i + j] = ring.add(prod[i + j], ring.mul(a[i], b[j]));
                }
            }
            add[x * order + y] = encode(&sum);
            mul[x * order + y] = encode(&prod);
        }
    }
    FiniteRing::from_tables_trusted(
        format!("{}[X]/(X^{})", ring.label(), width),
        order,
        add,
        mul,
        "truncated polynomial arithmetic over a validated base ring",
    )
}

/// Upper-triangular matrix with constant diagonals; entry `(r, c)` holds
/// the degree-`(c−r)` coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzMatrix {
    n: usize,
    entries: Vec<Option<Elem>>,
}

impl ToeplitzMatrix {
    pub fn entry(&self, r: usize, c: usize) -> Option<Elem> {
        self.entries[r * (self.n + 1) + c]
    }
}

/// Result of the matrix-representation consistency check.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixCheckReport {
    pub ok: bool,
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub witness: Option<String>,
}

/// Result of verifying one of the canonical maps.
#[derive(Debug, Clone, Serialize)]
pub struct HomReport {
    pub name: String,
    pub ok: bool,
    pub surjective: bool,
    pub injective: bool,
    pub kernel_size: usize,
    pub pairs_checked: usize,
    pub exhaustive: bool,
    pub witness: Option<String>,
}

impl HomReport {
    fn named(name: String) -> HomReport {
        HomReport {
            name,
            ok: true,
            surjective: false,
            injective: false,
            kernel_size: 0,
            pairs_checked: 0,
            exhaustive: false,
            witness: None,
        }
    }
}

/// One side of the element classification (sorted flattened indices).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClassifiedSets {
    pub units: Vec<usize>,
    /// Excludes the zero element itself.
    pub zero_divisors: Vec<usize>,
    pub idempotents: Vec<usize>,
    pub nilpotents: Vec<usize>,
    pub jacobson: Vec<usize>,
}

/// Classification computed both ways; only returned when they agree.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionClassification {
    pub closed: ClassifiedSets,
    pub brute: ClassifiedSets,
}

/// The three grade monoids carried by the same components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GradingMonoid {
    /// Grades 0..n inside ℕ₀; products past degree n must vanish.
    N0Truncated,
    /// Grades mod n+1.
    ZMod,
    /// `a ⊕ b = a+b` if `≤ n`, else 0.
    Gamma,
}

/// Components, closure verdict, and homogeneous element set of a grading.
#[derive(Debug, Clone, Serialize)]
pub struct GradingReport {
    pub monoid: GradingMonoid,
    pub component_sizes: Vec<usize>,
    pub closure_ok: bool,
    pub witness: Option<String>,
    /// Flattened indices of `S₀ ∪ S₁ ∪ … ∪ Sₙ`, sorted.
    pub homogeneous: Vec<usize>,
}

/// Outcome of comparing against the truncated polynomial ring.
#[derive(Debug, Clone, Serialize)]
pub struct PolyIsoReport {
    pub verified: bool,
    pub pairs_checked: usize,
    pub target_label: String,
    pub witness: Option<String>,
}

/// Outcome of splitting over a product base ring.
#[derive(Debug, Clone, Serialize)]
pub struct ProductIsoReport {
    pub verified: bool,
    pub component_labels: Vec<String>,
    pub pairs_checked: usize,
    pub witness: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(m: usize, n: usize) -> Arc<NTrivialExtension> {
        let ring = FiniteRing::zm(m).unwrap();
        let modules: Vec<_> =
            (0..n).map(|_| FiniteModule::regular(&ring).unwrap()).collect();
        let family = ProductMapFamily::ring_multiplication(&ring, &modules).unwrap();
        NTrivialExtension::build(&ring, &modules, family, Strictness::Strict).unwrap()
    }

    #[test]
    fn squares_in_z4_chain2() {
        let ext = chain(4, 2);
        assert_eq!(ext.order(), 64);
        let a = ext.element(&[2, 1, 2]).unwrap();
        let sq = ext.mul_el(&a, &a);
        assert_eq!(ext.fmt_el(&sq), "(0,0,1)");
        let b = ext.element(&[0, 1, 0]).unwrap();
        assert_eq!(ext.fmt_el(&ext.mul_el(&b, &b)), "(0,0,1)");
    }

    #[test]
    fn one_and_encoding_roundtrip() {
        let ext = chain(4, 2);
        let one = ext.one_el();
        assert_eq!(ext.fmt_el(&one), "(1,0,0)");
        for i in 0..ext.order() {
            assert_eq!(ext.encode(&ext.decode(i)), i);
        }
        let x = ext.element(&[3, 2, 1]).unwrap();
        assert_eq!(ext.mul_el(&one, &x), x);
    }

    #[test]
    fn flattened_ring_satisfies_full_axioms() {
        // Rebuild the flattened tables through the fully validating
        // constructor to cross-check the trusted path.
        let ext = chain(2, 1);
        let flat = ext.flattened().unwrap();
        assert_eq!(flat.order(), 4);
        let mut add = vec![0; 16];
        let mut mul = vec![0; 16];
        for x in 0..4 {
            for y in 0..4 {
                add[x * 4 + y] = flat.add(x, y);
                mul[x * 4 + y] = flat.mul(x, y);
            }
        }
        let checked =
            FiniteRing::from_tables("check", 4, add, mul, &Default::default()).unwrap();
        assert_eq!(checked.classify().units, vec![2, 3]);
        assert_eq!(checked.classify().nilpotents, vec![0, 1]);
    }

    #[test]
    fn strict_build_rejects_nonassociative_family() {
        let ring = FiniteRing::zm(5).unwrap();
        let modules: Vec<_> =
            (0..3).map(|_| FiniteModule::regular(&ring).unwrap()).collect();
        let family = ProductMapFamily::structure_constants(
            &ring,
            &modules,
            &[(1, 1, 1), (1, 2, 1), (2, 1, 2)],
        )
        .unwrap();
        let err = NTrivialExtension::build(&ring, &modules, family, Strictness::Strict)
            .unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }));

        // Exploratory mode accepts it; ring-level operations refuse.
        let family = ProductMapFamily::structure_constants(
            &ring,
            &modules,
            &[(1, 1, 1), (1, 2, 1), (2, 1, 2)],
        )
        .unwrap();
        let ext =
            NTrivialExtension::build(&ring, &modules, family, Strictness::Exploratory).unwrap();
        assert!(ext.classify().is_err());
        assert!(ext.flattened().is_err());
        // Multiplication itself still works.
        let x = ext.element(&[0, 1, 0, 0]).unwrap();
        let y = ext.element(&[0, 0, 1, 0]).unwrap();
        // slot 3 gets φ_{1,2}(1,1) = 1.
        assert_eq!(ext.mul_el(&x, &y).coords(), &[0, 0, 0, 1]);
    }

    #[test]
    fn matrix_view_and_product_agree() {
        let ext = chain(4, 2);
        let a = ext.element(&[2, 1, 2]).unwrap();
        let m = ext.matrix_view(&a);
        assert_eq!(m.entry(0, 0), Some(2));
        assert_eq!(m.entry(0, 1), Some(1));
        assert_eq!(m.entry(1, 2), Some(1));
        assert_eq!(m.entry(0, 2), Some(2));
        assert_eq!(m.entry(1, 0), None);
        let report = ext.matrix_check(1 << 20, 7);
        assert!(report.ok);
        assert!(report.exhaustive);
        assert_eq!(report.pairs_checked, 64 * 64);
    }

    #[test]
    fn truncation_is_surjective_hom_with_right_kernel() {
        let ext = chain(4, 2);
        let (target, report) = ext.truncated(1).unwrap();
        assert_eq!(target.order(), 16);
        assert!(report.ok, "{:?}", report.witness);
        assert!(report.surjective);
        assert_eq!(report.kernel_size, 4);
    }

    #[test]
    fn inclusion_is_injective_hom() {
        let ext = chain(6, 1);
        let report = ext.iota_check().unwrap();
        assert!(report.ok);
        assert!(report.injective);
    }

    #[test]
    fn tilde_companion_for_n1() {
        let ext = chain(4, 1);
        let x = ext.element(&[1, 3]).unwrap();
        let t = ext.tilde(&x).unwrap();
        assert_eq!(t.coords(), &[1, 1]); // (m₀, −m₁)
        let p = ext.mul_el(&x, &t);
        assert_eq!(p.coords(), &[1, 0]); // (m₀², 0)
        let (checked, failure) = ext.tilde_contract_check().unwrap();
        assert_eq!(checked, 16);
        assert!(failure.is_none());
    }

    #[test]
    fn tilde_contract_holds_on_z4_chain2() {
        let ext = chain(4, 2);
        let (checked, failure) = ext.tilde_contract_check().unwrap();
        assert_eq!(checked, 64);
        assert!(failure.is_none(), "{failure:?}");
    }

    #[test]
    fn classification_closed_equals_brute_on_z6() {
        let ext = chain(6, 1);
        let cls = ext.classify().unwrap();
        assert_eq!(cls.closed, cls.brute);
        // U(Z6) = {1,5} lifts to 12 units.
        assert_eq!(cls.brute.units.len(), 12);
        // Idempotents stay on the floor: Id(Z6)⋉0 has 4 elements.
        assert_eq!(cls.brute.idempotents.len(), 4);
    }

    #[test]
    fn grading_components_and_homogeneous_elements() {
        let ext = chain(4, 2);
        for monoid in [GradingMonoid::N0Truncated, GradingMonoid::ZMod, GradingMonoid::Gamma] {
            let g = ext.grading(monoid).unwrap();
            assert!(g.closure_ok, "{:?}", g.witness);
            assert_eq!(g.component_sizes, vec![4, 4, 4]);
            // 0 plus 3 nonzero elements in each of the three components.
            assert_eq!(g.homogeneous.len(), 10);
        }
    }

    #[test]
    fn z3_chain2_is_truncated_polynomial_ring() {
        let ext = chain(3, 2);
        let report = ext.poly_iso().unwrap();
        assert!(report.verified);
        assert_eq!(report.pairs_checked, 27 * 27);
        assert_eq!(report.target_label, "Z3[X]/(X^3)");
    }

    #[test]
    fn product_ring_extension_splits() {
        let z2 = FiniteRing::zm(2).unwrap();
        let z3 = FiniteRing::zm(3).unwrap();
        let r = FiniteRing::product(&[z2, z3]).unwrap();
        let m = FiniteModule::regular(&r).unwrap();
        let fam = ProductMapFamily::ring_multiplication(&r, &[m.clone()]).unwrap();
        let ext = NTrivialExtension::build(&r, &[m], fam, Strictness::Strict).unwrap();
        let report = ext.product_iso().unwrap();
        assert!(report.verified, "{:?}", report.witness);
        assert_eq!(report.component_labels.len(), 2);
        assert_eq!(report.pairs_checked, 36 * 36);
    }

    #[test]
    fn zero_module_degrees_are_flagged() {
        let ring = FiniteRing::zm(4).unwrap();
        let m1 = FiniteModule::regular(&ring).unwrap();
        let m2 = FiniteModule::explicit(&ring, &[1], vec![0, 0, 0, 0], "0").unwrap();
        let fam = ProductMapFamily::zero(&ring, &[m1.clone(), m2.clone()]).unwrap();
        let ext =
            NTrivialExtension::build(&ring, &[m1, m2], fam, Strictness::Strict).unwrap();
        assert_eq!(ext.zero_module_degrees(), &[2]);
        assert_eq!(ext.order(), 16);
    }
}
