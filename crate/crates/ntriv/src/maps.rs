//! Degree-graded families of product maps `φ_{i,j}: M_i × M_j → M_{i+j}`
//! and the exhaustive law checks (bilinearity, symmetry, associativity)
//! that decide whether the induced convolution product is a ring.
//!
//! A family covers every index pair with `i, j ≥ 1` and `i + j ≤ n`; maps
//! are stored fully tabulated regardless of how they were produced.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::module::FiniteModule;
use crate::ring::{Elem, FiniteRing};
use crate::{Error, Result};

/// Where a family's tables came from. Kept for reporting; the tables are
/// the authority.
#[derive(Debug, Clone, Serialize)]
pub enum MapOrigin {
    /// Tables supplied directly.
    Explicit,
    /// `φ_{i,j}(x, y) = x·c_{i,j}·y` on copies of the regular module.
    StructureConstants { constants: Vec<(usize, usize, Elem)> },
    /// Multiplication inside an ambient ring the modules embed into.
    Algebra { ambient: String },
    /// Every map is zero.
    Zero,
}

/// One counterexample to a failed law.
#[derive(Debug, Clone, Serialize)]
pub struct MapWitness {
    pub law: String,
    /// Degree indices involved: `[i, j]` or `[i, j, k]`.
    pub indices: Vec<usize>,
    /// Display forms of the module elements involved.
    pub elements: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of the exhaustive law checks on a family.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub bilinear_ok: bool,
    pub symmetric_ok: bool,
    pub associative_ok: bool,
    /// First counterexample found for each failed flag.
    pub witnesses: Vec<MapWitness>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.bilinear_ok && self.symmetric_ok && self.associative_ok
    }
}

/// A complete family of product maps for extensions of length `n`.
pub struct ProductMapFamily {
    n: usize,
    ring: Arc<FiniteRing>,
    modules: Vec<Arc<FiniteModule>>,
    /// `tables[(i,j)][x·|M_j| + y]` = index of `φ_{i,j}(x,y)` in `M_{i+j}`.
    tables: BTreeMap<(usize, usize), Vec<Elem>>,
    origin: MapOrigin,
    validation: ValidationReport,
}

impl std::fmt::Debug for ProductMapFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProductMapFamily")
            .field("n", &self.n)
            .field("origin", &self.origin)
            .finish()
    }
}

impl ProductMapFamily {
    // ------------------------------------------------------------------
    // Constructors
    // ------------------------------------------------------------------

    /// Family from fully tabulated maps, one per pair `i,j ≥ 1, i+j ≤ n`.
    pub fn explicit(
        ring: &Arc<FiniteRing>,
        modules: &[Arc<FiniteModule>],
        tables: BTreeMap<(usize, usize), Vec<Elem>>,
    ) -> Result<ProductMapFamily> {
        Self::assemble(ring, modules, tables, MapOrigin::Explicit)
    }

    /// Family where every product of positive degrees is zero.
    pub fn zero(ring: &Arc<FiniteRing>, modules: &[Arc<FiniteModule>]) -> Result<ProductMapFamily> {
        let n = modules.len();
        let mut tables = BTreeMap::new();
        for (i, j) in index_pairs(n) {
            tables.insert((i, j), vec![0; modules[i - 1].order() * modules[j - 1].order()]);
        }
        Self::assemble(ring, modules, tables, MapOrigin::Zero)
    }

    /// `φ_{i,j}(x, y) = x·c_{i,j}·y` with ring multiplication; every module
    /// must be a copy of the regular module (carrier = ring, action =
    /// multiplication). Constants are given as `(i, j, c)` triples; missing
    /// pairs default to `c = 1`.
    pub fn structure_constants(
        ring: &Arc<FiniteRing>,
        modules: &[Arc<FiniteModule>],
        constants: &[(usize, usize, Elem)],
    ) -> Result<ProductMapFamily> {
        let n = modules.len();
        for (k, m) in modules.iter().enumerate() {
            if !is_regular(ring, m) {
                return Err(Error::InvalidConstruction(format!(
                    "structure-constant maps need regular modules; M_{} is not",
                    k + 1
                )));
            }
        }
        let mut cmap: BTreeMap<(usize, usize), Elem> = BTreeMap::new();
        for &(i, j, c) in constants {
            if i == 0 || j == 0 || i + j > n {
                return Err(Error::InvalidConstruction(format!(
                    "structure constant c[{i},{j}] out of range for n = {n}"
                )));
            }
            if c >= ring.order() {
                return Err(Error::InvalidConstruction(format!(
                    "structure constant c[{i},{j}] = {c} is not a ring element"
                )));
            }
            cmap.insert((i, j), c);
        }
        let mut tables = BTreeMap::new();
        let mut kept = Vec::new();
        for (i, j) in index_pairs(n) {
            let c = *cmap.get(&(i, j)).unwrap_or(&ring.one());
            kept.push((i, j, c));
            let (oi, oj) = (modules[i - 1].order(), modules[j - 1].order());
            let mut t = vec![0; oi * oj];
            for x in 0..oi {
                for y in 0..oj {
                    t[x * oj + y] = ring.mul(ring.mul(x, c), y);
                }
            }
            tables.insert((i, j), t);
        }
        Self::assemble(ring, modules, tables, MapOrigin::StructureConstants { constants: kept })
    }

    /// Maps induced by multiplication in an ambient ring `T`:
    /// `φ_{i,j}(x, y) = ε_{i+j}⁻¹(ε_i(x)·ε_j(y))`.
    ///
    /// `ring_embed` must be an injective unital ring homomorphism `R → T`
    /// and each `module_embeds[i]` an injective additive map `M_{i+1} → T`
    /// compatible with the action; the products must land in the image of
    /// the target embedding. All of this is verified exhaustively.
    pub fn algebra(
        ring: &Arc<FiniteRing>,
        modules: &[Arc<FiniteModule>],
        ambient: &Arc<FiniteRing>,
        ring_embed: &[Elem],
        module_embeds: &[Vec<Elem>],
    ) -> Result<ProductMapFamily> {
        let n = modules.len();
        check_ring_embedding(ring, ambient, ring_embed)?;
        if module_embeds.len() != n {
            return Err(Error::InvalidConstruction(format!(
                "algebra maps: {} module embeddings supplied, expected {n}",
                module_embeds.len()
            )));
        }
        for (k, (m, emb)) in modules.iter().zip(module_embeds).enumerate() {
            check_module_embedding(ring, m, ambient, ring_embed, emb, k + 1)?;
        }
        // Inverse lookups for each embedding image.
        let inverses: Vec<BTreeMap<Elem, Elem>> = module_embeds
            .iter()
            .map(|emb| emb.iter().enumerate().map(|(x, &t)| (t, x)).collect())
            .collect();
        let mut tables = BTreeMap::new();
        for (i, j) in index_pairs(n) {
            let (oi, oj) = (modules[i - 1].order(), modules[j - 1].order());
            let mut t = vec![0; oi * oj];
            for x in 0..oi {
                for y in 0..oj {
                    let prod = ambient.mul(module_embeds[i - 1][x], module_embeds[j - 1][y]);
                    let back = inverses[i + j - 1].get(&prod).ok_or_else(|| {
                        Error::InvalidConstruction(format!(
                            "algebra maps: ε_{i}(M_{i})·ε_{j}(M_{j}) leaves the image of \
                             ε_{k} at x={x}, y={y} (product = {} in {})",
                            ambient.fmt_el(prod),
                            ambient.label(),
                            k = i + j,
                        ))
                    })?;
                    t[x * oj + y] = *back;
                }
            }
            tables.insert((i, j), t);
        }
        Self::assemble(
            ring,
            modules,
            tables,
            MapOrigin::Algebra { ambient: ambient.label().to_string() },
        )
    }

    /// Convenience: every module is the regular module and every map is
    /// plain ring multiplication (the ambient ring is `R` itself).
    pub fn ring_multiplication(
        ring: &Arc<FiniteRing>,
        modules: &[Arc<FiniteModule>],
    ) -> Result<ProductMapFamily> {
        let n = modules.len();
        for (k, m) in modules.iter().enumerate() {
            if !is_regular(ring, m) {
                return Err(Error::InvalidConstruction(format!(
                    "ring-multiplication maps need regular modules; M_{} is not",
                    k + 1
                )));
            }
        }
        let mut tables = BTreeMap::new();
        for (i, j) in index_pairs(n) {
            let (oi, oj) = (modules[i - 1].order(), modules[j - 1].order());
            let mut t = vec![0; oi * oj];
            for x in 0..oi {
                for y in 0..oj {
                    t[x * oj + y] = ring.mul(x, y);
                }
            }
            tables.insert((i, j), t);
        }
        Self::assemble(
            ring,
            modules,
            tables,
            MapOrigin::Algebra { ambient: ring.label().to_string() },
        )
    }

    /// The same family restricted to length `m ≤ n` (pairs with `i+j ≤ m`).
    pub fn restricted(&self, m: usize) -> Result<ProductMapFamily> {
        if m > self.n {
            return Err(Error::InvalidConstruction(format!(
                "cannot restrict a length-{} family to length {m}",
                self.n
            )));
        }
        let tables: BTreeMap<(usize, usize), Vec<Elem>> = self
            .tables
            .iter()
            .filter(|((i, j), _)| i + j <= m)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Self::assemble(&self.ring, &self.modules[..m], tables, self.origin.clone())
    }

    fn assemble(
        ring: &Arc<FiniteRing>,
        modules: &[Arc<FiniteModule>],
        tables: BTreeMap<(usize, usize), Vec<Elem>>,
        origin: MapOrigin,
    ) -> Result<ProductMapFamily> {
        let n = modules.len();
        for m in modules {
            if !Arc::ptr_eq(m.ring(), ring) {
                return Err(Error::AmbientMismatch(
                    "product maps: module over a different ring".into(),
                ));
            }
        }
        // Exactly the required pairs, with well-formed tables.
        let required: Vec<(usize, usize)> = index_pairs(n);
        for &(i, j) in &required {
            let t = tables.get(&(i, j)).ok_or_else(|| {
                Error::InvalidConstruction(format!("product maps: missing table for φ[{i},{j}]"))
            })?;
            let (oi, oj, ot) = (
                modules[i - 1].order(),
                modules[j - 1].order(),
                modules[i + j - 1].order(),
            );
            if t.len() != oi * oj {
                return Err(Error::InvalidConstruction(format!(
                    "product maps: φ[{i},{j}] has {} entries, expected {}",
                    t.len(),
                    oi * oj
                )));
            }
            if t.iter().any(|&v| v >= ot) {
                return Err(Error::InvalidConstruction(format!(
                    "product maps: φ[{i},{j}] entry out of range"
                )));
            }
        }
        if tables.len() != required.len() {
            return Err(Error::InvalidConstruction(
                "product maps: table supplied for an out-of-range pair".into(),
            ));
        }
        let mut fam = ProductMapFamily {
            n,
            ring: ring.clone(),
            modules: modules.to_vec(),
            tables,
            origin,
            validation: ValidationReport {
                bilinear_ok: true,
                symmetric_ok: true,
                associative_ok: true,
                witnesses: Vec::new(),
            },
        };
        fam.validation = fam.validate();
        Ok(fam)
    }

    // ------------------------------------------------------------------
    // Accessors
    // ------------------------------------------------------------------

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn modules(&self) -> &[Arc<FiniteModule>] {
        &self.modules
    }

    pub fn origin(&self) -> &MapOrigin {
        &self.origin
    }

    pub fn validation(&self) -> &ValidationReport {
        &self.validation
    }

    /// `φ_{i,j}(x, y)` for `i, j ≥ 1` with `i + j ≤ n`.
    #[inline]
    pub fn phi(&self, i: usize, j: usize, x: Elem, y: Elem) -> Elem {
        self.tables[&(i, j)][x * self.modules[j - 1].order() + y]
    }

    // ------------------------------------------------------------------
    // Law checks
    // ------------------------------------------------------------------

    fn validate(&self) -> ValidationReport {
        let mut witnesses = Vec::new();
        let bilinear_ok = match self.check_bilinear() {
            Some(w) => {
                witnesses.push(w);
                false
            }
            None => true,
        };
        let symmetric_ok = match self.check_symmetric() {
            Some(w) => {
                witnesses.push(w);
                false
            }
            None => true,
        };
        let associative_ok = match self.check_associative() {
            Some(w) => {
                witnesses.push(w);
                false
            }
            None => true,
        };
        ValidationReport { bilinear_ok, symmetric_ok, associative_ok, witnesses }
    }

    /// Additivity in each slot and compatibility with the scalar action.
    fn check_bilinear(&self) -> Option<MapWitness> {
        for (i, j) in index_pairs(self.n) {
            let (mi, mj, mt) =
                (&self.modules[i - 1], &self.modules[j - 1], &self.modules[i + j - 1]);
            for x in 0..mi.order() {
                for y in 0..mj.order() {
                    for x2 in 0..mi.order() {
                        let lhs = self.phi(i, j, mi.add(x, x2), y);
                        let rhs = mt.add(self.phi(i, j, x, y), self.phi(i, j, x2, y));
                        if lhs != rhs {
                            return Some(MapWitness {
                                law: "additivity in the left slot".into(),
                                indices: vec![i, j],
                                elements: vec![mi.fmt_el(x), mi.fmt_el(x2), mj.fmt_el(y)],
                                lhs: mt.fmt_el(lhs),
                                rhs: mt.fmt_el(rhs),
                            });
                        }
                    }
                    for y2 in 0..mj.order() {
                        let lhs = self.phi(i, j, x, mj.add(y, y2));
                        let rhs = mt.add(self.phi(i, j, x, y), self.phi(i, j, x, y2));
                        if lhs != rhs {
                            return Some(MapWitness {
                                law: "additivity in the right slot".into(),
                                indices: vec![i, j],
                                elements: vec![mi.fmt_el(x), mj.fmt_el(y), mj.fmt_el(y2)],
                                lhs: mt.fmt_el(lhs),
                                rhs: mt.fmt_el(rhs),
                            });
                        }
                    }
                    for r in 0..self.ring.order() {
                        let base = self.phi(i, j, x, y);
                        let left = self.phi(i, j, mi.act(r, x), y);
                        let right = self.phi(i, j, x, mj.act(r, y));
                        let scaled = mt.act(r, base);
                        if left != scaled || right != scaled {
                            return Some(MapWitness {
                                law: "compatibility with the scalar action".into(),
                                indices: vec![i, j],
                                elements: vec![
                                    format!("r={}", self.ring.fmt_el(r)),
                                    mi.fmt_el(x),
                                    mj.fmt_el(y),
                                ],
                                lhs: mt.fmt_el(if left != scaled { left } else { right }),
                                rhs: mt.fmt_el(scaled),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// `φ_{i,j}(x, y) = φ_{j,i}(y, x)` for every pair.
    fn check_symmetric(&self) -> Option<MapWitness> {
        for (i, j) in index_pairs(self.n) {
            if i > j {
                continue;
            }
            let (mi, mj, mt) =
                (&self.modules[i - 1], &self.modules[j - 1], &self.modules[i + j - 1]);
            for x in 0..mi.order() {
                for y in 0..mj.order() {
                    let lhs = self.phi(i, j, x, y);
                    let rhs = self.phi(j, i, y, x);
                    if lhs != rhs {
                        return Some(MapWitness {
                            law: "product map symmetry".into(),
                            indices: vec![i, j],
                            elements: vec![mi.fmt_el(x), mj.fmt_el(y)],
                            lhs: mt.fmt_el(lhs),
                            rhs: mt.fmt_el(rhs),
                        });
                    }
                }
            }
        }
        None
    }

    /// `φ_{i+j,k}(φ_{i,j}(x,y), z) = φ_{i,j+k}(x, φ_{j,k}(y,z))` for every
    /// triple with `i+j+k ≤ n`. Vacuous when `n ≤ 2`.
    fn check_associative(&self) -> Option<MapWitness> {
        for i in 1..=self.n {
            for j in 1..=self.n {
                for k in 1..=self.n {
                    if i + j + k > self.n {
                        continue;
                    }
                    let (mi, mj, mk) =
                        (&self.modules[i - 1], &self.modules[j - 1], &self.modules[k - 1]);
                    let mt = &self.modules[i + j + k - 1];
                    for x in 0..mi.order() {
                        for y in 0..mj.order() {
                            for z in 0..mk.order() {
                                let lhs = self.phi(i + j, k, self.phi(i, j, x, y), z);
                                let rhs = self.phi(i, j + k, x, self.phi(j, k, y, z));
                                if lhs != rhs {
                                    return Some(MapWitness {
                                        law: "product map associativity".into(),
                                        indices: vec![i, j, k],
                                        elements: vec![
                                            mi.fmt_el(x),
                                            mj.fmt_el(y),
                                            mk.fmt_el(z),
                                        ],
                                        lhs: mt.fmt_el(lhs),
                                        rhs: mt.fmt_el(rhs),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

/// All index pairs a length-`n` family must cover, in lexicographic order.
pub(crate) fn index_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..n {
            if i + j <= n {
                out.push((i, j));
            }
        }
    }
    out
}

fn is_regular(ring: &Arc<FiniteRing>, m: &Arc<FiniteModule>) -> bool {
    m.order() == ring.order()
        && (0..ring.order())
            .all(|r| (0..m.order()).all(|x| m.act(r, x) == ring.mul(r, x)))
}

fn check_ring_embedding(
    ring: &Arc<FiniteRing>,
    ambient: &Arc<FiniteRing>,
    embed: &[Elem],
) -> Result<()> {
    if embed.len() != ring.order() {
        return Err(Error::InvalidConstruction(format!(
            "algebra maps: ring embedding has {} entries, expected {}",
            embed.len(),
            ring.order()
        )));
    }
    if embed.iter().any(|&t| t >= ambient.order()) {
        return Err(Error::InvalidConstruction(
            "algebra maps: ring embedding entry out of range".into(),
        ));
    }
    let mut seen = vec![false; ambient.order()];
    for &t in embed {
        if seen[t] {
            return Err(Error::InvalidConstruction(
                "algebra maps: ring embedding is not injective".into(),
            ));
        }
        seen[t] = true;
    }
    if embed[ring.one()] != ambient.one() {
        return Err(Error::InvalidConstruction(
            "algebra maps: ring embedding must send 1 to 1".into(),
        ));
    }
    for x in 0..ring.order() {
        for y in 0..ring.order() {
            if embed[ring.add(x, y)] != ambient.add(embed[x], embed[y])
                || embed[ring.mul(x, y)] != ambient.mul(embed[x], embed[y])
            {
                return Err(Error::InvalidConstruction(format!(
                    "algebra maps: ring embedding breaks at ({x},{y})"
                )));
            }
        }
    }
    Ok(())
}

fn check_module_embedding(
    ring: &Arc<FiniteRing>,
    module: &Arc<FiniteModule>,
    ambient: &Arc<FiniteRing>,
    ring_embed: &[Elem],
    embed: &[Elem],
    degree: usize,
) -> Result<()> {
    if embed.len() != module.order() {
        return Err(Error::InvalidConstruction(format!(
            "algebra maps: embedding of M_{degree} has {} entries, expected {}",
            embed.len(),
            module.order()
        )));
    }
    if embed.iter().any(|&t| t >= ambient.order()) {
        return Err(Error::InvalidConstruction(format!(
            "algebra maps: embedding of M_{degree} has an entry out of range"
        )));
    }
    let mut seen = vec![false; ambient.order()];
    for &t in embed {
        if seen[t] {
            return Err(Error::InvalidConstruction(format!(
                "algebra maps: embedding of M_{degree} is not injective"
            )));
        }
        seen[t] = true;
    }
    for x in 0..module.order() {
        for y in 0..module.order() {
            if embed[module.add(x, y)] != ambient.add(embed[x], embed[y]) {
                return Err(Error::InvalidConstruction(format!(
                    "algebra maps: embedding of M_{degree} is not additive at ({x},{y})"
                )));
            }
        }
        for r in 0..ring.order() {
            if embed[module.act(r, x)] != ambient.mul(ring_embed[r], embed[x]) {
                return Err(Error::InvalidConstruction(format!(
                    "algebra maps: embedding of M_{degree} breaks the action at (r={r},{x})"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::subring_module;

    fn regulars(ring: &Arc<FiniteRing>, n: usize) -> Vec<Arc<FiniteModule>> {
        (0..n).map(|_| FiniteModule::regular(ring).unwrap()).collect()
    }

    #[test]
    fn ring_multiplication_family_is_lawful() {
        let r = FiniteRing::zm(4).unwrap();
        let ms = regulars(&r, 2);
        let fam = ProductMapFamily::ring_multiplication(&r, &ms).unwrap();
        assert!(fam.validation().all_ok());
        assert_eq!(fam.phi(1, 1, 2, 3), 2);
        assert_eq!(fam.phi(1, 1, 3, 3), 1);
    }

    #[test]
    fn zero_family_is_lawful() {
        let r = FiniteRing::zm(6).unwrap();
        let ms = regulars(&r, 3);
        let fam = ProductMapFamily::zero(&r, &ms).unwrap();
        assert!(fam.validation().all_ok());
        assert_eq!(fam.phi(1, 2, 5, 5), 0);
    }

    #[test]
    fn asymmetric_constants_over_z5() {
        // n = 3 over Z5 with c[1,1] = 1, c[1,2] = 1, c[2,1] = 2: the single
        // associativity triple (1,1,1) compares c[1,1]·c[2,1] = 2 against
        // c[1,2]·c[1,1] = 1, so both symmetry and associativity fail.
        let r = FiniteRing::zm(5).unwrap();
        let ms = regulars(&r, 3);
        let fam =
            ProductMapFamily::structure_constants(&r, &ms, &[(1, 1, 1), (1, 2, 1), (2, 1, 2)])
                .unwrap();
        let v = fam.validation();
        assert!(v.bilinear_ok);
        assert!(!v.symmetric_ok);
        assert!(!v.associative_ok);
        let sym = v.witnesses.iter().find(|w| w.law.contains("symmetry")).unwrap();
        assert_eq!(sym.indices, vec![1, 2]);
        assert_eq!((sym.lhs.as_str(), sym.rhs.as_str()), ("1", "2"));
        let assoc = v.witnesses.iter().find(|w| w.law.contains("associativity")).unwrap();
        assert_eq!(assoc.indices, vec![1, 1, 1]);
        assert_eq!(assoc.elements, vec!["1", "1", "1"]);
        assert_eq!((assoc.lhs.as_str(), assoc.rhs.as_str()), ("2", "1"));
    }

    #[test]
    fn symmetric_but_nonassociative_over_z11() {
        // n = 4 over Z11 with c[1,1]=1, c[1,2]=c[2,1]=2, c[2,2]=3,
        // c[1,3]=c[3,1]=4: symmetric, but the triple (1,1,2) compares
        // c[1,1]·c[2,2] = 3 against c[1,2]·c[1,3] = 8.
        let r = FiniteRing::zm(11).unwrap();
        let ms = regulars(&r, 4);
        let fam = ProductMapFamily::structure_constants(
            &r,
            &ms,
            &[(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 3), (1, 3, 4), (3, 1, 4)],
        )
        .unwrap();
        let v = fam.validation();
        assert!(v.bilinear_ok);
        assert!(v.symmetric_ok);
        assert!(!v.associative_ok);
        let w = v.witnesses.iter().find(|w| w.law.contains("associativity")).unwrap();
        assert_eq!(w.indices, vec![1, 1, 2]);
        assert_eq!(w.elements, vec!["1", "1", "1"]);
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("3", "8"));
    }

    #[test]
    fn algebra_origin_field_tower() {
        // F2 ⊂ F4 with both modules the field F4: maps are field products.
        let f2 = FiniteRing::gf(2).unwrap();
        let f4 = FiniteRing::gf(4).unwrap();
        let m1 = subring_module(&f2, &f4, "F4").unwrap();
        let m2 = subring_module(&f2, &f4, "F4").unwrap();
        let fam = ProductMapFamily::algebra(
            &f2,
            &[m1, m2],
            &f4,
            &[0, 1],
            &[vec![0, 1, 2, 3], vec![0, 1, 2, 3]],
        )
        .unwrap();
        assert!(fam.validation().all_ok());
        assert_eq!(fam.phi(1, 1, 2, 2), 3); // x·x = x+1 in F4
        assert_eq!(fam.phi(1, 1, 2, 3), 1); // x·(x+1) = 1
    }

    #[test]
    fn broken_table_fails_bilinearity() {
        let r = FiniteRing::zm(3).unwrap();
        let ms = regulars(&r, 2);
        let mut tables = BTreeMap::new();
        let mut t = vec![0; 9];
        for x in 0..3 {
            for y in 0..3 {
                t[x * 3 + y] = r.mul(x, y);
            }
        }
        t[1 * 3 + 1] = 2; // φ(1,1) = 2 breaks additivity
        tables.insert((1, 1), t);
        let fam = ProductMapFamily::explicit(&r, &ms, tables).unwrap();
        assert!(!fam.validation().bilinear_ok);
        assert!(!fam.validation().witnesses.is_empty());
    }

    #[test]
    fn missing_table_rejected() {
        let r = FiniteRing::zm(3).unwrap();
        let ms = regulars(&r, 2);
        assert!(ProductMapFamily::explicit(&r, &ms, BTreeMap::new()).is_err());
    }

    #[test]
    fn restriction_drops_high_pairs() {
        let r = FiniteRing::zm(4).unwrap();
        let ms = regulars(&r, 3);
        let fam = ProductMapFamily::ring_multiplication(&r, &ms).unwrap();
        assert_eq!(index_pairs(3), vec![(1, 1), (1, 2), (2, 1)]);
        let small = fam.restricted(2).unwrap();
        assert_eq!(small.n(), 2);
        assert_eq!(small.phi(1, 1, 3, 3), 1);
    }
}
