//! Line-oriented instance files: `[section]` headers, `key = value` pairs,
//! `#` comments. One `[ring]` section, then one `[module]` section per
//! degree in order, one `[maps]` section, and an optional `[options]`
//! section. Parsing is total: every rejection carries the line number.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::extension::{NTrivialExtension, Strictness};
use crate::maps::ProductMapFamily;
use crate::module::{subring_module, FiniteModule};
use crate::ring::{Elem, FiniteRing};
use crate::{Error, Result};

/// Base-ring declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    /// `kind = zm`, `m = <modulus>`.
    Zm { m: usize },
    /// `kind = gf`, `q = <prime power>`.
    Gf { q: usize },
    /// `kind = product`, `factors = m1,m2,…` (each a `zm` factor).
    Product { factors: Vec<usize> },
}

/// Declaration of one module, in degree order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    /// `kind = regular` — the base ring acting on itself.
    Regular,
    /// `kind = subring`, `q = <order>` — the field `F_q` as a module over
    /// a base field whose order divides into it.
    Subring { q: usize },
}

/// Product-map declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapsSpec {
    /// `kind = ring_multiplication` (regular modules only).
    RingMultiplication,
    /// `kind = zero`.
    Zero,
    /// `kind = structure_constants` with keys `rij = c` for
    /// `φ(xᵢ, xⱼ) = c·x·y` on regular modules.
    StructureConstants { constants: Vec<(usize, usize, Elem)> },
    /// `kind = algebra`, `ambient = gf <q>`, `ring_embed = …`,
    /// `module_embed_<i> = …`: products inherited from an ambient field.
    Algebra { ambient_q: usize, ring_embed: Vec<Elem>, module_embeds: Vec<Vec<Elem>> },
}

/// The `[options]` section with defaults filled in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    /// `strictness = strict | exploratory` (default strict).
    pub strictness: Strictness,
    /// `max_order = <n>`: cap for ideal/submodule enumeration (default 4096).
    pub max_order: usize,
    /// `max_len = <n>`: factorization length bound (default 6).
    pub max_len: usize,
    /// `set.<name> = e1,e2,…`: named multiplicative-set seeds.
    pub mult_sets: BTreeMap<String, Vec<Elem>>,
    /// `class.<name> = regular | pi0_zero | pi_prefix_zero <j> | all`.
    pub ideal_classes: BTreeMap<String, String>,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            strictness: Strictness::Strict,
            max_order: 4096,
            max_len: 6,
            mult_sets: BTreeMap::new(),
            ideal_classes: BTreeMap::new(),
        }
    }
}

/// A fully parsed instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecDocument {
    pub ring: RingSpec,
    pub modules: Vec<ModuleSpec>,
    pub maps: MapsSpec,
    pub options: Options,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_usize(line: usize, key: &str, raw: &str) -> Result<usize> {
    raw.trim()
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("{key}: expected a nonnegative integer, got `{raw}`")))
}

fn parse_list(line: usize, key: &str, raw: &str) -> Result<Vec<usize>> {
    raw.split(',')
        .map(|p| parse_usize(line, key, p))
        .collect()
}

/// One raw section: header name, header line, and `key = value` entries
/// with their line numbers.
struct RawSection {
    name: String,
    line: usize,
    entries: Vec<(usize, String, String)>,
}

impl RawSection {
    fn get(&self, key: &str) -> Option<(usize, &str)> {
        self.entries
            .iter()
            .find(|(_, k, _)| k == key)
            .map(|(l, _, v)| (*l, v.as_str()))
    }

    fn require(&self, key: &str) -> Result<(usize, &str)> {
        self.get(key).ok_or_else(|| {
            parse_err(self.line, format!("section [{}] is missing `{key}`", self.name))
        })
    }
}

fn split_sections(text: &str) -> Result<Vec<RawSection>> {
    let mut sections: Vec<RawSection> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line_no, "unterminated section header"))?
                .trim()
                .to_string();
            if name.is_empty() {
                return Err(parse_err(line_no, "empty section name"));
            }
            sections.push(RawSection { name, line: line_no, entries: Vec::new() });
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("expected `key = value`, got `{line}`")))?;
        let section = sections
            .last_mut()
            .ok_or_else(|| parse_err(line_no, "entry before any [section] header"))?;
        section
            .entries
            .push((line_no, key.trim().to_string(), value.trim().to_string()));
    }
    Ok(sections)
}

fn parse_ring(sec: &RawSection) -> Result<RingSpec> {
    let (kline, kind) = sec.require("kind")?;
    match kind {
        "zm" => {
            let (l, v) = sec.require("m")?;
            Ok(RingSpec::Zm { m: parse_usize(l, "m", v)? })
        }
        "gf" => {
            let (l, v) = sec.require("q")?;
            Ok(RingSpec::Gf { q: parse_usize(l, "q", v)? })
        }
        "product" => {
            let (l, v) = sec.require("factors")?;
            let factors = parse_list(l, "factors", v)?;
            if factors.len() < 2 {
                return Err(parse_err(l, "product ring needs at least two factors"));
            }
            Ok(RingSpec::Product { factors })
        }
        other => Err(parse_err(kline, format!("unknown ring kind `{other}`"))),
    }
}

fn parse_module(sec: &RawSection) -> Result<ModuleSpec> {
    let (kline, kind) = sec.require("kind")?;
    match kind {
        "regular" => Ok(ModuleSpec::Regular),
        "subring" => {
            let (l, v) = sec.require("q")?;
            Ok(ModuleSpec::Subring { q: parse_usize(l, "q", v)? })
        }
        other => Err(parse_err(kline, format!("unknown module kind `{other}`"))),
    }
}

fn parse_maps(sec: &RawSection, n: usize) -> Result<MapsSpec> {
    let (kline, kind) = sec.require("kind")?;
    match kind {
        "ring_multiplication" => Ok(MapsSpec::RingMultiplication),
        "zero" => Ok(MapsSpec::Zero),
        "structure_constants" => {
            let mut constants = Vec::new();
            for (l, k, v) in &sec.entries {
                if k == "kind" {
                    continue;
                }
                let digits = k.strip_prefix('r').ok_or_else(|| {
                    parse_err(*l, format!("structure constants expect keys `rij`, got `{k}`"))
                })?;
                if digits.len() != 2 || !digits.chars().all(|c| c.is_ascii_digit()) {
                    return Err(parse_err(
                        *l,
                        format!("structure-constant key must be `r<i><j>` with single digits, got `{k}`"),
                    ));
                }
                let i = digits[..1].parse::<usize>().unwrap();
                let j = digits[1..].parse::<usize>().unwrap();
                if i == 0 || j == 0 || i + j > n {
                    return Err(parse_err(
                        *l,
                        format!("`{k}`: degrees must satisfy 1 ≤ i, j and i+j ≤ {n}"),
                    ));
                }
                constants.push((i, j, parse_usize(*l, k, v)?));
            }
            Ok(MapsSpec::StructureConstants { constants })
        }
        "algebra" => {
            let (al, av) = sec.require("ambient")?;
            let ambient_q = match av.split_whitespace().collect::<Vec<_>>()[..] {
                ["gf", q] => parse_usize(al, "ambient", q)?,
                _ => return Err(parse_err(al, format!("ambient must be `gf <q>`, got `{av}`"))),
            };
            let (el, ev) = sec.require("ring_embed")?;
            let ring_embed = parse_list(el, "ring_embed", ev)?;
            let mut module_embeds = Vec::new();
            for i in 1..=n {
                let key = format!("module_embed_{i}");
                let (l, v) = sec.require(&key)?;
                module_embeds.push(parse_list(l, &key, v)?);
            }
            Ok(MapsSpec::Algebra { ambient_q, ring_embed, module_embeds })
        }
        other => Err(parse_err(kline, format!("unknown maps kind `{other}`"))),
    }
}

fn parse_options(sec: &RawSection) -> Result<Options> {
    let mut opts = Options::default();
    for (l, k, v) in &sec.entries {
        if k == "strictness" {
            opts.strictness = match v.as_str() {
                "strict" => Strictness::Strict,
                "exploratory" => Strictness::Exploratory,
                other => {
                    return Err(parse_err(
                        *l,
                        format!("strictness must be strict or exploratory, got `{other}`"),
                    ))
                }
            };
        } else if k == "max_order" {
            opts.max_order = parse_usize(*l, "max_order", v)?;
        } else if k == "max_len" {
            opts.max_len = parse_usize(*l, "max_len", v)?;
        } else if let Some(name) = k.strip_prefix("set.") {
            opts.mult_sets.insert(name.to_string(), parse_list(*l, k, v)?);
        } else if let Some(name) = k.strip_prefix("class.") {
            opts.ideal_classes.insert(name.to_string(), v.clone());
        } else {
            return Err(parse_err(*l, format!("unknown option `{k}`")));
        }
    }
    Ok(opts)
}

impl SpecDocument {
    /// Parse an instance file.
    pub fn parse(text: &str) -> Result<SpecDocument> {
        let sections = split_sections(text)?;
        let mut ring: Option<(usize, RingSpec)> = None;
        let mut modules: Vec<ModuleSpec> = Vec::new();
        let mut maps_sec: Option<&RawSection> = None;
        let mut options = Options::default();
        let mut module_lines: Vec<usize> = Vec::new();
        for sec in &sections {
            match sec.name.as_str() {
                "ring" => {
                    if ring.is_some() {
                        return Err(parse_err(sec.line, "duplicate [ring] section"));
                    }
                    ring = Some((sec.line, parse_ring(sec)?));
                }
                "module" => {
                    if maps_sec.is_some() {
                        return Err(parse_err(
                            sec.line,
                            "[module] sections must precede [maps]",
                        ));
                    }
                    modules.push(parse_module(sec)?);
                    module_lines.push(sec.line);
                }
                "maps" => {
                    if maps_sec.is_some() {
                        return Err(parse_err(sec.line, "duplicate [maps] section"));
                    }
                    maps_sec = Some(sec);
                }
                "options" => options = parse_options(sec)?,
                other => return Err(parse_err(sec.line, format!("unknown section [{other}]"))),
            }
        }
        let (_, ring) = ring.ok_or_else(|| parse_err(0, "missing [ring] section"))?;
        if modules.is_empty() {
            return Err(parse_err(0, "at least one [module] section is required"));
        }
        let maps_sec = maps_sec.ok_or_else(|| parse_err(0, "missing [maps] section"))?;
        let maps = parse_maps(maps_sec, modules.len())?;
        Ok(SpecDocument { ring, modules, maps, options })
    }

    /// Number of declared module degrees.
    pub fn n(&self) -> usize {
        self.modules.len()
    }

    /// Construct the base ring.
    pub fn build_ring(&self) -> Result<Arc<FiniteRing>> {
        match &self.ring {
            RingSpec::Zm { m } => FiniteRing::zm(*m),
            RingSpec::Gf { q } => FiniteRing::gf(*q),
            RingSpec::Product { factors } => {
                let parts: Result<Vec<_>> = factors.iter().map(|&m| FiniteRing::zm(m)).collect();
                FiniteRing::product(&parts?)
            }
        }
    }

    /// Construct the extension this document describes.
    pub fn build(&self) -> Result<Arc<NTrivialExtension>> {
        let ring = self.build_ring()?;
        let mut modules: Vec<Arc<FiniteModule>> = Vec::new();
        for spec in &self.modules {
            modules.push(match spec {
                ModuleSpec::Regular => FiniteModule::regular(&ring)?,
                ModuleSpec::Subring { q } => {
                    let ambient = FiniteRing::gf(*q)?;
                    subring_module(&ring, &ambient, format!("F{q}"))?
                }
            });
        }
        let family = match &self.maps {
            MapsSpec::RingMultiplication => ProductMapFamily::ring_multiplication(&ring, &modules)?,
            MapsSpec::Zero => ProductMapFamily::zero(&ring, &modules)?,
            MapsSpec::StructureConstants { constants } => {
                ProductMapFamily::structure_constants(&ring, &modules, constants)?
            }
            MapsSpec::Algebra { ambient_q, ring_embed, module_embeds } => {
                let ambient = FiniteRing::gf(*ambient_q)?;
                ProductMapFamily::algebra(&ring, &modules, &ambient, ring_embed, module_embeds)?
            }
        };
        NTrivialExtension::build(&ring, &modules, family, self.options.strictness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4_CHAIN: &str = "\
# Z4 with two regular modules, multiplication maps
[ring]
kind = zm
m = 4

[module]
kind = regular

[module]
kind = regular

[maps]
kind = ring_multiplication

[options]
max_len = 8
set.S = 1
";

    #[test]
    fn parses_and_builds_the_z4_chain() {
        let doc = SpecDocument::parse(Z4_CHAIN).unwrap();
        assert_eq!(doc.ring, RingSpec::Zm { m: 4 });
        assert_eq!(doc.modules.len(), 2);
        assert_eq!(doc.maps, MapsSpec::RingMultiplication);
        assert_eq!(doc.options.max_len, 8);
        assert_eq!(doc.options.max_order, 4096);
        assert_eq!(doc.options.mult_sets["S"], vec![1]);
        let ext = doc.build().unwrap();
        assert_eq!(ext.order(), 64);
        assert_eq!(ext.n(), 2);
    }

    #[test]
    fn parses_structure_constants_over_z5() {
        let text = "\
[ring]
kind = zm
m = 5
[module]
kind = regular
[module]
kind = regular
[module]
kind = regular
[maps]
kind = structure_constants
r11 = 1
r12 = 1
r21 = 2
[options]
strictness = exploratory
";
        let doc = SpecDocument::parse(text).unwrap();
        assert_eq!(
            doc.maps,
            MapsSpec::StructureConstants { constants: vec![(1, 1, 1), (1, 2, 1), (2, 1, 2)] }
        );
        assert_eq!(doc.options.strictness, Strictness::Exploratory);
        let ext = doc.build().unwrap();
        // r12 ≠ r21 breaks symmetry, and associativity fails too.
        let v = ext.family().validation();
        assert!(!v.symmetric_ok && !v.associative_ok);
    }

    #[test]
    fn parses_the_field_tower() {
        let text = "\
[ring]
kind = gf
q = 2
[module]
kind = subring
q = 4
[module]
kind = subring
q = 4
[maps]
kind = algebra
ambient = gf 4
ring_embed = 0,1
module_embed_1 = 0,1,2,3
module_embed_2 = 0,1,2,3
";
        let ext = SpecDocument::parse(text).unwrap().build().unwrap();
        assert_eq!(ext.order(), 32);
        assert!(ext.family().validation().all_ok());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let missing = SpecDocument::parse("[ring]\nkind = zm\n").unwrap_err();
        assert!(matches!(missing, Error::Parse { line: 1, .. }), "{missing}");
        let bad_value = SpecDocument::parse("[ring]\nkind = zm\nm = four\n").unwrap_err();
        assert!(matches!(bad_value, Error::Parse { line: 3, .. }), "{bad_value}");
        let stray = SpecDocument::parse("kind = zm\n").unwrap_err();
        assert!(matches!(stray, Error::Parse { line: 1, .. }), "{stray}");
        let bad_key = SpecDocument::parse(
            "[ring]\nkind = zm\nm = 4\n[module]\nkind = regular\n[maps]\nkind = structure_constants\nr13 = 1\n",
        )
        .unwrap_err();
        assert!(matches!(bad_key, Error::Parse { line: 8, .. }), "{bad_key}");
        let unknown = SpecDocument::parse("[rings]\nkind = zm\n").unwrap_err();
        assert!(matches!(unknown, Error::Parse { line: 1, .. }), "{unknown}");
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "  # leading comment\n\n[ring] # trailing\nkind = zm # another\nm = 6\n[module]\nkind = regular\n[maps]\nkind = ring_multiplication\n";
        let doc = SpecDocument::parse(text).unwrap();
        assert_eq!(doc.ring, RingSpec::Zm { m: 6 });
        assert_eq!(doc.n(), 1);
    }
}
