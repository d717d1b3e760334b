//! `ntriv` — build an n-trivial extension from an instance file and run
//! deterministic verification commands against it.
//!
//! Every command reads a line-oriented instance file (`[section]` headers,
//! `key = value` pairs, `#` comments), builds `R ⋉ M₁ ⋉ ⋯ ⋉ Mₙ`, and
//! prints a report with one line per check. Reports are byte-identical
//! across reruns of the same file and flags.
//!
//! Exit codes: 0 all selected checks passed (skipped checks never fail),
//! 1 at least one check failed or the instance was refused, 2 usage or
//! parse error, 3 an enumeration cap was exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ntriv::extension::GradingMonoid;
use ntriv::factor::{divisibility_suite, Divisibility, UFactorization};
use ntriv::ideal::{
    extension_properties, homogeneity_class_check, homogeneous_arith_check, prefix_shape_hypotheses,
    principal_form, proper_ideal_shape_census, spectrum_transfer_check, ClassSelector,
};
use ntriv::localize::{kernel_shortcut_check, localize_extension, total_quotient, universality_check};
use ntriv::maps::MapWitness;
use ntriv::report::{CheckRecord, ReportDocument};
use ntriv::specdoc::SpecDocument;
use ntriv::{Elem, Error, NTrivialExtension, Strictness};

// ----------------------------------------------------------------------
// Command line
// ----------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "ntriv",
    about = "Construct n-trivial extension rings and verify their structure theory",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the product-map axioms and the canonical homomorphisms.
    Validate(Common),
    /// Compare closed-form element classifications against brute force.
    Classify(Common),
    /// Enumerate ideals and verify the prime/maximal/radical transfer.
    Ideals(Common),
    /// Test ideal classes for homogeneity and the componentwise formulas.
    Homogeneity(Common),
    /// Localize the extension and verify the normalization isomorphism.
    Localize(Common),
    /// Factor an element: irreducibility profile, factorizations, U-splits.
    Factor(Common),
    /// Run every applicable check in fixed order.
    Suite(Common),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Validate(c)
            | Command::Classify(c)
            | Command::Ideals(c)
            | Command::Homogeneity(c)
            | Command::Localize(c)
            | Command::Factor(c)
            | Command::Suite(c) => c,
        }
    }

    fn title(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Classify(_) => "classify",
            Command::Ideals(_) => "ideals",
            Command::Homogeneity(_) => "homogeneity",
            Command::Localize(_) => "localize",
            Command::Factor(_) => "factor",
            Command::Suite(_) => "suite",
        }
    }
}

#[derive(Args)]
struct Common {
    /// Instance file in the documented `[section]` / `key = value` format.
    spec: PathBuf,

    /// Cap for ideal and submodule enumeration (overrides the file's
    /// `max_order`).
    #[arg(long)]
    max_order: Option<usize>,

    /// Factorization length bound (overrides the file's `max_len`).
    #[arg(long)]
    max_len: Option<usize>,

    /// Comma-separated check names; only matching records are reported.
    #[arg(long)]
    checks: Option<String>,

    /// Element as comma-separated per-slot indices, e.g. "2,1,2".
    #[arg(long)]
    element: Option<String>,

    /// Multiplicative-set seed: comma-separated elements of the base ring,
    /// or the name of a `set.<name>` entry from the instance file.
    #[arg(long)]
    mult_set: Option<String>,

    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

// ----------------------------------------------------------------------
// Exit-code plumbing
// ----------------------------------------------------------------------

/// A fatal problem that aborts the run before a report can be produced.
enum Abort {
    /// Usage or parse problem (exit 2).
    Usage(String),
    /// An enumeration cap was exceeded (exit 3).
    Cap(String),
}

impl Abort {
    fn code(&self) -> u8 {
        match self {
            Abort::Usage(_) => 2,
            Abort::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Abort::Usage(m) | Abort::Cap(m) => m,
        }
    }
}

impl From<Error> for Abort {
    fn from(e: Error) -> Abort {
        match e {
            Error::CapExceeded(m) => Abort::Cap(format!("cap exceeded: {m}")),
            other => Abort::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common();

    let text = match std::fs::read_to_string(&common.spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("ntriv: cannot read {}: {e}", common.spec.display());
            return ExitCode::from(2);
        }
    };
    let doc = match SpecDocument::parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("ntriv: {e}");
            return ExitCode::from(2);
        }
    };

    let caps = Caps {
        max_order: common.max_order.unwrap_or(doc.options.max_order),
        max_len: common.max_len.unwrap_or(doc.options.max_len),
    };

    // A strict instance whose maps fail an axiom is a failed validation,
    // not a usage error: report it and exit 1.
    let ext = match doc.build() {
        Ok(e) => e,
        Err(Error::AxiomViolation { law, witness }) => {
            let mut report = ReportDocument::new(cli.command.title(), "(not constructed)");
            report.push(CheckRecord::fails(
                "construction",
                "the declared product maps must form a commutative-ring structure",
                format!("{law}; {witness}"),
            ));
            return finish(report, common);
        }
        Err(e) => {
            let abort = Abort::from(e);
            eprintln!("ntriv: {}", abort.message());
            return ExitCode::from(abort.code());
        }
    };

    let outcome = match &cli.command {
        Command::Validate(_) => Ok(run_validate(&ext, caps)),
        Command::Classify(_) => run_classify(&ext),
        Command::Ideals(_) => run_ideals(&ext, caps),
        Command::Homogeneity(_) => run_homogeneity(&ext, &doc, common, caps),
        Command::Localize(_) => run_localize(&ext, &doc, common, caps),
        Command::Factor(_) => run_factor(&ext, common, caps),
        Command::Suite(_) => run_suite(&ext, &doc, caps),
    };

    let mut report = match outcome {
        Ok(r) => r,
        Err(abort) => {
            eprintln!("ntriv: {}", abort.message());
            return ExitCode::from(abort.code());
        }
    };
    report.title = cli.command.title().to_string();

    if let Some(list) = &common.checks {
        if let Err(abort) = filter_checks(&mut report, list) {
            eprintln!("ntriv: {}", abort.message());
            return ExitCode::from(abort.code());
        }
    }
    finish(report, common)
}

/// Render, write, and turn the report's verdicts into an exit code.
fn finish(report: ReportDocument, common: &Common) -> ExitCode {
    let rendered = match common.format {
        Format::Text => report.render_text(),
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    };
    if let Some(path) = &common.out {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("ntriv: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{rendered}");
    }
    if report.all_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Keep only the requested record names; unknown names are usage errors.
fn filter_checks(report: &mut ReportDocument, list: &str) -> Result<(), Abort> {
    let wanted: Vec<String> = list
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if wanted.is_empty() {
        return Err(Abort::Usage("--checks given but empty".into()));
    }
    let known: Vec<&str> = report.records.iter().map(|r| r.name.as_str()).collect();
    for w in &wanted {
        if !known.iter().any(|k| k == w) {
            return Err(Abort::Usage(format!(
                "unknown check name `{w}`; this command produces: {}",
                known.join(", ")
            )));
        }
    }
    report.records.retain(|r| wanted.iter().any(|w| w == &r.name));
    Ok(())
}

#[derive(Clone, Copy)]
struct Caps {
    max_order: usize,
    max_len: usize,
}

// ----------------------------------------------------------------------
// Shared helpers
// ----------------------------------------------------------------------

fn witness_text(w: &MapWitness) -> String {
    format!(
        "{} fails at degrees {:?} on [{}]: {} ≠ {}",
        w.law,
        w.indices,
        w.elements.join(", "),
        w.lhs,
        w.rhs
    )
}

/// The refusal record used when a ring-level command meets an exploratory
/// instance: the product maps are not a commutative-ring structure, so no
/// ring theory applies. Carries the axiom counterexamples as witnesses.
fn refusal(ext: &NTrivialExtension, command: &str) -> CheckRecord {
    let v = ext.family().validation();
    let mut rec = CheckRecord::fails(
        format!("{command}-refused"),
        "ring-level commands require a strict instance whose product maps \
         are symmetric and associative",
        "instance is declared exploratory",
    );
    for w in &v.witnesses {
        rec = rec.with_note(witness_text(w));
    }
    rec
}

fn require_strict(ext: &Arc<NTrivialExtension>, command: &str) -> Result<(), ReportDocument> {
    if ext.strictness() == Strictness::Strict {
        Ok(())
    } else {
        let mut report = ReportDocument::new(command, ext.label());
        report.push(refusal(ext, command));
        Err(report)
    }
}

fn parse_coords(s: &str) -> Result<Vec<Elem>, Abort> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Elem>()
                .map_err(|_| Abort::Usage(format!("bad element coordinate `{}`", t.trim())))
        })
        .collect()
}

/// Resolve `--mult-set` to named seed lists: a literal comma-separated
/// element list, the name of a `set.<name>` entry, or (absent) every named
/// set from the instance file.
fn resolve_mult_sets(
    ext: &NTrivialExtension,
    doc: &SpecDocument,
    flag: Option<&str>,
) -> Result<Vec<(String, Vec<Elem>)>, Abort> {
    let order = ext.ring().order();
    let check_range = |name: &str, seeds: &[Elem]| -> Result<(), Abort> {
        match seeds.iter().find(|&&s| s >= order) {
            Some(&s) => Err(Abort::Usage(format!(
                "multiplicative set `{name}` contains {s}, but the base ring has order {order}"
            ))),
            None => Ok(()),
        }
    };
    match flag {
        Some(raw) => {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(Abort::Usage("--mult-set given but empty".into()));
            }
            if raw.split(',').all(|t| t.trim().parse::<Elem>().is_ok()) {
                let seeds = parse_coords(raw)?;
                check_range("custom", &seeds)?;
                Ok(vec![("custom".to_string(), seeds)])
            } else if let Some(seeds) = doc.options.mult_sets.get(raw) {
                check_range(raw, seeds)?;
                Ok(vec![(raw.to_string(), seeds.clone())])
            } else {
                let known: Vec<&str> =
                    doc.options.mult_sets.keys().map(|k| k.as_str()).collect();
                Err(Abort::Usage(format!(
                    "no multiplicative set named `{raw}` in the instance file \
                     (declared sets: {})",
                    if known.is_empty() {
                        "none".to_string()
                    } else {
                        known.join(", ")
                    }
                )))
            }
        }
        None => {
            let mut out = Vec::new();
            for (name, seeds) in &doc.options.mult_sets {
                check_range(name, seeds)?;
                out.push((name.clone(), seeds.clone()));
            }
            Ok(out)
        }
    }
}

// ----------------------------------------------------------------------
// validate
// ----------------------------------------------------------------------

fn run_validate(ext: &Arc<NTrivialExtension>, caps: Caps) -> ReportDocument {
    let mut report = ReportDocument::new("validate", ext.label());
    let v = ext.family().validation();

    let axiom = |name: &str, law: &str, ok: bool, pick: &dyn Fn(&MapWitness) -> bool| {
        let mut rec = if ok {
            CheckRecord::holds(name, law)
        } else {
            CheckRecord::fails(name, law, "counterexamples follow")
        };
        if !ok {
            for w in v.witnesses.iter().filter(|w| pick(w)) {
                rec = rec.with_note(witness_text(w));
            }
        }
        rec
    };
    report.push(axiom(
        "map-bilinearity",
        "each product map is additive in both slots and compatible with the scalar action",
        v.bilinear_ok,
        &|w| w.law.contains("additivity") || w.law.contains("scalar"),
    ));
    report.push(axiom(
        "map-symmetry",
        "φ_ij(x, y) = φ_ji(y, x) for all degrees i + j ≤ n",
        v.symmetric_ok,
        &|w| w.law.contains("symmetry"),
    ));
    report.push(axiom(
        "map-associativity",
        "φ_{i+j,k}(φ_ij(x, y), z) = φ_{i,j+k}(x, φ_jk(y, z)) for all i + j + k ≤ n",
        v.associative_ok,
        &|w| w.law.contains("associativity"),
    ));

    // Exhaustive when the instance is small enough, otherwise a fixed-seed
    // sample — deterministic either way.
    let m = ext.matrix_check(16 * caps.max_order, 0x5EED);
    report.push(
        CheckRecord::from_outcome(
            "matrix-agreement",
            "the convolution product agrees with upper-triangular Toeplitz matrix multiplication",
            m.ok,
            m.witness.unwrap_or_default(),
        )
        .with_note(format!(
            "pairs checked: {}{}",
            m.pairs_checked,
            if m.exhaustive { " (exhaustive)" } else { " (sampled)" }
        )),
    );

    if ext.strictness() == Strictness::Strict {
        match ext.iota_check() {
            Ok(h) => report.push(CheckRecord::from_outcome(
                "iota-embedding",
                "r ↦ (r, 0, …, 0) is an injective unital ring homomorphism",
                h.ok && h.injective,
                h.witness.unwrap_or_default(),
            )),
            Err(e) => report.push(CheckRecord::fails(
                "iota-embedding",
                "r ↦ (r, 0, …, 0) is an injective unital ring homomorphism",
                e.to_string(),
            )),
        }
        match ext.tilde_contract_check() {
            Ok((count, witness)) => report.push(
                CheckRecord::from_outcome(
                    "tilde-contraction",
                    "x · x̃ = (x₀^(2ⁿ), 0, …, 0) for every element x",
                    witness.is_none(),
                    witness.unwrap_or_default(),
                )
                .with_note(format!("elements checked: {count}")),
            ),
            Err(e) => report.push(CheckRecord::fails(
                "tilde-contraction",
                "x · x̃ = (x₀^(2ⁿ), 0, …, 0) for every element x",
                e.to_string(),
            )),
        }
        if ext.n() >= 2 {
            match ext.truncated(ext.n() - 1) {
                Ok((_, h)) => report.push(
                    CheckRecord::from_outcome(
                        "truncation-hom",
                        "dropping the top slot is a surjective ring homomorphism onto the \
                         (n−1)-trivial extension",
                        h.ok && h.surjective,
                        h.witness.unwrap_or_default(),
                    )
                    .with_note(format!("kernel size: {}", h.kernel_size)),
                ),
                Err(e) => report.push(CheckRecord::fails(
                    "truncation-hom",
                    "dropping the top slot is a surjective ring homomorphism onto the \
                     (n−1)-trivial extension",
                    e.to_string(),
                )),
            }
        } else {
            report.push(CheckRecord::skipped(
                "truncation-hom",
                "dropping the top slot is a surjective ring homomorphism onto the \
                 (n−1)-trivial extension",
                "n = 1 leaves nothing to truncate",
            ));
        }
    } else {
        for (name, law) in [
            (
                "iota-embedding",
                "r ↦ (r, 0, …, 0) is an injective unital ring homomorphism",
            ),
            (
                "tilde-contraction",
                "x · x̃ = (x₀^(2ⁿ), 0, …, 0) for every element x",
            ),
            (
                "truncation-hom",
                "dropping the top slot is a surjective ring homomorphism onto the \
                 (n−1)-trivial extension",
            ),
        ] {
            report.push(CheckRecord::skipped(
                name,
                law,
                "instance is exploratory; ring homomorphisms are undefined",
            ));
        }
    }
    report
}

// ----------------------------------------------------------------------
// classify
// ----------------------------------------------------------------------

fn run_classify(ext: &Arc<NTrivialExtension>) -> Result<ReportDocument, Abort> {
    if let Err(r) = require_strict(ext, "classify") {
        return Ok(r);
    }
    let mut report = ReportDocument::new("classify", ext.label());
    let c = ext.classify()?;
    let sets: [(&str, &str, &Vec<usize>, &Vec<usize>); 5] = [
        (
            "units",
            "U(R⋉M) = {x : x₀ ∈ U(R)}; closed form equals brute force",
            &c.closed.units,
            &c.brute.units,
        ),
        (
            "zero-divisors",
            "Z(R⋉M) = {x : x₀ ∈ Z(R) ∪ Z(M₁) ∪ ⋯ ∪ Z(Mₙ)}; closed form equals brute force",
            &c.closed.zero_divisors,
            &c.brute.zero_divisors,
        ),
        (
            "idempotents",
            "Idem(R⋉M) = {(e, 0, …, 0) : e² = e in R}; closed form equals brute force",
            &c.closed.idempotents,
            &c.brute.idempotents,
        ),
        (
            "nilradical",
            "Nil(R⋉M) = Nil(R)⋉M; closed form equals brute force",
            &c.closed.nilpotents,
            &c.brute.nilpotents,
        ),
        (
            "jacobson-radical",
            "J(R⋉M) = J(R)⋉M; closed form equals brute force",
            &c.closed.jacobson,
            &c.brute.jacobson,
        ),
    ];
    for (name, law, closed, brute) in sets {
        let ok = closed == brute;
        let witness = if ok {
            String::new()
        } else {
            let missing: Vec<usize> = brute.iter().filter(|x| !closed.contains(x)).copied().collect();
            let extra: Vec<usize> = closed.iter().filter(|x| !brute.contains(x)).copied().collect();
            format!(
                "closed form misses {} and over-claims {} (flattened indices)",
                fmt_idx_list(ext, &missing),
                fmt_idx_list(ext, &extra)
            )
        };
        report.push(
            CheckRecord::from_outcome(name, law, ok, witness)
                .with_note(format!("set size: {}", brute.len())),
        );
    }
    Ok(report)
}

fn fmt_idx_list(ext: &NTrivialExtension, idxs: &[usize]) -> String {
    if idxs.is_empty() {
        return "nothing".to_string();
    }
    let shown: Vec<String> = idxs
        .iter()
        .take(4)
        .map(|&i| ext.fmt_el(&ext.decode(i)))
        .collect();
    if idxs.len() > 4 {
        format!("{}, … ({} total)", shown.join(", "), idxs.len())
    } else {
        shown.join(", ")
    }
}

// ----------------------------------------------------------------------
// ideals
// ----------------------------------------------------------------------

fn run_ideals(ext: &Arc<NTrivialExtension>, caps: Caps) -> Result<ReportDocument, Abort> {
    if let Err(r) = require_strict(ext, "ideals") {
        return Ok(r);
    }
    let mut report = ReportDocument::new("ideals", ext.label());
    let (_, t) = spectrum_transfer_check(ext, caps.max_order)?;
    let witness = t.witness.clone().unwrap_or_default();

    report.push(
        CheckRecord::from_outcome(
            "prime-ideal-form",
            "the prime ideals are exactly P⋉M for P prime in R",
            t.primes_extended,
            witness.clone(),
        )
        .with_note(format!(
            "primes downstairs: {}, upstairs: {}",
            t.ring_prime_count, t.ext_prime_count
        )),
    );
    report.push(CheckRecord::from_outcome(
        "maximal-ideal-form",
        "the maximal ideals are exactly 𝔪⋉M for 𝔪 maximal in R",
        t.maximals_extended,
        witness.clone(),
    ));
    report.push(CheckRecord::from_outcome(
        "radical-ideal-form",
        "every radical ideal containing 0⋉M is I⋉M for a radical ideal I of R",
        t.radicals_extended,
        witness.clone(),
    ));
    report.push(CheckRecord::from_outcome(
        "nilradical-jacobson-form",
        "Nil(R⋉M) = Nil(R)⋉M and J(R⋉M) = J(R)⋉M as ideals",
        t.nilradical_matches && t.jacobson_matches,
        witness.clone(),
    ));
    report.push(
        CheckRecord::from_outcome(
            "krull-dimension",
            "dim(R⋉M) = dim(R)",
            t.ring_krull == t.ext_krull,
            format!("dim R = {}, dim R⋉M = {}", t.ring_krull, t.ext_krull),
        )
        .with_note(format!(
            "ideals upstairs: {}, Krull dimension: {}",
            t.ideal_count, t.ext_krull
        )),
    );

    let shape_law = "over a field base whose nonzero homogeneous elements carry Mⱼ onto \
                     M_{i+j}, every proper ideal is 0 ⋉ ⋯ ⋉ 0 ⋉ N ⋉ M_{j+1} ⋉ ⋯ ⋉ Mₙ";
    match prefix_shape_hypotheses(ext) {
        Some(reason) => report.push(CheckRecord::skipped("proper-ideal-shapes", shape_law, reason)),
        None => {
            let census = proper_ideal_shape_census(ext, caps.max_order)?;
            let mut rec = CheckRecord::from_outcome(
                "proper-ideal-shapes",
                shape_law,
                census.ok,
                census.witness.clone().unwrap_or_default(),
            )
            .with_note(format!("proper ideals: {}", census.proper_ideals));
            for shape in census.shapes.iter().take(10) {
                rec = rec.with_note(shape.clone());
            }
            if census.shapes.len() > 10 {
                rec = rec.with_note(format!("… {} shapes total", census.shapes.len()));
            }
            report.push(rec);
        }
    }
    Ok(report)
}

// ----------------------------------------------------------------------
// homogeneity
// ----------------------------------------------------------------------

fn named_selectors(doc: &SpecDocument) -> Result<Vec<(String, ClassSelector)>, Abort> {
    let mut out = Vec::new();
    for (name, value) in &doc.options.ideal_classes {
        let sel = parse_selector(value).map_err(|m| {
            Abort::Usage(format!("bad ideal class `{name} = {value}`: {m}"))
        })?;
        out.push((name.clone(), sel));
    }
    Ok(out)
}

fn parse_selector(value: &str) -> Result<ClassSelector, String> {
    let mut words = value.split_whitespace();
    let head = words.next().unwrap_or("");
    let rest: Vec<&str> = words.collect();
    match (head, rest.as_slice()) {
        ("regular", []) => Ok(ClassSelector::Regular),
        ("pi0_zero", []) => Ok(ClassSelector::Pi0Zero),
        ("all", []) => Ok(ClassSelector::All),
        ("pi_prefix_zero", [j]) => j
            .parse::<usize>()
            .map(ClassSelector::PiPrefixZero)
            .map_err(|_| format!("`{j}` is not a degree")),
        ("pi0_meets", [list]) => list
            .split(',')
            .map(|t| t.parse::<Elem>().map_err(|_| format!("`{t}` is not an element")))
            .collect::<Result<Vec<_>, _>>()
            .map(ClassSelector::Pi0Meets),
        _ => Err(
            "expected regular | pi0_zero | all | pi_prefix_zero <j> | pi0_meets <e1,e2,…>"
                .to_string(),
        ),
    }
}

fn class_record(
    ext: &Arc<NTrivialExtension>,
    label: &str,
    sel: &ClassSelector,
    cap: usize,
) -> Result<CheckRecord, Abort> {
    let r = match homogeneity_class_check(ext, sel, cap) {
        Ok(r) => r,
        Err(Error::HypothesisNotMet(m)) => {
            return Ok(CheckRecord::skipped(
                format!("class-{label}"),
                format!("homogeneity criterion for the `{}` ideal class", sel.name()),
                m,
            ));
        }
        Err(e) => return Err(Abort::from(e)),
    };
    let ok = r.equivalence_holds && r.form_ok.unwrap_or(true) && r.comparability_ok.unwrap_or(true);
    let mut witness = Vec::new();
    if let Some(w) = &r.non_homogeneous_witness {
        witness.push(format!("non-homogeneous: {w}"));
    }
    if let Some(w) = &r.module_condition_witness {
        witness.push(format!("module condition: {w}"));
    }
    if let Some(w) = &r.form_witness {
        witness.push(format!("form: {w}"));
    }
    let mut rec = CheckRecord::from_outcome(
        format!("class-{label}"),
        r.law.clone(),
        ok,
        witness.join("; "),
    )
    .with_hypotheses(r.hypotheses.clone())
    .with_note(format!("ideals in class `{}`: {}", r.selector, r.class_size));
    if ok && r.class_size > 0 {
        rec = rec.with_note(format!(
            "all homogeneous: {}; module condition: {}",
            r.all_homogeneous, r.module_condition
        ));
    }
    Ok(rec)
}

fn run_homogeneity(
    ext: &Arc<NTrivialExtension>,
    doc: &SpecDocument,
    common: &Common,
    caps: Caps,
) -> Result<ReportDocument, Abort> {
    if let Err(r) = require_strict(ext, "homogeneity") {
        return Ok(r);
    }
    let mut report = ReportDocument::new("homogeneity", ext.label());

    let named = named_selectors(doc)?;
    let selectors: Vec<(String, ClassSelector)> = if named.is_empty() {
        vec![
            ("regular".to_string(), ClassSelector::Regular),
            ("pi0-zero".to_string(), ClassSelector::Pi0Zero),
            ("all".to_string(), ClassSelector::All),
        ]
    } else {
        named
    };
    for (label, sel) in &selectors {
        report.push(class_record(ext, label, sel, caps.max_order)?);
    }

    let a = homogeneous_arith_check(ext, caps.max_order)?;
    report.push(
        CheckRecord::from_outcome(
            "arithmetic-formulas",
            "sum, intersection, product, and colon of homogeneous ideals follow the \
             componentwise formulas and stay homogeneous; the nilpotency radical of any \
             ideal is √Π₀(J) ⋉ M",
            a.all_ok(),
            a.witness.clone().unwrap_or_default(),
        )
        .with_note(format!(
            "ideals: {}, homogeneous: {}, pairs checked: {}",
            a.ideal_count, a.homogeneous_count, a.pairs_checked
        )),
    );

    if let Some(coords) = &common.element {
        let coords = parse_coords(coords)?;
        let el = ext.element(&coords)?;
        let p = principal_form(ext, &el)?;
        report.push(
            CheckRecord::from_outcome(
                "principal-form",
                "a principal ideal is homogeneous exactly when its size matches the \
                 closed-form component sizes, and the closed form then matches the hull",
                p.verdicts_coincide && (!p.homogeneous || p.closed_form_matches_hull),
                format!(
                    "⟨{}⟩: size {}, closed-form sizes {:?}",
                    p.generator, p.ideal_size, p.closed_form_sizes
                ),
            )
            .with_note(format!(
                "generator {}, homogeneous: {}",
                p.generator, p.homogeneous
            )),
        );
    }
    Ok(report)
}

// ----------------------------------------------------------------------
// localize
// ----------------------------------------------------------------------

fn localization_records(
    ext: &Arc<NTrivialExtension>,
    name: &str,
    seeds: &[Elem],
    caps: Caps,
    report: &mut ReportDocument,
) -> Result<(), Abort> {
    let ring = ext.ring();
    let fmt_seeds: Vec<String> = seeds.iter().map(|&s| ring.fmt_el(s)).collect();
    match localize_extension(ext, seeds, None) {
        Ok(loc) => {
            let r = loc.report();
            report.push(
                CheckRecord::from_outcome(
                    format!("localization-{name}"),
                    "(R⋉M)_{S⋉M} built from pair classes is isomorphic to R_S ⋉ (M_i)_S \
                     built independently",
                    r.iso_verified,
                    format!("sides have orders {} and {}", r.side_a_order, r.side_b_order),
                )
                .with_note(format!(
                    "seed {{{}}}, closure size {}, localized order {}{}",
                    fmt_seeds.join(", "),
                    r.upstairs_set_size,
                    r.side_b_order,
                    if r.explicit_map_used {
                        ", via the explicit normalization map"
                    } else {
                        ", via exhaustive matching"
                    }
                )),
            );
            let base = loc.base();
            let k = kernel_shortcut_check(base)?;
            report.push(
                CheckRecord::from_outcome(
                    format!("kernel-shortcut-{name}"),
                    "ker(R → R_S) = {r : sr = 0 for some s ∈ S} and R_S ≅ (R/ker)\
                     [images of S inverted]",
                    k.iso_verified && k.s_images_regular,
                    format!(
                        "kernel size {}, quotient order {}, localized order {}",
                        k.kernel_size, k.quotient_order, k.localized_order
                    ),
                )
                .with_note(format!("R_S order: {}", k.localized_order)),
            );
            let u = universality_check(base, caps.max_order)?;
            report.push(
                CheckRecord::from_outcome(
                    format!("universality-{name}"),
                    "every quotient of R that inverts S factors uniquely through R → R_S",
                    u.all_factor_uniquely,
                    u.witness.clone().unwrap_or_default(),
                )
                .with_note(format!(
                    "quotients checked: {}, of which inverting: {}",
                    u.quotients_checked, u.inverting_targets
                )),
            );
        }
        Err(Error::InvalidConstruction(m)) => {
            report.push(CheckRecord::skipped(
                format!("localization-{name}"),
                "(R⋉M)_{S⋉M} built from pair classes is isomorphic to R_S ⋉ (M_i)_S \
                 built independently",
                format!("seed {{{}}}: {m}", fmt_seeds.join(", ")),
            ));
        }
        Err(e) => return Err(Abort::from(e)),
    }
    Ok(())
}

fn run_localize(
    ext: &Arc<NTrivialExtension>,
    doc: &SpecDocument,
    common: &Common,
    caps: Caps,
) -> Result<ReportDocument, Abort> {
    if let Err(r) = require_strict(ext, "localize") {
        return Ok(r);
    }
    let mut report = ReportDocument::new("localize", ext.label());
    let sets = resolve_mult_sets(ext, doc, common.mult_set.as_deref())?;

    if sets.is_empty() {
        // No set requested or declared: localize at the regular elements,
        // which builds the total quotient ring.
        let t = total_quotient(ext)?;
        let r = t.localization.report();
        report.push(
            CheckRecord::from_outcome(
                "total-quotient",
                "localizing at the regular elements of R⋉M equals localizing at \
                 S = regular elements of R acting regularly on every M_i, and the \
                 two sides are isomorphic",
                t.upstairs_matches_regular && r.iso_verified,
                format!("sides have orders {} and {}", r.side_a_order, r.side_b_order),
            )
            .with_note(format!(
                "regular elements downstairs: {}, total quotient order: {}",
                t.downstairs_regular.len(),
                r.side_b_order
            )),
        );
        return Ok(report);
    }
    for (name, seeds) in &sets {
        localization_records(ext, name, seeds, caps, &mut report)?;
    }
    Ok(report)
}

// ----------------------------------------------------------------------
// factor
// ----------------------------------------------------------------------

fn render_u_factorization(ext: &NTrivialExtension, u: &UFactorization) -> String {
    let fmt = |e: Elem| ext.fmt_el(&ext.decode(e));
    let relevant: Vec<String> = u.relevant.iter().map(|&e| fmt(e)).collect();
    let irrelevant: Vec<String> = u.irrelevant.iter().map(|&e| fmt(e)).collect();
    let mut s = format!("{} = {}", fmt(u.target), relevant.join("·"));
    if relevant.is_empty() {
        s = format!("{} = (empty relevant part)", fmt(u.target));
    }
    if !irrelevant.is_empty() {
        s.push_str(&format!("⌈{}⌉", irrelevant.join("·")));
    }
    s
}

fn run_factor(
    ext: &Arc<NTrivialExtension>,
    common: &Common,
    caps: Caps,
) -> Result<ReportDocument, Abort> {
    if let Err(r) = require_strict(ext, "factor") {
        return Ok(r);
    }
    let coords = match &common.element {
        Some(c) => parse_coords(c)?,
        None => return Err(Abort::Usage("factor needs --element \"<coords>\"".into())),
    };
    let el = ext.element(&coords)?;
    let x = ext.encode(&el);
    let flat = ext.flattened()?;
    let div = Divisibility::new(&flat);
    let fmt = |e: Elem| ext.fmt_el(&ext.decode(e));

    let mut report = ReportDocument::new("factor", ext.label());

    let sq = ext.mul_el(&el, &el);
    report.push(
        CheckRecord::holds("element-square", "x² is computed by the convolution product")
            .with_note(format!("{}² = {}", ext.fmt_el(&el), ext.fmt_el(&sq))),
    );

    let mut profile = CheckRecord::holds(
        "element-profile",
        "unit/zero-divisor status and the four irreducibility strengths",
    );
    profile = profile.with_note(format!(
        "{} is {}",
        fmt(x),
        if x == flat.zero() {
            "zero".to_string()
        } else if div.is_unit(x) {
            "a unit".to_string()
        } else {
            format!(
                "a nonunit; associate class representative {}",
                fmt(div.class_rep(x))
            )
        }
    ));
    match div.irreducibility(x) {
        Ok(p) => {
            profile = profile.with_note(format!(
                "irreducible: {}, strongly: {}, very strongly: {}, m-irreducible: {}",
                p.irreducible, p.strongly_irreducible, p.very_strongly_irreducible, p.m_irreducible
            ));
        }
        Err(Error::HypothesisNotMet(m)) => {
            profile = profile.with_note(format!("irreducibility not defined: {m}"));
        }
        Err(e) => return Err(Abort::from(e)),
    }
    report.push(profile);

    let enumeration = div.factor_enumerate(x, caps.max_len)?;
    let census = &enumeration.census;
    let mut factorizations = CheckRecord::holds(
        "factorizations",
        "nonunit factorizations into nonunits, one representative per associate class pattern",
    )
    .with_note(format!(
        "within length {}: {} factorization pattern(s), longest {}",
        caps.max_len,
        enumeration.factorizations.len(),
        census.max_factorization_length_observed
    ));
    for f in enumeration.factorizations.iter().take(12) {
        let parts: Vec<String> = f.iter().map(|&e| fmt(e)).collect();
        factorizations = factorizations.with_note(format!(
            "{} = {}",
            fmt(x),
            if parts.is_empty() {
                "(unit: empty product)".to_string()
            } else {
                parts.join("·")
            }
        ));
    }
    if enumeration.factorizations.len() > 12 {
        factorizations = factorizations.with_note(format!(
            "… {} patterns total",
            enumeration.factorizations.len()
        ));
    }
    report.push(factorizations);

    if div.is_unit(x) {
        report.push(CheckRecord::skipped(
            "u-factorizations",
            "each factorization splits into an irrelevant prefix absorbed by U(x) and a \
             relevant tail",
            "units factor trivially",
        ));
    } else {
        let mut rec = CheckRecord::holds(
            "u-factorizations",
            "each factorization splits into an irrelevant prefix absorbed by U(x) and a \
             relevant tail",
        );
        for u in enumeration.u_factorizations.iter().take(12) {
            rec = rec.with_note(render_u_factorization(ext, u));
        }
        if enumeration.u_factorizations.is_empty() {
            rec = rec.with_note("no nontrivial factorizations to split".to_string());
        }
        report.push(rec);
    }

    let (bounded, pad) = div.bounded(x);
    let mut rec = CheckRecord::holds(
        "boundedness",
        "an element is bounded when its nonunit factorization lengths admit a finite bound",
    )
    .with_note(format!("{} is {}", fmt(x), if bounded { "bounded" } else { "unbounded" }));
    if let Some((g, y)) = pad {
        rec = rec.with_note(format!(
            "padding witness: nonunit {} with {}·{} = {}",
            fmt(g),
            fmt(g),
            fmt(y),
            fmt(y)
        ));
    }
    report.push(rec);
    Ok(report)
}

// ----------------------------------------------------------------------
// suite
// ----------------------------------------------------------------------

fn run_suite(
    ext: &Arc<NTrivialExtension>,
    doc: &SpecDocument,
    caps: Caps,
) -> Result<ReportDocument, Abort> {
    let mut report = run_validate(ext, caps);
    report.title = "suite".to_string();

    if ext.strictness() != Strictness::Strict {
        report.push(CheckRecord::skipped(
            "ring-level-checks",
            "classification, ideals, homogeneity, localization, and divisibility",
            "instance is exploratory; the product maps are not a commutative-ring structure",
        ));
        return Ok(report);
    }

    // Structural isomorphisms.
    match ext.poly_iso() {
        Ok(p) => report.push(
            CheckRecord::from_outcome(
                "poly-iso",
                "R ⋉ R ⋉ ⋯ ⋉ R with multiplication maps is isomorphic to R[X]/(X^(n+1))",
                p.verified,
                p.witness.clone().unwrap_or_default(),
            )
            .with_note(format!("target {}, pairs checked: {}", p.target_label, p.pairs_checked)),
        ),
        Err(Error::HypothesisNotMet(m)) => report.push(CheckRecord::skipped(
            "poly-iso",
            "R ⋉ R ⋉ ⋯ ⋉ R with multiplication maps is isomorphic to R[X]/(X^(n+1))",
            m,
        )),
        Err(e) => return Err(Abort::from(e)),
    }
    match ext.product_iso() {
        Ok(p) => report.push(
            CheckRecord::from_outcome(
                "product-iso",
                "(R₁×R₂) ⋉ (M₁×M₂) is isomorphic to (R₁⋉M₁) × (R₂⋉M₂)",
                p.verified,
                p.witness.clone().unwrap_or_default(),
            )
            .with_note(format!(
                "components: {}; pairs checked: {}",
                p.component_labels.join(" × "),
                p.pairs_checked
            )),
        ),
        Err(Error::HypothesisNotMet(m)) => report.push(CheckRecord::skipped(
            "product-iso",
            "(R₁×R₂) ⋉ (M₁×M₂) is isomorphic to (R₁⋉M₁) × (R₂⋉M₂)",
            m,
        )),
        Err(e) => return Err(Abort::from(e)),
    }

    // Localization.
    let sets = resolve_mult_sets(ext, doc, None)?;
    if sets.is_empty() {
        let t = total_quotient(ext)?;
        let r = t.localization.report();
        report.push(
            CheckRecord::from_outcome(
                "total-quotient",
                "localizing at the regular elements of R⋉M equals localizing at \
                 S = regular elements of R acting regularly on every M_i, and the \
                 two sides are isomorphic",
                t.upstairs_matches_regular && r.iso_verified,
                format!("sides have orders {} and {}", r.side_a_order, r.side_b_order),
            )
            .with_note(format!(
                "regular elements downstairs: {}, total quotient order: {}",
                t.downstairs_regular.len(),
                r.side_b_order
            )),
        );
    } else {
        for (name, seeds) in &sets {
            localization_records(ext, name, seeds, caps, &mut report)?;
        }
    }

    // Element classification.
    let classify = run_classify(ext)?;
    report.records.extend(classify.records);

    // Ideal transfer.
    let ideals = run_ideals(ext, caps)?;
    report.records.extend(ideals.records);

    // Gradings.
    for (name, monoid) in [
        ("grading-truncated", GradingMonoid::N0Truncated),
        ("grading-mod", GradingMonoid::ZMod),
        ("grading-gamma", GradingMonoid::Gamma),
    ] {
        match ext.grading(monoid) {
            Ok(g) => report.push(
                CheckRecord::from_outcome(
                    name,
                    "homogeneous components multiply into the component of the combined \
                     grade and jointly span the ring",
                    g.closure_ok,
                    g.witness.clone().unwrap_or_default(),
                )
                .with_note(format!("component sizes: {:?}", g.component_sizes)),
            ),
            Err(Error::HypothesisNotMet(m)) => {
                report.push(CheckRecord::skipped(
                    name,
                    "homogeneous components multiply into the component of the combined \
                     grade and jointly span the ring",
                    m,
                ));
            }
            Err(e) => return Err(Abort::from(e)),
        }
    }

    // Homogeneity classes and ideal arithmetic.
    let named = named_selectors(doc)?;
    let selectors: Vec<(String, ClassSelector)> = if named.is_empty() {
        vec![
            ("regular".to_string(), ClassSelector::Regular),
            ("pi0-zero".to_string(), ClassSelector::Pi0Zero),
            ("all".to_string(), ClassSelector::All),
        ]
    } else {
        named
    };
    for (label, sel) in &selectors {
        report.push(class_record(ext, label, sel, caps.max_order)?);
    }
    let a = homogeneous_arith_check(ext, caps.max_order)?;
    report.push(
        CheckRecord::from_outcome(
            "arithmetic-formulas",
            "sum, intersection, product, and colon of homogeneous ideals follow the \
             componentwise formulas and stay homogeneous; the nilpotency radical of any \
             ideal is √Π₀(J) ⋉ M",
            a.all_ok(),
            a.witness.clone().unwrap_or_default(),
        )
        .with_note(format!(
            "ideals: {}, homogeneous: {}, pairs checked: {}",
            a.ideal_count, a.homogeneous_count, a.pairs_checked
        )),
    );

    // Ring-property consistency.
    let props = extension_properties(ext, caps.max_order)?;
    match (&props.chained_conditions, props.chained_agrees) {
        (Some(c), Some(agrees)) => {
            report.push(
                CheckRecord::from_outcome(
                    "chained-transfer",
                    "R⋉M is chained exactly when R is a chained ring, every M_i is \
                     divisible, and the cyclic submodules are totally ordered",
                    agrees,
                    c.witness.clone().unwrap_or_default(),
                )
                .with_note(format!(
                    "flattened chained: {}, conditions hold: {}",
                    props.flattened.chained,
                    c.all_hold()
                )),
            );
        }
        _ => report.push(CheckRecord::skipped(
            "chained-transfer",
            "R⋉M is chained exactly when R is a chained ring, every M_i is \
             divisible, and the cyclic submodules are totally ordered",
            "conditions not evaluated on this instance",
        )),
    }
    report.push(
        CheckRecord::from_outcome(
            "principal-ideal-consistency",
            "if R⋉M is a principal ideal ring then so is R, with each M_i cyclic of \
             matching annihilator structure",
            props.pir_consistent,
            props
                .flattened
                .pir_witness
                .clone()
                .unwrap_or_default(),
        )
        .with_note(format!(
            "flattened PIR: {}, base PIR: {}",
            props.flattened.pir, props.base.pir
        )),
    );
    report.push(
        CheckRecord::from_outcome(
            "zpi-consistency",
            "if every proper ideal of R⋉M is a product of primes then the same holds in R",
            props.zpi_consistent,
            props.flattened.zpi_witness.clone().unwrap_or_default(),
        )
        .with_note(format!(
            "flattened ZPI: {}, base ZPI: {}",
            props.flattened.zpi, props.base.zpi
        )),
    );
    report.push(
        CheckRecord::from_outcome(
            "pi-consistency",
            "if every proper principal ideal of R⋉M is a product of primes then the same \
             holds in R",
            props.pi_consistent,
            props.flattened.pi_witness.clone().unwrap_or_default(),
        )
        .with_note(format!(
            "flattened π-ring: {}, base π-ring: {}",
            props.flattened.pi_ring, props.base.pi_ring
        )),
    );
    report.push(
        CheckRecord::from_outcome(
            "cyclic-annihilator",
            "when R⋉M is a principal ideal ring, each M_i is cyclic with annihilator \
             determined by the preceding degrees",
            props.cyclic_annihilator.condition || !props.flattened.pir,
            props
                .cyclic_annihilator
                .witness
                .clone()
                .unwrap_or_default(),
        )
        .with_note(format!(
            "modules cyclic: {:?}",
            props.cyclic_annihilator.modules_cyclic
        )),
    );

    // Divisibility and factorization.
    let div = divisibility_suite(ext)?;
    report.records.extend(div.records);

    Ok(report)
}
