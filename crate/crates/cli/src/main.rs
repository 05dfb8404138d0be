//! `orthoalg`: validate, derive, enumerate congruences and ideals, and verify
//! the whole theory against the built-in catalog.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on input or
//! usage errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use orthoalg::catalog::{self, Payload};
use orthoalg::congruence::{
    all_congruences_bruteforce, check_d1, check_d2, congruence_lattice, is_congruence, kernel, kernel_collision,
    theta_from_kernel, D2Half, KernelError,
};
use orthoalg::format::{parse_ioa, parse_olat, serialize_ioa};
use orthoalg::ideals::{check_lemma_chain, is_ideal_by_terms, property_mp};
use orthoalg::implication::{check_ioa_identities, derive_bullet};
use orthoalg::ortholattice::validate_ortholattice;
use orthoalg::orthosemilattice::{check_overlap_consistency, upward_closure, validate_orthosemilattice};
use orthoalg::strong::{is_strong, StrongError};
use orthoalg::terms::{closed_under_term, is_ideal_term, Term};
use orthoalg::theorems::verify_entry;
use orthoalg::{Check, Counterexample, ImplicationTable, JoinOrder, Orthosemilattice, Partition, Report, Subset};
use orthoalg::{MAX_BRUTE_FORCE_SIZE, MAX_SUBSET_SWEEP_SIZE};

#[derive(Parser)]
#[command(name = "orthoalg", version, about = "Finite ortholattices and implication orthoalgebras")]
struct Cli {
    /// Seed for randomized sub-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// A `.olat` or `.ioa` file.
    #[arg(conflicts_with = "catalog", required_unless_present = "catalog")]
    path: Option<PathBuf>,
    /// Name of a built-in catalog entry.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Closure,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Run the validator matching the input kind.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Also decide strongness of an ortholattice.
        #[arg(long)]
        strong: bool,
    },
    /// Derive the implication table of a strong ortholattice or orthosemilattice.
    Derive {
        #[command(flatten)]
        input: Input,
        /// Restrict to the order filter generated by these elements (comma list).
        #[arg(long)]
        filter: Option<String>,
        /// Write the `.ioa` table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List congruences and kernels of an implication table.
    Congruences {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "closure")]
        method: Method,
    },
    /// Test subsets for being ideals.
    Ideals {
        #[command(flatten)]
        input: Input,
        /// Comma list of elements forming the subset to test.
        #[arg(long, group = "mode")]
        check: Option<String>,
        /// List every ideal.
        #[arg(long, group = "mode")]
        enumerate: bool,
        /// Test closure of every ideal under a term such as `(b x0 y0)`.
        #[arg(long, group = "mode")]
        term: Option<String>,
    },
    /// Run the full verification suite on catalog entries.
    VerifyTheorems {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        catalog: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// List the built-in catalog.
    List,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Accumulated output: free-form lines plus pass/fail checks.
#[derive(Default)]
struct RunReport {
    lines: Vec<String>,
    checks: usize,
    failures: usize,
}

impl RunReport {
    fn info(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn add(&mut self, report: &Report, labels: &[String]) {
        for c in &report.checks {
            self.checks += 1;
            if !c.passed() {
                self.failures += 1;
            }
        }
        self.lines.extend(report.render(labels).lines().map(str::to_owned));
    }

    fn check(&mut self, check: Check, labels: &[String]) {
        let mut r = Report::new();
        r.push(check);
        self.add(&r, labels);
    }

    fn finish(self, echo: &str) -> ExitCode {
        let status = if self.failures == 0 { "pass" } else { "fail" };
        let mut stdout = io::stdout().lock();
        let written = writeln!(stdout, "# {echo}")
            .and_then(|_| self.lines.iter().try_for_each(|l| writeln!(stdout, "{l}")))
            .and_then(|_| writeln!(stdout, "RESULT {status} checks={} failures={}", self.checks, self.failures))
            .and_then(|_| stdout.flush());
        if let Err(e) = written {
            if e.kind() != io::ErrorKind::BrokenPipe {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        ExitCode::from(if self.failures == 0 { 0 } else { 1 })
    }
}

fn load(input: &Input) -> Result<Payload, UsageError> {
    if let Some(name) = &input.catalog {
        return catalog::find(name)
            .map(|e| e.payload.clone())
            .ok_or_else(|| UsageError(format!("unknown catalog entry `{name}`")));
    }
    let path = input.path.as_ref().expect("clap requires path or catalog");
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let magic = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    let wrap = |e: orthoalg::format::FormatError| UsageError(format!("{}: {e}", path.display()));
    match magic {
        "ioa" => Ok(Payload::Implication(parse_ioa(&text).map_err(wrap)?)),
        _ => Ok(Payload::Ortholattice(parse_olat(&text).map_err(wrap)?)),
    }
}

fn parse_elements(list: &str, labels: &[String]) -> Result<Vec<usize>, UsageError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|tok| {
            match tok.parse::<usize>() {
                Ok(i) if i < labels.len() => Ok(i),
                Ok(i) => Err(UsageError(format!("element {i} out of range"))),
                Err(_) => labels
                    .iter()
                    .position(|l| l == tok)
                    .ok_or_else(|| UsageError(format!("unknown element `{tok}`"))),
            }
        })
        .collect()
}

fn implication_input(p: Payload) -> Result<ImplicationTable, UsageError> {
    match p {
        Payload::Implication(t) => Ok(t),
        other => Err(UsageError(format!("expected an implication table, got an {}", other.kind()))),
    }
}

fn describe_kernel_error(e: &KernelError, labels: &[String]) -> String {
    let l = |i: &usize| labels[*i].as_str();
    match e {
        KernelError::NotD1(x, y, z) => format!("(D1) fails at x={}, y={}, z={}", l(x), l(y), l(z)),
        KernelError::NotD2(x, y, z) => format!("(D2) fails at x={}, y={}, z={}", l(x), l(y), l(z)),
        KernelError::NotReflexive(x) => format!("not reflexive at {}", l(x)),
        KernelError::NotTransitive(x, y, z) => format!("not transitive at {}, {}, {}", l(x), l(y), l(z)),
        KernelError::NotCompatible(q) => {
            let names: Vec<&str> = q.iter().map(l).collect();
            format!("not compatible with • at {}", names.join(", "))
        }
        other => other.to_string(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_validate(input: &Input, strong: bool, out: &mut RunReport) -> Result<(), UsageError> {
    match load(input)? {
        Payload::Ortholattice(l) => {
            out.info(format!("ortholattice, n = {}", l.size()));
            out.add(&validate_ortholattice(&l), l.labels());
            if strong {
                let check = match is_strong(&l) {
                    Ok(_) => Check::pass("strong"),
                    Err(StrongError::NoWitness { p, element }) => Check::fail(
                        "strong",
                        Counterexample::Text(format!(
                            "[{}, 1] has no orthocomplementation ({} cannot be complemented)",
                            l.labels()[p],
                            l.labels()[element]
                        )),
                    ),
                    Err(e) => Check::fail("strong", Counterexample::Text(e.to_string())),
                };
                out.check(check, l.labels());
            }
        }
        Payload::Orthosemilattice(s) => {
            out.info(format!("orthosemilattice, n = {}", s.size()));
            out.add(&validate_orthosemilattice(&s), s.labels());
            out.add(&check_overlap_consistency(&s), s.labels());
        }
        Payload::Implication(t) => {
            out.info(format!("implication table, n = {}", t.size()));
            out.add(&check_ioa_identities(&t), t.labels());
        }
    }
    Ok(())
}

fn cmd_derive(input: &Input, filter: Option<&str>, dest: Option<&PathBuf>, out: &mut RunReport) -> Result<(), UsageError> {
    let s: Orthosemilattice = match load(input)? {
        Payload::Ortholattice(l) => match is_strong(&l) {
            Ok(strong) => strong.to_orthosemilattice(),
            Err(StrongError::NoWitness { p, .. }) => {
                out.check(
                    Check::fail(
                        "strong",
                        Counterexample::Text(format!("not strong: [{}, 1] has no orthocomplementation", l.labels()[p])),
                    ),
                    l.labels(),
                );
                return Ok(());
            }
            Err(e) => {
                out.check(Check::fail("strong", Counterexample::Text(e.to_string())), l.labels());
                return Ok(());
            }
        },
        Payload::Orthosemilattice(s) => s,
        Payload::Implication(_) => return Err(UsageError("derive expects an ortholattice or orthosemilattice".into())),
    };
    let s = match filter {
        Some(list) => {
            let gens = parse_elements(list, s.labels())?;
            let f = upward_closure(&s, &gens);
            out.info(format!("order filter {}", f.display_with(s.labels())));
            s.filter(&f)?
        }
        None => s,
    };
    let t = derive_bullet(&s)?;
    let text = serialize_ioa(&t);
    match dest {
        Some(path) => {
            fs::write(path, &text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            out.info(format!("wrote {}", path.display()));
        }
        None => out.lines.extend(text.lines().map(str::to_owned)),
    }
    out.add(&check_ioa_identities(&t), t.labels());
    Ok(())
}

fn identities_gate(t: &ImplicationTable, out: &mut RunReport) -> bool {
    let ids = check_ioa_identities(t);
    let ok = ids.passed();
    if !ok {
        out.add(&ids, t.labels());
    } else {
        out.check(Check::pass("implication orthoalgebra identities"), t.labels());
    }
    ok
}

fn cmd_congruences(input: &Input, method: Method, out: &mut RunReport) -> Result<(), UsageError> {
    let t = implication_input(load(input)?)?;
    let n = t.size();
    if matches!(method, Method::Brute | Method::Both) && n > MAX_BRUTE_FORCE_SIZE {
        return Err(UsageError(format!(
            "brute-force enumeration is limited to {MAX_BRUTE_FORCE_SIZE} elements, input has {n}"
        )));
    }
    if !identities_gate(&t, out) {
        return Ok(());
    }
    let labels = t.labels().to_vec();
    let list: Vec<Partition> = match method {
        Method::Brute => all_congruences_bruteforce(&t)?,
        Method::Closure | Method::Both => congruence_lattice(&t),
    };
    for (k, p) in list.iter().enumerate() {
        out.info(format!(
            "congruence {k}: {}  kernel {}",
            p.display_with(&labels),
            kernel(&t, p).display_with(&labels)
        ));
    }
    let bad = list.iter().find(|p| is_congruence(&t, p).is_err());
    out.check(
        Check::expect(format!("{} congruences, all compatible with •", list.len()), bad.is_none(), || {
            bad.map(|p| p.display_with(&labels).to_string()).unwrap_or_default()
        }),
        &labels,
    );
    if let Method::Both = method {
        let brute = all_congruences_bruteforce(&t)?;
        out.check(
            Check::expect("brute force and closure agree", brute == list, || {
                format!("{} vs {} congruences", brute.len(), list.len())
            }),
            &labels,
        );
    }
    let collision = kernel_collision(&t, &list);
    out.check(
        Check::expect("kernel map injective", collision.is_none(), || {
            let (p, q) = collision.clone().unwrap();
            format!("{} and {}", p.display_with(&labels), q.display_with(&labels))
        }),
        &labels,
    );
    Ok(())
}

fn cmd_ideals(
    input: &Input,
    check: Option<&str>,
    enumerate: bool,
    term: Option<&str>,
    out: &mut RunReport,
) -> Result<(), UsageError> {
    let t = implication_input(load(input)?)?;
    let labels = t.labels().to_vec();
    let n = t.size();
    if let Some(list) = check {
        let d = Subset::from_elements(n, parse_elements(list, &labels)?).expect("indices checked");
        if !d.contains(t.one()) {
            return Err(UsageError(format!("subset must contain {}", labels[t.one()])));
        }
        if !identities_gate(&t, out) {
            return Ok(());
        }
        out.info(format!("subset {}", d.display_with(&labels)));
        let d1 = check_d1(&t, &d)?;
        let d2 = check_d2(&t, &d)?;
        let show = |c: &[usize; 3]| {
            let names: Vec<&str> = c.iter().map(|&e| labels[e].as_str()).collect();
            format!("x={}, y={}, z={}", names[0], names[1], names[2])
        };
        out.info(format!(
            "(D1): {}",
            d1.map_or("yes".to_string(), |c| format!("no ({})", show(&c)))
        ));
        out.info(format!(
            "(D2): {}",
            d2.map_or("yes".to_string(), |(c, half)| {
                let which = match half {
                    D2Half::Right => "(x•z)•(y•z)",
                    D2Half::Left => "(z•x)•(z•y)",
                };
                format!("no ({}, {which} ∉ D)", show(&c))
            })
        ));
        let by_terms = is_ideal_by_terms(&t, &d);
        out.info(format!(
            "closed under t1..t6: {}",
            by_terms
                .as_ref()
                .map_or_else(|f| format!("no (first failure: {})", f.name()), |_| "yes".into())
        ));
        let theta = theta_from_kernel(&t, &d);
        out.info(format!(
            "relation (A) is a congruence with kernel D: {}",
            theta
                .as_ref()
                .map_or_else(|e| format!("no ({})", describe_kernel_error(e, &labels)), |p| format!("yes, {}", p.display_with(&labels)))
        ));
        out.info(format!("modus ponens closed: {}", yes_no(property_mp(&t, &d).is_ok())));
        let verdicts = [d1.is_none() && d2.is_none(), by_terms.is_ok(), theta.is_ok()];
        out.info(format!("ideal: {}", yes_no(verdicts[0])));
        out.check(
            Check::expect("verdicts agree", verdicts.iter().all(|&v| v == verdicts[0]), || {
                format!("D1∧D2={}, terms={}, theta={}", verdicts[0], verdicts[1], verdicts[2])
            }),
            &labels,
        );
        out.add(&check_lemma_chain(&t, &d), &labels);
    } else if enumerate {
        if !identities_gate(&t, out) {
            return Ok(());
        }
        let kernels: Vec<Subset> = {
            let mut ks: Vec<Subset> = congruence_lattice(&t).iter().map(|p| kernel(&t, p)).collect();
            ks.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements().cmp(&b.elements())));
            ks
        };
        let ideals: Vec<Subset> = if n <= MAX_SUBSET_SWEEP_SIZE {
            let mut found: Vec<Subset> = (0..1u64 << n)
                .map(|m| Subset::from_mask(n, m))
                .filter(|s| s.contains(t.one()) && is_ideal_by_terms(&t, s).is_ok())
                .collect();
            found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements().cmp(&b.elements())));
            found
        } else {
            kernels.clone()
        };
        for (k, i) in ideals.iter().enumerate() {
            out.info(format!("ideal {k}: {}", i.display_with(&labels)));
        }
        if n <= MAX_SUBSET_SWEEP_SIZE {
            out.check(
                Check::expect(
                    format!("{} subsets closed under t1..t6 = congruence kernels", ideals.len()),
                    ideals == kernels,
                    || format!("{} ideals vs {} kernels", ideals.len(), kernels.len()),
                ),
                &labels,
            );
        } else {
            let bad = kernels.iter().find(|k| is_ideal_by_terms(&t, k).is_err());
            out.check(
                Check::expect(format!("{} kernels closed under t1..t6", kernels.len()), bad.is_none(), || {
                    bad.map(|k| k.display_with(&labels).to_string()).unwrap_or_default()
                }),
                &labels,
            );
        }
    } else if let Some(text) = term {
        let term = Term::parse(text)?;
        if !identities_gate(&t, out) {
            return Ok(());
        }
        out.info(format!("term {term} (x-arity {}, y-arity {})", term.x_arity(), term.y_arity()));
        match is_ideal_term(&t, &term) {
            Err(xs) => {
                out.check(Check::fail("ideal term", Counterexample::Elements(xs)), &labels);
            }
            Ok(()) => {
                out.check(Check::pass("ideal term"), &labels);
                for p in congruence_lattice(&t) {
                    let k = kernel(&t, &p);
                    let res = closed_under_term(&t, &k, &term);
                    let name = format!("ideal {} closed under term", k.display_with(&labels));
                    out.check(
                        match res {
                            Ok(()) => Check::pass(name),
                            Err(f) => {
                                let mut es = f.xs;
                                es.extend(f.ys);
                                Check::fail(name, Counterexample::Elements(es))
                            }
                        },
                        &labels,
                    );
                }
            }
        }
    } else {
        return Err(UsageError("ideals needs one of --check, --enumerate, --term".into()));
    }
    Ok(())
}

fn cmd_verify(name: Option<&str>, all: bool, seed: u64, out: &mut RunReport) -> Result<(), UsageError> {
    let entries: Vec<&catalog::CatalogEntry> = if all {
        catalog::catalog().iter().collect()
    } else {
        let name = name.expect("clap requires catalog or all");
        vec![catalog::find(name).ok_or_else(|| UsageError(format!("unknown catalog entry `{name}`")))?]
    };
    for e in entries {
        out.info(format!("== {} ({}, n = {}) ==", e.name, e.payload.kind(), e.payload.size()));
        let report = verify_entry(e, seed);
        out.add(&report, e.payload.labels());
    }
    Ok(())
}

fn cmd_list(out: &mut RunReport) {
    for e in catalog::catalog() {
        out.info(format!(
            "{:<24} {:<17} n={:<3} {}",
            e.name,
            e.payload.kind(),
            e.payload.size(),
            e.provenance
        ));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::iter::once("orthoalg".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    let mut out = RunReport::default();
    let result = match &cli.command {
        Command::Validate { input, strong } => cmd_validate(input, *strong, &mut out),
        Command::Derive { input, filter, out: dest } => cmd_derive(input, filter.as_deref(), dest.as_ref(), &mut out),
        Command::Congruences { input, method } => cmd_congruences(input, *method, &mut out),
        Command::Ideals {
            input,
            check,
            enumerate,
            term,
        } => cmd_ideals(input, check.as_deref(), *enumerate, term.as_deref(), &mut out),
        Command::VerifyTheorems { catalog, all } => cmd_verify(catalog.as_deref(), *all, cli.seed, &mut out),
        Command::List => {
            cmd_list(&mut out);
            Ok(())
        }
    };
    match result {
        Ok(()) => out.finish(&echo),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
