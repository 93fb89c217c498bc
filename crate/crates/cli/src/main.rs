mod config;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use genus4::cartier::{a_number, cartier_matrix, is_supersingular_genus2, CartierMatrix};
use genus4::ff::is_prime;
use genus4::howe::{
    check_coprimality_lemma, check_order_lemmas, default_families, legendre_families,
    search_families, symbolic_cartier, verify_certificate, HoweCertificate, HoweFamily,
    SearchConfig, Strategy,
};
use genus4::legendre::{
    check_factorial_reflection, check_delta_identities, check_hasse_product, hasse_poly, j_invariant,
    legendre_to_short_weierstrass, supersingular_invariants, LegendreContext,
};
use genus4::{Elem, Field, UniPoly};
use rayon::prelude::*;

use config::{parse_strategy, FileConfig, Overrides, RunConfig};

/// Above this prime the both-sides expansion over `F_{p^2}` is skipped.
const HASSE_PRODUCT_MAX: u64 = 31;

#[derive(Parser, Debug)]
#[command(name = "genus4", version, about = "Supersingular Howe curves of genus 4 over small primes")]
struct Cli {
    /// TOML file with defaults for any run setting.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "GENUS4_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print H_p, its roots in F_{p^2} and the supersingular j-invariants.
    Hasse {
        #[arg(long)]
        p: u64,
    },
    /// Run the Legendre identity suite over a prime range.
    Identities {
        #[arg(long)]
        p_min: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
    },
    /// Run the symbolic order checks on the Howe family.
    Orders {
        #[arg(long)]
        p_min: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
        #[arg(long)]
        symbolic_cap: Option<u64>,
    },
    /// Cartier-Manin report for y^2 = f(x), coefficients constant first.
    Cartier {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        coeffs: Vec<i64>,
    },
    /// Search for supersingular Howe curves and write certificates.
    Search {
        /// Single prime; shorthand for --p-min P --p-max P.
        #[arg(long, conflicts_with_all = ["p_min", "p_max"])]
        p: Option<u64>,
        #[arg(long)]
        p_min: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, value_parser = parse_strategy)]
        strategy: Option<Strategy>,
        #[arg(long, env = "GENUS4_SEED")]
        seed: Option<u64>,
        #[arg(long)]
        symbolic_cap: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Restrict to one family A1,B1,A2,B2 over F_p.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1)]
        family: Option<Vec<i64>>,
    },
    /// Re-check every certificate in a file written by `search`.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A check ran and did not pass: exit 1.
    Check(String),
}

impl From<genus4::Error> for Failure {
    fn from(e: genus4::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("genus4: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("genus4: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path).map_err(Failure::Usage)?,
        None => FileConfig::default(),
    };
    let mut o = Overrides {
        worker_count: cli.workers,
        ..Overrides::default()
    };
    match cli.command {
        Command::Hasse { p } => {
            require_prime(p, 5)?;
            hasse(p)
        }
        Command::Identities { p_min, p_max } => {
            o.prime_min = p_min;
            o.prime_max = p_max;
            let cfg = RunConfig::resolve(o, file, (5, 101)).map_err(Failure::Usage)?;
            require_range(&cfg)?;
            with_pool(&cfg, || identities(&cfg))
        }
        Command::Orders {
            p_min,
            p_max,
            symbolic_cap,
        } => {
            o.prime_min = p_min;
            o.prime_max = p_max;
            o.symbolic_cap = symbolic_cap;
            let cfg = RunConfig::resolve(o, file, (5, 13)).map_err(Failure::Usage)?;
            require_range(&cfg)?;
            if cfg.prime_max > cfg.symbolic_cap {
                return Err(Failure::Usage(format!(
                    "p_max {} exceeds the symbolic cap {}",
                    cfg.prime_max, cfg.symbolic_cap
                )));
            }
            with_pool(&cfg, || orders(&cfg))
        }
        Command::Cartier { p, coeffs } => {
            require_prime(p, 3)?;
            cartier(p, &coeffs)
        }
        Command::Search {
            p,
            p_min,
            p_max,
            k_max,
            strategy,
            seed,
            symbolic_cap,
            out,
            family,
        } => {
            o.prime_min = p.or(p_min);
            o.prime_max = p.or(p_max);
            o.k_max = k_max;
            o.strategy = strategy;
            o.seed = seed;
            o.symbolic_cap = symbolic_cap;
            o.out_path = out;
            if let Some(p) = p {
                require_prime(p, 5)?;
            }
            let family = match family {
                None => None,
                Some(v) => Some(<[i64; 4]>::try_from(v).map_err(|v| {
                    Failure::Usage(format!("--family takes 4 coefficients, got {}", v.len()))
                })?),
            };
            let cfg = RunConfig::resolve(o, file, (5, 31)).map_err(Failure::Usage)?;
            require_range(&cfg)?;
            with_pool(&cfg, || search(&cfg, family))
        }
        Command::Verify { input } => verify(&input),
    }
}

fn require_prime(p: u64, min: u64) -> Outcome {
    if !is_prime(p) {
        return Err(Failure::Usage(format!("{p} is not a prime")));
    }
    if p < min {
        return Err(Failure::Usage(format!("p must be at least {min}, got {p}")));
    }
    Ok(())
}

fn require_range(cfg: &RunConfig) -> Outcome {
    if cfg.prime_min < 5 {
        return Err(Failure::Usage(format!(
            "prime_min must be at least 5, got {}",
            cfg.prime_min
        )));
    }
    if cfg.primes().is_empty() {
        return Err(Failure::Usage(format!(
            "no primes in {}..={}",
            cfg.prime_min, cfg.prime_max
        )));
    }
    Ok(())
}

fn with_pool<T: Send>(cfg: &RunConfig, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(cfg.worker_count).build() {
        Ok(pool) => pool.install(f),
        // A pool that cannot be built falls back to the global one.
        Err(_) => f(),
    }
}

fn fmt_elem(f: &Field, x: &Elem) -> String {
    match f.as_prime(x) {
        Some(v) => v.to_string(),
        None => {
            let c: Vec<String> = f.to_coeffs(x).iter().map(u64::to_string).collect();
            format!("[{}]", c.join(","))
        }
    }
}

fn fmt_poly(poly: &UniPoly, var: &str) -> String {
    let f = poly.field();
    let mut out = String::new();
    for (i, c) in poly.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let c = fmt_elem(f, c);
        match i {
            0 => out.push_str(&c),
            1 => write!(out, "{c}*{var}").unwrap(),
            _ => write!(out, "{c}*{var}^{i}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn fmt_matrix(m: &CartierMatrix) -> String {
    let e = |x: &Elem| fmt_elem(&m.field, x);
    format!("(({}, {}), ({}, {}))", e(&m.a), e(&m.b), e(&m.c), e(&m.d))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn hasse(p: u64) -> Outcome {
    let ctx = LegendreContext::new(p)?;
    let f2 = ctx.fp2();
    println!("p = {p}, e = {}", ctx.e());
    println!("H_p(t) = {}", fmt_poly(&hasse_poly(&ctx), "t"));
    let roots = supersingular_invariants(&ctx)?;
    println!("roots in F_{{{p}^2}} ({}):", roots.len());
    let mut js = Vec::new();
    for a in &roots {
        let (aa, bb) = legendre_to_short_weierstrass(f2, a)?;
        let j = j_invariant(f2, &aa, &bb)?;
        println!("  a = {:<12} j = {}", fmt_elem(f2, a), fmt_elem(f2, &j));
        js.push(f2.to_coeffs(&j));
    }
    js.sort();
    js.dedup();
    let js: Vec<String> = js
        .iter()
        .map(|c| fmt_elem(f2, &f2.from_coeffs(c).expect("re-encoding a field element")))
        .collect();
    println!("supersingular j-invariants ({}): {}", js.len(), js.join(" "));
    println!("F_{{{p}^2}} modulus: {:?}", f2.spec().modulus.unwrap_or_default());
    Ok(())
}

struct IdentityRow {
    p: u64,
    deltas: genus4::legendre::DeltaReport,
    reflection: bool,
    product: Option<bool>,
}

fn identities(cfg: &RunConfig) -> Outcome {
    let rows: Vec<Result<IdentityRow, genus4::Error>> = cfg
        .primes()
        .into_par_iter()
        .map(|p| {
            let ctx = LegendreContext::with_seed(p, cfg.seed ^ genus4::legendre::DEFAULT_SEED)?;
            let deltas = check_delta_identities(&ctx)?;
            let reflection = check_factorial_reflection(&ctx);
            let product = if p <= HASSE_PRODUCT_MAX {
                Some(check_hasse_product(&ctx)?)
            } else {
                None
            };
            Ok(IdentityRow {
                p,
                deltas,
                reflection,
                product,
            })
        })
        .collect();
    println!(
        "{:>5} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "p", "closed", "deriv", "linear", "coprime", "sqfree", "reflect", "product"
    );
    let mut failed = Vec::new();
    for row in rows {
        let row = row?;
        let r = row.deltas;
        let p32 = row.product.map_or("-", mark);
        println!(
            "{:>5} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
            row.p,
            mark(r.closed_forms),
            mark(r.derivative_identity),
            mark(r.linear_identity),
            mark(r.coprime),
            mark(r.hasse_squarefree),
            mark(row.reflection),
            p32
        );
        if !(r.all() && row.reflection && row.product.unwrap_or(true)) {
            failed.push(row.p);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("identity failures at p = {failed:?}")))
    }
}

fn family_label(fam: &HoweFamily) -> String {
    let f = fam.field();
    let c: Vec<String> = fam.coefficients().iter().map(|x| fmt_elem(f, x)).collect();
    format!("({})", c.join(","))
}

fn orders(cfg: &RunConfig) -> Outcome {
    let cap = cfg.symbolic_cap;
    let mut failed = 0usize;
    println!("{:>5}  {:<28} {}", "p", "family (A1,B1,A2,B2)", "order checks");
    for p in cfg.primes() {
        let fams = default_families(p)?;
        let reports: Vec<_> = fams
            .par_iter()
            .map(|fam| symbolic_cartier(fam, cap).and_then(|sc| check_order_lemmas(&sc)))
            .collect();
        for (fam, r) in fams.iter().zip(reports) {
            let r = r?;
            let status = if r.passed() {
                "pass".to_string()
            } else {
                failed += 1;
                format!("FAIL {:?}", r.failures())
            };
            println!("{p:>5}  {:<28} {status}", family_label(fam));
        }
        let e2s = legendre_families(p)?;
        let coprime: Vec<_> = e2s
            .par_iter()
            .map(|fam| check_coprimality_lemma(fam, cap))
            .collect::<Result<_, _>>()?;
        let bad = coprime.iter().filter(|ok| !**ok).count();
        failed += bad;
        println!(
            "{p:>5}  coprimality over {} supersingular E2: {}",
            e2s.len(),
            mark(bad == 0)
        );
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failed} order check(s) failed")))
    }
}

fn cartier(p: u64, coeffs: &[i64]) -> Outcome {
    let f = Field::prime(p)?;
    let poly = UniPoly::from_i64s(&f, coeffs);
    let m = cartier_matrix(&poly).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("f(x) = {}", fmt_poly(&poly, "x"));
    println!("M = {}", fmt_matrix(&m));
    println!("M M^sigma = {}", fmt_matrix(&m.mm_sigma()));
    println!("supersingular: {}", is_supersingular_genus2(&m));
    println!("superspecial: {}", m.is_zero());
    println!("a-number: {}", a_number(&m));
    Ok(())
}

fn search(cfg: &RunConfig, family: Option<[i64; 4]>) -> Outcome {
    let scfg = SearchConfig {
        strategy: cfg.strategy,
        k_max: cfg.k_max,
        seed: cfg.seed,
        symbolic_cap: cfg.symbolic_cap,
    };
    let mut all: Vec<HoweCertificate> = Vec::new();
    let mut missing = Vec::new();
    println!(
        "{:>5} {:>9} {:>3} {:>6} {:>9} {:>9}",
        "p", "strategy", "k", "certs", "verified", "seconds"
    );
    for p in cfg.primes() {
        let start = Instant::now();
        let fams = match family {
            Some(c) => {
                let c = c.map(|v| v.rem_euclid(p as i64) as u64);
                vec![HoweFamily::from_u64(p, c).map_err(|e| Failure::Usage(e.to_string()))?]
            }
            None => default_families(p)?,
        };
        let outcome = search_families(&fams, &scfg)?;
        for d in &outcome.diagnostics {
            eprintln!("p = {p}: {d}");
        }
        let verified = outcome
            .certificates
            .par_iter()
            .map(|c| verify_certificate(c).map(|r| r.ok))
            .collect::<Result<Vec<bool>, _>>()?
            .into_iter()
            .filter(|ok| *ok)
            .count();
        let n = outcome.certificates.len();
        println!(
            "{:>5} {:>9} {:>3} {:>6} {:>9} {:>9.2}",
            p,
            cfg.strategy.resolve(p, cfg.symbolic_cap).name(),
            outcome.k.map_or("-".to_string(), |k| k.to_string()),
            n,
            verified,
            start.elapsed().as_secs_f64()
        );
        if n == 0 || verified != n {
            missing.push(p);
        }
        all.extend(outcome.certificates);
    }
    let mut json = serde_json::to_string_pretty(&all)
        .map_err(|e| Failure::Check(format!("cannot encode certificates: {e}")))?;
    json.push('\n');
    std::fs::write(&cfg.out_path, json).map_err(|e| {
        Failure::Check(format!("cannot write {}: {e}", cfg.out_path.display()))
    })?;
    println!("wrote {} certificate(s) to {}", all.len(), cfg.out_path.display());
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "no verified certificate up to k_max = {} for p = {missing:?}",
            cfg.k_max
        )))
    }
}

fn verify(path: &PathBuf) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let certs: Vec<HoweCertificate> = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))?;
    if certs.is_empty() {
        return Err(Failure::Check(format!("{} holds no certificates", path.display())));
    }
    println!(
        "{:>4} {:>5} {:>3} {:>6} {:>7} {}",
        "#", "p", "k", "a(C)", "a(H)", "result"
    );
    let mut bad = 0usize;
    for (i, cert) in certs.iter().enumerate() {
        let r = verify_certificate(cert)
            .map_err(|e| Failure::Usage(format!("certificate {i}: {e}")))?;
        let result = match r.reason {
            None if r.ok => "pass".to_string(),
            reason => {
                bad += 1;
                format!("FAIL {reason:?}")
            }
        };
        println!(
            "{:>4} {:>5} {:>3} {:>6} {:>7} {}",
            i,
            cert.p,
            cert.extension_degree(),
            r.a_number_c,
            r.a_number_howe,
            result
        );
    }
    if bad == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{bad} of {} certificate(s) failed", certs.len())))
    }
}
