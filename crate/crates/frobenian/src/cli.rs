//! Command-line surface: parsing of recurrence and polynomial literals,
//! subcommand dispatch, and JSON or text reporting. Exit codes: 0 success,
//! 1 invariant violation, 2 input error, 3 scale cap exceeded.

use crate::acceptance::run_all;
use crate::certificate::{certify, from_conjugacy_data, verify_empirical, EmpiricalReport, FrobenianCertificate};
use crate::density::{density_report, wreath_check, FiniteGroupTable};
use crate::exact_arith::{parse_rat, primes_up_to, rat_str, PolyQ, Rat};
use crate::frobenius_op::{frobenius_matrix, span_check};
use crate::number_field::{NFElement, NumberField};
use crate::recurrence::Recurrence;
use crate::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num::{One, Zero};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "frobenian", version, about = "Galois-theoretic certificates for linear recurrences")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized factoring; results are deterministic either way
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral data, class function values, and the annihilator of a recurrence
    Analyze {
        /// Recurrence as "c1,..,ck;a0,..,a(k-1)" with rational entries "p/q"
        #[arg(long)]
        rec: String,
    },
    /// Full certificate, optionally verified empirically against a prime sweep
    Certify {
        #[arg(long)]
        rec: String,
        /// Sweep bound X; primes p ≤ X are checked against the certificate
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Recurrence whose zero set realizes the given conjugacy classes
    Invert {
        /// Minimal polynomial of a generator, as a caret expression
        #[arg(long)]
        minpoly: String,
        /// Comma-separated class indices (0 is the identity class)
        #[arg(long)]
        classes: String,
    },
    /// Minimal annihilating polynomial of the residues and its rational roots
    Annihilator {
        #[arg(long)]
        rec: String,
    },
    /// Exact and empirical root and zero densities of a polynomial
    Density {
        /// Polynomial as a caret expression, e.g. "x^3-2"
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
    },
    /// Frobenius matrix at one prime, or entry sequences up to a bound
    Frobmatrix {
        #[arg(long)]
        minpoly: String,
        #[arg(long, conflicts_with = "limit")]
        prime: Option<u64>,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Verify the span correspondence between matrix entries and residues
    Spancheck {
        #[arg(long)]
        rec: String,
        #[arg(long, default_value_t = 1_000)]
        limit: u64,
    },
    /// Centralizer count in the wreath extension against the quantitative bound
    Wreath {
        /// Built-in group name (C2, C3, S3) or a path to a table file
        #[arg(long)]
        group: String,
        #[arg(long)]
        r: u32,
    },
    /// Run the acceptance suite and print one pass/fail line per criterion
    VerifyAll,
}

/// Parse argv, dispatch, and map errors to exit codes.
pub fn run<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help and --version by "erroring" with exit 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::Input(_)
                | Error::NotPrime(_)
                | Error::ZeroPolynomial
                | Error::FieldMismatch => 2,
                Error::DegreeCap { .. } | Error::BudgetExceeded(_) => 3,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Analyze { rec } => analyze(&parse_recurrence(rec)?, cli.format),
        Command::Certify { rec, limit } => {
            certify_cmd(&parse_recurrence(rec)?, *limit, cli.format)
        }
        Command::Invert { minpoly, classes } => {
            invert(&parse_poly(minpoly)?, &parse_indices(classes)?, cli.format)
        }
        Command::Annihilator { rec } => annihilator_cmd(&parse_recurrence(rec)?, cli.format),
        Command::Density { poly, limit } => {
            let rep = density_report(&parse_poly(poly)?, *limit)?;
            emit(&rep, cli.format, |r| {
                format!(
                    "root set {}/{} (density {}), zero set {}/{} (density {}); \
                     empirical root {} and zero {} over {} primes; witness {:?}",
                    r.s1_size,
                    r.group_order,
                    r.s1_density,
                    r.s2_size,
                    r.group_order,
                    r.s2_density,
                    r.empirical_root_density,
                    r.empirical_zero_density,
                    r.primes_checked,
                    r.strict_gap_witness
                )
            })
        }
        Command::Frobmatrix { minpoly, prime, limit } => {
            frobmatrix(&parse_poly(minpoly)?, *prime, *limit, cli.format)
        }
        Command::Spancheck { rec, limit } => {
            let g = parse_recurrence(rec)?.spectral_data()?.class_function()?;
            let primes = primes_up_to(*limit);
            let rep = span_check(&g, &primes)?;
            emit(&rep, cli.format, |r| {
                format!(
                    "{} primes requested, {} good; forward checked {}, converse {}; skipped {:?}",
                    r.primes_requested, r.good_primes, r.forward_checked, r.converse_checked, r.skipped
                )
            })
        }
        Command::Wreath { group, r } => {
            let table = match group.as_str() {
                "C2" | "C3" | "S3" => FiniteGroupTable::named(group)?,
                path => group_from_file(path)?,
            };
            let rep = wreath_check(&table, *r)?;
            emit(&rep, cli.format, |w| {
                format!(
                    "{} of {} elements satisfy the criterion (bound {}); {} failures (bound {}); {}",
                    w.satisfying,
                    w.total,
                    w.lower_bound,
                    w.failures,
                    w.failure_bound,
                    if w.pass { "pass" } else { "fail" }
                )
            })
        }
        Command::VerifyAll => {
            let outcomes = run_all();
            let mut ok = true;
            for o in &outcomes {
                println!(
                    "criterion {} ({}): {} [{}]",
                    o.index,
                    o.name,
                    if o.pass { "PASS" } else { "FAIL" },
                    o.details
                );
                ok &= o.pass;
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    order: usize,
    characteristic_polynomial: String,
    splitting_field_min_poly: String,
    group_order: usize,
    class_sizes: Vec<usize>,
    class_values: Vec<Vec<String>>,
    eigenvalue_pairs: Vec<(Vec<String>, Vec<String>)>,
    annihilator: String,
}

fn analyze(r: &Recurrence, format: Format) -> Result<i32> {
    let spectral = r.spectral_data()?;
    let g = spectral.class_function()?;
    let group = &spectral.group;
    let report = AnalyzeReport {
        order: r.order(),
        characteristic_polynomial: r.char_poly().to_string(),
        splitting_field_min_poly: group.field().min_poly().to_string(),
        group_order: group.order(),
        class_sizes: (0..group.class_count())
            .map(|c| group.class_members(c).len())
            .collect(),
        class_values: g.class_values().iter().map(coords_of).collect(),
        eigenvalue_pairs: spectral
            .pairs
            .iter()
            .map(|(lam, b)| (coords_of(lam), coords_of(b)))
            .collect(),
        annihilator: g.annihilator().to_string(),
    };
    emit(&report, format, |a| {
        format!(
            "order {}, splitting field of degree {}, {} classes; annihilator {}",
            a.order,
            a.group_order,
            a.class_sizes.len(),
            a.annihilator
        )
    })
}

#[derive(Serialize)]
struct CertifyReport {
    certificate: FrobenianCertificate,
    empirical: Option<EmpiricalReport>,
}

fn certify_cmd(r: &Recurrence, limit: Option<u64>, format: Format) -> Result<i32> {
    let certified = certify(r)?;
    let empirical = match limit {
        Some(x) => Some(verify_empirical(&certified, x)?),
        None => None,
    };
    let report = CertifyReport {
        certificate: certified.certificate,
        empirical,
    };
    emit(&report, format, |c| {
        let mut line = format!(
            "bound {}, density {}, exceptional primes {:?}",
            c.certificate.exceptional_bound,
            c.certificate.density,
            c.certificate.exceptional_primes
        );
        if let Some(e) = &c.empirical {
            line.push_str(&format!(
                "; sweep to {}: {} members among {} primes, {} mismatches at or below the bound",
                e.limit, e.members_found, e.primes_checked, e.mismatches_at_or_below_bound
            ));
        }
        line
    })
}

#[derive(Serialize)]
struct InvertReport {
    recurrence: String,
    coeffs: Vec<String>,
    init: Vec<String>,
}

fn invert(minpoly: &PolyQ, classes: &[usize], format: Format) -> Result<i32> {
    let field = NumberField::new(minpoly)?;
    let r = from_conjugacy_data(&field, classes)?;
    let report = InvertReport {
        recurrence: recurrence_literal(&r),
        coeffs: r.coeffs().iter().map(rat_str).collect(),
        init: r.init().iter().map(rat_str).collect(),
    };
    emit(&report, format, |i| i.recurrence.clone())
}

#[derive(Serialize)]
struct AnnihilatorReport {
    annihilator: String,
    rational_roots: Vec<String>,
    identity_value: String,
}

fn annihilator_cmd(r: &Recurrence, format: Format) -> Result<i32> {
    let g = r.spectral_data()?.class_function()?;
    let f = g.annihilator();
    let id_value = g
        .value_at(0)
        .as_rational()
        .ok_or_else(|| Error::Invariant("identity value is not rational".into()))?;
    let roots = rational_roots(&f)?;
    let report = AnnihilatorReport {
        annihilator: f.to_string(),
        rational_roots: roots.iter().map(rat_str).collect(),
        identity_value: rat_str(&id_value),
    };
    emit(&report, format, |a| {
        format!(
            "annihilator {}; rational roots [{}]; value at the identity {}",
            a.annihilator,
            a.rational_roots.join(", "),
            a.identity_value
        )
    })
}

#[derive(Serialize)]
struct FrobMatrixReport {
    p: u64,
    ramified: bool,
    entries: Option<Vec<Vec<String>>>,
    order: Option<usize>,
}

fn frobmatrix(
    minpoly: &PolyQ,
    prime: Option<u64>,
    limit: Option<u64>,
    format: Format,
) -> Result<i32> {
    let field = NumberField::new(minpoly)?;
    let primes = match (prime, limit) {
        (Some(p), None) => vec![p],
        (None, Some(x)) => primes_up_to(x),
        _ => {
            return Err(Error::Input(
                "pass exactly one of --prime and --limit".into(),
            ))
        }
    };
    let mut reports = Vec::with_capacity(primes.len());
    for p in primes {
        match frobenius_matrix(&field, p) {
            Ok(m) => {
                let n = m.dim();
                let rows = (0..n)
                    .map(|i| (0..n).map(|j| m.entry(i, j).to_string()).collect())
                    .collect();
                reports.push(FrobMatrixReport {
                    p,
                    ramified: false,
                    entries: Some(rows),
                    order: m.order(),
                });
            }
            Err(Error::Ramified(_)) => reports.push(FrobMatrixReport {
                p,
                ramified: true,
                entries: None,
                order: None,
            }),
            Err(e) => return Err(e),
        }
    }
    emit(&reports, format, |rs| {
        rs.iter()
            .map(|r| match &r.entries {
                Some(rows) => format!(
                    "p = {}: [{}], order {:?}",
                    r.p,
                    rows.iter()
                        .map(|row| row.join(" "))
                        .collect::<Vec<_>>()
                        .join("; "),
                    r.order
                ),
                None => format!("p = {}: ramified", r.p),
            })
            .collect::<Vec<_>>()
            .join("\n")
    })
}

fn emit<T: Serialize>(value: &T, format: Format, text: impl Fn(&T) -> String) -> Result<i32> {
    match format {
        Format::Json => {
            let s = serde_json::to_string_pretty(value)
                .map_err(|e| Error::Invariant(format!("serialization failed: {}", e)))?;
            println!("{}", s);
        }
        Format::Text => println!("{}", text(value)),
    }
    Ok(0)
}

fn coords_of(v: &NFElement) -> Vec<String> {
    v.coords().iter().map(rat_str).collect()
}

fn recurrence_literal(r: &Recurrence) -> String {
    let cs: Vec<String> = r.coeffs().iter().map(rat_str).collect();
    let is: Vec<String> = r.init().iter().map(rat_str).collect();
    format!("{};{}", cs.join(","), is.join(","))
}

/// Rational roots of f, one per distinct linear factor over Q.
fn rational_roots(f: &PolyQ) -> Result<Vec<Rat>> {
    let mut roots = Vec::new();
    for (factor, _) in crate::exact_arith::factor_over_q(f)? {
        let m = factor.monic();
        if m.degree() == 1 {
            roots.push(-m.coeff(0));
        }
    }
    roots.sort();
    Ok(roots)
}

/// Parse "c1,..,ck;a0,..,a(k-1)" into a recurrence.
pub fn parse_recurrence(s: &str) -> Result<Recurrence> {
    let (cs, is) = s
        .split_once(';')
        .ok_or_else(|| Error::Input(format!("recurrence {:?} lacks the ';' separator", s)))?;
    let parse_list = |part: &str| -> Result<Vec<Rat>> {
        part.split(',')
            .map(|t| parse_rat(t.trim()))
            .collect()
    };
    Recurrence::new(parse_list(cs)?, parse_list(is)?)
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("bad class index {:?}", t)))
        })
        .collect()
}

/// Parse a caret polynomial expression such as "x^3-2" or "1/2x^2+3x-1".
pub fn parse_poly(s: &str) -> Result<PolyQ> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Input("empty polynomial".into()));
    }
    // split into signed terms
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        if !(ch == '+' && cur.is_empty() && i > 0) {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    let mut coeffs: Vec<Rat> = Vec::new();
    for term in &terms {
        let (coeff, exp) = parse_term(term)?;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, Rat::zero());
        }
        coeffs[exp] += coeff;
    }
    let p = PolyQ::new(coeffs);
    if p.is_zero() {
        return Err(Error::Input(format!("polynomial {:?} is zero", s)));
    }
    Ok(p)
}

fn parse_term(term: &str) -> Result<(Rat, usize)> {
    let bad = || Error::Input(format!("bad polynomial term {:?}", term));
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-Rat::one(), rest),
        None => (Rat::one(), term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return Err(bad());
    }
    match body.split_once('x') {
        None => Ok((sign * parse_rat(body)?, 0)),
        Some((coef, pow)) => {
            let c = if coef.is_empty() {
                Rat::one()
            } else {
                parse_rat(coef.trim_end_matches('*'))?
            };
            let exp = match pow.strip_prefix('^') {
                Some(e) => e.parse::<usize>().map_err(|_| bad())?,
                None if pow.is_empty() => 1,
                None => return Err(bad()),
            };
            Ok((sign * c, exp))
        }
    }
}

/// Read a group multiplication table from a file: one row per line,
/// whitespace-separated 0-based indices.
fn group_from_file(path: &str) -> Result<FiniteGroupTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read group table {:?}: {}", path, e)))?;
    let table: Vec<Vec<usize>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Input(format!("bad table entry {:?}", t)))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    FiniteGroupTable::from_table(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat_from_i64;

    #[test]
    fn recurrence_literals_round_trip() {
        let r = parse_recurrence("1,1;0,1").unwrap();
        assert_eq!(r.order(), 2);
        assert_eq!(recurrence_literal(&r), "1,1;0,1");
        let r2 = parse_recurrence("1/2, 1/2; 0, 1").unwrap();
        assert_eq!(r2.term_at(2), parse_rat("1/2").unwrap());
        assert!(parse_recurrence("1,1").is_err());
        assert!(parse_recurrence("1,x;0,1").is_err());
    }

    #[test]
    fn caret_polynomials() {
        assert_eq!(parse_poly("x^3-2").unwrap(), PolyQ::from_i64(&[-2, 0, 0, 1]));
        assert_eq!(parse_poly("x^2 + 1").unwrap(), PolyQ::from_i64(&[1, 0, 1]));
        assert_eq!(
            parse_poly("2x^2-3x+5").unwrap(),
            PolyQ::from_i64(&[5, -3, 2])
        );
        assert_eq!(
            parse_poly("1/2x^2 - x").unwrap(),
            PolyQ::new(vec![
                rat_from_i64(0),
                rat_from_i64(-1),
                parse_rat("1/2").unwrap()
            ])
        );
        assert_eq!(parse_poly("-x + x").err().is_some(), true);
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn exit_codes() {
        let run_args = |args: &[&str]| {
            run(std::iter::once("frobenian".to_string())
                .chain(args.iter().map(|s| s.to_string())))
        };
        assert_eq!(run_args(&["annihilator", "--rec", "1,1;0,1"]), 0);
        assert_eq!(run_args(&["annihilator", "--rec", "bogus"]), 2);
        assert_eq!(run_args(&["frobmatrix", "--minpoly", "x^2-5"]), 2);
        assert_eq!(
            run_args(&["frobmatrix", "--minpoly", "x^2-5", "--prime", "11"]),
            0
        );
        assert_eq!(run_args(&["wreath", "--group", "S3", "--r", "1"]), 0);
    }
}
