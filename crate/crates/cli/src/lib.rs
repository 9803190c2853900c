//! Command-line workbench over the tree-algebra library: tree arithmetic,
//! normalization, basis generation, isomorphism roundtrips and the full
//! verification suite. Every invocation is deterministic: identical
//! arguments produce byte-identical output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use as2trees::algebra::TreeAlgebra;
use as2trees::basis::{gen_multilinear_basis, gen_word_monomials};
use as2trees::bridge::{decompose_generation, multilinear_rank_check};
use as2trees::checks::{
    check_beta_eqs, check_character_duality, check_funcas, check_koszul_gf, check_narayana_eq,
    check_sl2_corollary, mutation_sanity,
};
use as2trees::combinat::catalan;
use as2trees::error::Error;
use as2trees::expr::{Expr, ExprLinComb};
use as2trees::lincomb::parse_lincomb;
use as2trees::products::{coproduct_lin, ProductOp, TreeLinComb};
use as2trees::report::Report;
use as2trees::rewrite::normal_form;
use as2trees::tree::{enumerate_trees, visit_trees, Alphabet, PlanarTree};
use as2trees::verify::{run_suite, Params, Suite};

/// Outcome of one CLI run: exit code plus captured output streams.
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(name = "as2trees", version, about = "Workbench for the planar-rooted-tree algebra with two compatible products", disable_help_subcommand = true)]
struct Cli {
    /// Output format for results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct AlphaArgs {
    /// Use the alphabet x1..xk.
    #[arg(long, conflicts_with = "alphabet")]
    labels: Option<usize>,
    /// Comma-separated label names, in order.
    #[arg(long, value_delimiter = ',')]
    alphabet: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Number of labeled planar rooted trees of a degree (cross-checked
    /// against exhaustive enumeration for small degrees).
    CountTrees {
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    /// List all trees of a degree in canonical order.
    EnumTrees {
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    /// Multiply two tree combinations with *1 or *2.
    Mul {
        #[arg(long)]
        op: u8,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// Treat the degree-0 tree () as a two-sided unit.
        #[arg(long)]
        unital: bool,
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    /// Branch-splitting coproduct of a tree.
    Coproduct {
        #[arg(long)]
        tree: String,
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    /// Normal form of an expression combination.
    Nf {
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    /// Monomial bases: the multilinear basis or word monomials of a degree.
    Basis {
        #[arg(long, conflicts_with = "words")]
        multilinear: bool,
        #[arg(long)]
        words: bool,
        /// Degree for --words.
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    /// Basis coordinates of a homogeneous tree combination.
    ToBasis {
        #[arg(long)]
        tree: String,
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    /// Express a tree through degree-1 generators by the grafting
    /// recursion (fueled; may exhaust).
    Decompose {
        #[arg(long)]
        tree: String,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    /// Multilinear rank check at a given arity.
    Rank {
        #[arg(long)]
        n: usize,
    },
    /// Series and character identity checks.
    Series {
        #[arg(long, value_enum)]
        check: SeriesCheck,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run verification suites; exit 0 iff everything passes.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesCheck {
    Funcas,
    Narayana,
    Koszul,
    Beta,
    Duality,
    Sl2,
    Mutation,
}

/// Runs the workbench on an argument vector. Payload flags accept `-` to
/// read their value from `stdin`.
pub fn run(argv: &[String], stdin: Option<&str>) -> RunOutput {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version through the error path
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                RunOutput { code: 2, stdout: String::new(), stderr: rendered }
            } else {
                RunOutput { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli, stdin) {
        Ok((code, stdout)) => RunOutput { code, stdout, stderr: String::new() },
        Err(e) => {
            let code = match &e {
                Error::Parse { .. }
                | Error::UnknownLabel(_)
                | Error::DuplicateLabel(_)
                | Error::BadLabel(_)
                | Error::OutOfRange(_) => 2,
                _ => 1,
            };
            RunOutput { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn payload<'a>(flag_value: &'a str, stdin: Option<&'a str>) -> Result<&'a str, Error> {
    if flag_value == "-" {
        stdin.ok_or_else(|| Error::Parse { pos: 0, msg: "`-` given but no stdin".into() })
    } else {
        Ok(flag_value)
    }
}

fn alphabet_for(alpha: &AlphaArgs, payloads: &[&str]) -> Result<Alphabet, Error> {
    if let Some(names) = &alpha.alphabet {
        return Alphabet::new(names.clone());
    }
    if let Some(k) = alpha.labels {
        return Ok(Alphabet::numbered(k));
    }
    // infer from identifiers appearing in the payloads, sorted by name
    let mut names: Vec<String> = Vec::new();
    for text in payloads {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                names.push(text[start..i].to_string());
            } else {
                i += 1;
            }
        }
    }
    names.sort();
    names.dedup();
    if names.is_empty() {
        return Ok(Alphabet::numbered(1));
    }
    Alphabet::new(names)
}

fn parse_tree_lincomb(text: &str, alphabet: &Alphabet) -> Result<TreeLinComb, Error> {
    parse_lincomb(text, |cur| PlanarTree::parse_cursor(cur, alphabet))
}

fn parse_expr_lincomb(text: &str, alphabet: &Alphabet) -> Result<ExprLinComb, Error> {
    parse_lincomb(text, |cur| Expr::parse_cursor(cur, alphabet))
}

fn dispatch(cli: &Cli, stdin: Option<&str>) -> Result<(i32, String), Error> {
    let json_mode = cli.format == Format::Json;
    match &cli.cmd {
        Cmd::CountTrees { degree, alpha } => {
            let alphabet = alphabet_for(alpha, &[])?;
            let count = catalan(*degree as u64)
                * num_bigint::BigInt::from(alphabet.len()).pow(*degree as u32);
            if *degree <= 8 {
                let mut enumerated = 0usize;
                visit_trees(*degree, &alphabet, &mut |_| enumerated += 1);
                if num_bigint::BigInt::from(enumerated) != count {
                    return Err(Error::SolveFailure(format!(
                        "enumeration found {enumerated} trees, formula says {count}"
                    )));
                }
            }
            let out = if json_mode {
                doc(json!({
                    "degree": degree,
                    "alphabet": alphabet.names(),
                    "count": count.to_string(),
                }))
            } else {
                format!("{count}\n")
            };
            Ok((0, out))
        }
        Cmd::EnumTrees { degree, alpha } => {
            let alphabet = alphabet_for(alpha, &[])?;
            let trees = enumerate_trees(*degree, &alphabet);
            let out = if json_mode {
                doc(json!({
                    "degree": degree,
                    "trees": trees.iter().map(|t| t.render()).collect::<Vec<_>>(),
                }))
            } else {
                let mut s: String =
                    trees.iter().map(|t| t.render()).collect::<Vec<_>>().join("\n");
                s.push('\n');
                s
            };
            Ok((0, out))
        }
        Cmd::Mul { op, lhs, rhs, unital, alpha } => {
            let lhs_text = payload(lhs, stdin)?;
            let rhs_text = payload(rhs, stdin)?;
            let alphabet = alphabet_for(alpha, &[lhs_text, rhs_text])?;
            let op = ProductOp::from_id(*op)?;
            let x = parse_tree_lincomb(lhs_text, &alphabet)?;
            let y = parse_tree_lincomb(rhs_text, &alphabet)?;
            let mut alg = TreeAlgebra::new(&alphabet);
            let product = alg.star_lin(op, &x, &y, *unital)?;
            let out = if json_mode { doc(product.to_json("tree")) } else { line(product.render()) };
            Ok((0, out))
        }
        Cmd::Coproduct { tree, alpha } => {
            let text = payload(tree, stdin)?;
            let alphabet = alphabet_for(alpha, &[text])?;
            let x = parse_tree_lincomb(text, &alphabet)?;
            let delta = coproduct_lin(&x);
            let out = if json_mode { doc(delta.to_json("pair")) } else { line(delta.render()) };
            Ok((0, out))
        }
        Cmd::Nf { expr, alpha } => {
            let text = payload(expr, stdin)?;
            let alphabet = alphabet_for(alpha, &[text])?;
            let x = parse_expr_lincomb(text, &alphabet)?;
            let nf = normal_form(&x);
            let out = if json_mode { doc(nf.to_json("expr")) } else { line(nf.render()) };
            Ok((0, out))
        }
        Cmd::Basis { multilinear, words, degree, alpha } => {
            let alphabet = alphabet_for(alpha, &[])?;
            let monomials = if *words {
                let degree = degree.ok_or_else(|| {
                    Error::OutOfRange("--words needs --degree".to_string())
                })?;
                gen_word_monomials(degree, &alphabet)
            } else {
                // --multilinear is the default mode
                let _ = multilinear;
                gen_multilinear_basis(&alphabet)
            };
            let out = if json_mode {
                doc(json!({
                    "monomials": monomials.iter().map(|m| m.render()).collect::<Vec<_>>(),
                    "count": monomials.len(),
                }))
            } else {
                let mut s: String =
                    monomials.iter().map(|m| m.render()).collect::<Vec<_>>().join("\n");
                s.push('\n');
                s
            };
            Ok((0, out))
        }
        Cmd::ToBasis { tree, alpha } => {
            let text = payload(tree, stdin)?;
            let alphabet = alphabet_for(alpha, &[text])?;
            let x = parse_tree_lincomb(text, &alphabet)?;
            let mut alg = TreeAlgebra::new(&alphabet);
            let coords = alg.tree_to_basis(&x)?;
            let out =
                if json_mode { doc(coords.to_json("monomial")) } else { line(coords.render()) };
            Ok((0, out))
        }
        Cmd::Decompose { tree, fuel, alpha } => {
            let text = payload(tree, stdin)?;
            let alphabet = alphabet_for(alpha, &[text])?;
            let t = PlanarTree::parse(text, &alphabet)?;
            let mut alg = TreeAlgebra::new(&alphabet);
            let expr = decompose_generation(&mut alg, &t, *fuel)?;
            let out = if json_mode { doc(expr.to_json("expr")) } else { line(expr.render()) };
            Ok((0, out))
        }
        Cmd::Rank { n } => {
            if !(2..=5).contains(n) {
                return Err(Error::OutOfRange(format!("rank check covers n = 2..=5, got {n}")));
            }
            let check = multilinear_rank_check(*n);
            let report = Report::new("multilinear_rank")
                .field("n", *n)
                .field("expressions", check.expressions)
                .field("rank", check.rank)
                .field("expected", check.expected)
                .passing(check.pass);
            Ok(report_out(&report, json_mode))
        }
        Cmd::Series { check, order } => {
            let report = match check {
                SeriesCheck::Funcas => check_funcas(order.unwrap_or(8)),
                SeriesCheck::Narayana => check_narayana_eq(order.unwrap_or(12)),
                SeriesCheck::Koszul => check_koszul_gf(order.unwrap_or(12)),
                SeriesCheck::Beta => check_beta_eqs(order.unwrap_or(12)),
                SeriesCheck::Duality => check_character_duality(order.unwrap_or(8)),
                SeriesCheck::Sl2 => check_sl2_corollary(order.unwrap_or(8)),
                SeriesCheck::Mutation => mutation_sanity(order.unwrap_or(8)),
            };
            Ok(report_out(&report, json_mode))
        }
        Cmd::Verify { suite, max_degree, order } => {
            let suite = Suite::parse(suite)
                .ok_or_else(|| Error::OutOfRange(format!("unknown suite `{suite}`")))?;
            let mut params = Params::default();
            if let Some(d) = max_degree {
                params.max_degree = (*d).max(Params::default().max_degree);
            }
            if let Some(o) = order {
                params.char_order = (*o).max(Params::default().char_order);
                params.int_order = (*o).max(Params::default().int_order);
            }
            let reports = run_suite(suite, &params);
            let all_pass = reports.iter().all(|r| r.pass);
            let out = if json_mode {
                doc(json!({
                    "criteria": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    "pass": all_pass,
                }))
            } else {
                let mut s = String::new();
                for r in &reports {
                    s.push_str(&r.render_line());
                    s.push('\n');
                }
                let passed = reports.iter().filter(|r| r.pass).count();
                s.push_str(&format!("verify: {passed}/{} checks passed\n", reports.len()));
                s
            };
            Ok((if all_pass { 0 } else { 1 }, out))
        }
    }
}

fn doc(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn line(s: String) -> String {
    let mut s = s;
    s.push('\n');
    s
}

fn report_out(report: &Report, json_mode: bool) -> (i32, String) {
    let out = if json_mode { doc(report.to_json()) } else { line(report.render_table()) };
    (if report.pass { 0 } else { 1 }, out)
}
