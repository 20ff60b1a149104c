//! Command-line front end: Hermite-form submatrices of structured
//! polynomial matrices, the bivariate DRL-to-lex change of order, and a
//! small structured-vs-dense benchmark.
//!
//! Reports are line-oriented `key: value` text on stdout (optionally
//! mirrored as JSON); with a fixed seed and inputs they are
//! byte-identical across runs. Exit codes: 0 success, 1 usage/parse
//! error, 2 Singular, 3 Fail — so Las Vegas retries are a shell loop on
//! exit code 3.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use shnf::bivar::{change_order, ChangeOrderOptions, ChangeOrderOutcome, DrlBasis, SamplePolicy};
use shnf::field::{Rng, Zp};
use shnf::hnfcore::{hermite_submatrix, Cert, HnfOutcome};
use shnf::modsolve::recommended_sample_size;
use shnf::polymat::{dense_hnf, triangular_rowspan_contains, IndexTuple, PolyMat};
use shnf::structured::{
    apply_displacement_poly, compress_poly, reconstruct_poly, DenseInverter, PolyGen,
};

#[derive(Parser)]
#[command(
    name = "shnf",
    version,
    about = "Hermite-form submatrices of structured polynomial matrices over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Leading principal (or index-selected) submatrix of the Hermite
    /// normal form of a matrix given densely or by displacement
    /// generators.
    HnfSubmatrix(HnfArgs),
    /// DRL-to-lex Groebner basis change of order for a zero-dimensional
    /// bivariate ideal.
    ChangeOrder(ChangeOrderArgs),
    /// Timing grid comparing the structured path against the dense HNF.
    Bench(BenchArgs),
}

#[derive(Args)]
struct HnfArgs {
    /// Input file: either a dense matrix (`rows cols` header) or a
    /// generator file (`n alpha d` header).
    #[arg(long)]
    input: PathBuf,
    /// Odd prime modulus.
    #[arg(long)]
    modulus: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Submatrix size m, selecting indices 0..m-1.
    #[arg(long, conflicts_with = "indices")]
    m: Option<usize>,
    /// Comma-separated index tuple, strictly increasing, starting at 0.
    #[arg(long)]
    indices: Option<String>,
    /// Upper bound on deg det(M); defaults to n*deg(M) for dense inputs.
    #[arg(long)]
    det_bound: Option<usize>,
    /// Upper bound on deg adj(M); defaults to (n-1)*deg(M) for dense
    /// inputs.
    #[arg(long)]
    adj_bound: Option<usize>,
    /// Declare the determinant bound exact (recorded in the report; the
    /// certificate is sharp under this declaration).
    #[arg(long)]
    exact_det: bool,
    /// Override the sample-set size.
    #[arg(long)]
    sample_size: Option<u64>,
    /// Append a dense-oracle comparison to the report.
    #[arg(long)]
    verify: bool,
    /// Write the submatrix to this file instead of inlining it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ChangeOrderArgs {
    /// Groebner basis file (`p ell` header).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Starting submatrix size (doubled on shortfall, capped at n).
    #[arg(long)]
    m_hint: Option<usize>,
    #[arg(long)]
    sample_size: Option<u64>,
    /// Append a membership/count check against the dense HNF oracle.
    #[arg(long)]
    verify: bool,
    /// Write the lex basis to this file instead of inlining it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated matrix sizes.
    #[arg(long, default_value = "8,16")]
    sizes: String,
    #[arg(long, default_value_t = 2)]
    alpha: usize,
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = 2147483647)]
    modulus: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::HnfSubmatrix(args) => cmd_hnf_submatrix(args),
        Cmd::ChangeOrder(args) => cmd_change_order(args),
        Cmd::Bench(args) => cmd_bench(args),
    }
}

fn parse_indices(n: usize, m: Option<usize>, indices: Option<&str>) -> Result<IndexTuple> {
    let idx: Vec<usize> = match (m, indices) {
        (Some(m), None) => (0..m).collect(),
        (None, Some(s)) => s
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| anyhow!("bad index {t:?}")))
            .collect::<Result<_>>()?,
        (None, None) => vec![0],
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    IndexTuple::new(idx, n).map_err(|e| anyhow!(e))
}

fn cmd_hnf_submatrix(args: HnfArgs) -> Result<i32> {
    let zp = Zp::new(args.modulus)?;
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let header_fields = text
        .lines()
        .next()
        .map(|l| l.split_whitespace().count())
        .unwrap_or(0);
    let (gen, dense, d_default, da_default) = match header_fields {
        2 => {
            let m = PolyMat::from_text(&zp, &text)?;
            if m.rows() != m.cols() {
                bail!("input matrix must be square");
            }
            let deg = m.max_deg().unwrap_or(0);
            let n = m.rows();
            let gen = compress_poly(&zp, &apply_displacement_poly(&zp, &m)?)?;
            (gen, Some(m), Some(n * deg), Some(n.saturating_sub(1) * deg))
        }
        3 => (PolyGen::from_text(&zp, &text)?, None, None, None),
        _ => bail!("unrecognized input header (want `rows cols` or `n alpha d`)"),
    };
    let n = gen.n();
    let j = parse_indices(n, args.m, args.indices.as_deref())?;
    let det_bound = args
        .det_bound
        .or(d_default)
        .ok_or_else(|| anyhow!("--det-bound is required for generator input"))?;
    let adj_bound = args
        .adj_bound
        .or(da_default)
        .ok_or_else(|| anyhow!("--adj-bound is required for generator input"))?;
    let delta = det_bound + adj_bound + 1;
    let s_size = match args.sample_size {
        Some(s) => s,
        None => {
            let rec = recommended_sample_size(n, delta, det_bound);
            if rec > zp.p() as u128 {
                bail!(
                    "field with {} elements is too small for the recommended sample set ({rec}); pass --sample-size",
                    zp.p()
                );
            }
            rec as u64
        }
    };

    let mut rng = Rng::new(args.seed);
    let out = hermite_submatrix(
        &zp,
        &gen,
        &j,
        det_bound,
        adj_bound,
        s_size,
        &DenseInverter,
        &mut rng,
    )?;

    let mut report = String::new();
    let mut jmap = serde_json::Map::new();
    let put = |report: &mut String,
               jmap: &mut serde_json::Map<String, serde_json::Value>,
               k: &str,
               v: String| {
        writeln!(report, "{k}: {v}").unwrap();
        jmap.insert(k.into(), json!(v));
    };
    put(&mut report, &mut jmap, "command", "hnf-submatrix".into());
    put(&mut report, &mut jmap, "modulus", zp.p().to_string());
    put(&mut report, &mut jmap, "seed", args.seed.to_string());
    put(&mut report, &mut jmap, "n", n.to_string());
    put(&mut report, &mut jmap, "alpha", gen.alpha().to_string());
    put(
        &mut report,
        &mut jmap,
        "indices",
        j.indices()
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    put(&mut report, &mut jmap, "det-bound", det_bound.to_string());
    put(&mut report, &mut jmap, "adj-bound", adj_bound.to_string());
    put(
        &mut report,
        &mut jmap,
        "exact-det",
        args.exact_det.to_string(),
    );
    put(&mut report, &mut jmap, "sample-size", s_size.to_string());
    put(&mut report, &mut jmap, "points-used", delta.to_string());

    let code = match out {
        HnfOutcome::Fail => {
            put(&mut report, &mut jmap, "status", "fail".into());
            3
        }
        HnfOutcome::Singular(points) => {
            put(&mut report, &mut jmap, "status", "singular".into());
            put(
                &mut report,
                &mut jmap,
                "witness-points",
                points
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            2
        }
        HnfOutcome::Ok(res) => {
            put(&mut report, &mut jmap, "status", "success".into());
            put(&mut report, &mut jmap, "branch", res.branch.to_string());
            put(
                &mut report,
                &mut jmap,
                "cert",
                match res.cert {
                    Cert::True => "true".into(),
                    Cert::Unknown => "unknown".into(),
                },
            );
            put(&mut report, &mut jmap, "mu", res.mu.to_text());
            if args.verify {
                let m_dense = match &dense {
                    Some(m) => m.clone(),
                    None => reconstruct_poly(&zp, &gen),
                };
                let verdict = match dense_hnf(&zp, &m_dense) {
                    Ok((h, _)) => {
                        let hjj = h.submatrix(j.indices(), j.indices());
                        if hjj == res.b {
                            "PASS".to_string()
                        } else if res.cert == Cert::Unknown {
                            "UNCERTIFIED-DIFFERS".to_string()
                        } else {
                            "MISMATCH".to_string()
                        }
                    }
                    Err(e) => format!("oracle-error: {e}"),
                };
                put(&mut report, &mut jmap, "verify", verdict);
            }
            let b_text = res.b.to_text();
            if let Some(path) = &args.out {
                std::fs::write(path, &b_text)
                    .with_context(|| format!("writing {}", path.display()))?;
                put(&mut report, &mut jmap, "b-file", path.display().to_string());
            } else {
                writeln!(report, "b:").unwrap();
                report.push_str(&b_text);
                jmap.insert("b".into(), json!(b_text));
            }
            0
        }
    };
    print!("{report}");
    if args.json {
        println!("{}", serde_json::Value::Object(jmap));
    }
    Ok(code)
}

fn cmd_change_order(args: ChangeOrderArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let (zp, gb) = DrlBasis::from_text(&text)?;
    let opts = ChangeOrderOptions {
        m_hint: args.m_hint,
        sample: match args.sample_size {
            Some(s) => SamplePolicy::Fixed(s),
            None => SamplePolicy::Recommended,
        },
    };
    let mut rng = Rng::new(args.seed);
    let out = change_order(&zp, &gb, &opts, &DenseInverter, &mut rng)?;

    let mut report = String::new();
    let mut jmap = serde_json::Map::new();
    let put = |report: &mut String,
               jmap: &mut serde_json::Map<String, serde_json::Value>,
               k: &str,
               v: String| {
        writeln!(report, "{k}: {v}").unwrap();
        jmap.insert(k.into(), json!(v));
    };
    put(&mut report, &mut jmap, "command", "change-order".into());
    put(&mut report, &mut jmap, "modulus", zp.p().to_string());
    put(&mut report, &mut jmap, "seed", args.seed.to_string());
    put(&mut report, &mut jmap, "ell", gb.len().to_string());

    let code = match out {
        ChangeOrderOutcome::Fail => {
            put(&mut report, &mut jmap, "status", "fail".into());
            3
        }
        ChangeOrderOutcome::Singular(points) => {
            put(&mut report, &mut jmap, "status", "singular".into());
            put(
                &mut report,
                &mut jmap,
                "witness-points",
                points
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            2
        }
        ChangeOrderOutcome::Ok { lex, report: rep } => {
            put(&mut report, &mut jmap, "status", "success".into());
            put(
                &mut report,
                &mut jmap,
                "staircase",
                rep.counts
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            put(&mut report, &mut jmap, "n", rep.n.to_string());
            put(
                &mut report,
                &mut jmap,
                "ideal-degree",
                rep.ideal_degree.to_string(),
            );
            put(&mut report, &mut jmap, "alpha", rep.alpha.to_string());
            put(&mut report, &mut jmap, "branch", rep.branch.to_string());
            put(
                &mut report,
                &mut jmap,
                "cert",
                match rep.cert {
                    Cert::True => "true".into(),
                    Cert::Unknown => "unknown".into(),
                },
            );
            put(
                &mut report,
                &mut jmap,
                "doublings",
                rep.doublings.to_string(),
            );
            put(&mut report, &mut jmap, "m-final", rep.m_final.to_string());
            put(
                &mut report,
                &mut jmap,
                "sample-size",
                rep.sample_size.to_string(),
            );
            if args.verify {
                let st = shnf::bivar::build_staircase(&gb)?;
                let m = shnf::bivar::build_matrix(&gb, &st);
                let verdict = match dense_hnf(&zp, &m) {
                    Ok((h, _)) => {
                        let mut ok = lex.standard_monomial_count() == Some(rep.ideal_degree);
                        for f in &lex.polys {
                            let mut row = vec![shnf::poly::Poly::zero(); st.n];
                            for (i, c) in f.ycoeffs().iter().enumerate() {
                                row[i] = c.clone();
                            }
                            ok &= triangular_rowspan_contains(&zp, &h, &row)?;
                        }
                        if ok { "PASS" } else { "MISMATCH" }.to_string()
                    }
                    Err(e) => format!("oracle-error: {e}"),
                };
                put(&mut report, &mut jmap, "verify", verdict);
            }
            let lex_gb = DrlBasis::new(lex.polys.clone());
            let lex_text = lex_gb.to_text(&zp);
            if let Some(path) = &args.out {
                std::fs::write(path, &lex_text)
                    .with_context(|| format!("writing {}", path.display()))?;
                put(
                    &mut report,
                    &mut jmap,
                    "lex-file",
                    path.display().to_string(),
                );
            } else {
                writeln!(report, "lex:").unwrap();
                report.push_str(&lex_text);
                jmap.insert("lex".into(), json!(lex_text));
            }
            0
        }
    };
    print!("{report}");
    if args.json {
        println!("{}", serde_json::Value::Object(jmap));
    }
    Ok(code)
}

fn cmd_bench(args: BenchArgs) -> Result<i32> {
    let zp = Zp::new(args.modulus)?;
    let sizes: Vec<usize> = args
        .sizes
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| anyhow!("bad size {t:?}")))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (k, &n) in sizes.iter().enumerate() {
        let mut rng = Rng::new(args.seed.wrapping_add(k as u64));
        let gen = PolyGen::new(
            PolyMat::random(&zp, n, args.alpha, args.degree + 1, &mut rng),
            PolyMat::random(&zp, n, args.alpha, args.degree + 1, &mut rng),
        )?;
        let m = reconstruct_poly(&zp, &gen);
        let t0 = Instant::now();
        let hnf = dense_hnf(&zp, &m);
        let dense_ms = t0.elapsed().as_secs_f64() * 1e3;
        let Ok((h, _)) = hnf else {
            let line = format!(
                "n={n} alpha={} d={} status=SKIP reason=singular",
                args.alpha, args.degree
            );
            println!("{line}");
            rows.push(json!({"n": n, "status": "SKIP"}));
            continue;
        };
        let d: usize = (0..n).map(|i| h.at(i, i).deg().unwrap()).sum();
        let da = (n.saturating_sub(1)) * m.max_deg().unwrap_or(0);
        let delta = d + da + 1;
        let s_size = recommended_sample_size(n, delta, d).min(zp.p() as u128) as u64;
        let mm = 2.min(n);
        let j = IndexTuple::leading(mm, n)?;
        let t0 = Instant::now();
        let out = hermite_submatrix(&zp, &gen, &j, d, da, s_size, &DenseInverter, &mut rng)?;
        let structured_ms = t0.elapsed().as_secs_f64() * 1e3;
        let status = match out {
            HnfOutcome::Ok(_) => "OK",
            HnfOutcome::Singular(_) => "SINGULAR",
            HnfOutcome::Fail => "FAIL",
        };
        let line = format!(
            "n={n} alpha={} d={} m={mm} structured_ms={structured_ms:.2} dense_ms={dense_ms:.2} status={status}",
            args.alpha, args.degree
        );
        println!("{line}");
        rows.push(json!({
            "n": n,
            "alpha": args.alpha,
            "d": args.degree,
            "m": mm,
            "structured_ms": structured_ms,
            "dense_ms": dense_ms,
            "status": status,
        }));
    }
    if args.json {
        println!("{}", json!({ "rows": rows }));
    }
    Ok(0)
}
