//! Command-line workbench for exact Boolean tensor-network counting.
//!
//! Subcommands: `eval` (exact value of a closed network), `analyze`
//! (realizable-binary classification report), `transform` (basis change of
//! a function set), `decompose` (arity-4 splits), `structure` (support /
//! parity / basis-expansion / ratio / arity-reduction analyses) and
//! `verify` (the registry of exact identity suites).
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use holant_core::error::Error;
use holant_core::field::FieldCtx;
use holant_core::files::{BasisFile, FunctionDef, FunctionsFile, NetworkFile};
use holant_core::group::{
    pipeline_classify, CanonicalForms, K4Kind, PipelineConfig, ProjMat,
};
use holant_core::reduction::{transform_func, Basis2};
use holant_core::structure::{
    arity_reduce, decompose_arity4, eo_restrict, eo_symmetry_check, pauli_expand,
    ratio_lemma_check, reality_check, support_class, ArityReduction, Pairing, RatioCase,
    SupportClass,
};
use holant_core::tensor::Func;
use holant_core::verify::{registry, VerifyCtx};
use holant_core::ScalarMatrix;

#[derive(Parser)]
#[command(name = "holant", version, about = "exact Boolean tensor-network workbench")]
struct Cli {
    /// Session field conductor (overrides HOLANT_FIELD_N).
    #[arg(long, global = true)]
    field_n: Option<u32>,
    /// Conductor cap for parsed constants and roots.
    #[arg(long, global = true, default_value_t = 240)]
    cap: u32,
    /// Seed for every randomized suite.
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact value of a closed network file.
    Eval { network: PathBuf },
    /// Enumerate realizable binaries and classify the projective group.
    Analyze {
        functions: PathBuf,
        /// Vertex budget for the gadget enumeration.
        #[arg(long, default_value_t = 4)]
        budget: usize,
    },
    /// Apply a basis to every function in a set (row-vector convention).
    Transform {
        functions: PathBuf,
        basis: PathBuf,
        /// Require the basis to be orthogonal and spot-check value
        /// invariance on sampled closed networks.
        #[arg(long)]
        check_orthogonal: bool,
        /// Output path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Split arity-4 functions into tensor factors where possible.
    Decompose {
        functions: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Structural analyses of single functions.
    Structure {
        #[command(subcommand)]
        analysis: StructureCmd,
    },
    /// Run registered exact identity suites.
    Verify {
        /// Suites to run (all when omitted).
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Run every registered suite.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum StructureCmd {
    /// Support-pattern classification of an even-arity function.
    Support(FuncArg),
    /// Balanced-slice restriction and flip symmetry.
    Eo(FuncArg),
    /// Pairwise four-letter basis expansion and reality check.
    Pauli(FuncArg),
    /// Entry-ratio condition of a binary function against the k-th roots.
    RatioLemma {
        #[command(flatten)]
        func: FuncArg,
        #[arg(long)]
        k: u32,
    },
    /// Arity reduction against a cyclic diagonal binary set.
    ArityReduce {
        #[command(flatten)]
        func: FuncArg,
        /// Function set file whose binaries generate the diagonal set.
        #[arg(long)]
        group: PathBuf,
    },
}

#[derive(Args)]
struct FuncArg {
    functions: PathBuf,
    /// Function name inside the set file (first one when omitted).
    #[arg(long)]
    name: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = FieldCtx::from_env();
    if let Some(n) = cli.field_n {
        ctx.base_n = n;
    }
    ctx.cap = cli.cap.max(ctx.base_n);
    let seed = cli.seed;
    match run(cli.command, ctx, seed) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
}

fn qualify<T>(path: &Path, r: Result<T, Error>) -> Result<T, Error> {
    r.map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
}

fn load_functions(ctx: &FieldCtx, path: &Path) -> Result<Vec<(String, Func)>, Error> {
    let text = read_file(path)?;
    let file = qualify(path, FunctionsFile::parse(&text))?;
    qualify(path, file.to_funcs(ctx))
}

fn pick_function(
    set: &[(String, Func)],
    name: &Option<String>,
    path: &Path,
) -> Result<(String, Func), Error> {
    match name {
        None => set.first().cloned().ok_or_else(|| {
            Error::Validation(format!("{}: no functions in file", path.display()))
        }),
        Some(n) => set
            .iter()
            .find(|(fname, _)| fname == n)
            .cloned()
            .ok_or_else(|| {
                Error::Validation(format!("{}: no function named '{n}'", path.display()))
            }),
    }
}

fn matrix_json(m: &ScalarMatrix) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_expr_string()).collect())
        .collect();
    json!(rows)
}

fn proj_json(p: &ProjMat) -> serde_json::Value {
    matrix_json(p.rep())
}

fn pairing_json(p: &Pairing) -> serde_json::Value {
    json!(p.pairs().iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>())
}

fn run(command: Command, ctx: FieldCtx, seed: u64) -> Result<ExitCode, Error> {
    match command {
        Command::Eval { network } => {
            let text = read_file(&network)?;
            let file = qualify(&network, NetworkFile::parse(&text))?;
            let (gadget, _) = qualify(&network, file.to_gadget(&ctx))?;
            if !gadget.is_closed() {
                return Err(Error::Validation(format!(
                    "{}: network has {} external edges; eval needs a closed network",
                    network.display(),
                    gadget.external.len()
                )));
            }
            let value = gadget.holant_value()?;
            println!("{}", value.to_expr_string());
            Ok(ExitCode::SUCCESS)
        }

        Command::Analyze { functions, budget } => {
            let set = load_functions(&ctx, &functions)?;
            let funcs: Vec<Func> = set.iter().map(|(_, f)| f.clone()).collect();
            let report = pipeline_classify(&ctx, &funcs, budget, &PipelineConfig::default())?;
            let canonical = match &report.canonical {
                None => json!(null),
                Some(CanonicalForms::Order2Diag { basis }) => json!({
                    "form": "order2-diagonal",
                    "basis": matrix_json(basis),
                }),
                Some(CanonicalForms::Order2Y) => json!({ "form": "order2-antisymmetric" }),
                Some(CanonicalForms::K4 { kind, basis, elements }) => json!({
                    "form": match kind {
                        K4Kind::Q3 => "axis-triple",
                        K4Kind::Q3Prime => "twisted-triple",
                    },
                    "basis": matrix_json(basis),
                    "elements": elements.iter().map(proj_json).collect::<Vec<_>>(),
                }),
            };
            let out = json!({
                "label": report.label.to_string(),
                "group_order": report.elements.len(),
                "order2_count": report.order2_count,
                "k4_count": report.k4_subgroups.len(),
                "binaries": report
                    .binaries
                    .iter()
                    .map(|b| matrix_json(&b.func.reshape(&[0])))
                    .collect::<Vec<_>>(),
                "witnesses": report
                    .binaries
                    .iter()
                    .map(|b| serde_json::to_value(NetworkFile::from_gadget(&b.witness, None))
                        .expect("witness serialization"))
                    .collect::<Vec<_>>(),
                "canonical": canonical,
                "budget": report.budget,
                "truncated": report.truncated,
                "notes": report.notes,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }

        Command::Transform { functions, basis, check_orthogonal, output } => {
            let set = load_functions(&ctx, &functions)?;
            let btext = read_file(&basis)?;
            let bfile = qualify(&basis, BasisFile::parse(&btext))?;
            let bmat = qualify(&basis, bfile.to_matrix(&ctx))?;
            let b2 = Basis2::new(bmat.clone())?;
            if check_orthogonal && !b2.is_orthogonal() {
                return Err(Error::NotOrthogonal);
            }
            let transformed: Vec<(String, Func)> = set
                .iter()
                .map(|(name, f)| (name.clone(), transform_func(f, &bmat)))
                .collect();
            if check_orthogonal {
                // sample closed networks over the set; an orthogonal basis
                // must keep every value fixed
                use holant_core::netgen;
                use rand::SeedableRng;
                let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
                let pool: Vec<Func> = set.iter().map(|(_, f)| f.clone()).collect();
                for _ in 0..5 {
                    let before = netgen::random_closed_network_over(&mut rng, &pool, 4);
                    let mut after = before.clone();
                    for f in after.vertices.iter_mut() {
                        *f = transform_func(f, &bmat);
                    }
                    if before.holant_value()? != after.holant_value()? {
                        return Err(Error::AssertionFailed(
                            "orthogonal transform changed a sampled network value".into(),
                        ));
                    }
                }
            }
            let out_file = FunctionsFile {
                functions: transformed
                    .iter()
                    .map(|(name, f)| FunctionDef::from_func(name, f))
                    .collect(),
            };
            let text = out_file.to_json();
            match output {
                Some(path) => std::fs::write(&path, text + "\n")
                    .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Decompose { functions, name } => {
            let set = load_functions(&ctx, &functions)?;
            let targets: Vec<(String, Func)> = match &name {
                Some(_) => vec![pick_function(&set, &name, &functions)?],
                None => set.into_iter().filter(|(_, f)| f.arity() == 4).collect(),
            };
            let mut reports = Vec::new();
            for (fname, f) in &targets {
                if f.arity() != 4 {
                    return Err(Error::Validation(format!(
                        "function '{fname}' has arity {}, decompose needs 4",
                        f.arity()
                    )));
                }
                let verdict = match decompose_arity4(f) {
                    None => json!({ "name": fname, "verdict": "genuine" }),
                    Some((pairing, a, b)) => json!({
                        "name": fname,
                        "verdict": "decomposable",
                        "pairing": pairing_json(&pairing),
                        "factors": [
                            matrix_json(&a.reshape(&[0])),
                            matrix_json(&b.reshape(&[0])),
                        ],
                    }),
                };
                reports.push(verdict);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "analysis": "decompose", "results": reports }))
                    .unwrap()
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Structure { analysis } => run_structure(analysis, &ctx),

        Command::Verify { suites, all } => {
            let entries = registry();
            let selected: Vec<&str> = if all || suites.is_empty() {
                entries.iter().map(|e| e.id).collect()
            } else {
                for s in &suites {
                    if !entries.iter().any(|e| e.id == s) {
                        return Err(Error::Validation(format!("unknown suite '{s}'")));
                    }
                }
                suites.iter().map(|s| s.as_str()).collect()
            };
            let vctx = VerifyCtx { field: ctx, seed };
            let mut failed = 0usize;
            for entry in entries.iter().filter(|e| selected.contains(&e.id)) {
                let start = Instant::now();
                let outcome = (entry.run)(&vctx);
                // timings vary run to run, so they go to stderr and the
                // report itself stays byte-identical
                eprintln!("{:<24} {:.2?}", entry.id, start.elapsed());
                match outcome {
                    Ok(()) => println!("pass  {}", entry.id),
                    Err(msg) => {
                        failed += 1;
                        println!("FAIL  {}  {msg}", entry.id);
                    }
                }
            }
            if failed > 0 {
                println!("{failed} suite(s) failed");
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn run_structure(analysis: StructureCmd, ctx: &FieldCtx) -> Result<ExitCode, Error> {
    let out = match analysis {
        StructureCmd::Support(arg) => {
            let set = load_functions(ctx, &arg.functions)?;
            let (name, f) = pick_function(&set, &arg.name, &arg.functions)?;
            let class = support_class(&f)?;
            let (verdict, witness) = match &class {
                SupportClass::Antelope(p) => ("antelope", json!({ "pairing": pairing_json(p) })),
                SupportClass::Rhino0 { horn, pairing } => (
                    "rhino-0",
                    json!({ "horn": [horn.0, horn.1], "pairing": pairing_json(pairing) }),
                ),
                SupportClass::Rhino1 { horn, pairing } => (
                    "rhino-1",
                    json!({ "horn": [horn.0, horn.1], "pairing": pairing_json(pairing) }),
                ),
                SupportClass::Other => ("other", json!(null)),
            };
            json!({
                "analysis": "support",
                "name": name,
                "verdict": verdict,
                "witness": witness,
                "details": { "support_size": f.support().len() },
            })
        }
        StructureCmd::Eo(arg) => {
            let set = load_functions(ctx, &arg.functions)?;
            let (name, f) = pick_function(&set, &arg.name, &arg.functions)?;
            let restricted = eo_restrict(&f)?;
            let symmetric = eo_symmetry_check(&f)?;
            json!({
                "analysis": "eo",
                "name": name,
                "verdict": if symmetric { "symmetric" } else { "asymmetric" },
                "witness": json!(null),
                "details": {
                    "restricted_values": restricted
                        .values()
                        .iter()
                        .map(|v| v.to_expr_string())
                        .collect::<Vec<_>>(),
                },
            })
        }
        StructureCmd::Pauli(arg) => {
            let set = load_functions(ctx, &arg.functions)?;
            let (name, f) = pick_function(&set, &arg.name, &arg.functions)?;
            let pairing = Pairing::consecutive(f.arity() / 2);
            let coeffs = pauli_expand(&f, &pairing)?;
            let real = reality_check(&coeffs);
            json!({
                "analysis": "pauli",
                "name": name,
                "verdict": if real { "real-up-to-phase" } else { "mixed" },
                "witness": pairing_json(&pairing),
                "details": {
                    "coefficients": coeffs
                        .coeffs
                        .iter()
                        .map(|v| v.to_expr_string())
                        .collect::<Vec<_>>(),
                },
            })
        }
        StructureCmd::RatioLemma { func, k } => {
            let set = load_functions(ctx, &func.functions)?;
            let (name, f) = pick_function(&set, &func.name, &func.functions)?;
            if f.arity() != 2 {
                return Err(Error::Validation(format!(
                    "function '{name}' has arity {}, the ratio condition needs 2",
                    f.arity()
                )));
            }
            let case = ratio_lemma_check(&f.reshape(&[0]), k)?;
            let (verdict, witness) = match &case {
                RatioCase::Violation(eq) => ("violation", json!({ "failed_equation": eq })),
                other => (
                    match other {
                        RatioCase::AllZero => "all-zero",
                        RatioCase::DiagonalZero => "diagonal-zero",
                        RatioCase::AntidiagonalZero => "antidiagonal-zero",
                        RatioCase::NoZeros => "no-zeros",
                        RatioCase::EqualPairs => "equal-pairs",
                        RatioCase::NegatedPairs => "negated-pairs",
                        RatioCase::Violation(_) => unreachable!(),
                    },
                    json!(null),
                ),
            };
            json!({
                "analysis": "ratio-lemma",
                "name": name,
                "verdict": verdict,
                "witness": witness,
                "details": { "k": k },
            })
        }
        StructureCmd::ArityReduce { func, group } => {
            let set = load_functions(ctx, &func.functions)?;
            let (name, f) = pick_function(&set, &func.name, &func.functions)?;
            let gset = load_functions(ctx, &group)?;
            let mut elements = Vec::new();
            for (gname, g) in &gset {
                if g.arity() != 2 {
                    return Err(Error::Validation(format!(
                        "group function '{gname}' has arity {}, need 2",
                        g.arity()
                    )));
                }
                let p = ProjMat::from_func(g).ok_or_else(|| {
                    Error::Validation(format!("group function '{gname}' is zero"))
                })?;
                if !elements.contains(&p) {
                    elements.push(p);
                }
            }
            match arity_reduce(&f, &elements)? {
                ArityReduction::Certificate(m) => json!({
                    "analysis": "arity-reduce",
                    "name": name,
                    "verdict": "certificate",
                    "witness": {
                        "lambda": m.lambda.to_expr_string(),
                        "pairing": pairing_json(&m.pairing),
                        "factors": m.factors.iter().map(proj_json).collect::<Vec<_>>(),
                    },
                    "details": json!(null),
                }),
                ArityReduction::Witness4 { func: w, provenance } => json!({
                    "analysis": "arity-reduce",
                    "name": name,
                    "verdict": "genuine-arity-4-witness",
                    "witness": {
                        "values": w.values().iter().map(|v| v.to_expr_string()).collect::<Vec<_>>(),
                        "provenance": serde_json::to_value(NetworkFile::from_gadget(&provenance, None)).unwrap(),
                    },
                    "details": json!(null),
                }),
                ArityReduction::Inconclusive { failed_step } => json!({
                    "analysis": "arity-reduce",
                    "name": name,
                    "verdict": "inconclusive",
                    "witness": json!(null),
                    "details": { "failed_step": failed_step },
                }),
            }
        }
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(ExitCode::SUCCESS)
}
