use clap::{Parser, Subcommand, ValueEnum};
use coxsurf::catalog::{validate_surface, CatalogError, FieldTag, ReferenceKind, SurfaceDescriptor};
use coxsurf::complexone::{hj_eval, hj_solve_unknown, HjEntry, HjValue};
use coxsurf::contract::{contract_cox, eliminate_linear, GradedPresentation};
use coxsurf::curves::{
    conic_bundles, conic_bundles_with_unique_reducible_fiber, type_iv_generator_divisors, NegativeCurveGraph,
};
use coxsurf::generators::{degree_matrix, minimal_generators, Basis};
use coxsurf::relations::{compute_relations, RelationsError};
use coxsurf::verify::{run_suite, Suite, VerifyConfig};
use coxsurf::Catalog;
use coxsurf_algebra::{Budget, Cyclotomic3, Field, Rational};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "coxsurf", version, about = "Cox rings of extremal rational elliptic surfaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Catalog directory (default: $COXSURF_DATA, then the bundled data).
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Groebner step budget.
    #[arg(long, default_value_t = 50_000_000, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    budget: u64,
    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    /// e0, ..., e9.
    E,
    /// e0 and the classes of the nine exceptional generators.
    Graded,
}

#[derive(Subcommand)]
enum Command {
    /// List the surfaces, or describe one.
    Catalog { name: Option<String> },
    /// Negative curves and their intersection graph.
    Curves { name: String },
    /// Conic bundles and type (iv) divisors.
    Conics { name: String },
    /// Minimal Cox ring generators and their degree matrix.
    Generators {
        name: String,
        #[arg(long, value_enum, default_value_t = BasisArg::E)]
        basis: BasisArg,
    },
    /// Compute the ideal of relations.
    Relations { name: String },
    /// Set generators to 1 and print the resulting presentation.
    Contract {
        name: String,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
    },
    /// Evaluate a Hirzebruch-Jung continued fraction, e.g. `2,1,2` or `2,x,2`.
    Hj {
        #[arg(allow_hyphen_values = true)]
        quotients: String,
        /// Value the fraction should take when an entry is `x`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        target: String,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value = "fast")]
        suite: Suite,
        /// Only these criteria.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<usize>,
    },
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownSurface(_) => Failure::Usage(e.to_string()),
            e => Failure::Failed(e.to_string()),
        }
    }
}

fn failed(e: impl std::fmt::Display) -> Failure {
    Failure::Failed(e.to_string())
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            eprintln!("run `coxsurf --help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Failed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let budget = Budget::new(cli.budget);
    if let Command::Hj { quotients, target } = &cli.command {
        return hj(quotients, target);
    }
    let catalog = Catalog::resolve(cli.data_dir.as_deref())?;
    match &cli.command {
        Command::Catalog { name: None } => Ok(catalog_list(&catalog)),
        Command::Catalog { name: Some(n) } => Ok(catalog_show(catalog.get(n)?)),
        Command::Curves { name } => Ok(curves(catalog.get(name)?)),
        Command::Conics { name } => Ok(conics(catalog.get(name)?)),
        Command::Generators { name, basis } => generators(catalog.get(name)?, *basis),
        Command::Relations { name } => {
            let s = catalog.get(name)?;
            match s.field {
                FieldTag::Rational => relations::<Rational>(s, budget),
                FieldTag::Cyclotomic3 => relations::<Cyclotomic3>(s, budget),
            }
        }
        Command::Contract { name, set } => {
            let s = catalog.get(name)?;
            match s.field {
                FieldTag::Rational => contract::<Rational>(s, set),
                FieldTag::Cyclotomic3 => contract::<Cyclotomic3>(s, set),
            }
        }
        Command::Verify { suite, criteria } => {
            if let Some(c) = criteria.iter().find(|&&c| !(1..=9).contains(&c)) {
                return Err(Failure::Usage(format!("no criterion {c}")));
            }
            let config = VerifyConfig { suite: *suite, budget, jobs: cli.jobs, ..VerifyConfig::default() };
            let report = run_suite(&catalog, &config, criteria);
            let mut out = Output::new(report.to_text(), serde_json::to_value(&report).expect("json"));
            out.ok = report.passed();
            Ok(out)
        }
        Command::Hj { .. } => unreachable!(),
    }
}

fn hj(quotients: &str, target: &str) -> Result<Output, Failure> {
    let entries: Vec<HjEntry> =
        quotients.split(',').map(|x| x.parse()).collect::<Result<_, _>>().map_err(Failure::Usage)?;
    if entries.contains(&HjEntry::Unknown) {
        let HjEntry::Known(t) = target.parse::<HjEntry>().map_err(Failure::Usage)? else {
            return Err(Failure::Usage("the target must be a number".into()));
        };
        let x = hj_solve_unknown(&entries, &t).map_err(failed)?;
        return Ok(Output::new(format!("x = {x}\n"), json!({ "x": x.to_string() })));
    }
    let values: Vec<Rational> = entries
        .into_iter()
        .map(|e| match e {
            HjEntry::Known(q) => q,
            HjEntry::Unknown => unreachable!(),
        })
        .collect();
    match hj_eval(&values) {
        Some(HjValue::Value(v)) => Ok(Output::new(format!("{v}\n"), json!({ "value": v.to_string() }))),
        Some(HjValue::Pole) => Ok(Output::new("pole\n".into(), json!({ "value": "pole" }))),
        None => Err(Failure::Usage("empty continued fraction".into())),
    }
}

fn fibers(s: &SurfaceDescriptor) -> String {
    s.fibers.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")
}

fn catalog_list(c: &Catalog) -> Output {
    let mut text = String::new();
    let mut rows = Vec::new();
    for s in c.surfaces() {
        let valid = validate_surface(s).passed();
        text.push_str(&format!(
            "{:<8} {:<12} MW {:<8} {:>2} curves {:>2} generators {:>2} relations{}\n",
            s.name,
            fibers(s),
            s.mw.to_string(),
            s.curves.len(),
            s.reference.len(),
            s.relations.len(),
            if valid { "" } else { "  INVALID" }
        ));
        rows.push(json!({
            "surface": s.name,
            "fibers": fibers(s),
            "mordell_weil": s.mw.to_string(),
            "curves": s.curves.len(),
            "generators": s.reference.len(),
            "relations": s.relations.len(),
            "valid": valid,
        }));
    }
    Output::new(text, Value::Array(rows))
}

fn catalog_show(s: &SurfaceDescriptor) -> Output {
    let report = validate_surface(s);
    let mut text = format!("{}\nfibers: {}\nMordell-Weil: {}\npencil: {} ; {}\n", s.name, fibers(s), s.mw, s.pencil.0, s.pencil.1);
    text.push_str(&format!("{} negative curves, {} generators, {} relations\n", s.curves.len(), s.reference.len(), s.relations.len()));
    for c in &report.checks {
        text.push_str(&format!("check {}: {}\n", c.name, if c.passed() { "ok" } else { "FAILED" }));
        for f in &c.failures {
            text.push_str(&format!("    {f}\n"));
        }
    }
    let json = json!({ "surface": s, "validation": report });
    let mut out = Output::new(text, json);
    out.ok = report.passed();
    out
}

fn curves(s: &SurfaceDescriptor) -> Output {
    let mut text = String::new();
    for c in &s.curves {
        text.push_str(&format!("{:<8} {:<10} {}  square {}\n", c.label, format!("{:?}", c.kind), c.class, c.class.square()));
    }
    let g = NegativeCurveGraph::of_surface(s);
    text.push_str("\nintersection graph\n");
    text.push_str(&g.adjacency_text());
    Output::new(text, json!({ "surface": s.name, "curves": s.curves, "graph": g }))
}

fn conics(s: &SurfaceDescriptor) -> Output {
    let all = conic_bundles(s);
    let unique = conic_bundles_with_unique_reducible_fiber(s);
    let type_iv = type_iv_generator_divisors(s);
    let mut text = format!("{} conic bundles, {} with one reducible member\n", all.len(), unique.len());
    for b in &unique {
        text.push_str(&format!("{}  {}\n", b.class, b.reducible_fibers[0]));
    }
    text.push_str(&format!("{} type (iv) divisors\n", type_iv.len()));
    for d in &type_iv {
        let chains: Vec<String> = d.chains.iter().map(|c| c.join(" ")).collect();
        text.push_str(&format!("{}  chains: {}\n", d.class, chains.join(" | ")));
    }
    let json = json!({
        "surface": s.name,
        "conic_bundles": all.len(),
        "unique_reducible_member": unique
            .iter()
            .map(|b| json!({ "class": b.class, "support": b.reducible_fibers[0].to_string() }))
            .collect::<Vec<_>>(),
        "type_iv": type_iv,
    });
    Output::new(text, json)
}

fn generators(s: &SurfaceDescriptor, basis: BasisArg) -> Result<Output, Failure> {
    let g = minimal_generators(s).map_err(failed)?;
    let basis = match basis {
        BasisArg::E => Basis::E,
        BasisArg::Graded => Basis::Graded,
    };
    let m = degree_matrix(&g, basis).map_err(failed)?;
    let mut text = format!("{}: {} generators\n", s.name, g.len());
    for e in &g.entries {
        text.push_str(&format!("{:<8} {:<16} {}\n", e.label, e.kind.name(), e.degree));
    }
    text.push('\n');
    text.push_str(&m.labels.join(" "));
    text.push('\n');
    text.push_str(&m.to_text());
    text.push('\n');
    let json = json!({
        "surface": s.name,
        "generators": g
            .entries
            .iter()
            .map(|e| json!({ "label": e.label, "kind": e.kind.name(), "degree": e.degree }))
            .collect::<Vec<_>>(),
        "matrix": m.rows,
    });
    Ok(Output::new(text, json))
}

fn reference_kind(k: &ReferenceKind) -> String {
    match k {
        ReferenceKind::Curve(l) => format!("curve {l}"),
        ReferenceKind::Conic => "conic".into(),
        ReferenceKind::Fiber => "fiber".into(),
        ReferenceKind::TypeIv => "type iv".into(),
    }
}

fn relations<F: Field>(s: &SurfaceDescriptor, budget: Budget) -> Result<Output, Failure> {
    let r = compute_relations::<F>(s, budget).map_err(|e| match e {
        RelationsError::NoSectionMap(..) => Failure::Failed(format!("{e}; the relations of {} are not computed", s.name)),
        e => failed(e),
    })?;
    let mut rels: Vec<(u32, String)> = r.generators.iter().map(|g| (g.total_degree().unwrap_or(0), g.to_string())).collect();
    rels.sort();
    let rels: Vec<String> = rels.into_iter().map(|x| x.1).collect();
    let matrix: Vec<Vec<i64>> = (0..10).map(|i| s.reference.iter().map(|g| g.degree.0[i]).collect()).collect();
    let mut text = format!("{}: {} relations, dim {} ({:?})\n", s.name, rels.len(), r.dimension, r.certificate);
    for g in &s.reference {
        text.push_str(&format!("{:<4} {:<14} {}\n", g.var, reference_kind(&g.kind), g.degree));
    }
    text.push('\n');
    for x in &rels {
        text.push_str(x);
        text.push('\n');
    }
    let json = json!({
        "surface": s.name,
        "generators": s
            .reference
            .iter()
            .map(|g| json!({ "label": g.var, "kind": reference_kind(&g.kind), "degree": g.degree }))
            .collect::<Vec<_>>(),
        "matrix": matrix,
        "relations": rels,
        "dimension": r.dimension,
        "certificate": r.certificate,
    });
    Ok(Output::new(text, json))
}

fn contract<F: Field>(s: &SurfaceDescriptor, set: &[String]) -> Result<Output, Failure> {
    let p = GradedPresentation::<F>::from_surface(s)?;
    let removed: Vec<&str> = set.iter().map(|x| x.trim()).collect();
    let q = contract_cox(&p, &removed).map_err(|e| Failure::Usage(e.to_string()))?;
    let q = eliminate_linear(&q);
    let v = q.view();
    let mut text = format!("{}: {} variables, grading {}\n", s.name, v.variables.len(), v.grading);
    for (name, d) in v.variables.iter().zip(&v.degrees) {
        text.push_str(&format!("{name:<4} {d:?}\n"));
    }
    text.push('\n');
    for r in &v.relations {
        text.push_str(r);
        text.push('\n');
    }
    Ok(Output::new(text, serde_json::to_value(&v).expect("json")))
}
