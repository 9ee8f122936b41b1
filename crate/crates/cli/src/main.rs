//! `fiberfull`: decide whether Groebner degenerations onto a monomial
//! special fiber preserve all graded local cohomology, and inspect the
//! surrounding invariants.

use clap::{Parser, Subcommand};
use fiberfull::cohomology::{local_cohomology_table, stratification_data, CohomologyTable};
use fiberfull::criterion::{constant_cohomology_criterion, CriterionReport};
use fiberfull::degeneration::verify_constant_cohomology;
use fiberfull::hochster::hochster_table;
use fiberfull::ideal::Ideal;
use fiberfull::monomial::MonomialOrder;
use fiberfull::parse::{parse_field, parse_ideal_file_with, parse_order, ParsedInput};
use fiberfull::scalar::FieldSpec;
use fiberfull::tangent::fiber_full_tangent;
use fiberfull::Error;
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fiberfull", version, about = "local cohomology of Groebner degenerations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Display window for tables, as lo:hi in the ν coordinate.
    #[arg(long, global = true, value_name = "LO:HI", allow_hyphen_values = true)]
    window: Option<String>,
    /// Override the coefficient field from the file (qq or gf:p).
    #[arg(long, global = true)]
    field: Option<String>,
    /// Override the monomial order from the file (lex, grevlex, weight:a,b,..).
    #[arg(long, global = true)]
    order: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Graded local cohomology table of R/I, via local duality.
    Cohom { file: String },
    /// Evaluate the constant-cohomology criterion at the initial ideal.
    Criterion { file: String },
    /// Compare the Hilbert scheme and fiber-full tangent space dimensions.
    Tangent { file: String },
    /// Degenerate I onto its initial ideal and compare the two tables.
    Degenerate { file: String },
    /// Hilbert series, cohomology table and Hilbert polynomial of R/I.
    Stratify { file: String },
    /// Cohomology table through Hochster's formula (squarefree monomial I).
    Hochster { file: String },
    /// Cross-check Hochster's formula against local duality.
    Crosscheck { file: String },
}

#[derive(Serialize)]
struct Meta {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
}

#[derive(Serialize)]
struct InputInfo {
    file: String,
    ring: Vec<String>,
    field: String,
    order: String,
    name: String,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct Report<R: Serialize> {
    meta: Meta,
    input: InputInfo,
    result: R,
}

#[derive(Serialize)]
struct TableJson {
    window: (i64, i64),
    /// rows[i][k] = h_i(window.0 + k), as decimal strings
    rows: Vec<Vec<String>>,
    nonzero_rows: Vec<usize>,
}

#[derive(Serialize)]
struct CriterionJson {
    ideal_tested: Vec<String>,
    #[serde(flatten)]
    report: CriterionReport,
    failing_slots: Vec<usize>,
}

#[derive(Serialize)]
struct TangentJson {
    dim_hilb: usize,
    dim_fib: usize,
    basis: Vec<Vec<String>>,
    in_fiber: Vec<bool>,
}

#[derive(Serialize)]
struct DegenerateJson {
    weight: Vec<i64>,
    initial_ideal: Vec<String>,
    table_general: TableJson,
    table_special: TableJson,
    tables_equal: bool,
    semicontinuity_ok: bool,
    criterion: CriterionReport,
}

#[derive(Serialize)]
struct StratifyJson {
    window: (i64, i64),
    hilbert_function: Vec<String>,
    table: TableJson,
    hilbert_polynomial: String,
}

#[derive(Serialize)]
struct CrosscheckJson {
    hochster: TableJson,
    duality: TableJson,
    equal: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let field_override = match &cli.field {
        Some(s) => Some(
            parse_field(s)
                .ok_or_else(|| Error::Internal(format!("unknown field `{s}`")))?,
        ),
        None => None,
    };
    let window_override = match &cli.window {
        Some(s) => Some(parse_window(s)?),
        None => None,
    };

    let load = |file: &str| -> Result<ParsedInput, Error> {
        let text = std::fs::read_to_string(file)
            .map_err(|e| Error::Internal(format!("cannot read {file}: {e}")))?;
        // the order override may mention a weight vector whose length is
        // only known after the ring line; parse in two passes
        let order_override = match &cli.order {
            Some(s) => {
                let probe = parse_ideal_file_with(&text, field_override, None)?;
                Some(parse_order(s, probe.ring.nvars())?)
            }
            None => None,
        };
        parse_ideal_file_with(&text, field_override, order_override)
    };

    match &cli.command {
        Command::Cohom { file } => {
            let input = load(file)?;
            let table = local_cohomology_table(&input.ideal)?;
            let tj = table_json(&table, window_override);
            if cli.json {
                print_json(&report("cohom", file, &input, tj));
            } else {
                println!("graded local cohomology of R/{}:", input.name);
                print_table(&table, window_override);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Criterion { file } => {
            let input = load(file)?;
            let tested = initial_of(&input)?;
            let rep = constant_cohomology_criterion(&tested)?;
            let pass = rep.pass;
            if cli.json {
                let result = CriterionJson {
                    ideal_tested: gens_strings(&tested),
                    failing_slots: rep.failing_slots(),
                    report: rep,
                };
                print_json(&report("criterion", file, &input, result));
            } else {
                print_criterion(&tested, &rep);
            }
            Ok(exit_pass(pass))
        }
        Command::Tangent { file } => {
            let input = load(file)?;
            let rep = fiber_full_tangent(&input.ideal)?;
            if cli.json {
                let result = TangentJson {
                    dim_hilb: rep.dim_hs,
                    dim_fib: rep.dim_fib,
                    basis: rep
                        .basis
                        .iter()
                        .map(|vs| vs.iter().map(|f| f.to_string()).collect())
                        .collect(),
                    in_fiber: rep.in_fiber.clone(),
                };
                print_json(&report("tangent", file, &input, result));
            } else {
                println!("dim T_[I] Hilb = {}", rep.dim_hs);
                println!("dim T_[I] Fib  = {}", rep.dim_fib);
                for (vals, ok) in rep.basis.iter().zip(&rep.in_fiber) {
                    let vs: Vec<String> = vals.iter().map(|f| f.to_string()).collect();
                    let tag = if *ok { "fiber-full" } else { "obstructed" };
                    println!("  [{}]  {}", vs.join(", "), tag);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Degenerate { file } => {
            let input = load(file)?;
            let order = input.ring.order.clone();
            let rep = verify_constant_cohomology(&input.ideal, &order)?;
            let pass = rep.tables_equal;
            if cli.json {
                let result = DegenerateJson {
                    weight: rep.weight.clone(),
                    initial_ideal: gens_strings(&rep.initial_ideal),
                    table_general: table_json(&rep.table_general, window_override),
                    table_special: table_json(&rep.table_special, window_override),
                    tables_equal: rep.tables_equal,
                    semicontinuity_ok: rep.semicontinuity_ok,
                    criterion: rep.criterion,
                };
                print_json(&report("degenerate", file, &input, result));
            } else {
                println!("initial ideal: {}", gens_strings(&rep.initial_ideal).join(", "));
                println!("representing weight: {:?}", rep.weight);
                println!("table of R/I:");
                print_table(&rep.table_general, window_override);
                println!("table of R/in(I):");
                print_table(&rep.table_special, window_override);
                println!("tables equal: {}", rep.tables_equal);
                println!("semicontinuity: {}", rep.semicontinuity_ok);
                print_criterion(&rep.initial_ideal, &rep.criterion);
            }
            Ok(exit_pass(pass))
        }
        Command::Stratify { file } => {
            let input = load(file)?;
            let data = stratification_data(&input.ideal)?;
            let (lo, hi) = window_override.unwrap_or_else(|| data.table.window());
            if cli.json {
                let result = StratifyJson {
                    window: (lo, hi),
                    hilbert_function: (lo..=hi).map(|nu| data.g.evaluate(nu).to_string()).collect(),
                    table: table_json(&data.table, window_override),
                    hilbert_polynomial: data.polynomial.to_string(),
                };
                print_json(&report("stratify", file, &input, result));
            } else {
                let g: Vec<String> =
                    (lo..=hi).map(|nu| data.g.evaluate(nu).to_string()).collect();
                println!("hilbert function on [{lo}, {hi}]: {}", g.join(" "));
                print_table(&data.table, window_override);
                println!("hilbert polynomial: {}", data.polynomial);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hochster { file } => {
            let input = load(file)?;
            let table = hochster_table(&input.ideal)?;
            if cli.json {
                print_json(&report("hochster", file, &input, table_json(&table, window_override)));
            } else {
                println!("Hochster table of R/{}:", input.name);
                print_table(&table, window_override);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Crosscheck { file } => {
            let input = load(file)?;
            let hoch = hochster_table(&input.ideal)?;
            let dual = local_cohomology_table(&input.ideal)?;
            let equal = hoch.same_tables(&dual);
            if cli.json {
                let result = CrosscheckJson {
                    hochster: table_json(&hoch, window_override),
                    duality: table_json(&dual, window_override),
                    equal,
                };
                print_json(&report("crosscheck", file, &input, result));
            } else {
                println!("Hochster:");
                print_table(&hoch, window_override);
                println!("local duality:");
                print_table(&dual, window_override);
                println!("equal: {equal}");
            }
            Ok(exit_pass(equal))
        }
    }
}

fn exit_pass(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn initial_of(input: &ParsedInput) -> Result<Ideal, Error> {
    if input.ideal.is_monomial() {
        Ok(input.ideal.clone())
    } else {
        input.ideal.initial_ideal(&input.ring.order.clone())
    }
}

fn parse_window(s: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::Internal(format!("bad window `{s}`, expected LO:HI"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn gens_strings(ideal: &Ideal) -> Vec<String> {
    ideal.generators().iter().map(|g| g.to_string()).collect()
}

fn order_string(order: &MonomialOrder) -> String {
    match order {
        MonomialOrder::Lex => "lex".into(),
        MonomialOrder::GrevLex => "grevlex".into(),
        MonomialOrder::Weight(w) => {
            let parts: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            format!("weight:{}", parts.join(","))
        }
    }
}

fn field_string(field: FieldSpec) -> String {
    match field {
        FieldSpec::Rational => "QQ".into(),
        FieldSpec::Prime(p) => format!("GF({p})"),
    }
}

fn report<R: Serialize>(command: &'static str, file: &str, input: &ParsedInput, result: R) -> Report<R> {
    Report {
        meta: Meta {
            tool: "fiberfull",
            version: env!("CARGO_PKG_VERSION"),
            command,
        },
        input: InputInfo {
            file: file.to_string(),
            ring: input.ring.vars.clone(),
            field: field_string(input.ring.field),
            order: order_string(&input.ring.order),
            name: input.name.clone(),
            generators: gens_strings(&input.ideal),
        },
        result,
    }
}

fn print_json<R: Serialize>(report: &Report<R>) {
    println!("{}", serde_json::to_string_pretty(report).expect("report serialization"));
}

fn table_json(table: &CohomologyTable, window: Option<(i64, i64)>) -> TableJson {
    let (lo, hi) = window.unwrap_or_else(|| table.window());
    let rows = (0..=table.n())
        .map(|i| (lo..=hi).map(|nu| table.h(i, nu).to_string()).collect())
        .collect();
    TableJson { window: (lo, hi), rows, nonzero_rows: table.nonzero_rows() }
}

fn print_table(table: &CohomologyTable, window: Option<(i64, i64)>) {
    let (lo, hi) = window.unwrap_or_else(|| table.window());
    let mut cells: Vec<Vec<String>> = Vec::new();
    let header: Vec<String> = (lo..=hi).map(|nu| nu.to_string()).collect();
    cells.push(header);
    for i in 0..=table.n() {
        let row = (lo..=hi)
            .map(|nu| {
                let v = table.h(i, nu);
                if v == 0u8.into() { ".".to_string() } else { v.to_string() }
            })
            .collect();
        cells.push(row);
    }
    let widths: Vec<usize> = (0..cells[0].len())
        .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(1))
        .collect();
    for (k, row) in cells.iter().enumerate() {
        let label = if k == 0 {
            "  nu".to_string()
        } else {
            format!("  h{}", k - 1)
        };
        let body: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        println!("{label:<5} {}", body.join(" "));
    }
}

fn print_criterion(tested: &Ideal, rep: &CriterionReport) {
    println!("criterion at in(I) = ({})", gens_strings(tested).join(", "));
    for (k, d) in rep.hom_dims.iter().enumerate() {
        println!("  dim [Hom(Ext^{}, Ext^{})]_0 = {}", k, k + 1, d);
    }
    println!("  Cohen-Macaulay special fiber: {}", rep.cohen_macaulay);
    println!("  squarefree: {}", rep.squarefree);
    if rep.pass {
        println!("PASS: every Groebner degeneration onto this fiber has constant cohomology");
    } else {
        println!("FAIL: Hom obstruction at slots {:?}", rep.failing_slots());
    }
}
