mod args;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format, GroupKind, Params};
use seqgroup::group::{decompose, primitivity, torsion_l};
use seqgroup::lab::{
    independence_report, table3, table3_deviations, Convention, DivisorLab, PrimeWindow, CSV_HEADER, TABLE3,
    TABLE3_TOLERANCE, TABLE3_WINDOW,
};
use seqgroup::{classify_cyclotomic, laxton_eq, laxton_torsion, CyclotomicClass, GroupElement, ParamPair, Rational, RingElement};

enum Failure {
    /// Bad or excluded input: exit status 2.
    Input(String),
    /// Anything else: exit status 1.
    Internal(String),
}

impl From<seqgroup::Error> for Failure {
    fn from(e: seqgroup::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Out = Result<String, Failure>;

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    s.parse().map_err(|e: seqgroup::Error| Failure::Input(e.to_string()))
}

fn parse_two(s: &str) -> Result<(Rational, Rational), Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::Input(format!("expected two comma-separated values, got {s:?}")));
    }
    Ok((parse_rational(parts[0])?, parse_rational(parts[1])?))
}

fn parse_two_ints(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Input(format!("expected two comma-separated integers, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Input(format!("expected an index range a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn context(p: &Params) -> Result<ParamPair, Failure> {
    match (&p.t, p.big_t, p.big_q) {
        (Some(t), None, None) => Ok(ParamPair::one_param(parse_rational(t)?)),
        (None, Some(bt), Some(bq)) => Ok(ParamPair::from_ints(bt, bq)?),
        _ => Err(Failure::Input("give either --t or both --T and --Q".into())),
    }
}

fn element(ctx: &ParamPair, s: &str) -> Result<GroupElement, Failure> {
    let (a, b) = parse_two(s)?;
    Ok(GroupElement::from_ring(&RingElement::new(ctx.clone(), a, b))?)
}

fn window(cli: &Cli) -> Result<PrimeWindow, Failure> {
    match &cli.window {
        Some(w) => Ok(PrimeWindow::parse(w)?),
        None => Ok(TABLE3_WINDOW),
    }
}

fn convention(cli: &Cli) -> Result<Option<Convention>, Failure> {
    cli.convention.as_deref().map(Convention::parse).transpose().map_err(Failure::from)
}

fn pretty(v: &impl serde::Serialize) -> Out {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(sep)
}

fn cmd_seq(cli: &Cli, params: &Params, x: &str, range: &str) -> Out {
    let ctx = context(params)?;
    let (x0, x1) = parse_two(x)?;
    let (from, to) = parse_range(range)?;
    let seq = RingElement::new(ctx, x0, x1);
    let terms: Vec<(i64, Rational)> = (from..=to).map(|n| (n, seq.term(n))).collect();
    let mut out = String::new();
    match cli.format {
        Format::Json => {
            let rows: Vec<Value> = terms.iter().map(|(n, v)| json!({"n": n, "x": v})).collect();
            return pretty(&rows);
        }
        Format::Csv => {
            out.push_str("n,x\n");
            for (n, v) in &terms {
                let _ = writeln!(out, "{n},{v}");
            }
        }
        Format::Text => {
            for (n, v) in &terms {
                let _ = writeln!(out, "{n:>5}  {v}");
            }
        }
    }
    Ok(out)
}

fn cmd_classify(cli: &Cli, t: &str) -> Out {
    let t = parse_rational(t)?;
    let class = classify_cyclotomic(&t)?;
    let prim = primitivity(&t)?;
    let dec = decompose(&t)?;
    match cli.format {
        Format::Json => pretty(&json!({
            "t": t,
            "class": class,
            "primitivity": prim,
            "decomposition": dec,
        })),
        Format::Csv => {
            let assoc = match &class {
                CyclotomicClass::Generic => String::new(),
                CyclotomicClass::Circular { a } => format!("{a} {}", -a),
                CyclotomicClass::Cubic { associates, .. } => join(associates, " "),
            };
            let circ = prim.circular_primitive.map(|b| b.to_string()).unwrap_or_default();
            Ok(format!(
                "t,kind,associates,is_primitive,circular_primitive,m,u,sign\n{t},{},{assoc},{},{circ},{},{},{}\n",
                class.kind(),
                prim.is_primitive,
                dec.m,
                dec.u,
                dec.sign
            ))
        }
        Format::Text => {
            let mut out = format!("t = {t}\nkind: {}\n", class.kind());
            match &class {
                CyclotomicClass::Generic => {}
                CyclotomicClass::Circular { a } => {
                    let _ = writeln!(out, "a = {a}; associates {a} and {}", -a);
                }
                CyclotomicClass::Cubic { f, associates } => {
                    let _ = writeln!(out, "f = {f}; associates {} and {}", associates[0], associates[1]);
                }
            }
            let _ = writeln!(out, "primitive: {}", prim.is_primitive);
            for w in &prim.witnesses {
                let sign = if w.sign < 0 { "-" } else { "" };
                let _ = writeln!(out, "  witness: t = {sign}C_{}({})", w.r, w.u);
            }
            if let Some(c) = prim.circular_primitive {
                let _ = writeln!(out, "circular primitive: {c}");
            }
            if dec.m > 1 {
                let sign = if dec.sign < 0 { "-" } else { "" };
                let _ = writeln!(out, "decomposition: t = {sign}C_{}({}) with primitive base", dec.m, dec.u);
            }
            Ok(out)
        }
    }
}

fn cmd_torsion(cli: &Cli, t: &str, group: GroupKind) -> Out {
    let t = parse_rational(t)?;
    match group {
        GroupKind::L => {
            let entries = torsion_l(&t)?;
            match cli.format {
                Format::Json => pretty(&entries),
                Format::Csv => {
                    let mut out = String::from("name,a0,a1,order\n");
                    for e in &entries {
                        let _ = writeln!(out, "{},{},{},{}", e.name, e.element.a0(), e.element.a1(), e.order);
                    }
                    Ok(out)
                }
                Format::Text => {
                    let mut out = format!("torsion of the sequence group at t = {t} (identity omitted)\n");
                    for e in &entries {
                        let _ = writeln!(out, "  {}  {}  order {}", e.name, e.element, e.order);
                    }
                    Ok(out)
                }
            }
        }
        GroupKind::Laxton => {
            let table = laxton_torsion(&t)?;
            match cli.format {
                Format::Json => pretty(&table),
                Format::Csv => {
                    let mut out = String::from("a0,a1,order,coset_witness_k\n");
                    for r in &table.elements {
                        let _ = writeln!(out, "{},{},{},{}", r.element[0], r.element[1], r.order, r.coset_witness_k);
                    }
                    Ok(out)
                }
                Format::Text => {
                    let mut out = format!(
                        "Laxton torsion at t = {t}: {} ({} elements)\n",
                        table.group_type,
                        table.group_type.order()
                    );
                    if table.m > 1 {
                        let _ = writeln!(out, "t = ±C_{}({})", table.m, table.base);
                    }
                    if !table.enumerated {
                        out.push_str("structure only; elements not enumerated\n");
                    }
                    for r in &table.elements {
                        let _ = writeln!(
                            out,
                            "  [{} {}]  order {}  (power is D^{})",
                            r.element[0], r.element[1], r.order, r.coset_witness_k
                        );
                    }
                    Ok(out)
                }
            }
        }
    }
}

fn cmd_sqrt(cli: &Cli, params: &Params, x: &str) -> Out {
    let ctx = context(params)?;
    let x = element(&ctx, x)?;
    let roots = x.sqrt();
    match cli.format {
        Format::Json => pretty(&json!({ "element": x, "roots": roots })),
        Format::Csv => {
            let mut out = String::from("a0,a1\n");
            for r in &roots {
                let _ = writeln!(out, "{},{}", r.a0(), r.a1());
            }
            Ok(out)
        }
        Format::Text => {
            if roots.is_empty() {
                return Ok(format!("{x} has no square root (det = {})\n", x.det()));
            }
            Ok(roots.iter().map(|r| format!("{r}\n")).collect())
        }
    }
}

fn cmd_laxton_eq(cli: &Cli, params: &Params, x: &str, y: &str) -> Out {
    let ctx = context(params)?;
    let (x, y) = (element(&ctx, x)?, element(&ctx, y)?);
    let w = laxton_eq(&x, &y)?;
    match cli.format {
        Format::Json => pretty(&json!({ "x": x, "y": y, "equivalent": w.is_some(), "witness": w })),
        Format::Csv => Ok(match &w {
            Some(w) => format!("equivalent,k,lambda\ntrue,{},{}\n", w.k, w.lambda),
            None => "equivalent,k,lambda\nfalse,,\n".into(),
        }),
        Format::Text => Ok(match &w {
            Some(w) => format!("{x} = {} · {y} · D^{}\n", w.lambda, w.k),
            None => format!("{x} and {y} are not shift-equivalent\n"),
        }),
    }
}

fn cmd_divisors(cli: &Cli, t: &str, x: &str, primes: Option<usize>) -> Out {
    let t = parse_rational(t)?;
    let ctx = ParamPair::one_param(t.clone());
    let x = element(&ctx, x)?;
    let w = match primes {
        Some(k) => PrimeWindow::FirstOddPrimes(k),
        None => window(cli)?,
    };
    let conv = convention(cli)?.unwrap_or(Convention::PiT);
    let lab = DivisorLab::new(&t, w, cli.parallel)?;
    let gamma = lab.gamma(&x)?;
    let density = lab.density(gamma.len(), conv);
    match cli.format {
        Format::Json => pretty(&json!({
            "t": t,
            "element": x,
            "window": w,
            "convention": conv,
            "count": gamma.len(),
            "denominator": lab.denominator(conv),
            "density": density,
            "primes": gamma,
            "excluded": lab.excluded(),
        })),
        Format::Csv => {
            let mut out = String::from("prime\n");
            for p in &gamma {
                let _ = writeln!(out, "{p}");
            }
            Ok(out)
        }
        Format::Text => Ok(format!(
            "{} of {} primes ({}, {conv}), density {density:.6}\n{}\n",
            gamma.len(),
            lab.denominator(conv),
            w,
            join(&gamma, " ")
        )),
    }
}

fn cmd_partition(cli: &Cli, t: &str, x: Option<&str>, cubic: bool) -> Out {
    let t = parse_rational(t)?;
    let w = window(cli)?;
    let lab = DivisorLab::new(&t, w, cli.parallel)?;
    if cubic {
        let part = lab.cubic_partition()?;
        return match cli.format {
            Format::Json => pretty(&part),
            Format::Csv => {
                let sets = [("WS", &part.gamma_ws), ("Y", &part.gamma_y), ("WY", &part.gamma_wy), ("S", &part.gamma_s)];
                let mut out = String::from("set,count,density,primes\n");
                for ((name, s), d) in sets.iter().zip(part.densities) {
                    let _ = writeln!(out, "{name},{},{d:.6},{}", s.len(), join(s, " "));
                }
                Ok(out)
            }
            Format::Text => Ok(format!(
                "t = {t}, window {w}\nWS: {}  Y: {}  WY: {}  S: {}\ndensities {:.4} {:.4} {:.4} {:.4}\ndisjoint: {}  union is S: {}\n",
                part.gamma_ws.len(),
                part.gamma_y.len(),
                part.gamma_wy.len(),
                part.gamma_s.len(),
                part.densities[0],
                part.densities[1],
                part.densities[2],
                part.densities[3],
                part.disjoint,
                part.union_matches
            )),
        };
    }
    let x = x.ok_or_else(|| Failure::Input("--x is required without --cubic".into()))?;
    let x = element(&ParamPair::one_param(t.clone()), x)?;
    let six = lab.partition_six(&x)?;
    match cli.format {
        Format::Json => pretty(&six),
        Format::Csv => {
            let mut out = String::from("set,count,primes\n");
            for s in &six.sets {
                let _ = writeln!(out, "{},{},{}", s.name, s.primes.len(), join(&s.primes, " "));
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = format!("X = {x} at t = {t}, window {w}\n");
            for s in &six.sets {
                let _ = writeln!(out, "  {:<6} {}", s.name, s.primes.len());
            }
            let _ = writeln!(
                out,
                "square: {}\ndisjoint: {}  union is the square's set: {}  relations hold: {}",
                six.gamma_x2.len(),
                six.disjoint,
                six.union_matches,
                six.relations_hold
            );
            Ok(out)
        }
    }
}

fn cmd_table3(cli: &Cli) -> Out {
    let w = window(cli)?;
    let conventions = match convention(cli)? {
        Some(c) => vec![c],
        None => vec![Convention::PiT, Convention::AllPrimes],
    };
    let mut runs = Vec::new();
    for c in conventions {
        let reports = table3(w, c, cli.parallel, cli.full)?;
        let deviations = table3_deviations(&reports, TABLE3_TOLERANCE);
        runs.push((c, reports, deviations));
    }
    for (c, _, devs) in &runs {
        for d in devs {
            eprintln!(
                "deviation ({c}): row {} {} published {:.3} computed {:.6}",
                d.row + 1,
                d.column,
                d.published,
                d.computed
            );
        }
    }
    match cli.format {
        Format::Json => {
            let v: Vec<Value> = runs
                .iter()
                .map(|(c, reports, devs)| json!({"convention": c, "rows": reports, "deviations": devs}))
                .collect();
            pretty(&v)
        }
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for (_, reports, _) in &runs {
                for r in reports {
                    out.push_str(&r.csv_row());
                    out.push('\n');
                }
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            for (c, reports, devs) in &runs {
                let _ = writeln!(out, "window {w}, convention {c}");
                let _ = writeln!(out, "  {:<8} {:<9} {:>17} {:>17} {:>17} {:>17}", "(T,Q)", "[x0,x1]", "X", "WX", "X&WX", "product");
                for (i, (r, row)) in reports.iter().zip(TABLE3.iter()).enumerate() {
                    let cells: Vec<String> = r
                        .densities()
                        .iter()
                        .zip(row.densities)
                        .enumerate()
                        .map(|(j, (got, want))| {
                            let flag = if devs.iter().any(|d| d.row == i && d.column == seqgroup::lab::DENSITY_COLUMNS[j]) { "!" } else { " " };
                            format!("{got:.3} ({want:.3}){flag}")
                        })
                        .collect();
                    let _ = writeln!(
                        out,
                        "  {:<8} {:<9} {}",
                        format!("({},{})", r.big_t, r.big_q),
                        format!("[{},{}]", r.x0, r.x1),
                        cells.iter().map(|c| format!("{c:>17}")).collect::<String>()
                    );
                }
                let _ = writeln!(out, "  {} deviations above {TABLE3_TOLERANCE}", devs.len());
            }
            Ok(out)
        }
    }
}

fn cmd_independence(cli: &Cli, big_t: i64, big_q: i64, x: &str) -> Out {
    let (x0, x1) = parse_two_ints(x)?;
    let conv = convention(cli)?.unwrap_or(Convention::PiT);
    let rep = independence_report(big_t, big_q, x0, x1, window(cli)?, conv, cli.parallel, cli.full)?;
    for w in &rep.warnings {
        eprintln!("warning: {w}");
    }
    match cli.format {
        Format::Json => pretty(&rep),
        Format::Csv => Ok(format!("{CSV_HEADER}\n{}\n", rep.csv_row())),
        Format::Text => {
            let h = &rep.hypotheses;
            Ok(format!(
                "(T,Q) = ({big_t},{big_q}), [x0,x1] = [{x0},{x1}]; image [{} {}] at t = {}\n\
                 window {} ({} primes, {} admissible), convention {}\n\
                 X {:.4}  WX {:.4}  X&WX {:.4}  product {:.4}\n\
                 residue ceilings {:.4} {:.4} {:.4}\n\
                 simple {}  noncyclotomic {}  det square {}  Q square {}  det core prime {}\n",
                rep.image[0],
                rep.image[1],
                rep.t,
                rep.window,
                rep.window_len,
                rep.denominator,
                rep.convention,
                rep.density_x,
                rep.density_wx,
                rep.density_intersection,
                rep.density_product,
                rep.qr_ceilings[0],
                rep.qr_ceilings[1],
                rep.qr_ceilings[2],
                h.pair_simple,
                h.noncyclotomic,
                h.det_x_square,
                h.q_square,
                h.det_core_prime
            ))
        }
    }
}

fn run(cli: &Cli) -> Out {
    match &cli.command {
        Command::Seq { params, x, range } => cmd_seq(cli, params, x, range),
        Command::Classify { t } => cmd_classify(cli, &t.t),
        Command::Torsion { t, group } => cmd_torsion(cli, &t.t, *group),
        Command::Sqrt { params, x } => cmd_sqrt(cli, params, x),
        Command::LaxtonEq { params, x, y } => cmd_laxton_eq(cli, params, x, y),
        Command::Divisors { t, x, primes } => cmd_divisors(cli, &t.t, x, *primes),
        Command::Partition { t, x, cubic } => cmd_partition(cli, &t.t, x.as_deref(), *cubic),
        Command::Table3 => cmd_table3(cli),
        Command::Independence { big_t, big_q, x } => cmd_independence(cli, *big_t, *big_q, x),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(|| run(&cli))
        .unwrap_or_else(|_| Err(Failure::Internal("internal error".into())));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
