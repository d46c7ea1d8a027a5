use std::io::Read;
use std::path::Path;
use std::time::Duration;

use clustersing::blowup::resolve;
use clustersing::continuant::{continuant_det_oracle, continuant_identities, standard_continuant};
use clustersing::groebner::{GbConfig, Ideal};
use clustersing::presentations::{eliminate_check, reduced_presentation};
use clustersing::quiver::{dynkin_seed, is_finite_type, DynkinType, ExchangeMatrix, MatrixJson, Quiver, QuiverJson};
use clustersing::seed::{check_laurent, explore_exchange_graph, lower_bound_presentation, Seed, SeedJson};
use clustersing::singularity::{
    brute_force_check, compare_predicted, default_theorem_a_cells, deformed_continuant_sing, predicted_locus,
    singular_locus, theorem_a_branch, theorem_c_components, verify_theorem_a, verify_theorem_c,
};
use clustersing::FieldSpec;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{emit, CliError, Report, Status};
use crate::{Cli, Command, OptionalTypeRank, TypeRank};

pub fn run(cli: &Cli) -> Result<Status, CliError> {
    let cfg = GbConfig::with_max_pairs(cli.common.max_pairs);
    let report = match &cli.command {
        Command::Mutate { seed, input, sequence, characteristic } => mutate(seed, input.as_deref(), sequence, *characteristic)?,
        Command::ExchangeGraph { seed, input, budget, random_runs, rng_seed, max_vertices, max_length, finite_type_budget } => {
            let start = match input {
                Some(path) => start_seed(&read_json(path)?, FieldSpec::rationals())?,
                None => {
                    let (kind, n) = optional_type_rank(seed)?;
                    Seed::initial(FieldSpec::rationals(), dynkin_seed(kind, n)?.matrix)
                }
            };
            exchange_graph(&start, *budget, *finite_type_budget, *random_runs, *rng_seed, *max_vertices, *max_length)?
        }
        Command::Present { seed, characteristic, lower_bound, audit } => {
            let (kind, n) = type_rank(seed)?;
            let field = field(*characteristic)?;
            if *lower_bound {
                present_lower_bound(kind, n, field, &cfg)?
            } else if *audit {
                let a = eliminate_check(kind, n, field, &cfg)?;
                let md = format!(
                    "# Elimination audit for {} over {}\n\n- eliminated: {}\n- matches reduced presentation: {}\n",
                    a.label,
                    field,
                    a.eliminated.join(", "),
                    a.matches
                );
                let status = if a.matches { Status::Ok } else { Status::Mismatch };
                Report::with_markdown(serde_json::to_value(&a)?, md).status(status)
            } else {
                let p = reduced_presentation(kind, n, field)?;
                let text = p.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join("\n");
                Report::new(serde_json::to_value(p.to_json())?, p.to_markdown(), text)
            }
        }
        Command::SingularLocus { seed, characteristic, brute_force } => {
            let (kind, n) = type_rank(seed)?;
            singular(kind, n, field(*characteristic)?, *brute_force, &cfg)?
        }
        Command::VerifyTheoremA { types, max_rank, chars } => {
            for &p in chars {
                field(p)?;
            }
            let cells = theorem_a_cells(types, *max_rank)?;
            let r = verify_theorem_a(&cells, chars, &cfg);
            let failed: Vec<&Option<String>> = r.cells.iter().filter(|c| !c.passed).map(|c| &c.error).collect();
            let status = if failed.is_empty() {
                Status::Ok
            } else if failed.iter().all(|e| e.as_deref().is_some_and(|e| e.contains("budget"))) {
                Status::Budget
            } else {
                Status::Mismatch
            };
            Report::with_markdown(serde_json::to_value(&r)?, r.to_markdown()).status(status)
        }
        Command::VerifyTheoremC { ns, characteristic } => {
            let field = field(*characteristic)?;
            if let Some(&n) = ns.iter().find(|&&n| n < 3) {
                return Err(CliError::usage(format!("star rank {n} is below 3")));
            }
            let r = verify_theorem_c(ns, field, &cfg);
            let status = if r.all_passed() { Status::Ok } else { Status::Mismatch };
            Report::with_markdown(serde_json::to_value(&r)?, r.to_markdown()).status(status)
        }
        Command::Resolve { seed, characteristic } => {
            let (kind, n) = type_rank(seed)?;
            let trace = resolve(kind, n, field(*characteristic)?, &cfg)?;
            let text = trace.to_text();
            let md = format!("# Resolution of {} over {}\n\n```\n{}```\n", trace.label, trace.field, text);
            let status = if trace.resolved { Status::Ok } else { Status::Mismatch };
            Report::new(serde_json::to_value(trace.to_json())?, md, text).status(status)
        }
        Command::Continuant { n, identities, deformation, chars, lambda } => {
            let fields = chars.iter().map(|&p| field(p)).collect::<Result<Vec<_>, _>>()?;
            if *identities {
                continuant_identity_report(*n, &fields)?
            } else if *deformation {
                deformation_report(*n, &fields, lambda, &cfg)?
            } else {
                continuant_build(*n, &fields)?
            }
        }
        Command::Serve { port, host, capacity, ttl_minutes, finite_type_budget, cors_origin } => {
            let config = clustersing_service::ServiceConfig {
                host: host.clone(),
                port: *port,
                capacity: *capacity,
                idle_ttl: Duration::from_secs(ttl_minutes * 60),
                finite_type_budget: *finite_type_budget,
                cors_origins: cors_origin.clone(),
                ..Default::default()
            };
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(clustersing_service::serve(config)).map_err(|e| CliError::usage(e.to_string()))?;
            return Ok(Status::Ok);
        }
    };
    emit(&cli.common, report)
}

fn field(p: u64) -> Result<FieldSpec, CliError> {
    Ok(FieldSpec::new(p)?)
}

fn parse_kind(kind: &str) -> Result<DynkinType, CliError> {
    Ok(kind.parse::<DynkinType>()?)
}

fn resolve_rank(kind: DynkinType, rank: Option<usize>) -> Result<(DynkinType, usize), CliError> {
    let n = rank.or(kind.fixed_rank()).ok_or_else(|| CliError::usage(format!("type {kind} needs --rank")))?;
    kind.check_rank(n)?;
    Ok((kind, n))
}

fn type_rank(t: &TypeRank) -> Result<(DynkinType, usize), CliError> {
    resolve_rank(parse_kind(&t.kind)?, t.rank)
}

fn optional_type_rank(t: &OptionalTypeRank) -> Result<(DynkinType, usize), CliError> {
    let kind = t.kind.as_deref().ok_or_else(|| CliError::usage("give --type (with --rank) or --input"))?;
    resolve_rank(parse_kind(kind)?, t.rank)
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let mut raw = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut raw)?;
    } else {
        raw = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(serde_json::from_str(&raw)?)
}

/// The objects `mutate` accepts, told apart by their keys.
enum Mutable {
    Quiver(Quiver),
    Matrix(ExchangeMatrix),
    Seed(Seed),
}

fn parse_mutable(v: &Value, field: FieldSpec) -> Result<Mutable, CliError> {
    if v.get("cluster").is_some() {
        Ok(Mutable::Seed(Seed::from_json(field, &serde_json::from_value::<SeedJson>(v.clone())?)?))
    } else if v.get("arrows").is_some() {
        Ok(Mutable::Quiver(Quiver::from_json(&serde_json::from_value::<QuiverJson>(v.clone())?)?))
    } else if v.get("b").is_some() {
        Ok(Mutable::Matrix(ExchangeMatrix::from_json(&serde_json::from_value::<MatrixJson>(v.clone())?)?))
    } else {
        Err(CliError::usage("input is neither a seed (cluster), a quiver (arrows) nor a matrix (b)"))
    }
}

fn start_seed(v: &Value, field: FieldSpec) -> Result<Seed, CliError> {
    Ok(match parse_mutable(v, field)? {
        Mutable::Seed(s) => s,
        Mutable::Quiver(q) => Seed::initial(field, q.to_matrix()),
        Mutable::Matrix(m) => Seed::initial(field, m),
    })
}

fn zero_based(sequence: &[usize], rank: usize) -> Result<Vec<usize>, CliError> {
    sequence
        .iter()
        .map(|&v| if v == 0 || v > rank { Err(CliError::usage(format!("vertex {v} outside 1..={rank}"))) } else { Ok(v - 1) })
        .collect()
}

fn matrix_text(m: &ExchangeMatrix) -> String {
    m.entries().iter().map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<String>()).collect::<Vec<_>>().join("\n")
}

fn mutate(seed: &OptionalTypeRank, input: Option<&Path>, sequence: &[usize], p: u64) -> Result<Report, CliError> {
    let field = field(p)?;
    let object = match input {
        Some(path) => parse_mutable(&read_json(path)?, field)?,
        None => {
            let (kind, n) = optional_type_rank(seed)?;
            Mutable::Seed(Seed::initial(field, dynkin_seed(kind, n)?.matrix))
        }
    };
    Ok(match object {
        Mutable::Seed(s) => {
            let seq = zero_based(sequence, s.rank())?;
            let s = s.mutate_sequence(&seq)?;
            let entries: Vec<String> = s.cluster().iter().map(|c| c.to_string()).collect();
            let text = format!(
                "{}\n\n{}",
                entries.iter().enumerate().map(|(i, c)| format!("{}: {c}", i + 1)).collect::<Vec<_>>().join("\n"),
                matrix_text(s.matrix())
            );
            let md = format!(
                "| vertex | cluster variable |\n|---|---|\n{}\nexchange matrix `{}`\n",
                entries.iter().enumerate().map(|(i, c)| format!("| {} | `{c}` |\n", i + 1)).collect::<String>(),
                s.matrix()
            );
            Report::new(serde_json::to_value(s.to_json())?, md, text)
        }
        Mutable::Matrix(m) => {
            let m = m.mutate_sequence(&zero_based(sequence, m.rank())?)?;
            Report::new(serde_json::to_value(m.to_json())?, format!("`{m}`\n"), matrix_text(&m))
        }
        Mutable::Quiver(q) => {
            let mut q = q;
            for k in zero_based(sequence, q.vertex_count())? {
                q = q.mutate(k)?;
            }
            let arrows: Vec<String> =
                q.arrows().map(|(i, j, m)| if m == 1 { format!("{} -> {}", i + 1, j + 1) } else { format!("{} -{m}-> {}", i + 1, j + 1) }).collect();
            let md = arrows.iter().map(|a| format!("- {a}\n")).collect::<String>();
            Report::new(serde_json::to_value(q.to_json())?, md, arrows.join("\n"))
        }
    })
}

fn random_acyclic(rng: &mut ChaCha8Rng, n: usize) -> Result<ExchangeMatrix, CliError> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut b = vec![vec![0i64; n]; n];
    for a in 0..n {
        for c in a + 1..n {
            if rng.gen_bool(0.5) {
                let (i, j) = (order[a], order[c]);
                b[i][j] = 1;
                b[j][i] = -1;
            }
        }
    }
    Ok(ExchangeMatrix::new(b)?)
}

fn exchange_graph(
    start: &Seed,
    budget: usize,
    finite_type_budget: usize,
    runs: usize,
    rng_seed: u64,
    max_vertices: usize,
    max_length: usize,
) -> Result<Report, CliError> {
    if max_vertices < 2 {
        return Err(CliError::usage("--max-vertices must be at least 2"));
    }
    let r = explore_exchange_graph(start, budget)?;
    let finite = is_finite_type(start.matrix(), finite_type_budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut failures = Vec::new();
    for run in 0..runs {
        let n = rng.gen_range(2..=max_vertices);
        let b = random_acyclic(&mut rng, n)?;
        let len = rng.gen_range(0..=max_length);
        let seq: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        if let Some(w) = check_laurent(&Seed::initial(FieldSpec::rationals(), b.clone()), &seq)? {
            failures.push(json!({ "run": run, "matrix": b.to_json(), "sequence": seq.iter().map(|k| k + 1).collect::<Vec<_>>(), "witness": w }));
        }
    }
    let json = json!({
        "seeds": r.seeds,
        "cluster_variable_count": r.cluster_variables.len(),
        "cluster_variables": r.cluster_variables,
        "complete": r.complete,
        "non_laurent": r.non_laurent,
        "finite_type": finite,
        "random_laurent": { "runs": runs, "rng_seed": rng_seed, "failures": failures },
    });
    let mut md = format!(
        "# Exchange graph\n\n- seeds up to relabelling: {}{}\n- cluster variables: {}\n- non-Laurent entries: {}\n- finite type: {}\n",
        r.seeds,
        if r.complete { "" } else { " (budget exhausted)" },
        r.cluster_variables.len(),
        r.non_laurent.len(),
        finite.label()
    );
    if runs > 0 {
        md += &format!("- random Laurent checks: {} run(s), {} failure(s), seed {}\n", runs, failures.len(), rng_seed);
    }
    md += "\n";
    md += &r.cluster_variables.iter().map(|v| format!("- `{v}`\n")).collect::<String>();
    let status = if !r.complete {
        Status::Budget
    } else if !r.non_laurent.is_empty() || !failures.is_empty() {
        Status::Mismatch
    } else {
        Status::Ok
    };
    Ok(Report::with_markdown(json, md).status(status))
}

fn present_lower_bound(kind: DynkinType, n: usize, field: FieldSpec, cfg: &GbConfig) -> Result<Report, CliError> {
    let lower = lower_bound_presentation(field, &dynkin_seed(kind, n)?.matrix);
    let gb = lower.is_groebner_basis(cfg)?;
    let gens: Vec<String> = lower.generators.iter().map(|g| g.to_string()).collect();
    let json = json!({
        "label": kind.label(n),
        "field": field,
        "variables": lower.names.to_vec(),
        "generators": gens,
        "acyclic": lower.acyclic,
        "groebner_basis": gb,
    });
    let md = format!(
        "# Lower-bound presentation of {} over {}\n\n- acyclic: {}\n- generators form a Gröbner basis: {}\n\n{}",
        kind.label(n),
        field,
        lower.acyclic,
        gb,
        gens.iter().map(|g| format!("- `{g}`\n")).collect::<String>()
    );
    let status = if gb || !lower.acyclic { Status::Ok } else { Status::Mismatch };
    Ok(Report::with_markdown(json, md).status(status))
}

fn singular(kind: DynkinType, n: usize, field: FieldSpec, brute_force: bool, cfg: &GbConfig) -> Result<Report, CliError> {
    let pres = reduced_presentation(kind, n, field)?;
    let mut report = singular_locus(&pres, cfg)?;
    let components: Vec<Ideal> = if kind == DynkinType::Star {
        theorem_c_components(n).iter().map(|s| Ideal::of_variables(field, pres.names().clone(), s)).collect()
    } else {
        let (branch, _) = theorem_a_branch(kind, n, field.characteristic());
        if branch.is_singular() {
            predicted_locus(&pres, branch)?.components
        } else {
            Vec::new()
        }
    };
    if !components.is_empty() {
        report.predicted = Some(compare_predicted(&report, &components, cfg)?);
    }
    let mut status = if report.predicted.as_ref().is_none_or(|m| m.matches) { Status::Ok } else { Status::Mismatch };
    let mut json = serde_json::to_value(report.to_json())?;
    let mut md = report.to_markdown();
    if brute_force {
        if field.is_rational() {
            return Err(CliError::usage("--brute-force needs a prime characteristic"));
        }
        let b = brute_force_check(&pres, cfg)?;
        md += &format!(
            "\nPoint enumeration over {}: {} points, {} singular by the minors, {} on the computed locus, agree: {}\n",
            field, b.points, b.singular_points, b.locus_points, b.agree
        );
        if !b.agree {
            status = Status::Mismatch;
        }
        json["brute_force"] = serde_json::to_value(&b)?;
    }
    Ok(Report::with_markdown(json, md).status(status))
}

fn theorem_a_cells(types: &[String], max_rank: Option<usize>) -> Result<Vec<(DynkinType, usize)>, CliError> {
    let kinds: Vec<DynkinType> = if types.is_empty() {
        DynkinType::ALL.iter().copied().filter(|&k| k != DynkinType::Star).collect()
    } else {
        types.iter().map(|t| parse_kind(t)).collect::<Result<_, _>>()?
    };
    if kinds.contains(&DynkinType::Star) {
        return Err(CliError::usage("star quivers are checked by verify-theorem-c"));
    }
    let defaults = default_theorem_a_cells();
    let mut cells = Vec::new();
    for kind in kinds {
        let listed: Vec<(DynkinType, usize)> = defaults.iter().copied().filter(|c| c.0 == kind).collect();
        match (kind.fixed_rank(), max_rank) {
            (None, Some(max)) => {
                let lo = listed.iter().map(|c| c.1).min().unwrap_or(kind.min_rank());
                cells.extend((lo..=max).map(|n| (kind, n)));
            }
            (Some(r), Some(max)) if r > max => {}
            _ => cells.extend(listed),
        }
    }
    if cells.is_empty() {
        return Err(CliError::usage("no cells selected"));
    }
    Ok(cells)
}

fn continuant_build(n: usize, fields: &[FieldSpec]) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    let mut md = format!("# Continuant of order {n}\n\n");
    let mut text = String::new();
    let mut ok = true;
    for &field in fields {
        let p = standard_continuant(field, n);
        let oracle = continuant_det_oracle(field, n)? == p;
        ok &= oracle;
        rows.push(json!({ "field": field, "n": n, "terms": p.nterms(), "continuant": p.to_string(), "determinant_oracle": oracle }));
        md += &format!("- over {field}: {} terms, equals the tridiagonal determinant: {oracle}\n\n  `{p}`\n", p.nterms());
        text += &format!("{p}\n");
    }
    let status = if ok { Status::Ok } else { Status::Mismatch };
    Ok(Report::new(Value::Array(rows), md, text).status(status))
}

fn continuant_identity_report(n: usize, fields: &[FieldSpec]) -> Result<Report, CliError> {
    let reports = fields.iter().map(|&f| continuant_identities(f, n)).collect::<Result<Vec<_>, _>>()?;
    let mut md = String::from("| n | field | symmetry | split recursion | derivative formula | mod-4 truncation | determinant |\n|---|---|---|---|---|---|---|\n");
    let count = |v: &[(usize, bool)]| format!("{}/{}", v.iter().filter(|r| r.1).count(), v.len());
    for r in &reports {
        md += &format!(
            "| {} | {} | {} | {} | {} | {} | {} |\n",
            r.n,
            r.field,
            r.symmetry,
            count(&r.split_recursion),
            count(&r.derivative),
            r.low_order,
            r.determinant_oracle
        );
    }
    let ok = reports.iter().all(|r| r.all_hold());
    let status = if ok { Status::Ok } else { Status::Mismatch };
    Ok(Report::with_markdown(serde_json::to_value(&reports)?, md).status(status))
}

fn deformation_report(n: usize, fields: &[FieldSpec], lambdas: &[i64], cfg: &GbConfig) -> Result<Report, CliError> {
    let mut verdicts = Vec::new();
    for &field in fields {
        let mut seen = Vec::new();
        for &l in lambdas {
            let lambda = field.from_i64(l);
            if !seen.contains(&lambda) {
                verdicts.push(deformed_continuant_sing(n, &lambda, cfg)?);
                seen.push(lambda);
            }
        }
    }
    let mut md = String::from("| n | λ | field | expected | computed | origin only | A_1 certified | match |\n|---|---|---|---|---|---|---|---|\n");
    for v in &verdicts {
        let flag = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
        md += &format!(
            "| {} | {} | {} | {:?} | {:?} | {} | {} | {} |\n",
            v.n,
            v.lambda,
            v.field,
            v.expected,
            v.computed,
            flag(v.origin_only),
            flag(v.a1.as_ref().map(|a| a.certified)),
            v.matches
        );
    }
    let status = if verdicts.iter().all(|v| v.matches) { Status::Ok } else { Status::Mismatch };
    Ok(Report::with_markdown(serde_json::to_value(&verdicts)?, md).status(status))
}
