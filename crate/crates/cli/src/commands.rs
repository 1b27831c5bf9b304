//! Dispatch from a resolved [`RunConfig`] to the engines.

use serde_json::{json, Value};
use vbranch_core::branching::{
    branch_with_setup, closed_form_law, genericity_check, mf_table, verify_with_table, BranchSetup, BranchingTable,
    LambdaSpec, LawFamily, VermaSpec,
};
use vbranch_core::exactla::Rational;
use vbranch_core::liealg::Weight;
use vbranch_core::pairs::{build_pair, PairSpec, SymmetricPair};
use vbranch_core::parabolic::{
    closed_orbit_census, closed_orbit_census_from_h, closedness_report, compatibility_report, criterion_iii_check,
    NilpotencyRoute, ParabolicChoice, ParabolicData,
};
use vbranch_core::Exec;

use crate::config::{usage, CommandKind, RunConfig};
use crate::envelope::{rat, weight_json, ResultEnvelope, Summand};

pub const SPOT_CHECK_SAMPLES: usize = 20;

fn pair_of(config: &RunConfig) -> anyhow::Result<SymmetricPair> {
    let id = config.pair.as_deref().ok_or_else(|| usage("missing --pair"))?;
    Ok(build_pair(id.parse::<PairSpec>()?)?)
}

fn parabolic_of(config: &RunConfig, pair: &SymmetricPair) -> anyhow::Result<(ParabolicChoice, ParabolicData)> {
    let choice: ParabolicChoice = config.parabolic.as_deref().unwrap_or("borel").parse()?;
    let p = choice.build(&pair.g)?;
    Ok((choice, p))
}

fn parse_weight(s: &str) -> anyhow::Result<Weight> {
    s.split(',')
        .map(|x| x.trim().parse::<Rational>().map_err(|_| usage(format!("bad λ coordinate {x:?}"))))
        .collect::<anyhow::Result<Vec<_>>>()
        .map(Weight)
}

pub fn parse_lambda(s: &str) -> anyhow::Result<LambdaSpec> {
    let s = s.trim();
    if s == "generic" {
        return Ok(LambdaSpec::Generic { int_part: None });
    }
    if let Some(rest) = s.strip_prefix("generic:") {
        return Ok(LambdaSpec::Generic { int_part: Some(parse_weight(rest)?) });
    }
    Ok(LambdaSpec::Numeric(parse_weight(s)?))
}

fn table_summands(t: &BranchingTable) -> Vec<Summand> {
    t.summands()
        .into_iter()
        .map(|(delta_displacement, multiplicity, degree)| Summand { delta_displacement, multiplicity, degree })
        .collect()
}

fn elapsed_ms(start: std::time::Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Runs the engines for `config`; the envelope carries no timing.
pub fn execute(config: &RunConfig, exec: Exec) -> anyhow::Result<ResultEnvelope> {
    let mut env = ResultEnvelope::new(config);
    match config.command {
        CommandKind::Pairs => pairs(config, &mut env)?,
        CommandKind::Analyze => analyze(config, &mut env)?,
        CommandKind::Census => census(config, &mut env, exec)?,
        CommandKind::Branch => branch(config, &mut env, exec)?,
        CommandKind::Verify if config.law.is_some() => verify_law(config, &mut env, exec)?,
        CommandKind::Verify => verify_pair(config, &mut env, exec)?,
        CommandKind::MfScan => mf(config, &mut env)?,
    }
    Ok(env)
}

/// Wall-clock wrapper used by `--timing`.
pub fn execute_timed(config: &RunConfig, exec: Exec) -> anyhow::Result<(ResultEnvelope, u64)> {
    let start = std::time::Instant::now();
    let env = execute(config, exec)?;
    Ok((env, elapsed_ms(start)))
}

fn pairs(config: &RunConfig, env: &mut ResultEnvelope) -> anyhow::Result<()> {
    let mut rows = Vec::new();
    for spec in PairSpec::catalog(config.max_rank) {
        let pr = build_pair(spec)?;
        rows.push(json!({
            "id": spec.to_string(),
            "label": pr.label,
            "dim_g": pr.dim_g(),
            "dim_fixed": pr.dim_fixed(),
            "rank_g": pr.g.rank(),
            "rank_fixed": pr.rank_fixed(),
            "inner": pr.tau.is_inner,
        }));
    }
    env.details = json!({ "pairs": rows });
    Ok(())
}

fn analyze(config: &RunConfig, env: &mut ResultEnvelope) -> anyhow::Result<()> {
    let pr = pair_of(config)?;
    let (_, p) = parabolic_of(config, &pr)?;
    let compat = compatibility_report(&p, &pr)?;
    let closed = closedness_report(&p, &pr)?;
    let spot = criterion_iii_check(&closed.pr_u, &pr, SPOT_CHECK_SAMPLES, config.seed, NilpotencyRoute::Matrix)?;
    env.closed = Some(closed.closed);
    env.compatible = Some(compat.compatible);
    env.gk_dim = closed.gk_dim;
    let h_fixed = match &compat.h_fixed {
        Some(h) => weight_json(&pr.restricted_coords(h)?),
        None => Value::Null,
    };
    env.details = json!({
        "h": weight_json(&p.h),
        "is_borel": p.is_borel(),
        "dim_levi": p.l.dim(),
        "dim_nilradical": p.u_plus.dim(),
        "tau_stable": compat.tau_stable,
        "h_fixed": h_fixed,
        "h_fixed_reproduces_p": compat.h_fixed_reproduces_p,
        "bracket_closed": closed.nilpotency.bracket_closed,
        "nilpotent": closed.nilpotency.nilpotent,
        "dim_pr_u": closed.pr_u.dim(),
        "dim_p_tau": closed.dim_p_tau,
        "levi_verified": closed.levi_verified,
        "spot_check": { "samples": SPOT_CHECK_SAMPLES, "seed": config.seed, "all_nilpotent": spot },
        "criteria_agree": spot == closed.closed || !closed.nilpotency.bracket_closed,
    });
    Ok(())
}

fn census(config: &RunConfig, env: &mut ResultEnvelope, exec: Exec) -> anyhow::Result<()> {
    let pr = pair_of(config)?;
    let choice: ParabolicChoice = config.parabolic.as_deref().unwrap_or("borel").parse()?;
    let report = match choice.subset(&pr.g)? {
        Some(sub) => closed_orbit_census(&pr, &sub, exec)?,
        None => closed_orbit_census_from_h(&pr, &choice.h_coords(&pr.g)?, exec)?,
    };
    let reps: Vec<Value> = report
        .representatives
        .iter()
        .map(|r| json!({ "h": weight_json(&r.parabolic.h), "gk_dim": r.gk_dim, "class_size": r.class_size }))
        .collect();
    env.details = json!({
        "total_parabolics_containing_j": report.total_parabolics_containing_j,
        "closed_translates": report.closed_translates,
        "closed_count": report.closed_count,
        "gk_dims": report.gk_dims(),
        "representatives": reps,
    });
    Ok(())
}

fn branch_table(
    config: &RunConfig,
    pr: &SymmetricPair,
    env: &mut ResultEnvelope,
) -> anyhow::Result<(VermaSpec, BranchSetup)> {
    let (_, p) = parabolic_of(config, pr)?;
    let closed = closedness_report(&p, pr)?;
    let spec = VermaSpec { parabolic: p, lambda: parse_lambda(&config.lambda)? };
    let setup = BranchSetup::new(&spec, pr)?;
    env.closed = Some(closed.closed);
    env.compatible = Some(true);
    env.gk_dim = closed.gk_dim;
    Ok((spec, setup))
}

fn branch(config: &RunConfig, env: &mut ResultEnvelope, exec: Exec) -> anyhow::Result<()> {
    let pr = pair_of(config)?;
    let (spec, setup) = branch_table(config, &pr, env)?;
    let table = branch_with_setup(&spec, &setup, config.degree, exec)?;
    env.summands = table_summands(&table);
    env.assumptions = table.genericity_assumptions.clone();
    let mut details = json!({
        "base_offset": weight_json(&table.base_offset),
        "h_fixed": weight_json(&setup.h_restricted),
        "degree_bound": table.degree_bound,
        "entries": table.entries.len(),
        "multiplicity_free": table.is_multiplicity_free(),
        "generic_lambda": spec.is_generic(),
    });
    if let LambdaSpec::Numeric(lam) = &spec.lambda {
        let g = genericity_check(&pr, &spec.parabolic, lam, Some(&table))?;
        details["genericity"] = json!({ "simple_certified": g.simple_certified, "distinct_infchar": g.distinct_infchar });
        if g.distinct_infchar == Some(true) {
            env.assumptions.push("direct sum certified: summands have distinct infinitesimal characters".into());
        } else {
            env.assumptions.push("direct sum not certified at this λ; identity holds in the Grothendieck group".into());
        }
    }
    env.details = details;
    Ok(())
}

fn verify_pair(config: &RunConfig, env: &mut ResultEnvelope, exec: Exec) -> anyhow::Result<()> {
    let pr = pair_of(config)?;
    let (spec, setup) = branch_table(config, &pr, env)?;
    let lv = Rational::from_int(config.level as i64);
    let n = BranchSetup::degree_for_level(&setup.a, &lv);
    let table = branch_with_setup(&spec, &setup, n, exec)?;
    let rep = verify_with_table(&setup, &table, config.level as u64)?;
    env.summands = table_summands(&table);
    env.assumptions = table.genericity_assumptions.clone();
    env.details = json!({
        "holds": rep.holds,
        "level": rat(&rep.level),
        "table_degree": rep.table_degree,
        "lhs_weights": rep.lhs_weights,
        "rhs_weights": rep.rhs_weights,
        "base_offset": weight_json(&table.base_offset),
    });
    Ok(())
}

fn verify_law(config: &RunConfig, env: &mut ResultEnvelope, exec: Exec) -> anyhow::Result<()> {
    let family: LawFamily = config.law.as_deref().unwrap_or_default().parse()?;
    let n = config.n.ok_or_else(|| usage("--law needs --n"))?;
    let l = config.l.unwrap_or(0);
    let spec_id = family.pair_spec(n, l)?;
    let pr = build_pair(spec_id)?;
    let p = ParabolicChoice::Borel.build(&pr.g)?;
    let closed = closedness_report(&p, &pr)?;
    let spec = VermaSpec::generic(p);
    let setup = BranchSetup::new(&spec, &pr)?;
    let engine = branch_with_setup(&spec, &setup, config.degree, exec)?;
    let law = closed_form_law(family, n, l, config.degree)?;
    let tables_agree = engine.summands() == law.summands();
    // Largest level whose truncation only needs degrees ≤ N.
    let level = match &setup.a {
        Some(a) => (&Rational::from_int(config.degree as i64) * a).floor_i64().unwrap_or(0).max(0) as u64,
        None => 0,
    };
    let rep = verify_with_table(&setup, &law, level)?;
    env.pair = Some(spec_id.to_string());
    env.parabolic = Some(ParabolicChoice::Borel.to_string());
    env.closed = Some(closed.closed);
    env.compatible = Some(true);
    env.gk_dim = closed.gk_dim;
    env.summands = table_summands(&law);
    env.assumptions = law.genericity_assumptions.clone();
    env.assumptions.push("identity of characters in the Grothendieck group of O^{p'}".into());
    env.details = json!({
        "holds": tables_agree && rep.holds,
        "law": family.to_string(),
        "tables_agree": tables_agree,
        "engine_entries": engine.entries.len(),
        "law_entries": law.entries.len(),
        "character_identity": rep.holds,
        "level": rat(&rep.level),
        "multiplicity_free": engine.is_multiplicity_free(),
    });
    Ok(())
}

fn mf(config: &RunConfig, env: &mut ResultEnvelope) -> anyhow::Result<()> {
    let rows: Vec<Value> = mf_table(config.max_rank)?
        .into_iter()
        .map(|r| {
            json!({
                "id": r.spec.to_string(),
                "dim_g": r.dim_g,
                "dim_fixed": r.dim_fixed,
                "rank_g": r.rank_g,
                "rank_fixed": r.rank_fixed,
                "passes": r.passes,
            })
        })
        .collect();
    let passing: Vec<Value> = rows.iter().filter(|r| r["passes"] == Value::Bool(true)).map(|r| r["id"].clone()).collect();
    env.details = json!({ "rows": rows, "passing": passing });
    Ok(())
}

/// Exit status implied by a successful envelope.
pub fn exit_code(env: &ResultEnvelope) -> i32 {
    if env.command == "verify" && env.details["holds"] == Value::Bool(false) {
        1
    } else {
        0
    }
}

fn show_disp(d: &[i64]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn show_weight(v: &Value) -> String {
    let parts: Vec<&str> = v.as_array().map(|a| a.iter().filter_map(|x| x.as_str()).collect()).unwrap_or_default();
    format!("({})", parts.join(", "))
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

fn summand_lines(env: &ResultEnvelope, out: &mut String) {
    let base = &env.details["base_offset"];
    let zero = base.as_array().is_none_or(|a| a.iter().all(|x| x == "0"));
    let lam = if zero { "λ".to_string() } else { format!("λ{}", show_weight(base)) };
    out.push_str(&format!("summands: {}\n", env.summands.len()));
    for s in &env.summands {
        out.push_str(&format!(
            "  deg {:>2}  mult {:>3}  δ = {lam} + {}\n",
            s.degree,
            s.multiplicity,
            show_disp(&s.delta_displacement)
        ));
    }
}

/// Human-readable rendering; a function of the envelope alone.
pub fn render_text(env: &ResultEnvelope) -> String {
    let d = &env.details;
    let mut out = String::new();
    if let Some(p) = &env.pair {
        out.push_str(&format!("pair: {p}\n"));
    }
    if let Some(p) = &env.parabolic {
        out.push_str(&format!("parabolic: {p}\n"));
    }
    match env.command.as_str() {
        "pairs" => {
            for r in d["pairs"].as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "{:<24} {:<28} dim {:>3}/{:<3} rank {}/{} {}\n",
                    r["id"].as_str().unwrap_or(""),
                    r["label"].as_str().unwrap_or(""),
                    r["dim_g"],
                    r["dim_fixed"],
                    r["rank_g"],
                    r["rank_fixed"],
                    if r["inner"] == Value::Bool(true) { "inner" } else { "outer" }
                ));
            }
        }
        "analyze" => {
            out.push_str(&format!("H = {}\n", show_weight(&d["h"])));
            out.push_str(&format!("tau-stable: {}\n", d["tau_stable"]));
            out.push_str(&format!("compatible: {}\n", opt(&env.compatible)));
            if !d["h_fixed"].is_null() {
                out.push_str(&format!("H' (restricted) = {}\n", show_weight(&d["h_fixed"])));
            }
            out.push_str(&format!("closed: {}\n", opt(&env.closed)));
            out.push_str(&format!("GK dimension: {}\n", opt(&env.gk_dim)));
            out.push_str(&format!(
                "spot check ({} samples, seed {}): {}\n",
                d["spot_check"]["samples"], d["spot_check"]["seed"], d["spot_check"]["all_nilpotent"]
            ));
        }
        "census" => {
            out.push_str(&format!(
                "translates containing j: {}, closed: {}\n",
                d["total_parabolics_containing_j"], d["closed_translates"]
            ));
            out.push_str(&format!("closed_count: {}\n", d["closed_count"]));
            for r in d["representatives"].as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "  gk_dim {:>2}  class {:>3}  H = {}\n",
                    r["gk_dim"],
                    r["class_size"],
                    show_weight(&r["h"])
                ));
            }
        }
        "branch" => {
            out.push_str(&format!("GK dimension: {}\n", opt(&env.gk_dim)));
            out.push_str(&format!("degree bound: {}\n", d["degree_bound"]));
            summand_lines(env, &mut out);
            out.push_str(&format!("multiplicity free: {}\n", d["multiplicity_free"]));
        }
        "verify" => {
            if let Some(l) = d["law"].as_str() {
                out.push_str(&format!("law {l}: tables agree: {}\n", d["tables_agree"]));
            }
            out.push_str(&format!("level: {}\n", d["level"].as_str().unwrap_or("")));
            summand_lines(env, &mut out);
            let verdict = if d["holds"] == Value::Bool(true) { "identity holds" } else { "identity FAILS" };
            out.push_str(verdict);
            out.push('\n');
        }
        "mf-scan" => {
            for r in d["rows"].as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "{:<24} dim {:>3} - {:<3} <= rank {} + {}: {}\n",
                    r["id"].as_str().unwrap_or(""),
                    r["dim_g"],
                    r["dim_fixed"],
                    r["rank_g"],
                    r["rank_fixed"],
                    r["passes"]
                ));
            }
        }
        _ => {}
    }
    if !env.assumptions.is_empty() {
        out.push_str("assumptions:\n");
        for a in &env.assumptions {
            out.push_str(&format!("  - {a}\n"));
        }
    }
    if let Some(t) = env.timing_ms {
        out.push_str(&format!("time: {t} ms\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RawOptions;

    fn run(cmd: CommandKind, o: RawOptions) -> ResultEnvelope {
        execute(&RunConfig::resolve(cmd, &o).unwrap(), Exec::Sequential).unwrap()
    }

    #[test]
    fn lambda_parsing() {
        assert_eq!(parse_lambda("generic").unwrap(), LambdaSpec::Generic { int_part: None });
        assert!(matches!(parse_lambda("generic:1,0").unwrap(), LambdaSpec::Generic { int_part: Some(_) }));
        assert_eq!(parse_lambda("1/2,-3").unwrap(), LambdaSpec::Numeric(Weight(vec![Rational::new(1, 2), Rational::from_int(-3)])));
        assert!(parse_lambda("a,b").is_err());
    }

    #[test]
    fn bd_degree_one_has_three_summands() {
        let e = run(
            CommandKind::Branch,
            RawOptions { pair: Some("so_down_so:m=4".into()), degree: Some(1), ..Default::default() },
        );
        assert_eq!(e.summands.len(), 3);
        assert!(render_text(&e).contains("δ = λ + (-1, 0)"));
    }

    #[test]
    fn analyze_reports_gk_dim() {
        let e = run(
            CommandKind::Analyze,
            RawOptions { pair: Some("sp_down_gl:n=2".into()), parabolic: Some("siegel".into()), ..Default::default() },
        );
        assert_eq!(e.closed, Some(true));
        assert_eq!(e.compatible, Some(true));
        assert_eq!(e.details["criteria_agree"], Value::Bool(true));
    }

    #[test]
    fn failing_verify_exits_one() {
        let o = RawOptions { pair: Some("so_down_so:m=4".into()), ..Default::default() };
        let mut e = run(CommandKind::Verify, o);
        assert_eq!(exit_code(&e), 0);
        e.details["holds"] = Value::Bool(false);
        assert_eq!(exit_code(&e), 1);
    }
}
