use anyhow::{anyhow, Context, Result};
use metakit::arith::{LaurentNumber, PrimeField};
use metakit::catalog::lookup;
use metakit::cocycle::cocycle_check;
use metakit::hecke::{gk_coefficient, renorm_cocycle_check, structure_table, verify_presentation};
use metakit::hilbert::hilbert_symbol;
use metakit::metalattice::{dominant_lambda, dual_root_datum, heisenberg_dimensions, rho_dual_pairing};
use metakit::sl2::{gk_rank_one, Sl2Engine};
use serde_json::{json, Value};

use crate::source::{resolve, sl2_params, sl2_q_alpha, CoverArgs, DatumArgs};

/// A finished run: named pass/fail checks plus the JSON payload.
pub struct Report {
    pub command: &'static str,
    pub checks: Vec<(String, bool)>,
    pub result: Value,
}

impl Report {
    fn new(command: &'static str, result: Value) -> Self {
        Report { command, checks: Vec::new(), result }
    }

    fn check(mut self, name: impl Into<String>, pass: bool) -> Self {
        self.checks.push((name.into(), pass));
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, p)| *p)
    }

    pub fn to_json(&self) -> String {
        let checks: Vec<Value> = self.checks.iter().map(|(name, pass)| json!({"name": name, "pass": pass})).collect();
        let doc = json!({"command": self.command, "passed": self.passed(), "checks": checks, "result": self.result});
        serde_json::to_string_pretty(&doc).expect("JSON values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, if self.passed() { "PASS" } else { "FAIL" });
        for (name, pass) in &self.checks {
            out.push_str(&format!("  {} {name}\n", if *pass { "PASS" } else { "FAIL" }));
        }
        out
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn dual(datum: &DatumArgs, cover: &CoverArgs) -> Result<Report> {
    let r = resolve(datum, cover)?;
    let md = &r.datum;
    let dual = dual_root_datum(md);
    let (principal, whittaker) = heisenberg_dimensions(md);
    let table: Vec<Value> = md
        .coroots()
        .iter()
        .zip(md.q_values().iter().zip(md.n_alphas()))
        .map(|(c, (q, na))| json!({"coroot": c.coroot, "Q": q, "n_alpha": na}))
        .collect();
    let sandwich = md.sandwich();
    let result = json!({
        "datum": r.name,
        "lambda_basis": md.lambda().basis,
        "index": md.lambda().index,
        "n_alpha": table,
        "cartan": md.root_datum().cartan_matrix(),
        "dual_cartan": dual.as_ref().ok().map(|d| &d.cartan),
        "dual_datum": dual.as_ref().ok().map(to_value),
        "dual_error": dual.as_ref().err().map(|e| e.to_string()),
        "dimensions": {"principal_series": principal, "whittaker": whittaker},
    });
    Ok(Report::new("dual", result)
        .check("dual root datum axioms", dual.is_ok())
        .check("Q(α) divides B(α, y)", md.divisibility_violations().is_empty())
        .check("n_α Zα ⊂ Λ ∩ Qα ⊂ (n_α/2) Zα", sandwich.iter().all(|s| s.lower && s.upper)))
}

pub fn lattice(datum: &DatumArgs, cover: &CoverArgs, height: i64) -> Result<Report> {
    let r = resolve(datum, cover)?;
    let md = &r.datum;
    let dominant: Vec<Value> = dominant_lambda(md, height)
        .into_iter()
        .map(|l| {
            let two_rho = rho_dual_pairing(md, &l).ok();
            json!({"lambda": l, "coordinates": md.lambda().coordinates(&l), "two_rho_dual_pairing": two_rho})
        })
        .collect();
    let sandwich = md.sandwich();
    let result = json!({
        "datum": r.name,
        "lambda_basis": md.lambda().basis,
        "index": md.lambda().index,
        "height": height,
        "dominant": dominant,
        "sandwich": sandwich,
        "pairing_violations": md.pairing_violations(),
    });
    Ok(Report::new("lattice", result)
        .check("Λ is Weyl-stable", md.lambda_is_weyl_stable())
        .check("⟨α^∨, Λ⟩ ⊂ n_α Z", md.pairing_violations().is_empty())
        .check("n_α Zα ⊂ Λ ∩ Qα ⊂ (n_α/2) Zα", sandwich.iter().all(|s| s.lower && s.upper)))
}

pub fn hilbert(datum: &DatumArgs, cover: &CoverArgs, s: &str, t: &str) -> Result<Report> {
    let from_catalog = datum.catalog.as_deref().map(lookup).transpose()?.map(|e| e.datum);
    let q = cover.q.or(from_catalog.as_ref().and_then(|d| d.q)).ok_or_else(|| anyhow!("hilbert needs --q"))?;
    let n = cover.n.or(from_catalog.as_ref().map(|d| d.n as u64)).ok_or_else(|| anyhow!("hilbert needs --n"))?;
    let field = PrimeField::new(q)?;
    field.check_cover_degree(n)?;
    let parse = |x: &str| LaurentNumber::parse(q, x).with_context(|| format!("cannot parse `{x}`"));
    let (sv, tv) = (parse(s)?, parse(t)?);
    let symbol = hilbert_symbol(&field, &sv, &tv, n)?;
    let result = json!({
        "q": q,
        "m": n,
        "s": sv.to_string(),
        "t": tv.to_string(),
        "generator": field.generator(),
        "exponent": symbol.exponent(),
        "residue": symbol.residue(&field)?,
    });
    Ok(Report::new("hilbert", result))
}

pub fn cocycle(datum: &DatumArgs, cover: &CoverArgs, trials: usize, seed: u64) -> Result<Report> {
    let p = sl2_params(datum, cover)?;
    let report = cocycle_check(p.q, p.n, p.q_alpha, trials, seed)?;
    let checks: Vec<(String, bool)> = report.lines.iter().map(|l| (l.identity.to_string(), l.passed())).collect();
    Ok(Report { command: "cocycle-check", checks, result: to_value(&report) })
}

pub fn hecke(datum: &DatumArgs, cover: &CoverArgs, height: i64, len: i64, trials: usize, seed: u64) -> Result<Report> {
    let r = resolve(datum, cover)?;
    let report = verify_presentation(&r.datum, height, len, trials, seed)?;
    let table = structure_table(&r.datum, len)?;
    let mut relations: Vec<String> = Vec::new();
    for c in &report.checks {
        if !relations.contains(&c.relation) {
            relations.push(c.relation.clone());
        }
    }
    let checks = relations
        .into_iter()
        .map(|rel| {
            let pass = report.checks.iter().filter(|c| c.relation == rel).all(|c| c.holds);
            (format!("relation {rel}"), pass)
        })
        .collect();
    let result = json!({"datum": r.name, "presentation": report, "structure_constants": table});
    Ok(Report { command: "hecke-check", checks, result })
}

pub fn satake(datum: &DatumArgs, cover: &CoverArgs, lmax: i64, seed: u64, products: bool) -> Result<Report> {
    let p = sl2_params(datum, cover)?;
    let engine = Sl2Engine::new(p.q, p.n, p.q_alpha)?;
    let matrix = engine.satake_matrix(lmax, seed)?;
    let diagonal: Vec<Value> = matrix.rows.iter().map(|row| json!({"l": row.l, "value": row.get(row.l)})).collect();
    let mut report = Report::new("satake-sl2", Value::Null)
        .check("triangular", matrix.rows.iter().all(|r| r.triangular()))
        .check("W-invariant rows", matrix.rows.iter().all(|r| r.w_symmetric()));
    let mut product = Value::Null;
    if products {
        let step = engine.lambda_step();
        let conv = engine.convolution_check(step, step, seed)?;
        report = report.check("Satake homomorphism", conv.homomorphism).check("commutativity", conv.commutative);
        product = to_value(&conv);
    }
    report.result = json!({"matrix": matrix, "diagonal": diagonal, "product": product, "seed": seed});
    Ok(report)
}

pub fn iwahori(datum: &DatumArgs, cover: &CoverArgs, l: Option<i64>) -> Result<Report> {
    let p = sl2_params(datum, cover)?;
    let engine = Sl2Engine::new(p.q, p.n, p.q_alpha)?;
    let na = engine.n_alpha();
    let ls: Vec<i64> = match l {
        Some(l) => vec![l],
        None => [na, 2 * na].into_iter().filter(|k| k % 2 == 0).map(|k| k / 2).filter(|&l| engine.in_lambda(l)).collect(),
    };
    let mut report = Report::new("iwahori-sl2", Value::Null);
    let mut rows = Vec::new();
    for l in ls {
        let row = engine.iwahori_integrand(l)?;
        report = report.check(format!("integrand phases at λ = {l}α"), row.symbol_matches);
        rows.push(row);
    }
    report.result = json!({"q": p.q, "n": p.n, "Q": p.q_alpha, "n_alpha": na, "table": rows});
    Ok(report)
}

pub fn gk(datum: &DatumArgs, cover: &CoverArgs) -> Result<Report> {
    let r = resolve(datum, cover)?;
    let md = &r.datum;
    let order = md.root_datum().weyl_group()?.order();
    let coefficients = (0..order).map(|w| gk_coefficient(md, w)).collect::<Result<Vec<_>, _>>()?;
    let renorm = renorm_cocycle_check(md)?;
    let mut report = Report::new("gk-check", Value::Null)
        .check("GK coefficients", coefficients.iter().all(|c| c.verified))
        .check("renormalization cocycle", renorm.holds);
    let mut rank_one = Value::Null;
    if let (Some(qa), Some(q)) = (sl2_q_alpha(&r.spec), r.spec.q) {
        let g = gk_rank_one(q, r.spec.n as u64, qa)?;
        report = report.check("rank-one intertwining integral", g.holds);
        rank_one = to_value(&g);
    }
    report.result = json!({"datum": r.name, "coefficients": coefficients, "renormalization": renorm, "rank_one": rank_one});
    Ok(report)
}
