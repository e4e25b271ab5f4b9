//! One function per subcommand, each producing a [`Report`].

use qlidstone::guichard::{
    gaussian_series, growth_bound_check, solve_difference, verify_solution, DeltaSeq, Preset, Verification, ZPoly,
};
use qlidstone::lidstone::{expand as lidstone_expand, EntireFn, ExpansionKind, Residual, StopReason, Values};
use qlidstone::qcore::{parse_rational, to_f64, QContext};
use qlidstone::qpolys::{
    build_family, build_numbers, check_all, check_identity, lidstone_basis as build_basis, BasisKind, FamilyKind,
    IdentityReport, NumberKind, Side,
};
use qlidstone::qspecial::{positive_zeros, ZeroKind};
use qlidstone::symlaurent::{change_basis, special_poly, Basis, SpecialFamily};
use qlidstone::{Scalar, SymPoly};
use serde_json::{json, Value};

use crate::render::{float, float_str, poly, poly_coeffs, rational, PolyBasis, Report};
use crate::Failure;

/// Context whose series budget covers `needed` coefficients.
fn with_budget(ctx: &QContext, needed: usize) -> QContext {
    ctx.clone().with_series_order(ctx.series_order().max(needed))
}

fn scalar_cell(x: &Scalar, exact: bool) -> String {
    if exact {
        rational(x)
    } else {
        float_str(to_f64(x))
    }
}

fn scalar_value(x: &Scalar, exact: bool) -> Value {
    if exact {
        json!(rational(x))
    } else {
        float(to_f64(x))
    }
}

fn poly_value(ctx: &QContext, p: &SymPoly, basis: PolyBasis, exact: bool) -> Value {
    if exact {
        poly(ctx, p, basis)
    } else {
        let c: Vec<Value> = poly_coeffs(ctx, p, basis).iter().map(|c| float(to_f64(c))).collect();
        json!({ "basis": basis.name(), "coeffs": c })
    }
}

fn poly_rows(ctx: &QContext, label: usize, p: &SymPoly, basis: PolyBasis, exact: bool, rows: &mut Vec<Vec<String>>) {
    for (k, c) in poly_coeffs(ctx, p, basis).iter().enumerate() {
        rows.push(vec![label.to_string(), k.to_string(), scalar_cell(c, exact)]);
    }
}

pub fn numbers(ctx: &QContext, kind: &str, order: usize, exact: bool) -> Result<Report, Failure> {
    let kind: NumberKind = kind.parse()?;
    let ctx = with_budget(ctx, order + 2);
    let table = build_numbers(&ctx, kind, order)?;
    let mut r = Report::new("numbers");
    r.field("kind", json!(kind.name()));
    r.field("values", Value::Array(table.values.iter().map(|v| scalar_value(v, exact)).collect()));
    r.header = if exact { vec!["n", "numerator", "denominator"] } else { vec!["n", "value"] };
    for (n, v) in table.values.iter().enumerate() {
        r.rows.push(if exact {
            vec![n.to_string(), v.numer().to_string(), v.denom().to_string()]
        } else {
            vec![n.to_string(), float_str(to_f64(v))]
        });
    }
    r.notes.push(format!("{} numbers, n = 0..={order}", kind.name()));
    Ok(r)
}

pub fn polys(ctx: &QContext, family: &str, order: usize, basis: PolyBasis, exact: bool) -> Result<Report, Failure> {
    let kind: FamilyKind = family.parse()?;
    let ctx = with_budget(ctx, order + 2);
    let table = build_family(&ctx, kind, order)?;
    let mut r = Report::new("polys");
    r.field("family", json!(kind.name()));
    r.field("entries", Value::Array(table.entries.iter().map(|p| poly_value(&ctx, p, basis, exact)).collect()));
    r.header = vec!["n", "power", "coefficient"];
    for (n, p) in table.entries.iter().enumerate() {
        poly_rows(&ctx, n, p, basis, exact, &mut r.rows);
    }
    r.notes.push(format!("{} polynomials, n = 0..={order}, {} basis", kind.name(), basis.name()));
    Ok(r)
}

pub fn lidstone_basis(ctx: &QContext, basis: &str, order: usize, pb: PolyBasis, exact: bool) -> Result<Report, Failure> {
    let kind: BasisKind = basis.parse()?;
    let ctx = with_budget(ctx, 2 * order + 4);
    let polys = build_basis(&ctx, kind, order)?;
    let mut r = Report::new("lidstone-basis");
    r.field("basis", json!(kind.name()));
    r.field("entries", Value::Array(polys.iter().map(|p| poly_value(&ctx, p, pb, exact)).collect()));
    r.header = vec!["k", "power", "coefficient"];
    for (k, p) in polys.iter().enumerate() {
        poly_rows(&ctx, k, p, pb, exact, &mut r.rows);
    }
    r.notes.push(format!("basis {}, k = 0..={order}, {} basis", kind.name(), pb.name()));
    Ok(r)
}

fn side_value(ctx: &QContext, s: &Side, basis: PolyBasis) -> Value {
    match s {
        Side::Poly(p) => poly(ctx, p, basis),
        Side::Num(c) => json!(rational(c)),
    }
}

fn identity_value(ctx: &QContext, rep: &IdentityReport, basis: PolyBasis) -> Value {
    let failure = rep.failure.as_ref().map_or(Value::Null, |f| {
        json!({
            "index": f.index,
            "lhs": side_value(ctx, &f.lhs, basis),
            "rhs": side_value(ctx, &f.rhs, basis),
        })
    });
    json!({
        "name": rep.name,
        "n_max": rep.n_max,
        "passed": rep.passed(),
        "per_index": rep.per_index,
        "failure": failure,
    })
}

/// Runs one identity or all of them; the flag is false if any failed.
pub fn identities(ctx: &QContext, name: Option<&str>, order: usize, basis: PolyBasis) -> Result<(Report, bool), Failure> {
    let ctx = with_budget(ctx, 2 * order + 4);
    let reports = match name {
        Some(n) => vec![check_identity(&ctx, n, order)?],
        None => check_all(&ctx, order)?,
    };
    let ok = reports.iter().all(IdentityReport::passed);
    let mut r = Report::new("identities");
    r.field("passed", json!(ok));
    r.field("identities", Value::Array(reports.iter().map(|x| identity_value(&ctx, x, basis)).collect()));
    r.header = vec!["name", "passed", "n_max", "first_failure"];
    for x in &reports {
        let first = x.failure.as_ref().map_or(String::new(), |f| f.index.to_string());
        r.rows.push(vec![x.name.to_string(), x.passed().to_string(), x.n_max.to_string(), first]);
        if let Some(f) = &x.failure {
            r.notes.push(format!("{} FAILED at index {}: lhs = {}, rhs = {}", x.name, f.index, f.lhs, f.rhs));
        }
    }
    let failed = reports.iter().filter(|x| !x.passed()).count();
    r.notes.push(format!("{} identities checked through n = {order}, {failed} failed", reports.len()));
    Ok((r, ok))
}

pub fn zeros(ctx: &QContext, kind: &str, count: usize) -> Result<Report, Failure> {
    let kind: ZeroKind = kind.parse()?;
    if count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let q = ctx.q_f64();
    let found = positive_zeros(kind, q, count)?;
    let mut r = Report::new("zeros");
    r.field("kind", json!(kind.name()));
    let items: Vec<Value> = found
        .iter()
        .map(|z| {
            json!({
                "index": z.index,
                "value": float(z.value),
                "bracket": [float(z.bracket.0), float(z.bracket.1)],
                "residual": float(z.residual),
                "bound_check": z.bound_check,
                "estimate": float(z.estimate),
            })
        })
        .collect();
    r.field("zeros", Value::Array(items));
    r.header = vec!["index", "value", "lo", "hi", "residual", "bound_check", "estimate"];
    for z in &found {
        r.rows.push(vec![
            z.index.to_string(),
            float_str(z.value),
            float_str(z.bracket.0),
            float_str(z.bracket.1),
            float_str(z.residual),
            z.bound_check.to_string(),
            float_str(z.estimate),
        ]);
    }
    r.notes.push(format!("first {count} positive zeros of {} at q = {}", kind.name(), float_str(q)));
    Ok(r)
}

/// Parses `rho:n`, `mono:n`, `phi:n:a` or `stream:@file`.
pub fn parse_function(ctx: &QContext, spec: &str) -> Result<EntireFn, Failure> {
    let bad = || Failure::Usage(format!("`{spec}` is not a function spec (expected rho:n, mono:n, phi:n:a or stream:@file)"));
    let parts: Vec<&str> = spec.splitn(3, ':').collect();
    let degree = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let p = match parts.as_slice() {
        ["rho", n] => special_poly(ctx, SpecialFamily::Rho, degree(n)?, None)?,
        ["mono", n] => special_poly(ctx, SpecialFamily::Monomial, degree(n)?, None)?,
        ["phi", n, a] => special_poly(ctx, SpecialFamily::Phi, degree(n)?, Some(&parse_rational(a)?))?,
        ["stream", path] => {
            let path = path.strip_prefix('@').ok_or_else(bad)?;
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            let c: Vec<f64> = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{path}: expected a JSON array of numbers ({e})")))?;
            return Ok(EntireFn::from_rho_coeffs(ctx.q_f64(), &c));
        }
        _ => return Err(bad()),
    };
    Ok(EntireFn::Poly(p))
}

fn values_cells(v: &Values) -> Vec<String> {
    match v {
        Values::Exact(x) => x.iter().map(rational).collect(),
        Values::Float(x) => x.iter().map(|v| float_str(*v)).collect(),
    }
}

fn values_json(v: &Values) -> Value {
    match v {
        Values::Exact(x) => json!(x.iter().map(rational).collect::<Vec<_>>()),
        Values::Float(x) => Value::Array(x.iter().map(|v| float(*v)).collect()),
    }
}

pub fn expand(ctx: &QContext, kind: &str, spec: &str, k: usize, exact: bool) -> Result<Report, Failure> {
    let kind: ExpansionKind = kind.parse()?;
    let ctx = with_budget(ctx, 2 * k + 4);
    let mut f = parse_function(&ctx, spec)?;
    if let (false, EntireFn::Poly(p)) = (exact, &f) {
        let c: Vec<f64> = change_basis(&ctx, p, Basis::Rho).iter().map(to_f64).collect();
        f = EntireFn::from_rho_coeffs(ctx.q_f64(), &c);
    }
    let rep = lidstone_expand(&ctx, &f, k, kind)?;
    let residual = match &rep.residual {
        Residual::Exact(_) if rep.residual.is_exact_zero() => json!("exact-zero"),
        Residual::Exact(r) => json!(rational(r)),
        Residual::Float(r) => float(*r),
    };
    let stop = match rep.stop {
        StopReason::ReachedK => json!({ "reason": "reached_K" }),
        StopReason::BelowTolerance { k } => json!({ "reason": "below_tolerance", "k": k }),
    };
    let mut r = Report::new("expand");
    r.field("kind", json!(kind.name()));
    r.field("function", json!(spec));
    r.field("K", json!(k));
    r.field("terms_used", json!(rep.terms_used));
    r.field("data_at_0", values_json(&rep.data.at_zero));
    r.field("data_at_eta", values_json(&rep.data.at_eta));
    r.field("term_sizes", Value::Array(rep.term_sizes.iter().map(|v| float(*v)).collect()));
    r.field("tau", float(rep.tau));
    r.field("zero", rep.zero.map_or(Value::Null, float));
    r.field("cap", float(rep.cap));
    r.field("residual", residual.clone());
    r.field("stop", stop);
    r.field("warnings", json!(rep.warnings));
    r.field(
        "reconstruction",
        rep.reconstruction.as_ref().map_or(Value::Null, |p| poly(&ctx, p, PolyBasis::Monomial)),
    );
    r.header = vec!["k", "data_at_0", "data_at_eta", "term_size"];
    let (z, e) = (values_cells(&rep.data.at_zero), values_cells(&rep.data.at_eta));
    for i in 0..z.len() {
        let size = rep.term_sizes.get(i).map_or(String::new(), |v| float_str(*v));
        r.rows.push(vec![i.to_string(), z[i].clone(), e[i].clone(), size]);
    }
    let res_text = match &residual {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    r.notes.push(format!("{} expansion of {spec}, K = {k}, terms used {}", kind.name(), rep.terms_used));
    r.notes.push(format!("residual {res_text}, tau {}, cap {}", float_str(rep.tau), float_str(rep.cap)));
    for w in &rep.warnings {
        r.notes.push(format!("warning: {w}"));
    }
    Ok(r)
}

pub struct GuichardArgs<'a> {
    pub p: Scalar,
    pub preset: &'a str,
    pub delta: Option<&'a str>,
    pub f: Option<&'a str>,
    pub gaussian: Option<&'a str>,
}

fn rational_list(text: &str) -> Result<Vec<Scalar>, Failure> {
    text.split(',').map(|t| parse_rational(t).map_err(Failure::from)).collect()
}

/// Solves and verifies; the flag is false when verification fails.
pub fn guichard(a: &GuichardArgs, order: usize) -> Result<(Report, bool), Failure> {
    let f = match (a.f, a.gaussian) {
        (Some(t), _) => ZPoly::new(rational_list(t)?),
        (None, Some(q)) => gaussian_series(&parse_rational(q)?, order),
        (None, None) => return Err(Failure::Usage("guichard needs --f, --gaussian or --growth".into())),
    };
    let need = f.degree().unwrap_or(0) + 2;
    let d = match a.delta {
        Some(t) => DeltaSeq::custom(a.p.clone(), rational_list(t)?)?,
        None => DeltaSeq::preset(a.preset.parse::<Preset>()?, a.p.clone(), need)?,
    };
    let g = solve_difference(&f, &d)?;
    let v = verify_solution(&f, &g, &d)?;
    let mut r = Report::new("guichard");
    r.field("p", json!(rational(&a.p)));
    r.field("preset", json!(d.preset_kind().name()));
    r.field("f", json!(f.coeffs().iter().map(rational).collect::<Vec<_>>()));
    r.field("g", json!(g.coeffs().iter().map(rational).collect::<Vec<_>>()));
    let verification = match v {
        Verification::ExactThrough(n) => json!({ "passed": true, "exact_through": n }),
        Verification::Mismatch { first, last } => json!({ "passed": false, "first": first, "last": last }),
    };
    r.field("verification", verification);
    r.header = vec!["n", "f", "g"];
    let len = f.coeffs().len().max(g.coeffs().len());
    for n in 0..len {
        r.rows.push(vec![n.to_string(), rational(&f.coeff(n)), rational(&g.coeff(n))]);
    }
    r.notes.push(format!("p = {}, preset {}: {v:?}", rational(&a.p), d.preset_kind().name()));
    Ok((r, v.passed()))
}

pub fn growth(q: &Scalar, order: usize) -> Result<Report, Failure> {
    let g = growth_bound_check(q, order)?;
    let mut r = Report::new("guichard");
    r.field("q", float(g.q));
    r.field("xi1", float(g.xi1));
    r.field("ratios", Value::Array(g.ratios.iter().map(|v| float(*v)).collect()));
    r.field("sup", float(g.sup));
    r.field("argmax", json!(g.argmax));
    r.field("sup_doubled", float(g.sup_doubled));
    r.field("drift", float(g.drift));
    r.field("bounded", json!(g.bounded));
    r.header = vec!["n", "ratio"];
    for (n, v) in g.ratios.iter().enumerate() {
        r.rows.push(vec![n.to_string(), float_str(*v)]);
    }
    r.notes.push(format!(
        "xi_1 = {}, sup = {} at n = {}, drift under doubling {}",
        float_str(g.xi1),
        float_str(g.sup),
        g.argmax,
        float_str(g.drift)
    ));
    Ok(r)
}
