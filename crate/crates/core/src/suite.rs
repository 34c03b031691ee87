//! Named verification suites with flat CSV check tables and a JSON summary.
//!
//! Every suite is a pure function of its [`SuiteConfig`]: the same config
//! and seed produce byte-identical reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::growth::{classify, AnalyticField, QuadratureSpec, RadiusLadder, DEFAULT_TOL};
use crate::kelvin::{exterior_oracle, exterior_solve, BoundaryData};
use crate::multiplier::{
    cz_survey, degree_zero_integral, finite_part_pairing, solve_system_checked, BatterySpec, FinitePartQuadrature,
    GridField, GridSpec, PolyGaussian, VectorGridField,
};
use crate::poly::{harmonic_space, poly_apply, poly_preimage, surjectivity_check, Polynomial};
use crate::symbol::io::{resolve_operator, resolve_system, OPERATOR_NAMES, SYSTEM_NAMES};
use crate::symbol::multi_index::indices_of_order;
use crate::symbol::ellipticity::ELLIPTICITY_TOL;
use crate::symbol::{check_ellipticity, resolvent_cone, ScalarOperator};
use crate::Complex64;

pub const SUITE_NAMES: [&str; 8] =
    ["ellipticity", "harmonic-dim", "surjectivity", "growth", "cz-survey", "finite-part", "dn-verify", "kelvin"];

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNRESOLVED: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Suite parameters; every field mirrors a command-line flag.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: String,
    pub op: Option<String>,
    pub system: Option<String>,
    #[serde(rename = "N")]
    pub dim: Option<usize>,
    pub grid: Option<usize>,
    /// `R0,gamma,K`.
    pub ladder: Option<String>,
    /// Comma-separated exponents; `inf` allowed.
    pub q: Option<String>,
    pub p: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub field: Option<String>,
    pub s: Option<f64>,
    pub expect: Option<f64>,
    pub refinement: Option<usize>,
    pub degree: Option<usize>,
    pub kappa: Option<usize>,
    pub res: Option<usize>,
    pub g: Option<String>,
    pub f: Option<String>,
}

impl SuiteConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overlay(mut self, other: &SuiteConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f.clone(); } )* };
        }
        take!(op, system, dim, grid, ladder, q, p, seed, out, field, s, expect, refinement, degree, kappa, res, g, f);
        if !other.suite.is_empty() {
            self.suite = other.suite.clone();
        }
        self
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(20240101)
    }
}

/// Parses `1,2,inf`.
pub fn parse_exponents(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| match t.trim() {
            "inf" | "∞" => Ok(f64::INFINITY),
            v => v.parse::<f64>().map_err(|_| Error::Usage(format!("bad exponent '{v}'"))),
        })
        .collect()
}

fn fmt(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{:.6e}", v + 0.0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub value: String,
    pub threshold: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckRow>,
    /// Extra CSV tables as `(file name, contents)`.
    #[serde(skip)]
    pub tables: Vec<(String, String)>,
    pub summary: serde_json::Value,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self { suite: suite.to_string(), checks: Vec::new(), tables: Vec::new(), summary: json!({}) }
    }

    fn check(&mut self, name: impl Into<String>, value: impl Into<String>, threshold: impl Into<String>, pass: bool) {
        self.checks.push(CheckRow { check: name.into(), value: value.into(), threshold: threshold.into(), pass });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn checks_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check", "value", "threshold", "pass"])?;
        for c in &self.checks {
            w.write_record([c.check.as_str(), &c.value, &c.threshold, if c.pass { "true" } else { "false" }])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn summary_json(&self) -> Result<String> {
        let v = json!({
            "suite": self.suite,
            "pass": self.passed(),
            "checks": self.checks,
            "details": self.summary,
        });
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    }

    /// Writes `<suite>.csv`, `<suite>.json` and the extra tables into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let mut put = |name: String, body: &str| -> Result<()> {
            let path = dir.join(name);
            std::fs::write(&path, body)?;
            written.push(path);
            Ok(())
        };
        put(format!("{}.csv", self.suite), &self.checks_csv()?)?;
        put(format!("{}.json", self.suite), &self.summary_json()?)?;
        for (name, body) in &self.tables {
            put(name.clone(), body)?;
        }
        Ok(written)
    }
}

/// Exit status for a suite outcome.
pub fn exit_code(result: &Result<SuiteReport>) -> i32 {
    match result {
        Ok(r) if r.passed() => EXIT_PASS,
        Ok(_) => EXIT_CHECK_FAILED,
        Err(e) => error_exit_code(e),
    }
}

pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => EXIT_USAGE,
        Error::UnknownName(_) => EXIT_UNRESOLVED,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => EXIT_IO,
        _ => EXIT_CHECK_FAILED,
    }
}

/// Deterministic listing of operators, systems, fields and suites.
pub fn list_catalog() -> String {
    let mut s = String::new();
    let _ = writeln!(s, "operators:");
    for n in OPERATOR_NAMES {
        let note = match *n {
            "cauchy_riemann" | "cauchy_riemann_squared" => " (N=2)",
            _ => " (any N)",
        };
        let _ = writeln!(s, "  {n}{note}");
    }
    let _ = writeln!(s, "systems:");
    for n in SYSTEM_NAMES {
        let _ = writeln!(s, "  {n} (parameterized by N)");
    }
    let _ = writeln!(s, "fields:");
    for n in crate::growth::field::FIELD_NAMES {
        let _ = writeln!(s, "  {n}");
    }
    let _ = writeln!(s, "suites:");
    for n in SUITE_NAMES {
        let _ = writeln!(s, "  {n}");
    }
    s
}

fn resolve_op(cfg: &SuiteConfig, default: &str, dim: usize) -> Result<ScalarOperator> {
    resolve_operator(cfg.op.as_deref().unwrap_or(default), dim)
}

fn ladder(cfg: &SuiteConfig) -> Result<RadiusLadder> {
    match &cfg.ladder {
        Some(t) => RadiusLadder::parse(t).map_err(|e| Error::Usage(e.to_string())),
        None => Ok(RadiusLadder::default()),
    }
}

/// Runs the suite named in `cfg.suite`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let report = match cfg.suite.as_str() {
        "ellipticity" => suite_ellipticity(cfg),
        "harmonic-dim" => suite_harmonic_dim(cfg),
        "surjectivity" => suite_surjectivity(cfg),
        "growth" => suite_growth(cfg),
        "cz-survey" => suite_cz_survey(cfg),
        "finite-part" => suite_finite_part(cfg),
        "dn-verify" => suite_dn_verify(cfg),
        "kelvin" => suite_kelvin(cfg),
        other => Err(Error::Usage(format!("unknown suite '{other}' (known: {})", SUITE_NAMES.join(", ")))),
    }?;
    if let Some(dir) = &cfg.out {
        report.write(dir)?;
    }
    Ok(report)
}

fn suite_ellipticity(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let dim = cfg.dim.unwrap_or(3);
    let op = resolve_op(cfg, "laplacian", dim)?;
    let refinement = cfg.refinement.unwrap_or(256);
    let rep = check_ellipticity(&op, refinement)?;
    let finer = check_ellipticity(&op, 2 * refinement)?;
    let mut r = SuiteReport::new("ellipticity");
    r.check("elliptic", rep.elliptic.to_string(), "true", rep.elliptic);
    r.check("margin", fmt(rep.margin), fmt(ELLIPTICITY_TOL), rep.margin > ELLIPTICITY_TOL);
    r.check("certified", rep.certified.to_string(), "true", rep.certified);
    r.check(
        "refinement_monotone",
        finer.elliptic.to_string(),
        "verdict unchanged when certified",
        !rep.certified || finer.elliptic == rep.elliptic,
    );
    let cone = if rep.elliptic { Some(resolvent_cone(&op, refinement)?) } else { None };
    r.summary = json!({
        "N": dim,
        "order": op.order(),
        "report": rep,
        "refined": finer,
        "exists_spectral_shift": cone.as_ref().map(|c| c.exists_spectral_shift),
        "shift_witness": cone.as_ref().and_then(|c| c.witness),
    });
    Ok(r)
}

fn suite_harmonic_dim(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let dim = cfg.dim.unwrap_or(3);
    let op = resolve_op(cfg, "laplacian", dim)?;
    let max_ell = cfg.degree.unwrap_or(6);
    let mut r = SuiteReport::new("harmonic-dim");
    let mut rows = Vec::new();
    let mut table = String::from("N,m,ell,kernel_dim,formula_dim,pass\n");
    for ell in 0..=max_ell {
        let h = harmonic_space(&op, ell)?;
        let holds = h.formula_holds();
        let verdict = holds.map_or("unasserted".to_string(), |b| b.to_string());
        let _ = writeln!(table, "{dim},{},{ell},{},{},{verdict}", op.order().unwrap_or(0), h.kernel_dim(), h.formula_dim);
        r.check(
            format!("kernel_dim_ell_{ell}"),
            h.kernel_dim().to_string(),
            if holds.is_some() { h.formula_dim.to_string() } else { format!("{} (unasserted)", h.formula_dim) },
            holds.unwrap_or(true),
        );
        rows.push(json!({"ell": ell, "kernel_dim": h.kernel_dim(), "formula": h.formula_dim, "elliptic": h.elliptic}));
    }
    r.tables.push(("harmonic_dim_table.csv".into(), table));
    r.summary = json!({"N": dim, "order": op.order(), "rows": rows});
    Ok(r)
}

fn suite_surjectivity(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let dim = cfg.dim.unwrap_or(3);
    let op = resolve_op(cfg, "laplacian", dim)?;
    let m = op.order().unwrap_or(0) as i64;
    let max_kappa = cfg.kappa.unwrap_or(4);
    let mut r = SuiteReport::new("surjectivity");
    let mut rows = Vec::new();
    for kappa in 1..=max_kappa {
        let s = surjectivity_check(&op, kappa);
        r.check(format!("rank_kappa_{kappa}"), s.rank.to_string(), s.expected_rank.to_string(), s.pass);
        let pi = Polynomial::random(dim, kappa as i64 - 1, cfg.seed() + kappa as u64);
        let pre = poly_preimage(&op, &pi, m + kappa as i64 - 1)?;
        let residual = poly_apply(&op, &pre)?.add(&pi.scale(Complex64::new(-1.0, 0.0)))?.coeff_norm() / pi.coeff_norm();
        r.check(format!("preimage_residual_kappa_{kappa}"), fmt(residual), "1e-10", residual <= 1e-10);
        rows.push(json!({"kappa": kappa, "rank": s.rank, "expected": s.expected_rank, "residual": residual}));
    }
    r.summary = json!({"N": dim, "order": m, "rows": rows});
    Ok(r)
}

/// Known growth exponent of a catalog field.
pub fn catalog_exponent(spec: &str) -> Option<f64> {
    let normalized = spec.replacen(':', " ", 1);
    let mut parts = normalized.split_whitespace();
    let name = parts.next()?;
    let first = parts.next();
    let num = || first.and_then(|a| a.split(',').next()).and_then(|a| a.parse::<f64>().ok());
    match name {
        "const" => Some(0.0),
        "monomial" => Some(first.map_or(1.0, |a| a.split(',').filter_map(|t| t.parse::<f64>().ok()).sum())),
        "power" | "smoothed_power" | "one_plus_r" => num(),
        _ => None,
    }
}

fn suite_growth(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let dim = cfg.dim.unwrap_or(3);
    let spec = cfg.field.clone().unwrap_or_else(|| "smoothed_power:-1,0.5".into());
    let field = AnalyticField::from_catalog(&spec, dim)?;
    let qs = parse_exponents(cfg.q.as_deref().unwrap_or("1"))?;
    let ladder = ladder(cfg)?;
    let quad = QuadratureSpec::for_dim(dim);
    let s = cfg.s.unwrap_or(0.0);
    let expect = cfg.expect.or_else(|| catalog_exponent(&spec));
    let mut r = SuiteReport::new("growth");
    let mut profiles = Vec::new();
    for &q in &qs {
        let prof = classify(&field, q, s, &ladder, &quad, DEFAULT_TOL)?;
        let tag = if q.is_infinite() { "inf".to_string() } else { format!("{q}") };
        let monotone = prof.ball_norms.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12));
        r.check(format!("ball_norms_nondecreasing_q_{tag}"), monotone.to_string(), "true", monotone);
        if let Some(t) = expect {
            let err = (prof.fitted_exponent - t).abs();
            r.check(format!("fitted_exponent_q_{tag}"), fmt(prof.fitted_exponent), format!("{} ± 0.05", fmt(t)), err <= 0.05);
        } else {
            r.check(format!("fitted_exponent_q_{tag}"), fmt(prof.fitted_exponent), "reported", true);
        }
        let mut buf = Vec::new();
        prof.write_csv(&mut buf)?;
        r.tables.push((format!("growth_profile_q_{tag}.csv"), String::from_utf8(buf).expect("utf-8")));
        profiles.push(prof.summary_json());
    }
    r.summary = json!({"N": dim, "field": spec, "ladder": ladder, "profiles": profiles});
    Ok(r)
}

fn suite_cz_survey(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let dim = cfg.dim.unwrap_or(2);
    let op = resolve_op(cfg, "laplacian", dim)?;
    let n = cfg.grid.unwrap_or(64);
    let ps = parse_exponents(cfg.p.as_deref().unwrap_or("2,4"))?;
    let coarse_n = n / 2;
    let fine = GridSpec::new(dim, n, 2.0 * std::f64::consts::PI).map_err(|e| Error::Usage(e.to_string()))?;
    let coarse = GridSpec::new(dim, coarse_n, fine.length).map_err(|e| Error::Usage(e.to_string()))?;
    let battery = BatterySpec::for_grid(coarse_n, cfg.seed());
    let rows_fine = cz_survey(&op, &ps, &battery, &fine, 0)?;
    let rows_coarse = cz_survey(&op, &ps, &battery, &coarse, 0)?;
    let mut r = SuiteReport::new("cz-survey");
    let mut table = String::from("p,grid,fields,max,median\n");
    for (a, b) in rows_coarse.iter().zip(&rows_fine) {
        for (row, g) in [(a, coarse_n), (b, n)] {
            let _ = writeln!(table, "{},{g},{},{},{}", fmt(row.p), row.fields, fmt(row.max), fmt(row.median));
        }
        let change = (b.max - a.max).abs() / a.max;
        r.check(format!("max_stable_p_{}", fmt(a.p)), fmt(change), "0.2", change <= 0.2);
    }
    r.tables.push(("cz_survey.csv".into(), table));
    r.summary = json!({"N": dim, "order": op.order(), "grid": n, "coarse_grid": coarse_n, "battery": battery,
        "coarse": rows_coarse, "fine": rows_fine});
    Ok(r)
}

fn sample_test_polynomial(dim: usize) -> Result<Polynomial> {
    let mut e = vec![0u32; dim];
    e[0] = 1;
    let mut f = vec![0u32; dim];
    f[0] = 2;
    f[dim - 1] += 2;
    Polynomial::new(
        dim,
        [
            (crate::symbol::MultiIndex::zero(dim), Complex64::new(1.0, 0.0)),
            (crate::symbol::MultiIndex::new(e)?, Complex64::new(0.5, -0.25)),
            (crate::symbol::MultiIndex::new(f)?, Complex64::new(0.3, 0.0)),
        ],
    )
}

fn suite_finite_part(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let dim = cfg.dim.unwrap_or(2);
    let op = resolve_op(cfg, "bilaplacian", dim)?;
    let m = op.order().unwrap_or(0);
    let quad = FinitePartQuadrature::for_dim(dim);
    let phi = PolyGaussian::new(sample_test_polynomial(dim)?, 1.0)?;
    let test = phi.times_symbol(&op)?;
    let res = finite_part_pairing(&op, &test, &quad)?;
    let fine = finite_part_pairing(&op, &test, &quad.refined())?;
    let expected = phi.integral();
    let err = (res.value - expected).norm() / expected.norm();
    let stab = (fine.value - res.value).norm() / expected.norm();
    let mut r = SuiteReport::new("finite-part");
    r.check("division_identity", fmt(err), "1e-6", err <= 1e-6);
    r.check("refinement_stability", fmt(stab), "1e-6", stab <= 1e-6);
    let mut moment = None;
    if m >= dim {
        let alpha = indices_of_order(m, dim).into_iter().last().expect("order ≥ 1");
        let t = phi.times_monomial(&alpha)?;
        let v = finite_part_pairing(&op, &t, &quad)?.value;
        let d = degree_zero_integral(&op, &alpha, &phi, &quad)?;
        let e = (v - d).norm() / d.norm().max(1.0);
        r.check("vanishing_moments", fmt(e), "1e-6", e <= 1e-6);
        moment = Some(e);
    }
    r.summary = json!({"N": dim, "order": m, "branch": res.branch, "value": res.value, "expected": expected,
        "diagnostics": res.diagnostics, "moment_error": moment});
    Ok(r)
}

fn suite_dn_verify(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let dim = cfg.dim.unwrap_or(2);
    let name = cfg.system.clone().unwrap_or_else(|| "stokes".into());
    let sys = resolve_system(&name, dim)?;
    let mut r = SuiteReport::new("dn-verify");
    let violations = sys.validate();
    r.check("validate", violations.len().to_string(), "0", violations.is_empty());
    if !violations.is_empty() {
        r.summary = json!({"violations": format!("{violations:?}")});
        return Ok(r);
    }
    let det = sys.det()?;
    let res = sys.verify_cofactor_identity()?;
    r.check("cofactor_identity", fmt(res.relative_residual), "1e-12", res.relative_residual <= 1e-12);
    r.check(
        "det_order",
        det.order().map_or("zero".into(), |o| o.to_string()),
        sys.total_order().to_string(),
        det.order().map(|o| o as i64) == Some(sys.total_order()),
    );
    if name == "stokes" {
        let sign = if dim % 2 == 0 { 1.0 } else { -1.0 };
        let expected = ScalarOperator::laplacian_power(dim, dim).scale(Complex64::new(sign, 0.0));
        let diff = det.max_coeff_diff(&expected);
        r.check("det_equals_signed_laplacian_power", fmt(diff), "1e-12", diff <= 1e-12);
    }
    let ell = sys.check_ellipticity(cfg.refinement.unwrap_or(128))?;
    r.check("dn_elliptic", fmt(ell.margin), fmt(ELLIPTICITY_TOL), ell.elliptic);
    let mut solve = None;
    if ell.elliptic && (2..=3).contains(&dim) {
        let n = cfg.grid.unwrap_or(if dim == 2 { 64 } else { 16 });
        let spec = GridSpec::new(dim, n, 2.0 * std::f64::consts::PI).map_err(|e| Error::Usage(e.to_string()))?;
        let battery = BatterySpec { count: sys.n(), seed: cfg.seed(), band: (n / 3).max(1) };
        let comps: Vec<GridField> = battery.fields(&spec)?;
        let f = VectorGridField::new(comps)?;
        let (_, rep) = solve_system_checked(&sys, &f)?;
        r.check("system_residual", fmt(rep.residual), "1e-9", rep.residual <= 1e-9);
        r.check("cofactor_route_agreement", fmt(rep.cofactor_agreement), "1e-8", rep.cofactor_agreement <= 1e-8);
        solve = Some(json!({"grid": n, "report": rep}));
    }
    r.summary = json!({"system": name, "N": dim, "n": sys.n(), "M": sys.total_order(),
        "cofactor": res, "det_margin": ell.margin, "solve": solve});
    Ok(r)
}

fn suite_kelvin(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let dim = cfg.dim.unwrap_or(3);
    let g = cfg.g.clone().unwrap_or_else(|| "const:1".into());
    let f = cfg.f.clone().unwrap_or_else(|| "zero".into());
    let q = cfg.q.as_deref().map(parse_exponents).transpose()?.and_then(|v| v.first().copied()).unwrap_or(2.0);
    let res = cfg.res.unwrap_or(65);
    let data = BoundaryData::parse(dim, &g, &f, q)?;
    let quad = QuadratureSpec::for_dim(dim);
    let sol = exterior_solve(&data, res, &quad)?;
    let mut r = SuiteReport::new("kelvin");
    r.check("decay_certified", fmt(sol.profile.fitted_exponent), "< 0 and M_0^{0,1}", sol.decay_certified);
    let (direct, via) = sol.jacobian_identity(4.0, &quad)?;
    let jac = (direct - via).abs() / direct.max(f64::MIN_POSITIVE);
    r.check("jacobian_identity", fmt(jac), "0.01", jac <= 0.01);
    let oracle = exterior_oracle(dim, &g, &f);
    let mut slice = String::from("r,u,oracle\n");
    let mut max_err = None;
    if let Some(o) = &oracle {
        let err = sol.shell_relative_error(|x| o.eval(x), 1.25, 4.0, 12);
        r.check("oracle_max_relative_error", fmt(err), "0.02", err <= 0.02);
        max_err = Some(err);
    }
    for k in 0..=30 {
        let rad = 1.0 + 3.0 * k as f64 / 30.0;
        let mut x = vec![0.0; dim];
        x[0] = rad;
        let u = sol.field.eval(&x).re;
        let o = oracle.as_ref().map_or(String::new(), |o| fmt(o.eval(&x).re));
        let _ = writeln!(slice, "{},{},{}", fmt(rad), fmt(u), o);
    }
    r.tables.push(("kelvin_slice.csv".into(), slice));
    let mut buf = Vec::new();
    sol.profile.write_csv(&mut buf)?;
    r.tables.push(("kelvin_decay_profile.csv".into(), String::from_utf8(buf).expect("utf-8")));
    r.summary = json!({"N": dim, "g": g, "f": f, "q": q, "res": res, "ball": sol.ball.diagnostics,
        "decay_profile": sol.profile.summary_json(), "jacobian": [direct, via], "oracle_error": max_err});
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: &str) -> SuiteConfig {
        SuiteConfig { suite: suite.into(), ..Default::default() }
    }

    #[test]
    fn ellipticity_suite_passes_for_laplacian() {
        let r = run_suite(&SuiteConfig { dim: Some(3), ..cfg("ellipticity") }).unwrap();
        assert!(r.passed());
        assert!((r.summary["report"]["margin"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_elliptic_operator_fails_with_exit_one() {
        let out = run_suite(&SuiteConfig { op: Some("d1".into()), dim: Some(2), ..cfg("ellipticity") });
        assert_eq!(exit_code(&out), EXIT_CHECK_FAILED);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&run_suite(&cfg("nope"))), EXIT_USAGE);
        let unresolved = run_suite(&SuiteConfig { op: Some("nosuchop".into()), ..cfg("ellipticity") });
        assert_eq!(exit_code(&unresolved), EXIT_UNRESOLVED);
    }

    #[test]
    fn dn_verify_stokes() {
        let r = run_suite(&SuiteConfig { dim: Some(2), grid: Some(32), ..cfg("dn-verify") }).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn growth_newtonian() {
        let r = run_suite(&SuiteConfig { field: Some("power:-1".into()), q: Some("1".into()), ..cfg("growth") }).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn deterministic_reports() {
        let c = SuiteConfig { dim: Some(2), grid: Some(16), p: Some("2,4".into()), ..cfg("cz-survey") };
        let a = run_suite(&c).unwrap();
        let b = run_suite(&c).unwrap();
        assert_eq!(a.checks_csv().unwrap(), b.checks_csv().unwrap());
        assert_eq!(a.summary_json().unwrap(), b.summary_json().unwrap());
    }

    #[test]
    fn config_overlay_and_json() {
        let base: SuiteConfig = serde_json::from_str(r#"{"suite": "growth", "N": 2, "q": "1,2"}"#).unwrap();
        let merged = base.overlay(&SuiteConfig { q: Some("inf".into()), ..Default::default() });
        assert_eq!(merged.dim, Some(2));
        assert_eq!(merged.q.as_deref(), Some("inf"));
        assert_eq!(parse_exponents("1,2,inf").unwrap(), vec![1.0, 2.0, f64::INFINITY]);
    }

    #[test]
    fn catalog_listing() {
        let s = list_catalog();
        assert!(s.contains("laplacian") && s.contains("stokes (parameterized by N)") && s.contains("smoothed_power"));
    }
}
