use hermite_deform::deform::{deformed_generating_series, determinant_law_check, generating_function_check};
use hermite_deform::hermite::{
    generating_series_check, generating_series_real, orthonormality_check, real_orthogonality_check, routes_check,
};
use hermite_deform::lie::{
    basis_change, bilinear_generators, classify, lie_suite, rescale, structure_constants, theta_one_suite,
    undeformed_generators, var1_table, lie2_table, LieBasisSet, StructureConstants,
};
use hermite_deform::ncqm::{ncqm_commutator_suite, qp_representation_suite};
use hermite_deform::{
    alpha_matrix, biorthogonality_check, complex_hermite_sum, deformed_hermite, dual_family,
    dual_matrix_scaling_check, eigenvalue_structure_check, intertwine_check, real_hermite, rep_action_check,
    rep_matrix, AlphaPoint, BiPoly, Error, Gl2, HermiteTable, RealPoly, RepMatrix, Report, Scalar,
};
use serde_json::{json, Value};

use crate::output::{cell, Output, Table};
use crate::{Command, GroupArgs, LieBasis, Suite, VerifyArgs};

/// Floor for comparisons that go through a floating-point eigensolver.
const EIGEN_TOL: f64 = 1e-9;
/// Float points closer than this to `theta = 1` use the boundary suite.
const THETA_ONE_BAND: f64 = 1e-8;

pub fn run<S: Scalar>(cmd: &Command, tol: f64) -> Result<Output> {
    match cmd {
        Command::Hermite { m, n, lmax } => match (m, n) {
            (Some(m), Some(n)) => Ok(hermite_one::<S>(*m, *n)),
            (None, None) => Ok(hermite_table::<S>(*lmax)),
            _ => Err(usage("give both m and n, or neither for a table")),
        },
        Command::RealHermite { n, lmax } => {
            let ns: Vec<u32> = match n {
                Some(n) => vec![*n],
                None => (0..=*lmax).collect(),
            };
            Ok(real_hermite_cmd(&ns))
        }
        Command::Deform { group, m, n } => {
            let g = group_matrix::<S>(group)?;
            let p = deformed_hermite(&g, *m, *n);
            let json = json!({ "g": g.to_json(), "m": m, "n": n, "poly": p });
            let pretty = format!("H^g_{{{m},{n}}} = {p}\ng = {g}");
            Ok(Output::data(json, pretty).with_csv(poly_table(&[((*m, *n), &p)])))
        }
        Command::Repmat { group, level } => {
            let g = group_matrix::<S>(group)?;
            let m = rep_matrix(&g, *level);
            Ok(repmat_output(&m))
        }
        Command::Dual { group, level } => dual_cmd::<S>(group, *level),
        Command::Genfun { group, order, real } => {
            if *real {
                Ok(genfun_real(*order))
            } else {
                genfun_complex::<S>(group, *order)
            }
        }
        Command::Verify(args) => verify::<S>(args, tol),
        Command::LieReport { alpha, basis, theta_one } => {
            if *theta_one {
                return Ok(report_output(theta_one_suite()));
            }
            let alpha = alpha.as_deref().ok_or_else(|| usage("lie-report needs --alpha or --theta-one"))?;
            lie_report::<S>(&AlphaPoint::parse(alpha)?, *basis, tol)
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: &str) -> CliError {
    CliError::Usage(msg.to_owned())
}

fn group_matrix<S: Scalar>(group: &GroupArgs) -> Result<Gl2<S>> {
    match (&group.alpha, &group.g) {
        (Some(a), _) => Ok(alpha_matrix(&AlphaPoint::<S>::parse(a)?)?),
        (None, Some(entries)) => {
            let refs: Vec<&str> = entries.iter().map(String::as_str).collect();
            Ok(Gl2::parse(&refs)?)
        }
        (None, None) => Ok(Gl2::identity()),
    }
}

fn poly_table<S: Scalar>(polys: &[((u32, u32), &BiPoly<S>)]) -> Table {
    let mut rows = Vec::new();
    for ((m, n), p) in polys {
        for (mono, c) in p.terms() {
            let (re, im) = c.to_json_parts();
            rows.push(vec![
                m.to_string(),
                n.to_string(),
                mono.z.to_string(),
                mono.zbar.to_string(),
                cell(&re),
                cell(&im),
            ]);
        }
    }
    Table {
        header: vec!["m", "n", "z", "zbar", "re", "im"],
        rows,
    }
}

fn real_table(polys: &[((u32, u32), &RealPoly)]) -> Table {
    let mut rows = Vec::new();
    for ((k, l), p) in polys {
        for (mono, c) in p.terms() {
            rows.push(vec![
                k.to_string(),
                l.to_string(),
                mono.x1.to_string(),
                mono.x2.to_string(),
                c.to_string(),
                "0".to_owned(),
            ]);
        }
    }
    Table {
        header: vec!["k", "l", "x1", "x2", "re", "im"],
        rows,
    }
}

fn hermite_one<S: Scalar>(m: u32, n: u32) -> Output {
    let p = complex_hermite_sum::<S>(m, n);
    let norm_sq = HermiteTable::<S>::norm_sq(m, n);
    let json = json!({ "m": m, "n": n, "norm_sq": norm_sq.to_string(), "poly": p });
    let pretty = format!("H_{{{m},{n}}} = {p}\nnormalizer: sqrt({m}! {n}!) = sqrt({norm_sq})");
    Output::data(json, pretty).with_csv(poly_table(&[((m, n), &p)]))
}

fn hermite_table<S: Scalar>(lmax: u32) -> Output {
    let table = HermiteTable::<S>::build(lmax);
    let entries: Vec<((u32, u32), &BiPoly<S>)> = table.iter().collect();
    let pretty = entries
        .iter()
        .map(|((m, n), p)| format!("H_{{{m},{n}}} = {p}"))
        .collect::<Vec<_>>()
        .join("\n");
    Output::data(table.to_json(), pretty).with_csv(poly_table(&entries))
}

fn real_hermite_cmd(ns: &[u32]) -> Output {
    let polys: Vec<(u32, RealPoly)> = ns.iter().map(|&n| (n, real_hermite(n))).collect();
    let pretty = polys
        .iter()
        .map(|(n, p)| format!("H_{n}(x1) = {p}"))
        .collect::<Vec<_>>()
        .join("\n");
    let json = if polys.len() == 1 {
        json!({ "n": polys[0].0, "poly": polys[0].1 })
    } else {
        Value::Array(polys.iter().map(|(n, p)| json!({ "n": n, "poly": p })).collect())
    };
    let rows = polys
        .iter()
        .flat_map(|(n, p)| {
            p.terms()
                .map(move |(mono, c)| vec![n.to_string(), mono.x1.to_string(), c.to_string()])
        })
        .collect();
    Output::data(json, pretty).with_csv(Table {
        header: vec!["n", "power", "coeff"],
        rows,
    })
}

fn repmat_output<S: Scalar>(m: &RepMatrix<S>) -> Output {
    let json = serde_json::to_value(m).expect("matrix serializes");
    let pretty = format!(
        "M(g, {}), column k = H^g_{{k,L-k}} in the basis H_{{r,L-r}}, r = 0..L\n{}",
        m.level(),
        m.matrix()
    );
    let n = m.level() as usize + 1;
    let mut rows = Vec::new();
    for r in 0..n {
        for k in 0..n {
            let (re, im) = m.get(r, k).to_json_parts();
            rows.push(vec![r.to_string(), k.to_string(), cell(&re), cell(&im)]);
        }
    }
    Output::data(json, pretty).with_csv(Table {
        header: vec!["row", "col", "re", "im"],
        rows,
    })
}

fn dual_cmd<S: Scalar>(group: &GroupArgs, level: u32) -> Result<Output> {
    let g = group_matrix::<S>(group)?;
    let fam = dual_family(&g, level)?;
    let polys: Vec<Value> = fam
        .polys
        .iter()
        .enumerate()
        .map(|(k, p)| json!({ "m": k, "n": level as usize - k, "poly": p }))
        .collect();
    let json = json!({
        "L": level,
        "g": g.to_json(),
        "g_dual": fam.g_dual.to_json(),
        "matrix": fam.matrix,
        "polys": polys,
    });
    let mut pretty = format!("(g*)^-1 = {}\n", fam.g_dual);
    for (k, p) in fam.polys.iter().enumerate() {
        pretty.push_str(&format!("~H_{{{k},{}}} = {p}\n", level as usize - k));
    }
    let idx: Vec<((u32, u32), &BiPoly<S>)> =
        fam.polys.iter().enumerate().map(|(k, p)| ((k as u32, level - k as u32), p)).collect();
    Ok(Output::data(json, pretty).with_csv(poly_table(&idx)))
}

fn genfun_complex<S: Scalar>(group: &GroupArgs, order: u32) -> Result<Output> {
    let g = group_matrix::<S>(group)?;
    let series = deformed_generating_series(&g, order);
    let coeffs: Vec<((u32, u32), BiPoly<S>)> = (0..=order)
        .flat_map(|t| (0..=t).rev().map(move |k| (k, t - k)))
        .map(|(k, l)| ((k, l), series.scaled_coeff(k, l)))
        .collect();
    let json = json!({
        "order": order,
        "g": g.to_json(),
        "coefficients": coeffs
            .iter()
            .map(|((k, l), p)| json!({ "k": k, "l": l, "poly": p }))
            .collect::<Vec<_>>(),
    });
    let pretty = coeffs
        .iter()
        .map(|((k, l), p)| format!("{k}! {l}! [u^{k} u~^{l}] = {p}"))
        .collect::<Vec<_>>()
        .join("\n");
    let refs: Vec<((u32, u32), &BiPoly<S>)> = coeffs.iter().map(|(i, p)| (*i, p)).collect();
    let mut table = poly_table(&refs);
    table.header[0] = "k";
    table.header[1] = "l";
    Ok(Output::data(json, pretty).with_csv(table))
}

fn genfun_real(order: u32) -> Output {
    let series = generating_series_real(order);
    let coeffs: Vec<((u32, u32), RealPoly)> = (0..=order)
        .flat_map(|t| (0..=t).rev().map(move |k| (k, t - k)))
        .map(|(k, l)| ((k, l), series.scaled_coeff(k, l)))
        .collect();
    let json = json!({
        "order": order,
        "coefficients": coeffs
            .iter()
            .map(|((k, l), p)| json!({ "k": k, "l": l, "poly": p }))
            .collect::<Vec<_>>(),
    });
    let pretty = coeffs
        .iter()
        .map(|((k, l), p)| format!("{k}! {l}! [u^{k} u~^{l}] = {p}"))
        .collect::<Vec<_>>()
        .join("\n");
    let refs: Vec<((u32, u32), &RealPoly)> = coeffs.iter().map(|(i, p)| (*i, p)).collect();
    Output::data(json, pretty).with_csv(real_table(&refs))
}

pub fn report_output(r: Report) -> Output {
    let pretty = format!("{}: {}\n{}", r.name, status_word(&r), r.summary);
    let status = Some(r.status);
    Output {
        json: serde_json::to_value(&r).expect("report serializes"),
        pretty,
        csv: None,
        status,
    }
}

pub fn status_word(r: &Report) -> &'static str {
    match r.status {
        hermite_deform::Status::Pass => "pass",
        hermite_deform::Status::Fail => "fail",
        hermite_deform::Status::Error => "error",
    }
}

fn alpha_point<S: Scalar>(group: &GroupArgs, suite: &str) -> Result<AlphaPoint<S>> {
    let a = group
        .alpha
        .as_deref()
        .ok_or_else(|| usage(&format!("verify {suite} needs --alpha")))?;
    Ok(AlphaPoint::parse(a)?)
}

fn verify<S: Scalar>(args: &VerifyArgs, tol: f64) -> Result<Output> {
    let lmax = args.lmax;
    let report = match args.suite {
        Suite::Orthonormal => orthonormality_check::<S>(lmax.unwrap_or(6), tol),
        Suite::Routes => routes_check::<S>(lmax.unwrap_or(8)),
        Suite::Biorth => {
            let g = group_matrix::<S>(&args.group)?;
            Report::from_result("biorth", biorthogonality_check(&g, lmax.unwrap_or(4), tol))
        }
        Suite::Repmat => {
            let g = group_matrix::<S>(&args.group)?;
            let lmax = lmax.unwrap_or(4);
            let mut parts: Vec<Report> = (0..=lmax).map(|l| rep_action_check(&g, l, tol)).collect();
            parts.push(determinant_law_check(&g, lmax, tol));
            Report::combine("repmat", parts)
        }
        Suite::Eigen => {
            let g = group_matrix::<S>(&args.group)?;
            let etol = tol.max(EIGEN_TOL);
            let parts = (1..=lmax.unwrap_or(4))
                .map(|l| Report::from_result("eigen", eigenvalue_structure_check(&g, l, etol)))
                .collect();
            Report::combine("eigen", parts)
        }
        Suite::Intertwine => {
            let g = group_matrix::<S>(&args.group)?;
            intertwine_check(&g, lmax.unwrap_or(4), tol)
        }
        Suite::DualScaling => {
            let g = group_matrix::<S>(&args.group)?;
            dual_matrix_scaling_check(&g, lmax.unwrap_or(4), tol)
        }
        Suite::Genfun => {
            let order = lmax.unwrap_or(6);
            let mut parts = vec![generating_series_check::<S>(order), real_orthogonality_check(order)];
            if args.group.alpha.is_some() || args.group.g.is_some() {
                let g = group_matrix::<S>(&args.group)?;
                parts.push(generating_function_check(&g, order, tol));
            }
            Report::combine("genfun", parts)
        }
        Suite::Ncqm => ncqm_commutator_suite(&alpha_point::<S>(&args.group, "ncqm")?, tol),
        Suite::Lie => {
            if args.theta_one {
                theta_one_suite()
            } else {
                let p = alpha_point::<S>(&args.group, "lie")?;
                let theta = p.theta().to_c64();
                if !S::EXACT && (theta.re.abs() - 1.0).abs() < THETA_ONE_BAND {
                    theta_one_suite()
                } else {
                    Report::from_result("lie", lie_suite(&p, tol))
                }
            }
        }
        Suite::Qp => {
            let theta = args.theta.as_deref().ok_or_else(|| usage("verify qp needs --theta"))?;
            let theta = S::parse(theta)?;
            let gamma = match args.gamma.as_deref() {
                Some(s) => S::parse(s)?,
                None => theta.clone(),
            };
            Report::from_result("qp", qp_representation_suite(&theta, &gamma, tol))
        }
    };
    Ok(report_output(report))
}

fn lie_report<S: Scalar>(p: &AlphaPoint<S>, basis: LieBasis, tol: f64) -> Result<Output> {
    let theta = p.theta();
    let (set, expected): (LieBasisSet<S>, Option<StructureConstants<S>>) = match basis {
        LieBasis::Undeformed => (undeformed_generators(), Some(var1_table(&S::zero()))),
        LieBasis::Alpha => (bilinear_generators(p), Some(var1_table(&theta))),
        LieBasis::X => (basis_change(&bilinear_generators(p), &theta), Some(lie2_table(&theta))),
        LieBasis::Z => (rescale(&basis_change(&bilinear_generators(p), &theta), &theta)?, None),
    };
    let sc = structure_constants(&set, tol)?;
    let class = if sc.satisfies_jacobi(tol) { Some(classify(&sc, tol)?) } else { None };
    let mut json = sc.to_json(class);
    if let Some(e) = &expected {
        json["matches_expected"] = json!(sc.approx_eq(e, tol));
    }
    json["alpha"] = json!(p.alpha().fmt_plain());
    json["theta"] = json!(theta.fmt_plain());
    let pretty = format!(
        "alpha = {}, theta = {}\n{}class: {}",
        p.alpha().fmt_plain(),
        theta.fmt_plain(),
        bracket_lines(&sc),
        class.map_or("none (Jacobi fails)".to_owned(), |c| c.to_string()),
    );
    Ok(Output::data(json, pretty))
}

fn bracket_lines<S: Scalar>(sc: &StructureConstants<S>) -> String {
    let names = sc.names();
    let mut out = String::new();
    for i in 0..names.len() {
        for j in (i + 1)..names.len() {
            let terms: Vec<String> = (0..names.len())
                .filter_map(|k| {
                    let c = sc.coeff(i, j, k);
                    (!c.is_zero()).then(|| format!("({}) {}", c.fmt_plain(), names[k]))
                })
                .collect();
            let rhs = if terms.is_empty() { "0".to_owned() } else { terms.join(" + ") };
            out.push_str(&format!("[{}, {}] = {rhs}\n", names[i], names[j]));
        }
    }
    out
}

