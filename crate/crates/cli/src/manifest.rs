use hermite_deform::deform::{determinant_law_check, generating_function_check};
use hermite_deform::hermite::{generating_series_check, orthonormality_check, real_orthogonality_check, routes_check};
use hermite_deform::lie::{lie_suite, theta_one_suite};
use hermite_deform::ncqm::{ncqm_commutator_suite, qp_representation_suite};
use hermite_deform::{
    alpha_matrix, biorthogonality_check, dual_matrix_scaling_check, eigenvalue_structure_check, intertwine_check,
    rep_action_check, AlphaPoint, Coeff, Gl2, Report, Scalar, Status,
};
use serde_json::json;

use crate::commands::status_word;
use crate::output::Output;

fn c(s: &str) -> Coeff {
    Coeff::parse(s).expect("literal parses")
}

fn point(s: &str) -> AlphaPoint<Coeff> {
    AlphaPoint::parse(s).expect("valid alpha")
}

fn group_battery(label: &str, g: &Gl2<Coeff>) -> Vec<Report> {
    let mut out = vec![
        Report::from_result("biorth", biorthogonality_check(g, 4, 0.0)),
        Report::combine("repmat", (0..=4).map(|l| rep_action_check(g, l, 0.0)).collect()),
        determinant_law_check(g, 6, 0.0),
        intertwine_check(g, 4, 0.0),
        dual_matrix_scaling_check(g, 4, 0.0),
        generating_function_check(g, 6, 0.0),
    ];
    let eigen = (1..=4)
        .map(|l| Report::from_result("eigen", eigenvalue_structure_check(g, l, 1e-9)))
        .collect();
    out.push(Report::combine("eigen", eigen));
    for r in &mut out {
        r.name = format!("{}[{label}]", r.name);
    }
    out
}

/// Every exact suite at a fixed set of parameters, plus the float boundary.
pub fn battery() -> Output {
    let mut reports = vec![
        routes_check::<Coeff>(8),
        orthonormality_check::<Coeff>(8, 0.0),
        real_orthogonality_check(10),
        generating_series_check::<Coeff>(8),
    ];
    let alpha = alpha_matrix(&point("3/5")).expect("alpha matrix");
    reports.extend(group_battery("alpha=3/5", &alpha));
    let generic = Gl2::new(c("2"), c("1+i"), c("1/2"), c("3")).expect("invertible");
    reports.extend(group_battery("g=[2,1+i;1/2,3]", &generic));
    for a in ["3/5", "5/13"] {
        let mut r = ncqm_commutator_suite(&point(a), 0.0);
        r.name = format!("ncqm[alpha={a}]");
        reports.push(r);
    }
    for a in ["3/5", "5/13", "8/17"] {
        let mut r = Report::from_result("lie", lie_suite(&point(a), 0.0));
        r.name = format!("lie[alpha={a}]");
        reports.push(r);
    }
    let mut qp = Report::from_result("qp", qp_representation_suite(&c("3/5"), &c("16/15"), 0.0));
    qp.name = "qp[theta=3/5,gamma=16/15]".to_owned();
    reports.push(qp);
    reports.push(theta_one_suite());

    let total = reports.len();
    let passed = reports.iter().filter(|r| r.passed()).count();
    let status = if reports.iter().any(|r| r.status == Status::Error) {
        Status::Error
    } else if passed == total {
        Status::Pass
    } else {
        Status::Fail
    };
    let pretty = reports
        .iter()
        .map(|r| format!("{:<40} {}", r.name, status_word(r)))
        .chain(std::iter::once(format!("{passed}/{total} passed")))
        .collect::<Vec<_>>()
        .join("\n");
    Output {
        json: json!({ "status": status, "passed": passed, "total": total, "reports": reports }),
        pretty,
        csv: None,
        status: Some(status),
    }
}
