//! End-to-end tests of the `hilbsegre` binary: flags, formats, exit codes
//! and JSON round-trips.

use hilbsegre_core::families::FamilyReportDto;
use hilbsegre_core::poly::parse_poly;
use hilbsegre_core::positivity::Certificate;
use hilbsegre_core::tautsegre::{IdentityDto, SegreDto};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbsegre"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn segre_spot_values() {
    let out = run(&["segre", "--family", "line", "--g", "7", "--n", "1", "--k", "2", "--top"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "24");

    let out = run(&[
        "segre", "--family", "ml", "--g", "6", "--r", "3", "--d", "6", "--k", "2", "--top",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3696");
}

#[test]
fn segre_symbolic_tex_parses_back() {
    let out = run(&["segre", "--family", "line", "--k", "2", "--symbolic", "--top", "--format", "tex"]);
    assert!(out.status.success());
    let tex = stdout(&out);
    let p = parse_poly(tex.trim()).expect("tex output parses");
    // 2(n^4(g-1)^2 - 5n^2(g-1) + 6)
    let want = parse_poly("2*n^4*g^2 - 4*n^4*g + 2*n^4 - 10*n^2*g + 10*n^2 + 12").unwrap();
    assert_eq!(p, want);
}

#[test]
fn segre_json_round_trips() {
    let out = run(&["segre", "--family", "line", "--g", "7", "--n", "1", "--k", "2", "--format", "json"]);
    assert!(out.status.success());
    let dto: SegreDto = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(dto.integral, "24");
    assert_eq!(dto.k, 2);
    assert_eq!(dto.classes.len(), 5);
    // round trip
    let again: SegreDto = serde_json::from_str(&serde_json::to_string(&dto).unwrap()).unwrap();
    assert_eq!(again, dto);
}

#[test]
fn segre_requires_parameters_unless_symbolic() {
    let out = run(&["segre", "--family", "ml", "--g", "6", "--k", "2", "--top"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("missing required parameter"), "{err}");
}

#[test]
fn family_reports() {
    let out = run(&["family", "tangent", "--g", "2", "--n", "5", "--format", "json"]);
    assert!(out.status.success());
    let dto: FamilyReportDto = serde_json::from_str(&stdout(&out)).unwrap();
    let big = dto.facts.iter().find(|f| f.name == "big").unwrap();
    assert_eq!(big.value, "true");

    let out = run(&["family", "ulrich", "--h", "2", "--a", "1", "--format", "json"]);
    let dto: FamilyReportDto = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(dto.moduli_dim, "14");

    let out = run(&["family", "ml", "--g", "6", "--r", "3", "--d", "6", "--format", "json"]);
    let dto: FamilyReportDto = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(dto.moduli_dim, "0");
    let exc = dto.facts.iter().find(|f| f.name == "exceptional").unwrap();
    assert_eq!(exc.value, "true");
    // round trip
    let again: FamilyReportDto = serde_json::from_str(&serde_json::to_string(&dto).unwrap()).unwrap();
    assert_eq!(again, dto);
}

#[test]
fn identities_pass_with_exit_zero() {
    let out = run(&["identities"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("9/9 pass"));
    let out = run(&["identities", "--format", "json"]);
    let dtos: Vec<IdentityDto> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(dtos.len(), 9);
    assert!(dtos.iter().all(|d| d.pass));
}

#[test]
fn certify_exit_codes() {
    // small passing ranges (full ranges live in the acceptance suite)
    let out = run(&["certify", "ulrich", "--k", "2", "--a-max", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // an explicitly requested below-threshold point fails with exit 2
    let out = run(&["certify", "line", "--k", "3", "--n", "1", "--g", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("threshold_witness = 6"));

    // usage errors exit 1
    let out = run(&["certify", "nosuch", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["certify", "ml", "--k", "2", "--r-min", "1", "--r-max", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn certify_json_round_trips() {
    let out = run(&["certify", "ml", "--k", "2", "--r-max", "3", "--format", "json"]);
    assert!(out.status.success());
    let cert: Certificate = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(cert.verdict);
    let again: Certificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
    assert_eq!(again, cert);
}

#[test]
fn errata_reporting() {
    let out = run(&["errata"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for id in [
        "line-bundle-k3-expansion",
        "ulrich-mukai-vector",
        "ml-parabola-beta-label",
        "ml-rank2-line-roots",
    ] {
        assert!(text.contains(id), "missing erratum {id}");
    }
    // JSON round trip of the errata list
    let out = run(&["errata", "--format", "json"]);
    let errata: Vec<hilbsegre_core::errata::Erratum> =
        serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(errata.len(), 4);
    assert!(errata.iter().all(|e| e.confirmed));
    let again: Vec<hilbsegre_core::errata::Erratum> =
        serde_json::from_str(&serde_json::to_string(&errata).unwrap()).unwrap();
    assert_eq!(again, errata);
    // the flag appends the report to another command's output
    let out = run(&["--report-errata", "identities"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("9/9 pass"));
    assert!(text.contains("detected errata"));
}

#[test]
fn usage_errors_exit_one() {
    let out = run(&["segre", "--family", "nosuch", "--k", "2", "--symbolic"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["nosuchcommand"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["family", "ml", "--g", "2", "--r", "3", "--d", "6"]);
    assert_eq!(out.status.code(), Some(1), "genus below minimum");
}

#[test]
fn threads_flag_is_accepted() {
    let out = run(&["--threads", "2", "certify", "ulrich", "--k", "2", "--a-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["--threads", "0", "identities"]);
    assert_eq!(out.status.code(), Some(1));
}
