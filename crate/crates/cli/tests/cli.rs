//! Exit codes, output plumbing and the JSON round trip behind every format.

use std::process::{Command, Output};

use whcalc::commands::{ahss, cohomology, pi_wh, PageArg, PieceArg, TargetArg};
use whcalc::document::Document;
use whcalc::render::{render, Format};

fn whcalc(args: &[&str], cap: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_whcalc"));
    cmd.args(args).env_remove("WHCALC_MAX_DEGREE_CAP");
    if let Some(c) = cap {
        cmd.env("WHCALC_MAX_DEGREE_CAP", c);
    }
    cmd.output().unwrap()
}

fn code(args: &[&str], cap: Option<&str>) -> i32 {
    whcalc(args, cap).status.code().unwrap()
}

fn documents() -> Vec<Document> {
    let mut docs = vec![pi_wh(3, Some(24), false).unwrap(), pi_wh(5, None, false).unwrap()];
    for target in [TargetArg::JCp, TargetArg::SCp, TargetArg::SCpbar] {
        for page in [PageArg::E2, PageArg::Einf] {
            docs.push(ahss(3, target, page, None).unwrap());
        }
    }
    for piece in [PieceArg::All, PieceArg::SigmaC, PieceArg::Hp, PieceArg::Coker, PieceArg::Ker, PieceArg::Total] {
        docs.push(cohomology(5, 40, piece, false).unwrap());
    }
    docs
}

#[test]
fn every_format_renders_the_same_after_a_json_round_trip() {
    for doc in documents() {
        let back = Document::from_json(&doc.to_json().unwrap()).unwrap();
        assert_eq!(back, doc, "{}", doc.header.command);
        for fmt in [Format::Json, Format::Csv, Format::AsciiChart, Format::SvgChart] {
            let a = render(&doc, fmt).unwrap();
            let b = render(&back, fmt).unwrap();
            assert_eq!(a, b, "{} as {fmt:?}", doc.header.command);
            assert!(!a.is_empty());
        }
    }
}

#[test]
fn svg_output_is_a_single_document() {
    let svg = render(&pi_wh(3, Some(24), false).unwrap(), Format::SvgChart).unwrap();
    assert!(svg.starts_with("<?xml") || svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["pi-wh", "--p", "3"], None), 0);
    assert_eq!(code(&["pi-wh", "--p", "37"], None), 2, "irregular prime");
    assert_eq!(code(&["pi-wh", "--p", "9"], None), 2, "not a prime");
    assert_eq!(code(&["pi-wh", "--p", "2"], None), 2, "even prime");
    assert_eq!(code(&["pi-wh", "--p", "37", "--assume-regular"], None), 2, "known irregular");
    assert_eq!(code(&["pi-wh", "--p", "1009", "--max-degree", "20"], None), 2, "unverified");
    assert_eq!(code(&["pi-wh", "--p", "1009", "--max-degree", "20", "--assume-regular"], None), 0);
    assert_eq!(code(&["ahss", "--p", "3", "--max-degree", "200"], None), 3, "past the chart window");
    assert_eq!(code(&["pi-wh", "--p", "3", "--max-degree", "24"], Some("10")), 3, "over the cap");
    assert_eq!(code(&["pi-wh", "--p", "3"], Some("lots")), 2, "unparsable cap");
}

#[test]
fn out_writes_the_file_instead_of_stdout() {
    let dir = std::env::temp_dir().join(format!("whcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p3.csv");
    let out = whcalc(
        &["pi-wh", "--p", "3", "--format", "csv", "--out", path.to_str().unwrap()],
        None,
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let stdout = whcalc(&["pi-wh", "--p", "3", "--format", "csv"], None).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_defaults_to_three_five_seven() {
    let out = whcalc(&["verify"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    for p in ["3", "5", "7"] {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(p)), "no rows for p = {p}");
    }
    assert!(text.contains(", 0 failed"));
}

#[test]
fn verify_refuses_irregular_primes_before_checking() {
    let out = whcalc(&["verify", "--p", "3,37"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}
