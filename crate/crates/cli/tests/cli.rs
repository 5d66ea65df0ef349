use std::path::PathBuf;
use std::process::Command;

use dgar::format::{parse_input, serialize, Document};
use dgar::loop_sphere::decompose;
use dgar::report::Report;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn dgar(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_dgar"))
        .args(args)
        .output()
        .expect("spawn dgar");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn machine(out: &Output) -> Report {
    Report::parse(&out.stdout).expect("machine-readable section")
}

#[test]
fn sphere_fixture_parses() {
    let text = std::fs::read_to_string(fixture("sphere_d3.dga")).unwrap();
    let Document::Dga(r) = parse_input(&text, None).unwrap() else {
        panic!("not a dga")
    };
    let h = dgar::dga::algebra_cohomology(&r);
    assert_eq!(h.dims(), [(0, 1), (3, 1)].into());

    let out = dgar(&["cohomology", &fixture("sphere_d3.dga")]);
    assert_eq!(out.code, 0);
    assert_eq!(machine(&out).data["dims"], serde_json::json!({"0": 1, "3": 1}));
}

#[test]
fn every_fixture_round_trips() {
    let dir = PathBuf::from(fixture(""));
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.file_name().unwrap() == "typo_basis.dga" {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = parse_input(&text, None).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = serialize(&doc);
        assert_eq!(parse_input(&again, None).unwrap(), doc, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 13);
}

#[test]
fn typo_is_reported_with_line_and_record() {
    let out = dgar(&["validate", &fixture("typo_basis.dga")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 5"), "{}", out.stderr);
    assert!(out.stderr.contains("product record 2"), "{}", out.stderr);
    assert!(out.stderr.contains("x33"), "{}", out.stderr);
}

#[test]
fn validate_accepts_fixtures() {
    for f in [
        "sphere_d2.dga",
        "cp2.dga",
        "sphere_d3_acyclic_pair.dga",
        "k_over_sphere_d3.dgm",
    ] {
        let out = dgar(&["validate", &fixture(f)]);
        assert_eq!(out.code, 0, "{f}: {}", out.stdout);
        assert_eq!(machine(&out).verdict, Some(true));
    }
}

#[test]
fn poincare_exit_codes() {
    let out = dgar(&["poincare", &fixture("sphere_d3.dga")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("AR triangles exist (both sides), d = 3"));

    for d in 2..=6 {
        assert_eq!(dgar(&["poincare", &fixture(&format!("sphere_d{d}.dga"))]).code, 0);
    }
    assert_eq!(dgar(&["ar-exists", &fixture("cp2.dga")]).code, 0);
    assert_eq!(
        dgar(&["poincare", &fixture("sphere_d3_acyclic_pair.dga")]).code,
        0
    );

    let wedge = dgar(&["poincare", &fixture("wedge_s2_s4.dga")]);
    assert_eq!(wedge.code, 1);
    let report = machine(&wedge);
    assert_eq!(report.verdict, Some(false));
    assert_eq!(report.data["pairings"][1]["rank"], 0);
}

#[test]
fn poincare_ext_window_agrees() {
    let out = dgar(&["poincare", &fixture("sphere_d4.dga"), "--ext-window", "9"]);
    assert_eq!(out.code, 0);
    let check = &machine(&out).data["ext_window_check"];
    assert_eq!(check["passed"], true);
    assert_eq!(check["dims"], serde_json::json!({"4": 1}));
}

#[test]
fn resolution_of_k_over_sphere() {
    let out = dgar(&[
        "resolve",
        &format!("k:{}", fixture("sphere_d3.dga")),
        "--window",
        "6",
    ]);
    assert_eq!(out.code, 0);
    let data = machine(&out).data;
    assert_eq!(
        data["generator_degrees"],
        serde_json::json!({"0": 1, "2": 1, "4": 1, "6": 1})
    );
    assert_eq!(data["minimal"], true);
}

#[test]
fn translate_of_regular_module() {
    let out = dgar(&["ar-translate", &fixture("sphere_d3.dga"), "--window", "6"]);
    assert_eq!(out.code, 0);
    assert_eq!(machine(&out).data["dims"], serde_json::json!({"-2": 1, "1": 1}));
}

#[test]
fn rhom_of_k_is_polynomial() {
    let k = format!("k:{}", fixture("sphere_d3.dga"));
    let out = dgar(&["rhom", &k, &k, "--window", "8"]);
    assert_eq!(out.code, 0);
    let data = machine(&out).data;
    assert_eq!(
        data["dims"],
        serde_json::json!({"-8": 1, "-6": 1, "-4": 1, "-2": 1, "0": 1})
    );
    assert_eq!(data["valid"]["lo"], -8);
}

#[test]
fn kt_corpus_matches_recorded_blocks() {
    for c in 0..6 {
        let path = fixture(&format!("kt_random_{c}.ktm"));
        let out = dgar(&["kt-decompose", &path]);
        assert_eq!(out.code, 0, "{path}: {}", out.stdout);
        assert_eq!(machine(&out).data["matches_recorded"], true);

        let text = std::fs::read_to_string(&path).unwrap();
        let Document::Kt { module, blocks } = parse_input(&text, None).unwrap() else {
            panic!()
        };
        assert_eq!(Some(decompose(&module).unwrap()), blocks);
    }
}

#[test]
fn sphere_triangle_report() {
    let out = dgar(&["sphere-triangle", "--d", "3", "--j", "-1", "--m", "2"]);
    assert_eq!(out.code, 0);
    let data = machine(&out).data;
    assert_eq!(data["left"]["j"], 1);
    assert_eq!(data["middle"].as_array().unwrap().len(), 2);
    assert_eq!(data["right"]["cohomology"], serde_json::json!({"-3": 1, "4": 1}));
}

#[test]
fn sphere_verify_sweep() {
    let out = dgar(&["sphere-verify", "--d", "4"]);
    assert_eq!(out.code, 0);
    let data = machine(&out).data;
    assert_eq!(data["checked"], 77);
    assert_eq!(data["failures"], serde_json::json!([]));
    assert_eq!(
        dgar(&["sphere-verify", "--d", "2", "--j", "-5", "--m", "0"]).code,
        0
    );
}

#[test]
fn sphere_quiver_with_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("out.dot");
    let out = dgar(&[
        "sphere-quiver",
        "--d",
        "4",
        "--jmin",
        "-9",
        "--jmax",
        "9",
        "--mmax",
        "6",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("components: 3"));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph ar_quiver {"));
    assert!(text.contains("style=dashed"));
    assert!(text.trim_end().ends_with('}'));
}

#[test]
fn endo_cohomology_range() {
    let out = dgar(&["endo-cohomology", "--d", "3", "--range", "-6:5"]);
    assert_eq!(out.code, 0);
    assert_eq!(machine(&out).data["dims"], serde_json::json!({"0": 1, "3": 1}));
}

#[test]
fn field_flag() {
    let sphere = fixture("sphere_d3.dga");
    assert_eq!(dgar(&["--field", "Q", "cohomology", &sphere]).code, 0);
    let mismatch = dgar(&["--field", "p=7", "cohomology", &sphere]);
    assert_eq!(mismatch.code, 2);
    assert!(mismatch.stderr.contains("field mismatch"));

    for args in [
        &["--field", "p=5", "sphere-verify", "--d", "3"][..],
        &[
            "--field",
            "p=5",
            "sphere-triangle",
            "--d",
            "3",
            "--j",
            "0",
            "--m",
            "1",
        ],
        &["--field", "p=5", "endo-cohomology", "--d", "3", "--range", "0:3"],
        &["--field", "p=5", "kt-decompose", &fixture("kt_random_0.ktm")],
        &[
            "sphere-quiver",
            "--d",
            "3",
            "--jmin",
            "-4",
            "--jmax",
            "4",
            "--mmax",
            "3",
            "--field",
            "p=3",
        ],
    ] {
        let out = dgar(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stderr.contains("characteristic zero"), "{}", out.stderr);
    }
    assert_eq!(dgar(&["--field", "p=4", "cohomology", &sphere]).code, 2);
}

#[test]
fn usage_errors() {
    assert_eq!(dgar(&[]).code, 2);
    assert_eq!(dgar(&["frobnicate"]).code, 2);
    assert_eq!(dgar(&["resolve", &fixture("sphere_d3.dga")]).code, 2);
    assert_eq!(dgar(&["cohomology", "/nonexistent/file.dga"]).code, 2);
    assert_eq!(dgar(&["endo-cohomology", "--d", "3", "--range", "4:1"]).code, 2);
    assert_eq!(
        dgar(&["sphere-triangle", "--d", "1", "--j", "0", "--m", "0"]).code,
        2
    );
    assert_eq!(dgar(&["--help"]).code, 0);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "sphere-quiver",
        "--d",
        "3",
        "--jmin",
        "-6",
        "--jmax",
        "6",
        "--mmax",
        "4",
    ];
    assert_eq!(dgar(&args).stdout, dgar(&args).stdout);
    let p = ["poincare", &fixture("cp2.dga")];
    assert_eq!(dgar(&p).stdout, dgar(&p).stdout);
}

#[test]
fn machine_section_round_trips() {
    let out = dgar(&["poincare", &fixture("wedge_s2_s4.dga")]);
    let report = machine(&out);
    assert_eq!(Report::parse(&report.render()).unwrap(), report);
    assert_eq!(report.command[0], "poincare");
}

#[test]
fn in_process_run_matches_binary() {
    let args = ["dgar", "cohomology", &fixture("cp2.dga")];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dgar_cli::run(args, &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), dgar(&args[1..]).stdout);
}
