use thinloop::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("thinloop").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn construct_witt() {
    let (code, out, err) = call(&["construct", "--algebra", "W", "--p", "3", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(err.contains("dim 9") && err.contains("Jacobi: PASS"));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["labels"].as_array().unwrap().len(), 9);
}

#[test]
fn construct_hamiltonian_to_file() {
    let path = std::env::temp_dir().join(format!("thinloop-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) =
        call(&["construct", "--algebra", "Hphi1", "--p", "3", "--n1", "1", "--n2", "1", "--eps", "1", "--output", p]);
    assert_eq!(code, 0);
    assert!(out.contains("dim 9"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["labels"].as_array().unwrap().len(), 9);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn configuration_errors_exit_two() {
    let (code, _, err) = call(&["construct", "--algebra", "W", "--p", "4", "--n", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("characteristic must be prime"));
    assert_eq!(call(&["verify", "--grading", "finite", "--p", "3", "--q", "3", "--mu3", "1", "--depth", "12"]).0, 2);
    assert_eq!(call(&["verify", "--grading", "finite", "--p", "3", "--n1", "2", "--q", "3", "--mu3", "0,1"]).0, 2);
    assert_eq!(
        call(&["verify", "--grading", "eps-zero", "--p", "5", "--q", "5", "--ratio", "4", "--depth", "20"]).0,
        2
    );
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["verify", "--grading", "mixed", "--p", "3", "--q", "3", "--depth", "3"]).0, 2);
}

#[test]
fn verify_mixed() {
    let (code, out, _) = call(&["verify", "--grading", "mixed", "--p", "3", "--n1", "1", "--n2", "1", "--depth", "18"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["verdict"], "PASS");
    for d in json["diamonds"].as_array().unwrap().iter().skip(1) {
        let degree = d["degree"].as_u64().unwrap();
        assert_eq!(degree % 2, 1);
        let want = if degree % 6 == 3 { "2" } else { "inf" };
        assert_eq!(d["type"], want, "degree {degree}");
    }
}

#[test]
fn verify_finite_and_eps_zero() {
    let (code, out, _) =
        call(&["verify", "--grading", "finite", "--p", "3", "--q", "3", "--mu3", "0,1", "--depth", "18"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) =
        call(&["verify", "--grading", "eps-zero", "--p", "5", "--q", "5", "--ratio", "2", "--depth", "40"]);
    assert_eq!(code, 0);
    let (code, _, _) = call(&[
        "verify",
        "--grading",
        "finite",
        "--p",
        "5",
        "--q",
        "5",
        "--sigma",
        "0",
        "--rho",
        "1",
        "--field-degree",
        "1",
        "--depth",
        "20",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn depth_from_environment() {
    std::env::set_var("THINLOOP_DEPTH", "14");
    let (code, out, _) = call(&["verify", "--grading", "mixed", "--p", "3", "--q", "3"]);
    let (flag, flag_out, _) = call(&["verify", "--grading", "mixed", "--p", "3", "--q", "3", "--depth", "10"]);
    std::env::set_var("THINLOOP_DEPTH", "ten");
    let (bad, _, _) = call(&["verify", "--grading", "mixed", "--p", "3", "--q", "3"]);
    std::env::remove_var("THINLOOP_DEPTH");
    assert_eq!(code, 0);
    assert!(out.contains("\"depth\": 14"));
    assert_eq!(flag, 0);
    assert!(flag_out.contains("\"depth\": 10"));
    assert_eq!(bad, 2);
}

#[test]
fn grade_outputs_degree_map() {
    let (code, out, _) = call(&["grade", "--grading", "mixed", "--p", "3", "--n2", "1"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["grading"]["modulus"], 6);
    assert_eq!(json["grading"]["degrees"].as_array().unwrap().len(), 9);
}

#[test]
fn suite_filtering() {
    let (code, out, _) = call(&["suite", "--only", "char2"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS") && l.contains("char2")));
    assert!(out.lines().count() >= 3);
    let (code, _, err) = call(&["suite", "--only", "no-such-row"]);
    assert_eq!(code, 2);
    assert!(err.contains("valid rows") && err.contains("mixed-3-1-1"));
}

#[test]
fn suite_runs_clean() {
    let (code, out, _) = call(&["suite"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}
