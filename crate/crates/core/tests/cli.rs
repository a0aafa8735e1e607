use std::process::Command;

use polar_ncomplex::cli::{run, CliOutput, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};

fn polarn(args: &[&str]) -> CliOutput {
    run(std::iter::once("polarn").chain(args.iter().copied()))
}

fn parse_row(line: &str) -> Vec<f64> {
    line.split(',').map(|v| v.parse().unwrap()).collect()
}

fn lines(out: &CliOutput) -> Vec<&str> {
    out.stdout.lines().collect()
}

#[test]
fn arithmetic() {
    let out = polarn(&["mul", "0,1,0", "0,1,0"]);
    assert_eq!((out.stdout.as_str(), out.code), ("0,0,1\n", EXIT_OK));
    assert_eq!(polarn(&["add", "1,-2", "0.5,0.5"]).stdout, "1.5,-1.5\n");
    assert_eq!(polarn(&["exp", "0,0,0,0"]).stdout, "1,0,0,0\n");
    assert_eq!(polarn(&["log", "1,0,0"]).stdout, "0,0,0\n");
    let root: Vec<f64> = parse_row(polarn(&["pow", "4,0,0", "0.5"]).stdout.trim());
    assert!((root[0] - 2.0).abs() < 1e-14 && root[1].abs() < 1e-14 && root[2].abs() < 1e-14);
    assert_eq!(polarn(&["cos", "0,0,0"]).stdout, "1,0,0\n");
    assert_eq!(polarn(&["--digits", "3", "inv", "3,0,0"]).stdout, "0.333,0,0\n");
}

#[test]
fn domain_errors_are_usage_failures() {
    let out = polarn(&["inv", "1,1"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("NotInvertible: v_minus"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
    assert_eq!(polarn(&["add", "1,2", "1,2,3"]).code, EXIT_USAGE);
    assert_eq!(polarn(&["mul", "1,x", "1,2"]).code, EXIT_USAGE);
    assert_eq!(polarn(&["log", "-1,0,0"]).code, EXIT_USAGE);
    assert_eq!(polarn(&["frobnicate"]).code, EXIT_USAGE);
}

#[test]
fn help_succeeds() {
    let out = polarn(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("decompose"));
}

#[test]
fn decompose_lists_polar_quantities() {
    let out = polarn(&["decompose", "1,0,0"]);
    let l = lines(&out);
    for key in ["v_plus=1", "v_1=1", "vt_1=0", "nu=1", "d=1", "rho=1", "phi_1=0", "rho_1=1"] {
        assert!(l.contains(&key), "missing {key} in {l:?}");
    }
    assert!(l.contains(&"theta_plus=0.955316618125"));

    let out = polarn(&["decompose", "0,0,0,0"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("note=DegenerateDirection"));

    let even = polarn(&["decompose", "1,2,3,4,5,6"]);
    for key in ["v_minus=", "theta_minus=", "psi_1=", "phi_2=", "rho_2="] {
        assert!(even.stdout.contains(key), "missing {key}");
    }
}

#[test]
fn cosexp_table() {
    let out = polarn(&["cosexp", "--n", "3", "--from", "0", "--to", "0.5", "--step", "0.25"]);
    let l = lines(&out);
    assert_eq!(l[0], "y,g_30,g_31,g_32");
    assert_eq!(l[1], "0,1,0,0");
    assert_eq!(l.len(), 4);
    let row = parse_row(l[2]);
    assert_eq!(row[0], 0.25);
    assert!((row.iter().skip(1).sum::<f64>() - 0.25f64.exp()).abs() < 1e-15);

    let single = polarn(&["cosexp", "--n", "4", "--k", "1", "--from", "-1", "--to", "1", "--step", "1", "--verify"]);
    let l = lines(&single);
    assert_eq!(l[0], "y,g_41");
    assert_eq!(l[2], "0,0");
    // 1 + 1/5! + 1/9! + 1/13! + ...
    let g41 = 1.008_336_089_225_849;
    assert!((parse_row(l[1])[1] + g41).abs() < 1e-15);
    assert!((parse_row(l[3])[1] - g41).abs() < 1e-15);
    assert!(single.stderr.starts_with("max_deviation="));
    assert_eq!(polarn(&["cosexp", "--n", "3", "--from", "0", "--to", "1", "--step", "0"]).code, EXIT_USAGE);
}

#[test]
fn factor_counts() {
    let out = polarn(&["factor", "--n", "4", "--coeffs", "0,0,0,0;-1,0,0,0"]);
    let l = lines(&out);
    assert_eq!(l[0], "count=4");
    assert_eq!(l[1], "truncated=false");
    assert_eq!(l.iter().filter(|s| s.starts_with("# set")).count(), 4);

    let out = polarn(&["factor", "--n", "3", "--coeffs", "0,0,0;-1,0,0"]);
    assert!(out.stdout.starts_with("count=2\n"));

    let none = polarn(&["factor", "--coeffs", "0,0;1,0"]);
    assert!(none.stdout.starts_with("count=0\n"), "{}", none.stdout);
    assert_eq!(polarn(&["factor", "--n", "4", "--coeffs", "0,0,0;-1,0,0"]).code, EXIT_USAGE);
}

#[test]
fn integrate_with_path_file() {
    let dir = std::env::temp_dir().join(format!("polarn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("triangle.txt");
    std::fs::write(&path, "# triangle around the origin\n2,0,0\n0,2,0\n0,0,2\n").unwrap();
    let p = path.to_str().unwrap();

    let out = polarn(&["integrate", "--pole", "0,0,0", "--path", p]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let l = lines(&out);
    assert_eq!(l[1], "closed_form=0,3.62759872847,-3.62759872847");
    let dev: f64 = l[2].strip_prefix("max_deviation=").unwrap().parse().unwrap();
    assert!(dev < 1e-10);

    let with_exp = polarn(&["integrate", "--pole", "0,0,0", "--path", p, "--fn", "exp"]);
    assert_eq!(with_exp.code, EXIT_OK);

    let on_path = polarn(&[
        "integrate",
        "--pole",
        "1.3333333333333333,-0.6666666666666666,-0.6666666666666666",
        "--path",
        p,
    ]);
    assert_eq!(on_path.code, EXIT_NUMERICAL);
    assert!(on_path.stderr.contains("PointOnPath"));

    let missing = polarn(&["integrate", "--pole", "0,0,0", "--path", dir.join("nope").to_str().unwrap()]);
    assert_eq!(missing.code, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_polarn");
    let ok = Command::new(bin).args(["mul", "0,1,0", "0,1,0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "0,0,1\n");
    let bad = Command::new(bin).args(["inv", "1,1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().contains("NotInvertible: v_minus"));
}
