use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use faber_walsh::cli::output::{csv_string, parse_csv, parse_ppm, Cell};
use faber_walsh::fw::chebyshev_star_oracle;
use num_complex::Complex64;
use tempfile::TempDir;

fn set_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("sets")
        .join(name)
}

fn fw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fw"))
        .args(args)
        .env_remove("FW_THREADS")
        .output()
        .unwrap()
}

fn fw_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fw"))
        .args(args)
        .env("FW_THREADS", threads)
        .output()
        .unwrap()
}

fn csv_of(out: &Output) -> (Vec<String>, Vec<Vec<f64>>) {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    parse_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn set(name: &str) -> String {
    set_file(name).to_str().unwrap().to_owned()
}

#[test]
fn poly_rows() {
    let (h, rows) = csv_of(&fw(&[
        "poly",
        "--set",
        &set("sym_quarter.json"),
        "--degree",
        "2",
    ]));
    assert_eq!(h, ["k", "power", "re", "im"]);
    assert!(rows.contains(&vec![2.0, 0.0, -0.53125, 0.0]));
    assert!(rows.contains(&vec![2.0, 2.0, 1.0, 0.0]));
    let (_, rows) = csv_of(&fw(&[
        "poly",
        "--set",
        &set("sym_quarter.json"),
        "--kmax",
        "0",
    ]));
    assert_eq!(rows, vec![vec![0.0, 0.0, 1.0, 0.0]]);
}

#[test]
fn poly_star_matches_oracle() {
    let (_, rows) = csv_of(&fw(&["poly", "--set", &set("star3.json"), "--degree", "6"]));
    let t = chebyshev_star_oracle(3, 0.25, 1.0, 2).unwrap();
    let b6: Vec<&Vec<f64>> = rows.iter().filter(|r| r[0] == 6.0).collect();
    assert_eq!(b6.len(), 7);
    for r in b6 {
        let c = t.coeff(r[1] as usize);
        assert!((Complex64::new(r[2], r[3]) - c).norm() < 1e-8);
    }
}

#[test]
fn poly_contour_and_json() {
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("b.json");
    let out = fw(&[
        "poly",
        "--set",
        &set("sym_quarter.json"),
        "--degree",
        "4",
        "--method",
        "contour",
        "--json",
        json.to_str().unwrap(),
    ]);
    let (_, rows) = csv_of(&out);
    assert!(rows
        .iter()
        .any(|r| r[0] == 2.0 && r[1] == 0.0 && (r[2] + 0.53125).abs() < 1e-9));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(doc["polys"].as_array().unwrap().len(), 5);
    assert_eq!(doc["sequence"].as_array().unwrap().len(), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("focus sequence: [1, 2, 1, 2]"));
}

#[test]
fn csv_round_trips() {
    for args in [
        vec!["poly", "--degree", "5"],
        vec!["norms", "--kmax", "8", "--z0", "0,0.1"],
        vec!["acf", "--profile", "-2,2,17"],
    ] {
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full.extend(["--set".to_owned(), set("sym_half.json")]);
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let out = fw(&refs);
        let text = String::from_utf8(out.stdout.clone()).unwrap();
        let (h, rows) = csv_of(&out);
        let header: Vec<&str> = h.iter().map(String::as_str).collect();
        let cells: Vec<Vec<Cell>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&header)
                    .map(|(v, name)| {
                        if matches!(*name, "k" | "power") {
                            Cell::Int(*v as i64)
                        } else {
                            Cell::Real(*v)
                        }
                    })
                    .collect()
            })
            .collect();
        assert_eq!(csv_string(&header, &cells).unwrap(), text);
    }
}

#[test]
fn norms_table() {
    let (h, rows) = csv_of(&fw(&[
        "norms",
        "--set",
        &set("sym_half.json"),
        "--kmax",
        "30",
        "--z0",
        "0,0",
    ]));
    assert_eq!(h, ["k", "norm", "normalized", "acf_pow_k"]);
    assert_eq!(rows[0][1..3], [1.0, 1.0]);
    for r in &rows {
        assert!(r[2] >= r[3] * (1.0 - 1e-9));
    }
    let root = rows[30][2].powf(1.0 / 30.0);
    assert!((root - (1.0f64 / 3.0).sqrt()).abs() <= 0.02, "{root}");
}

#[test]
fn acf_profile_and_points() {
    let (_, rows) = csv_of(&fw(&[
        "acf",
        "--set",
        &set("sym_half.json"),
        "--profile",
        "-2,2,5",
    ]));
    assert!((rows[2][1] - 0.5773503).abs() < 1e-7);
    assert_eq!(rows[1][1], 1.0);
    let at = |x: &str| csv_of(&fw(&["acf", "--set", &set("sym_half.json"), "--z0", x])).1[0][2];
    assert!(at("10,0") < at("2,0"));
    assert_eq!(at("0.75,0"), 1.0);
    let (h, rows) = csv_of(&fw(&[
        "acf",
        "--set",
        &set("koch_liesen5.json"),
        "--grid",
        "-1.5,1.5,-1,1,6,4",
    ]));
    assert_eq!(h, ["re", "im", "acf"]);
    assert_eq!(rows.len(), 24);
    assert_eq!((rows[0][0], rows[0][1]), (-1.25, 0.75));
    assert!(rows.iter().all(|r| r[2] > 0.0 && r[2] <= 1.0));
}

#[test]
fn phase_portraits() {
    let dir = TempDir::new().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let out = fw(&[
        "phase",
        "--set",
        &set("sym_quarter.json"),
        "--degree",
        "1",
        "--grid",
        "0,1.25,-0.5,0.5,50,40",
        "--out",
        &p("b1.ppm"),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("zeros of b_1 in window: 1"));
    let (w, h, data) = parse_ppm(&std::fs::read(p("b1.ppm")).unwrap()).unwrap();
    assert_eq!((w, h, data.len()), (50, 40, 6000));
    // the hue wheel is centered at 0.625: left of it the phase is pi, right of it 0
    let px = |i: usize, j: usize| &data[3 * (j * w + i)..3 * (j * w + i) + 3];
    let left = px(0, 20);
    assert!(left[0] == 255 && left[1] < 16 && left[2] < 16, "{left:?}");
    let right = px(49, 20);
    assert!(
        right[0] < 16 && right[1] > 240 && right[2] > 240,
        "{right:?}"
    );

    fw(&[
        "phase",
        "--set",
        &set("sym_quarter.json"),
        "--degree",
        "0",
        "--grid",
        "-1,1,-1,1,8,8",
        "--out",
        &p("b0.ppm"),
    ]);
    let (_, _, data) = parse_ppm(&std::fs::read(p("b0.ppm")).unwrap()).unwrap();
    assert!(data.chunks(3).all(|c| c == [0, 255, 255]));

    let out = fw(&[
        "phase",
        "--set",
        &set("koch_liesen5.json"),
        "--degree",
        "5",
        "--grid",
        "-2,2,-2,2,64,64",
        "--out",
        &p("kl.ppm"),
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("zeros of b_5 in window: 5"));
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let mut images = Vec::new();
    for (i, threads) in ["1", "4", "1"].iter().enumerate() {
        let path = dir.path().join(format!("kl{i}.ppm"));
        let out = fw_env(
            &[
                "phase",
                "--set",
                &set("koch_liesen5.json"),
                "--degree",
                "10",
                "--grid",
                "-1.5,1.5,-1.5,1.5,96,96",
                "--out",
                path.to_str().unwrap(),
            ],
            threads,
        );
        assert!(out.status.success());
        images.push(std::fs::read(path).unwrap());
    }
    assert_eq!(images[0], images[1]);
    assert_eq!(images[0], images[2]);
    let grid = |t| {
        fw_env(
            &[
                "acf",
                "--set",
                &set("koch_liesen5.json"),
                "--grid",
                "-1,1,-1,1,12,12",
            ],
            t,
        )
        .stdout
    };
    assert_eq!(grid("1"), grid("3"));
}

#[test]
fn series_tables() {
    let (h, rows) = csv_of(&fw(&[
        "series",
        "--set",
        &set("sym_quarter.json"),
        "--kmax",
        "3",
        "--function",
        "poly:0,1",
    ]));
    assert_eq!(h, ["k", "a_re", "a_im", "error"]);
    assert!((rows[0][1] - 0.625).abs() < 1e-12 && (rows[1][1] - 1.0).abs() < 1e-12);
    assert!(rows[2][1].abs() < 1e-12);

    let (_, rows) = csv_of(&fw(&[
        "series",
        "--set",
        &set("sym_quarter.json"),
        "--kmax",
        "25",
        "--function",
        "exp",
    ]));
    assert!(rows[25][3] < 1e-12);
    assert!(rows[25][3] < 0.9f64.powi(25) * rows[0][3] * 1e-6);

    let (_, rows) = csv_of(&fw(&[
        "series",
        "--set",
        &set("sym_half.json"),
        "--kmax",
        "30",
        "--function",
        "rational:0,0.5",
    ]));
    let out = fw(&["acf", "--set", &set("sym_half.json"), "--z0", "0,0.5"]);
    let inv_rho = csv_of(&out).1[0][2];
    let root = rows[30][3].powf(1.0 / 30.0);
    assert!((root - inv_rho).abs() <= 0.05, "{root} vs {inv_rho}");
}

#[test]
fn check_passes() {
    let out = fw(&["check"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    let out = fw(&["check", "--suite", "balance"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{ "kind": "symmetric_intervals", "c": 2.0, "d": 1.0 }"#,
    )
    .unwrap();
    let code = |o: Output| o.status.code().unwrap();
    assert_eq!(
        code(fw(&[
            "poly",
            "--set",
            bad.to_str().unwrap(),
            "--degree",
            "2"
        ])),
        2
    );
    assert_eq!(
        code(fw(&["poly", "--set", "/nonexistent.json", "--degree", "2"])),
        2
    );
    assert_eq!(code(fw(&["poly", "--degree", "2"])), 2);
    assert_eq!(
        code(fw(&[
            "norms",
            "--set",
            &set("sym_half.json"),
            "--kmax",
            "3",
            "--z0",
            "0.75,0"
        ])),
        2
    );
    assert_eq!(
        code(fw(&[
            "phase",
            "--set",
            &set("sym_half.json"),
            "--degree",
            "3",
            "--grid",
            "0,1,0,1,5000,10"
        ])),
        2
    );
    assert_eq!(
        code(fw(&[
            "series",
            "--set",
            &set("sym_half.json"),
            "--kmax",
            "3",
            "--function",
            "sin"
        ])),
        2
    );
    assert_eq!(
        code(fw_env(
            &["acf", "--set", &set("sym_half.json"), "--z0", "0,0"],
            "many"
        )),
        2
    );
    assert_eq!(
        code(fw(&[
            "poly",
            "--set",
            &set("sym_half.json"),
            "--method",
            "contour",
            "--degree",
            "120"
        ])),
        3
    );
    assert_eq!(
        code(fw(&["acf", "--set", &set("sym_half.json"), "--z0", "0,0"])),
        0
    );
}

#[test]
fn sample_sets_load() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("sets");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let set = faber_walsh::SetDescriptor::from_json_file(&path).unwrap();
        set.conformal_pair().unwrap();
        let out = fw(&["acf", "--set", path.to_str().unwrap(), "--z0", "0.05,1.9"]);
        assert!(
            out.status.success(),
            "{}: {}",
            path.display(),
            String::from_utf8_lossy(&out.stderr)
        );
        count += 1;
    }
    assert!(count >= 6);
}
