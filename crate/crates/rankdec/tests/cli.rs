use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn rankdec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankdec"))
        .args(args)
        .env_remove("RANKDEC_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn make_code_summary() {
    let o = rankdec(&["make-code", path(&data("code.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n=14 |σ|=14 k=4 T={0..4,8..12}\n"), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(data("code.json")).unwrap();
    let empty = dir.path().join("empty.json");
    fs::write(&empty, text.replace("[0, 1, 2, 3, 4, 8, 9, 10, 11, 12]", "[]")).unwrap();
    let o = rankdec(&["make-code", path(&empty)]);
    assert!(stdout(&o).starts_with("n=14 |σ|=14 k=14 T={}"), "{}", stdout(&o));

    let reducible = dir.path().join("reducible.json");
    fs::write(&reducible, text.replace("0x40A9", "0x4001")).unwrap();
    let o = rankdec(&["make-code", path(&reducible)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn bounds_report() {
    let spec = data("code.json");
    let o = rankdec(&["bounds", path(&spec), "--pattern", path(&data("roos.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Roos ≥ 7, τ=3, capacity=3\n"), "{}", stdout(&o));

    let o = rankdec(&["bounds", path(&spec)]);
    assert!(stdout(&o).starts_with("≥ 7"), "{}", stdout(&o));
    let o = rankdec(&["bounds", path(&spec), "--max-r", "0"]);
    assert!(stdout(&o).starts_with("≥ 6"), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"b": 8, "t1": 1, "t2": 3, "delta": 6, "ks": [0, 3]}"#).unwrap();
    let o = rankdec(&["bounds", path(&spec), "--pattern", path(&bad)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("not certified"), "{}", stdout(&o));

    fs::write(&bad, "{\"b\": 8}").unwrap();
    assert_eq!(rankdec(&["bounds", path(&spec), "--pattern", path(&bad)]).status.code(), Some(2));
}

#[test]
fn decoding_the_example_reproduces_the_codeword() {
    let dir = tempfile::tempdir().unwrap();
    for route in ["span", "locator"] {
        for solver in ["gabidulin", "linear"] {
            let out = dir.path().join(format!("{route}-{solver}.json"));
            let o = rankdec(&[
                "decode",
                path(&data("code.json")),
                "--pattern",
                path(&data("roos.json")),
                "--input",
                path(&data("received.json")),
                "--path",
                route,
                "--solver",
                solver,
                "--out",
                path(&out),
            ]);
            assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
            let v = read_json(&out);
            assert_eq!(v["status"], "success");
            assert_eq!(v["nu"], 3);
            assert_eq!(v["codeword"], read_json(&data("codeword.json")));
        }
    }
}

#[test]
fn failure_exits_3() {
    let o = rankdec(&[
        "decode",
        path(&data("code.json")),
        "--pattern",
        path(&data("roos_r0.json")),
        "--input",
        path(&data("received.json")),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "KernelDeficient");
    assert_eq!(v["kernel_dim"], 1);
}

#[test]
fn encode_corrupt_decode_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| dir.path().join(n);
    fs::write(d("msg.json"), r#"["a^5", "0", "1", "a^9000"]"#).unwrap();
    let spec = data("code.json");
    let o = rankdec(&["encode", path(&spec), "--msg", path(&d("msg.json")), "--out", path(&d("c.json"))]);
    assert_eq!(o.status.code(), Some(0));

    let corrupt = |rank: &str, seed: &str, y: &str, e: &str| {
        let o = rankdec(&[
            "corrupt", path(&spec), "--input", path(&d("c.json")), "--rank", rank, "--seed", seed,
            "--out", path(&d(y)), "--error-out", path(&d(e)),
        ]);
        assert_eq!(o.status.code(), Some(0));
    };
    corrupt("0", "1", "y0.json", "e0.json");
    assert_eq!(read_json(&d("y0.json")), read_json(&d("c.json")));

    corrupt("3", "7", "y.json", "e.json");
    corrupt("3", "7", "y_again.json", "e_again.json");
    assert_eq!(fs::read(d("y.json")).unwrap(), fs::read(d("y_again.json")).unwrap());
    assert_eq!(fs::read(d("e.json")).unwrap(), fs::read(d("e_again.json")).unwrap());
    assert_ne!(read_json(&d("y.json")), read_json(&d("c.json")));

    let o = rankdec(&[
        "decode", path(&spec), "--pattern", path(&data("roos.json")), "--input", path(&d("y.json")),
        "--path", "locator",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["codeword"], read_json(&d("c.json")));
    assert_eq!(v["error"], read_json(&d("e.json")));
}

#[test]
fn seed_variable_overrides_flag() {
    let run = |seed: &str, env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_rankdec"));
        cmd.args([
            "corrupt", path(&data("code.json")), "--input", path(&data("codeword.json")), "--rank", "2",
            "--seed", seed,
        ]);
        match env {
            Some(v) => cmd.env("RANKDEC_SEED", v),
            None => cmd.env_remove("RANKDEC_SEED"),
        };
        cmd.output().unwrap()
    };
    let plain = run("11", None);
    let overridden = run("5", Some("11"));
    assert_eq!(plain.stdout, overridden.stdout);
    assert_ne!(run("5", None).stdout, plain.stdout);
    assert_eq!(run("5", Some("x")).status.code(), Some(2));
}

#[test]
fn interleaved_and_inspect() {
    let dir = tempfile::tempdir().unwrap();
    let spec = data("code.json");
    let o = rankdec(&[
        "inspect", path(&spec), "--pattern", path(&data("roos.json")), "--input", path(&data("received.json")),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["s"][0][0], "a^3109");
    assert_eq!(v["s_tilde"][0][0], "a^2380");
    assert_eq!(v["span"]["sfsr"], serde_json::json!(["a^14247", "a^6165", "a^1871", "1"]));
    assert_eq!(v["locator"]["length"], 3);

    // Two copies of the received word, decoded as one interleaved word.
    let y = read_json(&data("received.json"));
    let mut both = y.as_array().unwrap().clone();
    both.extend(y.as_array().unwrap().iter().cloned());
    let input = dir.path().join("y2.json");
    fs::write(&input, serde_json::to_string(&both).unwrap()).unwrap();
    let o = rankdec(&[
        "decode", path(&spec), "--pattern", path(&data("roos.json")), "--input", path(&input),
        "--path", "interleaved", "--blocks", "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = read_json(&data("codeword.json"));
    let mut cc = c.as_array().unwrap().clone();
    cc.extend(c.as_array().unwrap().iter().cloned());
    assert_eq!(v["codeword"], Value::Array(cc));

    assert_eq!(rankdec(&["decode", path(&spec)]).status.code(), Some(2));
    assert_eq!(rankdec(&["frobnicate"]).status.code(), Some(2));
}
