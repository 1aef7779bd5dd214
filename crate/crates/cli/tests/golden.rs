//! Runs the documented CLI examples and compares against stored output.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_homog"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(name: &str, args: &[&str], code: i32) {
    let (got_code, stdout, stderr) = run(args);
    assert_eq!(got_code, code, "{args:?}\nstdout:\n{stdout}\nstderr:\n{stderr}");
    let (again_code, again, _) = run(args);
    assert_eq!((again_code, &again), (got_code, &stdout), "output is not deterministic");
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &stdout).unwrap();
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(stdout, want, "{name} differs from {}", path.display());
}

#[test]
fn factor_one_plus_w() {
    golden("factor_one_plus_w", &["factor", "--domain", "domains/zsqrtm5.json", "--star", "d", "--element", "1+1*w"], 0);
}

#[test]
fn factor_six() {
    golden("factor_six", &["factor", "--domain", "domains/zsqrtm5.json", "--star", "d", "--element", "6"], 0);
}

#[test]
fn classify_two() {
    golden("classify_two", &["classify", "--domain", "domains/zsqrtm5.json", "--star", "d", "--element", "2"], 0);
}

#[test]
fn classify_monoid() {
    golden("classify_monoid", &["classify", "--domain", "domains/km_z2.json", "--ideal", "{p:2}"], 0);
}

#[test]
fn gcd_six() {
    golden("gcd_six", &["gcd", "--domain", "domains/zsqrtm5.json", "--element", "6", "--element", "2+2*w"], 0);
}

#[test]
fn domain_report_zm5() {
    golden(
        "domain_report_zm5",
        &["domain-report", "--domain", "domains/zsqrtm5.json", "--element", "6", "--element", "1+1*w"],
        0,
    );
}

#[test]
fn verify_monoid() {
    golden("verify_monoid", &["verify", "--domain", "domains/km_z2.json", "--seed", "7", "--trials", "500"], 0);
}

#[test]
fn verify_negative_control_fails() {
    let (code, stdout, _) = run(&[
        "verify",
        "--domain",
        "domains/zsqrtm5.json",
        "--trials",
        "10",
        "--check",
        "regroup-unique",
        "--mutation",
        "skip-merge-in-regroup",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAILED"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    for args in [
        &["factor", "--domain", "domains/zsqrtm5.json"][..],
        &["factor", "--domain", "domains/zsqrtm5.json", "--element", "1"],
        &["factor", "--domain", "domains/zsqrtm5.json", "--element", "1+"],
        &["factor", "--domain", "missing.json", "--element", "2"],
        &["classify", "--domain", "domains/zsqrtm5.json", "--star", "x", "--element", "2"],
        &["gcd", "--domain", "domains/zsqrtm5.json", "--element", "2"],
        &["verify", "--domain", "domains/zsqrtm5.json", "--trials", "0"],
    ] {
        let (code, _, stderr) = run(args);
        assert_eq!(code, 2, "{args:?}: {stderr}");
        assert!(!stderr.is_empty());
    }
}

#[test]
fn out_file_holds_json() {
    let dir = std::env::temp_dir().join(format!("homog-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("factor.json");
    let (code, _, _) = run(&[
        "factor",
        "--domain",
        "domains/zsqrtm5.json",
        "--star",
        "d",
        "--element",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let names: Vec<&str> = v["factors"].as_array().unwrap().iter().map(|f| f["ideal"].as_str().unwrap()).collect();
    assert_eq!(names, ["hnf(2,0,2)", "hnf(3,1,1)", "hnf(3,2,1)"]);
    assert_eq!(v["product_matches_input"], true);
    fs::remove_dir_all(&dir).unwrap();
}

/// Split a documented command line, honoring double quotes.
fn split_words(line: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut any = false;
    for ch in line.chars() {
        match ch {
            '"' => {
                quoted = !quoted;
                any = true;
            }
            c if c.is_whitespace() && !quoted => {
                if any {
                    words.push(std::mem::take(&mut cur));
                    any = false;
                }
            }
            c => {
                cur.push(c);
                any = true;
            }
        }
    }
    if any {
        words.push(cur);
    }
    words
}

#[test]
fn readme_examples_match_goldens() {
    let readme = fs::read_to_string(root().join("README.md")).unwrap();
    let goldens: Vec<String> = fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden"))
        .unwrap()
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    // (language, body) of every fenced block
    let mut fences: Vec<(String, String)> = Vec::new();
    let mut open: Option<(String, String)> = None;
    for line in readme.lines() {
        if let Some(lang) = line.trim_end().strip_prefix("```") {
            match open.take() {
                Some(block) => fences.push(block),
                None => open = Some((lang.to_string(), String::new())),
            }
        } else if let Some((_, body)) = open.as_mut() {
            body.push_str(line);
            body.push('\n');
        }
    }
    let commands: Vec<&str> = fences
        .iter()
        .filter(|(lang, _)| lang == "sh")
        .flat_map(|(_, body)| body.lines())
        .filter(|l| l.starts_with("homog "))
        .collect();
    let blocks: Vec<&String> = fences.iter().filter(|(lang, _)| lang.is_empty()).map(|(_, b)| b).collect();
    assert!(commands.len() >= 7, "found {} commands", commands.len());
    for cmd in &commands {
        let words = split_words(cmd);
        let args: Vec<&str> = words[1..].iter().map(String::as_str).collect();
        let (code, stdout, stderr) = run(&args);
        assert_eq!(code, 0, "{cmd}: {stderr}");
        assert!(goldens.contains(&stdout), "{cmd}: output has no golden file");
    }
    // shown outputs are verbatim goldens
    for b in blocks.iter().filter(|b| b.starts_with("domain: ")) {
        assert!(goldens.contains(b), "README output block is stale:\n{b}");
    }
}
