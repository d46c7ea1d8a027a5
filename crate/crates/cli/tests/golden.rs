//! Golden-file tests: each case runs the binary and compares standard output byte for byte.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::io::{Read, Write};
use std::net::TcpStream;
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_clustersing"));
    c.current_dir(env!("CARGO_MANIFEST_DIR"));
    c
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn golden(name: &str, args: &[&str], exit: i32) {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, exit, "{name}: {stderr}");
    let path = golden_dir().join(format!("{name}.out"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(stdout, expected, "{name} differs from its golden file");
}

#[test]
fn mutate_goldens() {
    golden("mutate_a2_pentagon", &["mutate", "--type", "A", "--rank", "2", "--sequence", "1,2,1,2,1"], 0);
    golden("mutate_a2_step", &["mutate", "--type", "A", "--rank", "2", "--sequence", "2,1,2", "--format", "md"], 0);
    golden("mutate_quiver", &["mutate", "--input", "tests/fixtures/quiver4.json", "--sequence", "1", "--format", "text"], 0);
    golden("mutate_matrix", &["mutate", "--input", "tests/fixtures/matrix_b3.json", "--sequence", "2,1"], 0);
    golden("mutate_b3_char2", &["mutate", "--type", "B", "--rank", "3", "--sequence", "1,2,3", "--char", "2", "--format", "text"], 0);
}

#[test]
fn mutate_reads_standard_input() {
    let mut child = bin()
        .args(["mutate", "--input", "-", "--sequence", "1", "--format", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"n":2,"arrows":[[1,2,1]]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2 -> 1\n");
}

#[test]
fn exchange_graph_goldens() {
    golden("exchange_graph_a2", &["exchange-graph", "--type", "A", "--rank", "2"], 0);
    golden("exchange_graph_a3_random", &["exchange-graph", "--type", "A", "--rank", "3", "--random-runs", "20", "--format", "md"], 0);
    golden("exchange_graph_budget", &["exchange-graph", "--type", "D", "--rank", "4", "--budget", "10", "--format", "md"], 3);
}

#[test]
fn present_goldens() {
    golden("present_d5_char2", &["present", "--type", "D", "--rank", "5", "--char", "2"], 0);
    golden("present_c4_md", &["present", "--type", "C", "--rank", "4", "--format", "md"], 0);
    golden("present_lower_bound_a3", &["present", "--type", "A", "--rank", "3", "--lower-bound", "--format", "md"], 0);
    golden("present_audit_g2", &["present", "--type", "G2", "--char", "5", "--audit", "--format", "md"], 0);
}

#[test]
fn singular_locus_goldens() {
    golden("singular_locus_g2_char3", &["singular-locus", "--type", "G2", "--char", "3", "--format", "md"], 0);
    golden("singular_locus_c4_char2", &["singular-locus", "--type", "C", "--rank", "4", "--char", "2", "--brute-force", "--format", "md"], 0);
    golden("singular_locus_a7", &["singular-locus", "--type", "A", "--rank", "7"], 0);
}

#[test]
fn verify_theorem_a_golden() {
    golden("verify_theorem_a_a", &["verify-theorem-a", "--types", "A", "--max-rank", "7", "--chars", "0,2", "--format", "md"], 0);
    golden("verify_theorem_a_g2_json", &["verify-theorem-a", "--types", "G2", "--chars", "3"], 0);
}

#[test]
fn verify_theorem_c_golden() {
    golden("verify_theorem_c_st4", &["verify-theorem-c", "--ns", "4", "--format", "md"], 0);
}

#[test]
fn resolve_goldens() {
    golden("resolve_a3", &["resolve", "--type", "A", "--rank", "3", "--format", "text"], 0);
    golden("resolve_g2_char3", &["resolve", "--type", "G2", "--char", "3", "--format", "text"], 0);
    golden("resolve_c4_char2", &["resolve", "--type", "C", "--rank", "4", "--char", "2", "--format", "md"], 0);
}

#[test]
fn continuant_goldens() {
    golden("continuant_build_5", &["continuant", "--n", "5", "--chars", "0,2", "--format", "text"], 0);
    golden("continuant_identities_8", &["continuant", "--identities", "--n", "8", "--chars", "0,2", "--format", "md"], 0);
    golden("continuant_deformation_6", &["continuant", "--deformation", "--n", "6", "--chars", "0,2,3", "--format", "md"], 0);
}

#[test]
fn serve_help_golden() {
    golden("serve_help", &["serve", "--help"], 0);
}

#[test]
fn serve_answers_health_checks() {
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let port = listener.local_addr().unwrap().port();
    drop(listener);
    let mut child = bin().args(["serve"]).env("CLUSTERSING_PORT", port.to_string()).stderr(Stdio::null()).spawn().unwrap();
    let deadline = Instant::now() + Duration::from_secs(20);
    let reply = loop {
        if let Ok(mut s) = TcpStream::connect(("127.0.0.1", port)) {
            s.write_all(b"GET /healthz HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n").unwrap();
            let mut buf = String::new();
            s.read_to_string(&mut buf).unwrap();
            break buf;
        }
        assert!(Instant::now() < deadline, "service did not start");
        std::thread::sleep(Duration::from_millis(50));
    };
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(reply.starts_with("HTTP/1.1 200"), "{reply}");
    assert!(reply.contains("\"status\":\"ok\""));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["present", "--type", "A", "--rank", "3", "--no-such-flag"]).0, 2);
    assert_eq!(run(&["present", "--type", "D", "--rank", "3"]).0, 2);
    assert_eq!(run(&["present", "--type", "A", "--rank", "3", "--char", "4"]).0, 2);
    assert_eq!(run(&["mutate", "--type", "A", "--rank", "2", "--sequence", "3"]).0, 2);
    assert_eq!(run(&["singular-locus", "--type", "A", "--rank", "3", "--brute-force"]).0, 2);
    let (code, stdout, stderr) = run(&["--max-pairs", "1", "singular-locus", "--type", "A", "--rank", "7"]);
    assert_eq!(code, 3);
    assert!(stdout.is_empty());
    assert!(stderr.contains("budget"));
}

#[test]
fn out_flag_and_determinism() {
    let dir = std::env::temp_dir().join(format!("clustersing-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("report.json");
    let args = ["verify-theorem-a", "--types", "B,F4", "--max-rank", "4", "--chars", "0,2,3"];
    let (code, stdout, _) = run(&[&args[..], &["--out", file.to_str().unwrap()]].concat());
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let first = std::fs::read(&file).unwrap();
    assert_eq!(run(&args).1.as_bytes(), &first[..]);
    std::fs::remove_dir_all(dir).unwrap();
}
