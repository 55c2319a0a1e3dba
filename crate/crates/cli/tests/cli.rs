use std::path::PathBuf;
use std::process::{Command, Output};

fn latgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latgen"))
        .args(args)
        .output()
        .expect("run latgen")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("latgen-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn modular_count_table() {
    let o = latgen(&["count", "--family", "modular", "--max-n", "10"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("n, vi, total"));
    assert_eq!(out.lines().last(), Some("10, 28, 157"));
}

#[test]
fn geometric_counts_have_no_totals() {
    let o = latgen(&["count", "--family", "geometric", "--max-n", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("n, count"));
}

#[test]
fn tiny_graded_list() {
    let o = latgen(&["generate", "--family", "graded", "--max-n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "&@?\n&AO\n&BP?\n");
}

#[test]
fn containment_exit_codes() {
    let dir = scratch("contain");
    let modular = dir.join("modular.d6");
    let graded = dir.join("graded.d6.gz");
    for (family, path) in [("modular", &modular), ("graded", &graded)] {
        let o = latgen(&[
            "generate", "--family", family, "--max-n", "8", "--out", path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let m = modular.to_str().unwrap();
    let g = graded.to_str().unwrap();
    assert_eq!(latgen(&["verify", "contain", m, g]).status.code(), Some(0));
    assert_eq!(latgen(&["verify", "contain", g, m]).status.code(), Some(1));
    assert_eq!(latgen(&["verify", "isofree", g]).status.code(), Some(0));
    assert_eq!(latgen(&["verify", "dual", m]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rejects_bad_arguments() {
    for args in [
        &["count", "--family", "modular", "--max-n", "63"][..],
        &["count", "--family", "graded", "--max-n", "8", "--direct-semimodular"],
        &["count", "--family", "nonsense", "--max-n", "8"],
        &["count", "--family", "graded", "--max-n", "8", "--threads", "0"],
        &["oracle", "--family", "graded", "--max-n", "20"],
    ] {
        assert_eq!(latgen(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn digest_ignores_thread_count() {
    let dir = scratch("digest");
    let mut digests = Vec::new();
    for threads in ["1", "4"] {
        let p = dir.join(format!("semimodular-{threads}.d6"));
        let o = latgen(&[
            "generate", "--family", "semimodular", "--max-n", "11", "--threads", threads,
            "--out", p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let d = latgen(&["verify", "digest", p.to_str().unwrap()]);
        digests.push(stdout(&d));
    }
    assert_eq!(digests[0], digests[1]);
    let first = digests[0].split_whitespace().next().unwrap().to_string();
    let p = dir.join("semimodular-1.d6");
    let p = p.to_str().unwrap();
    assert_eq!(latgen(&["verify", "digest", p, "--expect", &first]).status.code(), Some(0));
    assert_eq!(latgen(&["verify", "digest", p, "--expect", "00"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn stats_and_convert() {
    let dir = scratch("stats");
    let list = dir.join("modular.d6");
    let o = latgen(&[
        "generate", "--family", "modular", "--max-n", "6", "--out", list.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let l = list.to_str().unwrap();

    let o = latgen(&["stats", "length", l]);
    let out = stdout(&o);
    assert!(out.starts_with("n,family,mean_length\n1,modular,0.000000\n"), "{out}");
    assert!(out.contains("4,modular,2.500000"));

    let o = latgen(&["stats", "widths", "--n", "4", "--anchor", "bottom", l]);
    let out = stdout(&o);
    assert!(out.starts_with("# n=4, levels aligned from the bottom\nlevel,family,mean_width\n"));
    assert!(out.contains("0,modular,0.500000"));

    let canon = latgen(&["convert", l, "--canonicalize"]);
    assert!(canon.status.success());
    assert_eq!(stdout(&canon), std::fs::read_to_string(&list).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}
