use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn geofactor(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geofactor"))
        .args(args)
        .current_dir(dir)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let o = geofactor(
        &[
            "build", "affine", "--n", "3", "--q", "2", "--i", "2", "-o", "f2.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let o = geofactor(&["verify", "f2.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("\"valid\":true"));

    let text = fs::read_to_string(dir.path().join("f2.json")).unwrap();
    let bad = text.replacen("[[0,1,2,3]", "[[0,1,2,9]", 1);
    assert_ne!(bad, text);
    fs::write(dir.path().join("bad.json"), bad).unwrap();
    assert_eq!(
        geofactor(&["verify", "bad.json"], dir.path()).status.code(),
        Some(2)
    );
    fs::write(dir.path().join("junk.json"), "{not json").unwrap();
    assert_eq!(
        geofactor(&["verify", "junk.json"], dir.path())
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        geofactor(&["verify", "missing.json"], dir.path())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn decompose_the_k8_variants() {
    let dir = tempfile::tempdir().unwrap();
    for v in ["m", "gprime"] {
        let name = format!("k8-{v}.json");
        let o = geofactor(&["build", "k8", "--variant", v, "-o", &name], dir.path());
        assert_eq!(o.status.code(), Some(0));
    }
    let o = geofactor(
        &["decompose", "k8-m.json", "--format", "summary"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "indecomposable (exhausted)");
    let o = geofactor(&["decompose", "k8-m.json", "--mu", "2"], dir.path());
    assert!(stdout(&o).contains("\"verdict\":\"indecomposable\""));
    let o = geofactor(
        &["decompose", "k8-gprime.json", "--format", "summary"],
        dir.path(),
    );
    assert!(stdout(&o).starts_with("decomposable (mu=1"));
    let o = geofactor(&["decompose", "k8-m.json", "--max-nodes", "0"], dir.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn spread_and_packing_files_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = geofactor(
        &[
            "search",
            "fold-spread",
            "--n",
            "2",
            "--q",
            "2",
            "--fold",
            "3",
            "-o",
            "fano.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        geofactor(&["verify", "fano.json"], dir.path())
            .status
            .code(),
        Some(0)
    );
    let o = geofactor(
        &[
            "search",
            "fold-spread",
            "--n",
            "2",
            "--q",
            "2",
            "--fold",
            "2",
        ],
        dir.path(),
    );
    assert!(stdout(&o).contains("\"exhausted\":true"));

    let o = geofactor(
        &[
            "search",
            "packing",
            "--n",
            "3",
            "--q",
            "2",
            "-o",
            "packing.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let o = geofactor(
        &["verify", "packing.json", "--format", "summary"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("7 spreads"));

    let text = fs::read_to_string(dir.path().join("fano.json")).unwrap();
    let members: usize = text.matches("]]").count();
    assert!(members >= 7);
    let bad = text.replacen("[[1,0,0],[0,1,0]]", "[[1,0,0],[0,0,1]]", 1);
    fs::write(dir.path().join("bad.json"), bad).unwrap();
    assert_eq!(
        geofactor(&["verify", "bad.json"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["build", "kirkman"],
        vec!["build", "cubic", "--q", "5"],
        vec!["build", "affine", "--n", "2", "--q", "3", "--i", "1"],
        vec!["counts", "subgeo", "--n", "2", "--q", "2", "--k", "2"],
    ] {
        let a = geofactor(&args, dir.path());
        let b = geofactor(&args, dir.path());
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(geofactor(&["build"], dir.path()).status.code(), Some(1));
    assert_eq!(
        geofactor(
            &["build", "subgeo", "--n", "1", "--q", "2", "--k", "2"],
            dir.path()
        )
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        geofactor(
            &["counts", "design", "--kind", "affine", "--n", "2", "--q", "2", "--i", "2"],
            dir.path()
        )
        .status
        .code(),
        Some(1)
    );
}
