use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use clap::Parser;
use nearoct_cli::{run, Cli, CliError, Command, Target, MANIFEST_FILE};

const GENERATORS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/g2_4_2_deg416.gens");
const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../golden");

fn cli(cache: &Path, args: &[&str]) -> Cli {
    let mut full = vec![
        "nearoct".to_string(),
        "--generators".into(),
        GENERATORS.into(),
        "--cache-dir".into(),
        cache.display().to_string(),
    ];
    full.extend(args.iter().map(|a| a.to_string()));
    Cli::try_parse_from(full).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(GOLDEN).join(name)).unwrap()
}

fn section<'a>(report: &'a str, name: &str) -> &'a str {
    let start = report.find(&format!("\n[{name}]\n")).unwrap() + name.len() + 4;
    let rest = &report[start..];
    &rest[..rest.find("\n[").unwrap_or(rest.len())]
}

fn manifest_body(dir: &Path) -> String {
    fs::read_to_string(dir.join(MANIFEST_FILE))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with("time "))
        .map(|l| format!("{l}\n"))
        .collect()
}

#[test]
fn flags_parse() {
    let c = Cli::try_parse_from(["nearoct", "verify", "tower", "--seed", "3", "--threads", "2"]).unwrap();
    assert!(matches!(c.command, Command::Verify { target: Target::Tower }));
    assert_eq!((c.seed, c.threads), (3, 2));
    assert!(Cli::try_parse_from(["nearoct", "verify", "everything"]).is_err());
    assert!(Cli::try_parse_from(["nearoct", "export", "suzuki-graph", "out.txt"]).is_ok());
    assert!(Cli::try_parse_from(["nearoct", "export", "u3-3-graph", "out.txt"]).is_ok());
}

#[test]
fn environment_overrides_defaults() {
    let bin = env!("CARGO_BIN_EXE_nearoct");
    let dir = tempfile::tempdir().unwrap();
    let out = Process::new(bin)
        .args(["export", "octagon"])
        .arg(dir.path().join("x.txt"))
        .env("NEAROCT_CACHE_DIR", dir.path().join("env-cache"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(dir.path().join("env-cache").is_dir());
}

#[test]
fn corrupt_generators_exit_2_naming_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("bad.gens");
    fs::write(&gens, "degree 4\n(1,2)(3,4)\n(1,2,x)\n").unwrap();
    let out = Process::new(env!("CARGO_BIN_EXE_nearoct"))
        .arg("--generators")
        .arg(&gens)
        .arg("--cache-dir")
        .arg(dir.path().join("cache"))
        .arg("build")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn missing_generator_file_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = cli(dir.path(), &["build"]);
    c.generators = dir.path().join("absent.gens");
    let e = run(&c).err().unwrap();
    assert!(matches!(e, CliError::Io { .. }));
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn export_without_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("suzuki.txt");
    let e = run(&cli(dir.path(), &["export", "suzuki-graph", out.to_str().unwrap()])).err().unwrap();
    assert!(matches!(e, CliError::MissingCache(_)));
    assert_eq!(e.exit_code(), 2);
}

/// Build, rebuild, verify everything, reload, export: the whole workflow on
/// the vendored generators.
#[test]
fn end_to_end() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();

    let built = run(&cli(a.path(), &["build"])).unwrap();
    assert!(built.summary.contains("points=4095 lines=15015 spread=1365 quads=1365"));
    let cold = manifest_body(a.path());
    run(&cli(a.path(), &["build"])).unwrap();
    assert_eq!(manifest_body(a.path()), cold, "warm rebuild changed the manifest");
    run(&cli(b.path(), &["build"])).unwrap();
    assert_eq!(manifest_body(b.path()), cold, "two clean runs differ");

    let all = run(&cli(a.path(), &["verify", "all"])).unwrap();
    assert_eq!(all.suites.len(), 7);
    assert!(all.suites.iter().all(|s| s.passed()));
    let tower = fs::read_to_string(a.path().join("reports/tower.txt")).unwrap();
    assert_eq!(section(&tower, "parameters"), golden("tower.txt"));
    let vals = fs::read_to_string(a.path().join("reports/valuations.txt")).unwrap();
    assert_eq!(section(&vals, "table1"), golden("table1.txt"));
    assert_eq!(section(&vals, "table2"), golden("table2.txt"));

    // loaded caches give the same reports as a fresh build
    run(&cli(a.path(), &["verify", "valuations"])).unwrap();
    assert_eq!(fs::read_to_string(a.path().join("reports/valuations.txt")).unwrap(), vals);
    let hex_loaded = fs::read_to_string(a.path().join("reports/hexagon.txt")).unwrap();
    let c = tempfile::tempdir().unwrap();
    run(&cli(c.path(), &["verify", "hexagon"])).unwrap();
    assert_eq!(fs::read_to_string(c.path().join("reports/hexagon.txt")).unwrap(), hex_loaded);

    let out: PathBuf = a.path().join("octagon-export.txt");
    run(&cli(a.path(), &["export", "octagon", out.to_str().unwrap()])).unwrap();
    let text = fs::read_to_string(&out).unwrap();
    let geom = nearoct::incidence::Geometry::from_text(&text).unwrap();
    assert_eq!(geom.n_lines(), 15015);
    run(&cli(a.path(), &["export", "suzuki-graph", out.to_str().unwrap()])).unwrap();
    let g = nearoct::incidence::Graph::from_text(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(g.n(), 1782);
    let e = run(&cli(a.path(), &["export", "octagon", a.path().join("no/such/dir/x.txt").to_str().unwrap()]))
        .err()
        .unwrap();
    assert!(matches!(e, CliError::Io { .. }));

    // a tampered cache is refused
    let quads = b.path().join("quads.txt");
    let mut tampered = fs::read_to_string(&quads).unwrap();
    tampered.push_str("0 1 2\n");
    fs::write(&quads, tampered).unwrap();
    let e = run(&cli(b.path(), &["verify", "quads"])).err().unwrap();
    assert!(matches!(e, CliError::CorruptCache(_)));
}
