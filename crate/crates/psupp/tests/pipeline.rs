use std::path::PathBuf;

use psupp::{corpus, parse_module_spec, run_pipeline, Cache, ModuleSpec, RunOptions};

fn spec(name: &str) -> ModuleSpec {
    parse_module_spec(corpus::get(name).unwrap()).unwrap()
}

fn serial() -> RunOptions {
    RunOptions { serial: true, cache: None }
}

#[test]
fn serial_and_parallel_agree() {
    for name in ["graph_x2", "kummer", "conormal_airy", "nilpotent"] {
        let s = spec(name);
        let a = run_pipeline(&s, &serial()).stable().to_json();
        let b = run_pipeline(&s, &RunOptions::default()).stable().to_json();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let s = spec("euler");
    let a = run_pipeline(&s, &RunOptions::default()).stable().to_json();
    let b = run_pipeline(&s, &RunOptions::default()).stable().to_json();
    assert_eq!(a, b);
    // primes keep the order of the spec
    let r = run_pipeline(&s, &serial());
    let ps: Vec<u64> = r.primes.iter().map(|x| x.p).collect();
    assert_eq!(ps, s.file.primes);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path().join("nested")).unwrap();
    let opts = RunOptions { serial: false, cache: Some(cache.clone()) };
    let s = spec("airy");
    let fresh = run_pipeline(&s, &opts).stable().to_json();
    let files = std::fs::read_dir(cache.dir()).unwrap().count();
    assert_eq!(files, s.file.primes.len());
    let cached = run_pipeline(&s, &opts).stable().to_json();
    assert_eq!(fresh, cached);
    assert_eq!(fresh, run_pipeline(&s, &serial()).stable().to_json());
}

#[test]
fn corrupt_cache_entries_are_misses() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let opts = RunOptions { serial: true, cache: Some(cache.clone()) };
    let s = spec("constant");
    let fresh = run_pipeline(&s, &opts).stable().to_json();
    for entry in std::fs::read_dir(cache.dir()).unwrap() {
        std::fs::write(entry.unwrap().path(), b"{ not json").unwrap();
    }
    assert_eq!(run_pipeline(&s, &opts).stable().to_json(), fresh);
    // and the entries were rewritten
    for entry in std::fs::read_dir(cache.dir()).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        assert!(serde_json::from_str::<serde_json::Value>(&text).is_ok());
    }
}

#[test]
fn cache_keys_follow_the_spec() {
    let a = spec("graph_x2");
    let mut file = a.file.clone();
    file.seed ^= 1;
    let b = ModuleSpec::from_file(file).unwrap();
    assert_ne!(Cache::key(&a.canonical_json(), 3), Cache::key(&b.canonical_json(), 3));
    assert_ne!(Cache::key(&a.canonical_json(), 3), Cache::key(&a.canonical_json(), 5));
    assert_eq!(Cache::key(&a.canonical_json(), 3), Cache::key(&spec("graph_x2").canonical_json(), 3));
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Set `PSUPP_UPDATE_GOLDEN=1` to rewrite the files after an intended change.
#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("PSUPP_UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, text) in corpus::CORPUS {
        let s = parse_module_spec(text).unwrap();
        let json = run_pipeline(&s, &RunOptions::default()).stable().to_json() + "\n";
        let path = golden_dir().join(format!("{name}.json"));
        if update {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &json).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != json {
            mismatches.push(*name);
        }
    }
    assert!(mismatches.is_empty(), "reports differ from golden files: {mismatches:?}");
}
