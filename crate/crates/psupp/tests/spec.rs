use psupp::spec::{Input, Kind};
use psupp::{corpus, parse_module_spec, SpecError};

fn err(text: &str) -> SpecError {
    match parse_module_spec(text) {
        Ok(_) => panic!("accepted: {text}"),
        Err(e) => e,
    }
}

#[test]
fn corpus_parses() {
    for (name, text) in corpus::CORPUS {
        let spec = parse_module_spec(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(&spec.name(), name);
        for &p in &spec.file.primes {
            spec.specialize(p).unwrap_or_else(|e| panic!("{name} at {p}: {e}"));
        }
    }
}

#[test]
fn defaults() {
    let spec =
        parse_module_spec(r#"{"name": "a", "n": 1, "kind": "cyclic", "generators": ["d1"], "primes": [3]}"#).unwrap();
    assert_eq!(spec.file.extension_degree, 3);
    assert_eq!(spec.file.samples, 5);
    assert_eq!(spec.file.budgets.center_generators, 4096);
    assert_eq!(spec.file.budgets.seconds_per_prime, 30);
    assert_eq!(spec.kind(), Kind::Cyclic);
}

#[test]
fn parameter_fields() {
    let spec = parse_module_spec(corpus::get("kummer").unwrap()).unwrap();
    let sp = spec.specialize(3).unwrap();
    assert_eq!(sp.field.to_string(), "F_{3^2}");
    assert!(matches!(sp.input, Input::Connection(_)));
    assert_eq!(sp.parameters.len(), 1);
    assert!(sp.parameters["lambda"].ends_with("in F_{3^2}"), "{:?}", sp.parameters);

    let spec = parse_module_spec(corpus::get("kummer_prime_field").unwrap()).unwrap();
    let sp = spec.specialize(5).unwrap();
    assert_eq!(sp.field.to_string(), "F_5");
    assert_eq!(sp.parameters["lambda"], "2 in F_5");
}

#[test]
fn canonical_json_ignores_layout() {
    let a = parse_module_spec(r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1"],"primes":[3]}"#).unwrap();
    let b = parse_module_spec("{\n  \"primes\": [3],\n  \"generators\": [\"d1\"],\n  \"kind\": \"cyclic\",\n  \"n\": 1,\n  \"name\": \"a\"\n}").unwrap();
    assert_eq!(a.canonical_json(), b.canonical_json());
    let c = parse_module_spec(r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1"],"primes":[5]}"#).unwrap();
    assert_ne!(a.canonical_json(), c.canonical_json());
}

#[test]
fn rejects_malformed_json() {
    assert!(matches!(err("{"), SpecError::Json(_)));
    assert!(matches!(
        err(r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1"],"primes":[3],"colour":1}"#),
        SpecError::Json(_)
    ));
    assert!(matches!(err(r#"{"name":"a","n":1,"kind":"weird","generators":["d1"],"primes":[3]}"#), SpecError::Json(_)));
}

#[test]
fn rejects_bad_values() {
    let cases = [
        (r#"{"name":"a","n":0,"kind":"cyclic","generators":["1"],"primes":[3]}"#, "n must be positive"),
        (r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1"],"primes":[]}"#, "no primes"),
        (r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1"],"primes":[9]}"#, "not prime"),
        (r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1"],"primes":[3,3]}"#, "twice"),
        (
            r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1"],"primes":[3],"extension_degree":9}"#,
            "extension_degree",
        ),
        (r#"{"name":"a","n":1,"kind":"connection","matrices":[[["x1"]]],"primes":[3]}"#, "needs `rank`"),
        (r#"{"name":"a","n":1,"kind":"connection","rank":2,"matrices":[[["x1"]]],"primes":[3]}"#, "2 x 2"),
        (
            r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1"],"chart_denominator":"x1","primes":[3]}"#,
            "only supported for connections",
        ),
        (
            r#"{"name":"a","n":1,"kind":"connection","rank":1,"matrices":[[["x1"]]],"chart_denominator":"x1+1","primes":[3]}"#,
            "monomial",
        ),
        (
            r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1 - x1"],"parameters":{"x1":"2"},"primes":[3]}"#,
            "clashes",
        ),
        (
            r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1 - c"],"parameters":{"c":"frobnicate"},"primes":[3]}"#,
            "unknown rule",
        ),
    ];
    for (text, needle) in cases {
        let e = err(text).to_string();
        assert!(e.contains(needle), "{text}: {e}");
    }
}

#[test]
fn operator_errors_name_the_field() {
    let e = err(r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1 - x2"],"primes":[3]}"#);
    let SpecError::Operator { field, source } = &e else { panic!("{e}") };
    assert_eq!(field, "generators[0]");
    assert!(source.to_string().contains("x2"), "{source}");

    let e = err(r#"{"name":"a","n":1,"kind":"cyclic","generators":["d1", "2x1"],"primes":[3]}"#);
    let SpecError::Operator { field, source } = &e else { panic!("{e}") };
    assert_eq!(field, "generators[1]");
    assert!(source.to_string().contains("1:2"), "{source}");
}

#[test]
fn non_integrable_connection() {
    let e = err(r#"{"name":"a","n":2,"kind":"connection","rank":1,"matrices":[[["x2"]],[["0"]]],"primes":[3]}"#);
    assert!(e.to_string().contains("integrable"), "{e}");
}
