//! Bundled example specs.

/// `(name, JSON text)` for every bundled spec.
pub const CORPUS: &[(&str, &str)] = &[
    ("airy", include_str!("../corpus/airy.json")),
    ("conormal_airy", include_str!("../corpus/conormal_airy.json")),
    ("conormal_constant", include_str!("../corpus/conormal_constant.json")),
    ("constant", include_str!("../corpus/constant.json")),
    ("euler", include_str!("../corpus/euler.json")),
    ("free_a1", include_str!("../corpus/free_a1.json")),
    ("graph_x1x2", include_str!("../corpus/graph_x1x2.json")),
    ("graph_x2", include_str!("../corpus/graph_x2.json")),
    ("graph_x3_plus_x", include_str!("../corpus/graph_x3_plus_x.json")),
    ("kummer", include_str!("../corpus/kummer.json")),
    ("kummer_prime_field", include_str!("../corpus/kummer_prime_field.json")),
    ("nilpotent", include_str!("../corpus/nilpotent.json")),
    ("nonholonomic_a2", include_str!("../corpus/nonholonomic_a2.json")),
];

pub fn get(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
