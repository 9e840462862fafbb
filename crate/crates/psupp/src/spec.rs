//! Module spec files (JSON) and their specialization at a prime.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use psupp_core::arith::{Embedding, Field, Scalar};
use psupp_core::expr::parse_operator;
use psupp_core::pgeometry::ConnectionSpec;
use psupp_core::weyl::{ModulePresentation, WeylElement, WeylMatrix, WeylRing};
use serde::{Deserialize, Serialize};

use crate::SpecError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cyclic,
    Presentation,
    Connection,
}

/// A parameter rule: either a bare rule string or a rule with an explicit
/// characteristic-zero value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParameterEntry {
    Rule(String),
    Detailed {
        rule: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        char0: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    /// Largest center presentation (generators) built.
    #[serde(default = "default_center")]
    pub center_generators: usize,
    /// Critical pairs per Gröbner basis computation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gb_pairs: Option<usize>,
    /// Wall-clock limit per prime, in seconds.
    #[serde(default = "default_seconds")]
    pub seconds_per_prime: u64,
}

fn default_center() -> usize {
    psupp_core::pgeometry::DEFAULT_CENTER_LIMIT
}

fn default_seconds() -> u64 {
    30
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { center_generators: default_center(), gb_pairs: None, seconds_per_prime: default_seconds() }
    }
}

/// The file format, field for field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub kind: Kind,
    /// Cyclic: annihilator generators.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    /// Presentation and connection: number of generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Presentation: relation rows.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<String>>,
    /// Connection: one `rank x rank` matrix per direction, rows first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart_denominator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic_model: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, ParameterEntry>,
    pub primes: Vec<u64>,
    #[serde(default = "default_ext")]
    pub extension_degree: u32,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub budgets: Budgets,
}

fn default_ext() -> u32 {
    3
}

fn default_samples() -> usize {
    5
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    Fixed(BigInt, BigInt),
    GeneratorOf(u32),
}

/// Value used in characteristic zero for parameters given by a field generator
/// and no explicit `char0`.
pub const CHAR0_STAND_IN: (i64, i64) = (1, 2);

/// A validated spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub file: ModuleSpecFile,
    rules: BTreeMap<String, (Rule, (BigInt, BigInt))>,
    chart: Option<Vec<u32>>,
}

/// The spec at one prime: working field, parameter values and parsed input.
#[derive(Clone, Debug)]
pub struct Specialized {
    pub p: u64,
    pub field: Field,
    pub parameters: BTreeMap<String, String>,
    pub ring: Arc<WeylRing>,
    pub input: Input,
    /// Char-p model without a chart, used for Weyl-side Hilbert polynomials.
    pub weyl_model: Option<ModulePresentation>,
}

#[derive(Clone, Debug)]
pub enum Input {
    Module(ModulePresentation),
    Connection(ConnectionSpec),
}

fn parse_ratio(s: &str) -> Option<(BigInt, BigInt)> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    let (a, b) = match body.split_once('/') {
        Some((a, b)) => (a.trim().parse::<BigInt>().ok()?, b.trim().parse::<BigInt>().ok()?),
        None => (body.parse().ok()?, BigInt::from(1)),
    };
    if b == BigInt::from(0) {
        return None;
    }
    Some((if neg { -a } else { a }, b))
}

fn parse_rule(name: &str, text: &str) -> Result<Rule, SpecError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(inner) = t.strip_prefix("generator_of(").and_then(|r| r.strip_suffix(')')) {
        let k = match inner {
            "F_p" => Some(1),
            _ => inner
                .strip_prefix("F_{p^")
                .and_then(|r| r.strip_suffix('}'))
                .or_else(|| inner.strip_prefix("F_p^"))
                .and_then(|k| k.parse::<u32>().ok()),
        };
        return match k {
            Some(k) if (1..=8).contains(&k) => Ok(Rule::GeneratorOf(k)),
            _ => Err(SpecError::Invalid(format!("parameter {name}: cannot read field in `{text}`"))),
        };
    }
    parse_ratio(&t)
        .map(|(a, b)| Rule::Fixed(a, b))
        .ok_or_else(|| SpecError::Invalid(format!("parameter {name}: unknown rule `{text}`")))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn operator_error(field: String) -> impl FnOnce(psupp_core::Error) -> SpecError {
    move |source| SpecError::Operator { field, source }
}

impl ModuleSpec {
    pub fn from_file(file: ModuleSpecFile) -> Result<Self, SpecError> {
        if file.n == 0 {
            return Err(SpecError::Invalid("n must be positive".into()));
        }
        if file.primes.is_empty() {
            return Err(SpecError::Invalid("no primes given".into()));
        }
        for (i, &p) in file.primes.iter().enumerate() {
            if !is_prime(p) {
                return Err(SpecError::Invalid(format!("{p} is not prime")));
            }
            if file.primes[..i].contains(&p) {
                return Err(SpecError::Invalid(format!("prime {p} listed twice")));
            }
        }
        if !(1..=6).contains(&file.extension_degree) {
            return Err(SpecError::Invalid("extension_degree must lie in 1..=6".into()));
        }
        let mut rules = BTreeMap::new();
        for (name, entry) in &file.parameters {
            if name.starts_with(['x', 'd']) && name[1..].chars().all(|c| c.is_ascii_digit()) && name.len() > 1 {
                return Err(SpecError::Invalid(format!("parameter name {name} clashes with a variable")));
            }
            let (rule_text, char0) = match entry {
                ParameterEntry::Rule(r) => (r.as_str(), None),
                ParameterEntry::Detailed { rule, char0 } => (rule.as_str(), char0.as_deref()),
            };
            let rule = parse_rule(name, rule_text)?;
            let c0 = match (char0, &rule) {
                (Some(s), _) => {
                    parse_ratio(s).ok_or_else(|| SpecError::Invalid(format!("parameter {name}: bad char0 value")))?
                }
                (None, Rule::Fixed(a, b)) => (a.clone(), b.clone()),
                (None, Rule::GeneratorOf(_)) => (BigInt::from(CHAR0_STAND_IN.0), BigInt::from(CHAR0_STAND_IN.1)),
            };
            rules.insert(name.clone(), (rule, c0));
        }
        let chart = match &file.chart_denominator {
            None => None,
            Some(s) => Some(parse_chart(s, file.n)?),
        };
        match file.kind {
            Kind::Cyclic => {
                if file.rank.is_some() || !file.relations.is_empty() || !file.matrices.is_empty() {
                    return Err(SpecError::Invalid("cyclic specs take `generators` only".into()));
                }
            }
            Kind::Presentation => {
                let r = file.rank.ok_or_else(|| SpecError::Invalid("presentation needs `rank`".into()))?;
                if !file.generators.is_empty() || !file.matrices.is_empty() {
                    return Err(SpecError::Invalid("presentation specs take `rank` and `relations`".into()));
                }
                if let Some(row) = file.relations.iter().find(|row| row.len() != r) {
                    return Err(SpecError::Invalid(format!("relation row of length {} for rank {r}", row.len())));
                }
            }
            Kind::Connection => {
                let r = file.rank.ok_or_else(|| SpecError::Invalid("connection needs `rank`".into()))?;
                if !file.generators.is_empty() || !file.relations.is_empty() {
                    return Err(SpecError::Invalid("connection specs take `rank` and `matrices`".into()));
                }
                if file.matrices.len() != file.n {
                    return Err(SpecError::Invalid(format!("{} matrices for n = {}", file.matrices.len(), file.n)));
                }
                if file.matrices.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
                    return Err(SpecError::Invalid(format!("connection matrices must be {r} x {r}")));
                }
            }
        }
        if chart.is_some() && file.kind != Kind::Connection {
            return Err(SpecError::Invalid("chart_denominator is only supported for connections".into()));
        }
        let spec = ModuleSpec { file, rules, chart };
        // parse everything once in characteristic zero
        let q = Field::rationals();
        let params = spec.char0_parameters(&q)?;
        let ring = spec.ring(&q)?;
        spec.build_input(&ring, &params)?;
        if let Some(model) = &spec.file.cyclic_model {
            spec.build_cyclic(&WeylRing::new(spec.file.n, &q), model, &params, "cyclic_model")?;
        }
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.file.n
    }

    pub fn kind(&self) -> Kind {
        self.file.kind
    }

    pub fn name(&self) -> String {
        self.file.name.clone().unwrap_or_else(|| "module".into())
    }

    pub fn chart(&self) -> Option<&[u32]> {
        self.chart.as_deref()
    }

    /// Canonical JSON of the normalized file (stable across key order and
    /// whitespace in the input).
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&self.file).expect("spec serializes")
    }

    fn ring(&self, field: &Field) -> Result<Arc<WeylRing>, SpecError> {
        match &self.chart {
            None => Ok(WeylRing::new(self.file.n, field)),
            Some(c) => WeylRing::with_chart(self.file.n, field, c.clone()).map_err(SpecError::from),
        }
    }

    fn char0_parameters(&self, q: &Field) -> Result<BTreeMap<String, Scalar>, SpecError> {
        self.rules.iter().map(|(k, (_, (a, b)))| Ok((k.clone(), q.from_ratio(a, b)?))).collect()
    }

    fn parse(
        &self,
        ring: &Arc<WeylRing>,
        text: &str,
        params: &BTreeMap<String, Scalar>,
        field: String,
    ) -> Result<WeylElement, SpecError> {
        parse_operator(text, ring, params).map_err(operator_error(field))
    }

    fn build_cyclic(
        &self,
        ring: &Arc<WeylRing>,
        gens: &[String],
        params: &BTreeMap<String, Scalar>,
        label: &str,
    ) -> Result<ModulePresentation, SpecError> {
        let ops = gens
            .iter()
            .enumerate()
            .map(|(i, g)| self.parse(ring, g, params, format!("{label}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ModulePresentation::cyclic(ring, &ops)?)
    }

    fn build_input(&self, ring: &Arc<WeylRing>, params: &BTreeMap<String, Scalar>) -> Result<Input, SpecError> {
        let f = &self.file;
        match f.kind {
            Kind::Cyclic => Ok(Input::Module(self.build_cyclic(ring, &f.generators, params, "generators")?)),
            Kind::Presentation => {
                let rows = f
                    .relations
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, s)| self.parse(ring, s, params, format!("relations[{i}][{j}]")))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Input::Module(ModulePresentation::new(ring, f.rank.unwrap_or(0), rows)?))
            }
            Kind::Connection => {
                let mut ms = Vec::new();
                for (d, m) in f.matrices.iter().enumerate() {
                    let rows = m
                        .iter()
                        .enumerate()
                        .map(|(i, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(j, s)| self.parse(ring, s, params, format!("matrices[{d}][{i}][{j}]")))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    ms.push(WeylMatrix::from_rows(ring, rows)?);
                }
                Ok(Input::Connection(ConnectionSpec::new(ring, f.rank.unwrap_or(0), ms)?))
            }
        }
    }

    /// The `A_n`-module over `Q` whose Bernstein invariants are reported:
    /// the input itself when no chart is set, else the cyclic model (given or
    /// derived for `d + c dx/x`). `None` when there is none.
    pub fn char0_model(&self) -> Result<Option<ModulePresentation>, SpecError> {
        let q = Field::rationals();
        let params = self.char0_parameters(&q)?;
        self.weyl_model(&q, &params)
    }

    fn weyl_model(
        &self,
        field: &Field,
        params: &BTreeMap<String, Scalar>,
    ) -> Result<Option<ModulePresentation>, SpecError> {
        let plain = WeylRing::new(self.file.n, field);
        if let Some(model) = &self.file.cyclic_model {
            return Ok(Some(self.build_cyclic(&plain, model, params, "cyclic_model")?));
        }
        let ring = self.ring(field)?;
        let input = self.build_input(&ring, params)?;
        match input {
            Input::Module(m) => Ok(Some(m)),
            Input::Connection(c) if self.chart.is_none() => Ok(Some(c.module_presentation())),
            Input::Connection(c) => Ok(kummer_model(&c, &plain)),
        }
    }

    /// Field, parameters and parsed input at `p`.
    pub fn specialize(&self, p: u64) -> Result<Specialized, SpecError> {
        let mut k = 1;
        for (rule, _) in self.rules.values() {
            if let Rule::GeneratorOf(d) = rule {
                k = lcm(k, *d);
            }
        }
        let field = if k == 1 { Field::prime(p)? } else { Field::generate_extension(p, k)? };
        let mut values = BTreeMap::new();
        let mut shown = BTreeMap::new();
        for (name, (rule, _)) in &self.rules {
            let v = match rule {
                Rule::Fixed(a, b) => field.from_ratio(a, b)?,
                Rule::GeneratorOf(d) => {
                    let sub = if *d == 1 { Field::prime(p)? } else { Field::generate_extension(p, *d)? };
                    let g = if *d == 1 { primitive_root(&sub) } else { sub.generator() };
                    Embedding::find(&sub, &field)?.apply(&g)
                }
            };
            shown.insert(name.clone(), format!("{} in {field}", field.format(&v)));
            values.insert(name.clone(), v);
        }
        let ring = self.ring(&field)?;
        let input = self.build_input(&ring, &values)?;
        let weyl_model = self.weyl_model(&field, &values)?;
        Ok(Specialized { p, field, parameters: shown, ring, input, weyl_model })
    }
}

/// Smallest element of multiplicative order `p - 1`.
fn primitive_root(f: &Field) -> Scalar {
    let p = f.characteristic();
    let phi = p - 1;
    let factors: Vec<u64> = (2..=phi).filter(|d| phi.is_multiple_of(*d) && is_prime(*d)).collect();
    (1..p)
        .map(|g| f.from_i64(g as i64))
        .find(|g| factors.iter().all(|q| !f.is_one(&f.pow(g, phi / q))))
        .unwrap_or_else(|| f.one())
}

/// `d + c dx/x` on `x != 0` in one variable is `A_1 / A_1 (x d - c)`.
fn kummer_model(c: &ConnectionSpec, plain: &Arc<WeylRing>) -> Option<ModulePresentation> {
    if c.n() != 1 || c.rank() != 1 {
        return None;
    }
    let a = c.matrix(0).get(0, 0);
    let (key, coeff) = match a.num_terms() {
        0 => return ModulePresentation::cyclic(plain, &[WeylElement::d(plain, 0)]).ok(),
        1 => a.terms().next()?,
        _ => return None,
    };
    if key[0] != -1 || key[1] != 0 {
        return None;
    }
    let op = WeylElement::x(plain, 0).mul(&WeylElement::d(plain, 0)).sub(&WeylElement::constant(plain, coeff.clone()));
    ModulePresentation::cyclic(plain, &[op]).ok()
}

fn parse_chart(s: &str, n: usize) -> Result<Vec<u32>, SpecError> {
    let ring = WeylRing::new(n, &Field::rationals());
    let e = parse_operator(s, &ring, &BTreeMap::new()).map_err(operator_error("chart_denominator".into()))?;
    let bad = || SpecError::Invalid(format!("chart_denominator `{s}` must be a monomial in x"));
    if e.num_terms() != 1 || !e.is_function() {
        return Err(bad());
    }
    let (key, c) = e.terms().next().ok_or_else(bad)?;
    if !ring.field().is_one(c) {
        return Err(bad());
    }
    Ok(key[..n].iter().map(|&a| a as u32).collect())
}

/// Parses and validates a spec document.
pub fn parse_module_spec(text: &str) -> Result<ModuleSpec, SpecError> {
    let file: ModuleSpecFile = serde_json::from_str(text)?;
    ModuleSpec::from_file(file)
}
