//! Characteristic-zero holonomy followed by one independent run per prime.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use psupp_core::arith::{central_names, Monomial};
use psupp_core::gb::Budget;
use psupp_core::pgeometry::{
    nilpotency_index, p_curvature_matrices, p_support_connection_with, p_support_with, PSupportResult,
};
use psupp_core::verify::{
    bounds_report, generic_rank_estimate, hilbert_scaling_check, ideal_strings, lagrangian_verdict, purity_of_blocks,
    support_components, Purity, SampleOptions, ScalingCheck, VerdictStatus,
};
use psupp_core::weylgb::{holonomy_invariants_with, HolonomyReport};
use psupp_core::Error;
use rayon::prelude::*;

use crate::cache::{sha256_hex, Cache};
use crate::report::*;
use crate::spec::{Input, Kind, ModuleSpec};

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub serial: bool,
    pub cache: Option<Cache>,
}

fn budget(spec: &ModuleSpec) -> Budget {
    let b = &spec.file.budgets;
    let deadline = Instant::now() + Duration::from_secs(b.seconds_per_prime);
    let mut budget = Budget::unlimited().with_cancel(Arc::new(move || Instant::now() > deadline));
    if let Some(n) = b.gb_pairs {
        budget = budget.with_pair_limit(n);
    }
    budget
}

/// Bernstein invariants of the characteristic-zero model, when there is one.
pub fn char0_holonomy(spec: &ModuleSpec) -> (HolonomyRecord, Option<HolonomyReport>) {
    let skipped = |reason: String| HolonomyRecord {
        status: "skipped".into(),
        reason: Some(reason),
        d: None,
        e: None,
        hilbert: None,
        holonomic: None,
    };
    let model = match spec.char0_model() {
        Ok(Some(m)) => m,
        Ok(None) => return (skipped("localized without cyclic_model".into()), None),
        Err(e) => return (skipped(e.to_string()), None),
    };
    match holonomy_invariants_with(&model, &budget(spec)) {
        Ok(h) => (
            HolonomyRecord {
                status: "computed".into(),
                reason: None,
                d: h.d,
                e: Some(h.e),
                hilbert: Some(h.hilbert.format("t")),
                holonomic: Some(h.holonomic),
            },
            Some(h),
        ),
        Err(e) => (skipped(e.to_string()), None),
    }
}

fn purity_string(p: &Purity) -> String {
    match p {
        Purity::PureOfCodim(c) => format!("pure_of_codim_{c}"),
        Purity::Impure(l) => format!("impure(l={l})"),
        Purity::Inconclusive => "inconclusive".into(),
    }
}

fn verdict_string(s: VerdictStatus) -> String {
    match s {
        VerdictStatus::Lagrangian => "lagrangian",
        VerdictStatus::NotLagrangian => "not_lagrangian",
        VerdictStatus::Inconclusive => "inconclusive",
    }
    .into()
}

fn chart_string(m: &Option<Monomial>, n: usize) -> Option<String> {
    let names = central_names(n);
    m.as_ref().map(|m| {
        let parts: Vec<String> = m
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
            .collect();
        parts.join("*")
    })
}

fn support_record(s: &PSupportResult, route: &str) -> SupportRecord {
    SupportRecord {
        route: route.into(),
        generators: s.generator_strings(),
        annihilator: ideal_strings(&s.annihilator, s.n),
        reduced: s.reduced,
        prime: s.prime,
        dim: s.dim,
        degree: s.degree,
        reduced_degree: s.reduced_degree,
        chart: chart_string(&s.chart, s.n),
    }
}

struct Cell {
    rec: PrimeRecord,
    violation: bool,
    inconclusive: bool,
}

impl Cell {
    fn fail(&mut self, e: &Error, stage: &str) {
        self.rec.notes.push(format!("{stage}: {e}"));
        match e {
            Error::Invariant(_) => self.violation = true,
            _ => self.inconclusive = true,
        }
    }
}

/// One prime of the sweep.
pub fn analyze_prime(spec: &ModuleSpec, p: u64, hol: Option<&HolonomyReport>) -> PrimeRecord {
    let mut cell = Cell {
        rec: PrimeRecord {
            p,
            field: String::new(),
            parameters: BTreeMap::new(),
            status: String::new(),
            support: None,
            curvature: None,
            purity: None,
            lagrangian: None,
            bounds: None,
            hilbert_scaling: None,
            notes: Vec::new(),
        },
        violation: false,
        inconclusive: false,
    };
    run_cell(spec, p, hol, &mut cell);
    let holonomic = hol.map(|h| h.holonomic);
    cell.rec.status = if holonomic == Some(false) {
        HYPOTHESIS_NOT_MET
    } else if cell.violation {
        VIOLATION
    } else if cell.inconclusive {
        INCONCLUSIVE
    } else {
        PASS
    }
    .into();
    cell.rec
}

fn run_cell(spec: &ModuleSpec, p: u64, hol: Option<&HolonomyReport>, cell: &mut Cell) {
    let n = spec.n();
    let b = budget(spec);
    let limit = spec.file.budgets.center_generators;
    let sp = match spec.specialize(p) {
        Ok(s) => s,
        Err(e) => {
            cell.rec.notes.push(format!("specialization: {e}"));
            cell.inconclusive = true;
            return;
        }
    };
    cell.rec.field = sp.field.to_string();
    cell.rec.parameters = sp.parameters.clone();

    let support = match &sp.input {
        Input::Module(m) => p_support_with(m, p, limit, &b).map(|s| (s, "cyclic")),
        Input::Connection(c) => {
            match p_curvature_matrices(c, p) {
                Ok(psi) => {
                    cell.rec.curvature = Some(CurvatureRecord {
                        zero: psi.is_zero(),
                        nilpotency_index: nilpotency_index(&psi),
                        matrices: psi
                            .matrices
                            .iter()
                            .map(|m| {
                                (0..m.size()).map(|i| (0..m.size()).map(|j| m.get(i, j).format()).collect()).collect()
                            })
                            .collect(),
                    });
                }
                Err(e) => cell.fail(&e, "p-curvature"),
            }
            p_support_connection_with(c, p, limit, &b).map(|s| (s, "connection"))
        }
    };
    let (s, route) = match support {
        Ok(s) => s,
        Err(e) => return cell.fail(&e, "p-support"),
    };
    cell.rec.support = Some(support_record(&s, route));
    if s.dim != n as i64 {
        cell.violation = true;
    }

    let purity = match purity_of_blocks(&s.blocks, n, s.chart.as_ref()) {
        Ok(pu) => pu,
        Err(e) => {
            cell.fail(&e, "purity");
            Purity::Inconclusive
        }
    };
    cell.rec.purity = Some(purity_string(&purity));
    match purity {
        Purity::Impure(_) => cell.violation = true,
        Purity::Inconclusive => cell.inconclusive = true,
        Purity::PureOfCodim(_) => {}
    }
    let hint = match purity {
        Purity::PureOfCodim(_) => Some(true),
        Purity::Impure(_) => Some(false),
        Purity::Inconclusive => None,
    };

    let opts = SampleOptions {
        count: spec.file.samples,
        seed: spec.file.seed ^ p.rotate_left(17),
        max_extension: spec.file.extension_degree,
        avoid: s.chart.clone(),
        ..Default::default()
    };
    match lagrangian_verdict(&s.ideal, n, hint, &opts) {
        Ok(v) => {
            match v.status {
                VerdictStatus::NotLagrangian => cell.violation = true,
                VerdictStatus::Inconclusive => cell.inconclusive = true,
                VerdictStatus::Lagrangian => {}
            }
            cell.rec.lagrangian = Some(VerdictRecord {
                status: verdict_string(v.status),
                dim: v.dim,
                dim_ok: v.dim_ok,
                equidim_ok: v.equidim_ok,
                isotropy: v.isotropy,
                points_tested: v.points_tested,
                witness: v.witness,
                reasons: v.reasons,
            });
        }
        Err(e) => cell.fail(&e, "lagrangian"),
    }

    let scaling = match &sp.weyl_model {
        None => None,
        Some(m) => match hilbert_scaling_check(m, p, limit, &b) {
            Ok(c) => Some(c),
            Err(e) => {
                cell.fail(&e, "hilbert scaling");
                None
            }
        },
    };
    cell.rec.hilbert_scaling = Some(match &scaling {
        None => ScalingRecord {
            status: "skipped".into(),
            bernstein_scaled: None,
            rees: None,
            reason: Some(if sp.weyl_model.is_none() { "no A_n-model".into() } else { "not computed".into() }),
        },
        Some(ScalingCheck::Equal { rees }) => ScalingRecord {
            status: "equal".into(),
            bernstein_scaled: Some(rees.format("t")),
            rees: Some(rees.format("t")),
            reason: None,
        },
        Some(ScalingCheck::Mismatch { bernstein, rees }) => {
            cell.violation = true;
            ScalingRecord {
                status: "mismatch".into(),
                bernstein_scaled: Some(bernstein.format("t")),
                rees: Some(rees.format("t")),
                reason: None,
            }
        }
    });

    let components = match support_components(&s) {
        Ok(c) => c,
        Err(e) => {
            cell.fail(&e, "components");
            Vec::new()
        }
    };
    if components.is_empty() && s.dim >= 0 {
        cell.rec.notes.push("radical not available: aggregate bounds only".into());
    }
    let mut ranks = Vec::new();
    for c in &components {
        if c.certificate.is_none() {
            cell.rec.notes.push(format!("component ({}) not certified irreducible", c.generators.join(", ")));
        }
        match generic_rank_estimate(&s.blocks, &c.ideal, s.dim.max(0) as usize, &opts) {
            Ok(r) => ranks.push(Some(r)),
            Err(e) => {
                cell.fail(&e, "generic rank");
                ranks.push(None);
            }
        }
    }
    // the Rees multiplicity is only comparable when the module itself was used
    let mu_rees = scaling.as_ref().map(|c| c.rees().multiplicity());
    let e = hol.map(|h| h.e);
    match bounds_report(e, &s, &components, &ranks, mu_rees) {
        Ok(r) => {
            if !r.pass {
                cell.violation = true;
            }
            cell.rec.bounds = Some(BoundsRecord {
                status: if r.skipped {
                    "skipped"
                } else if r.pass {
                    "pass"
                } else {
                    "fail"
                }
                .into(),
                e: r.e,
                components: r
                    .components
                    .into_iter()
                    .map(|c| ComponentRecord {
                        generators: c.generators,
                        degree: c.degree,
                        certified_irreducible: c.certified_irreducible,
                        rank: c.rank,
                        rank_points: c.rank_points,
                        degree_ok: c.degree_ok,
                        divisible: c.divisible,
                        rank_ok: c.rank_ok,
                    })
                    .collect(),
                mu_total: r.aggregate.mu_total,
                mu_rees: r.aggregate.mu_rees,
                sum_rank_degree: r.aggregate.sum_rank_degree,
                aggregate_ok: r.aggregate.ok,
                rees_degree: r.rees_degree,
            });
        }
        Err(e) => cell.fail(&e, "bounds"),
    }
}

fn kind_string(k: Kind) -> String {
    match k {
        Kind::Cyclic => "cyclic",
        Kind::Presentation => "presentation",
        Kind::Connection => "connection",
    }
    .into()
}

/// Holonomy, then every prime (in parallel unless `serial`), then the join.
pub fn run_pipeline(spec: &ModuleSpec, opts: &RunOptions) -> SweepReport {
    let canonical = spec.canonical_json();
    let t0 = Instant::now();
    let (holonomy, hol) = char0_holonomy(spec);
    let mut timings = BTreeMap::new();
    timings.insert("holonomy".to_string(), t0.elapsed().as_millis() as u64);
    let one = |p: u64| -> (PrimeRecord, u64) {
        let t = Instant::now();
        let key = Cache::key(&canonical, p);
        if let Some(rec) = opts.cache.as_ref().and_then(|c| c.load(&key)) {
            return (rec, t.elapsed().as_millis() as u64);
        }
        let rec = analyze_prime(spec, p, hol.as_ref());
        if let Some(c) = &opts.cache {
            // time-limited results may differ between runs
            if rec.status != INCONCLUSIVE {
                let _ = c.store(&key, &rec);
            }
        }
        (rec, t.elapsed().as_millis() as u64)
    };
    let results: Vec<(PrimeRecord, u64)> = if opts.serial {
        spec.file.primes.iter().map(|&p| one(p)).collect()
    } else {
        spec.file.primes.par_iter().map(|&p| one(p)).collect()
    };
    let mut primes = Vec::new();
    for (rec, ms) in results {
        timings.insert(format!("p={}", rec.p), ms);
        primes.push(rec);
    }
    let status = overall_status(&primes).to_string();
    SweepReport {
        tool: "psupp".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        name: spec.name(),
        input_hash: sha256_hex(canonical.as_bytes()),
        n: spec.n(),
        kind: kind_string(spec.kind()),
        holonomy,
        primes,
        status,
        timings_ms: timings,
    }
}
