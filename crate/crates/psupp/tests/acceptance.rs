//! One PASS/FAIL line per acceptance criterion. Expected values come from
//! closed forms computed here, not from the library's own formulas.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

use psupp::report::{PrimeRecord, SweepReport};
use psupp::spec::Input;
use psupp::{corpus, parse_module_spec, run_pipeline, RunOptions};
use psupp_core::arith::{Field, Monomial, MonomialOrder, Polynomial, Scalar};
use psupp_core::gb::{hilbert_polynomial, GroebnerBasis, TermOrder};
use psupp_core::pgeometry::{
    nilpotency_index, p_curvature_matrices, p_curvature_rank1, p_support, p_support_connection, ConnectionSpec,
    OneForm, PSupportResult,
};
use psupp_core::verify::rank;
use psupp_core::weyl::{Exp, WeylElement, WeylMatrix, WeylRing};
use psupp_core::weylgb::weyl_groebner_module;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose wording cannot be met as written; see the notes printed with them.
const KNOWN_DEVIATIONS: &[u32] = &[3];

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    details: Vec<String>,
}

fn outcome(id: u32, title: &'static str, details: Vec<String>, failures: usize) -> Outcome {
    Outcome { id, title, pass: failures == 0, details }
}

fn central(f: &Field, n: usize, y: &[u32], x: &[u32], c: Scalar) -> Polynomial {
    let mut e = y.to_vec();
    e.extend_from_slice(x);
    assert_eq!(e.len(), 2 * n);
    Polynomial::monomial(f, Monomial::from_slice(&e), c)
}

/// Ideal equality by reducing each generator set modulo a basis of the other.
fn mutual_nf(s: &GroebnerBasis, gens: &[Polynomial]) -> bool {
    let other = GroebnerBasis::ideal(s.ring(), MonomialOrder::DegRevLex, gens).unwrap();
    gens.iter().all(|g| s.reduce_poly(g).is_zero()) && s.polynomials().iter().all(|g| other.reduce_poly(g).is_zero())
}

fn fmt(s: &PSupportResult) -> String {
    format!("({})", s.generator_strings().join(", "))
}

// 1. Graphs of dg: Y_i = (d_i g)^p with the coefficients of d_i g raised to p.
fn graphs() -> Outcome {
    let t0 = Instant::now();
    let mut details = Vec::new();
    let mut failures = 0;
    // g as (exponents, coefficient), n
    let cases: [(&str, usize, Vec<(Vec<i32>, i64)>); 3] = [
        ("x^2", 1, vec![(vec![2], 1)]),
        ("x^3 + x", 1, vec![(vec![3], 1), (vec![1], 1)]),
        ("x1*x2", 2, vec![(vec![1, 1], 1)]),
    ];
    for (name, n, g) in &cases {
        for p in [2u64, 3, 5, 7] {
            let field = Field::prime(p).unwrap();
            let ring = WeylRing::new(*n, &field);
            let gel = WeylElement::from_terms(
                &ring,
                g.iter().map(|(e, c)| {
                    let mut k = e.clone();
                    k.extend(std::iter::repeat_n(0, *n));
                    (Exp::from_slice(&k), field.from_i64(*c))
                }),
            );
            let s = p_support_connection(&ConnectionSpec::exact(&ring, &gel).unwrap(), p).unwrap();
            let mut expected = Vec::new();
            for i in 0..*n {
                let mut yi = vec![0u32; *n];
                yi[i] = 1;
                let mut graph = central(&field, *n, &yi, &vec![0; *n], field.one());
                // d_i (c x^e) = c e_i x^{e - 1_i}, then raise the coefficient to p
                for (e, c) in g {
                    if e[i] == 0 {
                        continue;
                    }
                    let coeff = field.from_i64(c * e[i] as i64);
                    let mut x: Vec<u32> = e.iter().map(|&v| v as u32).collect();
                    x[i] -= 1;
                    graph = graph.sub(&central(&field, *n, &vec![0; *n], &x, field.pow(&coeff, p)));
                }
                expected.push(graph);
            }
            let ok = mutual_nf(&s.ideal, &expected);
            if !ok {
                failures += 1;
                details.push(format!("g = {name}, p = {p}: got {}", fmt(&s)));
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    if secs >= 10.0 {
        failures += 1;
    }
    details.insert(0, format!("12 cells, {secs:.2} s"));
    outcome(1, "graphs of dg equal the twisted graph ideals", details, failures)
}

fn kummer_support(field: &Field, lambda: &Scalar) -> PSupportResult {
    let p = field.characteristic();
    let ring = WeylRing::with_chart(1, field, vec![1]).unwrap();
    let a = WeylElement::x_pow(&ring, 0, -1).unwrap().scale(lambda);
    p_support_connection(&ConnectionSpec::rank1(&ring, &[a]).unwrap(), p).unwrap()
}

// 2. Kummer: XY = lambda^p - lambda on the chart x != 0.
fn kummer() -> Outcome {
    let mut details = Vec::new();
    let mut failures = 0;
    for p in [3u64, 5] {
        let field = Field::generate_extension(p, 2).unwrap();
        let lambda = field.generator();
        let c = field.sub(&field.pow(&lambda, p), &lambda);
        let s = kummer_support(&field, &lambda);
        let xy = central(&field, 1, &[1], &[1], field.one());
        let expected = xy.sub(&Polynomial::constant(&field, 2, c.clone()));
        let ok = !field.is_zero(&c) && mutual_nf(&s.ideal, &[expected]);
        failures += usize::from(!ok);
        details.push(format!("p = {p}, lambda = t in {field}: {} (lambda^p - lambda = {})", fmt(&s), field.format(&c)));

        let fp = Field::prime(p).unwrap();
        for l in 1..p as i64 {
            let s = kummer_support(&fp, &fp.from_i64(l));
            let y = central(&fp, 1, &[1], &[0], fp.one());
            if !mutual_nf(&s.ideal, &[y]) {
                failures += 1;
                details.push(format!("p = {p}, lambda = {l}: {}", fmt(&s)));
            }
        }
        details.push(format!("p = {p}, lambda in F_{p}^*: V(Y1)"));
    }
    outcome(2, "Kummer supports XY = lambda^p - lambda, V(Y) for lambda in F_p", details, failures)
}

// 3. Nilpotent curvature of [[0, x^3], [0, 0]].
fn nilpotent() -> Outcome {
    let mut details = Vec::new();
    let mut failures = 0;
    for p in [2u64, 5] {
        let field = Field::prime(p).unwrap();
        let ring = WeylRing::new(1, &field);
        let h = WeylElement::x(&ring, 0).pow(3);
        let z = WeylElement::zero(&ring);
        let m = WeylMatrix::from_rows(&ring, vec![vec![z.clone(), h], vec![z.clone(), z]]).unwrap();
        let conn = ConnectionSpec::new(&ring, 2, vec![m]).unwrap();
        let idx = nilpotency_index(&p_curvature_matrices(&conn, p).unwrap());
        let s = p_support_connection(&conn, p).unwrap();
        let y = central(&field, 1, &[1], &[0], field.one());
        let zero_section = s.reduced && mutual_nf(&s.ideal, &[y]);
        // h' = 3x^2; d^{p-1} x^3 has coefficient 3 * 2 * ... * (3 - p + 2)
        let h_prime_zero = 3 % p == 0;
        let dpm1_zero = (0..p - 1).any(|j| (3 - j as i64).rem_euclid(p as i64) == 0);
        let as_written = if h_prime_zero { 1 } else { 2 };
        let from_curvature = if dpm1_zero { 1 } else { 2 };
        let ok = zero_section && idx == Some(as_written);
        failures += usize::from(!ok);
        details.push(format!(
            "p = {p}: index {}, support {} (reduced {}); expected {as_written} by the h' rule, {from_curvature} from psi = (d^{}h) E12",
            idx.map_or("-".into(), |k| k.to_string()),
            fmt(&s),
            s.reduced,
            p - 1
        ));
    }
    details.push("at p = 5, h' = 3x^2 is nonzero but d^4(x^3) = 0, so psi = 0 and the index is 1".into());
    outcome(3, "nilpotent curvature: index and zero-section support", details, failures)
}

fn corpus_reports(names: &[&str]) -> Vec<SweepReport> {
    names
        .iter()
        .map(|n| {
            let spec = parse_module_spec(corpus::get(n).unwrap()).unwrap();
            run_pipeline(&spec, &RunOptions::default())
        })
        .collect()
}

const THEOREM_CORPUS: &[&str] =
    &["graph_x2", "graph_x3_plus_x", "graph_x1x2", "kummer", "airy", "conormal_constant", "conormal_airy"];

// 4. dim = n, pure of codim n, Lagrangian with >= 3 points.
fn lagrangian(reports: &[SweepReport]) -> Outcome {
    let mut details = Vec::new();
    let (mut failures, mut inconclusive, mut total, mut violations) = (0, 0, 0, 0);
    for r in reports {
        for rec in &r.primes {
            total += 1;
            match rec.status.as_str() {
                "inconclusive" => {
                    inconclusive += 1;
                    continue;
                }
                "violation" => violations += 1,
                _ => {}
            }
            let n = r.n as i64;
            let dim_ok = rec.support.as_ref().is_some_and(|s| s.dim == n);
            let pure_ok = rec.purity.as_deref() == Some(format!("pure_of_codim_{n}").as_str());
            let v_ok = rec.lagrangian.as_ref().is_some_and(|v| v.status == "lagrangian" && v.points_tested >= 3);
            if !(dim_ok && pure_ok && v_ok) {
                failures += 1;
                details.push(format!("{} p = {}: dim {dim_ok}, purity {pure_ok}, verdict {v_ok}", r.name, rec.p));
            }
        }
    }
    if violations > 0 || inconclusive * 10 >= total.max(1) {
        failures += 1;
    }
    details.insert(0, format!("{total} records, {violations} violations, {inconclusive} inconclusive"));
    outcome(4, "corpus supports are Lagrangian and pure", details, failures)
}

// 5. Degree and rank bounds, compared here from the raw numbers.
fn bounds(reports: &[SweepReport]) -> Outcome {
    let mut details = Vec::new();
    let mut failures = 0;
    let mut checked = 0;
    for r in reports {
        let e = r.holonomy.e.unwrap_or(0);
        for rec in &r.primes {
            let pn = rec.p.pow(r.n as u32);
            let Some(b) = &rec.bounds else {
                failures += 1;
                details.push(format!("{} p = {}: no bounds record", r.name, rec.p));
                continue;
            };
            let mut sum = 0;
            let mut ok = !b.components.is_empty();
            for c in &b.components {
                match c.rank {
                    Some(k) => {
                        ok &= c.degree <= e && k % pn == 0 && k <= e * pn;
                        sum += k * c.degree;
                    }
                    None => ok = false,
                }
            }
            ok &= sum <= e * pn;
            checked += 1;
            if !ok {
                failures += 1;
                details.push(format!("{} p = {}: components {:?}", r.name, rec.p, b.components));
            }
        }
        if let Some(rec) = r.primes.iter().find(|x| x.p == 5) {
            let c = rec.bounds.as_ref().and_then(|b| b.components.first());
            details.push(format!(
                "{} at p = 5: deg {} <= e = {e}, rank {} | 5^{}",
                r.name,
                c.map_or(0, |c| c.degree),
                c.and_then(|c| c.rank).unwrap_or(0),
                r.n
            ));
        }
    }
    details.insert(0, format!("{checked} records"));
    outcome(5, "degree, rank and aggregate bounds", details, failures)
}

// 6. Bernstein Hilbert polynomial scaled by p equals the Rees one.
fn scaling(reports: &[SweepReport]) -> Outcome {
    let mut details = Vec::new();
    let mut failures = 0;
    for r in reports {
        for rec in r.primes.iter().filter(|x| [2, 3, 5].contains(&x.p)) {
            let s = rec.hilbert_scaling.as_ref();
            let ok = s.is_some_and(|s| s.status == "equal" && s.rees == s.bernstein_scaled);
            failures += usize::from(!ok);
            details.push(format!(
                "{} p = {}: {}",
                r.name,
                rec.p,
                s.map_or("missing".into(), |s| format!("{} ({})", s.status, s.rees.clone().unwrap_or_default()))
            ));
        }
    }
    outcome(6, "Hilbert scaling on d, x d - lambda, Airy", details, failures)
}

// 7. Non-holonomic inputs are flagged, not certified.
fn negative_controls() -> Outcome {
    let mut details = Vec::new();
    let mut failures = 0;
    for (name, dim) in [("free_a1", 2), ("nonholonomic_a2", 3)] {
        let r = &corpus_reports(&[name])[0];
        let rec: &PrimeRecord = &r.primes[0];
        let ok = r.holonomy.holonomic == Some(false)
            && rec.support.as_ref().is_some_and(|s| s.dim == dim)
            && rec.lagrangian.as_ref().is_some_and(|v| v.status == "not_lagrangian")
            && rec.status == "hypothesis_not_met";
        failures += usize::from(!ok);
        details.push(format!(
            "{name}: holonomic {}, dim {}, verdict {}, status {}",
            r.holonomy.holonomic.map_or("-".into(), |h| h.to_string()),
            rec.support.as_ref().map_or(-1, |s| s.dim),
            rec.lagrangian.as_ref().map_or("-", |v| v.status.as_str()),
            rec.status
        ));
    }
    outcome(7, "negative controls", details, failures)
}

fn random_weyl(ring: &Arc<WeylRing>, rng: &mut ChaCha8Rng) -> WeylElement {
    let f = ring.field();
    let n = ring.n();
    let terms = (rng.next_u32() % 5) as usize;
    WeylElement::from_terms(
        ring,
        (0..terms).map(|_| {
            let mut k: Exp = Exp::from_elem(0, 2 * n);
            let mut budget = 6;
            for slot in k.iter_mut() {
                let e = (rng.next_u32() % 4).min(budget);
                *slot = e as i32;
                budget -= e;
            }
            (k, f.from_i64((rng.next_u32() % 9) as i64 - 4))
        }),
    )
}

fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for e in 0..=deg {
        for mut rest in monomials_up_to(nvars - 1, deg - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// `dim F[z]_{<=l} / I_{<=l}` from multiples of a degree-compatible basis.
fn count_standard(gb: &GroebnerBasis, l: u32) -> usize {
    let nv = gb.ring().nvars;
    let field = &gb.ring().field;
    let monos = monomials_up_to(nv, l);
    let index: HashMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gb.polynomials() {
        let d = g.total_degree().unwrap() as u32;
        if d > l {
            continue;
        }
        for m in monomials_up_to(nv, l - d) {
            let mut row = vec![field.zero(); monos.len()];
            for (gm, c) in g.terms() {
                let e: Vec<u32> = gm.exps().iter().zip(&m).map(|(a, b)| a + b).collect();
                row[index[&e]] = c.clone();
            }
            rows.push(row);
        }
    }
    monos.len() - rank(field, &rows)
}

fn laurent_random(field: &Field, rng: &mut ChaCha8Rng, lo: i32, hi: i32) -> BTreeMap<i32, Scalar> {
    let mut out = BTreeMap::new();
    for _ in 0..1 + rng.next_u32() % 3 {
        let e = lo + (rng.next_u32() % (hi - lo + 1) as u32) as i32;
        let c = field.from_i64((rng.next_u32() % 9) as i64 - 4);
        if !field.is_zero(&c) {
            out.insert(e, c);
        }
    }
    out
}

// 8. Engine property suites at fixed seeds.
fn property_suites() -> Outcome {
    let mut details = Vec::new();
    let mut failures = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    for field in [Field::rationals(), Field::prime(5).unwrap()] {
        let ring = WeylRing::new(2, &field);
        let mut bad = 0;
        for _ in 0..100 {
            let (a, b, c) = (random_weyl(&ring, &mut rng), random_weyl(&ring, &mut rng), random_weyl(&ring, &mut rng));
            bad += usize::from(a.mul(&b).mul(&c) != a.mul(&b.mul(&c)));
            bad += usize::from(a.adjoint().adjoint() != a);
            bad += usize::from(a.mul(&b).adjoint() != b.adjoint().mul(&a.adjoint()));
        }
        failures += bad;
        details.push(format!("Weyl over {field}: 100 triples, associativity and adjoint, {bad} failures"));
    }

    // every basis the corpus produces, and Hilbert counts on each support ideal
    let (mut bases, mut bad_bases, mut ideals, mut bad_hilbert) = (0, 0, 0, 0);
    for (name, text) in corpus::CORPUS {
        let spec = parse_module_spec(text).unwrap();
        if let Ok(Some(m)) = spec.char0_model() {
            let gb = weyl_groebner_module(&m, &TermOrder::new(MonomialOrder::DegRevLex), &Default::default()).unwrap();
            bases += 1;
            bad_bases += usize::from(!gb.satisfies_buchberger_criterion());
        }
        for &p in &spec.file.primes {
            let sp = spec.specialize(p).unwrap();
            if let Some(m) = &sp.weyl_model {
                let gb =
                    weyl_groebner_module(m, &TermOrder::new(MonomialOrder::DegRevLex), &Default::default()).unwrap();
                bases += 1;
                bad_bases += usize::from(!gb.satisfies_buchberger_criterion());
            }
            let s = match &sp.input {
                Input::Module(m) => p_support(m, p),
                Input::Connection(c) => p_support_connection(c, p),
            }
            .unwrap();
            for gb in [&s.ideal, &s.annihilator] {
                bases += 1;
                bad_bases += usize::from(!gb.satisfies_buchberger_criterion());
                let hp = hilbert_polynomial(gb, 1).unwrap();
                ideals += 1;
                for l in hp.l0..hp.l0 + 6 {
                    if hp.eval(l as i64) != num_rational_from(count_standard(gb, l as u32)) {
                        bad_hilbert += 1;
                        details.push(format!("{name} p = {p}: Hilbert count differs at {l}"));
                        break;
                    }
                }
            }
        }
    }
    failures += bad_bases + bad_hilbert;
    details.push(format!("{bases} bases (commutative and Weyl), {bad_bases} fail the S-pair test"));
    details.push(format!("{ideals} corpus ideals, 6 degrees each, {bad_hilbert} Hilbert mismatches"));

    let mut bad = 0;
    for i in 0..50 {
        let p = if i % 2 == 0 { 3 } else { 5 };
        let field = Field::prime(p).unwrap();
        let f = laurent_random(&field, &mut rng, -3, 4);
        let h = laurent_random(&field, &mut rng, -4, 8);
        let mut fp1: BTreeMap<i32, Scalar> = BTreeMap::from([(0, field.one())]);
        for _ in 0..p - 1 {
            let mut next: BTreeMap<i32, Scalar> = BTreeMap::new();
            for (a, ca) in &fp1 {
                for (b, cb) in &f {
                    let slot = next.entry(a + b).or_insert_with(|| field.zero());
                    *slot = field.add(slot, &field.mul(ca, cb));
                }
            }
            next.retain(|_, c| !field.is_zero(c));
            fp1 = next;
        }
        let df = OneForm::differential(&field, &f);
        bad += usize::from(df.mul_function(&fp1).cartier().unwrap() != df);
        bad += usize::from(!OneForm::differential(&field, &h).cartier().unwrap().is_zero());
    }
    failures += bad;
    details.push(format!("Cartier: 50 random Laurent polynomials, p in {{3, 5}}, {bad} failures"));

    let mut bad = 0;
    for i in 0..50 {
        let p = if i % 2 == 0 { 3 } else { 5 };
        let field = Field::prime(p).unwrap();
        let ring = WeylRing::new(2, &field);
        // a = grad g + (b(x1), 0)
        let g = random_weyl(&WeylRing::new(2, &field), &mut rng);
        let g =
            WeylElement::from_terms(&ring, g.terms().map(|(k, c)| (Exp::from_slice(&[k[0], k[1], 0, 0]), c.clone())));
        let b = WeylElement::from_terms(
            &ring,
            laurent_random(&field, &mut rng, 0, 4).into_iter().map(|(e, c)| (Exp::from_slice(&[e, 0, 0, 0]), c)),
        );
        let a = vec![g.partial(0).unwrap().add(&b), g.partial(1).unwrap()];
        let closed = p_curvature_rank1(&ring, &a, p).unwrap();
        let full = p_curvature_matrices(&ConnectionSpec::rank1(&ring, &a).unwrap(), p).unwrap();
        bad += usize::from(closed.matrices != full.matrices);
    }
    failures += bad;
    details.push(format!("rank one closed form vs (d + A)^p - d^p: 50 inputs, {bad} failures"));
    outcome(8, "engine property suites", details, failures)
}

fn num_rational_from(k: usize) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(k.into())
}

// 9. Serial and parallel sweeps agree on the whole corpus.
fn determinism(budget_secs: &mut f64) -> Outcome {
    let mut details = Vec::new();
    let mut failures = 0;
    let mut slowest = (String::new(), 0u64);
    for (name, text) in corpus::CORPUS {
        let spec = parse_module_spec(text).unwrap();
        let t = Instant::now();
        let a = run_pipeline(&spec, &RunOptions { serial: true, cache: None });
        *budget_secs += t.elapsed().as_secs_f64();
        let b = run_pipeline(&spec, &RunOptions::default());
        for (k, &ms) in &a.timings_ms {
            if ms > slowest.1 {
                slowest = (format!("{name} {k}"), ms);
            }
        }
        if a.stable().to_json() != b.stable().to_json() {
            failures += 1;
            details.push(format!("{name}: serial and parallel reports differ"));
        }
    }
    details.insert(0, format!("{} specs; slowest cell {} ({} ms)", corpus::CORPUS.len(), slowest.0, slowest.1));
    if slowest.1 >= 30_000 {
        failures += 1;
    }
    outcome(9, "serial and parallel sweeps are identical", details, failures)
}

fn main() {
    let t0 = Instant::now();
    let theorem = corpus_reports(THEOREM_CORPUS);
    let scaling_reports = corpus_reports(&["constant", "euler", "airy"]);
    let mut serial_secs = 0.0;
    let outcomes = vec![
        graphs(),
        kummer(),
        nilpotent(),
        lagrangian(&theorem),
        bounds(&theorem),
        scaling(&scaling_reports),
        negative_controls(),
        property_suites(),
        determinism(&mut serial_secs),
    ];
    let mut unexpected = 0;
    for o in &outcomes {
        let known = KNOWN_DEVIATIONS.contains(&o.id);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known deviation)",
            (false, false) => "FAIL",
        };
        unexpected += usize::from(!o.pass && !known);
        println!("{tag} {}: {}", o.id, o.title);
        for d in &o.details {
            println!("    {d}");
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!(
        "{passed}/{} criteria pass; full corpus, serial: {serial_secs:.1} s; acceptance run: {:.1} s",
        outcomes.len(),
        t0.elapsed().as_secs_f64()
    );
    if serial_secs >= 300.0 {
        println!("FAIL corpus runtime exceeds 5 minutes");
        unexpected += 1;
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
