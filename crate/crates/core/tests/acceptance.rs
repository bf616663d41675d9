//! Acceptance suite: eight criteria, each checked against an oracle written
//! here independently of the library, with one PASS/FAIL line per criterion.
//! The lines are written straight to stderr so they show without
//! `--nocapture`.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use hypermod::carrier::{find_tuple, next_tuple};
use hypermod::constructions::quotient;
use hypermod::format;
use hypermod::harness::{self, check_t3_10_external, TheoremId};
use hypermod::search::{self, Finding, Mode, SearchSpec, Target};
use hypermod::substructures::{enumerate_hyperideal_sets, enumerate_subhypermodule_sets};
use hypermod::{
    fixtures, module::check_standing_assumptions, multiplication, Carrier, ElementSet, Error, HyperOperation,
    Hypermodule, KrasnerHyperring, Limits, Operation, ScalarAction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: usize, title: &str, elapsed: Duration, o: &Outcome) {
    let line = format!(
        "acceptance criterion {n} [{title}]: {} ({:.2?}) {}\n",
        if o.pass { "PASS" } else { "FAIL" },
        elapsed,
        o.detail
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn set(xs: &[usize]) -> ElementSet {
    xs.iter().copied().collect()
}

// ---------------------------------------------------------------------------
// 1. axiom-stack soundness against classical ring and module laws

struct ClassicalRing {
    size: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl ClassicalRing {
    fn zn(k: usize) -> Self {
        ClassicalRing {
            size: k,
            add: (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect(),
            mul: (0..k).map(|a| (0..k).map(|b| a * b % k).collect()).collect(),
        }
    }

    fn build(&self) -> KrasnerHyperring {
        let h = HyperOperation::from_fn(self.size, 2, |t| ElementSet::singleton(self.add[t[0]][t[1]])).unwrap();
        let k = Operation::from_fn(self.size, 2, |t| self.mul[t[0]][t[1]]).unwrap();
        KrasnerHyperring::new(Carrier::numbered(self.size).unwrap(), h, k, 0, 1).unwrap()
    }

    /// Classical law per named check.
    fn laws(&self) -> BTreeMap<&'static str, bool> {
        let r = 0..self.size;
        let (a, m) = (&self.add, &self.mul);
        let all3 = |p: &dyn Fn(usize, usize, usize) -> bool| {
            r.clone().all(|x| r.clone().all(|y| r.clone().all(|z| p(x, y, z))))
        };
        let group = all3(&|x, y, z| a[a[x][y]][z] == a[x][a[y][z]])
            && r.clone().all(|x| r.clone().all(|y| a[x][y] == a[y][x]))
            && r.clone().any(|e| r.clone().all(|x| a[e][x] == x))
            && {
                let e = r.clone().find(|&e| r.clone().all(|x| a[e][x] == x));
                e.is_some_and(|e| r.clone().all(|x| r.clone().any(|y| a[x][y] == e)))
            };
        BTreeMap::from([
            ("h_canonical_hypergroup", group),
            ("zero_is_additive_identity", r.clone().all(|x| a[0][x] == x && a[x][0] == x)),
            ("k_associative", all3(&|x, y, z| m[m[x][y]][z] == m[x][m[y][z]])),
            ("k_commutative", r.clone().all(|x| r.clone().all(|y| m[x][y] == m[y][x]))),
            (
                "distributivity",
                all3(&|x, y, z| m[x][a[y][z]] == a[m[x][y]][m[x][z]] && m[a[y][z]][x] == a[m[y][x]][m[z][x]]),
            ),
            ("zero_absorbing", r.clone().all(|x| m[0][x] == 0 && m[x][0] == 0)),
            ("one_neutral", r.clone().all(|x| m[1][x] == x && m[x][1] == x)),
        ])
    }
}

struct ClassicalModule {
    ring: ClassicalRing,
    size: usize,
    add: Vec<Vec<usize>>,
    act: Vec<Vec<usize>>,
}

impl ClassicalModule {
    fn zk_over_zn(k: usize, n: usize) -> Self {
        ClassicalModule {
            ring: ClassicalRing::zn(n),
            size: k,
            add: (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect(),
            act: (0..n).map(|r| (0..k).map(|x| r * x % k).collect()).collect(),
        }
    }

    fn build(&self) -> Hypermodule {
        let ring = Arc::new(self.ring.build());
        let f = HyperOperation::from_fn(self.size, 2, |t| ElementSet::singleton(self.add[t[0]][t[1]])).unwrap();
        let g = ScalarAction::from_fn(self.ring.size, self.size, 1, |rs, x| ElementSet::singleton(self.act[rs[0]][x]))
            .unwrap();
        Hypermodule::new(ring, Carrier::numbered(self.size).unwrap(), f, g, 0).unwrap()
    }

    fn laws(&self) -> BTreeMap<&'static str, bool> {
        let ms = 0..self.size;
        let rs = 0..self.ring.size;
        let (a, g, ra, rm) = (&self.add, &self.act, &self.ring.add, &self.ring.mul);
        let group = ms.clone().all(|x| ms.clone().all(|y| ms.clone().all(|z| a[a[x][y]][z] == a[x][a[y][z]])))
            && ms.clone().all(|x| ms.clone().all(|y| a[x][y] == a[y][x]))
            && {
                let e = ms.clone().find(|&e| ms.clone().all(|x| a[e][x] == x));
                e.is_some_and(|e| ms.clone().all(|x| ms.clone().any(|y| a[x][y] == e)))
            };
        let every = |p: &dyn Fn(usize, usize, usize) -> bool| {
            rs.clone().all(|r| rs.clone().all(|s| ms.clone().all(|x| p(r, s, x))))
        };
        BTreeMap::from([
            ("f_canonical_hypergroup", group),
            ("zero_is_additive_identity", ms.clone().all(|x| a[0][x] == x && a[x][0] == x)),
            (
                "action_distributes_over_f",
                rs.clone().all(|r| ms.clone().all(|x| ms.clone().all(|y| g[r][a[x][y]] == a[g[r][x]][g[r][y]]))),
            ),
            ("scalar_distributivity", every(&|r, s, x| g[ra[r][s]][x] == a[g[r][x]][g[s][x]])),
            ("mixed_associativity", every(&|r, s, x| g[rm[r][s]][x] == g[r][g[s][x]])),
            ("zero_scalar_annihilates", ms.clone().all(|x| g[0][x] == 0)),
            ("unitality", ms.clone().all(|x| g[1][x] == x)),
        ])
    }
}

fn agree(report: &hypermod::report::ValidationReport, laws: &BTreeMap<&'static str, bool>) -> Result<(), String> {
    for (name, &expected) in laws {
        let got = report.get(name).map(|c| c.passed);
        if got != Some(expected) {
            return Err(format!("{name}: library {got:?}, oracle {expected}"));
        }
    }
    if report.checks.len() != laws.len() {
        return Err(format!("{} checks reported, {} laws known", report.checks.len(), laws.len()));
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let mut rings = Vec::new();
    for k in [2, 3, 4, 6] {
        let base = ClassicalRing::zn(k);
        for (x, y, v) in cells(k) {
            let mut r = ClassicalRing::zn(k);
            if r.mul[x][y] != v {
                r.mul[x][y] = v;
                rings.push(r);
            }
            let mut r = ClassicalRing::zn(k);
            if r.add[x][y] != v {
                r.add[x][y] = v;
                rings.push(r);
            }
        }
        rings.push(base);
    }
    let mut modules = Vec::new();
    for n in [2, 4, 6] {
        for k in 1..=6 {
            modules.push(ClassicalModule::zk_over_zn(k, n));
        }
    }
    for (k, n) in [(2, 2), (2, 4), (3, 6), (2, 6)] {
        for r in 0..n {
            for x in 0..k {
                for v in 0..k {
                    let mut m = ClassicalModule::zk_over_zn(k, n);
                    if m.act[r][x] != v {
                        m.act[r][x] = v;
                        modules.push(m);
                    }
                }
            }
        }
        for (x, y, v) in cells(k) {
            let mut m = ClassicalModule::zk_over_zn(k, n);
            if m.add[x][y] != v {
                m.add[x][y] = v;
                modules.push(m);
            }
        }
    }
    let (mut valid_rings, mut valid_modules) = (0, 0);
    for r in &rings {
        let report = r.build().validate();
        valid_rings += report.is_valid() as usize;
        if let Err(e) = agree(&report, &r.laws()) {
            return Outcome { pass: false, detail: format!("ring disagreement: {e}") };
        }
    }
    for m in &modules {
        let report = m.build().validate();
        valid_modules += report.is_valid() as usize;
        if let Err(e) = agree(&report, &m.laws()) {
            return Outcome { pass: false, detail: format!("module disagreement: {e}") };
        }
    }
    Outcome {
        pass: true,
        detail: format!(
            "{} rings ({valid_rings} valid) and {} modules ({valid_modules} valid), 100% agreement",
            rings.len(),
            modules.len()
        ),
    }
}

fn cells(k: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for x in 0..k {
        for y in 0..k {
            for v in 0..k {
                out.push((x, y, v));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// 2. enumeration against the literal definitions over all subsets

/// Literal subhypergroup test: closed under `op`, and every equation
/// `b ∈ op(.., x, ..)` with the other arguments in `s` is solvable in `s`.
fn oracle_subhypergroup(op: &HyperOperation, s: ElementSet) -> bool {
    if s.is_empty() {
        return false;
    }
    let members: Vec<usize> = s.iter().collect();
    let m = op.arity();
    let closed = find_tuple(members.len(), m, |t| {
        let args: Vec<usize> = t.iter().map(|&i| members[i]).collect();
        (!op.get(&args).is_subset(s)).then_some(())
    })
    .is_none();
    let solvable = find_tuple(members.len(), m, |t| {
        let args: Vec<usize> = t.iter().map(|&i| members[i]).collect();
        (0..m).find_map(|pos| {
            let b = args[pos];
            let mut trial = args.clone();
            let ok = members.iter().any(|&x| {
                trial[pos] = x;
                op.get(&trial).contains(b)
            });
            (!ok).then_some(())
        })
    })
    .is_none();
    closed && solvable
}

fn oracle_ideals(ring: &KrasnerHyperring) -> Vec<ElementSet> {
    let n = ring.n();
    (1u128..1 << ring.size())
        .map(ElementSet::from_bits)
        .filter(|&s| {
            oracle_subhypergroup(ring.h(), s)
                && find_tuple(ring.size(), n, |t| {
                    let hits = t.iter().any(|&x| s.contains(x));
                    (hits && !s.contains(ring.k().get(t))).then_some(())
                })
                .is_none()
        })
        .collect()
}

fn oracle_submodules(module: &Hypermodule) -> Vec<ElementSet> {
    let scalars = module.ring().n() - 1;
    (1u128..1 << module.size())
        .map(ElementSet::from_bits)
        .filter(|&s| {
            oracle_subhypergroup(module.f(), s)
                && find_tuple(module.ring().size(), scalars, |rs| {
                    s.iter().find(|&x| !module.g().get(rs, x).is_subset(s)).map(|_| ())
                })
                .is_none()
        })
        .collect()
}

fn corpus_modules() -> Vec<Hypermodule> {
    let l = Limits::default();
    let mut out = vec![
        fixtures::k2_over_k2(),
        fixtures::v4_over_z2(),
        fixtures::zero_module(fixtures::zn(3)),
        fixtures::zero_module(fixtures::k2()),
    ];
    for n in 1..=6 {
        for k in (1..=n).filter(|k| n % k == 0) {
            out.push(fixtures::zk_over_zn(k, n));
        }
    }
    for ring in search::rings_up_to(3, 2, 2, &l).unwrap() {
        for size in 1..=3 {
            out.extend(search::hypermodules(&ring, size, &l).unwrap());
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let l = Limits::default();
    let closure_path = Limits { naive_threshold: 0, ..Limits::default() };
    let mut rings: Vec<KrasnerHyperring> = (1..=6).map(fixtures::zn).collect();
    rings.push(fixtures::k2());
    rings.push(fixtures::zn_mn(5, 3, 3));
    rings.push(fixtures::zn_mn(4, 3, 2));
    rings.extend(search::rings_up_to(4, 2, 2, &l).unwrap().into_iter().map(|r| (*r).clone()));
    let mut modules = corpus_modules();
    modules.push(fixtures::classical_module(
        Arc::new(fixtures::zn_mn(6, 3, 3)),
        Carrier::numbered(6).unwrap(),
        |a, b| (a + b) % 6,
        |r, x| r * x % 6,
    ));
    let mut compared = 0;
    for ring in &rings {
        let expected = oracle_ideals(ring);
        for limits in [&l, &closure_path] {
            let got = enumerate_hyperideal_sets(ring, limits).unwrap();
            if got.iter().collect::<HashSet<_>>() != expected.iter().collect::<HashSet<_>>() {
                return Outcome { pass: false, detail: format!("hyperideals differ on a ring of size {}", ring.size()) };
            }
            compared += 1;
        }
    }
    for module in &modules {
        let expected = oracle_submodules(module);
        for limits in [&l, &closure_path] {
            let got = enumerate_subhypermodule_sets(module, limits).unwrap();
            if got.iter().collect::<HashSet<_>>() != expected.iter().collect::<HashSet<_>>() {
                return Outcome {
                    pass: false,
                    detail: format!("subhypermodules differ on a module of size {}", module.size()),
                };
            }
            compared += 1;
        }
    }
    Outcome {
        pass: true,
        detail: format!(
            "{} rings and {} modules, {compared} enumerations equal to the 2^size filter",
            rings.len(),
            modules.len()
        ),
    }
}

// ---------------------------------------------------------------------------
// 3. multiplication detection

/// Brute force: every subhypermodule is `g(I, M)` for some hyperideal `I`.
fn oracle_multiplication(module: &Hypermodule) -> (bool, Option<ElementSet>) {
    let ideals = oracle_ideals(module.ring());
    let act = |i: ElementSet| -> ElementSet {
        let mut acc = ElementSet::EMPTY;
        for r in i {
            for x in 0..module.size() {
                acc = acc.union(module.g().get(&[r], x));
            }
        }
        acc
    };
    let images: HashSet<ElementSet> = ideals.iter().map(|&i| act(i)).collect();
    let mut subs = oracle_submodules(module);
    subs.sort_by_key(|s| s.bits());
    match subs.into_iter().find(|n| !images.contains(n)) {
        Some(n) => (false, Some(n)),
        None => (true, None),
    }
}

fn criterion_3() -> Outcome {
    let l = Limits::default();
    let z4 = multiplication::is_multiplication(&fixtures::zn_over_self(4), &l).unwrap();
    let expected = vec![
        (set(&[0]), Some(set(&[0]))),
        (set(&[0, 2]), Some(set(&[0, 2]))),
        (set(&[0, 1, 2, 3]), Some(set(&[0, 1, 2, 3]))),
    ];
    if !z4.verdict || z4.witnesses != expected {
        return Outcome { pass: false, detail: format!("Z4 witnesses {:?}", z4.witnesses) };
    }
    let v4 = fixtures::v4_over_z2();
    let cert = multiplication::is_multiplication(&v4, &l).unwrap();
    let (oracle_verdict, oracle_failure) = oracle_multiplication(&v4);
    let failing = cert.first_failure();
    let is_line = failing.is_some_and(|n| n.len() == 2);
    if cert.verdict || oracle_verdict || !is_line || failing != oracle_failure {
        return Outcome { pass: false, detail: format!("V4 failing submodule {failing:?}") };
    }
    for k in 1..=8 {
        let m = fixtures::zn_over_self(k);
        let lib = multiplication::is_multiplication(&m, &l).unwrap().verdict;
        if !lib || !oracle_multiplication(&m).0 {
            return Outcome { pass: false, detail: format!("Z/{k} over itself not certified") };
        }
    }
    Outcome {
        pass: true,
        detail: format!(
            "Z4 witness map pinned; V4 fails at {}; Z/k over Z/k multiplication for k <= 8",
            v4.carrier().show_set(failing.unwrap())
        ),
    }
}

// ---------------------------------------------------------------------------
// 4. exhaustive theorem harness

fn criterion_4() -> Outcome {
    let l = Limits::default();
    let spec = SearchSpec {
        max_ring_size: 3,
        max_module_size: 3,
        m: 2,
        n: 2,
        target: Target::Theorems(TheoremId::ALL.to_vec()),
        mode: Mode::Exhaustive,
    };
    let hunt = search::hunt(&spec, &l).unwrap();
    let mut by_theorem: BTreeMap<&str, usize> = BTreeMap::new();
    for hit in &hunt.hits {
        let Finding::Counterexample { verdict } = &hit.finding else {
            return Outcome { pass: false, detail: "unexpected property hit".into() };
        };
        // reproducible from the serialized instance alone
        let Ok(parsed) = format::parse(&hit.instance) else {
            return Outcome { pass: false, detail: "counterexample instance does not parse".into() };
        };
        let module = parsed.module.expect("module section");
        let again = harness::verify(&module, &[verdict.theorem_id], &l).unwrap();
        if again[0] != *verdict {
            return Outcome { pass: false, detail: format!("{} not reproduced", verdict.theorem_id) };
        }
        *by_theorem.entry(verdict.theorem_id.as_str()).or_default() += 1;
    }
    let summary: Vec<String> = by_theorem.iter().map(|(k, v)| format!("{k} x{v}")).collect();
    Outcome {
        pass: true,
        detail: format!(
            "{} rings, {} instances ({} in contract), {} theorem checks; in-contract counterexamples: {}",
            hunt.rings,
            hunt.instances,
            hunt.in_contract,
            hunt.instances * TheoremId::ALL.len(),
            if summary.is_empty() { "none".into() } else { summary.join(", ") }
        ),
    }
}

// ---------------------------------------------------------------------------
// 5. quotient validity

fn criterion_5() -> Outcome {
    let l = Limits::default();
    let mut modules = corpus_modules();
    modules.push(fixtures::zn_over_self(4));
    modules.push(fixtures::zn_over_self(6));
    let (mut pairs, mut out_of_contract_failures) = (0, 0);
    for module in &modules {
        let in_contract = check_standing_assumptions(module, &l).unwrap().all_hold() && !module.ring().is_degenerate();
        for n in enumerate_subhypermodule_sets(module, &l).unwrap() {
            pairs += 1;
            let ok = match quotient(module, n) {
                Ok(q) => q.module.validate().is_valid(),
                Err(Error::WellDefinedness(_)) => false,
                Err(e) => return Outcome { pass: false, detail: format!("unexpected error: {e}") },
            };
            if !ok {
                if in_contract {
                    return Outcome {
                        pass: false,
                        detail: format!("quotient by {} fails", module.carrier().show_set(n)),
                    };
                }
                out_of_contract_failures += 1;
            }
        }
    }
    Outcome {
        pass: true,
        detail: format!(
            "{pairs} (M, N) pairs over {} modules, 0 in-contract failures, {out_of_contract_failures} out-of-contract",
            modules.len()
        ),
    }
}

// ---------------------------------------------------------------------------
// 6. direct-sum criterion on Z/2 + Z/3 over Z/6

fn criterion_6() -> Outcome {
    let parts = [fixtures::zk_over_zn(2, 6), fixtures::zk_over_zn(3, 6)];
    let (_, v) = check_t3_10_external(&parts, &Limits::default()).unwrap();
    // CRT: the idempotent 3 generates the ideal acting as 1 on Z/2 and 0 on Z/3,
    // the idempotent 4 the one acting as 1 on Z/3 and 0 on Z/2.
    let record = &v.witness["decompositions"][0];
    let witness = |i: usize| record["witness_ideals"][i]["I_lambda"].as_str().map(str::to_owned);
    let directions_ok = v.directions.len() == 2 && v.directions.iter().all(|d| d.holds && d.instances == 1);
    let pass = v.pass
        && v.hypotheses_hold
        && directions_ok
        && witness(0).as_deref() == Some("{0, 3}")
        && witness(1).as_deref() == Some("{0, 2, 4}");
    Outcome {
        pass,
        detail: format!(
            "both directions hold; I_1 = {}, I_2 = {}",
            witness(0).unwrap_or_default(),
            witness(1).unwrap_or_default()
        ),
    }
}

// ---------------------------------------------------------------------------
// 7. parser round trip and fuzzing

fn relabel(module: &Hypermodule, rng: &mut ChaCha8Rng) -> Hypermodule {
    let mut perm: Vec<usize> = (0..module.size()).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let m = module.permuted(&perm);
    let labels: Vec<String> = (0..m.size()).map(|i| format!("m{}_{}", i, rng.gen_range(0..100))).collect();
    Hypermodule::new(
        m.ring_arc().clone(),
        Carrier::new(labels).unwrap(),
        m.f().clone(),
        m.g().clone(),
        m.zero(),
    )
    .unwrap()
}

fn mutate(text: &str, rng: &mut ChaCha8Rng) -> String {
    let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
    for _ in 0..rng.gen_range(1..=3) {
        if lines.is_empty() {
            break;
        }
        let i = rng.gen_range(0..lines.len());
        match rng.gen_range(0..7) {
            0 => {
                lines.remove(i);
            }
            1 => {
                let dup = lines[i].clone();
                lines.insert(i, dup);
            }
            2 => {
                let j = rng.gen_range(0..lines.len());
                lines.swap(i, j);
            }
            3 => {
                let line = &mut lines[i];
                if !line.is_empty() {
                    let cut = rng.gen_range(0..line.len());
                    if line.is_char_boundary(cut) {
                        line.truncate(cut);
                    }
                }
            }
            4 => {
                const NOISE: &[&str] = &["{", "}", "=", "[", "]", "#", "x", "{}", "99", " ", "\t", "é", "0"];
                let pos = rng.gen_range(0..=lines[i].len());
                if lines[i].is_char_boundary(pos) {
                    lines[i].insert_str(pos, NOISE[rng.gen_range(0..NOISE.len())]);
                }
            }
            5 => lines[i] = lines[i].replace('1', "7"),
            _ => lines[i] = lines[i].replace(" = ", " "),
        }
    }
    lines.join("\n")
}

fn criterion_7() -> Outcome {
    let l = Limits::default();
    let mut round_trips = 0;
    for text in [fixtures::files::K2, fixtures::files::Z4, fixtures::files::Z6, fixtures::files::V4] {
        let s = format::parse(text).unwrap();
        let emitted = format::emit(&s);
        let again = format::parse(&emitted).unwrap();
        if again != s || format::emit(&again) != emitted {
            return Outcome { pass: false, detail: "fixture round trip differs".into() };
        }
        round_trips += 1;
    }
    let spec = SearchSpec {
        max_ring_size: 3,
        max_module_size: 3,
        m: 2,
        n: 2,
        target: Target::Multiplication,
        mode: Mode::Random { seed: 2024, count: 1000 },
    };
    // draws over a ring with no compatible action come back empty
    let mut generated = Vec::new();
    let mut seed = 2024;
    while generated.len() < 1000 {
        generated.extend(search::random_instances(&spec, seed, 250, &l).unwrap().1);
        seed += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for module in &generated {
        let module = relabel(module, &mut rng);
        let text = format::emit_module(&module);
        let parsed = format::parse(&text).unwrap();
        if parsed.module.as_ref() != Some(&module) || format::emit(&parsed) != text {
            return Outcome { pass: false, detail: "generated instance round trip differs".into() };
        }
        round_trips += 1;
    }
    let sources = [fixtures::files::K2, fixtures::files::Z4, fixtures::files::Z6, fixtures::files::V4];
    let (mut rejected, mut accepted) = (0, 0);
    for i in 0..1000 {
        let text = mutate(sources[i % sources.len()], &mut rng);
        let result = catch_unwind(AssertUnwindSafe(|| match format::parse(&text) {
            Ok(s) => format::parse(&format::emit(&s)).ok() == Some(s),
            Err(e) => !e.diagnostics.is_empty() && e.diagnostics.iter().all(|d| d.line >= 1),
        }));
        match result {
            Ok(true) => {
                if format::parse(&text).is_ok() {
                    accepted += 1;
                } else {
                    rejected += 1;
                }
            }
            Ok(false) => return Outcome { pass: false, detail: format!("fuzz case {i} misbehaved") },
            Err(_) => return Outcome { pass: false, detail: format!("fuzz case {i} panicked") },
        }
    }
    Outcome {
        pass: generated.len() >= 1000,
        detail: format!(
            "{round_trips} exact round trips ({} generated); fuzz: {rejected} diagnosed, {accepted} accepted, 0 crashes",
            generated.len()
        ),
    }
}

// ---------------------------------------------------------------------------
// 8. determinism

fn json_reports() -> String {
    let l = Limits::default();
    let mut out = String::new();
    for module in [
        fixtures::zn_over_self(4),
        fixtures::zn_over_self(6),
        fixtures::v4_over_z2(),
        fixtures::k2_over_k2(),
    ] {
        let verdicts = harness::verify_all(&module, &l).unwrap();
        out.push_str(&serde_json::to_string(&verdicts).unwrap());
    }
    let spec = SearchSpec {
        max_ring_size: 3,
        max_module_size: 3,
        m: 2,
        n: 2,
        target: Target::parse("T3.8").unwrap(),
        mode: Mode::Random { seed: 5, count: 40 },
    };
    out.push_str(&serde_json::to_string(&search::hunt(&spec, &l).unwrap()).unwrap());
    out
}

fn cli_json(path: &std::path::Path) -> Vec<u8> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    hypermod::cli::run(
        ["hypermod", "--format", "json", "verify", path.to_str().unwrap(), "--theorem", "all"],
        &mut out,
        &mut err,
    );
    out
}

fn criterion_8() -> Outcome {
    let runs: Vec<String> = [1, 4, 8]
        .iter()
        .flat_map(|&threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            [pool.install(json_reports), pool.install(json_reports)]
        })
        .collect();
    let identical = runs.windows(2).all(|w| w[0] == w[1]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z6.hs");
    std::fs::write(&path, fixtures::files::Z6).unwrap();
    let cli_identical = cli_json(&path) == cli_json(&path);
    Outcome {
        pass: identical && cli_identical,
        detail: format!(
            "{} library runs on 1/4/8 threads byte-identical: {identical}; CLI JSON identical: {cli_identical}",
            runs.len()
        ),
    }
}

#[test]
fn acceptance_criteria() {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 8] = [
        ("axiom-stack soundness", criterion_1, Duration::from_secs(1)),
        ("enumeration correctness", criterion_2, Duration::from_secs(10)),
        ("multiplication detection", criterion_3, Duration::from_secs(60)),
        ("theorem harness, exhaustive", criterion_4, Duration::from_secs(600)),
        ("quotient validity", criterion_5, Duration::from_secs(600)),
        ("direct-sum criterion", criterion_6, Duration::from_secs(60)),
        ("parser round trip", criterion_7, Duration::from_secs(600)),
        ("determinism", criterion_8, Duration::from_secs(600)),
    ];
    let mut failed = Vec::new();
    for (i, (title, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if elapsed > *budget {
            outcome.pass = false;
            outcome.detail.push_str(&format!(" [over the {budget:?} budget]"));
        }
        report(i + 1, title, elapsed, &outcome);
        if !outcome.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn criterion_oracles_reject_broken_tables() {
    // The oracles must see failures, not just agree on valid input.
    let mut r = ClassicalRing::zn(4);
    r.mul[2][3] = 1;
    assert!(!r.laws().values().all(|&b| b));
    let ring = fixtures::zn(4);
    let mut next = vec![0usize; 1];
    assert!(next_tuple(&mut next, 2));
    assert_eq!(oracle_ideals(&ring), vec![set(&[0]), set(&[0, 2]), set(&[0, 1, 2, 3])]);
    assert!(!oracle_multiplication(&fixtures::v4_over_z2()).0);
}
