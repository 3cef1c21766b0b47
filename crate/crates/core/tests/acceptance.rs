//! The ten acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use dmwb_core::fibration::sweep::{Sweep, DEFAULT_SEED};
use dmwb_core::fibration::{eval_fibration, forgetful_bottom, forgetful_top, FiveConfig, C64};
use dmwb_core::fixture::MatrixFixture;
use dmwb_core::hybrid::{classify_pair, designated_pair, LatticeFlag, LatticeFlags, Outcome};
use dmwb_core::lattice_params::{
    blowup_weight, derived_params, load_table, mu_from_spec, validate_rows, DerivedParams, TableRow,
};
use dmwb_core::monodromy::{
    abelianization, hom_count_brute_force, mapping_torus, relation_matrix,
    verify_matrix_assignment, MappingClass, OrbifoldGroup, Word,
};
use dmwb_core::triangle_groups::{
    classify_arithmetic, commensurable, normalize, sig, stabilizer, TriangleSignature,
};
use dmwb_core::{DivisorId, ExtOrder, LatticeSpec};
use num_rational::Rational64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rows() -> Result<Vec<TableRow>, String> {
    load_table().map_err(|e| e.to_string())
}

fn table_replay() -> Verdict {
    let rows = rows()?;
    ensure(rows.len() == 25, || {
        format!("{} rows in the dataset", rows.len())
    })?;
    let report = validate_rows(&rows);
    let bad: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.mismatches.is_empty())
        .map(|r| r.spec.to_string())
        .collect();
    ensure(bad.is_empty(), || {
        format!("rows not reproduced: {}", bad.join(" "))
    })?;
    Ok("25/25 rows exact".into())
}

fn blowup_round_trip() -> Verdict {
    let rows = rows()?;
    let mut checked = 0;
    for row in &rows {
        for e in DivisorId::EXCEPTIONAL {
            let m = blowup_weight(e.incident_by_rule().map(|d| row.entry(d)));
            ensure(m == row.entry(e), || {
                format!("{} {e}: {m} != {}", row.spec, row.entry(e))
            })?;
            checked += 1;
        }
    }
    let entry = |spec: LatticeSpec| {
        rows.iter()
            .find(|r| r.spec == spec)
            .map(|r| r.entry(DivisorId::E0))
    };
    ensure(
        entry(LatticeSpec::three(4, 8)) == Some(ExtOrder::int(-4)),
        || "(4,8) E0 is not -4".into(),
    )?;
    ensure(
        entry(LatticeSpec::three(6, 3)) == Some(ExtOrder::Infinite),
        || "(6,3) E0 is not inf".into(),
    )?;
    Ok(format!("{checked} blow-up points exact"))
}

fn mu_sum() -> Verdict {
    let two = Rational64::from_integer(2);
    for row in rows()? {
        ensure(mu_from_spec(&row.spec).sum() == two, || {
            format!("{}", row.spec)
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..10_000 {
        let (p, k, pp) = (
            rng.gen_range(1..=1000),
            rng.gen_range(1..=1000),
            rng.gen_range(1..=1000),
        );
        let spec = if rng.gen() {
            LatticeSpec::three(p, k)
        } else {
            LatticeSpec::two(p, k, pp)
        };
        ensure(mu_from_spec(&spec).sum() == two, || format!("{spec}"))?;
    }
    Ok("25 rows and 10000 random specs".into())
}

fn same(x: DivisorId, spec: &LatticeSpec, s: &TriangleSignature) -> bool {
    stabilizer(x, spec).is_ok_and(|t| t.signature.same_group(s))
}

fn formula(a: ExtOrder, b: ExtOrder, c: ExtOrder) -> Option<TriangleSignature> {
    normalize(a, b, c).ok()
}

fn stabilizers() -> Verdict {
    let named = [
        (LatticeSpec::three(3, 8), sig(2, 3, 24), sig(2, 3, 8)),
        (LatticeSpec::three(6, 4), sig(2, 6, 12), sig(2, 4, 6)),
        (LatticeSpec::two(4, 4, 6), sig(2, 6, 6), sig(4, 4, 6)),
        (LatticeSpec::two(3, 4, 4), sig(2, 4, 6), sig(4, 3, 12)),
    ];
    for (spec, a, b) in &named {
        let (x, y) = designated_pair(spec);
        ensure(same(x, spec, a) && same(y, spec, b), || {
            format!("{spec} does not give {a}, {b}")
        })?;
    }
    let two = ExtOrder::int(2);
    let mut identities = 0;
    for row in rows()? {
        let spec = row.spec;
        let checks: Vec<(DivisorId, Option<TriangleSignature>)> = match derived_params(&spec) {
            DerivedParams::ThreeFold { l, .. } => vec![
                (DivisorId::D01, formula(two, ExtOrder::int(spec.p()), l)),
                (
                    DivisorId::E3,
                    formula(two, ExtOrder::int(spec.p()), ExtOrder::int(spec.k())),
                ),
            ],
            DerivedParams::TwoFold { l, kp, .. } => {
                let LatticeSpec::TwoFold { p, k, pp } = spec else {
                    unreachable!()
                };
                let (x, y) = designated_pair(&spec);
                vec![
                    (x, formula(two, ExtOrder::int(pp), l)),
                    (y, formula(ExtOrder::int(k), ExtOrder::int(p), kp)),
                ]
            }
        };
        for (x, f) in checks {
            if let (Ok(s), Some(f)) = (stabilizer(x, &spec), f) {
                ensure(s.signature.same_group(&f), || {
                    format!("{spec} {x}: {} vs {f}", s.signature)
                })?;
                identities += 1;
            }
        }
    }
    Ok(format!("4 named pairs, {identities} formula identities"))
}

fn hybrid_lattices() -> Verdict {
    let expected: BTreeSet<LatticeSpec> = [
        LatticeSpec::three(4, 6),
        LatticeSpec::three(5, 4),
        LatticeSpec::three(3, 8),
        LatticeSpec::three(6, 4),
        LatticeSpec::two(3, 4, 4),
        LatticeSpec::two(4, 4, 6),
    ]
    .into();
    let flags = LatticeFlags::load().map_err(|e| e.to_string())?;
    let hybrids: BTreeSet<LatticeSpec> = flags
        .specs()
        .filter(|(_, f)| **f == LatticeFlag::NonArithmetic)
        .map(|(s, _)| *s)
        .filter(|s| classify_pair(s, designated_pair(s)).outcome == Outcome::Case2Hybrid)
        .collect();
    ensure(hybrids == expected, || format!("hybrids {hybrids:?}"))?;
    let pairs = [
        (sig(2, 3, 24), sig(2, 3, 8)),
        (sig(2, 6, 12), sig(2, 4, 6)),
        (sig(2, 6, 6), sig(4, 4, 6)),
        (sig(2, 4, 6), sig(3, 4, 12)),
    ];
    for (a, b) in pairs {
        let arith = |s: &TriangleSignature| classify_arithmetic(s).is_ok_and(|c| c.arithmetic);
        ensure(arith(&a) && arith(&b), || {
            format!("{a} or {b} not arithmetic")
        })?;
        ensure(commensurable(&a, &b) == Ok(false), || {
            format!("{a} and {b} commensurable")
        })?;
    }
    Ok("6 hybrids, 4 non-commensurable arithmetic pairs".into())
}

fn sweep(s: Sweep, samples: usize, tol: f64) -> Result<String, String> {
    let r = s.run(DEFAULT_SEED, samples, tol);
    let summary = format!("{} {} samples max {:.1e}", s.name(), r.samples, r.max_error);
    ensure(r.passed(), || format!("{summary}, {} failures", r.failures))?;
    Ok(summary)
}

fn singular_fibres() -> Verdict {
    let float = sweep(Sweep::Singular, 10_000, 1e-12)?;
    let exact = sweep(Sweep::SingularExact, 10_000, 0.0)?;
    Ok(format!("{float}; {exact}"))
}

fn cross_ratio() -> Verdict {
    let a = sweep(Sweep::CrossRatio, 1000, 1e-9)?;
    let b = sweep(
        Sweep::Quadrilateral,
        100,
        Sweep::Quadrilateral.default_tolerance(),
    )?;
    Ok(format!("{a}; {b}"))
}

fn forgetful() -> Verdict {
    let a = sweep(Sweep::Forgetful, 1000, 1e-10)?;
    let cfg = FiveConfig::from_affine([0.0, 1.0, 2.0, 3.0, 4.0].map(|x| C64::new(x, 0.0)), 0.0)
        .map_err(|e| e.to_string())?;
    let top = forgetful_top(&cfg)
        .and_then(|p| eval_fibration(&p, 0.0))
        .map_err(|e| e.to_string())?;
    let bottom = forgetful_bottom(&cfg.first_four(), 0.0).map_err(|e| e.to_string())?;
    let target = dmwb_core::fibration::ComplexProjPoint::from_reals(&[4.0, 3.0]).unwrap();
    ensure(
        top.distance(&target) < 1e-12 && bottom.distance(&target) < 1e-12,
        || format!("worked instance gives {top} and {bottom}"),
    )?;
    Ok(format!("{a}; (0,1,2,3,4) -> [4:3] both ways"))
}

fn gamma34() -> Verdict {
    sweep(Sweep::Gamma34, 100, 1e-9).map(|s| format!("{s}, diverges at 0"))
}

fn rank_q(rows: &[Vec<i64>], ncols: usize) -> usize {
    let mut m: Vec<Vec<Rational64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col] / pivot[col];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Every letter sequence in `s1^±1, s2^±1, s3^±1` up to the given length.
fn twist_words(max_len: usize) -> Vec<Word> {
    let mut all = vec![Vec::new()];
    let mut frontier: Vec<Vec<i8>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in [1i8, 2, 3, -1, -2, -3] {
                next.push(w.iter().copied().chain([l]).collect::<Vec<i8>>());
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.into_iter().map(Word::from_letters).collect()
}

fn fixture_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os("DMWB_MATRIX_FIXTURE") {
        return Some(p.into());
    }
    let shipped =
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/lattice_10_5.json");
    shipped.exists().then_some(shipped)
}

fn monodromy() -> Verdict {
    let fives = OrbifoldGroup::new([ExtOrder::int(5); 4]).map_err(|e| e.to_string())?;
    let cusps = OrbifoldGroup::new([ExtOrder::Infinite; 4]).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..1000 {
        let len = rng.gen_range(0..=8);
        let w = Word::from_letters((0..len).map(|_| {
            let g = rng.gen_range(1..=3i8);
            if rng.gen() {
                g
            } else {
                -g
            }
        }));
        let mc = MappingClass::from_twists(&w);
        for g in [&fives, &cusps] {
            let torus = mapping_torus(g, &mc).map_err(|e| e.to_string())?;
            let rels = torus.relators();
            ensure(mc.preserves_relators(g), || {
                format!("relators not preserved by {w:?}")
            })?;
            ensure(rels.len() == g.relators().len() + 4, || {
                "wrong relator count".into()
            })?;
        }
    }
    let words = twist_words(4);
    for w in &words {
        let torus =
            mapping_torus(&fives, &MappingClass::from_twists(w)).map_err(|e| e.to_string())?;
        let ab = abelianization(&torus);
        let rels = torus.relators();
        ensure(
            ab.free_rank == 5 - rank_q(&relation_matrix(&rels, 5), 5),
            || format!("rank for {w:?}"),
        )?;
        for q in [2u64, 3, 5] {
            let brute = hom_count_brute_force(&rels, 5, q);
            ensure(ab.hom_count(q) == brute, || {
                format!("{w:?} q={q}: {} vs {brute}", ab.hom_count(q))
            })?;
        }
    }
    let fixture = match fixture_path() {
        None => "matrix fixture skipped".to_string(),
        Some(path) => {
            let text =
                std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let fx = MatrixFixture::from_json(&text).map_err(|e| e.to_string())?;
            let report = verify_matrix_assignment(&fx, &LatticeSpec::three(10, 5))
                .map_err(|e| e.to_string())?;
            ensure(report.passed(), || {
                format!("matrix fixture {} fails", path.display())
            })?;
            "matrix fixture 10/10 words".to_string()
        }
    };
    Ok(format!(
        "1000 random words, {} words of length <= 4, {fixture}",
        words.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("table replay", table_replay),
        ("blow-up round trip", blowup_round_trip),
        ("weights sum to 2", mu_sum),
        ("stabilizer reproduction", stabilizers),
        ("hybrid lattices", hybrid_lattices),
        ("singular fibres", singular_fibres),
        ("cross-ratio composite", cross_ratio),
        ("forgetful square", forgetful),
        ("gamma34 endpoints", gamma34),
        ("monodromy presentations", monodromy),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
