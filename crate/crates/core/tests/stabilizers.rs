use std::collections::BTreeSet;

use dmwb_core::arrangement::{build_quadrilateral, orthogonal_pairs};
use dmwb_core::hybrid::{classify_pair, designated_pair, LatticeFlag, LatticeFlags, Outcome};
use dmwb_core::lattice_params::{derived_params, load_table, DerivedParams};
use dmwb_core::triangle_groups::{
    arithmetic_by_gram_criterion, classify_arithmetic, commensurable, is_hyperbolic, normalize,
    sig, stabilizer, Classification, TriangleSignature,
};
use dmwb_core::{DivisorId, ExtOrder, LatticeSpec};
use num_integer::Integer;
use proptest::prelude::*;

fn specs() -> Vec<LatticeSpec> {
    let mut v: Vec<LatticeSpec> = load_table().unwrap().into_iter().map(|r| r.spec).collect();
    v.push(LatticeSpec::three(3, 8));
    v.push(LatticeSpec::three(5, 4));
    v
}

fn formula(a: ExtOrder, b: ExtOrder, c: ExtOrder) -> Option<TriangleSignature> {
    normalize(a, b, c).ok()
}

#[test]
fn three_fold_formula_identities() {
    let mut checked = 0;
    for spec in specs().into_iter().filter(LatticeSpec::is_three_fold) {
        let p = ExtOrder::int(spec.p());
        let k = ExtOrder::int(spec.k());
        let DerivedParams::ThreeFold { l, .. } = derived_params(&spec) else {
            unreachable!()
        };
        if let (Ok(s), Some(f)) = (
            stabilizer(DivisorId::D01, &spec),
            formula(ExtOrder::int(2), p, l),
        ) {
            assert!(s.signature.same_group(&f), "{spec}: {} vs {f}", s.signature);
            checked += 1;
        }
        if let (Ok(s), Some(f)) = (
            stabilizer(DivisorId::E3, &spec),
            formula(ExtOrder::int(2), p, k),
        ) {
            assert!(s.signature.same_group(&f), "{spec}: {} vs {f}", s.signature);
            checked += 1;
        }
    }
    assert!(checked >= 30, "only {checked} identities were defined");
}

#[test]
fn two_fold_formula_identities() {
    for spec in specs().into_iter().filter(|s| !s.is_three_fold()) {
        let LatticeSpec::TwoFold { p, k, pp } = spec else {
            unreachable!()
        };
        let DerivedParams::TwoFold { l, kp, .. } = derived_params(&spec) else {
            unreachable!()
        };
        let (x, y) = designated_pair(&spec);
        if let (Ok(s), Some(f)) = (
            stabilizer(x, &spec),
            formula(ExtOrder::int(2), ExtOrder::int(pp), l),
        ) {
            assert!(s.signature.same_group(&f), "{spec}");
        }
        if let (Ok(s), Some(f)) = (
            stabilizer(y, &spec),
            formula(ExtOrder::int(k), ExtOrder::int(p), kp),
        ) {
            assert!(s.signature.same_group(&f), "{spec}");
        }
    }
}

#[test]
fn named_stabilizer_pairs() {
    let cases = [
        (LatticeSpec::three(3, 8), sig(2, 3, 24), sig(2, 3, 8)),
        (LatticeSpec::three(6, 4), sig(2, 6, 12), sig(2, 4, 6)),
        (LatticeSpec::two(4, 4, 6), sig(2, 6, 6), sig(4, 4, 6)),
        (LatticeSpec::two(3, 4, 4), sig(2, 4, 6), sig(4, 3, 12)),
    ];
    for (spec, a, b) in cases {
        let (x, y) = designated_pair(&spec);
        assert!(
            stabilizer(x, &spec).unwrap().signature.same_group(&a),
            "{spec}"
        );
        assert!(
            stabilizer(y, &spec).unwrap().signature.same_group(&b),
            "{spec}"
        );
    }
}

#[test]
fn three_fold_symmetry() {
    for spec in specs().into_iter().filter(LatticeSpec::is_three_fold) {
        let d = derived_params(&spec);
        if !(d.l().is_positive() && d.d().is_positive() && !d.d().is_infinite()) {
            continue;
        }
        let groups = |ids: [DivisorId; 3]| -> BTreeSet<_> {
            ids.iter()
                .map(|x| stabilizer(*x, &spec).ok().map(|s| s.signature.entries()))
                .collect()
        };
        assert_eq!(
            groups([DivisorId::D01, DivisorId::D02, DivisorId::D03]).len(),
            1,
            "{spec}"
        );
        assert_eq!(
            groups([DivisorId::E1, DivisorId::E2, DivisorId::E3]).len(),
            1,
            "{spec}"
        );
    }
}

#[test]
fn designated_pairs_give_the_six_hybrids() {
    let expected: BTreeSet<LatticeSpec> = [
        LatticeSpec::three(4, 6),
        LatticeSpec::three(5, 4),
        LatticeSpec::three(3, 8),
        LatticeSpec::three(6, 4),
        LatticeSpec::two(3, 4, 4),
        LatticeSpec::two(4, 4, 6),
    ]
    .into();
    let hybrids: BTreeSet<LatticeSpec> = LatticeFlags::shipped()
        .specs()
        .filter(|(_, f)| **f == LatticeFlag::NonArithmetic)
        .map(|(s, _)| *s)
        .filter(|s| classify_pair(s, designated_pair(s)).outcome == Outcome::Case2Hybrid)
        .collect();
    assert_eq!(hybrids, expected);
}

#[test]
fn trichotomy_is_total_in_scope() {
    let arr = build_quadrilateral();
    for spec in specs() {
        for pair in orthogonal_pairs(&arr) {
            let v = classify_pair(&spec, pair);
            let collapsed_or_cusp = v.sides.iter().any(|s| {
                s.signature()
                    .is_none_or(|g| g.has_cusp() || !is_hyperbolic(&g))
            });
            assert_eq!(
                v.outcome == Outcome::NotApplicable,
                collapsed_or_cusp,
                "{spec} {pair:?}"
            );
            if v.outcome == Outcome::Case2Hybrid {
                let [a, b] = v.sides.map(|s| s.signature().unwrap());
                assert!(!commensurable(&a, &b).unwrap());
            }
        }
    }
}

#[test]
fn gram_criterion_agrees_with_dataset_on_all_stabilizers() {
    let classes = Classification::shipped();
    for spec in specs() {
        for x in DivisorId::ALL {
            let Ok(s) = stabilizer(x, &spec) else {
                continue;
            };
            if !is_hyperbolic(&s.signature) {
                continue;
            }
            let listed = classes.classify(&s.signature).unwrap().arithmetic;
            assert_eq!(
                listed,
                arithmetic_by_gram_criterion(&s.signature),
                "{spec} {x} {}",
                s.signature
            );
        }
    }
}

#[test]
fn gram_criterion_agrees_with_dataset_on_small_signatures() {
    let classes = Classification::shipped();
    let vals: Vec<i64> = (2..=30).chain([0]).collect();
    for (i, &a) in vals.iter().enumerate() {
        for (j, &b) in vals.iter().enumerate().skip(i) {
            for &c in vals.iter().skip(j) {
                let s = sig(a, b, c);
                if !is_hyperbolic(&s) {
                    continue;
                }
                assert_eq!(
                    classes.classify(&s).unwrap().arithmetic,
                    arithmetic_by_gram_criterion(&s),
                    "{s}"
                );
            }
        }
    }
}

/// Galois elements of Q(ζ_N) fixing the field of the cos² and triple-product
/// generators, for a common modulus.
fn fixing_group(s: &TriangleSignature, n: i64) -> BTreeSet<i64> {
    let c = |j: i64| {
        s.entries().map(|e| match e.as_integer() {
            Some(a) => (std::f64::consts::PI * j as f64 / a as f64).cos(),
            None => 1.0,
        })
    };
    let gens = |c: [f64; 3]| [c[0] * c[0], c[1] * c[1], c[2] * c[2], c[0] * c[1] * c[2]];
    let base = gens(c(1));
    (1..n)
        .filter(|j| j.gcd(&n) == 1)
        .filter(|&j| {
            gens(c(j))
                .iter()
                .zip(&base)
                .all(|(x, y)| (x - y).abs() < 1e-9)
        })
        .collect()
}

#[test]
fn classes_share_fields_and_named_pairs_do_not() {
    let classes = Classification::shipped();
    let n = 2 * [16i64, 9, 5, 7, 11].iter().product::<i64>();
    let mut by_class: std::collections::BTreeMap<u32, BTreeSet<i64>> = Default::default();
    for e in classes.entries() {
        let g = fixing_group(&e.signature, n);
        if let Some(prev) = by_class.insert(e.class_id, g.clone()) {
            assert_eq!(prev, g, "{} differs from its class", e.signature);
        }
    }
    let pairs = [
        (sig(2, 3, 24), sig(2, 3, 8)),
        (sig(2, 6, 12), sig(2, 4, 6)),
        (sig(2, 6, 6), sig(4, 4, 6)),
        (sig(2, 4, 6), sig(3, 4, 12)),
    ];
    for (a, b) in pairs {
        assert!(
            classify_arithmetic(&a).unwrap().arithmetic
                && classify_arithmetic(&b).unwrap().arithmetic
        );
        assert_ne!(fixing_group(&a, n), fixing_group(&b, n), "{a} and {b}");
        assert!(!commensurable(&a, &b).unwrap());
    }
}

#[test]
fn classification_checksum() {
    assert_eq!(
        dmwb_core::data::checksum(dmwb_core::data::Dataset::TriangleClasses),
        include_str!("checksums/triangle_classes.sha256").trim()
    );
}

proptest! {
    #[test]
    fn stabilizer_is_label_equivariant(p in 2i64..40, k in 2i64..40, pp in 2i64..40, two in any::<bool>(), xi in 0usize..10) {
        let spec = if two { LatticeSpec::two(p, k, pp) } else { LatticeSpec::three(p, k) };
        let x = DivisorId::ALL[xi];
        for g in spec.symmetry_group() {
            let a = stabilizer(x, &spec).map(|s| s.signature.entries());
            let b = stabilizer(x.permute(&g), &spec).map(|s| s.signature.entries());
            prop_assert_eq!(a.is_ok(), b.is_ok());
            if let (Ok(a), Ok(b)) = (a, b) {
                prop_assert_eq!(a, b);
            }
        }
    }
}
