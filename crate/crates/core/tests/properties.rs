use std::collections::{BTreeMap, BTreeSet};

use motif_core::*;
use num_bigint::BigUint;
use proptest::prelude::*;

/// Cell labels per column: `0..l` name a block, `l` marks a constant.
fn spec_from_labels(l: usize, labels: &[Vec<usize>], consts: &[Vec<i64>]) -> MotifSpec {
    let mut partitions = Vec::new();
    let mut constants = Vec::new();
    for (m, col) in labels.iter().enumerate() {
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &lab) in col.iter().enumerate() {
            if lab == l {
                constants.push((i + 1, m + 1, CoordValue::integer(consts[m][i])));
            } else {
                blocks.entry(lab).or_default().push(i + 1);
            }
        }
        partitions.push(blocks.into_values().collect());
    }
    validate_spec(&RawSpec {
        l,
        p: labels.len(),
        partitions,
        constants,
    })
    .unwrap()
}

fn arb_spec(max_l: usize, max_p: usize, with_constants: bool) -> impl Strategy<Value = MotifSpec> {
    (1..=max_l, 1..=max_p).prop_flat_map(move |(l, p)| {
        let top = if with_constants { l + 1 } else { l };
        (
            Just(l),
            prop::collection::vec(prop::collection::vec(0..top, l), p),
            prop::collection::vec(prop::collection::vec(0i64..3, l), p),
        )
            .prop_map(|(l, labels, consts)| spec_from_labels(l, &labels, &consts))
    })
}

/// Coordinates drawn from `{0, 1/2, 1, 3/2, 2}` so collisions are common.
fn arb_set(p: usize, max_r: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set(prop::collection::vec(0i64..5, p), 0..=max_r).prop_map(move |pts| {
        let pts = pts
            .iter()
            .map(|c| Point(c.iter().map(|&h| CoordValue::ratio(h, 2)).collect()))
            .collect();
        PointSet::new(p, pts).unwrap()
    })
}

fn arb_pair(
    max_l: usize,
    max_p: usize,
    max_r: usize,
) -> impl Strategy<Value = (MotifSpec, PointSet)> {
    arb_spec(max_l, max_p, true).prop_flat_map(move |s| {
        let p = s.dim();
        (Just(s), arb_set(p, max_r))
    })
}

fn relabel(v: &CoordValue, m: usize) -> CoordValue {
    let scale = [3i64, -2, 5, 7][m % 4];
    let shift = [1i64, 4, -6, 0][m % 4];
    CoordValue::new(
        v.as_rational() * Rational::from_integer(scale.into())
            + Rational::from_integer(shift.into()),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn join_agrees_with_naive((spec, set) in arb_pair(4, 4, 12)) {
        prop_assert_eq!(count_motifs_join(&spec, &set).unwrap(), count_motifs_naive(&spec, &set).unwrap());
    }

    #[test]
    fn counts_grow_under_insertion((spec, set) in arb_pair(3, 3, 8), extra in prop::collection::vec(0i64..4, 3)) {
        let before = count_motifs_join(&spec, &set).unwrap();
        let mut bigger = set.clone();
        bigger.insert(Point::from_ints(&extra[..spec.dim()]));
        prop_assert!(count_motifs_join(&spec, &bigger).unwrap() >= before);
    }

    #[test]
    fn counts_survive_injective_relabeling((spec, set) in arb_pair(4, 3, 8)) {
        let mut raw = spec.to_raw();
        for c in &mut raw.constants {
            c.2 = relabel(&c.2, c.1 - 1);
        }
        let spec2 = validate_spec(&raw).unwrap();
        let set2 = PointSet::new(
            set.dim(),
            set.iter()
                .map(|p| Point(p.coords().iter().enumerate().map(|(m, v)| relabel(v, m)).collect()))
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(count_motifs_join(&spec, &set).unwrap(), count_motifs_join(&spec2, &set2).unwrap());
    }

    #[test]
    fn upper_bound_holds((spec, set) in arb_pair(4, 4, 10)) {
        let rep = verify_upper_bound(&spec, &set).unwrap();
        prop_assert!(rep.holds, "count {} exceeds {}^{}", rep.count, rep.r, rep.tau);
    }

    #[test]
    fn strong_duality(spec in arb_spec(5, 4, true)) {
        let h = build_hypergraph(&spec);
        let cert = duality_certificate(&h).unwrap();
        prop_assert_eq!(&cert.tau, &cert.nu);
        prop_assert!(cert.transversal.is_feasible(&h));
        prop_assert!(cert.matching.is_feasible(&h));
        if cert.nu > Rational::from_integer(0.into()) {
            let one = Rational::from_integer(1.into());
            prop_assert!(cert.matching.loads(&h).contains(&one));
        }
        let (nu_b, balanced) = balanced_matching(&h);
        prop_assert_eq!(&nu_b, &cert.nu);
        prop_assert!(balanced.is_feasible(&h));
        // merging parallel edges changes neither optimum
        let (tau_d, _) = fractional_transversal(&h.dedup());
        prop_assert_eq!(tau_d, cert.tau);
    }

    #[test]
    fn matching_construction_sandwich(spec in arb_spec(4, 3, true), m in 1u64..=3) {
        match matching_construction_limited(&spec, m, 300) {
            Ok(c) => {
                let count = count_motifs_join(&spec, &c.points).unwrap();
                prop_assert!(count >= c.guarantee);
                let rep = verify_upper_bound(&spec, &c.points).unwrap();
                prop_assert!(rep.holds);
            }
            Err(ConstructionError::MatchingIsZero { fallback }) => {
                prop_assert_eq!(count_motifs_join(&spec, &fallback).unwrap(), BigUint::from(1u32));
            }
            Err(ConstructionError::TooLarge { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

fn starred_specs() -> Vec<MotifSpec> {
    let raw = |l: usize, p: usize, parts: Vec<Vec<Vec<usize>>>| {
        validate_spec(&RawSpec {
            l,
            p,
            partitions: parts,
            constants: Vec::new(),
        })
        .unwrap()
    };
    vec![
        raw(
            3,
            3,
            vec![
                vec![vec![1, 2], vec![3]],
                vec![vec![1, 3], vec![2]],
                vec![vec![1], vec![2, 3]],
            ],
        ),
        raw(2, 2, vec![vec![vec![1, 2]], vec![vec![1], vec![2]]]),
        raw(
            2,
            3,
            vec![vec![vec![1, 2]], vec![vec![1, 2]], vec![vec![1], vec![2]]],
        ),
        raw(
            4,
            2,
            vec![
                vec![vec![1, 2], vec![3], vec![4]],
                vec![vec![1], vec![2], vec![3, 4]],
            ],
        ),
    ]
}

/// Centers by brute force over every assignment of the shared blocks to
/// values present in their column.
fn brute_centers(spec: &MotifSpec, set: &PointSet) -> BTreeSet<Vec<CoordValue>> {
    let l = spec.tuple_len() as u128;
    let m1 = l * (l.pow(l as u32) + 1);
    let m = (2 * m1).pow(l as u32 - 1) * l * l + 1;
    let r = set.len() as u128;
    let shared: Vec<(BlockId, usize)> = spec
        .blocks()
        .filter(|(_, _, mem)| mem.len() > 1)
        .map(|(id, col, _)| (id, col))
        .collect();
    let domains: Vec<Vec<CoordValue>> = shared
        .iter()
        .map(|&(_, col)| {
            set.iter()
                .map(|p| p.0[col].clone())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    if set.is_empty() {
        return out;
    }
    let mut idx = vec![0usize; shared.len()];
    loop {
        let v: Vec<CoordValue> = idx
            .iter()
            .zip(&domains)
            .map(|(&i, d)| d[i].clone())
            .collect();
        let heavy = (0..spec.tuple_len())
            .filter(|&j| {
                let n = set
                    .iter()
                    .filter(|w| {
                        (0..spec.dim()).all(|col| {
                            let b = spec.block_at(j, col).unwrap();
                            match shared.iter().position(|&(id, _)| id == b) {
                                Some(x) => w.0[col] == v[x],
                                None => true,
                            }
                        })
                    })
                    .count() as u128;
                n * m >= r
            })
            .count() as u128;
        if heavy + 1 >= l {
            out.insert(v);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < domains[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn centers_match_brute_force(which in 0usize..4, pts in prop::collection::btree_set(prop::collection::vec(0i64..4, 3), 0..9)) {
        let spec = &starred_specs()[which];
        let p = spec.dim();
        let set = PointSet::from_unique(p, pts.iter().map(|c| Point::from_ints(&c[..p])));
        let centers = enumerate_centers(spec, &set).unwrap();
        let got: BTreeSet<_> = centers.iter().map(|c| c.assignment.clone()).collect();
        prop_assert_eq!(got, brute_centers(spec, &set));
        let th = thresholds(spec.tuple_len());
        prop_assert!(BigUint::from(centers.len()) <= th.center_bound(spec.tuple_len()));
        // every hypercenter is a center
        for c in &centers {
            let r = BigUint::from(set.len());
            let all_heavy = c.line_counts.iter().all(|&n| BigUint::from(n) * &th.m1 >= r);
            prop_assert_eq!(all_heavy, c.is_hypercenter);
        }
    }

    #[test]
    fn relocation_never_loses_motifs(which in 0usize..4, pts in prop::collection::btree_set(prop::collection::vec(0i64..5, 3), 1..8)) {
        let spec = &starred_specs()[which];
        let p = spec.dim();
        let set = PointSet::from_unique(p, pts.iter().map(|c| Point::from_ints(&c[..p])));
        let out = relocation_improve(spec, &set, 6).unwrap();
        prop_assert_eq!(out.len(), set.len());
        prop_assert!(count_motifs_naive(spec, &out).unwrap() >= count_motifs_naive(spec, &set).unwrap());
    }

    #[test]
    fn line_unions_meet_their_guarantee(which in 0usize..4, r in 4usize..20) {
        let spec = &starred_specs()[which];
        let c = single_starred_construction(spec, r).unwrap();
        prop_assert_eq!(c.points.len(), r);
        let count = count_motifs_join(spec, &c.points).unwrap();
        prop_assert!(count >= c.guarantee);
        // guarantee = C (L N)^L
        let prof = star_profile(spec).unwrap();
        let l = spec.tuple_len();
        let ln = Rational::from_integer(((l * c.n) as i64).into());
        let mut lhs = Rational::from_integer(1.into());
        for _ in 0..l {
            lhs *= &ln;
        }
        prop_assert_eq!(lhs * &prof.constant, Rational::from_integer(c.guarantee.clone().into()));
    }
}

#[test]
fn corner_six_points_count_twenty() {
    let spec = &starred_specs()[0];
    let set = single_starred_construction(spec, 6).unwrap().points;
    assert_eq!(
        count_motifs_naive(spec, &set).unwrap(),
        BigUint::from(20u32)
    );
    assert_eq!(count_motifs_join(spec, &set).unwrap(), BigUint::from(20u32));
}
