use motif_cli::{parse_points, parse_spec, write_points, write_spec};
use motif_core::{validate_spec, CoordValue, Point, PointSet, RawSpec};
use proptest::prelude::*;

fn arb_raw() -> impl Strategy<Value = RawSpec> {
    (1..=4usize, 1..=3usize).prop_flat_map(|(l, p)| {
        // label == l marks a constant cell
        let labels = prop::collection::vec(prop::collection::vec(0..=l, l), p);
        let values = prop::collection::vec((-6i64..6, 1i64..4), l * p);
        (Just((l, p)), labels, values).prop_map(|((l, p), labels, values)| {
            let mut partitions = Vec::new();
            let mut constants = Vec::new();
            for (m, col) in labels.iter().enumerate() {
                let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); l];
                for (i, &b) in col.iter().enumerate() {
                    if b == l {
                        let (n, d) = values[m * l + i];
                        constants.push((i + 1, m + 1, CoordValue::ratio(n, d)));
                    } else {
                        blocks[b].push(i + 1);
                    }
                }
                partitions.push(blocks.into_iter().filter(|b| !b.is_empty()).collect());
            }
            RawSpec {
                l,
                p,
                partitions,
                constants,
            }
        })
    })
}

fn arb_points() -> impl Strategy<Value = PointSet> {
    (1..=4usize).prop_flat_map(|p| {
        prop::collection::btree_set(prop::collection::vec((-9i64..9, 1i64..5), p), 0..8).prop_map(
            move |pts| {
                let pts = pts.into_iter().map(|c| {
                    Point(
                        c.into_iter()
                            .map(|(n, d)| CoordValue::ratio(n, d))
                            .collect(),
                    )
                });
                let mut set = PointSet::empty(p);
                for pt in pts {
                    set.insert(pt);
                }
                set
            },
        )
    })
}

proptest! {
    #[test]
    fn spec_files_round_trip(raw in arb_raw()) {
        let spec = validate_spec(&raw).unwrap();
        let text = write_spec(&spec);
        prop_assert_eq!(parse_spec(&text).unwrap(), spec);
        prop_assert_eq!(write_spec(&parse_spec(&text).unwrap()), text);
    }

    #[test]
    fn point_files_round_trip(set in arb_points()) {
        let text = write_points(&set);
        prop_assert_eq!(parse_points(&text).unwrap(), set);
    }
}
