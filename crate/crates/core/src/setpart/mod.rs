//! Labeled set partitions, crossings, parabolic indices and enumeration.

mod enumerate;
mod index;
mod parse;
mod partition;

pub use enumerate::{
    count_sn, count_sn_symbolic, enumerate, enumerate_n, enumerate_parts, rgs_blocks, set_partitions,
    LabeledPartitions, RestrictedGrowth,
};
pub use index::{PartitionIndex, TwoBlock};
pub use parse::parse_subset;
pub use partition::{Arc, LabeledSetPartition, SuperclassLabel};

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::qcoeff::FieldElem;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    /// Random labeled partition of `{1..n}` built from a block assignment.
    fn arb_partition(max_n: u32, p: u32) -> impl Strategy<Value = LabeledSetPartition> {
        (0..=max_n).prop_flat_map(move |n| {
            (
                proptest::collection::vec(0..n.max(1), n as usize),
                proptest::collection::vec(1..p, n as usize),
            )
                .prop_map(move |(blocks, labels)| {
                    let mut arcs = Vec::new();
                    for b in 0..n.max(1) {
                        let members: Vec<u32> =
                            (1..=n).filter(|&v| blocks[v as usize - 1] == b).collect();
                        for w in members.windows(2) {
                            let lab = labels[w[0] as usize - 1] as i64;
                            arcs.push(Arc::new(w[0], w[1], FieldElem::new(lab, p)));
                        }
                    }
                    LabeledSetPartition::on_n(n, arcs).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn standardize_preserves_crossings(x in arb_partition(9, 3), shift in 0u32..4) {
            let spread: Vec<u32> = x.support().iter().map(|v| 2 * v + shift).collect();
            let moved = x.standardize().transport_onto(&spread.iter().copied().collect()).unwrap();
            prop_assert_eq!(moved.crossings().len(), x.crossings().len());
            prop_assert_eq!(moved.standardize(), x.clone());
        }

        #[test]
        fn reflect_is_an_involution(x in arb_partition(9, 3)) {
            let r = x.reflect().unwrap();
            prop_assert_eq!(r.crossings().len(), x.crossings().len());
            prop_assert_eq!(r.reflect().unwrap(), x);
        }

        #[test]
        fn parts_reconstruct_arcs(x in arb_partition(9, 2)) {
            let rebuilt: Vec<(u32, u32)> = {
                let mut v: Vec<_> = x.parts().iter()
                    .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
                    .collect();
                v.sort();
                v
            };
            let arcs: Vec<(u32, u32)> = x.arcs().iter().map(|a| a.endpoints()).collect();
            prop_assert_eq!(rebuilt, arcs);
            let covered: usize = x.parts().iter().map(Vec::len).sum();
            prop_assert_eq!(covered, x.support().len());
        }

        #[test]
        fn extend_then_standardize_is_identity(x in arb_partition(8, 5)) {
            let n = x.n();
            prop_assert_eq!(x.extend(1..=n).unwrap().standardize(), x.clone());
        }

        #[test]
        fn text_round_trip(x in arb_partition(9, 5)) {
            prop_assert_eq!(LabeledSetPartition::parse(&x.to_string(), 5).unwrap(), x);
        }

        #[test]
        fn validator_matches_degree_condition(
            n in 1u32..7,
            raw in proptest::collection::vec((1u32..7, 1u32..7), 0..6),
        ) {
            let arcs: Vec<Arc> = raw.iter()
                .filter(|(a, b)| a < b && *b <= n)
                .map(|&(a, b)| Arc::new(a, b, FieldElem::new(1, 2)))
                .collect();
            let mut lefts: Vec<u32> = arcs.iter().map(|a| a.left).collect();
            let mut rights: Vec<u32> = arcs.iter().map(|a| a.right).collect();
            lefts.sort();
            rights.sort();
            let ok = lefts.windows(2).all(|w| w[0] != w[1]) && rights.windows(2).all(|w| w[0] != w[1]);
            prop_assert_eq!(LabeledSetPartition::on_n(n, arcs).is_ok(), ok);
        }
    }

    #[test]
    fn union_k_never_loses_crossings() {
        for total in 0..=7u32 {
            for m in 0..=total {
                let lams: Vec<_> = enumerate_n(m, 2).unwrap().collect();
                let mus: Vec<_> = enumerate_n(total - m, 2).unwrap().collect();
                for k in TwoBlock::all(m, total - m) {
                    for l in &lams {
                        for u in &mus {
                            let j = LabeledSetPartition::union_k(l, u, &k).unwrap();
                            assert!(j.crossings().len() >= l.crossings().len() + u.crossings().len());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn count_matches_enumeration() {
        for n in 0..=6 {
            for p in [2u32, 3, 5] {
                let got = enumerate_n(n, p).unwrap().count();
                assert_eq!(BigInt::from(got), count_sn(n, &BigInt::from(p)), "n={n} p={p}");
            }
        }
    }
}
