use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use superchar::ncsym::{m_from_p, p_from_m, star_k_p, star_k_product, Basis, NCSymElem};
use superchar::qcoeff::{Cyclotomic, FieldElem};
use superchar::ring::{
    inner_product, restrict, restrict_between, restrict_combo, superinduce, tensor, value_in, CharCombo,
};
use superchar::setpart::{set_partitions, Arc, LabeledSetPartition, PartitionIndex, TwoBlock};

fn arb_lsp(n: u32, p: u32) -> impl Strategy<Value = LabeledSetPartition> {
    (
        proptest::collection::vec(0..n.max(1), n as usize),
        proptest::collection::vec(1..p, n as usize),
    )
        .prop_map(move |(blocks, labels)| {
            let mut arcs = Vec::new();
            for b in 0..n.max(1) {
                let members: Vec<u32> = (1..=n).filter(|&v| blocks[v as usize - 1] == b).collect();
                for w in members.windows(2) {
                    arcs.push(Arc::new(w[0], w[1], FieldElem::new(labels[w[0] as usize - 1] as i64, p)));
                }
            }
            LabeledSetPartition::on_n(n, arcs).unwrap()
        })
}

fn arb_index(n: u32) -> impl Strategy<Value = PartitionIndex> {
    proptest::collection::vec(0..n.max(1), n as usize).prop_map(move |blocks| {
        let parts = (0..n.max(1))
            .map(|b| (1..=n).filter(|&v| blocks[v as usize - 1] == b).collect::<Vec<_>>())
            .filter(|p| !p.is_empty());
        PartitionIndex::new(n, parts).unwrap()
    })
}

fn reflect_combo(x: &CharCombo) -> CharCombo {
    let mut out = CharCombo::zero(x.ambient().reflect(), x.p()).unwrap();
    for (lam, c) in x.terms() {
        out.add_term(lam.reflect().unwrap(), c).unwrap();
    }
    out
}

fn pair(max_n: u32) -> impl Strategy<Value = (LabeledSetPartition, LabeledSetPartition, u32)> {
    (1..=max_n, prop_oneof![Just(2u32), Just(3u32)])
        .prop_flat_map(|(n, p)| (arb_lsp(n, p), arb_lsp(n, p), Just(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn tensor_commutes_and_multiplies_values((x, y, p) in pair(6)) {
        let cx = CharCombo::chi_n(x.clone(), p).unwrap();
        let cy = CharCombo::chi_n(y.clone(), p).unwrap();
        let xy = tensor(&cx, &cy).unwrap();
        prop_assert_eq!(xy.specialize(), tensor(&cy, &cx).unwrap().specialize());
        for mu in [x.clone(), y.clone(), LabeledSetPartition::empty_n(x.n())] {
            let want = &cx.value_at(&mu).unwrap() * &cy.value_at(&mu).unwrap();
            prop_assert_eq!(xy.value_at(&mu).unwrap(), want);
        }
    }

    #[test]
    fn values_are_mirror_symmetric((x, y, p) in pair(6)) {
        let whole = PartitionIndex::whole(x.n());
        prop_assert_eq!(
            value_in(&x, &y, &whole, p).unwrap(),
            value_in(&x.reflect().unwrap(), &y.reflect().unwrap(), &whole, p).unwrap()
        );
    }

    #[test]
    fn restriction_commutes_with_reflection(
        (lam, k, p) in (1u32..=6, prop_oneof![Just(2u32), Just(3u32)])
            .prop_flat_map(|(n, p)| (arb_lsp(n, p), arb_index(n), Just(p)))
    ) {
        let direct = reflect_combo(&restrict(&lam, &k, p).unwrap());
        let mirrored = restrict(&lam.reflect().unwrap(), &k.reflect(), p).unwrap();
        prop_assert_eq!(direct, mirrored);
    }

    #[test]
    fn tensor_commutes_with_reflection((x, y, p) in pair(5)) {
        let t = tensor(&CharCombo::chi_n(x.clone(), p).unwrap(), &CharCombo::chi_n(y.clone(), p).unwrap()).unwrap();
        let r = tensor(
            &CharCombo::chi_n(x.reflect().unwrap(), p).unwrap(),
            &CharCombo::chi_n(y.reflect().unwrap(), p).unwrap(),
        ).unwrap();
        prop_assert_eq!(reflect_combo(&t).specialize(), r.specialize());
    }

    #[test]
    fn restriction_is_transitive(
        (lam, k, l, p) in (1u32..=6, prop_oneof![Just(2u32), Just(3u32)])
            .prop_flat_map(|(n, p)| (arb_lsp(n, p), arb_index(n), arb_index(n), Just(p)))
    ) {
        // meet of k and l sits below both
        let n = lam.n();
        let meet = PartitionIndex::new(
            n,
            k.parts().iter().flat_map(|a| l.parts().iter().map(move |b| {
                a.iter().copied().filter(|v| b.contains(v)).collect::<Vec<_>>()
            })).filter(|x| !x.is_empty()),
        ).unwrap();
        let two_step = restrict_combo(&restrict(&lam, &k, p).unwrap(), &meet).unwrap();
        let one_step = restrict_between(&lam, &PartitionIndex::whole(n), &meet, p).unwrap();
        prop_assert_eq!(two_step.specialize(), one_step.specialize());
    }

    #[test]
    fn superinduction_scales_degrees(
        (mu, k, p) in (1u32..=5, prop_oneof![Just(2u32), Just(3u32)])
            .prop_flat_map(|(n, p)| (arb_index(n), Just(p)))
            .prop_flat_map(|(k, p)| {
                let n = k.n();
                (arb_lsp(n, p), Just(k), Just(p))
            })
            .prop_filter("fits K", |(mu, k, _)| mu.fits(k))
    ) {
        let n = k.n();
        let induced = superinduce(&mu, &k, p).unwrap();
        let at_one = induced.value_at(&LabeledSetPartition::empty_n(n)).unwrap();
        let deg = CharCombo::chi(mu.clone(), k.clone(), p).unwrap()
            .value_at(&LabeledSetPartition::empty_n(n)).unwrap();
        let index = BigRational::from_integer(BigInt::from(p).pow(PartitionIndex::whole(n).dimension() - k.dimension()));
        prop_assert_eq!(at_one, deg.scale(&index));
    }

    #[test]
    fn inner_products_of_distinct_supercharacters_vanish((x, y, p) in pair(6)) {
        let ip = inner_product(&CharCombo::chi_n(x.clone(), p).unwrap(), &CharCombo::chi_n(y.clone(), p).unwrap()).unwrap();
        if x == y {
            prop_assert_eq!(ip.as_q_power(), Some(x.crossings().len() as i32));
        } else {
            prop_assert!(ip.is_zero());
        }
    }

    #[test]
    fn combos_round_trip_through_text_and_json((x, y, p) in pair(5)) {
        let t = tensor(&CharCombo::chi_n(x, p).unwrap(), &CharCombo::chi_n(y, p).unwrap()).unwrap();
        prop_assert_eq!(&CharCombo::parse(&t.to_string()).unwrap(), &t);
        prop_assert_eq!(&CharCombo::from_json(&t.to_json()).unwrap(), &t);
    }
}

fn arb_ncsym(n: u32) -> impl Strategy<Value = NCSymElem> {
    let shapes: Vec<PartitionIndex> = set_partitions(n as usize).map(|b| PartitionIndex::new(n, b).unwrap()).collect();
    let len = shapes.len();
    (proptest::collection::vec(-3i64..=3, len), prop_oneof![Just(Basis::M), Just(Basis::P)]).prop_map(move |(cs, basis)| {
        NCSymElem::from_terms(
            basis,
            n,
            shapes.iter().cloned().zip(cs.into_iter().map(|c| BigRational::from_integer(c.into()))),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_changes_invert(x in (0u32..=5).prop_flat_map(arb_ncsym)) {
        prop_assert_eq!(m_from_p(&p_from_m(&x)).to_basis(x.basis()), x.clone());
        prop_assert_eq!(p_from_m(&m_from_p(&x)).to_basis(x.basis()), x);
    }

    #[test]
    fn word_products_match_the_p_route(
        (x, y, k) in (0u32..=3, 0u32..=2)
            .prop_flat_map(|(m, n)| (arb_ncsym(m), arb_ncsym(n), proptest::sample::select(TwoBlock::all(m, n))))
    ) {
        let slow = star_k_product(&x, &y, &k).unwrap().to_basis(Basis::P);
        prop_assert_eq!(slow, star_k_p(&x, &y, &k).unwrap());
    }
}

#[test]
fn trivial_character_restricts_to_trivial() {
    for n in 1..=5u32 {
        for b in set_partitions(n as usize) {
            let k = PartitionIndex::new(n, b).unwrap();
            let r = restrict(&LabeledSetPartition::empty_n(n), &k, 3).unwrap();
            assert_eq!(r, CharCombo::trivial(k, 3).unwrap());
        }
    }
}

#[test]
fn one_value_is_degree() {
    let lam = LabeledSetPartition::parse("n=5; 1-4:1, 2-5:2", 3).unwrap();
    let v = value_in(&lam, &LabeledSetPartition::empty_n(5), &PartitionIndex::whole(5), 3).unwrap();
    // q^{2} · q^{2}
    assert_eq!(v, Cyclotomic::from_int(3, 81));
}
