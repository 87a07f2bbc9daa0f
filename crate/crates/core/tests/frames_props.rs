//! Frame constructor properties over numerologies, duplex modes and random
//! TDD patterns.

use proptest::prelude::*;
use trsim::frames::{
    self, build_fdd_pair, build_tdd_frame, make_numerology, slot_census, validate_frame, Invariant, SlotKind,
    SubframeDirection, MAX_MU, SUBFRAMES_PER_FRAME,
};

fn pattern() -> impl Strategy<Value = Vec<SubframeDirection>> {
    let dir = prop_oneof![
        Just(SubframeDirection::Downlink),
        Just(SubframeDirection::Uplink),
        Just(SubframeDirection::Special),
    ];
    (prop::collection::vec(dir, SUBFRAMES_PER_FRAME), 0..SUBFRAMES_PER_FRAME).prop_map(|(mut p, sf)| {
        p[sf] = SubframeDirection::Superframe;
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tdd_frames_hold_their_invariants(mu in 0..=MAX_MU, p in pattern(), tr in any::<bool>()) {
        let num = make_numerology(mu).unwrap();
        let f = build_tdd_frame(num, &p, tr).unwrap();
        prop_assert!(validate_frame(&f).is_empty());
        let c = slot_census(&f);
        prop_assert_eq!(c.total(), num.slots_per_frame());
        prop_assert_eq!(c[SlotKind::Hold] + c[SlotKind::Release], 1);
        prop_assert_eq!(c[SlotKind::Hold] == 1, tr);
        if tr {
            prop_assert_eq!(c[SlotKind::Uplink], 0);
        }
        let other = build_tdd_frame(num, &p, !tr).unwrap();
        prop_assert_eq!(c[SlotKind::Downlink], slot_census(&other)[SlotKind::Downlink]);
    }

    #[test]
    fn fdd_pairs_hold_their_invariants(mu in 0..=MAX_MU, tr in any::<bool>()) {
        let num = make_numerology(mu).unwrap();
        let (dl, ul) = build_fdd_pair(num, tr);
        prop_assert!(validate_frame(&dl).is_empty());
        prop_assert!(validate_frame(&ul).is_empty());
        prop_assert_eq!(slot_census(&dl)[SlotKind::Uplink], 0);
        prop_assert_eq!(slot_census(&ul)[SlotKind::Downlink], 0);
        prop_assert_eq!(slot_census(&ul)[SlotKind::Uplink] == 0, tr);
        let (dl2, _) = build_fdd_pair(num, !tr);
        prop_assert_eq!(slot_census(&dl)[SlotKind::Downlink], slot_census(&dl2)[SlotKind::Downlink]);
    }

    #[test]
    fn pattern_text_round_trips(p in pattern()) {
        let text = frames::pattern_string(&p);
        prop_assert_eq!(frames::parse_tdd_pattern(&text, 0).unwrap(), p);
    }
}

#[test]
fn uplink_slot_in_tr_frame_is_flagged() {
    let num = make_numerology(1).unwrap();
    let p = frames::parse_tdd_pattern("DSUUU-DSUUU", 1).unwrap();
    let mut f = build_tdd_frame(num, &p, true).unwrap();
    f.subframes[3][1] = SlotKind::Uplink;
    let v = validate_frame(&f);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].invariant, Invariant::UplinkWhileTrActive);
    assert_eq!(v[0].to_string(), "UplinkWhileTrActive at subframe 3 slot 1");
}

#[test]
fn lte_pattern_has_expected_census() {
    let num = make_numerology(0).unwrap();
    let p = frames::parse_tdd_pattern("DSUUU-DSUUU", 1).unwrap();
    assert_eq!(frames::pattern_string(&p), "DXUUUDSUUU");
    let am = slot_census(&build_tdd_frame(num, &p, false).unwrap());
    assert_eq!(am[SlotKind::Uplink], 6);
    assert_eq!(am[SlotKind::Release], 1);
    let tr = slot_census(&build_tdd_frame(num, &p, true).unwrap());
    assert_eq!(tr[SlotKind::Uplink], 0);
    assert_eq!(tr[SlotKind::Hold], 1);
}
