use maskswap_core::{
    fidelity, ghz, BasisLabel, BellLabel, CatLabel, GhzLabel, MaxEntLabel, OutcomeDistribution, PhaseAmplitudeInput,
    PureState, QuditAmplitudes, Sign,
};
use maskswap_oracle::{compare, compare_distributions, simulate_swap, ComparisonReport};
use maskswap_swapping::*;
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn against_oracle(p: &Prediction) -> ComparisonReport {
    let oracle = simulate_swap(p.scenario()).unwrap();
    assert!((oracle.total_probability - 1.0).abs() < TOL);
    compare(&p.distribution().unwrap(), &oracle, TOL)
}

fn assert_agrees(p: &Prediction) {
    let report = against_oracle(p);
    assert!(report.verdict, "{}: {:?}", p.provenance(), report.failing_rows().collect::<Vec<_>>());
}

fn bell_label(bits: u8) -> (BellLabel, BellLabel) {
    (BellLabel::new(bits >> 3 & 1, bits >> 2 & 1).unwrap(), BellLabel::new(bits >> 1 & 1, bits & 1).unwrap())
}

fn cat(bits: &[u8], lambda: u8) -> CatLabel {
    CatLabel::new(bits.to_vec(), lambda).unwrap()
}

fn me(d: usize, u: &[usize]) -> MaxEntLabel {
    MaxEntLabel::new(d, u.to_vec()).unwrap()
}

/// `φ(u₁, u₂)` at d = 2 is the Bell state with sign `u₁` and bit `u₂`.
fn qubit_pair_as_bell(label: &BasisLabel) -> BasisLabel {
    let BasisLabel::MaxEnt(m) = label else { panic!("max-entangled label expected") };
    BasisLabel::Ghz(GhzLabel::new(Sign::from_bit(m.u()[0] as u8), vec![m.u()[1] as u8]).unwrap())
}

/// Same outcomes after relabeling, with matching probabilities and remainders.
fn assert_same_after_relabel(
    a: &OutcomeDistribution,
    b: &OutcomeDistribution,
    relabel: impl Fn(&BasisLabel) -> BasisLabel,
) {
    assert_eq!(a.len(), b.len());
    for o in a.outcomes() {
        let other = b.get(&relabel(&o.label)).expect("relabeled outcome present");
        assert!((a.probability(o) - b.probability(other)).abs() < TOL);
        assert!(fidelity(o.remainder.state(), other.remainder.state()).unwrap() > 1.0 - TOL);
    }
}

#[test]
fn bell_bell_matches_oracle_for_all_labels() {
    for bits in 0..16 {
        let (l1, l2) = bell_label(bits);
        let p = predict_bell_bell(l1, l2).unwrap();
        let report = against_oracle(&p);
        assert!(report.verdict, "{l1:?} {l2:?}");
        assert_eq!(report.rows.len(), 4);
        assert!(report.max_probability_deviation < 1e-12);
    }
}

#[test]
fn bell_pairs_as_cats_reproduce_bell_bell() {
    for bits in 0..16 {
        let (l1, l2) = bell_label(bits);
        let cats = [cat(&[0, l1.a], l1.lambda), cat(&[0, l2.a], l2.lambda)];
        let from_cats = predict_cat_swap(&cats, &[1, 1]).unwrap();
        let from_bells = predict_bell_bell(l1, l2).unwrap();
        let report =
            compare_distributions(&from_cats.distribution().unwrap(), &from_bells.distribution().unwrap(), TOL);
        assert!(report.verdict, "{l1:?} {l2:?}");
    }
}

#[test]
fn three_particle_cats_with_equal_phase_give_same_sign_pairs() {
    let p = predict_cat_swap(&[cat(&[0, 0, 0], 0), cat(&[0, 0, 0], 0)], &[1, 2]).unwrap();
    assert_agrees(&p);
    let dist = p.distribution().unwrap();
    assert_eq!(dist.len(), 4);
    for o in p.outcomes() {
        let (BasisLabel::Ghz(m), StateForm::Cat { sign, .. }) = (&o.label, &o.remainder) else { unreachable!() };
        assert_eq!(m.sign(), *sign);
    }
    for o in dist.outcomes() {
        assert!((dist.probability(o) - 0.25).abs() < TOL);
    }
}

#[test]
fn three_particle_cats_with_opposite_phase_give_mixed_pairs() {
    let p = predict_cat_swap(&[cat(&[0, 0, 0], 0), cat(&[0, 0, 0], 1)], &[1, 1]).unwrap();
    assert_agrees(&p);
    for o in p.outcomes() {
        let (BasisLabel::Ghz(m), StateForm::Cat { sign, .. }) = (&o.label, &o.remainder) else { unreachable!() };
        assert_ne!(m.sign(), *sign);
    }
}

#[test]
fn non_canonical_cat_labels_match_oracle() {
    let p = predict_cat_swap(&[cat(&[1, 0, 1], 1), cat(&[1, 1], 1), cat(&[0, 1, 1], 0)], &[2, 1, 1]).unwrap();
    assert_agrees(&p);
}

#[test]
fn qubit_phi_plus_pair_swap_is_uniform() {
    let p = predict_cat_bell_karimipour(&me(2, &[0, 0]), &me(2, &[0, 0]), 2).unwrap();
    assert_agrees(&p);
    let dist = p.distribution().unwrap();
    assert_eq!(dist.len(), 4);
    for o in dist.outcomes() {
        assert!((dist.probability(o) - 0.25).abs() < TOL);
    }
}

#[test]
fn qutrit_pair_swap_has_nine_equal_outcomes() {
    let p = predict_cat_bell_karimipour(&me(3, &[0, 0]), &me(3, &[0, 0]), 2).unwrap();
    assert_agrees(&p);
    let dist = p.distribution().unwrap();
    assert_eq!(dist.len(), 9);
    for o in dist.outcomes() {
        assert!((dist.probability(o) - 1.0 / 9.0).abs() < TOL);
    }
}

#[test]
fn clear_form_at_d2_matches_bell_bell() {
    let clear = predict_cat_bell_clear(&me(2, &[0, 0]), &me(2, &[0, 0]), 1).unwrap();
    let bells = predict_bell_bell(BellLabel::new(0, 0).unwrap(), BellLabel::new(0, 0).unwrap()).unwrap();
    assert_same_after_relabel(&clear.distribution().unwrap(), &bells.distribution().unwrap(), qubit_pair_as_bell);
}

#[test]
fn first_particle_of_the_cat_can_be_measured() {
    for d in [2, 3, 5] {
        let p = predict_cat_bell_clear(&me(d, &[1, d - 1, 2 % d]), &me(d, &[d - 1, 1]), 1).unwrap();
        assert_agrees(&p);
        let k = predict_cat_bell_karimipour(&me(d, &[1, d - 1, 2 % d]), &me(d, &[d - 1, 1]), 1).unwrap();
        assert_agrees(&k);
    }
}

#[test]
fn masked_ghz_examples() {
    let even = predict_masked_ghz_swap(&[0, 0]).unwrap();
    assert_agrees(&even);
    let pairs: Vec<String> = even
        .outcomes()
        .iter()
        .map(|o| match &o.remainder {
            StateForm::Ghz(r) => format!("{}{}", o.label, r),
            _ => unreachable!(),
        })
        .collect();
    assert_eq!(pairs, ["phi+phi+", "phi-phi-", "psi+psi+", "psi-psi-"]);

    let odd = predict_masked_ghz_swap(&[0, 1]).unwrap();
    assert_agrees(&odd);
    let pairs: Vec<String> = odd
        .outcomes()
        .iter()
        .map(|o| match &o.remainder {
            StateForm::Ghz(r) => format!("{}{}", o.label, r),
            _ => unreachable!(),
        })
        .collect();
    assert_eq!(pairs, ["phi+phi-", "phi-phi+", "psi+psi-", "psi-psi+"]);

    let four = predict_masked_ghz_swap(&[1, 1, 0, 1]).unwrap();
    assert_agrees(&four);
}

#[test]
fn uniform_qubit_masked_swap_matches_ghz_form() {
    let u = PhaseAmplitudeInput::uniform(2).unwrap();
    let qudit = predict_masked_qudit_swap(&[u.clone(), u]).unwrap();
    assert_agrees(&qudit);
    let ghz_form = predict_masked_ghz_swap(&[0, 0]).unwrap();
    assert_same_after_relabel(&qudit.distribution().unwrap(), &ghz_form.distribution().unwrap(), qubit_pair_as_bell);
}

#[test]
fn uniform_qutrit_masked_swap_leaves_maximally_entangled_pairs() {
    let u = PhaseAmplitudeInput::uniform(3).unwrap();
    let p = predict_masked_qudit_swap(&[u.clone(), u]).unwrap();
    assert_agrees(&p);
    let dist = p.distribution().unwrap();
    assert_eq!(dist.len(), 9);
    for o in dist.outcomes() {
        assert!((dist.probability(o) - 1.0 / 9.0).abs() < TOL);
        for amp in o.remainder.state().amplitudes() {
            let n = amp.norm_sqr();
            assert!(n < 1e-12 || (n - 1.0 / 3.0).abs() < 1e-12);
        }
    }
}

#[test]
fn li_masked_basis_inputs() {
    for k in 0..2 {
        let e = QuditAmplitudes::basis(2, k).unwrap();
        let p = predict_li_masked_swap(&[e.clone(), e]).unwrap();
        assert_agrees(&p);
    }
    let e = QuditAmplitudes::basis(3, 1).unwrap();
    assert_agrees(&predict_li_masked_swap(&[e.clone(), e]).unwrap());
}

#[test]
fn to_state_examples() {
    let p = predict_bell_bell(BellLabel::new(0, 0).unwrap(), BellLabel::new(0, 0).unwrap()).unwrap();
    let phi_plus = p.outcomes().iter().find(|o| o.label.to_string() == "phi+").unwrap();
    let (m, r) = to_state(phi_plus, p.scenario()).unwrap();
    assert_eq!((m.positions(), r.positions()), (&[1, 3][..], &[2, 4][..]));
    let bell = ghz(&GhzLabel::new(Sign::Plus, vec![0]).unwrap()).unwrap();
    assert!(fidelity(m.state(), &bell).unwrap() > 1.0 - 1e-15);
    assert!(fidelity(r.state(), &bell).unwrap() > 1.0 - 1e-15);

    let c = predict_cat_swap(&[cat(&[0, 1, 0], 0), cat(&[1, 1, 0, 1], 1)], &[1, 1]).unwrap();
    for o in c.outcomes() {
        let (m, r) = to_state(o, c.scenario()).unwrap();
        assert_eq!(m.positions(), &[1, 4]);
        assert_eq!(r.positions(), &[2, 3, 5, 6, 7]);
    }

    let g = GhzLabel::from_index(3, Sign::Minus, 3).unwrap();
    let explicit = ghz(&g).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((explicit.amplitude(&[0, 1, 1]) - Complex64::new(s, 0.0)).norm() < 1e-15);
    assert!((explicit.amplitude(&[1, 0, 0]) - Complex64::new(-s, 0.0)).norm() < 1e-15);

    // A label from another basis is rejected.
    let mut wrong = phi_plus.clone();
    wrong.label = BasisLabel::MaxEnt(me(2, &[0, 0]));
    assert!(matches!(to_state(&wrong, p.scenario()), Err(maskswap_core::Error::BadLabel(_))));
    let mut misplaced = phi_plus.clone();
    misplaced.remainder_positions = vec![2, 3];
    assert!(to_state(&misplaced, p.scenario()).is_err());
}

fn phase_amplitude(level: usize) -> impl Strategy<Value = PhaseAmplitudeInput> {
    (
        prop::collection::vec(0.0f64..1.0, level),
        prop::collection::vec(-std::f64::consts::PI..std::f64::consts::PI, level),
    )
        .prop_filter("nonzero", |(eta, _)| eta.iter().sum::<f64>() > 1e-3)
        .prop_map(|(eta, theta)| {
            let norm = eta.iter().map(|x| x * x).sum::<f64>().sqrt();
            PhaseAmplitudeInput::new(eta.iter().map(|x| x / norm).collect(), theta).unwrap()
        })
}

fn qudit_amplitudes(level: usize) -> impl Strategy<Value = QuditAmplitudes> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), level)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| {
            let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            QuditAmplitudes::new(v.iter().map(|(a, b)| Complex64::new(a / norm, b / norm)).collect()).unwrap()
        })
}

fn cat_label(max_m: usize) -> impl Strategy<Value = CatLabel> {
    (2..=max_m)
        .prop_flat_map(|m| (prop::collection::vec(0u8..2, m), 0u8..2))
        .prop_map(|(bits, lambda)| CatLabel::new(bits, lambda).unwrap())
}

fn cat_bell_case() -> impl Strategy<Value = (MaxEntLabel, MaxEntLabel, usize)> {
    prop::sample::select(vec![2usize, 3, 5]).prop_flat_map(|d| (Just(d), 2usize..=4)).prop_flat_map(|(d, m)| {
        (prop::collection::vec(0..d, m), prop::collection::vec(0..d, 2), 1..=m)
            .prop_map(move |(u, w, k)| (me(d, &u), me(d, &w), k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cat_swap_matches_oracle(
        labels in prop::collection::vec(cat_label(4), 2..=3),
        seeds in prop::collection::vec(any::<usize>(), 3),
    ) {
        let total: usize = labels.iter().map(CatLabel::particles).sum();
        prop_assume!(total <= 12);
        let mut k: Vec<usize> = labels.iter().zip(&seeds).map(|(l, s)| 1 + s % l.particles()).collect();
        if labels.iter().zip(&k).all(|(l, &kr)| kr == l.particles()) {
            k[0] -= 1;
            prop_assume!(k[0] >= 1);
        }
        let p = predict_cat_swap(&labels, &k).unwrap();
        prop_assert!(against_oracle(&p).verdict);
    }

    #[test]
    fn karimipour_clear_and_oracle_agree((cat, bell, k) in cat_bell_case()) {
        let kar = predict_cat_bell_karimipour(&cat, &bell, k).unwrap();
        let clear = predict_cat_bell_clear(&cat, &bell, k).unwrap();
        let (kd, cd) = (kar.distribution().unwrap(), clear.distribution().unwrap());
        prop_assert!(compare_distributions(&kd, &cd, TOL).verdict);
        prop_assert!(against_oracle(&kar).verdict);
        prop_assert!(against_oracle(&clear).verdict);
    }

    #[test]
    fn parity_law(lambda in prop::collection::vec(0u8..2, 2..=4)) {
        let p = predict_masked_ghz_swap(&lambda).unwrap();
        prop_assert!(against_oracle(&p).verdict);
        let even = lambda.iter().map(|&l| l as u32).sum::<u32>() % 2 == 0;
        for o in p.outcomes() {
            let (BasisLabel::Ghz(m), StateForm::Ghz(r)) = (&o.label, &o.remainder) else { unreachable!() };
            prop_assert_eq!(m.sign() == r.sign(), even);
        }
    }

    #[test]
    fn masked_qudit_matches_oracle(
        inputs in prop::sample::select(vec![(2usize, 2usize), (3, 2), (5, 2), (2, 3)])
            .prop_flat_map(|(d, n)| prop::collection::vec(phase_amplitude(d), n)),
    ) {
        let p = predict_masked_qudit_swap(&inputs).unwrap();
        prop_assert!(against_oracle(&p).verdict);
        let dist = p.distribution().unwrap();
        let total: f64 = dist.outcomes().iter().map(|o| dist.probability(o)).sum();
        prop_assert!((total - 1.0).abs() < TOL);
    }

    #[test]
    fn li_masked_matches_oracle(
        inputs in prop::sample::select(vec![(2usize, 2usize), (2, 3), (3, 2)])
            .prop_flat_map(|(d, n)| prop::collection::vec(qudit_amplitudes(d), n)),
    ) {
        let p = predict_li_masked_swap(&inputs).unwrap();
        prop_assert!(against_oracle(&p).verdict);
    }
}

#[test]
fn predicted_states_are_normalized() {
    let p = predict_li_masked_swap(&[
        QuditAmplitudes::new(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap(),
        QuditAmplitudes::basis(2, 0).unwrap(),
    ])
    .unwrap();
    for o in p.distribution().unwrap().outcomes() {
        let s: &PureState = o.remainder.state();
        let norm: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }
}
