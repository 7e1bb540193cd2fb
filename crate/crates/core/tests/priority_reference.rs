//! The cached engine against a direct transcription that recomputes every
//! approximation from scratch.

use std::collections::BTreeSet;

use comproc::machines::{oracle_run_bounded, pair, unpair, we_approx, Program};
use comproc::priority::{
    run_construction, ActionKind, CanonicalEnumerators, MockEnumerators, MockPhi, MockSpec, MockW, PhiKeyword,
    Requirement, StageAction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy)]
enum Source<'a> {
    Canonical,
    Mock(&'a MockSpec),
}

impl Source<'_> {
    fn w(&self, e: usize, s: u64) -> BTreeSet<u64> {
        match self {
            Source::Canonical => we_approx(&Program::decode_u64(e as u64), s),
            Source::Mock(m) => {
                let w = m.w.get(&e).cloned().unwrap_or(MockW::None);
                (0..s).filter(|&x| w.contains(x)).collect()
            }
        }
    }

    /// converged value and use
    fn phi(&self, e: usize, oracle: &BTreeSet<u64>, x: u64, s: u64) -> Option<(u64, Option<u64>)> {
        let program = match self {
            Source::Canonical => Program::decode_u64(e as u64),
            Source::Mock(m) => match m.phi.get(&e) {
                None | Some(MockPhi::Keyword(PhiKeyword::Diverge)) => return None,
                Some(MockPhi::Const { value, use_ }) => return Some((*value, *use_)),
                Some(MockPhi::Program { program }) => program.parse().unwrap(),
            },
        };
        let out = oracle_run_bounded(&program, oracle, x, s);
        out.output.map(|v| (v, out.use_))
    }

    fn cap(&self) -> usize {
        match self {
            Source::Canonical => usize::MAX,
            Source::Mock(m) => m.requirements.unwrap_or(usize::MAX),
        }
    }
}

/// (kind, requirement, element, injured)
type Event = (ActionKind, Option<Requirement>, Option<u64>, Vec<usize>);

fn reference(src: Source<'_>, stages: u64) -> Vec<Event> {
    let mut s_set = BTreeSet::new();
    let mut a_set = BTreeSet::new();
    let mut acted = vec![false; 4096];
    let mut witness: Vec<Option<u64>> = vec![None; 4096];
    let mut restraint: Vec<Option<u64>> = vec![None; 4096];
    let mut max_used = 0u64;
    let mut out = Vec::new();
    for s in 0..stages {
        max_used = max_used.max(s);
        let mut event = (ActionKind::Idle, None, None, vec![]);
        'scan: for e in 0..(s as usize + 1).min(src.cap()) {
            let w_e = src.w(e, s);
            if !acted[e] && s_set.intersection(&w_e).next().is_none() {
                let floor = (0..e).filter_map(|i| restraint[i]).fold(2 * e as u64, u64::max);
                if let Some(&x) = w_e.range(floor + 1..).next() {
                    s_set.insert(x);
                    acted[e] = true;
                    max_used = max_used.max(x);
                    let mut hurt = vec![];
                    for i in e..4096 {
                        if restraint[i].is_some_and(|r| r >= x) {
                            witness[i] = None;
                            restraint[i] = None;
                            hurt.push(i);
                        }
                    }
                    event = (ActionKind::EnumerateS, Some(Requirement::Positive(e)), Some(x), hurt);
                    break 'scan;
                }
            }
            if (e as u64) < s {
                match witness[e] {
                    None => {
                        let mut u = 0;
                        while pair(e as u64, u).unwrap() <= max_used {
                            u += 1;
                        }
                        let w = pair(e as u64, u).unwrap();
                        witness[e] = Some(w);
                        max_used = max_used.max(w);
                        event = (ActionKind::AssignWitness, Some(Requirement::Negative(e)), Some(w), vec![]);
                        break 'scan;
                    }
                    Some(w) if !a_set.contains(&w) => {
                        if let Some((0, use_)) = src.phi(e, &s_set, w, s) {
                            a_set.insert(w);
                            restraint[e] = use_;
                            if let Some(u) = use_ {
                                max_used = max_used.max(u);
                            }
                            event = (ActionKind::EnumerateA, Some(Requirement::Negative(e)), Some(w), vec![]);
                            break 'scan;
                        }
                    }
                    Some(_) => {}
                }
            }
        }
        out.push(event);
    }
    out
}

fn events(log: &[StageAction]) -> Vec<Event> {
    log.iter().map(|a| (a.action, a.requirement, a.element, a.injuries.clone())).collect()
}

fn random_mock(rng: &mut ChaCha8Rng) -> MockSpec {
    let n = rng.gen_range(1..6);
    let mut spec = MockSpec { requirements: Some(n), ..MockSpec::default() };
    for e in 0..n {
        let w = match rng.gen_range(0..5) {
            0 => MockW::All,
            1 => MockW::Evens,
            2 => MockW::Odds,
            3 => MockW::None,
            _ => MockW::List((0..3).map(|_| rng.gen_range(0..60)).collect()),
        };
        spec.w.insert(e, w);
        let phi = match rng.gen_range(0..4) {
            0 => MockPhi::Keyword(PhiKeyword::Diverge),
            1 => MockPhi::Const { value: rng.gen_range(0..2), use_: Some(rng.gen_range(0..40)) },
            2 => MockPhi::Const { value: 0, use_: None },
            _ => MockPhi::Program { program: "QUERY 1 2\nQUERY 0 2\nHALT".into() },
        };
        spec.phi.insert(e, phi);
    }
    spec
}

#[test]
fn canonical_engine_matches_reference() {
    let (_, log) = run_construction(120, CanonicalEnumerators::new());
    assert_eq!(events(&log), reference(Source::Canonical, 120));
}

#[test]
fn mock_engine_matches_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut injured = 0;
    for _ in 0..60 {
        let spec = random_mock(&mut rng);
        let (state, log) = run_construction(80, MockEnumerators::new(spec.clone()).unwrap());
        assert_eq!(events(&log), reference(Source::Mock(&spec), 80), "{spec:?}");
        injured += state.negatives().iter().map(|n| n.injuries).sum::<u32>();
        for &a in state.a_approx() {
            assert!(unpair(a).0 < spec.requirements.unwrap() as u64);
        }
    }
    assert!(injured > 0, "battery never exercises injury");
}
