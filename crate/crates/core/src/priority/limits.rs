//! Reading off witness limits and the disjoint sum.

use std::collections::BTreeSet;

use super::ConstructionState;
use crate::machines::unpair;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessLimit {
    Value(u64),
    Undetermined(String),
}

/// The horizon's best guess at `lim_s w(e, s)`. Requirement `e` must have a
/// witness and no assignment or injury in the last tenth of the stages run.
/// The guess is the current witness when it is outside `A`, otherwise the
/// largest element of column `e` in `A`.
pub fn decide_witness_limit(e: usize, state: &ConstructionState) -> WitnessLimit {
    let n = state.negative(e);
    if n.assignments.is_empty() {
        return WitnessLimit::Undetermined(format!("N{e} never received a witness"));
    }
    let horizon = state.stage();
    let quiet_from = horizon - horizon.div_ceil(10);
    if let Some(&t) = n.injury_stages.iter().find(|&&t| t >= quiet_from) {
        return WitnessLimit::Undetermined(format!("N{e} injured at stage {t} of {horizon}"));
    }
    if let Some(&(t, _)) = n.assignments.iter().find(|&&(t, _)| t >= quiet_from) {
        return WitnessLimit::Undetermined(format!("N{e} assigned a witness at stage {t} of {horizon}"));
    }
    let Some(w) = n.witness else {
        return WitnessLimit::Undetermined(format!("N{e} has no current witness"));
    };
    if !state.a_approx().contains(&w) {
        return WitnessLimit::Value(w);
    }
    let column_max = state.a_approx().iter().rev().find(|&&y| unpair(y).0 == e as u64);
    WitnessLimit::Value(*column_max.expect("w lies in column e"))
}

/// `{2x : x ∈ S} ∪ {2x + 1 : x ∈ A}`.
pub fn disjoint_sum(s: &BTreeSet<u64>, a: &BTreeSet<u64>) -> BTreeSet<u64> {
    s.iter().map(|&x| 2 * x).chain(a.iter().map(|&x| 2 * x + 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::priority::{Construction, MockEnumerators, MockSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sum_examples() {
        assert_eq!(disjoint_sum(&BTreeSet::from([1]), &BTreeSet::from([0])), BTreeSet::from([2, 1]));
        assert!(disjoint_sum(&BTreeSet::new(), &BTreeSet::new()).is_empty());
    }

    #[test]
    fn sum_membership_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s: BTreeSet<u64> = (0..30).map(|_| rng.gen_range(0..100)).collect();
        let a: BTreeSet<u64> = (0..30).map(|_| rng.gen_range(0..100)).collect();
        let sum = disjoint_sum(&s, &a);
        for _ in 0..100 {
            let y = rng.gen_range(0..200);
            let expect = if y % 2 == 0 { s.contains(&(y / 2)) } else { a.contains(&((y - 1) / 2)) };
            assert_eq!(sum.contains(&y), expect, "y = {y}");
        }
    }

    #[test]
    fn limits_from_mock_runs() {
        let spec: MockSpec = serde_json::from_str(r#"{"requirements": 2, "phi": {"0": {"const": 0, "use": 3}}}"#).unwrap();
        let mut c = Construction::new(MockEnumerators::new(spec).unwrap());
        assert!(matches!(decide_witness_limit(0, c.state()), WitnessLimit::Undetermined(_)));
        c.run(100);
        let w0 = c.state().witness(0).unwrap();
        assert!(c.state().a_approx().contains(&w0));
        assert_eq!(decide_witness_limit(0, c.state()), WitnessLimit::Value(w0));
        assert_eq!(decide_witness_limit(1, c.state()), WitnessLimit::Value(c.state().witness(1).unwrap()));
        assert!(matches!(decide_witness_limit(5, c.state()), WitnessLimit::Undetermined(_)));
    }

    #[test]
    fn recent_assignment_is_undetermined() {
        let mut c = Construction::new(MockEnumerators::new(MockSpec::default()).unwrap());
        c.run(5);
        // N_3 received its witness at stage 4, inside the last tenth
        assert!(matches!(decide_witness_limit(3, c.state()), WitnessLimit::Undetermined(_)));
    }
}
