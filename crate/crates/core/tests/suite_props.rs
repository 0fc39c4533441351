//! Report and exit-code contracts of the suite runner.

use heckeq_core::suite::{exit_code, run_identities, suite_identities, Fault, Identity, DEFAULT_SEED};
use heckeq_core::{FracExp, Status};
use proptest::prelude::*;

fn pool() -> Vec<Identity> {
    let mut ids = suite_identities("notation", DEFAULT_SEED).unwrap();
    for i in &mut ids {
        i.order = FracExp::int(15);
    }
    ids.push(Identity::exprs("t/false", "J(1,2)", "Jp(1)^2", 15));
    ids.push(Identity::exprs("t/singular", "am(q, 1, q^3)", "0", 15));
    ids.push(Identity::exprs("t/unparsable", "J(1,", "0", 15));
    ids
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn exit_code_and_discrepancy_contract(
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..6),
        faults in prop::collection::vec((any::<prop::sample::Index>(), -2i64..=15), 0..3),
    ) {
        let pool = pool();
        let ids: Vec<Identity> = picks.iter().map(|i| i.get(&pool).clone()).collect();
        let faults: Vec<Fault> = faults
            .iter()
            .filter(|_| !ids.is_empty())
            .map(|(i, e)| Fault::new(i.get(&ids).id.clone(), FracExp::int(*e)))
            .collect();
        let reports = run_identities(&ids, None, &faults);
        prop_assert_eq!(reports.len(), ids.len());
        for (r, id) in reports.iter().zip(&ids) {
            prop_assert_eq!(&r.identity_id, &id.id);
            prop_assert_eq!(r.status == Status::Failed, r.first_discrepancy.is_some());
            prop_assert_eq!(r.status == Status::Error, r.error.is_some());
        }
        let any = |s| reports.iter().any(|r| r.status == s);
        let code = exit_code(&reports);
        prop_assert_eq!(code == 0, reports.iter().all(|r| r.status == Status::Verified));
        prop_assert_eq!(code == 2, any(Status::Error));
        prop_assert_eq!(code == 1, any(Status::Failed) && !any(Status::Error));
    }
}
