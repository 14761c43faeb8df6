mod common;

use std::time::Instant;

use gtl::parse;
use gtl::proofcheck::{check_proof, ipc_tautology, match_axiom, Justification, Proof, ProofStep};
use gtl::solver::valid;

#[test]
fn schema_instances_are_one_step_proofs_and_valid() {
    let start = Instant::now();
    for (id, f) in common::axiom_instances() {
        let (first, _) = match_axiom(&f).unwrap();
        assert_eq!(first, id, "{f} matched an earlier schema");
        let proof = Proof {
            steps: vec![ProofStep { formula: f.clone(), by: Justification::Axiom { schema: id.clone(), subst: None } }],
        };
        assert_eq!(check_proof(&proof), Ok(()));
        let t = Instant::now();
        assert_eq!(valid(&f), Ok(true), "{id}: {f}");
        eprintln!("{id:6} {:>8.2?}  {f}", t.elapsed());
    }
    eprintln!("schemata total {:?}", start.elapsed());
}

#[test]
fn ipc_instances_valid() {
    for s in common::IPC_REPRESENTATIVES {
        let f = parse(s).unwrap();
        assert!(ipc_tautology(&f), "{s}");
        assert_eq!(valid(&f), Ok(true), "{s}");
    }
}

#[test]
fn lemma_items_valid() {
    for (item, s) in common::LEMMA_ITEMS {
        let t = Instant::now();
        assert_eq!(valid(&parse(s).unwrap()), Ok(true), "({item}) {s}");
        eprintln!("({item}) {:>8.2?}  {s}", t.elapsed());
    }
}
