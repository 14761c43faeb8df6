mod common;

use gtl::solver::{brute_force_falsifiable, falsifiable, BruteBounds, SearchLimits, Verdict};
use gtl::witness::certify_witness;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn agree(f: &gtl::Formula) -> Result<(), String> {
    let fast = falsifiable(f, SearchLimits::default()).map_err(|e| e.to_string())?;
    if let Some(w) = fast.witness() {
        let rep = certify_witness(w);
        if !rep.ok() {
            return Err(format!("{f}: solver witness rejected: {rep:?}"));
        }
    }
    let slow = brute_force_falsifiable(f, BruteBounds::default()).map_err(|e| format!("{f}: {e}"))?;
    match (&fast, &slow) {
        (Verdict::Valid, Verdict::Valid) | (Verdict::Falsifiable(_), Verdict::Falsifiable(_)) => Ok(()),
        _ => Err(format!("{f}: solver {:?} vs oracle {:?}", fast.is_valid(), slow.is_valid())),
    }
}

#[test]
fn oracle_examples() {
    let t = gtl::parse("true").unwrap();
    assert_eq!(brute_force_falsifiable(&t, BruteBounds::default()).unwrap(), Verdict::Valid);
    let f = gtl::parse("X p -> p").unwrap();
    assert!(brute_force_falsifiable(&f, BruteBounds::default()).unwrap().witness().is_some());
}

#[test]
fn exhaustive_up_to_size_4() {
    let all = common::all_up_to(4, &["p", "q"]);
    assert_eq!(all.len(), 1588);
    let bad: Vec<String> = all.iter().filter_map(|f| agree(f).err()).collect();
    assert!(bad.is_empty(), "{} disagreements, first: {:?}", bad.len(), &bad[..bad.len().min(5)]);
}

#[test]
fn random_up_to_size_6() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let bad: Vec<String> =
        (0..200).map(|_| common::random(&mut rng, 6, &["p", "q"], false)).filter_map(|f| agree(&f).err()).collect();
    assert!(bad.is_empty(), "{} disagreements, first: {:?}", bad.len(), &bad[..bad.len().min(5)]);
}
