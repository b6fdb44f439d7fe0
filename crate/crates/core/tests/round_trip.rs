//! Every group the classification lists up to degree 40 is constructed,
//! checked against its order formula, and recognized again.

use primcycle::classifier::{classify, ClassificationQuery, Identifier, Verdict};
use primcycle::families::{construct, expected_order, FamilyDescriptor};
use primcycle::Config;
use rayon::prelude::*;

#[test]
fn classification_construction_identification_round_trip() {
    let config = Config::default();
    let failures: Vec<String> = (5..=40usize)
        .into_par_iter()
        .flat_map_iter(|n| {
            let identifier = Identifier::new(n, &config);
            let mut bad = Vec::new();
            for k in 0..=2.min(n - 2) {
                let list = classify(ClassificationQuery::new(n, k).unwrap());
                for d in list.descriptors() {
                    let json = serde_json::to_string(d).unwrap();
                    let back: FamilyDescriptor = serde_json::from_str(&json).unwrap();
                    if &back != d {
                        bad.push(format!("{d}: serde round trip"));
                    }
                    let g = match construct(d, &config) {
                        Ok(g) => g,
                        Err(e) => {
                            bad.push(format!("{d}: {e}"));
                            continue;
                        }
                    };
                    if g.degree() != n || Some(g.order()) != expected_order(d) {
                        bad.push(format!("{d}: degree {} order {}", g.degree(), g.order()));
                    }
                    match identifier.identify(&g.spec) {
                        Ok(id) => match &id.verdict {
                            Verdict::Matched { descriptors } if descriptors.contains(d) => {}
                            Verdict::ContainsAlternating => {}
                            other => bad.push(format!("{d}: identified as {other:?}")),
                        },
                        Err(e) => bad.push(format!("{d}: {e}")),
                    }
                }
            }
            bad
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}
