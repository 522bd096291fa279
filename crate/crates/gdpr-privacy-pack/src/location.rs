use bigraph_core::{node, pnode, str_param, Term};

use crate::error::PackError;

/// Transfer safeguard installed at a location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Safeguard {
    /// A contract, holding standard contractual clauses when `valid`.
    /// `link` names the contract's hyperedge, shared with its peers.
    SccContract { valid: bool, link: String },
    /// A certification against the scheme reachable over `link`,
    /// covering `criteria` and possibly past its expiry date.
    Certification {
        criteria: Vec<i64>,
        expired: bool,
        link: String,
    },
}

/// Link name wiring a location's adequacy witness to the decision that
/// covers it.
pub fn adequacy_link(name: &str) -> String {
    format!("adq_{}", name.to_ascii_lowercase().replace(' ', "_"))
}

/// Builds a location fragment: pointers, an adequacy witness when the
/// country is adequately protected, and the installed safeguards.
///
/// `pointer_links` name the hyperedges binding entities to this
/// location. The fragment slots directly into a model's location region.
pub fn build_location(
    name: &str,
    adequate: bool,
    safeguards: &[Safeguard],
    pointer_links: &[&str],
) -> Result<Term, PackError> {
    if name.is_empty() {
        return Err(PackError::InconsistentSpec(
            "location name is empty".to_string(),
        ));
    }
    let has_contract = safeguards
        .iter()
        .any(|s| matches!(s, Safeguard::SccContract { .. }));
    let has_cert = safeguards
        .iter()
        .any(|s| matches!(s, Safeguard::Certification { .. }));
    if has_contract && has_cert {
        return Err(PackError::InconsistentSpec(format!(
            "location {name} provides both a contract and a certification"
        )));
    }
    if adequate && !safeguards.is_empty() {
        return Err(PackError::InconsistentSpec(format!(
            "location {name} is adequately protected and needs no safeguards"
        )));
    }
    if !adequate && pointer_links.is_empty() {
        return Err(PackError::InconsistentSpec(format!(
            "location {name} needs at least one pointer"
        )));
    }

    let mut children: Vec<Term> = pointer_links
        .iter()
        .map(|l| node("P", &[*l], vec![]))
        .collect();
    let witness = adequacy_link(name);
    if adequate {
        children.push(node("P", &[witness.as_str()], vec![]));
    }
    for safeguard in safeguards {
        children.push(match safeguard {
            Safeguard::SccContract { valid, link } => {
                let clauses = if *valid {
                    vec![node("SCCs", &[], vec![])]
                } else {
                    vec![]
                };
                node("Contract", &[link.as_str()], clauses)
            }
            Safeguard::Certification {
                criteria,
                expired,
                link,
            } => {
                if criteria.is_empty() {
                    return Err(PackError::InconsistentSpec(format!(
                        "certification at {name} covers no criteria"
                    )));
                }
                let mut sorted = criteria.clone();
                sorted.sort_unstable();
                sorted.dedup();
                let expiry = node("ExpiryDate", &[], vec![]);
                let mut contents = vec![if *expired {
                    node("Greater", &[], vec![expiry])
                } else {
                    expiry
                }];
                for &x in &sorted {
                    contents.push(pnode("C", bigraph_core::int_param(x), &[], vec![]));
                }
                node("Cert", &[link.as_str()], contents)
            }
        });
    }
    Ok(pnode("L", str_param(name), &[], children))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::privacy_catalog;
    use bigraph_core::build_bigraph;

    fn census_of(term: Term) -> std::collections::BTreeMap<String, usize> {
        let cat = privacy_catalog();
        let b = build_bigraph(cat.table(), &[vec![term]], &[]).unwrap();
        let mut m = std::collections::BTreeMap::new();
        for (c, n) in b.control_census() {
            *m.entry(c.name.clone()).or_insert(0) += n;
        }
        m
    }

    #[test]
    fn certified_location_holds_criteria_and_expiry() {
        let term = build_location(
            "Dubai",
            false,
            &[Safeguard::Certification {
                criteria: vec![3, 1, 2],
                expired: false,
                link: "cs".to_string(),
            }],
            &["h4"],
        )
        .unwrap();
        let census = census_of(term);
        assert_eq!(census.get("L"), Some(&1));
        assert_eq!(census.get("P"), Some(&1));
        assert_eq!(census.get("Cert"), Some(&1));
        assert_eq!(census.get("C"), Some(&3));
        assert_eq!(census.get("ExpiryDate"), Some(&1));
        assert_eq!(census.get("Greater"), None);
    }

    #[test]
    fn expired_certification_marks_the_date_as_passed() {
        let term = build_location(
            "China",
            false,
            &[Safeguard::Certification {
                criteria: vec![1],
                expired: true,
                link: "cs".to_string(),
            }],
            &["h2"],
        )
        .unwrap();
        let census = census_of(term);
        assert_eq!(census.get("Greater"), Some(&1));
        assert_eq!(census.get("ExpiryDate"), Some(&1));
    }

    #[test]
    fn invalid_contract_safeguard_is_an_empty_contract() {
        let term = build_location(
            "Singapore",
            false,
            &[Safeguard::SccContract {
                valid: false,
                link: "cc".to_string(),
            }],
            &["h1"],
        )
        .unwrap();
        let census = census_of(term);
        assert_eq!(census.get("Contract"), Some(&1));
        assert_eq!(census.get("SCCs"), None);
    }

    #[test]
    fn adequate_location_carries_a_named_witness() {
        let term = build_location("US", true, &[], &["h0", "h3"]).unwrap();
        let cat = privacy_catalog();
        let b = build_bigraph(cat.table(), &[vec![term]], &[]).unwrap();
        let census: usize = b
            .control_census()
            .iter()
            .filter(|(c, _)| c.name == "P")
            .map(|(_, n)| *n)
            .sum();
        assert_eq!(census, 3);
        let link = b
            .link_by_name(&adequacy_link("US"))
            .expect("witness link is open");
        assert_eq!(b.points(link).len(), 1);
    }

    #[test]
    fn contradictory_specs_are_rejected() {
        let contract = Safeguard::SccContract {
            valid: true,
            link: "cc".to_string(),
        };
        let cert = Safeguard::Certification {
            criteria: vec![1],
            expired: false,
            link: "cs".to_string(),
        };
        for (name, adequate, safeguards, pointers) in [
            ("", false, vec![contract.clone()], vec!["h0"]),
            ("X", false, vec![contract.clone(), cert.clone()], vec!["h0"]),
            ("X", true, vec![contract], vec!["h0"]),
            ("X", false, vec![], vec![]),
        ] {
            let err = build_location(name, adequate, &safeguards, &pointers).unwrap_err();
            assert!(matches!(err, PackError::InconsistentSpec(_)), "{name}");
        }
    }

    #[test]
    fn certification_without_criteria_is_rejected() {
        let err = build_location(
            "X",
            false,
            &[Safeguard::Certification {
                criteria: vec![],
                expired: false,
                link: "cs".to_string(),
            }],
            &["h0"],
        )
        .unwrap_err();
        assert!(matches!(err, PackError::InconsistentSpec(_)));
    }
}
