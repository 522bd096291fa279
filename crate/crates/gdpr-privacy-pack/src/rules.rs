use std::collections::BTreeSet;

use bigraph_core::{build_bigraph, int_param, node, pnode, site, Bigraph, ControlTable, Term};
use brs_engine::{InstantiationMap, ReactionRule};

use crate::catalog::privacy_catalog;
use crate::error::PackError;

/// The cross-border-transfer rules, grouped into priority classes.
///
/// Classes are ordered from highest priority to lowest: a rule may only
/// fire when no rule of an earlier class has an occurrence. Model-level
/// rules are expected to join as an extra class after the last one.
#[derive(Debug, Clone)]
pub struct PrivacyRulePack {
    classes: Vec<Vec<ReactionRule>>,
    criteria: Vec<i64>,
}

impl PrivacyRulePack {
    /// Priority classes, highest first.
    pub fn classes(&self) -> &[Vec<ReactionRule>] {
        &self.classes
    }

    /// Consumes the pack, yielding the classes for composition with
    /// model-level rules.
    pub fn into_classes(self) -> Vec<Vec<ReactionRule>> {
        self.classes
    }

    /// The criteria domain the certification rules were expanded over,
    /// sorted and deduplicated.
    pub fn criteria(&self) -> &[i64] {
        &self.criteria
    }

    /// Names of every rule in the pack, in priority order.
    pub fn rule_names(&self) -> Vec<&str> {
        self.classes.iter().flatten().map(|r| r.name()).collect()
    }
}

fn pattern(table: &ControlTable, regions: &[Vec<Term>], closed: &[&str]) -> Bigraph {
    build_bigraph(table, regions, closed).expect("pack patterns are well-formed")
}

fn rule(
    table: &ControlTable,
    name: &str,
    redex: &[Vec<Term>],
    reactum: &[Vec<Term>],
    closed_in_reactum: &[&str],
    eta: Vec<usize>,
) -> ReactionRule {
    let redex = pattern(table, redex, &[]);
    let reactum = pattern(table, reactum, closed_in_reactum);
    ReactionRule::new(name, redex, reactum, InstantiationMap::new(eta))
        .expect("pack rules are well-formed")
}

/// Sender declared its type: tag the sender pointer. The declaration is
/// consumed; the role it held is released back to its region.
fn check_s_type(t: &ControlTable) -> ReactionRule {
    rule(
        t,
        "checkSType",
        &[
            vec![node("P", &["l"], vec![])],
            vec![node("SType", &["l"], vec![site(0)])],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[
            vec![node("Ps", &["l"], vec![])],
            vec![site(0)],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[],
        vec![0],
    )
}

/// Receiver declared its type: tag the receiver pointer. The declaration
/// is consumed; the role it held is released back to its region.
fn check_r_type(t: &ControlTable) -> ReactionRule {
    rule(
        t,
        "checkRType",
        &[
            vec![node("P", &["l"], vec![])],
            vec![node("RType", &["l"], vec![site(0)])],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[
            vec![node("P'", &["l"], vec![])],
            vec![site(0)],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[],
        vec![0],
    )
}

/// Both tagged pointers sit in the same location: transfer is internal.
fn same_reg(t: &ControlTable) -> ReactionRule {
    rule(
        t,
        "sameReg",
        &[
            vec![node("Ps", &["l"], vec![]), node("P'", &["lp"], vec![])],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[
            vec![node("P", &["l"], vec![]), node("P", &["lp"], vec![])],
            vec![node("SameRegion", &[], vec![])],
        ],
        &[],
        vec![],
    )
}

/// The receiver's location is covered by an adequacy decision.
/// Lowest priority: safeguards are checked first when present.
fn checking_adeq(t: &ControlTable) -> ReactionRule {
    rule(
        t,
        "checkingAdeq",
        &[
            vec![node("Adeq", &["a"], vec![])],
            vec![node("P'", &["l"], vec![]), node("P", &["a"], vec![])],
            vec![node("Ps", &["lp"], vec![])],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[
            vec![node("Adeq", &["a"], vec![])],
            vec![node("P", &["l"], vec![]), node("P", &["a"], vec![])],
            vec![node("P", &["lp"], vec![])],
            vec![node("Adequate", &[], vec![])],
        ],
        &[],
        vec![],
    )
}

/// The receiver's contract holds no clauses at all: flag it.
/// The childless, siteless redex `Contract` matches only an empty one.
fn checking_sccs(t: &ControlTable) -> ReactionRule {
    rule(
        t,
        "checkingSCCs",
        &[
            vec![node("P'", &["l"], vec![]), node("Contract", &["c"], vec![])],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[
            vec![
                node("P", &["l"], vec![]),
                node("InvalidContract", &["e"], vec![]),
            ],
            vec![],
        ],
        &["e"],
        vec![],
    )
}

/// One certification criterion matches the scheme: mark it checked.
fn tag_criteria(t: &ControlTable, x: i64) -> ReactionRule {
    let name = format!("tagCriteria({x})");
    rule(
        t,
        &name,
        &[
            vec![node(
                "Scheme",
                &["s"],
                vec![site(0), pnode("C", int_param(x), &[], vec![])],
            )],
            vec![
                node("P'", &["l"], vec![]),
                node(
                    "Cert",
                    &["s"],
                    vec![site(1), pnode("C", int_param(x), &[], vec![])],
                ),
            ],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[
            vec![node(
                "Scheme",
                &["s"],
                vec![site(0), pnode("C", int_param(x), &[], vec![])],
            )],
            vec![
                node("P'", &["l"], vec![]),
                node(
                    "Cert",
                    &["s"],
                    vec![site(1), pnode("C'", int_param(x), &[], vec![])],
                ),
            ],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[],
        vec![0, 1],
    )
}

/// A certification under review may be rejected; the pointer is released
/// so follow-up rules on the untagged pointer stay reachable.
fn tag_invalid_cert(t: &ControlTable) -> ReactionRule {
    rule(
        t,
        "tagInvalidCert",
        &[
            vec![
                node("P'", &["l"], vec![]),
                node("Cert", &["s"], vec![site(0)]),
            ],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[
            vec![
                node("P", &["l"], vec![]),
                node("InvalidCert", &["e"], vec![site(0)]),
            ],
            vec![],
        ],
        &["e"],
        vec![0],
    )
}

/// Every criterion checked: the certification is compliant; queue the
/// expiry check against today's date.
fn checking_cert_result(t: &ControlTable, criteria: &[i64]) -> ReactionRule {
    let tagged = || {
        let mut children = vec![site(0)];
        for &x in criteria {
            children.push(pnode("C'", int_param(x), &[], vec![]));
        }
        children
    };
    rule(
        t,
        "checkingCertResult",
        &[
            vec![node("Cert", &["s"], tagged())],
            vec![node("CheckReg", &[], vec![])],
        ],
        &[
            vec![node("CompliantCert", &["s"], tagged())],
            vec![node(
                "CheckExp",
                &[],
                vec![node("CurrentDate", &[], vec![])],
            )],
        ],
        &[],
        vec![0],
    )
}

/// The expiry date lies in the past: the compliant certification is void.
fn expired_date(t: &ControlTable) -> ReactionRule {
    let past = || {
        vec![
            site(0),
            node("Greater", &[], vec![node("ExpiryDate", &[], vec![])]),
        ]
    };
    rule(
        t,
        "ExpiredDate",
        &[
            vec![node("CompliantCert", &["s"], past())],
            vec![node(
                "CheckExp",
                &[],
                vec![node("CurrentDate", &[], vec![])],
            )],
        ],
        &[vec![node("InvalidCert", &["e"], past())], vec![]],
        &["e"],
        vec![0],
    )
}

/// A withdrawal request retires the compliant certification outright.
fn process_withd_req(t: &ControlTable) -> ReactionRule {
    rule(
        t,
        "processWithdReq",
        &[
            vec![node("CompliantCert", &["c"], vec![site(0)])],
            vec![node("WithdReq", &[], vec![])],
        ],
        &[vec![node("WithdrawnCert", &["e"], vec![])], vec![]],
        &["e"],
        vec![],
    )
}

/// Builds the rule pack for the given certification criteria domain.
///
/// `criteria` is deduplicated and sorted; it must be non-empty, since the
/// certification-review rules are expanded per criterion.
pub fn privacy_rules(criteria: &[i64]) -> Result<PrivacyRulePack, PackError> {
    let criteria: Vec<i64> = criteria
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if criteria.is_empty() {
        return Err(PackError::EmptyCriteriaDomain);
    }
    let cat = privacy_catalog();
    let t = cat.table();

    let mut review = vec![checking_sccs(t)];
    for &x in &criteria {
        review.push(tag_criteria(t, x));
    }
    review.push(tag_invalid_cert(t));
    review.push(checking_cert_result(t, &criteria));
    review.push(expired_date(t));
    review.push(process_withd_req(t));

    let classes = vec![
        vec![check_s_type(t), check_r_type(t)],
        vec![same_reg(t)],
        review,
        vec![checking_adeq(t)],
    ];
    Ok(PrivacyRulePack { classes, criteria })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bigraph_core::build_ground;
    use brs_engine::PriorityClasses;
    use std::collections::BTreeMap;

    fn census_by_name(b: &Bigraph) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for (c, n) in b.control_census() {
            *m.entry(c.name.clone()).or_insert(0) += n;
        }
        m
    }

    #[test]
    fn classes_follow_the_priority_layout() {
        let pack = privacy_rules(&[1, 2, 3]).unwrap();
        let names: Vec<Vec<&str>> = pack
            .classes()
            .iter()
            .map(|c| c.iter().map(|r| r.name()).collect())
            .collect();
        assert_eq!(names[0], vec!["checkSType", "checkRType"]);
        assert_eq!(names[1], vec!["sameReg"]);
        assert_eq!(
            names[2],
            vec![
                "checkingSCCs",
                "tagCriteria(1)",
                "tagCriteria(2)",
                "tagCriteria(3)",
                "tagInvalidCert",
                "checkingCertResult",
                "ExpiredDate",
                "processWithdReq",
            ]
        );
        assert_eq!(names[3], vec!["checkingAdeq"]);
    }

    #[test]
    fn criteria_are_deduplicated_and_sorted() {
        let pack = privacy_rules(&[3, 1, 3, 1]).unwrap();
        assert_eq!(pack.criteria(), &[1, 3]);
        assert!(pack.rule_names().contains(&"tagCriteria(3)"));
        assert!(!pack.rule_names().contains(&"tagCriteria(2)"));
    }

    #[test]
    fn empty_criteria_domain_is_rejected() {
        assert_eq!(
            privacy_rules(&[]).unwrap_err(),
            PackError::EmptyCriteriaDomain
        );
    }

    #[test]
    fn same_reg_merges_tagged_pointers() {
        let cat = privacy_catalog();
        let t = cat.table();
        let agent = build_ground(
            t,
            &[
                vec![node("Ps", &["h"], vec![]), node("P'", &["k"], vec![])],
                vec![node("CheckReg", &[], vec![])],
            ],
        )
        .unwrap();
        let pack = privacy_rules(&[1]).unwrap();
        let same_reg = &pack.classes()[1][0];
        let results = same_reg.rewrites(&agent).unwrap();
        assert_eq!(results.len(), 1);
        let census = census_by_name(&results[0]);
        assert_eq!(census.get("P"), Some(&2));
        assert_eq!(census.get("SameRegion"), Some(&1));
        assert!(!census.contains_key("CheckReg"));
    }

    #[test]
    fn empty_contract_check_ignores_contracts_with_clauses() {
        let cat = privacy_catalog();
        let t = cat.table();
        let pack = privacy_rules(&[1]).unwrap();
        let sccs_check = &pack.classes()[2][0];
        assert_eq!(sccs_check.name(), "checkingSCCs");

        let filled = build_ground(
            t,
            &[
                vec![
                    node("P'", &["l"], vec![]),
                    node("Contract", &["c"], vec![node("SCCs", &[], vec![])]),
                ],
                vec![node("CheckReg", &[], vec![])],
            ],
        )
        .unwrap();
        assert!(sccs_check.rewrites(&filled).unwrap().is_empty());

        let empty = build_ground(
            t,
            &[
                vec![node("P'", &["l"], vec![]), node("Contract", &["c"], vec![])],
                vec![node("CheckReg", &[], vec![])],
            ],
        )
        .unwrap();
        let results = sccs_check.rewrites(&empty).unwrap();
        assert_eq!(results.len(), 1);
        assert_eq!(census_by_name(&results[0]).get("InvalidContract"), Some(&1));
    }

    #[test]
    fn pointer_tagging_outranks_certification_review() {
        let cat = privacy_catalog();
        let t = cat.table();
        // Untagged receiver pointer next to a cert under review: the
        // type-check rules must fire before any review rule does.
        let agent = build_ground(
            t,
            &[
                vec![node("P", &["l"], vec![])],
                vec![node("RType", &["l"], vec![node("Cont", &["l"], vec![])])],
                vec![
                    node("P'", &["k"], vec![]),
                    node("Cert", &["s"], vec![node("ExpiryDate", &[], vec![])]),
                ],
                vec![node("CheckReg", &[], vec![])],
            ],
        )
        .unwrap();
        let classes = PriorityClasses::new(privacy_rules(&[1]).unwrap().into_classes()).unwrap();
        let next = classes.successors(&agent).unwrap();
        assert!(!next.is_empty());
        for (rule_name, _) in &next {
            assert_eq!(rule_name, "checkRType");
        }
    }

    #[test]
    fn withdrawal_discards_certification_contents() {
        let cat = privacy_catalog();
        let t = cat.table();
        let agent = build_ground(
            t,
            &[
                vec![node(
                    "CompliantCert",
                    &["c"],
                    vec![
                        pnode("C'", int_param(1), &[], vec![]),
                        node("ExpiryDate", &[], vec![]),
                    ],
                )],
                vec![node("WithdReq", &[], vec![])],
            ],
        )
        .unwrap();
        let pack = privacy_rules(&[1]).unwrap();
        let withd = pack.classes()[2]
            .iter()
            .find(|r| r.name() == "processWithdReq")
            .unwrap();
        let results = withd.rewrites(&agent).unwrap();
        assert_eq!(results.len(), 1);
        let census = census_by_name(&results[0]);
        assert_eq!(census.get("WithdrawnCert"), Some(&1));
        assert!(!census.contains_key("C'"));
        assert!(!census.contains_key("ExpiryDate"));
        assert!(!census.contains_key("WithdReq"));
    }
}
