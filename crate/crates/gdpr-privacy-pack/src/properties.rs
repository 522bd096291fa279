use bigraph_core::{build_bigraph, node, site, Bigraph, Term};
use brs_engine::Predicate;

use crate::catalog::privacy_catalog;

/// A named temporal property over the standard predicates, as parseable
/// formula text.
#[derive(Debug, Clone)]
pub struct CtlProperty {
    pub name: String,
    pub formula: String,
}

/// The standard transfer-compliance predicates and properties.
#[derive(Debug, Clone)]
pub struct StandardProperties {
    predicates: Vec<Predicate>,
    properties: Vec<CtlProperty>,
}

impl StandardProperties {
    /// State predicates, `dataTransfer` last.
    pub fn predicates(&self) -> &[Predicate] {
        &self.predicates
    }

    /// The four compliance properties, in fixed order.
    pub fn properties(&self) -> &[CtlProperty] {
        &self.properties
    }
}

fn pack_pattern(regions: &[Vec<Term>], closed: &[&str]) -> Bigraph {
    let cat = privacy_catalog();
    build_bigraph(cat.table(), regions, closed).expect("standard patterns are well-formed")
}

/// An adequacy decision granted the transfer: decision, its witness
/// pointer next to the receiver pointer, the released sender pointer,
/// and the outcome token.
fn adequate_country() -> Bigraph {
    pack_pattern(
        &[
            vec![node("Adeq", &["a"], vec![])],
            vec![node("P", &["l"], vec![]), node("P", &["a"], vec![])],
            vec![node("P", &["lp"], vec![])],
            vec![node("Adequate", &[], vec![])],
        ],
        &[],
    )
}

/// A contract was flagged for missing clauses.
fn invalid_contra() -> Bigraph {
    pack_pattern(
        &[vec![
            node("P", &["l"], vec![]),
            node("InvalidContract", &["e"], vec![]),
        ]],
        &["e"],
    )
}

/// A certification was rejected during review.
fn invalid_cert() -> Bigraph {
    pack_pattern(&[vec![node("InvalidCert", &["e"], vec![site(0)])]], &["e"])
}

/// A certification was withdrawn on request.
fn withdraw_cert() -> Bigraph {
    pack_pattern(&[vec![node("WithdrawnCert", &["e"], vec![])]], &["e"])
}

/// Sender and receiver turned out to share a region.
fn same_region() -> Bigraph {
    pack_pattern(
        &[
            vec![node("P", &["l"], vec![]), node("P", &["lp"], vec![])],
            vec![node("SameRegion", &[], vec![])],
        ],
        &[],
    )
}

/// Builds the standard predicates and compliance properties.
///
/// `data_transfer` is model-specific: the pattern that identifies a state
/// in which personal data actually reached a receiver.
pub fn standard_properties(data_transfer: Bigraph) -> StandardProperties {
    let predicates = vec![
        Predicate::new("adequateCountry", adequate_country()),
        Predicate::new("invalidContra", invalid_contra()),
        Predicate::new("invalidCert", invalid_cert()),
        Predicate::new("withdrawCert", withdraw_cert()),
        Predicate::new("sameRegion", same_region()),
        Predicate::new("dataTransfer", data_transfer),
    ];
    let prop = |name: &str, formula: &str| CtlProperty {
        name: name.to_string(),
        formula: formula.to_string(),
    };
    let properties = vec![
        prop(
            "transfersNeedAdequacy",
            "A[G (!adequateCountry => !dataTransfer)]",
        ),
        prop(
            "invalidContractBlocksTransfer",
            "A[G (invalidContra => !dataTransfer)]",
        ),
        prop(
            "invalidCertBlocksTransfer",
            "A[G (invalidCert => !dataTransfer)]",
        ),
        prop(
            "withdrawalBlocksTransfer",
            "A[G (withdrawCert => X !dataTransfer)]",
        ),
    ];
    StandardProperties {
        predicates,
        properties,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn any_data_transfer() -> Bigraph {
        pack_pattern(&[vec![node("CheckReg", &[], vec![])]], &[])
    }

    #[test]
    fn predicates_come_in_fixed_order() {
        let props = standard_properties(any_data_transfer());
        let names: Vec<&str> = props.predicates().iter().map(|p| p.name.as_str()).collect();
        assert_eq!(
            names,
            vec![
                "adequateCountry",
                "invalidContra",
                "invalidCert",
                "withdrawCert",
                "sameRegion",
                "dataTransfer",
            ]
        );
    }

    #[test]
    fn property_texts_parse_and_round_trip() {
        let props = standard_properties(any_data_transfer());
        assert_eq!(props.properties().len(), 4);
        for p in props.properties() {
            let parsed = ctl_checker::parse_formula(&p.formula)
                .unwrap_or_else(|e| panic!("{}: {e}", p.name));
            let reparsed = ctl_checker::parse_formula(&parsed.to_string()).unwrap();
            assert_eq!(parsed, reparsed, "{}", p.name);
        }
    }

    #[test]
    fn data_transfer_pattern_is_caller_bound() {
        let props = standard_properties(any_data_transfer());
        let dt = props.predicates().last().unwrap();
        assert_eq!(dt.name, "dataTransfer");
        assert!(dt
            .pattern
            .control_census()
            .iter()
            .any(|(c, n)| c.name == "CheckReg" && *n == 1));
    }

    #[test]
    fn withdrawal_property_guards_the_next_step() {
        let props = standard_properties(any_data_transfer());
        let withdrawal = &props.properties()[3];
        assert_eq!(withdrawal.name, "withdrawalBlocksTransfer");
        let f = ctl_checker::parse_formula(&withdrawal.formula).unwrap();
        assert!(f.to_string().contains('X'));
    }
}
