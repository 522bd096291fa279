use bigraph_core::ControlTable;

/// Parameter domain a catalog control draws its parameter from, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    /// Plain control, no parameter.
    None,
    /// Integer-indexed family, e.g. the criteria `C(1)`, `C(2)`, ...
    Int,
    /// String-indexed family, e.g. the locations `L("Ireland")`.
    Str,
}

/// One control of the privacy vocabulary.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub arity: usize,
    pub atomic: bool,
    pub param: ParamKind,
    /// Short description of what the control stands for.
    pub role: &'static str,
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "L",
        arity: 0,
        atomic: false,
        param: ParamKind::Str,
        role: "location, parameterised by country name",
    },
    CatalogEntry {
        name: "Adeq",
        arity: 1,
        atomic: true,
        param: ParamKind::None,
        role: "adequacy decision covering the locations its port links to",
    },
    CatalogEntry {
        name: "Contract",
        arity: 1,
        atomic: false,
        param: ParamKind::None,
        role: "data-transfer contract between the linked locations",
    },
    CatalogEntry {
        name: "SCCs",
        arity: 0,
        atomic: true,
        param: ParamKind::None,
        role: "standard contractual clauses inside a contract",
    },
    CatalogEntry {
        name: "Scheme",
        arity: 1,
        atomic: false,
        param: ParamKind::None,
        role: "certification scheme holding the criteria to certify against",
    },
    CatalogEntry {
        name: "ExpiryDate",
        arity: 0,
        atomic: true,
        param: ParamKind::None,
        role: "expiry date of a certification",
    },
    CatalogEntry {
        name: "C",
        arity: 0,
        atomic: true,
        param: ParamKind::Int,
        role: "certification criterion, indexed by number",
    },
    CatalogEntry {
        name: "C'",
        arity: 0,
        atomic: true,
        param: ParamKind::Int,
        role: "criterion already checked during certification review",
    },
    CatalogEntry {
        name: "Cert",
        arity: 1,
        atomic: false,
        param: ParamKind::None,
        role: "certification under review, linked to its scheme",
    },
    CatalogEntry {
        name: "CompliantCert",
        arity: 1,
        atomic: false,
        param: ParamKind::None,
        role: "certification whose criteria all passed review",
    },
    CatalogEntry {
        name: "InvalidCert",
        arity: 1,
        atomic: false,
        param: ParamKind::None,
        role: "certification rejected during review; its link is closed",
    },
    CatalogEntry {
        name: "WithdrawnCert",
        arity: 1,
        atomic: true,
        param: ParamKind::None,
        role: "certification withdrawn on request; its link is closed",
    },
    CatalogEntry {
        name: "InvalidContract",
        arity: 1,
        atomic: true,
        param: ParamKind::None,
        role: "contract found to lack safeguards; its link is closed",
    },
    CatalogEntry {
        name: "P",
        arity: 1,
        atomic: true,
        param: ParamKind::None,
        role: "pointer binding an entity or decision to this location",
    },
    CatalogEntry {
        name: "Ps",
        arity: 1,
        atomic: true,
        param: ParamKind::None,
        role: "pointer role: sender pointer tagged while a transfer is checked",
    },
    CatalogEntry {
        name: "P'",
        arity: 1,
        atomic: true,
        param: ParamKind::None,
        role: "pointer role: receiver pointer tagged while a transfer is checked",
    },
    CatalogEntry {
        name: "Cont",
        arity: 1,
        atomic: true,
        param: ParamKind::None,
        role: "controller role of the linked entity",
    },
    CatalogEntry {
        name: "Proc",
        arity: 1,
        atomic: true,
        param: ParamKind::None,
        role: "processor role of the linked entity",
    },
    CatalogEntry {
        name: "SType",
        arity: 1,
        atomic: false,
        param: ParamKind::None,
        role: "declared sender type, holding the sender's role",
    },
    CatalogEntry {
        name: "RType",
        arity: 1,
        atomic: false,
        param: ParamKind::None,
        role: "declared receiver type, holding the receiver's role",
    },
    CatalogEntry {
        name: "CheckReg",
        arity: 0,
        atomic: true,
        param: ParamKind::None,
        role: "token: regulation check in progress",
    },
    CatalogEntry {
        name: "SameRegion",
        arity: 0,
        atomic: true,
        param: ParamKind::None,
        role: "token: sender and receiver share a region",
    },
    CatalogEntry {
        name: "Adequate",
        arity: 0,
        atomic: true,
        param: ParamKind::None,
        role: "token: receiver region holds an adequacy decision",
    },
    CatalogEntry {
        name: "CheckExp",
        arity: 0,
        atomic: false,
        param: ParamKind::None,
        role: "token: expiry check pending against the date it contains",
    },
    CatalogEntry {
        name: "CurrentDate",
        arity: 0,
        atomic: true,
        param: ParamKind::None,
        role: "today's date, used by the expiry check",
    },
    CatalogEntry {
        name: "Greater",
        arity: 0,
        atomic: false,
        param: ParamKind::None,
        role: "marks the contained expiry date as already passed",
    },
    CatalogEntry {
        name: "WithdReq",
        arity: 0,
        atomic: true,
        param: ParamKind::None,
        role: "token: request to withdraw a certification",
    },
];

/// The control vocabulary shared by every privacy rule pack.
#[derive(Debug, Clone)]
pub struct PrivacyCatalog {
    table: ControlTable,
}

impl PrivacyCatalog {
    /// Looks up a control by name. Parameterised families are found by
    /// their family name (`"C"`, not `"C(2)"`).
    pub fn lookup(&self, name: &str) -> Option<&'static CatalogEntry> {
        ENTRIES.iter().find(|e| e.name == name)
    }

    /// All controls in declaration order.
    pub fn entries(&self) -> &'static [CatalogEntry] {
        ENTRIES
    }

    /// Control table ready for building agents and rule patterns.
    pub fn table(&self) -> &ControlTable {
        &self.table
    }
}

/// Builds the privacy control vocabulary.
pub fn privacy_catalog() -> PrivacyCatalog {
    let mut table = ControlTable::new();
    for e in ENTRIES {
        table
            .declare(e.name, e.arity, e.atomic)
            .expect("catalog names are distinct");
    }
    PrivacyCatalog { table }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_finds_pointer_role() {
        let cat = privacy_catalog();
        let ps = cat.lookup("Ps").expect("Ps is in the catalog");
        assert_eq!(ps.arity, 1);
        assert!(ps.role.contains("pointer role"));
    }

    #[test]
    fn criterion_family_is_integer_parameterised() {
        let cat = privacy_catalog();
        let c = cat.lookup("C").expect("C is in the catalog");
        assert_eq!(c.param, ParamKind::Int);
        assert_eq!(c.arity, 0);
        assert!(c.atomic);
    }

    #[test]
    fn unknown_control_is_absent() {
        let cat = privacy_catalog();
        assert!(cat.lookup("Nonexistent").is_none());
    }

    #[test]
    fn closed_marker_controls_have_arity_one() {
        let cat = privacy_catalog();
        for name in ["InvalidCert", "InvalidContract", "WithdrawnCert"] {
            assert_eq!(cat.lookup(name).unwrap().arity, 1, "{name}");
        }
    }

    #[test]
    fn table_instantiates_parameterised_families() {
        let cat = privacy_catalog();
        assert!(cat.table().contains("Scheme"));
        let c2 = cat
            .table()
            .instantiate("C", Some(bigraph_core::ParamValue::Int(2)))
            .expect("C(2) instantiates");
        assert_eq!(c2.arity, 0);
    }
}
