//! Bundled example models and the outcomes a run of each should produce.

/// A bundled model: source text plus expected run outcomes.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    /// Model name; also the stem of the bundled file.
    pub name: &'static str,
    /// Complete model source.
    pub text: &'static str,
    /// Whether the initial state satisfies the model's sort discipline
    /// (vacuously true for models without one).
    pub well_sorted: bool,
    /// Expected verdict per property, in the model's property order.
    pub verdicts: &'static [(&'static str, bool)],
}

const HOLD_ALL: &[(&str, bool)] = &[
    ("transfersNeedAdequacy", true),
    ("invalidContractBlocksTransfer", true),
    ("invalidCertBlocksTransfer", true),
    ("withdrawalBlocksTransfer", true),
];

/// An eager copy past a failed certification breaks the adequacy and
/// certification properties; the contract and withdrawal ones are
/// untouched because their markers appear only on other branches.
const VIOLATION_VERDICTS: &[(&str, bool)] = &[
    ("transfersNeedAdequacy", false),
    ("invalidContractBlocksTransfer", true),
    ("invalidCertBlocksTransfer", false),
    ("withdrawalBlocksTransfer", true),
];

/// All bundled models.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "whatsapp-compliant",
            text: include_str!("../fixtures/whatsapp-compliant.bgm"),
            well_sorted: true,
            verdicts: HOLD_ALL,
        },
        Fixture {
            name: "whatsapp-restricted",
            text: include_str!("../fixtures/whatsapp-restricted.bgm"),
            well_sorted: true,
            verdicts: HOLD_ALL,
        },
        Fixture {
            name: "whatsapp-violation",
            text: include_str!("../fixtures/whatsapp-violation.bgm"),
            well_sorted: true,
            verdicts: VIOLATION_VERDICTS,
        },
        Fixture {
            name: "whatsapp-expired",
            text: include_str!("../fixtures/whatsapp-expired.bgm"),
            well_sorted: true,
            verdicts: HOLD_ALL,
        },
        Fixture {
            name: "illformed-nesting",
            text: include_str!("../fixtures/illformed-nesting.bgm"),
            well_sorted: false,
            verdicts: &[],
        },
        Fixture {
            name: "illformed-link",
            text: include_str!("../fixtures/illformed-link.bgm"),
            well_sorted: false,
            verdicts: &[],
        },
        Fixture {
            name: "transfer-demo",
            text: include_str!("../fixtures/transfer-demo.bgm"),
            well_sorted: true,
            verdicts: &[],
        },
        Fixture {
            name: "toy-counter",
            text: include_str!("../fixtures/toy-counter.bgm"),
            well_sorted: true,
            verdicts: &[],
        },
    ]
}
