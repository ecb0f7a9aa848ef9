//! Transcriptions of the defining identities, bundled as `.swd` sources.

/// `(name, source)` for every bundled equation.
pub const EQUATIONS: &[(&str, &str)] = &[
    ("coassoc", include_str!("../../corpus/coassoc.swd")),
    ("counit_left", include_str!("../../corpus/counit_left.swd")),
    (
        "counit_right",
        include_str!("../../corpus/counit_right.swd"),
    ),
    ("unass", include_str!("../../corpus/unass.swd")),
    (
        "antipode_alpha",
        include_str!("../../corpus/antipode_alpha.swd"),
    ),
    (
        "antipode_beta",
        include_str!("../../corpus/antipode_beta.swd"),
    ),
    (
        "antipode_phi",
        include_str!("../../corpus/antipode_phi.swd"),
    ),
    (
        "antipode_phi_inv",
        include_str!("../../corpus/antipode_phi_inv.swd"),
    ),
    ("ayd_module", include_str!("../../corpus/ayd_module.swd")),
    (
        "comodule_unit",
        include_str!("../../corpus/comodule_unit.swd"),
    ),
    (
        "quasi_comodule",
        include_str!("../../corpus/quasi_comodule.swd"),
    ),
    (
        "ayd_module_ii",
        include_str!("../../corpus/ayd_module_ii.swd"),
    ),
    (
        "comodule_unit_ii",
        include_str!("../../corpus/comodule_unit_ii.swd"),
    ),
    (
        "quasi_comodule_ii",
        include_str!("../../corpus/quasi_comodule_ii.swd"),
    ),
];

/// The Type II half-braiding as an expression in `v` and `m`.
pub const LAMBDA: &str = include_str!("../../corpus/lambda.swd");

pub fn equation(name: &str) -> Option<&'static str> {
    EQUATIONS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
