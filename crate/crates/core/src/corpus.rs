//! Example developments shipped with the library.

pub const EVEN: &str = include_str!("../corpus/even.pcert");
pub const PRELUDE: &str = include_str!("../corpus/prelude.pcert");
pub const STACKS: &str = include_str!("../corpus/stacks.pcert");
pub const BOUNDED_LISTS: &str = include_str!("../corpus/bounded_lists.pcert");
pub const PAIR_ERASED: &str = include_str!("../corpus/pair_erased.lf");
pub const PAIR_WITH_PROOF: &str = include_str!("../corpus/pair_with_proof.lf");

/// `(file name, contents)` of every corpus file.
pub const ALL: &[(&str, &str)] = &[
    ("even.pcert", EVEN),
    ("prelude.pcert", PRELUDE),
    ("stacks.pcert", STACKS),
    ("bounded_lists.pcert", BOUNDED_LISTS),
    ("pair_erased.lf", PAIR_ERASED),
    ("pair_with_proof.lf", PAIR_WITH_PROOF),
];

/// The PVS-Cert developments, all of which check.
pub const PCERT: &[(&str, &str)] = &[
    ("even.pcert", EVEN),
    ("prelude.pcert", PRELUDE),
    ("stacks.pcert", STACKS),
    ("bounded_lists.pcert", BOUNDED_LISTS),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::Fuel;
    use crate::session::check_development;
    use crate::syntax::parse_file;

    #[test]
    fn pcert_files_check() {
        for (name, src) in PCERT {
            let dev = parse_file(src, name).unwrap();
            if let Err(e) = check_development(&dev, Fuel::default()) {
                panic!("{name}: {e}");
            }
        }
    }

    #[test]
    fn erased_pair_is_rejected_and_proof_pair_accepted() {
        let bad = parse_file(PAIR_ERASED, "pair_erased.lf").unwrap();
        let e = check_development(&bad, Fuel::default()).unwrap_err();
        assert!(e.is_protected_symbol());
        let good = parse_file(PAIR_WITH_PROOF, "pair_with_proof.lf").unwrap();
        check_development(&good, Fuel::default()).unwrap();
    }
}
