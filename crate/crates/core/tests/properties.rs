mod props;

macro_rules! property_tests {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = props::$name(props::CASES, props::SEED) {
                    panic!("{e}");
                }
            }
        )*
    };
}

property_tests!(
    reciprocal_involution,
    decomposition_round_trip,
    gamma_round_trip,
    gamma_positive_shape,
    basis_p_round_trip,
    interlacing_conventions,
    interlacing_oracle,
    interlacing_shift_reciprocal,
    nonnegative_combinations,
    interlacing_recursion,
    isolation_multiplicities,
);

#[test]
fn registry_lists_every_property() {
    assert_eq!(props::all().len(), 11);
}
