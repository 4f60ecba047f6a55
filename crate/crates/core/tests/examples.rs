macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(field_arithmetic, "field_arithmetic.rs");
example!(point_counts, "point_counts.rs");
example!(classification, "classification.rs");
example!(wronskian_oracle, "wronskian_oracle.rs");
example!(maximal_lift, "maximal_lift.rs");
example!(quartics, "quartics.rs");
example!(osculating_order, "osculating_order.rs");

#[test]
fn examples_run() {
    field_arithmetic::run_example().expect("field arithmetic");
    point_counts::run_example().expect("point counts");
    classification::run_example().expect("classification");
    wronskian_oracle::run_example().expect("oracle");
    maximal_lift::run_example().expect("maximal lift");
    quartics::run_example().expect("quartics");
    osculating_order::run_example().expect("osculating order");
}
