macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(series_arithmetic, "series_arithmetic.rs");
example!(harmonic_catalog, "harmonic_catalog.rs");
example!(sense_preserving, "sense_preserving.rs");
example!(coefficient_orders, "coefficient_orders.rs");
example!(m_alpha_family, "m_alpha_family.rs");
example!(kaplan_arcs, "kaplan_arcs.rs");
example!(convolutions, "convolutions.rs");
example!(radius_search, "radius_search.rs");
example!(tangent_polynomials, "tangent_polynomials.rs");
example!(plot_images, "plot_images.rs");
example!(verification, "verification.rs");
