use proptest::prelude::*;
use semidirac_cli::{CliError, RunConfig};

fn config_text(delta: f64, x_min: f64, x_max: f64, y_max: f64, nx: usize, ny: usize, value: f64) -> String {
    format!(
        r#"{{
  "params": {{ "delta": {delta} }},
  "grid": {{ "x_min": {x_min}, "x_max": {x_max}, "y_max": {y_max}, "nx": {nx}, "ny": {ny} }},
  "potential": {{ "kind": "box", "a": 0.5, "b": 1.5, "value": {value} }},
  "solver": {{ "mode": "gap", "k": 3 }}
}}"#
    )
}

proptest! {
    #[test]
    fn canonical_form_is_a_fixed_point(
        delta in 0.01..10.0f64, x_min in -20.0..-2.0f64, x_max in 2.0..20.0f64, y_max in 2.0..20.0f64,
        nx in 8usize..200, ny in 8usize..100, value in -8.0..8.0f64,
    ) {
        let c = RunConfig::parse(&config_text(delta, x_min, x_max, y_max, nx, ny, value)).unwrap();
        let text = c.canonical();
        let again = RunConfig::parse(&text).unwrap();
        prop_assert_eq!(&again, &c);
        prop_assert_eq!(again.canonical(), text);
    }

    #[test]
    fn bad_grids_are_config_errors(nx in 0usize..4, ny in 4usize..50, delta in -2.0..0.0f64) {
        for text in [config_text(1.0, -5.0, 5.0, 5.0, nx, ny, 0.0), config_text(delta, -5.0, 5.0, 5.0, 11, ny, 0.0)] {
            let e = RunConfig::parse(&text).unwrap_err();
            prop_assert!(matches!(e, CliError::Config(_)), "{e}");
            prop_assert_eq!(e.exit_code(), 2);
        }
    }
}
