//! The Caldero–Chapoton map and checks of its theorems on concrete instances.

mod cc;
mod fixtures;
mod kronecker;
mod suites;
mod verify;

pub use cc::{
    cc_by_definition, cc_from_table, cc_of_module, cc_of_object, check_module_budget, chi_table,
    sub_dimension_vectors, x_power, CcOptions, CcResult, ChiEntry,
};
pub use fixtures::{root_fixtures, kronecker_fixture, module_fixture, shifted_fixture, ExchangeFixture};
pub use kronecker::{
    kronecker_suite, linearization_check, series_check, series_product, threefold_check, w1_closed_form,
    x_of_u, y_by_mutation, y_by_recurrence, y_minus_one, SERIES_NOTE,
};
pub use verify::{
    delta, indecomposable_rigid_objects, tilting_bijection_check, variable_bijection_check,
    verify_denominator, verify_exchange, Report, Status,
};
pub use suites::{bijection_suite, connectivity_suite, denominator_suite, exchange_suite, initial_seed, laurent_suite};
