pub mod dimer;
pub mod hamiltonian;
pub mod ladder;
pub mod state;

pub use dimer::{
    check_dimer_constraint, dimer_energy, dimer_state, gamma_from, gamma_of,
    gs_energy_lower_bound, singlet_state, sufficient_gs_condition, DimerEnergy,
};
pub use hamiltonian::{
    apply_hamiltonian, apply_rung_operator, apply_site_component, apply_total_spin,
    apply_total_spin_squared, energy_expectation, hamiltonian_dense, Axis, RungOperator,
};
pub use ladder::{
    build_spec, build_spec_with_cap, uniform_spec, Boundary, Bond, BondKind, CouplingPattern,
    LadderSpec, LadderSpecFile, UniformCouplings,
};
pub use state::StateVector;
