pub mod density;
pub mod eigen;
pub mod ground;
pub mod landscape;
pub mod sector;
pub mod srmf;

pub use density::{bures_angle, fidelity, pure_fidelity, reduced_density_matrix, DensityMatrix};
pub use eigen::{eigen_solvers, EigenOptions, EigenSolver, SpectrumResult};
pub use ground::{
    ed_departure_point, ground_state_full, lanczos_ground, low_spectrum, relative_energy_curve,
    CurvePoint, EdOptions, GroundState, LowSpectrum,
};
pub use landscape::{fidelity_landscape, local_references, LandscapeRow, LocalReference};
pub use sector::{sector_hamiltonian, SectorBasis, SparseSymmetric};
pub use srmf::{srmf_local_pair_state, PairKind};
