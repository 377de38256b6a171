//! Set order relations and complete lattices of sets generated by families of
//! monotone scalar functions, with solution concepts for set optimization on
//! finite grids.
//!
//! Lattice elements are identified with their [`Profile`]: the tuple of
//! inf-extension values over a finite [`ScalarFamily`].

pub mod cone;
pub mod error;
pub mod extended;
pub mod families;
pub mod family;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod scenarios;
pub mod solver;
pub mod stochastic;
pub mod vector;

pub use cone::{Cone, StrictFace, DEFAULT_TOL};
pub use error::{ConeError, FamilyError, LatticeError, SolverError, StochasticError};
pub use extended::ExtendedReal;
pub use families::{
    directional_closure, indicator_family, linear_family, oriented_distance_eval, oriented_distance_family, tau_eval, translative_family,
    DiscretePreorder, TranslativeSpec,
};
pub use family::{normalize_family, FamilyKind, Member, ScalarFamily};
pub use lattice::{
    embed, families_equivalent, hull_materialize_linear, hull_membership, inf_extend, lattice_inf, lattice_sup, profile_of, set_leq,
    sup_extend, HPolyhedron, PointCloudSet, Profile, SupElement,
};
pub use scenarios::{list_builtins, load_scenario, run_scenario, Scenario, ScenarioError};
pub use solver::{
    construct_solution, gap, global_inf_profile, hausdorff_distance, inf_gap, is_infimizer, is_solution, min_set, minimizing_net,
    weierstrass_solve, well_posedness_check, AnalyticGap, Gap, Mode, SetValue, SetValuedProblem, SolutionReport,
};
pub use stochastic::{avar, avar_family, c_distribution_family, fsd_leq, lower_c_distribution, ssd_leq, ssd_oracle, DiscreteRV};
pub use vector::{c_extend, check_weff_equivalence, weff, weff_convex_hull, weierstrass_corollary_harness, VectorProblem};
