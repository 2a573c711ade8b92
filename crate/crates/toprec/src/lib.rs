//! Eynard–Orantin topological recursion on the gap spectral curve
//! ξ = ½ + (z + 1/z)/4, y = s(z²+1)/(z²−1).
//!
//! Correlators are dz-coefficient functions stored as [`PoleBasisTensor`]s
//! with their `s`-dependence carried as an integer grade.

mod curve;
mod energy;
mod engine;
mod error;
mod latex;
mod store;
mod table;

pub use curve::{recursion_kernel, w2_0, GapSpectralCurve, BRANCH_POINTS, KERNEL_S_GRADE};
pub use energy::{free_energy, verify_main_theorem, FreeEnergy, MainTheoremReport, Provenance, TheoremRow};
pub use engine::{Convention, Engine};
pub use error::TrError;
pub use latex::{correlator_latex, correlator_table_latex, free_energy_latex};
pub use store::{dependencies, hex_digest, is_stable, resolve_cache_dir, Correlator, Store, CACHE_ENV, DEFAULT_CACHE_DIR};

pub use p5_algebra::PoleBasisTensor;
pub use table::{compare_printed_table, printed_correlators, w2_1_unit_numerator, PrintedEntry, TableRow, TableStatus};
