//! Randomized generalized singular values of matrix pairs.
//!
//! For a pair `G₁ ∈ 𝔽^{m×n}`, `G₂ ∈ 𝔽^{p×n}` whose stacked matrix has full
//! column rank, the crate computes the generalized singular values
//! `(αᵢ, βᵢ)` by first compressing each matrix onto a randomized basis of
//! its column space, recovers the reduced GSVD
//! `G₁ = U diag(α) R`, `G₂ = V diag(β) R`, derives the comparative
//! quantities used to contrast two data sets sharing column features, and
//! certifies the results with perturbation bounds.
//!
//! ```
//! use rgsv::gsv::{compute_gsv, GsvOptions};
//! use rgsv::synth::{synth_gmp, SynthSpec};
//!
//! let truth = synth_gmp::<f64>(&SynthSpec::new(120, 90, 60).with_seed(7)).unwrap();
//! let spectrum = compute_gsv(&truth.pair, &GsvOptions::default()).unwrap();
//! assert!(spectrum.max_deviation(&truth.true_spectrum) < 1e-8);
//! ```

pub mod analysis;
pub mod bounds;
pub mod error;
pub mod gsv;
pub mod io;
pub mod matrix;
pub mod range_finder;
pub mod synth;

pub use analysis::{compare, ComparativeReport};
pub use bounds::{certify_run, BoundCertificate};
pub use error::{Error, Result};
pub use gsv::{compute_gsv, recover_gsvd, GmpPair, GsvOptions, GsvSpectrum, GsvdFactors, Method};
pub use matrix::{ComplexMatrix, DenseMatrix, Field, RealMatrix};
pub use range_finder::{extract_basis, ExtractionConfig, Tolerance};
pub use synth::{synth_gmp, SynthSpec};
