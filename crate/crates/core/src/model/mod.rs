//! Nonlinearities, weight laws, envelopes and hypothesis validators.

pub mod envelope;
pub mod hypotheses;
pub mod nonlinearity;
pub mod weight;

pub use envelope::{envelope_inf_above, envelope_sup_above, envelope_sup_below};
pub use hypotheses::{
    keller_osserman_check, lambda_star, ratio_liminf_check, validate, Diagnostic, HypothesisOpts,
    HypothesisReport, KoReport, LambdaStar, LiminfReport, ProblemSpec, ValidationMode,
};
pub use nonlinearity::{NonlinearityForm, NonlinearityKind, NonlinearityModel};
pub use weight::WeightModel;
