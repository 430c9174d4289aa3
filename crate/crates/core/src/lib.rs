//! Short presentations of finite groups, quasivariety witnesses, and the
//! flat-extension translation from quasi-equations to equations.

pub mod config;
pub mod flat;
pub mod group;
pub mod membership;
pub mod model;
pub mod presentation;

pub use config::Budgets;
pub use group::{FiniteGroup, GroupError, Homomorphism};
