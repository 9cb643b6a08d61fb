pub mod algebra;
pub mod classify;
pub mod fusion;
pub mod groups;
pub mod json;
pub mod matrix;
pub mod modular;
pub mod nimrep;
pub mod par;
