pub mod basis;
pub mod element;
pub mod error;
pub mod forms;
pub mod parse;
pub mod scalar;
pub mod star;
pub mod linalg;
pub mod normal_form;
pub mod diagnostics;
pub mod kothe;
pub mod seminorm;
pub mod series;
pub mod lattice;
pub mod json;
pub mod sampling;
pub mod cli;
