pub mod alexander;
pub mod catalog;
pub mod cli;
pub mod exactla;
pub mod jacobian;
pub mod polyring;
pub mod spectral;
pub mod syzygy;
