//! Two-dimensional time-harmonic TM wave scattering at a locally perturbed
//! interface between two homogeneous orthotropic half-planes.
//!
//! The library builds the change of coordinates that makes each half-plane
//! isotropic, evaluates the layered background Green's function by spectral
//! quadrature, sets up a regionalized complex coordinate stretching in each
//! half-plane, and solves the resulting interface problem with a high-order
//! Nystrom boundary integral method.

pub mod background;
pub mod bie;
pub mod linalg;
pub mod geometry;
pub mod media;
pub mod quad;
pub mod rpml;
pub mod specfun;
mod specfun_tables;
