//! Reference implementations shared by the integration tests. None of this
//! calls into the library's special functions or solvers.

#![allow(dead_code)]

pub mod dipole;
pub mod mie;
pub mod volterra;
