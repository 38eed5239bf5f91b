//! Numerics for the massless Dirac-Coulomb equation restricted to angular
//! modes: the separable structure, its hypergeometric resonance theory, and
//! time-domain verification of the late-time decay it predicts.
//!
//! The crate is organized around one pipeline:
//!
//! * [`clifford`] - exact 4x4 Dirac matrix algebra in the standard
//!   representation, including the direction-dependent `alpha_r`.
//! * [`harmonics`] - scalar and spinor spherical harmonics, the K-operator
//!   eigenbasis `(kappa, mu)`, and quadrature checks of the angular
//!   identities.
//! * [`specfun`] - complex gamma and the Gauss hypergeometric function on
//!   `(0, 1)`, the computational substrate of the resonance theory.
//! * [`boundary`] - the mode-reduced operator family at infinity: kernel
//!   solutions, closed-form Wronskian, variation-of-parameters inverse,
//!   resolvent-norm scans, the resonance pole lattice
//!   `sigma = -Z - i (1 + nu + m)`, and the exponent index sets.
//! * [`evolution`] - the radial time-domain solver for
//!   `i d/dt psi = B psi` on a mode, with Friedlander radiation-field
//!   extraction along outgoing rays.
//! * [`decay`] - power-law fits of the extracted tail, Huygens (tail-free)
//!   checks at zero charge, and comparison against the exponent lattice.
//!
//! The library is `no_std` (with `alloc`); all IO lives in the companion
//! command-line crate.

#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod band;
pub mod boundary;
pub mod clifford;
pub mod decay;
pub mod evolution;
pub mod harmonics;
pub mod quad;
pub mod specfun;
pub mod util;

/// Complex double, the scalar type of the crate.
pub type C64 = num_complex::Complex<f64>;
