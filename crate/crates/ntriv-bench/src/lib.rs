//! Shared fixtures for the benchmark suite.

use std::sync::Arc;

use ntriv::maps::ProductMapFamily;
use ntriv::module::FiniteModule;
use ntriv::ring::FiniteRing;
use ntriv::{NTrivialExtension, Strictness};

/// `Z_m ⋉₂ Z_m ⋉ Z_m` with multiplication-induced product maps.
pub fn zm_chain2(m: usize) -> Arc<NTrivialExtension> {
    let ring = FiniteRing::zm(m).unwrap();
    let modules = vec![
        FiniteModule::regular(&ring).unwrap(),
        FiniteModule::regular(&ring).unwrap(),
    ];
    let family = ProductMapFamily::ring_multiplication(&ring, &modules).unwrap();
    NTrivialExtension::build(&ring, &modules, family, Strictness::Strict).unwrap()
}
