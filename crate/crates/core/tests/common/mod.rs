#![allow(dead_code)]

use std::sync::Arc;

use lnd_core::{parse_poly, Derivation, MonomialOrder, Poly, PolyAuto, RingSpec};

pub fn ring(vars: &[&str]) -> Arc<RingSpec> {
    RingSpec::free(vars, MonomialOrder::GradedLex).unwrap()
}

pub fn poly(r: &Arc<RingSpec>, s: &str) -> Poly {
    parse_poly(s, r).unwrap()
}

pub fn der(r: &Arc<RingSpec>, pairs: &[(&str, &str)]) -> Derivation {
    let pairs: Vec<(&str, Poly)> = pairs.iter().map(|(v, s)| (*v, poly(r, s))).collect();
    Derivation::from_named(r, &pairs).unwrap()
}

pub fn auto(r: &Arc<RingSpec>, pairs: &[(&str, &str)]) -> PolyAuto {
    let pairs: Vec<(&str, Poly)> = pairs.iter().map(|(v, s)| (*v, poly(r, s))).collect();
    PolyAuto::from_named(r, &pairs).unwrap()
}

/// `∂_Y`, `∂_X + Z∂_Y`, `∂_Z` on Q[X,Y,Z].
pub fn triple() -> (Arc<RingSpec>, Vec<Derivation>) {
    let r = ring(&["X", "Y", "Z"]);
    let ds = vec![
        der(&r, &[("Y", "1")]),
        der(&r, &[("X", "1"), ("Y", "Z")]),
        der(&r, &[("Z", "1")]),
    ];
    (r, ds)
}

/// Translation family with inert parameters a, b, c.
pub fn parametric() -> Arc<RingSpec> {
    ring(&["a", "b", "c", "X", "Y", "Z"])
}

/// `Z∂_X`, `∂_Y` on Q[X,Y,Z].
pub fn shear() -> (Arc<RingSpec>, Vec<Derivation>) {
    let r = ring(&["X", "Y", "Z"]);
    let ds = vec![der(&r, &[("X", "Z")]), der(&r, &[("Y", "1")])];
    (r, ds)
}

/// `2Z∂_Y - X²∂_Z`, `3T²∂_Y - X²∂_T` on the hypersurface X²Y + X + Z² + T³ = 0.
pub fn hypersurface() -> (Arc<RingSpec>, Vec<Derivation>) {
    let free = ring(&["X", "Y", "Z", "T"]);
    let r = free
        .with_relation(&poly(&free, "X^2*Y + X + Z^2 + T^3"))
        .unwrap();
    let ds = vec![
        der(&r, &[("Y", "2*Z"), ("Z", "-X^2")]),
        der(&r, &[("Y", "3*T^2"), ("T", "-X^2")]),
    ];
    (r, ds)
}

/// `∂_Y`, `∂_X + Z∂_Y` on Q[X,Y,Z]: a globally trivial family.
pub fn stacked() -> (Arc<RingSpec>, Vec<Derivation>) {
    let (r, ds) = triple();
    (r, ds[..2].to_vec())
}

pub mod props;
