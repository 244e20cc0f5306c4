//! Seeded random checks shared by the property suite and the acceptance harness.
//! Each returns `Err` with a description of the counterexample.

use std::sync::Arc;

use lnd_core::{
    check_locally_nilpotent, compose_autos, exp_derivation, jacobian_det, lie_bracket, ratio,
    Derivation, Mono, Poly, PolyAuto, Rat, RingSpec,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{poly, ring};

pub type Check = fn(&mut ChaCha8Rng) -> Result<(), String>;

pub const CHECKS: [(&str, Check); 10] = [
    ("leibniz", leibniz),
    ("exp multiplicative", exp_multiplicative),
    ("one-parameter group law", group_law),
    ("bracket antisymmetry", antisymmetry),
    ("jacobi identity", jacobi),
    ("normal form idempotent", normal_form_idempotent),
    ("division identity", division_identity),
    ("ring laws", ring_laws),
    ("jacobian multiplicative", jacobian_multiplicative),
    ("kernel factorially closed", factorially_closed),
];

fn xyz() -> Arc<RingSpec> {
    ring(&["X", "Y", "Z"])
}

fn coeff(rng: &mut ChaCha8Rng) -> Rat {
    let mut n = rng.gen_range(-4..=4);
    if n == 0 {
        n = 1;
    }
    ratio(n, rng.gen_range(1..=3))
}

/// Up to `terms` random terms of degree at most `deg`, using only variables in `vars`.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    r: &Arc<RingSpec>,
    vars: &[usize],
    terms: usize,
    deg: u32,
) -> Poly {
    let count = rng.gen_range(0..=terms);
    let terms: Vec<(Mono, Rat)> = (0..count)
        .map(|_| {
            let mut e = vec![0u32; r.nvars()];
            let mut left = rng.gen_range(0..=deg);
            for &v in vars {
                let k = rng.gen_range(0..=left);
                e[v] = k;
                left -= k;
            }
            (Mono::from_exponents(e), coeff(rng))
        })
        .collect();
    Poly::from_terms(r, terms)
}

fn random_derivation(rng: &mut ChaCha8Rng, r: &Arc<RingSpec>) -> Derivation {
    let all: Vec<usize> = (0..r.nvars()).collect();
    let images = (0..r.nvars())
        .map(|_| random_poly(rng, r, &all, 3, 2))
        .collect();
    Derivation::new(r, images).unwrap()
}

/// Triangular, hence locally nilpotent: `D(x_k)` only involves `x_0..x_{k-1}`.
pub fn random_triangular(rng: &mut ChaCha8Rng, r: &Arc<RingSpec>) -> Derivation {
    let images = (0..r.nvars())
        .map(|k| {
            let earlier: Vec<usize> = (0..k).collect();
            random_poly(rng, r, &earlier, 3, 2)
        })
        .collect();
    Derivation::new(r, images).unwrap()
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

fn exp_of(d: &Derivation, t: &Rat) -> Result<PolyAuto, String> {
    let cert = check_locally_nilpotent(d, 64)
        .certificate()
        .cloned()
        .ok_or("triangular derivation not certified")?;
    exp_derivation(d, t, &cert).map_err(|e| e.to_string())
}

fn expect(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn leibniz(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = xyz();
    let d = random_derivation(rng, &r);
    let all = [0, 1, 2];
    let g = random_poly(rng, &r, &all, 4, 3);
    let h = random_poly(rng, &r, &all, 4, 3);
    let lhs = d.apply(&(&g * &h)).unwrap();
    let rhs = &(&d.apply(&g).unwrap() * &h) + &(&g * &d.apply(&h).unwrap());
    expect(lhs == rhs, || format!("D = {d}, g = {g}, h = {h}"))
}

pub fn exp_multiplicative(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = xyz();
    let d = random_triangular(rng, &r);
    let t = small_rat(rng);
    let u = exp_of(&d, &t)?;
    let all = [0, 1, 2];
    let g = random_poly(rng, &r, &all, 3, 2);
    let h = random_poly(rng, &r, &all, 3, 2);
    let lhs = u.apply(&(&g * &h)).unwrap();
    let rhs = &u.apply(&g).unwrap() * &u.apply(&h).unwrap();
    expect(lhs == rhs, || format!("D = {d}, t = {t}, g = {g}, h = {h}"))
}

pub fn group_law(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = xyz();
    let d = random_triangular(rng, &r);
    let (s, t) = (small_rat(rng), small_rat(rng));
    let lhs = compose_autos(&exp_of(&d, &s)?, &exp_of(&d, &t)?).unwrap();
    let rhs = exp_of(&d, &(&s + &t))?;
    expect(lhs == rhs, || format!("D = {d}, s = {s}, t = {t}"))
}

pub fn antisymmetry(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = xyz();
    let (d, e) = (random_derivation(rng, &r), random_derivation(rng, &r));
    let a = lie_bracket(&d, &e).unwrap();
    let b = lie_bracket(&e, &d).unwrap();
    expect(a.add(&b).unwrap().is_zero(), || format!("D = {d}, E = {e}"))
}

pub fn jacobi(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = xyz();
    let (a, b, c) = (
        random_derivation(rng, &r),
        random_derivation(rng, &r),
        random_derivation(rng, &r),
    );
    let br = |x: &Derivation, y: &Derivation| lie_bracket(x, y).unwrap();
    let sum = br(&a, &br(&b, &c))
        .add(&br(&b, &br(&c, &a)))
        .unwrap()
        .add(&br(&c, &br(&a, &b)))
        .unwrap();
    expect(sum.is_zero(), || format!("A = {a}, B = {b}, C = {c}"))
}

fn hypersurface_rings() -> (Arc<RingSpec>, Arc<RingSpec>) {
    let free = ring(&["X", "Y", "Z", "T"]);
    let quot = free
        .with_relation(&poly(&free, "X^2*Y + X + Z^2 + T^3"))
        .unwrap();
    (free, quot)
}

pub fn normal_form_idempotent(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (free, quot) = hypersurface_rings();
    let g = random_poly(rng, &free, &[0, 1, 2, 3], 5, 5);
    let once = g.to_ring(&quot).unwrap();
    let twice = once.to_ring(&free).unwrap().to_ring(&quot).unwrap();
    let standard = once.terms().iter().all(|(m, _)| quot.is_standard(m));
    expect(once == twice && standard, || format!("g = {g}"))
}

pub fn division_identity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (free, quot) = hypersurface_rings();
    let g = random_poly(rng, &free, &[0, 1, 2, 3], 5, 5);
    let (q, rem) = g.divide_by_relation(&quot).unwrap();
    let p = quot.relation_poly().unwrap();
    let recombined = &(&q * &p) + &rem;
    let reduced = rem.terms().iter().all(|(m, _)| quot.is_standard(m));
    let same_nf = rem.to_ring(&quot).unwrap() == g.to_ring(&quot).unwrap();
    expect(recombined == g && reduced && same_nf, || format!("g = {g}"))
}

pub fn ring_laws(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (_, quot) = hypersurface_rings();
    let all = [0, 1, 2, 3];
    let a = random_poly(rng, &quot, &all, 4, 3);
    let b = random_poly(rng, &quot, &all, 4, 3);
    let c = random_poly(rng, &quot, &all, 4, 3);
    let ok = &(&a * &b) * &c == &a * &(&b * &c)
        && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
        && &a * &b == &b * &a
        && (&a - &a).is_zero();
    expect(ok, || format!("a = {a}, b = {b}, c = {c}"))
}

pub fn jacobian_multiplicative(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = xyz();
    let all = [0, 1, 2];
    let map = |rng: &mut ChaCha8Rng| {
        let images = (0..3).map(|_| random_poly(rng, &r, &all, 3, 2)).collect();
        PolyAuto::new(&r, images).unwrap()
    };
    let (u, v) = (map(rng), map(rng));
    let uv = compose_autos(&u, &v).unwrap();
    let lhs = jacobian_det(uv.images()).unwrap();
    let ju = jacobian_det(u.images())
        .unwrap()
        .substitute(v.images())
        .unwrap();
    let rhs = &ju * &jacobian_det(v.images()).unwrap();
    expect(lhs == rhs, || format!("u = {u}, v = {v}"))
}

pub fn factorially_closed(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let r = xyz();
    // D = ∂_Y + X∂_Z: kernel Q[X, Z - XY]
    let d = Derivation::new(&r, vec![Poly::zero(&r), Poly::one(&r), poly(&r, "X")]).unwrap();
    let pair = ring(&["s", "u"]);
    let base = [poly(&r, "X"), poly(&r, "Z - X*Y")];
    let invariant = |rng: &mut ChaCha8Rng| {
        random_poly(rng, &pair, &[0, 1], 3, 2)
            .substitute(&base)
            .unwrap()
    };
    let pick = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.5) {
            invariant(rng)
        } else {
            random_poly(rng, &r, &[0, 1, 2], 3, 2)
        }
    };
    let (g, h) = (pick(rng), pick(rng));
    if g.is_zero() || h.is_zero() {
        return Ok(());
    }
    let in_kernel = |p: &Poly| d.apply(p).unwrap().is_zero();
    expect(
        in_kernel(&(&g * &h)) == (in_kernel(&g) && in_kernel(&h)),
        || format!("g = {g}, h = {h}"),
    )
}
