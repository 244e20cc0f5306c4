//! One function per subcommand; each turns session objects into a JSON result.

use lnd_core::certify::ASSUMED_HYPOTHESES;
use lnd_core::{
    certify_coordinate, check_locally_nilpotent, compose_autos, degenerate_fibers, exp_derivation,
    fiber_rectify, format_rat, invariant_space, k_span_membership, kernel_generator, lie_bracket,
    log_automorphism, mates_to_derivations, parse_rat, preslice_search, rectify_full,
    slice_descent, CertifyOutcome, Derivation, Error, FiberReport, Nilpotency, Poly, PolyAuto,
    PresliceResult, Rat, Result, Session,
};
use serde_json::{json, Map, Value};

use crate::report::{Bounds, Outcome, Status};

pub fn poly(p: &Poly) -> Value {
    json!(p.to_string())
}

fn rat(r: &Rat) -> Value {
    json!(format_rat(r))
}

fn polys(ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

/// Nonzero generator images, in variable order.
pub fn derivation(d: &Derivation) -> Value {
    let mut m = Map::new();
    for (v, p) in d.nonzero_images() {
        m.insert(v.to_string(), poly(p));
    }
    Value::Object(m)
}

pub fn auto(u: &PolyAuto) -> Value {
    let mut m = Map::new();
    for (v, p) in u.ring().vars().iter().zip(u.images()) {
        m.insert(v.clone(), poly(p));
    }
    Value::Object(m)
}

fn derivations(s: &Session, names: &[String]) -> Result<Vec<Derivation>> {
    names.iter().map(|n| s.derivation(n).cloned()).collect()
}

fn parse_alpha(text: &str) -> Result<Rat> {
    parse_rat(text)
}

fn kernel_or_given(s: &Session, ds: &[Derivation], f: Option<&str>, b: &Bounds) -> Result<Poly> {
    match f {
        Some(text) => s.poly_or_expr(text),
        None => kernel_generator(&s.ring, ds, b.max_degree),
    }
}

pub fn check(s: &Session, names: &[String], b: &Bounds) -> Result<Outcome> {
    let names: Vec<String> = if names.is_empty() {
        s.derivations.iter().map(|(n, _)| n.clone()).collect()
    } else {
        names.to_vec()
    };
    let mut status = Status::Ok;
    let mut out = Vec::new();
    for name in &names {
        let d = s.derivation(name)?;
        let mut entry = Map::new();
        entry.insert("name".into(), json!(name));
        entry.insert("images".into(), derivation(d));
        match check_locally_nilpotent(d, b.max_power) {
            Nilpotency::Certified(cert) => {
                let mut degs = Map::new();
                for (v, k) in s.ring.vars().iter().zip(cert.degrees()) {
                    degs.insert(v.clone(), json!(k));
                }
                entry.insert("locally_nilpotent".into(), json!("certified"));
                entry.insert("certificate".into(), Value::Object(degs));
            }
            Nilpotency::Unknown => {
                status = Status::Inconclusive;
                entry.insert("locally_nilpotent".into(), json!("unknown"));
            }
        }
        out.push(Value::Object(entry));
    }
    Ok(Outcome {
        status,
        result: json!({
            "ring": s.ring.to_string(),
            "derivations": out,
        }),
        hypotheses: Vec::new(),
    })
}

fn membership(e: &Derivation, basis_names: &[String], s: &Session) -> Result<Map<String, Value>> {
    let basis = derivations(s, basis_names)?;
    let coeffs = k_span_membership(e, &basis)?;
    let mut m = Map::new();
    m.insert("basis".into(), json!(basis_names));
    m.insert("in_span".into(), json!(coeffs.is_some()));
    if let Some(cs) = coeffs {
        let mut c = Map::new();
        for (n, r) in basis_names.iter().zip(&cs) {
            c.insert(n.clone(), rat(r));
        }
        m.insert("coefficients".into(), Value::Object(c));
    }
    Ok(m)
}

/// The bracket, tested against `basis` or, by default, every derivation declared
/// before the earlier operand.
pub fn bracket(s: &Session, d: &str, e: &str, basis: Option<&[String]>) -> Result<Outcome> {
    let (dd, ee) = (s.derivation(d)?, s.derivation(e)?);
    let br = lie_bracket(dd, ee)?;
    let basis: Vec<String> = match basis {
        Some(b) => b.to_vec(),
        None => s
            .derivations
            .iter()
            .map(|(n, _)| n.clone())
            .take_while(|n| n != d && n != e)
            .collect(),
    };
    let mut m = Map::new();
    m.insert("bracket".into(), derivation(&br));
    m.extend(membership(&br, &basis, s)?);
    Ok(Outcome::ok(Value::Object(m)))
}

pub fn span(s: &Session, target: &str, basis: &[String]) -> Result<Outcome> {
    let e = s.derivation(target)?;
    let mut m = Map::new();
    m.insert("target".into(), derivation(e));
    m.extend(membership(e, basis, s)?);
    Ok(Outcome::ok(Value::Object(m)))
}

pub fn exp(s: &Session, name: &str, t: &str, b: &Bounds) -> Result<Outcome> {
    let d = s.derivation(name)?;
    let t = parse_rat(t)?;
    let cert = match check_locally_nilpotent(d, b.max_power) {
        Nilpotency::Certified(c) => c,
        Nilpotency::Unknown => {
            return Err(Error::BoundExhausted {
                stage: "check_locally_nilpotent",
                bound: b.max_power,
                detail: format!("no nilpotency certificate for {name}"),
            })
        }
    };
    let u = exp_derivation(d, &t, &cert)?;
    Ok(Outcome::ok(json!({
        "derivation": derivation(d),
        "t": rat(&t),
        "automorphism": auto(&u),
    })))
}

pub fn log(s: &Session, name: &str, b: &Bounds) -> Result<Outcome> {
    let u = s.auto(name)?;
    let d = log_automorphism(u, b.max_iter)?;
    Ok(Outcome::ok(json!({
        "automorphism": auto(u),
        "derivation": derivation(&d),
    })))
}

pub fn compose(s: &Session, u: &str, v: &str) -> Result<Outcome> {
    let (uu, vv) = (s.auto(u)?, s.auto(v)?);
    let c = compose_autos(uu, vv)?;
    Ok(Outcome::ok(json!({
        "first": auto(uu),
        "second": auto(vv),
        "composition": auto(&c),
    })))
}

pub fn invariants(s: &Session, names: &[String], b: &Bounds) -> Result<Outcome> {
    let ds = derivations(s, names)?;
    let inv = invariant_space(&s.ring, &ds, b.max_degree)?;
    Ok(Outcome::ok(json!({
        "degree_bound": inv.degree_bound,
        "dimension": inv.dim(),
        "basis": polys(&inv.basis),
    }))
    .with_hypotheses(&ASSUMED_HYPOTHESES[1..]))
}

pub fn kernel(s: &Session, names: &[String], b: &Bounds) -> Result<Outcome> {
    let ds = derivations(s, names)?;
    let f = kernel_generator(&s.ring, &ds, b.max_degree)?;
    Ok(
        Outcome::ok(json!({ "f": poly(&f), "degree_bound": b.max_degree }))
            .with_hypotheses(&ASSUMED_HYPOTHESES[1..]),
    )
}

fn preslice_json(p: &PresliceResult, f: &Poly) -> Value {
    json!({
        "index": p.index,
        "p": poly(&p.p),
        "q": p.q.to_string(),
        "q_of_f": poly(&p.q.eval_poly(f)),
        "degree_bound": p.degree_bound,
    })
}

pub fn preslice(
    s: &Session,
    names: &[String],
    index: usize,
    f: Option<&str>,
    b: &Bounds,
) -> Result<Outcome> {
    let ds = derivations(s, names)?;
    let f = kernel_or_given(s, &ds, f, b)?;
    let res = preslice_search(index, &ds, &f, b.max_degree)?;
    let mut v = preslice_json(&res, &f);
    v["f"] = poly(&f);
    Ok(Outcome::ok(v).with_hypotheses(&ASSUMED_HYPOTHESES[1..]))
}

fn fiber_report(r: &FiberReport) -> Value {
    json!({
        "factors": r.factors.iter().map(|(h, m)| json!({
            "factor": h.to_string(),
            "multiplicity": m,
        })).collect::<Vec<_>>(),
        "rational_roots": r.rational_roots.iter().map(|root| json!({
            "alpha": rat(&root.alpha),
            "multiplicity": root.multiplicity,
            "indices": root.indices,
        })).collect::<Vec<_>>(),
        "irrational_factors": r.residual.iter().map(|(h, m)| json!({
            "factor": h.to_string(),
            "multiplicity": m,
        })).collect::<Vec<_>>(),
    })
}

pub fn fibers(s: &Session, names: &[String], f: Option<&str>, b: &Bounds) -> Result<Outcome> {
    let ds = derivations(s, names)?;
    let f = kernel_or_given(s, &ds, f, b)?;
    let res = (1..=ds.len())
        .map(|i| preslice_search(i, &ds, &f, b.max_degree))
        .collect::<Result<Vec<_>>>()?;
    let qs: Vec<_> = res.iter().map(|p| p.q.clone()).collect();
    let report = degenerate_fibers(&qs)?;
    Ok(Outcome::ok(json!({
        "f": poly(&f),
        "preslices": res.iter().map(|p| preslice_json(p, &f)).collect::<Vec<_>>(),
        "degenerate_fibers": fiber_report(&report),
    }))
    .with_hypotheses(&ASSUMED_HYPOTHESES[1..]))
}

pub fn descent(
    s: &Session,
    names: &[String],
    p: &str,
    slices: &[String],
    b: &Bounds,
) -> Result<Outcome> {
    let ds = derivations(s, names)?;
    let p = s.poly_or_expr(p)?;
    let gens = slices
        .iter()
        .map(|t| s.poly_or_expr(t))
        .collect::<Result<Vec<_>>>()?;
    let d = slice_descent(&p, &ds, &gens, b.max_degree)?;
    let steps: Vec<Value> = d
        .steps
        .iter()
        .map(|st| {
            json!({
                "p": poly(&st.p),
                "d1_image": poly(&st.image),
                "applied": st.applied.map(|j| names[j - 1].clone()),
            })
        })
        .collect();
    Ok(Outcome::ok(json!({
        "slice": poly(&d.slice),
        "descents": d.descents(),
        "steps": steps,
    })))
}

pub fn rectify(s: &Session, names: &[String], b: &Bounds) -> Result<Outcome> {
    let ds = derivations(s, names)?;
    let r = rectify_full(&ds, b.max_degree)?;
    Ok(Outcome::ok(json!({
        "coordinates": polys(&r.coordinates),
        "jacobian": r.jacobian.as_ref().map(rat),
        "descents": r.descents.iter().map(|d| d.descents()).collect::<Vec<_>>(),
    }))
    .with_hypotheses(&ASSUMED_HYPOTHESES[1..]))
}

pub fn certify(s: &Session, names: &[String], b: &Bounds) -> Result<Outcome> {
    let ds = derivations(s, names)?;
    match certify_coordinate(&ds, b.max_degree)? {
        CertifyOutcome::Certificate(c) => Ok(Outcome::ok(json!({
            "kind": "certificate",
            "f": poly(&c.f),
            "slices": polys(&c.slices),
            "jacobian": c.jacobian.as_ref().map(rat),
            "degree_bound": c.degree_bound,
        }))
        .with_hypotheses(&c.assumed_hypotheses)),
        CertifyOutcome::Degenerate {
            f,
            preslices,
            report,
        } => Ok(Outcome {
            status: Status::Domain,
            result: json!({
                "kind": "fiber-report",
                "f": poly(&f),
                "preslices": preslices.iter().map(|p| preslice_json(p, &f)).collect::<Vec<_>>(),
                "degenerate_fibers": fiber_report(&report),
            }),
            hypotheses: ASSUMED_HYPOTHESES.iter().map(|h| h.to_string()).collect(),
        }),
    }
}

pub fn fiber_rect(
    s: &Session,
    names: &[String],
    alpha: &str,
    f: Option<&str>,
    b: &Bounds,
) -> Result<Outcome> {
    let ds = derivations(s, names)?;
    let alpha = parse_alpha(alpha)?;
    let f = kernel_or_given(s, &ds, f, b)?;
    let fr = fiber_rectify(&ds, &f, &alpha, b.max_degree)?;
    let mut elim = Map::new();
    for (v, p) in &fr.fiber.eliminated {
        elim.insert(v.clone(), poly(p));
    }
    Ok(Outcome::ok(json!({
        "alpha": rat(&alpha),
        "f": poly(&f),
        "fiber_ring": fr.fiber.ring.to_string(),
        "eliminated": elim,
        "induced": fr.induced.iter().map(derivation).collect::<Vec<_>>(),
        "coordinates": polys(&fr.coordinates),
        "jacobian": fr.jacobian.as_ref().map(rat),
    }))
    .with_hypotheses(&ASSUMED_HYPOTHESES[1..]))
}

pub fn mates(s: &Session, name: &str) -> Result<Outcome> {
    let u = s.auto(name)?;
    let ds = mates_to_derivations(u)?;
    Ok(Outcome::ok(json!({
        "map": auto(u),
        "derivations": ds.iter().map(derivation).collect::<Vec<_>>(),
        "dual": true,
        "commuting": true,
    })))
}
