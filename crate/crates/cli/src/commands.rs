use std::collections::BTreeMap;
use std::sync::Arc;

use nslen_core::group::{
    parse_group_spec, AutCoset, EnumeratedGroup, OuterSpec, PermGroup, Permutation, SimpleGroup,
    SimpleSpec, Subgroup, SymGroup,
};
use nslen_core::permstat::{
    check_support_theorem, f_bound_parts, markov_chebyshev_report, moments,
};
use nslen_core::structure::{
    enumerate, identify_simple, minimal_normal_subgroups, nonsolvable_length, permutation_part,
    semisimple_certificate, semisimple_decomposition, socle, solvable_radical, Engine, Fingerprint,
    LambdaOptions, PermutationPart, SemisimpleCertificate,
};
use nslen_core::wordmap::{
    bad_exponent_scan, coset_value_set, coset_value_set_full, evaluate, fiber_distribution,
    fiber_estimate_perm, identity_witness, satisfies_prob_identity, wmb_refute,
};
use nslen_core::{parse_word, Error, Exec, Word};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::args::*;
use crate::report::{parse_rational, rat, ratio, to_value, Failure, Report};

type Out = Result<Report, Failure>;

fn build(spec: &str) -> Result<(String, PermGroup), Error> {
    let spec = parse_group_spec(spec)?;
    let g = spec.build()?;
    Ok((spec.to_string(), g))
}

fn perms<'a>(ps: impl IntoIterator<Item = &'a Permutation>) -> Value {
    Value::Array(
        ps.into_iter()
            .map(|p| Value::String(p.to_string()))
            .collect(),
    )
}

fn elem(e: &EnumeratedGroup, i: u32) -> String {
    e.permutation(i)
        .map_or_else(|| format!("#{i}"), |p| p.to_string())
}

fn subgroup_gens(e: &EnumeratedGroup, h: &Subgroup) -> Value {
    Value::Array(
        h.gens()
            .iter()
            .map(|&i| Value::String(elem(e, i)))
            .collect(),
    )
}

fn fits(g: &PermGroup, cap: u64) -> bool {
    g.order() <= BigUint::from(cap)
}

fn simple_of(spec: &str) -> Result<SimpleSpec, Error> {
    spec.parse()
}

pub fn group(a: &GroupArgs, g: &Global) -> Out {
    let (spec, grp) = build(&a.group)?;
    let mut result = json!({
        "spec": spec,
        "degree": grp.degree(),
        "order": grp.order().to_string(),
        "generators": perms(grp.gens()),
        "orbit_sizes": grp.orbits().iter().map(|o| o.len()).collect::<Vec<_>>(),
        "transitive": grp.is_transitive(),
        "solvable": grp.is_solvable(),
        "enumerated": false,
    });
    if fits(&grp, g.max_order) {
        let e = enumerate(&grp, g.max_order)?;
        let simple = Subgroup::whole(&e).is_simple(&e);
        let fp = Fingerprint::of_group(&e);
        let m = result.as_object_mut().expect("object");
        m.insert("enumerated".into(), json!(true));
        m.insert("exponent".into(), json!(e.exponent()));
        m.insert("abelian".into(), json!(e.is_abelian()));
        m.insert("simple".into(), json!(simple));
        m.insert("element_orders".into(), to_value(&fp.element_orders));
        if simple && !e.is_abelian() {
            m.insert("identified_as".into(), to_value(&identify_simple(&fp)));
        }
    }
    Ok(Report {
        input: json!({ "group": a.group }),
        result,
        verdict: "computed".into(),
    })
}

pub fn fibers(a: &FibersArgs, g: &Global, exec: &Exec) -> Out {
    let w = parse_word(&a.word)?;
    let (spec, grp) = build(&a.group)?;
    let input = json!({ "word": a.word, "group": a.group, "samples": a.samples });
    if let Some(samples) = a.samples {
        let est = fiber_estimate_perm(&w, &grp, samples, g.seed, exec)?;
        let p = est.identity_proportion();
        let result = json!({
            "word": w.to_string(),
            "group": spec,
            "mode": "sampled",
            "samples": est.samples,
            "seed": est.seed,
            "distinct_values": est.distinct_values,
            "argmax": est.argmax.to_string(),
            "max_count": est.max_count,
            "max_fraction": ratio(est.max_count, est.samples),
            "identity_count": est.identity_count,
            "identity_fraction": ratio(est.identity_count, est.samples),
            "identity_radius_99": est.radius(p),
        });
        return Ok(Report {
            input,
            result,
            verdict: "sampled".into(),
        });
    }
    let e = enumerate(&grp, g.max_order)?;
    let dist = fiber_distribution(&w, &e, g.max_tuples, exec)?;
    let (arg, max) = dist.argmax();
    let fibers: Vec<Value> = dist
        .counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| json!({ "element": elem(&e, i as u32), "count": c, "proportion": rat(&dist.proportion(i as u32)) }))
        .collect();
    let result = json!({
        "word": w.to_string(),
        "group": spec,
        "mode": "exact",
        "group_order": dist.order,
        "arity": dist.arity,
        "total": dist.total().to_string(),
        "image_size": dist.image_size(),
        "identity": { "count": dist.counts[0], "proportion": rat(&dist.proportion(0)) },
        "max_fiber": { "element": elem(&e, arg), "count": max, "proportion": rat(&dist.proportion(arg)) },
        "fibers": fibers,
    });
    Ok(Report {
        input,
        result,
        verdict: "exact".into(),
    })
}

pub fn identity(a: &IdentityArgs, g: &Global, exec: &Exec) -> Out {
    let w = parse_word(&a.word)?;
    let (spec, grp) = build(&a.group)?;
    let e = enumerate(&grp, g.max_order)?;
    let input = json!({ "word": a.word, "group": a.group, "rho": a.rho });
    if let Some(rho) = &a.rho {
        let rho = parse_rational(rho)?;
        let v = satisfies_prob_identity(&w, &e, &rho, g.max_tuples, exec)?;
        let result = json!({
            "word": w.to_string(),
            "group": spec,
            "rho": rat(&rho),
            "holds": v.holds,
            "element": elem(&e, v.element),
            "proportion": rat(&v.proportion),
        });
        let verdict = if v.holds { "holds" } else { "fails" };
        return Ok(Report {
            input,
            result,
            verdict: verdict.into(),
        });
    }
    let witness = identity_witness(&w, &e, g.max_tuples, exec)?;
    let mut result =
        json!({ "word": w.to_string(), "group": spec, "satisfied": witness.is_none() });
    if let Some(idx) = &witness {
        let ps: Vec<Permutation> = idx
            .iter()
            .map(|&i| e.permutation(i).expect("permutation group").clone())
            .collect();
        let assign: BTreeMap<_, _> = w.variables().into_iter().zip(ps.iter().cloned()).collect();
        let value = evaluate(
            &SymGroup {
                degree: grp.degree(),
            },
            &w,
            &assign,
        )?;
        let m = result.as_object_mut().expect("object");
        m.insert("witness".into(), perms(&ps));
        m.insert("value".into(), json!(value.to_string()));
    }
    let verdict = if witness.is_none() {
        "satisfied"
    } else {
        "refuted"
    };
    Ok(Report {
        input,
        result,
        verdict: verdict.into(),
    })
}

fn cosets_for(w: &Word, spec: SimpleSpec, outers: &[OuterSpec]) -> Result<Vec<AutCoset>, Error> {
    if outers.len() != w.num_variables() {
        return Err(Error::InvalidArgument(format!(
            "{} outer classes given for a word in {} variables",
            outers.len(),
            w.num_variables()
        )));
    }
    let s = SimpleGroup::new(spec)?;
    outers.iter().map(|o| s.coset(*o)).collect()
}

pub fn coset(a: &CosetArgs, g: &Global, exec: &Exec) -> Out {
    let w = parse_word(&a.word)?;
    let spec = simple_of(&a.simple)?;
    let outers = OuterSpec::parse_list(&a.outer)?;
    let cosets = cosets_for(&w, spec, &outers)?;
    let values = coset_value_set(&w, &cosets, g.max_tuples, exec)?;
    let size = spec.order();
    let mut result = json!({
        "word": w.to_string(),
        "simple": spec,
        "outer": outers,
        "coset_size": size,
        "tuples": BigUint::from(size).pow(w.num_variables() as u32).to_string(),
        "constant": values.is_constant(),
        "first_value": values.first.to_string(),
        "second_value": values.second.as_ref().map(|(p, idx)| json!({ "value": p.to_string(), "members": idx })),
    });
    if let Some(max) = a.full {
        let all = coset_value_set_full(&w, &cosets, g.max_tuples, max, exec)?;
        let m = result.as_object_mut().expect("object");
        m.insert("value_count".into(), json!(all.len()));
        m.insert("values".into(), perms(&all));
    }
    if values.is_constant() && !values.first.is_identity() {
        return Err(
            Error::Invariant(format!("{w} is constant but nontrivial on the cosets")).into(),
        );
    }
    let verdict = if values.is_constant() {
        "coset_identity"
    } else {
        "not_constant"
    };
    Ok(Report {
        input: json!({ "word": a.word, "simple": a.simple, "outer": a.outer, "full": a.full }),
        result,
        verdict: verdict.into(),
    })
}

pub fn wmb(a: &WmbArgs, g: &Global, exec: &Exec) -> Out {
    let w = parse_word(&a.word)?;
    let spec = simple_of(&a.simple)?;
    let report = wmb_refute(&w, spec, g.max_tuples, exec)?;
    let mut result = to_value(&report);
    result
        .as_object_mut()
        .expect("object")
        .insert("word".into(), json!(w.to_string()));
    let verdict = if report.witness.is_some() {
        "coset_identity_found"
    } else {
        "no_coset_identity"
    };
    Ok(Report {
        input: json!({ "word": a.word, "simple": a.simple }),
        result,
        verdict: verdict.into(),
    })
}

pub fn bad_scan(a: &BadScanArgs, _g: &Global, exec: &Exec) -> Out {
    let catalog = a
        .catalog
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| simple_of(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let report = bad_exponent_scan(a.exponent, &catalog, exec)?;
    let verdict = if report.witnessed_bad() {
        "bad_divisors_witnessed"
    } else {
        "none_witnessed"
    };
    Ok(Report {
        input: json!({ "exponent": a.exponent, "catalog": a.catalog }),
        result: to_value(&report),
        verdict: verdict.into(),
    })
}

pub fn perm_stats(a: &PermStatsArgs, g: &Global, exec: &Exec) -> Out {
    let (spec, grp) = build(&a.group)?;
    let eps = parse_rational(&a.eps)?;
    let s = moments(&grp, g.max_order, exec)?;
    let thm = check_support_theorem(&s);
    let rho = s.rho(a.c);
    let f = f_bound_parts(&rho, a.c as u64)?;
    let f_holds = f.at_least(&BigUint::from(s.order));
    let mc = markov_chebyshev_report(&s, &eps, a.c)?;
    let sb: serde_json::Map<String, Value> = (0..=s.c.max(a.c))
        .map(|c| (c.to_string(), json!(s.sb_count(c))))
        .collect();
    let tail = |t: &nslen_core::permstat::TailCheck| json!({ "bound": rat(&t.bound), "empirical": rat(&t.empirical), "holds": t.holds });
    let result = json!({
        "group": spec,
        "degree": s.degree,
        "order": s.order,
        "t": s.t,
        "r": s.r,
        "c": s.c,
        "supp_P": s.supp_p,
        "orbit_sizes": s.orbit_sizes,
        "mean_fix": rat(&s.mean_fix),
        "mean_fix_sq": rat(&s.mean_fix_sq),
        "sb_counts": sb,
        "bounds": {
            "order_at_most_c_factorial": { "c": thm.c, "holds": thm.order_holds },
            "support_at_most_2c_minus_2": { "bound": thm.supp_bound, "holds": thm.supp_holds },
            "f_rho_C": {
                "C": a.c,
                "rho": rat(&rho),
                "factorial_of": f.factorial_of,
                "exponent": f.exponent,
                "log10": f.log10(),
                "holds": f_holds,
            },
            "moment_order_bounds": {
                "markov": { "factorial_of": mc.markov_order.factorial_of.to_string(), "holds": mc.markov_order.holds },
                "chebyshev": {
                    "factorial_of": mc.chebyshev_order.factorial_of.to_string(),
                    "holds": mc.chebyshev_order.holds,
                },
            },
            "tails": { "eps": rat(&eps), "markov": tail(&mc.markov), "chebyshev": tail(&mc.chebyshev) },
        },
        "verdicts": {
            "support_theorem": thm.order_holds && thm.supp_holds,
            "f_bound": f_holds,
            "tails": mc.markov.holds && mc.chebyshev.holds,
            "moment_order_bounds": mc.markov_order.holds && mc.chebyshev_order.holds,
        },
    });
    let all = thm.order_holds && thm.supp_holds && f_holds && mc.holds();
    Ok(Report {
        input: json!({ "group": a.group, "eps": a.eps, "c": a.c }),
        result,
        verdict: if all {
            "all_bounds_hold"
        } else {
            "bound_violated"
        }
        .into(),
    })
}

pub fn lambda(a: &LambdaArgs, g: &Global) -> Out {
    let engine: Engine = a.engine.parse()?;
    let (spec, grp) = build(&a.group)?;
    let rep = nonsolvable_length(
        &grp,
        LambdaOptions {
            engine,
            max_order: g.max_order,
        },
    )?;
    let mut result = to_value(&rep);
    let m = result.as_object_mut().expect("object");
    m.insert("group".into(), json!(spec));
    m.insert("engine".into(), json!(engine.to_string()));
    m.insert("order".into(), json!(rep.order().to_string()));
    m.insert("telescopes".into(), json!(rep.telescopes()));
    m.insert(
        "radical_index_bound".into(),
        json!(rep.radical_index_bound()),
    );
    Ok(Report {
        input: json!({ "group": a.group, "engine": a.engine }),
        result,
        verdict: "computed".into(),
    })
}

/// Groups above `--max-order` are handled through a semisimplicity
/// certificate when one exists.
enum Handle {
    Enumerated(Arc<EnumeratedGroup>),
    Certified(Box<SemisimpleCertificate>, PermutationPart),
}

fn handle(grp: &PermGroup, g: &Global) -> Result<Handle, Error> {
    if fits(grp, g.max_order) {
        return Ok(Handle::Enumerated(enumerate(grp, g.max_order)?));
    }
    match semisimple_certificate(grp, g.max_order)? {
        Some((cert, part)) => Ok(Handle::Certified(Box::new(cert), part)),
        None => Err(Error::Unsupported(format!(
            "group of order {} exceeds --max-order {} and has no semisimplicity certificate",
            grp.order(),
            g.max_order
        ))),
    }
}

/// The certificate with block points printed 1-based.
fn cert_json(cert: &SemisimpleCertificate) -> Value {
    let mut v = to_value(cert);
    let blocks: Vec<Vec<u32>> = cert
        .blocks
        .iter()
        .map(|b| b.iter().map(|x| x + 1).collect())
        .collect();
    v.as_object_mut()
        .expect("object")
        .insert("blocks".into(), json!(blocks));
    v
}

fn part_json(part: &PermutationPart) -> Value {
    json!({
        "order": part.group.order().to_string(),
        "degree": part.group.degree(),
        "generators": perms(part.group.gens()),
        "counts": part.counts,
        "part_orders": part.parts.iter().map(|p| p.order().to_string()).collect::<Vec<_>>(),
        "mpo": part.mpo().to_string(),
    })
}

pub fn radical(a: &GroupArgs, g: &Global) -> Out {
    let (spec, grp) = build(&a.group)?;
    let result = if grp.is_solvable() {
        json!({ "group": spec, "order": grp.order().to_string(), "generators": perms(grp.gens()), "method": "solvable" })
    } else {
        match handle(&grp, g)? {
            Handle::Enumerated(e) => {
                let r = solvable_radical(&e);
                json!({ "group": spec, "order": r.order().to_string(), "generators": subgroup_gens(&e, &r), "method": "enumerated" })
            }
            Handle::Certified(cert, _) => {
                json!({ "group": spec, "order": "1", "generators": [], "method": "certificate", "certificate": cert_json(&cert) })
            }
        }
    };
    Ok(Report {
        input: json!({ "group": a.group }),
        result,
        verdict: "computed".into(),
    })
}

pub fn socle_cmd(a: &GroupArgs, g: &Global) -> Out {
    let (spec, grp) = build(&a.group)?;
    let result = match handle(&grp, g)? {
        Handle::Enumerated(e) => {
            let soc = socle(&e);
            let mins = minimal_normal_subgroups(&e);
            let mut r = json!({
                "group": spec,
                "order": soc.order().to_string(),
                "generators": subgroup_gens(&e, &soc),
                "minimal_normal_orders": mins.iter().map(|m| m.order()).collect::<Vec<_>>(),
                "method": "enumerated",
            });
            if solvable_radical(&e).is_trivial() {
                let dec = semisimple_decomposition(&e)?;
                r.as_object_mut()
                    .expect("object")
                    .insert("isotypes".into(), to_value(&dec.isotypes));
            }
            r
        }
        Handle::Certified(cert, _) => json!({
            "group": spec,
            "order": cert.socle_order.to_string(),
            "isotypes": [{ "fingerprint": cert.factor, "count": cert.blocks.len(), "simple": cert.simple }],
            "method": "certificate",
            "certificate": cert_json(&cert),
        }),
    };
    Ok(Report {
        input: json!({ "group": a.group }),
        result,
        verdict: "computed".into(),
    })
}

pub fn perm_part(a: &GroupArgs, g: &Global) -> Out {
    let (spec, grp) = build(&a.group)?;
    let (part, method) = match handle(&grp, g)? {
        Handle::Enumerated(e) => (
            permutation_part(&e, &semisimple_decomposition(&e)?)?,
            "enumerated",
        ),
        Handle::Certified(_, part) => (part, "certificate"),
    };
    let mut result = part_json(&part);
    let m = result.as_object_mut().expect("object");
    m.insert("group".into(), json!(spec));
    m.insert("method".into(), json!(method));
    Ok(Report {
        input: json!({ "group": a.group }),
        result,
        verdict: "computed".into(),
    })
}
