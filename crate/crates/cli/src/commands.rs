//! One function per verb. Each returns the plain-text report, a JSON value
//! with the same content, and the property violation it found, if any.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use edgeideal::classify::generate::InstanceFamily;
use edgeideal::classify::sweep::{run_sweep, SweepOptions};
use edgeideal::classify::{
    check_conjecture, classify, classify_single_violation, oracle_check, ClassifyOptions,
    ConjectureVerdict,
};
use edgeideal::covers::{
    alexander_dual, associated_primes, hypergraph_of, is_unmixed, strong_vertex_covers,
    AssocMethod, UnmixedCertificate, UnmixedMethod,
};
use edgeideal::graph::WeightedOrientedGraph;
use edgeideal::ideal::{edge_ideal, render_ideal};
use edgeideal::oracle::{boundary_squares_vanish, reduced_homology, stanley_reisner, Field};
use edgeideal::polarize::polarize_ideal;
use edgeideal::Limits;
use serde_json::{json, Value};

use crate::render::{braces, names, oracle_lines, report_lines, vertex_set, NamedCover};
use crate::Failure;

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub violation: Option<String>,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            violation: None,
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

pub fn ideal(d: &WeightedOrientedGraph) -> Result<Outcome> {
    let i = edge_ideal(d);
    let text = render_ideal(&i);
    Ok(Outcome::ok(text.clone(), json!({ "ideal": text })))
}

pub fn polarize(d: &WeightedOrientedGraph) -> Result<Outcome> {
    let p = polarize_ideal(&edge_ideal(d))?;
    let text = render_ideal(p.ideal());
    Ok(Outcome::ok(text.clone(), json!({ "polarization": text })))
}

pub fn dual(d: &WeightedOrientedGraph, limits: &Limits) -> Result<Outcome> {
    let p = polarize_ideal(&edge_ideal(d))?;
    let dual = alexander_dual(p.ideal(), limits.cover_vertices)?;
    let text = render_ideal(&dual);
    Ok(Outcome::ok(text.clone(), json!({ "dual": text })))
}

pub fn covers(d: &WeightedOrientedGraph, strong: bool, limits: &Limits) -> Result<Outcome> {
    if strong {
        let covers: Vec<NamedCover> = strong_vertex_covers(d, limits)?
            .iter()
            .map(|c| NamedCover::new(d, c))
            .collect();
        let text: String = covers.iter().map(|c| c.line() + "\n").collect();
        return Ok(Outcome::ok(text, json!({ "strong_covers": covers })));
    }
    let p = polarize_ideal(&edge_ideal(d))?;
    let registry = p.ideal().registry();
    let covers: Vec<Vec<String>> = hypergraph_of(p.ideal())?
        .minimal_vertex_covers(limits.cover_vertices)?
        .into_iter()
        .map(|c| c.into_iter().map(|v| registry[v].clone()).collect())
        .collect();
    let text: String = covers.iter().map(|c| braces(c) + "\n").collect();
    Ok(Outcome::ok(text, json!({ "minimal_covers": covers })))
}

pub fn assoc(d: &WeightedOrientedGraph, method: AssocMethod, limits: &Limits) -> Result<Outcome> {
    let primes: Vec<Vec<String>> = associated_primes(d, method, limits)?
        .iter()
        .map(|p| names(d, p))
        .collect();
    let text: String = primes.iter().map(|p| braces(p) + "\n").collect();
    Ok(Outcome::ok(
        text,
        json!({ "method": method, "primes": primes }),
    ))
}

pub fn unmixed(
    d: &WeightedOrientedGraph,
    method: UnmixedMethod,
    limits: &Limits,
) -> Result<Outcome> {
    let rep = is_unmixed(d, method, limits)?;
    let mut text = format!("unmixed: {}\n", if rep.unmixed { "yes" } else { "no" });
    let certificate = match &rep.certificate {
        None => Value::Null,
        Some(UnmixedCertificate::Cover(c)) => {
            let named = NamedCover::new(d, c);
            let _ = writeln!(text, "certificate cover: {}", named.line());
            json!({ "cover": named })
        }
        Some(UnmixedCertificate::PrimePair(a, b)) => {
            let _ = writeln!(
                text,
                "certificate primes of different heights: {} {}",
                vertex_set(d, a),
                vertex_set(d, b)
            );
            json!({ "prime_pair": [names(d, a), names(d, b)] })
        }
    };
    Ok(Outcome::ok(
        text,
        json!({ "method": method, "unmixed": rep.unmixed, "certificate": certificate }),
    ))
}

fn disagreement(rep: &edgeideal::classify::ClassificationReport) -> Option<String> {
    (!rep.oracle_agrees()).then(|| "classification and homology oracle disagree".to_string())
}

pub fn classify_graph(d: &WeightedOrientedGraph, opts: &ClassifyOptions) -> Result<Outcome> {
    let rep = classify(d, opts)?;
    Ok(Outcome {
        text: report_lines(&rep, false),
        json: serde_json::to_value(&rep).expect("reports serialize"),
        violation: disagreement(&rep),
    })
}

pub fn scm(d: &WeightedOrientedGraph, opts: &ClassifyOptions) -> Result<Outcome> {
    let rep = classify_single_violation(d, opts)?;
    Ok(Outcome {
        text: report_lines(&rep, true),
        json: serde_json::to_value(&rep).expect("reports serialize"),
        violation: disagreement(&rep),
    })
}

pub fn oracle(d: &WeightedOrientedGraph, field: Field, limits: &Limits) -> Result<Outcome> {
    let ideal = edge_ideal(d);
    let check = oracle_check(&ideal, field, limits, true)?;
    let pol = polarize_ideal(&ideal)?;
    let delta = stanley_reisner(pol.ideal(), limits.cover_vertices)?;
    let profile = reduced_homology(&delta, field, limits.faces)?;
    let boundaries = boundary_squares_vanish(&delta, limits.faces)?;
    let mut text = oracle_lines(&check);
    let _ = writeln!(
        text,
        "stanley-reisner complex: {} vertices, {} facets, dimension {}",
        delta.vertices().len(),
        delta.facet_sets().len(),
        delta.dim()
    );
    let _ = writeln!(text, "face counts by size: {:?}", profile.faces);
    let _ = writeln!(
        text,
        "reduced homology ranks from dimension -1: {:?}",
        profile.ranks
    );
    let sane = profile.euler_consistent() && boundaries;
    let violation = (!sane).then(|| {
        format!(
            "oracle self-check failed: Euler consistent {}, boundary squares vanish {boundaries}",
            profile.euler_consistent()
        )
    });
    Ok(Outcome {
        text,
        json: json!({ "oracle": check, "homology": profile, "boundary_squares_vanish": boundaries }),
        violation,
    })
}

pub fn conjecture(d: &WeightedOrientedGraph, field: Field, limits: &Limits) -> Result<Outcome> {
    let rep = check_conjecture(d, field, limits)?;
    let opt = |b: Option<bool>| b.map_or("not evaluated", |b| if b { "yes" } else { "no" });
    let text = format!(
        "verdict: {}\nunmixed: {}\nradical cohen-macaulay: {}\ncohen-macaulay: {}\n",
        rep.verdict.label(),
        if rep.unmixed { "yes" } else { "no" },
        opt(rep.radical_cm),
        opt(rep.cm)
    );
    let violation = (rep.verdict == ConjectureVerdict::Counterexample)
        .then(|| "unmixed with a Cohen-Macaulay radical, but not Cohen-Macaulay".to_string());
    Ok(Outcome {
        text,
        json: serde_json::to_value(&rep).expect("reports serialize"),
        violation,
    })
}

pub fn sweep(
    family: InstanceFamily,
    field: Field,
    cross_field: Option<Field>,
    limits: Limits,
    log: Option<&Path>,
) -> Result<Outcome> {
    let opts = SweepOptions {
        field,
        cross_field,
        limits,
        ..SweepOptions::new(family)
    };
    let run = run_sweep(&opts)?;
    if let Some(path) = log {
        let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", path.display()));
        let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
        for r in &run.records {
            serde_json::to_writer(&mut out, r).expect("records serialize");
            out.write_all(b"\n").map_err(io)?;
        }
        out.flush().map_err(io)?;
    }
    let mut text = run.summary.render_table();
    for r in run.records.iter().filter(|r| !r.passed()).take(5) {
        let _ = writeln!(text, "failed instance {}:\n{}", r.id, r.graph);
    }
    let violation = (run.summary.failures > 0)
        .then(|| format!("{} instances failed a check", run.summary.failures));
    Ok(Outcome {
        text,
        json: json!({ "sweep": opts, "summary": run.summary }),
        violation,
    })
}
