//! Self-checks bundled with the library, grouped into suites.

use std::fmt;
use std::str::FromStr;

use crate::catalog::known_classes;
use crate::error::{Error, Result};
use crate::ideal::{
    cayley_quadric, hyperbolic_pairing, named_quadrics, quadric_orbit, span_contains, span_rank,
    vanishing_quadrics, verify_variety, zero_set, QuadForm,
};
use crate::orbits::{e_rank, orbit_table, Stratification, TRankTable};
use crate::par;
use crate::pauli::{generator_count, generator_from_operators};
use crate::pluecker::{
    all_pluecker_relations, embed, lagrangian_constraints, PlueckerLayout, SubsetIndex,
};
use crate::projection::{point_of, to_observable, Correspondence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Bijection,
    Variety,
    Tables,
    Cayley,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "bijection" => Ok(Suite::Bijection),
            "variety" => Ok(Suite::Variety),
            "tables" => Ok(Suite::Tables),
            "cayley" => Ok(Suite::Cayley),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite {other:?} (bijection, variety, tables, cayley, all)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A measured quantity with no expected value.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn expect(
        suite: &'static str,
        name: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            suite,
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn info(suite: &'static str, name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            suite,
            name: name.into(),
            status: Status::Info,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {}",
            self.status, self.suite, self.name, self.detail
        )
    }
}

/// Runs `suite` for `n` qubits. `All` runs every suite that supports `n`.
pub fn run(suite: Suite, n: usize) -> Result<Vec<Check>> {
    match suite {
        Suite::Bijection => bijection(n),
        Suite::Variety => variety(n),
        Suite::Tables => tables(n),
        Suite::Cayley => cayley(n),
        Suite::All => {
            let mut out = bijection(n)?;
            if n <= 5 {
                out.extend(variety(n)?);
            }
            if n <= 4 {
                out.extend(tables(n)?);
            }
            if (3..=4).contains(&n) {
                out.extend(cayley(n)?);
            }
            Ok(out)
        }
    }
}

fn unsupported(what: &'static str, n: usize, min: usize, max: usize) -> Error {
    Error::UnsupportedN { what, n, min, max }
}

fn bijection(n: usize) -> Result<Vec<Check>> {
    const S: &str = "bijection";
    let corr = Correspondence::build(n)?;
    let mut out = Vec::new();
    let expected = generator_count(n);
    out.push(Check::expect(
        S,
        "generator count",
        corr.generators().len() as u64 == expected,
        format!("{} (expected {expected})", corr.generators().len()),
    ));
    let cons = lagrangian_constraints(n)?;
    let rels = all_pluecker_relations(n)?;
    // every generator up to N = 4, a fixed stride beyond
    let stride = if n <= 4 { 1 } else { 37 };
    let sample: Vec<_> = corr.generators().iter().step_by(stride).collect();
    let layout = PlueckerLayout::get(n);
    let at = |x: &SubsetIndex| layout.position(x).expect("relation term is a coordinate");
    let quadratic: Vec<Vec<(usize, usize)>> = rels
        .iter()
        .map(|r| r.terms().iter().map(|(a, b)| (at(a), at(b))).collect())
        .collect();
    let bad = par::map(&sample, |g| {
        let v = embed(g);
        let c = v.coords();
        cons.iter().any(|k| k.eval(&v))
            || quadratic
                .iter()
                .any(|r| r.iter().filter(|&&(a, b)| c.get(a) && c.get(b)).count() % 2 == 1)
    });
    let bad = bad.into_iter().filter(|&b| b).count();
    out.push(Check::expect(
        S,
        "Plücker vectors satisfy all relations",
        bad == 0,
        format!(
            "{bad} violations among {} generators, {} relations, {} constraints",
            sample.len(),
            rels.len(),
            cons.len()
        ),
    ));
    out.push(Check::expect(
        S,
        "projection injective",
        corr.is_injective(),
        format!("{} distinct points", corr.image_size()),
    ));
    let mismatches = corr
        .generators()
        .iter()
        .zip(corr.points())
        .filter(|(g, p)| corr.lift(p).as_ref() != Ok(*g))
        .count();
    out.push(Check::expect(
        S,
        "lift inverts projection",
        mismatches == 0,
        format!("{mismatches} mismatches"),
    ));
    let odd = corr
        .points()
        .iter()
        .filter(|p| to_observable(p).quad_form())
        .count();
    let detail = format!("{odd} with odd Y count");
    // For N = 2 the image is all of P^3, odd Y counts included.
    out.push(if n >= 3 {
        Check::expect(S, "observables have even Y count", odd == 0, detail)
    } else {
        Check::info(S, "observables with odd Y count", detail)
    });
    Ok(out)
}

fn variety(n: usize) -> Result<Vec<Check>> {
    const S: &str = "variety";
    let corr = Correspondence::build(n)?;
    let mut out = Vec::new();
    if n <= 4 {
        let r = verify_variety(&corr)?;
        out.push(Check::expect(
            S,
            "image lies on the quadrics",
            r.image_in_zero_set,
            format!("{} image points", r.image_size),
        ));
        out.push(Check::expect(
            S,
            "quadrics cut out exactly the image",
            r.equal(),
            format!("zero set {} / image {}", r.zero_set_size, r.image_size),
        ));
        let vanishing = vanishing_quadrics(&corr.image())?;
        let named = named_quadrics(n)?
            .into_iter()
            .map(|(_, q)| q)
            .collect::<Vec<_>>();
        let same = span_rank(&vanishing) == span_rank(&named)
            && vanishing.iter().all(|q| span_contains(&named, q));
        out.push(Check::expect(
            S,
            "quadrics span all quadrics vanishing on the image",
            same,
            format!("dimension {}", vanishing.len()),
        ));
    } else {
        let pairing = hyperbolic_pairing(n)?;
        let zeros = corr
            .points()
            .iter()
            .filter(|p| !pairing.eval_display_mask(p.display_mask()))
            .count();
        out.push(Check::info(
            S,
            "pairing quadric on the image",
            format!("vanishes at {zeros} of {} points", corr.image_size()),
        ));
        let vanishing = vanishing_quadrics(&corr.image())?;
        out.push(Check::info(
            S,
            "quadrics vanishing on the image",
            format!("dimension {}", vanishing.len()),
        ));
    }
    Ok(out)
}

fn tables(n: usize) -> Result<Vec<Check>> {
    const S: &str = "tables";
    if !(2..=4).contains(&n) {
        return Err(unsupported("tables suite", n, 2, 4));
    }
    let corr = Correspondence::build(n)?;
    let strat = Stratification::compute(n)?;
    let ranks = TRankTable::build(n)?;
    let rows = orbit_table(&corr)?;
    let mut out = Vec::new();
    let image_orbits = strat.image_orbits(&corr)?;
    out.push(Check::info(
        S,
        "orbits",
        format!(
            "{} orbits, {} inside the image",
            strat.orbits().len(),
            image_orbits.len()
        ),
    ));
    for c in known_classes(n) {
        let name = format!("N={n} {}", c.label);
        let Some(row) = rows.iter().find(|r| r.label.as_deref() == Some(c.label)) else {
            out.push(Check::expect(S, name, false, "no orbit matches this class"));
            continue;
        };
        let mut problems = Vec::new();
        if row.size != c.size {
            problems.push(format!("size {} != {}", row.size, c.size));
        }
        if let Some(p) = c.point() {
            if let Some(obs) = c.observable {
                if to_observable(&p).label() != obs {
                    problems.push(format!("observable {} != {obs}", to_observable(&p).label()));
                }
            }
            if let Some(t) = c.t_rank {
                if ranks.rank(&p) != t {
                    problems.push(format!("T-rank {} != {t}", ranks.rank(&p)));
                }
            }
            if let Some(e) = c.e_rank {
                match e_rank(&p, &corr) {
                    Ok(got) if got == e => {}
                    Ok(got) => problems.push(format!("E-rank {got} != {e}")),
                    Err(err) => problems.push(err.to_string()),
                }
            }
            if !c.commuting_set.is_empty() {
                // The listed set names the class; it need not lift from this exact point.
                match c
                    .commuting_operators()
                    .and_then(|ops| generator_from_operators(&ops))
                    .and_then(|g| point_of(&g))
                {
                    Ok(q) if strat.orbit_id(&q) == row.orbit_id => {}
                    Ok(q) => problems.push(format!(
                        "listed set maps to {q}, orbit {}",
                        strat.orbit_id(&q)
                    )),
                    Err(e) => problems.push(e.to_string()),
                }
            }
        }
        let detail = if problems.is_empty() {
            format!(
                "size {} {} T={} E={}",
                row.size,
                row.observable.label(),
                row.t_rank,
                row.e_rank.map_or("-".into(), |e| e.to_string())
            )
        } else {
            problems.join("; ")
        };
        out.push(Check::expect(S, name.clone(), problems.is_empty(), detail));
        if let (Some(p), Ok(ops)) = (c.point(), c.commuting_operators()) {
            if let (Ok(listed), Ok(lifted)) = (generator_from_operators(&ops), corr.lift(&p)) {
                if !ops.is_empty() && listed != lifted {
                    out.push(Check::info(
                        S,
                        format!("{name} listed set"),
                        format!(
                            "<{}> is another member of the class; the point lifts to <{}>",
                            listed.basis_labels(),
                            lifted.basis_labels()
                        ),
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn cayley(n: usize) -> Result<Vec<Check>> {
    const S: &str = "cayley";
    if !(3..=4).contains(&n) {
        return Err(unsupported("cayley suite", n, 3, 4));
    }
    let corr = Correspondence::build(n)?;
    let named = named_quadrics(n)?;
    let q = cayley_quadric(n)?;
    let orbit = quadric_orbit(&q);
    let mut out = Vec::new();
    let vanish = orbit.iter().all(|f| {
        corr.points()
            .iter()
            .all(|p| !f.eval_display_mask(p.display_mask()))
    });
    out.push(Check::expect(
        S,
        "orbit vanishes on the image",
        vanish,
        format!("{} forms", orbit.len()),
    ));
    if n == 3 {
        let pairing = &named[0].1;
        out.push(Check::expect(
            S,
            "quadric equals the pairing form",
            &q == pairing,
            q.to_string(),
        ));
        out.push(Check::expect(
            S,
            "orbit is a single form",
            orbit.len() == 1,
            format!("{} forms", orbit.len()),
        ));
        return Ok(out);
    }
    let by_name = |k: &str| {
        named
            .iter()
            .find(|(m, _)| m == k)
            .map(|(_, f)| f.clone())
            .expect("named quadric")
    };
    let q0 = hyperbolic_pairing(4)?;
    out.push(Check::expect(
        S,
        "quadric equals Q8",
        q == by_name("Q8"),
        q.to_string(),
    ));
    let missing: Vec<String> = (1..=8)
        .map(|k| format!("Q{k}"))
        .filter(|k| !orbit.contains(&by_name(k)))
        .collect();
    out.push(Check::expect(
        S,
        "Q1..Q8 lie in the orbit",
        missing.is_empty(),
        if missing.is_empty() {
            "all present".into()
        } else {
            missing.join(", ")
        },
    ));
    let strays: Vec<&str> = ["Q9", "Q10"]
        .into_iter()
        .filter(|k| orbit.contains(&by_name(k)))
        .collect();
    out.push(Check::expect(
        S,
        "Q9, Q10 outside the orbit",
        strays.is_empty(),
        format!("{strays:?} present"),
    ));
    let nine: Vec<QuadForm> = (1..=8)
        .map(|k| by_name(&format!("Q{k}")))
        .chain([q0.clone()])
        .collect();
    let same_span =
        span_rank(&orbit) == span_rank(&nine) && orbit.iter().all(|f| span_contains(&nine, f));
    out.push(Check::expect(
        S,
        "orbit spans span{Q0..Q8}",
        same_span,
        format!("dimension {}", span_rank(&orbit)),
    ));
    let mut expected = nine.clone();
    expected.sort();
    out.push(Check::expect(
        S,
        "orbit equals {Q0..Q8} as a set",
        orbit == expected,
        format!(
            "orbit has {} forms; Q0 in orbit: {}; Q0 is G-invariant: {}",
            orbit.len(),
            orbit.contains(&q0),
            quadric_orbit(&q0).len() == 1
        ),
    ));
    let zeros = zero_set(4, &nine)?;
    out.push(Check::info(
        S,
        "common zeros of Q0..Q8",
        format!("{} points (image {})", zeros.len(), corr.image_size()),
    ));
    Ok(out)
}
