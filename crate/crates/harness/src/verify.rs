//! Per-case reproduction pipelines and their reports.

use std::collections::BTreeSet;
use std::time::Instant;

use circdiam::circuits::is_circuit_direction;
use circdiam::exactla::{self, rat, ratio, Rat, RatVec};
use circdiam::faceanalysis::{self as fa, check_face_fixture, face_fixtures, num_range, pm_range, within_reach};
use circdiam::hrep::{apply_linear_map, hrep_equivalent};
use circdiam::orientations::{classify_regions, edge_direction_matroid_uniform};
use circdiam::vertexgraph::{detect_spindle_in, graph_distance, Face2};
use circdiam::walks::{self, validate_walk, WalkCertificate};
use circdiam::{data, RowSet};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::claims::{Manifest, Origin};
use crate::error::{CliError, CliResult};
use crate::session::{Loaded, Session};

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub origin: Origin,
    pub source: String,
    pub computed: String,
    pub pass: bool,
    /// Milliseconds since the previous claim of the case; only with timings on.
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub name: String,
    pub walk: WalkCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub claims: Vec<ClaimResult>,
    pub certificates: Vec<Certificate>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("case {}\n", self.case);
        for c in &self.claims {
            let time = c.runtime_ms.map(|t| format!(" ({t} ms)")).unwrap_or_default();
            s.push_str(&format!(
                "{} {} = {} {}: expected {}; {}{time}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.computed,
                c.origin,
                c.expected,
                c.description
            ));
        }
        s
    }
}

struct Recorder {
    values: Vec<(String, String, u64)>,
    certs: Vec<Certificate>,
    last: Instant,
}

impl Recorder {
    fn new() -> Self {
        Recorder { values: Vec::new(), certs: Vec::new(), last: Instant::now() }
    }

    fn claim(&mut self, id: &str, f: impl FnOnce(&mut Self) -> CliResult<String>) {
        let v = f(self).unwrap_or_else(|e| format!("error: {e}"));
        let now = Instant::now();
        let ms = now.duration_since(self.last).as_millis() as u64;
        self.last = now;
        self.values.push((id.to_string(), v, ms));
    }

    fn cert(&mut self, name: &str, walk: &WalkCertificate) {
        self.certs.push(Certificate { name: name.to_string(), walk: walk.clone() });
    }

    fn finish(self, case: &str, manifest: &Manifest, timings: bool) -> CaseReport {
        let mut claims = Vec::new();
        for c in manifest.for_case(case) {
            let (computed, ms) = self
                .values
                .iter()
                .find(|(id, _, _)| *id == c.id)
                .map(|(_, v, ms)| (v.clone(), Some(*ms)))
                .unwrap_or_else(|| ("not computed".into(), None));
            claims.push(ClaimResult {
                id: c.id.clone(),
                description: c.description.clone(),
                expected: c.expected.clone(),
                origin: c.origin,
                source: c.source.clone(),
                pass: computed == c.expected,
                computed,
                runtime_ms: if timings { ms } else { None },
            });
        }
        CaseReport { case: case.to_string(), claims, certificates: self.certs }
    }
}

pub struct VerifyOptions {
    pub timings: bool,
}

pub fn verify_case(session: &Session, manifest: &Manifest, case: &str, opts: &VerifyOptions) -> CliResult<CaseReport> {
    let name = match case {
        "todd" => "m4",
        "s48" | "s28" | "s25" => case,
        _ => return Err(CliError::usage(format!("unknown case {case:?}"))),
    };
    let hrep = data::bundled(name).ok_or_else(|| CliError::compute(format!("bundled dataset {name} missing")))?;
    let lp = session.open(hrep);
    let mut rec = Recorder::new();
    match case {
        "todd" => todd(&lp, &mut rec),
        "s48" => s48(&lp, &mut rec),
        "s28" => s28(&lp, &mut rec),
        _ => s25(&lp, &mut rec),
    }
    Ok(rec.finish(case, manifest, opts.timings))
}

fn v(xs: &[i64]) -> RatVec {
    xs.iter().map(|&x| rat(x)).collect()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

const REPRESENTATIVES: [[i64; 4]; 5] = [
    [1, 1, 1, 1],
    [10716, 13680, 3477, 4465],
    [13680, 10716, 4465, 3477],
    [912, 1824, 513, 817],
    [1824, 912, 817, 513],
];

fn todd(lp: &Loaded, rec: &mut Recorder) {
    let p = lp.hrep();
    rec.claim("todd.vertices", |_| Ok(lp.graph()?.n_vertices().to_string()));
    rec.claim("todd.edges", |_| Ok(lp.graph()?.edges.len().to_string()));
    rec.claim("todd.apices", |_| {
        let g = lp.graph()?;
        let (a, b) = detect_spindle_in(p, g).ok_or_else(|| CliError::compute("not a spindle"))?;
        Ok(format!("{} {}", exactla::fmt_vec(&g.vertices[a].point), exactla::fmt_vec(&g.vertices[b].point)))
    });
    rec.claim("todd.antiblocking", |_| Ok(walks::is_antiblocking(p).to_string()));
    let cls = match lp.graph().and_then(|g| classify_regions(p, g).map_err(CliError::from)) {
        Ok(c) => c,
        Err(e) => {
            rec.claim("todd.regions", |_| Err(e));
            return;
        }
    };
    let g = lp.graph().expect("graph computed above");
    let pt = |i: usize| exactla::fmt_vec(&g.vertices[i].point);
    rec.claim("todd.regions", |_| Ok(cls.total().to_string()));
    rec.claim("todd.bad_regions", |_| Ok(cls.bad.len().to_string()));
    rec.claim("todd.sink0_regions", |_| {
        let origin = g.find_vertex(&v(&[0, 0, 0, 0])).ok_or_else(|| CliError::compute("origin is not a vertex"))?;
        Ok(cls.sink_count(origin).to_string())
    });
    rec.claim("todd.bad_sinks", |_| {
        let s: BTreeSet<String> = cls.bad.iter().map(|&i| pt(cls.regions[i].sink)).collect();
        Ok(s.into_iter().collect::<Vec<_>>().join(" "))
    });
    rec.claim("todd.bad_worst", |_| {
        if cls.bad.iter().any(|&i| cls.regions[i].worst.len() != 1) {
            return Ok("not unique".into());
        }
        let s: BTreeSet<String> = cls.bad.iter().map(|&i| pt(cls.regions[i].worst[0])).collect();
        Ok(s.into_iter().collect::<Vec<_>>().join(" "))
    });
    let reps: Vec<Option<usize>> = REPRESENTATIVES.iter().map(|r| cls.region_of(&v(r))).collect();
    rec.claim("todd.representatives", |_| {
        Ok(reps.iter().filter(|r| r.is_some_and(|i| cls.bad.contains(&i))).count().to_string())
    });
    rec.claim("todd.hamming", |_| {
        let todd = reps[0].ok_or_else(|| CliError::compute("(1,1,1,1) is not generic"))?;
        let mut d: Vec<usize> = cls.bad.iter().filter(|&&i| i != todd).map(|&i| cls.hamming(todd, i)).collect();
        d.sort_unstable();
        Ok(join(d))
    });
    rec.claim("todd.worst_is_source", |_| {
        Ok(cls.bad.iter().any(|&i| cls.regions[i].worst.contains(&cls.regions[i].source)).to_string())
    });
    rec.claim("todd.matroid_uniform", |_| Ok(edge_direction_matroid_uniform(g, p.dim()).to_string()));
    let good = (0..cls.total()).filter(|i| !cls.bad.contains(i)).map(|i| cls.regions[i].diameter).max();
    rec.claim("todd.good_diameter", |_| Ok(good.map_or("none".into(), |d| d.to_string())));
    rec.claim("todd.bad_diameter", |_| {
        let d: BTreeSet<usize> = cls.bad.iter().map(|&i| cls.regions[i].diameter).collect();
        Ok(join(d))
    });

    let far = data::m4_far_apex();
    let zero = v(&[0, 0, 0, 0]);
    let set = lp.circuits();
    let mut walk_lens = Vec::new();
    for (id, walk) in [
        ("todd.containment_walk", walks::containment_spindle_walk(p, &far, &zero)),
        ("todd.antiblocking_walk", walks::antiblocking_walk(p, &far)),
    ] {
        rec.claim(id, |rec| {
            let w = walk?;
            let ok = REPRESENTATIVES.iter().all(|r| {
                let w = w.clone().with_objective(v(r));
                let rep = validate_walk(p, set, &w);
                rep.ok() && rep.monotone == Some(true) && w.end() == zero.as_slice()
            });
            rec.cert(id.trim_start_matches("todd."), &w);
            if ok {
                walk_lens.push(w.len());
                Ok(w.len().to_string())
            } else {
                Ok("invalid".into())
            }
        });
    }
    let mut lower = false;
    rec.claim("todd.triple_span_excludes", |_| {
        lower = walks::triple_span_excludes(set, &far)?;
        Ok(lower.to_string())
    });
    rec.claim("todd.depth3_search", |_| {
        Ok(match walks::bounded_depth_search(p, set, &zero, &far, 3)? {
            None => "none".into(),
            Some(w) => format!("found, length {}", w.len()),
        })
    });
    rec.claim("todd.monotone_circuit_diameter", |_| {
        // Upper bound: edge walks in every good region, the explicit walks
        // from the only start that needs 5 edges in the bad regions. Lower
        // bound: that start is not reachable with 3 circuits.
        let walk = walk_lens.iter().copied().min();
        match (good, walk) {
            (Some(gd), Some(wl)) if lower => {
                let ub = gd.max(wl);
                Ok(if ub <= 4 { "4".into() } else { format!("at most {ub}") })
            }
            _ => Ok("undetermined".into()),
        }
    });
}

/// Maximal steps `v+ -> y -> v-` and `v- -> y -> v+` along `(∓g0, ±g')`.
fn two_step(lp: &Loaded, rec: &mut Recorder, y: &RatVec, g: &[i64]) -> CliResult<bool> {
    let p = lp.hrep();
    let set = lp.circuits();
    let (vp, vm) = (data::spindle_apex(1), data::spindle_apex(-1));
    let neg = |x: &[i64]| x.iter().map(|a| -a).collect::<Vec<_>>();
    let mut flip = g.to_vec();
    flip[0] = -flip[0];
    let mut ok = true;
    for (name, start, dirs, end) in [
        ("two_step_forward", &vp, [flip.clone(), neg(g)], &vm),
        ("two_step_backward", &vm, [g.to_vec(), neg(&flip)], &vp),
    ] {
        let mut w = WalkCertificate::new(start.clone());
        for d in dirs {
            w.push_maximal(p, d.iter().map(|&x| x.into()).collect())?;
        }
        ok &= validate_walk(p, set, &w).ok() && w.steps[0].point == *y && w.end() == end.as_slice();
        rec.cert(name, &w);
    }
    Ok(ok)
}

fn apex_ids(lp: &Loaded) -> CliResult<(usize, usize)> {
    Ok((lp.vertex(&join(data::spindle_apex(1)))?, lp.vertex(&join(data::spindle_apex(-1)))?))
}

fn battery(lp: &Loaded, specs: &[Vec<String>]) -> CliResult<Vec<bool>> {
    Ok(fa::claim_star_battery(lp.hrep(), specs)?.into_iter().map(|b| b.bounded).collect())
}

fn bounded_words(b: &[bool]) -> String {
    join(b.iter().map(|&x| if x { "bounded" } else { "unbounded" }))
}

fn with(base: &[String], extra: &[&str]) -> Vec<String> {
    base.iter().cloned().chain(extra.iter().map(|s| s.to_string())).collect()
}

fn face_count(lp: &Loaded) -> CliResult<(usize, Vec<usize>)> {
    let scan = fa::scan_2faces_with_apex(lp.hrep(), lp.graph()?, lp.faces()?, apex_ids(lp)?)?;
    let near = within_reach(&scan, 3);
    Ok((near.len(), fa::per_apex(&near).into_values().collect()))
}

fn face_walk(lp: &Loaded, rec: &mut Recorder, name: &str, from: usize, to: usize, face: &Face2) -> CliResult<(usize, usize)> {
    let (p, g) = (lp.hrep(), lp.graph()?);
    let w = fa::circuit_length_upper_via_face(p, g, from, to, face)?;
    if !validate_walk(p, lp.circuits(), &w).ok() {
        return Err(CliError::compute(format!("{name}: walk does not validate")));
    }
    rec.cert(name, &w);
    Ok((w.len(), fa::non_edge_steps(g, &w)))
}

fn figure_faces(lp: &Loaded, dataset: &str) -> CliResult<String> {
    let fx: Vec<_> = face_fixtures().into_iter().filter(|f| f.dataset == dataset).collect();
    let mut ok = 0;
    for f in &fx {
        let c = check_face_fixture(lp.hrep(), lp.graph()?, lp.faces()?, apex_ids(lp)?, f)?;
        ok += usize::from(c.ok() && c.distance == Some(3));
    }
    Ok(format!("{ok}/{}", fx.len()))
}

fn face_by_labels<'a>(lp: &'a Loaded, labels: &[&str]) -> CliResult<&'a Face2> {
    let want = lp.hrep().rows_by_label(labels)?;
    lp.faces()?
        .iter()
        .find(|f| f.tight == want)
        .ok_or_else(|| CliError::compute(format!("no 2-face with tight rows {labels:?}")))
}

fn circuit_length_two(rec: &mut Recorder, case: &str, lp: &Loaded, y: RatVec, g: &[i64]) {
    let mut cert = false;
    rec.claim(&format!("{case}.certificate"), |rec| {
        cert = two_step(lp, rec, &y, g)?;
        Ok(if cert { "valid" } else { "invalid" }.into())
    });
    let mut e1 = true;
    rec.claim(&format!("{case}.e1_circuit"), |_| {
        e1 = is_circuit_direction(lp.circuits(), &v(&[1, 0, 0, 0, 0]))?;
        Ok(e1.to_string())
    });
    rec.claim(&format!("{case}.circuit_length"), |_| {
        // The apices differ by a multiple of e1, so one step needs e1 to be
        // a circuit.
        Ok(match (cert, e1) {
            (true, false) => "2".into(),
            (true, true) => "at most 2".into(),
            _ => "undetermined".into(),
        })
    });
}

fn s48(lp: &Loaded, rec: &mut Recorder) {
    rec.claim("s48.apex_distance", |_| {
        let (a, b) = apex_ids(lp)?;
        Ok(graph_distance(lp.graph()?, a, b)?.to_string())
    });
    let y = vec![rat(0), ratio(1, 45), ratio(1, 90), ratio(1, 90), ratio(7, 360)];
    circuit_length_two(rec, "s48", lp, y, &[360, 8, 4, 4, 7]);
    rec.claim("s48.battery", |_| {
        let (a, b) = (pm_range(13, 24), pm_range(1, 12));
        let specs = [with(&a, &["4+", "4-"]), with(&a, &["3+", "3-"]), with(&b, &["15+", "15-"]), with(&b, &["16+", "16-"])];
        Ok(bounded_words(&battery(lp, &specs)?))
    });
    let maps = data::s48_symmetries();
    rec.claim("s48.symmetries", |_| {
        let mut n = 0;
        for t in &maps {
            n += usize::from(hrep_equivalent(&apply_linear_map(lp.hrep(), t)?, lp.hrep()).is_some());
        }
        Ok(n.to_string())
    });
    let mut split = Vec::new();
    rec.claim("s48.faces", |_| {
        let (n, per) = face_count(lp)?;
        split = per;
        Ok(n.to_string())
    });
    rec.claim("s48.faces_per_apex", |_| Ok(join(&split)));
    rec.claim("s48.figure_face_distance", |_| {
        let fx = face_fixtures().into_iter().find(|f| f.id == "s48-a").ok_or_else(|| CliError::compute("fixture missing"))?;
        let c = check_face_fixture(lp.hrep(), lp.graph()?, lp.faces()?, apex_ids(lp)?, &fx)?;
        Ok(c.distance.map_or("unreachable".into(), |d| d.to_string()))
    });
    let mut non_edge = Vec::new();
    rec.claim("s48.face_walks", |rec| {
        let (vp, vm) = apex_ids(lp)?;
        let face = face_by_labels(lp, &["15+", "19+", "21+"])?;
        let fwd = face_walk(lp, rec, "face_walk_forward", vp, vm, face)?;
        // The apex-swapping symmetry carries the face to one through v+.
        let img = apply_linear_map(lp.hrep(), &maps[0])?;
        let sigma = hrep_equivalent(&img, lp.hrep()).ok_or_else(|| CliError::compute("map does not fix S48"))?;
        let mapped: RowSet = face.tight.iter().map(|i| sigma[i]).collect();
        let mirror = lp
            .faces()?
            .iter()
            .find(|f| f.tight == mapped && f.contains_vertex(vp))
            .ok_or_else(|| CliError::compute("mirrored face not found"))?;
        let back = face_walk(lp, rec, "face_walk_backward", vm, vp, mirror)?;
        non_edge = vec![fwd.1, back.1];
        Ok(join([fwd.0, back.0]))
    });
    rec.claim("s48.face_walk_non_edge", |_| Ok(non_edge.iter().max().map_or("none".into(), |m| m.to_string())));
}

fn s28(lp: &Loaded, rec: &mut Recorder) {
    rec.claim("s28.apex_distance", |_| {
        let (a, b) = apex_ids(lp)?;
        Ok(graph_distance(lp.graph()?, a, b)?.to_string())
    });
    let y = vec![rat(0), ratio(1, 30), ratio(2, 90), ratio(2, 90), ratio(1, 30)];
    circuit_length_two(rec, "s28", lp, y, &[90, 3, 2, 2, 3]);
    rec.claim("s28.battery", |_| {
        let (a, b) = (pm_range(8, 14), pm_range(1, 7));
        let specs = [with(&a, &["2+", "2-"]), with(&a, &["3+", "3-"]), with(&b, &["9+", "9-"]), with(&b, &["10+", "10-"])];
        Ok(bounded_words(&battery(lp, &specs)?))
    });
    rec.claim("s28.faces", |_| Ok(face_count(lp)?.0.to_string()));
    rec.claim("s28.figure_faces", |_| figure_faces(lp, "s28"));
}

fn s25(lp: &Loaded, rec: &mut Recorder) {
    let p = lp.hrep();
    rec.claim("s25.canonical_circuits", |_| Ok(lp.circuits().canonical_count().to_string()));
    rec.claim("s25.signed_circuits", |_| Ok(lp.circuits().signed_count().to_string()));
    rec.claim("s25.circuit_length_lower", |_| {
        let (vp, vm) = (data::spindle_apex(1), data::spindle_apex(-1));
        let set = lp.circuits();
        let none = walks::two_step_reachable(p, set, &vp, &vm)?.is_none() && walks::two_step_reachable(p, set, &vm, &vp)?.is_none();
        Ok(if none { "3" } else { "at most 2" }.into())
    });
    rec.claim("s25.face_walks", |rec| {
        let (ip, im) = apex_ids(lp)?;
        let mut longest = 0;
        let mut dirs = BTreeSet::new();
        for fx in face_fixtures().iter().filter(|f| f.dataset == "s25") {
            let face = face_by_labels(lp, &fx.face.iter().map(String::as_str).collect::<Vec<_>>())?;
            let (from, to) = if fx.from == "v+" { (ip, im) } else { (im, ip) };
            let (len, _) = face_walk(lp, rec, &format!("face_walk_{}", fx.id), from, to, face)?;
            longest = longest.max(len);
            dirs.insert(fx.from.clone());
        }
        if dirs.len() < 2 {
            return Err(CliError::compute("drawn faces cover one direction only"));
        }
        Ok(longest.to_string())
    });
    let mut pairs = Vec::new();
    rec.claim("s25.battery_pairs", |_| {
        let (a, b) = (num_range(13, 25), num_range(1, 12));
        let specs = [with(&a, &["1", "2"]), with(&a, &["3", "4"]), with(&b, &["13", "14"]), with(&b, &["15", "16"])];
        pairs = battery(lp, &specs)?;
        Ok(bounded_words(&pairs))
    });
    rec.claim("s25.battery_parts", |_| {
        if pairs.len() != 4 {
            return Err(CliError::compute("battery failed"));
        }
        Ok(join([pairs[0] || pairs[1], pairs[2] || pairs[3]]))
    });
    rec.claim("s25.faces", |_| Ok(face_count(lp)?.0.to_string()));
    rec.claim("s25.figure_faces", |_| figure_faces(lp, "s25"));
    rec.claim("s25.combination_minus", |_| {
        Ok(exactla::fmt_vec(&fa::row_combination(p, &[("13", rat(55)), ("14", rat(60))])?))
    });
    rec.claim("s25.combination_plus", |_| {
        let labels: Vec<String> = (1..=12).map(|i| i.to_string()).collect();
        let terms: Vec<(&str, Rat)> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let c = match i {
                    0 => ratio(21, 8),
                    10 | 11 => ratio(40, 7),
                    _ => rat(1),
                };
                (l.as_str(), c)
            })
            .collect();
        Ok(exactla::fmt_vec(&fa::row_combination(p, &terms)?))
    });
    rec.claim("s25.combination_chain", |_| {
        let beta = rat(549 * 38 + 54 * 22) - ratio(2999, 50);
        let r = fa::row_combination(p, &[("22", rat(1)), ("24", rat(380)), ("25", rat(22))])?;
        let s = fa::row_combination(p, &[("16", ratio(34, 33 * 44) * &beta), ("17", beta.clone() / rat(44))])?;
        let total = exactla::add(&r, &s);
        let e1_negative = total[1..].iter().all(Zero::is_zero) && total[0].is_negative();
        Ok((r[1] == -beta.clone() && s[1] == beta && e1_negative).to_string())
    });
}

/// Runs `todd`, `s48`, `s28`, `s25` in order for `all`.
pub fn verify(session: &Session, manifest: &Manifest, case: &str, opts: &VerifyOptions) -> CliResult<Vec<CaseReport>> {
    let cases: Vec<&str> = if case == "all" { crate::claims::CASES.to_vec() } else { vec![case] };
    cases.into_iter().map(|c| verify_case(session, manifest, c, opts)).collect()
}
