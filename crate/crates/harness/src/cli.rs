//! Argument parsing and subcommand dispatch.

use std::fs;
use std::path::PathBuf;

use circdiam::exactla::{self, RatVec};
use circdiam::faceanalysis as fa;
use circdiam::hrep::{wedge_over_facet, write_hrep};
use circdiam::orientations::{classify_regions, monotone_edge_diameter, orient_graph};
use circdiam::vertexgraph::{self, detect_spindle_in, graph_distance, vertex_label};
use circdiam::walks::{self, validate_walk, WalkCertificate};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::claims::Manifest;
use crate::error::{CliError, CliResult, EXIT_CLAIM, EXIT_USAGE};
use crate::session::{parse_point, read_input, Loaded, Session};
use crate::verify::{self, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "circdiam", version, about = "Exact circuit walks and diameters of rational polytopes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// H-format file, or a bundled dataset name (m4, s48, s28, s25).
    #[arg(long, global = true)]
    pub input: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Result cache directory; overrides CIRCDIAM_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Step bound for walk searches.
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List vertices with their tight rows.
    Vertices,
    /// Vertex-edge graph.
    Graph,
    /// Enumerate circuits.
    Circuits,
    /// Graph distance between two vertices (default: the spindle apices).
    Distance(Pair),
    /// Orientation analysis of the graph.
    #[command(subcommand)]
    Orientations(OrientCmd),
    /// Same as `orientations classify`.
    Classify,
    /// Circuit walk searches.
    #[command(subcommand)]
    CircuitWalk(WalkCmd),
    #[command(subcommand)]
    Spindle(SpindleCmd),
    #[command(subcommand)]
    Antiblocking(AntiCmd),
    #[command(subcommand)]
    Twoface(FaceCmd),
    /// Wedge over a facet, printed in H-format.
    Wedge {
        #[arg(long)]
        facet: String,
    },
    /// Check the bundled claims.
    #[command(alias = "verify-paper")]
    Verify {
        #[arg(default_value = "all", value_parser = ["todd", "s48", "s28", "s25", "all"])]
        case: String,
        /// Claims manifest replacing the bundled one.
        #[arg(long)]
        claims: Option<PathBuf>,
        /// Include per-claim runtimes (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
}

/// Vertices are ids, points `x1,x2,..`, or `apex1`/`apex2`.
#[derive(Args, Debug)]
pub struct Pair {
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum OrientCmd {
    /// Enumerate all objective orientations and their monotone diameters.
    Classify,
    /// Orientation induced by one objective.
    Orient {
        #[arg(long, allow_hyphen_values = true)]
        objective: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum WalkCmd {
    /// Shortest circuit walk within --max-depth steps (default 3).
    Search(Pair),
    /// All endpoints of one maximal circuit step.
    OneStep {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
    },
    /// A walk of at most two steps.
    TwoStep(Pair),
}

#[derive(Subcommand, Debug)]
pub enum SpindleCmd {
    Detect,
    /// Circuit length between the apices: exact up to --max-depth (default 2),
    /// plus the best 2-face walk as an upper bound.
    Length,
}

#[derive(Subcommand, Debug)]
pub enum AntiCmd {
    Check,
    /// Walk from a point to the origin through successive coordinate faces.
    Walk {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FaceCmd {
    /// All 2-faces.
    Enum,
    /// Apex 2-faces with unbounded C(F, {apex}).
    Scan {
        /// Keep faces within this many edge steps of the other apex.
        #[arg(long)]
        reach: Option<usize>,
    },
    /// The polyhedron C(F, V) for one face.
    Cfv {
        /// Tight row labels of the face, comma separated.
        #[arg(long)]
        face: String,
        /// Vertices of V (repeatable).
        #[arg(long = "vertex", required = true, allow_hyphen_values = true)]
        vertices: Vec<String>,
    },
}

struct Out {
    text: String,
    json: Value,
    csv: Option<String>,
    dot: Option<String>,
}

impl Out {
    fn new(text: String, json: Value) -> Self {
        Out { text, json, csv: None, dot: None }
    }

    fn render(self, format: Format) -> CliResult<String> {
        let missing = |f: &str| CliError::usage(format!("--format {f} is not available for this command"));
        match format {
            Format::Text => Ok(self.text),
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("json") + "\n"),
            Format::Csv => self.csv.ok_or_else(|| missing("csv")),
            Format::Dot => self.dot.ok_or_else(|| missing("dot")),
        }
    }
}

/// Parses `args` and runs; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((text, status)) => match write_out(&cli.global, &text) {
            Ok(()) => status,
            Err(e) => {
                eprintln!("circdiam: {e}");
                e.status
            }
        },
        Err(e) => {
            eprintln!("circdiam: {e}");
            e.status
        }
    }
}

fn write_out(g: &Global, text: &str) -> CliResult<()> {
    match &g.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::compute(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

/// Output text and exit status.
pub fn execute(cli: &Cli) -> CliResult<(String, i32)> {
    let threads = match cli.global.jobs {
        Some(0) => return Err(CliError::usage("--jobs must be positive")),
        Some(n) => n,
        None => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::compute(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> CliResult<(String, i32)> {
    let g = &cli.global;
    let session = Session::new(Cache::from_config(g.cache_dir.as_deref()));
    if let Command::Verify { case, claims, timings } = &cli.command {
        let manifest = match claims {
            Some(path) => Manifest::parse(
                &fs::read_to_string(path).map_err(|e| CliError::compute(format!("{}: {e}", path.display())))?,
            )?,
            None => Manifest::bundled(),
        };
        let reports = verify::verify(&session, &manifest, case, &VerifyOptions { timings: *timings })?;
        let status = if reports.iter().all(|r| r.passed()) { 0 } else { EXIT_CLAIM };
        let text = match g.format {
            Format::Json => serde_json::to_string_pretty(&reports).expect("json") + "\n",
            Format::Text => reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n"),
            f => return Err(CliError::usage(format!("--format {f:?} is not available for verify").to_lowercase())),
        };
        return Ok((text, status));
    }
    let input = g.input.as_deref().ok_or_else(|| CliError::usage("--input is required"))?;
    let lp = session.open(read_input(input)?);
    let out = command(&lp, &cli.command, g)?;
    Ok((out.render(g.format)?, 0))
}

fn pt(x: &[circdiam::Rat]) -> String {
    exactla::fmt_vec(x)
}

fn strs(x: &[circdiam::Rat]) -> Vec<String> {
    x.iter().map(ToString::to_string).collect()
}

fn labels(lp: &Loaded, set: circdiam::RowSet) -> Vec<String> {
    lp.hrep().labels_of(set).into_iter().map(String::from).collect()
}

fn apices(lp: &Loaded, pair: &Pair) -> CliResult<(usize, usize)> {
    let from = lp.vertex(pair.from.as_deref().unwrap_or("apex1"))?;
    let to = lp.vertex(pair.to.as_deref().unwrap_or("apex2"))?;
    Ok((from, to))
}

fn walk_out(lp: &Loaded, w: &WalkCertificate) -> Out {
    let rep = validate_walk(lp.hrep(), lp.circuits(), w);
    let mut text = format!("start {}\n", pt(&w.start));
    for (i, s) in w.steps.iter().enumerate() {
        let g: Vec<String> = s.g.iter().map(ToString::to_string).collect();
        text.push_str(&format!(
            "step {}: g = ({}) alpha = {} -> {} entered {}\n",
            i + 1,
            g.join(","),
            s.alpha,
            pt(&s.point),
            s.entered.join(" ")
        ));
    }
    text.push_str(&format!("length {} valid {}\n", w.len(), rep.ok()));
    let json = json!({ "walk": w, "report": rep });
    Out::new(text, json)
}

fn not_found(what: &str) -> Out {
    Out::new(format!("{what}\n"), json!({ "walk": null, "result": what }))
}

fn command(lp: &Loaded, cmd: &Command, g: &Global) -> CliResult<Out> {
    let p = lp.hrep();
    Ok(match cmd {
        Command::Vertices => {
            let graph = lp.graph()?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (i, v) in graph.vertices.iter().enumerate() {
                let label = vertex_label(p, v.tight);
                text.push_str(&format!("{i} {label} {}\n", pt(&v.point)));
                rows.push(json!({ "id": i, "label": label, "point": strs(&v.point), "tight": labels(lp, v.tight) }));
            }
            let mut out = Out::new(text, Value::Array(rows));
            out.csv = Some(vertexgraph::vertex_csv(p, &graph.vertices));
            out
        }
        Command::Graph => {
            let graph = lp.graph()?;
            let mut text = format!("{} vertices, {} edges\n", graph.n_vertices(), graph.edges.len());
            let mut csv = String::from("u,v\n");
            for &(a, b) in &graph.edges {
                text.push_str(&format!("{a} {b}\n"));
                csv.push_str(&format!("{a},{b}\n"));
            }
            let mut out = Out::new(text, json!({ "vertices": graph.n_vertices(), "edges": graph.edges }));
            out.csv = Some(csv);
            out.dot = Some(graph.to_dot(p));
            out
        }
        Command::Circuits => {
            let set = lp.circuits();
            let text = format!("{} canonical / {} signed\n{}", set.canonical_count(), set.signed_count(), set.to_text(p));
            let list: Vec<Value> = set
                .iter()
                .map(|c| json!({ "g": c.g.iter().map(ToString::to_string).collect::<Vec<_>>(), "witness": labels(lp, c.witness) }))
                .collect();
            let mut csv = String::from("g,witness\n");
            for c in set.iter() {
                let gs: Vec<String> = c.g.iter().map(ToString::to_string).collect();
                csv.push_str(&format!("{},{}\n", gs.join(" "), labels(lp, c.witness).join(" ")));
            }
            let mut out = Out::new(
                text,
                json!({ "canonical": set.canonical_count(), "signed": set.signed_count(), "circuits": list }),
            );
            out.csv = Some(csv);
            out
        }
        Command::Distance(pair) => {
            let (a, b) = apices(lp, pair)?;
            let d = graph_distance(lp.graph()?, a, b)?;
            Out::new(format!("{d}\n"), json!({ "from": a, "to": b, "distance": d }))
        }
        Command::Classify | Command::Orientations(OrientCmd::Classify) => {
            let graph = lp.graph()?;
            let cls = classify_regions(p, graph)?;
            let mut text = format!(
                "regions: {}\nbad regions (monotone edge diameter > {}): {}\n",
                cls.total(),
                cls.hirsch_bound,
                cls.bad.len()
            );
            for v in 0..graph.n_vertices() {
                let n = cls.sink_count(v);
                if n > 0 {
                    text.push_str(&format!("sink {v} {}: {n}\n", pt(&graph.vertices[v].point)));
                }
            }
            for &i in &cls.bad {
                let r = &cls.regions[i];
                let worst: Vec<String> = r.worst.iter().map(ToString::to_string).collect();
                text.push_str(&format!(
                    "bad region {i}: witness ({}) sink {} source {} diameter {} worst {}\n",
                    r.region.witness.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
                    r.sink,
                    r.source,
                    r.diameter,
                    worst.join(" ")
                ));
            }
            let mut out = Out::new(text, serde_json::to_value(&cls).expect("json"));
            out.csv = Some(cls.to_csv(p, graph));
            out
        }
        Command::Orientations(OrientCmd::Orient { objective }) => {
            let graph = lp.graph()?;
            let c = parse_point(objective)?;
            let d = orient_graph(graph, &c)?;
            let m = monotone_edge_diameter(&d)?;
            let text = format!("sink {}\nmonotone edge diameter {}\nworst {:?}\n", m.sink, m.diameter, m.worst);
            let mut out = Out::new(text, serde_json::to_value(&m).expect("json"));
            out.dot = Some(d.to_dot(p, graph));
            out
        }
        Command::CircuitWalk(WalkCmd::Search(pair)) | Command::CircuitWalk(WalkCmd::TwoStep(pair)) => {
            let k = match cmd {
                Command::CircuitWalk(WalkCmd::TwoStep(_)) => 2,
                _ => g.max_depth.unwrap_or(3),
            };
            let (a, b) = apices(lp, pair)?;
            let (u, v) = (lp.point(&a.to_string())?, lp.point(&b.to_string())?);
            match walks::bounded_depth_search(p, lp.circuits(), &u, &v, k)? {
                Some(w) => walk_out(lp, &w),
                None => not_found(&format!("no circuit walk within {k} steps")),
            }
        }
        Command::CircuitWalk(WalkCmd::OneStep { from }) => {
            let y = lp.point(from)?;
            let reach = walks::one_step_reach(p, lp.circuits(), &y)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            let set = lp.circuits();
            for (i, sign, end) in &reach {
                let gs: Vec<String> = set.circuits[*i].g.iter().map(|x| (x * i64::from(*sign)).to_string()).collect();
                text.push_str(&format!("({}) -> {}\n", gs.join(","), pt(end)));
                rows.push(json!({ "g": gs, "end": strs(end) }));
            }
            Out::new(text, Value::Array(rows))
        }
        Command::Spindle(SpindleCmd::Detect) => match detect_spindle_in(p, lp.graph()?) {
            Some((a, b)) => {
                let graph = lp.graph()?;
                let (x, y) = (&graph.vertices[a].point, &graph.vertices[b].point);
                Out::new(
                    format!("spindle with apices {a} {} and {b} {}\n", pt(x), pt(y)),
                    json!({ "spindle": true, "apices": [a, b], "points": [strs(x), strs(y)] }),
                )
            }
            None => Out::new("not a spindle\n".into(), json!({ "spindle": false })),
        },
        Command::Spindle(SpindleCmd::Length) => spindle_length(lp, g.max_depth.unwrap_or(2))?,
        Command::Antiblocking(AntiCmd::Check) => {
            let ok = walks::is_antiblocking(p);
            Out::new(format!("{ok}\n"), json!({ "antiblocking": ok }))
        }
        Command::Antiblocking(AntiCmd::Walk { from }) => {
            let x = parse_point(from)?;
            walk_out(lp, &walks::antiblocking_walk(p, &x)?)
        }
        Command::Twoface(FaceCmd::Enum) => {
            let faces = lp.faces()?;
            let mut text = format!("{} 2-faces\n", faces.len());
            let mut rows = Vec::new();
            for f in faces {
                let cyc: Vec<String> = f.cycle.iter().map(ToString::to_string).collect();
                text.push_str(&format!("{} : {}\n", labels(lp, f.tight).join(" "), cyc.join(" ")));
                rows.push(json!({ "tight": labels(lp, f.tight), "cycle": f.cycle }));
            }
            Out::new(text, Value::Array(rows))
        }
        Command::Twoface(FaceCmd::Scan { reach }) => {
            let apex = lp.spindle()?;
            let scan = fa::scan_2faces_with_apex(p, lp.graph()?, lp.faces()?, apex)?;
            let kept: Vec<&fa::FaceScan> = match reach {
                Some(k) => fa::within_reach(&scan, *k),
                None => scan.iter().collect(),
            };
            let mut text = format!("{} faces\n", kept.len());
            let mut csv = String::from("face,apex,distance,vertices,kept\n");
            for s in &kept {
                let n = lp.faces()?[s.face].cycle.len();
                text.push_str(&format!(
                    "{} apex {} distance {} vertices {n} kept {}\n",
                    s.tight.join(" "),
                    s.apex,
                    s.distance,
                    s.cfv.kept.join(" ")
                ));
                csv.push_str(&format!("{},{},{},{n},{}\n", s.tight.join(" "), s.apex, s.distance, s.cfv.kept.join(" ")));
            }
            let mut out = Out::new(text, serde_json::to_value(&kept).expect("json"));
            out.csv = Some(csv);
            out
        }
        Command::Twoface(FaceCmd::Cfv { face, vertices }) => {
            let want = p.rows_by_label(&face.split(',').map(str::trim).collect::<Vec<_>>())?;
            let f = lp
                .faces()?
                .iter()
                .find(|f| f.tight == want)
                .ok_or_else(|| CliError::compute(format!("no 2-face with tight rows {face}")))?;
            let v: Vec<usize> = vertices.iter().map(|s| lp.vertex(s)).collect::<CliResult<_>>()?;
            let c = fa::cfv(p, lp.graph()?, f, &v)?;
            let rays: Vec<String> = c
                .rays
                .iter()
                .map(|r| format!("({})", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            let text = format!(
                "dropped {}\nkept {}\n{}\nrays {}\n",
                c.dropped.join(" "),
                c.kept.join(" "),
                if c.unbounded { "unbounded" } else { "bounded" },
                rays.join(" ")
            );
            Out::new(text, serde_json::to_value(&c).expect("json"))
        }
        Command::Wedge { facet } => {
            let w = wedge_over_facet(p, facet)?;
            let text = write_hrep(&w);
            Out::new(text.clone(), json!({ "hrep": text }))
        }
        Command::Verify { .. } => unreachable!("handled in dispatch"),
    })
}

fn spindle_length(lp: &Loaded, k: usize) -> CliResult<Out> {
    let p = lp.hrep();
    let (a, b) = lp.spindle()?;
    let (u, v): (RatVec, RatVec) = (lp.point(&a.to_string())?, lp.point(&b.to_string())?);
    let set = lp.circuits();
    let fwd = walks::bounded_depth_search(p, set, &u, &v, k)?;
    let back = walks::bounded_depth_search(p, set, &v, &u, k)?;
    let exact = match (&fwd, &back) {
        (Some(x), Some(y)) => Some(x.len().max(y.len())),
        _ => None,
    };
    let mut text = String::new();
    let mut json = json!({ "apices": [a, b], "max_depth": k });
    match exact {
        Some(l) => {
            text.push_str(&format!("circuit length {l}\n"));
            json["length"] = json!(l);
        }
        None => {
            let lower = [&fwd, &back].iter().filter_map(|w| w.as_ref().map(|w| w.len())).max().unwrap_or(0).max(k + 1);
            text.push_str(&format!("circuit length at least {lower}\n"));
            json["lower_bound"] = json!(lower);
            let graph = lp.graph()?;
            let faces = lp.faces()?;
            let mut upper = Vec::new();
            for (from, to) in [(a, b), (b, a)] {
                if let Ok((_, w)) = fa::best_face_walk(p, graph, faces, from, to) {
                    if validate_walk(p, set, &w).ok() {
                        upper.push(w.len());
                    }
                }
            }
            if upper.len() == 2 {
                let ub = upper.iter().max().copied().unwrap_or(0);
                text.push_str(&format!("circuit length at most {ub} (2-face walks)\n"));
                json["upper_bound"] = json!(ub);
            }
        }
    }
    Ok(Out::new(text, json))
}
