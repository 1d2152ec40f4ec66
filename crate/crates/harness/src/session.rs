//! Input resolution and cached access to the derived data of a polytope.

use std::fs;
use std::path::Path;

use circdiam::circuits::CircuitSet;
use circdiam::exactla::{parse_rat, RatVec};
use circdiam::hrep::{parse_hrep, write_hrep};
use circdiam::vertexgraph::{Face2, PolyGraph};
use circdiam::{data, HRep, Polytope};

use crate::cache::Cache;
use crate::error::{CliError, CliResult};

/// Reads an H-format file, falling back to a bundled dataset when the path
/// does not exist and its stem names one (`s25.hrep`, `m4`).
pub fn read_input(input: &str) -> CliResult<HRep> {
    let path = Path::new(input);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| CliError::compute(format!("{input}: {e}")))?;
        return parse_hrep(&text).map_err(|e| CliError::compute(format!("{input}: {e}")));
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(input);
    data::bundled(&stem.to_ascii_lowercase())
        .ok_or_else(|| CliError::compute(format!("{input}: no such file or bundled dataset")))
}

pub struct Session {
    pub cache: Option<Cache>,
}

impl Session {
    pub fn new(cache: Option<Cache>) -> Self {
        Session { cache }
    }

    pub fn open(&self, hrep: HRep) -> Loaded {
        let key = write_hrep(&hrep);
        Loaded { pt: Polytope::new(hrep), key, cache: self.cache.clone() }
    }
}

/// A polytope whose graph, circuits and 2-faces go through the cache.
pub struct Loaded {
    pub pt: Polytope,
    key: String,
    cache: Option<Cache>,
}

impl Loaded {
    pub fn hrep(&self) -> &HRep {
        self.pt.hrep()
    }

    pub fn graph(&self) -> CliResult<&PolyGraph> {
        if !self.pt.has_graph() {
            if let Some(g) = self.cache.as_ref().and_then(|c| c.get::<PolyGraph>("graph", &self.key)) {
                self.pt.seed_graph(g);
            }
        }
        let fresh = !self.pt.has_graph();
        let g = self.pt.graph().map_err(CliError::from)?;
        if fresh {
            if let Some(c) = &self.cache {
                c.put("graph", &self.key, g);
            }
        }
        Ok(g)
    }

    pub fn circuits(&self) -> &CircuitSet {
        if !self.pt.has_circuits() {
            if let Some(set) = self.cache.as_ref().and_then(|c| c.get::<CircuitSet>("circuits", &self.key)) {
                self.pt.seed_circuits(set);
            }
        }
        let fresh = !self.pt.has_circuits();
        let set = self.pt.circuits();
        if fresh {
            if let Some(c) = &self.cache {
                c.put("circuits", &self.key, set);
            }
        }
        set
    }

    pub fn faces(&self) -> CliResult<&[Face2]> {
        let n = self.graph()?.n_vertices();
        if !self.pt.has_faces() {
            if let Some(f) = self.cache.as_ref().and_then(|c| c.get::<Vec<Face2>>("faces", &self.key)) {
                if f.iter().all(|face| face.cycle.iter().all(|&v| v < n)) {
                    self.pt.seed_faces(f);
                }
            }
        }
        let fresh = !self.pt.has_faces();
        let faces = self.pt.faces().map_err(CliError::from)?;
        if fresh {
            if let Some(c) = &self.cache {
                c.put("faces", &self.key, &faces);
            }
        }
        Ok(faces)
    }

    /// Apex ids `(u, v)` with `u < v`.
    pub fn spindle(&self) -> CliResult<(usize, usize)> {
        self.graph()?;
        self.pt.spindle().map_err(CliError::from)
    }

    /// Resolves a vertex given as an id, a point `x1,x2,...`, or `apex1` /
    /// `apex2` for the spindle apices.
    pub fn vertex(&self, spec: &str) -> CliResult<usize> {
        let g = self.graph()?;
        let spec = spec.trim();
        if let Ok(id) = spec.parse::<usize>() {
            return if id < g.n_vertices() {
                Ok(id)
            } else {
                Err(CliError::usage(format!("vertex id {id} out of range (0..{})", g.n_vertices())))
            };
        }
        if let Some(k) = spec.strip_prefix("apex") {
            let (a, b) = self.spindle()?;
            return match k {
                "1" => Ok(a),
                "2" => Ok(b),
                _ => Err(CliError::usage(format!("unknown apex {spec:?}; use apex1 or apex2"))),
            };
        }
        let x = parse_point(spec)?;
        g.find_vertex(&x).ok_or_else(|| CliError::compute(format!("{spec} is not a vertex")))
    }

    pub fn point(&self, spec: &str) -> CliResult<RatVec> {
        let v = self.vertex(spec)?;
        Ok(self.graph()?.vertices[v].point.clone())
    }
}

/// `x1,x2,...` with optional surrounding parentheses; entries `p` or `p/q`.
pub fn parse_point(spec: &str) -> CliResult<RatVec> {
    let inner = spec.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|t| parse_rat(t.trim()).ok_or_else(|| CliError::usage(format!("not a rational: {t:?}"))))
        .collect()
}
