//! A polytope together with lazily computed, shareable derived data.

use std::sync::OnceLock;

use crate::circuits::{self, CircuitSet};
use crate::error::{Error, Result};
use crate::exactla::RatVec;
use crate::hrep::HRep;
use crate::vertexgraph::{self, Face2, PolyGraph};

/// Computes each artifact at most once; each can also be seeded from a
/// cache. Safe to share across threads.
#[derive(Debug)]
pub struct Polytope {
    hrep: HRep,
    graph: OnceLock<PolyGraph>,
    circuits: OnceLock<CircuitSet>,
    faces: OnceLock<Vec<Face2>>,
}

impl Polytope {
    pub fn new(hrep: HRep) -> Self {
        Polytope { hrep, graph: OnceLock::new(), circuits: OnceLock::new(), faces: OnceLock::new() }
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn graph(&self) -> Result<&PolyGraph> {
        if let Some(g) = self.graph.get() {
            return Ok(g);
        }
        let g = vertexgraph::adjacency_graph(&self.hrep)?;
        Ok(self.graph.get_or_init(|| g))
    }

    pub fn circuits(&self) -> &CircuitSet {
        self.circuits.get_or_init(|| circuits::enumerate_circuits(&self.hrep))
    }

    pub fn faces(&self) -> Result<&[Face2]> {
        if let Some(f) = self.faces.get() {
            return Ok(f);
        }
        let f = vertexgraph::enumerate_2faces(&self.hrep, self.graph()?);
        Ok(self.faces.get_or_init(|| f))
    }

    /// Apex ids `(u, v)` with `u < v`.
    pub fn spindle(&self) -> Result<(usize, usize)> {
        vertexgraph::detect_spindle_in(&self.hrep, self.graph()?)
            .ok_or_else(|| Error::pre("polytope is not a spindle"))
    }

    pub fn vertex_id(&self, x: &[crate::Rat]) -> Result<usize> {
        self.graph()?.find_vertex(x).ok_or_else(|| Error::pre("point is not a vertex"))
    }

    pub fn point(&self, id: usize) -> Result<&RatVec> {
        Ok(&self.graph()?.vertices[id].point)
    }

    /// Installs a precomputed graph; ignored when one is already present.
    pub fn seed_graph(&self, g: PolyGraph) {
        let _ = self.graph.set(g.reindex());
    }

    pub fn seed_circuits(&self, c: CircuitSet) {
        let _ = self.circuits.set(c.reindex());
    }

    pub fn seed_faces(&self, f: Vec<Face2>) {
        let _ = self.faces.set(f);
    }

    pub fn has_graph(&self) -> bool {
        self.graph.get().is_some()
    }

    pub fn has_circuits(&self) -> bool {
        self.circuits.get().is_some()
    }

    pub fn has_faces(&self) -> bool {
        self.faces.get().is_some()
    }
}
