//! Extreme Khovanov cohomology of link diagrams through the independence
//! complex of the Lando graph, with a brute-force enhanced-state oracle and
//! the simplicial machinery behind both.

pub mod cli;
pub mod diagram;
pub mod extreme;
pub mod families;
pub mod graph;
pub mod khovanov;
pub mod lando;
pub mod simplicial;

/// Caps guarding the exponential parts of every pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest diagram handled by state enumeration.
    pub max_crossings: usize,
    /// Largest face family any complex may expand to.
    pub max_faces: usize,
    /// Largest graph handled by independence counting.
    pub max_lando_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_crossings: 16,
            max_faces: simplicial::DEFAULT_MAX_FACES,
            max_lando_vertices: simplicial::MAX_VERTICES,
        }
    }
}

/// Whether an error came from one of the [`Limits`] caps.
pub trait CapExceeded {
    fn is_cap_exceeded(&self) -> bool;
}

impl CapExceeded for simplicial::SimplicialError {
    fn is_cap_exceeded(&self) -> bool {
        matches!(self, simplicial::SimplicialError::CapExceeded { .. } | simplicial::SimplicialError::GroundTooLarge(_))
    }
}

impl CapExceeded for khovanov::KhovanovError {
    fn is_cap_exceeded(&self) -> bool {
        matches!(self, khovanov::KhovanovError::CapExceeded { .. })
    }
}

impl CapExceeded for lando::LandoError {
    fn is_cap_exceeded(&self) -> bool {
        matches!(self, lando::LandoError::CapExceeded { .. })
    }
}

impl CapExceeded for extreme::ExtremeError {
    fn is_cap_exceeded(&self) -> bool {
        match self {
            extreme::ExtremeError::Lando(e) => e.is_cap_exceeded(),
            extreme::ExtremeError::Simplicial(e) => e.is_cap_exceeded(),
            extreme::ExtremeError::Khovanov(e) => e.is_cap_exceeded(),
        }
    }
}

impl CapExceeded for families::FamilyError {
    fn is_cap_exceeded(&self) -> bool {
        matches!(self, families::FamilyError::Simplicial(e) if e.is_cap_exceeded())
    }
}

impl CapExceeded for diagram::DiagramError {
    fn is_cap_exceeded(&self) -> bool {
        false
    }
}
