use serde::Serialize;

/// Enumeration limits shared by every exhaustive operation.
///
/// Exceeding a cap is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest morphism count accepted for user-facing categories.
    pub max_morphisms: usize,
    /// Largest number of solutions (families, transformations, functors,
    /// quotient elements) an enumeration may produce, and the node budget of
    /// first-hit searches.
    pub max_enum: usize,
    /// Largest carrier for exhaustive subset sweeps over ternary frames.
    pub max_frame_exhaustive: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_morphisms: 64,
            max_enum: 100_000,
            max_frame_exhaustive: 4,
        }
    }
}
