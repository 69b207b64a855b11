//! Resource caps shared by the search and enumeration routines.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Coset table cap for enumeration; exceeding it yields an inconclusive
    /// outcome, never a wrong index.
    pub max_cosets: usize,
    /// Cap on presentation simplification moves.
    pub tietze_moves: usize,
    /// Cap on word-set reduction steps when testing images inside free groups.
    pub nielsen_steps: usize,
    /// Fact store cap for forward chaining.
    pub max_facts: usize,
    /// Exhaustive cover search refuses complexes with more vertices.
    pub exact_vertex_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_cosets: 10_000,
            tietze_moves: 10_000,
            nielsen_steps: 10_000,
            max_facts: 100_000,
            exact_vertex_cap: 12,
        }
    }
}

impl Budget {
    pub fn with_max_cosets(mut self, max_cosets: usize) -> Self {
        self.max_cosets = max_cosets;
        self
    }

    pub fn with_tietze_moves(mut self, tietze_moves: usize) -> Self {
        self.tietze_moves = tietze_moves;
        self
    }
}
