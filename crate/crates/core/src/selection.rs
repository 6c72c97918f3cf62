//! Algorithm outputs.

/// One iteration of an adaptive run: which references were added, the target
/// reference count the schedule asked for, the running utility estimates of
/// the candidates that were active, and the candidates that survived.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    /// Reference indices newly drawn this iteration, in draw order.
    pub refs_added: Vec<usize>,
    /// Scheduled reference-set size for this iteration (`t_i`, `r_i`, ...).
    pub target_refs: Option<usize>,
    /// `(candidate, running estimate)` for every candidate active this
    /// iteration, ascending by candidate index.
    pub estimates: Vec<(usize, f64)>,
    /// Candidates remaining after this iteration, ascending.
    pub survivors: Vec<usize>,
    pub note: Option<String>,
}

impl TraceRecord {
    /// Number of candidates that entered this iteration.
    pub fn active_len(&self) -> usize {
        self.estimates.len()
    }
}

/// The result of one algorithm run.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    /// Index of the chosen candidate.
    pub chosen: usize,
    /// Unique off-diagonal utility evaluations charged by this run.
    pub evals_used: usize,
    pub trace: Vec<TraceRecord>,
}

impl Selection {
    pub fn new(chosen: usize, evals_used: usize, trace: Vec<TraceRecord>) -> Self {
        Selection {
            chosen,
            evals_used,
            trace,
        }
    }

    /// Convergence flag surfaced by restart strategies: `Some(true)` if a
    /// trailing trace note says "converged", `Some(false)` for "unconverged",
    /// `None` when the run carries no such flag.
    pub fn converged(&self) -> Option<bool> {
        for record in self.trace.iter().rev() {
            match record.note.as_deref() {
                Some("converged") => return Some(true),
                Some("unconverged") => return Some(false),
                _ => {}
            }
        }
        None
    }
}
