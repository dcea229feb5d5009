/// Outcome of an identity sweep: how many instances were checked and which
/// of them left a nonzero residual.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResidualSummary {
    pub checked: usize,
    pub nonzero: usize,
    /// The first few failures as `(where, residual)` in printed form.
    pub failures: Vec<(String, String)>,
}

/// Failures beyond this many are counted but not recorded.
pub const MAX_RECORDED: usize = 20;

impl ResidualSummary {
    pub fn is_zero(&self) -> bool {
        self.nonzero == 0
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, at: String, residual: String) {
        self.checked += 1;
        self.nonzero += 1;
        if self.failures.len() < MAX_RECORDED {
            self.failures.push((at, residual));
        }
    }

    pub fn merge(mut self, other: ResidualSummary) -> ResidualSummary {
        self.checked += other.checked;
        self.nonzero += other.nonzero;
        for f in other.failures {
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(f);
            }
        }
        self
    }
}
