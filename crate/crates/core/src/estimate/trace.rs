use std::fmt::Write as _;

/// Which estimator produced a trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Estimator {
    EdgeSample,
    ForkMonteCarlo,
    UndirectedTriangles,
    TransitiveTriangles,
    CyclicTriangles,
}

impl Estimator {
    pub fn name(&self) -> &'static str {
        match self {
            Estimator::EdgeSample => "edge-sample",
            Estimator::ForkMonteCarlo => "mc-fork",
            Estimator::UndirectedTriangles => "mc-triangle-ucc",
            Estimator::TransitiveTriangles => "mc-triangle-tcc",
            Estimator::CyclicTriangles => "mc-triangle-ccc",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Checkpoint {
    pub iteration: u64,
    pub estimate: f64,
    pub std: f64,
}

/// Result of one sampling run.
///
/// `y` and `y_open` estimate the closed and open structure counts. For icc
/// estimators `estimate = 4·y / y_open`; for the triangle estimators `y`
/// estimates the closed count weighted by centres (so that
/// `estimate = y / y_open`).
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateTrace {
    pub method: Estimator,
    pub seed: u64,
    pub estimate: f64,
    pub y: f64,
    pub y_open: f64,
    pub iterations: u64,
    /// Arc sampling probability, for edge-sample runs.
    pub probability: Option<f64>,
    pub checkpoints: Vec<Checkpoint>,
}

impl EstimateTrace {
    pub fn running_std(&self) -> Vec<f64> {
        self.checkpoints.iter().map(|c| c.std).collect()
    }

    /// Standard deviation at the last checkpoint.
    pub fn final_std(&self) -> Option<f64> {
        self.checkpoints.last().map(|c| c.std)
    }

    /// `iteration,estimate,running_std` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("iteration,estimate,running_std\n");
        for c in &self.checkpoints {
            let _ = writeln!(s, "{},{},{}", c.iteration, c.estimate, c.std);
        }
        s
    }
}

/// Single-pass bivariate moments (Welford) for ratio estimators
/// `scale · mean(x) / mean(y)`.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct RatioMoments {
    n: u64,
    mean_x: f64,
    mean_y: f64,
    m2x: f64,
    m2y: f64,
    cxy: f64,
}

impl RatioMoments {
    pub fn push(&mut self, x: f64, y: f64) {
        self.n += 1;
        let n = self.n as f64;
        let dx = x - self.mean_x;
        let dy = y - self.mean_y;
        self.mean_x += dx / n;
        self.mean_y += dy / n;
        self.m2x += dx * (x - self.mean_x);
        self.m2y += dy * (y - self.mean_y);
        self.cxy += dx * (y - self.mean_y);
    }

    /// Delta-method standard deviation of `scale · mean(x)/mean(y)`.
    pub fn ratio_std(&self, scale: f64) -> f64 {
        if self.n < 2 || self.mean_y == 0.0 {
            return f64::NAN;
        }
        let n = self.n as f64;
        let r = self.mean_x / self.mean_y;
        let var_x = self.m2x / (n - 1.0);
        let var_y = self.m2y / (n - 1.0);
        let cov = self.cxy / (n - 1.0);
        let var = (var_x - 2.0 * r * cov + r * r * var_y).max(0.0) / (n * self.mean_y * self.mean_y);
        scale * var.sqrt()
    }
}

/// Powers of two up to `n`, plus `n` itself.
pub(crate) fn is_checkpoint(i: u64, n: u64) -> bool {
    i == n || i.is_power_of_two()
}
