//! Serializable summaries of ideals for reports.

use serde::Serialize;

use crate::hilbert::HVector;
use crate::ideal::Ideal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealSummary {
    pub generators: Vec<String>,
    pub gb_size: usize,
    pub krull_dim: usize,
    /// `None` for the unit ideal.
    pub degree: Option<i64>,
    pub h_vector: Option<HVector>,
}

impl IdealSummary {
    pub fn of(i: &Ideal) -> Self {
        let unit = i.is_unit();
        IdealSummary {
            generators: i.gb().iter().map(|g| g.to_string()).collect(),
            gb_size: i.gb().len(),
            krull_dim: i.krull_dim(),
            degree: if unit { None } else { i.degree().ok() },
            h_vector: if unit { None } else { i.h_vector().ok() },
        }
    }

    /// One-line description used in text reports.
    pub fn brief(&self) -> String {
        match (&self.degree, &self.h_vector) {
            (Some(d), Some(h)) => format!("degree {d}, dim {}, h-vector {h}", self.krull_dim),
            _ => "unit ideal (empty scheme)".to_string(),
        }
    }
}
