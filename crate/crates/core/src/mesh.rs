use crate::error::{Error, Result};

/// Nodes t_i = t_max (i/n)^grading, i = 0..=n.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeMesh {
    t_max: f64,
    grading: f64,
    nodes: Vec<f64>,
}

impl TimeMesh {
    pub fn new(t_max: f64, n_steps: usize, grading: f64) -> Result<Self> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::Domain {
                what: "t_max",
                value: t_max,
                domain: "(0, inf)",
            });
        }
        if n_steps == 0 {
            return Err(Error::Domain {
                what: "n_steps",
                value: 0.0,
                domain: "[1, inf)",
            });
        }
        if !(grading >= 1.0) || !grading.is_finite() {
            return Err(Error::Domain {
                what: "grading",
                value: grading,
                domain: "[1, inf)",
            });
        }
        let n = n_steps as f64;
        let mut nodes: Vec<f64> = (0..=n_steps)
            .map(|i| t_max * (i as f64 / n).powf(grading))
            .collect();
        nodes[n_steps] = t_max;
        Ok(Self {
            t_max,
            grading,
            nodes,
        })
    }

    pub fn uniform(t_max: f64, n_steps: usize) -> Result<Self> {
        Self::new(t_max, n_steps, 1.0)
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn grading(&self) -> f64 {
        self.grading
    }

    pub fn n_steps(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn width(&self, cell: usize) -> f64 {
        self.nodes[cell + 1] - self.nodes[cell]
    }

    pub fn is_uniform(&self) -> bool {
        self.grading == 1.0
    }
}

/// Grading exponent 2/α clamped to [1, 4].
pub fn default_grading(alpha: f64) -> f64 {
    (2.0 / alpha).clamp(1.0, 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_graded() {
        let m = TimeMesh::new(2.0, 4, 2.0).unwrap();
        assert_eq!(m.nodes(), &[0.0, 0.125, 0.5, 1.125, 2.0]);
        assert!(TimeMesh::uniform(1.0, 8).unwrap().is_uniform());
        assert!(TimeMesh::new(1.0, 8, 0.5).is_err());
        assert!(TimeMesh::new(0.0, 8, 1.0).is_err());
    }

    #[test]
    fn grading_is_clamped() {
        assert_eq!(default_grading(0.5), 4.0);
        assert_eq!(default_grading(0.8), 2.5);
        assert_eq!(default_grading(0.1), 4.0);
    }
}
