//! Coefficient tensor files.
//!
//! A JSON object with `dims`, `degrees` and `coeffs` (row-major, last
//! dimension fastest) plus an optional `eps`, the caller's bound on the
//! distance between the tensor and the function it stands for. Numbers are
//! written in shortest round-trip form, so values survive a write/read cycle
//! bit for bit.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use chebproxy_core::ChebPoly;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorFile {
    pub dims: usize,
    pub degrees: Vec<usize>,
    pub coeffs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
}

impl TensorFile {
    pub fn from_poly(p: &ChebPoly, eps: Option<f64>) -> Self {
        TensorFile {
            dims: p.dims(),
            degrees: p.degrees().to_vec(),
            coeffs: p.coeffs().to_vec(),
            eps,
        }
    }

    pub fn to_poly(&self) -> Result<ChebPoly> {
        if self.dims != self.degrees.len() {
            bail!(
                "dims is {} but {} degrees are given",
                self.dims,
                self.degrees.len()
            );
        }
        if let Some(e) = self.eps {
            if !(e >= 0.0 && e.is_finite()) {
                bail!("eps must be finite and nonnegative, got {e}");
            }
        }
        Ok(ChebPoly::new(self.degrees.clone(), self.coeffs.clone())?)
    }

    pub fn eps(&self) -> f64 {
        self.eps.unwrap_or(0.0)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t: TensorFile = serde_json::from_str(text).context("malformed coefficient tensor")?;
        t.to_poly()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tensor files always serialize")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).with_context(|| format!("writing {}", path.display()))
    }
}
