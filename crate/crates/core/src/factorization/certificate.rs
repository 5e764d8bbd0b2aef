//! The JSON certificate of a factorization.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Factor, Factorization};

#[derive(Debug, thiserror::Error)]
pub enum CertificateError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error("certificate has {labels} labels for {v} vertices")]
    Labels { labels: usize, v: usize },
}

/// Serialized form of a [`Factorization`]. Field order is fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub v: usize,
    pub lambda: u32,
    pub m: usize,
    pub labels: Vec<String>,
    pub factors: Vec<Vec<Vec<usize>>>,
    pub provenance: String,
}

impl Certificate {
    pub fn new(phi: &Factorization, labels: Vec<String>, provenance: impl Into<String>) -> Self {
        Certificate {
            v: phi.v(),
            lambda: phi.lambda(),
            m: phi.m(),
            labels,
            factors: phi
                .factors()
                .iter()
                .map(|f| f.components().to_vec())
                .collect(),
            provenance: provenance.into(),
        }
    }

    /// Vertices named by their own index.
    pub fn unlabeled(phi: &Factorization, provenance: impl Into<String>) -> Self {
        Self::new(
            phi,
            (0..phi.v()).map(|i| i.to_string()).collect(),
            provenance,
        )
    }

    /// The factorization claimed by the certificate; it is not verified here.
    pub fn factorization(&self) -> Result<Factorization, CertificateError> {
        if self.labels.len() != self.v {
            return Err(CertificateError::Labels {
                labels: self.labels.len(),
                v: self.v,
            });
        }
        let factors = self
            .factors
            .iter()
            .map(|comps| Factor::new(self.v, self.m, comps.clone()))
            .collect();
        Ok(Factorization::new(self.v, self.lambda, self.m, factors))
    }

    /// Compact JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<(), CertificateError> {
        w.write_all(self.to_json().as_bytes())?;
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<Self, CertificateError> {
        let mut s = String::new();
        r.read_to_string(&mut s)?;
        Self::from_json(&s)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), CertificateError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CertificateError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
