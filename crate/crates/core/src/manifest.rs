//! Run manifests written next to every command's data files.

use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Result;

/// First 8 bytes of the SHA-256 of `bytes`, as 16 hex digits.
pub fn content_digest(bytes: &[u8]) -> String {
    let h = Sha256::digest(bytes);
    let mut word = [0u8; 8];
    word.copy_from_slice(&h[..8]);
    format!("{:016x}", u64::from_be_bytes(word))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub seeds: Vec<u64>,
    pub input_digest: Option<String>,
    pub version: String,
    pub duration_secs: f64,
}

impl RunManifest {
    pub fn new(command: &str, args: Vec<String>) -> Self {
        RunManifest {
            command: command.to_string(),
            args,
            seeds: Vec::new(),
            input_digest: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_secs: 0.0,
        }
    }

    pub fn finish(&mut self, elapsed: Duration) {
        self.duration_secs = elapsed.as_secs_f64();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    /// Writes `manifest.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::write(dir.join("manifest.json"), self.to_json() + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(content_digest(b""), "e3b0c44298fc1c14");
        assert_ne!(content_digest(b"0 1\n"), content_digest(b"0 2\n"));
    }
}
