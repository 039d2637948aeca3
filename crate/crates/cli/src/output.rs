use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Cli;

/// Provenance attached to every artifact.
#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: Option<u64>,
    pub config_hash: String,
}

impl Meta {
    /// Hashes the parsed command line; the thread count is left out since it
    /// does not change any output.
    pub fn new(cli: &Cli, seed: Option<u64>) -> Result<Self> {
        let config = serde_json::to_vec(&cli.command)?;
        Ok(Self {
            tool: "detmoments",
            version: env!("CARGO_PKG_VERSION"),
            seed,
            config_hash: hex::encode(Sha256::digest(&config)),
        })
    }

    /// Comment lines for the top of a CSV file.
    pub fn csv_header(&self) -> String {
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_else(|| "none".into());
        format!(
            "# tool={} version={} seed={} config_sha256={}\n",
            self.tool, self.version, seed, self.config_hash
        )
    }
}

pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut w = open(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
