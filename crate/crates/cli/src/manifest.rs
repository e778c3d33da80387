//! Run manifests: one JSON file naming the per-epoch snapshot files of a
//! tracked training run, with paths relative to the manifest location.

use crate::errors::CodedError;
use crate::snapshot::{read_labels, read_snapshot};
use anyhow::{Context, Result};
use phsep_core::geometry::PointCloud;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpochEntry {
    pub epoch: usize,
    pub path: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SnapshotManifest {
    pub run_id: String,
    pub epochs: Vec<EpochEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_path: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl SnapshotManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("opening {}", path.display()))?;
        let manifest: SnapshotManifest = serde_json::from_str(&text)
            .map_err(|e| CodedError::parse(format!("{}: {e}", path.display())))?;
        if manifest.epochs.is_empty() {
            return Err(CodedError::parse(format!(
                "{}: manifest lists no epochs",
                path.display()
            )));
        }
        if manifest.epochs.windows(2).any(|w| w[0].epoch >= w[1].epoch) {
            return Err(CodedError::parse(format!(
                "{}: epochs must be strictly increasing",
                path.display()
            )));
        }
        Ok(manifest)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }

    /// Loads every referenced snapshot, applying the shared label file when
    /// present and enforcing that all epochs agree on N and d.
    pub fn load_snapshots(&self, manifest_path: &Path) -> Result<Vec<(usize, PointCloud)>> {
        let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));
        let labels = match &self.label_path {
            Some(rel) => Some(read_labels(&base.join(rel))?),
            None => None,
        };
        let mut snapshots = Vec::with_capacity(self.epochs.len());
        let mut shape: Option<(usize, usize)> = None;
        for entry in &self.epochs {
            let path: PathBuf = base.join(&entry.path);
            let mut pc = read_snapshot(&path)?;
            if let Some(ls) = &labels {
                pc = PointCloud::with_labels(pc.coords().to_vec(), pc.dim(), ls.clone()).map_err(
                    |e| {
                        CodedError::shape_mismatch(format!(
                            "epoch {}: label file does not match snapshot: {e}",
                            entry.epoch
                        ))
                    },
                )?;
            }
            match shape {
                None => shape = Some((pc.len(), pc.dim())),
                Some((n, d)) if (pc.len(), pc.dim()) != (n, d) => {
                    return Err(CodedError::shape_mismatch(format!(
                        "epoch {}: snapshot is {}x{}, earlier epochs are {n}x{d}",
                        entry.epoch,
                        pc.len(),
                        pc.dim()
                    )));
                }
                _ => {}
            }
            snapshots.push((entry.epoch, pc));
        }
        Ok(snapshots)
    }
}
