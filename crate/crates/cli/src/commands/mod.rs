mod gen;
mod h0;
mod separability;
mod toy;
mod track;

pub use gen::{cmd_gen, GenArgs};
pub use h0::{cmd_h0, H0Args};
pub use separability::{cmd_separability, SeparabilityArgs};
pub use toy::{cmd_toy, ToyArgs};
pub use track::{cmd_track, TrackArgs};

use anyhow::Result;
use phsep_core::geometry::{pairwise_distances, PointCloud};
use phsep_core::homology::{h0_persistence, normalize_diagram, NormalizedPersistences};

/// Distance matrix -> H0 bars -> normalized persistence times.
pub(crate) fn normalized_persistences(pc: &PointCloud) -> Result<NormalizedPersistences> {
    let dm = pairwise_distances(pc)?;
    let pd = h0_persistence(&dm)?;
    Ok(normalize_diagram(&pd)?)
}

/// Print a line to stdout, treating a closed pipe (e.g. `| head`) as success.
pub(crate) fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

pub(crate) fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}
