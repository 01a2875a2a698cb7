//! Artifact emission: deterministic file names under the output directory.

use std::fs;
use std::path::Path;

use decaycheck::error::{Error, Result};
use decaycheck::scenario::RunResult;

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

/// Write trajectory/snapshot/bound CSVs; returns the artifact names for
/// the report (the report itself is written by the caller afterwards).
pub fn emit_outputs(result: &RunResult, out_dir: &Path) -> Result<Vec<String>> {
    fs::create_dir_all(out_dir)
        .map_err(|e| Error::Config(format!("cannot create {}: {e}", out_dir.display())))?;
    let mut artifacts = Vec::new();

    if let Some(traj) = &result.trajectory {
        write(&out_dir.join("trajectory.csv"), &traj.to_csv())?;
        artifacts.push("trajectory.csv".to_string());
    }
    if let Some(traj) = &result.s_trajectory {
        write(&out_dir.join("s_trajectory.csv"), &traj.to_csv())?;
        artifacts.push("s_trajectory.csv".to_string());
    }
    if let Some(bound) = &result.bound {
        let mut csv = String::from("t,bound\n");
        for i in 0..bound.curve.len() {
            csv.push_str(&format!("{},{}\n", bound.curve.times()[i], bound.curve.value(i)));
        }
        write(&out_dir.join("bound.csv"), &csv)?;
        artifacts.push("bound.csv".to_string());
    }
    if !result.snapshots.is_empty() {
        let snap_dir = out_dir.join("snapshots");
        fs::create_dir_all(&snap_dir)
            .map_err(|e| Error::Config(format!("cannot create {}: {e}", snap_dir.display())))?;
        for (i, snap) in result.snapshots.iter().enumerate() {
            let mut csv = format!("# time={}\nx,u\n", snap.time);
            for (x, u) in snap.x.iter().zip(&snap.u) {
                csv.push_str(&format!("{x},{u}\n"));
            }
            let name = format!("snapshots/snap_{i:03}.csv");
            write(&out_dir.join(&name), &csv)?;
            artifacts.push(name);
        }
    }
    Ok(artifacts)
}
