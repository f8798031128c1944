use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use cvop::sweep::format_g;
use cvop::TwoModeState;

use crate::error::CliError;

/// Writes `contents` to `dir/name` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let io = |e: std::io::Error| CliError::usage(format!("cannot write to {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    let target = dir.join(name);
    tmp.persist(&target).map_err(|e| io(e.error))?;
    Ok(target)
}

/// `n_A,n_B,re,im` rows for every nonzero amplitude.
pub fn state_csv(state: &TwoModeState) -> String {
    let mut out = String::from("n_A,n_B,re,im\n");
    let c = state.coeffs();
    for n in 0..c.nrows() {
        for m in 0..c.ncols() {
            let z = c[(n, m)];
            if z.re != 0.0 || z.im != 0.0 {
                out.push_str(&format!("{n},{m},{},{}\n", format_g(z.re), format_g(z.im)));
            }
        }
    }
    out
}
