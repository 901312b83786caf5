pub mod frieze;
pub mod gen;
pub mod iterate;
pub mod lift;
pub mod verify;

use std::path::Path;

use pentagram_core::format::Instance;

use crate::error::CliError;

pub fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok(Instance::from_json(&text)?)
}
