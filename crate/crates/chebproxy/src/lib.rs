//! Command-line front end, file formats, reference oracles and the
//! verification suite for `chebproxy-core`.

pub mod bench;
pub mod oracle;
pub mod parallel;
pub mod report;
pub mod systems;
pub mod tau;
pub mod tensor_file;
pub mod verify;
