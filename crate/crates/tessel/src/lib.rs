//! Standard-library companion to `tessel-core`: CSV/JSON I/O, benchmark
//! protocols, and the pieces shared by the `tessel` command-line tool.

pub mod bench;
pub mod io;
