//! File formats, bundled corpus, random generation and verification suites
//! for the `tangle` command line tool.

pub mod corpus;
pub mod format;
pub mod generate;
pub mod report;
pub mod suites;
