//! Support library for the `gcat` binary: the bundled example corpus.

pub mod corpus;
