//! Shared helpers for the integration and acceptance suites.

#![allow(dead_code)]

pub mod oracle;
pub mod pinned;
