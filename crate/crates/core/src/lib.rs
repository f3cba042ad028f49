//! Expert search over a fused coauthorship and profile network.
//!
//! The pipeline loads a bibliographic corpus ([`corpus`]), links authors to
//! profiles by edit distance ([`name_match`]), builds a weighted social graph
//! ([`graph`]), measures per-category centralities ([`centrality`]), learns a
//! C4.5 expertise model and ranks people with vote feedback ([`ranker`]).
//! Free-text queries are mapped to categories by [`categorize`], and
//! [`service`] exposes everything over HTTP.

pub mod categorize;
pub mod centrality;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod index;
pub mod name_match;
pub mod ranker;
pub mod service;

pub use error::{Error, Result};
