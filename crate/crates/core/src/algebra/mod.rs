//! Symbolic replays of algebraic examples: the bicyclic monoid, the
//! additive naturals, and finite preordered groups.

pub mod bicyclic;
pub mod naturals;
pub mod ordgrp;
