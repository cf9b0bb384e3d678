//! Arithmetic graphs of recursive towers of curves over finite fields.
//!
//! A tower is given by a correspondence `F(P, Q) = 0` on the projective line. The
//! crate builds the directed graphs whose vertices are the points of `P^1` over
//! `F_{q^r}`, finds their regular cores and singular parts, counts paths and
//! cycles exactly, and evaluates the genus recursion and the asymptotic
//! invariants attached to the tower.

pub mod fields;
pub mod correspondence;
pub mod graph;
pub mod invariants;
pub mod cli;
