//! Computations with graded Lie algebras of maximal class over prime fields.

pub mod arith;
pub mod cli;
pub mod divided_powers;
pub mod exceptional;
pub mod maxclass;
pub mod polycheck;
