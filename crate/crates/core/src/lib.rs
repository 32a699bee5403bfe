//! Exact computation of defining relations of Nichols algebras of diagonal
//! type.
//!
//! A diagonal braiding is a matrix of nonzero scalars `(q_ij)` acting on
//! basis tensors by `sigma(v_i (x) v_j) = q_ij v_j (x) v_i`. The braid group
//! acts on tensor powers through this rule, and the defining ideal of the
//! Nichols algebra is cut out degree by degree by the kernels of the
//! symmetrization operators `S_n`. This crate materializes elements of the
//! braid group algebra as exact sparse matrices on anagram classes (spans of
//! tensor words with a fixed multidegree), solves the resulting linear
//! systems over `Q` or `Q(q)` without any floating point, and implements the
//! full-twist/level pipeline that constructs primitive relations such as the
//! quantized Serre relations from scratch.
//!
//! Modules:
//! - [`scalar`]: rationals, Laurent polynomials in `q`, reduced rational
//!   functions, and the scalar expression grammar.
//! - [`braidgrp`]: permutations, reduced words, the Matsumoto section,
//!   shuffles, Dynkin operators and the named braid group algebra elements.
//! - [`tensorspace`]: braiding specifications, tensor words, anagram
//!   classes, and materialization of operators as exact sparse matrices.
//! - [`exactla`]: exact kernel/rank/solve and the cycle-structured inverse
//!   of `I - (monomial matrix)`.
//! - [`nichols`]: coproduct components, antipode, Dynkin map, convolution
//!   identities, level classification, relation finding, primitivity
//!   certification, skew-derivations and graded dimensions.
//! - [`cli`]: spec-file and element parsing plus the command line driver.

pub mod braidgrp;
pub mod cli;
pub mod exactla;
pub mod nichols;
pub mod scalar;
pub mod tensorspace;
