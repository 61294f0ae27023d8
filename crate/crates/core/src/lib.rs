//! Unit groups of group algebras FG with G = A ⋊ C_q over finite fields of
//! odd characteristic p, where A is an abelian p-group and C_q = ⟨b⟩ acts
//! fixed-point-freely.

pub mod algebra;
pub mod arith;
pub mod cqstruct;
pub mod field;
pub mod group;
pub mod linalg;
pub mod unitgroup;
pub mod verifier;
