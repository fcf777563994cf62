// natzh - Rust library for exact SAT and #SAT solving by rewriting
//         NatZH tensor-network diagrams
// Copyright (C) 2026 - the natzh developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Exact SAT and #SAT solving by diagram rewriting.
//!
//! A CNF/XOR formula becomes a closed tensor-network diagram built from
//! Z-spiders (variables), H(0) boxes (OR constraints) and X-spiders (XOR
//! constraints), with negation carried on wires. Interpreted over the
//! natural numbers the diagram's value is the model count; over the
//! booleans it is the satisfiability verdict, and the two views are
//! linked by the projection homomorphism. Solving is a sequence of sound
//! local rewrites that removes every wire and leaves the answer in the
//! scalar; a brute-force contraction doubles as fallback evaluator and
//! as the correctness oracle every rule is tested against.
//!
//! - [`semiring`]: the two evaluation carriers and the projection.
//! - [`diagram`]: the diagram data model, validation, reference
//!   contraction, and normal forms.
//! - [`cnf`]: formulas, DIMACS with an XOR extension, the encoder, and
//!   independent classical oracles.
//! - [`rewrite`]: the rule catalogue with matchers and the randomized
//!   soundness harness.
//! - [`strategy`]: end-to-end solvers that schedule rewrites to full
//!   simplification, plus the dispatcher.

pub mod cnf;
pub mod diagram;
pub mod rewrite;
pub mod semiring;
pub mod strategy;
