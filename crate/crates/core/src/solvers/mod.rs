//! Exact combinatorial solvers: maximum clique, clique counting,
//! independence number, maximum balanced biclique, clique weight products.

mod biclique;
mod clique;

pub use biclique::{
    max_biclique, max_biclique_budget, max_biclique_bruteforce, BicliqueResult,
    DEFAULT_BICLIQUE_BUDGET,
};
pub use clique::{
    clique_weight_product, count_cliques, independence_number, max_clique, max_clique_budget,
    max_clique_bruteforce, CliqueWitness, MaxCliqueResult, DEFAULT_NODE_BUDGET,
};
