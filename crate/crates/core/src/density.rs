//! Domination density ρ = γ/|V| in exact rationals, and the density form
//! of Vizing's inequality.

use serde::Serialize;

use crate::domination::{check_vizing_capped, gamma_number};
use crate::error::Result;
use crate::graph::{cartesian_product_capped, Graph, DEFAULT_MAX_VERTICES};
use crate::rational::{ratio, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Density {
    pub gamma: usize,
    pub order: usize,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub value: Rational,
}

impl Density {
    pub fn new(gamma: usize, order: usize) -> Self {
        Density {
            gamma,
            order,
            value: ratio(gamma, order),
        }
    }
}

pub fn rho(g: &Graph) -> Density {
    assert!(g.order() >= 1, "density of the empty graph");
    Density::new(gamma_number(g), g.order())
}

/// ρ(G□H) ≥ ρ(G)·ρ(H), decided exactly.
pub fn density_vizing_check(g: &Graph, h: &Graph) -> Result<bool> {
    density_vizing_check_capped(g, h, DEFAULT_MAX_VERTICES)
}

pub fn density_vizing_check_capped(g: &Graph, h: &Graph, max_vertices: usize) -> Result<bool> {
    let product = cartesian_product_capped(g, h, max_vertices)?;
    Ok(rho(&product.graph).value >= rho(g).value * rho(h).value)
}

/// Both forms of the inequality for one pair; they must agree.
pub fn both_forms(g: &Graph, h: &Graph, max_vertices: usize) -> Result<(bool, bool)> {
    let integer = check_vizing_capped(g, h, max_vertices)?.holds;
    let density = density_vizing_check_capped(g, h, max_vertices)?;
    Ok((integer, density))
}
