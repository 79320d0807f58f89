//! The p = 3 pipeline: truncated matrix images, their finite quotients, the
//! Cayley graphs on two generating sets and their spectra.

use serde::Serialize;

use crate::algebra::Mat3;
use crate::groups::{cayley_graph, closure, CayleyGraph, FiniteGroup, GroupError};
use crate::presentations::{evaluate_p3_word, p3_matrix_generators, p3_relations};
use crate::spectral::{adjacency_spectrum, change_of_generators_bound_holds, SpectralError};

/// Dense spectra are computed up to this level by default (2187 vertices).
pub const DEFAULT_SPECTRAL_MAX_LEVEL: usize = 4;
/// Every generator of the larger set is a word of at most this length in
/// the two-element set, and conversely.
pub const GENERATOR_WORD_LENGTH: usize = 3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExpanderError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralSummary {
    pub valency: usize,
    pub regular: bool,
    pub lambda2: f64,
    pub mu1: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub group_order: usize,
    /// Order as a power of 3.
    pub exponent: Option<u32>,
    pub relations_hold: bool,
    /// Orders of v0, v1, v1^-1 v0 and v1 v0.
    pub element_orders: [u64; 4],
    pub valency_two_generators: usize,
    pub valency_four_generators: usize,
    pub identity_dropped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_generators: Option<SpectralSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub four_generators: Option<SpectralSummary>,
    /// Comparison of mu1 between the generating sets in both directions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub change_of_generators_ok: Option<bool>,
}

/// A computed level: the group and both Cayley graphs.
pub struct Level {
    pub group: FiniteGroup,
    pub generators: [Mat3; 4],
    /// On {v0, v1} = {a2, a3} and their inverses.
    pub two: CayleyGraph,
    /// On {a1, a2, a3, a4} and their inverses.
    pub four: CayleyGraph,
}

pub fn build_level(level: usize, cap: usize) -> Result<Level, GroupError> {
    let generators = p3_matrix_generators(level);
    let group = closure(&generators, cap)?;
    let two = cayley_graph(&group, &[generators[1].clone(), generators[2].clone()])?;
    let four = cayley_graph(&group, &generators)?;
    Ok(Level { group, generators, two, four })
}

fn summary(c: &CayleyGraph) -> Result<SpectralSummary, SpectralError> {
    let r = adjacency_spectrum(&c.graph)?;
    Ok(SpectralSummary { valency: r.valency, regular: r.regular, lambda2: r.lambda2, mu1: r.mu1 })
}

pub fn level_report(level: usize, cap: usize, with_spectrum: bool) -> Result<LevelReport, ExpanderError> {
    let l = build_level(level, cap)?;
    let g = &l.group;
    let [_, v0, v1, _] = &l.generators;
    let v1_inv = v1.inverse().expect("generators are invertible");
    let words = [v0.clone(), v1.clone(), v1_inv.mul_unchecked(v0), v1.mul_unchecked(v0)];
    let element_orders = words.map(|w| g.element_order(g.id_of(&w).expect("product lies in the group")));
    let relations_hold = p3_relations().iter().all(|r| evaluate_p3_word(&l.generators, r).is_identity());
    let (two_generators, four_generators, change_of_generators_ok) = if with_spectrum {
        let a = summary(&l.two)?;
        let b = summary(&l.four)?;
        let (s_two, s_four) = (l.two.valency(), l.four.valency());
        let ok = change_of_generators_bound_holds(a.mu1, s_two, GENERATOR_WORD_LENGTH, b.mu1)
            && change_of_generators_bound_holds(b.mu1, s_four, GENERATOR_WORD_LENGTH, a.mu1);
        (Some(a), Some(b), Some(ok))
    } else {
        (None, None, None)
    };
    Ok(LevelReport {
        level,
        group_order: g.order(),
        exponent: g.p_exponent(),
        relations_hold,
        element_orders,
        valency_two_generators: l.two.valency(),
        valency_four_generators: l.four.valency(),
        identity_dropped: l.two.dropped_identity || l.four.dropped_identity,
        two_generators,
        four_generators,
        change_of_generators_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_CLOSURE_CAP;

    #[test]
    fn first_levels() {
        let r0 = level_report(0, DEFAULT_CLOSURE_CAP, true).unwrap();
        assert_eq!(r0.group_order, 3);
        assert!(r0.identity_dropped);
        assert_eq!(r0.element_orders, [1, 3, 3, 3]);
        assert!((r0.two_generators.as_ref().unwrap().mu1 - 3.0).abs() < 1e-9);
        let r1 = level_report(1, DEFAULT_CLOSURE_CAP, true).unwrap();
        assert_eq!(r1.group_order, 27);
        assert_eq!(r1.exponent, Some(3));
        assert!(r1.relations_hold);
        assert_eq!(r1.valency_four_generators, 8);
        assert_eq!(r1.change_of_generators_ok, Some(true));
    }
}
