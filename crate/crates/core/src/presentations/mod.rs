//! Square-complex presentations over F_{p^2} and the p = 3 matrix images.
//!
//! Generators come in two families `a_k` (k in K) and `b_j` (j in J), indexed
//! by residues mod p^2 - 1. Each `(k, j)` yields one square relation; the
//! involutions `a_{k+mu} = a_k^{-1}` let every word be folded onto indices
//! below `mu`.

mod p3;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, DiscreteLogTable, Prime, QuadExtScalar, QuadField};

pub use p3::{
    evaluate_p3_word, p3_matrix_generators, p3_relations, p3_rename_to_lattice, p3_two_generator_words, P3Generator,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("alpha and beta must differ mod p - 1 (got {alpha}, {beta})")]
    DegenerateClasses { alpha: u32, beta: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("cannot parse relation word: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

/// A generator `a_k` or `b_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenId {
    pub family: Family,
    pub index: u32,
}

impl GenId {
    pub fn a(index: u32) -> Self {
        GenId { family: Family::A, index }
    }

    pub fn b(index: u32) -> Self {
        GenId { family: Family::B, index }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::A => 'a',
            Family::B => 'b',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// A word in generators with exponents +1 or -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationWord(pub Vec<(GenId, i8)>);

impl RelationWord {
    pub fn inverse(&self) -> Self {
        RelationWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rewrites `x_{k+mu}` as `x_k^{-1}` so every index is below `mu`.
    pub fn folded(&self, mu: u32) -> Self {
        RelationWord(
            self.0
                .iter()
                .map(|&(g, e)| if g.index >= mu { (GenId { index: g.index - mu, ..g }, -e) } else { (g, e) })
                .collect(),
        )
    }

    /// Least representative among all cyclic rotations of the word and its inverse.
    pub fn cyclic_canonical(&self) -> Self {
        let n = self.0.len();
        let mut best: Option<RelationWord> = None;
        for w in [self.clone(), self.inverse()] {
            for r in 0..n.max(1) {
                let rot = RelationWord(w.0[r..].iter().chain(&w.0[..r]).copied().collect());
                if best.as_ref().is_none_or(|b| cmp_words(&rot, b) == Ordering::Less) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_else(|| self.clone())
    }

    /// Parses words like `a0 b6 a0^-1 b6^-1`.
    pub fn parse(s: &str) -> Result<Self, PresentationError> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, "-1")) => (n, -1),
                Some((n, "1")) => (n, 1),
                Some(_) => return Err(PresentationError::Parse(tok.to_string())),
                None => (tok, 1),
            };
            let family = match name.chars().next() {
                Some('a') => Family::A,
                Some('b') => Family::B,
                _ => return Err(PresentationError::Parse(tok.to_string())),
            };
            let index = name[1..].parse().map_err(|_| PresentationError::Parse(tok.to_string()))?;
            out.push((GenId { family, index }, exp));
        }
        Ok(RelationWord(out))
    }
}

// positive exponents sort first so canonical words start with a_k rather than a_k^{-1} where possible
fn cmp_words(a: &RelationWord, b: &RelationWord) -> Ordering {
    let key = |&(g, e): &(GenId, i8)| (g.family, g.index, -e);
    a.0.iter().map(key).cmp(b.0.iter().map(key))
}

impl fmt::Display for RelationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^-1") }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for RelationWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RelationWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        RelationWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Coordinates of the chosen generator: `delta = a + b x` in F_p[x]/(x^2 - c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaCoords {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticePresentation {
    pub p: Prime,
    pub alpha: u32,
    pub beta: u32,
    pub delta: DeltaCoords,
    pub mu: u32,
    pub k_set: Vec<u32>,
    pub j_set: Vec<u32>,
    /// One square relation per (k, j) in K x J, in that order.
    pub square_relations: Vec<RelationWord>,
    /// `x_k x_{k+mu}` for each generator with index below `mu`.
    pub involutions: Vec<RelationWord>,
}

/// The square data for one (k, j): returns (l(k, j), i(k, j)).
pub fn square_corner(table: &DiscreteLogTable, p: u32, k: u32, j: u32) -> (u32, u32) {
    let n = (p * p - 1) as i64;
    let delta = table.delta();
    let one = delta.field().one();
    let x = table.log(one + delta.pow_signed(j as i64 - k as i64)).expect("1 + delta^(j-k) is non-zero");
    let y = table.log(one + delta.pow_signed(k as i64 - j as i64)).expect("1 + delta^(k-j) is non-zero");
    let l = (k as i64 - x as i64 * (p as i64 - 1)).rem_euclid(n) as u32;
    let i = (j as i64 - y as i64 * (p as i64 - 1)).rem_euclid(n) as u32;
    (l, i)
}

pub fn build_presentation(
    p: Prime,
    alpha: u32,
    beta: u32,
    delta: QuadExtScalar,
) -> Result<LatticePresentation, PresentationError> {
    let pv = p.get();
    if pv == 2 {
        return Err(AlgebraError::EvenCharacteristic.into());
    }
    let (alpha, beta) = (alpha % (pv - 1), beta % (pv - 1));
    if alpha == beta {
        return Err(PresentationError::DegenerateClasses { alpha, beta });
    }
    if delta.field().p != p {
        return Err(AlgebraError::ModulusMismatch.into());
    }
    let table = DiscreteLogTable::new(delta)?;
    let n = pv * pv - 1;
    let mu = n / 2;
    let k_set: Vec<u32> = (0..n).filter(|k| k % (pv - 1) == alpha).collect();
    let j_set: Vec<u32> = (0..n).filter(|j| j % (pv - 1) == beta).collect();

    let mut square_relations = Vec::with_capacity(k_set.len() * j_set.len());
    for &k in &k_set {
        for &j in &j_set {
            let (l, i) = square_corner(&table, pv, k, j);
            square_relations.push(RelationWord(vec![(GenId::a(k), 1), (GenId::b(j), 1), (GenId::a(l), -1), (GenId::b(i), -1)]));
        }
    }
    let mut involutions = Vec::new();
    for &k in k_set.iter().filter(|&&k| k < mu) {
        involutions.push(RelationWord(vec![(GenId::a(k), 1), (GenId::a(k + mu), 1)]));
    }
    for &j in j_set.iter().filter(|&&j| j < mu) {
        involutions.push(RelationWord(vec![(GenId::b(j), 1), (GenId::b(j + mu), 1)]));
    }
    let (a, b) = delta.coords();
    Ok(LatticePresentation {
        p,
        alpha,
        beta,
        delta: DeltaCoords { a, b, c: delta.field().c },
        mu,
        k_set,
        j_set,
        square_relations,
        involutions,
    })
}

impl LatticePresentation {
    /// Square relations folded onto indices below `mu`, deduplicated up to
    /// rotation and inversion, in canonical form and sorted.
    pub fn folded_relations(&self) -> Vec<RelationWord> {
        fold_and_dedup(&self.square_relations, self.mu)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&FoldedView { presentation: self, folded: self.folded_relations() })
            .expect("presentation serialises")
    }
}

#[derive(Serialize)]
struct FoldedView<'a> {
    #[serde(flatten)]
    presentation: &'a LatticePresentation,
    folded: Vec<RelationWord>,
}

pub fn fold_and_dedup(words: &[RelationWord], mu: u32) -> Vec<RelationWord> {
    let set: BTreeSet<RelationWord> = words.iter().map(|w| w.folded(mu).cyclic_canonical()).collect();
    let mut out: Vec<RelationWord> = set.into_iter().collect();
    out.sort_by(cmp_words);
    out
}

/// Tries every generator of F_{p^2}^* (standard model) in scan order and
/// returns the first whose folded relations equal `target` up to rotation
/// and inversion of each word.
pub fn search_delta_matching(
    p: Prime,
    alpha: u32,
    beta: u32,
    target: &[RelationWord],
) -> Result<Option<QuadExtScalar>, PresentationError> {
    if target.is_empty() {
        return Ok(None);
    }
    let field = QuadField::standard(p)?;
    let mu = (p.get() * p.get() - 1) / 2;
    let want = fold_and_dedup(target, mu);
    for delta in crate::algebra::generators(field) {
        let pres = build_presentation(p, alpha, beta, delta)?;
        if pres.folded_relations() == want {
            return Ok(Some(delta));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_generator_delta;
    use proptest::prelude::*;

    fn pres(p: u32, alpha: u32, beta: u32) -> LatticePresentation {
        let pr = Prime::new(p).unwrap();
        let f = QuadField::standard(pr).unwrap();
        build_presentation(pr, alpha, beta, find_generator_delta(f)).unwrap()
    }

    #[test]
    fn classes_for_p5() {
        let pr = pres(5, 0, 2);
        assert_eq!(pr.k_set, vec![0, 4, 8, 12, 16, 20]);
        assert_eq!(pr.j_set, vec![2, 6, 10, 14, 18, 22]);
        assert_eq!(pr.mu, 12);
        assert_eq!(pr.square_relations.len(), 36);
    }

    #[test]
    fn folded_counts() {
        for (p, a, b) in [(3, 0, 1), (5, 0, 2), (5, 1, 3), (7, 0, 3), (7, 1, 2), (11, 0, 5)] {
            let pr = pres(p, a, b);
            assert_eq!(pr.folded_relations().len() as u32, (p + 1) * (p + 1) / 4, "p={p} alpha={a} beta={b}");
        }
    }

    #[test]
    fn equal_classes_rejected() {
        let pr = Prime::new(5).unwrap();
        let d = find_generator_delta(QuadField::standard(pr).unwrap());
        assert!(matches!(build_presentation(pr, 1, 5, d), Err(PresentationError::DegenerateClasses { .. })));
    }

    #[test]
    fn non_generator_rejected() {
        let pr = Prime::new(5).unwrap();
        let one = QuadField::standard(pr).unwrap().one();
        assert_eq!(
            build_presentation(pr, 0, 2, one).err(),
            Some(PresentationError::Algebra(AlgebraError::NotAGenerator))
        );
    }

    #[test]
    fn empty_target_gives_none() {
        assert_eq!(search_delta_matching(Prime::new(5).unwrap(), 0, 2, &[]).unwrap(), None);
    }

    #[test]
    fn parse_display_roundtrip() {
        let w = RelationWord::parse("a0 b6 a0^-1 b6^-1").unwrap();
        assert_eq!(w.to_string(), "a0 b6 a0^-1 b6^-1");
        assert!(RelationWord::parse("c1").is_err());
        assert!(RelationWord::parse("a1^2").is_err());
    }

    #[test]
    fn json_roundtrip_keeps_words() {
        let pr = pres(5, 0, 2);
        let v: serde_json::Value = serde_json::from_str(&pr.to_json()).unwrap();
        assert_eq!(v["folded"].as_array().unwrap().len(), 9);
        assert_eq!(v["k_set"][1], 4);
        let back: LatticePresentation = serde_json::from_str(&pr.to_json()).unwrap();
        assert_eq!(back.square_relations, pr.square_relations);
    }

    proptest! {
        #[test]
        fn corners_stay_in_classes(pi in 0usize..4, delta_pick in 0usize..64, ab in (0u32..10, 0u32..10)) {
            let p = [3u32, 5, 7, 11][pi];
            let (alpha, beta) = (ab.0 % (p - 1), ab.1 % (p - 1));
            prop_assume!(alpha != beta);
            let pr = Prime::new(p).unwrap();
            let gens = crate::algebra::generators(QuadField::standard(pr).unwrap());
            let delta = gens[delta_pick % gens.len()];
            let table = DiscreteLogTable::new(delta).unwrap();
            let pres = build_presentation(pr, alpha, beta, delta).unwrap();
            for &j in &pres.j_set {
                let mut image = BTreeSet::new();
                for &k in &pres.k_set {
                    let (l, i) = square_corner(&table, p, k, j);
                    prop_assert!(pres.k_set.contains(&l));
                    prop_assert!(pres.j_set.contains(&i));
                    image.insert(l);
                }
                prop_assert_eq!(image.len(), pres.k_set.len());
            }
            let folded = pres.folded_relations();
            prop_assert_eq!(fold_and_dedup(&folded, pres.mu), folded);
        }
    }
}
