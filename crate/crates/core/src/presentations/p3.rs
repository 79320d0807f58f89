//! Explicit 3x3 images of the four p = 3 generators, expanded at x = 1 + t.

use crate::algebra::{Mat3, Prime, TruncatedSeries};

use super::{GenId, RelationWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P3Generator {
    A1,
    A2,
    A3,
    A4,
}

impl P3Generator {
    pub const ALL: [P3Generator; 4] = [P3Generator::A1, P3Generator::A2, P3Generator::A3, P3Generator::A4];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// The four defining relations, as words in `a1..a4`.
pub fn p3_relations() -> Vec<Vec<(P3Generator, i8)>> {
    use P3Generator::*;
    vec![
        vec![(A1, 1), (A3, 1), (A1, 1), (A4, 1)],
        vec![(A1, 1), (A3, -1), (A2, 1), (A3, -1)],
        vec![(A1, 1), (A4, -1), (A2, -1), (A4, -1)],
        vec![(A2, 1), (A3, 1), (A2, 1), (A4, -1)],
    ]
}

/// Rewrites a word in `a1..a4` into lattice generators (alpha = 0, beta = 1):
/// a1 -> a0, a2 -> a2, a3 -> b3^-1, a4 -> b1^-1.
pub fn p3_rename_to_lattice(word: &[(P3Generator, i8)]) -> RelationWord {
    RelationWord(
        word.iter()
            .map(|&(g, e)| match g {
                P3Generator::A1 => (GenId::a(0), e),
                P3Generator::A2 => (GenId::a(2), e),
                P3Generator::A3 => (GenId::b(3), -e),
                P3Generator::A4 => (GenId::b(1), -e),
            })
            .collect(),
    )
}

/// Expressions of a1 and a4 in the pair (v0, v1) = (a2, a3):
/// a1 = a3 a2^-1 a3 and a4 = a2 a3 a2.
pub fn p3_two_generator_words() -> [(P3Generator, Vec<(P3Generator, i8)>); 2] {
    use P3Generator::*;
    [(A1, vec![(A3, 1), (A2, -1), (A3, 1)]), (A4, vec![(A2, 1), (A3, 1), (A2, 1)])]
}

/// Images of a1..a4 in GL_3(F_3[t]/(t^{i+1})).
pub fn p3_matrix_generators(precision: usize) -> [Mat3; 4] {
    let p = Prime::new(3).expect("3 is prime");
    let c = |v: i64| TruncatedSeries::constant(p, precision, v);
    let x = TruncatedSeries::new(p, precision, &[1, 1]);
    let mul = |a: &TruncatedSeries, b: &TruncatedSeries| a.try_mul(b).expect("same precision");
    let add = |a: &TruncatedSeries, b: &TruncatedSeries| a.try_add(b).expect("same precision");
    let sub = |a: &TruncatedSeries, b: &TruncatedSeries| a.try_sub(b).expect("same precision");
    let x2 = mul(&x, &x);
    let x3 = mul(&x2, &x);
    let ix = x.invert().expect("x is a unit");
    let d = add(&x2, &c(1));
    let id = d.invert().expect("x^2 + 1 is a unit mod 3");
    let over_d = |num: &TruncatedSeries| mul(num, &id);
    let two_x = x.scale(2);

    let a1 = [
        [ix.clone(), add(&c(1), &ix), sub(&sub(&c(1), &x), &ix)],
        [ix.neg(), ix.neg(), sub(&ix, &x)],
        [ix.neg(), sub(&c(1), &ix), add(&add(&x, &c(1)), &ix)],
    ];
    let a2 = [
        [ix.clone(), sub(&c(1), &x), add(&add(&x3, &x2), &x).neg()],
        [c(0), c(1), sub(&x, &x2)],
        [c(0), c(0), x.clone()],
    ];
    let a3 = [
        [c(0), c(0), d.clone()],
        [c(0), c(-1), add(&x, &c(1)).neg()],
        [id.clone(), over_d(&add(&x, &c(1))), sub(&over_d(&x), &c(1))],
    ];
    let a4 = [
        [sub(&over_d(&two_x), &c(1)), sub(&x.neg(), &id), sub(&add(&sub(&x2, &x), &c(1)), &over_d(&x))],
        [
            over_d(&add(&two_x, &c(1))),
            over_d(&sub(&two_x, &c(1))),
            sub(&over_d(&add(&two_x, &c(1))), &add(&x, &c(1))),
        ],
        [id.clone(), over_d(&two_x), sub(&id, &c(1))],
    ];
    [a1, a2, a3, a4].map(|e| Mat3::from_entries(e).expect("uniform entries"))
}

/// Evaluates a word in `a1..a4` on the matrix images.
pub fn evaluate_p3_word(gens: &[Mat3; 4], word: &[(P3Generator, i8)]) -> Mat3 {
    let first = &gens[0];
    let mut acc = Mat3::identity(first.modulus(), first.precision());
    for &(g, e) in word {
        let m = if e == 1 { gens[g.index()].clone() } else { gens[g.index()].inverse().expect("det is a unit") };
        acc = acc.try_mul(&m).expect("same precision");
    }
    acc
}
