//! The joint restriction map `res*: H*(D_m) -> H*(E1) + H*(E2)` for
//! `m = 0 mod 4`, together with computational verification that it is
//! injective in each degree (detection) and of the supporting linear
//! independence statement in `F2[a,b]`.

use serde::Serialize;

use crate::dihedral::KleinSubgroup;
use crate::ring_f2::{CohomClass, Monomial, RingPresentation};
use crate::{Error, Result};

/// An element of `H*(E1) = F2[v1,v2]` or `H*(E2) = F2[u1,u2]`, wrapping a
/// polynomial ring class; only the generator names differ between the two
/// subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleinClass {
    subgroup: KleinSubgroup,
    class: CohomClass,
}

impl KleinClass {
    pub fn new(subgroup: KleinSubgroup, class: CohomClass) -> Result<Self> {
        if class.presentation() != RingPresentation::TwoModFour {
            return Err(Error::PresentationMismatch {
                left: RingPresentation::TwoModFour,
                right: class.presentation(),
            });
        }
        Ok(KleinClass { subgroup, class })
    }

    pub fn subgroup(&self) -> KleinSubgroup {
        self.subgroup
    }

    pub fn class(&self) -> &CohomClass {
        &self.class
    }
}

impl std::fmt::Display for KleinClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rendered = self.class.to_string();
        match self.subgroup {
            KleinSubgroup::E1 => f.write_str(&rendered),
            KleinSubgroup::E2 => f.write_str(&rendered.replace("v1", "u1").replace("v2", "u2")),
        }
    }
}

struct GeneratorImages {
    x: CohomClass,
    y: CohomClass,
    w: CohomClass,
}

/// Images under `res*`: `x -> (v1, u1)`, `y -> (0, u1)`,
/// `w -> (v2^2 + v1 v2, u2^2 + u1 u2)`.
fn generator_images(which: KleinSubgroup, trunc: u32) -> GeneratorImages {
    let kind = RingPresentation::TwoModFour;
    let gen1 = CohomClass::from_term(kind, trunc, Monomial::TwoModFour { a: 1, b: 0 })
        .expect("degree-1 term");
    let w = CohomClass::from_terms(
        kind,
        trunc,
        [
            Monomial::TwoModFour { a: 0, b: 2 },
            Monomial::TwoModFour { a: 1, b: 1 },
        ],
    )
    .expect("degree-2 terms");
    let y = match which {
        KleinSubgroup::E1 => CohomClass::zero(kind, trunc),
        KleinSubgroup::E2 => gen1.clone(),
    };
    GeneratorImages { x: gen1, y, w }
}

/// Ring-homomorphic image of a class in the `m = 0 mod 4` presentation
/// under restriction to `E1` or `E2`, computed term by term.
pub fn restrict_class(cls: &CohomClass, which: KleinSubgroup) -> Result<KleinClass> {
    if cls.presentation() != RingPresentation::ZeroModFour {
        return Err(Error::PresentationMismatch {
            left: RingPresentation::ZeroModFour,
            right: cls.presentation(),
        });
    }
    let trunc = cls.truncation_degree();
    let imgs = generator_images(which, trunc);
    // The relation y^2 = xy maps to equal images on both subgroups
    // (0 = 0 on E1, u1^2 = u1^2 on E2), so the map is well defined on the
    // quotient; checked explicitly in the tests.
    let mut out = CohomClass::zero(RingPresentation::TwoModFour, trunc);
    for t in cls.terms() {
        let Monomial::ZeroModFour { x, y, w } = t else {
            unreachable!("presentation checked above");
        };
        let image = imgs
            .x
            .pow(i64::from(x))?
            .mul(&imgs.y.pow(i64::from(y))?)?
            .mul(&imgs.w.pow(i64::from(w))?)?;
        out = out.add(&image)?;
    }
    KleinClass::new(which, out)
}

/// Rank over F2 of a set of bit rows, by elimination on the leading bit.
pub(crate) fn f2_rank(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for col in (0..128).rev() {
        let mask = 1u128 << col;
        let Some(pivot_at) = (rank..rows.len()).find(|&i| rows[i] & mask != 0) else {
            continue;
        };
        rows.swap(rank, pivot_at);
        let pivot = rows[rank];
        for row in rows.iter_mut().skip(rank + 1) {
            if *row & mask != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of `H^d(D_m)` for `m = 0 mod 4`: the normal-form basis
/// `{x^i w^k : i + 2k = d}` plus `{y^j w^k : j >= 1, j + 2k = d}` has
/// `d + 1` elements.
pub fn cohomology_dim(d: u32) -> u32 {
    d + 1
}

/// The normal-form monomial basis of `H^d(D_m)`.
pub fn degree_basis(d: u32) -> Vec<Monomial> {
    let mut basis = Vec::new();
    for k in 0..=d / 2 {
        basis.push(Monomial::ZeroModFour {
            x: d - 2 * k,
            y: 0,
            w: k,
        });
    }
    for k in 0..=(d.saturating_sub(1)) / 2 {
        if d >= 1 + 2 * k {
            basis.push(Monomial::ZeroModFour {
                x: 0,
                y: d - 2 * k,
                w: k,
            });
        }
    }
    basis
}

/// Coefficient bit row of the degree-`d` part of a Klein class, indexed by
/// the exponent of the first generator.
fn homogeneous_bits(cls: &CohomClass, d: u32) -> u128 {
    debug_assert!(d < 64);
    let mut bits = 0u128;
    for t in cls.terms() {
        let Monomial::TwoModFour { a, b } = t else {
            unreachable!("Klein classes live in the polynomial ring")
        };
        if a + b == d {
            bits |= 1u128 << a;
        }
    }
    bits
}

/// Verify that the restriction map is injective on `H^d(D_m)`: the images
/// of the `d + 1` basis monomials in `H^d(E1) + H^d(E2)` must have full
/// rank over F2.
pub fn verify_detection(d: u32) -> bool {
    if d > 62 {
        return false; // row encoding uses 2(d+1) bits
    }
    let basis = degree_basis(d);
    let rows: Vec<u128> = basis
        .iter()
        .map(|&mono| {
            let cls = CohomClass::from_term(RingPresentation::ZeroModFour, d, mono)
                .expect("basis monomials have degree d");
            let e1 = restrict_class(&cls, KleinSubgroup::E1).expect("presentation is 0 mod 4");
            let e2 = restrict_class(&cls, KleinSubgroup::E2).expect("presentation is 0 mod 4");
            homogeneous_bits(e1.class(), d) | homogeneous_bits(e2.class(), d) << (d + 1)
        })
        .collect();
    f2_rank(rows) == basis.len()
}

/// Verify the independence of `S_d = {a^i b^j (a+b)^j : i + 2j = d}` in
/// `F2[a,b]`: the coefficient matrix must have rank `|P_d| = floor(d/2)+1`.
pub fn verify_independence_lemma(d: u32) -> bool {
    if d > 62 {
        return false;
    }
    let kind = RingPresentation::TwoModFour;
    let a = CohomClass::from_term(kind, d, Monomial::TwoModFour { a: 1, b: 0 }).expect("a");
    let b_plus_ab = CohomClass::from_terms(
        kind,
        d,
        [
            Monomial::TwoModFour { a: 1, b: 1 },
            Monomial::TwoModFour { a: 0, b: 2 },
        ],
    )
    .expect("b(a+b)");
    let expected = d / 2 + 1;
    let rows: Vec<u128> = (0..=d / 2)
        .map(|j| {
            let i = d - 2 * j;
            let poly = a
                .pow(i64::from(i))
                .and_then(|p| p.mul(&b_plus_ab.pow(i64::from(j))?))
                .expect("bounded degrees");
            homogeneous_bits(&poly, d)
        })
        .collect();
    f2_rank(rows) == expected as usize
}

/// One row of the per-degree detection table.
#[derive(Debug, Clone, Serialize)]
pub struct DetectionRow {
    pub degree: u32,
    pub dim: u32,
    pub rank: u32,
    pub ok: bool,
}

pub fn detection_table(max_degree: u32) -> Vec<DetectionRow> {
    (0..=max_degree)
        .map(|d| {
            let basis = degree_basis(d);
            let rows: Vec<u128> = basis
                .iter()
                .map(|&mono| {
                    let cls = CohomClass::from_term(RingPresentation::ZeroModFour, d, mono)
                        .expect("basis monomials have degree d");
                    let e1 = restrict_class(&cls, KleinSubgroup::E1).expect("0 mod 4");
                    let e2 = restrict_class(&cls, KleinSubgroup::E2).expect("0 mod 4");
                    homogeneous_bits(e1.class(), d) | homogeneous_bits(e2.class(), d) << (d + 1)
                })
                .collect();
            let rank = f2_rank(rows) as u32;
            DetectionRow {
                degree: d,
                dim: basis.len() as u32,
                rank,
                ok: rank == basis.len() as u32,
            }
        })
        .collect()
}

/// One row of the independence-lemma table.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaRow {
    pub degree: u32,
    pub set_size: u32,
    pub rank: u32,
    pub ok: bool,
}

pub fn lemma_table(max_degree: u32) -> Vec<LemmaRow> {
    (0..=max_degree)
        .map(|d| {
            let kind = RingPresentation::TwoModFour;
            let a = CohomClass::from_term(kind, d, Monomial::TwoModFour { a: 1, b: 0 }).unwrap();
            let b_plus_ab = CohomClass::from_terms(
                kind,
                d,
                [
                    Monomial::TwoModFour { a: 1, b: 1 },
                    Monomial::TwoModFour { a: 0, b: 2 },
                ],
            )
            .unwrap();
            let rows: Vec<u128> = (0..=d / 2)
                .map(|j| {
                    let poly = a
                        .pow(i64::from(d - 2 * j))
                        .and_then(|p| p.mul(&b_plus_ab.pow(i64::from(j))?))
                        .unwrap();
                    homogeneous_bits(&poly, d)
                })
                .collect();
            let set_size = d / 2 + 1;
            let rank = f2_rank(rows) as u32;
            LemmaRow {
                degree: d,
                set_size,
                rank,
                ok: rank == set_size,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmf(s: &str, trunc: u32) -> CohomClass {
        CohomClass::parse_text(RingPresentation::ZeroModFour, trunc, s).unwrap()
    }

    fn tmf(s: &str, trunc: u32) -> CohomClass {
        CohomClass::parse_text(RingPresentation::TwoModFour, trunc, s).unwrap()
    }

    #[test]
    fn restriction_of_generators() {
        let y = zmf("y", 4);
        assert!(restrict_class(&y, KleinSubgroup::E1).unwrap().class().is_zero());
        assert_eq!(
            restrict_class(&y, KleinSubgroup::E2).unwrap().class(),
            &tmf("v1", 4),
        );

        let one = CohomClass::one(RingPresentation::ZeroModFour, 4);
        for which in [KleinSubgroup::E1, KleinSubgroup::E2] {
            assert!(restrict_class(&one, which).unwrap().class().is_one());
        }

        let xw = zmf("x*w", 4);
        assert_eq!(
            restrict_class(&xw, KleinSubgroup::E1).unwrap().class(),
            &tmf("v1*v2^2+v1^2*v2", 4),
        );
        assert_eq!(
            restrict_class(&xw, KleinSubgroup::E2).unwrap().class(),
            &tmf("v1*v2^2+v1^2*v2", 4),
        );
    }

    #[test]
    fn e2_display_uses_u_generators() {
        let x = zmf("x", 3);
        let img = restrict_class(&x, KleinSubgroup::E2).unwrap();
        assert_eq!(img.to_string(), "u1");
    }

    #[test]
    fn relation_is_well_defined_under_restriction() {
        // res(y^2) must equal res(x*y) on both subgroups.
        let y_sq = zmf("y^2", 4);
        let xy = CohomClass::from_term(
            RingPresentation::ZeroModFour,
            4,
            crate::ring_f2::normalize(1, 1, 0),
        )
        .unwrap();
        for which in [KleinSubgroup::E1, KleinSubgroup::E2] {
            assert_eq!(
                restrict_class(&y_sq, which).unwrap(),
                restrict_class(&xy, which).unwrap(),
            );
        }
    }

    #[test]
    fn restriction_is_ring_homomorphism_on_samples() {
        let p = zmf("1+x+w", 6);
        let q = zmf("y+x^2+x*w", 6);
        for which in [KleinSubgroup::E1, KleinSubgroup::E2] {
            let sum = restrict_class(&p.add(&q).unwrap(), which).unwrap();
            assert_eq!(
                sum.class(),
                &restrict_class(&p, which)
                    .unwrap()
                    .class()
                    .add(restrict_class(&q, which).unwrap().class())
                    .unwrap(),
            );
            let prod = restrict_class(&p.mul(&q).unwrap(), which).unwrap();
            assert_eq!(
                prod.class(),
                &restrict_class(&p, which)
                    .unwrap()
                    .class()
                    .mul(restrict_class(&q, which).unwrap().class())
                    .unwrap(),
            );
        }
    }

    #[test]
    fn rank_computation() {
        assert_eq!(f2_rank(vec![0b01, 0b10, 0b11]), 2);
        assert_eq!(f2_rank(vec![0b100, 0b010, 0b111]), 3);
        // 0b111 = 0b101 ^ 0b010, so this triple is dependent.
        assert_eq!(f2_rank(vec![0b101, 0b010, 0b111]), 2);
        assert_eq!(f2_rank(vec![0, 0]), 0);
    }

    #[test]
    fn detection_examples() {
        assert!(verify_detection(0));
        // d = 1: {x, y} -> {(v1, u1), (0, u1)} independent.
        assert!(verify_detection(1));
        assert!(verify_detection(12));
    }

    #[test]
    fn independence_examples() {
        assert!(verify_independence_lemma(0));
        assert!(verify_independence_lemma(2));
        assert!(verify_independence_lemma(11));
    }

    #[test]
    fn basis_count_is_degree_plus_one() {
        for d in 0..=20 {
            assert_eq!(degree_basis(d).len() as u32, cohomology_dim(d));
        }
    }

    #[test]
    fn tables_are_consistent() {
        let table = detection_table(8);
        assert_eq!(table.len(), 9);
        assert!(table.iter().all(|row| row.ok && row.rank == row.dim));
        let lemma = lemma_table(8);
        assert!(lemma.iter().all(|row| row.ok));
    }
}
