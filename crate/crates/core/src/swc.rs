//! Stiefel-Whitney classes of dihedral representations: the character
//! formula per parity class, an independent per-irreducible multiplicative
//! path, top-class criteria, triviality, and factorization of units into
//! the free generators of `W(D_m)`.

use serde::Serialize;

use crate::dihedral::{
    CharacterData, DihedralParam, IrreducibleLabel, ParityClass, Representation,
};
use crate::ring_f2::{normalize, CohomClass, Monomial, RingPresentation};
use crate::{Error, Result};

/// Character-derived exponents of the total class: `(a, b, c)` for
/// `m = 0 mod 4`, `(e, f, g)` for `m = 2 mod 4`, and `t` for odd `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwcInvariants {
    ZeroModFour { a: i64, b: i64, c: i64 },
    TwoModFour { e: i64, f: i64, g: i64 },
    Odd { t: i64 },
}

impl SwcInvariants {
    pub fn to_json(&self) -> serde_json::Value {
        match *self {
            SwcInvariants::ZeroModFour { a, b, c } => {
                serde_json::json!({ "a": a, "b": b, "c": c })
            }
            SwcInvariants::TwoModFour { e, f, g } => {
                serde_json::json!({ "e": e, "f": f, "g": g })
            }
            SwcInvariants::Odd { t } => serde_json::json!({ "t": t }),
        }
    }
}

fn exact_quarter(combination: &str, value: i64) -> Result<i64> {
    if value % 4 != 0 {
        return Err(Error::Divisibility {
            combination: combination.to_owned(),
            modulus: 4,
        });
    }
    Ok(value / 4)
}

/// The exponent extraction per parity class:
///
/// * `m = 0 mod 4`: `a = (chi(1) - 2 chi(rs) + chi(rc))/4`,
///   `b = (chi(1) - 2 chi(s) + chi(rc))/4`, `c = (chi(1) - chi(rc))/4`.
/// * `m = 2 mod 4`: `e = (deg - chi(rc) + chi(s) - chi(src))/4` and its
///   two sign companions; here `s` and `s r_c` are not conjugate, so
///   `chi(src)` is an independent input.
/// * `m` odd: `t = (chi(1) - chi(s))/2`.
pub fn swc_invariants(chi: &CharacterData) -> Result<SwcInvariants> {
    match chi.group().parity_class() {
        ParityClass::ZeroModFour => {
            let (d, s, rs, rc) = (chi.degree(), chi.at_s(), chi.at_rs()?, chi.at_rc()?);
            Ok(SwcInvariants::ZeroModFour {
                a: exact_quarter("chi(1) - 2*chi(rs) + chi(rc)", d - 2 * rs + rc)?,
                b: exact_quarter("chi(1) - 2*chi(s) + chi(rc)", d - 2 * s + rc)?,
                c: exact_quarter("chi(1) - chi(rc)", d - rc)?,
            })
        }
        ParityClass::TwoModFour => {
            let (d, s, rc, src) = (chi.degree(), chi.at_s(), chi.at_rc()?, chi.at_src()?);
            Ok(SwcInvariants::TwoModFour {
                e: exact_quarter("deg - chi(rc) + chi(s) - chi(src)", d - rc + s - src)?,
                f: exact_quarter("deg + chi(rc) - chi(s) - chi(src)", d + rc - s - src)?,
                g: exact_quarter("deg - chi(rc) - chi(s) + chi(src)", d - rc - s + src)?,
            })
        }
        ParityClass::Odd => {
            let (d, s) = (chi.degree(), chi.at_s());
            if (d - s) % 2 != 0 {
                return Err(Error::Divisibility {
                    combination: "chi(1) - chi(s)".to_owned(),
                    modulus: 2,
                });
            }
            Ok(SwcInvariants::Odd { t: (d - s) / 2 })
        }
    }
}

fn term(kind: RingPresentation, exps: &[u32]) -> Monomial {
    match kind {
        RingPresentation::Odd => Monomial::Odd { a: exps[0] },
        RingPresentation::TwoModFour => Monomial::TwoModFour {
            a: exps[0],
            b: exps[1],
        },
        RingPresentation::ZeroModFour => normalize(exps[0], exps[1], exps[2]),
    }
}

fn class_of(kind: RingPresentation, trunc: u32, terms: &[&[u32]]) -> CohomClass {
    CohomClass::from_terms(kind, trunc, terms.iter().map(|e| term(kind, e)))
        .expect("tabulated terms are well formed")
}

/// `(1+y)^a (1+x+y)^b (1+x+w)^c` truncated at `trunc`; the generators of
/// `W(D_m)` for `m = 0 mod 4`. Negative exponents use truncated inverses.
pub fn w_generator_product(a: i64, b: i64, c: i64, trunc: u32) -> Result<CohomClass> {
    let kind = RingPresentation::ZeroModFour;
    let one_plus_y = class_of(kind, trunc, &[&[0, 0, 0], &[0, 1, 0]]);
    let one_plus_xy = class_of(kind, trunc, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
    let one_plus_xw = class_of(kind, trunc, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 1]]);
    one_plus_y
        .pow(a)?
        .mul(&one_plus_xy.pow(b)?)?
        .mul(&one_plus_xw.pow(c)?)
}

/// Total class built from character-derived exponents.
pub fn swc_from_invariants(inv: SwcInvariants, trunc: u32) -> Result<CohomClass> {
    match inv {
        SwcInvariants::ZeroModFour { a, b, c } => w_generator_product(a, b, c, trunc),
        SwcInvariants::TwoModFour { e, f, g } => {
            let kind = RingPresentation::TwoModFour;
            let v1 = class_of(kind, trunc, &[&[0, 0], &[1, 0]]);
            let v2 = class_of(kind, trunc, &[&[0, 0], &[0, 1]]);
            let v12 = class_of(kind, trunc, &[&[0, 0], &[1, 0], &[0, 1]]);
            v1.pow(e)?.mul(&v2.pow(f)?)?.mul(&v12.pow(g)?)
        }
        SwcInvariants::Odd { t } => {
            let kind = RingPresentation::Odd;
            class_of(kind, trunc, &[&[0], &[1]]).pow(t)
        }
    }
}

/// Total class of a character, truncated at `trunc`.
pub fn char_total_swc(chi: &CharacterData, trunc: u32) -> Result<CohomClass> {
    swc_from_invariants(swc_invariants(chi)?, trunc)
}

fn degree_as_u32(rep: &Representation) -> Result<u32> {
    u32::try_from(rep.degree())
        .map_err(|_| Error::InvalidRepresentation("degree exceeds u32 range".into()))
}

/// Total Stiefel-Whitney class by the character formula, truncated at the
/// degree of the representation.
pub fn total_swc(rep: &Representation) -> Result<CohomClass> {
    total_swc_truncated(rep, degree_as_u32(rep)?)
}

/// Same as [`total_swc`] at an arbitrary truncation; graded parts up to
/// `trunc` are the honest classes regardless of the cap.
pub fn total_swc_truncated(rep: &Representation, trunc: u32) -> Result<CohomClass> {
    char_total_swc(&rep.character(), trunc)
}

/// Tabulated total class of a single irreducible, the independent oracle
/// route. For `m = 0 mod 4` these are the restriction-derived values
/// `w(1) = 1`, `w(chi_s) = 1+x`, `w(chi_r) = 1+y`, `w(chi_rs) = 1+x+y`,
/// `w(sigma_k) = 1+x+w` (`k` odd) or `1+x` (`k` even); the other parity
/// classes use the analogous tables over their own generators.
pub fn irreducible_swc(
    label: IrreducibleLabel,
    g: DihedralParam,
    trunc: u32,
) -> Result<CohomClass> {
    if !label.is_valid_for(g) {
        return Err(Error::InvalidLabel {
            label: label.name(),
            m: g.m(),
        });
    }
    let kind = g.presentation();
    let one: &[u32] = match kind {
        RingPresentation::Odd => &[0],
        RingPresentation::TwoModFour => &[0, 0],
        RingPresentation::ZeroModFour => &[0, 0, 0],
    };
    Ok(match (g.parity_class(), label) {
        (_, IrreducibleLabel::Trivial) => CohomClass::one(kind, trunc),

        // m odd: every nontrivial irreducible has total class 1+v.
        (ParityClass::Odd, _) => class_of(kind, trunc, &[one, &[1]]),

        (ParityClass::TwoModFour, IrreducibleLabel::ChiS) => {
            class_of(kind, trunc, &[one, &[0, 1]])
        }
        (ParityClass::TwoModFour, IrreducibleLabel::ChiR) => {
            class_of(kind, trunc, &[one, &[1, 0]])
        }
        (ParityClass::TwoModFour, IrreducibleLabel::ChiRS) => {
            class_of(kind, trunc, &[one, &[1, 0], &[0, 1]])
        }
        // Restriction to D_2 gives 1 + alpha for even k and
        // (1+v1)(1+v1+v2) = 1 + v2 + v1^2 + v1*v2 for odd k.
        (ParityClass::TwoModFour, IrreducibleLabel::Sigma(k)) => {
            if k % 2 == 0 {
                class_of(kind, trunc, &[one, &[0, 1]])
            } else {
                class_of(kind, trunc, &[one, &[0, 1], &[2, 0], &[1, 1]])
            }
        }

        (ParityClass::ZeroModFour, IrreducibleLabel::ChiS) => {
            class_of(kind, trunc, &[one, &[1, 0, 0]])
        }
        (ParityClass::ZeroModFour, IrreducibleLabel::ChiR) => {
            class_of(kind, trunc, &[one, &[0, 1, 0]])
        }
        (ParityClass::ZeroModFour, IrreducibleLabel::ChiRS) => {
            class_of(kind, trunc, &[one, &[1, 0, 0], &[0, 1, 0]])
        }
        (ParityClass::ZeroModFour, IrreducibleLabel::Sigma(k)) => {
            if k % 2 == 0 {
                class_of(kind, trunc, &[one, &[1, 0, 0]])
            } else {
                class_of(kind, trunc, &[one, &[1, 0, 0], &[0, 0, 1]])
            }
        }
    })
}

/// Total class as the product of the tabulated per-irreducible classes;
/// the multiplicative cross-check of [`total_swc`].
pub fn total_swc_multiplicative(rep: &Representation) -> Result<CohomClass> {
    total_swc_multiplicative_truncated(rep, degree_as_u32(rep)?)
}

pub fn total_swc_multiplicative_truncated(rep: &Representation, trunc: u32) -> Result<CohomClass> {
    let g = rep.group();
    let mut acc = CohomClass::one(g.presentation(), trunc);
    for (label, count) in rep.multiplicities() {
        acc = acc.mul(&irreducible_swc(label, g, trunc)?.pow(count as i64)?)?;
    }
    Ok(acc)
}

/// Top class outcome: the degree-`deg` graded component plus the verdict,
/// confirmed independently by the character criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopSwc {
    pub class: CohomClass,
    pub nonzero: bool,
}

/// Character-side test for a nonzero top class.
///
/// For `m = 0 mod 4` this is the vanishing of `l = chi(1) + 2 chi(s) +
/// chi(rc)` or of `chi(1) + 2 chi(rs) + chi(rc)` (the sums of `chi` over
/// `E1` resp. `E2`); for `m = 2 mod 4` the vanishing of the `chi`-sum over
/// `{1, s, r_c, s r_c}`; for odd `m` of `deg + chi(s)`.
pub fn top_nonzero_by_character(chi: &CharacterData) -> Result<bool> {
    Ok(match chi.group().parity_class() {
        ParityClass::ZeroModFour => {
            let ell = chi.degree() + 2 * chi.at_s() + chi.at_rc()?;
            let em = chi.degree() + 2 * chi.at_rs()? + chi.at_rc()?;
            ell == 0 || em == 0
        }
        ParityClass::TwoModFour => {
            chi.degree() + chi.at_rc()? + chi.at_s() + chi.at_src()? == 0
        }
        ParityClass::Odd => chi.degree() + chi.at_s() == 0,
    })
}

/// Top Stiefel-Whitney class, computed in the ring and double-checked by
/// the character criterion; disagreement is a hard error.
pub fn top_swc(rep: &Representation) -> Result<TopSwc> {
    let deg = degree_as_u32(rep)?;
    let total = total_swc(rep)?;
    let class = total.graded_component(deg)?;
    let ring_nonzero = !class.is_zero();
    let char_nonzero = top_nonzero_by_character(&rep.character())?;
    if ring_nonzero != char_nonzero {
        return Err(Error::InternalInconsistency(format!(
            "top-class verdicts disagree for {}: ring says {ring_nonzero}, characters say {char_nonzero}",
            serde_json::to_string(&rep.to_json()).unwrap_or_default()
        )));
    }
    Ok(TopSwc {
        class,
        nonzero: ring_nonzero,
    })
}

/// True exactly when the total class is 1, equivalently when the
/// representation is a multiple of the trivial one.
pub fn is_swc_trivial(rep: &Representation) -> Result<bool> {
    Ok(total_swc(rep)?.is_one())
}

/// Recover the unique `(a, b, c)` with `|a|,|b|,|c| <= bound` and
/// `(1+y)^a (1+x+y)^b (1+x+w)^c` equal to `cls` up to its truncation, if
/// one exists. Requires the `m = 0 mod 4` presentation, constant term 1
/// and truncation at least `2*bound + 2` so the answer is certified.
pub fn factor_w(cls: &CohomClass, bound: u32) -> Result<Option<(i64, i64, i64)>> {
    if cls.presentation() != RingPresentation::ZeroModFour {
        return Err(Error::PresentationMismatch {
            left: RingPresentation::ZeroModFour,
            right: cls.presentation(),
        });
    }
    if !cls.constant_term() {
        return Err(Error::NotAUnit);
    }
    let trunc = cls.truncation_degree();
    let needed = 2 * bound + 2;
    if trunc < needed {
        return Err(Error::TruncationTooSmall { needed, got: trunc });
    }

    if let Some(hit) = factor_w_by_degrees(cls, bound)? {
        return Ok(Some(hit));
    }

    // Bounded exhaustive scan; free abelianness makes more than one match
    // impossible at certified truncation, so two hits mean the caller's
    // truncation claim was wrong.
    let b = i64::from(bound);
    let mut found = None;
    for a in -b..=b {
        for bb in -b..=b {
            for c in -b..=b {
                if w_generator_product(a, bb, c, trunc)? == *cls {
                    if found.is_some() {
                        return Err(Error::AmbiguousFactorization);
                    }
                    found = Some((a, bb, c));
                }
            }
        }
    }
    Ok(found)
}

/// Fast path for nonnegative exponents: after the change of variable
/// `z = x + y` the ring is `F2[z,y,w]/(yz)` and the generator degrees of
/// `y`, `z`, `w` in the product are `a+c`, `b+c`, `c`. Candidates are
/// verified by reconstruction, so a miss just falls back to the scan.
fn factor_w_by_degrees(cls: &CohomClass, bound: u32) -> Result<Option<(i64, i64, i64)>> {
    let mut max_w = 0i64;
    let mut max_z = 0i64;
    let mut y_family = std::collections::HashSet::new();
    for t in cls.terms() {
        if let Monomial::ZeroModFour { x, y, w } = t {
            max_w = max_w.max(i64::from(w));
            if y == 0 {
                max_z = max_z.max(i64::from(x));
            }
            // In the z-basis, x^i w^k contributes y^i w^k for i > 0 and
            // y^j w^k stays put; coefficients combine mod 2.
            let j = x.max(y);
            if j > 0 && !y_family.remove(&(j, w)) {
                y_family.insert((j, w));
            }
        }
    }
    let max_y = y_family.iter().map(|&(j, _)| i64::from(j)).max().unwrap_or(0);

    let (c, b, a) = (max_w, max_z - max_w, max_y - max_w);
    let lim = i64::from(bound);
    if [a, b, c].iter().all(|v| (0..=lim).contains(v))
        && w_generator_product(a, b, c, cls.truncation_degree())? == *cls
    {
        return Ok(Some((a, b, c)));
    }
    Ok(None)
}

/// CLI/JSON-facing summary of the class computation for one input.
#[derive(Debug, Clone, Serialize)]
pub struct SwcReport {
    pub total: String,
    pub w1: String,
    pub w2: String,
    pub top: TopReport,
    pub invariants: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct TopReport {
    pub class: String,
    pub nonzero: bool,
}

impl SwcReport {
    pub fn from_representation(rep: &Representation) -> Result<Self> {
        let inv = swc_invariants(&rep.character())?;
        let total = total_swc(rep)?;
        let low = total_swc_truncated(rep, 2)?;
        let top = top_swc(rep)?;
        Ok(SwcReport {
            total: total.to_string(),
            w1: low.graded_component(1)?.to_string(),
            w2: low.graded_component(2)?.to_string(),
            top: TopReport {
                class: top.class.to_string(),
                nonzero: top.nonzero,
            },
            invariants: inv.to_json(),
        })
    }

    pub fn from_character(chi: &CharacterData) -> Result<Self> {
        let inv = swc_invariants(chi)?;
        let deg = u32::try_from(chi.degree())
            .map_err(|_| Error::InvalidCharacter("negative degree".into()))?;
        let total = swc_from_invariants(inv, deg)?;
        let low = swc_from_invariants(inv, 2)?;
        let top_class = total.graded_component(deg)?;
        let ring_nonzero = !top_class.is_zero();
        let char_nonzero = top_nonzero_by_character(chi)?;
        if ring_nonzero != char_nonzero {
            return Err(Error::InternalInconsistency(
                "top-class verdicts disagree on character input".into(),
            ));
        }
        Ok(SwcReport {
            total: total.to_string(),
            w1: low.graded_component(1)?.to_string(),
            w2: low.graded_component(2)?.to_string(),
            top: TopReport {
                class: top_class.to_string(),
                nonzero: ring_nonzero,
            },
            invariants: inv.to_json(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::char_values;

    fn d(m: u64) -> DihedralParam {
        DihedralParam::new(m).unwrap()
    }

    fn rep(m: u64, mult: &[(IrreducibleLabel, u64)]) -> Representation {
        Representation::from_multiplicities(d(m), mult.iter().copied()).unwrap()
    }

    fn zmf(s: &str, trunc: u32) -> CohomClass {
        CohomClass::parse_text(RingPresentation::ZeroModFour, trunc, s).unwrap()
    }

    #[test]
    fn invariants_examples() {
        let sigma1 = char_values(IrreducibleLabel::Sigma(1), d(4)).unwrap();
        assert_eq!(
            swc_invariants(&sigma1).unwrap(),
            SwcInvariants::ZeroModFour { a: 0, b: 0, c: 1 },
        );

        let triv = char_values(IrreducibleLabel::Trivial, d(8)).unwrap();
        assert_eq!(
            swc_invariants(&triv).unwrap(),
            SwcInvariants::ZeroModFour { a: 0, b: 0, c: 0 },
        );

        let chi_s = char_values(IrreducibleLabel::ChiS, d(4)).unwrap();
        assert_eq!(
            swc_invariants(&chi_s).unwrap(),
            SwcInvariants::ZeroModFour { a: 1, b: 1, c: 0 },
        );
    }

    #[test]
    fn invariants_divisibility_gate() {
        let g = d(4);
        let bogus = CharacterData::new_zero_mod_four(g, 2, 1, 0, 0).unwrap();
        assert!(matches!(
            swc_invariants(&bogus),
            Err(Error::Divisibility { .. })
        ));
    }

    #[test]
    fn total_swc_examples() {
        let reg = Representation::regular(d(4));
        let w = total_swc(&reg).unwrap();
        assert_eq!(w, zmf("1+x^4+w^2+x^2*w^2", 8));
        assert_eq!(w, zmf("1+x^2+w+x*w", 8).pow(2).unwrap());

        assert!(total_swc(&Representation::trivial(d(8), 3)).unwrap().is_one());

        let s12 = rep(
            8,
            &[(IrreducibleLabel::Sigma(1), 1), (IrreducibleLabel::Sigma(2), 1)],
        );
        assert_eq!(total_swc(&s12).unwrap(), zmf("1+x^2+w+x*w", 4));
    }

    #[test]
    fn multiplicative_oracle_examples() {
        let r = rep(
            4,
            &[(IrreducibleLabel::ChiR, 1), (IrreducibleLabel::ChiRS, 1)],
        );
        assert_eq!(total_swc_multiplicative(&r).unwrap(), zmf("1+x", 2));

        assert!(total_swc_multiplicative(&Representation::trivial(d(4), 1))
            .unwrap()
            .is_one());

        let reg8 = Representation::regular(d(8));
        assert_eq!(
            total_swc_multiplicative(&reg8).unwrap(),
            total_swc(&reg8).unwrap(),
        );
    }

    #[test]
    fn top_swc_examples() {
        let sigma1 = rep(4, &[(IrreducibleLabel::Sigma(1), 1)]);
        let top = top_swc(&sigma1).unwrap();
        assert!(top.nonzero);
        assert_eq!(top.class, zmf("w", 2));

        let empty = Representation::empty(d(4));
        let top = top_swc(&empty).unwrap();
        assert!(top.nonzero);
        assert!(top.class.is_one());

        let r = rep(
            4,
            &[(IrreducibleLabel::Trivial, 1), (IrreducibleLabel::ChiS, 1)],
        );
        let top = top_swc(&r).unwrap();
        assert!(!top.nonzero);
        assert!(top.class.is_zero());
    }

    #[test]
    fn top_swc_other_parities() {
        // Odd m: nonzero top class iff the representation is a multiple of chi_s.
        let r = rep(3, &[(IrreducibleLabel::ChiS, 2)]);
        assert!(top_swc(&r).unwrap().nonzero);
        let r = rep(3, &[(IrreducibleLabel::Sigma(1), 1)]);
        assert!(!top_swc(&r).unwrap().nonzero);

        let r = rep(6, &[(IrreducibleLabel::ChiRS, 1), (IrreducibleLabel::Sigma(1), 1)]);
        assert!(top_swc(&r).unwrap().nonzero);
        let r = rep(6, &[(IrreducibleLabel::Sigma(2), 1)]);
        assert!(!top_swc(&r).unwrap().nonzero);
    }

    #[test]
    fn triviality_examples() {
        assert!(is_swc_trivial(&Representation::trivial(d(8), 5)).unwrap());
        assert!(!is_swc_trivial(&rep(4, &[(IrreducibleLabel::ChiR, 1)])).unwrap());
        assert!(!is_swc_trivial(&rep(8, &[(IrreducibleLabel::Sigma(2), 1)])).unwrap());
    }

    #[test]
    fn factor_examples() {
        let cls = zmf("1+x", 8);
        assert_eq!(factor_w(&cls, 2).unwrap(), Some((1, 1, 0)));

        let one = CohomClass::one(RingPresentation::ZeroModFour, 8);
        assert_eq!(factor_w(&one, 2).unwrap(), Some((0, 0, 0)));

        let cls = w_generator_product(-1, 0, 1, 8).unwrap();
        assert_eq!(factor_w(&cls, 3).unwrap(), Some((-1, 0, 1)));
    }

    #[test]
    fn factor_requires_certifiable_truncation() {
        let cls = zmf("1+x", 6);
        assert!(matches!(
            factor_w(&cls, 3),
            Err(Error::TruncationTooSmall { .. })
        ));
        let v = zmf("x", 8);
        assert!(matches!(factor_w(&v, 3), Err(Error::NotAUnit)));
    }

    #[test]
    fn factor_rejects_non_members() {
        // 1 + w is not a product of the three generators.
        let cls = zmf("1+w", 10);
        assert_eq!(factor_w(&cls, 3).unwrap(), None);
    }

    #[test]
    fn report_shapes() {
        let r = rep(4, &[(IrreducibleLabel::Sigma(1), 1)]);
        let report = SwcReport::from_representation(&r).unwrap();
        assert_eq!(report.total, "1+x+w");
        assert_eq!(report.w1, "x");
        assert_eq!(report.w2, "w");
        assert!(report.top.nonzero);
        assert_eq!(report.invariants["c"], 1);

        let chi = rep(4, &[(IrreducibleLabel::ChiS, 2)]).character();
        let report = SwcReport::from_character(&chi).unwrap();
        assert_eq!(report.total, "1+x^2");
        assert_eq!(report.w1, "0");
        assert_eq!(report.w2, "x^2");
    }
}
