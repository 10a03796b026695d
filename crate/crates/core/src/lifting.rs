//! Liftability of a representation to the double covers of the orthogonal
//! group: `O(V) x Z/2Z` (always), `~O(V)` iff `w1^2 = 0`, `Pin+(V)` iff
//! `w2 = 0`, `Pin-(V)` iff `w2 + w1^2 = 0`. Both the cohomological test
//! and the character-value criteria are implemented; their agreement is an
//! exhaustively verified theorem, not an assumption.

use serde::Serialize;

use crate::dihedral::{CharacterData, Representation};
use crate::ring_f2::CohomClass;
use crate::swc::{char_total_swc, swc_invariants, total_swc_truncated, SwcInvariants};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftMethod {
    Cohomological,
    Character,
}

/// Liftability flags for the four extensions of `O(V)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    /// Always true: every orthogonal representation lifts to `O(V) x Z/2Z`.
    #[serde(rename = "O_x_Z2")]
    pub lifts_trivial_cover: bool,
    #[serde(rename = "tilde_O")]
    pub lifts_tilde_o: bool,
    #[serde(rename = "pin_plus")]
    pub lifts_pin_plus: bool,
    #[serde(rename = "pin_minus")]
    pub lifts_pin_minus: bool,
    pub method: LiftMethod,
}

impl LiftReport {
    /// Equal flags regardless of which method produced them.
    pub fn agrees_with(&self, other: &LiftReport) -> bool {
        self.lifts_tilde_o == other.lifts_tilde_o
            && self.lifts_pin_plus == other.lifts_pin_plus
            && self.lifts_pin_minus == other.lifts_pin_minus
    }

    /// Spinorial means liftable to `Pin-(V)`.
    pub fn is_spinorial(&self) -> bool {
        self.lifts_pin_minus
    }
}

/// Parity of `C(n, 2)` by the Lucas bit test: odd exactly when the second
/// bit of `n mod 4` is set, valid for every integer `n`.
pub fn binom2_odd(n: i64) -> bool {
    n.rem_euclid(4) & 2 != 0
}

fn report_from_low_degree(w1: &CohomClass, w2: &CohomClass) -> Result<LiftReport> {
    let w1_sq = w1.mul(w1)?;
    Ok(LiftReport {
        lifts_trivial_cover: true,
        lifts_tilde_o: w1_sq.is_zero(),
        lifts_pin_plus: w2.is_zero(),
        lifts_pin_minus: w2.add(&w1_sq)?.is_zero(),
        method: LiftMethod::Cohomological,
    })
}

/// Cohomological criteria evaluated exactly on `w1`, `w2` of the total
/// class.
pub fn lift_report_cohomological(rep: &Representation) -> Result<LiftReport> {
    let low = total_swc_truncated(rep, 2)?;
    report_from_low_degree(&low.graded_component(1)?, &low.graded_component(2)?)
}

/// Cohomological criteria driven from character data alone.
pub fn lift_report_cohomological_char(chi: &CharacterData) -> Result<LiftReport> {
    let low = char_total_swc(chi, 2)?;
    report_from_low_degree(&low.graded_component(1)?, &low.graded_component(2)?)
}

/// Character-value criteria per parity class:
///
/// * `m = 0 mod 4` with exponents `(a, b, c)`: `~O` iff `a = b = c mod 2`;
///   `Pin+` iff `c` is even and `C(a,2) = C(b,2) = C(c,2) mod 2`; `Pin-`
///   iff `c` is even and `C(a+1,2) = C(b+1,2) = C(c+1,2) mod 2`.
/// * odd `m` with exponent `t`: `~O` iff `t` is even; `Pin+` iff
///   `t = 0, 1 mod 4`; `Pin-` iff `t = 0, 3 mod 4`.
/// * `m = 2 mod 4` with exponents `(e, f, g)`: `~O` iff `e = f = g mod 2`;
///   `Pin+` iff `C(e+g,2) = C(f+g,2) = ef + fg + eg = 0 mod 2`; `Pin-`
///   iff `C(e+g+1,2) = C(f+g+1,2) = ef + fg + eg = 0 mod 2`.
pub fn lift_report_character(chi: &CharacterData) -> Result<LiftReport> {
    Ok(lift_report_from_invariants(swc_invariants(chi)?))
}

pub fn lift_report_from_invariants(inv: SwcInvariants) -> LiftReport {
    let (tilde_o, pin_plus, pin_minus) = match inv {
        SwcInvariants::ZeroModFour { a, b, c } => {
            let tilde = (a - b) % 2 == 0 && (b - c) % 2 == 0;
            let plus =
                c % 2 == 0 && binom2_odd(a) == binom2_odd(b) && binom2_odd(b) == binom2_odd(c);
            let minus = c % 2 == 0
                && binom2_odd(a + 1) == binom2_odd(b + 1)
                && binom2_odd(b + 1) == binom2_odd(c + 1);
            (tilde, plus, minus)
        }
        SwcInvariants::Odd { t } => {
            let r = t.rem_euclid(4);
            (t % 2 == 0, r == 0 || r == 1, r == 0 || r == 3)
        }
        SwcInvariants::TwoModFour { e, f, g } => {
            let tilde = (e - f) % 2 == 0 && (f - g) % 2 == 0;
            let cross = (e * f + f * g + e * g) % 2 == 0;
            let plus = cross && !binom2_odd(e + g) && !binom2_odd(f + g);
            let minus = cross && !binom2_odd(e + g + 1) && !binom2_odd(f + g + 1);
            (tilde, plus, minus)
        }
    };
    LiftReport {
        lifts_trivial_cover: true,
        lifts_tilde_o: tilde_o,
        lifts_pin_plus: pin_plus,
        lifts_pin_minus: pin_minus,
        method: LiftMethod::Character,
    }
}

/// Both criterion paths side by side, with the agreement verdict.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossCheckedLift {
    pub cohomological: LiftReport,
    pub character: LiftReport,
    pub agreement: bool,
}

pub fn lift_reports_cross_checked(rep: &Representation) -> Result<CrossCheckedLift> {
    let cohomological = lift_report_cohomological(rep)?;
    let character = lift_report_character(&rep.character())?;
    Ok(CrossCheckedLift {
        cohomological,
        character,
        agreement: cohomological.agrees_with(&character),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::{char_values, DihedralParam, IrreducibleLabel};

    fn d(m: u64) -> DihedralParam {
        DihedralParam::new(m).unwrap()
    }

    fn rep(m: u64, mult: &[(IrreducibleLabel, u64)]) -> Representation {
        Representation::from_multiplicities(d(m), mult.iter().copied()).unwrap()
    }

    fn flags(r: &LiftReport) -> (bool, bool, bool) {
        (r.lifts_tilde_o, r.lifts_pin_plus, r.lifts_pin_minus)
    }

    #[test]
    fn binom2_parity_table() {
        // C(n,2) mod 2 has period 4: even, even, odd, odd.
        for (n, expected) in [(0, false), (1, false), (2, true), (3, true), (4, false)] {
            assert_eq!(binom2_odd(n), expected, "n = {n}");
        }
        assert!(binom2_odd(-1)); // C(-1,2) = 1
        assert!(binom2_odd(-2)); // C(-2,2) = 3
        assert!(!binom2_odd(-3)); // C(-3,2) = 6
    }

    #[test]
    fn cohomological_examples() {
        // 2 chi_s: w = 1 + x^2, so w1 = 0, w2 = x^2.
        let r = rep(4, &[(IrreducibleLabel::ChiS, 2)]);
        let report = lift_report_cohomological(&r).unwrap();
        assert_eq!(flags(&report), (true, false, false));

        let trivial = Representation::trivial(d(4), 3);
        assert_eq!(
            flags(&lift_report_cohomological(&trivial).unwrap()),
            (true, true, true),
        );

        let reg = Representation::regular(d(4));
        assert_eq!(
            flags(&lift_report_cohomological(&reg).unwrap()),
            (true, true, true),
        );
    }

    #[test]
    fn character_examples() {
        let chi_s = char_values(IrreducibleLabel::ChiS, d(4)).unwrap();
        let report = lift_report_character(&chi_s).unwrap();
        assert_eq!(flags(&report), (false, true, false));

        let four_chi_s = rep(4, &[(IrreducibleLabel::ChiS, 4)]).character();
        assert_eq!(
            flags(&lift_report_character(&four_chi_s).unwrap()),
            (true, true, true),
        );

        // sgn of D_1 = C_2 has t = 1.
        let sgn = char_values(IrreducibleLabel::ChiS, d(1)).unwrap();
        let report = lift_report_character(&sgn).unwrap();
        assert_eq!(flags(&report), (false, true, false));
        let coh = lift_report_cohomological_char(&sgn).unwrap();
        assert!(report.agrees_with(&coh));
    }

    #[test]
    fn trivial_cover_always_lifts() {
        for m in [1, 2, 3, 4, 6, 8] {
            let r = Representation::regular(d(m));
            assert!(lift_report_cohomological(&r).unwrap().lifts_trivial_cover);
            assert!(lift_report_character(&r.character())
                .unwrap()
                .lifts_trivial_cover);
        }
    }

    #[test]
    fn vanishing_w1_w2_lifts_everywhere() {
        // w1 = w2 = 0 forces all three nontrivial covers.
        let r = rep(4, &[(IrreducibleLabel::ChiS, 4)]);
        let report = lift_report_cohomological(&r).unwrap();
        assert_eq!(flags(&report), (true, true, true));
    }

    #[test]
    fn cross_check_agrees_on_samples() {
        for m in [1, 2, 3, 4, 5, 6, 8, 12] {
            let g = d(m);
            for r in [
                Representation::regular(g),
                Representation::trivial(g, 2),
                rep(m, &[(IrreducibleLabel::ChiS, 3)]),
            ] {
                let cross = lift_reports_cross_checked(&r).unwrap();
                assert!(cross.agreement, "m={m} rep={:?}", r.to_json());
            }
        }
    }
}
