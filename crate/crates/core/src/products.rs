//! Spinoriality of external tensor products `pi (x) pi'` on
//! `D_m x D_m'`. The three degree-2 vanishing conditions live in the
//! Kuenneth summands `H^2(G)`, `H^1(G) (x) H^1(G')` and `H^2(G')` and are
//! evaluated componentwise; the restriction-based two-part criterion is
//! computed independently and must agree.

use serde::Serialize;

use crate::dihedral::Representation;
use crate::lifting::{binom2_odd, lift_report_cohomological};
use crate::ring_f2::CohomClass;
use crate::swc::total_swc_truncated;
use crate::{Error, Result};

/// An external tensor product of representations of two dihedral groups.
/// Both factors must have positive degree.
#[derive(Debug, Clone)]
pub struct ProductRep {
    left: Representation,
    right: Representation,
}

impl ProductRep {
    pub fn new(left: Representation, right: Representation) -> Result<Self> {
        if left.is_zero() || right.is_zero() {
            return Err(Error::InvalidRepresentation(
                "product factors must have degree at least 1".into(),
            ));
        }
        Ok(ProductRep { left, right })
    }

    pub fn left(&self) -> &Representation {
        &self.left
    }

    pub fn right(&self) -> &Representation {
        &self.right
    }

    pub fn swapped(&self) -> ProductRep {
        ProductRep {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

/// `w1`, `w2` of one factor, with `w1^2` cached.
struct LowSwc {
    degree: u64,
    w1: CohomClass,
    w1_sq: CohomClass,
    w2: CohomClass,
}

fn low_swc(rep: &Representation) -> Result<LowSwc> {
    let low = total_swc_truncated(rep, 2)?;
    let w1 = low.graded_component(1)?;
    Ok(LowSwc {
        degree: rep.degree(),
        w1_sq: w1.mul(&w1)?,
        w1,
        w2: low.graded_component(2)?,
    })
}

/// `d' w2(pi) + C(d'+1, 2) w1(pi)^2` evaluated in `H^2(G)`.
fn edge_condition(own: &LowSwc, other_degree: u64) -> Result<bool> {
    let mut acc = CohomClass::zero(own.w2.presentation(), 2);
    if other_degree % 2 == 1 {
        acc = acc.add(&own.w2)?;
    }
    if binom2_odd(other_degree as i64 + 1) {
        acc = acc.add(&own.w1_sq)?;
    }
    Ok(acc.is_zero())
}

/// The three degree-2 vanishing conditions for spinoriality of the
/// product: the two edge conditions on each factor and the mixed
/// condition `(dd'+1) w1(pi) (x) w1(pi') = 0`.
pub fn product_conditions(p: &ProductRep) -> Result<(bool, bool, bool)> {
    let left = low_swc(p.left())?;
    let right = low_swc(p.right())?;
    let c1 = edge_condition(&left, right.degree)?;
    let c3 = edge_condition(&right, left.degree)?;
    let c2 = (left.degree * right.degree + 1) % 2 == 0
        || left.w1.is_zero()
        || right.w1.is_zero();
    Ok((c1, c2, c3))
}

/// Two-part criterion: (i) the restrictions `d' pi` to `G x 1` and
/// `d pi'` to `1 x G'` are spinorial, and (ii) `dd'+1` is even or one of
/// the determinants is trivial (`w1 = 0`). Cross-checked against
/// [`product_conditions`]; disagreement is a hard error.
pub fn product_report(p: &ProductRep) -> Result<ProductReport> {
    let d = p.left().degree();
    let d_prime = p.right().degree();
    let i_left = lift_report_cohomological(&p.left().scale(d_prime))?.is_spinorial();
    let i_right = lift_report_cohomological(&p.right().scale(d))?.is_spinorial();
    let w1_left_zero = total_swc_truncated(p.left(), 1)?.graded_component(1)?.is_zero();
    let w1_right_zero = total_swc_truncated(p.right(), 1)?.graded_component(1)?.is_zero();
    let ii = (d * d_prime + 1) % 2 == 0 || w1_left_zero || w1_right_zero;
    let spinorial = i_left && i_right && ii;

    let (c1, c2, c3) = product_conditions(p)?;
    if spinorial != (c1 && c2 && c3) {
        return Err(Error::InternalInconsistency(format!(
            "product criteria disagree: restriction path says {spinorial}, conditions say {:?}",
            (c1, c2, c3)
        )));
    }
    Ok(ProductReport {
        spinorial,
        conditions: [c1, c2, c3],
        theorem_16: RestrictionCriterion {
            i_left,
            i_right,
            ii,
        },
    })
}

pub fn product_spinorial(p: &ProductRep) -> Result<bool> {
    Ok(product_report(p)?.spinorial)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProductReport {
    pub spinorial: bool,
    pub conditions: [bool; 3],
    pub theorem_16: RestrictionCriterion,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RestrictionCriterion {
    pub i_left: bool,
    pub i_right: bool,
    pub ii: bool,
}

/// Check that every nontrivial irreducible of `D_m x D_m'` is aspinorial;
/// both orders must be `0 mod 4`. Irreducibles of the product group are
/// exactly the external tensors of irreducibles.
pub fn verify_aspin(m: u64, m_prime: u64) -> Result<AspinReport> {
    use crate::dihedral::{irreducibles, DihedralParam};
    let g = DihedralParam::new(m)?;
    let g2 = DihedralParam::new(m_prime)?;
    g.require_zero_mod_four("0 mod 4 for the aspinoriality corollary")?;
    g2.require_zero_mod_four("0 mod 4 for the aspinoriality corollary")?;

    let mut pairs_checked = 0u64;
    let mut first_counterexample = None;
    for psi in irreducibles(g) {
        for psi2 in irreducibles(g2) {
            use crate::dihedral::IrreducibleLabel::Trivial;
            if psi == Trivial && psi2 == Trivial {
                continue;
            }
            pairs_checked += 1;
            let p = ProductRep::new(
                Representation::irreducible(g, psi)?,
                Representation::irreducible(g2, psi2)?,
            )?;
            if product_spinorial(&p)? && first_counterexample.is_none() {
                first_counterexample = Some(format!(
                    "{} (x) {} is spinorial",
                    psi.name(),
                    psi2.name()
                ));
            }
        }
    }
    Ok(AspinReport {
        all_aspinorial: first_counterexample.is_none(),
        pairs_checked,
        first_counterexample,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AspinReport {
    pub all_aspinorial: bool,
    pub pairs_checked: u64,
    pub first_counterexample: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::{DihedralParam, IrreducibleLabel, Representation};

    fn d(m: u64) -> DihedralParam {
        DihedralParam::new(m).unwrap()
    }

    fn rep(m: u64, mult: &[(IrreducibleLabel, u64)]) -> Representation {
        Representation::from_multiplicities(d(m), mult.iter().copied()).unwrap()
    }

    #[test]
    fn conditions_examples() {
        // (sigma_1 + sigma_1) on both sides at m = 4: the doubled copies
        // make every condition even out.
        let two_sigma = rep(4, &[(IrreducibleLabel::Sigma(1), 2)]);
        let p = ProductRep::new(two_sigma.clone(), two_sigma).unwrap();
        assert_eq!(product_conditions(&p).unwrap(), (true, true, true));

        let triv = Representation::trivial(d(4), 1);
        let p = ProductRep::new(triv.clone(), triv).unwrap();
        assert_eq!(product_conditions(&p).unwrap(), (true, true, true));

        // chi_s on both sides: c2 holds (dd'+1 even) but c1 fails since
        // w2 + C(2,2) w1^2 = x^2.
        let chi_s = rep(4, &[(IrreducibleLabel::ChiS, 1)]);
        let p = ProductRep::new(chi_s.clone(), chi_s).unwrap();
        let (c1, c2, _c3) = product_conditions(&p).unwrap();
        assert!(!c1);
        assert!(c2);
    }

    #[test]
    fn spinoriality_examples() {
        // (sigma_k + sigma_k) boxtimes (sigma_k + sigma_k) with k even.
        let two_sigma2 = rep(8, &[(IrreducibleLabel::Sigma(2), 2)]);
        let p = ProductRep::new(two_sigma2.clone(), two_sigma2).unwrap();
        assert!(product_spinorial(&p).unwrap());

        let triv = Representation::trivial(d(4), 1);
        assert!(product_spinorial(&ProductRep::new(triv.clone(), triv).unwrap()).unwrap());

        let sigma1 = rep(4, &[(IrreducibleLabel::Sigma(1), 1)]);
        let p = ProductRep::new(sigma1.clone(), sigma1).unwrap();
        assert!(!product_spinorial(&p).unwrap());
    }

    #[test]
    fn mixed_parity_products() {
        // Each condition only needs the classes on its own factor.
        let odd_side = rep(3, &[(IrreducibleLabel::ChiS, 2)]);
        let four_side = rep(4, &[(IrreducibleLabel::ChiS, 4)]);
        let p = ProductRep::new(odd_side, four_side).unwrap();
        let report = product_report(&p).unwrap();
        assert_eq!(report.spinorial, report.conditions.iter().all(|&c| c));
    }

    #[test]
    fn rejects_zero_factors() {
        let triv = Representation::trivial(d(4), 1);
        let zero = Representation::empty(d(4));
        assert!(ProductRep::new(triv, zero).is_err());
    }

    #[test]
    fn aspin_small() {
        let report = verify_aspin(4, 4).unwrap();
        assert!(report.all_aspinorial);
        assert_eq!(report.pairs_checked, 24);
        assert!(verify_aspin(4, 6).is_err());
    }

    #[test]
    fn symmetry_on_samples() {
        let a = rep(4, &[(IrreducibleLabel::ChiS, 1), (IrreducibleLabel::Sigma(1), 1)]);
        let b = rep(8, &[(IrreducibleLabel::Sigma(2), 2)]);
        let p = ProductRep::new(a, b).unwrap();
        assert_eq!(
            product_spinorial(&p).unwrap(),
            product_spinorial(&p.swapped()).unwrap(),
        );
    }
}
