//! Canonical text form for ring elements.
//!
//! Terms are sorted by (degree, descending lexicographic exponent tuple)
//! and joined by `+`; factors within a term are joined by `*` with `^` for
//! exponents above one, e.g. `1+x^4+w^2+x^2*w^2`. The zero class prints
//! as `0`. Round-trips are bit-exact.

use super::{normalize, CohomClass, Monomial, RingPresentation};
use crate::{Error, Result};

impl Monomial {
    fn render(&self, names: &[&str]) -> String {
        let exps = self.exponents();
        if exps.iter().all(|&e| e == 0) {
            return "1".to_owned();
        }
        let mut factors = Vec::new();
        for (name, &e) in names.iter().zip(&exps) {
            match e {
                0 => {}
                1 => factors.push((*name).to_owned()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        factors.join("*")
    }
}

impl std::fmt::Display for CohomClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.presentation().generator_names();
        let rendered: Vec<String> = terms.iter().map(|t| t.render(names)).collect();
        f.write_str(&rendered.join("+"))
    }
}

impl CohomClass {
    /// Parse the canonical text form. Non-normal products such as `x*y`
    /// are accepted and normalized.
    pub fn parse_text(kind: RingPresentation, trunc: u32, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::ParseClass("empty input".into()));
        }
        if s == "0" {
            return Ok(Self::zero(kind, trunc));
        }
        let names = kind.generator_names();
        let mut terms = Vec::new();
        for raw_term in s.split('+') {
            let raw_term = raw_term.trim();
            if raw_term.is_empty() {
                return Err(Error::ParseClass("empty term between '+'".into()));
            }
            let mut exps = vec![0u32; names.len()];
            if raw_term != "1" {
                for factor in raw_term.split('*') {
                    let factor = factor.trim();
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => {
                            let exp: u32 = e.trim().parse().map_err(|_| {
                                Error::ParseClass(format!("bad exponent in `{factor}`"))
                            })?;
                            (n.trim(), exp)
                        }
                        None => (factor, 1),
                    };
                    let idx = names.iter().position(|&g| g == name).ok_or_else(|| {
                        Error::ParseClass(format!("unknown generator `{name}` in {kind}"))
                    })?;
                    exps[idx] += exp;
                }
            }
            terms.push(match kind {
                RingPresentation::Odd => Monomial::Odd { a: exps[0] },
                RingPresentation::TwoModFour => Monomial::TwoModFour {
                    a: exps[0],
                    b: exps[1],
                },
                RingPresentation::ZeroModFour => normalize(exps[0], exps[1], exps[2]),
            });
        }
        Self::from_terms(kind, trunc, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rendering() {
        let p = CohomClass::parse_text(RingPresentation::ZeroModFour, 6, "w+x+1").unwrap();
        assert_eq!(p.to_string(), "1+x+w");
        let q = CohomClass::parse_text(RingPresentation::ZeroModFour, 8, "1+x^2+w+x*w")
            .unwrap()
            .pow(2)
            .unwrap();
        assert_eq!(q.to_string(), "1+x^4+w^2+x^2*w^2");
        assert_eq!(
            CohomClass::zero(RingPresentation::Odd, 3).to_string(),
            "0"
        );
    }

    #[test]
    fn degree_then_desc_lex_order() {
        let p =
            CohomClass::parse_text(RingPresentation::ZeroModFour, 4, "w+y^2+x^2+y+x").unwrap();
        assert_eq!(p.to_string(), "x+y+x^2+y^2+w");
        let q = CohomClass::parse_text(RingPresentation::TwoModFour, 2, "v2+v1").unwrap();
        assert_eq!(q.to_string(), "v1+v2");
    }

    #[test]
    fn parse_normalizes_mixed_terms() {
        let p = CohomClass::parse_text(RingPresentation::ZeroModFour, 4, "x*y").unwrap();
        assert_eq!(p.to_string(), "y^2");
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "1+x+w", "y^3+x*w", "1+x^4+w^2+x^2*w^2"] {
            let p = CohomClass::parse_text(RingPresentation::ZeroModFour, 8, s).unwrap();
            let back =
                CohomClass::parse_text(RingPresentation::ZeroModFour, 8, &p.to_string()).unwrap();
            assert_eq!(p, back);
        }
    }

    #[test]
    fn exponent_tuple_round_trip() {
        let p = CohomClass::parse_text(RingPresentation::ZeroModFour, 8, "1+x+w+y^2*w").unwrap();
        let tuples = p.to_exponent_tuples();
        assert_eq!(tuples[0], vec![0, 0, 0]);
        let back =
            CohomClass::from_exponent_tuples(RingPresentation::ZeroModFour, 8, &tuples).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(CohomClass::parse_text(RingPresentation::Odd, 3, "1+q").is_err());
        assert!(CohomClass::parse_text(RingPresentation::Odd, 3, "v^x").is_err());
        assert!(CohomClass::parse_text(RingPresentation::Odd, 3, "").is_err());
        assert!(CohomClass::parse_text(RingPresentation::TwoModFour, 3, "x").is_err());
    }
}
