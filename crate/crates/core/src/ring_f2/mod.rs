//! Exact arithmetic in the three graded-commutative mod-2 cohomology rings
//! of dihedral groups: `F2[v]`, `F2[v1,v2]` and `F2[x,y,w]/(y^2+xy)`.
//!
//! Elements are kept in monomial normal form and truncated at an explicit
//! degree cap; coefficients are presence bits, which is exact over F2.

mod bits;
mod text;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};
pub(crate) use bits::BitRow;

/// The three ring presentations, selected by the parity class of `m`.
///
/// Generator degrees: `v`, `v1`, `v2`, `x`, `y` have degree 1 and `w` has
/// degree 2. Only the last presentation has a relation, `y^2 = xy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingPresentation {
    Odd,
    TwoModFour,
    ZeroModFour,
}

impl RingPresentation {
    pub fn generator_names(self) -> &'static [&'static str] {
        match self {
            RingPresentation::Odd => &["v"],
            RingPresentation::TwoModFour => &["v1", "v2"],
            RingPresentation::ZeroModFour => &["x", "y", "w"],
        }
    }

    pub fn generator_degrees(self) -> &'static [u32] {
        match self {
            RingPresentation::Odd => &[1],
            RingPresentation::TwoModFour => &[1, 1],
            RingPresentation::ZeroModFour => &[1, 1, 2],
        }
    }

    /// Degree of the second index used in the packed representation:
    /// `w` for the quotient ring, `v2` for the polynomial ring on two
    /// generators. Unused for `F2[v]`.
    fn stride(self) -> u32 {
        match self {
            RingPresentation::Odd => 1,
            RingPresentation::TwoModFour => 1,
            RingPresentation::ZeroModFour => 2,
        }
    }
}

impl std::fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RingPresentation::Odd => "F2[v]",
            RingPresentation::TwoModFour => "F2[v1,v2]",
            RingPresentation::ZeroModFour => "F2[x,y,w]/(y^2+xy)",
        };
        f.write_str(s)
    }
}

/// A normal-form monomial of one of the three presentations.
///
/// In `ZeroModFour` no monomial carries both `x` and `y`: the reduction
/// `x^i y^j w^k = y^(i+j) w^k` for `i, j > 0` is always applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monomial {
    Odd { a: u32 },
    TwoModFour { a: u32, b: u32 },
    ZeroModFour { x: u32, y: u32, w: u32 },
}

impl Monomial {
    pub fn one(kind: RingPresentation) -> Self {
        match kind {
            RingPresentation::Odd => Monomial::Odd { a: 0 },
            RingPresentation::TwoModFour => Monomial::TwoModFour { a: 0, b: 0 },
            RingPresentation::ZeroModFour => Monomial::ZeroModFour { x: 0, y: 0, w: 0 },
        }
    }

    pub fn presentation(&self) -> RingPresentation {
        match self {
            Monomial::Odd { .. } => RingPresentation::Odd,
            Monomial::TwoModFour { .. } => RingPresentation::TwoModFour,
            Monomial::ZeroModFour { .. } => RingPresentation::ZeroModFour,
        }
    }

    pub fn degree(&self) -> u32 {
        match *self {
            Monomial::Odd { a } => a,
            Monomial::TwoModFour { a, b } => a + b,
            Monomial::ZeroModFour { x, y, w } => x + y + 2 * w,
        }
    }

    /// Exponents as a tuple in generator order.
    pub fn exponents(&self) -> Vec<u32> {
        match *self {
            Monomial::Odd { a } => vec![a],
            Monomial::TwoModFour { a, b } => vec![a, b],
            Monomial::ZeroModFour { x, y, w } => vec![x, y, w],
        }
    }
}

/// Normal form of a raw exponent triple `x^i y^j w^k` in `F2[x,y,w]/(y^2+xy)`.
///
/// Returns `x^i w^k` when `j = 0`, `y^j w^k` when `i = 0`, and `y^(i+j) w^k`
/// otherwise.
pub fn normalize(i: u32, j: u32, k: u32) -> Monomial {
    if i > 0 && j > 0 {
        Monomial::ZeroModFour { x: 0, y: i + j, w: k }
    } else {
        Monomial::ZeroModFour { x: i, y: j, w: k }
    }
}

/// Canonical term order: by degree, then by descending lexicographic
/// exponent tuple, so `x^2` prints before `y^2` before `w`.
pub(crate) fn canonical_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.exponents().cmp(&a.exponents()))
}

/// An element of the truncated cohomology ring: a set of normal-form
/// monomials of degree at most `trunc`, with F2 coefficients stored as
/// presence bits.
///
/// Internally each presentation packs terms into bit rows indexed by the
/// second exponent (`w` or `v2`); the `ZeroModFour` case keeps separate
/// `x`- and `y`-families, which makes the quotient relation structural:
/// products never leave normal form.
#[derive(Debug, Clone)]
pub struct CohomClass {
    kind: RingPresentation,
    trunc: u32,
    /// Rows by second exponent; bits are the first exponent (`v`, `v1` or `x`).
    part0: Vec<BitRow>,
    /// `ZeroModFour` only: rows by `w`-exponent, bits are the `y`-exponent
    /// (bit 0 never set: `y^0 w^k` lives in `part0`).
    part1: Vec<BitRow>,
    input_truncated: bool,
}

impl PartialEq for CohomClass {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.trunc == other.trunc
            && self.part0 == other.part0
            && self.part1 == other.part1
    }
}

impl Eq for CohomClass {}

impl CohomClass {
    pub fn zero(kind: RingPresentation, trunc: u32) -> Self {
        CohomClass {
            kind,
            trunc,
            part0: Vec::new(),
            part1: Vec::new(),
            input_truncated: false,
        }
    }

    pub fn one(kind: RingPresentation, trunc: u32) -> Self {
        let mut c = Self::zero(kind, trunc);
        c.toggle(&Monomial::one(kind));
        c
    }

    /// Build a class from a set of monomials; terms of degree above the
    /// truncation are dropped and flagged. Repeated monomials cancel in
    /// pairs (characteristic 2).
    pub fn from_terms<I>(kind: RingPresentation, trunc: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut c = Self::zero(kind, trunc);
        for t in terms {
            if t.presentation() != kind {
                return Err(Error::PresentationMismatch {
                    left: kind,
                    right: t.presentation(),
                });
            }
            if t.degree() > trunc {
                c.input_truncated = true;
                continue;
            }
            c.toggle(&t);
        }
        Ok(c)
    }

    pub fn from_term(kind: RingPresentation, trunc: u32, term: Monomial) -> Result<Self> {
        Self::from_terms(kind, trunc, [term])
    }

    pub fn presentation(&self) -> RingPresentation {
        self.kind
    }

    pub fn truncation_degree(&self) -> u32 {
        self.trunc
    }

    /// True when a construction or parse dropped input terms above the cap.
    pub fn input_truncated(&self) -> bool {
        self.input_truncated
    }

    pub fn is_zero(&self) -> bool {
        self.part0.iter().all(BitRow::is_zero) && self.part1.iter().all(BitRow::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.constant_term() && self.term_count() == 1
    }

    /// Coefficient of the degree-0 monomial.
    pub fn constant_term(&self) -> bool {
        self.part0.first().is_some_and(|r| r.get(0))
    }

    pub fn term_count(&self) -> usize {
        self.part0
            .iter()
            .chain(&self.part1)
            .map(|r| r.iter_bits().count())
            .sum()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        match *m {
            Monomial::Odd { a } => {
                self.kind == RingPresentation::Odd
                    && self.part0.first().is_some_and(|r| r.get(a))
            }
            Monomial::TwoModFour { a, b } => {
                self.kind == RingPresentation::TwoModFour
                    && self.part0.get(b as usize).is_some_and(|r| r.get(a))
            }
            Monomial::ZeroModFour { x, y, w } => {
                self.kind == RingPresentation::ZeroModFour
                    && if y == 0 {
                        self.part0.get(w as usize).is_some_and(|r| r.get(x))
                    } else {
                        x == 0 && self.part1.get(w as usize).is_some_and(|r| r.get(y))
                    }
            }
        }
    }

    fn toggle(&mut self, m: &Monomial) {
        debug_assert_eq!(m.presentation(), self.kind);
        debug_assert!(m.degree() <= self.trunc);
        match *m {
            Monomial::Odd { a } => toggle_row(&mut self.part0, 0, a),
            Monomial::TwoModFour { a, b } => toggle_row(&mut self.part0, b as usize, a),
            Monomial::ZeroModFour { x, y, w } => {
                debug_assert!(x == 0 || y == 0);
                if y == 0 {
                    toggle_row(&mut self.part0, w as usize, x);
                } else {
                    toggle_row(&mut self.part1, w as usize, y);
                }
            }
        }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.term_count());
        for (k, row) in self.part0.iter().enumerate() {
            for i in row.iter_bits() {
                out.push(match self.kind {
                    RingPresentation::Odd => Monomial::Odd { a: i },
                    RingPresentation::TwoModFour => Monomial::TwoModFour { a: i, b: k as u32 },
                    RingPresentation::ZeroModFour => Monomial::ZeroModFour {
                        x: i,
                        y: 0,
                        w: k as u32,
                    },
                });
            }
        }
        for (k, row) in self.part1.iter().enumerate() {
            for j in row.iter_bits() {
                out.push(Monomial::ZeroModFour {
                    x: 0,
                    y: j,
                    w: k as u32,
                });
            }
        }
        out.sort_by(canonical_cmp);
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::PresentationMismatch {
                left: self.kind,
                right: other.kind,
            });
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }

    /// Sum in characteristic 2: symmetric difference of term sets.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        xor_rows(&mut out.part0, &other.part0);
        xor_rows(&mut out.part1, &other.part1);
        out.input_truncated |= other.input_truncated;
        Ok(out)
    }

    /// Distributive product with every cross term normalized; terms of
    /// degree above the truncation are discarded.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.kind, self.trunc);
        out.input_truncated = self.input_truncated || other.input_truncated;
        let stride = self.kind.stride();
        match self.kind {
            RingPresentation::Odd | RingPresentation::TwoModFour => {
                out.part0 = poly2_mul(&self.part0, &other.part0, stride, self.trunc);
            }
            RingPresentation::ZeroModFour => {
                // x-family times x-family stays an x-family; everything
                // touching a y lands in the y-family with exponents added,
                // which is exactly the x^i y^j w^k -> y^(i+j) w^k reduction.
                out.part0 = poly2_mul(&self.part0, &other.part0, stride, self.trunc);
                let mut y = poly2_mul(&self.part0, &other.part1, stride, self.trunc);
                xor_rows(&mut y, &poly2_mul(&self.part1, &other.part0, stride, self.trunc));
                xor_rows(&mut y, &poly2_mul(&self.part1, &other.part1, stride, self.trunc));
                out.part1 = y;
            }
        }
        trim_rows(&mut out.part0);
        trim_rows(&mut out.part1);
        Ok(out)
    }

    /// Integer power. Nonnegative exponents use repeated squaring; negative
    /// exponents require constant term 1 and go through `invert_unit`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            let mag = e.checked_neg().ok_or(Error::NotAUnit)?;
            return self.invert_unit()?.pow(mag);
        }
        let mut acc = Self::one(self.kind, self.trunc);
        acc.input_truncated = self.input_truncated;
        let mut base = self.clone();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse up to the truncation degree, as the truncated
    /// geometric series in `p - 1`. Requires constant term 1.
    pub fn invert_unit(&self) -> Result<Self> {
        if !self.constant_term() {
            return Err(Error::NotAUnit);
        }
        let one = Self::one(self.kind, self.trunc);
        // (1 + n)^-1 = (1 + n)(1 + n^2)(1 + n^4)... with n nilpotent mod
        // the truncation; the factors telescope to the geometric series.
        let mut n = self.add(&one)?;
        let mut out = one.clone();
        while !n.is_zero() {
            out = out.mul(&one.add(&n)?)?;
            n = n.mul(&n)?;
        }
        Ok(out)
    }

    /// The sum of the terms of exact degree `d`.
    pub fn graded_component(&self, d: u32) -> Result<Self> {
        if d > self.trunc {
            return Err(Error::DegreeAboveTruncation {
                degree: d,
                truncation: self.trunc,
            });
        }
        let mut out = Self::zero(self.kind, self.trunc);
        let stride = self.kind.stride();
        for (k, row) in self.part0.iter().enumerate() {
            let lower = stride * k as u32;
            if lower <= d && row.get(d - lower) {
                out.toggle_raw_part0(k, d - lower);
            }
        }
        for (k, row) in self.part1.iter().enumerate() {
            let lower = stride * k as u32;
            if lower <= d && row.get(d - lower) {
                toggle_row(&mut out.part1, k, d - lower);
            }
        }
        Ok(out)
    }

    fn toggle_raw_part0(&mut self, k: usize, i: u32) {
        toggle_row(&mut self.part0, k, i);
    }

    /// True when some term has exact degree `d`.
    pub fn has_degree(&self, d: u32) -> bool {
        let stride = self.kind.stride();
        let hit = |rows: &[BitRow]| {
            rows.iter().enumerate().any(|(k, row)| {
                let lower = stride * k as u32;
                lower <= d && row.get(d - lower)
            })
        };
        hit(&self.part0) || hit(&self.part1)
    }

    pub fn max_term_degree(&self) -> Option<u32> {
        let stride = self.kind.stride();
        let best = |rows: &[BitRow]| {
            rows.iter()
                .enumerate()
                .filter_map(|(k, row)| row.max_bit().map(|b| stride * k as u32 + b))
                .max()
        };
        best(&self.part0).into_iter().chain(best(&self.part1)).max()
    }

    /// Re-truncate to a smaller degree cap.
    pub fn truncate_to(&self, trunc: u32) -> Result<Self> {
        if trunc > self.trunc {
            return Err(Error::TruncationTooSmall {
                needed: trunc,
                got: self.trunc,
            });
        }
        let mut out = self.clone();
        out.trunc = trunc;
        let stride = self.kind.stride();
        for part in [&mut out.part0, &mut out.part1] {
            part.truncate((trunc / stride) as usize + 1);
            for (k, row) in part.iter_mut().enumerate() {
                row.truncate_above(trunc - stride * k as u32);
            }
        }
        trim_rows(&mut out.part0);
        trim_rows(&mut out.part1);
        Ok(out)
    }

    /// Exponent tuples of all terms in canonical order (the JSON form).
    pub fn to_exponent_tuples(&self) -> Vec<Vec<u32>> {
        self.terms().iter().map(Monomial::exponents).collect()
    }

    /// Rebuild a class from exponent tuples; non-normal `ZeroModFour`
    /// triples are normalized on the way in.
    pub fn from_exponent_tuples(
        kind: RingPresentation,
        trunc: u32,
        tuples: &[Vec<u32>],
    ) -> Result<Self> {
        let arity = kind.generator_names().len();
        let mut terms = Vec::with_capacity(tuples.len());
        for t in tuples {
            if t.len() != arity {
                return Err(Error::ParseClass(format!(
                    "expected {arity} exponents per tuple, got {}",
                    t.len()
                )));
            }
            terms.push(match kind {
                RingPresentation::Odd => Monomial::Odd { a: t[0] },
                RingPresentation::TwoModFour => Monomial::TwoModFour { a: t[0], b: t[1] },
                RingPresentation::ZeroModFour => normalize(t[0], t[1], t[2]),
            });
        }
        Self::from_terms(kind, trunc, terms)
    }
}

fn toggle_row(rows: &mut Vec<BitRow>, k: usize, i: u32) {
    if rows.len() <= k {
        rows.resize(k + 1, BitRow::zero());
    }
    rows[k].toggle(i);
    trim_rows(rows);
}

fn xor_rows(rows: &mut Vec<BitRow>, other: &[BitRow]) {
    if rows.len() < other.len() {
        rows.resize(other.len(), BitRow::zero());
    }
    for (a, b) in rows.iter_mut().zip(other) {
        a.xor_assign(b);
    }
    trim_rows(rows);
}

fn trim_rows(rows: &mut Vec<BitRow>) {
    while rows.last().is_some_and(BitRow::is_zero) {
        rows.pop();
    }
}

/// Convolution of row vectors: `out[k] = sum_(k1+k2=k) a[k1] * b[k2]`,
/// with first exponents capped so that `first + stride * k <= trunc`.
fn poly2_mul(a: &[BitRow], b: &[BitRow], stride: u32, trunc: u32) -> Vec<BitRow> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let max_k = (trunc / stride) as usize;
    let len = (a.len() + b.len() - 1).min(max_k + 1);
    let mut out = vec![BitRow::zero(); len];
    for (k1, ra) in a.iter().enumerate() {
        if ra.is_zero() || k1 >= len {
            continue;
        }
        for (k2, rb) in b.iter().enumerate() {
            let k = k1 + k2;
            if k >= len {
                break;
            }
            if rb.is_zero() {
                continue;
            }
            let cap = trunc - stride * k as u32;
            out[k].acc_mul(ra, rb, cap);
        }
    }
    trim_rows(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmf(s: &str, trunc: u32) -> CohomClass {
        CohomClass::parse_text(RingPresentation::ZeroModFour, trunc, s).unwrap()
    }

    /// Independent rewriter: apply the single-step reduction
    /// x^i y^j w^k -> x^(i-1) y^(j+1) w^k until it no longer applies.
    fn naive_normalize(mut i: u32, mut j: u32, k: u32) -> Monomial {
        while i > 0 && j > 0 {
            i -= 1;
            j += 1;
        }
        Monomial::ZeroModFour { x: i, y: j, w: k }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(1, 1, 0), Monomial::ZeroModFour { x: 0, y: 2, w: 0 });
        assert_eq!(normalize(3, 0, 2), Monomial::ZeroModFour { x: 3, y: 0, w: 2 });
        assert_eq!(normalize(2, 3, 1), naive_normalize(2, 3, 1));
        assert_eq!(normalize(2, 3, 1), Monomial::ZeroModFour { x: 0, y: 5, w: 1 });
    }

    #[test]
    fn normalize_matches_naive_rewriter_exhaustively() {
        for i in 0..=12u32 {
            for j in 0..=12u32 {
                for k in 0..=6u32 {
                    if i + j + 2 * k <= 12 {
                        assert_eq!(normalize(i, j, k), naive_normalize(i, j, k));
                    }
                }
            }
        }
    }

    #[test]
    fn add_examples() {
        let d = 4;
        let p = zmf("1+x", d);
        assert!(p.add(&p).unwrap().is_zero());
        assert_eq!(zmf("1+y", d).add(&zmf("x+y", d)).unwrap(), zmf("1+x", d));
        // (x^2 + w) + (w + x*y) with x*y normalizing to y^2:
        let q = CohomClass::from_terms(
            RingPresentation::ZeroModFour,
            d,
            [normalize(0, 0, 1), normalize(1, 1, 0)],
        )
        .unwrap();
        assert_eq!(zmf("x^2+w", d).add(&q).unwrap(), zmf("x^2+y^2", d));
    }

    #[test]
    fn mul_examples() {
        let d = 6;
        assert_eq!(
            zmf("1+y", d).mul(&zmf("1+x+y", d)).unwrap(),
            zmf("1+x", d),
        );
        let p = zmf("1+x+y^3+w^2", d);
        assert_eq!(p.mul(&CohomClass::one(p.presentation(), d)).unwrap(), p);
        assert_eq!(
            zmf("1+x+w", d).mul(&zmf("1+x+w", d)).unwrap(),
            zmf("1+x^2+w^2", d),
        );
    }

    #[test]
    fn mul_is_presentation_checked() {
        let p = CohomClass::one(RingPresentation::Odd, 3);
        let q = CohomClass::one(RingPresentation::TwoModFour, 3);
        assert!(matches!(
            p.mul(&q),
            Err(Error::PresentationMismatch { .. })
        ));
    }

    #[test]
    fn pow_examples() {
        let one_plus_v =
            CohomClass::parse_text(RingPresentation::Odd, 5, "1+v").unwrap();
        assert!(one_plus_v.pow(0).unwrap().is_one());

        assert_eq!(
            zmf("1+x^2+w+x*w", 8).pow(2).unwrap(),
            zmf("1+x^4+w^2+x^2*w^2", 8),
        );

        let inv = CohomClass::parse_text(RingPresentation::Odd, 3, "1+v")
            .unwrap()
            .pow(-1)
            .unwrap();
        assert_eq!(
            inv,
            CohomClass::parse_text(RingPresentation::Odd, 3, "1+v+v^2+v^3").unwrap(),
        );
        let product = CohomClass::parse_text(RingPresentation::Odd, 3, "1+v")
            .unwrap()
            .mul(&inv)
            .unwrap();
        assert!(product.is_one());
    }

    #[test]
    fn pow_negative_requires_unit() {
        let v = CohomClass::parse_text(RingPresentation::Odd, 3, "v").unwrap();
        assert_eq!(v.pow(-1), Err(Error::NotAUnit));
    }

    #[test]
    fn invert_examples() {
        let one = CohomClass::one(RingPresentation::ZeroModFour, 4);
        assert_eq!(one.invert_unit().unwrap(), one);

        let p = CohomClass::parse_text(RingPresentation::Odd, 4, "1+v").unwrap();
        assert_eq!(
            p.invert_unit().unwrap(),
            CohomClass::parse_text(RingPresentation::Odd, 4, "1+v+v^2+v^3+v^4").unwrap(),
        );

        let q = zmf("1+x+w", 4);
        assert!(q.mul(&q.invert_unit().unwrap()).unwrap().is_one());
    }

    #[test]
    fn graded_component_examples() {
        let p = zmf("1+x+w", 4);
        assert_eq!(p.graded_component(2).unwrap(), zmf("w", 4));
        assert_eq!(p.graded_component(1).unwrap(), zmf("x", 4));
        let sq = p.mul(&p).unwrap();
        assert_eq!(sq.graded_component(2).unwrap(), zmf("x^2", 4));
        assert!(matches!(
            p.graded_component(5),
            Err(Error::DegreeAboveTruncation { .. })
        ));
    }

    #[test]
    fn from_terms_flags_dropped_input() {
        let c = CohomClass::from_terms(
            RingPresentation::ZeroModFour,
            1,
            [Monomial::one(RingPresentation::ZeroModFour), normalize(0, 0, 3)],
        )
        .unwrap();
        assert!(c.input_truncated());
        assert!(c.is_one());
    }

    #[test]
    fn truncate_to_drops_high_terms() {
        let p = zmf("1+x+w+x^2*w", 4);
        let t = p.truncate_to(2).unwrap();
        assert_eq!(t, zmf("1+x+w", 2));
        assert!(p.truncate_to(6).is_err());
    }
}
