//! Named exhaustive verification sweeps over bounded multiplicity lattices.
//!
//! Every sweep enumerates each representation and checks an identity or an
//! equivalence of two independent computations. Ring products are memoized
//! by the exponent keys that determine them; equality of classes at the
//! maximal truncation implies equality at every smaller one, and any
//! memoized mismatch is re-verified honestly on the concrete
//! representation before it is reported.

use rayon::prelude::*;
use serde::Serialize;

use crate::detection::{verify_detection, verify_independence_lemma};
use crate::dihedral::{
    char_values, irreducibles, restrict_klein, CharacterData, CharacterTable, DihedralParam,
    IrreducibleLabel, KleinSubgroup, MultiplicityAggregates, ParityClass, Representation,
    SylowRestriction,
};
use crate::lifting::{
    binom2_odd, lift_report_character, lift_report_cohomological, lift_report_cohomological_char,
};
use crate::products::verify_aspin;
use crate::ring_f2::{CohomClass, Monomial, RingPresentation};
use crate::swc::{
    factor_w, is_swc_trivial, swc_from_invariants, swc_invariants, top_nonzero_by_character,
    top_swc, total_swc, total_swc_multiplicative, total_swc_truncated, w_generator_product,
    SwcInvariants,
};
use crate::{Error, Result};

/// Outcome of one verification sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub suite: String,
    pub checked: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
}

impl SweepReport {
    fn new(suite: &str) -> Self {
        SweepReport {
            suite: suite.to_owned(),
            checked: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn absorb(&mut self, other: SweepReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_counterexample.is_none() {
            self.first_counterexample = other.first_counterexample;
        }
    }
}

impl std::fmt::Display for SweepReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            write!(f, "{}: PASS, {} checked", self.suite, self.checked)
        } else {
            write!(
                f,
                "{}: FAIL, {} of {} checked ({})",
                self.suite,
                self.failures,
                self.checked,
                self.first_counterexample.as_deref().unwrap_or("?")
            )
        }
    }
}

fn decode(mut idx: u64, base: u64, out: &mut [u64]) {
    for slot in out {
        *slot = idx % base;
        idx /= base;
    }
}

/// Parallel enumeration of all multiplicity vectors with entries
/// `0..=max_mult`; `check` returns a counterexample description on
/// failure and gets a per-thread scratch value.
fn sweep_vectors<S, I, F>(len: usize, max_mult: u64, init: I, check: F) -> (u64, u64, Option<String>)
where
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &[u64]) -> Option<String> + Sync + Send,
{
    let base = max_mult + 1;
    let count = base.pow(len as u32);
    let (failures, first) = (0..count)
        .into_par_iter()
        .fold(
            || (vec![0u64; len], init(), 0u64, None::<String>),
            |(mut buf, mut scratch, n, first), idx| {
                decode(idx, base, &mut buf);
                match check(&mut scratch, &buf) {
                    None => (buf, scratch, n, first),
                    Some(desc) => (buf, scratch, n + 1, first.or(Some(desc))),
                }
            },
        )
        .map(|(_, _, n, f)| (n, f))
        .reduce(|| (0, None), |(n1, f1), (n2, f2)| (n1 + n2, f1.or(f2)));
    (count, failures, first)
}

/// Per-label data for scanning multiplicity vectors without repeated
/// allocation: exact character rows and label classification.
struct RepScan {
    g: DihedralParam,
    labels: Vec<IrreducibleLabel>,
    chi_rows: Vec<[i64; 5]>,
}

impl RepScan {
    fn new(g: DihedralParam) -> Self {
        let labels = irreducibles(g);
        let chi_rows = labels
            .iter()
            .map(|&l| {
                let cd = char_values(l, g).expect("valid label");
                [
                    cd.degree(),
                    cd.at_s(),
                    cd.at_rs().unwrap_or(0),
                    cd.at_rc().unwrap_or(0),
                    cd.at_src().unwrap_or(0),
                ]
            })
            .collect();
        RepScan { g, labels, chi_rows }
    }

    fn len(&self) -> usize {
        self.labels.len()
    }

    fn max_degree(&self, max_mult: u64) -> u32 {
        (max_mult * self.labels.iter().map(|l| l.dimension()).sum::<u64>()) as u32
    }

    fn character(&self, v: &[u64]) -> Result<CharacterData> {
        let mut chi = [0i64; 5];
        for (count, row) in v.iter().zip(&self.chi_rows) {
            let c = *count as i64;
            for (acc, val) in chi.iter_mut().zip(row) {
                *acc += c * val;
            }
        }
        match self.g.parity_class() {
            ParityClass::Odd => CharacterData::new_odd(self.g, chi[0], chi[1]),
            ParityClass::ZeroModFour => {
                CharacterData::new_zero_mod_four(self.g, chi[0], chi[1], chi[2], chi[3])
            }
            ParityClass::TwoModFour => {
                CharacterData::new_two_mod_four(self.g, chi[0], chi[1], chi[2], chi[3], chi[4])
            }
        }
    }

    fn aggregates(&self, v: &[u64]) -> MultiplicityAggregates {
        let mut agg = MultiplicityAggregates::default();
        for (&count, &label) in v.iter().zip(&self.labels) {
            match label {
                IrreducibleLabel::Trivial => agg.n0 += count,
                IrreducibleLabel::ChiS => agg.ns += count,
                IrreducibleLabel::ChiR => agg.nr += count,
                IrreducibleLabel::ChiRS => agg.nrs += count,
                IrreducibleLabel::Sigma(k) if k % 2 == 0 => agg.d_even += count,
                IrreducibleLabel::Sigma(_) => agg.d_odd += count,
            }
        }
        agg
    }

    fn representation(&self, v: &[u64]) -> Representation {
        Representation::from_multiplicities(
            self.g,
            self.labels.iter().copied().zip(v.iter().copied()),
        )
        .expect("enumerated labels are valid")
    }

    fn describe(&self, v: &[u64]) -> String {
        self.representation(v).to_json().to_string()
    }

    fn sigma_parity_counts(&self) -> (u64, u64) {
        let mut even = 0;
        let mut odd = 0;
        for label in &self.labels {
            if let IrreducibleLabel::Sigma(k) = label {
                if k % 2 == 0 {
                    even += 1;
                } else {
                    odd += 1;
                }
            }
        }
        (even, odd)
    }
}

/// Formula-side product cache indexed by the character-derived exponents,
/// every entry evaluated through `swc_from_invariants`.
struct FormulaBox {
    parity: ParityClass,
    dims: [usize; 3],
    classes: Vec<CohomClass>,
}

impl FormulaBox {
    fn build(parity: ParityClass, trunc: u32, bounds: [usize; 3]) -> Result<Self> {
        let dims = [bounds[0] + 1, bounds[1] + 1, bounds[2] + 1];
        let total = dims[0] * dims[1] * dims[2];
        let classes = (0..total)
            .into_par_iter()
            .map(|idx| {
                let c = idx % dims[2];
                let b = idx / dims[2] % dims[1];
                let a = idx / (dims[2] * dims[1]);
                let inv = match parity {
                    ParityClass::ZeroModFour => SwcInvariants::ZeroModFour {
                        a: a as i64,
                        b: b as i64,
                        c: c as i64,
                    },
                    ParityClass::TwoModFour => SwcInvariants::TwoModFour {
                        e: a as i64,
                        f: b as i64,
                        g: c as i64,
                    },
                    ParityClass::Odd => SwcInvariants::Odd { t: a as i64 },
                };
                swc_from_invariants(inv, trunc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FormulaBox {
            parity,
            dims,
            classes,
        })
    }

    fn get(&self, inv: SwcInvariants) -> Option<&CohomClass> {
        let (a, b, c) = match (self.parity, inv) {
            (ParityClass::ZeroModFour, SwcInvariants::ZeroModFour { a, b, c }) => (a, b, c),
            (ParityClass::TwoModFour, SwcInvariants::TwoModFour { e, f, g }) => (e, f, g),
            (ParityClass::Odd, SwcInvariants::Odd { t }) => (t, 0, 0),
            _ => return None,
        };
        if a < 0 || b < 0 || c < 0 {
            return None;
        }
        let (a, b, c) = (a as usize, b as usize, c as usize);
        if a >= self.dims[0] || b >= self.dims[1] || c >= self.dims[2] {
            return None;
        }
        Some(&self.classes[(a * self.dims[1] + b) * self.dims[2] + c])
    }
}

/// Oracle-side cache: products of the tabulated per-irreducible classes,
/// built by chained multiplication and indexed by the constituent counts
/// `(ns + d_even, nr, nrs, d_odd)`.
struct OracleBox {
    dims: [usize; 4],
    classes: Vec<CohomClass>,
}

fn chain_powers(base: &CohomClass, max: usize) -> Result<Vec<CohomClass>> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(CohomClass::one(
        base.presentation(),
        base.truncation_degree(),
    ));
    for i in 1..=max {
        let next = out[i - 1].mul(base)?;
        out.push(next);
    }
    Ok(out)
}

impl OracleBox {
    /// `tables` are the per-constituent classes for `chi_s`/even sigma,
    /// `chi_r`, `chi_rs` and odd sigma, in that order.
    fn build(tables: [&CohomClass; 4], bounds: [usize; 4]) -> Result<Self> {
        let dims = [
            bounds[0] + 1,
            bounds[1] + 1,
            bounds[2] + 1,
            bounds[3] + 1,
        ];
        let t0 = chain_powers(tables[0], bounds[0])?;
        let t1 = chain_powers(tables[1], bounds[1])?;
        let t2 = chain_powers(tables[2], bounds[2])?;
        let t3 = chain_powers(tables[3], bounds[3])?;
        let mut classes = Vec::with_capacity(dims.iter().product());
        for a in &t0 {
            for b in &t1 {
                let ab = a.mul(b)?;
                for c in &t2 {
                    let abc = ab.mul(c)?;
                    for d in &t3 {
                        classes.push(abc.mul(d)?);
                    }
                }
            }
        }
        Ok(OracleBox { dims, classes })
    }

    fn get(&self, key: [u64; 4]) -> Option<&CohomClass> {
        let k: Vec<usize> = key.iter().map(|&v| v as usize).collect();
        if k.iter().zip(&self.dims).any(|(v, d)| v >= d) {
            return None;
        }
        Some(&self.classes[((k[0] * self.dims[1] + k[1]) * self.dims[2] + k[2]) * self.dims[3] + k[3]])
    }
}

fn single_term(kind: RingPresentation, exps: &[u32], trunc: u32) -> CohomClass {
    let mono = match kind {
        RingPresentation::Odd => Monomial::Odd { a: exps[0] },
        RingPresentation::TwoModFour => Monomial::TwoModFour {
            a: exps[0],
            b: exps[1],
        },
        RingPresentation::ZeroModFour => crate::ring_f2::normalize(exps[0], exps[1], exps[2]),
    };
    CohomClass::from_term(kind, trunc, mono).expect("tabulated term")
}

fn table_classes(g: DihedralParam, trunc: u32) -> [CohomClass; 4] {
    let one = |kind| CohomClass::one(kind, trunc);
    match g.parity_class() {
        ParityClass::ZeroModFour => {
            let kind = RingPresentation::ZeroModFour;
            [
                // 1+x, 1+y, 1+x+y, 1+x+w
                one(kind)
                    .add(&single_term(kind, &[1, 0, 0], trunc))
                    .unwrap(),
                one(kind)
                    .add(&single_term(kind, &[0, 1, 0], trunc))
                    .unwrap(),
                one(kind)
                    .add(&single_term(kind, &[1, 0, 0], trunc))
                    .unwrap()
                    .add(&single_term(kind, &[0, 1, 0], trunc))
                    .unwrap(),
                one(kind)
                    .add(&single_term(kind, &[1, 0, 0], trunc))
                    .unwrap()
                    .add(&single_term(kind, &[0, 0, 1], trunc))
                    .unwrap(),
            ]
        }
        ParityClass::TwoModFour => {
            let kind = RingPresentation::TwoModFour;
            let v1 = single_term(kind, &[1, 0], trunc);
            let v2 = single_term(kind, &[0, 1], trunc);
            let one_v1 = one(kind).add(&v1).unwrap();
            let one_v12 = one(kind).add(&v1).unwrap().add(&v2).unwrap();
            [
                // 1+v2 (chi_s and even sigma), 1+v1 (chi_r),
                // 1+v1+v2 (chi_rs), (1+v1)(1+v1+v2) (odd sigma)
                one(kind).add(&v2).unwrap(),
                one_v1.clone(),
                one_v12.clone(),
                one_v1.mul(&one_v12).unwrap(),
            ]
        }
        ParityClass::Odd => {
            let kind = RingPresentation::Odd;
            let one_v = one(kind).add(&single_term(kind, &[1], trunc)).unwrap();
            [one_v.clone(), one(kind), one(kind), one_v]
        }
    }
}

fn formula_bounds(scan: &RepScan, max_mult: u64) -> [usize; 3] {
    let (n_even, n_odd) = scan.sigma_parity_counts();
    let mm = max_mult as usize;
    match scan.g.parity_class() {
        ParityClass::ZeroModFour => [
            mm * (2 + n_even as usize),
            mm * (2 + n_even as usize),
            mm * n_odd as usize,
        ],
        ParityClass::TwoModFour => [
            mm * (1 + n_odd as usize),
            mm * (1 + n_even as usize),
            mm * (1 + n_odd as usize),
        ],
        ParityClass::Odd => [mm * (1 + (n_even + n_odd) as usize), 0, 0],
    }
}

fn oracle_key(g: DihedralParam, agg: &MultiplicityAggregates) -> [u64; 4] {
    match g.parity_class() {
        // Odd: every nontrivial constituent contributes one factor 1+v.
        ParityClass::Odd => [agg.ns + agg.d_even + agg.d_odd, 0, 0, 0],
        _ => [agg.ns + agg.d_even, agg.nr, agg.nrs, agg.d_odd],
    }
}

fn oracle_bounds(scan: &RepScan, max_mult: u64) -> [usize; 4] {
    let (n_even, n_odd) = scan.sigma_parity_counts();
    let mm = max_mult as usize;
    match scan.g.parity_class() {
        ParityClass::Odd => [mm * (1 + (n_even + n_odd) as usize), 0, 0, 0],
        _ => [mm * (1 + n_even as usize), mm, mm, mm * n_odd as usize],
    }
}

/// Criterion sweep: the character formula total class agrees bit-exactly
/// with the per-irreducible multiplicative oracle for every multiplicity
/// vector bounded by `max_mult`.
pub fn formula_oracle(m: u64, max_mult: u64) -> Result<SweepReport> {
    let g = DihedralParam::new(m)?;
    let scan = RepScan::new(g);
    let dmax = scan.max_degree(max_mult);
    let formula = FormulaBox::build(g.parity_class(), dmax, formula_bounds(&scan, max_mult))?;
    let tables = table_classes(g, dmax);
    let oracle = OracleBox::build(
        [&tables[0], &tables[1], &tables[2], &tables[3]],
        oracle_bounds(&scan, max_mult),
    )?;

    let (checked, failures, first) = sweep_vectors(
        scan.len(),
        max_mult,
        || (),
        |_, v| {
            let fail = |detail: String| Some(format!("{}: {detail}", scan.describe(v)));
            let chi = match scan.character(v) {
                Ok(chi) => chi,
                Err(e) => return fail(e.to_string()),
            };
            let inv = match swc_invariants(&chi) {
                Ok(inv) => inv,
                Err(e) => return fail(e.to_string()),
            };
            let Some(lhs) = formula.get(inv) else {
                return fail(format!("exponents {inv:?} out of the certified box"));
            };
            let Some(rhs) = oracle.get(oracle_key(g, &scan.aggregates(v))) else {
                return fail("oracle key out of the certified box".into());
            };
            if lhs == rhs {
                return None;
            }
            // Memoized classes live at the global truncation; re-verify at
            // the representation's own degree before reporting.
            let rep = scan.representation(v);
            match (total_swc(&rep), total_swc_multiplicative(&rep)) {
                (Ok(a), Ok(b)) if a == b => None,
                (Ok(a), Ok(b)) => fail(format!("formula {a} != oracle {b}")),
                (Err(e), _) | (_, Err(e)) => fail(e.to_string()),
            }
        },
    );
    Ok(SweepReport {
        suite: format!("formula-oracle m={m} max-mult={max_mult}"),
        checked,
        failures,
        first_counterexample: first,
    })
}

/// Criterion sweep: cohomological and character lift reports agree on
/// every representation.
pub fn lifting_equivalence(m: u64, max_mult: u64) -> Result<SweepReport> {
    let g = DihedralParam::new(m)?;
    let scan = RepScan::new(g);
    let (checked, failures, first) = sweep_vectors(
        scan.len(),
        max_mult,
        || (),
        |_, v| {
            let chi = match scan.character(v) {
                Ok(chi) => chi,
                Err(e) => return Some(format!("{}: {e}", scan.describe(v))),
            };
            let coh = match lift_report_cohomological_char(&chi) {
                Ok(r) => r,
                Err(e) => return Some(format!("{}: {e}", scan.describe(v))),
            };
            let chr = match lift_report_character(&chi) {
                Ok(r) => r,
                Err(e) => return Some(format!("{}: {e}", scan.describe(v))),
            };
            if coh.agrees_with(&chr) {
                None
            } else {
                Some(format!(
                    "{}: cohomological {coh:?} vs character {chr:?}",
                    scan.describe(v)
                ))
            }
        },
    );
    Ok(SweepReport {
        suite: format!("lifting-equivalence m={m} max-mult={max_mult}"),
        checked,
        failures,
        first_counterexample: first,
    })
}

/// Criterion sweep: the ring-side top-class nonvanishing agrees with the
/// character-side criterion on every representation.
pub fn topswc_equivalence(m: u64, max_mult: u64) -> Result<SweepReport> {
    let g = DihedralParam::new(m)?;
    let scan = RepScan::new(g);
    let dmax = scan.max_degree(max_mult);
    let formula = FormulaBox::build(g.parity_class(), dmax, formula_bounds(&scan, max_mult))?;
    let (checked, failures, first) = sweep_vectors(
        scan.len(),
        max_mult,
        || (),
        |_, v| {
            let fail = |detail: String| Some(format!("{}: {detail}", scan.describe(v)));
            let chi = match scan.character(v) {
                Ok(chi) => chi,
                Err(e) => return fail(e.to_string()),
            };
            let inv = match swc_invariants(&chi) {
                Ok(inv) => inv,
                Err(e) => return fail(e.to_string()),
            };
            let Some(total) = formula.get(inv) else {
                return fail(format!("exponents {inv:?} out of the certified box"));
            };
            let degree = chi.degree() as u32;
            let ring_nonzero = total.has_degree(degree);
            let char_nonzero = match top_nonzero_by_character(&chi) {
                Ok(b) => b,
                Err(e) => return fail(e.to_string()),
            };
            if ring_nonzero == char_nonzero {
                return None;
            }
            match top_swc(&scan.representation(v)) {
                Ok(_) => None,
                Err(e) => fail(e.to_string()),
            }
        },
    );
    Ok(SweepReport {
        suite: format!("topswc-equivalence m={m} max-mult={max_mult}"),
        checked,
        failures,
        first_counterexample: first,
    })
}

/// Criterion sweep: `is_swc_trivial` holds exactly on multiples of the
/// trivial representation.
pub fn swc_triviality(m: u64, max_mult: u64) -> Result<SweepReport> {
    let g = DihedralParam::new(m)?;
    let scan = RepScan::new(g);
    let (checked, failures, first) = sweep_vectors(
        scan.len(),
        max_mult,
        || (),
        |_, v| {
            let rep = scan.representation(v);
            match is_swc_trivial(&rep) {
                Ok(trivial) if trivial == rep.is_multiple_of_trivial() => None,
                Ok(trivial) => Some(format!(
                    "{}: is_swc_trivial = {trivial} but multiple-of-trivial = {}",
                    scan.describe(v),
                    rep.is_multiple_of_trivial()
                )),
                Err(e) => Some(format!("{}: {e}", scan.describe(v))),
            }
        },
    );
    Ok(SweepReport {
        suite: format!("swc-triviality m={m} max-mult={max_mult}"),
        checked,
        failures,
        first_counterexample: first,
    })
}

/// Detection of the mod-2 cohomology by `E1, E2` in every degree up to
/// `max_degree`.
pub fn detection(max_degree: u32) -> SweepReport {
    let mut report = SweepReport::new(&format!("detection max-degree={max_degree}"));
    for d in 0..=max_degree {
        report.checked += 1;
        if !verify_detection(d) {
            report.failures += 1;
            report
                .first_counterexample
                .get_or_insert_with(|| format!("restriction not injective in degree {d}"));
        }
    }
    report
}

/// Linear independence of the polynomial families supporting detection.
pub fn independence(max_degree: u32) -> SweepReport {
    let mut report = SweepReport::new(&format!("independence max-degree={max_degree}"));
    for d in 0..=max_degree {
        report.checked += 1;
        if !verify_independence_lemma(d) {
            report.failures += 1;
            report
                .first_counterexample
                .get_or_insert_with(|| format!("dependent family in degree {d}"));
        }
    }
    report
}

/// Aspinoriality of all nontrivial irreducibles of `D_m x D_m'`.
pub fn aspin(m: u64, m_prime: u64) -> Result<SweepReport> {
    let report = verify_aspin(m, m_prime)?;
    Ok(SweepReport {
        suite: format!("aspin m={m} m2={m_prime}"),
        checked: report.pairs_checked,
        failures: u64::from(!report.all_aspinorial),
        first_counterexample: report.first_counterexample,
    })
}

/// Pairwise product sweep: for every unordered pair of nonzero
/// representations over the given group orders, the restriction-based
/// spinoriality criterion, its conditions form, and the edge-condition /
/// scaled-restriction equivalence must all agree. Both orders of a pair
/// reduce to the same three boolean checks, so unordered enumeration
/// covers the ordered sweep.
pub fn product_equivalence(ms: &[u64], max_mult: u64) -> Result<SweepReport> {
    struct Side {
        rep: Representation,
        degree: u64,
        w1_zero: bool,
        /// edge[p][q]: vanishing of `p*w2 + q*w1^2`.
        edge: [[bool; 2]; 2],
        /// spinoriality of `d * rep`, honestly computed per scale factor.
        scaled_spin: Vec<bool>,
    }

    let mut sides = Vec::new();
    for &m in ms {
        let g = DihedralParam::new(m)?;
        let scan = RepScan::new(g);
        let base = max_mult + 1;
        let count = base.pow(scan.len() as u32);
        let mut buf = vec![0u64; scan.len()];
        for idx in 0..count {
            decode(idx, base, &mut buf);
            if buf.iter().all(|&c| c == 0) {
                continue;
            }
            let rep = scan.representation(&buf);
            let low = total_swc_truncated(&rep, 2)?;
            let w1 = low.graded_component(1)?;
            let w2 = low.graded_component(2)?;
            let w1_sq = w1.mul(&w1)?;
            let edge = [
                [true, w1_sq.is_zero()],
                [w2.is_zero(), w2.add(&w1_sq)?.is_zero()],
            ];
            sides.push(Side {
                degree: rep.degree(),
                w1_zero: w1.is_zero(),
                edge,
                scaled_spin: Vec::new(),
                rep,
            });
        }
    }
    let max_degree = sides.iter().map(|s| s.degree).max().unwrap_or(0);
    let scaled: Vec<Vec<bool>> = sides
        .par_iter()
        .map(|side| {
            (0..=max_degree)
                .map(|d| {
                    if d == 0 {
                        true
                    } else {
                        lift_report_cohomological(&side.rep.scale(d))
                            .map(|r| r.is_spinorial())
                            .unwrap_or(false)
                    }
                })
                .collect()
        })
        .collect();
    for (side, spins) in sides.iter_mut().zip(scaled) {
        side.scaled_spin = spins;
    }

    let n = sides.len();
    let (failures, first) = (0..n)
        .into_par_iter()
        .fold(
            || (0u64, None::<String>),
            |(mut fails, mut first), i| {
                let a = &sides[i];
                for b in &sides[i..] {
                    let (da, db) = (a.degree, b.degree);
                    let c1 = a.edge[(db % 2) as usize][usize::from(binom2_odd(db as i64 + 1))];
                    let c3 = b.edge[(da % 2) as usize][usize::from(binom2_odd(da as i64 + 1))];
                    let c2 = (da * db + 1) % 2 == 0 || a.w1_zero || b.w1_zero;
                    let i_left = a.scaled_spin[db as usize];
                    let i_right = b.scaled_spin[da as usize];
                    // Lemma-level equivalences and the two-part criterion.
                    let ok = c1 == i_left && c3 == i_right && ((c1 && c2 && c3) == (i_left && i_right && c2));
                    if !ok {
                        fails += 1;
                        if first.is_none() {
                            first = Some(format!(
                                "{} (x) {}: conditions ({c1},{c2},{c3}) vs restrictions ({i_left},{i_right})",
                                a.rep.to_json(),
                                b.rep.to_json()
                            ));
                        }
                    }
                }
                (fails, first)
            },
        )
        .reduce(|| (0, None), |(n1, f1), (n2, f2)| (n1 + n2, f1.or(f2)));

    Ok(SweepReport {
        suite: format!("product-equivalence ms={ms:?} max-mult={max_mult}"),
        checked: (n as u64) * (n as u64 + 1) / 2,
        failures,
        first_counterexample: first,
    })
}

/// Oracle hygiene: the numeric decomposition round-trips every bounded
/// multiplicity vector with residuals within the gate.
pub fn decompose_roundtrip(max_m: u64, max_mult: u64) -> Result<SweepReport> {
    let mut total = SweepReport::new(&format!(
        "decompose-roundtrip max-m={max_m} max-mult={max_mult}"
    ));
    for m in 1..=max_m {
        let g = DihedralParam::new(m)?;
        let table = CharacterTable::new(g);
        let p = table.labels().len();
        let order = g.order() as usize;
        let (checked, failures, first) = sweep_vectors(
            p,
            max_mult,
            || (vec![0f64; order], vec![0u64; p]),
            |(f, out), v| {
                f.fill(0.0);
                for (i, &count) in v.iter().enumerate() {
                    if count > 0 {
                        let c = count as f64;
                        for (fe, re) in f.iter_mut().zip(table.row(i)) {
                            *fe += c * re;
                        }
                    }
                }
                match table.decompose_values_into(f, out) {
                    Err(e) => Some(format!("m={m} mult={v:?}: {e}")),
                    Ok(()) if out.as_slice() == v => None,
                    Ok(()) => Some(format!("m={m} mult={v:?}: decomposed to {out:?}")),
                }
            },
        );
        total.absorb(SweepReport {
            suite: String::new(),
            checked,
            failures,
            first_counterexample: first,
        });
    }
    Ok(total)
}

/// Exponent recovery round-trip over the full signed box.
pub fn factor_roundtrip(bound: u32, trunc: u32) -> Result<SweepReport> {
    let mut report = SweepReport::new(&format!("factor-roundtrip bound={bound} trunc={trunc}"));
    let b = i64::from(bound);
    for a in -b..=b {
        for bb in -b..=b {
            for c in -b..=b {
                report.checked += 1;
                let cls = w_generator_product(a, bb, c, trunc)?;
                match factor_w(&cls, bound) {
                    Ok(Some(found)) if found == (a, bb, c) => {}
                    other => {
                        report.failures += 1;
                        report.first_counterexample.get_or_insert_with(|| {
                            format!("({a},{bb},{c}) recovered as {other:?}")
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The closed form for the regular representation:
/// `w(reg(D_m)) = (1 + x^2 + w + xw)^(m/2)` for `m = 0 mod 4`.
pub fn regular_identity(ms: &[u64]) -> Result<SweepReport> {
    let mut report = SweepReport::new(&format!("regular-identity ms={ms:?}"));
    for &m in ms {
        let g = DihedralParam::new(m)?;
        g.require_zero_mod_four("0 mod 4 for the regular-representation identity")?;
        report.checked += 1;
        let reg = Representation::regular(g);
        let trunc = reg.degree() as u32;
        let kind = RingPresentation::ZeroModFour;
        let base = CohomClass::parse_text(kind, trunc, "1+x^2+w+x*w")?;
        let expected = base.pow((m / 2) as i64)?;
        let got = total_swc(&reg)?;
        if got != expected {
            report.failures += 1;
            report
                .first_counterexample
                .get_or_insert_with(|| format!("m={m}: {got} != {expected}"));
        }
    }
    Ok(report)
}

/// The worked lifting table: for `m = 0 mod 4`, (a) every nontrivial
/// irreducible fails `~O` and `Pin-`; (b) the `Pin+` failures are exactly
/// the odd-indexed two-dimensional irreducibles; (c) `2 chi_s` lifts to
/// `~O` but not `Pin-`; (d) `4 chi_s` and the regular representation lift
/// to all four covers.
pub fn lifting_examples(ms: &[u64]) -> Result<SweepReport> {
    let mut report = SweepReport::new(&format!("lifting-examples ms={ms:?}"));
    let fail = |report: &mut SweepReport, msg: String| {
        report.failures += 1;
        report.first_counterexample.get_or_insert(msg);
    };
    for &m in ms {
        let g = DihedralParam::new(m)?;
        g.require_zero_mod_four("0 mod 4 for the worked lifting table")?;
        for label in irreducibles(g) {
            if label == IrreducibleLabel::Trivial {
                continue;
            }
            report.checked += 1;
            let rep = Representation::irreducible(g, label)?;
            let coh = lift_report_cohomological(&rep)?;
            let chr = lift_report_character(&rep.character())?;
            if !coh.agrees_with(&chr) {
                fail(&mut report, format!("m={m} {}: methods disagree", label.name()));
                continue;
            }
            if coh.lifts_tilde_o || coh.lifts_pin_minus {
                fail(
                    &mut report,
                    format!("m={m} {}: should fail ~O and Pin-", label.name()),
                );
            }
            let expect_pin_plus = !matches!(label, IrreducibleLabel::Sigma(k) if k % 2 == 1);
            if coh.lifts_pin_plus != expect_pin_plus {
                fail(
                    &mut report,
                    format!(
                        "m={m} {}: Pin+ = {}, expected {expect_pin_plus}",
                        label.name(),
                        coh.lifts_pin_plus
                    ),
                );
            }
        }

        let chi_s = |count| {
            Representation::from_multiplicities(g, [(IrreducibleLabel::ChiS, count)])
                .expect("chi_s valid")
        };
        report.checked += 1;
        let two = lift_report_cohomological(&chi_s(2))?;
        if !(two.lifts_tilde_o && !two.lifts_pin_minus) {
            fail(&mut report, format!("m={m} 2chi_s: expected ~O yes, Pin- no"));
        }
        report.checked += 1;
        let four = lift_report_cohomological(&chi_s(4))?;
        if !(four.lifts_tilde_o && four.lifts_pin_plus && four.lifts_pin_minus) {
            fail(&mut report, format!("m={m} 4chi_s: expected all covers"));
        }
        report.checked += 1;
        let reg = lift_report_cohomological(&Representation::regular(g))?;
        if !(reg.lifts_tilde_o && reg.lifts_pin_plus && reg.lifts_pin_minus) {
            fail(&mut report, format!("m={m} reg: expected all covers"));
        }
    }
    Ok(report)
}

/// Sylow compatibility: the total class of a representation equals the
/// total class of its restriction to `D_(2^n)` under the shared generator
/// names. Small lattices run the full operation chain per representation;
/// large ones derive both exponent triples from exact characters and
/// compare memoized classes, re-verifying any mismatch honestly.
pub fn sylow_compatibility(m: u64, max_mult: u64) -> Result<SweepReport> {
    let g = DihedralParam::new(m)?;
    let restrictor = SylowRestriction::new(g)?;
    let target = restrictor.target();
    let scan = RepScan::new(g);
    let base = max_mult + 1;
    let count = base.pow(scan.len() as u32);
    let suite = format!("sylow-compatibility m={m} max-mult={max_mult}");

    if count <= 30_000 {
        let (checked, failures, first) = sweep_vectors(
            scan.len(),
            max_mult,
            || (),
            |_, v| {
                let rep = scan.representation(v);
                let restricted = match restrictor.restrict(&rep) {
                    Ok(r) => r,
                    Err(e) => return Some(format!("{}: {e}", scan.describe(v))),
                };
                match (total_swc(&rep), total_swc(&restricted)) {
                    (Ok(a), Ok(b)) if a == b => None,
                    (Ok(a), Ok(b)) => {
                        Some(format!("{}: {a} != {b}", scan.describe(v)))
                    }
                    (Err(e), _) | (_, Err(e)) => Some(format!("{}: {e}", scan.describe(v))),
                }
            },
        );
        return Ok(SweepReport {
            suite,
            checked,
            failures,
            first_counterexample: first,
        });
    }

    // Exact character rows of the per-irreducible restrictions; restriction
    // and character are both additive, so the dot products below are the
    // honest character values of the restricted representation.
    let chi_tgt_rows: Vec<[i64; 5]> = scan
        .labels
        .iter()
        .map(|&l| {
            let cd = restrictor
                .of_irreducible(l)
                .expect("labels enumerate validly")
                .character();
            [
                cd.degree(),
                cd.at_s(),
                cd.at_rs().unwrap_or(0),
                cd.at_rc().unwrap_or(0),
                cd.at_src().unwrap_or(0),
            ]
        })
        .collect();
    let dmax = scan.max_degree(max_mult);
    let mut cache: std::collections::HashMap<SwcInvariants, CohomClass> =
        std::collections::HashMap::new();
    let mut report = SweepReport::new(&suite);
    report.checked = count;
    let mut buf = vec![0u64; scan.len()];
    for idx in 0..count {
        decode(idx, base, &mut buf);
        let outcome = (|| -> Result<Option<String>> {
            let chi_src = scan.character(&buf)?;
            let mut chi = [0i64; 5];
            for (count, row) in buf.iter().zip(&chi_tgt_rows) {
                let c = *count as i64;
                for (acc, val) in chi.iter_mut().zip(row) {
                    *acc += c * val;
                }
            }
            let chi_tgt = match target.parity_class() {
                ParityClass::Odd => CharacterData::new_odd(target, chi[0], chi[1])?,
                ParityClass::ZeroModFour => {
                    CharacterData::new_zero_mod_four(target, chi[0], chi[1], chi[2], chi[3])?
                }
                ParityClass::TwoModFour => CharacterData::new_two_mod_four(
                    target, chi[0], chi[1], chi[2], chi[3], chi[4],
                )?,
            };
            if chi_src.degree() != chi_tgt.degree() {
                return Ok(Some("restriction changed the degree".into()));
            }
            let inv_src = swc_invariants(&chi_src)?;
            let inv_tgt = swc_invariants(&chi_tgt)?;
            if !cache.contains_key(&inv_src) {
                cache.insert(inv_src, swc_from_invariants(inv_src, dmax)?);
            }
            if !cache.contains_key(&inv_tgt) {
                cache.insert(inv_tgt, swc_from_invariants(inv_tgt, dmax)?);
            }
            if cache[&inv_src] == cache[&inv_tgt] {
                return Ok(None);
            }
            // Mismatch at the memoized truncation: re-verify honestly.
            let rep = scan.representation(&buf);
            let restricted = restrictor.restrict(&rep)?;
            let (a, b) = (total_swc(&rep)?, total_swc(&restricted)?);
            Ok((a != b).then(|| format!("{a} != {b}")))
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(msg)) => {
                report.failures += 1;
                report
                    .first_counterexample
                    .get_or_insert_with(|| format!("{}: {msg}", scan.describe(&buf)));
            }
            Err(e) => {
                report.failures += 1;
                report
                    .first_counterexample
                    .get_or_insert_with(|| format!("{}: {e}", scan.describe(&buf)));
            }
        }
    }
    Ok(report)
}

/// Naturality of restriction: restricting the total class to `E_i` equals
/// the total class of the restricted representation computed on the
/// Klein-four side.
pub fn restriction_naturality(m: u64, max_mult: u64) -> Result<SweepReport> {
    let g = DihedralParam::new(m)?;
    g.require_zero_mod_four("0 mod 4 for restriction naturality")?;
    let scan = RepScan::new(g);
    let (checked, failures, first) = sweep_vectors(
        scan.len(),
        max_mult,
        || (),
        |_, v| {
            let rep = scan.representation(v);
            let total = match total_swc(&rep) {
                Ok(t) => t,
                Err(e) => return Some(format!("{}: {e}", scan.describe(v))),
            };
            for which in [KleinSubgroup::E1, KleinSubgroup::E2] {
                let outcome = (|| -> Result<bool> {
                    let lhs = crate::detection::restrict_class(&total, which)?;
                    let rhs = restrict_klein(&rep, which)?
                        .total_swc_truncated(total.truncation_degree())?;
                    Ok(lhs.class() == &rhs)
                })();
                match outcome {
                    Ok(true) => {}
                    Ok(false) => {
                        return Some(format!("{}: naturality fails on {which:?}", scan.describe(v)))
                    }
                    Err(e) => return Some(format!("{}: {e}", scan.describe(v))),
                }
            }
            None
        },
    );
    Ok(SweepReport {
        suite: format!("restriction-naturality m={m} max-mult={max_mult}"),
        checked,
        failures,
        first_counterexample: first,
    })
}

#[allow(clippy::type_complexity)]
fn _asserts() {
    fn is_send_sync<T: Send + Sync>() {}
    is_send_sync::<SweepReport>();
    is_send_sync::<Error>();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_oracle_small() {
        for m in [1, 2, 3, 4, 6] {
            let report = formula_oracle(m, 2).unwrap();
            assert!(report.passed(), "{report}");
        }
        let report = formula_oracle(4, 3).unwrap();
        assert_eq!(report.checked, 1024);
        assert!(report.passed());
    }

    #[test]
    fn lifting_equivalence_small() {
        for m in [1, 2, 3, 4, 5, 6] {
            let report = lifting_equivalence(m, 2).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn topswc_small() {
        for m in [1, 2, 3, 4, 6] {
            let report = topswc_equivalence(m, 2).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn triviality_small() {
        let report = swc_triviality(4, 2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn detection_and_independence_small() {
        assert!(detection(8).passed());
        assert!(independence(8).passed());
    }

    #[test]
    fn aspin_small() {
        let report = aspin(4, 4).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 24);
    }

    #[test]
    fn products_small() {
        let report = product_equivalence(&[3, 4], 1).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn decompose_small() {
        let report = decompose_roundtrip(6, 2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn factor_small() {
        let report = factor_roundtrip(1, 6).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.checked, 27);
    }

    #[test]
    fn regular_small() {
        assert!(regular_identity(&[4, 8]).unwrap().passed());
        assert!(regular_identity(&[6]).is_err());
    }

    #[test]
    fn examples_small() {
        assert!(lifting_examples(&[4, 8]).unwrap().passed());
    }

    #[test]
    fn sylow_small() {
        let report = sylow_compatibility(12, 1).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn naturality_small() {
        let report = restriction_naturality(4, 1).unwrap();
        assert!(report.passed(), "{report}");
    }
}
