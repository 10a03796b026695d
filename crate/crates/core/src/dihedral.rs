//! Representation theory of the dihedral group `D_m` of order `2m`:
//! irreducible labels, exact character values at the reference elements,
//! restriction to the detecting Klein-four subgroups and to the Sylow
//! 2-subgroup, and a numeric decomposition oracle.
//!
//! Elements are kept in the canonical form `s^e * r^j` with `0 <= j < m`,
//! words being normalized through `r s = s r^-1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ring_f2::{CohomClass, Monomial, RingPresentation};
use crate::{Error, Result};

/// Parity class of `m`, which selects the presentation of the mod-2
/// cohomology ring and the applicable character formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParityClass {
    Odd,
    TwoModFour,
    ZeroModFour,
}

impl ParityClass {
    pub fn presentation(self) -> RingPresentation {
        match self {
            ParityClass::Odd => RingPresentation::Odd,
            ParityClass::TwoModFour => RingPresentation::TwoModFour,
            ParityClass::ZeroModFour => RingPresentation::ZeroModFour,
        }
    }
}

/// The group `D_m = <r, s | r^m = 1, s^2 = 1, rs = sr^-1>` together with
/// its parity class and Sylow decomposition `m = 2^n * l`, `l` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralParam {
    m: u64,
    n: u32,
    l: u64,
    parity: ParityClass,
}

impl DihedralParam {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDihedralOrder(m));
        }
        let n = m.trailing_zeros();
        let l = m >> n;
        let parity = if m % 2 == 1 {
            ParityClass::Odd
        } else if m % 4 == 2 {
            ParityClass::TwoModFour
        } else {
            ParityClass::ZeroModFour
        };
        Ok(DihedralParam { m, n, l, parity })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Group order `2m`.
    pub fn order(&self) -> u64 {
        2 * self.m
    }

    pub fn parity_class(&self) -> ParityClass {
        self.parity
    }

    pub fn presentation(&self) -> RingPresentation {
        self.parity.presentation()
    }

    /// `(n, l)` with `m = 2^n * l` and `l` odd.
    pub fn sylow(&self) -> (u32, u64) {
        (self.n, self.l)
    }

    /// The Sylow 2-subgroup `D_(2^n)` as a group in its own right.
    pub fn sylow_subgroup(&self) -> DihedralParam {
        DihedralParam::new(1 << self.n).expect("2^n >= 1")
    }

    pub(crate) fn require_zero_mod_four(&self, what: &'static str) -> Result<()> {
        if self.parity != ParityClass::ZeroModFour {
            return Err(Error::WrongParityClass {
                expected: what,
                m: self.m,
            });
        }
        Ok(())
    }
}

/// Label of an irreducible representation of `D_m`.
///
/// `ChiR` and `ChiRS` exist only for even `m`; `Sigma(k)` ranges over
/// `1..=m/2-1` for even `m` and `1..=(m-1)/2` for odd `m`. For `m = 1`
/// the label `ChiS` is the sign character of `C_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IrreducibleLabel {
    Trivial,
    ChiS,
    ChiR,
    ChiRS,
    Sigma(u32),
}

impl IrreducibleLabel {
    pub fn dimension(&self) -> u64 {
        match self {
            IrreducibleLabel::Sigma(_) => 2,
            _ => 1,
        }
    }

    pub fn is_valid_for(&self, g: DihedralParam) -> bool {
        match *self {
            IrreducibleLabel::Trivial | IrreducibleLabel::ChiS => true,
            IrreducibleLabel::ChiR | IrreducibleLabel::ChiRS => g.m() % 2 == 0,
            IrreducibleLabel::Sigma(k) => k >= 1 && u64::from(k) <= sigma_count(g),
        }
    }

    pub fn name(&self) -> String {
        match self {
            IrreducibleLabel::Trivial => "1".to_owned(),
            IrreducibleLabel::ChiS => "chi_s".to_owned(),
            IrreducibleLabel::ChiR => "chi_r".to_owned(),
            IrreducibleLabel::ChiRS => "chi_rs".to_owned(),
            IrreducibleLabel::Sigma(k) => format!("sigma_{k}"),
        }
    }
}

/// Number of two-dimensional irreducibles of `D_m`.
pub fn sigma_count(g: DihedralParam) -> u64 {
    if g.m() % 2 == 0 {
        g.m() / 2 - 1
    } else {
        (g.m() - 1) / 2
    }
}

/// The complete duplicate-free list of irreducibles of `D_m`.
pub fn irreducibles(g: DihedralParam) -> Vec<IrreducibleLabel> {
    let mut out = vec![IrreducibleLabel::Trivial, IrreducibleLabel::ChiS];
    if g.m() % 2 == 0 {
        out.push(IrreducibleLabel::ChiR);
        out.push(IrreducibleLabel::ChiRS);
    }
    out.extend((1..=sigma_count(g)).map(|k| IrreducibleLabel::Sigma(k as u32)));
    out
}

/// A group element in canonical form `s^e * r^j`, `0 <= j < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralElement {
    reflection: bool,
    rotation: u64,
}

impl DihedralElement {
    pub fn identity() -> Self {
        DihedralElement {
            reflection: false,
            rotation: 0,
        }
    }

    pub fn rotation(j: u64, g: DihedralParam) -> Self {
        DihedralElement {
            reflection: false,
            rotation: j % g.m(),
        }
    }

    /// The reflection `s * r^j`.
    pub fn reflection(j: u64, g: DihedralParam) -> Self {
        DihedralElement {
            reflection: true,
            rotation: j % g.m(),
        }
    }

    pub fn is_reflection(&self) -> bool {
        self.reflection
    }

    pub fn rotation_power(&self) -> u64 {
        self.rotation
    }

    /// Group law in canonical coordinates: `(s^e r^j)(s r^j') = s^(e+1) r^(j'-j)`.
    pub fn compose(&self, other: &DihedralElement, g: DihedralParam) -> DihedralElement {
        let m = g.m();
        if other.reflection {
            DihedralElement {
                reflection: !self.reflection,
                rotation: (m + other.rotation - self.rotation % m) % m,
            }
        } else {
            DihedralElement {
                reflection: self.reflection,
                rotation: (self.rotation + other.rotation) % m,
            }
        }
    }

    /// Parse a word in `r` and `s`, e.g. `r^3`, `s*r^2`, `rs`, `r^-1`.
    pub fn parse(word: &str, g: DihedralParam) -> Result<Self> {
        let cleaned: String = word
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect();
        if cleaned.is_empty() || cleaned == "1" {
            return Ok(Self::identity());
        }
        let m = g.m() as i128;
        let mut out = Self::identity();
        let mut chars = cleaned.chars().peekable();
        while let Some(c) = chars.next() {
            let gen_is_r = match c {
                'r' => true,
                's' => false,
                other => {
                    return Err(Error::MalformedElement(format!(
                        "unexpected character `{other}` in `{word}`"
                    )))
                }
            };
            let mut exp: i128 = 1;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                if chars.peek() == Some(&'-') {
                    digits.push('-');
                    chars.next();
                }
                while chars.peek().is_some_and(|d| d.is_ascii_digit()) {
                    digits.push(chars.next().unwrap());
                }
                exp = digits
                    .parse()
                    .map_err(|_| Error::MalformedElement(format!("bad exponent in `{word}`")))?;
            }
            let step = if gen_is_r {
                DihedralElement::rotation(exp.rem_euclid(m) as u64, g)
            } else if exp.rem_euclid(2) == 1 {
                DihedralElement::reflection(0, g)
            } else {
                DihedralElement::identity()
            };
            out = out.compose(&step, g);
        }
        Ok(out)
    }

    /// All `2m` elements of the group.
    pub fn all(g: DihedralParam) -> impl Iterator<Item = DihedralElement> {
        (0..g.m())
            .map(move |j| DihedralElement::rotation(j, g))
            .chain((0..g.m()).map(move |j| DihedralElement::reflection(j, g)))
    }
}

/// Character value of an irreducible at an arbitrary element.
///
/// Exact on linear characters; `Sigma(k)` uses `2 cos(2 pi k j / m)` at
/// rotations and is 0 on reflections. This feeds the decomposition oracle;
/// the exact formulas consume [`CharacterData`] instead.
pub fn char_at(label: IrreducibleLabel, elem: DihedralElement, g: DihedralParam) -> Result<f64> {
    if !label.is_valid_for(g) {
        return Err(Error::InvalidLabel {
            label: label.name(),
            m: g.m(),
        });
    }
    let refl = elem.is_reflection();
    let j = elem.rotation_power();
    Ok(match label {
        IrreducibleLabel::Trivial => 1.0,
        IrreducibleLabel::ChiS => {
            if refl {
                -1.0
            } else {
                1.0
            }
        }
        IrreducibleLabel::ChiR => sign_pow(j),
        IrreducibleLabel::ChiRS => sign_pow(j + u64::from(refl)),
        IrreducibleLabel::Sigma(k) => {
            if refl {
                0.0
            } else {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) * (j as f64) / (g.m() as f64);
                2.0 * theta.cos()
            }
        }
    })
}

fn sign_pow(e: u64) -> f64 {
    if e % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn sign_pow_i(e: u64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exact character values at the reference elements the class formulas
/// consume: `1`, `s`, and for even `m` also `rs`, `r_c = r^(m/2)` and
/// `s r_c`. For `m = 0 mod 4` the pair `s ~ s r_c` is conjugate, so
/// `chi(s r_c)` is derived rather than stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterData {
    group: DihedralParam,
    chi_1: i64,
    chi_s: i64,
    chi_rs: Option<i64>,
    chi_rc: Option<i64>,
    chi_src: Option<i64>,
}

impl CharacterData {
    pub fn new_odd(group: DihedralParam, chi_1: i64, chi_s: i64) -> Result<Self> {
        let data = CharacterData {
            group,
            chi_1,
            chi_s,
            chi_rs: None,
            chi_rc: None,
            chi_src: None,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn new_zero_mod_four(
        group: DihedralParam,
        chi_1: i64,
        chi_s: i64,
        chi_rs: i64,
        chi_rc: i64,
    ) -> Result<Self> {
        let data = CharacterData {
            group,
            chi_1,
            chi_s,
            chi_rs: Some(chi_rs),
            chi_rc: Some(chi_rc),
            chi_src: Some(chi_s),
        };
        data.validate()?;
        Ok(data)
    }

    pub fn new_two_mod_four(
        group: DihedralParam,
        chi_1: i64,
        chi_s: i64,
        chi_rs: i64,
        chi_rc: i64,
        chi_src: i64,
    ) -> Result<Self> {
        let data = CharacterData {
            group,
            chi_1,
            chi_s,
            chi_rs: Some(chi_rs),
            chi_rc: Some(chi_rc),
            chi_src: Some(chi_src),
        };
        data.validate()?;
        Ok(data)
    }

    fn validate(&self) -> Result<()> {
        let values = [
            self.chi_s,
            self.chi_rs.unwrap_or(0),
            self.chi_rc.unwrap_or(0),
            self.chi_src.unwrap_or(0),
        ];
        if values.iter().any(|v| v.abs() > self.chi_1) {
            return Err(Error::InvalidCharacter(format!(
                "degree {} smaller than another character value in absolute value",
                self.chi_1
            )));
        }
        if let Some(rc) = self.chi_rc {
            if (self.chi_1 - rc) % 2 != 0 {
                return Err(Error::InvalidCharacter(
                    "chi(1) and chi(r_c) must have equal parity".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> DihedralParam {
        self.group
    }

    /// `chi(1)`, the degree.
    pub fn degree(&self) -> i64 {
        self.chi_1
    }

    pub fn at_s(&self) -> i64 {
        self.chi_s
    }

    pub fn at_rs(&self) -> Result<i64> {
        self.chi_rs.ok_or(Error::MissingCharacterValue {
            key: "rs",
            m: self.group.m(),
        })
    }

    pub fn at_rc(&self) -> Result<i64> {
        self.chi_rc.ok_or(Error::MissingCharacterValue {
            key: "rc",
            m: self.group.m(),
        })
    }

    pub fn at_src(&self) -> Result<i64> {
        self.chi_src.ok_or(Error::MissingCharacterValue {
            key: "src",
            m: self.group.m(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut chi = serde_json::Map::new();
        chi.insert("1".into(), self.chi_1.into());
        chi.insert("s".into(), self.chi_s.into());
        if let Some(v) = self.chi_rs {
            chi.insert("rs".into(), v.into());
        }
        if let Some(v) = self.chi_rc {
            chi.insert("rc".into(), v.into());
        }
        if self.group.parity_class() == ParityClass::TwoModFour {
            if let Some(v) = self.chi_src {
                chi.insert("src".into(), v.into());
            }
        }
        serde_json::json!({ "m": self.group.m(), "chi": chi })
    }

    /// Parse the JSON form, either `{"m":..,"chi":{..}}` or the bare inner
    /// map when `m` comes from elsewhere. Each parity class has its own
    /// required evaluation set.
    pub fn from_json(value: &serde_json::Value, m_override: Option<u64>) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct ChiMap {
            #[serde(rename = "1")]
            one: i64,
            s: i64,
            rs: Option<i64>,
            rc: Option<i64>,
            src: Option<i64>,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wrapped {
            m: Option<u64>,
            chi: ChiMap,
        }

        let (m_field, chi): (Option<u64>, ChiMap) = if value.get("chi").is_some() {
            let w: Wrapped = serde_json::from_value(value.clone())
                .map_err(|e| Error::InvalidCharacter(e.to_string()))?;
            (w.m, w.chi)
        } else {
            let c: ChiMap = serde_json::from_value(value.clone())
                .map_err(|e| Error::InvalidCharacter(e.to_string()))?;
            (None, c)
        };

        let m = match (m_override, m_field) {
            (Some(a), Some(b)) if a != b => return Err(Error::GroupMismatch { left: a, right: b }),
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => {
                return Err(Error::InvalidCharacter(
                    "no group order: supply m in the JSON or via --m".into(),
                ))
            }
        };
        let group = DihedralParam::new(m)?;

        let require =
            |v: Option<i64>, key: &'static str| v.ok_or(Error::MissingCharacterValue { key, m });
        let forbid = |v: Option<i64>, key: &'static str| {
            if v.is_some() {
                Err(Error::ExtraneousCharacterValue { key, m })
            } else {
                Ok(())
            }
        };
        match group.parity_class() {
            ParityClass::Odd => {
                forbid(chi.rs, "rs")?;
                forbid(chi.rc, "rc")?;
                forbid(chi.src, "src")?;
                Self::new_odd(group, chi.one, chi.s)
            }
            ParityClass::ZeroModFour => {
                let rs = require(chi.rs, "rs")?;
                let rc = require(chi.rc, "rc")?;
                if let Some(src) = chi.src {
                    if src != chi.s {
                        return Err(Error::InvalidCharacter(
                            "for m = 0 mod 4, s and s*r_c are conjugate so chi(src) must equal chi(s)"
                                .into(),
                        ));
                    }
                }
                Self::new_zero_mod_four(group, chi.one, chi.s, rs, rc)
            }
            ParityClass::TwoModFour => {
                let rs = require(chi.rs, "rs")?;
                let rc = require(chi.rc, "rc")?;
                let src = require(chi.src, "src")?;
                Self::new_two_mod_four(group, chi.one, chi.s, rs, rc, src)
            }
        }
    }
}

/// Exact character data of a single irreducible.
pub fn char_values(label: IrreducibleLabel, g: DihedralParam) -> Result<CharacterData> {
    if !label.is_valid_for(g) {
        return Err(Error::InvalidLabel {
            label: label.name(),
            m: g.m(),
        });
    }
    let half = g.m() / 2;
    let (chi_1, chi_s, chi_rs, chi_rc, chi_src): (i64, i64, i64, i64, i64) = match label {
        IrreducibleLabel::Trivial => (1, 1, 1, 1, 1),
        IrreducibleLabel::ChiS => (1, -1, -1, 1, -1),
        IrreducibleLabel::ChiR => (1, 1, -1, sign_pow_i(half), sign_pow_i(half)),
        IrreducibleLabel::ChiRS => (1, -1, 1, sign_pow_i(half), -sign_pow_i(half)),
        IrreducibleLabel::Sigma(k) => (2, 0, 0, 2 * sign_pow_i(u64::from(k)), 0),
    };
    match g.parity_class() {
        ParityClass::Odd => CharacterData::new_odd(g, chi_1, chi_s),
        ParityClass::ZeroModFour => {
            CharacterData::new_zero_mod_four(g, chi_1, chi_s, chi_rs, chi_rc)
        }
        ParityClass::TwoModFour => {
            CharacterData::new_two_mod_four(g, chi_1, chi_s, chi_rs, chi_rc, chi_src)
        }
    }
}

/// Multiplicity sums the class formulas consume.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MultiplicityAggregates {
    pub n0: u64,
    pub ns: u64,
    pub nr: u64,
    pub nrs: u64,
    /// Total multiplicity of `Sigma(k)` with `k` even.
    pub d_even: u64,
    /// Total multiplicity of `Sigma(k)` with `k` odd.
    pub d_odd: u64,
}

/// A finite-dimensional representation of `D_m` as a multiplicity vector
/// over the irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    group: DihedralParam,
    mult: BTreeMap<IrreducibleLabel, u64>,
}

impl Representation {
    pub fn empty(group: DihedralParam) -> Self {
        Representation {
            group,
            mult: BTreeMap::new(),
        }
    }

    pub fn from_multiplicities<I>(group: DihedralParam, mult: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IrreducibleLabel, u64)>,
    {
        let mut rep = Self::empty(group);
        for (label, count) in mult {
            rep.add(label, count)?;
        }
        Ok(rep)
    }

    pub fn irreducible(group: DihedralParam, label: IrreducibleLabel) -> Result<Self> {
        Self::from_multiplicities(group, [(label, 1)])
    }

    pub fn trivial(group: DihedralParam, count: u64) -> Self {
        Self::from_multiplicities(group, [(IrreducibleLabel::Trivial, count)])
            .expect("trivial label is always valid")
    }

    /// The regular representation: every irreducible with multiplicity
    /// equal to its dimension.
    pub fn regular(group: DihedralParam) -> Self {
        Self::from_multiplicities(
            group,
            irreducibles(group).into_iter().map(|l| (l, l.dimension())),
        )
        .expect("labels enumerate validly")
    }

    pub fn add(&mut self, label: IrreducibleLabel, count: u64) -> Result<()> {
        if !label.is_valid_for(self.group) {
            return Err(Error::InvalidLabel {
                label: label.name(),
                m: self.group.m(),
            });
        }
        if count > 0 {
            *self.mult.entry(label).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn group(&self) -> DihedralParam {
        self.group
    }

    pub fn multiplicity(&self, label: IrreducibleLabel) -> u64 {
        self.mult.get(&label).copied().unwrap_or(0)
    }

    /// Nonzero multiplicities in label order.
    pub fn multiplicities(&self) -> impl Iterator<Item = (IrreducibleLabel, u64)> + '_ {
        self.mult
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&l, &c)| (l, c))
    }

    pub fn degree(&self) -> u64 {
        self.multiplicities().map(|(l, c)| c * l.dimension()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_multiple_of_trivial(&self) -> bool {
        self.multiplicities()
            .all(|(l, _)| l == IrreducibleLabel::Trivial)
    }

    pub fn aggregates(&self) -> MultiplicityAggregates {
        let mut agg = MultiplicityAggregates::default();
        for (label, count) in self.multiplicities() {
            match label {
                IrreducibleLabel::Trivial => agg.n0 += count,
                IrreducibleLabel::ChiS => agg.ns += count,
                IrreducibleLabel::ChiR => agg.nr += count,
                IrreducibleLabel::ChiRS => agg.nrs += count,
                IrreducibleLabel::Sigma(k) => {
                    if k % 2 == 0 {
                        agg.d_even += count;
                    } else {
                        agg.d_odd += count;
                    }
                }
            }
        }
        agg
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group.m(),
                right: other.group.m(),
            });
        }
        let mut out = self.clone();
        for (label, count) in other.multiplicities() {
            out.add(label, count)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: u64) -> Representation {
        let mut out = Self::empty(self.group);
        if k > 0 {
            for (label, count) in self.multiplicities() {
                out.mult.insert(label, count * k);
            }
        }
        out
    }

    /// Exact character data of the representation.
    pub fn character(&self) -> CharacterData {
        let g = self.group;
        let mut chi = [0i64; 5];
        for (label, count) in self.multiplicities() {
            let c = count as i64;
            let values = char_values(label, g).expect("stored labels are valid");
            chi[0] += c * values.chi_1;
            chi[1] += c * values.chi_s;
            chi[2] += c * values.chi_rs.unwrap_or(0);
            chi[3] += c * values.chi_rc.unwrap_or(0);
            chi[4] += c * values.chi_src.unwrap_or(0);
        }
        match g.parity_class() {
            ParityClass::Odd => CharacterData::new_odd(g, chi[0], chi[1]),
            ParityClass::ZeroModFour => {
                CharacterData::new_zero_mod_four(g, chi[0], chi[1], chi[2], chi[3])
            }
            ParityClass::TwoModFour => {
                CharacterData::new_two_mod_four(g, chi[0], chi[1], chi[2], chi[3], chi[4])
            }
        }
        .expect("sums of genuine characters are genuine")
    }

    /// Numeric character value at an arbitrary element.
    pub fn character_at(&self, elem: DihedralElement) -> f64 {
        self.multiplicities()
            .map(|(l, c)| c as f64 * char_at(l, elem, self.group).expect("valid label"))
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sigma: Vec<u64> = (1..=sigma_count(self.group))
            .map(|k| self.multiplicity(IrreducibleLabel::Sigma(k as u32)))
            .collect();
        let mut mult = serde_json::Map::new();
        mult.insert(
            "1".into(),
            self.multiplicity(IrreducibleLabel::Trivial).into(),
        );
        mult.insert(
            "chi_s".into(),
            self.multiplicity(IrreducibleLabel::ChiS).into(),
        );
        if self.group.m() % 2 == 0 {
            mult.insert(
                "chi_r".into(),
                self.multiplicity(IrreducibleLabel::ChiR).into(),
            );
            mult.insert(
                "chi_rs".into(),
                self.multiplicity(IrreducibleLabel::ChiRS).into(),
            );
        }
        mult.insert("sigma".into(), sigma.into());
        serde_json::json!({ "m": self.group.m(), "mult": mult })
    }

    /// Parse `{"m": .., "mult": {"1": .., "chi_s": .., "chi_r": ..,
    /// "chi_rs": .., "sigma": [..]}}`; all multiplicity fields default to 0.
    pub fn from_json(value: &serde_json::Value, m_override: Option<u64>) -> Result<Self> {
        #[derive(Deserialize, Default)]
        #[serde(deny_unknown_fields)]
        struct MultJson {
            #[serde(rename = "1", default)]
            trivial: u64,
            #[serde(default)]
            chi_s: u64,
            #[serde(default)]
            chi_r: Option<u64>,
            #[serde(default)]
            chi_rs: Option<u64>,
            #[serde(default)]
            sigma: Vec<u64>,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct RepJson {
            m: Option<u64>,
            #[serde(default)]
            mult: Option<MultJson>,
        }

        let parsed: RepJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidRepresentation(e.to_string()))?;
        let m = match (m_override, parsed.m) {
            (Some(a), Some(b)) if a != b => return Err(Error::GroupMismatch { left: a, right: b }),
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => {
                return Err(Error::InvalidRepresentation(
                    "no group order: supply m in the JSON or via --m".into(),
                ))
            }
        };
        let group = DihedralParam::new(m)?;
        let mult = parsed.mult.unwrap_or_default();

        let mut rep = Self::empty(group);
        rep.add(IrreducibleLabel::Trivial, mult.trivial)?;
        rep.add(IrreducibleLabel::ChiS, mult.chi_s)?;
        if m % 2 == 0 {
            rep.add(IrreducibleLabel::ChiR, mult.chi_r.unwrap_or(0))?;
            rep.add(IrreducibleLabel::ChiRS, mult.chi_rs.unwrap_or(0))?;
        } else if mult.chi_r.is_some_and(|c| c > 0) || mult.chi_rs.is_some_and(|c| c > 0) {
            return Err(Error::InvalidRepresentation(format!(
                "chi_r / chi_rs do not exist for odd m = {m}"
            )));
        }
        let max_sigma = sigma_count(group);
        if mult.sigma.len() as u64 > max_sigma {
            return Err(Error::InvalidRepresentation(format!(
                "sigma array has {} entries but D_{m} has only {max_sigma} two-dimensional irreducibles",
                mult.sigma.len()
            )));
        }
        for (idx, &count) in mult.sigma.iter().enumerate() {
            rep.add(IrreducibleLabel::Sigma(idx as u32 + 1), count)?;
        }
        Ok(rep)
    }
}

/// Precomputed numeric character table of `D_m`, one row per irreducible,
/// columns enumerating all `2m` elements. Powers the decomposition oracle.
pub struct CharacterTable {
    group: DihedralParam,
    labels: Vec<IrreducibleLabel>,
    rows: Vec<Vec<f64>>,
}

impl CharacterTable {
    pub fn new(group: DihedralParam) -> Self {
        let labels = irreducibles(group);
        let rows = labels
            .iter()
            .map(|&l| {
                DihedralElement::all(group)
                    .map(|e| char_at(l, e, group).expect("valid label"))
                    .collect()
            })
            .collect();
        CharacterTable {
            group,
            labels,
            rows,
        }
    }

    pub fn group(&self) -> DihedralParam {
        self.group
    }

    pub fn labels(&self) -> &[IrreducibleLabel] {
        &self.labels
    }

    /// Character values of one irreducible over all elements, in the order
    /// of [`DihedralElement::all`].
    pub fn row(&self, idx: usize) -> &[f64] {
        &self.rows[idx]
    }

    /// Inner-product decomposition of a class function given by its values
    /// over all elements. Fails loudly when the result is not a genuine
    /// nonnegative integer combination.
    pub fn decompose_values(&self, values: &[f64]) -> Result<Representation> {
        let mut mults = vec![0u64; self.labels.len()];
        self.decompose_values_into(values, &mut mults)?;
        Representation::from_multiplicities(self.group, self.labels.iter().copied().zip(mults))
    }

    /// Allocation-free core of [`Self::decompose_values`].
    pub(crate) fn decompose_values_into(&self, values: &[f64], out: &mut [u64]) -> Result<()> {
        let order = self.group.order();
        if values.len() as u64 != order {
            return Err(Error::NotACharacter(format!(
                "expected {order} values, got {}",
                values.len()
            )));
        }
        for ((label, row), slot) in self.labels.iter().zip(&self.rows).zip(out.iter_mut()) {
            let dot: f64 = row.iter().zip(values).map(|(a, b)| a * b).sum();
            let raw = dot / order as f64;
            let rounded = raw.round();
            if (raw - rounded).abs() > 1e-6 {
                return Err(Error::NotACharacter(format!(
                    "multiplicity of {} is {raw}, residual exceeds 1e-6",
                    label.name()
                )));
            }
            if rounded < 0.0 {
                return Err(Error::NotACharacter(format!(
                    "multiplicity of {} is negative ({rounded})",
                    label.name()
                )));
            }
            *slot = rounded as u64;
        }
        Ok(())
    }
}

/// Decompose a class function into irreducible multiplicities by numeric
/// character inner products; the independent oracle behind the exact paths.
pub fn decompose<F>(char_fn: F, g: DihedralParam) -> Result<Representation>
where
    F: Fn(DihedralElement) -> f64,
{
    let table = CharacterTable::new(g);
    let values: Vec<f64> = DihedralElement::all(g).map(char_fn).collect();
    table.decompose_values(&values)
}

/// The two detecting Klein-four subgroups of `D_m` for `m = 0 mod 4`:
/// `E1 = {1, s, r_c, s r_c}` and `E2 = {1, rs, r_c, rs r_c}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KleinSubgroup {
    E1,
    E2,
}

impl KleinSubgroup {
    /// Generator names of `H*(E_i)`: `v1, v2` on `E1` and `u1, u2` on `E2`.
    pub fn generator_names(self) -> [&'static str; 2] {
        match self {
            KleinSubgroup::E1 => ["v1", "v2"],
            KleinSubgroup::E2 => ["u1", "u2"],
        }
    }
}

/// Restriction of a representation to a detecting Klein-four subgroup, as
/// multiplicities of `1`, `alpha_i`, `beta_i`, `alpha_i (x) beta_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KleinRestriction {
    pub subgroup: KleinSubgroup,
    pub mult_one: u64,
    pub mult_alpha: u64,
    pub mult_beta: u64,
    pub mult_alpha_beta: u64,
}

impl KleinRestriction {
    pub fn degree(&self) -> u64 {
        self.mult_one + self.mult_alpha + self.mult_beta + self.mult_alpha_beta
    }

    /// Total Stiefel-Whitney class of the restricted representation in
    /// `F2[v1,v2]` (resp. `F2[u1,u2]`), truncated at its degree.
    pub fn total_swc(&self) -> Result<CohomClass> {
        self.total_swc_truncated(
            u32::try_from(self.degree())
                .map_err(|_| Error::InvalidRepresentation("degree exceeds u32".into()))?,
        )
    }

    pub fn total_swc_truncated(&self, trunc: u32) -> Result<CohomClass> {
        let kind = RingPresentation::TwoModFour;
        let v1 = CohomClass::from_terms(
            kind,
            trunc,
            [Monomial::one(kind), Monomial::TwoModFour { a: 1, b: 0 }],
        )?;
        let v2 = CohomClass::from_terms(
            kind,
            trunc,
            [Monomial::one(kind), Monomial::TwoModFour { a: 0, b: 1 }],
        )?;
        let v12 = CohomClass::from_terms(
            kind,
            trunc,
            [
                Monomial::one(kind),
                Monomial::TwoModFour { a: 1, b: 0 },
                Monomial::TwoModFour { a: 0, b: 1 },
            ],
        )?;
        v1.pow(self.mult_alpha as i64)?
            .mul(&v2.pow(self.mult_beta as i64)?)?
            .mul(&v12.pow(self.mult_alpha_beta as i64)?)
    }
}

/// Restriction to `E1`/`E2` by the closed-form multiplicity bookkeeping;
/// requires `m = 0 mod 4`.
pub fn restrict_klein(rep: &Representation, which: KleinSubgroup) -> Result<KleinRestriction> {
    rep.group()
        .require_zero_mod_four("0 mod 4 for Klein restriction")?;
    let a = rep.aggregates();
    let (mult_one, mult_alpha) = match which {
        KleinSubgroup::E1 => (a.n0 + a.nr + a.d_even, a.ns + a.nrs + a.d_even),
        KleinSubgroup::E2 => (a.n0 + a.nrs + a.d_even, a.ns + a.nr + a.d_even),
    };
    Ok(KleinRestriction {
        subgroup: which,
        mult_one,
        mult_alpha,
        mult_beta: a.d_odd,
        mult_alpha_beta: a.d_odd,
    })
}

/// Restriction to the Sylow 2-subgroup `D_(2^n) <= D_m`, precomputed per
/// irreducible through the decomposition oracle and then extended
/// additively.
pub struct SylowRestriction {
    source: DihedralParam,
    target: DihedralParam,
    table: Vec<(IrreducibleLabel, Representation)>,
}

impl SylowRestriction {
    pub fn new(source: DihedralParam) -> Result<Self> {
        let target = source.sylow_subgroup();
        let (_, l) = source.sylow();
        let char_table = CharacterTable::new(target);
        let mut table = Vec::new();
        for label in irreducibles(source) {
            // The inclusion sends the rotation generator of D_(2^n) to r^l.
            let values: Vec<f64> = DihedralElement::all(target)
                .map(|e| {
                    let lifted = if e.is_reflection() {
                        DihedralElement::reflection(e.rotation_power() * l, source)
                    } else {
                        DihedralElement::rotation(e.rotation_power() * l, source)
                    };
                    char_at(label, lifted, source).expect("valid label")
                })
                .collect();
            table.push((label, char_table.decompose_values(&values)?));
        }
        Ok(SylowRestriction {
            source,
            target,
            table,
        })
    }

    pub fn source(&self) -> DihedralParam {
        self.source
    }

    pub fn target(&self) -> DihedralParam {
        self.target
    }

    /// Restriction of a single source irreducible.
    pub fn of_irreducible(&self, label: IrreducibleLabel) -> Result<&Representation> {
        self.table
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, r)| r)
            .ok_or(Error::InvalidLabel {
                label: label.name(),
                m: self.source.m(),
            })
    }

    pub fn restrict(&self, rep: &Representation) -> Result<Representation> {
        if rep.group() != self.source {
            return Err(Error::GroupMismatch {
                left: rep.group().m(),
                right: self.source.m(),
            });
        }
        let mut out = Representation::empty(self.target);
        for (label, count) in rep.multiplicities() {
            out = out.direct_sum(&self.of_irreducible(label)?.scale(count))?;
        }
        Ok(out)
    }
}

/// One-shot Sylow restriction of a representation.
pub fn restrict_sylow(rep: &Representation) -> Result<Representation> {
    SylowRestriction::new(rep.group())?.restrict(rep)
}
