use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::Error;

/// Stable family identifiers; these strings appear in CLI flags and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    ContinuousBannaiIto,
    BigMinus1Jacobi,
    Chihara,
    ContinuousMinus1Hahn1,
    ContinuousMinus1Hahn2,
    GeneralizedSymmetricBannaiIto,
    LittleMinus1Jacobi,
    GeneralizedGegenbauer,
    Minus1MeixnerPollaczek,
    SymmetricBannaiIto,
    SpecialLittleMinus1Jacobi,
    Gegenbauer,
    GeneralizedHermite,
    Hermite,
    ContinuousComplementaryBannaiIto,
    Wilson,
    ContinuousDualHahn,
    LittleQJacobiDilated,
    ContinuousQHahn,
    QMeixnerPollaczek,
    BigQJacobi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Scheme,
    QuasiFamily,
    Helper,
    Aux,
}

use FamilyId::*;

const ALL: [FamilyId; 21] = [
    ContinuousBannaiIto,
    BigMinus1Jacobi,
    Chihara,
    ContinuousMinus1Hahn1,
    ContinuousMinus1Hahn2,
    GeneralizedSymmetricBannaiIto,
    LittleMinus1Jacobi,
    GeneralizedGegenbauer,
    Minus1MeixnerPollaczek,
    SymmetricBannaiIto,
    SpecialLittleMinus1Jacobi,
    Gegenbauer,
    GeneralizedHermite,
    Hermite,
    ContinuousComplementaryBannaiIto,
    Wilson,
    ContinuousDualHahn,
    LittleQJacobiDilated,
    ContinuousQHahn,
    QMeixnerPollaczek,
    BigQJacobi,
];

impl FamilyId {
    pub fn all() -> &'static [FamilyId] {
        &ALL
    }

    /// The 14 orthogonal families of the scheme.
    pub fn orthogonal() -> &'static [FamilyId] {
        &ALL[..14]
    }

    /// Scheme nodes: the 14 orthogonal families plus CCBI.
    pub fn scheme() -> &'static [FamilyId] {
        &ALL[..15]
    }

    pub fn id(self) -> &'static str {
        match self {
            ContinuousBannaiIto => "continuous-bannai-ito",
            BigMinus1Jacobi => "big-minus1-jacobi",
            Chihara => "chihara",
            ContinuousMinus1Hahn1 => "continuous-minus1-hahn-1",
            ContinuousMinus1Hahn2 => "continuous-minus1-hahn-2",
            GeneralizedSymmetricBannaiIto => "generalized-symmetric-bannai-ito",
            LittleMinus1Jacobi => "little-minus1-jacobi",
            GeneralizedGegenbauer => "generalized-gegenbauer",
            Minus1MeixnerPollaczek => "minus1-meixner-pollaczek",
            SymmetricBannaiIto => "symmetric-bannai-ito",
            SpecialLittleMinus1Jacobi => "special-little-minus1-jacobi",
            Gegenbauer => "gegenbauer",
            GeneralizedHermite => "generalized-hermite",
            Hermite => "hermite",
            ContinuousComplementaryBannaiIto => "continuous-complementary-bannai-ito",
            Wilson => "wilson",
            ContinuousDualHahn => "continuous-dual-hahn",
            LittleQJacobiDilated => "little-q-jacobi-dilated",
            ContinuousQHahn => "continuous-q-hahn",
            QMeixnerPollaczek => "q-meixner-pollaczek",
            BigQJacobi => "big-q-jacobi",
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            ContinuousBannaiIto => "cbi",
            BigMinus1Jacobi => "b1j",
            Chihara => "chi",
            ContinuousMinus1Hahn1 => "c1h1",
            ContinuousMinus1Hahn2 => "c1h2",
            GeneralizedSymmetricBannaiIto => "gsbi",
            LittleMinus1Jacobi => "l1j",
            GeneralizedGegenbauer => "gg",
            Minus1MeixnerPollaczek => "mp",
            SymmetricBannaiIto => "sbi",
            SpecialLittleMinus1Jacobi => "sl1j",
            Gegenbauer => "geg",
            GeneralizedHermite => "gh",
            Hermite => "h",
            ContinuousComplementaryBannaiIto => "ccbi",
            Wilson => "w",
            ContinuousDualHahn => "cdh",
            LittleQJacobiDilated => "lqj",
            ContinuousQHahn => "qhahn",
            QMeixnerPollaczek => "qmp",
            BigQJacobi => "bqj",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ContinuousBannaiIto => "continuous Bannai-Ito",
            BigMinus1Jacobi => "big -1 Jacobi",
            Chihara => "Chihara",
            ContinuousMinus1Hahn1 => "continuous -1 Hahn (type 1)",
            ContinuousMinus1Hahn2 => "continuous -1 Hahn (type 2)",
            GeneralizedSymmetricBannaiIto => "generalized symmetric Bannai-Ito",
            LittleMinus1Jacobi => "little -1 Jacobi",
            GeneralizedGegenbauer => "generalized Gegenbauer",
            Minus1MeixnerPollaczek => "-1 Meixner-Pollaczek",
            SymmetricBannaiIto => "symmetric Bannai-Ito",
            SpecialLittleMinus1Jacobi => "special little -1 Jacobi",
            Gegenbauer => "Gegenbauer",
            GeneralizedHermite => "generalized Hermite",
            Hermite => "Hermite",
            ContinuousComplementaryBannaiIto => "continuous complementary Bannai-Ito",
            Wilson => "Wilson",
            ContinuousDualHahn => "continuous dual Hahn",
            LittleQJacobiDilated => "dilated little q-Jacobi",
            ContinuousQHahn => "continuous q-Hahn",
            QMeixnerPollaczek => "q-Meixner-Pollaczek",
            BigQJacobi => "big q-Jacobi",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ContinuousBannaiIto => &["alpha", "beta", "gamma", "delta"],
            BigMinus1Jacobi => &["alpha", "beta", "c"],
            Chihara | ContinuousMinus1Hahn1 | ContinuousMinus1Hahn2 => &["alpha", "beta", "gamma"],
            GeneralizedSymmetricBannaiIto => &["a", "b", "c"],
            LittleMinus1Jacobi | GeneralizedGegenbauer => &["alpha", "beta"],
            Minus1MeixnerPollaczek => &["alpha", "gamma"],
            SymmetricBannaiIto => &["a", "b"],
            SpecialLittleMinus1Jacobi | Gegenbauer | GeneralizedHermite => &["alpha"],
            Hermite => &[],
            ContinuousComplementaryBannaiIto => &["a1", "b1", "a2", "b2"],
            Wilson => &["a", "b", "c", "d"],
            ContinuousDualHahn => &["a", "b", "c"],
            LittleQJacobiDilated => &["a", "b", "q"],
            ContinuousQHahn => &["a", "b", "phi", "q"],
            QMeixnerPollaczek => &["a", "phi", "q"],
            BigQJacobi => &["a", "b", "c", "q"],
        }
    }

    pub fn kind(self) -> FamilyKind {
        match self {
            ContinuousComplementaryBannaiIto => FamilyKind::QuasiFamily,
            Wilson | ContinuousDualHahn => FamilyKind::Helper,
            LittleQJacobiDilated | ContinuousQHahn | QMeixnerPollaczek | BigQJacobi => FamilyKind::Aux,
            _ => FamilyKind::Scheme,
        }
    }

    /// Row in the scheme figure (number of parameters), scheme nodes only.
    pub fn row(self) -> Option<usize> {
        match self.kind() {
            FamilyKind::Scheme | FamilyKind::QuasiFamily => Some(self.param_names().len()),
            _ => None,
        }
    }

    pub fn is_orthogonal(self) -> bool {
        self.kind() == FamilyKind::Scheme
    }

    /// Sourced from standard references rather than the compendium.
    pub fn external(self) -> bool {
        matches!(self, Wilson | ContinuousDualHahn | BigQJacobi)
    }

    pub fn admissible(self) -> &'static str {
        match self {
            ContinuousBannaiIto => "alpha, beta, gamma, delta > 0",
            ContinuousMinus1Hahn1 | ContinuousMinus1Hahn2 => "alpha, beta, gamma > 0",
            BigMinus1Jacobi => "alpha > 0, beta > 0, 0 <= c < 1",
            Chihara | GeneralizedGegenbauer => "alpha > -1, beta > 0",
            GeneralizedSymmetricBannaiIto => {
                "Re a, Re b, Re c > 0, a+b+c > 1, non-real parameters in conjugate pairs"
            }
            LittleMinus1Jacobi => "alpha > 0, beta > 0",
            Minus1MeixnerPollaczek => "alpha > -1/2",
            SymmetricBannaiIto => "Re a, Re b > 0, non-real parameters in conjugate pairs",
            SpecialLittleMinus1Jacobi => "alpha > 0",
            Gegenbauer | GeneralizedHermite => "alpha > -1/2",
            Hermite => "no parameters",
            ContinuousComplementaryBannaiIto => "not positive definite unless b2 = 0",
            Wilson => "a, b, c, d > 0 or conjugate pairs with positive real parts",
            ContinuousDualHahn => "a, b, c > 0 or conjugate pair with positive real parts",
            LittleQJacobiDilated => "recurrence only; q-limit source",
            ContinuousQHahn => "recurrence only; q-limit source",
            QMeixnerPollaczek => "recurrence only; q-limit source",
            BigQJacobi => "recurrence only; q-limit source",
        }
    }

    /// Descriptive anchor into the compendium entry.
    pub fn anchor(self) -> String {
        format!("{}:compendium", self.id())
    }

    pub fn info(self) -> FamilyInfo {
        FamilyInfo {
            id: self,
            alias: self.alias(),
            name: self.name(),
            params: self.param_names().to_vec(),
            admissible: self.admissible(),
            anchor: self.anchor(),
            kind: self.kind(),
            row: self.row(),
            orthogonal: self.is_orthogonal(),
            external: self.external(),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        ALL.iter()
            .copied()
            .find(|f| f.id() == s || f.alias() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serializable catalog entry.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyInfo {
    pub id: FamilyId,
    pub alias: &'static str,
    pub name: &'static str,
    pub params: Vec<&'static str>,
    pub admissible: &'static str,
    pub anchor: String,
    pub kind: FamilyKind,
    pub row: Option<usize>,
    pub orthogonal: bool,
    pub external: bool,
}

pub fn catalog() -> Vec<FamilyInfo> {
    ALL.iter().map(|f| f.info()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for f in FamilyId::all() {
            assert_eq!(f.id().parse::<FamilyId>().unwrap(), *f);
            assert_eq!(f.alias().parse::<FamilyId>().unwrap(), *f);
        }
        assert!("nope".parse::<FamilyId>().is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(catalog().len(), 21);
        assert_eq!(FamilyId::scheme().len(), 15);
        let rows: Vec<_> = FamilyId::scheme().iter().map(|f| f.row().unwrap()).collect();
        assert_eq!(rows.iter().max(), Some(&4));
        assert_eq!(rows.iter().min(), Some(&0));
    }
}
