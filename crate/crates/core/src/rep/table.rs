//! Character tables of finite groups, with exact (cyclotomic) entries.
//!
//! Tables load from JSON:
//!
//! ```json
//! {
//!   "name": "S3", "order": 6, "center_order": 1, "onsite": "2d",
//!   "classes": [{"size": 1, "label": "e"}, {"size": 2, "label": "r"}, {"size": 3, "label": "s"}],
//!   "irreps": [{"label": "inv", "dim": 1}, {"label": "sgn", "dim": 1}, {"label": "2d", "dim": 2}],
//!   "characters": [[["1","0"], ["1","0"], ["1","0"]], ...]
//! }
//! ```
//!
//! Each character entry is either a Gaussian rational `[re, im]` (strings holding
//! integers or fractions) or a cyclotomic element `{"order": m, "coeffs": [...]}`
//! meaning Σ_k coeffs[k]·exp(2πik/m). The first class must be the identity.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::{parse_rational, Cyclotomic};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassSpec {
    pub size: u64,
    pub label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrrepSpec {
    pub label: String,
    pub dim: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharacterEntry {
    Gaussian([String; 2]),
    Cyclotomic { order: usize, coeffs: Vec<String> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTableDoc {
    pub name: String,
    pub order: u64,
    pub center_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub onsite: Option<String>,
    pub classes: Vec<ClassSpec>,
    pub irreps: Vec<IrrepSpec>,
    pub characters: Vec<Vec<CharacterEntry>>,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    name: String,
    order: u64,
    center_order: u64,
    default_onsite: Option<usize>,
    classes: Vec<ClassSpec>,
    irreps: Vec<IrrepSpec>,
    /// characters[irrep][class], all lifted to a common cyclotomic order.
    characters: Vec<Vec<Cyclotomic>>,
    conjugates: Vec<usize>,
    invariant: usize,
}

impl CharacterTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CharacterTableDoc = serde_json::from_str(text)?;
        Self::from_doc(doc)
    }

    pub fn from_doc(doc: CharacterTableDoc) -> Result<Self> {
        let n_classes = doc.classes.len();
        if n_classes == 0 || doc.irreps.len() != n_classes {
            return Err(Error::CorruptTable(format!(
                "{}: {} classes but {} irreps",
                doc.name,
                n_classes,
                doc.irreps.len()
            )));
        }
        if doc.characters.len() != doc.irreps.len() || doc.characters.iter().any(|r| r.len() != n_classes) {
            return Err(Error::CorruptTable(format!("{}: character matrix has wrong shape", doc.name)));
        }

        let mut raw = Vec::with_capacity(doc.irreps.len());
        let mut common = 1usize;
        for row in &doc.characters {
            let mut parsed = Vec::with_capacity(n_classes);
            for entry in row {
                let value = parse_entry(entry).ok_or_else(|| {
                    Error::CorruptTable(format!("{}: unparsable character entry {entry:?}", doc.name))
                })?;
                common = common.lcm(&value.order());
                parsed.push(value);
            }
            raw.push(parsed);
        }
        let characters: Vec<Vec<Cyclotomic>> =
            raw.into_iter().map(|row| row.into_iter().map(|c| c.lift(common)).collect()).collect();

        let default_onsite = match &doc.onsite {
            Some(label) => Some(doc.irreps.iter().position(|r| &r.label == label).ok_or_else(|| {
                Error::CorruptTable(format!("{}: onsite irrep {label} not in table", doc.name))
            })?),
            None => None,
        };

        let mut table = Self {
            name: doc.name,
            order: doc.order,
            center_order: doc.center_order,
            default_onsite,
            classes: doc.classes,
            irreps: doc.irreps,
            characters,
            conjugates: Vec::new(),
            invariant: 0,
        };
        table.validate()?;
        table.conjugates = (0..table.irreps.len()).map(|j| table.find_conjugate(j)).collect::<Result<_>>()?;
        table.invariant = table
            .characters
            .iter()
            .position(|row| row.iter().all(|c| c.as_rational() == Some(BigRational::one())))
            .ok_or_else(|| Error::CorruptTable(format!("{}: no trivial irrep", table.name)))?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::CorruptTable(format!("{}: {msg}", self.name)));
        let total: u64 = self.classes.iter().map(|c| c.size).sum();
        if total != self.order {
            return bad(format!("class sizes sum to {total}, group order is {}", self.order));
        }
        if self.classes[0].size != 1 {
            return bad("first class must be the identity".into());
        }
        let dim_sq: u64 = self.irreps.iter().map(|r| r.dim * r.dim).sum();
        if dim_sq != self.order {
            return bad(format!("sum of squared dimensions is {dim_sq}, expected {}", self.order));
        }
        let central = self.classes.iter().filter(|c| c.size == 1).count() as u64;
        if central != self.center_order {
            return bad(format!("{central} singleton classes but center_order {}", self.center_order));
        }
        for (j, irrep) in self.irreps.iter().enumerate() {
            if self.characters[j][0].as_rational() != Some(BigRational::from_integer(irrep.dim.into())) {
                return bad(format!("character of {} at identity differs from its dimension", irrep.label));
            }
        }
        for j in 0..self.irreps.len() {
            for k in j..self.irreps.len() {
                let ip = self.inner_product(&self.characters[j], &self.characters[k]);
                let expected = if j == k { BigRational::one() } else { BigRational::zero() };
                if ip.as_rational() != Some(expected) {
                    return bad(format!(
                        "row orthogonality fails for ({}, {})",
                        self.irreps[j].label, self.irreps[k].label
                    ));
                }
            }
        }
        Ok(())
    }

    /// (1/|G|) Σ_c |c| conj(a(c)) b(c).
    fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let m = a[0].order();
        let mut acc = Cyclotomic::zero(m);
        for (c, class) in self.classes.iter().enumerate() {
            let term = a[c].conj().mul(&b[c]).scale(&BigRational::from_integer(class.size.into()));
            acc = acc.add(&term);
        }
        acc.scale(&BigRational::new(BigInt::one(), self.order.into()))
    }

    fn find_conjugate(&self, j: usize) -> Result<usize> {
        let conj: Vec<Cyclotomic> = self.characters[j].iter().map(Cyclotomic::conj).collect();
        self.characters
            .iter()
            .position(|row| row.iter().zip(&conj).all(|(a, b)| a.exact_eq(b)))
            .ok_or_else(|| {
                Error::CorruptTable(format!("{}: conjugate of {} not found", self.name, self.irreps[j].label))
            })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn center_order(&self) -> u64 {
        self.center_order
    }

    pub fn classes(&self) -> &[ClassSpec] {
        &self.classes
    }

    pub fn num_irreps(&self) -> usize {
        self.irreps.len()
    }

    pub fn irrep_label(&self, j: usize) -> &str {
        &self.irreps[j].label
    }

    pub fn irrep_dim(&self, j: usize) -> u64 {
        self.irreps[j].dim
    }

    pub fn irrep_index(&self, label: &str) -> Option<usize> {
        self.irreps.iter().position(|r| r.label == label)
    }

    pub fn character(&self, irrep: usize, class: usize) -> &Cyclotomic {
        &self.characters[irrep][class]
    }

    pub fn conjugate(&self, j: usize) -> usize {
        self.conjugates[j]
    }

    pub fn invariant(&self) -> usize {
        self.invariant
    }

    pub fn default_onsite(&self) -> Option<usize> {
        self.default_onsite
    }

    /// Multiplicity of irrep `j` in `onsite`^{⊗n}, computed exactly from characters.
    pub fn tensor_power_multiplicity(&self, j: usize, onsite: usize, n: u64) -> Result<BigUint> {
        let power: Vec<Cyclotomic> = self.characters[onsite].iter().map(|c| c.pow(n)).collect();
        let ip = self.inner_product(&self.characters[j], &power);
        let value = ip.as_rational().ok_or_else(|| {
            Error::CorruptTable(format!("{}: multiplicity of {} is not rational: {ip}", self.name, self.irreps[j].label))
        })?;
        if !value.is_integer() || value.is_negative() {
            return Err(Error::CorruptTable(format!(
                "{}: multiplicity of {} in tensor power {n} is {value}, not a non-negative integer",
                self.name, self.irreps[j].label
            )));
        }
        Ok(value.to_integer().to_biguint().expect("non-negative"))
    }

    /// Indices of classes whose elements act as scalars, i.e. the center.
    pub fn central_classes(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.classes[c].size == 1).collect()
    }

    /// A representation is faithful iff its character equals its dimension only on the identity.
    pub fn is_faithful(&self, j: usize) -> bool {
        let dim = BigRational::from_integer(self.irreps[j].dim.into());
        (1..self.classes.len()).all(|c| self.characters[j][c].as_rational() != Some(dim.clone()))
    }
}

fn parse_entry(entry: &CharacterEntry) -> Option<Cyclotomic> {
    match entry {
        CharacterEntry::Gaussian([re, im]) => {
            let re = parse_rational(re)?;
            let im = parse_rational(im)?;
            if im.is_zero() {
                Some(Cyclotomic::from_rational(1, re))
            } else {
                Some(Cyclotomic::gaussian(re, im))
            }
        }
        CharacterEntry::Cyclotomic { order, coeffs } => {
            if *order == 0 || coeffs.len() != *order {
                return None;
            }
            let coeffs = coeffs.iter().map(|c| parse_rational(c)).collect::<Option<Vec<_>>>()?;
            Some(Cyclotomic::from_coeffs(*order, coeffs))
        }
    }
}

pub const Z2_JSON: &str = r#"{
  "name": "Z2", "order": 2, "center_order": 2, "onsite": "odd",
  "classes": [{"size": 1, "label": "e"}, {"size": 1, "label": "g"}],
  "irreps": [{"label": "inv", "dim": 1}, {"label": "odd", "dim": 1}],
  "characters": [
    [["1", "0"], ["1", "0"]],
    [["1", "0"], ["-1", "0"]]
  ]
}"#;

pub const Z3_JSON: &str = r#"{
  "name": "Z3", "order": 3, "center_order": 3, "onsite": "w",
  "classes": [{"size": 1, "label": "e"}, {"size": 1, "label": "g"}, {"size": 1, "label": "g2"}],
  "irreps": [{"label": "inv", "dim": 1}, {"label": "w", "dim": 1}, {"label": "w2", "dim": 1}],
  "characters": [
    [["1", "0"], ["1", "0"], ["1", "0"]],
    [["1", "0"], {"order": 3, "coeffs": ["0", "1", "0"]}, {"order": 3, "coeffs": ["0", "0", "1"]}],
    [["1", "0"], {"order": 3, "coeffs": ["0", "0", "1"]}, {"order": 3, "coeffs": ["0", "1", "0"]}]
  ]
}"#;

pub const S3_JSON: &str = r#"{
  "name": "S3", "order": 6, "center_order": 1, "onsite": "2d",
  "classes": [{"size": 1, "label": "e"}, {"size": 2, "label": "rotation"}, {"size": 3, "label": "reflection"}],
  "irreps": [{"label": "inv", "dim": 1}, {"label": "sgn", "dim": 1}, {"label": "2d", "dim": 2}],
  "characters": [
    [["1", "0"], ["1", "0"], ["1", "0"]],
    [["1", "0"], ["1", "0"], ["-1", "0"]],
    [["2", "0"], ["-1", "0"], ["0", "0"]]
  ]
}"#;

pub const D4_JSON: &str = r#"{
  "name": "D4", "order": 8, "center_order": 2, "onsite": "E",
  "classes": [
    {"size": 1, "label": "e"}, {"size": 1, "label": "r2"}, {"size": 2, "label": "r"},
    {"size": 2, "label": "s"}, {"size": 2, "label": "sr"}
  ],
  "irreps": [
    {"label": "A1", "dim": 1}, {"label": "A2", "dim": 1}, {"label": "B1", "dim": 1},
    {"label": "B2", "dim": 1}, {"label": "E", "dim": 2}
  ],
  "characters": [
    [["1", "0"], ["1", "0"], ["1", "0"], ["1", "0"], ["1", "0"]],
    [["1", "0"], ["1", "0"], ["1", "0"], ["-1", "0"], ["-1", "0"]],
    [["1", "0"], ["1", "0"], ["-1", "0"], ["1", "0"], ["-1", "0"]],
    [["1", "0"], ["1", "0"], ["-1", "0"], ["-1", "0"], ["1", "0"]],
    [["2", "0"], ["-2", "0"], ["0", "0"], ["0", "0"], ["0", "0"]]
  ]
}"#;

/// Tables bundled with the library, by lower-case name.
pub fn shipped_table(name: &str) -> Option<CharacterTable> {
    let json = match name.to_ascii_lowercase().as_str() {
        "z2" => Z2_JSON,
        "z3" => Z3_JSON,
        "s3" => S3_JSON,
        "d4" => D4_JSON,
        _ => return None,
    };
    Some(CharacterTable::from_json(json).expect("bundled tables are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_tables_validate() {
        for name in ["z2", "z3", "s3", "d4"] {
            let t = shipped_table(name).unwrap();
            assert!(t.default_onsite().is_some(), "{name}");
            assert!(t.is_faithful(t.default_onsite().unwrap()), "{name} onsite irrep is faithful");
        }
    }

    #[test]
    fn z3_conjugates_swap() {
        let t = shipped_table("z3").unwrap();
        let w = t.irrep_index("w").unwrap();
        let w2 = t.irrep_index("w2").unwrap();
        assert_eq!(t.conjugate(w), w2);
        assert_eq!(t.conjugate(w2), w);
        assert_eq!(t.conjugate(t.invariant()), t.invariant());
    }

    #[test]
    fn s3_real_table_is_self_conjugate() {
        let t = shipped_table("s3").unwrap();
        for j in 0..t.num_irreps() {
            assert_eq!(t.conjugate(j), j);
        }
    }

    #[test]
    fn corrupt_tables_are_rejected() {
        let broken = S3_JSON.replace(r#"["-1", "0"], ["0", "0"]"#, r#"["-1", "0"], ["1", "0"]"#);
        assert!(matches!(CharacterTable::from_json(&broken), Err(Error::CorruptTable(_))));
        let bad_sizes = S3_JSON.replace(r#""size": 3"#, r#""size": 2"#);
        assert!(matches!(CharacterTable::from_json(&bad_sizes), Err(Error::CorruptTable(_))));
    }

    #[test]
    fn non_integral_multiplicity_is_reported() {
        // Scaling the onsite character breaks integrality of the inner products.
        let t = shipped_table("s3").unwrap();
        let mut doc: CharacterTableDoc = serde_json::from_str(S3_JSON).unwrap();
        doc.characters[2][1] = CharacterEntry::Gaussian(["1".into(), "0".into()]);
        assert!(CharacterTable::from_doc(doc).is_err());
        assert!(t.tensor_power_multiplicity(0, 2, 6).is_ok());
    }
}
