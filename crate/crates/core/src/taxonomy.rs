//! The heir taxonomy: canonical labels with gender, kinship class and
//! residuary capability, loaded from `data/taxonomy.txt`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;
use serde::{Serialize, Serializer};

use crate::arabic::fold;

const STANDARD_TAXONOMY: &str = include_str!("../data/taxonomy.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Male,
    Female,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KinshipClass {
    Spouse,
    Ascendant,
    Descendant,
    Collateral,
}

/// One heir category. Cheap to copy; identity is the canonical label.
#[derive(Clone, Copy)]
pub struct HeirCategory {
    label: &'static str,
    gender: Gender,
    kinship: KinshipClass,
    residuary: bool,
    rank: u16,
    note: &'static str,
}

impl HeirCategory {
    pub fn label(&self) -> &'static str {
        self.label
    }

    pub fn gender(&self) -> Gender {
        self.gender
    }

    pub fn kinship(&self) -> KinshipClass {
        self.kinship
    }

    /// True for male agnates who take the remainder in their own right.
    pub fn residuary_capable(&self) -> bool {
        self.residuary
    }

    /// Position in the taxonomy file.
    pub fn rank(&self) -> u16 {
        self.rank
    }

    pub fn note(&self) -> &'static str {
        self.note
    }

    pub fn is_spouse(&self) -> bool {
        self.kinship == KinshipClass::Spouse
    }

    /// Head weight within a residuary group: a male takes twice a female.
    pub fn residue_weight(&self) -> u32 {
        match self.gender {
            Gender::Male => 2,
            Gender::Female => 1,
        }
    }
}

impl PartialEq for HeirCategory {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
    }
}

impl Eq for HeirCategory {}

impl PartialOrd for HeirCategory {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeirCategory {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.label.cmp(other.label))
    }
}

impl core::hash::Hash for HeirCategory {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.label.hash(state);
    }
}

impl fmt::Debug for HeirCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label)
    }
}

impl fmt::Display for HeirCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label)
    }
}

impl Serialize for HeirCategory {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaxonomyError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for TaxonomyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "taxonomy line {}: {}", self.line, self.message)
    }
}

impl core::error::Error for TaxonomyError {}

#[derive(Debug, Clone)]
pub struct Taxonomy {
    categories: Vec<HeirCategory>,
    by_key: BTreeMap<String, usize>,
}

impl Taxonomy {
    pub fn parse(text: &'static str) -> Result<Self, TaxonomyError> {
        let mut categories = Vec::new();
        let mut by_key = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| TaxonomyError {
                line: idx + 1,
                message: message.into(),
            };
            let fields: Vec<&'static str> = line.split('|').map(str::trim).collect();
            let [label, gender, kinship, residuary, note] = fields[..] else {
                return Err(err("expected five '|'-separated fields"));
            };
            let gender = match gender {
                "male" => Gender::Male,
                "female" => Gender::Female,
                _ => return Err(err("gender must be male or female")),
            };
            let kinship = match kinship {
                "spouse" => KinshipClass::Spouse,
                "ascendant" => KinshipClass::Ascendant,
                "descendant" => KinshipClass::Descendant,
                "collateral" => KinshipClass::Collateral,
                _ => return Err(err("unknown kinship class")),
            };
            let residuary = match residuary {
                "yes" => true,
                "no" => false,
                _ => return Err(err("residuary must be yes or no")),
            };
            let rank = u16::try_from(categories.len()).map_err(|_| err("too many categories"))?;
            if by_key.insert(fold(label), categories.len()).is_some() {
                return Err(err("duplicate label"));
            }
            categories.push(HeirCategory {
                label,
                gender,
                kinship,
                residuary,
                rank,
                note,
            });
        }
        Ok(Taxonomy { categories, by_key })
    }

    pub fn categories(&self) -> &[HeirCategory] {
        &self.categories
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    /// Exact lookup of a canonical label, modulo matcher folding.
    pub fn get(&self, label: &str) -> Option<HeirCategory> {
        self.by_key.get(&fold(label)).map(|&i| self.categories[i])
    }
}

/// The built-in taxonomy.
pub fn taxonomy() -> &'static Taxonomy {
    static CELL: OnceBox<Taxonomy> = OnceBox::new();
    CELL.get_or_init(|| {
        Box::new(Taxonomy::parse(STANDARD_TAXONOMY).expect("built-in taxonomy is well formed"))
    })
}

/// Look up a canonical label in the built-in taxonomy.
pub fn category(label: &str) -> Option<HeirCategory> {
    taxonomy().get(label)
}
