//! Externally sourced constants. Every entry carries a provenance string;
//! overrides without one are refused unless explicitly allowed.

use serde::{Deserialize, Serialize};

use liftperiod::kernel::{Matrix, QuadScalar};
use liftperiod::pullback::BasisTable;
use liftperiod::qforms::HalfIntMat;
use liftperiod::{Error, Result};

const BUILTIN: &str = include_str!("../data/curated.json");

/// Marker written into the provenance of an accepted unprovenanced override.
pub const UNVERIFIED: &str = "UNVERIFIED override";

/// Which real embedding of the Hecke field a value is written in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Embedding {
    Rational,
    #[default]
    Plus,
    Minus,
}

impl Embedding {
    /// Moves a value stored in the `+λ` embedding into `self`.
    pub fn apply(self, x: &QuadScalar) -> QuadScalar {
        match self {
            Embedding::Minus => x.conj(),
            _ => x.clone(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Embedding::Rational => "rational",
            Embedding::Plus => "plus",
            Embedding::Minus => "minus",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuratedValue {
    pub key: String,
    pub name: String,
    /// Exact scalar as `a/b` or `(a+b*sqrt(d))/c`.
    pub value: String,
    #[serde(default)]
    pub provenance: String,
    pub embedding: Embedding,
}

impl CuratedValue {
    /// The value moved into `target`.
    pub fn scalar(&self, target: Embedding) -> Result<QuadScalar> {
        let x = QuadScalar::parse(&self.value)?;
        Ok(match self.embedding {
            Embedding::Rational => x,
            Embedding::Plus => target.apply(&x),
            Embedding::Minus => target.apply(&x.conj()),
        })
    }
}

/// Fourier coefficients `c_{F_j}(A_i)` of an eigenbasis, rows indexed by `A_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuratedTable {
    pub key: String,
    pub name: String,
    pub rows: Vec<HalfIntMat>,
    pub coeffs: Vec<Vec<String>>,
    #[serde(default)]
    pub provenance: String,
    pub embedding: Embedding,
}

impl CuratedTable {
    pub fn basis_table(&self, target: Embedding) -> Result<BasisTable> {
        let mut rows = Vec::with_capacity(self.coeffs.len());
        for row in &self.coeffs {
            let mut out = Vec::with_capacity(row.len());
            for s in row {
                let x = QuadScalar::parse(s)?;
                out.push(match self.embedding {
                    Embedding::Minus => target.apply(&x.conj()),
                    _ => target.apply(&x),
                });
            }
            rows.push(out);
        }
        BasisTable::new(self.rows.clone(), Matrix::from_rows(rows))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuratedStore {
    #[serde(default)]
    pub version: u32,
    #[serde(default)]
    pub values: Vec<CuratedValue>,
    #[serde(default)]
    pub tables: Vec<CuratedTable>,
    /// Published intermediates used only to locate divergences.
    #[serde(default)]
    pub checkpoints: Vec<CuratedValue>,
}

impl CuratedStore {
    /// The versioned store shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled curated.json is valid")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let store: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        store.check_parses()?;
        Ok(store)
    }

    fn check_parses(&self) -> Result<()> {
        for v in self.values.iter().chain(&self.checkpoints) {
            QuadScalar::parse(&v.value)?;
        }
        for t in &self.tables {
            for s in t.coeffs.iter().flatten() {
                QuadScalar::parse(s)?;
            }
        }
        Ok(())
    }

    /// Fails on the first entry without provenance.
    pub fn check_provenance(&self) -> Result<()> {
        let keys = self
            .values
            .iter()
            .chain(&self.checkpoints)
            .map(|v| (&v.key, &v.provenance))
            .chain(self.tables.iter().map(|t| (&t.key, &t.provenance)));
        for (key, prov) in keys {
            if prov.trim().is_empty() {
                return Err(Error::Unprovenanced(key.clone()));
            }
        }
        Ok(())
    }

    /// Replaces entries by key. Overrides without provenance are rejected
    /// unless `allow_unverified`, in which case they are tagged.
    pub fn with_overrides(mut self, overrides: CuratedStore, allow_unverified: bool) -> Result<Self> {
        let stamp = |key: &str, prov: &mut String| -> Result<()> {
            if prov.trim().is_empty() {
                if !allow_unverified {
                    return Err(Error::Unprovenanced(key.to_string()));
                }
                *prov = UNVERIFIED.to_string();
            }
            Ok(())
        };
        for mut v in overrides.values {
            stamp(&v.key, &mut v.provenance)?;
            upsert(&mut self.values, v, |x| &x.key);
        }
        for mut v in overrides.checkpoints {
            stamp(&v.key, &mut v.provenance)?;
            upsert(&mut self.checkpoints, v, |x| &x.key);
        }
        for mut t in overrides.tables {
            stamp(&t.key, &mut t.provenance)?;
            upsert(&mut self.tables, t, |x| &x.key);
        }
        self.check_parses()?;
        Ok(self)
    }

    pub fn value(&self, key: &str) -> Result<&CuratedValue> {
        self.values.iter().find(|v| v.key == key).ok_or_else(|| Error::MissingCurated(key.into()))
    }

    pub fn table(&self, key: &str) -> Result<&CuratedTable> {
        self.tables.iter().find(|t| t.key == key).ok_or_else(|| Error::MissingCurated(key.into()))
    }

    pub fn checkpoint(&self, key: &str) -> Option<&CuratedValue> {
        self.checkpoints.iter().find(|v| v.key == key)
    }

    /// Mutable access for perturbation experiments.
    pub fn value_mut(&mut self, key: &str) -> Result<&mut CuratedValue> {
        self.values.iter_mut().find(|v| v.key == key).ok_or_else(|| Error::MissingCurated(key.into()))
    }
}

fn upsert<T>(items: &mut Vec<T>, item: T, key: impl Fn(&T) -> &String) {
    match items.iter().position(|x| key(x) == key(&item)) {
        Some(i) => items[i] = item,
        None => items.push(item),
    }
}
