//! Graded Betti tables and the invariants read off them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which quotient a table belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subject {
    /// `S/J_G`
    #[serde(rename = "J")]
    Ideal,
    /// `S/in(J_G)`
    #[serde(rename = "inJ")]
    Initial,
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subject::Ideal => "J",
            Subject::Initial => "inJ",
        })
    }
}

/// The internal degrees for which every entry is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coverage {
    Full,
    UpTo(usize),
    Degrees(BTreeSet<usize>),
}

impl Coverage {
    pub fn covers(&self, j: usize) -> bool {
        match self {
            Coverage::Full => true,
            Coverage::UpTo(d) => j <= *d,
            Coverage::Degrees(ds) => ds.contains(&j),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
    nvars: usize,
    subject: Subject,
    coverage: Coverage,
}

impl BettiTable {
    pub fn new(nvars: usize, subject: Subject, coverage: Coverage) -> Self {
        BettiTable {
            entries: BTreeMap::new(),
            nvars,
            subject,
            coverage,
        }
    }

    /// Adds `value` to `β_{i,j}`.
    pub fn add(&mut self, i: usize, j: usize, value: u64) {
        if value > 0 {
            *self.entries.entry((i, j)).or_insert(0) += value;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn subject(&self) -> Subject {
        self.subject
    }

    pub fn coverage(&self) -> &Coverage {
        &self.coverage
    }

    pub fn is_complete(&self) -> bool {
        self.coverage == Coverage::Full
    }

    /// Total Betti number `β_i = Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..(i + 1, 0)).map(|(_, v)| v).sum()
    }

    /// `β_{i,i+1}` for every `i` in the table.
    pub fn linear_strand(&self) -> BTreeMap<usize, u64> {
        self.entries
            .iter()
            .filter(|((i, j), _)| *j == i + 1)
            .map(|(&(i, _), &v)| (i, v))
            .collect()
    }

    /// Table of the tensor product of the two quotients (graphs on disjoint
    /// vertex sets): the convolution of the two tables.
    pub fn convolve(&self, other: &BettiTable) -> Result<BettiTable> {
        if !self.is_complete() || !other.is_complete() {
            return Err(Error::IncompleteTable(
                "convolution needs full tables".into(),
            ));
        }
        let subject = if self.subject == other.subject {
            self.subject
        } else {
            return Err(Error::LengthMismatch("tables of different subjects".into()));
        };
        let mut out = BettiTable::new(self.nvars + other.nvars, subject, Coverage::Full);
        for (&(a, b), &x) in &self.entries {
            for (&(c, d), &y) in &other.entries {
                out.add(a + c, b + d, x * y);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(BettiJson::from(self)).expect("table serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: BettiJson = serde_json::from_str(text)?;
        BettiTable::try_from(raw)
    }

    /// Grid with one row per homological degree `i` and one column per
    /// `j - i`; zero entries print as `.`.
    pub fn to_grid(&self) -> String {
        let max_i = self.entries.keys().map(|k| k.0).max().unwrap_or(0);
        let max_r = self
            .entries
            .keys()
            .map(|&(i, j)| j.saturating_sub(i))
            .max()
            .unwrap_or(0);
        let cell = |i: usize, r: usize| match self.entries.get(&(i, i + r)) {
            Some(v) => v.to_string(),
            None => ".".to_string(),
        };
        let width = self
            .entries
            .values()
            .map(|v| v.to_string().len())
            .chain([max_r.to_string().len()])
            .max()
            .unwrap_or(1);
        let mut out = format!("{:>5} |", "i\\j-i");
        for r in 0..=max_r {
            out += &format!(" {:>width$}", r);
        }
        out.push('\n');
        for i in 0..=max_i {
            out += &format!("{:>5} |", i);
            for r in 0..=max_r {
                out += &format!(" {:>width$}", cell(i, r));
            }
            out.push('\n');
        }
        out
    }
}

/// JSON form: `{"subject": "J", "nvars": 4, "coverage": "full",
/// "entries": {"0,0": 1, "1,2": 1}}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BettiJson {
    subject: Subject,
    nvars: usize,
    coverage: Coverage,
    entries: BTreeMap<String, u64>,
}

impl From<&BettiTable> for BettiJson {
    fn from(t: &BettiTable) -> Self {
        BettiJson {
            subject: t.subject,
            nvars: t.nvars,
            coverage: t.coverage.clone(),
            entries: t
                .entries
                .iter()
                .map(|(&(i, j), &v)| (format!("{i},{j}"), v))
                .collect(),
        }
    }
}

impl TryFrom<BettiJson> for BettiTable {
    type Error = Error;

    fn try_from(raw: BettiJson) -> Result<Self> {
        let bad = |msg: String| Error::Parse { pos: 0, msg };
        let mut t = BettiTable::new(raw.nvars, raw.subject, raw.coverage);
        for (key, v) in raw.entries {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| bad(format!("entry key {key:?} is not \"i,j\"")))?;
            let i: usize = a
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad index in {key:?}")))?;
            let j: usize = b
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad degree in {key:?}")))?;
            if i > t.nvars || j < i {
                return Err(bad(format!("entry {key:?} out of range")));
            }
            t.add(i, j, v);
        }
        Ok(t)
    }
}

/// An extremal Betti number `β_{i,i+r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    pub i: usize,
    pub r: usize,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalCorners {
    pub corners: Vec<Corner>,
    pub unique: bool,
}

impl ExtremalCorners {
    pub fn unique_value(&self) -> Option<u64> {
        self.unique.then(|| self.corners[0].value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableInvariants {
    pub reg: usize,
    pub projdim: usize,
    #[serde(rename = "cmType")]
    pub cm_type: u64,
    pub corners: ExtremalCorners,
}

pub fn extremal_corners(t: &BettiTable) -> ExtremalCorners {
    let nonzero: Vec<(usize, usize, u64)> = t
        .entries()
        .filter(|&((i, j), _)| j >= i)
        .map(|((i, j), v)| (i, j - i, v))
        .collect();
    let corners: Vec<Corner> = nonzero
        .iter()
        .filter(|&&(i, r, _)| {
            !nonzero
                .iter()
                .any(|&(k, l, _)| k >= i && l >= r && (k, l) != (i, r))
        })
        .map(|&(i, r, value)| Corner { i, r, value })
        .collect();
    let unique = corners.len() == 1;
    ExtremalCorners { corners, unique }
}

/// reg, projdim, CM-type (`β_p`) and extremal corners of a full table.
pub fn invariants_from_table(t: &BettiTable) -> Result<TableInvariants> {
    if !t.is_complete() {
        return Err(Error::IncompleteTable(format!(
            "coverage is {:?}, invariants need every degree",
            t.coverage()
        )));
    }
    let reg = t.entries().map(|((i, j), _)| j - i).max().unwrap_or(0);
    let projdim = t.entries().map(|((i, _), _)| i).max().unwrap_or(0);
    Ok(TableInvariants {
        reg,
        projdim,
        cm_type: t.total(projdim),
        corners: extremal_corners(t),
    })
}
