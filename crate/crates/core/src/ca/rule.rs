use serde::{Deserialize, Serialize};

use super::{CaError, Result};

/// A local map `Σ^w → Σ`. The cell at position `i` is updated from the
/// neighborhood `x(i+anchor), ..., x(i+anchor+w-1)`. The table is indexed
/// lexicographically, first neighborhood cell most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalRule {
    alphabet_size: u8,
    width: usize,
    anchor: i64,
    table: Vec<u8>,
}

/// JSON rule file: `{"alphabet_size": 2, "width": 3, "anchor": -1, "table": [...]}`.
/// `anchor` defaults to `-(width / 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleFile {
    pub alphabet_size: u8,
    pub width: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<i64>,
    pub table: Vec<u8>,
}

impl LocalRule {
    pub fn new(alphabet_size: u8, width: usize, anchor: i64, table: Vec<u8>) -> Result<Self> {
        if !(2..=36).contains(&alphabet_size) {
            return Err(CaError::InvalidTable(format!("alphabet size {alphabet_size} outside 2..=36")));
        }
        if width == 0 {
            return Err(CaError::InvalidTable("width must be at least 1".into()));
        }
        let expected = (alphabet_size as usize)
            .checked_pow(width as u32)
            .filter(|&n| n <= 1 << 24)
            .ok_or_else(|| CaError::InvalidTable("table too large".into()))?;
        if table.len() != expected {
            return Err(CaError::InvalidTable(format!("expected {expected} entries, got {}", table.len())));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= alphabet_size) {
            return Err(CaError::InvalidTable(format!("entry {bad} outside the alphabet")));
        }
        if table[0] != 0 {
            return Err(CaError::NonQuiescent(table[0]));
        }
        Ok(LocalRule { alphabet_size, width, anchor, table })
    }

    /// Elementary rule `n` in Wolfram numbering: width 3, anchor -1,
    /// `(a, b, c) ↦ bit (4a + 2b + c) of n`.
    pub fn eca(n: u32) -> Result<Self> {
        if n > 255 {
            return Err(CaError::RuleNumber(n));
        }
        let table = (0..8).map(|i| ((n >> i) & 1) as u8).collect();
        LocalRule::new(2, 3, -1, table)
    }

    pub fn from_file(file: RuleFile) -> Result<Self> {
        let anchor = file.anchor.unwrap_or(-((file.width / 2) as i64));
        LocalRule::new(file.alphabet_size, file.width, anchor, file.table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        LocalRule::from_file(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> RuleFile {
        RuleFile {
            alphabet_size: self.alphabet_size,
            width: self.width,
            anchor: Some(self.anchor),
            table: self.table.clone(),
        }
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn anchor(&self) -> i64 {
        self.anchor
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    #[inline]
    pub fn lookup(&self, index: usize) -> u8 {
        self.table[index]
    }

    /// Evaluates the local map on a neighborhood of exactly `width` letters.
    pub fn apply(&self, neighborhood: &[u8]) -> u8 {
        debug_assert_eq!(neighborhood.len(), self.width);
        let base = self.alphabet_size as usize;
        self.table[neighborhood.iter().fold(0, |acc, &c| acc * base + c as usize)]
    }
}
