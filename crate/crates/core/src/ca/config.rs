use std::fmt;
use std::str::FromStr;

use super::CaError;

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// A configuration of finite support, stored canonically: `cells` is empty or
/// starts and ends with a non-zero letter, and `offset` is the absolute
/// coordinate of `cells[0]` (zero for the empty configuration).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    cells: Vec<u8>,
    offset: i64,
}

impl Configuration {
    /// Canonicalizes an arbitrary window `cells` placed at `offset`.
    pub fn new(mut cells: Vec<u8>, offset: i64) -> Self {
        let Some(first) = cells.iter().position(|&c| c != 0) else {
            return Configuration::empty();
        };
        let last = cells.iter().rposition(|&c| c != 0).unwrap();
        cells.truncate(last + 1);
        cells.drain(..first);
        Configuration { cells, offset: offset + first as i64 }
    }

    pub fn empty() -> Self {
        Configuration { cells: Vec::new(), offset: 0 }
    }

    pub fn single(letter: u8, position: i64) -> Self {
        Configuration::new(vec![letter], position)
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Half-open support bounds `[l, r)`, or `None` when empty.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.cells.is_empty()).then(|| (self.offset, self.offset + self.cells.len() as i64))
    }

    /// The letter at absolute position `i`.
    #[inline]
    pub fn get(&self, i: i64) -> u8 {
        let j = i - self.offset;
        if j < 0 || j >= self.cells.len() as i64 {
            0
        } else {
            self.cells[j as usize]
        }
    }

    /// Cells over the absolute window `[from, to)`.
    pub fn window(&self, from: i64, to: i64) -> Vec<u8> {
        (from..to).map(|i| self.get(i)).collect()
    }

    pub fn translate(&self, by: i64) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        Configuration { cells: self.cells.clone(), offset: self.offset + by }
    }

    pub fn max_letter(&self) -> u8 {
        self.cells.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Configuration {
    /// `word@offset`, letters written as base-36 digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.cells {
            write!(f, "{}", DIGITS[c as usize] as char)?;
        }
        write!(f, "@{}", self.offset)
    }
}

impl FromStr for Configuration {
    type Err = CaError;

    /// Accepts `word@offset` or a bare `word` (offset 0).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| CaError::BadConfiguration { text: s.to_string(), reason: reason.to_string() };
        let (word, offset) = match s.split_once('@') {
            Some((w, o)) => (w, o.trim().parse::<i64>().map_err(|_| bad("offset is not an integer"))?),
            None => (s, 0),
        };
        let cells = word
            .trim()
            .bytes()
            .map(|b| {
                DIGITS
                    .iter()
                    .position(|&d| d == b.to_ascii_lowercase())
                    .map(|p| p as u8)
                    .ok_or_else(|| bad("letters must be base-36 digits"))
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Ok(Configuration::new(cells, offset))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_trims_zeros() {
        let c = Configuration::new(vec![0, 0, 1, 0, 2, 0], -3);
        assert_eq!(c.cells(), &[1, 0, 2]);
        assert_eq!(c.offset(), -1);
        assert_eq!(Configuration::new(vec![0, 0], 7), Configuration::empty());
    }

    #[test]
    fn parse_and_display() {
        let c: Configuration = "0110@-2".parse().unwrap();
        assert_eq!(c.to_string(), "11@-1");
        assert_eq!("@5".parse::<Configuration>().unwrap(), Configuration::empty());
        assert_eq!("101".parse::<Configuration>().unwrap().support(), Some((0, 3)));
        assert!("1x?@0".parse::<Configuration>().is_err());
        assert!("1@a".parse::<Configuration>().is_err());
    }

    #[test]
    fn window_reads_zero_outside_support() {
        let c: Configuration = "11@-1".parse().unwrap();
        assert_eq!(c.window(-2, 2), vec![0, 1, 1, 0]);
    }
}
