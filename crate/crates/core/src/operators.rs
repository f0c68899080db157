//! Binary boolean operators as 4-bit truth tables, applied elementwise.
//!
//! Bit `2a + b` of the table is the output on inputs `(a, b)`. All sixteen
//! tables are valid operators; the named constants cover the ones that have
//! a conventional name.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::bitcore::{width_mask, BinaryMatrix, BitRow};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolOp(u8);

impl BoolOp {
    pub const FALSE: BoolOp = BoolOp(0b0000);
    /// `¬A ∧ ¬B`, joint denial (↓).
    pub const NOR: BoolOp = BoolOp(0b0001);
    /// `¬A ∧ B`, converse abjunction.
    pub const CABJ: BoolOp = BoolOp(0b0010);
    pub const NOT_LEFT: BoolOp = BoolOp(0b0011);
    /// `A ∧ ¬B`, abjunction (↛).
    pub const ABJ: BoolOp = BoolOp(0b0100);
    pub const NOT_RIGHT: BoolOp = BoolOp(0b0101);
    /// Exclusive or (↮).
    pub const XOR: BoolOp = BoolOp(0b0110);
    /// `¬(A ∧ B)`, alternative denial (↑).
    pub const NAND: BoolOp = BoolOp(0b0111);
    pub const AND: BoolOp = BoolOp(0b1000);
    /// Biconditional (↔).
    pub const XNOR: BoolOp = BoolOp(0b1001);
    pub const RIGHT: BoolOp = BoolOp(0b1010);
    /// `¬A ∨ B`, material conditional (→).
    pub const IMP: BoolOp = BoolOp(0b1011);
    pub const LEFT: BoolOp = BoolOp(0b1100);
    /// `A ∨ ¬B`, converse implication.
    pub const CIMP: BoolOp = BoolOp(0b1101);
    pub const OR: BoolOp = BoolOp(0b1110);
    pub const TRUE: BoolOp = BoolOp(0b1111);

    pub fn from_table(table: u8) -> Result<Self> {
        if table > 15 {
            return Err(Error::ParameterOutOfRange(format!(
                "truth table {table} exceeds 15"
            )));
        }
        Ok(BoolOp(table))
    }

    #[inline]
    pub fn table(self) -> u8 {
        self.0
    }

    /// All sixteen operators in table order.
    pub fn all() -> impl Iterator<Item = BoolOp> {
        (0..16u8).map(BoolOp)
    }

    #[inline]
    pub fn eval(self, a: bool, b: bool) -> bool {
        (self.0 >> (2 * a as u8 + b as u8)) & 1 == 1
    }

    /// Applies the operator to every bit position of two packed words.
    #[inline]
    pub(crate) fn apply_word(self, a: u64, b: u64) -> u64 {
        let t = self.0;
        let mut out = 0u64;
        if t & 0b0001 != 0 {
            out |= !a & !b;
        }
        if t & 0b0010 != 0 {
            out |= !a & b;
        }
        if t & 0b0100 != 0 {
            out |= a & !b;
        }
        if t & 0b1000 != 0 {
            out |= a & b;
        }
        out
    }

    /// Elementwise application to two rows of equal width.
    pub fn apply(self, a: &BitRow, b: &BitRow) -> Result<BitRow> {
        if a.width() != b.width() {
            return Err(Error::WidthMismatch {
                expected: a.width(),
                found: b.width(),
            });
        }
        let code = self.apply_word(a.code(), b.code()) & width_mask(a.width());
        Ok(BitRow::from_code_unchecked(a.width(), code))
    }

    /// The operator `˜op` on complemented inputs: `˜op(¬a, ¬b) = ¬op(a, b)`.
    ///
    /// Built by evaluating the identity on all four input pairs.
    pub fn tilde(self) -> BoolOp {
        let mut table = 0u8;
        for x in [false, true] {
            for y in [false, true] {
                if !self.eval(!x, !y) {
                    table |= 1 << (2 * x as u8 + y as u8);
                }
            }
        }
        BoolOp(table)
    }

    pub fn name(self) -> Option<&'static str> {
        Some(match self {
            BoolOp::AND => "and",
            BoolOp::OR => "or",
            BoolOp::XOR => "xor",
            BoolOp::XNOR => "xnor",
            BoolOp::NAND => "nand",
            BoolOp::NOR => "nor",
            BoolOp::IMP => "imp",
            BoolOp::ABJ => "abj",
            BoolOp::CIMP => "cimp",
            BoolOp::CABJ => "cabj",
            _ => return None,
        })
    }
}

impl fmt::Display for BoolOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(name) => f.write_str(name),
            None => write!(f, "tt:{}", self.0),
        }
    }
}

impl fmt::Debug for BoolOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolOp({self}, {:04b})", self.0)
    }
}

/// Negates a row; the unary operator.
pub fn negate(a: &BitRow) -> BitRow {
    a.negate()
}

/// Negates every entry of a matrix.
pub fn tilde_matrix(m: &BinaryMatrix) -> BinaryMatrix {
    m.negate()
}

pub fn apply(op: BoolOp, a: &BitRow, b: &BitRow) -> Result<BitRow> {
    op.apply(a, b)
}

pub fn tilde_op(op: BoolOp) -> BoolOp {
    op.tilde()
}

/// An operator a row set can be closed under: unary negation or one of the
/// sixteen binary operators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    Binary(BoolOp),
    Not,
}

impl Operator {
    /// Number of distinct operators, and the width of a closure mask.
    pub const COUNT: usize = 17;

    /// The sixteen binary operators in table order, then negation.
    pub fn all() -> impl Iterator<Item = Operator> {
        BoolOp::all()
            .map(Operator::Binary)
            .chain(std::iter::once(Operator::Not))
    }

    /// Position in closure masks: the truth table for binary operators, 16
    /// for negation.
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Operator::Binary(op) => op.table() as usize,
            Operator::Not => 16,
        }
    }

    pub fn from_index(index: usize) -> Result<Self> {
        match index {
            0..=15 => Ok(Operator::Binary(BoolOp(index as u8))),
            16 => Ok(Operator::Not),
            _ => Err(Error::IndexOutOfRange {
                index,
                len: Self::COUNT,
            }),
        }
    }
}

impl From<BoolOp> for Operator {
    fn from(op: BoolOp) -> Self {
        Operator::Binary(op)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Binary(op) => op.fmt(f),
            Operator::Not => f.write_str("not"),
        }
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator({self})")
    }
}

impl Serialize for Operator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for BoolOp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Operator {
    type Err = Error;

    /// Case-insensitive: `and, or, xor, xnor, nand, nor, imp, abj, cimp, cabj,
    /// not`, or `tt:<0-15>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "not" {
            return Ok(Operator::Not);
        }
        if let Some(raw) = lower.strip_prefix("tt:") {
            let table: u8 = raw
                .parse()
                .map_err(|_| Error::UnknownOperator(s.to_string()))?;
            return BoolOp::from_table(table)
                .map(Operator::Binary)
                .map_err(|_| Error::UnknownOperator(s.to_string()));
        }
        BoolOp::all()
            .find(|op| op.name() == Some(lower.as_str()))
            .map(Operator::Binary)
            .ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}

impl FromStr for BoolOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<Operator>()? {
            Operator::Binary(op) => Ok(op),
            Operator::Not => Err(Error::UnknownOperator(format!(
                "{s} (unary, expected binary)"
            ))),
        }
    }
}
