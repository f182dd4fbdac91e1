//! Fixed CSV number formatting.
//!
//! Reals are printed with six significant digits in the style of C's `%g`:
//! trailing zeros are dropped and exponents below -4 or at least 6 switch to
//! scientific notation (`1.5e-07`). Integers are printed in full.

use std::fmt::Write as _;

const SIG_DIGITS: i32 = 6;

pub fn real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // rounding may bump the exponent (999999.5 -> 1e+06), so read it back
    let sci = format!("{:.*e}", (SIG_DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..SIG_DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (SIG_DIGITS - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Accumulates CSV text with a header row.
pub struct Table {
    buf: String,
}

pub enum Cell {
    Int(i128),
    Real(f64),
    Text(String),
    Empty,
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v.into())
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        let mut buf = String::new();
        push_line(&mut buf, header.iter().map(|h| h.as_ref().to_string()));
        Table { buf }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        push_line(
            &mut self.buf,
            cells.into_iter().map(|c| match c {
                Cell::Int(v) => v.to_string(),
                Cell::Real(v) => real(v),
                Cell::Text(s) => s,
                Cell::Empty => String::new(),
            }),
        );
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

fn push_line(buf: &mut String, fields: impl Iterator<Item = String>) {
    let mut first = true;
    for f in fields {
        if !first {
            buf.push(',');
        }
        first = false;
        let _ = write!(buf, "{f}");
    }
    buf.push('\n');
}

/// Expands to a `Vec<Cell>` from heterogeneous values.
#[macro_export]
macro_rules! cells {
    ($($v:expr),* $(,)?) => {
        vec![$($crate::format::Cell::from($v)),*]
    };
}
