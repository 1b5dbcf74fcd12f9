use std::fmt;

use crate::encodings::{binary_digits, from_binary_digits};
use crate::Nat;

/// Tape alphabet. The digit is the symbol's base-3 value in history codes and
/// its two-bit write field in table programs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Blank,
    Zero,
    One,
}

impl Symbol {
    pub fn digit(self) -> u8 {
        match self {
            Symbol::Blank => 0,
            Symbol::Zero => 1,
            Symbol::One => 2,
        }
    }

    pub fn from_digit(digit: u8) -> Option<Symbol> {
        match digit {
            0 => Some(Symbol::Blank),
            1 => Some(Symbol::Zero),
            2 => Some(Symbol::One),
            _ => None,
        }
    }

    fn from_bit(bit: bool) -> Symbol {
        if bit {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::Blank => "_",
            Symbol::Zero => "0",
            Symbol::One => "1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Motion {
    Left,
    Right,
}

impl fmt::Display for Motion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Motion::Left => "L",
            Motion::Right => "R",
        })
    }
}

/// Machine state plus the visited part of the tape.
///
/// The tape is stored as the window of visited cells: `cells[k]` is absolute
/// cell `origin + k`, and every cell outside the window is blank. The window
/// always contains the head. State `0` is the halted state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: u8,
    head: i64,
    origin: i64,
    cells: Vec<Symbol>,
}

impl Configuration {
    /// Initial configuration: state 1, head on cell 0, canonical binary of
    /// `input` in cells `0..len`, or a single blank cell for an empty tape.
    pub fn initial(input: Option<&Nat>) -> Self {
        let cells = match input {
            Some(x) => binary_digits(x).into_iter().map(Symbol::from_bit).collect(),
            None => vec![Symbol::Blank],
        };
        Configuration {
            state: 1,
            head: 0,
            origin: 0,
            cells,
        }
    }

    /// Rebuilds a configuration from its window. Returns `None` if the head is
    /// outside the window. The window is placed at origin 0.
    pub fn from_window(state: u8, head_offset: usize, cells: Vec<Symbol>) -> Option<Self> {
        if head_offset >= cells.len() {
            return None;
        }
        Some(Configuration {
            state,
            head: head_offset as i64,
            origin: 0,
            cells,
        })
    }

    pub fn is_halted(&self) -> bool {
        self.state == 0
    }

    pub fn head(&self) -> i64 {
        self.head
    }

    pub fn head_offset(&self) -> usize {
        (self.head - self.origin) as usize
    }

    /// Leftmost visited cell.
    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn window(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn read(&self) -> Symbol {
        self.cells[self.head_offset()]
    }

    pub fn write(&mut self, symbol: Symbol) {
        let at = self.head_offset();
        self.cells[at] = symbol;
    }

    /// Moves the head one cell, growing the window with a blank if needed.
    pub fn shift(&mut self, motion: Motion) {
        match motion {
            Motion::Left => {
                if self.head == self.origin {
                    self.cells.insert(0, Symbol::Blank);
                    self.origin -= 1;
                }
                self.head -= 1;
            }
            Motion::Right => {
                self.head += 1;
                if self.head_offset() == self.cells.len() {
                    self.cells.push(Symbol::Blank);
                }
            }
        }
    }

    /// Blanks every window cell at offset `from` or later.
    pub(crate) fn blank_from(&mut self, from: usize) {
        for cell in self.cells.iter_mut().skip(from) {
            *cell = Symbol::Blank;
        }
    }

    /// Output convention: the binary numeral running from the leftmost
    /// non-blank cell up to (not including) the first blank after it.
    /// An all-blank tape outputs `0`.
    pub fn output(&self) -> Nat {
        let bits: Vec<bool> = self
            .cells
            .iter()
            .skip_while(|&&s| s == Symbol::Blank)
            .take_while(|&&s| s != Symbol::Blank)
            .map(|&s| s == Symbol::One)
            .collect();
        from_binary_digits(&bits)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{} ", self.state)?;
        for (k, cell) in self.cells.iter().enumerate() {
            if k == self.head_offset() {
                write!(f, "[{cell}]")?;
            } else {
                write!(f, "{cell}")?;
            }
        }
        Ok(())
    }
}
