use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A symbol that may appear in a signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symbol {
    /// Abstract disjoint union, relation `J`.
    Join,
    /// Abstract subset complement, relation `K`.
    Minus,
    /// Total binary meet, represented as intersection.
    Meet,
    /// Total composition; only the constant-zero composition is supported.
    Comp,
    /// The constant zero.
    Zero,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [
        Symbol::Join,
        Symbol::Minus,
        Symbol::Meet,
        Symbol::Comp,
        Symbol::Zero,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Symbol::Join => "join",
            Symbol::Minus => "minus",
            Symbol::Meet => "meet",
            Symbol::Comp => "comp",
            Symbol::Zero => "zero",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Symbol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symbol::ALL
            .into_iter()
            .find(|sym| sym.as_str() == s)
            .ok_or_else(|| format!("unknown signature symbol `{s}`"))
    }
}

/// The set of operation symbols an algebra interprets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    pub has_join: bool,
    pub has_minus: bool,
    pub has_meet: bool,
    pub has_comp: bool,
    pub has_zero: bool,
}

impl Signature {
    pub const JOIN: Signature = Signature {
        has_join: true,
        has_minus: false,
        has_meet: false,
        has_comp: false,
        has_zero: false,
    };

    pub const MINUS: Signature = Signature {
        has_join: false,
        has_minus: true,
        has_meet: false,
        has_comp: false,
        has_zero: false,
    };

    pub fn from_symbols(symbols: impl IntoIterator<Item = Symbol>) -> Self {
        let mut sig = Signature::default();
        for s in symbols {
            sig.set(s, true);
        }
        sig
    }

    pub fn contains(&self, s: Symbol) -> bool {
        match s {
            Symbol::Join => self.has_join,
            Symbol::Minus => self.has_minus,
            Symbol::Meet => self.has_meet,
            Symbol::Comp => self.has_comp,
            Symbol::Zero => self.has_zero,
        }
    }

    pub fn set(&mut self, s: Symbol, on: bool) {
        match s {
            Symbol::Join => self.has_join = on,
            Symbol::Minus => self.has_minus = on,
            Symbol::Meet => self.has_meet = on,
            Symbol::Comp => self.has_comp = on,
            Symbol::Zero => self.has_zero = on,
        }
    }

    pub fn with(mut self, s: Symbol) -> Self {
        self.set(s, true);
        self
    }

    pub fn without(mut self, s: Symbol) -> Self {
        self.set(s, false);
        self
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL
            .into_iter()
            .filter(|s| self.contains(*s))
            .collect()
    }

    /// True when none of join, minus, meet is present.
    pub fn is_degenerate(&self) -> bool {
        !(self.has_join || self.has_minus || self.has_meet)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.symbols().iter().map(|s| s.as_str()).collect();
        write!(f, "({})", names.join(", "))
    }
}
