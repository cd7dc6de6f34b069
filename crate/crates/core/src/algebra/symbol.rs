use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Derivative multi-index of the dependent variable: `w` differentiated
/// `nx` times in `x` and `nt` times in `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetIndex {
    pub nx: u32,
    pub nt: u32,
}

impl JetIndex {
    pub const W: JetIndex = JetIndex { nx: 0, nt: 0 };

    pub const fn new(nx: u32, nt: u32) -> Self {
        Self { nx, nt }
    }

    pub const fn order(self) -> u32 {
        self.nx + self.nt
    }

    pub const fn dx(self) -> Self {
        Self::new(self.nx + 1, self.nt)
    }

    pub const fn dt(self) -> Self {
        Self::new(self.nx, self.nt + 1)
    }
}

impl fmt::Display for JetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("w")?;
        if self.order() > 0 {
            f.write_str("_")?;
            for _ in 0..self.nx {
                f.write_str("x")?;
            }
            for _ in 0..self.nt {
                f.write_str("t")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Independent,
    Dependent,
    Jet,
    Parameter,
}

/// Parameter name with natural ordering, so `C2 < C10` and `a1 < a2 < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamName(Arc<str>);

impl ParamName {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, Option<u64>) {
        let s = self.as_str();
        let digits = s.bytes().rev().take_while(u8::is_ascii_digit).count();
        if digits == 0 || digits == s.len() {
            return (s, None);
        }
        let (head, tail) = s.split_at(s.len() - digits);
        (head, tail.parse().ok())
    }
}

impl Ord for ParamName {
    fn cmp(&self, other: &Self) -> Ordering {
        let (ha, na) = self.split();
        let (hb, nb) = other.split();
        ha.cmp(hb)
            .then(na.cmp(&nb))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ParamName {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial indeterminate.
///
/// The variant order is the global symbol order used for canonical printing
/// and deterministic iteration: `x < t < w < jets < parameters`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    X,
    T,
    W,
    /// A jet coordinate of order at least one. Use [`Symbol::jet`] to build.
    Jet(JetIndex),
    Param(ParamName),
}

impl Symbol {
    /// Jet coordinate for `index`; `(0,0)` is `w` itself.
    pub fn jet(index: JetIndex) -> Self {
        if index == JetIndex::W {
            Symbol::W
        } else {
            Symbol::Jet(index)
        }
    }

    /// Shorthand for `Symbol::jet(JetIndex::new(nx, nt))`.
    pub fn w(nx: u32, nt: u32) -> Self {
        Self::jet(JetIndex::new(nx, nt))
    }

    /// A free parameter. Panics if `name` collides with a reserved
    /// coordinate name (`x`, `t`, `w`, `w_...`).
    pub fn param(name: &str) -> Self {
        assert!(
            !name.is_empty() && Self::parse_coordinate(name).is_none(),
            "parameter name {name:?} is reserved"
        );
        Symbol::Param(ParamName(Arc::from(name)))
    }

    /// Parses any symbol name: coordinates by their printed form, anything
    /// else as a parameter.
    pub fn parse(name: &str) -> Self {
        Self::parse_coordinate(name).unwrap_or_else(|| Self::param(name))
    }

    fn parse_coordinate(name: &str) -> Option<Self> {
        match name {
            "x" => return Some(Symbol::X),
            "t" => return Some(Symbol::T),
            "w" => return Some(Symbol::W),
            _ => {}
        }
        let rest = name.strip_prefix("w_")?;
        let nx = rest.bytes().take_while(|&b| b == b'x').count();
        let tail = &rest[nx..];
        if rest.is_empty() || !tail.bytes().all(|b| b == b't') {
            return None;
        }
        Some(Self::w(nx as u32, tail.len() as u32))
    }

    pub fn kind(&self) -> SymbolKind {
        match self {
            Symbol::X | Symbol::T => SymbolKind::Independent,
            Symbol::W => SymbolKind::Dependent,
            Symbol::Jet(_) => SymbolKind::Jet,
            Symbol::Param(_) => SymbolKind::Parameter,
        }
    }

    /// The jet index of `w` or a jet coordinate.
    pub fn as_jet(&self) -> Option<JetIndex> {
        match self {
            Symbol::W => Some(JetIndex::W),
            Symbol::Jet(j) => Some(*j),
            _ => None,
        }
    }

    pub fn is_parameter(&self) -> bool {
        matches!(self, Symbol::Param(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::X => f.write_str("x"),
            Symbol::T => f.write_str("t"),
            Symbol::W => f.write_str("w"),
            Symbol::Jet(j) => j.fmt(f),
            Symbol::Param(p) => f.write_str(p.as_str()),
        }
    }
}
