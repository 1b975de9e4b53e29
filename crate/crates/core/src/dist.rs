use std::fmt;

/// A graph distance that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dist {
    Finite(usize),
    Infinite,
}

impl Dist {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dist::Finite(n) => Some(n),
            Dist::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Dist::Infinite
    }
}

impl From<Option<usize>> for Dist {
    fn from(o: Option<usize>) -> Self {
        o.map_or(Dist::Infinite, Dist::Finite)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(n) => write!(f, "{n}"),
            Dist::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_display() {
        assert!(Dist::Finite(1_000_000) < Dist::Infinite);
        assert_eq!(Dist::Infinite.to_string(), "inf");
        assert_eq!(Dist::from(Some(3)), Dist::Finite(3));
        assert_eq!(Dist::from(None).finite(), None);
    }
}
