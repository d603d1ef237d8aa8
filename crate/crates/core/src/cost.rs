use std::fmt;
use std::ops::Add;

/// A non-negative count with an absorbing infinity.
///
/// Addition saturates at [`Cost::INF`]; it never wraps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(u32);

impl Cost {
    pub const INF: Cost = Cost(u32::MAX);
    pub const ZERO: Cost = Cost(0);

    pub fn new(v: usize) -> Self {
        assert!(
            v < u32::MAX as usize,
            "cost {v} collides with the infinity sentinel"
        );
        Cost(v as u32)
    }

    pub fn is_finite(self) -> bool {
        self != Cost::INF
    }

    pub fn value(self) -> Option<usize> {
        self.is_finite().then_some(self.0 as usize)
    }

    /// Finite value; panics on infinity.
    pub fn get(self) -> usize {
        self.value().expect("infinite cost")
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        if self == Cost::INF || rhs == Cost::INF {
            return Cost::INF;
        }
        match self.0.checked_add(rhs.0) {
            Some(v) if v != u32::MAX => Cost(v),
            _ => Cost::INF,
        }
    }
}

impl Add<usize> for Cost {
    type Output = Cost;

    fn add(self, rhs: usize) -> Cost {
        self + Cost::new(rhs)
    }
}

impl From<usize> for Cost {
    fn from(v: usize) -> Self {
        Cost::new(v)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("INF"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs() {
        assert_eq!(Cost::INF + Cost::new(3), Cost::INF);
        assert_eq!(Cost::new(3) + Cost::INF, Cost::INF);
        assert_eq!(Cost::new(2) + 5, Cost::new(7));
        assert!(Cost::new(1_000_000) < Cost::INF);
    }

    #[test]
    fn saturates_instead_of_wrapping() {
        let big = Cost::new(u32::MAX as usize - 1);
        assert_eq!(big + Cost::new(1), Cost::INF);
        assert_eq!(big + big, Cost::INF);
    }

    #[test]
    fn display() {
        assert_eq!(Cost::INF.to_string(), "INF");
        assert_eq!(Cost::new(4).to_string(), "4");
    }
}
