use core::fmt;

/// Outcome of a combinatorial constancy classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Constant,
    NotConstant,
    /// The classifier's hypotheses do not hold; constancy is undecided.
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(constant: bool) -> Self {
        if constant {
            Verdict::Constant
        } else {
            Verdict::NotConstant
        }
    }

    /// `Some(true)` for constant, `Some(false)` for not constant.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Constant => Some(true),
            Verdict::NotConstant => Some(false),
            Verdict::NotApplicable => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Constant => "CONSTANT",
            Verdict::NotConstant => "NOT_CONSTANT",
            Verdict::NotApplicable => "NOT_APPLICABLE",
        })
    }
}
