use std::fmt;
use std::str::FromStr;

/// Linguistic terms of the error and error-change inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InputTerm {
    NegLarge,
    NegSmall,
    Zero,
    PosSmall,
    PosLarge,
}

impl InputTerm {
    pub const ALL: [InputTerm; 5] = [
        InputTerm::NegLarge,
        InputTerm::NegSmall,
        InputTerm::Zero,
        InputTerm::PosSmall,
        InputTerm::PosLarge,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            InputTerm::NegLarge => "NL",
            InputTerm::NegSmall => "NS",
            InputTerm::Zero => "ZE",
            InputTerm::PosSmall => "PS",
            InputTerm::PosLarge => "PL",
        }
    }

    /// The term on the other side of zero.
    pub fn mirror(self) -> InputTerm {
        InputTerm::ALL[4 - self.index()]
    }
}

/// Linguistic terms of the three gain outputs, smallest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutputTerm {
    VerySmall,
    Small,
    MediumSmall,
    Medium,
    MediumLarge,
    Large,
    VeryLarge,
}

impl OutputTerm {
    pub const ALL: [OutputTerm; 7] = [
        OutputTerm::VerySmall,
        OutputTerm::Small,
        OutputTerm::MediumSmall,
        OutputTerm::Medium,
        OutputTerm::MediumLarge,
        OutputTerm::Large,
        OutputTerm::VeryLarge,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            OutputTerm::VerySmall => "PVS",
            OutputTerm::Small => "PS",
            OutputTerm::MediumSmall => "PMS",
            OutputTerm::Medium => "PM",
            OutputTerm::MediumLarge => "PML",
            OutputTerm::Large => "PL",
            OutputTerm::VeryLarge => "PVL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTerm(pub String);

impl fmt::Display for UnknownTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown linguistic term `{}`", self.0)
    }
}

impl std::error::Error for UnknownTerm {}

impl FromStr for InputTerm {
    type Err = UnknownTerm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        InputTerm::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| UnknownTerm(s.to_string()))
    }
}

impl FromStr for OutputTerm {
    type Err = UnknownTerm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OutputTerm::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| UnknownTerm(s.to_string()))
    }
}

impl fmt::Display for InputTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl fmt::Display for OutputTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
