use core::fmt;
use core::str::FromStr;

/// The approximate master equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodId {
    Ull2,
    Mll,
    Nz2,
    Tcl2,
    Redfield,
    Cr,
    Lindblad,
}

impl MethodId {
    pub const ALL: [MethodId; 7] = [
        MethodId::Ull2,
        MethodId::Mll,
        MethodId::Nz2,
        MethodId::Tcl2,
        MethodId::Redfield,
        MethodId::Cr,
        MethodId::Lindblad,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MethodId::Ull2 => "ULL2",
            MethodId::Mll => "MLL",
            MethodId::Nz2 => "NZ2",
            MethodId::Tcl2 => "TCL2",
            MethodId::Redfield => "REDFIELD",
            MethodId::Cr => "CR",
            MethodId::Lindblad => "LINDBLAD",
        }
    }

    /// True for the equations whose generator depends only on the current time.
    pub fn is_time_local(&self) -> bool {
        !matches!(self, MethodId::Nz2)
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unrecognized method name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownMethod;

impl fmt::Display for UnknownMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown method (expected one of ULL2, MLL, NZ2, TCL2, REDFIELD, CR, LINDBLAD)")
    }
}

impl FromStr for MethodId {
    type Err = UnknownMethod;

    /// Case-insensitive; `R` is accepted for Redfield and `L` for Lindblad.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let id = match () {
            _ if s.eq_ignore_ascii_case("ULL2") => MethodId::Ull2,
            _ if s.eq_ignore_ascii_case("MLL") => MethodId::Mll,
            _ if s.eq_ignore_ascii_case("NZ2") => MethodId::Nz2,
            _ if s.eq_ignore_ascii_case("TCL2") => MethodId::Tcl2,
            _ if s.eq_ignore_ascii_case("REDFIELD") || s.eq_ignore_ascii_case("R") => MethodId::Redfield,
            _ if s.eq_ignore_ascii_case("CR") => MethodId::Cr,
            _ if s.eq_ignore_ascii_case("LINDBLAD") || s.eq_ignore_ascii_case("L") => MethodId::Lindblad,
            _ => return Err(UnknownMethod),
        };
        Ok(id)
    }
}
