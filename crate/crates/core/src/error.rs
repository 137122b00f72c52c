use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    Domain {
        what: &'static str,
        value: f64,
    },
    /// A model or ring parameter is outside its valid range.
    InvalidParameter {
        field: &'static str,
        value: f64,
    },
    /// Single-photon yield is zero, the error rate `e_1` is undefined.
    DegenerateChannel,
    /// The profile produces no key even at zero loss.
    InvalidProfile {
        name: String,
    },
    /// A switched link sits at or beyond the cutoff, so `T_ij` is unbounded.
    InfeasibleSchedule {
        node: usize,
        peer: usize,
        attenuation_db: f64,
    },
    /// Both rates are zero; the normalized difference is undefined.
    UndefinedComparison,
    /// Ring symmetry broken: nodes disagree on the fair switched rate.
    AsymmetricSchedule {
        node: usize,
        rate: f64,
        reference: f64,
    },
    InsufficientData {
        needed: usize,
        got: usize,
    },
    /// Record `index` (0-based) of a key log violates an invariant.
    InvalidRecord {
        index: usize,
        reason: &'static str,
    },
    EmptyRange {
        what: &'static str,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::InvalidParameter { field, value } => {
                write!(f, "invalid value for `{field}`: {value}")
            }
            Error::DegenerateChannel => {
                f.write_str("degenerate channel: single-photon yield is zero")
            }
            Error::InvalidProfile { name } => {
                write!(f, "profile `{name}` yields no key at zero attenuation")
            }
            Error::InfeasibleSchedule {
                node,
                peer,
                attenuation_db,
            } => write!(
                f,
                "switched link {node}-{peer} ({attenuation_db:.3} dB) is beyond the key-rate cutoff"
            ),
            Error::UndefinedComparison => f.write_str("both rates are zero"),
            Error::AsymmetricSchedule {
                node,
                rate,
                reference,
            } => write!(
                f,
                "node {node} fair rate {rate} differs from node 0 rate {reference}"
            ),
            Error::InsufficientData { needed, got } => {
                write!(f, "need at least {needed} records, got {got}")
            }
            Error::InvalidRecord { index, reason } => write!(f, "record {index}: {reason}"),
            Error::EmptyRange { what } => write!(f, "{what} range is empty"),
        }
    }
}

impl core::error::Error for Error {}
