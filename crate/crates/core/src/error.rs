use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a series that vanishes to its full order")]
    DegenerateDivisor,
    #[error("operation requires a power series but the valuation is {valuation}")]
    NotAPowerSeries { valuation: i64 },
    #[error("coefficient of q^{exponent} requested beyond truncation order {order}")]
    BeyondTruncation { exponent: i64, order: i64 },
    #[error("infinite q-Pochhammer product with argument exponent {exponent} does not converge formally")]
    DivergentProduct { exponent: i64 },
    #[error("lower parameter makes the denominator vanish at term {term}")]
    SingularParameter { term: u64 },
    #[error("non-terminating series whose term valuations do not grow; supply a term bound")]
    NonConvergentTruncation,
    #[error("form {form} is not valid for k = {k}")]
    InvalidForm { form: &'static str, k: u32 },
    #[error("{what} has a non-integral coefficient")]
    NonIntegral { what: String },
    #[error("requested order {requested} exceeds available order {available}")]
    InsufficientPrecision { requested: i64, available: i64 },
    #[error("decomposition cannot be certified: {0}")]
    UncertifiableDecomposition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
