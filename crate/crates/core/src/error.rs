use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(usize, usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph must have diameter exactly {expected}, found {found}")]
    WrongDiameter { expected: u32, found: u32 },

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexIndex { index: usize, n: usize },

    #[error("invalid graph6 byte {byte:#04x} at offset {offset}")]
    BadGraph6Byte { byte: u8, offset: usize },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("graph order {n} exceeds the limit {limit} for {what}")]
    SizeLimit { what: &'static str, n: usize, limit: usize },

    #[error("Jacobi iteration did not converge (off-diagonal residual {residual:e})")]
    NonConvergence { residual: f64 },

    #[error("spectrum length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("spectrum of length {len} does not match part order {order}")]
    OrderMismatch { len: usize, order: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
