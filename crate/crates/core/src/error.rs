use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseNumberError {
    #[error("empty number")]
    Empty,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid number `{0}`")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a polynomial of degree at least 1")]
    ConstantPolynomial,
    #[error("empty interval: lower end must be below upper end")]
    EmptyInterval,
    #[error("isolation width must be positive")]
    NonPositiveWidth,
    #[error("only {found} usable sample points, need {needed}")]
    TooFewSamples { found: usize, needed: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval endpoints must satisfy 0 <= lo < hi <= 1 (in units of pi)")]
    OutOfRange,
    #[error("cos({0}*pi) is irrational; use outer covering")]
    NotRational(String),
    #[error("y-interval must satisfy -1 <= lo < hi <= 1")]
    BadYInterval,
    #[error("invalid interval endpoint `{0}`; expected a rational multiple of pi such as 9pi/64")]
    BadToken(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("polynomial mixes sine and cosine terms; use the mixed decision")]
    Mixed,
    #[error("coefficients are irrational; use the surd decision")]
    IrrationalCoefficients,
    #[error("mixed sine/cosine polynomials with irrational coefficients are not supported")]
    IrrationalMixed,
    #[error("pfloor precision m must be at least 1")]
    BadPrecision,
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("the direction polynomial expands to zero; not a genuine family")]
    ConstantFamily,
    #[error("family must be pure sine or pure cosine with rational coefficients")]
    UnsupportedFamily,
    #[error("discriminant vanishes identically; breakpoints are not determined")]
    DegenerateDiscriminant,
    #[error("seed parameter {0} does not give a nonnegative polynomial")]
    SeedFails(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A certificate claim that failed independent re-checking.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate check failed: {0}")]
pub struct VerifyError(pub String);

/// Syntax or semantic error in a text expression, at byte offset `pos`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at column {}: {kind}", .pos + 1)]
pub struct ExprError {
    pub pos: usize,
    pub kind: ExprErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprErrorKind {
    #[error("unexpected character `{0}`")]
    BadChar(char),
    #[error("unexpected {0}")]
    Unexpected(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("frequency must be a positive integer, found `{0}`")]
    BadFrequency(String),
    #[error("`x` may only appear inside sin(...) or cos(...)")]
    BareVariable,
    #[error("parameter `a` must appear at most linearly")]
    NonlinearParameter,
    #[error("product of trigonometric terms")]
    TrigProduct,
    #[error("division by {0}")]
    BadDivision(String),
    #[error("parameter `a` is not allowed here")]
    UnexpectedParameter,
    #[error("expression does not contain the parameter `a`")]
    MissingParameter,
    #[error("sqrt needs a non-negative rational argument")]
    BadSqrt,
    #[error("{0}")]
    Number(#[from] ParseNumberError),
}

impl ExprError {
    /// Two-line rendering with a caret under the offending column.
    pub fn annotate(&self, src: &str) -> String {
        let col = src[..self.pos.min(src.len())].chars().count();
        format!("{src}\n{}^ {}", " ".repeat(col), self)
    }
}
