use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// One command's result in every output format.
pub struct Report {
    pub text: String,
    pub latex: Option<String>,
    pub json: Value,
    /// Whether a check ran and failed; the output is still printed.
    pub failed: bool,
}

impl Report {
    pub fn new(text: String, json: Value) -> Self {
        Self { text, latex: None, json, failed: false }
    }

    pub fn with_latex(mut self, latex: String) -> Self {
        self.latex = Some(latex);
        self
    }

    pub fn failed(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = match format {
            Format::Text => self.text.clone(),
            Format::Latex => self.latex.clone().unwrap_or_else(|| self.text.clone()),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(self.failed)
    }
}

/// Failure classes map to exit codes: bad input 2, failed computation 1.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Computation(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Computation(m) => f.write_str(m),
        }
    }
}

impl From<twisted_periods::Error> for CliError {
    fn from(e: twisted_periods::Error) -> Self {
        use twisted_periods::Error::*;
        let msg = e.to_string();
        match e {
            NotSquarefree(_) | NotPrimitive { .. } | InvalidCharacter(_) | InvalidContext(_) | InvalidQuadruple(_)
            | Parse(_) | Fixture { .. } | OutOfRange(_) => CliError::Validation(msg),
            Parity { .. } | NotCoprime(..) | DivisionByZero | ZeroDenominator | UnsupportedFactorization(_)
            | SelfCheck(_) | FieldMismatch(_) => CliError::Computation(msg),
        }
    }
}
