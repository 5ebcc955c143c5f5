//! Tagged evaluation results shared by the library surface and the CLI.

use crate::scalar::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Z,
    G,
    H,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Z => "Z",
            Quantity::G => "G",
            Quantity::H => "H",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Det,
    Perm,
    Reduction,
    Qism,
    Enumeration,
    FreeFermion,
    Homogeneous,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Det => "det",
            Method::Perm => "perm",
            Method::Reduction => "reduction",
            Method::Qism => "qism",
            Method::Enumeration => "enum",
            Method::FreeFermion => "ff",
            Method::Homogeneous => "hom",
        }
    }
}

/// One evaluated quantity with its provenance.
#[derive(Clone, Debug)]
pub struct CorrelatorResult {
    pub quantity: Quantity,
    pub n: usize,
    pub m: Option<usize>,
    pub method: Method,
    pub value: C64,
    pub precision_bits: u32,
}

impl CorrelatorResult {
    pub fn new(
        quantity: Quantity,
        n: usize,
        m: Option<usize>,
        method: Method,
        value: C64,
        precision_bits: u32,
    ) -> Self {
        CorrelatorResult {
            quantity,
            n,
            m,
            method,
            value,
            precision_bits,
        }
    }
}
