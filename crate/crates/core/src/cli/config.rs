use std::path::PathBuf;

use num_complex::Complex64;

use super::SetArgs;
use crate::error::{FwError, Result};
use crate::fw::FaberWalshFamily;
use crate::lemniscatic::{build_focus_sequence, FocusOrder, FocusSequence};
use crate::maps::{ConformalPair, SetDescriptor};

/// Parses `re,im` (or a bare real number).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| FwError::invalid(format!("bad number '{t}' in '{s}'")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(FwError::invalid(format!("'{s}' is not of the form re,im"))),
    }
}

/// Built-in functions for `fw series`.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSelector {
    Exp,
    /// `1/(z - z*)`.
    Rational(Complex64),
    /// Real coefficients, constant term first.
    Polynomial(Vec<f64>),
}

impl FunctionSelector {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "exp" {
            return Ok(FunctionSelector::Exp);
        }
        if let Some(rest) = s.strip_prefix("rational:") {
            return Ok(FunctionSelector::Rational(parse_complex(rest)?));
        }
        if let Some(rest) = s.strip_prefix("poly:") {
            let coeffs = rest
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| FwError::invalid(format!("bad coefficient '{t}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(FunctionSelector::Polynomial(coeffs));
        }
        Err(FwError::invalid(format!(
            "unknown function '{s}' (expected exp, rational:re,im or poly:c0,c1,...)"
        )))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            FunctionSelector::Exp => z.exp(),
            FunctionSelector::Rational(p) => 1.0 / (z - p),
            FunctionSelector::Polynomial(c) => c
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a),
        }
    }
}

/// What every subcommand shares: the set, sequence ordering, quadrature
/// override and output path.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub set: SetDescriptor,
    pub seq_order: FocusOrder,
    pub nodes: Option<usize>,
    pub out: Option<PathBuf>,
}

impl JobConfig {
    pub fn new(set: SetDescriptor) -> Self {
        JobConfig {
            set,
            seq_order: FocusOrder::default(),
            nodes: None,
            out: None,
        }
    }

    pub fn from_args(a: &SetArgs) -> Result<Self> {
        let set = SetDescriptor::from_json_file(&a.set)?;
        if let Some(n) = a.nodes {
            if n < 16 || !n.is_power_of_two() {
                return Err(FwError::invalid(format!(
                    "--nodes {n} must be a power of two >= 16"
                )));
            }
        }
        Ok(JobConfig {
            set,
            seq_order: a.seq_order,
            nodes: a.nodes,
            out: a.out.clone(),
        })
    }

    pub fn pair(&self) -> Result<ConformalPair> {
        self.set.conformal_pair()
    }

    pub fn sequence(&self, pair: &ConformalPair, len: usize) -> FocusSequence {
        build_focus_sequence(pair.domain(), len, self.seq_order)
    }

    pub fn family(&self, k_max: usize) -> Result<FaberWalshFamily> {
        let pair = self.pair()?;
        let seq = self.sequence(&pair, k_max + 1);
        FaberWalshFamily::build(&pair, &seq, k_max)
    }
}
