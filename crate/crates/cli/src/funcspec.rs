//! The `--func` grammar:
//! `poly:a0,a1,...` | `kernel:z` | `blaschke:z1;z2;...` | `ratgeo:c` | `file:<path>`.

use fbp_core::fnspace::UNBOUNDED_RADIUS;
use fbp_core::spectral::unit_grid;
use fbp_core::{
    cauchy_kernel, parse_complex, BoundaryFunction, Complex64, DiskPoint, Error, FiniteBlaschkeProduct, Result,
};

#[derive(Debug, Clone, PartialEq)]
pub enum FuncSpec {
    Poly(Vec<Complex64>),
    Kernel(DiskPoint),
    Blaschke(Vec<DiskPoint>),
    /// `1 / (1 - c z)`.
    RatGeo(Complex64),
    File(String),
}

fn bad(text: &str, why: &str) -> Error {
    Error::InvalidArgument(format!("--func `{text}`: {why}"))
}

impl std::str::FromStr for FuncSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (kind, body) = text
            .split_once(':')
            .ok_or_else(|| bad(text, "expected <kind>:<arguments>"))?;
        let complex = |s: &str| parse_complex(s).map_err(|_| bad(text, &format!("bad complex number `{s}`")));
        let point = |s: &str| complex(s).and_then(|z| DiskPoint::new(z).map_err(|e| bad(text, &e.to_string())));
        match kind.trim() {
            "poly" => Ok(FuncSpec::Poly(body.split(',').map(complex).collect::<Result<_>>()?)),
            "kernel" => Ok(FuncSpec::Kernel(point(body)?)),
            "blaschke" => Ok(FuncSpec::Blaschke(
                body.split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(point)
                    .collect::<Result<_>>()?,
            )),
            "ratgeo" => {
                let c = complex(body)?;
                if c.norm() >= 1.0 {
                    return Err(bad(text, "ratgeo needs |c| < 1"));
                }
                Ok(FuncSpec::RatGeo(c))
            }
            "file" if !body.is_empty() => Ok(FuncSpec::File(body.to_string())),
            _ => Err(bad(text, "unknown function kind")),
        }
    }
}

impl FuncSpec {
    /// Builds the function on `sample_count` points. JSON files carry their
    /// own sample count.
    pub fn build(&self, sample_count: usize) -> Result<BoundaryFunction> {
        match self {
            FuncSpec::Poly(coeffs) => BoundaryFunction::from_taylor(coeffs, sample_count, UNBOUNDED_RADIUS),
            FuncSpec::Kernel(alpha) => cauchy_kernel(*alpha, sample_count),
            FuncSpec::Blaschke(zeros) => FiniteBlaschkeProduct::new(zeros.clone()).as_function(sample_count),
            FuncSpec::RatGeo(c) => {
                let radius = if c.norm() == 0.0 {
                    UNBOUNDED_RADIUS
                } else {
                    (1.0 / c.norm()).min(UNBOUNDED_RADIUS)
                };
                let samples = unit_grid(sample_count).iter().map(|&z| 1.0 / (1.0 - c * z)).collect();
                BoundaryFunction::from_samples(samples, radius)
            }
            FuncSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("--func file `{path}`: {e}")))?;
                serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("--func file `{path}`: {e}")))
            }
        }
    }

    pub fn kernel_pole(&self) -> Option<DiskPoint> {
        match self {
            FuncSpec::Kernel(alpha) => Some(*alpha),
            _ => None,
        }
    }
}
