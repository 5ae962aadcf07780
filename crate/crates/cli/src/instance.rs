//! Instance files: one JSON document per run.
//!
//! A file declares the measure (`weights`), the data (`x`/`y`/`e` for vector
//! runs, `f`/`g`/`h` for integral runs), named boxes, and the optional
//! combination parameters `lambda` and `sign`. Scalars are plain numbers in
//! real mode; complex mode additionally accepts `[re, im]` pairs. Real mode
//! rejects pair entries outright so a mode mismatch surfaces as a parse error
//! instead of silently truncated data.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use gruss_core::{Bracket, Mode, Scalar, Sign, Vector, WeightedSpace};
use serde::Deserialize;

/// Box slots an instance may fill: one per vector (`x`, `y`), one per sampled
/// function (`f`, `g`), and one for the λ-combination (`comb`).
pub const BOX_NAMES: [&str; 5] = ["x", "y", "f", "g", "comb"];

/// One scalar as written in a file: a plain number or a `[re, im]` pair.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Real(f64),
    Pair([f64; 2]),
}

impl ScalarRepr {
    fn to_scalar(self, mode: Mode, context: &str) -> Result<Scalar> {
        match (self, mode) {
            (ScalarRepr::Real(re), _) => Ok(Scalar::real(re)),
            (ScalarRepr::Pair([re, im]), Mode::Complex) => Ok(Scalar::new(re, im)),
            (ScalarRepr::Pair(_), Mode::Real) => {
                bail!("{context}: [re, im] entries are not allowed in real mode")
            }
        }
    }
}

/// The raw file layout. Unknown fields are rejected so a typo shows up as a
/// parse error rather than as ignored data.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    mode: Mode,
    weights: Vec<f64>,
    x: Option<Vec<ScalarRepr>>,
    y: Option<Vec<ScalarRepr>>,
    e: Option<Vec<ScalarRepr>>,
    f: Option<Vec<ScalarRepr>>,
    g: Option<Vec<ScalarRepr>>,
    h: Option<Vec<ScalarRepr>>,
    #[serde(default)]
    boxes: BTreeMap<String, [ScalarRepr; 2]>,
    lambda: Option<f64>,
    sign: Option<Sign>,
}

/// A parsed and shape-checked instance. Value-level validation (positive
/// weights, unit `e`, normalized carrier, λ in range) is left to the library
/// so every run type applies exactly the rules it needs.
#[derive(Clone, Debug)]
pub struct Instance {
    pub mode: Mode,
    pub weights: Vec<f64>,
    pub x: Option<Vector>,
    pub y: Option<Vector>,
    pub e: Option<Vector>,
    pub f: Option<Vector>,
    pub g: Option<Vector>,
    pub h: Option<Vector>,
    pub boxes: BTreeMap<String, Bracket>,
    pub lambda: Option<f64>,
    /// Defaults to `plus` when the file does not say.
    pub sign: Sign,
}

/// Reads and validates an instance file.
pub fn load(path: &Path) -> Result<Instance> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let raw: RawInstance =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Instance::from_raw(raw).with_context(|| format!("validating {}", path.display()))
}

impl Instance {
    fn from_raw(raw: RawInstance) -> Result<Self> {
        let mode = raw.mode;
        let n = raw.weights.len();
        if raw.e.is_some() && raw.h.is_some() {
            bail!("exactly one of e (vector runs) and h (integral runs) may be present");
        }

        let vector = |name: &str, entries: Option<Vec<ScalarRepr>>| -> Result<Option<Vector>> {
            let Some(entries) = entries else {
                return Ok(None);
            };
            if entries.len() != n {
                bail!(
                    "field {name} has {} entries but weights has {n}",
                    entries.len()
                );
            }
            let scalars = entries
                .iter()
                .enumerate()
                .map(|(i, &r)| r.to_scalar(mode, &format!("{name}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(Vector::new(scalars).with_context(|| format!("field {name}"))?))
        };

        let x = vector("x", raw.x)?;
        let y = vector("y", raw.y)?;
        let e = vector("e", raw.e)?;
        let f = vector("f", raw.f)?;
        let g = vector("g", raw.g)?;
        let h = vector("h", raw.h)?;

        let mut boxes = BTreeMap::new();
        for (name, [lo, hi]) in &raw.boxes {
            if !BOX_NAMES.contains(&name.as_str()) {
                bail!(
                    "unknown box name {name:?} (expected one of {})",
                    BOX_NAMES.join(", ")
                );
            }
            let b = Bracket::new(
                lo.to_scalar(mode, &format!("boxes.{name}[0]"))?,
                hi.to_scalar(mode, &format!("boxes.{name}[1]"))?,
            )
            .with_context(|| format!("box {name}"))?;
            boxes.insert(name.clone(), b);
        }

        Ok(Instance {
            mode,
            weights: raw.weights,
            x,
            y,
            e,
            f,
            g,
            h,
            boxes,
            lambda: raw.lambda,
            sign: raw.sign.unwrap_or(Sign::Plus),
        })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn space(&self) -> Result<WeightedSpace> {
        Ok(WeightedSpace::new(self.weights.clone())?)
    }

    fn field(&self, name: &str) -> &Option<Vector> {
        match name {
            "x" => &self.x,
            "y" => &self.y,
            "e" => &self.e,
            "f" => &self.f,
            "g" => &self.g,
            "h" => &self.h,
            _ => unreachable!("unknown field name {name}"),
        }
    }

    pub fn require_vector(&self, name: &str) -> Result<&Vector> {
        match self.field(name) {
            Some(v) => Ok(v),
            None => bail!("this run needs field {name}, which the file does not declare"),
        }
    }

    pub fn require_box(&self, name: &str) -> Result<&Bracket> {
        match self.boxes.get(name) {
            Some(b) => Ok(b),
            None => bail!("this run needs boxes.{name}, which the file does not declare"),
        }
    }

    pub fn require_lambda(&self) -> Result<f64> {
        match self.lambda {
            Some(l) => Ok(l),
            None => bail!("this run needs lambda, which the file does not declare"),
        }
    }

    /// Vector runs (`check`, `bound`) carry the unit vector `e`, never the
    /// integral carrier `h`.
    pub fn unit_vector(&self) -> Result<&Vector> {
        if self.h.is_some() {
            bail!("vector runs take the unit vector e; this file declares the carrier h");
        }
        self.require_vector("e")
    }

    /// Integral runs carry `h` (when the estimate needs one), never `e`.
    pub fn forbid_unit_vector(&self) -> Result<()> {
        if self.e.is_some() {
            bail!("integral runs take the carrier h; this file declares the vector e");
        }
        Ok(())
    }

    /// Which of the six data fields the file declares, for the report echo.
    pub fn present_fields(&self) -> Vec<String> {
        ["x", "y", "e", "f", "g", "h"]
            .iter()
            .filter(|&&name| self.field(name).is_some())
            .map(|&name| name.to_string())
            .collect()
    }
}
