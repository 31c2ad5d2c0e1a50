//! JSON parameter files.
//!
//! Rationals travel as `"p/q"` strings (integers may be bare JSON numbers). Every parse error names
//! the offending field; admissibility errors name the violated invariant.
//!
//! ```json
//! { "v": "1/2", "alpha": "1/5", "beta": "1/7", "delta": "1/3", "N": 4,
//!   "truncation": "gamma", "A": "1/10", "B": "1/20",
//!   "dual": { "v": "1/2", "gamma": "1/5", "delta": "1/3", "N": 4 },
//!   "qhahn": { "v": "9/10", "mu": "1/3", "nu": "1/5", "N": 4, "epsilons": ["1/100", "1/10000"] },
//!   "classical": { "alpha": 0.5, "beta": 0.3, "delta": 0.7, "N": 4, "ks": [3, 4, 5] } }
//! ```

use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::krall::MassConfig;
use crate::lattice::QBase;
use crate::limits::{ClassicalSetup, DualSetup, QHahnSetup};
use crate::qracah::{QRacah, RacahInput, RacahParams, Truncation};

const TOP_FIELDS: &[&str] =
    &["v", "alpha", "beta", "gamma", "delta", "N", "truncation", "A", "B", "dual", "qhahn", "classical"];

#[derive(Debug, Clone)]
pub struct Config {
    pub params: RacahParams<Rational>,
    pub masses: MassConfig<Rational>,
    pub dual: DualSetup,
    pub qhahn: QHahnSetup,
    pub classical: ClassicalSetup,
}

impl Config {
    /// `v = 1/2`, `α = 1/5`, `β = 1/7`, `δ = 1/3`, `γq = q^{-N}`, `A = 1/10`, `B = 1/20`.
    pub fn canonical(n: usize) -> Result<Self> {
        let r = |a, b| Rational::new(a, b);
        let base = QBase::from_sqrt(r(1, 2)?)?;
        let input = RacahInput { alpha: Some(r(1, 5)?), beta: r(1, 7)?, gamma: None, delta: Some(r(1, 3)?) };
        Ok(Config {
            params: RacahParams::new(base, input, n, Truncation::GammaQ)?,
            masses: MassConfig::new(r(1, 10)?, r(1, 20)?),
            dual: DualSetup::default(),
            qhahn: QHahnSetup::default(),
            classical: ClassicalSetup::default(),
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config { field: "<file>".into(), msg: format!("{}: {e}", path.display()) })?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::Config { field: "<document>".into(), msg: e.to_string() })?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| cfg_err("<document>", "expected a JSON object"))?;
        reject_unknown(obj, TOP_FIELDS, "")?;
        let truncation = match obj.get("truncation") {
            None => Truncation::GammaQ,
            Some(Value::String(s)) => s.parse().map_err(|_| cfg_err("truncation", "expected \"alpha\", \"betadelta\" or \"gamma\""))?,
            Some(_) => return Err(cfg_err("truncation", "expected a string")),
        };
        let n = req_usize(obj, "N", "")?;
        let base = QBase::from_sqrt(req_rat(obj, "v", "")?)
            .map_err(|e| Error::InvalidParameter(format!("v: {e}")))?;
        let input = RacahInput {
            alpha: opt_rat(obj, "alpha", "")?,
            beta: req_rat(obj, "beta", "")?,
            gamma: opt_rat(obj, "gamma", "")?,
            delta: opt_rat(obj, "delta", "")?,
        };
        let params = RacahParams::new(base, input, n, truncation)?;
        let masses = MassConfig::new(
            opt_rat(obj, "A", "")?.unwrap_or_else(Rational::zero),
            opt_rat(obj, "B", "")?.unwrap_or_else(Rational::zero),
        );
        let dual = match obj.get("dual") {
            None => DualSetup::default(),
            Some(b) => parse_dual(b)?,
        };
        let qhahn = match obj.get("qhahn") {
            None => QHahnSetup::default(),
            Some(b) => parse_qhahn(b)?,
        };
        let classical = match obj.get("classical") {
            None => ClassicalSetup::default(),
            Some(b) => parse_classical(b)?,
        };
        Ok(Config { params, masses, dual, qhahn, classical })
    }

    pub fn family(&self) -> QRacah<Rational> {
        QRacah::new(self.params.clone())
    }

    pub fn masses_f64(&self) -> MassConfig<f64> {
        MassConfig::new(self.masses.a.to_f64(), self.masses.b.to_f64())
    }

    /// Resolved parameters, including the derived truncated one.
    pub fn echo(&self) -> Value {
        let p = &self.params;
        serde_json::json!({
            "v": p.lat.base.v().to_string(),
            "alpha": p.alpha.to_string(),
            "beta": p.beta.to_string(),
            "gamma": p.gamma.to_string(),
            "delta": p.delta.to_string(),
            "N": p.n,
            "truncation": p.truncation,
            "A": self.masses.a.to_string(),
            "B": self.masses.b.to_string(),
        })
    }
}

fn cfg_err(field: &str, msg: &str) -> Error {
    Error::Config { field: field.into(), msg: msg.into() }
}

fn path(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn reject_unknown(obj: &Map<String, Value>, known: &[&str], prefix: &str) -> Result<()> {
    match obj.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(cfg_err(&path(prefix, k), "unknown field")),
        None => Ok(()),
    }
}

fn parse_rat(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse().map_err(|_| cfg_err(field, "expected a rational \"p/q\"")),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i)),
            None => Err(cfg_err(field, "non-integer numbers must be written as \"p/q\" strings")),
        },
        _ => Err(cfg_err(field, "expected a rational \"p/q\"")),
    }
}

fn opt_rat(obj: &Map<String, Value>, key: &str, prefix: &str) -> Result<Option<Rational>> {
    obj.get(key).map(|v| parse_rat(v, &path(prefix, key))).transpose()
}

fn req_rat(obj: &Map<String, Value>, key: &str, prefix: &str) -> Result<Rational> {
    opt_rat(obj, key, prefix)?.ok_or_else(|| cfg_err(&path(prefix, key), "missing"))
}

fn req_usize(obj: &Map<String, Value>, key: &str, prefix: &str) -> Result<usize> {
    let f = path(prefix, key);
    let v = obj.get(key).ok_or_else(|| cfg_err(&f, "missing"))?;
    v.as_u64()
        .filter(|&n| n > 0)
        .map(|n| n as usize)
        .ok_or_else(|| cfg_err(&f, "expected a positive integer"))
}

fn opt_usize(obj: &Map<String, Value>, key: &str, prefix: &str, default: usize) -> Result<usize> {
    if obj.contains_key(key) {
        req_usize(obj, key, prefix)
    } else {
        Ok(default)
    }
}

fn parse_real(v: &Value, field: &str) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| cfg_err(field, "expected a number")),
        Value::String(_) => Ok(parse_rat(v, field)?.to_f64()),
        _ => Err(cfg_err(field, "expected a number")),
    }
}

fn block<'a>(v: &'a Value, name: &str, known: &[&str]) -> Result<&'a Map<String, Value>> {
    let obj = v.as_object().ok_or_else(|| cfg_err(name, "expected an object"))?;
    reject_unknown(obj, known, name)?;
    Ok(obj)
}

fn parse_dual(v: &Value) -> Result<DualSetup> {
    let d = DualSetup::default();
    let obj = block(v, "dual", &["v", "gamma", "delta", "N"])?;
    Ok(DualSetup {
        v: opt_rat(obj, "v", "dual")?.unwrap_or(d.v),
        gamma: opt_rat(obj, "gamma", "dual")?.unwrap_or(d.gamma),
        delta: opt_rat(obj, "delta", "dual")?.unwrap_or(d.delta),
        n: opt_usize(obj, "N", "dual", d.n)?,
    })
}

fn parse_qhahn(v: &Value) -> Result<QHahnSetup> {
    let d = QHahnSetup::default();
    let obj = block(v, "qhahn", &["v", "mu", "nu", "N", "epsilons"])?;
    let epsilons = match obj.get("epsilons") {
        None => d.epsilons,
        Some(Value::Array(xs)) => xs
            .iter()
            .enumerate()
            .map(|(i, x)| parse_rat(x, &format!("qhahn.epsilons[{i}]")))
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(cfg_err("qhahn.epsilons", "expected an array")),
    };
    Ok(QHahnSetup {
        v: opt_rat(obj, "v", "qhahn")?.unwrap_or(d.v),
        mu: opt_rat(obj, "mu", "qhahn")?.unwrap_or(d.mu),
        nu: opt_rat(obj, "nu", "qhahn")?.unwrap_or(d.nu),
        n: opt_usize(obj, "N", "qhahn", d.n)?,
        epsilons,
    })
}

fn parse_classical(v: &Value) -> Result<ClassicalSetup> {
    let d = ClassicalSetup::default();
    let obj = block(v, "classical", &["alpha", "beta", "delta", "N", "ks"])?;
    let real = |k: &str, dflt: f64| -> Result<f64> {
        obj.get(k).map(|x| parse_real(x, &path("classical", k))).transpose().map(|o| o.unwrap_or(dflt))
    };
    let ks = match obj.get("ks") {
        None => d.ks,
        Some(Value::Array(xs)) => xs
            .iter()
            .enumerate()
            .map(|(i, x)| {
                x.as_u64()
                    .filter(|&k| (1..=40).contains(&k))
                    .map(|k| k as u32)
                    .ok_or_else(|| cfg_err(&format!("classical.ks[{i}]"), "expected an integer in 1..=40"))
            })
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(cfg_err("classical.ks", "expected an array")),
    };
    Ok(ClassicalSetup {
        alpha: real("alpha", d.alpha)?,
        beta: real("beta", d.beta)?,
        delta: real("delta", d.delta)?,
        n: opt_usize(obj, "N", "classical", d.n)?,
        ks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CANON: &str = r#"{"v":"1/2","alpha":"1/5","beta":"1/7","delta":"1/3","N":4,"truncation":"gamma","A":"1/10","B":"1/20"}"#;

    #[test]
    fn parses_canonical() {
        let c = Config::from_json_str(CANON).unwrap();
        let k = Config::canonical(4).unwrap();
        assert_eq!(c.params, k.params);
        assert_eq!(c.masses, k.masses);
        assert_eq!(c.echo()["gamma"], "1024");
    }

    #[test]
    fn errors_name_the_field() {
        let bad = CANON.replace("\"1/7\"", "\"x\"");
        match Config::from_json_str(&bad).unwrap_err() {
            Error::Config { field, .. } => assert_eq!(field, "beta"),
            e => panic!("{e:?}"),
        }
        let bad = CANON.replace("\"N\":4", "\"N\":0");
        assert!(matches!(Config::from_json_str(&bad), Err(Error::Config { field, .. }) if field == "N"));
        let bad = CANON.replace("\"A\"", "\"AA\"");
        assert!(matches!(Config::from_json_str(&bad), Err(Error::Config { field, .. }) if field == "AA"));
        let bad = CANON.replace("}", r#","qhahn":{"epsilons":["1/2","q"]}}"#);
        assert!(matches!(Config::from_json_str(&bad), Err(Error::Config { field, .. }) if field == "qhahn.epsilons[1]"));
    }

    #[test]
    fn contradicting_truncation_is_inadmissible() {
        let bad = CANON.replace("\"truncation\"", "\"gamma\":\"1/3\",\"truncation\"");
        assert!(matches!(Config::from_json_str(&bad), Err(Error::InvalidParameter(_))));
    }
}
