//! Network files: `{"n": 3, "W": [["0","-0.97","-1.47"], ...], "b": ["0.49", ...]}`.
//!
//! Numbers are decimal strings parsed exactly. Bare JSON numbers are accepted
//! too and read from their literal text, so `-0.97` still means `-97/100`.

use std::path::Path;

use serde_json::{json, Value};

use super::Network;
use crate::error::{Result, TlnError};
use crate::exact::{format_exact, parse_rational, Rational};

fn number(v: &Value, at: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(TlnError::Parse(format!("{at}: expected a number or numeric string"))),
    }
}

pub fn from_json(text: &str) -> Result<Network> {
    let root: Value = serde_json::from_str(text)?;
    let w = root
        .get("W")
        .and_then(Value::as_array)
        .ok_or_else(|| TlnError::Parse("missing array \"W\"".into()))?;
    let b = root
        .get("b")
        .and_then(Value::as_array)
        .ok_or_else(|| TlnError::Parse("missing array \"b\"".into()))?;
    let w = w
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| TlnError::Parse(format!("W row {} is not an array", i + 1)))?
                .iter()
                .enumerate()
                .map(|(j, x)| number(x, &format!("W_{}{}", i + 1, j + 1)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let b = b
        .iter()
        .enumerate()
        .map(|(i, x)| number(x, &format!("b_{}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = root.get("n") {
        let n = n.as_u64().ok_or_else(|| TlnError::Parse("\"n\" must be a positive integer".into()))?;
        if n as usize != b.len() {
            return Err(TlnError::Dimension(format!("n = {n} but b has {} entries", b.len())));
        }
    }
    Network::new(w, b)
}

pub fn to_json(net: &Network) -> String {
    let w: Vec<Vec<String>> = net.weights().iter().map(|r| r.iter().map(format_exact).collect()).collect();
    let b: Vec<String> = net.inputs().iter().map(format_exact).collect();
    let value = json!({ "n": net.n(), "W": w, "b": b });
    serde_json::to_string_pretty(&value).expect("serialising plain JSON values")
}

pub fn read_network(path: impl AsRef<Path>) -> Result<Network> {
    from_json(&std::fs::read_to_string(path)?)
}

pub fn write_network(path: impl AsRef<Path>, net: &Network) -> Result<()> {
    std::fs::write(path, to_json(net) + "\n")?;
    Ok(())
}
