//! Instance loading from JSON files or `gen:<name>?key=value&...` specs.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use hetcong::atomic::MatrixGame;
use hetcong::bounds::generators;
use hetcong::tolerance::DEFAULT_PATH_CAP;
use hetcong::{Instance, Routing};

/// A loaded input: a network instance or an explicit matrix game.
pub enum Input {
    Network(Box<Routing>),
    Matrix(MatrixGame),
}

pub fn load(path: Option<&str>, spec: Option<&str>) -> Result<Input> {
    match (path, spec) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let instance = Instance::from_json(&text).with_context(|| format!("parsing {path}"))?;
            Ok(Input::Network(Box::new(route(instance)?)))
        }
        (None, Some(spec)) => generate(spec),
        _ => bail!("give exactly one of an instance file or a gen: spec"),
    }
}

pub fn route(instance: Instance) -> Result<Routing> {
    let cap = match std::env::var("HETCONG_PATH_CAP") {
        Ok(v) => v
            .parse()
            .with_context(|| format!("HETCONG_PATH_CAP must be a positive integer, got `{v}`"))?,
        Err(_) => DEFAULT_PATH_CAP,
    };
    Ok(Routing::with_cap(instance, cap)?)
}

/// Parses `gen:<name>?k=v&k=v` and builds the instance.
pub fn generate(spec: &str) -> Result<Input> {
    let body = spec
        .strip_prefix("gen:")
        .with_context(|| format!("generator spec `{spec}` must start with `gen:`"))?;
    let (name, query) = body.split_once('?').unwrap_or((body, ""));
    let mut params = Params::parse(query)?;
    let input = match name {
        "fig1" => {
            let a = params.float("a", 2.0)?;
            let theta = params.int("theta", 2)?;
            let r = params.float("r", 1.0)?;
            Input::Network(Box::new(route(generators::gen_fig1(a, theta as u32, r)?)?))
        }
        "fig2" => {
            let k = params.int("k", 3)?;
            let theta = params.int("theta", 2)?;
            let a = params.float("a", 2.0)?;
            Input::Network(Box::new(route(generators::gen_fig2(k, theta as u32, a)?)?))
        }
        "fig4" => Input::Network(Box::new(route(generators::gen_fig4(
            params.float("a", 2.0)?,
        )?)?)),
        "fig6" => Input::Network(Box::new(route(generators::gen_fig6(
            params.float("a", 4.0)?,
        )?)?)),
        "unbounded" => Input::Network(Box::new(route(generators::gen_unbounded()?)?)),
        "table3" => Input::Matrix(generators::gen_table3()),
        other => bail!(
            "unknown generator `{other}` (expected fig1, fig2, fig4, fig6, unbounded or table3)"
        ),
    };
    params.finish(name)?;
    Ok(input)
}

struct Params(BTreeMap<String, String>);

impl Params {
    fn parse(query: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for pair in query.split('&').filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .with_context(|| format!("parameter `{pair}` is not key=value"))?;
            if map.insert(key.to_string(), value.to_string()).is_some() {
                bail!("parameter `{key}` given twice");
            }
        }
        Ok(Self(map))
    }

    fn float(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.0.remove(key) {
            Some(v) => v
                .parse()
                .with_context(|| format!("parameter `{key}`: `{v}` is not a number")),
            None => Ok(default),
        }
    }

    fn int(&mut self, key: &str, default: usize) -> Result<usize> {
        match self.0.remove(key) {
            Some(v) => v
                .parse()
                .with_context(|| format!("parameter `{key}`: `{v}` is not a nonnegative integer")),
            None => Ok(default),
        }
    }

    fn finish(self, name: &str) -> Result<()> {
        if let Some(key) = self.0.keys().next() {
            bail!("generator `{name}` has no parameter `{key}`");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_parameters() {
        let Input::Network(routing) = generate("gen:fig2?k=4&theta=1&a=3").unwrap() else {
            panic!("expected a network");
        };
        assert_eq!(routing.k(), 4);
        assert_eq!(routing.instance().classification().stats.theta, 1);
    }

    #[test]
    fn rejects_unknown_names_and_keys() {
        assert!(generate("gen:fig9").is_err());
        assert!(generate("gen:fig4?b=2").is_err());
        assert!(generate("fig4").is_err());
        assert!(generate("gen:fig4?a=x").is_err());
        assert!(generate("gen:fig4?a=0.5").is_err());
    }
}
