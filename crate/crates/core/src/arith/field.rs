use super::monomial::{Var, MAX_VARS, X, Y};
use super::ArithError;

/// Ground field `Q(params)`. Parameter `i` lives in variable slot `2 + i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldSpec {
    params: Vec<String>,
}

const RESERVED: [&str; 4] = ["x", "y", "Dx", "Dy"];

impl FieldSpec {
    pub fn new<S: Into<String>>(params: impl IntoIterator<Item = S>) -> Result<Self, ArithError> {
        let params: Vec<String> = params.into_iter().map(Into::into).collect();
        if params.len() > MAX_VARS - 2 {
            return Err(ArithError::Field(format!(
                "at most {} parameters are supported",
                MAX_VARS - 2
            )));
        }
        for (i, p) in params.iter().enumerate() {
            let valid = p.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(ArithError::Field(format!("invalid parameter name `{p}`")));
            }
            if RESERVED.contains(&p.as_str()) {
                return Err(ArithError::Field(format!("parameter `{p}` clashes with a reserved symbol")));
            }
            if params[..i].contains(p) {
                return Err(ArithError::Field(format!("parameter `{p}` declared twice")));
            }
        }
        Ok(FieldSpec { params })
    }

    pub fn rational() -> Self {
        FieldSpec::default()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn num_vars(&self) -> usize {
        2 + self.params.len()
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        match name {
            "x" => Some(X),
            "y" => Some(Y),
            _ => self.params.iter().position(|p| p == name).map(|i| i + 2),
        }
    }

    pub fn var_name(&self, v: Var) -> String {
        match v {
            X => "x".to_string(),
            Y => "y".to_string(),
            k => self
                .params
                .get(k - 2)
                .cloned()
                .unwrap_or_else(|| format!("t{}", k - 2)),
        }
    }

    /// Bitmask of the parameter slots.
    pub fn param_mask(&self) -> u32 {
        (0..self.params.len()).fold(0, |acc, i| acc | (1 << (i + 2)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names() {
        assert!(FieldSpec::new(["k", "q"]).is_ok());
        assert!(FieldSpec::new(["k", "k"]).is_err());
        assert!(FieldSpec::new(["Dx"]).is_err());
        assert!(FieldSpec::new(["y"]).is_err());
        assert!(FieldSpec::new(["2a"]).is_err());
    }

    #[test]
    fn slots() {
        let f = FieldSpec::new(["k", "q"]).unwrap();
        assert_eq!(f.lookup("q"), Some(3));
        assert_eq!(f.var_name(2), "k");
        assert_eq!(f.lookup("z"), None);
    }
}
