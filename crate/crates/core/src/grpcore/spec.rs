//! Text grammar for naming a group on the command line or in battery files.
//!
//! Accepted forms: `cyclic:<n>`, `klein`, `sym:<n>`, `dihedral:<n>`, or a JSON
//! document `{ "table": [[...]] }` / `{ "permutations": [[...], ...] }` with
//! permutations written as 0-based image lists.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic(usize),
    Klein,
    Symmetric(usize),
    /// Symmetries of the regular `n`-gon, a group of order `2n`.
    Dihedral(usize),
    Permutations(Vec<Vec<usize>>),
    Table(Vec<Vec<usize>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSpec {
    table: Option<Vec<Vec<usize>>>,
    permutations: Option<Vec<Vec<usize>>>,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let text = text.trim();
        if text.starts_with('{') {
            return Self::parse_json(text);
        }
        let (family, arg) = match text.split_once(':') {
            Some((f, a)) => (f.trim(), Some(a.trim())),
            None => (text, None),
        };
        let number = |what: &str| -> Result<usize> {
            let arg = arg.ok_or_else(|| input_err!("`{what}` needs an argument, as in `{what}:4`"))?;
            let n: usize = arg.parse().map_err(|_| {
                input_err!("column {}: `{arg}` is not a positive integer", family.len() + 2)
            })?;
            if n == 0 {
                return Err(input_err!("column {}: `{what}:0` would be empty", family.len() + 2));
            }
            Ok(n)
        };
        match family {
            "cyclic" => Ok(GroupSpec::Cyclic(number("cyclic")?)),
            "sym" => Ok(GroupSpec::Symmetric(number("sym")?)),
            "dihedral" => Ok(GroupSpec::Dihedral(number("dihedral")?)),
            "klein" if arg.is_none() => Ok(GroupSpec::Klein),
            "klein" => Err(input_err!("column 6: `klein` takes no argument")),
            other => Err(input_err!(
                "column 1: unknown group family `{other}` (expected cyclic, klein, sym, dihedral or JSON)"
            )),
        }
    }

    fn parse_json(text: &str) -> Result<GroupSpec> {
        let doc: JsonSpec = serde_json::from_str(text).map_err(|e| {
            input_err!("malformed group JSON at line {}, column {}: {e}", e.line(), e.column())
        })?;
        match (doc.table, doc.permutations) {
            (Some(t), None) => Ok(GroupSpec::Table(t)),
            (None, Some(p)) => Ok(GroupSpec::Permutations(p)),
            _ => Err(input_err!("group JSON needs exactly one of `table` or `permutations`")),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Klein => write!(f, "klein"),
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Permutations(p) => {
                write!(f, "{}", serde_json::json!({ "permutations": p }))
            }
            GroupSpec::Table(t) => write!(f, "{}", serde_json::json!({ "table": t })),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(GroupSpec::parse("cyclic:4").unwrap(), GroupSpec::Cyclic(4));
        assert_eq!(GroupSpec::parse("klein").unwrap(), GroupSpec::Klein);
        assert_eq!(GroupSpec::parse(" sym:3 ").unwrap(), GroupSpec::Symmetric(3));
        assert_eq!(GroupSpec::parse("dihedral:4").unwrap(), GroupSpec::Dihedral(4));
    }

    #[test]
    fn rejects_empty_and_unknown() {
        assert!(matches!(GroupSpec::parse("cyclic:0"), Err(crate::Error::Input(_))));
        assert!(matches!(GroupSpec::parse("cyclic:x"), Err(crate::Error::Input(_))));
        assert!(matches!(GroupSpec::parse("cyclic"), Err(crate::Error::Input(_))));
        assert!(matches!(GroupSpec::parse("quaternion:8"), Err(crate::Error::Input(_))));
    }

    #[test]
    fn json_forms() {
        let t = GroupSpec::parse(r#"{"table": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(t, GroupSpec::Table(vec![vec![0, 1], vec![1, 0]]));
        let p = GroupSpec::parse(r#"{"permutations": [[1,2,0]]}"#).unwrap();
        assert_eq!(p, GroupSpec::Permutations(vec![vec![1, 2, 0]]));
        let err = GroupSpec::parse("{\"table\": [[0,1],\n [1,0]").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(GroupSpec::parse(r#"{"table": [[0]], "permutations": []}"#).is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["cyclic:6", "klein", "sym:3", "dihedral:5"] {
            assert_eq!(GroupSpec::parse(s).unwrap().to_string(), s);
        }
    }
}
