//! key=value config files, merged into the argument list so that flags given
//! on the command line override file values.

use std::ffi::OsString;

const TOP_LEVEL_VALUED: [&str; 3] = ["--threads", "--out", "--config"];
const TOP_LEVEL_KEYS: [&str; 2] = ["threads", "out"];

pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
        let k = k.trim().replace('_', "-");
        if k.is_empty() || k == "config" {
            return Err(format!("config line {}: bad key {k:?}", i + 1));
        }
        out.push((k, v.trim().to_string()));
    }
    Ok(out)
}

fn flag_tokens(pairs: &[(String, String)]) -> Vec<String> {
    let mut t = Vec::new();
    for (k, v) in pairs {
        match v.as_str() {
            "true" => t.push(format!("--{k}")),
            "false" => {}
            _ => {
                t.push(format!("--{k}"));
                t.push(v.clone());
            }
        }
    }
    t
}

/// Position right after the subcommand tokens (two for `experiment <name>`).
fn subcommand_end(args: &[String]) -> usize {
    let mut i = 1;
    let mut depth = 0;
    while i < args.len() {
        let a = &args[i];
        if a.starts_with('-') {
            if depth == 0 && TOP_LEVEL_VALUED.contains(&a.as_str()) {
                i += 2;
            } else {
                i += 1;
            }
            continue;
        }
        depth += 1;
        i += 1;
        if depth == 1 && a != "experiment" {
            return i;
        }
        if depth == 2 {
            return i;
        }
    }
    args.len()
}

fn config_path(args: &[String]) -> Option<String> {
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            return args.get(i + 1).cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Inserts the file's pairs in front of the matching command-line flags.
pub fn merge(argv: Vec<OsString>) -> Result<Vec<String>, String> {
    let args: Vec<String> = argv.into_iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let pairs = parse_pairs(&text)?;
    let (top, sub): (Vec<_>, Vec<_>) = pairs.into_iter().partition(|(k, _)| TOP_LEVEL_KEYS.contains(&k.as_str()));
    let end = subcommand_end(&args);
    let mut out = vec![args[0].clone()];
    out.extend(flag_tokens(&top));
    out.extend(args[1..end].iter().cloned());
    out.extend(flag_tokens(&sub));
    out.extend(args[end..].iter().cloned());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn finds_subcommand_end() {
        assert_eq!(subcommand_end(&s(&["p", "--out", "x", "experiment", "rn", "--k", "5"])), 5);
        assert_eq!(subcommand_end(&s(&["p", "sample-tree", "--size", "3"])), 2);
    }

    #[test]
    fn pairs_and_comments() {
        let p = parse_pairs("# c\nseed = 7\nmax_a=10 # trailing\n").unwrap();
        assert_eq!(p, vec![("seed".into(), "7".into()), ("max-a".into(), "10".into())]);
        assert!(parse_pairs("novalue").is_err());
    }
}
