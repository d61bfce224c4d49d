//! `--config FILE`: `key = value` lines merged beneath the command line.

use std::ffi::OsString;

/// Splices the entries of any `--config` file in front of the explicit
/// flags so that clap's last-occurrence rule lets the flags win.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let args: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let mut path = None;
    let mut i = 0;
    while i < args.len() {
        if args[i] == "--config" {
            path = Some(args.get(i + 1).ok_or("--config needs a file")?.clone());
            i += 1;
        } else if let Some(p) = args[i].strip_prefix("--config=") {
            path = Some(p.to_string());
        }
        i += 1;
    }
    let Some(path) = path else { return Ok(argv) };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let injected = parse(&text).map_err(|e| format!("{path}: {e}"))?;
    // program, subcommand, config entries, the rest
    let Some(sub) = args.iter().skip(1).position(|a| crate::SUBCOMMANDS.contains(&a.as_str())).map(|p| p + 1) else {
        return Ok(argv);
    };
    let mut out: Vec<OsString> = argv[..=sub].to_vec();
    out.extend(injected.into_iter().map(OsString::from));
    out.extend_from_slice(&argv[sub + 1..]);
    Ok(out)
}

fn parse(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
        let key = k.trim().replace('_', "-");
        if key == "config" {
            return Err(format!("line {}: nested config", n + 1));
        }
        match v.trim() {
            "true" => out.push(format!("--{key}")),
            "false" => {}
            v => {
                out.push(format!("--{key}"));
                out.push(v.to_string());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines() {
        let got = parse("model = square\n# note\norder=6\nlambda_min = 0.1\nplot=false\n").unwrap();
        assert_eq!(got, ["--model", "square", "--order", "6", "--lambda-min", "0.1"]);
        assert!(parse("nonsense").is_err());
    }
}
