use pentagram_core::frieze::FriezePattern;
use pentagram_core::rational::parse_rational;
use pentagram_core::ProjPoint;

use crate::error::{CliError, Status};

/// Parses a comma-separated list of rationals, `inf` allowed.
pub fn parse_list(s: &str) -> Result<Vec<ProjPoint>, CliError> {
    s.split(',')
        .map(|t| match t.trim() {
            "inf" => Ok(ProjPoint::infinity()),
            t => parse_rational(t)
                .map(ProjPoint::finite1)
                .map_err(|e| CliError::usage(e.to_string())),
        })
        .collect()
}

pub fn run(a1: &str, table: bool, json: bool) -> Result<Status, CliError> {
    let a1 = parse_list(a1)?;
    let pat = FriezePattern::build(&a1)?;
    if json {
        let rows: Vec<Vec<String>> = pat.rows().iter().map(|r| r.iter().map(ProjPoint::to_text).collect()).collect();
        let doc = serde_json::json!({
            "n": pat.n(),
            "rows": rows,
            "completed": pat.completed(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("plain JSON values"));
    } else if table {
        print!("{}", pat.render_table());
    } else {
        for (i, r) in pat.rows().iter().enumerate() {
            let cells: Vec<String> = r.iter().map(ProjPoint::to_text).collect();
            println!("A_{i}: {}", cells.join(" "));
        }
    }
    Ok(Status::Pass)
}
