//! Write the machine-readable outputs: table dump, curve CSV and report JSON.
//!
//! cargo run --release --example reports -- [output-dir]

use std::fs::File;
use std::path::PathBuf;

use multisecretary::bounds::{build_report, sweep, KRule};
use multisecretary::output::{read_curve_csv, write_curve_csv, write_json, write_tables_csv};
use multisecretary::solve_optimal;

fn main() -> multisecretary::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;

    let tables = solve_optimal(50)?.with_values();
    write_tables_csv(File::create(dir.join("tables.csv"))?, &tables)?;

    let curve = sweep(&"16:4096:x2".parse()?, KRule::Half)?;
    write_curve_csv(File::create(dir.join("curve.csv"))?, &curve)?;
    let reread = read_curve_csv(File::open(dir.join("curve.csv"))?)?;
    assert_eq!(reread, curve);

    let report = build_report(curve)?;
    write_json(File::create(dir.join("report.json"))?, &report)?;

    for name in ["tables.csv", "curve.csv", "report.json"] {
        let path = dir.join(name);
        println!("{} ({} bytes)", path.display(), std::fs::metadata(&path)?.len());
    }
    Ok(())
}
