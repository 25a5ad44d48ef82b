//! Evaluates a complete assessment document and renders every figure.
//!
//! ```text
//! cargo run --example full_evaluation [assessment.json] [out-dir]
//! ```
//!
//! Without arguments the bundled hydro-power fixture is used.

use std::path::{Path, PathBuf};

use pms_metrics::render::{render_autonomy, render_modifiability, render_surface, RenderSpec};
use pms_metrics::{evaluate_pms, load_assessment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/hydro.json"));
    let doc = load_assessment(&std::fs::read(&path)?)?;
    let report = evaluate_pms(&doc, path.parent().unwrap_or(Path::new(".")))?;

    println!("{}", report.pms);
    println!("  portability  {}", report.portability);
    println!("  scalability  {}", report.scalability);
    println!("  complexity   {}", report.complexity);
    for m in &report.module_complexities {
        let warn = if m.zero_io_warning { "  (no inputs or outputs)" } else { "" };
        println!("    {:<16}{:>8}{warn}", m.module, m.c);
    }
    println!("  autonomy     {}", report.autonomy.total);

    if let Some(dir) = args.next() {
        let dir = Path::new(&dir);
        let spec = RenderSpec::default();
        let figures = [
            ("modifiability.svg", render_modifiability(&report, &spec)?),
            ("surface.svg", render_surface(&report, &spec)?),
            ("autonomy.svg", render_autonomy(&report.autonomy, &spec)?),
        ];
        for (name, svg) in figures {
            std::fs::write(dir.join(name), svg)?;
            println!("wrote {}", dir.join(name).display());
        }
    }
    Ok(())
}
