//! Before/after view of one PMS whose self-preservation improved between
//! versions.
//!
//! ```text
//! cargo run --example version_change [out-dir]
//! ```

use std::path::Path;

use pms_metrics::render::{render_panels, Panel, RenderSpec};
use pms_metrics::report::Metric;
use pms_metrics::{diff_reports, evaluate_pms, load_assessment, MetricsReport};

fn evaluate(path: &Path) -> Result<MetricsReport, Box<dyn std::error::Error>> {
    let doc = load_assessment(&std::fs::read(path)?)?;
    Ok(evaluate_pms(&doc, path.parent().unwrap_or(Path::new(".")))?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/candidates");
    let before = evaluate(&fixtures.join("plant-v1.json"))?;
    let after = evaluate(&fixtures.join("plant-v2.json"))?;
    let delta = diff_reports(&before, &after);
    println!("{} -> {}", delta.before, delta.after);
    for m in Metric::ALL {
        let d = delta.deltas.get(m);
        if d != 0.0 {
            println!("  {m}: {} -> {} ({d:+})", m.value(&before), m.value(&after));
        }
    }

    if let Some(dir) = std::env::args().nth(1) {
        let panels = [
            Panel::autonomy(before.pms.to_string(), before.autonomy.clone()),
            Panel::autonomy(after.pms.to_string(), after.autonomy.clone()),
        ];
        let path = Path::new(&dir).join("version-change.svg");
        std::fs::write(&path, render_panels(&panels, &RenderSpec::default())?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
