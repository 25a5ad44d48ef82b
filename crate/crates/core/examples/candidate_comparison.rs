//! Ranks three candidate systems per metric and lists the trade-offs
//! between them.
//!
//! ```text
//! cargo run --example candidate_comparison [out-dir]
//! ```

use std::path::Path;

use pms_metrics::render::{render_panels, Panel, RenderSpec};
use pms_metrics::report::Metric;
use pms_metrics::{compare_candidates, evaluate_pms, load_assessment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/candidates");
    let mut reports = Vec::new();
    for name in ["first", "second", "third"] {
        let doc = load_assessment(&std::fs::read(dir.join(format!("{name}.json")))?)?;
        reports.push(evaluate_pms(&doc, &dir)?);
    }
    let cmp = compare_candidates(&reports)?;
    for m in [
        Metric::OperatorIndependence,
        Metric::SelfPreservation,
        Metric::Strategy,
        Metric::Coordination,
        Metric::AutonomyTotal,
    ] {
        println!("{:<22} {}", m.name(), cmp.ranking(m).join(" > "));
    }
    println!();
    for t in &cmp.tradeoff_notes {
        println!("{} -> {}: gains {}, loses {}", t.from, t.to, t.gained, t.lost);
    }

    if let Some(out) = std::env::args().nth(1) {
        let panels: Vec<_> = reports
            .iter()
            .map(|r| Panel::autonomy(r.pms.label(), r.autonomy.clone()))
            .collect();
        let path = Path::new(&out).join("candidates.svg");
        std::fs::write(&path, render_panels(&panels, &RenderSpec::default())?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
