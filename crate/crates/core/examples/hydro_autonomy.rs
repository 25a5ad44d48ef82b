//! Autonomy of a hydro-power PMS: coverage ratios, banded scores, the total
//! and the radar figure.
//!
//! ```text
//! cargo run --example hydro_autonomy [out-dir]
//! ```

use pms_metrics::assessment::{AutonomyAssessment, BandedScore, CoverageEvidence};
use pms_metrics::metrics::autonomy_profile;
use pms_metrics::render::{render_autonomy, RenderSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let assessment = AutonomyAssessment {
        // both start-up tasks and all three alarm responses are automated
        operator_independence: CoverageEvidence::counts(2, 2),
        self_preservation: CoverageEvidence::counts(3, 3),
        strategy: BandedScore::new(75.0, "a few optimization strategies"),
        coordination: BandedScore::new(75.0, "multiple users, aware of other units"),
    };
    let p = autonomy_profile(&assessment)?;
    println!("operator independence {:>6}%", p.a_i);
    println!("self-preservation     {:>6}%", p.a_p);
    println!("strategy              {:>6}%  ({})", p.a_s, p.strategy_band);
    println!("coordination          {:>6}%  ({})", p.a_c, p.coordination_band);
    println!("total                 {:>6}   (radar area {})", p.total, p.total / 2.0);

    if let Some(dir) = std::env::args().nth(1) {
        let path = std::path::Path::new(&dir).join("autonomy.svg");
        std::fs::write(&path, render_autonomy(&p, &RenderSpec::default())?)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
