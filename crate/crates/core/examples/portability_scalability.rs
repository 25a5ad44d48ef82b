//! Portability and scalability of a four-module PMS, plus the combined
//! modifiability bar.
//!
//! ```text
//! cargo run --example portability_scalability [out-dir]
//! ```

use pms_metrics::assessment::{ComplexityInputs, ComplexitySource, ModuleAssessment};
use pms_metrics::metrics::{modifiability_profile, portability_score, scalability_score};

fn module(name: &str, portability: f64, scalability: f64) -> ModuleAssessment {
    ModuleAssessment {
        name: name.into(),
        weight: 1.0,
        portability,
        scalability,
        complexity: ComplexitySource::Manual(ComplexityInputs::new(1.0, 1, 1, 1)),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let modules = [
        module("agents", 2.5, 3.0),
        module("flow-model", 1.5, 1.0),
        module("negotiation", 3.0, 0.0),
        module("alarm-handling", 2.0, 2.5),
    ];
    let p = portability_score(&modules)?;
    let s = scalability_score(&modules)?;
    let profile = modifiability_profile(p, s)?;
    println!("{:<16}{:>6}{:>6}", "module", "P", "S");
    for m in &modules {
        println!("{:<16}{:>6}{:>6}", m.name, m.portability, m.scalability);
    }
    println!("{:<16}{:>6}{:>6}", "PMS", p, s);
    println!("length {}  offset {}", profile.length, profile.offset);

    // Doubling one module's weight pulls the scores toward it.
    let mut heavy = modules.clone();
    heavy[2].weight = 2.0;
    println!(
        "negotiation weighted x2: P = {:.4}, S = {:.4}",
        portability_score(&heavy)?,
        scalability_score(&heavy)?
    );

    if let Some(dir) = std::env::args().nth(1) {
        let report = pms_metrics::report::evaluate_with(&example_document(modules.to_vec()), |_| {
            Ok(String::new())
        })?;
        let svg = pms_metrics::render::render_modifiability(&report, &Default::default())?;
        let path = std::path::Path::new(&dir).join("modifiability.svg");
        std::fs::write(&path, svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn example_document(modules: Vec<ModuleAssessment>) -> pms_metrics::AssessmentDocument {
    use pms_metrics::assessment::*;
    AssessmentDocument {
        pms: PmsIdentity::new("example", "1"),
        modules,
        autonomy: AutonomyAssessment {
            operator_independence: CoverageEvidence::percent(50.0),
            self_preservation: CoverageEvidence::percent(50.0),
            strategy: BandedScore::new(50.0, ""),
            coordination: BandedScore::new(50.0, ""),
        },
        analyzer_config: Default::default(),
    }
}
