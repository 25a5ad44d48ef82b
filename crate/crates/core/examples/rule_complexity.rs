//! Complexity of rule-language modules and of a black-box element.
//!
//! ```text
//! cargo run --example rule_complexity
//! ```

use pms_metrics::metrics::module_complexity;
use pms_metrics::rules::{analyze_source, blackbox_inputs, AnalyzerConfig, BlackBoxSpec};

const RULES: &str = "\
IF A<K1 THEN SET X=10 ELSE X=B;
F(A) = A * SIN (K3*T) + K2
IF F(A)>K4 THEN SET C=TRUE ELSE SET C=FALSE;
SWITCH (X) {
CASE X<=0: SET MOTOR=OFF;
CASE X<=10: SET MOTOR=LOW;
CASE X>10: SET MOTOR=HI;
DEFAULT: SET MOTOR=ERROR;
}
";

const PUMP: &str = "\
IF LEVEL > K1 AND NOT ALARM THEN SET PUMP = ON ELSE SET PUMP = OFF;
FOR I = 1 TO K2 DO
  SET FLOW = FLOW + RATE * I
END
";

fn show(name: &str, src: &str, cfg: &AnalyzerConfig) -> Result<(), Box<dyn std::error::Error>> {
    let a = analyze_source(src, cfg)?;
    let c = module_complexity(name, a.inputs);
    println!(
        "{name}: r = {}, m = {}, f_in = {}, f_out = {}, c = {}",
        a.inputs.readability, a.inputs.mccabe, a.inputs.fan_in, a.inputs.fan_out, c.c
    );
    println!("  inputs    {:?}", a.io.inputs);
    println!("  outputs   {:?}", a.io.outputs);
    println!("  internals {:?}", a.io.internals);
    println!("  excluded  {:?}", a.io.excluded);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = AnalyzerConfig::default();
    show("rules", RULES, &cfg)?;
    show("pump", PUMP, &cfg)?;

    let extended = AnalyzerConfig {
        extended_decision_counting: true,
        ..AnalyzerConfig::default()
    };
    println!("pump, counting AND/OR as decisions:");
    show("pump", PUMP, &extended)?;

    let nn = module_complexity("neural-net", blackbox_inputs(BlackBoxSpec { inputs: 10, outputs: 4 }));
    println!(
        "black box: r = {}, m = {}, 10 in, 4 out, c = {}",
        nn.inputs.readability, nn.inputs.mccabe, nn.c
    );
    Ok(())
}
