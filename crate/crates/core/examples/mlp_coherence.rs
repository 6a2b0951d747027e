//! Extract the KB of a network and verify it against the network.

use prefnet::mlp::{extract_kb, verify_prop1, verify_prop2, Network, StimulusSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = Network::from_json_str(include_str!("../fixtures/sigmoid_net.json"))?;
    let stimuli = StimulusSet::from_json_str(include_str!("../fixtures/stimuli.json"))?;
    print!("{}", extract_kb(&net).to_wkb_string());
    let r = verify_prop1(&net, &stimuli)?;
    println!(
        "sigmoid: passed={} max |W-u|={:e} coherent={}",
        r.passed, r.max_field_error, r.coherence.coherent
    );

    let step = Network::from_json_str(include_str!("../fixtures/step_net.json"))?;
    let st = StimulusSet::from_json_str(include_str!("../fixtures/step_stimuli.json"))?;
    if let Err(e) = verify_prop1(&step, &st) {
        println!("step under the strict check: {e}");
    }
    let r = verify_prop2(&step, &st)?;
    println!(
        "step: passed={} weakly coherent={} coherent={} ({} strict violations)",
        r.passed, r.coherence.weakly_coherent, r.coherence.coherent, r.coherence.strict_violations
    );
    Ok(())
}
