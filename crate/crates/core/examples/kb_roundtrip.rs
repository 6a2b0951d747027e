//! Build a KB in code, validate it and print it as `.wkb`.

use prefnet::kb::parse_kb;
use prefnet::syntax::parse_concept_unchecked;
use prefnet::WeightedKb;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut kb = WeightedKb::new(["Car"]);
    kb.add_strict(
        parse_concept_unchecked("SportsCar")?,
        parse_concept_unchecked("Car")?,
    );
    kb.add_default("Car", parse_concept_unchecked("exists has_wheels.Top")?, 10.0)
        .add_default("Car", parse_concept_unchecked("Fast")?, -2.0);

    let text = kb.to_wkb_string();
    print!("{text}");
    for d in kb.validate() {
        println!("{:?}: {}", d.severity, d.message);
    }
    println!("fragment: {:?}", kb.classify_fragment());
    assert_eq!(parse_kb(&text)?, kb);

    match parse_kb("distinguished: A\ndef(B): T(B) [= C @ 1") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
