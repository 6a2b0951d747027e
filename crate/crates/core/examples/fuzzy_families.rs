//! The same concept under each combination-function family.

use prefnet::fuzzy::{eval_concept, eval_inclusion};
use prefnet::syntax::parse_concept_unchecked;
use prefnet::{FuzzyInterpretation, LogicFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let interp = FuzzyInterpretation::builder(["a", "b"])
        .concept_row("Tall", vec![0.7, 0.2])
        .concept_row("Heavy", vec![0.6, 0.9])
        .role_edge("likes", "a", "b", 0.8)
        .build()?;
    let concepts = ["Tall and Heavy", "Tall or not Heavy", "exists likes.Heavy", "forall likes.Tall"];
    for fam in LogicFamily::ALL {
        println!("{fam}");
        for text in concepts {
            let c = parse_concept_unchecked(text)?;
            let a = eval_concept(&interp, fam, &c, 0)?;
            let b = eval_concept(&interp, fam, &c, 1)?;
            println!("  {text:<22} a={a:.4} b={b:.4}");
        }
        let tall = parse_concept_unchecked("Tall")?;
        let heavy = parse_concept_unchecked("Heavy")?;
        println!("  Tall [= Heavy         {:.4}", eval_inclusion(&interp, fam, &tall, &heavy)?);
    }
    Ok(())
}
