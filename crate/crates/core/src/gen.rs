//! Seeded random generators for test suites and the `mlp random` command.
//!
//! Every generator takes the RNG explicitly, so a single seed reproduces a
//! whole run.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fuzzy::FuzzyInterpretation;
use crate::kb::WeightedKb;
use crate::mlp::{Activation, Network, StimulusSet, Unit};
use crate::prob::Distribution;
use crate::syntax::Concept;

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random role-free knowledge bases.
#[derive(Clone, Debug)]
pub struct KbParams {
    pub max_names: usize,
    pub max_defaults: usize,
    pub max_strict: usize,
    /// Weights are drawn uniformly from `[-weight, weight]`.
    pub weight: f64,
    /// Nesting depth of default consequents.
    pub depth: usize,
}

impl Default for KbParams {
    fn default() -> Self {
        KbParams {
            max_names: 4,
            max_defaults: 6,
            max_strict: 1,
            weight: 5.0,
            depth: 1,
        }
    }
}

const NAMES: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

/// A role-free concept over `names` with at most `depth` nested connectives.
pub fn rolefree_concept(rng: &mut GenRng, names: &[String], depth: usize) -> Concept {
    let leaf = |rng: &mut GenRng| match rng.gen_range(0..10) {
        0 => Concept::Top,
        1 => Concept::Bottom,
        _ => Concept::name(names.choose(rng).expect("names").as_str()),
    };
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => Concept::not(rolefree_concept(rng, names, depth - 1)),
        1 => Concept::and(
            rolefree_concept(rng, names, depth - 1),
            rolefree_concept(rng, names, depth - 1),
        ),
        _ => Concept::or(
            rolefree_concept(rng, names, depth - 1),
            rolefree_concept(rng, names, depth - 1),
        ),
    }
}

/// A KB with one or two distinguished concepts, between one and
/// `max_defaults` defaults and up to `max_strict` strict inclusions, over at
/// least two and at most `max_names` concept names.
pub fn rolefree_kb(rng: &mut GenRng, p: &KbParams) -> WeightedKb {
    let n = rng.gen_range(2..=p.max_names.clamp(2, NAMES.len()));
    let names: Vec<String> = NAMES[..n].iter().map(|s| s.to_string()).collect();
    let n_dist = rng.gen_range(1..=2.min(n));
    let distinguished: Vec<String> = names.choose_multiple(rng, n_dist).cloned().collect();
    let mut kb = WeightedKb::new(distinguished.iter().cloned());
    for name in &names {
        kb.declare(name.as_str());
    }
    for _ in 0..rng.gen_range(1..=p.max_defaults.max(1)) {
        let subject = distinguished.choose(rng).expect("distinguished");
        let consequent = rolefree_concept(rng, &names, p.depth);
        let w = rng.gen_range(-p.weight..=p.weight);
        kb.add_default(subject, consequent, w);
    }
    for _ in 0..rng.gen_range(0..=p.max_strict) {
        let sub = Concept::name(names.choose(rng).expect("names").as_str());
        let sup = rolefree_concept(rng, &names, p.depth);
        kb.add_strict(sub, sup);
    }
    kb
}

/// Concept names of `kb`, sorted.
pub fn kb_names(kb: &WeightedKb) -> Vec<String> {
    let mut out = std::collections::BTreeSet::new();
    for c in kb.concepts() {
        c.collect_names(&mut out);
    }
    out.extend(kb.distinguished.iter().cloned());
    out.into_iter().collect()
}

fn interp_with(
    rng: &mut GenRng,
    names: &[String],
    n: usize,
    mut degree: impl FnMut(&mut GenRng) -> f64,
) -> FuzzyInterpretation {
    let domain: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut b = FuzzyInterpretation::builder(domain.iter().cloned());
    for name in names {
        let row = (0..n).map(|_| degree(rng)).collect();
        b = b.concept_row(name.as_str(), row);
    }
    for (i, d) in domain.iter().enumerate() {
        b = b.individual(format!("i{i}"), d.clone());
    }
    b.build().expect("generated interpretation is valid")
}

/// `n` elements `e0..`, individuals `i0..` naming them, crisp memberships.
pub fn crisp_interp(rng: &mut GenRng, names: &[String], n: usize) -> FuzzyInterpretation {
    interp_with(rng, names, n, |r| if r.gen_bool(0.5) { 1.0 } else { 0.0 })
}

/// Like [`crisp_interp`] with degrees uniform in `[0,1]`, plus some exact
/// zeros and ones.
pub fn fuzzy_interp(rng: &mut GenRng, names: &[String], n: usize) -> FuzzyInterpretation {
    interp_with(rng, names, n, |r| match r.gen_range(0..10) {
        0 => 0.0,
        1 => 1.0,
        _ => r.gen_range(0.0..=1.0),
    })
}

/// Random weights normalised to sum to 1; roughly one element in five gets
/// probability 0.
pub fn distribution(rng: &mut GenRng, domain: &[String]) -> Distribution {
    let mut raw: Vec<f64> = domain
        .iter()
        .map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.01..1.0) })
        .collect();
    if raw.iter().all(|&w| w == 0.0) {
        raw[0] = 1.0;
    }
    let total: f64 = raw.iter().sum();
    let mu: BTreeMap<String, f64> = domain.iter().cloned().zip(raw.iter().map(|w| w / total)).collect();
    Distribution::new(mu).expect("normalised")
}

/// Shape of random layered feedforward networks.
#[derive(Clone, Debug)]
pub struct NetParams {
    /// Layer count including the input layer.
    pub min_layers: usize,
    pub max_layers: usize,
    pub max_units: usize,
    /// Weights and biases are drawn uniformly from `[-weight, weight]`.
    pub weight: f64,
    /// Each unit draws its activation from this list.
    pub activations: Vec<Activation>,
}

impl Default for NetParams {
    fn default() -> Self {
        NetParams {
            min_layers: 2,
            max_layers: 4,
            max_units: 8,
            weight: 2.0,
            activations: vec![Activation::Sigmoid],
        }
    }
}

impl NetParams {
    pub fn with_activations(activations: &[Activation]) -> Self {
        NetParams {
            activations: activations.to_vec(),
            ..NetParams::default()
        }
    }
}

/// A fully connected layered network. Inputs are `x0..`, the units of
/// layer `l` are `h{l}_0..`, and every unit is distinguished.
pub fn network(rng: &mut GenRng, p: &NetParams) -> Network {
    let layers = rng.gen_range(p.min_layers.max(2)..=p.max_layers.max(p.min_layers.max(2)));
    let mut prev: Vec<String> = (0..rng.gen_range(1..=p.max_units))
        .map(|i| format!("x{i}"))
        .collect();
    let inputs = prev.clone();
    let mut units = Vec::new();
    for l in 1..layers {
        let width = rng.gen_range(1..=p.max_units);
        let mut layer = Vec::with_capacity(width);
        for i in 0..width {
            let id = format!("h{l}_{i}");
            let incoming = prev
                .iter()
                .map(|s| (s.clone(), rng.gen_range(-p.weight..=p.weight)))
                .collect();
            units.push(Unit {
                id: id.clone(),
                activation: *p.activations.choose(rng).expect("activations"),
                bias: rng.gen_range(-p.weight..=p.weight),
                incoming,
            });
            layer.push(id);
        }
        prev = layer;
    }
    let distinguished = units.iter().map(|u| u.id.clone()).collect();
    Network::new(inputs, units, distinguished).expect("generated network is valid")
}

/// `m` stimuli `s0..` with input values uniform in `[0,1]`.
pub fn stimuli(rng: &mut GenRng, net: &Network, m: usize) -> StimulusSet {
    let mut st = StimulusSet::new();
    for s in 0..m {
        let values = net
            .inputs()
            .iter()
            .map(|i| (i.clone(), rng.gen_range(0.0..=1.0)))
            .collect();
        st.push(format!("s{s}"), values);
    }
    st
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_reproduce() {
        let a = network(&mut rng(1), &NetParams::default());
        let b = network(&mut rng(1), &NetParams::default());
        assert_eq!(a, b);
        let ka = rolefree_kb(&mut rng(2), &KbParams::default());
        let kb = rolefree_kb(&mut rng(2), &KbParams::default());
        assert_eq!(ka.to_wkb_string(), kb.to_wkb_string());
    }

    #[test]
    fn shapes_respect_params() {
        let mut r = rng(3);
        for _ in 0..50 {
            let net = network(&mut r, &NetParams::default());
            assert!(net.is_feedforward());
            assert!(net.inputs().len() <= 8 && !net.units().is_empty());
            assert_eq!(net.distinguished().len(), net.units().len());
            for u in net.units() {
                assert!(u.bias.abs() <= 2.0);
                assert!(u.incoming.iter().all(|(_, w)| w.abs() <= 2.0));
            }
            let kb = rolefree_kb(&mut r, &KbParams::default());
            let names = kb_names(&kb);
            assert!(names.len() <= 4);
            let total: usize = kb.defeasible.values().map(Vec::len).sum();
            assert!((1..=6).contains(&total));
            assert!(kb.validate().iter().all(|d| !d.is_error()));
            let d = distribution(&mut r, &["a".into(), "b".into(), "c".into()]);
            assert!((d.iter().map(|(_, p)| p).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
