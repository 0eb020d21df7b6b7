#![allow(dead_code)]

use bandzeta::notation::Notation;
use bandzeta::pipeline::prepare_admissible;
use bandzeta::presentation::{parse_presentation, Presentation};
use bandzeta::state_graph::{build_state_graph, StateGraph};
use bandzeta::strings::{Limits, StringRules, StringWord};

pub const GP23: &str = include_str!("../../data/gp23.json");
pub const KRONECKER2: &str = include_str!("../../data/kronecker2.json");
pub const SB1: &str = include_str!("../../data/sb1.json");

pub const CORPUS: [(&str, &str); 3] = [("gp23", GP23), ("kronecker2", KRONECKER2), ("sb1", SB1)];

pub struct Loaded {
    pub input: Presentation,
    pub reduced: Presentation,
    pub window: usize,
    pub rules: StringRules,
    pub graph: StateGraph,
}

pub fn load(src: &str) -> Loaded {
    let input = parse_presentation(src).expect("corpus parses");
    let (reduced, _, window) = prepare_admissible(&input).expect("corpus is admissible");
    let rules = StringRules::new(&reduced);
    let graph = build_state_graph(&rules, window, &Limits::default()).expect("graph builds");
    Loaded {
        input,
        reduced,
        window,
        rules,
        graph,
    }
}

pub fn show(rules: &StringRules, w: &StringWord) -> String {
    rules.render(w, Notation::Uppercase, true)
}
