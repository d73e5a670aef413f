use serde::Serialize;

use super::policy::{flock_heading, BirdDecision};
use super::response::parse_bird_response;
use super::world::{apply_bird_decision, neighbors_of, FlockParams, FlockWorld};
use crate::metrics::PositionCsvRow;
use crate::llm::{decide, CallRecord, ControllerKind, Decision, PromptSetup};
use crate::sim::{Heading, SeededRng, Tick};

/// Bounded number of in-flight remote requests per tick.
const MAX_CONCURRENT_CALLS: usize = 8;

pub type FlockController = ControllerKind;

#[derive(Debug, Clone, Serialize)]
pub struct BirdLogEntry {
    pub tick: u64,
    pub agent_id: usize,
    pub controller_kind: ControllerKind,
    pub heading_before: Heading,
    pub neighbors_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_response: Option<String>,
    pub new_heading: Heading,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub fell_back: bool,
}

#[derive(Debug, Clone, Default)]
pub struct FlockTickReport {
    pub tick: u64,
    pub entries: Vec<BirdLogEntry>,
    pub calls: Vec<CallRecord>,
    pub fallbacks: usize,
}

pub struct FlockSimulation {
    pub world: FlockWorld,
    pub kinds: Vec<ControllerKind>,
    prompt: Option<PromptSetup>,
    tick: Tick,
    pub degraded_ticks: Vec<u64>,
}

impl std::fmt::Debug for FlockSimulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FlockSimulation").field("tick", &self.tick).field("kinds", &self.kinds).finish_non_exhaustive()
    }
}

impl FlockSimulation {
    /// `kinds[i]` controls bird `i`. `prompt` is required when any kind uses a prompt.
    pub fn new(params: FlockParams, kinds: Vec<ControllerKind>, seed: u64, prompt: Option<PromptSetup>) -> Self {
        assert!(
            prompt.is_some() || !kinds.iter().any(|k| k.uses_prompt()),
            "prompt-driven birds need a PromptSetup"
        );
        let mut world = FlockWorld::new(params, kinds.len(), &SeededRng::new(seed));
        for (b, k) in world.birds.iter_mut().zip(&kinds) {
            b.is_llm = *k != ControllerKind::RuleBased;
        }
        Self { world, kinds, prompt, tick: Tick(0), degraded_ticks: Vec::new() }
    }

    pub fn tick(&self) -> Tick {
        self.tick
    }

    fn prompt_decision(&self, bird: usize, tick: u64) -> Decision<BirdDecision> {
        let setup = self.prompt.as_ref().expect("checked in new");
        let params = &self.world.params;
        let b = &self.world.birds[bird];
        let neighbors = neighbors_of(&self.world, bird, params.vision);
        let user = setup.template.render_bird(params, b.heading, &neighbors).expect("flocking template");
        decide(
            setup.backend(self.kinds[bird]),
            &setup.request(&user),
            setup.retry_policy(),
            parse_bird_response,
            BirdDecision::keep(b.heading),
            tick,
            bird,
        )
    }

    /// Advances one tick. Every bird decides from the same start-of-tick snapshot; headings
    /// are then set and all birds move.
    pub fn step(&mut self) -> FlockTickReport {
        self.tick = self.tick.next();
        let tick = self.tick.0;
        let n = self.kinds.len();
        let mut decisions: Vec<Option<Decision<BirdDecision>>> = (0..n).map(|_| None).collect();

        let prompted: Vec<usize> = (0..n).filter(|&i| self.kinds[i].uses_prompt()).collect();
        let remote = self.prompt.as_ref().is_some_and(|p| p.has_remote());
        if remote && prompted.len() > 1 {
            let this = &*self;
            for chunk in prompted.chunks(MAX_CONCURRENT_CALLS) {
                let results: Vec<_> = std::thread::scope(|s| {
                    let handles: Vec<_> =
                        chunk.iter().map(|&i| (i, s.spawn(move || this.prompt_decision(i, tick)))).collect();
                    handles.into_iter().map(|(i, h)| (i, h.join().expect("decision thread"))).collect()
                });
                for (i, d) in results {
                    decisions[i] = Some(d);
                }
            }
        } else {
            for &i in &prompted {
                decisions[i] = Some(self.prompt_decision(i, tick));
            }
        }

        let params = self.world.params.clone();
        let mut report = FlockTickReport { tick, ..Default::default() };
        let mut chosen = Vec::with_capacity(n);
        for (i, slot) in decisions.into_iter().enumerate() {
            let b = &self.world.birds[i];
            let neighbors = neighbors_of(&self.world, i, params.vision);
            let (new_heading, raw_response, fell_back) = match slot {
                Some(d) => {
                    report.calls.extend(d.calls);
                    (d.value.new_heading, d.raw_response, d.fell_back)
                }
                None => (flock_heading(b.heading, &neighbors, &params).0, None, false),
            };
            report.fallbacks += usize::from(fell_back);
            report.entries.push(BirdLogEntry {
                tick,
                agent_id: i,
                controller_kind: self.kinds[i],
                heading_before: b.heading,
                neighbors_count: neighbors.len(),
                raw_response,
                new_heading,
                fell_back,
            });
            chosen.push(new_heading);
        }
        for (i, h) in chosen.into_iter().enumerate() {
            apply_bird_decision(&mut self.world, i, h);
        }
        if report.fallbacks > 0 {
            self.degraded_ticks.push(tick);
        }
        report
    }

    /// Current positions, for replay.
    pub fn position_rows(&self) -> Vec<PositionCsvRow> {
        self.world
            .birds
            .iter()
            .map(|b| PositionCsvRow {
                tick: self.tick.0,
                id: b.id,
                x: b.pos.0,
                y: b.pos.1,
                heading: b.heading.degrees(),
                is_llm: b.is_llm,
            })
            .collect()
    }

    /// Runs `steps` ticks, handing each report to `sink`.
    pub fn run(&mut self, steps: u64, mut sink: impl FnMut(&FlockTickReport, &FlockWorld)) {
        for _ in 0..steps {
            let r = self.step();
            sink(&r, &self.world);
        }
    }
}
