use std::collections::HashMap;

use serde_json::{json, Value};

use super::game::{AtomicGame, Profile};
use super::search::best_response_from;
use crate::error::Result;

/// Which player moves next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// Players take turns `0, 1, ..., k-1, 0, ...`; a player without an
    /// improving move passes.
    RoundRobin,
    /// The player with the largest improvement moves (lowest index on ties).
    BestImprovement,
}

/// One strict best-response move.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsStep {
    pub player: usize,
    pub delay_before: f64,
    pub delay_after: f64,
    /// Profile after the move.
    pub profile: Profile,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    ReachedPne,
    /// The profiles of the cycle, starting at the first one revisited.
    CycleDetected(Vec<Vec<usize>>),
    /// `max_steps` moves without reaching an equilibrium or a repeat.
    Truncated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsTrace {
    pub start: Profile,
    pub steps: Vec<DynamicsStep>,
    pub outcome: Outcome,
}

impl DynamicsTrace {
    /// The profile the dynamics stopped at.
    pub fn last(&self) -> &Profile {
        self.steps.last().map_or(&self.start, |s| &s.profile)
    }

    pub fn to_json<G: AtomicGame + ?Sized>(&self, game: &G) -> Value {
        let labels = |choices: &[usize]| -> Vec<String> {
            choices
                .iter()
                .enumerate()
                .map(|(i, &c)| game.strategy_label(i, c))
                .collect()
        };
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "player": s.player,
                    "delay_before": s.delay_before,
                    "delay_after": s.delay_after,
                    "profile": s.profile.view(game),
                })
            })
            .collect();
        let outcome = match &self.outcome {
            Outcome::ReachedPne => json!("reached_pne"),
            Outcome::Truncated => json!("truncated"),
            Outcome::CycleDetected(cycle) => {
                let cycle: Vec<Vec<String>> = cycle.iter().map(|c| labels(c)).collect();
                json!({ "cycle": cycle })
            }
        };
        json!({
            "start": self.start.view(game),
            "steps": steps,
            "outcome": outcome,
        })
    }
}

/// Repeated strict best responses from `start` until no player improves,
/// a profile repeats, or `max_steps` moves have been made.
pub fn best_response_dynamics<G: AtomicGame + ?Sized>(
    game: &G,
    start: &[usize],
    order: Order,
    max_steps: usize,
) -> Result<DynamicsTrace> {
    let start = Profile::evaluate(game, start)?;
    let k = game.players();
    let mut visited: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut history = vec![start.choices.clone()];
    visited.insert(start.choices.clone(), 0);
    let mut steps: Vec<DynamicsStep> = Vec::new();
    let mut current = start.clone();
    let mut turn = 0;
    let mut idle = 0;

    let outcome = loop {
        let mover = match order {
            Order::RoundRobin => {
                if idle == k {
                    break Outcome::ReachedPne;
                }
                let player = turn;
                turn = (turn + 1) % k;
                match best_response_from(game, &current.choices, player, current.delays[player]) {
                    Some((s, _)) => Some((player, s)),
                    None => {
                        idle += 1;
                        continue;
                    }
                }
            }
            Order::BestImprovement => {
                let mut best: Option<(usize, usize, f64)> = None;
                for player in 0..k {
                    let before = current.delays[player];
                    if let Some((s, d)) = best_response_from(game, &current.choices, player, before)
                    {
                        if best.is_none_or(|(_, _, gain)| before - d > gain) {
                            best = Some((player, s, before - d));
                        }
                    }
                }
                best.map(|(player, s, _)| (player, s))
            }
        };
        let Some((player, strategy)) = mover else {
            break Outcome::ReachedPne;
        };
        if steps.len() >= max_steps {
            break Outcome::Truncated;
        }
        idle = 0;
        let mut choices = current.choices.clone();
        choices[player] = strategy;
        let next = Profile::evaluate_unchecked(game, choices);
        steps.push(DynamicsStep {
            player,
            delay_before: current.delays[player],
            delay_after: next.delays[player],
            profile: next.clone(),
        });
        if let Some(&first) = visited.get(&next.choices) {
            break Outcome::CycleDetected(history[first..].to_vec());
        }
        visited.insert(next.choices.clone(), history.len());
        history.push(next.choices.clone());
        current = next;
    };

    Ok(DynamicsTrace {
        start,
        steps,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::generators::{gen_fig6, gen_table3};
    use crate::model::Routing;

    #[test]
    fn tabulated_game_cycles_through_four_profiles() {
        let game = gen_table3();
        let start = Profile::from_labels(&game, &["P3", "P2"]).unwrap();
        let trace = best_response_dynamics(&game, &start.choices, Order::RoundRobin, 100).unwrap();
        let Outcome::CycleDetected(cycle) = &trace.outcome else {
            panic!("expected a cycle, got {:?}", trace.outcome);
        };
        let labels: Vec<Vec<String>> = cycle
            .iter()
            .map(|c| Profile::evaluate(&game, c).unwrap().labels(&game))
            .collect();
        assert_eq!(
            labels,
            vec![
                vec!["P3", "P2"],
                vec!["P3", "P4"],
                vec!["P1", "P4"],
                vec!["P1", "P2"],
            ]
        );
        for step in &trace.steps {
            assert!(step.delay_after < step.delay_before);
        }
        let json = trace.to_json(&game);
        assert_eq!(json["outcome"]["cycle"][1], serde_json::json!(["P3", "P4"]));
    }

    #[test]
    fn uniform_game_reaches_equilibrium_under_both_orders() {
        let routing = Routing::new(gen_fig6(9.0).unwrap()).unwrap();
        for order in [Order::RoundRobin, Order::BestImprovement] {
            for start in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                let trace = best_response_dynamics(&routing, &start, order, 100).unwrap();
                assert_eq!(trace.outcome, Outcome::ReachedPne);
                assert!(crate::atomic::is_pne(&routing, trace.last()));
            }
        }
    }

    #[test]
    fn step_budget_truncates() {
        let game = gen_table3();
        let trace = best_response_dynamics(&game, &[2, 0], Order::RoundRobin, 2).unwrap();
        assert_eq!(trace.outcome, Outcome::Truncated);
        assert_eq!(trace.steps.len(), 2);
    }
}
