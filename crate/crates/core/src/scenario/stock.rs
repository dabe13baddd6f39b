use super::{Scenario, ScenarioError};

/// Names accepted by [`stock_scenario`].
pub const STOCK_SCENARIOS: [&str; 4] = [
    "two-level",
    "atom-beam-timing",
    "chain-three-system",
    "bayes-contrast",
];

pub fn stock_scenario_json(name: &str) -> Result<&'static str, ScenarioError> {
    Ok(match name {
        "two-level" => include_str!("../../scenarios/two-level.json"),
        "atom-beam-timing" => include_str!("../../scenarios/atom-beam-timing.json"),
        "chain-three-system" => include_str!("../../scenarios/chain-three-system.json"),
        "bayes-contrast" => include_str!("../../scenarios/bayes-contrast.json"),
        other => return Err(ScenarioError::UnknownDemo(other.to_owned())),
    })
}

/// One of the shipped scenarios, parsed and validated.
pub fn stock_scenario(name: &str) -> Result<Scenario, ScenarioError> {
    Scenario::from_json(stock_scenario_json(name)?)
}
