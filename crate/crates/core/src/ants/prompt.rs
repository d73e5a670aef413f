//! User-prompt renderers for the ant templates.
//!
//! The deployed layout reports categorical cues only. The numeric layouts reproduce the
//! earlier prompt iterations that reported raw sensor values.

use super::perception::{AntPerception, SensorReadings};

fn tf(v: bool) -> &'static str {
    if v {
        "True"
    } else {
        "False"
    }
}

fn nest_note(at_nest: bool) -> &'static str {
    if at_nest {
        "(You are currently at the nest)"
    } else {
        "(You are not currently at the nest)"
    }
}

fn carrying_note(carrying: bool) -> &'static str {
    if carrying {
        "(You are currently carrying food)"
    } else {
        "(You are not currently carrying food)"
    }
}

/// Sensor value with at most two decimals and no trailing zeros (`196.84`, `0`).
fn reading(v: f64) -> String {
    let s = format!("{:.2}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Deployed user prompt.
pub fn render_ant_user_prompt(p: &AntPerception) -> String {
    format!(
        "This is your current environment: \n   -Highest Pheromone Concentration: {},\n   -Nest Presence: {} {},\n   -Stronger Nest Scent: {},\n   -Food Concentration at your location: {},\n   -Carrying Food Status: {} {}.",
        p.highest_pheromone_dir.label(),
        tf(p.nest_presence),
        nest_note(p.nest_presence),
        p.stronger_nest_scent_dir.label(),
        p.food_here,
        tf(p.carrying),
        carrying_note(p.carrying),
    )
}

/// Deployed renderer behind the registry's uniform signature.
pub fn render_deployed(p: &AntPerception, _: &SensorReadings) -> String {
    render_ant_user_prompt(p)
}

fn numeric(p: &AntPerception, r: &SensorReadings, annotated: bool) -> String {
    let [pl, pf, pr] = r.pheromone;
    let [nl, nf, nr] = r.nest_scent;
    let (nest, carry) = if annotated {
        (
            format!("{} {}", tf(p.nest_presence), nest_note(p.nest_presence)),
            format!("{} {}", tf(p.carrying), carrying_note(p.carrying)),
        )
    } else {
        (tf(p.nest_presence).to_string(), tf(p.carrying).to_string())
    };
    format!(
        "Current environment:\n    -Pheromone concentration (Left: {}, Front: {}, Right: {}),\n    -Nest presence: {},\n    -Nest scent (Left: {}, Front: {}, Right: {}),\n    -Food concentration at your location: {},\n    -Carrying food status: {}",
        reading(pl),
        reading(pf),
        reading(pr),
        nest,
        reading(nl),
        reading(nf),
        reading(nr),
        p.food_here,
        carry,
    )
}

/// Raw sensor values, no status notes.
pub fn render_numeric(p: &AntPerception, r: &SensorReadings) -> String {
    numeric(p, r, false)
}

/// Raw sensor values with the at-nest / carrying notes.
pub fn render_numeric_annotated(p: &AntPerception, r: &SensorReadings) -> String {
    numeric(p, r, true)
}

/// Directional cues, before the header and wording of the deployed layout settled.
pub fn render_directional(p: &AntPerception, _: &SensorReadings) -> String {
    format!(
        "Current environment:\n    -Higher Pheromone Concentration: {},\n    -Nest Presence: {} {},\n    -Stronger Nest Scent: {},\n    -Food Concentration at your location: {},\n    -Carrying Food Status: {} {}",
        p.highest_pheromone_dir.label(),
        tf(p.nest_presence),
        nest_note(p.nest_presence),
        p.stronger_nest_scent_dir.label(),
        p.food_here,
        tf(p.carrying),
        carrying_note(p.carrying),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ants::perception::{PheromoneDir, SensorDir};

    fn at_nest() -> AntPerception {
        AntPerception {
            highest_pheromone_dir: PheromoneDir::None,
            nest_presence: true,
            stronger_nest_scent_dir: SensorDir::Front,
            food_here: 0,
            carrying: false,
        }
    }

    #[test]
    fn carrying_line() {
        let p = AntPerception { carrying: true, ..at_nest() };
        assert!(render_ant_user_prompt(&p)
            .ends_with("-Carrying Food Status: True (You are currently carrying food)."));
    }

    #[test]
    fn food_line() {
        let p = AntPerception { food_here: 2, ..at_nest() };
        assert!(render_ant_user_prompt(&p).contains("\n   -Food Concentration at your location: 2,\n"));
    }

    #[test]
    fn not_at_nest_note() {
        let p = AntPerception { nest_presence: false, ..at_nest() };
        assert!(render_ant_user_prompt(&p)
            .contains("-Nest Presence: False (You are not currently at the nest),"));
    }

    #[test]
    fn reading_format() {
        assert_eq!(reading(0.0), "0");
        assert_eq!(reading(196.839), "196.84");
        assert_eq!(reading(195.76), "195.76");
        assert_eq!(reading(60.0), "60");
        assert_eq!(reading(-0.001), "0");
        assert_eq!(reading(2.5), "2.5");
    }
}
