use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::world::AntWorld;
use crate::text::{first_object, strip_code_fences};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rotate {
    Left,
    Right,
    None,
    Random,
}

impl Rotate {
    pub fn as_str(self) -> &'static str {
        match self {
            Rotate::Left => "left",
            Rotate::Right => "right",
            Rotate::None => "none",
            Rotate::Random => "random",
        }
    }
}

/// The five-key action dictionary an ant controller returns each tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AntAction {
    #[serde(rename = "move-forward")]
    pub move_forward: bool,
    pub rotate: Rotate,
    #[serde(rename = "pick-up-food")]
    pub pick_up_food: bool,
    #[serde(rename = "drop-pheromone")]
    pub drop_pheromone: bool,
    #[serde(rename = "drop-food")]
    pub drop_food: bool,
}

impl AntAction {
    /// Does nothing at all. Used for ants that have not departed yet.
    pub const IDLE: AntAction = AntAction {
        move_forward: false,
        rotate: Rotate::None,
        pick_up_food: false,
        drop_pheromone: false,
        drop_food: false,
    };

    /// Used when an LLM decision could not be obtained.
    pub const FALLBACK: AntAction = AntAction {
        move_forward: false,
        rotate: Rotate::Random,
        pick_up_food: false,
        drop_pheromone: false,
        drop_food: false,
    };

    /// Renders the action the way the deployed prompt asks for it: a Python dictionary.
    pub fn to_python_dict(&self) -> String {
        let b = |v: bool| if v { "True" } else { "False" };
        format!(
            "{{\n   \"move-forward\": {}, \n   \"rotate\": \"{}\", \n   \"pick-up-food\": {},\n   \"drop-pheromone\": {},\n   \"drop-food\": {}\n}}",
            b(self.move_forward),
            self.rotate.as_str(),
            b(self.pick_up_food),
            b(self.drop_pheromone),
            b(self.drop_food)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AntParseErrorKind {
    NoObject,
    Syntax(String),
    UnknownKey(String),
    DuplicateKey(String),
    MissingKey(&'static str),
    InvalidValue { key: &'static str, value: String },
}

impl fmt::Display for AntParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoObject => write!(f, "no brace-delimited object found"),
            Self::Syntax(m) => write!(f, "syntax error: {m}"),
            Self::UnknownKey(k) => write!(f, "unknown key {k:?}"),
            Self::DuplicateKey(k) => write!(f, "duplicate key {k:?}"),
            Self::MissingKey(k) => write!(f, "missing key {k:?}"),
            Self::InvalidValue { key, value } => write!(f, "invalid value {value:?} for {key:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse ant response: {kind}")]
pub struct AntParseError {
    pub kind: AntParseErrorKind,
    pub raw: String,
}

const KEYS: [&str; 5] = ["move-forward", "rotate", "pick-up-food", "drop-pheromone", "drop-food"];

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.chars.next_if(|c| c.is_whitespace()).is_some() {}
    }

    fn quoted(&mut self) -> Result<String, String> {
        let quote = match self.chars.next() {
            Some(q @ ('"' | '\'')) => q,
            Some(c) => return Err(format!("expected quoted string, found {c:?}")),
            None => return Err("unexpected end of input".into()),
        };
        let mut out = String::new();
        while let Some(c) = self.chars.next() {
            match c {
                '\\' => match self.chars.next() {
                    Some(e) => out.push(e),
                    None => break,
                },
                c if c == quote => return Ok(out),
                c => out.push(c),
            }
        }
        Err("unterminated string".into())
    }

    fn bare(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.chars.next_if(|c| !matches!(c, ',' | '}') && !c.is_whitespace()) {
            out.push(c);
        }
        out
    }
}

enum Value {
    Quoted(String),
    Bare(String),
}

fn parse_entries(object: &str) -> Result<Vec<(String, Value)>, AntParseErrorKind> {
    let inner = &object[1..object.len() - 1];
    let mut cur = Cursor { chars: inner.chars().peekable() };
    let mut out = Vec::new();
    loop {
        cur.skip_ws();
        if cur.chars.peek().is_none() {
            break;
        }
        let key = cur.quoted().map_err(AntParseErrorKind::Syntax)?;
        cur.skip_ws();
        match cur.chars.next() {
            Some(':') => {}
            other => {
                return Err(AntParseErrorKind::Syntax(format!(
                    "expected ':' after {key:?}, found {other:?}"
                )))
            }
        }
        cur.skip_ws();
        let value = match cur.chars.peek() {
            Some('"' | '\'') => Value::Quoted(cur.quoted().map_err(AntParseErrorKind::Syntax)?),
            Some(_) => Value::Bare(cur.bare()),
            None => return Err(AntParseErrorKind::Syntax(format!("missing value for {key:?}"))),
        };
        out.push((key, value));
        cur.skip_ws();
        match cur.chars.next() {
            Some(',') | None => {}
            Some(c) => {
                return Err(AntParseErrorKind::Syntax(format!("expected ',' found {c:?}")));
            }
        }
    }
    Ok(out)
}

fn as_bool(key: &'static str, v: &Value) -> Result<bool, AntParseErrorKind> {
    match v {
        Value::Bare(s) if s == "True" || s == "true" => Ok(true),
        Value::Bare(s) if s == "False" || s == "false" => Ok(false),
        Value::Bare(s) | Value::Quoted(s) => {
            Err(AntParseErrorKind::InvalidValue { key, value: s.clone() })
        }
    }
}

fn as_rotate(v: &Value) -> Result<Rotate, AntParseErrorKind> {
    let (Value::Bare(s) | Value::Quoted(s)) = v;
    match s.to_ascii_lowercase().as_str() {
        "left" => Ok(Rotate::Left),
        "right" => Ok(Rotate::Right),
        "none" => Ok(Rotate::None),
        "random" => Ok(Rotate::Random),
        _ => Err(AntParseErrorKind::InvalidValue { key: "rotate", value: s.clone() }),
    }
}

/// Decodes an ant controller response into an [`AntAction`].
///
/// Takes the first brace-delimited literal (after removing markdown fences). Keys may be
/// single- or double-quoted, booleans may be `True`/`False` or `true`/`false`. All five keys
/// are required and no others are accepted.
pub fn parse_ant_response(text: &str) -> Result<AntAction, AntParseError> {
    let fail = |kind| AntParseError { kind, raw: text.to_string() };
    let body = strip_code_fences(text);
    let object = first_object(body).ok_or_else(|| fail(AntParseErrorKind::NoObject))?;
    let entries = parse_entries(object).map_err(fail)?;

    let mut slots: [Option<&Value>; 5] = [None; 5];
    for (key, value) in &entries {
        let Some(i) = KEYS.iter().position(|k| k == key) else {
            return Err(fail(AntParseErrorKind::UnknownKey(key.clone())));
        };
        if slots[i].replace(value).is_some() {
            return Err(fail(AntParseErrorKind::DuplicateKey(key.clone())));
        }
    }
    let get = |i: usize| slots[i].ok_or(AntParseErrorKind::MissingKey(KEYS[i]));
    let build = || -> Result<AntAction, AntParseErrorKind> {
        Ok(AntAction {
            move_forward: as_bool(KEYS[0], get(0)?)?,
            rotate: as_rotate(get(1)?)?,
            pick_up_food: as_bool(KEYS[2], get(2)?)?,
            drop_pheromone: as_bool(KEYS[3], get(3)?)?,
            drop_food: as_bool(KEYS[4], get(4)?)?,
        })
    };
    build().map_err(fail)
}

/// Engine-side motion added on top of the decoded action.
///
/// Rule-based ants reproduce the library model's wiggle and about-face on pick-up;
/// prompt-driven ants execute only what the action says.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotorProfile {
    pub wiggle: bool,
    pub about_face_on_pickup: bool,
}

impl MotorProfile {
    pub const LIBRARY: MotorProfile = MotorProfile { wiggle: true, about_face_on_pickup: true };
    pub const LITERAL: MotorProfile = MotorProfile { wiggle: false, about_face_on_pickup: false };
}

/// What actually happened when an action was applied.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct AppliedFlags {
    pub picked_up: bool,
    pub dropped_food: bool,
    pub dropped_pheromone: bool,
    /// Resolved rotation: "left", "right" or "none".
    pub rotated: Option<Rotate>,
    pub moved: bool,
    pub bounced: bool,
    /// Sub-actions that were requested but infeasible.
    pub noops: Vec<&'static str>,
    /// Food patch the picked-up unit came from.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picked_from: Option<u8>,
}

/// Applies `action` to `world.ants[ant]` in the fixed order: pick up, drop food,
/// drop pheromone, rotate, move.
pub fn apply_ant_action<R: Rng + ?Sized>(
    world: &mut AntWorld,
    ant: usize,
    action: &AntAction,
    motor: MotorProfile,
    rng: &mut R,
) -> AppliedFlags {
    let mut flags = AppliedFlags::default();

    if action.pick_up_food {
        let carrying = world.ants[ant].carrying;
        let cell = world.cell_under_mut(ant);
        if !carrying && cell.food > 0 {
            cell.food -= 1;
            let source = cell.food_source_id;
            let a = &mut world.ants[ant];
            a.carrying = true;
            a.picked_from_patch = source;
            if motor.about_face_on_pickup {
                a.heading = a.heading.rotated(180.0);
            }
            flags.picked_up = true;
            flags.picked_from = source;
        } else {
            flags.noops.push("pick-up-food");
        }
    }

    if action.drop_food {
        let at_nest = world.cell_under(ant).is_nest;
        let a = &mut world.ants[ant];
        if a.carrying && at_nest {
            a.carrying = false;
            a.picked_from_patch = None;
            a.heading = a.heading.rotated(180.0);
            world.colony_food += 1;
            flags.dropped_food = true;
        } else {
            flags.noops.push("drop-food");
        }
    }

    if action.drop_pheromone {
        let deposit = world.params.deposit;
        world.cell_under_mut(ant).pheromone += deposit;
        flags.dropped_pheromone = true;
    }

    let resolved = match action.rotate {
        Rotate::Random => {
            if rng.random_bool(0.5) {
                Rotate::Left
            } else {
                Rotate::Right
            }
        }
        r => r,
    };
    let step = world.params.rotation_step;
    let a = &mut world.ants[ant];
    match resolved {
        Rotate::Left => a.heading = a.heading.rotated(-step),
        Rotate::Right => a.heading = a.heading.rotated(step),
        _ => {}
    }
    flags.rotated = Some(resolved);

    if action.move_forward {
        if motor.wiggle && world.params.wiggle_max > 0 {
            let n = world.params.wiggle_max;
            let right = rng.random_range(0..n) as f64;
            let left = rng.random_range(0..n) as f64;
            let a = &mut world.ants[ant];
            a.heading = a.heading.rotated(right - left);
        }
        let geometry = world.geometry;
        let a = &mut world.ants[ant];
        if !geometry.can_move(a.pos, a.heading, 1.0) {
            a.heading = a.heading.rotated(180.0);
            flags.bounced = true;
        }
        if geometry.can_move(a.pos, a.heading, 1.0) {
            a.pos = geometry.ahead(a.pos, a.heading, 1.0);
            flags.moved = true;
        }
    }

    flags
}
